use proptest::prelude::*;

use painted_hopf::growth::build_poset;
use painted_hopf::hopf::{coproduct, product, product_sums, supports, Side, Sum};
use painted_hopf::painted::{enumerate_painted, project, FaceLevel, Family, PaintedTree};
use painted_hopf::par::Exec;
use painted_hopf::shuffle::StelloVertex;
use painted_hopf::tubing::{enumerate_tubings, tubing_poset, Graph};

fn family() -> impl Strategy<Value = Family> {
    (0..12usize).prop_map(|i| Family::all()[i])
}

/// A random tree of a random family, degree at most `max`.
fn tree(max: usize) -> impl Strategy<Value = PaintedTree> {
    (family(), 0..=max, any::<prop::sample::Index>()).prop_map(|(f, n, i)| {
        let all = enumerate_painted(f, n, FaceLevel::AllFaces);
        all[i.index(all.len())].clone()
    })
}

fn graph(max: usize) -> impl Strategy<Value = Graph> {
    (1..=max).prop_flat_map(|n| {
        let pairs: Vec<(i64, i64)> = (1..=n as i64).flat_map(|a| (a + 1..=n as i64).map(move |b| (a, b))).collect();
        let len = pairs.len();
        prop::collection::vec(any::<bool>(), len).prop_map(move |keep| {
            let edges = pairs.iter().zip(&keep).filter(|(_, &k)| k).map(|(&e, _)| e);
            Graph::new(1..=n as i64, edges).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_and_json_round_trip(p in tree(4)) {
        prop_assert_eq!(PaintedTree::parse(p.family, &p.canonical()).unwrap(), p.clone());
        prop_assert_eq!(PaintedTree::from_json(&p.to_json()).unwrap(), p);
    }

    #[test]
    fn projections_compose(p in tree(4), g in family(), h in family()) {
        prop_assume!(p.family.refines(&g) && g.refines(&h));
        let via = project(&project(&p, g).unwrap(), h).unwrap();
        prop_assert_eq!(via, project(&p, h).unwrap());
    }

    #[test]
    fn projection_preserves_coproduct(p in tree(3), g in family()) {
        prop_assume!(p.family.refines(&g));
        let mapped = coproduct(&p).unwrap().linear(|(a, b)| {
            painted_hopf::sum::FormalSum::basis((project(a, g).unwrap(), project(b, g).unwrap()))
        });
        prop_assert_eq!(mapped, coproduct(&project(&p, g).unwrap()).unwrap());
    }

    #[test]
    fn coproduct_counts_leaves(p in tree(4)) {
        // one term per leaf, counted with multiplicity
        let d = coproduct(&p).unwrap();
        prop_assert_eq!(d.total(), num_bigint::BigInt::from(p.leaves()));
    }

    #[test]
    fn products_associate(x in tree(2), y in tree(2), z in tree(2), f in family(), left in any::<bool>()) {
        let side = if left { Side::Left } else { Side::Right };
        prop_assume!(supports(f, side));
        let pick = |t: &PaintedTree| {
            let all = enumerate_painted(f, t.degree(), FaceLevel::AllFaces);
            all[t.canonical().len() % all.len()].clone()
        };
        let (x, y, z) = (pick(&x), pick(&y), pick(&z));
        let l = product_sums(&product(&x, &y, side).unwrap(), &Sum::basis(z.clone()), side).unwrap();
        let r = product_sums(&Sum::basis(x), &product(&y, &z, side).unwrap(), side).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn tubing_posets_are_posets(g in graph(5)) {
        let p = tubing_poset(&g);
        prop_assert!(p.verify_axioms().ok());
        prop_assert_eq!(p.maximal().len(), 1);
        let maximal = enumerate_tubings(&g, true);
        prop_assert_eq!(p.minimal().len(), maximal.len());
        prop_assert_eq!(Graph::from_json(&g.to_json()).unwrap(), g);
    }

    #[test]
    fn shuffle_product_term_count(n in 1..=3usize, m in 1..=3usize, i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let a = StelloVertex::all(n);
        let b = StelloVertex::all(m);
        let (a, b) = (&a[i.index(a.len())], &b[j.index(b.len())]);
        // one term per shuffle of the non-singleton tails
        let (p, q) = (n - a.r, m - b.r);
        let binom = (1..=q).fold(1usize, |acc, k| acc * (p + k) / k);
        prop_assert_eq!(a.star_product(b).total(), num_bigint::BigInt::from(binom));
        let back: StelloVertex = a.to_string().parse().unwrap();
        prop_assert_eq!(&back, a);
    }
}

#[test]
fn sequential_and_parallel_posets_agree() {
    for f in Family::all() {
        let s = build_poset(f, 3, Exec::Sequential);
        let p = build_poset(f, 3, Exec::Parallel);
        assert_eq!(s.elements, p.elements);
        assert_eq!(s.covers(), p.covers());
    }
}
