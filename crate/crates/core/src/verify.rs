//! Self-checks of the algebraic, order-theoretic and counting claims, run by
//! the `verify` command and usable from tests.

use std::fmt::Write;
use std::time::Instant;

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::bijection::{verify_theorem, Theorem};
use crate::enumeration::{
    bipartite_tube_count, brute_stello_vertices, brute_tube_count, fan_tube_count, ptera_breakdown, ptera_vertices,
    star_tube_count, stello_vertices, Method,
};
use crate::error::Result;
use crate::growth::{build_poset, is_proven};
use crate::hopf::{
    action_left, action_right, action_target, antipode_convolution, coproduct, coproduct_sum, counit, product, split_plane,
    supports, unit_counit, Side, Sum, Target, Tensor,
};
use crate::painted::{enumerate_painted, half_painted_corolla, FaceLevel, Family, PaintedTree};
use crate::par::{self, Exec};
use crate::shuffle::{product_sums, StelloVertex};
use crate::sum::FormalSum;
use crate::tree::{enumerate_trees, TreeKind};
use crate::tubing::Graph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub millis: u128,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "ok": self.ok(),
            "checks": self.checks.iter().map(|c| json!({
                "name": c.name,
                "passed": c.passed,
                "detail": c.detail,
            })).collect::<Vec<_>>(),
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            let _ = writeln!(s, "{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
        }
        s
    }
}

fn timed(name: impl Into<String>, f: impl FnOnce() -> Result<(bool, String)>) -> Check {
    let start = Instant::now();
    let (passed, detail) = f().unwrap_or_else(|e| (false, format!("error: {e}")));
    Check { name: name.into(), passed, detail, millis: start.elapsed().as_millis() }
}

/// Every tree of `f` with degree at most `max`, faces included.
pub fn basis(f: Family, max: usize) -> Vec<PaintedTree> {
    (0..=max).flat_map(|n| enumerate_painted(f, n, FaceLevel::AllFaces)).collect()
}

type Triple = FormalSum<(PaintedTree, PaintedTree, PaintedTree)>;

/// `(Δ ⊗ 1)Δ(p)` and `(1 ⊗ Δ)Δ(p)`.
pub fn coassociativity_sides(p: &PaintedTree) -> Result<(Triple, Triple)> {
    let mut left = Triple::zero();
    let mut right = Triple::zero();
    for ((a, b), c) in coproduct(p)?.iter() {
        for ((a1, a2), c2) in coproduct(a)?.iter() {
            left.add_term((a1.clone(), a2.clone(), b.clone()), c * c2);
        }
        for ((b1, b2), c2) in coproduct(b)?.iter() {
            right.add_term((a.clone(), b1.clone(), b2.clone()), c * c2);
        }
    }
    Ok((left, right))
}

fn count_failures(items: &[PaintedTree], exec: Exec, f: impl Fn(&PaintedTree) -> Result<bool> + Sync + Send) -> Result<usize> {
    let r = par::map(items, exec, |p| f(p));
    let mut bad = 0;
    for x in r {
        if !x? {
            bad += 1;
        }
    }
    Ok(bad)
}

pub fn check_coassociativity(f: Family, max: usize, exec: Exec) -> Check {
    timed(format!("coassociativity {f} degree<={max}"), || {
        let items = basis(f, max);
        let bad = count_failures(&items, exec, |p| {
            let (l, r) = coassociativity_sides(p)?;
            Ok(l == r)
        })?;
        Ok((bad == 0, format!("{} elements, {bad} failures", items.len())))
    })
}

pub fn check_counit(f: Family, max: usize, exec: Exec) -> Check {
    timed(format!("counit {f} degree<={max}"), || {
        let items = basis(f, max);
        let bad = count_failures(&items, exec, |p| {
            let d = coproduct(p)?;
            let mut left = Sum::zero();
            let mut right = Sum::zero();
            for ((a, b), c) in d.iter() {
                left.add_assign(&Sum::basis(b.clone()).scaled(&(c * counit(&Sum::basis(a.clone())))));
                right.add_assign(&Sum::basis(a.clone()).scaled(&(c * counit(&Sum::basis(b.clone())))));
            }
            let me = Sum::basis(p.clone());
            Ok(left == me && right == me)
        })?;
        Ok((bad == 0, format!("{} elements, {bad} failures", items.len())))
    })
}

pub fn check_unit(f: Family, side: Side, max: usize, exec: Exec) -> Check {
    timed(format!("{side:?} unit {f} degree<={max}"), || {
        let eta = PaintedTree::eta(f);
        let items = basis(f, max);
        let bad = count_failures(&items, exec, |p| {
            let got = match side {
                Side::Left => product(&eta, p, side)?,
                Side::Right => product(p, &eta, side)?,
            };
            Ok(got == Sum::basis(p.clone()))
        })?;
        Ok((bad == 0, format!("{} elements, {bad} failures", items.len())))
    })
}

pub fn check_antipode(f: Family, side: Side, max: usize, exec: Exec) -> Check {
    timed(format!("{side:?} antipode {f} degree<={max}"), || {
        let items = basis(f, max);
        let bad = count_failures(&items, exec, |p| Ok(antipode_convolution(p, side)? == unit_counit(p)))?;
        Ok((bad == 0, format!("{} elements, {bad} failures", items.len())))
    })
}

fn tensor_of(a: &Sum, b: &Sum) -> Tensor {
    a.bilinear(b, |x, y| Tensor::basis((x.clone(), y.clone())))
}

/// `Δ(d ⋆ e) = Σ (d₁ ⋆ e₁) ⊗ (d₂ ⋆ e₂)` with `d` split at one leaf and `e`
/// coproduct-split, on whichever side `f` acts.
pub fn check_module(f: Family, side: Side, max: usize, exec: Exec) -> Check {
    timed(format!("{side:?} module coalgebra {f} degree<={max}"), || {
        let corollas = action_target(f, side) == Some(Target::Corolla);
        let ds: Vec<_> = (1..=max + 1)
            .flat_map(|l| enumerate_trees(TreeKind::Plane, l).unwrap_or_default())
            .map(|(t, _)| t)
            .filter(|t| !corollas || t.is_corolla())
            .collect();
        let mut pairs = Vec::new();
        for e in basis(f, max) {
            for d in &ds {
                if e.degree() + d.leaves() - 1 <= max {
                    pairs.push((d.clone(), e.clone()));
                }
            }
        }
        let act = |d: &crate::tree::PlaneTree, e: &PaintedTree| match side {
            Side::Left => action_left(d, e),
            Side::Right => action_right(e, d),
        };
        let results = par::map(&pairs, exec, |(d, e)| -> Result<bool> {
            let lhs = coproduct_sum(&act(d, e)?)?;
            let mut rhs = Tensor::zero();
            for i in 1..=d.leaves() {
                let pd = split_plane(d, &[i])?;
                for ((e1, e2), c) in coproduct(e)?.iter() {
                    rhs.add_assign(&tensor_of(&act(&pd[0], e1)?, &act(&pd[1], e2)?).scaled(c));
                }
            }
            Ok(lhs == rhs)
        });
        let mut bad = 0;
        for r in results {
            if !r? {
                bad += 1;
            }
        }
        Ok((bad == 0, format!("{} pairs, {bad} failures", pairs.len())))
    })
}

pub fn check_poset(f: Family, n: usize, exec: Exec) -> Check {
    let tag = if is_proven(f) { "" } else { " (conjectural)" };
    timed(format!("poset axioms {f} n={n}{tag}"), || {
        let p = build_poset(f, n, exec);
        let report = p.verify_axioms();
        let max = p.maximal();
        let top_ok = max.len() == 1 && p.elements[max[0]] == half_painted_corolla(f, n);
        Ok((
            report.ok() && top_ok,
            format!("{} elements, {} violations, {} maximal", p.len(), report.violations.len(), max.len()),
        ))
    })
}

pub fn check_euler(f: Family, n: usize, exec: Exec) -> Check {
    timed(format!("euler {f} n={n}"), || {
        let fv = build_poset(f, n, exec).f_vector()?;
        let alt: i64 = fv[..n].iter().enumerate().map(|(i, &x)| if i % 2 == 0 { x as i64 } else { -(x as i64) }).sum();
        let want = 1 - (-1i64).pow(n as u32);
        Ok((alt == want, format!("f-vector {fv:?}, alternating sum {alt}")))
    })
}

pub fn check_theorem(th: Theorem, n: usize, exec: Exec) -> Check {
    timed(format!("bijection {} n={n}", th.name()), || {
        let r = verify_theorem(th, n, exec)?;
        Ok((r.ok(), format!("{} elements, f-vector {:?}", r.size, r.target_f_vector)))
    })
}

pub fn check_counts() -> Vec<Check> {
    let table = [1u64, 2, 6, 22, 94, 464, 2652, 17562, 133934, 1162504];
    vec![
        timed("pterahedron vertex table", || {
            let ok = table.iter().enumerate().all(|(n, &v)| {
                let n = n as u64;
                ptera_vertices(n, Method::DoubleSum) == BigInt::from(v) && ptera_vertices(n, Method::ClosedForm) == BigInt::from(v)
            });
            Ok((ok, "n=0..9".into()))
        }),
        timed("pterahedron n=4 breakdown", || {
            let b = ptera_breakdown(4);
            Ok((b == [14, 14, 18, 24, 24].map(BigInt::from), format!("{b:?}")))
        }),
        timed("stellohedron vertices", || {
            let ok = (1..=5).all(|n| stello_vertices(n as u64) == brute_stello_vertices(n));
            Ok((ok, "n=1..5".into()))
        }),
        timed("tube formulas", || {
            let mut ok = (1..=10).all(|n| star_tube_count(n as u64).ok() == Some(brute_tube_count(&Graph::star(n - 1))));
            for m in 1..=3 {
                for n in 1..=6 {
                    ok &= fan_tube_count(m as u64, n as u64).ok() == Some(brute_tube_count(&Graph::fan(m, n)));
                }
            }
            for m in 1..=4 {
                for n in 1..=4 {
                    ok &= bipartite_tube_count(m as u64, n as u64).ok()
                        == Some(brute_tube_count(&Graph::complete_bipartite(m, n)));
                }
            }
            Ok((ok, "star n<=10, fan m<=3 n<=6, bipartite m,n<=4".into()))
        }),
    ]
}

pub fn check_shuffle(max_total: usize) -> Vec<Check> {
    vec![
        timed("shuffle product worked term", || {
            let t: StelloVertex = "Tub_3(1,2,6,5,3,4)".parse()?;
            let v: StelloVertex = "Tub_2(1,3,2,4)".parse()?;
            let got = t.star_term(&v, &"(1,3,5,2,4)".parse()?)?;
            Ok((got.to_string() == "Tub_5(1,2,6,7,9,5,8,3,10,4)", got.to_string()))
        }),
        timed(format!("shuffle product associativity n+m+p<={max_total}"), || {
            let mut bad = 0;
            let mut triples = 0;
            for n in 1..max_total {
                for m in 1..max_total - n {
                    for p in 1..=max_total - n - m {
                        for a in StelloVertex::all(n) {
                            for b in StelloVertex::all(m) {
                                let ab = a.star_product(&b);
                                for c in StelloVertex::all(p) {
                                    triples += 1;
                                    let l = product_sums(&ab, &FormalSum::basis(c.clone()));
                                    let r = product_sums(&FormalSum::basis(a.clone()), &b.star_product(&c));
                                    bad += usize::from(l != r);
                                }
                            }
                        }
                    }
                }
            }
            Ok((bad == 0, format!("{triples} triples, {bad} failures")))
        }),
    ]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Coalgebra,
    Hopf,
    Module,
    Posets,
    Bijections,
    Counts,
    Shuffle,
    All,
}

impl Suite {
    pub fn parse(s: &str) -> Result<Suite> {
        Ok(match s {
            "coalgebra" => Suite::Coalgebra,
            "hopf" => Suite::Hopf,
            "module" => Suite::Module,
            "posets" => Suite::Posets,
            "bijections" => Suite::Bijections,
            "counts" => Suite::Counts,
            "shuffle" => Suite::Shuffle,
            "all" => Suite::All,
            _ => return Err(crate::Error::InvalidArgument(format!("unknown suite {s:?}"))),
        })
    }
}

/// Runs `suite` with degrees (and graph sizes) up to `max_degree`.
pub fn run(suite: Suite, max_degree: usize, exec: Exec) -> Report {
    let mut checks = Vec::new();
    let all = suite == Suite::All;
    let sides = [Side::Left, Side::Right];
    if all || suite == Suite::Coalgebra {
        for f in Family::all() {
            checks.push(check_coassociativity(f, max_degree, exec));
            checks.push(check_counit(f, max_degree, exec));
        }
    }
    if all || suite == Suite::Hopf {
        for f in Family::all() {
            for side in sides.into_iter().filter(|&s| supports(f, s)) {
                checks.push(check_unit(f, side, max_degree, exec));
                checks.push(check_antipode(f, side, max_degree, exec));
            }
        }
    }
    if all || suite == Suite::Module {
        for f in Family::all() {
            for side in sides.into_iter().filter(|&s| supports(f, s)) {
                checks.push(check_module(f, side, max_degree, exec));
            }
        }
    }
    if all || suite == Suite::Posets {
        for f in Family::all() {
            for n in 1..=max_degree {
                checks.push(check_poset(f, n, exec));
                if is_proven(f) {
                    checks.push(check_euler(f, n, exec));
                }
            }
        }
    }
    if all || suite == Suite::Bijections {
        for th in Theorem::all() {
            for n in 1..=max_degree {
                checks.push(check_theorem(th, n, exec));
            }
        }
    }
    if all || suite == Suite::Counts {
        checks.extend(check_counts());
    }
    if all || suite == Suite::Shuffle {
        checks.extend(check_shuffle((max_degree + 2).min(6)));
    }
    Report { checks }
}
