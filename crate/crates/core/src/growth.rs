//! The painted growth preorder on each family, with Hasse diagrams, ranks
//! and f-vectors.
//!
//! Moves are generated on the full family, where a face is a weak order on
//! gaps with a paint line: a move splits one block of gaps in two, and a
//! half-painted block may shed its paint line to either side. The relation on
//! a coarser family is the image of these moves under the forgetful maps,
//! closed reflexively and transitively.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::painted::{full_family, project, Cut, Family, PaintedTree};
use crate::par::{self, Exec};
use crate::tree::{ForestKind, OrderedPartition};

/// A finite preorder given by a generating relation, with its reachability
/// closure precomputed.
#[derive(Debug, Clone)]
pub struct Poset<T> {
    pub elements: Vec<T>,
    /// Generating pairs `(lower, upper)`.
    pub relation: Vec<(usize, usize)>,
    /// `up[i]` holds every `j` with `i ≼ j` (including `i`).
    up: Vec<Vec<u64>>,
    acyclic: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PosetReport {
    pub elements: usize,
    pub violations: Vec<String>,
}

impl PosetReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

fn bit(set: &[u64], j: usize) -> bool {
    set[j / 64] >> (j % 64) & 1 == 1
}

fn set_bit(set: &mut [u64], j: usize) {
    set[j / 64] |= 1 << (j % 64);
}

impl<T> Poset<T> {
    pub fn from_relation(elements: Vec<T>, mut relation: Vec<(usize, usize)>) -> Self {
        relation.retain(|(a, b)| a != b);
        relation.sort_unstable();
        relation.dedup();
        let n = elements.len();
        let words = n.div_ceil(64).max(1);
        let mut succ = vec![Vec::new(); n];
        let mut indeg = vec![0usize; n];
        for &(a, b) in &relation {
            succ[a].push(b);
            indeg[b] += 1;
        }
        // Kahn order from the bottom; a leftover means a cycle.
        let mut order = Vec::with_capacity(n);
        let mut queue: VecDeque<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
        while let Some(a) = queue.pop_front() {
            order.push(a);
            for &b in &succ[a] {
                indeg[b] -= 1;
                if indeg[b] == 0 {
                    queue.push_back(b);
                }
            }
        }
        let acyclic = order.len() == n;
        let mut up = vec![vec![0u64; words]; n];
        if acyclic {
            for &a in order.iter().rev() {
                let mut s = vec![0u64; words];
                set_bit(&mut s, a);
                for &b in &succ[a] {
                    for (x, y) in s.iter_mut().zip(&up[b]) {
                        *x |= *y;
                    }
                }
                up[a] = s;
            }
        } else {
            for (a, s) in up.iter_mut().enumerate() {
                let mut stack = vec![a];
                set_bit(s, a);
                while let Some(x) = stack.pop() {
                    for &y in &succ[x] {
                        if !bit(s, y) {
                            set_bit(s, y);
                            stack.push(y);
                        }
                    }
                }
            }
        }
        Poset { elements, relation, up, acyclic }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        bit(&self.up[i], j)
    }

    pub fn is_acyclic(&self) -> bool {
        self.acyclic
    }

    /// Covering pairs `(lower, upper)` by transitive reduction.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut succ: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &(a, b) in &self.relation {
            succ.entry(a).or_default().push(b);
        }
        let mut out = Vec::new();
        for (&a, bs) in &succ {
            for &b in bs {
                if self.leq(b, a) {
                    continue;
                }
                let between = bs.iter().any(|&c| c != b && self.leq(c, b));
                if !between {
                    out.push((a, b));
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn minimal(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| (0..self.len()).all(|j| j == i || !self.leq(j, i) || self.leq(i, j))).collect()
    }

    pub fn maximal(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| (0..self.len()).all(|j| j == i || !self.leq(i, j) || self.leq(j, i))).collect()
    }

    /// Length of the longest chain from a minimal element, when acyclic.
    pub fn ranks(&self) -> Result<Vec<usize>> {
        if !self.acyclic {
            return Err(Error::Rank("the relation has cycles".into()));
        }
        let covers = self.covers();
        let mut below = vec![Vec::new(); self.len()];
        for &(a, b) in &covers {
            below[b].push(a);
        }
        let mut rank: Vec<Option<usize>> = vec![None; self.len()];
        fn get(i: usize, below: &[Vec<usize>], rank: &mut Vec<Option<usize>>) -> usize {
            if let Some(r) = rank[i] {
                return r;
            }
            let r = below[i].clone().into_iter().map(|a| get(a, below, rank) + 1).max().unwrap_or(0);
            rank[i] = Some(r);
            r
        }
        Ok((0..self.len()).map(|i| get(i, &below, &mut rank)).collect())
    }

    /// Element counts per rank, vertices first.
    pub fn f_vector(&self) -> Result<Vec<usize>> {
        let ranks = self.ranks()?;
        let top = ranks.iter().copied().max().unwrap_or(0);
        let mut f = vec![0; if self.is_empty() { 0 } else { top + 1 }];
        for r in ranks {
            f[r] += 1;
        }
        Ok(f)
    }

    pub fn verify_axioms(&self) -> PosetReport {
        let mut violations = Vec::new();
        if !self.acyclic {
            let cyclic: Vec<usize> =
                (0..self.len()).filter(|&i| self.relation.iter().any(|&(a, b)| a == i && self.leq(b, i))).collect();
            violations.push(format!("antisymmetry fails: {} elements lie on cycles", cyclic.len()));
        }
        let max = self.maximal();
        if max.len() != 1 && !self.is_empty() {
            violations.push(format!("{} maximal elements", max.len()));
        }
        if let Ok(r) = self.ranks() {
            for (a, b) in self.covers() {
                if r[b] != r[a] + 1 {
                    violations.push(format!("cover {a} -> {b} jumps from rank {} to {}", r[a], r[b]));
                }
            }
        }
        PosetReport { elements: self.len(), violations }
    }

    pub fn to_dot(&self, label: impl Fn(&T) -> String) -> String {
        let mut s = String::from("digraph hasse {\n  rankdir=BT;\n");
        for (i, e) in self.elements.iter().enumerate() {
            let _ = writeln!(s, "  n{i} [label=\"{}\"];", label(e).replace('"', "\\\""));
        }
        for (a, b) in self.covers() {
            let _ = writeln!(s, "  n{a} -> n{b};");
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self, key: impl Fn(&T) -> String) -> Value {
        let covers: Vec<[usize; 2]> = self.covers().into_iter().map(|(a, b)| [a, b]).collect();
        json!({
            "elements": self.elements.iter().map(key).collect::<Vec<_>>(),
            "covers": covers,
            "ranks": self.ranks().ok(),
        })
    }
}

/// Whether `f` (indices of `p` to indices of `q`) is a bijection preserving
/// and reflecting the order.
pub fn is_order_isomorphism<A, B>(p: &Poset<A>, q: &Poset<B>, f: &[usize]) -> bool {
    if p.len() != q.len() || f.len() != p.len() {
        return false;
    }
    let distinct: BTreeSet<usize> = f.iter().copied().collect();
    if distinct.len() != f.len() || f.iter().any(|&j| j >= q.len()) {
        return false;
    }
    (0..p.len()).all(|i| (0..p.len()).all(|j| p.leq(i, j) == q.leq(f[i], f[j])))
}

/// Families whose face posets are known polytopes.
pub fn is_proven(f: Family) -> bool {
    !(f.forest == ForestKind::ForestOfWeaklyOrderedTrees
        || (f.forest == ForestKind::WeaklyOrderedForest && f.base == crate::painted::BaseKind::PlaneTree))
}

/// Name of the polytope sequence indexed by a proven family.
pub fn polytope_name(f: Family) -> Option<&'static str> {
    Some(match f.symbol().as_str() {
        "S/S" => "permutohedron",
        "C/S" | "S/C" => "stellohedron",
        "Y/S" => "pterahedron",
        "C/C" => "cube",
        "Y/C" => "associahedron",
        "C/Y" => "composihedron",
        "Y/Y" => "multiplihedron",
        _ => return None,
    })
}

type Blocks = Vec<(Vec<usize>, crate::painted::Paint)>;

fn to_blocks(t: &PaintedTree) -> Result<Blocks> {
    use crate::painted::Paint;
    let (p, cut) = t.to_partition()?;
    Ok(p.0
        .into_iter()
        .enumerate()
        .map(|(i, b)| {
            let j = i + 1;
            let paint = match cut {
                Cut::At(c) if c == j => Paint::Half,
                Cut::At(c) | Cut::Between(c) if j > c => Paint::Painted,
                _ => Paint::Unpainted,
            };
            (b, paint)
        })
        .collect())
}

fn from_blocks(blocks: &Blocks) -> PaintedTree {
    use crate::painted::Paint;
    let cut = match blocks.iter().position(|(_, p)| *p == Paint::Half) {
        Some(i) => Cut::At(i + 1),
        None => Cut::Between(blocks.iter().filter(|(_, p)| *p == Paint::Unpainted).count()),
    };
    let part = OrderedPartition(blocks.iter().map(|(b, _)| b.clone()).collect());
    PaintedTree::from_partition(&part, cut).expect("blocks come from a valid tree")
}

/// Faces of the full family covered by `t`: one block split in two, or the
/// paint line moved off a half-painted block.
pub fn full_down_covers(t: &PaintedTree) -> Result<Vec<PaintedTree>> {
    use crate::painted::Paint;
    let blocks = to_blocks(t)?;
    let mut out = Vec::new();
    for (i, (b, paint)) in blocks.iter().enumerate() {
        let m = b.len();
        for mask in 1..(1u64 << m) - 1 {
            let lower: Vec<usize> = (0..m).filter(|&x| mask >> x & 1 == 1).map(|x| b[x]).collect();
            let upper: Vec<usize> = (0..m).filter(|&x| mask >> x & 1 == 0).map(|x| b[x]).collect();
            let options: &[(Paint, Paint)] = match paint {
                Paint::Half => &[(Paint::Unpainted, Paint::Half), (Paint::Half, Paint::Painted)],
                p => &[(*p, *p)][..],
            };
            for &(pl, pu) in options {
                let mut nb = blocks.clone();
                nb.splice(i..=i, [(lower.clone(), pl), (upper.clone(), pu)]);
                out.push(from_blocks(&nb));
            }
        }
        if *paint == Paint::Half {
            for p in [Paint::Unpainted, Paint::Painted] {
                let mut nb = blocks.clone();
                nb[i].1 = p;
                out.push(from_blocks(&nb));
            }
        }
    }
    Ok(out)
}

/// The order on the full family, decided directly: the weak order on gaps
/// refines, painted gaps stay painted and unpainted gaps stay unpainted.
pub fn full_leq(s: &PaintedTree, t: &PaintedTree) -> Result<bool> {
    use crate::painted::Paint;
    let bs = to_blocks(s)?;
    let bt = to_blocks(t)?;
    let n = s.degree();
    if n != t.degree() {
        return Ok(false);
    }
    let (ps, _) = s.to_partition()?;
    let (pt, _) = t.to_partition()?;
    if !ps.refines(&pt) {
        return Ok(false);
    }
    let status = |b: &Blocks| {
        let mut st = vec![Paint::Unpainted; n + 1];
        for (blk, p) in b {
            for &g in blk {
                st[g] = *p;
            }
        }
        st
    };
    let (ss, st) = (status(&bs), status(&bt));
    Ok((1..=n).all(|g| st[g] == Paint::Half || st[g] == ss[g]))
}

/// Results of one growth step on `t`, normalized into its family.
pub fn elementary_growths(t: &PaintedTree) -> Result<Vec<PaintedTree>> {
    if !t.validate_family()? {
        return Err(Error::Structural(format!("{t} is not a valid {} tree", t.family)));
    }
    let mut out = BTreeSet::new();
    for s in full_family(t.degree()) {
        if &project(&s, t.family)? != t {
            continue;
        }
        for d in full_down_covers(&s)? {
            let img = project(&d, t.family)?;
            if &img != t {
                out.insert(img);
            }
        }
    }
    let mut v: Vec<PaintedTree> = out.into_iter().collect();
    v.sort_by_cached_key(PaintedTree::canonical);
    Ok(v)
}

/// The face poset of `family` in degree `n`; elements in canonical order.
pub fn build_poset(family: Family, n: usize, exec: Exec) -> Poset<PaintedTree> {
    let full = full_family(n);
    let proj: Vec<PaintedTree> = par::map(&full, exec, |s| project(s, family).expect("full family refines all"));
    let mut elements: Vec<PaintedTree> = proj.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    elements.sort_by_cached_key(PaintedTree::canonical);
    let index: HashMap<&PaintedTree, usize> = elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let ids: Vec<usize> = (0..full.len()).collect();
    let edges = par::flat_map(&ids, exec, |&i| {
        let upper = index[&proj[i]];
        full_down_covers(&full[i])
            .expect("full family")
            .iter()
            .map(|d| (index[&project(d, family).expect("refines")], upper))
            .collect()
    });
    Poset::from_relation(elements, edges)
}

/// `s ≼ t` in their common family.
pub fn leq(s: &PaintedTree, t: &PaintedTree) -> Result<bool> {
    if s.family != t.family {
        return Err(Error::KindMismatch(format!("{} against {}", s.family, t.family)));
    }
    if s == t {
        return Ok(true);
    }
    if s.degree() != t.degree() {
        return Ok(false);
    }
    let p = build_poset(s.family, s.degree(), par::default_exec());
    let find = |x: &PaintedTree| p.elements.iter().position(|e| e == x);
    match (find(s), find(t)) {
        (Some(i), Some(j)) => Ok(p.leq(i, j)),
        _ => Err(Error::Structural("tree outside its family".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::painted::{enumerate_painted, fractional_map, half_painted_corolla, FaceLevel, Map};

    fn fam(s: &str) -> Family {
        Family::parse(s).unwrap()
    }

    /// Ordered partition of `{0, .., n}` with `0` marking the paint line.
    fn marked(t: &PaintedTree) -> OrderedPartition {
        let (p, cut) = t.to_partition().unwrap();
        let mut blocks = p.0.clone();
        match cut {
            Cut::At(j) => blocks[j - 1].push(0),
            Cut::Between(j) => blocks.insert(j, vec![0]),
        }
        // shift to 1..=n+1 for the refinement check
        OrderedPartition(blocks.into_iter().map(|b| b.into_iter().map(|x| x + 1).collect()).collect())
    }

    #[test]
    fn full_order_is_refinement_of_marked_partitions() {
        for n in 0..=3 {
            let all = full_family(n);
            let p = build_poset(Family::full(), n, Exec::Sequential);
            for s in &all {
                for t in &all {
                    let expect = marked(s).refines(&marked(t));
                    assert_eq!(full_leq(s, t).unwrap(), expect, "{s} vs {t}");
                    let i = p.elements.iter().position(|e| e == s).unwrap();
                    let j = p.elements.iter().position(|e| e == t).unwrap();
                    assert_eq!(p.leq(i, j), expect);
                }
            }
        }
    }

    #[test]
    fn f_vectors() {
        let f = |s: &str, n| build_poset(fam(s), n, Exec::Parallel).f_vector().unwrap();
        assert_eq!(f("S/S", 3), vec![24, 36, 14, 1]);
        assert_eq!(f("Y/C", 3), vec![14, 21, 9, 1]);
        assert_eq!(f("C/C", 3), vec![8, 12, 6, 1]);
        assert_eq!(f("Y/Y", 0), vec![1]);
        for family in Family::all() {
            assert_eq!(build_poset(family, 1, Exec::Sequential).f_vector().unwrap(), vec![2, 1]);
        }
    }

    #[test]
    fn all_families_are_posets_through_degree_three() {
        for family in Family::all() {
            for n in 0..=3 {
                let p = build_poset(family, n, Exec::Parallel);
                let report = p.verify_axioms();
                assert!(report.ok(), "{family} {n}: {:?}", report.violations);
                let max = p.maximal();
                assert_eq!(p.elements[max[0]], half_painted_corolla(family, n));
                let vertices = enumerate_painted(family, n, FaceLevel::VertexOnly);
                let minimal: Vec<&PaintedTree> = p.minimal().into_iter().map(|i| &p.elements[i]).collect();
                assert_eq!(minimal.len(), vertices.len());
                assert!(vertices.iter().all(|v| minimal.contains(&v)));
            }
        }
    }

    #[test]
    fn euler_relation_for_proven_families() {
        for family in Family::all().into_iter().filter(|f| is_proven(*f)) {
            for n in 1..=3 {
                let f = build_poset(family, n, Exec::Parallel).f_vector().unwrap();
                let alt: i64 = f[..n].iter().enumerate().map(|(i, &x)| if i % 2 == 0 { x as i64 } else { -(x as i64) }).sum();
                assert_eq!(alt, 1 - (-1i64).pow(n as u32), "{family} {n}");
            }
        }
    }

    #[test]
    fn corrupted_relation_is_reported() {
        let single = Poset::from_relation(vec!["x"], vec![]);
        assert!(single.verify_axioms().ok());
        let cyc = Poset::from_relation(vec!["a", "b", "c"], vec![(0, 1), (1, 0), (0, 2), (1, 2)]);
        assert!(!cyc.verify_axioms().ok());
        assert!(matches!(cyc.f_vector(), Err(Error::Rank(_))));
        let two_tops = Poset::from_relation(vec!["a", "b", "c"], vec![(0, 1), (0, 2)]);
        assert!(!two_tops.verify_axioms().ok());
    }

    #[test]
    fn growth_steps_from_the_top_and_bottom() {
        for family in Family::all() {
            let top = half_painted_corolla(family, 2);
            let growths = elementary_growths(&top).unwrap();
            let p = build_poset(family, 2, Exec::Sequential);
            let f = p.f_vector().unwrap();
            let t = p.elements.iter().position(|e| e == &top).unwrap();
            let below: Vec<&PaintedTree> = p.covers().iter().filter(|c| c.1 == t).map(|c| &p.elements[c.0]).collect();
            assert_eq!(below.len(), f[1], "{family}");
            assert!(below.iter().all(|b| growths.contains(b)));
            for v in enumerate_painted(family, 2, FaceLevel::VertexOnly) {
                assert!(elementary_growths(&v).unwrap().is_empty());
                assert!(leq(&v, &top).unwrap());
            }
        }
        // one edge grown in the full family is a single step
        let t = PaintedTree::parse(Family::full(), "(...)1").unwrap();
        let g = elementary_growths(&t).unwrap();
        assert!(g.iter().any(|s| s.canonical() == "((..)1.)2"));
    }

    #[test]
    fn maps_are_monotone() {
        for n in 0..=3 {
            for f in Family::all() {
                let p = build_poset(f, n, Exec::Parallel);
                for (g, map) in [
                    (Map::Beta, Map::Identity),
                    (Map::Tau, Map::Identity),
                    (Map::Kappa, Map::Identity),
                    (Map::Identity, Map::Tau),
                    (Map::Identity, Map::Kappa),
                ] {
                    let Ok(probe) = fractional_map(g, map, &p.elements[0]) else { continue };
                    let q = build_poset(probe.family, n, Exec::Parallel);
                    let idx = |x: &PaintedTree| q.elements.iter().position(|e| e == x).unwrap();
                    let img: Vec<usize> = p.elements.iter().map(|e| idx(&fractional_map(g, map, e).unwrap())).collect();
                    for (a, b) in p.covers() {
                        assert!(q.leq(img[a], img[b]));
                    }
                }
            }
        }
    }
}
