//! Simple graphs, tubes and tubings, marked tubings, and the posets they
//! index: graph associahedra, graph multiplihedra, and the composihedron and
//! cubeahedron quotients of the latter.
//!
//! Node labels are arbitrary integers; internally nodes are indexed
//! `0..n` in increasing label order and node sets are `u64` bitmasks.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::growth::Poset;

pub type Mask = u64;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    labels: Vec<i64>,
    adj: Vec<Mask>,
}

impl Graph {
    pub fn new(labels: impl IntoIterator<Item = i64>, edges: impl IntoIterator<Item = (i64, i64)>) -> Result<Self> {
        let mut labels: Vec<i64> = labels.into_iter().collect();
        labels.sort_unstable();
        labels.dedup();
        if labels.len() > 63 {
            return Err(Error::InvalidArgument("graphs are limited to 63 nodes".into()));
        }
        let mut g = Graph { adj: vec![0; labels.len()], labels };
        for (a, b) in edges {
            if a == b {
                return Err(Error::InvalidArgument(format!("loop at {a}")));
            }
            let (i, j) = (g.index(a)?, g.index(b)?);
            g.adj[i] |= 1 << j;
            g.adj[j] |= 1 << i;
        }
        Ok(g)
    }

    pub fn index(&self, label: i64) -> Result<usize> {
        self.labels
            .binary_search(&label)
            .map_err(|_| Error::InvalidArgument(format!("no node labelled {label}")))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[i64] {
        &self.labels
    }

    pub fn all(&self) -> Mask {
        if self.len() == 64 {
            !0
        } else {
            (1 << self.len()) - 1
        }
    }

    pub fn has_edge(&self, a: i64, b: i64) -> bool {
        match (self.index(a), self.index(b)) {
            (Ok(i), Ok(j)) => self.adj[i] >> j & 1 == 1,
            _ => false,
        }
    }

    pub fn edges(&self) -> Vec<(i64, i64)> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                if self.adj[i] >> j & 1 == 1 {
                    out.push((self.labels[i], self.labels[j]));
                }
            }
        }
        out
    }

    pub fn mask_of(&self, labels: &[i64]) -> Result<Mask> {
        labels.iter().try_fold(0, |m, &l| Ok(m | 1 << self.index(l)?))
    }

    pub fn labels_of(&self, m: Mask) -> Vec<i64> {
        (0..self.len()).filter(|&i| m >> i & 1 == 1).map(|i| self.labels[i]).collect()
    }

    fn neighbours(&self, m: Mask) -> Mask {
        let mut out = 0;
        let mut rest = m;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            out |= self.adj[i];
        }
        out
    }

    /// The component of `m` containing its lowest node.
    fn grow(&self, m: Mask) -> Mask {
        if m == 0 {
            return 0;
        }
        let mut seen = m & m.wrapping_neg();
        loop {
            let next = (seen | self.neighbours(seen)) & m;
            if next == seen {
                return seen;
            }
            seen = next;
        }
    }

    pub fn is_connected_set(&self, m: Mask) -> bool {
        m != 0 && self.grow(m) == m
    }

    /// Connected components of the subgraph induced on `m`.
    pub fn components(&self, m: Mask) -> Vec<Mask> {
        let mut out = Vec::new();
        let mut rest = m;
        while rest != 0 {
            let c = self.grow(rest);
            out.push(c);
            rest &= !c;
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components(self.all()).len() <= 1
    }

    pub fn to_json(&self) -> Value {
        json!({
            "nodes": self.labels,
            "edges": self.edges().iter().map(|&(a, b)| [a, b]).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let nodes: Vec<i64> = serde_json::from_value(v.get("nodes").cloned().unwrap_or(Value::Null))
            .map_err(|e| Error::Parse(format!("graph nodes: {e}")))?;
        let edges: Vec<(i64, i64)> = serde_json::from_value(v.get("edges").cloned().unwrap_or(json!([])))
            .map_err(|e| Error::Parse(format!("graph edges: {e}")))?;
        Graph::new(nodes, edges)
    }

    pub fn path(n: usize) -> Graph {
        Graph::new(1..=n as i64, (1..n as i64).map(|i| (i, i + 1))).expect("valid")
    }

    pub fn complete(n: usize) -> Graph {
        let n = n as i64;
        Graph::new(1..=n, (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j)))).expect("valid")
    }

    pub fn edgeless(n: usize) -> Graph {
        Graph::new(1..=n as i64, []).expect("valid")
    }

    /// Adds a node `0` joined to every node; existing labels shift up by one
    /// when `0` is already taken.
    pub fn suspension(&self) -> Graph {
        let shift = i64::from(self.labels.contains(&0));
        let labels = std::iter::once(0).chain(self.labels.iter().map(|l| l + shift));
        let edges = self
            .edges()
            .into_iter()
            .map(|(a, b)| (a + shift, b + shift))
            .chain(self.labels.iter().map(|l| (0, l + shift)));
        Graph::new(labels, edges.collect::<Vec<_>>()).expect("valid")
    }

    /// Centre `0`, leaves `1..=n`.
    pub fn star(n: usize) -> Graph {
        Graph::edgeless(n).suspension()
    }

    /// Edgeless nodes `0, n+1, .., n+m-1` each joined to the path `1..=n`.
    pub fn fan(m: usize, n: usize) -> Graph {
        let apexes: Vec<i64> = std::iter::once(0).chain((n as i64 + 1)..(n + m) as i64).take(m).collect();
        let path: Vec<i64> = (1..=n as i64).collect();
        let mut edges: Vec<(i64, i64)> = (1..n as i64).map(|i| (i, i + 1)).collect();
        for &a in &apexes {
            edges.extend(path.iter().map(|&p| (a, p)));
        }
        Graph::new(apexes.iter().copied().chain(path), edges).expect("valid")
    }

    /// Parts `0..m` and `m..m+n`.
    pub fn complete_bipartite(m: usize, n: usize) -> Graph {
        let (m, n) = (m as i64, n as i64);
        Graph::new(0..m + n, (0..m).flat_map(|a| (m..m + n).map(move |b| (a, b)))).expect("valid")
    }

    /// The induced subgraph on `m`, keeping labels.
    pub fn induced(&self, m: Mask) -> Graph {
        let labels = self.labels_of(m);
        let edges = self.edges().into_iter().filter(|(a, b)| labels.contains(a) && labels.contains(b));
        Graph::new(labels.clone(), edges.collect::<Vec<_>>()).expect("valid")
    }

    /// Nodes outside `t`; `a` and `b` are adjacent when they are adjacent in
    /// the graph or both touch one component of `t`.
    pub fn reconnected_complement(&self, t: Mask) -> Graph {
        let rest = self.all() & !t;
        let mut edges: BTreeSet<(i64, i64)> = BTreeSet::new();
        for (a, b) in self.edges() {
            let (i, j) = (self.index(a).unwrap(), self.index(b).unwrap());
            if rest >> i & 1 == 1 && rest >> j & 1 == 1 {
                edges.insert((a, b));
            }
        }
        for c in self.components(t) {
            let touching = self.labels_of(self.neighbours(c) & rest);
            for (x, &a) in touching.iter().enumerate() {
                for &b in &touching[x + 1..] {
                    edges.insert((a, b));
                }
            }
        }
        Graph::new(self.labels_of(rest), edges.into_iter().collect::<Vec<_>>()).expect("valid")
    }

    /// Every tube: connected node sets other than the whole node set, plus
    /// the universal tube. Sorted by size, then mask.
    pub fn tubes(&self) -> Vec<Mask> {
        let all = self.all();
        let mut out: Vec<Mask> = (1..=all).filter(|&m| m == all || self.is_connected_set(m)).collect();
        out.sort_by_key(|&m| (m.count_ones(), m));
        out
    }

    /// Nested, or disjoint with no edge between them.
    pub fn compatible(&self, u: Mask, v: Mask) -> bool {
        if u & v == u || u & v == v {
            return true;
        }
        u & v == 0 && self.neighbours(u) & v == 0
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "nodes {:?} edges {:?}", self.labels, self.edges())
    }
}

/// A set of pairwise compatible tubes, always holding the universal tube.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tubing {
    pub tubes: Vec<Mask>,
}

impl Tubing {
    pub fn new(g: &Graph, mut tubes: Vec<Mask>) -> Result<Self> {
        tubes.push(g.all());
        tubes.sort_by_key(|&m| (m.count_ones(), m));
        tubes.dedup();
        let t = Tubing { tubes };
        t.check(g)?;
        Ok(t)
    }

    fn check(&self, g: &Graph) -> Result<()> {
        for &u in &self.tubes {
            if u & !g.all() != 0 || !(u == g.all() || g.is_connected_set(u)) {
                return Err(Error::InvalidTubing(format!("{:?} is not a tube", g.labels_of(u))));
            }
        }
        for (i, &u) in self.tubes.iter().enumerate() {
            for &v in &self.tubes[i + 1..] {
                if !g.compatible(u, v) {
                    return Err(Error::InvalidTubing(format!(
                        "{:?} and {:?} are incompatible",
                        g.labels_of(u),
                        g.labels_of(v)
                    )));
                }
            }
        }
        let comps = g.components(g.all());
        if comps.len() > 1 && comps.iter().all(|c| self.tubes.contains(c)) {
            return Err(Error::InvalidTubing("every component is a tube".into()));
        }
        Ok(())
    }

    /// Number of tubes, universal included.
    pub fn len(&self) -> usize {
        self.tubes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tubes.is_empty()
    }

    pub fn dimension(&self, g: &Graph) -> usize {
        g.len() - self.len()
    }

    pub fn to_json(&self, g: &Graph) -> Value {
        json!({ "tubes": self.tubes.iter().map(|&m| g.labels_of(m)).collect::<Vec<_>>() })
    }
}

/// All tubings of `g` (every one including the universal tube), in a
/// deterministic order.
pub fn enumerate_tubings(g: &Graph, maximal_only: bool) -> Vec<Tubing> {
    let all = g.all();
    let proper: Vec<Mask> = g.tubes().into_iter().filter(|&m| m != all).collect();
    let comps = g.components(all);
    let forbidden = |chosen: &[Mask]| comps.len() > 1 && comps.iter().all(|c| chosen.contains(c));
    let mut out = Vec::new();
    fn rec(
        g: &Graph,
        proper: &[Mask],
        start: usize,
        chosen: &mut Vec<Mask>,
        forbidden: &dyn Fn(&[Mask]) -> bool,
        out: &mut Vec<Vec<Mask>>,
    ) {
        out.push(chosen.clone());
        for i in start..proper.len() {
            let u = proper[i];
            if chosen.iter().all(|&v| g.compatible(u, v)) {
                chosen.push(u);
                if !forbidden(chosen) {
                    rec(g, proper, i + 1, chosen, forbidden, out);
                }
                chosen.pop();
            }
        }
    }
    let mut raw = Vec::new();
    rec(g, &proper, 0, &mut Vec::new(), &forbidden, &mut raw);
    for mut ts in raw {
        if maximal_only {
            let extendable = proper.iter().any(|&u| {
                !ts.contains(&u) && ts.iter().all(|&v| g.compatible(u, v)) && {
                    let mut t2 = ts.clone();
                    t2.push(u);
                    !forbidden(&t2)
                }
            });
            if extendable {
                continue;
            }
        }
        ts.push(all);
        ts.sort_by_key(|&m| (m.count_ones(), m));
        out.push(Tubing { tubes: ts });
    }
    out.sort();
    out
}

/// `u ≼ v` when `v`'s tubes are among `u`'s.
pub fn tubing_leq(u: &Tubing, v: &Tubing) -> bool {
    v.tubes.iter().all(|t| u.tubes.contains(t))
}

/// The face poset of the graph associahedron.
pub fn tubing_poset(g: &Graph) -> Poset<Tubing> {
    let elements = enumerate_tubings(g, false);
    let index: HashMap<&Tubing, usize> = elements.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let all = g.all();
    let mut rel = Vec::new();
    for (i, t) in elements.iter().enumerate() {
        for &u in t.tubes.iter().filter(|&&u| u != all) {
            let smaller = Tubing { tubes: t.tubes.iter().copied().filter(|&x| x != u).collect() };
            rel.push((i, index[&smaller]));
        }
    }
    Poset::from_relation(elements, rel)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mark {
    Thin,
    Thick,
    Broken,
}

impl Mark {
    pub fn name(&self) -> &'static str {
        match self {
            Mark::Thin => "thin",
            Mark::Thick => "thick",
            Mark::Broken => "broken",
        }
    }
}

/// A tubing with a marking on every tube, universal tube included.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MarkedTubing {
    /// Sorted by size, then mask.
    pub tubes: Vec<(Mask, Mark)>,
}

impl MarkedTubing {
    pub fn new(g: &Graph, mut tubes: Vec<(Mask, Mark)>) -> Result<Self> {
        tubes.sort_by_key(|&(m, k)| (m.count_ones(), m, k));
        let plain: Vec<Mask> = tubes.iter().map(|t| t.0).collect();
        if !plain.contains(&g.all()) {
            return Err(Error::InvalidTubing("the universal tube needs a marking".into()));
        }
        let mut dedup = plain.clone();
        dedup.dedup();
        if dedup.len() != plain.len() {
            return Err(Error::InvalidTubing("a tube is marked twice".into()));
        }
        Tubing::new(g, plain)?;
        let t = MarkedTubing { tubes };
        if !t.marks_compatible() {
            return Err(Error::InvalidTubing("a tube inside a thin or broken tube is not thin".into()));
        }
        Ok(t)
    }

    fn marks_compatible(&self) -> bool {
        self.tubes.iter().all(|&(u, mu)| {
            mu == Mark::Thin || self.tubes.iter().all(|&(v, mv)| v == u || u & v != u || mv == Mark::Thick)
        })
    }

    pub fn tubing(&self) -> Tubing {
        Tubing { tubes: self.tubes.iter().map(|t| t.0).collect() }
    }

    pub fn mark(&self, m: Mask) -> Option<Mark> {
        self.tubes.iter().find(|t| t.0 == m).map(|t| t.1)
    }

    /// `n - |tubes| + |broken tubes|`.
    pub fn dimension(&self, g: &Graph) -> usize {
        g.len() + self.tubes.iter().filter(|t| t.1 == Mark::Broken).count() - self.tubes.len()
    }

    pub fn all_thin(t: &Tubing) -> MarkedTubing {
        MarkedTubing { tubes: t.tubes.iter().map(|&m| (m, Mark::Thin)).collect() }
    }

    pub fn to_json(&self, g: &Graph) -> Value {
        json!({
            "tubes": self.tubes.iter().map(|t| g.labels_of(t.0)).collect::<Vec<_>>(),
            "marks": self.tubes.iter().map(|t| t.1.name()).collect::<Vec<_>>(),
        })
    }

    pub fn display(&self, g: &Graph) -> String {
        let parts: Vec<String> = self
            .tubes
            .iter()
            .map(|&(m, k)| {
                let inner: Vec<String> = g.labels_of(m).iter().map(i64::to_string).collect();
                let (o, c) = match k {
                    Mark::Thin => ("(", ")"),
                    Mark::Thick => ("((", "))"),
                    Mark::Broken => ("(:", ":)"),
                };
                format!("{o}{}{c}", inner.join(" "))
            })
            .collect();
        parts.join(" ")
    }
}

/// Every marking of every tubing of `g`.
pub fn enumerate_marked(g: &Graph) -> Vec<MarkedTubing> {
    let mut out = Vec::new();
    for t in enumerate_tubings(g, false) {
        // containers before contents
        let order: Vec<Mask> = t.tubes.iter().rev().copied().collect();
        fn rec(order: &[Mask], i: usize, cur: &mut Vec<(Mask, Mark)>, out: &mut Vec<MarkedTubing>) {
            if i == order.len() {
                let mut tubes = cur.clone();
                tubes.sort_by_key(|&(m, _)| (m.count_ones(), m));
                out.push(MarkedTubing { tubes });
                return;
            }
            let u = order[i];
            let free = cur.iter().all(|&(v, k)| u & v != u || k == Mark::Thick);
            let marks: &[Mark] = if free { &[Mark::Thin, Mark::Thick, Mark::Broken] } else { &[Mark::Thin] };
            for &k in marks {
                cur.push((u, k));
                rec(order, i + 1, cur, out);
                cur.pop();
            }
        }
        rec(&order, 0, &mut Vec::new(), &mut out);
    }
    out.sort();
    out
}

fn with_tube(t: &MarkedTubing, extra: &[(Mask, Mark)], change: Option<(Mask, Mark)>) -> MarkedTubing {
    let mut tubes: Vec<(Mask, Mark)> = t
        .tubes
        .iter()
        .map(|&(m, k)| match change {
            Some((c, nk)) if c == m => (m, nk),
            _ => (m, k),
        })
        .chain(extra.iter().copied())
        .collect();
    tubes.sort_by_key(|&(m, _)| (m.count_ones(), m));
    MarkedTubing { tubes }
}

/// Tubes that may be added to the plain tubing under `t` without breaking it.
fn addable(g: &Graph, t: &MarkedTubing) -> Vec<Mask> {
    let plain: Vec<Mask> = t.tubes.iter().map(|x| x.0).collect();
    let comps = g.components(g.all());
    g.tubes()
        .into_iter()
        .filter(|&u| u != g.all() && !plain.contains(&u) && plain.iter().all(|&v| g.compatible(u, v)))
        .filter(|&u| comps.len() < 2 || !comps.iter().all(|&c| c == u || plain.contains(&c)))
        .collect()
}

/// The smallest tube of `t` strictly containing `u`.
fn container(t: &MarkedTubing, u: Mask) -> Option<(Mask, Mark)> {
    t.tubes.iter().copied().filter(|&(v, _)| v != u && u & v == u).min_by_key(|&(v, _)| v.count_ones())
}

/// Every marked tubing one step below `t`: a broken tube becomes thin or
/// thick; a thin tube is added inside a thin or broken tube; a thick tube is
/// added inside a thick tube; or broken tubes are added inside a broken tube,
/// which becomes thick.
pub fn marked_down_moves(g: &Graph, t: &MarkedTubing) -> Vec<MarkedTubing> {
    let mut out = Vec::new();
    for &(v, k) in &t.tubes {
        if k == Mark::Broken {
            out.push(with_tube(t, &[], Some((v, Mark::Thin))));
            out.push(with_tube(t, &[], Some((v, Mark::Thick))));
        }
    }
    let cands = addable(g, t);
    for &u in &cands {
        match container(t, u) {
            Some((_, Mark::Thin | Mark::Broken)) => out.push(with_tube(t, &[(u, Mark::Thin)], None)),
            Some((_, Mark::Thick)) => out.push(with_tube(t, &[(u, Mark::Thick)], None)),
            None => {}
        }
    }
    for &(v, k) in &t.tubes {
        if k != Mark::Broken {
            continue;
        }
        let inner: Vec<Mask> = cands.iter().copied().filter(|&u| u & v == u && container(t, u).map(|c| c.0) == Some(v)).collect();
        // nonempty families of pairwise disjoint, non-adjacent candidates
        fn rec(g: &Graph, inner: &[Mask], i: usize, cur: &mut Vec<Mask>, out: &mut Vec<Vec<Mask>>) {
            if i == inner.len() {
                if !cur.is_empty() {
                    out.push(cur.clone());
                }
                return;
            }
            rec(g, inner, i + 1, cur, out);
            let u = inner[i];
            if cur.iter().all(|&w| u & w == 0 && g.compatible(u, w)) {
                cur.push(u);
                rec(g, inner, i + 1, cur, out);
                cur.pop();
            }
        }
        let mut families = Vec::new();
        rec(g, &inner, 0, &mut Vec::new(), &mut families);
        for fam in families {
            let extra: Vec<(Mask, Mark)> = fam.iter().map(|&u| (u, Mark::Broken)).collect();
            let next = with_tube(t, &extra, Some((v, Mark::Thick)));
            let plain: Vec<Mask> = next.tubes.iter().map(|x| x.0).collect();
            if Tubing::new(g, plain).is_ok() {
                out.push(next);
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

fn poset_from_moves(
    elements: Vec<MarkedTubing>,
    down: impl Fn(&MarkedTubing) -> Vec<MarkedTubing>,
) -> Result<Poset<MarkedTubing>> {
    let index: HashMap<MarkedTubing, usize> = elements.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
    let mut rel = Vec::new();
    for (i, t) in elements.iter().enumerate() {
        for s in down(t) {
            let j = *index
                .get(&s)
                .ok_or_else(|| Error::InvalidTubing(format!("move leaves the element set from {t:?}")))?;
            rel.push((j, i));
        }
    }
    Ok(Poset::from_relation(elements, rel))
}

/// The face poset of the graph multiplihedron.
pub fn marked_poset(g: &Graph) -> Poset<MarkedTubing> {
    poset_from_moves(enumerate_marked(g), |t| marked_down_moves(g, t)).expect("moves stay within marked tubings")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quotient {
    /// Identifies the addition of a thin tube inside a thin tube.
    Composihedron,
    /// Identifies the addition of a thick tube inside a thick tube.
    Cubeahedron,
}

impl Quotient {
    fn collapsed(&self) -> Mark {
        match self {
            Quotient::Composihedron => Mark::Thin,
            Quotient::Cubeahedron => Mark::Thick,
        }
    }
}

/// The maximal member of `t`'s class: every tube of the collapsed marking
/// lying inside another of the same marking is dropped.
pub fn representative(t: &MarkedTubing, q: Quotient) -> MarkedTubing {
    let k = q.collapsed();
    let tubes = t
        .tubes
        .iter()
        .copied()
        .filter(|&(u, ku)| ku != k || !t.tubes.iter().any(|&(v, kv)| kv == k && v != u && u & v == u))
        .collect();
    MarkedTubing { tubes }
}

pub fn is_representative(t: &MarkedTubing, q: Quotient) -> bool {
    representative(t, q) == *t
}

/// The face poset of the graph composihedron or cubeahedron, on class
/// representatives.
pub fn quotient_poset(g: &Graph, q: Quotient) -> Poset<MarkedTubing> {
    let elements: Vec<MarkedTubing> = enumerate_marked(g).into_iter().filter(|t| is_representative(t, q)).collect();
    poset_from_moves(elements, |t| {
        let mut v: Vec<MarkedTubing> = marked_down_moves(g, t).iter().map(|s| representative(s, q)).collect();
        v.retain(|s| s != t);
        v
    })
    .expect("representatives are closed under moves")
}

/// A design tubing of a complete graph: square tubes on single nodes and
/// ordinary round tubes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DesignTubing {
    pub squares: Mask,
    pub rounds: Vec<Mask>,
}

impl DesignTubing {
    pub fn to_json(&self, g: &Graph) -> Value {
        json!({
            "squares": g.labels_of(self.squares),
            "rounds": self.rounds.iter().map(|&m| g.labels_of(m)).collect::<Vec<_>>(),
        })
    }
}

fn is_complete(g: &Graph) -> bool {
    (0..g.len()).all(|i| g.adj[i] | 1 << i == g.all())
}

/// Squares on nodes outside every thin or broken tube; rounds are the thin
/// tubes.
pub fn to_design(g: &Graph, t: &MarkedTubing) -> Result<DesignTubing> {
    if !is_complete(g) {
        return Err(Error::Unsupported("design tubings need a complete graph".into()));
    }
    if !is_representative(t, Quotient::Cubeahedron) {
        return Err(Error::InvalidRepresentative("a thick tube sits inside a thick tube".into()));
    }
    let covered = t.tubes.iter().filter(|x| x.1 != Mark::Thick).fold(0, |m, x| m | x.0);
    let rounds = t.tubes.iter().filter(|x| x.1 == Mark::Thin).map(|x| x.0).collect();
    Ok(DesignTubing { squares: g.all() & !covered, rounds })
}

/// Thin tubes from the rounds, a broken tube on any nodes left uncovered by
/// squares and rounds, and a thick universal tube when squares exist.
pub fn from_design(g: &Graph, d: &DesignTubing) -> Result<MarkedTubing> {
    if !is_complete(g) {
        return Err(Error::Unsupported("design tubings need a complete graph".into()));
    }
    let all = g.all();
    let mut tubes: Vec<(Mask, Mark)> = d.rounds.iter().map(|&m| (m, Mark::Thin)).collect();
    let largest = d.rounds.iter().fold(0, |m, &r| m | r);
    let rest = all & !d.squares;
    if largest & !rest != 0 {
        return Err(Error::InvalidTubing("a round tube meets a square".into()));
    }
    if rest != largest {
        tubes.push((rest, Mark::Broken));
    }
    if d.squares != 0 {
        tubes.push((all, Mark::Thick));
    }
    let t = MarkedTubing::new(g, tubes)?;
    if !is_representative(&t, Quotient::Cubeahedron) {
        return Err(Error::InvalidRepresentative("not a cubeahedron representative".into()));
    }
    Ok(t)
}

/// All design tubings of the complete graph on `n` nodes.
pub fn enumerate_design(n: usize) -> Result<Vec<DesignTubing>> {
    let g = Graph::complete(n);
    let mut out: Vec<DesignTubing> = enumerate_marked(&g)
        .iter()
        .filter(|t| is_representative(t, Quotient::Cubeahedron))
        .map(|t| to_design(&g, t))
        .collect::<Result<_>>()?;
    out.sort();
    Ok(out)
}

/// Hasse diagram of a tubing-indexed poset in DOT.
pub fn marked_dot(g: &Graph, p: &Poset<MarkedTubing>) -> String {
    p.to_dot(|t| t.display(g))
}

pub fn marked_json(g: &Graph, p: &Poset<MarkedTubing>) -> Value {
    let mut v = p.to_json(|t| t.display(g));
    v["graph"] = g.to_json();
    v["tubings"] = Value::Array(p.elements.iter().map(|t| t.to_json(g)).collect());
    v
}

/// Count of marked tubings by dimension, lowest first.
pub fn marked_f_vector(g: &Graph, ts: &[MarkedTubing]) -> Vec<usize> {
    let mut by: BTreeMap<usize, usize> = BTreeMap::new();
    for t in ts {
        *by.entry(t.dimension(g)).or_default() += 1;
    }
    let top = by.keys().last().copied().unwrap_or(0);
    (0..=top).map(|d| by.get(&d).copied().unwrap_or(0)).collect()
}
