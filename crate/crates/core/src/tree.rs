//! Plane rooted trees, weak orders on their nodes, forests, and the
//! forgetful maps `beta`, `tau` and `kappa`.
//!
//! Nodes are indexed in preorder (root = 0). Gaps between adjacent leaves are
//! numbered `1..=degree`; gap `i` belongs to the node where a raindrop falling
//! between leaf `i` and leaf `i + 1` comes to rest.
//!
//! Levels are stored root-greatest: block `1` is farthest from the root and
//! the root sits in the last block.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PlaneTree {
    Leaf,
    Node(Vec<PlaneTree>),
}

impl PlaneTree {
    pub fn leaf() -> Self {
        PlaneTree::Leaf
    }

    pub fn node(children: Vec<PlaneTree>) -> Result<Self> {
        if children.len() < 2 {
            return Err(Error::Structural(format!(
                "internal node with {} children",
                children.len()
            )));
        }
        Ok(PlaneTree::Node(children))
    }

    /// The corolla with `leaves` leaves (the bare leaf when `leaves == 1`).
    pub fn corolla(leaves: usize) -> Self {
        assert!(leaves >= 1, "a corolla has at least one leaf");
        if leaves == 1 {
            PlaneTree::Leaf
        } else {
            PlaneTree::Node(vec![PlaneTree::Leaf; leaves])
        }
    }

    pub fn leaves(&self) -> usize {
        match self {
            PlaneTree::Leaf => 1,
            PlaneTree::Node(cs) => cs.iter().map(PlaneTree::leaves).sum(),
        }
    }

    pub fn degree(&self) -> usize {
        self.leaves() - 1
    }

    pub fn node_count(&self) -> usize {
        match self {
            PlaneTree::Leaf => 0,
            PlaneTree::Node(cs) => 1 + cs.iter().map(PlaneTree::node_count).sum::<usize>(),
        }
    }

    pub fn is_binary(&self) -> bool {
        match self {
            PlaneTree::Leaf => true,
            PlaneTree::Node(cs) => cs.len() == 2 && cs.iter().all(PlaneTree::is_binary),
        }
    }

    pub fn is_corolla(&self) -> bool {
        match self {
            PlaneTree::Leaf => true,
            PlaneTree::Node(cs) => cs.iter().all(|c| matches!(c, PlaneTree::Leaf)),
        }
    }

    /// Every internal node has at least two children.
    pub fn is_valid(&self) -> bool {
        match self {
            PlaneTree::Leaf => true,
            PlaneTree::Node(cs) => cs.len() >= 2 && cs.iter().all(PlaneTree::is_valid),
        }
    }

    /// Preorder index of the node owning each gap; entry `i - 1` is gap `i`.
    pub fn gap_nodes(&self) -> Vec<usize> {
        fn walk(t: &PlaneTree, next: &mut usize, out: &mut Vec<usize>) {
            if let PlaneTree::Node(cs) = t {
                let me = *next;
                *next += 1;
                for (i, c) in cs.iter().enumerate() {
                    if i > 0 {
                        out.push(me);
                    }
                    walk(c, next, out);
                }
            }
        }
        let mut out = Vec::new();
        walk(self, &mut 0, &mut out);
        out
    }

    /// Parent of each node in preorder (`None` for the root).
    pub fn parents(&self) -> Vec<Option<usize>> {
        fn walk(t: &PlaneTree, parent: Option<usize>, out: &mut Vec<Option<usize>>) {
            if let PlaneTree::Node(cs) = t {
                let me = out.len();
                out.push(parent);
                for c in cs {
                    walk(c, Some(me), out);
                }
            }
        }
        let mut out = Vec::new();
        walk(self, None, &mut out);
        out
    }

    pub fn to_json(&self) -> Value {
        match self {
            PlaneTree::Leaf => json!({ "children": [] }),
            PlaneTree::Node(cs) => {
                json!({ "children": cs.iter().map(PlaneTree::to_json).collect::<Vec<_>>() })
            }
        }
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let cs = v
            .get("children")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("tree object without \"children\" array".into()))?;
        if cs.is_empty() {
            return Ok(PlaneTree::Leaf);
        }
        let children = cs.iter().map(PlaneTree::from_json).collect::<Result<Vec<_>>>()?;
        PlaneTree::node(children)
    }
}

impl fmt::Display for PlaneTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlaneTree::Leaf => write!(f, "."),
            PlaneTree::Node(cs) => {
                write!(f, "(")?;
                for c in cs {
                    write!(f, "{c}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl FromStr for PlaneTree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bytes = s.trim().as_bytes();
        let mut pos = 0;
        let t = parse_plane(bytes, &mut pos)?;
        if pos != bytes.len() {
            return Err(Error::Parse(format!("trailing input at {pos} in {s:?}")));
        }
        Ok(t)
    }
}

fn parse_plane(b: &[u8], pos: &mut usize) -> Result<PlaneTree> {
    match b.get(*pos) {
        Some(b'.') => {
            *pos += 1;
            Ok(PlaneTree::Leaf)
        }
        Some(b'(') => {
            *pos += 1;
            let mut cs = Vec::new();
            while b.get(*pos) != Some(&b')') {
                if *pos >= b.len() {
                    return Err(Error::Parse("unclosed '('".into()));
                }
                cs.push(parse_plane(b, pos)?);
            }
            *pos += 1;
            PlaneTree::node(cs)
        }
        other => Err(Error::Parse(format!(
            "unexpected {:?} at {}",
            other.map(|c| *c as char),
            pos
        ))),
    }
}

/// Dense re-ranking of arbitrary level values, preserving ties and order.
pub fn dense_ranks(values: &[usize]) -> Vec<usize> {
    let mut sorted: Vec<usize> = values.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    values
        .iter()
        .map(|v| sorted.binary_search(v).unwrap() + 1)
        .collect()
}

/// Block index (1-based, root-greatest) of every internal node, in preorder.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LevelAssignment(pub Vec<usize>);

impl LevelAssignment {
    pub fn blocks(&self) -> usize {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn is_linear(&self) -> bool {
        self.blocks() == self.0.len()
    }

    /// Checks surjectivity onto `1..=k` and strict increase toward the root.
    pub fn validate(&self, tree: &PlaneTree) -> Result<()> {
        let parents = tree.parents();
        if parents.len() != self.0.len() {
            return Err(Error::InvalidLevel(format!(
                "{} levels for {} nodes",
                self.0.len(),
                parents.len()
            )));
        }
        if dense_ranks(&self.0) != self.0 {
            return Err(Error::InvalidLevel("levels are not onto 1..k".into()));
        }
        for (v, p) in parents.iter().enumerate() {
            if let Some(p) = p {
                if self.0[v] >= self.0[*p] {
                    return Err(Error::InvalidLevel(format!(
                        "node {v} is not strictly above its parent {p}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Ordered partition of node indices, farthest-from-root block first.
    pub fn node_blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.blocks()];
        for (v, &l) in self.0.iter().enumerate() {
            out[l - 1].push(v);
        }
        out
    }

    pub fn from_node_blocks(blocks: &[Vec<usize>], nodes: usize) -> Result<Self> {
        let mut levels = vec![0; nodes];
        for (i, b) in blocks.iter().enumerate() {
            if b.is_empty() {
                return Err(Error::InvalidLevel("empty block".into()));
            }
            for &v in b {
                if v >= nodes || levels[v] != 0 {
                    return Err(Error::InvalidLevel(format!("bad node index {v}")));
                }
                levels[v] = i + 1;
            }
        }
        if levels.contains(&0) {
            return Err(Error::InvalidLevel("node missing from partition".into()));
        }
        Ok(LevelAssignment(levels))
    }
}

/// An ordered partition of `{1, .., n}`; block 0 is farthest from the root.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderedPartition(pub Vec<Vec<usize>>);

impl OrderedPartition {
    pub fn new(mut blocks: Vec<Vec<usize>>) -> Result<Self> {
        let n: usize = blocks.iter().map(Vec::len).sum();
        let mut seen = vec![false; n + 1];
        for b in &mut blocks {
            if b.is_empty() {
                return Err(Error::InvalidArgument("empty block".into()));
            }
            b.sort_unstable();
            for &x in b.iter() {
                if x == 0 || x > n || seen[x] {
                    return Err(Error::InvalidArgument(format!("bad element {x}")));
                }
                seen[x] = true;
            }
        }
        Ok(OrderedPartition(blocks))
    }

    pub fn size(&self) -> usize {
        self.0.iter().map(Vec::len).sum()
    }

    /// Block index (0-based) of each element; entry `i - 1` is element `i`.
    pub fn block_of(&self) -> Vec<usize> {
        let mut out = vec![0; self.size()];
        for (bi, b) in self.0.iter().enumerate() {
            for &x in b {
                out[x - 1] = bi;
            }
        }
        out
    }

    /// Every ordered partition of `{1, .., n}`, in a deterministic order.
    pub fn all(n: usize) -> Vec<OrderedPartition> {
        // Insert element i into an existing block or as a new block anywhere.
        let mut out = vec![OrderedPartition(Vec::new())];
        for i in 1..=n {
            let mut next = Vec::with_capacity(out.len() * (2 * i));
            for p in &out {
                for b in 0..p.0.len() {
                    let mut q = p.clone();
                    q.0[b].push(i);
                    next.push(q);
                }
                for pos in 0..=p.0.len() {
                    let mut q = p.clone();
                    q.0.insert(pos, vec![i]);
                    next.push(q);
                }
            }
            out = next;
        }
        out.sort();
        out
    }

    /// Refinement order: `self` refines `other` when every block of `other`
    /// is a union of consecutive blocks of `self`, in the same order.
    pub fn refines(&self, other: &OrderedPartition) -> bool {
        if self.size() != other.size() {
            return false;
        }
        let mine = self.block_of();
        let theirs = other.block_of();
        let n = mine.len();
        for a in 0..n {
            for b in 0..n {
                if theirs[a] < theirs[b] && mine[a] >= mine[b] {
                    return false;
                }
            }
        }
        true
    }
}

impl fmt::Display for OrderedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, b) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{{")?;
            for (j, x) in b.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "}}")?;
        }
        write!(f, ")")
    }
}

/// A plane tree together with a weak vertical order on its nodes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LeveledTree {
    pub tree: PlaneTree,
    pub levels: LevelAssignment,
}

impl LeveledTree {
    pub fn new(tree: PlaneTree, levels: LevelAssignment) -> Result<Self> {
        levels.validate(&tree)?;
        Ok(LeveledTree { tree, levels })
    }

    /// The tree whose gaps are weakly ordered by `p` (the Tonks
    /// correspondence, inverse of [`weak_order_partition`]).
    pub fn from_partition(p: &OrderedPartition) -> LeveledTree {
        let block = p.block_of();
        let n = block.len();
        // Build the tree over gap interval [lo, hi] (1-based, inclusive).
        fn build(lo: usize, hi: usize, block: &[usize], levels: &mut Vec<usize>) -> PlaneTree {
            if lo > hi {
                return PlaneTree::Leaf;
            }
            let top = (lo..=hi).map(|g| block[g - 1]).max().unwrap();
            let own: Vec<usize> = (lo..=hi).filter(|&g| block[g - 1] == top).collect();
            levels.push(top + 1);
            let mut children = Vec::with_capacity(own.len() + 1);
            let mut start = lo;
            for &g in &own {
                children.push(build(start, g - 1, block, levels));
                start = g + 1;
            }
            children.push(build(start, hi, block, levels));
            PlaneTree::Node(children)
        }
        let mut levels = Vec::new();
        let tree = if n == 0 {
            PlaneTree::Leaf
        } else {
            build(1, n, &block, &mut levels)
        };
        let levels = LevelAssignment(dense_ranks(&levels));
        LeveledTree { tree, levels }
    }

    pub fn partition(&self) -> OrderedPartition {
        weak_order_partition(&self.tree, &self.levels).expect("validated on construction")
    }

    pub fn to_json(&self) -> Value {
        let mut v = self.tree.to_json();
        v["levels"] = json!(self.levels.node_blocks());
        v
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let tree = PlaneTree::from_json(v)?;
        let blocks: Vec<Vec<usize>> = serde_json::from_value(
            v.get("levels").cloned().ok_or_else(|| Error::Parse("missing \"levels\"".into()))?,
        )
        .map_err(|e| Error::Parse(e.to_string()))?;
        let levels = LevelAssignment::from_node_blocks(&blocks, tree.node_count())?;
        LeveledTree::new(tree, levels)
    }
}

impl fmt::Display for LeveledTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.tree)?;
        for b in self.levels.node_blocks() {
            write!(f, "{{")?;
            for (j, x) in b.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "}}")?;
        }
        Ok(())
    }
}

impl FromStr for LeveledTree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (t, l) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse("leveled tree needs ':' before levels".into()))?;
        let tree: PlaneTree = t.parse()?;
        let mut blocks = Vec::new();
        for chunk in l.split('}').filter(|c| !c.trim().is_empty()) {
            let inner = chunk
                .trim()
                .strip_prefix('{')
                .ok_or_else(|| Error::Parse(format!("bad level block {chunk:?}")))?;
            let block = inner
                .split(',')
                .filter(|x| !x.is_empty())
                .map(|x| x.trim().parse::<usize>().map_err(|e| Error::Parse(e.to_string())))
                .collect::<Result<Vec<_>>>()?;
            blocks.push(block);
        }
        let levels = LevelAssignment::from_node_blocks(&blocks, tree.node_count())?;
        LeveledTree::new(tree, levels)
    }
}

/// The ordered partition of gaps induced by a level assignment.
pub fn weak_order_partition(t: &PlaneTree, l: &LevelAssignment) -> Result<OrderedPartition> {
    l.validate(t)?;
    let gaps = t.gap_nodes();
    let mut blocks = vec![Vec::new(); l.blocks()];
    for (i, &v) in gaps.iter().enumerate() {
        blocks[l.0[v] - 1].push(i + 1);
    }
    Ok(OrderedPartition(blocks))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TreeKind {
    Corolla,
    Plane,
    Binary,
    Ordered,
    WeaklyOrdered,
}

/// All plane trees with the given number of leaves (cached recursion).
fn plane_trees(leaves: usize, binary: bool, memo: &mut BTreeMap<usize, Vec<PlaneTree>>) -> Vec<PlaneTree> {
    if let Some(v) = memo.get(&leaves) {
        return v.clone();
    }
    let mut out = Vec::new();
    if leaves == 1 {
        out.push(PlaneTree::Leaf);
    } else {
        // compositions of `leaves` into k >= 2 positive parts
        let mut comps: Vec<Vec<usize>> = Vec::new();
        fn compositions(rest: usize, cur: &mut Vec<usize>, binary: bool, out: &mut Vec<Vec<usize>>) {
            if rest == 0 {
                if cur.len() >= 2 && (!binary || cur.len() == 2) {
                    out.push(cur.clone());
                }
                return;
            }
            if binary && cur.len() == 2 {
                return;
            }
            for first in 1..=rest {
                cur.push(first);
                compositions(rest - first, cur, binary, out);
                cur.pop();
            }
        }
        compositions(leaves, &mut Vec::new(), binary, &mut comps);
        for comp in comps {
            if comp.len() < 2 {
                continue;
            }
            let options: Vec<Vec<PlaneTree>> =
                comp.iter().map(|&c| plane_trees(c, binary, memo)).collect();
            for choice in itertools::Itertools::multi_cartesian_product(options.into_iter().map(|v| v.into_iter())) {
                out.push(PlaneTree::Node(choice));
            }
        }
    }
    memo.insert(leaves, out.clone());
    out
}

/// Every tree of `kind` with `leaves` leaves, sorted by canonical string.
pub fn enumerate_trees(kind: TreeKind, leaves: usize) -> Result<Vec<(PlaneTree, Option<LevelAssignment>)>> {
    if leaves == 0 {
        return Err(Error::InvalidArgument("a tree has at least one leaf".into()));
    }
    let mut out: Vec<(PlaneTree, Option<LevelAssignment>)> = match kind {
        TreeKind::Corolla => vec![(PlaneTree::corolla(leaves), None)],
        TreeKind::Plane => plane_trees(leaves, false, &mut BTreeMap::new())
            .into_iter()
            .map(|t| (t, None))
            .collect(),
        TreeKind::Binary => plane_trees(leaves, true, &mut BTreeMap::new())
            .into_iter()
            .map(|t| (t, None))
            .collect(),
        TreeKind::WeaklyOrdered | TreeKind::Ordered => OrderedPartition::all(leaves - 1)
            .into_iter()
            .filter(|p| kind == TreeKind::WeaklyOrdered || p.0.iter().all(|b| b.len() == 1))
            .map(|p| {
                let lt = LeveledTree::from_partition(&p);
                (lt.tree, Some(lt.levels))
            })
            .collect(),
    };
    let key = |(t, l): &(PlaneTree, Option<LevelAssignment>)| match l {
        None => t.to_string(),
        Some(l) => LeveledTree { tree: t.clone(), levels: l.clone() }.to_string(),
    };
    out.sort_by_key(key);
    Ok(out)
}

/// Forgets the vertical order.
pub fn tau(t: &LeveledTree) -> PlaneTree {
    t.tree.clone()
}

/// The corolla with the same number of leaves.
pub fn kappa(t: &PlaneTree) -> PlaneTree {
    PlaneTree::corolla(t.leaves())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ForestKind {
    /// One weak order over the nodes of all trees together.
    WeaklyOrderedForest,
    /// Each tree carries its own weak order.
    ForestOfWeaklyOrderedTrees,
    ForestOfPlaneTrees,
    ForestOfCorollas,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Forest {
    pub kind: ForestKind,
    pub trees: Vec<PlaneTree>,
    /// Per-tree levels, for `ForestOfWeaklyOrderedTrees`.
    pub tree_levels: Vec<LevelAssignment>,
    /// Levels over the concatenated preorder of all trees, for
    /// `WeaklyOrderedForest`.
    pub forest_levels: Option<LevelAssignment>,
}

impl Forest {
    pub fn weakly_ordered(trees: Vec<PlaneTree>, levels: LevelAssignment) -> Result<Self> {
        let f = Forest {
            kind: ForestKind::WeaklyOrderedForest,
            trees,
            tree_levels: Vec::new(),
            forest_levels: Some(levels),
        };
        f.validate()?;
        Ok(f)
    }

    pub fn of_plane_trees(trees: Vec<PlaneTree>) -> Self {
        Forest { kind: ForestKind::ForestOfPlaneTrees, trees, tree_levels: Vec::new(), forest_levels: None }
    }

    pub fn validate(&self) -> Result<()> {
        match self.kind {
            ForestKind::WeaklyOrderedForest => {
                let l = self
                    .forest_levels
                    .as_ref()
                    .ok_or_else(|| Error::InvalidLevel("missing forest levels".into()))?;
                let total: usize = self.trees.iter().map(PlaneTree::node_count).sum();
                if l.0.len() != total || dense_ranks(&l.0) != l.0 {
                    return Err(Error::InvalidLevel("forest levels malformed".into()));
                }
                let mut off = 0;
                for t in &self.trees {
                    let k = t.node_count();
                    for (v, p) in t.parents().iter().enumerate() {
                        if let Some(p) = p {
                            if l.0[off + v] >= l.0[off + p] {
                                return Err(Error::InvalidLevel("forest order not root-respecting".into()));
                            }
                        }
                    }
                    off += k;
                }
                Ok(())
            }
            ForestKind::ForestOfWeaklyOrderedTrees => {
                if self.tree_levels.len() != self.trees.len() {
                    return Err(Error::InvalidLevel("one level map per tree required".into()));
                }
                for (t, l) in self.trees.iter().zip(&self.tree_levels) {
                    l.validate(t)?;
                }
                Ok(())
            }
            ForestKind::ForestOfPlaneTrees => Ok(()),
            ForestKind::ForestOfCorollas => {
                if self.trees.iter().all(PlaneTree::is_corolla) {
                    Ok(())
                } else {
                    Err(Error::Structural("non-corolla in a forest of corollas".into()))
                }
            }
        }
    }
}

/// Restricts a forest-wide weak order to each tree.
pub fn beta(f: &Forest) -> Result<Forest> {
    if f.kind != ForestKind::WeaklyOrderedForest {
        return Err(Error::KindMismatch(format!("beta expects a weakly ordered forest, got {:?}", f.kind)));
    }
    let l = f.forest_levels.as_ref().expect("validated");
    let mut off = 0;
    let mut tree_levels = Vec::with_capacity(f.trees.len());
    for t in &f.trees {
        let k = t.node_count();
        tree_levels.push(LevelAssignment(dense_ranks(&l.0[off..off + k])));
        off += k;
    }
    Ok(Forest {
        kind: ForestKind::ForestOfWeaklyOrderedTrees,
        trees: f.trees.clone(),
        tree_levels,
        forest_levels: None,
    })
}

pub fn tau_forest(f: &Forest) -> Forest {
    Forest::of_plane_trees(f.trees.clone())
}

pub fn kappa_forest(f: &Forest) -> Forest {
    Forest {
        kind: ForestKind::ForestOfCorollas,
        trees: f.trees.iter().map(kappa).collect(),
        tree_levels: Vec::new(),
        forest_levels: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn catalan_oracle(n: usize) -> usize {
        let mut c = vec![1usize; n + 1];
        for i in 1..=n {
            c[i] = (0..i).map(|j| c[j] * c[i - 1 - j]).sum();
        }
        c[n]
    }

    #[test]
    fn binary_counts_are_catalan() {
        for n in 0..=10 {
            let ts = enumerate_trees(TreeKind::Binary, n + 1).unwrap();
            assert_eq!(ts.len(), catalan_oracle(n), "n = {n}");
        }
        assert_eq!(enumerate_trees(TreeKind::Binary, 4).unwrap().len(), 5);
    }

    #[test]
    fn plane_trees_with_four_leaves() {
        // little Schroeder numbers 1, 1, 3, 11, 45
        let counts: Vec<usize> = (1..=5)
            .map(|l| enumerate_trees(TreeKind::Plane, l).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 1, 3, 11, 45]);
    }

    #[test]
    fn corolla_and_ordered_counts() {
        for l in 1..6 {
            assert_eq!(enumerate_trees(TreeKind::Corolla, l).unwrap().len(), 1);
        }
        assert_eq!(enumerate_trees(TreeKind::Ordered, 5).unwrap().len(), 24);
        // ordered partitions of [3]
        assert_eq!(enumerate_trees(TreeKind::WeaklyOrdered, 4).unwrap().len(), 13);
        assert!(matches!(enumerate_trees(TreeKind::Plane, 0), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn enumeration_is_sorted_and_distinct() {
        let ts = enumerate_trees(TreeKind::Plane, 5).unwrap();
        let keys: Vec<String> = ts.iter().map(|(t, _)| t.to_string()).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(keys, sorted);
    }

    #[test]
    fn partition_of_six_leaf_example() {
        let p = OrderedPartition::new(vec![vec![2, 5], vec![1], vec![3, 4]]).unwrap();
        let lt = LeveledTree::from_partition(&p);
        assert_eq!(lt.tree.leaves(), 6);
        assert_eq!(lt.tree.to_string(), "((.(..)).(..))");
        assert_eq!(weak_order_partition(&lt.tree, &lt.levels).unwrap(), p);
    }

    #[test]
    fn permutation_tree_partition() {
        // sigma(i) = level of the node at gap i
        let sigma = [3usize, 2, 4, 1];
        let mut blocks = vec![Vec::new(); 4];
        for (i, &s) in sigma.iter().enumerate() {
            blocks[s - 1].push(i + 1);
        }
        let p = OrderedPartition::new(blocks).unwrap();
        let lt = LeveledTree::from_partition(&p);
        assert!(lt.tree.is_binary());
        assert_eq!(lt.partition().to_string(), "({4},{2},{1},{3})");
        assert!(lt.levels.is_linear());
    }

    #[test]
    fn corolla_partition_is_one_block() {
        let t = PlaneTree::corolla(5);
        let p = weak_order_partition(&t, &LevelAssignment(vec![1])).unwrap();
        assert_eq!(p.0, vec![vec![1, 2, 3, 4]]);
    }

    #[test]
    fn invalid_level_rejected() {
        let t: PlaneTree = "((..).)".parse().unwrap();
        assert!(matches!(
            weak_order_partition(&t, &LevelAssignment(vec![1, 2])),
            Err(Error::InvalidLevel(_))
        ));
    }

    #[test]
    fn partition_round_trip_exhaustive() {
        for n in 0..=6 {
            for p in OrderedPartition::all(n) {
                let lt = LeveledTree::from_partition(&p);
                lt.levels.validate(&lt.tree).unwrap();
                assert_eq!(lt.partition(), p);
            }
        }
    }

    #[test]
    fn beta_tau_kappa() {
        let trees = vec!["(..)".parse().unwrap(), PlaneTree::Leaf, "((..).)".parse().unwrap()];
        let f = Forest::weakly_ordered(trees, LevelAssignment(vec![2, 3, 1])).unwrap();
        let b = beta(&f).unwrap();
        assert_eq!(b.tree_levels, vec![LevelAssignment(vec![1]), LevelAssignment(vec![]), LevelAssignment(vec![2, 1])]);
        // tau commutes with beta
        assert_eq!(tau_forest(&b).trees, tau_forest(&f).trees);
        assert!(matches!(beta(&b), Err(Error::KindMismatch(_))));
        let k = kappa_forest(&f);
        assert_eq!(kappa_forest(&k), k);
        assert_eq!(k.trees[2], PlaneTree::corolla(3));
        assert_eq!(kappa(&PlaneTree::Leaf), PlaneTree::Leaf);
    }

    #[test]
    fn string_and_json_round_trip() {
        for (t, l) in enumerate_trees(TreeKind::WeaklyOrdered, 5).unwrap() {
            let lt = LeveledTree { tree: t, levels: l.unwrap() };
            assert_eq!(lt.to_string().parse::<LeveledTree>().unwrap(), lt);
            assert_eq!(LeveledTree::from_json(&lt.to_json()).unwrap(), lt);
            assert_eq!(lt.tree.to_string().parse::<PlaneTree>().unwrap(), lt.tree);
        }
    }
}
