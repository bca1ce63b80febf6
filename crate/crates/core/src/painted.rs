//! Painted trees: a forest grafted onto a painted base tree, with
//! half-painted nodes where the paint line meets a branch point.
//!
//! Internally a painted tree is one plane tree whose nodes carry a paint
//! status and a level. Painted nodes carry base levels (ranked among painted
//! nodes, root greatest); half-painted and unpainted nodes carry forest levels
//! whose scope depends on the forest kind. Levels are `0` where the family
//! keeps no vertical order.

use std::collections::BTreeSet;
use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::tree::{dense_ranks, ForestKind, LevelAssignment, LeveledTree, OrderedPartition, PlaneTree};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Paint {
    Painted,
    Half,
    Unpainted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BaseKind {
    WeaklyOrderedTree,
    PlaneTree,
    Corolla,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Family {
    pub forest: ForestKind,
    pub base: BaseKind,
}

impl Family {
    pub const fn new(forest: ForestKind, base: BaseKind) -> Self {
        Family { forest, base }
    }

    pub fn all() -> Vec<Family> {
        let mut out = Vec::with_capacity(12);
        for forest in [
            ForestKind::WeaklyOrderedForest,
            ForestKind::ForestOfWeaklyOrderedTrees,
            ForestKind::ForestOfPlaneTrees,
            ForestKind::ForestOfCorollas,
        ] {
            for base in [BaseKind::WeaklyOrderedTree, BaseKind::PlaneTree, BaseKind::Corolla] {
                out.push(Family { forest, base });
            }
        }
        out
    }

    /// The finest family; every other family is a projection of it.
    pub const fn full() -> Self {
        Family::new(ForestKind::WeaklyOrderedForest, BaseKind::WeaklyOrderedTree)
    }

    pub fn symbol(&self) -> String {
        let f = match self.forest {
            ForestKind::WeaklyOrderedForest => "S",
            ForestKind::ForestOfWeaklyOrderedTrees => "B",
            ForestKind::ForestOfPlaneTrees => "Y",
            ForestKind::ForestOfCorollas => "C",
        };
        let b = match self.base {
            BaseKind::WeaklyOrderedTree => "S",
            BaseKind::PlaneTree => "Y",
            BaseKind::Corolla => "C",
        };
        format!("{f}/{b}")
    }

    /// Parses `F/B` with `F` in `S B Y C` (`β` or `beta` also accepted) and
    /// `B` in `S Y C`. The words `weak`, `plane`/`binary` and `corolla` stand
    /// for `S`, `Y` and `C` on either side.
    pub fn parse(s: &str) -> Result<Family> {
        let (f, b) = s
            .split_once('/')
            .ok_or_else(|| Error::Parse(format!("family {s:?} is not of the form F/B")))?;
        let forest = match f.trim() {
            "S" | "s" | "weak" => ForestKind::WeaklyOrderedForest,
            "B" | "b" | "β" | "beta" => ForestKind::ForestOfWeaklyOrderedTrees,
            "Y" | "y" | "plane" | "binary" => ForestKind::ForestOfPlaneTrees,
            "C" | "c" | "corolla" => ForestKind::ForestOfCorollas,
            other => return Err(Error::Parse(format!("unknown forest kind {other:?}"))),
        };
        let base = match b.trim() {
            "S" | "s" | "weak" => BaseKind::WeaklyOrderedTree,
            "Y" | "y" | "plane" | "binary" => BaseKind::PlaneTree,
            "C" | "c" | "corolla" => BaseKind::Corolla,
            other => return Err(Error::Parse(format!("unknown base kind {other:?}"))),
        };
        Ok(Family { forest, base })
    }

    fn forest_name(&self) -> &'static str {
        match self.forest {
            ForestKind::WeaklyOrderedForest => "WeaklyOrderedForest",
            ForestKind::ForestOfWeaklyOrderedTrees => "ForestOfWeaklyOrderedTrees",
            ForestKind::ForestOfPlaneTrees => "ForestOfPlaneTrees",
            ForestKind::ForestOfCorollas => "ForestOfCorollas",
        }
    }

    fn base_name(&self) -> &'static str {
        match self.base {
            BaseKind::WeaklyOrderedTree => "WeaklyOrderedTree",
            BaseKind::PlaneTree => "PlaneTree",
            BaseKind::Corolla => "Corolla",
        }
    }

    fn from_names(forest: &str, base: &str) -> Result<Family> {
        let f = match forest {
            "WeaklyOrderedForest" => "S",
            "ForestOfWeaklyOrderedTrees" => "B",
            "ForestOfPlaneTrees" => "Y",
            "ForestOfCorollas" => "C",
            other => return Err(Error::Parse(format!("unknown forest kind {other:?}"))),
        };
        let b = match base {
            "WeaklyOrderedTree" => "S",
            "PlaneTree" => "Y",
            "Corolla" => "C",
            other => return Err(Error::Parse(format!("unknown base kind {other:?}"))),
        };
        Family::parse(&format!("{f}/{b}"))
    }

    fn forest_rank(&self) -> u8 {
        match self.forest {
            ForestKind::WeaklyOrderedForest => 0,
            ForestKind::ForestOfWeaklyOrderedTrees => 1,
            ForestKind::ForestOfPlaneTrees => 2,
            ForestKind::ForestOfCorollas => 3,
        }
    }

    fn base_rank(&self) -> u8 {
        match self.base {
            BaseKind::WeaklyOrderedTree => 0,
            BaseKind::PlaneTree => 1,
            BaseKind::Corolla => 2,
        }
    }

    /// Whether `self` maps onto `other` by forgetful maps.
    pub fn refines(&self, other: &Family) -> bool {
        self.forest_rank() <= other.forest_rank() && self.base_rank() <= other.base_rank()
    }

    fn forest_levels(&self) -> bool {
        self.forest_rank() <= 1
    }

    fn base_levels(&self) -> bool {
        self.base == BaseKind::WeaklyOrderedTree
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Node {
    Leaf,
    Inner {
        paint: Paint,
        level: usize,
        children: Vec<Node>,
    },
}

impl Node {
    pub fn inner(paint: Paint, level: usize, children: Vec<Node>) -> Node {
        Node::Inner { paint, level, children }
    }

    pub fn leaves(&self) -> usize {
        match self {
            Node::Leaf => 1,
            Node::Inner { children, .. } => children.iter().map(Node::leaves).sum(),
        }
    }

    pub fn paint(&self) -> Option<Paint> {
        match self {
            Node::Leaf => None,
            Node::Inner { paint, .. } => Some(*paint),
        }
    }

    pub fn shape(&self) -> PlaneTree {
        match self {
            Node::Leaf => PlaneTree::Leaf,
            Node::Inner { children, .. } => PlaneTree::Node(children.iter().map(Node::shape).collect()),
        }
    }

    /// An all-unpainted copy of a plane tree with zero levels.
    pub fn unpainted(t: &PlaneTree) -> Node {
        Node::from_shape(t, Paint::Unpainted)
    }

    pub fn from_shape(t: &PlaneTree, paint: Paint) -> Node {
        match t {
            PlaneTree::Leaf => Node::Leaf,
            PlaneTree::Node(cs) => Node::inner(paint, 0, cs.iter().map(|c| Node::from_shape(c, paint)).collect()),
        }
    }

    fn write(&self, out: &mut String) {
        match self {
            Node::Leaf => out.push('.'),
            Node::Inner { paint, level, children } => {
                let (open, close) = match paint {
                    Paint::Painted => ('(', ')'),
                    Paint::Half => ('<', '>'),
                    Paint::Unpainted => ('[', ']'),
                };
                out.push(open);
                for c in children {
                    c.write(out);
                }
                out.push(close);
                if *level > 0 {
                    out.push_str(&level.to_string());
                }
            }
        }
    }
}

/// Per-node data in preorder, convenient for level bookkeeping.
#[derive(Debug, Clone)]
pub(crate) struct Flat {
    pub paint: Vec<Paint>,
    pub level: Vec<usize>,
    pub parent: Vec<Option<usize>>,
    /// For each node, its children in order: `Some(node)` or `None` (a leaf).
    pub kids: Vec<Vec<Option<usize>>>,
}

impl Flat {
    pub fn of(root: &Node) -> Flat {
        fn walk(n: &Node, parent: Option<usize>, f: &mut Flat) -> Option<usize> {
            match n {
                Node::Leaf => None,
                Node::Inner { paint, level, children } => {
                    let me = f.paint.len();
                    f.paint.push(*paint);
                    f.level.push(*level);
                    f.parent.push(parent);
                    f.kids.push(Vec::new());
                    let ks: Vec<Option<usize>> = children.iter().map(|c| walk(c, Some(me), f)).collect();
                    f.kids[me] = ks;
                    Some(me)
                }
            }
        }
        let mut f = Flat { paint: Vec::new(), level: Vec::new(), parent: Vec::new(), kids: Vec::new() };
        walk(root, None, &mut f);
        f
    }

    pub fn len(&self) -> usize {
        self.paint.len()
    }

    pub fn rebuild(&self) -> Node {
        fn build(f: &Flat, v: Option<usize>) -> Node {
            match v {
                None => Node::Leaf,
                Some(v) => Node::inner(f.paint[v], f.level[v], f.kids[v].iter().map(|&k| build(f, k)).collect()),
            }
        }
        if self.len() == 0 {
            Node::Leaf
        } else {
            build(self, Some(0))
        }
    }

    /// Root of the unpainted tree containing a non-painted node.
    pub fn tree_root(&self, mut v: usize) -> usize {
        while let Some(p) = self.parent[v] {
            if self.paint[p] == Paint::Painted {
                break;
            }
            v = p;
        }
        v
    }

    /// Re-ranks levels densely within each scope the family keeps.
    pub fn normalize(&mut self, family: Family) {
        let n = self.len();
        let painted: Vec<usize> = (0..n).filter(|&v| self.paint[v] == Paint::Painted).collect();
        let other: Vec<usize> = (0..n).filter(|&v| self.paint[v] != Paint::Painted).collect();
        let rerank = |level: &mut Vec<usize>, set: &[usize]| {
            let vals: Vec<usize> = set.iter().map(|&v| level[v]).collect();
            for (&v, r) in set.iter().zip(dense_ranks(&vals)) {
                level[v] = r;
            }
        };
        if family.base_levels() {
            rerank(&mut self.level, &painted);
        } else {
            for &v in &painted {
                self.level[v] = 0;
            }
        }
        match family.forest {
            ForestKind::WeaklyOrderedForest => rerank(&mut self.level, &other),
            ForestKind::ForestOfWeaklyOrderedTrees => {
                let mut roots: Vec<usize> = other.iter().map(|&v| self.tree_root(v)).collect();
                roots.sort_unstable();
                roots.dedup();
                for r in roots {
                    let members: Vec<usize> = other.iter().copied().filter(|&v| self.tree_root(v) == r).collect();
                    rerank(&mut self.level, &members);
                }
            }
            _ => {
                for &v in &other {
                    self.level[v] = 0;
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PaintedTree {
    pub family: Family,
    pub root: Node,
}

/// Position of the paint line among the blocks of a weak order on gaps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Cut {
    /// Block `j` (1-based) is half-painted; higher blocks are painted.
    At(usize),
    /// Blocks `1..=j` are unpainted, the rest painted.
    Between(usize),
}

impl PaintedTree {
    /// The single-leaf painted tree, the unit of every family.
    pub fn eta(family: Family) -> Self {
        PaintedTree { family, root: Node::Leaf }
    }

    pub fn leaves(&self) -> usize {
        self.root.leaves()
    }

    pub fn degree(&self) -> usize {
        self.leaves() - 1
    }

    pub fn is_eta(&self) -> bool {
        matches!(self.root, Node::Leaf)
    }

    pub fn shape(&self) -> PlaneTree {
        self.root.shape()
    }

    pub fn canonical(&self) -> String {
        let mut s = String::new();
        self.root.write(&mut s);
        s
    }

    /// Parses the canonical string of a tree in `family`.
    pub fn parse(family: Family, s: &str) -> Result<Self> {
        let b = s.trim().as_bytes();
        let mut pos = 0;
        let root = parse_node(b, &mut pos)?;
        if pos != b.len() {
            return Err(Error::Parse(format!("trailing input in {s:?}")));
        }
        let p = PaintedTree { family, root };
        p.check_structure()?;
        if !p.validate_family()? {
            return Err(Error::Structural(format!("{s:?} is not a valid {family} tree")));
        }
        Ok(p)
    }

    pub(crate) fn flat(&self) -> Flat {
        Flat::of(&self.root)
    }

    pub(crate) fn from_flat(family: Family, mut f: Flat) -> Self {
        f.normalize(family);
        PaintedTree { family, root: f.rebuild() }
    }

    fn check_structure(&self) -> Result<()> {
        fn walk(n: &Node) -> Result<()> {
            if let Node::Inner { children, .. } = n {
                if children.len() < 2 {
                    return Err(Error::Structural(format!("node with {} children", children.len())));
                }
                children.iter().try_for_each(walk)?;
            }
            Ok(())
        }
        walk(&self.root)
    }

    /// Whether the tree satisfies the paint rules and the constraints of its
    /// declared family. Malformed nodes are a structural error.
    pub fn validate_family(&self) -> Result<bool> {
        self.check_structure()?;
        let f = self.flat();
        let fam = self.family;
        let n = f.len();
        for v in 0..n {
            let parent_paint = f.parent[v].map(|p| f.paint[p]);
            match f.paint[v] {
                Paint::Painted | Paint::Half => {
                    if matches!(parent_paint, Some(Paint::Half) | Some(Paint::Unpainted)) {
                        return Ok(false);
                    }
                }
                Paint::Unpainted => {}
            }
        }
        // levels: zero exactly where the family keeps none
        let mut copy = f.clone();
        copy.normalize(fam);
        if copy.level != f.level {
            return Ok(false);
        }
        for v in 0..n {
            let Some(p) = f.parent[v] else { continue };
            let same_scope = match (f.paint[v], f.paint[p]) {
                (Paint::Painted, Paint::Painted) => fam.base_levels(),
                (Paint::Painted, _) | (_, Paint::Painted) => false,
                _ => fam.forest_levels(),
            };
            if same_scope && f.level[v] >= f.level[p] {
                return Ok(false);
            }
        }
        if fam.forest == ForestKind::WeaklyOrderedForest {
            let top = (0..n).filter(|&v| f.paint[v] != Paint::Painted).map(|v| f.level[v]).max();
            for v in 0..n {
                match f.paint[v] {
                    Paint::Half if Some(f.level[v]) != top => return Ok(false),
                    Paint::Unpainted
                        if (0..n).any(|h| f.paint[h] == Paint::Half) && Some(f.level[v]) == top =>
                    {
                        return Ok(false)
                    }
                    _ => {}
                }
            }
        }
        if fam.forest == ForestKind::ForestOfWeaklyOrderedTrees {
            // the half-painted node is the root of its tree, above the rest
            for v in 0..n {
                if f.paint[v] == Paint::Unpainted {
                    let r = f.tree_root(v);
                    if f.paint[r] == Paint::Half && f.level[v] >= f.level[r] {
                        return Ok(false);
                    }
                }
            }
        }
        if fam.forest == ForestKind::ForestOfCorollas {
            for v in 0..n {
                if f.paint[v] == Paint::Unpainted && f.kids[v].iter().any(Option::is_some) {
                    return Ok(false);
                }
            }
        }
        if fam.base == BaseKind::Corolla && (0..n).filter(|&v| f.paint[v] == Paint::Painted).count() > 1 {
            return Ok(false);
        }
        Ok(true)
    }

    /// The full painted tree determined by a weak order on gaps and the
    /// position of the paint line.
    pub fn from_partition(p: &OrderedPartition, cut: Cut) -> Result<Self> {
        let k = p.0.len();
        match cut {
            Cut::At(j) if j == 0 || j > k => {
                return Err(Error::InvalidArgument(format!("cut at block {j} of {k}")))
            }
            Cut::Between(j) if j > k => return Err(Error::InvalidArgument(format!("cut after block {j} of {k}"))),
            _ => {}
        }
        let lt = LeveledTree::from_partition(p);
        let mut f = Flat::of(&Node::from_shape(&lt.tree, Paint::Unpainted));
        for v in 0..f.len() {
            let l = lt.levels.0[v];
            f.level[v] = l;
            f.paint[v] = match cut {
                Cut::At(j) if l == j => Paint::Half,
                Cut::At(j) | Cut::Between(j) if l > j => Paint::Painted,
                _ => Paint::Unpainted,
            };
        }
        Ok(PaintedTree::from_flat(Family::full(), f))
    }

    /// Inverse of [`PaintedTree::from_partition`] for trees of the full family.
    pub fn to_partition(&self) -> Result<(OrderedPartition, Cut)> {
        if self.family != Family::full() {
            return Err(Error::KindMismatch(format!("expected S/S, got {}", self.family)));
        }
        let f = self.flat();
        let n = f.len();
        let unpainted_top = (0..n).filter(|&v| f.paint[v] != Paint::Painted).map(|v| f.level[v]).max().unwrap_or(0);
        let has_half = (0..n).any(|v| f.paint[v] == Paint::Half);
        let whole: Vec<usize> = (0..n)
            .map(|v| if f.paint[v] == Paint::Painted { f.level[v] + unpainted_top } else { f.level[v] })
            .collect();
        let lt = LeveledTree::new(self.shape(), LevelAssignment(whole))?;
        let cut = if has_half { Cut::At(unpainted_top) } else { Cut::Between(unpainted_top) };
        Ok((lt.partition(), cut))
    }
}

impl fmt::Display for PaintedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.canonical())
    }
}

fn parse_node(b: &[u8], pos: &mut usize) -> Result<Node> {
    let c = *b.get(*pos).ok_or_else(|| Error::Parse("unexpected end of input".into()))?;
    *pos += 1;
    let (paint, close) = match c {
        b'.' => return Ok(Node::Leaf),
        b'(' => (Paint::Painted, b')'),
        b'<' => (Paint::Half, b'>'),
        b'[' => (Paint::Unpainted, b']'),
        other => return Err(Error::Parse(format!("unexpected {:?} at {}", other as char, *pos - 1))),
    };
    let mut children = Vec::new();
    loop {
        match b.get(*pos) {
            None => return Err(Error::Parse("unclosed node".into())),
            Some(&x) if x == close => {
                *pos += 1;
                break;
            }
            _ => children.push(parse_node(b, pos)?),
        }
    }
    let start = *pos;
    while b.get(*pos).is_some_and(u8::is_ascii_digit) {
        *pos += 1;
    }
    let level = if start == *pos {
        0
    } else {
        std::str::from_utf8(&b[start..*pos]).unwrap().parse().map_err(|e| Error::Parse(format!("{e}")))?
    };
    Ok(Node::inner(paint, level, children))
}

/// Forgetful maps usable in the numerator (forest) or denominator (base) of
/// a fractional map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Map {
    Identity,
    Beta,
    Tau,
    Kappa,
}

fn forest_kappa(n: &Node) -> Node {
    match n {
        Node::Leaf => Node::Leaf,
        Node::Inner { paint: Paint::Unpainted, .. } => {
            Node::inner(Paint::Unpainted, 0, vec![Node::Leaf; n.leaves()])
        }
        Node::Inner { paint, level, children } => Node::inner(*paint, *level, children.iter().map(forest_kappa).collect()),
    }
}

fn base_kappa(n: &Node) -> Node {
    fn hang(n: &Node, out: &mut Vec<Node>) {
        match n {
            Node::Inner { paint: Paint::Painted, children, .. } => children.iter().for_each(|c| hang(c, out)),
            other => out.push(other.clone()),
        }
    }
    match n {
        Node::Inner { paint: Paint::Painted, .. } => {
            let mut out = Vec::new();
            hang(n, &mut out);
            Node::inner(Paint::Painted, 0, out)
        }
        other => other.clone(),
    }
}

/// Applies `f` to the forest and `g` to the painted base.
pub fn fractional_map(f: Map, g: Map, p: &PaintedTree) -> Result<PaintedTree> {
    let mut fam = p.family;
    let mut root = p.root.clone();
    fam.forest = match (f, fam.forest) {
        (Map::Identity, k) => k,
        (Map::Beta, ForestKind::WeaklyOrderedForest) => ForestKind::ForestOfWeaklyOrderedTrees,
        (Map::Tau, ForestKind::WeaklyOrderedForest | ForestKind::ForestOfWeaklyOrderedTrees) => {
            ForestKind::ForestOfPlaneTrees
        }
        (Map::Kappa, _) => {
            root = forest_kappa(&root);
            ForestKind::ForestOfCorollas
        }
        (m, k) => return Err(Error::KindMismatch(format!("{m:?} does not apply to a {k:?}"))),
    };
    fam.base = match (g, fam.base) {
        (Map::Identity, k) => k,
        (Map::Tau, BaseKind::WeaklyOrderedTree) => BaseKind::PlaneTree,
        (Map::Kappa, _) => {
            root = base_kappa(&root);
            BaseKind::Corolla
        }
        (m, k) => return Err(Error::KindMismatch(format!("{m:?} does not apply to a {k:?} base"))),
    };
    Ok(PaintedTree::from_flat(fam, Flat::of(&root)))
}

/// Maps a tree onto a coarser family by the forgetful maps.
pub fn project(p: &PaintedTree, target: Family) -> Result<PaintedTree> {
    if !p.family.refines(&target) {
        return Err(Error::KindMismatch(format!("{} does not map onto {}", p.family, target)));
    }
    let f = match (p.family.forest == target.forest, target.forest) {
        (true, _) => Map::Identity,
        (false, ForestKind::ForestOfWeaklyOrderedTrees) => Map::Beta,
        (false, ForestKind::ForestOfPlaneTrees) => Map::Tau,
        (false, _) => Map::Kappa,
    };
    let g = match (p.family.base == target.base, target.base) {
        (true, _) => Map::Identity,
        (false, BaseKind::PlaneTree) => Map::Tau,
        (false, _) => Map::Kappa,
    };
    fractional_map(f, g, p)
}

fn split_node(n: &Node, leaf: usize) -> (Node, Node) {
    match n {
        Node::Leaf => (Node::Leaf, Node::Leaf),
        Node::Inner { paint, level, children } => {
            let mut offset = 0;
            let mut j = 0;
            while offset + children[j].leaves() <= leaf {
                offset += children[j].leaves();
                j += 1;
            }
            let (l, r) = split_node(&children[j], leaf - offset);
            let mut left: Vec<Node> = children[..j].to_vec();
            left.push(l);
            let mut right = vec![r];
            right.extend_from_slice(&children[j + 1..]);
            let wrap = |mut cs: Vec<Node>| {
                if cs.len() == 1 {
                    cs.pop().unwrap()
                } else {
                    Node::inner(*paint, *level, cs)
                }
            };
            (wrap(left), wrap(right))
        }
    }
}

impl PaintedTree {
    /// Splits along the path from leaf `leaf` (1-based) to the root.
    pub fn split(&self, leaf: usize) -> Result<(PaintedTree, PaintedTree)> {
        let n = self.leaves();
        if leaf == 0 || leaf > n {
            return Err(Error::InvalidArgument(format!("leaf {leaf} out of range 1..={n}")));
        }
        let (l, r) = split_node(&self.root, leaf - 1);
        Ok((
            PaintedTree::from_flat(self.family, Flat::of(&l)),
            PaintedTree::from_flat(self.family, Flat::of(&r)),
        ))
    }

    /// Splits at a multiset of leaves, giving `k + 1` pieces left to right.
    pub fn split_multi(&self, leaves: &[usize]) -> Result<Vec<PaintedTree>> {
        let mut sorted = leaves.to_vec();
        sorted.sort_unstable();
        let mut out = Vec::with_capacity(sorted.len() + 1);
        let mut rest = self.clone();
        let mut consumed = 0;
        for &i in &sorted {
            if i == 0 || i > self.leaves() {
                return Err(Error::InvalidArgument(format!("leaf {i} out of range 1..={}", self.leaves())));
            }
            let (l, r) = rest.split(i - consumed)?;
            consumed += l.leaves() - 1;
            out.push(l);
            rest = r;
        }
        out.push(rest);
        Ok(out)
    }

    /// Whether this is a vertex (minimal face) of its family.
    pub fn is_vertex(&self) -> bool {
        let f = self.flat();
        let n = f.len();
        if f.paint.contains(&Paint::Half) {
            return false;
        }
        let painted: Vec<usize> = (0..n).filter(|&v| f.paint[v] == Paint::Painted).collect();
        let other: Vec<usize> = (0..n).filter(|&v| f.paint[v] != Paint::Painted).collect();
        let distinct = |set: &[usize]| {
            let mut ls: Vec<usize> = set.iter().map(|&v| f.level[v]).collect();
            ls.sort_unstable();
            ls.windows(2).all(|w| w[0] != w[1])
        };
        let binary = |set: &[usize]| set.iter().all(|&v| f.kids[v].len() == 2);
        let base_ok = match self.family.base {
            BaseKind::WeaklyOrderedTree => distinct(&painted) && binary(&painted),
            BaseKind::PlaneTree => binary(&painted),
            BaseKind::Corolla => true,
        };
        let forest_ok = match self.family.forest {
            ForestKind::WeaklyOrderedForest => distinct(&other) && binary(&other),
            ForestKind::ForestOfWeaklyOrderedTrees => {
                let mut roots: Vec<usize> = other.iter().map(|&v| f.tree_root(v)).collect();
                roots.dedup();
                roots.iter().all(|&r| {
                    let members: Vec<usize> = other.iter().copied().filter(|&v| f.tree_root(v) == r).collect();
                    distinct(&members)
                }) && binary(&other)
            }
            ForestKind::ForestOfPlaneTrees => binary(&other),
            ForestKind::ForestOfCorollas => true,
        };
        base_ok && forest_ok
    }

    pub fn to_json(&self) -> Value {
        let f = self.flat();
        let mut attachments = Vec::new();
        let mut base_levels = Vec::new();
        let keeps_trees = self.family.forest_levels();
        fn base(
            n: &Node,
            keeps_trees: bool,
            attachments: &mut Vec<Value>,
            base_levels: &mut Vec<usize>,
        ) -> Value {
            match n {
                Node::Inner { paint: Paint::Painted, level, children } => {
                    base_levels.push(*level);
                    let cs: Vec<Value> =
                        children.iter().map(|c| base(c, keeps_trees, attachments, base_levels)).collect();
                    json!({ "children": cs })
                }
                Node::Inner { paint: Paint::Half, children, .. } => {
                    let fused: Vec<Value> = if keeps_trees {
                        vec![n.shape().to_json()]
                    } else {
                        children.iter().map(|c| c.shape().to_json()).collect()
                    };
                    attachments.push(json!({ "fused": fused }));
                    json!({ "children": [] })
                }
                other => {
                    attachments.push(json!({ "trunked": other.shape().to_json() }));
                    json!({ "children": [] })
                }
            }
        }
        let mut base_json = base(&self.root, keeps_trees, &mut attachments, &mut base_levels);
        if self.family.base_levels() {
            base_json["levels"] = json!(LevelAssignment(base_levels).node_blocks());
        }
        let forest_levels: Value = if keeps_trees {
            json!((0..f.len()).filter(|&v| f.paint[v] != Paint::Painted).map(|v| f.level[v]).collect::<Vec<_>>())
        } else {
            Value::Null
        };
        json!({
            "family": { "forest": self.family.forest_name(), "base": self.family.base_name() },
            "base": base_json,
            "attachments": attachments,
            "forestLevels": forest_levels,
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let fam = v.get("family").ok_or_else(|| Error::Parse("missing \"family\"".into()))?;
        let family = Family::from_names(
            fam.get("forest").and_then(Value::as_str).unwrap_or_default(),
            fam.get("base").and_then(Value::as_str).unwrap_or_default(),
        )?;
        let base_v = v.get("base").ok_or_else(|| Error::Parse("missing \"base\"".into()))?;
        let base = PlaneTree::from_json(base_v)?;
        let attachments = v
            .get("attachments")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("missing \"attachments\"".into()))?;
        if attachments.len() != base.leaves() {
            return Err(Error::Arity { expected: base.leaves(), got: attachments.len() });
        }
        let mut hanging = Vec::with_capacity(attachments.len());
        for a in attachments {
            if let Some(t) = a.get("trunked") {
                hanging.push(Node::unpainted(&PlaneTree::from_json(t)?));
            } else if let Some(ts) = a.get("fused").and_then(Value::as_array) {
                let trees = ts.iter().map(PlaneTree::from_json).collect::<Result<Vec<_>>>()?;
                let children: Vec<Node> = match trees.as_slice() {
                    [PlaneTree::Node(cs)] => cs.iter().map(Node::unpainted).collect(),
                    _ if trees.len() >= 2 => trees.iter().map(Node::unpainted).collect(),
                    _ => return Err(Error::Structural("fused attachment needs a node".into())),
                };
                hanging.push(Node::inner(Paint::Half, 0, children));
            } else {
                return Err(Error::Parse("attachment is neither trunked nor fused".into()));
            }
        }
        let mut it = hanging.into_iter();
        fn build(t: &PlaneTree, it: &mut impl Iterator<Item = Node>) -> Node {
            match t {
                PlaneTree::Leaf => it.next().expect("counted"),
                PlaneTree::Node(cs) => Node::inner(Paint::Painted, 0, cs.iter().map(|c| build(c, it)).collect()),
            }
        }
        let root = build(&base, &mut it);
        let mut f = Flat::of(&root);
        if family.base_levels() {
            let blocks: Vec<Vec<usize>> = serde_json::from_value(base_v.get("levels").cloned().unwrap_or(Value::Null))
                .map_err(|e| Error::Parse(format!("base levels: {e}")))?;
            let l = LevelAssignment::from_node_blocks(&blocks, base.node_count())?;
            let painted: Vec<usize> = (0..f.len()).filter(|&v| f.paint[v] == Paint::Painted).collect();
            for (&v, &x) in painted.iter().zip(&l.0) {
                f.level[v] = x;
            }
        }
        if family.forest_levels() {
            let ls: Vec<usize> = serde_json::from_value(v.get("forestLevels").cloned().unwrap_or(Value::Null))
                .map_err(|e| Error::Parse(format!("forest levels: {e}")))?;
            let other: Vec<usize> = (0..f.len()).filter(|&x| f.paint[x] != Paint::Painted).collect();
            if ls.len() != other.len() {
                return Err(Error::InvalidLevel("forest level count mismatch".into()));
            }
            for (&x, &l) in other.iter().zip(&ls) {
                f.level[x] = l;
            }
        }
        let p = PaintedTree { family, root: f.rebuild() };
        if !p.validate_family()? {
            return Err(Error::Structural(format!("not a valid {family} tree")));
        }
        Ok(p)
    }
}

/// Grafts unpainted trees onto the leaves of a painted tree whose forest is
/// plane or corollas.
pub fn graft_onto_painted(pieces: &[PlaneTree], target: &PaintedTree) -> Result<PaintedTree> {
    if pieces.len() != target.leaves() {
        return Err(Error::Arity { expected: target.leaves(), got: pieces.len() });
    }
    if target.family.forest_levels() {
        return Err(Error::Unsupported(format!(
            "grafting unordered trees above a {} forest",
            target.family
        )));
    }
    fn walk(n: &Node, it: &mut std::slice::Iter<'_, PlaneTree>) -> Node {
        match n {
            Node::Leaf => Node::unpainted(it.next().expect("counted")),
            Node::Inner { paint, level, children } => {
                Node::inner(*paint, *level, children.iter().map(|c| walk(c, it)).collect())
            }
        }
    }
    let mut root = walk(&target.root, &mut pieces.iter());
    if target.family.forest == ForestKind::ForestOfCorollas {
        root = forest_kappa(&root);
    }
    Ok(PaintedTree::from_flat(target.family, Flat::of(&root)))
}

/// Grafts painted trees onto the leaves of `target`, which becomes painted.
/// `levels` is required when the family keeps base levels.
pub fn graft_onto_unpainted(
    pieces: &[PaintedTree],
    target: &PlaneTree,
    levels: Option<&LevelAssignment>,
    family: Family,
) -> Result<PaintedTree> {
    if pieces.len() != target.leaves() {
        return Err(Error::Arity { expected: target.leaves(), got: pieces.len() });
    }
    if let Some(p) = pieces.iter().find(|p| p.family != family) {
        return Err(Error::KindMismatch(format!("piece of family {} in a {} graft", p.family, family)));
    }
    let target_levels: Vec<usize> = match (family.base_levels(), levels) {
        (true, Some(l)) => {
            l.validate(target)?;
            l.0.clone()
        }
        (true, None) => return Err(Error::InvalidLevel("weakly ordered base needs levels".into())),
        (false, _) => vec![0; target.node_count()],
    };
    // Offsets: later pieces sit lower; the target sits above all pieces.
    let flats: Vec<Flat> = pieces.iter().map(PaintedTree::flat).collect();
    let painted_height = |f: &Flat| (0..f.len()).filter(|&v| f.paint[v] == Paint::Painted).map(|v| f.level[v]).max().unwrap_or(0);
    let unpainted_height = |f: &Flat| {
        (0..f.len()).filter(|&v| f.paint[v] == Paint::Unpainted).map(|v| f.level[v]).max().unwrap_or(0)
    };
    let total_painted: usize = flats.iter().map(painted_height).sum();
    let total_unpainted: usize = flats.iter().map(unpainted_height).sum();
    let mut shifted = Vec::with_capacity(pieces.len());
    let mut p_off = total_painted;
    let mut u_off = total_unpainted;
    for f in &flats {
        p_off -= painted_height(f);
        u_off -= unpainted_height(f);
        let mut g = f.clone();
        for v in 0..g.len() {
            match g.paint[v] {
                Paint::Painted => g.level[v] += p_off,
                Paint::Unpainted if family.forest == ForestKind::WeaklyOrderedForest => g.level[v] += u_off,
                Paint::Half if family.forest == ForestKind::WeaklyOrderedForest => g.level[v] = total_unpainted + 1,
                _ => {}
            }
        }
        shifted.push(g.rebuild());
    }
    let mut it = shifted.into_iter();
    let mut next_level = target_levels.iter();
    fn build(
        t: &PlaneTree,
        it: &mut impl Iterator<Item = Node>,
        lv: &mut std::slice::Iter<'_, usize>,
        off: usize,
    ) -> Node {
        match t {
            PlaneTree::Leaf => it.next().expect("counted"),
            PlaneTree::Node(cs) => {
                let l = *lv.next().expect("counted");
                let level = if l == 0 { 0 } else { l + off };
                Node::inner(Paint::Painted, level, cs.iter().map(|c| build(c, it, lv, off)).collect())
            }
        }
    }
    let mut root = build(target, &mut it, &mut next_level, total_painted);
    if family.base == BaseKind::Corolla {
        root = base_kappa(&root);
    }
    let out = PaintedTree::from_flat(family, Flat::of(&root));
    debug_assert!(out.validate_family().unwrap_or(false), "graft left the family: {out}");
    Ok(out)
}

/// `n + 1` single-leaf trees fused over a painted trunk.
pub fn half_painted_corolla(family: Family, n: usize) -> PaintedTree {
    if n == 0 {
        return PaintedTree::eta(family);
    }
    let level = usize::from(family.forest_levels());
    PaintedTree { family, root: Node::inner(Paint::Half, level, vec![Node::Leaf; n + 1]) }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FaceLevel {
    VertexOnly,
    AllFaces,
}

/// Every tree of the full family in degree `n`, in canonical order of the
/// underlying weak orders.
pub fn full_family(n: usize) -> Vec<PaintedTree> {
    let mut out = Vec::new();
    for p in OrderedPartition::all(n) {
        let k = p.0.len();
        for j in 1..=k {
            out.push(PaintedTree::from_partition(&p, Cut::At(j)).expect("in range"));
        }
        for j in 0..=k {
            out.push(PaintedTree::from_partition(&p, Cut::Between(j)).expect("in range"));
        }
    }
    out
}

/// All trees of `family` in degree `n`, sorted by canonical string.
pub fn enumerate_painted(family: Family, n: usize, level: FaceLevel) -> Vec<PaintedTree> {
    let set: BTreeSet<PaintedTree> = full_family(n)
        .iter()
        .map(|s| project(s, family).expect("full family refines all"))
        .filter(|p| level == FaceLevel::AllFaces || p.is_vertex())
        .collect();
    let mut out: Vec<PaintedTree> = set.into_iter().collect();
    out.sort_by_cached_key(PaintedTree::canonical);
    out
}

/// The `(k, n)`-shuffle recording where the split points fall among the
/// `n` gaps of a degree-`n` tree.
pub fn splitting_to_shuffle(p: &PaintedTree, leaves: &[usize]) -> Result<Vec<usize>> {
    let n = p.degree();
    let mut sorted = leaves.to_vec();
    sorted.sort_unstable();
    if let Some(&bad) = sorted.iter().find(|&&i| i == 0 || i > n + 1) {
        return Err(Error::InvalidArgument(format!("leaf {bad} out of range 1..={}", n + 1)));
    }
    let k = sorted.len();
    let front: Vec<usize> = sorted.iter().enumerate().map(|(m, &i)| i + m).collect();
    let mut out = front.clone();
    out.extend((1..=k + n).filter(|x| !front.contains(x)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(s: &str) -> Family {
        Family::parse(s).unwrap()
    }

    fn fubini(n: usize) -> usize {
        let mut a = vec![1usize; n + 1];
        for m in 1..=n {
            let mut binom = 1;
            let mut s = 0;
            for k in 1..=m {
                binom = binom * (m - k + 1) / k;
                s += binom * a[m - k];
            }
            a[m] = s;
        }
        a[n]
    }

    #[test]
    fn full_family_counts_are_fubini() {
        for n in 0..=5 {
            let all = full_family(n);
            assert_eq!(all.len(), fubini(n + 1), "n = {n}");
            let set: BTreeSet<_> = all.iter().collect();
            assert_eq!(set.len(), all.len());
        }
        assert_eq!(full_family(3).len(), 75);
    }

    #[test]
    fn partition_cut_round_trip() {
        for n in 0..=4 {
            for p in OrderedPartition::all(n) {
                let k = p.0.len();
                let cuts = (1..=k).map(Cut::At).chain((0..=k).map(Cut::Between));
                for c in cuts {
                    let t = PaintedTree::from_partition(&p, c).unwrap();
                    assert!(t.validate_family().unwrap(), "{t}");
                    assert_eq!(t.to_partition().unwrap(), (p.clone(), c));
                }
            }
        }
    }

    #[test]
    fn low_degrees_agree_across_families() {
        for f in Family::all() {
            assert_eq!(enumerate_painted(f, 0, FaceLevel::AllFaces).len(), 1);
            assert_eq!(enumerate_painted(f, 1, FaceLevel::AllFaces).len(), 3, "{f}");
            assert_eq!(enumerate_painted(f, 1, FaceLevel::VertexOnly).len(), 2, "{f}");
        }
    }

    #[test]
    fn vertex_counts() {
        let count = |s: &str, n| enumerate_painted(fam(s), n, FaceLevel::VertexOnly).len();
        assert_eq!((0..=4).map(|n| count("S/S", n)).collect::<Vec<_>>(), vec![1, 2, 6, 24, 120]);
        assert_eq!((0..=4).map(|n| count("C/S", n)).collect::<Vec<_>>(), vec![1, 2, 5, 16, 65]);
        assert_eq!((0..=4).map(|n| count("S/C", n)).collect::<Vec<_>>(), vec![1, 2, 5, 16, 65]);
        assert_eq!((0..=4).map(|n| count("C/C", n)).collect::<Vec<_>>(), vec![1, 2, 4, 8, 16]);
        assert_eq!((0..=4).map(|n| count("Y/C", n)).collect::<Vec<_>>(), vec![1, 2, 5, 14, 42]);
        assert_eq!((0..=3).map(|n| count("C/Y", n)).collect::<Vec<_>>(), vec![1, 2, 5, 15]);
        assert_eq!((0..=3).map(|n| count("Y/Y", n)).collect::<Vec<_>>(), vec![1, 2, 6, 21]);
        assert_eq!((0..=4).map(|n| count("Y/S", n)).collect::<Vec<_>>(), vec![1, 2, 6, 22, 94]);
    }

    #[test]
    fn face_counts_of_known_polytopes() {
        let count = |s: &str, n| enumerate_painted(fam(s), n, FaceLevel::AllFaces).len();
        for n in 0..=4 {
            assert_eq!(count("C/C", n), 3usize.pow(n as u32));
        }
        // faces of the associahedron: plane trees with n + 2 leaves
        assert_eq!((0..=3).map(|n| count("Y/C", n)).collect::<Vec<_>>(), vec![1, 3, 11, 45]);
    }

    #[test]
    fn every_projection_lands_in_its_family() {
        for n in 0..=3 {
            for f in Family::all() {
                for p in enumerate_painted(f, n, FaceLevel::AllFaces) {
                    assert!(p.validate_family().unwrap(), "{f} {p}");
                    assert_eq!(PaintedTree::parse(f, &p.canonical()).unwrap(), p);
                    assert_eq!(PaintedTree::from_json(&p.to_json()).unwrap(), p);
                }
            }
        }
    }

    #[test]
    fn validation_rejects_family_violations() {
        let cc = fam("C/C");
        let p = PaintedTree { family: cc, root: Node::unpainted(&"((..).)".parse().unwrap()) };
        assert!(!p.validate_family().unwrap());
        let ok = PaintedTree { family: cc, root: Node::unpainted(&"(...)".parse().unwrap()) };
        assert!(ok.validate_family().unwrap());
        let bad = PaintedTree { family: cc, root: Node::inner(Paint::Half, 0, vec![Node::Leaf]) };
        assert!(matches!(bad.validate_family(), Err(Error::Structural(_))));
        // painted node above an unpainted one
        assert!(PaintedTree::parse(fam("Y/Y"), "[(..).]").is_err());
    }

    #[test]
    fn half_painted_corolla_is_in_every_family() {
        for f in Family::all() {
            for n in 0..=4 {
                let h = half_painted_corolla(f, n);
                assert_eq!(h.degree(), n);
                assert!(h.validate_family().unwrap());
            }
            assert!(half_painted_corolla(f, 0).is_eta());
        }
    }

    #[test]
    fn kappa_separates_trees_at_a_half_node() {
        // a weakly ordered tree on a half-painted node
        let p = PaintedTree::parse(fam("S/S"), "<[..]1.[..]1>2").unwrap();
        let q = fractional_map(Map::Kappa, Map::Identity, &p).unwrap();
        assert_eq!(q.canonical(), "<[..].[..]>");
        let b = fractional_map(Map::Beta, Map::Identity, &p).unwrap();
        assert_eq!(b.canonical(), "<[..]1.[..]1>2");
        assert!(matches!(fractional_map(Map::Beta, Map::Identity, &q), Err(Error::KindMismatch(_))));
        assert_eq!(fractional_map(Map::Identity, Map::Identity, &p).unwrap(), p);
    }

    #[test]
    fn tau_tau_drops_all_levels() {
        for p in full_family(3) {
            let q = fractional_map(Map::Tau, Map::Tau, &p).unwrap();
            assert_eq!(q.family, fam("Y/Y"));
            assert_eq!(q.shape(), p.shape());
            assert!(!q.canonical().chars().any(|c| c.is_ascii_digit()));
        }
    }

    /// Splitting a full tree restricts its weak order on gaps.
    fn split_oracle(p: &PaintedTree, leaf: usize) -> (PaintedTree, PaintedTree) {
        let (part, cut) = p.to_partition().unwrap();
        let piece = |range: std::ops::Range<usize>| {
            let mut blocks = Vec::new();
            let mut new_cut = Cut::Between(0);
            for (bi, b) in part.0.iter().enumerate() {
                let kept: Vec<usize> = b.iter().filter(|g| range.contains(g)).map(|g| g + 1 - range.start).collect();
                let j = bi + 1;
                match cut {
                    Cut::At(c) if c == j && !kept.is_empty() => new_cut = Cut::At(blocks.len() + 1),
                    Cut::At(c) | Cut::Between(c) if j <= c && !kept.is_empty() => {
                        new_cut = Cut::Between(blocks.len() + 1)
                    }
                    _ => {}
                }
                if !kept.is_empty() {
                    blocks.push(kept);
                }
            }
            PaintedTree::from_partition(&OrderedPartition::new(blocks).unwrap(), new_cut).unwrap()
        };
        (piece(1..leaf), piece(leaf..p.leaves()))
    }

    #[test]
    fn split_matches_gap_restriction() {
        for n in 0..=4 {
            for p in full_family(n) {
                for leaf in 1..=n + 1 {
                    assert_eq!(p.split(leaf).unwrap(), split_oracle(&p, leaf), "{p} at {leaf}");
                }
            }
        }
    }

    #[test]
    fn split_preserves_family_and_degree() {
        for f in Family::all() {
            for n in 0..=3 {
                for p in enumerate_painted(f, n, FaceLevel::AllFaces) {
                    let (l, r) = p.split(1).unwrap();
                    assert!(l.is_eta());
                    assert_eq!(r, p);
                    for leaf in 1..=n + 1 {
                        let (l, r) = p.split(leaf).unwrap();
                        assert_eq!(l.degree() + r.degree(), n);
                        assert!(l.validate_family().unwrap() && r.validate_family().unwrap());
                    }
                    let pieces = p.split_multi(&[1, n + 1, 1]).unwrap();
                    assert_eq!(pieces.len(), 4);
                    assert_eq!(pieces.iter().map(PaintedTree::degree).sum::<usize>(), n);
                }
            }
        }
        let e = PaintedTree::eta(Family::full());
        assert_eq!(e.split(1).unwrap(), (e.clone(), e.clone()));
        assert!(matches!(e.split(2), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn maps_commute_with_split() {
        for p in full_family(3) {
            for target in Family::all() {
                let q = project(&p, target).unwrap();
                for leaf in 1..=4 {
                    let (a, b) = p.split(leaf).unwrap();
                    let (c, d) = q.split(leaf).unwrap();
                    assert_eq!(project(&a, target).unwrap(), c);
                    assert_eq!(project(&b, target).unwrap(), d);
                }
            }
        }
    }

    #[test]
    fn shuffles_from_splittings() {
        let p = PaintedTree { family: fam("Y/Y"), root: Node::from_shape(&PlaneTree::corolla(8), Paint::Painted) };
        assert_eq!(splitting_to_shuffle(&p, &[3, 3, 6, 7]).unwrap(), vec![3, 4, 8, 10, 1, 2, 5, 6, 7, 9, 11]);
        assert_eq!(splitting_to_shuffle(&p, &[]).unwrap(), (1..=7).collect::<Vec<_>>());
        for n in 0..=4 {
            let t = half_painted_corolla(fam("C/C"), n);
            for k in 0..=3 {
                let mut seen = BTreeSet::new();
                let mut ms = vec![1usize; k];
                loop {
                    let s = splitting_to_shuffle(&t, &ms).unwrap();
                    assert!(s[..k].windows(2).all(|w| w[0] < w[1]));
                    assert!(s[k..].windows(2).all(|w| w[0] < w[1]));
                    assert!(seen.insert(s));
                    // next weakly increasing multiset over 1..=n+1
                    let Some(i) = (0..k).rev().find(|&i| ms[i] < n + 1) else { break };
                    let v = ms[i] + 1;
                    ms[i..].iter_mut().for_each(|x| *x = v);
                }
                let binom = (1..=k).fold(1usize, |acc, i| acc * (n + i) / i);
                assert_eq!(seen.len(), binom, "n = {n}, k = {k}");
            }
        }
    }

    #[test]
    fn graft_round_trips() {
        for n in 0..=3 {
            for f in [fam("Y/Y"), fam("C/Y"), fam("Y/S"), fam("C/C")] {
                for p in enumerate_painted(f, n, FaceLevel::AllFaces) {
                    if p.canonical().contains('<') {
                        continue;
                    }
                    // cut at the paint line
                    fn strip(n: &Node, out: &mut Vec<PlaneTree>) -> Node {
                        match n {
                            Node::Inner { paint: Paint::Painted, level, children } => {
                                Node::inner(Paint::Painted, *level, children.iter().map(|c| strip(c, out)).collect())
                            }
                            other => {
                                out.push(other.shape());
                                Node::Leaf
                            }
                        }
                    }
                    let mut pieces = Vec::new();
                    let base = PaintedTree { family: f, root: strip(&p.root, &mut pieces) };
                    assert_eq!(graft_onto_painted(&pieces, &base).unwrap(), p);
                    if f.base != BaseKind::WeaklyOrderedTree {
                        let painted: Vec<PaintedTree> =
                            pieces.iter().map(|t| PaintedTree { family: f, root: Node::unpainted(t) }).collect();
                        assert_eq!(graft_onto_unpainted(&painted, &base.shape(), None, f).unwrap(), p);
                    }
                }
            }
        }
        let t = PaintedTree::parse(fam("Y/Y"), "((..).)").unwrap();
        let leaves = vec![PlaneTree::Leaf; 3];
        assert_eq!(graft_onto_painted(&leaves, &t).unwrap(), t);
        assert!(matches!(graft_onto_painted(&leaves[..2], &t), Err(Error::Arity { .. })));
    }

    #[test]
    fn graft_degrees_add() {
        let f = fam("Y/S");
        let targets: Vec<(PlaneTree, LevelAssignment)> = crate::tree::enumerate_trees(crate::tree::TreeKind::WeaklyOrdered, 3)
            .unwrap()
            .into_iter()
            .map(|(t, l)| (t, l.unwrap()))
            .collect();
        let pieces: Vec<PaintedTree> = (0..=1).flat_map(|n| enumerate_painted(f, n, FaceLevel::AllFaces)).collect();
        for (t, l) in &targets {
            for a in &pieces {
                for b in &pieces {
                    for c in &pieces {
                        let g = graft_onto_unpainted(&[a.clone(), b.clone(), c.clone()], t, Some(l), f).unwrap();
                        assert_eq!(g.degree(), a.degree() + b.degree() + c.degree() + t.degree());
                        assert!(g.validate_family().unwrap());
                    }
                }
            }
        }
    }
}
