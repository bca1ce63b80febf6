//! Order isomorphisms between painted-tree posets and tubing posets.
//!
//! Gaps between leaves are numbered `1..=n` and match graph nodes with the
//! same labels; node `0` of a star or fan is its centre. The painted side of
//! every map is built as a full painted tree from three kinds of gaps
//! (unpainted, on the paint line, painted) and then projected.

use std::collections::HashMap;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::growth::{build_poset, Poset};
use crate::painted::{project, BaseKind, Cut, Family, Paint, PaintedTree};
use crate::par::{self, Exec};
use crate::tree::{dense_ranks, ForestKind, LeveledTree, OrderedPartition, PlaneTree};
use crate::tubing::{
    from_design, quotient_poset, representative, to_design, tubing_poset, DesignTubing, Graph, Mark, Mask,
    MarkedTubing, Quotient, Tubing,
};

/// Paint, level and node (preorder index) of the node at each gap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Gap {
    pub paint: Paint,
    pub level: usize,
    pub node: usize,
}

pub fn gap_profile(p: &PaintedTree) -> Vec<Gap> {
    let f = p.flat();
    p.shape()
        .gap_nodes()
        .into_iter()
        .map(|v| Gap { paint: f.paint[v], level: f.level[v], node: v })
        .collect()
}

/// Groups `gaps` into blocks by ascending `key`.
fn blocks_by(gaps: &[usize], key: impl Fn(usize) -> usize) -> Vec<Vec<usize>> {
    let keys: Vec<usize> = gaps.iter().map(|&g| key(g)).collect();
    let ranks = dense_ranks(&keys);
    let mut out = vec![Vec::new(); ranks.iter().copied().max().unwrap_or(0)];
    for (&g, &r) in gaps.iter().zip(&ranks) {
        out[r - 1].push(g);
    }
    out
}

/// The full painted tree whose unpainted gaps are weakly ordered by
/// `unpainted` (farthest from the root first), whose paint line passes
/// through the gaps `line`, and whose painted gaps are ordered by `painted`.
fn lift(unpainted: Vec<Vec<usize>>, line: Vec<usize>, painted: Vec<Vec<usize>>) -> Result<PaintedTree> {
    let k = unpainted.len();
    let cut = if line.is_empty() { Cut::Between(k) } else { Cut::At(k + 1) };
    let mut blocks = unpainted;
    if !line.is_empty() {
        blocks.push(line);
    }
    blocks.extend(painted);
    PaintedTree::from_partition(&OrderedPartition::new(blocks)?, cut)
}

struct Sorted {
    unpainted: Vec<usize>,
    line: Vec<usize>,
    painted: Vec<usize>,
}

fn sort_gaps(prof: &[Gap]) -> Sorted {
    let pick = |k: Paint| (1..=prof.len()).filter(|&g| prof[g - 1].paint == k).collect();
    Sorted { unpainted: pick(Paint::Unpainted), line: pick(Paint::Half), painted: pick(Paint::Painted) }
}

fn expect_family(p: &PaintedTree, f: Family) -> Result<()> {
    if p.family != f {
        return Err(Error::KindMismatch(format!("expected {}, got {}", f, p.family)));
    }
    Ok(())
}

fn labels_to_mask(g: &Graph, gaps: &[usize]) -> Result<Mask> {
    g.mask_of(&gaps.iter().map(|&x| x as i64).collect::<Vec<_>>())
}

fn mask_to_gaps(g: &Graph, m: Mask) -> Vec<usize> {
    g.labels_of(m).into_iter().filter(|&l| l > 0).map(|l| l as usize).collect()
}

/// Successive differences of a chain of nested tubes strictly containing `base`.
fn chain_blocks(g: &Graph, base: Mask, chain: &[Mask]) -> Vec<Vec<usize>> {
    let mut prev = base;
    chain
        .iter()
        .map(|&c| {
            let b = mask_to_gaps(g, c & !prev);
            prev = c;
            b
        })
        .collect()
}

/// Cumulative unions of `blocks` on top of `base`.
fn chain_from_blocks(g: &Graph, base: Mask, blocks: &[Vec<usize>]) -> Result<Vec<Mask>> {
    let mut acc = base;
    blocks
        .iter()
        .map(|b| {
            acc |= labels_to_mask(g, b)?;
            Ok(acc)
        })
        .collect()
}

fn require_graph(g: &Graph, want: &Graph, name: &str) -> Result<()> {
    if g != want {
        return Err(Error::GraphMismatch(format!("expected the {name}")));
    }
    Ok(())
}

/// The weakly ordered tree of a tubing of the complete graph on `1..=n`:
/// the innermost tube is the block farthest from the root.
pub fn wot_from_complete_tubing(g: &Graph, t: &Tubing) -> Result<LeveledTree> {
    require_graph(g, &Graph::complete(g.len()), "complete graph")?;
    Tubing::new(g, t.tubes.clone())?;
    let blocks = chain_blocks(g, 0, &t.tubes);
    Ok(LeveledTree::from_partition(&OrderedPartition::new(blocks)?))
}

pub fn complete_tubing_from_wot(t: &LeveledTree) -> Result<(Graph, Tubing)> {
    let p = t.partition();
    let g = Graph::complete(p.size());
    let tubes = chain_from_blocks(&g, 0, &p.0)?;
    let t = Tubing::new(&g, tubes)?;
    Ok((g, t))
}

/// Depth of each gap in `within`: the number of tubes of `tubes` holding it.
fn depths(g: &Graph, within: Mask, tubes: &[Mask]) -> HashMap<usize, usize> {
    mask_to_gaps(g, within)
        .into_iter()
        .map(|x| {
            let bit = 1 << g.index(x as i64).unwrap();
            (x, tubes.iter().filter(|&&u| u & bit != 0).count())
        })
        .collect()
}

/// The plane tree of a tubing of the path on `1..=n`.
pub fn plane_tree_from_path_tubing(g: &Graph, t: &Tubing) -> Result<PlaneTree> {
    require_graph(g, &Graph::path(g.len()), "path graph")?;
    Tubing::new(g, t.tubes.clone())?;
    let d = depths(g, g.all(), &t.tubes);
    let gaps: Vec<usize> = (1..=g.len()).collect();
    let blocks = blocks_by(&gaps, |x| usize::MAX - d[&x]);
    Ok(LeveledTree::from_partition(&OrderedPartition::new(blocks)?).tree)
}

/// Gaps under each inner node of a plane tree, by preorder index.
fn subtree_gaps(t: &PlaneTree) -> Vec<Vec<usize>> {
    let parents = t.parents();
    let mut out = vec![Vec::new(); parents.len()];
    for (i, &v) in t.gap_nodes().iter().enumerate() {
        let mut w = Some(v);
        while let Some(x) = w {
            out[x].push(i + 1);
            w = parents[x];
        }
    }
    out
}

pub fn path_tubing_from_plane_tree(t: &PlaneTree) -> Result<(Graph, Tubing)> {
    let g = Graph::path(t.leaves() - 1);
    let tubes = subtree_gaps(t).iter().map(|gs| labels_to_mask(&g, gs)).collect::<Result<Vec<_>>>()?;
    let t = Tubing::new(&g, tubes)?;
    Ok((g, t))
}

/// The smallest tube containing node `0`, and the tubes inside and around it.
fn split_at_centre(g: &Graph, t: &Tubing) -> Result<(Mask, Vec<Mask>, Vec<Mask>)> {
    let zero = 1 << g.index(0)?;
    let t0 = t
        .tubes
        .iter()
        .copied()
        .filter(|&u| u & zero != 0)
        .min_by_key(|u| u.count_ones())
        .expect("universal tube holds the centre");
    let inside = t.tubes.iter().copied().filter(|&u| u != t0 && u & t0 == u).collect();
    let around = t.tubes.iter().copied().filter(|&u| u != t0 && u & t0 == t0).collect();
    Ok((t0, inside, around))
}

pub fn corollas_over_wot() -> Family {
    Family::new(ForestKind::ForestOfCorollas, BaseKind::WeaklyOrderedTree)
}

pub fn plane_over_wot() -> Family {
    Family::new(ForestKind::ForestOfPlaneTrees, BaseKind::WeaklyOrderedTree)
}

pub fn wof_over_corolla() -> Family {
    Family::new(ForestKind::WeaklyOrderedForest, BaseKind::Corolla)
}

/// Deletes the left-most leaf and puts the paint line at the level of the
/// node it hung from.
pub fn phi_perma(t: &LeveledTree) -> Result<PaintedTree> {
    let p = t.partition();
    if p.size() == 0 {
        return Err(Error::InvalidArgument("the tree needs at least two leaves".into()));
    }
    let b = p.block_of()[0];
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut cut = Cut::Between(0);
    for (i, blk) in p.0.iter().enumerate() {
        let rest: Vec<usize> = blk.iter().filter(|&&x| x != 1).map(|x| x - 1).collect();
        if i == b {
            cut = if rest.is_empty() { Cut::Between(blocks.len()) } else { Cut::At(blocks.len() + 1) };
        }
        if !rest.is_empty() {
            blocks.push(rest);
        }
    }
    PaintedTree::from_partition(&OrderedPartition::new(blocks)?, cut)
}

pub fn phi_perma_inverse(p: &PaintedTree) -> Result<LeveledTree> {
    expect_family(p, Family::full())?;
    let (part, cut) = p.to_partition()?;
    let mut blocks: Vec<Vec<usize>> = part.0.iter().map(|b| b.iter().map(|x| x + 1).collect()).collect();
    match cut {
        Cut::At(j) => blocks[j - 1].push(1),
        Cut::Between(j) => blocks.insert(j, vec![1]),
    }
    Ok(LeveledTree::from_partition(&OrderedPartition::new(blocks)?))
}

/// Tubings of the star on `0..=n` to corollas grafted onto weakly ordered
/// trees.
pub fn phi_stella1(g: &Graph, t: &Tubing) -> Result<PaintedTree> {
    require_graph(g, &Graph::star(g.len() - 1), "star graph")?;
    Tubing::new(g, t.tubes.clone())?;
    let (t0, inside, around) = split_at_centre(g, t)?;
    let unpainted: Vec<usize> = inside.iter().flat_map(|&u| mask_to_gaps(g, u)).collect();
    let line: Vec<usize> = mask_to_gaps(g, t0).into_iter().filter(|x| !unpainted.contains(x)).collect();
    let painted = chain_blocks(g, t0, &around);
    let u = if unpainted.is_empty() { vec![] } else { vec![unpainted] };
    project(&lift(u, line, painted)?, corollas_over_wot())
}

fn painted_blocks(prof: &[Gap], painted: &[usize]) -> Vec<Vec<usize>> {
    blocks_by(painted, |x| prof[x - 1].level)
}

pub fn phi_stella1_inverse(p: &PaintedTree) -> Result<(Graph, Tubing)> {
    expect_family(p, corollas_over_wot())?;
    let g = Graph::star(p.degree());
    let prof = gap_profile(p);
    let s = sort_gaps(&prof);
    let mut t0 = 1 << g.index(0)?;
    t0 |= labels_to_mask(&g, &s.unpainted)? | labels_to_mask(&g, &s.line)?;
    let mut tubes: Vec<Mask> = s.unpainted.iter().map(|&x| labels_to_mask(&g, &[x])).collect::<Result<_>>()?;
    tubes.push(t0);
    tubes.extend(chain_from_blocks(&g, t0, &painted_blocks(&prof, &s.painted))?);
    let t = Tubing::new(&g, tubes)?;
    Ok((g, t))
}

/// Tubings of the fan on `0..=n` to plane forests grafted onto weakly
/// ordered trees.
pub fn phi_ptera(g: &Graph, t: &Tubing) -> Result<PaintedTree> {
    require_graph(g, &Graph::fan(1, g.len() - 1), "fan graph")?;
    Tubing::new(g, t.tubes.clone())?;
    let (t0, inside, around) = split_at_centre(g, t)?;
    let d = depths(g, t0, &inside);
    let within: Vec<usize> = mask_to_gaps(g, t0);
    let unpainted: Vec<usize> = within.iter().copied().filter(|x| d[x] > 0).collect();
    let line: Vec<usize> = within.iter().copied().filter(|x| d[x] == 0).collect();
    let u = blocks_by(&unpainted, |x| usize::MAX - d[&x]);
    project(&lift(u, line, chain_blocks(g, t0, &around))?, plane_over_wot())
}

pub fn phi_ptera_inverse(p: &PaintedTree) -> Result<(Graph, Tubing)> {
    expect_family(p, plane_over_wot())?;
    let g = Graph::fan(1, p.degree());
    let prof = gap_profile(p);
    let s = sort_gaps(&prof);
    let under = subtree_gaps(&p.shape());
    let mut nodes: Vec<usize> = s.unpainted.iter().map(|&x| prof[x - 1].node).collect();
    nodes.sort_unstable();
    nodes.dedup();
    let mut tubes: Vec<Mask> = nodes.iter().map(|&v| labels_to_mask(&g, &under[v])).collect::<Result<_>>()?;
    let t0 = 1 << g.index(0)? | labels_to_mask(&g, &s.unpainted)? | labels_to_mask(&g, &s.line)?;
    tubes.push(t0);
    tubes.extend(chain_from_blocks(&g, t0, &painted_blocks(&prof, &s.painted))?);
    let t = Tubing::new(&g, tubes)?;
    Ok((g, t))
}

fn require_complete_marked(g: &Graph, u: &MarkedTubing, q: Quotient) -> Result<()> {
    require_graph(g, &Graph::complete(g.len()), "complete graph")?;
    MarkedTubing::new(g, u.tubes.clone())?;
    if representative(u, q) != *u {
        return Err(Error::InvalidRepresentative(format!("not a {q:?} representative")));
    }
    Ok(())
}

/// Composihedron representatives on the complete graph to corollas grafted
/// onto weakly ordered trees.
pub fn phi_prime_lift(g: &Graph, u: &MarkedTubing) -> Result<PaintedTree> {
    require_complete_marked(g, u, Quotient::Composihedron)?;
    let of = |k: Mark| u.tubes.iter().filter(move |t| t.1 == k).map(|t| t.0);
    let thin = of(Mark::Thin).fold(0, |a, b| a | b);
    let broken = of(Mark::Broken).fold(0, |a, b| a | b);
    let thick: Vec<Mask> = of(Mark::Thick).collect();
    let unpainted = mask_to_gaps(g, thin);
    let line = mask_to_gaps(g, broken & !thin);
    let u_blocks = if unpainted.is_empty() { vec![] } else { vec![unpainted] };
    project(&lift(u_blocks, line, chain_blocks(g, thin | broken, &thick))?, corollas_over_wot())
}

pub fn phi_prime_lift_inverse(p: &PaintedTree) -> Result<(Graph, MarkedTubing)> {
    expect_family(p, corollas_over_wot())?;
    let g = Graph::complete(p.degree());
    let prof = gap_profile(p);
    let s = sort_gaps(&prof);
    let thin = labels_to_mask(&g, &s.unpainted)?;
    let inner = thin | labels_to_mask(&g, &s.line)?;
    let mut tubes = Vec::new();
    if thin != 0 {
        tubes.push((thin, Mark::Thin));
    }
    if inner != thin {
        tubes.push((inner, Mark::Broken));
    }
    for c in chain_from_blocks(&g, inner, &painted_blocks(&prof, &s.painted))? {
        tubes.push((c, Mark::Thick));
    }
    let t = MarkedTubing::new(&g, tubes)?;
    Ok((g, t))
}

/// Cubeahedron representatives on the complete graph to weakly ordered
/// forests grafted onto corollas.
pub fn phi_stella2(g: &Graph, u: &MarkedTubing) -> Result<PaintedTree> {
    require_complete_marked(g, u, Quotient::Cubeahedron)?;
    let thin: Vec<Mask> = u.tubes.iter().filter(|t| t.1 == Mark::Thin).map(|t| t.0).collect();
    let largest = thin.last().copied().unwrap_or(0);
    let broken = u.tubes.iter().filter(|t| t.1 == Mark::Broken).fold(0, |a, t| a | t.0);
    let inner = largest | broken;
    let line = mask_to_gaps(g, broken & !largest);
    let painted = mask_to_gaps(g, g.all() & !inner);
    let p_blocks = if painted.is_empty() { vec![] } else { vec![painted] };
    project(&lift(chain_blocks(g, 0, &thin), line, p_blocks)?, wof_over_corolla())
}

pub fn phi_stella2_inverse(p: &PaintedTree) -> Result<(Graph, MarkedTubing)> {
    expect_family(p, wof_over_corolla())?;
    let g = Graph::complete(p.degree());
    let prof = gap_profile(p);
    let s = sort_gaps(&prof);
    let chain = chain_from_blocks(&g, 0, &blocks_by(&s.unpainted, |x| prof[x - 1].level))?;
    let largest = chain.last().copied().unwrap_or(0);
    let mut tubes: Vec<(Mask, Mark)> = chain.iter().map(|&c| (c, Mark::Thin)).collect();
    let inner = largest | labels_to_mask(&g, &s.line)?;
    if inner != largest {
        tubes.push((inner, Mark::Broken));
    }
    if !s.painted.is_empty() {
        tubes.push((g.all(), Mark::Thick));
    }
    let t = MarkedTubing::new(&g, tubes)?;
    Ok((g, t))
}

/// Design tubings of the complete graph on `1..=n` to tubings of the star
/// on `0..=n`: a square stays a singleton, a round tube goes to its
/// complement together with the centre.
pub fn stella3_map(n: usize, d: &DesignTubing) -> Result<(Graph, Tubing)> {
    let k = Graph::complete(n);
    from_design(&k, d)?;
    let g = Graph::star(n);
    let mut tubes = Vec::new();
    for x in mask_to_gaps(&k, d.squares) {
        tubes.push(labels_to_mask(&g, &[x])?);
    }
    for &r in &d.rounds {
        let rest = mask_to_gaps(&k, k.all() & !r);
        tubes.push(1 << g.index(0)? | labels_to_mask(&g, &rest)?);
    }
    let t = Tubing::new(&g, tubes)?;
    Ok((g, t))
}

pub fn stella3_inverse(g: &Graph, t: &Tubing) -> Result<DesignTubing> {
    let n = g.len() - 1;
    require_graph(g, &Graph::star(n), "star graph")?;
    Tubing::new(g, t.tubes.clone())?;
    let k = Graph::complete(n);
    let zero = 1 << g.index(0)?;
    let mut squares = 0;
    let mut rounds = Vec::new();
    for &u in t.tubes.iter().filter(|&&u| u != g.all()) {
        let gaps = mask_to_gaps(g, u);
        if u & zero == 0 {
            squares |= labels_to_mask(&k, &gaps)?;
        } else {
            rounds.push(k.all() & !labels_to_mask(&k, &gaps)?);
        }
    }
    rounds.sort_by_key(|&m| (m.count_ones(), m));
    Ok(DesignTubing { squares, rounds })
}

/// A candidate isomorphism: `forward[i]` is the target index of source `i`.
#[derive(Debug, Clone)]
pub struct PosetIso<A, B> {
    pub source: Poset<A>,
    pub target: Poset<B>,
    pub forward: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoReport {
    pub size: usize,
    pub bijective: bool,
    /// Source pairs whose order is not matched in the target.
    pub counterexamples: Vec<(usize, usize)>,
    pub source_f_vector: Vec<usize>,
    pub target_f_vector: Vec<usize>,
}

impl IsoReport {
    pub fn ok(&self) -> bool {
        self.bijective && self.counterexamples.is_empty() && self.source_f_vector == self.target_f_vector
    }

    pub fn to_json(&self) -> Value {
        json!({
            "ok": self.ok(),
            "size": self.size,
            "bijective": self.bijective,
            "counterexamples": self.counterexamples.iter().take(20).map(|&(a, b)| [a, b]).collect::<Vec<_>>(),
            "source_f_vector": self.source_f_vector,
            "target_f_vector": self.target_f_vector,
        })
    }
}

/// Checks bijectivity and that the order is preserved and reflected on all
/// pairs.
pub fn verify_order_iso<A: Sync, B: Sync>(iso: &PosetIso<A, B>, exec: Exec) -> IsoReport {
    let (p, q, f) = (&iso.source, &iso.target, &iso.forward);
    let mut seen = vec![false; q.len()];
    let mut bijective = p.len() == q.len() && f.len() == p.len();
    for &j in f {
        if j >= q.len() || seen[j] {
            bijective = false;
            break;
        }
        seen[j] = true;
    }
    let counterexamples = if bijective {
        let rows: Vec<usize> = (0..p.len()).collect();
        par::flat_map(&rows, exec, |&i| {
            (0..p.len()).filter(|&j| p.leq(i, j) != q.leq(f[i], f[j])).map(|j| (i, j)).collect()
        })
    } else {
        Vec::new()
    };
    IsoReport {
        size: p.len(),
        bijective,
        counterexamples,
        source_f_vector: p.f_vector().unwrap_or_default(),
        target_f_vector: q.f_vector().unwrap_or_default(),
    }
}

/// The six isomorphisms, by the shape of their painted side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Theorem {
    /// Weakly ordered trees to weakly ordered forests over weakly ordered trees.
    Perma,
    /// Star tubings to corollas over weakly ordered trees.
    Stella1,
    /// Fan tubings to plane forests over weakly ordered trees.
    Ptera,
    /// Complete-graph composihedron to corollas over weakly ordered trees.
    Lift,
    /// Complete-graph cubeahedron to weakly ordered forests over corollas.
    Stella2,
    /// Complete-graph cubeahedron to star tubings.
    Stella3,
}

impl Theorem {
    pub fn all() -> [Theorem; 6] {
        [Theorem::Perma, Theorem::Stella1, Theorem::Ptera, Theorem::Lift, Theorem::Stella2, Theorem::Stella3]
    }

    pub fn name(&self) -> &'static str {
        match self {
            Theorem::Perma => "perma",
            Theorem::Stella1 => "stella1",
            Theorem::Ptera => "ptera",
            Theorem::Lift => "lift",
            Theorem::Stella2 => "stella2",
            Theorem::Stella3 => "stella3",
        }
    }

    pub fn parse(s: &str) -> Result<Theorem> {
        Theorem::all()
            .into_iter()
            .find(|t| t.name() == s.to_ascii_lowercase())
            .ok_or_else(|| Error::InvalidArgument(format!("unknown bijection {s:?}")))
    }
}

fn index_of<T: std::hash::Hash + Eq>(items: &[T]) -> HashMap<&T, usize> {
    items.iter().enumerate().map(|(i, t)| (t, i)).collect()
}

fn painted_target<A: Sync>(
    source: Poset<A>,
    family: Family,
    n: usize,
    exec: Exec,
    f: impl Fn(&A) -> Result<PaintedTree> + Sync + Send,
) -> Result<PosetIso<A, PaintedTree>> {
    let target = build_poset(family, n, exec);
    let idx = index_of(&target.elements);
    let images = par::map(&source.elements, exec, |a| f(a));
    let forward = images
        .into_iter()
        .map(|r| {
            let t = r?;
            idx.get(&t).copied().ok_or_else(|| Error::Structural(format!("{t} is not in the target poset")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PosetIso { source, target, forward })
}

fn tubing_label(g: &Graph, t: &Tubing) -> String {
    let tubes: Vec<String> = t
        .tubes
        .iter()
        .map(|&m| format!("{{{}}}", g.labels_of(m).iter().map(|l| l.to_string()).collect::<Vec<_>>().join(",")))
        .collect();
    tubes.join(" ")
}

fn finish<A: Sync, B: Sync>(
    iso: PosetIso<A, B>,
    exec: Exec,
    src: impl Fn(&A) -> String,
    dst: impl Fn(&B) -> String,
) -> (IsoReport, Vec<(String, String)>) {
    let pairs = iso
        .source
        .elements
        .iter()
        .zip(&iso.forward)
        .map(|(a, &j)| (src(a), dst(&iso.target.elements[j])))
        .collect();
    (verify_order_iso(&iso, exec), pairs)
}

/// Builds the isomorphism of `th` whose painted side has degree `n` (star,
/// fan and complete graphs have `n` non-central nodes), verifies it, and
/// lists every source element with its image.
pub fn apply_theorem(th: Theorem, n: usize, exec: Exec) -> Result<(IsoReport, Vec<(String, String)>)> {
    let show = |p: &PaintedTree| p.canonical();
    Ok(match th {
        Theorem::Perma => {
            let g = Graph::complete(n + 1);
            let iso = painted_target(tubing_poset(&g), Family::full(), n, exec, |t| {
                phi_perma(&wot_from_complete_tubing(&g, t)?)
            })?;
            finish(iso, exec, |t| tubing_label(&g, t), show)
        }
        Theorem::Stella1 => {
            let g = Graph::star(n);
            let iso = painted_target(tubing_poset(&g), corollas_over_wot(), n, exec, |t| phi_stella1(&g, t))?;
            finish(iso, exec, |t| tubing_label(&g, t), show)
        }
        Theorem::Ptera => {
            let g = Graph::fan(1, n);
            let iso = painted_target(tubing_poset(&g), plane_over_wot(), n, exec, |t| phi_ptera(&g, t))?;
            finish(iso, exec, |t| tubing_label(&g, t), show)
        }
        Theorem::Lift => {
            let g = Graph::complete(n);
            let src = quotient_poset(&g, Quotient::Composihedron);
            let iso = painted_target(src, corollas_over_wot(), n, exec, |u| phi_prime_lift(&g, u))?;
            finish(iso, exec, |u| u.display(&g), show)
        }
        Theorem::Stella2 => {
            let g = Graph::complete(n);
            let src = quotient_poset(&g, Quotient::Cubeahedron);
            let iso = painted_target(src, wof_over_corolla(), n, exec, |u| phi_stella2(&g, u))?;
            finish(iso, exec, |u| u.display(&g), show)
        }
        Theorem::Stella3 => {
            let k = Graph::complete(n);
            let star = Graph::star(n);
            let source = quotient_poset(&k, Quotient::Cubeahedron);
            let target = tubing_poset(&star);
            let idx = index_of(&target.elements);
            let forward = source
                .elements
                .iter()
                .map(|u| {
                    let (_, t) = stella3_map(n, &to_design(&k, u)?)?;
                    idx.get(&t).copied().ok_or_else(|| Error::Structural("image is not a star tubing".into()))
                })
                .collect::<Result<Vec<_>>>()?;
            finish(PosetIso { source, target, forward }, exec, |u| u.display(&k), |t| tubing_label(&star, t))
        }
    })
}

pub fn verify_theorem(th: Theorem, n: usize, exec: Exec) -> Result<IsoReport> {
    Ok(apply_theorem(th, n, exec)?.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::painted::half_painted_corolla;
    use crate::tree::{enumerate_trees, TreeKind};
    use crate::tubing::{enumerate_marked, enumerate_tubings};

    #[test]
    fn theorems_hold_in_small_degrees() {
        for th in Theorem::all() {
            for n in 1..=3 {
                let r = verify_theorem(th, n, Exec::Parallel).unwrap();
                assert!(r.ok(), "{} n={n}: {r:?}", th.name());
            }
        }
        let r = verify_theorem(Theorem::Perma, 3, Exec::Sequential).unwrap();
        assert_eq!(r.target_f_vector, vec![24, 36, 14, 1]);
        let r = verify_theorem(Theorem::Stella1, 3, Exec::Sequential).unwrap();
        assert_eq!(r.source_f_vector[0], 16);
    }

    #[test]
    fn classical_pieces_round_trip() {
        for leaves in 2..=6 {
            for (t, _) in enumerate_trees(TreeKind::Plane, leaves).unwrap() {
                let (g, tb) = path_tubing_from_plane_tree(&t).unwrap();
                assert_eq!(plane_tree_from_path_tubing(&g, &tb).unwrap(), t);
            }
            for (t, l) in enumerate_trees(TreeKind::WeaklyOrdered, leaves).unwrap() {
                let lt = LeveledTree::new(t, l.unwrap()).unwrap();
                let (g, tb) = complete_tubing_from_wot(&lt).unwrap();
                assert_eq!(wot_from_complete_tubing(&g, &tb).unwrap(), lt);
            }
        }
        // maximal tubings go to ordered (binary, linearly leveled) trees
        let g = Graph::complete(3);
        for t in enumerate_tubings(&g, true) {
            let lt = wot_from_complete_tubing(&g, &t).unwrap();
            assert!(lt.tree.is_binary() && lt.levels.is_linear());
        }
        let only = Tubing::new(&g, vec![]).unwrap();
        assert!(wot_from_complete_tubing(&g, &only).unwrap().tree.is_corolla());
    }

    #[test]
    fn perma_round_trip_and_smallest_case() {
        for leaves in 2..=5 {
            for lt in OrderedPartition::all(leaves - 1).iter().map(LeveledTree::from_partition) {
                let p = phi_perma(&lt).unwrap();
                assert_eq!(p.degree(), leaves - 2);
                assert_eq!(phi_perma_inverse(&p).unwrap(), lt);
            }
        }
        let two = LeveledTree::from_partition(&OrderedPartition::new(vec![vec![1]]).unwrap());
        assert!(phi_perma(&two).unwrap().is_eta());
    }

    #[test]
    fn graph_side_round_trips() {
        for n in 1..=4 {
            let star = Graph::star(n);
            let fan = Graph::fan(1, n);
            for t in enumerate_tubings(&star, false) {
                let (g, back) = phi_stella1_inverse(&phi_stella1(&star, &t).unwrap()).unwrap();
                assert_eq!((g, back), (star.clone(), t));
            }
            for t in enumerate_tubings(&fan, false) {
                let (g, back) = phi_ptera_inverse(&phi_ptera(&fan, &t).unwrap()).unwrap();
                assert_eq!((g, back), (fan.clone(), t));
            }
            let k = Graph::complete(n);
            for u in enumerate_marked(&k) {
                if representative(&u, Quotient::Composihedron) == u {
                    let (_, back) = phi_prime_lift_inverse(&phi_prime_lift(&k, &u).unwrap()).unwrap();
                    assert_eq!(back, u);
                }
                if representative(&u, Quotient::Cubeahedron) == u {
                    let (_, back) = phi_stella2_inverse(&phi_stella2(&k, &u).unwrap()).unwrap();
                    assert_eq!(back, u);
                    let d = to_design(&k, &u).unwrap();
                    let (g, t) = stella3_map(n, &d).unwrap();
                    assert_eq!(stella3_inverse(&g, &t).unwrap(), d);
                }
            }
        }
    }

    #[test]
    fn top_elements_go_to_the_half_painted_corolla() {
        for n in 1..=4 {
            let star = Graph::star(n);
            let top = Tubing::new(&star, vec![]).unwrap();
            assert_eq!(phi_stella1(&star, &top).unwrap(), half_painted_corolla(corollas_over_wot(), n));
            let fan = Graph::fan(1, n);
            let top = Tubing::new(&fan, vec![]).unwrap();
            assert_eq!(phi_ptera(&fan, &top).unwrap(), half_painted_corolla(plane_over_wot(), n));
            let k = Graph::complete(n);
            let broken = MarkedTubing::new(&k, vec![(k.all(), Mark::Broken)]).unwrap();
            assert_eq!(phi_prime_lift(&k, &broken).unwrap(), half_painted_corolla(corollas_over_wot(), n));
            let thick = MarkedTubing::new(&k, vec![(k.all(), Mark::Thick)]).unwrap();
            let p = phi_stella2(&k, &thick).unwrap();
            assert!(p.is_vertex() && gap_profile(&p).iter().all(|g| g.paint == Paint::Painted));
        }
    }

    #[test]
    fn centre_singleton_grows_an_unpainted_edge() {
        let star = Graph::star(3);
        let top = Tubing::new(&star, vec![]).unwrap();
        let one = Tubing::new(&star, vec![star.mask_of(&[2]).unwrap()]).unwrap();
        let a = phi_stella1(&star, &top).unwrap();
        let b = phi_stella1(&star, &one).unwrap();
        let prof = gap_profile(&b);
        assert_eq!(prof[1].paint, Paint::Unpainted);
        assert!(crate::growth::leq(&b, &a).unwrap());
    }

    #[test]
    fn star_routes_agree_through_the_cubeahedron() {
        // weakly ordered forests over corollas to corollas over weakly
        // ordered trees, through the cubeahedron and the star
        for n in 1..=3 {
            let k = Graph::complete(n);
            let src = build_poset(wof_over_corolla(), n, Exec::Sequential);
            let dst = build_poset(corollas_over_wot(), n, Exec::Sequential);
            let idx = index_of(&dst.elements);
            let forward: Vec<usize> = src
                .elements
                .iter()
                .map(|p| {
                    let (_, u) = phi_stella2_inverse(p).unwrap();
                    let (g, t) = stella3_map(n, &to_design(&k, &u).unwrap()).unwrap();
                    idx[&phi_stella1(&g, &t).unwrap()]
                })
                .collect();
            let r = verify_order_iso(&PosetIso { source: src, target: dst, forward }, Exec::Sequential);
            assert!(r.ok(), "n={n}: {r:?}");
        }
    }

    #[test]
    fn broken_maps_are_reported() {
        let g = Graph::star(2);
        let p = tubing_poset(&g);
        let mut forward: Vec<usize> = (0..p.len()).collect();
        assert!(verify_order_iso(&PosetIso { source: p.clone(), target: p.clone(), forward: forward.clone() }, Exec::Sequential).ok());
        forward.swap(0, p.len() - 1);
        let r = verify_order_iso(&PosetIso { source: p.clone(), target: p.clone(), forward }, Exec::Sequential);
        assert!(r.bijective && !r.counterexamples.is_empty());
        assert!(phi_stella1(&Graph::path(3), &Tubing::new(&Graph::path(3), vec![]).unwrap()).is_err());
        let k = Graph::complete(2);
        let two_thin = MarkedTubing::new(&k, vec![(0b01, Mark::Thin), (0b11, Mark::Thin)]).unwrap();
        assert!(matches!(phi_prime_lift(&k, &two_thin), Err(Error::InvalidRepresentative(_))));
    }
}
