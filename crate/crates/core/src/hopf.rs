//! Coproduct, module actions, connections, one-sided products, counit and
//! antipode on painted trees.

use std::collections::HashMap;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::painted::{graft_onto_painted, graft_onto_unpainted, BaseKind, Family, Node, PaintedTree};
use crate::sum::FormalSum;
use crate::tree::{ForestKind, PlaneTree};

pub type Sum = FormalSum<PaintedTree>;
pub type Tensor = FormalSum<(PaintedTree, PaintedTree)>;

/// Weakly increasing sequences of length `k` over `1..=max`.
pub fn multisets(k: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    fn rec(k: usize, lo: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in lo..=max {
            cur.push(i);
            rec(k, i, max, cur, out);
            cur.pop();
        }
    }
    rec(k, 1, max, &mut Vec::new(), &mut out);
    out
}

/// Splits a plane tree at a multiset of leaves.
pub fn split_plane(t: &PlaneTree, leaves: &[usize]) -> Result<Vec<PlaneTree>> {
    let p = PaintedTree { family: Family::new(ForestKind::ForestOfPlaneTrees, BaseKind::PlaneTree), root: Node::unpainted(t) };
    Ok(p.split_multi(leaves)?.iter().map(PaintedTree::shape).collect())
}

/// One pair per leaf, before collecting equal terms.
pub fn coproduct_raw(p: &PaintedTree) -> Result<Vec<(PaintedTree, PaintedTree)>> {
    if !p.validate_family()? {
        return Err(Error::Structural(format!("{p} is not a valid {} tree", p.family)));
    }
    (1..=p.leaves()).map(|i| p.split(i)).collect()
}

pub fn coproduct(p: &PaintedTree) -> Result<Tensor> {
    Ok(Tensor::collect(coproduct_raw(p)?))
}

pub fn coproduct_sum(x: &Sum) -> Result<Tensor> {
    let mut out = Tensor::zero();
    for (k, c) in x.iter() {
        out.add_assign(&coproduct(k)?.scaled(c));
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Target {
    Plane,
    Corolla,
}

/// The unpainted tree a painted tree maps to: its shape, or the corolla with
/// as many leaves.
pub fn connection(e: &PaintedTree, target: Target) -> PlaneTree {
    match target {
        Target::Plane => e.shape(),
        Target::Corolla => PlaneTree::corolla(e.leaves()),
    }
}

fn forest_target(f: Family) -> Option<Target> {
    match f.forest {
        ForestKind::ForestOfPlaneTrees => Some(Target::Plane),
        ForestKind::ForestOfCorollas => Some(Target::Corolla),
        _ => None,
    }
}

fn base_target(f: Family) -> Option<Target> {
    match (f.forest, f.base) {
        (ForestKind::WeaklyOrderedForest, _) => None,
        (_, BaseKind::PlaneTree) => Some(Target::Plane),
        (_, BaseKind::Corolla) => Some(Target::Corolla),
        _ => None,
    }
}

/// The kind of unpainted tree acting on `f` from `side`, if any.
pub fn action_target(f: Family, side: Side) -> Option<Target> {
    match side {
        Side::Left => forest_target(f),
        Side::Right => base_target(f),
    }
}

fn check_d(d: &PlaneTree, t: Target) -> Result<()> {
    if !d.is_valid() {
        return Err(Error::Structural(format!("{d} has a node with fewer than two children")));
    }
    if t == Target::Corolla && !d.is_corolla() {
        return Err(Error::KindMismatch(format!("{d} is not a corolla")));
    }
    Ok(())
}

/// `d ⋆ e`: split `d` and graft the pieces above the leaves of `e`.
pub fn action_left_raw(d: &PlaneTree, e: &PaintedTree) -> Result<Vec<PaintedTree>> {
    let t = forest_target(e.family)
        .ok_or_else(|| Error::KindMismatch(format!("no left action on {} trees", e.family)))?;
    check_d(d, t)?;
    multisets(e.degree(), d.leaves())
        .iter()
        .map(|m| graft_onto_painted(&split_plane(d, m)?, e))
        .collect()
}

pub fn action_left(d: &PlaneTree, e: &PaintedTree) -> Result<Sum> {
    Ok(Sum::collect(action_left_raw(d, e)?))
}

/// `e ⋆ d`: split `e` and graft the pieces onto `d`, which becomes painted.
pub fn action_right_raw(e: &PaintedTree, d: &PlaneTree) -> Result<Vec<PaintedTree>> {
    let t = base_target(e.family)
        .ok_or_else(|| Error::KindMismatch(format!("no right action on {} trees", e.family)))?;
    check_d(d, t)?;
    multisets(d.degree(), e.leaves())
        .iter()
        .map(|m| graft_onto_unpainted(&e.split_multi(m)?, d, None, e.family))
        .collect()
}

pub fn action_right(e: &PaintedTree, d: &PlaneTree) -> Result<Sum> {
    Ok(Sum::collect(action_right_raw(e, d)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    /// `e · e' = f(e) ⋆ e'`, unit on the left.
    Left,
    /// `e · e' = e ⋆ f(e')`, unit on the right.
    Right,
}

pub fn supports(family: Family, side: Side) -> bool {
    match side {
        Side::Left => forest_target(family).is_some(),
        Side::Right => base_target(family).is_some(),
    }
}

fn require(family: Family, side: Side) -> Result<()> {
    if supports(family, side) {
        Ok(())
    } else {
        Err(Error::Unsupported(format!("{family} has no {side:?} product")))
    }
}

pub fn product(e: &PaintedTree, e2: &PaintedTree, side: Side) -> Result<Sum> {
    if e.family != e2.family {
        return Err(Error::KindMismatch(format!("{} times {}", e.family, e2.family)));
    }
    require(e.family, side)?;
    match side {
        Side::Left => action_left(&connection(e, forest_target(e.family).unwrap()), e2),
        Side::Right => action_right(e, &connection(e2, base_target(e.family).unwrap())),
    }
}

pub fn product_sums(x: &Sum, y: &Sum, side: Side) -> Result<Sum> {
    let mut out = Sum::zero();
    for (a, ca) in x.iter() {
        for (b, cb) in y.iter() {
            out.add_assign(&product(a, b, side)?.scaled(&(ca * cb)));
        }
    }
    Ok(out)
}

/// Coefficient of the single-leaf tree.
pub fn counit(x: &Sum) -> BigInt {
    x.iter().filter(|(k, _)| k.is_eta()).map(|(_, c)| c.clone()).sum::<BigInt>()
}

/// Recursive antipode with a per-instance memo keyed on the tree.
///
/// With the unit on the right, `S(e) = -η·e - Σ S(e₁)·e₂` over splittings
/// with both pieces of positive degree. With the unit on the left the mirror
/// `S(e) = -e·η - Σ e₁·S(e₂)` is used; it is the one solvable form there.
pub struct Antipode {
    side: Side,
    family: Family,
    memo: HashMap<PaintedTree, Sum>,
}

impl Antipode {
    pub fn new(family: Family, side: Side) -> Result<Self> {
        require(family, side)?;
        Ok(Antipode { side, family, memo: HashMap::new() })
    }

    pub fn of(&mut self, e: &PaintedTree) -> Result<Sum> {
        if e.family != self.family {
            return Err(Error::KindMismatch(format!("{} in a {} antipode", e.family, self.family)));
        }
        if let Some(s) = self.memo.get(e) {
            return Ok(s.clone());
        }
        let eta = Sum::basis(PaintedTree::eta(self.family));
        let me = Sum::basis(e.clone());
        let s = if e.is_eta() {
            eta
        } else {
            let mut acc = match self.side {
                Side::Right => product_sums(&eta, &me, Side::Right)?,
                Side::Left => product_sums(&me, &eta, Side::Left)?,
            };
            for (pair, c) in coproduct(e)?.iter() {
                let (e1, e2) = pair;
                if e1.is_eta() || e2.is_eta() {
                    continue;
                }
                let term = match self.side {
                    Side::Right => product_sums(&self.of(e1)?, &Sum::basis(e2.clone()), Side::Right)?,
                    Side::Left => product_sums(&Sum::basis(e1.clone()), &self.of(e2)?, Side::Left)?,
                };
                acc.add_assign(&term.scaled(c));
            }
            acc.neg()
        };
        self.memo.insert(e.clone(), s.clone());
        Ok(s)
    }

    pub fn of_sum(&mut self, x: &Sum) -> Result<Sum> {
        let mut out = Sum::zero();
        for (k, c) in x.iter() {
            out.add_assign(&self.of(k)?.scaled(c));
        }
        Ok(out)
    }
}

pub fn antipode(e: &PaintedTree, side: Side) -> Result<Sum> {
    Antipode::new(e.family, side)?.of(e)
}

/// The convolution of the antipode with the identity on the side the
/// antipode is built for; equals `η ε(e)` when the axioms hold.
pub fn antipode_convolution(e: &PaintedTree, side: Side) -> Result<Sum> {
    let mut s = Antipode::new(e.family, side)?;
    let mut out = Sum::zero();
    for ((e1, e2), c) in coproduct(e)?.iter() {
        let term = match side {
            Side::Right => product_sums(&s.of(e1)?, &Sum::basis(e2.clone()), side)?,
            Side::Left => product_sums(&Sum::basis(e1.clone()), &s.of(e2)?, side)?,
        };
        out.add_assign(&term.scaled(c));
    }
    Ok(out)
}

/// `η ε(e)` as a formal sum.
pub fn unit_counit(e: &PaintedTree) -> Sum {
    if e.is_eta() {
        Sum::basis(e.clone())
    } else {
        Sum::zero()
    }
}
