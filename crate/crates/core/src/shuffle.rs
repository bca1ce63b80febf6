//! Shuffles and an associative product on the vertices of the stellohedra
//! (maximal tubings of star graphs).

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::sum::FormalSum;
use crate::tubing::{Graph, Mask, Tubing};

/// A permutation of `1..=len`, stored as its one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(pub Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm((1..=n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_valid(&self) -> bool {
        let mut seen = vec![false; self.len() + 1];
        self.0.iter().all(|&x| x >= 1 && x <= self.len() && !std::mem::replace(&mut seen[x], true))
    }

    pub fn inverse(&self) -> Perm {
        let mut out = vec![0; self.len()];
        for (i, &x) in self.0.iter().enumerate() {
            out[x - 1] = i + 1;
        }
        Perm(out)
    }

    /// `(self . other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&i| self.0[i - 1]).collect())
    }

    /// `self` on `1..=n`, `other` shifted onto `n+1..=n+m`.
    pub fn concat(&self, other: &Perm) -> Perm {
        let n = self.len();
        Perm(self.0.iter().copied().chain(other.0.iter().map(|&x| x + n)).collect())
    }

    /// Whether `self` increases on each consecutive segment of sizes `parts`.
    pub fn is_shuffle_of(&self, parts: &[usize]) -> bool {
        if parts.iter().sum::<usize>() != self.len() || !self.is_valid() {
            return false;
        }
        let mut start = 0;
        parts.iter().all(|&p| {
            let ok = self.0[start..start + p].windows(2).all(|w| w[0] < w[1]);
            start += p;
            ok
        })
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().join(","))
    }
}

impl FromStr for Perm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Perm> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        let v: Vec<usize> = if body.trim().is_empty() {
            Vec::new()
        } else {
            body.split(',').map(|x| x.trim().parse().map_err(|e| Error::Parse(format!("{x:?}: {e}")))).try_collect()?
        };
        let p = Perm(v);
        if !p.is_valid() {
            return Err(Error::Parse(format!("{s:?} is not a permutation")));
        }
        Ok(p)
    }
}

/// All permutations increasing on consecutive segments of sizes `parts`,
/// in lexicographic order.
pub fn shuffles(parts: &[usize]) -> Vec<Perm> {
    let total: usize = parts.iter().sum();
    let mut out = Vec::new();
    fn rec(parts: &[usize], free: Vec<usize>, acc: Vec<usize>, out: &mut Vec<Perm>) {
        match parts.split_first() {
            None => out.push(Perm(acc)),
            Some((&p, rest)) => {
                for chosen in free.iter().copied().combinations(p) {
                    let left: Vec<usize> = free.iter().copied().filter(|x| !chosen.contains(x)).collect();
                    let mut a = acc.clone();
                    a.extend(chosen);
                    rec(rest, left, a, out);
                }
            }
        }
    }
    rec(parts, (1..=total).collect(), Vec::new(), &mut out);
    out.sort();
    out
}

/// The `(n, m)`-shuffles; a single identity when either is zero.
pub fn shuffles2(n: usize, m: usize) -> Vec<Perm> {
    shuffles(&[n, m])
}

/// A maximal tubing of the star on `0..=n`, written `Tub_r(u_1, .., u_n)`:
/// singletons `{u_1} .. {u_r}` with `u_1 < .. < u_r`, then the tube
/// `t0 = {0, u_1, .., u_r}` grown by `u_{r+1}`, `u_{r+2}`, .. in turn.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StelloVertex {
    pub r: usize,
    pub u: Vec<usize>,
}

impl StelloVertex {
    pub fn new(r: usize, u: Vec<usize>) -> Result<Self> {
        let n = u.len();
        if n == 0 || r > n || !Perm(u.clone()).is_valid() || !u[..r].windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument(format!("Tub_{r}{:?} is not a valid vertex", u)));
        }
        Ok(StelloVertex { r, u })
    }

    /// `Tub_n`: every leaf a singleton tube.
    pub fn all_singletons(n: usize) -> Self {
        StelloVertex { r: n, u: (1..=n).collect() }
    }

    pub fn n(&self) -> usize {
        self.u.len()
    }

    pub fn is_all_singletons(&self) -> bool {
        self.r == self.n()
    }

    pub fn to_tubing(&self) -> Result<(Graph, Tubing)> {
        let n = self.n();
        let g = Graph::star(n);
        let bit = |x: usize| -> Result<Mask> { Ok(1 << g.index(x as i64)?) };
        let mut tubes = Vec::new();
        for &x in &self.u[..self.r] {
            tubes.push(bit(x)?);
        }
        if self.r < n {
            let mut t0 = bit(0)?;
            for &x in &self.u[..self.r] {
                t0 |= bit(x)?;
            }
            tubes.push(t0);
            for &x in &self.u[self.r..n - 1] {
                t0 |= bit(x)?;
                tubes.push(t0);
            }
        }
        let t = Tubing::new(&g, tubes)?;
        Ok((g, t))
    }

    pub fn from_tubing(g: &Graph, t: &Tubing) -> Result<Self> {
        let n = g.len().checked_sub(1).ok_or_else(|| Error::InvalidArgument("empty graph".into()))?;
        if *g != Graph::star(n) || n == 0 {
            return Err(Error::GraphMismatch("expected a star graph".into()));
        }
        Tubing::new(g, t.tubes.clone())?;
        if t.len() != n + 1 {
            return Err(Error::InvalidArgument("the tubing is not maximal".into()));
        }
        let zero = 1 << g.index(0)?;
        let labels = |m: Mask| -> Vec<usize> { g.labels_of(m).into_iter().filter(|&l| l > 0).map(|l| l as usize).collect() };
        let mut u: Vec<usize> =
            t.tubes.iter().filter(|&&m| m & zero == 0).flat_map(|&m| labels(m)).sorted().collect();
        let r = u.len();
        let mut prev = 0;
        for &c in t.tubes.iter().filter(|&&m| m & zero != 0) {
            if prev != 0 {
                u.extend(labels(c & !prev));
            }
            prev = c;
        }
        StelloVertex::new(r, u)
    }

    /// The `sigma` term of the product with `v`.
    pub fn star_term(&self, v: &StelloVertex, sigma: &Perm) -> Result<StelloVertex> {
        let (n, m, r, s) = (self.n(), v.n(), self.r, v.r);
        if !sigma.is_shuffle_of(&[n - r, m - s]) {
            return Err(Error::InvalidShuffle(format!("{sigma} is not a ({}, {})-shuffle", n - r, m - s)));
        }
        let w: Vec<usize> = self.u[r..].iter().copied().chain(v.u[s..].iter().map(|x| x + n)).collect();
        let inv = sigma.inverse();
        let mut out: Vec<usize> = self.u[..r].to_vec();
        out.extend(v.u[..s].iter().map(|x| x + n));
        out.extend(inv.0.iter().map(|&i| w[i - 1]));
        StelloVertex::new(r + s, out)
    }

    /// The sum of `star_term` over every `(n - r, m - s)`-shuffle.
    pub fn star_product(&self, v: &StelloVertex) -> FormalSum<StelloVertex> {
        let sh = shuffles2(self.n() - self.r, v.n() - v.r);
        FormalSum::collect(sh.iter().map(|s| self.star_term(v, s).expect("shuffle has the right shape")))
    }

    /// Every maximal tubing of the star with `n` leaves.
    pub fn all(n: usize) -> Vec<StelloVertex> {
        let mut out = Vec::new();
        for r in 0..=n {
            for head in (1..=n).combinations(r) {
                let rest: Vec<usize> = (1..=n).filter(|x| !head.contains(x)).collect();
                if r == n {
                    out.push(StelloVertex { r, u: head.clone() });
                    continue;
                }
                for tail in rest.iter().copied().permutations(rest.len()) {
                    let mut u = head.clone();
                    u.extend(tail);
                    out.push(StelloVertex { r, u });
                }
            }
        }
        out.sort();
        out
    }
}

/// Extends the product bilinearly.
pub fn product_sums(a: &FormalSum<StelloVertex>, b: &FormalSum<StelloVertex>) -> FormalSum<StelloVertex> {
    a.bilinear(b, |x, y| x.star_product(y))
}

impl fmt::Display for StelloVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tub_{}({})", self.r, self.u.iter().join(","))
    }
}

impl FromStr for StelloVertex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let rest = s.strip_prefix("Tub_").ok_or_else(|| Error::Parse(format!("{s:?} should start with Tub_")))?;
        let open = rest.find('(').ok_or_else(|| Error::Parse(format!("{s:?} has no argument list")))?;
        let r: usize = rest[..open].parse().map_err(|e| Error::Parse(format!("{s:?}: {e}")))?;
        let Perm(u) = rest[open..].parse()?;
        StelloVertex::new(r, u).map_err(|e| Error::Parse(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tubing::enumerate_tubings;

    fn tub(s: &str) -> StelloVertex {
        s.parse().unwrap()
    }

    #[test]
    fn notation_round_trips() {
        for n in 1..=4 {
            let g = Graph::star(n);
            let maximal = enumerate_tubings(&g, true);
            let all = StelloVertex::all(n);
            assert_eq!(all.len(), maximal.len());
            for t in &maximal {
                let v = StelloVertex::from_tubing(&g, t).unwrap();
                assert_eq!(v.to_tubing().unwrap().1, *t);
                assert!(all.contains(&v));
            }
        }
        let g = Graph::star(3);
        let (_, t) = StelloVertex::all_singletons(3).to_tubing().unwrap();
        assert_eq!(t.tubes.iter().filter(|m| m.count_ones() == 1).count(), 3);
        assert_eq!(StelloVertex::from_tubing(&g, &t).unwrap().to_string(), "Tub_3(1,2,3)");
        let top = Tubing::new(&g, vec![]).unwrap();
        assert!(StelloVertex::from_tubing(&g, &top).is_err());
        assert_eq!(tub("Tub_0(2,1,3)").r, 0);
        assert!("Tub_2(2,1,3)".parse::<StelloVertex>().is_err());
    }

    #[test]
    fn shuffle_basics() {
        assert_eq!(shuffles2(0, 3), vec![Perm::identity(3)]);
        assert_eq!(shuffles2(2, 2).len(), 6);
        let s = Perm(vec![2, 1]);
        assert_eq!(s.concat(&Perm::identity(0)), s);
        assert_eq!(Perm::identity(1).concat(&Perm::identity(1)), Perm::identity(2));
        for (n, m, r) in (0..=3).cartesian_product(0..=3).cartesian_product(0..=3).map(|((a, b), c)| (a, b, c)) {
            if n + m + r > 7 {
                continue;
            }
            let lhs: Vec<Perm> = shuffles2(n + m, r)
                .iter()
                .cartesian_product(shuffles2(n, m).iter())
                .map(|(a, b)| a.compose(&b.concat(&Perm::identity(r))))
                .sorted()
                .collect();
            let rhs: Vec<Perm> = shuffles2(n, m + r)
                .iter()
                .cartesian_product(shuffles2(m, r).iter())
                .map(|(a, b)| a.compose(&Perm::identity(n).concat(b)))
                .sorted()
                .collect();
            let three = shuffles(&[n, m, r]);
            assert_eq!(lhs, three);
            assert_eq!(rhs, three);
        }
    }

    #[test]
    fn worked_product_term() {
        let t = tub("Tub_3(1,2,6,5,3,4)");
        let v = tub("Tub_2(1,3,2,4)");
        let sigma: Perm = "(1,3,5,2,4)".parse().unwrap();
        assert_eq!(t.star_term(&v, &sigma).unwrap(), tub("Tub_5(1,2,6,7,9,5,8,3,10,4)"));
        assert!(matches!(t.star_term(&v, &Perm(vec![2, 1, 3, 4, 5])), Err(Error::InvalidShuffle(_))));
    }

    /// Places the tails directly: the first tail goes to positions
    /// `sigma(1..)` of the merged tail, the shifted second tail fills the rest.
    fn placed(t: &StelloVertex, v: &StelloVertex, sigma: &Perm) -> StelloVertex {
        let (n, r, s) = (t.n(), t.r, v.r);
        let k = n - r;
        let mut tail = vec![0; sigma.len()];
        for i in 0..k {
            tail[sigma.0[i] - 1] = t.u[r + i];
        }
        let mut rest = v.u[s..].iter().map(|x| x + n);
        for slot in tail.iter_mut().filter(|x| **x == 0) {
            *slot = rest.next().unwrap();
        }
        let mut u: Vec<usize> = t.u[..r].to_vec();
        u.extend(v.u[..s].iter().map(|x| x + n));
        u.extend(tail);
        StelloVertex { r: r + s, u }
    }

    #[test]
    fn special_cases_and_term_counts() {
        for n in 1..=3 {
            for m in 1..=3 {
                for t in StelloVertex::all(n) {
                    for v in StelloVertex::all(m) {
                        let p = t.star_product(&v);
                        let k = (n - t.r, m - v.r);
                        let expect = crate::enumeration::binomial((k.0 + k.1) as u64, k.0 as u64);
                        assert_eq!(p.total(), expect);
                        for sigma in shuffles2(k.0, k.1) {
                            let term = t.star_term(&v, &sigma).unwrap();
                            assert_eq!(term, placed(&t, &v, &sigma));
                            assert_eq!(term.n(), n + m);
                            assert!(term.to_tubing().is_ok());
                        }
                    }
                }
                let (tn, tm) = (StelloVertex::all_singletons(n), StelloVertex::all_singletons(m));
                assert_eq!(tn.star_product(&tm), FormalSum::basis(StelloVertex::all_singletons(n + m)));
            }
        }
        let one = tub("Tub_0(1)");
        let p = one.star_product(&one);
        assert_eq!(p.len(), 2);
        assert_eq!(p.coefficient(&tub("Tub_0(1,2)")), 1.into());
        let v = tub("Tub_1(2,1,3)");
        let t1 = StelloVertex::all_singletons(2);
        assert_eq!(t1.star_product(&v), FormalSum::basis(tub("Tub_3(1,2,4,3,5)")));
        let t = tub("Tub_1(3,1,2)");
        assert_eq!(t.star_product(&t1), FormalSum::basis(tub("Tub_3(3,4,5,1,2)")));
    }

    #[test]
    fn associative_in_small_degrees() {
        let basis: Vec<Vec<StelloVertex>> = (0..=4).map(StelloVertex::all).collect();
        for (n, m, p) in (1..=4).cartesian_product(1..=4).cartesian_product(1..=4).map(|((a, b), c)| (a, b, c)) {
            if n + m + p > 6 {
                continue;
            }
            for a in &basis[n] {
                for b in &basis[m] {
                    let ab = a.star_product(b);
                    for c in &basis[p] {
                        let left = product_sums(&ab, &FormalSum::basis(c.clone()));
                        let right = product_sums(&FormalSum::basis(a.clone()), &b.star_product(c));
                        assert_eq!(left, right, "{a} {b} {c}");
                    }
                }
            }
        }
    }
}
