//! Closed-form counts in exact integers, with brute-force counterparts.

use std::fmt::Write;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::growth::build_poset;
use crate::painted::{BaseKind, Family};
use crate::par::{self, Exec};
use crate::tree::{ForestKind, TreeKind};
use crate::tubing::{enumerate_tubings, Graph};

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, k| a * k)
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    // each partial product is itself a binomial coefficient, so every
    // division is exact
    (0..k).fold(BigInt::one(), |a, i| a * (n - i) / (i + 1))
}

pub fn catalan(n: u64) -> BigInt {
    binomial(2 * n, n) / (n + 1)
}

/// Plane trees with `n + 1` leaves: 1, 1, 3, 11, 45, ...
pub fn little_schroeder(n: u64) -> BigInt {
    // trees with n+1 leaves and k inner nodes: binom(n-1, k-1) binom(n+k, k-1) / k
    if n == 0 {
        return BigInt::one();
    }
    (1..=n).map(|k| binomial(n - 1, k - 1) * binomial(n + k, k - 1) / k).sum()
}

/// Entry `(row, col)` of the Catalan triangle: ordered forests of `col + 1`
/// binary trees with `row - col` inner nodes in total.
pub fn ballot(row: u64, col: u64) -> Result<BigInt> {
    if col > row {
        return Err(Error::InvalidArgument(format!("ballot({row}, {col}) needs col <= row")));
    }
    let num = binomial(2 * row - col, row) * (col + 1);
    let (q, r) = (&num / (row + 1), &num % (row + 1));
    assert!(r.is_zero(), "ballot division must be exact");
    Ok(q)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    DoubleSum,
    ClosedForm,
}

/// Coefficients of the Catalan series raised to `power`, up to `x^deg`.
fn catalan_power(power: usize, deg: usize) -> Vec<BigInt> {
    let c: Vec<BigInt> = (0..=deg as u64).map(catalan).collect();
    let mut acc = vec![BigInt::zero(); deg + 1];
    acc[0] = BigInt::one();
    for _ in 0..power {
        let mut next = vec![BigInt::zero(); deg + 1];
        for (i, a) in acc.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for j in 0..=deg - i {
                next[i + j] += a * &c[j];
            }
        }
        acc = next;
    }
    acc
}

/// The sum over compositions `g_0 + .. + g_k = n - k` of `prod C_{g_i}`.
pub fn forest_sum(n: u64, k: u64) -> BigInt {
    catalan_power(k as usize + 1, (n - k) as usize)[(n - k) as usize].clone()
}

/// Vertices of the pterahedron with `n + 1` leaves.
pub fn ptera_vertices(n: u64, method: Method) -> BigInt {
    (0..=n)
        .map(|k| {
            let inner = match method {
                Method::DoubleSum => forest_sum(n, k),
                Method::ClosedForm => ballot(n, k).expect("k <= n"),
            };
            factorial(k) * inner
        })
        .sum()
}

/// The terms `k! * ballot(n, k)`, `k = 0..=n`.
pub fn ptera_breakdown(n: u64) -> Vec<BigInt> {
    (0..=n).map(|k| factorial(k) * ballot(n, k).expect("k <= n")).collect()
}

/// `sum n!/k!`: vertices of the stellohedron.
pub fn stello_vertices(n: u64) -> BigInt {
    let nf = factorial(n);
    (0..=n).map(|k| &nf / factorial(k)).sum()
}

fn positive(name: &str, v: u64) -> Result<()> {
    if v == 0 {
        return Err(Error::InvalidArgument(format!("{name} must be at least 1")));
    }
    Ok(())
}

/// Tubes other than the universal one of the fan joining `m` edgeless
/// nodes to a path on `n` nodes.
pub fn fan_tube_count(m: u64, n: u64) -> Result<BigInt> {
    positive("m", m)?;
    positive("n", n)?;
    let two = BigInt::from(2);
    Ok(BigInt::from(n * (n + 1) / 2) + (two.pow(m as u32) - 1) * (two.pow(n as u32) - 1) + m - 1)
}

/// Tubes of the star graph on `n` nodes in total.
pub fn star_tube_count(n: u64) -> Result<BigInt> {
    positive("n", n)?;
    Ok(BigInt::from(2).pow(n as u32 - 1) + n - 2)
}

pub fn bipartite_tube_count(m: u64, n: u64) -> Result<BigInt> {
    positive("m", m)?;
    positive("n", n)?;
    let two = BigInt::from(2);
    Ok(two.pow((m + n) as u32) + (m + n) - two.pow(m as u32) - two.pow(n as u32))
}

/// Proper tubes of `g`, counted by enumeration.
pub fn brute_tube_count(g: &Graph) -> BigInt {
    BigInt::from(g.tubes().len() - 1)
}

/// Vertices of the plane-forest-over-ordered-tree poset, counted as its
/// minimal elements.
pub fn brute_ptera_vertices(n: usize, exec: Exec) -> BigInt {
    let f = Family::new(ForestKind::ForestOfPlaneTrees, BaseKind::WeaklyOrderedTree);
    BigInt::from(build_poset(f, n, exec).minimal().len())
}

/// Maximal tubings of the star with `n` leaves.
pub fn brute_stello_vertices(n: usize) -> BigInt {
    BigInt::from(enumerate_tubings(&Graph::star(n), true).len())
}

/// Plane trees with `n + 1` leaves, by enumeration.
pub fn brute_little_schroeder(n: usize) -> BigInt {
    BigInt::from(crate::tree::enumerate_trees(TreeKind::Plane, n + 1).map(|v| v.len()).unwrap_or(0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Formula,
    BruteForce,
}

impl Provenance {
    pub fn name(&self) -> &'static str {
        match self {
            Provenance::Formula => "formula",
            Provenance::BruteForce => "brute-force",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountRow {
    pub params: Vec<u64>,
    pub value: BigInt,
    pub provenance: Provenance,
}

/// A table of exact counts keyed by parameter tuples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    pub name: String,
    pub headers: Vec<String>,
    pub rows: Vec<CountRow>,
}

impl CountTable {
    pub fn to_text(&self) -> String {
        let cells: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| {
                let mut v: Vec<String> = r.params.iter().map(u64::to_string).collect();
                v.push(group_digits(&r.value));
                v.push(r.provenance.name().into());
                v
            })
            .collect();
        let mut head = self.headers.clone();
        head.push("source".into());
        let widths: Vec<usize> = (0..head.len())
            .map(|i| cells.iter().map(|c| c[i].len()).chain([head[i].len()]).max().unwrap_or(0))
            .collect();
        let mut s = String::new();
        let line = |cols: &[String], s: &mut String| {
            let parts: Vec<String> = cols.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
            let _ = writeln!(s, "{}", parts.join("  "));
        };
        line(&head, &mut s);
        for c in &cells {
            line(c, &mut s);
        }
        s
    }

    pub fn to_csv(&self) -> String {
        let mut s = format!("{},source\n", self.headers.join(","));
        for r in &self.rows {
            let p: Vec<String> = r.params.iter().map(u64::to_string).collect();
            let _ = writeln!(s, "{},{},{}", p.join(","), r.value, r.provenance.name());
        }
        s
    }
}

/// `1162504` as `1,162,504`.
pub fn group_digits(v: &BigInt) -> String {
    let raw = v.to_string();
    let (sign, digits) = raw.strip_prefix('-').map_or(("", raw.as_str()), |d| ("-", d));
    let mut out = String::new();
    for (i, ch) in digits.chars().enumerate() {
        if i > 0 && (digits.len() - i) % 3 == 0 {
            out.push(',');
        }
        out.push(ch);
    }
    format!("{sign}{out}")
}

/// The pterahedron vertex table for `n = 0..=max`.
pub fn ptera_table(max: u64) -> CountTable {
    CountTable {
        name: "pterahedron vertices".into(),
        headers: vec!["n".into(), "v(n)".into()],
        rows: (0..=max)
            .map(|n| CountRow { params: vec![n], value: ptera_vertices(n, Method::ClosedForm), provenance: Provenance::Formula })
            .collect(),
    }
}

/// Named sequences the CLI can tabulate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sequence {
    Catalan,
    LittleSchroeder,
    Ptera,
    Stello,
    StarTubes,
}

impl Sequence {
    pub fn parse(s: &str) -> Result<Sequence> {
        Ok(match s {
            "catalan" => Sequence::Catalan,
            "schroeder" | "little-schroeder" => Sequence::LittleSchroeder,
            "ptera" | "pterahedron" => Sequence::Ptera,
            "stello" | "stellohedron" => Sequence::Stello,
            "star-tubes" => Sequence::StarTubes,
            _ => return Err(Error::InvalidArgument(format!("unknown sequence {s:?}"))),
        })
    }

    fn formula(&self, n: u64) -> Result<BigInt> {
        Ok(match self {
            Sequence::Catalan => catalan(n),
            Sequence::LittleSchroeder => little_schroeder(n),
            Sequence::Ptera => ptera_vertices(n, Method::ClosedForm),
            Sequence::Stello => stello_vertices(n),
            Sequence::StarTubes => star_tube_count(n)?,
        })
    }

    fn brute(&self, n: u64, exec: Exec) -> Option<BigInt> {
        let m = n as usize;
        match self {
            Sequence::Catalan if m <= 8 => {
                Some(BigInt::from(enumerate_tubings(&Graph::path(m), true).len().max(1)))
            }
            Sequence::LittleSchroeder if m <= 8 => Some(brute_little_schroeder(m)),
            Sequence::Ptera if m <= 5 => Some(brute_ptera_vertices(m, exec)),
            Sequence::Stello if m <= 6 => Some(brute_stello_vertices(m)),
            Sequence::StarTubes if (1..=12).contains(&m) => Some(brute_tube_count(&Graph::star(m - 1))),
            _ => None,
        }
    }

    /// Formula rows for `n in range`, each followed by a brute-force row
    /// when `brute` is set and the size is small enough.
    pub fn table(&self, range: std::ops::RangeInclusive<u64>, brute: bool, exec: Exec) -> Result<CountTable> {
        let ns: Vec<u64> = range.collect();
        let brutes: Vec<Option<BigInt>> =
            if brute { par::map(&ns, exec, |&n| self.brute(n, exec)) } else { vec![None; ns.len()] };
        let mut rows = Vec::new();
        for (&n, b) in ns.iter().zip(brutes) {
            rows.push(CountRow { params: vec![n], value: self.formula(n)?, provenance: Provenance::Formula });
            if let Some(v) = b {
                rows.push(CountRow { params: vec![n], value: v, provenance: Provenance::BruteForce });
            }
        }
        Ok(CountTable { name: format!("{self:?}"), headers: vec!["n".into(), "count".into()], rows })
    }
}
