//! Finite formal sums with exact integer coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};

/// A finite linear combination of keys. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FormalSum<K: Ord> {
    terms: BTreeMap<K, BigInt>,
}

impl<K: Ord> Default for FormalSum<K> {
    fn default() -> Self {
        FormalSum { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> FormalSum<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(k: K) -> Self {
        let mut s = Self::zero();
        s.add_term(k, BigInt::one());
        s
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (K, BigInt)>) -> Self {
        let mut s = Self::zero();
        for (k, c) in terms {
            s.add_term(k, c);
        }
        s
    }

    /// Collects raw terms, each with coefficient one.
    pub fn collect(keys: impl IntoIterator<Item = K>) -> Self {
        Self::from_terms(keys.into_iter().map(|k| (k, BigInt::one())))
    }

    pub fn add_term(&mut self, k: K, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&k) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&k);
                }
            }
            None => {
                self.terms.insert(k, c);
            }
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c.clone());
        }
    }

    pub fn scaled(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        FormalSum { terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect() }
    }

    pub fn neg(&self) -> Self {
        self.scaled(&BigInt::from(-1))
    }

    pub fn coefficient(&self, k: &K) -> BigInt {
        self.terms.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &BigInt)> {
        self.terms.iter()
    }

    /// Sum of all coefficients.
    pub fn total(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Extends `f` linearly.
    pub fn linear<K2: Ord + Clone>(&self, mut f: impl FnMut(&K) -> FormalSum<K2>) -> FormalSum<K2> {
        let mut out = FormalSum::zero();
        for (k, c) in &self.terms {
            out.add_assign(&f(k).scaled(c));
        }
        out
    }

    /// Extends a map on pairs of keys bilinearly.
    pub fn bilinear<K2: Ord + Clone, K3: Ord + Clone>(
        &self,
        other: &FormalSum<K2>,
        mut f: impl FnMut(&K, &K2) -> FormalSum<K3>,
    ) -> FormalSum<K3> {
        let mut out = FormalSum::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_assign(&f(a, b).scaled(&(ca * cb)));
            }
        }
        out
    }

    /// JSON array of `{"coef", "basis"}` objects ordered by `key`.
    pub fn to_json(&self, basis: impl Fn(&K) -> Value, key: impl Fn(&K) -> String) -> Value {
        let mut items: Vec<(String, Value)> = self
            .terms
            .iter()
            .map(|(k, c)| {
                let coef: Value = serde_json::from_str(&c.to_string()).expect("integer literal");
                (key(k), json!({ "coef": coef, "basis": basis(k) }))
            })
            .collect();
        items.sort_by(|a, b| a.0.cmp(&b.0));
        Value::Array(items.into_iter().map(|(_, v)| v).collect())
    }
}

impl<K: Ord + fmt::Display> fmt::Display for FormalSum<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut items: Vec<(String, &BigInt)> = self.terms.iter().map(|(k, c)| (k.to_string(), c)).collect();
        items.sort();
        for (i, (k, c)) in items.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if c.is_one() {
                write!(f, "{k}")?;
            } else {
                write!(f, "{c}*{k}")?;
            }
        }
        Ok(())
    }
}
