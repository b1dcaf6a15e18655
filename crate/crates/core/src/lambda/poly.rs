//! Multivariate integer polynomials with named variables.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

/// Exponent vector, ordered graded-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Degree with variable `i` weighted by `weight(i)`.
    pub fn weighted_degree(&self, weight: impl Fn(usize) -> u32) -> u32 {
        self.0.iter().enumerate().map(|(i, &e)| e * weight(i)).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial with integer coefficients; zero coefficients are never
/// stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymPoly {
    names: Vec<String>,
    terms: BTreeMap<Monomial, BigInt>,
}

/// Variable names `prefix1 … prefixN`.
pub fn names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

impl SymPoly {
    pub fn zero(names: Vec<String>) -> Self {
        SymPoly {
            names,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(names: Vec<String>, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(names);
        let c = c.into();
        if !c.is_zero() {
            p.terms.insert(Monomial::one(p.nvars()), c);
        }
        p
    }

    pub fn one(names: Vec<String>) -> Self {
        Self::constant(names, 1)
    }

    pub fn var(names: Vec<String>, i: usize) -> Self {
        let mut m = Monomial::one(names.len());
        m.0[i] = 1;
        Self::monomial(names, m, BigInt::one())
    }

    pub fn monomial(names: Vec<String>, m: Monomial, c: BigInt) -> Self {
        let mut p = Self::zero(names);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms(names: Vec<String>, terms: impl IntoIterator<Item = (Vec<u32>, i64)>) -> Self {
        let mut p = Self::zero(names);
        for (e, c) in terms {
            p.add_term(Monomial(e), BigInt::from(c));
        }
        p
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exps: &[u32]) -> BigInt {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .cloned()
            .unwrap_or_default()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: BigInt) {
        debug_assert_eq!(m.0.len(), self.nvars());
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m.clone()).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &SymPoly) -> SymPoly {
        assert_eq!(self.names, other.names, "polynomials over different variables");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> SymPoly {
        self.scale(&BigInt::from(-1))
    }

    pub fn sub(&self, other: &SymPoly) -> SymPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &BigInt) -> SymPoly {
        let mut out = Self::zero(self.names.clone());
        if c.is_zero() {
            return out;
        }
        for (m, x) in &self.terms {
            out.terms.insert(m.clone(), x * c);
        }
        out
    }

    pub fn mul(&self, other: &SymPoly) -> SymPoly {
        assert_eq!(self.names, other.names, "polynomials over different variables");
        let mut out = Self::zero(self.names.clone());
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a.mul(b), x * y);
            }
        }
        out
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &BigInt) -> SymPoly {
        let mut out = Self::zero(self.names.clone());
        for (a, x) in &self.terms {
            out.terms.insert(a.mul(m), x * c);
        }
        out
    }

    pub fn pow(&self, e: u32) -> SymPoly {
        let mut out = Self::one(self.names.clone());
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn evaluate(&self, values: &[BigInt]) -> BigInt {
        assert_eq!(values.len(), self.nvars());
        let mut total = BigInt::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in values.iter().zip(&m.0) {
                t *= num_traits::pow(v.clone(), e as usize);
            }
            total += t;
        }
        total
    }

    /// Substitutes `values[i]` for variable `i` in any commutative ring.
    pub fn substitute<T: Clone>(
        &self,
        values: &[T],
        one: &T,
        add: impl Fn(&T, &T) -> T,
        mul: impl Fn(&T, &T) -> T,
        scale: impl Fn(&T, &BigInt) -> T,
        zero: &T,
    ) -> T {
        let mut total = zero.clone();
        for (m, c) in &self.terms {
            let mut t = one.clone();
            for (v, &e) in values.iter().zip(&m.0) {
                for _ in 0..e {
                    t = mul(&t, v);
                }
            }
            total = add(&total, &scale(&t, c));
        }
        total
    }

    /// True if every term has weighted degree `d`.
    pub fn is_homogeneous(&self, d: u32, weight: impl Fn(usize) -> u32 + Copy) -> bool {
        self.terms.keys().all(|m| m.weighted_degree(weight) == d)
    }

    /// Same polynomial over a longer list of variables; the old variables
    /// keep their positions.
    pub fn extend_vars(&self, names: Vec<String>) -> SymPoly {
        assert!(names.len() >= self.nvars() && names[..self.nvars()] == self.names[..]);
        let extra = names.len() - self.nvars();
        let mut out = Self::zero(names);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            e.extend(std::iter::repeat(0).take(extra));
            out.terms.insert(Monomial(e), c.clone());
        }
        out
    }

    /// Writes `self` as `Σ_β y^β · g_β(x)` where `x` are the first `split`
    /// variables and `y` the rest.
    pub fn split_at(&self, split: usize) -> BTreeMap<Monomial, SymPoly> {
        let (xs, _) = self.names.split_at(split);
        let mut out: BTreeMap<Monomial, SymPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (a, b) = m.0.split_at(split);
            out.entry(Monomial(b.to_vec()))
                .or_insert_with(|| SymPoly::zero(xs.to_vec()))
                .add_term(Monomial(a.to_vec()), c.clone());
        }
        out
    }

    /// Glues `Σ_β y^β · g_β` back together over `names = x ++ y`.
    pub fn join(names: Vec<String>, parts: &BTreeMap<Monomial, SymPoly>) -> SymPoly {
        let mut out = Self::zero(names);
        for (beta, g) in parts {
            for (alpha, c) in &g.terms {
                let mut e = alpha.0.clone();
                e.extend_from_slice(&beta.0);
                out.add_term(Monomial(e), c.clone());
            }
        }
        out
    }

    /// Keeps only terms whose monomial is a single variable power.
    pub fn single_factor_part(&self) -> SymPoly {
        let mut out = Self::zero(self.names.clone());
        for (m, c) in &self.terms {
            if m.0.iter().filter(|&&e| e > 0).count() == 1 && m.degree() == 1 {
                out.terms.insert(m.clone(), c.clone());
            }
        }
        out
    }

    /// Sorted term list, highest monomial first.
    pub fn term_list(&self) -> Vec<(Vec<u32>, String)> {
        self.terms
            .iter()
            .rev()
            .map(|(m, c)| (m.0.clone(), c.to_string()))
            .collect()
    }
}

impl fmt::Display for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { "-" } else { "+" })?;
            }
            let factors: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| {
                    if e == 1 {
                        self.names[v].clone()
                    } else {
                        format!("{}^{e}", self.names[v])
                    }
                })
                .collect();
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{abs}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl Serialize for SymPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
