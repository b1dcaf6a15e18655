//! Binary complexes: a graded free module with two differentials, the
//! functors ⊤, ⊥ and Δ, their Dold-Puppe powers, and the determinant
//! invariant of a biacyclic binary complex over a field.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::complex::ChainComplex;
use crate::error::{Error, Result};
use crate::linalg::{format_scalar, Matrix, Ring, Scalar};
use crate::simplicial::dold_puppe_power;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryComplex {
    ring: Ring,
    ranks: Vec<usize>,
    d: Vec<Matrix>,
    dt: Vec<Matrix>,
}

impl BinaryComplex {
    /// `d[i - 1]` and `dt[i - 1]` are the two maps out of degree `i`.
    pub fn new(ring: Ring, ranks: Vec<usize>, d: Vec<Matrix>, dt: Vec<Matrix>) -> Result<Self> {
        let bottom = ChainComplex::new(ring, ranks.clone(), d.clone()).map_err(|e| relabel(e, "d"))?;
        let top = ChainComplex::new(ring, ranks.clone(), dt.clone()).map_err(|e| relabel(e, "dtilde"))?;
        let _ = (bottom, top);
        Ok(BinaryComplex { ring, ranks, d, dt })
    }

    /// Packages two complexes on the same graded module; `bottom` carries
    /// `d`, `top` carries `d̃`.
    pub fn from_pair(bottom: &ChainComplex, top: &ChainComplex) -> Result<Self> {
        if bottom.ring() != top.ring() {
            return Err(Error::RingMismatch(bottom.ring(), top.ring()));
        }
        let t = bottom.top().max(top.top());
        let (b, u) = (bottom.padded(t), top.padded(t));
        if b.ranks() != u.ranks() {
            return Err(Error::GradingMismatch(format!("{:?} vs {:?}", b.ranks(), u.ranks())));
        }
        Ok(BinaryComplex {
            ring: b.ring(),
            ranks: b.ranks().to_vec(),
            d: b.differentials().to_vec(),
            dt: u.differentials().to_vec(),
        })
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn top_degree(&self) -> usize {
        self.ranks.len() - 1
    }

    /// ⊤: keeps `d̃`.
    pub fn top(&self) -> ChainComplex {
        ChainComplex::new(self.ring, self.ranks.clone(), self.dt.clone()).expect("validated")
    }

    /// ⊥: keeps `d`.
    pub fn bottom(&self) -> ChainComplex {
        ChainComplex::new(self.ring, self.ranks.clone(), self.d.clone()).expect("validated")
    }

    /// Δ: `(V, d) ↦ (V, d, d)`.
    pub fn diag(c: &ChainComplex) -> Self {
        BinaryComplex {
            ring: c.ring(),
            ranks: c.ranks().to_vec(),
            d: c.differentials().to_vec(),
            dt: c.differentials().to_vec(),
        }
    }

    pub fn is_biacyclic(&self) -> bool {
        self.bottom().is_acyclic() && self.top().is_acyclic()
    }

    pub fn direct_sum(&self, other: &BinaryComplex) -> Result<Self> {
        let bottom = self.bottom().direct_sum(&other.bottom())?;
        let top = self.top().direct_sum(&other.top())?;
        Self::from_pair(&bottom, &top)
    }

    /// `(F →·u F)` with `d = u`, `d̃ = 1` in degrees 1, 0.
    pub fn standard_unit_complex(ring: Ring, u: &Scalar) -> Result<Self> {
        if !ring.is_field() {
            return Err(Error::RequiresField(ring));
        }
        let u = ring.coerce(u.clone())?;
        if !ring.is_unit(&u) {
            return Err(Error::Dimension("the unit must be nonzero".into()));
        }
        let d = Matrix::from_scalars(ring, 1, 1, vec![u])?;
        Self::new(ring, vec![1, 1], vec![d], vec![Matrix::identity(ring, 1)])
    }
}

fn relabel(e: Error, which: &'static str) -> Error {
    match e {
        Error::NotAComplex { lower, upper } => Error::NotABinaryComplex { which, lower, upper },
        other => other,
    }
}

/// Dold-Puppe power applied to each differential. The graded pieces do
/// not depend on the differential; the two rank sequences are compared
/// and a mismatch is reported as a consistency error.
pub fn binary_power(b: &BinaryComplex, k: usize) -> Result<BinaryComplex> {
    let bottom = dold_puppe_power(&b.bottom(), k)?;
    let top = dold_puppe_power(&b.top(), k)?;
    if bottom.ranks() != top.ranks() {
        return Err(Error::GradingMismatch(format!(
            "{:?} vs {:?}",
            bottom.ranks(),
            top.ranks()
        )));
    }
    BinaryComplex::from_pair(&bottom, &top)
}

/// Nonzero element of a field, standing for a class in `K₁(F) = F^×`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitClass {
    pub ring: Ring,
    pub value: Scalar,
}

impl UnitClass {
    pub fn new(ring: Ring, value: Scalar) -> Result<Self> {
        let value = ring.coerce(value)?;
        if !ring.is_unit(&value) {
            return Err(Error::Dimension(format!("{} is not a unit", format_scalar(&value))));
        }
        Ok(UnitClass { ring, value })
    }

    pub fn one(ring: Ring) -> Self {
        UnitClass {
            ring,
            value: ring.one(),
        }
    }

    pub fn mul(&self, other: &UnitClass) -> UnitClass {
        UnitClass {
            ring: self.ring,
            value: self.ring.mul(&self.value, &other.value),
        }
    }

    pub fn inv(&self) -> UnitClass {
        UnitClass {
            ring: self.ring,
            value: self.ring.inv(&self.value),
        }
    }

    pub fn div(&self, other: &UnitClass) -> UnitClass {
        self.mul(&other.inv())
    }

    pub fn is_one(&self) -> bool {
        self.value == self.ring.one()
    }
}

impl fmt::Display for UnitClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_scalar(&self.value))
    }
}

impl Serialize for UnitClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Chain contraction of an acyclic complex over a field. `choices[n]`
/// (an invertible matrix on `C_n`) selects which columns span the
/// complement of `ker d_n`; `s[n] : C_n → C_{n+2}` perturbs the result by
/// `d s - s d`. `result[n]` is `h_n : C_n → C_{n+1}`.
pub fn contraction_with(c: &ChainComplex, choices: &[Matrix], s: &[Matrix]) -> Result<Vec<Matrix>> {
    let ring = c.ring();
    if !ring.is_field() {
        return Err(Error::RequiresField(ring));
    }
    acyclic_or_err(c)?;
    let top = c.top();
    let mut complements = vec![Matrix::zeros(ring, c.rank(0), 0)];
    let mut images = vec![];
    for n in 1..=top {
        let g = &choices[n];
        let dg = &c.differential(n) * g;
        let mut chosen: Vec<usize> = Vec::new();
        for j in 0..dg.cols() {
            let mut trial = chosen.clone();
            trial.push(j);
            if dg.select_columns(&trial).rank() == trial.len() {
                chosen = trial;
            }
        }
        images.push(dg.select_columns(&chosen));
        complements.push(g.select_columns(&chosen));
    }
    let mut h: Vec<Matrix> = (0..=top)
        .map(|n| Matrix::zeros(ring, c.rank(n + 1), c.rank(n)))
        .collect();
    // h_{n-1} inverts d_n from d_n(K_n) back to K_n and kills K_{n-1}
    for n in 1..=top {
        let basis = images[n - 1].hstack(&complements[n - 1]);
        let values = complements[n].hstack(&Matrix::zeros(ring, c.rank(n), complements[n - 1].cols()));
        let inv = basis
            .inverse()
            .ok_or_else(|| Error::Internal("image and complement do not span".into()))?;
        h[n - 1] = &values * &inv;
    }
    Ok((0..=top)
        .map(|n| {
            let ds = &c.differential(n + 2) * &s[n];
            let sd = if n >= 1 {
                &s[n - 1] * &c.differential(n)
            } else {
                Matrix::zeros(ring, c.rank(n + 1), c.rank(n))
            };
            h[n].add(&ds).sub(&sd)
        })
        .collect())
}

/// Contraction with identity choices and no perturbation.
pub fn standard_contraction(c: &ChainComplex) -> Result<Vec<Matrix>> {
    let ring = c.ring();
    let choices: Vec<Matrix> = (0..=c.top()).map(|n| Matrix::identity(ring, c.rank(n))).collect();
    let s: Vec<Matrix> = (0..=c.top())
        .map(|n| Matrix::zeros(ring, c.rank(n + 2), c.rank(n)))
        .collect();
    contraction_with(c, &choices, &s)
}

fn acyclic_or_err(c: &ChainComplex) -> Result<()> {
    for n in 0..=c.top() {
        if !c.homology(n)?.is_zero() {
            return Err(Error::NotAcyclic(n));
        }
    }
    Ok(())
}

/// Checks `d h + h d = 1` in every degree.
pub fn is_contraction(c: &ChainComplex, h: &[Matrix]) -> bool {
    (0..=c.top()).all(|n| {
        let mut lhs = &c.differential(n + 1) * &h[n];
        if n >= 1 {
            lhs = lhs.add(&(&h[n - 1] * &c.differential(n)));
        }
        lhs == Matrix::identity(c.ring(), c.rank(n))
    })
}

/// `det(d + h : ⊕ C_odd → ⊕ C_even)`, both sides ordered by descending
/// degree.
pub fn torsion_with(c: &ChainComplex, h: &[Matrix]) -> Result<UnitClass> {
    let ring = c.ring();
    if !ring.is_field() {
        return Err(Error::RequiresField(ring));
    }
    if h.len() != c.top() + 1 || !is_contraction(c, h) {
        return Err(Error::Internal("not a chain contraction".into()));
    }
    let top = c.top();
    let odd: Vec<usize> = (0..=top).rev().filter(|n| n % 2 == 1).collect();
    let even: Vec<usize> = (0..=top + 1).rev().filter(|n| n % 2 == 0).collect();
    let offsets = |degrees: &[usize]| {
        let mut acc = 0;
        degrees
            .iter()
            .map(|&n| {
                let o = acc;
                acc += c.rank(n);
                (n, o)
            })
            .collect::<Vec<_>>()
    };
    let (odd_off, even_off) = (offsets(&odd), offsets(&even));
    let rows: usize = even.iter().map(|&n| c.rank(n)).sum();
    let cols: usize = odd.iter().map(|&n| c.rank(n)).sum();
    if rows != cols {
        return Err(Error::Internal("odd and even ranks differ".into()));
    }
    let find = |table: &[(usize, usize)], n: usize| table.iter().find(|&&(m, _)| m == n).map(|&(_, o)| o);
    let mut m = Matrix::zeros(ring, rows, cols);
    for &(n, col) in &odd_off {
        if let Some(row) = find(&even_off, n - 1) {
            m.set_block(row, col, &c.differential(n));
        }
        if let Some(row) = find(&even_off, n + 1) {
            if n + 1 <= top {
                m.set_block(row, col, &h[n]);
            }
        }
    }
    let det = m.determinant();
    UnitClass::new(ring, det).map_err(|_| Error::Internal("singular torsion matrix".into()))
}

/// Torsion of an acyclic based complex. Over ℤ the value is computed
/// over ℚ and is ±1.
pub fn torsion(c: &ChainComplex) -> Result<UnitClass> {
    match c.ring() {
        Ring::Integers => {
            acyclic_or_err(c)?;
            let q = c.change_ring(Ring::Rationals)?;
            let t = torsion(&q)?;
            UnitClass::new(Ring::Integers, t.value)
        }
        _ => torsion_with(c, &standard_contraction(c)?),
    }
}

/// `torsion(⊥B) / torsion(⊤B)`.
pub fn k1_class(b: &BinaryComplex) -> Result<UnitClass> {
    if !b.ring().is_field() {
        return Err(Error::RequiresField(b.ring()));
    }
    if !b.is_biacyclic() {
        return Err(Error::NotBiacyclic);
    }
    Ok(torsion(&b.bottom())?.div(&torsion(&b.top())?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::cone_of_identity;
    use crate::linalg::int;

    fn q(rows: &[Vec<i64>]) -> Matrix {
        Matrix::from_i64(Ring::Rationals, rows)
    }

    #[test]
    fn torsion_of_multiplication() {
        let c = ChainComplex::two_term(q(&[vec![3]]));
        assert_eq!(torsion(&c).unwrap().value, int(3));
    }

    #[test]
    fn torsion_of_cone_of_identity_is_one() {
        let d1 = q(&[vec![1, 2]]);
        let c = ChainComplex::new(Ring::Rationals, vec![1, 2], vec![d1]).unwrap();
        assert!(torsion(&cone_of_identity(&c)).unwrap().is_one());
    }

    #[test]
    fn non_acyclic_rejected() {
        let c = ChainComplex::concentrated(Ring::Rationals, 0, 1);
        assert_eq!(torsion(&c), Err(Error::NotAcyclic(0)));
    }

    #[test]
    fn unit_complex_class() {
        let b = BinaryComplex::standard_unit_complex(Ring::Rationals, &int(5)).unwrap();
        assert!(b.is_biacyclic());
        assert_eq!(k1_class(&b).unwrap().value, int(5));
        let c = BinaryComplex::standard_unit_complex(Ring::Rationals, &int(2)).unwrap();
        assert_eq!(k1_class(&b.direct_sum(&c).unwrap()).unwrap().value, int(10));
    }

    #[test]
    fn diagonal_class_is_trivial() {
        let c = ChainComplex::two_term(q(&[vec![7]]));
        let b = BinaryComplex::diag(&c);
        assert_eq!(b.top(), c);
        assert_eq!(b.bottom(), c);
        assert!(k1_class(&b).unwrap().is_one());
    }

    #[test]
    fn bad_differential_named() {
        let one = q(&[vec![1]]);
        let zero = q(&[vec![0]]);
        let err = BinaryComplex::new(
            Ring::Rationals,
            vec![1, 1, 1],
            vec![zero.clone(), zero],
            vec![one.clone(), one],
        )
        .unwrap_err();
        assert_eq!(err, Error::NotABinaryComplex { which: "dtilde", lower: 1, upper: 2 });
    }

    #[test]
    fn integral_torsion_is_a_sign() {
        let c = ChainComplex::two_term(Matrix::from_i64(Ring::Integers, &[vec![-1]]));
        assert_eq!(torsion(&c).unwrap().value, int(-1));
    }

    #[test]
    fn binary_power_of_diagonal() {
        let c = ChainComplex::two_term(Matrix::from_i64(Ring::PrimeField(5), &[vec![2]]));
        let p = binary_power(&BinaryComplex::diag(&c), 2).unwrap();
        assert_eq!(p, BinaryComplex::diag(&dold_puppe_power(&c, 2).unwrap()));
    }
}
