//! Bounded, non-negatively supported chain complexes of based free modules.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    cokernel_projection, format_scalar, invariant_factors, is_split_injective, kronecker, Matrix,
    Ring,
};

/// Chain complex `C_top → … → C_1 → C_0` of free modules. `diffs[i - 1]`
/// is the matrix of `d_i : C_i → C_{i-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChainComplex {
    ring: Ring,
    ranks: Vec<usize>,
    diffs: Vec<Matrix>,
}

/// Homology group presented as free rank plus torsion coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Homology {
    pub free_rank: usize,
    pub torsion: Vec<String>,
}

impl Homology {
    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

/// Class in K₀ of based free modules over a PID, i.e. a rank in ℤ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct K0Class {
    pub ring: Ring,
    pub value: i64,
}

impl ChainComplex {
    pub fn new(ring: Ring, ranks: Vec<usize>, diffs: Vec<Matrix>) -> Result<Self> {
        if ranks.is_empty() {
            return Err(Error::Dimension("a complex needs at least degree 0".into()));
        }
        if diffs.len() + 1 != ranks.len() {
            return Err(Error::Dimension(format!(
                "{} degrees need {} differentials, got {}",
                ranks.len(),
                ranks.len() - 1,
                diffs.len()
            )));
        }
        for (i, d) in diffs.iter().enumerate() {
            let n = i + 1;
            if d.ring() != ring {
                return Err(Error::RingMismatch(ring, d.ring()));
            }
            if d.shape() != (ranks[n - 1], ranks[n]) {
                return Err(Error::Dimension(format!(
                    "d_{n} must be {}x{}, got {}x{}",
                    ranks[n - 1],
                    ranks[n],
                    d.rows(),
                    d.cols()
                )));
            }
        }
        for n in 2..ranks.len() {
            if !(&diffs[n - 2] * &diffs[n - 1]).is_zero() {
                return Err(Error::NotAComplex {
                    lower: n - 1,
                    upper: n,
                });
            }
        }
        Ok(ChainComplex { ring, ranks, diffs })
    }

    pub fn zero(ring: Ring) -> Self {
        ChainComplex {
            ring,
            ranks: vec![0],
            diffs: vec![],
        }
    }

    /// `R^rank` placed in a single degree.
    pub fn concentrated(ring: Ring, degree: usize, rank: usize) -> Self {
        let mut ranks = vec![0; degree + 1];
        ranks[degree] = rank;
        let diffs = (1..=degree)
            .map(|n| Matrix::zeros(ring, ranks[n - 1], ranks[n]))
            .collect();
        ChainComplex { ring, ranks, diffs }
    }

    /// Two-term complex `d : C_1 → C_0`.
    pub fn two_term(d: Matrix) -> Self {
        ChainComplex {
            ring: d.ring(),
            ranks: vec![d.rows(), d.cols()],
            diffs: vec![d],
        }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    /// Highest possibly-nonzero degree.
    pub fn top(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn rank(&self, n: usize) -> usize {
        self.ranks.get(n).copied().unwrap_or(0)
    }

    /// `d_n : C_n → C_{n-1}`; zero maps outside the support.
    pub fn differential(&self, n: usize) -> Matrix {
        if n >= 1 && n <= self.top() {
            self.diffs[n - 1].clone()
        } else {
            Matrix::zeros(
                self.ring,
                if n == 0 { 0 } else { self.rank(n - 1) },
                self.rank(n),
            )
        }
    }

    pub fn differentials(&self) -> &[Matrix] {
        &self.diffs
    }

    pub fn total_rank(&self) -> usize {
        self.ranks.iter().sum()
    }

    /// Same complex with the support extended by zero modules up to `top`.
    pub fn padded(&self, top: usize) -> Self {
        let mut c = self.clone();
        while c.top() < top {
            let n = c.top() + 1;
            c.diffs.push(Matrix::zeros(self.ring, c.ranks[n - 1], 0));
            c.ranks.push(0);
        }
        c
    }

    /// Drops trailing zero modules (keeps degree 0).
    pub fn trimmed(&self) -> Self {
        let mut c = self.clone();
        while c.top() > 0 && c.ranks[c.top()] == 0 {
            c.ranks.pop();
            c.diffs.pop();
        }
        c
    }

    pub fn homology(&self, n: usize) -> Result<Homology> {
        if n > self.top() {
            return Err(Error::DegreeOutOfRange {
                degree: n,
                top: self.top(),
            });
        }
        let outgoing = self.differential(n).rank();
        let incoming = self.differential(n + 1);
        let factors = invariant_factors(&incoming);
        let torsion = factors
            .iter()
            .filter(|x| !self.ring.is_unit(x))
            .map(format_scalar)
            .collect();
        Ok(Homology {
            free_rank: self.rank(n) - outgoing - factors.len(),
            torsion,
        })
    }

    pub fn homology_all(&self) -> Vec<Homology> {
        (0..=self.top())
            .map(|n| self.homology(n).expect("degree in range"))
            .collect()
    }

    pub fn is_acyclic(&self) -> bool {
        (0..=self.top()).all(|n| self.homology(n).expect("degree in range").is_zero())
    }

    pub fn euler_characteristic(&self) -> K0Class {
        let value = self
            .ranks
            .iter()
            .enumerate()
            .map(|(i, &r)| if i % 2 == 0 { r as i64 } else { -(r as i64) })
            .sum();
        K0Class {
            ring: self.ring,
            value,
        }
    }

    /// `C[-1]`: degree n holds `C_{n-1}`, differentials negated.
    pub fn shift_left(&self) -> Self {
        let mut ranks = vec![0];
        ranks.extend_from_slice(&self.ranks);
        let mut diffs = vec![Matrix::zeros(self.ring, 0, self.ranks[0])];
        diffs.extend(self.diffs.iter().map(Matrix::neg));
        ChainComplex {
            ring: self.ring,
            ranks,
            diffs,
        }
    }

    /// Degreewise direct sum, `self` block first.
    pub fn direct_sum(&self, other: &ChainComplex) -> Result<Self> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring, other.ring));
        }
        let top = self.top().max(other.top());
        let (a, b) = (self.padded(top), other.padded(top));
        let ranks = (0..=top).map(|n| a.rank(n) + b.rank(n)).collect();
        let diffs = (1..=top)
            .map(|n| a.differential(n).block_diag(&b.differential(n)))
            .collect();
        Ok(ChainComplex {
            ring: self.ring,
            ranks,
            diffs,
        })
    }

    /// Total complex of the tensor product, `d(x⊗y) = dx⊗y + (-1)^i x⊗dy`.
    /// Degree n is ordered by `i` ascending, each block `C_i ⊗ D_{n-i}` in
    /// Kronecker order.
    pub fn tensor_total(&self, other: &ChainComplex) -> Result<Self> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring, other.ring));
        }
        let ring = self.ring;
        let top = self.top() + other.top();
        let blocks = |n: usize| -> Vec<(usize, usize, usize)> {
            // (i, j, offset)
            let mut off = 0;
            let mut v = Vec::new();
            for i in 0..=n.min(self.top()) {
                let j = n - i;
                if j > other.top() {
                    continue;
                }
                v.push((i, j, off));
                off += self.rank(i) * other.rank(j);
            }
            v
        };
        let ranks: Vec<usize> = (0..=top)
            .map(|n| blocks(n).iter().map(|&(i, j, _)| self.rank(i) * other.rank(j)).sum())
            .collect();
        let mut diffs = Vec::new();
        for n in 1..=top {
            let mut d = Matrix::zeros(ring, ranks[n - 1], ranks[n]);
            let lower = blocks(n - 1);
            let offset_of = |i: usize, j: usize| {
                lower
                    .iter()
                    .find(|&&(a, b, _)| a == i && b == j)
                    .map(|&(_, _, o)| o)
            };
            for (i, j, col) in blocks(n) {
                if i >= 1 {
                    if let Some(row) = offset_of(i - 1, j) {
                        let block = kronecker(&self.differential(i), &Matrix::identity(ring, other.rank(j)))?;
                        d.set_block(row, col, &block);
                    }
                }
                if j >= 1 {
                    if let Some(row) = offset_of(i, j - 1) {
                        let mut block = kronecker(&Matrix::identity(ring, self.rank(i)), &other.differential(j))?;
                        if i % 2 == 1 {
                            block = block.neg();
                        }
                        d.set_block(row, col, &block);
                    }
                }
            }
            diffs.push(d);
        }
        ChainComplex::new(ring, ranks, diffs)
    }

    /// Same differentials read in another ring (reduction mod p, or ℤ ⊂ ℚ).
    pub fn change_ring(&self, ring: Ring) -> Result<Self> {
        let diffs = self
            .diffs
            .iter()
            .map(|d| d.change_ring(ring))
            .collect::<Result<Vec<_>>>()?;
        ChainComplex::new(ring, self.ranks.clone(), diffs)
    }

    /// Conjugates by degreewise invertible matrices: the result has
    /// differentials `g_{n-1} d_n g_n^{-1}`; returns it with the chain
    /// isomorphism `g` from `self`.
    pub fn conjugate(&self, g: Vec<Matrix>) -> Result<(ChainComplex, ChainMap)> {
        if g.len() != self.top() + 1 {
            return Err(Error::Dimension("one matrix per degree required".into()));
        }
        let inverses = g
            .iter()
            .map(|m| m.inverse().ok_or_else(|| Error::Dimension("not invertible".into())))
            .collect::<Result<Vec<_>>>()?;
        let diffs = (1..=self.top())
            .map(|n| &(&g[n - 1] * &self.diffs[n - 1]) * &inverses[n])
            .collect();
        let target = ChainComplex::new(self.ring, self.ranks.clone(), diffs)?;
        let map = ChainMap::new(self.clone(), target.clone(), g)?;
        Ok((target, map))
    }
}

/// Degreewise maps `f_n : C_n → D_n` commuting with the differentials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    source: ChainComplex,
    target: ChainComplex,
    components: Vec<Matrix>,
}

impl ChainMap {
    /// `components[n]` for `n` in `0..=max(top)`; the shorter complex is
    /// padded with zero modules.
    pub fn new(source: ChainComplex, target: ChainComplex, components: Vec<Matrix>) -> Result<Self> {
        if source.ring != target.ring {
            return Err(Error::RingMismatch(source.ring, target.ring));
        }
        let top = source.top().max(target.top());
        let source = source.padded(top);
        let target = target.padded(top);
        if components.len() != top + 1 {
            return Err(Error::Dimension(format!(
                "chain map needs {} components, got {}",
                top + 1,
                components.len()
            )));
        }
        for (n, f) in components.iter().enumerate() {
            if f.shape() != (target.rank(n), source.rank(n)) {
                return Err(Error::Dimension(format!(
                    "f_{n} must be {}x{}",
                    target.rank(n),
                    source.rank(n)
                )));
            }
        }
        for n in 1..=top {
            let lhs = &components[n - 1] * &source.differential(n);
            let rhs = &target.differential(n) * &components[n];
            if lhs != rhs {
                return Err(Error::NotAChainMap(n));
            }
        }
        Ok(ChainMap {
            source,
            target,
            components,
        })
    }

    pub fn identity(c: &ChainComplex) -> Self {
        let components = (0..=c.top())
            .map(|n| Matrix::identity(c.ring, c.rank(n)))
            .collect();
        ChainMap {
            source: c.clone(),
            target: c.clone(),
            components,
        }
    }

    pub fn zero(source: &ChainComplex, target: &ChainComplex) -> Self {
        let top = source.top().max(target.top());
        let (s, t) = (source.padded(top), target.padded(top));
        let components = (0..=top)
            .map(|n| Matrix::zeros(s.ring, t.rank(n), s.rank(n)))
            .collect();
        ChainMap {
            source: s,
            target: t,
            components,
        }
    }

    pub fn source(&self) -> &ChainComplex {
        &self.source
    }

    pub fn target(&self) -> &ChainComplex {
        &self.target
    }

    pub fn ring(&self) -> Ring {
        self.source.ring
    }

    pub fn components(&self) -> &[Matrix] {
        &self.components
    }

    pub fn component(&self, n: usize) -> Matrix {
        self.components.get(n).cloned().unwrap_or_else(|| {
            Matrix::zeros(self.ring(), self.target.rank(n), self.source.rank(n))
        })
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &ChainMap) -> Result<ChainMap> {
        let top = self.source.top().max(first.target.top());
        if self.source.padded(top) != first.target.padded(top) {
            return Err(Error::Dimension("maps are not composable".into()));
        }
        let top = top.max(first.source.top()).max(self.target.top());
        let components = (0..=top)
            .map(|n| &self.component(n) * &first.component(n))
            .collect();
        ChainMap::new(first.source.clone(), self.target.clone(), components)
    }

    /// Mapping cone: degree n is `target_n ⊕ source_{n-1}` with
    /// differential `[[d', f], [0, -d]]`.
    pub fn cone(&self) -> ChainComplex {
        let ring = self.ring();
        let (s, t) = (&self.source, &self.target);
        let top = t.top().max(s.top() + 1);
        let rank = |n: usize| t.rank(n) + if n >= 1 { s.rank(n - 1) } else { 0 };
        let ranks: Vec<usize> = (0..=top).map(rank).collect();
        let mut diffs = Vec::new();
        for n in 1..=top {
            let mut d = Matrix::zeros(ring, ranks[n - 1], ranks[n]);
            d.set_block(0, 0, &t.differential(n));
            d.set_block(0, t.rank(n), &self.component(n - 1));
            if n >= 2 {
                d.set_block(t.rank(n - 1), t.rank(n), &s.differential(n - 1).neg());
            }
            diffs.push(d);
        }
        ChainComplex::new(ring, ranks, diffs).expect("cone of a chain map is a complex")
    }

    /// Quasi-isomorphism test: the mapping cone is acyclic.
    pub fn is_quasi_iso(&self) -> bool {
        self.cone().is_acyclic()
    }

    /// True when every component is split injective (free cokernel).
    pub fn is_admissible_mono(&self) -> bool {
        self.components.iter().all(is_split_injective)
    }

    /// Quotient complex `target / source` of an admissible monomorphism,
    /// with the projection chain map.
    pub fn quotient(&self) -> Result<(ChainComplex, ChainMap)> {
        let ring = self.ring();
        let top = self.target.top();
        let mut projections = Vec::new();
        let mut sections = Vec::new();
        for n in 0..=top {
            let f = self.component(n);
            let p = cokernel_projection(&f)
                .map_err(|_| Error::InadmissibleMono(format!("component in degree {n}")))?;
            let s = right_inverse(&p)?;
            projections.push(p);
            sections.push(s);
        }
        let ranks: Vec<usize> = projections.iter().map(Matrix::rows).collect();
        let diffs = (1..=top)
            .map(|n| &(&projections[n - 1] * &self.target.differential(n)) * &sections[n])
            .collect();
        let q = ChainComplex::new(ring, ranks, diffs)?;
        let pi = ChainMap::new(self.target.clone(), q.clone(), projections)?;
        Ok((q, pi))
    }
}

/// Right inverse of a surjective matrix (free cokernel case).
pub(crate) fn right_inverse(p: &Matrix) -> Result<Matrix> {
    let snf = crate::linalg::smith_normal_form(p);
    if snf.rank() != p.rows() || !snf.diag.iter().all(|x| p.ring().is_unit(x)) {
        return Err(Error::Internal("projection is not surjective".into()));
    }
    // L p R = [D | 0]  =>  p (R [D^{-1} L ; 0]) = id
    let ring = p.ring();
    let mut top = Matrix::zeros(ring, p.cols(), p.rows());
    for i in 0..p.rows() {
        let inv = ring.inv(&snf.diag[i]);
        for j in 0..p.rows() {
            top[(i, j)] = ring.mul(&inv, &snf.left[(i, j)]);
        }
    }
    Ok(&snf.right * &top)
}

/// Cone of the identity: contractible, sits in `0 → C → cone(id) → C[-1] → 0`.
pub fn cone_of_identity(c: &ChainComplex) -> ChainComplex {
    ChainMap::identity(c).cone()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn times(ring: Ring, a: i64) -> ChainComplex {
        ChainComplex::two_term(Matrix::from_i64(ring, &[vec![a]]))
    }

    #[test]
    fn homology_of_multiplication_by_two() {
        let c = times(Ring::Integers, 2);
        let h0 = c.homology(0).unwrap();
        assert_eq!(h0.free_rank, 0);
        assert_eq!(h0.torsion, vec!["2".to_string()]);
        assert!(c.homology(1).unwrap().is_zero());
        assert!(matches!(c.homology(2), Err(Error::DegreeOutOfRange { .. })));
    }

    #[test]
    fn zero_complex_has_no_homology() {
        let z = ChainComplex::zero(Ring::Integers);
        assert!(z.homology(0).unwrap().is_zero());
        assert_eq!(z.euler_characteristic().value, 0);
    }

    #[test]
    fn square_zero_enforced() {
        let d1 = Matrix::from_i64(Ring::Integers, &[vec![1]]);
        let d2 = Matrix::from_i64(Ring::Integers, &[vec![1]]);
        assert_eq!(
            ChainComplex::new(Ring::Integers, vec![1, 1, 1], vec![d1, d2]),
            Err(Error::NotAComplex { lower: 1, upper: 2 })
        );
    }

    #[test]
    fn cone_of_identity_on_a_point() {
        let c = ChainComplex::concentrated(Ring::Integers, 0, 1);
        let cone = cone_of_identity(&c);
        assert_eq!(cone.ranks(), &[1, 1]);
        assert_eq!(cone.differential(1), Matrix::identity(Ring::Integers, 1));
        assert!(cone.is_acyclic());
        assert_eq!(cone.euler_characteristic().value, 0);
    }

    #[test]
    fn cone_of_zero_map_is_shift() {
        let c = times(Ring::Integers, 3);
        let zero = ChainComplex::zero(Ring::Integers);
        let cone = ChainMap::zero(&c, &zero).cone();
        assert_eq!(cone, c.shift_left());
    }

    #[test]
    fn shift_reindexes() {
        let c = times(Ring::Integers, 2);
        let s = c.shift_left();
        assert_eq!(s.euler_characteristic().value, -c.euler_characteristic().value);
        assert_eq!(s.homology(1).unwrap().torsion, vec!["2".to_string()]);
        assert_eq!(ChainComplex::zero(Ring::Integers).shift_left().total_rank(), 0);
    }

    #[test]
    fn euler_examples() {
        assert_eq!(ChainComplex::concentrated(Ring::Integers, 0, 2).euler_characteristic().value, 2);
        assert_eq!(times(Ring::Integers, 2).euler_characteristic().value, 0);
    }

    #[test]
    fn quasi_iso_examples() {
        let c = times(Ring::Integers, 2);
        assert!(ChainMap::identity(&c).is_quasi_iso());

        let contractible = cone_of_identity(&ChainComplex::concentrated(Ring::Integers, 0, 1));
        let zero = ChainComplex::zero(Ring::Integers);
        assert!(ChainMap::zero(&zero, &contractible).is_quasi_iso());

        // (·2) → (·2) with f_1 = 1, f_0 = 1 is the identity; changing both
        // entries to 3 is still a chain map but multiplies H_0 = ℤ/2 by 3,
        // an iso; multiplying by 2 kills it.
        let f = ChainMap::new(
            c.clone(),
            c.clone(),
            vec![Matrix::from_i64(Ring::Integers, &[vec![2]]), Matrix::from_i64(Ring::Integers, &[vec![2]])],
        )
        .unwrap();
        assert!(!f.is_quasi_iso());
    }

    #[test]
    fn tensor_with_unit_is_identity() {
        let c = times(Ring::Integers, 2).direct_sum(&ChainComplex::concentrated(Ring::Integers, 1, 2)).unwrap();
        let unit = ChainComplex::concentrated(Ring::Integers, 0, 1);
        assert_eq!(c.tensor_total(&unit).unwrap(), c);
    }

    #[test]
    fn tensor_of_torsion_complexes() {
        // H_0((·2) ⊗ (·3)) = ℤ/2 ⊗ ℤ/3 = 0, H_1 = Tor(ℤ/2, ℤ/3) = 0.
        let t = times(Ring::Integers, 2).tensor_total(&times(Ring::Integers, 3)).unwrap();
        assert!(t.is_acyclic());
        // H_0((·2) ⊗ (·4)) = ℤ/2, H_1 = Tor(ℤ/2, ℤ/4) = ℤ/2
        let t = times(Ring::Integers, 2).tensor_total(&times(Ring::Integers, 4)).unwrap();
        assert_eq!(t.homology(0).unwrap().torsion, vec!["2".to_string()]);
        assert_eq!(t.homology(1).unwrap().torsion, vec!["2".to_string()]);
        assert!(t.homology(2).unwrap().is_zero());
    }

    #[test]
    fn quotient_by_subcomplex() {
        let c = times(Ring::Integers, 1);
        let big = c.direct_sum(&times(Ring::Integers, 2)).unwrap();
        let incl = ChainMap::new(
            c.clone(),
            big.clone(),
            vec![
                Matrix::from_i64(Ring::Integers, &[vec![1], vec![0]]),
                Matrix::from_i64(Ring::Integers, &[vec![1], vec![0]]),
            ],
        )
        .unwrap();
        assert!(incl.is_admissible_mono());
        let (q, pi) = incl.quotient().unwrap();
        assert_eq!(q.ranks(), &[1, 1]);
        assert_eq!(q.homology(0).unwrap().torsion, vec!["2".to_string()]);
        assert!(pi.compose(&incl).unwrap().components().iter().all(Matrix::is_zero));
    }
}
