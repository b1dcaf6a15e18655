use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::group::{FiniteGroup, GroupKind};
use crate::error::{Error, Result};
use crate::lambda::{evaluate_p_compose, LambdaPoint, LambdaRing};
use crate::linalg::{binomial, exterior_power_matrix, format_scalar, kronecker, Matrix, Ring, Scalar};

/// Ranks above this are refused by the composition check.
pub const MAX_COMPOSITE_RANK: usize = 5000;

/// Matrix representation `ρ : G → GL_n(R)`, one matrix per element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GRep {
    group: Arc<FiniteGroup>,
    ring: Ring,
    rank: usize,
    matrices: Vec<Matrix>,
}

impl GRep {
    /// Validates `ρ(e) = 1` and `ρ(gh) = ρ(g)ρ(h)` over the whole table.
    pub fn new(group: Arc<FiniteGroup>, ring: Ring, rank: usize, matrices: Vec<Matrix>) -> Result<Self> {
        if matrices.len() != group.order() {
            return Err(Error::NotAHomomorphism(format!(
                "{} matrices for a group of order {}",
                matrices.len(),
                group.order()
            )));
        }
        for (g, m) in matrices.iter().enumerate() {
            if m.ring() != ring {
                return Err(Error::RingMismatch(m.ring(), ring));
            }
            if m.shape() != (rank, rank) {
                return Err(Error::NotAHomomorphism(format!("matrix of element {g} is not {rank}x{rank}")));
            }
        }
        let rep = GRep {
            group,
            ring,
            rank,
            matrices,
        };
        rep.check_homomorphism()?;
        Ok(rep)
    }

    fn unchecked(group: Arc<FiniteGroup>, ring: Ring, rank: usize, matrices: Vec<Matrix>) -> Self {
        GRep {
            group,
            ring,
            rank,
            matrices,
        }
    }

    pub fn check_homomorphism(&self) -> Result<()> {
        if self.matrices[0] != Matrix::identity(self.ring, self.rank) {
            return Err(Error::NotAHomomorphism("identity does not act trivially".into()));
        }
        let n = self.group.order();
        for a in 0..n {
            for b in 0..n {
                let ab = self.group.mul(a, b);
                if &self.matrices[a] * &self.matrices[b] != self.matrices[ab] {
                    return Err(Error::NotAHomomorphism(format!("rho({a})rho({b}) != rho({ab})")));
                }
            }
        }
        Ok(())
    }

    /// Extends matrices given on generators to the whole group by walking
    /// the Cayley graph, then checks the result.
    pub fn from_generators(group: Arc<FiniteGroup>, ring: Ring, rank: usize, gens: &[(usize, Matrix)]) -> Result<Self> {
        let n = group.order();
        let mut matrices: Vec<Option<Matrix>> = vec![None; n];
        matrices[0] = Some(Matrix::identity(ring, rank));
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            let mx = matrices[x].clone().expect("visited");
            for (g, mg) in gens {
                if *g >= n {
                    return Err(Error::NotAHomomorphism(format!("generator {g} is not a group element")));
                }
                if mg.shape() != (rank, rank) || mg.ring() != ring {
                    return Err(Error::NotAHomomorphism(format!("matrix for generator {g} has the wrong shape")));
                }
                let y = group.mul(x, *g);
                let my = &mx * mg;
                match &matrices[y] {
                    Some(existing) if *existing != my => {
                        return Err(Error::NotAHomomorphism(format!("relation violated at element {y}")));
                    }
                    Some(_) => {}
                    None => {
                        matrices[y] = Some(my);
                        queue.push_back(y);
                    }
                }
            }
        }
        let matrices = matrices
            .into_iter()
            .enumerate()
            .map(|(g, m)| m.ok_or_else(|| Error::NotAHomomorphism(format!("generators do not reach element {g}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(group, ring, rank, matrices)
    }

    pub fn zero(group: Arc<FiniteGroup>, ring: Ring) -> Self {
        Self::trivial(group, ring, 0)
    }

    pub fn trivial(group: Arc<FiniteGroup>, ring: Ring, rank: usize) -> Self {
        let m = vec![Matrix::identity(ring, rank); group.order()];
        Self::unchecked(group, ring, rank, m)
    }

    /// Permutation representation; `action[g][i]` is the image of basis
    /// vector `i` under `g`.
    pub fn permutation(group: Arc<FiniteGroup>, ring: Ring, action: &[Vec<usize>]) -> Result<Self> {
        let rank = action.first().map_or(0, Vec::len);
        let matrices = action
            .iter()
            .map(|p| {
                let mut m = Matrix::zeros(ring, rank, rank);
                for (i, &j) in p.iter().enumerate() {
                    if j >= rank {
                        return Err(Error::NotAHomomorphism(format!("{j} is not a point")));
                    }
                    m[(j, i)] = ring.one();
                }
                Ok(m)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(group, ring, rank, matrices)
    }

    /// Left regular representation.
    pub fn regular(group: Arc<FiniteGroup>, ring: Ring) -> Self {
        let n = group.order();
        let action: Vec<Vec<usize>> = (0..n).map(|g| (0..n).map(|x| group.mul(g, x)).collect()).collect();
        Self::permutation(group, ring, &action).expect("left multiplication is an action")
    }

    /// The defining permutation representation of a symmetric group.
    pub fn natural(group: Arc<FiniteGroup>, ring: Ring) -> Result<Self> {
        let perms = group
            .permutations()
            .ok_or_else(|| Error::InvalidGroup(format!("{group} is not a permutation group")))?
            .to_vec();
        Self::permutation(group, ring, &perms)
    }

    /// One-dimensional representation from a value per element.
    pub fn one_dimensional(group: Arc<FiniteGroup>, ring: Ring, values: &[i64]) -> Result<Self> {
        let matrices = values.iter().map(|&v| Matrix::from_i64(ring, &[vec![v]])).collect();
        Self::new(group, ring, 1, matrices)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn matrix(&self, g: usize) -> &Matrix {
        &self.matrices[g]
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.matrices
    }

    fn compatible(&self, other: &GRep) -> Result<()> {
        if self.group != other.group || self.ring != other.ring {
            return Err(Error::GroupMismatch);
        }
        Ok(())
    }

    pub fn direct_sum(&self, other: &GRep) -> Result<GRep> {
        self.compatible(other)?;
        let m = self
            .matrices
            .iter()
            .zip(&other.matrices)
            .map(|(a, b)| a.block_diag(b))
            .collect();
        Ok(Self::unchecked(self.group.clone(), self.ring, self.rank + other.rank, m))
    }

    /// Diagonal action on `V ⊗ W`.
    pub fn tensor_rep(&self, other: &GRep) -> Result<GRep> {
        self.compatible(other)?;
        let m = self
            .matrices
            .iter()
            .zip(&other.matrices)
            .map(|(a, b)| kronecker(a, b))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::unchecked(self.group.clone(), self.ring, self.rank * other.rank, m))
    }

    /// Induced action on `Λ^k V`.
    pub fn exterior_rep(&self, k: usize) -> GRep {
        let m = self.matrices.iter().map(|a| exterior_power_matrix(a, k)).collect();
        Self::unchecked(self.group.clone(), self.ring, binomial(self.rank, k), m)
    }

    pub fn character(&self) -> Character {
        let values = self
            .group
            .representatives()
            .into_iter()
            .map(|g| trace(&self.matrices[g]))
            .collect();
        Character {
            ring: self.ring,
            values,
        }
    }

    /// Trace of `ρ(g)` for any element.
    pub fn trace_at(&self, g: usize) -> Scalar {
        trace(&self.matrices[g])
    }
}

fn trace(m: &Matrix) -> Scalar {
    let ring = m.ring();
    (0..m.rows()).fold(ring.zero(), |acc, i| ring.add(&acc, &m[(i, i)]))
}

/// Class function: one trace per conjugacy class, classes in the group's
/// order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    pub ring: Ring,
    pub values: Vec<Scalar>,
}

impl Character {
    pub fn zero(ring: Ring, classes: usize) -> Self {
        Character {
            ring,
            values: vec![ring.zero(); classes],
        }
    }

    pub fn add(&self, other: &Character) -> Character {
        self.zip(other, |r, a, b| r.add(a, b))
    }

    pub fn mul(&self, other: &Character) -> Character {
        self.zip(other, |r, a, b| r.mul(a, b))
    }

    pub fn scale(&self, c: &BigInt) -> Character {
        let c = self.ring.normalize(BigRational::from_integer(c.clone()));
        Character {
            ring: self.ring,
            values: self.values.iter().map(|v| self.ring.mul(v, &c)).collect(),
        }
    }

    fn zip(&self, other: &Character, f: impl Fn(&Ring, &Scalar, &Scalar) -> Scalar) -> Character {
        assert_eq!(self.values.len(), other.values.len(), "characters of different groups");
        Character {
            ring: self.ring,
            values: self.values.iter().zip(&other.values).map(|(a, b)| f(&self.ring, a, b)).collect(),
        }
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(format_scalar).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl Serialize for Character {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.values.iter().map(format_scalar))
    }
}

fn require_char_zero(group: &FiniteGroup, ring: Ring) -> Result<()> {
    if let Ring::PrimeField(_) = ring {
        return Err(Error::ModularCase {
            ring,
            order: group.order(),
        });
    }
    Ok(())
}

/// Formal ℤ-combination `Σ c_i [V_i]` in the representation ring.
#[derive(Clone, Debug)]
pub struct RepElement {
    group: Arc<FiniteGroup>,
    ring: Ring,
    terms: Vec<(BigInt, GRep)>,
}

impl RepElement {
    pub fn new(v: &GRep) -> Result<Self> {
        require_char_zero(&v.group, v.ring)?;
        Ok(RepElement {
            group: v.group.clone(),
            ring: v.ring,
            terms: vec![(BigInt::one(), v.clone())],
        })
    }

    pub fn from_terms(group: Arc<FiniteGroup>, ring: Ring, terms: Vec<(i64, GRep)>) -> Result<Self> {
        require_char_zero(&group, ring)?;
        for (_, v) in &terms {
            if *v.group != *group || v.ring != ring {
                return Err(Error::GroupMismatch);
            }
        }
        Ok(RepElement {
            group,
            ring,
            terms: terms.into_iter().map(|(c, v)| (BigInt::from(c), v)).collect(),
        })
    }

    pub fn terms(&self) -> &[(BigInt, GRep)] {
        &self.terms
    }

    pub fn character(&self) -> Character {
        self.terms.iter().fold(
            Character::zero(self.ring, self.group.classes().len()),
            |acc, (c, v)| acc.add(&v.character().scale(c)),
        )
    }

    /// Virtual rank.
    pub fn rank(&self) -> BigInt {
        self.terms.iter().map(|(c, v)| c * BigInt::from(v.rank())).sum()
    }

    fn simplified(mut self) -> Self {
        self.terms.retain(|(c, v)| !c.is_zero() && v.rank() > 0);
        self
    }

    /// Realizes a combination with nonnegative coefficients as one module.
    fn realize(&self) -> GRep {
        let mut out = GRep::zero(self.group.clone(), self.ring);
        for (c, v) in &self.terms {
            let mut copies = c.clone();
            while copies.is_positive() {
                out = out.direct_sum(v).expect("same group");
                copies -= 1;
            }
        }
        out
    }

    fn split_signs(&self) -> (RepElement, RepElement) {
        let part = |positive: bool| RepElement {
            group: self.group.clone(),
            ring: self.ring,
            terms: self
                .terms
                .iter()
                .filter(|(c, _)| c.is_positive() == positive && !c.is_zero())
                .map(|(c, v)| (c.abs(), v.clone()))
                .collect(),
        };
        (part(true), part(false))
    }

    /// `1 + λ^1 t + … + λ^k t^k` of a realizable element.
    fn lambda_series(&self, k: usize) -> Vec<RepElement> {
        let v = self.realize();
        (0..=k)
            .map(|i| RepElement {
                group: self.group.clone(),
                ring: self.ring,
                terms: vec![(BigInt::one(), v.exterior_rep(i))],
            })
            .collect()
    }
}

/// Equality in `K₀` of representations, decided by characters.
pub fn k0_equal(x: &RepElement, y: &RepElement) -> Result<bool> {
    if x.group != y.group || x.ring != y.ring {
        return Err(Error::GroupMismatch);
    }
    require_char_zero(&x.group, x.ring)?;
    Ok(x.character() == y.character())
}

impl LambdaRing for RepElement {
    fn zero_like(&self) -> Self {
        RepElement {
            group: self.group.clone(),
            ring: self.ring,
            terms: vec![],
        }
    }

    fn one_like(&self) -> Self {
        RepElement {
            group: self.group.clone(),
            ring: self.ring,
            terms: vec![(BigInt::one(), GRep::trivial(self.group.clone(), self.ring, 1))],
        }
    }

    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.terms.extend(other.terms.iter().cloned());
        out.simplified()
    }

    fn mul(&self, other: &Self) -> Self {
        let mut out = self.zero_like();
        for (a, v) in &self.terms {
            for (b, w) in &other.terms {
                out.terms.push((a * b, v.tensor_rep(w).expect("same group")));
            }
        }
        out.simplified()
    }

    fn scale(&self, c: &BigInt) -> Self {
        let mut out = self.clone();
        for (x, _) in &mut out.terms {
            *x *= c;
        }
        out.simplified()
    }

    /// Exterior power of the realized module; negative parts go through
    /// the inverse of their `λ_t` series.
    fn lambda(&self, k: usize) -> Self {
        let (pos, neg) = self.split_signs();
        let p = pos.lambda_series(k);
        if neg.terms.is_empty() {
            return p[k].clone();
        }
        let a = neg.lambda_series(k);
        let mut b = vec![self.one_like()];
        for n in 1..=k {
            let mut acc = self.zero_like();
            for i in 1..=n {
                acc = acc.add(&a[i].mul(&b[n - i]));
            }
            b.push(acc.scale(&BigInt::from(-1)));
        }
        (0..=k).fold(self.zero_like(), |acc, i| acc.add(&p[i].mul(&b[k - i])))
    }

    fn same(&self, other: &Self) -> bool {
        self.character() == other.character()
    }
}

/// Outcome of the composition check on one representation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompositionCheck {
    pub k: usize,
    pub l: usize,
    pub lhs: Character,
    pub rhs: Character,
    pub holds: bool,
}

/// `λ^k(λ^l[V]) = P_{k,l}([Λ^1 V], …, [Λ^{kl} V])` in the representation
/// ring: the left side is the module `Λ^k(Λ^l V)`, the right side is
/// evaluated with tensor products and formal sums.
pub fn verify_composition_rg(v: &GRep, k: usize, l: usize) -> Result<CompositionCheck> {
    require_char_zero(&v.group, v.ring)?;
    let composite = binomial(binomial(v.rank, l), k);
    if composite > MAX_COMPOSITE_RANK || k * l > 12 {
        return Err(Error::InfeasibleSize(format!(
            "rank {composite} for k = {k}, l = {l} on a rank {} representation",
            v.rank
        )));
    }
    let coords = (1..=k * l)
        .map(|i| RepElement::new(&v.exterior_rep(i)))
        .collect::<Result<Vec<_>>>()?;
    let point = LambdaPoint::with_coordinates(RepElement::new(v)?, coords);
    let rhs = evaluate_p_compose(&point, k, l)?;
    let lhs = RepElement::new(&v.exterior_rep(l).exterior_rep(k))?;
    let holds = k0_equal(&lhs, &rhs)?;
    Ok(CompositionCheck {
        k,
        l,
        lhs: lhs.character(),
        rhs: rhs.character(),
        holds,
    })
}

/// Irreducible representations over ℚ of a preset group, with names.
/// Complete for cyclic groups, the Klein group and `S_n` with `n ≤ 3`.
pub fn rational_irreducibles(group: &Arc<FiniteGroup>, ring: Ring) -> Result<Vec<(String, GRep)>> {
    let g = group.clone();
    match group.kind() {
        GroupKind::Cyclic(n) => {
            let n = *n;
            let mut out = Vec::new();
            for d in (1..=n).filter(|d| n % d == 0) {
                let phi = cyclotomic(d);
                let deg = phi.len() - 1;
                let mut m = Matrix::zeros(ring, deg, deg);
                // companion matrix of Φ_d
                for i in 1..deg {
                    m[(i, i - 1)] = ring.one();
                }
                for i in 0..deg {
                    m[(i, deg - 1)] = ring.from_i64(-phi[i]);
                }
                out.push((format!("cyclotomic{d}"), GRep::from_generators(g.clone(), ring, deg, &[(1 % n, m)])?));
            }
            Ok(out)
        }
        GroupKind::Klein4 => {
            let mut out = Vec::new();
            for (name, s) in [("trivial", [1, 1]), ("sign_a", [-1, 1]), ("sign_b", [1, -1]), ("sign_ab", [-1, -1])] {
                let values: Vec<i64> = (0..4).map(|x| if x >> 1 == 1 { s[0] } else { 1 } * if x & 1 == 1 { s[1] } else { 1 }).collect();
                out.push((name.to_string(), GRep::one_dimensional(g.clone(), ring, &values)?));
            }
            Ok(out)
        }
        GroupKind::Symmetric(n) => {
            let n = *n;
            let perms = group.permutations().expect("symmetric").to_vec();
            let signs: Vec<i64> = perms.iter().map(|p| parity(p)).collect();
            let mut out = vec![
                ("trivial".to_string(), GRep::trivial(g.clone(), ring, 1)),
                ("sign".to_string(), GRep::one_dimensional(g.clone(), ring, &signs)?),
            ];
            if n >= 3 {
                out.push(("standard".to_string(), standard(&g, ring, &perms)?));
            }
            if n == 1 {
                out.truncate(1);
            }
            Ok(out)
        }
        GroupKind::Table => Err(Error::InvalidGroup("irreducibles are only tabulated for presets".into())),
    }
}

/// Sum-zero part of the natural representation in the basis
/// `e_i - e_{i+1}`.
fn standard(group: &Arc<FiniteGroup>, ring: Ring, perms: &[Vec<usize>]) -> Result<GRep> {
    let n = perms[0].len();
    let basis: Vec<Vec<Scalar>> = (0..n - 1)
        .map(|i| {
            let mut v = vec![ring.zero(); n];
            v[i] = ring.one();
            v[i + 1] = ring.from_i64(-1);
            v
        })
        .collect();
    let b = Matrix::from_columns(ring, n, &basis);
    let natural = GRep::natural(group.clone(), ring)?;
    let matrices = natural
        .matrices()
        .iter()
        .map(|p| crate::linalg::solve(&b, &(p * &b)))
        .collect::<Result<Vec<_>>>()?;
    GRep::new(group.clone(), ring, n - 1, matrices)
}

fn parity(p: &[usize]) -> i64 {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Coefficients of `Φ_d`, constant term first.
fn cyclotomic(d: usize) -> Vec<i64> {
    // x^d - 1 divided by Φ_e for every proper divisor e
    let mut num = vec![0i64; d + 1];
    num[0] = -1;
    num[d] = 1;
    for e in (1..d).filter(|e| d % e == 0) {
        num = divide(&num, &cyclotomic(e));
    }
    num
}

fn divide(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let (n, m) = (num.len() - 1, den.len() - 1);
    let mut q = vec![0i64; n - m + 1];
    for i in (0..=n - m).rev() {
        let c = rem[i + m] / den[m];
        q[i] = c;
        for j in 0..=m {
            rem[i + j] -= c * den[j];
        }
    }
    q
}

/// Standard test representations of a preset: the regular representation,
/// the natural one for symmetric groups and the rational irreducibles.
pub fn standard_reps(group: &Arc<FiniteGroup>, ring: Ring) -> Result<Vec<(String, GRep)>> {
    let mut out = vec![("regular".to_string(), GRep::regular(group.clone(), ring))];
    if group.permutations().is_some() {
        out.push(("natural".to_string(), GRep::natural(group.clone(), ring)?));
    }
    out.extend(rational_irreducibles(group, ring)?);
    Ok(out)
}
