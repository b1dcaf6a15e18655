//! Dold-Kan correspondence, the diagonal tensor product and Dold-Puppe
//! powers of complexes and chain maps.
//!
//! `Γ(C)_n` is the direct sum, over surjections `σ : [n] ↠ [m]`, of copies
//! of `C_m`. A surjection is stored as its jump set `{t : σ(t+1) > σ(t)}`.
//! Summands are ordered by `m`, then by jump set (lexicographic); basis
//! vectors inside a summand follow the basis of `C_m`. The normalization
//! convention is `N_n = ⋂_{i ≥ 1} ker d_i` with differential `d_0`, and Γ
//! is built to match it, so `N(Γ(C)) = C` on the nose.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;

use crate::complex::{ChainComplex, ChainMap};
use crate::error::{Error, Result};
use crate::linalg::{
    binomial, exterior_power_matrix, image_basis, is_split_injective, kernel_basis, kronecker,
    solve, subsets, sym_columns, symmetric_power_matrix, wedge_columns, Matrix, Ring,
    Scalar,
};

/// Which levelwise functor a power construction applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PowerKind {
    Exterior,
    Symmetric,
}

/// Simplicial module truncated at a level bound. `faces[n][i]` is
/// `d_i : A_n → A_{n-1}` (empty for n = 0), `degens[n][j]` is
/// `s_j : A_n → A_{n+1}` (empty at the bound).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialModule {
    ring: Ring,
    ranks: Vec<usize>,
    faces: Vec<Vec<Matrix>>,
    degens: Vec<Vec<Matrix>>,
}

impl SimplicialModule {
    pub fn new(
        ring: Ring,
        ranks: Vec<usize>,
        faces: Vec<Vec<Matrix>>,
        degens: Vec<Vec<Matrix>>,
    ) -> Result<Self> {
        let a = Self::from_parts(ring, ranks, faces, degens)?;
        a.check_identities()?;
        Ok(a)
    }

    fn from_parts(
        ring: Ring,
        ranks: Vec<usize>,
        faces: Vec<Vec<Matrix>>,
        degens: Vec<Vec<Matrix>>,
    ) -> Result<Self> {
        let levels = ranks.len();
        if levels == 0 || faces.len() != levels || degens.len() != levels {
            return Err(Error::Dimension("one entry per level required".into()));
        }
        for n in 0..levels {
            let want_faces = if n == 0 { 0 } else { n + 1 };
            let want_degens = if n + 1 == levels { 0 } else { n + 1 };
            if faces[n].len() != want_faces || degens[n].len() != want_degens {
                return Err(Error::Dimension(format!("wrong number of structure maps at level {n}")));
            }
            for d in &faces[n] {
                if d.shape() != (ranks[n - 1], ranks[n]) || d.ring() != ring {
                    return Err(Error::Dimension(format!("bad face at level {n}")));
                }
            }
            for s in &degens[n] {
                if s.shape() != (ranks[n + 1], ranks[n]) || s.ring() != ring {
                    return Err(Error::Dimension(format!("bad degeneracy at level {n}")));
                }
            }
        }
        Ok(SimplicialModule {
            ring,
            ranks,
            faces,
            degens,
        })
    }

    /// Verifies every simplicial identity as a matrix equation.
    pub fn check_identities(&self) -> Result<()> {
        let bound = self.bound();
        let fail = |identity: &str, level: usize| Error::SimplicialIdentity {
            identity: identity.to_string(),
            level,
        };
        for n in 2..=bound {
            for j in 0..=n {
                for i in 0..j {
                    if &self.faces[n - 1][i] * &self.faces[n][j] != &self.faces[n - 1][j - 1] * &self.faces[n][i] {
                        return Err(fail(&format!("d{i} d{j} = d{} d{i}", j - 1), n));
                    }
                }
            }
        }
        for n in 0..bound {
            let id = Matrix::identity(self.ring, self.ranks[n]);
            for j in 0..=n {
                let s = &self.degens[n][j];
                for i in 0..=n + 1 {
                    let lhs = &self.faces[n + 1][i] * s;
                    let ok = if i < j {
                        lhs == &self.degens[n - 1][j - 1] * &self.faces[n][i]
                    } else if i == j || i == j + 1 {
                        lhs == id
                    } else {
                        lhs == &self.degens[n - 1][j] * &self.faces[n][i - 1]
                    };
                    if !ok {
                        return Err(fail(&format!("d{i} s{j}"), n));
                    }
                }
            }
            if n + 1 < bound {
                for j in 0..=n {
                    for i in 0..=j {
                        if &self.degens[n + 1][i] * &self.degens[n][j] != &self.degens[n + 1][j + 1] * &self.degens[n][i] {
                            return Err(fail(&format!("s{i} s{j} = s{} s{i}", j + 1), n));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    /// Highest level carried.
    pub fn bound(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn face(&self, n: usize, i: usize) -> &Matrix {
        &self.faces[n][i]
    }

    pub fn degeneracy(&self, n: usize, j: usize) -> &Matrix {
        &self.degens[n][j]
    }

    /// Constant simplicial module on `R^rank`.
    pub fn constant(ring: Ring, rank: usize, bound: usize) -> Self {
        let id = Matrix::identity(ring, rank);
        let faces = (0..=bound)
            .map(|n| if n == 0 { vec![] } else { vec![id.clone(); n + 1] })
            .collect();
        let degens = (0..=bound)
            .map(|n| if n == bound { vec![] } else { vec![id.clone(); n + 1] })
            .collect();
        SimplicialModule {
            ring,
            ranks: vec![rank; bound + 1],
            faces,
            degens,
        }
    }

    fn map_levels(&self, f: impl Fn(&Matrix) -> Matrix, ranks: Vec<usize>) -> Self {
        SimplicialModule {
            ring: self.ring,
            ranks,
            faces: self.faces.iter().map(|v| v.iter().map(&f).collect()).collect(),
            degens: self.degens.iter().map(|v| v.iter().map(&f).collect()).collect(),
        }
    }

    /// Levelwise exterior or symmetric power.
    pub fn power(&self, k: usize, kind: PowerKind) -> Self {
        let ranks = self
            .ranks
            .iter()
            .map(|&r| match kind {
                PowerKind::Exterior => binomial(r, k),
                PowerKind::Symmetric => binomial(r + k - 1, k),
            })
            .collect();
        match kind {
            PowerKind::Exterior => self.map_levels(|m| exterior_power_matrix(m, k), ranks),
            PowerKind::Symmetric => self.map_levels(|m| symmetric_power_matrix(m, k), ranks),
        }
    }

    /// Levelwise tensor product (the diagonal of the bisimplicial object).
    pub fn tensor(&self, other: &SimplicialModule) -> Result<Self> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring, other.ring));
        }
        let bound = self.bound().min(other.bound());
        let kron = |a: &Matrix, b: &Matrix| kronecker(a, b).expect("same ring");
        let faces = (0..=bound)
            .map(|n| {
                (0..self.faces[n].len())
                    .map(|i| kron(&self.faces[n][i], &other.faces[n][i]))
                    .collect()
            })
            .collect();
        let degens = (0..=bound)
            .map(|n| {
                if n == bound {
                    vec![]
                } else {
                    (0..=n)
                        .map(|j| kron(&self.degens[n][j], &other.degens[n][j]))
                        .collect()
                }
            })
            .collect();
        let ranks = (0..=bound).map(|n| self.ranks[n] * other.ranks[n]).collect();
        Ok(SimplicialModule {
            ring: self.ring,
            ranks,
            faces,
            degens,
        })
    }

    /// Simplicial submodule spanned levelwise by the columns of `bases`,
    /// written in those bases. Fails if a structure map leaves the span.
    pub fn restrict(&self, bases: &[Matrix]) -> Result<Self> {
        if bases.len() != self.ranks.len() {
            return Err(Error::Dimension("one basis per level required".into()));
        }
        let bound = self.bound();
        let mut faces = Vec::with_capacity(bound + 1);
        let mut degens = Vec::with_capacity(bound + 1);
        for n in 0..=bound {
            let mut fs = Vec::new();
            if n > 0 {
                for d in &self.faces[n] {
                    fs.push(solve(&bases[n - 1], &(d * &bases[n]))?);
                }
            }
            faces.push(fs);
            let mut ss = Vec::new();
            if n < bound {
                for s in &self.degens[n] {
                    ss.push(solve(&bases[n + 1], &(s * &bases[n]))?);
                }
            }
            degens.push(ss);
        }
        Self::from_parts(self.ring, bases.iter().map(Matrix::cols).collect(), faces, degens)
    }

    /// Kernel bases `N_n ⊂ A_n` of the normalized complex.
    pub fn normalized_bases(&self) -> Vec<Matrix> {
        (0..=self.bound())
            .map(|n| {
                if n == 0 {
                    Matrix::identity(self.ring, self.ranks[0])
                } else {
                    let mut stacked = Matrix::zeros(self.ring, 0, self.ranks[n]);
                    for d in &self.faces[n][1..] {
                        stacked = stacked.vstack(d);
                    }
                    kernel_basis(&stacked)
                }
            })
            .collect()
    }

    /// Normalized chain complex, degrees `0..=bound`.
    pub fn normalize(&self) -> ChainComplex {
        let bases = self.normalized_bases();
        let diffs = (1..=self.bound())
            .map(|n| {
                solve(&bases[n - 1], &(&self.faces[n][0] * &bases[n]))
                    .expect("d_0 preserves the normalized subcomplex")
            })
            .collect();
        ChainComplex::new(self.ring, bases.iter().map(Matrix::cols).collect(), diffs)
            .expect("normalized complex squares to zero")
    }
}

/// Basis bookkeeping for one level of Γ.
#[derive(Clone, Debug)]
struct GammaLevel {
    n: usize,
    /// Jump sets of the summands, in basis order.
    summands: Vec<Vec<usize>>,
    offsets: Vec<usize>,
    index: HashMap<Vec<usize>, usize>,
    /// Per basis vector: (summand, position inside it, jump mask).
    owner: Vec<(usize, usize, u64)>,
}

impl GammaLevel {
    fn new(ranks: &[usize], n: usize) -> Self {
        let top = ranks.len() - 1;
        let mut summands = Vec::new();
        let mut offsets = Vec::new();
        let mut owner = Vec::new();
        let mut index = HashMap::new();
        let mut off = 0;
        for m in 0..=n.min(top) {
            for jumps in subsets(n, m) {
                let mask = jumps.iter().fold(0u64, |a, &j| a | (1 << j));
                let s = summands.len();
                index.insert(jumps.clone(), s);
                offsets.push(off);
                for b in 0..ranks[m] {
                    owner.push((s, b, mask));
                }
                off += ranks[m];
                summands.push(jumps);
            }
        }
        GammaLevel {
            n,
            summands,
            offsets,
            index,
            owner,
        }
    }

    fn dim(&self) -> usize {
        self.owner.len()
    }

    fn position(&self, jumps: &[usize], b: usize) -> usize {
        self.offsets[self.index[jumps]] + b
    }
}

fn jump_set(values: &[usize]) -> Vec<usize> {
    (0..values.len().saturating_sub(1))
        .filter(|&t| values[t + 1] > values[t])
        .collect()
}

/// Γ of a complex, generating structure maps column by column.
struct Gamma<'a> {
    complex: &'a ChainComplex,
    levels: Vec<GammaLevel>,
}

enum FaceImage {
    Identity(Vec<usize>),
    Differential(Vec<usize>),
    Zero,
}

impl<'a> Gamma<'a> {
    fn new(complex: &'a ChainComplex, bound: usize) -> Self {
        let levels = (0..=bound).map(|n| GammaLevel::new(complex.ranks(), n)).collect();
        Gamma { complex, levels }
    }

    fn classify_face(jumps: &[usize], n: usize, i: usize) -> FaceImage {
        let m = jumps.len();
        let sigma = |t: usize| jumps.iter().filter(|&&j| j < t).count();
        let f: Vec<usize> = (0..n).map(|t| sigma(if t < i { t } else { t + 1 })).collect();
        let jf = jump_set(&f);
        if f[0] == 1 {
            FaceImage::Differential(jf)
        } else if jf.len() == m {
            FaceImage::Identity(jf)
        } else {
            FaceImage::Zero
        }
    }

    /// Column of `d_i : Γ_n → Γ_{n-1}` at basis vector `idx`.
    fn face_column(&self, n: usize, i: usize, idx: usize) -> Vec<(usize, Scalar)> {
        let level = &self.levels[n];
        let lower = &self.levels[n - 1];
        let (s, b, _) = level.owner[idx];
        let jumps = &level.summands[s];
        match Self::classify_face(jumps, n, i) {
            FaceImage::Identity(jf) => vec![(lower.position(&jf, b), self.complex.ring().one())],
            FaceImage::Differential(jf) => {
                let d = self.complex.differential(jumps.len());
                let off = lower.position(&jf, 0);
                d.column_sparse(b).into_iter().map(|(r, v)| (off + r, v)).collect()
            }
            FaceImage::Zero => vec![],
        }
    }

    /// Column of `s_j : Γ_n → Γ_{n+1}`.
    fn degeneracy_column(&self, n: usize, j: usize, idx: usize) -> Vec<(usize, Scalar)> {
        let (s, b, _) = self.levels[n].owner[idx];
        let jumps: Vec<usize> = self.levels[n].summands[s]
            .iter()
            .map(|&t| if t < j { t } else { t + 1 })
            .collect();
        vec![(self.levels[n + 1].position(&jumps, b), self.complex.ring().one())]
    }

    fn dense(&self, rows: usize, cols: usize, col: impl Fn(usize) -> Vec<(usize, Scalar)>) -> Matrix {
        let mut m = Matrix::zeros(self.complex.ring(), rows, cols);
        for j in 0..cols {
            for (i, v) in col(j) {
                m[(i, j)] = v;
            }
        }
        m
    }

    fn simplicial_module(&self) -> SimplicialModule {
        let bound = self.levels.len() - 1;
        let dims: Vec<usize> = self.levels.iter().map(GammaLevel::dim).collect();
        let faces = (0..=bound)
            .map(|n| {
                if n == 0 {
                    vec![]
                } else {
                    (0..=n)
                        .map(|i| self.dense(dims[n - 1], dims[n], |c| self.face_column(n, i, c)))
                        .collect()
                }
            })
            .collect();
        let degens = (0..=bound)
            .map(|n| {
                if n == bound {
                    vec![]
                } else {
                    (0..=n)
                        .map(|j| self.dense(dims[n + 1], dims[n], |c| self.degeneracy_column(n, j, c)))
                        .collect()
                }
            })
            .collect();
        SimplicialModule {
            ring: self.complex.ring(),
            ranks: dims,
            faces,
            degens,
        }
    }
}

/// Column of `Γ(f)_n` at basis vector `idx` of `Γ(source)_n`.
fn gamma_map_column(f: &ChainMap, src: &GammaLevel, tgt: &GammaLevel, idx: usize) -> Vec<(usize, Scalar)> {
    let (s, b, _) = src.owner[idx];
    let jumps = &src.summands[s];
    let off = tgt.position(jumps, 0);
    f.component(jumps.len())
        .column_sparse(b)
        .into_iter()
        .map(|(r, v)| (off + r, v))
        .collect()
}

/// `Γ(C)` up to level `bound`.
pub fn gamma(c: &ChainComplex, bound: usize) -> Result<SimplicialModule> {
    if bound < c.top() {
        return Err(Error::BoundTooSmall {
            bound,
            top: c.top(),
        });
    }
    check_level(bound)?;
    Ok(Gamma::new(c, bound).simplicial_module())
}

/// Levelwise matrices of `Γ(f)` up to level `bound`.
pub fn gamma_map(f: &ChainMap, bound: usize) -> Result<Vec<Matrix>> {
    let top = f.source().top();
    if bound < top {
        return Err(Error::BoundTooSmall { bound, top });
    }
    check_level(bound)?;
    let src = Gamma::new(f.source(), bound);
    let tgt = Gamma::new(f.target(), bound);
    Ok((0..=bound)
        .map(|n| {
            let (a, b) = (&src.levels[n], &tgt.levels[n]);
            let mut m = Matrix::zeros(f.ring(), b.dim(), a.dim());
            for j in 0..a.dim() {
                for (i, v) in gamma_map_column(f, a, b, j) {
                    m[(i, j)] = v;
                }
            }
            m
        })
        .collect())
}

fn check_level(level: usize) -> Result<()> {
    if level >= 63 {
        return Err(Error::InfeasibleSize(format!("level {level} exceeds the supported range")));
    }
    Ok(())
}

/// `C ⊗_Δ D = N(ΓC ⊗ ΓD)`, supported in `0..=top(C)+top(D)`.
pub fn simplicial_tensor(c: &ChainComplex, d: &ChainComplex) -> Result<ChainComplex> {
    if c.ring() != d.ring() {
        return Err(Error::RingMismatch(c.ring(), d.ring()));
    }
    let bound = c.top() + d.top();
    Ok(gamma(c, bound)?.tensor(&gamma(d, bound)?)?.normalize())
}

/// Nondegenerate basis tuples of `P(Γ_n)` for a power functor `P`: those
/// whose jump sets jointly cover `0..n`. They index `P(Γ)_n / D_n`.
struct PowerLevel {
    tuples: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl PowerLevel {
    fn new(level: &GammaLevel, k: usize, kind: PowerKind, top: usize) -> Self {
        let n = level.n;
        let full: u64 = if n == 0 { 0 } else { (1u64 << n) - 1 };
        let mut tuples = Vec::new();
        let mut cur = Vec::with_capacity(k);
        #[allow(clippy::too_many_arguments)]
        fn rec(
            level: &GammaLevel,
            k: usize,
            kind: PowerKind,
            top: usize,
            full: u64,
            start: usize,
            covered: u64,
            cur: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
        ) {
            let missing = (full & !covered).count_ones() as usize;
            if missing > (k - cur.len()) * top {
                return;
            }
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for idx in start..level.dim() {
                cur.push(idx);
                let next = if kind == PowerKind::Exterior { idx + 1 } else { idx };
                rec(level, k, kind, top, full, next, covered | level.owner[idx].2, cur, out);
                cur.pop();
            }
        }
        rec(level, k, kind, top, full, 0, 0, &mut cur, &mut tuples);
        let index = tuples.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        PowerLevel { tuples, index }
    }

    fn len(&self) -> usize {
        self.tuples.len()
    }
}

fn power_product(ring: Ring, kind: PowerKind, cols: &[Vec<(usize, Scalar)>]) -> BTreeMap<Vec<usize>, Scalar> {
    match kind {
        PowerKind::Exterior => wedge_columns(ring, cols),
        PowerKind::Symmetric => sym_columns(ring, cols),
    }
}

fn accumulate(
    ring: Ring,
    out: &mut Matrix,
    col: usize,
    target: &PowerLevel,
    terms: BTreeMap<Vec<usize>, Scalar>,
    negate: bool,
) {
    for (tuple, v) in terms {
        if let Some(&row) = target.index.get(&tuple) {
            let v = if negate { ring.neg(&v) } else { v };
            out[(row, col)] = ring.add(&out[(row, col)], &v);
        }
    }
}

struct PowerData<'a> {
    gamma: Gamma<'a>,
    levels: Vec<PowerLevel>,
}

fn power_data(c: &ChainComplex, k: usize, kind: PowerKind) -> Result<PowerData<'_>> {
    let top = c.top();
    let bound = k * top + 2;
    check_level(bound)?;
    let gamma = Gamma::new(c, bound);
    let levels: Vec<PowerLevel> = gamma
        .levels
        .iter()
        .map(|l| PowerLevel::new(l, k, kind, top))
        .collect();
    for level in k * top + 1..=bound {
        if levels[level].len() != 0 {
            return Err(Error::SupportBound {
                level,
                rank: levels[level].len(),
            });
        }
    }
    Ok(PowerData { gamma, levels })
}

/// Dold-Puppe power `N(P(ΓC))` for `P = Λ^k` or `Sym^k`, computed on the
/// quotient by degenerate simplices (isomorphic to the normalized complex
/// as a complex). Supported in `0..=k·top`; levels `k·top + 1` and
/// `k·top + 2` are verified to vanish.
pub fn power_complex(c: &ChainComplex, k: usize, kind: PowerKind) -> Result<ChainComplex> {
    if k == 0 {
        return Err(Error::Dimension("power index must be positive".into()));
    }
    if k == 1 {
        return Ok(c.clone());
    }
    let ring = c.ring();
    let data = power_data(c, k, kind)?;
    let top = k * c.top();
    let mut diffs = Vec::with_capacity(top);
    for n in 1..=top {
        let (src, tgt) = (&data.levels[n], &data.levels[n - 1]);
        let mut d = Matrix::zeros(ring, tgt.len(), src.len());
        for (col, tuple) in src.tuples.iter().enumerate() {
            for i in 0..=n {
                let cols: Vec<_> = tuple.iter().map(|&t| data.gamma.face_column(n, i, t)).collect();
                accumulate(ring, &mut d, col, tgt, power_product(ring, kind, &cols), i % 2 == 1);
            }
        }
        diffs.push(d);
    }
    let ranks = (0..=top).map(|n| data.levels[n].len()).collect();
    ChainComplex::new(ring, ranks, diffs)
}

/// `Λ^k C`.
pub fn dold_puppe_power(c: &ChainComplex, k: usize) -> Result<ChainComplex> {
    power_complex(c, k, PowerKind::Exterior)
}

/// Induced chain map `P(f)`; bases as in [`power_complex`].
pub fn power_map(f: &ChainMap, k: usize, kind: PowerKind) -> Result<ChainMap> {
    if k == 0 {
        return Err(Error::Dimension("power index must be positive".into()));
    }
    if k == 1 {
        return Ok(f.clone());
    }
    let ring = f.ring();
    let src = power_data(f.source(), k, kind)?;
    let tgt = power_data(f.target(), k, kind)?;
    let top = k * f.source().top();
    let mut components = Vec::with_capacity(top + 1);
    for n in 0..=top {
        let (a, b) = (&src.levels[n], &tgt.levels[n]);
        let (ga, gb) = (&src.gamma.levels[n], &tgt.gamma.levels[n]);
        let mut m = Matrix::zeros(ring, b.len(), a.len());
        for (col, tuple) in a.tuples.iter().enumerate() {
            let cols: Vec<_> = tuple.iter().map(|&t| gamma_map_column(f, ga, gb, t)).collect();
            accumulate(ring, &mut m, col, b, power_product(ring, kind, &cols), false);
        }
        components.push(m);
    }
    ChainMap::new(
        power_complex(f.source(), k, kind)?,
        power_complex(f.target(), k, kind)?,
        components,
    )
}

/// `Λ^k f`.
pub fn dold_puppe_power_map(f: &ChainMap, k: usize) -> Result<ChainMap> {
    power_map(f, k, PowerKind::Exterior)
}

/// Reference route: levelwise power of `Γ(C)` as dense matrices, then
/// normalization through kernels. Verifies the vanishing of the two
/// levels above `k·top` before truncating.
pub fn power_complex_via_kernels(c: &ChainComplex, k: usize, kind: PowerKind) -> Result<ChainComplex> {
    if k == 0 {
        return Err(Error::Dimension("power index must be positive".into()));
    }
    if k == 1 {
        return Ok(c.clone());
    }
    let top = k * c.top();
    let full = gamma(c, top + 2)?.power(k, kind).normalize();
    for level in top + 1..=top + 2 {
        if full.rank(level) != 0 {
            return Err(Error::SupportBound {
                level,
                rank: full.rank(level),
            });
        }
    }
    Ok(truncate(&full, top))
}

fn truncate(c: &ChainComplex, top: usize) -> ChainComplex {
    ChainComplex::new(
        c.ring(),
        c.ranks()[..=top].to_vec(),
        c.differentials()[..top].to_vec(),
    )
    .expect("truncation of a complex")
}

/// Chain `V_1 ↣ … ↣ V_k` of admissible monomorphisms of complexes.
#[derive(Clone, Debug)]
pub struct MonoSequenceOfComplexes {
    complexes: Vec<ChainComplex>,
    inclusions: Vec<ChainMap>,
}

impl MonoSequenceOfComplexes {
    pub fn new(inclusions: Vec<ChainMap>, first: ChainComplex) -> Result<Self> {
        let mut complexes = vec![first];
        for (i, f) in inclusions.iter().enumerate() {
            let prev = complexes.last().unwrap();
            let top = prev.top().max(f.source().top());
            if &prev.padded(top) != f.source() && prev != f.source() {
                return Err(Error::InadmissibleMono(format!("map {i} does not start at the previous term")));
            }
            if !f.is_admissible_mono() {
                return Err(Error::InadmissibleMono(format!("map {i}")));
            }
            complexes.push(f.target().clone());
        }
        Ok(MonoSequenceOfComplexes {
            complexes,
            inclusions,
        })
    }

    /// The chain `V ↣ V ↣ … ↣ V` of identities.
    pub fn constant(v: &ChainComplex, k: usize) -> Self {
        MonoSequenceOfComplexes {
            complexes: vec![v.clone(); k],
            inclusions: vec![ChainMap::identity(v); k.saturating_sub(1)],
        }
    }

    pub fn len(&self) -> usize {
        self.complexes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.complexes.is_empty()
    }

    pub fn complexes(&self) -> &[ChainComplex] {
        &self.complexes
    }

    pub fn inclusions(&self) -> &[ChainMap] {
        &self.inclusions
    }

    /// Composite inclusions `V_i → V_k`.
    pub fn into_last(&self) -> Result<Vec<ChainMap>> {
        let last = self.complexes.last().expect("nonempty");
        let mut out = vec![ChainMap::identity(last)];
        let mut acc = ChainMap::identity(last);
        for f in self.inclusions.iter().rev() {
            acc = acc.compose(f)?;
            out.push(acc.clone());
        }
        out.reverse();
        Ok(out)
    }
}

/// Module-level wedge: basis of the image of `V_1 ⊗ … ⊗ V_k → Λ^k Y`
/// for submodules given by basis columns in `Y`.
pub fn module_wedge(ring: Ring, ambient: usize, subs: &[Matrix]) -> Matrix {
    let k = subs.len();
    if k == 0 {
        return Matrix::identity(ring, 1);
    }
    let dim = binomial(ambient, k);
    let cols: Vec<Vec<Vec<(usize, Scalar)>>> = subs
        .iter()
        .map(|m| (0..m.cols()).map(|j| m.column_sparse(j)).collect())
        .collect();
    let mut generators: Vec<Vec<Scalar>> = Vec::new();
    let mut choice = vec![0usize; k];
    if subs.iter().any(|m| m.cols() == 0) {
        return Matrix::zeros(ring, dim, 0);
    }
    loop {
        let picked: Vec<_> = (0..k).map(|i| cols[i][choice[i]].clone()).collect();
        let w = wedge_columns(ring, &picked);
        if !w.is_empty() {
            let mut v = vec![Scalar::zero(); dim];
            for (s, x) in w {
                v[crate::linalg::subset_rank(ambient, &s)] = x;
            }
            generators.push(v);
        }
        // odometer
        let mut i = k;
        loop {
            if i == 0 {
                return image_basis(&Matrix::from_columns(ring, dim, &generators));
            }
            i -= 1;
            choice[i] += 1;
            if choice[i] < subs[i].cols() {
                break;
            }
            choice[i] = 0;
        }
    }
}

/// `V_1 ∧ … ∧ V_k = N(ΓV_1 ∧ … ∧ ΓV_k)` through kernels, computed up to
/// level `k·top`; coincides with the reference route of
/// [`power_complex_via_kernels`] for a constant sequence.
pub fn wedge_of_sequence(seq: &MonoSequenceOfComplexes) -> Result<ChainComplex> {
    let k = seq.len();
    if k == 0 {
        return Err(Error::Dimension("empty sequence".into()));
    }
    if k == 1 {
        return Ok(seq.complexes()[0].clone());
    }
    let last = seq.complexes().last().unwrap();
    let top = k * last.top();
    let ambient = gamma(last, top)?;
    let maps = seq
        .into_last()?
        .iter()
        .map(|f| gamma_map(f, top))
        .collect::<Result<Vec<_>>>()?;
    let bases: Vec<Matrix> = (0..=top)
        .map(|n| {
            let subs: Vec<Matrix> = maps.iter().map(|m| m[n].clone()).collect();
            module_wedge(last.ring(), ambient.ranks()[n], &subs)
        })
        .collect();
    Ok(ambient.power(k, PowerKind::Exterior).restrict(&bases)?.normalize())
}

/// Checks that `f` is an admissible mono levelwise after Γ.
pub fn gamma_preserves_admissible(f: &ChainMap, bound: usize) -> Result<bool> {
    Ok(gamma_map(f, bound)?.iter().all(is_split_injective))
}
