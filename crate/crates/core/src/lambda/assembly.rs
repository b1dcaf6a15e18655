//! The standard assembly of power operations on based free modules:
//! `V_1 ∧ … ∧ V_k` is the image of `V_1 ⊗ … ⊗ V_k` in `Λ^k Y` for a flag
//! of direct summands of an ambient `Y = R^n`. The structure maps (E1) to
//! (E5) are materialized as matrices on `Λ^• Y` and checked on the
//! relevant submodules.

use serde::Serialize;

use crate::complex::{right_inverse, ChainMap};
use crate::error::{Error, Result};
use crate::linalg::{
    binomial, cokernel_projection, exterior_power_matrix, image_basis, is_split_injective,
    is_surjective, kronecker, solve, subset_rank, subsets, Matrix, Ring,
};
use crate::simplicial::{gamma, gamma_map, module_wedge, PowerKind};

fn shuffle_sign(s: &[usize], t: &[usize]) -> bool {
    // parity of #{(a, b) : a ∈ S, b ∈ T, a > b}
    let inversions: usize = s.iter().map(|a| t.iter().filter(|&&b| b < *a).count()).sum();
    inversions % 2 == 1
}

/// `μ : Λ^a Y ⊗ Λ^b Y → Λ^{a+b} Y`, rows and columns in subset order,
/// columns of the tensor factor in Kronecker order.
pub fn multiplication(ring: Ring, n: usize, a: usize, b: usize) -> Matrix {
    let (sa, sb) = (subsets(n, a), subsets(n, b));
    let mut m = Matrix::zeros(ring, binomial(n, a + b), sa.len() * sb.len());
    for (i, s) in sa.iter().enumerate() {
        for (j, t) in sb.iter().enumerate() {
            if s.iter().any(|x| t.contains(x)) {
                continue;
            }
            let mut u: Vec<usize> = s.iter().chain(t).copied().collect();
            u.sort_unstable();
            let v = if shuffle_sign(s, t) { ring.from_i64(-1) } else { ring.one() };
            m[(subset_rank(n, &u), i * sb.len() + j)] = v;
        }
    }
    m
}

/// `Δ : Λ^{a+b} Y → Λ^a Y ⊗ Λ^b Y`, `e_U ↦ Σ ± e_S ⊗ e_{U∖S}`.
pub fn comultiplication(ring: Ring, n: usize, a: usize, b: usize) -> Matrix {
    let (sa, sb) = (subsets(n, a), subsets(n, b));
    let su = subsets(n, a + b);
    let mut m = Matrix::zeros(ring, sa.len() * sb.len(), su.len());
    for (col, u) in su.iter().enumerate() {
        for pick in subsets(a + b, a) {
            let s: Vec<usize> = pick.iter().map(|&i| u[i]).collect();
            let t: Vec<usize> = u.iter().copied().filter(|x| !s.contains(x)).collect();
            let v = if shuffle_sign(&s, &t) { ring.from_i64(-1) } else { ring.one() };
            m[(subset_rank(n, &s) * sb.len() + subset_rank(n, &t), col)] = v;
        }
    }
    m
}

/// Flag `V_1 ⊂ … ⊂ V_k` of direct summands of `R^ambient`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleChain {
    ring: Ring,
    ambient: usize,
    subs: Vec<Matrix>,
}

impl ModuleChain {
    pub fn new(ring: Ring, ambient: usize, subs: Vec<Matrix>) -> Result<Self> {
        for (i, s) in subs.iter().enumerate() {
            if s.rows() != ambient || s.ring() != ring {
                return Err(Error::Dimension(format!("term {i} is not a submodule of the ambient module")));
            }
            if !is_split_injective(s) {
                return Err(Error::InadmissibleMono(format!("term {i} is not a direct summand")));
            }
            if i > 0 {
                let inc = solve(s, &subs[i - 1])
                    .map_err(|_| Error::InadmissibleMono(format!("term {} is not contained in term {i}", i - 1)))?;
                if !is_split_injective(&inc) {
                    return Err(Error::InadmissibleMono(format!("inclusion {} → {i}", i - 1)));
                }
            }
        }
        Ok(ModuleChain { ring, ambient, subs })
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn len(&self) -> usize {
        self.subs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subs.is_empty()
    }

    pub fn terms(&self) -> &[Matrix] {
        &self.subs
    }

    /// Basis of `V_1 ∧ … ∧ V_k` inside `Λ^k Y`.
    pub fn wedge(&self) -> Matrix {
        module_wedge(self.ring, self.ambient, &self.subs)
    }

    fn slice(&self, from: usize, to: usize) -> ModuleChain {
        ModuleChain {
            ring: self.ring,
            ambient: self.ambient,
            subs: self.subs[from..to].to_vec(),
        }
    }

    /// Terms `from..` pushed to a quotient along a projection `pi`.
    fn pushed(&self, from: usize, pi: &Matrix) -> ModuleChain {
        ModuleChain {
            ring: self.ring,
            ambient: pi.rows(),
            subs: self.subs[from..].iter().map(|s| image_basis(&(pi * s))).collect(),
        }
    }

    fn projection_mod(&self, j: usize) -> Result<Matrix> {
        if j == 0 {
            return Ok(Matrix::identity(self.ring, self.ambient));
        }
        cokernel_projection(&self.subs[j - 1])
    }
}

fn e2_ambient(ring: Ring, n: usize, j: usize, l: usize, pi: &Matrix) -> Matrix {
    let left = Matrix::identity(ring, binomial(n, j));
    let right = exterior_power_matrix(pi, l);
    &kronecker(&left, &right).expect("same ring") * &comultiplication(ring, n, j, l)
}

fn lands_in(basis: &Matrix, image: &Matrix) -> bool {
    solve(basis, image).is_ok()
}

/// (E1): `μ` maps `(V_1 ∧ … ∧ V_j) ⊗ (V_{j+1} ∧ … ∧ V_k)` into
/// `V_1 ∧ … ∧ V_k`; for `k ≥ 3` also checks associativity on the triple
/// split `(1, j, k)` submodule.
pub fn check_e1(chain: &ModuleChain, j: usize) -> Result<bool> {
    let (ring, n, k) = (chain.ring, chain.ambient, chain.len());
    if j == 0 || j >= k {
        return Err(Error::Dimension("split must satisfy 0 < j < k".into()));
    }
    let source = kronecker(&chain.slice(0, j).wedge(), &chain.slice(j, k).wedge())?;
    let image = &multiplication(ring, n, j, k - j) * &source;
    if !lands_in(&chain.wedge(), &image) {
        return Ok(false);
    }
    for a in 1..j {
        let triple = kronecker(
            &kronecker(&chain.slice(0, a).wedge(), &chain.slice(a, j).wedge())?,
            &chain.slice(j, k).wedge(),
        )?;
        let left = &multiplication(ring, n, j, k - j)
            * &kronecker(&multiplication(ring, n, a, j - a), &Matrix::identity(ring, binomial(n, k - j)))?;
        let right = &multiplication(ring, n, a, k - a)
            * &kronecker(&Matrix::identity(ring, binomial(n, a)), &multiplication(ring, n, j - a, k - j))?;
        if &left * &triple != &right * &triple {
            return Ok(false);
        }
    }
    Ok(true)
}

/// (E2): `(id ⊗ Λπ) ∘ Δ` maps `V_1 ∧ … ∧ V_k` into
/// `(V_1 ∧ … ∧ V_j) ⊗ (V_{j+1}/V_j ∧ … ∧ V_k/V_j)`; also checks
/// coassociativity against every earlier split point.
pub fn check_e2(chain: &ModuleChain, j: usize) -> Result<bool> {
    let (ring, n, k) = (chain.ring, chain.ambient, chain.len());
    if j == 0 || j >= k {
        return Err(Error::Dimension("split must satisfy 0 < j < k".into()));
    }
    let source = chain.wedge();
    let pi = chain.projection_mod(j)?;
    let target = kronecker(&chain.slice(0, j).wedge(), &chain.pushed(j, &pi).wedge())?;
    let image = &e2_ambient(ring, n, j, k - j, &pi) * &source;
    if !lands_in(&target, &image) {
        return Ok(false);
    }
    for a in 1..j {
        // Λ^k Y → Λ^a Y ⊗ Λ^{j-a}(Y/V_a) ⊗ Λ^{k-j}(Y/V_j) two ways
        let pa = chain.projection_mod(a)?;
        let q = pa.rows();
        // Y/V_a → Y/V_j induced by π_j
        let induced = &pi * &right_inverse(&pa)?;
        let first = &kronecker(&e2_ambient(ring, n, a, j - a, &pa), &Matrix::identity(ring, binomial(pi.rows(), k - j)))?
            * &e2_ambient(ring, n, j, k - j, &pi);
        let second = &kronecker(&Matrix::identity(ring, binomial(n, a)), &e2_ambient(ring, q, j - a, k - j, &induced))?
            * &e2_ambient(ring, n, a, k - a, &pa);
        if &first * &source != &second * &source {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Naturality of (E1) and (E2) under an automorphism `g` of `Y`, with
/// `g(V_i)` as the transported chain.
pub fn check_naturality(chain: &ModuleChain, g: &Matrix, j: usize) -> Result<bool> {
    let (ring, n, k) = (chain.ring, chain.ambient, chain.len());
    if g.inverse().is_none() || g.shape() != (n, n) {
        return Err(Error::Dimension("naturality needs an automorphism of the ambient module".into()));
    }
    let moved = ModuleChain::new(ring, n, chain.subs.iter().map(|s| g * s).collect())?;
    let lg = |d: usize| exterior_power_matrix(g, d);
    // E1
    let source = kronecker(&chain.slice(0, j).wedge(), &chain.slice(j, k).wedge())?;
    let mu = multiplication(ring, n, j, k - j);
    let lhs = &(&lg(k) * &mu) * &source;
    let rhs = &(&mu * &kronecker(&lg(j), &lg(k - j))?) * &source;
    if lhs != rhs {
        return Ok(false);
    }
    // E2, with ḡ : Y/V_j → Y/g(V_j)
    let (pi, pi_moved) = (chain.projection_mod(j)?, moved.projection_mod(j)?);
    let gbar = &(&pi_moved * g) * &right_inverse(&pi)?;
    let wedge = chain.wedge();
    let lhs = &(&kronecker(&lg(j), &exterior_power_matrix(&gbar, k - j))? * &e2_ambient(ring, n, j, k - j, &pi)) * &wedge;
    let rhs = &(&e2_ambient(ring, n, j, k - j, &pi_moved) * &lg(k)) * &wedge;
    Ok(lhs == rhs)
}

/// (E3) for split points `0 < a < b < k`.
pub fn check_e3(chain: &ModuleChain, a: usize, b: usize) -> Result<bool> {
    let (ring, n, k) = (chain.ring, chain.ambient, chain.len());
    if !(0 < a && a < b && b < k) {
        return Err(Error::Dimension("split points must satisfy 0 < a < b < k".into()));
    }
    let pi = chain.projection_mod(a)?;
    let q = pi.rows();
    let source = kronecker(&chain.slice(0, b).wedge(), &chain.slice(b, k).wedge())?;
    let route1 = &e2_ambient(ring, n, a, k - a, &pi) * &multiplication(ring, n, b, k - b);
    let step = kronecker(&e2_ambient(ring, n, a, b - a, &pi), &exterior_power_matrix(&pi, k - b))?;
    let route2 = &kronecker(&Matrix::identity(ring, binomial(n, a)), &multiplication(ring, q, b - a, k - b))? * &step;
    let (x, y) = (&route1 * &source, &route2 * &source);
    let target = kronecker(&chain.slice(0, a).wedge(), &chain.pushed(a, &pi).wedge())?;
    Ok(x == y && lands_in(&target, &x))
}

/// (E4) for split points `0 < a < b < k`.
pub fn check_e4(chain: &ModuleChain, a: usize, b: usize) -> Result<bool> {
    let (ring, n, k) = (chain.ring, chain.ambient, chain.len());
    if !(0 < a && a < b && b < k) {
        return Err(Error::Dimension("split points must satisfy 0 < a < b < k".into()));
    }
    let pi = chain.projection_mod(b)?;
    let q = pi.rows();
    let source = kronecker(&chain.slice(0, a).wedge(), &chain.slice(a, k).wedge())?;
    let route1 = &e2_ambient(ring, n, b, k - b, &pi) * &multiplication(ring, n, a, k - a);
    let step = kronecker(&Matrix::identity(ring, binomial(n, a)), &e2_ambient(ring, n, b - a, k - b, &pi))?;
    let route2 = &kronecker(&multiplication(ring, n, a, b - a), &Matrix::identity(ring, binomial(q, k - b)))? * &step;
    let (x, y) = (&route1 * &source, &route2 * &source);
    let target = kronecker(&chain.slice(0, b).wedge(), &chain.pushed(b, &pi).wedge())?;
    Ok(x == y && lands_in(&target, &x))
}

/// Degreewise data of a three-term sequence `0 → A →f B →g C → 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactnessReport {
    pub ranks: (usize, usize, usize),
    pub composite_zero: bool,
    pub injective: bool,
    pub surjective: bool,
}

impl ExactnessReport {
    fn of(f: &Matrix, g: &Matrix) -> Self {
        ExactnessReport {
            ranks: (f.cols(), f.rows(), g.rows()),
            composite_zero: (g * f).is_zero(),
            injective: is_split_injective(f),
            surjective: is_surjective(g),
        }
    }

    /// Split injective `f`, surjective `g`, `g f = 0` and additive ranks
    /// force `im f = ker g`: both are saturated of the same rank.
    pub fn is_exact(&self) -> bool {
        self.composite_zero
            && self.injective
            && self.surjective
            && self.ranks.0 + self.ranks.2 == self.ranks.1
    }
}

/// Submodule bases and the ambient (E2)-type map of the (E5) sequence
/// `0 → …∧W'∧… → …∧W∧… → (U∧…∧V) ⊗ (W/W' ∧ …) → 0`.
struct E5Pieces {
    a: Matrix,
    b: Matrix,
    c: Matrix,
    map: Matrix,
}

fn e5_pieces(chain: &ModuleChain, p: usize, w_prime: &Matrix, pi: &Matrix) -> Result<E5Pieces> {
    let (ring, n, k) = (chain.ring, chain.ambient, chain.len());
    let mut replaced = chain.subs.clone();
    replaced[p] = w_prime.clone();
    let a = module_wedge(ring, n, &replaced);
    let b = chain.wedge();
    let c = kronecker(&chain.slice(0, p).wedge(), &chain.pushed(p, pi).wedge())?;
    let map = e2_ambient(ring, n, p, k - p, pi);
    Ok(E5Pieces { a, b, c, map })
}

/// (E5) with `W = V_p` replaced by `W'` where `V_{p-1} ⊂ W' ⊂ W`.
pub fn check_e5(chain: &ModuleChain, p: usize, w_prime: &Matrix) -> Result<ExactnessReport> {
    if p >= chain.len() {
        return Err(Error::Dimension("position outside the chain".into()));
    }
    let mut check = chain.subs.clone();
    check.insert(p, w_prime.clone());
    ModuleChain::new(chain.ring, chain.ambient, check)?;
    let pi = cokernel_projection(w_prime)?;
    let pieces = e5_pieces(chain, p, w_prime, &pi)?;
    let f = solve(&pieces.b, &pieces.a)?;
    let g = solve(&pieces.c, &(&pieces.map * &pieces.b))?;
    Ok(ExactnessReport::of(&f, &g))
}

/// (E5) for complexes, through Γ: the module-level sequence is formed on
/// every level of `ΓY`, each term is normalized, and the resulting
/// sequence of complexes is checked to consist of chain maps and to be
/// exact in every degree. `terms[i]` and `w_prime` are admissible monos
/// into a common `Y`.
pub fn check_e5_complexes(terms: &[ChainMap], p: usize, w_prime: &ChainMap) -> Result<Vec<ExactnessReport>> {
    let k = terms.len();
    if p >= k {
        return Err(Error::Dimension("position outside the chain".into()));
    }
    let y = w_prime.target().clone();
    let ring = y.ring();
    let top = k * y.top();
    let (q, pi) = w_prime.quotient()?;
    let gy = gamma(&y, top)?;
    let gq = gamma(&q, top)?;
    let pis = gamma_map(&pi, top)?;
    let term_maps = terms.iter().map(|f| gamma_map(f, top)).collect::<Result<Vec<_>>>()?;
    let wp_map = gamma_map(w_prime, top)?;
    let mut pieces = Vec::with_capacity(top + 1);
    for n in 0..=top {
        let chain = ModuleChain::new(ring, gy.ranks()[n], term_maps.iter().map(|m| m[n].clone()).collect())?;
        pieces.push(e5_pieces(&chain, p, &wp_map[n], &pis[n])?);
    }
    let outer = gy.power(k, PowerKind::Exterior);
    let mixed = gy.power(p, PowerKind::Exterior).tensor(&gq.power(k - p, PowerKind::Exterior))?;
    let sa = outer.restrict(&pieces.iter().map(|x| x.a.clone()).collect::<Vec<_>>())?;
    let sb = outer.restrict(&pieces.iter().map(|x| x.b.clone()).collect::<Vec<_>>())?;
    let sc = mixed.restrict(&pieces.iter().map(|x| x.c.clone()).collect::<Vec<_>>())?;
    let (na, nb, nc) = (sa.normalize(), sb.normalize(), sc.normalize());
    let (ka, kb, kc) = (sa.normalized_bases(), sb.normalized_bases(), sc.normalized_bases());
    let mut fs = Vec::new();
    let mut gs = Vec::new();
    for n in 0..=top {
        let x = &pieces[n];
        let a_amb = &x.a * &ka[n];
        let b_amb = &x.b * &kb[n];
        let c_amb = &x.c * &kc[n];
        fs.push(solve(&b_amb, &a_amb)?);
        gs.push(solve(&c_amb, &(&x.map * &b_amb))?);
    }
    let f = ChainMap::new(na, nb.clone(), fs)?;
    let g = ChainMap::new(nb, nc, gs)?;
    Ok((0..=top)
        .map(|n| ExactnessReport::of(&f.component(n), &g.component(n)))
        .collect())
}

/// Convenience for the two-term case `V ↣ W`: the (E5) sequences
/// `0 → V∧W → W∧W → Λ²(W/V) → 0` and `0 → V∧V → V∧W → V ⊗ W/V → 0`.
pub fn check_e5_pair(inclusion: &ChainMap) -> Result<(Vec<ExactnessReport>, Vec<ExactnessReport>)> {
    let w = inclusion.target().clone();
    let id = ChainMap::identity(&w);
    let first = check_e5_complexes(&[id.clone(), id.clone()], 0, inclusion)?;
    let second = check_e5_complexes(&[inclusion.clone(), id], 1, inclusion)?;
    Ok((first, second))
}

/// Module-level wedge of a chain given by complexes' components in one
/// degree; used by the CLI to print ranks.
pub fn wedge_rank(chain: &ModuleChain) -> usize {
    chain.wedge().cols()
}
