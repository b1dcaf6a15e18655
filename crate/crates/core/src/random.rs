//! Seeded generators for test instances. Integer entries are drawn from
//! `[-3, 3]` and reduced into the ring.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::complex::{ChainComplex, ChainMap};
use crate::linalg::{Matrix, Ring, Scalar};

pub type Rng64 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Derives an independent stream for instance `index` of a suite.
pub fn sub_rng(seed: u64, stream: u64, index: u64) -> Rng64 {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r.set_word_pos(u128::from(index) << 20);
    r
}

pub fn scalar(ring: Ring, rng: &mut impl Rng) -> Scalar {
    ring.from_i64(rng.gen_range(-3..=3))
}

pub fn nonzero_scalar(ring: Ring, rng: &mut impl Rng) -> Scalar {
    loop {
        let x = scalar(ring, rng);
        if x != ring.zero() {
            return x;
        }
    }
}

/// A random unit of the ring.
pub fn unit(ring: Ring, rng: &mut impl Rng) -> Scalar {
    match ring {
        Ring::Integers => ring.from_i64(if rng.gen_bool(0.5) { 1 } else { -1 }),
        _ => nonzero_scalar(ring, rng),
    }
}

pub fn matrix(ring: Ring, rng: &mut impl Rng, rows: usize, cols: usize) -> Matrix {
    let mut m = Matrix::zeros(ring, rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m[(i, j)] = scalar(ring, rng);
        }
    }
    m
}

/// Invertible matrix over the ring (unimodular over ℤ), as a product of
/// random elementary operations.
pub fn invertible(ring: Ring, rng: &mut impl Rng, n: usize) -> Matrix {
    let mut m = Matrix::identity(ring, n);
    if n == 0 {
        return m;
    }
    for _ in 0..3 * n {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        match rng.gen_range(0..3) {
            0 if i != j => {
                let c = ring.from_i64(rng.gen_range(-2..=2));
                m.add_row_multiple(i, j, &c);
            }
            1 => m.swap_rows(i, j),
            _ => {
                let u = unit(ring, rng);
                m.scale_row(i, &u);
            }
        }
    }
    m
}

/// Elementary pieces: `free[n]` copies of `R` in degree n and, for each
/// `n`, a list of coefficients `a` giving pieces `R →·a R` in degrees
/// `n+1, n`.
fn assemble(ring: Ring, top: usize, free: &[usize], pairs: &[Vec<Scalar>]) -> ChainComplex {
    let ranks: Vec<usize> = (0..=top)
        .map(|n| free[n] + pairs[n].len() + if n > 0 { pairs[n - 1].len() } else { 0 })
        .collect();
    // degree n basis: [free | pairs[n] (bottom ends) | pairs[n-1] (top ends)]
    let diffs = (1..=top)
        .map(|n| {
            let mut d = Matrix::zeros(ring, ranks[n - 1], ranks[n]);
            let row0 = free[n - 1];
            let col0 = free[n] + pairs[n].len();
            for (t, a) in pairs[n - 1].iter().enumerate() {
                d[(row0 + t, col0 + t)] = a.clone();
            }
            d
        })
        .collect();
    ChainComplex::new(ring, ranks, diffs).expect("elementary pieces form a complex")
}

fn conjugate_randomly(c: &ChainComplex, rng: &mut impl Rng) -> ChainComplex {
    let g = (0..=c.top())
        .map(|n| invertible(c.ring(), rng, c.rank(n)))
        .collect();
    c.conjugate(g).expect("invertible change of basis").0
}

fn piece_layout(
    ring: Ring,
    rng: &mut impl Rng,
    top: usize,
    max_rank: usize,
    allow_free: bool,
    unit_only: bool,
) -> (Vec<usize>, Vec<Vec<Scalar>>) {
    let mut used = vec![0usize; top + 1];
    let mut pairs: Vec<Vec<Scalar>> = vec![vec![]; top + 1];
    for n in 0..top {
        let room = (max_rank - used[n]).min(max_rank - used[n + 1]);
        let count = rng.gen_range(0..=room);
        for _ in 0..count {
            let a = if unit_only { unit(ring, rng) } else { nonzero_scalar(ring, rng) };
            pairs[n].push(a);
        }
        used[n] += count;
        used[n + 1] += count;
    }
    let free = (0..=top)
        .map(|n| if allow_free { rng.gen_range(0..=max_rank - used[n]) } else { 0 })
        .collect();
    (free, pairs)
}

/// Random complex supported in `0..=top` with every rank at most
/// `max_rank`. Every bounded complex of free modules over a PID is, up to
/// a change of basis, a sum of the elementary pieces used here.
pub fn complex(ring: Ring, rng: &mut impl Rng, top: usize, max_rank: usize) -> ChainComplex {
    let (free, pairs) = piece_layout(ring, rng, top, max_rank, true, false);
    conjugate_randomly(&assemble(ring, top, &free, &pairs), rng)
}

/// Random acyclic complex: a based sum of cones of identities of rank-one
/// complexes, in a random basis.
pub fn acyclic_complex(ring: Ring, rng: &mut impl Rng, top: usize, max_rank: usize) -> ChainComplex {
    let (free, pairs) = piece_layout(ring, rng, top, max_rank, false, true);
    conjugate_randomly(&assemble(ring, top, &free, &pairs), rng)
}

/// Random quasi-isomorphism: `C → C ⊕ Z` (Z acyclic) followed by a random
/// change of basis, or the projection the other way.
pub fn quasi_iso(ring: Ring, rng: &mut impl Rng, top: usize, max_rank: usize) -> ChainMap {
    let c = complex(ring, rng, top, max_rank);
    let z = acyclic_complex(ring, rng, top, max_rank);
    let sum = c.direct_sum(&z).expect("same ring");
    let inclusion = ChainMap::new(
        c.clone(),
        sum.clone(),
        (0..=top)
            .map(|n| Matrix::identity(ring, c.rank(n)).vstack(&Matrix::zeros(ring, z.rank(n), c.rank(n))))
            .collect(),
    )
    .expect("inclusion of a summand");
    let g = (0..=top).map(|n| invertible(ring, rng, sum.rank(n))).collect();
    let (_, iso) = sum.conjugate(g).expect("invertible change of basis");
    if rng.gen_bool(0.5) {
        iso.compose(&inclusion).expect("composable")
    } else {
        let projection = ChainMap::new(
            sum.clone(),
            c.clone(),
            (0..=top)
                .map(|n| Matrix::identity(ring, c.rank(n)).hstack(&Matrix::zeros(ring, c.rank(n), z.rank(n))))
                .collect(),
        )
        .expect("projection onto a summand");
        let inverse = ChainMap::new(
            iso.target().clone(),
            sum,
            iso.components().iter().map(|m| m.inverse().expect("invertible")).collect(),
        )
        .expect("inverse of a chain isomorphism");
        projection.compose(&inverse).expect("composable")
    }
}

/// Flag `V_1 ⊂ … ⊂ V_k ⊂ R^ambient` of direct summands, as basis columns.
pub fn mono_chain(ring: Ring, rng: &mut impl Rng, k: usize, ambient: usize) -> Vec<Matrix> {
    let g = invertible(ring, rng, ambient);
    let mut dims: Vec<usize> = (0..k).map(|_| rng.gen_range(0..=ambient)).collect();
    dims.sort_unstable();
    dims.iter()
        .map(|&d| g.select_columns(&(0..d).collect::<Vec<_>>()))
        .collect()
}

/// Random chain contraction of an acyclic complex over a field: splits
/// every `C_n = B_n ⊕ K_n` with a random complement, inverts `d` on the
/// complements, then perturbs by `d s - s d` for a random degree-2 `s`.
/// `result[n]` is `h_n : C_n → C_{n+1}`.
pub fn contraction(c: &ChainComplex, rng: &mut impl Rng) -> Vec<Matrix> {
    let ring = c.ring();
    assert!(ring.is_field(), "contractions are sampled over fields");
    let choices: Vec<Matrix> = (0..=c.top()).map(|n| invertible(ring, rng, c.rank(n))).collect();
    let s: Vec<Matrix> = (0..=c.top())
        .map(|n| matrix(ring, rng, c.rank(n + 2), c.rank(n)))
        .collect();
    crate::binary::contraction_with(c, &choices, &s).expect("acyclic complex over a field")
}
