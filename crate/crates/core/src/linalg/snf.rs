//! Smith normal form over ℤ and over fields, and the lattice operations
//! built on it: kernels, images, solving, saturation tests.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::Matrix;
use super::ring::{Ring, Scalar};
use crate::error::{Error, Result};

/// `left · A · right = diag(d₁, …, d_r, 0, …)` with `d₁ | d₂ | …`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub left: Matrix,
    pub right: Matrix,
    /// Nonzero invariant factors, canonical associates (positive over ℤ,
    /// 1 over fields).
    pub diag: Vec<Scalar>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diag.len()
    }

    /// The diagonal matrix `left · A · right` should equal.
    pub fn diagonal_matrix(&self, rows: usize, cols: usize) -> Matrix {
        let ring = self.left.ring();
        let mut d = Matrix::zeros(ring, rows, cols);
        for (i, x) in self.diag.iter().enumerate() {
            d[(i, i)] = x.clone();
        }
        d
    }
}

struct Reducer {
    a: Matrix,
    left: Option<Matrix>,
    right: Option<Matrix>,
    /// Over ℤ without transforms: entries are kept reduced modulo a
    /// multiple of every nonzero invariant factor.
    modulus: Option<BigInt>,
}

impl Reducer {
    fn ring(&self) -> Ring {
        self.a.ring()
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        if let Some(l) = &mut self.left {
            l.swap_rows(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        if let Some(r) = &mut self.right {
            r.swap_cols(i, j);
        }
    }

    fn reduce(&mut self, i: usize, j: usize) {
        if let Some(d) = &self.modulus {
            let x = &self.a[(i, j)];
            if x.is_zero() {
                return;
            }
            let mut r = x.to_integer().mod_floor(d);
            if (&r << 1) > *d {
                r -= d;
            }
            self.a[(i, j)] = Scalar::from_integer(r);
        }
    }

    fn add_row(&mut self, target: usize, source: usize, c: &Scalar) {
        self.a.add_row_multiple(target, source, c);
        if self.modulus.is_some() {
            for j in 0..self.a.cols() {
                self.reduce(target, j);
            }
        }
        if let Some(l) = &mut self.left {
            l.add_row_multiple(target, source, c);
        }
    }

    fn add_col(&mut self, target: usize, source: usize, c: &Scalar) {
        self.a.add_col_multiple(target, source, c);
        if self.modulus.is_some() {
            for i in 0..self.a.rows() {
                self.reduce(i, target);
            }
        }
        if let Some(r) = &mut self.right {
            r.add_col_multiple(target, source, c);
        }
    }

    fn scale_row(&mut self, i: usize, c: &Scalar) {
        self.a.scale_row(i, c);
        if let Some(l) = &mut self.left {
            l.scale_row(i, c);
        }
    }

    /// Smallest nonzero entry (by Euclidean size) in the trailing block.
    fn min_entry(&self, t: usize) -> Option<(usize, usize)> {
        let ring = self.ring();
        let mut best: Option<((usize, usize), num_bigint::BigInt)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let x = &self.a[(i, j)];
                if x.is_zero() {
                    continue;
                }
                let s = ring.size(x);
                if s.is_one() {
                    return Some((i, j));
                }
                if best.as_ref().is_none_or(|(_, b)| s < *b) {
                    best = Some(((i, j), s));
                }
            }
        }
        best.map(|(p, _)| p)
    }

    fn run(&mut self) -> Vec<Scalar> {
        let ring = self.ring();
        let (m, n) = self.a.shape();
        let mut diag = Vec::new();
        let mut t = 0;
        while t < m.min(n) {
            let Some((pi, pj)) = self.min_entry(t) else {
                break;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let mut clean = true;
                // column t
                for i in t + 1..m {
                    if self.a[(i, t)].is_zero() {
                        continue;
                    }
                    let (q, r) = ring.div_rem(&self.a[(i, t)], &self.a[(t, t)]);
                    self.add_row(i, t, &ring.neg(&q));
                    if !r.is_zero() {
                        self.swap_rows(i, t);
                        clean = false;
                    }
                }
                // row t
                for j in t + 1..n {
                    if self.a[(t, j)].is_zero() {
                        continue;
                    }
                    let (q, r) = ring.div_rem(&self.a[(t, j)], &self.a[(t, t)]);
                    self.add_col(j, t, &ring.neg(&q));
                    if !r.is_zero() {
                        self.swap_cols(j, t);
                        clean = false;
                    }
                }
                if !clean {
                    continue;
                }
                // divisibility of the trailing block
                if !ring.is_field() {
                    let pivot = self.a[(t, t)].clone();
                    let offender = (t + 1..m).find(|&i| {
                        (t + 1..n).any(|j| ring.div_exact(&self.a[(i, j)], &pivot).is_none())
                    });
                    if let Some(i) = offender {
                        self.add_row(t, i, &ring.one());
                        continue;
                    }
                }
                break;
            }
            if self.modulus.is_some() {
                diag.push(self.a[(t, t)].clone());
                t += 1;
                continue;
            }
            let pivot = self.a[(t, t)].clone();
            let unit = match ring {
                Ring::Integers => {
                    if pivot.is_negative() {
                        ring.from_i64(-1)
                    } else {
                        ring.one()
                    }
                }
                _ => ring.inv(&pivot),
            };
            if !unit.is_one() {
                self.scale_row(t, &unit);
            }
            diag.push(self.a[(t, t)].clone());
            t += 1;
        }
        diag
    }
}

/// Smith normal form with transforms.
pub fn smith_normal_form(a: &Matrix) -> SmithForm {
    let ring = a.ring();
    let mut r = Reducer {
        a: a.clone(),
        left: Some(Matrix::identity(ring, a.rows())),
        right: Some(Matrix::identity(ring, a.cols())),
        modulus: None,
    };
    let diag = r.run();
    SmithForm {
        left: r.left.unwrap(),
        right: r.right.unwrap(),
        diag,
    }
}

/// Row and column indices of a nonsingular maximal minor.
fn independent_minor(a: &Matrix) -> (Vec<usize>, Vec<usize>) {
    let field = a.ring().fraction_field();
    let (m, n) = a.shape();
    let mut rows: Vec<Vec<Scalar>> = (0..m).map(|i| a.row(i).to_vec()).collect();
    let mut order: Vec<usize> = (0..m).collect();
    let mut cols = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..m).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(p, r);
        order.swap(p, r);
        let pinv = field.inv(&rows[r][c]);
        for i in r + 1..m {
            if rows[i][c].is_zero() {
                continue;
            }
            let f = field.mul(&rows[i][c], &pinv);
            for j in c..n {
                rows[i][j] = field.sub(&rows[i][j], &field.mul(&f, &rows[r][j]));
            }
        }
        cols.push(c);
        r += 1;
        if r == m {
            break;
        }
    }
    order.truncate(r);
    (order, cols)
}

/// Nonzero invariant factors only (no transforms tracked).
///
/// Over ℤ the reduction runs modulo `D`, the determinant of a nonsingular
/// maximal minor: every nonzero invariant factor divides `D`, and adding
/// `D·Zᵐ` to the column lattice replaces each factor `dᵢ` by `gcd(dᵢ, D)`
/// and the zero ones by `D`. This keeps entries below `D` in size.
pub fn invariant_factors(a: &Matrix) -> Vec<Scalar> {
    if a.ring().is_field() {
        return vec![Scalar::one(); a.rank()];
    }
    let (rows, cols) = independent_minor(a);
    let rank = rows.len();
    if rank == 0 {
        return Vec::new();
    }
    let d = a.select(&rows, &cols).determinant().to_integer().abs();
    if d.is_one() {
        return vec![Scalar::one(); rank];
    }
    let mut r = Reducer {
        a: a.clone(),
        left: None,
        right: None,
        modulus: Some(d.clone()),
    };
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            r.reduce(i, j);
        }
    }
    let mut factors: Vec<Scalar> = r
        .run()
        .iter()
        .map(|p| Scalar::from_integer(p.to_integer().gcd(&d)))
        .collect();
    factors.resize(rank.max(factors.len()), Scalar::from_integer(d));
    factors.truncate(rank);
    factors
}

/// Canonical basis of the ℤ-span (or subspace) of the given rows: Hermite
/// normal form over ℤ, reduced row echelon form over a field. Zero rows
/// are dropped.
pub fn hermite_rows(a: &Matrix) -> Matrix {
    let ring = a.ring();
    let (m, n) = a.shape();
    let mut h = a.clone();
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..n {
        if r == m {
            break;
        }
        loop {
            // smallest nonzero entry at or below r in column c
            let mut best: Option<usize> = None;
            for i in r..m {
                if h[(i, c)].is_zero() {
                    continue;
                }
                if best.is_none_or(|b| ring.size(&h[(i, c)]) < ring.size(&h[(b, c)])) {
                    best = Some(i);
                }
            }
            let Some(p) = best else { break };
            h.swap_rows(p, r);
            let mut done = true;
            for i in r + 1..m {
                if h[(i, c)].is_zero() {
                    continue;
                }
                let (q, rem) = ring.div_rem(&h[(i, c)], &h[(r, c)]);
                h.add_row_multiple(i, r, &ring.neg(&q));
                if !rem.is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        let unit = match ring {
            Ring::Integers if h[(r, c)].is_negative() => ring.from_i64(-1),
            Ring::Integers => ring.one(),
            _ => ring.inv(&h[(r, c)]),
        };
        h.scale_row(r, &unit);
        for i in 0..r {
            if h[(i, c)].is_zero() {
                continue;
            }
            let (q, _) = ring.div_rem(&h[(i, c)], &h[(r, c)]);
            h.add_row_multiple(i, r, &ring.neg(&q));
        }
        pivots.push(c);
        r += 1;
    }
    h.select_rows(&(0..r).collect::<Vec<_>>())
}

/// Columns form a basis of ker(A); over ℤ the kernel is saturated. The
/// basis is canonical (echelon form of the kernel lattice).
pub fn kernel_basis(a: &Matrix) -> Matrix {
    let ring = a.ring();
    let n = a.cols();
    if a.rows() == 0 {
        return Matrix::identity(ring, n);
    }
    let raw = if ring.is_field() {
        field_kernel(a)
    } else {
        // Row-reduce [Aᵀ | I]: the rows whose Aᵀ part vanishes carry a
        // basis of the left kernel of Aᵀ.
        let m = a.rows();
        let h = hermite_rows(&a.transpose().hstack(&Matrix::identity(ring, n)));
        let rows: Vec<usize> = (0..h.rows()).filter(|&i| (0..m).all(|j| h[(i, j)].is_zero())).collect();
        h.select(&rows, &(m..m + n).collect::<Vec<_>>()).transpose()
    };
    if raw.cols() == 0 {
        return raw;
    }
    hermite_rows(&raw.transpose()).transpose()
}

fn field_kernel(a: &Matrix) -> Matrix {
    let ring = a.ring();
    let (m, n) = a.shape();
    let rref = hermite_rows(a);
    let mut pivot_cols = Vec::new();
    for i in 0..rref.rows() {
        let c = (0..n).find(|&c| !rref[(i, c)].is_zero()).unwrap();
        pivot_cols.push(c);
    }
    let _ = m;
    let free: Vec<usize> = (0..n).filter(|c| !pivot_cols.contains(c)).collect();
    let mut k = Matrix::zeros(ring, n, free.len());
    for (j, &f) in free.iter().enumerate() {
        k[(f, j)] = ring.one();
        for (i, &p) in pivot_cols.iter().enumerate() {
            k[(p, j)] = ring.neg(&rref[(i, f)]);
        }
    }
    k
}

/// Columns form a basis of the column space (over ℤ: of the image
/// lattice itself, not its saturation). Canonical echelon basis.
pub fn image_basis(a: &Matrix) -> Matrix {
    if a.cols() == 0 {
        return Matrix::zeros(a.ring(), a.rows(), 0);
    }
    let h = hermite_rows(&a.transpose());
    if h.rows() == 0 {
        return Matrix::zeros(a.ring(), a.rows(), 0);
    }
    h.transpose()
}

/// Solves `basis · X = target` for X, where `basis` has independent
/// columns. Fails when some target column is outside the span.
pub fn solve(basis: &Matrix, target: &Matrix) -> Result<Matrix> {
    let ring = basis.ring();
    assert_eq!(basis.rows(), target.rows(), "solve: row mismatch");
    let r = basis.cols();
    if r == 0 {
        return if target.is_zero() {
            Ok(Matrix::zeros(ring, 0, target.cols()))
        } else {
            Err(Error::NotInSpan)
        };
    }
    let snf = smith_normal_form(basis);
    if snf.rank() != r {
        return Err(Error::Internal("solve: basis columns are dependent".into()));
    }
    let z = &snf.left * target;
    if (r..z.rows()).any(|i| z.row(i).iter().any(|x| !x.is_zero())) {
        return Err(Error::NotInSpan);
    }
    let mut w = Matrix::zeros(ring, r, target.cols());
    for i in 0..r {
        for j in 0..target.cols() {
            w[(i, j)] = ring
                .div_exact(&z[(i, j)], &snf.diag[i])
                .ok_or(Error::NotInSpan)?;
        }
    }
    Ok(&snf.right * &w)
}

/// True when the columns are independent and span a direct summand
/// (free cokernel): the admissible monomorphisms of based free modules.
pub fn is_split_injective(a: &Matrix) -> bool {
    let f = invariant_factors(a);
    f.len() == a.cols() && f.iter().all(|x| a.ring().is_unit(x))
}

/// True when the map is onto (over ℤ: all invariant factors units and
/// full row rank).
pub fn is_surjective(a: &Matrix) -> bool {
    let f = invariant_factors(a);
    f.len() == a.rows() && f.iter().all(|x| a.ring().is_unit(x))
}

/// A projection `Y → Y/im(a)` onto a free quotient, for a split
/// injective `a`. Rows of the result form the quotient coordinates.
pub fn cokernel_projection(a: &Matrix) -> Result<Matrix> {
    if !is_split_injective(a) {
        return Err(Error::InadmissibleMono(format!(
            "{}x{} matrix",
            a.rows(),
            a.cols()
        )));
    }
    let snf = smith_normal_form(a);
    let r = snf.rank();
    Ok(snf.left.select_rows(&(r..a.rows()).collect::<Vec<_>>()))
}
