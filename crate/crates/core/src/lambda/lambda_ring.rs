//! λ-rings on concrete carriers and the axiom checks evaluated on points.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::{names, SymPoly};
use super::symmetric::{elementary_of, universal_p_compose, universal_p_product};
use crate::error::{Error, Result};

/// A commutative ring with operations `λ^k`.
pub trait LambdaRing: Clone + Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn scale(&self, c: &BigInt) -> Self;
    fn lambda(&self, k: usize) -> Self;
    /// Equality in the ring (characters for representation rings).
    fn same(&self, other: &Self) -> bool;
}

/// Generalized binomial coefficient `c(c-1)…(c-i+1)/i!` for any integer `c`.
pub fn generalized_binomial(c: &BigInt, i: usize) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for j in 0..i {
        num *= c - BigInt::from(j);
        den *= BigInt::from(j + 1);
    }
    num.div_floor(&den)
}

/// `λ^k(n)` in K₀ of a PID: the coefficient of `t^k` in `(1 + t)^n`.
pub fn lambda_binomial(n: i64, k: usize) -> BigInt {
    let n = BigInt::from(n);
    if n.is_negative() {
        let sign = if k % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        sign * generalized_binomial(&(-&n + BigInt::from(k) - 1), k)
    } else {
        generalized_binomial(&n, k)
    }
}

/// ℤ with `λ^k(n) = C(n, k)` extended through `(1 + t)^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Binomial(pub BigInt);

impl LambdaRing for Binomial {
    fn zero_like(&self) -> Self {
        Binomial(BigInt::zero())
    }
    fn one_like(&self) -> Self {
        Binomial(BigInt::one())
    }
    fn add(&self, other: &Self) -> Self {
        Binomial(&self.0 + &other.0)
    }
    fn mul(&self, other: &Self) -> Self {
        Binomial(&self.0 * &other.0)
    }
    fn scale(&self, c: &BigInt) -> Self {
        Binomial(&self.0 * c)
    }
    fn lambda(&self, k: usize) -> Self {
        let sign = if k % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        if self.0.is_negative() {
            Binomial(sign * generalized_binomial(&(-&self.0 + BigInt::from(k) - 1), k))
        } else {
            Binomial(generalized_binomial(&self.0, k))
        }
    }
    fn same(&self, other: &Self) -> bool {
        self == other
    }
}

/// Symmetric polynomials in `N` variables with
/// `λ_t(Σ c_m m) = Π (1 + m t)^{c_m}` on monomials `m`: a faithful model
/// of the universal λ-ring in weights up to `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Universal(pub SymPoly);

impl Universal {
    /// The universal element `s = x_1 + … + x_N`.
    pub fn generator(nvars: usize) -> Self {
        let vars = names("x", nvars);
        let mut p = SymPoly::zero(vars.clone());
        for i in 0..nvars {
            p = p.add(&SymPoly::var(vars.clone(), i));
        }
        Universal(p)
    }
}

impl LambdaRing for Universal {
    fn zero_like(&self) -> Self {
        Universal(SymPoly::zero(self.0.names().to_vec()))
    }
    fn one_like(&self) -> Self {
        Universal(SymPoly::one(self.0.names().to_vec()))
    }
    fn add(&self, other: &Self) -> Self {
        Universal(self.0.add(&other.0))
    }
    fn mul(&self, other: &Self) -> Self {
        Universal(self.0.mul(&other.0))
    }
    fn scale(&self, c: &BigInt) -> Self {
        Universal(self.0.scale(c))
    }
    fn lambda(&self, k: usize) -> Self {
        let vars = self.0.names().to_vec();
        // expand Π (1 + m t)^c with c ≥ 1 via repeated factors, c < 0 via
        // the generalized binomial series
        let mut series = vec![SymPoly::zero(vars.clone()); k + 1];
        series[0] = SymPoly::one(vars.clone());
        for (m, c) in self.0.terms() {
            let mono = SymPoly::monomial(vars.clone(), m.clone(), BigInt::one());
            if c.is_positive() {
                let count = c.to_string().parse::<usize>().expect("small multiplicity");
                let items = vec![mono; count];
                let factor = elementary_of(&items, &vars, k);
                series = truncated_product(&series, &factor, k);
            } else {
                let factor: Vec<SymPoly> = (0..=k)
                    .map(|i| mono.pow(i as u32).scale(&generalized_binomial(c, i)))
                    .collect();
                series = truncated_product(&series, &factor, k);
            }
        }
        Universal(series.pop().expect("k + 1 coefficients"))
    }
    fn same(&self, other: &Self) -> bool {
        self == other
    }
}

fn truncated_product(a: &[SymPoly], b: &[SymPoly], k: usize) -> Vec<SymPoly> {
    let vars = a[0].names().to_vec();
    (0..=k)
        .map(|n| {
            let mut acc = SymPoly::zero(vars.clone());
            for i in 0..=n {
                acc = acc.add(&a[i].mul(&b[n - i]));
            }
            acc
        })
        .collect()
}

/// An element together with `λ^1(x), …, λ^order(x)`.
#[derive(Clone, Debug)]
pub struct LambdaPoint<R: LambdaRing> {
    pub element: R,
    coordinates: Vec<R>,
}

impl<R: LambdaRing> LambdaPoint<R> {
    pub fn new(element: R, order: usize) -> Self {
        let coordinates = (1..=order).map(|k| element.lambda(k)).collect();
        LambdaPoint {
            element,
            coordinates,
        }
    }

    /// Point with explicitly supplied coordinates `λ^1 … λ^order`.
    pub fn with_coordinates(element: R, coordinates: Vec<R>) -> Self {
        LambdaPoint {
            element,
            coordinates,
        }
    }

    pub fn order(&self) -> usize {
        self.coordinates.len()
    }

    /// `λ^k(x)`, with `λ^0 = 1`.
    pub fn coordinate(&self, k: usize) -> Result<R> {
        if k == 0 {
            return Ok(self.element.one_like());
        }
        self.coordinates
            .get(k - 1)
            .cloned()
            .ok_or(Error::InsufficientCoordinates {
                needed: k,
                available: self.order(),
            })
    }
}

/// `λ^k(x + y) = Σ_{i+j=k} λ^i(x) λ^j(y)`.
pub fn check_sum_rule<R: LambdaRing>(x: &LambdaPoint<R>, y: &LambdaPoint<R>, k: usize) -> Result<bool> {
    let mut rhs = x.element.zero_like();
    for i in 0..=k {
        rhs = rhs.add(&x.coordinate(i)?.mul(&y.coordinate(k - i)?));
    }
    let lhs = x.element.add(&y.element).lambda(k);
    Ok(lhs.same(&rhs))
}

/// `P_{k,l}` evaluated on `λ^1(x), …, λ^{kl}(x)`.
pub fn evaluate_p_compose<R: LambdaRing>(x: &LambdaPoint<R>, k: usize, l: usize) -> Result<R> {
    let values = (1..=k * l).map(|i| x.coordinate(i)).collect::<Result<Vec<_>>>()?;
    let zero = x.element.zero_like();
    let one = x.element.one_like();
    Ok(universal_p_compose(k, l).substitute(&values, &one, R::add, R::mul, R::scale, &zero))
}

/// `λ^k(λ^l(x)) = P_{k,l}(λ^1(x), …, λ^{kl}(x))`.
pub fn check_composition_axiom<R: LambdaRing>(x: &LambdaPoint<R>, k: usize, l: usize) -> Result<bool> {
    let rhs = evaluate_p_compose(x, k, l)?;
    let lhs = x.coordinate(l)?.lambda(k);
    Ok(lhs.same(&rhs))
}

/// `λ^k(xy) = P_k(λ^i(x); λ^j(y))`.
pub fn check_product_rule<R: LambdaRing>(x: &LambdaPoint<R>, y: &LambdaPoint<R>, k: usize) -> Result<bool> {
    let mut values = (1..=k).map(|i| x.coordinate(i)).collect::<Result<Vec<_>>>()?;
    values.extend((1..=k).map(|i| y.coordinate(i)).collect::<Result<Vec<_>>>()?);
    let zero = x.element.zero_like();
    let one = x.element.one_like();
    let rhs = universal_p_product(k).substitute(&values, &one, R::add, R::mul, R::scale, &zero);
    let lhs = x.element.mul(&y.element).lambda(k);
    Ok(lhs.same(&rhs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: i64) -> Binomial {
        Binomial(BigInt::from(n))
    }

    #[test]
    fn binomial_values() {
        assert_eq!(lambda_binomial(4, 2), BigInt::from(6));
        assert_eq!(lambda_binomial(-1, 2), BigInt::from(1));
        assert_eq!(lambda_binomial(-1, 3), BigInt::from(-1));
        assert_eq!(lambda_binomial(-3, 2), BigInt::from(6));
        for n in -5..5 {
            assert_eq!(lambda_binomial(n, 1), BigInt::from(n));
            assert_eq!(b(n).lambda(3).0, lambda_binomial(n, 3));
        }
    }

    #[test]
    fn composition_at_four() {
        let x = LambdaPoint::new(b(4), 4);
        assert_eq!(evaluate_p_compose(&x, 2, 2).unwrap(), b(15));
        assert!(check_composition_axiom(&x, 2, 2).unwrap());
    }

    #[test]
    fn insufficient_coordinates() {
        let x = LambdaPoint::new(b(4), 2);
        assert_eq!(
            check_composition_axiom(&x, 2, 2),
            Err(Error::InsufficientCoordinates { needed: 3, available: 2 })
        );
    }

    #[test]
    fn universal_point_small() {
        let s = LambdaPoint::new(Universal::generator(5), 4);
        assert!(check_composition_axiom(&s, 2, 2).unwrap());
        let neg = LambdaPoint::new(Universal::generator(3).scale(&BigInt::from(-1)), 2);
        let pos = LambdaPoint::new(Universal::generator(3), 2);
        assert!(check_sum_rule(&neg, &pos, 2).unwrap());
    }
}
