//! Symmetric functions: reduction to elementary symmetric polynomials and
//! the universal polynomials of λ-ring theory.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::One;

use super::poly::{names, Monomial, SymPoly};
use crate::error::{Error, Result};

/// `e_k(x_1, …, x_n)` over the given variable names.
pub fn elementary(vars: &[String], k: usize) -> SymPoly {
    let n = vars.len();
    let mut p = SymPoly::zero(vars.to_vec());
    for s in crate::linalg::subsets(n, k) {
        let mut m = Monomial::one(n);
        for i in s {
            m.0[i] = 1;
        }
        p.add_term(m, BigInt::one());
    }
    p
}

/// Coefficients of `t^0 … t^k` in `Π_j (1 + m_j t)`: the elementary
/// symmetric functions of the given polynomials, all at once.
pub fn elementary_of(items: &[SymPoly], vars: &[String], k: usize) -> Vec<SymPoly> {
    let mut acc = vec![SymPoly::zero(vars.to_vec()); k + 1];
    acc[0] = SymPoly::one(vars.to_vec());
    for m in items {
        for i in (1..=k).rev() {
            let shifted = acc[i - 1].mul(m);
            acc[i] = acc[i].add(&shifted);
        }
    }
    acc
}

fn is_symmetric(f: &SymPoly) -> Result<()> {
    let n = f.nvars();
    for i in 0..n.saturating_sub(1) {
        for (m, c) in f.terms() {
            let mut e = m.0.clone();
            e.swap(i, i + 1);
            if &f.coefficient(&e) != c {
                return Err(Error::NotSymmetric(i, i + 1));
            }
        }
    }
    Ok(())
}

/// Unique expression of a symmetric polynomial in `e_1 … e_n`, with the
/// result's variables named by `out_names` (length n).
pub fn reduce_to_elementary_named(f: &SymPoly, out_names: Vec<String>) -> Result<SymPoly> {
    is_symmetric(f)?;
    let vars = f.names().to_vec();
    let n = vars.len();
    assert_eq!(out_names.len(), n);
    let es: Vec<SymPoly> = (1..=n).map(|k| elementary(&vars, k)).collect();
    let mut powers: HashMap<(usize, u32), SymPoly> = HashMap::new();
    let mut rest = f.clone();
    let mut out = SymPoly::zero(out_names);
    while let Some((lead, c)) = rest.leading_term() {
        let (lead, c) = (lead.clone(), c.clone());
        // leading exponent of a symmetric polynomial is non-increasing
        let b: Vec<u32> = (0..n)
            .map(|i| lead.0[i] - if i + 1 < n { lead.0[i + 1] } else { 0 })
            .collect();
        let mut product = SymPoly::one(vars.clone());
        for (i, &e) in b.iter().enumerate() {
            if e > 0 {
                let pw = powers
                    .entry((i, e))
                    .or_insert_with(|| es[i].pow(e))
                    .clone();
                product = product.mul(&pw);
            }
        }
        rest = rest.sub(&product.scale(&c));
        out.add_term(Monomial(b), c);
    }
    Ok(out)
}

/// [`reduce_to_elementary_named`] with generators `e1 … en`.
pub fn reduce_to_elementary(f: &SymPoly) -> Result<SymPoly> {
    reduce_to_elementary_named(f, names("e", f.nvars()))
}

/// Expands a polynomial in `e_1 … e_n` back into the variables `vars`.
pub fn expand_elementary(p: &SymPoly, vars: &[String]) -> SymPoly {
    let es: Vec<SymPoly> = (1..=p.nvars()).map(|k| elementary(vars, k)).collect();
    let one = SymPoly::one(vars.to_vec());
    let zero = SymPoly::zero(vars.to_vec());
    p.substitute(&es, &one, SymPoly::add, SymPoly::mul, SymPoly::scale, &zero)
}

type Cache = Mutex<BTreeMap<(usize, usize), SymPoly>>;

fn compose_cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(BTreeMap::new()))
}

fn product_cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(BTreeMap::new()))
}

/// Products `Π_{i ∈ S} x_i` over all `l`-subsets `S` of the variables.
fn subset_products(vars: &[String], l: usize) -> Vec<SymPoly> {
    crate::linalg::subsets(vars.len(), l)
        .into_iter()
        .map(|s| {
            let mut m = Monomial::one(vars.len());
            for i in s {
                m.0[i] = 1;
            }
            SymPoly::monomial(vars.to_vec(), m, BigInt::one())
        })
        .collect()
}

fn compute_compose(k: usize, l: usize) -> SymPoly {
    let n = k * l;
    let vars = names("x", n);
    let items = subset_products(&vars, l);
    let ek = elementary_of(&items, &vars, k).pop().expect("k + 1 coefficients");
    reduce_to_elementary(&ek).expect("e_k of a symmetric family is symmetric")
}

/// `P_{k,l}` in `e_1 … e_{kl}`: `λ^k(λ^l(x)) = P_{k,l}(λ^1 x, …, λ^{kl} x)`.
/// Computed once per `(k, l)`.
pub fn universal_p_compose(k: usize, l: usize) -> SymPoly {
    if let Some(p) = compose_cache().lock().expect("cache lock").get(&(k, l)) {
        return p.clone();
    }
    let p = compute_compose(k, l);
    compose_cache()
        .lock()
        .expect("cache lock")
        .entry((k, l))
        .or_insert(p)
        .clone()
}

fn compute_product(k: usize) -> SymPoly {
    let mut vars = names("x", k);
    vars.extend(names("y", k));
    let items: Vec<SymPoly> = (0..k)
        .flat_map(|i| (0..k).map(move |j| (i, j)))
        .map(|(i, j)| SymPoly::var(vars.clone(), i).mul(&SymPoly::var(vars.clone(), k + j)))
        .collect();
    let ek = elementary_of(&items, &vars, k).pop().expect("k + 1 coefficients");
    // reduce in x with coefficients in y, then in y
    let es = names("e", k);
    let fs = names("f", k);
    let by_y = ek.split_at(k);
    let mut e_then_y = SymPoly::zero([es.clone(), names("y", k)].concat());
    let mut parts: BTreeMap<Monomial, SymPoly> = BTreeMap::new();
    for (beta, g) in by_y {
        parts.insert(beta, reduce_to_elementary_named(&g, es.clone()).expect("symmetric in x"));
    }
    e_then_y = e_then_y.add(&SymPoly::join(e_then_y.names().to_vec(), &parts));
    // now regroup by e-monomial: coefficient polynomials in y
    let mut swapped: BTreeMap<Monomial, SymPoly> = BTreeMap::new();
    for (m, c) in e_then_y.terms() {
        let (a, b) = m.0.split_at(k);
        swapped
            .entry(Monomial(a.to_vec()))
            .or_insert_with(|| SymPoly::zero(names("y", k)))
            .add_term(Monomial(b.to_vec()), c.clone());
    }
    let mut out = SymPoly::zero([es, fs.clone()].concat());
    for (alpha, h) in swapped {
        let reduced = reduce_to_elementary_named(&h, fs.clone()).expect("symmetric in y");
        for (beta, c) in reduced.terms() {
            let mut e = alpha.0.clone();
            e.extend_from_slice(&beta.0);
            out.add_term(Monomial(e), c.clone());
        }
    }
    out
}

/// `P_k` in `e_1 … e_k, f_1 … f_k`: `λ^k(xy) = P_k(λ^i x; λ^j y)`.
pub fn universal_p_product(k: usize) -> SymPoly {
    if let Some(p) = product_cache().lock().expect("cache lock").get(&(k, 0)) {
        return p.clone();
    }
    let p = compute_product(k);
    product_cache()
        .lock()
        .expect("cache lock")
        .entry((k, 0))
        .or_insert(p)
        .clone()
}

/// Symbolic check in the universal λ-ring: with `s = x_1 + … + x_N` for
/// `N = kl + 1` variables, `λ^k(λ^l(s))` reduced to elementary symmetric
/// functions equals `P_{k,l}(e_1, …, e_{kl})`. Returns both sides.
pub fn universal_composition_sides(k: usize, l: usize) -> (SymPoly, SymPoly) {
    let n = k * l + 1;
    let vars = names("x", n);
    let lambda_l = subset_products(&vars, l);
    let lhs = elementary_of(&lambda_l, &vars, k).pop().expect("k + 1 coefficients");
    let lhs = reduce_to_elementary(&lhs).expect("symmetric");
    let rhs = universal_p_compose(k, l).extend_vars(names("e", n));
    (lhs, rhs)
}

/// Coefficient of `e_{kl}` in `P_{k,l}`: what remains of the polynomial
/// once every monomial with two or more factors is dropped.
pub fn single_factor_coefficient(k: usize, l: usize) -> BigInt {
    let mut e = vec![0u32; k * l];
    e[k * l - 1] = 1;
    universal_p_compose(k, l).coefficient(&e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn power_sum_reduces() {
        let x = names("x", 2);
        let f = SymPoly::from_terms(x, [(vec![2, 0], 1), (vec![0, 2], 1)]);
        assert_eq!(reduce_to_elementary(&f).unwrap().to_string(), "e1^2 - 2*e2");
    }

    #[test]
    fn elementary_reduces_to_itself() {
        let x = names("x", 3);
        for k in 1..=3 {
            let r = reduce_to_elementary(&elementary(&x, k)).unwrap();
            assert_eq!(r.to_string(), format!("e{k}"));
        }
    }

    #[test]
    fn non_symmetric_rejected() {
        let x = names("x", 2);
        let f = SymPoly::from_terms(x, [(vec![1, 0], 1)]);
        assert_eq!(reduce_to_elementary(&f), Err(Error::NotSymmetric(0, 1)));
    }

    #[test]
    fn composition_polynomials() {
        assert_eq!(universal_p_compose(2, 2).to_string(), "e1*e3 - e4");
        assert_eq!(universal_p_compose(1, 3).to_string(), "e3");
        assert_eq!(universal_p_compose(3, 1).to_string(), "e3");
        let p = universal_p_compose(2, 2);
        let v: Vec<BigInt> = [4, 6, 4, 1].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(p.evaluate(&v), BigInt::from(15));
    }

    #[test]
    fn product_polynomials() {
        assert_eq!(universal_p_product(1).to_string(), "e1*f1");
        assert_eq!(universal_p_product(2).to_string(), "e1^2*f2 + e2*f1^2 - 2*e2*f2");
    }

    #[test]
    fn universal_identity_small() {
        let (lhs, rhs) = universal_composition_sides(2, 2);
        assert_eq!(lhs, rhs);
    }
}
