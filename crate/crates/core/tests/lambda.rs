use num_bigint::BigInt;
use proptest::prelude::*;

use kpower::lambda::poly::names;
use kpower::lambda::{
    check_composition_axiom, check_product_rule, check_sum_rule, expand_elementary, lambda_binomial,
    reduce_to_elementary, universal_composition_sides, universal_p_compose, Binomial, LambdaPoint, Monomial, SymPoly,
};

// Independent binomial oracle: coefficient of t^k in (1 + t)^n, by
// repeated polynomial multiplication (n ≥ 0) or division (n < 0).
fn coefficient_of_power(n: i64, k: usize) -> BigInt {
    let mut series = vec![BigInt::from(0); k + 1];
    series[0] = BigInt::from(1);
    for _ in 0..n.unsigned_abs() {
        if n > 0 {
            for i in (1..=k).rev() {
                let prev = series[i - 1].clone();
                series[i] += prev;
            }
        } else {
            // divide by (1 + t)
            for i in 1..=k {
                let prev = series[i - 1].clone();
                series[i] -= prev;
            }
        }
    }
    series[k].clone()
}

fn point(n: i64, order: usize) -> LambdaPoint<Binomial> {
    LambdaPoint::new(Binomial(BigInt::from(n)), order)
}

#[test]
fn binomial_lambda_matches_series_oracle() {
    for n in -8..=8 {
        for k in 0..=9 {
            assert_eq!(lambda_binomial(n, k), coefficient_of_power(n, k), "n={n} k={k}");
        }
    }
}

#[test]
fn p22_has_the_expected_shape_and_value() {
    let p = universal_p_compose(2, 2);
    assert_eq!(p.terms().len(), 2);
    assert_eq!(p.coefficient(&[1, 0, 1, 0]), BigInt::from(1));
    assert_eq!(p.coefficient(&[0, 0, 0, 1]), BigInt::from(-1));
    let at_four: Vec<BigInt> = [4, 6, 4, 1].into_iter().map(BigInt::from).collect();
    assert_eq!(p.evaluate(&at_four), BigInt::from(15));
    // λ²(λ²(4)) = λ²(6) = 15 from the oracle as well
    assert_eq!(coefficient_of_power(6, 2), BigInt::from(15));
}

#[test]
fn composition_polynomials_are_isobaric() {
    for (k, l) in [(1, 1), (1, 3), (2, 1), (2, 2), (2, 3), (3, 2), (3, 3), (2, 4)] {
        let p = universal_p_compose(k, l);
        assert!(p.is_homogeneous((k * l) as u32, |i| i as u32 + 1), "P_{k},{l} = {p}");
        assert_eq!(p.nvars(), k * l);
    }
}

#[test]
fn trivial_composition_polynomials() {
    // P_{1,l} = e_l and P_{k,1} = e_k
    for l in 1..=4 {
        let mut e = vec![0; l];
        e[l - 1] = 1;
        let p = universal_p_compose(1, l);
        assert_eq!(p.terms().len(), 1);
        assert_eq!(p.coefficient(&e), BigInt::from(1));
        let q = universal_p_compose(l, 1);
        assert_eq!(q.coefficient(&e), BigInt::from(1));
    }
}

#[test]
fn universal_identity_holds_symbolically() {
    for (k, l) in [(2, 2), (2, 3), (3, 2)] {
        let (lhs, rhs) = universal_composition_sides(k, l);
        assert_eq!(lhs, rhs, "({k},{l})");
    }
}

#[test]
fn composition_polynomial_against_binomial_oracle() {
    for (k, l) in [(2, 2), (2, 3), (3, 2), (3, 3)] {
        let p = universal_p_compose(k, l);
        for n in -8i64..=8 {
            let inner = i64::try_from(coefficient_of_power(n, l)).unwrap();
            let values: Vec<BigInt> = (1..=k * l).map(|i| coefficient_of_power(n, i)).collect();
            assert_eq!(p.evaluate(&values), coefficient_of_power(inner, k), "k={k} l={l} n={n}");
        }
    }
}

fn elementary_poly() -> impl Strategy<Value = Vec<(Vec<u32>, i64)>> {
    proptest::collection::vec((proptest::collection::vec(0u32..3, 3), -5i64..=5), 0..6)
}

proptest! {
    #[test]
    fn binomial_ring_axioms(m in -8i64..=8, n in -8i64..=8, k in 0usize..=3, l in 1usize..=3) {
        let x = point(m, 9);
        let y = point(n, 9);
        prop_assert!(check_sum_rule(&x, &y, k).unwrap());
        prop_assert!(check_product_rule(&x, &y, k).unwrap());
        if k > 0 {
            prop_assert!(check_composition_axiom(&x, k, l).unwrap());
        }
    }

    #[test]
    fn reduce_inverts_expand(terms in elementary_poly()) {
        let p = SymPoly::from_terms(names("e", 3), terms);
        let expanded = expand_elementary(&p, &names("x", 3));
        prop_assert_eq!(reduce_to_elementary(&expanded).unwrap(), p);
    }

    #[test]
    fn non_symmetric_input_is_rejected(a in 1u32..3, b in 0u32..1) {
        let m = Monomial(vec![a, b]);
        let p = SymPoly::monomial(names("x", 2), m, BigInt::from(1));
        prop_assert!(reduce_to_elementary(&p).is_err());
    }
}
