use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use kpower::equivariant::{
    apply_polynomial_functor, k0_equal, rational_irreducibles, standard_reps, verify_composition_rg, FiniteGroup,
    FunctorWord, GRep, RepElement,
};
use kpower::linalg::Ring;
use kpower::Error;

fn groups() -> Vec<Arc<FiniteGroup>> {
    ["C2", "C3", "klein4", "symmetric3"]
        .into_iter()
        .map(|n| Arc::new(FiniteGroup::preset(n).unwrap()))
        .collect()
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Character of Λ^k V from power sums `p_j(g) = χ_V(g^j)` through Newton's
/// identities `k e_k = Σ_{i=1..k} (-1)^{i-1} e_{k-i} p_i`.
fn newton_exterior_character(v: &GRep, k: usize) -> Vec<BigRational> {
    let g = v.group();
    g.representatives()
        .into_iter()
        .map(|x| {
            let p: Vec<BigRational> = (0..=k).map(|j| v.trace_at(g.pow(x, j))).collect();
            let mut e = vec![q(1)];
            for m in 1..=k {
                let mut acc = q(0);
                for i in 1..=m {
                    let term = &e[m - i] * &p[i];
                    if i % 2 == 1 {
                        acc += term;
                    } else {
                        acc -= term;
                    }
                }
                e.push(acc / q(m as i64));
            }
            e[k].clone()
        })
        .collect()
}

#[test]
fn exterior_characters_match_newton_identities() {
    for g in groups() {
        for (name, v) in standard_reps(&g, Ring::Rationals).unwrap() {
            for k in 0..=4 {
                assert_eq!(v.exterior_rep(k).character().values, newton_exterior_character(&v, k), "{g} {name} k={k}");
            }
        }
    }
}

#[test]
fn character_is_a_ring_homomorphism() {
    for g in groups() {
        let reps = standard_reps(&g, Ring::Rationals).unwrap();
        for (_, v) in &reps {
            for (_, w) in &reps {
                let sum = v.direct_sum(w).unwrap().character();
                assert_eq!(sum, v.character().add(&w.character()));
                let product = v.tensor_rep(w).unwrap();
                product.check_homomorphism().unwrap();
                assert_eq!(product.character(), v.character().mul(&w.character()));
            }
        }
    }
}

#[test]
fn irreducibles_decompose_the_regular_representation() {
    // Multiplicity of a rational irreducible in ℚ[G] is its rank divided by
    // the dimension of its endomorphism field: 1 for the cyclotomic pieces
    // of a cyclic group, the rank itself for the other groups here.
    for g in groups() {
        let cyclic = matches!(g.kind(), kpower::equivariant::GroupKind::Cyclic(_));
        let mut total = kpower::equivariant::Character::zero(Ring::Rationals, g.classes().len());
        for (_, v) in rational_irreducibles(&g, Ring::Rationals).unwrap() {
            v.check_homomorphism().unwrap();
            let m = if cyclic { 1 } else { v.rank() as i64 };
            total = total.add(&v.character().scale(&BigInt::from(m)));
        }
        let regular = GRep::regular(g.clone(), Ring::Rationals).character();
        assert_eq!(regular.values[0], q(g.order() as i64));
        assert_eq!(total, regular, "{g}");
    }
}

#[test]
fn composition_law_on_standard_representations() {
    for g in groups() {
        for (name, v) in standard_reps(&g, Ring::Rationals).unwrap() {
            for (k, l) in [(2, 2), (1, 2), (1, 3), (2, 1), (3, 1)] {
                let check = verify_composition_rg(&v, k, l).unwrap();
                assert!(check.holds, "{g} {name} ({k},{l}): {} vs {}", check.lhs, check.rhs);
            }
        }
    }
}

#[test]
fn polynomial_functor_agrees_with_the_composition_polynomial() {
    let g = Arc::new(FiniteGroup::symmetric3());
    let v = GRep::natural(g, Ring::Rationals).unwrap();
    let word = "lambda2(lambda2(V))";
    assert_eq!(FunctorWord::parse(word).unwrap().rank(3), 3);
    let w = apply_polynomial_functor(word, &v).unwrap();
    assert_eq!(w.rank(), 3);
    let check = verify_composition_rg(&v, 2, 2).unwrap();
    assert_eq!(w.character(), check.lhs);
}

#[test]
fn modular_coefficients_are_rejected() {
    let g = Arc::new(FiniteGroup::cyclic(2).unwrap());
    let v = GRep::regular(g, Ring::PrimeField(2));
    assert!(matches!(RepElement::new(&v), Err(Error::ModularCase { .. })));
    assert!(matches!(verify_composition_rg(&v, 2, 2), Err(Error::ModularCase { .. })));
}

#[test]
fn k0_distinguishes_sign_from_trivial() {
    let g = Arc::new(FiniteGroup::symmetric3());
    // Λ² of the two-dimensional irreducible is the sign representation
    let (name, standard) = rational_irreducibles(&g, Ring::Rationals).unwrap().pop().unwrap();
    assert_eq!(standard.rank(), 2, "{name}");
    let sign = standard.exterior_rep(2);
    let triv = GRep::trivial(g, Ring::Rationals, 1);
    let a = RepElement::new(&sign).unwrap();
    let b = RepElement::new(&triv).unwrap();
    assert!(!k0_equal(&a, &b).unwrap());
    assert!(k0_equal(&a, &a).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn exterior_powers_of_random_sums(group in 0usize..4, picks in proptest::collection::vec(0usize..6, 1..3), k in 0usize..4) {
        let g = groups()[group].clone();
        let reps = standard_reps(&g, Ring::Rationals).unwrap();
        let mut v = GRep::zero(g.clone(), Ring::Rationals);
        for p in picks {
            v = v.direct_sum(&reps[p % reps.len()].1).unwrap();
        }
        if v.rank() <= 10 {
            prop_assert_eq!(v.exterior_rep(k).character().values, newton_exterior_character(&v, k));
        }
    }
}
