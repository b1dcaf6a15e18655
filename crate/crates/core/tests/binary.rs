use proptest::prelude::*;

use kpower::binary::{
    binary_power, is_contraction, k1_class, standard_contraction, torsion, torsion_with, BinaryComplex, UnitClass,
};
use kpower::complex::ChainComplex;
use kpower::linalg::{Matrix, Ring, Scalar};
use kpower::random;
use kpower::simplicial::dold_puppe_power;

fn field_of(i: u8) -> Ring {
    [Ring::Rationals, Ring::PrimeField(5), Ring::PrimeField(7)][i as usize % 3]
}

/// Torsion from bases instead of a contraction: in each degree extend the
/// image basis `E_n = d(L_{n+1})` by unit vectors `L_n` and multiply
/// `det[E_n | L_n]^{(-1)^n}`.
fn torsion_from_bases(c: &ChainComplex) -> Scalar {
    let ring = c.ring();
    let mut value = ring.one();
    let mut lifted = Matrix::zeros(ring, c.rank(c.top() + 1), 0);
    for n in (0..=c.top()).rev() {
        let e = &c.differential(n + 1) * &lifted;
        let mut basis = e.clone();
        let mut chosen = Vec::new();
        for j in 0..c.rank(n) {
            let unit = Matrix::identity(ring, c.rank(n)).select_columns(&[j]);
            let trial = basis.hstack(&unit);
            if trial.rank() == trial.cols() {
                basis = trial;
                chosen.push(j);
            }
        }
        assert_eq!(basis.cols(), c.rank(n), "complex is not acyclic");
        let det = basis.determinant();
        value = if n % 2 == 0 { ring.mul(&value, &det) } else { ring.mul(&value, &ring.inv(&det)) };
        lifted = Matrix::identity(ring, c.rank(n)).select_columns(&chosen);
    }
    value
}

fn two_term(ring: Ring, rows: &[Vec<i64>]) -> ChainComplex {
    ChainComplex::two_term(Matrix::from_i64(ring, rows))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn torsion_agrees_with_the_basis_formula(seed in any::<u64>(), r in 0u8..3, top in 1usize..4) {
        let ring = field_of(r);
        let c = random::acyclic_complex(ring, &mut random::rng(seed), top, 3);
        prop_assert_eq!(torsion(&c).unwrap().value, torsion_from_bases(&c));
    }

    #[test]
    fn torsion_is_independent_of_the_contraction(seed in any::<u64>(), r in 0u8..3, top in 1usize..4) {
        let ring = field_of(r);
        let mut rng = random::rng(seed);
        let c = random::acyclic_complex(ring, &mut rng, top, 3);
        let reference = torsion(&c).unwrap();
        for _ in 0..5 {
            let h = random::contraction(&c, &mut rng);
            prop_assert!(is_contraction(&c, &h));
            prop_assert_eq!(torsion_with(&c, &h).unwrap(), reference.clone());
        }
    }

    #[test]
    fn diagonal_classes_are_trivial(seed in any::<u64>(), r in 0u8..3, top in 1usize..4) {
        let ring = field_of(r);
        let c = random::acyclic_complex(ring, &mut random::rng(seed), top, 3);
        prop_assert!(k1_class(&BinaryComplex::diag(&c)).unwrap().is_one());
    }

    #[test]
    fn binary_powers_have_matching_gradings(seed in any::<u64>(), r in 0u8..3, k in 1usize..4) {
        let ring = field_of(r);
        let mut rng = random::rng(seed);
        let c = random::acyclic_complex(ring, &mut rng, 1, 2);
        let g = (0..=c.top()).map(|n| random::invertible(ring, &mut rng, c.rank(n))).collect();
        let (other, _) = c.conjugate(g).unwrap();
        let b = BinaryComplex::from_pair(&c, &other).unwrap();
        let p = binary_power(&b, k).unwrap();
        let (bottom, top) = (dold_puppe_power(&c, k).unwrap(), dold_puppe_power(&other, k).unwrap());
        prop_assert_eq!(p.ranks(), bottom.ranks());
        prop_assert_eq!(p.ranks(), top.ranks());
        prop_assert_eq!(p.bottom(), bottom);
        prop_assert_eq!(p.top(), top);
        prop_assert!(p.is_biacyclic());
    }
}

#[test]
fn torsion_of_an_isomorphism_is_its_determinant() {
    let c = two_term(Ring::Rationals, &[vec![2, 1], vec![1, 3]]);
    assert_eq!(torsion(&c).unwrap().value, Ring::Rationals.from_i64(5));
    let h = standard_contraction(&c).unwrap();
    assert!(is_contraction(&c, &h));
}

#[test]
fn unit_complexes_multiply() {
    let q = Ring::Rationals;
    let two = BinaryComplex::standard_unit_complex(q, &q.from_i64(2)).unwrap();
    let three = BinaryComplex::standard_unit_complex(q, &q.from_i64(3)).unwrap();
    let six = k1_class(&two.direct_sum(&three).unwrap()).unwrap();
    assert_eq!(six, UnitClass::new(q, q.from_i64(6)).unwrap());
}

#[test]
fn square_of_a_unit_complex() {
    // Λ² of (F --u--> F, F --1--> F) is F --u--> F one degree up on the
    // bottom and F --1--> F on the top; its class is 1/u.
    let q = Ring::Rationals;
    for u in [2, 3, 5] {
        let b = BinaryComplex::standard_unit_complex(q, &q.from_i64(u)).unwrap();
        let p = binary_power(&b, 2).unwrap();
        assert_eq!(p.ranks(), &[0, 1, 1]);
        let expected = UnitClass::new(q, q.from_i64(u)).unwrap().inv();
        assert_eq!(k1_class(&p).unwrap(), expected);
    }
}

#[test]
fn errors_are_specific() {
    let z = two_term(Ring::Integers, &[vec![1]]);
    assert!(matches!(
        k1_class(&BinaryComplex::diag(&z)),
        Err(kpower::Error::RequiresField(Ring::Integers))
    ));
    let not_acyclic = two_term(Ring::Rationals, &[vec![0]]);
    assert!(matches!(torsion(&not_acyclic), Err(kpower::Error::NotAcyclic(0))));
    assert!(matches!(
        k1_class(&BinaryComplex::diag(&not_acyclic)),
        Err(kpower::Error::NotBiacyclic)
    ));
}
