use std::sync::Arc;

use proptest::prelude::*;

use kpower::binary::BinaryComplex;
use kpower::equivariant::{standard_reps, FiniteGroup};
use kpower::format::{parse, parse_binary, parse_complex, parse_rep, write_binary, write_complex, write_rep, Parsed};
use kpower::linalg::Ring;
use kpower::{random, Error};

fn ring_of(i: u8) -> Ring {
    [Ring::Integers, Ring::PrimeField(2), Ring::PrimeField(7), Ring::Rationals][i as usize % 4]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn complexes_roundtrip(seed in any::<u64>(), r in 0u8..4, top in 0usize..4) {
        let c = random::complex(ring_of(r), &mut random::rng(seed), top, 3);
        let text = write_complex(&c);
        let back = parse_complex(&text).unwrap();
        prop_assert_eq!(&back, &c);
        prop_assert_eq!(write_complex(&back), text);
    }

    #[test]
    fn binary_complexes_roundtrip(seed in any::<u64>(), r in 0u8..4, top in 1usize..3) {
        let ring = ring_of(r);
        let mut rng = random::rng(seed);
        let c = random::complex(ring, &mut rng, top, 3);
        let g = (0..=top).map(|n| random::invertible(ring, &mut rng, c.rank(n))).collect();
        let (other, _) = c.conjugate(g).unwrap();
        let b = BinaryComplex::from_pair(&c, &other).unwrap();
        prop_assert_eq!(parse_binary(&write_binary(&b)).unwrap(), b);
    }

    #[test]
    fn garbage_never_panics(text in "[a-z0-9 \n#/-]{0,80}") {
        let _ = parse(&text);
    }
}

#[test]
fn representations_roundtrip() {
    for name in ["C3", "klein4", "symmetric3"] {
        let g = Arc::new(FiniteGroup::preset(name).unwrap());
        for (_, v) in standard_reps(&g, Ring::Rationals).unwrap() {
            assert_eq!(parse_rep(&write_rep(&v)).unwrap(), v);
        }
    }
    let table = FiniteGroup::from_table(vec![vec![0, 1], vec![1, 0]]).unwrap();
    let v = kpower::equivariant::GRep::regular(Arc::new(table), Ring::Integers);
    let text = write_rep(&v);
    assert!(text.contains("group table 2"));
    assert_eq!(parse_rep(&text).unwrap(), v);
}

#[test]
fn two_term_file() {
    let text = "ring Z\ndegree 0 rank 1\ndegree 1 rank 1\nd 1\n2\n";
    let c = parse_complex(text).unwrap();
    assert_eq!(c.ranks(), &[1, 1]);
    assert!(matches!(parse(text).unwrap(), Parsed::Complex(_)));
}

#[test]
fn square_zero_violation_names_the_degrees() {
    let text = "ring Z\ndegree 0 rank 1\ndegree 1 rank 1\ndegree 2 rank 1\nd 1\n1\nd 2\n1\n";
    assert_eq!(parse(text).unwrap_err(), Error::NotAComplex { lower: 1, upper: 2 });
}

#[test]
fn syntax_errors_carry_positions() {
    let text = "ring Z\ndegree 0 rank 1\ndegree 1 rank 1\nd 1\n2 3\n";
    match parse(text).unwrap_err() {
        Error::Parse { line, column, .. } => assert_eq!((line, column), (5, 3)),
        e => panic!("unexpected {e:?}"),
    }
    match parse("ring W\n").unwrap_err() {
        Error::Parse { line, column, .. } => assert_eq!((line, column), (1, 6)),
        e => panic!("unexpected {e:?}"),
    }
}

#[test]
fn binary_grading_mismatch_is_an_error() {
    // dtilde 1 has the wrong shape for the declared ranks
    let text = "ring Q\ndegree 0 rank 1\ndegree 1 rank 1\nd 1\n3\ndtilde 1\n1 1\n";
    assert!(parse(text).is_err());
    // both differentials square to zero individually but not dtilde
    let text = "ring Q\ndegree 0 rank 1\ndegree 1 rank 1\ndegree 2 rank 1\nd 1\n0\nd 2\n1\ndtilde 1\n1\ndtilde 2\n1\n";
    assert!(matches!(parse(text).unwrap_err(), Error::NotABinaryComplex { which: "dtilde", .. }));
}
