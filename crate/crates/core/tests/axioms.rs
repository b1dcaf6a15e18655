use proptest::prelude::*;
use rand::Rng;

use kpower::lambda::{check_e1, check_e2, check_e3, check_e4, check_e5, check_naturality, ModuleChain};
use kpower::linalg::{Matrix, Ring};
use kpower::random;

fn ring_of(i: u8) -> Ring {
    [Ring::Integers, Ring::PrimeField(2), Ring::PrimeField(3), Ring::Rationals][i as usize % 4]
}

/// Number of strictly increasing `i_1 < … < i_k` with `i_j < dims[j]`:
/// the rank of `V_1 ∧ … ∧ V_k` for a flag of summands of these ranks.
fn flag_wedge_rank(dims: &[usize]) -> usize {
    // ways[v] = sequences so far whose last index is v
    let top = dims.iter().copied().max().unwrap_or(0);
    let mut ways = vec![1usize; 1];
    let mut first = true;
    for &d in dims {
        let mut next = vec![0usize; top];
        for (v, slot) in next.iter_mut().enumerate().take(d) {
            *slot = if first { 1 } else { ways.iter().take(v).sum() };
        }
        ways = next;
        first = false;
    }
    if dims.is_empty() {
        1
    } else {
        ways.iter().sum()
    }
}

struct Flag {
    chain: ModuleChain,
    dims: Vec<usize>,
    basis: Matrix,
}

fn flag(ring: Ring, seed: u64, k: usize, ambient: usize) -> Flag {
    let mut rng = random::rng(seed);
    let basis = random::invertible(ring, &mut rng, ambient);
    let mut dims: Vec<usize> = (0..k).map(|_| rng.gen_range(0..=ambient)).collect();
    dims.sort_unstable();
    let subs = dims.iter().map(|&d| basis.select_columns(&(0..d).collect::<Vec<_>>())).collect();
    Flag {
        chain: ModuleChain::new(ring, ambient, subs).unwrap(),
        dims,
        basis,
    }
}

#[test]
fn wedge_rank_oracle_sanity() {
    assert_eq!(flag_wedge_rank(&[4, 4]), 6);
    assert_eq!(flag_wedge_rank(&[1, 4]), 3);
    assert_eq!(flag_wedge_rank(&[1, 1, 3]), 0);
    assert_eq!(flag_wedge_rank(&[2, 2, 3]), 1);
    assert_eq!(flag_wedge_rank(&[1, 2, 3]), 1);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn e1_e2_and_naturality(seed in any::<u64>(), r in 0u8..4, k in 1usize..4, ambient in 1usize..5) {
        let f = flag(ring_of(r), seed, k, ambient);
        prop_assert_eq!(f.chain.wedge().cols(), flag_wedge_rank(&f.dims));
        let g = random::invertible(ring_of(r), &mut random::rng(seed ^ 1), ambient);
        for j in 1..k {
            prop_assert!(check_e1(&f.chain, j).unwrap());
            prop_assert!(check_e2(&f.chain, j).unwrap());
            prop_assert!(check_naturality(&f.chain, &g, j).unwrap());
        }
        if k == 3 {
            prop_assert!(check_e3(&f.chain, 1, 2).unwrap());
            prop_assert!(check_e4(&f.chain, 1, 2).unwrap());
        }
    }

    #[test]
    fn e5_is_exact_with_predicted_ranks(seed in any::<u64>(), r in 0u8..4, k in 1usize..4, ambient in 1usize..5, pick in any::<u64>()) {
        let f = flag(ring_of(r), seed, k, ambient);
        let p = (pick as usize) % k;
        let low = if p == 0 { 0 } else { f.dims[p - 1] };
        let dim_w = low + (pick as usize / 7) % (f.dims[p] - low + 1);
        let w_prime = f.basis.select_columns(&(0..dim_w).collect::<Vec<_>>());
        let report = check_e5(&f.chain, p, &w_prime).unwrap();
        prop_assert!(report.is_exact(), "{:?}", report);
        let mut replaced = f.dims.clone();
        replaced[p] = dim_w;
        let pushed: Vec<usize> = f.dims[p..].iter().map(|d| d - dim_w).collect();
        prop_assert_eq!(report.ranks.0, flag_wedge_rank(&replaced));
        prop_assert_eq!(report.ranks.1, flag_wedge_rank(&f.dims));
        prop_assert_eq!(report.ranks.2, flag_wedge_rank(&f.dims[..p]) * flag_wedge_rank(&pushed));
    }
}

#[test]
fn non_nested_terms_are_rejected() {
    let ring = Ring::Integers;
    let e1 = Matrix::from_i64(ring, &[vec![1], vec![0]]);
    let e2 = Matrix::from_i64(ring, &[vec![0], vec![1]]);
    assert!(ModuleChain::new(ring, 2, vec![e1, e2]).is_err());
    // 2·e1 is not a summand
    let twice = Matrix::from_i64(ring, &[vec![2], vec![0]]);
    assert!(ModuleChain::new(ring, 2, vec![twice]).is_err());
}
