//! Randomized and enumerated property suites. Case `i` of a suite draws
//! from its own seeded stream, and results are collected in case order,
//! so reports do not depend on the thread count.

use std::sync::Arc;

use num_bigint::BigInt;
use rayon::prelude::*;

use kpower::binary::{binary_power, k1_class, standard_contraction, torsion, torsion_with, BinaryComplex, UnitClass};
use kpower::complex::{ChainComplex, ChainMap};
use kpower::equivariant::{standard_reps, verify_composition_rg, FiniteGroup, GRep};
use kpower::lambda::{
    check_composition_axiom, check_e1, check_e2, check_e3, check_e4, check_e5, check_e5_pair, check_naturality,
    check_product_rule, check_sum_rule, lambda_binomial, universal_composition_sides, universal_p_compose, Binomial,
    LambdaPoint, ModuleChain,
};
use kpower::linalg::{int, Matrix, Ring};
use kpower::random::{self, Rng64};
use kpower::simplicial::{dold_puppe_power, dold_puppe_power_map, gamma, power_complex_via_kernels, PowerKind};
use kpower::Result;

use crate::report::Record;

pub const SUITES: [&str; 9] = [
    "roundtrip",
    "quasi-iso",
    "euler",
    "acyclic",
    "axioms",
    "lambda",
    "equivariant",
    "binary",
    "k1",
];

#[derive(Clone, Debug)]
pub struct Config {
    pub seed: u64,
    /// Extra simplicial levels built above the top degree in the
    /// roundtrip suite.
    pub slack: usize,
    /// Restricts the randomized suites to one ring when set.
    pub ring: Option<Ring>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            seed: 42,
            slack: 2,
            ring: None,
        }
    }
}

impl Config {
    /// Ring for case `i`: alternates through `defaults` unless overridden.
    fn ring(&self, defaults: &[Ring], i: usize) -> Ring {
        self.ring.unwrap_or(defaults[i % defaults.len()])
    }

    fn rng(&self, stream: u64, i: usize) -> Rng64 {
        random::sub_rng(self.seed, stream, i as u64)
    }
}

pub fn run(name: &str, cfg: &Config) -> Option<Vec<Record>> {
    Some(match name {
        "roundtrip" => roundtrip(cfg, 200),
        "quasi-iso" => quasi_iso(cfg, 200),
        "euler" => euler(cfg, 100),
        "acyclic" => acyclic(cfg, 100),
        "axioms" => axioms(cfg, 100),
        "lambda" => lambda_identities(),
        "equivariant" => equivariant(None),
        "binary" => binary(cfg, 100, 20, 50),
        "k1" => k1_experiment(),
        _ => return None,
    })
}

fn cases(n: usize, f: impl Fn(usize) -> Record + Sync + Send) -> Vec<Record> {
    (0..n).into_par_iter().map(f).collect()
}

fn outcome(suite: &'static str, case: String, r: Result<(bool, String)>) -> Record {
    match r {
        Ok((pass, detail)) => Record::new(suite, case, pass, detail),
        Err(e) => Record::new(suite, case, false, format!("error: {e}")),
    }
}

const Z: Ring = Ring::Integers;
const F2: Ring = Ring::PrimeField(2);
const F5: Ring = Ring::PrimeField(5);
const Q: Ring = Ring::Rationals;

/// `N(Γ C) = C` with Γ built `slack` levels past the top degree.
pub fn roundtrip(cfg: &Config, n: usize) -> Vec<Record> {
    cases(n, |i| {
        let ring = cfg.ring(&[Z, F2], i);
        let mut rng = cfg.rng(1, i);
        let top = i % 4;
        let c = random::complex(ring, &mut rng, top, 3);
        let r = (|| {
            let bound = top + cfg.slack;
            let back = gamma(&c, bound)?.normalize();
            Ok((back == c.padded(bound), format!("{ring} ranks={:?} bound={bound}", c.ranks())))
        })();
        outcome("roundtrip", format!("{i:03}"), r)
    })
}

/// Sizes used by the power suites: `(k, top, max_rank)`.
fn power_shape(i: usize) -> (usize, usize, usize) {
    match i % 3 {
        0 => (2, 1, 3),
        1 => (2, 2, 2),
        _ => (3, 1, 2),
    }
}

/// `Λ^k f` is a quasi-isomorphism for `k = 2, 3` on a quasi-isomorphism
/// in degrees 0..=1 (ranks ≤ 2 before the acyclic summand); even cases
/// add `Λ²` of one in degrees 0..=2 with ranks ≤ 3. The
/// homology of the two powers is compared as a second route.
pub fn quasi_iso(cfg: &Config, n: usize) -> Vec<Record> {
    cases(n, |i| {
        let ring = cfg.ring(&[Z, F2], i);
        let mut rng = cfg.rng(2, i);
        let mut maps = vec![(random::quasi_iso(ring, &mut rng, 1, 2), vec![2, 3])];
        if i % 2 == 0 {
            maps.push((random::quasi_iso(ring, &mut rng, 2, 3), vec![2]));
        }
        let r = (|| {
            let mut pass = true;
            let mut detail = ring.to_string();
            for (f, ks) in &maps {
                pass &= f.is_quasi_iso();
                detail += &format!(" {:?}->{:?}", f.source().ranks(), f.target().ranks());
                for &k in ks {
                    let g = dold_puppe_power_map(f, k)?;
                    let ok = g.is_quasi_iso() && g.source().homology_all() == g.target().homology_all();
                    pass &= ok;
                    detail += &format!(" k{k}:{}", if ok { "qi" } else { "NOT-qi" });
                }
            }
            Ok((pass, detail))
        })();
        outcome("quasi-iso", format!("{i:03}"), r)
    })
}

/// `χ(Λ^k C) = λ^k(χ(C))`; every fourth complex is a shift, so negative
/// Euler characteristics occur.
pub fn euler(cfg: &Config, n: usize) -> Vec<Record> {
    cases(n, |i| {
        let ring = cfg.ring(&[Z, F2], i);
        let mut rng = cfg.rng(3, i);
        let k = 2 + (i / 2) % 2;
        let top = if k == 2 { 2 } else { 1 };
        let c = if i % 4 == 0 {
            random::complex(ring, &mut rng, top - 1, 3).shift_left()
        } else {
            random::complex(ring, &mut rng, top, 3)
        };
        let r = (|| {
            let chi = c.euler_characteristic().value;
            let power = dold_puppe_power(&c, k)?.euler_characteristic().value;
            let expected = lambda_binomial(chi, k);
            Ok((
                BigInt::from(power) == expected,
                format!("{ring} k={k} chi={chi} chi(power)={power} expected={expected}"),
            ))
        })();
        outcome("euler", format!("{i:03}"), r)
    })
}

/// `Λ^k` of an acyclic complex is acyclic; small cases also compare the
/// fast construction with the kernel route.
pub fn acyclic(cfg: &Config, n: usize) -> Vec<Record> {
    cases(n, |i| {
        let ring = cfg.ring(&[Z, F2], i);
        let mut rng = cfg.rng(4, i);
        let (k, top, max_rank) = power_shape(i);
        let c = random::acyclic_complex(ring, &mut rng, top, max_rank);
        let r = (|| {
            let p = dold_puppe_power(&c, k)?;
            let mut pass = p.is_acyclic();
            let mut detail = format!("{ring} k={k} ranks={:?} power={:?}", c.ranks(), p.ranks());
            if i % 10 == 0 {
                let slow = power_complex_via_kernels(&c, k, PowerKind::Exterior)?;
                let agree = slow.ranks() == p.ranks() && slow.is_acyclic();
                pass &= agree;
                detail += if agree { " kernel-route:agree" } else { " kernel-route:DISAGREE" };
            }
            Ok((pass, detail))
        })();
        outcome("acyclic", format!("{i:03}"), r)
    })
}

/// Flag of summands with an extra intermediate module for (E5).
struct Flag {
    chain: ModuleChain,
    /// `(p, W')` with `V_{p-1} ⊂ W' ⊂ V_p`.
    e5: Vec<(usize, Matrix)>,
    automorphism: Matrix,
}

fn random_flag(ring: Ring, rng: &mut Rng64, k: usize, ambient: usize) -> Result<Flag> {
    use rand::Rng;
    let g = random::invertible(ring, rng, ambient);
    let mut dims: Vec<usize> = (0..k).map(|_| rng.gen_range(0..=ambient)).collect();
    dims.sort_unstable();
    let cols = |d: usize| g.select_columns(&(0..d).collect::<Vec<_>>());
    let chain = ModuleChain::new(ring, ambient, dims.iter().map(|&d| cols(d)).collect())?;
    let e5 = (0..k)
        .map(|p| {
            let low = if p == 0 { 0 } else { dims[p - 1] };
            (p, cols(rng.gen_range(low..=dims[p])))
        })
        .collect();
    Ok(Flag {
        chain,
        e5,
        automorphism: random::invertible(ring, rng, ambient),
    })
}

/// (E1)-(E5) on random flags of length ≤ 3 in rank ≤ 4; every tenth case
/// also runs (E5) for complexes through Γ.
pub fn axioms(cfg: &Config, n: usize) -> Vec<Record> {
    cases(n, |i| {
        let ring = cfg.ring(&[Z, F2], i);
        let mut rng = cfg.rng(5, i);
        let k = 1 + (i / 2) % 3;
        let ambient = 1 + (i / 6) % 4;
        let r = (|| {
            let flag = random_flag(ring, &mut rng, k, ambient)?;
            let chain = &flag.chain;
            let mut failed = Vec::new();
            for j in 1..k {
                if !check_e1(chain, j)? {
                    failed.push(format!("E1@{j}"));
                }
                if !check_e2(chain, j)? {
                    failed.push(format!("E2@{j}"));
                }
                if !check_naturality(chain, &flag.automorphism, j)? {
                    failed.push(format!("nat@{j}"));
                }
            }
            if k == 3 {
                if !check_e3(chain, 1, 2)? {
                    failed.push("E3".into());
                }
                if !check_e4(chain, 1, 2)? {
                    failed.push("E4".into());
                }
            }
            let mut e5_ranks = Vec::new();
            for (p, w) in &flag.e5 {
                let rep = check_e5(chain, *p, w)?;
                if !rep.is_exact() {
                    failed.push(format!("E5@{p}"));
                }
                e5_ranks.push(format!("{}+{}={}", rep.ranks.0, rep.ranks.2, rep.ranks.1));
            }
            let mut detail = format!(
                "{ring} k={k} n={ambient} dims={:?} E5[{}]",
                chain.terms().iter().map(Matrix::cols).collect::<Vec<_>>(),
                e5_ranks.join(" ")
            );
            if i % 10 == 0 {
                let inc = random_summand_inclusion(ring, &mut rng)?;
                let (first, second) = check_e5_pair(&inc)?;
                let exact = first.iter().chain(&second).all(|r| r.is_exact());
                if !exact {
                    failed.push("E5-complex".into());
                }
                detail += &format!(" complex-E5 {:?}->{:?}", inc.source().ranks(), inc.target().ranks());
            }
            if !failed.is_empty() {
                detail += &format!(" failed: {}", failed.join(","));
            }
            Ok((failed.is_empty(), detail))
        })();
        outcome("axioms", format!("{i:03}"), r)
    })
}

/// `V ↣ V ⊕ U` in a random basis, both complexes in degrees 0..=1.
fn random_summand_inclusion(ring: Ring, rng: &mut Rng64) -> Result<ChainMap> {
    let v = random::complex(ring, rng, 1, 1);
    let u = random::complex(ring, rng, 1, 1);
    let sum = v.direct_sum(&u)?;
    let inclusion = ChainMap::new(
        v.clone(),
        sum.clone(),
        (0..=1)
            .map(|n| Matrix::identity(ring, v.rank(n)).vstack(&Matrix::zeros(ring, u.rank(n), v.rank(n))))
            .collect(),
    )?;
    let g = (0..=1).map(|n| random::invertible(ring, rng, sum.rank(n))).collect();
    let (_, iso) = sum.conjugate(g)?;
    iso.compose(&inclusion)
}

/// λ-ring identities in the binomial ring for `|n| ≤ 8`, the value and
/// shape of `P_{2,2}`, and the universal composition identity.
pub fn lambda_identities() -> Vec<Record> {
    const S: &str = "lambda";
    let mut out = Vec::new();
    let range = || -8i64..=8;
    let point = |n: i64, order: usize| LambdaPoint::new(Binomial(BigInt::from(n)), order);
    for k in 1..=3 {
        let (mut ok, mut total) = (0, 0);
        for a in range() {
            for b in range() {
                total += 1;
                if check_sum_rule(&point(a, k), &point(b, k), k).unwrap_or(false) {
                    ok += 1;
                }
            }
        }
        out.push(Record::new(S, format!("sum-k{k}"), ok == total, format!("{ok}/{total}")));
    }
    for k in 1..=3 {
        let (mut ok, mut total) = (0, 0);
        for a in range() {
            for b in range() {
                total += 1;
                if check_product_rule(&point(a, k), &point(b, k), k).unwrap_or(false) {
                    ok += 1;
                }
            }
        }
        out.push(Record::new(S, format!("product-k{k}"), ok == total, format!("{ok}/{total}")));
    }
    for k in 1..=3 {
        for l in 1..=3 {
            let (mut ok, mut total) = (0, 0);
            for a in range() {
                total += 1;
                if check_composition_axiom(&point(a, k * l), k, l).unwrap_or(false) {
                    ok += 1;
                }
            }
            out.push(Record::new(S, format!("compose-k{k}-l{l}"), ok == total, format!("{ok}/{total}")));
        }
    }
    let p22 = universal_p_compose(2, 2);
    let value = p22.evaluate(&[4, 6, 4, 1].map(BigInt::from));
    out.push(Record::new(S, "P22-at-4", value == BigInt::from(15), format!("P22(4,6,4,1)={value}")));
    out.push(Record::new(S, "P22-shape", p22.to_string() == "e1*e3 - e4", format!("P22={p22}")));
    for (k, l) in [(2, 2), (2, 3), (3, 2)] {
        let (lhs, rhs) = universal_composition_sides(k, l);
        out.push(Record::new(
            S,
            format!("universal-k{k}-l{l}"),
            lhs == rhs,
            format!("{} variables, {} terms", k * l + 1, rhs.terms().len()),
        ));
    }
    out
}

/// Groups used by the equivariant suite.
pub fn suite_groups() -> Vec<FiniteGroup> {
    vec![
        FiniteGroup::cyclic(2).expect("C2"),
        FiniteGroup::cyclic(3).expect("C3"),
        FiniteGroup::klein4(),
        FiniteGroup::symmetric3(),
    ]
}

pub const EQUIVARIANT_PAIRS: [(usize, usize); 6] = [(2, 2), (1, 1), (1, 2), (1, 3), (2, 1), (3, 1)];

/// Composition law in the representation ring for each group, test
/// representation and `(k, l)`.
pub fn equivariant(group: Option<FiniteGroup>) -> Vec<Record> {
    let groups = group.map_or_else(suite_groups, |g| vec![g]);
    let mut jobs: Vec<(String, GRep, usize, usize)> = Vec::new();
    for g in groups {
        let g = Arc::new(g);
        let reps = match standard_reps(&g, Q) {
            Ok(r) => r,
            Err(e) => {
                return vec![Record::new("equivariant", g.to_string(), false, format!("error: {e}"))];
            }
        };
        for (name, v) in reps {
            for (k, l) in EQUIVARIANT_PAIRS {
                jobs.push((format!("{g}-{name}-k{k}-l{l}"), v.clone(), k, l));
            }
        }
    }
    jobs.into_par_iter()
        .map(|(case, v, k, l)| {
            let r = verify_composition_rg(&v, k, l).map(|c| (c.holds, format!("rank={} chi={}", v.rank(), c.lhs)));
            outcome("equivariant", case, r)
        })
        .collect()
}

/// Binary layer: diagonal classes vanish, torsion ignores the choice of
/// contraction, and powers of the two differentials share their grading.
pub fn binary(cfg: &Config, diagonals: usize, contractions: usize, powers: usize) -> Vec<Record> {
    let fields = [F5, Q];
    let field = |i: usize| match cfg.ring {
        Some(r) if r.is_field() => r,
        _ => fields[i % 2],
    };
    let mut out = cases(diagonals, |i| {
        let ring = field(i);
        let mut rng = cfg.rng(8, i);
        let c = random::acyclic_complex(ring, &mut rng, 1 + i % 3, 3);
        let r = k1_class(&BinaryComplex::diag(&c)).map(|u| (u.is_one(), format!("{ring} ranks={:?} class={u}", c.ranks())));
        outcome("binary", format!("diag-{i:03}"), r)
    });
    out.extend(cases(contractions, |i| {
        let ring = field(i);
        let mut rng = cfg.rng(9, i);
        let c = random::acyclic_complex(ring, &mut rng, 1 + i % 3, 3);
        let r = (|| {
            let reference = torsion_with(&c, &standard_contraction(&c)?)?;
            let mut values = vec![reference.clone()];
            for _ in 0..5 {
                values.push(torsion_with(&c, &random::contraction(&c, &mut rng))?);
            }
            let same = values.iter().all(|v| *v == reference) && torsion(&c)? == reference;
            Ok((same, format!("{ring} ranks={:?} torsion={reference} over 6 contractions", c.ranks())))
        })();
        outcome("binary", format!("contraction-{i:03}"), r)
    }));
    out.extend(cases(powers, |i| {
        let ring = field(i);
        let mut rng = cfg.rng(10, i);
        let (k, top, max_rank) = power_shape(i);
        let c = random::acyclic_complex(ring, &mut rng, top, max_rank);
        let r = (|| {
            let g = (0..=top).map(|n| random::invertible(ring, &mut rng, c.rank(n))).collect();
            let (other, _) = c.conjugate(g)?;
            let b = BinaryComplex::from_pair(&c, &other)?;
            let p = binary_power(&b, k)?;
            let bottom = dold_puppe_power(&b.bottom(), k)?;
            let top_power = dold_puppe_power(&b.top(), k)?;
            let same = bottom.ranks() == top_power.ranks() && p.ranks() == bottom.ranks() && p.is_biacyclic();
            Ok((same, format!("{ring} k={k} ranks={:?} power={:?}", c.ranks(), p.ranks())))
        })();
        outcome("binary", format!("power-{i:03}"), r)
    }));
    out
}

/// `k1_class(Λ² (F →u F))` against the prediction `u⁻¹`; reported only.
pub fn k1_experiment() -> Vec<Record> {
    [2, 3, 5]
        .into_iter()
        .map(|u| {
            let r = (|| {
                let b = BinaryComplex::standard_unit_complex(Q, &int(u))?;
                let class = k1_class(&binary_power(&b, 2)?)?;
                let predicted = UnitClass::new(Q, int(u))?.inv();
                let verdict = if class == predicted { "match" } else { "mismatch" };
                Ok((class == predicted, format!("class={class} predicted={predicted} {verdict}")))
            })();
            outcome("k1", format!("u={u}"), r).informational()
        })
        .collect()
}

/// Runs `names` in the given order.
pub fn run_many(names: &[&str], cfg: &Config) -> Vec<Record> {
    names.iter().flat_map(|n| run(n, cfg).unwrap_or_default()).collect()
}

/// Converts a complex to another ring (used by `--ring` on file commands).
pub fn in_ring(c: &ChainComplex, ring: Option<Ring>) -> Result<ChainComplex> {
    match ring {
        Some(r) if r != c.ring() => c.change_ring(r),
        _ => Ok(c.clone()),
    }
}
