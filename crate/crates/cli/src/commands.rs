use num_bigint::BigInt;
use serde_json::json;

use kpower::binary::{binary_power, k1_class};
use kpower::complex::{ChainComplex, Homology};
use kpower::equivariant::{verify_composition_rg, FiniteGroup};
use kpower::format::{parse, parse_binary, parse_complex, write_complex, Parsed};
use kpower::lambda::{lambda_binomial, single_factor_coefficient, universal_composition_sides, universal_p_compose};
use kpower::linalg::Ring;
use kpower::simplicial::dold_puppe_power;
use kpower::{Error, Result};

use crate::report::{Record, Report};
use crate::suites::{self, in_ring, Config};

pub fn homology_text(ring: Ring, h: &Homology) -> String {
    let mut parts = Vec::new();
    if h.free_rank > 0 {
        parts.push(format!("{ring}^{}", h.free_rank));
    }
    parts.extend(h.torsion.iter().map(|t| format!("{ring}/{t}")));
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn homology_lines(report: &mut Report, c: &ChainComplex) {
    for (n, h) in c.homology_all().iter().enumerate() {
        report.info(
            "homology",
            json!({"degree": n, "free_rank": h.free_rank, "torsion": h.torsion}),
            format!("H{n} = {}", homology_text(c.ring(), h)),
        );
    }
}

fn read(path: &str) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.to_string(),
        message: e.to_string(),
    })
}

pub fn homology(path: &str, ring: Option<Ring>) -> Result<Report> {
    let c = in_ring(&parse_complex(&read(path)?)?, ring)?;
    let mut r = Report::new();
    r.info("ranks", json!({"ring": c.ring().tag(), "ranks": c.ranks()}), format!("ring {} ranks {:?}", c.ring(), c.ranks()));
    homology_lines(&mut r, &c);
    Ok(r)
}

/// Dold-Puppe power: ranks, differentials in the input format, homology.
pub fn lambda(path: &str, ring: Option<Ring>, k: usize) -> Result<Report> {
    let c = in_ring(&parse_complex(&read(path)?)?, ring)?;
    let p = dold_puppe_power(&c, k)?;
    let mut r = Report::new();
    r.info(
        "power",
        json!({"k": k, "ring": p.ring().tag(), "ranks": p.ranks()}),
        format!("lambda^{k}: ring {} ranks {:?}", p.ring(), p.ranks()),
    );
    let text = write_complex(&p);
    r.info("complex", json!({"text": text}), text.trim_end().to_string());
    homology_lines(&mut r, &p);
    Ok(r)
}

/// χ of the input and, with `--k`, of its power compared to `λ^k(χ)`.
pub fn euler(path: &str, ring: Option<Ring>, k: Option<usize>) -> Result<Report> {
    let c = in_ring(&parse_complex(&read(path)?)?, ring)?;
    let chi = c.euler_characteristic().value;
    let mut r = Report::new();
    r.info("euler", json!({"chi": chi}), format!("chi = {chi}"));
    if let Some(k) = k {
        let power = dold_puppe_power(&c, k)?.euler_characteristic().value;
        let expected = lambda_binomial(chi, k);
        r.record(Record::new(
            "euler",
            format!("k{k}"),
            BigInt::from(power) == expected,
            format!("chi(lambda^{k}) = {power}, lambda^{k}({chi}) = {expected}"),
        ));
    }
    Ok(r)
}

/// Class in `K₁` of a binary complex (a plain complex is read as its
/// diagonal); with `--k`, of its binary power.
pub fn k1class(path: &str, ring: Option<Ring>, k: Option<usize>) -> Result<Report> {
    let mut b = parse_binary(&read(path)?)?;
    if let Some(ring) = ring.filter(|r| *r != b.ring()) {
        b = kpower::binary::BinaryComplex::from_pair(&b.bottom().change_ring(ring)?, &b.top().change_ring(ring)?)?;
    }
    if let Some(k) = k {
        b = binary_power(&b, k)?;
    }
    let class = k1_class(&b)?;
    let mut r = Report::new();
    r.info(
        "k1class",
        json!({"ring": b.ring().tag(), "ranks": b.ranks(), "class": class}),
        format!("ring {} ranks {:?} class {class}", b.ring(), b.ranks()),
    );
    Ok(r)
}

/// `P_{k,l}`, its single-factor coefficient, the binomial composition law
/// for `|n| ≤ 8` and the universal identity when `kl ≤ 6`.
pub fn compose(k: usize, l: usize) -> Result<Report> {
    if k == 0 || l == 0 {
        return Err(Error::Dimension("k and l must be positive".into()));
    }
    if k * l > 9 {
        return Err(Error::InfeasibleSize(format!("kl = {} exceeds 9", k * l)));
    }
    let p = universal_p_compose(k, l);
    let mut r = Report::new();
    r.info("polynomial", json!({"k": k, "l": l, "P": p.to_string()}), format!("P_{{{k},{l}}} = {p}"));
    let c = single_factor_coefficient(k, l);
    r.info(
        "single-factor",
        json!({"coefficient": c.to_string()}),
        format!("coefficient of e{} = {c}", k * l),
    );
    let mut ok = 0;
    for n in -8i64..=8 {
        let values: Vec<BigInt> = (1..=k * l).map(|i| lambda_binomial(n, i)).collect();
        let lhs = {
            let inner = lambda_binomial(n, l);
            let inner = i64::try_from(inner).expect("small");
            lambda_binomial(inner, k)
        };
        if p.evaluate(&values) == lhs {
            ok += 1;
        }
    }
    r.record(Record::new("compose", "binomial", ok == 17, format!("{ok}/17 values of n in -8..=8")));
    if k * l <= 6 {
        let (lhs, rhs) = universal_composition_sides(k, l);
        r.record(Record::new(
            "compose",
            "universal",
            lhs == rhs,
            format!("symbolic identity in {} variables", k * l + 1),
        ));
    }
    Ok(r)
}

/// Composition law for a representation file, or the full suite.
pub fn equivariant(path: Option<&str>, group: Option<&str>, k: usize, l: usize) -> Result<Report> {
    let mut r = Report::new();
    match path {
        Some(path) => {
            let v = match parse(&read(path)?)? {
                Parsed::Rep(v) => v,
                _ => return Err(Error::Parse { line: 1, column: 1, message: "expected a representation".into() }),
            };
            let check = verify_composition_rg(&v, k, l)?;
            r.record(Record::new(
                "equivariant",
                format!("{}-k{k}-l{l}", v.group()),
                check.holds,
                format!("lhs={} rhs={}", check.lhs, check.rhs),
            ));
        }
        None => {
            let g = group.map(FiniteGroup::preset).transpose()?;
            r.records(suites::equivariant(g));
        }
    }
    Ok(r)
}

pub fn suite(names: &[&str], cfg: &Config) -> Report {
    let mut r = Report::new();
    r.info(
        "config",
        json!({"seed": cfg.seed, "slack": cfg.slack, "ring": cfg.ring.map(|x| x.tag()), "suites": names}),
        format!(
            "seed {} slack {} ring {} suites {}",
            cfg.seed,
            cfg.slack,
            cfg.ring.map_or("default".into(), |x| x.tag()),
            names.join(",")
        ),
    );
    r.records(suites::run_many(names, cfg));
    r.summarize();
    r
}
