use wasm_bindgen::prelude::*;

use kpower::complex::{ChainComplex, Homology};
use kpower::format::{parse_complex, write_complex};
use kpower::lambda::universal_p_compose;
use kpower::simplicial::dold_puppe_power;

// Largest kl accepted from the page; bigger ones freeze the tab.
const MAX_KL: usize = 9;

fn describe(ring: kpower::linalg::Ring, h: &Homology) -> String {
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

fn homology_lines(c: &ChainComplex) -> String {
    c.homology_all()
        .iter()
        .enumerate()
        .map(|(n, h)| format!("H{n} = {}\n", describe(c.ring(), h)))
        .collect()
}

pub fn homology_report(text: &str) -> Result<String, String> {
    let c = parse_complex(text).map_err(|e| e.to_string())?;
    Ok(homology_lines(&c))
}

pub fn power_report(text: &str, k: usize) -> Result<String, String> {
    let c = parse_complex(text).map_err(|e| e.to_string())?;
    let p = dold_puppe_power(&c, k).map_err(|e| e.to_string())?;
    Ok(format!("{}\n{}", write_complex(&p), homology_lines(&p)))
}

pub fn compose_report(k: usize, l: usize) -> Result<String, String> {
    if k == 0 || l == 0 {
        return Err("k and l must be positive".into());
    }
    if k * l > MAX_KL {
        return Err(format!("kl = {} is above {MAX_KL}", k * l));
    }
    Ok(format!("P_{{{k},{l}}} = {}", universal_p_compose(k, l)))
}

#[wasm_bindgen]
pub fn homology(text: &str) -> Result<String, JsValue> {
    homology_report(text).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn power(text: &str, k: usize) -> Result<String, JsValue> {
    power_report(text, k).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn compose(k: usize, l: usize) -> Result<String, JsValue> {
    compose_report(k, l).map_err(|e| JsValue::from_str(&e))
}
