//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Each exported function takes strings and returns a JSON string; errors
//! come back as thrown strings carrying the error kind.

use gasf_core::multiplicity::{weyl_dimension, Freudenthal};
use gasf_core::rational::fmt_q;
use gasf_core::springer::Springer;
use gasf_core::strata::smallest_integral_approximation;
use gasf_core::{Error, RootDatum, TorusElement};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Largest weight diagram the page will draw.
pub const MAX_WEIGHTS: usize = 5000;

fn fail(e: Error) -> String {
    format!("{}: {e}", e.kind())
}

/// Planar positions of weights of a rank-2 system, or points on a line for
/// rank 1. `None` in higher rank.
fn embedding(cartan: &[Vec<i64>]) -> Option<Vec<[f64; 2]>> {
    match cartan.len() {
        1 => Some(vec![[1.0, 0.0]]),
        2 => {
            // Gram matrix of simple roots, symmetrized so that α₁ has length² 2.
            let (a12, a21) = (cartan[0][1] as f64, cartan[1][0] as f64);
            let d2 = if a21 == 0.0 { 1.0 } else { a12 / a21 };
            let g = [[2.0, a12], [a12, 2.0 * d2]];
            let r1 = [g[0][0].sqrt(), 0.0];
            let x = g[0][1] / r1[0];
            let r2 = [x, (g[1][1] - x * x).max(0.0).sqrt()];
            // Fundamental weights in root coordinates: rows of the inverse Cartan matrix transpose.
            let det = (cartan[0][0] * cartan[1][1] - cartan[0][1] * cartan[1][0]) as f64;
            let inv = [
                [cartan[1][1] as f64 / det, -cartan[0][1] as f64 / det],
                [-cartan[1][0] as f64 / det, cartan[0][0] as f64 / det],
            ];
            Some(
                (0..2)
                    .map(|i| {
                        let (c1, c2) = (inv[0][i], inv[1][i]);
                        [c1 * r1[0] + c2 * r2[0], c1 * r1[1] + c2 * r2[1]]
                    })
                    .collect(),
            )
        }
        _ => None,
    }
}

/// The full character of `V_λ` for the dual group, `λ` in fundamental
/// coordinates: `{dimension, weights: [{weight, multiplicity, x, y}]}`.
pub fn weight_diagram_json(datum: &str, lambda: &str) -> Result<String, String> {
    let d = RootDatum::parse(datum).map_err(fail)?;
    let lam: Vec<i64> = lambda
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<i64>()
                .map_err(|_| format!("MalformedSpec: bad coordinate {s:?}"))
        })
        .collect::<Result<_, _>>()?;
    if lam.len() != d.rank() {
        return Err(fail(Error::DimensionMismatch {
            expected: d.rank(),
            got: lam.len(),
        }));
    }
    if lam.iter().any(|&x| x < 0) {
        return Err(fail(Error::NotDominant(lambda.into())));
    }
    let sys = d.dual_system();
    let dim = weyl_dimension(sys, &lam);
    if dim > MAX_WEIGHTS.into() {
        return Err(format!("TooLarge: dimension {dim} exceeds {MAX_WEIGHTS}"));
    }
    let mut f = Freudenthal::new(sys, &lam).map_err(fail)?;
    let basis = embedding(sys.cartan());
    let weights: Vec<Value> = f
        .full_character()
        .into_iter()
        .map(|(w, m)| {
            let (x, y) = match &basis {
                Some(b) => w.iter().zip(b).fold((0.0, 0.0), |(x, y), (&c, v)| {
                    (x + c as f64 * v[0], y + c as f64 * v[1])
                }),
                None => (0.0, 0.0),
            };
            json!({ "weight": w, "multiplicity": m, "x": x, "y": y })
        })
        .collect();
    Ok(json!({ "datum": d.name(), "dimension": dim.to_string(), "planar": basis.is_some(), "weights": weights }).to_string())
}

/// Smallest integral approximation of `ν` (user coordinates) with its chain.
pub fn approximation_json(datum: &str, nu: &str) -> Result<String, String> {
    let d = RootDatum::parse(datum).map_err(fail)?;
    let nu = d.parse_coweight(nu).map_err(fail)?;
    let a = smallest_integral_approximation(&d, &nu).map_err(fail)?;
    Ok(a.to_json(&d).to_string())
}

/// The fiber report for `γ` (JSON) and `λ` (user coordinates).
pub fn fiber_report_json(datum: &str, gamma: &str, lambda: &str) -> Result<String, String> {
    let d = RootDatum::parse(datum).map_err(fail)?;
    let g = TorusElement::from_json(&d, gamma).map_err(fail)?;
    let lam = d.parse_coweight(lambda).map_err(fail)?;
    let report = Springer::new(&d)
        .and_then(|s| s.full_report(&g, &lam))
        .map_err(fail)?;
    serde_json::to_string(&report.to_wire(&d)).map_err(|e| e.to_string())
}

/// Newton point, discriminant valuation and split rank of `γ`.
pub fn invariants_json(datum: &str, gamma: &str) -> Result<String, String> {
    let d = RootDatum::parse(datum).map_err(fail)?;
    let inv = TorusElement::from_json(&d, gamma)
        .and_then(|g| g.invariants(&d))
        .map_err(fail)?;
    Ok(json!({
        "newton": d.coweight_to_user(&inv.newton).iter().map(fmt_q).collect::<Vec<_>>(),
        "d": fmt_q(&inv.d),
        "r": fmt_q(&inv.r),
        "c": inv.c,
    })
    .to_string())
}

#[wasm_bindgen(js_name = weightDiagram)]
pub fn weight_diagram(datum: &str, lambda: &str) -> Result<String, JsValue> {
    weight_diagram_json(datum, lambda).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = integralApproximation)]
pub fn integral_approximation(datum: &str, nu: &str) -> Result<String, JsValue> {
    approximation_json(datum, nu).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = fiberReport)]
pub fn fiber_report(datum: &str, gamma: &str, lambda: &str) -> Result<String, JsValue> {
    fiber_report_json(datum, gamma, lambda).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = gammaInvariants)]
pub fn gamma_invariants(datum: &str, gamma: &str) -> Result<String, JsValue> {
    invariants_json(datum, gamma).map_err(|e| JsValue::from_str(&e))
}
