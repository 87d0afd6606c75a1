//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Three operations: an evidence report for a table, CI and I sensitivity
//! curves, and prior density curves. The work is done by the plain functions
//! in [`ops`] so it can be tested off the browser.

use wasm_bindgen::prelude::*;

pub mod ops;

fn js(e: corrprop::Error) -> JsError {
    JsError::new(&e.to_string())
}

/// JSON report: default, CI and I evidence plus McNemar's test.
/// `cells` is `[n00, n01, n10, n11]`, `hyper` is `[a00, a01, a10, a11]`.
#[wasm_bindgen]
pub fn evidence(cells: &[u32], hyper: &[f64], q: f64) -> Result<String, JsError> {
    let report = ops::evidence(&ops::table(cells).map_err(js)?, &ops::hyper(hyper).map_err(js)?, q).map_err(js)?;
    Ok(serde_json::to_string(&report).expect("report serialises"))
}

/// `Pr(H0 | n)` on `points` equally spaced q values; CI values first, then I.
#[wasm_bindgen]
pub fn sensitivity(cells: &[u32], hyper: &[f64], points: usize) -> Result<Vec<f64>, JsError> {
    ops::sensitivity(&ops::table(cells).map_err(js)?, &ops::hyper(hyper).map_err(js)?, points).map_err(js)
}

/// Interior θ grid, the CI prior with `x_triangle` swings and the θ-marginal
/// of the I prior with `x_plus_plus` observations, concatenated.
#[wasm_bindgen]
pub fn prior_curves(hyper: &[f64], x_triangle: u32, x_plus_plus: u32, points: usize) -> Result<Vec<f64>, JsError> {
    ops::prior_curves(&ops::hyper(hyper).map_err(js)?, x_triangle as u64, x_plus_plus as u64, points).map_err(js)
}
