//! Browser bindings. Every export returns JSON text; failures come back as
//! the same `{"error": {...}}` object the command line prints.

use serde_json::Value;
use wasm_bindgen::prelude::wasm_bindgen;

use lsys::curve::{kappa_curve, CurveRegime};
use lsys::report::{error_json, rounded_json, AnalysisReport};
use lsys::solve::{solve, SolveRequest};
use lsys::{BoundaryParam, ExtReal, Result, WeylModel};

fn render(result: Result<Value>) -> String {
    result.unwrap_or_else(|err| error_json(&err)).to_string()
}

/// `NaN` stands for an absent optional argument.
fn optional(x: f64) -> Option<f64> {
    (!x.is_nan()).then_some(x)
}

/// kappa against Im h along the extremal line, or along the sectorial ray when
/// `beta` is a number.
#[wasm_bindgen]
pub fn curve(nu: f64, beta: f64, im_min: f64, im_max: f64, samples: usize) -> String {
    render((|| {
        let model = WeylModel::bessel(nu)?;
        let regime = match optional(beta) {
            Some(beta) => CurveRegime::Sectorial { beta },
            None => CurveRegime::Extremal,
        };
        Ok(rounded_json(&kappa_curve(&model, regime, im_min, im_max, samples)?))
    })())
}

/// Full report of the system with boundary parameter h; `mu = Infinity` is
/// the state-space parameter at infinity.
#[wasm_bindgen]
pub fn analyze(nu: f64, h_re: f64, h_im: f64, mu: f64) -> String {
    render((|| {
        let model = WeylModel::bessel(nu)?;
        let h = BoundaryParam::from_parts(h_re, h_im)?;
        let mu = if mu.is_infinite() { ExtReal::Infinity } else { ExtReal::Finite(mu) };
        Ok(AnalysisReport::build(&model, mu, h)?.to_json())
    })())
}

/// Dual c-entropy problem; names as on the command line (`max-entropy`,
/// `extremal`, ...). Unused numeric arguments are `NaN`.
#[wasm_bindgen]
pub fn solve_problem(nu: f64, problem: &str, regime: &str, beta: f64, entropy: f64, dissipation: f64) -> String {
    render((|| {
        let model = WeylModel::bessel(nu)?;
        let request = SolveRequest {
            beta: optional(beta),
            entropy: optional(entropy),
            dissipation: optional(dissipation),
            ..SolveRequest::new(problem.parse()?, regime.parse()?)
        };
        Ok(rounded_json(&solve(&model, &request)?))
    })())
}
