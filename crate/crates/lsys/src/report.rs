//! Aggregated analysis of one L-system and the 15-digit JSON encoding shared
//! by every machine-readable output.

use num_complex::Complex64;
use serde::Serialize;
use serde_json::Value;

use crate::classify::{classify_impedance, classify_operator, DonoghueClass, OperatorClass, EXTREMAL_TOL};
use crate::entropy::krein_von_neumann_check;
use crate::error::{Error, Result};
use crate::lsystem::{BoundaryParam, ExtReal, LSystem};
use crate::weyl::{ModelDescriptor, WeylModel};

/// Significant digits kept in JSON output.
pub const SIGNIFICANT_DIGITS: usize = 15;

/// Numerical m(-0) estimates with a larger spread than this are flagged.
const MINUS0_WARN_ABOVE: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub model: ModelDescriptor,
    pub h: Complex64,
    pub mu: ExtReal,
    pub kappa: f64,
    /// "inf" when kappa = 0.
    pub entropy: ExtReal,
    pub dissipation: f64,
    /// Absent when m(-0) is unavailable.
    pub operator_class: Option<OperatorClass>,
    /// Absent when V has a pole at i.
    pub donoghue_class: Option<DonoghueClass>,
    /// Absent at the degenerate point mu = Re h.
    pub xi: Option<f64>,
    #[serde(rename = "V_at_i")]
    pub v_at_i: Option<Complex64>,
    /// Absent when h = -m(i), where W has a pole at i.
    #[serde(rename = "W_at_i")]
    pub w_at_i: Option<Complex64>,
    #[serde(rename = "W_at_minus_i")]
    pub w_at_minus_i: Option<Complex64>,
    pub krein_von_neumann: Option<bool>,
    pub warnings: Vec<String>,
}

impl AnalysisReport {
    pub fn build(model: &WeylModel, mu: ExtReal, h: BoundaryParam) -> Result<Self> {
        let sys = LSystem::new(model, mu, h)?;
        let entropy = sys.entropy_report();
        let mut warnings = Vec::new();

        if sys.mu_at_re_h() {
            warnings.push(format!("mu = Re h = {}: the quasi-kernel is undefined", h.re()));
        }
        let operator_class = match model.minus0_limit() {
            Ok(limit) => {
                if !limit.exact && limit.error_estimate > MINUS0_WARN_ABOVE {
                    warnings.push(format!(
                        "m(-0) = {} carries an extrapolation error estimate of {:e}",
                        limit.value, limit.error_estimate
                    ));
                }
                if let Ok(k) = model.derived_constants() {
                    if k.gap <= EXTREMAL_TOL * (1.0 + k.at_minus0.abs()) {
                        warnings.push("Re m(i) = m(-0): kappa0 = 0 and extremal entropy is unbounded".into());
                    }
                }
                let class = classify_operator(model, h.value())?;
                let offset = h.re() + limit.value;
                if class == OperatorClass::ExtremalAccretive && offset != 0.0 {
                    warnings.push(format!("classified extremal within tolerance: Re h + m(-0) = {offset:e}"));
                }
                Some(class)
            }
            Err(err) => {
                warnings.push(format!("operator class unavailable: {err}"));
                None
            }
        };
        let krein_von_neumann =
            if operator_class.is_some() { Some(krein_von_neumann_check(model, h, mu).unwrap_or(false)) } else { None };

        let i = Complex64::i();
        Ok(Self {
            model: model.descriptor(),
            h: h.value(),
            mu,
            kappa: entropy.kappa,
            entropy: ExtReal::from(entropy.entropy),
            dissipation: entropy.dissipation,
            operator_class,
            donoghue_class: classify_impedance(&sys).ok(),
            xi: sys.quasi_kernel_xi().ok(),
            v_at_i: sys.impedance(i).ok(),
            w_at_i: sys.transfer(i).ok(),
            w_at_minus_i: sys.transfer(-i).ok(),
            krein_von_neumann,
            warnings,
        })
    }

    pub fn to_json(&self) -> Value {
        rounded_json(self)
    }
}

/// Machine-readable error: stable `kind`, human `message` and the variant's data.
pub fn error_json(err: &Error) -> Value {
    let mut body = serde_json::Map::new();
    body.insert("kind".into(), err.kind().into());
    body.insert("message".into(), err.to_string().into());
    let mut put = |key: &str, value: Value| {
        body.insert(key.into(), value);
    };
    match err {
        Error::NonDissipative { im_h } => put("im_h", rounded_json(im_h)),
        Error::Convergence { z, x_max, last_change } => {
            put("z", rounded_json(z));
            put("x_max", rounded_json(x_max));
            put("last_change", rounded_json(last_change));
        }
        Error::Pole { denominator } => put("denominator", rounded_json(denominator)),
        Error::KappaBelowBound { kappa, kappa0 } => {
            put("kappa", rounded_json(kappa));
            put("kappa0", rounded_json(kappa0));
        }
        Error::EntropyUnattainable { entropy, max_entropy } => {
            put("entropy", rounded_json(entropy));
            put("max_entropy", rounded_json(max_entropy));
        }
        Error::InfiniteEntropy { h } => put("h", rounded_json(h)),
        Error::Domain(_)
        | Error::Divergent { .. }
        | Error::InvalidModel(_)
        | Error::InvalidPotential(_)
        | Error::Degenerate(_) => {}
    }
    serde_json::json!({ "error": body })
}

/// x rounded to `SIGNIFICANT_DIGITS` significant decimal digits; -0 becomes 0.
pub fn round_significant(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x + 0.0;
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x).parse().expect("scientific notation parses")
}

/// JSON of `value` with every floating-point number rounded.
pub fn rounded_json<T: Serialize + ?Sized>(value: &T) -> Value {
    let mut json = serde_json::to_value(value).expect("report types serialize");
    round_in_place(&mut json);
    json
}

fn round_in_place(value: &mut Value) {
    match value {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().expect("checked f64");
            *value = serde_json::Number::from_f64(round_significant(x)).map_or(Value::Null, Value::Number);
        }
        Value::Array(items) => items.iter_mut().for_each(round_in_place),
        Value::Object(map) => map.values_mut().for_each(round_in_place),
        _ => {}
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use std::f64::consts::SQRT_2;

    const KEYS: [&str; 14] = [
        "model",
        "h",
        "mu",
        "kappa",
        "entropy",
        "dissipation",
        "operator_class",
        "donoghue_class",
        "xi",
        "V_at_i",
        "W_at_i",
        "W_at_minus_i",
        "krein_von_neumann",
        "warnings",
    ];

    fn h(re: f64, im: f64) -> BoundaryParam {
        BoundaryParam::from_parts(re, im).unwrap()
    }

    #[test]
    fn example_one_report() {
        let model = WeylModel::bessel_half();
        let report = AnalysisReport::build(&model, ExtReal::Finite(-1.0), h(0.0, 1.0)).unwrap();
        assert_abs_diff_eq!(report.kappa, SQRT_2 - 1.0, epsilon = 1e-15);
        assert_eq!(report.xi, Some(1.0));
        assert_eq!(report.krein_von_neumann, Some(false));
        assert!(report.warnings.is_empty(), "{:?}", report.warnings);

        let json = report.to_json();
        let keys: Vec<&String> = json.as_object().unwrap().keys().collect();
        assert_eq!(keys.len(), KEYS.len());
        for key in KEYS {
            assert!(json.get(key).is_some(), "{key}");
        }
        assert_eq!(json["donoghue_class"]["variant"], "m_kappa");
        assert_eq!(json["operator_class"]["variant"], "extremal_accretive");
        assert_eq!(json["model"]["method"], "closed-form");
    }

    #[test]
    fn example_two_report() {
        let model = WeylModel::bessel_three_halves();
        let report = AnalysisReport::build(&model, ExtReal::Infinity, h(-1.0, 0.8660254)).unwrap();
        assert_eq!(report.operator_class, Some(OperatorClass::ExtremalAccretive));
        assert_eq!(report.xi, Some(-1.0));
        assert_eq!(report.krein_von_neumann, Some(true));
        assert_eq!(report.to_json()["mu"], "inf");
    }

    #[test]
    fn infinite_entropy_and_pole() {
        let model = WeylModel::bessel_half();
        let hm = -model.m_at_i();
        let report = AnalysisReport::build(&model, ExtReal::Infinity, h(hm.re, hm.im)).unwrap();
        assert_eq!(report.kappa, 0.0);
        assert_eq!(report.entropy, ExtReal::Infinity);
        assert_eq!(report.w_at_i, None);
        let json = report.to_json();
        assert_eq!(json["entropy"], "inf");
        assert!(json["W_at_i"].is_null());
        assert_abs_diff_eq!(json["V_at_i"][1].as_f64().unwrap(), 1.0, epsilon = 1e-14);
    }

    #[test]
    fn degenerate_mu_warns() {
        let model = WeylModel::bessel_half();
        let report = AnalysisReport::build(&model, ExtReal::Finite(0.5), h(0.5, 1.0)).unwrap();
        assert_eq!(report.xi, None);
        assert!(report.warnings.iter().any(|w| w.contains("quasi-kernel")));
        assert!(report.to_json()["xi"].is_null());
    }

    #[test]
    fn flat_model_warns() {
        let flat = WeylModel::custom("minus-z", std::sync::Arc::new(|z: Complex64| -z), Some(0.0)).unwrap();
        let report = AnalysisReport::build(&flat, ExtReal::Infinity, h(0.0, 2.0)).unwrap();
        assert!(report.warnings.iter().any(|w| w.contains("kappa0 = 0")));
    }

    #[test]
    // Literals are the printed inputs and their 15-digit roundings, not approximations of constants.
    #[allow(clippy::approx_constant, clippy::excessive_precision)]
    fn error_payloads() {
        let json = error_json(&Error::EntropyUnattainable { entropy: 2.0, max_entropy: 0.8813735870195430 });
        assert_eq!(json["error"]["kind"], "entropy-unattainable");
        assert_eq!(json["error"]["max_entropy"], 0.881373587019543);
        let json = error_json(&Error::InfiniteEntropy { h: Complex64::new(-0.5, 0.5) });
        assert_eq!(json["error"]["h"], serde_json::json!([-0.5, 0.5]));
        let json = error_json(&Error::NonDissipative { im_h: 0.0 });
        assert_eq!(json["error"]["kind"], "non-dissipative");
        assert!(json["error"]["message"].as_str().unwrap().contains("Im h"));
    }

    #[test]
    // Literals are the printed inputs and their 15-digit roundings, not approximations of constants.
    #[allow(clippy::approx_constant, clippy::excessive_precision)]
    fn rounding_keeps_fifteen_digits() {
        assert_eq!(round_significant(SQRT_2), 1.41421356237310);
        assert_eq!(round_significant(0.0), 0.0);
        assert_eq!(round_significant(-1.0 / 3.0), -0.333333333333333);
        assert_eq!(round_significant(1e-300 / 3.0), 3.33333333333333e-301);
    }

    proptest! {
        #[test]
        fn json_round_trip_is_exact(
            re in -5.0f64..5.0, im in 0.01f64..5.0, mu in prop::option::of(-5.0f64..5.0), half in any::<bool>()
        ) {
            let model = if half { WeylModel::bessel_half() } else { WeylModel::bessel_three_halves() };
            let mu = mu.map_or(ExtReal::Infinity, ExtReal::Finite);
            let report = AnalysisReport::build(&model, mu, h(re, im)).unwrap();
            let json = report.to_json();
            let text = serde_json::to_string(&json).unwrap();
            let parsed: Value = serde_json::from_str(&text).unwrap();
            prop_assert_eq!(&parsed, &json);
            prop_assert_eq!(serde_json::to_string(&parsed).unwrap(), text);
            let kappa = parsed["kappa"].as_f64().unwrap();
            prop_assert_eq!(kappa, round_significant(report.kappa));
            prop_assert_eq!(round_significant(kappa), kappa);
        }

        #[test]
        fn rounding_is_idempotent_and_close(x in prop::num::f64::NORMAL) {
            let r = round_significant(x);
            prop_assert_eq!(round_significant(r), r);
            prop_assert!((r - x).abs() <= 5e-15 * x.abs());
        }
    }
}
