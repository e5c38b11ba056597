//! kappa as a function of Im h along the extremal line Re h = -m(-0) and
//! along the beta-sectorial ray through -m(-0).

use std::f64::consts::FRAC_PI_2;

use serde::Serialize;

use crate::classify::{kappa0_extremal_of, kappa0_sectorial_of, kappa_sq_extremal, kappa_sq_sectorial};
use crate::error::{Error, Result};
use crate::weyl::WeylModel;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "regime", rename_all = "snake_case")]
pub enum CurveRegime {
    Extremal,
    Sectorial { beta: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurveSample {
    pub im_h: f64,
    pub kappa: f64,
}

/// Smallest sample with its neighbours, which bracket the true minimum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SampledMinimum {
    pub im_h: f64,
    pub kappa: f64,
    pub bracket: (f64, f64),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurveData {
    pub regime: CurveRegime,
    pub samples: Vec<CurveSample>,
    pub sampled_minimum: SampledMinimum,
    /// Analytic minimizer sqrt D (times sin beta on a sector).
    pub h_star: f64,
    /// kappa at `h_star`.
    pub kappa_min: f64,
}

impl CurveData {
    /// Two-column CSV with a trailing comment row carrying the minimum.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("im_h,kappa\n");
        for s in &self.samples {
            out.push_str(&format!("{:e},{:e}\n", s.im_h, s.kappa));
        }
        let m = &self.sampled_minimum;
        out.push_str(&format!(
            "# h_star={:e},kappa_min={:e},sampled_im_h={:e},sampled_kappa={:e},bracket=[{:e};{:e}]\n",
            self.h_star, self.kappa_min, m.im_h, m.kappa, m.bracket.0, m.bracket.1
        ));
        out
    }
}

/// Samples kappa at `n` evenly spaced Im h in [min, max].
pub fn kappa_curve(model: &WeylModel, regime: CurveRegime, min: f64, max: f64, n: usize) -> Result<CurveData> {
    if !(min > 0.0 && min < max && max.is_finite()) {
        return Err(Error::Domain(format!("need 0 < h-im-min < h-im-max, got [{min}, {max}]")));
    }
    if n < 3 {
        return Err(Error::Domain(format!("need at least 3 samples, got {n}")));
    }
    let k = model.derived_constants()?;
    let (kappa_sq, h_star, kappa_min): (Box<dyn Fn(f64) -> f64>, f64, f64) = match regime {
        CurveRegime::Extremal => (Box::new(move |y| kappa_sq_extremal(&k, y)), k.dist(), kappa0_extremal_of(&k)),
        CurveRegime::Sectorial { beta } => {
            if !(beta > 0.0 && beta < FRAC_PI_2) {
                return Err(Error::Domain(format!("beta = {beta} must lie in (0, pi/2)")));
            }
            (Box::new(move |y| kappa_sq_sectorial(&k, beta, y)), beta.sin() * k.dist(), kappa0_sectorial_of(&k, beta))
        }
    };

    let step = (max - min) / (n - 1) as f64;
    let samples: Vec<CurveSample> = (0..n)
        .map(|i| {
            let im_h = if i == n - 1 { max } else { min + i as f64 * step };
            CurveSample { im_h, kappa: kappa_sq(im_h).max(0.0).sqrt() }
        })
        .collect();

    let best =
        samples.iter().enumerate().min_by(|a, b| a.1.kappa.total_cmp(&b.1.kappa)).map(|(i, _)| i).expect("n >= 3");
    let bracket = (samples[best.saturating_sub(1)].im_h, samples[(best + 1).min(n - 1)].im_h);
    Ok(CurveData {
        regime,
        sampled_minimum: SampledMinimum { im_h: samples[best].im_h, kappa: samples[best].kappa, bracket },
        samples,
        h_star,
        kappa_min,
    })
}
