//! Backward shooting for the decaying solution of -y'' + q y = z y.
//!
//! The decaying solution psi is started at a truncation point X with the
//! WKB data psi(X) = 1, psi'(X) = i sqrt(z - q(X)) and carried down to the
//! left endpoint, where m(z) = -psi'(left) / psi(left). Backward
//! integration follows the growing direction, so the unwanted solution is
//! damped and only truncation in X needs controlling.

use num_complex::Complex64;

use super::potential::Potential;
use super::principal_sqrt;
use crate::error::{Error, Result};

/// Knobs of the backward shooting method.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverParams {
    /// First truncation point, in units of max(|left|, 1).
    pub start_factor: f64,
    /// Largest admissible truncation point, same units.
    pub max_factor: f64,
    /// Stop doubling once successive m values agree to this relative change.
    pub rel_tol: f64,
    /// Upper bound on the RK4 step.
    pub max_step: f64,
    /// Steps per unit of 1/|sqrt z|.
    pub steps_per_wavelength: f64,
}

impl Default for SolverParams {
    fn default() -> Self {
        Self { start_factor: 50.0, max_factor: 65536.0, rel_tol: 1e-9, max_step: 0.01, steps_per_wavelength: 10.0 }
    }
}

/// Renormalize once |psi| exceeds this; only the ratio psi'/psi matters.
const RESCALE_ABOVE: f64 = 1e150;

/// m(z) with adaptive truncation: X doubles until m settles.
pub fn weyl_m(potential: &Potential, z: Complex64, params: &SolverParams) -> Result<Complex64> {
    let left = potential.left();
    let unit = left.abs().max(1.0);
    let wavenumber = principal_sqrt(z).norm();
    let step = params.max_step.min(1.0 / (params.steps_per_wavelength * wavenumber));

    let mut x_max = params.start_factor * unit;
    let mut prev = shoot(potential, z, x_max, step)?;
    let mut last_change = f64::INFINITY;
    while 2.0 * x_max <= params.max_factor * unit {
        x_max *= 2.0;
        let next = shoot(potential, z, x_max, step)?;
        last_change = (next - prev).norm() / next.norm().max(f64::MIN_POSITIVE);
        if last_change < params.rel_tol {
            return Ok(next);
        }
        prev = next;
    }
    Err(Error::Convergence { z, x_max, last_change })
}

/// One fixed-step RK4 sweep from `x_max` down to the left endpoint.
fn shoot(potential: &Potential, z: Complex64, x_max: f64, max_step: f64) -> Result<Complex64> {
    let left = potential.left();
    let span = x_max - left;
    let n = (span / max_step).ceil().max(1.0) as usize;
    let h = -span / n as f64;

    let rhs = |x: f64, psi: Complex64| (potential.eval(x) - z) * psi;
    let mut psi = Complex64::new(1.0, 0.0);
    let mut dpsi = Complex64::i() * principal_sqrt(z - potential.eval(x_max));

    for i in 0..n {
        let x = x_max + i as f64 * h;
        let xm = x + 0.5 * h;
        let k1p = dpsi;
        let k1d = rhs(x, psi);
        let k2p = dpsi + 0.5 * h * k1d;
        let k2d = rhs(xm, psi + 0.5 * h * k1p);
        let k3p = dpsi + 0.5 * h * k2d;
        let k3d = rhs(xm, psi + 0.5 * h * k2p);
        let k4p = dpsi + h * k3d;
        let k4d = rhs(x + h, psi + h * k3p);
        psi += h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
        dpsi += h / 6.0 * (k1d + 2.0 * k2d + 2.0 * k3d + k4d);

        let size = psi.norm();
        if size > RESCALE_ABOVE {
            psi /= size;
            dpsi /= size;
        }
    }

    if psi.norm() == 0.0 || !psi.is_finite() || !dpsi.is_finite() {
        return Err(Error::Convergence { z, x_max, last_change: f64::NAN });
    }
    Ok(-dpsi / psi)
}

/// Limit of m along the negative real axis, with an error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinusZeroEstimate {
    pub value: f64,
    pub error_estimate: f64,
}

/// Exponents k of the sample points z = -10^-k.
pub const MINUS_ZERO_EXPONENTS: [i32; 4] = [3, 4, 5, 6];

/// m(-0) by polynomial extrapolation in t = sqrt(-z) to t = 0.
///
/// Near the bottom of the spectrum m(-t^2) has an expansion in powers of t,
/// not of t^2, so the extrapolation variable is t.
pub fn weyl_m_minus0(potential: &Potential, params: &SolverParams) -> Result<MinusZeroEstimate> {
    let mut ts = Vec::with_capacity(MINUS_ZERO_EXPONENTS.len());
    let mut vals = Vec::with_capacity(MINUS_ZERO_EXPONENTS.len());
    for k in MINUS_ZERO_EXPONENTS {
        let eps = 10f64.powi(-k);
        let m = weyl_m(potential, Complex64::new(-eps, 0.0), params)?;
        if m.im.abs() > 1e-6 * (1.0 + m.re.abs()) {
            return Err(Error::Convergence { z: Complex64::new(-eps, 0.0), x_max: f64::NAN, last_change: m.im.abs() });
        }
        ts.push(eps.sqrt());
        vals.push(m.re);
    }

    if grows_without_bound(&vals) {
        return Err(Error::Divergent { detail: format!("samples {vals:?} grow without bound as z -> -0") });
    }

    let value = neville_at_zero(&ts, &vals);
    let coarse = neville_at_zero(&ts[1..], &vals[1..]);
    if !value.is_finite() {
        return Err(Error::Divergent { detail: "extrapolated value is not finite".into() });
    }
    Ok(MinusZeroEstimate { value, error_estimate: (value - coarse).abs() })
}

/// Samples taken towards z = -0 that keep growing by a fixed factor signal a
/// pole of m at the bottom of the spectrum.
fn grows_without_bound(vals: &[f64]) -> bool {
    vals.windows(2).all(|w| w[1].abs() > 1.5 * w[0].abs())
}

/// Value at 0 of the interpolating polynomial through (xs, ys).
fn neville_at_zero(xs: &[f64], ys: &[f64]) -> f64 {
    let mut p = ys.to_vec();
    for level in 1..xs.len() {
        for i in 0..xs.len() - level {
            let (xi, xj) = (xs[i], xs[i + level]);
            p[i] = (xj * p[i] - xi * p[i + 1]) / (xj - xi);
        }
    }
    p[0]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn neville_reproduces_cubics() {
        let xs = [0.5, 0.3, 0.2, 0.1];
        let ys: Vec<f64> = xs.iter().map(|t| 2.0 - t + 3.0 * t * t * t).collect();
        assert!((neville_at_zero(&xs, &ys) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn free_potential_matches_minus_i_sqrt_z() {
        let p = Potential::bessel(0.5, 1.0).unwrap();
        for z in [c(0.0, 1.0), c(-3.0, 0.5), c(4.0, 2.0)] {
            let m = weyl_m(&p, z, &SolverParams::default()).unwrap();
            let exact = -Complex64::i() * principal_sqrt(z);
            assert!((m - exact).norm() < 1e-7 * exact.norm(), "{z}: {m} vs {exact}");
        }
    }

    #[test]
    fn centrifugal_potential_matches_hankel_solution() {
        // psi = e^{ikx} (1 + i/(kx)) decays for q = 2/x^2.
        let p = Potential::bessel(1.5, 1.0).unwrap();
        let z = c(0.3, 0.7);
        let k = principal_sqrt(z);
        let i = Complex64::i();
        let psi = 1.0 + i / k;
        let dpsi = i * k * psi - i / k;
        let exact = -dpsi / psi;
        let m = weyl_m(&p, z, &SolverParams::default()).unwrap();
        assert!((m - exact).norm() < 1e-7, "{m} vs {exact}");
    }

    #[test]
    fn shifted_left_endpoint() {
        // Free potential on [0.2, inf) has the same m as on [1, inf).
        let p = Potential::tabulated(&[(0.2, 0.0), (5.0, 0.0)]).unwrap();
        let m = weyl_m(&p, c(0.0, 2.0), &SolverParams::default()).unwrap();
        let exact = -Complex64::i() * principal_sqrt(c(0.0, 2.0));
        assert!((m - exact).norm() < 1e-7);
    }

    #[test]
    fn truncation_cap_reports_convergence_error() {
        let p = Potential::bessel(1.5, 1.0).unwrap();
        let params = SolverParams { max_factor: 60.0, ..SolverParams::default() };
        let err = weyl_m(&p, c(-1e-6, 0.0), &params).unwrap_err();
        assert!(matches!(err, Error::Convergence { .. }), "{err}");
    }

    #[test]
    fn minus_zero_of_free_potential_is_zero() {
        let p = Potential::bessel(0.5, 1.0).unwrap();
        let est = weyl_m_minus0(&p, &SolverParams::default()).unwrap();
        assert!(est.value.abs() < 1e-6, "{est:?}");
    }

    #[test]
    fn growth_detection() {
        assert!(grows_without_bound(&[-10.0, -31.0, -100.0, -316.0]));
        assert!(!grows_without_bound(&[0.03, 0.01, 0.003, 0.001]));
        assert!(!grows_without_bound(&[1.001, 1.0001, 1.00001, 1.000001]));
    }
}
