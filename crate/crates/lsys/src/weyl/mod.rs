//! Weyl functions m(z) of half-line Schrödinger operators.
//!
//! Sign convention: Im m(z) < 0 for Im z > 0, so that dissipative boundary
//! parameters have Im h > 0.

mod potential;
mod solver;

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

pub use potential::{Potential, PotentialForm};
pub use solver::{weyl_m, weyl_m_minus0, MinusZeroEstimate, SolverParams, MINUS_ZERO_EXPONENTS};

/// Principal square root with Im sqrt(z) >= 0 whenever Im z >= 0.
///
/// A negative real argument lands on the positive imaginary axis regardless
/// of the sign of its zero imaginary part.
pub fn principal_sqrt(z: Complex64) -> Complex64 {
    if z.im == 0.0 && z.re < 0.0 {
        Complex64::new(0.0, (-z.re).sqrt())
    } else {
        z.sqrt()
    }
}

/// Scalar summary of a model: m(i) = re_i - i neg_im_i, m(-0) = at_minus0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WeylConstants {
    /// Re m(i).
    pub re_i: f64,
    /// -Im m(i), positive.
    pub neg_im_i: f64,
    /// m(-0).
    pub at_minus0: f64,
    /// Re m(i) - m(-0), nonnegative.
    pub gap: f64,
    /// gap^2.
    pub gap_sq: f64,
    /// |m(i) - m(-0)|^2 = gap^2 + neg_im_i^2.
    pub dist_sq: f64,
}

impl WeylConstants {
    /// |m(i) - m(-0)|.
    pub fn dist(&self) -> f64 {
        self.dist_sq.sqrt()
    }

    pub fn m_at_i(&self) -> Complex64 {
        Complex64::new(self.re_i, -self.neg_im_i)
    }
}

/// User-supplied Weyl function.
pub type WeylFn = Arc<dyn Fn(Complex64) -> Complex64 + Send + Sync>;

#[derive(Clone)]
pub enum WeylKind {
    /// q = 0 on [1, inf): m(z) = -i sqrt z.
    BesselHalf,
    /// q = 2/x^2 on [1, inf): m(z) = (sqrt z - i z + i) / (sqrt z + i).
    BesselThreeHalves,
    Numerical {
        potential: Potential,
        params: SolverParams,
    },
    Custom {
        label: String,
        func: WeylFn,
        at_minus0: Option<f64>,
    },
}

impl fmt::Debug for WeylKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeylKind::BesselHalf => write!(f, "BesselHalf"),
            WeylKind::BesselThreeHalves => write!(f, "BesselThreeHalves"),
            WeylKind::Numerical { potential, params } => {
                f.debug_struct("Numerical").field("potential", potential).field("params", params).finish()
            }
            WeylKind::Custom { label, at_minus0, .. } => {
                f.debug_struct("Custom").field("label", label).field("at_minus0", at_minus0).finish()
            }
        }
    }
}

/// How m(-0) was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MinusZeroLimit {
    pub value: f64,
    /// Zero for closed forms; extrapolation spread for numerical models.
    pub error_estimate: f64,
    pub exact: bool,
}

/// A Weyl function with m(i) and m(-0) computed once at construction.
#[derive(Debug, Clone)]
pub struct WeylModel {
    kind: WeylKind,
    shift: f64,
    at_i: Complex64,
    at_minus0: std::result::Result<MinusZeroLimit, Error>,
}

/// Serializable identification of a model.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModelDescriptor {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nu: Option<f64>,
    pub left: Option<f64>,
    pub method: &'static str,
    pub shift: f64,
    pub m_at_i: Complex64,
    pub m_at_minus0: Option<MinusZeroLimit>,
}

impl WeylModel {
    pub fn bessel_half() -> Self {
        Self::closed(WeylKind::BesselHalf, 0.0)
    }

    pub fn bessel_three_halves() -> Self {
        Self::closed(WeylKind::BesselThreeHalves, 1.0)
    }

    /// Bessel-type model of order nu on [1, inf): closed form for nu = 1/2 and
    /// 3/2, numerical otherwise.
    pub fn bessel(nu: f64) -> Result<Self> {
        if nu == 0.5 {
            Ok(Self::bessel_half())
        } else if nu == 1.5 {
            Ok(Self::bessel_three_halves())
        } else {
            Self::numerical(Potential::bessel(nu, 1.0)?, SolverParams::default())
        }
    }

    /// Model backed by the shooting solver.
    pub fn numerical(potential: Potential, params: SolverParams) -> Result<Self> {
        let at_i = weyl_m(&potential, Complex64::i(), &params)?;
        let at_minus0 = weyl_m_minus0(&potential, &params).map(|est| MinusZeroLimit {
            value: est.value,
            error_estimate: est.error_estimate,
            exact: false,
        });
        let model = Self { kind: WeylKind::Numerical { potential, params }, shift: 0.0, at_i, at_minus0 };
        model.check_sign()?;
        Ok(model)
    }

    /// Model from an arbitrary function of the upper half-plane.
    pub fn custom(label: impl Into<String>, func: WeylFn, at_minus0: Option<f64>) -> Result<Self> {
        let at_i = func(Complex64::i());
        let limit = match at_minus0 {
            Some(value) if value.is_finite() => Ok(MinusZeroLimit { value, error_estimate: 0.0, exact: true }),
            Some(value) => Err(Error::InvalidModel(format!("m(-0) must be finite, got {value}"))),
            None => Err(Error::Divergent { detail: "model declares m(-0) = infinity".into() }),
        };
        let model = Self {
            kind: WeylKind::Custom { label: label.into(), func, at_minus0 },
            shift: 0.0,
            at_i,
            at_minus0: limit,
        };
        model.check_sign()?;
        Ok(model)
    }

    /// The same model with m(z) replaced by m(z) + delta.
    pub fn shifted(mut self, delta: f64) -> Self {
        self.shift += delta;
        self.at_i += delta;
        if let Ok(limit) = &mut self.at_minus0 {
            limit.value += delta;
        }
        self
    }

    fn closed(kind: WeylKind, at_minus0: f64) -> Self {
        let mut model = Self {
            kind,
            shift: 0.0,
            at_i: Complex64::new(0.0, 0.0),
            at_minus0: Ok(MinusZeroLimit { value: at_minus0, error_estimate: 0.0, exact: true }),
        };
        model.at_i = model.raw(Complex64::i()).expect("closed forms are total on the upper half-plane");
        model
    }

    fn check_sign(&self) -> Result<()> {
        if !self.at_i.is_finite() || self.at_i.im >= 0.0 {
            return Err(Error::InvalidModel(format!("need Im m(i) < 0, got m(i) = {}", self.at_i)));
        }
        Ok(())
    }

    pub fn kind(&self) -> &WeylKind {
        &self.kind
    }

    /// Unshifted m(z) for Im z > 0 or z < 0.
    fn raw(&self, z: Complex64) -> Result<Complex64> {
        match &self.kind {
            WeylKind::BesselHalf => Ok(-Complex64::i() * principal_sqrt(z)),
            WeylKind::BesselThreeHalves => {
                let root = principal_sqrt(z);
                let i = Complex64::i();
                Ok((root - i * z + i) / (root + i))
            }
            WeylKind::Numerical { potential, params } => {
                let m = weyl_m(potential, z, params)?;
                Ok(if z.im == 0.0 { Complex64::new(m.re, 0.0) } else { m })
            }
            WeylKind::Custom { func, .. } => Ok(func(z)),
        }
    }

    /// m(z) on the upper half-plane or the open negative real axis.
    pub fn eval_m(&self, z: Complex64) -> Result<Complex64> {
        if !z.is_finite() {
            return Err(Error::Domain(format!("z = {z} is not finite")));
        }
        let on_negative_axis = z.im == 0.0 && z.re < 0.0;
        if !(z.im > 0.0 || on_negative_axis) {
            return Err(Error::Domain(format!("m(z) needs Im z > 0 or z < 0, got z = {z}")));
        }
        let m = self.raw(z)? + self.shift;
        if !m.is_finite() {
            return Err(Error::Domain(format!("m({z}) is not finite")));
        }
        Ok(m)
    }

    /// m(z) off the real axis, using m(conj z) = conj m(z) below it.
    pub fn eval_m_off_axis(&self, z: Complex64) -> Result<Complex64> {
        if z.im < 0.0 {
            Ok(self.eval_m(z.conj())?.conj())
        } else if z.im > 0.0 {
            self.eval_m(z)
        } else {
            Err(Error::Domain(format!("z = {z} lies on the real axis")))
        }
    }

    /// Cached m(i).
    pub fn m_at_i(&self) -> Complex64 {
        self.at_i
    }

    /// Cached m(-0).
    pub fn eval_m_minus0(&self) -> Result<f64> {
        self.minus0_limit().map(|l| l.value)
    }

    pub fn minus0_limit(&self) -> Result<MinusZeroLimit> {
        self.at_minus0.clone()
    }

    /// Re m(i) >= m(-0) is enforced up to this slack for numerical models.
    fn ordering_slack(&self, at_minus0: f64) -> f64 {
        match self.kind {
            WeylKind::Numerical { .. } => 1e-6 * (1.0 + at_minus0.abs()),
            _ => 1e-12 * (1.0 + at_minus0.abs()),
        }
    }

    pub fn derived_constants(&self) -> Result<WeylConstants> {
        let at_minus0 = self.eval_m_minus0()?;
        let re_i = self.at_i.re;
        let neg_im_i = -self.at_i.im;
        // Negated so that NaN is rejected too.
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !(neg_im_i > 0.0) {
            return Err(Error::InvalidModel(format!("need Im m(i) < 0, got {}", self.at_i.im)));
        }
        let mut gap = re_i - at_minus0;
        if gap < 0.0 {
            if gap < -self.ordering_slack(at_minus0) {
                return Err(Error::InvalidModel(format!("Re m(i) = {re_i} < m(-0) = {at_minus0}")));
            }
            gap = 0.0;
        }
        let gap_sq = gap * gap;
        Ok(WeylConstants { re_i, neg_im_i, at_minus0, gap, gap_sq, dist_sq: gap_sq + neg_im_i * neg_im_i })
    }

    pub fn descriptor(&self) -> ModelDescriptor {
        let (kind, nu, left, method) = match &self.kind {
            WeylKind::BesselHalf => ("bessel".to_string(), Some(0.5), Some(1.0), "closed-form"),
            WeylKind::BesselThreeHalves => ("bessel".to_string(), Some(1.5), Some(1.0), "closed-form"),
            WeylKind::Numerical { potential, .. } => match potential.form() {
                PotentialForm::Bessel { nu } => ("bessel".to_string(), Some(*nu), Some(potential.left()), "numerical"),
                PotentialForm::Tabulated { .. } => ("tabulated".to_string(), None, Some(potential.left()), "numerical"),
            },
            WeylKind::Custom { label, .. } => (label.clone(), None, None, "custom"),
        };
        ModelDescriptor {
            kind,
            nu,
            left,
            method,
            shift: self.shift,
            m_at_i: self.at_i,
            m_at_minus0: self.at_minus0.clone().ok(),
        }
    }
}
