//! L-systems by their parameters (mu, h) over a Weyl model.

use std::fmt;

use num_complex::Complex64;
use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::weyl::WeylModel;

/// Denominators below this fraction of their natural scale count as poles.
pub const POLE_TOL: f64 = 1e-14;

/// mu within this relative distance of Re h makes the quasi-kernel degenerate.
pub const DEGENERATE_MU_TOL: f64 = 1e-12;

/// Imaginary residue allowed on mu1/mu2 before truncation to a real.
pub const REALNESS_TOL: f64 = 1e-12;

/// A point of the extended real line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtReal {
    Finite(f64),
    Infinity,
}

impl ExtReal {
    pub fn finite(self) -> Option<f64> {
        match self {
            ExtReal::Finite(v) => Some(v),
            ExtReal::Infinity => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, ExtReal::Infinity)
    }
}

impl From<f64> for ExtReal {
    fn from(v: f64) -> Self {
        if v.is_infinite() {
            ExtReal::Infinity
        } else {
            ExtReal::Finite(v)
        }
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtReal::Finite(v) => write!(f, "{v}"),
            ExtReal::Infinity => write!(f, "inf"),
        }
    }
}

/// Finite values serialize as numbers, the point at infinity as "inf".
impl Serialize for ExtReal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ExtReal::Finite(v) => s.serialize_f64(*v),
            ExtReal::Infinity => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for ExtReal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct ExtRealVisitor;

        impl Visitor<'_> for ExtRealVisitor {
            type Value = ExtReal;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a number or \"inf\"")
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<ExtReal, E> {
                Ok(ExtReal::Finite(v))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<ExtReal, E> {
                Ok(ExtReal::Finite(v as f64))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<ExtReal, E> {
                Ok(ExtReal::Finite(v as f64))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<ExtReal, E> {
                match v {
                    "inf" => Ok(ExtReal::Infinity),
                    _ => Err(E::invalid_value(de::Unexpected::Str(v), &self)),
                }
            }
        }

        d.deserialize_any(ExtRealVisitor)
    }
}

/// Boundary value h of the main operator: h y(left) - y'(left) = 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(transparent)]
pub struct BoundaryParam(Complex64);

impl BoundaryParam {
    /// Im h > 0.
    pub fn new(h: Complex64) -> Result<Self> {
        if !h.is_finite() {
            return Err(Error::Domain(format!("h = {h} is not finite")));
        }
        // Negated so that NaN is rejected too.
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !(h.im > 0.0) {
            return Err(Error::NonDissipative { im_h: h.im });
        }
        Ok(Self(h))
    }

    pub fn from_parts(re: f64, im: f64) -> Result<Self> {
        Self::new(Complex64::new(re, im))
    }

    pub fn value(self) -> Complex64 {
        self.0
    }

    pub fn re(self) -> f64 {
        self.0.re
    }

    pub fn im(self) -> f64 {
        self.0.im
    }
}

impl From<BoundaryParam> for Complex64 {
    fn from(h: BoundaryParam) -> Self {
        h.0
    }
}

/// kappa, c-entropy and dissipation coefficient of an L-system.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EntropyReport {
    pub kappa: f64,
    /// -ln kappa; infinite iff kappa = 0.
    pub entropy: f64,
    /// Im h.
    pub dissipation: f64,
}

/// The L-system with state-space parameter mu and main-operator parameter h.
#[derive(Debug, Clone, Copy)]
pub struct LSystem<'a> {
    model: &'a WeylModel,
    mu: ExtReal,
    h: BoundaryParam,
}

impl<'a> LSystem<'a> {
    /// mu = Re h is accepted; only `quasi_kernel_xi` is undefined there.
    pub fn new(model: &'a WeylModel, mu: ExtReal, h: BoundaryParam) -> Result<Self> {
        if let ExtReal::Finite(v) = mu {
            if !v.is_finite() {
                return Err(Error::Domain(format!("mu = {v} is not finite")));
            }
        }
        Ok(Self { model, mu, h })
    }

    pub fn model(&self) -> &'a WeylModel {
        self.model
    }

    pub fn mu(&self) -> ExtReal {
        self.mu
    }

    pub fn h(&self) -> BoundaryParam {
        self.h
    }

    pub fn with_mu(&self, mu: ExtReal) -> Result<Self> {
        Self::new(self.model, mu, self.h)
    }

    /// Whether mu sits on the degenerate point Re h.
    pub fn mu_at_re_h(&self) -> bool {
        match self.mu {
            ExtReal::Finite(mu) => (mu - self.h.re()).abs() <= DEGENERATE_MU_TOL * (1.0 + mu.abs()),
            ExtReal::Infinity => false,
        }
    }

    /// Transfer function W(z), Im z != 0.
    pub fn transfer(&self, z: Complex64) -> Result<Complex64> {
        let m = self.model.eval_m_off_axis(z)?;
        let h = self.h.value();
        let den = m + h;
        if den.norm() <= POLE_TOL * (m.norm() + h.norm()) {
            return Err(Error::Pole { denominator: den });
        }
        let ratio = (m + h.conj()) / den;
        Ok(match self.mu {
            ExtReal::Infinity => ratio,
            ExtReal::Finite(mu) => (mu - h) / (mu - h.conj()) * ratio,
        })
    }

    /// Impedance function V(z), Im z != 0.
    pub fn impedance(&self, z: Complex64) -> Result<Complex64> {
        let m = self.model.eval_m_off_axis(z)?;
        let h = self.h.value();
        let (num, den, scale) = match self.mu {
            ExtReal::Infinity => (Complex64::new(h.im, 0.0), m + h.re, m.norm() + h.re.abs()),
            ExtReal::Finite(mu) => {
                let den = (mu - h.re) * m + mu * h.re - h.norm_sqr();
                let scale = (mu - h.re).abs() * m.norm() + (mu * h.re).abs() + h.norm_sqr();
                ((m + mu) * h.im, den, scale)
            }
        };
        if den.norm() <= POLE_TOL * scale {
            return Err(Error::Pole { denominator: den });
        }
        Ok(num / den)
    }

    /// |kappa|, independent of mu.
    pub fn von_neumann_kappa(&self) -> f64 {
        kappa_of(self.model, self.h)
    }

    pub fn entropy_report(&self) -> EntropyReport {
        let kappa = self.von_neumann_kappa();
        let entropy = if kappa == 0.0 { f64::INFINITY } else { -kappa.ln() };
        EntropyReport { kappa, entropy, dissipation: self.h.im() }
    }

    /// Boundary value xi of the quasi-kernel: y'(left) = xi y(left).
    pub fn quasi_kernel_xi(&self) -> Result<f64> {
        let h = self.h.value();
        match self.mu {
            ExtReal::Infinity => Ok(h.re),
            ExtReal::Finite(mu) => {
                if self.mu_at_re_h() {
                    return Err(Error::Degenerate(format!("quasi-kernel undefined at mu = Re h = {}", h.re)));
                }
                Ok((mu * h.re - h.norm_sqr()) / (mu - h.re))
            }
        }
    }
}

/// |(m(i) + h) / (m(i) + conj h)|; exactly 0 when W has a pole at i.
pub fn kappa_of(model: &WeylModel, h: BoundaryParam) -> f64 {
    let m = model.m_at_i();
    let h = h.value();
    let num = m + h;
    if num.norm() <= POLE_TOL * (m.norm() + h.norm()) {
        return 0.0;
    }
    num.norm() / (m + h.conj()).norm()
}

/// e^{i alpha} = phase of (m(i) + h) / (m(i) + conj h).
fn unit_phase(model: &WeylModel, h: BoundaryParam) -> Result<Complex64> {
    let m = model.m_at_i();
    let h = h.value();
    let num = m + h;
    if num.norm() <= POLE_TOL * (m.norm() + h.norm()) {
        return Err(Error::Degenerate("h = -m(i): kappa = 0 and the phase is undefined".into()));
    }
    let ratio = num / (m + h.conj());
    Ok(ratio / ratio.norm())
}

fn truncate_real(value: Complex64, what: &str) -> Result<f64> {
    if !value.is_finite() || value.im.abs() > REALNESS_TOL * (1.0 + value.re.abs()) {
        return Err(Error::Degenerate(format!("{what} = {value} is not real")));
    }
    Ok(value.re)
}

/// mu1 = (e^{i alpha} conj h - h) / (e^{i alpha} - 1): impedance in M_kappa.
pub fn mu1_for_class_mk(model: &WeylModel, h: BoundaryParam) -> Result<f64> {
    let phase = unit_phase(model, h)?;
    let den = phase - 1.0;
    if den.norm() <= REALNESS_TOL {
        return Err(Error::Degenerate("alpha = 0: mu1 is the point at infinity".into()));
    }
    let hv = h.value();
    truncate_real((phase * hv.conj() - hv) / den, "mu1")
}

/// mu2 = (e^{i alpha} conj h + h) / (e^{i alpha} + 1): impedance in M_kappa^-1.
pub fn mu2_for_class_mk_inv(model: &WeylModel, h: BoundaryParam) -> Result<f64> {
    let phase = unit_phase(model, h)?;
    let den = phase + 1.0;
    if den.norm() <= REALNESS_TOL {
        return Err(Error::Degenerate("alpha = pi: mu2 is the point at infinity".into()));
    }
    let hv = h.value();
    truncate_real((phase * hv.conj() + hv) / den, "mu2")
}

/// The mu-duality of quasi-kernels: (mu Re h - |h|^2) / (mu - Re h).
pub fn dual_mu(mu: ExtReal, h: BoundaryParam) -> Result<ExtReal> {
    let h = h.value();
    match mu {
        ExtReal::Infinity => Ok(ExtReal::Finite(h.re)),
        ExtReal::Finite(mu) => {
            if (mu - h.re).abs() <= DEGENERATE_MU_TOL * (1.0 + mu.abs()) {
                Ok(ExtReal::Infinity)
            } else {
                Ok(ExtReal::Finite((mu * h.re - h.norm_sqr()) / (mu - h.re)))
            }
        }
    }
}
