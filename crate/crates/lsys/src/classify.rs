//! Accretive / sectorial / extremal classification of the main operator,
//! the sharp lower bounds on kappa, the inverse constructions h(kappa), and
//! Donoghue-class detection of the impedance.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lsystem::{BoundaryParam, ExtReal, LSystem};
use crate::weyl::{WeylConstants, WeylModel};

/// |Re h + m(-0)| <= EXTREMAL_TOL (1 + |m(-0)|) counts as extremal.
pub const EXTREMAL_TOL: f64 = 1e-9;

/// Default absolute tolerance of identity checks on unit-scale quantities.
pub const DEFAULT_TOL: f64 = 1e-10;

/// kappa within this distance of its lower bound yields the double root.
pub const DOUBLE_ROOT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "variant", rename_all = "snake_case")]
pub enum OperatorClass {
    NonAccretive,
    /// Exact half-angle beta in (0, pi/2).
    Sectorial {
        beta: f64,
    },
    ExtremalAccretive,
    /// Im h = 0: outside the dissipative setting.
    SelfAdjointBoundary,
}

pub fn classify_operator(model: &WeylModel, h: Complex64) -> Result<OperatorClass> {
    let m = model.eval_m_minus0()?;
    if !h.is_finite() {
        return Err(Error::Domain(format!("h = {h} is not finite")));
    }
    if h.im < 0.0 {
        return Err(Error::NonDissipative { im_h: h.im });
    }
    if h.im == 0.0 {
        return Ok(OperatorClass::SelfAdjointBoundary);
    }
    let offset = h.re + m;
    Ok(if offset.abs() <= EXTREMAL_TOL * (1.0 + m.abs()) {
        OperatorClass::ExtremalAccretive
    } else if offset < 0.0 {
        OperatorClass::NonAccretive
    } else {
        OperatorClass::Sectorial { beta: (h.im / offset).atan() }
    })
}

fn check_beta(beta: f64) -> Result<()> {
    if beta > 0.0 && beta < FRAC_PI_2 {
        Ok(())
    } else {
        Err(Error::Domain(format!("beta = {beta} must lie in (0, pi/2)")))
    }
}

fn check_kappa(kappa: f64) -> Result<()> {
    if (0.0..1.0).contains(&kappa) {
        Ok(())
    } else {
        Err(Error::Domain(format!("kappa = {kappa} must lie in [0, 1)")))
    }
}

/// Smallest kappa of an extremal T_h; zero iff Re m(i) = m(-0).
pub fn kappa0_extremal(model: &WeylModel) -> Result<f64> {
    let k = model.derived_constants()?;
    Ok(kappa0_extremal_of(&k))
}

/// sqrt((sqrt D - B)/(sqrt D + B)) in the cancellation-free form gap / (sqrt D + B).
pub fn kappa0_extremal_of(k: &WeylConstants) -> f64 {
    k.gap / (k.dist() + k.neg_im_i)
}

/// Smallest kappa of a beta-sectorial T_h.
pub fn kappa0_sectorial(model: &WeylModel, beta: f64) -> Result<f64> {
    check_beta(beta)?;
    let k = model.derived_constants()?;
    Ok(kappa0_sectorial_of(&k, beta))
}

pub fn kappa0_sectorial_of(k: &WeylConstants, beta: f64) -> f64 {
    let (sin, cos) = beta.sin_cos();
    let base = k.dist() + k.gap * cos;
    ((base - k.neg_im_i * sin) / (base + k.neg_im_i * sin)).sqrt()
}

/// kappa^2 of the extremal operator with Im h = im_h.
pub fn kappa_sq_extremal(k: &WeylConstants, im_h: f64) -> f64 {
    let b = k.neg_im_i;
    let hh = im_h * im_h + k.dist_sq;
    (hh - 2.0 * b * im_h) / (hh + 2.0 * b * im_h)
}

/// kappa^2 of the beta-sectorial operator with Im h = im_h.
pub fn kappa_sq_sectorial(k: &WeylConstants, beta: f64, im_h: f64) -> f64 {
    let (sin, cos) = beta.sin_cos();
    let cot = cos / sin;
    let s2 = sin * sin;
    let hh = im_h * im_h + k.dist_sq * s2;
    let num = hh + 2.0 * s2 * (k.gap * cot - k.neg_im_i) * im_h;
    let den = hh + 2.0 * s2 * (k.gap * cot + k.neg_im_i) * im_h;
    num / den
}

/// Im h of the extremal operators with the given kappa, ascending.
pub fn extremal_im_h_for_kappa(k: &WeylConstants, kappa: f64) -> Result<Vec<f64>> {
    check_kappa(kappa)?;
    let kappa0 = kappa0_extremal_of(k);
    if kappa < kappa0 - DOUBLE_ROOT_TOL {
        return Err(Error::KappaBelowBound { kappa, kappa0 });
    }
    let xi = (1.0 + kappa * kappa) / (1.0 - kappa * kappa);
    let p = k.neg_im_i * xi;
    let disc = p * p - k.dist_sq;
    if kappa <= kappa0 + DOUBLE_ROOT_TOL || disc <= 0.0 {
        return Ok(vec![k.dist()]);
    }
    let larger = p + disc.sqrt();
    Ok(vec![k.dist_sq / larger, larger])
}

/// The extremal h (one at kappa0, two above) with von Neumann parameter kappa.
pub fn extremal_h_from_kappa(model: &WeylModel, kappa: f64) -> Result<Vec<BoundaryParam>> {
    let k = model.derived_constants()?;
    extremal_im_h_for_kappa(&k, kappa)?.into_iter().map(|im| BoundaryParam::from_parts(-k.at_minus0, im)).collect()
}

/// Im h of the beta-sectorial operators with the given kappa, ascending.
pub fn sectorial_im_h_for_kappa(k: &WeylConstants, beta: f64, kappa: f64) -> Result<Vec<f64>> {
    check_beta(beta)?;
    check_kappa(kappa)?;
    let kappa0 = kappa0_sectorial_of(k, beta);
    if kappa < kappa0 - DOUBLE_ROOT_TOL {
        return Err(Error::KappaBelowBound { kappa, kappa0 });
    }
    let (sin, cos) = beta.sin_cos();
    let s2 = sin * sin;
    let xi = (1.0 + kappa * kappa) / (1.0 - kappa * kappa);
    let p = xi * k.neg_im_i - k.gap * cos / sin;
    let disc = p * p - k.dist_sq / s2;
    if kappa <= kappa0 + DOUBLE_ROOT_TOL || disc <= 0.0 {
        return Ok(vec![sin * k.dist()]);
    }
    let larger = s2 * (p + disc.sqrt());
    Ok(vec![k.dist_sq * s2 / larger, larger])
}

/// The beta-sectorial h (one at kappa0(beta), two above) with parameter kappa.
pub fn sectorial_h_from_kappa(model: &WeylModel, beta: f64, kappa: f64) -> Result<Vec<BoundaryParam>> {
    let k = model.derived_constants()?;
    let cot = beta.cos() / beta.sin();
    sectorial_im_h_for_kappa(&k, beta, kappa)?
        .into_iter()
        .map(|im| BoundaryParam::from_parts(cot * im - k.at_minus0, im))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "variant", rename_all = "snake_case")]
pub enum DonoghueVariant {
    M,
    MKappa { kappa: f64 },
    MKappaInv { kappa: f64 },
    None,
}

/// Donoghue class of an impedance, certified by V(i) = a i.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DonoghueClass {
    #[serde(flatten)]
    pub variant: DonoghueVariant,
    /// Im V(i).
    pub a: f64,
    pub re_v_at_i: f64,
    /// |h - h(mu, a)| for the h recovered from (mu, a); absent for `None`.
    pub criterion_residual: Option<f64>,
}

/// The h placing V(i) = a i for the given mu.
pub fn h_for_normalization(model: &WeylModel, mu: ExtReal, a: f64) -> Complex64 {
    let m = model.m_at_i();
    let (c, d) = (m.re, m.im);
    match mu {
        ExtReal::Infinity => Complex64::new(-c, -a * d),
        ExtReal::Finite(mu) if (mu + c).abs() <= DEFAULT_TOL * (1.0 + mu.abs()) => Complex64::new(-c, -d / a),
        ExtReal::Finite(mu) => {
            let s = c + mu;
            let den = a * a * d * d + s * s;
            let re = a * a * d * d * mu - d * d * s - c * s * s;
            let im = -(a * d * d * d + a * d * s * s);
            Complex64::new(re / den, im / den)
        }
    }
}

pub fn classify_impedance(sys: &LSystem) -> Result<DonoghueClass> {
    classify_impedance_with_tol(sys, DEFAULT_TOL)
}

pub fn classify_impedance_with_tol(sys: &LSystem, tol: f64) -> Result<DonoghueClass> {
    let v = sys.impedance(Complex64::i())?;
    let a = v.im;
    if v.re.abs() > tol * (1.0 + v.norm()) {
        return Ok(DonoghueClass { variant: DonoghueVariant::None, a, re_v_at_i: v.re, criterion_residual: None });
    }
    let variant = if (a - 1.0).abs() <= tol {
        DonoghueVariant::M
    } else if a < 1.0 {
        DonoghueVariant::MKappa { kappa: (1.0 - a) / (1.0 + a) }
    } else {
        DonoghueVariant::MKappaInv { kappa: (a - 1.0) / (1.0 + a) }
    };
    let recovered = h_for_normalization(sys.model(), sys.mu(), a);
    Ok(DonoghueClass { variant, a, re_v_at_i: v.re, criterion_residual: Some((recovered - sys.h().value()).norm()) })
}

/// Range of state-space parameters with accretive state-space operator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "variant", rename_all = "snake_case")]
pub enum MuRange {
    /// Every mu >= mu_min, and mu = infinity.
    From { mu_min: f64 },
    /// Extremal T_h: only mu = infinity.
    InfinityOnly,
}

pub fn accretive_state_space_mu_range(model: &WeylModel, h: BoundaryParam) -> Result<MuRange> {
    let m = model.eval_m_minus0()?;
    match classify_operator(model, h.value())? {
        OperatorClass::ExtremalAccretive => Ok(MuRange::InfinityOnly),
        OperatorClass::Sectorial { .. } => Ok(MuRange::From { mu_min: h.im() * h.im() / (m + h.re()) + h.re() }),
        other => Err(Error::Domain(format!("T_h is not accretive ({other:?})"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_3, FRAC_PI_4, SQRT_2};
    use std::sync::Arc;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn h(re: f64, im: f64) -> BoundaryParam {
        BoundaryParam::from_parts(re, im).unwrap()
    }

    fn flat_model() -> WeylModel {
        // m(i) = -i, m(-0) = 0: Re m(i) = m(-0).
        WeylModel::custom("minus-z", Arc::new(|z: Complex64| -z), Some(0.0)).unwrap()
    }

    /// Golden-section minimum of f on [lo, hi].
    fn golden_min(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
        let r = (5f64.sqrt() - 1.0) / 2.0;
        while hi - lo > 1e-12 * (1.0 + lo.abs()) {
            let a = hi - r * (hi - lo);
            let b = lo + r * (hi - lo);
            if f(a) < f(b) {
                hi = b;
            } else {
                lo = a;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn operator_classes() {
        let half = WeylModel::bessel_half();
        assert_eq!(classify_operator(&half, c(0.0, 1.0)).unwrap(), OperatorClass::ExtremalAccretive);
        let three = WeylModel::bessel_three_halves();
        assert_eq!(classify_operator(&three, c(-1.0, 3f64.sqrt() / 2.0)).unwrap(), OperatorClass::ExtremalAccretive);
        match classify_operator(&half, c(1.0, 1.0)).unwrap() {
            OperatorClass::Sectorial { beta } => assert_abs_diff_eq!(beta, FRAC_PI_4, epsilon = 1e-15),
            other => panic!("{other:?}"),
        }
        assert_eq!(classify_operator(&half, c(-0.1, 1.0)).unwrap(), OperatorClass::NonAccretive);
        assert_eq!(classify_operator(&half, c(0.5, 0.0)).unwrap(), OperatorClass::SelfAdjointBoundary);
        assert!(classify_operator(&half, c(0.5, -1.0)).is_err());
    }

    #[test]
    fn kappa0_values() {
        assert_abs_diff_eq!(kappa0_extremal(&WeylModel::bessel_half()).unwrap(), SQRT_2 - 1.0, epsilon = 1e-15);
        assert_eq!(kappa0_extremal(&flat_model()).unwrap(), 0.0);
        // Unrationalized form sqrt((sqrt D - B)/(sqrt D + B)).
        let k = WeylModel::bessel_three_halves().derived_constants().unwrap();
        let direct = ((k.dist() - k.neg_im_i) / (k.dist() + k.neg_im_i)).sqrt();
        assert_abs_diff_eq!(kappa0_extremal_of(&k), direct, epsilon = 1e-15);
    }

    #[test]
    fn kappa0_sectorial_limits() {
        for model in [WeylModel::bessel_half(), WeylModel::bessel_three_halves()] {
            let ext = kappa0_extremal(&model).unwrap();
            let near = kappa0_sectorial(&model, FRAC_PI_2 - 1e-12).unwrap();
            assert_abs_diff_eq!(near, ext, epsilon = 1e-10);
        }
        assert!(kappa0_sectorial(&WeylModel::bessel_half(), 0.0).is_err());
        assert!(kappa0_sectorial(&WeylModel::bessel_half(), FRAC_PI_2).is_err());
    }

    #[test]
    fn kappa0_sectorial_matches_minimization_oracle() {
        let model = WeylModel::bessel_half();
        let k = model.derived_constants().unwrap();
        let f = |x: f64| kappa_sq_sectorial(&k, FRAC_PI_4, x);
        let x = golden_min(f, 1e-6, 100.0);
        assert_abs_diff_eq!(kappa0_sectorial(&model, FRAC_PI_4).unwrap(), f(x).sqrt(), epsilon = 1e-9);
    }

    #[test]
    fn extremal_inverse_examples() {
        let half = WeylModel::bessel_half();
        let hs = extremal_h_from_kappa(&half, SQRT_2 - 1.0).unwrap();
        assert_eq!(hs.len(), 1);
        assert!((hs[0].value() - c(0.0, 1.0)).norm() < 1e-15);

        let hs = extremal_h_from_kappa(&half, 0.5).unwrap();
        assert_eq!(hs.len(), 2);
        for hp in hs {
            assert_abs_diff_eq!(crate::lsystem::kappa_of(&half, hp), 0.5, epsilon = 1e-10);
            assert_eq!(hp.re(), 0.0);
        }
        assert!(matches!(extremal_h_from_kappa(&half, 0.3), Err(Error::KappaBelowBound { .. })));
        assert!(extremal_h_from_kappa(&half, 1.0).is_err());
    }

    #[test]
    fn extremal_inverse_matches_direct_quadratic_formula() {
        // h = -m + i (B(1+k^2) +- sqrt(4 B^2 k^2 - C (1-k^2)^2)) / (1-k^2).
        let k = WeylModel::bessel_three_halves().derived_constants().unwrap();
        let kappa: f64 = 0.6;
        let (b, cc) = (k.neg_im_i, k.gap_sq);
        let s = 1.0 - kappa * kappa;
        let root = (4.0 * b * b * kappa * kappa - cc * s * s).sqrt();
        let direct = [(b * (1.0 + kappa * kappa) - root) / s, (b * (1.0 + kappa * kappa) + root) / s];
        let ours = extremal_im_h_for_kappa(&k, kappa).unwrap();
        assert_abs_diff_eq!(ours[0], direct[0], epsilon = 1e-13);
        assert_abs_diff_eq!(ours[1], direct[1], epsilon = 1e-13);
    }

    #[test]
    fn sectorial_inverse_examples() {
        let half = WeylModel::bessel_half();
        let hs = sectorial_h_from_kappa(&half, FRAC_PI_3, 0.7).unwrap();
        assert_eq!(hs.len(), 2);
        for hp in hs {
            assert_abs_diff_eq!(crate::lsystem::kappa_of(&half, hp), 0.7, epsilon = 1e-10);
            match classify_operator(&half, hp.value()).unwrap() {
                OperatorClass::Sectorial { beta } => assert_abs_diff_eq!(beta, FRAC_PI_3, epsilon = 1e-10),
                other => panic!("{other:?}"),
            }
        }
        let k = half.derived_constants().unwrap();
        let kappa0 = kappa0_sectorial_of(&k, FRAC_PI_3);
        let single = sectorial_h_from_kappa(&half, FRAC_PI_3, kappa0).unwrap();
        assert_eq!(single.len(), 1);
        assert_abs_diff_eq!(single[0].im(), FRAC_PI_3.sin() * k.dist(), epsilon = 1e-14);
    }

    #[test]
    fn sectorial_inverse_matches_direct_quadratic_formula() {
        // h = -m + sin^2 b (cot b + i)(xi B - E cot b +- sqrt(Es)).
        let model = WeylModel::bessel_three_halves();
        let k = model.derived_constants().unwrap();
        let (beta, kappa): (f64, f64) = (0.9, 0.8);
        let (sin, cos) = beta.sin_cos();
        let cot = cos / sin;
        let xi = (1.0 + kappa * kappa) / (1.0 - kappa * kappa);
        let es = (k.gap * cot - xi * k.neg_im_i).powi(2) - k.dist_sq / (sin * sin);
        let hs = sectorial_h_from_kappa(&model, beta, kappa).unwrap();
        for (sign, hp) in [-1.0, 1.0].iter().zip(hs) {
            let direct = -k.at_minus0 + sin * sin * c(cot, 1.0) * (xi * k.neg_im_i - k.gap * cot + sign * es.sqrt());
            assert!((hp.value() - direct).norm() < 1e-12);
        }
    }

    #[test]
    fn sectorial_continuity_to_extremal() {
        let model = WeylModel::bessel_three_halves();
        let ext = extremal_h_from_kappa(&model, 0.6).unwrap();
        let sec = sectorial_h_from_kappa(&model, FRAC_PI_2 - 1e-10, 0.6).unwrap();
        for (a, b) in ext.iter().zip(&sec) {
            assert!((a.value() - b.value()).norm() < 1e-8);
        }
    }

    #[test]
    fn donoghue_examples() {
        let half = WeylModel::bessel_half();
        let sys = LSystem::new(&half, ExtReal::Finite(-1.0), h(0.0, 1.0)).unwrap();
        let cls = classify_impedance(&sys).unwrap();
        match cls.variant {
            DonoghueVariant::MKappa { kappa } => assert_abs_diff_eq!(kappa, SQRT_2 - 1.0, epsilon = 1e-14),
            other => panic!("{other:?}"),
        }
        assert_abs_diff_eq!(cls.a, SQRT_2 - 1.0, epsilon = 1e-14);
        assert!(cls.criterion_residual.unwrap() < 1e-12);

        let sys = LSystem::new(&half, ExtReal::Finite(1.0), h(0.0, 1.0)).unwrap();
        let cls = classify_impedance(&sys).unwrap();
        match cls.variant {
            DonoghueVariant::MKappaInv { kappa } => assert_abs_diff_eq!(kappa, SQRT_2 - 1.0, epsilon = 1e-14),
            other => panic!("{other:?}"),
        }
        assert_abs_diff_eq!(cls.a, SQRT_2 + 1.0, epsilon = 1e-14);

        let three = WeylModel::bessel_three_halves();
        let hp = h(-1.0, 3f64.sqrt() / 2.0);
        let sys = LSystem::new(&three, ExtReal::Infinity, hp).unwrap();
        assert_eq!(classify_impedance(&sys).unwrap().variant, DonoghueVariant::None);
    }

    #[test]
    fn class_m_at_minus_m_i() {
        let half = WeylModel::bessel_half();
        let hp = BoundaryParam::new(-half.m_at_i()).unwrap();
        for mu in [ExtReal::Finite(-5.0), ExtReal::Finite(0.0), ExtReal::Finite(5.0), ExtReal::Infinity] {
            let cls = classify_impedance(&LSystem::new(&half, mu, hp).unwrap()).unwrap();
            assert_eq!(cls.variant, DonoghueVariant::M);
            assert!(cls.criterion_residual.unwrap() < 1e-12);
        }
    }

    #[test]
    fn mu_range_examples() {
        let half = WeylModel::bessel_half();
        assert_eq!(accretive_state_space_mu_range(&half, h(1.0, 1.0)).unwrap(), MuRange::From { mu_min: 2.0 });
        assert_eq!(accretive_state_space_mu_range(&half, h(0.0, 1.0)).unwrap(), MuRange::InfinityOnly);
        assert!(accretive_state_space_mu_range(&half, h(-1.0, 1.0)).is_err());
    }

    #[test]
    fn mu_range_at_sectorial_max_entropy_h() {
        let model = WeylModel::bessel_three_halves();
        let k = model.derived_constants().unwrap();
        let beta: f64 = 0.7;
        let hp = h(beta.cos() * k.dist() - k.at_minus0, beta.sin() * k.dist());
        let MuRange::From { mu_min } = accretive_state_space_mu_range(&model, hp).unwrap() else {
            panic!("expected a finite bound")
        };
        // (2 csc 2 beta) Im h - m with Im h = sin beta sqrt D.
        let im_h = beta.sin() * k.dist();
        assert_abs_diff_eq!(mu_min, 2.0 / (2.0 * beta).sin() * im_h - k.at_minus0, epsilon = 1e-13);
        assert_abs_diff_eq!(mu_min, k.dist() / beta.cos() - k.at_minus0, epsilon = 1e-13);
    }

    fn arb_model() -> impl Strategy<Value = WeylModel> {
        prop_oneof![Just(WeylModel::bessel_half()), Just(WeylModel::bessel_three_halves())]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(50))]

        #[test]
        fn extremal_bound_is_sharp(model in arb_model(), y in 1e-3f64..50.0) {
            let m = model.eval_m_minus0().unwrap();
            let kappa = crate::lsystem::kappa_of(&model, h(-m, y));
            prop_assert!(kappa >= kappa0_extremal(&model).unwrap() - 1e-12);
        }

        #[test]
        fn sectorial_bound(model in arb_model(), beta in 1e-3f64..(FRAC_PI_2 - 1e-3), y in 1e-3f64..50.0) {
            let m = model.eval_m_minus0().unwrap();
            let x = beta.cos() / beta.sin() * y - m;
            let kappa = crate::lsystem::kappa_of(&model, h(x, y));
            prop_assert!(kappa >= kappa0_sectorial(&model, beta).unwrap() - 1e-12);
        }

        #[test]
        fn sectorial_bound_positive_and_ordered(model in arb_model(), beta in 1e-3f64..(FRAC_PI_2 - 1e-3)) {
            let sec = kappa0_sectorial(&model, beta).unwrap();
            prop_assert!(sec > 0.0);
            prop_assert!(sec > kappa0_extremal(&model).unwrap());
            let later = kappa0_sectorial(&model, (beta + 1e-3).min(FRAC_PI_2 - 1e-9)).unwrap();
            prop_assert!(later < sec);
        }

        #[test]
        fn extremal_round_trip(model in arb_model(), t in 0.0f64..1.0) {
            let k0 = kappa0_extremal(&model).unwrap();
            let kappa = k0 + t * (1.0 - k0) * 0.999;
            for hp in extremal_h_from_kappa(&model, kappa).unwrap() {
                prop_assert!((crate::lsystem::kappa_of(&model, hp) - kappa).abs() <= 1e-10);
            }
        }

        #[test]
        fn sectorial_round_trip(model in arb_model(), beta in 1e-2f64..(FRAC_PI_2 - 1e-2), t in 0.0f64..1.0) {
            let k0 = kappa0_sectorial(&model, beta).unwrap();
            let kappa = k0 + t * (1.0 - k0) * 0.999;
            for hp in sectorial_h_from_kappa(&model, beta, kappa).unwrap() {
                prop_assert!((crate::lsystem::kappa_of(&model, hp) - kappa).abs() <= 1e-10);
                match classify_operator(&model, hp.value()).unwrap() {
                    OperatorClass::Sectorial { beta: b } => prop_assert!((b - beta).abs() <= 1e-10),
                    other => prop_assert!(false, "{other:?}"),
                }
            }
        }

        #[test]
        fn mu1_mu2_classes(model in arb_model(), x in -5.0f64..5.0, y in 0.01f64..5.0) {
            let hp = h(x, y);
            let kappa = crate::lsystem::kappa_of(&model, hp);
            if let Ok(mu1) = crate::lsystem::mu1_for_class_mk(&model, hp) {
                let cls = classify_impedance(&LSystem::new(&model, ExtReal::Finite(mu1), hp).unwrap()).unwrap();
                match cls.variant {
                    DonoghueVariant::MKappa { kappa: k } => prop_assert!((k - kappa).abs() <= 1e-10),
                    DonoghueVariant::M => prop_assert!(kappa <= 1e-10),
                    other => prop_assert!(false, "{other:?}"),
                }
                prop_assert!(cls.criterion_residual.unwrap() <= 1e-8 * (1.0 + hp.value().norm()));
            }
            if let Ok(mu2) = crate::lsystem::mu2_for_class_mk_inv(&model, hp) {
                let cls = classify_impedance(&LSystem::new(&model, ExtReal::Finite(mu2), hp).unwrap()).unwrap();
                match cls.variant {
                    DonoghueVariant::MKappaInv { kappa: k } => prop_assert!((k - kappa).abs() <= 1e-10),
                    DonoghueVariant::M => prop_assert!(kappa <= 1e-10),
                    other => prop_assert!(false, "{other:?}"),
                }
                prop_assert!(cls.criterion_residual.unwrap() <= 1e-8 * (1.0 + hp.value().norm()));
            }
        }

        #[test]
        fn stieltjes_above_mu_min(model in arb_model(), beta in 1e-2f64..(FRAC_PI_2 - 1e-2), y in 0.01f64..5.0, delta in 0.1f64..10.0) {
            let m = model.eval_m_minus0().unwrap();
            let hp = h(beta.cos() / beta.sin() * y - m, y);
            let MuRange::From { mu_min } = accretive_state_space_mu_range(&model, hp).unwrap() else {
                return Err(TestCaseError::fail("sectorial h must give a finite bound"));
            };
            let v = LSystem::new(&model, ExtReal::Finite(mu_min + delta), hp).unwrap().impedance(Complex64::i()).unwrap();
            prop_assert!(v.re > 0.0);
        }
    }
}
