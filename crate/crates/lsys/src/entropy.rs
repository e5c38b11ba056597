//! The dual c-entropy problems: minimal dissipation for a given entropy and
//! maximal entropy for a given dissipation, in the four regimes.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
use serde::Serialize;

use crate::classify::{
    classify_impedance, classify_operator, kappa0_extremal_of, kappa0_sectorial_of, DonoghueVariant, OperatorClass,
    DEFAULT_TOL, EXTREMAL_TOL,
};
use crate::error::{Error, Result};
use crate::lsystem::{BoundaryParam, ExtReal, LSystem};
use crate::weyl::WeylModel;

/// |D - B| <= BOUNDARY_TOL (1 + B) is the infinite-entropy boundary.
pub const BOUNDARY_TOL: f64 = 1e-12;

/// State-space parameter of a solution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MuChoice {
    Fixed {
        mu: ExtReal,
    },
    /// Every mu works; `witness` is the one used for concrete systems.
    Any {
        witness: ExtReal,
    },
}

impl MuChoice {
    pub fn witness(self) -> ExtReal {
        match self {
            MuChoice::Fixed { mu } | MuChoice::Any { witness: mu } => mu,
        }
    }
}

const ANY_MU: MuChoice = MuChoice::Any { witness: ExtReal::Infinity };

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "regime", rename_all = "snake_case")]
pub enum Regime {
    ClassMk,
    ClassMkInv,
    Extremal,
    Sectorial { beta: f64 },
    Accretive,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DualProblemSolution {
    pub h: BoundaryParam,
    pub mu: MuChoice,
    pub achieved_entropy: f64,
    pub achieved_dissipation: f64,
    pub regime: Regime,
    pub unique: bool,
}

/// Both roots of the minimal-dissipation quadratic; `smaller` is the optimum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DissipationRoots {
    pub smaller: f64,
    pub larger: f64,
}

/// Maximal-entropy accretive solution with the parameters placing the
/// impedance in M_kappa0 (`mu1`) and M_kappa0^-1 (`mu2`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AccretiveSolution {
    pub solution: DualProblemSolution,
    pub mu1: f64,
    pub mu2: f64,
}

/// Residuals of a solution against an independent re-evaluation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verification {
    /// Largest |entropy_report - achieved| over the checked mu values.
    pub entropy_residual: f64,
    pub dissipation_residual: f64,
    /// Whether the classifiers agree with the declared regime.
    pub class_consistent: bool,
    pub checked_mu: Vec<ExtReal>,
}

impl Verification {
    pub fn passed(&self, tol: f64) -> bool {
        self.class_consistent && self.entropy_residual <= tol && self.dissipation_residual <= tol
    }
}

fn check_entropy(entropy: f64) -> Result<()> {
    if entropy > 0.0 && entropy.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("entropy S = {entropy} must be positive and finite")))
    }
}

fn check_dissipation(d: f64) -> Result<()> {
    if d > 0.0 && d.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("dissipation D = {d} must be positive and finite")))
    }
}

fn check_beta(beta: f64) -> Result<()> {
    if beta > 0.0 && beta < FRAC_PI_2 {
        Ok(())
    } else {
        Err(Error::Domain(format!("beta = {beta} must lie in (0, pi/2)")))
    }
}

fn entropy_of_kappa(kappa: f64) -> f64 {
    if kappa == 0.0 {
        f64::INFINITY
    } else {
        -kappa.ln()
    }
}

/// Minimal dissipation tanh(S/2) B, impedance in M_kappa^-1 with mu = -Re m(i).
pub fn min_dissipation_mk_inv(model: &WeylModel, entropy: f64) -> Result<DualProblemSolution> {
    check_entropy(entropy)?;
    let m = model.m_at_i();
    let d = (entropy / 2.0).tanh() * -m.im;
    Ok(DualProblemSolution {
        h: BoundaryParam::from_parts(-m.re, d)?,
        mu: MuChoice::Fixed { mu: ExtReal::Finite(-m.re) },
        achieved_entropy: entropy,
        achieved_dissipation: d,
        regime: Regime::ClassMkInv,
        unique: true,
    })
}

/// Minimal dissipation tanh(S/2) B, impedance in M_kappa with mu = infinity.
pub fn min_dissipation_mk(model: &WeylModel, entropy: f64) -> Result<DualProblemSolution> {
    let sol = min_dissipation_mk_inv(model, entropy)?;
    Ok(DualProblemSolution { mu: MuChoice::Fixed { mu: ExtReal::Infinity }, regime: Regime::ClassMk, ..sol })
}

/// ln(D + B) - ln|D - B|, the common optimum of both Donoghue regimes.
fn donoghue_max_entropy(model: &WeylModel, d: f64, boundary_tol: f64) -> Result<(BoundaryParam, f64, bool)> {
    check_dissipation(d)?;
    let m = model.m_at_i();
    let b = -m.im;
    if (d - b).abs() <= boundary_tol * (1.0 + b) {
        return Err(Error::InfiniteEntropy { h: -m });
    }
    let entropy = (d + b).ln() - (d - b).abs().ln();
    Ok((BoundaryParam::from_parts(-m.re, d)?, entropy, d > b))
}

/// Maximal entropy for dissipation D, impedance in M_kappa.
pub fn max_entropy_mk(model: &WeylModel, d: f64) -> Result<DualProblemSolution> {
    max_entropy_mk_with_tol(model, d, BOUNDARY_TOL)
}

/// `max_entropy_mk` with |D - B| <= boundary_tol (1 + B) treated as D = B.
pub fn max_entropy_mk_with_tol(model: &WeylModel, d: f64, boundary_tol: f64) -> Result<DualProblemSolution> {
    let (h, entropy, above) = donoghue_max_entropy(model, d, boundary_tol)?;
    let mu = if above { ExtReal::Finite(h.re()) } else { ExtReal::Infinity };
    Ok(DualProblemSolution {
        h,
        mu: MuChoice::Fixed { mu },
        achieved_entropy: entropy,
        achieved_dissipation: d,
        regime: Regime::ClassMk,
        unique: true,
    })
}

/// Maximal entropy for dissipation D, impedance in M_kappa^-1.
pub fn max_entropy_mk_inv(model: &WeylModel, d: f64) -> Result<DualProblemSolution> {
    max_entropy_mk_inv_with_tol(model, d, BOUNDARY_TOL)
}

/// `max_entropy_mk_inv` with |D - B| <= boundary_tol (1 + B) treated as D = B.
pub fn max_entropy_mk_inv_with_tol(model: &WeylModel, d: f64, boundary_tol: f64) -> Result<DualProblemSolution> {
    let (h, entropy, above) = donoghue_max_entropy(model, d, boundary_tol)?;
    let mu = if above { ExtReal::Infinity } else { ExtReal::Finite(h.re()) };
    Ok(DualProblemSolution {
        h,
        mu: MuChoice::Fixed { mu },
        achieved_entropy: entropy,
        achieved_dissipation: d,
        regime: Regime::ClassMkInv,
        unique: true,
    })
}

/// Largest entropy of an extremal T_h, -ln kappa0 (infinite when kappa0 = 0).
pub fn max_entropy_bound_extremal(model: &WeylModel) -> Result<f64> {
    Ok(entropy_of_kappa(kappa0_extremal_of(&model.derived_constants()?)))
}

/// Largest entropy of a beta-sectorial T_h, -ln kappa0(beta).
pub fn max_entropy_bound_sectorial(model: &WeylModel, beta: f64) -> Result<f64> {
    check_beta(beta)?;
    Ok(entropy_of_kappa(kappa0_sectorial_of(&model.derived_constants()?, beta)))
}

fn attainable(entropy: f64, max_entropy: f64) -> Result<()> {
    if entropy > max_entropy * (1.0 + 1e-12) {
        Err(Error::EntropyUnattainable { entropy, max_entropy })
    } else {
        Ok(())
    }
}

/// Roots of x^2 - 2 B coth(S) x + D = 0.
pub fn dissipation_roots_extremal(model: &WeylModel, entropy: f64) -> Result<DissipationRoots> {
    check_entropy(entropy)?;
    attainable(entropy, max_entropy_bound_extremal(model)?)?;
    let k = model.derived_constants()?;
    let p = k.neg_im_i / entropy.tanh();
    let larger = p + (p * p - k.dist_sq).max(0.0).sqrt();
    Ok(DissipationRoots { smaller: k.dist_sq / larger, larger })
}

/// Minimal dissipation of an extremal T_h with entropy S; any mu.
pub fn min_dissipation_extremal(model: &WeylModel, entropy: f64) -> Result<DualProblemSolution> {
    let roots = dissipation_roots_extremal(model, entropy)?;
    let m = model.eval_m_minus0()?;
    Ok(DualProblemSolution {
        h: BoundaryParam::from_parts(-m, roots.smaller)?,
        mu: ANY_MU,
        achieved_entropy: entropy,
        achieved_dissipation: roots.smaller,
        regime: Regime::Extremal,
        unique: false,
    })
}

/// Maximal entropy over extremal T_h: h = -m + i sqrt D, any mu.
pub fn max_entropy_extremal(model: &WeylModel) -> Result<DualProblemSolution> {
    let k = model.derived_constants()?;
    if k.gap == 0.0 {
        return Err(Error::InfiniteEntropy { h: -model.m_at_i() });
    }
    let d = k.dist();
    Ok(DualProblemSolution {
        h: BoundaryParam::from_parts(-k.at_minus0, d)?,
        mu: ANY_MU,
        achieved_entropy: entropy_of_kappa(kappa0_extremal_of(&k)),
        achieved_dissipation: d,
        regime: Regime::Extremal,
        unique: false,
    })
}

/// Roots of csc^2(b) x^2 + 2 (E cot b - B coth S) x + D = 0 in Im h.
pub fn dissipation_roots_sectorial(model: &WeylModel, beta: f64, entropy: f64) -> Result<DissipationRoots> {
    check_entropy(entropy)?;
    attainable(entropy, max_entropy_bound_sectorial(model, beta)?)?;
    let k = model.derived_constants()?;
    let (sin, cos) = beta.sin_cos();
    let s2 = sin * sin;
    let p = k.neg_im_i / entropy.tanh() - k.gap * cos / sin;
    let larger = s2 * (p + (p * p - k.dist_sq / s2).max(0.0).sqrt());
    Ok(DissipationRoots { smaller: k.dist_sq * s2 / larger, larger })
}

/// Minimal dissipation of a beta-sectorial T_h with entropy S; any mu.
pub fn min_dissipation_sectorial(model: &WeylModel, beta: f64, entropy: f64) -> Result<DualProblemSolution> {
    let roots = dissipation_roots_sectorial(model, beta, entropy)?;
    let m = model.eval_m_minus0()?;
    let cot = beta.cos() / beta.sin();
    Ok(DualProblemSolution {
        h: BoundaryParam::from_parts(cot * roots.smaller - m, roots.smaller)?,
        mu: ANY_MU,
        achieved_entropy: entropy,
        achieved_dissipation: roots.smaller,
        regime: Regime::Sectorial { beta },
        unique: false,
    })
}

/// Maximal entropy over beta-sectorial T_h: h = sqrt D (cos b + i sin b) - m.
pub fn max_entropy_sectorial(model: &WeylModel, beta: f64) -> Result<DualProblemSolution> {
    check_beta(beta)?;
    let k = model.derived_constants()?;
    let (sin, cos) = beta.sin_cos();
    let d = sin * k.dist();
    Ok(DualProblemSolution {
        h: BoundaryParam::from_parts(cos * k.dist() - k.at_minus0, d)?,
        mu: ANY_MU,
        achieved_entropy: entropy_of_kappa(kappa0_sectorial_of(&k, beta)),
        achieved_dissipation: d,
        regime: Regime::Sectorial { beta },
        unique: false,
    })
}

/// Maximal finite entropy over accretive T_h, attained by the extremal optimum.
pub fn max_entropy_accretive(model: &WeylModel) -> Result<AccretiveSolution> {
    let ext = max_entropy_extremal(model)?;
    let k = model.derived_constants()?;
    let (a, b, m, d) = (k.re_i, k.neg_im_i, k.at_minus0, k.dist_sq);
    let root_d = k.dist();
    let f = (root_d - k.gap) / (b * root_d);
    let bf = b * f - 1.0;
    let cross = m * m * f + d * f - b - m * a * f;
    let mu1 = ((a - m * b * f) * bf + cross * k.gap * f) / (bf * bf + k.gap_sq * f * f);
    let mu2 = -(mu1 * m + m * m + k.gap_sq + b * b) / (mu1 + m);
    Ok(AccretiveSolution { solution: DualProblemSolution { regime: Regime::Accretive, ..ext }, mu1, mu2 })
}

/// Whether the quasi-kernel of the witness system is the Krein-von Neumann
/// extension y'(left) + m(-0) y(left) = 0.
pub fn krein_von_neumann_check(model: &WeylModel, h: BoundaryParam, mu: ExtReal) -> Result<bool> {
    let m = model.eval_m_minus0()?;
    if !mu.is_infinite() {
        return Ok(false);
    }
    let xi = LSystem::new(model, mu, h)?.quasi_kernel_xi()?;
    Ok((xi + m).abs() <= EXTREMAL_TOL * (1.0 + m.abs()))
}

impl DualProblemSolution {
    pub fn system<'a>(&self, model: &'a WeylModel) -> Result<LSystem<'a>> {
        LSystem::new(model, self.mu.witness(), self.h)
    }

    /// Re-evaluates entropy, dissipation and class of the returned system.
    pub fn verify(&self, model: &WeylModel) -> Result<Verification> {
        let checked_mu: Vec<ExtReal> = match self.mu {
            MuChoice::Fixed { mu } => vec![mu],
            MuChoice::Any { .. } => {
                [ExtReal::Finite(0.0), ExtReal::Finite(1.0), ExtReal::Finite(-1.0), ExtReal::Infinity]
                    .into_iter()
                    .filter(|mu| mu.finite().map_or(true, |v| (v - self.h.re()).abs() > 1e-9))
                    .collect()
            }
        };
        let mut entropy_residual: f64 = 0.0;
        let mut dissipation_residual: f64 = 0.0;
        for &mu in &checked_mu {
            let report = LSystem::new(model, mu, self.h)?.entropy_report();
            let diff = if report.entropy == self.achieved_entropy {
                0.0
            } else {
                (report.entropy - self.achieved_entropy).abs()
            };
            entropy_residual = entropy_residual.max(diff);
            dissipation_residual = dissipation_residual.max((report.dissipation - self.achieved_dissipation).abs());
        }
        Ok(Verification {
            entropy_residual,
            dissipation_residual,
            class_consistent: self.class_consistent(model)?,
            checked_mu,
        })
    }

    fn class_consistent(&self, model: &WeylModel) -> Result<bool> {
        let kappa = (-self.achieved_entropy).exp();
        let near = |a: f64, b: f64| (a - b).abs() <= DEFAULT_TOL * (1.0 + a.abs());
        Ok(match self.regime {
            Regime::ClassMk => match classify_impedance(&self.system(model)?)?.variant {
                DonoghueVariant::MKappa { kappa: k } => near(k, kappa),
                _ => false,
            },
            Regime::ClassMkInv => match classify_impedance(&self.system(model)?)?.variant {
                DonoghueVariant::MKappaInv { kappa: k } => near(k, kappa),
                _ => false,
            },
            Regime::Extremal | Regime::Accretive => {
                classify_operator(model, self.h.value())? == OperatorClass::ExtremalAccretive
            }
            Regime::Sectorial { beta } => match classify_operator(model, self.h.value())? {
                OperatorClass::Sectorial { beta: b } => near(b, beta),
                _ => false,
            },
        })
    }
}

/// The h = -m(i) construction reached at the infinite-entropy boundary.
pub fn infinite_entropy_h(model: &WeylModel) -> Complex64 {
    -model.m_at_i()
}
