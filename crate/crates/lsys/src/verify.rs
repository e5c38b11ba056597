//! Golden checks of the two Bessel-type examples and of the numerical Weyl
//! solver against their closed forms.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, SQRT_2};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::Serialize;

use crate::classify::{
    classify_impedance, classify_operator, extremal_h_from_kappa, kappa0_extremal, kappa0_sectorial,
    sectorial_h_from_kappa, DonoghueVariant, OperatorClass,
};
use crate::entropy::{
    krein_von_neumann_check, max_entropy_accretive, max_entropy_extremal, max_entropy_mk_inv, max_entropy_sectorial,
    min_dissipation_extremal, min_dissipation_mk, min_dissipation_sectorial, MuChoice,
};
use crate::error::{Error, Result};
use crate::lsystem::{mu1_for_class_mk, BoundaryParam, ExtReal, LSystem};
use crate::weyl::{principal_sqrt, Potential, SolverParams, WeylModel};

/// Default tolerance of closed-form checks.
pub const CLOSED_FORM_TOL: f64 = 1e-10;
/// Default relative tolerance of numerical-solver checks.
pub const NUMERICAL_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckGroup {
    Example1,
    Example2,
    Numerical,
}

impl CheckGroup {
    pub const ALL: [CheckGroup; 3] = [CheckGroup::Example1, CheckGroup::Example2, CheckGroup::Numerical];

    pub fn name(self) -> &'static str {
        match self {
            CheckGroup::Example1 => "example1",
            CheckGroup::Example2 => "example2",
            CheckGroup::Numerical => "numerical",
        }
    }
}

impl fmt::Display for CheckGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CheckGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CheckGroup::ALL
            .into_iter()
            .find(|g| g.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown check group {s:?} (example1, example2, numerical)")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub group: CheckGroup,
    pub name: String,
    pub expected: String,
    pub computed: String,
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}/{}: residual {:.3e} (tol {:.0e}); expected {}, got {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.group,
            self.name,
            self.residual,
            self.tolerance,
            self.expected,
            self.computed
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    pub tolerance: f64,
    pub numerical_tolerance: f64,
    /// Added to the closed-form Weyl functions; nonzero values are a negative control.
    pub perturb_m: f64,
    pub only: Option<CheckGroup>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { tolerance: CLOSED_FORM_TOL, numerical_tolerance: NUMERICAL_TOL, perturb_m: 0.0, only: None }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
    pub passed: bool,
}

impl VerifyReport {
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

pub fn verify_examples(opts: &VerifyOptions) -> VerifyReport {
    let mut checks = Vec::new();
    for group in CheckGroup::ALL {
        if opts.only.is_some_and(|g| g != group) {
            continue;
        }
        let mut suite = Suite { group, checks: Vec::new() };
        match group {
            CheckGroup::Example1 => example1(&mut suite, opts),
            CheckGroup::Example2 => {
                let model = WeylModel::bessel_three_halves().shifted(opts.perturb_m);
                example2(&mut suite, &model, opts.tolerance)
            }
            CheckGroup::Numerical => numerical(&mut suite, opts),
        }
        checks.extend(suite.checks);
    }
    let passed = checks.iter().all(|c| c.passed);
    VerifyReport { checks, passed }
}

struct Suite {
    group: CheckGroup,
    checks: Vec<Check>,
}

impl Suite {
    fn push(&mut self, name: &str, expected: String, outcome: Result<(String, f64)>, tolerance: f64) {
        let (computed, residual) = outcome.unwrap_or_else(|e| (format!("error: {e}"), f64::INFINITY));
        self.checks.push(Check {
            group: self.group,
            name: name.to_string(),
            expected,
            computed,
            passed: residual <= tolerance,
            residual,
            tolerance,
        });
    }

    fn real(&mut self, name: &str, computed: Result<f64>, expected: f64, tol: f64) {
        let outcome = computed.map(|v| (format!("{v}"), (v - expected).abs()));
        self.push(name, format!("{expected}"), outcome, tol);
    }

    fn complex(&mut self, name: &str, computed: Result<Complex64>, expected: Complex64, tol: f64) {
        let outcome = computed.map(|v| (format!("{v}"), (v - expected).norm()));
        self.push(name, format!("{expected}"), outcome, tol);
    }

    /// Relative error, measured against max(|expected|, 1).
    fn relative(&mut self, name: &str, computed: Result<Complex64>, expected: Complex64, tol: f64) {
        let outcome = computed.map(|v| (format!("{v}"), (v - expected).norm() / expected.norm().max(1.0)));
        self.push(name, format!("{expected}"), outcome, tol);
    }

    fn holds(&mut self, name: &str, expected: &str, computed: Result<(String, bool)>) {
        let outcome = computed.map(|(text, ok)| (text, if ok { 0.0 } else { 1.0 }));
        self.push(name, expected.to_string(), outcome, 0.0);
    }

    /// A vector of residuals folded into their maximum.
    fn residuals(&mut self, name: &str, expected: String, computed: Result<Vec<f64>>, tol: f64) {
        let outcome = computed.map(|r| (format!("{r:?}"), r.iter().fold(0.0, |a: f64, &b| a.max(b))));
        self.push(name, expected, outcome, tol);
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn hp(re: f64, im: f64) -> BoundaryParam {
    BoundaryParam::from_parts(re, im).expect("example parameters are dissipative")
}

fn impedance_at_i(model: &WeylModel, mu: ExtReal, h: BoundaryParam) -> Result<Complex64> {
    LSystem::new(model, mu, h)?.impedance(Complex64::i())
}

fn example1(s: &mut Suite, opts: &VerifyOptions) {
    let tol = opts.tolerance;
    let model = WeylModel::bessel_half().shifted(opts.perturb_m);
    let r = 1.0 / SQRT_2;
    let h0 = hp(-r, r);
    let hi = hp(0.0, 1.0);
    let kappa0 = SQRT_2 - 1.0;

    s.complex("m_at_i", Ok(model.m_at_i()), c(r, -r), tol);
    s.real("m_at_minus0", model.eval_m_minus0(), 0.0, tol);
    s.residuals(
        "constants",
        "(A, B, m, C, D, E) = (1/sqrt2, 1/sqrt2, 0, 1/2, 1, 1/sqrt2)".into(),
        model.derived_constants().map(|k| {
            [(k.re_i, r), (k.neg_im_i, r), (k.at_minus0, 0.0), (k.gap_sq, 0.5), (k.dist_sq, 1.0), (k.gap, r)]
                .iter()
                .map(|(a, b)| (a - b).abs())
                .collect()
        }),
        tol,
    );

    let z = c(0.5, 2.0);
    let root_2z = principal_sqrt(2.0 * z);
    let i = Complex64::i();
    s.complex(
        "W_inf_h0(0.5+2i)",
        LSystem::new(&model, ExtReal::Infinity, h0).and_then(|sys| sys.transfer(z)),
        (i * root_2z + c(1.0, 1.0)) / (i * root_2z + c(1.0, -1.0)),
        tol,
    );
    let root_z = principal_sqrt(z);
    s.complex(
        "W_-1_i(0.5+2i)",
        LSystem::new(&model, ExtReal::Finite(-1.0), hi).and_then(|sys| sys.transfer(z)),
        i * (root_z + 1.0) / (root_z - 1.0),
        tol,
    );
    s.complex("V_inf_h0(i)", impedance_at_i(&model, ExtReal::Infinity, h0), i, tol);
    s.complex("V_-1_i(i)", impedance_at_i(&model, ExtReal::Finite(-1.0), hi), c(0.0, kappa0), tol);
    s.complex("V_1_i(i)", impedance_at_i(&model, ExtReal::Finite(1.0), hi), c(0.0, SQRT_2 + 1.0), tol);
    s.residuals(
        "class_M_at_h0",
        "V(i) = i for mu in {-5, 0, 5, inf}".into(),
        [ExtReal::Finite(-5.0), ExtReal::Finite(0.0), ExtReal::Finite(5.0), ExtReal::Infinity]
            .into_iter()
            .map(|mu| impedance_at_i(&model, mu, h0).map(|v| (v - i).norm()))
            .collect(),
        tol,
    );

    s.real("kappa_at_h_i", LSystem::new(&model, ExtReal::Infinity, hi).map(|sys| sys.von_neumann_kappa()), kappa0, tol);
    s.real("kappa0_extremal", kappa0_extremal(&model), kappa0, tol);
    s.real("kappa0_sectorial_right_angle", kappa0_sectorial(&model, FRAC_PI_2 - 1e-12), kappa0, tol);
    s.residuals(
        "entropy_at_h0",
        "(kappa, S, D) = (0, inf, 1/sqrt2)".into(),
        LSystem::new(&model, ExtReal::Infinity, h0).map(|sys| {
            let e = sys.entropy_report();
            vec![e.kappa, if e.entropy == f64::INFINITY { 0.0 } else { f64::INFINITY }, (e.dissipation - r).abs()]
        }),
        tol,
    );
    s.residuals(
        "entropy_at_h_i",
        "(kappa, S, D) = (sqrt2 - 1, -ln(sqrt2 - 1), 1)".into(),
        LSystem::new(&model, ExtReal::Infinity, hi).map(|sys| {
            let e = sys.entropy_report();
            vec![(e.kappa - kappa0).abs(), (e.entropy + kappa0.ln()).abs(), (e.dissipation - 1.0).abs()]
        }),
        tol,
    );

    s.real("xi_inf_h0", LSystem::new(&model, ExtReal::Infinity, h0).and_then(|sys| sys.quasi_kernel_xi()), -r, tol);
    s.real("xi_-1_i", LSystem::new(&model, ExtReal::Finite(-1.0), hi).and_then(|sys| sys.quasi_kernel_xi()), 1.0, tol);
    s.holds(
        "operator_class_h_i",
        "extremal_accretive",
        classify_operator(&model, hi.value()).map(|c| (format!("{c:?}"), c == OperatorClass::ExtremalAccretive)),
    );
    s.complex(
        "h_from_kappa0",
        extremal_h_from_kappa(&model, kappa0).and_then(|hs| match hs.as_slice() {
            [h] => Ok(h.value()),
            other => Err(Error::Degenerate(format!("{} roots at kappa0", other.len()))),
        }),
        i,
        tol,
    );
    let beta = FRAC_PI_4;
    s.real(
        "sectorial_root_at_kappa0",
        kappa0_sectorial(&model, beta).and_then(|k0| sectorial_h_from_kappa(&model, beta, k0)).and_then(|hs| match hs
            .as_slice()
        {
            [h] => Ok(h.im()),
            other => Err(Error::Degenerate(format!("{} roots at kappa0(beta)", other.len()))),
        }),
        beta.sin(),
        tol,
    );

    let accretive = max_entropy_accretive(&model);
    s.real("mu1", accretive.as_ref().map(|a| a.mu1).map_err(Clone::clone), -1.0, tol);
    s.real("mu1_class_mk", mu1_for_class_mk(&model, hi), -1.0, tol);
    s.real("mu2", accretive.as_ref().map(|a| a.mu2).map_err(Clone::clone), 1.0, tol);
    s.holds(
        "donoghue_-1_i",
        "m_kappa(sqrt2 - 1), a = sqrt2 - 1",
        LSystem::new(&model, ExtReal::Finite(-1.0), hi).and_then(|sys| classify_impedance(&sys)).map(|d| {
            let ok = matches!(d.variant, DonoghueVariant::MKappa { kappa } if (kappa - kappa0).abs() <= tol)
                && (d.a - kappa0).abs() <= tol;
            (format!("{d:?}"), ok)
        }),
    );
    s.holds(
        "donoghue_1_i",
        "m_kappa_inv(sqrt2 - 1), a = sqrt2 + 1",
        LSystem::new(&model, ExtReal::Finite(1.0), hi).and_then(|sys| classify_impedance(&sys)).map(|d| {
            let ok = matches!(d.variant, DonoghueVariant::MKappaInv { kappa } if (kappa - kappa0).abs() <= tol)
                && (d.a - SQRT_2 - 1.0).abs() <= tol;
            (format!("{d:?}"), ok)
        }),
    );

    let s_max = -kappa0.ln();
    s.residuals(
        "max_entropy_extremal",
        "h = i, S_max = -ln(sqrt2 - 1)".into(),
        max_entropy_extremal(&model).map(|sol| vec![(sol.h.value() - i).norm(), (sol.achieved_entropy - s_max).abs()]),
        tol,
    );
    s.complex(
        "min_dissipation_extremal_at_bound",
        min_dissipation_extremal(&model, s_max).map(|sol| sol.h.value()),
        i,
        // The double root is resolved to sqrt of the discriminant tolerance.
        tol.sqrt(),
    );
    let s_log = (1.0 + SQRT_2).ln();
    s.residuals(
        "min_dissipation_mk",
        "h = -1/sqrt2 + i tanh(S/2)/sqrt2, mu = inf".into(),
        min_dissipation_mk(&model, s_log).map(|sol| {
            vec![
                (sol.h.value() - c(-r, (s_log / 2.0).tanh() * r)).norm(),
                if sol.mu == (MuChoice::Fixed { mu: ExtReal::Infinity }) { 0.0 } else { f64::INFINITY },
            ]
        }),
        tol,
    );
    s.residuals(
        "max_entropy_mk_inv_above",
        "D = 1: h = -1/sqrt2 + i, mu = inf".into(),
        max_entropy_mk_inv(&model, 1.0).map(|sol| {
            vec![(sol.h.value() - c(-r, 1.0)).norm(), if sol.mu.witness().is_infinite() { 0.0 } else { f64::INFINITY }]
        }),
        tol,
    );
    s.real(
        "max_entropy_mk_inv_below",
        max_entropy_mk_inv(&model, 0.5)
            .and_then(|sol| sol.mu.witness().finite().ok_or_else(|| Error::Degenerate("mu = inf".into()))),
        -r,
        tol,
    );
    let beta = FRAC_PI_3;
    let sectorial_max = max_entropy_sectorial(&model, beta);
    s.real(
        "sectorial_max_entropy_dissipation",
        sectorial_max.as_ref().map(|sol| sol.achieved_dissipation).map_err(Clone::clone),
        beta.sin(),
        tol,
    );
    s.real(
        "sectorial_min_dissipation_at_bound",
        sectorial_max
            .and_then(|max| min_dissipation_sectorial(&model, beta, max.achieved_entropy))
            .map(|sol| sol.achieved_dissipation),
        beta.sin(),
        tol.sqrt(),
    );
    s.holds(
        "krein_von_neumann_-1_i",
        "false",
        krein_von_neumann_check(&model, hi, ExtReal::Finite(-1.0)).map(|b| (b.to_string(), !b)),
    );
}

/// The twelve printed values of the nu = 3/2 example, checked on `model`.
pub fn example2_checks(model: &WeylModel, tol: f64) -> Vec<Check> {
    let mut suite = Suite { group: CheckGroup::Example2, checks: Vec::new() };
    example2(&mut suite, model, tol);
    suite.checks
}

/// m(z) + 1/2 with m(-0) kept at 1: the model whose m(i) is (2 + sqrt2 - i)/2.
pub fn printed_example2_model() -> WeylModel {
    let exact = WeylModel::bessel_three_halves();
    let func = move |z: Complex64| exact.eval_m_off_axis(z).map_or(Complex64::new(f64::NAN, f64::NAN), |m| m + 0.5);
    WeylModel::custom("bessel-3/2-printed", std::sync::Arc::new(func), Some(1.0)).expect("valid Herglotz sign")
}

fn example2(s: &mut Suite, model: &WeylModel, tol: f64) {
    let model = model.clone();
    let root3 = 3f64.sqrt();
    let i = Complex64::i();
    let kappa0 = SQRT_2 / (root3 + 1.0);

    s.complex("m_at_i", Ok(model.m_at_i()), c(1.0 + 1.0 / SQRT_2, -0.5), tol);
    s.real("m_at_minus0", model.eval_m_minus0(), 1.0, tol);
    s.real("kappa0_extremal", kappa0_extremal(&model), kappa0, tol);

    let solution = max_entropy_accretive(&model);
    let h = solution.as_ref().map(|a| a.solution.h).map_err(Clone::clone);
    s.complex("h_max_entropy", h.clone().map(BoundaryParam::value), c(-1.0, root3 / 2.0), tol);
    s.real("a", kappa0_extremal(&model).map(|k| (1.0 - k) / (1.0 + k)), root3 - SQRT_2, tol);
    let mu1 = solution.as_ref().map(|a| a.mu1).map_err(Clone::clone);
    let mu2 = solution.as_ref().map(|a| a.mu2).map_err(Clone::clone);
    s.real("mu1", mu1.clone(), -(2.0 + root3) / 2.0, tol);
    s.real("mu2", mu2.clone(), (root3 - 2.0) / 2.0, tol);
    s.complex(
        "V_mu1_h(i)",
        h.clone().and_then(|h| impedance_at_i(&model, ExtReal::Finite(mu1?), h)),
        c(0.0, root3 - SQRT_2),
        tol,
    );
    s.complex(
        "V_mu2_h(i)",
        h.clone().and_then(|h| impedance_at_i(&model, ExtReal::Finite(mu2?), h)),
        c(0.0, root3 + SQRT_2),
        tol,
    );
    s.complex(
        "V_inf_h(i)",
        h.clone().and_then(|h| impedance_at_i(&model, ExtReal::Infinity, h)),
        (2.0f64 / 3.0).sqrt() + i / root3,
        tol,
    );
    s.real(
        "xi_inf_h",
        h.clone().and_then(|h| LSystem::new(&model, ExtReal::Infinity, h)?.quasi_kernel_xi()),
        -1.0,
        tol,
    );
    s.holds(
        "krein_von_neumann_inf_h",
        "true",
        h.and_then(|h| krein_von_neumann_check(&model, h, ExtReal::Infinity)).map(|b| (b.to_string(), b)),
    );
}

/// Shooting solver against the closed forms, relative error.
fn numerical(s: &mut Suite, opts: &VerifyOptions) {
    let tol = opts.numerical_tolerance;
    let params = SolverParams::default();
    let points = [c(0.0, 1.0), c(0.0, 2.0), c(0.5, 1.0), c(-1e-4, 0.0)];
    for (nu, label) in [(0.5, "nu=1/2"), (1.5, "nu=3/2")] {
        let exact = WeylModel::bessel(nu).expect("closed forms exist").shifted(opts.perturb_m);
        let solved = Potential::bessel(nu, 1.0).and_then(|p| WeylModel::numerical(p, params));
        for z in points {
            s.relative(
                &format!("{label} m({z})"),
                solved.as_ref().map_err(Clone::clone).and_then(|m| m.eval_m(z)),
                exact.eval_m(z).expect("closed forms are total"),
                tol,
            );
        }
        s.relative(
            &format!("{label} m(-0)"),
            solved.as_ref().map_err(Clone::clone).and_then(|m| m.eval_m_minus0()).map(Complex64::from),
            Complex64::from(exact.eval_m_minus0().expect("closed forms have m(-0)")),
            tol,
        );
    }
}
