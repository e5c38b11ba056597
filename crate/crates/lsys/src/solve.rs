//! Dispatch of the dual c-entropy problems by (problem, regime), with the
//! witness system's report and self-verification attached.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::entropy::{
    dissipation_roots_extremal, dissipation_roots_sectorial, max_entropy_accretive, max_entropy_extremal,
    max_entropy_mk_inv_with_tol, max_entropy_mk_with_tol, max_entropy_sectorial, min_dissipation_extremal,
    min_dissipation_mk, min_dissipation_mk_inv, min_dissipation_sectorial, DissipationRoots, DualProblemSolution,
    Verification, BOUNDARY_TOL,
};
use crate::error::{Error, Result};
use crate::report::AnalysisReport;
use crate::weyl::WeylModel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Problem {
    MinDissipation,
    MaxEntropy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RegimeName {
    Mk,
    MkInv,
    Extremal,
    Sectorial,
    Accretive,
}

macro_rules! kebab_names {
    ($ty:ident { $($variant:ident => $name:literal),* $(,)? }) => {
        impl $ty {
            pub fn name(self) -> &'static str {
                match self { $($ty::$variant => $name),* }
            }
        }

        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.name())
            }
        }

        impl FromStr for $ty {
            type Err = Error;

            fn from_str(s: &str) -> Result<Self> {
                match s {
                    $($name => Ok($ty::$variant),)*
                    _ => Err(Error::Domain(format!("unknown {} {s:?}", stringify!($ty)))),
                }
            }
        }
    };
}

kebab_names!(Problem { MinDissipation => "min-dissipation", MaxEntropy => "max-entropy" });
kebab_names!(RegimeName {
    Mk => "mk",
    MkInv => "mk-inv",
    Extremal => "extremal",
    Sectorial => "sectorial",
    Accretive => "accretive",
});

/// One row of the solution table, as supplied on the command line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveRequest {
    pub problem: Problem,
    pub regime: RegimeName,
    pub beta: Option<f64>,
    pub entropy: Option<f64>,
    pub dissipation: Option<f64>,
    /// Width of the D = B band of the Donoghue max-entropy problems.
    pub boundary_tol: f64,
}

impl SolveRequest {
    pub fn new(problem: Problem, regime: RegimeName) -> Self {
        Self { problem, regime, beta: None, entropy: None, dissipation: None, boundary_tol: BOUNDARY_TOL }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Companions {
    pub mu1: f64,
    pub mu2: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveOutcome {
    pub problem: Problem,
    pub regime: RegimeName,
    pub solution: DualProblemSolution,
    /// Both roots of the minimal-dissipation quadratic, when there is one.
    pub roots: Option<DissipationRoots>,
    /// mu placing the impedance in M_kappa0 and M_kappa0^-1 (accretive regime).
    pub companions: Option<Companions>,
    /// Report of the system built with the witness mu.
    pub witness: AnalysisReport,
    pub verification: Verification,
}

fn require(value: Option<f64>, flag: &str, why: &str) -> Result<f64> {
    value.ok_or_else(|| Error::Domain(format!("{flag} is required {why}")))
}

fn forbid(value: Option<f64>, flag: &str, why: &str) -> Result<()> {
    match value {
        Some(_) => Err(Error::Domain(format!("{flag} is not accepted {why}"))),
        None => Ok(()),
    }
}

/// Checks flag consistency, then solves.
pub fn solve(model: &WeylModel, req: &SolveRequest) -> Result<SolveOutcome> {
    use Problem::*;
    use RegimeName::*;

    if req.regime == Sectorial {
        require(req.beta, "--beta", "for the sectorial regime")?;
    } else {
        forbid(req.beta, "--beta", "outside the sectorial regime")?;
    }
    match req.problem {
        MinDissipation => {
            require(req.entropy, "--entropy", "for min-dissipation")?;
            forbid(req.dissipation, "--dissipation", "for min-dissipation")?;
        }
        MaxEntropy => {
            forbid(req.entropy, "--entropy", "for max-entropy")?;
            if matches!(req.regime, Mk | MkInv) {
                require(req.dissipation, "--dissipation", "for max-entropy in the mk and mk-inv regimes")?;
            } else {
                forbid(req.dissipation, "--dissipation", "for max-entropy outside the mk and mk-inv regimes")?;
            }
        }
    }
    let beta = req.beta.unwrap_or(f64::NAN);
    let entropy = req.entropy.unwrap_or(f64::NAN);
    let dissipation = req.dissipation.unwrap_or(f64::NAN);

    let mut roots = None;
    let mut companions = None;
    let solution = match (req.problem, req.regime) {
        (MinDissipation, Mk) => min_dissipation_mk(model, entropy)?,
        (MinDissipation, MkInv) => min_dissipation_mk_inv(model, entropy)?,
        (MinDissipation, Extremal) => {
            roots = Some(dissipation_roots_extremal(model, entropy)?);
            min_dissipation_extremal(model, entropy)?
        }
        (MinDissipation, Sectorial) => {
            roots = Some(dissipation_roots_sectorial(model, beta, entropy)?);
            min_dissipation_sectorial(model, beta, entropy)?
        }
        (MinDissipation, Accretive) => {
            return Err(Error::Domain("min-dissipation has no accretive regime; use extremal or sectorial".into()))
        }
        (MaxEntropy, Mk) => max_entropy_mk_with_tol(model, dissipation, req.boundary_tol)?,
        (MaxEntropy, MkInv) => max_entropy_mk_inv_with_tol(model, dissipation, req.boundary_tol)?,
        (MaxEntropy, Extremal) => max_entropy_extremal(model)?,
        (MaxEntropy, Sectorial) => max_entropy_sectorial(model, beta)?,
        (MaxEntropy, Accretive) => {
            let acc = max_entropy_accretive(model)?;
            companions = Some(Companions { mu1: acc.mu1, mu2: acc.mu2 });
            acc.solution
        }
    };
    Ok(SolveOutcome {
        problem: req.problem,
        regime: req.regime,
        witness: AnalysisReport::build(model, solution.mu.witness(), solution.h)?,
        verification: solution.verify(model)?,
        solution,
        roots,
        companions,
    })
}
