//! Flag definitions and the mapping of each subcommand onto library calls.

use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use lsys::curve::{kappa_curve, CurveRegime};
use lsys::report::{error_json, rounded_json, AnalysisReport};
use lsys::solve::{solve, Problem, RegimeName, SolveRequest};
use lsys::verify::{verify_examples, CheckGroup, VerifyOptions, CLOSED_FORM_TOL, NUMERICAL_TOL};
use lsys::{BoundaryParam, Error, ExtReal, Potential, SolverParams, WeylModel};

/// Exit status of a domain error.
pub const EXIT_DOMAIN: u8 = 2;
/// Exit status of a failed example check.
pub const EXIT_CHECK_FAILED: u8 = 1;

#[derive(Debug, Parser)]
#[command(name = "lsys", version, about = "Schrödinger L-systems: c-entropy, classification and dual problems")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Full report of one L-system as JSON.
    Analyze(AnalyzeArgs),
    /// Solve a dual c-entropy problem; prints the solution as JSON.
    Solve(SolveArgs),
    /// kappa against Im h as CSV.
    Curve(CurveArgs),
    /// Re-derive every printed example value and report residuals.
    VerifyExamples(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelKind {
    Bessel,
}

#[derive(Debug, Args)]
pub struct ModelArgs {
    /// Potential family q(x) = (nu^2 - 1/4)/x^2 on [1, inf).
    #[arg(long, value_enum, default_value = "bessel", conflicts_with = "potential_file")]
    pub model: ModelKind,
    /// Order of the Bessel-type potential; closed forms exist for 0.5 and 1.5.
    #[arg(long, required_unless_present = "potential_file")]
    pub nu: Option<f64>,
    /// Table of "x q(x)" pairs; the first x is the left endpoint.
    #[arg(long, value_name = "PATH", conflicts_with = "nu")]
    pub potential_file: Option<PathBuf>,
    /// Use the shooting solver even when a closed form exists.
    #[arg(long)]
    pub numerical: bool,
}

impl ModelArgs {
    pub fn build(&self) -> Result<WeylModel, Error> {
        if let Some(path) = &self.potential_file {
            let text = fs::read_to_string(path)
                .map_err(|e| Error::InvalidPotential(format!("cannot read {}: {e}", path.display())))?;
            return WeylModel::numerical(Potential::parse_table(&text)?, SolverParams::default());
        }
        let nu = self.nu.expect("clap requires --nu without --potential-file");
        if self.numerical {
            WeylModel::numerical(Potential::bessel(nu, 1.0)?, SolverParams::default())
        } else {
            WeylModel::bessel(nu)
        }
    }
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, allow_negative_numbers = true)]
    pub h_re: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub h_im: f64,
    /// Finite state-space parameter.
    #[arg(long, allow_negative_numbers = true, required_unless_present = "mu_inf", conflicts_with = "mu_inf")]
    pub mu: Option<f64>,
    /// State-space parameter at infinity.
    #[arg(long)]
    pub mu_inf: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProblemArg {
    MinDissipation,
    MaxEntropy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RegimeArg {
    Mk,
    MkInv,
    Extremal,
    Sectorial,
    Accretive,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, value_enum)]
    pub problem: ProblemArg,
    #[arg(long, value_enum)]
    pub regime: RegimeArg,
    /// Sector half-angle in (0, pi/2), sectorial regime only.
    #[arg(long)]
    pub beta: Option<f64>,
    /// Target c-entropy S, min-dissipation only.
    #[arg(long)]
    pub entropy: Option<f64>,
    /// Dissipation coefficient D, max-entropy in the mk and mk-inv regimes.
    #[arg(long)]
    pub dissipation: Option<f64>,
    /// |D - B| <= tol (1 + B), with B = -Im m(i), counts as the infinite-entropy boundary.
    #[arg(long, default_value_t = 1e-8)]
    pub boundary_tol: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CurveRegimeArg {
    Extremal,
    Sectorial,
}

#[derive(Debug, Args)]
pub struct CurveArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, value_enum)]
    pub regime: CurveRegimeArg,
    #[arg(long, required_if_eq("regime", "sectorial"))]
    pub beta: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub h_im_min: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub h_im_max: f64,
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Run a single group: example1, example2 or numerical.
    #[arg(long, value_parser = parse_group)]
    pub only: Option<CheckGroup>,
    /// Tolerance of the closed-form checks.
    #[arg(long, env = "LSYS_TOLERANCE", default_value_t = CLOSED_FORM_TOL)]
    pub tolerance: f64,
    /// Relative tolerance of the numerical-solver checks.
    #[arg(long, default_value_t = NUMERICAL_TOL)]
    pub numerical_tolerance: f64,
    /// Add a real constant to the closed-form Weyl functions (negative control).
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
    pub perturb_m: f64,
    /// Print the report as JSON instead of one line per check.
    #[arg(long)]
    pub json: bool,
}

fn parse_group(s: &str) -> Result<CheckGroup, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Text for stdout and the exit status.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub stdout: String,
    pub code: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { stdout, code: 0 }
    }
}

fn pretty(value: &Value) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("JSON values print");
    text.push('\n');
    text
}

pub fn run(cli: Cli) -> Outcome {
    let result = match cli.command {
        Command::Analyze(args) => analyze(&args),
        Command::Solve(args) => solve_cmd(&args),
        Command::Curve(args) => curve(&args),
        Command::VerifyExamples(args) => return verify(&args),
    };
    result.unwrap_or_else(|err| Outcome { stdout: pretty(&error_json(&err)), code: EXIT_DOMAIN })
}

fn analyze(args: &AnalyzeArgs) -> Result<Outcome, Error> {
    let model = args.model.build()?;
    let h = BoundaryParam::from_parts(args.h_re, args.h_im)?;
    let mu = match args.mu {
        Some(mu) => ExtReal::Finite(mu),
        None => ExtReal::Infinity,
    };
    let report = AnalysisReport::build(&model, mu, h)?;
    Ok(Outcome::ok(pretty(&report.to_json())))
}

fn solve_cmd(args: &SolveArgs) -> Result<Outcome, Error> {
    let model = args.model.build()?;
    let problem = match args.problem {
        ProblemArg::MinDissipation => Problem::MinDissipation,
        ProblemArg::MaxEntropy => Problem::MaxEntropy,
    };
    let regime = match args.regime {
        RegimeArg::Mk => RegimeName::Mk,
        RegimeArg::MkInv => RegimeName::MkInv,
        RegimeArg::Extremal => RegimeName::Extremal,
        RegimeArg::Sectorial => RegimeName::Sectorial,
        RegimeArg::Accretive => RegimeName::Accretive,
    };
    let request = SolveRequest {
        beta: args.beta,
        entropy: args.entropy,
        dissipation: args.dissipation,
        boundary_tol: args.boundary_tol,
        ..SolveRequest::new(problem, regime)
    };
    let outcome = solve(&model, &request)?;
    Ok(Outcome::ok(pretty(&rounded_json(&outcome))))
}

fn curve(args: &CurveArgs) -> Result<Outcome, Error> {
    let model = args.model.build()?;
    let regime = match args.regime {
        CurveRegimeArg::Extremal => CurveRegime::Extremal,
        CurveRegimeArg::Sectorial => CurveRegime::Sectorial { beta: args.beta.expect("clap requires --beta") },
    };
    let data = kappa_curve(&model, regime, args.h_im_min, args.h_im_max, args.samples)?;
    Ok(Outcome::ok(data.to_csv()))
}

fn verify(args: &VerifyArgs) -> Outcome {
    let opts = VerifyOptions {
        tolerance: args.tolerance,
        numerical_tolerance: args.numerical_tolerance,
        perturb_m: args.perturb_m,
        only: args.only,
    };
    let report = verify_examples(&opts);
    let stdout = if args.json {
        pretty(&rounded_json(&report))
    } else {
        let mut text: String = report.checks.iter().map(|c| format!("{c}\n")).collect();
        let failed = report.failures().count();
        text.push_str(&format!("{} of {} checks passed\n", report.checks.len() - failed, report.checks.len()));
        for c in report.failures() {
            text.push_str(&format!("failed: {}/{}\n", c.group, c.name));
        }
        text
    };
    Outcome { stdout, code: if report.passed { 0 } else { EXIT_CHECK_FAILED } }
}
