//! Command-line driver.
//!
//! Exit codes form the machine-readable contract:
//!
//! | code | meaning                                             |
//! |------|-----------------------------------------------------|
//! | 0    | success                                             |
//! | 1    | I/O failure, malformed document, or bad argument    |
//! | 2    | inadmissible or ill-formed material                 |
//! | 3    | shear modulus too small for the exponent (no root)  |
//! | 4    | solver failure (bracket, divergence, verification)  |
//! | 5    | parameters outside the separable regimes            |

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use sepelast::constitutive::ModelError;
use sepelast::dynamics::DynamicsError;
use sepelast::eigensolver::{CheckStatus, SolveError};
use sepelast::io::{self, IoError, LoadModelError, SolutionDoc};
use sepelast::motion::{MotionError, SeparableMotion};
use sepelast::{
    classify_regime, collapse_time, eigenvalue_solve, integrate, verify_solution, IntegrateOptions,
    MaterialModel, Regime, ShearFunction, SolveOptions,
};
use std::path::PathBuf;
use std::process::ExitCode;
use thiserror::Error;

#[derive(Debug, Error)]
enum CliError {
    #[error(transparent)]
    Io(#[from] IoError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Dynamics(#[from] DynamicsError),
    #[error(transparent)]
    Motion(#[from] MotionError),
    #[error("model is not admissible: {0}")]
    Inadmissible(String),
    #[error("solution verification failed: {0}")]
    VerifyFailed(String),
    #[error("{0}")]
    BadArgument(String),
}

impl From<LoadModelError> for CliError {
    fn from(e: LoadModelError) -> Self {
        match e {
            LoadModelError::Io(io) => CliError::Io(io),
            LoadModelError::Model(m) => CliError::Model(m),
        }
    }
}

fn model_exit_code(e: &ModelError) -> u8 {
    match e {
        ModelError::ShearTooSmall { .. } => 3,
        _ => 2,
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(_) | CliError::BadArgument(_) => 1,
            CliError::Model(e) => model_exit_code(e),
            CliError::Inadmissible(_) => 2,
            CliError::Solve(SolveError::Model(e)) => model_exit_code(e),
            CliError::Solve(SolveError::InvalidGrid { .. }) => 1,
            CliError::Solve(_) | CliError::VerifyFailed(_) => 4,
            CliError::Dynamics(e) => match e {
                DynamicsError::NonFinite { .. }
                | DynamicsError::NonPositiveAmplitude { .. }
                | DynamicsError::InvalidHorizon { .. } => 1,
                DynamicsError::NotSeparableRegime { .. }
                | DynamicsError::NotCollapseRegime { .. } => 5,
                _ => 4,
            },
            CliError::Motion(e) => match e {
                MotionError::Model(m) => model_exit_code(m),
                MotionError::RegimeMismatch { .. } => 5,
                MotionError::TimeOutOfRange { .. }
                | MotionError::RadiusOutOfRange { .. }
                | MotionError::NotUnitDirection { .. } => 1,
                _ => 4,
            },
        }
    }
}

#[derive(Parser)]
#[command(
    name = "sepelast",
    version,
    about = "Separable spherically symmetric motions of scale-invariant elastic balls"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a material model against the admissibility conditions.
    Validate(ValidateArgs),
    /// Solve the radial eigenvalue problem for a model.
    Eigen(EigenArgs),
    /// Integrate the amplitude equation and assemble the full motion.
    Simulate(SimulateArgs),
    /// Evaluate the closed-form collapse time for given (h, mu).
    CollapseTime(CollapseTimeArgs),
    /// Solve a family of models and tabulate eigenvalues and lifetimes.
    Sweep(SweepArgs),
}

#[derive(Args)]
struct ValidateArgs {
    /// Material model JSON file.
    #[arg(long)]
    model: PathBuf,
}

#[derive(Args)]
struct EigenArgs {
    /// Material model JSON file.
    #[arg(long)]
    model: PathBuf,
    /// Where to write the solution JSON (omit to print the summary only).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Radial grid intervals (even, at least 8).
    #[arg(long, default_value_t = 2048)]
    grid_n: usize,
    /// Fixed-point stopping tolerance.
    #[arg(long, default_value_t = 1e-12)]
    tol_picard: f64,
    /// Eigenvalue bisection width tolerance.
    #[arg(long, default_value_t = 1e-12)]
    tol_eps: f64,
    /// Run the a-posteriori verification checks after solving.
    #[arg(long)]
    verify: bool,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct SimulateArgs {
    /// Material model JSON file.
    #[arg(long)]
    model: PathBuf,
    /// Reuse a previously written solution JSON instead of solving again.
    /// The document must be consistent with the model.
    #[arg(long)]
    solution: Option<PathBuf>,
    /// Initial amplitude.
    #[arg(long, default_value_t = 1.0)]
    a0: f64,
    /// Initial amplitude rate.
    #[arg(long, default_value_t = 0.0)]
    adot0: f64,
    /// Time horizon of the integration.
    #[arg(long)]
    t_end: f64,
    /// Where to write the amplitude trajectory CSV.
    #[arg(long)]
    out: PathBuf,
    /// Optional space-time sample CSV of the assembled motion.
    #[arg(long)]
    motion_out: Option<PathBuf>,
    /// Optional solution JSON of the underlying eigenprofile.
    #[arg(long)]
    solution_out: Option<PathBuf>,
    /// Radial grid intervals for the eigenprofile solve.
    #[arg(long, default_value_t = 2048)]
    grid_n: usize,
    /// Relative tolerance of the time integrator.
    #[arg(long, default_value_t = 1e-10)]
    rtol: f64,
    /// Absolute tolerance of the time integrator.
    #[arg(long, default_value_t = 1e-12)]
    atol: f64,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct CollapseTimeArgs {
    /// Volumetric exponent (collapse needs h > 0).
    #[arg(long)]
    h: f64,
    /// Eigenvalue (collapse needs mu < 0).
    #[arg(long)]
    mu: f64,
    /// Initial amplitude.
    #[arg(long, default_value_t = 1.0)]
    a0: f64,
    /// Initial amplitude rate.
    #[arg(long, default_value_t = 0.0)]
    adot0: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SweepParam {
    /// Shear curvature of a quadratic profile.
    Beta,
    /// Volumetric exponent.
    H,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct SweepArgs {
    /// Material model JSON file providing the fixed parameters.
    #[arg(long)]
    model: PathBuf,
    /// Which parameter the sweep varies.
    #[arg(long, value_enum)]
    param: SweepParam,
    /// Comma-separated parameter values.
    #[arg(
        long,
        value_delimiter = ',',
        required = true,
        allow_hyphen_values = true
    )]
    values: Vec<f64>,
    /// Where to write the sweep CSV.
    #[arg(long)]
    out: PathBuf,
    /// Initial amplitude used for lifetimes.
    #[arg(long, default_value_t = 1.0)]
    a0: f64,
    /// Initial amplitude rate used for lifetimes.
    #[arg(long, default_value_t = 0.0)]
    adot0: f64,
    /// Radial grid intervals for each eigenprofile solve.
    #[arg(long, default_value_t = 1024)]
    grid_n: usize,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Validate(args) => cmd_validate(args),
        Command::Eigen(args) => cmd_eigen(args),
        Command::Simulate(args) => cmd_simulate(args),
        Command::CollapseTime(args) => cmd_collapse_time(args),
        Command::Sweep(args) => cmd_sweep(args),
    }
}

fn cmd_validate(args: ValidateArgs) -> Result<(), CliError> {
    let model = io::load_model(&args.model)?;
    let report = model.validate();
    for check in &report.checks {
        println!(
            "[{}] {} — {}",
            if check.passed { "PASS" } else { "FAIL" },
            check.name,
            check.detail
        );
    }
    println!("kappa = {}", io::format_float(report.kappa));
    println!("beta = {}", io::format_float(report.beta));
    println!("delta = {}", io::format_float(report.delta));
    println!(
        "moduli: compression = {}, shear = {}",
        io::format_float(report.moduli.0),
        io::format_float(report.moduli.1)
    );
    println!(
        "smallest admissible M = {}",
        io::format_float(report.smallest_admissible_m)
    );
    if report.is_admissible() {
        println!("admissible: yes");
        Ok(())
    } else {
        println!("admissible: no");
        Err(CliError::Inadmissible(
            report
                .first_failure()
                .map(|c| c.name.to_string())
                .unwrap_or_else(|| "unknown check".into()),
        ))
    }
}

fn solve_options(grid_n: usize, tol_picard: f64, tol_eps: f64) -> SolveOptions {
    SolveOptions {
        grid_n,
        tol_picard,
        tol_eps,
        ..Default::default()
    }
}

fn cmd_eigen(args: EigenArgs) -> Result<(), CliError> {
    let model = io::load_model(&args.model)?;
    let opts = solve_options(args.grid_n, args.tol_picard, args.tol_eps);
    let solution = eigenvalue_solve(&model, &opts)?;
    println!("epsilon = {}", io::format_float(solution.epsilon));
    println!("mu = {}", io::format_float(solution.mu));
    println!("u0 = {}", io::format_float(solution.u0));
    println!("u_boundary = {}", io::format_float(solution.u_boundary));
    println!(
        "boundary_gap = {}",
        io::format_float(solution.boundary_gap(&model))
    );
    println!("residual_sup = {}", io::format_float(solution.residual_sup));
    println!(
        "contraction_rate = {}",
        io::format_float(solution.contraction_rate)
    );
    println!("iterations = {}", solution.iterations);
    if let Some(path) = &args.out {
        let doc = SolutionDoc::from_solution(&model, &solution);
        io::write_json(path, &doc)?;
        println!("wrote {}", path.display());
    }
    if args.verify {
        let report = verify_solution(&solution, &model);
        let mut first_failure = None;
        for check in &report.checks {
            let tag = match check.status {
                CheckStatus::Pass => "PASS",
                CheckStatus::Fail => "FAIL",
                CheckStatus::Inapplicable => "N/A ",
            };
            println!("[{tag}] {} — {}", check.name, check.detail);
            if check.status == CheckStatus::Fail && first_failure.is_none() {
                first_failure = Some(check.name);
            }
        }
        if let Some(name) = first_failure {
            return Err(CliError::VerifyFailed(name.into()));
        }
    }
    Ok(())
}

fn cmd_simulate(args: SimulateArgs) -> Result<(), CliError> {
    let model = io::load_model(&args.model)?;
    let solution = match &args.solution {
        Some(path) => {
            let doc: SolutionDoc = io::read_json(path)?;
            doc.into_solution(&model)?
        }
        None => {
            let opts = solve_options(args.grid_n, 1e-12, 1e-12);
            eigenvalue_solve(&model, &opts)?
        }
    };
    let integrate_opts = IntegrateOptions {
        rtol: args.rtol,
        atol: args.atol,
        ..Default::default()
    };
    let trajectory = integrate(
        model.h(),
        solution.mu,
        args.a0,
        args.adot0,
        args.t_end,
        &integrate_opts,
    )?;

    println!("regime = {}", trajectory.regime);
    println!("mu = {}", io::format_float(solution.mu));
    println!(
        "energy_drift = {}",
        io::format_float(trajectory.energy_drift())
    );
    match trajectory.tau {
        Some(tau) => println!("tau = {}", io::format_float(tau)),
        None if trajectory.regime == Regime::Expansion => {
            println!(
                "expansion_gap = {}",
                io::format_float(trajectory.expansion_gap())
            );
        }
        None => println!("tau = not reached within t_end"),
    }

    if let Some(path) = &args.solution_out {
        let doc = SolutionDoc::from_solution(&model, &solution);
        io::write_json(path, &doc)?;
        println!("wrote {}", path.display());
    }

    let phi1 = solution.profile.phi_boundary();
    let motion = SeparableMotion::assemble(model, solution, trajectory)?;
    println!(
        "boundary_stress_residual = {}",
        io::format_float(motion.boundary_stress_residual())
    );

    let csv = io::trajectory_csv(motion.trajectory(), Some(phi1));
    std::fs::write(&args.out, csv).map_err(|source| IoError::Write {
        path: args.out.display().to_string(),
        source,
    })?;
    println!("wrote {}", args.out.display());

    if let Some(path) = &args.motion_out {
        let t_max = motion.t_max();
        let times: Vec<f64> = (0..=32).map(|k| t_max * k as f64 / 32.0).collect();
        let radii = [0.0, 0.25, 0.5, 0.75, 1.0];
        let csv = io::motion_csv(&motion, &times, &radii)?;
        std::fs::write(path, csv).map_err(|source| IoError::Write {
            path: path.display().to_string(),
            source,
        })?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn cmd_collapse_time(args: CollapseTimeArgs) -> Result<(), CliError> {
    let tau = collapse_time(args.h, args.mu, args.a0, args.adot0)?;
    println!("tau = {}", io::format_float(tau));
    Ok(())
}

fn cmd_sweep(args: SweepArgs) -> Result<(), CliError> {
    let base = io::load_model(&args.model)?;
    if args.param == SweepParam::Beta && !matches!(base.shear(), ShearFunction::Quadratic { .. }) {
        return Err(CliError::BadArgument(
            "--param beta requires a quadratic shear profile".into(),
        ));
    }
    if args.values.is_empty() {
        return Err(CliError::BadArgument("--values must not be empty".into()));
    }

    let opts = solve_options(args.grid_n, 1e-12, 1e-12);
    let mut csv = String::from("param,beta,mu,u1,regime,tau_or_asymptote,status\n");
    for &value in &args.values {
        let row = sweep_row(&base, args.param, value, args.a0, args.adot0, &opts);
        csv.push_str(&row);
        csv.push('\n');
    }
    std::fs::write(&args.out, &csv).map_err(|source| IoError::Write {
        path: args.out.display().to_string(),
        source,
    })?;
    println!("wrote {} rows to {}", args.values.len(), args.out.display());
    Ok(())
}

/// One sweep row; solver failures become a `skipped(…)` status instead of
/// aborting the whole sweep.
fn sweep_row(
    base: &MaterialModel,
    param: SweepParam,
    value: f64,
    a0: f64,
    adot0: f64,
    opts: &SolveOptions,
) -> String {
    let skipped = |beta: Option<f64>, reason: &str| {
        let sanitized: String = reason
            .chars()
            .map(|c| if c == ',' || c == '\n' { ';' } else { c })
            .collect();
        format!(
            "{},{},nan,nan,-,nan,skipped({sanitized})",
            io::format_float(value),
            beta.map(io::format_float).unwrap_or_else(|| "nan".into()),
        )
    };

    let built = match param {
        SweepParam::Beta => MaterialModel::quadratic(base.h(), value, base.m_bound()),
        SweepParam::H => MaterialModel::new(value, base.shear().clone(), base.m_bound()),
    };
    let model = match built {
        Ok(m) => m,
        Err(e) => return skipped(None, &e.to_string()),
    };
    let beta = model.beta();

    let solution = match eigenvalue_solve(&model, opts) {
        Ok(s) => s,
        Err(e) => return skipped(Some(beta), &e.to_string()),
    };
    let mu = solution.mu;
    let regime = match classify_regime(model.h(), mu) {
        Ok(r) => r,
        Err(e) => return skipped(Some(beta), &e.to_string()),
    };
    let lifetime = match regime {
        Regime::Collapse => match collapse_time(model.h(), mu, a0, adot0) {
            Ok(tau) => tau,
            Err(e) => return skipped(Some(beta), &e.to_string()),
        },
        Regime::Expansion => {
            let e0 = 0.5 * adot0 * adot0 - mu / model.h() * a0.powf(model.h());
            (2.0 * e0).max(0.0).sqrt()
        }
    };
    format!(
        "{},{},{},{},{},{},ok",
        io::format_float(value),
        io::format_float(beta),
        io::format_float(mu),
        io::format_float(solution.u_boundary),
        regime,
        io::format_float(lifetime),
    )
}
