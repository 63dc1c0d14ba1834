//! `pq-approx` command line: convergence, limit, identity, moment and profile
//! experiments.
//!
//! Exit codes: 0 success, 2 configuration/parse error, 3 numeric convergence
//! failure.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pq_approx::{FunctionSpec, OperatorKind, PqParams};
use pq_approx_cli::{
    king_default_grid, limit_reference, run_convergence, run_identity_suite, run_limit_comparison,
    run_moments, run_profile, ConfigError, ExperimentConfig, GridSpec, OutputFormat, OutputSpec,
    RunError,
};

#[derive(Parser)]
#[command(
    name = "pq-approx",
    version,
    about = "Experiments with (p,q)-Bernstein-Durrmeyer operators and (p,q)-special functions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

impl From<FormatArg> for OutputFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Json => OutputFormat::Json,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ConvergeOperator {
    Durrmeyer,
    Bernstein,
}

#[derive(Clone, Copy, ValueEnum)]
enum MomentOperator {
    Durrmeyer,
    King,
}

#[derive(Args)]
struct CommonArgs {
    /// Parameter p in (0, 1]
    #[arg(long)]
    p: f64,
    /// Parameter q in (0, p)
    #[arg(long)]
    q: f64,
    /// Operator orders, comma separated, strictly increasing (e.g. 5,10,15,100)
    #[arg(long, value_delimiter = ',')]
    n: Vec<u32>,
    /// Relative tolerance for series truncation, in (0, 1e-3]
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    /// Output format
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    /// Output path; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GridArgs {
    #[arg(long, default_value_t = 0.0)]
    grid_start: f64,
    /// Defaults to 1 (or the King interval end for `king`)
    #[arg(long)]
    grid_end: Option<f64>,
    #[arg(long, default_value_t = 201)]
    grid_points: usize,
}

#[derive(Args)]
struct FunctionArg {
    /// Function DSL: poly:<c0>,<c1>,... or builtin:<name> (quad, sinmix)
    #[arg(long)]
    f: String,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate operator(f, n, x) - f(x) across a grid for each n
    Converge {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        function: FunctionArg,
        #[arg(long, value_enum, default_value_t = ConvergeOperator::Durrmeyer)]
        operator: ConvergeOperator,
    },
    /// King-modified operator convergence on its stated interval
    King {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        function: FunctionArg,
    },
    /// Compare D_n f against the n -> infinity limit polynomial
    Limit {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        function: FunctionArg,
        /// Reference polynomial DSL; computed from the asymptotic moments
        /// when omitted
        #[arg(long, name = "ref")]
        reference: Option<String>,
    },
    /// Run the calculus/special-function identity suite
    Identities {
        #[arg(long)]
        p: f64,
        #[arg(long)]
        q: f64,
        /// Largest Beta/Gamma index exercised (<= 12)
        #[arg(long, default_value_t = 8)]
        max_index: u32,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
        format: FormatArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Closed-form moment tables per n
    Moments {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, value_enum, default_value_t = MomentOperator::Durrmeyer)]
        operator: MomentOperator,
    },
    /// Pointwise |D_n f - f| next to its modulus-of-continuity bound quantity
    Profile {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        function: FunctionArg,
        /// Grid size for the empirical moduli (>= 64)
        #[arg(long, default_value_t = 64)]
        modulus_grid: usize,
    },
}

fn parse_params(p: f64, q: f64) -> Result<PqParams, RunError> {
    PqParams::new(p, q).map_err(|e| ConfigError(e.to_string()).into())
}

fn parse_function(dsl: &str) -> Result<FunctionSpec, RunError> {
    dsl.parse::<FunctionSpec>()
        .map_err(|e| ConfigError(format!("--f {dsl:?}: {e}")).into())
}

fn build_config(
    operator: OperatorKind,
    common: &CommonArgs,
    grid: &GridArgs,
    dsl: &str,
) -> Result<ExperimentConfig, RunError> {
    let params = parse_params(common.p, common.q)?;
    let function = parse_function(dsl)?;
    let grid = GridSpec {
        start: grid.grid_start,
        end: match (grid.grid_end, operator) {
            (Some(end), _) => end,
            (None, OperatorKind::KingDurrmeyer) => {
                let smallest = *common.n.iter().min().ok_or_else(|| {
                    RunError::from(ConfigError("n list must not be empty".into()))
                })?;
                king_default_grid(smallest, params, grid.grid_points).end
            }
            (None, _) => 1.0,
        },
        points: grid.grid_points,
    };
    let output = OutputSpec {
        format: common.format.into(),
        path: common.out.as_ref().map(|p| p.display().to_string()),
    };
    ExperimentConfig::with_output(
        operator,
        params,
        common.n.clone(),
        function,
        grid,
        output,
        common.tol,
    )
    .map_err(RunError::from)
}

fn emit(common_out: &Option<PathBuf>, rendered: String, summary: Option<String>) -> ExitCode {
    match common_out {
        Some(path) => {
            if let Err(e) = fs::write(path, rendered) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
            if let Some(text) = summary {
                print!("{text}");
            }
        }
        None => {
            print!("{rendered}");
            if let Some(text) = summary {
                eprint!("{text}");
            }
        }
    }
    ExitCode::SUCCESS
}

fn fail(err: RunError) -> ExitCode {
    eprintln!("error: {err}");
    ExitCode::from(err.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Converge {
            common,
            grid,
            function,
            operator,
        } => {
            let kind = match operator {
                ConvergeOperator::Durrmeyer => OperatorKind::Durrmeyer,
                ConvergeOperator::Bernstein => OperatorKind::Bernstein,
            };
            let cfg = match build_config(kind, &common, &grid, &function.f) {
                Ok(cfg) => cfg,
                Err(e) => return fail(e),
            };
            match run_convergence(&cfg) {
                Ok(report) => {
                    let rendered = match common.format.into() {
                        OutputFormat::Csv => report.to_csv(),
                        OutputFormat::Json => report.to_json(),
                    };
                    emit(&common.out, rendered, Some(report.summary_text()))
                }
                Err(e) => fail(e),
            }
        }
        Command::King {
            common,
            grid,
            function,
        } => {
            let cfg = match build_config(OperatorKind::KingDurrmeyer, &common, &grid, &function.f) {
                Ok(cfg) => cfg,
                Err(e) => return fail(e),
            };
            match run_convergence(&cfg) {
                Ok(report) => {
                    let rendered = match common.format.into() {
                        OutputFormat::Csv => report.to_csv(),
                        OutputFormat::Json => report.to_json(),
                    };
                    emit(&common.out, rendered, Some(report.summary_text()))
                }
                Err(e) => fail(e),
            }
        }
        Command::Limit {
            common,
            grid,
            function,
            reference,
        } => {
            let cfg = match build_config(OperatorKind::Durrmeyer, &common, &grid, &function.f) {
                Ok(cfg) => cfg,
                Err(e) => return fail(e),
            };
            let reference = match reference {
                Some(dsl) => match parse_function(&dsl) {
                    Ok(f) => f,
                    Err(e) => return fail(e),
                },
                None => match limit_reference(&cfg.function, cfg.params) {
                    Ok(f) => f,
                    Err(e) => return fail(e.into()),
                },
            };
            match run_limit_comparison(&cfg, &reference) {
                Ok(report) => {
                    let rendered = match common.format.into() {
                        OutputFormat::Csv => report.to_csv(),
                        OutputFormat::Json => report.to_json(),
                    };
                    emit(&common.out, rendered, Some(report.summary_text()))
                }
                Err(e) => fail(e),
            }
        }
        Command::Identities {
            p,
            q,
            max_index,
            tol,
            format,
            out,
        } => {
            let params = match parse_params(p, q) {
                Ok(v) => v,
                Err(e) => return fail(e),
            };
            if max_index == 0 || max_index > 12 {
                return fail(
                    ConfigError(format!("max_index must be in 1..=12, got {max_index}")).into(),
                );
            }
            if tol.is_nan() || tol <= 0.0 {
                return fail(ConfigError(format!("tol must be positive, got {tol}")).into());
            }
            let report = run_identity_suite(params, max_index, tol);
            let rendered = match format.into() {
                OutputFormat::Csv => report.to_csv(),
                OutputFormat::Json => report.to_json(),
            };
            let summary = if report.all_passed() {
                "all identity checks passed\n".to_string()
            } else {
                "some identity checks FAILED\n".to_string()
            };
            emit(&out, rendered, Some(summary))
        }
        Command::Moments { common, operator } => {
            let params = match parse_params(common.p, common.q) {
                Ok(v) => v,
                Err(e) => return fail(e),
            };
            let kind = match operator {
                MomentOperator::Durrmeyer => OperatorKind::Durrmeyer,
                MomentOperator::King => OperatorKind::KingDurrmeyer,
            };
            match run_moments(params, &common.n, kind) {
                Ok(report) => {
                    let rendered = match common.format.into() {
                        OutputFormat::Csv => report.to_csv(),
                        OutputFormat::Json => report.to_json(),
                    };
                    emit(&common.out, rendered, None)
                }
                Err(e) => fail(e),
            }
        }
        Command::Profile {
            common,
            grid,
            function,
            modulus_grid,
        } => {
            let cfg = match build_config(OperatorKind::Durrmeyer, &common, &grid, &function.f) {
                Ok(cfg) => cfg,
                Err(e) => return fail(e),
            };
            if modulus_grid < 64 {
                return fail(
                    ConfigError(format!("modulus_grid must be >= 64, got {modulus_grid}")).into(),
                );
            }
            match run_profile(&cfg, modulus_grid) {
                Ok(report) => {
                    let rendered = match common.format.into() {
                        OutputFormat::Csv => report.to_csv(),
                        OutputFormat::Json => report.to_json(),
                    };
                    let summary = report.summary_text();
                    emit(&common.out, rendered, Some(summary))
                }
                Err(e) => fail(e),
            }
        }
    }
}
