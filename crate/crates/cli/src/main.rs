//! Command-line front end: subcommand routing and file I/O only, all
//! numerics delegated to the library.
//!
//! Exit codes: 0 on success (and on passing suites), 1 when a
//! falsification run or suite found a violation, 2 on parse/validation
//! errors (one-line diagnostic on stderr).

use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use nltrace_core::choquet::{choquet_trace, triangle_ratio, weighted_p_norm, WeightedPNorm};
use nltrace_core::fuzzy::{choquet_integral, is_comonotone, sugeno_integral, MonotoneMeasure, SimpleFunction};
use nltrace_core::harness::{falsify_triangle, run_suite, suite_ids, SuiteConfig};
use nltrace_core::spectral::{hermitian_eigenvalues, psd_eigenvalues, singular_values, ComplexMatrix, SpectrumDesc};
use nltrace_core::stepops::{
    choquet_spectral, choquet_stieltjes, lorentz_norm, max_type_value, partition_approx,
    sugeno_trace_step, StepOperator,
};
use nltrace_core::sugeno::{sugeno_metric, sugeno_trace, SugenoTrace};
use nltrace_core::weights::{ContinuousWeight, DiscreteWeight};

#[derive(Parser)]
#[command(name = "nltrace", about = "Non-linear traces of Choquet and Sugeno type", version)]
struct Cli {
    /// Write the JSON result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct MatrixArg {
    /// Matrix JSON (inline or a file path).
    #[arg(long)]
    matrix: String,
}

#[derive(Args)]
struct PairArg {
    /// Matrix JSON (inline or path); pass twice for the two operands.
    #[arg(long = "matrix", num_args = 1)]
    matrix: Vec<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Descending eigenvalues of a Hermitian matrix.
    Eig(MatrixArg),
    /// Descending singular values of a square matrix.
    Sv(MatrixArg),
    /// Choquet trace φ_α of a positive matrix (or an explicit spectrum).
    Choquet {
        #[arg(long, conflicts_with = "spectrum")]
        matrix: Option<String>,
        /// Descending spectrum as a JSON array, e.g. "[5,4,3,2]".
        #[arg(long)]
        spectrum: Option<String>,
        #[arg(long)]
        weight: String,
    },
    /// Weighted Schatten p-norm φ_α(|a|^p)^{1/p}.
    Pnorm {
        #[command(flatten)]
        matrix: MatrixArg,
        #[arg(long)]
        weight: String,
        #[arg(long)]
        p: f64,
    },
    /// Triangle ratio |||a+b||| / (|||a||| + |||b|||).
    Ratio {
        #[command(flatten)]
        pair: PairArg,
        #[arg(long)]
        weight: String,
        #[arg(long)]
        p: f64,
    },
    /// Sugeno trace ψ_α of a positive matrix.
    Sugeno {
        #[command(flatten)]
        matrix: MatrixArg,
        #[arg(long)]
        weight: String,
    },
    /// Metric d(a, b) = ψ_α(|a - b|) for a concave weight.
    Metric {
        #[command(flatten)]
        pair: PairArg,
        #[arg(long)]
        weight: String,
    },
    /// Traces on step operators.
    Stepop {
        #[command(subcommand)]
        op: StepopCommand,
    },
    /// Classical integrals over a monotone measure.
    Integrate {
        #[command(subcommand)]
        op: IntegrateCommand,
    },
    /// All-pairs comonotonicity test for two functions.
    Comonotone {
        /// Function JSON (inline or path); pass twice.
        #[arg(long = "function", num_args = 1)]
        function: Vec<String>,
    },
    /// Weight analysis.
    Weight {
        #[command(subcommand)]
        op: WeightCommand,
    },
    /// Triangle-inequality counterexample search.
    Falsify {
        #[arg(long)]
        weight: String,
        #[arg(long, default_value_t = 1.0)]
        p: f64,
        #[arg(long, value_delimiter = ',', default_value = "2,3,4,5,6,8")]
        dims: Vec<usize>,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, env = "NLTRACE_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Run one property suite by id.
    Suite {
        /// Suite id; see `suite list`.
        id: String,
        #[arg(long, env = "NLTRACE_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, value_delimiter = ',', default_value = "2,3,4,5,6,8")]
        dims: Vec<usize>,
        #[arg(long)]
        workers: Option<usize>,
    },
}

#[derive(Subcommand)]
enum StepopCommand {
    /// φ_α by the finite-spectrum formula.
    Choquet(StepopArgs),
    /// φ_α by the Stieltjes route ∫ λ_t dν_α.
    Stieltjes(StepopArgs),
    /// ψ_α by the sup-formula.
    Sugeno(StepopArgs),
    /// Partition upper sum with M cells (normalized model).
    Approx {
        #[command(flatten)]
        args: StepopArgs,
        /// Number of partition cells.
        #[arg(long)]
        m: u32,
    },
    /// Lorentz norm (concave weight).
    Lorentz(StepopArgs),
    /// ψ_α by the projection characterization.
    Maxtype(StepopArgs),
}

#[derive(Args)]
struct StepopArgs {
    /// Step operator JSON (inline or path).
    #[arg(long)]
    stepop: String,
    /// Continuous weight JSON (inline or path).
    #[arg(long)]
    weight: String,
}

#[derive(Subcommand)]
enum IntegrateCommand {
    Choquet(IntegrateArgs),
    Sugeno(IntegrateArgs),
}

#[derive(Args)]
struct IntegrateArgs {
    /// Monotone measure JSON (inline or path).
    #[arg(long)]
    measure: String,
    /// Function JSON (inline or path).
    #[arg(long)]
    function: String,
}

#[derive(Subcommand)]
enum WeightCommand {
    /// Concavity and doubling report.
    Check {
        #[arg(long)]
        weight: String,
        /// Scan bound for the doubling ratio.
        #[arg(long, default_value_t = 1_000_000)]
        horizon: u64,
    },
    /// List the registered suite ids.
    Suites,
}

fn fail(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

/// Inline JSON (starts with '{' or '[') or a file path.
fn load_text(spec: &str) -> Result<String, String> {
    let trimmed = spec.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        Ok(spec.to_string())
    } else {
        fs::read_to_string(spec).map_err(|e| format!("cannot read {spec}: {e}"))
    }
}

fn parse_json<T: serde::de::DeserializeOwned>(spec: &str, what: &str) -> Result<T, String> {
    let text = load_text(spec)?;
    serde_json::from_str(&text).map_err(|e| format!("bad {what} JSON: {e}"))
}

fn parse_matrix(spec: &str) -> Result<ComplexMatrix, String> {
    let m: ComplexMatrix = parse_json(spec, "matrix")?;
    m.validate().map_err(|e| e.to_string())?;
    Ok(m)
}

fn parse_discrete_weight(spec: &str) -> Result<DiscreteWeight, String> {
    let w: DiscreteWeight = parse_json(spec, "weight")?;
    w.validate().map_err(|e| e.to_string())?;
    Ok(w)
}

fn parse_continuous_weight(spec: &str) -> Result<ContinuousWeight, String> {
    let w: ContinuousWeight = parse_json(spec, "weight")?;
    w.validate().map_err(|e| e.to_string())?;
    Ok(w)
}

fn parse_step_operator(spec: &str) -> Result<StepOperator, String> {
    let op: StepOperator = parse_json(spec, "step operator")?;
    op.validate().map_err(|e| e.to_string())?;
    Ok(op)
}

fn parse_pair(pair: &PairArg) -> Result<(ComplexMatrix, ComplexMatrix), String> {
    if pair.matrix.len() != 2 {
        return Err(format!("expected --matrix twice, got {} occurrence(s)", pair.matrix.len()));
    }
    Ok((parse_matrix(&pair.matrix[0])?, parse_matrix(&pair.matrix[1])?))
}

fn emit(out: &Option<String>, value: &serde_json::Value) -> Result<(), String> {
    let text = serde_json::to_string(value).map_err(|e| e.to_string())?;
    match out {
        Some(path) => fs::write(path, text + "\n").map_err(|e| format!("cannot write {path}: {e}")),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode, String> {
    let value = match &cli.command {
        Command::Eig(arg) => {
            let m = parse_matrix(&arg.matrix)?;
            let eig = hermitian_eigenvalues(&m).map_err(|e| e.to_string())?;
            json!({ "eigenvalues": eig.values() })
        }
        Command::Sv(arg) => {
            let m = parse_matrix(&arg.matrix)?;
            let sv = singular_values(&m).map_err(|e| e.to_string())?;
            json!({ "singular_values": sv.values() })
        }
        Command::Choquet { matrix, spectrum, weight } => {
            let w = parse_discrete_weight(weight)?;
            let spec = match (matrix, spectrum) {
                (Some(m), None) => psd_eigenvalues(&parse_matrix(m)?).map_err(|e| e.to_string())?,
                (None, Some(s)) => {
                    let values: Vec<f64> = parse_json(s, "spectrum")?;
                    SpectrumDesc::new(values).map_err(|e| e.to_string())?
                }
                _ => return Err("choquet needs exactly one of --matrix or --spectrum".into()),
            };
            json!({ "value": choquet_trace(&spec, &w).map_err(|e| e.to_string())? })
        }
        Command::Pnorm { matrix, weight, p } => {
            let norm = WeightedPNorm::new(parse_discrete_weight(weight)?, *p).map_err(|e| e.to_string())?;
            let value = weighted_p_norm(&parse_matrix(&matrix.matrix)?, &norm).map_err(|e| e.to_string())?;
            json!({ "value": value })
        }
        Command::Ratio { pair, weight, p } => {
            let (a, b) = parse_pair(pair)?;
            let norm = WeightedPNorm::new(parse_discrete_weight(weight)?, *p).map_err(|e| e.to_string())?;
            json!({ "value": triangle_ratio(&a, &b, &norm).map_err(|e| e.to_string())? })
        }
        Command::Sugeno { matrix, weight } => {
            let st = SugenoTrace::new(parse_discrete_weight(weight)?).map_err(|e| e.to_string())?;
            let value = sugeno_trace(&parse_matrix(&matrix.matrix)?, &st).map_err(|e| e.to_string())?;
            json!({ "value": value })
        }
        Command::Metric { pair, weight } => {
            let (a, b) = parse_pair(pair)?;
            let st = SugenoTrace::new(parse_discrete_weight(weight)?).map_err(|e| e.to_string())?;
            json!({ "value": sugeno_metric(&a, &b, &st).map_err(|e| e.to_string())? })
        }
        Command::Stepop { op } => {
            let (args, value) = match op {
                StepopCommand::Choquet(args) => (args, None),
                StepopCommand::Stieltjes(args) => (args, None),
                StepopCommand::Sugeno(args) => (args, None),
                StepopCommand::Approx { args, m } => (args, Some(*m)),
                StepopCommand::Lorentz(args) => (args, None),
                StepopCommand::Maxtype(args) => (args, None),
            };
            let a = parse_step_operator(&args.stepop)?;
            let w = parse_continuous_weight(&args.weight)?;
            let result = match op {
                StepopCommand::Choquet(_) => choquet_spectral(&a, &w),
                StepopCommand::Stieltjes(_) => choquet_stieltjes(&a, &w),
                StepopCommand::Sugeno(_) => sugeno_trace_step(&a, &w),
                StepopCommand::Approx { .. } => partition_approx(&a, &w, value.unwrap()),
                StepopCommand::Lorentz(_) => lorentz_norm(&a, &w),
                StepopCommand::Maxtype(_) => max_type_value(&a, &w),
            };
            json!({ "value": result.map_err(|e| e.to_string())? })
        }
        Command::Integrate { op } => {
            let args = match op {
                IntegrateCommand::Choquet(args) | IntegrateCommand::Sugeno(args) => args,
            };
            let mu: MonotoneMeasure = parse_json(&load_text(&args.measure)?, "measure")?;
            let f: SimpleFunction = parse_json(&load_text(&args.function)?, "function")?;
            f.clone().f.iter().try_for_each(|v| {
                if *v < 0.0 || !v.is_finite() {
                    Err("function values must be finite and ≥ 0".to_string())
                } else {
                    Ok(())
                }
            })?;
            let value = match op {
                IntegrateCommand::Choquet(_) => choquet_integral(&f, &mu),
                IntegrateCommand::Sugeno(_) => sugeno_integral(&f, &mu),
            };
            json!({ "value": value.map_err(|e| e.to_string())? })
        }
        Command::Comonotone { function } => {
            if function.len() != 2 {
                return Err(format!("expected --function twice, got {}", function.len()));
            }
            let f: SimpleFunction = parse_json(&load_text(&function[0])?, "function")?;
            let g: SimpleFunction = parse_json(&load_text(&function[1])?, "function")?;
            json!({ "comonotone": is_comonotone(&f, &g).map_err(|e| e.to_string())? })
        }
        Command::Weight { op } => match op {
            WeightCommand::Check { weight, horizon } => {
                // the power kind parses as either family and both give the
                // same report; otherwise the kind picks the family
                match parse_discrete_weight(weight) {
                    Ok(w) => {
                        let sup = w.doubling_sup(*horizon).map_err(|e| e.to_string())?;
                        json!({ "concave": w.is_concave(*horizon), "doubling_sup": sup })
                    }
                    Err(_) => {
                        let w = parse_continuous_weight(weight)?;
                        let d = w.doubling_sup(*horizon as f64).map_err(|e| e.to_string())?;
                        json!({ "concave": w.is_concave(), "doubling_sup": d.sup })
                    }
                }
            }
            WeightCommand::Suites => json!({ "suites": suite_ids() }),
        },
        Command::Falsify { weight, p, dims, trials, seed, workers } => {
            let w = parse_discrete_weight(weight)?;
            let report =
                falsify_triangle(&w, *p, dims, *trials, *seed, *workers).map_err(|e| e.to_string())?;
            let code = if report.passed { ExitCode::SUCCESS } else { ExitCode::from(1) };
            emit(&cli.out, &serde_json::to_value(&report).map_err(|e| e.to_string())?)?;
            return Ok(code);
        }
        Command::Suite { id, seed, trials, dims, workers } => {
            let cfg = SuiteConfig {
                seed: *seed,
                trials: *trials,
                dims: dims.clone(),
                workers: *workers,
            };
            let report = run_suite(id, &cfg).map_err(|e| e.to_string())?;
            let code = if report.passed { ExitCode::SUCCESS } else { ExitCode::from(1) };
            emit(&cli.out, &serde_json::to_value(&report).map_err(|e| e.to_string())?)?;
            return Ok(code);
        }
    };
    emit(&cli.out, &value)?;
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(msg) => fail(msg),
    }
}
