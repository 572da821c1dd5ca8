use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use resolvent_split::solver::StopReason;
use resolvent_split::strengthening::ProbeVerdict;
use splitbench::spec::Method;
use splitbench::{emit_csv, fit_rate, parse_config, parse_csv, probe, run, BenchError};

/// Benchmark harness for resolvent-splitting runs described by plain-text
/// config files. RUST_LOG controls diagnostic verbosity.
#[derive(Parser)]
#[command(name = "splitbench", version, about)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a configured problem and optionally write the trace as CSV
    Solve {
        /// Problem description file
        #[arg(long)]
        config: PathBuf,
        /// Override the config's method
        #[arg(long, value_enum)]
        method: Option<MethodArg>,
        /// Trace output path (written atomically)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Gather existence evidence by iterating the composed reflector
    Probe {
        /// Problem description file
        #[arg(long)]
        config: PathBuf,
    },
    /// Fit a log-log slope to the error column of an emitted trace
    Rate {
        /// CSV written by `solve --out`
        #[arg(long = "in")]
        input: PathBuf,
        /// First iteration index of the window
        #[arg(long)]
        from: usize,
        /// Last iteration index of the window
        #[arg(long)]
        to: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Strengthened,
    Dr,
    Aamr,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Strengthened => Method::Strengthened,
            MethodArg::Dr => Method::DouglasRachford,
            MethodArg::Aamr => Method::Aamr,
        }
    }
}

const EXIT_OK: u8 = 0;
const EXIT_ERROR: u8 = 1;
const EXIT_DIVERGING: u8 = 2;

fn main() -> ExitCode {
    env_logger::init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version are successful outcomes; everything else is
            // a usage error.
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_ERROR,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

fn format_vector(v: &resolvent_split::Vector) -> String {
    v.iter()
        .map(f64::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn verdict_str(v: ProbeVerdict) -> &'static str {
    match v {
        ProbeVerdict::Bounded => "bounded",
        ProbeVerdict::Diverging => "diverging",
        ProbeVerdict::Inconclusive => "inconclusive",
    }
}

fn dispatch(cli: Cli) -> Result<u8, BenchError> {
    match cli.cmd {
        Cmd::Solve {
            config,
            method,
            out,
        } => {
            let mut spec = parse_config(&config)?;
            if let Some(m) = method {
                spec.method = m.into();
            }
            let result = run(&spec)?;
            println!("kind = {}", spec.kind.name());
            println!("method = {}", spec.method.name());
            println!(
                "stop = {}",
                match result.stop_reason {
                    StopReason::Converged => "converged",
                    StopReason::MaxIterations => "budget exhausted",
                }
            );
            println!("iterations = {}", result.iterations);
            println!("final residual = {}", result.final_residual);
            if let Some(err) = result.final_error {
                println!("final error = {err}");
            }
            if let Some(rate) = &result.fitted_rate {
                println!("fitted rate = {rate}");
            }
            if let Some(verdict) = result.probe_verdict {
                println!("probe verdict = {}", verdict_str(verdict));
            }
            println!("solution = {}", format_vector(&result.solution));
            if let Some(out) = out {
                emit_csv(&result.records, &out)?;
                println!("trace written to {}", out.display());
            }
            Ok(match result.probe_verdict {
                Some(ProbeVerdict::Diverging) => EXIT_DIVERGING,
                _ => EXIT_OK,
            })
        }
        Cmd::Probe { config } => {
            let spec = parse_config(&config)?;
            let report = probe(&spec)?;
            println!("verdict = {}", verdict_str(report.verdict));
            println!("iterations = {}", report.iterations);
            println!(
                "final norm = {}",
                report.norm_trace.last().expect("trace never empty")
            );
            Ok(match report.verdict {
                ProbeVerdict::Diverging => EXIT_DIVERGING,
                _ => EXIT_OK,
            })
        }
        Cmd::Rate { input, from, to } => {
            let records = parse_csv(&input)?;
            let ks: Vec<usize> = records.iter().map(|r| r.k).collect();
            let errors: Vec<f64> = records
                .iter()
                .map(|r| {
                    r.error.ok_or_else(|| {
                        BenchError::Fit(format!(
                            "row k = {} has no error value; rerun with a known solution",
                            r.k
                        ))
                    })
                })
                .collect::<Result<_, _>>()?;
            let fit = fit_rate(&ks, &errors, from, to)?;
            println!("window = [{from}, {to}]");
            println!("rate = {fit}");
            Ok(EXIT_OK)
        }
    }
}
