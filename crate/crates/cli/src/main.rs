//! `talbot-gauss`: tables of `s`, phase sequences, self-checks, illuminator
//! design and envelope propagation from the command line.
//!
//! Exit codes: 0 success, 1 a check failed, 2 bad arguments or input,
//! 3 the envelope grid does not fit the order.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use talbot_gauss_core::io;
use talbot_gauss_core::numtheory::gcd;
use talbot_gauss_core::tai::{check_concentration, tai_forward, tai_spectrum};
use talbot_gauss_core::talbot_field::{compare, propagate, reconstruct_fractional};
use talbot_gauss_core::verify::{run_all, Report, Suite};
use talbot_gauss_core::{
    s_table, spectral_weights, tai_phases, talbot_phases, Error, Int, PeriodicEnvelope, Sign, TalbotOrder,
};

const THREADS_VAR: &str = "TALBOT_GAUSS_THREADS";

#[derive(Parser)]
#[command(name = "talbot-gauss", version, about = "Gauss sums of the fractional Talbot effect")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Table of s over q in [2, qmax] and p in [1, pmax].
    STable {
        #[arg(long)]
        qmax: Int,
        /// Defaults to qmax - 1.
        #[arg(long)]
        pmax: Option<Int>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Phases x_n (or the weights X_m) of one order.
    Phases {
        p: Option<Int>,
        q: Option<Int>,
        /// Order as a fraction; reduced to lowest terms.
        #[arg(long, conflicts_with_all = ["p", "q"])]
        order: Option<String>,
        #[arg(long, default_value = "+1", allow_hyphen_values = true, value_parser = parse_sign)]
        sign: Sign,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Emit X_m instead of x_n.
        #[arg(long)]
        spectral: bool,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run self-check suites: s, dft, autocorr, appendixB, props, tai or all.
    Verify {
        suite: String,
        #[arg(long, default_value_t = 32)]
        qmax: Int,
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
        /// Print reports as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Illuminator levels for one order, checked by a forward run.
    Tai {
        p: Int,
        q: Int,
        #[arg(long, default_value = "+1", allow_hyphen_values = true, value_parser = parse_sign)]
        sign: Sign,
        #[arg(long, default_value_t = 16)]
        samples_per_bin: usize,
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
        /// Also write design.json, trace.csv and spectrum.csv here.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Propagate a sampled envelope to a fractional Talbot plane.
    Simulate {
        input: PathBuf,
        p: Option<Int>,
        q: Option<Int>,
        #[arg(long, conflicts_with_all = ["p", "q"])]
        order: Option<String>,
        #[arg(long, default_value = "+1", allow_hyphen_values = true, value_parser = parse_sign)]
        sign: Sign,
        #[arg(long, value_enum, default_value_t = Mode::Propagate)]
        mode: Mode,
        /// Defaults to the input's directory.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Write a rectangular cell envelope (CSV plus sidecar).
    Cell {
        #[arg(long)]
        samples: usize,
        #[arg(long)]
        width: usize,
        #[arg(long, default_value_t = 0)]
        start: usize,
        #[arg(long, default_value_t = 1.0)]
        period: f64,
        #[arg(long)]
        output: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Mode {
    Propagate,
    Reconstruct,
    Both,
}

enum Failure {
    Core(Error),
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Core(e.into())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Core(e.into())
    }
}

type Outcome = Result<(), Failure>;

fn parse_sign(s: &str) -> Result<Sign, String> {
    match s {
        "+1" | "1" | "+" | "plus" => Ok(Sign::Plus),
        "-1" | "-" | "minus" => Ok(Sign::Minus),
        _ => Err(format!("expected +1 or -1, got {s:?}")),
    }
}

/// Parses `p/q`, reducing to lowest terms.
fn parse_fraction(text: &str) -> Result<(Int, Int), Failure> {
    let bad = || Failure::Usage(format!("order {text:?} is not of the form p/q"));
    let (a, b) = text.split_once('/').ok_or_else(bad)?;
    let p: Int = a.trim().parse().map_err(|_| bad())?;
    let q: Int = b.trim().parse().map_err(|_| bad())?;
    if p < 1 || q < 1 {
        return Err(Failure::Usage(format!("order {text}: p and q must be positive")));
    }
    let g = gcd(p, q)?;
    if g != 1 {
        eprintln!("order {p}/{q} reduced to {}/{}", p / g, q / g);
    }
    Ok((p / g, q / g))
}

fn resolve_order(p: Option<Int>, q: Option<Int>, order: Option<&str>, sign: Sign) -> Result<TalbotOrder, Failure> {
    let (p, q) = match (p, q, order) {
        (Some(p), Some(q), None) => (p, q),
        (None, None, Some(text)) => parse_fraction(text)?,
        _ => return Err(Failure::Usage("give the order as `P Q` or `--order p/q`".into())),
    };
    Ok(TalbotOrder::new(p, q, sign)?)
}

fn emit(text: &str, output: Option<&Path>) -> Outcome {
    match output {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn with_newline(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::STable { qmax, pmax, format, output } => {
            let table = s_table(qmax, pmax.unwrap_or((qmax - 1).max(1)))?;
            let text = match format {
                Format::Csv => table.to_csv()?,
                Format::Json => with_newline(table.to_json()?),
            };
            emit(&text, output.as_deref())
        }
        Command::Phases { p, q, order, sign, format, spectral, output } => {
            let o = resolve_order(p, q, order.as_deref(), sign)?;
            let seq = if spectral { spectral_weights(&o)? } else { talbot_phases(&o)? };
            let text = match format {
                Format::Csv => io::phases_to_csv(&seq)?,
                Format::Json => with_newline(io::phases_to_json(&seq)?),
            };
            emit(&text, output.as_deref())
        }
        Command::Verify { suite, qmax, tolerance, json } => {
            let reports: Vec<Report> = if suite.eq_ignore_ascii_case("all") {
                run_all(qmax, tolerance)?
            } else {
                let suite: Suite = suite.parse().map_err(|e: Error| Failure::Usage(e.to_string()))?;
                vec![suite.run(qmax, tolerance)?]
            };
            if json {
                println!("{}", serde_json::to_string_pretty(&reports)?);
            } else {
                for r in &reports {
                    println!("{r}");
                }
            }
            let failed: Vec<_> = reports.iter().filter(|r| !r.passed()).map(|r| r.suite.as_str()).collect();
            if failed.is_empty() {
                Ok(())
            } else {
                Err(Failure::Check(format!("failed suites: {}", failed.join(", "))))
            }
        }
        Command::Tai { p, q, sign, samples_per_bin, tolerance, out_dir } => {
            let o = TalbotOrder::new(p, q, sign)?;
            let design = tai_phases(&o)?;
            let out = tai_forward(&design, samples_per_bin)?;
            let report = check_concentration(&design, &out, samples_per_bin, tolerance)?;
            let design_json = with_newline(io::tai_design_to_json(&design)?);
            if let Some(dir) = out_dir {
                fs::create_dir_all(&dir)?;
                fs::write(dir.join("design.json"), &design_json)?;
                fs::write(dir.join("trace.csv"), io::trace_to_csv(&out)?)?;
                let spectrum = tai_spectrum(&design, out.len())?;
                fs::write(dir.join("spectrum.csv"), io::spectrum_to_csv(&spectrum)?)?;
            }
            print!("{design_json}");
            let verdict = if report.pass { "PASS" } else { "FAIL" };
            eprintln!(
                "{verdict} tai {o}: bright bin {}, center error {:.3e}, dark max {:.3e}, peak power gain {:.6}",
                report.bright_bin, report.center_error, report.dark_max, report.power_gain
            );
            if report.pass {
                Ok(())
            } else {
                Err(Failure::Check(format!("order {o} does not concentrate")))
            }
        }
        Command::Simulate { input, p, q, order, sign, mode, out_dir } => {
            let o = resolve_order(p, q, order.as_deref(), sign)?;
            let cell = io::read_envelope(&input)?;
            let dir = out_dir.unwrap_or_else(|| input.parent().map(Path::to_path_buf).unwrap_or_default());
            if !dir.as_os_str().is_empty() {
                fs::create_dir_all(&dir)?;
            }
            let reconstructed = match mode {
                Mode::Propagate => None,
                _ => Some(reconstruct_fractional(&cell, &o)?),
            };
            let propagated = (mode != Mode::Reconstruct).then(|| propagate(&cell, &o));
            if o.shifted() {
                eprintln!("p·q is odd: output delayed by half a period");
            }
            if let Some(env) = &propagated {
                io::write_envelope(&dir.join("propagated.csv"), env)?;
            }
            if let Some(env) = &reconstructed {
                io::write_envelope(&dir.join("reconstructed.csv"), env)?;
            }
            if let (Some(a), Some(b)) = (&propagated, &reconstructed) {
                println!("{}", serde_json::to_string_pretty(&compare(a, b)?)?);
            }
            Ok(())
        }
        Command::Cell { samples, width, start, period, output } => {
            if width > samples {
                return Err(Failure::Usage(format!("width {width} exceeds {samples} samples")));
            }
            let env = PeriodicEnvelope::rect(period, samples, start, width)?;
            io::write_envelope(&output, &env)?;
            Ok(())
        }
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var(THREADS_VAR).ok().and_then(|v| v.parse::<usize>().ok()) {
        // Only fails if a pool already exists, which cannot happen here.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Grid(_) => 3,
                _ => 2,
            })
        }
    }
}
