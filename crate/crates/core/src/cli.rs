//! Command-line entry point. Exit codes: 0 success (all checks pass), 1 a check
//! failed, 2 invalid input.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::de::DeserializeOwned;

use crate::circle::{circle_profile, roots};
use crate::error::{invalid, Error, Result};
use crate::harness::{run_campaign_with_threads, sharpness_scan, CampaignConfig, CheckId, ScanFamily, SharpnessGrid};
use crate::json;
use crate::operators::{smirnov_combination, OperatorSpec};
use crate::poly::{Complex, Polynomial};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

/// Caps the number of campaign workers.
pub const THREADS_ENV: &str = "SMIRNOV_LAB_THREADS";

#[derive(Debug, Parser)]
#[command(name = "smirnov-lab", version, about = "Smirnov-type polynomial operators and inequality checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Apply an operator to a polynomial; with --R or --beta, the dilated combination.
    Apply {
        #[arg(long)]
        poly: PathBuf,
        #[arg(long)]
        op: PathBuf,
        #[arg(long = "R")]
        radius: Option<f64>,
        /// Complex number as `re,im`.
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        beta: Option<Complex>,
    },
    /// Run a verification campaign.
    Verify {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Max and min modulus on a circle.
    Maxmod {
        #[arg(long)]
        poly: PathBuf,
        #[arg(long)]
        radius: f64,
    },
    /// All roots with residuals and zero-location class.
    Roots {
        #[arg(long)]
        poly: PathBuf,
    },
    /// Extreme lhs/rhs ratios of a check over an extremal family.
    Sharpness {
        #[arg(long)]
        check: String,
        #[arg(long)]
        family: String,
        /// Grid file; the built-in grid when absent.
        #[arg(long)]
        grid: Option<PathBuf>,
    },
}

fn parse_complex(s: &str) -> std::result::Result<Complex, String> {
    let (re, im) = s.split_once(',').unwrap_or((s, "0"));
    let part = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("`{t}`: {e}"));
    let z = Complex::new(part(re)?, part(im)?);
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err("components must be finite".into())
    }
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

fn threads_from_env() -> Result<Option<usize>> {
    match std::env::var(THREADS_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(t) if t > 0 => Ok(Some(t)),
            _ => Err(invalid("SMIRNOV_LAB_THREADS", format!("`{v}` is not a positive integer"))),
        },
        Err(_) => Ok(None),
    }
}

/// Output text and exit code of a successfully parsed command.
fn execute(command: Command) -> Result<(String, i32)> {
    match command {
        Command::Apply { poly, op, radius, beta } => {
            let p: Polynomial = read_json(&poly)?;
            let spec: OperatorSpec = read_json(&op)?;
            spec.validate()?;
            let image = if radius.is_some() || beta.is_some() {
                let OperatorSpec::ModifiedSmirnov { a, n } = spec else {
                    return Err(invalid("op", "--R and --beta apply to modified_smirnov only"));
                };
                let radius = radius.unwrap_or(1.0);
                let beta = beta.unwrap_or_default();
                smirnov_combination(&p, a, beta, radius, n)?
            } else {
                spec.apply(&p)?
            };
            Ok((json::to_string(&image)?, EXIT_OK))
        }
        Command::Verify { config, out } => {
            let cfg: CampaignConfig = read_json(&config)?;
            let report = run_campaign_with_threads(&cfg, threads_from_env()?)?;
            let text = json::to_string(&report)?;
            let code = if report.all_passed { EXIT_OK } else { EXIT_FAILED };
            match out {
                Some(path) => {
                    fs::write(path, &text)?;
                    Ok((String::new(), code))
                }
                None => Ok((text, code)),
            }
        }
        Command::Maxmod { poly, radius } => {
            let p: Polynomial = read_json(&poly)?;
            Ok((json::to_string(&circle_profile(&p, radius)?)?, EXIT_OK))
        }
        Command::Roots { poly } => {
            let p: Polynomial = read_json(&poly)?;
            let zs = roots(&p)?;
            let code = if zs.converged { EXIT_OK } else { EXIT_FAILED };
            Ok((json::to_string(&zs)?, code))
        }
        Command::Sharpness { check, family, grid } => {
            let check: CheckId = check.parse()?;
            let family: ScanFamily = family.parse()?;
            let grid: SharpnessGrid = match grid {
                Some(path) => read_json(&path)?,
                None => SharpnessGrid::default(),
            };
            let report = sharpness_scan(check, family, &grid)?;
            let code = if report.all_passed { EXIT_OK } else { EXIT_FAILED };
            Ok((json::to_string(&report)?, code))
        }
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match execute(cli.command) {
        Ok((text, code)) => {
            if let Err(e) = stdout.write_all(text.as_bytes()) {
                let _ = writeln!(stderr, "error: {e}");
                return EXIT_INVALID;
            }
            if code == EXIT_FAILED {
                let _ = writeln!(stderr, "one or more checks failed");
            }
            code
        }
        Err(e) => {
            let what = match e {
                Error::Io(_) => "cannot read input",
                Error::Json(_) => "cannot parse input",
                _ => "invalid input",
            };
            let _ = writeln!(stderr, "error: {what}: {e}");
            EXIT_INVALID
        }
    }
}
