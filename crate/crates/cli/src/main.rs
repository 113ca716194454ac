use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use k3clifford::classifier::classify;
use k3clifford::par::Execution;
use k3clifford::{Error, Int, Regime, SurfaceParams};
use k3clifford_cli::document::witness_documents;
use k3clifford_cli::output::{write_documents, write_value, write_witnesses};
use k3clifford_cli::scan::run_scan;
use k3clifford_cli::{certify, CertifyOptions, Format, GridMode, ScanConfig};

const EXIT_FAILED: u8 = 1;
const EXIT_PRECONDITION: u8 = 2;

#[derive(Parser)]
#[command(
    name = "k3clifford",
    version,
    about = "Certify Clifford-index bounds for curves on K3 surfaces of Picard rank two"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full pipeline for one (g, s).
    Certify {
        #[command(flatten)]
        point: Point,
        #[arg(long, value_enum, default_value_t = RegimeArg::Theorem)]
        regime: RegimeArg,
        #[command(flatten)]
        common: Common,
    },
    /// Certify every cell of a parameter grid.
    Scan {
        /// Inclusive range of s, e.g. -1:25.
        #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
        s_range: (Int, Int),
        /// Inclusive range of g - 2s, e.g. 14:60.
        #[arg(long, value_parser = parse_range, allow_hyphen_values = true, conflicts_with = "g_range", required_unless_present = "g_range")]
        g_rel: Option<(Int, Int)>,
        /// Inclusive absolute range of g.
        #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
        g_range: Option<(Int, Int)>,
        #[arg(long, value_enum, default_value_t = RegimeArg::Theorem)]
        regime: RegimeArg,
        /// Emit only the cells that survive the fixed-component filter.
        #[arg(long)]
        exceptional_only: bool,
        #[command(flatten)]
        common: Common,
    },
    /// List the (-2)-classes and isotropic classes of low degree.
    Classify {
        #[command(flatten)]
        point: Point,
        #[arg(long, value_enum, default_value_t = RegimeArg::Base)]
        regime: RegimeArg,
        #[command(flatten)]
        common: Common,
    },
    /// Certify the two genus witnesses for a rank-two gonality value.
    Witness {
        #[arg(long, allow_hyphen_values = true)]
        gamma: Int,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args)]
struct Point {
    #[arg(long, allow_hyphen_values = true)]
    g: Int,
    #[arg(long, allow_hyphen_values = true)]
    s: Int,
}

#[derive(Args)]
struct Common {
    #[arg(long, value_enum, default_value_t = Format::Jsonl)]
    format: Format,
    /// Falsifier window for the ampleness scan.
    #[arg(long)]
    window: Option<Int>,
    /// Leave out the generation timestamp.
    #[arg(long)]
    no_timestamp: bool,
    /// Write output to a file in this directory instead of stdout.
    #[arg(long, env = "K3CLIFFORD_OUTPUT_DIR")]
    output_dir: Option<PathBuf>,
}

impl Common {
    fn options(&self) -> CertifyOptions {
        CertifyOptions {
            window: self.window,
            timestamp: !self.no_timestamp,
        }
    }

    fn sink(&self, stem: &str) -> io::Result<Box<dyn Write>> {
        match &self.output_dir {
            Some(dir) => {
                fs::create_dir_all(dir)?;
                let path = dir.join(format!("{stem}.{}", self.format.extension()));
                eprintln!("writing {}", path.display());
                Ok(Box::new(BufWriter::new(File::create(path)?)))
            }
            None => Ok(Box::new(BufWriter::new(io::stdout().lock()))),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum RegimeArg {
    Base,
    Theorem,
}

impl From<RegimeArg> for Regime {
    fn from(r: RegimeArg) -> Self {
        match r {
            RegimeArg::Base => Regime::Base,
            RegimeArg::Theorem => Regime::Theorem,
        }
    }
}

fn parse_range(s: &str) -> Result<(Int, Int), String> {
    let (a, b) = s
        .split_once(':')
        .ok_or_else(|| format!("expected A:B, got {s:?}"))?;
    let lo = a.trim().parse().map_err(|e| format!("{a:?}: {e}"))?;
    let hi = b.trim().parse().map_err(|e| format!("{b:?}: {e}"))?;
    Ok((lo, hi))
}

#[derive(Debug)]
enum Failure {
    Precondition(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::RegimeViolation(_)
            | Error::GammaTooSmall(_)
            | Error::ParamsOutOfRange { .. } => Failure::Precondition(e.to_string()),
            other => Failure::Internal(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Internal(e.to_string())
    }
}

fn check_window(common: &Common) -> Result<(), Failure> {
    match common.window {
        Some(w) if w < 1 => Err(Failure::Precondition(format!(
            "window must be ≥ 1, got {w}"
        ))),
        _ => Ok(()),
    }
}

/// Returns whether every verdict passed.
fn run(command: Command) -> Result<bool, Failure> {
    match command {
        Command::Certify {
            point,
            regime,
            common,
        } => {
            check_window(&common)?;
            let p = SurfaceParams::new(point.g, point.s, regime.into())?;
            let doc = certify(&p, common.options())?;
            let mut out = common.sink(&format!("certify-g{}-s{}", p.g, p.s))?;
            write_documents(common.format, std::slice::from_ref(&doc), &mut out)?;
            out.flush()?;
            for check in doc.checks.iter().filter(|c| !c.passed) {
                eprintln!("check failed: {}", check.name);
            }
            Ok(doc.passed)
        }
        Command::Scan {
            s_range,
            g_rel,
            g_range,
            regime,
            exceptional_only,
            common,
        } => {
            let g_mode = match (g_rel, g_range) {
                (Some((a, b)), _) => GridMode::RelativeToS(a, b),
                (None, Some((a, b))) => GridMode::Absolute(a, b),
                (None, None) => unreachable!("clap requires one of --g-rel/--g-range"),
            };
            let config = ScanConfig {
                s_range,
                g_mode,
                regime: regime.into(),
                window_override: common.window,
                exceptional_only,
                timestamp: !common.no_timestamp,
            };
            config.validate().map_err(Failure::Precondition)?;
            let outcome = run_scan(&config, Execution::default());
            let mut out = common.sink("scan")?;
            write_documents(common.format, &outcome.documents, &mut out)?;
            out.flush()?;
            eprintln!("{}", outcome.summary);
            if let Some(((g, s), e)) = outcome.error {
                return Err(Failure::Internal(format!("aborted at g={g} s={s}: {e}")));
            }
            Ok(outcome.summary.failed == 0)
        }
        Command::Classify {
            point,
            regime,
            common,
        } => {
            let p = SurfaceParams::new(point.g, point.s, regime.into())?;
            let report = classify(&p)?;
            let mut out = common.sink(&format!("classify-g{}-s{}", p.g, p.s))?;
            write_value(common.format, &report, &mut out)?;
            out.flush()?;
            Ok(report.minus_two_agree)
        }
        Command::Witness { gamma, common } => {
            check_window(&common)?;
            let docs = witness_documents(gamma, common.options())?;
            let mut out = common.sink(&format!("witness-gamma{gamma}"))?;
            write_witnesses(common.format, &docs, &mut out)?;
            out.flush()?;
            for doc in docs.iter().filter(|d| d.external_reason.is_some()) {
                eprintln!("genus {} relies on an external result", doc.genus);
            }
            Ok(docs
                .iter()
                .filter(|d| d.certificate.is_some())
                .all(|d| d.verified))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_FAILED),
        Err(Failure::Precondition(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_PRECONDITION)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_FAILED)
        }
    }
}
