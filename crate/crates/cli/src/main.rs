use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use pseudoauto::par::Execution;
use pseudoauto_cli::commands::{self, CliError, DEFAULT_SEED};
use pseudoauto_cli::{golden_check, parse_rational, CertifyOptions, Format, Report, TorusOptions};

/// Exact certification of pseudo-automorphisms of rational threefolds, their surface
/// restrictions and the torus examples.
#[derive(Parser)]
#[command(name = "pseudoauto", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
    /// Run independent checks on one thread.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run every check for one value of ℓ.
    Certify {
        #[arg(long)]
        ell: i64,
        /// Depth of the symbolic iterates of f (g stops at 4).
        #[arg(long, default_value_t = 5)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Inject a wrong parameter to exercise the failure path.
        #[arg(long)]
        perturb: bool,
        /// Compare with (or record) a golden report in this directory.
        #[arg(long)]
        golden_dir: Option<PathBuf>,
    },
    /// Search reciprocal sextics with coefficients bounded by --bound; JSON lines per hit.
    Torus {
        #[arg(long)]
        bound: i64,
        #[arg(long, default_value = "1e-9")]
        eps: String,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Construct the commuting complex structure for every hit.
        #[arg(long = "verify-J", alias = "verify-j")]
        verify_j: bool,
    },
    /// Classify an integer polynomial given as a comma-separated coefficient list.
    Classify {
        /// Coefficients, highest degree first unless --lowest-first.
        #[arg(allow_hyphen_values = true)]
        poly: String,
        #[arg(long)]
        lowest_first: bool,
        #[arg(long, default_value = "1e-12")]
        eps: String,
    },
    /// Symbolic degree sequences against the lattice prediction.
    Degrees {
        #[arg(long)]
        ell: i64,
        #[arg(long, default_value_t = 6)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// The β-cycle orbit of p₁ for one value of ℓ.
    Orbit {
        #[arg(long)]
        ell: i64,
        #[arg(long)]
        perturb: bool,
    },
}

/// Write to stdout; a closed pipe (`| head`) is not an error worth a panic.
fn emit(s: &str) {
    let _ = std::io::stdout().lock().write_all(s.as_bytes());
}

fn run(cli: Cli) -> Result<Report, CliError> {
    let exec = if cli.sequential { Execution::Sequential } else { Execution::Parallel };
    let format = cli.format;
    match cli.command {
        Command::Certify { ell, n, seed, perturb, golden_dir } => {
            let mut report = commands::certify(&CertifyOptions { ell, n, seed, perturb, exec })?;
            if let Some(dir) = golden_dir {
                let name = format!("certify-ell{ell}-n{n}-seed{seed}{}.json", if perturb { "-perturb" } else { "" });
                report.push(golden_check(&report, &dir, &name));
            }
            Ok(report)
        }
        Command::Torus { bound, eps, tol, verify_j } => {
            let opts = TorusOptions { bound, eps: parse_rational(&eps)?, tol, verify_j, exec };
            let (report, records) = commands::torus(&opts)?;
            for r in &records {
                match format {
                    Format::Text => {
                        let l1 = r.lambda1_enclosure.as_ref().map(|(lo, _)| pseudoauto::exact::rational::to_f64(lo)).unwrap_or(f64::NAN);
                        emit(&format!("({:>2}, {:>2}, {:>2})  {:<12} λ₁ ≈ {l1:.9}\n", r.a, r.b, r.c, format!("{:?}", r.verdict)));
                    }
                    _ => emit(&(serde_json::to_string(r).expect("record serializes") + "\n")),
                }
            }
            Ok(report)
        }
        Command::Classify { poly, lowest_first, eps } => commands::classify_literal(&poly, lowest_first, &parse_rational(&eps)?),
        Command::Degrees { ell, n, seed } => {
            let (report, tables) = commands::degrees(ell, n, seed)?;
            if format == Format::Csv {
                emit(&commands::degree_csv(&tables));
            }
            Ok(report)
        }
        Command::Orbit { ell, perturb } => commands::orbit(ell, perturb),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    let degrees_csv = format == Format::Csv && matches!(cli.command, Command::Degrees { .. });
    let torus_json = format == Format::Json && matches!(cli.command, Command::Torus { .. });
    match run(cli) {
        Ok(report) => {
            if torus_json {
                // Keep the stream line-oriented: the summary is the last line.
                emit(&(serde_json::to_string(&report).expect("report serializes") + "\n"));
            } else if degrees_csv {
                eprint!("{}", report.render(Format::Text));
            } else {
                emit(&report.render(format));
            }
            if format != Format::Text {
                for c in report.flagged() {
                    eprintln!("flagged {}: {}", c.name, c.details);
                }
            }
            if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
