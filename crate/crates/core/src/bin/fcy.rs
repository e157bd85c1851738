use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use fcy_core::cli::{self, Format, SuiteOptions};
use fcy_core::derived::{cy_table, DynkinType};
use fcy_core::wpl::{parse_weights, summarize, WeightType};

#[derive(Parser)]
#[command(name = "fcy", about = "Fractional Calabi-Yau verification toolkit")]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite and emit a report.
    Suite {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "json")]
        format: String,
        /// Restrict the tube suite to one rank.
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long, default_value_t = 8)]
        max_length: usize,
    },
    /// Numerical summary of a weighted projective line.
    Wpl {
        #[arg(long)]
        weights: String,
    },
    /// Randomised twist checks on a tubular lattice.
    Twist {
        #[arg(long)]
        lattice: String,
        #[arg(long, default_value = "quasi-inverse")]
        check: String,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 3)]
        configs: usize,
    },
    /// Classify a class against a slope cut.
    Torsion {
        #[arg(long)]
        weights: String,
        /// `1/2`, `inf`, or an irrational bracket `(lo,hi)`.
        #[arg(long, allow_hyphen_values = true)]
        theta: String,
        #[arg(long, allow_hyphen_values = true)]
        class: String,
    },
    /// Coxeter numbers and Calabi-Yau fractions of Dynkin types.
    DynkinTable {
        #[arg(long, default_value = "A2,A3,A4,A5,D4,D5,E6,E7,E8")]
        types: String,
    },
}

fn main() -> ExitCode {
    match run(Args::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn print_json<T: serde::Serialize>(v: &T) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn run(args: Args) -> fcy_core::Result<bool> {
    match args.command {
        Command::Suite {
            suite,
            seed,
            samples,
            out,
            format,
            rank,
            max_length,
        } => {
            let format: Format = format.parse()?;
            let mut opts = SuiteOptions {
                seed,
                samples,
                max_length,
                ..SuiteOptions::default()
            };
            if let Some(r) = rank {
                opts.ranks = vec![r];
            }
            let report = cli::run_suite(&suite, &opts)?;
            let bytes = cli::export(&report, format);
            match out {
                Some(path) => std::fs::write(&path, bytes)
                    .map_err(|e| fcy_core::Error::Parse(e.to_string()))?,
                None => println!("{}", String::from_utf8_lossy(&bytes)),
            }
            eprintln!(
                "{}: {}/{} passed",
                report.suite, report.summary.passed, report.summary.total
            );
            Ok(report.all_pass())
        }
        Command::Wpl { weights } => {
            let s = summarize(&WeightType::new(&parse_weights(&weights)?)?)?;
            print_json(&s);
            Ok(true)
        }
        Command::Twist {
            lattice,
            check,
            seed,
            samples,
            configs,
        } => {
            if check != "quasi-inverse" {
                return Err(fcy_core::Error::Parse(format!("unknown check {check:?}")));
            }
            let r = cli::twist_check(&parse_weights(&lattice)?, seed, samples, configs)?;
            print_json(&r);
            Ok(r.pass)
        }
        Command::Torsion {
            weights,
            theta,
            class,
        } => {
            print_json(&cli::torsion_query(
                &parse_weights(&weights)?,
                &theta,
                &class,
            )?);
            Ok(true)
        }
        Command::DynkinTable { types } => {
            let types = types
                .split(',')
                .map(|t| t.trim().parse())
                .collect::<fcy_core::Result<Vec<DynkinType>>>()?;
            print_json(&cy_table(&types)?);
            Ok(true)
        }
    }
}
