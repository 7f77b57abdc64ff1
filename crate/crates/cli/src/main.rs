use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use grassmann_core::bench::bench_wedge;
use grassmann_core::multivector::set_max_terms;
use grassmann_core::report::reports_to_json;
use grassmann_core::{
    evaluate_map, run_suite, standard_poly_eval, CheckReport, Convention, GrassmannMatrix,
    MatrixFile, Ring, SuiteConfig,
};
use serde_json::json;

const MAX_TERMS_ENV: &str = "GRASSMANN_AL_MAX_TERMS";

#[derive(Parser)]
#[command(
    name = "grassmann-al",
    version,
    about = "Exact verification of Grassmann-matrix identities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full identity suite for n = 1..=n_max.
    Verify {
        #[arg(long, default_value_t = 3)]
        n_max: usize,
        /// rational | integer | gf:<p>
        #[arg(long, default_value = "rational")]
        ring: Ring,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random trials per randomized check.
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Random trials per wedge-of-maps pair.
        #[arg(long, default_value_t = 5)]
        wedge_trials: usize,
        /// Factor order in the structure identity: left (matrix first), right, or auto.
        #[arg(long, default_value = "left")]
        convention: Convention,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Include wall-clock timings in the JSON report.
        #[arg(long)]
        timings: bool,
        /// Permit n = 5 (prime-field rings only).
        #[arg(long)]
        allow_large: bool,
    },
    /// Measure wedge-product throughput on random sparse multivectors.
    Bench {
        #[arg(long, default_value_t = 16)]
        generators: usize,
        #[arg(long, default_value_t = 0.01)]
        density: f64,
        #[arg(long, default_value_t = 10)]
        reps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "rational")]
        ring: Ring,
    },
    /// Print X^k for the generic n×n Grassmann matrix.
    Dump {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        power: usize,
        #[arg(long, default_value = "rational")]
        ring: Ring,
        #[arg(long, value_enum, default_value_t = DumpFormat::Text)]
        format: DumpFormat,
    },
    /// Evaluate S_h and X^h on the h matrices in a JSON file.
    Eval {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value = "rational")]
        ring: Ring,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum DumpFormat {
    Text,
    Json,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Ok(v) = std::env::var(MAX_TERMS_ENV) {
        match v.parse::<usize>() {
            Ok(cap) => set_max_terms(cap),
            Err(_) => {
                eprintln!("error: {MAX_TERMS_ENV}={v} is not a positive integer");
                return ExitCode::from(2);
            }
        }
    }
    match cli.command {
        Command::Verify {
            n_max,
            ring,
            seed,
            trials,
            wedge_trials,
            convention,
            json,
            timings,
            allow_large,
        } => {
            let cfg = SuiteConfig {
                n_max,
                ring,
                seed,
                trials,
                wedge_trials,
                convention,
                allow_large,
            };
            verify(&cfg, json, timings)
        }
        other => match run_tool(other) {
            Ok(()) => ExitCode::SUCCESS,
            Err(err) => {
                eprintln!("error: {err:#}");
                ExitCode::from(2)
            }
        },
    }
}

fn verify(cfg: &SuiteConfig, json_path: Option<PathBuf>, timings: bool) -> ExitCode {
    let reports = match run_suite(cfg) {
        Ok(r) => r,
        Err(err) => {
            eprintln!("error: {err}");
            return ExitCode::from(2);
        }
    };
    print_table(&reports);
    let out = reports_to_json(&reports, timings);
    let written = match json_path {
        Some(path) => {
            fs::write(&path, out + "\n").with_context(|| format!("writing {}", path.display()))
        }
        None => writeln!(std::io::stdout(), "{out}").context("writing stdout"),
    };
    if let Err(err) = written {
        eprintln!("error: {err:#}");
        return ExitCode::from(2);
    }
    if reports.iter().all(|r| r.pass) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn print_table(reports: &[CheckReport]) {
    eprintln!(
        "{:<3} {:<20} {:<6} {:>10} {:>9}  detail",
        "n", "check", "result", "max_terms", "ms"
    );
    for r in reports {
        let detail = match (&r.witness, r.params.get("map"), r.params.get("a")) {
            (Some(w), _, _) => w.what.clone(),
            (None, Some(map), _) => format!("F = {}", map.as_str().unwrap_or_default()),
            (None, None, Some(a)) => format!("a = {a}, b = {}", r.params["b"]),
            _ => String::new(),
        };
        eprintln!(
            "{:<3} {:<20} {:<6} {:>10} {:>9}  {}",
            r.n,
            r.check,
            if r.pass { "pass" } else { "FAIL" },
            r.max_terms,
            r.elapsed_ms,
            detail
        );
    }
}

fn run_tool(cmd: Command) -> anyhow::Result<()> {
    match cmd {
        Command::Bench {
            generators,
            density,
            reps,
            seed,
            ring,
        } => {
            let report = bench_wedge(generators, density, reps, seed, ring)?;
            println!("{}", serde_json::to_string_pretty(&report)?);
        }
        Command::Dump {
            n,
            power,
            ring,
            format,
        } => {
            let xk = GrassmannMatrix::generic(n, ring)?.power(power)?;
            match format {
                DumpFormat::Text => print!("{xk}"),
                DumpFormat::Json => {
                    let entries: Vec<_> = xk
                        .entries()
                        .iter()
                        .enumerate()
                        .map(|(idx, e)| json!({"entry": [idx / n, idx % n], "terms": e.to_json_terms()}))
                        .collect();
                    let doc = json!({"n": n, "power": power, "ring": ring, "entries": entries});
                    println!("{}", serde_json::to_string_pretty(&doc)?);
                }
            }
        }
        Command::Eval { input, ring } => {
            let text = fs::read_to_string(&input)
                .with_context(|| format!("reading {}", input.display()))?;
            let file: MatrixFile = serde_json::from_str(&text).context("parsing matrix file")?;
            let args = file.parse(ring)?;
            let h = args.len();
            if h == 0 {
                bail!("matrix file contains no matrices");
            }
            let direct = standard_poly_eval(h, &args)?;
            let symbolic = evaluate_map(&GrassmannMatrix::generic(file.n, ring)?.power(h)?, &args)?;
            let doc = json!({
                "n": file.n,
                "h": h,
                "ring": ring,
                "standard_poly": direct.to_strings(),
                "x_power": symbolic.to_strings(),
                "equal": direct == symbolic,
            });
            println!("{}", serde_json::to_string_pretty(&doc)?);
        }
        Command::Verify { .. } => unreachable!("handled in main"),
    }
    Ok(())
}
