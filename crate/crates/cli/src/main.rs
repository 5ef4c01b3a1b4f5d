//! `wronskit` — exact Wronskian brackets, structure tables, and identity
//! verification sweeps from the command line.
//!
//! Exit codes: 0 = computed/verified, 1 = a checked identity failed,
//! 2 = usage or parse error, 3 = resource cap exceeded.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use wronskit::error::Error;
use wronskit::parse::parse_poly_list;
use wronskit::shlie::{structure_constants_kn, witt_structure_table, StructureTable};
use wronskit::suites;
use wronskit::wronskian::{wronskian, wronskian_cofactor};

#[derive(Parser)]
#[command(
    name = "wronskit",
    version,
    about = "Wronskian N-ary brackets over exact rationals"
)]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Seed for the randomized parts of the verification sweeps
    #[arg(long, global = true, default_value_t = suites::DEFAULT_SEED)]
    seed: u64,

    /// Degree bound override for sweeps that take one
    #[arg(long, global = true)]
    degree_bound: Option<usize>,

    /// Cap on bracket arity for factorial-scale enumerations
    #[arg(long, global = true, default_value_t = 8)]
    max_arity: usize,

    /// Write the rendered output to a file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Algebra {
    #[value(name = "kN", alias = "kn")]
    Kn,
    Witt,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Sl2,
    Eq4,
    Eq6,
    Eq7,
    Eq9,
    Eq12,
    Eq15,
    #[value(name = "jacobi-kN", alias = "jacobi-kn")]
    JacobiKn,
    Witt,
    Conformal,
    All,
}

#[derive(Args)]
struct VerifyArgs {
    /// Which identity family to verify
    #[arg(long, value_enum)]
    suite: Suite,

    /// Outer-arity bound for eq6/eq7
    #[arg(long, default_value_t = 0)]
    k_max: usize,

    /// Inner-arity bound for eq6/eq7
    #[arg(long, default_value_t = 0)]
    l_max: usize,

    /// Largest algebra size for eq9
    #[arg(long, default_value_t = 8)]
    n_max: usize,

    /// Largest recurrence index for eq12
    #[arg(long, default_value_t = 12)]
    m_max: usize,

    /// Randomized tuples per sweep where applicable
    #[arg(long)]
    samples: Option<usize>,

    /// Lower index bound for the witt binary grid
    #[arg(long, default_value_t = -5, allow_hyphen_values = true)]
    lo: i64,

    /// Upper index bound for the witt binary grid
    #[arg(long, default_value_t = 5, allow_hyphen_values = true)]
    hi: i64,

    /// Arities for the jacobi-kN sweep
    #[arg(long, value_delimiter = ',', default_values_t = vec![2, 4])]
    arities: Vec<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the Wronskian of a comma-separated list of polynomials
    Wronskian {
        /// e.g. "1, x, x^2/2"
        polys: String,
    },
    /// Emit the structure-constant table of an algebra
    Tables {
        #[arg(long, value_enum)]
        algebra: Algebra,
        /// Bracket arity (and, for kN, the polynomial degree bound)
        #[arg(long)]
        n: usize,
        /// Lower generator index (witt only)
        #[arg(long, default_value_t = -5, allow_hyphen_values = true)]
        lo: i64,
        /// Upper generator index (witt only)
        #[arg(long, default_value_t = 5, allow_hyphen_values = true)]
        hi: i64,
        /// Refuse tables larger than this
        #[arg(long, default_value_t = 100_000)]
        max_entries: usize,
    },
    /// Run an identity-verification suite and report the result
    Verify(VerifyArgs),
}

#[derive(serde::Serialize)]
struct WronskianOutput {
    operation: &'static str,
    inputs: Vec<String>,
    output: String,
    verified: bool,
}

fn emit(cli: &Cli, rendered: String) -> Result<(), Error> {
    match &cli.out {
        Some(path) => {
            std::fs::write(path, rendered.as_bytes()).map_err(|e| Error::InvalidArgument {
                context: "--out",
                message: format!("cannot write {}: {e}", path.display()),
            })
        }
        None => {
            println!("{rendered}");
            Ok(())
        }
    }
}

fn render_table(table: &StructureTable, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(table).expect("table serializes"),
        Format::Csv => table.to_csv().trim_end().to_string(),
        Format::Text => {
            let mut out = format!(
                "algebra {}, N = {}, {} entries\n{:<16} {:>8} {:>10}",
                match table.algebra {
                    wronskit::shlie::AlgebraKind::KN => "kN",
                    wronskit::shlie::AlgebraKind::Witt => "witt",
                },
                table.n,
                table.entries.len(),
                "args",
                "result",
                "coeff"
            );
            for e in &table.entries {
                let args = e
                    .args
                    .iter()
                    .map(|a| a.to_string())
                    .collect::<Vec<_>>()
                    .join(",");
                out.push_str(&format!("\n{:<16} {:>8} {:>10}", args, e.result, e.coeff));
            }
            out
        }
    }
}

/// Recursively collects `checked` counts and `failures` entries from a
/// report, so the text summary works for every suite uniformly.
fn summarize(value: &Value, checked: &mut u64, failures: &mut Vec<String>) {
    match value {
        Value::Object(map) => {
            if let Some(n) = map.get("checked").and_then(Value::as_u64) {
                *checked += n;
            } else if let Some(n) = map.get("tuples_checked").and_then(Value::as_u64) {
                *checked += n;
            } else if map.get("pass").map(Value::is_boolean).unwrap_or(false)
                || map.get("equal").map(Value::is_boolean).unwrap_or(false)
            {
                *checked += 1;
            }
            if let Some(Value::Array(list)) = map.get("failures") {
                for item in list {
                    if let Some(s) = item.as_str() {
                        failures.push(s.to_string());
                    }
                }
            }
            for (key, inner) in map {
                if key != "failures" {
                    summarize(inner, checked, failures);
                }
            }
        }
        Value::Array(list) => {
            for inner in list {
                summarize(inner, checked, failures);
            }
        }
        _ => {}
    }
}

fn run_verify(cli: &Cli, args: &VerifyArgs) -> Result<(String, Value), Error> {
    let seed = cli.seed;
    let (name, report): (&str, Value) = match args.suite {
        Suite::Sl2 => ("sl2", serde_json::to_value(suites::suite_sl2()).unwrap()),
        Suite::Eq4 => {
            let mut options = suites::Eq4Options {
                seed,
                ..suites::Eq4Options::default()
            };
            if let Some(d) = cli.degree_bound {
                options.p1_degree = d;
            }
            if let Some(s) = args.samples {
                options.p2_random_tuples = s;
            }
            (
                "eq4",
                serde_json::to_value(suites::suite_eq4(&options)).unwrap(),
            )
        }
        Suite::Eq6 => {
            let k_max = if args.k_max == 0 { 5 } else { args.k_max };
            let l_max = if args.l_max == 0 { 4 } else { args.l_max };
            (
                "eq6",
                serde_json::to_value(suites::suite_eq6(k_max, l_max)?).unwrap(),
            )
        }
        Suite::Eq7 => {
            let k_max = if args.k_max == 0 { 3 } else { args.k_max };
            let l_max = if args.l_max == 0 { 3 } else { args.l_max };
            let report = suites::suite_eq7(k_max, l_max, cli.degree_bound);
            ("eq7", serde_json::to_value(report).unwrap())
        }
        Suite::Eq9 => (
            "eq9",
            serde_json::to_value(suites::suite_eq9(args.n_max)).unwrap(),
        ),
        Suite::Eq12 => (
            "eq12",
            serde_json::to_value(suites::suite_eq12(args.m_max)).unwrap(),
        ),
        Suite::Eq15 => {
            let mut options = suites::Eq15Options {
                seed,
                ..suites::Eq15Options::default()
            };
            if let Some(s) = args.samples {
                options.rational_samples = s;
            }
            if let Some(d) = cli.degree_bound {
                options.max_int_exponent = d as i64;
            }
            (
                "eq15",
                serde_json::to_value(suites::suite_eq15(&options)).unwrap(),
            )
        }
        Suite::JacobiKn => (
            "jacobi-kN",
            serde_json::to_value(suites::suite_jacobi_kn(&args.arities)?).unwrap(),
        ),
        Suite::Witt => {
            let mut options = suites::WittOptions {
                seed,
                binary_lo: args.lo,
                binary_hi: args.hi,
                ..suites::WittOptions::default()
            };
            if let Some(s) = args.samples {
                options.random_samples = s;
            }
            (
                "witt",
                serde_json::to_value(suites::suite_witt(&options)).unwrap(),
            )
        }
        Suite::Conformal => (
            "conformal",
            serde_json::to_value(suites::suite_conformal(2, 4, 4)).unwrap(),
        ),
        Suite::All => (
            "all",
            serde_json::to_value(suites::suite_all(seed)?).unwrap(),
        ),
    };
    Ok((name.to_string(), report))
}

fn run(cli: &Cli) -> Result<ExitCode, Error> {
    match &cli.command {
        Command::Wronskian { polys } => {
            let fs = parse_poly_list(polys)?;
            if fs.len() > cli.max_arity {
                return Err(Error::ResourceLimit {
                    context: "wronskian",
                    limit: cli.max_arity,
                    requested: fs.len(),
                });
            }
            let value = wronskian(&fs);
            let verified = value == wronskian_cofactor(&fs);
            let rendered = match cli.format {
                Format::Text => value.to_string(),
                Format::Json => serde_json::to_string_pretty(&WronskianOutput {
                    operation: "wronskian",
                    inputs: fs.iter().map(|f| f.to_string()).collect(),
                    output: value.to_string(),
                    verified,
                })
                .unwrap(),
                Format::Csv => {
                    return Err(Error::InvalidArgument {
                        context: "--format",
                        message: "csv applies to tables only".into(),
                    })
                }
            };
            emit(cli, rendered)?;
            Ok(if verified {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Tables {
            algebra,
            n,
            lo,
            hi,
            max_entries,
        } => {
            if *n == 0 {
                return Err(Error::InvalidArgument {
                    context: "tables",
                    message: "N must be at least 1".into(),
                });
            }
            let table = match algebra {
                Algebra::Kn => {
                    if n + 1 > *max_entries {
                        return Err(Error::ResourceLimit {
                            context: "tables",
                            limit: *max_entries,
                            requested: n + 1,
                        });
                    }
                    structure_constants_kn(*n)
                }
                Algebra::Witt => witt_structure_table(*n, *lo, *hi, *max_entries)?,
            };
            emit(cli, render_table(&table, cli.format))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify(args) => {
            let (name, report) = run_verify(cli, args)?;
            let ok = report.get("ok").and_then(Value::as_bool).unwrap_or(false);
            let rendered = match cli.format {
                Format::Json => serde_json::to_string_pretty(&report).unwrap(),
                Format::Csv => {
                    return Err(Error::InvalidArgument {
                        context: "--format",
                        message: "csv applies to tables only".into(),
                    })
                }
                Format::Text => {
                    let mut checked = 0u64;
                    let mut failures = Vec::new();
                    summarize(&report, &mut checked, &mut failures);
                    let mut out = format!(
                        "suite {name}: {} ({checked} checks, {} failures)",
                        if ok { "PASS" } else { "FAIL" },
                        failures.len()
                    );
                    for failure in failures.iter().take(10) {
                        out.push_str(&format!("\n  counterexample: {failure}"));
                    }
                    if failures.len() > 10 {
                        out.push_str(&format!("\n  ... {} more", failures.len() - 10));
                    }
                    out
                }
            };
            emit(cli, rendered)?;
            Ok(if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Parse { .. } | Error::InvalidArgument { .. } => ExitCode::from(2),
                Error::ResourceLimit { .. } => ExitCode::from(3),
                Error::Inconsistency { .. } => ExitCode::from(1),
            }
        }
    }
}
