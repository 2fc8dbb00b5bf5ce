//! Command-line front end for the `eqschubert` library.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use eqschubert::grass::{self, TableEntry};
use eqschubert::verify::{self, Suite};
use eqschubert::{schur, Error, GrassContext, Partition};
use serde_json::json;

const EXIT_VERIFICATION_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_GUARD: u8 = 3;

#[derive(Parser)]
#[command(
    name = "eqschubert",
    version,
    about = "Double Schur polynomials and equivariant Schubert calculus on Grassmannians"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write the main output to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Print the double Schur polynomial s_lambda(x|t) in n variables.
    Schur {
        #[arg(long)]
        n: usize,
        /// Comma-separated weakly decreasing parts; "" is the empty partition.
        #[arg(long, value_parser = parse_partition)]
        lambda: Partition,
    },
    /// Structure constants of sigma_lambda * sigma_mu in G(n,m) with certificates.
    Product {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, value_parser = parse_partition)]
        lambda: Partition,
        #[arg(long, value_parser = parse_partition)]
        mu: Partition,
    },
    /// Full structure table of G(n,m).
    Table {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
    },
    /// Run a property suite over G(n,m).
    Verify {
        #[arg(long, value_parser = clap::value_parser!(SuiteArg))]
        suite: SuiteArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
    },
}

#[derive(Clone, Copy)]
struct SuiteArg(Suite);

impl std::str::FromStr for SuiteArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        s.parse().map(SuiteArg)
    }
}

fn parse_partition(s: &str) -> Result<Partition, String> {
    s.parse::<Partition>().map_err(|e| e.to_string())
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::SizeGuard { .. } | Error::EnumerationGuard { .. } => EXIT_GUARD,
        Error::InvalidPartition(_)
        | Error::InvalidSequence(_)
        | Error::InvalidContext { .. }
        | Error::OutOfBox { .. } => EXIT_USAGE,
        _ => EXIT_VERIFICATION_FAILED,
    }
}

fn context(n: usize, m: usize) -> Result<GrassContext, Error> {
    GrassContext::new(n, m)
}

fn to_json_line(value: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string(value).expect("serialization cannot fail");
    s.push('\n');
    s
}

fn emit(out: Option<&Path>, body: &str) -> Result<(), String> {
    match out {
        Some(path) => fs::write(path, body).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn render_entry(entry: &TableEntry) -> String {
    let mut lines = vec![format!("s{} * s{} =", entry.lambda, entry.mu)];
    for term in &entry.products {
        let cert = match &term.certificate {
            Ok(c) => format!("[{}]", c.expansion()),
            Err(v) => format!("[NOT POSITIVE: {v}]"),
        };
        lines.push(format!("  s{}: {}  {cert}", term.nu, term.coeff));
    }
    lines.join("\n") + "\n"
}

/// Output of a command and whether it counts as a verification failure.
struct Outcome {
    body: String,
    summary: Option<String>,
    failed: bool,
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    let text = cli.format == Format::Text;
    match &cli.command {
        Command::Schur { n, lambda } => {
            let s = schur::double_schur(lambda, *n)?;
            let body = if text { format!("{s}\n") } else { to_json_line(&s) };
            Ok(Outcome {
                body,
                summary: None,
                failed: false,
            })
        }
        Command::Product { n, m, lambda, mu } => {
            let ctx = context(*n, *m)?;
            let expansion = grass::schubert_product(lambda, mu, &ctx)?;
            let entry = TableEntry::from_expansion(lambda.clone(), mu.clone(), &expansion, &ctx);
            let body = if text { render_entry(&entry) } else { to_json_line(&entry) };
            Ok(Outcome {
                failed: !entry.all_positive(),
                body,
                summary: None,
            })
        }
        Command::Table { n, m } => {
            let ctx = context(*n, *m)?;
            let table = grass::full_structure_table(&ctx)?;
            let body = if text {
                table.entries().iter().map(render_entry).collect()
            } else {
                to_json_line(&table)
            };
            let summary = if text {
                format!(
                    "{ctx}: {} entries, all positive: {}, differences used: {:?}\n",
                    table.entries().len(),
                    table.all_positive(),
                    table.differences_used()
                )
            } else {
                to_json_line(&json!({
                    "n": n,
                    "m": m,
                    "entries": table.entries().len(),
                    "all_positive": table.all_positive(),
                    "differences_used": table.differences_used(),
                }))
            };
            Ok(Outcome {
                failed: !table.all_positive(),
                body,
                summary: Some(summary),
            })
        }
        Command::Verify { suite, n, m } => {
            let ctx = context(*n, *m)?;
            let report = verify::run(suite.0, &ctx)?;
            let body = if text { format!("{report}\n") } else { to_json_line(&report) };
            Ok(Outcome {
                failed: !report.passed,
                body,
                summary: None,
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match run(&cli) {
        Ok(outcome) => outcome,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    if let Err(msg) = emit(cli.out.as_deref(), &outcome.body) {
        eprintln!("error: {msg}");
        return ExitCode::from(EXIT_USAGE);
    }
    // with --out the table summary goes to standard output
    if let (Some(summary), Some(_)) = (&outcome.summary, &cli.out) {
        print!("{summary}");
    }
    if outcome.failed {
        ExitCode::from(EXIT_VERIFICATION_FAILED)
    } else {
        ExitCode::SUCCESS
    }
}
