use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qcuntz_core::braid::{q_antisymmetric, theta};
use qcuntz_core::parse::{parse_element, parse_uq_word};
use qcuntz_core::qmatrix::coact;
use qcuntz_core::uq::act_word;
use qcuntz_core::{run_suite, CheckReport, CuntzElement, LieData, Suite, SuiteParams};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "qcuntz", version, about = "Exact computation in the Cuntz algebra with U_q(sl_d) symmetry")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the normal form of an element
    Normalize {
        #[arg(short = 'd')]
        d: usize,
        #[arg(short = 'x', allow_hyphen_values = true)]
        expr: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Apply a U_q word (rightmost generator first) to an element
    Act {
        #[arg(short = 'd')]
        d: usize,
        #[arg(short = 'a')]
        word: String,
        #[arg(short = 'x', allow_hyphen_values = true)]
        expr: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Print the coaction of an element, reduced modulo det_q - 1
    Coact {
        #[arg(short = 'd')]
        d: usize,
        #[arg(short = 'x', allow_hyphen_values = true)]
        expr: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Print the braid generator theta_i
    Theta {
        #[arg(short = 'd')]
        d: usize,
        #[arg(short = 'i')]
        i: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Print the q-antisymmetric tensor S_q
    Sq {
        #[arg(short = 'd')]
        d: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run a check suite (or `all`)
    Check {
        suite: String,
        /// A single value `D` or an inclusive range `D1..D2`
        #[arg(short = 'd', value_parser = parse_range)]
        d: Option<(usize, usize)>,
        #[arg(long)]
        strands: Option<usize>,
        #[arg(long)]
        wordlen: Option<usize>,
        /// Number of random samples
        #[arg(long)]
        random: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("`{t}`: {e}"));
    match s.split_once("..") {
        Some((a, b)) => Ok((num(a)?, num(b)?)),
        None => num(s).map(|v| (v, v)),
    }
}

enum Failure {
    Usage(String),
    Io(String),
}

impl From<qcuntz_core::Error> for Failure {
    fn from(e: qcuntz_core::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn emit_element(x: &CuntzElement, format: Format) -> Result<(), Failure> {
    match format {
        Format::Text => println!("{x}"),
        Format::Json => println!("{}", serde_json::to_string_pretty(x).map_err(|e| Failure::Io(e.to_string()))?),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<bool, Failure> {
    match cli.cmd {
        Cmd::Normalize { d, expr, format } => emit_element(&parse_element(&expr, d)?, format)?,
        Cmd::Act { d, word, expr, format } => {
            let g = LieData::sl(d)?;
            let a = parse_uq_word(&word, &g)?;
            let x = parse_element(&expr, d)?;
            emit_element(&act_word(&g, &a, &x)?, format)?;
        }
        Cmd::Coact { d, expr, format } => {
            let image = coact(&parse_element(&expr, d)?)?;
            match format {
                Format::Text => println!("{image}"),
                Format::Json => {
                    let terms: Vec<Value> = image
                        .terms()
                        .map(|((w, m), c)| {
                            json!({ "word": w.to_string(), "monomial": m.factors(), "coeff": c.to_string() })
                        })
                        .collect();
                    println!("{}", serde_json::to_string_pretty(&json!({ "d": d, "terms": terms })).unwrap_or_default());
                }
            }
        }
        Cmd::Theta { d, i, format } => emit_element(&theta(d, i)?.element, format)?,
        Cmd::Sq { d, format } => emit_element(&q_antisymmetric(d)?, format)?,
        Cmd::Check { suite, d, strands, wordlen, random, seed, out, format } => {
            let mut params = SuiteParams { d_range: d, strands, wordlen, random, ..SuiteParams::default() };
            if let Some(s) = seed {
                params.seed = s;
            }
            let names: Vec<&str> = if suite == "all" {
                Suite::ALL.iter().map(|s| s.name()).collect()
            } else {
                vec![suite.as_str()]
            };
            let reports: Vec<CheckReport> = names
                .iter()
                .map(|n| run_suite(n, &params))
                .collect::<Result<_, _>>()?;
            let body = match format {
                Format::Text => reports.iter().map(CheckReport::to_text).collect::<Vec<_>>().join("\n"),
                Format::Json => {
                    let v = if reports.len() == 1 {
                        serde_json::to_value(&reports[0])
                    } else {
                        serde_json::to_value(&reports)
                    };
                    serde_json::to_string_pretty(&v.map_err(|e| Failure::Io(e.to_string()))?)
                        .map_err(|e| Failure::Io(e.to_string()))?
                }
            };
            match out {
                Some(path) => std::fs::write(&path, body + "\n")
                    .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?,
                None => println!("{}", body.trim_end()),
            }
            return Ok(reports.iter().all(CheckReport::pass));
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
