//! Argument parsing and dispatch for the `formations` binary.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::oracles::OracleConfig;
use crate::report::{self, timed, RunReport, VerifyCheck, EXIT_USAGE};

#[derive(Parser, Debug)]
#[command(
    name = "formations",
    version,
    about = "Sparse formation-avoiding sequences: constructions, checks and exact oracles"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a witness and re-verify it.
    Construct {
        kind: ConstructKind,
        #[command(flatten)]
        p: Params,
        /// Write the witness here (and the trace next to it, for `formation`).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check properties of a sequence file.
    Verify {
        file: PathBuf,
        /// sparse:J, ds:S, formation:R:S, pattern:P or lambda-prime:S
        #[arg(long = "check", required = true)]
        checks: Vec<String>,
        #[arg(long)]
        json: bool,
    },
    /// Compute an extremal value exactly.
    Oracle {
        function: OracleKind,
        #[command(flatten)]
        p: Params,
    },
    /// Evaluate an upper bound, optionally against the oracle.
    Bound {
        kind: BoundKind,
        #[command(flatten)]
        p: Params,
        #[arg(long)]
        a: Option<usize>,
        #[arg(long)]
        b: Option<usize>,
        #[arg(long)]
        compare_oracle: bool,
    },
    /// Convert between blocked sequences and incidence matrices.
    Convert {
        direction: Direction,
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum ConstructKind {
    Formation,
    DsSparse,
    Block,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum OracleKind {
    Lambda,
    Formation,
    Pattern,
    LambdaBlocks,
    LambdaPrime,
    ExMatrix,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum BoundKind {
    Kst,
    DsCeiling,
    FormationCeiling,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum Direction {
    BlocksToMatrix,
    MatrixToBlocks,
}

#[derive(Args, Debug, Default)]
pub struct Params {
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub s: Option<usize>,
    #[arg(long)]
    pub r: Option<usize>,
    #[arg(long)]
    pub q: Option<usize>,
    #[arg(long)]
    pub x: Option<usize>,
    #[arg(long)]
    pub t: Option<usize>,
    #[arg(long)]
    pub j: Option<usize>,
    #[arg(long)]
    pub c: Option<f64>,
    #[arg(long)]
    pub pattern: Option<String>,
    #[arg(long)]
    pub json: bool,
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
    #[arg(long)]
    pub override_caps: bool,
}

impl Params {
    fn config(&self) -> OracleConfig {
        OracleConfig {
            override_caps: self.override_caps,
            threads: self.threads,
            node_budget: None,
        }
    }
}

fn need<T: Copy>(v: Option<T>, flag: &str) -> Result<T> {
    v.ok_or_else(|| Error::InvalidParameter(format!("--{flag} is required")))
}

/// What a run printed and how it should exit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

fn render(report: RunReport, json: bool) -> Outcome {
    let stdout = if json {
        report.to_json() + "\n"
    } else {
        report.to_text()
    };
    Outcome {
        stdout,
        stderr: String::new(),
        code: report.exit_code(),
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let text = e.render().to_string();
            let (stdout, stderr) = if code == 0 {
                (text, String::new())
            } else {
                (String::new(), text)
            };
            return Outcome { stdout, stderr, code };
        }
    };
    match execute(cli.command) {
        Ok(outcome) => outcome,
        Err(e) => Outcome {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: EXIT_USAGE,
        },
    }
}

fn execute(command: Command) -> Result<Outcome> {
    match command {
        Command::Construct { kind, p, out } => {
            let out = out.as_deref();
            let report = timed(|| match kind {
                ConstructKind::Formation => match (p.x, p.t) {
                    (Some(x), Some(t)) => report::construct_formation(need(p.r, "r")?, need(p.q, "q")?, x, t, out),
                    _ => report::construct_formation_for(
                        need(p.n, "n")?,
                        need(p.s, "s")?,
                        p.c.unwrap_or(1.0),
                        need(p.r, "r")?,
                        need(p.q, "q")?,
                        out,
                    ),
                },
                ConstructKind::DsSparse => {
                    report::construct_ds_sparse(need(p.n, "n")?, need(p.s, "s")?, need(p.j, "j")?, out)
                }
                ConstructKind::Block => report::construct_block(need(p.n, "n")?, need(p.s, "s")?, out),
            })?;
            Ok(render(report, p.json))
        }
        Command::Verify { file, checks, json } => {
            let checks = checks.iter().map(|c| c.parse()).collect::<Result<Vec<VerifyCheck>>>()?;
            let report = timed(|| report::verify_file(&file, &checks))?;
            Ok(render(report, json))
        }
        Command::Oracle { function, p } => {
            let config = p.config();
            let report = timed(|| match function {
                OracleKind::Lambda => {
                    report::oracle_lambda_report(need(p.n, "n")?, need(p.s, "s")?, p.j.unwrap_or(2), &config)
                }
                OracleKind::Formation => {
                    let r = need(p.r, "r")?;
                    report::oracle_formation_report(need(p.n, "n")?, r, need(p.s, "s")?, p.j.unwrap_or(r), &config)
                }
                OracleKind::Pattern => {
                    let pattern = p
                        .pattern
                        .as_deref()
                        .ok_or_else(|| Error::InvalidParameter("--pattern is required".into()))?;
                    report::oracle_pattern_report(pattern, p.j.unwrap_or(2), need(p.n, "n")?, &config)
                }
                OracleKind::LambdaBlocks => {
                    report::oracle_lambda_blocks_report(need(p.n, "n")?, need(p.s, "s")?, need(p.m, "m")?, &config)
                }
                OracleKind::LambdaPrime => {
                    report::oracle_lambda_prime_report(need(p.n, "n")?, need(p.s, "s")?, need(p.m, "m")?, &config)
                }
                OracleKind::ExMatrix => {
                    let pattern = p
                        .pattern
                        .as_deref()
                        .ok_or_else(|| Error::InvalidParameter("--pattern is required".into()))?;
                    let n = need(p.n, "n")?;
                    report::oracle_ex_matrix_report(n, p.m.unwrap_or(n), pattern, &config)
                }
            })?;
            Ok(render(report, p.json))
        }
        Command::Bound {
            kind,
            p,
            a,
            b,
            compare_oracle,
        } => {
            let config = p.config();
            let compare = compare_oracle.then_some(&config);
            let report = timed(|| match kind {
                BoundKind::Kst => {
                    let n = need(p.n, "n")?;
                    report::bound_kst(n, p.m.unwrap_or(n), need(a, "a")?, need(b, "b")?, compare)
                }
                BoundKind::DsCeiling => report::bound_ds_ceiling(need(p.n, "n")?, need(p.s, "s")?, compare),
                BoundKind::FormationCeiling => {
                    let r = need(p.r, "r")?;
                    report::bound_formation_ceiling(need(p.n, "n")?, r, need(p.s, "s")?, p.j.unwrap_or(r), compare)
                }
            })?;
            Ok(render(report, p.json))
        }
        Command::Convert {
            direction,
            file,
            out,
            json,
        } => {
            let text = std::fs::read_to_string(&file).map_err(|e| Error::Parse(format!("{}: {e}", file.display())))?;
            let name = match direction {
                Direction::BlocksToMatrix => "blocks-to-matrix",
                Direction::MatrixToBlocks => "matrix-to-blocks",
            };
            let report = timed(|| report::convert_report(name, &text))?.param("file", file.display());
            let converted = format!("{}\n", report.witnesses[0].text);
            if let Some(path) = &out {
                std::fs::write(path, &converted)
                    .map_err(|e| Error::InvalidParameter(format!("cannot write {}: {e}", path.display())))?;
            }
            if json {
                return Ok(render(report, true));
            }
            let code = report.exit_code();
            Ok(Outcome {
                stdout: if out.is_some() { String::new() } else { converted },
                stderr: String::new(),
                code,
            })
        }
    }
}
