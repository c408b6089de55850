//! `hfrac`: evaluate fractional-operator chains, verify composition
//! identities, and simplify operator expressions.
//!
//! Exit codes: 0 success, 1 identity verification failed, 2 usage or parse
//! error, 3 numeric evaluation error.

mod config;
mod verify_runner;

use clap::{Parser, Subcommand, ValueEnum};
use config::RunConfig;
use hfrac::opdsl::{evaluate, parse, simplify};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "hfrac", version, about)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate a chain expression at a point
    Eval {
        /// chain expression, e.g. "I[0.5] . f:const1"
        #[arg(long)]
        expr: String,
        /// evaluation point
        #[arg(long)]
        x: f64,
        /// JSON run configuration
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Run identity verification sweeps and emit a report
    Verify {
        /// identity name (cor1..cor6, thm1..thm4, remark2,
        /// hilfer-reductions) or "all"
        #[arg(long)]
        identity: String,
        #[arg(long)]
        config: Option<PathBuf>,
        /// report destination (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
        /// override the config tolerance
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Normalize a chain through the composition rules
    Simplify {
        #[arg(long)]
        expr: String,
        /// print each applied rule
        #[arg(long)]
        trace: bool,
        #[arg(long)]
        config: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

const EXIT_IDENTITY_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_NUMERIC: u8 = 3;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_NUMERIC)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.cmd {
        Cmd::Eval { expr, x, config } => {
            let cfg = match RunConfig::load(config.as_deref()) {
                Ok(c) => c,
                Err(e) => return usage_error(e),
            };
            let chain = match parse(&expr, &cfg.ops) {
                Ok(c) => c,
                Err(e) => return usage_error(e.into()),
            };
            match evaluate(&chain, &cfg.ops, &cfg.functions, x) {
                Ok(v) => {
                    emit(&format!("{}\n", format_value(v)));
                    Ok(ExitCode::SUCCESS)
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    Ok(ExitCode::from(EXIT_NUMERIC))
                }
            }
        }
        Cmd::Verify { identity, config, out, tol, format } => {
            let cfg = match RunConfig::load(config.as_deref()) {
                Ok(c) => c,
                Err(e) => return usage_error(e),
            };
            let ids = match verify_runner::select_identities(&identity) {
                Ok(ids) => ids,
                Err(e) => return usage_error(anyhow::Error::msg(e)),
            };
            let tol = tol.unwrap_or(cfg.tol);
            #[allow(clippy::neg_cmp_op_on_partial_ord)] // rejects NaN too
            if !(tol > 0.0) {
                return usage_error(anyhow::Error::msg(format!("tol must be positive, got {tol}")));
            }
            let reports = verify_runner::run(&ids, &cfg, tol)?;
            let all_pass = reports.iter().all(|r| r.pass);
            let body = match format {
                Format::Csv => verify_runner::to_csv(&reports),
                Format::Json => verify_runner::to_json(&reports),
            };
            match out {
                Some(path) => std::fs::write(&path, body)?,
                None => emit(&body),
            }
            for r in &reports {
                eprintln!(
                    "{}: {} (max rel err {:.3e}, tol {:.1e})",
                    r.identity,
                    if r.pass { "pass" } else { "FAIL" },
                    r.max_rel_err,
                    r.tol
                );
            }
            Ok(if all_pass { ExitCode::SUCCESS } else { ExitCode::from(EXIT_IDENTITY_FAILED) })
        }
        Cmd::Simplify { expr, trace, config } => {
            let cfg = match RunConfig::load(config.as_deref()) {
                Ok(c) => c,
                Err(e) => return usage_error(e),
            };
            let mut ops = cfg.ops.clone();
            let chain = match parse(&expr, &ops) {
                Ok(c) => c,
                Err(e) => return usage_error(e.into()),
            };
            match simplify(&chain, &mut ops) {
                Ok((simplified, tr)) => {
                    let mut out = format!("{}\n", simplified.pretty());
                    if trace {
                        for step in &tr.steps {
                            out.push_str(&format!(
                                "  rule {}: {} => {}   [{}]\n",
                                step.rule, step.before, step.after, step.detail
                            ));
                        }
                        for note in &tr.notes {
                            out.push_str(&format!("  note: {note}\n"));
                        }
                        // show registry entries created by the rewrite
                        for node in &simplified.ops {
                            if let hfrac::opdsl::OpNode::H { name } = &node.op {
                                if name.contains("#s") {
                                    if let Some(s) = ops.summary(name) {
                                        out.push_str(&format!("  registered {s}\n"));
                                    }
                                }
                            }
                        }
                    }
                    emit(&out);
                    Ok(ExitCode::SUCCESS)
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    Ok(ExitCode::from(EXIT_NUMERIC))
                }
            }
        }
    }
}

fn usage_error(e: anyhow::Error) -> anyhow::Result<ExitCode> {
    eprintln!("error: {e:#}");
    Ok(ExitCode::from(EXIT_USAGE))
}

/// Write to stdout, treating a closed pipe as a normal early exit instead
/// of a panic (`hfrac … | head` must not crash).
fn emit(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout();
    if let Err(e) = out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: cannot write output: {e}");
        std::process::exit(i32::from(EXIT_NUMERIC));
    }
}

/// Round to 12 significant digits, then print with 12 digits after the
/// decimal point; complex values print as "re±im i".
fn format_value(v: hfrac::Complex) -> String {
    let re = round_sig(v.re);
    if v.im.abs() <= 1e-12 * v.re.abs().max(1.0) {
        format!("{re:.12}")
    } else {
        let im = round_sig(v.im);
        format!("{re:.12}{}{:.12} i", if im < 0.0 { "-" } else { "+" }, im.abs())
    }
}

fn round_sig(v: f64) -> f64 {
    if v == 0.0 || !v.is_finite() {
        return v;
    }
    format!("{v:.11e}").parse().unwrap_or(v)
}
