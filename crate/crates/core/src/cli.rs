//! Command-line front end. [`run`] parses arguments, writes to the given
//! streams and returns the process exit code:
//! 0 success, 2 usage or domain error, 3 expectation mismatch, 4 I/O error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::analytic::{asym_log_value, log_s_exact, AsymptoticKind, AsymptoticModel};
use crate::audit::{self, fmt_float, Grid, ReportFormat};
use crate::evaluate::{evaluate, s_recurrence, EvalRequest, Method};
use crate::exactnum::Rat;
use crate::walks::{estimate_s, estimate_s_rao, WalkConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;
pub const EXIT_IO: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "catconv", version)]
#[command(about = "Exact evaluation and claim audit for S_n(a) = sum_k C(2k,k) C(2(n-k),n-k) a^k")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MethodArg {
    Direct,
    WeightedCatalan,
    Recurrence,
    Hyper,
    Identity,
    Narayana,
    Series,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Direct => Method::Direct,
            MethodArg::WeightedCatalan => Method::WeightedCatalan,
            MethodArg::Recurrence => Method::Recurrence,
            MethodArg::Hyper => Method::Hypergeometric,
            MethodArg::Identity => Method::IdentityProofForm,
            MethodArg::Narayana => Method::Narayana,
            MethodArg::Series => Method::Series,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModelArg {
    Paper,
    Singularity,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate S_n(a) exactly
    Eval {
        #[arg(long)]
        n: u64,
        /// Rational literal: 3, -3, 7/5, -4/9
        #[arg(long, allow_hyphen_values = true)]
        a: Rat,
        #[arg(long, value_enum, default_value = "recurrence")]
        method: MethodArg,
        #[arg(long)]
        json: bool,
    },
    /// Tabulate S_0(a) .. S_{n_max}(a)
    Table {
        #[arg(long)]
        n_max: u64,
        #[arg(long, allow_hyphen_values = true)]
        a: Rat,
        #[arg(long, value_enum, default_value = "csv")]
        format: TableFormat,
    },
    /// Check every registered claim against the direct sum
    Audit {
        #[arg(long, default_value_t = 24)]
        n_max: u64,
        /// Comma-separated rational literals
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            default_value = "0,1,-1,2,1/2,-3,7/5"
        )]
        a: Vec<Rat>,
        #[arg(long, default_value = "audit-report.json")]
        out: PathBuf,
        #[arg(long)]
        markdown: Option<PathBuf>,
        /// Exit 3 if verdict statuses differ from this file
        #[arg(long)]
        expect: Option<PathBuf>,
    },
    /// Compare an asymptotic model with the exact value in log space
    Asym {
        #[arg(long)]
        n: u64,
        #[arg(long, allow_hyphen_values = true)]
        a: Rat,
        #[arg(long, value_enum, default_value = "singularity")]
        model: ModelArg,
    },
    /// Monte Carlo estimate from the random-walk representation
    Simulate {
        #[arg(long)]
        n: u64,
        #[arg(long, allow_hyphen_values = true)]
        a: Rat,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        chunks: u32,
        /// Randomize only the split time and use exact return probabilities
        #[arg(long)]
        rao: bool,
    },
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl ToString) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.to_string(),
        }
    }

    fn io(message: impl ToString) -> Self {
        Failure {
            code: EXIT_IO,
            message: message.to_string(),
        }
    }
}

type CmdResult = Result<i32, Failure>;

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return if code == 0 { EXIT_OK } else { EXIT_USAGE };
        }
    };
    let result = match cli.command {
        Command::Eval { n, a, method, json } => cmd_eval(n, a, method.into(), json, out),
        Command::Table { n_max, a, format } => cmd_table(n_max, &a, format, out),
        Command::Audit {
            n_max,
            a,
            out: path,
            markdown,
            expect,
        } => cmd_audit(n_max, a, path, markdown, expect, out),
        Command::Asym { n, a, model } => cmd_asym(n, &a, model, out),
        Command::Simulate {
            n,
            a,
            samples,
            seed,
            chunks,
            rao,
        } => cmd_simulate(
            WalkConfig {
                n,
                a,
                samples,
                seed,
                chunks,
            },
            rao,
            out,
        ),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes()).map_err(Failure::io)
}

fn cmd_eval(n: u64, a: Rat, method: Method, json: bool, out: &mut dyn Write) -> CmdResult {
    let result = evaluate(&EvalRequest { n, a, method }).map_err(Failure::usage)?;
    let text = if json {
        let body = serde_json::json!({
            "n": n,
            "a": result.a.to_string(),
            "method": method.name(),
            "value": result.value.to_string(),
        });
        format!("{body}\n")
    } else {
        format!("{}\n", result.value)
    };
    emit(out, &text)?;
    Ok(EXIT_OK)
}

fn cmd_table(n_max: u64, a: &Rat, format: TableFormat, out: &mut dyn Write) -> CmdResult {
    let values = (0..=n_max).map(|n| (n, s_recurrence(n, a)));
    let text = match format {
        TableFormat::Csv => {
            let mut text = String::from("n,value\n");
            for (n, v) in values {
                text.push_str(&format!("{n},{v}\n"));
            }
            text
        }
        TableFormat::Json => {
            let rows: Vec<_> = values
                .map(|(n, v)| serde_json::json!({ "n": n, "value": v.to_string() }))
                .collect();
            format!("{}\n", serde_json::Value::Array(rows))
        }
    };
    emit(out, &text)?;
    Ok(EXIT_OK)
}

fn cmd_audit(
    n_max: u64,
    a_values: Vec<Rat>,
    path: PathBuf,
    markdown: Option<PathBuf>,
    expect: Option<PathBuf>,
    out: &mut dyn Write,
) -> CmdResult {
    if a_values.is_empty() {
        return Err(Failure::usage("audit needs at least one value of a"));
    }
    // Read the expectation first so a bad path fails before the long run.
    let expected = match &expect {
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| Failure::io(format!("{}: {e}", p.display())))?;
            Some(
                audit::statuses(&text)
                    .map_err(|e| Failure::usage(format!("{}: {e}", p.display())))?,
            )
        }
        None => None,
    };
    let grid = Grid::new(n_max, a_values);
    let report = audit::run_all(&audit::registry(), &grid).map_err(Failure::usage)?;
    let write = |p: &PathBuf, format| {
        std::fs::write(p, audit::render_report(&report, format))
            .map_err(|e| Failure::io(format!("{}: {e}", p.display())))
    };
    write(&path, ReportFormat::Json)?;
    if let Some(md) = &markdown {
        write(md, ReportFormat::Markdown)?;
    }
    let mut summary = String::new();
    for v in &report.verdicts {
        match &v.witness {
            Some(w) => summary.push_str(&format!(
                "{} {} cells={} witness n={} a={} lhs={} rhs={}\n",
                v.id, v.status, v.cells, w.n, w.a, w.lhs, w.rhs
            )),
            None => summary.push_str(&format!("{} {} cells={}\n", v.id, v.status, v.cells)),
        }
    }
    emit(out, &summary)?;
    if let Some(expected) = expected {
        if expected != report.status_map() {
            emit(out, "verdict statuses differ from expectation\n")?;
            return Ok(EXIT_MISMATCH);
        }
    }
    Ok(EXIT_OK)
}

fn cmd_asym(n: u64, a: &Rat, model: ModelArg, out: &mut dyn Write) -> CmdResult {
    if !a.is_positive() {
        return Err(Failure::usage(format!("asym needs a > 0, got {a}")));
    }
    let kind = match model {
        ModelArg::Paper => AsymptoticKind::Printed,
        ModelArg::Singularity => AsymptoticKind::SingularityCorrected,
    };
    let model = AsymptoticModel::new(kind, a.to_f64()).map_err(Failure::usage)?;
    let predicted = asym_log_value(&model, n).map_err(Failure::usage)?;
    let exact = log_s_exact(n, a).map_err(Failure::usage)?;
    emit(
        out,
        &format!(
            "log_model {}\nlog_exact {}\ndifference {}\n",
            fmt_float(predicted),
            fmt_float(exact),
            fmt_float(exact - predicted)
        ),
    )?;
    Ok(EXIT_OK)
}

fn cmd_simulate(cfg: WalkConfig, rao: bool, out: &mut dyn Write) -> CmdResult {
    let estimate = if rao {
        estimate_s_rao(&cfg)
    } else {
        estimate_s(&cfg)
    }
    .map_err(Failure::usage)?;
    let exact = s_recurrence(cfg.n, &cfg.a);
    let exact_f = exact.to_f64();
    let z = if estimate.std_error > 0.0 {
        (estimate.mean - exact_f) / estimate.std_error
    } else if estimate.mean == exact_f {
        0.0
    } else {
        f64::INFINITY
    };
    emit(
        out,
        &format!(
            "estimate {}\nstd_error {}\nexact {}\nz {}\n",
            fmt_float(estimate.mean),
            fmt_float(estimate.std_error),
            exact,
            fmt_float(z)
        ),
    )?;
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["catconv"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn eval_outputs() {
        assert_eq!(call(&["eval", "--n", "3", "--a", "2"]).1, "252\n");
        assert_eq!(call(&["eval", "--n", "0", "--a", "-9/4"]).1, "1\n");
        assert_eq!(
            call(&["eval", "--n", "2", "--a", "-1", "--method", "hyper"]).1,
            "8\n"
        );
        assert_eq!(
            call(&["eval", "--n", "3", "--a", "1/2", "--method", "direct"]).1,
            "63/2\n"
        );
        let (code, json, _) = call(&[
            "eval", "--n", "3", "--a", "7/5", "--json", "--method", "series",
        ]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["method"], "series");
        assert_eq!(v["a"], "7/5");
        assert_eq!(v["n"], 3);
    }

    #[test]
    fn eval_errors() {
        for bad in [
            vec!["eval", "--n", "3", "--a", "1.5"],
            vec!["eval", "--n", "3", "--a", "1/0"],
            vec!["eval", "--n", "3", "--a", ""],
            vec!["eval", "--n", "-3", "--a", "1"],
            vec!["eval", "--n", "3", "--a", "1", "--method", "magic"],
            vec!["eval", "--n", "401", "--a", "1", "--method", "narayana"],
        ] {
            let (code, out, _) = call(&bad);
            assert_eq!(code, EXIT_USAGE, "{bad:?}");
            assert!(out.is_empty());
        }
    }

    #[test]
    fn table_outputs() {
        assert_eq!(
            call(&["table", "--n-max", "2", "--a", "1"]).1,
            "n,value\n0,1\n1,4\n2,16\n"
        );
        assert_eq!(
            call(&["table", "--n-max", "0", "--a", "5"]).1,
            "n,value\n0,1\n"
        );
        assert_eq!(
            call(&["table", "--n-max", "3", "--a", "-1"]).1,
            "n,value\n0,1\n1,0\n2,8\n3,0\n"
        );
        let json = call(&["table", "--n-max", "1", "--a", "2", "--format", "json"]).1;
        assert_eq!(
            json,
            "[{\"n\":0,\"value\":\"1\"},{\"n\":1,\"value\":\"6\"}]\n"
        );
    }

    #[test]
    fn asym_outputs() {
        let (code, out, _) = call(&["asym", "--n", "100", "--a", "1", "--model", "paper"]);
        assert_eq!(code, 0);
        let diff: f64 = out
            .lines()
            .nth(2)
            .unwrap()
            .split_whitespace()
            .nth(1)
            .unwrap()
            .parse()
            .unwrap();
        assert!((diff - 0.5 * (100.0 * std::f64::consts::PI).ln()).abs() < 1e-9);
        let out = call(&["asym", "--n", "100", "--a", "1", "--model", "singularity"]).1;
        let diff: f64 = out
            .lines()
            .nth(2)
            .unwrap()
            .split_whitespace()
            .nth(1)
            .unwrap()
            .parse()
            .unwrap();
        assert!(diff.abs() < 1e-9);
        assert_eq!(call(&["asym", "--n", "1", "--a", "0"]).0, EXIT_USAGE);
        assert_eq!(call(&["asym", "--n", "0", "--a", "1"]).0, EXIT_USAGE);
    }

    #[test]
    fn simulate_outputs() {
        let (code, out, _) = call(&[
            "simulate",
            "--n",
            "0",
            "--a",
            "2",
            "--samples",
            "100",
            "--seed",
            "7",
        ]);
        assert_eq!(code, 0);
        assert!(out.starts_with(
            "estimate 1.0000000000000000e0\nstd_error 0.0000000000000000e0\nexact 1\n"
        ));
        let args = [
            "simulate",
            "--n",
            "4",
            "--a",
            "3/2",
            "--samples",
            "5000",
            "--seed",
            "9",
            "--chunks",
            "3",
        ];
        assert_eq!(call(&args).1, call(&args).1);
        assert_eq!(call(&["simulate", "--n", "2", "--a", "-1"]).0, EXIT_USAGE);
        assert_eq!(
            call(&["simulate", "--n", "2", "--a", "1", "--samples", "0"]).0,
            EXIT_USAGE
        );
    }
}
