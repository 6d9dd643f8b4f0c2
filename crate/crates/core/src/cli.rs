//! Command-line front end. Every subcommand reads and writes JSON, exact
//! values travel as rational strings, and the process exit code is
//! `0` on success, `1` on a usage or input error and `2` when a
//! verification fails or two evaluation methods disagree.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::bellman::lambda_w_tiles;
use crate::dyadic::{DyadicInterval, DyadicPoint};
use crate::error::{Error, Result};
use crate::form_direct::{lambda_w_direct_capped, DEFAULT_ORACLE_MAX_RESOLUTION};
use crate::io::FunctionFile;
use crate::scalar;
use crate::stepfun::{frequency_count, walsh_packet, FreqIndex};
use crate::verify::search::{search_extremal, SearchConfig};
use crate::verify::suite::{run_suite, CheckGroup, SuiteConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_FAILED: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "walshform", version, about = "Exact evaluation and verification of the Walsh-model trilinear form")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate Λ_W on a function file.
    Evaluate(EvaluateArgs),
    /// Run the exact property suite on random inputs.
    Verify(VerifyArgs),
    /// Hill-climb for large |Λ_W| / (‖F₁‖₂‖F₂‖₄‖F₃‖₄).
    Search(SearchArgs),
    /// Dump the ±1 table of every wave packet on an interval.
    Packets(PacketsArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Direct,
    Tiles,
    Both,
}

#[derive(Debug, Clone, clap::Args)]
pub struct EvaluateArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = Method::Both)]
    pub method: Method,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long = "oracle-max-M", default_value_t = DEFAULT_ORACLE_MAX_RESOLUTION)]
    pub oracle_max_m: u32,
}

#[derive(Debug, Clone, clap::Args)]
pub struct VerifyArgs {
    #[arg(long = "M", default_value_t = 2)]
    pub m: u32,
    #[arg(long, default_value_t = 50)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Comma-separated subset of: packets, decomposition, lemma,
    /// telescoping, boundary, sandwich, bound.
    #[arg(long, value_delimiter = ',')]
    pub checks: Vec<CheckGroup>,
    #[arg(long)]
    pub report: Option<PathBuf>,
    #[arg(long = "oracle-max-M", default_value_t = DEFAULT_ORACLE_MAX_RESOLUTION)]
    pub oracle_max_m: u32,
    /// Allow `--oracle-max-M` above the hard cap.
    #[arg(long)]
    pub oracle_override: bool,
    /// Report counterexamples as found, without shrinking them.
    #[arg(long)]
    pub no_minimize: bool,
}

#[derive(Debug, Clone, clap::Args)]
pub struct SearchArgs {
    #[arg(long = "M", default_value_t = 3)]
    pub m: u32,
    #[arg(long, default_value_t = 10_000)]
    pub iters: u64,
    #[arg(long, default_value_t = 10)]
    pub restarts: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, clap::Args)]
pub struct PacketsArgs {
    #[arg(long = "M")]
    pub m: u32,
    /// Interval as `k:l`, meaning `[2^-k l, 2^-k (l+1))`.
    #[arg(long, default_value = "0:0")]
    pub interval: String,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

/// Result of one invocation: the exit code and what goes to each stream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }
}

fn error_json(kind: &str, message: &str) -> String {
    json!({ "error": { "kind": kind, "message": message } }).to_string()
}

fn input_error(e: &Error) -> Outcome {
    Outcome {
        code: EXIT_INPUT,
        stdout: String::new(),
        stderr: error_json(e.kind(), &e.to_string()),
    }
}

/// Writes `text` to `path`, or returns it for stdout when there is no path.
fn emit(path: Option<&Path>, text: String) -> Result<String> {
    match path {
        Some(p) => {
            std::fs::write(p, text + "\n").map_err(|e| Error::Io(format!("{}: {e}", p.display())))?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

#[derive(Serialize)]
struct EvaluateOutput {
    #[serde(rename = "M")]
    resolution: u32,
    lambda_exact: String,
    lambda_approx: String,
    methods: BTreeMap<&'static str, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    agree: Option<bool>,
    timings_ms: BTreeMap<&'static str, f64>,
}

fn evaluate(args: &EvaluateArgs) -> Result<(i32, String)> {
    let triple = FunctionFile::read(&args.input)?;
    let mut methods = BTreeMap::new();
    let mut timings = BTreeMap::new();
    let mut values = Vec::new();
    if matches!(args.method, Method::Direct | Method::Both) {
        let start = Instant::now();
        let v = lambda_w_direct_capped(&triple, args.oracle_max_m)?;
        timings.insert("direct", ms(start));
        methods.insert("direct", scalar::render(&v));
        values.push(v);
    }
    if matches!(args.method, Method::Tiles | Method::Both) {
        let start = Instant::now();
        let v = lambda_w_tiles(&triple)?;
        timings.insert("tiles", ms(start));
        methods.insert("tiles", scalar::render(&v));
        values.push(v);
    }
    let agree = (args.method == Method::Both).then(|| values[0] == values[1]);
    let lambda = values.last().expect("at least one method");
    let out = EvaluateOutput {
        resolution: triple.resolution(),
        lambda_exact: scalar::render(lambda),
        lambda_approx: scalar::to_decimal(lambda),
        methods,
        agree,
        timings_ms: timings,
    };
    let code = if agree == Some(false) { EXIT_FAILED } else { EXIT_OK };
    let text = serde_json::to_string_pretty(&out).expect("output serialises");
    Ok((code, emit(args.output.as_deref(), text)?))
}

pub fn cmd_evaluate(args: &EvaluateArgs) -> Outcome {
    match evaluate(args) {
        Ok((code, stdout)) => Outcome {
            code,
            stdout,
            stderr: String::new(),
        },
        Err(e) => input_error(&e),
    }
}

pub fn suite_config(args: &VerifyArgs) -> SuiteConfig {
    let mut cfg = SuiteConfig::new(args.m, args.trials, args.seed);
    if !args.checks.is_empty() {
        let mut checks = args.checks.clone();
        checks.sort();
        checks.dedup();
        cfg.checks = checks;
    }
    cfg.oracle_max_resolution = args.oracle_max_m;
    cfg.oracle_override = args.oracle_override;
    cfg.minimize = !args.no_minimize;
    cfg
}

pub fn cmd_verify(args: &VerifyArgs) -> Outcome {
    let run = || -> Result<(i32, String)> {
        let report = run_suite(&suite_config(args))?;
        let code = if report.overall { EXIT_OK } else { EXIT_FAILED };
        Ok((code, emit(args.report.as_deref(), report.to_json())?))
    };
    match run() {
        Ok((code, stdout)) => Outcome {
            code,
            stdout,
            stderr: String::new(),
        },
        Err(e) => input_error(&e),
    }
}

pub fn cmd_search(args: &SearchArgs) -> Outcome {
    let run = || -> Result<(i32, String)> {
        let result = search_extremal(&SearchConfig::new(args.m, args.iters, args.restarts, args.seed))?;
        let code = if result.exact_recheck { EXIT_OK } else { EXIT_FAILED };
        Ok((code, emit(args.output.as_deref(), result.to_json())?))
    };
    match run() {
        Ok((code, stdout)) => Outcome {
            code,
            stdout,
            stderr: String::new(),
        },
        Err(e) => input_error(&e),
    }
}

/// Parses `k:l` into a dyadic interval inside `[0,1)` no finer than `m`.
pub fn parse_interval(spec: &str, m: u32) -> Result<DyadicInterval> {
    let bad = || Error::Parse(format!("interval {spec:?}: expected k:l with 0 ≤ k ≤ M and 0 ≤ l < 2^k"));
    let (k, l) = spec.split_once(':').ok_or_else(bad)?;
    let k: u32 = k.trim().parse().map_err(|_| bad())?;
    let l: u64 = l.trim().parse().map_err(|_| bad())?;
    if k > m || l >= 1u64 << k {
        return Err(bad());
    }
    Ok(DyadicInterval::new(k as i32, l))
}

/// Row `n` holds `w_{I,n}` on the cells of `I` at resolution `m`.
pub fn packet_table(m: u32, i: DyadicInterval) -> Result<Vec<Vec<i8>>> {
    let cells = i.cells(m)?;
    (0..frequency_count(m, i))
        .map(|n| {
            cells
                .clone()
                .map(|c| walsh_packet(i, FreqIndex(n), DyadicPoint::new(m, c)?))
                .collect()
        })
        .collect()
}

pub fn cmd_packets(args: &PacketsArgs) -> Outcome {
    let run = || -> Result<String> {
        if args.m > 12 {
            return Err(Error::Config(format!("M={} gives an unreasonably large table", args.m)));
        }
        let i = parse_interval(&args.interval, args.m)?;
        let table = packet_table(args.m, i)?;
        let rows: Vec<String> = table
            .iter()
            .map(|r| serde_json::to_string(r).expect("integers serialise"))
            .collect();
        emit(args.output.as_deref(), format!("[\n  {}\n]", rows.join(",\n  ")))
    };
    match run() {
        Ok(stdout) => Outcome::ok(stdout),
        Err(e) => input_error(&e),
    }
}

pub fn execute(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Evaluate(a) => cmd_evaluate(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Search(a) => cmd_search(a),
        Command::Packets(a) => cmd_packets(a),
    }
}

/// Parses `args` (program name first) and runs the subcommand.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(e) => match e.kind() {
            clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => Outcome::ok(e.to_string()),
            _ => Outcome {
                code: EXIT_INPUT,
                stdout: String::new(),
                stderr: error_json("usage", e.to_string().trim_end()),
            },
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interval_specs() {
        assert_eq!(parse_interval("0:0", 2).unwrap(), DyadicInterval::unit());
        assert_eq!(parse_interval(" 2 : 3 ", 2).unwrap(), DyadicInterval::new(2, 3));
        for bad in ["", "1", "1:2", "3:0", "a:b", "-1:0", "1:-1"] {
            assert!(matches!(parse_interval(bad, 2), Err(Error::Parse(_))), "{bad}");
        }
    }

    #[test]
    fn packet_table_examples() {
        assert_eq!(packet_table(1, DyadicInterval::unit()).unwrap(), vec![vec![1, 1], vec![1, -1]]);
        for m in 0..=4 {
            for k in 0..=m as i32 {
                for l in 0..1u64 << k {
                    let table = packet_table(m, DyadicInterval::new(k, l)).unwrap();
                    let size = 1usize << (m - k as u32);
                    assert_eq!(table.len(), size);
                    assert!(table[0].iter().all(|&v| v == 1));
                    for a in 0..size {
                        for b in 0..size {
                            let dot: i64 = table[a].iter().zip(&table[b]).map(|(x, y)| i64::from(x * y)).sum();
                            assert_eq!(dot, if a == b { size as i64 } else { 0 });
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn flags_parse() {
        let cli = Cli::try_parse_from([
            "walshform", "verify", "--M", "3", "--checks", "lemma,bound", "--oracle-max-M", "4", "--seed", "9",
        ])
        .unwrap();
        let Command::Verify(v) = cli.command else { panic!("wrong subcommand") };
        let cfg = suite_config(&v);
        assert_eq!((cfg.resolution, cfg.seed, cfg.oracle_max_resolution), (3, 9, 4));
        assert_eq!(cfg.checks, vec![CheckGroup::Lemma, CheckGroup::Bound]);
        assert!(Cli::try_parse_from(["walshform", "verify", "--checks", "nope"]).is_err());
        assert!(Cli::try_parse_from(["walshform", "evaluate", "--method", "tiles"]).is_err());
    }

    #[test]
    fn usage_errors_are_json() {
        let out = run(["walshform", "packets"]);
        assert_eq!(out.code, EXIT_INPUT);
        let v: serde_json::Value = serde_json::from_str(&out.stderr).unwrap();
        assert_eq!(v["error"]["kind"], "usage");
        assert_eq!(run(["walshform", "--help"]).code, EXIT_OK);
    }
}
