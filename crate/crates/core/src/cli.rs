//! Command-line front end. Exit codes: 0 success, 1 verification failure,
//! 2 input error, 3 no source-sink path.

use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::bat::{bat_enumerate, find_xfc_correct, find_xfc_paper};
use crate::graph::{parse_network, validate_network, Network};
use crate::oracle::{region_census, reliability_exact};
use crate::pathfind::{earliest_path, latest_path, PathResult, WeightJson};
use crate::verify::verify_corpus;
use crate::weight::vector_value;
use crate::Error;

pub const FORMAT_VERSION: &str = "1";

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NO_PATH: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "lexpath", version, about = "Earliest/latest paths and BAT-order audits for binary-state networks")]
pub struct Cli {
    /// Emit machine-readable JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Allow exhaustive scans beyond 24 arcs.
    #[arg(long, global = true)]
    pub force: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Path whose arc vector is first in BAT order (weights 2^(i-1)).
    Earliest { file: PathBuf },
    /// Dijkstra under index-reversed weights 2^(m-i).
    Latest { file: PathBuf },
    /// First connected vector by greedy search.
    Xfc {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = XfcMethod::Correct)]
        method: XfcMethod,
    },
    /// Stream every k-bit state vector in BAT order.
    Enum {
        #[arg(short = 'k')]
        k: usize,
        /// Annotate each vector with its value and connectivity in this network.
        #[arg(long)]
        annotate: Option<PathBuf>,
    },
    /// Census of all vectors split at the earliest and latest path vectors.
    Regions { file: PathBuf },
    /// Exact two-terminal reliability from the per-arc probabilities in the file.
    Reliability {
        file: PathBuf,
        /// Skip the vectors before the earliest path vector.
        #[arg(long)]
        prune: bool,
    },
    /// Check the invariant suite on a seeded random corpus.
    Verify {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        cases: usize,
        /// Prepend the benchmark and diamond networks to the corpus.
        #[arg(long)]
        include_fixtures: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum XfcMethod {
    Paper,
    Correct,
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NoPath | Error::Disconnected => EXIT_NO_PATH,
            _ => EXIT_INPUT,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure { code: EXIT_INPUT, message: e.to_string() }
    }
}

type CmdResult = Result<i32, Failure>;

/// Runs one command, writing results to `out` and diagnostics to `err`.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match dispatch(cli, out, err) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    match &cli.command {
        Command::Earliest { file } => cmd_path(cli, "earliest", file, out, err),
        Command::Latest { file } => cmd_path(cli, "latest", file, out, err),
        Command::Xfc { file, method } => cmd_xfc(cli, file, *method, out, err),
        Command::Enum { k, annotate } => cmd_enum(cli, *k, annotate.as_deref(), out),
        Command::Regions { file } => cmd_regions(cli, file, out, err),
        Command::Reliability { file, prune } => cmd_reliability(cli, file, *prune, out, err),
        Command::Verify { seed, cases, include_fixtures } => cmd_verify(cli, *seed, *cases, *include_fixtures, out),
    }
}

fn load(path: &Path, err: &mut dyn Write) -> Result<Network, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure { code: EXIT_INPUT, message: format!("{}: {e}", path.display()) })?;
    let net = parse_network(&text).map_err(|e| Failure { code: EXIT_INPUT, message: format!("{}: {e}", path.display()) })?;
    for w in validate_network(&net) {
        writeln!(err, "warning: {w}")?;
    }
    Ok(net)
}

fn envelope(command: &str, net: Option<&Network>, result: Value) -> Value {
    json!({
        "command": command,
        "network": net.map(|n| json!({"n": n.n(), "m": n.m(), "source": n.source(), "sink": n.sink()})),
        "result": result,
        "version": FORMAT_VERSION,
    })
}

fn emit_json(out: &mut dyn Write, v: &Value) -> io::Result<()> {
    writeln!(out, "{}", serde_json::to_string(v).expect("json value serialises"))
}

fn describe(p: &PathResult) -> String {
    let nodes: Vec<String> = p.nodes.iter().map(|v| v.to_string()).collect();
    let arcs: Vec<String> = p.arc_ids.iter().map(|a| a.get().to_string()).collect();
    format!("path {}, arcs {{{}}}, weight {}, vector {}", nodes.join("-"), arcs.join(","), p.weight, p.vector)
}

fn cmd_path(cli: &Cli, which: &str, file: &Path, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let net = load(file, err)?;
    let path = if which == "earliest" { earliest_path(&net) } else { latest_path(&net) };
    if cli.json {
        let result = json!({
            "scheme": which,
            "found": path.is_some(),
            "path": path.as_ref().map(PathResult::to_json),
        });
        emit_json(out, &envelope(which, Some(&net), result))?;
    } else {
        match &path {
            Some(p) => {
                writeln!(out, "{}", describe(p))?;
                writeln!(out, "weight binary {}", p.weight.to_bit_string(net.m()))?;
            }
            None => writeln!(out, "no source-sink path")?,
        }
    }
    Ok(if path.is_some() { EXIT_OK } else { EXIT_NO_PATH })
}

fn cmd_xfc(cli: &Cli, file: &Path, method: XfcMethod, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let net = load(file, err)?;
    let correct = find_xfc_correct(&net)?;
    let chosen = match method {
        XfcMethod::Paper => find_xfc_paper(&net)?,
        XfcMethod::Correct => correct.clone(),
    };
    let width = net.m();
    if cli.json {
        let mut result = json!({
            "method": match method { XfcMethod::Paper => "paper", XfcMethod::Correct => "correct" },
            "vector": chosen.to_string(),
            "value": WeightJson::new(&vector_value(&chosen), width),
        });
        if method == XfcMethod::Paper {
            result["correct"] = json!(correct.to_string());
            result["diverges"] = json!(chosen != correct);
        }
        emit_json(out, &envelope("xfc", Some(&net), result))?;
    } else {
        writeln!(out, "{chosen}")?;
        if method == XfcMethod::Paper {
            writeln!(out, "correct {correct}")?;
            writeln!(out, "diverges {}", if chosen != correct { "yes" } else { "no" })?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_enum(cli: &Cli, k: usize, annotate: Option<&Path>, out: &mut dyn Write) -> CmdResult {
    let net = match annotate {
        Some(path) => {
            let net = load(path, &mut io::sink())?;
            if net.m() != k {
                return Err(Failure {
                    code: EXIT_INPUT,
                    message: format!("-k {k} does not match the {} arcs of {}", net.m(), path.display()),
                });
            }
            Some(net)
        }
        None => None,
    };
    let mut out = io::BufWriter::new(out);
    for x in bat_enumerate(k, cli.force)? {
        let connected = net.as_ref().map(|n| n.reaches_sink(|i| x.get(i)));
        if cli.json {
            // one JSON object per line
            let mut row = json!({ "vector": x.to_string() });
            if let Some(c) = connected {
                row["value"] = json!(vector_value(&x).to_decimal());
                row["connected"] = json!(c);
            }
            emit_json(&mut out, &row)?;
        } else {
            match connected {
                Some(c) => writeln!(out, "{x} {} {}", vector_value(&x), if c { "connected" } else { "disconnected" })?,
                None => writeln!(out, "{x}")?,
            }
        }
    }
    out.flush()?;
    Ok(EXIT_OK)
}

fn cmd_regions(cli: &Cli, file: &Path, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let net = load(file, err)?;
    let r = region_census(&net, cli.force)?;
    if cli.json {
        emit_json(out, &envelope("regions", Some(&net), r.to_json()))?;
        return Ok(EXIT_OK);
    }
    writeln!(out, "earliest          {} value {}", r.earliest_vector, r.earliest_value)?;
    writeln!(out, "latest            {} value {}", r.latest_vector, r.latest_value)?;
    writeln!(out, "last disconnected {} value {}", r.last_disconnected_vector, r.last_disconnected_value)?;
    writeln!(out, "max-value path    {} value {}", r.max_value_path_vector, r.max_value_path_value)?;
    writeln!(out, "{:<16} {:>10} {:>10} {:>12} {:>12}", "region", "total", "connected", "disconnected", "simple-paths")?;
    for (name, c) in [("before-earliest", r.before), ("between", r.between), ("after-latest", r.after)] {
        writeln!(out, "{:<16} {:>10} {:>10} {:>12} {:>12}", name, c.total, c.connected, c.disconnected, c.simple_paths)?;
    }
    writeln!(out, "violations: disconnected after latest {}", r.violations.disconnected_after_latest)?;
    writeln!(out, "violations: simple paths after latest {}", r.violations.simple_paths_after_latest)?;
    Ok(EXIT_OK)
}

fn cmd_reliability(cli: &Cli, file: &Path, prune: bool, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let net = load(file, err)?;
    let r = reliability_exact(&net, net.probabilities(), prune, cli.force)?;
    if cli.json {
        let result = json!({
            "probability": r.probability,
            "prune": prune,
            "vectors_evaluated": r.vectors_evaluated,
            "vectors_pruned": r.vectors_pruned,
        });
        emit_json(out, &envelope("reliability", Some(&net), result))?;
    } else {
        writeln!(out, "probability {:.12}", r.probability)?;
        writeln!(out, "vectors evaluated {}", r.vectors_evaluated)?;
        writeln!(out, "vectors pruned {}", r.vectors_pruned)?;
    }
    Ok(EXIT_OK)
}

fn cmd_verify(cli: &Cli, seed: u64, cases: usize, include_fixtures: bool, out: &mut dyn Write) -> CmdResult {
    let report = verify_corpus(seed, cases, include_fixtures);
    if cli.json {
        let result = json!({
            "seed": seed,
            "cases": report.cases,
            "passed": report.passed(),
            "checks": serde_json::to_value(&report.checks).expect("checks serialise"),
        });
        emit_json(out, &envelope("verify", None, result))?;
    } else {
        writeln!(out, "{report}")?;
    }
    Ok(if report.passed() { EXIT_OK } else { EXIT_VERIFY_FAILED })
}
