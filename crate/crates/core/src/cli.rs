//! Command implementations for the `tramix` binary.
//!
//! Each command writes its report to a caller-supplied writer so it can be
//! driven from tests. Output is a pure function of the inputs and the
//! [`RunConfig`]; nothing time- or environment-dependent is printed.
//!
//! Exit codes (see [`CliError::exit_code`]):
//!
//! | code | meaning                                            |
//! |------|----------------------------------------------------|
//! | 0    | success                                            |
//! | 1    | duality demo found a mismatch                      |
//! | 2    | command-line usage error (reported by the parser)  |
//! | 3    | trace parse error                                  |
//! | 4    | substrate rejected a micro-op                      |
//! | 5    | expression / binding error                         |
//! | 6    | mixture error (universe, capacity, file format)    |
//! | 7    | I/O error                                          |
//! | 8    | invalid configuration (subarray shape, K cap)      |
//!
//! With `--format json` every line is one JSON object with a `kind` field:
//!
//! * `row`: `{row, group, hex}`, final contents of every row (`run`)
//! * `read`: `{line, row, hex}`, one per `READ` op (`run`)
//! * `cost`: `{tra, copy, not, hostio, total}` (`run`, `compile`)
//! * `op`: `{text}`, one emitted trace line (`compile`)
//! * `compile`: `{expr, result_row, bindings}` (`compile`)
//! * `set`: `{name, kbits, cardinality}` (`demo-duality`)
//! * `duality`: `{op, substrate_cardinality, query_cardinality, tra, matched}` (`demo-duality`)
//! * `verdict`: `{matched}` (`demo-duality`)
//! * `mix`: `{op, arg, result}` (`mix`)
//! * `error`: `{code, line, message}` on failure

use std::collections::BTreeMap;
use std::io::{self, Write};
use std::path::PathBuf;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use crate::migc::{self, CompileError, CompiledProgram, Expr};
use crate::mixture::{self, Layout, Mixture, MixtureError, SetOp, DEFAULT_MAX_KBITS};
use crate::substrate::{BitRow, CostReport, MicroOp, RowGroup, RowId, Subarray, SubstrateError};
use crate::trace::{self, TraceError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Text,
    JsonLines,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(OutputFormat::Text),
            "json" | "jsonl" | "json-lines" => Ok(OutputFormat::JsonLines),
            other => Err(format!("unknown format `{other}` (expected text or json)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub rows: usize,
    pub width: usize,
    pub seed: u64,
    pub format: OutputFormat,
    pub kbits_cap: u32,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            rows: 16,
            width: 64,
            seed: 0,
            format: OutputFormat::Text,
            kbits_cap: DEFAULT_MAX_KBITS,
        }
    }
}

impl RunConfig {
    pub fn subarray(&self) -> Result<Subarray, CliError> {
        Subarray::new(self.rows, self.width).map_err(|e| CliError::Config(e.to_string()))
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("duality check failed: substrate and query results differ")]
    Mismatch,
    #[error(transparent)]
    Trace(#[from] TraceError),
    #[error("{}{source}", line.map(|l| format!("line {l}: ")).unwrap_or_default())]
    Exec {
        line: Option<usize>,
        source: SubstrateError,
    },
    #[error(transparent)]
    Compile(#[from] CompileError),
    #[error(transparent)]
    Mixture(#[from] MixtureError),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("invalid configuration: {0}")]
    Config(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Mismatch => 1,
            CliError::Trace(_) => 3,
            CliError::Exec { .. } => 4,
            CliError::Compile(CompileError::Substrate(_)) => 4,
            CliError::Compile(_) => 5,
            CliError::Mixture(MixtureError::Io(_)) | CliError::Io(_) => 7,
            CliError::Mixture(MixtureError::KbitsTooLarge { .. }) | CliError::Config(_) => 8,
            CliError::Mixture(_) => 6,
        }
    }

    /// Source line the error refers to, when there is one.
    pub fn line(&self) -> Option<usize> {
        match self {
            CliError::Trace(e) => Some(e.line),
            CliError::Exec { line, .. } => *line,
            _ => None,
        }
    }

    /// Writes the error in the selected format.
    pub fn report(&self, format: OutputFormat, out: &mut dyn Write) -> io::Result<()> {
        match format {
            OutputFormat::Text => writeln!(out, "error: {self}"),
            OutputFormat::JsonLines => emit(
                out,
                &json!({"kind": "error", "code": self.exit_code(), "line": self.line(), "message": self.to_string()}),
            ),
        }
    }
}

fn emit<T: Serialize>(out: &mut dyn Write, value: &T) -> io::Result<()> {
    serde_json::to_writer(&mut *out, value)?;
    out.write_all(b"\n")
}

fn cost_json(cost: &CostReport) -> serde_json::Value {
    json!({
        "kind": "cost",
        "tra": cost.tra_count,
        "copy": cost.copy_count,
        "not": cost.not_count,
        "hostio": cost.hostio_count,
        "total": cost.total(),
    })
}

fn write_cost(cfg: &RunConfig, cost: &CostReport, out: &mut dyn Write) -> io::Result<()> {
    match cfg.format {
        OutputFormat::Text => writeln!(out, "cost {cost}"),
        OutputFormat::JsonLines => emit(out, &cost_json(cost)),
    }
}

/// Outcome of a successful `run`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunReport {
    pub cost: CostReport,
    pub subarray: Subarray,
}

/// Parses and executes a trace on a fresh subarray, then prints every `READ`
/// result, the final contents of every row and the cost tally.
pub fn cmd_run(trace_text: &str, cfg: &RunConfig, out: &mut dyn Write) -> Result<RunReport, CliError> {
    let mut sub = cfg.subarray()?;
    let lines = trace::parse(trace_text, cfg.width)?;
    let prog: Vec<MicroOp> = lines.iter().map(|l| l.op.clone()).collect();
    let exec = sub.run_program(&prog).map_err(|e| CliError::Exec {
        line: e.op_index().map(|i| lines[i].line),
        source: e.root().clone(),
    })?;
    for (index, row) in &exec.reads {
        let src = match &prog[*index] {
            MicroOp::HostRead { src } => *src,
            _ => unreachable!("reads only come from READ ops"),
        };
        let line = lines[*index].line;
        match cfg.format {
            OutputFormat::Text => writeln!(out, "read line {line} row {src}: {}", row.to_hex())?,
            OutputFormat::JsonLines => emit(
                out,
                &json!({"kind": "read", "line": line, "row": src.0, "hex": row.to_hex()}),
            )?,
        }
    }
    for r in 0..sub.rows() {
        let row = RowId(r);
        let hex = sub.read_row(row).expect("row in range").to_hex();
        let group = RowGroup::of(row);
        match cfg.format {
            OutputFormat::Text => writeln!(out, "row {r:>4} {:<6} {hex}", group.to_string())?,
            OutputFormat::JsonLines => emit(out, &json!({"kind": "row", "row": r, "group": group, "hex": hex}))?,
        }
    }
    write_cost(cfg, &exec.cost, out)?;
    Ok(RunReport {
        cost: exec.cost,
        subarray: sub,
    })
}

/// Parses `a=1,b=0` into a variable assignment.
pub fn parse_assignment(text: &str) -> Result<BTreeMap<String, bool>, CliError> {
    let mut out = BTreeMap::new();
    for pair in text.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()) {
        let bad = || {
            CliError::Compile(CompileError::Parse {
                pos: 0,
                msg: format!("assignment `{pair}` is not of the form name=0|1"),
            })
        };
        let (name, bit) = pair.split_once('=').ok_or_else(bad)?;
        let bit = match bit.trim() {
            "0" => false,
            "1" => true,
            _ => return Err(bad()),
        };
        out.insert(name.trim().to_string(), bit);
    }
    Ok(out)
}

/// Compiles an expression and prints the resulting trace.
///
/// Without `bindings_text`, variables are bound to consecutive DATA rows in
/// order of first appearance. With `assign_text` the trace is made
/// self-contained: `WRITE`s of each input (bit replicated across the row)
/// come first and a `READ` of the result row comes last.
pub fn cmd_compile(
    expr_text: &str,
    bindings_text: Option<&str>,
    assign_text: Option<&str>,
    cfg: &RunConfig,
    out: &mut dyn Write,
) -> Result<CompiledProgram, CliError> {
    cfg.subarray()?;
    let expr: Expr = expr_text.parse()?;
    let bindings = match bindings_text {
        Some(text) => migc::parse_bindings(text)?,
        None => migc::sequential_bindings(&expr.vars()),
    };
    let cp = migc::lower(&expr, &bindings, cfg.rows)?;

    let mut trace_ops = Vec::new();
    if let Some(text) = assign_text {
        let assignment = parse_assignment(text)?;
        for (name, &row) in &cp.bindings {
            let bit = *assignment
                .get(name)
                .ok_or_else(|| CompileError::MissingAssignment(name.clone()))?;
            let bits = if bit { BitRow::ones(cfg.width) } else { BitRow::zeros(cfg.width) };
            trace_ops.push(MicroOp::HostWrite { dst: row, bits });
        }
    }
    trace_ops.extend(cp.prog.iter().cloned());
    if assign_text.is_some() {
        trace_ops.push(MicroOp::HostRead { src: cp.result_row });
    }

    let binding_list = cp
        .bindings
        .iter()
        .map(|(n, r)| format!("{n}={r}"))
        .collect::<Vec<_>>()
        .join(",");
    match cfg.format {
        OutputFormat::Text => {
            writeln!(out, "# expr {expr}")?;
            writeln!(out, "# bindings {binding_list}")?;
            writeln!(out, "# result_row {}", cp.result_row)?;
            writeln!(out, "# cost {}", cp.cost)?;
            out.write_all(trace::format(&trace_ops).as_bytes())?;
        }
        OutputFormat::JsonLines => {
            emit(
                out,
                &json!({"kind": "compile", "expr": expr.to_string(), "result_row": cp.result_row.0, "bindings": binding_list}),
            )?;
            for op in &trace_ops {
                emit(out, &json!({"kind": "op", "text": op.to_string()}))?;
            }
            emit(out, &cost_json(&cp.cost))?;
        }
    }
    Ok(cp)
}

/// One line of the duality report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualityLine {
    pub op: String,
    pub substrate_cardinality: u64,
    pub query_cardinality: u64,
    pub tra: u64,
    pub matched: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualityReport {
    pub kbits: u32,
    pub cardinality_a: u64,
    pub cardinality_b: u64,
    pub lines: Vec<DualityLine>,
}

impl DualityReport {
    pub fn matched(&self) -> bool {
        self.lines.iter().all(|l| l.matched)
    }
}

/// Runs one duality check: `op` computed as row-wide bulk logic on the
/// substrate over the horizontal placement, against the set obtained by
/// walking both stores value by value and applying the membership predicate.
pub fn duality_check(a: &Mixture, b: &Mixture, op: SetOp, width: usize) -> Result<DualityLine, CliError> {
    let (on_substrate, cost) = mixture::set_op_on_substrate(a, b, op, Layout::Horizontal, width)?;
    let mut query_cardinality = 0;
    let mut matched = true;
    for (((_, in_a), (_, in_b)), (_, got)) in a.vertical().zip(b.vertical()).zip(on_substrate.vertical()) {
        let want = op.member(in_a, in_b);
        query_cardinality += want as u64;
        matched &= want == got;
    }
    Ok(DualityLine {
        op: op.to_string(),
        substrate_cardinality: on_substrate.cardinality(),
        query_cardinality,
        tra: cost.tra_count,
        matched,
    })
}

/// Builds two random stores over `[0, 2^kbits)` from the configured seed
/// and checks union, intersection and difference both ways.
pub fn cmd_demo_duality(kbits: u32, cfg: &RunConfig, out: &mut dyn Write) -> Result<DualityReport, CliError> {
    if kbits > cfg.kbits_cap {
        return Err(MixtureError::KbitsTooLarge {
            kbits,
            cap: cfg.kbits_cap,
        }
        .into());
    }
    if cfg.width == 0 {
        return Err(CliError::Config("width must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let a = Mixture::random_with_cap(kbits, cfg.kbits_cap, &mut rng)?;
    let b = Mixture::random_with_cap(kbits, cfg.kbits_cap, &mut rng)?;
    let mut report = DualityReport {
        kbits,
        cardinality_a: a.cardinality(),
        cardinality_b: b.cardinality(),
        lines: Vec::new(),
    };
    match cfg.format {
        OutputFormat::Text => {
            writeln!(out, "duality K={kbits} seed={} width={}", cfg.seed, cfg.width)?;
            writeln!(out, "set a cardinality={}", report.cardinality_a)?;
            writeln!(out, "set b cardinality={}", report.cardinality_b)?;
        }
        OutputFormat::JsonLines => {
            emit(out, &json!({"kind": "set", "name": "a", "kbits": kbits, "cardinality": report.cardinality_a}))?;
            emit(out, &json!({"kind": "set", "name": "b", "kbits": kbits, "cardinality": report.cardinality_b}))?;
        }
    }
    for op in SetOp::ALL {
        let line = duality_check(&a, &b, op, cfg.width)?;
        match cfg.format {
            OutputFormat::Text => writeln!(
                out,
                "{:<10} substrate={} query={} tra={} {}",
                line.op,
                line.substrate_cardinality,
                line.query_cardinality,
                line.tra,
                if line.matched { "MATCH" } else { "MISMATCH" }
            )?,
            OutputFormat::JsonLines => {
                let mut value = serde_json::to_value(&line).expect("plain struct");
                value["kind"] = json!("duality");
                emit(out, &value)?;
            }
        }
        report.lines.push(line);
    }
    let matched = report.matched();
    match cfg.format {
        OutputFormat::Text => writeln!(out, "{}", if matched { "MATCH" } else { "MISMATCH" })?,
        OutputFormat::JsonLines => emit(out, &json!({"kind": "verdict", "matched": matched}))?,
    }
    if matched {
        Ok(report)
    } else {
        Err(CliError::Mismatch)
    }
}

/// Operations on `MIX1` files.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MixCommand {
    /// Creates (or overwrites) `path` with the given members.
    New { path: PathBuf, kbits: u32, values: Vec<u64> },
    Insert { path: PathBuf, values: Vec<u64> },
    Contains { path: PathBuf, value: u64 },
    Rank { path: PathBuf, value: u64 },
    Select { path: PathBuf, k: u64 },
    /// `out = a op b`.
    Combine { op: SetOp, a: PathBuf, b: PathBuf, out: PathBuf },
    /// Prints `K`, cardinality and members.
    Show { path: PathBuf },
}

fn load(path: &PathBuf, cap: u32) -> Result<Mixture, CliError> {
    let bytes = std::fs::read(path)?;
    Ok(Mixture::from_bytes_with_cap(&bytes, cap)?)
}

fn store(path: &PathBuf, m: &Mixture) -> Result<(), CliError> {
    std::fs::write(path, m.to_bytes())?;
    Ok(())
}

pub fn cmd_mix(cmd: &MixCommand, cfg: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let (op, arg, result): (&str, serde_json::Value, serde_json::Value) = match cmd {
        MixCommand::New { path, kbits, values } => {
            let mut m = Mixture::with_cap(*kbits, cfg.kbits_cap)?;
            for &v in values {
                m.insert(v)?;
            }
            store(path, &m)?;
            ("new", json!(kbits), json!(m.cardinality()))
        }
        MixCommand::Insert { path, values } => {
            let mut m = load(path, cfg.kbits_cap)?;
            for &v in values {
                m.insert(v)?;
            }
            store(path, &m)?;
            ("insert", json!(values), json!(m.cardinality()))
        }
        MixCommand::Contains { path, value } => {
            let m = load(path, cfg.kbits_cap)?;
            ("contains", json!(value), json!(m.contains(*value)?))
        }
        MixCommand::Rank { path, value } => {
            let m = load(path, cfg.kbits_cap)?;
            ("rank", json!(value), json!(m.rank(*value)?))
        }
        MixCommand::Select { path, k } => {
            let m = load(path, cfg.kbits_cap)?;
            ("select", json!(k), json!(m.select(*k)?))
        }
        MixCommand::Combine { op, a, b, out: dst } => {
            let (ma, mb) = (load(a, cfg.kbits_cap)?, load(b, cfg.kbits_cap)?);
            let m = ma.combine(&mb, *op)?;
            store(dst, &m)?;
            let name = match op {
                SetOp::Union => "union",
                SetOp::Intersect => "intersect",
                SetOp::Difference => "difference",
            };
            (name, json!(dst.display().to_string()), json!(m.cardinality()))
        }
        MixCommand::Show { path } => {
            let m = load(path, cfg.kbits_cap)?;
            let members: Vec<u64> = m.members().collect();
            ("show", json!(m.kbits()), json!(members))
        }
    };
    match cfg.format {
        OutputFormat::Text => match (op, &result) {
            ("show", serde_json::Value::Array(members)) => {
                let list: Vec<String> = members.iter().map(|v| v.to_string()).collect();
                writeln!(out, "K={} cardinality={} members=[{}]", arg, members.len(), list.join(","))?
            }
            ("new" | "insert" | "union" | "intersect" | "difference", _) => writeln!(out, "cardinality {result}")?,
            _ => writeln!(out, "{result}")?,
        },
        OutputFormat::JsonLines => emit(out, &json!({"kind": "mix", "op": op, "arg": arg, "result": result}))?,
    }
    Ok(())
}
