//! Line-oriented text encoding of micro-op programs.
//!
//! ```text
//! # stage two operands and the CONST0 control row, then activate
//! COPY 5 2
//! COPY 6 3
//! COPY 0 4
//! TRA 2 3 4
//! READ 2
//! ```
//!
//! One op per line; `#` starts a comment; blank lines are ignored. Row
//! operands are decimal. `WRITE` takes a hex word of exactly `ceil(W/4)`
//! digits where column 0 is the most significant bit of the `W`-bit value.

use thiserror::Error;

use crate::substrate::{BitRow, MicroOp, RowId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct TraceError {
    pub line: usize,
    pub kind: TraceErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TraceErrorKind {
    #[error("unknown mnemonic `{0}`")]
    UnknownOp(String),
    #[error("`{op}` takes {expected} operand(s), found {found}")]
    Arity {
        op: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("invalid row number `{0}`")]
    BadRow(String),
    #[error("invalid hex word `{text}` for width {width}")]
    BadHex { text: String, width: usize },
}

/// A parsed op with the 1-based source line it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceLine {
    pub line: usize,
    pub op: MicroOp,
}

/// Parses a trace for a subarray whose rows are `width` bits wide.
pub fn parse(text: &str, width: usize) -> Result<Vec<TraceLine>, TraceError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let op = parse_op(body, width).map_err(|kind| TraceError { line, kind })?;
        out.push(TraceLine { line, op });
    }
    Ok(out)
}

/// Parses a trace and drops line information.
pub fn parse_program(text: &str, width: usize) -> Result<Vec<MicroOp>, TraceError> {
    Ok(parse(text, width)?.into_iter().map(|l| l.op).collect())
}

fn parse_op(body: &str, width: usize) -> Result<MicroOp, TraceErrorKind> {
    let mut fields = body.split_whitespace();
    let mnemonic = fields.next().unwrap_or_default();
    let args: Vec<&str> = fields.collect();
    let (name, arity) = match mnemonic.to_ascii_uppercase().as_str() {
        "COPY" => ("COPY", 2),
        "TRA" => ("TRA", 3),
        "NOT" => ("NOT", 2),
        "WRITE" => ("WRITE", 2),
        "READ" => ("READ", 1),
        _ => return Err(TraceErrorKind::UnknownOp(mnemonic.to_string())),
    };
    if args.len() != arity {
        return Err(TraceErrorKind::Arity {
            op: name,
            expected: arity,
            found: args.len(),
        });
    }
    let row = |s: &str| {
        s.parse::<usize>()
            .map(RowId)
            .map_err(|_| TraceErrorKind::BadRow(s.to_string()))
    };
    Ok(match name {
        "COPY" => MicroOp::Copy {
            src: row(args[0])?,
            dst: row(args[1])?,
        },
        "TRA" => MicroOp::Tra {
            a: row(args[0])?,
            b: row(args[1])?,
            c: row(args[2])?,
        },
        "NOT" => MicroOp::Not {
            src: row(args[0])?,
            dst: row(args[1])?,
        },
        "WRITE" => {
            let hex = args[1].trim_start_matches("0x").trim_start_matches("0X");
            let bits = BitRow::from_hex(width, hex).ok_or_else(|| TraceErrorKind::BadHex {
                text: args[1].to_string(),
                width,
            })?;
            MicroOp::HostWrite {
                dst: row(args[0])?,
                bits,
            }
        }
        _ => MicroOp::HostRead { src: row(args[0])? },
    })
}

/// Renders a program, one op per line, with a trailing newline.
pub fn format(prog: &[MicroOp]) -> String {
    let mut out = String::new();
    for op in prog {
        out.push_str(&op.to_string());
        out.push('\n');
    }
    out
}
