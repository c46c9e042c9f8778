//! Full-width bulk bitwise operations built from triple-row activation.
//!
//! With a third operand `C`, majority reads as `C(A + B) + !C(AB)`: staging
//! the `CONST0` row as `C` yields `A AND B`, staging `CONST1` yields
//! `A OR B`. The control row is just another memory row, so which logic
//! function runs is decided by what is stored, not by extra circuitry.
//!
//! Every operation copies its operands into the TEMP rows before the
//! destructive activation, so named input rows come out unchanged. The
//! output row must be a DATA row. `AND`, `OR`, `MAJ3` and `NOT` allow the
//! output to alias an input (operands are staged before the write); `XOR`
//! does not, since it parks a partial result in the output row.

use std::fmt;

use crate::substrate::{
    CostReport, MicroOp, MicroProgram, RowGroup, RowId, Subarray, SubstrateError, CONST0, CONST1,
    TEMP_ROWS,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BulkOpKind {
    And,
    Or,
    Not,
    Xor,
    Maj3,
}

impl BulkOpKind {
    pub const ALL: [BulkOpKind; 5] = [
        BulkOpKind::And,
        BulkOpKind::Or,
        BulkOpKind::Not,
        BulkOpKind::Xor,
        BulkOpKind::Maj3,
    ];

    pub fn arity(self) -> usize {
        match self {
            BulkOpKind::Not => 1,
            BulkOpKind::And | BulkOpKind::Or | BulkOpKind::Xor => 2,
            BulkOpKind::Maj3 => 3,
        }
    }

    /// Reference semantics on packed words.
    pub fn eval_word(self, inputs: &[u64]) -> u64 {
        match self {
            BulkOpKind::And => inputs[0] & inputs[1],
            BulkOpKind::Or => inputs[0] | inputs[1],
            BulkOpKind::Not => !inputs[0],
            BulkOpKind::Xor => inputs[0] ^ inputs[1],
            BulkOpKind::Maj3 => {
                let (a, b, c) = (inputs[0], inputs[1], inputs[2]);
                (a & b) | (b & c) | (a & c)
            }
        }
    }
}

impl fmt::Display for BulkOpKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BulkOpKind::And => "AND",
            BulkOpKind::Or => "OR",
            BulkOpKind::Not => "NOT",
            BulkOpKind::Xor => "XOR",
            BulkOpKind::Maj3 => "MAJ3",
        })
    }
}

fn check_input(sub: &Subarray, row: RowId) -> Result<(), SubstrateError> {
    sub.check_row(row)?;
    if sub.group(row) == RowGroup::Temp {
        return Err(SubstrateError::TempOperand { row: row.0 });
    }
    Ok(())
}

fn check_output(sub: &Subarray, row: RowId) -> Result<(), SubstrateError> {
    sub.check_row(row)?;
    if sub.group(row) != RowGroup::Data {
        return Err(SubstrateError::NotDataRow { row: row.0 });
    }
    Ok(())
}

/// `COPY`s staging `rows` into `T0`, `T1`, `T2`, followed by the activation.
fn stage_and_activate(prog: &mut MicroProgram, rows: [RowId; 3]) {
    for (src, dst) in rows.into_iter().zip(TEMP_ROWS) {
        prog.push(MicroOp::Copy { src, dst });
    }
    let [a, b, c] = TEMP_ROWS;
    prog.push(MicroOp::Tra { a, b, c });
}

/// Emits the micro-op sequence for `kind` without touching any subarray.
/// Row roles are not validated here; see [`bulk_op`].
pub fn emit(kind: BulkOpKind, inputs: &[RowId], out: RowId) -> MicroProgram {
    assert_eq!(inputs.len(), kind.arity(), "{kind} takes {} operand(s)", kind.arity());
    let [t0, t1, t2] = TEMP_ROWS;
    let mut prog = Vec::new();
    match kind {
        BulkOpKind::And => {
            stage_and_activate(&mut prog, [inputs[0], inputs[1], CONST0]);
            prog.push(MicroOp::Copy { src: t0, dst: out });
        }
        BulkOpKind::Or => {
            stage_and_activate(&mut prog, [inputs[0], inputs[1], CONST1]);
            prog.push(MicroOp::Copy { src: t0, dst: out });
        }
        BulkOpKind::Maj3 => {
            stage_and_activate(&mut prog, [inputs[0], inputs[1], inputs[2]]);
            prog.push(MicroOp::Copy { src: t0, dst: out });
        }
        BulkOpKind::Not => prog.push(MicroOp::Not {
            src: inputs[0],
            dst: out,
        }),
        BulkOpKind::Xor => {
            // (a | b) & !(a & b)
            let (a, b) = (inputs[0], inputs[1]);
            stage_and_activate(&mut prog, [a, b, CONST1]);
            prog.push(MicroOp::Copy { src: t0, dst: out });
            stage_and_activate(&mut prog, [a, b, CONST0]);
            prog.push(MicroOp::Not { src: t0, dst: t1 });
            prog.push(MicroOp::Copy { src: out, dst: t0 });
            prog.push(MicroOp::Copy { src: CONST0, dst: t2 });
            prog.push(MicroOp::Tra { a: t0, b: t1, c: t2 });
            prog.push(MicroOp::Copy { src: t0, dst: out });
        }
    }
    prog
}

/// Validates row roles, then runs the emitted sequence on `sub`.
pub fn bulk_op(
    sub: &mut Subarray,
    kind: BulkOpKind,
    inputs: &[RowId],
    out: RowId,
) -> Result<CostReport, SubstrateError> {
    if inputs.len() != kind.arity() {
        panic!("{kind} takes {} operand(s), got {}", kind.arity(), inputs.len());
    }
    for &row in inputs {
        check_input(sub, row)?;
    }
    check_output(sub, out)?;
    if kind == BulkOpKind::Xor && inputs.contains(&out) {
        return Err(SubstrateError::AliasedOperand { row: out.0 });
    }
    let prog = emit(kind, inputs, out);
    Ok(sub.run_program(&prog)?.cost)
}

pub fn bulk_and(sub: &mut Subarray, a: RowId, b: RowId, out: RowId) -> Result<CostReport, SubstrateError> {
    bulk_op(sub, BulkOpKind::And, &[a, b], out)
}

pub fn bulk_or(sub: &mut Subarray, a: RowId, b: RowId, out: RowId) -> Result<CostReport, SubstrateError> {
    bulk_op(sub, BulkOpKind::Or, &[a, b], out)
}

pub fn bulk_not(sub: &mut Subarray, a: RowId, out: RowId) -> Result<CostReport, SubstrateError> {
    bulk_op(sub, BulkOpKind::Not, &[a], out)
}

pub fn bulk_xor(sub: &mut Subarray, a: RowId, b: RowId, out: RowId) -> Result<CostReport, SubstrateError> {
    bulk_op(sub, BulkOpKind::Xor, &[a, b], out)
}

pub fn bulk_maj3(
    sub: &mut Subarray,
    a: RowId,
    b: RowId,
    c: RowId,
    out: RowId,
) -> Result<CostReport, SubstrateError> {
    bulk_op(sub, BulkOpKind::Maj3, &[a, b, c], out)
}
