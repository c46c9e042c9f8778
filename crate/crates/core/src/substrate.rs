//! Idealized DRAM subarray with row-granularity micro-ops.
//!
//! A [`Subarray`] is an `R x W` bit grid. Every row carries a fixed
//! designation ([`RowGroup`]):
//!
//! | row        | group    |
//! |------------|----------|
//! | 0          | `CONST0` |
//! | 1          | `CONST1` |
//! | 2, 3, 4    | `TEMP`   |
//! | 5 ..       | `DATA`   |
//!
//! The constant rows can be read by any micro-op but never written. The
//! central primitive is triple-row activation ([`MicroOp::Tra`]): every
//! column of the three activated rows settles to the bitwise majority of
//! the three original bits, and all three rows keep that result.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// Smallest legal row count (2 constant rows, 3 temp rows, 1 data row).
pub const MIN_ROWS: usize = 6;
/// Row that always reads as all zeros.
pub const CONST0: RowId = RowId(0);
/// Row that always reads as all ones.
pub const CONST1: RowId = RowId(1);
/// Staging rows for TRA operands, in allocation order.
pub const TEMP_ROWS: [RowId; 3] = [RowId(2), RowId(3), RowId(4)];
/// First row designated `DATA`.
pub const FIRST_DATA_ROW: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubstrateError {
    #[error("subarray of {rows}x{width} is too small (need at least {MIN_ROWS} rows and 1 column)")]
    DimensionTooSmall { rows: usize, width: usize },
    #[error("row {row} is out of range for a subarray with {rows} rows")]
    OutOfRange { row: usize, rows: usize },
    #[error("row {row} is a constant row and cannot be written")]
    ConstantRowWrite { row: usize },
    #[error("aliased operands: row {row} appears more than once")]
    AliasedOperand { row: usize },
    #[error("row {row} must be a DATA row")]
    NotDataRow { row: usize },
    #[error("row {row} is a TEMP row and would be clobbered by operand staging")]
    TempOperand { row: usize },
    #[error("host word has {got} bits, subarray rows have {expected}")]
    WidthMismatch { expected: usize, got: usize },
    #[error("op {index}: {source}")]
    Program {
        index: usize,
        #[source]
        source: Box<SubstrateError>,
    },
}

impl SubstrateError {
    /// Index of the failing op when the error came out of [`Subarray::run_program`].
    pub fn op_index(&self) -> Option<usize> {
        match self {
            SubstrateError::Program { index, .. } => Some(*index),
            _ => None,
        }
    }

    /// The underlying error, stripped of program context.
    pub fn root(&self) -> &SubstrateError {
        match self {
            SubstrateError::Program { source, .. } => source.root(),
            other => other,
        }
    }
}

/// Ordinal of a row inside a subarray.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct RowId(pub usize);

impl RowId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for RowId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<usize> for RowId {
    fn from(index: usize) -> Self {
        RowId(index)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum RowGroup {
    Data,
    Const0,
    Const1,
    Temp,
    Neg,
}

impl RowGroup {
    /// Designation of `row` under the fixed scheme. `NEG` is never assigned:
    /// negation is a micro-op, not a row property.
    pub fn of(row: RowId) -> RowGroup {
        match row.0 {
            0 => RowGroup::Const0,
            1 => RowGroup::Const1,
            2..=4 => RowGroup::Temp,
            _ => RowGroup::Data,
        }
    }

    pub fn is_constant(self) -> bool {
        matches!(self, RowGroup::Const0 | RowGroup::Const1)
    }
}

impl fmt::Display for RowGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            RowGroup::Data => "DATA",
            RowGroup::Const0 => "CONST0",
            RowGroup::Const1 => "CONST1",
            RowGroup::Temp => "TEMP",
            RowGroup::Neg => "NEG",
        };
        f.write_str(name)
    }
}

/// A `W`-bit row value. Column `j` lives in bit `j % 64` of word `j / 64`;
/// bits past `width` in the last word are always zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitRow {
    width: usize,
    words: Vec<u64>,
}

impl BitRow {
    pub fn zeros(width: usize) -> Self {
        BitRow {
            width,
            words: vec![0; width.div_ceil(64)],
        }
    }

    pub fn ones(width: usize) -> Self {
        let mut row = BitRow {
            width,
            words: vec![u64::MAX; width.div_ceil(64)],
        };
        row.mask_tail();
        row
    }

    /// Builds a row from packed words, clearing any bits past `width`.
    pub fn from_words(width: usize, mut words: Vec<u64>) -> Self {
        words.resize(width.div_ceil(64), 0);
        let mut row = BitRow { width, words };
        row.mask_tail();
        row
    }

    /// Builds a row from a single word (columns `0..min(width, 64)`).
    pub fn from_u64(width: usize, value: u64) -> Self {
        BitRow::from_words(width, vec![value])
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut row = BitRow::zeros(bits.len());
        for (col, &bit) in bits.iter().enumerate() {
            row.set(col, bit);
        }
        row
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn get(&self, col: usize) -> bool {
        assert!(col < self.width, "column {col} out of range");
        self.words[col / 64] >> (col % 64) & 1 == 1
    }

    pub fn set(&mut self, col: usize, bit: bool) {
        assert!(col < self.width, "column {col} out of range");
        let mask = 1u64 << (col % 64);
        if bit {
            self.words[col / 64] |= mask;
        } else {
            self.words[col / 64] &= !mask;
        }
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Hex rendering used by the trace format: `ceil(W/4)` digits, column 0
    /// is the most significant bit of the padded number.
    pub fn to_hex(&self) -> String {
        let digits = self.width.div_ceil(4);
        let pad = digits * 4 - self.width;
        let mut out = String::with_capacity(digits);
        for d in 0..digits {
            let mut nibble = 0u32;
            for k in 0..4 {
                // position within the padded big-endian number
                let pos = d * 4 + k;
                let bit = pos >= pad && self.get(pos - pad);
                nibble = (nibble << 1) | bit as u32;
            }
            out.push(char::from_digit(nibble, 16).unwrap().to_ascii_uppercase());
        }
        out
    }

    /// Inverse of [`BitRow::to_hex`]. The digit count must be exactly
    /// `ceil(width/4)` and padding bits must be zero.
    pub fn from_hex(width: usize, text: &str) -> Option<Self> {
        let digits = width.div_ceil(4);
        if text.len() != digits {
            return None;
        }
        let pad = digits * 4 - width;
        let mut row = BitRow::zeros(width);
        for (d, ch) in text.chars().enumerate() {
            let nibble = ch.to_digit(16)?;
            for k in 0..4 {
                let bit = nibble >> (3 - k) & 1 == 1;
                let pos = d * 4 + k;
                if pos < pad {
                    if bit {
                        return None;
                    }
                } else {
                    row.set(pos - pad, bit);
                }
            }
        }
        Some(row)
    }

    fn mask_tail(&mut self) {
        let rem = self.width % 64;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}

impl fmt::Debug for BitRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitRow({}b:{})", self.width, self.to_hex())
    }
}

/// The substrate instruction set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MicroOp {
    Copy { src: RowId, dst: RowId },
    Tra { a: RowId, b: RowId, c: RowId },
    Not { src: RowId, dst: RowId },
    HostWrite { dst: RowId, bits: BitRow },
    HostRead { src: RowId },
}

/// A sequence of micro-ops, executed in order.
pub type MicroProgram = Vec<MicroOp>;

impl fmt::Display for MicroOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MicroOp::Copy { src, dst } => write!(f, "COPY {src} {dst}"),
            MicroOp::Tra { a, b, c } => write!(f, "TRA {a} {b} {c}"),
            MicroOp::Not { src, dst } => write!(f, "NOT {src} {dst}"),
            MicroOp::HostWrite { dst, bits } => write!(f, "WRITE {dst} {}", bits.to_hex()),
            MicroOp::HostRead { src } => write!(f, "READ {src}"),
        }
    }
}

/// Op counts for an executed (or emitted) program.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize)]
pub struct CostReport {
    pub tra_count: u64,
    pub copy_count: u64,
    pub not_count: u64,
    pub hostio_count: u64,
}

impl CostReport {
    pub fn total(&self) -> u64 {
        self.tra_count + self.copy_count + self.not_count + self.hostio_count
    }

    pub fn record(&mut self, op: &MicroOp) {
        match op {
            MicroOp::Copy { .. } => self.copy_count += 1,
            MicroOp::Tra { .. } => self.tra_count += 1,
            MicroOp::Not { .. } => self.not_count += 1,
            MicroOp::HostWrite { .. } | MicroOp::HostRead { .. } => self.hostio_count += 1,
        }
    }

    /// Static tally of a program without executing it.
    pub fn of_program(prog: &[MicroOp]) -> CostReport {
        let mut cost = CostReport::default();
        for op in prog {
            cost.record(op);
        }
        cost
    }
}

impl std::ops::Add for CostReport {
    type Output = CostReport;

    fn add(self, rhs: CostReport) -> CostReport {
        CostReport {
            tra_count: self.tra_count + rhs.tra_count,
            copy_count: self.copy_count + rhs.copy_count,
            not_count: self.not_count + rhs.not_count,
            hostio_count: self.hostio_count + rhs.hostio_count,
        }
    }
}

impl std::ops::AddAssign for CostReport {
    fn add_assign(&mut self, rhs: CostReport) {
        *self = *self + rhs;
    }
}

impl fmt::Display for CostReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "tra={} copy={} not={} hostio={} total={}",
            self.tra_count,
            self.copy_count,
            self.not_count,
            self.hostio_count,
            self.total()
        )
    }
}

/// Result of [`Subarray::run_program`]: op tallies plus every `HOSTREAD`
/// result, tagged with the index of the op that produced it.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Execution {
    pub cost: CostReport,
    pub reads: Vec<(usize, BitRow)>,
}

/// `R x W` bit grid. Rows are stored contiguously, `W.div_ceil(64)` words each.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subarray {
    rows: usize,
    width: usize,
    stride: usize,
    cells: Vec<u64>,
}

impl Subarray {
    pub fn new(rows: usize, width: usize) -> Result<Self, SubstrateError> {
        if rows < MIN_ROWS || width == 0 {
            return Err(SubstrateError::DimensionTooSmall { rows, width });
        }
        let stride = width.div_ceil(64);
        let mut sub = Subarray {
            rows,
            width,
            stride,
            cells: vec![0; rows * stride],
        };
        let ones = BitRow::ones(width);
        sub.row_words_mut(CONST1).copy_from_slice(ones.words());
        Ok(sub)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn group(&self, row: RowId) -> RowGroup {
        RowGroup::of(row)
    }

    /// All `DATA` rows in ascending order.
    pub fn data_rows(&self) -> impl Iterator<Item = RowId> {
        (FIRST_DATA_ROW..self.rows).map(RowId)
    }

    pub fn data_row_count(&self) -> usize {
        self.rows - FIRST_DATA_ROW
    }

    pub fn check_row(&self, row: RowId) -> Result<(), SubstrateError> {
        if row.0 >= self.rows {
            Err(SubstrateError::OutOfRange {
                row: row.0,
                rows: self.rows,
            })
        } else {
            Ok(())
        }
    }

    fn check_writable(&self, row: RowId) -> Result<(), SubstrateError> {
        self.check_row(row)?;
        if RowGroup::of(row).is_constant() {
            return Err(SubstrateError::ConstantRowWrite { row: row.0 });
        }
        Ok(())
    }

    pub fn read_row(&self, row: RowId) -> Result<BitRow, SubstrateError> {
        self.check_row(row)?;
        Ok(BitRow {
            width: self.width,
            words: self.row_words(row).to_vec(),
        })
    }

    /// Host-side write; same checks as `HOSTWRITE` but not tallied.
    pub fn write_row(&mut self, row: RowId, bits: &BitRow) -> Result<(), SubstrateError> {
        self.check_writable(row)?;
        if bits.width() != self.width {
            return Err(SubstrateError::WidthMismatch {
                expected: self.width,
                got: bits.width(),
            });
        }
        self.row_words_mut(row).copy_from_slice(bits.words());
        Ok(())
    }

    pub fn get(&self, row: RowId, col: usize) -> bool {
        assert!(row.0 < self.rows && col < self.width);
        self.cells[row.0 * self.stride + col / 64] >> (col % 64) & 1 == 1
    }

    pub fn set(&mut self, row: RowId, col: usize, bit: bool) -> Result<(), SubstrateError> {
        self.check_writable(row)?;
        assert!(col < self.width, "column {col} out of range");
        let mask = 1u64 << (col % 64);
        let word = &mut self.cells[row.0 * self.stride + col / 64];
        if bit {
            *word |= mask;
        } else {
            *word &= !mask;
        }
        Ok(())
    }

    pub(crate) fn row_words(&self, row: RowId) -> &[u64] {
        &self.cells[row.0 * self.stride..(row.0 + 1) * self.stride]
    }

    fn row_words_mut(&mut self, row: RowId) -> &mut [u64] {
        &mut self.cells[row.0 * self.stride..(row.0 + 1) * self.stride]
    }

    /// Checks `op` against this subarray without executing it.
    pub fn validate(&self, op: &MicroOp) -> Result<(), SubstrateError> {
        match op {
            MicroOp::Copy { src, dst } | MicroOp::Not { src, dst } => {
                if src == dst {
                    return Err(SubstrateError::AliasedOperand { row: src.0 });
                }
                self.check_row(*src)?;
                self.check_writable(*dst)?;
            }
            MicroOp::Tra { a, b, c } => {
                if a == b || a == c {
                    return Err(SubstrateError::AliasedOperand { row: a.0 });
                }
                if b == c {
                    return Err(SubstrateError::AliasedOperand { row: b.0 });
                }
                for row in [a, b, c] {
                    self.check_writable(*row)?;
                }
            }
            MicroOp::HostWrite { dst, bits } => {
                self.check_writable(*dst)?;
                if bits.width() != self.width {
                    return Err(SubstrateError::WidthMismatch {
                        expected: self.width,
                        got: bits.width(),
                    });
                }
            }
            MicroOp::HostRead { src } => self.check_row(*src)?,
        }
        Ok(())
    }

    /// Applies one micro-op. Returns the row for `HOSTREAD`, `None` otherwise.
    /// A rejected op leaves the grid untouched.
    pub fn exec(&mut self, op: &MicroOp) -> Result<Option<BitRow>, SubstrateError> {
        self.validate(op)?;
        let stride = self.stride;
        match op {
            MicroOp::Copy { src, dst } => {
                self.cells
                    .copy_within(src.0 * stride..(src.0 + 1) * stride, dst.0 * stride);
            }
            MicroOp::Not { src, dst } => {
                for w in 0..stride {
                    self.cells[dst.0 * stride + w] = !self.cells[src.0 * stride + w];
                }
                self.mask_row_tail(*dst);
            }
            MicroOp::Tra { a, b, c } => {
                for w in 0..stride {
                    let x = self.cells[a.0 * stride + w];
                    let y = self.cells[b.0 * stride + w];
                    let z = self.cells[c.0 * stride + w];
                    let maj = (x & y) | (y & z) | (x & z);
                    self.cells[a.0 * stride + w] = maj;
                    self.cells[b.0 * stride + w] = maj;
                    self.cells[c.0 * stride + w] = maj;
                }
            }
            MicroOp::HostWrite { dst, bits } => {
                self.row_words_mut(*dst).copy_from_slice(bits.words());
            }
            MicroOp::HostRead { src } => return self.read_row(*src).map(Some),
        }
        Ok(None)
    }

    /// Runs `prog` in order. The first rejected op aborts the run with a
    /// [`SubstrateError::Program`] carrying its index; ops before it stay applied.
    pub fn run_program(&mut self, prog: &[MicroOp]) -> Result<Execution, SubstrateError> {
        let mut execution = Execution::default();
        for (index, op) in prog.iter().enumerate() {
            match self.exec(op) {
                Ok(read) => {
                    execution.cost.record(op);
                    if let Some(row) = read {
                        execution.reads.push((index, row));
                    }
                }
                Err(source) => {
                    return Err(SubstrateError::Program {
                        index,
                        source: Box::new(source),
                    })
                }
            }
        }
        Ok(execution)
    }

    fn mask_row_tail(&mut self, row: RowId) {
        let rem = self.width % 64;
        if rem != 0 {
            let last = row.0 * self.stride + self.stride - 1;
            self.cells[last] &= (1u64 << rem) - 1;
        }
    }
}

impl fmt::Debug for Subarray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Subarray {}x{}", self.rows, self.width)?;
        for r in 0..self.rows {
            let row = RowId(r);
            writeln!(
                f,
                "  {:>4} {:<6} {}",
                r,
                RowGroup::of(row).to_string(),
                self.read_row(row).unwrap().to_hex()
            )?;
        }
        Ok(())
    }
}
