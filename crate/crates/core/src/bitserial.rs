//! Bit-serial (vertical) unsigned arithmetic.
//!
//! A [`VerticalVector`] stores one `N`-bit integer per column: bit `i` of
//! lane `j` is cell `(base + i, j)`, least significant bit at the lowest
//! row. One row operation touches one bit position of every lane at once,
//! so a subarray of width `W` adds `W` integers in parallel.
//!
//! The adder ripples a carry kept in the last TEMP row. Per bit position:
//!
//! ```text
//! carry' = MAJ(x, y, carry)
//! sum    = MAJ(x, !carry', MAJ(!carry', y, carry))
//! ```
//!
//! three activations and two negations, all from the substrate's primitives.

use thiserror::Error;

use crate::substrate::{
    MicroOp, MicroProgram, RowGroup, RowId, Subarray, SubstrateError, CONST0, CONST1, TEMP_ROWS,
};

/// Widest lane value [`vsum_reduce`] can decode.
pub const MAX_NBITS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BitSerialError {
    #[error("vectors differ in shape: {left} vs {right} bits")]
    ShapeMismatch { left: usize, right: usize },
    #[error("rows {a:?} and {b:?} overlap")]
    Overlap {
        a: std::ops::Range<usize>,
        b: std::ops::Range<usize>,
    },
    #[error("lane width must be in 1..={MAX_NBITS}, got {0}")]
    BadWidth(usize),
    #[error("lane {lane} does not exist (vector has {lanes} lanes)")]
    LaneOutOfRange { lane: usize, lanes: usize },
    #[error(transparent)]
    Substrate(#[from] SubstrateError),
}

/// `nbits` consecutive DATA rows starting at `base`, read column-wise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerticalVector {
    pub base: RowId,
    pub nbits: usize,
}

impl VerticalVector {
    pub fn new(base: RowId, nbits: usize) -> Result<Self, BitSerialError> {
        if nbits == 0 || nbits > MAX_NBITS {
            return Err(BitSerialError::BadWidth(nbits));
        }
        Ok(VerticalVector { base, nbits })
    }

    /// Row holding bit `i` (weight `2^i`).
    pub fn bit_row(&self, i: usize) -> RowId {
        debug_assert!(i < self.nbits);
        RowId(self.base.0 + i)
    }

    pub fn rows(&self) -> std::ops::Range<usize> {
        self.base.0..self.base.0 + self.nbits
    }

    /// One lane per subarray column.
    pub fn lanes(&self, sub: &Subarray) -> usize {
        sub.width()
    }

    pub fn mask(&self) -> u64 {
        if self.nbits == 64 {
            u64::MAX
        } else {
            (1u64 << self.nbits) - 1
        }
    }

    fn check(&self, sub: &Subarray) -> Result<(), BitSerialError> {
        if self.nbits == 0 || self.nbits > MAX_NBITS {
            return Err(BitSerialError::BadWidth(self.nbits));
        }
        for i in 0..self.nbits {
            let row = self.bit_row(i);
            sub.check_row(row)?;
            if sub.group(row) != RowGroup::Data {
                return Err(SubstrateError::NotDataRow { row: row.0 }.into());
            }
        }
        Ok(())
    }
}

fn disjoint(a: &VerticalVector, b: &VerticalVector) -> Result<(), BitSerialError> {
    let (ra, rb) = (a.rows(), b.rows());
    if ra.start < rb.end && rb.start < ra.end {
        return Err(BitSerialError::Overlap { a: ra, b: rb });
    }
    Ok(())
}

fn same_shape(a: &VerticalVector, b: &VerticalVector) -> Result<(), BitSerialError> {
    if a.nbits != b.nbits {
        return Err(BitSerialError::ShapeMismatch {
            left: a.nbits,
            right: b.nbits,
        });
    }
    Ok(())
}

/// One ripple step. Expects the incoming carry in the third TEMP row and
/// leaves the outgoing carry there too, unless `scratch == sum` (final bit),
/// in which case the outgoing carry is discarded. `scratch` is clobbered.
pub fn emit_full_adder(x: RowId, y: RowId, sum: RowId, scratch: RowId) -> MicroProgram {
    let [t0, t1, t2] = TEMP_ROWS;
    let mut prog = vec![
        MicroOp::Copy { src: t2, dst: t0 },
        MicroOp::Copy { src: x, dst: t1 },
        MicroOp::Copy { src: y, dst: scratch },
        // scratch = carry out
        MicroOp::Tra { a: t0, b: t1, c: scratch },
        MicroOp::Not { src: scratch, dst: t0 },
        MicroOp::Copy { src: y, dst: t1 },
        MicroOp::Tra { a: t0, b: t1, c: t2 },
        MicroOp::Not { src: scratch, dst: t1 },
        MicroOp::Copy { src: x, dst: t2 },
        MicroOp::Tra { a: t0, b: t1, c: t2 },
        MicroOp::Copy { src: t0, dst: sum },
    ];
    if scratch != sum {
        prog.push(MicroOp::Copy { src: scratch, dst: t2 });
    }
    prog
}

/// Emits `out = (x + y) mod 2^N`. Row roles are not validated here.
pub fn emit_vadd(x: &VerticalVector, y: &VerticalVector, out: &VerticalVector) -> MicroProgram {
    let n = x.nbits;
    let mut prog = vec![MicroOp::Copy {
        src: CONST0,
        dst: TEMP_ROWS[2],
    }];
    for i in 0..n {
        // the next output row is free until its own step, so it holds the carry
        let scratch = if i + 1 < n { out.bit_row(i + 1) } else { out.bit_row(i) };
        prog.extend(emit_full_adder(x.bit_row(i), y.bit_row(i), out.bit_row(i), scratch));
    }
    prog
}

/// Lane-wise `out = (x + y) mod 2^N`; `x` and `y` are left unchanged.
pub fn vadd(
    sub: &mut Subarray,
    x: &VerticalVector,
    y: &VerticalVector,
    out: &VerticalVector,
) -> Result<crate::substrate::CostReport, BitSerialError> {
    same_shape(x, y)?;
    same_shape(x, out)?;
    disjoint(x, y)?;
    disjoint(x, out)?;
    disjoint(y, out)?;
    for v in [x, y, out] {
        v.check(sub)?;
    }
    Ok(sub.run_program(&emit_vadd(x, y, out))?.cost)
}

/// Emits `outrow_j = (x_j >= y_j)`, unsigned.
///
/// Computed as the carry out of `x + !y + 1`, rippled from the least
/// significant bit: each step is `ge = MAJ(x_i, !y_i, ge)` starting from 1,
/// which is the same recurrence as "decide by the highest differing bit".
pub fn emit_vcompare_ge(x: &VerticalVector, y: &VerticalVector, outrow: RowId) -> MicroProgram {
    let [t0, t1, t2] = TEMP_ROWS;
    let mut prog = vec![MicroOp::Copy { src: CONST1, dst: t2 }];
    for i in 0..x.nbits {
        prog.push(MicroOp::Not {
            src: y.bit_row(i),
            dst: t0,
        });
        prog.push(MicroOp::Copy {
            src: x.bit_row(i),
            dst: t1,
        });
        prog.push(MicroOp::Tra { a: t0, b: t1, c: t2 });
    }
    prog.push(MicroOp::Copy { src: t2, dst: outrow });
    prog
}

pub fn vcompare_ge(
    sub: &mut Subarray,
    x: &VerticalVector,
    y: &VerticalVector,
    outrow: RowId,
) -> Result<crate::substrate::CostReport, BitSerialError> {
    same_shape(x, y)?;
    x.check(sub)?;
    y.check(sub)?;
    sub.check_row(outrow)?;
    if sub.group(outrow) != RowGroup::Data {
        return Err(SubstrateError::NotDataRow { row: outrow.0 }.into());
    }
    Ok(sub.run_program(&emit_vcompare_ge(x, y, outrow))?.cost)
}

/// Host-side decode of every lane. Does not modify the grid.
pub fn vsum_reduce(sub: &Subarray, x: &VerticalVector) -> Result<Vec<u64>, BitSerialError> {
    if x.nbits == 0 || x.nbits > MAX_NBITS {
        return Err(BitSerialError::BadWidth(x.nbits));
    }
    let mut lanes = vec![0u64; sub.width()];
    for i in 0..x.nbits {
        let row = x.bit_row(i);
        sub.check_row(row)?;
        let words = sub.row_words(row);
        for (lane, value) in lanes.iter_mut().enumerate() {
            *value |= (words[lane / 64] >> (lane % 64) & 1) << i;
        }
    }
    Ok(lanes)
}

/// Host-side encode: lane `j` receives `values[j] mod 2^N`. Lanes past
/// `values.len()` are zeroed.
pub fn write_lanes(sub: &mut Subarray, x: &VerticalVector, values: &[u64]) -> Result<(), BitSerialError> {
    x.check(sub)?;
    if values.len() > sub.width() {
        return Err(BitSerialError::LaneOutOfRange {
            lane: values.len() - 1,
            lanes: sub.width(),
        });
    }
    for i in 0..x.nbits {
        for lane in 0..sub.width() {
            let bit = values.get(lane).is_some_and(|v| v >> i & 1 == 1);
            sub.set(x.bit_row(i), lane, bit)?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vv(base: usize, n: usize) -> VerticalVector {
        VerticalVector::new(RowId(base), n).unwrap()
    }

    #[test]
    fn small_sums() {
        let mut sub = Subarray::new(5 + 12, 3).unwrap();
        let (x, y, out) = (vv(5, 4), vv(9, 4), vv(13, 4));
        write_lanes(&mut sub, &x, &[3, 7, 15]).unwrap();
        write_lanes(&mut sub, &y, &[5, 0, 1]).unwrap();
        vadd(&mut sub, &x, &y, &out).unwrap();
        assert_eq!(vsum_reduce(&sub, &out).unwrap(), vec![8, 7, 0]);
        assert_eq!(vsum_reduce(&sub, &x).unwrap(), vec![3, 7, 15]);
        assert_eq!(vsum_reduce(&sub, &y).unwrap(), vec![5, 0, 1]);
    }

    #[test]
    fn one_bit_lanes() {
        let mut sub = Subarray::new(8, 4).unwrap();
        let (x, y, out) = (vv(5, 1), vv(6, 1), vv(7, 1));
        write_lanes(&mut sub, &x, &[0, 0, 1, 1]).unwrap();
        write_lanes(&mut sub, &y, &[0, 1, 0, 1]).unwrap();
        vadd(&mut sub, &x, &y, &out).unwrap();
        assert_eq!(vsum_reduce(&sub, &out).unwrap(), vec![0, 1, 1, 0]);
    }

    #[test]
    fn full_adder_truth_table() {
        // lane j encodes (x, y, c) = bits of j
        let mut sub = Subarray::new(9, 8).unwrap();
        let (x, y, sum, scratch) = (RowId(5), RowId(6), RowId(7), RowId(8));
        for lane in 0..8 {
            sub.set(x, lane, lane & 1 == 1).unwrap();
            sub.set(y, lane, lane >> 1 & 1 == 1).unwrap();
            sub.set(TEMP_ROWS[2], lane, lane >> 2 & 1 == 1).unwrap();
        }
        sub.run_program(&emit_full_adder(x, y, sum, scratch)).unwrap();
        for lane in 0..8 {
            let (a, b, c) = (lane & 1, lane >> 1 & 1, lane >> 2 & 1);
            assert_eq!(sub.get(sum, lane) as usize, a ^ b ^ c, "sum lane {lane}");
            assert_eq!(sub.get(TEMP_ROWS[2], lane) as usize, (a + b + c) / 2, "carry lane {lane}");
            assert_eq!(sub.get(x, lane) as usize, a);
            assert_eq!(sub.get(y, lane) as usize, b);
        }
    }

    #[test]
    fn adder_cost_per_bit() {
        let prog = emit_vadd(&vv(5, 8), &vv(13, 8), &vv(21, 8));
        let cost = crate::substrate::CostReport::of_program(&prog);
        assert_eq!(cost.tra_count, 24);
        assert_eq!(cost.not_count, 16);
    }

    #[test]
    fn compare_examples() {
        let mut sub = Subarray::new(16, 4).unwrap();
        let (x, y) = (vv(5, 4), vv(9, 4));
        write_lanes(&mut sub, &x, &[5, 9, 0, 15]).unwrap();
        write_lanes(&mut sub, &y, &[7, 9, 0, 14]).unwrap();
        vcompare_ge(&mut sub, &x, &y, RowId(13)).unwrap();
        let got: Vec<bool> = (0..4).map(|j| sub.get(RowId(13), j)).collect();
        assert_eq!(got, vec![false, true, true, true]);
    }

    #[test]
    fn shape_and_overlap_errors() {
        let mut sub = Subarray::new(32, 4).unwrap();
        assert_eq!(
            vadd(&mut sub, &vv(5, 4), &vv(9, 3), &vv(13, 4)),
            Err(BitSerialError::ShapeMismatch { left: 4, right: 3 })
        );
        assert!(matches!(
            vadd(&mut sub, &vv(5, 4), &vv(8, 4), &vv(13, 4)),
            Err(BitSerialError::Overlap { .. })
        ));
        assert!(matches!(
            vadd(&mut sub, &vv(5, 4), &vv(9, 4), &vv(30, 4)),
            Err(BitSerialError::Substrate(SubstrateError::OutOfRange { .. }))
        ));
        assert!(matches!(
            vadd(&mut sub, &vv(3, 4), &vv(9, 4), &vv(13, 4)),
            Err(BitSerialError::Substrate(SubstrateError::NotDataRow { row: 3 }))
        ));
        assert_eq!(VerticalVector::new(RowId(5), 0), Err(BitSerialError::BadWidth(0)));
        assert_eq!(
            vcompare_ge(&mut sub, &vv(5, 4), &vv(9, 2), RowId(20)),
            Err(BitSerialError::ShapeMismatch { left: 4, right: 2 })
        );
    }

    #[test]
    fn reduce_positional_weight() {
        let mut sub = Subarray::new(12, 8).unwrap();
        let x = vv(5, 4);
        assert_eq!(vsum_reduce(&sub, &x).unwrap(), vec![0; 8]);
        sub.set(RowId(7), 5, true).unwrap();
        let mut expect = vec![0; 8];
        expect[5] = 4;
        assert_eq!(vsum_reduce(&sub, &x).unwrap(), expect);
    }
}
