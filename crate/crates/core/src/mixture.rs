//! A bit store over the universe `[0, 2^K)` read in two access orders.
//!
//! Bit `v` of a [`Mixture`] is set iff value `v` is a member: the position
//! of a bit *is* the value it stands for, so neither view needs a layout
//! transformation.
//!
//! * The horizontal view ([`HorizontalView`]) hands out the store as packed
//!   64-bit words, LSB-first: bit `v % 64` of word `v / 64` is bit `v`. Set
//!   algebra (union, intersection, difference) and cardinality run on this
//!   view, one word at a time.
//! * The vertical view ([`VerticalView`]) walks the same bits value by value,
//!   top to bottom (ascending) or bottom to top (descending). Membership,
//!   rank and select are queries over this order.
//!
//! [`Mixture::to_subarray`] places the store onto a [`Subarray`] so the same
//! bits can be processed by substrate programs; see [`Layout`] for the two
//! placements. The on-disk format is described on [`Mixture::to_bytes`].

use std::fmt;
use std::io::{self, Read, Write};
use std::str::FromStr;

use rand::Rng;
use thiserror::Error;

use crate::logic::{bulk_and, bulk_not, bulk_or};
use crate::substrate::{BitRow, CostReport, RowGroup, RowId, Subarray, SubstrateError, FIRST_DATA_ROW};

/// Largest `K` accepted unless a caller raises the cap.
pub const DEFAULT_MAX_KBITS: u32 = 24;
/// Hard upper bound on `K` regardless of configuration.
pub const MAX_KBITS: u32 = 32;
/// File magic for the serialized form.
pub const MAGIC: &[u8; 4] = b"MIX1";

const WORD_BITS: u64 = 64;

#[derive(Debug, Error)]
pub enum MixtureError {
    #[error("value {value} is outside the universe [0, {universe})")]
    ValueOutOfUniverse { value: u64, universe: u64 },
    #[error("select({k}) is out of range for a set of {cardinality} members")]
    SelectOutOfRange { k: u64, cardinality: u64 },
    #[error("universe mismatch: K={left} vs K={right}")]
    UniverseMismatch { left: u32, right: u32 },
    #[error("K={kbits} exceeds the configured cap of {cap}")]
    KbitsTooLarge { kbits: u32, cap: u32 },
    #[error("placement needs rows {first}..{end} (all DATA) but the subarray has {rows} rows")]
    Capacity { first: usize, end: usize, rows: usize },
    #[error("placements overlap")]
    PlacementOverlap,
    #[error("placements differ in layout or universe")]
    PlacementMismatch,
    #[error("malformed mixture file: {0}")]
    Format(&'static str),
    #[error(transparent)]
    Substrate(#[from] SubstrateError),
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// How a store is placed onto subarray rows.
///
/// Both placements use `H = ceil(2^K / W)` consecutive DATA rows.
///
/// * `Horizontal`: row `base + v / W`, column `v % W`. Consecutive values run
///   along a row, so one row op touches `W` neighbouring values.
/// * `Vertical`: row `base + v % H`, column `v / H`. Consecutive values run
///   down a column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Layout {
    Horizontal,
    Vertical,
}

impl FromStr for Layout {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "horizontal" | "h" => Ok(Layout::Horizontal),
            "vertical" | "v" => Ok(Layout::Vertical),
            other => Err(format!("unknown layout `{other}`")),
        }
    }
}

impl fmt::Display for Layout {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Layout::Horizontal => "horizontal",
            Layout::Vertical => "vertical",
        })
    }
}

/// Where a store lives on a subarray.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Placement {
    pub layout: Layout,
    pub kbits: u32,
    pub base: RowId,
    pub rows: usize,
}

impl Placement {
    pub fn row(&self, i: usize) -> RowId {
        RowId(self.base.0 + i)
    }

    fn overlaps(&self, other: &Placement) -> bool {
        self.base.0 < other.base.0 + other.rows && other.base.0 < self.base.0 + self.rows
    }

    /// `(row offset, column)` of value `v` under this placement.
    fn cell(&self, v: u64, width: usize) -> (usize, usize) {
        match self.layout {
            Layout::Horizontal => ((v / width as u64) as usize, (v % width as u64) as usize),
            Layout::Vertical => ((v % self.rows as u64) as usize, (v / self.rows as u64) as usize),
        }
    }
}

/// Number of rows a `2^K` store occupies on a `width`-column subarray.
pub fn rows_needed(kbits: u32, width: usize) -> usize {
    (1u64 << kbits).div_ceil(width as u64) as usize
}

/// Set operations available on both the host and the substrate path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SetOp {
    Union,
    Intersect,
    Difference,
}

impl SetOp {
    pub const ALL: [SetOp; 3] = [SetOp::Union, SetOp::Intersect, SetOp::Difference];

    fn word(self, a: u64, b: u64) -> u64 {
        match self {
            SetOp::Union => a | b,
            SetOp::Intersect => a & b,
            SetOp::Difference => a & !b,
        }
    }

    /// Membership-level definition, used by the per-value query path.
    pub fn member(self, in_a: bool, in_b: bool) -> bool {
        match self {
            SetOp::Union => in_a || in_b,
            SetOp::Intersect => in_a && in_b,
            SetOp::Difference => in_a && !in_b,
        }
    }
}

impl fmt::Display for SetOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SetOp::Union => "union",
            SetOp::Intersect => "intersect",
            SetOp::Difference => "difference",
        })
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mixture {
    kbits: u32,
    words: Vec<u64>,
}

impl Mixture {
    /// Empty store over `[0, 2^kbits)`, with `kbits` capped at [`DEFAULT_MAX_KBITS`].
    pub fn new(kbits: u32) -> Result<Self, MixtureError> {
        Mixture::with_cap(kbits, DEFAULT_MAX_KBITS)
    }

    /// Like [`Mixture::new`] with a caller-chosen cap (at most [`MAX_KBITS`]).
    pub fn with_cap(kbits: u32, cap: u32) -> Result<Self, MixtureError> {
        let cap = cap.min(MAX_KBITS);
        if kbits > cap {
            return Err(MixtureError::KbitsTooLarge { kbits, cap });
        }
        let len = (1u64 << kbits).div_ceil(WORD_BITS) as usize;
        Ok(Mixture {
            kbits,
            words: vec![0; len],
        })
    }

    pub fn from_members<I: IntoIterator<Item = u64>>(kbits: u32, members: I) -> Result<Self, MixtureError> {
        let mut m = Mixture::new(kbits)?;
        for v in members {
            m.insert(v)?;
        }
        Ok(m)
    }

    /// Every value present.
    pub fn full(kbits: u32) -> Result<Self, MixtureError> {
        let mut m = Mixture::new(kbits)?;
        m.words.fill(u64::MAX);
        m.mask_tail();
        Ok(m)
    }

    /// Each value present independently with probability 1/2.
    pub fn random<R: Rng + ?Sized>(kbits: u32, rng: &mut R) -> Result<Self, MixtureError> {
        Mixture::random_with_cap(kbits, DEFAULT_MAX_KBITS, rng)
    }

    pub fn random_with_cap<R: Rng + ?Sized>(kbits: u32, cap: u32, rng: &mut R) -> Result<Self, MixtureError> {
        let mut m = Mixture::with_cap(kbits, cap)?;
        for w in m.words.iter_mut() {
            *w = rng.gen();
        }
        m.mask_tail();
        Ok(m)
    }

    pub fn kbits(&self) -> u32 {
        self.kbits
    }

    /// `2^K`.
    pub fn universe(&self) -> u64 {
        1u64 << self.kbits
    }

    fn mask_tail(&mut self) {
        let universe = self.universe();
        if universe < WORD_BITS {
            self.words[0] &= (1u64 << universe) - 1;
        }
    }

    fn check_value(&self, value: u64) -> Result<(), MixtureError> {
        if value >= self.universe() {
            return Err(MixtureError::ValueOutOfUniverse {
                value,
                universe: self.universe(),
            });
        }
        Ok(())
    }

    fn check_same_universe(&self, other: &Mixture) -> Result<(), MixtureError> {
        if self.kbits != other.kbits {
            return Err(MixtureError::UniverseMismatch {
                left: self.kbits,
                right: other.kbits,
            });
        }
        Ok(())
    }

    /// Sets bit `value`. Idempotent.
    pub fn insert(&mut self, value: u64) -> Result<(), MixtureError> {
        self.check_value(value)?;
        self.words[(value / WORD_BITS) as usize] |= 1 << (value % WORD_BITS);
        Ok(())
    }

    pub fn remove(&mut self, value: u64) -> Result<(), MixtureError> {
        self.check_value(value)?;
        self.words[(value / WORD_BITS) as usize] &= !(1 << (value % WORD_BITS));
        Ok(())
    }

    pub fn contains(&self, value: u64) -> Result<bool, MixtureError> {
        self.check_value(value)?;
        Ok(self.bit(value))
    }

    #[inline]
    fn bit(&self, value: u64) -> bool {
        self.words[(value / WORD_BITS) as usize] >> (value % WORD_BITS) & 1 == 1
    }

    /// Number of members strictly below `value`; `value` may equal `2^K`.
    pub fn rank(&self, value: u64) -> Result<u64, MixtureError> {
        if value > self.universe() {
            return Err(MixtureError::ValueOutOfUniverse {
                value,
                universe: self.universe(),
            });
        }
        let full = (value / WORD_BITS) as usize;
        let mut count: u64 = self.words[..full].iter().map(|w| w.count_ones() as u64).sum();
        let rem = value % WORD_BITS;
        if rem != 0 {
            count += (self.words[full] & ((1u64 << rem) - 1)).count_ones() as u64;
        }
        Ok(count)
    }

    /// The `(k+1)`-th smallest member.
    pub fn select(&self, k: u64) -> Result<u64, MixtureError> {
        let mut remaining = k;
        for (i, &word) in self.words.iter().enumerate() {
            let ones = word.count_ones() as u64;
            if remaining < ones {
                let mut w = word;
                for _ in 0..remaining {
                    w &= w - 1;
                }
                return Ok(i as u64 * WORD_BITS + w.trailing_zeros() as u64);
            }
            remaining -= ones;
        }
        Err(MixtureError::SelectOutOfRange {
            k,
            cardinality: self.cardinality(),
        })
    }

    /// Popcount over the horizontal words.
    pub fn cardinality(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn horizontal(&self) -> HorizontalView<'_> {
        HorizontalView { words: &self.words }
    }

    pub fn vertical(&self) -> VerticalView<'_> {
        VerticalView {
            mixture: self,
            front: 0,
            back: self.universe(),
        }
    }

    /// Members in ascending order.
    pub fn members(&self) -> impl Iterator<Item = u64> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros() as u64;
                w &= w - 1;
                Some(i as u64 * WORD_BITS + bit)
            })
        })
    }

    /// Word-wise set algebra over the horizontal view.
    pub fn combine(&self, other: &Mixture, op: SetOp) -> Result<Mixture, MixtureError> {
        self.check_same_universe(other)?;
        let words = self
            .horizontal()
            .words()
            .iter()
            .zip(other.horizontal().words())
            .map(|(&a, &b)| op.word(a, b))
            .collect();
        Ok(Mixture {
            kbits: self.kbits,
            words,
        })
    }

    pub fn union(&self, other: &Mixture) -> Result<Mixture, MixtureError> {
        self.combine(other, SetOp::Union)
    }

    pub fn intersect(&self, other: &Mixture) -> Result<Mixture, MixtureError> {
        self.combine(other, SetOp::Intersect)
    }

    pub fn difference(&self, other: &Mixture) -> Result<Mixture, MixtureError> {
        self.combine(other, SetOp::Difference)
    }

    /// Writes the store onto `sub` starting at DATA row `base`.
    pub fn to_subarray(&self, sub: &mut Subarray, layout: Layout, base: RowId) -> Result<Placement, MixtureError> {
        let placement = Placement {
            layout,
            kbits: self.kbits,
            base,
            rows: rows_needed(self.kbits, sub.width()),
        };
        check_placement(sub, &placement)?;
        let width = sub.width();
        let mut rows = vec![BitRow::zeros(width); placement.rows];
        match layout {
            Layout::Horizontal if width % 64 == 0 => {
                // word-aligned rows: each row is a straight slice of the store
                let per_row = width / 64;
                for (i, row) in rows.iter_mut().enumerate() {
                    let start = (i * per_row).min(self.words.len());
                    let end = ((i + 1) * per_row).min(self.words.len());
                    *row = BitRow::from_words(width, self.words[start..end].to_vec());
                }
            }
            _ => {
                for v in self.members() {
                    let (r, c) = placement.cell(v, width);
                    rows[r].set(c, true);
                }
            }
        }
        for (i, row) in rows.iter().enumerate() {
            sub.write_row(placement.row(i), row)?;
        }
        Ok(placement)
    }

    /// Reads a store back from a placement made by [`Mixture::to_subarray`].
    pub fn from_subarray(sub: &Subarray, placement: &Placement) -> Result<Mixture, MixtureError> {
        check_placement(sub, placement)?;
        let mut m = Mixture::with_cap(placement.kbits, MAX_KBITS)?;
        let width = sub.width();
        let rows: Vec<BitRow> = (0..placement.rows)
            .map(|i| sub.read_row(placement.row(i)))
            .collect::<Result<_, _>>()?;
        for v in 0..m.universe() {
            let (r, c) = placement.cell(v, width);
            if rows[r].get(c) {
                m.words[(v / WORD_BITS) as usize] |= 1 << (v % WORD_BITS);
            }
        }
        Ok(m)
    }

    /// Serialized form:
    ///
    /// ```text
    /// "MIX1" | K: u32 little-endian | ceil(2^K / 8) payload bytes
    /// ```
    ///
    /// Value `v` is bit `v % 8` (LSB-first) of payload byte `v / 8`.
    pub fn to_bytes(&self) -> Vec<u8> {
        let payload_len = self.universe().div_ceil(8) as usize;
        let mut out = Vec::with_capacity(8 + payload_len);
        out.extend_from_slice(MAGIC);
        out.extend_from_slice(&self.kbits.to_le_bytes());
        out.extend(self.words.iter().flat_map(|w| w.to_le_bytes()).take(payload_len));
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Mixture, MixtureError> {
        Mixture::from_bytes_with_cap(bytes, DEFAULT_MAX_KBITS)
    }

    pub fn from_bytes_with_cap(bytes: &[u8], cap: u32) -> Result<Mixture, MixtureError> {
        if bytes.len() < 8 {
            return Err(MixtureError::Format("shorter than the 8-byte header"));
        }
        if &bytes[..4] != MAGIC {
            return Err(MixtureError::Format("bad magic"));
        }
        let kbits = u32::from_le_bytes(bytes[4..8].try_into().unwrap());
        if kbits > MAX_KBITS {
            return Err(MixtureError::KbitsTooLarge { kbits, cap: MAX_KBITS });
        }
        let mut m = Mixture::with_cap(kbits, cap)?;
        let payload = &bytes[8..];
        if payload.len() as u64 != m.universe().div_ceil(8) {
            return Err(MixtureError::Format("payload length does not match K"));
        }
        for (i, chunk) in payload.chunks(8).enumerate() {
            let mut buf = [0u8; 8];
            buf[..chunk.len()].copy_from_slice(chunk);
            m.words[i] = u64::from_le_bytes(buf);
        }
        let before = m.words[0];
        m.mask_tail();
        if m.words[0] != before {
            return Err(MixtureError::Format("bits set past the end of the universe"));
        }
        Ok(m)
    }

    pub fn write_to<W: Write>(&self, mut w: W) -> Result<(), MixtureError> {
        w.write_all(&self.to_bytes())?;
        Ok(())
    }

    pub fn read_from<R: Read>(mut r: R) -> Result<Mixture, MixtureError> {
        let mut buf = Vec::new();
        r.read_to_end(&mut buf)?;
        Mixture::from_bytes(&buf)
    }
}

impl fmt::Debug for Mixture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let members: Vec<u64> = self.members().take(16).collect();
        write!(f, "Mixture(K={}, n={}, {:?}", self.kbits, self.cardinality(), members)?;
        if self.cardinality() > 16 {
            f.write_str("..")?;
        }
        f.write_str(")")
    }
}

fn check_placement(sub: &Subarray, placement: &Placement) -> Result<(), MixtureError> {
    let first = placement.base.0;
    let end = first + placement.rows;
    let capacity_err = || MixtureError::Capacity {
        first,
        end,
        rows: sub.rows(),
    };
    if first < FIRST_DATA_ROW || end > sub.rows() {
        return Err(capacity_err());
    }
    if placement.rows != rows_needed(placement.kbits, sub.width()) {
        return Err(MixtureError::PlacementMismatch);
    }
    debug_assert!((first..end).all(|r| sub.group(RowId(r)) == RowGroup::Data));
    Ok(())
}

/// Row-by-row set algebra on the substrate: `out = a op b` using bulk
/// OR / AND / AND-NOT. All three placements must share layout and `K` and
/// `out` must not overlap either input.
pub fn combine_on_substrate(
    sub: &mut Subarray,
    op: SetOp,
    a: &Placement,
    b: &Placement,
    out: &Placement,
) -> Result<CostReport, MixtureError> {
    for p in [a, b, out] {
        check_placement(sub, p)?;
    }
    if a.layout != b.layout || a.layout != out.layout || a.kbits != b.kbits || a.kbits != out.kbits {
        return Err(MixtureError::PlacementMismatch);
    }
    if out.overlaps(a) || out.overlaps(b) {
        return Err(MixtureError::PlacementOverlap);
    }
    let mut cost = CostReport::default();
    for i in 0..a.rows {
        let (ra, rb, ro) = (a.row(i), b.row(i), out.row(i));
        cost += match op {
            SetOp::Union => bulk_or(sub, ra, rb, ro)?,
            SetOp::Intersect => bulk_and(sub, ra, rb, ro)?,
            SetOp::Difference => bulk_not(sub, rb, ro)? + bulk_and(sub, ra, ro, ro)?,
        };
    }
    Ok(cost)
}

/// Places `a` and `b` on a fresh `width`-column subarray, runs `op` there and
/// reads the result back.
pub fn set_op_on_substrate(
    a: &Mixture,
    b: &Mixture,
    op: SetOp,
    layout: Layout,
    width: usize,
) -> Result<(Mixture, CostReport), MixtureError> {
    a.check_same_universe(b)?;
    let h = rows_needed(a.kbits, width);
    let mut sub = Subarray::new(FIRST_DATA_ROW + 3 * h, width)?;
    let pa = a.to_subarray(&mut sub, layout, RowId(FIRST_DATA_ROW))?;
    let pb = b.to_subarray(&mut sub, layout, RowId(FIRST_DATA_ROW + h))?;
    let pout = Placement {
        base: RowId(FIRST_DATA_ROW + 2 * h),
        ..pa
    };
    let cost = combine_on_substrate(&mut sub, op, &pa, &pb, &pout)?;
    Ok((Mixture::from_subarray(&sub, &pout)?, cost))
}

/// Packed-word access to the store.
#[derive(Debug, Clone, Copy)]
pub struct HorizontalView<'a> {
    words: &'a [u64],
}

impl<'a> HorizontalView<'a> {
    pub fn words(&self) -> &'a [u64] {
        self.words
    }

    /// Word `i` covers values `[64 i, 64 i + 64)`.
    pub fn word(&self, i: usize) -> u64 {
        self.words[i]
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

/// Value-ordered cursor yielding `(value, present)` for every value in the
/// universe. `.rev()` walks from the largest value down.
#[derive(Debug, Clone)]
pub struct VerticalView<'a> {
    mixture: &'a Mixture,
    front: u64,
    back: u64,
}

impl Iterator for VerticalView<'_> {
    type Item = (u64, bool);

    fn next(&mut self) -> Option<Self::Item> {
        if self.front >= self.back {
            return None;
        }
        let v = self.front;
        self.front += 1;
        Some((v, self.mixture.bit(v)))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = (self.back - self.front) as usize;
        (n, Some(n))
    }
}

impl DoubleEndedIterator for VerticalView<'_> {
    fn next_back(&mut self) -> Option<Self::Item> {
        if self.front >= self.back {
            return None;
        }
        self.back -= 1;
        Some((self.back, self.mixture.bit(self.back)))
    }
}

impl ExactSizeIterator for VerticalView<'_> {}

#[cfg(test)]
mod tests {
    use super::*;

    fn mix(k: u32, members: &[u64]) -> Mixture {
        Mixture::from_members(k, members.iter().copied()).unwrap()
    }

    #[test]
    fn insert_is_definitional_and_idempotent() {
        let mut m = Mixture::new(3).unwrap();
        m.insert(3).unwrap();
        assert_eq!(m.horizontal().words(), &[0b0000_1000]);
        let once = m.clone();
        m.insert(3).unwrap();
        assert_eq!(m, once);
        assert!(matches!(
            m.insert(8),
            Err(MixtureError::ValueOutOfUniverse { value: 8, universe: 8 })
        ));
    }

    #[test]
    fn contains_examples() {
        let m = Mixture::new(4).unwrap();
        assert!((0..16).all(|v| !m.contains(v).unwrap()));
        let m = mix(3, &[1, 3]);
        assert!(!m.contains(2).unwrap());
        assert!(m.contains(3).unwrap());
        assert!(m.contains(8).is_err());
    }

    #[test]
    fn rank_select_examples() {
        let m = mix(3, &[1, 3, 6]);
        assert_eq!(m.rank(0).unwrap(), 0);
        assert_eq!(m.rank(6).unwrap(), 2);
        assert_eq!(m.rank(8).unwrap(), 3);
        assert!(m.rank(9).is_err());
        assert_eq!(m.select(0).unwrap(), 1);
        assert_eq!(m.select(m.cardinality() - 1).unwrap(), 6);
        assert!(matches!(
            m.select(3),
            Err(MixtureError::SelectOutOfRange { k: 3, cardinality: 3 })
        ));
    }

    #[test]
    fn set_algebra_examples() {
        let a = mix(3, &[0, 3]);
        let b = mix(3, &[1, 3]);
        assert_eq!(a.union(&b).unwrap(), mix(3, &[0, 1, 3]));
        assert_eq!(a.intersect(&b).unwrap(), mix(3, &[3]));
        assert_eq!(a.difference(&b).unwrap(), mix(3, &[0]));
        assert_eq!(a.union(&Mixture::new(3).unwrap()).unwrap(), a);
        assert_eq!(a.intersect(&a).unwrap(), a);
        assert!(matches!(
            a.union(&Mixture::new(4).unwrap()),
            Err(MixtureError::UniverseMismatch { left: 3, right: 4 })
        ));
    }

    #[test]
    fn cardinality_examples() {
        assert_eq!(Mixture::new(5).unwrap().cardinality(), 0);
        assert_eq!(Mixture::full(3).unwrap().cardinality(), 8);
        assert_eq!(Mixture::full(0).unwrap().cardinality(), 1);
        assert_eq!(Mixture::full(10).unwrap().cardinality(), 1024);
    }

    #[test]
    fn vertical_view_reads_both_directions() {
        let m = mix(2, &[1, 2]);
        let down: Vec<_> = m.vertical().collect();
        assert_eq!(down, vec![(0, false), (1, true), (2, true), (3, false)]);
        let up: Vec<_> = m.vertical().rev().collect();
        assert_eq!(up, vec![(3, false), (2, true), (1, true), (0, false)]);
        assert_eq!(m.vertical().len(), 4);
    }

    #[test]
    fn kbits_cap() {
        assert!(matches!(
            Mixture::new(25),
            Err(MixtureError::KbitsTooLarge { kbits: 25, cap: 24 })
        ));
        assert!(Mixture::with_cap(25, 26).is_ok());
    }

    #[test]
    fn golden_bytes() {
        let m = mix(3, &[0, 3]);
        assert_eq!(m.to_bytes(), b"MIX1\x03\x00\x00\x00\x09".to_vec());
        assert_eq!(Mixture::from_bytes(&m.to_bytes()).unwrap(), m);
        let k0 = Mixture::full(0).unwrap();
        assert_eq!(k0.to_bytes(), b"MIX1\x00\x00\x00\x00\x01".to_vec());
    }

    #[test]
    fn rejects_bad_files() {
        assert!(matches!(Mixture::from_bytes(b"MIX"), Err(MixtureError::Format(_))));
        assert!(matches!(Mixture::from_bytes(b"MIX2\x03\0\0\0\x09"), Err(MixtureError::Format(_))));
        assert!(matches!(Mixture::from_bytes(b"MIX1\x03\0\0\0"), Err(MixtureError::Format(_))));
        assert!(matches!(Mixture::from_bytes(b"MIX1\x02\0\0\0\x10"), Err(MixtureError::Format(_))));
        assert!(matches!(
            Mixture::from_bytes(b"MIX1\x28\0\0\0"),
            Err(MixtureError::KbitsTooLarge { .. })
        ));
    }

    #[test]
    fn subarray_round_trip_both_layouts() {
        let m = mix(7, &[0, 5, 63, 64, 100, 127]);
        for width in [8, 12, 64, 100] {
            for layout in [Layout::Horizontal, Layout::Vertical] {
                let h = rows_needed(7, width);
                let mut sub = Subarray::new(FIRST_DATA_ROW + h, width).unwrap();
                let p = m.to_subarray(&mut sub, layout, RowId(FIRST_DATA_ROW)).unwrap();
                assert_eq!(p.rows, h);
                assert_eq!(Mixture::from_subarray(&sub, &p).unwrap(), m, "{layout} w={width}");
            }
        }
    }

    #[test]
    fn placement_mapping_is_documented_one() {
        let m = mix(4, &[5]);
        let mut sub = Subarray::new(FIRST_DATA_ROW + 4, 4).unwrap();
        m.to_subarray(&mut sub, Layout::Horizontal, RowId(FIRST_DATA_ROW)).unwrap();
        assert!(sub.get(RowId(FIRST_DATA_ROW + 1), 1));
        let mut sub = Subarray::new(FIRST_DATA_ROW + 4, 4).unwrap();
        m.to_subarray(&mut sub, Layout::Vertical, RowId(FIRST_DATA_ROW)).unwrap();
        assert!(sub.get(RowId(FIRST_DATA_ROW + 1), 1));
        let m = mix(4, &[6]);
        m.to_subarray(&mut sub, Layout::Vertical, RowId(FIRST_DATA_ROW)).unwrap();
        assert!(sub.get(RowId(FIRST_DATA_ROW + 2), 1));
    }

    #[test]
    fn capacity_error() {
        let m = Mixture::new(8).unwrap();
        let mut sub = Subarray::new(8, 64).unwrap();
        assert!(matches!(
            m.to_subarray(&mut sub, Layout::Horizontal, RowId(5)),
            Err(MixtureError::Capacity { first: 5, end: 9, rows: 8 })
        ));
        assert!(matches!(
            m.to_subarray(&mut sub, Layout::Horizontal, RowId(3)),
            Err(MixtureError::Capacity { .. })
        ));
    }

    #[test]
    fn substrate_set_ops_match_host() {
        let a = mix(6, &[0, 1, 9, 33, 62]);
        let b = mix(6, &[1, 2, 33, 63]);
        for op in SetOp::ALL {
            for layout in [Layout::Horizontal, Layout::Vertical] {
                let (got, cost) = set_op_on_substrate(&a, &b, op, layout, 16).unwrap();
                assert_eq!(got, a.combine(&b, op).unwrap(), "{op} {layout}");
                assert!(cost.tra_count >= 4);
            }
        }
    }

    #[test]
    fn combine_on_substrate_rejects_overlap() {
        let a = mix(6, &[1]);
        let mut sub = Subarray::new(5 + 8, 16).unwrap();
        let pa = a.to_subarray(&mut sub, Layout::Horizontal, RowId(5)).unwrap();
        let pb = a.to_subarray(&mut sub, Layout::Horizontal, RowId(9)).unwrap();
        assert!(matches!(
            combine_on_substrate(&mut sub, SetOp::Union, &pa, &pb, &pb),
            Err(MixtureError::PlacementOverlap)
        ));
    }
}
