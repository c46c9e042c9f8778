//! Simulator for a processing-using-memory bit matrix driven by
//! triple-row activation, plus [`Mixture`], a bitmap whose bits serve
//! set algebra when read as packed words and set queries when read value
//! by value.
//!
//! * [`substrate`]: the `R x W` grid and its micro-ops (`COPY`, `TRA`,
//!   `NOT`, host read/write).
//! * [`trace`]: the line-oriented text encoding of micro-op programs.
//! * [`logic`]: full-width AND / OR / NOT / XOR / MAJ3, with the control
//!   row choosing between AND and OR.
//! * [`bitserial`]: lane-parallel addition and comparison on vertically
//!   stored integers.
//! * [`mixture`]: the dual-view bitmap, its substrate placements and the
//!   `MIX1` file format.
//! * [`migc`]: boolean expression lowering to micro-op programs.
//! * [`cli`]: command implementations behind the `tramix` binary.

pub mod bitserial;
pub mod cli;
pub mod logic;
pub mod migc;
pub mod mixture;
pub mod substrate;
pub mod trace;

pub use mixture::{Layout, Mixture, SetOp};
pub use substrate::{BitRow, CostReport, MicroOp, RowId, Subarray};
