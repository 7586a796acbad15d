//! Evaluation of subtraction games.
//!
//! A subtraction game is played on heaps of tokens; a move removes a number
//! of tokens from one heap, and that number must belong to the game's
//! subtraction set. This crate computes, for every heap size below a bound,
//! either the hot/cold partition or the full table of nim-values, using:
//!
//! - plain dynamic programming over the mex recurrence ([`solvers::nim_dp`],
//!   [`solvers::hotcold_dp`]),
//! - a sieve that marks positions reachable from each cold position
//!   ([`solvers::cold_sieve`]),
//! - a divide-and-conquer evaluation that finds forced-hot positions of the
//!   upper half of a range by Boolean convolution of the lower half's cold
//!   positions with the subtraction set ([`solvers::hotcold_dandc`]), and its
//!   layer-by-layer extension to nim-values ([`solvers::nim_layered`]).
//!
//! The [`analysis`] module holds the measurements used to study
//! subtract-a-square: record nim-values, cold-position counts, base-b digit
//! histograms and a repeated-median monomial fit.

pub mod analysis;
pub mod bitkernel;
mod error;
pub mod games;
pub mod solvers;

pub use bitkernel::{BitVec, CountVec};
pub use error::{Error, Result};
pub use games::{GameSpec, NimValue};
pub use solvers::{HotCold, MultiHeapVerdict, NimTable};
