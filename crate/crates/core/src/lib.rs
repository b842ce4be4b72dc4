//! Exact reconstructions of medieval Indo-Arabic reckoning.
//!
//! * [`digitboard`] and [`medieval_arith`]: positional numerals with the ring
//!   as an empty place, single-line board multiplication, duplication and
//!   dimidiation.
//! * [`quantity`]: exact rationals with augmented and deficient polarity.
//! * [`surd`]: denesting the square root of a rational plus a sum of surds.
//! * [`polynomial`]: polynomials in `r`/`d`/`c` notation, tabular division and
//!   square-root extraction.
//! * [`trace`]: the step traces every algorithm returns.
//! * [`oracle`]: independent modern routes used to check every result.
//!
//! Everything is exact; no floating point is used anywhere.

pub mod cli;
pub mod digitboard;
pub mod medieval_arith;
pub mod oracle;
pub mod polynomial;
pub mod quantity;
pub mod surd;
pub mod trace;

pub use digitboard::{Cell, DigitBoard, RenderStyle};
pub use medieval_arith::{dimidiate, duplicate_multiply, multiply_indian};
pub use polynomial::{divide_tabular, sqrt_poly, DegreeName, Notation, Polynomial};
pub use quantity::{classify_parity, DeficiencyOrder, ParityKind, Polarity, Quantity};
pub use surd::{denest, expand_square, SurdExpression, SurdSum};
pub use trace::{Trace, TraceFormat};
