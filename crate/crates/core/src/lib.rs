//! Locally recoverable codes with variable locality and availability.
//!
//! A code is built from subsets `A_1, …, A_n` of a finite field, a
//! tolerance `δ_i ≥ 2` per subset and a degree bound `d`. Messages are
//! polynomials with `deg_{X_i} < r_i = |A_i| - δ_i + 1` and total degree at
//! most `d`; codewords are their evaluations on `A_1 × … × A_n`. Every
//! position has `n` recovery sets (the axis-parallel lines through its
//! point) that meet only in that position, and the line in direction `i`
//! tolerates `δ_i - 1` erasures.
//!
//! Directions, positions and subset indices are zero-based throughout.

pub mod cli;
pub mod code;
pub mod error;
pub mod field;
pub mod io;
pub mod linalg;
pub mod metrics;
pub mod recovery;
pub mod simulation;
pub mod tables;

pub use code::{CodeSpec, LrcCode, MonomialBasis, PointEnumeration};
pub use error::{Error, Result};
pub use field::{FieldElement, FiniteField};
pub use metrics::{metrics, CodeMetrics, LocalCodeReport};
pub use recovery::{Codeword, ErasedWord, RecoveryOutcome, RecoveryReport, RecoverySet};
