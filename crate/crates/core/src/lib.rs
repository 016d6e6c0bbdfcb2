//! Exact verification toolkit for sharp tridiagonal pairs.
//!
//! Covers parameter-sequence feasibility and classification checks, the
//! free idempotent algebra on two families of generators, zigzag words,
//! the relator ideal attached to a feasible sequence, and rank-based
//! certificates that a homogeneous component splits as relators plus
//! zigzag words.

pub mod error;
pub mod field;
pub mod linalg;
pub mod mu;
pub mod params;
pub mod relators;
pub mod sampling;
pub mod scan;
pub mod words;

pub use error::{Error, Result};
pub use field::{FieldCtx, FieldElement};
pub use linalg::{SparseMatrix, SparseVector};
pub use mu::{Monomial, MuReport};
pub use params::{ParameterArray, ParameterSequence};
pub use relators::{DirectnessCertificate, RelatorFamily, RelatorSpec};
pub use scan::ScanReport;
pub use words::{TElement, Word, WordType};
