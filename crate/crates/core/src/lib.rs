//! Computational graph rigidity over a large prime field.
//!
//! Generic rigidity questions are answered by rank computations on rigidity
//! matrices built from random field elements; see [`rigidity`]. The
//! [`evolve`] and [`experiments`] modules run the Erdős–Rényi evolution and
//! measure when rigidity and global rigidity appear relative to the minimum
//! degree.

pub mod error;
pub mod evolve;
pub mod experiments;
pub mod graphs;
pub mod primefield;
pub mod rigidity;

pub use error::{Error, Result};
pub use graphs::Graph;
pub use primefield::{FieldElement, RowBasis, SparseVector};
