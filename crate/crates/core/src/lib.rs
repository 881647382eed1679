//! Exact construction and spectral analysis of the run-weight matrices `A_n` and `B_n`.
//!
//! The matrices `A_n` and `B_n` are `2^n x 2^n` integer matrices defined by the
//! mutual block recursion
//!
//! ```text
//! A_n = | A_{n-1}   A_{n-1} |      B_n = | A_{n-1}   A_{n-1} |
//!       | A_{n-1}  -B_{n-1} |            |    0     -B_{n-1} |
//! ```
//!
//! with `A_0 = B_0 = (1)`. Rows and columns are indexed by subsets of
//! `[n] = {1, ..., n}` in binary order (see [`SubsetMask::r_index`]).
//!
//! The crate provides:
//!
//! - [`combinatorics`]: subset primitives (runs, the dominance / admissibility /
//!   arrow relations, run weights) and integer compositions.
//! - [`matrix`]: exact dense integer matrices, the recursive and entrywise
//!   builders, the subset-lattice zeta matrix and its inverse, conjugations and
//!   a structured sub-quadratic matrix-vector product.
//! - [`permutation`]: the complement-pairing permutation `sigma_n`, its
//!   closed form and its Thue-Morse encoding.
//! - [`spectrum`]: characteristic polynomials as products over compositions
//!   and the resulting eigenvalue reports.
//! - [`oracle`]: independent brute-force characteristic polynomials and
//!   determinants plus structural verifiers.

pub mod combinatorics;
mod error;
pub mod matrix;
pub mod oracle;
pub mod permutation;
pub mod polynomial;
pub mod spectrum;

pub use combinatorics::{Composition, Run, SubsetMask};
pub use error::{Error, Result};
pub use matrix::{ExactMatrix, Limits, Which};
pub use permutation::{BinaryWord, SigmaTable};
pub use polynomial::IntPolynomial;
pub use spectrum::SpectrumReport;
