//! Analysis, canonical decomposition, construction and exhaustive
//! verification of k-idempotent 0-1 matrices (`A^k = A`).
//!
//! - [`matrix01`]: bit-packed 0-1 matrices, saturating powers, permutations.
//! - [`digraph`]: strong components, walk counts and reachability on `D(A)`.
//! - [`structure`]: the k-idempotency test and the canonical block decomposition.
//! - [`extremal`]: the density ceiling `γ(n)` and the matrices attaining it.
//! - [`oracle`]: brute-force enumeration cross-checking all of the above.

pub mod cli;
pub mod digraph;
pub mod error;
pub mod extremal;
pub mod matrix01;
pub mod oracle;
pub mod structure;

pub use digraph::{ComponentKind, Digraph, SccReport};
pub use error::{Error, Result};
pub use matrix01::{Block01, ExactMatrix, Matrix01, Permutation, SatMatrix, SatValue};
pub use structure::{
    compose, decompose, idempotency_index, idempotent_decompose, is_k_idempotent,
    CanonicalDecomposition, StructureError, StructureErrorKind,
};
