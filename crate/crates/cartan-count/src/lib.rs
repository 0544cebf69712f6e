//! Classification of margin-constrained natural-number matrices up to
//! congruence (row permutations, column permutations, and transposition for
//! square matrices), together with two independent cross-checks: a
//! brute-force double-coset oracle over permutations of a triple index set,
//! and a graph-theoretic classifier based on bipartite multigraphs and
//! degree-2 smoothing.
//!
//! The central objects are the sets `M(a,b,c,d)` of `a x c` matrices over
//! the natural numbers whose rows all sum to `b` and whose columns all sum
//! to `d`.  Congruence classes of `M(mo, n, no, m)` are counted and
//! classified for a parameter triple `(m, n, o)`.

#![forbid(unsafe_code)]

pub mod classify;
pub mod error;
pub mod graphs;
pub mod guards;
pub mod matrices;
pub mod permutations;

pub use error::{Error, Result};
pub use guards::Guards;
