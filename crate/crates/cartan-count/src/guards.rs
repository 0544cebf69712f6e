//! Soft size guards.
//!
//! Every potentially unbounded operation checks a guard before starting and
//! refuses with [`crate::Error::GuardExceeded`] naming the tripped bound.
//! The guards are plain data; callers that know what they are doing can
//! raise them explicitly.

/// Bounds for the search and enumeration routines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Guards {
    /// Maximum number of cells `a * c` for matrix enumeration.
    pub max_cells: usize,
    /// Maximum common row sum `b` for matrix enumeration.
    pub max_row_sum: usize,
    /// Node budget for the canonical-form searches (matrices and graphs).
    pub canon_node_budget: u64,
    /// Maximum degree `m * n * o` for the double-coset oracle.
    pub oracle_max_degree: usize,
    /// Maximum combined vertex count for multigraph isomorphism.
    pub iso_max_vertices: usize,
    /// Maximum argument for the partition function.
    pub partition_bound: usize,
}

impl Default for Guards {
    fn default() -> Self {
        Guards {
            max_cells: 100,
            max_row_sum: 16,
            canon_node_budget: 50_000_000,
            oracle_max_degree: 9,
            iso_max_vertices: 16,
            partition_bound: 64,
        }
    }
}

impl Guards {
    /// Guards with all bounds effectively removed, for callers that
    /// explicitly opt in to unbounded work.
    pub fn unrestricted() -> Self {
        Guards {
            max_cells: usize::MAX,
            max_row_sum: usize::MAX,
            canon_node_budget: u64::MAX,
            oracle_max_degree: 12,
            iso_max_vertices: usize::MAX,
            partition_bound: usize::MAX,
        }
    }
}
