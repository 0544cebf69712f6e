//! Margin-constrained matrix enumeration, congruence canonicalization, and
//! the closed-form counting invariants.
//!
//! `M(a,b,c,d)` denotes the set of `a x c` matrices over the natural
//! numbers whose rows all sum to `b` and whose columns all sum to `d`.  Two
//! matrices are *congruent* if one arises from the other by permuting rows,
//! permuting columns, and (for square matrices only) transposing.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::guards::Guards;

/// Rectangular matrix of non-negative integers, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<u32>,
}

impl NatMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<u32>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::ShapeMismatch(format!(
                "matrix dimensions must be positive, got {rows}x{cols}"
            )));
        }
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(NatMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        NatMatrix {
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    /// Builds a matrix from nested rows.
    pub fn from_rows(rows: &[Vec<u32>]) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::ShapeMismatch("matrix needs at least one row".into()));
        }
        let cols = rows[0].len();
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        NatMatrix::new(rows.len(), cols, rows.concat())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.entries[i * self.cols + j] = v;
    }

    /// Row-major entry slice.
    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_sum(&self, i: usize) -> u32 {
        self.row(i).iter().sum()
    }

    pub fn col_sum(&self, j: usize) -> u32 {
        (0..self.rows).map(|i| self.get(i, j)).sum()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> NatMatrix {
        let mut t = NatMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    /// Nested-row view, used for JSON output.
    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Checks membership in `M(a,b,c,d)` given by `spec`.
    pub fn satisfies(&self, spec: &MarginSpec) -> bool {
        self.rows == spec.a
            && self.cols == spec.c
            && (0..self.rows).all(|i| self.row_sum(i) as usize == spec.b)
            && (0..self.cols).all(|j| self.col_sum(j) as usize == spec.d)
    }
}

/// Text format: first line `rows cols`, then one line per row of
/// space-separated entries.  Round trips bit-exactly.
impl fmt::Display for NatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(|e| e.to_string()).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for NatMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty matrix text".into()))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| {
                t.parse()
                    .map_err(|_| Error::Parse(format!("bad dimension `{t}`")))
            })
            .collect::<Result<_>>()?;
        if dims.len() != 2 {
            return Err(Error::Parse("header must be `rows cols`".into()));
        }
        let (rows, cols) = (dims[0], dims[1]);
        let mut entries = Vec::with_capacity(rows * cols);
        for _ in 0..rows {
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse("missing matrix row".into()))?;
            let row: Vec<u32> = line
                .split_whitespace()
                .map(|t| {
                    t.parse()
                        .map_err(|_| Error::Parse(format!("bad entry `{t}`")))
                })
                .collect::<Result<_>>()?;
            if row.len() != cols {
                return Err(Error::Parse(format!(
                    "expected {cols} entries per row, got {}",
                    row.len()
                )));
            }
            entries.extend(row);
        }
        NatMatrix::new(rows, cols, entries)
    }
}

/// The margins of `M(a,b,c,d)`: `a x c` matrices with common row sum `b`
/// and common column sum `d`.  Non-empty only when `a*b == c*d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct MarginSpec {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
}

impl MarginSpec {
    pub fn new(a: usize, b: usize, c: usize, d: usize) -> Result<Self> {
        if a == 0 || c == 0 {
            return Err(Error::ShapeMismatch(
                "margin spec needs positive row and column counts".into(),
            ));
        }
        if a * b != c * d {
            return Err(Error::EmptySpec { a, b, c, d });
        }
        Ok(MarginSpec { a, b, c, d })
    }

    fn check_guards(&self, guards: &Guards) -> Result<()> {
        let cells = self.a * self.c;
        if cells > guards.max_cells {
            return Err(Error::GuardExceeded {
                what: "matrix cell count a*c",
                actual: cells as u64,
                limit: guards.max_cells as u64,
            });
        }
        if self.b > guards.max_row_sum {
            return Err(Error::GuardExceeded {
                what: "row sum b",
                actual: self.b as u64,
                limit: guards.max_row_sum as u64,
            });
        }
        Ok(())
    }
}

/// Hashable representative of a congruence class.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CongruenceKey {
    /// Canonical form; a fixed point of [`canonical_form`].
    pub canonical: NatMatrix,
    /// Whether the square-transpose move was part of the group.
    pub transpose_allowed: bool,
}

/// Multiset of block sizes of the block-diagonal normal form of a matrix
/// in `M(2o,2,2o,2)`, stored ascending.  The sizes partition `2o`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BlockProfile {
    pub sizes: Vec<usize>,
}

/// Visits every matrix of `M(a,b,c,d)` exactly once in lexicographic
/// row-major order and returns the count.
///
/// Rows are filled top to bottom, entries left to right against residual
/// column sums, candidate values ascending.
pub fn enumerate_margin_matrices(
    spec: &MarginSpec,
    guards: &Guards,
    mut visit: impl FnMut(&NatMatrix),
) -> Result<u64> {
    spec.check_guards(guards)?;
    Ok(enumerate_impl(spec, false, &mut visit))
}

/// Like [`enumerate_margin_matrices`] but restricted to matrices whose rows
/// are lexicographically non-decreasing.  Every congruence class of the
/// full set has at least one such representative, which makes this the
/// backbone of class enumeration.
pub fn enumerate_row_sorted_matrices(
    spec: &MarginSpec,
    guards: &Guards,
    mut visit: impl FnMut(&NatMatrix),
) -> Result<u64> {
    spec.check_guards(guards)?;
    Ok(enumerate_impl(spec, true, &mut visit))
}

fn enumerate_impl(spec: &MarginSpec, row_sorted: bool, visit: &mut impl FnMut(&NatMatrix)) -> u64 {
    let mut m = NatMatrix::zero(spec.a, spec.c);
    let mut col_rem: Vec<u32> = vec![spec.d as u32; spec.c];
    let mut count = 0u64;
    fill_cell(
        spec,
        row_sorted,
        &mut m,
        &mut col_rem,
        0,
        0,
        spec.b as u32,
        true,
        visit,
        &mut count,
    );
    count
}

#[allow(clippy::too_many_arguments)]
fn fill_cell(
    spec: &MarginSpec,
    row_sorted: bool,
    m: &mut NatMatrix,
    col_rem: &mut [u32],
    i: usize,
    j: usize,
    row_rem: u32,
    tied: bool,
    visit: &mut impl FnMut(&NatMatrix),
    count: &mut u64,
) {
    if j == spec.c {
        debug_assert_eq!(row_rem, 0);
        if i + 1 == spec.a {
            if col_rem.iter().all(|&r| r == 0) {
                *count += 1;
                visit(m);
            }
        } else {
            // Remaining rows must be able to absorb every residual column.
            let remaining = (spec.a - i - 1) as u32;
            if col_rem.iter().all(|&r| r <= remaining * spec.b as u32) {
                fill_cell(
                    spec,
                    row_sorted,
                    m,
                    col_rem,
                    i + 1,
                    0,
                    spec.b as u32,
                    row_sorted,
                    visit,
                    count,
                );
            }
        }
        return;
    }
    let last_col = j + 1 == spec.c;
    let max_e = row_rem.min(col_rem[j]);
    let lower = if tied && i > 0 {
        m.get(i - 1, j).min(max_e + 1)
    } else {
        0
    };
    // In the last column the entry is forced by the row sum.
    let candidates: std::ops::RangeInclusive<u32> = if last_col {
        row_rem..=row_rem
    } else {
        lower..=max_e
    };
    for e in candidates {
        if e > max_e || (tied && i > 0 && e < m.get(i - 1, j)) {
            continue;
        }
        let still_tied = tied && i > 0 && e == m.get(i - 1, j);
        m.set(i, j, e);
        col_rem[j] -= e;
        fill_cell(
            spec,
            row_sorted,
            m,
            col_rem,
            i,
            j + 1,
            row_rem - e,
            still_tied,
            visit,
            count,
        );
        col_rem[j] += e;
        m.set(i, j, 0);
    }
}

/// Lexicographically smallest row-major entry sequence over all row
/// permutations and column permutations, plus the transpose when allowed
/// and the matrix is square.  Idempotent and constant on congruence
/// classes.
pub fn canonical_form(a: &NatMatrix, allow_transpose: bool, guards: &Guards) -> Result<NatMatrix> {
    let mut budget = guards.canon_node_budget;
    let mut best = min_over_congruence(a, &mut budget)?;
    if allow_transpose && a.is_square() {
        let t = a.transpose();
        if t != *a {
            let best_t = min_over_congruence(&t, &mut budget)?;
            if best_t < best {
                best = best_t;
            }
        }
    }
    Ok(best)
}

/// Minimum over row and column permutations only (no transpose move).
///
/// For a fixed column permutation the optimal row order is obtained by
/// sorting rows, so the search branches over column choices.  The branch
/// is pruned against the incumbent through the first output row, whose
/// prefix is determined by the chosen columns.
fn min_over_congruence(a: &NatMatrix, budget: &mut u64) -> Result<NatMatrix> {
    let cols: Vec<Vec<u32>> = (0..a.cols())
        .map(|j| (0..a.rows()).map(|i| a.get(i, j)).collect())
        .collect();
    let mut search = ColPermSearch {
        a,
        cols,
        chosen: Vec::with_capacity(a.cols()),
        used: vec![false; a.cols()],
        best: None,
        budget,
    };
    let all_rows: Vec<usize> = (0..a.rows()).collect();
    search.dfs(&all_rows, false)?;
    Ok(search.best.expect("search visits at least one leaf"))
}

struct ColPermSearch<'a> {
    a: &'a NatMatrix,
    cols: Vec<Vec<u32>>,
    chosen: Vec<usize>,
    used: Vec<bool>,
    best: Option<NatMatrix>,
    budget: &'a mut u64,
}

impl ColPermSearch<'_> {
    fn dfs(&mut self, active_rows: &[usize], strictly_less: bool) -> Result<()> {
        if *self.budget == 0 {
            return Err(Error::GuardExceeded {
                what: "canonical-form node budget",
                actual: 0,
                limit: 0,
            });
        }
        *self.budget -= 1;
        let p = self.chosen.len();
        if p == self.a.cols() {
            let candidate = self.realize();
            if self.best.as_ref().is_none_or(|b| candidate < *b) {
                self.best = Some(candidate);
            }
            return Ok(());
        }
        let mut seen: BTreeSet<Vec<u32>> = BTreeSet::new();
        for j in 0..self.a.cols() {
            if self.used[j] {
                continue;
            }
            // Identical unused columns lead to identical subtrees.
            if !seen.insert(self.cols[j].clone()) {
                continue;
            }
            let v = active_rows.iter().map(|&r| self.a.get(r, j)).min().unwrap();
            let mut next_less = strictly_less;
            if !strictly_less {
                if let Some(best) = &self.best {
                    let bound = best.get(0, p);
                    if v > bound {
                        continue;
                    }
                    if v < bound {
                        next_less = true;
                    }
                }
            }
            let next_active: Vec<usize> = active_rows
                .iter()
                .copied()
                .filter(|&r| self.a.get(r, j) == v)
                .collect();
            self.chosen.push(j);
            self.used[j] = true;
            self.dfs(&next_active, next_less)?;
            self.used[j] = false;
            self.chosen.pop();
        }
        Ok(())
    }

    /// Applies the chosen column order and sorts rows, yielding the least
    /// row-major sequence for this column permutation.
    fn realize(&self) -> NatMatrix {
        let mut rows: Vec<Vec<u32>> = (0..self.a.rows())
            .map(|i| self.chosen.iter().map(|&j| self.a.get(i, j)).collect())
            .collect();
        rows.sort();
        NatMatrix::from_rows(&rows).expect("shape preserved")
    }
}

/// Congruence test including the square-transpose move.  Incompatible
/// shapes simply return `false`.
pub fn are_congruent(a: &NatMatrix, b: &NatMatrix, guards: &Guards) -> Result<bool> {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return Ok(false);
    }
    Ok(canonical_form(a, true, guards)? == canonical_form(b, true, guards)?)
}

/// Congruence by row and column permutations only.
pub fn are_congruent_no_transpose(a: &NatMatrix, b: &NatMatrix, guards: &Guards) -> Result<bool> {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return Ok(false);
    }
    Ok(canonical_form(a, false, guards)? == canonical_form(b, false, guards)?)
}

/// One representative per congruence class of `M(a,b,c,d)`, sorted by
/// canonical row-major order.
pub fn enumerate_congruence_classes(
    spec: &MarginSpec,
    guards: &Guards,
) -> Result<Vec<CongruenceKey>> {
    enumerate_congruence_classes_opts(spec, true, guards)
}

/// Class enumeration with an explicit choice of whether the transpose move
/// belongs to the group.
pub fn enumerate_congruence_classes_opts(
    spec: &MarginSpec,
    allow_transpose: bool,
    guards: &Guards,
) -> Result<Vec<CongruenceKey>> {
    let mut canon: BTreeSet<NatMatrix> = BTreeSet::new();
    let mut err: Option<Error> = None;
    enumerate_row_sorted_matrices(spec, guards, |m| {
        if err.is_some() {
            return;
        }
        match canonical_form(m, allow_transpose, guards) {
            Ok(c) => {
                canon.insert(c);
            }
            Err(e) => err = Some(e),
        }
    })?;
    if let Some(e) = err {
        return Err(e);
    }
    Ok(canon
        .into_iter()
        .map(|canonical| CongruenceKey {
            canonical,
            transpose_allowed: allow_transpose,
        })
        .collect())
}

/// Multiset of block sizes of the block-diagonal normal form of a matrix
/// in `M(2o,2,2o,2)`.
///
/// A `2`-entry closes a `1x1` block; a cycle of `1`-entries alternating
/// between shared rows and shared columns closes a `kxk` block with `k`
/// rows.  Blocks therefore correspond to connected components of the
/// bipartite incidence structure, with the block size equal to the number
/// of rows in the component.
#[allow(clippy::needless_range_loop)]
pub fn block_normal_form(a: &NatMatrix) -> Result<BlockProfile> {
    let dim = a.rows();
    if !a.is_square() {
        return Err(Error::MarginViolation(format!(
            "expected a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let spec = MarginSpec::new(dim, 2, dim, 2)?;
    if !a.satisfies(&spec) {
        return Err(Error::MarginViolation(
            "matrix is not in M(2o,2,2o,2): some row or column does not sum to 2".into(),
        ));
    }
    let mut row_seen = vec![false; dim];
    let mut col_seen = vec![false; dim];
    let mut sizes = Vec::new();
    for start in 0..dim {
        if row_seen[start] {
            continue;
        }
        // Breadth-first walk of the component containing row `start`.
        let mut block_rows = 0usize;
        let mut stack = vec![(start, true)];
        row_seen[start] = true;
        while let Some((v, is_row)) = stack.pop() {
            if is_row {
                block_rows += 1;
                for j in 0..dim {
                    if a.get(v, j) > 0 && !col_seen[j] {
                        col_seen[j] = true;
                        stack.push((j, false));
                    }
                }
            } else {
                for i in 0..dim {
                    if a.get(i, v) > 0 && !row_seen[i] {
                        row_seen[i] = true;
                        stack.push((i, true));
                    }
                }
            }
        }
        sizes.push(block_rows);
    }
    sizes.sort_unstable();
    debug_assert_eq!(sizes.iter().sum::<usize>(), dim);
    Ok(BlockProfile { sizes })
}

/// Number of `2`-entries of a matrix in `M(2,n,n,2)`; a complete congruence
/// invariant there, always even.
pub fn two_entry_invariant(a: &NatMatrix) -> Result<usize> {
    let n = a.cols();
    let spec = MarginSpec::new(2, n, n, 2)?;
    if !a.satisfies(&spec) {
        return Err(Error::MarginViolation(
            "matrix is not in M(2,n,n,2): shape or margins are off".into(),
        ));
    }
    Ok(a.entries().iter().filter(|&&e| e == 2).count())
}

/// Number of integer partitions of `k`, with `p(0) = 1`.
pub fn partition_count(k: usize, guards: &Guards) -> Result<u64> {
    if k > guards.partition_bound {
        return Err(Error::GuardExceeded {
            what: "partition function argument",
            actual: k as u64,
            limit: guards.partition_bound as u64,
        });
    }
    // Standard DP over the largest allowed part.
    let mut ways = vec![0u64; k + 1];
    ways[0] = 1;
    for part in 1..=k {
        for total in part..=k {
            ways[total] += ways[total - part];
        }
    }
    Ok(ways[k])
}
