//! The spectrum model: bipartite multigraphs from matrices, multigraph
//! isomorphism via canonical labeling, degree-2 smoothing, and
//! homeomorphism-type fingerprints.
//!
//! The geometric realisation of the bipartite multigraph of a matrix is
//! the spectrum being classified.  Smoothing suppresses valency-2 vertices
//! (the inverse of barycentric subdivision); components that are entirely
//! valency-2 collapse to circles, which are counted rather than kept.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::guards::Guards;
use crate::matrices::NatMatrix;

/// Bipartite multigraph: row vertices, column vertices, and a multiplicity
/// matrix counting parallel edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteMultigraph {
    mult: NatMatrix,
}

impl BipartiteMultigraph {
    pub fn row_count(&self) -> usize {
        self.mult.rows()
    }

    pub fn col_count(&self) -> usize {
        self.mult.cols()
    }

    pub fn multiplicity(&self) -> &NatMatrix {
        &self.mult
    }

    /// Valency of row vertex `i`.
    pub fn row_valency(&self, i: usize) -> u32 {
        self.mult.row_sum(i)
    }

    /// Valency of column vertex `j`.
    pub fn col_valency(&self, j: usize) -> u32 {
        self.mult.col_sum(j)
    }

    /// Forgets the bipartition: row vertex `i` becomes vertex `i`, column
    /// vertex `j` becomes vertex `row_count + j`.
    pub fn to_multigraph(&self) -> Multigraph {
        let rows = self.row_count();
        let mut edges = Vec::new();
        for i in 0..rows {
            for j in 0..self.col_count() {
                for _ in 0..self.mult.get(i, j) {
                    edges.push((i, rows + j));
                }
            }
        }
        Multigraph::new(rows + self.col_count(), edges).expect("endpoints in range")
    }
}

/// The bipartite multigraph associated with a matrix: rows and columns as
/// vertices, entry `A[i][j]` parallel edges between row `i` and column `j`.
pub fn graph_from_matrix(a: &NatMatrix) -> BipartiteMultigraph {
    BipartiteMultigraph { mult: a.clone() }
}

/// General multigraph with loops; a loop contributes 2 to its vertex's
/// valency.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Multigraph {
    vertex_count: usize,
    /// Unordered edges stored as `(min, max)`, sorted; loops as `(v, v)`.
    edges: Vec<(usize, usize)>,
}

impl Multigraph {
    pub fn new(vertex_count: usize, mut edges: Vec<(usize, usize)>) -> Result<Self> {
        for e in edges.iter_mut() {
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
            if e.1 >= vertex_count {
                return Err(Error::ShapeMismatch(format!(
                    "edge endpoint {} out of range 0..{vertex_count}",
                    e.1
                )));
            }
        }
        edges.sort_unstable();
        Ok(Multigraph {
            vertex_count,
            edges,
        })
    }

    pub fn empty() -> Self {
        Multigraph {
            vertex_count: 0,
            edges: Vec::new(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn valency(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|&(a, b)| {
                if a == v && b == v {
                    2
                } else if a == v || b == v {
                    1
                } else {
                    0
                }
            })
            .sum()
    }

    pub fn loop_count(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == v && b == v)
            .count()
    }
}

/// Connected components as vertex sets, sorted by (size, least vertex).
pub fn connected_components(g: &Multigraph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut comp = vec![usize::MAX; n];
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(a, b) in g.edges() {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut next = 0usize;
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        let mut stack = vec![start];
        comp[start] = next;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if comp[w] == usize::MAX {
                    comp[w] = next;
                    stack.push(w);
                }
            }
        }
        next += 1;
    }
    let mut sets: Vec<Vec<usize>> = vec![Vec::new(); next];
    for (v, &c) in comp.iter().enumerate() {
        sets[c].push(v);
    }
    sets.sort_by_key(|s| (s.len(), s[0]));
    sets
}

/// Components of the bipartite multigraph, over the combined vertex set of
/// [`BipartiteMultigraph::to_multigraph`].
pub fn bipartite_components(g: &BipartiteMultigraph) -> Vec<Vec<usize>> {
    connected_components(&g.to_multigraph())
}

/// Homeomorphism-type fingerprint of a geometric realisation: number of
/// circle components plus the canonical form of the smoothed core.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HomeoType {
    pub circle_count: usize,
    /// Canonical smoothed multigraph with no non-loop valency-2 vertex;
    /// empty when the whole graph was a union of circles.
    pub core: Multigraph,
}

/// Suppresses non-loop valency-2 vertices until none remain, counting the
/// all-valency-2 components as circles and returning the canonical core.
pub fn smooth(g: &BipartiteMultigraph, guards: &Guards) -> Result<HomeoType> {
    smooth_multigraph(&g.to_multigraph(), guards, |cands| cands[0])
}

/// Like [`smooth`] but suppressing eligible vertices in an order driven by
/// `seed`; the result must agree with [`smooth`] (confluence).
pub fn smooth_randomized(g: &BipartiteMultigraph, seed: u64, guards: &Guards) -> Result<HomeoType> {
    let mut state = seed.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(1);
    smooth_multigraph(&g.to_multigraph(), guards, move |cands| {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        cands[(state % cands.len() as u64) as usize]
    })
}

fn smooth_multigraph(
    g: &Multigraph,
    guards: &Guards,
    mut pick: impl FnMut(&[usize]) -> usize,
) -> Result<HomeoType> {
    let n = g.vertex_count();
    // Multiplicity maps; loops stored once under (v, v).
    let mut adj: Vec<BTreeMap<usize, usize>> = vec![BTreeMap::new(); n];
    for &(a, b) in g.edges() {
        *adj[a].entry(b).or_insert(0) += 1;
        if a != b {
            *adj[b].entry(a).or_insert(0) += 1;
        }
    }
    let valency = |adj: &[BTreeMap<usize, usize>], v: usize| -> usize {
        adj[v]
            .iter()
            .map(|(&w, &m)| if w == v { 2 * m } else { m })
            .sum()
    };
    let suppressible = |adj: &[BTreeMap<usize, usize>], v: usize| -> bool {
        valency(adj, v) == 2 && !adj[v].contains_key(&v)
    };

    loop {
        let candidates: Vec<usize> = (0..n).filter(|&v| suppressible(&adj, v)).collect();
        if candidates.is_empty() {
            break;
        }
        let v = pick(&candidates);
        let incident: Vec<(usize, usize)> = adj[v].iter().map(|(&w, &m)| (w, m)).collect();
        let (a, b) = match incident.as_slice() {
            [(w, 2)] => (*w, *w),
            [(w1, 1), (w2, 1)] => (*w1, *w2),
            _ => unreachable!("valency-2 non-loop vertex has exactly two edge ends"),
        };
        // Remove v's edges, then join its two neighbors (a loop if equal).
        adj[v].clear();
        adj[a].remove(&v);
        adj[b].remove(&v);
        *adj[a].entry(b).or_insert(0) += 1;
        if a != b {
            *adj[b].entry(a).or_insert(0) += 1;
        }
    }

    // Reassemble the remaining multigraph, dropping fully suppressed
    // vertices (empty adjacency and never referenced).
    let mut edges = Vec::new();
    for (v, nbrs) in adj.iter().enumerate() {
        for (&w, &m) in nbrs {
            if w >= v {
                for _ in 0..m {
                    edges.push((v, w));
                }
            }
        }
    }
    let alive: Vec<usize> = (0..n)
        .filter(|&v| !adj[v].is_empty() || (g.valency(v) == 0))
        .collect();
    let index: BTreeMap<usize, usize> = alive.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let remaining = Multigraph::new(
        alive.len(),
        edges.iter().map(|&(a, b)| (index[&a], index[&b])).collect(),
    )?;

    // Circle components: entirely valency 2.  After suppression these are
    // single vertices carrying one loop.
    let mut circle_count = 0;
    let mut core_vertices = Vec::new();
    for comp in connected_components(&remaining) {
        if !comp.is_empty() && comp.iter().all(|&v| remaining.valency(v) == 2) {
            circle_count += 1;
        } else {
            core_vertices.extend(comp);
        }
    }
    core_vertices.sort_unstable();
    let core_index: BTreeMap<usize, usize> = core_vertices
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i))
        .collect();
    let core_edges: Vec<(usize, usize)> = remaining
        .edges()
        .iter()
        .filter(|(a, _)| core_index.contains_key(a))
        .map(|&(a, b)| (core_index[&a], core_index[&b]))
        .collect();
    let core = canonical_multigraph(&Multigraph::new(core_vertices.len(), core_edges)?, guards)?;
    Ok(HomeoType { circle_count, core })
}

/// Smoothing fingerprint of a matrix's bipartite graph.
pub fn homeo_type(a: &NatMatrix, guards: &Guards) -> Result<HomeoType> {
    smooth(&graph_from_matrix(a), guards)
}

/// Canonical relabeling: the vertex ordering minimizing the row-by-row
/// adjacency encoding, searched with valency/loop refinement classes.
pub fn canonical_multigraph(g: &Multigraph, guards: &Guards) -> Result<Multigraph> {
    let n = g.vertex_count();
    if n == 0 {
        return Ok(Multigraph::empty());
    }
    let mut mult = vec![vec![0u32; n]; n];
    for &(a, b) in g.edges() {
        if a == b {
            mult[a][a] += 1;
        } else {
            mult[a][b] += 1;
            mult[b][a] += 1;
        }
    }

    // Refined colors: start from (valency, loops), then repeatedly append
    // the sorted multiset of (neighbor color, multiplicity) until stable.
    let mut colors: Vec<u64> = (0..n)
        .map(|v| ((g.valency(v) as u64) << 32) | g.loop_count(v) as u64)
        .collect();
    let distinct = |cs: &[u64]| {
        let mut s: Vec<u64> = cs.to_vec();
        s.sort_unstable();
        s.dedup();
        s.len()
    };
    let mut class_count = distinct(&colors);
    loop {
        type Signature = (u64, Vec<(u64, u32)>);
        let signatures: Vec<Signature> = (0..n)
            .map(|v| {
                let mut neigh: Vec<(u64, u32)> = (0..n)
                    .filter(|&w| w != v && mult[v][w] > 0)
                    .map(|w| (colors[w], mult[v][w]))
                    .collect();
                neigh.sort_unstable();
                (colors[v], neigh)
            })
            .collect();
        let mut sorted: Vec<&Signature> = signatures.iter().collect();
        sorted.sort();
        sorted.dedup();
        let lookup: BTreeMap<&Signature, u64> = sorted
            .iter()
            .enumerate()
            .map(|(i, &s)| (s, i as u64))
            .collect();
        colors = signatures.iter().map(|s| lookup[s]).collect();
        // The signature contains the previous color, so the partition only
        // ever refines; a constant class count means a fixpoint.
        let next_count = distinct(&colors);
        if next_count == class_count {
            break;
        }
        class_count = next_count;
    }

    let mut search = CanonSearch {
        n,
        mult: &mult,
        loops: (0..n).map(|v| g.loop_count(v) as u32).collect(),
        colors,
        order: Vec::with_capacity(n),
        assigned: vec![false; n],
        encoding: Vec::new(),
        best: None,
        budget: guards.canon_node_budget,
    };
    search.dfs(false)?;
    let best_order = search.best.expect("at least one ordering").1;
    let mut position = vec![0usize; n];
    for (p, &v) in best_order.iter().enumerate() {
        position[v] = p;
    }
    Multigraph::new(
        n,
        g.edges()
            .iter()
            .map(|&(a, b)| (position[a], position[b]))
            .collect(),
    )
}

struct CanonSearch<'a> {
    n: usize,
    mult: &'a [Vec<u32>],
    loops: Vec<u32>,
    colors: Vec<u64>,
    order: Vec<usize>,
    assigned: Vec<bool>,
    encoding: Vec<u32>,
    best: Option<(Vec<u32>, Vec<usize>)>,
    budget: u64,
}

impl CanonSearch<'_> {
    fn dfs(&mut self, strictly_less: bool) -> Result<()> {
        if self.budget == 0 {
            return Err(Error::GuardExceeded {
                what: "canonical-labeling node budget",
                actual: 0,
                limit: 0,
            });
        }
        self.budget -= 1;
        let p = self.order.len();
        if p == self.n {
            if self
                .best
                .as_ref()
                .is_none_or(|(enc, _)| self.encoding < *enc)
            {
                self.best = Some((self.encoding.clone(), self.order.clone()));
            }
            return Ok(());
        }
        // Candidates: unassigned vertices of minimal refined color; color
        // ids are isomorphism-invariant, so this restriction is sound.
        let min_color = (0..self.n)
            .filter(|&v| !self.assigned[v])
            .map(|v| self.colors[v])
            .min()
            .unwrap();
        for v in 0..self.n {
            if self.assigned[v] || self.colors[v] != min_color {
                continue;
            }
            // Encoding row: multiplicities towards already placed vertices,
            // then the loop count.
            let base = self.encoding.len();
            for &w in &self.order {
                self.encoding.push(self.mult[v][w]);
            }
            self.encoding.push(self.loops[v]);

            let mut next_less = strictly_less;
            let mut prune = false;
            if !strictly_less {
                if let Some((best, _)) = &self.best {
                    let new = &self.encoding[base..];
                    let old = &best[base..base + new.len()];
                    match new.cmp(old) {
                        std::cmp::Ordering::Greater => prune = true,
                        std::cmp::Ordering::Less => next_less = true,
                        std::cmp::Ordering::Equal => {}
                    }
                }
            }
            if !prune {
                self.order.push(v);
                self.assigned[v] = true;
                self.dfs(next_less)?;
                self.assigned[v] = false;
                self.order.pop();
            }
            self.encoding.truncate(base);
        }
        Ok(())
    }
}

/// True iff a vertex bijection carries the edge multiset of `g` onto that
/// of `h` (loops to loops).
pub fn are_isomorphic(g: &Multigraph, h: &Multigraph, guards: &Guards) -> Result<bool> {
    let combined = g.vertex_count() + h.vertex_count();
    if combined > guards.iso_max_vertices {
        return Err(Error::GuardExceeded {
            what: "isomorphism vertex total",
            actual: combined as u64,
            limit: guards.iso_max_vertices as u64,
        });
    }
    if g.vertex_count() != h.vertex_count() || g.edges().len() != h.edges().len() {
        return Ok(false);
    }
    let degseq = |m: &Multigraph| {
        let mut d: Vec<(usize, usize)> = (0..m.vertex_count())
            .map(|v| (m.valency(v), m.loop_count(v)))
            .collect();
        d.sort_unstable();
        d
    };
    if degseq(g) != degseq(h) {
        return Ok(false);
    }
    Ok(canonical_multigraph(g, guards)? == canonical_multigraph(h, guards)?)
}

/// Deterministic DOT text for a bipartite multigraph; parallel edges are
/// emitted repeatedly.
pub fn bipartite_to_dot(g: &BipartiteMultigraph) -> String {
    let mut out = String::from("graph {\n");
    for i in 0..g.row_count() {
        let _ = writeln!(out, "  r{};", i + 1);
    }
    for j in 0..g.col_count() {
        let _ = writeln!(out, "  c{};", j + 1);
    }
    for i in 0..g.row_count() {
        for j in 0..g.col_count() {
            for _ in 0..g.multiplicity().get(i, j) {
                let _ = writeln!(out, "  r{} -- c{};", i + 1, j + 1);
            }
        }
    }
    out.push_str("}\n");
    out
}

/// Deterministic DOT text for a general multigraph.
pub fn multigraph_to_dot(g: &Multigraph) -> String {
    let mut out = String::from("graph {\n");
    for v in 0..g.vertex_count() {
        let _ = writeln!(out, "  v{};", v + 1);
    }
    for &(a, b) in g.edges() {
        let _ = writeln!(out, "  v{} -- v{};", a + 1, b + 1);
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrices::NatMatrix;

    fn g() -> Guards {
        Guards::default()
    }

    fn mat(rows: &[&[u32]]) -> NatMatrix {
        NatMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn graph_from_matrix_valencies() {
        let graph = graph_from_matrix(&mat(&[&[1, 1], &[1, 1]]));
        for i in 0..2 {
            assert_eq!(graph.row_valency(i), 2);
            assert_eq!(graph.col_valency(i), 2);
        }
        // Single 4-cycle.
        assert_eq!(bipartite_components(&graph).len(), 1);

        let double = graph_from_matrix(&mat(&[&[2, 0], &[0, 2]]));
        let comps = bipartite_components(&double);
        assert_eq!(comps.len(), 2);
        assert!(comps.iter().all(|c| c.len() == 2));
    }

    #[test]
    fn components_of_edgeless_graph() {
        let empty = Multigraph::new(3, vec![]).unwrap();
        let comps = connected_components(&empty);
        assert_eq!(comps, vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn smooth_examples() {
        let cycle = smooth(&graph_from_matrix(&mat(&[&[1, 1], &[1, 1]])), &g()).unwrap();
        assert_eq!(cycle.circle_count, 1);
        assert_eq!(cycle.core.vertex_count(), 0);

        let two = smooth(&graph_from_matrix(&mat(&[&[2, 0], &[0, 2]])), &g()).unwrap();
        assert_eq!(two.circle_count, 2);
        assert_eq!(two.core.vertex_count(), 0);

        let ones3 = mat(&[&[1, 1, 1], &[1, 1, 1], &[1, 1, 1]]);
        let t = smooth(&graph_from_matrix(&ones3), &g()).unwrap();
        assert_eq!(t.circle_count, 0);
        assert_eq!(t.core.vertex_count(), 6);
        assert_eq!(t.core.edges().len(), 9);

        let single = smooth(&graph_from_matrix(&mat(&[&[2]])), &g()).unwrap();
        assert_eq!(single.circle_count, 1);
        assert_eq!(single.core.vertex_count(), 0);
    }

    #[test]
    fn suppression_preserves_euler_bookkeeping() {
        // Each suppression removes one vertex and one edge, so vertex and
        // edge counts drop in lockstep; circles account for the rest.
        let a = mat(&[&[2, 1, 0], &[0, 1, 2], &[1, 1, 1]]);
        let graph = graph_from_matrix(&a);
        let before_vertices = graph.row_count() + graph.col_count();
        let before_edges: u32 = a.entries().iter().sum();
        let t = smooth(&graph, &g()).unwrap();
        let after_vertices = t.core.vertex_count();
        let after_edges = t.core.edges().len();
        assert_eq!(
            before_vertices as i64 - before_edges as i64,
            after_vertices as i64 - after_edges as i64
        );
    }

    #[test]
    fn isomorphism_examples() {
        let cycle = graph_from_matrix(&mat(&[&[1, 1], &[1, 1]])).to_multigraph();
        assert!(are_isomorphic(&cycle, &cycle, &g()).unwrap());

        let two = graph_from_matrix(&mat(&[&[2, 0], &[0, 2]])).to_multigraph();
        assert!(!are_isomorphic(&cycle, &two, &g()).unwrap());

        let swapped = graph_from_matrix(&mat(&[&[0, 2], &[2, 0]])).to_multigraph();
        assert!(are_isomorphic(&two, &swapped, &g()).unwrap());
    }

    #[test]
    fn isomorphism_guard() {
        let big = Multigraph::new(10, vec![]).unwrap();
        let guards = Guards {
            iso_max_vertices: 16,
            ..Guards::default()
        };
        assert!(are_isomorphic(&big, &big, &guards).is_err());
    }

    #[test]
    fn homeo_type_examples() {
        let one_circle = homeo_type(&mat(&[&[1, 1], &[1, 1]]), &g()).unwrap();
        let two_circles = homeo_type(&mat(&[&[2, 0], &[0, 2]]), &g()).unwrap();
        assert_ne!(one_circle, two_circles);
        assert_eq!(one_circle.circle_count, 1);
        assert_eq!(two_circles.circle_count, 2);

        let a = mat(&[&[1, 2, 0], &[0, 1, 2], &[2, 0, 1]]);
        assert_eq!(
            homeo_type(&a, &g()).unwrap(),
            homeo_type(&a.transpose(), &g()).unwrap()
        );

        // The two extreme block profiles of M(4,2,4,2).
        let diag = mat(&[&[2, 0, 0, 0], &[0, 2, 0, 0], &[0, 0, 2, 0], &[0, 0, 0, 2]]);
        let chain = mat(&[&[1, 1, 0, 0], &[1, 0, 1, 0], &[0, 1, 0, 1], &[0, 0, 1, 1]]);
        assert_eq!(homeo_type(&diag, &g()).unwrap().circle_count, 4);
        assert_eq!(homeo_type(&chain, &g()).unwrap().circle_count, 1);
    }

    #[test]
    fn smoothing_confluence() {
        for seed in 0..40u64 {
            let a = mat(&[&[2, 1, 0], &[0, 1, 2], &[1, 1, 1]]);
            let graph = graph_from_matrix(&a);
            assert_eq!(
                smooth(&graph, &g()).unwrap(),
                smooth_randomized(&graph, seed, &g()).unwrap()
            );
        }
    }

    #[test]
    fn dot_output() {
        let one = bipartite_to_dot(&graph_from_matrix(&mat(&[&[1]])));
        assert_eq!(one.matches("r1 -- c1;").count(), 1);

        let two = bipartite_to_dot(&graph_from_matrix(&mat(&[&[2]])));
        assert_eq!(two.matches("r1 -- c1;").count(), 2);

        let empty = multigraph_to_dot(&Multigraph::empty());
        assert_eq!(empty, "graph {\n}\n");
    }

    #[test]
    fn canonical_multigraph_is_idempotent_and_invariant() {
        let a = graph_from_matrix(&mat(&[&[1, 2], &[2, 1]])).to_multigraph();
        let canon = canonical_multigraph(&a, &g()).unwrap();
        assert_eq!(canonical_multigraph(&canon, &g()).unwrap(), canon);

        // Relabel and re-canonicalize.
        let relabeled =
            Multigraph::new(4, a.edges().iter().map(|&(x, y)| (3 - x, 3 - y)).collect()).unwrap();
        assert_eq!(canonical_multigraph(&relabeled, &g()).unwrap(), canon);
    }
}
