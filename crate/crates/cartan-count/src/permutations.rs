//! Permutations of the triple index set `{1..m} x {1..n} x {1..o}`, the
//! reduced-matrix map and its lifting, the flip conjugation, wreath-product
//! subgroups, and the brute-force double-coset classification oracle.
//!
//! Triples are encoded over flat indices: `(i,j,k)` (0-based internally,
//! 1-based in all I/O) maps to `(i*n + j)*o + k`, so the third coordinate
//! varies fastest.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::guards::Guards;
use crate::matrices::{MarginSpec, NatMatrix};

/// The dimension drop parameter triple `(m, n, o)`, all at least 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
pub struct Params {
    pub m: usize,
    pub n: usize,
    pub o: usize,
}

impl Params {
    pub fn new(m: usize, n: usize, o: usize) -> Result<Self> {
        if m == 0 || n == 0 || o == 0 {
            return Err(Error::ShapeMismatch(format!(
                "parameters must be positive, got ({m}, {n}, {o})"
            )));
        }
        Ok(Params { m, n, o })
    }

    /// Size of the permuted set, `m * n * o`.
    pub fn degree(&self) -> usize {
        self.m * self.n * self.o
    }

    pub fn flat(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.n + j) * self.o + k
    }

    pub fn unflat(&self, x: usize) -> (usize, usize, usize) {
        let k = x % self.o;
        let rest = x / self.o;
        (rest / self.n, rest % self.n, k)
    }

    /// Margins of the reduced matrices: `M(mo, n, no, m)`.
    pub fn margin_spec(&self) -> MarginSpec {
        MarginSpec::new(self.m * self.o, self.n, self.n * self.o, self.m)
            .expect("mo*n == no*m always holds")
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.m, self.n, self.o)
    }
}

/// A bijection of the triple index set, stored as flat images.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TriplePermutation {
    params: Params,
    images: Vec<usize>,
}

impl TriplePermutation {
    pub fn identity(params: Params) -> Self {
        TriplePermutation {
            params,
            images: (0..params.degree()).collect(),
        }
    }

    pub fn from_images(params: Params, images: Vec<usize>) -> Result<Self> {
        let deg = params.degree();
        if images.len() != deg {
            return Err(Error::Parse(format!(
                "expected {deg} images, got {}",
                images.len()
            )));
        }
        let mut seen = vec![false; deg];
        for &x in &images {
            if x >= deg || seen[x] {
                return Err(Error::Parse("images do not form a bijection".into()));
            }
            seen[x] = true;
        }
        Ok(TriplePermutation { params, images })
    }

    /// Builds a permutation from a mapping on triples (0-based).
    pub fn from_triple_map(
        params: Params,
        f: impl Fn(usize, usize, usize) -> (usize, usize, usize),
    ) -> Result<Self> {
        let images = (0..params.degree())
            .map(|x| {
                let (i, j, k) = params.unflat(x);
                let (i2, j2, k2) = f(i, j, k);
                params.flat(i2, j2, k2)
            })
            .collect();
        TriplePermutation::from_images(params, images)
    }

    /// The flip `(i,j,k) -> (j,i,k)`; requires `m == n`.
    pub fn flip(params: Params) -> Result<Self> {
        if params.m != params.n {
            return Err(Error::ShapeMismatch(format!(
                "flip needs m == n, got {params}"
            )));
        }
        TriplePermutation::from_triple_map(params, |i, j, k| (j, i, k))
    }

    pub fn params(&self) -> Params {
        self.params
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(x, &y)| x == y)
    }

    /// Group composition; `other` is applied first.
    pub fn compose(&self, other: &TriplePermutation) -> Result<TriplePermutation> {
        if self.params != other.params {
            let p = self.params;
            return Err(Error::ParamsMismatch(p.m, p.n, p.o));
        }
        let images = other.images.iter().map(|&x| self.images[x]).collect();
        Ok(TriplePermutation {
            params: self.params,
            images,
        })
    }

    pub fn invert(&self) -> TriplePermutation {
        let mut images = vec![0; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            images[y] = x;
        }
        TriplePermutation {
            params: self.params,
            images,
        }
    }

    /// Lexicographic rank of the image sequence among all permutations of
    /// the same degree (Lehmer code).
    pub fn rank(&self) -> u64 {
        rank_perm(&self.images)
    }
}

/// Text format: `m n o` on the first line, then the 1-based flat images.
impl fmt::Display for TriplePermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {} {}", self.params.m, self.params.n, self.params.o)?;
        let images: Vec<String> = self.images.iter().map(|&x| (x + 1).to_string()).collect();
        writeln!(f, "{}", images.join(" "))
    }
}

impl FromStr for TriplePermutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty permutation text".into()))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| {
                t.parse()
                    .map_err(|_| Error::Parse(format!("bad parameter `{t}`")))
            })
            .collect::<Result<_>>()?;
        if dims.len() != 3 {
            return Err(Error::Parse("header must be `m n o`".into()));
        }
        let params = Params::new(dims[0], dims[1], dims[2])?;
        let body = lines.collect::<Vec<_>>().join(" ");
        let body = body.trim();
        if body.starts_with('(') {
            parse_cycles(params, body)
        } else {
            let images: Vec<usize> = body
                .split_whitespace()
                .map(|t| {
                    let v: usize = t
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad image `{t}`")))?;
                    if v == 0 {
                        return Err(Error::Parse("images are 1-based".into()));
                    }
                    Ok(v - 1)
                })
                .collect::<Result<_>>()?;
            TriplePermutation::from_images(params, images)
        }
    }
}

/// One-line cycle notation over 1-based flat indices, e.g. `(1 2 3)(5 6)`.
fn parse_cycles(params: Params, s: &str) -> Result<TriplePermutation> {
    let deg = params.degree();
    let mut images: Vec<usize> = (0..deg).collect();
    let mut rest = s;
    while !rest.is_empty() {
        let rest_trim = rest.trim_start();
        if rest_trim.is_empty() {
            break;
        }
        if !rest_trim.starts_with('(') {
            return Err(Error::Parse("expected `(` starting a cycle".into()));
        }
        let close = rest_trim
            .find(')')
            .ok_or_else(|| Error::Parse("unclosed cycle".into()))?;
        let inner = &rest_trim[1..close];
        let cycle: Vec<usize> = inner
            .split(|ch: char| ch.is_whitespace() || ch == ',')
            .filter(|t| !t.is_empty())
            .map(|t| {
                let v: usize = t
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad cycle entry `{t}`")))?;
                if v == 0 || v > deg {
                    return Err(Error::Parse(format!(
                        "cycle entry {v} out of range 1..{deg}"
                    )));
                }
                Ok(v - 1)
            })
            .collect::<Result<_>>()?;
        for w in 0..cycle.len() {
            let from = cycle[w];
            let to = cycle[(w + 1) % cycle.len()];
            images[from] = to;
        }
        rest = &rest_trim[close + 1..];
    }
    TriplePermutation::from_images(params, images)
}

/// The two wreath-product subgroups: `Left` acts as the full symmetric
/// group on the `(i,k)` coordinates together with an independent symmetric
/// group on `j` per `(i,k)` fiber; `Right` is the mirror image with the
/// roles of `(j,k)` and `i` exchanged.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WreathSide {
    Left,
    Right,
}

/// A generating set of the chosen wreath-product subgroup; `O(mno)`
/// generators built from adjacent transpositions.
pub fn wreath_generators(params: Params, side: WreathSide) -> Vec<TriplePermutation> {
    let mut gens = Vec::new();
    let Params { m, n, o } = params;
    match side {
        WreathSide::Left => {
            // Sym(m x o) on the (i,k) coordinates.
            let pairs: Vec<(usize, usize)> =
                (0..m).flat_map(|i| (0..o).map(move |k| (i, k))).collect();
            for t in 0..pairs.len().saturating_sub(1) {
                let (a, b) = (pairs[t], pairs[t + 1]);
                gens.push(
                    TriplePermutation::from_triple_map(params, |i, j, k| {
                        if (i, k) == a {
                            (b.0, j, b.1)
                        } else if (i, k) == b {
                            (a.0, j, a.1)
                        } else {
                            (i, j, k)
                        }
                    })
                    .expect("bijection"),
                );
            }
            // Sym(n) on j, independently per (i,k) fiber.
            for &(fi, fk) in &pairs {
                for t in 0..n.saturating_sub(1) {
                    gens.push(
                        TriplePermutation::from_triple_map(params, |i, j, k| {
                            if (i, k) == (fi, fk) && j == t {
                                (i, t + 1, k)
                            } else if (i, k) == (fi, fk) && j == t + 1 {
                                (i, t, k)
                            } else {
                                (i, j, k)
                            }
                        })
                        .expect("bijection"),
                    );
                }
            }
        }
        WreathSide::Right => {
            // Sym(n x o) on the (j,k) coordinates.
            let pairs: Vec<(usize, usize)> =
                (0..n).flat_map(|j| (0..o).map(move |k| (j, k))).collect();
            for t in 0..pairs.len().saturating_sub(1) {
                let (a, b) = (pairs[t], pairs[t + 1]);
                gens.push(
                    TriplePermutation::from_triple_map(params, |i, j, k| {
                        if (j, k) == a {
                            (i, b.0, b.1)
                        } else if (j, k) == b {
                            (i, a.0, a.1)
                        } else {
                            (i, j, k)
                        }
                    })
                    .expect("bijection"),
                );
            }
            // Sym(m) on i, independently per (j,k) fiber.
            for &(fj, fk) in &pairs {
                for t in 0..m.saturating_sub(1) {
                    gens.push(
                        TriplePermutation::from_triple_map(params, |i, j, k| {
                            if (j, k) == (fj, fk) && i == t {
                                (t + 1, j, k)
                            } else if (j, k) == (fj, fk) && i == t + 1 {
                                (t, j, k)
                            } else {
                                (i, j, k)
                            }
                        })
                        .expect("bijection"),
                    );
                }
            }
        }
    }
    gens
}

/// The `(mo) x (no)` compression of a permutation: entry at row `(i,k)`,
/// column `(j',k')` counts the domain triples `(*, j', k')` whose image has
/// first coordinate `i` and third coordinate `k`.  Always lies in
/// `M(mo, n, no, m)`.
pub fn reduced_matrix(sigma: &TriplePermutation) -> NatMatrix {
    let p = sigma.params();
    let mut a = NatMatrix::zero(p.m * p.o, p.n * p.o);
    for x in 0..p.degree() {
        let (_, j1, k1) = p.unflat(x);
        let (i, _, k) = p.unflat(sigma.apply(x));
        let row = i * p.o + k;
        let col = j1 * p.o + k1;
        a.set(row, col, a.get(row, col) + 1);
    }
    a
}

/// Deterministic section of [`reduced_matrix`]: builds a permutation whose
/// reduced matrix is exactly `a`.
///
/// For each block position the entries are laid out along the diagonal
/// shifted by the cumulative column sum above (selecting first
/// coordinates) and the cumulative row sum to the left (selecting second
/// coordinates), in lexicographic order.
pub fn lift_matrix(a: &NatMatrix, params: Params) -> Result<TriplePermutation> {
    let spec = params.margin_spec();
    if !a.satisfies(&spec) {
        return Err(Error::MarginViolation(format!(
            "matrix is not in M({}, {}, {}, {})",
            spec.a, spec.b, spec.c, spec.d
        )));
    }
    let Params { m, n, o } = params;
    let deg = params.degree();
    let mut images = vec![usize::MAX; deg];
    for bi in 0..m {
        for bk in 0..o {
            let row = bi * o + bk;
            let mut s = 0usize; // cumulative row sum to the left
            for bj in 0..n {
                for bk2 in 0..o {
                    let col = bj * o + bk2;
                    let v = a.get(row, col) as usize;
                    if v > 0 {
                        let r: usize = (0..row).map(|rr| a.get(rr, col) as usize).sum();
                        for t in 0..v {
                            let from = params.flat(r + t, bj, bk2);
                            let to = params.flat(bi, s + t, bk);
                            images[from] = to;
                        }
                    }
                    s += v;
                }
            }
        }
    }
    TriplePermutation::from_images(params, images)
}

/// `flip . inverse . flip`: conjugation whose reduced matrix is the
/// transpose of the original one.  Defined for all `o`; requires `m == n`.
pub fn flip_conjugate(sigma: &TriplePermutation) -> Result<TriplePermutation> {
    let nu = TriplePermutation::flip(sigma.params())?;
    nu.compose(&sigma.invert())?.compose(&nu)
}

/// The double-coset decomposition of the full symmetric group on triples
/// under the two wreath-product subgroups.
#[derive(Debug, Clone)]
pub struct DoubleCosets {
    pub params: Params,
    /// Whether classes were additionally merged with their flip conjugates.
    pub flip_identified: bool,
    /// Lexicographically least representative per class, sorted.
    pub representatives: Vec<TriplePermutation>,
    /// Class sizes, aligned with `representatives`; they sum to `(mno)!`.
    pub sizes: Vec<u64>,
}

impl DoubleCosets {
    pub fn count(&self) -> usize {
        self.representatives.len()
    }
}

/// Partitions all of `Sym(m x n x o)` into double cosets of the two wreath
/// subgroups by union-find closure under left multiplication by `Left`
/// generators and right multiplication by `Right` generators.  When
/// `identify_flip` and `m == n`, the class of each element is merged with
/// the class of its flip conjugate; for `m != n` the flag is ignored.
pub fn double_coset_classes(
    params: Params,
    identify_flip: bool,
    guards: &Guards,
) -> Result<DoubleCosets> {
    let deg = params.degree();
    if deg > guards.oracle_max_degree {
        return Err(Error::GuardExceeded {
            what: "oracle degree m*n*o",
            actual: deg as u64,
            limit: guards.oracle_max_degree as u64,
        });
    }
    let total = factorial(deg);
    let left = wreath_generators(params, WreathSide::Left);
    let right = wreath_generators(params, WreathSide::Right);
    let flip = if identify_flip && params.m == params.n {
        Some(TriplePermutation::flip(params)?)
    } else {
        None
    };

    let mut uf = UnionFind::new(total as usize);
    let mut sigma = vec![0usize; deg];
    let mut scratch = vec![0usize; deg];
    for x in 0..total {
        unrank_perm(x, deg, &mut sigma);
        for g in &left {
            // g . sigma
            for (pos, &s) in sigma.iter().enumerate() {
                scratch[pos] = g.images[s];
            }
            uf.union(x as usize, rank_perm(&scratch) as usize);
        }
        for h in &right {
            // sigma . h
            for pos in 0..deg {
                scratch[pos] = sigma[h.images[pos]];
            }
            uf.union(x as usize, rank_perm(&scratch) as usize);
        }
        if let Some(nu) = &flip {
            // nu . sigma^{-1} . nu
            for (pos, &s) in sigma.iter().enumerate() {
                scratch[s] = pos;
            }
            let mut conj = vec![0usize; deg];
            for pos in 0..deg {
                conj[pos] = nu.images[scratch[nu.images[pos]]];
            }
            uf.union(x as usize, rank_perm(&conj) as usize);
        }
    }

    // Ranks are lexicographic, so the first element seen per root is the
    // lexicographically least representative.
    let mut reps: Vec<(usize, u64)> = Vec::new();
    let mut root_slot: std::collections::HashMap<usize, usize> = std::collections::HashMap::new();
    for x in 0..total as usize {
        let root = uf.find(x);
        match root_slot.get(&root) {
            Some(&slot) => reps[slot].1 += 1,
            None => {
                root_slot.insert(root, reps.len());
                reps.push((x, 1));
            }
        }
    }
    let mut representatives = Vec::with_capacity(reps.len());
    let mut sizes = Vec::with_capacity(reps.len());
    for (x, size) in reps {
        unrank_perm(x as u64, deg, &mut sigma);
        representatives.push(TriplePermutation::from_images(params, sigma.clone())?);
        sizes.push(size);
    }
    Ok(DoubleCosets {
        params,
        flip_identified: flip.is_some(),
        representatives,
        sizes,
    })
}

/// Closure of a generating set under composition, for small subgroups.
pub fn subgroup_order(gens: &[TriplePermutation]) -> Result<u64> {
    let Some(first) = gens.first() else {
        return Ok(1);
    };
    let mut seen = BTreeSetPerm::new();
    let id = TriplePermutation::identity(first.params());
    let mut frontier = vec![id.clone()];
    seen.insert(&id);
    while let Some(p) = frontier.pop() {
        for g in gens {
            let q = g.compose(&p)?;
            if seen.insert(&q) {
                frontier.push(q);
            }
        }
    }
    Ok(seen.len() as u64)
}

struct BTreeSetPerm(std::collections::BTreeSet<Vec<usize>>);

impl BTreeSetPerm {
    fn new() -> Self {
        BTreeSetPerm(std::collections::BTreeSet::new())
    }
    fn insert(&mut self, p: &TriplePermutation) -> bool {
        self.0.insert(p.images.to_vec())
    }
    fn len(&self) -> usize {
        self.0.len()
    }
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Lexicographic rank of an image sequence via the Lehmer code.
fn rank_perm(images: &[usize]) -> u64 {
    let n = images.len();
    let mut rank = 0u64;
    for (pos, &v) in images.iter().enumerate() {
        let smaller_later = images[pos + 1..].iter().filter(|&&w| w < v).count() as u64;
        rank += smaller_later * factorial(n - pos - 1);
    }
    rank
}

fn unrank_perm(mut rank: u64, n: usize, out: &mut [usize]) {
    let mut available: Vec<usize> = (0..n).collect();
    for (pos, slot) in out.iter_mut().enumerate() {
        let f = factorial(n - pos - 1);
        let idx = (rank / f) as usize;
        rank %= f;
        *slot = available.remove(idx);
    }
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            let grand = self.parent[self.parent[x] as usize];
            self.parent[x] = grand;
            x = grand as usize;
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            // Keep the smaller rank as root so roots stay lexicographically
            // least.
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo as u32;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrices;

    fn g() -> Guards {
        Guards::default()
    }

    fn mat(rows: &[&[u32]]) -> NatMatrix {
        NatMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn reduced_matrix_of_identity() {
        let p = Params::new(2, 2, 1).unwrap();
        let id = TriplePermutation::identity(p);
        assert_eq!(reduced_matrix(&id), mat(&[&[1, 1], &[1, 1]]));

        let p32 = Params::new(3, 2, 1).unwrap();
        let id32 = TriplePermutation::identity(p32);
        assert_eq!(reduced_matrix(&id32), mat(&[&[1, 1], &[1, 1], &[1, 1]]));
    }

    #[test]
    fn reduced_matrix_of_flip() {
        let p = Params::new(2, 2, 1).unwrap();
        let nu = TriplePermutation::flip(p).unwrap();
        assert_eq!(reduced_matrix(&nu), mat(&[&[2, 0], &[0, 2]]));
    }

    #[test]
    fn reduced_matrix_margins() {
        let p = Params::new(2, 3, 2).unwrap();
        let spec = p.margin_spec();
        // A handful of deterministic permutations.
        for seed in 0..50u64 {
            let sigma = pseudo_random_perm(p, seed);
            assert!(reduced_matrix(&sigma).satisfies(&spec));
        }
    }

    #[test]
    fn lift_round_trip() {
        for (m, n, o) in [(2, 2, 1), (3, 2, 1), (2, 3, 1), (2, 2, 2)] {
            let p = Params::new(m, n, o).unwrap();
            let spec = p.margin_spec();
            matrices::enumerate_margin_matrices(&spec, &g(), |a| {
                let sigma = lift_matrix(a, p).unwrap();
                assert_eq!(reduced_matrix(&sigma), *a, "round trip failed for {a}");
            })
            .unwrap();
        }
    }

    #[test]
    fn lift_rejects_wrong_margins() {
        let p = Params::new(2, 2, 1).unwrap();
        let bad = mat(&[&[2, 1], &[0, 1]]);
        assert!(matches!(
            lift_matrix(&bad, p),
            Err(Error::MarginViolation(_))
        ));
    }

    #[test]
    fn flip_conjugate_basics() {
        let p = Params::new(2, 2, 1).unwrap();
        let id = TriplePermutation::identity(p);
        assert!(flip_conjugate(&id).unwrap().is_identity());

        let nu = TriplePermutation::flip(p).unwrap();
        assert_eq!(flip_conjugate(&nu).unwrap(), nu);
        assert!(nu.compose(&nu).unwrap().is_identity());

        let p23 = Params::new(2, 3, 1).unwrap();
        assert!(TriplePermutation::flip(p23).is_err());
    }

    #[test]
    fn flip_conjugate_transposes_reduced_matrix() {
        let p = Params::new(3, 3, 1).unwrap();
        for seed in 0..100u64 {
            let sigma = pseudo_random_perm(p, seed);
            assert_eq!(
                reduced_matrix(&flip_conjugate(&sigma).unwrap()),
                reduced_matrix(&sigma).transpose()
            );
        }
    }

    #[test]
    fn wreath_subgroup_orders() {
        let p = Params::new(2, 2, 1).unwrap();
        for side in [WreathSide::Left, WreathSide::Right] {
            let gens = wreath_generators(p, side);
            assert_eq!(subgroup_order(&gens).unwrap(), 8);
        }
        let trivial = Params::new(1, 1, 1).unwrap();
        for side in [WreathSide::Left, WreathSide::Right] {
            let gens = wreath_generators(trivial, side);
            assert!(gens.iter().all(|g| g.is_identity()));
            assert_eq!(subgroup_order(&gens).unwrap(), 1);
        }
    }

    #[test]
    fn double_cosets_2_2_1() {
        let p = Params::new(2, 2, 1).unwrap();
        // The one-sided coset space has 3 elements, but the left subgroup
        // acts non-trivially on it and merges two of them: 2 double cosets.
        let without = double_coset_classes(p, false, &g()).unwrap();
        assert_eq!(without.count(), 2);
        let mut sizes = without.sizes.clone();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![8, 16]);

        let with = double_coset_classes(p, true, &g()).unwrap();
        assert_eq!(with.count(), 2);
        assert_eq!(with.sizes.iter().sum::<u64>(), 24);
    }

    #[test]
    fn double_cosets_2_3_1() {
        let p = Params::new(2, 3, 1).unwrap();
        let cosets = double_coset_classes(p, false, &g()).unwrap();
        assert_eq!(cosets.count(), 2);
        assert_eq!(cosets.sizes.iter().sum::<u64>(), factorial(6));
        // m != n: the flag is ignored.
        let flagged = double_coset_classes(p, true, &g()).unwrap();
        assert!(!flagged.flip_identified);
        assert_eq!(flagged.count(), 2);
    }

    #[test]
    fn group_axioms() {
        let p = Params::new(2, 3, 2).unwrap();
        let sigma = pseudo_random_perm(p, 7);
        assert!(sigma.compose(&sigma.invert()).unwrap().is_identity());
        assert!(TriplePermutation::identity(p).invert().is_identity());
    }

    #[test]
    fn rank_round_trip() {
        let mut out = vec![0usize; 5];
        for r in 0..factorial(5) {
            unrank_perm(r, 5, &mut out);
            assert_eq!(rank_perm(&out), r);
        }
    }

    #[test]
    fn text_and_cycle_parsing() {
        let p = Params::new(2, 2, 1).unwrap();
        let nu = TriplePermutation::flip(p).unwrap();
        let text = nu.to_string();
        assert_eq!(text.parse::<TriplePermutation>().unwrap(), nu);

        // The flip on 2x2x1 swaps flat indices 2 and 3 (1-based).
        let cycles: TriplePermutation = "2 2 1\n(2 3)".parse().unwrap();
        assert_eq!(cycles, nu);
    }

    /// Deterministic pseudo-random permutation used by sampling tests.
    fn pseudo_random_perm(params: Params, seed: u64) -> TriplePermutation {
        let deg = params.degree();
        let mut images: Vec<usize> = (0..deg).collect();
        let mut state = seed.wrapping_mul(0x2545f4914f6cdd1d).wrapping_add(1);
        for i in (1..deg).rev() {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            images.swap(i, (state % (i as u64 + 1)) as usize);
        }
        TriplePermutation::from_images(params, images).unwrap()
    }
}
