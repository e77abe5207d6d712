//! Unit-resistor networks: Laplacians, effective resistance (exact and
//! floating), the edge-resistance sum identity, the parallel-path upper
//! bounds, and a matrix-tree-theorem oracle.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{domain, Error, Result};
use crate::graph::{edge_key, Edge, Graph};
use crate::inequality::path_packing;
use crate::rational::ExactRational;

/// Largest `n` for which [`Backend::Auto`] picks exact arithmetic.
pub const EXACT_BACKEND_MAX_N: usize = 64;

/// Absolute tolerance for floating-point checks.
pub const FLOAT_TOLERANCE: f64 = 1e-9;

/// Graph Laplacian `D - A`, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LaplacianMatrix {
    pub n: usize,
    pub entries: Vec<i64>,
}

impl LaplacianMatrix {
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }
}

pub fn laplacian(g: &Graph) -> LaplacianMatrix {
    let n = g.n();
    let mut entries = vec![0i64; n * n];
    for u in 0..n {
        entries[u * n + u] = g.degree(u) as i64;
        for &v in g.neighbors(u) {
            entries[u * n + v] = -1;
        }
    }
    LaplacianMatrix { n, entries }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Exact,
    Floating,
    /// Exact up to [`EXACT_BACKEND_MAX_N`] vertices, floating above.
    #[default]
    Auto,
}

impl Backend {
    pub fn resolve(self, n: usize) -> Backend {
        match self {
            Backend::Auto if n <= EXACT_BACKEND_MAX_N => Backend::Exact,
            Backend::Auto => Backend::Floating,
            b => b,
        }
    }
}

/// A resistance in whichever arithmetic produced it.
#[derive(Clone, Debug, PartialEq)]
pub enum ResistanceValue {
    Exact(ExactRational),
    Float(f64),
}

impl ResistanceValue {
    pub fn to_f64(&self) -> f64 {
        match self {
            ResistanceValue::Exact(r) => r.to_f64(),
            ResistanceValue::Float(x) => *x,
        }
    }

    pub fn as_exact(&self) -> Option<&ExactRational> {
        match self {
            ResistanceValue::Exact(r) => Some(r),
            ResistanceValue::Float(_) => None,
        }
    }
}

impl std::fmt::Display for ResistanceValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ResistanceValue::Exact(r) => write!(f, "{r}"),
            ResistanceValue::Float(x) => f.write_str(&format_significant(*x, 12)),
        }
    }
}

impl Serialize for ResistanceValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Fixed-point rendering with `digits` significant digits.
pub fn format_significant(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i64;
    let decimals = (digits as i64 - 1 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

fn require_connected(g: &Graph) -> Result<()> {
    if !g.is_connected() {
        return Err(domain("resistance is only defined on a connected network"));
    }
    Ok(())
}

/// Fraction-free (Bareiss) forward elimination without pivoting on an
/// augmented matrix whose left `k × k` block has nonzero leading principal
/// minors. Returns the determinant of that block; `m` is left upper
/// triangular with the transformed right-hand sides.
fn bareiss_forward(m: &mut [Vec<BigInt>], k: usize) -> Result<BigInt> {
    let cols = m.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    for p in 0..k {
        if m[p][p].is_zero() {
            return Err(Error::Assertion(format!("zero pivot at {p} in a positive definite system")));
        }
        let (head, tail) = m.split_at_mut(p + 1);
        let pivot_row = &head[p];
        for row in tail.iter_mut().take(k - p - 1) {
            let factor = std::mem::take(&mut row[p]);
            for j in p + 1..cols {
                row[j] = (&row[j] * &pivot_row[p] - &factor * &pivot_row[j]) / &prev;
            }
        }
        prev = m[p][p].clone();
    }
    Ok(prev)
}

/// Solves `A x = b_c` for every right-hand side column of the augmented
/// matrix and returns `(det A, det A · x_c)`; the scaled solutions are
/// integral (they are `adj(A) b_c`).
fn bareiss_solve(mut m: Vec<Vec<BigInt>>, k: usize) -> Result<(BigInt, Vec<Vec<BigInt>>)> {
    let det = bareiss_forward(&mut m, k)?;
    let rhs = m.first().map_or(0, Vec::len) - k;
    let mut out = Vec::with_capacity(rhs);
    for c in 0..rhs {
        let mut y = vec![BigInt::zero(); k];
        for i in (0..k).rev() {
            let mut acc = &det * &m[i][k + c];
            for j in i + 1..k {
                acc -= &m[i][j] * &y[j];
            }
            y[i] = acc / &m[i][i];
        }
        out.push(y);
    }
    Ok((det, out))
}

/// Determinant by fraction-free elimination with row pivoting.
fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let k = m.len();
    if k == 0 {
        return BigInt::one();
    }
    let mut prev = BigInt::one();
    let mut negate = false;
    for p in 0..k {
        let Some(r) = (p..k).find(|&r| !m[r][p].is_zero()) else {
            return BigInt::zero();
        };
        if r != p {
            m.swap(r, p);
            negate = !negate;
        }
        for i in p + 1..k {
            for j in p + 1..k {
                m[i][j] = (&m[i][j] * &m[p][p] - &m[i][p] * &m[p][j]) / &prev;
            }
            m[i][p] = BigInt::zero();
        }
        prev = m[p][p].clone();
    }
    if negate {
        -prev
    } else {
        prev
    }
}

/// Reduced Laplacian with the largest-index vertex grounded.
fn grounded_rows(g: &Graph) -> Vec<Vec<BigInt>> {
    let k = g.n() - 1;
    let lap = laplacian(g);
    (0..k)
        .map(|i| (0..k).map(|j| BigInt::from(lap.get(i, j))).collect())
        .collect()
}

/// Exact effective resistance between two distinct vertices.
pub fn effective_resistance_exact(g: &Graph, u: usize, v: usize) -> Result<ExactRational> {
    g.check_pair(u, v)?;
    require_connected(g)?;
    let k = g.n() - 1;
    let mut m = grounded_rows(g);
    for (i, row) in m.iter_mut().enumerate() {
        let b = i64::from(i == u) - i64::from(i == v);
        row.push(BigInt::from(b));
    }
    let (det, ys) = bareiss_solve(m, k)?;
    let at = |x: usize| if x == k { BigInt::zero() } else { ys[0][x].clone() };
    Ok(ExactRational::new(at(u) - at(v), det))
}

/// Floating-point effective resistance via a Cholesky solve.
pub fn effective_resistance_float(g: &Graph, u: usize, v: usize) -> Result<f64> {
    g.check_pair(u, v)?;
    require_connected(g)?;
    Ok(FloatResistances::new(g)?.get(u, v))
}

pub fn effective_resistance(g: &Graph, u: usize, v: usize, backend: Backend) -> Result<ResistanceValue> {
    match backend.resolve(g.n()) {
        Backend::Floating => effective_resistance_float(g, u, v).map(ResistanceValue::Float),
        _ => effective_resistance_exact(g, u, v).map(ResistanceValue::Exact),
    }
}

/// All-pairs exact resistances from one elimination: stores `adj(L₀)` and
/// `det(L₀)` for the grounded Laplacian `L₀`.
pub struct ExactResistances {
    det: BigInt,
    /// `adj[c][i]` = (det · L₀⁻¹)[i][c].
    adj: Vec<Vec<BigInt>>,
    ground: usize,
}

impl ExactResistances {
    pub fn new(g: &Graph) -> Result<Self> {
        require_connected(g)?;
        if g.n() == 0 {
            return Err(domain("empty network"));
        }
        let k = g.n() - 1;
        let mut m = grounded_rows(g);
        for (i, row) in m.iter_mut().enumerate() {
            row.extend((0..k).map(|c| BigInt::from(i64::from(i == c))));
        }
        let (det, adj) = bareiss_solve(m, k)?;
        Ok(Self { det, adj, ground: k })
    }

    fn entry(&self, i: usize, j: usize) -> BigInt {
        if i == self.ground || j == self.ground {
            BigInt::zero()
        } else {
            self.adj[j][i].clone()
        }
    }

    pub fn get(&self, u: usize, v: usize) -> ExactRational {
        let num = self.entry(u, u) + self.entry(v, v) - self.entry(u, v) * 2;
        ExactRational::new(num, self.det.clone())
    }
}

/// All-pairs floating resistances from the inverse of the grounded Laplacian.
pub struct FloatResistances {
    inv: DMatrix<f64>,
    ground: usize,
}

impl FloatResistances {
    pub fn new(g: &Graph) -> Result<Self> {
        require_connected(g)?;
        if g.n() == 0 {
            return Err(domain("empty network"));
        }
        let k = g.n() - 1;
        let lap = laplacian(g);
        let reduced = DMatrix::from_fn(k, k, |i, j| lap.get(i, j) as f64);
        let inv = reduced
            .cholesky()
            .ok_or_else(|| Error::Assertion("grounded Laplacian is not positive definite".into()))?
            .inverse();
        Ok(Self { inv, ground: k })
    }

    fn entry(&self, i: usize, j: usize) -> f64 {
        if i == self.ground || j == self.ground {
            0.0
        } else {
            self.inv[(i, j)]
        }
    }

    pub fn get(&self, u: usize, v: usize) -> f64 {
        self.entry(u, u) + self.entry(v, v) - 2.0 * self.entry(u, v)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EdgeResistance {
    pub u: usize,
    pub v: usize,
    pub resistance: ResistanceValue,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResistanceReport {
    pub backend: Backend,
    pub per_edge: Vec<EdgeResistance>,
    pub total: ResistanceValue,
    pub expected_total: usize,
    /// `|total - (n - 1)|`; zero in exact mode when the identity holds.
    pub residual: f64,
    /// Exact mode: `total == n - 1`. Floating mode: `residual < FLOAT_TOLERANCE`.
    pub holds: bool,
}

/// Sums the effective resistance over all edges and compares with `n - 1`.
pub fn forster_check(g: &Graph, backend: Backend) -> Result<ResistanceReport> {
    require_connected(g)?;
    if g.n() == 0 {
        return Err(domain("empty network"));
    }
    let expected = g.n() - 1;
    let edges = g.edges();
    let backend = backend.resolve(g.n());
    if backend == Backend::Exact {
        let table = ExactResistances::new(g)?;
        let per: Vec<ExactRational> = edges.iter().map(|&(u, v)| table.get(u, v)).collect();
        let total: ExactRational = per.iter().cloned().sum();
        let diff = &total - &ExactRational::from_integer(expected as i64);
        Ok(ResistanceReport {
            backend,
            per_edge: edges
                .iter()
                .zip(per)
                .map(|(&(u, v), r)| EdgeResistance { u, v, resistance: ResistanceValue::Exact(r) })
                .collect(),
            residual: diff.to_f64().abs(),
            holds: diff.is_zero(),
            total: ResistanceValue::Exact(total),
            expected_total: expected,
        })
    } else {
        let table = FloatResistances::new(g)?;
        let per: Vec<f64> = edges.iter().map(|&(u, v)| table.get(u, v)).collect();
        let total: f64 = per.iter().sum();
        let residual = (total - expected as f64).abs();
        Ok(ResistanceReport {
            backend,
            per_edge: edges
                .iter()
                .zip(per)
                .map(|(&(u, v), r)| EdgeResistance { u, v, resistance: ResistanceValue::Float(r) })
                .collect(),
            total: ResistanceValue::Float(total),
            expected_total: expected,
            residual,
            holds: residual < FLOAT_TOLERANCE,
        })
    }
}

/// `1 / (|N(u) ∩ N(v)|/2 + 1)`: the resistance of the edge `uv` in parallel
/// with one two-resistor path per common neighbour.
pub fn resistance_upper_bound(g: &Graph, u: usize, v: usize) -> Result<ExactRational> {
    g.check_edge(u, v)?;
    let k = g.common_neighbor_count(u, v);
    Ok(ExactRational::new(2, k as i64 + 2))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundCheck {
    pub u: usize,
    pub v: usize,
    pub resistance: ExactRational,
    pub bound: ExactRational,
    pub strict: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Eq1Report {
    pub per_edge: Vec<BoundCheck>,
    pub all_hold: bool,
    pub any_strict: bool,
    pub block_graph: bool,
    /// `any_strict == !block_graph`.
    pub strictness_consistent: bool,
}

/// Compares every edge resistance with [`resistance_upper_bound`]. Strict
/// inequality must occur on some edge exactly when a block is not a clique.
pub fn check_bound_eq1(g: &Graph) -> Result<Eq1Report> {
    let table = ExactResistances::new(g)?;
    let per_edge: Vec<BoundCheck> = g
        .edges()
        .into_iter()
        .map(|(u, v)| {
            let resistance = table.get(u, v);
            let bound = ExactRational::new(2, g.common_neighbor_count(u, v) as i64 + 2);
            BoundCheck { u, v, strict: resistance < bound, resistance, bound }
        })
        .collect();
    let all_hold = per_edge.iter().all(|c| c.resistance <= c.bound);
    let any_strict = per_edge.iter().any(|c| c.strict);
    let block_graph = g.is_block_graph()?;
    Ok(Eq1Report {
        per_edge,
        all_hold,
        any_strict,
        block_graph,
        strictness_consistent: any_strict != block_graph,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PathBoundCheck {
    pub u: usize,
    pub v: usize,
    pub ell: usize,
    pub packing: usize,
    pub resistance: ExactRational,
    pub bound: ExactRational,
    pub holds: bool,
}

/// `R(u,v) ≤ 1 / (1 + P(uv, ell)/ell)` for an edge `uv`.
pub fn theorem3_resistance_bound(
    g: &Graph,
    u: usize,
    v: usize,
    ell: usize,
    path_cap: usize,
) -> Result<PathBoundCheck> {
    g.check_edge(u, v)?;
    let packing = path_packing(g, u, v, ell, path_cap)?.value;
    let resistance = effective_resistance_exact(g, u, v)?;
    Ok(path_bound(u, v, ell, packing, resistance))
}

fn path_bound(u: usize, v: usize, ell: usize, packing: usize, resistance: ExactRational) -> PathBoundCheck {
    let bound = ExactRational::new(ell as i64, (ell + packing) as i64);
    PathBoundCheck { u, v, ell, packing, holds: resistance <= bound, resistance, bound }
}

/// [`theorem3_resistance_bound`] for every edge, sharing one elimination.
pub fn theorem3_bounds(g: &Graph, ell: usize, path_cap: usize) -> Result<Vec<PathBoundCheck>> {
    let table = ExactResistances::new(g)?;
    let packings = crate::inequality::packing_values(g, ell, path_cap)?;
    Ok(g.edges()
        .into_iter()
        .zip(packings)
        .map(|((u, v), p)| path_bound(u, v, ell, p, table.get(u, v)))
        .collect())
}

/// Number of spanning trees: 1 for `n ≤ 1`, 0 when disconnected, otherwise
/// a cofactor of the Laplacian.
pub fn spanning_tree_count(g: &Graph) -> BigInt {
    if g.n() <= 1 {
        return BigInt::one();
    }
    if !g.is_connected() {
        return BigInt::zero();
    }
    bareiss_determinant(grounded_rows(g))
}

/// Laplacian of a multigraph given by edge multiplicities, first row and
/// column deleted.
fn weighted_cofactor(n: usize, edges: &[(Edge, i64)]) -> BigInt {
    if n <= 1 {
        return BigInt::one();
    }
    let mut lap = vec![vec![0i64; n]; n];
    for &((a, b), w) in edges {
        lap[a][a] += w;
        lap[b][b] += w;
        lap[a][b] -= w;
        lap[b][a] -= w;
    }
    let rows = (1..n)
        .map(|i| (1..n).map(|j| BigInt::from(lap[i][j])).collect())
        .collect();
    bareiss_determinant(rows)
}

/// Effective resistance as a ratio of spanning-tree counts: identify `u`
/// with `v`, count spanning trees of the resulting multigraph, divide by
/// the count for `g`.
pub fn resistance_via_spanning_trees(g: &Graph, u: usize, v: usize) -> Result<ExactRational> {
    g.check_pair(u, v)?;
    require_connected(g)?;
    let (keep, gone) = (u.min(v), u.max(v));
    let relabel = |x: usize| {
        if x == gone {
            keep
        } else if x > gone {
            x - 1
        } else {
            x
        }
    };
    let mut merged: std::collections::BTreeMap<Edge, i64> = Default::default();
    for (a, b) in g.edges() {
        let (a, b) = (relabel(a), relabel(b));
        if a != b {
            *merged.entry(edge_key(a, b)).or_insert(0) += 1;
        }
    }
    let merged: Vec<(Edge, i64)> = merged.into_iter().collect();
    let contracted = weighted_cofactor(g.n() - 1, &merged);
    let total = spanning_tree_count(g);
    debug_assert!(total.is_positive());
    Ok(ExactRational::new(contracted, total))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> ExactRational {
        ExactRational::new(p, q)
    }

    fn diamond() -> Graph {
        Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]).unwrap()
    }

    #[test]
    fn laplacian_examples() {
        assert_eq!(laplacian(&Graph::path(2)).entries, vec![1, -1, -1, 1]);
        let tri = laplacian(&Graph::complete(3));
        assert_eq!(tri.entries, vec![2, -1, -1, -1, 2, -1, -1, -1, 2]);
        let p3 = laplacian(&Graph::path(3));
        assert_eq!((p3.get(0, 0), p3.get(1, 1), p3.get(2, 2)), (1, 2, 1));
        assert_eq!(p3.get(0, 2), 0);
        assert!((0..3).all(|i| p3.row(i).iter().sum::<i64>() == 0));
    }

    #[test]
    fn resistance_examples() {
        assert_eq!(effective_resistance_exact(&Graph::path(2), 0, 1).unwrap(), r(1, 1));
        assert_eq!(effective_resistance_exact(&Graph::complete(3), 0, 1).unwrap(), r(2, 3));
        assert_eq!(effective_resistance_exact(&Graph::cycle(4), 0, 1).unwrap(), r(3, 4));
        assert_eq!(effective_resistance_exact(&Graph::path(3), 0, 2).unwrap(), r(2, 1));
        // the grounded vertex as an endpoint
        assert_eq!(effective_resistance_exact(&Graph::cycle(4), 3, 1).unwrap(), r(1, 1));
        let f = effective_resistance_float(&Graph::cycle(4), 0, 1).unwrap();
        assert!((f - 0.75).abs() < 1e-12);
    }

    #[test]
    fn resistance_errors() {
        let split = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert!(matches!(effective_resistance_exact(&split, 0, 1), Err(Error::Domain(_))));
        assert!(matches!(effective_resistance_exact(&Graph::path(3), 1, 1), Err(Error::Usage(_))));
        assert!(matches!(forster_check(&split, Backend::Exact), Err(Error::Domain(_))));
        assert!(matches!(resistance_upper_bound(&Graph::path(3), 0, 2), Err(Error::Usage(_))));
    }

    #[test]
    fn forster_examples() {
        let rep = forster_check(&Graph::path(5), Backend::Exact).unwrap();
        assert!(rep.per_edge.iter().all(|e| e.resistance == ResistanceValue::Exact(r(1, 1))));
        assert!(rep.holds);
        let rep = forster_check(&Graph::complete(3), Backend::Exact).unwrap();
        assert_eq!(rep.total, ResistanceValue::Exact(r(2, 1)));
        let rep = forster_check(&Graph::complete(4), Backend::Exact).unwrap();
        assert!(rep.per_edge.iter().all(|e| e.resistance == ResistanceValue::Exact(r(1, 2))));
        assert_eq!(rep.total, ResistanceValue::Exact(r(3, 1)));
        let rep = forster_check(&diamond(), Backend::Floating).unwrap();
        assert!(rep.holds && rep.residual < FLOAT_TOLERANCE);
        assert_eq!(Backend::Auto.resolve(64), Backend::Exact);
        assert_eq!(Backend::Auto.resolve(65), Backend::Floating);
    }

    #[test]
    fn bound_examples() {
        let tree = Graph::path(4);
        assert_eq!(resistance_upper_bound(&tree, 1, 2).unwrap(), r(1, 1));
        assert_eq!(resistance_upper_bound(&Graph::complete(4), 0, 1).unwrap(), r(1, 2));
        assert_eq!(resistance_upper_bound(&Graph::complete(3), 0, 1).unwrap(), r(2, 3));
    }

    #[test]
    fn edge_bound_examples() {
        for n in 3..=5 {
            let rep = check_bound_eq1(&Graph::complete(n)).unwrap();
            assert!(rep.all_hold && !rep.any_strict && rep.strictness_consistent);
            assert!(rep.per_edge.iter().all(|c| c.resistance == c.bound));
        }
        let rep = check_bound_eq1(&Graph::path(4)).unwrap();
        assert!(rep.all_hold && !rep.any_strict);
        let rep = check_bound_eq1(&Graph::cycle(4)).unwrap();
        assert!(rep.per_edge.iter().all(|c| c.strict && c.resistance == r(3, 4)));
        assert!(rep.any_strict && rep.strictness_consistent);
    }

    #[test]
    fn theorem3_examples() {
        let t = theorem3_resistance_bound(&Graph::path(3), 0, 1, 3, 100).unwrap();
        assert_eq!((t.bound.clone(), t.resistance.clone()), (r(1, 1), r(1, 1)));
        let t = theorem3_resistance_bound(&Graph::complete(4), 0, 1, 2, 100).unwrap();
        assert_eq!((t.packing, t.bound.clone(), t.resistance.clone()), (2, r(1, 2), r(1, 2)));
        let t = theorem3_resistance_bound(&Graph::cycle(4), 0, 1, 3, 100).unwrap();
        assert_eq!((t.packing, t.bound.clone(), t.resistance.clone()), (1, r(3, 4), r(3, 4)));
        assert!(t.holds);
    }

    #[test]
    fn tree_counts() {
        assert_eq!(spanning_tree_count(&Graph::complete(3)), BigInt::from(3));
        assert_eq!(spanning_tree_count(&Graph::cycle(4)), BigInt::from(4));
        assert_eq!(spanning_tree_count(&Graph::complete(4)), BigInt::from(16));
        assert_eq!(spanning_tree_count(&Graph::complete(6)), BigInt::from(1296));
        assert_eq!(spanning_tree_count(&Graph::empty(1)), BigInt::from(1));
        assert_eq!(spanning_tree_count(&Graph::empty(3)), BigInt::from(0));
    }

    #[test]
    fn contraction_oracle_examples() {
        assert_eq!(resistance_via_spanning_trees(&Graph::path(2), 0, 1).unwrap(), r(1, 1));
        assert_eq!(resistance_via_spanning_trees(&Graph::complete(3), 0, 1).unwrap(), r(2, 3));
        assert_eq!(resistance_via_spanning_trees(&Graph::path(3), 0, 2).unwrap(), r(2, 1));
    }

    #[test]
    fn grounding_invariance() {
        // relabelling moves a different vertex into the grounded slot
        let g = diamond();
        for perm in [[0, 1, 2, 3], [3, 2, 1, 0], [1, 3, 0, 2]] {
            let h = g.relabel(&perm).unwrap();
            for (u, v) in g.edges() {
                assert_eq!(
                    effective_resistance_exact(&g, u, v).unwrap(),
                    effective_resistance_exact(&h, perm[u], perm[v]).unwrap()
                );
            }
        }
    }

    #[test]
    fn significant_digits() {
        assert_eq!(format_significant(2.0 / 3.0, 12), "0.666666666667");
        assert_eq!(format_significant(3.0, 12), "3.00000000000");
        assert_eq!(format_significant(0.0, 12), "0");
    }
}
