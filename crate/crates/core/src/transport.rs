//! Classical m x n transportation polytopes from integer margins: structural
//! predicates, exact vertex enumeration via spanning trees of the complete
//! bipartite graph, and the polar simplicial complex of a nondegenerate
//! (hence simple) instance.
//!
//! Everything here is exact integer arithmetic; with integer margins every
//! vertex matrix is integral, so no rational fallback is needed.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::face::Face;

/// Row and column margins (a, b) with equal positive sums.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Margins {
    rows: Vec<i64>,
    cols: Vec<i64>,
}

impl Margins {
    /// Validates positivity, shape (m >= 2, n >= 2, mn > 4) and the
    /// nonemptiness condition sum(a) = sum(b).
    pub fn new(rows: Vec<i64>, cols: Vec<i64>) -> Result<Self> {
        if rows.iter().any(|&a| a <= 0) || cols.iter().any(|&b| b <= 0) {
            return Err(Error::NonpositiveMargin);
        }
        let m = rows.len();
        let n = cols.len();
        if m < 2 || n < 2 || m * n <= 4 {
            return Err(Error::DegenerateSize);
        }
        let sa: i64 = rows.iter().sum();
        let sb: i64 = cols.iter().sum();
        if sa != sb {
            return Err(Error::EmptyPolytope(sa, sb));
        }
        Ok(Margins { rows, cols })
    }

    pub fn rows(&self) -> &[i64] {
        &self.rows
    }

    pub fn cols(&self) -> &[i64] {
        &self.cols
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.cols.len()
    }

    pub fn total(&self) -> i64 {
        self.rows.iter().sum()
    }
}

/// A violating pair of proper margin subsets with equal sums (0-based
/// indices).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegeneracyWitness {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

/// The transportation polytope P(a, b) of nonnegative m x n matrices with
/// row sums a and column sums b.
#[derive(Clone, Debug)]
pub struct TransportationPolytope {
    margins: Margins,
    facet_cells: Vec<(usize, usize)>,
}

/// Builds the polytope, populating its dimension and facet cells.
pub fn make_polytope(rows: Vec<i64>, cols: Vec<i64>) -> Result<TransportationPolytope> {
    Ok(TransportationPolytope::new(Margins::new(rows, cols)?))
}

impl TransportationPolytope {
    pub fn new(margins: Margins) -> Self {
        let total = margins.total();
        let mut facet_cells = Vec::new();
        for (p, &a) in margins.rows().iter().enumerate() {
            for (q, &b) in margins.cols().iter().enumerate() {
                // x_{p,q} = 0 cuts out a facet iff a_p + b_q < total.
                if a + b < total {
                    facet_cells.push((p, q));
                }
            }
        }
        TransportationPolytope {
            margins,
            facet_cells,
        }
    }

    pub fn margins(&self) -> &Margins {
        &self.margins
    }

    /// dim P(a,b) = (m-1)(n-1).
    pub fn dim(&self) -> i32 {
        ((self.margins.num_rows() - 1) * (self.margins.num_cols() - 1)) as i32
    }

    /// Cells (p, q) whose vanishing locus is a facet, in row-major order.
    pub fn facet_cells(&self) -> &[(usize, usize)] {
        &self.facet_cells
    }

    /// The label under which a facet cell appears as a vertex of the polar
    /// complex: `u{q+1}` / `v{q+1}` for the two rows of a 2 x n instance,
    /// `x{p+1}_{q+1}` in general.
    pub fn cell_label(&self, cell: (usize, usize)) -> String {
        if self.margins.num_rows() == 2 {
            match cell.0 {
                0 => format!("u{}", cell.1 + 1),
                _ => format!("v{}", cell.1 + 1),
            }
        } else {
            format!("x{}_{}", cell.0 + 1, cell.1 + 1)
        }
    }

    /// Searches for proper nonempty S subset of rows and T subset of columns
    /// with equal margin sums. Subsets of the smaller side are enumerated
    /// exhaustively; the matching sum on the other side is found by
    /// subset-sum dynamic programming.
    pub fn degeneracy_witness(&self) -> Option<DegeneracyWitness> {
        let (a, b) = (self.margins.rows(), self.margins.cols());
        let swap = a.len() > b.len();
        let (small, large) = if swap { (b, a) } else { (a, b) };

        // dp[s] = Some((item, previous sum)) for the first subset of `large`
        // reaching sum s, scanning items in index order.
        let total = self.margins.total() as usize;
        let mut dp: Vec<Option<(usize, usize)>> = vec![None; total + 1];
        for (j, &w) in large.iter().enumerate() {
            let w = w as usize;
            for s in (0..=total.saturating_sub(w)).rev() {
                if dp[s + w].is_none() && (s == 0 || dp[s].is_some()) {
                    // Only extend sums reachable without item j.
                    if s == 0 || dp[s].map(|(i, _)| i < j).unwrap_or(false) {
                        dp[s + w] = Some((j, s));
                    }
                }
            }
        }

        for mask in 1..((1u64 << small.len()) - 1) {
            let sum: i64 = small
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &w)| w)
                .sum();
            let s = sum as usize;
            if s == 0 || s >= total {
                continue;
            }
            if dp[s].is_some() {
                let small_idx: Vec<usize> = (0..small.len()).filter(|i| mask >> i & 1 == 1).collect();
                let mut large_idx = Vec::new();
                let mut cur = s;
                while cur > 0 {
                    let (j, prev) = dp[cur].expect("dp chain is well formed");
                    large_idx.push(j);
                    cur = prev;
                }
                large_idx.reverse();
                let (rows, cols) = if swap {
                    (large_idx, small_idx)
                } else {
                    (small_idx, large_idx)
                };
                return Some(DegeneracyWitness { rows, cols });
            }
        }
        None
    }

    /// True iff the only margin subsets with equal sums are the full ones;
    /// equivalent to the polytope being simple.
    pub fn is_nondegenerate(&self) -> bool {
        self.degeneracy_witness().is_none()
    }

    /// Enumerates all vertices exactly: every spanning tree of K_{m,n} is
    /// solved for the unique edge weights meeting the margins by leaf
    /// elimination, nonnegative solutions are kept, and identical matrices
    /// (which arise only in degenerate instances) are deduplicated. Output is
    /// sorted by support.
    pub fn enumerate_vertices(&self) -> Vec<VertexMatrix> {
        let m = self.margins.num_rows();
        let n = self.margins.num_cols();
        let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut out: Vec<VertexMatrix> = Vec::new();
        for_each_spanning_tree(m, n, &mut |tree| {
            if let Some(entries) = solve_tree(&self.margins, tree) {
                if seen.insert(entries.clone()) {
                    out.push(VertexMatrix {
                        num_rows: m,
                        num_cols: n,
                        entries,
                    });
                }
            }
        });
        out.sort_by(|x, y| x.support().cmp(&y.support()));
        out
    }

    /// The polar simplicial complex of a nondegenerate instance: one complex
    /// vertex per facet cell, one complex facet per polytope vertex (its set
    /// of vanishing facet cells). Pure of dimension dim(P) - 1.
    pub fn polar_complex(&self) -> Result<SimplicialComplex> {
        if !self.is_nondegenerate() {
            return Err(Error::PolarNotSimplicial);
        }
        let cells = &self.facet_cells;
        let labels: Vec<String> = cells.iter().map(|&c| self.cell_label(c)).collect();
        let universe = labels.len();
        let mut cell_index = std::collections::HashMap::new();
        for (i, &c) in cells.iter().enumerate() {
            cell_index.insert(c, i as u32);
        }
        let vertices = self.enumerate_vertices();
        let mut faces = Vec::with_capacity(vertices.len());
        for x in &vertices {
            let mut face = Face::empty(universe);
            for p in 0..x.num_rows {
                for q in 0..x.num_cols {
                    if x.entry(p, q) == 0 {
                        let idx = cell_index.get(&(p, q)).copied().ok_or_else(|| {
                            Error::Internal(format!(
                                "vertex vanishes on non-facet cell ({p},{q}) of a nondegenerate polytope"
                            ))
                        })?;
                        face.insert(idx);
                    }
                }
            }
            faces.push(face);
        }
        let expected = faces.len();
        let (complex, dropped) = SimplicialComplex::from_parts(labels, faces);
        if dropped > 0 || complex.num_facets() != expected {
            return Err(Error::Internal(
                "distinct polytope vertices produced nested zero sets".into(),
            ));
        }
        if !complex.is_pure() || complex.dim() != self.dim() - 1 {
            return Err(Error::Internal(
                "polar complex of a nondegenerate polytope must be pure of dimension dim(P) - 1"
                    .into(),
            ));
        }
        Ok(complex)
    }
}

/// One vertex of a transportation polytope: a nonnegative integer matrix
/// with the prescribed margins whose support is a spanning forest of
/// K_{m,n}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexMatrix {
    num_rows: usize,
    num_cols: usize,
    entries: Vec<i64>,
}

impl VertexMatrix {
    pub fn num_rows(&self) -> usize {
        self.num_rows
    }

    pub fn num_cols(&self) -> usize {
        self.num_cols
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.num_cols + j]
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.entries[i * self.num_cols..(i + 1) * self.num_cols]
    }

    /// Cells with positive entries, in row-major order.
    pub fn support(&self) -> Vec<(usize, usize)> {
        let mut s = Vec::new();
        for i in 0..self.num_rows {
            for j in 0..self.num_cols {
                if self.entry(i, j) > 0 {
                    s.push((i, j));
                }
            }
        }
        s
    }

    /// True iff the support, viewed as edges of K_{m,n}, is acyclic.
    pub fn support_is_forest(&self) -> bool {
        let mut dsu = Dsu::new(self.num_rows + self.num_cols);
        self.support()
            .into_iter()
            .all(|(i, j)| dsu.union(i, self.num_rows + j))
    }
}

/// Vertex dump: one matrix per block, rows space-separated, blocks separated
/// by blank lines.
pub fn format_vertex_dump(vertices: &[VertexMatrix]) -> String {
    let mut blocks = Vec::with_capacity(vertices.len());
    for v in vertices {
        let rows: Vec<String> = (0..v.num_rows())
            .map(|i| {
                v.row(i)
                    .iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        blocks.push(rows.join("\n"));
    }
    let mut s = blocks.join("\n\n");
    s.push('\n');
    s
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the classes of x and y; false if they were already joined.
    fn union(&mut self, x: usize, y: usize) -> bool {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx == ry {
            return false;
        }
        self.parent[rx] = ry;
        true
    }
}

/// Enumerates every spanning tree of K_{m,n} by recursive edge extension
/// over the row-major edge list, with union-find cycle detection.
fn for_each_spanning_tree(m: usize, n: usize, visit: &mut impl FnMut(&[(usize, usize)])) {
    let edges: Vec<(usize, usize)> = (0..m)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .collect();
    let need = m + n - 1;
    let mut chosen: Vec<(usize, usize)> = Vec::with_capacity(need);
    fn rec(
        edges: &[(usize, usize)],
        m: usize,
        need: usize,
        idx: usize,
        dsu: &Dsu,
        chosen: &mut Vec<(usize, usize)>,
        visit: &mut impl FnMut(&[(usize, usize)]),
    ) {
        if chosen.len() == need {
            visit(chosen);
            return;
        }
        // Not enough edges left to finish a tree.
        if edges.len() - idx < need - chosen.len() {
            return;
        }
        let (i, j) = edges[idx];
        let mut with = Dsu {
            parent: dsu.parent.clone(),
        };
        if with.union(i, m + j) {
            chosen.push((i, j));
            rec(edges, m, need, idx + 1, &with, chosen, visit);
            chosen.pop();
        }
        rec(edges, m, need, idx + 1, dsu, chosen, visit);
    }
    rec(
        &edges,
        m,
        need,
        0,
        &Dsu::new(m + n),
        &mut chosen,
        visit,
    );
}

/// Solves the unique edge-weight assignment on a spanning tree meeting the
/// margins, by leaf elimination. Returns the full matrix (zeros off the
/// tree) if all weights are nonnegative.
fn solve_tree(margins: &Margins, tree: &[(usize, usize)]) -> Option<Vec<i64>> {
    let m = margins.num_rows();
    let n = margins.num_cols();
    let nodes = m + n;
    let mut demand: Vec<i64> = margins
        .rows()
        .iter()
        .chain(margins.cols().iter())
        .copied()
        .collect();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); nodes];
    for (e, &(i, j)) in tree.iter().enumerate() {
        adj[i].push(e);
        adj[m + j].push(e);
    }
    let mut degree: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut removed = vec![false; tree.len()];
    let mut weights = vec![0i64; tree.len()];
    let mut leaves: Vec<usize> = (0..nodes).filter(|&u| degree[u] == 1).collect();
    while let Some(u) = leaves.pop() {
        let Some(&e) = adj[u].iter().find(|&&e| !removed[e]) else {
            continue;
        };
        let (i, j) = tree[e];
        let other = if i == u { m + j } else { i };
        weights[e] = demand[u];
        demand[other] -= demand[u];
        demand[u] = 0;
        removed[e] = true;
        degree[u] -= 1;
        degree[other] -= 1;
        if degree[other] == 1 {
            leaves.push(other);
        }
    }
    if weights.iter().any(|&w| w < 0) {
        return None;
    }
    let mut entries = vec![0i64; m * n];
    for (e, &(i, j)) in tree.iter().enumerate() {
        entries[i * n + j] = weights[e];
    }
    Some(entries)
}
