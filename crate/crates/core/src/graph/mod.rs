//! Simple undirected graphs with bit-row adjacency, plus the named families
//! used throughout the crate.

mod clique;
mod colour;
mod endo;

use std::fmt;

use serde::Serialize;

pub use clique::{clique_number, maximum_clique};
pub use colour::{chromatic_number, colour_with, Chromatic, ColourOutcome, DEFAULT_COLOUR_BUDGET};
pub use endo::{
    automorphism_count, core, find_endomorphism, gr_of_monoid, hull, Core, EndoConstraints, Hull, RankConstraint,
    SearchOutcome, DEFAULT_ENDO_BUDGET,
};

use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::util::k_subsets;

/// Loopless undirected graph on `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    rows: Vec<BitSet>,
}

impl Graph {
    pub fn null(n: usize) -> Self {
        Graph { rows: vec![BitSet::new(n); n] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::null(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.order();
        for x in [u, v] {
            if x >= n {
                return Err(Error::PointOutOfRange { point: x, degree: n });
            }
        }
        if u == v {
            return Err(Error::InvalidParameters(format!("loop at vertex {u}")));
        }
        self.rows[u].insert(v);
        self.rows[v].insert(u);
        Ok(())
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    #[inline]
    pub fn neighbours(&self, v: usize) -> &BitSet {
        &self.rows[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count()
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count()).sum::<usize>() / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.order() {
            out.extend(self.rows[u].iter().filter(|&v| v > u).map(|v| (u, v)));
        }
        out
    }

    pub fn is_regular(&self) -> bool {
        (0..self.order()).all(|v| self.degree(v) == self.degree(0))
    }

    pub fn complement(&self) -> Graph {
        let n = self.order();
        let rows = (0..n)
            .map(|v| {
                let mut r = self.rows[v].complement();
                r.remove(v);
                r
            })
            .collect();
        Graph { rows }
    }

    /// Induced subgraph; vertex `i` of the result is `vertices[i]`.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut g = Graph::null(vertices.len());
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.adjacent(u, v) {
                    g.rows[i].insert(j);
                    g.rows[j].insert(i);
                }
            }
        }
        g
    }

    pub fn is_spanning_subgraph_of(&self, other: &Graph) -> bool {
        self.order() == other.order() && self.rows.iter().zip(&other.rows).all(|(a, b)| a.is_subset(b))
    }

    pub fn is_clique(&self, vs: &[usize]) -> bool {
        vs.iter().enumerate().all(|(i, &u)| vs[i + 1..].iter().all(|&v| self.adjacent(u, v)))
    }

    pub fn is_independent(&self, vs: &[usize]) -> bool {
        vs.iter().enumerate().all(|(i, &u)| vs[i + 1..].iter().all(|&v| u != v && !self.adjacent(u, v)))
    }

    pub fn is_proper_colouring(&self, colour: &[usize]) -> bool {
        colour.len() == self.order() && self.edges().iter().all(|&(u, v)| colour[u] != colour[v])
    }

    /// Whether `map` sends every edge to an edge.
    pub fn is_endomorphism(&self, map: &[usize]) -> bool {
        map.len() == self.order()
            && map.iter().all(|&x| x < self.order())
            && self.edges().iter().all(|&(u, v)| self.adjacent(map[u], map[v]))
    }

    pub fn complete(n: usize) -> Graph {
        Graph::null(n).complement()
    }

    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).expect("valid path")
    }

    pub fn cycle(n: usize) -> Result<Graph> {
        if n < 3 {
            return Err(Error::InvalidParameters(format!("cycle needs n >= 3, got {n}")));
        }
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges)
    }

    /// Vertices are the `k`-subsets of `0..n` in lexicographic order; two are
    /// adjacent when the size of their intersection lies in `sizes`.
    pub fn johnson(n: usize, k: usize, sizes: &[usize]) -> Result<Graph> {
        if k == 0 || k > n {
            return Err(Error::InvalidParameters(format!("johnson needs 1 <= k <= n, got n={n}, k={k}")));
        }
        if sizes.contains(&k) {
            return Err(Error::InvalidParameters("intersection size k would create loops".into()));
        }
        let subsets = k_subsets(n, k);
        let sets: Vec<BitSet> = subsets.iter().map(|s| BitSet::from_points(n, s.iter().copied())).collect();
        let mut g = Graph::null(sets.len());
        for i in 0..sets.len() {
            for j in i + 1..sets.len() {
                if sizes.contains(&sets[i].intersection_count(&sets[j])) {
                    g.rows[i].insert(j);
                    g.rows[j].insert(i);
                }
            }
        }
        Ok(g)
    }

    /// Line graph of `K_m`: 2-subsets meeting in one point.
    pub fn line_of_complete(m: usize) -> Result<Graph> {
        Graph::johnson(m, 2, &[1])
    }

    /// The Petersen graph: disjoint 2-subsets of a 5-set.
    pub fn petersen() -> Graph {
        Graph::johnson(5, 2, &[0]).expect("valid parameters")
    }

    /// Words of length `m` over `k` symbols, adjacent when they differ in one
    /// position. Word `(w_0, …, w_{m−1})` is vertex `Σ w_i k^{m−1−i}`.
    pub fn hamming(m: usize, k: usize) -> Result<Graph> {
        if m == 0 || k < 2 {
            return Err(Error::InvalidParameters(format!("hamming needs m >= 1, k >= 2, got m={m}, k={k}")));
        }
        let n = k.checked_pow(m as u32).filter(|&n| n <= 4096).ok_or_else(|| {
            Error::InvalidParameters("hamming graph too large".into())
        })?;
        let digits = |mut x: usize| {
            let mut d = vec![0; m];
            for i in (0..m).rev() {
                d[i] = x % k;
                x /= k;
            }
            d
        };
        let words: Vec<Vec<usize>> = (0..n).map(digits).collect();
        let mut g = Graph::null(n);
        for i in 0..n {
            for j in i + 1..n {
                if words[i].iter().zip(&words[j]).filter(|(a, b)| a != b).count() == 1 {
                    g.rows[i].insert(j);
                    g.rows[j].insert(i);
                }
            }
        }
        Ok(g)
    }

    /// The `k × k` rook's graph.
    pub fn grid(k: usize) -> Result<Graph> {
        Graph::hamming(2, k)
    }

    /// Complete multipartite graph; parts are consecutive vertex ranges.
    pub fn complete_multipartite(parts: &[usize]) -> Result<Graph> {
        if parts.contains(&0) {
            return Err(Error::InvalidParameters("parts must be nonempty".into()));
        }
        let n: usize = parts.iter().sum();
        let mut label = Vec::with_capacity(n);
        for (i, &p) in parts.iter().enumerate() {
            label.extend(std::iter::repeat_n(i, p));
        }
        let mut g = Graph::null(n);
        for u in 0..n {
            for v in u + 1..n {
                if label[u] != label[v] {
                    g.rows[u].insert(v);
                    g.rows[v].insert(u);
                }
            }
        }
        Ok(g)
    }

    /// Builds a named family; see [`FAMILIES`].
    pub fn build(family: &str, params: &[usize]) -> Result<Graph> {
        let bad = || Error::InvalidParameters(format!("bad parameters {params:?} for family {family:?}"));
        match (family, params) {
            ("complete", &[n]) => Ok(Graph::complete(n)),
            ("null", &[n]) => Ok(Graph::null(n)),
            ("path", &[n]) => Ok(Graph::path(n)),
            ("cycle", &[n]) => Graph::cycle(n),
            ("petersen", &[]) => Ok(Graph::petersen()),
            ("line-of-complete", &[m]) => Graph::line_of_complete(m),
            ("johnson", &[n, k, ref sizes @ ..]) if !sizes.is_empty() => Graph::johnson(n, k, sizes),
            ("hamming", &[m, k]) => Graph::hamming(m, k),
            ("grid", &[k]) => Graph::grid(k),
            ("complete-multipartite", parts) if !parts.is_empty() => Graph::complete_multipartite(parts),
            (f, _) if FAMILIES.iter().any(|(name, _)| *name == f) => Err(bad()),
            _ => Err(Error::InvalidParameters(format!("unknown graph family {family:?}"))),
        }
    }
}

/// Graph families accepted by [`Graph::build`] and their parameters.
pub const FAMILIES: &[(&str, &str)] = &[
    ("complete", "n"),
    ("null", "n"),
    ("path", "n"),
    ("cycle", "n"),
    ("petersen", ""),
    ("line-of-complete", "m"),
    ("johnson", "n k i1 [i2 ...]"),
    ("hamming", "m k"),
    ("grid", "k"),
    ("complete-multipartite", "p1 p2 ..."),
];

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.order(), self.edges())
    }
}

/// Exact ω, χ and α with witnesses.
#[derive(Clone, Debug, Serialize)]
pub struct GraphInvariants {
    pub clique_number: usize,
    pub chromatic: Chromatic,
    pub independence_number: usize,
    pub maximum_clique: Vec<usize>,
    pub maximum_independent_set: Vec<usize>,
}

impl Graph {
    pub fn invariants(&self, colour_budget: u64) -> GraphInvariants {
        let clique = maximum_clique(self);
        let indep = maximum_clique(&self.complement());
        GraphInvariants {
            clique_number: clique.len(),
            chromatic: chromatic_number(self, colour_budget),
            independence_number: indep.len(),
            maximum_clique: clique,
            maximum_independent_set: indep,
        }
    }
}
