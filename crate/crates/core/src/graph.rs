//! Simple undirected graphs on a dense, row-major adjacency bit matrix.

use std::fmt;

use crate::bitset::{self, words_for};
use crate::error::{Error, Result};

/// A simple undirected graph on vertices `0..n`.
///
/// Row `v` of the adjacency matrix is a bit set of `N(v)`. The matrix is kept
/// symmetric with an empty diagonal; every constructor upholds this.
/// Equality compares structure only; the label is cosmetic.
#[derive(Clone)]
pub struct Graph {
    n: usize,
    words: usize,
    adj: Vec<u64>,
    label: Option<String>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.adj == other.adj
    }
}

impl Eq for Graph {}

impl Graph {
    pub fn empty(n: usize) -> Self {
        let words = words_for(n);
        Graph {
            n,
            words,
            adj: vec![0; n * words],
            label: None,
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.insert_edge_unchecked(u, v);
            }
        }
        g.with_label(format!("K{n}"))
    }

    /// Path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 1..n {
            g.insert_edge_unchecked(u - 1, u);
        }
        g.with_label(format!("P{n}"))
    }

    /// Cycle on `n >= 3` vertices; smaller `n` degrade to a path.
    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::path(n);
        if n >= 3 {
            g.insert_edge_unchecked(0, n - 1);
        }
        g.with_label(format!("C{n}"))
    }

    /// Star with center `0` and `leaves` leaves.
    pub fn star(leaves: usize) -> Self {
        let mut g = Graph::empty(leaves + 1);
        for v in 1..=leaves {
            g.insert_edge_unchecked(0, v);
        }
        g.with_label(format!("K1,{leaves}"))
    }

    /// Builds a graph from an edge list, rejecting loops, duplicates and
    /// out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            if !g.add_edge(u, v)? {
                return Err(Error::InvalidParameters(format!("duplicate edge {u} {v}")));
            }
        }
        Ok(g)
    }

    /// Builds a graph from full adjacency rows. Callers must supply a
    /// symmetric matrix with an empty diagonal.
    pub(crate) fn from_rows(n: usize, adj: Vec<u64>) -> Self {
        let words = words_for(n);
        assert_eq!(adj.len(), n * words);
        let g = Graph {
            n,
            words,
            adj,
            label: None,
        };
        // full symmetry check is quadratic; keep it to sizes where it is cheap
        debug_assert!(n > 2048 || g.check_invariants());
        g
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub(crate) fn words_per_row(&self) -> usize {
        self.words
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { v, n: self.n })
        }
    }

    /// Adjacency row of `v` as raw words (`words_for(n)` of them).
    ///
    /// Panics if `v >= n`.
    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.adj[v * self.words..(v + 1) * self.words]
    }

    /// Panics if either endpoint is out of range.
    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        assert!(u < self.n && v < self.n, "vertex out of range");
        bitset::test(self.row(u), v)
    }

    fn insert_edge_unchecked(&mut self, u: usize, v: usize) {
        let w = self.words;
        bitset::set(&mut self.adj[u * w..(u + 1) * w], v);
        bitset::set(&mut self.adj[v * w..(v + 1) * w], u);
    }

    /// Adds `{u, v}`; returns `false` if it was already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::InvalidParameters(format!("self-loop at {u}")));
        }
        if self.has_edge(u, v) {
            return Ok(false);
        }
        self.insert_edge_unchecked(u, v);
        Ok(true)
    }

    /// Removes `{u, v}`; returns `false` if it was absent.
    pub fn remove_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v || !self.has_edge(u, v) {
            return Ok(false);
        }
        let w = self.words;
        bitset::clear(&mut self.adj[u * w..(u + 1) * w], v);
        bitset::clear(&mut self.adj[v * w..(v + 1) * w], u);
        Ok(true)
    }

    pub fn degree(&self, v: usize) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(bitset::count(self.row(v)))
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| bitset::count(self.row(v))).collect()
    }

    /// `N(v)` in increasing order; never contains `v`.
    pub fn neighborhood(&self, v: usize) -> Result<Vec<usize>> {
        self.check_vertex(v)?;
        Ok(bitset::ones(self.row(v)).collect())
    }

    pub fn edge_count(&self) -> usize {
        self.degrees().iter().sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            bitset::ones(self.row(u))
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// Edge density `|E| / C(n, 2)`; zero for `n < 2`.
    pub fn density(&self) -> f64 {
        if self.n < 2 {
            return 0.0;
        }
        self.edge_count() as f64 / (self.n * (self.n - 1) / 2) as f64
    }

    /// Subgraph induced by `vertices`, relabelled `0..vertices.len()` in the
    /// given order.
    pub fn induced(&self, vertices: &[usize]) -> Result<Graph> {
        for &v in vertices {
            self.check_vertex(v)?;
        }
        let mut g = Graph::empty(vertices.len());
        for (i, &a) in vertices.iter().enumerate() {
            for (j, &b) in vertices.iter().enumerate().skip(i + 1) {
                if a == b {
                    return Err(Error::InvalidParameters(format!("vertex {a} repeated")));
                }
                if self.has_edge(a, b) {
                    g.insert_edge_unchecked(i, j);
                }
            }
        }
        Ok(g)
    }

    /// Relabels vertices so old vertex `order[i]` becomes `i`.
    pub fn permuted(&self, order: &[usize]) -> Result<Graph> {
        let mut pos = vec![usize::MAX; self.n];
        if order.len() != self.n {
            return Err(Error::InvalidParameters(
                "permutation length differs from vertex count".into(),
            ));
        }
        for (i, &v) in order.iter().enumerate() {
            self.check_vertex(v)?;
            if pos[v] != usize::MAX {
                return Err(Error::InvalidParameters(format!("vertex {v} repeated")));
            }
            pos[v] = i;
        }
        let w = self.words;
        let mut adj = vec![0u64; self.n * w];
        for (i, &v) in order.iter().enumerate() {
            let row = &mut adj[i * w..(i + 1) * w];
            for x in bitset::ones(self.row(v)) {
                bitset::set(row, pos[x]);
            }
        }
        let mut g = Graph::from_rows(self.n, adj);
        g.label = self.label.clone();
        Ok(g)
    }

    /// Symmetric adjacency, empty diagonal, no stray bits past column `n`.
    pub fn check_invariants(&self) -> bool {
        let rem = self.n % bitset::WORD_BITS;
        for u in 0..self.n {
            let row = self.row(u);
            if bitset::test(row, u) {
                return false;
            }
            if rem != 0 && row[self.words - 1] & !bitset::low_mask(rem) != 0 {
                return false;
            }
            if bitset::ones(row).any(|v| !bitset::test(self.row(v), u)) {
                return false;
            }
        }
        true
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("m", &self.edge_count())
            .field("label", &self.label)
            .finish()
    }
}
