//! Tensor and modular graph products.
//!
//! Product vertex `(u, v)` has index `u * n_h + v` (row-major in the first
//! factor). Both products are materialised as dense [`Graph`]s; inputs whose
//! product would exceed the vertex cap are rejected.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bitset::{self, or_shifted, words_for};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Default upper bound on product vertex count.
pub const DEFAULT_VERTEX_CAP: usize = 250_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProductKind {
    /// `(u,v) ~ (u',v')` iff `u ~ u'` and `v ~ v'`.
    Tensor,
    /// `(u,v) ~ (u',v')` iff `u != u'`, `v != v'` and the two factor pairs
    /// are both adjacent or both non-adjacent.
    Modular,
}

impl fmt::Display for ProductKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ProductKind::Tensor => "tensor",
            ProductKind::Modular => "modular",
        })
    }
}

impl FromStr for ProductKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "tensor" | "kronecker" | "direct" => Ok(ProductKind::Tensor),
            "modular" => Ok(ProductKind::Modular),
            other => Err(Error::InvalidParameters(format!("unknown product kind '{other}'"))),
        }
    }
}

/// Bijection between factor pairs `(u, v)` and product indices `u * n_h + v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductVertexMap {
    pub n_g: usize,
    pub n_h: usize,
}

impl ProductVertexMap {
    pub fn new(n_g: usize, n_h: usize) -> Self {
        ProductVertexMap { n_g, n_h }
    }

    pub fn len(&self) -> usize {
        self.n_g * self.n_h
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    #[inline]
    pub fn index(&self, u: usize, v: usize) -> usize {
        debug_assert!(u < self.n_g && v < self.n_h);
        u * self.n_h + v
    }

    #[inline]
    pub fn pair(&self, idx: usize) -> (usize, usize) {
        debug_assert!(idx < self.len());
        (idx / self.n_h, idx % self.n_h)
    }
}

pub fn tensor_product(g: &Graph, h: &Graph) -> Result<(Graph, ProductVertexMap)> {
    product_with_cap(ProductKind::Tensor, g, h, DEFAULT_VERTEX_CAP)
}

pub fn modular_product(g: &Graph, h: &Graph) -> Result<(Graph, ProductVertexMap)> {
    product_with_cap(ProductKind::Modular, g, h, DEFAULT_VERTEX_CAP)
}

pub fn product(kind: ProductKind, g: &Graph, h: &Graph) -> Result<(Graph, ProductVertexMap)> {
    product_with_cap(kind, g, h, DEFAULT_VERTEX_CAP)
}

pub fn product_with_cap(
    kind: ProductKind,
    g: &Graph,
    h: &Graph,
    cap: usize,
) -> Result<(Graph, ProductVertexMap)> {
    let (n_g, n_h) = (g.n(), h.n());
    if n_g == 0 || n_h == 0 {
        return Err(Error::InvalidParameters("product factors need at least one vertex".into()));
    }
    let n = n_g
        .checked_mul(n_h)
        .filter(|&n| n <= cap)
        .ok_or(Error::SizeOverflow { n_g, n_h, cap })?;
    let map = ProductVertexMap::new(n_g, n_h);
    let words = words_for(n);

    // complement rows of H restricted to n_h bits, minus the diagonal
    let h_words = h.words_per_row();
    let h_complement: Vec<u64> = match kind {
        ProductKind::Tensor => Vec::new(),
        ProductKind::Modular => (0..n_h)
            .flat_map(|v| {
                let mut row: Vec<u64> = h.row(v).iter().map(|w| !w).collect();
                bitset::clear(&mut row, v);
                row
            })
            .collect(),
    };

    let mut adj = vec![0u64; n * words];
    adj.par_chunks_mut(words * n_h)
        .enumerate()
        .for_each(|(u, block)| {
            for (v, row) in block.chunks_mut(words).enumerate() {
                let h_row = h.row(v);
                for u2 in 0..n_g {
                    if u2 == u {
                        continue;
                    }
                    let offset = u2 * n_h;
                    if g.has_edge(u, u2) {
                        or_shifted(row, h_row, offset, n_h);
                    } else if kind == ProductKind::Modular {
                        or_shifted(row, &h_complement[v * h_words..(v + 1) * h_words], offset, n_h);
                    }
                }
            }
        });
    let label = format!(
        "{}{}{}",
        g.label().unwrap_or("G"),
        match kind {
            ProductKind::Tensor => " x ",
            ProductKind::Modular => " xm ",
        },
        h.label().unwrap_or("H")
    );
    Ok((Graph::from_rows(n, adj).with_label(label), map))
}

/// Checks `deg((u, v)) = deg(u) * deg(v)` for every vertex of `g x h`.
pub fn product_degree_check(g: &Graph, h: &Graph) -> Result<bool> {
    let (t, map) = tensor_product(g, h)?;
    let (dg, dh, dt) = (g.degrees(), h.degrees(), t.degrees());
    Ok((0..map.len()).all(|i| {
        let (u, v) = map.pair(i);
        dt[i] == dg[u] * dh[v]
    }))
}

/// Product degree sequence `deg(u) * deg(v)` in product index order, without
/// materialising the product.
pub fn tensor_degrees(g: &Graph, h: &Graph) -> Vec<usize> {
    let (dg, dh) = (g.degrees(), h.degrees());
    dg.iter().flat_map(|&a| dh.iter().map(move |&b| a * b)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p2() -> Graph {
        Graph::path(2)
    }

    #[test]
    fn p2_tensor_p2() {
        let (t, map) = tensor_product(&p2(), &p2()).unwrap();
        assert_eq!(t.n(), 4);
        assert!(t.has_edge(map.index(0, 0), map.index(1, 1)));
        assert!(t.has_edge(map.index(0, 1), map.index(1, 0)));
        assert_eq!(t.edge_count(), 2);
    }

    #[test]
    fn k3_tensor_k3() {
        let (t, _) = tensor_product(&Graph::complete(3), &Graph::complete(3)).unwrap();
        assert_eq!(t.n(), 9);
        assert!(t.degrees().iter().all(|&d| d == 4));
        assert_eq!(t.edge_count(), 18);
    }

    #[test]
    fn tensor_with_single_vertex_is_empty() {
        let (t, _) = tensor_product(&Graph::complete(4), &Graph::empty(1)).unwrap();
        assert_eq!(t.n(), 4);
        assert_eq!(t.edge_count(), 0);
    }

    #[test]
    fn p2_modular_p2_matches_tensor() {
        let (m, _) = modular_product(&p2(), &p2()).unwrap();
        let (t, _) = tensor_product(&p2(), &p2()).unwrap();
        assert_eq!(m.edges().collect::<Vec<_>>(), t.edges().collect::<Vec<_>>());
    }

    #[test]
    fn p3_modular_k3_edge_count_matches_pair_scan() {
        let (g, h) = (Graph::path(3), Graph::complete(3));
        let (m, map) = modular_product(&g, &h).unwrap();
        let mut oracle = 0;
        for a in 0..9 {
            for b in a + 1..9 {
                let ((u, v), (u2, v2)) = (map.pair(a), map.pair(b));
                if u != u2 && v != v2 && g.has_edge(u, u2) == h.has_edge(v, v2) {
                    oracle += 1;
                }
            }
        }
        // P3 has 2 edges (4 ordered pairs), K3 has 6 ordered adjacent pairs
        assert_eq!(oracle, 12);
        assert_eq!(m.edge_count(), oracle);
    }

    #[test]
    fn degree_check_examples() {
        assert!(product_degree_check(&Graph::complete(3), &Graph::complete(3)).unwrap());
        assert!(product_degree_check(&Graph::path(3), &Graph::path(2)).unwrap());
    }

    #[test]
    fn wide_products_cross_word_boundaries() {
        // n_h = 70 puts factor blocks across u64 boundaries
        let (t, map) = tensor_product(&Graph::cycle(5), &Graph::complete(70)).unwrap();
        assert!(t.check_invariants());
        assert_eq!(t.degree(map.index(2, 69)).unwrap(), 2 * 69);
        let (m, _) = modular_product(&Graph::cycle(5), &Graph::path(70)).unwrap();
        assert!(m.check_invariants());
    }

    #[test]
    fn cap_and_empty_factors() {
        let g = Graph::empty(10);
        assert!(matches!(
            product_with_cap(ProductKind::Tensor, &g, &g, 99),
            Err(Error::SizeOverflow { n_g: 10, n_h: 10, cap: 99 })
        ));
        assert!(tensor_product(&Graph::empty(0), &g).is_err());
    }

    #[test]
    fn vertex_map_is_bijective() {
        let map = ProductVertexMap::new(3, 5);
        for i in 0..map.len() {
            let (u, v) = map.pair(i);
            assert_eq!(map.index(u, v), i);
        }
    }

    #[test]
    fn kind_parses() {
        assert_eq!("tensor".parse::<ProductKind>().unwrap(), ProductKind::Tensor);
        assert_eq!("Modular".parse::<ProductKind>().unwrap(), ProductKind::Modular);
        assert!("strong".parse::<ProductKind>().is_err());
    }
}
