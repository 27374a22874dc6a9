#![allow(dead_code)]

use graphprod::generators::{generate, GeneratorSpec};
use graphprod::{Graph, RngSeed};
use num_bigint::BigInt;
use num_rational::BigRational;

pub fn q(a: i64, b: i64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

pub fn all_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            out.push((u, v));
        }
    }
    out
}

/// Every labelled graph on `n` vertices, indexed by edge bitmask.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    let pairs = all_pairs(n);
    (0..1u64 << pairs.len())
        .map(|mask| {
            let edges: Vec<_> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            Graph::from_edges(n, &edges).unwrap()
        })
        .collect()
}

/// Number of k-vertex subsets that are cliques, by testing all of them.
pub fn naive_clique_count(g: &Graph, k: usize) -> u64 {
    let n = g.n();
    if k > n {
        return 0;
    }
    let mut count = 0;
    let mut c: Vec<usize> = (0..k).collect();
    loop {
        if c.iter().enumerate().all(|(i, &a)| c[..i].iter().all(|&b| g.has_edge(a, b))) {
            count += 1;
        }
        let mut i = k;
        loop {
            if i == 0 {
                return count;
            }
            i -= 1;
            if c[i] < n - k + i {
                c[i] += 1;
                for j in i + 1..k {
                    c[j] = c[j - 1] + 1;
                }
                break;
            }
        }
        if k == 0 {
            return 1;
        }
    }
}

pub fn er(n: usize, p: f64, seed: u64, stream: u64) -> Graph {
    generate(&GeneratorSpec::ErdosRenyi { n, p }, RngSeed::new(seed).with_stream(stream)).unwrap()
}

/// Exact probability of `g` under `G(n, p)`.
pub fn graph_weight(g: &Graph, p: &BigRational) -> BigRational {
    let n = g.n();
    let m = g.edge_count();
    let total = n * n.saturating_sub(1) / 2;
    let one = q(1, 1);
    num_traits::pow(p.clone(), m) * num_traits::pow(one - p, total - m)
}
