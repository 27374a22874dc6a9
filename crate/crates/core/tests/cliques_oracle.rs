mod common;

use common::{er, naive_clique_count};
use graphprod::cliques::{
    count_k_cliques, count_k_cliques_with, count_u64, max_clique, per_vertex_clique_counts, tensor_census_identity_check,
    tensor_clique_number, CensusOptions, DEFAULT_NODE_BUDGET,
};
use graphprod::products::tensor_product;
use graphprod::Graph;
use num_bigint::BigUint;

#[test]
fn census_matches_subset_oracle() {
    for s in 0..60u64 {
        let n = 1 + (s as usize % 12);
        let p = [0.2, 0.5, 0.8][s as usize % 3];
        let g = er(n, p, 5, s);
        let c = count_k_cliques(&g, 5).unwrap();
        for k in 1..=5 {
            let got = c.count(k).map(count_u64).unwrap_or(0);
            assert_eq!(got, naive_clique_count(&g, k), "seed {s}, n {n}, k {k}");
        }
        assert_eq!(c.count(1).map(count_u64), Some(n as u64));
        assert_eq!(c.count(2).map(count_u64), Some(g.edge_count() as u64));
    }
}

#[test]
fn zero_counts_stay_zero() {
    for s in 0..30u64 {
        let g = er(12, 0.4, 8, s);
        let c = count_k_cliques(&g, 12).unwrap();
        let first_zero = (1..=12).find(|&k| c.count(k).map(count_u64).unwrap_or(0) == 0);
        if let Some(z) = first_zero {
            for k in z..=12 {
                assert_eq!(c.count(k).map(count_u64).unwrap_or(0), 0);
            }
        }
    }
}

#[test]
fn handshake_identity() {
    for s in 0..40u64 {
        let g = er(11, 0.6, 9, s);
        let opts = CensusOptions { budget: DEFAULT_NODE_BUDGET, per_vertex: true };
        let c = count_k_cliques_with(&g, 5, &opts).unwrap();
        for k in 1..5 {
            let sum: u64 = (0..g.n()).map(|v| c.per_vertex(v, k).unwrap()).sum();
            let next = c.count(k + 1).map(count_u64).unwrap_or(0);
            assert_eq!(sum, (k as u64 + 1) * next, "seed {s}, k {k}");
        }
    }
}

#[test]
fn per_vertex_triangles_match_triple_scan() {
    let g = er(10, 0.5, 1234, 0);
    let a = per_vertex_clique_counts(&g, 2).unwrap();
    for v in 0..10 {
        let mut t = 0;
        for x in 0..10 {
            for y in x + 1..10 {
                if g.has_edge(v, x) && g.has_edge(v, y) && g.has_edge(x, y) {
                    t += 1;
                }
            }
        }
        assert_eq!(a[v], t);
    }
}

#[test]
fn max_clique_is_largest_nonzero_count() {
    for s in 0..60u64 {
        let n = 1 + (s as usize % 14);
        let g = er(n, 0.55, 13, s);
        let m = max_clique(&g).unwrap();
        let c = count_k_cliques(&g, n).unwrap();
        assert_eq!(m.omega, c.largest_nonzero(), "seed {s}");
        assert_eq!(m.witness.len(), m.omega);
        for (i, &a) in m.witness.iter().enumerate() {
            for &b in &m.witness[..i] {
                assert!(g.has_edge(a, b));
            }
        }
    }
}

#[test]
fn max_clique_examples() {
    for n in 1..8 {
        assert_eq!(max_clique(&Graph::complete(n)).unwrap().omega, n);
    }
    let k3 = Graph::complete(3);
    let (t, _) = tensor_product(&k3, &k3).unwrap();
    assert_eq!(max_clique(&t).unwrap().omega, 3);
}

#[test]
fn tensor_clique_number_matches_materialised_product() {
    for s in 0..80u64 {
        let g = er(3 + s as usize % 9, 0.6, 17, 2 * s);
        let h = er(3 + (s as usize * 5) % 9, 0.6, 17, 2 * s + 1);
        let (t, _) = tensor_product(&g, &h).unwrap();
        assert_eq!(
            tensor_clique_number(&g, &h, DEFAULT_NODE_BUDGET).unwrap(),
            max_clique(&t).unwrap().omega,
            "seed {s}"
        );
    }
}

#[test]
fn product_census_identity_sweep() {
    for s in 0..100u64 {
        let p = [0.3, 0.5, 0.7][s as usize % 3];
        let g = er(2 + s as usize % 9, p, 21, 2 * s);
        let h = er(2 + (s as usize * 3) % 9, p, 21, 2 * s + 1);
        for k in 1..=4 {
            assert!(tensor_census_identity_check(&g, &h, k).unwrap(), "seed {s}, k {k}");
        }
    }
    let k4 = Graph::complete(4);
    let (t, _) = tensor_product(&k4, &k4).unwrap();
    assert_eq!(count_k_cliques(&t, 3).unwrap().count(3), Some(&BigUint::from(96u32)));
}

#[test]
fn census_is_thread_count_independent() {
    let g = er(40, 0.5, 3, 0);
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| {
                let opts = CensusOptions { budget: DEFAULT_NODE_BUDGET, per_vertex: true };
                let c = count_k_cliques_with(&g, 6, &opts).unwrap();
                (c.counts().to_vec(), (0..40).map(|v| c.per_vertex(v, 3).unwrap()).collect::<Vec<_>>())
            })
    };
    assert_eq!(run(1), run(4));
}
