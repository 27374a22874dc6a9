mod common;

use common::{all_graphs, er, graph_weight, q};
use graphprod::cliques::{count_k_cliques, count_u64};
use graphprod::theory::{
    bound_term_sequence, clique_threshold_lower, clique_threshold_upper, expected_xk, expected_zk, isolated_moments,
    isolated_product_mean, var_product_iid, var_xk_exact, varxk_bound_corollary, varxk_bound_full, Probability,
    DEFAULT_LOWER_M,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use proptest::prelude::*;

fn prob(s: &str) -> Probability {
    s.parse().unwrap()
}

#[test]
fn isolated_moments_match_enumeration() {
    for n in 1..=4 {
        for p in [q(1, 4), q(1, 2), q(3, 4), q(0, 1), q(1, 1)] {
            let mut mean = BigRational::zero();
            let mut second = BigRational::zero();
            for g in all_graphs(n) {
                let w = graph_weight(&g, &p);
                let i = BigRational::from_integer(BigInt::from(g.degrees().iter().filter(|&&d| d == 0).count()));
                mean += &w * &i;
                second += &w * &i * &i;
            }
            let var = &second - &mean * &mean;
            let (m, v) = isolated_moments(n, &Probability::new(p.clone()).unwrap()).unwrap();
            assert_eq!((m, v), (mean, var), "n {n} p {p}");
        }
    }
}

#[test]
fn isolated_product_mean_matches_enumeration() {
    for n in 1..=3 {
        for p in [q(1, 4), q(1, 2), q(3, 4)] {
            let graphs = all_graphs(n);
            let mut mean = BigRational::zero();
            for g in &graphs {
                for h in &graphs {
                    let (t, _) = graphprod::products::tensor_product(g, h).unwrap();
                    let iso = t.degrees().iter().filter(|&&d| d == 0).count();
                    mean += graph_weight(g, &p) * graph_weight(h, &p) * BigRational::from_integer(BigInt::from(iso));
                }
            }
            let pr = Probability::new(p.clone()).unwrap();
            assert_eq!(isolated_product_mean(n, &pr).unwrap().exact, mean);
        }
    }
}

proptest! {
    #[test]
    fn isolated_product_mean_identity(n in 1usize..60, num in 0i64..=20) {
        let p = Probability::new(q(num, 20)).unwrap();
        let (m, _) = isolated_moments(n, &p).unwrap();
        let two_n = BigRational::from_integer(BigInt::from(2 * n));
        prop_assert_eq!(isolated_product_mean(n, &p).unwrap().exact, two_n * &m - &m * &m);
    }

    #[test]
    fn bounds_dominate_exact_variance(n in 3usize..25, k in 2usize..6, num in 1i64..10) {
        prop_assume!(k <= n);
        let p = Probability::new(q(num, 10)).unwrap();
        let v = var_xk_exact(n, &p, k).unwrap();
        prop_assert!(varxk_bound_full(n, &p, k).unwrap() >= v);
        // the simplified bound relies on the overlap terms decreasing
        if k >= 3 && 2 * k <= n && bound_term_sequence(n, &p, k).unwrap().is_strictly_decreasing() {
            prop_assert!(varxk_bound_corollary(n, &p, k).unwrap() >= v);
        }
    }

    #[test]
    fn upper_threshold_increases(a in 3.0f64..1e6, b in 1.0f64..1e6, p in 0.05f64..0.95) {
        let lo = clique_threshold_upper(a, p).unwrap();
        let hi = clique_threshold_upper(a + b, p).unwrap();
        prop_assert!(hi > lo);
        prop_assert!(clique_threshold_lower(a, p, DEFAULT_LOWER_M).unwrap() < lo);
    }
}

#[test]
fn corollary_bound_needs_decreasing_terms() {
    let p = prob("0.1");
    assert!(!bound_term_sequence(10, &p, 5).unwrap().is_strictly_decreasing());
    assert!(varxk_bound_corollary(6, &p, 5).unwrap() < var_xk_exact(6, &p, 5).unwrap());
}

#[test]
fn full_bound_above_monte_carlo_variance() {
    let samples: Vec<f64> = (0..100_000u64)
        .map(|s| {
            let g = er(10, 0.5, 404, s);
            count_k_cliques(&g, 3).unwrap().count(3).map(count_u64).unwrap_or(0) as f64
        })
        .collect();
    let r = samples.len() as f64;
    let mean = samples.iter().sum::<f64>() / r;
    let var = samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (r - 1.0);
    let m4 = samples.iter().map(|x| (x - mean).powi(4)).sum::<f64>() / r;
    let se = ((m4 - var * var) / r).sqrt();
    let bound = varxk_bound_full(10, &prob("0.5"), 3).unwrap().to_f64().unwrap();
    assert!(bound >= var - 4.0 * se, "bound {bound}, variance {var} +- {se}");
    let exact = var_xk_exact(10, &prob("0.5"), 3).unwrap().to_f64().unwrap();
    assert!((var - exact).abs() < 4.0 * se, "exact {exact}, estimate {var} +- {se}");
}

#[test]
fn corollary_bound_scales_like_n_to_2k_minus_2() {
    let p = prob("0.5");
    for k in 3..=5 {
        let ratios: Vec<f64> = (1..=16)
            .map(|i| {
                let n = 50 * i;
                let b = varxk_bound_corollary(n, &p, k).unwrap().to_f64().unwrap();
                b / (n as f64).powi(2 * k as i32 - 2)
            })
            .collect();
        let max = ratios.iter().cloned().fold(0.0, f64::max);
        // the leading coefficient k^3/(2 p) p^(k(k-1)) / (k! (k-2)!) bounds the whole grid
        let lead = (k as f64).powi(3) / 2.0 / 0.5 * 0.5f64.powi((k * (k - 1)) as i32)
            / ((1..=k).product::<usize>() * (1..=k - 2).product::<usize>()) as f64;
        assert!(max <= lead * 1.01, "k {k}: {max} vs {lead}");
    }
    let b = varxk_bound_corollary(100, &p, 4).unwrap();
    let full = varxk_bound_full(100, &p, 4).unwrap();
    assert!(b.to_f64().unwrap() > 0.0 && b >= full);
}

#[test]
fn upper_threshold_mean_falls_below_one() {
    let p = prob("0.5");
    for n in (50..=500).step_by(50) {
        let k = clique_threshold_upper(n as f64, 0.5).unwrap().ceil() as usize;
        assert!(expected_zk(n, &p, k).unwrap() < q(1, 1), "n {n}");
    }
}

#[test]
fn lower_threshold_examples() {
    let n = 1e4f64;
    let lo = clique_threshold_lower(n, 0.5, 5.0).unwrap();
    assert!((lo - (2.0 * n.log2() - 5.0 * n.log2().log2())).abs() < 1e-12);
    for n in [16.0, 64.0, 1e3, 1e5, 1e8] {
        assert!(clique_threshold_lower(n, 0.5, DEFAULT_LOWER_M).unwrap() < clique_threshold_upper(n, 0.5).unwrap());
    }
    let ratio = |n: f64| clique_threshold_lower(n, 0.5, DEFAULT_LOWER_M).unwrap() / (2.0 * n.log2());
    let r6 = ratio(1e6);
    assert!((r6 - 0.566).abs() < 0.01, "{r6}");
    let grid: Vec<f64> = [1e6, 1e12, 2f64.powi(60), 2f64.powi(100)].iter().map(|&n| ratio(n)).collect();
    assert!(grid.windows(2).all(|w| w[1] > w[0]));
    assert!((1.0 - grid[3]).abs() < 0.15, "{grid:?}");
}

#[test]
fn isolated_wlln_ratio() {
    let ratio = |n: usize, p: Probability| isolated_product_mean(n, &p).unwrap().ratio().unwrap().to_f64().unwrap();
    let sparse: Vec<f64> = [200usize, 400, 800, 1600]
        .iter()
        .map(|&n| ratio(n, Probability::new(q(2, n as i64)).unwrap()))
        .collect();
    let limit = 1.0 - (-2.0f64).exp() / 2.0;
    assert!((sparse[0] - 1.0).abs() < 0.25);
    for w in sparse.windows(2) {
        assert!((w[1] - limit).abs() < (w[0] - limit).abs());
    }
    let dense: Vec<f64> = [20usize, 40, 160].iter().map(|&n| ratio(n, prob("0.1"))).collect();
    assert!(dense.windows(2).all(|w| w[1] > w[0]) && dense[2] > 0.9999);
}

#[test]
fn term_sequence_threshold_scan() {
    let p = prob("0.5");
    for k in 3..=5 {
        let first = (2 * k..400)
            .find(|&n| bound_term_sequence(n, &p, k).unwrap().is_strictly_decreasing())
            .unwrap();
        for n in first..=first + 500 {
            assert!(bound_term_sequence(n, &p, k).unwrap().is_strictly_decreasing(), "k {k} n {n}");
        }
        if k == 4 {
            // a_2 > a_3 iff 6(n-5) > 32
            assert_eq!(first, 11);
        }
        if k == 3 {
            assert_eq!(first, 6);
        }
    }
    let k = (2.0 * 1000f64.log2() - 5.0 * 1000f64.log2().log2()).floor() as usize;
    assert!(bound_term_sequence(1000, &p, k).unwrap().is_strictly_decreasing());
    assert!(bound_term_sequence(1000, &p, 6).unwrap().terms.iter().all(|t| *t > q(0, 1)));
}

#[test]
fn product_variance_by_enumeration() {
    // X, Y iid uniform on {0, 2}
    let values = [0i64, 2];
    let mut m1 = q(0, 1);
    let mut m2 = q(0, 1);
    for &x in &values {
        for &y in &values {
            m1 += q(x * y, 4);
            m2 += q(x * y * x * y, 4);
        }
    }
    assert_eq!(var_product_iid(&q(1, 1), &q(1, 1)).unwrap(), &m2 - &m1 * &m1);
    assert_eq!(var_product_iid(&q(0, 1), &q(5, 1)).unwrap(), q(0, 1));
}

#[test]
fn complete_graph_means() {
    let one = prob("1");
    for n in 1..8 {
        for k in 1..=n {
            let c = graphprod::theory::binomial(n, k);
            assert_eq!(expected_xk(n, &one, k).unwrap(), BigRational::from_integer(BigInt::from(c)));
        }
    }
}
