//! Per-vertex network statistics: the k-clustering coefficient, the degree
//! correction factor `D`, local efficiency, isolated vertices and degree
//! counts, with exact identity checks against the tensor product.

use std::collections::BTreeMap;
use std::io::Write;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::bitset;
use crate::cliques::{count_k_cliques, count_u64, factorial, per_vertex_clique_counts};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::products::tensor_product;
use crate::theory::binomial;

fn check_vertex(g: &Graph, v: usize) -> Result<()> {
    if v >= g.n() {
        return Err(Error::VertexOutOfRange { v, n: g.n() });
    }
    Ok(())
}

fn int(x: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn binom_rational(n: usize, k: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(binomial(n, k)))
}

/// Number of edges inside `N(v)`.
fn neighbourhood_edges(g: &Graph, v: usize) -> u64 {
    let row = g.row(v);
    let twice: usize = bitset::ones(row).map(|w| bitset::and_count(row, g.row(w))).sum();
    (twice / 2) as u64
}

/// `A_k(v)`: the number of k-cliques inside `N(v)`.
pub fn neighborhood_clique_count(g: &Graph, v: usize, k: usize) -> Result<u64> {
    check_vertex(g, v)?;
    match k {
        0 => Err(Error::InvalidParameters("k must be at least 1".into())),
        1 => Ok(g.degree(v)? as u64),
        2 => Ok(neighbourhood_edges(g, v)),
        _ => {
            let nb = g.neighborhood(v)?;
            if nb.len() < k {
                return Ok(0);
            }
            let sub = g.induced(&nb)?;
            Ok(count_k_cliques(&sub, k)?.count(k).map(count_u64).unwrap_or(0))
        }
    }
}

/// `C_k(v) = A_k(v) / C(d(v), k)`, and 0 when `d(v) < k`.
pub fn clustering_k(g: &Graph, v: usize, k: usize) -> Result<BigRational> {
    let a = neighborhood_clique_count(g, v, k)?;
    let d = g.degree(v)?;
    Ok(ratio_or_zero(a, d, k))
}

fn ratio_or_zero(a: u64, d: usize, k: usize) -> BigRational {
    if d < k {
        BigRational::zero()
    } else {
        int(a) / binom_rational(d, k)
    }
}

/// Average of `1/dist(j, l)` over neighbour pairs of `v`. Two neighbours are
/// at distance 1 or 2, so adjacent pairs contribute 1 and the rest 1/2.
/// Zero when `d(v) < 2`.
pub fn local_efficiency(g: &Graph, v: usize) -> Result<BigRational> {
    check_vertex(g, v)?;
    let d = g.degree(v)?;
    Ok(efficiency_from(neighbourhood_edges(g, v), d))
}

fn efficiency_from(adjacent: u64, d: usize) -> BigRational {
    if d < 2 {
        return BigRational::zero();
    }
    let pairs = (d * (d - 1) / 2) as u64;
    BigRational::new(BigInt::from(2 * adjacent + (pairs - adjacent)), BigInt::from(2 * pairs))
}

/// `D = C(d_g, k) C(d_h, k) / C(d_g d_h, k)`.
pub fn d_factor(d_g: usize, d_h: usize, k: usize) -> Result<BigRational> {
    if k == 0 || d_g * d_h < k {
        return Err(Error::DegenerateDegree(format!(
            "need d_g * d_h >= k >= 1, got d_g = {d_g}, d_h = {d_h}, k = {k}"
        )));
    }
    Ok(binom_rational(d_g, k) * binom_rational(d_h, k) / binom_rational(d_g * d_h, k))
}

/// Returns `(C_k` of `(u, v)` in `g x h`, `k! C_k(u) C_k(v) D)`, both exact.
pub fn clustering_k_product_identity(
    g: &Graph,
    h: &Graph,
    u: usize,
    v: usize,
    k: usize,
) -> Result<(BigRational, BigRational)> {
    let (t, map) = tensor_product(g, h)?;
    check_vertex(g, u)?;
    check_vertex(h, v)?;
    clustering_identity_on(&t, map.index(u, v), g, h, u, v, k)
}

/// As [`clustering_k_product_identity`] with the tensor product supplied.
pub fn clustering_identity_on(
    t: &Graph,
    idx: usize,
    g: &Graph,
    h: &Graph,
    u: usize,
    v: usize,
    k: usize,
) -> Result<(BigRational, BigRational)> {
    let d = d_factor(g.degree(u)?, h.degree(v)?, k)?;
    let lhs = clustering_k(t, idx, k)?;
    let kf = BigRational::from_integer(BigInt::from(factorial(k)));
    let rhs = kf * clustering_k(g, u, k)? * clustering_k(h, v, k)? * d;
    Ok((lhs, rhs))
}

#[derive(Debug, Clone, PartialEq)]
pub struct VertexMetrics {
    pub v: usize,
    pub degree: usize,
    pub a_k: u64,
    pub c_k: BigRational,
    pub eff: BigRational,
}

/// Degree, `A_k`, `C_k` and efficiency for every vertex.
pub fn vertex_metrics(g: &Graph, k: usize) -> Result<Vec<VertexMetrics>> {
    let a = per_vertex_clique_counts(g, k)?;
    let a2 = if k == 2 { a.clone() } else { per_vertex_clique_counts(g, 2)? };
    Ok((0..g.n())
        .map(|v| {
            let degree = g.row(v).iter().map(|w| w.count_ones() as usize).sum();
            VertexMetrics {
                v,
                degree,
                a_k: a[v],
                c_k: ratio_or_zero(a[v], degree, k),
                eff: efficiency_from(a2[v], degree),
            }
        })
        .collect())
}

/// CSV `v,degree,a_k,c_k,eff`, then a `mean` row.
pub fn write_vertex_metrics_csv<W: Write>(rows: &[VertexMetrics], mut w: W) -> Result<()> {
    writeln!(w, "v,degree,a_k,c_k,eff")?;
    let mut sums = [0.0f64; 4];
    for r in rows {
        let c = r.c_k.to_f64().unwrap_or(f64::NAN);
        let e = r.eff.to_f64().unwrap_or(f64::NAN);
        writeln!(w, "{},{},{},{},{}", r.v, r.degree, r.a_k, c, e)?;
        sums[0] += r.degree as f64;
        sums[1] += r.a_k as f64;
        sums[2] += c;
        sums[3] += e;
    }
    let n = rows.len().max(1) as f64;
    writeln!(
        w,
        "mean,{},{},{},{}",
        sums[0] / n,
        sums[1] / n,
        sums[2] / n,
        sums[3] / n
    )?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsolationReport {
    pub isolated_count: usize,
    /// degree -> number of vertices with that degree
    pub degree_histogram: BTreeMap<usize, usize>,
}

pub fn isolation_report(g: &Graph) -> IsolationReport {
    degree_report(g.degrees())
}

fn degree_report(degrees: impl IntoIterator<Item = usize>) -> IsolationReport {
    let mut degree_histogram = BTreeMap::new();
    for d in degrees {
        *degree_histogram.entry(d).or_insert(0) += 1;
    }
    IsolationReport {
        isolated_count: degree_histogram.get(&0).copied().unwrap_or(0),
        degree_histogram,
    }
}

/// `I(g x h) = n_h I(g) + n_g I(h) - I(g) I(h)`, with the left side counted on
/// the materialised product.
pub fn product_isolation_identity_check(g: &Graph, h: &Graph) -> Result<bool> {
    let (t, _) = tensor_product(g, h)?;
    let ig = isolation_report(g).isolated_count;
    let ih = isolation_report(h).isolated_count;
    Ok(isolation_report(&t).isolated_count == h.n() * ig + g.n() * ih - ig * ih)
}

/// Number of isolated vertices of `g x h` from factor degrees alone.
pub fn product_isolated_count(g: &Graph, h: &Graph) -> usize {
    let ig = isolation_report(g).isolated_count;
    let ih = isolation_report(h).isolated_count;
    h.n() * ig + g.n() * ih - ig * ih
}

/// Degree-m counts of `g x h`: the true count and the three-sum expression
/// `#{d_g = d_h = m} + #{d_g = m, d_h > m} + #{d_g > m, d_h = m}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeCountComparison {
    pub actual: usize,
    pub decomposition: usize,
}

pub fn degree_m_counts(g: &Graph, h: &Graph, m: usize) -> Result<DegreeCountComparison> {
    let (t, _) = tensor_product(g, h)?;
    let actual = t.degrees().into_iter().filter(|&d| d == m).count();
    let dg = g.degrees();
    let dh = h.degrees();
    let mut decomposition = 0;
    for &a in &dg {
        for &b in &dh {
            let hit = (a == m && b == m) || (a == m && b > m) || (a > m && b == m);
            decomposition += hit as usize;
        }
    }
    Ok(DegreeCountComparison { actual, decomposition })
}

/// Whether the three-sum degree-m decomposition matches the product.
pub fn degree_m_product_decomposition_check(g: &Graph, h: &Graph, m: usize) -> Result<bool> {
    let c = degree_m_counts(g, h, m)?;
    Ok(c.actual == c.decomposition)
}
