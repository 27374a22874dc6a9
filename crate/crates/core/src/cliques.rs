//! Exact k-clique census, per-vertex clique counts and maximum clique.
//!
//! Both searches relabel the graph by a smallest-last (degeneracy) order
//! first. The census then only extends a clique with higher-labelled common
//! neighbours, so every clique is visited exactly once and the branching at
//! the root is bounded by the degeneracy. `nodes_explored` is a pure
//! function of the graph: it counts visited cliques for the census and
//! search-tree nodes for the maximum clique.

use std::collections::BTreeMap;
use std::io::Write;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::bitset::{self, low_mask, BitSet, WORD_BITS};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::products::tensor_product;

/// Default search-node budget for census and maximum-clique searches.
pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000_000;

const BUDGET_FLUSH: u64 = 1 << 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CensusOptions {
    pub budget: u64,
    /// Also accumulate `A_k(v)` for every vertex.
    pub per_vertex: bool,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions {
            budget: DEFAULT_NODE_BUDGET,
            per_vertex: false,
        }
    }
}

/// Clique counts `X_k` for `k = 1..=k_max`, optionally with `A_k(v)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueCensus {
    k_max: usize,
    n: usize,
    counts: Vec<BigUint>,
    /// `per_vertex[v * (k_max - 1) + (k - 1)] = A_k(v)` for `1 <= k < k_max`.
    per_vertex: Option<Vec<u64>>,
    nodes_explored: u64,
}

impl CliqueCensus {
    /// Largest clique size that was counted (zero counts included).
    pub fn k_max(&self) -> usize {
        self.k_max
    }

    /// `X_k`, or `None` when `k` was not evaluated.
    pub fn count(&self, k: usize) -> Option<&BigUint> {
        (k >= 1).then(|| self.counts.get(k - 1)).flatten()
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    /// Largest `k <= k_max` with `X_k > 0`.
    pub fn largest_nonzero(&self) -> usize {
        self.counts.iter().rposition(|c| !c.is_zero()).map_or(0, |i| i + 1)
    }

    pub fn nodes_explored(&self) -> u64 {
        self.nodes_explored
    }

    pub fn has_per_vertex(&self) -> bool {
        self.per_vertex.is_some()
    }

    /// `A_k(v)`: the number of k-cliques inside `N(v)`, available for
    /// `1 <= k < k_max` when the census tracked per-vertex counts.
    pub fn per_vertex(&self, v: usize, k: usize) -> Option<u64> {
        let pv = self.per_vertex.as_ref()?;
        if k == 0 || k >= self.k_max || v >= self.n {
            return None;
        }
        Some(pv[v * (self.k_max - 1) + k - 1])
    }

    /// `{"k": "count"}` with decimal-string counts.
    pub fn to_json_map(&self) -> BTreeMap<usize, String> {
        self.counts
            .iter()
            .enumerate()
            .map(|(i, c)| (i + 1, c.to_string()))
            .collect()
    }

    /// Writes `v,k,a_k` rows for every tracked `(v, k)`.
    pub fn write_per_vertex_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "v,k,a_k")?;
        if self.per_vertex.is_none() {
            return Ok(());
        }
        for v in 0..self.n {
            for k in 1..self.k_max {
                writeln!(w, "{v},{k},{}", self.per_vertex(v, k).expect("tracked"))?;
            }
        }
        Ok(())
    }
}

/// Smallest-last vertex order: repeatedly removes a vertex of minimum
/// remaining degree (ties to the lowest label).
pub fn degeneracy_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut deg = g.degrees();
    let max_deg = deg.iter().copied().max().unwrap_or(0);
    let mut buckets: Vec<std::collections::BTreeSet<usize>> = vec![Default::default(); max_deg + 1];
    for v in 0..n {
        buckets[deg[v]].insert(v);
    }
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut lo = 0;
    for _ in 0..n {
        lo = lo.min(max_deg);
        while buckets[lo].is_empty() {
            lo += 1;
        }
        let v = buckets[lo].pop_first().expect("non-empty bucket");
        removed[v] = true;
        order.push(v);
        for w in bitset::ones(g.row(v)) {
            if !removed[w] {
                buckets[deg[w]].remove(&w);
                deg[w] -= 1;
                buckets[deg[w]].insert(w);
            }
        }
        lo = lo.saturating_sub(1);
    }
    order
}

pub fn count_k_cliques(g: &Graph, k_max: usize) -> Result<CliqueCensus> {
    count_k_cliques_with(g, k_max, &CensusOptions::default())
}

pub fn count_k_cliques_with(g: &Graph, k_max: usize, opts: &CensusOptions) -> Result<CliqueCensus> {
    if k_max == 0 {
        return Err(Error::InvalidParameters("k_max must be at least 1".into()));
    }
    let n = g.n();
    let order = degeneracy_order(g);
    let r = g.permuted(&order)?;
    let pv_width = k_max - 1;
    let track = opts.per_vertex && pv_width > 0;
    let spent = AtomicU64::new(0);
    let exhausted = AtomicBool::new(false);

    let acc = (0..n)
        .into_par_iter()
        .with_min_len(16)
        .fold(
            || Enumerator::new(&r, k_max, track, opts.budget, &spent, &exhausted),
            |mut e, root| {
                e.run_root(root);
                e
            },
        )
        .map(Enumerator::finish)
        .reduce(
            || Partial::zero(n, k_max, track),
            |mut a, b| {
                a.merge(&b);
                a
            },
        );

    if exhausted.load(Ordering::Relaxed) {
        return Err(Error::BudgetExceeded { budget: opts.budget });
    }

    let counts = acc.counts.iter().map(|&c| BigUint::from(c)).collect();
    // map relabelled vertices back to the caller's labels
    let per_vertex = track.then(|| {
        let mut pv = vec![0u64; n * pv_width];
        for (i, &orig) in order.iter().enumerate() {
            pv[orig * pv_width..(orig + 1) * pv_width]
                .copy_from_slice(&acc.per_vertex[i * pv_width..(i + 1) * pv_width]);
        }
        pv
    });
    Ok(CliqueCensus {
        k_max,
        n,
        counts,
        per_vertex,
        nodes_explored: acc.nodes,
    })
}

/// `A_k(v)` for every vertex: the number of k-cliques inside `N(v)`.
pub fn per_vertex_clique_counts(g: &Graph, k: usize) -> Result<Vec<u64>> {
    per_vertex_clique_counts_with_budget(g, k, DEFAULT_NODE_BUDGET)
}

pub fn per_vertex_clique_counts_with_budget(g: &Graph, k: usize, budget: u64) -> Result<Vec<u64>> {
    if k == 0 {
        return Err(Error::InvalidParameters("k must be at least 1".into()));
    }
    let census = count_k_cliques_with(g, k + 1, &CensusOptions { budget, per_vertex: true })?;
    Ok((0..g.n())
        .map(|v| census.per_vertex(v, k).expect("tracked"))
        .collect())
}

struct Partial {
    counts: Vec<u64>,
    per_vertex: Vec<u64>,
    nodes: u64,
}

impl Partial {
    fn zero(n: usize, k_max: usize, track: bool) -> Self {
        Partial {
            counts: vec![0; k_max],
            per_vertex: if track { vec![0; n * (k_max - 1)] } else { Vec::new() },
            nodes: 0,
        }
    }

    fn merge(&mut self, other: &Partial) {
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
        for (a, b) in self.per_vertex.iter_mut().zip(&other.per_vertex) {
            *a += b;
        }
        self.nodes += other.nodes;
    }
}

struct Enumerator<'a> {
    g: &'a Graph,
    k_max: usize,
    partial: Partial,
    stack: Vec<usize>,
    bufs: Vec<Vec<u64>>,
    unflushed: u64,
    budget: u64,
    spent: &'a AtomicU64,
    exhausted: &'a AtomicBool,
}

impl<'a> Enumerator<'a> {
    fn new(
        g: &'a Graph,
        k_max: usize,
        track: bool,
        budget: u64,
        spent: &'a AtomicU64,
        exhausted: &'a AtomicBool,
    ) -> Self {
        let words = g.words_per_row();
        Enumerator {
            g,
            k_max,
            partial: Partial::zero(g.n(), k_max, track),
            stack: Vec::with_capacity(k_max),
            bufs: vec![vec![0; words]; k_max],
            unflushed: 0,
            budget,
            spent,
            exhausted,
        }
    }

    fn finish(mut self) -> Partial {
        self.flush();
        self.partial
    }

    fn flush(&mut self) {
        if self.unflushed > 0 {
            let total = self.spent.fetch_add(self.unflushed, Ordering::Relaxed) + self.unflushed;
            if total > self.budget {
                self.exhausted.store(true, Ordering::Relaxed);
            }
            self.unflushed = 0;
        }
    }

    /// Records one clique (the current stack) and charges the budget.
    /// Returns `false` once the shared budget is gone.
    fn visit(&mut self) -> bool {
        let size = self.stack.len();
        self.partial.counts[size - 1] += 1;
        self.partial.nodes += 1;
        if size >= 2 && !self.partial.per_vertex.is_empty() {
            let width = self.k_max - 1;
            for &x in &self.stack {
                self.partial.per_vertex[x * width + size - 2] += 1;
            }
        }
        self.unflushed += 1;
        if self.unflushed >= BUDGET_FLUSH {
            self.flush();
        }
        !self.exhausted.load(Ordering::Relaxed)
    }

    fn run_root(&mut self, root: usize) {
        if self.exhausted.load(Ordering::Relaxed) {
            return;
        }
        self.stack.push(root);
        if self.visit() && self.k_max > 1 {
            later_neighbours(self.g.row(root), root, &mut self.bufs[0]);
            self.extend(0);
        }
        self.stack.pop();
    }

    /// Extends the current clique by every candidate in `bufs[depth]`.
    fn extend(&mut self, depth: usize) {
        let mut cand = std::mem::take(&mut self.bufs[depth]);
        let deeper = self.stack.len() + 1 < self.k_max;
        for w in bitset::ones(&cand) {
            self.stack.push(w);
            let alive = self.visit();
            if alive && deeper {
                let next = &mut self.bufs[depth + 1];
                next.copy_from_slice(&cand);
                intersect_later(next, self.g.row(w), w);
                if next.iter().any(|&x| x != 0) {
                    self.extend(depth + 1);
                }
            }
            self.stack.pop();
            if !alive {
                break;
            }
        }
        cand.iter_mut().for_each(|x| *x = 0);
        self.bufs[depth] = cand;
    }
}

/// `out = row restricted to vertices > v`.
fn later_neighbours(row: &[u64], v: usize, out: &mut [u64]) {
    out.copy_from_slice(row);
    let wi = v / WORD_BITS;
    for x in &mut out[..wi] {
        *x = 0;
    }
    out[wi] &= !low_mask(v % WORD_BITS + 1);
}

/// `set &= row & {x : x > v}`.
fn intersect_later(set: &mut [u64], row: &[u64], v: usize) {
    let wi = v / WORD_BITS;
    for x in &mut set[..wi] {
        *x = 0;
    }
    set[wi] &= row[wi] & !low_mask(v % WORD_BITS + 1);
    for (x, r) in set[wi + 1..].iter_mut().zip(&row[wi + 1..]) {
        *x &= r;
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxCliqueResult {
    pub omega: usize,
    /// A maximum clique, sorted ascending.
    pub witness: Vec<usize>,
    pub nodes_explored: u64,
}

pub fn max_clique(g: &Graph) -> Result<MaxCliqueResult> {
    max_clique_with_budget(g, DEFAULT_NODE_BUDGET)
}

/// Branch and bound with a greedy-colouring upper bound on bit sets.
///
/// Vertices are relabelled so the last vertex removed by the smallest-last
/// order comes first; colour classes are built greedily in that order and
/// candidates are expanded from the highest colour down, pruning whenever
/// `|clique| + colour <= best`.
pub fn max_clique_with_budget(g: &Graph, budget: u64) -> Result<MaxCliqueResult> {
    if g.n() == 0 {
        return Err(Error::InvalidParameters("maximum clique of an empty vertex set".into()));
    }
    let mut order = degeneracy_order(g);
    order.reverse();
    let r = g.permuted(&order)?;
    let mut search = CliqueSearch {
        g: &r,
        best: Vec::new(),
        stack: Vec::new(),
        nodes: 0,
        budget,
    };
    search.expand(BitSet::full(r.n()))?;
    let mut witness: Vec<usize> = search.best.iter().map(|&i| order[i]).collect();
    witness.sort_unstable();
    Ok(MaxCliqueResult {
        omega: witness.len(),
        witness,
        nodes_explored: search.nodes,
    })
}

struct CliqueSearch<'a> {
    g: &'a Graph,
    best: Vec<usize>,
    stack: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl CliqueSearch<'_> {
    fn expand(&mut self, mut cand: BitSet) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded { budget: self.budget });
        }
        let coloured = self.colour(&cand);
        for &(v, colour) in coloured.iter().rev() {
            if self.stack.len() + colour <= self.best.len() {
                return Ok(());
            }
            self.stack.push(v);
            let mut next = cand.clone();
            next.intersect_with(self.g.row(v));
            if next.is_empty() {
                if self.stack.len() > self.best.len() {
                    self.best = self.stack.clone();
                }
            } else {
                self.expand(next)?;
            }
            self.stack.pop();
            cand.remove(v);
        }
        Ok(())
    }

    /// Greedy sequential colouring; returns vertices with non-decreasing colours.
    fn colour(&self, cand: &BitSet) -> Vec<(usize, usize)> {
        let mut uncoloured = cand.clone();
        let mut out = Vec::with_capacity(cand.count());
        let mut colour = 0;
        while !uncoloured.is_empty() {
            colour += 1;
            let mut q = uncoloured.clone();
            while let Some(v) = q.first() {
                q.remove(v);
                q.difference_with(self.g.row(v));
                uncoloured.remove(v);
                out.push((v, colour));
            }
        }
        out
    }
}

pub fn clique_number(g: &Graph) -> Result<usize> {
    Ok(max_clique(g)?.omega)
}

/// Clique number of `g x h` from the factors: a clique of the tensor product
/// projects to cliques of the same size in both factors (coordinates are
/// pairwise adjacent, hence distinct), and any two k-cliques combine into
/// product k-cliques, so `omega(g x h) = min(omega(g), omega(h))`.
pub fn tensor_clique_number(g: &Graph, h: &Graph, budget: u64) -> Result<usize> {
    let a = max_clique_with_budget(g, budget)?.omega;
    let b = max_clique_with_budget(h, budget)?.omega;
    Ok(a.min(b))
}

pub fn factorial(k: usize) -> BigUint {
    (1..=k).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

/// Checks `Z_k = k! X_k Y_k` by direct enumeration on the tensor product.
pub fn tensor_census_identity_check(g: &Graph, h: &Graph, k: usize) -> Result<bool> {
    if k == 0 {
        return Err(Error::InvalidParameters("k must be at least 1".into()));
    }
    let (t, _) = tensor_product(g, h)?;
    let z = count_k_cliques(&t, k)?.count(k).cloned().expect("evaluated");
    let x = count_k_cliques(g, k)?.count(k).cloned().expect("evaluated");
    let y = count_k_cliques(h, k)?.count(k).cloned().expect("evaluated");
    Ok(z == factorial(k) * x * y)
}

/// Converts a census count to `u64`; counts are bounded by the node budget.
pub fn count_u64(c: &BigUint) -> u64 {
    c.to_u64().expect("clique counts are bounded by the node budget")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counts(c: &CliqueCensus) -> Vec<u64> {
        c.counts().iter().map(count_u64).collect()
    }

    #[test]
    fn k4_census() {
        let c = count_k_cliques(&Graph::complete(4), 4).unwrap();
        assert_eq!(counts(&c), vec![4, 6, 4, 1]);
        assert_eq!(c.largest_nonzero(), 4);
    }

    #[test]
    fn k3_tensor_k3_has_six_triangles() {
        let (t, _) = tensor_product(&Graph::complete(3), &Graph::complete(3)).unwrap();
        let c = count_k_cliques(&t, 3).unwrap();
        assert_eq!(counts(&c)[2], 6);
        assert!(tensor_census_identity_check(&Graph::complete(3), &Graph::complete(3), 3).unwrap());
    }

    #[test]
    fn k4_tensor_k4_triangles() {
        let (t, _) = tensor_product(&Graph::complete(4), &Graph::complete(4)).unwrap();
        let c = count_k_cliques(&t, 3).unwrap();
        assert_eq!(count_u64(c.count(3).unwrap()), 96);
        assert!(tensor_census_identity_check(&Graph::complete(4), &Graph::complete(4), 3).unwrap());
    }

    #[test]
    fn disjoint_edges_no_triangles() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let c = count_k_cliques(&g, 3).unwrap();
        assert_eq!(counts(&c), vec![4, 2, 0]);
        assert_eq!(c.count(4), None);
    }

    #[test]
    fn per_vertex_examples() {
        assert_eq!(per_vertex_clique_counts(&Graph::complete(4), 2).unwrap(), vec![3; 4]);
        assert_eq!(per_vertex_clique_counts(&Graph::star(3), 2).unwrap()[0], 0);
        assert_eq!(per_vertex_clique_counts(&Graph::star(3), 1).unwrap(), vec![3, 1, 1, 1]);
    }

    #[test]
    fn max_clique_examples() {
        for n in 1..8 {
            let r = max_clique(&Graph::complete(n)).unwrap();
            assert_eq!(r.omega, n);
            assert_eq!(r.witness, (0..n).collect::<Vec<_>>());
        }
        let (t, _) = tensor_product(&Graph::complete(3), &Graph::complete(3)).unwrap();
        assert_eq!(max_clique(&t).unwrap().omega, 3);
        assert_eq!(max_clique(&Graph::empty(5)).unwrap().omega, 1);
        assert!(max_clique(&Graph::empty(0)).is_err());
    }

    #[test]
    fn budget_exhaustion_is_an_error() {
        let g = Graph::complete(12);
        let opts = CensusOptions { budget: 100, per_vertex: false };
        assert!(matches!(count_k_cliques_with(&g, 12, &opts), Err(Error::BudgetExceeded { budget: 100 })));
        assert!(matches!(
            max_clique_with_budget(&Graph::cycle(9), 1),
            Err(Error::BudgetExceeded { .. })
        ));
        // exactly enough budget succeeds: K12 has 2^12 - 1 cliques
        let opts = CensusOptions { budget: 4095, per_vertex: false };
        assert_eq!(count_k_cliques_with(&g, 12, &opts).unwrap().nodes_explored(), 4095);
    }

    #[test]
    fn degeneracy_order_is_a_permutation() {
        let g = Graph::star(5);
        let mut o = degeneracy_order(&g);
        // leaves go first, the centre is left with degree 0 at the end
        assert_eq!(o[0], 1);
        o.sort_unstable();
        assert_eq!(o, (0..6).collect::<Vec<_>>());
    }

    #[test]
    fn json_and_csv() {
        let c = count_k_cliques_with(&Graph::complete(3), 3, &CensusOptions { per_vertex: true, ..Default::default() }).unwrap();
        let json = serde_json::to_string(&c.to_json_map()).unwrap();
        assert_eq!(json, r#"{"1":"3","2":"3","3":"1"}"#);
        let mut buf = Vec::new();
        c.write_per_vertex_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("v,k,a_k\n0,1,2\n0,2,1\n"));
    }
}
