//! Random and deterministic graph models.
//!
//! Erdős–Rényi samples each of the `C(n, 2)` pairs independently. The other
//! random models follow the usual constructions:
//!
//! - random regular: stub pairing with restarts (Steger–Wormald style), on
//!   the complement when `d > (n - 1) / 2`;
//! - Watts–Strogatz: ring lattice with `k / 2` neighbours per side, each
//!   lattice edge rewired with probability `beta`;
//! - Barabási–Albert: seed clique `K_{m+1}`, then each new vertex attaches
//!   to `m` distinct targets chosen proportionally to degree, giving exactly
//!   `m n - C(m + 1, 2)` edges.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::RngSeed;

/// Rewiring probability used when a small-world graph is calibrated to a density.
pub const SMALL_WORLD_REWIRE: f64 = 0.3;

/// Largest deviation from the requested density that calibration accepts.
pub const DENSITY_TOLERANCE: f64 = 0.05;

const REGULAR_MAX_ATTEMPTS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelTag {
    ErdosRenyi,
    RandomRegular,
    WattsStrogatz,
    BarabasiAlbert,
    Complete,
    Path,
    Empty,
}

impl ModelTag {
    pub const RANDOM: [ModelTag; 4] = [
        ModelTag::ErdosRenyi,
        ModelTag::RandomRegular,
        ModelTag::WattsStrogatz,
        ModelTag::BarabasiAlbert,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ModelTag::ErdosRenyi => "erdos-renyi",
            ModelTag::RandomRegular => "random-regular",
            ModelTag::WattsStrogatz => "watts-strogatz",
            ModelTag::BarabasiAlbert => "barabasi-albert",
            ModelTag::Complete => "complete",
            ModelTag::Path => "path",
            ModelTag::Empty => "empty",
        }
    }
}

impl fmt::Display for ModelTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ModelTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "erdos-renyi" | "er" | "gnp" => ModelTag::ErdosRenyi,
            "random-regular" | "regular" | "rr" => ModelTag::RandomRegular,
            "watts-strogatz" | "ws" | "small-world" => ModelTag::WattsStrogatz,
            "barabasi-albert" | "ba" | "preferential-attachment" => ModelTag::BarabasiAlbert,
            "complete" => ModelTag::Complete,
            "path" => ModelTag::Path,
            "empty" => ModelTag::Empty,
            other => return Err(Error::InvalidParameters(format!("unknown model '{other}'"))),
        })
    }
}

/// A graph model together with its size and parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "kebab-case")]
pub enum GeneratorSpec {
    ErdosRenyi { n: usize, p: f64 },
    RandomRegular { n: usize, d: usize },
    WattsStrogatz { n: usize, k: usize, beta: f64 },
    BarabasiAlbert { n: usize, m: usize },
    Complete { n: usize },
    Path { n: usize },
    Empty { n: usize },
}

impl GeneratorSpec {
    pub fn model(&self) -> ModelTag {
        match self {
            GeneratorSpec::ErdosRenyi { .. } => ModelTag::ErdosRenyi,
            GeneratorSpec::RandomRegular { .. } => ModelTag::RandomRegular,
            GeneratorSpec::WattsStrogatz { .. } => ModelTag::WattsStrogatz,
            GeneratorSpec::BarabasiAlbert { .. } => ModelTag::BarabasiAlbert,
            GeneratorSpec::Complete { .. } => ModelTag::Complete,
            GeneratorSpec::Path { .. } => ModelTag::Path,
            GeneratorSpec::Empty { .. } => ModelTag::Empty,
        }
    }

    pub fn n(&self) -> usize {
        match *self {
            GeneratorSpec::ErdosRenyi { n, .. }
            | GeneratorSpec::RandomRegular { n, .. }
            | GeneratorSpec::WattsStrogatz { n, .. }
            | GeneratorSpec::BarabasiAlbert { n, .. }
            | GeneratorSpec::Complete { n }
            | GeneratorSpec::Path { n }
            | GeneratorSpec::Empty { n } => n,
        }
    }

    /// Expected edge density `E|E| / C(n, 2)` of the model.
    pub fn expected_density(&self) -> f64 {
        let n = self.n();
        if n < 2 {
            return 0.0;
        }
        let pairs = (n * (n - 1) / 2) as f64;
        match *self {
            GeneratorSpec::ErdosRenyi { p, .. } => p,
            GeneratorSpec::RandomRegular { d, .. } => d as f64 / (n - 1) as f64,
            GeneratorSpec::WattsStrogatz { k, .. } => k as f64 / (n - 1) as f64,
            GeneratorSpec::BarabasiAlbert { m, .. } => (m * n - m * (m + 1) / 2) as f64 / pairs,
            GeneratorSpec::Complete { .. } => 1.0,
            GeneratorSpec::Path { .. } => (n - 1) as f64 / pairs,
            GeneratorSpec::Empty { .. } => 0.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameters(msg));
        match *self {
            GeneratorSpec::ErdosRenyi { p, .. } if !(0.0..=1.0).contains(&p) => {
                bad(format!("edge probability {p} outside [0, 1]"))
            }
            GeneratorSpec::RandomRegular { n, d } if d >= n.max(1) || (d * n) % 2 == 1 => {
                bad(format!("no {d}-regular graph on {n} vertices"))
            }
            GeneratorSpec::WattsStrogatz { n, k, beta } => {
                if k % 2 == 1 || k >= n.max(1) {
                    bad(format!("ring degree {k} must be even and below n = {n}"))
                } else if !(0.0..=1.0).contains(&beta) {
                    bad(format!("rewire probability {beta} outside [0, 1]"))
                } else {
                    Ok(())
                }
            }
            GeneratorSpec::BarabasiAlbert { n, m } if m < 1 || m >= n => {
                bad(format!("attachment count {m} must satisfy 1 <= m < n = {n}"))
            }
            _ => Ok(()),
        }
    }
}

/// Samples `spec` from the stream identified by `seed`.
pub fn generate(spec: &GeneratorSpec, seed: RngSeed) -> Result<Graph> {
    generate_with_rng(spec, &mut seed.rng())
}

/// Samples `spec` drawing from `rng`; consecutive calls on one stream give
/// independent graphs.
pub fn generate_with_rng<R: Rng + ?Sized>(spec: &GeneratorSpec, rng: &mut R) -> Result<Graph> {
    spec.validate()?;
    let g = match *spec {
        GeneratorSpec::ErdosRenyi { n, p } => erdos_renyi(n, p, rng),
        GeneratorSpec::RandomRegular { n, d } => random_regular(n, d, rng)?,
        GeneratorSpec::WattsStrogatz { n, k, beta } => watts_strogatz(n, k, beta, rng),
        GeneratorSpec::BarabasiAlbert { n, m } => barabasi_albert(n, m, rng),
        GeneratorSpec::Complete { n } => Graph::complete(n),
        GeneratorSpec::Path { n } => Graph::path(n),
        GeneratorSpec::Empty { n } => Graph::empty(n),
    };
    debug_assert!(g.check_invariants());
    Ok(g)
}

fn erdos_renyi<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v).expect("fresh pair");
            }
        }
    }
    g.with_label(format!("G({n},{p})"))
}

fn random_regular<R: Rng + ?Sized>(n: usize, d: usize, rng: &mut R) -> Result<Graph> {
    if d == 0 {
        return Ok(Graph::empty(n));
    }
    // sparse side is far easier to pair
    let complement = 2 * d > n - 1;
    let target = if complement { n - 1 - d } else { d };
    let base = if target == 0 {
        Graph::empty(n)
    } else {
        (0..REGULAR_MAX_ATTEMPTS)
            .find_map(|_| try_pairing(n, target, rng))
            .ok_or_else(|| {
                Error::InvalidParameters(format!(
                    "failed to sample a {d}-regular graph on {n} vertices"
                ))
            })?
    };
    let g = if complement {
        let mut c = Graph::complete(n);
        for (u, v) in base.edges() {
            c.remove_edge(u, v)?;
        }
        c
    } else {
        base
    };
    Ok(g.with_label(format!("R({n},{d})")))
}

/// One pairing attempt; `None` when the leftover stubs cannot be matched.
fn try_pairing<R: Rng + ?Sized>(n: usize, d: usize, rng: &mut R) -> Option<Graph> {
    let mut g = Graph::empty(n);
    let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    while !stubs.is_empty() {
        stubs.shuffle(rng);
        let mut leftover = Vec::new();
        for pair in stubs.chunks_exact(2) {
            let (a, b) = (pair[0], pair[1]);
            if a != b && !g.has_edge(a, b) {
                g.add_edge(a, b).expect("checked");
            } else {
                leftover.extend_from_slice(pair);
            }
        }
        if !leftover.is_empty() && !pairable(&g, &leftover) {
            return None;
        }
        stubs = leftover;
    }
    Some(g)
}

fn pairable(g: &Graph, stubs: &[usize]) -> bool {
    let mut vs = stubs.to_vec();
    vs.sort_unstable();
    vs.dedup();
    vs.iter()
        .enumerate()
        .any(|(i, &a)| vs[i + 1..].iter().any(|&b| !g.has_edge(a, b)))
}

fn watts_strogatz<R: Rng + ?Sized>(n: usize, k: usize, beta: f64, rng: &mut R) -> Graph {
    let mut g = Graph::empty(n);
    for j in 1..=k / 2 {
        for u in 0..n {
            g.add_edge(u, (u + j) % n).expect("ring lattice");
        }
    }
    for j in 1..=k / 2 {
        for u in 0..n {
            let v = (u + j) % n;
            if !rng.gen_bool(beta) {
                continue;
            }
            if g.degree(u).expect("in range") >= n - 1 {
                continue;
            }
            let w = loop {
                let w = rng.gen_range(0..n);
                if w != u && !g.has_edge(u, w) {
                    break w;
                }
            };
            g.remove_edge(u, v).expect("in range");
            g.add_edge(u, w).expect("checked");
        }
    }
    g.with_label(format!("WS({n},{k},{beta})"))
}

fn barabasi_albert<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> Graph {
    let mut g = Graph::empty(n);
    // each vertex appears once per incident edge
    let mut repeated = Vec::with_capacity(2 * m * n);
    for u in 0..=m {
        for v in u + 1..=m {
            g.add_edge(u, v).expect("seed clique");
            repeated.push(u);
            repeated.push(v);
        }
    }
    let mut targets = Vec::with_capacity(m);
    for v in m + 1..n {
        targets.clear();
        while targets.len() < m {
            let t = repeated[rng.gen_range(0..repeated.len())];
            if !targets.contains(&t) {
                targets.push(t);
            }
        }
        for &t in &targets {
            g.add_edge(v, t).expect("new vertex");
            repeated.push(t);
            repeated.push(v);
        }
    }
    g.with_label(format!("BA({n},{m})"))
}

/// Chooses model parameters whose expected edge density is as close as
/// possible to `target_density`.
///
/// Regular degree ties resolve to the smaller `d`; the small-world ring
/// degree is `target * (n - 1)` rounded to the nearest even integer and the
/// rewire probability is [`SMALL_WORLD_REWIRE`].
pub fn density_calibrated_spec(model: ModelTag, n: usize, target_density: f64) -> Result<GeneratorSpec> {
    if !(target_density > 0.0 && target_density < 1.0) {
        return Err(Error::InvalidParameters(format!(
            "target density {target_density} outside (0, 1)"
        )));
    }
    if n < 4 {
        return Err(Error::InvalidParameters(format!(
            "density calibration needs n >= 4, got {n}"
        )));
    }
    let spec = match model {
        ModelTag::ErdosRenyi => GeneratorSpec::ErdosRenyi { n, p: target_density },
        ModelTag::RandomRegular => {
            let d = argmin_by_density((0..n).filter(|d| (d * n).is_multiple_of(2)), target_density, |d| {
                GeneratorSpec::RandomRegular { n, d }
            });
            GeneratorSpec::RandomRegular { n, d }
        }
        ModelTag::WattsStrogatz => {
            let k = round_to_even(target_density * (n - 1) as f64).min(even_below(n));
            GeneratorSpec::WattsStrogatz {
                n,
                k,
                beta: SMALL_WORLD_REWIRE,
            }
        }
        ModelTag::BarabasiAlbert => {
            let m = argmin_by_density(1..n, target_density, |m| GeneratorSpec::BarabasiAlbert { n, m });
            GeneratorSpec::BarabasiAlbert { n, m }
        }
        ModelTag::Complete | ModelTag::Path | ModelTag::Empty => {
            return Err(Error::InvalidParameters(format!(
                "model {model} has no density parameter"
            )))
        }
    };
    let closest = spec.expected_density();
    if (closest - target_density).abs() > DENSITY_TOLERANCE {
        return Err(Error::UnachievableDensity {
            model: model.to_string(),
            n,
            target: target_density,
            closest,
        });
    }
    Ok(spec)
}

/// Smallest candidate minimising `|density - target|`; near-ties keep the
/// earlier candidate.
fn argmin_by_density(
    candidates: impl Iterator<Item = usize>,
    target: f64,
    make: impl Fn(usize) -> GeneratorSpec,
) -> usize {
    let mut best: Option<(usize, f64)> = None;
    for c in candidates {
        let dev = (make(c).expected_density() - target).abs();
        if best.is_none_or(|(_, b)| dev < b - 1e-12) {
            best = Some((c, dev));
        }
    }
    best.map_or(0, |(c, _)| c)
}

fn round_to_even(x: f64) -> usize {
    let lo = 2 * (x / 2.0).floor() as usize;
    if x - lo as f64 <= (lo + 2) as f64 - x {
        lo
    } else {
        lo + 2
    }
}

fn even_below(n: usize) -> usize {
    if n.is_multiple_of(2) {
        n.saturating_sub(2)
    } else {
        n - 1
    }
}
