//! Maximum common induced subgraph, solved as a maximum clique of the
//! modular product, plus an exhaustive oracle for small instances.

use serde::{Deserialize, Serialize};

use crate::cliques::max_clique_with_budget;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::products::modular_product;

/// Largest factor size the brute-force oracle accepts without a size cap.
pub const BRUTE_FORCE_MAX_N: usize = 8;
/// Size caps up to this value are accepted for any factor size.
pub const BRUTE_FORCE_SMALL_CAP: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum McsMethod {
    ModularClique,
    BruteForce,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct McsResult {
    pub size: usize,
    /// `(u, v)` pairs, sorted by `u`.
    pub mapping: Vec<(usize, usize)>,
    pub method: McsMethod,
}

/// True when `mapping` is injective on both sides and preserves adjacency and
/// non-adjacency between every two mapped pairs.
pub fn is_common_induced(g: &Graph, h: &Graph, mapping: &[(usize, usize)]) -> bool {
    for (i, &(u, v)) in mapping.iter().enumerate() {
        if u >= g.n() || v >= h.n() {
            return false;
        }
        for &(u2, v2) in &mapping[..i] {
            if u == u2 || v == v2 || g.has_edge(u, u2) != h.has_edge(v, v2) {
                return false;
            }
        }
    }
    true
}

pub fn mcs_via_modular_clique(g: &Graph, h: &Graph, budget: u64) -> Result<McsResult> {
    let (m, map) = modular_product(g, h)?;
    let clique = max_clique_with_budget(&m, budget)?;
    let mut mapping: Vec<(usize, usize)> = clique.witness.iter().map(|&i| map.pair(i)).collect();
    mapping.sort_unstable();
    debug_assert!(is_common_induced(g, h, &mapping));
    Ok(McsResult {
        size: mapping.len(),
        mapping,
        method: McsMethod::ModularClique,
    })
}

/// Tries every vertex subset of `g`, largest first, against every injective
/// map into `h`. Sizes above `size_cap` are not tried, so with a cap below the
/// true optimum the result is the cap.
pub fn mcs_brute_force(g: &Graph, h: &Graph, size_cap: usize) -> Result<McsResult> {
    if size_cap == 0 {
        return Err(Error::InvalidParameters("size cap must be at least 1".into()));
    }
    if g.n().max(h.n()) > BRUTE_FORCE_MAX_N && size_cap > BRUTE_FORCE_SMALL_CAP {
        return Err(Error::InstanceTooLarge(format!(
            "brute-force MCS on {} and {} vertices with size cap {size_cap}",
            g.n(),
            h.n()
        )));
    }
    let top = g.n().min(h.n()).min(size_cap);
    for s in (1..=top).rev() {
        let mut subset: Vec<usize> = (0..s).collect();
        loop {
            let mut image = Vec::with_capacity(s);
            let mut used = vec![false; h.n()];
            if assign(g, h, &subset, &mut image, &mut used) {
                return Ok(McsResult {
                    size: s,
                    mapping: subset.iter().copied().zip(image).collect(),
                    method: McsMethod::BruteForce,
                });
            }
            if !next_combination(&mut subset, g.n()) {
                break;
            }
        }
    }
    Ok(McsResult {
        size: 0,
        mapping: Vec::new(),
        method: McsMethod::BruteForce,
    })
}

fn assign(g: &Graph, h: &Graph, subset: &[usize], image: &mut Vec<usize>, used: &mut [bool]) -> bool {
    let i = image.len();
    if i == subset.len() {
        return true;
    }
    let u = subset[i];
    for v in 0..h.n() {
        if used[v] {
            continue;
        }
        let fits = (0..i).all(|j| g.has_edge(u, subset[j]) == h.has_edge(v, image[j]));
        if !fits {
            continue;
        }
        used[v] = true;
        image.push(v);
        if assign(g, h, subset, image, used) {
            return true;
        }
        image.pop();
        used[v] = false;
    }
    false
}

/// Advances to the next k-subset of `0..n` in lexicographic order.
fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
