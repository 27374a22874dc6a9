//! Tensor and modular products of (random) graphs.
//!
//! The crate builds graph products on a dense bit-matrix substrate, counts
//! cliques exactly, evaluates closed-form predictions for Erdős–Rényi
//! factors and runs reproducible Monte Carlo experiments that compare the
//! two.
//!
//! Module map:
//!
//! - [`graph`], [`generators`], [`io`], [`rng`]: the graph substrate, random
//!   models, the edge-list format and seeded generators.
//! - [`products`]: tensor and modular products.
//! - [`cliques`]: k-clique census, per-vertex clique counts, maximum clique.
//! - [`theory`]: exact means, variances, bounds and clique-number thresholds.
//! - [`metrics`]: k-clustering, local efficiency, isolated vertices.
//! - [`mcs`]: maximum common induced subgraph via the modular product.
//! - [`montecarlo`]: replicated experiments and their reports.

pub mod bitset;
pub mod cliques;
pub mod error;
pub mod generators;
pub mod graph;
pub mod io;
pub mod mcs;
pub mod metrics;
pub mod montecarlo;
pub mod products;
pub mod rng;
pub mod theory;

pub use error::{Error, Result};
pub use graph::Graph;
pub use products::{ProductKind, ProductVertexMap};
pub use rng::RngSeed;
