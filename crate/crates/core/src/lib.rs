//! Graph analysis through quartic forms: for a graph G and level k the form
//! p_{G,k}(x) = (k-1) sum_i x_i^4 + 2 (k-1) sum_{ij not in E} x_i^2 x_j^2
//! - 2 sum_{ij in E} x_i^2 x_j^2 is nonnegative exactly when k reaches the
//! clique number, and a sum of squares exactly when k reaches a semidefinite
//! relaxation of it. This crate computes both thresholds with certified
//! brackets, decides sos-ness through the matrix cone S+ + N, produces
//! checkable certificates in both directions, and classifies graphs by
//! whether the two thresholds agree on every induced subgraph.

pub mod bitset;
pub mod bounds;
pub mod cliques;
pub mod coloring;
pub mod corpus;
pub mod error;
pub mod graph;
pub mod linalg;
pub mod perfect;
pub mod quartic;
pub mod report;
pub mod rng;
pub mod sdp;

pub use error::{Error, Result};
pub use graph::Graph;
