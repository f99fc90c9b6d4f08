//! Named fixture graphs used across tests and demos.
//!
//! Each fixture pins a behaviour: a five-cycle with a triangle tab keeps
//! its clique bound tight despite being imperfect, the wheel variant does
//! not, the seven-vertex base is bound-tight until one vertex is
//! replicated, and the fourteen-vertex graph restricts back to the plain
//! five-cycle on its first five vertices.

use crate::graph::Graph;
use crate::rng::SplitMix64;

/// Five-cycle plus a vertex adjacent to two consecutive cycle vertices,
/// forming one triangle. Imperfect (the five-cycle survives induced), yet
/// its clique bound equals its clique number of three.
pub fn c5_plus_triangle() -> Graph {
    Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4), (5, 0), (5, 1)]).unwrap()
}

/// Five-cycle joined to one hub vertex (the five-spoke wheel). Clique
/// number three, but the clique bound moves strictly above it, to one plus
/// the five-cycle bound. Attaching the hub to only three or four cycle
/// vertices leaves the bound tight at three; the full join is what moves it.
pub fn c5_wheel() -> Graph {
    Graph::from_edges(
        6,
        &[
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 4),
            (0, 4),
            (5, 0),
            (5, 1),
            (5, 2),
            (5, 3),
            (5, 4),
        ],
    )
    .unwrap()
}

/// Seven vertices with clique bound equal to the clique number three;
/// replicating vertex one (see `replication_partner`) pushes the bound
/// strictly above three while the clique number stays put.
pub fn replication_base() -> Graph {
    Graph::from_edges(
        7,
        &[
            (0, 1),
            (0, 4),
            (1, 2),
            (2, 3),
            (3, 4),
            (2, 5),
            (3, 5),
            (0, 6),
            (3, 6),
            (4, 6),
        ],
    )
    .unwrap()
}

/// `replication_base` with vertex one replicated (a new true twin added as
/// vertex seven).
pub fn replication_partner() -> Graph {
    replication_base().replicate_vertex(1).unwrap()
}

/// Fourteen vertices: a five-cycle on 0..4 with trees and a four-cycle
/// hung off it. Triangle-free, and the induced subgraph on 0..4 is exactly
/// the five-cycle.
pub fn c5_with_attachments() -> Graph {
    Graph::from_edges(
        14,
        &[
            (0, 1),
            (0, 4),
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 5),
            (4, 6),
            (4, 7),
            (3, 8),
            (8, 9),
            (0, 10),
            (2, 11),
            (10, 11),
            (11, 12),
            (12, 13),
            (10, 13),
        ],
    )
    .unwrap()
}

/// Small named menu for property tests and demos.
pub fn named_small_graphs() -> Vec<(&'static str, Graph)> {
    vec![
        ("k1", Graph::complete(1)),
        ("k5", Graph::complete(5)),
        ("edgeless4", Graph::empty(4)),
        ("path4", Graph::path(4).unwrap()),
        ("path5", Graph::path(5).unwrap()),
        ("cycle5", Graph::cycle(5).unwrap()),
        ("cycle6", Graph::cycle(6).unwrap()),
        ("cycle7", Graph::cycle(7).unwrap()),
        ("cycle7_complement", Graph::cycle(7).unwrap().complement()),
        ("bipartite23", Graph::complete_bipartite(2, 3)),
        ("bipartite33", Graph::complete_bipartite(3, 3)),
        ("paley13", Graph::paley(13).unwrap()),
        ("mycielski4", Graph::mycielski(4).unwrap()),
        ("c13_squared", Graph::cycle_power(13, 2).unwrap()),
        ("c5_plus_triangle", c5_plus_triangle()),
        ("c5_wheel", c5_wheel()),
        ("replication_base", replication_base()),
    ]
}

/// Deterministic random graphs: `count` draws at each size in `sizes`.
pub fn random_corpus(sizes: &[usize], count: usize, p: f64, seed: u64) -> Vec<Graph> {
    let mut rng = SplitMix64::new(seed);
    let mut out = Vec::new();
    for &n in sizes {
        for _ in 0..count {
            out.push(Graph::gnp(n, p, rng.next_u64()).unwrap());
        }
    }
    out
}
