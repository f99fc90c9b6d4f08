//! Perfectness testing: odd-hole/antihole search and the definitional
//! omega-versus-chi scan over induced subgraphs.

use crate::cliques::clique_number;
use crate::coloring::chromatic_number_with_cap;
use crate::error::{Error, Result};
use crate::graph::Graph;
use serde::{Deserialize, Serialize};

/// Default vertex cap for the induced odd-cycle search.
pub const HOLE_SEARCH_DEFAULT_CAP: usize = 20;

/// Default vertex cap for the definitional scan (enumerates all subsets).
pub const DEFINITION_SCAN_DEFAULT_CAP: usize = 12;

/// A witness destroying perfectness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum ImperfectionWitness {
    /// Induced odd cycle of length >= 5, listed in cycle order.
    OddHole(Vec<usize>),
    /// Induced odd cycle of length >= 5 in the complement, cycle order.
    OddAntihole(Vec<usize>),
    /// Induced subgraph with chi > omega.
    OmegaChiGap {
        vertices: Vec<usize>,
        omega: usize,
        chi: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PerfectnessMethod {
    /// Search for odd holes and antiholes (strong characterization).
    SpgtScan,
    /// Check omega = chi on every induced subgraph (definition).
    DefinitionScan,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerfectnessVerdict {
    pub perfect: bool,
    pub method: PerfectnessMethod,
    pub witness: Option<ImperfectionWitness>,
}

impl PerfectnessVerdict {
    /// Re-verifies the stored witness against the graph: holes/antiholes are
    /// rechecked as induced odd cycles, gaps by recomputing omega and chi.
    pub fn verify(&self, g: &Graph) -> Result<bool> {
        match &self.witness {
            None => Ok(self.perfect),
            Some(ImperfectionWitness::OddHole(cycle)) => Ok(!self.perfect && is_induced_odd_cycle(g, cycle)),
            Some(ImperfectionWitness::OddAntihole(cycle)) => {
                Ok(!self.perfect && is_induced_odd_cycle(&g.complement(), cycle))
            }
            Some(ImperfectionWitness::OmegaChiGap { vertices, omega, chi }) => {
                let h = g.induced_subgraph(vertices)?;
                Ok(!self.perfect
                    && clique_number(&h) == *omega
                    && chromatic_number_with_cap(&h, h.n())? == *chi
                    && chi > omega)
            }
        }
    }
}

/// True iff `cycle` lists an induced cycle of odd length >= 5 in g.
pub fn is_induced_odd_cycle(g: &Graph, cycle: &[usize]) -> bool {
    let k = cycle.len();
    if k < 5 || k % 2 == 0 {
        return false;
    }
    let mut seen = std::collections::HashSet::new();
    if !cycle.iter().all(|&v| v < g.n() && seen.insert(v)) {
        return false;
    }
    for i in 0..k {
        for j in (i + 1)..k {
            let consecutive = j == i + 1 || (i == 0 && j == k - 1);
            if g.has_edge(cycle[i], cycle[j]) != consecutive {
                return false;
            }
        }
    }
    true
}

/// Finds an induced odd cycle of length >= 5 in g, or in its complement if g
/// has none. Depth-first with ascending candidates, so the returned witness
/// is the first in lexicographic path order. Capped at
/// `HOLE_SEARCH_DEFAULT_CAP` vertices.
pub fn find_odd_hole_or_antihole(g: &Graph) -> Result<Option<ImperfectionWitness>> {
    find_odd_hole_or_antihole_with_cap(g, HOLE_SEARCH_DEFAULT_CAP)
}

pub fn find_odd_hole_or_antihole_with_cap(
    g: &Graph,
    cap: usize,
) -> Result<Option<ImperfectionWitness>> {
    if g.n() > cap {
        return Err(Error::limit(format!(
            "odd-hole search capped at {cap} vertices, got {}",
            g.n()
        )));
    }
    if let Some(cycle) = find_odd_hole(g) {
        return Ok(Some(ImperfectionWitness::OddHole(cycle)));
    }
    if let Some(cycle) = find_odd_hole(&g.complement()) {
        return Ok(Some(ImperfectionWitness::OddAntihole(cycle)));
    }
    Ok(None)
}

/// First induced odd cycle (length >= 5) in depth-first path order: start
/// vertices ascend, every extension scans candidates ascending, and only
/// vertices above the start are used so each cycle is rooted at its minimum.
fn find_odd_hole(g: &Graph) -> Option<Vec<usize>> {
    let n = g.n();
    let mut path = Vec::new();
    let mut in_path = vec![false; n];
    for start in 0..n {
        path.push(start);
        in_path[start] = true;
        if extend_hole(g, start, &mut path, &mut in_path) {
            return Some(path);
        }
        in_path[start] = false;
        path.pop();
    }
    None
}

fn extend_hole(g: &Graph, start: usize, path: &mut Vec<usize>, in_path: &mut [bool]) -> bool {
    let last = *path.last().unwrap();
    let len = path.len();
    for v in (start + 1)..g.n() {
        if in_path[v] || !g.has_edge(v, last) {
            continue;
        }
        // Induced-path invariant: v may touch only the path's last vertex
        // among the interior; adjacency to the start closes a cycle instead.
        if len >= 2 && path[1..len - 1].iter().any(|&u| g.has_edge(v, u)) {
            continue;
        }
        if len >= 2 && g.has_edge(v, start) {
            if len + 1 >= 5 && (len + 1) % 2 == 1 {
                path.push(v);
                return true;
            }
            // Chord to the start: v cannot extend the induced path.
            continue;
        }
        path.push(v);
        in_path[v] = true;
        if extend_hole(g, start, path, in_path) {
            return true;
        }
        in_path[v] = false;
        path.pop();
    }
    false
}

/// Decides perfectness. `SpgtScan` (cap 20 vertices) relies on the odd-hole
/// characterization; `DefinitionScan` (cap 12) checks omega = chi on every
/// induced subgraph in size-then-lexicographic order and reports the first
/// failing subset.
pub fn is_perfect(g: &Graph, method: PerfectnessMethod) -> Result<PerfectnessVerdict> {
    match method {
        PerfectnessMethod::SpgtScan => {
            let witness = find_odd_hole_or_antihole(g)?;
            Ok(PerfectnessVerdict {
                perfect: witness.is_none(),
                method,
                witness,
            })
        }
        PerfectnessMethod::DefinitionScan => {
            let n = g.n();
            if n > DEFINITION_SCAN_DEFAULT_CAP {
                return Err(Error::limit(format!(
                    "definition scan capped at {DEFINITION_SCAN_DEFAULT_CAP} vertices, got {n}"
                )));
            }
            for size in 2..=n {
                let mut subset: Vec<usize> = (0..size).collect();
                loop {
                    let h = g.induced_subgraph(&subset)?;
                    let omega = clique_number(&h);
                    let chi = chromatic_number_with_cap(&h, h.n())?;
                    if chi != omega {
                        return Ok(PerfectnessVerdict {
                            perfect: false,
                            method,
                            witness: Some(ImperfectionWitness::OmegaChiGap {
                                vertices: subset,
                                omega,
                                chi,
                            }),
                        });
                    }
                    if !next_combination(&mut subset, n) {
                        break;
                    }
                }
            }
            Ok(PerfectnessVerdict { perfect: true, method, witness: None })
        }
    }
}

/// Advances `subset` to the next k-combination of 0..n in lexicographic
/// order; false when exhausted.
pub(crate) fn next_combination(subset: &mut [usize], n: usize) -> bool {
    let k = subset.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if subset[i] < n - (k - i) {
            subset[i] += 1;
            for j in (i + 1)..k {
                subset[j] = subset[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c5_yields_the_hole_itself() {
        let g = Graph::cycle(5).unwrap();
        let w = find_odd_hole_or_antihole(&g).unwrap().unwrap();
        assert_eq!(w, ImperfectionWitness::OddHole(vec![0, 1, 2, 3, 4]));
    }

    #[test]
    fn c7_complement_yields_antihole() {
        let g = Graph::odd_antihole(3).unwrap();
        match find_odd_hole_or_antihole(&g).unwrap().unwrap() {
            ImperfectionWitness::OddAntihole(cycle) => {
                assert!(is_induced_odd_cycle(&g.complement(), &cycle));
                assert_eq!(cycle.len(), 7);
            }
            w => panic!("expected antihole, got {w:?}"),
        }
    }

    #[test]
    fn bipartite_graphs_have_no_witness() {
        for g in [
            Graph::complete_bipartite(3, 4),
            Graph::cycle(8).unwrap(),
            Graph::path(7).unwrap(),
        ] {
            assert!(find_odd_hole_or_antihole(&g).unwrap().is_none());
        }
    }

    #[test]
    fn even_holes_do_not_count() {
        // C6 has an induced C6 but no odd hole; its complement (prism-like)
        // must also be clean since C6 is perfect.
        let g = Graph::cycle(6).unwrap();
        assert!(find_odd_hole_or_antihole(&g).unwrap().is_none());
    }

    #[test]
    fn embedded_hole_is_found_lexicographically_first() {
        // C5 on {0..4} plus a dangling path.
        let g = Graph::from_edges(
            8,
            &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4), (4, 5), (5, 6), (6, 7)],
        )
        .unwrap();
        let w = find_odd_hole_or_antihole(&g).unwrap().unwrap();
        assert_eq!(w, ImperfectionWitness::OddHole(vec![0, 1, 2, 3, 4]));
    }

    #[test]
    fn methods_agree_on_small_corpus() {
        for seed in 0..40u64 {
            let n = 4 + (seed as usize % 5);
            let g = Graph::gnp(n, 0.45, 1000 + seed).unwrap();
            let a = is_perfect(&g, PerfectnessMethod::SpgtScan).unwrap();
            let b = is_perfect(&g, PerfectnessMethod::DefinitionScan).unwrap();
            assert_eq!(a.perfect, b.perfect, "seed {seed}");
            assert!(a.verify(&g).unwrap());
            assert!(b.verify(&g).unwrap());
        }
    }

    #[test]
    fn definition_scan_reports_minimum_bad_subset() {
        let g = Graph::cycle(5).unwrap();
        let v = is_perfect(&g, PerfectnessMethod::DefinitionScan).unwrap();
        assert!(!v.perfect);
        match v.witness.unwrap() {
            ImperfectionWitness::OmegaChiGap { vertices, omega, chi } => {
                assert_eq!(vertices, vec![0, 1, 2, 3, 4]);
                assert_eq!((omega, chi), (2, 3));
            }
            w => panic!("unexpected witness {w:?}"),
        }
    }

    #[test]
    fn caps_are_enforced() {
        let g = Graph::empty(21);
        assert!(matches!(
            find_odd_hole_or_antihole(&g),
            Err(Error::ResourceLimit(_))
        ));
        let h = Graph::empty(13);
        assert!(matches!(
            is_perfect(&h, PerfectnessMethod::DefinitionScan),
            Err(Error::ResourceLimit(_))
        ));
    }

    #[test]
    fn perfect_families() {
        for g in [
            Graph::complete(7),
            Graph::complete_bipartite(3, 5),
            Graph::path(9).unwrap(),
            Graph::cycle(8).unwrap(),
            Graph::complete_multipartite(&[2, 3, 2]).unwrap(),
        ] {
            let v = is_perfect(&g, PerfectnessMethod::SpgtScan).unwrap();
            assert!(v.perfect, "expected perfect");
        }
        for g in [
            Graph::cycle(5).unwrap(),
            Graph::cycle(7).unwrap(),
            Graph::odd_antihole(3).unwrap(),
            Graph::mycielski(4).unwrap(),
        ] {
            let v = is_perfect(&g, PerfectnessMethod::SpgtScan).unwrap();
            assert!(!v.perfect, "expected imperfect");
            assert!(v.verify(&g).unwrap());
        }
    }
}
