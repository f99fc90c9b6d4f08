//! Exact chromatic number by iterative-deepening backtracking.

use crate::cliques::clique_number;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Default vertex cap for the exact search. The search is exponential; the
/// cap keeps it inside desk-scale budgets and is enforced explicitly.
pub const CHROMATIC_DEFAULT_CAP: usize = 25;

/// chi(g) with the default cap.
pub fn chromatic_number(g: &Graph) -> Result<usize> {
    chromatic_number_with_cap(g, CHROMATIC_DEFAULT_CAP)
}

/// chi(g), refusing inputs above `cap` vertices with a resource-limit error
/// rather than degrading silently.
pub fn chromatic_number_with_cap(g: &Graph, cap: usize) -> Result<usize> {
    let n = g.n();
    if n > cap {
        return Err(Error::limit(format!(
            "exact coloring capped at {cap} vertices, got {n}"
        )));
    }
    if n == 0 {
        return Ok(0);
    }
    if g.m() == 0 {
        return Ok(1);
    }
    // Static order: descending degree, ties by index. Colors are capped at
    // one above the maximum used so far, which kills color-permutation
    // symmetry.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (usize::MAX - g.degree(v), v));
    let lower = clique_number(g);
    let upper = greedy_bound(g, &order);
    for k in lower..upper {
        let mut colors = vec![usize::MAX; n];
        if colorable(g, &order, k, 0, &mut colors, 0) {
            return Ok(k);
        }
    }
    Ok(upper)
}

fn greedy_bound(g: &Graph, order: &[usize]) -> usize {
    let mut colors = vec![usize::MAX; g.n()];
    let mut used = 0usize;
    for &v in order {
        let mut c = 0;
        while g.neighbors(v).iter().any(|&u| colors[u] == c) {
            c += 1;
        }
        colors[v] = c;
        used = used.max(c + 1);
    }
    used
}

fn colorable(
    g: &Graph,
    order: &[usize],
    k: usize,
    idx: usize,
    colors: &mut [usize],
    max_used: usize,
) -> bool {
    if idx == order.len() {
        return true;
    }
    let v = order[idx];
    let limit = k.min(max_used + 1);
    for c in 0..limit {
        if g.neighbors(v).iter().all(|&u| colors[u] != c) {
            colors[v] = c;
            if colorable(g, order, k, idx + 1, colors, max_used.max(c + 1)) {
                return true;
            }
            colors[v] = usize::MAX;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_chromatic_numbers() {
        assert_eq!(chromatic_number(&Graph::complete(5)).unwrap(), 5);
        assert_eq!(chromatic_number(&Graph::empty(4)).unwrap(), 1);
        assert_eq!(chromatic_number(&Graph::cycle(6).unwrap()).unwrap(), 2);
        assert_eq!(chromatic_number(&Graph::cycle(7).unwrap()).unwrap(), 3);
        assert_eq!(chromatic_number(&Graph::complete_bipartite(3, 4)).unwrap(), 2);
        assert_eq!(chromatic_number(&Graph::paley(13).unwrap()).unwrap(), 5);
    }

    #[test]
    fn mycielski_chromatic_ladder() {
        for k in 2..=4usize {
            let g = Graph::mycielski(k).unwrap();
            assert_eq!(clique_number(&g), 2, "omega(M_{k})");
            assert_eq!(chromatic_number(&g).unwrap(), k, "chi(M_{k})");
        }
    }

    #[test]
    fn cap_is_enforced() {
        let g = Graph::empty(30);
        assert!(matches!(
            chromatic_number(&g),
            Err(Error::ResourceLimit(_))
        ));
        assert_eq!(chromatic_number_with_cap(&g, 30).unwrap(), 1);
    }

    #[test]
    fn chi_at_least_omega_random() {
        for seed in 0..20u64 {
            let g = Graph::gnp(10, 0.5, seed).unwrap();
            let chi = chromatic_number(&g).unwrap();
            assert!(chi >= clique_number(&g));
            assert!(chi <= g.max_degree() + 1);
        }
    }
}
