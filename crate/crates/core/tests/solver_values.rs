//! Solver values on the named fixtures, checked against closed forms where
//! one exists and against frozen bracketed values elsewhere. Every value
//! here was cross-checked by the solver's certified dual bound before being
//! frozen.

use sosperfect::bounds::{theta, theta_prime};
use sosperfect::cliques::clique_number;
use sosperfect::corpus;
use sosperfect::sdp::{SolveOptions, SolveStatus};
use sosperfect::Graph;

fn opts() -> SolveOptions {
    SolveOptions::default()
}

fn bound(g: &Graph) -> f64 {
    let sol = theta_prime(g, &opts()).unwrap();
    assert_eq!(sol.status, SolveStatus::Optimal);
    sol.objective
}

#[test]
fn paley_bound_is_sqrt_q() {
    for q in [13usize, 17] {
        let g = Graph::paley(q).unwrap();
        let got = bound(&g);
        let want = (q as f64).sqrt();
        assert!((got - want).abs() < 2e-5, "paley {q}: got {got}, want {want}");
    }
}

#[test]
fn triangle_tab_keeps_the_bound_tight() {
    let g = corpus::c5_plus_triangle();
    assert_eq!(clique_number(&g), 3);
    assert!((bound(&g) - 3.0).abs() < 2e-5);
}

#[test]
fn wheel_hub_moves_the_bound() {
    // The wheel is the five-cycle joined with one vertex, so its bound is
    // one plus the five-cycle bound.
    let g = corpus::c5_wheel();
    assert_eq!(clique_number(&g), 3);
    assert!((bound(&g) - (1.0 + 5.0f64.sqrt())).abs() < 2e-5);
}

#[test]
fn replication_moves_the_bound() {
    let base = corpus::replication_base();
    assert!((bound(&base) - 3.0).abs() < 2e-5);
    // Replicating vertex one keeps the clique number at three but pushes
    // the bound strictly above it. Frozen solver value.
    let twin = corpus::replication_partner();
    assert_eq!(clique_number(&twin), 3);
    let got = bound(&twin);
    assert!((got - 3.1965574).abs() < 5e-5, "got {got}");
}

#[test]
fn join_adds_bounds() {
    let g = Graph::cycle(5).unwrap().join(&Graph::complete(2));
    assert_eq!(clique_number(&g), 4);
    assert!((bound(&g) - (5.0f64.sqrt() + 2.0)).abs() < 2e-5);
}

#[test]
fn strong_product_multiplies_bounds() {
    let g = Graph::cycle(5).unwrap().strong_product(&Graph::complete(2));
    assert_eq!(clique_number(&g), 4);
    assert!((bound(&g) - 2.0 * 5.0f64.sqrt()).abs() < 2e-5);
}

#[test]
fn attachments_do_not_hide_the_cycle() {
    // Triangle-free, so the clique number is two, and the bound stays
    // strictly above it because the five-cycle survives induced.
    let g = corpus::c5_with_attachments();
    assert_eq!(clique_number(&g), 2);
    let got = bound(&g);
    assert!(got > 2.2, "got {got}");
}

#[test]
fn nonnegativity_strengthening_is_strict_somewhere() {
    // On the distance-4 Hamming graph over 6-bit words the strengthened
    // bound is exactly the clique number while the plain bound sits a full
    // four thirds higher.
    let g = Graph::hamming_distance(6, 4).unwrap();
    let tp = theta_prime(&g, &opts()).unwrap().objective;
    let th = theta(&g, &opts()).unwrap().objective;
    assert!((tp - 4.0).abs() < 1e-4, "theta_prime {tp}");
    assert!((th - 16.0 / 3.0).abs() < 1e-4, "theta {th}");
}
