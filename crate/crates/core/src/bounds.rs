//! Clique-number bounds and sum-of-squares certification.
//!
//! For a graph G and k > 0, the attached quartic form has coefficient
//! matrix -k A + (k-1) J. Its nonnegativity threshold is the clique number;
//! its sum-of-squares threshold is the semidefinite clique bound computed
//! here by `theta_prime`. The cheaper thresholds `gamma` (scaled diagonal
//! dominance) and `tau` (plain diagonal dominance) sandwich from above:
//! omega <= theta_prime <= theta and omega <= theta_prime <= gamma <= tau.

use crate::cliques::{clique_number, maximum_clique};
use crate::coloring::{chromatic_number_with_cap, CHROMATIC_DEFAULT_CAP};
use crate::error::{Error, Result};
use crate::graph::{Graph, CANONICAL_CODE_MAX_N};
use crate::linalg::{
    self, eigen_symmetric, is_dd, is_psd, refine_doubly_nonnegative, SymmetricMatrix,
};
use crate::perfect::{find_odd_hole_or_antihole, next_combination, ImperfectionWitness};
use crate::quartic::hessian_of_squared_form;
use crate::rng::SplitMix64;
use crate::sdp::{
    psd_plus_nonneg_membership, solve, ConeMembership, SdpProblem, SdpSolution, SolveOptions,
    SolveStatus,
};
use serde::{Deserialize, Serialize};
use std::collections::HashSet;

/// Largest instance the semidefinite solver accepts.
pub const SDP_MAX_N: usize = 200;
/// Exhaustive induced-subgraph sweep cap.
pub const SOS_PERFECT_FULL_CAP: usize = 12;
/// Cap for the short-cycle-accelerated sweep.
pub const SOS_PERFECT_ACCELERATED_CAP: usize = 20;
/// Cap for the imperfection-measure scan.
pub const AIMP_MAX_N: usize = 10;
/// Interval width at which certified bisections stop.
const BISECTION_WIDTH: f64 = 1e-6;

/// Decision margin: claims are only made when the relevant quantity clears
/// its threshold by 50 tolerances, scaled to the magnitude compared.
pub fn decision_margin(tol: f64, scale: f64) -> f64 {
    50.0 * tol * (1.0 + scale.abs())
}

/// The coefficient matrix -k A + (k-1) J as floats: k-1 on the diagonal
/// and nonadjacent pairs, -1 on edges.
pub fn clique_matrix(g: &Graph, k: f64) -> SymmetricMatrix {
    SymmetricMatrix::from_fn(g.n(), |i, j| {
        if i != j && g.has_edge(i, j) {
            -1.0
        } else {
            k - 1.0
        }
    })
}

fn nonedge_pattern(g: &Graph) -> Vec<(usize, usize)> {
    let n = g.n();
    let mut out = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if !g.has_edge(i, j) {
                out.push((i, j));
            }
        }
    }
    out
}

fn check_sdp_size(g: &Graph) -> Result<()> {
    if g.n() > SDP_MAX_N {
        return Err(Error::limit(format!(
            "semidefinite solve capped at {SDP_MAX_N} vertices, graph has {}",
            g.n()
        )));
    }
    Ok(())
}

/// Semidefinite clique bound with entrywise nonnegativity: the maximum of
/// <J, X> over psd nonnegative X with unit trace supported on edges. This
/// is the sum-of-squares threshold of the graph's quartic form.
pub fn theta_prime(g: &Graph, opts: &SolveOptions) -> Result<SdpSolution> {
    check_sdp_size(g)?;
    let p = SdpProblem::new(g.n(), nonedge_pattern(g), true)?;
    solve(&p, opts)
}

/// Same program without the nonnegativity constraint (a weaker, larger
/// bound, still at most the chromatic number).
pub fn theta(g: &Graph, opts: &SolveOptions) -> Result<SdpSolution> {
    check_sdp_size(g)?;
    let p = SdpProblem::new(g.n(), nonedge_pattern(g), false)?;
    solve(&p, opts)
}

/// Scalar sum-of-squares threshold (the `theta_prime` objective).
pub fn sos_threshold(g: &Graph, opts: &SolveOptions) -> Result<f64> {
    Ok(theta_prime(g, opts)?.objective)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SosVerdict {
    Sos,
    NotSos,
    Inconclusive,
}

/// Reads the verdict at level k off an already-computed threshold bracket,
/// with the margin policy: no claim inside 50 scaled tolerances.
pub fn sos_verdict_from_solution(sol: &SdpSolution, k: f64, tol: f64) -> SosVerdict {
    let margin = decision_margin(tol, k);
    // dual_bound >= threshold always, so clearing it certifies sos.
    if k >= sol.dual_bound + margin {
        return SosVerdict::Sos;
    }
    if sol.status == SolveStatus::Optimal && k <= sol.objective - margin {
        return SosVerdict::NotSos;
    }
    SosVerdict::Inconclusive
}

/// Decides whether the form at level k is a sum of squares by comparing k
/// against the certified threshold bracket.
pub fn sos_by_threshold(g: &Graph, k: f64, opts: &SolveOptions) -> Result<SosVerdict> {
    if !(k.is_finite() && k > 0.0) {
        return Err(Error::invalid("level k must be positive"));
    }
    let sol = theta_prime(g, opts)?;
    Ok(sos_verdict_from_solution(&sol, k, opts.tol))
}

/// Decides sos-ness at level k through the matrix cone directly: the form
/// is a sum of squares exactly when its coefficient matrix splits into a
/// psd part plus an entrywise nonnegative part. Certificates are explicit
/// either way.
pub fn sos_by_membership(g: &Graph, k: f64, opts: &SolveOptions) -> Result<ConeMembership> {
    if !(k.is_finite() && k > 0.0) {
        return Err(Error::invalid("level k must be positive"));
    }
    check_sdp_size(g)?;
    psd_plus_nonneg_membership(&clique_matrix(g, k), opts)
}

/// Membership at escalating tolerances; None when the point sits on the
/// cone boundary within the tightest tolerance tried.
fn classify_membership(m: &SymmetricMatrix, opts: &SolveOptions) -> Result<Option<bool>> {
    for factor in [1.0, 0.1, 0.01] {
        let o = SolveOptions { tol: opts.tol * factor, max_iterations: opts.max_iterations };
        match psd_plus_nonneg_membership(m, &o)? {
            ConeMembership::Member { .. } => return Ok(Some(true)),
            ConeMembership::NotMember { .. } => return Ok(Some(false)),
            ConeMembership::Inconclusive { .. } => {}
        }
    }
    Ok(None)
}

/// Certificate-driven bisection for a one-parameter matrix family that is
/// inside the cone on the `member_high` side. Both endpoints must already
/// be classified by the caller. A persistently unclassifiable midpoint is
/// itself the boundary to within the tightest tolerance, so it is returned.
fn bisect_membership(
    matrix_at: impl Fn(f64) -> SymmetricMatrix,
    mut lo: f64,
    mut hi: f64,
    member_high: bool,
    opts: &SolveOptions,
) -> Result<f64> {
    while hi - lo > BISECTION_WIDTH {
        let mid = 0.5 * (lo + hi);
        match classify_membership(&matrix_at(mid), opts)? {
            Some(is_member) => {
                if is_member == member_high {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            None => return Ok(mid),
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Locates the sum-of-squares threshold in k by bisecting cone membership
/// between the clique number (outside, unless the bound is tight) and the
/// degree bound (always inside). Cross-validates `theta_prime` through an
/// entirely different decision path.
pub fn sos_threshold_bisection(g: &Graph, opts: &SolveOptions) -> Result<f64> {
    check_sdp_size(g)?;
    let omega = clique_number(g) as f64;
    let tau_k = (g.max_degree() + 1) as f64;
    match classify_membership(&clique_matrix(g, omega), opts)? {
        // Tight at the clique number (or on the boundary within tolerance).
        Some(true) | None => return Ok(omega),
        Some(false) => {}
    }
    match classify_membership(&clique_matrix(g, tau_k), opts)? {
        Some(true) => {}
        None => return Ok(tau_k),
        Some(false) => {
            return Err(Error::numeric(
                "degree-bound form certified outside the cone; this contradicts \
                 the diagonal-dominance split",
            ))
        }
    }
    bisect_membership(|k| clique_matrix(g, k), omega, tau_k, true, opts)
}

/// Largest gamma with (form - gamma ||x||^4) still a sum of squares, from
/// the closed form omega / threshold - 1. Always in (-1, 0].
pub fn p_sos_value(g: &Graph, opts: &SolveOptions) -> Result<f64> {
    let omega = clique_number(g) as f64;
    let threshold = sos_threshold(g, opts)?;
    Ok(omega / threshold - 1.0)
}

/// The same quantity found by bisecting cone membership of M - gamma J,
/// independent of the closed form.
pub fn p_sos_value_bisection(g: &Graph, opts: &SolveOptions) -> Result<f64> {
    check_sdp_size(g)?;
    let omega = clique_number(g) as f64;
    let m = clique_matrix(g, omega);
    let ones = SymmetricMatrix::all_ones(g.n());
    let matrix_at = |gamma: f64| m.add_scaled(&ones, -gamma);
    // At gamma = -1 every entry of M + J is nonnegative, so membership is
    // unconditional; at gamma = 1/4 it fails because the value at a maximum
    // clique indicator is already negative.
    let (lo, hi) = (-1.0, 0.25);
    match classify_membership(&matrix_at(lo), opts)? {
        Some(true) => {}
        _ => return Err(Error::numeric("lower endpoint failed to certify")),
    }
    match classify_membership(&matrix_at(hi), opts)? {
        Some(false) => {}
        _ => return Err(Error::numeric("upper endpoint failed to certify")),
    }
    bisect_membership(matrix_at, lo, hi, false, opts)
}

// ----- exhaustive certification over induced subgraphs -----

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SosPerfectMethod {
    /// Every induced subgraph on five or more vertices checked by SDP.
    FullSweep,
    /// Odd-cycle screen locates a candidate subgraph; the SDP confirms it.
    SpgtAccelerated,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SosPerfectWitness {
    /// Vertices of an induced subgraph whose form is not a sum of squares
    /// at its own clique number.
    pub vertices: Vec<usize>,
    pub omega: usize,
    /// Its certified clique bound (strictly above omega).
    pub threshold: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SosPerfectReport {
    pub sos_perfect: bool,
    pub method: SosPerfectMethod,
    pub witness: Option<SosPerfectWitness>,
    pub subgraphs_checked: usize,
}

/// Decides whether every induced subgraph's form is a sum of squares at its
/// clique number. Below `SOS_PERFECT_FULL_CAP` vertices this sweeps all
/// induced subgraphs (graphs on four or fewer vertices always satisfy the
/// bound with equality, so sizes below five are skipped; isomorphic
/// subgraphs are deduplicated). Larger graphs up to the accelerated cap are
/// screened for odd holes and antiholes first, and a hit is then confirmed
/// by the SDP rather than trusted.
pub fn is_sos_perfect(g: &Graph, opts: &SolveOptions) -> Result<SosPerfectReport> {
    let n = g.n();
    if n <= SOS_PERFECT_FULL_CAP {
        return sos_perfect_full_sweep(g, opts);
    }
    if n <= SOS_PERFECT_ACCELERATED_CAP {
        return sos_perfect_accelerated(g, opts);
    }
    Err(Error::limit(format!(
        "sos-perfection decision capped at {SOS_PERFECT_ACCELERATED_CAP} vertices, graph has {n}"
    )))
}

/// Checks one induced subgraph: Ok(None) when its threshold matches its
/// clique number within margin, Ok(Some(report)) when it is certified to
/// exceed it.
fn check_subgraph(h: &Graph, opts: &SolveOptions) -> Result<Option<(usize, f64)>> {
    let omega = clique_number(h);
    let target = omega as f64;
    for factor in [1.0, 0.1] {
        let o = SolveOptions { tol: opts.tol * factor, max_iterations: opts.max_iterations };
        let sol = theta_prime(h, &o)?;
        let margin = decision_margin(o.tol, target);
        if sol.dual_bound <= target + margin {
            return Ok(None);
        }
        if sol.status == SolveStatus::Optimal && sol.objective >= target + margin {
            return Ok(Some((omega, sol.objective)));
        }
    }
    Err(Error::numeric(
        "clique bound of a subgraph neither matched nor separated from its clique number",
    ))
}

fn sos_perfect_full_sweep(g: &Graph, opts: &SolveOptions) -> Result<SosPerfectReport> {
    let n = g.n();
    let mut checked = 0usize;
    let mut seen = HashSet::new();
    for size in 5..=n {
        let mut subset: Vec<usize> = (0..size).collect();
        loop {
            let h = g.induced_subgraph(&subset)?;
            let fresh = if size <= CANONICAL_CODE_MAX_N {
                seen.insert(h.canonical_code()?)
            } else {
                true
            };
            if fresh {
                checked += 1;
                if let Some((omega, threshold)) = check_subgraph(&h, opts)? {
                    return Ok(SosPerfectReport {
                        sos_perfect: false,
                        method: SosPerfectMethod::FullSweep,
                        witness: Some(SosPerfectWitness {
                            vertices: subset.clone(),
                            omega,
                            threshold,
                        }),
                        subgraphs_checked: checked,
                    });
                }
            }
            if !next_combination(&mut subset, n) {
                break;
            }
        }
    }
    Ok(SosPerfectReport {
        sos_perfect: true,
        method: SosPerfectMethod::FullSweep,
        witness: None,
        subgraphs_checked: checked,
    })
}

fn sos_perfect_accelerated(g: &Graph, opts: &SolveOptions) -> Result<SosPerfectReport> {
    match find_odd_hole_or_antihole(g)? {
        Some(w) => {
            let vertices = match &w {
                ImperfectionWitness::OddHole(v) | ImperfectionWitness::OddAntihole(v) => v.clone(),
                ImperfectionWitness::OmegaChiGap { vertices, .. } => vertices.clone(),
            };
            let h = g.induced_subgraph(&vertices)?;
            match check_subgraph(&h, opts)? {
                Some((omega, threshold)) => Ok(SosPerfectReport {
                    sos_perfect: false,
                    method: SosPerfectMethod::SpgtAccelerated,
                    witness: Some(SosPerfectWitness { vertices, omega, threshold }),
                    subgraphs_checked: 1,
                }),
                None => Err(Error::numeric(
                    "odd-cycle screen and clique-bound SDP disagree on a subgraph",
                )),
            }
        }
        None => Ok(SosPerfectReport {
            sos_perfect: true,
            method: SosPerfectMethod::SpgtAccelerated,
            witness: None,
            subgraphs_checked: 0,
        }),
    }
}

/// Averaged imperfection measure: the largest value of
/// 1 - p_sos(H) / (omega(H) - 1) over induced subgraphs H with an edge.
/// Equals one exactly when the graph is sos-perfect.
pub fn aimp(g: &Graph, opts: &SolveOptions) -> Result<f64> {
    let n = g.n();
    if n > AIMP_MAX_N {
        return Err(Error::limit(format!(
            "imperfection measure capped at {AIMP_MAX_N} vertices, graph has {n}"
        )));
    }
    // Any subgraph with an edge and at most four vertices contributes
    // exactly one, so that is the baseline; only sizes from five up can
    // deviate. Edgeless graphs have no eligible subgraph and keep the
    // baseline by convention.
    let mut best = 1.0f64;
    let mut seen = HashSet::new();
    for size in 5..=n {
        let mut subset: Vec<usize> = (0..size).collect();
        loop {
            let h = g.induced_subgraph(&subset)?;
            let fresh = if size <= CANONICAL_CODE_MAX_N {
                seen.insert(h.canonical_code()?)
            } else {
                true
            };
            if fresh {
                let omega = clique_number(&h);
                if omega >= 2 {
                    let value = p_sos_value(&h, opts)?;
                    best = best.max(1.0 - value / (omega as f64 - 1.0));
                }
            }
            if !next_combination(&mut subset, n) {
                break;
            }
        }
    }
    Ok(best)
}

// ----- diagonal-dominance thresholds -----

/// Degree threshold: the form at k = max degree + 1 splits into a
/// diagonally dominant part plus a nonnegative part.
pub fn tau(g: &Graph) -> usize {
    g.max_degree() + 1
}

/// Explicit split at the degree threshold: the dominant part carries the
/// degree diagonal and the edge entries, the nonnegative part carries the
/// nonadjacent pairs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DominanceCertificate {
    pub k: f64,
    pub dominant_part: SymmetricMatrix,
    pub nonneg_part: SymmetricMatrix,
}

impl DominanceCertificate {
    /// Recomputes everything: dominance, nonnegativity, and the exact sum.
    pub fn verify(&self, g: &Graph) -> bool {
        if self.dominant_part.n() != g.n() || self.nonneg_part.n() != g.n() {
            return false;
        }
        let m = clique_matrix(g, self.k);
        is_dd(&self.dominant_part, 1e-12)
            && self.nonneg_part.min_entry() >= 0.0
            && self.dominant_part.add_scaled(&self.nonneg_part, 1.0).max_abs_diff(&m) <= 1e-12
    }
}

pub fn tau_certificate(g: &Graph) -> DominanceCertificate {
    let n = g.n();
    let delta = g.max_degree() as f64;
    let dominant_part = SymmetricMatrix::from_fn(n, |i, j| {
        if i == j {
            delta
        } else if g.has_edge(i, j) {
            -1.0
        } else {
            0.0
        }
    });
    let nonneg_part = SymmetricMatrix::from_fn(n, |i, j| {
        if i != j && !g.has_edge(i, j) {
            delta
        } else {
            0.0
        }
    });
    DominanceCertificate { k: delta + 1.0, dominant_part, nonneg_part }
}

/// Spectral threshold: largest adjacency eigenvalue plus one. The split at
/// this level uses a positive diagonal rescaling built from one Perron
/// vector per connected component.
pub fn gamma(g: &Graph) -> Result<f64> {
    let eig = eigen_symmetric(g.adjacency())?;
    Ok(eig.max_value() + 1.0)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScaledDominanceCertificate {
    pub k: f64,
    /// Positive diagonal scaling d with D ((k-1) I - A) D diagonally
    /// dominant.
    pub scaling: Vec<f64>,
    pub lambda_max: f64,
}

impl ScaledDominanceCertificate {
    pub fn verify(&self, g: &Graph) -> bool {
        let n = g.n();
        if self.scaling.len() != n || self.scaling.iter().any(|&d| !(d > 0.0)) {
            return false;
        }
        let a = g.adjacency();
        let scaled = SymmetricMatrix::from_fn(n, |i, j| {
            let base = if i == j { self.k - 1.0 } else { -a.get(i, j) };
            self.scaling[i] * self.scaling[j] * base
        });
        // Rows on the extremal component hold with equality, so allow a
        // scaled slack.
        is_dd(&scaled, 1e-9 * (1.0 + scaled.max_abs()))
    }
}

pub fn gamma_certificate(g: &Graph) -> Result<ScaledDominanceCertificate> {
    let n = g.n();
    let a = g.adjacency();
    let mut scaling = vec![0.0; n];
    let mut lambda_max = 0.0f64;
    for comp in g.connected_components() {
        if comp.len() == 1 {
            scaling[comp[0]] = 1.0;
            continue;
        }
        let sub = a.submatrix(&comp);
        let eig = eigen_symmetric(&sub)?;
        lambda_max = lambda_max.max(eig.max_value());
        let v = eig.eigenvector(comp.len() - 1);
        let mut max_entry = 0.0f64;
        for x in v.iter() {
            max_entry = max_entry.max(x.abs());
        }
        for (local, &vertex) in comp.iter().enumerate() {
            let entry = v[local].abs() / max_entry;
            if entry <= 1e-9 {
                return Err(Error::numeric(
                    "component eigenvector has a vanishing entry; scaling would degenerate",
                ));
            }
            scaling[vertex] = entry;
        }
    }
    Ok(ScaledDominanceCertificate { k: lambda_max + 1.0, scaling, lambda_max })
}

// ----- the diagonal-only threshold -----

/// Whether any level makes the form's matrix itself psd. Finite exactly for
/// complete multipartite graphs, where the level is the number of parts
/// (= clique number); otherwise some triple carrying exactly one edge
/// obstructs every level.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum RhoValue {
    Finite { value: usize },
    Infinite { obstruction: (usize, usize, usize) },
}

pub fn rho(g: &Graph) -> Result<RhoValue> {
    if let Some(parts) = g.complete_multipartite_parts() {
        let value = parts.len();
        let m = clique_matrix(g, value as f64);
        if !is_psd(&m, linalg::default_psd_tol(&m))? {
            return Err(Error::numeric(
                "matrix at the part count failed the psd check on a complete multipartite graph",
            ));
        }
        return Ok(RhoValue::Finite { value });
    }
    let n = g.n();
    for a in 0..n {
        for b in (a + 1)..n {
            for c in (b + 1)..n {
                let edges = g.has_edge(a, b) as u8 + g.has_edge(a, c) as u8 + g.has_edge(b, c) as u8;
                if edges == 1 {
                    return Ok(RhoValue::Infinite { obstruction: (a, b, c) });
                }
            }
        }
    }
    Err(Error::numeric(
        "graph is neither complete multipartite nor carries a one-edge triple",
    ))
}

// ----- separating hyperplanes for imperfect graphs -----

/// A doubly nonnegative matrix X, supported on edges with unit trace, whose
/// inner product with the graph's matrix at the clique number is negative:
/// linear functional <., X> separates that matrix from the psd + nonneg
/// cone.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SeparatingHyperplane {
    pub x: SymmetricMatrix,
    pub omega: usize,
    /// The clique-bound objective this X achieves (strictly above omega).
    pub bound_value: f64,
    /// <X, M_omega> recomputed at the refined X; negative.
    pub separation: f64,
}

impl SeparatingHyperplane {
    /// Recomputes cone residuals and the separation from the stored X.
    pub fn verify(&self, g: &Graph, tol: f64) -> Result<bool> {
        if self.x.n() != g.n() {
            return Ok(false);
        }
        let eig = eigen_symmetric(&self.x)?;
        if eig.min_value() < -tol || self.x.min_entry() < -tol {
            return Ok(false);
        }
        if (self.x.trace() - 1.0).abs() > 1e-3 {
            return Ok(false);
        }
        for (i, j) in nonedge_pattern(g) {
            if self.x.get(i, j).abs() > 1e-3 {
                return Ok(false);
            }
        }
        let m = clique_matrix(g, clique_number(g) as f64);
        Ok(m.inner(&self.x) < 0.0)
    }
}

/// Builds the hyperplane from the clique-bound optimizer, hardened into the
/// doubly nonnegative cone so that downstream inner products against
/// sampled cone members stay above tiny negative noise.
pub fn separating_hyperplane(g: &Graph, opts: &SolveOptions) -> Result<SeparatingHyperplane> {
    let omega = clique_number(g);
    let sol = theta_prime(g, opts)?;
    let margin = decision_margin(opts.tol, omega as f64);
    if sol.status != SolveStatus::Optimal || sol.objective < omega as f64 + margin {
        return Err(Error::numeric(format!(
            "no separation: clique bound {:.9} does not exceed the clique number {} by the \
             decision margin",
            sol.objective, omega
        )));
    }
    let refined = refine_doubly_nonnegative(&sol.x, 1e-12, 2000)?;
    let x = refined.scale(1.0 / refined.trace());
    let m = clique_matrix(g, omega as f64);
    let separation = m.inner(&x);
    if separation >= 0.0 {
        return Err(Error::numeric("separation vanished after hardening"));
    }
    Ok(SeparatingHyperplane { x, omega, bound_value: sol.objective, separation })
}

/// Smallest inner product of `x` against `samples` random members of the
/// psd + nonneg cone (each sampled as B^T B normalized to unit trace plus a
/// nonnegative part normalized to unit sum). For a certified hyperplane
/// this stays above tiny negative noise while the graph matrix itself sits
/// strictly below zero.
pub fn cone_battery_minimum(x: &SymmetricMatrix, seed: u64, samples: usize) -> f64 {
    let n = x.n();
    let mut rng = SplitMix64::new(seed);
    let mut worst = f64::INFINITY;
    for _ in 0..samples {
        let b: Vec<f64> = (0..n * n).map(|_| rng.next_signed()).collect();
        let mut p = SymmetricMatrix::from_fn(n, |i, j| {
            (0..n).map(|k| b[k * n + i] * b[k * n + j]).sum()
        });
        let tr = p.trace();
        if tr > 1e-12 {
            p = p.scale(1.0 / tr);
        }
        let mut ndata = vec![0.0; n * n];
        for i in 0..n {
            for j in i..n {
                let v = rng.next_f64();
                ndata[i * n + j] = v;
                ndata[j * n + i] = v;
            }
        }
        let mut nmat = SymmetricMatrix::new(n, ndata).expect("exactly symmetric by construction");
        let total = nmat.sum_entries();
        if total > 1e-12 {
            nmat = nmat.scale(1.0 / total);
        }
        let inner = x.inner(&p) + x.inner(&nmat);
        worst = worst.min(inner);
    }
    worst
}

// ----- simplex quadratic cross-check of the clique number -----

/// Minimum of x^T (J - A) x over the probability simplex, which equals the
/// reciprocal of the clique number. Solved by projected gradient descent
/// from several starts, one of which is the uniform weighting of a maximum
/// clique (an exact minimizer, so the reported value never exceeds the
/// truth).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SimplexMinimum {
    pub value: f64,
    pub point: Vec<f64>,
    pub starts: usize,
}

pub fn motzkin_straus_minimum(g: &Graph, seed: u64, restarts: usize) -> SimplexMinimum {
    let n = g.n();
    let q = {
        let a = g.adjacency();
        SymmetricMatrix::from_fn(n, |i, j| 1.0 - a.get(i, j))
    };
    let step = 1.0 / (2.0 * n as f64);
    let descend = |mut x: Vec<f64>| -> (f64, Vec<f64>) {
        for _ in 0..5000 {
            let grad = q.matvec(&x);
            let prev = x.clone();
            for i in 0..n {
                x[i] -= 2.0 * step * grad[i];
            }
            project_onto_simplex(&mut x);
            let moved: f64 = x
                .iter()
                .zip(&prev)
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt();
            if moved <= 1e-13 {
                break;
            }
        }
        let qx = q.matvec(&x);
        let value: f64 = x.iter().zip(&qx).map(|(a, b)| a * b).sum();
        (value, x)
    };

    let mut rng = SplitMix64::new(seed);
    let mut starts = Vec::new();
    starts.push(vec![1.0 / n as f64; n]);
    let clique = maximum_clique(g);
    let mut on_clique = vec![0.0; n];
    for &v in &clique {
        on_clique[v] = 1.0 / clique.len() as f64;
    }
    starts.push(on_clique);
    for _ in 0..restarts {
        // Exponential weights normalize to a point spread over the simplex.
        let mut x: Vec<f64> = (0..n).map(|_| -(1.0 - rng.next_f64()).ln()).collect();
        let total: f64 = x.iter().sum();
        for v in x.iter_mut() {
            *v /= total;
        }
        starts.push(x);
    }
    let total_starts = starts.len();
    let mut best_value = f64::INFINITY;
    let mut best_point = vec![0.0; n];
    for s in starts {
        let (value, point) = descend(s);
        if value < best_value {
            best_value = value;
            best_point = point;
        }
    }
    SimplexMinimum { value: best_value, point: best_point, starts: total_starts }
}

/// Euclidean projection onto the probability simplex.
fn project_onto_simplex(x: &mut [f64]) {
    let mut sorted = x.to_vec();
    sorted.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let mut cumulative = 0.0;
    let mut theta = 0.0;
    for (j, &u) in sorted.iter().enumerate() {
        cumulative += u;
        let candidate = (cumulative - 1.0) / (j + 1) as f64;
        if u - candidate > 0.0 {
            theta = candidate;
        }
    }
    for v in x.iter_mut() {
        *v = (*v - theta).max(0.0);
    }
}

// ----- convexity obstruction -----

/// A point where the Hessian of the shifted form has a negative diagonal
/// entry: at the indicator of one endpoint of an edge, the other endpoint's
/// diagonal entry is 4 (gamma - 1), negative whenever gamma < 1, for every
/// level k. No witness is produced at gamma >= 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HessianWitness {
    pub edge: (usize, usize),
    pub point: Vec<f64>,
    /// Index of the negative diagonal entry.
    pub row: usize,
    pub entry_value: f64,
}

impl HessianWitness {
    /// Recomputes the Hessian entry from scratch and confirms it is
    /// negative and psd-breaking.
    pub fn verify(&self, g: &Graph, k: f64, gamma: f64) -> Result<bool> {
        let m = clique_matrix(g, k).add_scaled(&SymmetricMatrix::all_ones(g.n()), gamma);
        let h = hessian_of_squared_form(&m, &self.point)?;
        let entry = h.get(self.row, self.row);
        if (entry - self.entry_value).abs() > 1e-12 * (1.0 + entry.abs()) {
            return Ok(false);
        }
        Ok(entry < 0.0 && !is_psd(&h, 0.0)?)
    }
}

pub fn hessian_witness(g: &Graph, k: f64, gamma: f64) -> Result<Option<HessianWitness>> {
    if !(k.is_finite() && gamma.is_finite()) {
        return Err(Error::invalid("level and shift must be finite"));
    }
    if gamma >= 1.0 {
        return Ok(None);
    }
    let edges = g.edges();
    let Some(&(i, j)) = edges.first() else {
        return Ok(None);
    };
    let mut point = vec![0.0; g.n()];
    point[j] = 1.0;
    Ok(Some(HessianWitness {
        edge: (i, j),
        point,
        row: i,
        entry_value: 4.0 * (gamma - 1.0),
    }))
}

// ----- assembled ladder -----

/// All bounds for one graph: omega <= theta_prime <= theta and
/// omega <= theta_prime <= gamma <= tau; theta is at most the chromatic
/// number when that is available.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundLadder {
    pub omega: usize,
    pub theta_prime: f64,
    pub theta: f64,
    pub gamma: f64,
    pub tau: usize,
    pub chromatic: Option<usize>,
}

pub fn bound_ladder(g: &Graph, opts: &SolveOptions) -> Result<BoundLadder> {
    let omega = clique_number(g);
    let tp = theta_prime(g, opts)?;
    let th = theta(g, opts)?;
    let gam = gamma(g)?;
    let chromatic = match chromatic_number_with_cap(g, CHROMATIC_DEFAULT_CAP) {
        Ok(c) => Some(c),
        Err(Error::ResourceLimit(_)) => None,
        Err(e) => return Err(e),
    };
    Ok(BoundLadder {
        omega,
        theta_prime: tp.objective,
        theta: th.objective,
        gamma: gam,
        tau: tau(g),
        chromatic,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts() -> SolveOptions {
        SolveOptions::default()
    }

    #[test]
    fn clique_bound_frozen_values() {
        for (g, want) in [
            (Graph::complete(4), 4.0),
            (Graph::complete(1), 1.0),
            (Graph::empty(4), 1.0),
            (Graph::complete_bipartite(2, 3), 2.0),
            (Graph::cycle(5).unwrap(), 5.0f64.sqrt()),
        ] {
            let sol = theta_prime(&g, &opts()).unwrap();
            assert!(
                (sol.objective - want).abs() < 1e-5,
                "graph n={} got {} want {}",
                g.n(),
                sol.objective,
                want
            );
        }
    }

    #[test]
    fn theta_dominates_theta_prime() {
        for g in [
            Graph::cycle(5).unwrap(),
            Graph::cycle(7).unwrap(),
            Graph::gnp(8, 0.5, 11).unwrap(),
        ] {
            let tp = theta_prime(&g, &opts()).unwrap().objective;
            let th = theta(&g, &opts()).unwrap().objective;
            assert!(th >= tp - 1e-6, "theta {th} below theta_prime {tp}");
        }
    }

    #[test]
    fn threshold_verdicts_respect_margin() {
        let g = Graph::cycle(5).unwrap();
        assert_eq!(sos_by_threshold(&g, 2.0, &opts()).unwrap(), SosVerdict::NotSos);
        assert_eq!(sos_by_threshold(&g, 3.0, &opts()).unwrap(), SosVerdict::Sos);
        assert_eq!(sos_by_threshold(&g, 2.24, &opts()).unwrap(), SosVerdict::Sos);
        let boundary = 5.0f64.sqrt() + 1e-7;
        assert_eq!(
            sos_by_threshold(&g, boundary, &opts()).unwrap(),
            SosVerdict::Inconclusive
        );
        assert!(sos_by_threshold(&g, -1.0, &opts()).is_err());
    }

    #[test]
    fn membership_certificates_are_explicit() {
        let g = Graph::cycle(5).unwrap();
        match sos_by_membership(&g, 3.0, &opts()).unwrap() {
            ConeMembership::Member { psd_part, nonneg_part, split_residual } => {
                let m = clique_matrix(&g, 3.0);
                let sum = psd_part.add_scaled(&nonneg_part, 1.0);
                assert!(sum.max_abs_diff(&m) <= 1e-8);
                assert!(split_residual <= 1e-8);
                assert!(is_psd(&psd_part, 1e-9).unwrap());
                assert!(nonneg_part.min_entry() >= 0.0);
            }
            other => panic!("expected member at k=3, got {other:?}"),
        }
        match sos_by_membership(&g, 2.0, &opts()).unwrap() {
            ConeMembership::NotMember { witness, inner_product } => {
                assert!(inner_product < -1e-9);
                assert!(witness.min_entry() >= -1e-15);
                assert!(eigen_symmetric(&witness).unwrap().min_value() >= -1e-12);
            }
            other => panic!("expected non-member at k=2, got {other:?}"),
        }
    }

    #[test]
    fn threshold_bisection_agrees_with_sdp() {
        let c5 = Graph::cycle(5).unwrap();
        let flip = sos_threshold_bisection(&c5, &opts()).unwrap();
        assert!(
            (flip - 5.0f64.sqrt()).abs() <= 1e-5,
            "flip {flip} vs sqrt5 {}",
            5.0f64.sqrt()
        );
        let k4 = Graph::complete(4);
        assert_eq!(sos_threshold_bisection(&k4, &opts()).unwrap(), 4.0);
    }

    #[test]
    fn p_sos_routes_agree() {
        let c5 = Graph::cycle(5).unwrap();
        let closed = p_sos_value(&c5, &opts()).unwrap();
        let want = 2.0 / 5.0f64.sqrt() - 1.0;
        assert!((closed - want).abs() < 1e-6);
        let bisected = p_sos_value_bisection(&c5, &opts()).unwrap();
        assert!((bisected - closed).abs() <= 1e-5, "bisected {bisected} closed {closed}");

        let k4 = Graph::complete(4);
        let closed = p_sos_value(&k4, &opts()).unwrap();
        assert!(closed.abs() < 1e-6);
        let bisected = p_sos_value_bisection(&k4, &opts()).unwrap();
        assert!(bisected.abs() <= 1e-5);
    }

    #[test]
    fn sweep_finds_the_odd_hole() {
        let c5 = Graph::cycle(5).unwrap();
        let report = is_sos_perfect(&c5, &opts()).unwrap();
        assert!(!report.sos_perfect);
        assert_eq!(report.method, SosPerfectMethod::FullSweep);
        let w = report.witness.unwrap();
        assert_eq!(w.vertices, vec![0, 1, 2, 3, 4]);
        assert_eq!(w.omega, 2);
        assert!((w.threshold - 5.0f64.sqrt()).abs() < 1e-5);

        let p5 = Graph::path(5).unwrap();
        let report = is_sos_perfect(&p5, &opts()).unwrap();
        assert!(report.sos_perfect);
        assert!(report.subgraphs_checked > 0);
    }

    #[test]
    fn accelerated_sweep_confirms_by_sdp() {
        // 13 vertices forces the screened path: C13 has a short odd hole
        // cover? No: C13 is itself the only odd hole, found by the screen.
        let c13 = Graph::cycle(13).unwrap();
        let report = is_sos_perfect(&c13, &opts()).unwrap();
        assert!(!report.sos_perfect);
        assert_eq!(report.method, SosPerfectMethod::SpgtAccelerated);
        let w = report.witness.unwrap();
        assert_eq!(w.vertices.len(), 13);
        assert!(w.threshold > 2.0);

        let big_perfect = Graph::complete_bipartite(7, 7);
        let report = is_sos_perfect(&big_perfect, &opts()).unwrap();
        assert!(report.sos_perfect);
        assert_eq!(report.method, SosPerfectMethod::SpgtAccelerated);

        assert!(is_sos_perfect(&Graph::empty(21), &opts()).is_err());
    }

    #[test]
    fn imperfection_measure_values() {
        let c5 = Graph::cycle(5).unwrap();
        let value = aimp(&c5, &opts()).unwrap();
        let want = 2.0 - 2.0 / 5.0f64.sqrt();
        assert!((value - want).abs() < 1e-4, "aimp {value} want {want}");

        let k4 = Graph::complete(4);
        assert!((aimp(&k4, &opts()).unwrap() - 1.0).abs() < 1e-4);
        let p4 = Graph::path(4).unwrap();
        assert!((aimp(&p4, &opts()).unwrap() - 1.0).abs() < 1e-4);
        assert!(aimp(&Graph::empty(11), &opts()).is_err());
    }

    #[test]
    fn degree_split_verifies() {
        for g in [
            Graph::cycle(5).unwrap(),
            Graph::mycielski(4).unwrap(),
            Graph::empty(3),
            Graph::gnp(9, 0.5, 3).unwrap(),
        ] {
            let cert = tau_certificate(&g);
            assert_eq!(cert.k, (g.max_degree() + 1) as f64);
            assert!(cert.verify(&g));
        }
        let c5 = Graph::cycle(5).unwrap();
        assert_eq!(tau(&c5), 3);
        let mut cert = tau_certificate(&c5);
        cert.k = 2.0;
        assert!(!cert.verify(&c5));
    }

    #[test]
    fn spectral_split_verifies() {
        let c5 = Graph::cycle(5).unwrap();
        assert!((gamma(&c5).unwrap() - 3.0).abs() < 1e-9);
        let cert = gamma_certificate(&c5).unwrap();
        assert!((cert.k - 3.0).abs() < 1e-9);
        assert!(cert.verify(&c5));

        let k4 = Graph::complete(4);
        assert!((gamma(&k4).unwrap() - 4.0).abs() < 1e-9);
        assert!(gamma_certificate(&k4).unwrap().verify(&k4));

        // Disconnected: a five-cycle plus a triangle, both with top
        // eigenvalue two.
        let g = Graph::from_edges(
            8,
            &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4), (5, 6), (6, 7), (5, 7)],
        )
        .unwrap();
        let cert = gamma_certificate(&g).unwrap();
        assert!((cert.k - 3.0).abs() < 1e-9);
        assert!(cert.verify(&g));

        // Sandwich on random graphs.
        for seed in 0..5 {
            let g = Graph::gnp(8, 0.5, seed).unwrap();
            let omega = clique_number(&g) as f64;
            let gam = gamma(&g).unwrap();
            assert!(omega <= gam + 1e-9);
            assert!(gam <= tau(&g) as f64 + 1e-9);
        }
    }

    #[test]
    fn diagonal_threshold_dichotomy() {
        match rho(&Graph::complete_bipartite(2, 3)).unwrap() {
            RhoValue::Finite { value } => assert_eq!(value, 2),
            other => panic!("expected finite, got {other:?}"),
        }
        match rho(&Graph::complete(4)).unwrap() {
            RhoValue::Finite { value } => assert_eq!(value, 4),
            other => panic!("expected finite, got {other:?}"),
        }
        match rho(&Graph::cycle(5).unwrap()).unwrap() {
            RhoValue::Infinite { obstruction } => {
                assert_eq!(obstruction, (0, 1, 3));
                // The obstruction blocks every level, sampled on a grid.
                let g = Graph::cycle(5).unwrap();
                let triple = [0, 1, 3];
                for k in [1.0, 1.5, 2.0, 5.0, 100.0] {
                    let sub = clique_matrix(&g, k).submatrix(&triple);
                    assert!(!is_psd(&sub, 1e-12).unwrap(), "k={k} unexpectedly psd");
                }
            }
            other => panic!("expected infinite, got {other:?}"),
        }
    }

    #[test]
    fn hyperplane_separates_and_survives_battery() {
        let c5 = Graph::cycle(5).unwrap();
        let hp = separating_hyperplane(&c5, &opts()).unwrap();
        assert!((hp.separation - (2.0 - 5.0f64.sqrt())).abs() < 1e-3);
        assert!(hp.verify(&c5, 1e-9).unwrap());
        let battery = cone_battery_minimum(&hp.x, 20240915, 1000);
        assert!(battery >= -1e-8, "battery dips to {battery}");
        // Perfect graphs admit no hyperplane.
        assert!(separating_hyperplane(&Graph::path(4).unwrap(), &opts()).is_err());
    }

    #[test]
    fn simplex_minimum_hits_clique_reciprocal() {
        for (g, omega) in [
            (Graph::cycle(5).unwrap(), 2.0),
            (Graph::complete(4), 4.0),
            (Graph::paley(13).unwrap(), 3.0),
        ] {
            let ms = motzkin_straus_minimum(&g, 77, 8);
            assert!(
                (ms.value - 1.0 / omega).abs() <= 1e-6,
                "value {} vs 1/{omega}",
                ms.value
            );
            let total: f64 = ms.point.iter().sum();
            assert!((total - 1.0).abs() < 1e-9);
            assert!(ms.point.iter().all(|&v| v >= 0.0));
        }
    }

    #[test]
    fn hessian_witness_behaviour() {
        let c5 = Graph::cycle(5).unwrap();
        let w = hessian_witness(&c5, 2.0, 0.0).unwrap().unwrap();
        assert_eq!(w.edge, (0, 1));
        assert_eq!(w.row, 0);
        assert!((w.entry_value + 4.0).abs() < 1e-12);
        assert!(w.verify(&c5, 2.0, 0.0).unwrap());
        // Any level shows the same obstruction.
        let w9 = hessian_witness(&c5, 9.0, 0.5).unwrap().unwrap();
        assert!((w9.entry_value + 2.0).abs() < 1e-12);
        assert!(w9.verify(&c5, 9.0, 0.5).unwrap());

        assert!(hessian_witness(&c5, 2.0, 1.0).unwrap().is_none());
        assert!(hessian_witness(&Graph::empty(3), 2.0, 0.0).unwrap().is_none());

        // At shift one the matrix is the level times (I + complement
        // adjacency), entry for entry.
        let k = 3.5;
        let m = clique_matrix(&c5, k).add_scaled(&SymmetricMatrix::all_ones(5), 1.0);
        let co = c5.complement();
        let target = SymmetricMatrix::from_fn(5, |i, j| {
            if i == j {
                k
            } else if co.has_edge(i, j) {
                k
            } else {
                0.0
            }
        });
        assert!(m.max_abs_diff(&target) <= 1e-12);
    }

    #[test]
    fn ladder_is_ordered() {
        for g in [
            Graph::cycle(5).unwrap(),
            Graph::cycle(7).unwrap(),
            Graph::mycielski(4).unwrap(),
            Graph::gnp(10, 0.4, 5).unwrap(),
        ] {
            let l = bound_ladder(&g, &opts()).unwrap();
            let slack = 1e-5;
            assert!(l.omega as f64 <= l.theta_prime + slack);
            assert!(l.theta_prime <= l.theta + slack);
            assert!(l.theta_prime <= l.gamma + slack);
            assert!(l.gamma <= l.tau as f64 + 1e-9);
            if let Some(chi) = l.chromatic {
                assert!(l.omega <= chi);
                assert!(l.theta <= chi as f64 + slack);
            }
        }
    }

    #[test]
    fn sdp_size_cap_is_enforced() {
        let g = Graph::empty(SDP_MAX_N + 1);
        assert!(matches!(theta_prime(&g, &opts()), Err(Error::ResourceLimit(_))));
    }
}
