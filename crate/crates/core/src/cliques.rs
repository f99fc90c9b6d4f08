//! Exact clique computations: clique number by branch and bound, exhaustive
//! maximum-clique enumeration, and the partitionable-graph certificate built
//! from the clique incidence matrix.

use crate::bitset::Bits;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::{eigen_symmetric, SymmetricMatrix};
use num::{BigInt, One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// One maximum clique, deterministic: the first maximum found by the
/// branch-and-bound with ascending-index candidate order.
pub fn maximum_clique(g: &Graph) -> Vec<usize> {
    let n = g.n();
    if n == 0 {
        return Vec::new();
    }
    let mut search = CliqueSearch { g, best: Vec::new(), current: Vec::new() };
    search.expand(&Bits::full(n));
    search.best
}

/// omega(g). Exact; practical up to n of a few dozen on dense inputs (no
/// hard cap, desk-scale inputs assumed).
pub fn clique_number(g: &Graph) -> usize {
    maximum_clique(g).len()
}

/// alpha(g) = omega of the complement.
pub fn independence_number(g: &Graph) -> usize {
    clique_number(&g.complement())
}

struct CliqueSearch<'a> {
    g: &'a Graph,
    best: Vec<usize>,
    current: Vec<usize>,
}

impl CliqueSearch<'_> {
    /// Branch and bound with a greedy-coloring bound. Candidates are colored
    /// in ascending index order and processed from the highest color down;
    /// `current.len() + color` bounds any clique extending through that
    /// vertex, so the first failure prunes the rest of the level.
    fn expand(&mut self, cand: &Bits) {
        if cand.is_empty() {
            if self.current.len() > self.best.len() {
                self.best = self.current.clone();
            }
            return;
        }
        let n = self.g.n();
        let verts = cand.to_vec();
        let mut classes: Vec<Bits> = Vec::new();
        let mut order: Vec<(usize, usize)> = Vec::with_capacity(verts.len());
        for &v in &verts {
            let mut c = 0;
            loop {
                if c == classes.len() {
                    classes.push(Bits::empty(n));
                }
                let mut clash = classes[c].clone();
                clash.intersect_words(self.g.row_words(v));
                if clash.is_empty() {
                    classes[c].insert(v);
                    order.push((c + 1, v));
                    break;
                }
                c += 1;
            }
        }
        // Stable by construction: colors ascend within the pass only when a
        // later vertex needs a new class, so sort by color keeps index order
        // inside each class.
        order.sort_by_key(|&(c, v)| (c, v));
        let mut remaining = cand.clone();
        for &(color, v) in order.iter().rev() {
            if self.current.len() + color <= self.best.len() {
                return;
            }
            remaining.remove(v);
            let mut next = remaining.clone();
            next.intersect_words(self.g.row_words(v));
            self.current.push(v);
            self.expand(&next);
            self.current.pop();
        }
    }
}

/// All maximum cliques as a 0/1 incidence structure; rows sorted
/// lexicographically by vertex list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaxCliqueMatrix {
    pub n: usize,
    pub omega: usize,
    pub cliques: Vec<Vec<usize>>,
}

impl MaxCliqueMatrix {
    /// Row r as a 0/1 vector over the vertices.
    pub fn row(&self, r: usize) -> Vec<u8> {
        let mut out = vec![0u8; self.n];
        for &v in &self.cliques[r] {
            out[v] = 1;
        }
        out
    }

    /// Number of maximum cliques containing each vertex (column sums).
    pub fn vertex_counts(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.n];
        for c in &self.cliques {
            for &v in c {
                counts[v] += 1;
            }
        }
        counts
    }

    /// C^T C as a dense symmetric matrix: entry (i, j) counts the maximum
    /// cliques containing both i and j.
    pub fn ctc(&self) -> SymmetricMatrix {
        let mut m = SymmetricMatrix::zeros(self.n);
        for c in &self.cliques {
            for (ai, &a) in c.iter().enumerate() {
                for &b in &c[ai..] {
                    let v = m.get(a, b) + 1.0;
                    m.set(a, b, v);
                }
            }
        }
        m
    }

    /// Structural self-check: every row is a clique of size omega, rows are
    /// distinct and sorted.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        for (r, c) in self.cliques.iter().enumerate() {
            if c.len() != self.omega {
                return Err(Error::invalid(format!("row {r} has size {}", c.len())));
            }
            for (ai, &a) in c.iter().enumerate() {
                for &b in &c[ai + 1..] {
                    if !g.has_edge(a, b) {
                        return Err(Error::invalid(format!("row {r} is not a clique")));
                    }
                }
            }
            if r > 0 && self.cliques[r - 1] >= *c {
                return Err(Error::invalid("rows not in strict lexicographic order"));
            }
        }
        Ok(())
    }
}

/// Enumerates every maximum clique. Rows come out lexicographically sorted
/// because the search extends cliques in ascending vertex order.
pub fn maximum_cliques(g: &Graph) -> MaxCliqueMatrix {
    let n = g.n();
    let omega = clique_number(g);
    let mut out = Vec::new();
    if n == 0 || omega == 0 {
        return MaxCliqueMatrix { n, omega, cliques: out };
    }
    let mut current = Vec::new();
    enumerate_exact(g, omega, &Bits::full(n), &mut current, &mut out);
    MaxCliqueMatrix { n, omega, cliques: out }
}

fn enumerate_exact(
    g: &Graph,
    omega: usize,
    cand: &Bits,
    current: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if current.len() == omega {
        out.push(current.clone());
        return;
    }
    if current.len() + cand.count() < omega {
        return;
    }
    for v in cand.iter() {
        let mut next = cand.clone();
        next.intersect_words(g.row_words(v));
        next.clear_through(v);
        current.push(v);
        enumerate_exact(g, omega, &next, current, out);
        current.pop();
    }
}

/// Feasibility residuals of a candidate matrix for the clique-constrained
/// SDP shape (trace 1, zeros on non-adjacent pairs, psd, entrywise >= 0).
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct CertificateResiduals {
    /// |Tr X - 1|.
    pub trace: f64,
    /// max |X_ij| over non-adjacent pairs i != j.
    pub pattern: f64,
    /// Smallest eigenvalue of X (negative means violation).
    pub min_eigenvalue: f64,
    /// Smallest entry of X (negative means violation).
    pub min_entry: f64,
}

impl CertificateResiduals {
    pub fn within(&self, tol: f64) -> bool {
        self.trace <= tol
            && self.pattern <= tol
            && self.min_eigenvalue >= -tol
            && self.min_entry >= -tol
    }
}

/// Witness that a graph passes the partitionable screen and that its clique
/// structure forces the clique-constrained SDP value strictly above omega.
///
/// X = (C^T C - lambda1 I) / (n (omega - lambda1)) is feasible for that SDP
/// and achieves (omega^2 - lambda1) / (omega - lambda1) > omega, where
/// lambda1 is the smallest eigenvalue of C^T C.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PartitionableCertificate {
    pub omega: usize,
    pub num_max_cliques: usize,
    pub lambda_min_ctc: f64,
    /// (omega^2 - lambda1) / (omega - lambda1); exceeds omega by
    /// lambda1 (omega - 1) / (omega - lambda1).
    pub objective: f64,
    pub x: SymmetricMatrix,
    pub residuals: CertificateResiduals,
}

impl PartitionableCertificate {
    /// Recomputes every residual and the objective from scratch.
    pub fn verify(&self, g: &Graph, tol: f64) -> Result<bool> {
        let res = x_residuals(g, &self.x)?;
        let objective = self.x.sum_entries();
        Ok(res.within(tol)
            && (objective - self.objective).abs() <= tol * (1.0 + self.objective.abs())
            && objective > self.omega as f64)
    }
}

fn x_residuals(g: &Graph, x: &SymmetricMatrix) -> Result<CertificateResiduals> {
    let n = g.n();
    if x.n() != n {
        return Err(Error::invalid("certificate size does not match graph"));
    }
    let mut pattern = 0.0f64;
    for i in 0..n {
        for j in (i + 1)..n {
            if !g.has_edge(i, j) {
                pattern = pattern.max(x.get(i, j).abs());
            }
        }
    }
    let eig = eigen_symmetric(x)?;
    Ok(CertificateResiduals {
        trace: (x.trace() - 1.0).abs(),
        pattern,
        min_eigenvalue: eig.min_value(),
        min_entry: x.min_entry(),
    })
}

/// Screens g for the partitionable clique structure (exactly n maximum
/// cliques, every vertex in exactly omega of them, nonsingular incidence
/// matrix) and on success builds the spectral certificate. Returns None when
/// the screen fails; the screen itself is exact (integer determinant).
pub fn partitionable_certificate(g: &Graph) -> Result<Option<PartitionableCertificate>> {
    let n = g.n();
    if n == 0 {
        return Ok(None);
    }
    let mcm = maximum_cliques(g);
    let omega = mcm.omega;
    if omega < 2 || mcm.cliques.len() != n {
        return Ok(None);
    }
    if mcm.vertex_counts().iter().any(|&c| c != omega) {
        return Ok(None);
    }
    if !incidence_nonsingular(&mcm) {
        return Ok(None);
    }
    let ctc = mcm.ctc();
    let eig = eigen_symmetric(&ctc)?;
    let lambda1 = eig.min_value();
    let w = omega as f64;
    if lambda1 <= 1e-9 || lambda1 >= w - 1e-9 {
        // The screen passed but the spectrum is degenerate; the construction
        // needs 0 < lambda1 < omega.
        return Err(Error::numeric(format!(
            "clique incidence spectrum out of range: lambda1 = {lambda1}"
        )));
    }
    let scale = 1.0 / (n as f64 * (w - lambda1));
    let x = SymmetricMatrix::from_fn(n, |i, j| {
        let base = ctc.get(i, j) - if i == j { lambda1 } else { 0.0 };
        base * scale
    });
    let residuals = x_residuals(g, &x)?;
    Ok(Some(PartitionableCertificate {
        omega,
        num_max_cliques: mcm.cliques.len(),
        lambda_min_ctc: lambda1,
        objective: (w * w - lambda1) / (w - lambda1),
        x,
        residuals,
    }))
}

/// Exact nonsingularity of the 0/1 incidence matrix via fraction-free
/// (Bareiss) elimination over arbitrary-precision integers.
fn incidence_nonsingular(mcm: &MaxCliqueMatrix) -> bool {
    let n = mcm.n;
    debug_assert_eq!(mcm.cliques.len(), n);
    let mut a: Vec<Vec<BigInt>> = (0..n)
        .map(|r| mcm.row(r).iter().map(|&b| BigInt::from(b)).collect())
        .collect();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return false;
            };
            a.swap(k, p);
        }
        if k == n - 1 {
            break;
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let num = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                a[i][j] = num / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    a[n - 1][n - 1].abs() > BigInt::zero()
}
