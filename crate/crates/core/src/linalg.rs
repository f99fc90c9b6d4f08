//! Dense symmetric linear algebra.
//!
//! Everything downstream (SDP solver, bound certificates, psd tests) runs on
//! the routines here: a Householder + implicit-QL eigensolver, a Cholesky
//! fast path for psd tests, diagonal-dominance tests, and cone projections.
//! Matrices are desk scale (n up to a few hundred), stored dense row-major.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Maximum relative asymmetry accepted by the constructor before the input
/// is rejected rather than silently symmetrized.
const SYMMETRY_TOL: f64 = 1e-12;

/// Dense real symmetric matrix. Symmetry is enforced at construction:
/// the input is checked to be symmetric within `1e-12 * (1 + max|entry|)`
/// and then exactly symmetrized, so `get(i, j) == get(j, i)` always holds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymmetricMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymmetricMatrix {
    /// Builds from a row-major n*n buffer. Rejects wrong lengths, non-finite
    /// entries, and asymmetry beyond tolerance.
    pub fn new(n: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::invalid(format!(
                "matrix buffer has length {}, expected {}",
                data.len(),
                n * n
            )));
        }
        if data.iter().any(|x| !x.is_finite()) {
            return Err(Error::invalid("matrix entries must be finite"));
        }
        let scale = 1.0 + data.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        let mut data = data;
        for i in 0..n {
            for j in (i + 1)..n {
                let a = data[i * n + j];
                let b = data[j * n + i];
                if (a - b).abs() > SYMMETRY_TOL * scale {
                    return Err(Error::invalid(format!(
                        "matrix is not symmetric at ({i},{j}): {a} vs {b}"
                    )));
                }
                let avg = 0.5 * (a + b);
                data[i * n + j] = avg;
                data[j * n + i] = avg;
            }
        }
        Ok(SymmetricMatrix { n, data })
    }

    /// Builds from an upper-triangle callback; `f(i, j)` is called once per
    /// pair with `i <= j`. Symmetry holds by construction.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in i..n {
                let v = f(i, j);
                data[i * n + j] = v;
                data[j * n + i] = v;
            }
        }
        SymmetricMatrix { n, data }
    }

    pub fn zeros(n: usize) -> Self {
        SymmetricMatrix { n, data: vec![0.0; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { 1.0 } else { 0.0 })
    }

    /// The all-ones matrix.
    pub fn all_ones(n: usize) -> Self {
        SymmetricMatrix { n, data: vec![1.0; n * n] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    /// Sets both (i, j) and (j, i).
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
        self.data[j * self.n + i] = v;
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0f64, |m, x| m.max(x.abs()))
    }

    pub fn min_entry(&self) -> f64 {
        self.data.iter().fold(f64::INFINITY, |m, &x| m.min(x))
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// Frobenius inner product <self, other> = sum_ij self_ij * other_ij.
    pub fn inner(&self, other: &SymmetricMatrix) -> f64 {
        debug_assert_eq!(self.n, other.n);
        self.data.iter().zip(&other.data).map(|(a, b)| a * b).sum()
    }

    /// Sum of all entries, i.e. <J, self>.
    pub fn sum_entries(&self) -> f64 {
        self.data.iter().sum()
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        debug_assert_eq!(x.len(), self.n);
        let mut y = vec![0.0; self.n];
        for i in 0..self.n {
            let row = &self.data[i * self.n..(i + 1) * self.n];
            y[i] = row.iter().zip(x).map(|(a, b)| a * b).sum();
        }
        y
    }

    /// self + s * other.
    pub fn add_scaled(&self, other: &SymmetricMatrix, s: f64) -> SymmetricMatrix {
        debug_assert_eq!(self.n, other.n);
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + s * b)
            .collect();
        SymmetricMatrix { n: self.n, data }
    }

    pub fn scale(&self, s: f64) -> SymmetricMatrix {
        SymmetricMatrix {
            n: self.n,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    /// Principal submatrix on `idx` (indices must be in range and distinct).
    pub fn submatrix(&self, idx: &[usize]) -> SymmetricMatrix {
        let k = idx.len();
        SymmetricMatrix::from_fn(k, |a, b| self.get(idx[a], idx[b]))
    }

    /// Largest |a_ij - b_ij|.
    pub fn max_abs_diff(&self, other: &SymmetricMatrix) -> f64 {
        debug_assert_eq!(self.n, other.n);
        self.data
            .iter()
            .zip(&other.data)
            .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()))
    }
}

/// Eigendecomposition of a symmetric matrix. `values` ascend; the j-th
/// eigenvector occupies column j of `vectors` (entry k is
/// `vectors[k * n + j]`).
#[derive(Debug, Clone)]
pub struct Eigen {
    pub n: usize,
    pub values: Vec<f64>,
    pub vectors: Vec<f64>,
}

impl Eigen {
    pub fn eigenvector(&self, j: usize) -> Vec<f64> {
        (0..self.n).map(|k| self.vectors[k * self.n + j]).collect()
    }

    pub fn min_value(&self) -> f64 {
        self.values[0]
    }

    pub fn max_value(&self) -> f64 {
        self.values[self.n - 1]
    }
}

/// Reusable buffers for repeated eigendecompositions of same-size matrices.
/// The SDP solver calls this once per iteration, so allocation matters.
pub struct EigenScratch {
    n: usize,
    v: Vec<f64>,
    d: Vec<f64>,
    e: Vec<f64>,
}

impl EigenScratch {
    pub fn new(n: usize) -> Self {
        EigenScratch {
            n,
            v: vec![0.0; n * n],
            d: vec![0.0; n],
            e: vec![0.0; n],
        }
    }

    /// Decomposes the symmetric matrix in `a` (row-major n*n). On success the
    /// eigenvalues sit in `self.d` (ascending) and the eigenvectors in
    /// `self.v` (column j = j-th eigenvector).
    pub fn decompose(&mut self, a: &[f64]) -> Result<()> {
        let n = self.n;
        debug_assert_eq!(a.len(), n * n);
        self.v.copy_from_slice(a);
        tred2(n, &mut self.v, &mut self.d, &mut self.e);
        tql2(n, &mut self.v, &mut self.d, &mut self.e)?;
        sort_eigen(n, &mut self.v, &mut self.d);
        Ok(())
    }

    pub fn values(&self) -> &[f64] {
        &self.d
    }

    pub fn vectors(&self) -> &[f64] {
        &self.v
    }
}

/// Full eigendecomposition; values ascend, vector columns are orthonormal.
///
/// Accuracy: residual `max|M v - lambda v|` stays below `1e-9 * (1 + |M|_inf)`
/// and `|V^T V - I|_inf` below 1e-10 (both are asserted by the test suite on
/// the whole corpus); in practice the errors are near machine epsilon.
pub fn eigen_symmetric(m: &SymmetricMatrix) -> Result<Eigen> {
    let n = m.n();
    let mut ws = EigenScratch::new(n);
    ws.decompose(m.data())?;
    Ok(Eigen { n, values: ws.d, vectors: ws.v })
}

/// Householder reduction to tridiagonal form with accumulated transformations
/// (EISPACK tred2 lineage). On exit `v` holds the orthogonal accumulation,
/// `d` the diagonal, `e` the subdiagonal (e[0] = 0).
fn tred2(n: usize, v: &mut [f64], d: &mut [f64], e: &mut [f64]) {
    if n == 0 {
        return;
    }
    for j in 0..n {
        d[j] = v[(n - 1) * n + j];
    }
    for i in (1..n).rev() {
        let mut scale = 0.0;
        let mut h = 0.0;
        for item in d.iter().take(i) {
            scale += item.abs();
        }
        if scale == 0.0 {
            e[i] = d[i - 1];
            for j in 0..i {
                d[j] = v[(i - 1) * n + j];
                v[i * n + j] = 0.0;
                v[j * n + i] = 0.0;
            }
        } else {
            for k in 0..i {
                d[k] /= scale;
                h += d[k] * d[k];
            }
            let mut f = d[i - 1];
            let mut g = h.sqrt();
            if f > 0.0 {
                g = -g;
            }
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            for item in e.iter_mut().take(i) {
                *item = 0.0;
            }
            for j in 0..i {
                f = d[j];
                v[j * n + i] = f;
                g = e[j] + v[j * n + j] * f;
                for k in (j + 1)..i {
                    g += v[k * n + j] * d[k];
                    e[k] += v[k * n + j] * f;
                }
                e[j] = g;
            }
            f = 0.0;
            for j in 0..i {
                e[j] /= h;
                f += e[j] * d[j];
            }
            let hh = f / (h + h);
            for j in 0..i {
                e[j] -= hh * d[j];
            }
            for j in 0..i {
                f = d[j];
                g = e[j];
                for k in j..i {
                    v[k * n + j] -= f * e[k] + g * d[k];
                }
                d[j] = v[(i - 1) * n + j];
                v[i * n + j] = 0.0;
            }
        }
        d[i] = h;
    }
    for i in 0..(n - 1) {
        v[(n - 1) * n + i] = v[i * n + i];
        v[i * n + i] = 1.0;
        let h = d[i + 1];
        if h != 0.0 {
            for k in 0..=i {
                d[k] = v[k * n + i + 1] / h;
            }
            for j in 0..=i {
                let mut g = 0.0;
                for k in 0..=i {
                    g += v[k * n + i + 1] * v[k * n + j];
                }
                for k in 0..=i {
                    v[k * n + j] -= g * d[k];
                }
            }
        }
        for k in 0..=i {
            v[k * n + i + 1] = 0.0;
        }
    }
    for j in 0..n {
        d[j] = v[(n - 1) * n + j];
        v[(n - 1) * n + j] = 0.0;
    }
    v[(n - 1) * n + n - 1] = 1.0;
    e[0] = 0.0;
}

/// Implicit-shift QL iteration on the tridiagonal (d, e), rotating the
/// accumulated vectors in `v` along (EISPACK tql2 lineage).
fn tql2(n: usize, v: &mut [f64], d: &mut [f64], e: &mut [f64]) -> Result<()> {
    if n == 0 {
        return Ok(());
    }
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;

    let mut f = 0.0f64;
    let mut tst1 = 0.0f64;
    let eps = f64::EPSILON;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n {
            if e[m].abs() <= eps * tst1 {
                break;
            }
            m += 1;
        }
        if m > l {
            let mut iter = 0;
            loop {
                iter += 1;
                if iter > 50 {
                    return Err(Error::numeric(
                        "eigensolver failed to converge within 50 QL sweeps",
                    ));
                }
                let g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for item in d.iter_mut().take(n).skip(l + 2) {
                    *item -= h;
                }
                f += h;

                p = d[m];
                let mut c = 1.0f64;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0f64;
                let mut s2 = 0.0f64;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    for k in 0..n {
                        h = v[k * n + i + 1];
                        v[k * n + i + 1] = s * v[k * n + i] + c * h;
                        v[k * n + i] = c * v[k * n + i] - s * h;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
    Ok(())
}

/// Ascending selection sort of eigenvalues, permuting vector columns along.
fn sort_eigen(n: usize, v: &mut [f64], d: &mut [f64]) {
    for i in 0..n.saturating_sub(1) {
        let mut k = i;
        for j in (i + 1)..n {
            if d[j] < d[k] {
                k = j;
            }
        }
        if k != i {
            d.swap(i, k);
            for row in 0..n {
                v.swap(row * n + i, row * n + k);
            }
        }
    }
}

/// In-place lower Cholesky attempt; true iff every pivot stays positive.
fn cholesky_in_place(n: usize, a: &mut [f64]) -> bool {
    for j in 0..n {
        let mut d = a[j * n + j];
        for k in 0..j {
            d -= a[j * n + k] * a[j * n + k];
        }
        if d <= 0.0 || !d.is_finite() {
            return false;
        }
        let d = d.sqrt();
        a[j * n + j] = d;
        for i in (j + 1)..n {
            let mut s = a[i * n + j];
            for k in 0..j {
                s -= a[i * n + k] * a[j * n + k];
            }
            a[i * n + j] = s / d;
        }
    }
    true
}

/// True iff `lambda_min(m) >= -tol`. Fast path: Cholesky of `m + tol*I`
/// (success proves the bound); on failure the exact eigenvalue decides, so
/// boundary cases are never misjudged by pivot breakdown.
pub fn is_psd(m: &SymmetricMatrix, tol: f64) -> Result<bool> {
    if tol < 0.0 || !tol.is_finite() {
        return Err(Error::invalid("psd tolerance must be nonnegative"));
    }
    let n = m.n();
    if n == 0 {
        return Ok(true);
    }
    let mut shifted = m.data().to_vec();
    for i in 0..n {
        shifted[i * n + i] += tol;
    }
    if cholesky_in_place(n, &mut shifted) {
        return Ok(true);
    }
    let eig = eigen_symmetric(m)?;
    Ok(eig.min_value() >= -tol)
}

/// Default scale-adjusted psd tolerance: `1e-8 * (1 + |m|_inf)`.
pub fn default_psd_tol(m: &SymmetricMatrix) -> f64 {
    1e-8 * (1.0 + m.max_abs())
}

/// True iff m is diagonally dominant with nonnegative diagonal, with `tol`
/// of additive slack per row: `m_ii + tol >= sum_{j != i} |m_ij|`.
pub fn is_dd(m: &SymmetricMatrix, tol: f64) -> bool {
    let n = m.n();
    for i in 0..n {
        let d = m.get(i, i);
        if d < -tol {
            return false;
        }
        let off: f64 = (0..n).filter(|&j| j != i).map(|j| m.get(i, j).abs()).sum();
        if d + tol < off {
            return false;
        }
    }
    true
}

/// True iff m is scaled diagonally dominant: some positive diagonal D makes
/// D m D diagonally dominant.
///
/// Decision procedure: rows with (near-)zero diagonal must be (near-)zero
/// entirely; the remaining rows are scaled to unit diagonal, and m is sdd iff
/// the comparison matrix `I - |offdiag|` is psd. (Collatz-Wielandt: a
/// positive vector d with |B| d <= d exists iff the Perron root of |B| is at
/// most 1, per connected component; the whole-matrix eigenvalue check is the
/// same thing because components are orthogonal blocks.)
pub fn is_sdd(m: &SymmetricMatrix, tol: f64) -> Result<bool> {
    let n = m.n();
    let scale = 1.0 + m.max_abs();
    let zero = tol * scale;
    let mut active = Vec::new();
    for i in 0..n {
        let d = m.get(i, i);
        if d < -zero {
            return Ok(false);
        }
        if d <= zero {
            // Zero diagonal: no scaling can dominate a nonzero off-diagonal.
            if (0..n).any(|j| j != i && m.get(i, j).abs() > zero) {
                return Ok(false);
            }
        } else {
            active.push(i);
        }
    }
    if active.is_empty() {
        return Ok(true);
    }
    let k = active.len();
    let comparison = SymmetricMatrix::from_fn(k, |a, b| {
        if a == b {
            1.0
        } else {
            let (i, j) = (active[a], active[b]);
            -m.get(i, j).abs() / (m.get(i, i) * m.get(j, j)).sqrt()
        }
    });
    let eig = eigen_symmetric(&comparison)?;
    Ok(eig.min_value() >= -tol)
}

/// Euclidean projection onto the psd cone (eigenvalue clamping).
pub fn project_psd(m: &SymmetricMatrix) -> Result<SymmetricMatrix> {
    let n = m.n();
    let eig = eigen_symmetric(m)?;
    let mut out = vec![0.0; n * n];
    for j in 0..n {
        let lam = eig.values[j];
        if lam <= 0.0 {
            continue;
        }
        for r in 0..n {
            let vr = eig.vectors[r * n + j] * lam;
            if vr == 0.0 {
                continue;
            }
            for c in r..n {
                out[r * n + c] += vr * eig.vectors[c * n + j];
            }
        }
    }
    for r in 0..n {
        for c in (r + 1)..n {
            out[c * n + r] = out[r * n + c];
        }
    }
    Ok(SymmetricMatrix { n, data: out })
}

/// Dykstra refinement toward the intersection of the psd cone and the
/// nonnegative orthant. Starting from a matrix that already sits within
/// `~eps` of both sets, a few dozen sweeps drive the joint violation to
/// `target` (used to harden separating-hyperplane witnesses).
pub fn refine_doubly_nonnegative(
    x0: &SymmetricMatrix,
    target: f64,
    max_sweeps: usize,
) -> Result<SymmetricMatrix> {
    let n = x0.n();
    let mut x = x0.clone();
    let mut p = SymmetricMatrix::zeros(n);
    let mut q = SymmetricMatrix::zeros(n);
    for _ in 0..max_sweeps {
        let y = project_psd(&x.add_scaled(&p, 1.0))?;
        p = x.add_scaled(&p, 1.0).add_scaled(&y, -1.0);
        let z = y.add_scaled(&q, 1.0);
        let clipped = SymmetricMatrix::from_fn(n, |i, j| z.get(i, j).max(0.0));
        q = z.add_scaled(&clipped, -1.0);
        x = clipped;
        // x is entrywise nonnegative by construction; stop once it is also
        // psd to the target accuracy.
        let eig = eigen_symmetric(&x)?;
        if eig.min_value() >= -target {
            return Ok(x);
        }
    }
    Err(Error::numeric(
        "Dykstra refinement did not reach the requested joint accuracy",
    ))
}
