//! Quartic forms in squared variables, with exact rational coefficients.
//!
//! Everything here is a form p(x) = sum_ab M_ab x_a^2 x_b^2 for a symmetric
//! rational matrix M. The graph-attached instance has M = -k A + (k-1) J:
//! p is nonnegative exactly when k is at least the clique number, and a sum
//! of squares exactly when k clears the semidefinite clique bound of the
//! complement. Decompositions are exact: expansion is rational arithmetic
//! and verification is equality of coefficient matrices.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::SymmetricMatrix;
use num::{BigInt, BigRational, Signed, ToPrimitive, Zero};

pub fn rational(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

pub fn rational_fraction(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses "p/q" or "p" into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    s.trim()
        .parse::<BigRational>()
        .map_err(|e| Error::parse(format!("bad rational {s:?}: {e}")))
}

/// A quartic form sum_ab M_ab x_a^2 x_b^2 with symmetric rational M.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuarticForm {
    n: usize,
    /// Row-major n x n, kept exactly symmetric.
    coeffs: Vec<BigRational>,
}

impl QuarticForm {
    pub fn new(n: usize, coeffs: Vec<BigRational>) -> Result<QuarticForm> {
        if coeffs.len() != n * n {
            return Err(Error::invalid(format!(
                "coefficient matrix needs {} entries, got {}",
                n * n,
                coeffs.len()
            )));
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if coeffs[i * n + j] != coeffs[j * n + i] {
                    return Err(Error::invalid(format!(
                        "coefficient matrix asymmetric at ({i},{j})"
                    )));
                }
            }
        }
        Ok(QuarticForm { n, coeffs })
    }

    /// Builds from the upper triangle of `f` (mirrored, so symmetry holds
    /// by construction).
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> BigRational) -> QuarticForm {
        let mut coeffs = vec![BigRational::zero(); n * n];
        for i in 0..n {
            for j in i..n {
                let v = f(i, j);
                coeffs[i * n + j] = v.clone();
                coeffs[j * n + i] = v;
            }
        }
        QuarticForm { n, coeffs }
    }

    pub fn zero(n: usize) -> QuarticForm {
        QuarticForm { n, coeffs: vec![BigRational::zero(); n * n] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coefficient(&self, i: usize, j: usize) -> &BigRational {
        &self.coeffs[i * self.n + j]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &QuarticForm) -> Result<QuarticForm> {
        if self.n != other.n {
            return Err(Error::invalid("form dimension mismatch"));
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(QuarticForm { n: self.n, coeffs })
    }

    pub fn sub(&self, other: &QuarticForm) -> Result<QuarticForm> {
        if self.n != other.n {
            return Err(Error::invalid("form dimension mismatch"));
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(QuarticForm { n: self.n, coeffs })
    }

    pub fn scale(&self, c: &BigRational) -> QuarticForm {
        QuarticForm {
            n: self.n,
            coeffs: self.coeffs.iter().map(|v| v * c).collect(),
        }
    }

    /// Adds gamma * (sum x_i^2)^2, i.e. gamma onto every matrix entry.
    pub fn add_multiple_of_ones(&self, gamma: &BigRational) -> QuarticForm {
        QuarticForm {
            n: self.n,
            coeffs: self.coeffs.iter().map(|v| v + gamma).collect(),
        }
    }

    /// Principal restriction: the form in the variables of `subset` only
    /// (all other variables set to zero). Indices must be distinct and in
    /// range; the result is renumbered by position.
    pub fn restrict(&self, subset: &[usize]) -> Result<QuarticForm> {
        if subset.is_empty() {
            return Err(Error::invalid("restriction needs at least one variable"));
        }
        let mut seen = vec![false; self.n];
        for &v in subset {
            if v >= self.n {
                return Err(Error::invalid(format!("variable {v} out of range")));
            }
            if seen[v] {
                return Err(Error::invalid(format!("variable {v} repeated")));
            }
            seen[v] = true;
        }
        let k = subset.len();
        let mut coeffs = vec![BigRational::zero(); k * k];
        for (a, &i) in subset.iter().enumerate() {
            for (b, &j) in subset.iter().enumerate() {
                coeffs[a * k + b] = self.coeffs[i * self.n + j].clone();
            }
        }
        Ok(QuarticForm { n: k, coeffs })
    }

    pub fn to_float_matrix(&self) -> Result<SymmetricMatrix> {
        let mut data = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            data.push(
                c.to_f64()
                    .ok_or_else(|| Error::numeric("coefficient does not fit in f64"))?,
            );
        }
        SymmetricMatrix::new(self.n, data)
    }

    pub fn evaluate(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.n {
            return Err(Error::invalid("evaluation point has wrong dimension"));
        }
        let m = self.to_float_matrix()?;
        let v: Vec<f64> = x.iter().map(|&t| t * t).collect();
        let mut acc = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                acc += m.get(i, j) * v[i] * v[j];
            }
        }
        Ok(acc)
    }

    pub fn evaluate_exact(&self, x: &[BigRational]) -> Result<BigRational> {
        if x.len() != self.n {
            return Err(Error::invalid("evaluation point has wrong dimension"));
        }
        let v: Vec<BigRational> = x.iter().map(|t| t * t).collect();
        let mut acc = BigRational::zero();
        for i in 0..self.n {
            for j in 0..self.n {
                acc += &self.coeffs[i * self.n + j] * &v[i] * &v[j];
            }
        }
        Ok(acc)
    }

    /// Canonical single-line rendering: monomials x_i^2 x_j^2 with i <= j in
    /// lexicographic order, exact coefficients, zero terms dropped.
    pub fn canonical_text(&self) -> String {
        let mut out = String::new();
        for i in 0..self.n {
            for j in i..self.n {
                let c = if i == j {
                    self.coeffs[i * self.n + j].clone()
                } else {
                    &self.coeffs[i * self.n + j] * rational(2)
                };
                if c.is_zero() {
                    continue;
                }
                let mono = if i == j {
                    format!("x{i}^4")
                } else {
                    format!("x{i}^2 x{j}^2")
                };
                if out.is_empty() {
                    if c.is_negative() {
                        out.push_str(&format!("-{} {}", c.abs(), mono));
                    } else {
                        out.push_str(&format!("{c} {mono}"));
                    }
                } else if c.is_negative() {
                    out.push_str(&format!(" - {} {}", c.abs(), mono));
                } else {
                    out.push_str(&format!(" + {c} {mono}"));
                }
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// Matrix entries as exact strings, row by row (for serialization).
    pub fn coefficient_strings(&self) -> Vec<Vec<String>> {
        (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| self.coeffs[i * self.n + j].to_string())
                    .collect()
            })
            .collect()
    }

    pub fn from_coefficient_strings(rows: &[Vec<String>]) -> Result<QuarticForm> {
        let n = rows.len();
        let mut coeffs = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::parse("coefficient matrix is not square"));
            }
            for s in row {
                coeffs.push(parse_rational(s)?);
            }
        }
        QuarticForm::new(n, coeffs)
    }
}

/// The graph form with coefficient matrix -k A + (k-1) J: entries k-1 on
/// the diagonal and non-adjacent pairs, -1 on edges.
pub fn clique_form(g: &Graph, k: &BigRational) -> QuarticForm {
    let minus_one = rational(-1);
    let km1 = k - rational(1);
    QuarticForm::from_fn(g.n(), |i, j| {
        if i != j && g.has_edge(i, j) {
            minus_one.clone()
        } else {
            km1.clone()
        }
    })
}

/// Hessian of p(x) = sum_ab M_ab x_a^2 x_b^2 at x, from the closed form
/// H_ab = 8 M_ab x_a x_b (a != b), H_aa = 4 (M v)_a + 8 M_aa x_a^2 with
/// v = x squared entrywise.
pub fn hessian_of_squared_form(m: &SymmetricMatrix, x: &[f64]) -> Result<SymmetricMatrix> {
    let n = m.n();
    if x.len() != n {
        return Err(Error::invalid("Hessian point has wrong dimension"));
    }
    let v: Vec<f64> = x.iter().map(|&t| t * t).collect();
    let mv = m.matvec(&v);
    Ok(SymmetricMatrix::from_fn(n, |a, b| {
        if a == b {
            4.0 * mv[a] + 8.0 * m.get(a, a) * x[a] * x[a]
        } else {
            8.0 * m.get(a, b) * x[a] * x[b]
        }
    }))
}

// ----- explicit sum-of-squares decompositions -----

/// One square in a decomposition. Coefficients must be nonnegative for the
/// decomposition to certify anything.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SosTerm {
    /// coeff * (sum_a weights_a x_a^2)^2.
    DiagonalFormSquare {
        coeff: BigRational,
        weights: Vec<BigRational>,
    },
    /// coeff * (x_i x_j)^2.
    CrossTermSquare { coeff: BigRational, i: usize, j: usize },
}

impl SosTerm {
    fn validate(&self, n: usize) -> Result<()> {
        match self {
            SosTerm::DiagonalFormSquare { coeff, weights } => {
                if coeff.is_negative() {
                    return Err(Error::invalid("negative square coefficient"));
                }
                if weights.len() != n {
                    return Err(Error::invalid("weight vector has wrong dimension"));
                }
            }
            SosTerm::CrossTermSquare { coeff, i, j } => {
                if coeff.is_negative() {
                    return Err(Error::invalid("negative square coefficient"));
                }
                if *i >= n || *j >= n || i == j {
                    return Err(Error::invalid("cross term indices out of range"));
                }
            }
        }
        Ok(())
    }

    fn accumulate(&self, acc: &mut [BigRational], n: usize) {
        match self {
            SosTerm::DiagonalFormSquare { coeff, weights } => {
                for a in 0..n {
                    if weights[a].is_zero() {
                        continue;
                    }
                    for b in 0..n {
                        if weights[b].is_zero() {
                            continue;
                        }
                        acc[a * n + b] += coeff * &weights[a] * &weights[b];
                    }
                }
            }
            SosTerm::CrossTermSquare { coeff, i, j } => {
                let half = coeff * rational_fraction(1, 2);
                acc[i * n + j] += &half;
                acc[j * n + i] += half;
            }
        }
    }

    pub fn text(&self) -> String {
        match self {
            SosTerm::DiagonalFormSquare { coeff, weights } => {
                let mut inner = String::new();
                for (a, w) in weights.iter().enumerate() {
                    if w.is_zero() {
                        continue;
                    }
                    if inner.is_empty() {
                        if w.is_negative() {
                            inner.push_str(&format!("-{} x{a}^2", w.abs()));
                        } else {
                            inner.push_str(&format!("{w} x{a}^2"));
                        }
                    } else if w.is_negative() {
                        inner.push_str(&format!(" - {} x{a}^2", w.abs()));
                    } else {
                        inner.push_str(&format!(" + {w} x{a}^2"));
                    }
                }
                if inner.is_empty() {
                    inner.push('0');
                }
                format!("{coeff} ({inner})^2")
            }
            SosTerm::CrossTermSquare { coeff, i, j } => format!("{coeff} (x{i} x{j})^2"),
        }
    }
}

/// An explicit certificate p = sum of the listed squares, checked by exact
/// expansion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SosDecomposition {
    pub n: usize,
    pub terms: Vec<SosTerm>,
}

impl SosDecomposition {
    pub fn expand(&self) -> Result<QuarticForm> {
        let mut acc = vec![BigRational::zero(); self.n * self.n];
        for t in &self.terms {
            t.validate(self.n)?;
            t.accumulate(&mut acc, self.n);
        }
        QuarticForm::new(self.n, acc)
    }

    /// True exactly when every coefficient is nonnegative and the expansion
    /// equals `target` coefficient by coefficient.
    pub fn verify_exact(&self, target: &QuarticForm) -> Result<bool> {
        if target.n() != self.n {
            return Err(Error::invalid("decomposition dimension mismatch"));
        }
        Ok(self.expand()? == *target)
    }

    pub fn text(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .map(SosTerm::text)
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Decomposition for the complete graph at k = n: the coefficient matrix is
/// n I - J and p = sum over pairs of (x_i^2 - x_j^2)^2.
pub fn decompose_complete(n: usize) -> Result<(QuarticForm, SosDecomposition)> {
    if n == 0 {
        return Err(Error::invalid("empty graph has no form"));
    }
    let g = Graph::complete(n);
    let form = clique_form(&g, &rational(n as i64));
    let mut terms = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let mut weights = vec![BigRational::zero(); n];
            weights[i] = rational(1);
            weights[j] = rational(-1);
            terms.push(SosTerm::DiagonalFormSquare { coeff: rational(1), weights });
        }
    }
    Ok((form, SosDecomposition { n, terms }))
}

/// Alternative complete-graph decomposition with n - 1 squares instead of
/// n (n-1) / 2: p = sum_{i<n} n / ((n-i+1)(n-i)) ((n-i) x_i^2 - x_{i+1}^2
/// - ... - x_n^2)^2 in one-based indexing.
pub fn decompose_complete_telescoping(n: usize) -> Result<(QuarticForm, SosDecomposition)> {
    if n == 0 {
        return Err(Error::invalid("empty graph has no form"));
    }
    let g = Graph::complete(n);
    let form = clique_form(&g, &rational(n as i64));
    let mut terms = Vec::new();
    for i in 0..n.saturating_sub(1) {
        let lead = (n - i - 1) as i64;
        let coeff = rational_fraction(n as i64, (lead + 1) * lead);
        let mut weights = vec![BigRational::zero(); n];
        weights[i] = rational(lead);
        for w in weights.iter_mut().skip(i + 1) {
            *w = rational(-1);
        }
        terms.push(SosTerm::DiagonalFormSquare { coeff, weights });
    }
    Ok((form, SosDecomposition { n, terms }))
}

/// Decomposition for a bipartite graph at its clique number. With parts
/// (A, B): p = (sum_A x^2 - sum_B x^2)^2 + 4 (x_i x_j)^2 over nonadjacent
/// cross pairs. Edgeless graphs give the zero form and an empty list.
pub fn decompose_bipartite(g: &Graph) -> Result<(QuarticForm, SosDecomposition)> {
    let n = g.n();
    if g.m() == 0 {
        let form = clique_form(g, &rational(1));
        debug_assert!(form.is_zero());
        return Ok((form, SosDecomposition { n, terms: Vec::new() }));
    }
    let (side_a, side_b) = g
        .bipartition()
        .ok_or_else(|| Error::invalid("graph is not bipartite"))?;
    let form = clique_form(g, &rational(2));
    let mut weights = vec![BigRational::zero(); n];
    for &v in &side_a {
        weights[v] = rational(1);
    }
    for &v in &side_b {
        weights[v] = rational(-1);
    }
    let mut terms = vec![SosTerm::DiagonalFormSquare { coeff: rational(1), weights }];
    for &i in &side_a {
        for &j in &side_b {
            if !g.has_edge(i, j) {
                let (lo, hi) = (i.min(j), i.max(j));
                terms.push(SosTerm::CrossTermSquare { coeff: rational(4), i: lo, j: hi });
            }
        }
    }
    Ok((form, SosDecomposition { n, terms }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    #[test]
    fn clique_form_entries() {
        let g = Graph::cycle(5).unwrap();
        let p = clique_form(&g, &rational(2));
        for i in 0..5 {
            assert_eq!(*p.coefficient(i, i), rational(1));
        }
        assert_eq!(*p.coefficient(0, 1), rational(-1));
        assert_eq!(*p.coefficient(0, 2), rational(1));
    }

    #[test]
    fn evaluation_matches_direct_formula() {
        let mut rng = SplitMix64::new(99);
        for _ in 0..20 {
            let g = Graph::gnp(7, 0.5, rng.next_u64()).unwrap();
            let k = 3.0;
            let p = clique_form(&g, &rational(3));
            let x: Vec<f64> = (0..7).map(|_| rng.next_signed()).collect();
            let sum_sq: f64 = x.iter().map(|t| t * t).sum();
            let mut edge_part = 0.0;
            for (i, j) in g.edges() {
                edge_part += x[i] * x[i] * x[j] * x[j];
            }
            let direct = (k - 1.0) * sum_sq * sum_sq - 2.0 * k * edge_part;
            let got = p.evaluate(&x).unwrap();
            assert!((got - direct).abs() <= 1e-9 * (1.0 + direct.abs()));
        }
    }

    #[test]
    fn clique_indicator_is_an_exact_zero() {
        // At k = clique number, the indicator of a maximum clique is a root.
        for g in [
            Graph::cycle(5).unwrap(),
            Graph::complete(4),
            Graph::cycle_power(10, 2).unwrap(),
        ] {
            let omega = crate::cliques::clique_number(&g);
            let clique = crate::cliques::maximum_clique(&g);
            let p = clique_form(&g, &rational(omega as i64));
            let mut x = vec![BigRational::zero(); g.n()];
            for &v in &clique {
                x[v] = rational(1);
            }
            assert!(p.evaluate_exact(&x).unwrap().is_zero());
        }
    }

    #[test]
    fn restriction_commutes_with_induced_subgraph() {
        let mut rng = SplitMix64::new(4242);
        for _ in 0..10 {
            let g = Graph::gnp(8, 0.4, rng.next_u64()).unwrap();
            let subset = [0usize, 2, 5, 7];
            let whole = clique_form(&g, &rational(3));
            let restricted = whole.restrict(&subset).unwrap();
            let induced = g.induced_subgraph(&subset).unwrap();
            assert_eq!(restricted, clique_form(&induced, &rational(3)));
        }
        let p = clique_form(&Graph::cycle(5).unwrap(), &rational(2));
        assert!(p.restrict(&[]).is_err());
        assert!(p.restrict(&[0, 0]).is_err());
        assert!(p.restrict(&[9]).is_err());
    }

    #[test]
    fn adding_an_edge_shifts_one_coefficient() {
        // If both graphs share clique number k, the sparser form equals the
        // denser one plus 2k x_i^2 x_j^2 for the missing edge.
        let sparse = Graph::cycle(6).unwrap();
        let dense = Graph::from_edges(
            6,
            &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5), (0, 3)],
        )
        .unwrap();
        let k = rational(2);
        let ps = clique_form(&sparse, &k);
        let pd = clique_form(&dense, &k);
        let diff = ps.sub(&pd).unwrap();
        let mut expected = QuarticForm::zero(6);
        expected = expected
            .add(&SosDecomposition {
                n: 6,
                terms: vec![SosTerm::CrossTermSquare { coeff: rational(4), i: 0, j: 3 }],
            }
            .expand()
            .unwrap())
            .unwrap();
        // 2k x_0^2 x_3^2 with k = 2 is 4 x_0^2 x_3^2.
        assert_eq!(diff, expected);
    }

    #[test]
    fn hessian_matches_central_differences() {
        let g = Graph::cycle(5).unwrap();
        let p = clique_form(&g, &rational(2));
        let m = p.to_float_matrix().unwrap();
        let mut rng = SplitMix64::new(7);
        let x: Vec<f64> = (0..5).map(|_| rng.next_signed()).collect();
        let h = hessian_of_squared_form(&m, &x).unwrap();
        let step = 1e-4;
        let eval = |pt: &[f64]| p.evaluate(pt).unwrap();
        for a in 0..5 {
            for b in 0..5 {
                let mut pp = x.clone();
                let mut pm = x.clone();
                let mut mp = x.clone();
                let mut mm = x.clone();
                pp[a] += step;
                pp[b] += step;
                pm[a] += step;
                pm[b] -= step;
                mp[a] -= step;
                mp[b] += step;
                mm[a] -= step;
                mm[b] -= step;
                let numeric =
                    (eval(&pp) - eval(&pm) - eval(&mp) + eval(&mm)) / (4.0 * step * step);
                let exact = h.get(a, b);
                assert!(
                    (numeric - exact).abs() <= 1e-5 * (1.0 + exact.abs()),
                    "H[{a},{b}] numeric {numeric} vs exact {exact}"
                );
            }
        }
    }

    #[test]
    fn hessian_edge_entry_closed_form() {
        // At x = e_j for an edge (i, j), the (i, i) entry is 4 (gamma - 1).
        let c5 = Graph::cycle(5).unwrap();
        let p = clique_form(&c5, &rational(2));
        let m = p.to_float_matrix().unwrap();
        let mut x = vec![0.0; 5];
        x[1] = 1.0;
        let h = hessian_of_squared_form(&m, &x).unwrap();
        assert!((h.get(0, 0) - (-4.0)).abs() < 1e-12);

        let k2 = Graph::complete(2);
        let p2 = clique_form(&k2, &rational(2)).add_multiple_of_ones(&rational_fraction(1, 2));
        let m2 = p2.to_float_matrix().unwrap();
        let h2 = hessian_of_squared_form(&m2, &[0.0, 1.0]).unwrap();
        assert!((h2.get(0, 0) - (-2.0)).abs() < 1e-12);
    }

    #[test]
    fn complete_decomposition_is_exact() {
        for n in 1..=6 {
            let (form, dec) = decompose_complete(n).unwrap();
            assert!(dec.verify_exact(&form).unwrap());
            assert_eq!(dec.terms.len(), n * (n - 1) / 2);
        }
    }

    #[test]
    fn telescoping_decomposition_is_exact() {
        for n in 1..=8 {
            let (form, dec) = decompose_complete_telescoping(n).unwrap();
            assert!(dec.verify_exact(&form).unwrap());
            assert_eq!(dec.terms.len(), n - 1);
            // Both decompositions expand to the same form.
            let (pairwise, _) = decompose_complete(n).unwrap();
            assert_eq!(form, pairwise);
        }
    }

    #[test]
    fn bipartite_decompositions_are_exact() {
        let p4 = Graph::path(4).unwrap();
        let (form, dec) = decompose_bipartite(&p4).unwrap();
        assert!(dec.verify_exact(&form).unwrap());
        assert_eq!(dec.terms.len(), 2);

        let p5 = Graph::path(5).unwrap();
        let (form, dec) = decompose_bipartite(&p5).unwrap();
        assert!(dec.verify_exact(&form).unwrap());
        assert_eq!(dec.terms.len(), 3);

        let k33 = Graph::complete_bipartite(3, 3);
        let (form, dec) = decompose_bipartite(&k33).unwrap();
        assert!(dec.verify_exact(&form).unwrap());
        assert_eq!(dec.terms.len(), 1);

        let c6 = Graph::cycle(6).unwrap();
        let (form, dec) = decompose_bipartite(&c6).unwrap();
        assert!(dec.verify_exact(&form).unwrap());
        assert_eq!(dec.terms.len(), 4);

        let edgeless = Graph::empty(4);
        let (form, dec) = decompose_bipartite(&edgeless).unwrap();
        assert!(form.is_zero());
        assert!(dec.terms.is_empty());
        assert!(dec.verify_exact(&form).unwrap());

        assert!(decompose_bipartite(&Graph::cycle(5).unwrap()).is_err());
    }

    #[test]
    fn verification_rejects_wrong_targets() {
        let (form, dec) = decompose_complete(4).unwrap();
        let wrong = form.add_multiple_of_ones(&rational(1));
        assert!(!dec.verify_exact(&wrong).unwrap());
        let negative = SosDecomposition {
            n: 2,
            terms: vec![SosTerm::CrossTermSquare { coeff: rational(-1), i: 0, j: 1 }],
        };
        assert!(negative.expand().is_err());
    }

    #[test]
    fn canonical_text_is_frozen() {
        let k2 = Graph::complete(2);
        let p = clique_form(&k2, &rational(2));
        assert_eq!(p.canonical_text(), "1 x0^4 - 2 x0^2 x1^2 + 1 x1^4");
        assert_eq!(QuarticForm::zero(3).canonical_text(), "0");
        let dec = SosDecomposition {
            n: 2,
            terms: vec![
                SosTerm::DiagonalFormSquare {
                    coeff: rational(1),
                    weights: vec![rational(1), rational(-1)],
                },
                SosTerm::CrossTermSquare { coeff: rational(4), i: 0, j: 1 },
            ],
        };
        assert_eq!(dec.text(), "1 (1 x0^2 - 1 x1^2)^2 + 4 (x0 x1)^2");
    }

    #[test]
    fn rational_round_trips_through_strings() {
        let p = clique_form(&Graph::cycle(5).unwrap(), &rational_fraction(7, 3));
        let strings = p.coefficient_strings();
        let back = QuarticForm::from_coefficient_strings(&strings).unwrap();
        assert_eq!(p, back);
        assert!(parse_rational("3/4").is_ok());
        assert!(parse_rational("x").is_err());
    }
}
