//! JSON reports: single-graph analysis, the random-graph experiment, and
//! certificate documents, each carrying a content hash and an offline
//! recheck path that recomputes what the numbers claim.
//!
//! Every floating value is rounded to twelve significant digits before
//! serialization so reports round-trip bit-for-bit; the hash covers the
//! canonical JSON with timings zeroed and the hash field emptied.

use crate::bounds::{
    self, clique_matrix, decision_margin, theta, theta_prime, BoundLadder, DominanceCertificate,
    ScaledDominanceCertificate, SeparatingHyperplane, SosPerfectReport, SosVerdict,
};
use crate::cliques::{clique_number, partitionable_certificate, PartitionableCertificate};
use crate::coloring::{chromatic_number_with_cap, CHROMATIC_DEFAULT_CAP};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::perfect::{is_perfect, PerfectnessMethod, PerfectnessVerdict};
use crate::quartic::{
    clique_form, decompose_bipartite, decompose_complete_telescoping, parse_rational, rational,
    QuarticForm, SosDecomposition, SosTerm,
};
use crate::linalg::SymmetricMatrix;
use crate::sdp::{SdpSolution, SolveOptions, SolveStatus};
use num::BigRational;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::time::Instant;

pub const SCHEMA_VERSION: u32 = 1;

/// Rounds to twelve significant digits (report canonical form).
pub fn sig12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().expect("scientific notation round-trip")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ToolInfo {
    pub name: String,
    pub version: String,
}

impl Default for ToolInfo {
    fn default() -> Self {
        ToolInfo {
            name: "sosperfect".to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }
}

/// Self-contained graph description (the edge list is the graph).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphSummary {
    pub n: usize,
    pub m: usize,
    pub max_degree: usize,
    pub edges: Vec<(usize, usize)>,
}

impl GraphSummary {
    pub fn of(g: &Graph) -> GraphSummary {
        GraphSummary {
            n: g.n(),
            m: g.m(),
            max_degree: g.max_degree(),
            edges: g.edges(),
        }
    }

    pub fn rebuild(&self) -> Result<Graph> {
        let g = Graph::from_edges(self.n, &self.edges)?;
        if g.m() != self.m || g.max_degree() != self.max_degree {
            return Err(Error::invalid("graph summary is inconsistent with its edge list"));
        }
        Ok(g)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SosSummary {
    /// Certified bracket for the sum-of-squares threshold.
    pub threshold: f64,
    pub threshold_upper_bound: f64,
    pub solver_status: SolveStatus,
    /// Decision margin applied to verdicts at this tolerance and scale.
    pub margin: f64,
    /// Largest shift keeping the form a sum of squares (<= 0).
    pub p_sos: f64,
    /// Verdict for the form at the clique number itself.
    pub verdict_at_clique_number: SosVerdict,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub total_ms: f64,
}

/// Checkable certificate attachments for an analysis.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CertificatesSection {
    /// Split of the level-(max degree + 1) matrix into a diagonally
    /// dominant part plus a nonnegative part.
    pub dominance: DominanceCertificate,
    /// Diagonal scaling making the spectral-level matrix dominant.
    pub scaled_dominance: ScaledDominanceCertificate,
    /// Spectral lower-bound witness when the clique structure allows it.
    pub partitionable: Option<PartitionableCertificate>,
    /// Cone-separation witness when the bound clears the clique number.
    pub hyperplane: Option<SeparatingHyperplane>,
    /// Exact decomposition when the graph is complete or bipartite.
    pub decomposition: Option<DecompositionDocument>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema_version: u32,
    pub tool: ToolInfo,
    pub graph: GraphSummary,
    pub tolerance: f64,
    pub seed: Option<u64>,
    pub ladder: BoundLadder,
    pub sos: SosSummary,
    /// Odd-hole/antihole scan verdict (always attempted within its cap).
    pub perfect: Option<PerfectnessVerdict>,
    /// Definitional scan, run on request.
    pub perfect_by_definition: Option<PerfectnessVerdict>,
    /// Subgraph sweep verdict, run on request.
    pub sos_perfect: Option<SosPerfectReport>,
    /// Worst value of 1 - p_sos(H)/(omega(H)-1), run on request.
    pub imperfection_ratio: Option<f64>,
    pub certificates: Option<CertificatesSection>,
    /// What was not computed, and why.
    pub skipped: Vec<String>,
    pub timings: Timings,
    pub content_hash: String,
}

#[derive(Debug, Clone, Copy)]
pub struct AnalyzeConfig {
    pub tol: f64,
    pub seed: Option<u64>,
    /// Exact chromatic number in the ladder (capped).
    pub chi: bool,
    /// Definitional perfectness scan plus the subgraph sos sweep (capped).
    pub deep_perfect: bool,
    /// Imperfection ratio over induced subgraphs (small graphs only).
    pub imperfection_ratio: bool,
    /// Attach checkable certificates.
    pub certificates: bool,
}

impl Default for AnalyzeConfig {
    fn default() -> Self {
        AnalyzeConfig {
            tol: SolveOptions::default().tol,
            seed: None,
            chi: false,
            deep_perfect: false,
            imperfection_ratio: false,
            certificates: false,
        }
    }
}

impl AnalyzeConfig {
    pub fn everything(tol: f64) -> Self {
        AnalyzeConfig {
            tol,
            seed: None,
            chi: true,
            deep_perfect: true,
            imperfection_ratio: true,
            certificates: true,
        }
    }
}

/// Cap-limited computations degrade to an explicit skipped entry instead of
/// failing the whole report.
fn attempt<T>(r: Result<T>, what: &str, skipped: &mut Vec<String>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::ResourceLimit(msg)) => {
            skipped.push(format!("{what}: {msg}"));
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

pub fn analyze_graph(g: &Graph, cfg: &AnalyzeConfig) -> Result<AnalysisReport> {
    let start = Instant::now();
    let opts = SolveOptions { tol: cfg.tol, ..Default::default() };
    let mut skipped = Vec::new();
    let omega = clique_number(g);
    let tp = theta_prime(g, &opts)?;
    let th = theta(g, &opts)?;
    let gamma = bounds::gamma(g)?;
    let chromatic = if cfg.chi {
        attempt(
            chromatic_number_with_cap(g, CHROMATIC_DEFAULT_CAP),
            "chromatic number",
            &mut skipped,
        )?
    } else {
        skipped.push("chromatic number: not requested".into());
        None
    };
    let ladder = BoundLadder {
        omega,
        theta_prime: sig12(tp.objective),
        theta: sig12(th.objective),
        gamma: sig12(gamma),
        tau: bounds::tau(g),
        chromatic,
    };
    let sos = SosSummary {
        threshold: sig12(tp.objective),
        threshold_upper_bound: sig12(tp.dual_bound),
        solver_status: tp.status,
        margin: sig12(decision_margin(opts.tol, omega as f64)),
        p_sos: sig12(omega as f64 / tp.objective - 1.0),
        verdict_at_clique_number: bounds::sos_verdict_from_solution(&tp, omega as f64, opts.tol),
    };
    let perfect = attempt(
        is_perfect(g, PerfectnessMethod::SpgtScan),
        "perfectness scan",
        &mut skipped,
    )?;
    let (perfect_by_definition, sos_perfect) = if cfg.deep_perfect {
        (
            attempt(
                is_perfect(g, PerfectnessMethod::DefinitionScan),
                "definitional perfectness scan",
                &mut skipped,
            )?,
            attempt(bounds::is_sos_perfect(g, &opts), "subgraph sos sweep", &mut skipped)?,
        )
    } else {
        (None, None)
    };
    let imperfection_ratio = if cfg.imperfection_ratio {
        attempt(bounds::aimp(g, &opts), "imperfection ratio", &mut skipped)?.map(sig12)
    } else {
        None
    };
    let certificates = if cfg.certificates {
        Some(build_certificates(g, omega, &tp, &opts, &mut skipped)?)
    } else {
        None
    };
    let mut report = AnalysisReport {
        schema_version: SCHEMA_VERSION,
        tool: ToolInfo::default(),
        graph: GraphSummary::of(g),
        tolerance: cfg.tol,
        seed: cfg.seed,
        ladder,
        sos,
        perfect,
        perfect_by_definition,
        sos_perfect,
        imperfection_ratio,
        certificates,
        skipped,
        timings: Timings { total_ms: sig12(start.elapsed().as_secs_f64() * 1e3) },
        content_hash: String::new(),
    };
    report.content_hash = content_hash(&report)?;
    Ok(report)
}

fn build_certificates(
    g: &Graph,
    omega: usize,
    tp: &SdpSolution,
    opts: &SolveOptions,
    skipped: &mut Vec<String>,
) -> Result<CertificatesSection> {
    let dominance = bounds::tau_certificate(g);
    let scaled_dominance = bounds::gamma_certificate(g)?;
    let partitionable = match partitionable_certificate(g) {
        Ok(v) => v,
        Err(Error::Numeric(msg)) => {
            skipped.push(format!("partitionable certificate: {msg}"));
            None
        }
        Err(e) => return Err(e),
    };
    let separated = tp.status == SolveStatus::Optimal
        && tp.objective > omega as f64 + decision_margin(opts.tol, omega as f64);
    let hyperplane = if separated {
        match bounds::separating_hyperplane(g, opts) {
            Ok(mut hp) => {
                hp.bound_value = sig12(hp.bound_value);
                hp.separation = sig12(hp.separation);
                Some(hp)
            }
            Err(Error::Numeric(msg)) => {
                skipped.push(format!("separating hyperplane: {msg}"));
                None
            }
            Err(e) => return Err(e),
        }
    } else {
        skipped.push(
            "separating hyperplane: bound does not clear the clique number by margin".into(),
        );
        None
    };
    let n = g.n();
    let decomposition = if n >= 1 && g.m() == n * (n - 1) / 2 {
        let (form, dec) = decompose_complete_telescoping(n)?;
        Some(decomposition_document(&form, &rational(n as i64), &dec))
    } else if g.bipartition().is_some() {
        let (form, dec) = decompose_bipartite(g)?;
        let k = if g.m() == 0 { rational(1) } else { rational(2) };
        Some(decomposition_document(&form, &k, &dec))
    } else {
        skipped.push("sos decomposition: graph is neither complete nor bipartite".into());
        None
    };
    Ok(CertificatesSection {
        dominance,
        scaled_dominance,
        partitionable,
        hyperplane,
        decomposition,
    })
}

/// Canonical hash: serialize with sorted keys, timings zeroed, hash field
/// empty; SHA-256 over the bytes, hex encoded.
fn content_hash<T: Serialize>(report: &T) -> Result<String> {
    let mut v = serde_json::to_value(report).map_err(|e| Error::parse(e.to_string()))?;
    if let Some(obj) = v.as_object_mut() {
        if obj.contains_key("timings") {
            obj.insert("timings".into(), serde_json::json!({ "total_ms": 0.0 }));
        }
        obj.insert("content_hash".into(), serde_json::Value::String(String::new()));
    }
    let bytes = serde_json::to_vec(&v).map_err(|e| Error::parse(e.to_string()))?;
    let mut hasher = Sha256::new();
    hasher.update(&bytes);
    Ok(format!("{:x}", hasher.finalize()))
}

pub fn to_json(report: &impl Serialize) -> Result<String> {
    serde_json::to_string_pretty(report).map_err(|e| Error::parse(e.to_string()))
}

// ----- offline recheck -----

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RecheckOutcome {
    pub kind: String,
    pub passed: bool,
    pub notes: Vec<String>,
}

/// Rechecks any report this module produces, dispatching on its fields.
pub fn recheck(json: &str) -> Result<RecheckOutcome> {
    let value: serde_json::Value =
        serde_json::from_str(json).map_err(|e| Error::parse(e.to_string()))?;
    if value.get("ladder").is_some() {
        return recheck_analysis(json);
    }
    if value.get("kind").is_some() {
        return recheck_certificate(json);
    }
    Err(Error::parse("unrecognized report document"))
}

/// Recomputes everything in an analysis report that does not need the SDP:
/// the hash, the graph summary, the combinatorial ladder entries, witness
/// and certificate residuals, and the internal consistency of the
/// solver-derived numbers.
pub fn recheck_analysis(json: &str) -> Result<RecheckOutcome> {
    let report: AnalysisReport =
        serde_json::from_str(json).map_err(|e| Error::parse(e.to_string()))?;
    let mut notes = Vec::new();
    let mut ok = true;
    let check = |cond: bool, msg: &str, notes: &mut Vec<String>| {
        if !cond {
            notes.push(msg.to_string());
        }
        cond
    };

    ok &= check(
        content_hash(&report)? == report.content_hash,
        "content hash mismatch",
        &mut notes,
    );
    let g = report.graph.rebuild()?;
    let l = &report.ladder;
    ok &= check(clique_number(&g) == l.omega, "clique number mismatch", &mut notes);
    ok &= check(bounds::tau(&g) == l.tau, "degree threshold mismatch", &mut notes);
    let gamma = bounds::gamma(&g)?;
    ok &= check(
        (gamma - l.gamma).abs() <= 1e-6 * (1.0 + gamma.abs()),
        "spectral threshold mismatch",
        &mut notes,
    );
    let slack = 100.0 * report.tolerance * (1.0 + l.theta);
    ok &= check(
        l.omega as f64 <= l.theta_prime + slack
            && l.theta_prime <= l.theta + slack
            && l.theta_prime <= l.gamma + slack
            && l.gamma <= l.tau as f64 + 1e-9,
        "bound ladder out of order",
        &mut notes,
    );
    if let Some(chi) = l.chromatic {
        ok &= check(
            chi >= l.omega && l.theta <= chi as f64 + slack,
            "chromatic bound out of order",
            &mut notes,
        );
    }
    let p_sos = l.omega as f64 / report.sos.threshold - 1.0;
    ok &= check(
        (p_sos - report.sos.p_sos).abs() <= 1e-9 * (1.0 + p_sos.abs()),
        "shift value inconsistent with threshold",
        &mut notes,
    );
    ok &= check(
        report.sos.threshold <= report.sos.threshold_upper_bound + slack,
        "threshold exceeds its certified upper bound",
        &mut notes,
    );
    if let Some(p) = &report.perfect {
        ok &= check(p.verify(&g)?, "perfectness witness failed", &mut notes);
    }
    if let Some(p) = &report.perfect_by_definition {
        ok &= check(p.verify(&g)?, "definitional witness failed", &mut notes);
    }
    if let (Some(p), Some(sp)) = (&report.perfect, &report.sos_perfect) {
        ok &= check(
            p.perfect == sp.sos_perfect,
            "perfectness and subgraph sweep disagree",
            &mut notes,
        );
    }
    if let Some(r) = report.imperfection_ratio {
        ok &= check(
            (1.0 - 1e-9..2.0).contains(&r),
            "imperfection ratio out of range",
            &mut notes,
        );
    }
    if let Some(c) = &report.certificates {
        ok &= check(c.dominance.verify(&g), "dominance split failed", &mut notes);
        ok &= check(
            c.scaled_dominance.verify(&g),
            "scaled dominance split failed",
            &mut notes,
        );
        if let Some(cert) = &c.partitionable {
            ok &= check(cert.verify(&g, 1e-8)?, "partitionable witness failed", &mut notes);
        }
        if let Some(hp) = &c.hyperplane {
            ok &= check(hp.verify(&g, 1e-8)?, "hyperplane residuals failed", &mut notes);
        }
        if let Some(doc) = &c.decomposition {
            for note in recheck_decomposition_document(&g, doc)? {
                notes.push(note);
                ok = false;
            }
        }
    }
    Ok(RecheckOutcome { kind: "analysis".into(), passed: ok, notes })
}

// ----- certificate documents -----

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum SosTermJson {
    Diagonal { coeff: String, weights: Vec<String> },
    Cross { coeff: String, i: usize, j: usize },
}

fn term_to_json(t: &SosTerm) -> SosTermJson {
    match t {
        SosTerm::DiagonalFormSquare { coeff, weights } => SosTermJson::Diagonal {
            coeff: coeff.to_string(),
            weights: weights.iter().map(|w| w.to_string()).collect(),
        },
        SosTerm::CrossTermSquare { coeff, i, j } => SosTermJson::Cross {
            coeff: coeff.to_string(),
            i: *i,
            j: *j,
        },
    }
}

fn term_from_json(t: &SosTermJson) -> Result<SosTerm> {
    Ok(match t {
        SosTermJson::Diagonal { coeff, weights } => SosTerm::DiagonalFormSquare {
            coeff: parse_rational(coeff)?,
            weights: weights.iter().map(|w| parse_rational(w)).collect::<Result<_>>()?,
        },
        SosTermJson::Cross { coeff, i, j } => SosTerm::CrossTermSquare {
            coeff: parse_rational(coeff)?,
            i: *i,
            j: *j,
        },
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecompositionDocument {
    /// Level of the form, as an exact rational string.
    pub k: String,
    pub coefficient_matrix: Vec<Vec<String>>,
    pub terms: Vec<SosTermJson>,
    pub rendered: String,
}

fn decomposition_document(
    form: &QuarticForm,
    k: &BigRational,
    dec: &SosDecomposition,
) -> DecompositionDocument {
    DecompositionDocument {
        k: k.to_string(),
        coefficient_matrix: form.coefficient_strings(),
        terms: dec.terms.iter().map(term_to_json).collect(),
        rendered: dec.text(),
    }
}

/// Re-expands a stored decomposition exactly against the graph's own form;
/// returns failure notes (empty when everything checks).
fn recheck_decomposition_document(g: &Graph, doc: &DecompositionDocument) -> Result<Vec<String>> {
    let mut notes = Vec::new();
    let k = parse_rational(&doc.k)?;
    let form = clique_form(g, &k);
    let stored = QuarticForm::from_coefficient_strings(&doc.coefficient_matrix)?;
    if stored != form {
        notes.push("stored coefficient matrix differs from the graph form".into());
    }
    let terms = doc.terms.iter().map(term_from_json).collect::<Result<Vec<_>>>()?;
    let dec = SosDecomposition { n: g.n(), terms };
    if !dec.verify_exact(&form)? {
        notes.push("terms do not expand to the form".into());
    }
    Ok(notes)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HyperplaneDocument {
    pub hyperplane: SeparatingHyperplane,
    /// Present when the graph also passes the clique-partition screen.
    pub partitionable: Option<PartitionableCertificate>,
}

/// Numerical witness that the coefficient matrix at level k splits into a
/// psd part plus an entrywise nonnegative part, which makes the form a sum
/// of squares at that level.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConeSplitDocument {
    pub k: f64,
    pub psd_part: SymmetricMatrix,
    pub nonneg_part: SymmetricMatrix,
    /// Largest entry of the reconstruction error matrix.
    pub split_residual: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CertificateReport {
    pub schema_version: u32,
    pub tool: ToolInfo,
    pub kind: String,
    pub graph: GraphSummary,
    pub decomposition: Option<DecompositionDocument>,
    pub separation: Option<HyperplaneDocument>,
    pub cone_split: Option<ConeSplitDocument>,
    pub content_hash: String,
}

pub fn build_decomposition_report(
    g: &Graph,
    k: &BigRational,
    dec: &SosDecomposition,
) -> Result<CertificateReport> {
    let form = clique_form(g, k);
    if !dec.verify_exact(&form)? {
        return Err(Error::invalid("decomposition does not expand to the graph form"));
    }
    let mut report = CertificateReport {
        schema_version: SCHEMA_VERSION,
        tool: ToolInfo::default(),
        kind: "sos-decomposition".into(),
        graph: GraphSummary::of(g),
        decomposition: Some(decomposition_document(&form, k, dec)),
        separation: None,
        cone_split: None,
        content_hash: String::new(),
    };
    report.content_hash = content_hash(&report)?;
    Ok(report)
}

pub fn build_hyperplane_report(
    g: &Graph,
    hp: &SeparatingHyperplane,
    partitionable: Option<PartitionableCertificate>,
) -> Result<CertificateReport> {
    let mut hp = hp.clone();
    hp.bound_value = sig12(hp.bound_value);
    hp.separation = sig12(hp.separation);
    let mut report = CertificateReport {
        schema_version: SCHEMA_VERSION,
        tool: ToolInfo::default(),
        kind: "separating-hyperplane".into(),
        graph: GraphSummary::of(g),
        decomposition: None,
        separation: Some(HyperplaneDocument { hyperplane: hp, partitionable }),
        cone_split: None,
        content_hash: String::new(),
    };
    report.content_hash = content_hash(&report)?;
    Ok(report)
}

/// Packages a psd-plus-nonnegative split of the level-k coefficient matrix.
pub fn build_cone_split_report(g: &Graph, doc: ConeSplitDocument) -> Result<CertificateReport> {
    let mut report = CertificateReport {
        schema_version: SCHEMA_VERSION,
        tool: ToolInfo::default(),
        kind: "cone-split".into(),
        graph: GraphSummary::of(g),
        decomposition: None,
        separation: None,
        cone_split: Some(doc),
        content_hash: String::new(),
    };
    report.content_hash = content_hash(&report)?;
    Ok(report)
}

/// Rechecks a certificate document from its JSON alone: the hash, the
/// graph, and the certificate content (exact re-expansion for
/// decompositions; cone residuals and the separation sign for
/// hyperplanes).
pub fn recheck_certificate(json: &str) -> Result<RecheckOutcome> {
    let report: CertificateReport =
        serde_json::from_str(json).map_err(|e| Error::parse(e.to_string()))?;
    let mut notes = Vec::new();
    let mut passed = true;
    if content_hash(&report)? != report.content_hash {
        passed = false;
        notes.push("content hash mismatch".into());
    }
    let g = report.graph.rebuild()?;
    match report.kind.as_str() {
        "sos-decomposition" => {
            let Some(doc) = &report.decomposition else {
                return Err(Error::parse("decomposition document missing its payload"));
            };
            for note in recheck_decomposition_document(&g, doc)? {
                notes.push(note);
                passed = false;
            }
        }
        "separating-hyperplane" => {
            let Some(doc) = &report.separation else {
                return Err(Error::parse("hyperplane document missing its payload"));
            };
            let hp = &doc.hyperplane;
            if !hp.verify(&g, 1e-8)? {
                passed = false;
                notes.push("hyperplane residuals out of tolerance".into());
            }
            let m = clique_matrix(&g, hp.omega as f64);
            let inner = m.inner(&hp.x);
            if (inner - hp.separation).abs() > 1e-6 * (1.0 + inner.abs()) {
                passed = false;
                notes.push("stored separation differs from the recomputed inner product".into());
            }
            if let Some(cert) = &doc.partitionable {
                if !cert.verify(&g, 1e-8)? {
                    passed = false;
                    notes.push("clique-partition certificate failed".into());
                }
            }
        }
        "cone-split" => {
            let Some(doc) = &report.cone_split else {
                return Err(Error::parse("cone-split document missing its payload"));
            };
            if doc.k < clique_number(&g) as f64 {
                passed = false;
                notes.push("stored level lies below the clique number".into());
            }
            let m = clique_matrix(&g, doc.k);
            let scale = 1.0 + m.max_abs();
            let reconstruction = m
                .add_scaled(&doc.psd_part, -1.0)
                .add_scaled(&doc.nonneg_part, -1.0)
                .max_abs();
            if reconstruction > doc.split_residual + 1e-9 * scale {
                passed = false;
                notes.push("split does not reconstruct the coefficient matrix".into());
            }
            if !crate::linalg::is_psd(&doc.psd_part, 1e-8 * scale)? {
                passed = false;
                notes.push("psd part has a negative eigenvalue".into());
            }
            if doc.nonneg_part.min_entry() < -1e-12 * scale {
                passed = false;
                notes.push("nonnegative part has a negative entry".into());
            }
        }
        other => return Err(Error::parse(format!("unknown certificate kind {other:?}"))),
    }
    Ok(RecheckOutcome { kind: report.kind, passed, notes })
}

// ----- the random-graph experiment -----

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub n: usize,
    pub p: f64,
    pub trials: usize,
    pub seed: u64,
    pub tol: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: usize,
    pub seed: u64,
    pub omega: usize,
    pub theta_prime: f64,
    pub upper_bound: f64,
    pub status: SolveStatus,
    pub iterations: usize,
    /// One-sided slack on the returned value: the true bound lies in
    /// [theta_prime - margin, upper_bound] when the status is optimal.
    pub margin: f64,
    /// That interval contains no integer.
    pub noninteger: bool,
    /// The interval sits strictly above the clique number.
    pub certified_not_sos: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentSummary {
    pub schema_version: u32,
    pub tool: ToolInfo,
    pub config: ExperimentConfig,
    pub count_noninteger_theta_prime: usize,
    pub count_margin_certified_not_sos: usize,
    pub records: Vec<TrialRecord>,
    pub content_hash: String,
}

/// Runs `trials` random graphs at one size and counts how often the clique
/// bound is certifiably noninteger (hence strictly above the clique number)
/// and how often it clears the clique number by margin. Trial t uses seed
/// `seed xor t`, so individual trials can be reproduced alone; the summary
/// carries no timing fields and reruns byte-identically.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentSummary> {
    if !(cfg.p >= 0.0 && cfg.p <= 1.0) {
        return Err(Error::invalid("edge probability must lie in [0, 1]"));
    }
    let opts = SolveOptions { tol: cfg.tol, ..Default::default() };
    let mut records = Vec::with_capacity(cfg.trials);
    let mut count_noninteger = 0usize;
    let mut count_not_sos = 0usize;
    for trial in 0..cfg.trials {
        let trial_seed = cfg.seed ^ trial as u64;
        let g = Graph::gnp(cfg.n, cfg.p, trial_seed)?;
        let omega = clique_number(&g);
        let sol = theta_prime(&g, &opts)?;
        let value = sol.objective;
        let optimal = sol.status == SolveStatus::Optimal;
        // The optimal status certifies a duality gap of at most
        // 10 tol (1 + |value|); the same slack absorbs the feasibility
        // residual on the primal side.
        let margin = 10.0 * cfg.tol * (1.0 + value.abs());
        let lower = value - margin;
        let upper = sol.dual_bound + 1e-9 * (1.0 + sol.dual_bound.abs());
        let noninteger = optimal && lower.ceil() > upper.floor();
        let certified_not_sos = optimal && lower > omega as f64;
        count_noninteger += noninteger as usize;
        count_not_sos += certified_not_sos as usize;
        records.push(TrialRecord {
            trial,
            seed: trial_seed,
            omega,
            theta_prime: sig12(value),
            upper_bound: sig12(sol.dual_bound),
            status: sol.status,
            iterations: sol.iterations,
            margin: sig12(margin),
            noninteger,
            certified_not_sos,
        });
    }
    let mut summary = ExperimentSummary {
        schema_version: SCHEMA_VERSION,
        tool: ToolInfo::default(),
        config: *cfg,
        count_noninteger_theta_prime: count_noninteger,
        count_margin_certified_not_sos: count_not_sos,
        records,
        content_hash: String::new(),
    };
    summary.content_hash = content_hash(&summary)?;
    Ok(summary)
}
