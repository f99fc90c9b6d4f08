//! Command-line front end: graph generation, single-graph analysis with
//! optional certificates, exact decompositions, certificate rechecking, and
//! the random-graph counting experiment.
//!
//! Exit codes: 0 verified, 2 inconclusive or failed re-verification,
//! 3 resource cap, 4 usage or malformed input.

use clap::{Parser, Subcommand, ValueEnum};
use sosperfect::bounds::{
    clique_matrix, decision_margin, separating_hyperplane, theta_prime,
};
use sosperfect::cliques::{clique_number, partitionable_certificate};
use sosperfect::corpus::named_small_graphs;
use sosperfect::graph::{parse_edge_list, to_dot, to_edge_list};
use sosperfect::linalg::{is_psd, SymmetricMatrix};
use sosperfect::quartic::{
    decompose_bipartite, decompose_complete, decompose_complete_telescoping, rational,
};
use sosperfect::report::{
    analyze_graph, build_cone_split_report, build_decomposition_report, build_hyperplane_report,
    recheck, run_experiment, to_json, AnalysisReport, AnalyzeConfig, CertificateReport,
    ConeSplitDocument, ExperimentConfig, ExperimentSummary, GraphSummary, RecheckOutcome,
};
use sosperfect::sdp::{psd_plus_nonneg_membership, ConeMembership, SolveOptions, SolveStatus};
use sosperfect::{Error, Graph};
use std::fmt::Write as _;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const EXIT_INCONCLUSIVE: u8 = 2;
const EXIT_RESOURCE: u8 = 3;
const EXIT_USAGE: u8 = 4;

#[derive(Parser)]
#[command(name = "sosperfect", version, about = "Clique bounds, perfectness \
verdicts, and sum-of-squares certificates for graphs")]
struct Cli {
    /// Solver tolerance for the semidefinite bounds.
    #[arg(long, global = true, default_value_t = 1e-7)]
    tol: f64,
    /// Seed for randomized pieces (graph sampling; recorded in reports).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Refuse input graphs with more vertices than this.
    #[arg(long, global = true, value_name = "N")]
    max_n: Option<usize>,
    /// Output format (dot applies to generate only).
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write the output to a file instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Telescoping,
    Pairwise,
}

#[derive(Subcommand)]
enum Command {
    /// Write a graph from a named family (no arguments lists the families).
    Generate {
        family: Option<String>,
        /// Family parameters, for example `cycle 5` or `gnp 20 0.5`.
        params: Vec<String>,
    },
    /// Compute the bound ladder and verdicts for one graph.
    Analyze {
        /// Edge-list file (`-` reads standard input).
        input: Option<PathBuf>,
        /// Include the exact chromatic number in the ladder (capped).
        #[arg(long)]
        chi: bool,
        /// Run the definitional perfectness scan and the subgraph sweep.
        #[arg(long)]
        perfect: bool,
        /// Attach checkable certificates to the report.
        #[arg(long)]
        certify: bool,
        /// Compute the imperfection ratio (small graphs only).
        #[arg(long)]
        aimp: bool,
        /// Re-verify a previously written report instead of analyzing.
        #[arg(long, value_name = "REPORT",
              conflicts_with_all = ["input", "chi", "perfect", "certify", "aimp"])]
        recheck: Option<PathBuf>,
    },
    /// Sample G(n, p) repeatedly and count certified noninteger bounds.
    Experiment {
        n: usize,
        p: f64,
        trials: usize,
    },
    /// Emit the certificate the verdict calls for, re-verified before exit.
    Certify {
        /// Edge-list file (`-` reads standard input).
        input: Option<PathBuf>,
        /// Re-verify a previously written certificate instead.
        #[arg(long, value_name = "REPORT", conflicts_with = "input")]
        recheck: Option<PathBuf>,
    },
    /// Exact sum-of-squares decomposition (complete or bipartite graphs).
    Decompose {
        /// Edge-list file (`-` reads standard input).
        input: PathBuf,
        /// Complete-graph decomposition to use.
        #[arg(long, value_enum, default_value_t = Method::Telescoping)]
        method: Method,
    },
}

struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn new(code: u8, message: impl Into<String>) -> Self {
        CliError { code, message: message.into() }
    }

    fn usage(message: impl Into<String>) -> Self {
        CliError::new(EXIT_USAGE, message)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::ResourceLimit(_) => EXIT_RESOURCE,
            Error::Numeric(_) => EXIT_INCONCLUSIVE,
            _ => EXIT_USAGE,
        };
        CliError::new(code, e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let opts = SolveOptions { tol: cli.tol, ..Default::default() };
    match &cli.command {
        Command::Generate { family, params } => {
            let Some(family) = family else {
                emit(&cli.out, &family_listing())?;
                return Ok(0);
            };
            let g = build_family(family, params, cli.seed.unwrap_or(0))?;
            check_cap(&g, cli.max_n)?;
            let text = match cli.format.unwrap_or(Format::Text) {
                Format::Text => to_edge_list(&g),
                Format::Dot => to_dot(&g),
                Format::Json => to_json(&GraphSummary::of(&g))?,
            };
            emit(&cli.out, &text)?;
            Ok(0)
        }
        Command::Analyze { input, chi, perfect, certify, aimp, recheck } => {
            if let Some(path) = recheck {
                return run_recheck(path, &cli);
            }
            let g = load_graph(input.as_deref(), cli.max_n)?;
            let cfg = AnalyzeConfig {
                tol: cli.tol,
                seed: cli.seed,
                chi: *chi,
                deep_perfect: *perfect,
                imperfection_ratio: *aimp,
                certificates: *certify,
            };
            let report = analyze_graph(&g, &cfg)?;
            let text = match cli.format.unwrap_or(Format::Json) {
                Format::Json => to_json(&report)?,
                Format::Text => analysis_text(&report),
                Format::Dot => return Err(CliError::usage("dot output applies to generate")),
            };
            emit(&cli.out, &text)?;
            let conclusive = report.sos.solver_status == SolveStatus::Optimal
                && report.sos.verdict_at_clique_number
                    != sosperfect::bounds::SosVerdict::Inconclusive;
            Ok(if conclusive { 0 } else { EXIT_INCONCLUSIVE })
        }
        Command::Experiment { n, p, trials } => {
            let cfg = ExperimentConfig {
                n: *n,
                p: *p,
                trials: *trials,
                seed: cli.seed.unwrap_or(0),
                tol: cli.tol,
            };
            let summary = run_experiment(&cfg)?;
            let text = match cli.format.unwrap_or(Format::Json) {
                Format::Json => to_json(&summary)?,
                Format::Text => experiment_text(&summary),
                Format::Dot => return Err(CliError::usage("dot output applies to generate")),
            };
            emit(&cli.out, &text)?;
            Ok(0)
        }
        Command::Certify { input, recheck } => {
            if let Some(path) = recheck {
                return run_recheck(path, &cli);
            }
            let g = load_graph(input.as_deref(), cli.max_n)?;
            let report = certify_graph(&g, &opts)?;
            // The exit code promises a certificate that survives its own
            // offline recheck, so run it before printing.
            let json = to_json(&report)?;
            let outcome = sosperfect::report::recheck(&json)?;
            if !outcome.passed {
                return Err(CliError::new(
                    EXIT_INCONCLUSIVE,
                    format!("certificate failed re-verification: {}", outcome.notes.join("; ")),
                ));
            }
            let text = match cli.format.unwrap_or(Format::Json) {
                Format::Json => json,
                Format::Text => certificate_text(&report),
                Format::Dot => return Err(CliError::usage("dot output applies to generate")),
            };
            emit(&cli.out, &text)?;
            Ok(0)
        }
        Command::Decompose { input, method } => {
            let g = load_graph(Some(input), cli.max_n)?;
            let n = g.n();
            let (k, dec) = if n >= 1 && g.m() == n * (n - 1) / 2 {
                let (_, dec) = match method {
                    Method::Telescoping => decompose_complete_telescoping(n)?,
                    Method::Pairwise => decompose_complete(n)?,
                };
                (rational(n as i64), dec)
            } else if g.m() == 0 || g.bipartition().is_some() {
                let (_, dec) = decompose_bipartite(&g)?;
                (rational(if g.m() == 0 { 1 } else { 2 }), dec)
            } else {
                return Err(CliError::new(
                    EXIT_INCONCLUSIVE,
                    "exact decompositions cover complete and bipartite graphs; \
                     run certify for the general routes",
                ));
            };
            let report = build_decomposition_report(&g, &k, &dec)?;
            let text = match cli.format.unwrap_or(Format::Json) {
                Format::Json => to_json(&report)?,
                Format::Text => certificate_text(&report),
                Format::Dot => return Err(CliError::usage("dot output applies to generate")),
            };
            emit(&cli.out, &text)?;
            Ok(0)
        }
    }
}

// ----- input/output plumbing -----

fn load_graph(path: Option<&Path>, max_n: Option<usize>) -> Result<Graph, CliError> {
    let Some(path) = path else {
        return Err(CliError::usage("provide an edge-list file or --recheck <REPORT>"));
    };
    let text = if path == Path::new("-") {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        buf
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?
    };
    let g = parse_edge_list(&text)?;
    check_cap(&g, max_n)?;
    Ok(g)
}

fn check_cap(g: &Graph, max_n: Option<usize>) -> Result<(), CliError> {
    match max_n {
        Some(cap) if g.n() > cap => Err(CliError::new(
            EXIT_RESOURCE,
            format!("graph has {} vertices, over the requested cap {cap}", g.n()),
        )),
        _ => Ok(()),
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    let mut owned;
    let text = if text.ends_with('\n') {
        text
    } else {
        owned = String::with_capacity(text.len() + 1);
        owned.push_str(text);
        owned.push('\n');
        &owned
    };
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::usage(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run_recheck(path: &Path, cli: &Cli) -> Result<u8, CliError> {
    let json = std::fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
    let outcome = recheck(&json)?;
    let text = match cli.format.unwrap_or(Format::Json) {
        Format::Json => to_json(&outcome)?,
        Format::Text => recheck_text(&outcome),
        Format::Dot => return Err(CliError::usage("dot output applies to generate")),
    };
    emit(&cli.out, &text)?;
    Ok(if outcome.passed { 0 } else { EXIT_INCONCLUSIVE })
}

// ----- graph families -----

fn family_listing() -> String {
    let mut out = String::from(
        "families:\n\
         \x20 complete N | empty N | cycle N | path N\n\
         \x20 complete-bipartite A B | complete-multipartite S1 S2 ...\n\
         \x20 cycle-power N K | paley Q | mycielski K | gnp N P\n\
         \x20 odd-hole K | odd-antihole K | hamming D T\n\
         \x20 named NAME, one of:\n",
    );
    for (name, _) in named_small_graphs() {
        let _ = writeln!(out, "    {name}");
    }
    out
}

fn build_family(family: &str, params: &[String], seed: u64) -> Result<Graph, CliError> {
    let need = |idx: usize, what: &str| -> Result<&str, CliError> {
        params
            .get(idx)
            .map(String::as_str)
            .ok_or_else(|| CliError::usage(format!("{family} needs {what}")))
    };
    let int = |idx: usize, what: &str| -> Result<usize, CliError> {
        let tok = need(idx, what)?;
        tok.parse()
            .map_err(|_| CliError::usage(format!("{family}: bad {what} {tok:?}")))
    };
    let real = |idx: usize, what: &str| -> Result<f64, CliError> {
        let tok = need(idx, what)?;
        tok.parse()
            .map_err(|_| CliError::usage(format!("{family}: bad {what} {tok:?}")))
    };
    let exactly = |count: usize| -> Result<(), CliError> {
        if params.len() == count {
            Ok(())
        } else {
            Err(CliError::usage(format!(
                "{family} takes {count} parameter{}",
                if count == 1 { "" } else { "s" }
            )))
        }
    };
    let g = match family {
        "complete" => {
            exactly(1)?;
            Graph::complete(int(0, "a vertex count")?)
        }
        "empty" => {
            exactly(1)?;
            Graph::empty(int(0, "a vertex count")?)
        }
        "cycle" => {
            exactly(1)?;
            Graph::cycle(int(0, "a length")?)?
        }
        "path" => {
            exactly(1)?;
            Graph::path(int(0, "a length")?)?
        }
        "complete-bipartite" => {
            exactly(2)?;
            Graph::complete_bipartite(int(0, "a side size")?, int(1, "a side size")?)
        }
        "complete-multipartite" => {
            if params.is_empty() {
                return Err(CliError::usage("complete-multipartite needs part sizes"));
            }
            let sizes = (0..params.len())
                .map(|i| int(i, "a part size"))
                .collect::<Result<Vec<_>, _>>()?;
            Graph::complete_multipartite(&sizes)?
        }
        "cycle-power" => {
            exactly(2)?;
            Graph::cycle_power(int(0, "a length")?, int(1, "a power")?)?
        }
        "paley" => {
            exactly(1)?;
            Graph::paley(int(0, "a prime = 1 mod 4")?)?
        }
        "mycielski" => {
            exactly(1)?;
            Graph::mycielski(int(0, "an index k >= 2")?)?
        }
        "gnp" => {
            exactly(2)?;
            Graph::gnp(int(0, "a vertex count")?, real(1, "an edge probability")?, seed)?
        }
        "odd-hole" => {
            exactly(1)?;
            Graph::odd_hole(int(0, "an index k >= 2")?)?
        }
        "odd-antihole" => {
            exactly(1)?;
            Graph::odd_antihole(int(0, "an index k >= 2")?)?
        }
        "hamming" => {
            exactly(2)?;
            Graph::hamming_distance(int(0, "a tuple length")?, int(1, "a distance")?)?
        }
        "named" => {
            exactly(1)?;
            let name = need(0, "a fixture name")?;
            named_small_graphs()
                .into_iter()
                .find(|(n, _)| *n == name)
                .map(|(_, g)| g)
                .ok_or_else(|| {
                    CliError::usage(format!("unknown fixture {name:?}; run generate to list"))
                })?
        }
        other => {
            return Err(CliError::usage(format!(
                "unknown family {other:?}; run generate with no arguments to list"
            )))
        }
    };
    Ok(g)
}

// ----- certify dispatch -----

/// Picks the certificate the verdict calls for: exact decompositions for
/// complete and bipartite graphs, a separating hyperplane (plus the
/// clique-partition witness when available) above the clique number, an
/// explicit psd-plus-nonnegative split at it.
fn certify_graph(g: &Graph, opts: &SolveOptions) -> Result<CertificateReport, CliError> {
    let n = g.n();
    if n >= 1 && g.m() == n * (n - 1) / 2 {
        let (_, dec) = decompose_complete_telescoping(n)?;
        return Ok(build_decomposition_report(g, &rational(n as i64), &dec)?);
    }
    if g.m() == 0 || g.bipartition().is_some() {
        let (_, dec) = decompose_bipartite(g)?;
        let k = rational(if g.m() == 0 { 1 } else { 2 });
        return Ok(build_decomposition_report(g, &k, &dec)?);
    }
    let omega = clique_number(g) as f64;
    let sol = theta_prime(g, opts)?;
    let margin = decision_margin(opts.tol, omega);
    if sol.status == SolveStatus::Optimal && sol.objective > omega + margin {
        let hp = separating_hyperplane(g, opts)?;
        let partitionable = partitionable_certificate(g).unwrap_or(None);
        return Ok(build_hyperplane_report(g, &hp, partitionable)?);
    }
    if sol.status == SolveStatus::Optimal && sol.dual_bound <= omega + margin {
        return Ok(build_cone_split_report(g, split_at_clique_number(g, omega, opts)?)?);
    }
    Err(CliError::new(
        EXIT_INCONCLUSIVE,
        format!(
            "inconclusive at tolerance {}: the bracket [{:.9}, {:.9}] straddles the \
             decision margin around the clique number {omega}",
            opts.tol, sol.objective, sol.dual_bound
        ),
    ))
}

/// Explicit split of the coefficient matrix at the clique number. The
/// threshold sits exactly there, so the matrix lies on the cone boundary;
/// two exact candidates cover most graphs before the solver is asked.
fn split_at_clique_number(
    g: &Graph,
    omega: f64,
    opts: &SolveOptions,
) -> Result<ConeSplitDocument, CliError> {
    let m = clique_matrix(g, omega);
    let scale = 1.0 + m.max_abs();
    if is_psd(&m, 1e-10 * scale)? {
        return Ok(ConeSplitDocument {
            k: omega,
            psd_part: m,
            nonneg_part: SymmetricMatrix::zeros(g.n()),
            split_residual: 0.0,
        });
    }
    let nonneg = SymmetricMatrix::from_fn(g.n(), |i, j| {
        if i != j && !g.has_edge(i, j) {
            omega - 1.0
        } else {
            0.0
        }
    });
    let rest = m.add_scaled(&nonneg, -1.0);
    if is_psd(&rest, 1e-10 * scale)? {
        return Ok(ConeSplitDocument {
            k: omega,
            psd_part: rest,
            nonneg_part: nonneg,
            split_residual: 0.0,
        });
    }
    match psd_plus_nonneg_membership(&m, opts)? {
        ConeMembership::Member { psd_part, nonneg_part, split_residual } => Ok(ConeSplitDocument {
            k: omega,
            psd_part,
            nonneg_part,
            split_residual,
        }),
        _ => Err(CliError::new(
            EXIT_INCONCLUSIVE,
            "threshold sits at the clique number but no explicit split reached the \
             decision margin",
        )),
    }
}

// ----- text renderings -----

fn analysis_text(r: &AnalysisReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "graph: {} vertices, {} edges, max degree {}",
        r.graph.n, r.graph.m, r.graph.max_degree
    );
    let _ = writeln!(out, "omega       = {}", r.ladder.omega);
    let _ = writeln!(
        out,
        "theta_prime = {:.9}  (upper bound {:.9}, {:?})",
        r.ladder.theta_prime, r.sos.threshold_upper_bound, r.sos.solver_status
    );
    let _ = writeln!(out, "theta       = {:.9}", r.ladder.theta);
    let _ = writeln!(out, "gamma       = {:.9}", r.ladder.gamma);
    let _ = writeln!(out, "tau         = {}", r.ladder.tau);
    if let Some(chi) = r.ladder.chromatic {
        let _ = writeln!(out, "chromatic   = {chi}");
    }
    let _ = writeln!(
        out,
        "form at omega: {:?} (margin {:.3e}, shift {:.9})",
        r.sos.verdict_at_clique_number, r.sos.margin, r.sos.p_sos
    );
    if let Some(p) = &r.perfect {
        let _ = writeln!(out, "perfect: {} ({:?})", p.perfect, p.method);
    }
    if let Some(p) = &r.perfect_by_definition {
        let _ = writeln!(out, "perfect by definition: {}", p.perfect);
    }
    if let Some(sp) = &r.sos_perfect {
        let _ = writeln!(
            out,
            "sos on every subgraph: {} ({} subgraphs checked)",
            sp.sos_perfect, sp.subgraphs_checked
        );
    }
    if let Some(ratio) = r.imperfection_ratio {
        let _ = writeln!(out, "imperfection ratio: {ratio:.9}");
    }
    if let Some(c) = &r.certificates {
        let mut kinds = vec!["dominance", "scaled-dominance"];
        if c.partitionable.is_some() {
            kinds.push("partitionable");
        }
        if c.hyperplane.is_some() {
            kinds.push("hyperplane");
        }
        if c.decomposition.is_some() {
            kinds.push("decomposition");
        }
        let _ = writeln!(out, "certificates: {}", kinds.join(", "));
    }
    for s in &r.skipped {
        let _ = writeln!(out, "skipped: {s}");
    }
    out
}

fn certificate_text(r: &CertificateReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{} for {} vertices, {} edges",
        r.kind, r.graph.n, r.graph.m
    );
    if let Some(doc) = &r.decomposition {
        let _ = writeln!(out, "level k = {}", doc.k);
        let _ = writeln!(out, "{}", doc.rendered);
    }
    if let Some(doc) = &r.separation {
        let hp = &doc.hyperplane;
        let _ = writeln!(
            out,
            "clique number {} < bound {:.9}; inner product with the form {:.9}",
            hp.omega, hp.bound_value, hp.separation
        );
        if let Some(p) = &doc.partitionable {
            let _ = writeln!(
                out,
                "clique-partition witness: {} maximum cliques, objective {:.9}",
                p.num_max_cliques, p.objective
            );
        }
    }
    if let Some(doc) = &r.cone_split {
        let _ = writeln!(
            out,
            "psd + nonnegative split at k = {} (residual {:.3e})",
            doc.k, doc.split_residual
        );
    }
    out
}

fn experiment_text(s: &ExperimentSummary) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "n = {}, p = {}, trials = {}, seed = {}, tol = {:.1e}",
        s.config.n, s.config.p, s.config.trials, s.config.seed, s.config.tol
    );
    let _ = writeln!(out, "noninteger clique bounds: {}", s.count_noninteger_theta_prime);
    let _ = writeln!(
        out,
        "certified above the clique number: {}",
        s.count_margin_certified_not_sos
    );
    out
}

fn recheck_text(o: &RecheckOutcome) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}: {}", o.kind, if o.passed { "verified" } else { "FAILED" });
    for n in &o.notes {
        let _ = writeln!(out, "  {n}");
    }
    out
}
