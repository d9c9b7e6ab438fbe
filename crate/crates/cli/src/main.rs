//! `shed` - decide (weak) k-decomposability of simplicial complexes, build
//! transportation polytopes and their polar complexes, and check diameter
//! bounds.
//!
//! Exit codes: 0 = command completed (a decision may still be `false`),
//! 2 = input error, 3 = internal invariant violation, 4 = node limit
//! exceeded.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use shed_core::decomp::{
    check_billera_provan, check_hirsch, decide, verify_certificate, Certificate, Mode,
    SearchOptions,
};
use shed_core::family::{self, FamilySpec, Parity};
use shed_core::io::{parse_cplx, to_cplx};
use shed_core::transport::{format_vertex_dump, make_polytope};
use shed_core::SimplicialComplex;

#[derive(Parser)]
#[command(
    name = "shed",
    version,
    about = "Decomposability decisions, transportation polytopes, and diameter bounds for simplicial complexes"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a complex or polytope and write it to a file
    Gen {
        #[command(subcommand)]
        what: GenCmd,
    },
    /// Decide (weak) k-decomposability of a .cplx complex
    Check {
        /// Input .cplx file
        input: PathBuf,
        /// Maximum shedding face dimension
        #[arg(long)]
        k: i32,
        /// strong = with link conditions, weak = deletion only
        #[arg(long, value_enum)]
        mode: ModeArg,
        /// On a negative decision, list the first-level failure reason per
        /// candidate face
        #[arg(long)]
        trace: bool,
        /// Prune first-level candidates by the column symmetry of u*/v*
        /// labeled complexes
        #[arg(long)]
        symmetry: bool,
        /// Threads for the first search level (1 = deterministic
        /// certificate)
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Abort (exit 4) after this many search nodes
        #[arg(long)]
        limit_nodes: Option<u64>,
        /// Write the decision with its certificate as JSON
        #[arg(long)]
        cert: Option<PathBuf>,
        /// Write the full run report as JSON
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Compute the facet-ridge diameter of a pure connected complex
    Diameter {
        /// Input .cplx file
        input: PathBuf,
        /// Also check the Hirsch bound diam <= n - d
        #[arg(long)]
        hirsch: bool,
        /// Also check the Billera-Provan bound for this k (requires
        /// --bp-mode)
        #[arg(long)]
        bp_k: Option<i32>,
        /// Mode for the Billera-Provan bound (requires --bp-k)
        #[arg(long, value_enum)]
        bp_mode: Option<ModeArg>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Replay a decision certificate against a complex
    Verify {
        /// Input .cplx file
        input: PathBuf,
        /// Decision JSON produced by `check --cert`
        #[arg(long)]
        cert: PathBuf,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum GenCmd {
    /// A member of the non-weakly-vertex-decomposable families
    Family {
        #[arg(long, value_enum)]
        parity: ParityArg,
        #[arg(long)]
        m: u32,
        /// Output path (stdout if omitted)
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// A transportation polytope from margins, or its polar complex
    Transport {
        /// Row margins, comma separated
        #[arg(long, value_delimiter = ',', required = true)]
        rows: Vec<i64>,
        /// Column margins, comma separated
        #[arg(long, value_delimiter = ',', required = true)]
        cols: Vec<i64>,
        /// Emit the polar simplicial complex (.cplx) instead of polytope
        /// JSON
        #[arg(long)]
        polar: bool,
        /// Also dump the enumerated vertex matrices to this path
        #[arg(long)]
        vertices: Option<PathBuf>,
        /// Output path (stdout if omitted)
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Strong,
    Weak,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Strong => Mode::Strong,
            ModeArg::Weak => Mode::Weak,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ParityArg {
    Even,
    Odd,
}

impl From<ParityArg> for Parity {
    fn from(p: ParityArg) -> Parity {
        match p {
            ParityArg::Even => Parity::Even,
            ParityArg::Odd => Parity::Odd,
        }
    }
}

struct Failure {
    code: u8,
    msg: String,
}

impl Failure {
    fn input(msg: impl Into<String>) -> Self {
        Failure {
            code: 2,
            msg: msg.into(),
        }
    }
}

impl From<shed_core::Error> for Failure {
    fn from(e: shed_core::Error) -> Self {
        let code = match e {
            shed_core::Error::Internal(_) => 3,
            shed_core::Error::NodeLimitExceeded(_) => 4,
            _ => 2,
        };
        Failure {
            code,
            msg: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::input(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::input(format!("invalid JSON: {e}"))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}

/// Report written by `--json`: identical inputs and flags produce identical
/// reports except for `wall_time_ms`.
#[derive(Serialize)]
struct RunReport {
    command: String,
    argv: Vec<String>,
    input_digest: String,
    result: Value,
    wall_time_ms: u64,
}

fn digest(bytes: &[u8]) -> String {
    let hash = Sha256::digest(bytes);
    let hex: String = hash.iter().map(|b| format!("{b:02x}")).collect();
    format!("sha256:{hex}")
}

fn write_report(
    path: Option<&Path>,
    command: &str,
    input_digest: String,
    result: Value,
    started: Instant,
) -> Result<(), Failure> {
    let Some(path) = path else {
        return Ok(());
    };
    let report = RunReport {
        command: command.to_string(),
        argv: std::env::args().skip(1).collect(),
        input_digest,
        result,
        wall_time_ms: started.elapsed().as_millis() as u64,
    };
    let mut text = serde_json::to_string_pretty(&report)?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}

fn emit(out: Option<&Path>, payload: &str) -> Result<String, Failure> {
    match out {
        Some(path) => {
            std::fs::write(path, payload)?;
            Ok(path.display().to_string())
        }
        None => {
            std::io::stdout().write_all(payload.as_bytes())?;
            Ok("-".to_string())
        }
    }
}

fn load_complex(path: &Path) -> Result<SimplicialComplex, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    let (complex, dropped) = parse_cplx(&text)?;
    if dropped > 0 {
        eprintln!("warning: {dropped} non-maximal input face(s) dropped");
    }
    Ok(complex)
}

fn complex_summary(c: &SimplicialComplex) -> String {
    format!(
        "complex: {} vertices, {} facets, dimension {}, {}",
        c.num_vertices(),
        c.num_facets(),
        c.dim(),
        if c.is_pure() { "pure" } else { "not pure" }
    )
}

fn run(cmd: Cmd) -> Result<(), Failure> {
    let started = Instant::now();
    match cmd {
        Cmd::Gen { what } => run_gen(what, started),
        Cmd::Check {
            input,
            k,
            mode,
            trace,
            symmetry,
            jobs,
            limit_nodes,
            cert,
            json,
        } => run_check(
            &input,
            k,
            mode.into(),
            trace,
            symmetry,
            jobs,
            limit_nodes,
            cert.as_deref(),
            json.as_deref(),
            started,
        ),
        Cmd::Diameter {
            input,
            hirsch,
            bp_k,
            bp_mode,
            json,
        } => run_diameter(
            &input,
            hirsch,
            bp_k,
            bp_mode.map(Into::into),
            json.as_deref(),
            started,
        ),
        Cmd::Verify { input, cert, json } => {
            run_verify(&input, &cert, json.as_deref(), started)
        }
    }
}

fn run_gen(what: GenCmd, started: Instant) -> Result<(), Failure> {
    match what {
        GenCmd::Family { parity, m, out, json } => {
            let spec = FamilySpec::new(parity.into(), m)?;
            let complex = spec.generate();
            let payload = to_cplx(&complex);
            let path = emit(out.as_deref(), &payload)?;
            eprintln!(
                "wrote {} ({} vertices, {} facets)",
                path,
                complex.num_vertices(),
                complex.num_facets()
            );
            let result = json!({
                "kind": "complex",
                "path": path,
                "vertices": complex.num_vertices(),
                "facets": complex.num_facets(),
            });
            write_report(
                json.as_deref(),
                "gen family",
                digest(complex.canonical_form().as_bytes()),
                result,
                started,
            )
        }
        GenCmd::Transport {
            rows,
            cols,
            polar,
            vertices,
            out,
            json,
        } => {
            let polytope = make_polytope(rows, cols)?;
            if let Some(vpath) = &vertices {
                let dump = format_vertex_dump(&polytope.enumerate_vertices());
                std::fs::write(vpath, dump)?;
                eprintln!("wrote vertex dump to {}", vpath.display());
            }
            if polar {
                let complex = polytope.polar_complex()?;
                let payload = to_cplx(&complex);
                let path = emit(out.as_deref(), &payload)?;
                eprintln!(
                    "wrote {} ({} vertices, {} facets)",
                    path,
                    complex.num_vertices(),
                    complex.num_facets()
                );
                let result = json!({
                    "kind": "complex",
                    "path": path,
                    "vertices": complex.num_vertices(),
                    "facets": complex.num_facets(),
                });
                write_report(
                    json.as_deref(),
                    "gen transport",
                    digest(complex.canonical_form().as_bytes()),
                    result,
                    started,
                )
            } else {
                let mut payload = serde_json::to_string(polytope.margins())?;
                payload.push('\n');
                let path = emit(out.as_deref(), &payload)?;
                eprintln!(
                    "wrote {} (dimension {}, {} facet cells)",
                    path,
                    polytope.dim(),
                    polytope.facet_cells().len()
                );
                let result = json!({
                    "kind": "polytope",
                    "path": path,
                    "rows": polytope.margins().rows(),
                    "cols": polytope.margins().cols(),
                    "dim": polytope.dim(),
                    "facet_cells": polytope.facet_cells().len(),
                });
                write_report(
                    json.as_deref(),
                    "gen transport",
                    digest(payload.as_bytes()),
                    result,
                    started,
                )
            }
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn run_check(
    input: &Path,
    k: i32,
    mode: Mode,
    trace: bool,
    symmetry: bool,
    jobs: usize,
    limit_nodes: Option<u64>,
    cert_path: Option<&Path>,
    json: Option<&Path>,
    started: Instant,
) -> Result<(), Failure> {
    let complex = load_complex(input)?;
    println!("{}", complex_summary(&complex));

    let symmetry_gens = if symmetry {
        family::column_symmetry_for(&complex).ok_or_else(|| {
            Failure::input(
                "--symmetry requires the u1..un / v1..vn labeling of a 2 x n polar complex",
            )
        })?
    } else {
        Vec::new()
    };
    let opts = SearchOptions {
        memo: true,
        jobs,
        symmetry: symmetry_gens,
        trace,
        node_limit: limit_nodes,
    };
    let decision = decide(&complex, k, mode, &opts)?;

    let kind = match mode {
        Mode::Strong => format!("{k}-decomposable"),
        Mode::Weak => format!("weakly {k}-decomposable"),
    };
    if decision.result {
        println!("decision: {kind} (result = true)");
    } else {
        println!("decision: NOT {kind} (result = false)");
        if !complex.is_pure() {
            println!("reason: complex is not pure, which the definition requires");
        }
    }
    println!(
        "nodes explored: {}, memo hits: {}",
        decision.nodes_explored, decision.memo_hits
    );
    if let Some(cert) = &decision.certificate {
        verify_certificate(&complex, cert, k, mode).map_err(|reason| Failure {
            code: 3,
            msg: format!("produced certificate failed replay: {reason}"),
        })?;
        println!("certificate: {} shedding steps, replay verified", cert.depth());
    }
    if let Some(entries) = &decision.trace {
        for e in entries {
            println!("  candidate {{{}}}: {}", e.candidate.join(" "), e.failure);
        }
    }

    let decision_json = decision.to_json();
    if let Some(path) = cert_path {
        let mut text = serde_json::to_string_pretty(&decision_json)?;
        text.push('\n');
        std::fs::write(path, text)?;
        println!("decision JSON written to {}", path.display());
    }
    write_report(
        json,
        "check",
        digest(complex.canonical_form().as_bytes()),
        serde_json::to_value(&decision_json)?,
        started,
    )
}

fn run_diameter(
    input: &Path,
    hirsch: bool,
    bp_k: Option<i32>,
    bp_mode: Option<Mode>,
    json: Option<&Path>,
    started: Instant,
) -> Result<(), Failure> {
    let complex = load_complex(input)?;
    println!("{}", complex_summary(&complex));
    let report = complex.diameter()?;
    let Some(diameter) = report.diameter else {
        return Err(shed_core::Error::Disconnected.into());
    };
    let (f, g) = report.eccentric_pair.as_ref().expect("connected");
    println!(
        "diameter: {diameter} (between {{{}}} and {{{}}})",
        complex.face_labels(f).join(" "),
        complex.face_labels(g).join(" ")
    );

    let mut bounds = Vec::new();
    if hirsch {
        let b = check_hirsch(&complex)?;
        println!(
            "hirsch: {} <= {}: {}",
            b.diameter,
            b.bound_value,
            if b.satisfied { "satisfied" } else { "VIOLATED" }
        );
        bounds.push(b);
    }
    match (bp_k, bp_mode) {
        (Some(k), Some(mode)) => {
            let b = check_billera_provan(&complex, k, mode)?;
            println!(
                "billera-provan ({mode}, k={k}): {} <= {}: {} (meaningful only if the complex is {} {k}-decomposable)",
                b.diameter,
                b.bound_value,
                if b.satisfied { "satisfied" } else { "VIOLATED" },
                match mode {
                    Mode::Strong => "",
                    Mode::Weak => "weakly",
                },
            );
            bounds.push(b);
        }
        (None, None) => {}
        _ => {
            return Err(Failure::input(
                "--bp-k and --bp-mode must be given together",
            ))
        }
    }

    let result = json!({
        "diameter": diameter,
        "num_vertices": report.num_vertices,
        "dim": report.dim,
        "eccentric_pair": [complex.face_labels(f), complex.face_labels(g)],
        "bounds": bounds,
    });
    write_report(
        json,
        "diameter",
        digest(complex.canonical_form().as_bytes()),
        result,
        started,
    )
}

fn run_verify(
    input: &Path,
    cert_path: &Path,
    json: Option<&Path>,
    started: Instant,
) -> Result<(), Failure> {
    let complex = load_complex(input)?;
    let text = std::fs::read_to_string(cert_path)
        .map_err(|e| Failure::input(format!("{}: {e}", cert_path.display())))?;
    let decision_json: shed_core::decomp::DecisionJson = serde_json::from_str(&text)?;

    let outcome: Result<(), String> = match &decision_json.certificate {
        None => Err("no certificate present in the decision JSON".into()),
        Some(cert_json) => Certificate::try_from(cert_json)
            .and_then(|cert| verify_certificate(&complex, &cert, decision_json.k, decision_json.mode)),
    };
    let accepted = outcome.is_ok();
    let reason = outcome.err();
    println!(
        "certificate ({}, k = {}): {}",
        decision_json.mode,
        decision_json.k,
        if accepted {
            "ACCEPTED".to_string()
        } else {
            format!("REJECTED: {}", reason.as_deref().unwrap_or(""))
        }
    );

    let result = json!({
        "accepted": accepted,
        "reason": reason,
        "mode": decision_json.mode,
        "k": decision_json.k,
    });
    write_report(
        json,
        "verify",
        digest(complex.canonical_form().as_bytes()),
        result,
        started,
    )
}
