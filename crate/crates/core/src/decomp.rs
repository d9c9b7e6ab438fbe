//! Exact decision procedures for k-decomposability and weak
//! k-decomposability of pure simplicial complexes, with replayable
//! certificates, plus the Billera-Provan and Hirsch diameter bound checks.
//!
//! A complex is k-decomposable iff it is pure and either a simplex, or some
//! face tau with dim(tau) <= k (a shedding face) satisfies: the deletion
//! keeps the dimension and is k-decomposable, and the link has dimension
//! dim - |tau| and is k-decomposable. The weak variant drops the link
//! conditions. The search is exhaustive over candidate faces in
//! lexicographic order, memoized on the canonical key of each subcomplex.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::sync::atomic::{AtomicU64, Ordering};

use dashmap::DashMap;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::{CanonicalKey, SimplicialComplex};
use crate::error::{Error, Result};
use crate::face::Face;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Strong,
    Weak,
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Mode::Strong => write!(f, "strong"),
            Mode::Weak => write!(f, "weak"),
        }
    }
}

/// Recursive shedding-tree witness for a positive decision. Shedding faces
/// and leaf facets are recorded by vertex label so a certificate can be
/// replayed against any complex presenting the same labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// The simplex base case.
    Leaf { facet: Vec<String> },
    /// A shedding step; `link` is present exactly in strong mode.
    Node {
        shed: Vec<String>,
        deletion: Box<Certificate>,
        link: Option<Box<Certificate>>,
    },
}

impl Certificate {
    /// Number of shedding steps along the deletion spine.
    pub fn depth(&self) -> usize {
        match self {
            Certificate::Leaf { .. } => 0,
            Certificate::Node { deletion, .. } => 1 + deletion.depth(),
        }
    }
}

/// Outcome of a decomposability decision.
#[derive(Clone, Debug)]
pub struct Decision {
    pub result: bool,
    pub mode: Mode,
    pub k: i32,
    /// Present iff `result` is true.
    pub certificate: Option<Certificate>,
    pub nodes_explored: u64,
    pub memo_hits: u64,
    /// First-level failure reasons, populated on a negative decision when
    /// tracing was requested.
    pub trace: Option<Vec<TraceEntry>>,
}

/// Why a first-level candidate shedding face failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FirstLevelFailure {
    DimensionDrop,
    ImpureDeletion,
    RecursiveFailure,
    LinkDimensionWrong,
    ImpureLink,
    LinkRecursiveFailure,
}

impl std::fmt::Display for FirstLevelFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            FirstLevelFailure::DimensionDrop => "dimension drop",
            FirstLevelFailure::ImpureDeletion => "impure deletion",
            FirstLevelFailure::RecursiveFailure => "recursive failure",
            FirstLevelFailure::LinkDimensionWrong => "link dimension wrong",
            FirstLevelFailure::ImpureLink => "impure link",
            FirstLevelFailure::LinkRecursiveFailure => "link recursive failure",
        };
        write!(f, "{s}")
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TraceEntry {
    pub candidate: Vec<String>,
    pub failure: FirstLevelFailure,
}

/// A permutation of vertex labels (identity outside its domain). Used to
/// prune first-level shedding candidates to orbit representatives when the
/// caller knows symmetries of the complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelPermutation {
    map: BTreeMap<String, String>,
}

impl LabelPermutation {
    pub fn from_pairs<I: IntoIterator<Item = (String, String)>>(pairs: I) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (from, to) in pairs {
            if map.insert(from.clone(), to).is_some() {
                return Err(Error::InvalidPermutation(format!(
                    "label `{from}` mapped twice"
                )));
            }
        }
        let keys: BTreeSet<&String> = map.keys().collect();
        let values: BTreeSet<&String> = map.values().collect();
        if keys != values {
            return Err(Error::InvalidPermutation(
                "domain and image differ (not a permutation)".into(),
            ));
        }
        Ok(LabelPermutation { map })
    }

    pub fn image<'a>(&'a self, label: &'a str) -> &'a str {
        self.map.get(label).map(String::as_str).unwrap_or(label)
    }

    /// The permutation as a vertex map of `c`. Errors if it moves a label
    /// outside the complex's label set.
    fn vertex_map(&self, c: &SimplicialComplex) -> Result<Vec<u32>> {
        let mut out = Vec::with_capacity(c.num_vertices());
        for v in 0..c.num_vertices() as u32 {
            let img = self.image(c.label(v));
            let w = c.vertex_by_label(img).ok_or_else(|| {
                Error::InvalidPermutation(format!("image label `{img}` not in complex"))
            })?;
            out.push(w);
        }
        Ok(out)
    }
}

/// Knobs for [`decide`]. The defaults give the deterministic sequential
/// search with memoization.
#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// Memoize subcomplex decisions on their canonical key.
    pub memo: bool,
    /// Number of threads exploring first-level candidates. With `jobs = 1`
    /// the certificate is the lexicographically minimal one; with more jobs
    /// the decision boolean is unchanged but any valid certificate may be
    /// returned.
    pub jobs: usize,
    /// Automorphisms of the input complex; first-level candidates are then
    /// restricted to orbit representatives.
    pub symmetry: Vec<LabelPermutation>,
    /// Record first-level failure reasons on a negative decision.
    pub trace: bool,
    /// Abort with [`Error::NodeLimitExceeded`] beyond this many search nodes.
    pub node_limit: Option<u64>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            memo: true,
            jobs: 1,
            symmetry: Vec::new(),
            trace: false,
            node_limit: None,
        }
    }
}

/// Decides strong k-decomposability with default options.
pub fn is_k_decomposable(c: &SimplicialComplex, k: i32) -> Result<Decision> {
    decide(c, k, Mode::Strong, &SearchOptions::default())
}

/// Decides weak k-decomposability with default options.
pub fn is_weakly_k_decomposable(c: &SimplicialComplex, k: i32) -> Result<Decision> {
    decide(c, k, Mode::Weak, &SearchOptions::default())
}

struct Ctx {
    mode: Mode,
    k: i32,
    memo: Option<DashMap<CanonicalKey, bool>>,
    nodes: AtomicU64,
    memo_hits: AtomicU64,
    node_limit: Option<u64>,
}

impl Ctx {
    fn new(mode: Mode, k: i32, opts: &SearchOptions) -> Self {
        Ctx {
            mode,
            k,
            memo: opts.memo.then(DashMap::new),
            nodes: AtomicU64::new(0),
            memo_hits: AtomicU64::new(0),
            node_limit: opts.node_limit,
        }
    }

    fn count_node(&self) -> Result<()> {
        let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        match self.node_limit {
            Some(limit) if n > limit => Err(Error::NodeLimitExceeded(limit)),
            _ => Ok(()),
        }
    }
}

/// The memoized exhaustive search. Returns the bare boolean; certificates
/// are reconstructed afterwards along the successful path only.
fn search(ctx: &Ctx, c: &SimplicialComplex) -> Result<bool> {
    if !c.is_pure() {
        return Ok(false);
    }
    if c.is_simplex() {
        return Ok(true);
    }
    let key = ctx.memo.as_ref().map(|_| c.canonical_key());
    if let (Some(memo), Some(key)) = (&ctx.memo, &key) {
        if let Some(v) = memo.get(key) {
            ctx.memo_hits.fetch_add(1, Ordering::Relaxed);
            return Ok(*v);
        }
    }
    ctx.count_node()?;
    let d = c.dim();
    let mut result = false;
    // The boolean is order-independent, so try small faces first: vertex
    // sheds keep the state space of induced subcomplexes and hit the memo
    // far more often. Certificates are reconstructed in lexicographic order
    // afterwards.
    let mut candidates = c.faces_up_to_dim(ctx.k);
    candidates.sort_by_key(Face::len);
    for tau in candidates {
        if eval_candidate(ctx, c, d, &tau)? == CandidateOutcome::Success {
            result = true;
            break;
        }
    }
    if let (Some(memo), Some(key)) = (&ctx.memo, key) {
        memo.insert(key, result);
    }
    Ok(result)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum CandidateOutcome {
    Success,
    Fail(FirstLevelFailure),
}

/// Checks the shedding conditions for one candidate face. Purity and
/// dimension side-conditions run before the recursive calls; the deletion
/// branch is explored before the link branch.
fn eval_candidate(
    ctx: &Ctx,
    c: &SimplicialComplex,
    d: i32,
    tau: &Face,
) -> Result<CandidateOutcome> {
    use CandidateOutcome::*;
    use FirstLevelFailure::*;
    let del = c.deletion(tau);
    if del.dim() != d {
        return Ok(Fail(DimensionDrop));
    }
    if !del.is_pure() {
        return Ok(Fail(ImpureDeletion));
    }
    if !search(ctx, &del)? {
        return Ok(Fail(RecursiveFailure));
    }
    if ctx.mode == Mode::Strong {
        let link = c.link(tau).expect("candidates are faces of the complex");
        if link.dim() != d - tau.len() as i32 {
            return Ok(Fail(LinkDimensionWrong));
        }
        if !link.is_pure() {
            return Ok(Fail(ImpureLink));
        }
        if !search(ctx, &link)? {
            return Ok(Fail(LinkRecursiveFailure));
        }
    }
    Ok(Success)
}

/// Walks the successful search again (memoized results make this cheap) and
/// materializes the lexicographically first certificate.
fn reconstruct(ctx: &Ctx, c: &SimplicialComplex) -> Result<Certificate> {
    if c.is_simplex() {
        return Ok(Certificate::Leaf {
            facet: c.face_labels(&c.facets()[0]),
        });
    }
    let d = c.dim();
    for tau in c.faces_up_to_dim(ctx.k) {
        if eval_candidate(ctx, c, d, &tau)? != CandidateOutcome::Success {
            continue;
        }
        let del = c.deletion(&tau);
        let deletion = Box::new(reconstruct(ctx, &del)?);
        let link = match ctx.mode {
            Mode::Weak => None,
            Mode::Strong => {
                let lk = c.link(&tau).expect("candidates are faces");
                Some(Box::new(reconstruct(ctx, &lk)?))
            }
        };
        return Ok(Certificate::Node {
            shed: c.face_labels(&tau),
            deletion,
            link,
        });
    }
    Err(Error::Internal(
        "positive decision but no successful shedding face found during reconstruction".into(),
    ))
}

/// Restricts `candidates` (all faces of dimension <= k, lex-sorted) to the
/// lexicographically least representative of each orbit under the group
/// generated by `perms`. The permutations must be automorphisms of `c`.
fn orbit_representatives(
    c: &SimplicialComplex,
    candidates: Vec<Face>,
    perms: &[LabelPermutation],
) -> Result<Vec<Face>> {
    let universe = c.num_vertices();
    let maps: Vec<Vec<u32>> = perms
        .iter()
        .map(|p| p.vertex_map(c))
        .collect::<Result<_>>()?;
    let facet_set: BTreeSet<&Face> = c.facets().iter().collect();
    for map in &maps {
        for facet in c.facets() {
            let image = apply_map(universe, map, facet);
            if !facet_set.contains(&image) {
                return Err(Error::InvalidPermutation(
                    "permutation is not an automorphism of the complex".into(),
                ));
            }
        }
    }
    let mut seen: BTreeSet<Face> = BTreeSet::new();
    let mut reps = Vec::new();
    for f in &candidates {
        if seen.contains(f) {
            continue;
        }
        reps.push(f.clone());
        let mut queue = VecDeque::new();
        seen.insert(f.clone());
        queue.push_back(f.clone());
        while let Some(g) = queue.pop_front() {
            for map in &maps {
                let h = apply_map(universe, map, &g);
                if seen.insert(h.clone()) {
                    queue.push_back(h);
                }
            }
        }
    }
    Ok(reps)
}

fn apply_map(universe: usize, map: &[u32], f: &Face) -> Face {
    Face::from_vertices(universe, f.iter().map(|v| map[v as usize]))
}

/// Decides (weak) k-decomposability of `c`. Requires `0 <= k <= dim(c)`.
/// An impure complex is decided false (purity is part of the definition),
/// not rejected.
pub fn decide(
    c: &SimplicialComplex,
    k: i32,
    mode: Mode,
    opts: &SearchOptions,
) -> Result<Decision> {
    if k < 0 || k > c.dim() {
        return Err(Error::KOutOfRange { k, dim: c.dim() });
    }
    let ctx = Ctx::new(mode, k, opts);
    let mut decision = Decision {
        result: false,
        mode,
        k,
        certificate: None,
        nodes_explored: 0,
        memo_hits: 0,
        trace: None,
    };
    if !c.is_pure() {
        return Ok(decision);
    }
    ctx.count_node()?;
    if c.is_simplex() {
        decision.result = true;
        decision.certificate = Some(Certificate::Leaf {
            facet: c.face_labels(&c.facets()[0]),
        });
        decision.nodes_explored = 1;
        return Ok(decision);
    }
    let mut candidates = c.faces_up_to_dim(k);
    if !opts.symmetry.is_empty() {
        candidates = orbit_representatives(c, candidates, &opts.symmetry)?;
    }
    let d = c.dim();

    let mut trace: Option<Vec<TraceEntry>> = None;
    let succeeded: bool = if opts.trace {
        // Tracing evaluates every first-level candidate.
        let outcomes: Vec<CandidateOutcome> = if opts.jobs > 1 {
            run_pool(opts.jobs, || {
                candidates
                    .par_iter()
                    .map(|tau| eval_candidate(&ctx, c, d, tau))
                    .collect::<Result<Vec<_>>>()
            })?
        } else {
            candidates
                .iter()
                .map(|tau| eval_candidate(&ctx, c, d, tau))
                .collect::<Result<Vec<_>>>()?
        };
        let ok = outcomes.iter().any(|o| *o == CandidateOutcome::Success);
        if !ok {
            trace = Some(
                candidates
                    .iter()
                    .zip(&outcomes)
                    .map(|(tau, o)| TraceEntry {
                        candidate: c.face_labels(tau),
                        failure: match o {
                            CandidateOutcome::Fail(f) => *f,
                            CandidateOutcome::Success => unreachable!(),
                        },
                    })
                    .collect(),
            );
        }
        ok
    } else {
        let mut by_size = candidates.clone();
        by_size.sort_by_key(Face::len);
        if opts.jobs > 1 {
            run_pool(opts.jobs, || {
                by_size
                    .par_iter()
                    .find_map_any(|tau| match eval_candidate(&ctx, c, d, tau) {
                        Ok(CandidateOutcome::Success) => Some(Ok(())),
                        Ok(CandidateOutcome::Fail(_)) => None,
                        Err(e) => Some(Err(e)),
                    })
                    .transpose()
                    .map(|o| o.is_some())
            })?
        } else {
            let mut found = false;
            for tau in &by_size {
                if eval_candidate(&ctx, c, d, tau)? == CandidateOutcome::Success {
                    found = true;
                    break;
                }
            }
            found
        }
    };

    if succeeded {
        decision.result = true;
        decision.certificate = Some(reconstruct(&ctx, c)?);
    } else {
        decision.trace = trace;
    }
    decision.nodes_explored = ctx.nodes.load(Ordering::Relaxed);
    decision.memo_hits = ctx.memo_hits.load(Ordering::Relaxed);
    Ok(decision)
}

fn run_pool<T: Send>(jobs: usize, f: impl FnOnce() -> Result<T> + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
    pool.install(f)
}

/// Replays a certificate against a complex: purity and dimension
/// side-conditions at every node, leaf facets, and the dim(tau) <= k bound
/// throughout. A malformed or mismatched certificate yields the reason.
pub fn verify_certificate(
    c: &SimplicialComplex,
    cert: &Certificate,
    k: i32,
    mode: Mode,
) -> std::result::Result<(), String> {
    if !c.is_pure() {
        return Err("complex is not pure".into());
    }
    match cert {
        Certificate::Leaf { facet } => {
            if !c.is_simplex() {
                return Err(format!(
                    "leaf certificate at a complex with {} facets",
                    c.num_facets()
                ));
            }
            let f = c
                .face_from_labels(facet)
                .map_err(|e| format!("leaf facet: {e}"))?;
            if f != c.facets()[0] {
                return Err("leaf facet does not match the complex".into());
            }
            Ok(())
        }
        Certificate::Node {
            shed,
            deletion,
            link,
        } => {
            let tau = c
                .face_from_labels(shed)
                .map_err(|e| format!("shedding face: {e}"))?;
            if tau.is_empty() {
                return Err("empty shedding face".into());
            }
            if tau.dim() > k {
                return Err(format!(
                    "shedding face dimension {} exceeds k = {k}",
                    tau.dim()
                ));
            }
            if !c.is_face(&tau) {
                return Err(format!(
                    "shedding face {{{}}} is not a face of the complex",
                    shed.join(" ")
                ));
            }
            let del = c.deletion(&tau);
            if del.dim() != c.dim() {
                return Err("deletion does not preserve dimension".into());
            }
            verify_certificate(&del, deletion, k, mode)?;
            match (mode, link) {
                (Mode::Weak, None) => Ok(()),
                (Mode::Weak, Some(_)) => Err("unexpected link certificate in weak mode".into()),
                (Mode::Strong, None) => Err("missing link certificate in strong mode".into()),
                (Mode::Strong, Some(link_cert)) => {
                    let lk = c.link(&tau).expect("tau verified as a face");
                    if lk.dim() != c.dim() - tau.len() as i32 {
                        return Err("link does not have dimension dim - |tau|".into());
                    }
                    verify_certificate(&lk, link_cert, k, mode)
                }
            }
        }
    }
}

/// Which diameter bound a report refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    BilleraProvanStrong,
    BilleraProvanWeak,
    Hirsch,
}

/// One checked inequality `diameter <= bound_value`.
#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub bound: BoundKind,
    pub diameter: usize,
    pub bound_value: i64,
    pub satisfied: bool,
}

pub(crate) fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1u64;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Billera-Provan bound for a (weakly) k-decomposable complex of dimension
/// d-1: diam <= f_k - C(d, k+1) in strong mode, diam <= 2 f_k in weak mode.
/// The report is meaningful only when the corresponding decomposability
/// decision holds (caller responsibility); it is vacuous otherwise.
pub fn check_billera_provan(c: &SimplicialComplex, k: i32, mode: Mode) -> Result<BoundReport> {
    if k < 0 || k > c.dim() {
        return Err(Error::KOutOfRange { k, dim: c.dim() });
    }
    let rep = c.diameter()?;
    let diameter = rep.diameter.ok_or(Error::Disconnected)?;
    let fk = c.f_k(k)? as i64;
    let d = (c.dim() + 1) as u64;
    let (bound, bound_value) = match mode {
        Mode::Strong => (
            BoundKind::BilleraProvanStrong,
            fk - binomial(d, (k + 1) as u64) as i64,
        ),
        Mode::Weak => (BoundKind::BilleraProvanWeak, 2 * fk),
    };
    Ok(BoundReport {
        bound,
        diameter,
        bound_value,
        satisfied: diameter as i64 <= bound_value,
    })
}

/// Hirsch bound for a pure connected complex on n vertices of dimension
/// d-1: diam <= n - d.
pub fn check_hirsch(c: &SimplicialComplex) -> Result<BoundReport> {
    let rep = c.diameter()?;
    let diameter = rep.diameter.ok_or(Error::Disconnected)?;
    let n = rep.num_vertices as i64;
    let d = (c.dim() + 1) as i64;
    Ok(BoundReport {
        bound: BoundKind::Hirsch,
        diameter,
        bound_value: n - d,
        satisfied: diameter as i64 <= n - d,
    })
}

// ---------------------------------------------------------------------------
// JSON wire format
// ---------------------------------------------------------------------------

/// Wire form of a [`Decision`]:
/// `{"mode":"strong"|"weak","k":int,"result":bool,"certificate":{...}|null,
///   "stats":{"nodes":int,"memo_hits":int}}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DecisionJson {
    pub mode: Mode,
    pub k: i32,
    pub result: bool,
    pub certificate: Option<CertificateJson>,
    pub stats: StatsJson,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StatsJson {
    pub nodes: u64,
    pub memo_hits: u64,
}

/// Wire form of a certificate node. The `facet` field is present exactly at
/// leaves; `shed`/`deletion`/`link` are null there.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CertificateJson {
    #[serde(default)]
    pub shed: Option<Vec<String>>,
    #[serde(default)]
    pub deletion: Option<Box<CertificateJson>>,
    #[serde(default)]
    pub link: Option<Box<CertificateJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub facet: Option<Vec<String>>,
}

impl From<&Certificate> for CertificateJson {
    fn from(cert: &Certificate) -> Self {
        match cert {
            Certificate::Leaf { facet } => CertificateJson {
                shed: None,
                deletion: None,
                link: None,
                facet: Some(facet.clone()),
            },
            Certificate::Node {
                shed,
                deletion,
                link,
            } => CertificateJson {
                shed: Some(shed.clone()),
                deletion: Some(Box::new(deletion.as_ref().into())),
                link: link.as_ref().map(|l| Box::new(l.as_ref().into())),
                facet: None,
            },
        }
    }
}

impl TryFrom<&CertificateJson> for Certificate {
    type Error = String;

    fn try_from(json: &CertificateJson) -> std::result::Result<Self, String> {
        match (&json.facet, &json.shed, &json.deletion) {
            (Some(facet), None, None) => {
                if json.link.is_some() {
                    return Err("leaf with a link subtree".into());
                }
                Ok(Certificate::Leaf {
                    facet: facet.clone(),
                })
            }
            (None, Some(shed), Some(deletion)) => Ok(Certificate::Node {
                shed: shed.clone(),
                deletion: Box::new(deletion.as_ref().try_into()?),
                link: match &json.link {
                    None => None,
                    Some(l) => Some(Box::new(l.as_ref().try_into()?)),
                },
            }),
            _ => Err("certificate node must carry either `facet` or both `shed` and `deletion`"
                .into()),
        }
    }
}

impl Decision {
    pub fn to_json(&self) -> DecisionJson {
        DecisionJson {
            mode: self.mode,
            k: self.k,
            result: self.result,
            certificate: self.certificate.as_ref().map(Into::into),
            stats: StatsJson {
                nodes: self.nodes_explored,
                memo_hits: self.memo_hits,
            },
        }
    }
}
