//! The subcommands. Each maps a record to one serializable line.

use std::io::{self, BufRead, Read, Write};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use nzflow_core::engine::{five_flow_oddness4, CheckName, ClaimLog, EngineError, EngineOptions, Hypothesis, Outcome, PartitionTag};
use nzflow_core::flow::{is_nowhere_zero, solve_nowhere_zero_flow_within, verify_flow, FlowCertificate, FlowError, Imbalance, Solution};
use nzflow_core::structure::{compute_oddness, cyclic_connectivity, is_cyclically_k_connected_within, CyclicConnectivity, CyclicCut, StructureError};
use nzflow_core::valuation::{check_balanced_bruteforce, flow_to_valuation, MAX_BRUTE_FORCE_VERTICES};
use nzflow_core::{Budget, EdgeId, MultiGraph, VertexId};

use crate::input::{self, Record};
use crate::{AnalyzeArgs, CertifyArgs, CyclicArgs, FlowArgs, InputArgs, EXIT_ANOMALY, EXIT_BUDGET, EXIT_INPUT, EXIT_OK};

/// Records handed to the worker pool at a time.
const CHUNK: usize = 256;

enum RecordError {
    Input(String),
    Budget(String),
}

impl From<EngineError> for RecordError {
    fn from(e: EngineError) -> Self {
        match e {
            EngineError::Budget(_) | EngineError::Structure(StructureError::Budget(_)) | EngineError::Flow(FlowError::Budget(_)) => {
                RecordError::Budget(e.to_string())
            }
            other => RecordError::Input(other.to_string()),
        }
    }
}

impl From<StructureError> for RecordError {
    fn from(e: StructureError) -> Self {
        EngineError::from(e).into()
    }
}

impl From<FlowError> for RecordError {
    fn from(e: FlowError) -> Self {
        EngineError::from(e).into()
    }
}

#[derive(Default)]
struct Status {
    input: bool,
    budget: bool,
    anomaly: bool,
}

impl Status {
    fn code(&self) -> i32 {
        if self.input {
            EXIT_INPUT
        } else if self.budget {
            EXIT_BUDGET
        } else if self.anomaly {
            EXIT_ANOMALY
        } else {
            EXIT_OK
        }
    }
}

#[derive(Serialize)]
struct ErrorRecord<'a> {
    id: usize,
    error: &'a str,
}

/// Streams records through `f` on a pool of `args.jobs` threads and writes
/// the results in input order. `f` returns a line and whether it is an
/// anomaly.
fn drive<T, F>(args: &InputArgs, stdin: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write, f: F) -> io::Result<i32>
where
    T: Serialize + Send,
    F: Fn(&Record) -> Result<(T, bool), RecordError> + Sync,
{
    let reader = input::open(&args.input, stdin)?;
    let mut records = input::records(reader)?;
    let pool = rayon::ThreadPoolBuilder::new().num_threads(args.jobs).build().map_err(io::Error::other)?;
    let mut status = Status::default();
    loop {
        let chunk: Vec<_> = records.by_ref().take(CHUNK).collect();
        if chunk.is_empty() {
            break;
        }
        let results: Vec<_> = pool.install(|| {
            chunk
                .par_iter()
                .map(|r| match r {
                    Ok(rec) => (rec.id, "line", f(rec)),
                    Err(e) => (e.id, e.unit, Err(RecordError::Input(e.message.clone()))),
                })
                .collect()
        });
        for (id, unit, result) in results {
            match result {
                Ok((line, anomaly)) => {
                    serde_json::to_writer(&mut *out, &line)?;
                    writeln!(out)?;
                    status.anomaly |= anomaly;
                }
                Err(RecordError::Budget(msg)) => {
                    serde_json::to_writer(&mut *out, &ErrorRecord { id, error: &msg })?;
                    writeln!(out)?;
                    status.budget = true;
                }
                Err(RecordError::Input(msg)) => {
                    writeln!(err, "nzflow: {unit} {id}: {msg}")?;
                    status.input = true;
                    if !args.lenient {
                        return Ok(EXIT_INPUT);
                    }
                }
            }
        }
    }
    Ok(status.code())
}

/// One line of `nzflow analyze`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub id: usize,
    pub n: usize,
    pub m: usize,
    pub oddness: usize,
    pub cyclic_connectivity: Option<CyclicConnectivity>,
    /// `flow_found`, `hypothesis_unmet` or `bad_pair_anomaly`.
    pub outcome: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partition: Option<PartitionTag>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<Hypothesis>,
    /// The 5-flow, from the pipeline or the fallback solver.
    pub certificate: Option<FlowCertificate>,
    pub failed_checks: Vec<CheckName>,
    /// Balance of the flow's valuation over all vertex sets, when small enough.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bruteforce_balanced: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub claim_log: Option<ClaimLog>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub total_ms: f64,
}

pub fn analyze_graph(id: usize, g: &MultiGraph, args: &AnalyzeArgs) -> Result<AnalysisReport, EngineError> {
    let start = Instant::now();
    let opts = EngineOptions {
        check_cyclic: true,
        require_cyclic6: args.require_cyclic6,
        fallback: !args.no_fallback,
        max_work: args.input.max_work,
    };
    let cert = five_flow_oddness4(g, &opts)?;
    let (outcome, partition, reason) = match &cert.outcome {
        Outcome::FlowFound { partition, .. } => ("flow_found", Some(*partition), None),
        Outcome::HypothesisUnmet { reason, .. } => ("hypothesis_unmet", None, Some(reason.clone())),
        Outcome::BadPairAnomaly => ("bad_pair_anomaly", None, None),
    };
    let certificate = cert.flow().cloned();
    let n = g.vertex_count();
    let bruteforce_balanced = match &certificate {
        Some(c) if n <= MAX_BRUTE_FORCE_VERTICES && 1u64 << n <= args.max_subsets => {
            let flow = c.to_flow(g)?;
            let valuation = flow_to_valuation(g, &flow)?;
            Some(check_balanced_bruteforce(g, &valuation)?.balanced)
        }
        _ => None,
    };
    let mut failed_checks: Vec<CheckName> = cert.claim_log.checks().filter(|c| !c.passed).map(|c| c.name).collect();
    failed_checks.sort_unstable();
    failed_checks.dedup();
    Ok(AnalysisReport {
        id,
        n,
        m: g.edge_count(),
        oddness: cert.oddness,
        cyclic_connectivity: cert.cyclic_connectivity,
        outcome: outcome.into(),
        partition,
        reason,
        certificate,
        failed_checks,
        bruteforce_balanced,
        claim_log: args.claim_log.then(|| cert.claim_log.clone()),
        timings: (!args.no_timings).then(|| Timings { total_ms: start.elapsed().as_secs_f64() * 1e3 }),
    })
}

pub fn analyze(args: &AnalyzeArgs, stdin: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> io::Result<i32> {
    drive(&args.input, stdin, out, err, |rec| {
        let report = analyze_graph(rec.id, &rec.graph, args)?;
        let anomaly = report.outcome == "bad_pair_anomaly" || report.bruteforce_balanced == Some(false);
        Ok((report, anomaly))
    })
}

#[derive(Serialize)]
struct OddnessLine {
    id: usize,
    n: usize,
    oddness: usize,
    matching: Vec<EdgeId>,
    odd_circuits: Vec<Vec<VertexId>>,
}

pub fn oddness(args: &InputArgs, stdin: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> io::Result<i32> {
    drive(args, stdin, out, err, |rec| {
        let result = compute_oddness(&rec.graph)?;
        let tf = result.witness;
        let odd_circuits = tf.odd_circuits().map(|c| c.vertices.clone()).collect();
        Ok((OddnessLine { id: rec.id, n: rec.graph.vertex_count(), oddness: result.oddness, matching: tf.matching, odd_circuits }, false))
    })
}

#[derive(Serialize)]
#[serde(untagged)]
enum CyclicLine {
    Threshold { id: usize, k: usize, holds: bool, witness: Option<CyclicCut> },
    Value { id: usize, cyclic_connectivity: CyclicConnectivity, witness: Option<CyclicCut> },
}

pub fn cyclic(args: &CyclicArgs, stdin: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> io::Result<i32> {
    drive(&args.input, stdin, out, err, |rec| {
        let mut budget = Budget::new(args.input.max_work);
        let line = match args.k {
            Some(k) => {
                let check = is_cyclically_k_connected_within(&rec.graph, k, &mut budget)?;
                CyclicLine::Threshold { id: rec.id, k, holds: check.holds, witness: check.witness }
            }
            None => {
                let (value, witness) = cyclic_connectivity(&rec.graph, args.bound, &mut budget)?;
                CyclicLine::Value { id: rec.id, cyclic_connectivity: value, witness }
            }
        };
        Ok((line, false))
    })
}

#[derive(Serialize)]
struct FlowLine {
    id: usize,
    k: u32,
    found: bool,
    certificate: Option<FlowCertificate>,
}

pub fn flow(args: &FlowArgs, stdin: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> io::Result<i32> {
    drive(&args.input, stdin, out, err, |rec| {
        let mut budget = Budget::new(args.input.max_work);
        let certificate = match solve_nowhere_zero_flow_within(&rec.graph, args.k, &mut budget)? {
            Solution::Found(f) => Some(f.to_certificate()),
            Solution::Unsatisfiable => None,
        };
        Ok((FlowLine { id: rec.id, k: args.k, found: certificate.is_some(), certificate }, false))
    })
}

#[derive(Debug, Serialize)]
pub struct Verdict {
    pub id: usize,
    pub verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub zero_edges: Vec<EdgeId>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub imbalanced: Vec<Imbalance>,
}

impl Verdict {
    fn reject(id: usize, reason: String) -> Verdict {
        Verdict { id, verdict: "REJECT", reason: Some(reason), zero_edges: Vec::new(), imbalanced: Vec::new() }
    }
}

/// Accepts exactly the nowhere-zero flows on `g`.
pub fn certify_one(id: usize, g: &MultiGraph, cert: &FlowCertificate) -> Verdict {
    let flow = match cert.to_flow(g) {
        Ok(f) => f,
        Err(e) => return Verdict::reject(id, format!("certificate does not match the graph: {e}")),
    };
    let zero_edges: Vec<EdgeId> = flow.values.iter().enumerate().filter(|&(_, &x)| x == 0).map(|(e, _)| e).collect();
    let imbalanced = match verify_flow(g, &flow) {
        Ok(()) => Vec::new(),
        Err(FlowError::NotConserved(list)) => list,
        Err(e) => return Verdict::reject(id, e.to_string()),
    };
    if zero_edges.is_empty() && imbalanced.is_empty() {
        debug_assert!(is_nowhere_zero(&flow));
        return Verdict { id, verdict: "ACCEPT", reason: None, zero_edges, imbalanced };
    }
    let reason = match (zero_edges.first(), imbalanced.first()) {
        (Some(e), _) => format!("edge {e} carries 0"),
        (None, Some(v)) => format!("conservation fails at vertex {}", v.vertex),
        (None, None) => unreachable!(),
    };
    Verdict { id, verdict: "REJECT", reason: Some(reason), zero_edges, imbalanced }
}

/// Certificates in `text`: one JSON document, or one per line. Analyze
/// reports are unwrapped to their `certificate` field.
fn read_certificates(text: &str) -> Result<Vec<Option<FlowCertificate>>, String> {
    let values: Vec<serde_json::Value> = match serde_json::from_str::<serde_json::Value>(text) {
        Ok(serde_json::Value::Array(items)) => items,
        Ok(v) => vec![v],
        Err(_) => text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty())
            .map(|(i, l)| serde_json::from_str(l).map_err(|e| format!("certificate line {}: {e}", i + 1)))
            .collect::<Result<_, _>>()?,
    };
    values
        .into_iter()
        .enumerate()
        .map(|(i, mut v)| {
            if let Some(inner) = v.get_mut("certificate") {
                v = inner.take();
            }
            if v.is_null() {
                return Ok(None);
            }
            serde_json::from_value(v).map(Some).map_err(|e| format!("certificate {}: {e}", i + 1))
        })
        .collect()
}

pub fn certify(args: &CertifyArgs, stdin: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> io::Result<i32> {
    let mut text = String::new();
    input::open(&args.certificate, stdin)?.read_to_string(&mut text)?;
    let certs = match read_certificates(&text) {
        Ok(c) => c,
        Err(msg) => {
            writeln!(err, "nzflow: {msg}")?;
            return Ok(EXIT_INPUT);
        }
    };
    let mut graphs = Vec::new();
    let mut empty = io::empty();
    for rec in input::records(input::open(&args.graph, &mut empty)?)? {
        match rec {
            Ok(r) => graphs.push(r),
            Err(e) => {
                writeln!(err, "nzflow: {e}")?;
                return Ok(EXIT_INPUT);
            }
        }
    }
    let mut status = Status::default();
    for i in 0..graphs.len().max(certs.len()) {
        let verdict = match (graphs.get(i), certs.get(i)) {
            (Some(r), Some(Some(c))) => certify_one(r.id, &r.graph, c),
            (Some(r), Some(None)) => Verdict::reject(r.id, "no certificate".into()),
            (Some(r), None) => Verdict::reject(r.id, "no certificate for this graph".into()),
            (None, _) => Verdict::reject(i + 1, "certificate without a graph".into()),
        };
        status.anomaly |= verdict.verdict == "REJECT";
        serde_json::to_writer(&mut *out, &verdict)?;
        writeln!(out)?;
    }
    Ok(status.code())
}
