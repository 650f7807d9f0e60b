//! The 5-flow pipeline for cubic graphs of oddness at most 4.
//!
//! Two flow partitions are built from the canonical 4-flow on `M_G`, with
//! `z_1, z_3` white in the first and `z_1, z_4` white in the second. If the
//! `+-5/3` valuation of either is balanced it becomes a 5-flow. Otherwise
//! the violators are taken apart and every derived property is recorded.

mod claims;
mod quad;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::budget::{Budget, BudgetExceeded};
use crate::coloring::{canonical_coloring, Coloring4};
use crate::flow::{
    build_augmented, canonical_4flow, solve_nowhere_zero_flow_within, switch_path, AugmentedGraph, Flow,
    FlowCertificate, FlowError, Solution,
};
use crate::graph::{GraphError, MultiGraph, VertexId, VertexSet};
use crate::structure::{compute_oddness, cyclic_connectivity, CyclicConnectivity, StructureError, TwoFactor};
use crate::valuation::{check_balanced_mincut, flow_partition, to_five_thirds, valuation_to_flow, FlowPartition, ValuationError, Violator};

pub use claims::{bad_cut, is_bad_cut, validate_violator_claims, BadCutCertificate, ClaimReport};
pub use quad::{parity_contradiction_check, quad_decompose, CrossCut, ParityReport, PartParity, PathCrossings, QuadDecomposition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Flow(#[from] FlowError),
    #[error(transparent)]
    Valuation(#[from] ValuationError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
    #[error("expected four path ends, found {0}")]
    ZCount(usize),
    #[error("partition covers {found} vertices, graph has {expected}")]
    PartitionSize { expected: usize, found: usize },
    #[error("set does not violate the valuation (5k - 3|cut| = {margin})")]
    NotAViolator { margin: i64 },
    #[error("removing the cut leaves {0} components, expected 2")]
    CutComponents(usize),
    #[error("part {part} holds {count} path ends, expected 1")]
    ZMisplaced { part: usize, count: usize },
}

/// `Primary` is `P(A, B)` with `z_1, z_3` white; `Switched` is `P(A', B')`
/// with `z_1, z_4` white.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PartitionTag {
    Primary,
    Switched,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckName {
    CutParity,
    MatchingBound,
    PathBound,
    ColorOneMajority,
    ColorTwoMajority,
    ZSplit,
    SixCutProfile,
    ConnectedSides,
    BadCut,
    PartBoundary,
    FiveBoundaries,
    CrossCuts,
    PathCrossesFirstCut,
    PathCrossesSecondCut,
    CircuitCrossesEvenly,
    PathEndParity,
    BoundaryInH,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: CheckName,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: CheckName, passed: bool, detail: String) -> Check {
        Check { name, passed, detail }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EngineOptions {
    /// Compute cyclic edge-connectivity up front. It is computed anyway
    /// when both valuations fail.
    pub check_cyclic: bool,
    /// Stop with `HypothesisUnmet` before the partition checks when the
    /// graph is not cyclically 6-edge-connected.
    pub require_cyclic6: bool,
    /// Attach a 5-flow from the generic solver to `HypothesisUnmet`.
    pub fallback: bool,
    /// Work budget shared by the cyclic-connectivity search and the solver.
    pub max_work: Option<u64>,
}

impl Default for EngineOptions {
    fn default() -> Self {
        EngineOptions { check_cyclic: true, require_cyclic6: false, fallback: true, max_work: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Hypothesis {
    OddnessAbove4 { oddness: usize },
    CyclicBelow6 { connectivity: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Outcome {
    FlowFound { flow: FlowCertificate, partition: PartitionTag },
    HypothesisUnmet { reason: Hypothesis, fallback: Option<FlowCertificate> },
    BadPairAnomaly,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionCheck {
    pub partition: PartitionTag,
    pub white: VertexSet,
    pub balanced: bool,
    pub violator: Option<Violator>,
}

/// What was found when both valuations fail.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViolatorDiagnostics {
    pub partition: PartitionTag,
    pub claims: ClaimReport,
    /// Present when `∂S` is bad for the partition.
    pub bad_cut: Option<BadCutCertificate>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ClaimLog {
    pub partitions: Vec<PartitionCheck>,
    pub violators: Vec<ViolatorDiagnostics>,
    pub quad: Option<QuadDecomposition>,
    pub parity: Option<ParityReport>,
    /// Why a later stage was not reached.
    pub stopped: Option<String>,
}

impl ClaimLog {
    /// Every recorded check, in pipeline order.
    pub fn checks(&self) -> impl Iterator<Item = &Check> {
        self.violators
            .iter()
            .flat_map(|v| v.claims.checks.iter())
            .chain(self.quad.iter().flat_map(|q| q.checks.iter()))
            .chain(self.parity.iter().flat_map(|p| p.checks.iter()))
    }

    pub fn all_passed(&self) -> bool {
        self.checks().all(|c| c.passed)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiveFlowCertificate {
    /// Odd circuits of the 2-factor the coloring was built from.
    pub oddness: usize,
    pub cyclic_connectivity: Option<CyclicConnectivity>,
    /// Path ends `z_1..z_{2t}` of the canonical coloring.
    pub z: Vec<VertexId>,
    pub outcome: Outcome,
    pub claim_log: ClaimLog,
}

impl FiveFlowCertificate {
    /// The 5-flow carried by the outcome, if any.
    pub fn flow(&self) -> Option<&FlowCertificate> {
        match &self.outcome {
            Outcome::FlowFound { flow, .. } => Some(flow),
            Outcome::HypothesisUnmet { fallback, .. } => fallback.as_ref(),
            Outcome::BadPairAnomaly => None,
        }
    }
}

fn is_cyclic6(c: CyclicConnectivity) -> bool {
    matches!(c, CyclicConnectivity::AtLeast(_))
}

fn connectivity_value(c: CyclicConnectivity) -> usize {
    match c {
        CyclicConnectivity::Exact(k) | CyclicConnectivity::AtLeast(k) => k,
    }
}

/// The two normalized flow partitions; only the first when `t = 0`.
pub fn normalized_partitions(ag: &AugmentedGraph) -> Result<Vec<(PartitionTag, FlowPartition)>, EngineError> {
    let mut f = canonical_4flow(ag, &ag.default_orientations())?;
    let z = &ag.coloring.z;
    let white = |f: &Flow, v: VertexId| -> Result<bool, EngineError> { Ok(flow_partition(ag, f)?.is_white(v)) };
    if let Some(&z1) = z.first() {
        if !white(&f, z1)? {
            f = f.negated();
        }
    }
    if z.len() >= 4 && !white(&f, z[2])? {
        f = switch_path(ag, &f, 1)?;
    }
    let mut out = vec![(PartitionTag::Primary, flow_partition(ag, &f)?)];
    if ag.t() > 0 {
        let switched = switch_path(ag, &f, ag.t() - 1)?;
        out.push((PartitionTag::Switched, flow_partition(ag, &switched)?));
    }
    Ok(out)
}

fn fallback_flow(g: &MultiGraph, opts: &EngineOptions, budget: &mut Budget) -> Result<Option<FlowCertificate>, EngineError> {
    if !opts.fallback {
        return Ok(None);
    }
    Ok(match solve_nowhere_zero_flow_within(g, 5, budget)? {
        Solution::Found(f) => Some(f.to_certificate()),
        Solution::Unsatisfiable => None,
    })
}

pub fn five_flow_oddness4(g: &MultiGraph, opts: &EngineOptions) -> Result<FiveFlowCertificate, EngineError> {
    let odd = compute_oddness(g)?;
    run(g, &odd.witness, opts)
}

/// The same pipeline started from a given 2-factor instead of a smallest one.
/// `oddness` in the result then counts the odd circuits of `tf`.
pub fn five_flow_with_factor(g: &MultiGraph, tf: &TwoFactor, opts: &EngineOptions) -> Result<FiveFlowCertificate, EngineError> {
    tf.validate(g)?;
    run(g, tf, opts)
}

fn run(g: &MultiGraph, tf: &TwoFactor, opts: &EngineOptions) -> Result<FiveFlowCertificate, EngineError> {
    let mut budget = Budget::new(opts.max_work);
    let mut cert = FiveFlowCertificate {
        oddness: tf.odd_count,
        cyclic_connectivity: None,
        z: Vec::new(),
        outcome: Outcome::BadPairAnomaly,
        claim_log: ClaimLog::default(),
    };
    if tf.odd_count > 4 {
        let fallback = fallback_flow(g, opts, &mut budget)?;
        cert.outcome = Outcome::HypothesisUnmet { reason: Hypothesis::OddnessAbove4 { oddness: tf.odd_count }, fallback };
        return Ok(cert);
    }
    if opts.check_cyclic || opts.require_cyclic6 {
        cert.cyclic_connectivity = Some(cyclic_connectivity(g, 6, &mut budget)?.0);
    }
    if let Some(c) = cert.cyclic_connectivity.filter(|&c| opts.require_cyclic6 && !is_cyclic6(c)) {
        let fallback = fallback_flow(g, opts, &mut budget)?;
        cert.outcome = Outcome::HypothesisUnmet { reason: Hypothesis::CyclicBelow6 { connectivity: connectivity_value(c) }, fallback };
        cert.claim_log.stopped = Some("cyclic edge-connectivity below 6".into());
        return Ok(cert);
    }

    let coloring = canonical_coloring(g, tf)?;
    let ag = build_augmented(g, &coloring);
    cert.z = coloring.z.clone();
    let partitions = normalized_partitions(&ag)?;
    let mut violated = Vec::new();
    for (tag, p) in partitions {
        let w = to_five_thirds(&p);
        let report = check_balanced_mincut(g, &w)?;
        cert.claim_log.partitions.push(PartitionCheck {
            partition: tag,
            white: p.white.clone(),
            balanced: report.balanced,
            violator: report.violator.clone(),
        });
        match report.violator {
            None => {
                let flow = valuation_to_flow(g, &w, 5)?;
                cert.outcome = Outcome::FlowFound { flow: flow.to_certificate(), partition: tag };
                return Ok(cert);
            }
            Some(v) => violated.push((tag, p, v)),
        }
    }

    diagnose(g, &coloring, &violated, &mut cert.claim_log)?;
    let connectivity = match cert.cyclic_connectivity {
        Some(c) => c,
        None => {
            let c = cyclic_connectivity(g, 6, &mut budget)?.0;
            cert.cyclic_connectivity = Some(c);
            c
        }
    };
    if !is_cyclic6(connectivity) {
        let fallback = fallback_flow(g, opts, &mut budget)?;
        cert.outcome = Outcome::HypothesisUnmet {
            reason: Hypothesis::CyclicBelow6 { connectivity: connectivity_value(connectivity) },
            fallback,
        };
    }
    Ok(cert)
}

fn diagnose(
    g: &MultiGraph,
    c: &Coloring4,
    violated: &[(PartitionTag, FlowPartition, Violator)],
    log: &mut ClaimLog,
) -> Result<(), EngineError> {
    for (tag, p, v) in violated {
        let claims = validate_violator_claims(g, c, p, &v.side)?;
        let bad = if c.z.len() == 4 { bad_cut(g, c, p, *tag, &claims.cut.edges)? } else { None };
        log.violators.push(ViolatorDiagnostics { partition: *tag, claims, bad_cut: bad });
    }
    if c.z.len() != 4 {
        log.stopped = Some(format!("{} path ends; the four-part analysis needs 4", c.z.len()));
        return Ok(());
    }
    let cuts: Vec<_> = log.violators.iter().filter_map(|v| v.bad_cut.as_ref().map(|b| b.cut.edges.clone())).collect();
    if cuts.len() != 2 {
        log.stopped = Some("a violator boundary is not a bad cut".into());
        return Ok(());
    }
    match quad_decompose(g, c, &cuts[0], &cuts[1]) {
        Ok(qd) => {
            log.parity = Some(parity_contradiction_check(g, &qd, c));
            log.quad = Some(qd);
        }
        Err(e @ (EngineError::CutComponents(_) | EngineError::ZMisplaced { .. })) => log.stopped = Some(e.to_string()),
        Err(e) => return Err(e),
    }
    Ok(())
}
