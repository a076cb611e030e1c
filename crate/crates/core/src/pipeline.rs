//! Nowhere-zero 3-flows for graphs with a solvable arc-transitive group.
//!
//! The solver recurses on the derived length of the group:
//!
//! 1. even valency: an Eulerian orientation gives a 2-flow;
//! 2. valency divisible by 3: generic exhaustive search;
//! 3. otherwise take `N`, the last nontrivial derived term (abelian and
//!    normal). If `N` is transitive it is regular, the graph is a Cayley
//!    graph on an abelian group, and the generic search is used. If not, the
//!    graph is a multicover of its quotient by the `N`-orbits; a valency-1
//!    quotient means the graph is regular bipartite, otherwise the quotient
//!    is solved recursively under the induced group and the flow is lifted.
//!
//! Every flow is verified before it is returned.

use std::fmt;

use crate::flow::{
    bipartite_regular_three_flow, eulerian_two_flow, reinterpret_flow, solve_nz_kflow,
    verify_flow, Flow, FlowError, SolverConfig,
};
use crate::graph::Graph;
use crate::perm::{GroupError, PermGroup};
use crate::quotient::{certify_multicover, induced_quotient_action, lift_flow};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PipelineOptions {
    /// Run the generic solver instead of failing when the group hypotheses
    /// do not hold.
    pub fallback: bool,
    pub solver: SolverConfig,
}

/// A hypothesis of the theorem that the input fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScopeViolation {
    Disconnected,
    NotRegular,
    NotAutomorphismGroup(GroupError),
    NotArcTransitive,
    NotSolvable,
    ValencyTooSmall(usize),
}

impl fmt::Display for ScopeViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Disconnected => write!(f, "graph is not connected"),
            Self::NotRegular => write!(f, "graph is not regular"),
            Self::NotAutomorphismGroup(e) => write!(f, "group does not act on the graph: {e}"),
            Self::NotArcTransitive => write!(f, "group is not arc-transitive"),
            Self::NotSolvable => write!(f, "group is not solvable"),
            Self::ValencyTooSmall(d) => write!(f, "odd valency {d} is below 4"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PipelineError {
    #[error("outside scope: {0}")]
    OutsideScope(ScopeViolation),
    #[error("no nowhere-zero 3-flow exists")]
    Infeasible,
    #[error("search budget of {0} nodes exhausted")]
    BudgetExceeded(u64),
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),
    #[error(transparent)]
    Group(GroupError),
}

impl From<FlowError> for PipelineError {
    fn from(e: FlowError) -> Self {
        match e {
            FlowError::BudgetExceeded { budget } => Self::BudgetExceeded(budget),
            other => Self::InternalInvariantViolation(other.to_string()),
        }
    }
}

fn internal(msg: impl Into<String>) -> PipelineError {
    PipelineError::InternalInvariantViolation(msg.into())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Step {
    EvenValency { valency: usize },
    DivisibleByThreeFallback { valency: usize },
    /// Generic search because the group hypotheses failed (fallback mode).
    GenericFallback { reason: String },
    TransitiveAbelianBase { order: usize },
    BipartiteBase { parts: (usize, usize) },
    Recurse {
        normal_order: usize,
        blocks: usize,
        quotient_valency: usize,
    },
    Lift { t: usize },
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::EvenValency { valency } => write!(f, "STEP EvenValency d={valency}"),
            Self::DivisibleByThreeFallback { valency } => {
                write!(f, "STEP DivisibleByThreeFallback d={valency}")
            }
            Self::GenericFallback { reason } => write!(f, "STEP GenericFallback reason={reason}"),
            Self::TransitiveAbelianBase { order } => {
                write!(f, "STEP TransitiveAbelianBase |N|={order}")
            }
            Self::BipartiteBase { parts: (a, b) } => write!(f, "STEP BipartiteBase parts={a}+{b}"),
            Self::Recurse {
                normal_order,
                blocks,
                quotient_valency,
            } => write!(
                f,
                "STEP Recurse |N|={normal_order} blocks={blocks} qval={quotient_valency}"
            ),
            Self::Lift { t } => write!(f, "STEP Lift t={t}"),
        }
    }
}

/// The recursion record and the final verified flow.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineTrace {
    pub steps: Vec<Step>,
    pub flow: Flow,
}

impl PipelineTrace {
    /// Number of quotient levels the recursion descended into.
    pub fn depth(&self) -> usize {
        self.steps
            .iter()
            .filter(|s| matches!(s, Step::Lift { .. }))
            .count()
    }
}

/// Runs the inductive construction on `(graph, group)`.
pub fn solve_three_flow(
    graph: &Graph,
    group: &PermGroup,
    opts: &PipelineOptions,
) -> Result<PipelineTrace, PipelineError> {
    if !graph.is_connected() {
        return Err(PipelineError::OutsideScope(ScopeViolation::Disconnected));
    }
    let mut steps = Vec::new();
    let mut depth_limit = None;
    let flow = solve_level(graph, group, opts, &mut steps, 0, &mut depth_limit)?;
    if let Some(limit) = depth_limit {
        let depth = steps.iter().filter(|s| matches!(s, Step::Lift { .. })).count();
        // each level strictly lowers the derived length
        if depth > limit {
            return Err(internal(format!(
                "recursion depth {depth} exceeds derived length {limit}"
            )));
        }
    }
    Ok(PipelineTrace { steps, flow })
}

fn checked(graph: &Graph, flow: Flow) -> Result<Flow, PipelineError> {
    let report = verify_flow(graph, &flow);
    if report.is_nowhere_zero() && flow.k == 3 {
        Ok(flow)
    } else {
        Err(internal(format!("constructed flow fails verification: {report}")))
    }
}

fn generic(graph: &Graph, opts: &PipelineOptions) -> Result<Option<Flow>, PipelineError> {
    Ok(solve_nz_kflow(graph, 3, &opts.solver)?)
}

fn solve_level(
    graph: &Graph,
    group: &PermGroup,
    opts: &PipelineOptions,
    steps: &mut Vec<Step>,
    level: usize,
    depth_limit: &mut Option<usize>,
) -> Result<Flow, PipelineError> {
    let d = graph
        .valency()
        .ok_or(PipelineError::OutsideScope(ScopeViolation::NotRegular))?;

    if d % 2 == 0 {
        steps.push(Step::EvenValency { valency: d });
        let two = eulerian_two_flow(graph)?;
        return checked(graph, reinterpret_flow(&two, 3)?);
    }

    let violation = hypothesis_violation(graph, group)?;
    let series = match violation {
        Ok(series) => series,
        Err(v) if opts.fallback => {
            steps.push(Step::GenericFallback {
                reason: v.to_string(),
            });
            return match generic(graph, opts)? {
                Some(f) => checked(graph, f),
                None => Err(PipelineError::Infeasible),
            };
        }
        Err(v) => return Err(PipelineError::OutsideScope(v)),
    };
    let derived_length = series.derived_length.expect("solvable");
    if level == 0 {
        *depth_limit = Some(derived_length);
    }

    if d % 3 == 0 {
        steps.push(Step::DivisibleByThreeFallback { valency: d });
        return match generic(graph, opts)? {
            Some(f) => checked(graph, f),
            None => Err(PipelineError::Infeasible),
        };
    }
    if d < 4 {
        return Err(PipelineError::OutsideScope(ScopeViolation::ValencyTooSmall(d)));
    }

    let normal = series
        .last_nontrivial()
        .ok_or_else(|| internal("arc-transitive group has no nontrivial derived term"))?;
    if !normal.is_abelian() {
        return Err(internal("last nontrivial derived term is not abelian"));
    }
    let normal_order = normal.order().map_err(PipelineError::Group)?;

    if normal.is_transitive() {
        if !normal.is_regular_action().map_err(PipelineError::Group)? {
            return Err(internal("transitive abelian subgroup is not regular"));
        }
        steps.push(Step::TransitiveAbelianBase {
            order: normal_order,
        });
        return match generic(graph, opts)? {
            Some(f) => checked(graph, f),
            None => Err(internal(
                "no 3-flow on a Cayley graph of an abelian group with valency at least 4",
            )),
        };
    }

    let blocks = normal.orbits();
    let cert = certify_multicover(graph, &blocks)
        .map_err(|e| internal(format!("orbit partition is not a multicover: {e}")))?;
    let quotient_valency = cert
        .quotient
        .valency()
        .ok_or_else(|| internal("quotient of an arc-transitive graph is not regular"))?;
    if quotient_valency * cert.t != d {
        return Err(internal(format!(
            "valency {d} != t {} * quotient valency {quotient_valency}",
            cert.t
        )));
    }
    if cert.quotient.vertex_count() >= graph.vertex_count() {
        return Err(internal("quotient does not shrink the graph"));
    }
    steps.push(Step::Recurse {
        normal_order,
        blocks: blocks.len(),
        quotient_valency,
    });

    if quotient_valency == 1 {
        let parts = graph
            .bipartition()
            .map_err(|_| internal("multicover of K_2 is not bipartite"))?;
        steps.push(Step::BipartiteBase {
            parts: (parts.first.len(), parts.second.len()),
        });
        return checked(graph, bipartite_regular_three_flow(graph)?);
    }

    let induced = induced_quotient_action(group, &blocks)
        .map_err(|e| internal(format!("orbit partition is not invariant: {e}")))?;
    match induced.is_arc_transitive(&cert.quotient) {
        Ok(true) => {}
        Ok(false) => return Err(internal("induced action on the quotient is not arc-transitive")),
        Err(e) => return Err(internal(format!("induced action does not preserve the quotient: {e}"))),
    }
    let quotient_flow = solve_level(&cert.quotient, &induced, opts, steps, level + 1, depth_limit)
        .map_err(|e| match e {
            PipelineError::Infeasible | PipelineError::OutsideScope(_) => {
                internal(format!("quotient level failed: {e}"))
            }
            other => other,
        })?;
    steps.push(Step::Lift { t: cert.t });
    let lifted = lift_flow(graph, &cert, &quotient_flow)
        .map_err(|e| internal(format!("lifting failed: {e}")))?;
    checked(graph, lifted)
}

/// Checks the group hypotheses; the outer error is a group-computation failure.
fn hypothesis_violation(
    graph: &Graph,
    group: &PermGroup,
) -> Result<Result<crate::perm::DerivedSeries, ScopeViolation>, PipelineError> {
    match group.is_arc_transitive(graph) {
        Ok(true) => {}
        Ok(false) => return Ok(Err(ScopeViolation::NotArcTransitive)),
        Err(e) => return Ok(Err(ScopeViolation::NotAutomorphismGroup(e))),
    }
    let series = group.derived_series().map_err(PipelineError::Group)?;
    if series.is_solvable() {
        Ok(Ok(series))
    } else {
        Ok(Err(ScopeViolation::NotSolvable))
    }
}

/// Each hypothesis of the theorem, evaluated independently.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypothesisReport {
    pub connected: bool,
    /// `Some(d)` when the graph is `d`-regular.
    pub valency: Option<usize>,
    pub preserves_graph: bool,
    pub vertex_transitive: bool,
    pub arc_transitive: bool,
    pub group_order: Option<usize>,
    /// `None` when the group is not solvable or could not be enumerated.
    pub derived_length: Option<usize>,
    pub solvable: Option<bool>,
}

impl HypothesisReport {
    pub fn regular(&self) -> bool {
        self.valency.is_some()
    }

    pub fn valency_at_least_four(&self) -> bool {
        self.valency.is_some_and(|d| d >= 4)
    }

    /// All hypotheses of the theorem hold.
    pub fn all_hold(&self) -> bool {
        self.connected
            && self.valency_at_least_four()
            && self.preserves_graph
            && self.arc_transitive
            && self.solvable == Some(true)
    }
}

impl fmt::Display for HypothesisReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let yn = |b: bool| if b { "yes" } else { "no" };
        writeln!(f, "connected: {}", yn(self.connected))?;
        match self.valency {
            Some(d) => writeln!(f, "regular: yes (valency {d})")?,
            None => writeln!(f, "regular: no")?,
        }
        writeln!(f, "valency>=4: {}", yn(self.valency_at_least_four()))?;
        writeln!(f, "preserves-graph: {}", yn(self.preserves_graph))?;
        writeln!(f, "vertex-transitive: {}", yn(self.vertex_transitive))?;
        writeln!(f, "arc-transitive: {}", yn(self.arc_transitive))?;
        match (self.solvable, self.derived_length) {
            (Some(true), Some(l)) => writeln!(f, "solvable: yes (derived length {l})"),
            (Some(false), _) => writeln!(f, "solvable: no"),
            _ => writeln!(f, "solvable: unknown (order cap exceeded)"),
        }
    }
}

pub fn check_hypotheses(graph: &Graph, group: &PermGroup) -> HypothesisReport {
    let preserves_graph = group.preserves_graph(graph).is_ok();
    let vertex_transitive = group.degree() == graph.vertex_count() && group.is_transitive();
    let arc_transitive = preserves_graph && group.is_arc_transitive(graph).unwrap_or(false);
    let series = group.derived_series().ok();
    HypothesisReport {
        connected: graph.is_connected(),
        valency: graph.valency(),
        preserves_graph,
        vertex_transitive,
        arc_transitive,
        group_order: group.order().ok(),
        derived_length: series.as_ref().and_then(|s| s.derived_length),
        solvable: series.as_ref().map(|s| s.is_solvable()),
    }
}
