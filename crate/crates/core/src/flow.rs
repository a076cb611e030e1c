//! Integer flows: verification, constructive builders and an exhaustive
//! nowhere-zero k-flow search.

use std::fmt;

use crate::graph::{Graph, Orientation};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FlowError {
    #[error("flow bound k = {k} is below 2")]
    KTooSmall { k: u32 },
    #[error("vertex {vertex} has odd degree {degree}")]
    OddDegreeVertex { vertex: usize, degree: usize },
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("graph is not regular")]
    NotRegular,
    #[error("valency {valency} is below 2")]
    ValencyTooSmall { valency: usize },
    #[error("cannot reinterpret a {from}-flow as a {to}-flow")]
    InvalidTarget { from: u32, to: u32 },
    #[error("search budget of {budget} nodes exhausted")]
    BudgetExceeded { budget: u64 },
}

/// An orientation with integer edge values in `-(k-1)..=k-1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flow {
    pub k: u32,
    pub orientation: Orientation,
    pub values: Vec<i32>,
}

impl Flow {
    pub fn new(k: u32, orientation: Orientation, values: Vec<i32>) -> Self {
        Self {
            k,
            orientation,
            values,
        }
    }

    pub fn edge_count(&self) -> usize {
        self.values.len()
    }

    /// Net outflow at `v`: sum over `E^+(v)` minus sum over `E^-(v)`.
    pub fn excess(&self, graph: &Graph, v: usize) -> i64 {
        graph
            .incident_edges(v)
            .iter()
            .map(|&e| {
                let value = self.values[e] as i64;
                if self.orientation.tail(e) == v {
                    value
                } else {
                    -value
                }
            })
            .sum()
    }
}

/// A structural defect that prevents the data from being a k-flow at all.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Defect {
    KTooSmall,
    EdgeCount { expected: usize, found: usize },
    Orientation { edge: usize },
    OutOfRange { edge: usize, value: i32 },
}

/// Outcome of [`verify_flow`]. Structural defects take precedence, then zero
/// values, then conservation failures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowReport {
    pub k: u32,
    pub defect: Option<Defect>,
    /// First edge carrying value zero.
    pub zero_edge: Option<usize>,
    /// First vertex where in-sum and out-sum differ.
    pub conservation_vertex: Option<usize>,
}

impl FlowReport {
    /// Range and conservation hold.
    pub fn is_flow(&self) -> bool {
        self.defect.is_none() && self.conservation_vertex.is_none()
    }

    pub fn is_nowhere_zero(&self) -> bool {
        self.is_flow() && self.zero_edge.is_none()
    }
}

impl fmt::Display for FlowReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.defect, self.zero_edge, self.conservation_vertex) {
            (Some(Defect::KTooSmall), _, _) => write!(f, "FAIL k below 2 at edge 0"),
            (Some(Defect::EdgeCount { expected, found }), _, _) => write!(
                f,
                "FAIL edge count {found} != {expected} at edge {}",
                found.min(expected)
            ),
            (Some(Defect::Orientation { edge }), _, _) => {
                write!(f, "FAIL orientation at edge {edge}")
            }
            (Some(Defect::OutOfRange { edge, .. }), _, _) => {
                write!(f, "FAIL value out of range at edge {edge}")
            }
            (None, Some(e), _) => write!(f, "FAIL zero value at edge {e}"),
            (None, None, Some(v)) => write!(f, "FAIL conservation at vertex {v}"),
            (None, None, None) => write!(f, "OK nowhere-zero {}-flow", self.k),
        }
    }
}

/// Checks value range, conservation at every vertex, and the nowhere-zero
/// property.
pub fn verify_flow(graph: &Graph, flow: &Flow) -> FlowReport {
    let mut report = FlowReport {
        k: flow.k,
        defect: None,
        zero_edge: None,
        conservation_vertex: None,
    };
    if flow.k < 2 {
        report.defect = Some(Defect::KTooSmall);
        return report;
    }
    let m = graph.edge_count();
    for found in [flow.values.len(), flow.orientation.len()] {
        if found != m {
            report.defect = Some(Defect::EdgeCount { expected: m, found });
            return report;
        }
    }
    let arcs = flow.orientation.arcs();
    let misoriented = graph
        .edges()
        .iter()
        .zip(arcs)
        .position(|(&(u, v), &arc)| arc != (u, v) && arc != (v, u));
    if let Some(edge) = misoriented {
        report.defect = Some(Defect::Orientation { edge });
        return report;
    }
    let bound = flow.k as i64 - 1;
    if let Some(edge) = flow.values.iter().position(|&x| (x as i64).abs() > bound) {
        report.defect = Some(Defect::OutOfRange {
            edge,
            value: flow.values[edge],
        });
        return report;
    }
    report.zero_edge = flow.values.iter().position(|&x| x == 0);
    let mut excess = vec![0i64; graph.vertex_count()];
    for (&(tail, head), &value) in arcs.iter().zip(&flow.values) {
        excess[tail] += value as i64;
        excess[head] -= value as i64;
    }
    report.conservation_vertex = excess.iter().position(|&x| x != 0);
    report
}

/// Same orientation and values under a larger bound `k_new >= flow.k`.
pub fn reinterpret_flow(flow: &Flow, k_new: u32) -> Result<Flow, FlowError> {
    if k_new < flow.k {
        return Err(FlowError::InvalidTarget {
            from: flow.k,
            to: k_new,
        });
    }
    Ok(Flow {
        k: k_new,
        ..flow.clone()
    })
}

/// Orients every component along an Eulerian circuit and puts 1 on each
/// edge. Requires all degrees even; regularity is not needed.
pub fn eulerian_two_flow(graph: &Graph) -> Result<Flow, FlowError> {
    if let Some(vertex) = (0..graph.vertex_count()).find(|&v| graph.degree(v) % 2 == 1) {
        return Err(FlowError::OddDegreeVertex {
            vertex,
            degree: graph.degree(vertex),
        });
    }
    let m = graph.edge_count();
    let mut arcs = vec![(0, 0); m];
    let mut used = vec![false; m];
    let mut next = vec![0usize; graph.vertex_count()];
    // Hierholzer: each edge is oriented in the direction it is first walked.
    for start in 0..graph.vertex_count() {
        let mut stack = vec![start];
        while let Some(&v) = stack.last() {
            let incident = graph.incident_edges(v);
            while next[v] < incident.len() && used[incident[next[v]]] {
                next[v] += 1;
            }
            if next[v] == incident.len() {
                stack.pop();
                continue;
            }
            let e = incident[next[v]];
            used[e] = true;
            let w = graph.other_end(e, v);
            arcs[e] = (v, w);
            stack.push(w);
        }
    }
    Ok(Flow::new(2, Orientation::from_arcs(arcs), vec![1; m]))
}

/// Proper `d`-edge-coloring of a `d`-regular bipartite multigraph by
/// alternating-path recoloring. Edges are colored in index order, each with
/// the lowest color free at its first endpoint.
pub fn konig_edge_coloring(graph: &Graph) -> Result<Vec<usize>, FlowError> {
    let d = graph.valency().ok_or(FlowError::NotRegular)?;
    graph.bipartition().map_err(|_| FlowError::NotBipartite)?;
    let n = graph.vertex_count();
    let m = graph.edge_count();
    let mut color = vec![usize::MAX; m];
    // at[v * d + c] = edge of color c at v
    let mut at = vec![usize::MAX; n * d];
    let free = |at: &[usize], v: usize| (0..d).find(|&c| at[v * d + c] == usize::MAX);

    for e in 0..m {
        let (u, v) = graph.edge(e);
        let a = free(&at, u).expect("degree bound leaves a free color");
        let b = free(&at, v).expect("degree bound leaves a free color");
        if at[v * d + a] != usize::MAX {
            // Swap a and b along the a/b alternating path starting at v.
            // In a bipartite graph it cannot end at u.
            let mut path = Vec::new();
            let mut x = v;
            let mut c = a;
            while at[x * d + c] != usize::MAX {
                let f = at[x * d + c];
                path.push(f);
                x = graph.other_end(f, x);
                c = if c == a { b } else { a };
            }
            for &f in &path {
                let (p, q) = graph.edge(f);
                at[p * d + color[f]] = usize::MAX;
                at[q * d + color[f]] = usize::MAX;
            }
            for &f in &path {
                let (p, q) = graph.edge(f);
                color[f] = if color[f] == a { b } else { a };
                at[p * d + color[f]] = f;
                at[q * d + color[f]] = f;
            }
        }
        debug_assert_eq!(at[u * d + a], usize::MAX);
        debug_assert_eq!(at[v * d + a], usize::MAX);
        color[e] = a;
        at[u * d + a] = e;
        at[v * d + a] = e;
    }
    Ok(color)
}

/// Zero-sum nonzero weights for `d >= 2` colors with absolute values at most 2.
///
/// Even `d`: alternating `+1, -1`. Odd `d`: `+2, -1, -1`, then alternating.
pub fn color_weights(d: usize) -> Vec<i32> {
    let mut w = Vec::with_capacity(d);
    let rest = if d % 2 == 1 {
        w.extend([2, -1, -1]);
        d - 3
    } else {
        d
    };
    w.extend((0..rest).map(|i| if i % 2 == 0 { 1 } else { -1 }));
    w
}

/// Nowhere-zero 3-flow on a `d`-regular bipartite graph, `d >= 2`.
///
/// Edges are oriented from the first side to the second and carry the weight
/// of their color; every vertex sees each color once, so it balances.
pub fn bipartite_regular_three_flow(graph: &Graph) -> Result<Flow, FlowError> {
    let d = graph.valency().ok_or(FlowError::NotRegular)?;
    let parts = graph.bipartition().map_err(|_| FlowError::NotBipartite)?;
    if d < 2 {
        return Err(FlowError::ValencyTooSmall { valency: d });
    }
    let colors = konig_edge_coloring(graph)?;
    let weights = color_weights(d);
    let mut in_first = vec![false; graph.vertex_count()];
    for &v in &parts.first {
        in_first[v] = true;
    }
    let arcs = graph
        .edges()
        .iter()
        .map(|&(u, v)| if in_first[u] { (u, v) } else { (v, u) })
        .collect();
    let values = colors.iter().map(|&c| weights[c]).collect();
    Ok(Flow::new(3, Orientation::from_arcs(arcs), values))
}

/// Search limits for [`solve_nz_kflow`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverConfig {
    /// Maximum number of value assignments tried; `None` is unbounded.
    pub budget: Option<u64>,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            budget: Some(1_000_000_000),
        }
    }
}

/// Precomputed cycle-space structure: a spanning forest and the fundamental
/// cycle of every cotree edge, expressed as signed tree-edge incidences.
struct CycleBasis {
    /// Cotree edges in search order.
    cotree: Vec<usize>,
    /// For each cotree position, the tree edges of its fundamental cycle and
    /// the sign with which the cycle traverses them.
    cycles: Vec<Vec<(usize, i32)>>,
    tree: Vec<usize>,
}

impl CycleBasis {
    fn new(graph: &Graph) -> Self {
        let n = graph.vertex_count();
        let m = graph.edge_count();
        let mut parent_edge = vec![usize::MAX; n];
        let mut depth = vec![usize::MAX; n];
        let mut is_tree = vec![false; m];
        let mut tree = Vec::new();
        for root in 0..n {
            if depth[root] != usize::MAX {
                continue;
            }
            depth[root] = 0;
            let mut queue = std::collections::VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                for &e in graph.incident_edges(u) {
                    let w = graph.other_end(e, u);
                    if depth[w] == usize::MAX {
                        depth[w] = depth[u] + 1;
                        parent_edge[w] = e;
                        is_tree[e] = true;
                        tree.push(e);
                        queue.push_back(w);
                    }
                }
            }
        }

        let mut cycles: Vec<(usize, Vec<(usize, i32)>)> = Vec::new();
        for e in (0..m).filter(|&e| !is_tree[e]) {
            // One unit along e = (u, v), then back from v to u through the tree.
            let (u, v) = graph.edge(e);
            let (mut a, mut b) = (v, u);
            let mut up = Vec::new(); // walked child -> parent from v
            let mut down = Vec::new(); // walked parent -> child into u
            while a != b {
                if depth[a] >= depth[b] {
                    let te = parent_edge[a];
                    let p = graph.other_end(te, a);
                    up.push((te, if graph.edge(te) == (a, p) { 1 } else { -1 }));
                    a = p;
                } else {
                    let te = parent_edge[b];
                    let p = graph.other_end(te, b);
                    down.push((te, if graph.edge(te) == (p, b) { 1 } else { -1 }));
                    b = p;
                }
            }
            up.extend(down.into_iter().rev());
            cycles.push((e, up));
        }
        // Longest fundamental cycles first; ties by edge index.
        cycles.sort_by(|x, y| y.1.len().cmp(&x.1.len()).then(x.0.cmp(&y.0)));
        let (cotree, cycles) = cycles.into_iter().unzip();
        Self {
            cotree,
            cycles,
            tree,
        }
    }
}

struct Search<'a> {
    basis: &'a CycleBasis,
    bound: i64,
    /// Running value on every edge (tree edges accumulate cycle sums).
    value: Vec<i64>,
    /// Cotree cycles still unassigned that pass through each tree edge.
    remaining: Vec<u32>,
    nodes: u64,
    budget: Option<u64>,
}

impl Search<'_> {
    fn feasible_after(&self, te: usize) -> bool {
        let s = self.value[te].abs();
        let r = self.remaining[te] as i64;
        if r == 0 {
            s != 0 && s <= self.bound
        } else {
            s - r * self.bound <= self.bound
        }
    }

    fn run(&mut self, pos: usize) -> Result<bool, FlowError> {
        if pos == self.basis.cotree.len() {
            return Ok(true);
        }
        let e = self.basis.cotree[pos];
        let cycle = &self.basis.cycles[pos];
        for magnitude in 1..=self.bound {
            for x in [magnitude, -magnitude] {
                self.nodes += 1;
                if let Some(budget) = self.budget {
                    if self.nodes > budget {
                        return Err(FlowError::BudgetExceeded { budget });
                    }
                }
                self.value[e] = x;
                for &(te, sign) in cycle {
                    self.value[te] += sign as i64 * x;
                    self.remaining[te] -= 1;
                }
                let ok = cycle.iter().all(|&(te, _)| self.feasible_after(te));
                if ok && self.run(pos + 1)? {
                    return Ok(true);
                }
                for &(te, sign) in cycle {
                    self.value[te] -= sign as i64 * x;
                    self.remaining[te] += 1;
                }
            }
        }
        self.value[e] = 0;
        Ok(false)
    }
}

/// Exhaustive nowhere-zero k-flow search over the cycle space.
///
/// Fixes a breadth-first spanning forest, enumerates values
/// `+1, -1, +2, -2, ...` on cotree edges (longest fundamental cycle first)
/// and derives tree-edge values by conservation, pruning as soon as a tree
/// edge can no longer land in `±1..=±(k-1)`. Edges keep their stored
/// orientation. Returns `Ok(None)` only once the whole space is exhausted.
pub fn solve_nz_kflow(
    graph: &Graph,
    k: u32,
    config: &SolverConfig,
) -> Result<Option<Flow>, FlowError> {
    if k < 2 {
        return Err(FlowError::KTooSmall { k });
    }
    let basis = CycleBasis::new(graph);
    let m = graph.edge_count();
    let mut remaining = vec![0u32; m];
    for cycle in &basis.cycles {
        for &(te, _) in cycle {
            remaining[te] += 1;
        }
    }
    // A bridge lies on no cycle and is forced to zero.
    if basis.tree.iter().any(|&te| remaining[te] == 0) {
        return Ok(None);
    }
    let mut search = Search {
        basis: &basis,
        bound: k as i64 - 1,
        value: vec![0; m],
        remaining,
        nodes: 0,
        budget: config.budget,
    };
    if !search.run(0)? {
        return Ok(None);
    }
    let values = search.value.iter().map(|&v| v as i32).collect();
    let flow = Flow::new(k, Orientation::from_graph(graph), values);
    debug_assert!(verify_flow(graph, &flow).is_nowhere_zero());
    Ok(Some(flow))
}
