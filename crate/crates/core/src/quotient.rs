//! Quotient graphs, multicover certificates, induced block actions and flow
//! lifting from a quotient to its multicovers.

use std::collections::BTreeMap;

use crate::flow::{verify_flow, Flow};
use crate::graph::{Graph, Orientation};
pub use crate::partition::{PartitionError, VertexPartition};
use crate::perm::{GroupError, PermGroup, Permutation};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QuotientError {
    #[error("partition covers {partition} vertices, graph has {graph}")]
    SizeMismatch { partition: usize, graph: usize },
    #[error("not a multicover: {0}")]
    NotMulticover(MulticoverViolation),
    #[error("generator {generator} maps block {block} across several blocks")]
    PartitionNotInvariant { generator: usize, block: usize },
    #[error("quotient flow is not a nowhere-zero flow: {0}")]
    InvalidQuotientFlow(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Why a partition fails to define a multicover.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MulticoverViolation {
    /// Edge `edge` lies inside block `block`.
    BlockNotIndependent { block: usize, edge: usize },
    /// Vertex `vertex` of block `from` has `count` neighbors in block `to`,
    /// while the first adjacent pair established `expected`.
    IrregularPair {
        from: usize,
        to: usize,
        vertex: usize,
        count: usize,
        expected: usize,
    },
}

impl std::fmt::Display for MulticoverViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::BlockNotIndependent { block, edge } => {
                write!(f, "block {block} contains edge {edge}")
            }
            Self::IrregularPair {
                from,
                to,
                vertex,
                count,
                expected,
            } => write!(
                f,
                "blocks ({from}, {to}): vertex {vertex} has {count} neighbors across, expected {expected}"
            ),
        }
    }
}

/// The quotient `Γ_P` with the image of every crossing edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientGraph {
    /// Simple graph on block indices; edges sorted lexicographically.
    pub graph: Graph,
    /// `edge_map[e]` is the quotient edge of Γ-edge `e`, `None` for edges
    /// inside a block.
    pub edge_map: Vec<Option<usize>>,
}

impl QuotientGraph {
    /// Γ-edges lying inside a block.
    pub fn internal_edges(&self) -> Vec<usize> {
        (0..self.edge_map.len())
            .filter(|&e| self.edge_map[e].is_none())
            .collect()
    }
}

/// Certificate that Γ is a multicover of its quotient with uniform
/// between-block regularity `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MulticoverCert {
    pub t: usize,
    pub partition: VertexPartition,
    pub quotient: Graph,
    /// Γ-edge index to quotient-edge index; total because blocks are independent.
    pub edge_map: Vec<usize>,
}

pub fn quotient_graph(graph: &Graph, partition: &VertexPartition) -> Result<QuotientGraph, QuotientError> {
    check_size(graph, partition)?;
    let mut pairs: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for &(u, v) in graph.edges() {
        let (p, q) = (partition.block_of(u), partition.block_of(v));
        if p != q {
            pairs.insert((p.min(q), p.max(q)), 0);
        }
    }
    for (i, slot) in pairs.values_mut().enumerate() {
        *slot = i;
    }
    let edge_map = graph
        .edges()
        .iter()
        .map(|&(u, v)| {
            let (p, q) = (partition.block_of(u), partition.block_of(v));
            (p != q).then(|| pairs[&(p.min(q), p.max(q))])
        })
        .collect();
    let quotient = Graph::new(partition.len(), pairs.into_keys().collect())
        .expect("block pairs are valid edges");
    Ok(QuotientGraph {
        graph: quotient,
        edge_map,
    })
}

/// Checks that every block is independent and every `Γ[P, Q]` over adjacent
/// blocks is `t`-regular, with one `t` for all pairs.
pub fn certify_multicover(
    graph: &Graph,
    partition: &VertexPartition,
) -> Result<MulticoverCert, QuotientError> {
    let q = quotient_graph(graph, partition)?;
    if let Some(&edge) = q.internal_edges().first() {
        let block = partition.block_of(graph.edge(edge).0);
        return Err(QuotientError::NotMulticover(
            MulticoverViolation::BlockNotIndependent { block, edge },
        ));
    }
    let edge_map: Vec<usize> = q.edge_map.iter().map(|e| e.expect("no internal edges")).collect();

    let mut expected: Option<usize> = None;
    // Checking every vertex against every adjacent block covers both sides
    // of every pair.
    for v in 0..graph.vertex_count() {
        let from = partition.block_of(v);
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        for w in graph.neighbors(v) {
            *counts.entry(partition.block_of(w)).or_default() += 1;
        }
        for &to in q.graph.neighbors(from).collect::<Vec<_>>().iter() {
            let count = counts.get(&to).copied().unwrap_or(0);
            match expected {
                None => expected = Some(count),
                Some(t) if t != count => {
                    return Err(QuotientError::NotMulticover(
                        MulticoverViolation::IrregularPair {
                            from,
                            to,
                            vertex: v,
                            count,
                            expected: t,
                        },
                    ))
                }
                _ => {}
            }
        }
    }
    Ok(MulticoverCert {
        t: expected.unwrap_or(0),
        partition: partition.clone(),
        quotient: q.graph,
        edge_map,
    })
}

/// The permutation action of `group` on the blocks of an invariant partition.
///
/// Identity and repeated block permutations are dropped, so the result is the
/// faithful image of the group on blocks.
pub fn induced_quotient_action(
    group: &PermGroup,
    partition: &VertexPartition,
) -> Result<PermGroup, QuotientError> {
    if group.degree() != partition.vertex_count() {
        return Err(QuotientError::SizeMismatch {
            partition: partition.vertex_count(),
            graph: group.degree(),
        });
    }
    let mut gens: Vec<Permutation> = Vec::new();
    for (gi, g) in group.generators().iter().enumerate() {
        let mut images = Vec::with_capacity(partition.len());
        for (bi, block) in partition.blocks().iter().enumerate() {
            let target = partition.block_of(g.apply(block[0]));
            if block.iter().any(|&v| partition.block_of(g.apply(v)) != target) {
                return Err(QuotientError::PartitionNotInvariant {
                    generator: gi,
                    block: bi,
                });
            }
            images.push(target);
        }
        let p = Permutation::new(images).map_err(|_| QuotientError::PartitionNotInvariant {
            generator: gi,
            block: 0,
        })?;
        if !p.is_identity() && !gens.contains(&p) {
            gens.push(p);
        }
    }
    if gens.is_empty() {
        return Ok(PermGroup::trivial(partition.len()));
    }
    Ok(PermGroup::with_cap(partition.len(), gens, group.order_cap())?)
}

/// Lifts a nowhere-zero k-flow on the quotient to Γ: every edge of
/// `Γ[P, Q]` is oriented from `P` to `Q` whenever the quotient edge is
/// oriented `(P, Q)`, and inherits its value.
pub fn lift_flow(graph: &Graph, cert: &MulticoverCert, flow: &Flow) -> Result<Flow, QuotientError> {
    let report = verify_flow(&cert.quotient, flow);
    if !report.is_nowhere_zero() {
        return Err(QuotientError::InvalidQuotientFlow(report.to_string()));
    }
    check_size(graph, &cert.partition)?;
    let mut arcs = Vec::with_capacity(graph.edge_count());
    let mut values = Vec::with_capacity(graph.edge_count());
    for (e, &(u, v)) in graph.edges().iter().enumerate() {
        let qe = cert.edge_map[e];
        let (tail_block, _) = flow.orientation.arc(qe);
        arcs.push(if cert.partition.block_of(u) == tail_block {
            (u, v)
        } else {
            (v, u)
        });
        values.push(flow.values[qe]);
    }
    Ok(Flow::new(flow.k, Orientation::from_arcs(arcs), values))
}

fn check_size(graph: &Graph, partition: &VertexPartition) -> Result<(), QuotientError> {
    if graph.vertex_count() != partition.vertex_count() {
        return Err(QuotientError::SizeMismatch {
            partition: partition.vertex_count(),
            graph: graph.vertex_count(),
        });
    }
    Ok(())
}
