//! Finite undirected multigraphs without loops, and edge orientations.

use std::collections::VecDeque;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("edge {edge} is a loop at vertex {vertex}")]
    Loop { edge: usize, vertex: usize },
    #[error("edge {edge} has endpoint {vertex}, but the graph has {n} vertices")]
    EndpointOutOfRange { edge: usize, vertex: usize, n: usize },
    #[error("graph is not bipartite (odd cycle through edge {edge})")]
    NotBipartite { edge: usize },
    #[error("arc {edge} ({tail}, {head}) does not match the edge's endpoints")]
    OrientationMismatch { edge: usize, tail: usize, head: usize },
    #[error("orientation has {found} arcs, graph has {expected} edges")]
    OrientationLength { expected: usize, found: usize },
}

/// Undirected multigraph on vertices `0..n` with indexed edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    incidence: Vec<Vec<usize>>,
}

impl Graph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self, GraphError> {
        let mut incidence = vec![Vec::new(); n];
        for (e, &(u, v)) in edges.iter().enumerate() {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::EndpointOutOfRange { edge: e, vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::Loop { edge: e, vertex: u });
            }
            incidence[u].push(e);
            incidence[v].push(e);
        }
        Ok(Self { n, edges, incidence })
    }

    pub fn empty(n: usize) -> Self {
        Self {
            n,
            edges: Vec::new(),
            incidence: vec![Vec::new(); n],
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    /// Edge indices incident to `v`, ascending.
    pub fn incident_edges(&self, v: usize) -> &[usize] {
        &self.incidence[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incidence[v].len()
    }

    pub fn other_end(&self, e: usize, v: usize) -> usize {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.incidence[v].iter().map(move |&e| self.other_end(e, v))
    }

    /// Common degree of all vertices, counting parallel edges; `None` when
    /// the graph is not regular or has no vertices.
    pub fn valency(&self) -> Option<usize> {
        if self.n == 0 {
            return None;
        }
        let d = self.degree(0);
        (1..self.n).all(|v| self.degree(v) == d).then_some(d)
    }

    /// Dimension of the cycle space, `m - n + c`.
    pub fn cycle_rank(&self) -> usize {
        self.edges.len() + self.components().len() - self.n
    }

    fn component_labels(&self) -> (Vec<usize>, usize) {
        let mut label = vec![usize::MAX; self.n];
        let mut count = 0;
        for start in 0..self.n {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = count;
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for w in self.neighbors(u) {
                    if label[w] == usize::MAX {
                        label[w] = count;
                        queue.push_back(w);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }

    pub fn is_connected(&self) -> bool {
        self.component_labels().1 <= 1
    }

    /// Connected components ordered by smallest vertex, each relabeled to
    /// `0..n_i` in ascending parent order.
    pub fn components(&self) -> Vec<Subgraph> {
        let (label, count) = self.component_labels();
        let mut vertex_sets = vec![Vec::new(); count];
        for v in 0..self.n {
            vertex_sets[label[v]].push(v);
        }
        vertex_sets
            .into_iter()
            .map(|vs| self.induced(&vs))
            .collect()
    }

    /// Subgraph induced on `vertices` (must be ascending and distinct).
    fn induced(&self, vertices: &[usize]) -> Subgraph {
        let mut local = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let mut edges = Vec::new();
        let mut edge_map = Vec::new();
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            if local[u] != usize::MAX && local[v] != usize::MAX {
                edges.push((local[u], local[v]));
                edge_map.push(e);
            }
        }
        Subgraph {
            graph: Graph::new(vertices.len(), edges).expect("induced edges are valid"),
            vertex_map: vertices.to_vec(),
            edge_map,
        }
    }

    /// Proper 2-coloring by breadth-first layering. In every component the
    /// smallest vertex goes to the first side.
    pub fn bipartition(&self) -> Result<Bipartition, GraphError> {
        let mut side = vec![u8::MAX; self.n];
        for start in 0..self.n {
            if side[start] != u8::MAX {
                continue;
            }
            side[start] = 0;
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &e in &self.incidence[u] {
                    let w = self.other_end(e, u);
                    if side[w] == u8::MAX {
                        side[w] = 1 - side[u];
                        queue.push_back(w);
                    } else if side[w] == side[u] {
                        return Err(GraphError::NotBipartite { edge: e });
                    }
                }
            }
        }
        let (first, second) = (0..self.n).partition(|&v| side[v] == 0);
        Ok(Bipartition { first, second })
    }

    /// The bipartite subgraph `Γ[P, Q]` formed by edges with one end in `p`
    /// and the other in `q`. Vertices are `p ∪ q` in ascending order.
    pub fn induced_bipartite_between(&self, p: &[usize], q: &[usize]) -> Subgraph {
        let mut side = vec![0u8; self.n];
        for &v in p {
            side[v] = 1;
        }
        for &v in q {
            debug_assert_ne!(side[v], 1, "P and Q must be disjoint");
            side[v] = 2;
        }
        let vertices: Vec<usize> = (0..self.n).filter(|&v| side[v] != 0).collect();
        let mut local = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let mut edges = Vec::new();
        let mut edge_map = Vec::new();
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            if side[u] != 0 && side[v] != 0 && side[u] != side[v] {
                edges.push((local[u], local[v]));
                edge_map.push(e);
            }
        }
        Subgraph {
            graph: Graph::new(vertices.len(), edges).expect("crossing edges are valid"),
            vertex_map: vertices,
            edge_map,
        }
    }

    /// Disjoint union, with `other`'s vertices shifted past this graph's.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n;
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(u, v)| (u + shift, v + shift)));
        Graph::new(self.n + other.n, edges).expect("shifted edges are valid")
    }
}

/// A subgraph with maps back to the parent graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgraph {
    pub graph: Graph,
    /// `vertex_map[i]` is the parent vertex of local vertex `i`.
    pub vertex_map: Vec<usize>,
    /// `edge_map[e]` is the parent edge of local edge `e`.
    pub edge_map: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    pub first: Vec<usize>,
    pub second: Vec<usize>,
}

/// A direction for every edge: `arcs[e] = (tail, head)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orientation {
    arcs: Vec<(usize, usize)>,
}

impl Orientation {
    /// Each edge directed as stored, first endpoint to second.
    pub fn from_graph(graph: &Graph) -> Self {
        Self {
            arcs: graph.edges().to_vec(),
        }
    }

    /// Validated against the graph's edge endpoints.
    pub fn new(graph: &Graph, arcs: Vec<(usize, usize)>) -> Result<Self, GraphError> {
        let o = Self { arcs };
        o.check(graph)?;
        Ok(o)
    }

    /// No validation; use [`Orientation::check`] before trusting it.
    pub fn from_arcs(arcs: Vec<(usize, usize)>) -> Self {
        Self { arcs }
    }

    pub fn check(&self, graph: &Graph) -> Result<(), GraphError> {
        if self.arcs.len() != graph.edge_count() {
            return Err(GraphError::OrientationLength {
                expected: graph.edge_count(),
                found: self.arcs.len(),
            });
        }
        for (e, &(tail, head)) in self.arcs.iter().enumerate() {
            let (u, v) = graph.edge(e);
            if (tail, head) != (u, v) && (tail, head) != (v, u) {
                return Err(GraphError::OrientationMismatch { edge: e, tail, head });
            }
        }
        Ok(())
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn arc(&self, e: usize) -> (usize, usize) {
        self.arcs[e]
    }

    pub fn tail(&self, e: usize) -> usize {
        self.arcs[e].0
    }

    pub fn head(&self, e: usize) -> usize {
        self.arcs[e].1
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn reverse(&mut self, e: usize) {
        let (t, h) = self.arcs[e];
        self.arcs[e] = (h, t);
    }

    /// `E^+(v)`: edges with tail `v`.
    pub fn out_edges<'a>(&'a self, graph: &'a Graph, v: usize) -> impl Iterator<Item = usize> + 'a {
        graph
            .incident_edges(v)
            .iter()
            .copied()
            .filter(move |&e| self.arcs[e].0 == v)
    }

    /// `E^-(v)`: edges with head `v`.
    pub fn in_edges<'a>(&'a self, graph: &'a Graph, v: usize) -> impl Iterator<Item = usize> + 'a {
        graph
            .incident_edges(v)
            .iter()
            .copied()
            .filter(move |&e| self.arcs[e].1 == v)
    }
}
