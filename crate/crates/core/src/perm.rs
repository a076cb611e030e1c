//! Permutation groups given by generators acting on vertex indices.
//!
//! Groups are small enough to enumerate, so every group-theoretic question
//! (order, derived subgroup, regularity) is answered from the explicit
//! element list. Permutations compose left to right: `g.then(h)` sends
//! `a` to `h(g(a))`, i.e. `a^(gh) = (a^g)^h`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use crate::graph::Graph;
use crate::partition::VertexPartition;

/// Default cap on the number of elements a group may enumerate.
pub const DEFAULT_ORDER_CAP: usize = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("group closure exceeds the cap of {cap} elements")]
    OrderCapExceeded { cap: usize },
    #[error("generator {index} has degree {found}, expected {expected}")]
    DegreeMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("image sequence is not a bijection on 0..{degree}")]
    NotBijection { degree: usize },
    #[error("a group needs at least one generator")]
    NoGenerators,
    #[error("group of degree {degree} cannot act on a graph with {vertices} vertices")]
    VertexCountMismatch { degree: usize, vertices: usize },
    #[error("generator {generator} does not preserve the edge multiset (image of edge {edge} is missing)")]
    NotAutomorphismGroup { generator: usize, edge: usize },
}

/// A bijection on `0..n`, stored as its image sequence.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Box<[u32]>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self, GroupError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(GroupError::NotBijection { degree: n });
            }
            seen[i] = true;
        }
        Ok(Self {
            images: images.into_iter().map(|i| i as u32).collect(),
        })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            images: (0..n as u32).collect(),
        }
    }

    /// Builds a permutation of degree `n` from disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self, GroupError> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (pos, &a) in cycle.iter().enumerate() {
                if a >= n || touched[a] {
                    return Err(GroupError::NotBijection { degree: n });
                }
                touched[a] = true;
                images[a] = cycle[(pos + 1) % cycle.len()];
            }
        }
        Self::new(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&i| i as usize).collect()
    }

    /// Product `self * other` acting left to right: first `self`, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self
                .images
                .iter()
                .map(|&i| other.images[i as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &img) in self.images.iter().enumerate() {
            inv[img as usize] = i as u32;
        }
        Permutation {
            images: inv.into_boxed_slice(),
        }
    }

    /// The commutator `x^-1 y^-1 x y` with `x = self`.
    pub fn commutator(&self, y: &Permutation) -> Permutation {
        self.inverse().then(&y.inverse()).then(self).then(y)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &img)| i as u32 == img)
    }

    pub fn commutes_with(&self, other: &Permutation) -> bool {
        self.then(other) == other.then(self)
    }

    /// Disjoint cycles of length at least two, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut a = self.apply(start);
            while a != start {
                seen[a] = true;
                cycle.push(a);
                a = self.apply(a);
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(|a| a.to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

/// Incrementally maintained closure of a generating set.
///
/// Elements are kept in breadth-first order from the identity, which makes
/// every enumeration deterministic in the generator order.
struct Closure {
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    index: HashSet<Permutation>,
    cap: usize,
}

impl Closure {
    fn new(degree: usize, cap: usize) -> Self {
        let id = Permutation::identity(degree);
        let mut index = HashSet::new();
        index.insert(id.clone());
        Self {
            generators: Vec::new(),
            elements: vec![id],
            index,
            cap,
        }
    }

    fn insert(&mut self, p: Permutation) -> Result<(), GroupError> {
        if !self.index.contains(&p) {
            if self.elements.len() >= self.cap {
                return Err(GroupError::OrderCapExceeded { cap: self.cap });
            }
            self.index.insert(p.clone());
            self.elements.push(p);
        }
        Ok(())
    }

    /// Adds `g` as a generator unless it is already a member. Returns whether
    /// the closure grew.
    fn add(&mut self, g: Permutation) -> Result<bool, GroupError> {
        if self.index.contains(&g) {
            return Ok(false);
        }
        self.generators.push(g.clone());
        // Old elements are closed under the old generators; only the new
        // generator needs applying to them.
        let old_len = self.elements.len();
        for i in 0..old_len {
            let p = self.elements[i].then(&g);
            self.insert(p)?;
        }
        let mut next = old_len;
        while next < self.elements.len() {
            for j in 0..self.generators.len() {
                let p = self.elements[next].then(&self.generators[j]);
                self.insert(p)?;
            }
            next += 1;
        }
        Ok(true)
    }
}

/// Enumerates the group generated by `gens`, identity first, breadth-first.
pub fn enumerate_elements(
    degree: usize,
    gens: &[Permutation],
    cap: usize,
) -> Result<Vec<Permutation>, GroupError> {
    for (index, g) in gens.iter().enumerate() {
        if g.degree() != degree {
            return Err(GroupError::DegreeMismatch {
                index,
                expected: degree,
                found: g.degree(),
            });
        }
    }
    let mut closure = Closure::new(degree, cap);
    // BFS over all generators at once keeps the order independent of which
    // generators happen to be redundant.
    closure.generators = gens.to_vec();
    let mut next = 0;
    while next < closure.elements.len() {
        for j in 0..closure.generators.len() {
            let p = closure.elements[next].then(&closure.generators[j]);
            closure.insert(p)?;
        }
        next += 1;
    }
    Ok(closure.elements)
}

#[derive(Debug)]
struct ElementSet {
    list: Vec<Permutation>,
    index: HashSet<Permutation>,
}

/// A permutation group of a given degree, represented by its generators.
/// The element list is computed on first use and then shared.
#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    cap: usize,
    elements: OnceLock<std::sync::Arc<Result<ElementSet, GroupError>>>,
}

impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.generators == other.generators
    }
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self, GroupError> {
        Self::with_cap(degree, generators, DEFAULT_ORDER_CAP)
    }

    pub fn with_cap(
        degree: usize,
        generators: Vec<Permutation>,
        cap: usize,
    ) -> Result<Self, GroupError> {
        if generators.is_empty() {
            return Err(GroupError::NoGenerators);
        }
        for (index, g) in generators.iter().enumerate() {
            if g.degree() != degree {
                return Err(GroupError::DegreeMismatch {
                    index,
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        Ok(Self {
            degree,
            generators,
            cap,
            elements: OnceLock::new(),
        })
    }

    /// The trivial group on `degree` points, generated by the identity.
    pub fn trivial(degree: usize) -> Self {
        Self::new(degree, vec![Permutation::identity(degree)]).expect("identity is valid")
    }

    /// Builds a group from image sequences.
    pub fn from_images(degree: usize, gens: &[Vec<usize>]) -> Result<Self, GroupError> {
        let gens = gens
            .iter()
            .map(|g| Permutation::new(g.clone()))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(degree, gens)
    }

    fn from_closure(degree: usize, closure: Closure) -> Self {
        let generators = if closure.generators.is_empty() {
            vec![Permutation::identity(degree)]
        } else {
            closure.generators
        };
        let group = Self {
            degree,
            generators,
            cap: closure.cap,
            elements: OnceLock::new(),
        };
        let _ = group.elements.set(std::sync::Arc::new(Ok(ElementSet {
            list: closure.elements,
            index: closure.index,
        })));
        group
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn order_cap(&self) -> usize {
        self.cap
    }

    fn element_set(&self) -> Result<&ElementSet, GroupError> {
        let cell = self.elements.get_or_init(|| {
            std::sync::Arc::new(
                enumerate_elements(self.degree, &self.generators, self.cap).map(|list| {
                    let index = list.iter().cloned().collect();
                    ElementSet { list, index }
                }),
            )
        });
        cell.as_ref().as_ref().map_err(Clone::clone)
    }

    /// All elements, identity first, in breadth-first order over the generators.
    pub fn elements(&self) -> Result<&[Permutation], GroupError> {
        Ok(&self.element_set()?.list)
    }

    pub fn order(&self) -> Result<usize, GroupError> {
        Ok(self.element_set()?.list.len())
    }

    pub fn contains(&self, p: &Permutation) -> Result<bool, GroupError> {
        Ok(self.element_set()?.index.contains(p))
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.iter().all(Permutation::is_identity)
    }

    /// True iff all generators commute pairwise.
    pub fn is_abelian(&self) -> bool {
        let gens = &self.generators;
        gens.iter()
            .enumerate()
            .all(|(i, a)| gens[i + 1..].iter().all(|b| a.commutes_with(b)))
    }

    /// The derived subgroup `[G, G]`.
    ///
    /// Generated by the commutators `[x, s]` for every element `x` and every
    /// generator `s`. Modulo that subgroup each generator is central, so the
    /// quotient is abelian and the subgroup already contains every commutator.
    pub fn derived_subgroup(&self) -> Result<PermGroup, GroupError> {
        let elements = self.elements()?;
        let mut closure = Closure::new(self.degree, self.cap);
        for x in elements {
            for s in &self.generators {
                closure.add(x.commutator(s))?;
            }
        }
        Ok(Self::from_closure(self.degree, closure))
    }

    /// Iterated derived subgroups until the trivial group or a perfect term.
    pub fn derived_series(&self) -> Result<DerivedSeries, GroupError> {
        let mut terms = vec![self.clone()];
        loop {
            let last = terms.last().expect("series is nonempty");
            let last_order = last.order()?;
            if last_order == 1 {
                let derived_length = Some(terms.len() - 1);
                return Ok(DerivedSeries {
                    terms,
                    derived_length,
                });
            }
            let next = last.derived_subgroup()?;
            if next.order()? == last_order {
                return Ok(DerivedSeries {
                    terms,
                    derived_length: None,
                });
            }
            terms.push(next);
        }
    }

    /// Orbits on `0..degree`, in canonical block order.
    pub fn orbits(&self) -> VertexPartition {
        let n = self.degree;
        let mut block_of = vec![usize::MAX; n];
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for start in 0..n {
            if block_of[start] != usize::MAX {
                continue;
            }
            let id = blocks.len();
            let mut block = vec![start];
            block_of[start] = id;
            let mut queue = VecDeque::from([start]);
            while let Some(a) = queue.pop_front() {
                for g in &self.generators {
                    let b = g.apply(a);
                    if block_of[b] == usize::MAX {
                        block_of[b] = id;
                        block.push(b);
                        queue.push_back(b);
                    }
                }
            }
            block.sort_unstable();
            blocks.push(block);
        }
        VertexPartition::new(n, blocks).expect("orbits form a partition")
    }

    pub fn is_transitive(&self) -> bool {
        self.degree <= 1 || self.orbits().len() == 1
    }

    /// Transitive with order equal to the degree.
    pub fn is_regular_action(&self) -> Result<bool, GroupError> {
        Ok(self.is_transitive() && self.order()? == self.degree)
    }

    /// Checks that every generator maps the edge multiset of `graph` onto itself.
    pub fn preserves_graph(&self, graph: &Graph) -> Result<(), GroupError> {
        if graph.vertex_count() != self.degree {
            return Err(GroupError::VertexCountMismatch {
                degree: self.degree,
                vertices: graph.vertex_count(),
            });
        }
        let mut multiset: HashMap<(usize, usize), usize> = HashMap::new();
        for &(u, v) in graph.edges() {
            *multiset.entry(normalize(u, v)).or_default() += 1;
        }
        for (gi, g) in self.generators.iter().enumerate() {
            let mut remaining = multiset.clone();
            for (e, &(u, v)) in graph.edges().iter().enumerate() {
                let image = normalize(g.apply(u), g.apply(v));
                match remaining.get_mut(&image) {
                    Some(c) if *c > 0 => *c -= 1,
                    _ => {
                        return Err(GroupError::NotAutomorphismGroup {
                            generator: gi,
                            edge: e,
                        })
                    }
                }
            }
        }
        Ok(())
    }

    /// True iff the group is vertex-transitive and transitive on arcs (ordered
    /// pairs of adjacent vertices). Parallel edges share an arc, since the
    /// group acts on vertices only. A graph with no edges is not arc-transitive.
    pub fn is_arc_transitive(&self, graph: &Graph) -> Result<bool, GroupError> {
        self.preserves_graph(graph)?;
        if graph.edge_count() == 0 || !self.is_transitive() {
            return Ok(false);
        }
        let arcs: HashSet<(usize, usize)> = graph
            .edges()
            .iter()
            .flat_map(|&(u, v)| [(u, v), (v, u)])
            .collect();
        Ok(self.arc_orbit(graph.edges()[0]).len() == arcs.len())
    }

    /// Orbit of a single arc under the group.
    pub fn arc_orbit(&self, arc: (usize, usize)) -> HashSet<(usize, usize)> {
        let mut orbit = HashSet::from([arc]);
        let mut queue = VecDeque::from([arc]);
        while let Some((u, v)) = queue.pop_front() {
            for g in &self.generators {
                let image = (g.apply(u), g.apply(v));
                if orbit.insert(image) {
                    queue.push_back(image);
                }
            }
        }
        orbit
    }
}

fn normalize(u: usize, v: usize) -> (usize, usize) {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

/// The derived series `G = G^(0) > G^(1) > ...`.
#[derive(Debug, Clone)]
pub struct DerivedSeries {
    /// Terms of strictly decreasing order. Ends at the trivial group when
    /// solvable, otherwise at the first perfect term.
    pub terms: Vec<PermGroup>,
    /// `Some(l)` with `G^(l) = 1` minimal, or `None` when not solvable.
    pub derived_length: Option<usize>,
}

impl DerivedSeries {
    pub fn is_solvable(&self) -> bool {
        self.derived_length.is_some()
    }

    pub fn orders(&self) -> Vec<usize> {
        self.terms
            .iter()
            .map(|t| t.order().expect("series terms are enumerated"))
            .collect()
    }

    /// Last nontrivial term, which is abelian when the group is solvable.
    pub fn last_nontrivial(&self) -> Option<&PermGroup> {
        self.terms
            .iter()
            .rev()
            .find(|t| t.order().map(|o| o > 1).unwrap_or(false))
    }
}
