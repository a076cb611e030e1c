//! Independent oracles and deterministic corpora shared by the integration
//! tests. Nothing here calls into the code paths it is used to check.

#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use nzflow::families::{self, Family};
use nzflow::{Graph, PermGroup, Permutation};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Naive nowhere-zero k-flow existence: assigns every edge (in its stored
/// orientation) a value in `±1..=±(k-1)`, edge by edge, and checks each
/// vertex's conservation once all its edges are assigned. Flipping an edge
/// negates its value, so the fixed orientation covers every orientation.
pub fn naive_flow_exists(graph: &Graph, k: u32) -> bool {
    let m = graph.edge_count();
    let n = graph.vertex_count();
    // last edge (in index order) touching each vertex
    let mut closes: Vec<Vec<usize>> = vec![Vec::new(); m];
    for v in 0..n {
        if let Some(&e) = graph.incident_edges(v).iter().max() {
            closes[e].push(v);
        } else {
            // isolated vertex: trivially balanced
        }
    }
    let mut values = vec![0i64; m];
    let bound = k as i64 - 1;
    fn rec(
        e: usize,
        graph: &Graph,
        closes: &[Vec<usize>],
        values: &mut [i64],
        bound: i64,
    ) -> bool {
        if e == values.len() {
            return true;
        }
        for x in (-bound..=bound).filter(|&x| x != 0) {
            values[e] = x;
            let ok = closes[e].iter().all(|&v| {
                let mut net = 0;
                for &f in graph.incident_edges(v) {
                    let (a, _) = graph.edge(f);
                    net += if a == v { values[f] } else { -values[f] };
                }
                net == 0
            });
            if ok && rec(e + 1, graph, closes, values, bound) {
                return true;
            }
        }
        false
    }
    rec(0, graph, &closes, &mut values, bound)
}

/// All elements generated by `gens`, by plain breadth-first search.
pub fn naive_closure(degree: usize, gens: &[Permutation]) -> HashSet<Vec<usize>> {
    let id: Vec<usize> = (0..degree).collect();
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y: Vec<usize> = x.iter().map(|&i| g.apply(i)).collect();
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

/// `[G, G]` as the closure of the commutators of all element pairs.
pub fn naive_derived_subgroup(group: &PermGroup) -> HashSet<Vec<usize>> {
    let elements = group.elements().unwrap();
    let mut commutators: Vec<Permutation> = Vec::new();
    let mut seen = HashSet::new();
    for x in elements {
        for y in elements {
            let c = x.inverse().then(&y.inverse()).then(x).then(y);
            if seen.insert(c.clone()) {
                commutators.push(c);
            }
        }
    }
    naive_closure(group.degree(), &commutators)
}

pub fn element_set(group: &PermGroup) -> HashSet<Vec<usize>> {
    group.elements().unwrap().iter().map(|p| p.images()).collect()
}

pub fn named_groups() -> Vec<(&'static str, PermGroup)> {
    let p = |c: &[&[usize]], n| Permutation::from_cycles(n, c).unwrap();
    vec![
        ("S3", PermGroup::new(3, vec![p(&[&[0, 1]], 3), p(&[&[1, 2]], 3)]).unwrap()),
        ("Z5", PermGroup::new(5, vec![p(&[&[0, 1, 2, 3, 4]], 5)]).unwrap()),
        ("D4", PermGroup::new(4, vec![p(&[&[0, 1, 2, 3]], 4), p(&[&[0, 2]], 4)]).unwrap()),
        ("S4", PermGroup::new(4, vec![p(&[&[0, 1]], 4), p(&[&[0, 1, 2, 3]], 4)]).unwrap()),
        ("A5", PermGroup::new(5, vec![p(&[&[0, 1, 2]], 5), p(&[&[0, 1, 2, 3, 4]], 5)]).unwrap()),
        ("AGL(1,5)", families::complete(5).group),
        ("K55 group", families::complete_bipartite(5, 5).group),
        ("octahedral", families::octahedron().group),
        ("S5 on pairs", families::petersen().group),
        ("Clebsch group", families::clebsch().group),
    ]
}

/// Solvable arc-transitive pairs of valency at least 4.
pub fn arc_transitive_corpus() -> Vec<(String, Family)> {
    let mut out: Vec<(String, Family)> = Vec::new();
    for n in [5, 7, 11, 13] {
        out.push((format!("K{n} AGL(1,{n})"), families::complete(n)));
    }
    for (n, jumps) in [
        (10, vec![1, 3]),
        (13, vec![1, 5]),
        (13, vec![1, 3, 4]),
        (17, vec![1, 4]),
        (17, vec![1, 2, 4, 8]),
        (25, vec![1, 7]),
        (29, vec![1, 12]),
    ] {
        out.push((
            format!("circulant Z{n} {jumps:?}"),
            families::circulant(n, &jumps).unwrap(),
        ));
    }
    for a in [4, 5, 7, 8, 10, 11] {
        out.push((format!("K{a},{a}"), families::complete_bipartite(a, a)));
    }
    out.push(("octahedron".into(), families::octahedron()));
    out.push(("Clebsch".into(), families::clebsch()));
    out.push(("K8 Singer".into(), families::singer_k8()));
    for d in [4, 5, 7] {
        out.push((format!("Q{d}"), families::hypercube(d)));
    }
    out.push(("Heisenberg K25,25".into(), families::heisenberg_bipartite(5)));
    out
}

/// Connected regular bipartite graphs with valency 2..=5 and at most 12 vertices.
pub fn small_regular_bipartite() -> Vec<(String, Graph)> {
    let mut out = Vec::new();
    for n in [4, 6, 8, 10, 12] {
        out.push((format!("C{n}"), families::cycle(n).graph));
    }
    for a in 2..=5 {
        out.push((format!("K{a},{a}"), families::complete_bipartite(a, a).graph));
    }
    out.push(("Q3".into(), families::hypercube(3).graph));
    for a in 4..=6 {
        out.push((format!("crown S{a}"), crown(a)));
    }
    out.push(("circulant Z10 {1,5}".into(), families::circulant(10, &[1, 5]).unwrap().graph));
    out.push(("circulant Z10 {1,3}".into(), families::circulant(10, &[1, 3]).unwrap().graph));
    out.push(("circulant Z12 {1,5}".into(), families::circulant(12, &[1, 5]).unwrap().graph));
    out.push(("circulant Z8 {1,3}".into(), families::circulant(8, &[1, 3]).unwrap().graph));
    let mut r = rng(7);
    let mut found = 0;
    while found < 12 {
        let half = r.gen_range(2..=6);
        let d = r.gen_range(2..=5);
        let g = random_regular_bipartite(&mut r, half, d);
        if g.is_connected() {
            out.push((format!("random bipartite {half}+{half} d={d}"), g));
            found += 1;
        }
    }
    out
}

/// `K_{a,a}` minus a perfect matching.
pub fn crown(a: usize) -> Graph {
    let mut edges = Vec::new();
    for i in 0..a {
        for j in 0..a {
            if i != j {
                edges.push((i, a + j));
            }
        }
    }
    Graph::new(2 * a, edges).unwrap()
}

/// Union of `d` random perfect matchings between two sides of size `half`;
/// may contain parallel edges.
pub fn random_regular_bipartite(r: &mut ChaCha8Rng, half: usize, d: usize) -> Graph {
    let mut edges = Vec::new();
    for _ in 0..d {
        let mut perm: Vec<usize> = (0..half).collect();
        perm.shuffle(r);
        for (i, &j) in perm.iter().enumerate() {
            edges.push((i, half + j));
        }
    }
    Graph::new(2 * half, edges).unwrap()
}

/// A random connected simple graph on `n` vertices: a random spanning tree
/// plus `extra` random non-tree edges.
pub fn random_connected(r: &mut ChaCha8Rng, n: usize, extra: usize) -> Graph {
    let mut edges = Vec::new();
    let mut present = HashSet::new();
    for v in 1..n {
        let u = r.gen_range(0..v);
        edges.push((u, v));
        present.insert((u, v));
    }
    let mut tries = 0;
    while edges.len() < n - 1 + extra && tries < 1000 {
        tries += 1;
        let u = r.gen_range(0..n);
        let v = r.gen_range(0..n);
        let key = (u.min(v), u.max(v));
        if u != v && present.insert(key) {
            edges.push(key);
        }
    }
    Graph::new(n, edges).unwrap()
}

/// A multicover of `quotient` with blocks of size `block` and between-block
/// regularity `t`: every quotient edge becomes a union of `t` disjoint
/// shifted perfect matchings (shifts `0..t` after a random relabeling).
/// Returns the cover and its blocks (block `i` = vertices `i*block..`).
pub fn random_multicover(
    r: &mut ChaCha8Rng,
    quotient: &Graph,
    block: usize,
    t: usize,
) -> (Graph, Vec<Vec<usize>>) {
    assert!(t <= block);
    let mut edges = Vec::new();
    for &(p, q) in quotient.edges() {
        let mut relabel: Vec<usize> = (0..block).collect();
        relabel.shuffle(r);
        for i in 0..block {
            for shift in 0..t {
                let j = relabel[(i + shift) % block];
                edges.push((p * block + i, q * block + j));
            }
        }
    }
    edges.shuffle(r);
    let blocks = (0..quotient.vertex_count())
        .map(|p| (p * block..(p + 1) * block).collect())
        .collect();
    (Graph::new(quotient.vertex_count() * block, edges).unwrap(), blocks)
}

/// Connected even-regular circulants: jumps always include 1.
pub fn even_regular_circulant(r: &mut ChaCha8Rng, n: usize, valency: usize) -> Graph {
    assert!(valency.is_multiple_of(2) && valency < n);
    let mut jumps = vec![1];
    let mut pool: Vec<usize> = (2..n.div_ceil(2)).collect();
    pool.shuffle(r);
    jumps.extend(pool.into_iter().take(valency / 2 - 1));
    families::circulant(n, &jumps).unwrap().graph
}
