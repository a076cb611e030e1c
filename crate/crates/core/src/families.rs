//! Deterministic graph families together with symmetry groups acting on them.

use std::collections::BTreeSet;

use crate::graph::Graph;
use crate::perm::{GroupError, PermGroup, Permutation};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FamilyError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A generated graph with a group of automorphisms.
#[derive(Debug, Clone)]
pub struct Family {
    pub graph: Graph,
    /// The largest known group this crate emits for the family.
    pub group: PermGroup,
    /// A regular subgroup, for Cayley-type families.
    pub regular: Option<PermGroup>,
}

fn perm(images: Vec<usize>) -> Permutation {
    Permutation::new(images).expect("family generators are bijections")
}

fn group(degree: usize, gens: Vec<Permutation>) -> PermGroup {
    PermGroup::new(degree, gens).expect("family generators have the right degree")
}

fn rotation(n: usize) -> Permutation {
    perm((0..n).map(|i| (i + 1) % n).collect())
}

/// The cycle `C_n` with edges `{i, i+1}` and the dihedral group.
///
/// Panics if `n < 3`.
pub fn cycle(n: usize) -> Family {
    assert!(n >= 3, "a cycle needs at least 3 vertices");
    let graph = Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)).collect()).unwrap();
    let reflection = perm((0..n).map(|i| (n - i) % n).collect());
    Family {
        graph,
        group: group(n, vec![rotation(n), reflection]),
        regular: Some(group(n, vec![rotation(n)])),
    }
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn primitive_root(p: usize) -> usize {
    (1..p)
        .find(|&g| {
            let mut x = 1;
            (1..p - 1).all(|_| {
                x = x * g % p;
                x != 1
            })
        })
        .unwrap_or(1)
}

/// The complete graph `K_n`. For prime `n` the group is the affine group
/// `AGL(1, n)` (solvable, arc-transitive); otherwise the symmetric group.
///
/// Panics if `n == 0`.
pub fn complete(n: usize) -> Family {
    assert!(n >= 1, "K_n needs a vertex");
    let edges = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let graph = Graph::new(n, edges).unwrap();
    let gens = if n == 1 {
        vec![Permutation::identity(1)]
    } else if is_prime(n) {
        let g = primitive_root(n);
        let mut gens = vec![rotation(n)];
        if g != 1 {
            gens.push(perm((0..n).map(|i| i * g % n).collect()));
        }
        gens
    } else {
        let mut swap: Vec<usize> = (0..n).collect();
        swap.swap(0, 1);
        vec![rotation(n), perm(swap)]
    };
    Family {
        graph,
        group: group(n, gens),
        regular: None,
    }
}

/// `K_{a,b}` with sides `0..a` and `a..a+b`. The group is generated by a
/// cyclic shift of each side, plus the side swap when `a == b`.
///
/// Panics if `a` or `b` is zero.
pub fn complete_bipartite(a: usize, b: usize) -> Family {
    assert!(a >= 1 && b >= 1, "both sides must be nonempty");
    let n = a + b;
    let edges = (0..a).flat_map(|i| (0..b).map(move |j| (i, a + j))).collect();
    let graph = Graph::new(n, edges).unwrap();
    let shift_a = perm((0..n).map(|i| if i < a { (i + 1) % a } else { i }).collect());
    let shift_b = perm(
        (0..n)
            .map(|i| if i < a { i } else { a + (i - a + 1) % b })
            .collect(),
    );
    let mut gens = vec![shift_a, shift_b];
    if a == b {
        gens.push(perm((0..n).map(|i| (i + a) % n).collect()));
    }
    Family {
        graph,
        group: group(n, gens),
        regular: None,
    }
}

/// Circulant graph on `Z_n` with connection set `{±s}` over the given jumps.
///
/// The regular subgroup is the rotation group. When the multipliers fixing
/// the connection set act transitively on it, the group is the affine
/// extension `Z_n ⋊ H`, which is then arc-transitive and solvable.
pub fn circulant(n: usize, jumps: &[usize]) -> Result<Family, FamilyError> {
    if n < 2 {
        return Err(FamilyError::InvalidParameter(format!("circulant order {n} < 2")));
    }
    let mut connection = BTreeSet::new();
    for &s in jumps {
        let s = s % n;
        if s == 0 {
            return Err(FamilyError::InvalidParameter(
                "circulant jump is 0 modulo n".into(),
            ));
        }
        connection.insert(s);
        connection.insert(n - s);
    }
    if connection.is_empty() {
        return Err(FamilyError::InvalidParameter("empty connection set".into()));
    }
    let mut edges = Vec::new();
    for i in 0..n {
        for &s in &connection {
            let j = (i + s) % n;
            if i < j {
                edges.push((i, j));
            }
        }
    }
    let graph = Graph::new(n, edges).unwrap();
    let regular = group(n, vec![rotation(n)]);

    let stabilizer: Vec<usize> = (1..n)
        .filter(|&a| gcd(a, n) == 1)
        .filter(|&a| connection.iter().all(|&s| connection.contains(&(a * s % n))))
        .collect();
    let s0 = *connection.iter().next().unwrap();
    let orbit: BTreeSet<usize> = stabilizer.iter().map(|&a| a * s0 % n).collect();
    let group = if stabilizer.len() > 1 && orbit == connection {
        let mut gens = vec![rotation(n)];
        // keep a multiplier only if it is new to the subgroup generated so far
        let mut generated: BTreeSet<usize> = BTreeSet::from([1]);
        for &a in &stabilizer {
            if generated.contains(&a) {
                continue;
            }
            gens.push(perm((0..n).map(|i| i * a % n).collect()));
            loop {
                let next: BTreeSet<usize> = generated
                    .iter()
                    .flat_map(|&x| [x, x * a % n])
                    .collect();
                if next.len() == generated.len() {
                    break;
                }
                generated = next;
            }
        }
        self::group(n, gens)
    } else {
        regular.clone()
    };
    Ok(Family {
        graph,
        group,
        regular: Some(regular),
    })
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Cayley graph `Cay(G, S)`: vertices are the elements of `G` in the group's
/// breadth-first enumeration order, edges `{g, gs}` for `s` in `S`.
///
/// `S` must be inverse-closed and must not contain the identity. The emitted
/// group is the left-regular action of `G` on the vertices.
pub fn cayley(g: &PermGroup, connection: &[Permutation]) -> Result<Family, FamilyError> {
    let elements = g.elements()?;
    for s in connection {
        if s.degree() != g.degree() || !g.contains(s)? {
            return Err(FamilyError::InvalidParameter(format!(
                "connection element {s:?} is not in the group"
            )));
        }
        if s.is_identity() {
            return Err(FamilyError::InvalidParameter(
                "connection set contains the identity".into(),
            ));
        }
        if !connection.contains(&s.inverse()) {
            return Err(FamilyError::InvalidParameter(format!(
                "connection set is not inverse-closed: missing inverse of {s:?}"
            )));
        }
    }
    let index: std::collections::HashMap<&Permutation, usize> =
        elements.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let distinct: BTreeSet<&Permutation> = connection.iter().collect();
    let mut edges = Vec::new();
    for (i, x) in elements.iter().enumerate() {
        for s in &distinct {
            let j = index[&x.then(s)];
            if i < j {
                edges.push((i, j));
            }
        }
    }
    let n = elements.len();
    let graph = Graph::new(n, edges).unwrap();
    let left: Vec<Permutation> = g
        .generators()
        .iter()
        .map(|h| perm(elements.iter().map(|x| index[&h.then(x)]).collect()))
        .collect();
    let left = group(n, left);
    Ok(Family {
        graph,
        group: left.clone(),
        regular: Some(left),
    })
}

/// The abelian group `Z_{n_1} × ... × Z_{n_r}` as disjoint cycles, one per
/// factor.
pub fn abelian_group(orders: &[usize]) -> Result<PermGroup, FamilyError> {
    if orders.is_empty() || orders.contains(&0) {
        return Err(FamilyError::InvalidParameter(
            "abelian group needs positive factor orders".into(),
        ));
    }
    let degree: usize = orders.iter().sum();
    let mut gens = Vec::new();
    let mut offset = 0;
    for &o in orders {
        gens.push(perm(
            (0..degree)
                .map(|i| {
                    if i >= offset && i < offset + o {
                        offset + (i - offset + 1) % o
                    } else {
                        i
                    }
                })
                .collect(),
        ));
        offset += o;
    }
    Ok(group(degree, gens))
}

/// Element of [`abelian_group`] with the given coordinates.
pub fn abelian_element(orders: &[usize], coords: &[usize]) -> Result<Permutation, FamilyError> {
    if coords.len() != orders.len() {
        return Err(FamilyError::InvalidParameter(format!(
            "tuple has {} coordinates, group has {} factors",
            coords.len(),
            orders.len()
        )));
    }
    let degree: usize = orders.iter().sum();
    let mut images: Vec<usize> = (0..degree).collect();
    let mut offset = 0;
    for (&o, &c) in orders.iter().zip(coords) {
        for i in 0..o {
            images[offset + i] = offset + (i + c) % o;
        }
        offset += o;
    }
    Ok(perm(images))
}

/// Cayley graph on `Z_{n_1} × ... × Z_{n_r}` with connection set given as
/// coordinate tuples.
pub fn abelian_cayley(orders: &[usize], connection: &[Vec<usize>]) -> Result<Family, FamilyError> {
    let g = abelian_group(orders)?;
    let s = connection
        .iter()
        .map(|c| abelian_element(orders, c))
        .collect::<Result<Vec<_>, _>>()?;
    cayley(&g, &s)
}

/// The octahedron `K_{2,2,2}` with antipodal pairs `{i, i+3}`, and its full
/// automorphism group `Z_2 ≀ S_3` of order 48.
pub fn octahedron() -> Family {
    let graph = circulant(6, &[1, 2]).unwrap().graph;
    let gens = [
        vec![1, 2, 0, 4, 5, 3],
        vec![1, 0, 2, 4, 3, 5],
        vec![3, 1, 2, 0, 4, 5],
    ];
    Family {
        graph,
        group: group(6, gens.into_iter().map(perm).collect()),
        regular: None,
    }
}

/// The Petersen graph as the Kneser graph `K(5, 2)`: vertices are the 2-subsets
/// of `{0..4}` in lexicographic order, adjacent when disjoint. The group is
/// `S_5` acting on pairs.
pub fn petersen() -> Family {
    let pairs: Vec<(usize, usize)> = (0..5)
        .flat_map(|i| (i + 1..5).map(move |j| (i, j)))
        .collect();
    let index = |a: usize, b: usize| {
        let key = (a.min(b), a.max(b));
        pairs.iter().position(|&p| p == key).unwrap()
    };
    let mut edges = Vec::new();
    for (x, &(a, b)) in pairs.iter().enumerate() {
        for (y, &(c, d)) in pairs.iter().enumerate().skip(x + 1) {
            if a != c && a != d && b != c && b != d {
                edges.push((x, y));
            }
        }
    }
    let graph = Graph::new(10, edges).unwrap();
    let induced = |f: &dyn Fn(usize) -> usize| {
        perm(pairs.iter().map(|&(a, b)| index(f(a), f(b))).collect())
    };
    let five_cycle = induced(&|i| (i + 1) % 5);
    let transposition = induced(&|i| match i {
        0 => 1,
        1 => 0,
        i => i,
    });
    Family {
        graph,
        group: group(10, vec![five_cycle, transposition]),
        regular: None,
    }
}

/// Cayley graph on the elementary abelian group `Z_2^dim` (vertices are bit
/// vectors) extended by linear maps, each given by the images of the basis
/// vectors `1, 2, 4, ...`. The group is generated by the basis translations
/// and the linear maps.
pub fn f2_affine_cayley(
    dim: usize,
    connection: &[u32],
    linear_maps: &[Vec<u32>],
) -> Result<Family, FamilyError> {
    let n = 1usize << dim;
    let distinct: BTreeSet<u32> = connection.iter().copied().collect();
    if distinct.iter().any(|&s| s == 0 || s as usize >= n) {
        return Err(FamilyError::InvalidParameter(
            "connection vectors must be nonzero and fit the dimension".into(),
        ));
    }
    let mut edges = Vec::new();
    for v in 0..n as u32 {
        for &s in &distinct {
            if v < v ^ s {
                edges.push((v as usize, (v ^ s) as usize));
            }
        }
    }
    let graph = Graph::new(n, edges).unwrap();
    let mut gens: Vec<Permutation> = (0..dim)
        .map(|i| perm((0..n).map(|v| v ^ (1 << i)).collect()))
        .collect();
    let regular = group(n, gens.clone());
    for m in linear_maps {
        if m.len() != dim {
            return Err(FamilyError::InvalidParameter(
                "linear map needs one image per basis vector".into(),
            ));
        }
        let apply = |v: usize| {
            (0..dim)
                .filter(|&i| v >> i & 1 == 1)
                .fold(0usize, |acc, i| acc ^ m[i] as usize)
        };
        let images: Vec<usize> = (0..n).map(apply).collect();
        let p = Permutation::new(images).map_err(|_| {
            FamilyError::InvalidParameter("linear map is not invertible".into())
        })?;
        gens.push(p);
    }
    Ok(Family {
        graph,
        group: group(n, gens),
        regular: Some(regular),
    })
}

/// The Clebsch graph (folded 5-cube): `Cay(Z_2^4, {e1, e2, e3, e4, e1+e2+e3+e4})`,
/// with a linear map of order 5 cycling the connection set.
pub fn clebsch() -> Family {
    f2_affine_cayley(4, &[1, 2, 4, 8, 15], &[vec![2, 4, 8, 15]]).unwrap()
}

/// `K_8` as `Cay(Z_2^3, all nonzero vectors)`, extended by a Singer cycle of
/// order 7.
pub fn singer_k8() -> Family {
    f2_affine_cayley(3, &[1, 2, 3, 4, 5, 6, 7], &[vec![2, 4, 3]]).unwrap()
}

/// The hypercube `Q_d` with translations and the cyclic coordinate shift.
///
/// Panics if `d == 0` or `d > 20`.
pub fn hypercube(d: usize) -> Family {
    assert!((1..=20).contains(&d), "hypercube dimension out of range");
    let connection: Vec<u32> = (0..d).map(|i| 1 << i).collect();
    let shift: Vec<u32> = (0..d).map(|i| 1 << ((i + 1) % d)).collect();
    f2_affine_cayley(d, &connection, &[shift]).unwrap()
}

/// `K_{p², p²}` where each side is `Z_p × Z_p` acted on by a Heisenberg group
/// (`(x, i) ↦ (x+1, i)` and `(x, i) ↦ (x, i+x)`), independently per side,
/// together with the side swap.
///
/// The group has derived length 3; its last derived term shifts the second
/// coordinate on both sides at once, so its orbits are blocks of size `p`
/// and the quotient is `K_{p,p}`.
///
/// Panics if `p < 2`.
pub fn heisenberg_bipartite(p: usize) -> Family {
    assert!(p >= 2);
    let side = p * p;
    let n = 2 * side;
    let idx = |s: usize, x: usize, i: usize| s * side + x * p + i;
    let edges = (0..side)
        .flat_map(|a| (0..side).map(move |b| (a, side + b)))
        .collect();
    let graph = Graph::new(n, edges).unwrap();
    let on_side = |s: usize, f: &dyn Fn(usize, usize) -> (usize, usize)| {
        let mut images: Vec<usize> = (0..n).collect();
        for x in 0..p {
            for i in 0..p {
                let (y, j) = f(x, i);
                images[idx(s, x, i)] = idx(s, y, j);
            }
        }
        perm(images)
    };
    let mut gens = Vec::new();
    for s in 0..2 {
        gens.push(on_side(s, &|x, i| ((x + 1) % p, i)));
        gens.push(on_side(s, &|x, i| (x, (i + x) % p)));
    }
    gens.push(perm((0..n).map(|v| (v + side) % n).collect()));
    Family {
        graph,
        group: group(n, gens),
        regular: None,
    }
}
