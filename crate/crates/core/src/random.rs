//! Random valid Burnside cubes and deliberate corruptions of them, for
//! property tests and the CLI corpus.
//!
//! Two families are coherent by construction and can be combined by disjoint
//! union:
//! - product cubes: one random span `X_k^1 -> X_k^0` per coordinate, vertex
//!   `u` carrying the orbit tuples of `∏ X_k^{u_k}`; face bijections swap the
//!   order in which the two spans act;
//! - function cubes: `m_u = ∏_{k ∈ u} c_k` orbits at `u`, every edge the
//!   reduction `x -> x mod m_v` twisted by a random potential, so that every
//!   composite is a function and faces have a unique bijection.

use std::collections::{BTreeMap, HashMap};

use rand::seq::SliceRandom;
use rand::Rng;

use crate::burnside::{compose_with_provenance, ArrowOrbit, Correspondence, FreeGSet, GroupId};
use crate::cube::{bits, BurnsideCube, Vertex};

/// A span `X^1 -> X^0` between small free G-sets.
#[derive(Clone, Debug)]
struct Span {
    sizes: [usize; 2],
    arrows: Vec<ArrowOrbit>,
}

fn random_offset(rng: &mut impl Rng, g: GroupId) -> i64 {
    match g {
        GroupId::Trivial => 0,
        GroupId::InfiniteCyclic => rng.gen_range(-2..=2),
        GroupId::Cyclic { order } => rng.gen_range(0..order as i64),
    }
}

/// Every orbit of `X^1` gets at least one arrow when `total` is set.
fn random_span(rng: &mut impl Rng, g: GroupId, sizes: [usize; 2], total: bool) -> Span {
    let mut arrows = Vec::new();
    if sizes[0] > 0 && sizes[1] > 0 {
        if total {
            for s in 0..sizes[1] {
                arrows.push(ArrowOrbit::new(s, rng.gen_range(0..sizes[0]), random_offset(rng, g)));
            }
        }
        for _ in 0..rng.gen_range(0..=2) {
            arrows.push(ArrowOrbit::new(rng.gen_range(0..sizes[1]), rng.gen_range(0..sizes[0]), random_offset(rng, g)));
        }
    }
    Span { sizes, arrows }
}

fn tuple_label(t: &[usize]) -> String {
    if t.is_empty() {
        "p".into()
    } else {
        t.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(".")
    }
}

fn product_cube(n: usize, g: GroupId, spans: &[Span]) -> BurnsideCube {
    let size_at = |u: Vertex, k: usize| spans[k].sizes[u >> k & 1];
    let tuples = |u: Vertex| -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new()];
        for k in 0..n {
            out = out.into_iter().flat_map(|t| (0..size_at(u, k)).map(move |x| [t.clone(), vec![x]].concat())).collect();
        }
        out
    };
    let all: Vec<Vec<Vec<usize>>> = (0..1usize << n).map(tuples).collect();
    let index: Vec<HashMap<Vec<usize>, usize>> =
        all.iter().map(|ts| ts.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect()).collect();
    let vertices: Vec<FreeGSet> = all
        .iter()
        .map(|ts| FreeGSet::new(g, ts.iter().map(|t| tuple_label(t)).collect()).unwrap())
        .collect();

    // position of the arrow (source tuple index, span arrow index) on edge (u, k)
    let mut position: HashMap<(Vertex, usize, usize, usize), usize> = HashMap::new();
    let mut edges = BTreeMap::new();
    for u in 0..1usize << n {
        for k in bits(u, n) {
            let v = u & !(1 << k);
            let mut arrows = Vec::new();
            for (si, t) in all[u].iter().enumerate() {
                for (ai, a) in spans[k].arrows.iter().enumerate().filter(|(_, a)| a.s == t[k]) {
                    let mut t2 = t.clone();
                    t2[k] = a.t;
                    position.insert((u, k, si, ai), arrows.len());
                    arrows.push(ArrowOrbit::new(si, index[v][&t2], a.offset));
                }
            }
            edges.insert((u, k), Correspondence::new(vertices[u].clone(), vertices[v].clone(), arrows).unwrap());
        }
    }

    // Which span arrow produced each edge arrow.
    let origin: HashMap<(Vertex, usize, usize), (usize, usize)> =
        position.iter().map(|(&(u, k, si, ai), &p)| ((u, k, p), (si, ai))).collect();
    let mut faces = BTreeMap::new();
    for u in 0..1usize << n {
        for i in bits(u, n) {
            for j in bits(u, n).filter(|&j| j > i) {
                let (ui, uj) = (u & !(1 << i), u & !(1 << j));
                let (_, a_pairs) = compose_with_provenance(&edges[&(u, i)], &edges[&(ui, j)]).unwrap();
                let (_, b_pairs) = compose_with_provenance(&edges[&(u, j)], &edges[&(uj, i)]).unwrap();
                let b_index: HashMap<(usize, usize), usize> = b_pairs.iter().enumerate().map(|(x, &p)| (p, x)).collect();
                let mapping = a_pairs
                    .iter()
                    .map(|&(p, q)| {
                        let (s, ai) = origin[&(u, i, p)];
                        let (_, bj) = origin[&(ui, j, q)];
                        // apply the j-arrow first, then the i-arrow
                        let first = position[&(u, j, s, bj)];
                        let mid = edges[&(u, j)].arrows()[first].t;
                        let second = position[&(uj, i, mid, ai)];
                        b_index[&(first, second)]
                    })
                    .collect();
                faces.insert((u, i, j), mapping);
            }
        }
    }
    BurnsideCube::new(n, g, vertices, edges, faces).unwrap()
}

fn function_cube(rng: &mut impl Rng, n: usize, g: GroupId, factors: &[usize]) -> BurnsideCube {
    let m = |u: Vertex| bits(u, n).map(|k| factors[k]).product::<usize>();
    let phi: Vec<Vec<i64>> = (0..1usize << n).map(|u| (0..m(u)).map(|_| random_offset(rng, g)).collect()).collect();
    let vertices: Vec<FreeGSet> = (0..1usize << n).map(|u| FreeGSet::numbered(g, "r", m(u))).collect();
    let mut edges = BTreeMap::new();
    for u in 0..1usize << n {
        for k in bits(u, n) {
            let v = u & !(1 << k);
            let arrows = (0..m(u)).map(|x| ArrowOrbit::new(x, x % m(v), phi[v][x % m(v)] - phi[u][x])).collect();
            edges.insert((u, k), Correspondence::new(vertices[u].clone(), vertices[v].clone(), arrows).unwrap());
        }
    }
    BurnsideCube::from_edges(n, g, vertices, edges).unwrap()
}

/// Vertexwise disjoint union; orbit labels are prefixed `L`/`R`.
pub fn disjoint_union(a: &BurnsideCube, b: &BurnsideCube) -> BurnsideCube {
    assert_eq!((a.dim(), a.group()), (b.dim(), b.group()));
    let n = a.dim();
    let g = a.group();
    let vertices: Vec<FreeGSet> = (0..1usize << n)
        .map(|u| {
            let labels = a.vertex(u).orbits().iter().map(|o| format!("L{o}"));
            FreeGSet::new(g, labels.chain(b.vertex(u).orbits().iter().map(|o| format!("R{o}"))).collect()).unwrap()
        })
        .collect();
    let mut edges = BTreeMap::new();
    for (&(u, k), ea) in a.edges() {
        let eb = b.edge(u, k);
        let (ds, dt) = (a.vertex(u).len(), a.vertex(u & !(1 << k)).len());
        let arrows = ea
            .arrows()
            .iter()
            .copied()
            .chain(eb.arrows().iter().map(|x| ArrowOrbit::new(x.s + ds, x.t + dt, x.offset)))
            .collect();
        edges.insert((u, k), Correspondence::new(vertices[u].clone(), vertices[u & !(1 << k)].clone(), arrows).unwrap());
    }
    let faces = a
        .faces()
        .iter()
        .map(|(&key, ma)| {
            let shift = ma.len();
            let mapping = ma.iter().copied().chain(b.faces()[&key].iter().map(|x| x + shift)).collect();
            (key, mapping)
        })
        .collect();
    BurnsideCube::new(n, g, vertices, edges, faces).unwrap()
}

fn random_sizes(rng: &mut impl Rng, n: usize, max_orbits: usize) -> Vec<[usize; 2]> {
    // at most log2(max_orbits) coordinates may have a 2-element set
    let mut budget = (usize::BITS - 1 - max_orbits.max(1).leading_zeros()) as usize;
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut sizes = vec![[1, 1]; n];
    for k in order {
        if budget > 0 && rng.gen_bool(0.5) {
            sizes[k][rng.gen_range(0..2)] = 2;
            budget -= 1;
        }
    }
    sizes
}

/// A random valid cube of dimension `n` with at most `max_orbits` orbits per vertex.
pub fn random_valid_cube(rng: &mut impl Rng, n: usize, group: GroupId, max_orbits: usize) -> BurnsideCube {
    let product = |rng: &mut _, max| {
        let sizes = random_sizes(rng, n, max);
        let spans: Vec<Span> = sizes.iter().map(|&s| random_span(rng, group, s, false)).collect();
        product_cube(n, group, &spans)
    };
    let function = |rng: &mut _, max| {
        let sizes = random_sizes(rng, n, max);
        let factors: Vec<usize> = sizes.iter().map(|s| s[1].max(s[0])).collect();
        function_cube(rng, n, group, &factors)
    };
    match rng.gen_range(0..3) {
        0 => product(rng, max_orbits),
        1 => function(rng, max_orbits),
        _ if max_orbits >= 2 => {
            let half = max_orbits / 2;
            let a = product(rng, half);
            let b = function(rng, max_orbits - half);
            disjoint_union(&a, &b)
        }
        _ => product(rng, max_orbits),
    }
}

/// Kinds of deliberate damage, named after the violation they must produce.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Corruption {
    /// Duplicate an arrow on one edge.
    LinearizationMismatch,
    /// Swap the images of two composite arrows with different labels.
    BadFaceEndpoints,
    /// Swap the images of two composite arrows with equal labels inside a 3-cube.
    IncoherentThreeFace,
}

/// A cube damaged in the requested way. The base is a product cube of total
/// spans (every orbit has an outgoing arrow), so every composite arrow
/// around the top vertex extends through the remaining coordinates.
pub fn corrupted_cube(rng: &mut impl Rng, group: GroupId, kind: Corruption) -> BurnsideCube {
    let n = match kind {
        Corruption::IncoherentThreeFace => 3,
        _ => rng.gen_range(2..=3),
    };
    let mut spans: Vec<Span> = (0..n).map(|_| random_span(rng, group, [1, 1], true)).collect();
    let i = rng.gen_range(0..n - 1);
    let j = rng.gen_range(i + 1..n);
    match kind {
        Corruption::IncoherentThreeFace => {
            // two arrows with the same label on coordinate i
            let a = spans[i].arrows[0];
            spans[i].arrows = vec![a, a];
        }
        Corruption::BadFaceEndpoints => {
            spans[i] = Span { sizes: [1, 2], arrows: vec![ArrowOrbit::new(0, 0, 0), ArrowOrbit::new(1, 0, 0)] };
        }
        Corruption::LinearizationMismatch => {}
    }
    let cube = product_cube(n, group, &spans);
    let top = (1usize << n) - 1;
    let mut edges = cube.edges().clone();
    let mut faces = cube.faces().clone();
    match kind {
        Corruption::LinearizationMismatch => {
            let e = &edges[&(top, i)];
            let mut arrows = e.arrows().to_vec();
            arrows.push(arrows[0]);
            let doubled = Correspondence::new(e.source().clone(), e.target().clone(), arrows).unwrap();
            edges.insert((top, i), doubled);
        }
        Corruption::BadFaceEndpoints | Corruption::IncoherentThreeFace => {
            let (a, _) = cube.face_composites(top, i, j);
            let m = faces.get_mut(&(top, i, j)).unwrap();
            let want_equal = kind == Corruption::IncoherentThreeFace;
            let pair = (0..a.len())
                .flat_map(|x| (x + 1..a.len()).map(move |y| (x, y)))
                .find(|&(x, y)| (a.arrows()[x] == a.arrows()[y]) == want_equal)
                .expect("the chosen spans produce such a pair");
            m.swap(pair.0, pair.1);
        }
    }
    BurnsideCube::new(n, group, cube.vertices().to_vec(), edges, faces).unwrap()
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::cube::validate_cube;
    use crate::error::CubeViolation;

    #[test]
    fn generated_cubes_validate() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 0..=3 {
            for g in [GroupId::Trivial, GroupId::InfiniteCyclic, GroupId::Cyclic { order: 3 }] {
                for _ in 0..5 {
                    let c = random_valid_cube(&mut rng, n, g, 4);
                    assert!(c.vertices().iter().all(|v| v.len() <= 4));
                    assert_eq!(validate_cube(&c), Ok(()));
                }
            }
        }
    }

    #[test]
    fn corruptions_are_detected() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let c = corrupted_cube(&mut rng, GroupId::InfiniteCyclic, Corruption::IncoherentThreeFace);
        assert!(matches!(validate_cube(&c), Err(CubeViolation::IncoherentThreeFace { .. })));
    }
}
