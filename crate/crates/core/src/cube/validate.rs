use std::collections::HashMap;

use rayon::prelude::*;

use super::{bits, format_vertex, BurnsideCube, Vertex};
use crate::burnside::{compose_with_provenance, linearize};
use crate::burnside::FibrewiseBijection;
use crate::error::{BurnsideError, CubeViolation};

/// Arrow pairs of both composites around a face, with the stored mapping.
pub(crate) struct FaceTable {
    a_pairs: Vec<(usize, usize)>,
    b_pairs: Vec<(usize, usize)>,
    a_index: HashMap<(usize, usize), usize>,
    b_index: HashMap<(usize, usize), usize>,
    mapping: Vec<usize>,
    inverse: Vec<usize>,
}

impl FaceTable {
    pub(crate) fn new(cube: &BurnsideCube, u: Vertex, i: usize, j: usize, mapping: Vec<usize>) -> Self {
        let (_, a_pairs) = compose_with_provenance(cube.edge(u, i), cube.edge(u & !(1 << i), j)).unwrap();
        let (_, b_pairs) = compose_with_provenance(cube.edge(u, j), cube.edge(u & !(1 << j), i)).unwrap();
        let mut inverse = vec![0; mapping.len()];
        for (x, &y) in mapping.iter().enumerate() {
            inverse[y] = x;
        }
        let index = |p: &[(usize, usize)]| p.iter().enumerate().map(|(k, &x)| (x, k)).collect();
        Self { a_index: index(&a_pairs), b_index: index(&b_pairs), a_pairs, b_pairs, mapping, inverse }
    }

    pub(crate) fn mapping_vec(&self) -> Vec<usize> {
        self.mapping.clone()
    }

    /// Transports a pair along "first then second" to the other path.
    pub(crate) fn forward(&self, pair: (usize, usize)) -> (usize, usize) {
        self.b_pairs[self.mapping[self.a_index[&pair]]]
    }

    pub(crate) fn backward(&self, pair: (usize, usize)) -> (usize, usize) {
        self.a_pairs[self.inverse[self.b_index[&pair]]]
    }
}

pub(crate) struct FaceTables(pub(crate) HashMap<(Vertex, usize, usize), FaceTable>);

impl FaceTables {
    pub(crate) fn build(cube: &BurnsideCube) -> Self {
        let keys: Vec<_> = cube.faces().keys().copied().collect();
        Self(
            keys.into_par_iter()
                .map(|(u, i, j)| ((u, i, j), FaceTable::new(cube, u, i, j, cube.face_mapping(u, i, j).to_vec())))
                .collect(),
        )
    }

    /// Pair along (clear `p`, then `q`) at `x` to the pair along (clear `q`, then `p`).
    pub(crate) fn swap(&self, x: Vertex, p: usize, q: usize, pair: (usize, usize)) -> (usize, usize) {
        if p < q {
            self.0[&(x, p, q)].forward(pair)
        } else {
            self.0[&(x, q, p)].backward(pair)
        }
    }
}

/// Arrow triples along the ordering `(p, q, r)` of cleared coordinates from `u`.
fn triples(cube: &BurnsideCube, u: Vertex, p: usize, q: usize, r: usize) -> Vec<(usize, usize, usize)> {
    let (e1, e2, e3) = (cube.edge(u, p), cube.edge(u & !(1 << p), q), cube.edge(u & !(1 << p) & !(1 << q), r));
    let mut out = Vec::new();
    for (a, x) in e1.arrows().iter().enumerate() {
        for (b, y) in e2.arrows().iter().enumerate().filter(|(_, y)| y.s == x.t) {
            for (c, _) in e3.arrows().iter().enumerate().filter(|(_, z)| z.s == y.t) {
                out.push((a, b, c));
            }
        }
    }
    out
}

/// Walks once around the hexagon of orderings of `{i, j, k}` and checks every
/// triple comes back to itself.
pub(crate) fn three_face_coherent(cube: &BurnsideCube, tables: &FaceTables, u: Vertex, i: usize, j: usize, k: usize) -> bool {
    let drop = |x: Vertex, b: usize| x & !(1 << b);
    triples(cube, u, i, j, k).into_iter().all(|start| {
        let mut order = [i, j, k];
        let mut t = start;
        for step in 0..6 {
            let [p, q, r] = order;
            if step % 2 == 0 {
                let (a, b) = tables.swap(u, p, q, (t.0, t.1));
                t = (a, b, t.2);
                order = [q, p, r];
            } else {
                let (b, c) = tables.swap(drop(u, p), q, r, (t.1, t.2));
                t = (t.0, b, c);
                order = [p, r, q];
            }
        }
        debug_assert_eq!(order, [i, j, k]);
        t == start
    })
}

/// Checks, in this order over all faces: equal linearizations of the two
/// composites, the face mapping being a label-preserving bijection, and
/// coherence around every 3-dimensional subcube.
pub fn validate_cube(cube: &BurnsideCube) -> Result<(), CubeViolation> {
    let n = cube.dim();
    let faces: Vec<(Vertex, usize, usize)> = cube.faces().keys().copied().collect();
    let fv = |u: Vertex| format_vertex(u, n);

    let mismatch = faces.par_iter().find_first(|&&(u, i, j)| {
        let (a, b) = cube.face_composites(u, i, j);
        linearize(&a) != linearize(&b)
    });
    if let Some(&(u, i, j)) = mismatch {
        return Err(CubeViolation::LinearizationMismatch { vertex: fv(u), i: i + 1, j: j + 1 });
    }

    let bad = faces
        .par_iter()
        .map(|&(u, i, j)| {
            let (a, b) = cube.face_composites(u, i, j);
            FibrewiseBijection::new(a, b, cube.face_mapping(u, i, j).to_vec()).err().map(|e| ((u, i, j), e))
        })
        .find_first(Option::is_some)
        .flatten();
    if let Some(((u, i, j), e)) = bad {
        let reason = match e {
            BurnsideError::NotABijection(m) => m,
            other => other.to_string(),
        };
        return Err(CubeViolation::BadFaceEndpoints { vertex: fv(u), i: i + 1, j: j + 1, reason });
    }

    let tables = FaceTables::build(cube);
    let mut cubes3 = Vec::new();
    for u in 0..1usize << n {
        let b: Vec<usize> = bits(u, n).collect();
        for x in 0..b.len() {
            for y in x + 1..b.len() {
                for z in y + 1..b.len() {
                    cubes3.push((u, b[x], b[y], b[z]));
                }
            }
        }
    }
    let incoherent = cubes3.par_iter().find_first(|&&(u, i, j, k)| !three_face_coherent(cube, &tables, u, i, j, k));
    if let Some(&(u, i, j, k)) = incoherent {
        return Err(CubeViolation::IncoherentThreeFace { vertex: fv(u), i: i + 1, j: j + 1, k: k + 1 });
    }
    Ok(())
}
