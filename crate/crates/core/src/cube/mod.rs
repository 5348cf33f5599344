//! Cubes `2^n -> Burnside category`, stored skeletally: a free G-set at every
//! vertex, a correspondence along every covering edge and a fibrewise
//! bijection on every 2-face.
//!
//! Vertices are bitmasks: coordinate `k` (1-based in user-facing text) is bit
//! `k - 1`. Edge `(u, b)` goes from `u` to `u - e_b` for a bit `b` set in `u`.
//! Face `(u, i, j)` with bits `i < j` set in `u` compares path A (clear `i`,
//! then `j`) with path B (clear `j`, then `i`); its mapping sends positions in
//! the composite along A to positions in the composite along B, where
//! composites enumerate arrow pairs as in
//! [`compose_with_provenance`](crate::burnside::compose_with_provenance).

mod hocolim;
pub mod json;
mod lift;
mod module;
mod ops;
mod totalize;
mod validate;

use std::collections::BTreeMap;

use crate::burnside::{compose, Correspondence, FibrewiseBijection, FreeGSet, GroupId};
use crate::error::CubeError;

pub use hocolim::hocolim_complex;
pub use lift::lift_monomial_cube;
pub use module::{totalize_module_cube, Generator, ModuleCube, Variance};
pub use ops::{dual_cube, nat_transformation_to_chain_map, quotient_cube, restrict_cube, ChainMap, CubeNaturalTransformation};
pub use totalize::{totalize, vertex_label};
pub use validate::validate_cube;

pub type Vertex = usize;

pub fn degree(u: Vertex) -> usize {
    u.count_ones() as usize
}

/// `u_1 u_2 ... u_n` as a string of 0s and 1s.
pub fn format_vertex(u: Vertex, n: usize) -> String {
    (0..n).map(|b| if u >> b & 1 == 1 { '1' } else { '0' }).collect()
}

pub fn parse_vertex(s: &str) -> Option<Vertex> {
    let mut u = 0;
    for (b, c) in s.chars().enumerate() {
        match c {
            '0' => {}
            '1' => u |= 1 << b,
            _ => return None,
        }
    }
    Some(u)
}

/// `s_{u,v} = Σ_{j<k} u_j` where `k` is the coordinate in which `u` and `v` differ.
pub fn sign_exponent(u: Vertex, bit: usize) -> usize {
    (u & ((1 << bit) - 1)).count_ones() as usize
}

/// `(-1)^{s_{u,v}}` for a covering pair `u > v`.
pub fn sign(u: Vertex, v: Vertex) -> Result<i64, CubeError> {
    let diff = u ^ v;
    if v & !u != 0 || diff.count_ones() != 1 {
        let n = (usize::BITS - (u | v).leading_zeros()) as usize;
        return Err(CubeError::NotACoveringEdge { u: format_vertex(u, n), v: format_vertex(v, n) });
    }
    Ok(if sign_exponent(u, diff.trailing_zeros() as usize).is_multiple_of(2) { 1 } else { -1 })
}

pub fn bits(u: Vertex, n: usize) -> impl Iterator<Item = usize> {
    (0..n).filter(move |b| u >> b & 1 == 1)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BurnsideCube {
    n: usize,
    group: GroupId,
    vertices: Vec<FreeGSet>,
    edges: BTreeMap<(Vertex, usize), Correspondence>,
    faces: BTreeMap<(Vertex, usize, usize), Vec<usize>>,
    aux_arity: usize,
    aux: Vec<Vec<Vec<i64>>>,
}

impl BurnsideCube {
    /// Structural checks only (all edges and faces present with the right
    /// endpoints, aux shapes); coherence is checked by [`validate_cube`].
    pub fn new(
        n: usize,
        group: GroupId,
        vertices: Vec<FreeGSet>,
        edges: BTreeMap<(Vertex, usize), Correspondence>,
        faces: BTreeMap<(Vertex, usize, usize), Vec<usize>>,
    ) -> Result<Self, CubeError> {
        let aux = vertices.iter().map(|v| vec![Vec::new(); v.len()]).collect();
        Self::with_aux(n, group, vertices, edges, faces, 0, aux)
    }

    pub fn with_aux(
        n: usize,
        group: GroupId,
        vertices: Vec<FreeGSet>,
        edges: BTreeMap<(Vertex, usize), Correspondence>,
        faces: BTreeMap<(Vertex, usize, usize), Vec<usize>>,
        aux_arity: usize,
        aux: Vec<Vec<Vec<i64>>>,
    ) -> Result<Self, CubeError> {
        let bad = |m: String| Err(CubeError::Malformed(m));
        if n >= usize::BITS as usize - 1 {
            return bad(format!("dimension {n} too large"));
        }
        if vertices.len() != 1 << n {
            return bad(format!("expected {} vertices, found {}", 1usize << n, vertices.len()));
        }
        if let Some(v) = vertices.iter().find(|v| v.group() != group) {
            return bad(format!("vertex set over {} in a cube over {group}", v.group()));
        }
        if aux.len() != vertices.len()
            || aux.iter().zip(&vertices).any(|(a, v)| a.len() != v.len() || a.iter().any(|g| g.len() != aux_arity))
        {
            return bad("auxiliary gradings do not match the vertex orbits".into());
        }
        let mut expected_edges = 0;
        for u in 0..vertices.len() {
            for b in bits(u, n) {
                expected_edges += 1;
                let Some(e) = edges.get(&(u, b)) else {
                    return bad(format!("missing edge at {} in coordinate {}", format_vertex(u, n), b + 1));
                };
                if e.source() != &vertices[u] || e.target() != &vertices[u & !(1 << b)] {
                    return bad(format!("edge at {} in coordinate {} has wrong endpoints", format_vertex(u, n), b + 1));
                }
            }
        }
        if edges.len() != expected_edges {
            return bad("edges outside the cube".into());
        }
        let mut expected_faces = 0;
        for u in 0..vertices.len() {
            for i in bits(u, n) {
                for j in bits(u, n).filter(|&j| j > i) {
                    expected_faces += 1;
                    if !faces.contains_key(&(u, i, j)) {
                        return bad(format!("missing face at {} in coordinates ({}, {})", format_vertex(u, n), i + 1, j + 1));
                    }
                }
            }
        }
        if faces.len() != expected_faces {
            return bad("faces outside the cube".into());
        }
        Ok(Self { n, group, vertices, edges, faces, aux_arity, aux })
    }

    /// Builds the cube, choosing each face bijection by matching every arrow
    /// of the A-composite to the first unused equal arrow of the B-composite
    /// (the identity if the composites differ). No coherence is implied.
    pub fn from_edges(
        n: usize,
        group: GroupId,
        vertices: Vec<FreeGSet>,
        edges: BTreeMap<(Vertex, usize), Correspondence>,
    ) -> Result<Self, CubeError> {
        let mut faces = BTreeMap::new();
        for u in 0..vertices.len() {
            for i in bits(u, n) {
                for j in bits(u, n).filter(|&j| j > i) {
                    faces.insert((u, i, j), Vec::new());
                }
            }
        }
        let mut cube = Self::new(n, group, vertices, edges, faces)?;
        let keys: Vec<_> = cube.faces.keys().copied().collect();
        for (u, i, j) in keys {
            let (a, b) = cube.face_composites(u, i, j);
            let mapping = match FibrewiseBijection::matching(&a, &b) {
                Ok(m) => m.mapping().to_vec(),
                Err(_) => (0..a.len()).collect(),
            };
            cube.faces.insert((u, i, j), mapping);
        }
        Ok(cube)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn group(&self) -> GroupId {
        self.group
    }

    pub fn vertex(&self, u: Vertex) -> &FreeGSet {
        &self.vertices[u]
    }

    pub fn vertices(&self) -> &[FreeGSet] {
        &self.vertices
    }

    pub fn edge(&self, u: Vertex, bit: usize) -> &Correspondence {
        &self.edges[&(u, bit)]
    }

    pub fn edges(&self) -> &BTreeMap<(Vertex, usize), Correspondence> {
        &self.edges
    }

    pub fn face_mapping(&self, u: Vertex, i: usize, j: usize) -> &[usize] {
        &self.faces[&(u, i, j)]
    }

    pub(crate) fn set_face_mapping(&mut self, u: Vertex, i: usize, j: usize, mapping: Vec<usize>) {
        self.faces.insert((u, i, j), mapping);
    }

    pub fn faces(&self) -> &BTreeMap<(Vertex, usize, usize), Vec<usize>> {
        &self.faces
    }

    pub fn aux_arity(&self) -> usize {
        self.aux_arity
    }

    /// Auxiliary gradings of the orbits at `u`.
    pub fn aux(&self, u: Vertex) -> &[Vec<i64>] {
        &self.aux[u]
    }

    pub fn set_aux(&mut self, aux_arity: usize, aux: Vec<Vec<Vec<i64>>>) -> Result<(), CubeError> {
        let cube = Self::with_aux(
            self.n,
            self.group,
            std::mem::take(&mut self.vertices),
            std::mem::take(&mut self.edges),
            std::mem::take(&mut self.faces),
            aux_arity,
            aux,
        )?;
        *self = cube;
        Ok(())
    }

    /// The two composites around face `(u, i, j)`: along A and along B.
    pub fn face_composites(&self, u: Vertex, i: usize, j: usize) -> (Correspondence, Correspondence) {
        let a = compose(self.edge(u, i), self.edge(u & !(1 << i), j)).expect("cube edges are composable");
        let b = compose(self.edge(u, j), self.edge(u & !(1 << j), i)).expect("cube edges are composable");
        (a, b)
    }

    /// The face bijection as a checked [`FibrewiseBijection`].
    pub fn face_bijection(&self, u: Vertex, i: usize, j: usize) -> Result<FibrewiseBijection, CubeError> {
        let (a, b) = self.face_composites(u, i, j);
        Ok(FibrewiseBijection::new(a, b, self.face_mapping(u, i, j).to_vec())?)
    }

    /// The correspondence `F(u) -> F(v)` for `u >= v`, composed along the
    /// chain that clears the coordinates of `u - v` in increasing order.
    pub fn correspondence_between(&self, u: Vertex, v: Vertex) -> Correspondence {
        assert_eq!(v & !u, 0, "{v:b} is not below {u:b}");
        let mut cur = u;
        let mut acc = crate::burnside::identity_correspondence(&self.vertices[u]);
        for b in bits(u & !v, self.n) {
            acc = compose(&acc, self.edge(cur, b)).expect("cube edges are composable");
            cur &= !(1 << b);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sign_examples() {
        // coordinate 1 is bit 0
        assert_eq!(sign(0b001, 0b000).unwrap(), 1);
        assert_eq!(sign(0b011, 0b001).unwrap(), -1);
        assert_eq!(sign(0b111, 0b011).unwrap(), 1);
        assert!(matches!(sign(0b011, 0b000), Err(CubeError::NotACoveringEdge { .. })));
        assert!(sign(0b001, 0b010).is_err());
    }

    #[test]
    fn sign_identity_on_faces() {
        for u in 0..16usize {
            for i in bits(u, 4) {
                for j in bits(u, 4).filter(|&j| j > i) {
                    let (vi, vj, w) = (u & !(1 << i), u & !(1 << j), u & !(1 << i) & !(1 << j));
                    let a = sign(u, vi).unwrap() * sign(vi, w).unwrap();
                    let b = sign(u, vj).unwrap() * sign(vj, w).unwrap();
                    assert_eq!(a, -b);
                }
            }
        }
    }

    #[test]
    fn vertex_strings() {
        assert_eq!(format_vertex(0b110, 3), "011");
        assert_eq!(parse_vertex("011"), Some(0b110));
        assert_eq!(parse_vertex("01x"), None);
    }
}
