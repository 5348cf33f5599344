use std::collections::BTreeMap;

use super::totalize::block_offsets;
use super::{bits, degree, format_vertex, sign, vertex_label, Vertex};
use crate::algebra::{BasisElement, Elem, ExactMatrix, GradedChainComplex, RingId};
use crate::error::CubeError;

/// Direction of the edge maps of a [`ModuleCube`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variance {
    /// Edge `(u, b)` maps `M(u) -> M(u - e_b)`; `M(u)` sits in degree `shift + |u|`.
    Covariant,
    /// Edge `(u, b)` maps `M(u - e_b) -> M(u)`; `M(u)` sits in degree `shift - |u|`.
    Contravariant,
}

/// A generator of a vertex module.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub label: String,
    pub aux: Vec<i64>,
}

/// A strictly commuting cube of based free modules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleCube {
    n: usize,
    ring: RingId,
    variance: Variance,
    shift: i64,
    aux_arity: usize,
    vertices: Vec<Vec<Generator>>,
    edges: BTreeMap<(Vertex, usize), ExactMatrix>,
}

impl ModuleCube {
    /// Checks shapes and strict commutativity of every 2-face.
    pub fn new(
        n: usize,
        ring: RingId,
        variance: Variance,
        shift: i64,
        aux_arity: usize,
        vertices: Vec<Vec<Generator>>,
        edges: BTreeMap<(Vertex, usize), ExactMatrix>,
    ) -> Result<Self, CubeError> {
        let cube = Self { n, ring, variance, shift, aux_arity, vertices, edges };
        cube.check_shapes()?;
        cube.check_faces()?;
        Ok(cube)
    }

    fn check_shapes(&self) -> Result<(), CubeError> {
        let bad = |m: String| Err(CubeError::Malformed(m));
        if self.vertices.len() != 1 << self.n {
            return bad(format!("expected {} vertices, found {}", 1usize << self.n, self.vertices.len()));
        }
        if self.vertices.iter().flatten().any(|g| g.aux.len() != self.aux_arity) {
            return bad("auxiliary grading arity mismatch".into());
        }
        let mut count = 0;
        for u in 0..self.vertices.len() {
            for b in bits(u, self.n) {
                count += 1;
                let Some(m) = self.edges.get(&(u, b)) else {
                    return bad(format!("missing edge at {} in coordinate {}", format_vertex(u, self.n), b + 1));
                };
                let (src, dst) = self.endpoints(u, b);
                if m.ring() != self.ring || m.rows() != self.vertices[dst].len() || m.cols() != self.vertices[src].len() {
                    return bad(format!("edge at {} in coordinate {} has the wrong shape", format_vertex(u, self.n), b + 1));
                }
            }
        }
        if count != self.edges.len() {
            return bad("edges outside the cube".into());
        }
        Ok(())
    }

    /// `(source vertex, target vertex)` of edge `(u, b)`.
    fn endpoints(&self, u: Vertex, b: usize) -> (Vertex, Vertex) {
        match self.variance {
            Variance::Covariant => (u, u & !(1 << b)),
            Variance::Contravariant => (u & !(1 << b), u),
        }
    }

    fn check_faces(&self) -> Result<(), CubeError> {
        for u in 0..self.vertices.len() {
            for i in bits(u, self.n) {
                for j in bits(u, self.n).filter(|&j| j > i) {
                    let (ui, uj) = (u & !(1 << i), u & !(1 << j));
                    let e = |x, b| &self.edges[&(x, b)];
                    let (a, b) = match self.variance {
                        Variance::Covariant => (e(ui, j).mul(e(u, i))?, e(uj, i).mul(e(u, j))?),
                        Variance::Contravariant => (e(u, j).mul(e(uj, i))?, e(u, i).mul(e(ui, j))?),
                    };
                    if a != b {
                        return Err(CubeError::NonCommutingFace { vertex: format_vertex(u, self.n), i: i + 1, j: j + 1 });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn ring(&self) -> RingId {
        self.ring
    }

    pub fn variance(&self) -> Variance {
        self.variance
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn aux_arity(&self) -> usize {
        self.aux_arity
    }

    pub fn vertex(&self, u: Vertex) -> &[Generator] {
        &self.vertices[u]
    }

    pub fn edge(&self, u: Vertex, b: usize) -> &ExactMatrix {
        &self.edges[&(u, b)]
    }

    pub fn edges(&self) -> &BTreeMap<(Vertex, usize), ExactMatrix> {
        &self.edges
    }

    pub fn hom_degree(&self, u: Vertex) -> i64 {
        match self.variance {
            Variance::Covariant => self.shift + degree(u) as i64,
            Variance::Contravariant => self.shift - degree(u) as i64,
        }
    }

    /// Dual cube: conjugate-transposed edges, opposite variance, negated shift
    /// and auxiliary gradings. Its totalization is the finitely supported dual
    /// of this cube's totalization (with no extra shift).
    pub fn dual(&self) -> Self {
        let variance = match self.variance {
            Variance::Covariant => Variance::Contravariant,
            Variance::Contravariant => Variance::Covariant,
        };
        let vertices = self
            .vertices
            .iter()
            .map(|v| v.iter().map(|g| Generator { label: g.label.clone(), aux: g.aux.iter().map(|x| -x).collect() }).collect())
            .collect();
        let edges = self.edges.iter().map(|(&k, m)| (k, m.conj_transpose())).collect();
        Self { variance, shift: -self.shift, vertices, edges, ..self.clone() }
    }

    /// Entrywise ring map `q -> q_image`.
    pub fn specialize(&self, target: RingId, q_image: &Elem) -> Result<Self, CubeError> {
        let edges = self
            .edges
            .iter()
            .map(|(&k, m)| Ok((k, m.specialize(target, q_image)?)))
            .collect::<Result<_, CubeError>>()?;
        Self::new(self.n, target, self.variance, self.shift, self.aux_arity, self.vertices.clone(), edges)
    }

    /// Same edges as `other` after comparing entries as Laurent polynomials.
    pub fn entries_equal(&self, other: &Self) -> bool {
        if self.n != other.n || self.variance != other.variance || self.vertices.len() != other.vertices.len() {
            return false;
        }
        let sizes = |c: &Self| c.vertices.iter().map(Vec::len).collect::<Vec<_>>();
        sizes(self) == sizes(other)
            && self.edges.iter().all(|(k, a)| {
                let b = &other.edges[k];
                a.entries().iter().zip(b.entries()).all(|(x, y)| self.ring.to_laurent(x) == other.ring.to_laurent(y))
            })
    }
}

/// Signed direct-sum totalization, same sign rule as for Burnside cubes.
pub fn totalize_module_cube(m: &ModuleCube) -> Result<GradedChainComplex, CubeError> {
    m.check_faces()?;
    let n = m.n;
    let sizes: Vec<usize> = m.vertices.iter().map(Vec::len).collect();
    let (offset, rank) = block_offsets(&sizes);
    let deg_of = |u: Vertex| m.hom_degree(u);
    let rank_at = |d: i64| {
        let k = match m.variance {
            Variance::Covariant => d - m.shift,
            Variance::Contravariant => m.shift - d,
        };
        usize::try_from(k).ok().and_then(|k| rank.get(&k).copied()).unwrap_or(0)
    };

    let mut basis: BTreeMap<i64, Vec<BasisElement>> = BTreeMap::new();
    for (u, gens) in m.vertices.iter().enumerate() {
        let d = deg_of(u);
        let entry = basis.entry(d).or_default();
        entry.extend(gens.iter().map(|g| BasisElement::new(vertex_label(u, n, &g.label), d, g.aux.clone())));
    }
    let mut differentials: BTreeMap<i64, ExactMatrix> = BTreeMap::new();
    for (&(u, b), e) in &m.edges {
        let (src, dst) = m.endpoints(u, b);
        let d = deg_of(src);
        let block = if sign(u, u & !(1 << b))? < 0 { e.neg() } else { e.clone() };
        let target = differentials.entry(d).or_insert_with(|| ExactMatrix::zeros(m.ring, rank_at(d - 1), rank_at(d)));
        target.set_block(offset[dst], offset[src], &block);
    }
    Ok(GradedChainComplex::new(m.ring, m.aux_arity, basis, differentials)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gens(k: usize) -> Vec<Generator> {
        (0..k).map(|i| Generator { label: format!("g{i}"), aux: vec![] }).collect()
    }

    fn ones_square(variance: Variance) -> ModuleCube {
        let one = ExactMatrix::from_ints(1, 1, &[1]);
        let edges = [(0b01, 0), (0b10, 1), (0b11, 0), (0b11, 1)].into_iter().map(|k| (k, one.clone())).collect();
        ModuleCube::new(2, RingId::Integers, variance, 0, 0, vec![gens(1); 4], edges).unwrap()
    }

    #[test]
    fn square_of_ones_anticommutes() {
        for v in [Variance::Covariant, Variance::Contravariant] {
            let t = totalize_module_cube(&ones_square(v)).unwrap();
            assert_eq!(t.total_rank(), 4);
        }
    }

    #[test]
    fn point_cube() {
        let m = ModuleCube::new(0, RingId::Integers, Variance::Covariant, 0, 0, vec![gens(2)], BTreeMap::new()).unwrap();
        let t = totalize_module_cube(&m).unwrap();
        assert_eq!(t.rank(0), 2);
        assert!(t.differentials().is_empty());
    }

    #[test]
    fn dual_totalizes_to_dual() {
        let m = ones_square(Variance::Contravariant);
        let lhs = totalize_module_cube(&m.dual()).unwrap();
        let rhs = totalize_module_cube(&m).unwrap().finitely_supported_dual_with(0, true);
        assert!(lhs.entries_equal(&rhs));
    }

    #[test]
    fn non_commuting_face_rejected() {
        let mut m = ones_square(Variance::Covariant);
        m.edges.insert((0b11, 0), ExactMatrix::from_ints(1, 1, &[2]));
        assert!(matches!(m.check_faces(), Err(CubeError::NonCommutingFace { .. })));
    }
}
