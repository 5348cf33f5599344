use std::collections::{BTreeMap, HashMap};

use super::totalize::{block_offsets, totalize_unchecked};
use super::validate::FaceTable;
use super::{bits, degree, validate_cube, BurnsideCube, Vertex};
use crate::algebra::{ExactMatrix, GradedChainComplex};
use crate::burnside::{
    compose_with_provenance, dual_correspondence, linearize, quotient_by_subgroup, Correspondence, FreeGSet, GroupId,
};
use crate::error::{BurnsideError, CubeError};

fn validated(cube: &BurnsideCube) -> Result<(), CubeError> {
    validate_cube(cube).map_err(CubeError::InvalidCube)
}

/// The cube on `2^n` obtained by reversing every correspondence: vertex `u`
/// of the result carries `F(complement u)`, auxiliary gradings are negated,
/// and face bijections are the inverses of the original ones.
pub fn dual_cube(f: &BurnsideCube) -> Result<BurnsideCube, CubeError> {
    validated(f)?;
    let n = f.dim();
    let full = (1usize << n) - 1;
    let vertices: Vec<FreeGSet> = (0..=full).map(|x| f.vertex(full ^ x).clone()).collect();
    let mut edges = BTreeMap::new();
    for x in 0..=full {
        for k in bits(x, n) {
            edges.insert((x, k), dual_correspondence(f.edge((full ^ x) | 1 << k, k)));
        }
    }
    let mut faces = BTreeMap::new();
    for x in 0..=full {
        for i in bits(x, n) {
            for j in bits(x, n).filter(|&j| j > i) {
                let top = (full ^ x) | 1 << i | 1 << j;
                let table = FaceTable::new(f, top, i, j, f.face_mapping(top, i, j).to_vec());
                let (_, g_a) = compose_with_provenance(&edges[&(x, i)], &edges[&(x & !(1 << i), j)])?;
                let (_, g_b) = compose_with_provenance(&edges[&(x, j)], &edges[&(x & !(1 << j), i)])?;
                let g_b_index: HashMap<(usize, usize), usize> = g_b.iter().enumerate().map(|(k, &p)| (p, k)).collect();
                let mapping = g_a
                    .iter()
                    .map(|&(p, q)| {
                        let (q2, p2) = table.backward((q, p));
                        g_b_index[&(p2, q2)]
                    })
                    .collect();
                faces.insert((x, i, j), mapping);
            }
        }
    }
    let aux = (0..=full).map(|x| f.aux(full ^ x).iter().map(|g| g.iter().map(|v| -v).collect()).collect()).collect();
    BurnsideCube::with_aux(n, f.group(), vertices, edges, faces, f.aux_arity(), aux)
}

/// Levelwise quotient of an infinite-cyclic cube by `rZ`.
pub fn quotient_cube(f: &BurnsideCube, r: u64) -> Result<BurnsideCube, CubeError> {
    if f.group() != GroupId::InfiniteCyclic {
        return Err(BurnsideError::MismatchedGroup.into());
    }
    validated(f)?;
    let g = GroupId::cyclic(r)?;
    let vertices =
        f.vertices().iter().map(|v| FreeGSet::new(g, v.orbits().to_vec())).collect::<Result<Vec<_>, _>>()?;
    let edges = f
        .edges()
        .iter()
        .map(|(&k, e)| Ok((k, quotient_by_subgroup(e, r)?)))
        .collect::<Result<BTreeMap<_, _>, BurnsideError>>()?;
    let aux = (0..vertices.len()).map(|u| f.aux(u).to_vec()).collect();
    BurnsideCube::with_aux(f.dim(), g, vertices, edges, f.faces().clone(), f.aux_arity(), aux)
}

/// Inserts bit `value` at position `bit` of an `(n-1)`-bit vertex.
fn insert_bit(u: Vertex, bit: usize, value: bool) -> Vertex {
    let low = u & ((1 << bit) - 1);
    let high = (u >> bit) << (bit + 1);
    low | high | (usize::from(value) << bit)
}

/// The `(n-1)`-dimensional face of `f` where coordinate `bit` is fixed to `value`.
pub fn restrict_cube(f: &BurnsideCube, bit: usize, value: bool) -> Result<BurnsideCube, CubeError> {
    let n = f.dim();
    assert!(bit < n, "coordinate out of range");
    let lift = |b: usize| if b < bit { b } else { b + 1 };
    let m = n - 1;
    let verts: Vec<Vertex> = (0..1usize << m).map(|u| insert_bit(u, bit, value)).collect();
    let vertices = verts.iter().map(|&u| f.vertex(u).clone()).collect();
    let mut edges = BTreeMap::new();
    let mut faces = BTreeMap::new();
    for (x, &u) in verts.iter().enumerate() {
        for b in bits(x, m) {
            edges.insert((x, b), f.edge(u, lift(b)).clone());
            for c in bits(x, m).filter(|&c| c > b) {
                faces.insert((x, b, c), f.face_mapping(u, lift(b), lift(c)).to_vec());
            }
        }
    }
    let aux = verts.iter().map(|&u| f.aux(u).to_vec()).collect();
    BurnsideCube::with_aux(m, f.group(), vertices, edges, faces, f.aux_arity(), aux)
}

/// A natural transformation `F -> F'` between `n`-cubes, stored as an
/// `(n+1)`-cube whose last coordinate is 1 on `F` and 0 on `F'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubeNaturalTransformation {
    cube: BurnsideCube,
}

impl CubeNaturalTransformation {
    pub fn new(cube: BurnsideCube) -> Result<Self, CubeError> {
        if cube.dim() == 0 {
            return Err(CubeError::Malformed("a natural transformation needs dimension at least 1".into()));
        }
        Ok(Self { cube })
    }

    /// Assembles the `(n+1)`-cube from source, target and the rung
    /// correspondences `F(u) -> F'(u)`; mixed faces use first-match bijections.
    pub fn from_parts(
        source: &BurnsideCube,
        target: &BurnsideCube,
        rungs: Vec<Correspondence>,
    ) -> Result<Self, CubeError> {
        let n = source.dim();
        if target.dim() != n || source.group() != target.group() || rungs.len() != 1 << n {
            return Err(CubeError::Malformed("source, target and rungs do not fit together".into()));
        }
        let top = 1usize << n;
        let mut vertices = target.vertices().to_vec();
        vertices.extend(source.vertices().iter().cloned());
        let mut edges = BTreeMap::new();
        for (&(u, b), e) in target.edges() {
            edges.insert((u, b), e.clone());
        }
        for (&(u, b), e) in source.edges() {
            edges.insert((u | top, b), e.clone());
        }
        for (u, r) in rungs.into_iter().enumerate() {
            edges.insert((u | top, n), r);
        }
        let cube = BurnsideCube::from_edges(n + 1, source.group(), vertices, edges)?;
        let mut faces = cube.faces().clone();
        for (&(u, i, j), m) in target.faces() {
            faces.insert((u, i, j), m.clone());
        }
        for (&(u, i, j), m) in source.faces() {
            faces.insert((u | top, i, j), m.clone());
        }
        let cube = BurnsideCube::new(n + 1, source.group(), cube.vertices().to_vec(), cube.edges().clone(), faces)?;
        Self::new(cube)
    }

    pub fn cube(&self) -> &BurnsideCube {
        &self.cube
    }

    pub fn source(&self) -> BurnsideCube {
        restrict_cube(&self.cube, self.cube.dim() - 1, true).expect("faces of a cube are cubes")
    }

    pub fn target(&self) -> BurnsideCube {
        restrict_cube(&self.cube, self.cube.dim() - 1, false).expect("faces of a cube are cubes")
    }

    pub fn rung(&self, u: Vertex) -> &Correspondence {
        let n = self.cube.dim() - 1;
        self.cube.edge(u | 1 << n, n)
    }
}

/// Degreewise maps between two complexes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    pub source: GradedChainComplex,
    pub target: GradedChainComplex,
    /// `blocks[k]` has shape `target.rank(k) x source.rank(k)`.
    pub blocks: BTreeMap<i64, ExactMatrix>,
}

impl ChainMap {
    pub fn block(&self, k: i64) -> ExactMatrix {
        self.blocks.get(&k).cloned().unwrap_or_else(|| {
            ExactMatrix::zeros(self.source.ring(), self.target.rank(k), self.source.rank(k))
        })
    }

    /// `d' ∘ φ_k = φ_{k-1} ∘ d` in every degree.
    pub fn is_chain_map(&self) -> bool {
        let degrees: std::collections::BTreeSet<i64> = self.source.degrees().chain(self.target.degrees()).collect();
        degrees.into_iter().all(|k| {
            let lhs = self.target.differential(k).mul(&self.block(k));
            let rhs = self.block(k - 1).mul(&self.source.differential(k));
            matches!((lhs, rhs), (Ok(a), Ok(b)) if a == b)
        })
    }
}

/// The chain map `Tot(F) -> Tot(F')` whose block at vertex `u` is the
/// linearized rung `F(u) -> F'(u)`, without sign.
pub fn nat_transformation_to_chain_map(eta: &CubeNaturalTransformation) -> Result<ChainMap, CubeError> {
    validated(&eta.cube)?;
    let (f, g) = (eta.source(), eta.target());
    let source = totalize_unchecked(&f)?;
    let target = totalize_unchecked(&g)?;
    let n = f.dim();
    let (off_f, _) = block_offsets(&f.vertices().iter().map(FreeGSet::len).collect::<Vec<_>>());
    let (off_g, _) = block_offsets(&g.vertices().iter().map(FreeGSet::len).collect::<Vec<_>>());
    let ring = f.group().ring();
    let mut blocks: BTreeMap<i64, ExactMatrix> = BTreeMap::new();
    for u in 0..1usize << n {
        let k = degree(u) as i64;
        let block = blocks.entry(k).or_insert_with(|| ExactMatrix::zeros(ring, target.rank(k), source.rank(k)));
        block.set_block(off_g[u], off_f[u], &linearize(eta.rung(u)));
    }
    Ok(ChainMap { source, target, blocks })
}
