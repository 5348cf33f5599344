use std::collections::BTreeMap;

use rayon::prelude::*;

use super::{bits, degree, format_vertex, sign, validate_cube, BurnsideCube, Vertex};
use crate::algebra::{BasisElement, ExactMatrix, GradedChainComplex};
use crate::burnside::linearize;
use crate::error::CubeError;

/// Basis label of orbit `label` at vertex `u`.
pub fn vertex_label(u: Vertex, n: usize, label: &str) -> String {
    format!("{}:{label}", format_vertex(u, n))
}

/// Position of every vertex's block inside its degree, vertices in increasing
/// bitmask order within a degree.
pub(crate) fn block_offsets(sizes: &[usize]) -> (Vec<usize>, BTreeMap<usize, usize>) {
    let mut offset = vec![0; sizes.len()];
    let mut rank: BTreeMap<usize, usize> = BTreeMap::new();
    for (u, &s) in sizes.iter().enumerate() {
        let r = rank.entry(degree(u)).or_default();
        offset[u] = *r;
        *r += s;
    }
    (offset, rank)
}

/// `Tot(F)`: the linearized vertex modules in degree `|u|`, with differential
/// blocks `(-1)^{s_{u,v}} · linearize(F(u -> v))`.
pub fn totalize(cube: &BurnsideCube) -> Result<GradedChainComplex, CubeError> {
    validate_cube(cube).map_err(CubeError::InvalidCube)?;
    Ok(totalize_unchecked(cube)?)
}

pub(crate) fn totalize_unchecked(cube: &BurnsideCube) -> Result<GradedChainComplex, crate::AlgebraError> {
    let n = cube.dim();
    let ring = cube.group().ring();
    let sizes: Vec<usize> = cube.vertices().iter().map(|v| v.len()).collect();
    let (offset, rank) = block_offsets(&sizes);

    let mut basis: BTreeMap<i64, Vec<BasisElement>> = BTreeMap::new();
    for (u, set) in cube.vertices().iter().enumerate() {
        let d = degree(u) as i64;
        let entry = basis.entry(d).or_default();
        for (o, label) in set.orbits().iter().enumerate() {
            entry.push(BasisElement::new(vertex_label(u, n, label), d, cube.aux(u)[o].clone()));
        }
    }

    let blocks: Vec<(usize, usize, usize, ExactMatrix)> = (0..sizes.len())
        .into_par_iter()
        .flat_map_iter(|u| {
            bits(u, n).map(move |b| {
                let v = u & !(1 << b);
                let m = linearize(cube.edge(u, b));
                let m = if sign(u, v).unwrap() < 0 { m.neg() } else { m };
                (degree(u), u, v, m)
            })
        })
        .collect();

    let mut differentials: BTreeMap<i64, ExactMatrix> = BTreeMap::new();
    for (d, u, v, m) in blocks {
        let (rows, cols) = (rank.get(&(d - 1)).copied().unwrap_or(0), rank[&d]);
        let target = differentials.entry(d as i64).or_insert_with(|| ExactMatrix::zeros(ring, rows, cols));
        target.set_block(offset[v], offset[u], &m);
    }
    GradedChainComplex::new(ring, cube.aux_arity(), basis, differentials)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::homology;
    use crate::burnside::{ArrowOrbit, Correspondence, FreeGSet, GroupId};

    fn one_dim(src: usize, arrows: &[(usize, usize)]) -> BurnsideCube {
        let g = GroupId::Trivial;
        let a = FreeGSet::numbered(g, "a", src);
        let c = FreeGSet::numbered(g, "c", 1);
        let arrows = arrows.iter().map(|&(s, t)| ArrowOrbit::new(s, t, 0)).collect();
        let e = Correspondence::new(a.clone(), c.clone(), arrows).unwrap();
        BurnsideCube::from_edges(1, g, vec![c, a], [((1, 0), e)].into()).unwrap()
    }

    #[test]
    fn single_arrow_is_acyclic() {
        let t = totalize(&one_dim(1, &[(0, 0)])).unwrap();
        assert_eq!(t.differential(1), ExactMatrix::from_ints(1, 1, &[1]));
        assert!(homology(&t).unwrap().is_zero());
    }

    #[test]
    fn two_arrows_into_one() {
        // d = (1 1): kernel spanned by (1, -1), image everything.
        let t = totalize(&one_dim(2, &[(0, 0), (1, 0)])).unwrap();
        let h = homology(&t).unwrap().by_degree();
        assert_eq!(h[&1].free_rank, 1);
        assert!(!h.contains_key(&0));
    }

    #[test]
    fn empty_cube_is_zero() {
        let g = GroupId::Trivial;
        let e = FreeGSet::numbered(g, "x", 0);
        let id = Correspondence::empty(e.clone(), e.clone()).unwrap();
        let c = BurnsideCube::from_edges(1, g, vec![e.clone(), e], [((1, 0), id)].into()).unwrap();
        assert_eq!(totalize(&c).unwrap().total_rank(), 0);
    }
}
