//! Chain-level homotopy colimit over the extended cube `2^n ∪ {*}`, where
//! every vertex other than `0` has one extra morphism to `*` and `K(*) = 0`.
//!
//! Generators are pairs (chain `u_0 -> u_1 -> ... -> u_m` of non-identity
//! morphisms, basis element of `K(u_0)`) in degree `m`; the differential is
//! `Σ (-1)^i d_i` where `d_0` applies `K(u_0 -> u_1)` (zero if `u_1 = *`),
//! `d_i` for `0 < i < m` composes away `u_i`, and `d_m` drops `u_m`.

use std::collections::{BTreeMap, HashMap};

use super::{format_vertex, validate_cube, BurnsideCube, Vertex};
use crate::algebra::{BasisElement, ExactMatrix, GradedChainComplex};
use crate::burnside::linearize;
use crate::error::CubeError;

const STAR: Vertex = usize::MAX;

fn chains(n: usize) -> Vec<Vec<Vertex>> {
    fn extend(chain: &mut Vec<Vertex>, out: &mut Vec<Vec<Vertex>>) {
        out.push(chain.clone());
        let last = *chain.last().unwrap();
        if last == STAR {
            return;
        }
        // proper sub-masks of `last`, in decreasing order
        let mut v = last;
        while v != 0 {
            v = (v - 1) & last;
            chain.push(v);
            extend(chain, out);
            chain.pop();
        }
        if last != 0 {
            chain.push(STAR);
            extend(chain, out);
            chain.pop();
        }
    }
    let mut out = Vec::new();
    for u in 0..1usize << n {
        extend(&mut vec![u], &mut out);
    }
    out
}

fn chain_label(chain: &[Vertex], n: usize) -> String {
    chain.iter().map(|&u| if u == STAR { "*".to_string() } else { format_vertex(u, n) }).collect::<Vec<_>>().join(">")
}

pub fn hocolim_complex(f: &BurnsideCube) -> Result<GradedChainComplex, CubeError> {
    validate_cube(f).map_err(CubeError::InvalidCube)?;
    let n = f.dim();
    let ring = f.group().ring();

    let mut basis: BTreeMap<i64, Vec<BasisElement>> = BTreeMap::new();
    let mut index: HashMap<(Vec<Vertex>, usize), usize> = HashMap::new();
    let all = chains(n);
    for chain in &all {
        let m = chain.len() as i64 - 1;
        let u0 = chain[0];
        let slot = basis.entry(m).or_default();
        for (o, label) in f.vertex(u0).orbits().iter().enumerate() {
            index.insert((chain.clone(), o), slot.len());
            slot.push(BasisElement::new(format!("{}|{label}", chain_label(chain, n)), m, f.aux(u0)[o].clone()));
        }
    }

    let mut maps: HashMap<(Vertex, Vertex), ExactMatrix> = HashMap::new();
    let mut differentials: BTreeMap<i64, ExactMatrix> = BTreeMap::new();
    for chain in all.iter().filter(|c| c.len() > 1) {
        let m = chain.len() - 1;
        let d = differentials.entry(m as i64).or_insert_with(|| {
            ExactMatrix::zeros(ring, basis.get(&(m as i64 - 1)).map_or(0, Vec::len), basis[&(m as i64)].len())
        });
        let u0 = chain[0];
        for o in 0..f.vertex(u0).len() {
            let col = index[&(chain.clone(), o)];
            if chain[1] != STAR {
                let k = maps.entry((u0, chain[1])).or_insert_with(|| linearize(&f.correspondence_between(u0, chain[1])));
                let face = chain[1..].to_vec();
                for t in 0..k.rows() {
                    if !k.is_zero_at(t, o) {
                        d.add_at(index[&(face.clone(), t)], col, k.get(t, o));
                    }
                }
            }
            for i in 1..=m {
                let mut face = chain.clone();
                face.remove(i);
                let sign = if i % 2 == 0 { ring.one() } else { ring.neg(&ring.one()) };
                d.add_at(index[&(face, o)], col, &sign);
            }
        }
    }
    Ok(GradedChainComplex::new(ring, f.aux_arity(), basis, differentials)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::homology;
    use crate::burnside::{identity_correspondence, FreeGSet, GroupId};
    use crate::cube::totalize;

    #[test]
    fn chain_counts() {
        // n = 0: just the vertex; n = 1: 0, 1, 1>0, 1>*
        assert_eq!(chains(0).len(), 1);
        assert_eq!(chains(1).len(), 4);
    }

    #[test]
    fn point_and_identity_edge() {
        let g = GroupId::Trivial;
        let x = FreeGSet::numbered(g, "a", 1);
        let point = BurnsideCube::new(0, g, vec![x.clone()], BTreeMap::new(), BTreeMap::new()).unwrap();
        let h = homology(&hocolim_complex(&point).unwrap()).unwrap();
        assert_eq!(h, homology(&totalize(&point).unwrap()).unwrap());
        assert_eq!(h.by_degree()[&0].free_rank, 1);

        let edge = BurnsideCube::from_edges(1, g, vec![x.clone(), x.clone()], [((1, 0), identity_correspondence(&x))].into())
            .unwrap();
        let h = homology(&hocolim_complex(&edge).unwrap()).unwrap();
        assert!(h.is_zero());
        assert_eq!(h, homology(&totalize(&edge).unwrap()).unwrap());
    }
}
