//! Lifting a monomial module cube to a Burnside cube.
//!
//! Every nonzero entry `±q^k` in column `s`, row `t` becomes one arrow orbit
//! `(s, t, k)`; signs are dropped (they come back through the totalization
//! signs). Around each face the arrows of the two composites are grouped by
//! label; a face bijection is a choice of bijection inside every label class.
//! Choices are made face by face in key order, trying permutations of each
//! class in lexicographic order, and backtracking when a completed 3-face
//! fails to commute.

use std::collections::{BTreeMap, HashMap};

use super::validate::{three_face_coherent, FaceTable, FaceTables};
use super::{bits, format_vertex, BurnsideCube, ModuleCube, Variance, Vertex};
use crate::algebra::{Elem, RingId};
use crate::burnside::{compose_with_provenance, ArrowOrbit, Correspondence, FreeGSet, GroupId};
use crate::error::CubeError;

/// Upper bound on face assignments tried before giving up.
const SEARCH_BUDGET: usize = 2_000_000;

fn group_of(ring: RingId) -> Result<GroupId, CubeError> {
    match ring {
        RingId::Integers => Ok(GroupId::Trivial),
        RingId::LaurentIntegers => Ok(GroupId::InfiniteCyclic),
        RingId::CyclicGroupRing { order } => Ok(GroupId::cyclic(order)?),
        other => Err(CubeError::Malformed(format!("cannot lift a cube over {other}"))),
    }
}

fn monomial(e: &Elem) -> Option<i64> {
    match e {
        Elem::Int(x) if x.magnitude() == &1u32.into() => Some(0),
        Elem::Poly(p) => p.as_signed_monomial().map(|(_, k)| k),
        _ => None,
    }
}

/// One face: label classes as (positions in A, positions in B).
struct FaceChoice {
    key: (Vertex, usize, usize),
    classes: Vec<(Vec<usize>, Vec<usize>)>,
}

impl FaceChoice {
    fn mapping(&self, perms: &[Vec<usize>], len: usize) -> Vec<usize> {
        let mut m = vec![0; len];
        for ((a, _), p) in self.classes.iter().zip(perms) {
            for (x, y) in a.iter().zip(p) {
                m[*x] = *y;
            }
        }
        m
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        v.sort_unstable();
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Advances the odometer of class permutations; false once it wraps around.
fn next_assignment(perms: &mut [Vec<usize>]) -> bool {
    for p in perms.iter_mut().rev() {
        if next_permutation(p) {
            return true;
        }
    }
    false
}

struct Search<'a> {
    cube: &'a BurnsideCube,
    faces: Vec<FaceChoice>,
    lengths: Vec<usize>,
    tables: FaceTables,
    budget: usize,
    /// 3-faces `(u, i, j, k)` to check once face `faces[idx]` is fixed.
    checks: Vec<Vec<(Vertex, usize, usize, usize)>>,
}

impl Search<'_> {
    fn run(&mut self, idx: usize) -> Result<bool, CubeError> {
        if idx == self.faces.len() {
            return Ok(true);
        }
        let (u, i, j) = self.faces[idx].key;
        let mut perms: Vec<Vec<usize>> = self.faces[idx].classes.iter().map(|(_, b)| b.clone()).collect();
        loop {
            if self.budget == 0 {
                return Err(CubeError::NoCoherentMatching("search budget exhausted".into()));
            }
            self.budget -= 1;
            let mapping = self.faces[idx].mapping(&perms, self.lengths[idx]);
            self.tables.0.insert((u, i, j), FaceTable::new(self.cube, u, i, j, mapping));
            let ok = self.checks[idx].iter().all(|&(w, a, b, c)| three_face_coherent(self.cube, &self.tables, w, a, b, c));
            if ok && self.run(idx + 1)? {
                return Ok(true);
            }
            if !next_assignment(&mut perms) {
                self.tables.0.remove(&(u, i, j));
                return Ok(false);
            }
        }
    }
}

/// Lifts a covariant cube whose entries are all `±q^k` (or `±1`) to a
/// Burnside cube over the matching group. Generator labels become orbit labels.
pub fn lift_monomial_cube(m: &ModuleCube) -> Result<BurnsideCube, CubeError> {
    if m.variance() != Variance::Covariant {
        return Err(CubeError::Malformed("only covariant module cubes can be lifted; dualize first".into()));
    }
    let group = group_of(m.ring())?;
    let n = m.dim();
    let vertices = (0..1usize << n)
        .map(|u| FreeGSet::new(group, m.vertex(u).iter().map(|g| g.label.clone()).collect()))
        .collect::<Result<Vec<_>, _>>()?;
    let mut edges = BTreeMap::new();
    for (&(u, b), mat) in m.edges() {
        let mut arrows = Vec::new();
        for (t, s, e) in mat.nonzero() {
            let k = monomial(e).ok_or_else(|| CubeError::NonMonomialEntry {
                vertex: format_vertex(u, n),
                k: b + 1,
                row: t,
                col: s,
                entry: e.to_string(),
            })?;
            arrows.push(ArrowOrbit::new(s, t, k));
        }
        arrows.sort();
        let v = u & !(1 << b);
        edges.insert((u, b), Correspondence::new(vertices[u].clone(), vertices[v].clone(), arrows)?);
    }
    let aux = (0..1usize << n).map(|u| m.vertex(u).iter().map(|g| g.aux.clone()).collect()).collect();
    let mut cube = BurnsideCube::from_edges(n, group, vertices, edges)?;
    cube.set_aux(m.aux_arity(), aux)?;

    let mut faces = Vec::new();
    let mut lengths = Vec::new();
    let mut fixed = FaceTables(HashMap::new());
    let keys: Vec<_> = cube.faces().keys().copied().collect();
    for (u, i, j) in keys {
        let (a, _) = compose_with_provenance(cube.edge(u, i), cube.edge(u & !(1 << i), j))?;
        let (b, _) = compose_with_provenance(cube.edge(u, j), cube.edge(u & !(1 << j), i))?;
        let mut classes: BTreeMap<ArrowOrbit, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
        for (x, arrow) in a.arrows().iter().enumerate() {
            classes.entry(*arrow).or_default().0.push(x);
        }
        for (y, arrow) in b.arrows().iter().enumerate() {
            classes.entry(*arrow).or_default().1.push(y);
        }
        if let Some((label, _)) = classes.iter().find(|(_, (x, y))| x.len() != y.len()) {
            return Err(CubeError::NoCoherentMatching(format!(
                "face at {} in coordinates ({}, {}): composites disagree on arrow {label:?}",
                format_vertex(u, n),
                i + 1,
                j + 1
            )));
        }
        let choice = FaceChoice { key: (u, i, j), classes: classes.into_values().collect() };
        if choice.classes.iter().all(|(x, _)| x.len() == 1) {
            let mapping = choice.mapping(&choice.classes.iter().map(|(_, b)| b.clone()).collect::<Vec<_>>(), a.len());
            cube.set_face_mapping(u, i, j, mapping.clone());
            fixed.0.insert((u, i, j), FaceTable::new(&cube, u, i, j, mapping));
        } else {
            lengths.push(a.len());
            faces.push(choice);
        }
    }

    // Each 3-face is checked right after the last of its six faces is fixed.
    let order: HashMap<(Vertex, usize, usize), usize> = faces.iter().enumerate().map(|(x, f)| (f.key, x)).collect();
    let mut checks = vec![Vec::new(); faces.len()];
    let mut unconstrained = Vec::new();
    for u in 0..1usize << n {
        let b: Vec<usize> = bits(u, n).collect();
        for x in 0..b.len() {
            for y in x + 1..b.len() {
                for z in y + 1..b.len() {
                    let (i, j, k) = (b[x], b[y], b[z]);
                    let six = [
                        (u, i, j),
                        (u, i, k),
                        (u, j, k),
                        (u & !(1 << i), j, k),
                        (u & !(1 << j), i, k),
                        (u & !(1 << k), i, j),
                    ];
                    match six.iter().filter_map(|f| order.get(f)).max() {
                        Some(&last) => checks[last].push((u, i, j, k)),
                        None => unconstrained.push((u, i, j, k)),
                    }
                }
            }
        }
    }
    if let Some(&(u, i, j, k)) =
        unconstrained.iter().find(|&&(u, i, j, k)| !three_face_coherent(&cube, &fixed, u, i, j, k))
    {
        return Err(CubeError::NoCoherentMatching(format!(
            "3-face at {} in coordinates ({}, {}, {}) has no freedom and does not commute",
            format_vertex(u, n),
            i + 1,
            j + 1,
            k + 1
        )));
    }

    let mut search = Search { cube: &cube, faces, lengths, tables: fixed, budget: SEARCH_BUDGET, checks };
    if !search.run(0)? {
        return Err(CubeError::NoCoherentMatching("no coherent choice of face bijections exists".into()));
    }
    let chosen: Vec<((Vertex, usize, usize), Vec<usize>)> =
        search.faces.iter().map(|f| (f.key, search.tables.0[&f.key].mapping_vec())).collect();
    for ((u, i, j), mapping) in chosen {
        cube.set_face_mapping(u, i, j, mapping);
    }
    Ok(cube)
}
