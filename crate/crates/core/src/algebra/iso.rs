//! Isomorphism testing for based complexes, restricted to monomial witnesses:
//! every basis element is sent to a unit multiple of a single basis element of
//! the same degree and auxiliary grading.

use std::collections::{BTreeMap, HashMap};

use super::complex::GradedChainComplex;
use super::ring::{Elem, RingId};

/// Search budget (number of tentative assignments).
pub const NODE_CAP: usize = 1_000_000;

/// `a`'s basis element `i` in degree `deg` maps to `unit * b.basis(deg)[target]`
/// where `(target, unit) = maps[deg][i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoWitness {
    pub maps: BTreeMap<i64, Vec<(usize, Elem)>>,
}

impl IsoWitness {
    /// Independent check that the witness conjugates the differentials.
    pub fn verify(&self, a: &GradedChainComplex, b: &GradedChainComplex) -> bool {
        if a.ring() != b.ring() {
            return false;
        }
        let ring = a.ring();
        for deg in a.degrees().chain(b.degrees()) {
            let m = self.maps.get(&deg).map(Vec::as_slice).unwrap_or(&[]);
            if m.len() != a.rank(deg) || m.len() != b.rank(deg) {
                return false;
            }
            let mut seen = vec![false; m.len()];
            for (i, (t, u)) in m.iter().enumerate() {
                if *t >= seen.len() || seen[*t] || !ring.is_unit(u) || a.basis(deg)[i].aux != b.basis(deg)[*t].aux {
                    return false;
                }
                seen[*t] = true;
            }
        }
        for deg in a.degrees() {
            let (da, db) = (a.differential(deg), b.differential(deg));
            let (src, dst) = (&self.maps[&deg], self.maps.get(&(deg - 1)));
            for x in 0..da.cols() {
                for y in 0..da.rows() {
                    let dst = dst.expect("target degree present when rows > 0");
                    let (sx, ex) = &src[x];
                    let (sy, ey) = &dst[y];
                    let lhs = ring.mul(db.get(*sy, *sx), ex);
                    let rhs = ring.mul(da.get(y, x), ey);
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Dir {
    /// Edge from this node to the neighbour (`d(this)` hits the neighbour).
    Out,
    In,
}

struct Side {
    nodes: Vec<(i64, usize)>,
    aux: Vec<Vec<i64>>,
    adj: Vec<Vec<(usize, Dir)>>,
    // (source, target) -> entry
    entries: HashMap<(usize, usize), Elem>,
}

impl Side {
    fn build(c: &GradedChainComplex) -> Self {
        let mut nodes = Vec::new();
        let mut aux = Vec::new();
        let mut id = HashMap::new();
        for deg in c.degrees() {
            for (i, e) in c.basis(deg).iter().enumerate() {
                id.insert((deg, i), nodes.len());
                nodes.push((deg, i));
                aux.push(e.aux.clone());
            }
        }
        let mut adj = vec![Vec::new(); nodes.len()];
        let mut entries = HashMap::new();
        for (&deg, d) in c.differentials() {
            for (r, col, e) in d.nonzero() {
                let s = id[&(deg, col)];
                let t = id[&(deg - 1, r)];
                adj[s].push((t, Dir::Out));
                adj[t].push((s, Dir::In));
                entries.insert((s, t), e.clone());
            }
        }
        Self { nodes, aux, adj, entries }
    }

    fn signature(&self, n: usize) -> (i64, &[i64], usize, usize) {
        let outs = self.adj[n].iter().filter(|(_, d)| *d == Dir::Out).count();
        (self.nodes[n].0, &self.aux[n], outs, self.adj[n].len() - outs)
    }
}

struct Search<'a> {
    ring: RingId,
    a: &'a Side,
    b: &'a Side,
    order: Vec<usize>,
    candidates: Vec<Vec<usize>>,
    sigma: Vec<Option<(usize, Elem)>>,
    used: Vec<Option<usize>>,
    budget: usize,
}

impl Search<'_> {
    /// Unit for `x -> t` forced by an assigned neighbour, or `one` if none.
    fn forced_unit(&self, x: usize, t: usize) -> Option<Elem> {
        for &(y, dir) in &self.a.adj[x] {
            let Some((sy, ey)) = &self.sigma[y] else { continue };
            return match dir {
                Dir::Out => {
                    // d_b(t -> sy) * e_x = d_a(x -> y) * e_y
                    let eb = self.b.entries.get(&(t, *sy))?;
                    let lhs = self.ring.mul(&self.a.entries[&(x, y)], ey);
                    self.ring.unit_ratio(&lhs, eb)
                }
                Dir::In => {
                    // d_b(sy -> t) * e_y = d_a(y -> x) * e_x
                    let eb = self.b.entries.get(&(*sy, t))?;
                    let lhs = self.ring.mul(eb, ey);
                    self.ring.unit_ratio(&lhs, &self.a.entries[&(y, x)])
                }
            };
        }
        Some(self.ring.one())
    }

    fn consistent(&self, x: usize, t: usize, ex: &Elem) -> bool {
        let ring = self.ring;
        let mut matched = 0;
        for &(y, dir) in &self.a.adj[x] {
            let Some((sy, ey)) = &self.sigma[y] else { continue };
            matched += 1;
            let ok = match dir {
                Dir::Out => self
                    .b
                    .entries
                    .get(&(t, *sy))
                    .is_some_and(|eb| ring.mul(eb, ex) == ring.mul(&self.a.entries[&(x, y)], ey)),
                Dir::In => self
                    .b
                    .entries
                    .get(&(*sy, t))
                    .is_some_and(|eb| ring.mul(eb, ey) == ring.mul(&self.a.entries[&(y, x)], ex)),
            };
            if !ok {
                return false;
            }
        }
        // Every assigned neighbour of t in b must come from a neighbour of x in a.
        let assigned_b = self.b.adj[t].iter().filter(|(z, _)| self.used[*z].is_some()).count();
        assigned_b == matched
    }

    fn run(&mut self, pos: usize) -> bool {
        if pos == self.order.len() {
            return true;
        }
        let x = self.order[pos];
        for ci in 0..self.candidates[x].len() {
            let t = self.candidates[x][ci];
            if self.used[t].is_some() {
                continue;
            }
            if self.budget == 0 {
                return false;
            }
            self.budget -= 1;
            let Some(ex) = self.forced_unit(x, t) else { continue };
            if !self.consistent(x, t, &ex) {
                continue;
            }
            self.sigma[x] = Some((t, ex));
            self.used[t] = Some(x);
            if self.run(pos + 1) {
                return true;
            }
            self.sigma[x] = None;
            self.used[t] = None;
        }
        false
    }
}

/// Searches for a degree- and grading-preserving monomial isomorphism `a -> b`.
/// Sound always; complete for monomially conjugate complexes within the
/// [`NODE_CAP`] budget.
pub fn complexes_isomorphic(a: &GradedChainComplex, b: &GradedChainComplex) -> Option<IsoWitness> {
    if a.ring() != b.ring() || a.aux_arity() != b.aux_arity() {
        return None;
    }
    let (sa, sb) = (Side::build(a), Side::build(b));
    if sa.nodes.len() != sb.nodes.len() {
        return None;
    }
    let mut by_sig: HashMap<(i64, &[i64], usize, usize), Vec<usize>> = HashMap::new();
    for t in 0..sb.nodes.len() {
        by_sig.entry(sb.signature(t)).or_default().push(t);
    }
    let mut candidates = Vec::with_capacity(sa.nodes.len());
    for x in 0..sa.nodes.len() {
        let mut c = by_sig.get(&sa.signature(x)).cloned().unwrap_or_default();
        if c.is_empty() {
            return None;
        }
        // Try the same position first.
        c.sort_by_key(|&t| (sb.nodes[t] != sa.nodes[x], t));
        candidates.push(c);
    }
    let mut counts: HashMap<(i64, &[i64], usize, usize), isize> = HashMap::new();
    for x in 0..sa.nodes.len() {
        *counts.entry(sa.signature(x)).or_default() += 1;
    }
    for t in 0..sb.nodes.len() {
        *counts.entry(sb.signature(t)).or_default() -= 1;
    }
    if counts.values().any(|&c| c != 0) {
        return None;
    }

    // Breadth-first order within connected components so that units propagate.
    let mut order = Vec::with_capacity(sa.nodes.len());
    let mut seen = vec![false; sa.nodes.len()];
    for root in 0..sa.nodes.len() {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            order.push(x);
            for &(y, _) in &sa.adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
    }

    let mut search = Search {
        ring: a.ring(),
        a: &sa,
        b: &sb,
        order,
        candidates,
        sigma: vec![None; sa.nodes.len()],
        used: vec![None; sb.nodes.len()],
        budget: NODE_CAP,
    };
    if !search.run(0) {
        return None;
    }
    let mut maps: BTreeMap<i64, Vec<(usize, Elem)>> = BTreeMap::new();
    for (x, s) in search.sigma.into_iter().enumerate() {
        let (deg, _) = sa.nodes[x];
        let (t, e) = s.expect("complete assignment");
        maps.entry(deg).or_default().push((sb.nodes[t].1, e));
    }
    Some(IsoWitness { maps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{BasisElement, ExactMatrix};

    fn complex(ranks: &[(i64, usize)], ds: Vec<(i64, ExactMatrix)>) -> GradedChainComplex {
        let basis = ranks
            .iter()
            .map(|&(deg, n)| (deg, (0..n).map(|i| BasisElement::new(format!("c{deg}.{i}"), deg, vec![])).collect()))
            .collect();
        GradedChainComplex::new(RingId::Integers, 0, basis, ds.into_iter().collect()).unwrap()
    }

    #[test]
    fn identity_witness() {
        let c = complex(&[(1, 2), (0, 2)], vec![(1, ExactMatrix::from_ints(2, 2, &[1, 2, 0, 3]))]);
        let w = complexes_isomorphic(&c, &c).unwrap();
        assert!(w.verify(&c, &c));
        assert!(w.maps[&1].iter().enumerate().all(|(i, (t, _))| i == *t));
    }

    #[test]
    fn permuted_and_signed() {
        let a = complex(&[(1, 2), (0, 2)], vec![(1, ExactMatrix::from_ints(2, 2, &[1, 2, 0, 3]))]);
        // swap the two degree-0 generators and negate one of them
        let b = complex(&[(1, 2), (0, 2)], vec![(1, ExactMatrix::from_ints(2, 2, &[0, -3, 1, 2]))]);
        let w = complexes_isomorphic(&a, &b).unwrap();
        assert!(w.verify(&a, &b));
    }

    #[test]
    fn rank_mismatch() {
        let a = complex(&[(0, 1)], vec![]);
        let b = complex(&[(0, 2)], vec![]);
        assert!(complexes_isomorphic(&a, &b).is_none());
    }

    #[test]
    fn different_torsion_not_isomorphic() {
        let a = complex(&[(1, 1), (0, 1)], vec![(1, ExactMatrix::from_ints(1, 1, &[2]))]);
        let b = complex(&[(1, 1), (0, 1)], vec![(1, ExactMatrix::from_ints(1, 1, &[3]))]);
        assert!(complexes_isomorphic(&a, &b).is_none());
    }
}
