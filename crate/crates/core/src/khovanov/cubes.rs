//! Module cubes of Khovanov type and their Burnside lifts.
//!
//! Generators at state `u` label every circle `+` or `-` (`v+`/`v-` on
//! essential circles of the annular theories), in the order of
//! [`ResolvedState::circles`], enumerated with `+` before `-`. Gradings:
//! - homological degree `n₋ - |u|` (the cubes are contravariant with shift `n₋`);
//! - `j = #plus - #minus + |u| + n₊ - 2n₋`;
//! - `k = Σ ±1` over essential circles.
//!
//! The annular maps are the `k`-preserving parts of the classical maps. The
//! quantum annular maps multiply each annular entry `x -> y` by
//! `q^{Φ(y) - Φ(x)}`, where `Φ` sums `±(-1)^rank` over essential circles
//! (`rank` = number of essential circles inside). Only merges and splits of
//! two essential circles pick up a power of `q`, namely `q^{±2}`.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::resolve::{resolve, ResolvedState};
use super::Diagram;
use crate::algebra::{Elem, ExactMatrix, LaurentPoly, RingId};
use crate::burnside::GroupId;
use crate::cube::{bits, degree, lift_monomial_cube, BurnsideCube, Generator, ModuleCube, Variance, Vertex};
use crate::error::{CubeError, KhovanovError};

/// Which Khovanov-type cube to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Theory {
    Classical,
    Annular,
    QuantumAnnular,
}

impl Theory {
    fn ring(self) -> RingId {
        match self {
            Theory::QuantumAnnular => RingId::LaurentIntegers,
            _ => RingId::Integers,
        }
    }

    fn annular(self) -> bool {
        self != Theory::Classical
    }

    pub fn aux_arity(self) -> usize {
        if self.annular() {
            2
        } else {
            1
        }
    }
}

/// A labeling of the circles of a state; `true` is plus.
type Labels = Vec<bool>;

fn labelings(circles: usize) -> impl Iterator<Item = Labels> {
    (0..1usize << circles).map(move |t| (0..circles).map(|i| t >> (circles - 1 - i) & 1 == 0).collect())
}

fn labeling_index(l: &[bool]) -> usize {
    l.iter().fold(0, |acc, &plus| acc << 1 | usize::from(!plus))
}

fn sign(plus: bool) -> i64 {
    if plus {
        1
    } else {
        -1
    }
}

fn k_grading(s: &ResolvedState, l: &[bool]) -> i64 {
    l.iter().zip(&s.essential).filter(|(_, e)| **e).map(|(p, _)| sign(*p)).sum()
}

fn potential(s: &ResolvedState, l: &[bool]) -> i64 {
    l.iter()
        .zip(&s.radial_rank)
        .filter_map(|(p, r)| r.map(|r| sign(*p) * if r % 2 == 0 { 1 } else { -1 }))
        .sum()
}

fn generator_label(s: &ResolvedState, l: &[bool], annular: bool) -> String {
    let parts: Vec<&str> = l
        .iter()
        .zip(&s.essential)
        .map(|(&p, &e)| match (annular && e, p) {
            (true, true) => "v+",
            (true, false) => "v-",
            (false, true) => "+",
            (false, false) => "-",
        })
        .collect();
    parts.join(",")
}

fn generators(d: &Diagram, s: &ResolvedState, theory: Theory) -> Vec<Generator> {
    let h = degree(s.vertex) as i64;
    let (np, nm) = (d.n_plus() as i64, d.n_minus() as i64);
    labelings(s.circle_count())
        .map(|l| {
            let q: i64 = l.iter().map(|&p| sign(p)).sum::<i64>() + h + np - 2 * nm;
            let mut aux = vec![q];
            if theory.annular() {
                aux.push(k_grading(s, &l));
            }
            Generator { label: generator_label(s, &l, theory.annular()), aux }
        })
        .collect()
}

/// Frobenius merge or split along the smoothing change at crossing `b`,
/// from `src` (bit `b` clear) to `dst` (bit `b` set).
fn edge_terms(d: &Diagram, b: usize, src: &ResolvedState, dst: &ResolvedState, x: &[bool]) -> Result<Vec<Labels>, KhovanovError> {
    let arcs = d.crossings()[b].arcs;
    let touched = |s: &ResolvedState| {
        let mut c: Vec<usize> = arcs.iter().map(|&a| s.circle_of_arc(a)).collect();
        c.sort_unstable();
        c.dedup();
        c
    };
    let (ts, tt) = (touched(src), touched(dst));
    let mut base = vec![true; dst.circle_count()];
    for (c, arcs) in src.circles.iter().enumerate() {
        if !ts.contains(&c) {
            base[dst.circle_of_arc(arcs[0])] = x[c];
        }
    }
    let with = |pairs: &[(usize, bool)]| {
        let mut y = base.clone();
        for &(c, p) in pairs {
            y[c] = p;
        }
        y
    };
    Ok(match (ts.as_slice(), tt.as_slice()) {
        (&[a, b], &[c]) => match (x[a], x[b]) {
            (false, false) => vec![],
            (pa, pb) => vec![with(&[(c, pa && pb)])],
        },
        (&[a], &[c1, c2]) => {
            if x[a] {
                vec![with(&[(c1, true), (c2, false)]), with(&[(c1, false), (c2, true)])]
            } else {
                vec![with(&[(c1, false), (c2, false)])]
            }
        }
        _ => {
            return Err(KhovanovError::MalformedDiagram(format!(
                "changing the smoothing at crossing {} neither merges nor splits circles; the PD code is not planar",
                b + 1
            )))
        }
    })
}

fn module_cube(d: &Diagram, theory: Theory) -> Result<ModuleCube, KhovanovError> {
    if theory.annular() && !d.is_annular() {
        return Err(KhovanovError::MalformedDiagram("annular theories need a braid closure".into()));
    }
    let n = d.crossing_count();
    if n >= usize::BITS as usize - 1 {
        return Err(KhovanovError::MalformedDiagram(format!("{n} crossings is too many")));
    }
    let ring = theory.ring();
    let states: Vec<ResolvedState> = (0..1usize << n).into_par_iter().map(|u| resolve(d, u)).collect::<Result<_, _>>()?;
    let vertices: Vec<Vec<Generator>> = states.par_iter().map(|s| generators(d, s, theory)).collect();

    let keys: Vec<(Vertex, usize)> = (0..1usize << n).flat_map(|u| bits(u, n).map(move |b| (u, b))).collect();
    let edges: BTreeMap<(Vertex, usize), ExactMatrix> = keys
        .into_par_iter()
        .map(|(u, b)| {
            let (src, dst) = (&states[u & !(1 << b)], &states[u]);
            let mut m = ExactMatrix::zeros(ring, 1 << dst.circle_count(), 1 << src.circle_count());
            for (col, x) in labelings(src.circle_count()).enumerate() {
                for y in edge_terms(d, b, src, dst, &x)? {
                    let coefficient = match theory {
                        Theory::Classical => ring.one(),
                        _ if k_grading(dst, &y) != k_grading(src, &x) => continue,
                        Theory::Annular => ring.one(),
                        Theory::QuantumAnnular => ring.q_pow(potential(dst, &y) - potential(src, &x)).unwrap(),
                    };
                    m.add_at(labeling_index(&y), col, &coefficient);
                }
            }
            if let Some((_, _, e)) = m.nonzero().find(|(_, _, e)| !is_unit_monomial(ring, e)) {
                return Err(KhovanovError::NonMonomialStructureMap(e.to_string()));
            }
            Ok(((u, b), m))
        })
        .collect::<Result<_, KhovanovError>>()?;
    Ok(ModuleCube::new(n, ring, Variance::Contravariant, d.n_minus() as i64, theory.aux_arity(), vertices, edges)?)
}

fn is_unit_monomial(ring: RingId, e: &Elem) -> bool {
    ring.to_laurent(e).is_some_and(|p| p.as_signed_monomial().is_some())
}

/// Classical Khovanov cube over `Z`, graded by `j`.
pub fn khovanov_module_cube(d: &Diagram) -> Result<ModuleCube, KhovanovError> {
    module_cube(d, Theory::Classical)
}

/// Annular cube over `Z`, graded by `(j, k)`.
pub fn annular_module_cube(d: &Diagram) -> Result<ModuleCube, KhovanovError> {
    module_cube(d, Theory::Annular)
}

/// Quantum annular cube over `Z[q, q^-1]`, graded by `(j, k)`.
pub fn quantum_annular_module_cube(d: &Diagram) -> Result<ModuleCube, KhovanovError> {
    module_cube(d, Theory::QuantumAnnular)
}

pub fn theory_module_cube(d: &Diagram, theory: Theory) -> Result<ModuleCube, KhovanovError> {
    module_cube(d, theory)
}

fn lift(m: &ModuleCube) -> Result<BurnsideCube, KhovanovError> {
    lift_monomial_cube(&m.dual()).map_err(|e| match e {
        CubeError::NonMonomialEntry { entry, .. } => KhovanovError::NonMonomialStructureMap(entry),
        other => other.into(),
    })
}

/// Burnside cube over the trivial group whose edges are the transposed
/// classical maps; orbit auxiliary gradings are `-j`.
pub fn khovanov_burnside_cube(d: &Diagram) -> Result<BurnsideCube, KhovanovError> {
    lift(&khovanov_module_cube(d)?)
}

/// Burnside cube over the trivial group for the annular maps.
pub fn annular_burnside_cube(d: &Diagram) -> Result<BurnsideCube, KhovanovError> {
    lift(&annular_module_cube(d)?)
}

/// `Z`-equivariant Burnside cube for the quantum annular maps.
pub fn quantum_annular_burnside_cube(d: &Diagram) -> Result<BurnsideCube, KhovanovError> {
    let c = lift(&quantum_annular_module_cube(d)?)?;
    debug_assert_eq!(c.group(), GroupId::InfiniteCyclic);
    Ok(c)
}

/// `(-1)^{n₋} q^{n₊ - 2n₋} Σ_u (-q)^{|u|} (q + q^{-1})^{#circles(u)}`.
pub fn kauffman_bracket_oracle(d: &Diagram) -> Result<LaurentPoly, KhovanovError> {
    let n = d.crossing_count();
    if n >= usize::BITS as usize - 1 {
        return Err(KhovanovError::MalformedDiagram(format!("{n} crossings is too many")));
    }
    let circle = LaurentPoly::from_terms([(1, 1), (-1, 1)]);
    let terms: Vec<LaurentPoly> = (0..1usize << n)
        .into_par_iter()
        .map(|u| {
            let s = resolve(d, u)?;
            let h = degree(u) as u32;
            Ok(LaurentPoly::monomial(if h.is_multiple_of(2) { 1 } else { -1 }, h as i64) * circle.pow(s.circle_count() as u32))
        })
        .collect::<Result<_, KhovanovError>>()?;
    let sum: LaurentPoly = terms.into_iter().sum();
    let nm = d.n_minus() as i64;
    let sign = if nm % 2 == 0 { 1 } else { -1 };
    Ok(LaurentPoly::monomial(sign, d.n_plus() as i64 - 2 * nm) * sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::homology;
    use crate::cube::{totalize_module_cube, validate_cube};
    use crate::khovanov::BraidWord;

    fn braid(m: usize, letters: &[i32]) -> Diagram {
        Diagram::from_braid(&BraidWord::new(m, letters.to_vec()).unwrap())
    }

    #[test]
    fn zero_crossing_unknot() {
        let d = braid(1, &[]);
        let c = totalize_module_cube(&khovanov_module_cube(&d).unwrap()).unwrap();
        let h = homology(&c).unwrap();
        assert_eq!(h.free_ranks(), [((0, vec![1]), 1), ((0, vec![-1]), 1)].into());
        assert_eq!(kauffman_bracket_oracle(&d).unwrap(), LaurentPoly::from_terms([(1, 1), (-1, 1)]));
        let a = annular_module_cube(&d).unwrap();
        let aux: Vec<Vec<i64>> = a.vertex(0).iter().map(|g| g.aux.clone()).collect();
        assert_eq!(aux, vec![vec![1, 1], vec![-1, -1]]);
    }

    #[test]
    fn two_component_unlink_bracket() {
        let circle = LaurentPoly::from_terms([(1, 1), (-1, 1)]);
        assert_eq!(kauffman_bracket_oracle(&braid(2, &[])).unwrap(), circle.pow(2));
    }

    #[test]
    fn euler_characteristic_matches_bracket() {
        for (m, w) in [(2, vec![1]), (2, vec![1, 1, 1]), (3, vec![1, -2, 1, -2]), (2, vec![-1, -1])] {
            let d = braid(m, &w);
            let c = totalize_module_cube(&khovanov_module_cube(&d).unwrap()).unwrap();
            assert_eq!(c.graded_euler_characteristic(0).unwrap(), kauffman_bracket_oracle(&d).unwrap(), "{w:?}");
        }
    }

    #[test]
    fn annular_and_quantum_cubes_square_to_zero() {
        for w in [vec![1], vec![1, 1], vec![1, 1, 1], vec![1, -1, 1]] {
            let d = braid(2, &w);
            let a = totalize_module_cube(&annular_module_cube(&d).unwrap()).unwrap();
            assert!(a.check_d_squared().is_ok() && a.preserves_aux());
            let q = quantum_annular_module_cube(&d).unwrap();
            assert!(totalize_module_cube(&q).unwrap().check_d_squared().is_ok());
            assert!(q.specialize(RingId::Integers, &RingId::Integers.one()).unwrap().entries_equal(&annular_module_cube(&d).unwrap()));
        }
    }

    #[test]
    fn burnside_lifts_validate() {
        for w in [vec![1, 1, 1], vec![1, -2, 1, -2]] {
            let d = braid(3, &w);
            assert_eq!(validate_cube(&khovanov_burnside_cube(&d).unwrap()), Ok(()));
            assert_eq!(validate_cube(&quantum_annular_burnside_cube(&d).unwrap()), Ok(()));
        }
    }

    #[test]
    fn pd_input_rejects_annular_theories() {
        let pd = crate::khovanov::parse_pd("PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]]").unwrap();
        let d = Diagram::from_pd(&pd);
        assert!(matches!(annular_module_cube(&d), Err(KhovanovError::MalformedDiagram(_))));
        assert!(khovanov_module_cube(&d).is_ok());
    }
}
