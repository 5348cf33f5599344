use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use super::complex::GradedChainComplex;
use super::matrix::ExactMatrix;
use super::ring::{Elem, RingId};
use super::snf::{field_rank, invariant_factors};
use crate::error::AlgebraError;

/// One homology group: `Z^free_rank ⊕ ⊕ Z/d` (torsion only over the integers).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HomologyGroup {
    pub free_rank: usize,
    /// Elementary divisors > 1, each dividing the next.
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            n => parts.push(format!("Z^{n}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Nonzero homology groups keyed by `(hom_degree, aux grading)`. When the
/// differential does not preserve the auxiliary gradings the key's vector is
/// empty and `graded` is false.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologySummary {
    pub ring: RingId,
    pub graded: bool,
    pub groups: BTreeMap<(i64, Vec<i64>), HomologyGroup>,
}

impl HomologySummary {
    /// Groups collapsed over the auxiliary grading.
    pub fn by_degree(&self) -> BTreeMap<i64, HomologyGroup> {
        let mut out: BTreeMap<i64, HomologyGroup> = BTreeMap::new();
        for ((deg, _), g) in &self.groups {
            let e = out.entry(*deg).or_default();
            e.free_rank += g.free_rank;
            e.torsion.extend(g.torsion.iter().cloned());
        }
        for g in out.values_mut() {
            g.torsion = normalize_torsion(std::mem::take(&mut g.torsion));
        }
        out
    }

    pub fn free_ranks(&self) -> BTreeMap<(i64, Vec<i64>), usize> {
        self.groups.iter().filter(|(_, g)| g.free_rank > 0).map(|(k, g)| (k.clone(), g.free_rank)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.groups.is_empty()
    }
}

/// Re-expresses a list of cyclic orders as an invariant factor chain.
fn normalize_torsion(orders: Vec<BigInt>) -> Vec<BigInt> {
    let n = orders.len();
    if n <= 1 {
        return orders;
    }
    let mut m = ExactMatrix::zeros(RingId::Integers, n, n);
    for (i, d) in orders.iter().enumerate() {
        m.set(i, i, Elem::Int(d.clone()));
    }
    invariant_factors(&m).unwrap().into_iter().filter(|d| !d.is_one()).collect()
}

/// Homology over the integers (via Smith normal form) or a field (via rank).
/// Complexes over `Z[G_r]` are first restricted to `Z`. Laurent complexes must
/// be specialized first.
pub fn homology(c: &GradedChainComplex) -> Result<HomologySummary, AlgebraError> {
    c.check_d_squared()?;
    let c = match c.ring() {
        RingId::LaurentIntegers => {
            return Err(AlgebraError::UnsupportedRing {
                ring: c.ring(),
                reason: "Z[q,q^-1] is not a PID; specialize or quotient first",
            })
        }
        RingId::CyclicGroupRing { .. } => c.restrict_to_integers()?,
        _ => c.clone(),
    };
    let graded = c.aux_arity() > 0 && c.preserves_aux();
    let mut groups = BTreeMap::new();
    if graded {
        for aux in c.aux_values() {
            let block = c.restrict_basis(|e| e.aux == aux);
            for (deg, g) in block_homology(&block)? {
                groups.insert((deg, aux.clone()), g);
            }
        }
    } else {
        for (deg, g) in block_homology(&c)? {
            groups.insert((deg, Vec::new()), g);
        }
    }
    Ok(HomologySummary { ring: c.ring(), graded, groups })
}

fn block_homology(c: &GradedChainComplex) -> Result<Vec<(i64, HomologyGroup)>, AlgebraError> {
    let mut rank_of = BTreeMap::new();
    let mut torsion_of = BTreeMap::new();
    for (&deg, d) in c.differentials() {
        if c.ring() == RingId::Integers {
            let f = invariant_factors(d)?;
            rank_of.insert(deg, f.len());
            torsion_of.insert(deg, f.into_iter().filter(|x| !x.is_one()).collect::<Vec<_>>());
        } else {
            rank_of.insert(deg, field_rank(d)?);
        }
    }
    let mut out = Vec::new();
    for deg in c.degrees() {
        let n = c.rank(deg);
        let r_out = rank_of.get(&deg).copied().unwrap_or(0);
        let r_in = rank_of.get(&(deg + 1)).copied().unwrap_or(0);
        let g = HomologyGroup {
            free_rank: n - r_out - r_in,
            torsion: torsion_of.get(&(deg + 1)).cloned().unwrap_or_default(),
        };
        if !g.is_zero() {
            out.push((deg, g));
        }
    }
    Ok(out)
}
