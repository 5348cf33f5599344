use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::laurent::LaurentPoly;
use super::matrix::ExactMatrix;
use super::ring::{Elem, RingId};
use crate::error::AlgebraError;

/// A basis element of a graded free module: opaque label, homological degree
/// and a fixed-length vector of auxiliary gradings (`(j)` or `(j, k)` for the
/// Khovanov theories).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisElement {
    pub label: String,
    pub hom_degree: i64,
    pub aux: Vec<i64>,
}

impl BasisElement {
    pub fn new(label: impl Into<String>, hom_degree: i64, aux: Vec<i64>) -> Self {
        Self { label: label.into(), hom_degree, aux }
    }
}

/// A bounded chain complex of finitely generated free modules with a chosen
/// basis. Storage is homological: `d_i` maps degree `i` to degree `i - 1` and
/// has shape `rank(i-1) x rank(i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedChainComplex {
    ring: RingId,
    aux_arity: usize,
    basis: BTreeMap<i64, Vec<BasisElement>>,
    differentials: BTreeMap<i64, ExactMatrix>,
}

impl GradedChainComplex {
    /// Builds a complex, checking shapes, gradings, ring membership and `d^2 = 0`.
    pub fn new(
        ring: RingId,
        aux_arity: usize,
        basis: BTreeMap<i64, Vec<BasisElement>>,
        differentials: BTreeMap<i64, ExactMatrix>,
    ) -> Result<Self, AlgebraError> {
        let c = Self::from_parts(ring, aux_arity, basis, differentials)?;
        c.check_d_squared()?;
        Ok(c)
    }

    /// Like [`GradedChainComplex::new`] but without the `d^2 = 0` check.
    pub fn from_parts(
        ring: RingId,
        aux_arity: usize,
        mut basis: BTreeMap<i64, Vec<BasisElement>>,
        differentials: BTreeMap<i64, ExactMatrix>,
    ) -> Result<Self, AlgebraError> {
        ring.check()?;
        basis.retain(|_, v| !v.is_empty());
        for (deg, elems) in &basis {
            for e in elems {
                if e.hom_degree != *deg {
                    return Err(AlgebraError::Malformed(format!("basis element {} filed under degree {deg}", e.label)));
                }
                if e.aux.len() != aux_arity {
                    return Err(AlgebraError::Malformed(format!(
                        "basis element {} has {} auxiliary gradings, expected {aux_arity}",
                        e.label,
                        e.aux.len()
                    )));
                }
            }
        }
        let mut c = Self { ring, aux_arity, basis, differentials: BTreeMap::new() };
        for (deg, d) in differentials {
            if d.ring() != ring {
                return Err(AlgebraError::ForeignEntry(ring));
            }
            if d.rows() != c.rank(deg - 1) || d.cols() != c.rank(deg) {
                return Err(AlgebraError::DimensionMismatch(format!(
                    "d_{deg} is {}x{}, expected {}x{}",
                    d.rows(),
                    d.cols(),
                    c.rank(deg - 1),
                    c.rank(deg)
                )));
            }
            if !d.is_zero() {
                c.differentials.insert(deg, d);
            }
        }
        Ok(c)
    }

    pub fn zero(ring: RingId, aux_arity: usize) -> Self {
        Self { ring, aux_arity, basis: BTreeMap::new(), differentials: BTreeMap::new() }
    }

    pub fn ring(&self) -> RingId {
        self.ring
    }

    pub fn aux_arity(&self) -> usize {
        self.aux_arity
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.basis.keys().copied()
    }

    pub fn basis(&self, deg: i64) -> &[BasisElement] {
        self.basis.get(&deg).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn basis_map(&self) -> &BTreeMap<i64, Vec<BasisElement>> {
        &self.basis
    }

    pub fn rank(&self, deg: i64) -> usize {
        self.basis(deg).len()
    }

    pub fn total_rank(&self) -> usize {
        self.basis.values().map(Vec::len).sum()
    }

    /// `d_deg`, materialized as a zero matrix when absent.
    pub fn differential(&self, deg: i64) -> ExactMatrix {
        self.differentials
            .get(&deg)
            .cloned()
            .unwrap_or_else(|| ExactMatrix::zeros(self.ring, self.rank(deg - 1), self.rank(deg)))
    }

    /// Nonzero differentials only.
    pub fn differentials(&self) -> &BTreeMap<i64, ExactMatrix> {
        &self.differentials
    }

    pub fn check_d_squared(&self) -> Result<(), AlgebraError> {
        for (&deg, d) in &self.differentials {
            if let Some(prev) = self.differentials.get(&(deg - 1)) {
                if !prev.mul(d)?.is_zero() {
                    return Err(AlgebraError::InvalidComplex { degree: deg });
                }
            }
        }
        Ok(())
    }

    /// True if every nonzero differential entry joins basis elements with equal
    /// auxiliary grading at `index`.
    pub fn preserves_aux_index(&self, index: usize) -> bool {
        self.first_aux_violation(index).is_none()
    }

    pub fn preserves_aux(&self) -> bool {
        (0..self.aux_arity).all(|i| self.preserves_aux_index(i))
    }

    fn first_aux_violation(&self, index: usize) -> Option<i64> {
        self.differentials.iter().find_map(|(&deg, d)| {
            let src = self.basis(deg);
            let dst = self.basis(deg - 1);
            d.nonzero().any(|(r, c, _)| dst[r].aux[index] != src[c].aux[index]).then_some(deg)
        })
    }

    /// Applies the ring map determined by `q -> q_image` to every entry.
    ///
    /// Source must be a group ring (`LaurentIntegers` or `CyclicGroupRing`) or
    /// `Integers`; in the latter case `q_image` is ignored and the map is the
    /// canonical one.
    pub fn specialize(&self, target: RingId, q_image: &Elem) -> Result<Self, AlgebraError> {
        let map = ring_map(self.ring, target, q_image)?;
        self.map_entries(target, map)
    }

    /// Base change along the canonical map from the integers.
    pub fn change_ring(&self, target: RingId) -> Result<Self, AlgebraError> {
        if self.ring != RingId::Integers {
            return Err(AlgebraError::UnsupportedRing { ring: self.ring, reason: "change_ring starts from the integers" });
        }
        self.specialize(target, &target.one())
    }

    fn map_entries(&self, target: RingId, f: impl Fn(&Elem) -> Elem) -> Result<Self, AlgebraError> {
        let differentials = self.differentials.iter().map(|(&k, d)| (k, d.map_into(target, &f))).collect();
        Self::from_parts(target, self.aux_arity, self.basis.clone(), differentials)
    }

    /// Finitely supported dual: the dual of the basis element in degree `i`
    /// sits in degree `shift - i`; the differential out of the dual of degree
    /// `i` is the (conjugate) transpose of `d_{i+1}`. Over group rings entries
    /// are conjugated by `q -> q^-1`, so that duality matches reversing
    /// equivariant correspondences. Auxiliary gradings are negated when
    /// `negate_aux` is set.
    pub fn finitely_supported_dual_with(&self, shift: i64, negate_aux: bool) -> Self {
        let basis = self
            .basis
            .iter()
            .map(|(&deg, elems)| {
                let new_deg = shift - deg;
                let dual = elems
                    .iter()
                    .map(|e| BasisElement {
                        label: dual_label(&e.label),
                        hom_degree: new_deg,
                        aux: if negate_aux { e.aux.iter().map(|x| -x).collect() } else { e.aux.clone() },
                    })
                    .collect();
                (new_deg, dual)
            })
            .collect();
        let differentials = self
            .differentials
            .iter()
            .map(|(&deg, d)| (shift - (deg - 1), d.conj_transpose()))
            .collect();
        Self { ring: self.ring, aux_arity: self.aux_arity, basis, differentials }
    }

    /// [`finitely_supported_dual_with`](Self::finitely_supported_dual_with) with no
    /// degree shift and negated auxiliary gradings.
    pub fn finitely_supported_dual(&self) -> Self {
        self.finitely_supported_dual_with(0, true)
    }

    /// Restriction of scalars from `Z[q]/(q^r - 1)` to `Z`: every basis element
    /// `b` becomes `b*q^0, ..., b*q^(r-1)`.
    pub fn restrict_to_integers(&self) -> Result<Self, AlgebraError> {
        let RingId::CyclicGroupRing { order } = self.ring else {
            return Err(AlgebraError::UnsupportedRing { ring: self.ring, reason: "restriction of scalars needs Z[G_r]" });
        };
        let r = order as usize;
        let z = RingId::Integers;
        let basis = self
            .basis
            .iter()
            .map(|(&deg, elems)| {
                let expanded = elems
                    .iter()
                    .flat_map(|e| {
                        (0..r).map(move |s| BasisElement {
                            label: if r == 1 { e.label.clone() } else { format!("{}*q^{s}", e.label) },
                            hom_degree: deg,
                            aux: e.aux.clone(),
                        })
                    })
                    .collect();
                (deg, expanded)
            })
            .collect();
        let differentials = self
            .differentials
            .iter()
            .map(|(&deg, d)| {
                let mut m = ExactMatrix::zeros(z, d.rows() * r, d.cols() * r);
                for (row, col, e) in d.nonzero() {
                    let Elem::Poly(p) = e else { unreachable!() };
                    for (exp, c) in p.terms() {
                        for s in 0..r {
                            let t = (s + exp as usize) % r;
                            m.add_at(row * r + t, col * r + s, &Elem::Int(c.clone()));
                        }
                    }
                }
                (deg, m)
            })
            .collect();
        Self::from_parts(z, self.aux_arity, basis, differentials)
    }

    /// Sum of `(-1)^i q^{aux[index]}` over basis elements.
    pub fn graded_euler_characteristic(&self, aux_index: usize) -> Result<LaurentPoly, AlgebraError> {
        if aux_index >= self.aux_arity {
            return Err(AlgebraError::Malformed(format!("no auxiliary grading with index {aux_index}")));
        }
        if let Some(degree) = self.first_aux_violation(aux_index) {
            return Err(AlgebraError::GradingNotPreserved { degree, index: aux_index });
        }
        let mut chi = LaurentPoly::zero();
        for (&deg, elems) in &self.basis {
            let sign = if deg.rem_euclid(2) == 0 { 1 } else { -1 };
            for e in elems {
                chi.add_term(e.aux[aux_index], BigInt::from(sign));
            }
        }
        Ok(chi)
    }

    /// Same shape and same differential entries, comparing entries as Laurent
    /// polynomials so that `Z` and `Z[q]/(q - 1)` are identified.
    pub fn entries_equal(&self, other: &Self) -> bool {
        let shape = |c: &Self| c.basis.iter().map(|(d, v)| (*d, v.len())).collect::<Vec<_>>();
        if shape(self) != shape(other) {
            return false;
        }
        let degs: std::collections::BTreeSet<i64> =
            self.differentials.keys().chain(other.differentials.keys()).copied().collect();
        degs.into_iter().all(|deg| {
            let (a, b) = (self.differential(deg), other.differential(deg));
            a.entries().iter().zip(b.entries()).all(|(x, y)| {
                match (self.ring.to_laurent(x), other.ring.to_laurent(y)) {
                    (Some(p), Some(q)) => p == q,
                    _ => self.ring == other.ring && x == y,
                }
            })
        })
    }

    /// Subcomplex spanned by the basis elements accepted by `keep`; the caller
    /// guarantees it is closed under the differential (e.g. a grading block).
    pub fn restrict_basis(&self, keep: impl Fn(&BasisElement) -> bool) -> Self {
        let mut basis = BTreeMap::new();
        let mut index: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for (&deg, elems) in &self.basis {
            let idx: Vec<usize> = (0..elems.len()).filter(|&i| keep(&elems[i])).collect();
            if !idx.is_empty() {
                basis.insert(deg, idx.iter().map(|&i| elems[i].clone()).collect());
                index.insert(deg, idx);
            }
        }
        let empty = Vec::new();
        let differentials = self
            .differentials
            .iter()
            .map(|(&deg, d)| {
                let rows = index.get(&(deg - 1)).unwrap_or(&empty);
                let cols = index.get(&deg).unwrap_or(&empty);
                (deg, d.select(rows, cols))
            })
            .collect();
        Self::from_parts(self.ring, self.aux_arity, basis, differentials).expect("restriction keeps shapes")
    }

    /// Distinct auxiliary grading vectors present in the basis.
    pub fn aux_values(&self) -> std::collections::BTreeSet<Vec<i64>> {
        self.basis.values().flatten().map(|e| e.aux.clone()).collect()
    }
}

fn dual_label(label: &str) -> String {
    match label.strip_suffix('*') {
        Some(base) => base.to_string(),
        None => format!("{label}*"),
    }
}

/// The ring homomorphism `source -> target` determined by `q -> q_image`.
fn ring_map(source: RingId, target: RingId, q_image: &Elem) -> Result<impl Fn(&Elem) -> Elem, AlgebraError> {
    target.check()?;
    if !target.contains(q_image) {
        return Err(AlgebraError::ForeignEntry(target));
    }
    let q_inv = target.inverse(q_image);
    match source {
        RingId::Integers => {}
        RingId::LaurentIntegers => {
            if q_inv.is_none() {
                return Err(AlgebraError::NotAUnit(q_image.to_string()));
            }
        }
        RingId::CyclicGroupRing { order } => {
            if q_inv.is_none() {
                return Err(AlgebraError::NotAUnit(q_image.to_string()));
            }
            if pow(target, q_image, order as i64, q_inv.as_ref().unwrap()) != target.one() {
                return Err(AlgebraError::IllDefinedSpecialization(format!(
                    "{q_image} does not satisfy q^{order} = 1 in {target}"
                )));
            }
        }
        _ => {
            return Err(AlgebraError::UnsupportedRing { ring: source, reason: "specialization starts from Z or a group ring" })
        }
    }
    let q_image = q_image.clone();
    Ok(move |e: &Elem| match e {
        Elem::Int(x) => target.from_bigint(x),
        Elem::Poly(p) => {
            let mut acc = target.zero();
            for (exp, c) in p.terms() {
                let term = target.mul(&target.from_bigint(c), &pow(target, &q_image, exp, q_inv.as_ref().unwrap()));
                acc = target.add(&acc, &term);
            }
            acc
        }
        _ => unreachable!("source ring checked above"),
    })
}

impl ExactMatrix {
    /// Entrywise image under the ring map `q -> q_image` (see
    /// [`GradedChainComplex::specialize`]).
    pub fn specialize(&self, target: RingId, q_image: &Elem) -> Result<ExactMatrix, AlgebraError> {
        let map = ring_map(self.ring(), target, q_image)?;
        Ok(self.map_into(target, map))
    }
}

fn pow(ring: RingId, x: &Elem, e: i64, x_inv: &Elem) -> Elem {
    let base = if e < 0 { x_inv } else { x };
    let mut acc = ring.one();
    for _ in 0..e.unsigned_abs() {
        acc = ring.mul(&acc, base);
    }
    acc
}
