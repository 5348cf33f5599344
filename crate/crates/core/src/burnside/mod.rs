//! Free G-sets with finitely many orbits and the equivariant correspondences
//! between them, presented orbit by orbit.
//!
//! A free G-set is `orbits × G` with G acting by translation on the second
//! factor. An arrow orbit `(s, t, g)` stands for the G-orbit of an arrow whose
//! source is `(s, 1)` and whose target is `(t, g)`; normalizing the source
//! offset to the identity gives every correspondence a canonical form.

mod bijection;
mod text;

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{ExactMatrix, RingId};
use crate::error::BurnsideError;

pub use bijection::FibrewiseBijection;
pub use text::{format_correspondence, parse_correspondence};

/// The acting group. Elements are integers (exponents of the generator `q`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroupId {
    Trivial,
    InfiniteCyclic,
    Cyclic { order: u64 },
}

impl GroupId {
    /// `Cyclic(1)` is normalized to `Trivial`.
    pub fn cyclic(order: u64) -> Result<Self, BurnsideError> {
        match order {
            0 => Err(BurnsideError::InvalidGroup("cyclic group order must be positive".into())),
            1 => Ok(GroupId::Trivial),
            r => Ok(GroupId::Cyclic { order: r }),
        }
    }

    pub fn normalize(&self, g: i64) -> i64 {
        match self {
            GroupId::Trivial => 0,
            GroupId::InfiniteCyclic => g,
            GroupId::Cyclic { order } => g.rem_euclid(*order as i64),
        }
    }

    pub fn op(&self, a: i64, b: i64) -> i64 {
        self.normalize(a + b)
    }

    pub fn inv(&self, a: i64) -> i64 {
        self.normalize(-a)
    }

    /// The ring that linearizations land in.
    pub fn ring(&self) -> RingId {
        match self {
            GroupId::Trivial => RingId::Integers,
            GroupId::InfiniteCyclic => RingId::LaurentIntegers,
            GroupId::Cyclic { order } => RingId::CyclicGroupRing { order: *order },
        }
    }

    pub fn order(&self) -> Option<u64> {
        match self {
            GroupId::Trivial => Some(1),
            GroupId::InfiniteCyclic => None,
            GroupId::Cyclic { order } => Some(*order),
        }
    }
}

impl fmt::Display for GroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupId::Trivial => write!(f, "trivial"),
            GroupId::InfiniteCyclic => write!(f, "Z"),
            GroupId::Cyclic { order } => write!(f, "Z/{order}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FreeGSet {
    group: GroupId,
    orbits: Vec<String>,
}

impl FreeGSet {
    pub fn new(group: GroupId, orbits: Vec<String>) -> Result<Self, BurnsideError> {
        let mut seen = HashSet::new();
        for o in &orbits {
            if !seen.insert(o.as_str()) {
                return Err(BurnsideError::DuplicateOrbit(o.clone()));
            }
        }
        Ok(Self { group, orbits })
    }

    /// Orbits labelled `prefix0, prefix1, ...`.
    pub fn numbered(group: GroupId, prefix: &str, n: usize) -> Self {
        Self { group, orbits: (0..n).map(|i| format!("{prefix}{i}")).collect() }
    }

    pub fn group(&self) -> GroupId {
        self.group
    }

    pub fn orbits(&self) -> &[String] {
        &self.orbits
    }

    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.orbits.iter().position(|o| o == label)
    }

    fn with_group(&self, group: GroupId) -> Self {
        Self { group, orbits: self.orbits.clone() }
    }
}

/// An element `(orbit, g)` of a free G-set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GElement {
    pub orbit: usize,
    pub offset: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ArrowOrbit {
    #[serde(rename = "sOrbit")]
    pub s: usize,
    #[serde(rename = "tOrbit")]
    pub t: usize,
    pub offset: i64,
}

impl ArrowOrbit {
    pub fn new(s: usize, t: usize, offset: i64) -> Self {
        Self { s, t, offset }
    }
}

/// An equivariant correspondence `source <- A -> target`. Arrows keep the order
/// they were constructed in (positions are referenced by fibrewise
/// bijections); equality is equality of multisets.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Correspondence {
    source: FreeGSet,
    target: FreeGSet,
    arrows: Vec<ArrowOrbit>,
}

impl PartialEq for Correspondence {
    fn eq(&self, other: &Self) -> bool {
        self.source == other.source && self.target == other.target && self.sorted_arrows() == other.sorted_arrows()
    }
}

impl Eq for Correspondence {}

impl Correspondence {
    /// Validates orbit indices and reduces offsets into canonical form.
    pub fn new(source: FreeGSet, target: FreeGSet, arrows: Vec<ArrowOrbit>) -> Result<Self, BurnsideError> {
        if source.group != target.group {
            return Err(BurnsideError::MismatchedGroup);
        }
        let g = source.group;
        let mut out = Vec::with_capacity(arrows.len());
        for (index, a) in arrows.into_iter().enumerate() {
            if a.s >= source.len() || a.t >= target.len() {
                return Err(BurnsideError::InvalidArrow { index });
            }
            out.push(ArrowOrbit { offset: g.normalize(a.offset), ..a });
        }
        Ok(Self { source, target, arrows: out })
    }

    pub fn empty(source: FreeGSet, target: FreeGSet) -> Result<Self, BurnsideError> {
        Self::new(source, target, Vec::new())
    }

    pub fn source(&self) -> &FreeGSet {
        &self.source
    }

    pub fn target(&self) -> &FreeGSet {
        &self.target
    }

    pub fn group(&self) -> GroupId {
        self.source.group
    }

    pub fn arrows(&self) -> &[ArrowOrbit] {
        &self.arrows
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn sorted_arrows(&self) -> Vec<ArrowOrbit> {
        let mut v = self.arrows.clone();
        v.sort();
        v
    }

    /// Multiset of arrows with multiplicities.
    pub fn multiplicities(&self) -> BTreeMap<ArrowOrbit, usize> {
        let mut m = BTreeMap::new();
        for a in &self.arrows {
            *m.entry(*a).or_default() += 1;
        }
        m
    }

    /// Same correspondence with arrows in sorted order.
    pub fn canonical(&self) -> Self {
        Self { arrows: self.sorted_arrows(), ..self.clone() }
    }

    /// Same arrows in a different order: `perm[i]` is the old position of the new arrow `i`.
    pub fn reordered(&self, perm: &[usize]) -> Self {
        Self { arrows: perm.iter().map(|&i| self.arrows[i]).collect(), ..self.clone() }
    }
}

pub fn identity_correspondence(x: &FreeGSet) -> Correspondence {
    Correspondence {
        source: x.clone(),
        target: x.clone(),
        arrows: (0..x.len()).map(|i| ArrowOrbit::new(i, i, 0)).collect(),
    }
}

/// The fiber product `h ∘ f`, together with the pair `(a, b)` of arrow
/// positions each new arrow came from. Pairs are enumerated with `a` outer and
/// `b` inner, in increasing order.
pub fn compose_with_provenance(
    f: &Correspondence,
    h: &Correspondence,
) -> Result<(Correspondence, Vec<(usize, usize)>), BurnsideError> {
    if f.group() != h.group() {
        return Err(BurnsideError::MismatchedGroup);
    }
    if f.target != h.source {
        return Err(BurnsideError::MismatchedBoundary);
    }
    let g = f.group();
    let mut by_source: Vec<Vec<usize>> = vec![Vec::new(); h.source.len()];
    for (j, b) in h.arrows.iter().enumerate() {
        by_source[b.s].push(j);
    }
    let mut arrows = Vec::new();
    let mut provenance = Vec::new();
    for (i, a) in f.arrows.iter().enumerate() {
        for &j in &by_source[a.t] {
            let b = &h.arrows[j];
            arrows.push(ArrowOrbit::new(a.s, b.t, g.op(a.offset, b.offset)));
            provenance.push((i, j));
        }
    }
    let c = Correspondence { source: f.source.clone(), target: h.target.clone(), arrows };
    Ok((c, provenance))
}

/// Composite `X -f-> Y -h-> Z`.
pub fn compose(f: &Correspondence, h: &Correspondence) -> Result<Correspondence, BurnsideError> {
    compose_with_provenance(f, h).map(|(c, _)| c)
}

/// Reverses every arrow. Arrow positions are preserved.
pub fn dual_correspondence(f: &Correspondence) -> Correspondence {
    let g = f.group();
    Correspondence {
        source: f.target.clone(),
        target: f.source.clone(),
        arrows: f.arrows.iter().map(|a| ArrowOrbit::new(a.t, a.s, g.inv(a.offset))).collect(),
    }
}

/// Levelwise quotient of an infinite-cyclic correspondence by `rZ`.
pub fn quotient_by_subgroup(f: &Correspondence, r: u64) -> Result<Correspondence, BurnsideError> {
    if f.group() != GroupId::InfiniteCyclic {
        return Err(BurnsideError::MismatchedGroup);
    }
    let g = GroupId::cyclic(r)?;
    Ok(Correspondence {
        source: f.source.with_group(g),
        target: f.target.with_group(g),
        arrows: f.arrows.iter().map(|a| ArrowOrbit::new(a.s, a.t, g.normalize(a.offset))).collect(),
    })
}

/// The matrix with `(t, s)` entry `Σ q^offset` over arrows from orbit `s` to orbit `t`.
pub fn linearize(f: &Correspondence) -> ExactMatrix {
    let ring = f.group().ring();
    let mut m = ExactMatrix::zeros(ring, f.target.len(), f.source.len());
    for a in &f.arrows {
        let x = ring.q_pow(a.offset).unwrap_or_else(|| ring.one());
        m.add_at(a.t, a.s, &x);
    }
    m
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Source,
    Target,
}

/// Cardinality of `s⁻¹(x)` (or `t⁻¹(y)`) for any element of each orbit, keyed by label.
pub fn fiber_cardinalities(f: &Correspondence, side: Side) -> BTreeMap<String, usize> {
    let set = match side {
        Side::Source => &f.source,
        Side::Target => &f.target,
    };
    let mut counts: BTreeMap<String, usize> = set.orbits.iter().map(|o| (o.clone(), 0)).collect();
    for a in &f.arrows {
        let i = match side {
            Side::Source => a.s,
            Side::Target => a.t,
        };
        *counts.get_mut(&set.orbits[i]).unwrap() += 1;
    }
    counts
}

/// `t(s⁻¹(x))`.
pub fn cosupport(x: GElement, f: &Correspondence) -> Result<BTreeSet<GElement>, BurnsideError> {
    if x.orbit >= f.source.len() {
        return Err(BurnsideError::InvalidElement(x.orbit));
    }
    let g = f.group();
    Ok(f.arrows
        .iter()
        .filter(|a| a.s == x.orbit)
        .map(|a| GElement { orbit: a.t, offset: g.op(x.offset, a.offset) })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Elem, LaurentPoly};

    fn set(g: GroupId, labels: &[&str]) -> FreeGSet {
        FreeGSet::new(g, labels.iter().map(|s| s.to_string()).collect()).unwrap()
    }

    fn corr(g: GroupId, src: &[&str], tgt: &[&str], arrows: &[(usize, usize, i64)]) -> Correspondence {
        let arrows = arrows.iter().map(|&(s, t, o)| ArrowOrbit::new(s, t, o)).collect();
        Correspondence::new(set(g, src), set(g, tgt), arrows).unwrap()
    }

    #[test]
    fn identity_arrows() {
        assert!(identity_correspondence(&set(GroupId::Trivial, &[])).is_empty());
        let id = identity_correspondence(&set(GroupId::InfiniteCyclic, &["a", "b"]));
        assert_eq!(id.arrows(), &[ArrowOrbit::new(0, 0, 0), ArrowOrbit::new(1, 1, 0)]);
    }

    #[test]
    fn duplicate_labels_rejected() {
        assert!(FreeGSet::new(GroupId::Trivial, vec!["a".into(), "a".into()]).is_err());
    }

    #[test]
    fn compose_multiplicity_and_offsets() {
        let t = GroupId::Trivial;
        let f = corr(t, &["x"], &["y"], &[(0, 0, 0), (0, 0, 0)]);
        let h = corr(t, &["y"], &["z"], &[(0, 0, 0)]);
        assert_eq!(compose(&f, &h).unwrap().arrows(), &[ArrowOrbit::new(0, 0, 0); 2]);

        let z = GroupId::InfiniteCyclic;
        let f = corr(z, &["x"], &["y"], &[(0, 0, 2)]);
        let h = corr(z, &["y"], &["z"], &[(0, 0, -1)]);
        assert_eq!(compose(&f, &h).unwrap().arrows(), &[ArrowOrbit::new(0, 0, 1)]);
    }

    #[test]
    fn compose_errors() {
        let f = corr(GroupId::Trivial, &["x"], &["y"], &[]);
        let h = corr(GroupId::Trivial, &["w"], &["z"], &[]);
        assert_eq!(compose(&f, &h), Err(BurnsideError::MismatchedBoundary));
        let h = corr(GroupId::InfiniteCyclic, &["y"], &["z"], &[]);
        assert_eq!(compose(&f, &h), Err(BurnsideError::MismatchedGroup));
    }

    #[test]
    fn dual_inverts_offsets() {
        let f = corr(GroupId::InfiniteCyclic, &["x"], &["y"], &[(0, 0, 3)]);
        let d = dual_correspondence(&f);
        assert_eq!(d.arrows(), &[ArrowOrbit::new(0, 0, -3)]);
        assert_eq!(d.source().orbits(), &["y".to_string()]);
        assert_eq!(dual_correspondence(&d), f);
    }

    #[test]
    fn quotient_reduces_offsets() {
        let f = corr(GroupId::InfiniteCyclic, &["x"], &["y"], &[(0, 0, 3)]);
        let q = quotient_by_subgroup(&f, 2).unwrap();
        assert_eq!(q.group(), GroupId::Cyclic { order: 2 });
        assert_eq!(q.arrows()[0].offset, 1);
        let q1 = quotient_by_subgroup(&f, 1).unwrap();
        assert_eq!(q1.group(), GroupId::Trivial);
        assert_eq!(q1.arrows()[0].offset, 0);
    }

    #[test]
    fn linearize_sums_monomials() {
        let f = corr(GroupId::InfiniteCyclic, &["x"], &["y"], &[(0, 0, 1), (0, 0, 1), (0, 0, 3)]);
        let m = linearize(&f);
        assert_eq!(m.get(0, 0), &Elem::Poly(LaurentPoly::from_terms([(1, 2), (3, 1)])));
        let id = identity_correspondence(&set(GroupId::Trivial, &["a", "b"]));
        assert_eq!(linearize(&id), ExactMatrix::identity(RingId::Integers, 2));
    }

    #[test]
    fn fibers_and_cosupport() {
        let f = corr(GroupId::InfiniteCyclic, &["x"], &["y", "z"], &[(0, 0, 0), (0, 0, 1), (0, 1, 0)]);
        assert_eq!(fiber_cardinalities(&f, Side::Source)["x"], 3);
        assert_eq!(fiber_cardinalities(&f, Side::Target)["y"], 2);

        let f = corr(GroupId::InfiniteCyclic, &["x"], &["y", "z"], &[(0, 0, 1), (0, 1, 2)]);
        let c = cosupport(GElement { orbit: 0, offset: 1 }, &f).unwrap();
        let expected = [GElement { orbit: 0, offset: 2 }, GElement { orbit: 1, offset: 3 }].into();
        assert_eq!(c, expected);
        assert_eq!(cosupport(GElement { orbit: 1, offset: 0 }, &f), Err(BurnsideError::InvalidElement(1)));
        let empty = corr(GroupId::InfiniteCyclic, &["x"], &["y"], &[]);
        assert!(cosupport(GElement { orbit: 0, offset: 0 }, &empty).unwrap().is_empty());
    }
}
