use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::laurent::LaurentPoly;
use crate::error::AlgebraError;

/// The exact coefficient rings supported by matrices and complexes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RingId {
    Integers,
    LaurentIntegers,
    /// `Z[G_r] = Z[q]/(q^r - 1)`.
    CyclicGroupRing { order: u64 },
    Rationals,
    PrimeField { p: u64 },
}

/// A ring element. Which variant is valid depends on the owning [`RingId`]:
/// `Int` for Integers, `Poly` for LaurentIntegers and CyclicGroupRing (exponents
/// reduced into `[0, r)` for the latter), `Rat` for Rationals and `Mod` for prime fields.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Elem {
    Int(BigInt),
    Poly(LaurentPoly),
    Rat(BigRational),
    Mod(u64),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl RingId {
    pub fn cyclic(order: u64) -> Result<Self, AlgebraError> {
        if order == 0 {
            return Err(AlgebraError::InvalidRing("cyclic group order must be positive".into()));
        }
        Ok(RingId::CyclicGroupRing { order })
    }

    pub fn prime_field(p: u64) -> Result<Self, AlgebraError> {
        if !is_prime(p) {
            return Err(AlgebraError::InvalidRing(format!("{p} is not prime")));
        }
        Ok(RingId::PrimeField { p })
    }

    /// Checks the construction invariants (used after deserialization).
    pub fn check(&self) -> Result<(), AlgebraError> {
        match *self {
            RingId::CyclicGroupRing { order } => Self::cyclic(order).map(|_| ()),
            RingId::PrimeField { p } => Self::prime_field(p).map(|_| ()),
            _ => Ok(()),
        }
    }

    pub fn is_field(&self) -> bool {
        matches!(self, RingId::Rationals | RingId::PrimeField { .. })
    }

    /// True for rings whose elements carry a `q` variable.
    pub fn is_group_ring(&self) -> bool {
        matches!(self, RingId::LaurentIntegers | RingId::CyclicGroupRing { .. })
    }

    pub fn zero(&self) -> Elem {
        match self {
            RingId::Integers => Elem::Int(BigInt::zero()),
            RingId::LaurentIntegers | RingId::CyclicGroupRing { .. } => Elem::Poly(LaurentPoly::zero()),
            RingId::Rationals => Elem::Rat(BigRational::zero()),
            RingId::PrimeField { .. } => Elem::Mod(0),
        }
    }

    pub fn one(&self) -> Elem {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> Elem {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> Elem {
        match self {
            RingId::Integers => Elem::Int(n.clone()),
            RingId::LaurentIntegers | RingId::CyclicGroupRing { .. } => {
                Elem::Poly(LaurentPoly::constant(n.clone()))
            }
            RingId::Rationals => Elem::Rat(BigRational::from_integer(n.clone())),
            RingId::PrimeField { p } => {
                let r = n.mod_floor(&BigInt::from(*p));
                Elem::Mod(r.to_u64().unwrap())
            }
        }
    }

    /// `q^k`, for group rings only.
    pub fn q_pow(&self, k: i64) -> Option<Elem> {
        match self {
            RingId::LaurentIntegers => Some(Elem::Poly(LaurentPoly::monomial(1, k))),
            RingId::CyclicGroupRing { order } => {
                Some(Elem::Poly(LaurentPoly::monomial(1, k.rem_euclid(*order as i64))))
            }
            _ => None,
        }
    }

    /// Converts a Laurent polynomial into this ring (reducing mod `q^r - 1` where needed).
    pub fn from_laurent(&self, p: &LaurentPoly) -> Option<Elem> {
        match self {
            RingId::LaurentIntegers => Some(Elem::Poly(p.clone())),
            RingId::CyclicGroupRing { order } => Some(Elem::Poly(p.reduce_mod(*order))),
            _ => {
                if p.terms().all(|(e, _)| e == 0) {
                    Some(self.from_bigint(&p.coeff(0)))
                } else {
                    None
                }
            }
        }
    }

    pub fn contains(&self, x: &Elem) -> bool {
        match (self, x) {
            (RingId::Integers, Elem::Int(_)) => true,
            (RingId::LaurentIntegers, Elem::Poly(_)) => true,
            (RingId::CyclicGroupRing { order }, Elem::Poly(p)) => {
                p.terms().all(|(e, _)| e >= 0 && (e as u64) < *order)
            }
            (RingId::Rationals, Elem::Rat(_)) => true,
            (RingId::PrimeField { p }, Elem::Mod(v)) => v < p,
            _ => false,
        }
    }

    pub fn is_zero(&self, x: &Elem) -> bool {
        match x {
            Elem::Int(n) => n.is_zero(),
            Elem::Poly(p) => p.is_zero(),
            Elem::Rat(r) => r.is_zero(),
            Elem::Mod(v) => *v == 0,
        }
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match (a, b) {
            (Elem::Int(x), Elem::Int(y)) => Elem::Int(x + y),
            (Elem::Poly(x), Elem::Poly(y)) => Elem::Poly(self.reduce(x + y)),
            (Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x + y),
            (Elem::Mod(x), Elem::Mod(y)) => Elem::Mod((x + y) % self.modulus()),
            _ => panic!("ring element kinds do not match {self:?}"),
        }
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        match a {
            Elem::Int(x) => Elem::Int(-x),
            Elem::Poly(x) => Elem::Poly(self.reduce(-x)),
            Elem::Rat(x) => Elem::Rat(-x),
            Elem::Mod(x) => Elem::Mod((self.modulus() - x) % self.modulus()),
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (a, b) {
            (Elem::Int(x), Elem::Int(y)) => Elem::Int(x * y),
            (Elem::Poly(x), Elem::Poly(y)) => Elem::Poly(self.reduce(x * y)),
            (Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x * y),
            (Elem::Mod(x), Elem::Mod(y)) => {
                Elem::Mod(((*x as u128 * *y as u128) % self.modulus() as u128) as u64)
            }
            _ => panic!("ring element kinds do not match {self:?}"),
        }
    }

    /// The involution `q -> q^-1` on group rings; identity elsewhere.
    pub fn conj(&self, a: &Elem) -> Elem {
        match a {
            Elem::Poly(p) => Elem::Poly(self.reduce(p.bar())),
            other => other.clone(),
        }
    }

    pub fn inverse(&self, a: &Elem) -> Option<Elem> {
        match a {
            Elem::Int(x) => (x.abs().is_one()).then(|| Elem::Int(x.clone())),
            Elem::Poly(p) => {
                let (s, e) = p.as_signed_monomial()?;
                Some(Elem::Poly(self.reduce(LaurentPoly::monomial(s as i64, -e))))
            }
            Elem::Rat(r) => (!r.is_zero()).then(|| Elem::Rat(r.recip())),
            Elem::Mod(v) => {
                if *v == 0 {
                    return None;
                }
                let p = self.modulus();
                Some(Elem::Mod(pow_mod(*v, p - 2, p)))
            }
        }
    }

    pub fn is_unit(&self, a: &Elem) -> bool {
        self.inverse(a).is_some()
    }

    /// Returns a unit `u` with `a = u * b`, if one exists.
    pub fn unit_ratio(&self, a: &Elem, b: &Elem) -> Option<Elem> {
        if self.is_zero(b) {
            return None;
        }
        if let (Elem::Poly(pa), Elem::Poly(pb)) = (a, b) {
            if pa.num_terms() != pb.num_terms() {
                return None;
            }
            let (eb, cb) = pb.terms().next()?;
            for (ea, ca) in pa.terms() {
                for sign in [1i64, -1] {
                    if &(cb * sign) != ca {
                        continue;
                    }
                    let u = self.reduce(LaurentPoly::monomial(sign, ea - eb));
                    if self.reduce(&u * pb) == *pa {
                        return Some(Elem::Poly(u));
                    }
                }
            }
            return None;
        }
        if let Some(binv) = self.inverse(b) {
            let u = self.mul(a, &binv);
            return self.is_unit(&u).then_some(u);
        }
        // Integers with |b| > 1.
        [self.one(), self.neg(&self.one())].into_iter().find(|u| self.mul(u, b) == *a)
    }

    /// Embeds an element as a Laurent polynomial where that makes sense
    /// (Integers and group rings); used for ring-agnostic entry comparison.
    pub fn to_laurent(&self, a: &Elem) -> Option<LaurentPoly> {
        match a {
            Elem::Int(x) => Some(LaurentPoly::constant(x.clone())),
            Elem::Poly(p) => Some(p.clone()),
            _ => None,
        }
    }

    fn reduce(&self, p: LaurentPoly) -> LaurentPoly {
        match self {
            RingId::CyclicGroupRing { order } => p.reduce_mod(*order),
            _ => p,
        }
    }

    fn modulus(&self) -> u64 {
        match self {
            RingId::PrimeField { p } => *p,
            _ => unreachable!("modulus of non-prime-field ring"),
        }
    }
}

fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    let m = m as u128;
    let (mut acc, mut b) = (1u128, base as u128 % m);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

impl fmt::Display for RingId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingId::Integers => write!(f, "Z"),
            RingId::LaurentIntegers => write!(f, "Z[q,q^-1]"),
            RingId::CyclicGroupRing { order } => write!(f, "Z[q]/(q^{order}-1)"),
            RingId::Rationals => write!(f, "Q"),
            RingId::PrimeField { p } => write!(f, "F_{p}"),
        }
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elem::Int(x) => write!(f, "{x}"),
            Elem::Poly(p) => write!(f, "{p}"),
            Elem::Rat(r) => write!(f, "{r}"),
            Elem::Mod(v) => write!(f, "{v}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_check_by_trial_division() {
        assert!(RingId::prime_field(2).is_ok());
        assert!(RingId::prime_field(97).is_ok());
        assert!(RingId::prime_field(1).is_err());
        assert!(RingId::prime_field(91).is_err());
        assert!(RingId::cyclic(0).is_err());
    }

    #[test]
    fn field_inverses() {
        let f7 = RingId::prime_field(7).unwrap();
        let x = f7.from_int(3);
        assert_eq!(f7.mul(&x, &f7.inverse(&x).unwrap()), f7.one());
        assert_eq!(f7.from_int(-1), Elem::Mod(6));
    }

    #[test]
    fn unit_ratio_in_group_rings() {
        let r = RingId::LaurentIntegers;
        let a = Elem::Poly(LaurentPoly::from_terms([(3, -1), (5, -2)]));
        let b = Elem::Poly(LaurentPoly::from_terms([(0, 1), (2, 2)]));
        assert_eq!(r.unit_ratio(&a, &b), Some(Elem::Poly(LaurentPoly::monomial(-1, 3))));
        let c3 = RingId::cyclic(3).unwrap();
        let a = c3.from_laurent(&LaurentPoly::from_terms([(0, 1), (1, 2)])).unwrap();
        let b = c3.from_laurent(&LaurentPoly::from_terms([(2, 1), (0, 2)])).unwrap();
        assert_eq!(c3.unit_ratio(&a, &b), Some(Elem::Poly(LaurentPoly::monomial(1, 1))));
        assert_eq!(RingId::Integers.unit_ratio(&RingId::Integers.from_int(4), &RingId::Integers.from_int(2)), None);
        assert_eq!(
            RingId::Integers.unit_ratio(&RingId::Integers.from_int(-2), &RingId::Integers.from_int(2)),
            Some(RingId::Integers.from_int(-1))
        );
    }
}
