use std::fmt;

use super::ring::{Elem, RingId};
use crate::error::AlgebraError;

/// Dense matrix over one of the exact rings. Acts on column vectors, so a map
/// `R^cols -> R^rows`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    ring: RingId,
    rows: usize,
    cols: usize,
    entries: Vec<Elem>,
}

impl ExactMatrix {
    pub fn zeros(ring: RingId, rows: usize, cols: usize) -> Self {
        Self { ring, rows, cols, entries: vec![ring.zero(); rows * cols] }
    }

    pub fn identity(ring: RingId, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    pub fn from_entries(ring: RingId, rows: usize, cols: usize, entries: Vec<Elem>) -> Result<Self, AlgebraError> {
        if entries.len() != rows * cols {
            return Err(AlgebraError::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if entries.iter().any(|e| !ring.contains(e)) {
            return Err(AlgebraError::ForeignEntry(ring));
        }
        Ok(Self { ring, rows, cols, entries })
    }

    pub fn from_ints(rows: usize, cols: usize, data: &[i64]) -> Self {
        assert_eq!(data.len(), rows * cols);
        let ring = RingId::Integers;
        Self { ring, rows, cols, entries: data.iter().map(|&x| ring.from_int(x)).collect() }
    }

    pub fn ring(&self) -> RingId {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Elem {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: Elem) {
        debug_assert!(self.ring.contains(&x));
        self.entries[r * self.cols + c] = x;
    }

    pub fn add_at(&mut self, r: usize, c: usize, x: &Elem) {
        let idx = r * self.cols + c;
        self.entries[idx] = self.ring.add(&self.entries[idx], x);
    }

    pub fn is_zero_at(&self, r: usize, c: usize) -> bool {
        self.ring.is_zero(self.get(r, c))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| self.ring.is_zero(e))
    }

    /// Nonzero entries as `(row, col, value)`, row-major.
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, usize, &Elem)> + '_ {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, e)| !self.ring.is_zero(e))
            .map(|(i, e)| (i / self.cols, i % self.cols, e))
    }

    pub fn mul(&self, rhs: &ExactMatrix) -> Result<ExactMatrix, AlgebraError> {
        if self.ring != rhs.ring {
            return Err(AlgebraError::DimensionMismatch(format!("rings {} and {}", self.ring, rhs.ring)));
        }
        if self.cols != rhs.rows {
            return Err(AlgebraError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let ring = self.ring;
        let mut out = ExactMatrix::zeros(ring, self.rows, rhs.cols);
        for (i, k, a) in self.nonzero() {
            for j in 0..rhs.cols {
                let b = rhs.get(k, j);
                if !ring.is_zero(b) {
                    out.add_at(i, j, &ring.mul(a, b));
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Elem) -> ExactMatrix {
        self.map(|ring, e| ring.mul(s, e))
    }

    pub fn neg(&self) -> ExactMatrix {
        self.map(|ring, e| ring.neg(e))
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut out = ExactMatrix::zeros(self.ring, self.cols, self.rows);
        for (r, c, e) in self.nonzero() {
            out.set(c, r, e.clone());
        }
        out
    }

    /// Transpose combined with `q -> q^-1` on every entry.
    pub fn conj_transpose(&self) -> ExactMatrix {
        let mut out = ExactMatrix::zeros(self.ring, self.cols, self.rows);
        for (r, c, e) in self.nonzero() {
            out.set(c, r, self.ring.conj(e));
        }
        out
    }

    /// Applies an entrywise function, landing in `target`.
    pub fn map_into(&self, target: RingId, mut f: impl FnMut(&Elem) -> Elem) -> ExactMatrix {
        ExactMatrix {
            ring: target,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| if self.ring.is_zero(e) { target.zero() } else { f(e) }).collect(),
        }
    }

    fn map(&self, f: impl Fn(RingId, &Elem) -> Elem) -> ExactMatrix {
        let ring = self.ring;
        self.map_into(ring, |e| f(ring, e))
    }

    /// Submatrix with the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> ExactMatrix {
        let mut out = ExactMatrix::zeros(self.ring, rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                out.entries[i * cols.len() + j] = self.get(r, c).clone();
            }
        }
        out
    }

    /// Writes `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &ExactMatrix) {
        for (r, c, e) in block.nonzero() {
            self.set(r0 + r, c0 + c, e.clone());
        }
    }

    pub fn entries(&self) -> &[Elem] {
        &self.entries
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_transpose() {
        let a = ExactMatrix::from_ints(2, 3, &[1, 2, 0, 0, 1, -1]);
        let b = ExactMatrix::from_ints(3, 1, &[1, 1, 1]);
        assert_eq!(a.mul(&b).unwrap(), ExactMatrix::from_ints(2, 1, &[3, 0]));
        assert_eq!(a.transpose().transpose(), a);
        assert!(b.mul(&b).is_err());
    }

    #[test]
    fn foreign_entries_rejected() {
        let r = RingId::cyclic(2).unwrap();
        let bad = RingId::LaurentIntegers.q_pow(3).unwrap();
        assert!(ExactMatrix::from_entries(r, 1, 1, vec![bad]).is_err());
    }
}
