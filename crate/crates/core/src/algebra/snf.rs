//! Smith normal form over the integers.
//!
//! Row/column reduction with the pivot chosen as the entry of minimal nonzero
//! absolute value in the active submatrix. All arithmetic is on `BigInt`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::ExactMatrix;
use super::ring::{Elem, RingId};
use crate::error::AlgebraError;

/// `u * m * v = s` with `u`, `v` unimodular and `s` diagonal, `d_1 | d_2 | ...`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: ExactMatrix,
    pub s: ExactMatrix,
    pub v: ExactMatrix,
}

impl SmithForm {
    /// Nonzero diagonal entries of `s`, in order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.s.rows().min(self.s.cols()))
            .filter_map(|i| match self.s.get(i, i) {
                Elem::Int(x) if !x.is_zero() => Some(x.clone()),
                _ => None,
            })
            .collect()
    }
}

struct Work {
    rows: usize,
    cols: usize,
    a: Vec<Vec<BigInt>>,
    // Row operations are mirrored on `u`, column operations on `v`.
    u: Option<Vec<Vec<BigInt>>>,
    v: Option<Vec<Vec<BigInt>>>,
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            self.a.swap(i, j);
            if let Some(u) = &mut self.u {
                u.swap(i, j);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i != j {
            for row in &mut self.a {
                row.swap(i, j);
            }
            if let Some(v) = &mut self.v {
                for row in v.iter_mut() {
                    row.swap(i, j);
                }
            }
        }
    }

    /// row_dst -= c * row_src
    fn sub_row(&mut self, dst: usize, src: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let (s, d) = two_rows(&mut self.a, src, dst);
        for (x, y) in d.iter_mut().zip(s.iter()) {
            *x -= c * y;
        }
        if let Some(u) = &mut self.u {
            let (s, d) = two_rows(u, src, dst);
            for (x, y) in d.iter_mut().zip(s.iter()) {
                *x -= c * y;
            }
        }
    }

    /// col_dst -= c * col_src
    fn sub_col(&mut self, dst: usize, src: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for row in &mut self.a {
            let t = c * &row[src];
            row[dst] -= t;
        }
        if let Some(v) = &mut self.v {
            for row in v.iter_mut() {
                let t = c * &row[src];
                row[dst] -= t;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in &mut self.a[i] {
            *x = -&*x;
        }
        if let Some(u) = &mut self.u {
            for x in &mut u[i] {
                *x = -&*x;
            }
        }
    }

    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let x = &self.a[i][j];
                if x.is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if self.a[bi][bj].abs() <= x.abs() => {}
                    _ => {
                        if x.abs().is_one() {
                            return Some((i, j));
                        }
                        best = Some((i, j));
                    }
                }
            }
        }
        best
    }

    fn run(&mut self) {
        let n = self.rows.min(self.cols);
        for t in 0..n {
            let Some((pi, pj)) = self.min_pivot(t) else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let mut dirty = false;
                for i in t + 1..self.rows {
                    if self.a[i][t].is_zero() {
                        continue;
                    }
                    let q = self.a[i][t].div_floor(&self.a[t][t]);
                    self.sub_row(i, t, &q);
                    if !self.a[i][t].is_zero() {
                        dirty = true;
                    }
                }
                for j in t + 1..self.cols {
                    if self.a[t][j].is_zero() {
                        continue;
                    }
                    let q = self.a[t][j].div_floor(&self.a[t][t]);
                    self.sub_col(j, t, &q);
                    if !self.a[t][j].is_zero() {
                        dirty = true;
                    }
                }
                if !dirty {
                    // Row and column cleared; enforce divisibility on the rest.
                    let p = self.a[t][t].clone();
                    let bad = (t + 1..self.rows)
                        .find(|&i| (t + 1..self.cols).any(|j| !self.a[i][j].is_multiple_of(&p)));
                    match bad {
                        None => break,
                        Some(i) => {
                            self.sub_row(t, i, &BigInt::from(-1));
                            continue;
                        }
                    }
                }
                // A smaller remainder appeared in row or column t: move it to the pivot.
                let (mut bi, mut bj) = (t, t);
                for i in t..self.rows {
                    let x = &self.a[i][t];
                    if !x.is_zero() && x.abs() < self.a[bi][bj].abs() {
                        (bi, bj) = (i, t);
                    }
                }
                for j in t..self.cols {
                    let x = &self.a[t][j];
                    if !x.is_zero() && x.abs() < self.a[bi][bj].abs() {
                        (bi, bj) = (t, j);
                    }
                }
                self.swap_rows(t, bi);
                self.swap_cols(t, bj);
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t);
            }
        }
    }
}

fn two_rows<T>(a: &mut [Vec<T>], src: usize, dst: usize) -> (&Vec<T>, &mut Vec<T>) {
    assert_ne!(src, dst);
    if src < dst {
        let (lo, hi) = a.split_at_mut(dst);
        (&lo[src], &mut hi[0])
    } else {
        let (lo, hi) = a.split_at_mut(src);
        (&hi[0], &mut lo[dst])
    }
}

fn to_bigint_rows(m: &ExactMatrix) -> Result<Vec<Vec<BigInt>>, AlgebraError> {
    if m.ring() != RingId::Integers {
        return Err(AlgebraError::UnsupportedRing { ring: m.ring(), reason: "Smith normal form needs integer entries" });
    }
    Ok((0..m.rows())
        .map(|r| {
            (0..m.cols())
                .map(|c| match m.get(r, c) {
                    Elem::Int(x) => x.clone(),
                    _ => unreachable!(),
                })
                .collect()
        })
        .collect())
}

fn from_rows(rows: usize, cols: usize, a: Vec<Vec<BigInt>>) -> ExactMatrix {
    let entries = a.into_iter().flatten().map(Elem::Int).collect();
    ExactMatrix::from_entries(RingId::Integers, rows, cols, entries).expect("shape preserved")
}

pub fn smith_normal_form(m: &ExactMatrix) -> Result<SmithForm, AlgebraError> {
    let a = to_bigint_rows(m)?;
    let (rows, cols) = (m.rows(), m.cols());
    let mut w = Work { rows, cols, a, u: Some(identity(rows)), v: Some(identity(cols)) };
    w.run();
    Ok(SmithForm {
        u: from_rows(rows, rows, w.u.take().unwrap()),
        v: from_rows(cols, cols, w.v.take().unwrap()),
        s: from_rows(rows, cols, w.a),
    })
}

/// Nonzero invariant factors only (no transformation matrices are tracked).
pub fn invariant_factors(m: &ExactMatrix) -> Result<Vec<BigInt>, AlgebraError> {
    let a = to_bigint_rows(m)?;
    let mut w = Work { rows: m.rows(), cols: m.cols(), a, u: None, v: None };
    w.run();
    Ok((0..w.rows.min(w.cols)).map(|i| w.a[i][i].clone()).filter(|x| !x.is_zero()).collect())
}

/// Rank over a field (Rationals or a prime field) by Gaussian elimination.
pub fn field_rank(m: &ExactMatrix) -> Result<usize, AlgebraError> {
    let ring = m.ring();
    if !ring.is_field() {
        return Err(AlgebraError::UnsupportedRing { ring, reason: "rank by elimination needs a field" });
    }
    let mut a: Vec<Vec<Elem>> =
        (0..m.rows()).map(|r| (0..m.cols()).map(|c| m.get(r, c).clone()).collect()).collect();
    let mut rank = 0;
    for c in 0..m.cols() {
        let Some(p) = (rank..m.rows()).find(|&r| !ring.is_zero(&a[r][c])) else { continue };
        a.swap(rank, p);
        let inv = ring.inverse(&a[rank][c]).expect("nonzero field element");
        for r in rank + 1..m.rows() {
            if ring.is_zero(&a[r][c]) {
                continue;
            }
            let f = ring.mul(&a[r][c], &inv);
            for k in c..m.cols() {
                let t = ring.mul(&f, &a[rank][k]);
                a[r][k] = ring.sub(&a[r][k], &t);
            }
        }
        rank += 1;
    }
    Ok(rank)
}
