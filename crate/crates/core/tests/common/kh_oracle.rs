//! A second, geometric implementation of braid-closure resolutions: the
//! closed braid is drawn on a grid of points `(height, position)` and each
//! crossing is replaced by two vertical strands or by a cap and a cup.

use std::collections::BTreeMap;

use burnside_core::algebra::{BasisElement, ExactMatrix, GradedChainComplex, LaurentPoly, RingId};
use burnside_core::khovanov::Theory;

pub struct OracleState {
    /// Circle of each grid point.
    comp: Vec<usize>,
    pub circles: usize,
    pub essential: Vec<bool>,
    pub rank: Vec<Option<usize>>,
}

/// `smoothing[t]` is true for the vertical smoothing at letter `t`.
pub fn trace(m: usize, word: &[i32], vertical: &[bool]) -> OracleState {
    let h = word.len();
    let node = |t: usize, p: usize| t * m + p;
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); (h + 1) * m];
    let mut link = |a: usize, b: usize| {
        adj[a].push(b);
        adj[b].push(a);
    };
    for (t, &l) in word.iter().enumerate() {
        let i = l.unsigned_abs() as usize - 1;
        for p in (0..m).filter(|&p| p != i && p != i + 1) {
            link(node(t, p), node(t + 1, p));
        }
        if vertical[t] {
            link(node(t, i), node(t + 1, i));
            link(node(t, i + 1), node(t + 1, i + 1));
        } else {
            link(node(t, i), node(t, i + 1));
            link(node(t + 1, i), node(t + 1, i + 1));
        }
    }
    // the closure strands run around the annulus through the seam
    for p in 0..m {
        link(node(h, p), node(0, p));
    }
    let mut comp = vec![usize::MAX; adj.len()];
    let mut circles = 0;
    for start in 0..adj.len() {
        if comp[start] != usize::MAX {
            continue;
        }
        let mut stack = vec![start];
        comp[start] = circles;
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if comp[y] == usize::MAX {
                    comp[y] = circles;
                    stack.push(y);
                }
            }
        }
        circles += 1;
    }
    let seam_points: Vec<Vec<usize>> = (0..circles).map(|c| (0..m).filter(|&p| comp[node(0, p)] == c).collect()).collect();
    let essential: Vec<bool> = seam_points.iter().map(|s| s.len() % 2 == 1).collect();
    let rank = (0..circles)
        .map(|c| {
            essential[c].then(|| {
                (0..circles)
                    .filter(|&o| o != c && essential[o] && seam_points[o].iter().filter(|&&p| p < seam_points[c][0]).count() % 2 == 1)
                    .count()
            })
        })
        .collect();
    OracleState { comp, circles, essential, rank }
}

fn vertical(word: &[i32], u: usize) -> Vec<bool> {
    // 0-smoothing: vertical at positive crossings, cap-cup at negative ones
    word.iter().enumerate().map(|(t, &l)| (u >> t & 1 == 1) != (l > 0)).collect()
}

/// `Σ_u x^{|u|} y^{#circles}` as a map `(|u|, #circles) -> count`.
pub fn circle_counts(m: usize, word: &[i32]) -> BTreeMap<(u32, usize), usize> {
    let mut out = BTreeMap::new();
    for u in 0..1usize << word.len() {
        *out.entry((u.count_ones(), trace(m, word, &vertical(word, u)).circles)).or_default() += 1;
    }
    out
}

pub fn bracket(m: usize, word: &[i32]) -> LaurentPoly {
    let circle = LaurentPoly::from_terms([(1, 1), (-1, 1)]);
    let np = word.iter().filter(|l| **l > 0).count() as i64;
    let nm = word.len() as i64 - np;
    let mut sum = LaurentPoly::zero();
    for ((h, c), k) in circle_counts(m, word) {
        let s = if (h as i64 + nm) % 2 == 0 { 1 } else { -1 };
        sum = sum + LaurentPoly::monomial(s * k as i64, h as i64 + np - 2 * nm) * circle.pow(c as u32);
    }
    sum
}

fn labels(c: usize) -> Vec<Vec<bool>> {
    (0..1usize << c).map(|t| (0..c).map(|i| t >> i & 1 == 1).collect()).collect()
}

fn index(l: &[bool]) -> usize {
    l.iter().enumerate().map(|(i, &p)| usize::from(p) << i).sum()
}

/// The Khovanov-type complex assembled directly from grid states, in
/// homological degree `n₋ - |u|`, with signs `(-1)^{#1s after the changed coordinate}`.
pub fn khovanov_complex(m: usize, word: &[i32], theory: Theory) -> GradedChainComplex {
    let n = word.len();
    let np = word.iter().filter(|l| **l > 0).count() as i64;
    let nm = n as i64 - np;
    let annular = theory != Theory::Classical;
    let ring = if theory == Theory::QuantumAnnular { RingId::LaurentIntegers } else { RingId::Integers };
    let states: Vec<OracleState> = (0..1usize << n).map(|u| trace(m, word, &vertical(word, u))).collect();
    let pm = |p: bool| if p { 1 } else { -1 };
    let k_of = |s: &OracleState, l: &[bool]| -> i64 { (0..s.circles).filter(|&c| s.essential[c]).map(|c| pm(l[c])).sum() };
    let phi = |s: &OracleState, l: &[bool]| -> i64 {
        (0..s.circles).filter_map(|c| s.rank[c].map(|r| pm(l[c]) * if r % 2 == 0 { 1 } else { -1 })).sum()
    };

    let mut basis: BTreeMap<i64, Vec<BasisElement>> = BTreeMap::new();
    let mut position = vec![Vec::new(); 1 << n];
    for (u, s) in states.iter().enumerate() {
        let deg = nm - u.count_ones() as i64;
        for l in labels(s.circles) {
            let j: i64 = l.iter().map(|&p| pm(p)).sum::<i64>() + u.count_ones() as i64 + np - 2 * nm;
            let aux = if annular { vec![j, k_of(s, &l)] } else { vec![j] };
            let slot = basis.entry(deg).or_default();
            position[u].push(slot.len());
            slot.push(BasisElement::new(format!("{u}/{}", index(&l)), deg, aux));
        }
    }
    let mut d: BTreeMap<i64, ExactMatrix> = BTreeMap::new();
    for u in 0..1usize << n {
        for b in (0..n).filter(|b| u >> b & 1 == 1) {
            let v = u & !(1 << b);
            let (src, dst) = (&states[v], &states[u]);
            let deg = nm - v.count_ones() as i64;
            let rows = basis.get(&(deg - 1)).map_or(0, Vec::len);
            let block = d.entry(deg).or_insert_with(|| ExactMatrix::zeros(ring, rows, basis[&deg].len()));
            // which circles share grid points
            let mut meets = vec![Vec::new(); src.circles];
            for (x, &c) in src.comp.iter().enumerate() {
                if !meets[c].contains(&dst.comp[x]) {
                    meets[c].push(dst.comp[x]);
                }
            }
            let sign = if (u >> (b + 1)).count_ones() % 2 == 0 { 1 } else { -1 };
            for x in labels(src.circles) {
                let mut base = vec![false; dst.circles];
                let mut merged: BTreeMap<usize, Vec<bool>> = BTreeMap::new();
                let mut split = None;
                for c in 0..src.circles {
                    match meets[c].as_slice() {
                        [t] => merged.entry(*t).or_default().push(x[c]),
                        [t1, t2] => split = Some((x[c], *t1, *t2)),
                        _ => unreachable!(),
                    }
                }
                let mut joined = None;
                for (t, ls) in merged {
                    match ls.as_slice() {
                        [p] => base[t] = *p,
                        [p, q] => joined = Some((t, *p && *q, *p || *q)),
                        _ => unreachable!(),
                    }
                }
                let outs: Vec<Vec<bool>> = match (joined, split) {
                    (Some((_, _, false)), None) => vec![],
                    (Some((t, plus, true)), None) => {
                        base[t] = plus;
                        vec![base]
                    }
                    (None, Some((true, t1, t2))) => {
                        let mut a = base.clone();
                        a[t1] = true;
                        let mut c = base;
                        c[t2] = true;
                        vec![a, c]
                    }
                    (None, Some((false, _, _))) => vec![base],
                    _ => unreachable!(),
                };
                for y in outs {
                    if annular && k_of(dst, &y) != k_of(src, &x) {
                        continue;
                    }
                    let e = match theory {
                        Theory::QuantumAnnular => ring.q_pow(phi(dst, &y) - phi(src, &x)).unwrap(),
                        _ => ring.one(),
                    };
                    let e = if sign < 0 { ring.neg(&e) } else { e };
                    block.add_at(position[u][index(&y)], position[v][index(&x)], &e);
                }
            }
        }
    }
    GradedChainComplex::new(ring, if annular { 2 } else { 1 }, basis, d).unwrap()
}
