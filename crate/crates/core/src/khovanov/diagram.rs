//! Braid words, PD codes and the planar diagrams built from them.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::KhovanovError;

fn malformed<T>(msg: impl Into<String>) -> Result<T, KhovanovError> {
    Err(KhovanovError::MalformedDiagram(msg.into()))
}

/// A braid on `strands` strands; letter `±i` is `σ_i^{±1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self, KhovanovError> {
        if strands == 0 {
            return malformed("a braid needs at least one strand");
        }
        if let Some(l) = letters.iter().find(|l| **l == 0 || l.unsigned_abs() as usize >= strands) {
            return malformed(format!("letter {l} is out of range for {strands} strands"));
        }
        Ok(Self { strands, letters })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let words: Vec<String> = self
            .letters
            .iter()
            .map(|&l| if l > 0 { format!("s{l}") } else { format!("s{}^-1", -l) })
            .collect();
        write!(f, "{}", words.join(" "))
    }
}

/// Crossings as 4-tuples of arc labels, counterclockwise from the incoming
/// under-strand.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PdCode {
    crossings: Vec<[i64; 4]>,
}

impl PdCode {
    pub fn new(crossings: Vec<[i64; 4]>) -> Result<Self, KhovanovError> {
        if crossings.is_empty() {
            return malformed("a PD code needs at least one crossing");
        }
        let mut count: BTreeMap<i64, usize> = BTreeMap::new();
        for x in crossings.iter().flatten() {
            *count.entry(*x).or_default() += 1;
        }
        if let Some((label, k)) = count.iter().find(|(_, k)| **k != 2) {
            return malformed(format!("arc {label} occurs {k} times"));
        }
        Ok(Self { crossings })
    }

    pub fn crossings(&self) -> &[[i64; 4]] {
        &self.crossings
    }
}

impl fmt::Display for PdCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let xs: Vec<String> =
            self.crossings.iter().map(|[a, b, c, d]| format!("X[{a},{b},{c},{d}]")).collect();
        write!(f, "PD[{}]", xs.join(","))
    }
}

/// Position of byte offset `at` as 1-based (line, column).
fn position(src: &str, at: usize) -> (usize, usize) {
    let before = &src[..at.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

fn parse_error<T>(src: &str, at: usize, msg: impl Into<String>) -> Result<T, KhovanovError> {
    let (line, column) = position(src, at);
    Err(KhovanovError::Parse { line, column, msg: msg.into() })
}

/// Whitespace-separated tokens `sK`, `sK^-1`, `sK^1` or signed integers.
pub fn parse_braid(src: &str, strands: usize) -> Result<BraidWord, KhovanovError> {
    let mut letters = Vec::new();
    let mut rest = src;
    while let Some(start) = rest.find(|c: char| !c.is_whitespace()) {
        let tail = &rest[start..];
        let len = tail.find(char::is_whitespace).unwrap_or(tail.len());
        let token = &tail[..len];
        let at = src.len() - tail.len();
        let letter = if let Some(body) = token.strip_prefix('s').or_else(|| token.strip_prefix('S')) {
            let (index, power) = match body.split_once('^') {
                Some((i, p)) => (i, p),
                None => (body, "1"),
            };
            let sign = match power {
                "1" | "+1" => 1,
                "-1" => -1,
                _ => return parse_error(src, at, format!("unsupported exponent in {token:?}")),
            };
            match index.parse::<i32>() {
                Ok(i) if i > 0 => sign * i,
                _ => return parse_error(src, at, format!("bad generator index in {token:?}")),
            }
        } else {
            match token.parse::<i32>() {
                Ok(0) => return parse_error(src, at, "letter 0 is not a generator"),
                Ok(i) => i,
                Err(_) => return parse_error(src, at, format!("unrecognized token {token:?}")),
            }
        };
        if strands == 0 {
            return parse_error(src, 0, "a braid needs at least one strand");
        }
        if letter.unsigned_abs() as usize >= strands {
            return parse_error(src, at, format!("generator {letter} needs more than {strands} strands"));
        }
        letters.push(letter);
        rest = &tail[len..];
    }
    BraidWord::new(strands, letters)
}

struct Cursor<'a> {
    src: &'a str,
    at: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        let rest = &self.src[self.at..];
        self.at += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.at..].chars().next()
    }

    fn expect(&mut self, word: &str) -> Result<(), KhovanovError> {
        self.skip_ws();
        if self.src[self.at..].starts_with(word) {
            self.at += word.len();
            Ok(())
        } else {
            parse_error(self.src, self.at, format!("expected {word:?}"))
        }
    }

    fn int(&mut self) -> Result<i64, KhovanovError> {
        self.skip_ws();
        let rest = &self.src[self.at..];
        let len = rest
            .char_indices()
            .find(|&(i, c)| !(c.is_ascii_digit() || (i == 0 && c == '-')))
            .map_or(rest.len(), |(i, _)| i);
        match rest[..len].parse() {
            Ok(x) => {
                self.at += len;
                Ok(x)
            }
            Err(_) => parse_error(self.src, self.at, "expected an integer arc label"),
        }
    }
}

/// `PD[X[a,b,c,d], ...]`.
pub fn parse_pd(src: &str) -> Result<PdCode, KhovanovError> {
    let mut cur = Cursor { src, at: 0 };
    cur.expect("PD")?;
    cur.expect("[")?;
    let mut crossings = Vec::new();
    if cur.peek() != Some(']') {
        loop {
            cur.expect("X")?;
            cur.expect("[")?;
            let mut x = [0; 4];
            for (k, slot) in x.iter_mut().enumerate() {
                if k > 0 {
                    cur.expect(",")?;
                }
                *slot = cur.int()?;
            }
            cur.expect("]")?;
            crossings.push(x);
            if cur.peek() == Some(',') {
                cur.expect(",")?;
            } else {
                break;
            }
        }
    }
    cur.expect("]")?;
    if cur.peek().is_some() {
        return parse_error(src, cur.at, "trailing input after PD code");
    }
    PdCode::new(crossings).map_err(|e| match e {
        KhovanovError::MalformedDiagram(msg) => {
            let (line, column) = position(src, 0);
            KhovanovError::Parse { line, column, msg }
        }
        other => other,
    })
}

/// A crossing on arcs `[a, b, c, d]`, counterclockwise from the incoming
/// under-strand `a`. The 0-smoothing joins `a–b` and `c–d`, the 1-smoothing
/// joins `a–d` and `b–c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub arcs: [usize; 4],
    pub positive: bool,
}

/// An oriented link diagram. Arcs are `0..arc_count`; arcs that meet no
/// crossing are free loops. Braid closures also record which arcs cross the
/// radial seam at the bottom of the braid: seam arc `p` sits at radius `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    arc_count: usize,
    crossings: Vec<Crossing>,
    seam: Option<Vec<usize>>,
}

impl Diagram {
    /// Closure of a braid in the annulus, strands going up.
    pub fn from_braid(w: &BraidWord) -> Self {
        let m = w.strands();
        let mut current: Vec<usize> = (0..m).collect();
        let mut next = m;
        let mut raw = Vec::new();
        for &l in w.letters() {
            let i = l.unsigned_abs() as usize - 1;
            let (x, y) = (current[i], current[i + 1]);
            let (tl, tr) = (next, next + 1);
            next += 2;
            // σ_i: over-strand bottom-left to top-right; σ_i^-1: the mirror.
            let arcs = if l > 0 { [y, tr, tl, x] } else { [x, y, tr, tl] };
            raw.push(Crossing { arcs, positive: l > 0 });
            current[i] = tl;
            current[i + 1] = tr;
        }
        // close up: the top arc at position p is the seam arc p
        let mut rename: Vec<usize> = (0..next).collect();
        for (p, &c) in current.iter().enumerate() {
            rename[c] = p;
        }
        let used: BTreeSet<usize> = (0..m).chain(raw.iter().flat_map(|c| c.arcs.map(|a| rename[a]))).collect();
        let compact: BTreeMap<usize, usize> = used.iter().enumerate().map(|(k, &a)| (a, k)).collect();
        let count = used.len();
        let crossings = raw
            .into_iter()
            .map(|c| Crossing { arcs: c.arcs.map(|a| compact[&rename[a]]), positive: c.positive })
            .collect();
        Self { arc_count: count, crossings, seam: Some((0..m).collect()) }
    }

    /// A planar diagram; orientations of over-strands are propagated from the
    /// under-strands, falling back to consecutive labels on components that
    /// never pass under.
    pub fn from_pd(pd: &PdCode) -> Self {
        let labels: Vec<i64> = {
            let mut v: Vec<i64> = pd.crossings().iter().flatten().copied().collect();
            v.sort_unstable();
            v.dedup();
            v
        };
        let id = |x: i64| labels.binary_search(&x).unwrap();
        let raw: Vec<[usize; 4]> = pd.crossings().iter().map(|x| x.map(id)).collect();

        // occurrences of each arc as (crossing, slot)
        let mut occ: Vec<Vec<(usize, usize)>> = vec![Vec::new(); labels.len()];
        for (ci, x) in raw.iter().enumerate() {
            for (s, &a) in x.iter().enumerate() {
                occ[a].push((ci, s));
            }
        }
        // incoming[c][s]: the arc at slot s of crossing c ends there
        let mut incoming: Vec<[Option<bool>; 4]> = vec![[Some(true), None, Some(false), None]; raw.len()];
        let settle = |incoming: &mut Vec<[Option<bool>; 4]>| loop {
            let mut changed = false;
            for a in 0..occ.len() {
                let [(c1, s1), (c2, s2)] = [occ[a][0], occ[a][1]];
                for ((c, s), (oc, os)) in [((c1, s1), (c2, s2)), ((c2, s2), (c1, s1))] {
                    if let (Some(v), None) = (incoming[c][s], incoming[oc][os]) {
                        incoming[oc][os] = Some(!v);
                        changed = true;
                    }
                }
            }
            for x in incoming.iter_mut() {
                for (s, o) in [(1, 3), (3, 1)] {
                    if let (Some(v), None) = (x[s], x[o]) {
                        x[o] = Some(!v);
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        };
        settle(&mut incoming);
        while let Some(c) = incoming.iter().position(|x| x[1].is_none()) {
            let [_, b, _, d] = pd.crossings()[c];
            let positive = b == d + 1 || d > b + 1;
            incoming[c][3] = Some(positive);
            settle(&mut incoming);
        }
        let crossings = raw
            .into_iter()
            .zip(&incoming)
            .map(|(arcs, inc)| Crossing { arcs, positive: inc[3] == Some(true) })
            .collect();
        Self { arc_count: labels.len(), crossings, seam: None }
    }

    pub fn arc_count(&self) -> usize {
        self.arc_count
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    /// Seam arcs by radius, for braid closures.
    pub fn seam(&self) -> Option<&[usize]> {
        self.seam.as_deref()
    }

    pub fn is_annular(&self) -> bool {
        self.seam.is_some()
    }

    pub fn n_plus(&self) -> usize {
        self.crossings.iter().filter(|c| c.positive).count()
    }

    pub fn n_minus(&self) -> usize {
        self.crossings.len() - self.n_plus()
    }

    pub fn writhe(&self) -> i64 {
        self.n_plus() as i64 - self.n_minus() as i64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn braid_tokens() {
        let w = parse_braid("s1 s2^-1  -1 2\ns1^1", 3).unwrap();
        assert_eq!(w.letters(), &[1, -2, -1, 2, 1]);
        assert_eq!(w.to_string(), "s1 s2^-1 s1^-1 s2 s1");
        assert!(parse_braid("", 1).unwrap().letters().is_empty());
    }

    #[test]
    fn braid_errors_carry_positions() {
        assert_eq!(
            parse_braid("s1\n  s3", 3),
            Err(KhovanovError::Parse { line: 2, column: 3, msg: "generator 3 needs more than 3 strands".into() })
        );
        assert!(matches!(parse_braid("s1 x", 2), Err(KhovanovError::Parse { line: 1, column: 4, .. })));
        assert!(matches!(parse_braid("s1^2", 2), Err(KhovanovError::Parse { .. })));
        assert!(matches!(parse_braid("0", 2), Err(KhovanovError::Parse { .. })));
        assert!(BraidWord::new(0, vec![]).is_err());
    }

    #[test]
    fn pd_round_trip_and_errors() {
        let pd = parse_pd("PD[X[1,4,2,5], X[3,6,4,1],\n X[5,2,6,3]]").unwrap();
        assert_eq!(pd.to_string(), "PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]]");
        assert_eq!(parse_pd(&pd.to_string()).unwrap(), pd);
        assert!(matches!(parse_pd("PD[X[1,2,3]]"), Err(KhovanovError::Parse { line: 1, column: 11, .. })));
        assert!(matches!(parse_pd("PD[X[1,1,2,3]]"), Err(KhovanovError::Parse { .. })));
        assert!(matches!(parse_pd("PD[X[1,1,2,2]] x"), Err(KhovanovError::Parse { column: 16, .. })));
    }

    #[test]
    fn crossing_signs() {
        // the standard table trefoil is left-handed
        let left = Diagram::from_pd(&parse_pd("PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]]").unwrap());
        assert_eq!((left.n_plus(), left.n_minus()), (0, 3));
        let right = Diagram::from_pd(&parse_pd("PD[X[4,2,5,1],X[6,4,1,3],X[2,6,3,5]]").unwrap());
        assert_eq!((right.n_plus(), right.n_minus()), (3, 0));
        let eight = Diagram::from_pd(&parse_pd("PD[X[4,2,5,1],X[8,6,1,5],X[6,3,7,4],X[2,7,3,8]]").unwrap());
        assert_eq!(eight.writhe(), 0);
    }

    #[test]
    fn braid_closure_arcs() {
        let d = Diagram::from_braid(&BraidWord::new(2, vec![1]).unwrap());
        assert_eq!(d.arc_count(), 2);
        assert_eq!(d.crossings()[0].arcs, [1, 1, 0, 0]);
        let d = Diagram::from_braid(&BraidWord::new(3, vec![1, 1, -2]).unwrap());
        assert_eq!(d.arc_count(), 6);
        assert_eq!((d.n_plus(), d.n_minus()), (2, 1));
        let mut seen = vec![0; d.arc_count()];
        for c in d.crossings() {
            for a in c.arcs {
                seen[a] += 1;
            }
        }
        assert!(seen.iter().all(|&k| k == 2));
        // free strands stay as loops
        let d = Diagram::from_braid(&BraidWord::new(3, vec![]).unwrap());
        assert_eq!((d.arc_count(), d.crossing_count()), (3, 0));
    }
}
