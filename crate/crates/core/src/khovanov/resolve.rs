//! Kauffman states: circles of a smoothing and their position in the annulus.

use super::Diagram;
use crate::cube::Vertex;
use crate::error::KhovanovError;

/// The circles of one complete smoothing. Circles are sorted by their
/// smallest arc. For braid closures, `essential[c]` says whether circle `c`
/// winds around the annulus and `radial_rank[c]` counts the essential circles
/// inside it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolvedState {
    pub vertex: Vertex,
    pub circles: Vec<Vec<usize>>,
    pub essential: Vec<bool>,
    pub radial_rank: Vec<Option<usize>>,
    circle_of_arc: Vec<usize>,
}

impl ResolvedState {
    pub fn circle_of_arc(&self, arc: usize) -> usize {
        self.circle_of_arc[arc]
    }

    pub fn circle_count(&self) -> usize {
        self.circles.len()
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Smooths crossing `b` according to bit `b` of `u`.
pub fn resolve(d: &Diagram, u: Vertex) -> Result<ResolvedState, KhovanovError> {
    let n = d.crossing_count();
    if n < usize::BITS as usize && u >> n != 0 {
        return Err(KhovanovError::MalformedDiagram(format!("state {u:#b} has more than {n} coordinates")));
    }
    let mut parent: Vec<usize> = (0..d.arc_count()).collect();
    for (b, c) in d.crossings().iter().enumerate() {
        let [w, x, y, z] = c.arcs;
        let pairs = if u >> b & 1 == 0 { [(w, x), (y, z)] } else { [(w, z), (x, y)] };
        for (p, q) in pairs {
            let (rp, rq) = (find(&mut parent, p), find(&mut parent, q));
            parent[rp.max(rq)] = rp.min(rq);
        }
    }
    // roots are the smallest arcs of their circles, so circle order is root order
    let mut circle_of_arc = vec![0; d.arc_count()];
    let mut circles: Vec<Vec<usize>> = Vec::new();
    let mut root_index = vec![usize::MAX; d.arc_count()];
    for a in 0..d.arc_count() {
        let r = find(&mut parent, a);
        if root_index[r] == usize::MAX {
            root_index[r] = circles.len();
            circles.push(Vec::new());
        }
        circle_of_arc[a] = root_index[r];
        circles[root_index[r]].push(a);
    }

    let k = circles.len();
    let (essential, radial_rank) = match d.seam() {
        None => (vec![false; k], vec![None; k]),
        Some(seam) => {
            let mut crossings_of: Vec<Vec<usize>> = vec![Vec::new(); k];
            for (p, &a) in seam.iter().enumerate() {
                crossings_of[circle_of_arc[a]].push(p);
            }
            let essential: Vec<bool> = crossings_of.iter().map(|s| s.len() % 2 == 1).collect();
            // C lies outside an essential C' iff an odd number of points of
            // C' sit below the innermost point of C on the seam
            let rank = (0..k)
                .map(|c| {
                    essential[c].then(|| {
                        let lowest = crossings_of[c][0];
                        (0..k)
                            .filter(|&o| o != c && essential[o])
                            .filter(|&o| crossings_of[o].iter().filter(|&&p| p < lowest).count() % 2 == 1)
                            .count()
                    })
                })
                .collect();
            (essential, rank)
        }
    };
    Ok(ResolvedState { vertex: u, circles, essential, radial_rank, circle_of_arc })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::khovanov::BraidWord;

    fn braid(m: usize, letters: &[i32]) -> Diagram {
        Diagram::from_braid(&BraidWord::new(m, letters.to_vec()).unwrap())
    }

    #[test]
    fn empty_braid_on_two_strands() {
        let s = resolve(&braid(2, &[]), 0).unwrap();
        assert_eq!(s.circle_count(), 2);
        assert_eq!(s.essential, vec![true, true]);
        assert_eq!(s.radial_rank, vec![Some(0), Some(1)]);
    }

    #[test]
    fn one_crossing_smoothings() {
        let d = braid(2, &[1]);
        let s0 = resolve(&d, 0).unwrap();
        assert_eq!((s0.circle_count(), s0.essential.clone()), (2, vec![true, true]));
        let s1 = resolve(&d, 1).unwrap();
        assert_eq!((s1.circle_count(), s1.essential.clone()), (1, vec![false]));
        assert_eq!(s1.radial_rank, vec![None]);
        assert!(resolve(&d, 2).is_err());
    }
}
