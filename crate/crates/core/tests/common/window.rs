//! Element-level oracle: materialize a correspondence on a bounded window of
//! group elements and work with plain sets of arrows.

use std::collections::BTreeMap;

use burnside_core::burnside::{ArrowOrbit, Correspondence, GroupId};

pub type Element = (usize, i64);

/// Arrows `(source element, target element)` with both ends inside the window.
#[derive(Clone, Debug)]
pub struct WindowSpan {
    pub group: GroupId,
    pub radius: i64,
    pub arrows: Vec<(Element, Element)>,
}

/// Group elements visible in the window: all of them for finite groups.
pub fn window(group: GroupId, radius: i64) -> Vec<i64> {
    match group {
        GroupId::Trivial => vec![0],
        GroupId::Cyclic { order } => (0..order as i64).collect(),
        GroupId::InfiniteCyclic => (-radius..=radius).collect(),
    }
}

fn in_window(group: GroupId, radius: i64, g: i64) -> bool {
    group != GroupId::InfiniteCyclic || g.abs() <= radius
}

fn act(group: GroupId, g: i64, h: i64) -> i64 {
    match group {
        GroupId::Trivial => 0,
        GroupId::InfiniteCyclic => g + h,
        GroupId::Cyclic { order } => (g + h).rem_euclid(order as i64),
    }
}

pub fn expand(c: &Correspondence, radius: i64) -> WindowSpan {
    let group = c.group();
    let mut arrows = Vec::new();
    for a in c.arrows() {
        for g in window(group, radius) {
            let t = act(group, g, a.offset);
            if in_window(group, radius, t) {
                arrows.push(((a.s, g), (a.t, t)));
            }
        }
    }
    WindowSpan { group, radius, arrows }
}

/// Set-level fiber product: pairs `(a, b)` with `t(a) = s(b)`.
pub fn fiber_product(f: &WindowSpan, h: &WindowSpan) -> WindowSpan {
    let mut arrows = Vec::new();
    for (s, m) in &f.arrows {
        for (m2, t) in &h.arrows {
            if m == m2 {
                arrows.push((*s, *t));
            }
        }
    }
    WindowSpan { group: f.group, radius: f.radius, arrows }
}

pub fn reverse(f: &WindowSpan) -> WindowSpan {
    WindowSpan { arrows: f.arrows.iter().map(|(s, t)| (*t, *s)).collect(), ..f.clone() }
}

/// Orbit presentation read off from the arrows whose source has offset 0.
pub fn renormalize(f: &WindowSpan) -> BTreeMap<ArrowOrbit, usize> {
    let mut m = BTreeMap::new();
    for ((s, g), (t, h)) in &f.arrows {
        if *g == 0 {
            *m.entry(ArrowOrbit::new(*s, *t, *h)).or_default() += 1;
        }
    }
    m
}

/// `|s⁻¹(x)|` for every source element in the window.
pub fn source_fibers(f: &WindowSpan) -> BTreeMap<Element, usize> {
    let mut m = BTreeMap::new();
    for (s, _) in &f.arrows {
        *m.entry(*s).or_default() += 1;
    }
    m
}

pub fn target_fibers(f: &WindowSpan) -> BTreeMap<Element, usize> {
    source_fibers(&reverse(f))
}
