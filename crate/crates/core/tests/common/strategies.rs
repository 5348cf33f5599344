use burnside_core::burnside::{ArrowOrbit, Correspondence, FreeGSet, GroupId};
use proptest::prelude::*;

pub fn group() -> impl Strategy<Value = GroupId> {
    prop_oneof![
        Just(GroupId::Trivial),
        Just(GroupId::InfiniteCyclic),
        (2u64..=4).prop_map(|order| GroupId::Cyclic { order }),
    ]
}

pub fn gset(group: GroupId, prefix: &'static str, max: usize) -> impl Strategy<Value = FreeGSet> {
    (0..=max).prop_map(move |n| FreeGSet::numbered(group, prefix, n))
}

/// Random correspondence between fixed sets, offsets in `[-2, 2]`.
pub fn correspondence(src: FreeGSet, tgt: FreeGSet) -> impl Strategy<Value = Correspondence> {
    let (n, m) = (src.len(), tgt.len());
    let arrows = if n == 0 || m == 0 {
        Just(Vec::new()).boxed()
    } else {
        prop::collection::vec((0..n, 0..m, -2i64..=2), 0..6)
            .prop_map(|v| v.into_iter().map(|(s, t, o)| ArrowOrbit::new(s, t, o)).collect())
            .boxed()
    };
    arrows.prop_map(move |a| Correspondence::new(src.clone(), tgt.clone(), a).unwrap())
}

/// A chain `X0 -> X1 -> ... -> Xk` of composable correspondences.
pub fn chain(k: usize) -> impl Strategy<Value = Vec<Correspondence>> {
    group()
        .prop_flat_map(move |g| {
            let names = ["x", "y", "z", "w", "v"];
            prop::collection::vec(0usize..=3, k + 1).prop_map(move |sizes| {
                sizes.iter().enumerate().map(|(i, &n)| FreeGSet::numbered(g, names[i], n)).collect::<Vec<_>>()
            })
        })
        .prop_flat_map(move |sets| {
            (0..k).map(|i| correspondence(sets[i].clone(), sets[i + 1].clone()).boxed()).collect::<Vec<_>>()
        })
}

/// A chain over the infinite cyclic group.
pub fn z_chain(k: usize) -> impl Strategy<Value = Vec<Correspondence>> {
    chain(k).prop_filter("infinite cyclic", |v| v[0].group() == GroupId::InfiniteCyclic)
}
