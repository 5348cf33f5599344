mod common;

use burnside_core::algebra::{complexes_isomorphic, homology, Elem, GradedChainComplex, HomologySummary, RingId};
use burnside_core::burnside::{linearize, GroupId};
use burnside_core::cube::{
    dual_cube, hocolim_complex, nat_transformation_to_chain_map, quotient_cube, totalize, validate_cube,
    CubeNaturalTransformation,
};
use burnside_core::random::{corrupted_cube, random_valid_cube, Corruption};
use burnside_core::CubeViolation;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn group_of(k: u8) -> GroupId {
    match k % 3 {
        0 => GroupId::Trivial,
        1 => GroupId::InfiniteCyclic,
        _ => GroupId::Cyclic { order: 3 },
    }
}

/// `q` is sent to the generator, or to 1 over the integers.
fn q_image(r: RingId) -> Elem {
    r.q_pow(1).unwrap_or_else(|| r.one())
}

/// Homology summaries that can be compared; Laurent complexes are looked at
/// through two specializations.
fn summaries(c: &GradedChainComplex) -> Vec<HomologySummary> {
    match c.ring() {
        RingId::LaurentIntegers => [RingId::Integers, RingId::CyclicGroupRing { order: 2 }]
            .into_iter()
            .map(|r| homology(&c.specialize(r, &q_image(r)).unwrap()).unwrap())
            .collect(),
        _ => vec![homology(c).unwrap()],
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_cubes_are_valid_and_totalize(seed in any::<u64>(), n in 0usize..=4, g in any::<u8>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_valid_cube(&mut rng, n, group_of(g), 4);
        prop_assert_eq!(validate_cube(&f), Ok(()));
        let c = totalize(&f).unwrap();
        prop_assert!(c.check_d_squared().is_ok());
        prop_assert_eq!(c.total_rank(), f.vertices().iter().map(|v| v.len()).sum::<usize>());
    }

    #[test]
    fn face_composites_have_equal_linearizations(seed in any::<u64>(), g in any::<u8>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_valid_cube(&mut rng, 3, group_of(g), 4);
        for &(u, i, j) in f.faces().keys() {
            let (a, b) = f.face_composites(u, i, j);
            prop_assert_eq!(linearize(&a), linearize(&b));
        }
    }

    #[test]
    fn corruptions_have_the_right_class(seed in any::<u64>(), g in any::<u8>(), kind in 0u8..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let kind = [Corruption::LinearizationMismatch, Corruption::BadFaceEndpoints, Corruption::IncoherentThreeFace][kind as usize];
        let f = corrupted_cube(&mut rng, group_of(g), kind);
        let got = validate_cube(&f);
        let ok = match kind {
            Corruption::LinearizationMismatch => matches!(got, Err(CubeViolation::LinearizationMismatch { .. })),
            Corruption::BadFaceEndpoints => matches!(got, Err(CubeViolation::BadFaceEndpoints { .. })),
            Corruption::IncoherentThreeFace => matches!(got, Err(CubeViolation::IncoherentThreeFace { .. })),
        };
        prop_assert!(ok, "{:?} gave {:?}", kind, got);
        prop_assert!(totalize(&f).is_err());
    }

    #[test]
    fn hocolim_matches_totalization(seed in any::<u64>(), n in 0usize..=2, g in any::<u8>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_valid_cube(&mut rng, n, group_of(g), 3);
        let h = hocolim_complex(&f).unwrap();
        prop_assert!(h.check_d_squared().is_ok());
        prop_assert_eq!(summaries(&h), summaries(&totalize(&f).unwrap()));
    }

    #[test]
    fn dual_cube_totalizes_to_the_dual_complex(seed in any::<u64>(), n in 0usize..=3, g in any::<u8>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_valid_cube(&mut rng, n, group_of(g), 3);
        let d = dual_cube(&f).unwrap();
        prop_assert_eq!(validate_cube(&d), Ok(()));
        let lhs = totalize(&f).unwrap().finitely_supported_dual_with(n as i64, true);
        let rhs = totalize(&d).unwrap();
        prop_assert!(complexes_isomorphic(&lhs, &rhs).is_some());
        prop_assert_eq!(dual_cube(&d).unwrap(), f);
    }

    #[test]
    fn quotient_commutes_with_totalization(seed in any::<u64>(), n in 0usize..=3, r in 1u64..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_valid_cube(&mut rng, n, GroupId::InfiniteCyclic, 4);
        let q = quotient_cube(&f, r).unwrap();
        prop_assert_eq!(validate_cube(&q), Ok(()));
        let ring = GroupId::cyclic(r).unwrap().ring();
        let lhs = totalize(&q).unwrap();
        let rhs = totalize(&f).unwrap().specialize(ring, &q_image(ring)).unwrap();
        prop_assert!(lhs.entries_equal(&rhs));
    }

    #[test]
    fn natural_transformations_give_chain_maps(seed in any::<u64>(), n in 0usize..=2, g in any::<u8>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let eta = CubeNaturalTransformation::new(random_valid_cube(&mut rng, n + 1, group_of(g), 3)).unwrap();
        prop_assert!(nat_transformation_to_chain_map(&eta).unwrap().is_chain_map());
    }
}

#[test]
fn corruptions_are_rejected_by_validation_in_every_group() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for g in 0..3 {
        for _ in 0..4 {
            let f = corrupted_cube(&mut rng, group_of(g), Corruption::IncoherentThreeFace);
            assert!(matches!(validate_cube(&f), Err(CubeViolation::IncoherentThreeFace { .. })));
            assert!(hocolim_complex(&f).is_err());
        }
    }
}
