mod common;

use num_bigint::BigInt;
use proptest::prelude::*;
use twobridge::complexity::CertificateStatus;
use twobridge::{
    assemble_stable_map, assemble_with, bigon_reduce, build_plat_diagram, certify_smc,
    export_json, fiber_census, fraction_of, fraction_of_in, import_json, outer_smooth,
    parse_conway, schubert_equivalent, smc_lower_bound_from_volume, strip_decompose, transform,
    weighted_sum, ConwayWord, EquivalencePolicy, Granularity, Transform, Variant, V_OCT,
};

fn entry() -> impl Strategy<Value = i64> {
    prop_oneof![1i64..=9, -9i64..=-1]
}

fn any_word() -> impl Strategy<Value = ConwayWord> {
    (0usize..=4)
        .prop_flat_map(|m| proptest::collection::vec(entry(), 2 * m + 1))
        .prop_map(|e| ConwayWord::new(e).unwrap())
}

/// Words with every `b_j` even and `m >= 1`, presenting a genuine link
/// (`p >= 2`).
fn even_b_word() -> impl Strategy<Value = ConwayWord> {
    (1usize..=4)
        .prop_flat_map(|m| {
            let a = proptest::collection::vec(entry(), m + 1);
            let b = proptest::collection::vec(prop_oneof![1i64..=4, -4i64..=-1], m);
            (a, b)
        })
        .prop_map(|(a, b)| {
            let mut e = Vec::with_capacity(a.len() + b.len());
            for (i, x) in a.iter().enumerate() {
                e.push(*x);
                if let Some(y) = b.get(i) {
                    e.push(2 * y);
                }
            }
            ConwayWord::new(e).unwrap()
        })
        .prop_filter("degenerate fraction", |w| fraction_of(w).is_ok())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn display_parse_roundtrip(w in any_word()) {
        prop_assert_eq!(parse_conway(&w.to_string()).unwrap(), w);
    }

    #[test]
    fn machine_and_big_integers_agree(w in any_word()) {
        let small = fraction_of(&w);
        let big = fraction_of_in::<BigInt>(&w);
        prop_assert_eq!(small.is_ok(), big.is_ok());
        if let (Ok(s), Ok(b)) = (small, big) {
            prop_assert_eq!(BigInt::from(*s.p()), b.p().clone());
            prop_assert_eq!(BigInt::from(*s.q()), b.q().clone());
        }
    }

    #[test]
    fn fraction_matches_goeritz_and_strands(w in any_word()) {
        let det = common::goeritz_determinant(w.entries());
        match fraction_of(&w) {
            Ok(f) => {
                prop_assert_eq!(i128::from(*f.p()), det);
                prop_assert_eq!(f.component_count() as usize, common::plat_components(w.entries()));
            }
            Err(_) => prop_assert!(det < 2),
        }
    }

    #[test]
    fn reversal_preserves_the_link(w in any_word()) {
        if let Ok(f) = fraction_of(&w) {
            let r = fraction_of(&transform(&w, Transform::Reverse)).unwrap();
            prop_assert!(schubert_equivalent(&f, &r, EquivalencePolicy::STRICT));
        }
    }

    #[test]
    fn mirror_is_equivalent_only_up_to_mirror(w in any_word()) {
        if let Ok(f) = fraction_of(&w) {
            let r = fraction_of(&transform(&w, Transform::Mirror)).unwrap();
            prop_assert!(schubert_equivalent(&f, &r, EquivalencePolicy::UP_TO_MIRROR));
            let amphichiral = common::orbit_brute(*f.p(), *f.q(), false).contains(&(*f.p() - *f.q()));
            prop_assert_eq!(schubert_equivalent(&f, &r, EquivalencePolicy::STRICT), amphichiral);
        }
    }

    #[test]
    fn smoothing_keeps_vertical_crossings(w in any_word()) {
        if let Ok(c) = outer_smooth(&build_plat_diagram(&w)) {
            prop_assert_eq!(c.double_points() as u64, w.sum_abs_b());
            prop_assert_eq!(c.components(), 1);
        }
    }

    #[test]
    fn bigon_reduction_halves_vertical_crossings(w in even_b_word()) {
        let c = bigon_reduce(&outer_smooth(&build_plat_diagram(&w)).unwrap()).unwrap();
        prop_assert_eq!(c.double_points(), 0);
        prop_assert_eq!(2 * c.tangencies() as u64, w.sum_abs_b());
        prop_assert_eq!(c.components(), 1);
    }

    #[test]
    fn type2_strips_count_vertical_twists(w in even_b_word()) {
        let c = outer_smooth(&build_plat_diagram(&w)).unwrap();
        let d = strip_decompose(&c, Variant::F2).unwrap();
        prop_assert_eq!(d.report().type2_count, w.m());
        prop_assert_eq!(d.report().curve_points_per_separator, 2);
    }

    #[test]
    fn censuses_match_the_counts(w in even_b_word()) {
        let m = w.m() as u64;
        let f2 = assemble_stable_map(&w, Variant::F2).unwrap();
        prop_assert_eq!((f2.census().ii2, f2.census().ii3), (2 * m, 0));
        prop_assert_eq!(weighted_sum(&f2.census()), 2 * m);
        let f3 = assemble_stable_map(&w, Variant::F3).unwrap();
        prop_assert_eq!((f3.census().ii2, f3.census().ii3), (0, w.sum_abs_b() / 2));
        prop_assert!(weighted_sum(&f3.census()) >= 2 * m);
        for model in [&f2, &f3] {
            prop_assert_eq!(fiber_census(model), model.census());
            prop_assert_eq!(
                model.census().definite_components as usize,
                common::plat_components(w.entries())
            );
        }
    }

    #[test]
    fn every_slice_is_a_four_leaf_tree(w in even_b_word(), f3 in any::<bool>()) {
        let variant = if f3 { Variant::F3 } else { Variant::F2 };
        let model = assemble_stable_map(&w, variant).unwrap();
        for block in model.blocks() {
            for (_, s) in block.slices() {
                prop_assert!(s.validate().is_ok());
                prop_assert_eq!(s.leaf_count() as i64 - s.trivalent_count() as i64, 2);
            }
        }
        for pair in model.blocks().windows(2) {
            prop_assert_eq!(pair[0].exit(), pair[1].entry());
        }
    }

    #[test]
    fn granularity_does_not_change_the_census(w in even_b_word(), k in 1u32..4) {
        let base = assemble_stable_map(&w, Variant::F2).unwrap().census();
        for g in [Granularity::PerRegion, Granularity::Subdivided(k)] {
            prop_assert_eq!(assemble_with(&w, Variant::F2, g).unwrap().census(), base);
        }
    }

    #[test]
    fn json_roundtrip(w in even_b_word(), f3 in any::<bool>()) {
        let variant = if f3 { Variant::F3 } else { Variant::F2 };
        let model = assemble_stable_map(&w, variant).unwrap();
        let text = export_json(&model);
        prop_assert_eq!(import_json(&text).unwrap(), model);
    }

    #[test]
    fn lower_bound_is_a_ceiling(v in 1e-3f64..200.0) {
        let lb = smc_lower_bound_from_volume(v).unwrap() as f64;
        prop_assert!(lb * 2.0 * V_OCT >= v);
        prop_assert!((lb - 1.0) * 2.0 * V_OCT < v);
    }

    #[test]
    fn certification_is_monotone(w in even_b_word(), v1 in 0.1f64..60.0, v2 in 0.1f64..60.0) {
        let (lo, hi) = if v1 <= v2 { (v1, v2) } else { (v2, v1) };
        let c_lo = certify_smc(&w, lo).unwrap();
        let c_hi = certify_smc(&w, hi).unwrap();
        prop_assert!(c_lo.smc_lower <= c_hi.smc_lower);
        if c_lo.status == CertificateStatus::Certified {
            prop_assert_eq!(c_hi.status, CertificateStatus::Certified);
        }
    }
}
