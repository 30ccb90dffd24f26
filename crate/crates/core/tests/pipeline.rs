use num_bigint::BigInt;
use twobridge::complexity::{certify_smc, CertificateStatus};
use twobridge::{
    assemble_stable_map, bigon_reduce, build_plat_diagram, crossing_census, fraction_of,
    fraction_of_in, outer_smooth, render_svg, smc_lower_bound_from_volume, strip_decompose,
    BigFraction, Certificate32, ConwayWord, StripKind, Variant,
};

fn w(e: &[i64]) -> ConwayWord {
    ConwayWord::new(e.to_vec()).unwrap()
}

#[test]
fn three_two_three_end_to_end() {
    let word = w(&[3, 2, 3]);
    let diagram = build_plat_diagram(&word);
    let census = crossing_census(&diagram);
    assert_eq!((census.total, census.sum_abs_a, census.sum_abs_b), (8, 6, 2));

    let curve = outer_smooth(&diagram).unwrap();
    assert_eq!(curve.double_points(), 2);
    assert_eq!(curve.removed_outer_circles(), 1);

    let d = strip_decompose(&curve, Variant::F2).unwrap();
    assert_eq!(d.report().type2_count, 1);
    assert_eq!(d.kinds().first(), Some(&StripKind::Type1));
    assert_eq!(d.kinds().last(), Some(&StripKind::Type4));

    let model = assemble_stable_map(&word, Variant::F2).unwrap();
    assert_eq!((model.census().ii2, model.census().ii3), (2, 0));
    assert_eq!(model.census().definite_components, 2);

    let reduced = bigon_reduce(&curve).unwrap();
    assert_eq!(reduced.tangencies(), 1);
    let model = assemble_stable_map(&word, Variant::F3).unwrap();
    assert_eq!((model.census().ii2, model.census().ii3), (0, 1));

    assert!(render_svg(&model).contains("<title>f3 model of C(3,2,3)</title>"));
}

#[test]
fn whitehead_and_figure_eight() {
    let model = assemble_stable_map(&w(&[2, -2, -2]), Variant::F3).unwrap();
    assert_eq!(model.fraction().to_string(), "8/5");
    assert_eq!(model.trace().component_count(), 2);
    let model = assemble_stable_map(&w(&[-1, -2, 2]), Variant::F2).unwrap();
    assert_eq!(model.fraction().to_string(), "5/2");
    assert_eq!(model.trace().component_count(), 1);
}

#[test]
fn scalar_types_agree() {
    let word = w(&[7, -4, 9, 6, 8, -10, 3, 2, 5]);
    let small = fraction_of(&word).unwrap();
    let big: BigFraction = fraction_of_in::<BigInt>(&word).unwrap();
    let wide = fraction_of_in::<i128>(&word).unwrap();
    assert_eq!(big.to_string(), small.to_string());
    assert_eq!(wide.to_string(), small.to_string());

    let c: Certificate32 = certify_smc(&w(&[2, 2, 2]), 14.0f32).unwrap();
    assert_eq!(c.status, CertificateStatus::Certified);
    assert_eq!(smc_lower_bound_from_volume(14.0f32).unwrap(), 2);
}

#[test]
fn big_integers_go_past_i64() {
    let word = ConwayWord::new(vec![1_000_000; 7]).unwrap();
    let big = fraction_of_in::<BigInt>(&word).unwrap();
    assert!(big.p() > &BigInt::from(i64::MAX));
}
