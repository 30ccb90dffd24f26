//! Two-bridge links, their immersed curves, and stable maps of their
//! exteriors into the plane with few codimension-two singular fibers.
//!
//! The pipeline runs
//! [`ConwayWord`] → [`PlatDiagram`] → [`ImmersedCurve`] →
//! [`StripDecomposition`] → [`StableMapModel`], and [`complexity`] turns the
//! resulting census into stable map complexity bounds.
//!
//! Classification arithmetic is generic over [`scalar::ExactInt`] and volume
//! arithmetic over [`scalar::Real`]; the aliases below fix the usual choices.

pub mod complexity;
pub mod conway;
pub mod curve;
pub mod io;
pub mod morse;
pub mod scalar;

pub use complexity::{
    certify_smc, certify_smc_with_margin, complexity_bounds, ingest_volume_table,
    smc_lower_bound_from_volume, smc_upper_bound, volume_upper_bound, weighted_sum,
    CertificateStatus, ComplexityError, UpperBound, DEFAULT_MARGIN, V_OCT,
};
pub use conway::{
    component_count, continued_fraction, even_b_normalize, fraction_of, fraction_of_in,
    parse_conway, parse_fraction, schubert_equivalent, word_for_fraction, transform, twist_number, ConwayError, ConwayWord,
    EquivalencePolicy, SchubertFraction, SearchBound, Transform,
};
pub use curve::{
    bigon_reduce, build_plat_diagram, crossing_census, decompose_from_kinds, outer_smooth,
    strip_decompose, strip_decompose_with, CurveError, Granularity, ImmersedCurve, PlatDiagram,
    StripDecomposition, StripKind, Tile, Variant,
};
pub use io::{export_json, import_json, render_svg, IoError, ModelDocument, SvgSubject};
pub use morse::{
    assemble_stable_map, assemble_with, fiber_census, trace_definite_folds, BlockMap,
    CrossSection, MorseError, SingularFiberCensus, StableMapModel,
};

/// Schubert fraction over machine integers.
pub type Fraction = conway::SchubertFraction<i64>;
/// Schubert fraction over arbitrary precision integers.
pub type BigFraction = conway::SchubertFraction<num_bigint::BigInt>;
/// Certificate with double precision volumes.
pub type Certificate = complexity::Certificate<f64>;
/// Certificate with single precision volumes.
pub type Certificate32 = complexity::Certificate<f32>;
pub type Bounds = complexity::ComplexityBounds<f64>;
pub type VolumeRecord = complexity::VolumeRecord<f64>;
