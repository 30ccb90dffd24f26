//! The plat diagram of a Conway word, the immersed curve obtained from it by
//! smoothing the outer twists, bigon reduction, and the slicing of the
//! ambient rectangle into strips.
//!
//! The diagram is drawn as four horizontal strands, numbered 1 (top) to 4
//! (bottom), closed at each end by a pair of nested caps joining strands
//! (1, 4) and (2, 3). Twist region `a_i` lives between strands 3 and 4, next
//! to the unbounded region; twist region `b_j` lives between strands 2 and 3.

use std::fmt;
use std::ops::Range;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::conway::ConwayWord;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("smoothing left {components} closed curves after removing the outer circle (expected 1)")]
    SmoothingDisconnect { components: usize },
    #[error("vertical twist b{index} = {b} is odd; crossings cannot be paired into tangencies")]
    OddTwist { index: usize, b: i64 },
    #[error("curve form {form:?} cannot be sliced for variant {variant}")]
    VariantMismatch { form: CurveForm, variant: Variant },
    #[error("strip {strip} does not match any catalogued shape: {reason}")]
    UnsliceableShape { strip: usize, reason: String },
}

/// The two constructions: `F2` has only II² fibers, `F3` only II³ fibers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    F2,
    F3,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::F2 => "f2",
            Variant::F3 => "f3",
        })
    }
}

impl std::str::FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "f2" | "F2" => Ok(Variant::F2),
            "f3" | "F3" => Ok(Variant::F3),
            other => Err(format!("unknown variant {other:?} (expected f2 or f3)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RegionKind {
    /// Horizontal twist `a_i`.
    Horizontal,
    /// Vertical twist `b_j`.
    Vertical,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistRegion {
    pub kind: RegionKind,
    /// Index of the entry in the Conway word.
    pub entry: usize,
    /// Signed twist count.
    pub twists: i64,
    /// Columns occupied by the region's crossings.
    pub columns: Range<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Crossing {
    pub column: usize,
    /// Index into [`PlatDiagram::regions`].
    pub region: usize,
    /// Strand positions involved, upper first.
    pub strands: (u8, u8),
    /// Braid exponent of the crossing. Positive `a_i` and negative `b_j`
    /// draw the same crossing picture, so `a_i` contributes `sign(a_i)` and
    /// `b_j` contributes `-sign(b_j)`.
    pub sign: i8,
    pub outer_adjacent: bool,
}

/// Nested end caps shared by both ends of the diagram.
pub const CAP_PAIRS: [(u8, u8); 2] = [(1, 4), (2, 3)];

const A_STRANDS: (u8, u8) = (3, 4);
const B_STRANDS: (u8, u8) = (2, 3);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlatDiagram {
    word: ConwayWord,
    regions: Vec<TwistRegion>,
    crossings: Vec<Crossing>,
}

impl PlatDiagram {
    pub fn word(&self) -> &ConwayWord {
        &self.word
    }

    pub fn regions(&self) -> &[TwistRegion] {
        &self.regions
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    /// Abstract rectangle `E`: one column per crossing plus a cap column at
    /// each end, and five horizontal bands around the four strands.
    pub fn rectangle(&self) -> (usize, usize) {
        (self.crossings.len() + 2, 5)
    }
}

pub fn build_plat_diagram(word: &ConwayWord) -> PlatDiagram {
    let mut regions = Vec::with_capacity(word.len());
    let mut crossings = Vec::with_capacity(word.weight() as usize);
    let mut column = 0;
    for (entry, &twists) in word.entries().iter().enumerate() {
        let (kind, strands, sign) = if entry % 2 == 0 {
            (RegionKind::Horizontal, A_STRANDS, twists.signum() as i8)
        } else {
            (RegionKind::Vertical, B_STRANDS, -twists.signum() as i8)
        };
        let start = column;
        for _ in 0..twists.unsigned_abs() {
            crossings.push(Crossing {
                column,
                region: regions.len(),
                strands,
                sign,
                outer_adjacent: strands.0 == 1 || strands.1 == 4,
            });
            column += 1;
        }
        regions.push(TwistRegion { kind, entry, twists, columns: start..column });
    }
    PlatDiagram { word: word.clone(), regions, crossings }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossingCensus {
    pub total: u64,
    pub per_region: Vec<u64>,
    pub sum_abs_a: u64,
    pub sum_abs_b: u64,
    /// `sum |b_j| / 2`, present only when every `b_j` is even.
    pub bigon_pairs: Option<u64>,
}

pub fn crossing_census(d: &PlatDiagram) -> CrossingCensus {
    let per_region: Vec<u64> = d.regions.iter().map(|r| r.columns.len() as u64).collect();
    let sum_abs_a = d.word.sum_abs_a();
    let sum_abs_b = d.word.sum_abs_b();
    CrossingCensus {
        total: d.crossings.len() as u64,
        per_region,
        sum_abs_a,
        sum_abs_b,
        bigon_pairs: d.word.all_b_even().then_some(sum_abs_b / 2),
    }
}

/// One column of a two-strand curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Tile {
    LeftCap,
    /// Strands run parallel; marks a smoothed crossing of `a_i`.
    Pass { entry: usize },
    /// Transverse double point coming from `b_j`.
    Crossing { entry: usize },
    /// Self-tangency replacing two consecutive crossings of `b_j`.
    Tangency { entry: usize },
    RightCap,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CurveForm {
    /// Straight out of [`outer_smooth`]: double points, no tangencies.
    Immersed,
    /// After [`bigon_reduce`]: tangencies, no double points.
    Reduced,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImmersedCurve {
    word: ConwayWord,
    tiles: Vec<Tile>,
    form: CurveForm,
    removed_outer_circles: usize,
}

impl ImmersedCurve {
    pub fn word(&self) -> &ConwayWord {
        &self.word
    }

    pub fn tiles(&self) -> &[Tile] {
        &self.tiles
    }

    pub fn form(&self) -> CurveForm {
        self.form
    }

    pub fn double_points(&self) -> usize {
        self.tiles.iter().filter(|t| matches!(t, Tile::Crossing { .. })).count()
    }

    pub fn tangencies(&self) -> usize {
        self.tiles.iter().filter(|t| matches!(t, Tile::Tangency { .. })).count()
    }

    pub fn removed_outer_circles(&self) -> usize {
        self.removed_outer_circles
    }

    /// Closed components of the curve, traced through its tiles.
    pub fn components(&self) -> usize {
        // Two strands; crossings and tangencies permute nothing topologically
        // relevant once both ends are capped, but trace anyway.
        let n = self.tiles.len();
        let mut uf = UnionFind::new(2 * (n + 1));
        let node = |boundary: usize, strand: usize| 2 * boundary + strand;
        for (col, tile) in self.tiles.iter().enumerate() {
            match tile {
                Tile::LeftCap => uf.union(node(col + 1, 0), node(col + 1, 1)),
                Tile::RightCap => uf.union(node(col, 0), node(col, 1)),
                Tile::Pass { .. } | Tile::Tangency { .. } => {
                    uf.union(node(col, 0), node(col + 1, 0));
                    uf.union(node(col, 1), node(col + 1, 1));
                }
                Tile::Crossing { .. } => {
                    uf.union(node(col, 0), node(col + 1, 1));
                    uf.union(node(col, 1), node(col + 1, 0));
                }
            }
        }
        let first = self.tiles.iter().position(|t| *t == Tile::LeftCap).map_or(0, |c| c + 1);
        let last = self.tiles.iter().position(|t| *t == Tile::RightCap).unwrap_or(n);
        let mut roots: Vec<usize> = (first..=last)
            .flat_map(|b| [node(b, 0), node(b, 1)])
            .map(|x| uf.find(x))
            .collect();
        roots.sort_unstable();
        roots.dedup();
        roots.len()
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Smooth every crossing touching the unbounded region along the strands,
/// drop the outermost circle, and forget crossing information.
pub fn outer_smooth(d: &PlatDiagram) -> Result<ImmersedCurve, CurveError> {
    let cols = d.crossings.len();
    // Node (boundary x, strand position s): the piece of strand s just right
    // of boundary x. Boundaries 0..=cols.
    let node = |x: usize, s: u8| 4 * x + (s as usize - 1);
    let mut uf = UnionFind::new(4 * (cols + 1));
    for pair in CAP_PAIRS {
        uf.union(node(0, pair.0), node(0, pair.1));
        uf.union(node(cols, pair.0), node(cols, pair.1));
    }
    for c in &d.crossings {
        for s in 1..=4u8 {
            let target = if c.outer_adjacent || (s != c.strands.0 && s != c.strands.1) {
                s
            } else if s == c.strands.0 {
                c.strands.1
            } else {
                c.strands.0
            };
            uf.union(node(c.column, s), node(c.column + 1, target));
        }
    }

    let outer = uf.find(node(0, 1));
    // The outermost circle must be free of surviving double points.
    for c in d.crossings.iter().filter(|c| !c.outer_adjacent) {
        if uf.find(node(c.column, c.strands.0)) == outer || uf.find(node(c.column, c.strands.1)) == outer {
            return Err(CurveError::SmoothingDisconnect { components: 0 });
        }
    }
    let mut rest: Vec<usize> = (0..4 * (cols + 1)).map(|i| uf.find(i)).filter(|&r| r != outer).collect();
    rest.sort_unstable();
    rest.dedup();
    if rest.len() != 1 {
        return Err(CurveError::SmoothingDisconnect { components: rest.len() });
    }

    let mut tiles = Vec::with_capacity(cols + 2);
    tiles.push(Tile::LeftCap);
    for c in &d.crossings {
        let entry = d.regions[c.region].entry;
        tiles.push(if c.outer_adjacent {
            Tile::Pass { entry }
        } else {
            Tile::Crossing { entry }
        });
    }
    tiles.push(Tile::RightCap);
    Ok(ImmersedCurve {
        word: d.word.clone(),
        tiles,
        form: CurveForm::Immersed,
        removed_outer_circles: 1,
    })
}

/// Replace each consecutive pair of double points in a vertical twist by a
/// single self-tangency.
pub fn bigon_reduce(c: &ImmersedCurve) -> Result<ImmersedCurve, CurveError> {
    if c.form != CurveForm::Immersed {
        return Err(CurveError::VariantMismatch { form: c.form, variant: Variant::F3 });
    }
    for (j, b) in c.word.b().enumerate() {
        if b % 2 != 0 {
            return Err(CurveError::OddTwist { index: j + 1, b });
        }
    }
    let mut tiles = Vec::with_capacity(c.tiles.len());
    let mut pending = false;
    for &t in &c.tiles {
        match t {
            Tile::Crossing { entry } => {
                if pending {
                    tiles.push(Tile::Tangency { entry });
                }
                pending = !pending;
            }
            other => tiles.push(other),
        }
    }
    Ok(ImmersedCurve {
        word: c.word.clone(),
        tiles,
        form: CurveForm::Reduced,
        removed_outer_circles: c.removed_outer_circles,
    })
}

/// The catalogued local shapes of a strip.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StripKind {
    /// Left cap of the curve.
    Type1,
    /// `f2`: all `param = |b_j|` double points of one vertical twist.
    /// `f3`: a single tangency (`param = 1`).
    Type2 { param: u32 },
    /// Parallel strands marking `param` smoothed horizontal crossings
    /// (possibly none).
    Type3 { param: u32 },
    /// Right cap of the curve.
    Type4,
}

impl StripKind {
    pub fn type_number(&self) -> u8 {
        match self {
            StripKind::Type1 => 1,
            StripKind::Type2 { .. } => 2,
            StripKind::Type3 { .. } => 3,
            StripKind::Type4 => 4,
        }
    }

    pub fn param(&self) -> u32 {
        match *self {
            StripKind::Type2 { param } | StripKind::Type3 { param } => param,
            StripKind::Type1 | StripKind::Type4 => 0,
        }
    }

    pub fn from_parts(type_number: u8, param: u32) -> Option<StripKind> {
        match (type_number, param) {
            (1, 0) => Some(StripKind::Type1),
            (2, p) => Some(StripKind::Type2 { param: p }),
            (3, p) => Some(StripKind::Type3 { param: p }),
            (4, 0) => Some(StripKind::Type4),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Strip {
    pub kind: StripKind,
    /// Tiles of the curve covered by the strip.
    pub tiles: Range<usize>,
}

/// How many Type 3 strips to cut through the horizontal twists.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Granularity {
    /// One strip per horizontal twist region.
    PerRegion,
    /// One strip per smoothed crossing.
    #[default]
    PerCrossing,
    /// One strip per smoothed crossing followed by `k - 1` empty strips.
    Subdivided(u32),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub type2_count: usize,
    pub type3_count: usize,
    /// Number of separating segments, one fewer than the strips.
    pub separators: usize,
    /// Points of the curve on every separator.
    pub curve_points_per_separator: usize,
    /// Points of the link on every separator.
    pub link_points_per_separator: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StripDecomposition {
    variant: Variant,
    strips: Vec<Strip>,
    report: ValidationReport,
}

impl StripDecomposition {
    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn strips(&self) -> &[Strip] {
        &self.strips
    }

    pub fn kinds(&self) -> Vec<StripKind> {
        self.strips.iter().map(|s| s.kind).collect()
    }

    pub fn report(&self) -> &ValidationReport {
        &self.report
    }

    /// Number of separating segments.
    pub fn n(&self) -> usize {
        self.strips.len() - 1
    }

    /// Insert an empty Type 3 strip before position `at` (`1..len`).
    pub fn with_inserted_type3(&self, curve: &ImmersedCurve, at: usize) -> Result<Self, CurveError> {
        let mut kinds = self.kinds();
        if at == 0 || at >= kinds.len() {
            return Err(CurveError::UnsliceableShape {
                strip: at,
                reason: "extra strips must sit strictly between the caps".into(),
            });
        }
        kinds.insert(at, StripKind::Type3 { param: 0 });
        decompose_from_kinds(curve, self.variant, &kinds)
    }
}

fn required_form(variant: Variant) -> CurveForm {
    match variant {
        Variant::F2 => CurveForm::Immersed,
        Variant::F3 => CurveForm::Reduced,
    }
}

pub fn strip_decompose(c: &ImmersedCurve, variant: Variant) -> Result<StripDecomposition, CurveError> {
    strip_decompose_with(c, variant, Granularity::default())
}

pub fn strip_decompose_with(
    c: &ImmersedCurve,
    variant: Variant,
    granularity: Granularity,
) -> Result<StripDecomposition, CurveError> {
    if c.form != required_form(variant) {
        return Err(CurveError::VariantMismatch { form: c.form, variant });
    }
    let mut kinds = Vec::new();
    let mut i = 0;
    let tiles = &c.tiles;
    while i < tiles.len() {
        match tiles[i] {
            Tile::LeftCap => {
                kinds.push(StripKind::Type1);
                i += 1;
            }
            Tile::RightCap => {
                kinds.push(StripKind::Type4);
                i += 1;
            }
            Tile::Pass { entry } => {
                let run = run_len(tiles, i, |t| t == Tile::Pass { entry });
                match granularity {
                    Granularity::PerRegion => kinds.push(StripKind::Type3 { param: run as u32 }),
                    Granularity::PerCrossing => {
                        kinds.extend(std::iter::repeat_n(StripKind::Type3 { param: 1 }, run));
                    }
                    Granularity::Subdivided(k) => {
                        for _ in 0..run {
                            kinds.push(StripKind::Type3 { param: 1 });
                            for _ in 1..k {
                                kinds.push(StripKind::Type3 { param: 0 });
                            }
                        }
                    }
                }
                i += run;
            }
            Tile::Crossing { entry } => {
                let run = run_len(tiles, i, |t| t == Tile::Crossing { entry });
                kinds.push(StripKind::Type2 { param: run as u32 });
                i += run;
            }
            Tile::Tangency { .. } => {
                kinds.push(StripKind::Type2 { param: 1 });
                i += 1;
            }
        }
    }
    decompose_from_kinds(c, variant, &kinds)
}

fn run_len(tiles: &[Tile], start: usize, same: impl Fn(Tile) -> bool) -> usize {
    tiles[start..].iter().take_while(|&&t| same(t)).count()
}

/// Lay a strip word over `curve`, checking every strip against the
/// catalogue of shapes.
pub fn decompose_from_kinds(
    curve: &ImmersedCurve,
    variant: Variant,
    kinds: &[StripKind],
) -> Result<StripDecomposition, CurveError> {
    if curve.form != required_form(variant) {
        return Err(CurveError::VariantMismatch { form: curve.form, variant });
    }
    let bad = |strip: usize, reason: String| CurveError::UnsliceableShape { strip, reason };
    let tiles = &curve.tiles;
    let mut strips = Vec::with_capacity(kinds.len());
    let mut cursor = 0;
    for (k, &kind) in kinds.iter().enumerate() {
        let start = cursor;
        match kind {
            StripKind::Type1 => {
                if k != 0 || tiles.get(cursor) != Some(&Tile::LeftCap) {
                    return Err(bad(k, "Type1 must be the first strip and hold the left cap".into()));
                }
                cursor += 1;
            }
            StripKind::Type4 => {
                if k + 1 != kinds.len() || tiles.get(cursor) != Some(&Tile::RightCap) {
                    return Err(bad(k, "Type4 must be the last strip and hold the right cap".into()));
                }
                cursor += 1;
            }
            StripKind::Type3 { param } => {
                let entry = match tiles.get(cursor) {
                    Some(Tile::Pass { entry }) => Some(*entry),
                    _ => None,
                };
                for _ in 0..param {
                    match (tiles.get(cursor), entry) {
                        (Some(Tile::Pass { entry: e }), Some(first)) if *e == first => cursor += 1,
                        _ => {
                            return Err(bad(k, format!("Type3 expects {param} parallel columns of one twist")));
                        }
                    }
                }
            }
            StripKind::Type2 { param } => match variant {
                Variant::F2 => {
                    let Some(&Tile::Crossing { entry }) = tiles.get(cursor) else {
                        return Err(bad(k, "Type2 expects a run of double points".into()));
                    };
                    if cursor > 0 && tiles[cursor - 1] == (Tile::Crossing { entry }) {
                        return Err(bad(k, "Type2 must start at the first double point of its twist".into()));
                    }
                    let run = run_len(tiles, cursor, |t| t == Tile::Crossing { entry });
                    if run != param as usize {
                        return Err(bad(k, format!("Type2 holds {run} double points, parameter says {param}")));
                    }
                    cursor += run;
                }
                Variant::F3 => {
                    if param != 1 || !matches!(tiles.get(cursor), Some(Tile::Tangency { .. })) {
                        return Err(bad(k, "Type2 expects exactly one tangency".into()));
                    }
                    cursor += 1;
                }
            },
        }
        strips.push(Strip { kind, tiles: start..cursor });
    }
    if cursor != tiles.len() || strips.len() < 2 {
        return Err(bad(kinds.len(), "strips do not cover the curve".into()));
    }

    let type2_count = kinds.iter().filter(|k| matches!(k, StripKind::Type2 { .. })).count();
    let expected = match variant {
        Variant::F2 => curve.word.m(),
        Variant::F3 => (curve.word.sum_abs_b() / 2) as usize,
    };
    if type2_count != expected {
        return Err(bad(0, format!("{type2_count} Type2 strips, expected {expected}")));
    }
    let report = ValidationReport {
        type2_count,
        type3_count: kinds.iter().filter(|k| matches!(k, StripKind::Type3 { .. })).count(),
        separators: strips.len() - 1,
        curve_points_per_separator: 2,
        link_points_per_separator: 4,
    };
    Ok(StripDecomposition { variant, strips, report })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(e: &[i64]) -> ConwayWord {
        ConwayWord::new(e.to_vec()).unwrap()
    }

    fn curve(e: &[i64]) -> ImmersedCurve {
        outer_smooth(&build_plat_diagram(&w(e))).unwrap()
    }

    #[test]
    fn plat_diagram_counts() {
        let d = build_plat_diagram(&w(&[3, 2, 3]));
        assert_eq!(d.crossings().len(), 8);
        assert_eq!(d.regions().len(), 3);
        let d = build_plat_diagram(&w(&[2, -2, 2]));
        assert_eq!(d.crossings().len(), 6);
        let mid = &d.regions()[1];
        assert_eq!(mid.twists, -2);
        assert!(d.crossings().iter().filter(|c| c.region == 1).all(|c| c.sign == 1));
        assert!(d.crossings().iter().filter(|c| c.region == 0).all(|c| c.sign == 1));
        let d = build_plat_diagram(&w(&[5]));
        assert_eq!((d.crossings().len(), d.regions().len()), (5, 1));
    }

    #[test]
    fn census_examples() {
        let c = crossing_census(&build_plat_diagram(&w(&[3, 2, 3])));
        assert_eq!((c.total, c.sum_abs_b, c.bigon_pairs), (8, 2, Some(1)));
        let c = crossing_census(&build_plat_diagram(&w(&[2, 4, 2, -2, 2])));
        assert_eq!((c.total, c.sum_abs_b, c.bigon_pairs), (12, 6, Some(3)));
        let c = crossing_census(&build_plat_diagram(&w(&[7])));
        assert_eq!((c.total, c.sum_abs_b, c.bigon_pairs), (7, 0, Some(0)));
        let c = crossing_census(&build_plat_diagram(&w(&[2, 1, 2])));
        assert_eq!(c.bigon_pairs, None);
    }

    #[test]
    fn smoothing_double_points() {
        assert_eq!(curve(&[3, 2, 3]).double_points(), 2);
        assert_eq!(curve(&[2, 4, 2]).double_points(), 4);
        let c = curve(&[5]);
        assert_eq!((c.double_points(), c.tangencies(), c.components()), (0, 0, 1));
        assert_eq!(c.removed_outer_circles(), 1);
    }

    #[test]
    fn bigon_reduction() {
        assert_eq!(bigon_reduce(&curve(&[3, 2, 3])).unwrap().tangencies(), 1);
        let r = bigon_reduce(&curve(&[2, 4, 2])).unwrap();
        assert_eq!((r.double_points(), r.tangencies(), r.components()), (0, 2, 1));
        assert_eq!(
            bigon_reduce(&curve(&[2, 1, 2])).unwrap_err(),
            CurveError::OddTwist { index: 1, b: 1 }
        );
        let r = bigon_reduce(&curve(&[3, 2, 3])).unwrap();
        assert!(matches!(bigon_reduce(&r), Err(CurveError::VariantMismatch { .. })));
    }

    #[test]
    fn strip_words() {
        let d = strip_decompose(&curve(&[3, 2, 3]), Variant::F2).unwrap();
        assert_eq!(d.kinds().first(), Some(&StripKind::Type1));
        assert_eq!(d.kinds().last(), Some(&StripKind::Type4));
        assert_eq!(d.report().type2_count, 1);
        assert!(d.kinds().contains(&StripKind::Type2 { param: 2 }));
        assert_eq!(d.n(), d.strips().len() - 1);

        let r = bigon_reduce(&curve(&[2, 4, 2])).unwrap();
        let d = strip_decompose(&r, Variant::F3).unwrap();
        assert_eq!(d.report().type2_count, 2);

        let d = strip_decompose(&curve(&[5]), Variant::F2).unwrap();
        assert_eq!(d.report().type2_count, 0);
        assert_eq!(d.kinds().len(), 7);
    }

    #[test]
    fn variant_mismatch() {
        let c = curve(&[3, 2, 3]);
        assert!(matches!(
            strip_decompose(&c, Variant::F3),
            Err(CurveError::VariantMismatch { .. })
        ));
        let r = bigon_reduce(&c).unwrap();
        assert!(matches!(
            strip_decompose(&r, Variant::F2),
            Err(CurveError::VariantMismatch { .. })
        ));
    }

    #[test]
    fn unsliceable_words() {
        let c = curve(&[3, 2, 3]);
        let t3 = StripKind::Type3 { param: 1 };
        // b-twist split across two Type2 strips
        let kinds = [
            StripKind::Type1, t3, t3, t3,
            StripKind::Type2 { param: 1 }, StripKind::Type2 { param: 1 },
            t3, t3, t3, StripKind::Type4,
        ];
        assert!(matches!(
            decompose_from_kinds(&c, Variant::F2, &kinds),
            Err(CurveError::UnsliceableShape { .. })
        ));
        // Type3 straddling a double point
        let kinds = [StripKind::Type1, StripKind::Type3 { param: 4 }, StripKind::Type4];
        assert!(decompose_from_kinds(&c, Variant::F2, &kinds).is_err());
        // missing cap
        let kinds = [t3, t3, t3, StripKind::Type2 { param: 2 }, t3, t3, t3, StripKind::Type4];
        assert!(decompose_from_kinds(&c, Variant::F2, &kinds).is_err());
    }

    #[test]
    fn granularity_keeps_type2_count() {
        let c = curve(&[3, -4, 2, 2, 5]);
        for g in [Granularity::PerRegion, Granularity::PerCrossing, Granularity::Subdivided(3)] {
            let d = strip_decompose_with(&c, Variant::F2, g).unwrap();
            assert_eq!(d.report().type2_count, 2);
            let total: u32 = d
                .kinds()
                .iter()
                .filter_map(|k| match k {
                    StripKind::Type3 { param } => Some(*param),
                    _ => None,
                })
                .sum();
            assert_eq!(total, 10);
        }
        let d = strip_decompose(&c, Variant::F2).unwrap();
        let e = d.with_inserted_type3(&c, 1).unwrap();
        assert_eq!(e.strips().len(), d.strips().len() + 1);
        assert!(d.with_inserted_type3(&c, 0).is_err());
    }
}
