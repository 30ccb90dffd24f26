//! Block-by-block model of the fold maps.
//!
//! Each separating segment carries a cross section: a Morse function on a
//! 2-sphere with two minima and two maxima (the four points where the link
//! meets the sphere) and two saddles (the two points of the curve on the
//! segment). Cross sections are stored as Reeb trees. Every strip of the
//! decomposition becomes a block that deforms the entry cross section into
//! the exit one, logging the singular fibers it passes.
//!
//! Leaves of the standard cross section are numbered by slot: 1 and 3 are
//! maxima, 2 and 4 minima. The left cap joins slots (1, 2) and (3, 4).

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::conway::{fraction_of, ConwayError, ConwayWord, SchubertFraction};
use crate::curve::{
    bigon_reduce, build_plat_diagram, decompose_from_kinds, outer_smooth, strip_decompose_with,
    CurveError, Granularity, StripDecomposition, StripKind, Variant, CAP_PAIRS,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MorseError {
    #[error("every b_j must be even; {word} has an odd vertical twist")]
    EvenBRequired { word: ConwayWord },
    #[error("strip {strip:?} has no catalogued deformation for variant {variant}")]
    InvalidStripVariant { strip: StripKind, variant: Variant },
    #[error("cross section fails validation: {0}")]
    InvalidSlice(String),
    #[error("exit of block {block} does not match the entry of block {next}", next = .block + 1)]
    GluingMismatch { block: usize },
    #[error("definite fold trace has {traced} closed curves, the link has {expected} components")]
    TraceMismatch { traced: usize, expected: usize },
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Conway(#[from] ConwayError),
}

impl MorseError {
    pub fn is_hypothesis_failure(&self) -> bool {
        match self {
            MorseError::EvenBRequired { .. } => true,
            MorseError::Curve(CurveError::OddTwist { .. }) => true,
            MorseError::Conway(e) => e.is_hypothesis_failure(),
            _ => false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Extremum {
    Min,
    Max,
}

/// Which of the two saddles of a cross section; kept stable through a block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SaddleId(pub u8);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ReebNode {
    Leaf { label: u8, extremum: Extremum },
    Saddle(SaddleId),
}

/// Reeb tree of a Morse function on a cross-section sphere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossSection {
    nodes: Vec<ReebNode>,
    edges: Vec<(usize, usize)>,
    /// Critical level of each node; leaves of one kind share the boundary
    /// level, saddles sit strictly between.
    levels: Vec<u8>,
}

const MIN_LEVEL: u8 = 0;
const MAX_LEVEL: u8 = 3;

fn four_leaves() -> Vec<ReebNode> {
    vec![
        ReebNode::Leaf { label: 1, extremum: Extremum::Max },
        ReebNode::Leaf { label: 2, extremum: Extremum::Min },
        ReebNode::Leaf { label: 3, extremum: Extremum::Max },
        ReebNode::Leaf { label: 4, extremum: Extremum::Min },
        ReebNode::Saddle(SaddleId(0)),
        ReebNode::Saddle(SaddleId(1)),
    ]
}

/// The cross section on every separating segment: the lower saddle merges
/// the two minima, the upper saddle splits towards the two maxima.
pub fn standard_cross_section() -> CrossSection {
    CrossSection {
        nodes: four_leaves(),
        edges: vec![(1, 4), (3, 4), (4, 5), (5, 0), (5, 2)],
        levels: vec![MAX_LEVEL, MIN_LEVEL, MAX_LEVEL, MIN_LEVEL, 1, 2],
    }
}

/// The cross section after the saddle values have crossed once: each saddle
/// carries one minimum and one maximum.
pub fn staircase_cross_section() -> CrossSection {
    CrossSection {
        nodes: four_leaves(),
        edges: vec![(1, 5), (5, 0), (5, 4), (3, 4), (4, 2)],
        levels: vec![MAX_LEVEL, MIN_LEVEL, MAX_LEVEL, MIN_LEVEL, 2, 1],
    }
}

impl CrossSection {
    pub fn nodes(&self) -> &[ReebNode] {
        &self.nodes
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn levels(&self) -> &[u8] {
        &self.levels
    }

    pub fn leaf_count(&self) -> usize {
        self.nodes.iter().filter(|n| matches!(n, ReebNode::Leaf { .. })).count()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub fn trivalent_count(&self) -> usize {
        (0..self.nodes.len()).filter(|&v| self.degree(v) == 3).count()
    }

    /// `#leaves - #trivalent`; 2 for any Morse function on a sphere.
    pub fn euler_characteristic(&self) -> i64 {
        self.leaf_count() as i64 - self.trivalent_count() as i64
    }

    /// Node indices sorted by critical value, ties broken by index.
    pub fn value_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.nodes.len()).collect();
        order.sort_by_key(|&v| (self.levels[v], v));
        order
    }

    pub fn validate(&self) -> Result<(), MorseError> {
        let err = |m: String| Err(MorseError::InvalidSlice(m));
        let n = self.nodes.len();
        if self.levels.len() != n {
            return err("level table length".into());
        }
        if self.edges.len() + 1 != n {
            return err(format!("{} edges on {} nodes is not a tree", self.edges.len(), n));
        }
        // connectivity
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &(a, b) in &self.edges {
                let w = if a == v { b } else if b == v { a } else { continue };
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return err("Reeb graph is disconnected".into());
        }
        let mut labels = Vec::new();
        for (v, node) in self.nodes.iter().enumerate() {
            let nbrs: Vec<usize> = self
                .edges
                .iter()
                .filter_map(|&(a, b)| if a == v { Some(b) } else if b == v { Some(a) } else { None })
                .collect();
            let below = nbrs.iter().filter(|&&w| self.levels[w] < self.levels[v]).count();
            let above = nbrs.iter().filter(|&&w| self.levels[w] > self.levels[v]).count();
            if below + above != nbrs.len() {
                return err(format!("edge at node {v} joins two critical points of equal value"));
            }
            match node {
                ReebNode::Leaf { label, extremum } => {
                    labels.push(*label);
                    let ok = match extremum {
                        Extremum::Min => (below, above) == (0, 1),
                        Extremum::Max => (below, above) == (1, 0),
                    };
                    if !ok {
                        return err(format!("leaf {label} is not a {extremum:?}"));
                    }
                }
                ReebNode::Saddle(id) => {
                    if !matches!((below, above), (2, 1) | (1, 2)) {
                        return err(format!("saddle {} is not a merge or split", id.0));
                    }
                }
            }
        }
        labels.sort_unstable();
        if labels != [1, 2, 3, 4] {
            return err(format!("leaf labels {labels:?}"));
        }
        if self.euler_characteristic() != 2 {
            return err(format!("Euler characteristic {}", self.euler_characteristic()));
        }
        Ok(())
    }
}

/// Named spheres inside a block `N_k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SliceTag {
    /// `F_k`, shared with the previous block.
    Entry,
    /// `F'_k`.
    Prime,
    /// `F''_{k+1}`.
    DoublePrime,
    /// `F_{k+1}`, shared with the next block.
    Exit,
}

impl SliceTag {
    /// Name of the sphere inside block `N_k`.
    pub fn name(&self, k: usize) -> String {
        match self {
            SliceTag::Entry => format!("F_{k}"),
            SliceTag::Prime => format!("F'_{k}"),
            SliceTag::DoublePrime => format!("F''_{}", k + 1),
            SliceTag::Exit => format!("F_{}", k + 1),
        }
    }

    pub fn parse(name: &str, k: usize) -> Option<SliceTag> {
        [SliceTag::Entry, SliceTag::Prime, SliceTag::DoublePrime, SliceTag::Exit]
            .into_iter()
            .find(|t| t.name(k) == name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FiberKind {
    II2,
    II3,
}

impl fmt::Display for FiberKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FiberKind::II2 => "II2",
            FiberKind::II3 => "II3",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FiberEvent {
    pub kind: FiberKind,
    pub slice: SliceTag,
    pub saddles: [SaddleId; 2],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Topology {
    Ball,
    SphereInterval,
}

/// One piece `N_k` of the sphere together with its map onto strip `T_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockMap {
    strip: StripKind,
    topology: Topology,
    slices: Vec<(SliceTag, CrossSection)>,
    events: Vec<FiberEvent>,
    permutation: [u8; 4],
    saddle_swap: bool,
}

impl BlockMap {
    pub fn strip(&self) -> StripKind {
        self.strip
    }

    pub fn topology(&self) -> Topology {
        self.topology
    }

    pub fn is_cap(&self) -> bool {
        self.topology == Topology::Ball
    }

    pub fn slices(&self) -> &[(SliceTag, CrossSection)] {
        &self.slices
    }

    pub fn events(&self) -> &[FiberEvent] {
        &self.events
    }

    pub fn entry(&self) -> Option<&CrossSection> {
        self.slice(SliceTag::Entry)
    }

    pub fn exit(&self) -> Option<&CrossSection> {
        self.slice(SliceTag::Exit)
    }

    pub fn slice(&self, tag: SliceTag) -> Option<&CrossSection> {
        self.slices.iter().find(|(t, _)| *t == tag).map(|(_, s)| s)
    }

    /// For interior blocks, `permutation[i - 1]` is the exit slot reached by
    /// the link strand entering at slot `i`. For caps it is the involution
    /// pairing the slots joined by the two link arcs inside the ball.
    pub fn permutation(&self) -> [u8; 4] {
        self.permutation
    }

    /// Whether the two saddle tracks exchange levels across the block.
    pub fn saddle_swap(&self) -> bool {
        self.saddle_swap
    }

    pub fn boundary_count(&self) -> usize {
        self.slices
            .iter()
            .filter(|(t, _)| matches!(t, SliceTag::Entry | SliceTag::Exit))
            .count()
    }
}

const IDENTITY: [u8; 4] = [1, 2, 3, 4];

fn transposition_power(a: u8, b: u8, times: u32) -> [u8; 4] {
    let mut p = IDENTITY;
    if times % 2 == 1 {
        p.swap(a as usize - 1, b as usize - 1);
    }
    p
}

/// Slot pairing realised by the nested end caps of the diagram. Strand
/// positions map to slots as 1 -> 1, 4 -> 2, 2 -> 3, 3 -> 4.
fn cap_pairing() -> [u8; 4] {
    let slot = |pos: u8| [1, 3, 4, 2][pos as usize - 1];
    let mut p = IDENTITY;
    for (x, y) in CAP_PAIRS {
        let (sx, sy) = (slot(x), slot(y));
        p[sx as usize - 1] = sy;
        p[sy as usize - 1] = sx;
    }
    p
}

pub fn build_block(strip: StripKind, variant: Variant) -> Result<BlockMap, MorseError> {
    let standard = standard_cross_section;
    let saddles = [SaddleId(0), SaddleId(1)];
    let block = match (strip, variant) {
        (StripKind::Type1, _) => BlockMap {
            strip,
            topology: Topology::Ball,
            slices: vec![(SliceTag::Exit, standard())],
            events: vec![],
            permutation: cap_pairing(),
            saddle_swap: false,
        },
        (StripKind::Type4, _) => BlockMap {
            strip,
            topology: Topology::Ball,
            slices: vec![(SliceTag::Entry, standard())],
            events: vec![],
            permutation: cap_pairing(),
            saddle_swap: false,
        },
        // Each smoothed horizontal crossing exchanges the two minima.
        (StripKind::Type3 { param }, _) => BlockMap {
            strip,
            topology: Topology::SphereInterval,
            slices: vec![(SliceTag::Entry, standard()), (SliceTag::Exit, standard())],
            events: vec![],
            permutation: transposition_power(2, 4, param),
            saddle_swap: false,
        },
        // The saddle values cross twice; between the crossings the vertical
        // twist is carried by the exchange of slots 3 and 4, which returns
        // to the identity only for an even number of half twists.
        (StripKind::Type2 { param }, Variant::F2) if param >= 2 && param % 2 == 0 => BlockMap {
            strip,
            topology: Topology::SphereInterval,
            slices: vec![
                (SliceTag::Entry, standard()),
                (SliceTag::Prime, staircase_cross_section()),
                (SliceTag::DoublePrime, staircase_cross_section()),
                (SliceTag::Exit, standard()),
            ],
            events: vec![
                FiberEvent { kind: FiberKind::II2, slice: SliceTag::Prime, saddles },
                FiberEvent { kind: FiberKind::II2, slice: SliceTag::DoublePrime, saddles },
            ],
            permutation: transposition_power(3, 4, param),
            saddle_swap: false,
        },
        // The saddle values touch once without crossing.
        (StripKind::Type2 { param: 1 }, Variant::F3) => BlockMap {
            strip,
            topology: Topology::SphereInterval,
            slices: vec![
                (SliceTag::Entry, standard()),
                (SliceTag::Prime, standard()),
                (SliceTag::DoublePrime, standard()),
                (SliceTag::Exit, standard()),
            ],
            events: vec![FiberEvent { kind: FiberKind::II3, slice: SliceTag::DoublePrime, saddles }],
            permutation: transposition_power(3, 4, 2),
            saddle_swap: false,
        },
        (StripKind::Type2 { .. }, _) => return Err(MorseError::InvalidStripVariant { strip, variant }),
    };
    for (_, s) in &block.slices {
        s.validate()?;
    }
    Ok(block)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SingularFiberCensus {
    pub ii2: u64,
    pub ii3: u64,
    pub definite_components: u64,
    pub indefinite_circles: u64,
}

/// Closed curves of definite fold points, each listed as the
/// `(sphere index, slot)` points it passes through, `F_1 .. F_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefiniteFoldTrace {
    pub curves: Vec<Vec<(usize, u8)>>,
}

impl DefiniteFoldTrace {
    pub fn component_count(&self) -> usize {
        self.curves.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StableMapModel {
    variant: Variant,
    word: ConwayWord,
    fraction: SchubertFraction<i64>,
    decomposition: StripDecomposition,
    blocks: Vec<BlockMap>,
    census: SingularFiberCensus,
    trace: DefiniteFoldTrace,
}

impl StableMapModel {
    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn word(&self) -> &ConwayWord {
        &self.word
    }

    pub fn fraction(&self) -> &SchubertFraction<i64> {
        &self.fraction
    }

    pub fn decomposition(&self) -> &StripDecomposition {
        &self.decomposition
    }

    pub fn blocks(&self) -> &[BlockMap] {
        &self.blocks
    }

    pub fn census(&self) -> SingularFiberCensus {
        self.census
    }

    pub fn trace(&self) -> &DefiniteFoldTrace {
        &self.trace
    }

    /// Assemble from an explicit strip word laid over the curve of `word`.
    pub fn from_strip_kinds(
        word: &ConwayWord,
        variant: Variant,
        kinds: &[StripKind],
    ) -> Result<Self, MorseError> {
        let curve = curve_for(word, variant)?;
        let decomposition = decompose_from_kinds(&curve, variant, kinds)?;
        Self::from_decomposition(word, decomposition)
    }

    pub fn from_decomposition(
        word: &ConwayWord,
        decomposition: StripDecomposition,
    ) -> Result<Self, MorseError> {
        let variant = decomposition.variant();
        let blocks = decomposition
            .strips()
            .iter()
            .map(|s| build_block(s.kind, variant))
            .collect::<Result<Vec<_>, _>>()?;
        for (k, pair) in blocks.windows(2).enumerate() {
            if pair[0].exit() != pair[1].entry() {
                return Err(MorseError::GluingMismatch { block: k });
            }
        }
        let fraction = fraction_of(word)?;
        let trace = trace_blocks(&blocks);
        let expected = fraction.component_count() as usize;
        if trace.component_count() != expected {
            return Err(MorseError::TraceMismatch { traced: trace.component_count(), expected });
        }
        let mut model = StableMapModel {
            variant,
            word: word.clone(),
            fraction,
            decomposition,
            blocks,
            census: SingularFiberCensus::default(),
            trace,
        };
        model.census = fiber_census(&model);
        Ok(model)
    }
}

fn curve_for(word: &ConwayWord, variant: Variant) -> Result<crate::curve::ImmersedCurve, MorseError> {
    if !word.all_b_even() {
        return Err(MorseError::EvenBRequired { word: word.clone() });
    }
    let curve = outer_smooth(&build_plat_diagram(word))?;
    Ok(match variant {
        Variant::F2 => curve,
        Variant::F3 => bigon_reduce(&curve)?,
    })
}

pub fn assemble_stable_map(word: &ConwayWord, variant: Variant) -> Result<StableMapModel, MorseError> {
    assemble_with(word, variant, Granularity::default())
}

pub fn assemble_with(
    word: &ConwayWord,
    variant: Variant,
    granularity: Granularity,
) -> Result<StableMapModel, MorseError> {
    let curve = curve_for(word, variant)?;
    let decomposition = strip_decompose_with(&curve, variant, granularity)?;
    StableMapModel::from_decomposition(word, decomposition)
}

/// Sum the event logs of every block and retrace both fold loci.
pub fn fiber_census(model: &StableMapModel) -> SingularFiberCensus {
    let events = model.blocks.iter().flat_map(|b| b.events.iter());
    let (mut ii2, mut ii3) = (0, 0);
    for e in events {
        match e.kind {
            FiberKind::II2 => ii2 += 1,
            FiberKind::II3 => ii3 += 1,
        }
    }
    SingularFiberCensus {
        ii2,
        ii3,
        definite_components: trace_blocks(&model.blocks).component_count() as u64,
        indefinite_circles: indefinite_circles(&model.blocks) as u64,
    }
}

pub fn trace_definite_folds(model: &StableMapModel) -> Result<DefiniteFoldTrace, MorseError> {
    let trace = trace_blocks(&model.blocks);
    let expected = model.fraction.component_count() as usize;
    if trace.component_count() != expected {
        return Err(MorseError::TraceMismatch { traced: trace.component_count(), expected });
    }
    Ok(trace)
}

/// Walk the closed curves of a graph in which every node has degree two,
/// given as an edge list. Curves are listed by node, starting from the
/// smallest node not yet visited.
fn closed_curves(nodes: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut incident: Vec<Vec<usize>> = vec![Vec::with_capacity(2); nodes];
    for (e, &(a, b)) in edges.iter().enumerate() {
        incident[a].push(e);
        incident[b].push(e);
    }
    let mut used = vec![false; edges.len()];
    let mut seen = vec![false; nodes];
    let mut curves = Vec::new();
    for start in 0..nodes {
        if seen[start] {
            continue;
        }
        let mut curve = vec![start];
        seen[start] = true;
        let mut cur = start;
        while let Some(&e) = incident[cur].iter().find(|&&e| !used[e]) {
            used[e] = true;
            let (a, b) = edges[e];
            cur = if a == cur { b } else { a };
            if cur == start {
                break;
            }
            seen[cur] = true;
            curve.push(cur);
        }
        curves.push(curve);
    }
    curves
}

/// Follow the four strands from sphere to sphere. Sphere `F_k` sits between
/// block `k - 1` and block `k`.
fn trace_blocks(blocks: &[BlockMap]) -> DefiniteFoldTrace {
    let n = blocks.len().saturating_sub(1);
    if n == 0 {
        return DefiniteFoldTrace { curves: vec![] };
    }
    let idx = |k: usize, slot: u8| (k - 1) * 4 + (slot as usize - 1);
    let mut edges = Vec::with_capacity(4 * n);
    for (cap, k) in [(&blocks[0], 1), (&blocks[n], n)] {
        for s in 1..=4u8 {
            let t = cap.permutation[s as usize - 1];
            if s < t {
                edges.push((idx(k, s), idx(k, t)));
            }
        }
    }
    for (k, block) in blocks.iter().enumerate().take(n).skip(1) {
        for s in 1..=4u8 {
            edges.push((idx(k, s), idx(k + 1, block.permutation[s as usize - 1])));
        }
    }
    let curves = closed_curves(4 * n, &edges)
        .into_iter()
        .map(|c| c.into_iter().map(|v| (v / 4 + 1, (v % 4) as u8 + 1)).collect())
        .collect();
    DefiniteFoldTrace { curves }
}

/// Components of the indefinite fold locus: the two saddle tracks, carried
/// through every block and joined to each other at both caps.
fn indefinite_circles(blocks: &[BlockMap]) -> usize {
    let n = blocks.len().saturating_sub(1);
    if n == 0 {
        return 0;
    }
    let idx = |k: usize, track: usize| (k - 1) * 2 + track;
    let mut edges = vec![(idx(1, 0), idx(1, 1)), (idx(n, 0), idx(n, 1))];
    for (k, block) in blocks.iter().enumerate().take(n).skip(1) {
        for t in 0..2 {
            let to = if block.saddle_swap { 1 - t } else { t };
            edges.push((idx(k, t), idx(k + 1, to)));
        }
    }
    closed_curves(2 * n, &edges).len()
}
