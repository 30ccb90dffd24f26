use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complexity::{smc_upper_bound, weighted_sum};
use crate::conway::ConwayWord;
use crate::curve::{StripKind, Variant};
use crate::morse::{FiberKind, MorseError, SingularFiberCensus, SliceTag, StableMapModel, Topology};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Error)]
pub enum IoError {
    #[error("schema error: {0}")]
    SchemaError(String),
    #[error("invariant violation: {0}")]
    InvariantViolation(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelDocument {
    pub schema_version: String,
    pub conway: String,
    pub variant: Variant,
    pub fraction: FractionDoc,
    pub strips: Vec<StripDoc>,
    pub blocks: Vec<BlockDoc>,
    pub census: CensusDoc,
    pub bounds: BoundsDoc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FractionDoc {
    pub p: i64,
    pub q: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StripDoc {
    #[serde(rename = "type")]
    pub type_number: u8,
    pub param: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockDoc {
    pub kind: Topology,
    pub events: Vec<EventDoc>,
    pub permutation: [u8; 4],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EventDoc {
    pub kind: FiberKind,
    /// Sphere name such as `F'_3`, relative to the block's 1-based index.
    pub slice: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CensusDoc {
    pub ii2: u64,
    pub ii3: u64,
    pub definite_components: u64,
    pub indefinite_circles: u64,
}

impl From<SingularFiberCensus> for CensusDoc {
    fn from(c: SingularFiberCensus) -> Self {
        CensusDoc {
            ii2: c.ii2,
            ii3: c.ii3,
            definite_components: c.definite_components,
            indefinite_circles: c.indefinite_circles,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundsDoc {
    pub smc_upper: u64,
    pub weighted_sum: u64,
}

impl ModelDocument {
    pub fn from_model(model: &StableMapModel) -> Self {
        let census = model.census();
        let blocks = model
            .blocks()
            .iter()
            .enumerate()
            .map(|(i, b)| BlockDoc {
                kind: b.topology(),
                events: b
                    .events()
                    .iter()
                    .map(|e| EventDoc { kind: e.kind, slice: e.slice.name(i + 1) })
                    .collect(),
                permutation: b.permutation(),
            })
            .collect();
        ModelDocument {
            schema_version: SCHEMA_VERSION.to_string(),
            conway: model.word().to_string(),
            variant: model.variant(),
            fraction: FractionDoc { p: *model.fraction().p(), q: *model.fraction().q() },
            strips: model
                .decomposition()
                .kinds()
                .iter()
                .map(|k| StripDoc { type_number: k.type_number(), param: k.param() })
                .collect(),
            blocks,
            census: census.into(),
            bounds: BoundsDoc {
                smc_upper: smc_upper_bound(model.word()).map_or(0, |u| u.smc_upper),
                weighted_sum: weighted_sum(&census),
            },
        }
    }

    /// Rebuild the model from the Conway word and strip word, then check that
    /// every recorded field matches the rebuilt one.
    pub fn to_model(&self) -> Result<StableMapModel, IoError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(IoError::SchemaError(format!(
                "unsupported schema_version {:?}, expected {SCHEMA_VERSION:?}",
                self.schema_version
            )));
        }
        let word: ConwayWord = self
            .conway
            .parse()
            .map_err(|e| IoError::SchemaError(format!("conway {:?}: {e}", self.conway)))?;
        let kinds = self
            .strips
            .iter()
            .enumerate()
            .map(|(i, s)| {
                StripKind::from_parts(s.type_number, s.param).ok_or_else(|| {
                    IoError::SchemaError(format!("strip {i}: no type {} with param {}", s.type_number, s.param))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let model = StableMapModel::from_strip_kinds(&word, self.variant, &kinds).map_err(|e: MorseError| {
            IoError::InvariantViolation(format!("{}: {e}", self.conway))
        })?;
        let fresh = ModelDocument::from_model(&model);
        let mismatch = |field: &str| Err(IoError::InvariantViolation(format!("{field} does not match the rebuilt model")));
        if fresh.fraction != self.fraction {
            return mismatch("fraction");
        }
        if fresh.blocks.len() != self.blocks.len() {
            return mismatch("blocks");
        }
        for (i, (a, b)) in fresh.blocks.iter().zip(&self.blocks).enumerate() {
            for e in &b.events {
                if SliceTag::parse(&e.slice, i + 1).is_none() {
                    return Err(IoError::SchemaError(format!("block {}: unknown slice {:?}", i + 1, e.slice)));
                }
            }
            if a != b {
                return mismatch(&format!("block {}", i + 1));
            }
        }
        if fresh.census != self.census {
            return mismatch("census");
        }
        if fresh.bounds != self.bounds {
            return mismatch("bounds");
        }
        Ok(model)
    }
}

/// Pretty-printed document, fields in schema order, trailing newline.
pub fn export_json(model: &StableMapModel) -> String {
    let mut s = serde_json::to_string_pretty(&ModelDocument::from_model(model)).expect("serializable");
    s.push('\n');
    s
}

pub fn import_json(text: &str) -> Result<StableMapModel, IoError> {
    let doc: ModelDocument = serde_json::from_str(text).map_err(|e| IoError::SchemaError(e.to_string()))?;
    doc.to_model()
}
