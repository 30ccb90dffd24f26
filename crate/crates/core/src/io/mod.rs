//! Interchange and rendering: the versioned JSON model document and
//! deterministic SVG pictures.

mod json;
mod svg;

pub use json::{
    export_json, import_json, BlockDoc, BoundsDoc, CensusDoc, EventDoc, FractionDoc, IoError,
    ModelDocument, StripDoc, SCHEMA_VERSION,
};
pub use svg::{render_svg, SvgSubject, SVG_HEIGHT, STRAND_GAP, TILE_WIDTH, TREE_SCALE};
