use std::fmt::Write;

use crate::curve::{ImmersedCurve, StripDecomposition, StripKind, Tile, Variant};
use crate::morse::{CrossSection, ReebNode, StableMapModel};

/// Horizontal extent of one tile column.
pub const TILE_WIDTH: u32 = 40;
/// Vertical distance between the two strands of the curve.
pub const STRAND_GAP: u32 = 40;
/// Vertical distance between consecutive critical levels of a Reeb tree;
/// also the horizontal spacing of its leaves.
pub const TREE_SCALE: u32 = 12;
/// Height of every picture.
pub const SVG_HEIGHT: u32 = 200;
const MARGIN: u32 = 40;
const STRAND_TOP: u32 = 50;
const TREE_TOP: u32 = 130;

/// Anything [`render_svg`] can draw.
#[derive(Debug, Clone, Copy)]
pub enum SvgSubject<'a> {
    Curve(&'a ImmersedCurve),
    Decomposition(&'a StripDecomposition),
    Model(&'a StableMapModel),
}

impl<'a> From<&'a ImmersedCurve> for SvgSubject<'a> {
    fn from(c: &'a ImmersedCurve) -> Self {
        SvgSubject::Curve(c)
    }
}

impl<'a> From<&'a StripDecomposition> for SvgSubject<'a> {
    fn from(d: &'a StripDecomposition) -> Self {
        SvgSubject::Decomposition(d)
    }
}

impl<'a> From<&'a StableMapModel> for SvgSubject<'a> {
    fn from(m: &'a StableMapModel) -> Self {
        SvgSubject::Model(m)
    }
}

/// Column contents of a strip word; an empty strip still gets one column.
fn strip_columns(d: &StripDecomposition) -> Vec<Vec<Tile>> {
    d.kinds()
        .into_iter()
        .enumerate()
        .map(|(k, kind)| match kind {
            StripKind::Type1 => vec![Tile::LeftCap],
            StripKind::Type4 => vec![Tile::RightCap],
            StripKind::Type2 { param } => match d.variant() {
                Variant::F2 => vec![Tile::Crossing { entry: k }; param as usize],
                Variant::F3 => vec![Tile::Tangency { entry: k }],
            },
            StripKind::Type3 { param } => vec![Tile::Pass { entry: k }; param.max(1) as usize],
        })
        .collect()
}

pub fn render_svg<'a>(subject: impl Into<SvgSubject<'a>>) -> String {
    match subject.into() {
        SvgSubject::Curve(c) => {
            let title = format!("curve of {}", c.word());
            Canvas::new(&title, c.tiles().len()).tiles(0, c.tiles()).finish()
        }
        SvgSubject::Decomposition(d) => {
            let title = format!("{} strip decomposition", d.variant());
            strips(&title, d, None)
        }
        SvgSubject::Model(m) => {
            let title = format!("{} model of {}", m.variant(), m.word());
            let trees: Vec<&CrossSection> = m.blocks().iter().skip(1).filter_map(|b| b.entry()).collect();
            strips(&title, m.decomposition(), Some(&trees))
        }
    }
}

fn strips(title: &str, d: &StripDecomposition, trees: Option<&[&CrossSection]>) -> String {
    let columns = strip_columns(d);
    let mut canvas = Canvas::new(title, columns.iter().map(Vec::len).sum());
    let mut col = 0;
    for (k, (tiles, kind)) in columns.iter().zip(d.kinds()).enumerate() {
        if let StripKind::Type2 { .. } = kind {
            canvas.highlight(col, tiles.len());
        }
        if k > 0 {
            canvas.separator(col, k);
            if let Some(tree) = trees.and_then(|t| t.get(k - 1)) {
                canvas.tree(col, tree);
            }
        }
        col += tiles.len();
    }
    col = 0;
    for tiles in &columns {
        canvas = canvas.tiles(col, tiles);
        col += tiles.len();
    }
    canvas.finish()
}

struct Canvas {
    out: String,
}

fn x_at(col: usize) -> u32 {
    MARGIN + col as u32 * TILE_WIDTH
}

const Y_TOP: u32 = STRAND_TOP;
const Y_BOT: u32 = STRAND_TOP + STRAND_GAP;

impl Canvas {
    fn new(title: &str, columns: usize) -> Self {
        let width = 2 * MARGIN + columns as u32 * TILE_WIDTH;
        let mut out = String::new();
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{SVG_HEIGHT}" viewBox="0 0 {width} {SVG_HEIGHT}">"#
        );
        let _ = writeln!(out, "<title>{}</title>", escape(title));
        out.push_str(
            "<style>.curve{fill:none;stroke:#000;stroke-width:2}.type2{fill:#fde7a6}\
             .gamma{stroke:#3060c0;stroke-dasharray:4 3}.reeb{stroke:#555;fill:none}\
             text{font:10px sans-serif}</style>\n",
        );
        Canvas { out }
    }

    fn tiles(mut self, first: usize, tiles: &[Tile]) -> Self {
        for (i, tile) in tiles.iter().enumerate() {
            let x0 = x_at(first + i);
            let x1 = x0 + TILE_WIDTH;
            let r = STRAND_GAP / 2;
            let o = &mut self.out;
            let _ = match tile {
                Tile::LeftCap => writeln!(
                    o,
                    r#"<path class="curve cap" d="M {x1} {Y_TOP} A {r} {r} 0 0 0 {x1} {Y_BOT}"/>"#
                ),
                Tile::RightCap => writeln!(
                    o,
                    r#"<path class="curve cap" d="M {x0} {Y_TOP} A {r} {r} 0 0 1 {x0} {Y_BOT}"/>"#
                ),
                Tile::Pass { .. } => writeln!(
                    o,
                    r#"<path class="curve pass" d="M {x0} {Y_TOP} H {x1} M {x0} {Y_BOT} H {x1}"/>"#
                ),
                Tile::Crossing { .. } => writeln!(
                    o,
                    r#"<path class="curve crossing" d="M {x0} {Y_TOP} L {x1} {Y_BOT} M {x0} {Y_BOT} L {x1} {Y_TOP}"/>"#
                ),
                Tile::Tangency { .. } => {
                    let xm = x0 + TILE_WIDTH / 2;
                    writeln!(
                        o,
                        r#"<path class="curve tangency" d="M {x0} {Y_TOP} Q {xm} {Y_BOT} {x1} {Y_TOP} M {x0} {Y_BOT} Q {xm} {Y_TOP} {x1} {Y_BOT}"/>"#
                    )
                }
            };
        }
        self
    }

    fn highlight(&mut self, col: usize, width: usize) {
        let _ = writeln!(
            self.out,
            r#"<rect class="type2" x="{}" y="{}" width="{}" height="{}"/>"#,
            x_at(col),
            Y_TOP - 10,
            width as u32 * TILE_WIDTH,
            STRAND_GAP + 20
        );
    }

    fn separator(&mut self, col: usize, k: usize) {
        let x = x_at(col);
        let _ = writeln!(
            self.out,
            r#"<line class="gamma" x1="{x}" y1="{}" x2="{x}" y2="{}"/><text x="{}" y="{}">γ{k}</text>"#,
            Y_TOP - 20,
            Y_BOT + 20,
            x + 2,
            Y_TOP - 24
        );
    }

    fn tree(&mut self, col: usize, tree: &CrossSection) {
        let cx = x_at(col) as i64;
        let s = TREE_SCALE as i64;
        // Leaves spread by label; saddles sit at the mean of their leaf
        // neighbours, doubled to keep coordinates integral.
        let xs2: Vec<i64> = (0..tree.nodes().len())
            .map(|v| match tree.nodes()[v] {
                ReebNode::Leaf { label, .. } => 2 * cx + (2 * label as i64 - 5) * s,
                ReebNode::Saddle(_) => {
                    let leaves: Vec<i64> = tree
                        .edges()
                        .iter()
                        .filter_map(|&(a, b)| {
                            let w = if a == v { b } else if b == v { a } else { return None };
                            match tree.nodes()[w] {
                                ReebNode::Leaf { label, .. } => Some(2 * cx + (2 * label as i64 - 5) * s),
                                ReebNode::Saddle(_) => None,
                            }
                        })
                        .collect();
                    if leaves.is_empty() {
                        2 * cx
                    } else {
                        leaves.iter().sum::<i64>() / leaves.len() as i64
                    }
                }
            })
            .collect();
        let y = |v: usize| TREE_TOP as i64 + (3 - tree.levels()[v] as i64) * s;
        let fmt2 = |v: i64| if v % 2 == 0 { format!("{}", v / 2) } else { format!("{}.5", v.div_euclid(2)) };
        let mut d = String::new();
        for &(a, b) in tree.edges() {
            let _ = write!(d, "M {} {} L {} {} ", fmt2(xs2[a]), y(a), fmt2(xs2[b]), y(b));
        }
        let _ = writeln!(self.out, r#"<path class="reeb" d="{}"/>"#, d.trim_end());
    }

    fn finish(mut self) -> String {
        self.out.push_str("</svg>\n");
        self.out
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
