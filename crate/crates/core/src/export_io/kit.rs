use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::development::FlatLayout;
use crate::error::Result;
use crate::scalar::Real;

/// Millimetres per model unit on printed pages.
pub const KIT_SCALE: f64 = 25.0;
pub const KIT_MARGIN: f64 = 5.0;
/// Tab length as a fraction of strip length.
pub const TAB_FRACTION: f64 = 0.05;
const ARC_STEPS_PER_QUARTER: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Stroke {
    /// Solid line: cut.
    Cut,
    /// Dotted line: slit or fold-free cut made on some copies only.
    Slit,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KitPath {
    pub stroke: Stroke,
    pub closed: bool,
    /// Page coordinates in millimetres.
    pub points: Vec<[f64; 2]>,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KitLabel {
    pub text: String,
    pub at: [f64; 2],
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KitPage {
    pub width_mm: f64,
    pub height_mm: f64,
    pub paths: Vec<KitPath>,
    pub labels: Vec<KitLabel>,
}

/// A piece drawn in model units around its own origin.
#[derive(Clone, Debug)]
struct Item {
    paths: Vec<KitPath>,
    label: String,
}

impl Item {
    fn bounds(&self) -> ([f64; 2], [f64; 2]) {
        let mut lo = [f64::INFINITY; 2];
        let mut hi = [f64::NEG_INFINITY; 2];
        for p in self.paths.iter().flat_map(|p| &p.points) {
            for i in 0..2 {
                lo[i] = lo[i].min(p[i]);
                hi[i] = hi[i].max(p[i]);
            }
        }
        (lo, hi)
    }
}

fn path(stroke: Stroke, closed: bool, label: &str, points: Vec<[f64; 2]>) -> KitPath {
    KitPath {
        stroke,
        closed,
        points,
        label: label.to_string(),
    }
}

fn arc(center: [f64; 2], r: f64, from: f64, to: f64) -> Vec<[f64; 2]> {
    let quarters = ((to - from).abs() / std::f64::consts::FRAC_PI_2)
        .ceil()
        .max(1.0) as usize;
    let steps = quarters * ARC_STEPS_PER_QUARTER;
    (0..=steps)
        .map(|i| {
            let a = from + (to - from) * i as f64 / steps as f64;
            [center[0] + r * a.cos(), center[1] + r * a.sin()]
        })
        .collect()
}

/// Octagon outline: the square `[-1,1]^2` minus corner disks of radius 2/3.
fn octagon_item() -> Item {
    use std::f64::consts::PI;
    let r = 2.0 / 3.0;
    let mut outline = Vec::new();
    // counterclockwise from the +x side, each corner arc traversed clockwise about its corner
    for (c, start) in [
        ([1.0, 1.0], 1.5 * PI),
        ([-1.0, 1.0], 0.0),
        ([-1.0, -1.0], 0.5 * PI),
        ([1.0, -1.0], PI),
    ] {
        outline.extend(arc(c, r, start, start - PI / 2.0));
    }
    let third = 1.0 / 3.0;
    Item {
        label: "octagon (print 3)".into(),
        paths: vec![
            path(Stroke::Cut, true, "outline", outline),
            path(
                Stroke::Cut,
                false,
                "long slit",
                vec![[-1.0, 0.0], [0.0, 0.0]],
            ),
            path(
                Stroke::Cut,
                false,
                "short slit",
                vec![[0.0, 1.0], [0.0, 1.0 - third]],
            ),
            path(
                Stroke::Slit,
                false,
                "halving line",
                vec![[0.0, 0.0], [1.0, 0.0]],
            ),
            path(
                Stroke::Slit,
                false,
                "upper slot",
                vec![[0.0, 0.0], [0.0, 0.5]],
            ),
            path(
                Stroke::Slit,
                false,
                "lower slot",
                vec![[0.0, 0.0], [0.0, -0.5]],
            ),
        ],
    }
}

/// Developed wall: a `3π/2 x 2/3` rectangle with a tab on its left end.
fn strip_item(k: usize) -> Item {
    let w = 1.5 * std::f64::consts::PI;
    let h = 2.0 / 3.0;
    let tab = TAB_FRACTION * w;
    Item {
        label: format!("strip {}", k + 1),
        paths: vec![
            path(
                Stroke::Cut,
                true,
                "strip",
                vec![[0.0, 0.0], [w, 0.0], [w, h], [0.0, h]],
            ),
            path(
                Stroke::Cut,
                true,
                "tab",
                vec![[-tab, 0.0], [0.0, 0.0], [0.0, h], [-tab, h]],
            ),
            path(
                Stroke::Slit,
                false,
                "slot",
                vec![[w / 2.0, h / 2.0], [w, h / 2.0]],
            ),
        ],
    }
}

/// Three-quarter annulus (radii 2/3 and 4/3) with its disk attached.
fn annulus_item(k: usize) -> Item {
    use std::f64::consts::PI;
    let (ri, ro) = (2.0 / 3.0, 4.0 / 3.0);
    let mut outline = arc([0.0, 0.0], ro, PI, 2.5 * PI);
    outline.extend(arc([0.0, 0.0], ri, 0.5 * PI, PI));
    let access = 1.75 * PI;
    Item {
        label: format!("annulus {} with disk", k + 1),
        paths: vec![
            path(Stroke::Cut, true, "outline", outline),
            path(
                Stroke::Slit,
                false,
                "wall slit",
                arc([0.0, 0.0], 1.0, PI, 2.5 * PI),
            ),
            path(
                Stroke::Cut,
                false,
                "access cut",
                vec![
                    [ro * access.cos(), ro * access.sin()],
                    [access.cos(), access.sin()],
                ],
            ),
        ],
    }
}

/// Packs items left to right in shelves at `KIT_SCALE`, flipping the y axis.
fn pack(items: Vec<Item>, width: f64, height: f64) -> KitPage {
    let mut page = KitPage {
        width_mm: width,
        height_mm: height,
        paths: Vec::new(),
        labels: Vec::new(),
    };
    let (mut x, mut y, mut shelf) = (KIT_MARGIN, KIT_MARGIN, 0.0f64);
    for item in items {
        let (lo, hi) = item.bounds();
        let w = (hi[0] - lo[0]) * KIT_SCALE;
        let h = (hi[1] - lo[1]) * KIT_SCALE;
        if x + w + KIT_MARGIN > width && x > KIT_MARGIN {
            x = KIT_MARGIN;
            y += shelf + KIT_MARGIN;
            shelf = 0.0;
        }
        let place = |p: [f64; 2]| {
            [
                x + (p[0] - lo[0]) * KIT_SCALE,
                y + (hi[1] - p[1]) * KIT_SCALE,
            ]
        };
        for p in &item.paths {
            page.paths.push(KitPath {
                points: p.points.iter().map(|&q| place(q)).collect(),
                ..p.clone()
            });
        }
        page.labels.push(KitLabel {
            text: item.label.clone(),
            at: [x, y + h + 3.0],
        });
        x += w + KIT_MARGIN;
        shelf = shelf.max(h + 4.0);
    }
    page
}

/// The two printable pages: octagon, then strips and annuli.
pub fn kit_pages() -> [KitPage; 2] {
    let first = pack(vec![octagon_item()], 210.0, 297.0);
    let mut items: Vec<Item> = (0..6).map(strip_item).collect();
    items.extend((0..3).map(annulus_item));
    [first, pack(items, 297.0, 210.0)]
}

fn stroke_style(s: Stroke) -> &'static str {
    match s {
        Stroke::Cut => "stroke=\"black\" stroke-width=\"0.3\" fill=\"none\"",
        Stroke::Slit => {
            "stroke=\"black\" stroke-width=\"0.3\" stroke-dasharray=\"1,1.5\" fill=\"none\""
        }
    }
}

fn points_attr(points: &[[f64; 2]]) -> String {
    let mut s = String::new();
    for (i, p) in points.iter().enumerate() {
        if i > 0 {
            s.push(' ');
        }
        write!(s, "{:.4},{:.4}", p[0], p[1]).unwrap();
    }
    s
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

impl KitPage {
    pub fn to_svg(&self) -> String {
        let mut s = String::new();
        writeln!(s, "<?xml version=\"1.0\" encoding=\"UTF-8\"?>").unwrap();
        writeln!(
            s,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w}mm\" height=\"{h}mm\" viewBox=\"0 0 {w} {h}\">",
            w = self.width_mm,
            h = self.height_mm
        )
        .unwrap();
        for p in &self.paths {
            let tag = if p.closed { "polygon" } else { "polyline" };
            let class = match p.stroke {
                Stroke::Cut => "cut",
                Stroke::Slit => "slit",
            };
            writeln!(
                s,
                "  <{tag} class=\"{class}\" data-label=\"{}\" {} points=\"{}\"/>",
                escape(&p.label),
                stroke_style(p.stroke),
                points_attr(&p.points)
            )
            .unwrap();
        }
        for l in &self.labels {
            writeln!(
                s,
                "  <text x=\"{:.2}\" y=\"{:.2}\" font-size=\"3\" font-family=\"sans-serif\">{}</text>",
                l.at[0],
                l.at[1],
                escape(&l.text)
            )
            .unwrap();
        }
        s.push_str("</svg>\n");
        s
    }

    /// All path points lie inside the page box.
    pub fn fits(&self) -> bool {
        self.paths.iter().flat_map(|p| &p.points).all(|p| {
            (0.0..=self.width_mm).contains(&p[0]) && (0.0..=self.height_mm).contains(&p[1])
        })
    }
}

/// Writes `kit1.svg` and `kit2.svg` into `dir`.
pub fn export_kit(dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let mut out = Vec::new();
    for (i, page) in kit_pages().iter().enumerate() {
        let p = dir.join(format!("kit{}.svg", i + 1));
        fs::write(&p, page.to_svg())?;
        out.push(p);
    }
    Ok(out)
}

/// SVG drawing of a flat layout: faces of each placement, seams, and the
/// developed boundary.
pub fn layout_svg<T: Real>(layout: &FlatLayout<T>) -> String {
    let mut lo = [f64::INFINITY; 2];
    let mut hi = [f64::NEG_INFINITY; 2];
    for p in layout
        .placements
        .iter()
        .flat_map(|p| p.polygons.iter().flatten())
    {
        let q = p.to_f64();
        for i in 0..2 {
            lo[i] = lo[i].min(q[i]);
            hi[i] = hi[i].max(q[i]);
        }
    }
    let scale = 40.0;
    let pad = 10.0;
    let map = |p: [f64; 2]| [pad + (p[0] - lo[0]) * scale, pad + (hi[1] - p[1]) * scale];
    let (w, h) = (
        (hi[0] - lo[0]) * scale + 2.0 * pad,
        (hi[1] - lo[1]) * scale + 2.0 * pad,
    );
    let mut s = String::new();
    writeln!(s, "<?xml version=\"1.0\" encoding=\"UTF-8\"?>").unwrap();
    writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w:.1}\" height=\"{h:.1}\" viewBox=\"0 0 {w:.1} {h:.1}\">"
    )
    .unwrap();
    for (i, pl) in layout.placements.iter().enumerate() {
        let fill = if i % 2 == 0 { "#dde6f0" } else { "#f0e6dd" };
        writeln!(
            s,
            "  <g data-piece=\"{}\" fill=\"{fill}\" stroke=\"#888\" stroke-width=\"0.2\">",
            pl.piece
        )
        .unwrap();
        for poly in &pl.polygons {
            let pts: Vec<[f64; 2]> = poly.iter().map(|p| map(p.to_f64())).collect();
            writeln!(s, "    <polygon points=\"{}\"/>", points_attr(&pts)).unwrap();
        }
        writeln!(s, "  </g>").unwrap();
    }
    for (a, _) in &layout.seams {
        let pts: Vec<[f64; 2]> = a.iter().map(|p| map(p.to_f64())).collect();
        writeln!(s, "  <polyline class=\"seam\" stroke=\"red\" stroke-width=\"1\" fill=\"none\" points=\"{}\"/>", points_attr(&pts)).unwrap();
    }
    for arc in &layout.boundary.arcs {
        let pts: Vec<[f64; 2]> = arc.points.iter().map(|p| map(p.to_f64())).collect();
        let label = arc.arc.map(|a| a.to_string()).unwrap_or_default();
        writeln!(
            s,
            "  <polyline class=\"boundary\" data-arc=\"{label}\" stroke=\"black\" stroke-width=\"1\" fill=\"none\" points=\"{}\"/>",
            points_attr(&pts)
        )
        .unwrap();
    }
    s.push_str("</svg>\n");
    s
}
