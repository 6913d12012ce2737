//! SVG output. Floating point lives only here and never feeds back into any
//! computation.

use std::f64::consts::TAU;
use std::fmt::Write as _;

use num_traits::ToPrimitive;
use thiserror::Error;

use crate::analysis::Analysis;
use crate::circle::{CirclePoint, Chord, Side, Sign};
use crate::instance::LamInstance;
use crate::plane::{crossing_space, PlaneError};
use crate::regions::{Piece, Region, RegionId, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Geometry {
    #[default]
    EuclideanChords,
    PoincareGeodesics,
}

impl Geometry {
    pub fn parse(s: &str) -> Option<Geometry> {
        match s {
            "euclidean-chords" => Some(Geometry::EuclideanChords),
            "poincare-geodesics" => Some(Geometry::PoincareGeodesics),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RenderSpec {
    pub geometry: Geometry,
    pub plus: bool,
    pub minus: bool,
    pub leaves: bool,
    pub phantoms: bool,
    pub accumulation: bool,
    /// Fill genuine regions.
    pub regions: bool,
    /// Regions drawn with a highlight fill.
    pub highlight: Vec<RegionId>,
    /// Region whose linkage graph is overlaid.
    pub linkage: Option<RegionId>,
    pub crossing_points: bool,
    pub singular_markers: bool,
}

impl Default for RenderSpec {
    fn default() -> Self {
        RenderSpec {
            geometry: Geometry::EuclideanChords,
            plus: true,
            minus: true,
            leaves: true,
            phantoms: true,
            accumulation: true,
            regions: false,
            highlight: Vec::new(),
            linkage: None,
            crossing_points: false,
            singular_markers: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum RenderError {
    #[error("unknown region {0}")]
    UnknownRegion(RegionId),
    #[error("region {0} has no linkage graph")]
    NoLinkage(RegionId),
    #[error("crossing space unavailable: {0}")]
    Plane(PlaneError),
}

type P = (f64, f64);

fn angle(p: &CirclePoint) -> f64 {
    p.value().to_f64().unwrap_or(0.0) * TAU
}

/// Circle parameter `t` sits at angle `2πt`, counterclockwise on screen.
fn on_circle(p: &CirclePoint) -> P {
    let a = angle(p);
    (a.cos(), -a.sin())
}

fn num(x: f64) -> String {
    let s = format!("{x:.4}");
    if s == "-0.0000" {
        "0.0000".to_string()
    } else {
        s
    }
}

fn pt(p: P) -> String {
    format!("{} {}", num(p.0), num(p.1))
}

/// Path data from `p` to `q` along the chord or the geodesic, without the
/// leading move.
fn segment(geometry: Geometry, p: &CirclePoint, q: &CirclePoint) -> String {
    let (a, b) = (on_circle(p), on_circle(q));
    if geometry == Geometry::EuclideanChords {
        return format!("L {}", pt(b));
    }
    let mut delta = (angle(q) - angle(p)).rem_euclid(TAU);
    if delta > TAU / 2.0 {
        delta = TAU - delta;
    }
    if (delta - TAU / 2.0).abs() < 1e-9 {
        return format!("L {}", pt(b));
    }
    let r = (delta / 2.0).tan();
    let m = ((a.0 + b.0) / 2.0, (a.1 + b.1) / 2.0);
    let len = (m.0 * m.0 + m.1 * m.1).sqrt();
    let d = 1.0 / (delta / 2.0).cos();
    let c = (m.0 / len * d, m.1 / len * d);
    let ta = (a.1 - c.1).atan2(a.0 - c.0);
    let tb = (b.1 - c.1).atan2(b.0 - c.0);
    let mut turn = tb - ta;
    while turn > TAU / 2.0 {
        turn -= TAU;
    }
    while turn <= -TAU / 2.0 {
        turn += TAU;
    }
    let sweep = u8::from(turn > 0.0);
    format!("A {} {} 0 0 {} {}", num(r), num(r), sweep, pt(b))
}

/// Counterclockwise boundary arc from `p` to `q`.
fn circle_arc(p: &CirclePoint, q: &CirclePoint) -> String {
    let span = (angle(q) - angle(p)).rem_euclid(TAU);
    let large = u8::from(span > TAU / 2.0);
    format!("A 1 1 0 {} 0 {}", large, pt(on_circle(q)))
}

/// A point inside the disc near the middle of the chord, in the chosen
/// geometry. Uses the Klein model for geodesics.
fn chord_middle(geometry: Geometry, c: &Chord) -> P {
    let (a, b) = (on_circle(&c.a), on_circle(&c.b));
    let k = ((a.0 + b.0) / 2.0, (a.1 + b.1) / 2.0);
    match geometry {
        Geometry::EuclideanChords => k,
        Geometry::PoincareGeodesics => klein_to_poincare(k),
    }
}

fn klein_to_poincare(k: P) -> P {
    let s = 1.0 + (1.0 - (k.0 * k.0 + k.1 * k.1)).max(0.0).sqrt();
    (k.0 / s, k.1 / s)
}

/// Intersection of two crossing chords. Straight chords in the Klein model
/// are the geodesics, so the Poincaré point is a conversion away.
fn crossing(geometry: Geometry, c: &Chord, d: &Chord) -> P {
    let (p1, p2) = (on_circle(&c.a), on_circle(&c.b));
    let (p3, p4) = (on_circle(&d.a), on_circle(&d.b));
    let den = (p1.0 - p2.0) * (p3.1 - p4.1) - (p1.1 - p2.1) * (p3.0 - p4.0);
    let t = ((p1.0 - p3.0) * (p3.1 - p4.1) - (p1.1 - p3.1) * (p3.0 - p4.0)) / den;
    let k = (p1.0 + t * (p2.0 - p1.0), p1.1 + t * (p2.1 - p1.1));
    match geometry {
        Geometry::EuclideanChords => k,
        Geometry::PoincareGeodesics => klein_to_poincare(k),
    }
}

/// Midpoint of the counterclockwise arc from `p` to `q`.
fn arc_middle(p: &CirclePoint, q: &CirclePoint) -> P {
    let a = angle(p);
    let span = (angle(q) - a).rem_euclid(TAU);
    let m = a + span / 2.0;
    (m.cos(), -m.sin())
}

fn region_path(geometry: Geometry, region: &Region) -> String {
    let Some(first) = region.pieces.first() else {
        return "M 1 0 A 1 1 0 1 0 -1 0 A 1 1 0 1 0 1 0 Z".to_string();
    };
    let mut d = format!("M {}", pt(on_circle(first.from())));
    for piece in &region.pieces {
        d.push(' ');
        match piece {
            Piece::Side { from, to, .. } => d.push_str(&segment(geometry, from, to)),
            Piece::Arc(arc) => d.push_str(&circle_arc(&arc.from, &arc.to)),
        }
    }
    d.push_str(" Z");
    d
}

fn sign_class(s: Sign) -> &'static str {
    match s {
        Sign::Plus => "plus",
        Sign::Minus => "minus",
    }
}

pub fn render(inst: &LamInstance, spec: &RenderSpec) -> Result<Vec<u8>, RenderError> {
    let an = Analysis::new(inst);
    let known = |id: RegionId| id.index < an.family(id.sign).regions.len();
    for &id in spec.highlight.iter().chain(spec.linkage.iter()) {
        if !known(id) {
            return Err(RenderError::UnknownRegion(id));
        }
    }
    let linkage = match spec.linkage {
        Some(id) => match an.graph(id) {
            Some(Ok(g)) => Some((id, g)),
            _ => return Err(RenderError::NoLinkage(id)),
        },
        None => None,
    };
    let space = if spec.crossing_points || spec.singular_markers {
        Some(crossing_space(inst).map_err(RenderError::Plane)?)
    } else {
        None
    };

    let g = spec.geometry;
    let mut out = String::new();
    let w = &mut out;
    writeln!(w, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        w,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="-1.1 -1.1 2.2 2.2" width="600" height="600">"#
    )
    .unwrap();
    writeln!(
        w,
        "<style>\
.disc{{fill:#fff;stroke:#000;stroke-width:0.006}}\
.region{{fill:#dde8f4;stroke:none}}\
.highlight{{fill:#9cc2e8;stroke:none}}\
.chord{{fill:none;stroke-width:0.008}}\
.plus{{stroke:#c0392b}}.minus{{stroke:#2057a8}}\
.phantom{{stroke-dasharray:0.03 0.02}}\
.acc{{fill:none;stroke-width:0.024;stroke-opacity:0.25}}\
.linkage-vertex{{fill:#1a7f37;stroke:#fff;stroke-width:0.004}}\
.linkage-edge{{stroke:#1a7f37;stroke-width:0.01}}\
.crossing-point{{fill:#444}}\
.singular-marker{{fill:#f1c40f;stroke:#000;stroke-width:0.005}}\
</style>"
    )
    .unwrap();
    writeln!(w, r#"<circle class="disc" cx="0" cy="0" r="1"/>"#).unwrap();

    if spec.regions || !spec.highlight.is_empty() {
        for region in an.family(Sign::Plus).regions.iter().chain(an.family(Sign::Minus).regions.iter()) {
            let class = if spec.highlight.contains(&region.id) {
                "highlight"
            } else if spec.regions && region.genuine {
                "region"
            } else {
                continue;
            };
            writeln!(w, r#"<path class="{class}" data-region="{}" d="{}"/>"#, region.id, region_path(g, region)).unwrap();
        }
    }

    for id in inst.all_ids() {
        let c = inst.chord(id);
        let shown = match c.sign {
            Sign::Plus => spec.plus,
            Sign::Minus => spec.minus,
        } && if c.is_leaf() { spec.leaves } else { spec.phantoms };
        if !shown {
            continue;
        }
        let d = format!("M {} {}", pt(on_circle(&c.a)), segment(g, &c.a, &c.b));
        if spec.accumulation {
            for side in [Side::Ab, Side::Ba] {
                if !c.acc[side.index()] {
                    continue;
                }
                let (from, to) = match side {
                    Side::Ab => (&c.a, &c.b),
                    Side::Ba => (&c.b, &c.a),
                };
                let toward = arc_middle(from, to);
                let mid = chord_middle(g, c);
                let (dx, dy) = (toward.0 - mid.0, toward.1 - mid.1);
                let len = (dx * dx + dy * dy).sqrt().max(1e-9);
                let s = 0.012 / len;
                writeln!(
                    w,
                    r#"<path class="acc {}" transform="translate({} {})" d="{}"/>"#,
                    sign_class(c.sign),
                    num(dx * s),
                    num(dy * s),
                    d
                )
                .unwrap();
            }
        }
        let status = if c.is_leaf() { "" } else { " phantom" };
        writeln!(w, r#"<path class="chord {}{}" data-chord="{}" d="{}"/>"#, sign_class(c.sign), status, c.label(), d)
            .unwrap();
    }

    if let Some((_, graph)) = linkage {
        let pos: Vec<P> = graph
            .vertices
            .iter()
            .map(|v| match v {
                Vertex::Geodesic { chord, .. } => chord_middle(g, inst.chord(*chord)),
                Vertex::Ideal(s) => {
                    let (x, y) = arc_middle(&s.span.0, &s.span.1);
                    let (x, y) = if s.span.0 == s.span.1 { on_circle(&s.span.0) } else { (x, y) };
                    (x * 0.97, y * 0.97)
                }
            })
            .collect();
        for e in &graph.edges {
            let (p, q) = (pos[e.u], pos[e.v]);
            writeln!(
                w,
                r#"<line class="linkage-edge" x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
                num(p.0),
                num(p.1),
                num(q.0),
                num(q.1)
            )
            .unwrap();
        }
        for p in &pos {
            writeln!(w, r#"<circle class="linkage-vertex" cx="{}" cy="{}" r="0.025"/>"#, num(p.0), num(p.1)).unwrap();
        }
    }

    if let Some(space) = &space {
        if spec.crossing_points {
            for &(p, m) in &space.points {
                let x = crossing(g, inst.chord(p), inst.chord(m));
                writeln!(w, r#"<circle class="crossing-point" cx="{}" cy="{}" r="0.008"/>"#, num(x.0), num(x.1)).unwrap();
            }
        }
        if spec.singular_markers {
            for (_, class) in space.singular() {
                let pts: Vec<P> = class
                    .members
                    .iter()
                    .map(|&i| {
                        let (p, m) = space.points[i];
                        crossing(g, inst.chord(p), inst.chord(m))
                    })
                    .collect();
                let n = pts.len() as f64;
                let c = (pts.iter().map(|p| p.0).sum::<f64>() / n, pts.iter().map(|p| p.1).sum::<f64>() / n);
                writeln!(w, r#"<circle class="singular-marker" cx="{}" cy="{}" r="0.03"/>"#, num(c.0), num(c.1)).unwrap();
            }
        }
    }

    writeln!(w, "</svg>").unwrap();
    Ok(out.into_bytes())
}
