//! Text and JSON forms of the library reports.

use std::fmt::Write as _;

use prelam::completion::Completion;
use prelam::conditions::{ConditionReport, RealizationReport, RegionShape, DENSITY_NOTE};
use prelam::instance::{ChordId, LamInstance};
use prelam::plane::{ClassKind, CoupledPair, CrossingSpace, Key};
use prelam::regions::RegionId;
use serde_json::{json, Value};

pub const SEPARATOR: &str = "--- machine-readable ---";

/// A human-readable body followed by its machine-readable twin.
pub struct Report {
    pub text: String,
    pub json: Value,
}

impl Report {
    pub fn render(&self) -> String {
        let mut out = self.text.clone();
        if !out.ends_with('\n') {
            out.push('\n');
        }
        out.push_str(SEPARATOR);
        out.push('\n');
        out.push_str(&serde_json::to_string_pretty(&self.json).expect("json"));
        out.push('\n');
        out
    }
}

fn label(inst: &LamInstance, id: ChordId) -> String {
    inst.chord(id).label()
}

fn ids(regions: &[RegionId]) -> Vec<String> {
    regions.iter().map(|r| r.to_string()).collect()
}

pub fn conditions(inst: &LamInstance, r: &ConditionReport) -> Report {
    let mut text = String::new();
    writeln!(text, "check ({} mode, {} chords)", inst.mode.name(), inst.len()).unwrap();
    r.write_text(inst, &mut text).unwrap();

    let mut violations = Vec::new();
    if !r.connectedness.pass {
        violations.push(json!({
            "condition": "connectedness",
            "components": r.connectedness.components.len(),
        }));
    }
    for v in &r.simple_cycle.violations {
        violations.push(json!({
            "condition": "simple-cycle",
            "region": v.region.to_string(),
            "edge": v.edge,
            "cycles": v.cycles,
        }));
    }
    for v in &r.high_valence {
        violations.push(json!({
            "condition": v.clause.label(),
            "chord": label(inst, v.leaf),
            "regions": ids(&v.regions),
        }));
    }
    for v in &r.shared_endpoint {
        violations.push(json!({
            "condition": "shared-endpoint",
            "point": v.point.to_string(),
            "leaves": v.leaves.iter().map(|&c| label(inst, c)).collect::<Vec<_>>(),
            "transverse": label(inst, v.transverse),
        }));
    }
    for d in &r.defects {
        violations.push(json!({
            "condition": d.code(),
            "chord": label(inst, d.chord()),
            "message": d.to_string(),
        }));
    }
    let json = json!({
        "command": "check",
        "mode": inst.mode.name(),
        "note": DENSITY_NOTE,
        "pass": r.overall,
        "connectedness": r.connectedness.pass,
        "simple_cycle": r.simple_cycle.pass,
        "high_valence": r.high_valence.is_empty(),
        "shared_endpoint": r.shared_endpoint.is_empty(),
        "violations": violations,
    });
    Report { text, json }
}

pub fn completion(inst: &LamInstance, c: &Completion, out: &str) -> Report {
    let mut text = String::new();
    writeln!(text, "completed {} chords into {} ({} added, {} promoted)", inst.len(), out, c.added.len(), c.promoted.len())
        .unwrap();
    for rec in &c.added {
        writeln!(text, "  added {rec}").unwrap();
    }
    for &id in &c.promoted {
        writeln!(text, "  promoted {} to leaf", label(inst, id)).unwrap();
    }
    for n in &c.notes {
        writeln!(text, "note: {n}").unwrap();
    }
    let json = json!({
        "command": "complete",
        "pass": true,
        "output": out,
        "added": c.added.iter().map(|r| json!({
            "chord": r.chord.label(),
            "region": r.region.to_string(),
            "disconnector": r.disconnector,
            "witnesses": r.witnesses.iter().map(|&w| label(inst, w)).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "promoted": c.promoted.iter().map(|&id| label(inst, id)).collect::<Vec<_>>(),
        "notes": c.notes,
    });
    Report { text, json }
}

pub fn realization(inst: &LamInstance, r: &RealizationReport) -> Report {
    let mut text = String::new();
    writeln!(text, "realization: {}", if r.pass { "pass" } else { "FAIL" }).unwrap();
    let mut shapes = Vec::new();
    for (id, shape) in &r.shapes {
        let (kind, root) = match shape {
            RegionShape::IdealPolygon => ("ideal-polygon", None),
            RegionShape::OneRoot { root } => ("one-root", Some(label(inst, *root))),
        };
        match &root {
            Some(root) => writeln!(text, "  {id}: {kind} at {root}").unwrap(),
            None => writeln!(text, "  {id}: {kind}").unwrap(),
        }
        shapes.push(json!({ "region": id.to_string(), "shape": kind, "root": root }));
    }
    for (p, m) in &r.pairs {
        writeln!(text, "  coupled {p} ~ {m}").unwrap();
    }
    for p in &r.problems {
        writeln!(text, "  {}: {}", p.code(), p.describe(inst)).unwrap();
    }
    let json = json!({
        "command": "realization",
        "pass": r.pass,
        "regions": shapes,
        "pairs": r.pairs.iter().map(|(p, m)| [p.to_string(), m.to_string()]).collect::<Vec<_>>(),
        "violations": r.problems.iter().map(|p| json!({
            "condition": p.code(),
            "message": p.describe(inst),
        })).collect::<Vec<_>>(),
    });
    Report { text, json }
}

fn kind_name(k: ClassKind) -> &'static str {
    match k {
        ClassKind::Single => "single",
        ClassKind::ChordPolygon => "chord-polygon",
        ClassKind::Uncoupled => "uncoupled-polygons",
        ClassKind::Singular { .. } => "singular",
    }
}

fn key_name(inst: &LamInstance, k: Key) -> String {
    match k {
        Key::Chord(c) => label(inst, c),
        Key::Polygon(r) => format!("polygon {r}"),
    }
}

pub fn plane(inst: &LamInstance, space: &CrossingSpace, pairs: &[CoupledPair], faces: usize) -> Report {
    let mut text = String::new();
    let singular: Vec<_> = space.singular().collect();
    writeln!(text, "crossings: {}", space.points.len()).unwrap();
    writeln!(text, "classes: {}", space.classes.len()).unwrap();
    for kind in [ClassKind::Single, ClassKind::ChordPolygon, ClassKind::Uncoupled] {
        let n = space.classes.iter().filter(|c| c.kind == kind).count();
        writeln!(text, "  {}: {n}", kind_name(kind)).unwrap();
    }
    writeln!(text, "  singular: {}", singular.len()).unwrap();
    for (i, c) in &singular {
        if let ClassKind::Singular { k } = c.kind {
            writeln!(text, "    class {i}: {k}-prong, {} crossings", c.members.len()).unwrap();
        }
    }
    for p in pairs {
        writeln!(text, "coupled {} ~ {} ({} prongs)", p.plus, p.minus, p.prongs()).unwrap();
        for (a, b) in &p.pairing {
            writeln!(text, "  {} ~ {}", label(inst, *a), label(inst, *b)).unwrap();
        }
    }
    writeln!(text, "joint faces: {faces}").unwrap();
    let json = json!({
        "command": "plane",
        "pass": true,
        "crossings": space.points.len(),
        "faces": faces,
        "classes": space.classes.iter().map(|c| json!({
            "kind": kind_name(c.kind),
            "prongs": match c.kind { ClassKind::Singular { k } => Some(k), _ => None },
            "keys": [key_name(inst, c.keys.0), key_name(inst, c.keys.1)],
            "size": c.members.len(),
        })).collect::<Vec<_>>(),
        "singular": singular.iter().map(|(i, _)| *i).collect::<Vec<_>>(),
        "coupled": pairs.iter().map(|p| json!({
            "plus": p.plus.to_string(),
            "minus": p.minus.to_string(),
            "pairing": p.pairing.iter().map(|(a, b)| [label(inst, *a), label(inst, *b)]).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    });
    Report { text, json }
}

/// A failure with a code, for malformed input and for operations that stop
/// on a violated condition.
pub fn errors(command: &str, items: &[(String, String, String)]) -> Report {
    let mut text = String::new();
    for (code, path, message) in items {
        if path.is_empty() {
            writeln!(text, "error[{code}]: {message}").unwrap();
        } else {
            writeln!(text, "error[{code}] at {path}: {message}").unwrap();
        }
    }
    let json = json!({
        "command": command,
        "pass": false,
        "errors": items.iter().map(|(code, path, message)| json!({
            "code": code,
            "path": path,
            "message": message,
        })).collect::<Vec<_>>(),
    });
    Report { text, json }
}

pub fn written(command: &str, what: &str, out: &str, extra: Value) -> Report {
    let text = format!("wrote {what} to {out}\n");
    let mut json = json!({ "command": command, "pass": true, "output": out });
    if let (Value::Object(m), Value::Object(e)) = (&mut json, extra) {
        m.extend(e);
    }
    Report { text, json }
}
