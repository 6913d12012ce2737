//! Disconnecting edges and pairs, crossing geodesics, the completion, and
//! nested alternative extensions.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::analysis::{Analysis, CycleStructure};
use crate::circle::{CirclePoint, Chord, DegenerateChord, Sign, Status};
use crate::conditions::{check_completable_with, high_valence_sides, ConditionReport};
use crate::graph::BlockKind;
use crate::instance::{validate, ChordId, LamInstance, ValidationReport};
use crate::regions::{IdealSegment, LinkageGraph, Piece, Region, RegionId, Vertex};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DisconnectorKind {
    Edge(usize),
    Pair { e1: usize, e2: usize, v0: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Disconnector {
    pub region: RegionId,
    pub kind: DisconnectorKind,
    /// `components[0]` holds the edge's `u`, or the pair's shared vertex.
    pub components: [Vec<usize>; 2],
    pub is_cut: bool,
}

impl Disconnector {
    pub fn edges(&self) -> Vec<usize> {
        match self.kind {
            DisconnectorKind::Edge(e) => vec![e],
            DisconnectorKind::Pair { e1, e2, .. } => vec![e1, e2],
        }
    }

    pub fn describe(&self, g: &LinkageGraph, inst: &LamInstance) -> String {
        let e = |i: usize| {
            let edge = &g.edges[i];
            format!("({} - {})", g.vertex_label(inst, edge.u), g.vertex_label(inst, edge.v))
        };
        match self.kind {
            DisconnectorKind::Edge(i) => format!("edge {}", e(i)),
            DisconnectorKind::Pair { e1, e2, v0 } => {
                format!("pair {} {} at {}", e(e1), e(e2), g.vertex_label(inst, v0))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompletionError {
    #[error("instance is not completable")]
    NotCompletable(Box<ConditionReport>),
    #[error("region {0} fails the simple cycle condition")]
    NotSimple(RegionId),
    #[error("region {0}: a disconnector component is not a contiguous run of boundary vertices")]
    NonContiguous(RegionId),
    #[error("region {region}: crossing geodesic {chord} crosses {found:?}, expected {expected:?}")]
    Characterization { region: RegionId, chord: String, expected: Vec<ChordId>, found: Vec<ChordId> },
    #[error("region {region}: crossing geodesic {chord} crosses same-sign chord {other:?}")]
    SameSignCrossing { region: RegionId, chord: String, other: ChordId },
    #[error("region {0}: gap midpoints coincide")]
    Degenerate(RegionId),
    #[error("completed instance fails validation: {0}")]
    Invalid(ValidationReport),
}

/// Bridges first (edge order), then adjacent edge pairs of every simple
/// cycle block.
pub fn disconnectors(g: &LinkageGraph) -> Result<Vec<Disconnector>, CompletionError> {
    let cs = CycleStructure::of(g);
    if !cs.is_simple() {
        return Err(CompletionError::NotSimple(g.region));
    }
    let split = |removed: &[usize], anchor: usize| -> ([Vec<usize>; 2], bool) {
        let mut comps = cs.graph.components_without(removed);
        let first = comps.iter().position(|c| c.contains(&anchor)).expect("anchor present");
        let a = comps.swap_remove(first);
        let b: Vec<usize> = {
            let mut rest: Vec<usize> = comps.into_iter().flatten().collect();
            rest.sort_unstable();
            rest
        };
        let cut = a.len() >= 2 && b.len() >= 2;
        ([a, b], cut)
    };
    let mut out = Vec::new();
    let mut bridges: Vec<usize> = cs
        .blocks
        .iter()
        .filter(|b| b.kind == BlockKind::Bridge)
        .map(|b| b.edges[0])
        .collect();
    bridges.sort_unstable();
    for e in bridges {
        let (components, is_cut) = split(&[e], g.edges[e].u);
        out.push(Disconnector { region: g.region, kind: DisconnectorKind::Edge(e), components, is_cut });
    }
    let mut cycles: Vec<_> = cs.blocks.iter().filter(|b| b.kind == BlockKind::Cycle).collect();
    cycles.sort_by_key(|b| b.edges.clone());
    for b in cycles {
        for &v0 in &b.vertices {
            let mut inc = b.edges.iter().copied().filter(|&e| g.edges[e].u == v0 || g.edges[e].v == v0);
            let (e1, e2) = (inc.next().expect("cycle edge"), inc.next().expect("cycle edge"));
            let (components, is_cut) = split(&[e1, e2], v0);
            out.push(Disconnector {
                region: g.region,
                kind: DisconnectorKind::Pair { e1, e2, v0 },
                components,
                is_cut,
            });
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossingGeodesic {
    pub chord: Chord,
    pub disconnector: Disconnector,
    /// The side returned verbatim, when the geodesic is an existing side.
    pub existing: Option<ChordId>,
    /// Gap arcs whose midpoints are the endpoints, for new chords.
    pub gaps: Option<[(CirclePoint, CirclePoint); 2]>,
    /// Opposite chords crossed (the witnesses of the disconnector).
    pub witnesses: Vec<ChordId>,
}

fn witnesses(g: &LinkageGraph, d: &Disconnector) -> Vec<ChordId> {
    let set: BTreeSet<ChordId> =
        d.edges().into_iter().flat_map(|e| g.edges[e].witnesses.iter().copied()).collect();
    set.into_iter().collect()
}

/// Closed boundary span of a cyclically contiguous vertex set.
fn span(region: &Region, g: &LinkageGraph, comp: &[usize]) -> Option<(CirclePoint, CirclePoint)> {
    let n = g.vertices.len();
    let inside = |v: usize| comp.binary_search(&v).is_ok();
    let starts: Vec<usize> = comp.iter().copied().filter(|&v| !inside((v + n - 1) % n)).collect();
    if starts.len() != 1 {
        return None;
    }
    let first = starts[0];
    let last = (first + comp.len() - 1) % n;
    Some((g.extent(region, first).0, g.extent(region, last).1))
}

fn midpoint_or_point(from: &CirclePoint, to: &CirclePoint) -> CirclePoint {
    if from == to {
        from.clone()
    } else {
        from.ccw_midpoint(to)
    }
}

pub fn crossing_geodesic(
    an: &Analysis,
    g: &LinkageGraph,
    d: &Disconnector,
) -> Result<CrossingGeodesic, CompletionError> {
    let inst = an.inst;
    let region = an.region(d.region);
    let w = witnesses(g, d);
    let verbatim = match d.kind {
        DisconnectorKind::Edge(_) => d
            .components
            .iter()
            .find(|c| c.len() == 1 && g.vertices[c[0]].is_geodesic() && g.degree(c[0]) == 1)
            .map(|c| c[0]),
        DisconnectorKind::Pair { v0, .. } => Some(v0).filter(|&v| g.degree(v) == 2 && g.vertices[v].is_geodesic()),
    };
    if let Some(v) = verbatim.and_then(|v| g.vertices[v].chord()) {
        return Ok(CrossingGeodesic {
            chord: inst.chord(v).clone(),
            disconnector: d.clone(),
            existing: Some(v),
            gaps: None,
            witnesses: w,
        });
    }
    let nc = CompletionError::NonContiguous(d.region);
    let (s1, e1) = span(region, g, &d.components[0]).ok_or(nc.clone())?;
    let (s2, e2) = span(region, g, &d.components[1]).ok_or(nc)?;
    let p = midpoint_or_point(&e1, &s2);
    let q = midpoint_or_point(&e2, &s1);
    let chord = Chord::new(p, q, region.sign(), Status::Leaf, [false, false])
        .map_err(|_: DegenerateChord| CompletionError::Degenerate(d.region))?;
    verify(inst, d.region, &chord, &w)?;
    let existing = inst.find(chord.sign, &chord.a, &chord.b);
    Ok(CrossingGeodesic { chord, disconnector: d.clone(), existing, gaps: Some([(e1, s2), (e2, s1)]), witnesses: w })
}

/// The chord must cross exactly the witnesses and no same-sign chord.
fn verify(inst: &LamInstance, region: RegionId, chord: &Chord, expected: &[ChordId]) -> Result<(), CompletionError> {
    let found: Vec<ChordId> =
        inst.ids(chord.sign.opposite()).filter(|&id| inst.chord(id).crosses(chord)).collect();
    if found != expected {
        return Err(CompletionError::Characterization {
            region,
            chord: chord.label(),
            expected: expected.to_vec(),
            found,
        });
    }
    if let Some(other) = inst.ids(chord.sign).find(|&id| inst.chord(id).crosses(chord)) {
        return Err(CompletionError::SameSignCrossing { region, chord: chord.label(), other });
    }
    Ok(())
}

/// One chord added by the completion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletionRecord {
    pub region: RegionId,
    pub disconnector: String,
    pub gaps: [(CirclePoint, CirclePoint); 2],
    pub chord: Chord,
    pub witnesses: Vec<ChordId>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Completion {
    pub instance: LamInstance,
    pub added: Vec<CompletionRecord>,
    pub notes: Vec<String>,
    /// Phantom sides of genuine regions that are not high-valence; these
    /// become leaves.
    pub promoted: Vec<ChordId>,
}

pub const TRIVIAL_REGION_NOTE: &str =
    "geodesics of trivial complementary regions: none, a finite instance has no trivial regions";

pub fn complete(inst: &LamInstance) -> Result<LamInstance, CompletionError> {
    complete_with_log(inst).map(|c| c.instance)
}

/// Adds the crossing geodesics of every disconnecting pair and of every
/// disconnecting edge between two geodesic vertices, over all genuine
/// regions of both signs, in one pass.
pub fn complete_with_log(inst: &LamInstance) -> Result<Completion, CompletionError> {
    let an = Analysis::new(inst);
    let report = check_completable_with(&an);
    if !report.overall {
        return Err(CompletionError::NotCompletable(Box::new(report)));
    }
    let mut added: Vec<CompletionRecord> = Vec::new();
    let mut seen: BTreeSet<(Sign, CirclePoint, CirclePoint)> = BTreeSet::new();
    let high: BTreeSet<ChordId> = high_valence_sides(&an).into_iter().map(|v| v.leaf).collect();
    let promoted: BTreeSet<ChordId> = an
        .genuine_regions()
        .flat_map(|r| r.sides().map(|(_, id, _)| id))
        .filter(|&id| !inst.chord(id).is_leaf() && !high.contains(&id))
        .collect();
    for (region, g) in an.genuine_graphs() {
        for d in disconnectors(g)? {
            if let DisconnectorKind::Edge(e) = d.kind {
                let edge = &g.edges[e];
                if !(g.vertices[edge.u].is_geodesic() && g.vertices[edge.v].is_geodesic()) {
                    continue;
                }
            }
            let cg = crossing_geodesic(&an, g, &d)?;
            if cg.existing.is_some() {
                continue;
            }
            let key = (cg.chord.sign, cg.chord.a.clone(), cg.chord.b.clone());
            if !seen.insert(key) {
                continue;
            }
            added.push(CompletionRecord {
                region: region.id,
                disconnector: d.describe(g, inst),
                gaps: cg.gaps.expect("new chords come from gaps"),
                chord: cg.chord,
                witnesses: cg.witnesses,
            });
        }
    }
    let instance = inst
        .map_chords(|c| match inst.find(c.sign, &c.a, &c.b) {
            Some(id) if promoted.contains(&id) => Chord { status: Status::Leaf, ..c.clone() },
            _ => c.clone(),
        })
        .with_chords(added.iter().map(|r| r.chord.clone()));
    let check = validate(&instance);
    if !check.is_empty() {
        return Err(CompletionError::Invalid(check));
    }
    Ok(Completion {
        instance,
        added,
        notes: vec![TRIVIAL_REGION_NOTE.to_string()],
        promoted: promoted.into_iter().collect(),
    })
}

impl fmt::Display for CompletionRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} in {} via {}; gaps ({},{}) and ({},{})",
            self.chord.label(),
            self.region,
            self.disconnector,
            self.gaps[0].0,
            self.gaps[0].1,
            self.gaps[1].0,
            self.gaps[1].1
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtensionError {
    #[error("region {0} is not genuine")]
    NotGenuine(RegionId),
    #[error("segment does not lie in an ideal arc of region {0}")]
    NotAnArc(RegionId),
    #[error("pivot {0} is not a member endpoint of the segment")]
    NotMember(CirclePoint),
    #[error("no room around pivot {0}")]
    NoRoom(CirclePoint),
    #[error("extension fails validation: {0}")]
    Invalid(ValidationReport),
}

/// Inserts `k` nested same-sign leaves straddling `pivot`, the `j`-th at
/// half-width `d / 2^j` where `d` is the distance to the nearest other
/// endpoint. Each is accumulated on its pivot side.
pub fn alternative_extension(
    inst: &LamInstance,
    segment: &IdealSegment,
    pivot: &CirclePoint,
    k: usize,
) -> Result<LamInstance, ExtensionError> {
    let families = [Sign::Plus, Sign::Minus].map(|s| crate::regions::family_regions(inst, s));
    let fam = families.iter().find(|f| f.sign == segment.region.sign).expect("sign present");
    let region = fam
        .regions
        .get(segment.region.index)
        .ok_or(ExtensionError::NotAnArc(segment.region))?;
    if !region.genuine {
        return Err(ExtensionError::NotGenuine(region.id));
    }
    let Some(Piece::Arc(_)) = region.pieces.get(segment.piece) else {
        return Err(ExtensionError::NotAnArc(region.id));
    };
    if !segment.members.iter().any(|(_, p)| p == pivot) {
        return Err(ExtensionError::NotMember(pivot.clone()));
    }
    if k == 0 {
        return Ok(inst.clone());
    }
    let others: Vec<&CirclePoint> =
        inst.chords().flat_map(|c| [&c.a, &c.b]).filter(|p| *p != pivot).collect();
    let d = others
        .iter()
        .flat_map(|p| [p.ccw_offset(pivot), pivot.ccw_offset(p)])
        .min()
        .ok_or_else(|| ExtensionError::NoRoom(pivot.clone()))?;
    let mut delta = d;
    let two = num_rational::BigRational::from_integer(2.into());
    let mut chords = Vec::with_capacity(k);
    for _ in 0..k {
        delta /= &two;
        let lo = pivot.shifted(&-delta.clone());
        let hi = pivot.shifted(&delta);
        let mut c = Chord::new(lo, hi, region.sign(), Status::Leaf, [false, false])
            .map_err(|_| ExtensionError::NoRoom(pivot.clone()))?;
        let side = c.side_containing(pivot).expect("pivot is not an endpoint");
        c.acc[side.index()] = true;
        chords.push(c);
    }
    let out = inst.with_chords(chords);
    let check = validate(&out);
    if !check.is_empty() {
        return Err(ExtensionError::Invalid(check));
    }
    Ok(out)
}

/// Ideal vertex segments of a genuine graph, for locating extension targets.
pub fn segments_of(g: &LinkageGraph) -> Vec<&IdealSegment> {
    g.vertices
        .iter()
        .filter_map(|v| match v {
            Vertex::Ideal(s) => Some(s),
            Vertex::Geodesic { .. } => None,
        })
        .collect()
}
