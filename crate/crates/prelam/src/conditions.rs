//! The completability conditions and the realization conditions.

use std::collections::BTreeMap;
use std::fmt;

use crate::analysis::{Analysis, CycleStructure};
use crate::circle::{cyclic_between, CirclePoint, Side, Sign, Status};
use crate::graph::BlockKind;
use crate::instance::{ranks_cross, ChordId, LamInstance, PointIndex};
use crate::regions::{LinkageError, LinkageGraph, Piece, Region, RegionId, Vertex};

/// Crossing-graph connectivity over all chords of both signs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Connectedness {
    pub pass: bool,
    /// Each component sorted; components ordered by first chord.
    pub components: Vec<Vec<ChordId>>,
}

pub fn check_connectedness(inst: &LamInstance) -> Connectedness {
    let idx = PointIndex::new(inst);
    let ranks = |sign| inst.ids(sign).map(|id| (id, idx.ranks(inst, id))).collect::<Vec<_>>();
    let mut unvisited = [ranks(Sign::Plus), ranks(Sign::Minus)];
    let slot = |s: Sign| match s {
        Sign::Plus => 0,
        Sign::Minus => 1,
    };
    let mut components = Vec::new();
    while let Some(start) = unvisited[0].pop().or_else(|| unvisited[1].pop()) {
        let mut comp = vec![start.0];
        let mut queue = vec![start];
        while let Some((id, r)) = queue.pop() {
            let other = &mut unvisited[slot(id.sign.opposite())];
            let mut i = 0;
            while i < other.len() {
                if ranks_cross(r, other[i].1) {
                    let hit = other.swap_remove(i);
                    comp.push(hit.0);
                    queue.push(hit);
                } else {
                    i += 1;
                }
            }
        }
        comp.sort();
        components.push(comp);
    }
    components.sort();
    Connectedness { pass: components.len() <= 1, components }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleCycleViolation {
    pub region: RegionId,
    /// Index into the region's graph edges.
    pub edge: usize,
    /// Two distinct cycles through the edge, as vertex sequences.
    pub cycles: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleCycle {
    pub pass: bool,
    pub violations: Vec<SimpleCycleViolation>,
}

pub fn check_simple_cycle(an: &Analysis) -> SimpleCycle {
    let mut violations = Vec::new();
    for (region, g) in an.genuine_graphs() {
        let cs = CycleStructure::of(g);
        for b in cs.blocks.iter().filter(|b| b.kind == BlockKind::Complex) {
            let edge = b.edges[0];
            let cycles = cs.graph.cycles_through(edge, &b.edges, 2);
            violations.push(SimpleCycleViolation { region: region.id, edge, cycles });
        }
    }
    SimpleCycle { pass: violations.is_empty(), violations }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Clause {
    /// Valence at least 3 on a cycle.
    I,
    /// Valence at least 2, on no cycle.
    II,
    /// Degenerate two-vertex graph.
    III,
    /// Valence at least 2 in both adjacent regions.
    IV,
}

impl Clause {
    pub fn roman(self) -> &'static str {
        match self {
            Clause::I => "i",
            Clause::II => "ii",
            Clause::III => "iii",
            Clause::IV => "iv",
        }
    }

    pub fn label(self) -> String {
        format!("high-valence ({})", self.roman())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HighValenceViolation {
    pub leaf: ChordId,
    pub clause: Clause,
    pub regions: Vec<RegionId>,
}

pub fn check_high_valence(an: &Analysis) -> Vec<HighValenceViolation> {
    high_valence_sides(an).into_iter().filter(|v| an.inst.chord(v.leaf).is_leaf()).collect()
}

/// Every chord, leaf or phantom, meeting a high-valence clause in a genuine
/// region, grouped by chord and clause.
pub fn high_valence_sides(an: &Analysis) -> Vec<HighValenceViolation> {
    let inst = an.inst;
    let mut hits: BTreeMap<(ChordId, Clause), Vec<RegionId>> = BTreeMap::new();
    let mut flag = |leaf: ChordId, clause: Clause, region: RegionId| {
        let v = hits.entry((leaf, clause)).or_default();
        if !v.contains(&region) {
            v.push(region);
        }
    };
    for (region, g) in an.genuine_graphs() {
        let cs = CycleStructure::of(g);
        for (v, vert) in g.vertices.iter().enumerate() {
            let Some(chord) = vert.chord() else { continue };
            let deg = cs.graph.degree(v);
            if deg >= 3 && cs.on_cycle[v] {
                flag(chord, Clause::I, region.id);
            }
            if deg >= 2 && !cs.on_cycle[v] {
                flag(chord, Clause::II, region.id);
            }
            if g.vertices.len() == 2 {
                flag(chord, Clause::III, region.id);
            }
        }
    }
    for id in inst.all_ids() {
        let sides = [Side::Ab, Side::Ba].map(|s| an.region_of_side(id, s));
        let valence = |r: RegionId| match an.graph(r) {
            Some(Ok(g)) => g.vertex_of_chord(id).map(|v| g.degree(v)),
            _ => None,
        };
        if sides.iter().all(|&r| valence(r).is_some_and(|d| d >= 2)) {
            for r in sides {
                flag(id, Clause::IV, r);
            }
        }
    }
    hits.into_iter()
        .map(|((leaf, clause), mut regions)| {
            regions.sort();
            HighValenceViolation { leaf, clause, regions }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SharedEndpointViolation {
    pub point: CirclePoint,
    pub leaves: [ChordId; 3],
    pub transverse: ChordId,
}

/// Three same-sign leaves at a common endpoint crossing one opposite leaf.
pub fn check_shared_endpoint(inst: &LamInstance) -> Vec<SharedEndpointViolation> {
    let idx = PointIndex::new(inst);
    let mut out = Vec::new();
    for sign in Sign::BOTH {
        let mut at: BTreeMap<usize, Vec<ChordId>> = BTreeMap::new();
        for id in inst.ids(sign).filter(|&id| inst.chord(id).is_leaf()) {
            let (a, b) = idx.ranks(inst, id);
            at.entry(a).or_default().push(id);
            at.entry(b).or_default().push(id);
        }
        for (p, leaves) in at.into_iter().filter(|(_, l)| l.len() >= 3) {
            for t in inst.ids(sign.opposite()).filter(|&t| inst.chord(t).is_leaf()) {
                let rt = idx.ranks(inst, t);
                let crossing: Vec<ChordId> = leaves
                    .iter()
                    .copied()
                    .filter(|&l| ranks_cross(idx.ranks(inst, l), rt))
                    .collect();
                if crossing.len() >= 3 {
                    out.push(SharedEndpointViolation {
                        point: idx.point(p).clone(),
                        leaves: [crossing[0], crossing[1], crossing[2]],
                        transverse: t,
                    });
                }
            }
        }
    }
    out
}

/// Aggregate of the four conditions plus any linkage defects.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionReport {
    pub connectedness: Connectedness,
    pub simple_cycle: SimpleCycle,
    pub high_valence: Vec<HighValenceViolation>,
    pub shared_endpoint: Vec<SharedEndpointViolation>,
    pub defects: Vec<LinkageError>,
    pub overall: bool,
}

/// Stated in every report: density has no finite test and is assumed.
pub const DENSITY_NOTE: &str =
    "density of endpoints is assumed, not checked; phantom chords stand in for omitted leaves";

pub fn check_completable(inst: &LamInstance) -> ConditionReport {
    let an = Analysis::new(inst);
    check_completable_with(&an)
}

pub fn check_completable_with(an: &Analysis) -> ConditionReport {
    let connectedness = check_connectedness(an.inst);
    let simple_cycle = check_simple_cycle(an);
    let high_valence = check_high_valence(an);
    let shared_endpoint = check_shared_endpoint(an.inst);
    let defects = an.defects();
    let overall = connectedness.pass
        && simple_cycle.pass
        && high_valence.is_empty()
        && shared_endpoint.is_empty()
        && defects.is_empty();
    ConditionReport { connectedness, simple_cycle, high_valence, shared_endpoint, defects, overall }
}

impl ConditionReport {
    pub fn write_text(&self, inst: &LamInstance, f: &mut impl fmt::Write) -> fmt::Result {
        let l = |id: &ChordId| inst.chord(*id).label();
        writeln!(f, "note: {DENSITY_NOTE}")?;
        let verdict = |p: bool| if p { "pass" } else { "FAIL" };
        writeln!(
            f,
            "connectedness: {} ({} component{})",
            verdict(self.connectedness.pass),
            self.connectedness.components.len(),
            if self.connectedness.components.len() == 1 { "" } else { "s" }
        )?;
        writeln!(f, "simple-cycle: {}", verdict(self.simple_cycle.pass))?;
        for v in &self.simple_cycle.violations {
            writeln!(f, "  region {} edge #{} lies on cycles {:?}", v.region, v.edge, v.cycles)?;
        }
        writeln!(f, "high-valence: {}", verdict(self.high_valence.is_empty()))?;
        for v in &self.high_valence {
            let regions: Vec<String> = v.regions.iter().map(|r| r.to_string()).collect();
            writeln!(f, "  {} {} in {}", v.clause.label(), l(&v.leaf), regions.join(", "))?;
        }
        writeln!(f, "shared-endpoint: {}", verdict(self.shared_endpoint.is_empty()))?;
        for v in &self.shared_endpoint {
            writeln!(
                f,
                "  at {}: {}, {}, {} all cross {}",
                v.point,
                l(&v.leaves[0]),
                l(&v.leaves[1]),
                l(&v.leaves[2]),
                l(&v.transverse)
            )?;
        }
        if !self.defects.is_empty() {
            writeln!(f, "linkage defects:")?;
            for d in &self.defects {
                writeln!(f, "  {}", d)?;
            }
        }
        writeln!(f, "overall: {}", verdict(self.overall))
    }
}

/// Shape of a genuine region as required for realization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RegionShape {
    IdealPolygon,
    OneRoot { root: ChordId },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RealizationProblem {
    Linkage(LinkageError),
    /// The graph is neither a valid cycle nor a valid rooted star.
    BadShape { region: RegionId, reason: String },
    Unpaired { region: RegionId },
    AmbiguousPairing { region: RegionId },
    SharedPolygonSide { chord: ChordId },
}

impl RealizationProblem {
    pub fn code(&self) -> &'static str {
        match self {
            RealizationProblem::Linkage(_) => "linkage-defect",
            RealizationProblem::BadShape { .. } => "region-shape",
            RealizationProblem::Unpaired { .. } => "unpaired-polygon",
            RealizationProblem::AmbiguousPairing { .. } => "ambiguous-pairing",
            RealizationProblem::SharedPolygonSide { .. } => "shared-polygon-side",
        }
    }

    pub fn describe(&self, inst: &LamInstance) -> String {
        match self {
            RealizationProblem::Linkage(e) => e.to_string(),
            RealizationProblem::BadShape { region, reason } => format!("region {region}: {reason}"),
            RealizationProblem::Unpaired { region } => {
                format!("ideal polygon {region} has no interleaved partner")
            }
            RealizationProblem::AmbiguousPairing { region } => {
                format!("ideal polygon {region} interleaves with several polygons")
            }
            RealizationProblem::SharedPolygonSide { chord } => {
                format!("{} bounds two ideal polygons", inst.chord(*chord).label())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealizationReport {
    pub pass: bool,
    pub shapes: Vec<(RegionId, RegionShape)>,
    /// (plus polygon, minus polygon).
    pub pairs: Vec<(RegionId, RegionId)>,
    pub problems: Vec<RealizationProblem>,
}

fn is_ideal_polygon(inst: &LamInstance, g: &LinkageGraph) -> Result<(), String> {
    let n = g.vertices.len();
    let cs = CycleStructure::of(g);
    if n < 3 || g.edges.len() != n || !cs.graph.is_connected() || (0..n).any(|v| g.degree(v) != 2) {
        return Err("graph is not a cycle".into());
    }
    for v in &g.vertices {
        match v.chord() {
            None => return Err("cycle passes through an ideal vertex".into()),
            Some(c) if !inst.chord(c).is_leaf() => {
                return Err(format!("polygon side {} is not a leaf", inst.chord(c).label()))
            }
            _ => {}
        }
    }
    Ok(())
}

/// Opposite leaves meeting the interior of the region.
fn traversing_leaves(an: &Analysis, region: &Region) -> Vec<ChordId> {
    let inst = an.inst;
    let corners = region.corners();
    inst.ids(region.sign().opposite())
        .filter(|&id| {
            let c = inst.chord(id);
            c.is_leaf()
                && (region.sides().any(|(_, s, _)| inst.chord(s).crosses(c))
                    || region.ideal_interior_contains(&c.a)
                    || region.ideal_interior_contains(&c.b)
                    || (corners.contains(&c.a) && corners.contains(&c.b)))
        })
        .collect()
}

fn one_root(an: &Analysis, region: &Region, g: &LinkageGraph) -> Result<ChordId, String> {
    let inst = an.inst;
    let n = g.vertices.len();
    if n < 2 || g.edges.len() != n - 1 || !CycleStructure::of(g).graph.is_connected() {
        return Err("graph is neither a cycle nor a star".into());
    }
    let mut reason = String::from("graph is neither a cycle nor a star");
    for center in (0..n).filter(|&v| g.degree(v) == n - 1) {
        let Vertex::Geodesic { chord: root, .. } = g.vertices[center] else {
            reason = "star center is an ideal vertex".into();
            continue;
        };
        if inst.chord(root).status != Status::Phantom {
            reason = format!("star center {} is not a phantom", inst.chord(root).label());
            continue;
        }
        let other_side = g
            .vertices
            .iter()
            .filter_map(Vertex::chord)
            .find(|&c| c != root && !inst.chord(c).is_leaf());
        if let Some(c) = other_side {
            reason = format!("non-root side {} is not a leaf", inst.chord(c).label());
            continue;
        }
        let root_chord = inst.chord(root);
        if let Some(miss) = traversing_leaves(an, region).into_iter().find(|&b| !root_chord.crosses(inst.chord(b))) {
            reason = format!("{} meets the region but avoids root {}", inst.chord(miss).label(), root_chord.label());
            continue;
        }
        return Ok(root);
    }
    Err(reason)
}

/// True iff the two point sets have equal size and alternate around the
/// circle.
pub fn interleaved(p: &[CirclePoint], q: &[CirclePoint]) -> bool {
    let dup = |v: &[CirclePoint]| v.iter().map(|x| (x.clone(), x.clone())).collect::<Vec<_>>();
    interleaved_arcs(&dup(p), &dup(q))
}

/// True iff the two sets of closed arcs `[from, to]` have equal size, are
/// pairwise disjoint, and alternate around the circle.
pub fn interleaved_arcs(p: &[(CirclePoint, CirclePoint)], q: &[(CirclePoint, CirclePoint)]) -> bool {
    if p.len() != q.len() || p.is_empty() {
        return false;
    }
    let mut all: Vec<(&(CirclePoint, CirclePoint), bool)> =
        p.iter().map(|x| (x, true)).chain(q.iter().map(|x| (x, false))).collect();
    all.sort_by(|x, y| x.0 .0.cmp(&y.0 .0));
    let n = all.len();
    (0..n).all(|i| {
        let (cur, tag) = all[i];
        let (next, next_tag) = all[(i + 1) % n];
        // `next` must start strictly after `cur` ends and before `cur` starts again.
        tag != next_tag && cur.1 != next.0 && (cur.0 == cur.1 || !cyclic_between(&cur.0, &next.0, &cur.1))
    })
}

/// Boundary arcs between consecutive geodesic sides, degenerate at shared
/// corners. These play the part of a polygon's ideal vertices.
pub fn vertex_arcs(region: &Region) -> Vec<(CirclePoint, CirclePoint)> {
    let sides: Vec<(&CirclePoint, &CirclePoint)> = region
        .pieces
        .iter()
        .filter_map(|p| match p {
            Piece::Side { from, to, .. } => Some((from, to)),
            Piece::Arc(_) => None,
        })
        .collect();
    (0..sides.len()).map(|i| (sides[i].1.clone(), sides[(i + 1) % sides.len()].0.clone())).collect()
}

pub fn check_realization(inst: &LamInstance) -> RealizationReport {
    check_realization_with(&Analysis::new(inst))
}

pub fn check_realization_with(an: &Analysis) -> RealizationReport {
    let inst = an.inst;
    let mut shapes = Vec::new();
    let mut problems = Vec::new();
    for region in an.genuine_regions() {
        let g = match an.graph(region.id).expect("genuine region has a graph") {
            Ok(g) => g,
            Err(e) => {
                problems.push(RealizationProblem::Linkage(e.clone()));
                continue;
            }
        };
        match is_ideal_polygon(inst, g) {
            Ok(()) => shapes.push((region.id, RegionShape::IdealPolygon)),
            Err(poly_reason) => match one_root(an, region, g) {
                Ok(root) => shapes.push((region.id, RegionShape::OneRoot { root })),
                Err(root_reason) => {
                    let reason = if g.edges.len() == g.vertices.len() { poly_reason } else { root_reason };
                    problems.push(RealizationProblem::BadShape { region: region.id, reason });
                }
            },
        }
    }
    let polygons: Vec<&Region> = shapes
        .iter()
        .filter(|(_, s)| *s == RegionShape::IdealPolygon)
        .map(|(id, _)| an.region(*id))
        .collect();
    let mut bounding: BTreeMap<ChordId, usize> = BTreeMap::new();
    for p in &polygons {
        for (_, c, _) in p.sides() {
            *bounding.entry(c).or_default() += 1;
        }
    }
    problems.extend(
        bounding
            .into_iter()
            .filter(|&(_, n)| n > 1)
            .map(|(chord, _)| RealizationProblem::SharedPolygonSide { chord }),
    );
    let (pairs, pair_problems) = couple(&polygons);
    problems.extend(pair_problems);
    RealizationReport { pass: problems.is_empty(), shapes, pairs, problems }
}

/// Pairs plus and minus polygons by interleaving of corners.
fn couple(polygons: &[&Region]) -> (Vec<(RegionId, RegionId)>, Vec<RealizationProblem>) {
    let of = |s: Sign| polygons.iter().filter(move |r| r.sign() == s).collect::<Vec<_>>();
    let plus = of(Sign::Plus);
    let minus = of(Sign::Minus);
    let partners = |r: &Region, others: &[&&Region]| -> Vec<RegionId> {
        let rc = vertex_arcs(r);
        others.iter().filter(|o| interleaved_arcs(&rc, &vertex_arcs(o))).map(|o| o.id).collect()
    };
    let mut pairs = Vec::new();
    let mut problems = Vec::new();
    for (mine, theirs) in [(&plus, &minus), (&minus, &plus)] {
        for r in mine.iter() {
            match partners(r, theirs).as_slice() {
                [] => problems.push(RealizationProblem::Unpaired { region: r.id }),
                [o] => {
                    if r.sign() == Sign::Plus {
                        pairs.push((r.id, *o));
                    }
                }
                _ => problems.push(RealizationProblem::AmbiguousPairing { region: r.id }),
            }
        }
    }
    (pairs, problems)
}

/// True iff no genuine region's linkage graph contains a cycle.
pub fn classify_nonsingular(inst: &LamInstance) -> bool {
    Analysis::new(inst).genuine_graphs().all(|(_, g)| !CycleStructure::of(g).has_cycle())
}
