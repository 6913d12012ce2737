//! Complementary regions of one chord family, leaf traversals, ideal segments,
//! and linkage graphs.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::circle::{Arc, CirclePoint, Side, Sign};
use crate::instance::{ChordId, LamInstance, Mode, PointIndex};

/// Region `0` of a sign is the one containing the arc just before `0`;
/// region `i + 1` lies on the `ab` side of chord `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RegionId {
    pub sign: Sign,
    pub index: usize,
}

impl RegionId {
    pub fn new(sign: Sign, index: usize) -> Self {
        RegionId { sign, index }
    }
}

impl fmt::Display for RegionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.sign.name(), self.index)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("region id must look like `plus:3` or `minus:0`, got `{0}`")]
pub struct RegionIdError(pub String);

impl FromStr for RegionId {
    type Err = RegionIdError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || RegionIdError(s.to_string());
        let (sign, index) = s.split_once(':').ok_or_else(err)?;
        let sign = match sign {
            "plus" | "+" => Sign::Plus,
            "minus" | "-" => Sign::Minus,
            _ => return Err(err()),
        };
        Ok(RegionId { sign, index: index.parse().map_err(|_| err())? })
    }
}

/// One piece of a region boundary, traversed counterclockwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Piece {
    /// A chord side running from corner `from` to corner `to`; the region
    /// faces the ideal arc `(to, from)`.
    Side { chord: ChordId, side: Side, from: CirclePoint, to: CirclePoint },
    Arc(Arc),
}

impl Piece {
    pub fn from(&self) -> &CirclePoint {
        match self {
            Piece::Side { from, .. } => from,
            Piece::Arc(a) => &a.from,
        }
    }

    pub fn to(&self) -> &CirclePoint {
        match self {
            Piece::Side { to, .. } => to,
            Piece::Arc(a) => &a.to,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region {
    pub id: RegionId,
    /// Counterclockwise boundary starting at the smallest corner. Empty when
    /// the family has no chords (the whole disc).
    pub pieces: Vec<Piece>,
    pub genuine: bool,
}

impl Region {
    pub fn sign(&self) -> Sign {
        self.id.sign
    }

    pub fn is_whole_disc(&self) -> bool {
        self.pieces.is_empty()
    }

    /// `(piece index, chord, side)` for every geodesic side.
    pub fn sides(&self) -> impl Iterator<Item = (usize, ChordId, Side)> + '_ {
        self.pieces.iter().enumerate().filter_map(|(i, p)| match p {
            Piece::Side { chord, side, .. } => Some((i, *chord, *side)),
            Piece::Arc(_) => None,
        })
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, &Arc)> + '_ {
        self.pieces.iter().enumerate().filter_map(|(i, p)| match p {
            Piece::Arc(a) => Some((i, a)),
            Piece::Side { .. } => None,
        })
    }

    pub fn corners(&self) -> Vec<CirclePoint> {
        self.pieces.iter().map(|p| p.from().clone()).collect()
    }

    pub fn side_count(&self) -> usize {
        self.sides().count()
    }

    /// True iff `p` lies strictly inside one of the region's ideal arcs.
    pub fn ideal_interior_contains(&self, p: &CirclePoint) -> bool {
        self.is_whole_disc() || self.arcs().any(|(_, a)| a.contains(p))
    }
}

/// The regions of one sign together with the nesting forest of its chords.
#[derive(Clone, Debug)]
pub struct FamilyRegions {
    pub sign: Sign,
    pub regions: Vec<Region>,
    parent: Vec<Option<usize>>,
}

impl FamilyRegions {
    /// Region on the given side of chord `index` of this family.
    pub fn region_of_side(&self, index: usize, side: Side) -> RegionId {
        let i = match side {
            Side::Ab => index + 1,
            Side::Ba => self.parent[index].map_or(0, |p| p + 1),
        };
        RegionId::new(self.sign, i)
    }

    pub fn get(&self, id: RegionId) -> &Region {
        assert_eq!(id.sign, self.sign);
        &self.regions[id.index]
    }
}

/// Faces of the disc cut along the chords of `sign`; there is one more face
/// than chords. Computed by a stack sweep over the sorted endpoints.
pub fn complementary_regions(inst: &LamInstance, sign: Sign) -> Vec<Region> {
    family_regions(inst, sign).regions
}

pub fn family_regions(inst: &LamInstance, sign: Sign) -> FamilyRegions {
    let family = inst.family(sign);
    let n = family.len();
    // Outer chords first among equal left endpoints.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        family[i].a.cmp(&family[j].a).then_with(|| family[j].b.cmp(&family[i].b))
    });
    let mut parent = vec![None; n];
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut top = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    for &i in &order {
        while let Some(&s) = stack.last() {
            if family[s].b <= family[i].a {
                stack.pop();
            } else {
                break;
            }
        }
        match stack.last() {
            Some(&s) => {
                parent[i] = Some(s);
                children[s].push(i);
            }
            None => top.push(i),
        }
        stack.push(i);
    }

    let side_piece = |i: usize, side: Side| {
        let c = &family[i];
        let (from, to) = match side {
            Side::Ba => (c.a.clone(), c.b.clone()),
            Side::Ab => (c.b.clone(), c.a.clone()),
        };
        Piece::Side { chord: ChordId::new(sign, i), side, from, to }
    };
    let genuine = |pieces: &[Piece]| {
        inst.mode == Mode::Strict
            || pieces.iter().all(|p| match p {
                Piece::Side { chord, side, .. } => !inst.acc(*chord, *side),
                Piece::Arc(_) => true,
            })
    };

    let mut regions = Vec::with_capacity(n + 1);
    let mut root = Vec::new();
    if let Some(&first) = top.first() {
        let start = family[first].a.clone();
        let mut cur = start.clone();
        for &c in &top {
            if let Some(arc) = Arc::new(cur.clone(), family[c].a.clone()) {
                root.push(Piece::Arc(arc));
            }
            root.push(side_piece(c, Side::Ba));
            cur = family[c].b.clone();
        }
        root.push(Piece::Arc(Arc::new(cur, start).expect("wrap arc is nondegenerate")));
    }
    regions.push(Region { id: RegionId::new(sign, 0), genuine: genuine(&root), pieces: root });

    for i in 0..n {
        let c = &family[i];
        let mut pieces = Vec::new();
        let mut cur = c.a.clone();
        for &k in &children[i] {
            if let Some(arc) = Arc::new(cur.clone(), family[k].a.clone()) {
                pieces.push(Piece::Arc(arc));
            }
            pieces.push(side_piece(k, Side::Ba));
            cur = family[k].b.clone();
        }
        if let Some(arc) = Arc::new(cur, c.b.clone()) {
            pieces.push(Piece::Arc(arc));
        }
        pieces.push(side_piece(i, Side::Ab));
        regions.push(Region { id: RegionId::new(sign, i + 1), genuine: genuine(&pieces), pieces });
    }
    FamilyRegions { sign, regions, parent }
}

/// Opposite-sign chords crossing `leaf`, ordered along it from its smaller
/// endpoint.
pub fn traversal(inst: &LamInstance, leaf: ChordId) -> Vec<ChordId> {
    traversal_indexed(&PointIndex::new(inst), inst, leaf)
}

pub fn traversal_indexed(idx: &PointIndex, inst: &LamInstance, leaf: ChordId) -> Vec<ChordId> {
    let (a, b) = idx.ranks(inst, leaf);
    let n = idx.len();
    let mut keyed: Vec<((usize, std::cmp::Reverse<usize>), ChordId)> = inst
        .ids(leaf.sign.opposite())
        .filter_map(|id| {
            let (c, d) = idx.ranks(inst, id);
            if !crate::instance::ranks_cross((a, b), (c, d)) {
                return None;
            }
            let (near, far) = if a < c && c < b { (c, d) } else { (d, c) };
            // Counterclockwise distance from the start `a`, in rank units.
            let far_key = if far > b { far } else { far + n };
            Some(((near, std::cmp::Reverse(far_key)), id))
        })
        .collect();
    keyed.sort();
    keyed.into_iter().map(|(_, id)| id).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealSegment {
    pub region: RegionId,
    /// Index of the boundary arc containing the segment.
    pub piece: usize,
    /// Closed span from the first to the last member endpoint.
    pub span: (CirclePoint, CirclePoint),
    pub members: Vec<(ChordId, CirclePoint)>,
    /// Piece index of the side crossed by every member.
    pub crossing_side: usize,
}

impl IdealSegment {
    pub fn has_member(&self, chord: ChordId) -> bool {
        self.members.iter().any(|(c, _)| *c == chord)
    }

    pub fn has_member_at(&self, p: &CirclePoint) -> bool {
        self.members.iter().any(|(_, q)| q == p)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinkageError {
    #[error("chord {chord:?} has an endpoint inside region {region} but crosses none of its sides")]
    CrossesNoSide { region: RegionId, chord: ChordId },
    #[error("chord {chord:?} crosses more than one side of region {region} from an ideal endpoint")]
    CrossesManySides { region: RegionId, chord: ChordId },
}

impl LinkageError {
    pub fn code(&self) -> &'static str {
        "linkage-defect"
    }

    pub fn chord(&self) -> ChordId {
        match self {
            LinkageError::CrossesNoSide { chord, .. } | LinkageError::CrossesManySides { chord, .. } => *chord,
        }
    }
}

fn crossed_sides(region: &Region, inst: &LamInstance, chord: ChordId) -> Vec<usize> {
    let c = inst.chord(chord);
    region
        .sides()
        .filter(|(_, s, _)| inst.chord(*s).crosses(c))
        .map(|(i, _, _)| i)
        .collect()
}

/// Maximal runs of opposite-sign endpoints inside the region's arcs that
/// cross a common side. Endpoints at corners are excluded.
pub fn ideal_segments(region: &Region, inst: &LamInstance) -> Result<Vec<IdealSegment>, LinkageError> {
    let opposite = region.sign().opposite();
    let mut segments = Vec::new();
    if region.is_whole_disc() {
        if let Some(id) = inst.ids(opposite).next() {
            return Err(LinkageError::CrossesNoSide { region: region.id, chord: id });
        }
        return Ok(segments);
    }
    for (piece, arc) in region.arcs() {
        let mut members = Vec::new();
        for id in inst.ids(opposite) {
            let c = inst.chord(id);
            for (end, far) in [(&c.a, &c.b), (&c.b, &c.a)] {
                if !arc.contains(end) {
                    continue;
                }
                let side = match crossed_sides(region, inst, id).as_slice() {
                    [] => return Err(LinkageError::CrossesNoSide { region: region.id, chord: id }),
                    [s] => *s,
                    _ => return Err(LinkageError::CrossesManySides { region: region.id, chord: id }),
                };
                let key = (arc.from.ccw_offset(end), std::cmp::Reverse(end.ccw_offset(far)));
                members.push((key, id, end.clone(), side));
            }
        }
        members.sort_by(|x, y| x.0.cmp(&y.0).then(x.1.cmp(&y.1)));
        let mut run: Vec<(ChordId, CirclePoint)> = Vec::new();
        let mut run_side = None;
        let mut flush = |run: &mut Vec<(ChordId, CirclePoint)>, side: Option<usize>| {
            if let (Some(first), Some(last), Some(side)) = (run.first(), run.last(), side) {
                segments.push(IdealSegment {
                    region: region.id,
                    piece,
                    span: (first.1.clone(), last.1.clone()),
                    members: std::mem::take(run),
                    crossing_side: side,
                });
            }
        };
        for (_, id, end, side) in members {
            if run_side != Some(side) {
                flush(&mut run, run_side);
                run_side = Some(side);
            }
            run.push((id, end));
        }
        flush(&mut run, run_side);
    }
    Ok(segments)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Vertex {
    Geodesic { piece: usize, chord: ChordId, side: Side },
    Ideal(IdealSegment),
}

impl Vertex {
    pub fn is_geodesic(&self) -> bool {
        matches!(self, Vertex::Geodesic { .. })
    }

    pub fn chord(&self) -> Option<ChordId> {
        match self {
            Vertex::Geodesic { chord, .. } => Some(*chord),
            Vertex::Ideal(_) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkageEdge {
    pub u: usize,
    pub v: usize,
    /// Sorted, nonempty.
    pub witnesses: Vec<ChordId>,
}

impl LinkageEdge {
    pub fn other(&self, x: usize) -> usize {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkageGraph {
    pub region: RegionId,
    /// In boundary order.
    pub vertices: Vec<Vertex>,
    /// Sorted by `(u, v)` with `u < v`.
    pub edges: Vec<LinkageEdge>,
}

impl LinkageGraph {
    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.u == v || e.v == v).count()
    }

    pub fn incident(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges
            .iter()
            .enumerate()
            .filter(move |(_, e)| e.u == v || e.v == v)
            .map(|(i, _)| i)
    }

    pub fn vertex_of_chord(&self, chord: ChordId) -> Option<usize> {
        self.vertices.iter().position(|v| v.chord() == Some(chord))
    }

    pub fn edge_between(&self, u: usize, v: usize) -> Option<usize> {
        let (u, v) = if u < v { (u, v) } else { (v, u) };
        self.edges.iter().position(|e| e.u == u && e.v == v)
    }

    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for (i, e) in self.edges.iter().enumerate() {
            adj[e.u].push((e.v, i));
            adj[e.v].push((e.u, i));
        }
        adj
    }

    /// Closed boundary extent of a vertex: corner to corner for a side, the
    /// member span for an ideal segment.
    pub fn extent(&self, region: &Region, v: usize) -> (CirclePoint, CirclePoint) {
        match &self.vertices[v] {
            Vertex::Geodesic { piece, .. } => {
                let p = &region.pieces[*piece];
                (p.from().clone(), p.to().clone())
            }
            Vertex::Ideal(s) => s.span.clone(),
        }
    }

    pub fn vertex_label(&self, inst: &LamInstance, v: usize) -> String {
        match &self.vertices[v] {
            Vertex::Geodesic { chord, side, .. } => {
                format!("{}[{}]", inst.chord(*chord).label(), side.name())
            }
            Vertex::Ideal(s) => format!("ideal[{},{}]", s.span.0, s.span.1),
        }
    }
}

/// Linkage graph of `region` against the opposite family. Ideal segments of
/// each arc sit at that arc's position in the boundary order.
pub fn linkage_graph(region: &Region, inst: &LamInstance) -> Result<LinkageGraph, LinkageError> {
    let segments = ideal_segments(region, inst)?;
    let mut vertices = Vec::new();
    let mut vertex_of_piece = vec![None; region.pieces.len()];
    let mut segs = segments.into_iter().peekable();
    for (i, piece) in region.pieces.iter().enumerate() {
        match piece {
            Piece::Side { chord, side, .. } => {
                vertex_of_piece[i] = Some(vertices.len());
                vertices.push(Vertex::Geodesic { piece: i, chord: *chord, side: *side });
            }
            Piece::Arc(_) => {
                while let Some(s) = segs.next_if(|s| s.piece == i) {
                    vertices.push(Vertex::Ideal(s));
                }
            }
        }
    }
    let mut edges: BTreeMap<(usize, usize), Vec<ChordId>> = BTreeMap::new();
    for id in inst.ids(region.sign().opposite()) {
        let mut hit: Vec<usize> = crossed_sides(region, inst, id)
            .into_iter()
            .map(|p| vertex_of_piece[p].expect("side vertex"))
            .collect();
        for (k, v) in vertices.iter().enumerate() {
            if let Vertex::Ideal(s) = v {
                if s.has_member(id) {
                    hit.push(k);
                }
            }
        }
        hit.sort_unstable();
        hit.dedup();
        for (i, &u) in hit.iter().enumerate() {
            for &v in &hit[i + 1..] {
                edges.entry((u, v)).or_default().push(id);
            }
        }
    }
    let edges = edges
        .into_iter()
        .map(|((u, v), witnesses)| LinkageEdge { u, v, witnesses })
        .collect();
    Ok(LinkageGraph { region: region.id, vertices, edges })
}
