//! Crossing space, its classes, coupled polygons, per-leaf orders, and
//! transport of instances along monotone circle maps.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::analysis::Analysis;
use crate::circle::{CirclePoint, Chord, Sign};
use crate::conditions::{check_realization_with, RealizationProblem, RegionShape};
use crate::instance::{validate, ChordId, LamInstance, PointIndex, ValidationReport};
use crate::regions::{traversal_indexed, Piece, RegionId};

/// Class key of a chord: its ideal polygon if it bounds one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Key {
    Chord(ChordId),
    Polygon(RegionId),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ClassKind {
    /// A single crossing.
    Single,
    /// A chord across one ideal polygon.
    ChordPolygon,
    /// Two uncoupled ideal polygons.
    Uncoupled,
    /// A coupled pair: a singular point with `k` prongs.
    Singular { k: usize },
}

impl ClassKind {
    pub fn number(self) -> u8 {
        match self {
            ClassKind::Single => 1,
            ClassKind::ChordPolygon => 2,
            ClassKind::Uncoupled => 3,
            ClassKind::Singular { .. } => 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Class {
    pub kind: ClassKind,
    pub keys: (Key, Key),
    /// Indices into `CrossingSpace::points`, ascending.
    pub members: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossingSpace {
    /// Crossing `(plus, minus)` pairs in id order.
    pub points: Vec<(ChordId, ChordId)>,
    pub classes: Vec<Class>,
    pub class_of: Vec<usize>,
}

impl CrossingSpace {
    pub fn singular(&self) -> impl Iterator<Item = (usize, &Class)> {
        self.classes.iter().enumerate().filter(|(_, c)| matches!(c.kind, ClassKind::Singular { .. }))
    }

    pub fn class_of_pair(&self, plus: ChordId, minus: ChordId) -> Option<usize> {
        self.points.binary_search(&(plus, minus)).ok().map(|i| self.class_of[i])
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlaneError {
    #[error("{0:?} bounds two ideal polygons")]
    SharedPolygonSide(ChordId),
    #[error("class {class} meets {leaf:?} in non-adjacent or more than two crossings")]
    BadLeafOrder { leaf: ChordId, class: usize },
    #[error("realization problems: {0:?}")]
    Realization(Vec<RealizationProblem>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoupledPair {
    pub plus: RegionId,
    pub minus: RegionId,
    /// Each plus side with the minus side whose first corner it spans.
    pub pairing: Vec<(ChordId, ChordId)>,
}

impl CoupledPair {
    pub fn prongs(&self) -> usize {
        self.pairing.len()
    }
}

struct Polygons {
    of_chord: BTreeMap<ChordId, RegionId>,
    pairs: Vec<(RegionId, RegionId)>,
    sides: BTreeMap<RegionId, usize>,
    problems: Vec<RealizationProblem>,
}

fn polygons(an: &Analysis) -> Polygons {
    let report = check_realization_with(an);
    let mut of_chord = BTreeMap::new();
    let mut sides = BTreeMap::new();
    for (id, shape) in &report.shapes {
        if *shape == RegionShape::IdealPolygon {
            let r = an.region(*id);
            sides.insert(*id, r.side_count());
            for (_, c, _) in r.sides() {
                of_chord.insert(c, *id);
            }
        }
    }
    Polygons { of_chord, pairs: report.pairs, sides, problems: report.problems }
}

pub fn crossing_space(inst: &LamInstance) -> Result<CrossingSpace, PlaneError> {
    let an = Analysis::new(inst);
    let polys = polygons(&an);
    if let Some(RealizationProblem::SharedPolygonSide { chord }) =
        polys.problems.iter().find(|p| matches!(p, RealizationProblem::SharedPolygonSide { .. }))
    {
        return Err(PlaneError::SharedPolygonSide(*chord));
    }
    let key = |id: ChordId| polys.of_chord.get(&id).map_or(Key::Chord(id), |r| Key::Polygon(*r));
    let idx = &an.index;
    let minus: Vec<_> = inst.ids(Sign::Minus).map(|m| (m, idx.ranks(inst, m))).collect();
    let mut points = Vec::new();
    for p in inst.ids(Sign::Plus) {
        let rp = idx.ranks(inst, p);
        points.extend(minus.iter().filter(|(_, rm)| crate::instance::ranks_cross(rp, *rm)).map(|(m, _)| (p, *m)));
    }
    let mut by_key: BTreeMap<(Key, Key), usize> = BTreeMap::new();
    let mut classes: Vec<Class> = Vec::new();
    let mut class_of = Vec::with_capacity(points.len());
    for (i, &(p, m)) in points.iter().enumerate() {
        let keys = (key(p), key(m));
        let c = *by_key.entry(keys).or_insert_with(|| {
            let kind = match keys {
                (Key::Chord(_), Key::Chord(_)) => ClassKind::Single,
                (Key::Polygon(a), Key::Polygon(b)) if polys.pairs.contains(&(a, b)) => {
                    ClassKind::Singular { k: polys.sides[&a] }
                }
                (Key::Polygon(_), Key::Polygon(_)) => ClassKind::Uncoupled,
                _ => ClassKind::ChordPolygon,
            };
            classes.push(Class { kind, keys, members: Vec::new() });
            classes.len() - 1
        });
        classes[c].members.push(i);
        class_of.push(c);
    }
    Ok(CrossingSpace { points, classes, class_of })
}

/// Classes met along `leaf`, in traversal order, with consecutive repeats
/// collapsed.
pub fn leaf_order(inst: &LamInstance, space: &CrossingSpace, leaf: ChordId) -> Result<Vec<usize>, PlaneError> {
    let idx = PointIndex::new(inst);
    let seq: Vec<usize> = traversal_indexed(&idx, inst, leaf)
        .into_iter()
        .map(|other| {
            let (p, m) = if leaf.sign == Sign::Plus { (leaf, other) } else { (other, leaf) };
            space.class_of_pair(p, m).expect("crossing pair indexed")
        })
        .collect();
    let mut out: Vec<usize> = Vec::new();
    let mut run = 0;
    for c in seq {
        if out.last() == Some(&c) {
            run += 1;
            if run > 2 {
                return Err(PlaneError::BadLeafOrder { leaf, class: c });
            }
        } else {
            if out.contains(&c) {
                return Err(PlaneError::BadLeafOrder { leaf, class: c });
            }
            out.push(c);
            run = 1;
        }
    }
    Ok(out)
}

pub fn coupled_polygons(inst: &LamInstance) -> Result<Vec<CoupledPair>, PlaneError> {
    let an = Analysis::new(inst);
    let polys = polygons(&an);
    let blocking: Vec<RealizationProblem> = polys
        .problems
        .iter()
        .filter(|p| {
            matches!(
                p,
                RealizationProblem::Unpaired { .. }
                    | RealizationProblem::AmbiguousPairing { .. }
                    | RealizationProblem::SharedPolygonSide { .. }
            )
        })
        .cloned()
        .collect();
    if !blocking.is_empty() {
        return Err(PlaneError::Realization(blocking));
    }
    let sides_of = |id: RegionId| -> Vec<(ChordId, CirclePoint, CirclePoint)> {
        an.region(id)
            .pieces
            .iter()
            .filter_map(|p| match p {
                Piece::Side { chord, from, to, .. } => Some((*chord, from.clone(), to.clone())),
                Piece::Arc(_) => None,
            })
            .collect()
    };
    Ok(polys
        .pairs
        .iter()
        .map(|&(plus, minus)| {
            let ms = sides_of(minus);
            let pairing = sides_of(plus)
                .into_iter()
                .map(|(c, from, to)| {
                    let m = ms
                        .iter()
                        .find(|(_, mf, _)| crate::circle::cyclic_between(&from, mf, &to))
                        .expect("interleaved corners");
                    (c, m.0)
                })
                .collect();
            CoupledPair { plus, minus, pairing }
        })
        .collect())
}

/// Faces of the disc cut by both families together. No three chords meet
/// at an interior point, so each crossing adds one face.
pub fn joint_face_count(inst: &LamInstance) -> usize {
    1 + inst.len() + inst.crossing_count()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("point {0} is mapped twice")]
    DuplicateSource(CirclePoint),
    #[error("map is not injective at {0}")]
    NotInjective(CirclePoint),
    #[error("map does not preserve cyclic order")]
    NotMonotone,
    #[error("map is undefined at {0}")]
    Undefined(CirclePoint),
    #[error("transported instance fails validation: {0}")]
    Invalid(ValidationReport),
}

/// A finite cyclic-order-preserving bijection between circle points.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MapTable {
    map: BTreeMap<CirclePoint, CirclePoint>,
}

impl MapTable {
    pub fn new(pairs: impl IntoIterator<Item = (CirclePoint, CirclePoint)>) -> Result<Self, MapError> {
        let mut map = BTreeMap::new();
        for (from, to) in pairs {
            if map.insert(from.clone(), to).is_some() {
                return Err(MapError::DuplicateSource(from));
            }
        }
        let mut images: Vec<&CirclePoint> = map.values().collect();
        images.sort();
        if let Some(w) = images.windows(2).find(|w| w[0] == w[1]) {
            return Err(MapError::NotInjective(w[0].clone()));
        }
        let seq: Vec<&CirclePoint> = map.values().collect();
        let n = seq.len();
        if n >= 3 {
            let descents = (0..n).filter(|&i| seq[i] > seq[(i + 1) % n]).count();
            if descents != 1 {
                return Err(MapError::NotMonotone);
            }
        }
        Ok(MapTable { map })
    }

    pub fn identity(points: &[CirclePoint]) -> Self {
        MapTable { map: points.iter().map(|p| (p.clone(), p.clone())).collect() }
    }

    /// Rotation by `r` on the given points.
    pub fn rotation(points: &[CirclePoint], r: &num_rational::BigRational) -> Self {
        MapTable { map: points.iter().map(|p| (p.clone(), p.shifted(r))).collect() }
    }

    pub fn get(&self, p: &CirclePoint) -> Option<&CirclePoint> {
        self.map.get(p)
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&CirclePoint, &CirclePoint)> {
        self.map.iter()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

/// Relabels every endpoint through `map`. Side flags follow their arcs.
pub fn transport(inst: &LamInstance, map: &MapTable) -> Result<LamInstance, MapError> {
    let image = |p: &CirclePoint| map.get(p).cloned().ok_or_else(|| MapError::Undefined(p.clone()));
    let mut chords = Vec::with_capacity(inst.len());
    for c in inst.chords() {
        let (fa, fb) = (image(&c.a)?, image(&c.b)?);
        // Orientation is preserved, so arc (a, b) maps to arc (f(a), f(b)).
        chords.push(Chord::new(fa, fb, c.sign, c.status, c.acc).expect("injective map"));
    }
    let out = LamInstance::new(inst.mode, chords);
    let report = validate(&out);
    if !report.is_empty() {
        return Err(MapError::Invalid(report));
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Invariance {
    pub invariant: bool,
    /// The image equals the instance with the two signs exchanged.
    pub sign_swapped: bool,
}

pub fn check_invariance(inst: &LamInstance, map: &MapTable) -> Result<Invariance, MapError> {
    let out = transport(inst, map)?;
    let swapped = out.map_chords(|c| Chord { sign: c.sign.opposite(), ..c.clone() });
    Ok(Invariance { invariant: out == *inst, sign_swapped: swapped == *inst })
}
