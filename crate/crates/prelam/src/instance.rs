//! The annotated pair of chord families and its validation.

use std::collections::BTreeMap;
use std::fmt;

use crate::circle::{CirclePoint, Chord, Side, Sign, Status};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Mode {
    /// Accumulation flags are ignored.
    Strict,
    #[default]
    Frontier,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Strict => "strict",
            Mode::Frontier => "frontier",
        }
    }

    pub fn parse(s: &str) -> Option<Mode> {
        match s {
            "strict" => Some(Mode::Strict),
            "frontier" => Some(Mode::Frontier),
            _ => None,
        }
    }
}

/// Index of a chord within its sign's family (families are kept sorted).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChordId {
    pub sign: Sign,
    pub index: usize,
}

impl ChordId {
    pub fn new(sign: Sign, index: usize) -> Self {
        ChordId { sign, index }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LamInstance {
    pub mode: Mode,
    plus: Vec<Chord>,
    minus: Vec<Chord>,
}

impl LamInstance {
    /// Sorts each family by endpoints. No validation is performed.
    pub fn new(mode: Mode, chords: impl IntoIterator<Item = Chord>) -> Self {
        let mut plus = Vec::new();
        let mut minus = Vec::new();
        for c in chords {
            match c.sign {
                Sign::Plus => plus.push(c),
                Sign::Minus => minus.push(c),
            }
        }
        let key = |c: &Chord| (c.a.clone(), c.b.clone());
        plus.sort_by_key(key);
        minus.sort_by_key(key);
        LamInstance { mode, plus, minus }
    }

    /// Builds and validates.
    pub fn validated(
        mode: Mode,
        chords: impl IntoIterator<Item = Chord>,
    ) -> Result<Self, ValidationReport> {
        let inst = LamInstance::new(mode, chords);
        let report = validate(&inst);
        if report.is_empty() {
            Ok(inst)
        } else {
            Err(report)
        }
    }

    pub fn empty(mode: Mode) -> Self {
        LamInstance::new(mode, [])
    }

    pub fn family(&self, sign: Sign) -> &[Chord] {
        match sign {
            Sign::Plus => &self.plus,
            Sign::Minus => &self.minus,
        }
    }

    pub fn chord(&self, id: ChordId) -> &Chord {
        &self.family(id.sign)[id.index]
    }

    pub fn chords(&self) -> impl Iterator<Item = &Chord> {
        self.plus.iter().chain(self.minus.iter())
    }

    pub fn ids(&self, sign: Sign) -> impl Iterator<Item = ChordId> {
        (0..self.family(sign).len()).map(move |i| ChordId::new(sign, i))
    }

    pub fn all_ids(&self) -> impl Iterator<Item = ChordId> + '_ {
        self.ids(Sign::Plus).chain(self.ids(Sign::Minus))
    }

    pub fn len(&self) -> usize {
        self.plus.len() + self.minus.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Accumulation flag as seen under the instance's mode.
    pub fn acc(&self, id: ChordId, side: Side) -> bool {
        self.mode == Mode::Frontier && self.chord(id).acc(side)
    }

    /// Locates a chord by sign and endpoints.
    pub fn find(&self, sign: Sign, p: &CirclePoint, q: &CirclePoint) -> Option<ChordId> {
        let (a, b) = if p <= q { (p, q) } else { (q, p) };
        self.family(sign)
            .binary_search_by(|c| (&c.a, &c.b).cmp(&(a, b)))
            .ok()
            .map(|i| ChordId::new(sign, i))
    }

    pub fn with_mode(&self, mode: Mode) -> Self {
        LamInstance { mode, ..self.clone() }
    }

    /// Returns a copy with extra chords merged in (re-sorted).
    pub fn with_chords(&self, extra: impl IntoIterator<Item = Chord>) -> Self {
        LamInstance::new(self.mode, self.chords().cloned().chain(extra))
    }

    /// Returns a copy with `f` applied to every chord.
    pub fn map_chords(&self, mut f: impl FnMut(&Chord) -> Chord) -> Self {
        LamInstance::new(self.mode, self.chords().map(&mut f).collect::<Vec<_>>())
    }

    pub fn crossing_count(&self) -> usize {
        let idx = PointIndex::new(self);
        let plus: Vec<_> = self.ids(Sign::Plus).map(|id| idx.ranks(self, id)).collect();
        let minus: Vec<_> = self.ids(Sign::Minus).map(|id| idx.ranks(self, id)).collect();
        plus.iter()
            .map(|&x| minus.iter().filter(|&&y| ranks_cross(x, y)).count())
            .sum()
    }
}

/// Dense integer ranks for every endpoint of an instance. Rank comparisons
/// agree with rational comparisons, which keeps hot loops cheap.
#[derive(Clone, Debug)]
pub struct PointIndex {
    points: Vec<CirclePoint>,
}

impl PointIndex {
    pub fn new(inst: &LamInstance) -> Self {
        let mut points: Vec<CirclePoint> =
            inst.chords().flat_map(|c| [c.a.clone(), c.b.clone()]).collect();
        points.sort();
        points.dedup();
        PointIndex { points }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn rank(&self, p: &CirclePoint) -> Option<usize> {
        self.points.binary_search(p).ok()
    }

    pub fn point(&self, rank: usize) -> &CirclePoint {
        &self.points[rank]
    }

    pub fn points(&self) -> &[CirclePoint] {
        &self.points
    }

    pub fn ranks(&self, inst: &LamInstance, id: ChordId) -> (usize, usize) {
        let c = inst.chord(id);
        (
            self.rank(&c.a).expect("endpoint indexed"),
            self.rank(&c.b).expect("endpoint indexed"),
        )
    }
}

/// Crossing test on ranked chords `(a, b)` with `a < b`.
pub fn ranks_cross(x: (usize, usize), y: (usize, usize)) -> bool {
    if x.0 == y.0 || x.0 == y.1 || x.1 == y.0 || x.1 == y.1 {
        return false;
    }
    let inside = |p: usize| y.0 < p && p < y.1;
    inside(x.0) != inside(x.1)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    SameSignCrossing { first: ChordId, second: ChordId },
    DuplicateChord { first: ChordId, second: ChordId },
    Transversality { plus: ChordId, minus: ChordId },
    PhantomUnaccumulated { chord: ChordId },
}

impl Violation {
    pub fn code(&self) -> &'static str {
        match self {
            Violation::SameSignCrossing { .. } => "same-sign-crossing",
            Violation::DuplicateChord { .. } => "duplicate-chord",
            Violation::Transversality { .. } => "transversality",
            Violation::PhantomUnaccumulated { .. } => "phantom-unaccumulated",
        }
    }

    pub fn describe(&self, inst: &LamInstance) -> String {
        let l = |id: &ChordId| inst.chord(*id).label();
        match self {
            Violation::SameSignCrossing { first, second } => {
                format!("{} crosses {} of the same sign", l(first), l(second))
            }
            Violation::DuplicateChord { first, .. } => format!("{} listed twice", l(first)),
            Violation::Transversality { plus, .. } => {
                format!("{{{},{}}} appears in both families", inst.chord(*plus).a, inst.chord(*plus).b)
            }
            Violation::PhantomUnaccumulated { chord } => {
                format!("phantom {} has no accumulated side", l(chord))
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.violations {
            writeln!(f, "{}", v.code())?;
        }
        Ok(())
    }
}

/// Lists every same-sign crossing pair, every duplicate, every chord shared by
/// both families, and every phantom lacking an accumulated side. Accumulation
/// is read from the raw flags, independent of mode.
pub fn validate(inst: &LamInstance) -> ValidationReport {
    let idx = PointIndex::new(inst);
    let mut violations = Vec::new();
    for sign in Sign::BOTH {
        let ranked: Vec<_> = inst.ids(sign).map(|id| (id, idx.ranks(inst, id))).collect();
        for (i, &(x, rx)) in ranked.iter().enumerate() {
            for &(y, ry) in &ranked[i + 1..] {
                if rx == ry {
                    violations.push(Violation::DuplicateChord { first: x, second: y });
                } else if ranks_cross(rx, ry) {
                    violations.push(Violation::SameSignCrossing { first: x, second: y });
                }
            }
        }
    }
    let mut minus_by_ends: BTreeMap<(usize, usize), ChordId> = BTreeMap::new();
    for id in inst.ids(Sign::Minus) {
        minus_by_ends.entry(idx.ranks(inst, id)).or_insert(id);
    }
    for id in inst.ids(Sign::Plus) {
        if let Some(&m) = minus_by_ends.get(&idx.ranks(inst, id)) {
            violations.push(Violation::Transversality { plus: id, minus: m });
        }
    }
    for id in inst.all_ids() {
        let c = inst.chord(id);
        if c.status == Status::Phantom && !c.acc[0] && !c.acc[1] {
            violations.push(Violation::PhantomUnaccumulated { chord: id });
        }
    }
    ValidationReport { violations }
}
