//! Exact positions on the circle, arcs, and chords.
//!
//! A point is a rational `t` in `[0, 1)`. Only the cyclic order of points is
//! ever consulted by predicates.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PointError {
    #[error("malformed rational `{0}`")]
    Malformed(String),
    #[error("non-lowest-terms rational `{0}`")]
    NotLowestTerms(String),
    #[error("zero or negative denominator in `{0}`")]
    BadDenominator(String),
    #[error("position `{0}` outside [0,1)")]
    OutOfRange(String),
}

impl PointError {
    pub fn code(&self) -> &'static str {
        match self {
            PointError::Malformed(_) => "malformed-rational",
            PointError::NotLowestTerms(_) => "non-lowest-terms",
            PointError::BadDenominator(_) => "bad-denominator",
            PointError::OutOfRange(_) => "out-of-range",
        }
    }
}

/// A point of the circle, stored as its normalized angle `t` with `0 <= t < 1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CirclePoint(BigRational);

impl CirclePoint {
    pub fn new(t: BigRational) -> Result<Self, PointError> {
        if t.is_negative() || t >= BigRational::one() {
            return Err(PointError::OutOfRange(t.to_string()));
        }
        Ok(CirclePoint(t))
    }

    /// Reduces `t` modulo one.
    pub fn wrapping(t: BigRational) -> Self {
        let floor = t.floor();
        CirclePoint(t - floor)
    }

    pub fn from_ratio(numer: i64, denom: i64) -> Result<Self, PointError> {
        if denom <= 0 {
            return Err(PointError::BadDenominator(format!("{numer}/{denom}")));
        }
        Self::new(BigRational::new(numer.into(), denom.into()))
    }

    pub fn zero() -> Self {
        CirclePoint(BigRational::zero())
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn to_f64(&self) -> f64 {
        let n: f64 = self.0.numer().to_string().parse().unwrap_or(0.0);
        let d: f64 = self.0.denom().to_string().parse().unwrap_or(1.0);
        n / d
    }

    /// Counterclockwise distance from `self` to `other`, in `[0, 1)`.
    pub fn ccw_offset(&self, other: &CirclePoint) -> BigRational {
        let d = &other.0 - &self.0;
        if d.is_negative() {
            d + BigRational::one()
        } else {
            d
        }
    }

    /// Moves counterclockwise by `delta` (any sign), wrapping around.
    pub fn shifted(&self, delta: &BigRational) -> CirclePoint {
        CirclePoint::wrapping(&self.0 + delta)
    }

    /// Midpoint of the counterclockwise arc from `self` to `to`; `self` when
    /// the two points coincide.
    pub fn ccw_midpoint(&self, to: &CirclePoint) -> CirclePoint {
        let half = self.ccw_offset(to) / BigRational::from_integer(BigInt::from(2));
        self.shifted(&half)
    }

    /// Parses a strict `p/q` string: integers, `q > 0`, lowest terms, and
    /// `0 <= p/q < 1`.
    pub fn parse(s: &str) -> Result<Self, PointError> {
        let (p, q) = s
            .split_once('/')
            .ok_or_else(|| PointError::Malformed(s.to_string()))?;
        let well_formed = |x: &str| {
            let digits = x.strip_prefix('-').unwrap_or(x);
            !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
        };
        if !well_formed(p) || !well_formed(q) {
            return Err(PointError::Malformed(s.to_string()));
        }
        let p: BigInt = p.parse().map_err(|_| PointError::Malformed(s.to_string()))?;
        let q: BigInt = q.parse().map_err(|_| PointError::Malformed(s.to_string()))?;
        if !q.is_positive() {
            return Err(PointError::BadDenominator(s.to_string()));
        }
        if !p.gcd(&q).is_one() {
            return Err(PointError::NotLowestTerms(s.to_string()));
        }
        let t = BigRational::new_raw(p, q);
        if t.is_negative() || t >= BigRational::one() {
            return Err(PointError::OutOfRange(s.to_string()));
        }
        Ok(CirclePoint(t))
    }
}

impl fmt::Display for CirclePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl fmt::Debug for CirclePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for CirclePoint {
    type Err = PointError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CirclePoint::parse(s)
    }
}

/// Shorthand for building fixture points; panics on invalid input.
pub fn pt(numer: i64, denom: i64) -> CirclePoint {
    CirclePoint::from_ratio(numer, denom).expect("valid circle point")
}

/// True iff `b` lies in the open counterclockwise arc from `a` to `c`.
/// Any coincidence among the three points yields false.
pub fn cyclic_between(a: &CirclePoint, b: &CirclePoint, c: &CirclePoint) -> bool {
    match a.cmp(c) {
        Ordering::Less => a < b && b < c,
        Ordering::Greater => b > a || b < c,
        Ordering::Equal => false,
    }
}

/// Open counterclockwise arc.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arc {
    pub from: CirclePoint,
    pub to: CirclePoint,
}

impl Arc {
    pub fn new(from: CirclePoint, to: CirclePoint) -> Option<Arc> {
        (from != to).then_some(Arc { from, to })
    }

    pub fn contains(&self, p: &CirclePoint) -> bool {
        cyclic_between(&self.from, p, &self.to)
    }

    pub fn midpoint(&self) -> CirclePoint {
        self.from.ccw_midpoint(&self.to)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn opposite(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Sign::Plus => "plus",
            Sign::Minus => "minus",
        }
    }

    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Status {
    Leaf,
    Phantom,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Leaf => "leaf",
            Status::Phantom => "phantom",
        }
    }
}

/// A side of a chord `{a, b}` (`a < b`), named by its ideal arc:
/// `Ab` faces the arc `(a, b)`, `Ba` faces the arc `(b, a)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Ab,
    Ba,
}

impl Side {
    pub fn index(self) -> usize {
        match self {
            Side::Ab => 0,
            Side::Ba => 1,
        }
    }

    pub fn other(self) -> Side {
        match self {
            Side::Ab => Side::Ba,
            Side::Ba => Side::Ab,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Side::Ab => "ab",
            Side::Ba => "ba",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("chord endpoints coincide at {0}")]
pub struct DegenerateChord(pub CirclePoint);

/// An annotated chord, stored with `a < b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Chord {
    pub a: CirclePoint,
    pub b: CirclePoint,
    pub sign: Sign,
    pub status: Status,
    /// `[acc_ab, acc_ba]`.
    pub acc: [bool; 2],
}

impl Chord {
    /// Builds a chord from endpoints in either order. `acc` is given relative
    /// to the order `(p, q)`: `acc[0]` is the side facing the arc `(p, q)`.
    pub fn new(
        p: CirclePoint,
        q: CirclePoint,
        sign: Sign,
        status: Status,
        acc: [bool; 2],
    ) -> Result<Chord, DegenerateChord> {
        match p.cmp(&q) {
            Ordering::Less => Ok(Chord { a: p, b: q, sign, status, acc }),
            Ordering::Greater => Ok(Chord {
                a: q,
                b: p,
                sign,
                status,
                acc: [acc[1], acc[0]],
            }),
            Ordering::Equal => Err(DegenerateChord(p)),
        }
    }

    pub fn leaf(p: CirclePoint, q: CirclePoint, sign: Sign) -> Chord {
        Chord::new(p, q, sign, Status::Leaf, [false, false]).expect("distinct endpoints")
    }

    pub fn endpoints(&self) -> (&CirclePoint, &CirclePoint) {
        (&self.a, &self.b)
    }

    pub fn has_endpoint(&self, p: &CirclePoint) -> bool {
        &self.a == p || &self.b == p
    }

    pub fn other_endpoint(&self, p: &CirclePoint) -> Option<&CirclePoint> {
        if &self.a == p {
            Some(&self.b)
        } else if &self.b == p {
            Some(&self.a)
        } else {
            None
        }
    }

    pub fn shares_endpoint(&self, other: &Chord) -> bool {
        self.has_endpoint(&other.a) || self.has_endpoint(&other.b)
    }

    pub fn same_endpoints(&self, other: &Chord) -> bool {
        self.a == other.a && self.b == other.b
    }

    pub fn side_arc(&self, side: Side) -> Arc {
        match side {
            Side::Ab => Arc { from: self.a.clone(), to: self.b.clone() },
            Side::Ba => Arc { from: self.b.clone(), to: self.a.clone() },
        }
    }

    /// The side whose ideal arc contains `p`; `None` for an endpoint.
    pub fn side_containing(&self, p: &CirclePoint) -> Option<Side> {
        if self.has_endpoint(p) {
            None
        } else if &self.a < p && p < &self.b {
            Some(Side::Ab)
        } else {
            Some(Side::Ba)
        }
    }

    pub fn acc(&self, side: Side) -> bool {
        self.acc[side.index()]
    }

    pub fn is_leaf(&self) -> bool {
        self.status == Status::Leaf
    }

    /// `true` iff `x` and `self` cross; see [`crosses`].
    pub fn crosses(&self, other: &Chord) -> bool {
        crosses(self, other)
    }

    pub fn label(&self) -> String {
        format!("{}{{{},{}}}", self.sign.symbol(), self.a, self.b)
    }
}

/// Exactly one endpoint of `x` lies in the open arc `(y.a, y.b)`; chords
/// sharing an endpoint never cross.
pub fn crosses(x: &Chord, y: &Chord) -> bool {
    if x.shares_endpoint(y) {
        return false;
    }
    let inside = |p: &CirclePoint| &y.a < p && p < &y.b;
    inside(&x.a) != inside(&x.b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn euclid(t: f64) -> (f64, f64) {
        let th = std::f64::consts::TAU * t;
        (th.cos(), th.sin())
    }

    // Segment intersection at float precision, used as an independent check.
    fn segments_intersect(p: (f64, f64), q: (f64, f64), r: (f64, f64), s: (f64, f64)) -> bool {
        let orient = |a: (f64, f64), b: (f64, f64), c: (f64, f64)| {
            (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0)
        };
        let d1 = orient(r, s, p);
        let d2 = orient(r, s, q);
        let d3 = orient(p, q, r);
        let d4 = orient(p, q, s);
        d1 * d2 < 0.0 && d3 * d4 < 0.0
    }

    fn angle_ccw_between(a: f64, b: f64, c: f64) -> bool {
        let norm = |x: f64| x.rem_euclid(1.0);
        let ab = norm(b - a);
        let ac = norm(c - a);
        ab > 0.0 && ab < ac
    }

    #[test]
    fn cyclic_between_examples() {
        assert!(cyclic_between(&pt(0, 1), &pt(1, 4), &pt(1, 2)));
        assert!(!cyclic_between(&pt(0, 1), &pt(3, 4), &pt(1, 2)));
        // Wraparound; the float angle check is the oracle.
        assert!(angle_ccw_between(0.5, 0.0, 0.25));
        assert!(cyclic_between(&pt(1, 2), &pt(0, 1), &pt(1, 4)));
    }

    #[test]
    fn cyclic_between_degenerate_is_false() {
        let a = pt(1, 3);
        assert!(!cyclic_between(&a, &a, &pt(1, 2)));
        assert!(!cyclic_between(&a, &pt(1, 2), &a));
        assert!(!cyclic_between(&pt(1, 2), &a, &a));
    }

    #[test]
    fn crosses_examples() {
        let plus = |p, q| Chord::leaf(p, q, Sign::Plus);
        let minus = |p, q| Chord::leaf(p, q, Sign::Minus);
        assert!(crosses(&plus(pt(0, 1), pt(1, 2)), &minus(pt(1, 4), pt(3, 4))));
        assert!(!crosses(&plus(pt(0, 1), pt(1, 2)), &minus(pt(1, 2), pt(3, 4))));
        let x = plus(pt(1, 20), pt(7, 10));
        let y = minus(pt(3, 10), pt(9, 10));
        assert!(segments_intersect(euclid(0.05), euclid(0.7), euclid(0.3), euclid(0.9)));
        assert!(crosses(&x, &y));
    }

    #[test]
    fn chord_new_canonicalizes_and_swaps_acc() {
        let c = Chord::new(pt(2, 3), pt(0, 1), Sign::Plus, Status::Leaf, [true, false]).unwrap();
        assert_eq!(c.a, pt(0, 1));
        assert_eq!(c.b, pt(2, 3));
        // Side facing arc (2/3, 0) is now side_ba.
        assert_eq!(c.acc, [false, true]);
        assert!(Chord::new(pt(1, 2), pt(1, 2), Sign::Plus, Status::Leaf, [false; 2]).is_err());
    }

    #[test]
    fn parse_rejects_non_lowest_terms() {
        assert_eq!(CirclePoint::parse("2/4"), Err(PointError::NotLowestTerms("2/4".into())));
        assert_eq!(CirclePoint::parse("1/2").unwrap(), pt(1, 2));
        assert_eq!(CirclePoint::parse("0/1").unwrap(), pt(0, 1));
        assert!(matches!(CirclePoint::parse("1/1"), Err(PointError::OutOfRange(_))));
        assert!(matches!(CirclePoint::parse("-1/2"), Err(PointError::OutOfRange(_))));
        assert!(matches!(CirclePoint::parse("1/-2"), Err(PointError::BadDenominator(_))));
        assert!(matches!(CirclePoint::parse("1/0"), Err(PointError::BadDenominator(_))));
        assert!(matches!(CirclePoint::parse("0.5"), Err(PointError::Malformed(_))));
        assert!(matches!(CirclePoint::parse("+1/2"), Err(PointError::Malformed(_))));
        assert!(matches!(CirclePoint::parse(" 1/2"), Err(PointError::Malformed(_))));
    }

    #[test]
    fn midpoint_wraps() {
        assert_eq!(pt(19, 20).ccw_midpoint(&pt(0, 1)), pt(39, 40));
        assert_eq!(pt(9, 20).ccw_midpoint(&pt(1, 2)), pt(19, 40));
        assert_eq!(pt(1, 3).ccw_midpoint(&pt(1, 3)), pt(1, 3));
    }

    #[test]
    fn display_round_trip() {
        for s in ["0/1", "13/25", "203/400"] {
            assert_eq!(CirclePoint::parse(s).unwrap().to_string(), s);
        }
    }
}
