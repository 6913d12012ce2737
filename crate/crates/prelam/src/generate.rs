//! Instance generators: coupled prongs, grids, paths, the strip and lattice
//! truncations, and a seeded random family of completable instances.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::analysis::Analysis;
use crate::circle::{CirclePoint, Chord, Side, Sign, Status};
use crate::conditions::{check_completable_with, check_connectedness, Clause};
use crate::instance::{validate, ChordId, LamInstance, Mode};
use crate::regions::Vertex;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("parameter `{name}`: {reason}")]
    BadParam { name: String, reason: String },
    #[error("generator produced an invalid instance")]
    Invalid,
}

fn bad(name: &str, reason: impl Into<String>) -> GenError {
    GenError::BadParam { name: name.to_string(), reason: reason.into() }
}

fn ratio(n: usize, d: usize) -> CirclePoint {
    CirclePoint::wrapping(BigRational::new(BigInt::from(n), BigInt::from(d)))
}

fn chord(p: CirclePoint, q: CirclePoint, sign: Sign, status: Status, acc: [bool; 2]) -> Chord {
    Chord::new(p, q, sign, status, acc).expect("distinct generator endpoints")
}

fn checked(inst: LamInstance) -> Result<LamInstance, GenError> {
    if validate(&inst).is_empty() {
        Ok(inst)
    } else {
        Err(GenError::Invalid)
    }
}

/// A coupled pair of ideal `k`-gons: plus corners at `i/k`, minus corners
/// at `(2i+1)/(2k)`.
pub fn prong(k: usize) -> Result<LamInstance, GenError> {
    if k < 3 {
        return Err(bad("k", "a prong needs k >= 3"));
    }
    let mut chords = Vec::new();
    for i in 0..k {
        chords.push(chord(ratio(i, k), ratio(i + 1, k), Sign::Plus, Status::Leaf, [true, false]));
        chords.push(chord(ratio(2 * i + 1, 2 * k), ratio(2 * i + 3, 2 * k), Sign::Minus, Status::Leaf, [true, false]));
    }
    checked(LamInstance::new(Mode::Frontier, chords))
}

/// `m` nested plus chords each crossing `n` nested minus chords.
pub fn grid(m: usize, n: usize) -> Result<LamInstance, GenError> {
    if m == 0 {
        return Err(bad("m", "must be at least 1"));
    }
    if n == 0 {
        return Err(bad("n", "must be at least 1"));
    }
    // Slots: plus starts, minus starts, plus ends (inner first), minus ends.
    let total = 2 * (m + n);
    let at = |slot: usize| ratio(2 * slot + 1, 2 * total);
    let mut chords = Vec::with_capacity(m + n);
    for i in 0..m {
        chords.push(chord(at(i), at(2 * m + n - 1 - i), Sign::Plus, Status::Leaf, [true, true]));
    }
    for j in 0..n {
        chords.push(chord(at(m + j), at(total - 1 - j), Sign::Minus, Status::Leaf, [true, true]));
    }
    checked(LamInstance::new(Mode::Frontier, chords))
}

/// A genuine plus region whose linkage graph is a path on `k` sides. The
/// interior sides are phantoms.
pub fn path(k: usize) -> Result<LamInstance, GenError> {
    if k < 3 {
        return Err(bad("k", "a path needs k >= 3"));
    }
    let d = 4 * k;
    let mut chords = Vec::new();
    for i in 0..k {
        let status = if i == 0 || i + 1 == k { Status::Leaf } else { Status::Phantom };
        chords.push(chord(ratio(4 * i, d), ratio(4 * i + 3, d), Sign::Plus, status, [true, false]));
    }
    for i in 0..k - 1 {
        chords.push(chord(ratio(4 * i + 2, d), ratio(4 * i + 5, d), Sign::Minus, Status::Leaf, [true, true]));
    }
    checked(LamInstance::new(Mode::Frontier, chords))
}

/// Boundary positions assigned by rank of an ordering key.
struct Ranker<K: Ord + Clone> {
    keys: BTreeSet<K>,
}

impl<K: Ord + Clone> Ranker<K> {
    fn new() -> Self {
        Ranker { keys: BTreeSet::new() }
    }

    fn add(&mut self, k: &K) {
        self.keys.insert(k.clone());
    }

    fn positions(&self) -> BTreeMap<K, CirclePoint> {
        let n = self.keys.len() + 1;
        self.keys.iter().enumerate().map(|(i, k)| (k.clone(), ratio(i + 1, n))).collect()
    }
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Horizontal and vertical leaves of the band `|x - y| < 1`, with each
/// slab `|y - 4i| <= 1/2` (for `i < bands`) replaced by a pair of phantoms.
/// `steps` leaves per unit length.
pub fn strip(bands: usize, steps: usize) -> Result<LamInstance, GenError> {
    if bands == 0 {
        return Err(bad("bands", "must be at least 1"));
    }
    if steps < 2 {
        return Err(bad("steps", "must be at least 2"));
    }
    let s = steps as i64;
    let lo = -2 * s;
    let hi = (4 * (bands as i64 - 1) + 2) * s;
    let half = rat(1, 2);
    let in_slab = |c: &BigRational| (0..bands as i64).any(|i| (c - rat(4 * i, 1)).abs() <= half);
    // Boundary key: (line, t) with line 0 walked up, line 1 walked down.
    type Key = (u8, BigRational);
    let lower = |t: BigRational| -> Key { (0, t) };
    let upper = |t: BigRational| -> Key { (1, -t) };
    // Horizontal y = c runs from upper t = c - 1 to lower t = c.
    let mut horizontal: Vec<(BigRational, Status)> = (lo..=hi)
        .map(|k| rat(k, s))
        .filter(|c| !in_slab(c))
        .map(|c| (c, Status::Leaf))
        .collect();
    for i in 0..bands as i64 {
        horizontal.push((rat(8 * i - 1, 2), Status::Phantom));
        horizontal.push((rat(8 * i + 1, 2), Status::Phantom));
    }
    // Vertical x = c runs from lower t = c - 1 to upper t = c.
    let vertical: Vec<BigRational> = (lo..=hi).map(|k| rat(3 * k + 1, 3 * s)).collect();
    let one = BigRational::one();
    let mut ranker = Ranker::new();
    for (c, _) in &horizontal {
        ranker.add(&upper(c - &one));
        ranker.add(&lower(c.clone()));
    }
    for c in &vertical {
        ranker.add(&lower(c - &one));
        ranker.add(&upper(c.clone()));
    }
    let pos = ranker.positions();
    let mut chords = Vec::new();
    for (c, status) in &horizontal {
        // Arc (lower end, upper end) runs through the upper-right end of the
        // band, above the leaf.
        let (p, q) = (pos[&lower(c.clone())].clone(), pos[&upper(c - &one)].clone());
        let acc = match status {
            Status::Leaf => [true, true],
            Status::Phantom => {
                let above_slab = (0..bands as i64).any(|i| *c == rat(8 * i + 1, 2));
                if above_slab {
                    [true, false]
                } else {
                    [false, true]
                }
            }
        };
        chords.push(chord(p, q, Sign::Plus, *status, acc));
    }
    for c in &vertical {
        let (p, q) = (pos[&lower(c - &one)].clone(), pos[&upper(c.clone())].clone());
        chords.push(chord(p, q, Sign::Minus, Status::Leaf, [true, true]));
    }
    checked(LamInstance::new(Mode::Frontier, chords))
}

/// Slit-box truncation of the plane punctured at `(i + j, i mu + j nu)`.
/// Each puncture column is slit downward from its topmost puncture in the
/// box `[-radius, radius]^2`; horizontal leaves with `|y| > 1` run between
/// slits, the lines `y = +-1` become phantoms, and vertical leaves cross the
/// whole box.
pub fn lattice(mu: &BigRational, nu: &BigRational, radius: usize, density: usize) -> Result<LamInstance, GenError> {
    if radius < 2 {
        return Err(bad("radius", "must be at least 2"));
    }
    if density == 0 {
        return Err(bad("density", "must be at least 1"));
    }
    if mu == nu {
        return Err(bad("nu", "must differ from mu"));
    }
    let r = radius as i64;
    let rr = BigRational::from_integer(r.into());
    // Topmost puncture of each integer column strictly inside the box.
    let mut top: BTreeMap<i64, BigRational> = BTreeMap::new();
    let span = 4 * r * (1 + (mu.abs() + nu.abs()).ceil().to_integer().try_into().unwrap_or(0i64));
    for i in -span..=span {
        for x in -r + 1..r {
            let j = x - i;
            let y = mu * BigRational::from_integer(i.into()) + nu * BigRational::from_integer(j.into());
            if y.abs() < rr {
                let e = top.entry(x).or_insert_with(|| y.clone());
                if y > *e {
                    *e = y;
                }
            }
        }
    }
    let d = density as i64;
    let blocks = |x: i64, y: &BigRational| top.get(&x).is_some_and(|t| y < t);
    let one = BigRational::one();
    // Horizontal lines: grid values with |y| > 1, plus the phantoms at +-1.
    let mut rows: Vec<(BigRational, Status)> = (-r * d + 1..r * d)
        .map(|k| rat(k, d))
        .filter(|y| y.abs() > one && !top.values().any(|t| t == y))
        .map(|y| (y, Status::Leaf))
        .collect();
    rows.push((-one.clone(), Status::Phantom));
    rows.push((one.clone(), Status::Phantom));
    // Vertical lines: an offset grid plus one between neighbouring columns.
    let mut cols: BTreeSet<BigRational> = (-r * d..r * d).map(|k| rat(3 * k + 1, 3 * d)).collect();
    for x in -r..r {
        cols.insert(rat(2 * x + 1, 2));
    }
    // Boundary keys, counterclockwise: bottom edge and slit sides by x (west
    // side upward, east side downward), right edge, top edge, left edge.
    type Key = (u8, BigRational, u8, BigRational);
    let zero = BigRational::zero();
    let bottom = |x: &BigRational| -> Key { (0, x.clone(), 0, zero.clone()) };
    let west = |x: i64, y: &BigRational| -> Key { (0, BigRational::from_integer(x.into()), 1, y.clone()) };
    let east = |x: i64, y: &BigRational| -> Key { (0, BigRational::from_integer(x.into()), 2, -y.clone()) };
    let right = |y: &BigRational| -> Key { (1, y.clone(), 0, zero.clone()) };
    let top_edge = |x: &BigRational| -> Key { (2, -x.clone(), 0, zero.clone()) };
    let left = |y: &BigRational| -> Key { (3, -y.clone(), 0, zero.clone()) };
    let mut segments: Vec<(Key, Key, Status, bool)> = Vec::new();
    for (y, status) in &rows {
        let mut start = left(y);
        for x in -r + 1..r {
            if blocks(x, y) {
                segments.push((start, west(x, y), *status, *y > zero));
                start = east(x, y);
            }
        }
        segments.push((start, right(y), *status, *y > zero));
    }
    let mut ranker = Ranker::new();
    for (p, q, _, _) in &segments {
        ranker.add(p);
        ranker.add(q);
    }
    for x in &cols {
        ranker.add(&bottom(x));
        ranker.add(&top_edge(x));
    }
    let pos = ranker.positions();
    let mut chords = Vec::new();
    for (p, q, status, upper) in &segments {
        // The arc from the left end to the right end passes below the leaf.
        let acc = match status {
            Status::Leaf => [true, true],
            Status::Phantom if *upper => [false, true],
            Status::Phantom => [true, false],
        };
        chords.push(chord(pos[p].clone(), pos[q].clone(), Sign::Plus, *status, acc));
    }
    for x in &cols {
        chords.push(chord(pos[&bottom(x)].clone(), pos[&top_edge(x)].clone(), Sign::Minus, Status::Leaf, [true, true]));
    }
    checked(LamInstance::new(Mode::Frontier, chords))
}

/// Seeded random completable instance with at most `n` chords per sign.
/// All endpoints are distinct. Half the seeds grow a random crossing graph;
/// the other half link the sides of one region by a random non-crossing tree
/// of opposite-sign chords. High-valence leaves then become phantoms
/// accumulated away from the regions where they are high-valence, except
/// that a two-vertex region is closed off by accumulating its sides, and
/// regions whose linkage graph has a non-simple cycle are closed off by
/// accumulating a side.
pub fn random(seed: u64, n: usize) -> Result<LamInstance, GenError> {
    if n == 0 {
        return Err(bad("n", "must be at least 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tree = n >= 2 && rng.gen_bool(0.5);
    let chords = if tree { random_tree(&mut rng, n) } else { random_growth(&mut rng, n) };
    let mut inst = largest_component(LamInstance::new(Mode::Frontier, chords));
    for _ in 0..4 * inst.len() + 4 {
        if inst.family(Sign::Plus).is_empty() || inst.family(Sign::Minus).is_empty() {
            return random(seed.wrapping_add(0x9e37_79b9), n);
        }
        let an = Analysis::new(&inst);
        let report = check_completable_with(&an);
        let mut acc: BTreeMap<ChordId, [bool; 2]> = inst.all_ids().map(|id| (id, inst.chord(id).acc)).collect();
        let mut phantom: BTreeSet<ChordId> = inst.all_ids().filter(|&id| !inst.chord(id).is_leaf()).collect();
        let mut dropped: BTreeSet<ChordId> = BTreeSet::new();
        for v in &report.high_valence {
            if v.clause == Clause::III {
                for side in [Side::Ab, Side::Ba] {
                    if v.regions.contains(&an.region_of_side(v.leaf, side)) {
                        acc.get_mut(&v.leaf).expect("known chord")[side.index()] = true;
                    }
                }
                continue;
            }
            if !tree {
                dropped.insert(v.leaf);
                continue;
            }
            phantom.insert(v.leaf);
            let a = acc.get_mut(&v.leaf).expect("known chord");
            let mut any = false;
            for side in [Side::Ab, Side::Ba] {
                if !v.regions.contains(&an.region_of_side(v.leaf, side)) {
                    a[side.index()] = true;
                    any = true;
                }
            }
            if !any {
                a[rng.gen_range(0..2)] = true;
            }
        }
        for v in &report.simple_cycle.violations {
            if let Some(Ok(g)) = an.graph(v.region) {
                if let Some(Vertex::Geodesic { chord, side, .. }) = g.vertices.iter().find(|x| x.is_geodesic()) {
                    acc.get_mut(chord).expect("known chord")[side.index()] = true;
                }
            }
        }
        let changed = !report.high_valence.is_empty() || !report.simple_cycle.violations.is_empty();
        if !changed {
            if report.overall {
                return checked(inst);
            }
            break;
        }
        let all = inst
            .all_ids()
            .filter(|id| !dropped.contains(id))
            .map(|id| {
                let c = inst.chord(id);
                let status = if phantom.contains(&id) { Status::Phantom } else { c.status };
                Chord { status, acc: acc[&id], ..c.clone() }
            })
            .collect::<Vec<_>>();
        inst = largest_component(LamInstance::new(Mode::Frontier, all));
    }
    // Fallback: accumulate every side, leaving no genuine region.
    let all = inst.chords().map(|c| Chord { acc: [true, true], ..c.clone() }).collect::<Vec<_>>();
    checked(LamInstance::new(Mode::Frontier, all))
}

fn largest_component(inst: LamInstance) -> LamInstance {
    let keep = check_connectedness(&inst)
        .components
        .into_iter()
        .max_by_key(|c| (c.len(), std::cmp::Reverse(c.first().copied())))
        .unwrap_or_default();
    LamInstance::new(Mode::Frontier, keep.iter().map(|&id| inst.chord(id).clone()).collect::<Vec<_>>())
}

fn random_growth(rng: &mut ChaCha8Rng, n: usize) -> Vec<Chord> {
    let slots = 4 * n + rng.gen_range(0..=4 * n);
    let mut free: Vec<usize> = (0..slots).collect();
    let targets = [rng.gen_range(1..=n), rng.gen_range(1..=n)];
    let mut chords: Vec<Chord> = Vec::new();
    // Each new chord crosses one or two chords of the other sign and none of
    // its own, and no chord is crossed more than three times.
    for _ in 0..(targets[0] + targets[1]) * 40 {
        let open: Vec<Sign> = Sign::BOTH
            .into_iter()
            .zip(targets)
            .filter(|&(s, t)| chords.iter().filter(|c| c.sign == s).count() < t)
            .map(|(s, _)| s)
            .collect();
        if open.is_empty() || free.len() < 2 {
            break;
        }
        let sign = open[rng.gen_range(0..open.len())];
        let i = rng.gen_range(0..free.len());
        let j = rng.gen_range(0..free.len());
        if i == j {
            continue;
        }
        let c = chord(ratio(free[i], slots), ratio(free[j], slots), sign, Status::Leaf, [false, false]);
        let same = chords.iter().any(|d| d.sign == sign && d.crosses(&c));
        let hit: Vec<&Chord> = chords.iter().filter(|d| d.sign != sign && d.crosses(&c)).collect();
        let saturated = hit.iter().any(|d| chords.iter().filter(|e| e.crosses(d)).count() >= 3);
        if !same && !saturated && (chords.is_empty() || (1..=2).contains(&hit.len())) {
            free.remove(i.max(j));
            free.remove(i.min(j));
            chords.push(c);
        }
    }
    chords
}

/// Random non-crossing spanning tree on positions `l..=r` rooted at `l`.
/// Consecutive gaps never occur, and no edge joins two gaps.
fn nc_tree(rng: &mut ChaCha8Rng, is_gap: &[bool], l: usize, r: usize, edges: &mut Vec<(usize, usize)>) {
    if l >= r {
        return;
    }
    let options: Vec<usize> = (l + 1..=r).filter(|&k| !(is_gap[l] && is_gap[k])).collect();
    let k = options[rng.gen_range(0..options.len())];
    edges.push((l, k));
    nc_tree(rng, is_gap, k, r, edges);
    nc_tree(rng, is_gap, l, k - 1, edges);
}

fn random_tree(rng: &mut ChaCha8Rng, n: usize) -> Vec<Chord> {
    let (outer, inner) = if rng.gen_bool(0.5) { (Sign::Plus, Sign::Minus) } else { (Sign::Minus, Sign::Plus) };
    let m = rng.gen_range(2..=n.div_ceil(2).max(2));
    let mut is_gap = Vec::new();
    for _ in 0..m {
        is_gap.push(false);
        if rng.gen_bool(0.3) {
            is_gap.push(true);
        }
    }
    let len = is_gap.len();
    let mut edges = Vec::new();
    nc_tree(rng, &is_gap, 0, len - 1, &mut edges);
    // Endpoints at each position, farther counterclockwise targets first.
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); len];
    for (e, &(u, v)) in edges.iter().enumerate() {
        incident[u].push(e);
        incident[v].push(e);
    }
    let mut t = 0;
    let mut at: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut span: Vec<(usize, usize)> = vec![(0, 0); len];
    for v in 0..len {
        let start = t;
        if !is_gap[v] {
            t += 1;
        }
        let mut inc = incident[v].clone();
        inc.sort_by_key(|&e| {
            let (a, b) = edges[e];
            let u = if a == v { b } else { a };
            std::cmp::Reverse((u + len - v) % len)
        });
        for e in inc {
            at.insert((v, e), t);
            t += 1;
        }
        span[v] = (start, t);
        if !is_gap[v] {
            t += 1;
        }
    }
    let p_leaf_acc: f64 = rng.gen_range(0.3..1.0);
    let mut chords = Vec::new();
    for v in (0..len).filter(|&v| !is_gap[v]) {
        let (start, end) = span[v];
        let status = if incident[v].len() >= 2 { Status::Phantom } else { Status::Leaf };
        let acc_out = status == Status::Phantom || rng.gen_bool(p_leaf_acc);
        chords.push(chord(ratio(start, t), ratio(end, t), outer, status, [acc_out, false]));
    }
    let p_inner_acc: f64 = rng.gen_range(0.0..1.0);
    for (e, &(u, v)) in edges.iter().enumerate() {
        let acc = if rng.gen_bool(p_inner_acc) { [true, true] } else { [rng.gen_bool(0.3), rng.gen_bool(0.3)] };
        chords.push(chord(ratio(at[&(u, e)], t), ratio(at[&(v, e)], t), inner, Status::Leaf, acc));
    }
    chords
}

/// Generates a family by name with `key=value` parameters.
pub fn generate(family: &str, params: &BTreeMap<String, String>) -> Result<LamInstance, GenError> {
    let int = |name: &str, default: usize| -> Result<usize, GenError> {
        params.get(name).map_or(Ok(default), |v| v.parse().map_err(|_| bad(name, "expected a non-negative integer")))
    };
    let rational = |name: &str, default: BigRational| -> Result<BigRational, GenError> {
        params.get(name).map_or(Ok(default), |v| {
            let (p, q) = v.split_once('/').unwrap_or((v, "1"));
            let p: BigInt = p.parse().map_err(|_| bad(name, "expected p/q"))?;
            let q: BigInt = q.parse().map_err(|_| bad(name, "expected p/q"))?;
            if !q.is_positive() {
                return Err(bad(name, "denominator must be positive"));
            }
            Ok(BigRational::new(p, q))
        })
    };
    let known = |names: &[&str]| -> Result<(), GenError> {
        match params.keys().find(|k| !names.contains(&k.as_str())) {
            Some(k) => Err(bad(k, "unknown parameter")),
            None => Ok(()),
        }
    };
    match family {
        "prong" => {
            known(&["k"])?;
            prong(int("k", 3)?)
        }
        "grid" => {
            known(&["m", "n"])?;
            grid(int("m", 3)?, int("n", 3)?)
        }
        "path" => {
            known(&["k"])?;
            path(int("k", 4)?)
        }
        "strip" => {
            known(&["bands", "steps"])?;
            strip(int("bands", 1)?, int("steps", 2)?)
        }
        "lattice" => {
            known(&["mu", "nu", "radius", "density"])?;
            lattice(&rational("mu", rat(1414, 1000))?, &rational("nu", rat(-1732, 1000))?, int("radius", 3)?, int("density", 2)?)
        }
        "random" => {
            known(&["seed", "n"])?;
            let seed = params.get("seed").map_or(Ok(0), |v| v.parse().map_err(|_| bad("seed", "expected an integer")))?;
            random(seed, int("n", 8)?)
        }
        _ => Err(GenError::UnknownFamily(family.to_string())),
    }
}

pub const FAMILIES: [&str; 6] = ["prong", "grid", "path", "strip", "lattice", "random"];
