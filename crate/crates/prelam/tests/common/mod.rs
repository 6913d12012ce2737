//! Independent oracles shared by the integration tests and the acceptance
//! harness. Geometry here is floating point on purpose: it checks the exact
//! combinatorial code against the picture it is supposed to describe.

#![allow(dead_code)]

pub mod fixture_suite;

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::TAU;

use num_rational::BigRational;
use prelam::analysis::Analysis;
use prelam::circle::{CirclePoint, Chord, Side, Sign};
use prelam::instance::{ChordId, LamInstance, Mode};
use prelam::plane::MapTable;
use prelam::regions::{family_regions, Piece, RegionId, Vertex};
use rand::Rng;

pub type P = (f64, f64);

/// Position of `p` on the unit circle after the monotone reparametrization
/// `θ = 2πt + w sin(2πt + φ)`, `|w| < 1`.
pub fn xy_warped(p: &CirclePoint, w: f64, phase: f64) -> P {
    let t = p.to_f64() * TAU;
    let th = t + w * (t + phase).sin();
    (th.cos(), th.sin())
}

pub fn xy(p: &CirclePoint) -> P {
    xy_warped(p, 0.0, 0.0)
}

fn orient(a: P, b: P, c: P) -> f64 {
    (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0)
}

/// Straight segments `ab` and `cd` meet at a point interior to both.
pub fn segments_cross(a: P, b: P, c: P, d: P) -> bool {
    let (o1, o2) = (orient(a, b, c), orient(a, b, d));
    let (o3, o4) = (orient(c, d, a), orient(c, d, b));
    o1 * o2 < 0.0 && o3 * o4 < 0.0
}

/// Crossing decided by drawing the chords.
pub fn chords_cross_euclidean(x: &Chord, y: &Chord) -> bool {
    if x.shares_endpoint(y) {
        return false;
    }
    segments_cross(xy(&x.a), xy(&x.b), xy(&y.a), xy(&y.b))
}

fn arc_mid(from: &CirclePoint, to: &CirclePoint) -> P {
    let a = from.to_f64();
    let mut span = to.to_f64() - a;
    if span <= 0.0 {
        span += 1.0;
    }
    let t = (a + span / 2.0) * TAU;
    (t.cos(), t.sin())
}

/// The endpoints bounding the arc of `side`.
fn side_arc(c: &Chord, side: Side) -> (&CirclePoint, &CirclePoint) {
    match side {
        Side::Ab => (&c.a, &c.b),
        Side::Ba => (&c.b, &c.a),
    }
}

/// Which side of chord `c` the point `p` lies on.
fn side_of(c: &Chord, p: P) -> Side {
    let (a, b) = (xy(&c.a), xy(&c.b));
    let m = arc_mid(&c.a, &c.b);
    if orient(a, b, p).signum() == orient(a, b, m).signum() {
        Side::Ab
    } else {
        Side::Ba
    }
}

/// Region signature of a point: its side of every chord of the family.
fn signature(chords: &[Chord], p: P) -> Vec<Side> {
    chords.iter().map(|c| side_of(c, p)).collect()
}

/// Compares the library's regions of one sign against regions recovered by
/// separation: two sample points share a region iff no chord separates them.
/// Samples sit just off every chord side and just inside every gap between
/// consecutive endpoints. Returns a description of each disagreement.
pub fn region_oracle_disagreements(inst: &LamInstance, sign: Sign) -> Vec<String> {
    let chords = inst.family(sign);
    let fam = family_regions(inst, sign);
    let mut bad = Vec::new();
    if chords.is_empty() {
        if fam.regions.len() != 1 || !fam.regions[0].is_whole_disc() {
            bad.push("empty family must give the whole disc".into());
        }
        return bad;
    }
    const EPS: f64 = 1e-7;
    // Samples: (library region, signature, acc of the side it sits against).
    let mut samples: Vec<(RegionId, Vec<Side>, Option<bool>)> = Vec::new();
    for (i, c) in chords.iter().enumerate() {
        let (a, b) = (xy(&c.a), xy(&c.b));
        let mid = ((a.0 + b.0) / 2.0, (a.1 + b.1) / 2.0);
        for side in [Side::Ab, Side::Ba] {
            let (f, t) = side_arc(c, side);
            let toward = arc_mid(f, t);
            let (dx, dy) = (toward.0 - mid.0, toward.1 - mid.1);
            let len = (dx * dx + dy * dy).sqrt();
            let p = (mid.0 + EPS * dx / len, mid.1 + EPS * dy / len);
            let id = fam.region_of_side(i, side);
            samples.push((id, signature(chords, p), Some(c.acc(side))));
        }
    }
    let mut pts: Vec<CirclePoint> = chords.iter().flat_map(|c| [c.a.clone(), c.b.clone()]).collect();
    pts.sort();
    pts.dedup();
    for (k, p) in pts.iter().enumerate() {
        let q = &pts[(k + 1) % pts.len()];
        let gap_mid = p.ccw_midpoint(q);
        let m = xy(&gap_mid);
        let inside = (m.0 * (1.0 - EPS), m.1 * (1.0 - EPS));
        let owner: Vec<RegionId> = fam
            .regions
            .iter()
            .filter(|r| r.arcs().any(|(_, a)| a.contains(&gap_mid)))
            .map(|r| r.id)
            .collect();
        if owner.len() != 1 {
            bad.push(format!("gap ({p},{q}) lies in {} library arcs", owner.len()));
            continue;
        }
        samples.push((owner[0], signature(chords, inside), None));
    }
    // Same library region iff same signature.
    let mut by_sig: BTreeMap<Vec<u8>, BTreeSet<RegionId>> = BTreeMap::new();
    let mut by_region: BTreeMap<RegionId, BTreeSet<Vec<u8>>> = BTreeMap::new();
    let key = |s: &Vec<Side>| s.iter().map(|x| x.index() as u8).collect::<Vec<u8>>();
    for (id, sig, _) in &samples {
        by_sig.entry(key(sig)).or_default().insert(*id);
        by_region.entry(*id).or_default().insert(key(sig));
    }
    for (sig, ids) in &by_sig {
        if ids.len() > 1 {
            bad.push(format!("one separation class {sig:?} split into library regions {ids:?}"));
        }
    }
    for (id, sigs) in &by_region {
        if sigs.len() > 1 {
            bad.push(format!("library region {id} spans {} separation classes", sigs.len()));
        }
    }
    if by_sig.len() != chords.len() + 1 {
        bad.push(format!("{} separation classes for {} chords", by_sig.len(), chords.len()));
    }
    if fam.regions.len() != by_sig.len() {
        bad.push(format!("{} library regions vs {} separation classes", fam.regions.len(), by_sig.len()));
    }
    // Genuine iff no side facing the region is accumulated toward it.
    for r in &fam.regions {
        let accs: Vec<bool> = samples.iter().filter(|(id, _, _)| *id == r.id).filter_map(|(_, _, a)| *a).collect();
        let expect = inst.mode == Mode::Strict || accs.iter().all(|a| !a);
        if r.genuine != expect {
            bad.push(format!("region {} genuine flag {} expected {}", r.id, r.genuine, expect));
        }
    }
    bad
}

/// Faces of the joint arrangement, by tracing a planar half-edge structure
/// built from drawn chords. Circle arcs are subdivided at their midpoints so
/// every edge is a straight segment between points in convex position.
/// Fails when drawn crossings coincide, which a different warp resolves.
pub fn arrangement_faces(inst: &LamInstance, w: f64, phase: f64) -> Result<usize, String> {
    let chords: Vec<&Chord> = inst.chords().collect();
    if chords.is_empty() {
        return Ok(1);
    }
    let mut pts: Vec<CirclePoint> = chords.iter().flat_map(|c| [c.a.clone(), c.b.clone()]).collect();
    pts.sort();
    pts.dedup();
    let mut verts: Vec<P> = Vec::new();
    let mut circle_ids: BTreeMap<CirclePoint, usize> = BTreeMap::new();
    let mut ring: Vec<usize> = Vec::new();
    for (k, p) in pts.iter().enumerate() {
        circle_ids.insert(p.clone(), verts.len());
        ring.push(verts.len());
        verts.push(xy_warped(p, w, phase));
        let q = &pts[(k + 1) % pts.len()];
        ring.push(verts.len());
        verts.push(xy_warped(&p.ccw_midpoint(q), w, phase));
    }
    let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    let add = |u: usize, v: usize, edges: &mut BTreeSet<(usize, usize)>| -> Result<(), String> {
        if u == v || !edges.insert((u.min(v), u.max(v))) {
            return Err(format!("degenerate edge {u}-{v}"));
        }
        Ok(())
    };
    for k in 0..ring.len() {
        add(ring[k], ring[(k + 1) % ring.len()], &mut edges)?;
    }
    // Interior crossings, with the parameter along each chord.
    let mut along: Vec<Vec<(f64, usize)>> = vec![Vec::new(); chords.len()];
    let seg = |c: &Chord| (xy_warped(&c.a, w, phase), xy_warped(&c.b, w, phase));
    for i in 0..chords.len() {
        for j in i + 1..chords.len() {
            if chords[i].shares_endpoint(chords[j]) {
                continue;
            }
            let ((a, b), (c, d)) = (seg(chords[i]), seg(chords[j]));
            if !segments_cross(a, b, c, d) {
                continue;
            }
            let den = (b.0 - a.0) * (d.1 - c.1) - (b.1 - a.1) * (d.0 - c.0);
            let t = ((c.0 - a.0) * (d.1 - c.1) - (c.1 - a.1) * (d.0 - c.0)) / den;
            let s = ((c.0 - a.0) * (b.1 - a.1) - (c.1 - a.1) * (b.0 - a.0)) / den;
            let x = (a.0 + t * (b.0 - a.0), a.1 + t * (b.1 - a.1));
            if verts.iter().skip(ring.len()).any(|v| (v.0 - x.0).hypot(v.1 - x.1) < 1e-9) {
                return Err("coincident crossings".into());
            }
            along[i].push((t, verts.len()));
            along[j].push((s, verts.len()));
            verts.push(x);
        }
    }
    for (i, c) in chords.iter().enumerate() {
        let mut seq = along[i].clone();
        seq.sort_by(|x, y| x.0.total_cmp(&y.0));
        let mut prev = circle_ids[&c.a];
        for (_, v) in seq {
            add(prev, v, &mut edges)?;
            prev = v;
        }
        add(prev, circle_ids[&c.b], &mut edges)?;
    }
    // Rotation system and face tracing.
    let n = verts.len();
    let mut nbrs: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(u, v) in &edges {
        nbrs[u].push(v);
        nbrs[v].push(u);
    }
    let ang = |u: usize, v: usize| (verts[v].1 - verts[u].1).atan2(verts[v].0 - verts[u].0);
    for (u, list) in nbrs.iter_mut().enumerate() {
        list.sort_by(|&x, &y| ang(u, x).total_cmp(&ang(u, y)));
    }
    let mut seen: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut faces = 0;
    for &(u, v) in &edges {
        for start in [(u, v), (v, u)] {
            if seen.contains(&start) {
                continue;
            }
            faces += 1;
            let mut h = start;
            while seen.insert(h) {
                let (a, b) = h;
                let list = &nbrs[b];
                let k = list.iter().position(|&x| x == a).unwrap();
                // Next edge: the one just clockwise of the reverse edge.
                let next = list[(k + list.len() - 1) % list.len()];
                h = (b, next);
            }
        }
    }
    let e = edges.len();
    if n + faces != e + 2 {
        return Err(format!("Euler check failed: V={n} E={e} F={faces}"));
    }
    Ok(faces - 1)
}

/// Every simple cycle of a simple graph, as a sorted set of edge indices.
pub fn simple_cycles(n: usize, edges: &[(usize, usize)]) -> Vec<BTreeSet<usize>> {
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (i, &(u, v)) in edges.iter().enumerate() {
        adj[u].push((v, i));
        adj[v].push((u, i));
    }
    let mut found: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    fn dfs(
        adj: &[Vec<(usize, usize)>],
        start: usize,
        v: usize,
        on_path: &mut Vec<bool>,
        path: &mut Vec<usize>,
        found: &mut BTreeSet<BTreeSet<usize>>,
    ) {
        for &(w, e) in &adj[v] {
            if w == start && path.len() >= 2 && path.last() != Some(&e) {
                let mut c: BTreeSet<usize> = path.iter().copied().collect();
                c.insert(e);
                found.insert(c);
            } else if w > start && !on_path[w] {
                on_path[w] = true;
                path.push(e);
                dfs(adj, start, w, on_path, path, found);
                path.pop();
                on_path[w] = false;
            }
        }
    }
    for s in 0..n {
        let mut on_path = vec![false; n];
        on_path[s] = true;
        dfs(&adj, s, s, &mut on_path, &mut Vec::new(), &mut found);
    }
    found.into_iter().collect()
}

/// Edges lying on two or more simple cycles.
pub fn overloaded_edges(n: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    let cycles = simple_cycles(n, edges);
    (0..edges.len()).filter(|e| cycles.iter().filter(|c| c.contains(e)).count() > 1).collect()
}

/// Linkage graphs of one sign's genuine regions with vertices named by
/// chord and side, or by the crossed side and boundary arc for ideal vertices.
pub type Labelled = Vec<(RegionId, Vec<String>, Vec<(String, String)>)>;

pub fn labelled_graphs(an: &Analysis, sign: Sign) -> Labelled {
    let mut out = Vec::new();
    for (r, g) in an.genuine_graphs() {
        if r.id.sign != sign {
            continue;
        }
        let names: Vec<String> = g
            .vertices
            .iter()
            .map(|v| match v {
                Vertex::Geodesic { chord, side, .. } => format!("{}[{}]", an.inst.chord(*chord).label(), side.name()),
                Vertex::Ideal(s) => {
                    let crossed = match &r.pieces[s.crossing_side] {
                        Piece::Side { chord, .. } => an.inst.chord(*chord).label(),
                        Piece::Arc(_) => "?".into(),
                    };
                    format!("ideal@{}:{}", s.piece, crossed)
                }
            })
            .collect();
        let mut es: Vec<(String, String)> = g
            .edges
            .iter()
            .map(|e| {
                let (a, b) = (names[e.u].clone(), names[e.v].clone());
                if a < b {
                    (a, b)
                } else {
                    (b, a)
                }
            })
            .collect();
        es.sort();
        let mut vs = names;
        vs.sort();
        out.push((r.id, vs, es));
    }
    out
}

/// The instance with `sign` taken from `completed` and the other family
/// from `original`.
pub fn one_sign_completion(original: &LamInstance, completed: &LamInstance, sign: Sign) -> LamInstance {
    let keep: Vec<Chord> = completed
        .chords()
        .filter(|c| c.sign == sign)
        .chain(original.chords().filter(|c| c.sign != sign))
        .cloned()
        .collect();
    LamInstance::new(original.mode, keep)
}

pub fn endpoints(inst: &LamInstance) -> Vec<CirclePoint> {
    let mut pts: Vec<CirclePoint> = inst.chords().flat_map(|c| [c.a.clone(), c.b.clone()]).collect();
    pts.sort();
    pts.dedup();
    pts
}

/// A random cyclic-order-preserving table on the endpoints of `inst`: fresh
/// sorted random targets, cyclically shifted.
pub fn random_monotone_table(rng: &mut impl Rng, inst: &LamInstance) -> MapTable {
    let pts = endpoints(inst);
    let denom: i64 = 1_000_003;
    let mut targets: BTreeSet<i64> = BTreeSet::new();
    while targets.len() < pts.len() {
        targets.insert(rng.gen_range(0..denom));
    }
    let targets: Vec<CirclePoint> =
        targets.into_iter().map(|k| CirclePoint::from_ratio(k, denom).unwrap()).collect();
    let shift = if pts.is_empty() { 0 } else { rng.gen_range(0..pts.len()) };
    MapTable::new(pts.iter().enumerate().map(|(i, p)| (p.clone(), targets[(i + shift) % pts.len()].clone())))
        .expect("monotone by construction")
}

/// Extends `map` to the midpoint of every gap between consecutive table
/// points, sending it to the midpoint of the image gap. Points of `extra`
/// that are not such midpoints are reported.
pub fn extend_by_midpoints(map: &MapTable, extra: &[CirclePoint]) -> Result<MapTable, CirclePoint> {
    let src: Vec<CirclePoint> = map.pairs().map(|(f, _)| f.clone()).collect();
    let mut pairs: Vec<(CirclePoint, CirclePoint)> = map.pairs().map(|(f, t)| (f.clone(), t.clone())).collect();
    for e in extra {
        if map.get(e).is_some() || pairs.iter().any(|(f, _)| f == e) {
            continue;
        }
        let k = src.iter().position(|p| p > e).unwrap_or(0);
        let (lo, hi) = (&src[(k + src.len() - 1) % src.len()], &src[k]);
        if &lo.ccw_midpoint(hi) != e {
            return Err(e.clone());
        }
        let image = map.get(lo).unwrap().ccw_midpoint(map.get(hi).unwrap());
        pairs.push((e.clone(), image));
    }
    MapTable::new(pairs).map_err(|_| extra[0].clone())
}

/// Canonical combinatorial type: endpoint ranks up to rotation, with each
/// chord's side flags attached to its arcs.
pub fn combinatorial_type(inst: &LamInstance) -> Vec<(u8, usize, usize, u8, bool, bool)> {
    let pts = endpoints(inst);
    let n = pts.len();
    let rank = |p: &CirclePoint| pts.binary_search(p).unwrap();
    let mut best: Option<Vec<(u8, usize, usize, u8, bool, bool)>> = None;
    for shift in 0..n.max(1) {
        let mut v: Vec<_> = inst
            .chords()
            .map(|c| {
                let (a, b) = ((rank(&c.a) + n - shift) % n, (rank(&c.b) + n - shift) % n);
                let (lo, hi, acc) = if a < b { (a, b, c.acc) } else { (b, a, [c.acc[1], c.acc[0]]) };
                (c.sign as u8, lo, hi, c.status as u8, acc[0], acc[1])
            })
            .collect();
        v.sort();
        if best.as_ref().is_none_or(|b| v < *b) {
            best = Some(v);
        }
    }
    best.unwrap_or_default()
}

pub fn rational(p: i64, q: i64) -> BigRational {
    BigRational::new(p.into(), q.into())
}

pub fn ids_of(inst: &LamInstance, sign: Sign) -> Vec<ChordId> {
    inst.ids(sign).collect()
}
