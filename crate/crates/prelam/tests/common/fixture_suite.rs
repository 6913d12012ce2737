//! Expected outputs on the named fixtures, as one list of checks.

use std::collections::BTreeMap;

use prelam::analysis::Analysis;
use prelam::circle::{pt, CirclePoint, Chord, Side, Sign, Status};
use prelam::completion::{
    alternative_extension, complete, complete_with_log, crossing_geodesic, disconnectors, segments_of,
    DisconnectorKind,
};
use prelam::conditions::{
    check_completable, check_connectedness, check_high_valence, check_realization, check_shared_endpoint,
    check_simple_cycle, classify_nonsingular, Clause, RegionShape,
};
use prelam::fixtures::{cross1, grid3, path4, prong3, seg};
use prelam::generate::{generate, grid, prong};
use prelam::instance::{validate, ChordId, LamInstance, Mode};
use prelam::io::{parse_document, serialize_document};
use prelam::plane::{check_invariance, coupled_polygons, crossing_space, leaf_order, transport, ClassKind, MapTable};
use prelam::regions::{ideal_segments, linkage_graph, traversal, LinkageGraph, Piece, Region, RegionId, Vertex};
use prelam::render::{render, RenderSpec};

use super::{combinatorial_type, endpoints, rational};

/// Named pass/fail results.
#[derive(Default)]
pub struct Checks {
    pub results: Vec<(String, bool)>,
}

impl Checks {
    fn check(&mut self, name: &str, ok: bool) {
        self.results.push((name.to_string(), ok));
    }

    pub fn failures(&self) -> Vec<&str> {
        self.results.iter().filter(|(_, ok)| !ok).map(|(n, _)| n.as_str()).collect()
    }
}

fn id(inst: &LamInstance, sign: Sign, a: (i64, i64), b: (i64, i64)) -> ChordId {
    inst.find(sign, &pt(a.0, a.1), &pt(b.0, b.1))
        .unwrap_or_else(|| panic!("fixture chord {a:?}-{b:?} missing"))
}

fn graph<'a>(an: &'a Analysis, r: RegionId) -> Option<&'a LinkageGraph> {
    an.graph(r).and_then(|g| g.as_ref().ok())
}

/// Undirected edges as chord pairs with witness sets, geodesic vertices only.
fn chord_edges(g: &LinkageGraph) -> Vec<((ChordId, ChordId), Vec<ChordId>)> {
    let mut out: Vec<_> = g
        .edges
        .iter()
        .filter_map(|e| {
            let (a, b) = (g.vertices[e.u].chord()?, g.vertices[e.v].chord()?);
            Some(((a.min(b), a.max(b)), e.witnesses.clone()))
        })
        .collect();
    out.sort();
    out
}

fn sides(r: &Region) -> Vec<ChordId> {
    let mut v: Vec<ChordId> = r.sides().map(|(_, c, _)| c).collect();
    v.sort();
    v
}

fn count(svg: &[u8], needle: &str) -> usize {
    String::from_utf8_lossy(svg).matches(needle).count()
}

pub fn run() -> Checks {
    let mut c = Checks::default();

    // validation
    c.check("GRID3 validates", validate(&grid3()).is_empty());
    for (name, inst) in [("CROSS1", cross1()), ("PRONG3", prong3()), ("PATH4", path4()), ("SEG", seg())] {
        c.check(&format!("{name} validates"), validate(&inst).is_empty());
    }

    // regions
    let x = cross1();
    let an = Analysis::new(&x);
    let plus = &an.family(Sign::Plus).regions;
    c.check(
        "CROSS1 plus regions: two half discs, not genuine",
        plus.len() == 2 && plus.iter().all(|r| !r.genuine && r.side_count() == 1 && r.arcs().count() == 1),
    );

    let p4 = path4();
    let an4 = Analysis::new(&p4);
    let a = [
        id(&p4, Sign::Plus, (0, 1), (1, 5)),
        id(&p4, Sign::Plus, (1, 4), (9, 20)),
        id(&p4, Sign::Plus, (1, 2), (7, 10)),
        id(&p4, Sign::Plus, (3, 4), (19, 20)),
    ];
    let b = [
        id(&p4, Sign::Minus, (1, 20), (7, 20)),
        id(&p4, Sign::Minus, (2, 5), (11, 20)),
        id(&p4, Sign::Minus, (13, 20), (4, 5)),
    ];
    let central = an4.region_of_side(a[0], Side::Ba);
    let regs = &an4.family(Sign::Plus).regions;
    c.check(
        "PATH4 plus regions: 5, central with a1..a4 and four arcs, only central genuine",
        regs.len() == 5
            && sides(an4.region(central)) == a.to_vec()
            && an4.region(central).arcs().count() == 4
            && regs.iter().all(|r| r.genuine == (r.id == central)),
    );

    // traversal
    let g3 = grid3();
    let a1 = id(&g3, Sign::Plus, (1, 20), (7, 10));
    let bs = [
        id(&g3, Sign::Minus, (3, 10), (9, 10)),
        id(&g3, Sign::Minus, (7, 20), (17, 20)),
        id(&g3, Sign::Minus, (2, 5), (4, 5)),
    ];
    c.check("GRID3 traversal of A1 is B1, B2, B3", traversal(&g3, a1) == bs.to_vec());
    let p3 = prong3();
    let s1 = id(&p3, Sign::Plus, (0, 1), (1, 3));
    let t1 = id(&p3, Sign::Minus, (1, 6), (1, 2));
    let t3 = id(&p3, Sign::Minus, (5, 6), (1, 6));
    c.check("PRONG3 traversal of s1 is t3, t1", traversal(&p3, s1) == vec![t3, t1]);
    let ca = id(&x, Sign::Plus, (0, 1), (1, 2));
    let cb = id(&x, Sign::Minus, (1, 4), (3, 4));
    c.check("CROSS1 traversal of A is B", traversal(&x, ca) == vec![cb]);

    // ideal segments
    let lune = an4.region_of_side(a[1], Side::Ab);
    let segs = ideal_segments(an4.region(lune), &p4).unwrap();
    let crossing_piece = an4.region(lune).sides().find(|(_, ch, _)| *ch == a[1]).map(|(i, _, _)| i);
    c.check(
        "PATH4 lune behind a2: one segment [7/20,2/5] crossing a2",
        segs.len() == 1
            && segs[0].span == (pt(7, 20), pt(2, 5))
            && segs[0].members == vec![(b[0], pt(7, 20)), (b[1], pt(2, 5))]
            && Some(segs[0].crossing_side) == crossing_piece,
    );
    c.check("PATH4 central region: no segments", ideal_segments(an4.region(central), &p4).unwrap().is_empty());

    let sg = seg();
    let ans = Analysis::new(&sg);
    let sa1 = id(&sg, Sign::Plus, (0, 1), (1, 2));
    let sa2 = id(&sg, Sign::Plus, (3, 5), (9, 10));
    let sb2 = id(&sg, Sign::Minus, (9, 20), (13, 20));
    let between = ans.region_of_side(sa1, Side::Ba);
    let sreg = ans.region(between);
    let ssegs = ideal_segments(sreg, &sg).unwrap();
    let crossed = |i: usize| match &sreg.pieces[ssegs[i].crossing_side] {
        Piece::Side { chord, .. } => Some(*chord),
        Piece::Arc(_) => None,
    };
    c.check(
        "SEG region: segments {13/25} crossing a1 and {23/25} crossing a2",
        ssegs.len() == 2
            && ssegs[0].members.iter().map(|m| &m.1).collect::<Vec<_>>() == vec![&pt(13, 25)]
            && crossed(0) == Some(sa1)
            && ssegs[1].members.iter().map(|m| &m.1).collect::<Vec<_>>() == vec![&pt(23, 25)]
            && crossed(1) == Some(sa2),
    );

    // linkage graphs
    let gc = graph(&an4, central).unwrap();
    c.check(
        "PATH4 central graph: path a1-a2-a3-a4 witnessed by b1, b2, b3",
        gc.vertices.len() == 4
            && chord_edges(gc)
                == vec![((a[0], a[1]), vec![b[0]]), ((a[1], a[2]), vec![b[1]]), ((a[2], a[3]), vec![b[2]])],
    );
    let an3 = Analysis::new(&p3);
    let tri = an3.region_of_side(s1, Side::Ba);
    let s2 = id(&p3, Sign::Plus, (1, 3), (2, 3));
    let s3 = id(&p3, Sign::Plus, (2, 3), (0, 1));
    let t2 = id(&p3, Sign::Minus, (1, 2), (5, 6));
    let gt = graph(&an3, tri).unwrap();
    let pair = |x: ChordId, y: ChordId| (x.min(y), x.max(y));
    let mut want = vec![(pair(s1, s2), vec![t1]), (pair(s2, s3), vec![t2]), (pair(s1, s3), vec![t3])];
    want.sort();
    c.check("PRONG3 plus triangle graph: 3-cycle witnessed by t1, t2, t3", gt.vertices.len() == 3 && chord_edges(gt) == want);
    // The lune is accumulated, so it is not genuine; its graph is still defined.
    let gl = linkage_graph(an4.region(lune), &p4);
    c.check(
        "PATH4 lune behind a2: two vertices, one edge",
        gl.is_ok_and(|g| {
            g.vertices.len() == 2
                && g.edges.len() == 1
                && g.vertices.iter().filter(|v| v.chord() == Some(a[1])).count() == 1
                && g.vertices.iter().filter(|v| matches!(v, Vertex::Ideal(_))).count() == 1
        }),
    );

    // conditions
    c.check("GRID3 connected", check_connectedness(&g3).pass);
    c.check("PATH4 connected", check_connectedness(&p4).pass);
    let shifted: Vec<Chord> = [((1, 20), (3, 20), Sign::Plus), ((1, 10), (1, 5), Sign::Minus)]
        .iter()
        .map(|&(p, q, s)| Chord::new(pt(p.0, p.1), pt(q.0, q.1), s, Status::Leaf, [true, true]).unwrap())
        .collect();
    let two = x.with_chords(shifted);
    let conn = check_connectedness(&two);
    c.check("two CROSS1 copies: 2 components", validate(&two).is_empty() && !conn.pass && conn.components.len() == 2);
    c.check("PRONG3 simple cycle pass", check_simple_cycle(&an3).pass);
    c.check("PATH4 simple cycle pass", check_simple_cycle(&an4).pass);
    c.check("PATH4 no high-valence leaves", check_high_valence(&an4).is_empty());
    let leafy = p4.map_chords(|ch| Chord { status: Status::Leaf, ..ch.clone() });
    let hv = check_high_valence(&Analysis::new(&leafy));
    let leafy_a2 = id(&leafy, Sign::Plus, (1, 4), (9, 20));
    let leafy_a3 = id(&leafy, Sign::Plus, (1, 2), (7, 10));
    c.check(
        "PATH4 as leaves: a2 and a3 by clause (ii)",
        hv.iter().map(|v| (v.leaf, v.clause)).collect::<Vec<_>>() == vec![(leafy_a2, Clause::II), (leafy_a3, Clause::II)],
    );
    let strict = x.with_mode(Mode::Strict);
    let hvs = check_high_valence(&Analysis::new(&strict));
    c.check(
        "CROSS1 strict: A by clause (iii) in both half discs",
        hvs.iter().any(|v| v.leaf == ca && v.clause == Clause::III && v.regions.len() == 2),
    );
    c.check("PRONG3 no shared-endpoint violation", check_shared_endpoint(&p3).is_empty());
    c.check("GRID3 no shared-endpoint violation", check_shared_endpoint(&g3).is_empty());
    c.check("GRID3 completable", check_completable(&g3).overall);
    c.check("PATH4 completable", check_completable(&p4).overall);
    c.check("CROSS1 strict not completable", !check_completable(&strict).overall);

    // realization
    let r3 = check_realization(&p3);
    c.check("PRONG3 realization: one coupled triangle pair", r3.pass && r3.pairs.len() == 1);
    c.check("PATH4 realization fails", !check_realization(&p4).pass);
    let cp4 = complete(&p4).unwrap();
    let rc = check_realization(&cp4);
    let roots: Vec<ChordId> = rc
        .shapes
        .iter()
        .filter_map(|(_, s)| match s {
            RegionShape::OneRoot { root } => Some(*root),
            RegionShape::IdealPolygon => None,
        })
        .collect();
    let ca2 = id(&cp4, Sign::Plus, (1, 4), (9, 20));
    let ca3 = id(&cp4, Sign::Plus, (1, 2), (7, 10));
    c.check(
        "complete(PATH4) realization: one-root regions at a2 and a3",
        rc.pass && roots.len() == 2 && roots.contains(&ca2) && roots.contains(&ca3),
    );
    c.check("GRID3 nonsingular", classify_nonsingular(&g3));
    c.check("PRONG3 singular", !classify_nonsingular(&p3));
    c.check("PATH4 nonsingular", classify_nonsingular(&p4));

    // disconnectors and crossing geodesics
    let ds = disconnectors(gc).unwrap();
    c.check(
        "PATH4 disconnectors: three bridges, only the middle is a cut",
        ds.len() == 3
            && ds.iter().all(|d| matches!(d.kind, DisconnectorKind::Edge(_)))
            && ds.iter().map(|d| d.is_cut).collect::<Vec<_>>() == vec![false, true, false],
    );
    let dt = disconnectors(gt).unwrap();
    c.check(
        "PRONG3 disconnectors: three pairs, none a cut",
        dt.len() == 3 && dt.iter().all(|d| matches!(d.kind, DisconnectorKind::Pair { .. }) && !d.is_cut),
    );
    let gs = graph(&ans, between).unwrap();
    let dsg = disconnectors(gs).unwrap();
    let cuts: Vec<_> = dsg.iter().filter(|d| d.is_cut).collect();
    c.check(
        "SEG disconnectors: three bridges, one cut between a1 and a2",
        dsg.len() == 3
            && dsg.iter().all(|d| matches!(d.kind, DisconnectorKind::Edge(_)))
            && cuts.len() == 1
            && cuts[0].edges().iter().all(|&e| {
                let ed = &gs.edges[e];
                let ends = [gs.vertices[ed.u].chord(), gs.vertices[ed.v].chord()];
                ends.contains(&Some(sa1)) && ends.contains(&Some(sa2))
            }),
    );
    if let Some(mid) = ds.iter().find(|d| d.is_cut) {
        let cg = crossing_geodesic(&an4, gc, mid).unwrap();
        let mut gaps = cg.gaps.clone().map(|g| g.to_vec()).unwrap_or_default();
        gaps.sort();
        c.check(
            "PATH4 cut edge geodesic {19/40,39/40}, gaps (9/20,1/2) and (19/20,0), crossing b2",
            (cg.chord.a.clone(), cg.chord.b.clone()) == (pt(19, 40), pt(39, 40))
                && gaps == vec![(pt(9, 20), pt(1, 2)), (pt(19, 20), CirclePoint::zero())]
                && cg.witnesses == vec![b[1]],
        );
    } else {
        c.check("PATH4 cut edge geodesic {19/40,39/40}", false);
    }
    let e1 = crossing_geodesic(&an4, gc, &ds[0]).unwrap();
    c.check("PATH4 first bridge geodesic is a1 itself", e1.existing == Some(a[0]));
    if let Some(cut) = cuts.first() {
        let cg = crossing_geodesic(&ans, gs, cut).unwrap();
        c.check(
            "SEG cut edge geodesic {14/25,24/25} crossing b2",
            (cg.chord.a.clone(), cg.chord.b.clone()) == (pt(14, 25), pt(24, 25)) && cg.witnesses == vec![sb2],
        );
    }

    // completion
    c.check("complete(GRID3) unchanged", complete(&g3).unwrap() == g3);
    c.check("complete(PRONG3) unchanged", complete(&p3).unwrap() == p3);
    let log = complete_with_log(&p4).unwrap();
    c.check(
        "complete(PATH4) adds exactly {19/40,39/40}",
        log.added.len() == 1
            && log.added[0].chord.label() == "+{19/40,39/40}"
            && cp4.len() == p4.len() + 1
            && cp4.find(Sign::Plus, &pt(19, 40), &pt(39, 40)).is_some(),
    );
    let pivot = pt(13, 25);
    let target = segments_of(gs).into_iter().find(|s| s.has_member_at(&pivot)).cloned();
    match target {
        Some(s) => {
            let one = alternative_extension(&sg, &s, &pivot, 1).unwrap();
            let two = alternative_extension(&sg, &s, &pivot, 2).unwrap();
            c.check(
                "SEG extension k=1 adds {51/100,53/100}",
                one.len() == sg.len() + 1 && one.find(Sign::Plus, &pt(51, 100), &pt(53, 100)).is_some(),
            );
            c.check(
                "SEG extension k=2 adds a nested second leaf",
                two.len() == sg.len() + 2
                    && two.find(Sign::Plus, &pt(51, 100), &pt(53, 100)).is_some()
                    && two.find(Sign::Plus, &pt(103, 200), &pt(21, 40)).is_some(),
            );
        }
        None => c.check("SEG extension segment found", false),
    }

    // crossing space
    let cs = crossing_space(&x).unwrap();
    c.check(
        "CROSS1 crossing space: 1 point, 1 single class, no singular",
        cs.points.len() == 1
            && cs.classes.len() == 1
            && cs.classes[0].kind == ClassKind::Single
            && cs.singular().count() == 0,
    );
    let gs3 = crossing_space(&g3).unwrap();
    c.check(
        "GRID3 crossing space: 9 points in 9 single classes",
        gs3.points.len() == 9 && gs3.classes.len() == 9 && gs3.classes.iter().all(|k| k.kind == ClassKind::Single),
    );
    let ps = crossing_space(&p3).unwrap();
    c.check(
        "PRONG3 crossing space: one class of 6 points, one 3-prong singularity",
        ps.points.len() == 6
            && ps.classes.len() == 1
            && ps.classes[0].members.len() == 6
            && ps.classes[0].kind == ClassKind::Singular { k: 3 }
            && ps.classes[0].kind.number() == 4
            && ps.singular().count() == 1,
    );
    let want_order: Vec<usize> = bs.iter().map(|&m| gs3.class_of_pair(a1, m).unwrap()).collect();
    c.check("GRID3 leaf order along A1 follows B1, B2, B3", leaf_order(&g3, &gs3, a1).unwrap() == want_order);
    c.check("PRONG3 leaf order along s1 is one point", leaf_order(&p3, &ps, s1).unwrap() == vec![0]);
    c.check("CROSS1 leaf order along A", leaf_order(&x, &cs, ca).unwrap() == vec![cs.class_of_pair(ca, cb).unwrap()]);
    let pairs = coupled_polygons(&p3).unwrap();
    c.check("PRONG3 coupled polygons: one pair of order 3", pairs.len() == 1 && pairs[0].prongs() == 3);
    c.check("GRID3 coupled polygons: none", coupled_polygons(&g3).unwrap().is_empty());

    // circle maps
    let g3pts = endpoints(&g3);
    c.check("identity on GRID3", transport(&g3, &MapTable::identity(&g3pts)).unwrap() == g3);
    let p3pts = endpoints(&p3);
    c.check(
        "rotation by 1/3 on PRONG3 is setwise invariant",
        transport(&p3, &MapTable::rotation(&p3pts, &rational(1, 3))).unwrap() == p3,
    );
    let half = transport(&g3, &MapTable::rotation(&g3pts, &rational(1, 2))).unwrap();
    let hs = crossing_space(&half).unwrap();
    c.check(
        "rotation by 1/2 on GRID3: same type and crossing space",
        combinatorial_type(&half) == combinatorial_type(&g3) && hs.points.len() == 9 && hs.classes.len() == 9,
    );
    c.check(
        "check_invariance(PRONG3, 1/3) holds",
        check_invariance(&p3, &MapTable::rotation(&p3pts, &rational(1, 3))).unwrap().invariant,
    );
    c.check(
        "check_invariance(GRID3, 1/3) fails",
        !check_invariance(&g3, &MapTable::rotation(&g3pts, &rational(1, 3))).unwrap().invariant,
    );

    // documents and generators
    let text = serialize_document(&g3, &Default::default());
    c.check("GRID3 round-trips", parse_document(text.as_bytes()).map(|d| d.instance).ok() == Some(g3.clone()));
    let bad = br#"{"version":"1","chords":[{"sign":"+","a":"2/4","b":"3/4"}]}"#;
    c.check(
        "2/4 rejected as non-lowest-terms",
        parse_document(bad).err().is_some_and(|e| e[0].code == "non-lowest-terms"),
    );
    c.check("prong k=3 matches PRONG3 up to rotation", combinatorial_type(&prong(3).unwrap()) == combinatorial_type(&p3));
    c.check("grid 3x3 matches GRID3", combinatorial_type(&grid(3, 3).unwrap()) == combinatorial_type(&g3));
    let k2: BTreeMap<String, String> = [("k".to_string(), "2".to_string())].into();
    c.check("prong k=2 rejected", generate("prong", &k2).is_err());

    // rendering
    let sm = render(&p3, &RenderSpec { singular_markers: true, ..RenderSpec::default() }).unwrap();
    c.check("PRONG3 render: one singular marker", count(&sm, r#"class="singular-marker""#) == 1);
    let empty = render(&LamInstance::empty(Mode::Frontier), &RenderSpec::default()).unwrap();
    c.check("empty render: disc only", count(&empty, "<circle") == 1 && count(&empty, "<path") == 0);
    let lk = render(&p4, &RenderSpec { linkage: Some(central), ..RenderSpec::default() }).unwrap();
    c.check(
        "PATH4 render: 4 vertex and 3 edge glyphs",
        count(&lk, r#"class="linkage-vertex""#) == 4 && count(&lk, r#"class="linkage-edge""#) == 3,
    );

    c
}
