//! Small named instances used by tests, the acceptance suite, and the CLI.

use crate::circle::{pt, CirclePoint, Chord, Sign, Status};
use crate::instance::{LamInstance, Mode};

fn chord(sign: Sign, p: CirclePoint, q: CirclePoint, status: Status, acc: [bool; 2]) -> Chord {
    Chord::new(p, q, sign, status, acc).expect("fixture chord")
}

fn both(sign: Sign, p: CirclePoint, q: CirclePoint) -> Chord {
    chord(sign, p, q, Status::Leaf, [true, true])
}

/// One plus diameter crossed by one minus diameter.
pub fn cross1() -> LamInstance {
    LamInstance::new(
        Mode::Frontier,
        [both(Sign::Plus, pt(0, 1), pt(1, 2)), both(Sign::Minus, pt(1, 4), pt(3, 4))],
    )
}

/// Three nested plus chords, each crossing three nested minus chords.
pub fn grid3() -> LamInstance {
    LamInstance::new(
        Mode::Frontier,
        [
            both(Sign::Plus, pt(1, 20), pt(7, 10)),
            both(Sign::Plus, pt(1, 10), pt(13, 20)),
            both(Sign::Plus, pt(3, 20), pt(3, 5)),
            both(Sign::Minus, pt(3, 10), pt(9, 10)),
            both(Sign::Minus, pt(7, 20), pt(17, 20)),
            both(Sign::Minus, pt(2, 5), pt(4, 5)),
        ],
    )
}

/// A coupled pair of ideal triangles.
pub fn prong3() -> LamInstance {
    // Each chord is written in boundary order of its triangle, so the
    // triangle faces the arc (q, p) and the outside faces (p, q).
    let tri = |sign: Sign, p: CirclePoint, q: CirclePoint| chord(sign, p, q, Status::Leaf, [true, false]);
    LamInstance::new(
        Mode::Frontier,
        [
            tri(Sign::Plus, pt(0, 1), pt(1, 3)),
            tri(Sign::Plus, pt(1, 3), pt(2, 3)),
            tri(Sign::Plus, pt(2, 3), pt(0, 1)),
            tri(Sign::Minus, pt(1, 6), pt(1, 2)),
            tri(Sign::Minus, pt(1, 2), pt(5, 6)),
            tri(Sign::Minus, pt(5, 6), pt(1, 6)),
        ],
    )
}

/// A plus region whose linkage graph is a path on four sides; the two middle
/// sides are phantoms.
pub fn path4() -> LamInstance {
    // The central region faces the arc (b, a) of every plus chord.
    let outer = |p, q, status| chord(Sign::Plus, p, q, status, [true, false]);
    LamInstance::new(
        Mode::Frontier,
        [
            outer(pt(0, 1), pt(1, 5), Status::Leaf),
            outer(pt(1, 4), pt(9, 20), Status::Phantom),
            outer(pt(1, 2), pt(7, 10), Status::Phantom),
            outer(pt(3, 4), pt(19, 20), Status::Leaf),
            both(Sign::Minus, pt(1, 20), pt(7, 20)),
            both(Sign::Minus, pt(2, 5), pt(11, 20)),
            both(Sign::Minus, pt(13, 20), pt(4, 5)),
        ],
    )
}

/// Two phantom plus sides with ideal segments on both flanks.
pub fn seg() -> LamInstance {
    let outer = |p, q| chord(Sign::Plus, p, q, Status::Phantom, [true, false]);
    LamInstance::new(
        Mode::Frontier,
        [
            outer(pt(0, 1), pt(1, 2)),
            outer(pt(3, 5), pt(9, 10)),
            both(Sign::Minus, pt(47, 100), pt(13, 25)),
            both(Sign::Minus, pt(9, 20), pt(13, 20)),
            both(Sign::Minus, pt(7, 10), pt(23, 25)),
        ],
    )
}

/// Looks a fixture up by name (case-insensitive).
pub fn by_name(name: &str) -> Option<LamInstance> {
    match name.to_ascii_lowercase().as_str() {
        "cross1" => Some(cross1()),
        "grid3" => Some(grid3()),
        "prong3" => Some(prong3()),
        "path4" => Some(path4()),
        "seg" => Some(seg()),
        _ => None,
    }
}
