//! Finite pairs of transverse prelaminations of the circle.
//!
//! Chords live on a circle of exact rational positions. The crate computes
//! complementary regions and linkage graphs, decides the completability
//! conditions, builds the completion, and extracts the crossing-space
//! skeleton of the resulting bifoliated plane.

pub mod analysis;
pub mod circle;
pub mod completion;
pub mod conditions;
pub mod fixtures;
pub mod generate;
pub mod graph;
pub mod instance;
pub mod io;
pub mod plane;
pub mod regions;
pub mod render;

pub use circle::{crosses, cyclic_between, pt, Arc, CirclePoint, Chord, Side, Sign, Status};
pub use instance::{validate, ChordId, LamInstance, Mode, ValidationReport, Violation};
