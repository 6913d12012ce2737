//! Regions and linkage graphs of an instance, computed once and shared by the
//! condition checks, the completion, and the plane skeleton.

use std::collections::BTreeMap;

use crate::circle::{Side, Sign};
use crate::graph::{BlockKind, Graph};
use crate::instance::{ChordId, LamInstance, PointIndex};
use crate::regions::{family_regions, linkage_graph, FamilyRegions, LinkageError, LinkageGraph, Region, RegionId};

pub struct Analysis<'a> {
    pub inst: &'a LamInstance,
    pub index: PointIndex,
    plus: FamilyRegions,
    minus: FamilyRegions,
    graphs: BTreeMap<RegionId, Result<LinkageGraph, LinkageError>>,
}

impl<'a> Analysis<'a> {
    /// Computes regions of both signs and linkage graphs of genuine regions.
    pub fn new(inst: &'a LamInstance) -> Self {
        let plus = family_regions(inst, Sign::Plus);
        let minus = family_regions(inst, Sign::Minus);
        let mut graphs = BTreeMap::new();
        for fam in [&plus, &minus] {
            for r in fam.regions.iter().filter(|r| r.genuine) {
                graphs.insert(r.id, linkage_graph(r, inst));
            }
        }
        Analysis { inst, index: PointIndex::new(inst), plus, minus, graphs }
    }

    pub fn family(&self, sign: Sign) -> &FamilyRegions {
        match sign {
            Sign::Plus => &self.plus,
            Sign::Minus => &self.minus,
        }
    }

    pub fn region(&self, id: RegionId) -> &Region {
        self.family(id.sign).get(id)
    }

    pub fn region_of_side(&self, chord: ChordId, side: Side) -> RegionId {
        self.family(chord.sign).region_of_side(chord.index, side)
    }

    pub fn genuine_regions(&self) -> impl Iterator<Item = &Region> {
        self.plus.regions.iter().chain(self.minus.regions.iter()).filter(|r| r.genuine)
    }

    /// Graph of a genuine region.
    pub fn graph(&self, id: RegionId) -> Option<&Result<LinkageGraph, LinkageError>> {
        self.graphs.get(&id)
    }

    /// Genuine regions whose graph could be built, in region order.
    pub fn genuine_graphs(&self) -> impl Iterator<Item = (&Region, &LinkageGraph)> {
        self.graphs
            .iter()
            .filter_map(|(id, g)| g.as_ref().ok().map(|g| (self.region(*id), g)))
    }

    pub fn defects(&self) -> Vec<LinkageError> {
        self.graphs.values().filter_map(|g| g.as_ref().err().cloned()).collect()
    }
}

/// Per-graph cycle structure.
#[derive(Clone, Debug)]
pub struct CycleStructure {
    pub graph: Graph,
    pub blocks: Vec<crate::graph::Block>,
    pub on_cycle: Vec<bool>,
}

impl CycleStructure {
    pub fn of(g: &LinkageGraph) -> Self {
        let graph = Graph::new(g.vertices.len(), g.edges.iter().map(|e| (e.u, e.v)).collect());
        let blocks = graph.blocks();
        let mut on_cycle = vec![false; g.vertices.len()];
        for b in blocks.iter().filter(|b| b.kind != BlockKind::Bridge) {
            for &v in &b.vertices {
                on_cycle[v] = true;
            }
        }
        CycleStructure { graph, blocks, on_cycle }
    }

    pub fn has_cycle(&self) -> bool {
        self.on_cycle.iter().any(|&c| c)
    }

    pub fn is_simple(&self) -> bool {
        self.blocks.iter().all(|b| b.kind != BlockKind::Complex)
    }
}
