//! Bundled scenario and lattice catalog, embedded in the library so runs
//! need no path setup.

use crate::block::BlockScenario;
use crate::lattice::{FiniteOml, LatticeTable};
use crate::pasting::{scenario_orthoposet, PastedScenario};
use crate::ray::RayScenario;
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CatalogKind {
    Blocks,
    Rays,
    Table,
}

#[derive(Clone, Copy, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub filename: &'static str,
    pub kind: CatalogKind,
    pub contents: &'static str,
    pub summary: &'static str,
}

pub const ENTRIES: &[CatalogEntry] = &[
    CatalogEntry {
        name: "b2",
        filename: "b2.blocks",
        kind: CatalogKind::Blocks,
        contents: include_str!("../catalog/b2.blocks"),
        summary: "two-element Boolean algebra (one one-atom block)",
    },
    CatalogEntry {
        name: "b4",
        filename: "b4.blocks",
        kind: CatalogKind::Blocks,
        contents: include_str!("../catalog/b4.blocks"),
        summary: "four-element Boolean algebra (one two-atom block)",
    },
    CatalogEntry {
        name: "b8",
        filename: "b8.blocks",
        kind: CatalogKind::Blocks,
        contents: include_str!("../catalog/b8.blocks"),
        summary: "eight-element Boolean algebra (one three-atom block)",
    },
    CatalogEntry {
        name: "mo2",
        filename: "mo2.blocks",
        kind: CatalogKind::Blocks,
        contents: include_str!("../catalog/mo2.blocks"),
        summary: "MO2, the smallest non-Boolean orthomodular lattice",
    },
    CatalogEntry {
        name: "mo3",
        filename: "mo3.blocks",
        kind: CatalogKind::Blocks,
        contents: include_str!("../catalog/mo3.blocks"),
        summary: "MO3, three incomparable complement pairs",
    },
    CatalogEntry {
        name: "twoblocks",
        filename: "twoblocks.blocks",
        kind: CatalogKind::Blocks,
        contents: include_str!("../catalog/twoblocks.blocks"),
        summary: "two three-atom blocks sharing an atom (12 elements)",
    },
    CatalogEntry {
        name: "o6",
        filename: "o6.oml",
        kind: CatalogKind::Table,
        contents: include_str!("../catalog/o6.oml"),
        summary: "O6 hexagon, ortholattice failing the orthomodular law",
    },
    CatalogEntry {
        name: "cabello18",
        filename: "cabello18.rays",
        kind: CatalogKind::Rays,
        contents: include_str!("../catalog/cabello18.rays"),
        summary: "18 rays, 9 bases in dimension 4; uncolorable",
    },
    CatalogEntry {
        name: "peres33",
        filename: "peres33.rays",
        kind: CatalogKind::Rays,
        contents: include_str!("../catalog/peres33.rays"),
        summary: "33 rays over Z[sqrt(2)] in dimension 3; uncolorable",
    },
];

pub fn names() -> Vec<&'static str> {
    ENTRIES.iter().map(|e| e.name).collect()
}

pub fn entry(name: &str) -> Option<&'static CatalogEntry> {
    ENTRIES.iter().find(|e| e.name == name)
}

/// Catalog entries that load to orthomodular lattices.
pub fn oml_names() -> Vec<&'static str> {
    vec!["b2", "b4", "b8", "mo2", "mo3", "twoblocks"]
}

/// Load a block-backed or table-backed entry as a lattice. Block entries go
/// through scenario pasting; o6 loads from its table (a valid ortholattice
/// that is not orthomodular). Ray entries do not load as lattices.
pub fn lattice(name: &str) -> Option<Arc<FiniteOml>> {
    let e = entry(name)?;
    match e.kind {
        CatalogKind::Blocks => {
            let s = BlockScenario::parse(e.contents).expect("catalog block file parses");
            match scenario_orthoposet(&s).expect("catalog pasting succeeds") {
                PastedScenario::Lattice { oml, .. } => Some(Arc::new(oml)),
                PastedScenario::OrthoposetOnly { .. } => None,
            }
        }
        CatalogKind::Table => {
            let t = LatticeTable::parse(e.contents).expect("catalog table parses");
            Some(Arc::new(
                FiniteOml::from_table(t).expect("catalog table validates"),
            ))
        }
        CatalogKind::Rays => None,
    }
}

pub fn ray_scenario(name: &str) -> Option<RayScenario> {
    let e = entry(name)?;
    match e.kind {
        CatalogKind::Rays => Some(RayScenario::parse(e.contents).expect("catalog ray file parses")),
        _ => None,
    }
}

pub fn block_scenario(name: &str) -> Option<BlockScenario> {
    let e = entry(name)?;
    match e.kind {
        CatalogKind::Blocks => {
            Some(BlockScenario::parse(e.contents).expect("catalog block file parses"))
        }
        _ => None,
    }
}
