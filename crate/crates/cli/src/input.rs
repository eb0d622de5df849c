//! Input resolution: `catalog:NAME` or a path, parsed by extension.

use oml_core::block::BlockScenario;
use oml_core::catalog;
use oml_core::lattice::{FiniteOml, LatticeTable};
use oml_core::pasting::{scenario_orthoposet, PastedScenario};
use oml_core::ray::RayScenario;
use std::fs;
use std::sync::Arc;

pub enum Parsed {
    Rays(RayScenario),
    Blocks(BlockScenario),
    Table(LatticeTable),
}

pub struct Resolved {
    pub name: String,
    pub sha256: String,
    pub parsed: Parsed,
}

pub enum CliError {
    /// Unreadable or unparseable input (exit 2).
    Input(String),
    /// A checked property failed (exit 1).
    Property(String),
    /// A resource budget was exhausted (exit 3).
    Resource(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Property(_) => 1,
            CliError::Input(_) => 2,
            CliError::Resource(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Property(m) | CliError::Resource(m) => m,
        }
    }
}

fn digest(text: &str) -> String {
    use sha2::{Digest, Sha256};
    hex::encode(Sha256::digest(text.as_bytes()))
}

pub fn resolve(spec: &str) -> Result<Resolved, CliError> {
    let (name, contents, kind) = if let Some(catalog_name) = spec.strip_prefix("catalog:") {
        let e = catalog::entry(catalog_name).ok_or_else(|| {
            CliError::Input(format!(
                "unknown catalog entry {catalog_name:?}; available: {}",
                catalog::names().join(", ")
            ))
        })?;
        (spec.to_string(), e.contents.to_string(), Some(e.kind))
    } else {
        let contents = fs::read_to_string(spec)
            .map_err(|e| CliError::Input(format!("cannot read {spec}: {e}")))?;
        (spec.to_string(), contents, None)
    };

    let kind = match kind {
        Some(k) => k,
        None => {
            if spec.ends_with(".rays") {
                catalog::CatalogKind::Rays
            } else if spec.ends_with(".blocks") {
                catalog::CatalogKind::Blocks
            } else if spec.ends_with(".oml") {
                catalog::CatalogKind::Table
            } else {
                return Err(CliError::Input(format!(
                    "{spec}: unknown input kind; expected a .rays, .blocks or .oml file"
                )));
            }
        }
    };

    let parsed = match kind {
        catalog::CatalogKind::Rays => Parsed::Rays(
            RayScenario::parse(&contents).map_err(|e| CliError::Input(format!("{name}: {e}")))?,
        ),
        catalog::CatalogKind::Blocks => Parsed::Blocks(
            BlockScenario::parse(&contents).map_err(|e| CliError::Input(format!("{name}: {e}")))?,
        ),
        catalog::CatalogKind::Table => Parsed::Table(
            LatticeTable::parse(&contents).map_err(|e| CliError::Input(format!("{name}: {e}")))?,
        ),
    };
    Ok(Resolved {
        name,
        sha256: digest(&contents),
        parsed,
    })
}

/// Load the input as a lattice, with honest failures: an invalid table or a
/// pasting that is not a lattice is a property failure, not an input error.
pub fn as_lattice(r: &Resolved) -> Result<Arc<FiniteOml>, CliError> {
    match &r.parsed {
        Parsed::Table(t) => FiniteOml::from_table(t.clone())
            .map(Arc::new)
            .map_err(|rep| {
                CliError::Property(format!(
                    "{} is not a valid ortholattice:\n{}",
                    r.name,
                    rep.render(t)
                ))
            }),
        Parsed::Blocks(s) => paste_blocks(&r.name, s),
        Parsed::Rays(s) => {
            let blocks = rays_as_blocks(&r.name, s)?;
            paste_blocks(&r.name, &blocks)
        }
    }
}

pub fn rays_as_blocks(name: &str, s: &RayScenario) -> Result<BlockScenario, CliError> {
    BlockScenario::new(
        s.rays.iter().map(|r| r.name.clone()).collect(),
        s.contexts.clone(),
    )
    .map_err(|e| CliError::Input(format!("{name}: context structure is degenerate: {e}")))
}

fn paste_blocks(name: &str, s: &BlockScenario) -> Result<Arc<FiniteOml>, CliError> {
    match scenario_orthoposet(s) {
        Ok(PastedScenario::Lattice { oml, .. }) => Ok(Arc::new(oml)),
        Ok(PastedScenario::OrthoposetOnly {
            table,
            missing_bounds,
            ..
        }) => Err(CliError::Property(format!(
            "{name}: pasting is an orthoposet, not a lattice ({} classes, {} \
                 pairs lack bounds)",
            table.n(),
            missing_bounds.len()
        ))),
        Err(e) => Err(CliError::Property(format!("{name}: {e}"))),
    }
}
