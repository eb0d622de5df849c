//! Finite quantum event algebras and their Boolean frames.
//!
//! The crate models a quantum event algebra as a finite orthomodular lattice
//! and makes the local-Boolean picture of it computable: enumeration of
//! Boolean subalgebras and frames, the frame presheaf with its category of
//! elements, pullback overlaps with gluing isomorphisms and cocycle checks,
//! colimit pasting of Boolean diagrams with an adjunction bijection check,
//! and exact Kochen-Specker colorability search on ray and block scenarios.
//!
//! All arithmetic is exact: scenario coordinates live in Z[sqrt(D)] and
//! everything else is finite combinatorics on small integers.

pub mod adjunction;
pub mod block;
pub mod boolean;
pub mod catalog;
pub mod frames;
pub mod gluing;
pub mod ks;
pub mod lattice;
pub mod paste;
pub mod pasting;
pub mod presheaf;
pub mod quadratic;
pub mod ray;

pub use block::BlockScenario;
pub use boolean::{BoolHom, BooleanAlgebra};
pub use frames::{enumerate_blocks, enumerate_boolean_subalgebras, enumerate_frames, BooleanFrame};
pub use lattice::{validate_ortholattice, FiniteOml, LatticeTable, ValidationReport};
pub use pasting::{scenario_orthoposet, PastedScenario};
pub use quadratic::QuadInt;
pub use ray::RayScenario;
