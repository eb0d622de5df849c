//! Finite Boolean event algebras presented by their atoms, and Boolean
//! homomorphisms between them.
//!
//! Elements are atom subsets encoded as `u32` bitmasks, so the full powerset
//! structure (and with it distributivity) holds by construction. A
//! homomorphism is stored by the images of the domain's atoms; those images
//! must be pairwise disjoint and cover the codomain's top.

use crate::lattice::{FiniteOml, LatticeTable};
use serde::Serialize;
use std::fmt;
use thiserror::Error;

pub const MAX_ATOMS: usize = 16;

/// A finite Boolean algebra: the powerset of its atom list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct BooleanAlgebra {
    atoms: Vec<String>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BooleanError {
    #[error("a Boolean algebra needs between 1 and {MAX_ATOMS} atoms, got {0}")]
    AtomCount(usize),
    #[error("duplicate atom name {0:?}")]
    DuplicateAtom(String),
    #[error("atom images of a homomorphism must be pairwise disjoint")]
    ImagesOverlap,
    #[error("atom images of a homomorphism must cover the codomain")]
    ImagesDontCover,
    #[error("homomorphism arity mismatch")]
    Arity,
}

impl BooleanAlgebra {
    pub fn new(atoms: Vec<String>) -> Result<Self, BooleanError> {
        if atoms.is_empty() || atoms.len() > MAX_ATOMS {
            return Err(BooleanError::AtomCount(atoms.len()));
        }
        for (i, a) in atoms.iter().enumerate() {
            if atoms[..i].contains(a) {
                return Err(BooleanError::DuplicateAtom(a.clone()));
            }
        }
        Ok(BooleanAlgebra { atoms })
    }

    /// B_{2^k} with atoms named p1..pk (B_2 for k = 1).
    pub fn with_atom_count(k: usize) -> Result<Self, BooleanError> {
        BooleanAlgebra::new((1..=k).map(|i| format!("p{i}")).collect())
    }

    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    pub fn atom_names(&self) -> &[String] {
        &self.atoms
    }

    /// Number of elements, 2^atoms.
    pub fn size(&self) -> usize {
        1usize << self.atoms.len()
    }

    pub fn top(&self) -> u32 {
        (self.size() - 1) as u32
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..(self.size() as u32)
    }

    pub fn complement(&self, x: u32) -> u32 {
        self.top() & !x
    }

    pub fn atom_mask(&self, i: usize) -> u32 {
        1u32 << i
    }

    pub fn atoms_in(&self, x: u32) -> impl Iterator<Item = usize> + '_ {
        (0..self.atoms.len()).filter(move |i| x & (1 << i) != 0)
    }

    pub fn leq(&self, x: u32, y: u32) -> bool {
        x & !y == 0
    }

    /// Render an element as a join of atom names.
    pub fn render(&self, x: u32) -> String {
        if x == 0 {
            return "0".to_string();
        }
        if x == self.top() {
            return "1".to_string();
        }
        let names: Vec<&str> = self.atoms_in(x).map(|i| self.atoms[i].as_str()).collect();
        names.join("|")
    }

    /// The same algebra viewed as a finite orthomodular lattice (element ids
    /// are the masks themselves).
    pub fn as_oml(&self) -> FiniteOml {
        let n = self.size();
        let labels = (0..n as u32).map(|m| self.render(m)).collect();
        let mut leq = vec![false; n * n];
        for x in 0..n as u32 {
            for y in 0..n as u32 {
                if self.leq(x, y) {
                    leq[x as usize * n + y as usize] = true;
                }
            }
        }
        let comp = (0..n as u32).map(|m| self.complement(m) as usize).collect();
        let t = LatticeTable {
            labels,
            leq,
            comp,
            join: None,
            meet: None,
        };
        FiniteOml::from_table(t).expect("powerset algebra is a valid ortholattice")
    }
}

impl fmt::Display for BooleanAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B[{}]", self.atoms.join(","))
    }
}

/// A Boolean homomorphism `dom -> cod` given by the images of dom's atoms
/// (pairwise disjoint masks in cod whose union is cod's top).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct BoolHom {
    pub dom: BooleanAlgebra,
    pub cod: BooleanAlgebra,
    atom_images: Vec<u32>,
}

impl BoolHom {
    pub fn new(
        dom: BooleanAlgebra,
        cod: BooleanAlgebra,
        atom_images: Vec<u32>,
    ) -> Result<Self, BooleanError> {
        if atom_images.len() != dom.atom_count() {
            return Err(BooleanError::Arity);
        }
        let mut seen = 0u32;
        for &img in &atom_images {
            if img & seen != 0 {
                return Err(BooleanError::ImagesOverlap);
            }
            seen |= img;
        }
        if seen != cod.top() {
            return Err(BooleanError::ImagesDontCover);
        }
        Ok(BoolHom {
            dom,
            cod,
            atom_images,
        })
    }

    pub fn identity(b: &BooleanAlgebra) -> Self {
        let images = (0..b.atom_count()).map(|i| b.atom_mask(i)).collect();
        BoolHom {
            dom: b.clone(),
            cod: b.clone(),
            atom_images: images,
        }
    }

    pub fn atom_images(&self) -> &[u32] {
        &self.atom_images
    }

    pub fn apply(&self, x: u32) -> u32 {
        let mut out = 0;
        for i in self.dom.atoms_in(x) {
            out |= self.atom_images[i];
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.dom == self.cod
            && self
                .atom_images
                .iter()
                .enumerate()
                .all(|(i, &m)| m == self.dom.atom_mask(i))
    }

    pub fn is_injective(&self) -> bool {
        self.atom_images.iter().all(|&m| m != 0)
    }

    /// self after first: `self . first` (first: A -> dom, result A -> cod).
    pub fn compose(&self, first: &BoolHom) -> Result<BoolHom, BooleanError> {
        if first.cod != self.dom {
            return Err(BooleanError::Arity);
        }
        let images = first.atom_images.iter().map(|&m| self.apply(m)).collect();
        BoolHom::new(first.dom.clone(), self.cod.clone(), images)
    }

    /// All Boolean homomorphisms dom -> cod, in a canonical order.
    /// Equivalently: all functions from cod's atoms to dom's atoms.
    pub fn enumerate(dom: &BooleanAlgebra, cod: &BooleanAlgebra) -> Vec<BoolHom> {
        let k = cod.atom_count();
        let d = dom.atom_count();
        let mut out = Vec::new();
        let total = (d as u64).pow(k as u32);
        for code in 0..total {
            let mut c = code;
            let mut images = vec![0u32; d];
            for j in 0..k {
                let target = (c % d as u64) as usize;
                c /= d as u64;
                images[target] |= cod.atom_mask(j);
            }
            out.push(BoolHom {
                dom: dom.clone(),
                cod: cod.clone(),
                atom_images: images,
            });
        }
        out.sort();
        out.dedup();
        out
    }
}

impl fmt::Display for BoolHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .atom_images
            .iter()
            .enumerate()
            .map(|(i, &m)| format!("{}->{}", self.dom.atom_names()[i], self.cod.render(m)))
            .collect();
        write!(f, "[{}]", parts.join(", "))
    }
}
