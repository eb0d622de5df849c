//! Boolean frames: quantum-algebra morphisms from a finite Boolean algebra
//! into a finite orthomodular lattice, together with subalgebra and block
//! enumeration.
//!
//! A frame is stored by its atom images. Construction checks the atom-level
//! conditions (pairwise orthogonal images joining to the top) and then the
//! full induced-map morphism property: preservation of 0, 1, complement and
//! every meet and join of the source. Frames need not be injective; an atom
//! may map to 0.

use crate::boolean::{BoolHom, BooleanAlgebra};
use crate::lattice::FiniteOml;
use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FrameError {
    #[error("frame needs one image per source atom")]
    Arity,
    #[error("images of atoms {a} and {b} are not orthogonal")]
    NotOrthogonal { a: usize, b: usize },
    #[error("join of atom images is not the top")]
    NotUnital,
    #[error("induced map breaks {law} at ({x}, {y})")]
    NotMorphism { law: &'static str, x: u32, y: u32 },
    #[error("composition is ill-typed: homomorphism codomain differs from frame source")]
    IllTyped,
}

/// A morphism from a Boolean event algebra into a quantum event algebra,
/// determined by atom images.
#[derive(Clone, Debug)]
pub struct BooleanFrame {
    source: BooleanAlgebra,
    target: Arc<FiniteOml>,
    atom_images: Vec<usize>,
}

impl PartialEq for BooleanFrame {
    fn eq(&self, other: &Self) -> bool {
        self.source == other.source
            && self.atom_images == other.atom_images
            && (Arc::ptr_eq(&self.target, &other.target) || self.target == other.target)
    }
}

impl Eq for BooleanFrame {}

impl PartialOrd for BooleanFrame {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BooleanFrame {
    fn cmp(&self, other: &Self) -> Ordering {
        self.source
            .cmp(&other.source)
            .then_with(|| self.atom_images.cmp(&other.atom_images))
    }
}

impl BooleanFrame {
    /// Check the atom-level frame conditions and the full morphism property,
    /// then build.
    pub fn new(
        source: BooleanAlgebra,
        target: Arc<FiniteOml>,
        atom_images: Vec<usize>,
    ) -> Result<BooleanFrame, FrameError> {
        if atom_images.len() != source.atom_count() {
            return Err(FrameError::Arity);
        }
        for (i, &x) in atom_images.iter().enumerate() {
            for (j, &y) in atom_images.iter().enumerate() {
                if i < j && !target.orthogonal(x, y) {
                    return Err(FrameError::NotOrthogonal { a: i, b: j });
                }
            }
        }
        if target.join_all(atom_images.iter().copied()) != target.one() {
            return Err(FrameError::NotUnital);
        }
        let frame = BooleanFrame {
            source,
            target,
            atom_images,
        };
        frame.verify_morphism()?;
        Ok(frame)
    }

    /// Full structure-preservation check of the induced map on all elements.
    pub fn verify_morphism(&self) -> Result<(), FrameError> {
        let l = &self.target;
        let b = &self.source;
        if self.apply(0) != l.zero() {
            return Err(FrameError::NotMorphism {
                law: "zero",
                x: 0,
                y: 0,
            });
        }
        if self.apply(b.top()) != l.one() {
            return Err(FrameError::NotMorphism {
                law: "one",
                x: b.top(),
                y: b.top(),
            });
        }
        for x in b.elements() {
            let hx = self.apply(x);
            if self.apply(b.complement(x)) != l.comp(hx) {
                return Err(FrameError::NotMorphism {
                    law: "complement",
                    x,
                    y: x,
                });
            }
            for y in b.elements() {
                let hy = self.apply(y);
                if self.apply(x | y) != l.join(hx, hy) {
                    return Err(FrameError::NotMorphism { law: "join", x, y });
                }
                if self.apply(x & y) != l.meet(hx, hy) {
                    return Err(FrameError::NotMorphism { law: "meet", x, y });
                }
            }
        }
        Ok(())
    }

    pub fn source(&self) -> &BooleanAlgebra {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteOml> {
        &self.target
    }

    pub fn atom_images(&self) -> &[usize] {
        &self.atom_images
    }

    /// Induced map: join of the images of the atoms under the element.
    pub fn apply(&self, x: u32) -> usize {
        self.target
            .join_all(self.source.atoms_in(x).map(|i| self.atom_images[i]))
    }

    /// Image of the induced map as a sorted element set of the target.
    pub fn image(&self) -> Vec<usize> {
        let mut img: Vec<usize> = self.source.elements().map(|x| self.apply(x)).collect();
        img.sort_unstable();
        img.dedup();
        img
    }

    pub fn is_injective(&self) -> bool {
        self.image().len() == self.source.size()
    }

    /// The frame obtained by precomposition with a Boolean homomorphism
    /// `f: C -> source`.
    pub fn restrict(&self, f: &BoolHom) -> Result<BooleanFrame, FrameError> {
        if f.cod != self.source {
            return Err(FrameError::IllTyped);
        }
        let images = f.atom_images().iter().map(|&m| self.apply(m)).collect();
        BooleanFrame::new(f.dom.clone(), Arc::clone(&self.target), images)
    }
}

impl fmt::Display for BooleanFrame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .atom_images
            .iter()
            .enumerate()
            .map(|(i, &x)| format!("{}->{}", self.source.atom_names()[i], self.target.label(x)))
            .collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// Presheaf restriction: the frame with induced map `psi . f`.
pub fn restrict_frame(frame: &BooleanFrame, f: &BoolHom) -> Result<BooleanFrame, FrameError> {
    frame.restrict(f)
}

/// All Boolean frames from `source` into `target`, sorted by atom images.
pub fn enumerate_frames(source: &BooleanAlgebra, target: &Arc<FiniteOml>) -> Vec<BooleanFrame> {
    let k = source.atom_count();
    let n = target.n();
    let mut out = Vec::new();
    let mut images = vec![0usize; k];

    fn rec(
        source: &BooleanAlgebra,
        target: &Arc<FiniteOml>,
        images: &mut Vec<usize>,
        depth: usize,
        out: &mut Vec<BooleanFrame>,
    ) {
        let k = images.len();
        if depth == k {
            if target.join_all(images.iter().copied()) == target.one() {
                // on an orthomodular target the morphism check never fails
                // for orthogonal unital images; without orthomodularity it
                // weeds out non-morphisms
                if let Ok(frame) =
                    BooleanFrame::new(source.clone(), Arc::clone(target), images.clone())
                {
                    out.push(frame);
                }
            }
            return;
        }
        for x in 0..target.n() {
            if images[..depth].iter().all(|&y| target.orthogonal(x, y)) {
                images[depth] = x;
                rec(source, target, images, depth + 1, out);
            }
        }
    }

    let _ = n;
    rec(source, target, &mut images, 0, &mut out);
    out.sort();
    out
}

/// A Boolean subalgebra of a lattice: its carrier in the lattice, its own
/// atoms (an orthopartition of the top), the abstracted algebra, and the
/// canonical injection frame.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subalgebra {
    pub atoms: Vec<usize>,
    pub elements: Vec<usize>,
    pub algebra: BooleanAlgebra,
    pub injection: BooleanFrame,
}

/// All Boolean subalgebras of L: one per set of pairwise-orthogonal nonzero
/// elements whose join is the top. Sorted by (size, carrier).
pub fn enumerate_boolean_subalgebras(target: &Arc<FiniteOml>) -> Vec<Subalgebra> {
    let l = target.as_ref();
    let mut partitions: Vec<Vec<usize>> = Vec::new();
    let mut current: Vec<usize> = Vec::new();

    fn rec(
        l: &FiniteOml,
        start: usize,
        current: &mut Vec<usize>,
        partitions: &mut Vec<Vec<usize>>,
    ) {
        let joined = l.join_all(current.iter().copied());
        if joined == l.one() && !current.is_empty() {
            partitions.push(current.clone());
            return; // nothing orthogonal to a full partition but 0
        }
        for x in start..l.n() {
            if x == l.zero() {
                continue;
            }
            if current.iter().all(|&y| l.orthogonal(x, y)) {
                current.push(x);
                rec(l, x + 1, current, partitions);
                current.pop();
            }
        }
    }
    rec(l, 0, &mut current, &mut partitions);

    let mut subs: Vec<Subalgebra> = partitions
        .into_iter()
        .filter_map(|atoms| {
            let algebra =
                BooleanAlgebra::new(atoms.iter().map(|&a| l.label(a).to_string()).collect())
                    .expect("orthopartition atoms are distinct and nonempty");
            // in an orthomodular lattice every orthopartition generates a
            // Boolean subalgebra; without orthomodularity the join closure
            // can fail to be complement-closed (O6's {a, b'} does), so the
            // morphism check decides membership
            let injection =
                BooleanFrame::new(algebra.clone(), Arc::clone(target), atoms.clone()).ok()?;
            let elements = injection.image();
            Some(Subalgebra {
                atoms,
                elements,
                algebra,
                injection,
            })
        })
        .collect();
    subs.sort_by(|a, b| (a.elements.len(), &a.elements).cmp(&(b.elements.len(), &b.elements)));
    subs
}

/// Maximal Boolean subalgebras: the inclusion-maximal entries of the
/// exhaustive subalgebra enumeration. On orthomodular lattices the result is
/// cross-checked against an independent route, the maximal cliques of the
/// mutual-compatibility graph (maximal pairwise-compatible sets are closed
/// there; without orthomodularity they need not be subalgebras at all, O6's
/// {0, a, b', 1} being the standard counterexample).
pub fn enumerate_blocks(target: &Arc<FiniteOml>) -> Vec<Subalgebra> {
    let l = target.as_ref();
    let subs = enumerate_boolean_subalgebras(target);
    let maximal: Vec<Subalgebra> = subs
        .iter()
        .filter(|s| {
            !subs.iter().any(|t| {
                t.elements.len() > s.elements.len()
                    && s.elements.iter().all(|e| t.elements.contains(e))
            })
        })
        .cloned()
        .collect();

    if l.is_orthomodular() {
        let n = l.n();
        let mut adj = vec![vec![false; n]; n];
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    adj[i][j] = l.compatible(i, j) && l.compatible(j, i);
                }
            }
        }
        let mut clique_carriers = crate::ray::maximal_orthogonality_cliques(&adj);
        clique_carriers.sort();
        let mut carrier_check: Vec<Vec<usize>> =
            maximal.iter().map(|s| s.elements.clone()).collect();
        carrier_check.sort();
        assert_eq!(
            clique_carriers, carrier_check,
            "block enumeration routes disagree"
        );
    }
    maximal
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::block::BlockScenario;
    use crate::pasting::scenario_orthoposet;

    fn mo2() -> Arc<FiniteOml> {
        let s = BlockScenario::parse("atoms a a' b b'\nblock a a'\nblock b b'\n").unwrap();
        match scenario_orthoposet(&s).unwrap() {
            crate::pasting::PastedScenario::Lattice { oml, .. } => Arc::new(oml),
            _ => panic!("mo2 is a lattice"),
        }
    }

    fn b8() -> Arc<FiniteOml> {
        Arc::new(BooleanAlgebra::with_atom_count(3).unwrap().as_oml())
    }

    #[test]
    fn mo2_has_three_subalgebras_two_blocks() {
        let l = mo2();
        let subs = enumerate_boolean_subalgebras(&l);
        let sizes: Vec<usize> = subs.iter().map(|s| s.elements.len()).collect();
        assert_eq!(sizes, vec![2, 4, 4]);
        let blocks = enumerate_blocks(&l);
        assert_eq!(blocks.len(), 2);
    }

    #[test]
    fn b8_has_five_subalgebras_one_block() {
        let l = b8();
        assert_eq!(enumerate_boolean_subalgebras(&l).len(), 5);
        let blocks = enumerate_blocks(&l);
        assert_eq!(blocks.len(), 1);
        assert_eq!(blocks[0].elements.len(), 8);
    }

    #[test]
    fn shared_atom_pasting_has_two_blocks() {
        let s = BlockScenario::parse("atoms a b c d e\nblock a b c\nblock c d e\n").unwrap();
        let l = match scenario_orthoposet(&s).unwrap() {
            crate::pasting::PastedScenario::Lattice { oml, .. } => Arc::new(oml),
            _ => panic!("lattice"),
        };
        let blocks = enumerate_blocks(&l);
        assert_eq!(blocks.len(), 2);
        assert_eq!(enumerate_boolean_subalgebras(&l).len(), 8);
    }

    #[test]
    fn non_orthomodular_ortholattice_subalgebras() {
        // O6: the orthopartition {a, b'} joins to the top but its closure is
        // not complement-closed, so only three Boolean subalgebras exist
        let labels: Vec<String> = ["0", "a", "b", "b'", "a'", "1"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let pairs = [(0, 1), (1, 2), (2, 5), (0, 3), (3, 4), (4, 5)];
        let t = crate::lattice::LatticeTable::from_pairs(labels, &pairs, vec![5, 4, 3, 2, 1, 0]);
        let o6 = Arc::new(FiniteOml::from_table(t).unwrap());
        assert!(!o6.is_orthomodular());
        let subs = enumerate_boolean_subalgebras(&o6);
        assert_eq!(subs.len(), 3);
        assert_eq!(enumerate_blocks(&o6).len(), 2);
    }

    #[test]
    fn b2_frame_is_unique() {
        let b2 = BooleanAlgebra::with_atom_count(1).unwrap();
        for l in [mo2(), b8()] {
            let frames = enumerate_frames(&b2, &l);
            assert_eq!(frames.len(), 1);
            assert_eq!(frames[0].atom_images(), &[l.one()]);
        }
    }

    #[test]
    fn frames_b4_to_mo2() {
        let b4 = BooleanAlgebra::with_atom_count(2).unwrap();
        let frames = enumerate_frames(&b4, &mo2());
        assert_eq!(frames.len(), 6);
        assert_eq!(frames.iter().filter(|f| f.is_injective()).count(), 4);
    }

    #[test]
    fn frames_b8_to_mo2() {
        let b8a = BooleanAlgebra::with_atom_count(3).unwrap();
        let frames = enumerate_frames(&b8a, &mo2());
        assert_eq!(frames.len(), 15);
    }

    #[test]
    fn restriction_of_any_b4_frame_is_the_b2_frame() {
        let l = mo2();
        let b2 = BooleanAlgebra::with_atom_count(1).unwrap();
        let b4 = BooleanAlgebra::with_atom_count(2).unwrap();
        let incl = BoolHom::enumerate(&b2, &b4);
        assert_eq!(incl.len(), 1);
        let b2_frames = enumerate_frames(&b2, &l);
        for f in enumerate_frames(&b4, &l) {
            let r = restrict_frame(&f, &incl[0]).unwrap();
            assert_eq!(r, b2_frames[0]);
        }
    }

    #[test]
    fn identity_restriction_is_identity() {
        let l = mo2();
        let b4 = BooleanAlgebra::with_atom_count(2).unwrap();
        let id = BoolHom::identity(&b4);
        for f in enumerate_frames(&b4, &l) {
            assert_eq!(restrict_frame(&f, &id).unwrap(), f);
        }
    }

    #[test]
    fn restriction_composes_through_atom_grouping() {
        // B_4 -> B_8 sending p to atom1|atom2 and q to atom3, composed with
        // the identity frame of B_8
        let l = b8();
        let b4 = BooleanAlgebra::with_atom_count(2).unwrap();
        let b8a = BooleanAlgebra::with_atom_count(3).unwrap();
        let grouping = BoolHom::new(b4.clone(), b8a.clone(), vec![0b011, 0b100]).unwrap();
        let identity_frame = BooleanFrame::new(
            b8a,
            Arc::clone(&l),
            vec![1, 2, 4], // masks of the three atoms in the powerset lattice
        )
        .unwrap();
        let restricted = restrict_frame(&identity_frame, &grouping).unwrap();
        assert_eq!(restricted.atom_images(), &[3, 4]); // atom1|atom2, atom3
    }

    #[test]
    fn block_injection_appears_among_injective_frames() {
        let l = mo2();
        for block in enumerate_blocks(&l) {
            let frames = enumerate_frames(&block.algebra, &l);
            assert!(frames.contains(&block.injection));
            assert!(block.injection.is_injective());
        }
    }
}
