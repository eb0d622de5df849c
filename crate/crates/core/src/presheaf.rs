//! The presheaf of Boolean frames over a finite base category of Boolean
//! algebras, its category of elements, and the discrete-fibration check.

use crate::boolean::{BoolHom, BooleanAlgebra};
use crate::frames::{enumerate_frames, BooleanFrame, Subalgebra};
use crate::lattice::FiniteOml;
use serde::Serialize;
use std::sync::Arc;
use thiserror::Error;

/// A finite category whose objects are Boolean algebras and whose arrows are
/// Boolean homomorphisms. Identities must be present and composites closed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseCategory {
    pub objects: Vec<BooleanAlgebra>,
    pub arrows: Vec<BaseArrow>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseArrow {
    pub dom: usize,
    pub cod: usize,
    pub hom: BoolHom,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BaseError {
    #[error("object {0} has no identity arrow")]
    MissingIdentity(usize),
    #[error("base is not closed under composition: arrows {f} then {g}")]
    NotClosed { f: usize, g: usize },
    #[error("arrow {0} is ill-typed for its endpoints")]
    IllTyped(usize),
}

impl BaseCategory {
    /// Validate identities, typing, and closure under composition.
    pub fn check(&self) -> Result<(), BaseError> {
        for (i, a) in self.arrows.iter().enumerate() {
            if a.hom.dom != self.objects[a.dom] || a.hom.cod != self.objects[a.cod] {
                return Err(BaseError::IllTyped(i));
            }
        }
        for o in 0..self.objects.len() {
            if self.identity(o).is_none() {
                return Err(BaseError::MissingIdentity(o));
            }
        }
        for (fi, f) in self.arrows.iter().enumerate() {
            for (gi, g) in self.arrows.iter().enumerate() {
                if f.cod == g.dom {
                    let comp = g.hom.compose(&f.hom).expect("typed above");
                    let found = self
                        .arrows
                        .iter()
                        .any(|h| h.dom == f.dom && h.cod == g.cod && h.hom == comp);
                    if !found {
                        return Err(BaseError::NotClosed { f: fi, g: gi });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn identity(&self, obj: usize) -> Option<usize> {
        self.arrows
            .iter()
            .position(|a| a.dom == obj && a.cod == obj && a.hom.is_identity())
    }

    pub fn arrow_index(&self, dom: usize, cod: usize, hom: &BoolHom) -> Option<usize> {
        self.arrows
            .iter()
            .position(|a| a.dom == dom && a.cod == cod && &a.hom == hom)
    }

    /// The base of all Boolean subalgebras of L with inclusion arrows.
    pub fn subalgebra_base(target: &Arc<FiniteOml>) -> (BaseCategory, Vec<Subalgebra>) {
        let subs = crate::frames::enumerate_boolean_subalgebras(target);
        let objects: Vec<BooleanAlgebra> = subs.iter().map(|s| s.algebra.clone()).collect();
        let mut arrows = Vec::new();
        for (i, si) in subs.iter().enumerate() {
            for (j, sj) in subs.iter().enumerate() {
                if si.elements.iter().all(|e| sj.elements.contains(e)) {
                    // unique hom with psi_j . u = psi_i: each atom of si is a
                    // join of sj-atoms below it
                    let images: Vec<u32> = si
                        .atoms
                        .iter()
                        .map(|&a| {
                            let mut m = 0u32;
                            for (k, &b) in sj.atoms.iter().enumerate() {
                                if target.leq(b, a) {
                                    m |= 1 << k;
                                }
                            }
                            m
                        })
                        .collect();
                    let hom = BoolHom::new(si.algebra.clone(), sj.algebra.clone(), images)
                        .expect("inclusion of subalgebras is a Boolean homomorphism");
                    arrows.push(BaseArrow {
                        dom: i,
                        cod: j,
                        hom,
                    });
                }
            }
        }
        (BaseCategory { objects, arrows }, subs)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PresheafError {
    #[error(transparent)]
    Base(#[from] BaseError),
    #[error("restriction along arrow {arrow} leaves the enumerated section set")]
    RestrictionEscapes { arrow: usize },
    #[error("functor law broken: {0}")]
    FunctorLaw(String),
}

/// The functor of Boolean frames R(L) over a finite base: per object the
/// frame set, per arrow the restriction map (contravariant).
#[derive(Clone, Debug)]
pub struct FramePresheaf {
    pub base: BaseCategory,
    pub sections: Vec<Vec<BooleanFrame>>,
    /// `restrictions[a][s]`: index in `sections[arrow a's dom]` of the
    /// restriction of `sections[arrow a's cod][s]`.
    pub restrictions: Vec<Vec<usize>>,
}

impl FramePresheaf {
    /// Assemble without verification (for tests that seed defects).
    pub fn from_parts(
        base: BaseCategory,
        sections: Vec<Vec<BooleanFrame>>,
        restrictions: Vec<Vec<usize>>,
    ) -> Self {
        FramePresheaf {
            base,
            sections,
            restrictions,
        }
    }

    /// Every restriction entry must be the actual frame restriction along
    /// its arrow. Holds by construction for [`build_presheaf`] output; this
    /// catches hand-assembled or corrupted restriction maps.
    pub fn check_restriction_contents(&self) -> Result<(), PresheafError> {
        for (ai, arrow) in self.base.arrows.iter().enumerate() {
            for (s, frame) in self.sections[arrow.cod].iter().enumerate() {
                let expected = frame
                    .restrict(&arrow.hom)
                    .map_err(|_| PresheafError::RestrictionEscapes { arrow: ai })?;
                let idx = self.restrictions[ai][s];
                if self.sections[arrow.dom].get(idx) != Some(&expected) {
                    return Err(PresheafError::FunctorLaw(format!(
                        "restriction along arrow {ai} of section {s} is not the \
                         frame restriction"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Identity and composition laws, checked exhaustively.
    pub fn check_functor_laws(&self) -> Result<(), PresheafError> {
        for (ai, arrow) in self.base.arrows.iter().enumerate() {
            if arrow.hom.is_identity() && arrow.dom == arrow.cod {
                for (s, &t) in self.restrictions[ai].iter().enumerate() {
                    if s != t {
                        return Err(PresheafError::FunctorLaw(format!(
                            "restriction along identity of object {} moves section {s}",
                            arrow.dom
                        )));
                    }
                }
            }
        }
        for (fi, f) in self.base.arrows.iter().enumerate() {
            for (gi, g) in self.base.arrows.iter().enumerate() {
                if f.cod != g.dom {
                    continue;
                }
                let comp = g.hom.compose(&f.hom).expect("typed");
                let ci = self
                    .base
                    .arrow_index(f.dom, g.cod, &comp)
                    .ok_or(BaseError::NotClosed { f: fi, g: gi })?;
                for s in 0..self.sections[g.cod].len() {
                    let via_pair = self.restrictions[fi][self.restrictions[gi][s]];
                    let direct = self.restrictions[ci][s];
                    if via_pair != direct {
                        return Err(PresheafError::FunctorLaw(format!(
                            "restriction along composite of arrows {fi} and {gi} \
                             disagrees at section {s}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Build R(L) over a base: sections by frame enumeration, restrictions by
/// frame restriction, functor laws verified on construction.
pub fn build_presheaf(
    target: &Arc<FiniteOml>,
    base: BaseCategory,
) -> Result<FramePresheaf, PresheafError> {
    base.check()?;
    let sections: Vec<Vec<BooleanFrame>> = base
        .objects
        .iter()
        .map(|b| enumerate_frames(b, target))
        .collect();
    let mut restrictions = Vec::with_capacity(base.arrows.len());
    for (ai, arrow) in base.arrows.iter().enumerate() {
        let mut map = Vec::with_capacity(sections[arrow.cod].len());
        for frame in &sections[arrow.cod] {
            let restricted = frame
                .restrict(&arrow.hom)
                .expect("arrow codomain matches frame source");
            let idx = sections[arrow.dom]
                .iter()
                .position(|f| f == &restricted)
                .ok_or(PresheafError::RestrictionEscapes { arrow: ai })?;
            map.push(idx);
        }
        restrictions.push(map);
    }
    let p = FramePresheaf {
        base,
        sections,
        restrictions,
    };
    p.check_functor_laws()?;
    p.check_restriction_contents()?;
    Ok(p)
}

/// The category of elements of a frame presheaf: objects are pairs
/// (object, frame), arrows lie over base arrows.
#[derive(Clone, Debug)]
pub struct ElementCategory {
    pub base: BaseCategory,
    /// (base object index, section index)
    pub objects: Vec<(usize, usize)>,
    pub arrows: Vec<ElementArrow>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementArrow {
    pub dom: usize,
    pub cod: usize,
    /// Index of the underlying base arrow.
    pub base: usize,
}

pub fn category_of_elements(p: &FramePresheaf) -> ElementCategory {
    let mut objects: Vec<(usize, usize)> = Vec::new();
    for (o, sec) in p.sections.iter().enumerate() {
        for s in 0..sec.len() {
            objects.push((o, s));
        }
    }
    objects.sort_unstable();
    let obj_index = |o: usize, s: usize| objects.iter().position(|&x| x == (o, s)).unwrap();
    let mut arrows = Vec::new();
    for (ai, arrow) in p.base.arrows.iter().enumerate() {
        for s in 0..p.sections[arrow.cod].len() {
            let dom = obj_index(arrow.dom, p.restrictions[ai][s]);
            let cod = obj_index(arrow.cod, s);
            arrows.push(ElementArrow { dom, cod, base: ai });
        }
    }
    ElementCategory {
        base: p.base.clone(),
        objects,
        arrows,
    }
}

/// Outcome of the fibration check, with witnesses when a law fails.
#[derive(Clone, Debug, Serialize)]
pub struct FibrationReport {
    pub discrete: bool,
    pub discrete_witnesses: Vec<String>,
    pub split_lifts: bool,
    pub lift_witnesses: Vec<String>,
    pub notes: String,
}

impl FibrationReport {
    pub fn holds(&self) -> bool {
        self.discrete && self.split_lifts
    }
}

/// Check that the projection to the base is a discrete fibration with unique
/// lifts. Uniformity of fibers is recorded as a note: no finite test for it
/// is performed beyond discreteness and lift uniqueness.
pub fn check_discrete_fibration(ec: &ElementCategory) -> FibrationReport {
    let mut discrete_witnesses = Vec::new();
    for a in &ec.arrows {
        let base = &ec.base.arrows[a.base];
        if base.hom.is_identity() && base.dom == base.cod && a.dom != a.cod {
            discrete_witnesses.push(format!(
                "fiber over object {} contains a non-identity arrow {} -> {}",
                base.dom, a.dom, a.cod
            ));
        }
    }
    let mut lift_witnesses = Vec::new();
    for (oi, &(obj, sec)) in ec.objects.iter().enumerate() {
        for (bi, barrow) in ec.base.arrows.iter().enumerate() {
            if barrow.cod != obj {
                continue;
            }
            let lifts: Vec<&ElementArrow> = ec
                .arrows
                .iter()
                .filter(|a| a.cod == oi && a.base == bi)
                .collect();
            match lifts.len() {
                1 => {
                    let d = lifts[0].dom;
                    if ec.objects[d].0 != barrow.dom {
                        lift_witnesses.push(format!(
                            "lift of base arrow {bi} into object ({obj},{sec}) \
                             starts over the wrong object"
                        ));
                    }
                }
                0 => lift_witnesses.push(format!(
                    "no lift of base arrow {bi} with target object ({obj},{sec})"
                )),
                k => lift_witnesses.push(format!(
                    "{k} lifts of base arrow {bi} with target object ({obj},{sec})"
                )),
            }
        }
    }
    FibrationReport {
        discrete: discrete_witnesses.is_empty(),
        discrete_witnesses,
        split_lifts: lift_witnesses.is_empty(),
        lift_witnesses,
        notes: "uniformity of fibers (indistinguishability of the frame family over \
                any two events of the same probe) admits no finite test here; this \
                report checks discreteness and lift uniqueness only"
            .to_string(),
    }
}
