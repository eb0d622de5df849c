//! Finite presheaves of Boolean algebras and their colimit pasting.
//!
//! A [`BooleanDiagram`] is a set-valued presheaf on a finite base category of
//! Boolean algebras. Pasting forms the disjoint union of the algebras over
//! the diagram's category of elements and quotients it by the identifications
//! induced by the arrows; the induced order and orthocomplement are checked,
//! and the quotient is promoted to a [`FiniteOml`] exactly when all bounds
//! exist and the ortholattice axioms hold.

use crate::boolean::BooleanAlgebra;
use crate::lattice::{validate_ortholattice, FiniteOml, LatticeTable, ValidationReport};
use crate::presheaf::{BaseCategory, BaseError};
use std::sync::Arc;
use thiserror::Error;

/// A finite presheaf of sets on a base of Boolean algebras: per object a
/// finite section list, per arrow a contravariant restriction map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BooleanDiagram {
    pub base: BaseCategory,
    pub sections: Vec<Vec<String>>,
    /// `restrictions[a][s]`: index in sections of arrow a's dom of the
    /// restriction of section s over arrow a's cod.
    pub restrictions: Vec<Vec<usize>>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DiagramError {
    #[error(transparent)]
    Base(#[from] BaseError),
    #[error("functor law broken: {0}")]
    FunctorLaw(String),
}

impl BooleanDiagram {
    pub fn check(&self) -> Result<(), DiagramError> {
        self.base.check()?;
        for (ai, arrow) in self.base.arrows.iter().enumerate() {
            if self.restrictions[ai].len() != self.sections[arrow.cod].len() {
                return Err(DiagramError::FunctorLaw(format!(
                    "restriction along arrow {ai} has the wrong arity"
                )));
            }
            for &t in &self.restrictions[ai] {
                if t >= self.sections[arrow.dom].len() {
                    return Err(DiagramError::FunctorLaw(format!(
                        "restriction along arrow {ai} escapes the section set"
                    )));
                }
            }
            if arrow.hom.is_identity() && arrow.dom == arrow.cod {
                for (s, &t) in self.restrictions[ai].iter().enumerate() {
                    if s != t {
                        return Err(DiagramError::FunctorLaw(format!(
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
                    if self.restrictions[fi][self.restrictions[gi][s]] != self.restrictions[ci][s] {
                        return Err(DiagramError::FunctorLaw(format!(
                            "composite restriction disagrees along arrows {fi}, {gi}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PasteError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("diagram has no sections; the colimit is empty at desk scale")]
    EmptyDiagram,
    #[error("orthocomplement ill-defined on pasted class {label:?}")]
    IllDefinedComplement { label: String },
    #[error("pasting collapse: classes {a:?} and {b:?} are ordered both ways")]
    OrderCollapse { a: String, b: String },
    #[error("pasting collapse: zero and one land in the same class")]
    ZeroEqualsOne,
}

/// The quotient structure obtained by pasting a diagram.
#[derive(Clone, Debug)]
pub struct PastedStructure {
    /// Category-of-elements objects: (base object index, section index).
    pub elcat_objects: Vec<(usize, usize)>,
    /// Per class, its member nodes (elcat object index, element mask), sorted.
    pub class_members: Vec<Vec<(usize, u32)>>,
    pub labels: Vec<String>,
    /// Row-major class order (reflexive-transitive closure of in-object
    /// inclusion), antisymmetry already checked.
    pub leq: Vec<bool>,
    pub comp: Vec<usize>,
    pub zero: usize,
    pub one: usize,
    /// Class of each (elcat object, mask) node.
    node_class: Vec<Vec<usize>>,
    /// The promoted lattice when every bound exists and the axioms hold.
    pub lattice: Option<Arc<FiniteOml>>,
    /// Why promotion failed, when it did.
    pub missing_bounds: Vec<(usize, usize)>,
    pub ortho_failure: Option<ValidationReport>,
    /// First orthomodularity violation of the promoted lattice, if any.
    pub om_witness: Option<(usize, usize)>,
}

impl PastedStructure {
    pub fn class_count(&self) -> usize {
        self.class_members.len()
    }

    pub fn class_of(&self, elcat_object: usize, mask: u32) -> usize {
        self.node_class[elcat_object][mask as usize]
    }

    pub fn is_lattice(&self) -> bool {
        self.lattice.is_some()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.class_count() + b]
    }

    /// Per base-diagram object, the sorted classes its elements land in.
    pub fn block_map(&self) -> Vec<Vec<usize>> {
        self.elcat_objects
            .iter()
            .enumerate()
            .map(|(o, _)| {
                let mut v: Vec<usize> = self.node_class[o].clone();
                v.sort_unstable();
                v.dedup();
                v
            })
            .collect()
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }
    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Paste a diagram into its colimit structure.
pub fn paste_colimit(p: &BooleanDiagram) -> Result<PastedStructure, PasteError> {
    p.check()?;

    let mut elcat_objects: Vec<(usize, usize)> = Vec::new();
    for (o, sec) in p.sections.iter().enumerate() {
        for s in 0..sec.len() {
            elcat_objects.push((o, s));
        }
    }
    elcat_objects.sort_unstable();
    if elcat_objects.is_empty() {
        return Err(PasteError::EmptyDiagram);
    }
    let elobj_index = |o: usize, s: usize| elcat_objects.iter().position(|&x| x == (o, s)).unwrap();
    let algebra_of = |eo: usize| -> &BooleanAlgebra { &p.base.objects[elcat_objects[eo].0] };

    // flatten nodes
    let mut node_offset = vec![0usize; elcat_objects.len()];
    let mut total = 0usize;
    for (eo, _) in elcat_objects.iter().enumerate() {
        node_offset[eo] = total;
        total += algebra_of(eo).size();
    }
    let node_id = |eo: usize, mask: u32| node_offset[eo] + mask as usize;

    let mut uf = UnionFind::new(total);
    for (ai, arrow) in p.base.arrows.iter().enumerate() {
        for s in 0..p.sections[arrow.cod].len() {
            let dom_eo = elobj_index(arrow.dom, p.restrictions[ai][s]);
            let cod_eo = elobj_index(arrow.cod, s);
            for c in p.base.objects[arrow.dom].elements() {
                uf.union(node_id(dom_eo, c), node_id(cod_eo, arrow.hom.apply(c)));
            }
        }
    }

    // canonical class ids: roots sorted by (popcount, node id)
    let mut roots: Vec<usize> = Vec::new();
    for i in 0..total {
        let r = uf.find(i);
        if !roots.contains(&r) {
            roots.push(r);
        }
    }
    let popcount_of = |node: usize| {
        let eo = node_offset
            .iter()
            .enumerate()
            .rev()
            .find(|&(_, &off)| off <= node)
            .map(|(eo, _)| eo)
            .unwrap();
        ((node - node_offset[eo]) as u32).count_ones()
    };
    roots.sort_by_key(|&r| (popcount_of(r), r));
    let n_classes = roots.len();

    let mut node_class: Vec<Vec<usize>> = Vec::with_capacity(elcat_objects.len());
    let mut class_members: Vec<Vec<(usize, u32)>> = vec![Vec::new(); n_classes];
    for (eo, _) in elcat_objects.iter().enumerate() {
        let mut per = Vec::with_capacity(algebra_of(eo).size());
        for mask in 0..algebra_of(eo).size() as u32 {
            let root = uf.find(node_id(eo, mask));
            let cls = roots.iter().position(|&r| r == root).unwrap();
            per.push(cls);
            class_members[cls].push((eo, mask));
        }
        node_class.push(per);
    }
    for m in &mut class_members {
        m.sort_unstable();
    }

    // labels from the first member; disambiguate collisions
    let mut labels: Vec<String> = Vec::with_capacity(n_classes);
    for members in &class_members {
        let &(eo, mask) = members.first().expect("classes are nonempty");
        let mut label = algebra_of(eo).render(mask);
        if labels.contains(&label) {
            label = format!("{label}#{}", labels.len());
        }
        labels.push(label);
    }

    // orthocomplement on classes, checked well-defined
    let mut comp = vec![usize::MAX; n_classes];
    for (cls, members) in class_members.iter().enumerate() {
        for &(eo, mask) in members {
            let c = node_class[eo][algebra_of(eo).complement(mask) as usize];
            if comp[cls] == usize::MAX {
                comp[cls] = c;
            } else if comp[cls] != c {
                return Err(PasteError::IllDefinedComplement {
                    label: labels[cls].clone(),
                });
            }
        }
    }

    // order generated by in-object inclusion, closed transitively
    let mut leq = vec![false; n_classes * n_classes];
    for c in 0..n_classes {
        leq[c * n_classes + c] = true;
    }
    for (eo, _) in elcat_objects.iter().enumerate() {
        let b = algebra_of(eo);
        for x in b.elements() {
            for y in b.elements() {
                if b.leq(x, y) {
                    leq[node_class[eo][x as usize] * n_classes + node_class[eo][y as usize]] = true;
                }
            }
        }
    }
    for k in 0..n_classes {
        for i in 0..n_classes {
            if leq[i * n_classes + k] {
                for j in 0..n_classes {
                    if leq[k * n_classes + j] {
                        leq[i * n_classes + j] = true;
                    }
                }
            }
        }
    }
    for a in 0..n_classes {
        for b in (a + 1)..n_classes {
            if leq[a * n_classes + b] && leq[b * n_classes + a] {
                return Err(PasteError::OrderCollapse {
                    a: labels[a].clone(),
                    b: labels[b].clone(),
                });
            }
        }
    }

    let zero = node_class[0][0];
    let one = node_class[0][algebra_of(0).complement(0) as usize];
    if zero == one {
        return Err(PasteError::ZeroEqualsOne);
    }

    let table = LatticeTable {
        labels: labels.clone(),
        leq: leq.clone(),
        comp: comp.clone(),
        join: None,
        meet: None,
    };
    let mut missing = Vec::new();
    for x in 0..n_classes {
        for y in x..n_classes {
            if table.lub(x, y).is_none() || table.glb(x, y).is_none() {
                missing.push((x, y));
            }
        }
    }
    let mut ortho_failure = None;
    let mut om_witness = None;
    let lattice = if missing.is_empty() {
        let rep = validate_ortholattice(&table);
        if rep.is_valid() {
            let oml = FiniteOml::from_table(table).expect("just validated");
            om_witness = oml.orthomodularity_witness();
            Some(Arc::new(oml))
        } else {
            ortho_failure = Some(rep);
            None
        }
    } else {
        None
    };

    Ok(PastedStructure {
        elcat_objects,
        class_members,
        labels,
        leq,
        comp,
        zero,
        one,
        node_class,
        lattice,
        missing_bounds: missing,
        ortho_failure,
        om_witness,
    })
}

/// The canonical reconstruction input for a lattice: all of its Boolean
/// subalgebras with inclusion arrows, one section per object (standing for
/// the canonical injection frame), restrictions collapsing accordingly.
pub fn blocks_diagram(target: &Arc<FiniteOml>) -> BooleanDiagram {
    let (base, _) = BaseCategory::subalgebra_base(target);
    let sections: Vec<Vec<String>> = base
        .objects
        .iter()
        .map(|_| vec!["inj".to_string()])
        .collect();
    let restrictions: Vec<Vec<usize>> = base.arrows.iter().map(|_| vec![0]).collect();
    BooleanDiagram {
        base,
        sections,
        restrictions,
    }
}

/// The representable diagram at a Boolean algebra B: its subalgebra base,
/// with the unique inclusion into B as the single section everywhere. Its
/// pasting returns B itself and natural transformations out of it correspond
/// to frames on B.
///
/// Subalgebras of a Boolean algebra are exactly the partitions of its atom
/// set (ordered by refinement), so the base is built directly from set
/// partitions; the finest partition reproduces B itself, atom names intact,
/// and comes last.
pub fn representable_diagram(b: &BooleanAlgebra) -> BooleanDiagram {
    let k = b.atom_count();
    // restricted-growth strings enumerate the set partitions of 0..k-1
    let mut partitions: Vec<Vec<u32>> = Vec::new();
    let mut rgs = vec![0usize; k];
    loop {
        let parts = rgs.iter().copied().max().unwrap() + 1;
        let mut masks = vec![0u32; parts];
        for (i, &p) in rgs.iter().enumerate() {
            masks[p] |= 1 << i;
        }
        masks.sort_unstable();
        partitions.push(masks);
        // next RGS
        let mut i = k;
        loop {
            if i == 1 {
                rgs = Vec::new();
                break;
            }
            i -= 1;
            let cap = rgs[..i].iter().copied().max().unwrap() + 1;
            if rgs[i] < cap {
                rgs[i] += 1;
                for v in rgs[i + 1..].iter_mut() {
                    *v = 0;
                }
                break;
            }
        }
        if rgs.is_empty() {
            break;
        }
    }
    partitions.sort_by_key(|p| (p.len(), p.clone()));

    let part_name = |mask: u32| -> String {
        (0..k)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| b.atom_names()[i].as_str())
            .collect::<Vec<_>>()
            .join("|")
    };
    let objects: Vec<BooleanAlgebra> = partitions
        .iter()
        .map(|parts| {
            BooleanAlgebra::new(parts.iter().map(|&m| part_name(m)).collect())
                .expect("partition parts are nonempty and distinct")
        })
        .collect();

    let mut arrows = Vec::new();
    for (i, coarse) in partitions.iter().enumerate() {
        for (j, fine) in partitions.iter().enumerate() {
            // an arrow coarse -> fine exists when fine refines coarse
            let refines = fine.iter().all(|&fp| {
                coarse.iter().filter(|&&cp| cp & fp != 0).count() == 1
                    && coarse.iter().any(|&cp| fp & !cp == 0)
            });
            if !refines {
                continue;
            }
            let images: Vec<u32> = coarse
                .iter()
                .map(|&cp| {
                    let mut m = 0u32;
                    for (fi, &fp) in fine.iter().enumerate() {
                        if fp & !cp == 0 {
                            m |= 1 << fi;
                        }
                    }
                    m
                })
                .collect();
            let hom = crate::boolean::BoolHom::new(objects[i].clone(), objects[j].clone(), images)
                .expect("refinement induces a Boolean homomorphism");
            arrows.push(crate::presheaf::BaseArrow {
                dom: i,
                cod: j,
                hom,
            });
        }
    }
    let base = BaseCategory { objects, arrows };
    let sections: Vec<Vec<String>> = base
        .objects
        .iter()
        .map(|_| vec!["inj".to_string()])
        .collect();
    let restrictions: Vec<Vec<usize>> = base.arrows.iter().map(|_| vec![0]).collect();
    BooleanDiagram {
        base,
        sections,
        restrictions,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::block::BlockScenario;
    use crate::pasting::{scenario_orthoposet, PastedScenario};

    fn lattice_of(text: &str) -> Arc<FiniteOml> {
        let s = BlockScenario::parse(text).unwrap();
        match scenario_orthoposet(&s).unwrap() {
            PastedScenario::Lattice { oml, .. } => Arc::new(oml),
            _ => panic!("expected lattice"),
        }
    }

    #[test]
    fn single_object_diagram_pastes_to_itself() {
        let b4 = BooleanAlgebra::with_atom_count(2).unwrap();
        let base = BaseCategory {
            objects: vec![b4.clone()],
            arrows: vec![crate::presheaf::BaseArrow {
                dom: 0,
                cod: 0,
                hom: crate::boolean::BoolHom::identity(&b4),
            }],
        };
        let p = BooleanDiagram {
            base,
            sections: vec![vec!["pt".into()]],
            restrictions: vec![vec![0]],
        };
        let k = paste_colimit(&p).unwrap();
        assert_eq!(k.class_count(), 4);
        assert!(k.is_lattice());
        assert!(k.om_witness.is_none());
    }

    #[test]
    fn blocks_diagram_of_mo2_pastes_back_to_mo2() {
        let l = lattice_of("atoms a a' b b'\nblock a a'\nblock b b'\n");
        let p = blocks_diagram(&l);
        assert_eq!(p.base.objects.len(), 3);
        let k = paste_colimit(&p).unwrap();
        assert_eq!(k.class_count(), 6);
        let kl = k.lattice.as_ref().expect("lattice");
        assert!(kl.is_orthomodular());
    }

    #[test]
    fn blocks_diagram_of_shared_atom_pasting_matches_scenario_pasting() {
        let l = lattice_of("atoms a b c d e\nblock a b c\nblock c d e\n");
        let k = paste_colimit(&blocks_diagram(&l)).unwrap();
        // oracle: the scenario pasting built the same 12-element lattice
        assert_eq!(k.class_count(), 12);
        assert!(k.is_lattice());
    }

    #[test]
    fn representable_diagram_pastes_to_its_algebra() {
        for k in 1..=3usize {
            let b = BooleanAlgebra::with_atom_count(k).unwrap();
            let pasted = paste_colimit(&representable_diagram(&b)).unwrap();
            assert_eq!(pasted.class_count(), b.size());
            assert!(pasted.is_lattice());
        }
    }

    #[test]
    fn disconnected_diagram_is_flagged_not_a_lattice() {
        let b4 = BooleanAlgebra::with_atom_count(2).unwrap();
        let base = BaseCategory {
            objects: vec![b4.clone(), b4.clone()],
            arrows: vec![
                crate::presheaf::BaseArrow {
                    dom: 0,
                    cod: 0,
                    hom: crate::boolean::BoolHom::identity(&b4),
                },
                crate::presheaf::BaseArrow {
                    dom: 1,
                    cod: 1,
                    hom: crate::boolean::BoolHom::identity(&b4),
                },
            ],
        };
        let p = BooleanDiagram {
            base,
            sections: vec![vec!["x".into()], vec!["y".into()]],
            restrictions: vec![vec![0], vec![0]],
        };
        let k = paste_colimit(&p).unwrap();
        assert!(!k.is_lattice());
    }
}
