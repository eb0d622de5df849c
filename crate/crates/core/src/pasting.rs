//! Pasting a block scenario into an orthoposet or orthomodular lattice.
//!
//! Elements are equivalence classes of pairs (block, atom subset). Two pairs
//! are identified when they name the same atom set, or when their in-block
//! complements name the same atom set (so a shared atom also shares its
//! complement coatom). The order is generated by in-block inclusion and
//! closed transitively; the result is promoted to a [`FiniteOml`] exactly
//! when every pair of classes has a least upper bound and a greatest lower
//! bound.

use crate::block::BlockScenario;
use crate::lattice::{validate_ortholattice, FiniteOml, LatticeTable, ValidationReport};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PastingError {
    #[error("inconsistent block sharing: {label:?} is forced equal to its own complement")]
    Collapse { label: String },
    #[error("pasting collapse: classes {a:?} and {b:?} are ordered both ways")]
    OrderCollapse { a: String, b: String },
    #[error("complement ill-defined on the class of {label:?}")]
    IllDefinedComplement { label: String },
    #[error("pasted structure is not an ortholattice: {0:?}")]
    NotOrtholattice(ValidationReport),
}

/// Pasting outcome. `atom_class[i]` is the class id of scenario atom i.
#[derive(Clone, Debug, Serialize)]
pub enum PastedScenario {
    Lattice {
        #[serde(skip)]
        oml: FiniteOml,
        /// First orthomodular-law violation on the lattice, if any.
        om_witness: Option<(usize, usize)>,
        atom_class: Vec<usize>,
    },
    OrthoposetOnly {
        #[serde(skip)]
        table: LatticeTable,
        atom_class: Vec<usize>,
        /// Class pairs lacking a least upper bound or greatest lower bound.
        missing_bounds: Vec<(usize, usize)>,
    },
}

impl PastedScenario {
    pub fn as_lattice(&self) -> Option<&FiniteOml> {
        match self {
            PastedScenario::Lattice { oml, .. } => Some(oml),
            PastedScenario::OrthoposetOnly { .. } => None,
        }
    }

    pub fn element_count(&self) -> usize {
        match self {
            PastedScenario::Lattice { oml, .. } => oml.n(),
            PastedScenario::OrthoposetOnly { table, .. } => table.n(),
        }
    }

    pub fn atom_class(&self) -> &[usize] {
        match self {
            PastedScenario::Lattice { atom_class, .. } => atom_class,
            PastedScenario::OrthoposetOnly { atom_class, .. } => atom_class,
        }
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

fn atom_set(scenario: &BlockScenario, block: usize, mask: u32) -> Vec<usize> {
    let b = &scenario.blocks[block];
    (0..b.len())
        .filter(|&k| mask & (1 << k) != 0)
        .map(|k| b[k])
        .collect()
}

/// Build the pasted structure of a block scenario.
pub fn scenario_orthoposet(scenario: &BlockScenario) -> Result<PastedScenario, PastingError> {
    // nodes: (block, mask) flattened in block order
    let mut node_of = Vec::new(); // (block, mask)
    let mut offset = vec![0usize; scenario.blocks.len()];
    for (bi, b) in scenario.blocks.iter().enumerate() {
        offset[bi] = node_of.len();
        for mask in 0..(1u32 << b.len()) {
            node_of.push((bi, mask));
        }
    }
    let n_nodes = node_of.len();
    let full = |bi: usize| (1u32 << scenario.blocks[bi].len()) - 1;

    let mut uf = UnionFind::new(n_nodes);
    let sets: Vec<Vec<usize>> = node_of
        .iter()
        .map(|&(bi, m)| atom_set(scenario, bi, m))
        .collect();
    for i in 0..n_nodes {
        for j in (i + 1)..n_nodes {
            let (bi, mi) = node_of[i];
            let (bj, mj) = node_of[j];
            if bi == bj {
                continue;
            }
            let coi = atom_set(scenario, bi, full(bi) ^ mi);
            let coj = atom_set(scenario, bj, full(bj) ^ mj);
            if sets[i] == sets[j] || coi == coj {
                uf.union(i, j);
            }
        }
    }

    // canonical class ids: sort class representatives by (popcount, node id)
    let mut roots: Vec<usize> = Vec::new();
    for i in 0..n_nodes {
        let r = uf.find(i);
        if !roots.contains(&r) {
            roots.push(r);
        }
    }
    roots.sort_by_key(|&r| (node_of[r].1.count_ones(), r));
    let class_of_root = |r: usize| roots.iter().position(|&x| x == r).unwrap();
    let mut class = vec![0usize; n_nodes];
    for i in 0..n_nodes {
        class[i] = class_of_root(uf.find(i));
    }
    let n_classes = roots.len();

    // labels: atom names for atom classes, else join rendering of the
    // representative member
    let labels: Vec<String> = roots
        .iter()
        .map(|&r| {
            let (bi, m) = node_of[r];
            let set = atom_set(scenario, bi, m);
            match set.len() {
                0 => "0".to_string(),
                _ if m == full(bi) && class[r] == class[offset[0] + full(0) as usize] => {
                    "1".to_string()
                }
                1 => scenario.atoms[set[0]].clone(),
                _ => set
                    .iter()
                    .map(|&a| scenario.atoms[a].as_str())
                    .collect::<Vec<_>>()
                    .join("|"),
            }
        })
        .collect();

    // complement on classes, checked well-defined
    let mut comp = vec![usize::MAX; n_classes];
    for i in 0..n_nodes {
        let (bi, m) = node_of[i];
        let c = class[offset[bi] + (full(bi) ^ m) as usize];
        let cl = class[i];
        if comp[cl] == usize::MAX {
            comp[cl] = c;
        } else if comp[cl] != c {
            return Err(PastingError::IllDefinedComplement {
                label: labels[cl].clone(),
            });
        }
    }
    for (cl, &c) in comp.iter().enumerate() {
        if c == cl {
            return Err(PastingError::Collapse {
                label: labels[cl].clone(),
            });
        }
    }

    // order: in-block inclusion, transitively closed
    let mut leq = vec![false; n_classes * n_classes];
    for c in 0..n_classes {
        leq[c * n_classes + c] = true;
    }
    for i in 0..n_nodes {
        for j in 0..n_nodes {
            let (bi, mi) = node_of[i];
            let (bj, mj) = node_of[j];
            if bi == bj && mi & !mj == 0 {
                leq[class[i] * n_classes + class[j]] = true;
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
                return Err(PastingError::OrderCollapse {
                    a: labels[a].clone(),
                    b: labels[b].clone(),
                });
            }
        }
    }

    let atom_class: Vec<usize> = (0..scenario.atoms.len())
        .map(|a| {
            let bi = scenario
                .blocks
                .iter()
                .position(|b| b.contains(&a))
                .expect("scenario atoms are covered");
            let k = scenario.blocks[bi].iter().position(|&x| x == a).unwrap();
            class[offset[bi] + (1usize << k)]
        })
        .collect();

    let table = LatticeTable {
        labels,
        leq,
        comp,
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
    if !missing.is_empty() {
        return Ok(PastedScenario::OrthoposetOnly {
            table,
            atom_class,
            missing_bounds: missing,
        });
    }
    let rep = validate_ortholattice(&table);
    if !rep.is_valid() {
        return Err(PastingError::NotOrtholattice(rep));
    }
    let oml = FiniteOml::from_table(table).expect("just validated");
    let om_witness = oml.orthomodularity_witness();
    Ok(PastedScenario::Lattice {
        oml,
        om_witness,
        atom_class,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scen(text: &str) -> BlockScenario {
        BlockScenario::parse(text).unwrap()
    }

    #[test]
    fn single_two_atom_block_is_b4() {
        let p = scenario_orthoposet(&scen("atoms a b\nblock a b\n")).unwrap();
        let oml = p.as_lattice().expect("lattice");
        assert_eq!(oml.n(), 4);
        assert!(oml.is_orthomodular());
    }

    #[test]
    fn single_one_atom_block_is_b2() {
        let p = scenario_orthoposet(&scen("atoms a\nblock a\n")).unwrap();
        assert_eq!(p.element_count(), 2);
    }

    #[test]
    fn two_disjoint_blocks_give_mo2() {
        let p = scenario_orthoposet(&scen("atoms a a' b b'\nblock a a'\nblock b b'\n")).unwrap();
        let oml = p.as_lattice().expect("lattice");
        assert_eq!(oml.n(), 6);
        assert!(oml.is_orthomodular());
        assert_eq!(oml.atoms().len(), 4);
    }

    #[test]
    fn shared_atom_pasting_element_count() {
        let p = scenario_orthoposet(&scen("atoms a b c d e\nblock a b c\nblock c d e\n")).unwrap();
        let oml = p.as_lattice().expect("lattice");
        // 0, 1, five atoms, five coatoms; a|b and d|e merge into c's complement
        assert_eq!(oml.n(), 12);
        assert!(oml.is_orthomodular());
        assert_eq!(oml.atoms().len(), 5);
        // complement of the shared atom has two presentations
        let c = p.atom_class()[2];
        let cc = oml.comp(c);
        assert_eq!(oml.label(cc), "a|b");
    }

    #[test]
    fn triangle_loop_collapses() {
        let err = scenario_orthoposet(&scen("atoms a b c\nblock a b\nblock b c\nblock c a\n"))
            .unwrap_err();
        assert!(matches!(
            err,
            PastingError::Collapse { .. } | PastingError::OrderCollapse { .. }
        ));
    }
}
