//! Kochen-Specker colorability: exact search for two-valued assignments on
//! ray and block scenarios, and global valuations on finite lattices.
//!
//! A valuation assigns 0 or 1 to every atom so that each complete context
//! gets exactly one 1 (completeness of the basis), each atom a single global
//! value (noncontextuality is structural: one variable per atom), and no two
//! orthogonal atoms are both 1 (a two-valued homomorphism preserves order
//! and orthocomplement, so orthogonal events cannot both be true). For block
//! scenarios the last rule is subsumed by the contexts; for ray scenarios it
//! constrains orthogonal pairs that lie in no complete context, and the
//! classic 33-ray configuration is uncolorable only because of it.
//!
//! The search is depth-first with unit propagation and a deterministic
//! branching order; UNSAT is decided only by exhaustion.

use crate::block::BlockScenario;
use crate::lattice::FiniteOml;
use crate::ray::RayScenario;
use serde::Serialize;
use thiserror::Error;

pub const DEFAULT_ENUMERATION_CAP: usize = 1_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum KsError {
    #[error("scenario has no contexts")]
    NoContexts,
    #[error("valuation is not total: atom {0} unassigned")]
    PartialValuation(String),
    #[error("node budget of {0} exhausted before the search finished")]
    NodeBudget(u64),
    #[error(
        "lattice has a block whose atoms are not lattice atoms (it is not an \
         orthomodular lattice); block-wise valuations are undefined"
    )]
    UnsupportedLattice,
}

/// A constraint instance: named atoms, complete contexts (exactly one 1
/// each), and orthogonal pairs (never both 1).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KsInstance {
    pub atom_names: Vec<String>,
    pub contexts: Vec<Vec<usize>>,
    pub orthogonal_pairs: Vec<(usize, usize)>,
}

impl From<&RayScenario> for KsInstance {
    fn from(s: &RayScenario) -> Self {
        let adj = s.orthogonality_graph();
        let n = s.rays.len();
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                if adj[i][j] {
                    pairs.push((i, j));
                }
            }
        }
        KsInstance {
            atom_names: s.rays.iter().map(|r| r.name.clone()).collect(),
            contexts: s.contexts.clone(),
            orthogonal_pairs: pairs,
        }
    }
}

impl KsInstance {
    /// The instance of a finite lattice: atoms as variables, blocks as
    /// contexts, atom orthogonality as the pair rule. Fails when some block
    /// partitions the top through non-atoms (only possible when the lattice
    /// is not orthomodular).
    pub fn from_lattice(l: &FiniteOml) -> Result<KsInstance, KsError> {
        let atoms = l.atoms();
        let blocks: Vec<Vec<usize>> = {
            let arc = std::sync::Arc::new(l.clone());
            crate::frames::enumerate_blocks(&arc)
                .into_iter()
                .map(|b| {
                    b.atoms
                        .iter()
                        .map(|&a| {
                            atoms
                                .iter()
                                .position(|&x| x == a)
                                .ok_or(KsError::UnsupportedLattice)
                        })
                        .collect::<Result<Vec<usize>, KsError>>()
                })
                .collect::<Result<_, _>>()?
        };
        let mut pairs = Vec::new();
        for i in 0..atoms.len() {
            for j in (i + 1)..atoms.len() {
                if l.orthogonal(atoms[i], atoms[j]) {
                    pairs.push((i, j));
                }
            }
        }
        Ok(KsInstance {
            atom_names: atoms.iter().map(|&a| l.label(a).to_string()).collect(),
            contexts: blocks,
            orthogonal_pairs: pairs,
        })
    }
}

impl From<&BlockScenario> for KsInstance {
    fn from(s: &BlockScenario) -> Self {
        let mut pairs = Vec::new();
        for b in &s.blocks {
            for (k, &i) in b.iter().enumerate() {
                for &j in &b[k + 1..] {
                    pairs.push((i.min(j), i.max(j)));
                }
            }
        }
        pairs.sort_unstable();
        pairs.dedup();
        KsInstance {
            atom_names: s.atoms.clone(),
            contexts: s.blocks.clone(),
            orthogonal_pairs: pairs,
        }
    }
}

/// A total two-valued assignment on the atoms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Valuation {
    pub assignment: Vec<bool>,
}

impl Valuation {
    pub fn true_atoms<'a>(&self, names: &'a [String]) -> Vec<&'a str> {
        self.assignment
            .iter()
            .enumerate()
            .filter(|&(_, &v)| v)
            .map(|(i, _)| names[i].as_str())
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum KsOutcome {
    Sat(Valuation),
    Unsat,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub propagations: u64,
    /// Wall-clock milliseconds; excluded from deterministic reports.
    pub elapsed_ms: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct KsResult {
    pub outcome: KsOutcome,
    pub stats: SearchStats,
    /// Present when enumeration was requested.
    pub all_solutions: Option<SolutionSet>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SolutionSet {
    pub solutions: Vec<Valuation>,
    pub truncated: bool,
}

/// Search options. `branch_order`, when set, permutes the variable order;
/// the SAT/UNSAT outcome must not depend on it.
#[derive(Clone, Debug, Default)]
pub struct KsOptions {
    pub enumerate_all: bool,
    pub cap: Option<usize>,
    pub max_nodes: Option<u64>,
    pub branch_order: Option<Vec<usize>>,
}

struct Searcher<'a> {
    inst: &'a KsInstance,
    order: Vec<usize>,
    opts: &'a KsOptions,
    stats: SearchStats,
    solutions: Vec<Valuation>,
    truncated: bool,
    budget_hit: bool,
}

const UNSET: u8 = 2;

impl<'a> Searcher<'a> {
    /// Unit propagation to a fixed point: a context with a 1 zeroes its other
    /// members, a context with all but one member 0 forces the last to 1,
    /// a fully-zero context fails, and an orthogonal pair with a 1 zeroes
    /// the partner.
    fn propagate(&mut self, a: &mut [u8]) -> bool {
        loop {
            let mut changed = false;
            for ctx in &self.inst.contexts {
                let ones = ctx.iter().filter(|&&i| a[i] == 1).count();
                if ones > 1 {
                    return false;
                }
                let unset: Vec<usize> = ctx.iter().copied().filter(|&i| a[i] == UNSET).collect();
                if ones == 1 {
                    for i in unset {
                        a[i] = 0;
                        self.stats.propagations += 1;
                        changed = true;
                    }
                } else if unset.is_empty() {
                    return false; // all zero
                } else if unset.len() == 1 {
                    a[unset[0]] = 1;
                    self.stats.propagations += 1;
                    changed = true;
                }
            }
            for &(i, j) in &self.inst.orthogonal_pairs {
                if a[i] == 1 && a[j] == 1 {
                    return false;
                }
                if a[i] == 1 && a[j] == UNSET {
                    a[j] = 0;
                    self.stats.propagations += 1;
                    changed = true;
                }
                if a[j] == 1 && a[i] == UNSET {
                    a[i] = 0;
                    self.stats.propagations += 1;
                    changed = true;
                }
            }
            if !changed {
                return true;
            }
        }
    }

    /// Returns true when the caller should stop (first solution found in
    /// non-enumerating mode, or a budget was hit).
    fn search(&mut self, a: &[u8]) -> bool {
        self.stats.nodes += 1;
        if let Some(max) = self.opts.max_nodes {
            if self.stats.nodes > max {
                self.budget_hit = true;
                return true;
            }
        }
        let mut local = a.to_vec();
        if !self.propagate(&mut local) {
            return false;
        }
        let next = self.order.iter().copied().find(|&i| local[i] == UNSET);
        match next {
            None => {
                let v = Valuation {
                    assignment: local.iter().map(|&x| x == 1).collect(),
                };
                debug_assert!(verify_valuation(self.inst, &v).unwrap_or(false));
                let cap = self.opts.cap.unwrap_or(DEFAULT_ENUMERATION_CAP);
                if self.solutions.len() < cap {
                    self.solutions.push(v);
                } else {
                    self.truncated = true;
                    return true;
                }
                !self.opts.enumerate_all
            }
            Some(var) => {
                for value in [1u8, 0u8] {
                    let mut branch = local.clone();
                    branch[var] = value;
                    if self.search(&branch) {
                        return true;
                    }
                }
                false
            }
        }
    }
}

/// Decide colorability of an instance.
pub fn ks_search(inst: &KsInstance, opts: &KsOptions) -> Result<KsResult, KsError> {
    if inst.contexts.is_empty() {
        return Err(KsError::NoContexts);
    }
    let n = inst.atom_names.len();
    let order = match &opts.branch_order {
        Some(o) => {
            assert_eq!(o.len(), n, "branch order must permute the atoms");
            o.clone()
        }
        None => (0..n).collect(),
    };
    let start = std::time::Instant::now();
    let mut s = Searcher {
        inst,
        order,
        opts,
        stats: SearchStats::default(),
        solutions: Vec::new(),
        truncated: false,
        budget_hit: false,
    };
    let a = vec![UNSET; n];
    s.search(&a);
    if s.budget_hit {
        return Err(KsError::NodeBudget(s.stats.nodes));
    }
    let mut stats = s.stats;
    stats.elapsed_ms = start.elapsed().as_millis();
    let outcome = match s.solutions.first() {
        Some(v) => KsOutcome::Sat(v.clone()),
        None => KsOutcome::Unsat,
    };
    let all_solutions = if opts.enumerate_all {
        let mut sols = s.solutions;
        sols.sort_by(|a, b| a.assignment.cmp(&b.assignment));
        Some(SolutionSet {
            solutions: sols,
            truncated: s.truncated,
        })
    } else {
        None
    };
    Ok(KsResult {
        outcome,
        stats,
        all_solutions,
    })
}

/// Context-by-context check of a total assignment, independent of the search
/// engine: exactly one 1 per context, no orthogonal pair both 1.
pub fn verify_valuation(inst: &KsInstance, v: &Valuation) -> Result<bool, KsError> {
    if v.assignment.len() != inst.atom_names.len() {
        let missing = inst
            .atom_names
            .get(v.assignment.len())
            .cloned()
            .unwrap_or_else(|| "?".to_string());
        return Err(KsError::PartialValuation(missing));
    }
    for ctx in &inst.contexts {
        if ctx.iter().filter(|&&i| v.assignment[i]).count() != 1 {
            return Ok(false);
        }
    }
    for &(i, j) in &inst.orthogonal_pairs {
        if v.assignment[i] && v.assignment[j] {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Plain filtering of all 2^k atom assignments against the exactly-one-true
/// rule per block. Independent of the backtracking engine; this is the
/// cross-check route.
pub fn global_valuations_on_blocks(atom_count: usize, blocks: &[Vec<usize>]) -> Vec<Valuation> {
    assert!(
        atom_count <= 26,
        "exhaustive valuation filter is desk-scale only"
    );
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << atom_count) {
        let assignment: Vec<bool> = (0..atom_count).map(|i| mask >> i & 1 == 1).collect();
        let ok = blocks
            .iter()
            .all(|b| b.iter().filter(|&&i| assignment[i]).count() == 1);
        if ok {
            out.push(Valuation { assignment });
        }
    }
    out
}

/// All atom assignments of a finite lattice that restrict to a Boolean
/// two-valued homomorphism on every block.
pub fn global_valuations(l: &FiniteOml) -> Result<Vec<Valuation>, KsError> {
    let inst = KsInstance::from_lattice(l)?;
    Ok(global_valuations_on_blocks(
        inst.atom_names.len(),
        &inst.contexts,
    ))
}

/// Report on the existence of global two-valued homomorphisms.
#[derive(Clone, Debug, Serialize)]
pub struct NoninvertibilityReport {
    pub valuation_count: usize,
    /// Empty valuation set witnesses that no Boolean-valued global section
    /// exists for this structure.
    pub witnesses_noninvertibility: bool,
    pub cross_check: Option<String>,
}

fn noninvertibility_from_valuations(
    vals: &[Valuation],
    scenario: Option<&KsInstance>,
) -> Result<NoninvertibilityReport, KsError> {
    let cross_check = match scenario {
        None => None,
        Some(inst) => {
            let res = ks_search(
                inst,
                &KsOptions {
                    enumerate_all: true,
                    ..Default::default()
                },
            )?;
            let count = res
                .all_solutions
                .as_ref()
                .map(|s| s.solutions.len())
                .unwrap_or(0);
            let agree = (count == 0) == vals.is_empty();
            Some(format!(
                "search enumerated {count} solutions on the scenario; engines {}",
                if agree { "agree" } else { "disagree" }
            ))
        }
    };
    Ok(NoninvertibilityReport {
        valuation_count: vals.len(),
        witnesses_noninvertibility: vals.is_empty(),
        cross_check,
    })
}

/// Check whether a lattice admits any global valuation; when it arose from a
/// scenario, cross-check against the search engine on that scenario.
pub fn noninvertibility_witness(
    l: &FiniteOml,
    scenario: Option<&KsInstance>,
) -> Result<NoninvertibilityReport, KsError> {
    noninvertibility_from_valuations(&global_valuations(l)?, scenario)
}

/// Block-structure form, for scenarios whose pasting is an orthoposet rather
/// than a lattice (the 18-ray configuration is one: its pasting has 92
/// classes and 180 unbounded pairs).
pub fn noninvertibility_witness_on_blocks(
    atom_count: usize,
    blocks: &[Vec<usize>],
    scenario: Option<&KsInstance>,
) -> Result<NoninvertibilityReport, KsError> {
    noninvertibility_from_valuations(&global_valuations_on_blocks(atom_count, blocks), scenario)
}

/// The parity certificate: when every atom lies in an even number of
/// contexts and the context count is odd, no valuation exists (each context
/// contributes exactly one 1, so the total count of 1s over all contexts is
/// odd, yet every assigned atom contributes an even number).
pub fn parity_certificate(inst: &KsInstance) -> Option<String> {
    if inst.contexts.is_empty() || inst.contexts.len() % 2 == 0 {
        return None;
    }
    let mut degree = vec![0usize; inst.atom_names.len()];
    for ctx in &inst.contexts {
        for &i in ctx {
            degree[i] += 1;
        }
    }
    if degree.iter().any(|&d| d % 2 != 0) {
        return None;
    }
    Some(format!(
        "{} contexts (odd) each need exactly one true atom, but every atom \
         lies in an even number of contexts, so the incidence total would be \
         both odd and even; no valuation exists",
        inst.contexts.len()
    ))
}
