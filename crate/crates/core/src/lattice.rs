//! Finite orthomodular lattices: raw tables, validation, and the checked
//! [`FiniteOml`] type.
//!
//! A [`LatticeTable`] is an unchecked presentation (order relation plus an
//! orthocomplement map, with optional explicit join/meet tables). The
//! validator reports every broken ortholattice axiom with a witness;
//! [`FiniteOml`] can only be built from a table that validates cleanly.
//! Orthomodularity is a separate check: the hexagon O6 is a perfectly good
//! ortholattice that fails it.

use serde::Serialize;
use std::fmt;
use thiserror::Error;

/// Unchecked presentation of a finite ortholattice candidate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeTable {
    /// Element labels; element ids are dense indices into this vector.
    pub labels: Vec<String>,
    /// Row-major n*n order relation: `leq[i*n + j]` means i <= j.
    pub leq: Vec<bool>,
    /// Orthocomplement map.
    pub comp: Vec<usize>,
    /// Optional explicit join table (row-major). Validated against the order
    /// when present, computed from the order when absent.
    pub join: Option<Vec<usize>>,
    /// Optional explicit meet table.
    pub meet: Option<Vec<usize>>,
}

impl LatticeTable {
    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.n() + j]
    }

    /// Build from a sparse list of `i <= j` pairs; the reflexive-transitive
    /// closure is taken.
    pub fn from_pairs(labels: Vec<String>, pairs: &[(usize, usize)], comp: Vec<usize>) -> Self {
        let n = labels.len();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for &(i, j) in pairs {
            leq[i * n + j] = true;
        }
        // Warshall closure
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        LatticeTable {
            labels,
            leq,
            comp,
            join: None,
            meet: None,
        }
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    fn upper_bounds(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.n())
            .filter(|&z| self.leq(x, z) && self.leq(y, z))
            .collect()
    }

    fn lower_bounds(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.n())
            .filter(|&z| self.leq(z, x) && self.leq(z, y))
            .collect()
    }

    /// Least upper bound of x and y under the table order, if one exists.
    pub fn lub(&self, x: usize, y: usize) -> Option<usize> {
        let ub = self.upper_bounds(x, y);
        let mut least = None;
        for &z in &ub {
            if ub.iter().all(|&w| self.leq(z, w)) {
                least = Some(z);
                break;
            }
        }
        least
    }

    /// Greatest lower bound of x and y, if one exists.
    pub fn glb(&self, x: usize, y: usize) -> Option<usize> {
        let lb = self.lower_bounds(x, y);
        let mut greatest = None;
        for &z in &lb {
            if lb.iter().all(|&w| self.leq(w, z)) {
                greatest = Some(z);
                break;
            }
        }
        greatest
    }

    pub fn bottom(&self) -> Option<usize> {
        (0..self.n()).find(|&z| (0..self.n()).all(|w| self.leq(z, w)))
    }

    pub fn top(&self) -> Option<usize> {
        (0..self.n()).find(|&z| (0..self.n()).all(|w| self.leq(w, z)))
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TableFileError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("element {0} out of range")]
    OutOfRange(usize),
    #[error("element {0} has no comp line")]
    MissingComp(usize),
    #[error("element {0} has two comp lines")]
    DuplicateComp(usize),
}

impl LatticeTable {
    /// Parse the table-file grammar:
    ///
    /// ```text
    /// elements <n>
    /// label <i> <name>   # optional
    /// leq <i> <j>        # reflexive-transitive closure is taken
    /// comp <i> <j>       # one direction per line; every i needs one
    /// ```
    pub fn parse(text: &str) -> Result<LatticeTable, TableFileError> {
        let mut n: Option<usize> = None;
        let mut labels: Vec<String> = Vec::new();
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        let mut comp: Vec<Option<usize>> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = match raw.find('#') {
                Some(i) => &raw[..i],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| TableFileError::Parse { line: line_no, msg };
            let mut words = line.split_whitespace();
            let parse_id = |w: Option<&str>, n: usize| -> Result<usize, TableFileError> {
                let i: usize = w
                    .ok_or_else(|| TableFileError::Parse {
                        line: line_no,
                        msg: "missing element id".into(),
                    })?
                    .parse()
                    .map_err(|_| TableFileError::Parse {
                        line: line_no,
                        msg: "bad element id".into(),
                    })?;
                if i >= n {
                    return Err(TableFileError::OutOfRange(i));
                }
                Ok(i)
            };
            match words.next() {
                Some("elements") => {
                    if n.is_some() {
                        return Err(err("elements declared twice".into()));
                    }
                    let k: usize = words
                        .next()
                        .ok_or_else(|| err("elements needs a count".into()))?
                        .parse()
                        .map_err(|_| err("bad element count".into()))?;
                    n = Some(k);
                    labels = (0..k).map(|i| format!("e{i}")).collect();
                    comp = vec![None; k];
                }
                Some("label") => {
                    let k = n.ok_or_else(|| err("label before elements".into()))?;
                    let i = parse_id(words.next(), k)?;
                    let name = words
                        .next()
                        .ok_or_else(|| err("label needs a name".into()))?;
                    labels[i] = name.to_string();
                }
                Some("leq") => {
                    let k = n.ok_or_else(|| err("leq before elements".into()))?;
                    let i = parse_id(words.next(), k)?;
                    let j = parse_id(words.next(), k)?;
                    pairs.push((i, j));
                }
                Some("comp") => {
                    let k = n.ok_or_else(|| err("comp before elements".into()))?;
                    let i = parse_id(words.next(), k)?;
                    let j = parse_id(words.next(), k)?;
                    if comp[i].is_some() {
                        return Err(TableFileError::DuplicateComp(i));
                    }
                    comp[i] = Some(j);
                }
                Some(other) => return Err(err(format!("unknown directive {other:?}"))),
                None => {}
            }
        }
        let _ = n.ok_or(TableFileError::Parse {
            line: 0,
            msg: "missing elements".into(),
        })?;
        let comp: Vec<usize> = comp
            .into_iter()
            .enumerate()
            .map(|(i, c)| c.ok_or(TableFileError::MissingComp(i)))
            .collect::<Result<_, _>>()?;
        Ok(LatticeTable::from_pairs(labels, &pairs, comp))
    }
}

/// One broken axiom, with witnesses by element id.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum OrthoViolation {
    Degenerate,
    NotReflexive { x: usize },
    NotAntisymmetric { x: usize, y: usize },
    NotTransitive { x: usize, y: usize, z: usize },
    NoBottom,
    NoTop,
    JoinMissing { x: usize, y: usize },
    MeetMissing { x: usize, y: usize },
    JoinTableDisagrees { x: usize, y: usize, stated: usize },
    MeetTableDisagrees { x: usize, y: usize, stated: usize },
    CompOutOfRange { x: usize },
    NotInvolutive { x: usize },
    NotOrderReversing { x: usize, y: usize },
    ComplementJoinNotTop { x: usize },
    ComplementMeetNotBottom { x: usize },
    DeMorgan { x: usize, y: usize },
}

/// Result of [`validate_ortholattice`]; empty means every axiom holds.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<OrthoViolation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn render(&self, table: &LatticeTable) -> String {
        if self.is_valid() {
            return "valid".to_string();
        }
        let lab = |i: usize| {
            if i < table.n() {
                table.label(i).to_string()
            } else {
                format!("#{i}")
            }
        };
        let mut out = String::new();
        for v in &self.violations {
            use OrthoViolation::*;
            let line = match v {
                Degenerate => "degenerate: fewer than two elements".to_string(),
                NotReflexive { x } => format!("order not reflexive at {}", lab(*x)),
                NotAntisymmetric { x, y } => {
                    format!("order not antisymmetric: {} and {}", lab(*x), lab(*y))
                }
                NotTransitive { x, y, z } => format!(
                    "order not transitive: {} <= {} <= {} but not {} <= {}",
                    lab(*x),
                    lab(*y),
                    lab(*z),
                    lab(*x),
                    lab(*z)
                ),
                NoBottom => "no bottom element".to_string(),
                NoTop => "no top element".to_string(),
                JoinMissing { x, y } => {
                    format!("no least upper bound for {} and {}", lab(*x), lab(*y))
                }
                MeetMissing { x, y } => {
                    format!("no greatest lower bound for {} and {}", lab(*x), lab(*y))
                }
                JoinTableDisagrees { x, y, stated } => format!(
                    "stated join {} of {} and {} disagrees with the order",
                    lab(*stated),
                    lab(*x),
                    lab(*y)
                ),
                MeetTableDisagrees { x, y, stated } => format!(
                    "stated meet {} of {} and {} disagrees with the order",
                    lab(*stated),
                    lab(*x),
                    lab(*y)
                ),
                CompOutOfRange { x } => format!("complement of {} out of range", lab(*x)),
                NotInvolutive { x } => format!("complement not involutive at {}", lab(*x)),
                NotOrderReversing { x, y } => format!(
                    "complement not order-reversing: {} <= {} but not {} <= {}",
                    lab(*x),
                    lab(*y),
                    lab(*y),
                    lab(*x)
                ),
                ComplementJoinNotTop { x } => {
                    format!("{} join its complement is not the top", lab(*x))
                }
                ComplementMeetNotBottom { x } => {
                    format!("{} meet its complement is not the bottom", lab(*x))
                }
                DeMorgan { x, y } => {
                    format!("De Morgan fails for {} and {}", lab(*x), lab(*y))
                }
            };
            out.push_str(&line);
            out.push('\n');
        }
        out
    }
}

/// Check every ortholattice axiom on a raw table. All failures are report
/// entries; nothing panics on malformed input short of out-of-range indices
/// in `leq` itself.
pub fn validate_ortholattice(t: &LatticeTable) -> ValidationReport {
    let n = t.n();
    let mut rep = ValidationReport::default();
    if n < 2 {
        rep.violations.push(OrthoViolation::Degenerate);
        return rep;
    }
    if t.leq.len() != n * n || t.comp.len() != n {
        rep.violations.push(OrthoViolation::Degenerate);
        return rep;
    }

    for x in 0..n {
        if !t.leq(x, x) {
            rep.violations.push(OrthoViolation::NotReflexive { x });
        }
    }
    for x in 0..n {
        for y in (x + 1)..n {
            if t.leq(x, y) && t.leq(y, x) {
                rep.violations
                    .push(OrthoViolation::NotAntisymmetric { x, y });
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            if !t.leq(x, y) {
                continue;
            }
            for z in 0..n {
                if t.leq(y, z) && !t.leq(x, z) {
                    rep.violations
                        .push(OrthoViolation::NotTransitive { x, y, z });
                }
            }
        }
    }
    if !rep.is_valid() {
        // bound computations below assume a partial order
        return rep;
    }

    let bottom = t.bottom();
    let top = t.top();
    if bottom.is_none() {
        rep.violations.push(OrthoViolation::NoBottom);
    }
    if top.is_none() {
        rep.violations.push(OrthoViolation::NoTop);
    }

    for x in 0..n {
        for y in x..n {
            match t.lub(x, y) {
                None => rep.violations.push(OrthoViolation::JoinMissing { x, y }),
                Some(j) => {
                    if let Some(tab) = &t.join {
                        if tab[x * n + y] != j {
                            rep.violations.push(OrthoViolation::JoinTableDisagrees {
                                x,
                                y,
                                stated: tab[x * n + y],
                            });
                        }
                    }
                }
            }
            match t.glb(x, y) {
                None => rep.violations.push(OrthoViolation::MeetMissing { x, y }),
                Some(m) => {
                    if let Some(tab) = &t.meet {
                        if tab[x * n + y] != m {
                            rep.violations.push(OrthoViolation::MeetTableDisagrees {
                                x,
                                y,
                                stated: tab[x * n + y],
                            });
                        }
                    }
                }
            }
        }
    }

    let mut comp_ok = true;
    for x in 0..n {
        if t.comp[x] >= n {
            rep.violations.push(OrthoViolation::CompOutOfRange { x });
            comp_ok = false;
        }
    }
    if !comp_ok {
        return rep;
    }
    for x in 0..n {
        if t.comp[t.comp[x]] != x {
            rep.violations.push(OrthoViolation::NotInvolutive { x });
        }
    }
    for x in 0..n {
        for y in 0..n {
            if t.leq(x, y) && !t.leq(t.comp[y], t.comp[x]) {
                rep.violations
                    .push(OrthoViolation::NotOrderReversing { x, y });
            }
        }
    }
    if let (Some(bot), Some(top)) = (bottom, top) {
        for x in 0..n {
            if t.lub(x, t.comp[x]) != Some(top) {
                rep.violations
                    .push(OrthoViolation::ComplementJoinNotTop { x });
            }
            if t.glb(x, t.comp[x]) != Some(bot) {
                rep.violations
                    .push(OrthoViolation::ComplementMeetNotBottom { x });
            }
        }
        for x in 0..n {
            for y in x..n {
                let lhs = t.lub(x, y).map(|j| t.comp[j]);
                let rhs = t.glb(t.comp[x], t.comp[y]);
                if let (Some(l), Some(r)) = (lhs, rhs) {
                    if l != r {
                        rep.violations.push(OrthoViolation::DeMorgan { x, y });
                    }
                }
            }
        }
    }
    rep
}

/// A validated finite ortholattice with total join/meet tables. Construction
/// goes through [`FiniteOml::from_table`] so every instance satisfies the
/// ortholattice axioms; orthomodularity is checked separately.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteOml {
    labels: Vec<String>,
    leq: Vec<bool>,
    comp: Vec<usize>,
    join: Vec<usize>,
    meet: Vec<usize>,
    zero: usize,
    one: usize,
}

impl FiniteOml {
    /// Validate a table and promote it. The full validation report comes back
    /// on failure.
    pub fn from_table(t: LatticeTable) -> Result<FiniteOml, ValidationReport> {
        let rep = validate_ortholattice(&t);
        if !rep.is_valid() {
            return Err(rep);
        }
        let n = t.n();
        let mut join = vec![0usize; n * n];
        let mut meet = vec![0usize; n * n];
        for x in 0..n {
            for y in 0..n {
                join[x * n + y] = t.lub(x, y).expect("validated");
                meet[x * n + y] = t.glb(x, y).expect("validated");
            }
        }
        let zero = t.bottom().expect("validated");
        let one = t.top().expect("validated");
        Ok(FiniteOml {
            labels: t.labels,
            leq: t.leq,
            comp: t.comp,
            join,
            meet,
            zero,
            one,
        })
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x * self.n() + y]
    }

    pub fn comp(&self, x: usize) -> usize {
        self.comp[x]
    }

    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join[x * self.n() + y]
    }

    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x * self.n() + y]
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn join_all<I: IntoIterator<Item = usize>>(&self, xs: I) -> usize {
        xs.into_iter().fold(self.zero, |acc, x| self.join(acc, x))
    }

    /// x and y are orthogonal when x <= y*.
    pub fn orthogonal(&self, x: usize, y: usize) -> bool {
        self.leq(x, self.comp[y])
    }

    /// Atoms in id order: minimal nonzero elements.
    pub fn atoms(&self) -> Vec<usize> {
        (0..self.n())
            .filter(|&x| {
                x != self.zero
                    && (0..self.n()).all(|y| !(self.leq(y, x) && y != x && y != self.zero))
            })
            .collect()
    }

    pub fn atoms_below(&self, x: usize) -> Vec<usize> {
        self.atoms()
            .into_iter()
            .filter(|&a| self.leq(a, x))
            .collect()
    }

    pub fn table(&self) -> LatticeTable {
        LatticeTable {
            labels: self.labels.clone(),
            leq: self.leq.clone(),
            comp: self.comp.clone(),
            join: Some(self.join.clone()),
            meet: Some(self.meet.clone()),
        }
    }

    /// First pair violating the orthomodular law `a <= b implies
    /// b = a v (a* ^ b)`, scanning element ids in order, or None.
    pub fn orthomodularity_witness(&self) -> Option<(usize, usize)> {
        for a in 0..self.n() {
            for b in 0..self.n() {
                if self.leq(a, b) && self.join(a, self.meet(self.comp[a], b)) != b {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn is_orthomodular(&self) -> bool {
        self.orthomodularity_witness().is_none()
    }

    /// Commutativity test: `a = (a ^ b) v (a ^ b*)`. In an orthomodular
    /// lattice this is symmetric and characterizes membership of a, b in a
    /// common Boolean subalgebra.
    pub fn compatible(&self, a: usize, b: usize) -> bool {
        self.join(self.meet(a, b), self.meet(a, self.comp[b])) == a
    }

    /// Closure-based compatibility oracle: generate the subalgebra from
    /// {a, a*, b, b*} and test it for distributivity. Independent of
    /// [`FiniteOml::compatible`]; the two must agree on orthomodular inputs.
    pub fn compatible_by_closure(&self, a: usize, b: usize) -> bool {
        let sub = self.generated_subalgebra(&[a, b]);
        for &x in &sub {
            for &y in &sub {
                for &z in &sub {
                    if self.meet(x, self.join(y, z)) != self.join(self.meet(x, y), self.meet(x, z))
                    {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Smallest subset containing S, 0 and 1, closed under meet, join and
    /// orthocomplement. Returned sorted by element id.
    pub fn generated_subalgebra(&self, seed: &[usize]) -> Vec<usize> {
        let n = self.n();
        let mut inside = vec![false; n];
        inside[self.zero] = true;
        inside[self.one] = true;
        for &s in seed {
            inside[s] = true;
        }
        loop {
            let mut changed = false;
            let members: Vec<usize> = (0..n).filter(|&x| inside[x]).collect();
            for &x in &members {
                if !inside[self.comp[x]] {
                    inside[self.comp[x]] = true;
                    changed = true;
                }
                for &y in &members {
                    let j = self.join(x, y);
                    let m = self.meet(x, y);
                    if !inside[j] {
                        inside[j] = true;
                        changed = true;
                    }
                    if !inside[m] {
                        inside[m] = true;
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        (0..n).filter(|&x| inside[x]).collect()
    }
}

impl fmt::Display for FiniteOml {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteOml({} elements)", self.n())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b4() -> FiniteOml {
        // 0, p, p*, 1
        let labels = vec!["0", "p", "p*", "1"]
            .into_iter()
            .map(String::from)
            .collect();
        let pairs = [(0, 1), (0, 2), (1, 3), (2, 3), (0, 3)];
        let t = LatticeTable::from_pairs(labels, &pairs, vec![3, 2, 1, 0]);
        FiniteOml::from_table(t).unwrap()
    }

    pub(crate) fn mo2_table() -> LatticeTable {
        // 0, a, a*, b, b*, 1
        let labels = vec!["0", "a", "a*", "b", "b*", "1"]
            .into_iter()
            .map(String::from)
            .collect();
        let pairs = [
            (0, 1),
            (0, 2),
            (0, 3),
            (0, 4),
            (1, 5),
            (2, 5),
            (3, 5),
            (4, 5),
            (0, 5),
        ];
        LatticeTable::from_pairs(labels, &pairs, vec![5, 2, 1, 4, 3, 0])
    }

    fn mo2() -> FiniteOml {
        FiniteOml::from_table(mo2_table()).unwrap()
    }

    fn o6_table() -> LatticeTable {
        // hexagon: 0 < a < b < 1 and 0 < b* < a* < 1
        let labels = vec!["0", "a", "b", "b*", "a*", "1"]
            .into_iter()
            .map(String::from)
            .collect();
        let pairs = [(0, 1), (1, 2), (2, 5), (0, 3), (3, 4), (4, 5)];
        LatticeTable::from_pairs(labels, &pairs, vec![5, 4, 3, 2, 1, 0])
    }

    #[test]
    fn b4_is_valid_and_orthomodular() {
        let l = b4();
        assert!(l.is_orthomodular());
        assert_eq!(l.atoms(), vec![1, 2]);
    }

    #[test]
    fn mo2_is_valid_and_orthomodular() {
        let l = mo2();
        assert!(validate_ortholattice(&l.table()).is_valid());
        assert!(l.is_orthomodular());
        assert_eq!(l.atoms().len(), 4);
    }

    #[test]
    fn o6_valid_ortholattice_but_not_orthomodular() {
        let t = o6_table();
        assert!(validate_ortholattice(&t).is_valid());
        let l = FiniteOml::from_table(t).unwrap();
        // a=1, b=2: a v (a* ^ b) = a v 0 = a != b
        assert_eq!(l.orthomodularity_witness(), Some((1, 2)));
    }

    #[test]
    fn table_file_grammar_and_errors() {
        let text = "elements 4\nlabel 1 p\nlabel 2 q\nleq 0 1\nleq 0 2\nleq 1 3\nleq 2 3\n\
                    comp 0 3\ncomp 3 0\ncomp 1 2\ncomp 2 1\n";
        let t = LatticeTable::parse(text).unwrap();
        assert_eq!(t.label(1), "p");
        assert!(t.leq(0, 3), "transitive closure is taken");
        assert!(validate_ortholattice(&t).is_valid());

        assert_eq!(
            LatticeTable::parse("elements 2\ncomp 0 1\n").unwrap_err(),
            TableFileError::MissingComp(1)
        );
        assert_eq!(
            LatticeTable::parse("elements 2\ncomp 0 1\ncomp 0 1\ncomp 1 0\n").unwrap_err(),
            TableFileError::DuplicateComp(0)
        );
        assert_eq!(
            LatticeTable::parse("elements 2\nleq 0 5\n").unwrap_err(),
            TableFileError::OutOfRange(5)
        );
        assert!(matches!(
            LatticeTable::parse("elements 2\nelements 3\n").unwrap_err(),
            TableFileError::Parse { line: 2, .. }
        ));
    }

    #[test]
    fn seeded_involution_defect_is_named() {
        let mut t = mo2_table();
        t.comp[1] = 3; // a* declared to be b, but comp[3] stays b*
        let rep = validate_ortholattice(&t);
        assert!(!rep.is_valid());
        assert!(rep
            .violations
            .iter()
            .any(|v| matches!(v, OrthoViolation::NotInvolutive { x } if *x == 1 || *x == 3)));
    }

    #[test]
    fn mo2_compatibility() {
        let l = mo2();
        assert!(l.compatible(1, 2)); // a with a*
        assert!(!l.compatible(1, 3)); // a with b
        assert!(!l.compatible_by_closure(1, 3));
        assert!(l.compatible_by_closure(1, 2));
    }

    #[test]
    fn generated_subalgebras_of_mo2() {
        let l = mo2();
        assert_eq!(l.generated_subalgebra(&[1]), vec![0, 1, 2, 5]);
        assert_eq!(l.generated_subalgebra(&[1, 3]), vec![0, 1, 2, 3, 4, 5]);
        assert_eq!(l.generated_subalgebra(&[]), vec![0, 5]);
    }

    #[test]
    fn compatibility_routes_agree_on_mo2() {
        let l = mo2();
        for a in 0..l.n() {
            for b in 0..l.n() {
                assert_eq!(l.compatible(a, b), l.compatible_by_closure(a, b), "{a} {b}");
            }
        }
    }
}
