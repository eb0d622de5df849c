//! Ray scenarios: rank-1 projections presented by exact coordinate vectors
//! over Z[sqrt(D)], with measurement contexts as complete orthogonal bases.
//!
//! File grammar (line oriented, `#` starts a comment):
//!
//! ```text
//! dim <d>
//! radicand <D>               # optional, default 1
//! ray <name> = (<c>,...,<c>) # d coefficients
//! context <name> ... <name>  # optional, d ray names
//! ```
//!
//! A coefficient `<c>` is `a`, `a+b*rt` or `a-b*rt` with integers a, b;
//! `rt` stands for sqrt(D). When no `context` lines appear, contexts are all
//! maximal cliques of size exactly d in the orthogonality graph; maximal
//! cliques of smaller size are recorded as warnings and impose no
//! completeness constraint.

use crate::quadratic::{is_square_free, QuadInt};
use serde::Serialize;
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Ray {
    pub name: String,
    pub coords: Vec<QuadInt>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RayScenario {
    pub dimension: usize,
    pub radicand: i64,
    pub rays: Vec<Ray>,
    /// Sorted ray-index sets, each of size `dimension`.
    pub contexts: Vec<Vec<usize>>,
    pub warnings: Vec<String>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RayFileError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("line {line}: duplicate ray {name:?} (proportional to {other:?})")]
    DuplicateRay {
        line: usize,
        name: String,
        other: String,
    },
    #[error("line {line}: context of wrong size (expected {expected}, got {got})")]
    ContextSize {
        line: usize,
        expected: usize,
        got: usize,
    },
    #[error("line {line}: context rays {a:?} and {b:?} are not orthogonal")]
    ContextNotOrthogonal { line: usize, a: String, b: String },
    #[error("line {line}: unknown ray name {name:?}")]
    UnknownRay { line: usize, name: String },
    #[error("line {line}: context is not maximal ({name:?} extends it)")]
    ContextNotMaximal { line: usize, name: String },
    #[error("dimension mismatch")]
    DimensionMismatch,
    #[error("scenario has no rays")]
    Empty,
}

/// Exact inner product in Z[sqrt(D)]; errors on length mismatch.
pub fn inner_product(a: &[QuadInt], b: &[QuadInt], radicand: i64) -> Result<QuadInt, RayFileError> {
    if a.len() != b.len() {
        return Err(RayFileError::DimensionMismatch);
    }
    let mut acc = QuadInt::ZERO;
    for (x, y) in a.iter().zip(b.iter()) {
        acc = acc + x.mul_with(*y, radicand);
    }
    Ok(acc)
}

pub fn orthogonal(a: &Ray, b: &Ray, radicand: i64) -> Result<bool, RayFileError> {
    Ok(inner_product(&a.coords, &b.coords, radicand)?.is_zero())
}

/// Two coordinate vectors are proportional over the fraction field of
/// Z[sqrt(D)] iff all 2x2 cross determinants vanish.
pub fn proportional(a: &[QuadInt], b: &[QuadInt], radicand: i64) -> bool {
    if a.len() != b.len() {
        return false;
    }
    for i in 0..a.len() {
        for j in (i + 1)..a.len() {
            let lhs = a[i].mul_with(b[j], radicand);
            let rhs = a[j].mul_with(b[i], radicand);
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

fn parse_coeff(s: &str, line: usize) -> Result<QuadInt, RayFileError> {
    let s = s.trim();
    let err = |msg: String| RayFileError::Parse { line, msg };
    if s.is_empty() {
        return Err(err("empty coefficient".into()));
    }
    if let Some(stripped) = s.strip_suffix("*rt") {
        // a+b*rt or a-b*rt: split at the last +/- that is not a leading sign
        let bytes = stripped.as_bytes();
        let mut split = None;
        for (i, &c) in bytes.iter().enumerate().skip(1) {
            if c == b'+' || c == b'-' {
                split = Some(i);
            }
        }
        let i = split.ok_or_else(|| err(format!("bad coefficient {s:?}")))?;
        let a: i64 = stripped[..i]
            .parse()
            .map_err(|_| err(format!("bad integer part in {s:?}")))?;
        let sign = if bytes[i] == b'-' { -1 } else { 1 };
        let b: i64 = stripped[i + 1..]
            .parse()
            .map_err(|_| err(format!("bad radical part in {s:?}")))?;
        Ok(QuadInt::new(a, sign * b))
    } else {
        let a: i64 = s.parse().map_err(|_| err(format!("bad integer {s:?}")))?;
        Ok(QuadInt::from_int(a))
    }
}

/// All maximal cliques of the orthogonality graph, Bron-Kerbosch with
/// pivoting, emitted as sorted index sets in a deterministic order.
pub fn maximal_orthogonality_cliques(adj: &[Vec<bool>]) -> Vec<Vec<usize>> {
    fn bron(
        adj: &[Vec<bool>],
        r: &mut Vec<usize>,
        p: BTreeSet<usize>,
        x: BTreeSet<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if p.is_empty() && x.is_empty() {
            let mut c = r.clone();
            c.sort_unstable();
            out.push(c);
            return;
        }
        let pivot = p
            .iter()
            .chain(x.iter())
            .max_by_key(|&&u| p.iter().filter(|&&v| adj[u][v]).count())
            .copied()
            .expect("p or x nonempty");
        let mut p = p;
        let mut x = x;
        let todo: Vec<usize> = p.iter().filter(|&&v| !adj[pivot][v]).copied().collect();
        for v in todo {
            let np: BTreeSet<usize> = p.iter().filter(|&&w| adj[v][w]).copied().collect();
            let nx: BTreeSet<usize> = x.iter().filter(|&&w| adj[v][w]).copied().collect();
            r.push(v);
            bron(adj, r, np, nx, out);
            r.pop();
            p.remove(&v);
            x.insert(v);
        }
    }
    let mut out = Vec::new();
    let mut r = Vec::new();
    let p: BTreeSet<usize> = (0..adj.len()).collect();
    bron(adj, &mut r, p, BTreeSet::new(), &mut out);
    out.sort();
    out
}

impl RayScenario {
    /// Orthogonality adjacency over ray indices.
    pub fn orthogonality_graph(&self) -> Vec<Vec<bool>> {
        let n = self.rays.len();
        let mut adj = vec![vec![false; n]; n];
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    adj[i][j] =
                        inner_product(&self.rays[i].coords, &self.rays[j].coords, self.radicand)
                            .expect("same dimension by construction")
                            .is_zero();
                }
            }
        }
        adj
    }

    pub fn ray_index(&self, name: &str) -> Option<usize> {
        self.rays.iter().position(|r| r.name == name)
    }

    /// Parse from the ray-file grammar.
    pub fn parse(text: &str) -> Result<RayScenario, RayFileError> {
        let mut dimension: Option<usize> = None;
        let mut radicand: i64 = 1;
        let mut rays: Vec<Ray> = Vec::new();
        let mut ray_lines: Vec<usize> = Vec::new();
        let mut explicit: Vec<(usize, Vec<String>)> = Vec::new();

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
            let err = |msg: String| RayFileError::Parse { line: line_no, msg };
            let mut words = line.split_whitespace();
            match words.next() {
                Some("dim") => {
                    let d: usize = words
                        .next()
                        .ok_or_else(|| err("dim needs a value".into()))?
                        .parse()
                        .map_err(|_| err("bad dimension".into()))?;
                    if d == 0 {
                        return Err(err("dimension must be positive".into()));
                    }
                    dimension = Some(d);
                }
                Some("radicand") => {
                    let d: i64 = words
                        .next()
                        .ok_or_else(|| err("radicand needs a value".into()))?
                        .parse()
                        .map_err(|_| err("bad radicand".into()))?;
                    if !is_square_free(d) {
                        return Err(err(format!("radicand {d} is not square-free positive")));
                    }
                    radicand = d;
                }
                Some("ray") => {
                    let d = dimension.ok_or_else(|| err("ray before dim".into()))?;
                    let rest = line["ray".len()..].trim();
                    let eq = rest.find('=').ok_or_else(|| err("ray needs '='".into()))?;
                    let name = rest[..eq].trim().to_string();
                    if name.is_empty() {
                        return Err(err("ray needs a name".into()));
                    }
                    let vecpart = rest[eq + 1..].trim();
                    if !vecpart.starts_with('(') || !vecpart.ends_with(')') {
                        return Err(err("ray coordinates need parentheses".into()));
                    }
                    let inner = &vecpart[1..vecpart.len() - 1];
                    let coords: Vec<QuadInt> = inner
                        .split(',')
                        .map(|c| parse_coeff(c, line_no))
                        .collect::<Result<_, _>>()?;
                    if coords.len() != d {
                        return Err(err(format!(
                            "ray has {} coordinates, dimension is {d}",
                            coords.len()
                        )));
                    }
                    if coords.iter().all(|c| c.is_zero()) {
                        return Err(err("ray is the zero vector".into()));
                    }
                    if rays.iter().any(|r| r.name == name) {
                        return Err(err(format!("ray name {name:?} already used")));
                    }
                    for prev in &rays {
                        if proportional(&prev.coords, &coords, radicand) {
                            return Err(RayFileError::DuplicateRay {
                                line: line_no,
                                name,
                                other: prev.name.clone(),
                            });
                        }
                    }
                    rays.push(Ray { name, coords });
                    ray_lines.push(line_no);
                }
                Some("context") => {
                    let names: Vec<String> = words.map(String::from).collect();
                    explicit.push((line_no, names));
                }
                Some(other) => return Err(err(format!("unknown directive {other:?}"))),
                None => {}
            }
        }

        let dimension = dimension.ok_or(RayFileError::Parse {
            line: 0,
            msg: "missing dim directive".into(),
        })?;
        if rays.is_empty() {
            return Err(RayFileError::Empty);
        }
        let _ = ray_lines;

        let mut scenario = RayScenario {
            dimension,
            radicand,
            rays,
            contexts: Vec::new(),
            warnings: Vec::new(),
        };
        let adj = scenario.orthogonality_graph();

        if explicit.is_empty() {
            let cliques = maximal_orthogonality_cliques(&adj);
            for c in cliques {
                if c.len() == dimension {
                    scenario.contexts.push(c);
                } else {
                    let names: Vec<&str> =
                        c.iter().map(|&i| scenario.rays[i].name.as_str()).collect();
                    scenario.warnings.push(format!(
                        "maximal orthogonal set {{{}}} has size {} < dimension {}; \
                         no completeness constraint applies to it",
                        names.join(", "),
                        c.len(),
                        dimension
                    ));
                }
            }
        } else {
            for (line, names) in explicit {
                if names.len() != dimension {
                    return Err(RayFileError::ContextSize {
                        line,
                        expected: dimension,
                        got: names.len(),
                    });
                }
                let mut idxs = Vec::with_capacity(names.len());
                for name in &names {
                    let i = scenario.ray_index(name).ok_or(RayFileError::UnknownRay {
                        line,
                        name: name.clone(),
                    })?;
                    idxs.push(i);
                }
                for (k, &i) in idxs.iter().enumerate() {
                    for &j in &idxs[k + 1..] {
                        if i == j || !adj[i][j] {
                            return Err(RayFileError::ContextNotOrthogonal {
                                line,
                                a: scenario.rays[i].name.clone(),
                                b: scenario.rays[j].name.clone(),
                            });
                        }
                    }
                }
                // a context of size d is maximal automatically; still guard
                // against a scenario ray orthogonal to all members
                for (r, row) in adj.iter().enumerate() {
                    if !idxs.contains(&r) && idxs.iter().all(|&i| row[i]) {
                        return Err(RayFileError::ContextNotMaximal {
                            line,
                            name: scenario.rays[r].name.clone(),
                        });
                    }
                }
                idxs.sort_unstable();
                scenario.contexts.push(idxs);
            }
            scenario.contexts.sort();
            scenario.contexts.dedup();
        }
        Ok(scenario)
    }

    /// Contexts as name lists, for reports.
    pub fn context_names(&self) -> Vec<Vec<String>> {
        self.contexts
            .iter()
            .map(|c| c.iter().map(|&i| self.rays[i].name.clone()).collect())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_basis_gets_one_context() {
        let s = RayScenario::parse("dim 3\nray e1 = (1,0,0)\nray e2 = (0,1,0)\nray e3 = (0,0,1)\n")
            .unwrap();
        assert_eq!(s.contexts, vec![vec![0, 1, 2]]);
        assert!(s.warnings.is_empty());
    }

    #[test]
    fn orthogonality_examples() {
        let r = |c: &[(i64, i64)]| Ray {
            name: "r".into(),
            coords: c.iter().map(|&(a, b)| QuadInt::new(a, b)).collect(),
        };
        let e1 = r(&[(1, 0), (0, 0), (0, 0)]);
        let e2 = r(&[(0, 0), (1, 0), (0, 0)]);
        assert!(orthogonal(&e1, &e2, 1).unwrap());
        let u = r(&[(1, 0), (1, 0), (0, 0)]);
        let v = r(&[(1, 0), (-1, 0), (0, 0)]);
        assert!(orthogonal(&u, &v, 1).unwrap());
        // (1, sqrt2, 0) . (sqrt2, -1, 0) = 0 in Z[sqrt2]
        let p = r(&[(1, 0), (0, 1), (0, 0)]);
        let q = r(&[(0, 1), (-1, 0), (0, 0)]);
        assert!(orthogonal(&p, &q, 2).unwrap());
        // symmetric
        assert!(orthogonal(&q, &p, 2).unwrap());
    }

    #[test]
    fn proportional_rays_rejected() {
        let err = RayScenario::parse("dim 3\nray e1 = (1,0,0)\nray e1b = (-2,0,0)\n").unwrap_err();
        assert!(matches!(err, RayFileError::DuplicateRay { .. }));
        // proportionality through a sqrt factor
        let err =
            RayScenario::parse("dim 3\nradicand 2\nray a = (1,1,0)\nray b = (0+1*rt,0+1*rt,0)\n")
                .unwrap_err();
        assert!(matches!(err, RayFileError::DuplicateRay { .. }));
    }

    #[test]
    fn wrong_size_context_rejected() {
        let err = RayScenario::parse(
            "dim 4\nray e1 = (1,0,0,0)\nray e2 = (0,1,0,0)\nray e3 = (0,0,1,0)\n\
             context e1 e2 e3\n",
        )
        .unwrap_err();
        assert_eq!(
            err,
            RayFileError::ContextSize {
                line: 5,
                expected: 4,
                got: 3
            }
        );
    }

    #[test]
    fn non_orthogonal_context_rejected() {
        let err = RayScenario::parse("dim 2\nray e1 = (1,0)\nray e2 = (1,1)\ncontext e1 e2\n")
            .unwrap_err();
        assert!(matches!(err, RayFileError::ContextNotOrthogonal { .. }));
    }

    #[test]
    fn small_maximal_cliques_become_warnings() {
        // two orthogonal rays in d=3 whose completion is absent
        let s = RayScenario::parse("dim 3\nray a = (1,0,0)\nray b = (0,1,0)\n").unwrap();
        assert!(s.contexts.is_empty());
        assert_eq!(s.warnings.len(), 1);
    }

    #[test]
    fn coefficient_grammar() {
        let s = RayScenario::parse("dim 2\nradicand 2\nray a = (-1+2*rt, 3-1*rt)\nray b = (1,0)\n")
            .unwrap();
        assert_eq!(s.rays[0].coords[0], QuadInt::new(-1, 2));
        assert_eq!(s.rays[0].coords[1], QuadInt::new(3, -1));
    }
}
