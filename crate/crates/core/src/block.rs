//! Block scenarios: event structures presented Greechie-style, as a set of
//! atoms and a list of blocks (the atom sets of maximal Boolean subalgebras).
//!
//! File grammar (line oriented, `#` starts a comment):
//!
//! ```text
//! atoms <n1> <n2> ...
//! block <n> <n> ...
//! ```

use serde::Serialize;
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockScenario {
    pub atoms: Vec<String>,
    /// Sorted atom-index sets; no block contains another.
    pub blocks: Vec<Vec<usize>>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BlockFileError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("line {line}: unknown atom {name:?}")]
    UnknownAtom { line: usize, name: String },
    #[error("block {{{a}}} is contained in block {{{b}}}")]
    NestedBlocks { a: String, b: String },
    #[error("atom {0:?} belongs to no block")]
    UncoveredAtom(String),
    #[error("scenario has no blocks")]
    Empty,
}

impl BlockScenario {
    pub fn new(atoms: Vec<String>, blocks: Vec<Vec<usize>>) -> Result<Self, BlockFileError> {
        let mut blocks: Vec<Vec<usize>> = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b.dedup();
                b
            })
            .collect();
        blocks.sort();
        blocks.dedup();
        if blocks.is_empty() {
            return Err(BlockFileError::Empty);
        }
        let render = |b: &[usize]| {
            b.iter()
                .map(|&i| atoms[i].clone())
                .collect::<Vec<_>>()
                .join(", ")
        };
        for (i, a) in blocks.iter().enumerate() {
            for b in blocks.iter().skip(i + 1) {
                if a.iter().all(|x| b.contains(x)) {
                    return Err(BlockFileError::NestedBlocks {
                        a: render(a),
                        b: render(b),
                    });
                }
                if b.iter().all(|x| a.contains(x)) {
                    return Err(BlockFileError::NestedBlocks {
                        a: render(b),
                        b: render(a),
                    });
                }
            }
        }
        for (i, name) in atoms.iter().enumerate() {
            if !blocks.iter().any(|b| b.contains(&i)) {
                return Err(BlockFileError::UncoveredAtom(name.clone()));
            }
        }
        Ok(BlockScenario { atoms, blocks })
    }

    pub fn parse(text: &str) -> Result<BlockScenario, BlockFileError> {
        let mut atoms: Vec<String> = Vec::new();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
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
            let err = |msg: String| BlockFileError::Parse { line: line_no, msg };
            let mut words = line.split_whitespace();
            match words.next() {
                Some("atoms") => {
                    for w in words {
                        if atoms.iter().any(|a| a == w) {
                            return Err(err(format!("duplicate atom {w:?}")));
                        }
                        atoms.push(w.to_string());
                    }
                }
                Some("block") => {
                    let mut b = Vec::new();
                    for w in words {
                        let i = atoms.iter().position(|a| a == w).ok_or(
                            BlockFileError::UnknownAtom {
                                line: line_no,
                                name: w.to_string(),
                            },
                        )?;
                        b.push(i);
                    }
                    if b.is_empty() {
                        return Err(err("empty block".into()));
                    }
                    blocks.push(b);
                }
                Some(other) => return Err(err(format!("unknown directive {other:?}"))),
                None => {}
            }
        }
        BlockScenario::new(atoms, blocks)
    }

    pub fn block_names(&self) -> Vec<Vec<String>> {
        self.blocks
            .iter()
            .map(|b| b.iter().map(|&i| self.atoms[i].clone()).collect())
            .collect()
    }
}
