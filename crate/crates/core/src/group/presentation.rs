//! Finitely presented groups: a generator count plus a list of relator words.

use super::word::{Letter, Word};
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PresentationError {
    #[error("relator {relator} references generator {gen} but only {gens} generators exist")]
    GeneratorOutOfRange { relator: usize, gen: usize, gens: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// A finite presentation. Relators are stored freely reduced; generator
/// indices are 0-based internally and 1-based in the text format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupPresentation {
    generator_count: usize,
    generator_names: Option<Vec<String>>,
    relators: Vec<Word>,
}

impl GroupPresentation {
    pub fn new(generator_count: usize, relators: Vec<Word>) -> Result<Self, PresentationError> {
        let relators: Vec<Word> = relators.into_iter().map(|w| w.free_reduced()).collect();
        for (i, r) in relators.iter().enumerate() {
            if let Some(m) = r.max_gen() {
                if m >= generator_count {
                    return Err(PresentationError::GeneratorOutOfRange {
                        relator: i,
                        gen: m,
                        gens: generator_count,
                    });
                }
            }
        }
        Ok(GroupPresentation { generator_count, generator_names: None, relators })
    }

    pub fn free(rank: usize) -> Self {
        GroupPresentation { generator_count: rank, generator_names: None, relators: Vec::new() }
    }

    pub fn with_names(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.generator_count);
        self.generator_names = Some(names);
        self
    }

    pub fn generator_count(&self) -> usize {
        self.generator_count
    }

    pub fn generator_names(&self) -> Option<&[String]> {
        self.generator_names.as_deref()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn total_relator_length(&self) -> usize {
        self.relators.iter().map(|r| r.len()).sum()
    }

    /// Text format: first line `gens n`, then one relator per line as
    /// space-separated tokens (`g3 G1 g2`); `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, PresentationError> {
        let mut gens: Option<usize> = None;
        let mut relators = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = match raw.find('#') {
                Some(p) => &raw[..p],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let mut tokens = line.split_whitespace();
            if gens.is_none() {
                let head = tokens.next().unwrap();
                if head != "gens" {
                    return Err(PresentationError::Parse {
                        line: line_no,
                        msg: format!("expected `gens n` header, found `{head}`"),
                    });
                }
                let n = tokens
                    .next()
                    .ok_or_else(|| PresentationError::Parse {
                        line: line_no,
                        msg: "expected generator count after `gens`".into(),
                    })?
                    .parse::<usize>()
                    .map_err(|e| PresentationError::Parse {
                        line: line_no,
                        msg: format!("bad generator count: {e}"),
                    })?;
                if tokens.next().is_some() {
                    return Err(PresentationError::Parse {
                        line: line_no,
                        msg: "trailing tokens after `gens n`".into(),
                    });
                }
                gens = Some(n);
                continue;
            }
            let n = gens.unwrap();
            let mut word = Word::empty();
            for tok in line.split_whitespace() {
                if tok == "1" {
                    continue; // explicit empty word
                }
                let (exp, rest) = match tok.chars().next() {
                    Some('g') => (1i8, &tok[1..]),
                    Some('G') => (-1i8, &tok[1..]),
                    _ => {
                        return Err(PresentationError::Parse {
                            line: line_no,
                            msg: format!("expected token like `g3` or `G1`, found `{tok}`"),
                        })
                    }
                };
                let idx1: usize = rest.parse().map_err(|e| PresentationError::Parse {
                    line: line_no,
                    msg: format!("bad generator index in `{tok}`: {e}"),
                })?;
                if idx1 == 0 || idx1 > n {
                    return Err(PresentationError::Parse {
                        line: line_no,
                        msg: format!("generator index {idx1} out of range 1..={n}"),
                    });
                }
                word.push(Letter::new(idx1 - 1, exp));
            }
            relators.push(word);
        }
        let n = gens.ok_or(PresentationError::Parse { line: 0, msg: "missing `gens n` header".into() })?;
        GroupPresentation::new(n, relators)
    }

    pub fn emit(&self) -> String {
        let mut out = format!("gens {}\n", self.generator_count);
        for r in &self.relators {
            out.push_str(&r.to_string());
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.emit())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let p = GroupPresentation::new(
            3,
            vec![Word::from_signed(&[1, 2, -1, -2]), Word::from_signed(&[3, 3])],
        )
        .unwrap();
        let text = p.emit();
        let q = GroupPresentation::parse(&text).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn parse_rejects_out_of_range() {
        let err = GroupPresentation::parse("gens 2\ng3\n").unwrap_err();
        match err {
            PresentationError::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn relators_stored_reduced() {
        let p = GroupPresentation::new(1, vec![Word::from_signed(&[1, -1, 1])]).unwrap();
        assert_eq!(p.relators()[0], Word::from_signed(&[1]));
    }
}
