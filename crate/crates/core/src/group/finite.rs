//! Finite groups as explicit multiplication tables.
//!
//! Tables are validated on construction: closure, associativity, identity
//! at index 0, and inverses. Orders are capped at 255 so elements fit in a
//! byte and the hom-counting inner loop stays tight.

use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupTableError {
    #[error("group order {0} exceeds the supported maximum 255")]
    TooLarge(usize),
    #[error("group order must be positive")]
    Empty,
    #[error("table entry {value} at ({row}, {col}) is not an element index < {order}")]
    NotClosed { row: usize, col: usize, value: usize, order: usize },
    #[error("associativity fails at ({a}, {b}, {c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("index 0 is not a two-sided identity (fails at {0})")]
    BadIdentity(usize),
    #[error("element {0} has no inverse")]
    NoInverse(usize),
    #[error("unknown builtin group `{0}`")]
    UnknownName(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// A finite group given by its Cayley table. Element 0 is the identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteGroupTable {
    name: String,
    order: usize,
    /// Row-major: table[a * order + b] = a * b.
    table: Vec<u8>,
    inverse: Vec<u8>,
    /// Conjugacy classes as (representative, size), identity class first.
    classes: Vec<(u8, usize)>,
}

impl FiniteGroupTable {
    pub fn new(name: impl Into<String>, table2d: Vec<Vec<usize>>) -> Result<Self, GroupTableError> {
        let order = table2d.len();
        if order == 0 {
            return Err(GroupTableError::Empty);
        }
        if order > 255 {
            return Err(GroupTableError::TooLarge(order));
        }
        let mut table = vec![0u8; order * order];
        for (i, row) in table2d.iter().enumerate() {
            if row.len() != order {
                return Err(GroupTableError::Parse {
                    line: i + 2,
                    msg: format!("expected {order} entries, found {}", row.len()),
                });
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= order {
                    return Err(GroupTableError::NotClosed { row: i, col: j, value: v, order });
                }
                table[i * order + j] = v as u8;
            }
        }
        let mul = |a: usize, b: usize| table[a * order + b] as usize;
        for a in 0..order {
            if mul(0, a) != a || mul(a, 0) != a {
                return Err(GroupTableError::BadIdentity(a));
            }
        }
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if mul(mul(a, b), c) != mul(a, mul(b, c)) {
                        return Err(GroupTableError::NotAssociative { a, b, c });
                    }
                }
            }
        }
        let mut inverse = vec![None; order];
        for a in 0..order {
            for b in 0..order {
                if mul(a, b) == 0 && mul(b, a) == 0 {
                    inverse[a] = Some(b as u8);
                    break;
                }
            }
        }
        let inverse: Vec<u8> = inverse
            .into_iter()
            .enumerate()
            .map(|(a, v)| v.ok_or(GroupTableError::NoInverse(a)))
            .collect::<Result<_, _>>()?;

        // Conjugacy classes by orbit sweep.
        let mut seen = vec![false; order];
        let mut classes = Vec::new();
        for a in 0..order {
            if seen[a] {
                continue;
            }
            let mut size = 0;
            for g in 0..order {
                let conj = mul(mul(g, a), inverse[g] as usize);
                if !seen[conj] {
                    seen[conj] = true;
                    size += 1;
                }
            }
            classes.push((a as u8, size));
        }

        Ok(FiniteGroupTable { name: name.into(), order, table, inverse, classes })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.table[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u8) -> u8 {
        self.inverse[a as usize]
    }

    pub fn conjugacy_classes(&self) -> &[(u8, usize)] {
        &self.classes
    }

    /// Cayley table file format: `order n`, then n lines of n indices.
    pub fn parse(name: impl Into<String>, text: &str) -> Result<Self, GroupTableError> {
        let mut order: Option<usize> = None;
        let mut rows: Vec<Vec<usize>> = Vec::new();
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
            if order.is_none() {
                let mut tokens = line.split_whitespace();
                if tokens.next() != Some("order") {
                    return Err(GroupTableError::Parse {
                        line: line_no,
                        msg: "expected `order n` header".into(),
                    });
                }
                let n: usize = tokens
                    .next()
                    .ok_or(GroupTableError::Parse { line: line_no, msg: "missing order".into() })?
                    .parse()
                    .map_err(|e| GroupTableError::Parse {
                        line: line_no,
                        msg: format!("bad order: {e}"),
                    })?;
                order = Some(n);
                continue;
            }
            let row: Vec<usize> = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<usize>().map_err(|e| GroupTableError::Parse {
                        line: line_no,
                        msg: format!("bad entry `{t}`: {e}"),
                    })
                })
                .collect::<Result<_, _>>()?;
            rows.push(row);
        }
        let n = order.ok_or(GroupTableError::Parse { line: 0, msg: "missing `order n` header".into() })?;
        if rows.len() != n {
            return Err(GroupTableError::Parse {
                line: 0,
                msg: format!("expected {n} table rows, found {}", rows.len()),
            });
        }
        FiniteGroupTable::new(name, rows)
    }

    pub fn emit(&self) -> String {
        let mut out = format!("order {}\n", self.order);
        for a in 0..self.order {
            let row: Vec<String> =
                (0..self.order).map(|b| self.table[a * self.order + b].to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for FiniteGroupTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (order {})", self.name, self.order)
    }
}

/// Build a group from permutations: elements are all products of the
/// generators, ordered identity-first in breadth-first generation order.
fn from_permutations(name: &str, degree: usize, gens: &[Vec<usize>]) -> FiniteGroupTable {
    let id: Vec<usize> = (0..degree).collect();
    let compose = |a: &[usize], b: &[usize]| -> Vec<usize> {
        // (a then b): x -> b[a[x]]
        a.iter().map(|&x| b[x]).collect()
    };
    let mut elems: Vec<Vec<usize>> = vec![id];
    let mut frontier = 0;
    while frontier < elems.len() {
        let cur = elems[frontier].clone();
        frontier += 1;
        for g in gens {
            let nxt = compose(&cur, g);
            if !elems.contains(&nxt) {
                elems.push(nxt);
            }
        }
    }
    let index_of = |p: &Vec<usize>| elems.iter().position(|q| q == p).unwrap();
    let order = elems.len();
    let mut rows = vec![vec![0usize; order]; order];
    for a in 0..order {
        for b in 0..order {
            rows[a][b] = index_of(&compose(&elems[a], &elems[b]));
        }
    }
    FiniteGroupTable::new(name, rows).expect("permutation group table is valid")
}

fn cyclic(name: &str, n: usize) -> FiniteGroupTable {
    let rows: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
    FiniteGroupTable::new(name, rows).expect("cyclic table is valid")
}

/// The builtin groups: Z2, Z3, Z4, Z5, S3, D4, A4, S4, A5.
pub fn builtin_group(name: &str) -> Result<FiniteGroupTable, GroupTableError> {
    match name {
        "Z2" => Ok(cyclic("Z2", 2)),
        "Z3" => Ok(cyclic("Z3", 3)),
        "Z4" => Ok(cyclic("Z4", 4)),
        "Z5" => Ok(cyclic("Z5", 5)),
        "S3" => Ok(from_permutations("S3", 3, &[vec![1, 0, 2], vec![1, 2, 0]])),
        // Symmetries of the square: rotation and a reflection.
        "D4" => Ok(from_permutations("D4", 4, &[vec![1, 2, 3, 0], vec![3, 2, 1, 0]])),
        "A4" => Ok(from_permutations("A4", 4, &[vec![1, 2, 0, 3], vec![0, 2, 3, 1]])),
        "S4" => Ok(from_permutations("S4", 4, &[vec![1, 0, 2, 3], vec![1, 2, 3, 0]])),
        "A5" => Ok(from_permutations("A5", 5, &[vec![1, 2, 0, 3, 4], vec![1, 2, 3, 4, 0]])),
        other => Err(GroupTableError::UnknownName(other.to_string())),
    }
}

pub const BUILTIN_NAMES: [&str; 9] = ["Z2", "Z3", "Z4", "Z5", "S3", "D4", "A4", "S4", "A5"];
