//! Words in a free group: sequences of signed generator letters.
//!
//! Words are the carrier type for relators. They are kept freely reduced
//! by the presentation constructors; the reduction routines here are also
//! exposed directly.

use serde::{Deserialize, Serialize};
use std::fmt;

/// A single letter: generator index plus exponent +1 or -1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub gen: usize,
    pub exp: i8,
}

impl Letter {
    pub fn new(gen: usize, exp: i8) -> Self {
        debug_assert!(exp == 1 || exp == -1);
        Letter { gen, exp }
    }

    pub fn inverse(self) -> Self {
        Letter { gen: self.gen, exp: -self.exp }
    }

    fn cancels(self, other: Letter) -> bool {
        self.gen == other.gen && self.exp == -other.exp
    }
}

/// A word in the generators, not necessarily reduced.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Build from signed 1-based integers: `3` is generator 2, `-1` is the
    /// inverse of generator 0. Convenient in tests.
    pub fn from_signed(letters: &[i32]) -> Self {
        Word(
            letters
                .iter()
                .map(|&s| {
                    assert!(s != 0, "letter 0 has no meaning");
                    Letter::new((s.unsigned_abs() as usize) - 1, if s > 0 { 1 } else { -1 })
                })
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, l: Letter) {
        self.0.push(l);
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    /// Concatenate and freely reduce.
    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.clone();
        w.0.extend_from_slice(&other.0);
        w.free_reduced()
    }

    /// Remove all adjacent inverse pairs.
    pub fn free_reduced(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            match out.last() {
                Some(&top) if top.cancels(l) => {
                    out.pop();
                }
                _ => out.push(l),
            }
        }
        Word(out)
    }

    /// Freely reduce, then strip cyclically adjacent inverse pairs
    /// (first letter vs last letter). The result represents a conjugate
    /// of the original element.
    pub fn cyclically_reduced(&self) -> Word {
        let mut w = self.free_reduced().0;
        while w.len() >= 2 && w[0].cancels(*w.last().unwrap()) {
            w.pop();
            w.remove(0);
        }
        Word(w)
    }

    /// Largest generator index used, if any.
    pub fn max_gen(&self) -> Option<usize> {
        self.0.iter().map(|l| l.gen).max()
    }

    /// Number of occurrences of the generator, ignoring exponents.
    pub fn occurrences(&self, gen: usize) -> usize {
        self.0.iter().filter(|l| l.gen == gen).count()
    }

    /// Sum of exponents of the generator.
    pub fn exponent_sum(&self, gen: usize) -> i64 {
        self.0
            .iter()
            .filter(|l| l.gen == gen)
            .map(|l| l.exp as i64)
            .sum()
    }

    /// Canonical representative of the relator up to cyclic rotation and
    /// inversion: the lexicographically least rotation of the word or of
    /// its inverse. Used to detect duplicate relators.
    pub fn cyclic_canonical(&self) -> Word {
        let w = self.cyclically_reduced();
        if w.is_empty() {
            return w;
        }
        let mut best: Option<Vec<Letter>> = None;
        for cand in [&w, &w.inverse()] {
            let n = cand.0.len();
            for r in 0..n {
                let rot: Vec<Letter> =
                    cand.0[r..].iter().chain(cand.0[..r].iter()).copied().collect();
                let key = |v: &Vec<Letter>| -> Vec<(usize, i8)> {
                    v.iter().map(|l| (l.gen, l.exp)).collect()
                };
                if best.as_ref().map_or(true, |b| key(&rot) < key(b)) {
                    best = Some(rot);
                }
            }
        }
        Word(best.unwrap())
    }

    /// Replace every occurrence of `gen` by `replacement` (or its inverse,
    /// matching the letter's exponent), renumbering letters above `gen`
    /// down by one. The result is freely reduced.
    pub fn substitute(&self, gen: usize, replacement: &Word) -> Word {
        let mut out = Word::empty();
        for &l in &self.0 {
            if l.gen == gen {
                let piece = if l.exp == 1 { replacement.clone() } else { replacement.inverse() };
                out.0.extend(piece.0);
            } else {
                out.0.push(l);
            }
        }
        let shift = |l: Letter| {
            if l.gen > gen {
                Letter::new(l.gen - 1, l.exp)
            } else {
                l
            }
        };
        Word(out.free_reduced().0.into_iter().map(shift).collect())
    }
}

impl fmt::Display for Word {
    /// Token form used by the presentation text format: `g3 G1 g2`,
    /// lowercase for a generator, uppercase for its inverse, 1-based index.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for l in &self.0 {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            let c = if l.exp == 1 { 'g' } else { 'G' };
            write!(f, "{}{}", c, l.gen + 1)?;
        }
        Ok(())
    }
}
