//! Tietze simplification of finite presentations.
//!
//! Three moves, each preserving the isomorphism type:
//!
//! 1. drop relators that reduce to the empty word;
//! 2. drop relators that duplicate another up to cyclic rotation and
//!    inversion;
//! 3. eliminate a generator that occurs exactly once in some relator by
//!    solving that relator for it and substituting everywhere.
//!
//! Generator and relator counts never increase. Substitutions that would
//! grow the total relator length past `growth_limit` times the original are
//! skipped, and the whole loop stops after `max_moves` moves.

use super::presentation::GroupPresentation;
use super::word::Word;

#[derive(Clone, Debug)]
pub struct TietzeOptions {
    pub max_moves: usize,
    /// Skip eliminations that would push the total relator length beyond
    /// this multiple of the input's total.
    pub growth_limit: usize,
}

impl Default for TietzeOptions {
    fn default() -> Self {
        TietzeOptions { max_moves: 10_000, growth_limit: 4 }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TietzeStats {
    pub moves: usize,
    pub eliminated_generators: usize,
    pub dropped_relators: usize,
}

pub fn tietze_simplify(p: &GroupPresentation, opts: &TietzeOptions) -> GroupPresentation {
    tietze_simplify_with_stats(p, opts).0
}

pub fn tietze_simplify_with_stats(
    p: &GroupPresentation,
    opts: &TietzeOptions,
) -> (GroupPresentation, TietzeStats) {
    let mut gens = p.generator_count();
    let mut names: Option<Vec<String>> = p.generator_names().map(|n| n.to_vec());
    let mut relators: Vec<Word> = p.relators().iter().map(|r| r.cyclically_reduced()).collect();
    let length_cap = p.total_relator_length().saturating_mul(opts.growth_limit);
    let mut stats = TietzeStats::default();

    loop {
        if stats.moves >= opts.max_moves {
            break;
        }

        // Empty relators.
        if let Some(i) = relators.iter().position(|r| r.is_empty()) {
            relators.remove(i);
            stats.moves += 1;
            stats.dropped_relators += 1;
            continue;
        }

        // Duplicates up to rotation and inversion.
        if let Some(i) = find_duplicate(&relators) {
            relators.remove(i);
            stats.moves += 1;
            stats.dropped_relators += 1;
            continue;
        }

        // Generator elimination: among all (relator, generator) pairs where
        // the generator occurs exactly once in that relator, take the one
        // with the smallest projected total length.
        let mut best: Option<(usize, usize, usize)> = None; // (projected, relator, gen)
        let total: usize = relators.iter().map(|r| r.len()).sum();
        for (ri, r) in relators.iter().enumerate() {
            for gen in unique_gens(r) {
                let w_len = r.len() - 1;
                let elsewhere: usize =
                    relators.iter().enumerate().filter(|&(i, _)| i != ri).map(|(_, o)| o.occurrences(gen)).sum();
                // Drop the solved relator, then each remaining occurrence
                // becomes a word of length w_len.
                let projected = projected_len(total, r.len(), elsewhere, w_len);
                if projected <= length_cap
                    && best.map_or(true, |(bp, bri, bg)| {
                        (projected, ri, gen) < (bp, bri, bg)
                    })
                {
                    best = Some((projected, ri, gen));
                }
            }
        }
        let Some((_, ri, gen)) = best else { break };

        let r = relators.remove(ri);
        let replacement = solve_for(&r, gen);
        relators = relators
            .iter()
            .map(|other| other.substitute(gen, &replacement).cyclically_reduced())
            .collect();
        gens -= 1;
        if let Some(ns) = &mut names {
            ns.remove(gen);
        }
        stats.moves += 1;
        stats.eliminated_generators += 1;
    }

    let mut out = GroupPresentation::new(gens, relators)
        .expect("tietze moves preserve generator ranges");
    if let Some(ns) = names {
        out = out.with_names(ns);
    }
    (out, stats)
}

fn projected_len(total: usize, removed: usize, elsewhere: usize, w_len: usize) -> usize {
    total - removed + elsewhere.saturating_mul(w_len).saturating_sub(elsewhere)
}

fn find_duplicate(relators: &[Word]) -> Option<usize> {
    for i in 0..relators.len() {
        let ci = relators[i].cyclic_canonical();
        for j in 0..i {
            if relators[j].cyclic_canonical() == ci {
                return Some(i);
            }
        }
    }
    None
}

/// Generators occurring exactly once in the word.
fn unique_gens(r: &Word) -> Vec<usize> {
    let mut gens: Vec<usize> = r.0.iter().map(|l| l.gen).collect();
    gens.sort_unstable();
    let mut out = Vec::new();
    let mut i = 0;
    while i < gens.len() {
        let j = gens[i..].iter().take_while(|&&g| g == gens[i]).count();
        if j == 1 {
            out.push(gens[i]);
        }
        i += j;
    }
    out
}

/// Solve a relator for a generator occurring exactly once: rotate the
/// occurrence to the front, then `g tail = 1` gives `g = tail^-1` and
/// `g^-1 tail = 1` gives `g = tail`.
fn solve_for(r: &Word, gen: usize) -> Word {
    let k = r.0.iter().position(|l| l.gen == gen).expect("generator present");
    let exp = r.0[k].exp;
    let tail: Vec<_> = r.0[k + 1..].iter().chain(r.0[..k].iter()).copied().collect();
    let tail = Word(tail);
    if exp == 1 {
        tail.inverse()
    } else {
        tail
    }
}
