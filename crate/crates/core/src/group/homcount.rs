//! Exact counting of homomorphisms from a presented group to a finite group.
//!
//! The count is a brute-force enumeration of generator assignments with a
//! hard budget on relator evaluations. Two refinements keep realistic runs
//! inside the budget:
//!
//! * symmetry reduction: hom counts are constant along simultaneous
//!   conjugation, so the first generator ranges over one representative per
//!   conjugacy class and each partial count is weighted by the class size;
//! * partitioned parallelism: the outermost assignment loop is split into
//!   tasks whose exact partial counts are added, so the result does not
//!   depend on worker count or scheduling.

use super::finite::FiniteGroupTable;
use super::presentation::GroupPresentation;
use std::thread;
use thiserror::Error;

/// Default cap on relator evaluations (tuples tried x relators checked).
pub const DEFAULT_BUDGET: u64 = 1 << 32;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CountError {
    #[error("counting homomorphisms into {group} needs {needed} relator evaluations, over the budget of {budget} (symmetry reduction: {symmetry_reduction})")]
    BudgetExceeded { group: String, needed: u128, budget: u64, symmetry_reduction: bool },
    #[error("|{group}|^{gens} does not fit in 128 bits")]
    CountOverflow { group: String, gens: usize },
}

#[derive(Clone, Debug)]
pub struct CountOptions {
    pub budget: u64,
    pub symmetry_reduction: bool,
    /// Worker threads for the outermost loop; 1 means serial.
    pub jobs: usize,
}

impl Default for CountOptions {
    fn default() -> Self {
        CountOptions { budget: DEFAULT_BUDGET, symmetry_reduction: false, jobs: 1 }
    }
}

impl CountOptions {
    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_symmetry_reduction(mut self, on: bool) -> Self {
        self.symmetry_reduction = on;
        self
    }

    pub fn with_jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs.max(1);
        self
    }
}

struct Compiled {
    /// (generator, take-inverse) per letter.
    relators: Vec<Vec<(usize, bool)>>,
}

fn compile(p: &GroupPresentation) -> Compiled {
    Compiled {
        relators: p
            .relators()
            .iter()
            .map(|r| r.0.iter().map(|l| (l.gen, l.exp < 0)).collect())
            .collect(),
    }
}

#[inline]
fn relators_hold(c: &Compiled, g: &FiniteGroupTable, x: &[u8]) -> bool {
    for rel in &c.relators {
        let mut acc = 0u8;
        for &(gen, inv) in rel {
            let v = if inv { g.inv(x[gen]) } else { x[gen] };
            acc = g.mul(acc, v);
        }
        if acc != 0 {
            return false;
        }
    }
    true
}

/// Count assignments of `x[fixed..]` (coordinates below `fixed` are pinned).
fn count_completions(c: &Compiled, g: &FiniteGroupTable, x: &mut [u8], fixed: usize) -> u128 {
    let order = g.order() as u8;
    let n = x.len();
    if fixed == n {
        return relators_hold(c, g, x) as u128;
    }
    // Odometer over the free coordinates.
    for i in fixed..n {
        x[i] = 0;
    }
    let mut count = 0u128;
    loop {
        if relators_hold(c, g, x) {
            count += 1;
        }
        let mut i = n;
        loop {
            if i == fixed {
                return count;
            }
            i -= 1;
            if x[i] + 1 < order {
                x[i] += 1;
                break;
            }
            x[i] = 0;
        }
    }
}

/// Exact number of homomorphisms from the presented group to `g`.
///
/// Free presentations are counted arithmetically. Otherwise every tuple of
/// generator images is enumerated and checked against every relator; the
/// projected number of relator evaluations must fit the budget.
pub fn count_homs(
    p: &GroupPresentation,
    g: &FiniteGroupTable,
    opts: &CountOptions,
) -> Result<u128, CountError> {
    let gens = p.generator_count();
    let order = g.order() as u128;

    let pow = |e: usize| -> Option<u128> {
        let mut acc: u128 = 1;
        for _ in 0..e {
            acc = acc.checked_mul(order)?;
        }
        Some(acc)
    };

    if p.relators().is_empty() || gens == 0 {
        // Every assignment works (empty relators are trivially satisfied).
        return pow(gens).ok_or(CountError::CountOverflow { group: g.name().into(), gens });
    }

    let relator_count = p.relators().len() as u128;
    let tuples = if opts.symmetry_reduction {
        pow(gens - 1).map(|t| t.saturating_mul(g.conjugacy_classes().len() as u128))
    } else {
        pow(gens)
    };
    let needed = tuples.and_then(|t| t.checked_mul(relator_count));
    match needed {
        Some(n) if n <= opts.budget as u128 => {}
        n => {
            return Err(CountError::BudgetExceeded {
                group: g.name().into(),
                needed: n.unwrap_or(u128::MAX),
                budget: opts.budget,
                symmetry_reduction: opts.symmetry_reduction,
            })
        }
    }

    let c = compile(p);

    // Tasks pin the first coordinate (and carry a weight); their counts add.
    let tasks: Vec<(u8, u128)> = if opts.symmetry_reduction {
        g.conjugacy_classes().iter().map(|&(rep, size)| (rep, size as u128)).collect()
    } else {
        (0..g.order() as u8).map(|v| (v, 1u128)).collect()
    };

    let jobs = opts.jobs.max(1).min(tasks.len().max(1));
    if jobs == 1 {
        let mut x = vec![0u8; gens];
        let mut total = 0u128;
        for &(first, weight) in &tasks {
            x[0] = first;
            total += weight * count_completions(&c, g, &mut x, 1);
        }
        return Ok(total);
    }

    let total = thread::scope(|scope| {
        let mut handles = Vec::with_capacity(jobs);
        for w in 0..jobs {
            let tasks = &tasks;
            let c = &c;
            handles.push(scope.spawn(move || {
                let mut x = vec![0u8; gens];
                let mut local = 0u128;
                for &(first, weight) in tasks.iter().skip(w).step_by(jobs) {
                    x[0] = first;
                    local += weight * count_completions(c, g, &mut x, 1);
                }
                local
            }));
        }
        handles.into_iter().map(|h| h.join().expect("counting worker panicked")).sum()
    });
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::finite::builtin_group;
    use crate::group::word::Word;

    fn trefoil_two_gen() -> GroupPresentation {
        // <x, y | x y x = y x y>
        GroupPresentation::new(2, vec![Word::from_signed(&[1, 2, 1, -2, -1, -2])]).unwrap()
    }

    #[test]
    fn free_groups_count_arithmetically() {
        let s3 = builtin_group("S3").unwrap();
        for rank in 0..=3 {
            let p = GroupPresentation::free(rank);
            assert_eq!(count_homs(&p, &s3, &CountOptions::default()).unwrap(), 6u128.pow(rank as u32));
        }
    }

    #[test]
    fn order_two_into_s3() {
        // <x | x^2>: identity plus the three transpositions.
        let p = GroupPresentation::new(1, vec![Word::from_signed(&[1, 1])]).unwrap();
        let s3 = builtin_group("S3").unwrap();
        assert_eq!(count_homs(&p, &s3, &CountOptions::default()).unwrap(), 4);
    }

    #[test]
    fn trefoil_into_s3_is_twelve() {
        let s3 = builtin_group("S3").unwrap();
        assert_eq!(count_homs(&trefoil_two_gen(), &s3, &CountOptions::default()).unwrap(), 12);
    }

    #[test]
    fn symmetry_reduction_agrees() {
        let p = trefoil_two_gen();
        for name in ["S3", "D4", "A4", "S4"] {
            let g = builtin_group(name).unwrap();
            let plain = count_homs(&p, &g, &CountOptions::default()).unwrap();
            let reduced =
                count_homs(&p, &g, &CountOptions::default().with_symmetry_reduction(true)).unwrap();
            assert_eq!(plain, reduced, "{name}");
        }
    }

    #[test]
    fn parallel_agrees_with_serial() {
        let p = trefoil_two_gen();
        let g = builtin_group("S4").unwrap();
        let serial = count_homs(&p, &g, &CountOptions::default()).unwrap();
        for jobs in [2, 3, 4, 7] {
            let par = count_homs(&p, &g, &CountOptions::default().with_jobs(jobs)).unwrap();
            assert_eq!(serial, par, "jobs = {jobs}");
        }
    }

    #[test]
    fn budget_refusal_names_the_bound() {
        let p = GroupPresentation::new(4, vec![Word::from_signed(&[1, 2, 3, 4])]).unwrap();
        let a5 = builtin_group("A5").unwrap();
        let err = count_homs(&p, &a5, &CountOptions::default().with_budget(1000)).unwrap_err();
        match err {
            CountError::BudgetExceeded { needed, budget, .. } => {
                assert_eq!(budget, 1000);
                assert_eq!(needed, 60u128.pow(4));
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
