//! One-sided freeness falsification.
//!
//! A free group of rank g has exactly |G|^g homomorphisms to any finite
//! group G, and abelianization Z^g. A presented group whose hom count into
//! some G differs from |G|^g, or whose abelianization is not Z^g, is
//! therefore not free of rank g. Matching counts prove nothing, so the
//! inconclusive outcome is explicit and freeness is never certified.

use super::abelian::{abelianization, AbelianInvariants};
use super::finite::FiniteGroupTable;
use super::homcount::{count_homs, CountError, CountOptions};
use super::presentation::GroupPresentation;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    /// Witness that the group is not free of the claimed rank: the hom
    /// count into the named group differs from |G|^rank.
    NotFreeOfRank { rank: usize, witness: String, expected: u128, actual: u128 },
    /// Short-circuit: H1 already differs from Z^rank.
    AbelianizationMismatch { found: AbelianInvariants, expected_rank: usize },
    /// Every tested count matched |G|^rank; nothing is proven.
    Inconclusive { tested: Vec<String> },
}

impl Verdict {
    pub fn is_not_free(&self) -> bool {
        !matches!(self, Verdict::Inconclusive { .. })
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::NotFreeOfRank { rank, witness, expected, actual } => write!(
                f,
                "not free of rank {rank}: {witness} sees {actual} homomorphisms, a free group would give {expected}"
            ),
            Verdict::AbelianizationMismatch { found, expected_rank } => {
                write!(f, "not free of rank {expected_rank}: abelianization is {found}, expected Z^{expected_rank}")
            }
            Verdict::Inconclusive { tested } => {
                write!(f, "inconclusive: counts matched the free pattern on [{}]", tested.join(", "))
            }
        }
    }
}

/// Outcome of the discrimination, with enough data to reproduce it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictReport {
    pub claimed_rank: usize,
    pub abelianization: AbelianInvariants,
    pub verdict: Verdict,
    /// Candidate groups skipped because counting would blow the budget.
    pub skipped: Vec<SkippedCandidate>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkippedCandidate {
    pub group: String,
    pub reason: String,
}

/// Check the presented group against the claim "free of rank `rank`".
///
/// The abelianization test runs first and short-circuits. Then candidates
/// are tried in order; the first count mismatch is returned as a witness.
/// Budget refusals are recorded per candidate and do not abort the scan.
pub fn not_free_witness(
    p: &GroupPresentation,
    rank: usize,
    candidates: &[FiniteGroupTable],
    opts: &CountOptions,
) -> VerdictReport {
    let ab = abelianization(p);
    if !ab.is_free_of_rank(rank) {
        return VerdictReport {
            claimed_rank: rank,
            abelianization: ab.clone(),
            verdict: Verdict::AbelianizationMismatch { found: ab, expected_rank: rank },
            skipped: Vec::new(),
        };
    }

    let mut tested = Vec::new();
    let mut skipped = Vec::new();
    for g in candidates {
        let expected = (g.order() as u128).checked_pow(rank as u32);
        let actual = match count_homs(p, g, opts) {
            Ok(n) => n,
            Err(e @ CountError::BudgetExceeded { .. }) | Err(e @ CountError::CountOverflow { .. }) => {
                skipped.push(SkippedCandidate { group: g.name().to_string(), reason: e.to_string() });
                continue;
            }
        };
        let Some(expected) = expected else {
            skipped.push(SkippedCandidate {
                group: g.name().to_string(),
                reason: format!("|{}|^{rank} does not fit in 128 bits", g.name()),
            });
            continue;
        };
        if actual != expected {
            return VerdictReport {
                claimed_rank: rank,
                abelianization: ab,
                verdict: Verdict::NotFreeOfRank {
                    rank,
                    witness: g.name().to_string(),
                    expected,
                    actual,
                },
                skipped,
            };
        }
        tested.push(g.name().to_string());
    }
    VerdictReport {
        claimed_rank: rank,
        abelianization: ab,
        verdict: Verdict::Inconclusive { tested },
        skipped,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::finite::builtin_group;
    use crate::group::word::Word;

    #[test]
    fn trefoil_is_not_free_of_rank_one() {
        let p = GroupPresentation::new(2, vec![Word::from_signed(&[1, 2, 1, -2, -1, -2])]).unwrap();
        let report = not_free_witness(&p, 1, &[builtin_group("S3").unwrap()], &CountOptions::default());
        match report.verdict {
            Verdict::NotFreeOfRank { rank, ref witness, expected, actual } => {
                assert_eq!(rank, 1);
                assert_eq!(witness, "S3");
                assert_eq!(expected, 6);
                assert_eq!(actual, 12);
            }
            ref other => panic!("unexpected verdict {other:?}"),
        }
    }

    #[test]
    fn free_presentation_is_inconclusive() {
        let p = GroupPresentation::free(2);
        let candidates = [builtin_group("S3").unwrap(), builtin_group("A4").unwrap()];
        let report = not_free_witness(&p, 2, &candidates, &CountOptions::default());
        assert_eq!(report.verdict, Verdict::Inconclusive { tested: vec!["S3".into(), "A4".into()] });
    }

    #[test]
    fn torsion_fails_fast() {
        let p = GroupPresentation::new(1, vec![Word::from_signed(&[1, 1])]).unwrap();
        let report = not_free_witness(&p, 1, &[builtin_group("S3").unwrap()], &CountOptions::default());
        assert!(matches!(report.verdict, Verdict::AbelianizationMismatch { .. }));
    }

    #[test]
    fn budget_refusals_are_recorded_not_fatal() {
        // Genus-two surface group: H1 = Z^4, so the scan reaches the counts.
        let p = GroupPresentation::new(
            4,
            vec![Word::from_signed(&[1, 2, -1, -2, 3, 4, -3, -4])],
        )
        .unwrap();
        // Tiny budget: A5 must be skipped; S3 still runs (6^4 * 1 = 1296 evals).
        let candidates = [builtin_group("A5").unwrap(), builtin_group("S3").unwrap()];
        let report =
            not_free_witness(&p, 4, &candidates, &CountOptions::default().with_budget(2000));
        assert_eq!(report.skipped.len(), 1);
        assert_eq!(report.skipped[0].group, "A5");
    }
}
