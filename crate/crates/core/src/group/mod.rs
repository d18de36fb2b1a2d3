//! Presentation simplification, abelianization, and finite-quotient
//! homomorphism counting.

pub mod abelian;
pub mod finite;
pub mod homcount;
pub mod presentation;
pub mod tietze;
pub mod verdict;
pub mod word;

pub use abelian::{abelianization, AbelianInvariants};
pub use finite::{builtin_group, FiniteGroupTable, GroupTableError, BUILTIN_NAMES};
pub use homcount::{count_homs, CountError, CountOptions, DEFAULT_BUDGET};
pub use presentation::{GroupPresentation, PresentationError};
pub use tietze::{tietze_simplify, tietze_simplify_with_stats, TietzeOptions, TietzeStats};
pub use verdict::{not_free_witness, SkippedCandidate, Verdict, VerdictReport};
pub use word::{Letter, Word};
