//! Genus and tunnel-number arithmetic for union stabilizations.
//!
//! Each rule returns a `BoundReport` carrying the computed value, the
//! formula it came from and the hypothesis under which it applies. The
//! rules themselves are elementary; the module exists so the arithmetic is
//! pinned down once, with the Euler-characteristic consistency check for
//! the glued-exterior computation.

use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenusError {
    #[error("bridge string count n must be at least 1")]
    BadBridgeCount,
}

/// Genus of the surface of a Heegaard splitting.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingDescriptor {
    pub genus: u64,
}

/// A (g, n) presentation: the knot meets each of two standard genus-g
/// handlebodies in a trivial n-string tangle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GnPresentation {
    pub g: u64,
    pub n: u64,
}

impl GnPresentation {
    pub fn new(g: u64, n: u64) -> Result<Self, GenusError> {
        if n < 1 {
            return Err(GenusError::BadBridgeCount);
        }
        Ok(GnPresentation { g, n })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub quantity: String,
    pub value: u64,
    pub formula: String,
    pub hypothesis: String,
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}  [{}; {}]", self.quantity, self.value, self.formula, self.hypothesis)
    }
}

/// Isotopic splittings of common genus g admit a union stabilization of
/// genus g + 1.
pub fn prop21_bound(g: u64) -> BoundReport {
    BoundReport {
        quantity: "union stabilization genus".into(),
        value: g + 1,
        formula: "g + 1".into(),
        hypothesis: "the two splittings are isotopic, both of genus g".into(),
    }
}

/// General existence bound: push one spine into the other side's
/// handlebody and add one tunnel per crossing of its diagram over the
/// g1-punctured disk.
pub fn thm22_bound(g1: u64, g2: u64, crossings: u64) -> BoundReport {
    BoundReport {
        quantity: "union stabilization genus".into(),
        value: g1 + g2 + crossings,
        formula: "g1 + g2 + c".into(),
        hypothesis: format!(
            "the second spine projects to the {g1}-punctured disk with {crossings} crossings"
        ),
    }
}

/// When the second spine lies on the first splitting surface the union
/// genus is at most the sum of the genera.
pub fn prop32_bound(g1: u64, g2: u64) -> BoundReport {
    BoundReport {
        quantity: "union genus".into(),
        value: g1 + g2,
        formula: "g(S1) + g(S2)".into(),
        hypothesis: "the spine of the second handlebody lies on the first surface".into(),
    }
}

/// Bounds from a (g, n) presentation: tunnel number at most g + n - 1;
/// the two induced splittings have union genus at most 2g + 2n - 1.
pub fn prop33_bounds(p: GnPresentation) -> (BoundReport, BoundReport) {
    let tunnel = BoundReport {
        quantity: "tunnel number".into(),
        value: p.g + p.n - 1,
        formula: "g + n - 1".into(),
        hypothesis: "the knot has a (g, n) presentation".into(),
    };
    let union = BoundReport {
        quantity: "union genus".into(),
        value: 2 * p.g + 2 * p.n - 1,
        formula: "2g + 2n - 1".into(),
        hypothesis: "the knot has tunnel number g + n - 1 with the standard tunnel systems".into(),
    };
    (tunnel, union)
}

/// Consistency check on the glued-exterior computation behind the union
/// genus bound: the exterior on one side is a genus 2g + 2n - 1
/// handlebody, the other side is (2n-punctured genus-g surface) x I, and
/// they meet along that surface. Inclusion-exclusion on the Euler
/// characteristic must give back genus 2g + 2n - 1 for the total exterior.
pub fn euler_glue_check(p: GnPresentation) -> BoundReport {
    let g = p.g as i64;
    let n = p.n as i64;
    let handlebody_genus = 2 * g + 2 * n - 1;
    let chi_x1 = 1 - handlebody_genus;
    let chi_surface = 2 - 2 * g - 2 * n; // 2n-punctured genus-g surface
    let chi_x2 = chi_surface; // surface x I
    let chi_total = chi_x1 + chi_x2 - chi_surface;
    let total_genus = 1 - chi_total;
    assert_eq!(total_genus, handlebody_genus, "gluing arithmetic must close");
    BoundReport {
        quantity: "glued exterior genus".into(),
        value: total_genus as u64,
        formula: "1 - (chi(X1) + chi(X2) - chi(X1 n X2))".into(),
        hypothesis: "X1 is a genus 2g+2n-1 handlebody, X2 = (2n-punctured genus-g surface) x I"
            .into(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isotopic_pair_bound() {
        assert_eq!(prop21_bound(2).value, 3);
        assert_eq!(prop21_bound(0).value, 1);
        assert_eq!(prop21_bound(7).value, 8);
    }

    #[test]
    fn crossing_tunnel_bound() {
        assert_eq!(thm22_bound(2, 3, 0).value, 5);
        assert_eq!(thm22_bound(1, 1, 3).value, 5);
        for (g, c) in [(0, 0), (3, 2), (5, 11)] {
            assert_eq!(thm22_bound(0, g, c).value, g + c);
        }
    }

    #[test]
    fn spine_on_surface_bound() {
        assert_eq!(prop32_bound(2, 2).value, 4);
        assert_eq!(prop32_bound(0, 5).value, 5);
        assert_eq!(prop32_bound(1, 3).value, 4);
    }

    #[test]
    fn gn_presentation_bounds() {
        let (t, u) = prop33_bounds(GnPresentation::new(1, 3).unwrap());
        assert_eq!((t.value, u.value), (3, 7));
        let (t, u) = prop33_bounds(GnPresentation::new(0, 1).unwrap());
        assert_eq!((t.value, u.value), (0, 1));
        let (t, u) = prop33_bounds(GnPresentation::new(2, 2).unwrap());
        assert_eq!((t.value, u.value), (3, 7));
    }

    #[test]
    fn euler_check_examples() {
        assert_eq!(euler_glue_check(GnPresentation::new(1, 3).unwrap()).value, 7);
        assert_eq!(euler_glue_check(GnPresentation::new(0, 1).unwrap()).value, 1);
    }

    #[test]
    fn euler_check_matches_bound_on_sweep() {
        for g in 0..=10 {
            for n in 1..=10 {
                let p = GnPresentation::new(g, n).unwrap();
                let (_, union) = prop33_bounds(p);
                assert_eq!(euler_glue_check(p).value, union.value, "g={g} n={n}");
            }
        }
    }

    #[test]
    fn monotone_in_each_argument() {
        for g1 in 0..5 {
            for g2 in 0..5 {
                for c in 0..5 {
                    let v = thm22_bound(g1, g2, c).value;
                    assert!(thm22_bound(g1 + 1, g2, c).value >= v);
                    assert!(thm22_bound(g1, g2 + 1, c).value >= v);
                    assert!(thm22_bound(g1, g2, c + 1).value >= v);
                }
            }
        }
    }

    #[test]
    fn isotopic_bound_relates_to_zero_crossing_bound() {
        for g in 0..=10 {
            assert!(prop21_bound(g).value <= thm22_bound(g, g, 0).value + 1);
        }
    }
}
