//! 4-plat diagrams of 2-bridge knots and links from continued fractions,
//! with optional unknotting-tunnel attachment.
//!
//! The continued fraction `[a1, a2, ..., ak]` evaluates left to right as
//! `a1 + 1/(a2 + 1/(... + 1/ak))` and the plat realizes it with twist
//! regions read innermost-first down the braid: horizontal regions act on
//! strand positions (2,3), vertical regions on (3,4). Odd-length fractions
//! start from the standard top caps (1,2)(3,4); even-length ones need the
//! nested caps (1,4)(2,3). Positive terms twist right-handed. The bottom
//! closure always joins (1,2) and (3,4).
//!
//! Tunnel layout with both tunnels present: the upper tunnel spans the
//! corridor between its two bridge legs just below the caps; the lower
//! tunnel joins the two middle strands above the bottom closure and is
//! routed around the outside of the plat into that corridor, where it
//! crosses the upper tunnel twice (the two unresolved intersections) and,
//! between the two passes, wraps over-and-under the upper tunnel's right
//! attachment leg so the passes cannot cancel. Getting in and out it runs
//! under the knot at the two outer bottom legs and, for nested caps, under
//! the outer cap arch twice.

use super::build::{pv, px, Builder, EdgeEnd};
use super::{PlanarDiagram, PlatFrame, TunnelSide, TunnelSpec};
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PlatError {
    #[error("continued fraction must be nonempty")]
    EmptyCf,
    #[error("continued fraction terms must be nonzero (term {0} is zero)")]
    ZeroTerm(usize),
    #[error("continued fraction evaluates to infinity, which has no plat closure")]
    InfiniteValue,
    #[error("continued fraction value overflows")]
    Overflow,
    #[error("{0}")]
    Tunnel(String),
}

/// A nonempty list of nonzero integer twist counts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContinuedFraction {
    terms: Vec<i64>,
}

impl ContinuedFraction {
    pub fn new(terms: Vec<i64>) -> Result<Self, PlatError> {
        if terms.is_empty() {
            return Err(PlatError::EmptyCf);
        }
        if let Some(i) = terms.iter().position(|&t| t == 0) {
            return Err(PlatError::ZeroTerm(i));
        }
        Ok(ContinuedFraction { terms })
    }

    pub fn terms(&self) -> &[i64] {
        &self.terms
    }

    pub fn crossing_count(&self) -> u64 {
        self.terms.iter().map(|t| t.unsigned_abs()).sum()
    }
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.terms.iter().map(|t| t.to_string()).collect();
        write!(f, "[{}]", s.join(","))
    }
}

/// A reduced fraction with positive denominator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fraction {
    pub num: i64,
    pub den: i64,
}

impl Fraction {
    /// Odd numerator means a knot; even means a 2-component link.
    pub fn is_knot(&self) -> bool {
        self.num.rem_euclid(2) == 1
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Evaluate `a1 + 1/(a2 + 1/(... + 1/ak))` exactly. Intermediate infinite
/// values are fine (the next step turns 1/inf into 0); a final infinite
/// value is rejected.
pub fn cf_to_fraction(cf: &ContinuedFraction) -> Result<Fraction, PlatError> {
    let mut num: i128 = 0;
    let mut den: i128 = 1; // running value num/den of the tail, right to left
    for (i, &a) in cf.terms.iter().enumerate().rev() {
        if i == cf.terms.len() - 1 {
            num = a as i128;
            den = 1;
        } else {
            // a + den/num
            let new_num = (a as i128).checked_mul(num).and_then(|v| v.checked_add(den));
            let Some(new_num) = new_num else { return Err(PlatError::Overflow) };
            den = num;
            num = new_num;
        }
    }
    if den == 0 {
        return Err(PlatError::InfiniteValue);
    }
    let g = gcd(num.unsigned_abs(), den.unsigned_abs()) as i128;
    let (mut num, mut den) = (num / g, den / g);
    if den < 0 {
        num = -num;
        den = -den;
    }
    let (num, den) = (i64::try_from(num), i64::try_from(den));
    match (num, den) {
        (Ok(n), Ok(d)) => Ok(Fraction { num: n, den: d }),
        _ => Err(PlatError::Overflow),
    }
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// The 4-plat closure of the continued fraction, one crossing per twist.
pub fn two_bridge_plat(cf: &ContinuedFraction) -> Result<PlanarDiagram, PlatError> {
    cf_to_fraction(cf)?; // reject infinite values up front
    let mut d = build_plat(cf, None, None)?;
    d.frame = Some(PlatFrame { cf: cf.terms.clone(), tunnels: Vec::new() });
    Ok(d)
}

/// Default attachment positions for a tunnel on this plat.
pub fn default_tunnel_spec(cf: &ContinuedFraction, side: TunnelSide) -> TunnelSpec {
    let positions = match side {
        TunnelSide::Upper => {
            if cf.terms.len() % 2 == 1 {
                (2, 3)
            } else {
                (1, 2)
            }
        }
        TunnelSide::Lower => (2, 3),
    };
    TunnelSpec { side, positions }
}

struct TwistRegion {
    /// 0-based left strand position: 1 for horizontal (2,3), 2 for vertical (3,4).
    left: usize,
    count: u64,
    over_13: bool,
}

fn twist_regions(cf: &ContinuedFraction) -> Vec<TwistRegion> {
    // Innermost term first; index i is horizontal when i is even.
    let k = cf.terms.len();
    let mut regions = Vec::with_capacity(k);
    for i in (0..k).rev() {
        let a = cf.terms[i];
        let horizontal = i % 2 == 0;
        let positive = a > 0;
        // Right-handed horizontal twists carry the over-strand on the
        // (0,2) diagonal; vertical regions are the 90-degree rotate, which
        // swaps the diagonals.
        let over_13 = if horizontal { !positive } else { positive };
        regions.push(TwistRegion {
            left: if horizontal { 1 } else { 2 },
            count: a.unsigned_abs(),
            over_13,
        });
    }
    regions
}

/// Build the plat with optional upper/lower tunnels (attachment positions
/// are 1-based strand positions, already validated by the caller).
pub(crate) fn build_plat(
    cf: &ContinuedFraction,
    upper: Option<(u8, u8)>,
    lower: Option<(u8, u8)>,
) -> Result<PlanarDiagram, PlatError> {
    let k = cf.terms.len();
    let nested = k % 2 == 0;
    let mut b = Builder::new();

    // Top caps.
    let mut frontier: [EdgeEnd; 4];
    if nested {
        let outer = b.add_edge(None, None);
        let inner = b.add_edge(None, None);
        frontier = [
            EdgeEnd { edge: outer, end: 0 },
            EdgeEnd { edge: inner, end: 0 },
            EdgeEnd { edge: inner, end: 1 },
            EdgeEnd { edge: outer, end: 1 },
        ];
    } else {
        let left = b.add_edge(None, None);
        let right = b.add_edge(None, None);
        frontier = [
            EdgeEnd { edge: left, end: 0 },
            EdgeEnd { edge: left, end: 1 },
            EdgeEnd { edge: right, end: 0 },
            EdgeEnd { edge: right, end: 1 },
        ];
    }
    let outer_cap = frontier[0].edge;

    // Upper tunnel: vertex A on the left leg (tunnel germ pointing right),
    // vertex B on the right leg (germ pointing left), direct corridor arc.
    let mut upper_tunnel_edge = None;
    let mut leg_below_b = None;
    if let Some((p0, p1)) = upper {
        let (p0, p1) = (p0 as usize - 1, p1 as usize - 1);
        let a = b.add_vertex(); // ports: 0 tunnel, 1 knot-up, 2 knot-down
        frontier[p0] = b.split_open_end(frontier[p0], pv(a, 1), pv(a, 2));
        let bb = b.add_vertex(); // ports: 0 knot-up, 1 tunnel, 2 knot-down
        frontier[p1] = b.split_open_end(frontier[p1], pv(bb, 0), pv(bb, 2));
        let t = b.add_edge(Some(pv(a, 0)), Some(pv(bb, 1)));
        upper_tunnel_edge = Some(t);
        leg_below_b = Some(frontier[p1].edge);
    }

    for region in twist_regions(cf) {
        for _ in 0..region.count {
            let c = b.add_crossing(region.over_13);
            // Ports CCW: 0 = NW, 1 = SW, 2 = SE, 3 = NE.
            let (j, j1) = (region.left, region.left + 1);
            b.set_end(frontier[j], px(c, 0));
            b.set_end(frontier[j1], px(c, 3));
            frontier[j] = EdgeEnd { edge: b.add_edge(Some(px(c, 1)), None), end: 1 };
            frontier[j1] = EdgeEnd { edge: b.add_edge(Some(px(c, 2)), None), end: 1 };
        }
    }

    if let Some(_positions) = lower {
        if let Some(t) = upper_tunnel_edge {
            // Roundabout lower tunnel: C on bottom leg 2 heading west,
            // under the leg-1 strand, around and over the caps, twice
            // across the upper tunnel, back down past leg 4 to D.
            let c = b.add_vertex(); // ports: 0 knot-up, 1 tunnel (west), 2 knot-down
            frontier[1] = b.split_open_end(frontier[1], pv(c, 0), pv(c, 2));
            let d = b.add_vertex(); // ports: 0 tunnel (east), 1 knot-up, 2 knot-down
            frontier[2] = b.split_open_end(frontier[2], pv(d, 1), pv(d, 2));

            // Knot-over-tunnel crossings on the outer bottom legs; ports
            // CCW: 0 = E, 1 = N, 2 = W, 3 = S; knot runs N-S over.
            let x1 = b.add_crossing(true);
            frontier[0] = b.split_open_end(frontier[0], px(x1, 1), px(x1, 3));
            let x2 = b.add_crossing(true);
            frontier[3] = b.split_open_end(frontier[3], px(x2, 1), px(x2, 3));

            // Inside the corridor, between the two passes across the upper
            // tunnel, the arc also wraps the upper tunnel's right
            // attachment leg: over it heading out, back under it. The wrap
            // is what stops the two tunnel crossings from cancelling
            // across an empty bigon.
            let y1 = b.add_crossing(false); // tunnel E-W over the leg
            let y2 = b.add_crossing(true); //  tunnel back under
            let leg = super::build::EdgeEnd { edge: leg_below_b.unwrap(), end: 0 };
            b.split_attached_end(leg, px(y1, 3), px(y1, 1));
            b.split_attached_end(leg, px(y2, 3), px(y2, 1));

            let (m1, m3) = if nested {
                // The dive into the corridor passes under the outer cap
                // arch on the way in and out: knot runs E-W over, tunnel
                // N-S under.
                let (xa, xb) = (b.add_crossing(false), b.add_crossing(false));
                let upper_left = upper == Some((1, 2));
                if upper_left {
                    // Arch order from the A side: X_a then X_b.
                    let e = super::build::EdgeEnd { edge: outer_cap, end: 0 };
                    b.split_attached_end(e, px(xa, 0), px(xa, 2));
                    b.split_attached_end(e, px(xb, 0), px(xb, 2));
                } else {
                    let e = super::build::EdgeEnd { edge: outer_cap, end: 1 };
                    b.split_attached_end(e, px(xb, 2), px(xb, 0));
                    b.split_attached_end(e, px(xa, 2), px(xa, 0));
                }
                b.add_edge(Some(pv(c, 1)), Some(px(x1, 0)));
                b.add_edge(Some(px(x1, 2)), Some(px(xa, 1)));
                let m1 = b.add_edge(Some(px(xa, 3)), Some(px(y1, 2)));
                b.add_edge(Some(px(y1, 0)), Some(px(y2, 0)));
                let m3 = b.add_edge(Some(px(y2, 2)), Some(px(xb, 3)));
                b.add_edge(Some(px(xb, 1)), Some(px(x2, 0)));
                b.add_edge(Some(px(x2, 2)), Some(pv(d, 0)));
                (m1, m3)
            } else {
                b.add_edge(Some(pv(c, 1)), Some(px(x1, 0)));
                let m1 = b.add_edge(Some(px(x1, 2)), Some(px(y1, 2)));
                b.add_edge(Some(px(y1, 0)), Some(px(y2, 0)));
                let m3 = b.add_edge(Some(px(y2, 2)), Some(px(x2, 0)));
                b.add_edge(Some(px(x2, 2)), Some(pv(d, 0)));
                (m1, m3)
            };
            b.add_intersection(t, m1);
            b.add_intersection(m3, t);
        } else {
            // Direct corridor arc above the bottom caps.
            let c = b.add_vertex(); // ports: 0 tunnel (east), 1 knot-up, 2 knot-down
            frontier[1] = b.split_open_end(frontier[1], pv(c, 1), pv(c, 2));
            let d = b.add_vertex(); // ports: 0 knot-up, 1 tunnel (west), 2 knot-down
            frontier[2] = b.split_open_end(frontier[2], pv(d, 0), pv(d, 2));
            b.add_edge(Some(pv(c, 0)), Some(pv(d, 1)));
        }
    }

    b.join(frontier[0], frontier[1]);
    b.join(frontier[2], frontier[3]);
    Ok(b.emit())
}
