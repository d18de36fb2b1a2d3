//! Tunnel attachment and intersection resolution.

use super::build::{pv, Builder};
use super::plat::{build_plat, ContinuedFraction, PlatError};
use super::{
    Crossing, EdgeLabel, Intersection, PlanarDiagram, PlatFrame, Sign, SlotDir, TunnelSide,
    TunnelSpec,
};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SurgeryError {
    #[error("tunnel attachment needs a knot diagram: {0}")]
    NotAKnot(String),
    #[error("diagram has no plat frame; tunnels attach to plat output or a 0-crossing unknot")]
    NoFrame,
    #[error("diagram does not match its plat frame (was the file edited?)")]
    FrameMismatch,
    #[error("tunnels are already attached")]
    AlreadyTunneled,
    #[error("{0}")]
    BadSpec(String),
    #[error("{0}")]
    Plat(#[from] PlatError),
    #[error("perturbation case {0} is out of range 1..=4")]
    BadCase(usize),
    #[error("expected exactly 2 unresolved intersections, found {0}")]
    WrongIntersectionCount(usize),
}

/// Attach tunnel arcs to a knot diagram, splitting the knot at each
/// attachment point into trivalent vertices. With both an upper and a
/// lower tunnel on a plat, the lower tunnel's arc crosses the upper one
/// twice; the two crossings stay unresolved until `perturb`.
pub fn attach_tunnels(
    d: &PlanarDiagram,
    specs: &[TunnelSpec],
) -> Result<PlanarDiagram, SurgeryError> {
    let report = d.validate();
    if !report.ok() {
        return Err(SurgeryError::NotAKnot("diagram does not validate".into()));
    }
    if report.components != Some(1) {
        return Err(SurgeryError::NotAKnot(format!(
            "expected 1 component, found {}",
            report.components.unwrap_or(0)
        )));
    }
    if !d.vertices.is_empty() || !d.intersections.is_empty() {
        return Err(SurgeryError::AlreadyTunneled);
    }
    if specs.is_empty() {
        return Ok(d.clone());
    }

    if d.crossings.is_empty() && d.free_loops == 1 {
        return attach_to_unknot(specs);
    }

    let frame = d.frame.as_ref().ok_or(SurgeryError::NoFrame)?;
    if !frame.tunnels.is_empty() {
        return Err(SurgeryError::AlreadyTunneled);
    }
    let cf = ContinuedFraction::new(frame.cf.clone())?;

    let mut upper = None;
    let mut lower = None;
    for spec in specs {
        let slot = match spec.side {
            TunnelSide::Upper => &mut upper,
            TunnelSide::Lower => &mut lower,
        };
        if slot.is_some() {
            return Err(SurgeryError::BadSpec(
                "at most one tunnel per side; the attachment points would overlap".into(),
            ));
        }
        *slot = Some(validate_positions(&cf, spec)?);
    }

    // The input must really be this frame's plat.
    let mut bare = build_plat(&cf, None, None)?;
    bare.frame = d.frame.clone();
    if &bare != d {
        return Err(SurgeryError::FrameMismatch);
    }

    let mut out = build_plat(&cf, upper, lower)?;
    out.frame = Some(PlatFrame { cf: frame.cf.clone(), tunnels: specs.to_vec() });
    debug_assert!(out.validate().ok(), "{:?}", out.validate().violations);
    Ok(out)
}

fn validate_positions(
    cf: &ContinuedFraction,
    spec: &TunnelSpec,
) -> Result<(u8, u8), SurgeryError> {
    let nested = cf.terms().len() % 2 == 0;
    let ok: &[(u8, u8)] = match spec.side {
        TunnelSide::Upper => {
            if nested {
                &[(1, 2), (3, 4)]
            } else {
                &[(2, 3)]
            }
        }
        TunnelSide::Lower => &[(2, 3)],
    };
    if ok.contains(&spec.positions) {
        Ok(spec.positions)
    } else {
        let side = match spec.side {
            TunnelSide::Upper => "upper",
            TunnelSide::Lower => "lower",
        };
        let choices: Vec<String> = ok.iter().map(|(a, b)| format!("{a}-{b}")).collect();
        Err(SurgeryError::BadSpec(format!(
            "{side} tunnel on this plat attaches at {} (got {}-{}); the attachment must join \
             the two bridge arcs across a corridor",
            choices.join(" or "),
            spec.positions.0,
            spec.positions.1
        )))
    }
}

/// Tunnels on the 0-crossing unknot: chords inside the circle, mutually
/// disjoint. One tunnel gives the planar theta-curve.
fn attach_to_unknot(specs: &[TunnelSpec]) -> Result<PlanarDiagram, SurgeryError> {
    if specs.len() > 2 {
        return Err(SurgeryError::BadSpec("at most two tunnels on the unknot".into()));
    }
    let mut b = Builder::new();
    // Vertices around a counterclockwise circle; each vertex has ports
    // 0 = knot-forward, 1 = tunnel (inward chord), 2 = knot-backward.
    let n = 2 * specs.len();
    let vs: Vec<usize> = (0..n).map(|_| b.add_vertex()).collect();
    for i in 0..n {
        let next = (i + 1) % n;
        b.add_edge(Some(pv(vs[i], 0)), Some(pv(vs[next], 2)));
    }
    // Chords join consecutive vertex pairs (0,1), (2,3): endpoints are not
    // interleaved around the circle, so the chords are disjoint.
    for t in 0..specs.len() {
        b.add_edge(Some(pv(vs[2 * t], 1)), Some(pv(vs[2 * t + 1], 1)));
    }
    let mut out = b.emit();
    out.frame = None;
    debug_assert!(out.validate().ok(), "{:?}", out.validate().violations);
    Ok(out)
}

/// The four ways to push the two tunnel intersections off the projection
/// surface. Case k picks, for each intersection record in order, whether
/// the record's first edge goes over (`true`) or under.
pub fn perturb_case_bits(case: usize) -> Result<(bool, bool), SurgeryError> {
    match case {
        1 => Ok((true, true)),
        2 => Ok((true, false)),
        3 => Ok((false, true)),
        4 => Ok((false, false)),
        other => Err(SurgeryError::BadCase(other)),
    }
}

/// Resolve the two unresolved intersections into genuine crossings.
pub fn perturb(d: &PlanarDiagram, case: usize) -> Result<PlanarDiagram, SurgeryError> {
    let bits = perturb_case_bits(case)?;
    if d.intersections.len() != 2 {
        return Err(SurgeryError::WrongIntersectionCount(d.intersections.len()));
    }
    let mut out = d.clone();
    let choices = [bits.0, bits.1];

    // Track the label of the still-growing tail segment of each split edge.
    let mut current: std::collections::BTreeMap<EdgeLabel, EdgeLabel> =
        std::collections::BTreeMap::new();
    let mut next = out.edge_labels().last().copied().unwrap_or(0) + 1;
    let records: Vec<Intersection> = out.intersections.drain(..).collect();
    for (rec, &first_over) in records.iter().zip(&choices) {
        let a_in = *current.get(&rec.first).unwrap_or(&rec.first);
        let b_in = *current.get(&rec.second).unwrap_or(&rec.second);
        let a_out = next;
        let b_out = next + 1;
        next += 2;
        // Local picture: `first` runs west to east, `second` crosses it
        // north to south. Slots CCW from the incoming under-strand.
        let crossing = if first_over {
            Crossing { sign: Sign::Negative, slots: [b_in, a_in, b_out, a_out] }
        } else {
            Crossing { sign: Sign::Positive, slots: [a_in, b_out, a_out, b_in] }
        };
        out.crossings.push(crossing);
        current.insert(rec.first, a_out);
        current.insert(rec.second, b_out);
    }

    // The head end of each split edge now belongs to its final segment:
    // repoint the one incoming slot that referenced the original label.
    let new_crossings = out.crossings.len() - records.len();
    for (original, last) in &current {
        if original == last {
            continue;
        }
        let mut repointed = false;
        for c in out.crossings[..new_crossings].iter_mut() {
            let inc = c.incoming();
            for (i, s) in c.slots.iter_mut().enumerate() {
                if *s == *original && inc[i] {
                    *s = *last;
                    repointed = true;
                }
            }
        }
        for v in out.vertices.iter_mut() {
            for s in v.slots.iter_mut() {
                if s.0 == *original && s.1 == SlotDir::Incoming {
                    s.0 = *last;
                    repointed = true;
                }
            }
        }
        assert!(repointed, "split edge {original} has no incoming slot");
    }

    out.renormalize_labels();
    debug_assert!(out.validate().ok(), "{:?}", out.validate().violations);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::plat::two_bridge_plat;
    use crate::diagram::TunnelSide;

    fn cf(terms: &[i64]) -> ContinuedFraction {
        ContinuedFraction::new(terms.to_vec()).unwrap()
    }

    fn upper(cf_: &ContinuedFraction) -> TunnelSpec {
        super::super::plat::default_tunnel_spec(cf_, TunnelSide::Upper)
    }

    fn lower(cf_: &ContinuedFraction) -> TunnelSpec {
        super::super::plat::default_tunnel_spec(cf_, TunnelSide::Lower)
    }

    #[test]
    fn theta_curve_from_unknot() {
        let d = PlanarDiagram::unknot();
        let spec = TunnelSpec { side: TunnelSide::Upper, positions: (2, 3) };
        let theta = attach_tunnels(&d, &[spec]).unwrap();
        assert_eq!(theta.crossings.len(), 0);
        assert_eq!(theta.vertices.len(), 2);
        assert_eq!(theta.edge_labels().len(), 3);
        assert!(theta.validate().ok());
        assert_eq!(theta.first_betti_number(), 2);
    }

    #[test]
    fn two_disjoint_tunnels_on_unknot() {
        let d = PlanarDiagram::unknot();
        let specs = [
            TunnelSpec { side: TunnelSide::Upper, positions: (2, 3) },
            TunnelSpec { side: TunnelSide::Lower, positions: (2, 3) },
        ];
        let g = attach_tunnels(&d, &specs).unwrap();
        assert_eq!(g.vertices.len(), 4);
        assert!(g.intersections.is_empty());
        assert_eq!(g.first_betti_number(), 3);
        assert_eq!(g.component_count(), 1);
    }

    #[test]
    fn single_tunnel_on_plat() {
        for terms in [&[3][..], &[2, 2][..], &[2, 1, 1, 2][..]] {
            let c = cf(terms);
            let d = two_bridge_plat(&c).unwrap();
            let base_crossings = d.crossings.len();
            let up = attach_tunnels(&d, &[upper(&c)]).unwrap();
            assert_eq!(up.vertices.len(), 2, "{c}");
            assert_eq!(up.crossings.len(), base_crossings, "{c}");
            assert!(up.intersections.is_empty());
            assert_eq!(up.first_betti_number(), 2, "{c}");
            let low = attach_tunnels(&d, &[lower(&c)]).unwrap();
            assert_eq!(low.vertices.len(), 2, "{c}");
            assert_eq!(low.crossings.len(), base_crossings, "{c}");
            assert_eq!(low.first_betti_number(), 2, "{c}");
        }
    }

    #[test]
    fn both_tunnels_record_two_intersections() {
        let c = cf(&[2, 1, 1, 2]);
        let d = two_bridge_plat(&c).unwrap();
        let g = attach_tunnels(&d, &[upper(&c), lower(&c)]).unwrap();
        assert_eq!(g.vertices.len(), 4);
        assert_eq!(g.intersections.len(), 2);
        // 6 braid crossings + 2 outer-leg passes + 2 outer-cap passes
        // + the 2-crossing wrap around the upper tunnel's leg
        assert_eq!(g.crossings.len(), 12);
        assert_eq!(g.first_betti_number(), 3);
        assert_eq!(g.component_count(), 1);

        // Odd-length fraction: no cap arch to duck under.
        let c3 = cf(&[3]);
        let d3 = two_bridge_plat(&c3).unwrap();
        let g3 = attach_tunnels(&d3, &[upper(&c3), lower(&c3)]).unwrap();
        assert_eq!(g3.crossings.len(), 3 + 4);
        assert_eq!(g3.intersections.len(), 2);
    }

    #[test]
    fn perturb_resolves_to_distinct_diagrams() {
        let c = cf(&[2, 1, 1, 2]);
        let d = two_bridge_plat(&c).unwrap();
        let g = attach_tunnels(&d, &[upper(&c), lower(&c)]).unwrap();
        let mut seen = Vec::new();
        for case in 1..=4 {
            let p = perturb(&g, case).unwrap();
            assert!(p.intersections.is_empty());
            assert_eq!(p.crossings.len(), g.crossings.len() + 2, "case {case}");
            assert!(p.validate().ok(), "case {case}: {:?}", p.validate().violations);
            assert_eq!(p.component_count(), 1);
            assert_eq!(p.first_betti_number(), 3);
            seen.push(p);
        }
        for i in 0..4 {
            for j in 0..i {
                assert_ne!(seen[i], seen[j], "cases {} and {} coincide", i + 1, j + 1);
            }
        }
    }

    #[test]
    fn perturb_rejects_bad_input() {
        let c = cf(&[3]);
        let d = two_bridge_plat(&c).unwrap();
        assert_eq!(perturb(&d, 1).unwrap_err(), SurgeryError::WrongIntersectionCount(0));
        let g = attach_tunnels(&d, &[upper(&c), lower(&c)]).unwrap();
        assert_eq!(perturb(&g, 5).unwrap_err(), SurgeryError::BadCase(5));
    }

    #[test]
    fn attach_rejects_links_and_missing_frames() {
        let c = cf(&[2]);
        let d = two_bridge_plat(&c).unwrap(); // Hopf link, 2 components
        assert!(matches!(
            attach_tunnels(&d, &[upper(&c)]),
            Err(SurgeryError::NotAKnot(_))
        ));
        let mut tref = two_bridge_plat(&cf(&[3])).unwrap();
        tref.frame = None;
        assert_eq!(
            attach_tunnels(&tref, &[upper(&cf(&[3]))]).unwrap_err(),
            SurgeryError::NoFrame
        );
    }
}
