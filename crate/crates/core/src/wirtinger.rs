//! Wirtinger presentation of the exterior group of a diagrammed knot or
//! spatial graph.
//!
//! One generator per strand (maximal over-arc between under-passes and
//! vertices) plus one per free loop. One relator per crossing,
//! `u_out = o^e u_in o^-e` with `e` the crossing sign, and one per
//! trivalent vertex: the product of the incident strand meridians read
//! counterclockwise, incoming edges contributing exponent +1 and outgoing
//! edges -1.

use crate::diagram::{EdgeLabel, PlanarDiagram, Sign, SlotDir};
use crate::group::{GroupPresentation, Letter, Word};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WirtingerError {
    #[error("diagram does not validate: {0:?}")]
    InvalidDiagram(Vec<String>),
    #[error("{0} unresolved intersection(s) present; perturb the diagram first")]
    Unresolved(usize),
}

pub fn wirtinger(d: &PlanarDiagram) -> Result<GroupPresentation, WirtingerError> {
    let report = d.validate();
    if !report.ok() {
        return Err(WirtingerError::InvalidDiagram(report.violations));
    }
    if !d.intersections.is_empty() {
        return Err(WirtingerError::Unresolved(d.intersections.len()));
    }

    // Strands: edges glued across crossings along the over-strand.
    let labels = d.edge_labels();
    let index: BTreeMap<EdgeLabel, usize> =
        labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
    let mut strand: Vec<usize> = (0..labels.len()).collect();
    fn find(strand: &mut Vec<usize>, a: usize) -> usize {
        if strand[a] != a {
            let r = find(strand, strand[a]);
            strand[a] = r;
        }
        strand[a]
    }
    for c in &d.crossings {
        let (a, b) = (index[&c.over_in()], index[&c.over_out()]);
        let (ra, rb) = (find(&mut strand, a), find(&mut strand, b));
        if ra != rb {
            // Keep the smaller representative so generator order follows
            // the lowest edge label on the strand.
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            strand[hi] = lo;
        }
    }

    // Generators in discovery order from the lowest edge label.
    let mut gen_of_root: BTreeMap<usize, usize> = BTreeMap::new();
    let mut names: Vec<String> = Vec::new();
    for i in 0..labels.len() {
        let r = find(&mut strand, i);
        gen_of_root.entry(r).or_insert_with(|| {
            names.push(format!("s{}", labels[r]));
            names.len() - 1
        });
    }
    let strand_gens = names.len();
    for i in 0..d.free_loops {
        names.push(format!("u{}", i + 1));
    }
    let gen = |l: EdgeLabel, strand: &mut Vec<usize>| -> usize {
        gen_of_root[&find(strand, index[&l])]
    };

    let mut relators = Vec::with_capacity(d.crossings.len() + d.vertices.len());
    for c in &d.crossings {
        let o = gen(c.over_in(), &mut strand);
        let u_in = gen(c.under_in(), &mut strand);
        let u_out = gen(c.under_out(), &mut strand);
        let e: i8 = match c.sign {
            Sign::Positive => 1,
            Sign::Negative => -1,
        };
        relators.push(Word(vec![
            Letter::new(u_out, -1),
            Letter::new(o, e),
            Letter::new(u_in, 1),
            Letter::new(o, -e),
        ]));
    }
    for v in &d.vertices {
        let mut w = Word::empty();
        for &(l, dir) in &v.slots {
            let g = gen(l, &mut strand);
            w.push(Letter::new(g, if dir == SlotDir::Incoming { 1 } else { -1 }));
        }
        relators.push(w);
    }

    let p = GroupPresentation::new(strand_gens + d.free_loops, relators)
        .expect("strand indices are in range")
        .with_names(names);
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::plat::{default_tunnel_spec, two_bridge_plat, ContinuedFraction};
    use crate::diagram::surgery::attach_tunnels;
    use crate::diagram::{text::parse_diagram, TunnelSide};
    use crate::group::{abelianization, tietze_simplify, AbelianInvariants, TietzeOptions};

    fn cf(terms: &[i64]) -> ContinuedFraction {
        ContinuedFraction::new(terms.to_vec()).unwrap()
    }

    #[test]
    fn unknot_token() {
        let p = wirtinger(&crate::diagram::PlanarDiagram::unknot()).unwrap();
        assert_eq!(p.generator_count(), 1);
        assert!(p.relators().is_empty());
    }

    #[test]
    fn trefoil_counts_and_h1() {
        let d = two_bridge_plat(&cf(&[3])).unwrap();
        let p = wirtinger(&d).unwrap();
        assert_eq!(p.generator_count(), 3);
        assert_eq!(p.relators().len(), 3);
        assert_eq!(abelianization(&p), AbelianInvariants::free(1));
    }

    #[test]
    fn theta_curve_group_is_free_of_rank_two() {
        let theta = attach_tunnels(
            &crate::diagram::PlanarDiagram::unknot(),
            &[crate::diagram::TunnelSpec { side: TunnelSide::Upper, positions: (2, 3) }],
        )
        .unwrap();
        let p = wirtinger(&theta).unwrap();
        assert_eq!(p.generator_count(), 3);
        assert_eq!(p.relators().len(), 2);
        let q = tietze_simplify(&p, &TietzeOptions::default());
        assert_eq!(q.generator_count(), 2, "{}", q.emit());
        assert!(q.relators().is_empty(), "{}", q.emit());
    }

    #[test]
    fn structural_counts_on_generated_corpus() {
        for terms in [&[1][..], &[3], &[2, 2], &[4], &[2, 1, 1, 2], &[-3], &[2, -2], &[3, 3, 3]] {
            let d = two_bridge_plat(&cf(terms)).unwrap();
            let p = wirtinger(&d).unwrap();
            assert_eq!(p.relators().len(), d.crossings.len(), "{terms:?}");
            // A knot or link diagram has as many strands as crossings.
            assert_eq!(p.generator_count(), d.crossings.len(), "{terms:?}");
        }
    }

    #[test]
    fn knot_with_tunnels_abelianization() {
        for terms in [&[3][..], &[2, 2], &[2, 1, 1, 2]] {
            let c = cf(terms);
            let d = two_bridge_plat(&c).unwrap();
            for side in [TunnelSide::Upper, TunnelSide::Lower] {
                let g = attach_tunnels(&d, &[default_tunnel_spec(&c, side)]).unwrap();
                let p = wirtinger(&g).unwrap();
                assert_eq!(abelianization(&p), AbelianInvariants::free(2), "{terms:?} {side:?}");
            }
        }
    }

    #[test]
    fn hand_entered_vertex_relation() {
        // Planar theta: edges 1,2,3 from vertex to vertex.
        let theta = parse_diagram("V 1+1 2+1 3+1\nV 1-1 3-1 2-1\n").unwrap();
        let p = wirtinger(&theta).unwrap();
        let q = tietze_simplify(&p, &TietzeOptions::default());
        assert_eq!(q.generator_count(), 2);
        assert!(q.relators().is_empty());
    }
}
