//! Combinatorial planar diagrams of knots and spatial graphs.
//!
//! A diagram is a list of signed crossings, trivalent vertices and free
//! loops over positive edge labels. Conventions:
//!
//! * Crossing slots are stored counterclockwise starting from the incoming
//!   under-strand: `[under-in, b, under-out, d]`. For a positive crossing
//!   the over-strand runs d -> b; for a negative crossing b -> d.
//! * Vertex slots are stored counterclockwise, each flagged incoming or
//!   outgoing.
//! * A free loop is a closed component with no crossings or vertices; it
//!   carries no edge labels and is tracked by a counter.
//! * An unresolved intersection `I a b` is a planned transversal crossing
//!   between edges `a` and `b` that has not been pushed off the projection
//!   surface yet; by convention `b` crosses `a` from left to right as seen
//!   along `a`. Records sharing an edge are stored in order along it.

pub mod build;
pub mod plat;
pub mod surgery;
pub mod text;

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

pub type EdgeLabel = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Positive,
    Negative,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Crossing {
    pub sign: Sign,
    /// CCW from the incoming under-strand.
    pub slots: [EdgeLabel; 4],
}

impl Crossing {
    pub fn under_in(&self) -> EdgeLabel {
        self.slots[0]
    }

    pub fn under_out(&self) -> EdgeLabel {
        self.slots[2]
    }

    pub fn over_in(&self) -> EdgeLabel {
        match self.sign {
            Sign::Positive => self.slots[3],
            Sign::Negative => self.slots[1],
        }
    }

    pub fn over_out(&self) -> EdgeLabel {
        match self.sign {
            Sign::Positive => self.slots[1],
            Sign::Negative => self.slots[3],
        }
    }

    /// Incoming flags per slot, aligned with `slots`.
    pub fn incoming(&self) -> [bool; 4] {
        match self.sign {
            Sign::Positive => [true, false, false, true],
            Sign::Negative => [true, true, false, false],
        }
    }
}

/// Direction of an edge at a vertex slot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SlotDir {
    /// The edge points away from the vertex (`+` in the text format).
    Outgoing,
    /// The edge points into the vertex (`-`).
    Incoming,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrivalentVertex {
    /// CCW around the vertex.
    pub slots: [(EdgeLabel, SlotDir); 3],
}

/// A not-yet-resolved transversal intersection between two edges.
/// `second` crosses `first` from left to right as seen along `first`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Intersection {
    pub first: EdgeLabel,
    pub second: EdgeLabel,
}

/// Where a tunnel attaches on the plat: at the top bridge level or the
/// bottom one, joining the strands at the two named positions (1..=4).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TunnelSide {
    Upper,
    Lower,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TunnelSpec {
    pub side: TunnelSide,
    pub positions: (u8, u8),
}

/// Construction provenance for diagrams produced by the plat generator;
/// carried through the text format as a structured comment so that tunnel
/// attachment can rebuild the layout.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlatFrame {
    pub cf: Vec<i64>,
    pub tunnels: Vec<TunnelSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct PlanarDiagram {
    pub crossings: Vec<Crossing>,
    pub vertices: Vec<TrivalentVertex>,
    pub free_loops: usize,
    pub intersections: Vec<Intersection>,
    pub frame: Option<PlatFrame>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<String>,
    /// Present when the diagram is structurally sound.
    pub components: Option<usize>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok() {
            write!(f, "ok, {} component(s)", self.components.unwrap_or(0))
        } else {
            for v in &self.violations {
                writeln!(f, "violation: {v}")?;
            }
            Ok(())
        }
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, a: usize) -> usize {
        if self.0[a] != a {
            let r = self.find(self.0[a]);
            self.0[a] = r;
        }
        self.0[a]
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra] = rb;
        }
    }
}

impl PlanarDiagram {
    pub fn unknot() -> Self {
        PlanarDiagram { free_loops: 1, ..Default::default() }
    }

    /// Every (label, incoming?) slot occurrence in a fixed scan order.
    fn slot_occurrences(&self) -> Vec<(EdgeLabel, bool)> {
        let mut out = Vec::with_capacity(4 * self.crossings.len() + 3 * self.vertices.len());
        for c in &self.crossings {
            let inc = c.incoming();
            for (i, &l) in c.slots.iter().enumerate() {
                out.push((l, inc[i]));
            }
        }
        for v in &self.vertices {
            for &(l, dir) in &v.slots {
                out.push((l, dir == SlotDir::Incoming));
            }
        }
        out
    }

    /// Sorted list of distinct edge labels used in slots.
    pub fn edge_labels(&self) -> Vec<EdgeLabel> {
        let mut labels: Vec<EdgeLabel> = self.slot_occurrences().iter().map(|&(l, _)| l).collect();
        labels.sort_unstable();
        labels.dedup();
        labels
    }

    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let mut counts: BTreeMap<EdgeLabel, (usize, usize)> = BTreeMap::new(); // (in, out)
        for (l, incoming) in self.slot_occurrences() {
            if l == 0 {
                violations.push("edge label 0 is not allowed (labels are positive)".into());
                continue;
            }
            let e = counts.entry(l).or_insert((0, 0));
            if incoming {
                e.0 += 1;
            } else {
                e.1 += 1;
            }
        }
        for (&l, &(inc, out)) in &counts {
            match inc + out {
                2 => {
                    if inc != 1 {
                        violations.push(format!(
                            "edge {l} has {inc} incoming and {out} outgoing slots (expected one of each)"
                        ));
                    }
                }
                1 => violations.push(format!("dangling edge {l}")),
                n => violations.push(format!("edge {l} appears {n} times (expected 2)")),
            }
        }
        for x in &self.intersections {
            for l in [x.first, x.second] {
                if !counts.contains_key(&l) {
                    violations.push(format!(
                        "unresolved intersection references missing edge {l}"
                    ));
                }
            }
            if x.first == x.second {
                violations.push(format!(
                    "unresolved intersection of edge {} with itself is not supported",
                    x.first
                ));
            }
        }
        let components = if violations.is_empty() { Some(self.component_count()) } else { None };
        ValidationReport { violations, components }
    }

    /// Connected components of the underlying spatial graph: strands join
    /// through crossings (under-in to under-out, over-in to over-out) and
    /// all edges at a vertex join. Free loops count one each.
    pub fn component_count(&self) -> usize {
        let labels = self.edge_labels();
        if labels.is_empty() {
            return self.free_loops;
        }
        let index: BTreeMap<EdgeLabel, usize> =
            labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        let mut uf = UnionFind::new(labels.len());
        for c in &self.crossings {
            uf.union(index[&c.under_in()], index[&c.under_out()]);
            uf.union(index[&c.over_in()], index[&c.over_out()]);
        }
        for v in &self.vertices {
            uf.union(index[&v.slots[0].0], index[&v.slots[1].0]);
            uf.union(index[&v.slots[0].0], index[&v.slots[2].0]);
        }
        let mut roots: Vec<usize> = (0..labels.len()).map(|i| uf.find(i)).collect();
        roots.sort_unstable();
        roots.dedup();
        roots.len() + self.free_loops
    }

    /// First Betti number of the underlying graph. Each component with v
    /// trivalent vertices contributes v/2 + 1, so the total is
    /// (#vertices)/2 + #components. For a connected knot-with-tunnels graph
    /// this equals 1 + #tunnels, the genus of a regular neighborhood.
    pub fn first_betti_number(&self) -> usize {
        self.vertices.len() / 2 + self.component_count()
    }

    /// Rewrite edge labels to 1..=n preserving relative order. All
    /// constructors and parsers call this, so diagrams are canonical.
    pub fn renormalize_labels(&mut self) {
        let labels = self.edge_labels();
        let map: BTreeMap<EdgeLabel, EdgeLabel> =
            labels.iter().enumerate().map(|(i, &l)| (l, (i + 1) as EdgeLabel)).collect();
        for c in &mut self.crossings {
            for s in &mut c.slots {
                *s = map[s];
            }
        }
        for v in &mut self.vertices {
            for s in &mut v.slots {
                s.0 = map[&s.0];
            }
        }
        for x in &mut self.intersections {
            x.first = map[&x.first];
            x.second = map[&x.second];
        }
    }

    /// Crossing signs as (#positive, #negative).
    pub fn signed_crossing_counts(&self) -> (usize, usize) {
        let pos = self.crossings.iter().filter(|c| c.sign == Sign::Positive).count();
        (pos, self.crossings.len() - pos)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknot_token_validates() {
        let d = PlanarDiagram::unknot();
        let r = d.validate();
        assert!(r.ok());
        assert_eq!(r.components, Some(1));
    }

    #[test]
    fn dangling_edge_detected() {
        // A single positive crossing with edge 7 appearing once.
        let d = PlanarDiagram {
            crossings: vec![Crossing { sign: Sign::Positive, slots: [1, 2, 1, 7] }],
            ..Default::default()
        };
        let r = d.validate();
        assert!(!r.ok());
        assert!(r.violations.iter().any(|v| v.contains("dangling edge 7")), "{:?}", r.violations);
    }

    #[test]
    fn kink_validates_and_is_one_component() {
        // One-crossing unknot (a kink): edges 1, 2.
        // Under-strand 1 -> 2, over-strand 2 -> 1 (positive kink).
        let d = PlanarDiagram {
            crossings: vec![Crossing { sign: Sign::Positive, slots: [1, 1, 2, 2] }],
            ..Default::default()
        };
        let r = d.validate();
        assert!(r.ok(), "{:?}", r.violations);
        assert_eq!(r.components, Some(1));
    }

    #[test]
    fn renormalization_compacts_labels() {
        let mut d = PlanarDiagram {
            crossings: vec![Crossing { sign: Sign::Positive, slots: [3, 3, 9, 9] }],
            ..Default::default()
        };
        d.renormalize_labels();
        assert_eq!(d.crossings[0].slots, [1, 1, 2, 2]);
    }
}
