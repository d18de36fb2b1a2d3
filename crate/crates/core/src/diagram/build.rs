//! Port-graph scaffolding behind the diagram generators.
//!
//! Nodes are crossings (4 ports, stored counterclockwise, through-strands
//! on the (0,2) and (1,3) diagonals) and trivalent vertices (3 ports,
//! counterclockwise). Edges join two ports. Emission traces every strand,
//! orients it, assigns labels in discovery order and derives each crossing
//! sign from which over-diagonal port the over-strand enters.

use super::{Crossing, Intersection, PlanarDiagram, Sign, SlotDir, TrivalentVertex};
use std::collections::HashMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Node {
    X(usize),
    V(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Port {
    pub node: Node,
    pub port: usize,
}

pub(crate) fn px(node: usize, port: usize) -> Port {
    Port { node: Node::X(node), port }
}

pub(crate) fn pv(node: usize, port: usize) -> Port {
    Port { node: Node::V(node), port }
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct BCrossing {
    /// True when the (1,3) diagonal carries the over-strand.
    pub over_13: bool,
}

#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct BVertex;

#[derive(Clone, Copy, Debug)]
struct BEdge {
    ends: [Option<Port>; 2],
    dead: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct EdgeEnd {
    pub edge: usize,
    pub end: usize,
}

/// Unresolved intersection between two builder edges, with the intended
/// orientation baked in: `second` crosses `first` left-to-right when both
/// run from their end 0 to their end 1.
#[derive(Clone, Copy, Debug)]
struct BIntersection {
    first: usize,
    second: usize,
}

#[derive(Default)]
pub(crate) struct Builder {
    crossings: Vec<BCrossing>,
    vertices: Vec<BVertex>,
    edges: Vec<BEdge>,
    free_loops: usize,
    intersections: Vec<BIntersection>,
}

impl Builder {
    pub fn new() -> Self {
        Builder::default()
    }

    pub fn add_crossing(&mut self, over_13: bool) -> usize {
        self.crossings.push(BCrossing { over_13 });
        self.crossings.len() - 1
    }

    pub fn add_vertex(&mut self) -> usize {
        self.vertices.push(BVertex);
        self.vertices.len() - 1
    }

    /// New edge; ends may be attached later.
    pub fn add_edge(&mut self, a: Option<Port>, b: Option<Port>) -> usize {
        self.edges.push(BEdge { ends: [a, b], dead: false });
        self.edges.len() - 1
    }

    pub fn set_end(&mut self, e: EdgeEnd, port: Port) {
        let slot = &mut self.edges[e.edge].ends[e.end];
        assert!(slot.is_none(), "edge end already attached");
        *slot = Some(port);
    }

    /// Join two open edge ends (a closure cap). Joining the two ends of a
    /// single edge closes it into a free loop.
    pub fn join(&mut self, a: EdgeEnd, b: EdgeEnd) {
        assert!(self.edges[a.edge].ends[a.end].is_none());
        assert!(self.edges[b.edge].ends[b.end].is_none());
        if a.edge == b.edge {
            self.edges[a.edge].dead = true;
            self.free_loops += 1;
            return;
        }
        let keep_a = self.edges[a.edge].ends[1 - a.end];
        let keep_b = self.edges[b.edge].ends[1 - b.end];
        assert!(
            !self.intersections.iter().any(|x| [x.first, x.second]
                .contains(&a.edge)
                || [x.first, x.second].contains(&b.edge)),
            "cannot merge edges that carry intersection records"
        );
        self.edges[a.edge].dead = true;
        self.edges[b.edge].dead = true;
        self.edges.push(BEdge { ends: [keep_a, keep_b], dead: false });
    }

    /// Record that `second` crosses `first` left-to-right (both taken from
    /// end 0 toward end 1). Records sharing an edge must be added in order
    /// along it.
    pub fn add_intersection(&mut self, first: usize, second: usize) {
        self.intersections.push(BIntersection { first, second });
    }

    /// Split an open-ended edge by a new node: the piece keeping the far
    /// attachment ends at `near_port` of the node, and a fresh edge runs
    /// from `far_port` to the original open end. Returns the fresh edge's
    /// open end. Used to hang vertices and crossings on plat legs.
    pub fn split_open_end(
        &mut self,
        e: EdgeEnd,
        near_port: Port,
        far_port: Port,
    ) -> EdgeEnd {
        assert!(self.edges[e.edge].ends[e.end].is_none(), "split point must be an open end");
        self.edges[e.edge].ends[e.end] = Some(near_port);
        let fresh = self.add_edge(Some(far_port), None);
        EdgeEnd { edge: fresh, end: 1 }
    }

    /// Split an edge next to one of its attached ends: that attachment
    /// moves to the new node's `near_port`, and a fresh edge runs from the
    /// moved attachment point back to `far_port`. The original edge keeps
    /// its identity on the far side of the new node.
    pub fn split_attached_end(&mut self, e: EdgeEnd, near_port: Port, far_port: Port) -> usize {
        let old = self.edges[e.edge].ends[e.end].expect("split point must be attached");
        self.edges[e.edge].ends[e.end] = Some(near_port);
        self.add_edge(Some(far_port), Some(old))
    }

    /// Finish: orient every strand, label edges in discovery order, and
    /// produce the diagram. Panics on dangling ends or port clashes, which
    /// would be construction bugs.
    pub fn emit(&self) -> PlanarDiagram {
        let mut port_owner: HashMap<Port, EdgeEnd> = HashMap::new();
        for (i, e) in self.edges.iter().enumerate() {
            if e.dead {
                continue;
            }
            for (k, end) in e.ends.iter().enumerate() {
                let p = end.expect("dangling edge end at emission");
                let prev = port_owner.insert(p, EdgeEnd { edge: i, end: k });
                assert!(prev.is_none(), "two edges share a port");
            }
        }

        // tail[e] = the end index the strand traversal enters the edge at.
        let mut tail: HashMap<usize, usize> = HashMap::new();
        let mut label: HashMap<usize, u32> = HashMap::new();
        let mut next_label = 1u32;

        let mut walk = |start: EdgeEnd, tail: &mut HashMap<usize, usize>, label: &mut HashMap<usize, u32>| {
            let mut cur = start;
            loop {
                if tail.contains_key(&cur.edge) {
                    return;
                }
                tail.insert(cur.edge, cur.end);
                label.insert(cur.edge, next_label);
                next_label += 1;
                let far = self.edges[cur.edge].ends[1 - cur.end].unwrap();
                match far.node {
                    Node::V(_) => return,
                    Node::X(_) => {
                        let through = Port { node: far.node, port: (far.port + 2) % 4 };
                        cur = port_owner[&through];
                    }
                }
            }
        };

        // Arcs out of vertices first, in creation order, then leftover circles.
        for v in 0..self.vertices.len() {
            for q in 0..3 {
                let start = port_owner[&pv(v, q)];
                walk(start, &mut tail, &mut label);
            }
        }
        for e in 0..self.edges.len() {
            if !self.edges[e].dead && !tail.contains_key(&e) {
                walk(EdgeEnd { edge: e, end: 0 }, &mut tail, &mut label);
            }
        }

        // An edge end is incoming at its port when it is the head.
        let incoming = |p: Port| -> (u32, bool) {
            let ee = port_owner[&p];
            (label[&ee.edge], tail[&ee.edge] != ee.end)
        };

        let mut crossings = Vec::with_capacity(self.crossings.len());
        for (ci, c) in self.crossings.iter().enumerate() {
            let under = if c.over_13 { [0usize, 2] } else { [1, 3] };
            let (l0, in0) = incoming(px(ci, under[0]));
            let (_, in1) = incoming(px(ci, under[1]));
            assert!(in0 != in1, "under-strand must run through crossing {ci} (edge {l0})");
            let start = if in0 { under[0] } else { under[1] };
            let mut slots = [0u32; 4];
            let mut over_in_at = None;
            for k in 0..4 {
                let (l, inc) = incoming(px(ci, (start + k) % 4));
                slots[k] = l;
                if k % 2 == 1 && inc {
                    assert!(over_in_at.is_none(), "over-strand orientation clash at crossing {ci}");
                    over_in_at = Some(k);
                }
            }
            let sign = match over_in_at.expect("over-strand has an incoming end") {
                3 => Sign::Positive,
                1 => Sign::Negative,
                _ => unreachable!(),
            };
            crossings.push(Crossing { sign, slots });
        }

        let mut vertices = Vec::with_capacity(self.vertices.len());
        for vi in 0..self.vertices.len() {
            let mut slots = [(0u32, SlotDir::Incoming); 3];
            for q in 0..3 {
                let (l, inc) = incoming(pv(vi, q));
                slots[q] = (l, if inc { SlotDir::Incoming } else { SlotDir::Outgoing });
            }
            vertices.push(TrivalentVertex { slots });
        }

        let intersections = self
            .intersections
            .iter()
            .map(|x| {
                // The builder promises end 0 -> end 1 orientation; the trace
                // must agree or the left-right sense would silently flip.
                assert_eq!(tail[&x.first], 0, "intersection edge traced against construction order");
                assert_eq!(tail[&x.second], 0, "intersection edge traced against construction order");
                Intersection { first: label[&x.first], second: label[&x.second] }
            })
            .collect();

        let mut d = PlanarDiagram {
            crossings,
            vertices,
            free_loops: self.free_loops,
            intersections,
            frame: None,
        };
        d.renormalize_labels();
        d
    }
}
