//! Diagram text format.
//!
//! One item per line, `#` starts a comment:
//!
//! ```text
//! Xp a b c d    positive crossing, slots CCW from the incoming under-strand
//! Xm a b c d    negative crossing
//! V 3+1 7-1 2+1 trivalent vertex, CCW; + = outgoing, - = incoming
//! U n           n free loops
//! I a b         unresolved intersection; b crosses a left to right
//! ```
//!
//! A comment of the form `# plat: cf=2,1,1,2 tunnels=upper@1-2,lower@2-3`
//! records how a generated diagram was built so later stages can rebuild
//! the layout; it round-trips through parse and emit.

use super::{
    Crossing, Intersection, PlanarDiagram, PlatFrame, Sign, SlotDir, TrivalentVertex, TunnelSide,
    TunnelSpec,
};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {msg}")]
pub struct DiagramParseError {
    pub line: usize,
    pub msg: String,
}

fn err(line: usize, msg: impl Into<String>) -> DiagramParseError {
    DiagramParseError { line, msg: msg.into() }
}

pub fn parse_diagram(text: &str) -> Result<PlanarDiagram, DiagramParseError> {
    let mut d = PlanarDiagram::default();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let (content, comment) = match raw.find('#') {
            Some(p) => (&raw[..p], Some(raw[p + 1..].trim())),
            None => (raw, None),
        };
        if let Some(c) = comment {
            if let Some(rest) = c.strip_prefix("plat:") {
                d.frame = Some(parse_frame(rest.trim(), line_no)?);
            }
        }
        let line = content.trim();
        if line.is_empty() {
            continue;
        }
        let mut tok = line.split_whitespace();
        let head = tok.next().unwrap();
        let rest: Vec<&str> = tok.collect();
        match head {
            "Xp" | "Xm" => {
                if rest.len() != 4 {
                    return Err(err(line_no, format!("expected 4 labels after {head}, found {}", rest.len())));
                }
                let mut slots = [0u32; 4];
                for (i, t) in rest.iter().enumerate() {
                    slots[i] = parse_label(t, line_no)?;
                }
                let sign = if head == "Xp" { Sign::Positive } else { Sign::Negative };
                d.crossings.push(Crossing { sign, slots });
            }
            "V" => {
                if rest.len() != 3 {
                    return Err(err(line_no, format!("expected 3 slots after V, found {}", rest.len())));
                }
                let mut slots = [(0u32, SlotDir::Incoming); 3];
                for (i, t) in rest.iter().enumerate() {
                    slots[i] = parse_vertex_slot(t, line_no)?;
                }
                d.vertices.push(TrivalentVertex { slots });
            }
            "U" => {
                if rest.len() != 1 {
                    return Err(err(line_no, "expected one count after U"));
                }
                let n: usize = rest[0]
                    .parse()
                    .map_err(|e| err(line_no, format!("bad free loop count `{}`: {e}", rest[0])))?;
                d.free_loops += n;
            }
            "I" => {
                if rest.len() != 2 {
                    return Err(err(line_no, "expected 2 labels after I"));
                }
                d.intersections.push(Intersection {
                    first: parse_label(rest[0], line_no)?,
                    second: parse_label(rest[1], line_no)?,
                });
            }
            other => return Err(err(line_no, format!("unknown item `{other}`"))),
        }
    }
    d.renormalize_labels();
    Ok(d)
}

fn parse_label(t: &str, line: usize) -> Result<u32, DiagramParseError> {
    let v: u32 = t.parse().map_err(|e| err(line, format!("bad edge label `{t}`: {e}")))?;
    if v == 0 {
        return Err(err(line, "edge labels are positive"));
    }
    Ok(v)
}

fn parse_vertex_slot(t: &str, line: usize) -> Result<(u32, SlotDir), DiagramParseError> {
    let (dir, split) = if let Some(p) = t.find('+') {
        (SlotDir::Outgoing, p)
    } else if let Some(p) = t.find('-') {
        (SlotDir::Incoming, p)
    } else {
        return Err(err(line, format!("vertex slot `{t}` needs an orientation, like `3+1` or `3-1`")));
    };
    let label = parse_label(&t[..split], line)?;
    if &t[split + 1..] != "1" {
        return Err(err(line, format!("vertex slot `{t}` must end in 1 (exponents are always 1)")));
    }
    Ok((label, dir))
}

fn parse_frame(s: &str, line: usize) -> Result<PlatFrame, DiagramParseError> {
    let mut cf: Option<Vec<i64>> = None;
    let mut tunnels = Vec::new();
    for field in s.split_whitespace() {
        if let Some(v) = field.strip_prefix("cf=") {
            let terms: Result<Vec<i64>, _> = v.split(',').map(|t| t.parse::<i64>()).collect();
            cf = Some(terms.map_err(|e| err(line, format!("bad cf in plat comment: {e}")))?);
        } else if let Some(v) = field.strip_prefix("tunnels=") {
            for item in v.split(',') {
                tunnels.push(parse_tunnel(item, line)?);
            }
        } else {
            return Err(err(line, format!("unknown plat comment field `{field}`")));
        }
    }
    let cf = cf.ok_or_else(|| err(line, "plat comment is missing cf="))?;
    Ok(PlatFrame { cf, tunnels })
}

fn parse_tunnel(item: &str, line: usize) -> Result<TunnelSpec, DiagramParseError> {
    let (side_s, pos_s) = item
        .split_once('@')
        .ok_or_else(|| err(line, format!("tunnel `{item}` must look like upper@2-3")))?;
    let side = match side_s {
        "upper" => TunnelSide::Upper,
        "lower" => TunnelSide::Lower,
        other => return Err(err(line, format!("unknown tunnel side `{other}`"))),
    };
    let (a, b) = pos_s
        .split_once('-')
        .ok_or_else(|| err(line, format!("tunnel positions `{pos_s}` must look like 2-3")))?;
    let pa: u8 = a.parse().map_err(|e| err(line, format!("bad position `{a}`: {e}")))?;
    let pb: u8 = b.parse().map_err(|e| err(line, format!("bad position `{b}`: {e}")))?;
    Ok(TunnelSpec { side, positions: (pa, pb) })
}

pub fn emit_diagram(d: &PlanarDiagram) -> String {
    let mut out = String::new();
    if let Some(frame) = &d.frame {
        out.push_str(&format!("# plat: cf={}", join_i64(&frame.cf)));
        if !frame.tunnels.is_empty() {
            let ts: Vec<String> = frame
                .tunnels
                .iter()
                .map(|t| {
                    let side = match t.side {
                        TunnelSide::Upper => "upper",
                        TunnelSide::Lower => "lower",
                    };
                    format!("{side}@{}-{}", t.positions.0, t.positions.1)
                })
                .collect();
            out.push_str(&format!(" tunnels={}", ts.join(",")));
        }
        out.push('\n');
    }
    for c in &d.crossings {
        let head = match c.sign {
            Sign::Positive => "Xp",
            Sign::Negative => "Xm",
        };
        out.push_str(&format!(
            "{head} {} {} {} {}\n",
            c.slots[0], c.slots[1], c.slots[2], c.slots[3]
        ));
    }
    for v in &d.vertices {
        let s: Vec<String> = v
            .slots
            .iter()
            .map(|&(l, dir)| {
                format!("{l}{}1", if dir == SlotDir::Outgoing { '+' } else { '-' })
            })
            .collect();
        out.push_str(&format!("V {}\n", s.join(" ")));
    }
    if d.free_loops > 0 {
        out.push_str(&format!("U {}\n", d.free_loops));
    }
    for x in &d.intersections {
        out.push_str(&format!("I {} {}\n", x.first, x.second));
    }
    out
}

fn join_i64(v: &[i64]) -> String {
    v.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(",")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknot_round_trips() {
        let d = parse_diagram("U 1\n").unwrap();
        assert_eq!(d.free_loops, 1);
        assert_eq!(emit_diagram(&d), "U 1\n");
    }

    #[test]
    fn trefoil_pd_round_trips() {
        let text = "Xm 1 4 2 5\nXm 3 6 4 1\nXm 5 2 6 3\n";
        let d = parse_diagram(text).unwrap();
        assert!(d.validate().ok(), "{:?}", d.validate().violations);
        assert_eq!(emit_diagram(&d), text);
        assert_eq!(parse_diagram(&emit_diagram(&d)).unwrap(), d);
    }

    #[test]
    fn malformed_crossing_reports_line() {
        let e = parse_diagram("U 1\nXp 1 2 3\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(e.msg.contains("expected 4 labels"), "{}", e.msg);
    }

    #[test]
    fn vertex_slots_round_trip() {
        let text = "V 1+1 2-1 3+1\nV 1-1 3-1 2+1\n";
        let d = parse_diagram(text).unwrap();
        assert_eq!(d.vertices.len(), 2);
        assert_eq!(emit_diagram(&d), text);
        // theta-curve structure: 3 edges, 2 vertices, valid orientations
        assert!(d.validate().ok(), "{:?}", d.validate().violations);
    }

    #[test]
    fn frame_comment_round_trips() {
        let text = "# plat: cf=2,1,1,2 tunnels=upper@1-2,lower@2-3\nU 1\n";
        let d = parse_diagram(text).unwrap();
        let f = d.frame.clone().unwrap();
        assert_eq!(f.cf, vec![2, 1, 1, 2]);
        assert_eq!(f.tunnels.len(), 2);
        assert_eq!(parse_diagram(&emit_diagram(&d)).unwrap(), d);
    }

    #[test]
    fn labels_renormalize_on_parse() {
        let d = parse_diagram("Xp 10 10 20 20\n").unwrap();
        assert_eq!(d.crossings[0].slots, [1, 1, 2, 2]);
    }
}
