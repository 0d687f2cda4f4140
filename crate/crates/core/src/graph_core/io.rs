//! Line-oriented text formats (1-indexed, DIMACS style).
//!
//! ```text
//! c comment
//! p edge <n> <m>        e <u> <v>
//! p multi <k> <m>       e <u> <v> <mult>
//! p part <n> <k>        <vertex list>  ...  [x <vertex list>]
//! ```

use crate::error::{Error, Result};

use super::graph::Graph;
use super::multigraph::Multigraph2;
use super::partition::Partition;
use super::tiling::{Placement, Shape, Tiling};

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Non-comment, non-blank lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let toks: Vec<&str> = l.split_whitespace().collect();
        if toks.is_empty() || toks[0] == "c" {
            None
        } else {
            Some((i + 1, toks))
        }
    })
}

fn num(line: usize, tok: &str) -> Result<usize> {
    tok.parse().map_err(|_| perr(line, format!("expected a non-negative integer, found {tok:?}")))
}

fn vertex(line: usize, tok: &str, n: usize) -> Result<usize> {
    let v = num(line, tok)?;
    if v == 0 || v > n {
        return Err(perr(line, format!("vertex index {v} out of range 1..={n}")));
    }
    Ok(v - 1)
}

fn header<'a>(lines: &mut impl Iterator<Item = (usize, Vec<&'a str>)>, kind: &str) -> Result<(usize, usize, usize)> {
    let (line, toks) = lines.next().ok_or_else(|| perr(0, "missing header"))?;
    if toks.len() != 4 || toks[0] != "p" || toks[1] != kind {
        return Err(perr(line, format!("malformed header, expected `p {kind} <a> <b>`")));
    }
    Ok((line, num(line, toks[2])?, num(line, toks[3])?))
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = content_lines(text);
    let (hline, n, m) = header(&mut lines, "edge")?;
    let mut g = Graph::new(n);
    let mut seen = 0;
    for (line, toks) in lines {
        if toks[0] != "e" || toks.len() != 3 {
            return Err(perr(line, "expected `e <u> <v>`"));
        }
        let u = vertex(line, toks[1], n)?;
        let v = vertex(line, toks[2], n)?;
        if u == v {
            return Err(perr(line, format!("loop edge at vertex {}", u + 1)));
        }
        if g.has_edge(u, v) {
            return Err(perr(line, format!("duplicate edge {} {}", u + 1, v + 1)));
        }
        g.add_edge_unchecked(u, v);
        seen += 1;
    }
    if seen != m {
        return Err(perr(hline, format!("header declares {m} edges, found {seen}")));
    }
    Ok(g)
}

pub fn serialize_graph(g: &Graph) -> String {
    let edges = g.edges();
    let mut out = format!("p edge {} {}\n", g.n(), edges.len());
    for (u, v) in edges {
        out.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    out
}

pub fn parse_multigraph(text: &str) -> Result<Multigraph2> {
    let mut lines = content_lines(text);
    let (hline, k, m) = header(&mut lines, "multi")?;
    let mut r = Multigraph2::new(k);
    let mut seen = 0;
    for (line, toks) in lines {
        if toks[0] != "e" || toks.len() != 4 {
            return Err(perr(line, "expected `e <u> <v> <mult>`"));
        }
        let u = vertex(line, toks[1], k)?;
        let v = vertex(line, toks[2], k)?;
        let mult = num(line, toks[3])?;
        if !(1..=2).contains(&mult) {
            return Err(perr(line, format!("multiplicity {mult} not in {{1, 2}}")));
        }
        if u == v {
            return Err(perr(line, format!("loop edge at vertex {}", u + 1)));
        }
        if r.mult(u, v) != 0 {
            return Err(perr(line, format!("duplicate edge {} {}", u + 1, v + 1)));
        }
        r.set(u, v, mult as u8).map_err(|e| perr(line, e.to_string()))?;
        seen += 1;
    }
    if seen != m {
        return Err(perr(hline, format!("header declares {m} edges, found {seen}")));
    }
    Ok(r)
}

pub fn serialize_multigraph(r: &Multigraph2) -> String {
    let edges = r.edges();
    let mut out = format!("p multi {} {}\n", r.k(), edges.len());
    for (u, v, m) in edges {
        out.push_str(&format!("e {} {} {}\n", u + 1, v + 1, m));
    }
    out
}

pub fn parse_partition(text: &str) -> Result<Partition> {
    let mut lines = content_lines(text);
    let (hline, n, k) = header(&mut lines, "part")?;
    let mut clusters = Vec::with_capacity(k);
    let mut exceptional = Vec::new();
    let mut saw_exceptional = false;
    for (line, toks) in lines {
        if saw_exceptional {
            return Err(perr(line, "the `x` line must be last"));
        }
        if toks[0] == "x" {
            saw_exceptional = true;
            for t in &toks[1..] {
                exceptional.push(vertex(line, t, n)?);
            }
        } else {
            let cluster = toks.iter().map(|t| vertex(line, t, n)).collect::<Result<Vec<_>>>()?;
            clusters.push(cluster);
        }
    }
    if clusters.len() != k {
        return Err(perr(hline, format!("header declares {k} clusters, found {}", clusters.len())));
    }
    Partition::new(n, clusters, exceptional)
}

pub fn serialize_partition(p: &Partition) -> String {
    let join = |vs: &[usize]| vs.iter().map(|v| (v + 1).to_string()).collect::<Vec<_>>().join(" ");
    let mut out = format!("p part {} {}\n", p.n(), p.k());
    for c in p.clusters() {
        out.push_str(&join(c));
        out.push('\n');
    }
    if !p.exceptional().is_empty() {
        out.push_str("x ");
        out.push_str(&join(p.exceptional()));
        out.push('\n');
    }
    out
}

/// Reads the placement-per-line text written by `Tiling::to_text`. Gadget
/// lines (`Q1`, `Q2`) carry no internal structure there and are rejected.
pub fn parse_tiling(text: &str, n: usize) -> Result<Tiling> {
    let mut t = Tiling::new();
    for (line, toks) in content_lines(text) {
        let shape = Shape::from_tag(toks[0]).ok_or_else(|| perr(line, format!("unknown shape {:?}", toks[0])))?;
        if matches!(shape, Shape::Q1 | Shape::Q2) {
            return Err(perr(line, "gadget placements cannot be read back"));
        }
        let vertices = toks[1..].iter().map(|tok| vertex(line, tok, n)).collect::<Result<Vec<_>>>()?;
        t.push(Placement::Simple { shape, vertices });
    }
    Ok(t)
}
