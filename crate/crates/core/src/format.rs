//! Line-oriented text formats.
//!
//! Instance files:
//!
//! ```text
//! c <comment>
//! p tjisr <n> <m> <k>
//! e <u> <v>                 (m lines, 1-indexed)
//! s <v1> ... <vk>
//! t <v1> ... <vk>
//! g planar | g k3r <r>
//! r <v> : <w1> <w2> ...     (optional, all vertices or none)
//! ```
//!
//! Serialized instances start with `c orig <current> <original>` lines (both
//! 1-indexed) so kernels can be traced back; the parser honors them when
//! every vertex has one.

use std::fmt::Write as _;

use crate::error::{GraphError, ParseError, ParseErrorKind};
use crate::graph::{is_independent, Graph, GraphClass, Instance, Jump, ReconfSequence, RotationSystem, Vertex};

type Result<T> = std::result::Result<T, ParseError>;

fn err<T>(line: usize, kind: ParseErrorKind) -> Result<T> {
    Err(ParseError::new(line, kind))
}

fn malformed<T>(line: usize, text: &str) -> Result<T> {
    err(line, ParseErrorKind::Malformed(text.to_string()))
}

fn parse_num(line: usize, tok: &str, text: &str) -> Result<usize> {
    tok.parse::<usize>().or_else(|_| malformed(line, text))
}

/// Parses a 1-indexed vertex id into a 0-indexed one.
fn parse_vertex(line: usize, tok: &str, text: &str, n: usize) -> Result<Vertex> {
    let v = parse_num(line, tok, text)?;
    if v == 0 || v > n {
        return err(line, ParseErrorKind::VertexOutOfRange(v));
    }
    Ok(v - 1)
}

struct Header {
    n: usize,
    m: usize,
    k: usize,
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut header: Option<Header> = None;
    let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
    let mut edge_lines: Vec<usize> = Vec::new();
    let mut source: Option<(usize, Vec<Vertex>)> = None;
    let mut target: Option<(usize, Vec<Vertex>)> = None;
    let mut class: Option<GraphClass> = None;
    let mut rotations: Vec<Option<(usize, Vec<Vertex>)>> = Vec::new();
    let mut orig: Vec<Option<Vertex>> = Vec::new();
    let mut orig_lines: Vec<(usize, usize, usize)> = Vec::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        let toks: Vec<&str> = trimmed.split_whitespace().collect();
        if toks[0] == "c" {
            if toks.get(1) == Some(&"orig") {
                if toks.len() != 4 {
                    return malformed(line, trimmed);
                }
                let cur = parse_num(line, toks[2], trimmed)?;
                let org = parse_num(line, toks[3], trimmed)?;
                orig_lines.push((line, cur, org));
            }
            continue;
        }
        let Some(h) = header.as_ref() else {
            if toks[0] != "p" {
                return err(line, ParseErrorKind::MissingProblemLine);
            }
            if toks.len() != 5 || toks[1] != "tjisr" {
                return malformed(line, trimmed);
            }
            let n = parse_num(line, toks[2], trimmed)?;
            let m = parse_num(line, toks[3], trimmed)?;
            let k = parse_num(line, toks[4], trimmed)?;
            if k == 0 {
                return err(line, ParseErrorKind::Invalid("k must be at least 1".into()));
            }
            rotations = vec![None; n];
            orig = vec![None; n];
            header = Some(Header { n, m, k });
            continue;
        };
        let n = h.n;
        match toks[0] {
            "p" => return err(line, ParseErrorKind::DuplicateLine("p")),
            "e" => {
                if toks.len() != 3 {
                    return malformed(line, trimmed);
                }
                let u = parse_vertex(line, toks[1], trimmed, n)?;
                let v = parse_vertex(line, toks[2], trimmed, n)?;
                if u == v {
                    return err(line, ParseErrorKind::SelfLoop(u + 1));
                }
                edges.push((u, v));
                edge_lines.push(line);
            }
            "s" | "t" => {
                let which: &'static str = if toks[0] == "s" { "s" } else { "t" };
                let slot = if which == "s" { &mut source } else { &mut target };
                if slot.is_some() {
                    return err(line, ParseErrorKind::DuplicateLine(which));
                }
                let mut vs = Vec::with_capacity(toks.len() - 1);
                for tok in &toks[1..] {
                    vs.push(parse_vertex(line, tok, trimmed, n)?);
                }
                let mut sorted = vs.clone();
                sorted.sort_unstable();
                if sorted.windows(2).any(|w| w[0] == w[1]) {
                    return err(line, ParseErrorKind::DuplicateVertex(which));
                }
                if vs.len() != h.k {
                    return err(line, ParseErrorKind::TokenCount { which, expected: h.k, found: vs.len() });
                }
                *slot = Some((line, vs));
            }
            "g" => {
                if class.is_some() {
                    return err(line, ParseErrorKind::DuplicateLine("g"));
                }
                class = Some(match (toks.get(1), toks.len()) {
                    (Some(&"planar"), 2) => GraphClass::Planar,
                    (Some(&"k3r"), 3) => {
                        let r = parse_num(line, toks[2], trimmed)?;
                        if r == 0 {
                            return err(line, ParseErrorKind::Invalid("r must be at least 1".into()));
                        }
                        GraphClass::K3rMinorFree(r as u32)
                    }
                    (Some(other), _) => return err(line, ParseErrorKind::UnknownClass(other.to_string())),
                    (None, _) => return malformed(line, trimmed),
                });
            }
            "r" => {
                if toks.len() < 3 || toks[2] != ":" {
                    return malformed(line, trimmed);
                }
                let v = parse_vertex(line, toks[1], trimmed, n)?;
                if rotations[v].is_some() {
                    return err(line, ParseErrorKind::DuplicateLine("r"));
                }
                let mut ws = Vec::with_capacity(toks.len() - 3);
                for tok in &toks[3..] {
                    ws.push(parse_vertex(line, tok, trimmed, n)?);
                }
                rotations[v] = Some((line, ws));
            }
            _ => return malformed(line, trimmed),
        }
    }

    let end = last_line;
    let Some(h) = header else {
        return err(end, ParseErrorKind::MissingLine("p"));
    };
    if edges.len() != h.m {
        return err(end, ParseErrorKind::EdgeCount { expected: h.m, found: edges.len() });
    }
    let graph = {
        let mut seen = std::collections::HashSet::new();
        for (i, &(u, v)) in edges.iter().enumerate() {
            if !seen.insert((u.min(v), u.max(v))) {
                return err(edge_lines[i], ParseErrorKind::DuplicateEdge(u.min(v) + 1, u.max(v) + 1));
            }
        }
        Graph::from_edges(h.n, &edges).map_err(|e| ParseError::new(end, ParseErrorKind::Invalid(e.to_string())))?
    };
    let (s_line, source) = source.ok_or(ParseError::new(end, ParseErrorKind::MissingLine("s")))?;
    let (t_line, target) = target.ok_or(ParseError::new(end, ParseErrorKind::MissingLine("t")))?;
    let class = class.ok_or(ParseError::new(end, ParseErrorKind::MissingLine("g")))?;
    if !is_independent(&graph, &source).expect("validated ids") {
        return err(s_line, ParseErrorKind::SourceNotIndependent);
    }
    if !is_independent(&graph, &target).expect("validated ids") {
        return err(t_line, ParseErrorKind::TargetNotIndependent);
    }

    let given = rotations.iter().filter(|r| r.is_some()).count();
    let embedding = if given == 0 {
        None
    } else if given < h.n {
        return err(end, ParseErrorKind::RotationIncomplete);
    } else {
        let mut rot = Vec::with_capacity(h.n);
        for (v, entry) in rotations.into_iter().enumerate() {
            let (line, ws) = entry.unwrap();
            let mut sorted = ws.clone();
            sorted.sort_unstable();
            if sorted.as_slice() != graph.neighbors(v) {
                return err(line, ParseErrorKind::RotationInconsistent(v + 1));
            }
            rot.push(ws);
        }
        Some(RotationSystem::new(rot))
    };

    let inst = Instance::new(graph, &source, &target, class, embedding)
        .map_err(|e| ParseError::new(end, ParseErrorKind::Invalid(e.to_string())))?;
    if orig_lines.is_empty() {
        return Ok(inst);
    }
    for &(line, cur, org) in &orig_lines {
        if cur == 0 || cur > h.n || org == 0 {
            return err(line, ParseErrorKind::VertexOutOfRange(cur));
        }
        if orig[cur - 1].replace(org - 1).is_some() {
            return err(line, ParseErrorKind::DuplicateLine("c orig"));
        }
    }
    if orig.iter().any(|o| o.is_none()) {
        return err(end, ParseErrorKind::Invalid("`c orig` lines must cover every vertex".into()));
    }
    inst.with_original_ids(orig.into_iter().map(Option::unwrap).collect())
        .map_err(|e: GraphError| ParseError::new(end, ParseErrorKind::Invalid(e.to_string())))
}

pub fn write_instance(inst: &Instance) -> String {
    let mut out = String::new();
    for (cur, &org) in inst.original_ids().iter().enumerate() {
        let _ = writeln!(out, "c orig {} {}", cur + 1, org + 1);
    }
    let g = inst.graph();
    let _ = writeln!(out, "p tjisr {} {} {}", g.n(), g.edge_count(), inst.k());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    let list = |vs: &[Vertex]| vs.iter().map(|v| (v + 1).to_string()).collect::<Vec<_>>().join(" ");
    let _ = writeln!(out, "s {}", list(inst.source()));
    let _ = writeln!(out, "t {}", list(inst.target()));
    let _ = writeln!(out, "g {}", inst.class());
    if let Some(rot) = inst.embedding() {
        for (v, r) in rot.as_slice().iter().enumerate() {
            let _ = writeln!(out, "r {} : {}", v + 1, list(r).trim_end());
        }
    }
    out
}

/// Parses `col <v> <color>` lines into a per-vertex color vector and checks
/// that every vertex is colored and the coloring is proper.
pub fn parse_coloring(text: &str, g: &Graph) -> Result<Vec<usize>> {
    let mut colors: Vec<Option<usize>> = vec![None; g.n()];
    let mut last = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last = line;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with("c ") || trimmed == "c" {
            continue;
        }
        let toks: Vec<&str> = trimmed.split_whitespace().collect();
        if toks.len() != 3 || toks[0] != "col" {
            return malformed(line, trimmed);
        }
        let v = parse_vertex(line, toks[1], trimmed, g.n())?;
        let c = parse_num(line, toks[2], trimmed)?;
        if colors[v].replace(c).is_some() {
            return err(line, ParseErrorKind::DuplicateVertex("col"));
        }
    }
    if colors.iter().any(|c| c.is_none()) {
        return err(last, ParseErrorKind::Invalid("coloring must cover every vertex".into()));
    }
    let colors: Vec<usize> = colors.into_iter().map(Option::unwrap).collect();
    for (u, v) in g.edges() {
        if colors[u] == colors[v] {
            return err(last, ParseErrorKind::ImproperColoring(u + 1, v + 1));
        }
    }
    Ok(colors)
}

pub fn write_coloring(colors: &[usize]) -> String {
    colors.iter().enumerate().map(|(v, c)| format!("col {} {}\n", v + 1, c)).collect()
}

/// Parses `j <from> <to>` lines (1-indexed).
pub fn parse_sequence(text: &str, n: usize) -> Result<ReconfSequence> {
    let mut jumps = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        let toks: Vec<&str> = trimmed.split_whitespace().collect();
        if toks.len() != 3 || toks[0] != "j" {
            return malformed(line, trimmed);
        }
        let from = parse_vertex(line, toks[1], trimmed, n)?;
        let to = parse_vertex(line, toks[2], trimmed, n)?;
        jumps.push(Jump::new(from, to));
    }
    Ok(ReconfSequence::new(jumps))
}

pub fn write_sequence(seq: &ReconfSequence) -> String {
    seq.jumps.iter().map(|j| format!("j {} {}\n", j.from + 1, j.to + 1)).collect()
}
