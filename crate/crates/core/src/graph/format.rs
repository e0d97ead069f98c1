//! graph6, edgelist and dot text formats.
//!
//! graph6 follows the usual convention: a size prefix (`n + 63` for `n <= 62`,
//! otherwise `126` plus three 6-bit bytes), then the upper triangle read column
//! by column, six bits per byte, each byte offset by 63. Parsed graph6 input
//! gets vertex names `v1..vn`.

use std::fmt::Write as _;

use super::{Graph, VertexId};
use crate::error::{GraphError, ParseError};

const GRAPH6_HEADER: &str = ">>graph6<<";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseFormat {
    Graph6,
    Edgelist,
}

impl ParseFormat {
    /// Edgelist when the first meaningful line starts with `vertices:`, else graph6.
    pub fn detect(text: &[u8]) -> Self {
        let text = String::from_utf8_lossy(text);
        let first = text
            .lines()
            .map(str::trim)
            .find(|l| !l.is_empty() && !l.starts_with('#'));
        match first {
            Some(l) if l.starts_with("vertices:") => ParseFormat::Edgelist,
            _ if text.trim_start().starts_with('#') => ParseFormat::Edgelist,
            _ => ParseFormat::Graph6,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmitFormat {
    Graph6,
    Edgelist,
    Dot,
}

pub fn parse_graph(text: &[u8], format: ParseFormat) -> Result<Graph, ParseError> {
    match format {
        ParseFormat::Graph6 => parse_graph6(text),
        ParseFormat::Edgelist => parse_edgelist(text),
    }
}

pub fn emit_graph(g: &Graph, format: EmitFormat) -> String {
    match format {
        EmitFormat::Graph6 => emit_graph6(g),
        EmitFormat::Edgelist => emit_edgelist(g),
        EmitFormat::Dot => emit_dot(g),
    }
}

fn emit_graph6(g: &Graph) -> String {
    let n = g.vertex_count();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(g.adjacent_idx(i, j));
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

fn parse_graph6(text: &[u8]) -> Result<Graph, ParseError> {
    let mut body = trim_ascii(text);
    if body.starts_with(GRAPH6_HEADER.as_bytes()) {
        body = trim_ascii(&body[GRAPH6_HEADER.len()..]);
    }
    if body.is_empty() {
        return Err(ParseError::Empty);
    }
    for (offset, &byte) in body.iter().enumerate() {
        if !(63..=126).contains(&byte) {
            return Err(ParseError::OutOfRange { byte, offset });
        }
    }
    let (n, data) = if body[0] < 126 {
        ((body[0] - 63) as usize, &body[1..])
    } else {
        if body.len() < 4 || body[1] == 126 {
            return Err(ParseError::Header("unsupported graph6 size prefix".into()));
        }
        let n = body[1..4].iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
        (n, &body[4..])
    };
    if n > super::MAX_VERTICES {
        return Err(GraphError::TooLarge(n).into());
    }
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    if data.len() != expected {
        return Err(ParseError::Length { expected, found: data.len() });
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = data[k / 6] - 63;
            if byte & (1 << (5 - k % 6)) != 0 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    let names: Vec<VertexId> = (1..=n).map(|i| VertexId::new(format!("v{i}")).expect("valid")).collect();
    Ok(Graph::from_indexed(names, edges))
}

fn trim_ascii(b: &[u8]) -> &[u8] {
    let start = b.iter().position(|c| !c.is_ascii_whitespace()).unwrap_or(b.len());
    let end = b.iter().rposition(|c| !c.is_ascii_whitespace()).map_or(start, |e| e + 1);
    &b[start..end]
}

fn parse_edgelist(text: &[u8]) -> Result<Graph, ParseError> {
    let text = std::str::from_utf8(text).map_err(|e| ParseError::Header(e.to_string()))?;
    let mut vertices: Option<Vec<VertexId>> = None;
    let mut edges = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| ParseError::Line { line: lineno + 1, msg };
        match &vertices {
            None => {
                let rest = line
                    .strip_prefix("vertices:")
                    .ok_or_else(|| ParseError::Header(format!("line {}: expected \"vertices:\"", lineno + 1)))?;
                let vs = rest
                    .split_whitespace()
                    .map(VertexId::user)
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| err(e.to_string()))?;
                vertices = Some(vs);
            }
            Some(vs) => {
                let toks: Vec<&str> = line.split_whitespace().collect();
                if toks.len() != 2 {
                    return Err(err(format!("expected two endpoints, got {}", toks.len())));
                }
                let u = VertexId::user(toks[0]).map_err(|e| err(e.to_string()))?;
                let v = VertexId::user(toks[1]).map_err(|e| err(e.to_string()))?;
                for w in [&u, &v] {
                    if !vs.contains(w) {
                        return Err(err(format!("edge refers to undeclared vertex {w}")));
                    }
                }
                if u == v {
                    return Err(err(format!("loop at {u}")));
                }
                edges.push((u, v));
            }
        }
    }
    let vertices = vertices.ok_or(ParseError::Empty)?;
    Ok(Graph::new(vertices, edges)?)
}

fn emit_edgelist(g: &Graph) -> String {
    let mut out = String::from("vertices:");
    for v in g.vertices() {
        out.push(' ');
        out.push_str(v.as_str());
    }
    out.push('\n');
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

fn emit_dot(g: &Graph) -> String {
    let mut out = String::from("graph G {\n");
    for v in g.vertices() {
        let _ = writeln!(out, "  \"{v}\";");
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "  \"{u}\" -- \"{v}\";");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, discrete, is_isomorphic};

    /// Straightforward reference encoder: builds the full bit string first,
    /// then chunks it. Shares nothing with `emit_graph6`.
    fn reference_graph6(n: usize, adjacent: impl Fn(usize, usize) -> bool) -> String {
        assert!(n <= 62);
        let mut bitstr = String::new();
        for j in 0..n {
            for i in 0..j {
                bitstr.push(if adjacent(i, j) { '1' } else { '0' });
            }
        }
        while bitstr.len() % 6 != 0 {
            bitstr.push('0');
        }
        let mut out = String::new();
        out.push(char::from(63 + n as u8));
        for chunk in bitstr.as_bytes().chunks(6) {
            let v = u8::from_str_radix(std::str::from_utf8(chunk).unwrap(), 2).unwrap();
            out.push(char::from(63 + v));
        }
        out
    }

    #[test]
    fn small_encodings() {
        assert_eq!(reference_graph6(1, |_, _| false), "@");
        assert_eq!(reference_graph6(2, |_, _| true), "A_");
        assert_eq!(reference_graph6(2, |_, _| false), "A?");
        assert_eq!(emit_graph(&complete(1), EmitFormat::Graph6), "@");
        assert_eq!(emit_graph(&complete(2), EmitFormat::Graph6), "A_");
        assert_eq!(emit_graph(&discrete(2), EmitFormat::Graph6), "A?");
    }

    #[test]
    fn matches_reference_on_cycles() {
        for n in 3..=9 {
            let g = cycle(n);
            assert_eq!(emit_graph6(&g), reference_graph6(n, |i, j| g.adjacent_idx(i, j)));
        }
    }

    #[test]
    fn round_trip_c5() {
        let c5 = cycle(5);
        let text = emit_graph(&c5, EmitFormat::Graph6);
        let back = parse_graph(text.as_bytes(), ParseFormat::Graph6).unwrap();
        assert!(is_isomorphic(&back, &c5).is_some());
        let with_header = format!(">>graph6<<{text}\n");
        assert_eq!(parse_graph(with_header.as_bytes(), ParseFormat::Graph6).unwrap(), back);
    }

    #[test]
    fn large_prefix_round_trip() {
        let g = cycle(70);
        let text = emit_graph6(&g);
        assert_eq!(text.as_bytes()[0], 126);
        let back = parse_graph6(text.as_bytes()).unwrap();
        assert_eq!(back.vertex_count(), 70);
        assert_eq!(back.edge_count(), 70);
    }

    #[test]
    fn graph6_errors() {
        assert_eq!(parse_graph6(b""), Err(ParseError::Empty));
        assert!(parse_graph6(b"A_ \n").is_ok());
        assert!(matches!(parse_graph6(b"A\x01"), Err(ParseError::OutOfRange { .. })));
        assert!(matches!(parse_graph6(b"C"), Err(ParseError::Length { expected: 1, found: 0 })));
        assert!(matches!(parse_graph6(b"A__"), Err(ParseError::Length { .. })));
    }

    #[test]
    fn edgelist_round_trip_and_errors() {
        let text = "# a path\nvertices: a b c\na b # first\nb c\n";
        let g = parse_graph(text.as_bytes(), ParseFormat::Edgelist).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert_eq!(emit_graph(&g, EmitFormat::Edgelist), "vertices: a b c\na b\nb c\n");
        assert_eq!(ParseFormat::detect(text.as_bytes()), ParseFormat::Edgelist);
        assert_eq!(ParseFormat::detect(b"Dhc\n"), ParseFormat::Graph6);

        assert!(matches!(
            parse_graph(b"vertices: a b\na c\n", ParseFormat::Edgelist),
            Err(ParseError::Line { line: 2, .. })
        ));
        assert!(matches!(parse_graph(b"a b\n", ParseFormat::Edgelist), Err(ParseError::Header(_))));
        assert!(matches!(parse_graph(b"vertices: a\na a\n", ParseFormat::Edgelist), Err(ParseError::Line { .. })));
        assert!(matches!(parse_graph(b"vertices: $a\n", ParseFormat::Edgelist), Err(ParseError::Line { .. })));
    }

    #[test]
    fn dot_output() {
        let g = Graph::from_user(&["a", "b"], &[("a", "b")]).unwrap();
        assert_eq!(emit_graph(&g, EmitFormat::Dot), "graph G {\n  \"a\";\n  \"b\";\n  \"a\" -- \"b\";\n}\n");
    }
}
