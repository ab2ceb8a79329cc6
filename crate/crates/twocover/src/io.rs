//! Line-oriented text formats for graphs, graph maps, subgraphs, and loop
//! lists. `#` starts a comment; blank lines are ignored. Writers emit the
//! canonical form, and `parse(write(x)) == x` bit-exactly.
//!
//! Graph:
//! ```text
//! V <n>
//! E <a> <b>      # undirected; E a a is a loop; duplicates ignored
//! ```
//!
//! Graph map (self-contained): source graph section, target graph section,
//! `M <n_src> <n_tgt>`, then one `F <src> <tgt>` line per source vertex.
//! The graph sections may be omitted when both graphs are supplied from
//! context (e.g. an involution on an already-loaded graph), leaving just the
//! `M`/`F` core.
//!
//! Subgraph: `V <n>` (ambient vertex count), `W <v>` membership lines,
//! `E <a> <b>` edge lines (edge endpoints are implicitly members).
//!
//! Loops: one `P <v0> <v1> ... <vk>` line per closed path.

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphMap, Subgraph};
use crate::homotopy::Path;

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

/// Tokenized non-comment lines with their 1-based line numbers.
fn tokenize(text: &str) -> Vec<(usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("")))
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| (i, l.split_whitespace().collect()))
        .collect()
}

fn parse_num(line: usize, tok: &str) -> Result<usize> {
    tok.parse().map_err(|_| parse_err(line, format!("expected a number, got {tok:?}")))
}

struct GraphAccum {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl GraphAccum {
    fn finish(self, line: usize) -> Result<Graph> {
        Graph::new(self.n, &self.edges).map_err(|e| parse_err(line, e.to_string()))
    }
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut accum: Option<GraphAccum> = None;
    let mut last = 0;
    for (line, toks) in tokenize(text) {
        last = line;
        match toks[0] {
            "V" => {
                if accum.is_some() {
                    return Err(parse_err(line, "second V header in a graph file"));
                }
                if toks.len() != 2 {
                    return Err(parse_err(line, "V header takes one count"));
                }
                accum = Some(GraphAccum { n: parse_num(line, toks[1])?, edges: Vec::new() });
            }
            "E" => {
                let accum =
                    accum.as_mut().ok_or_else(|| parse_err(line, "E before V header"))?;
                if toks.len() != 3 {
                    return Err(parse_err(line, "E takes two endpoints"));
                }
                accum.edges.push((parse_num(line, toks[1])?, parse_num(line, toks[2])?));
            }
            other => return Err(parse_err(line, format!("unexpected directive {other:?}"))),
        }
    }
    accum.ok_or_else(|| parse_err(last + 1, "missing V header"))?.finish(last)
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("V {}\n", g.vertex_count());
    for (a, b) in g.edges() {
        out.push_str(&format!("E {a} {b}\n"));
    }
    out
}

/// Parse a graph map. With `context = Some((source, target))` the file may be
/// the bare `M`/`F` core; otherwise it must carry both graph sections.
pub fn parse_map(text: &str, context: Option<(&Graph, &Graph)>) -> Result<GraphMap> {
    let mut sections: Vec<GraphAccum> = Vec::new();
    let mut header: Option<(usize, usize)> = None;
    let mut assignment: Vec<(usize, usize)> = Vec::new();
    let mut last = 0;
    for (line, toks) in tokenize(text) {
        last = line;
        match toks[0] {
            "V" => {
                if header.is_some() {
                    return Err(parse_err(line, "graph sections must precede the M header"));
                }
                if sections.len() == 2 {
                    return Err(parse_err(line, "a map file has at most two graph sections"));
                }
                if toks.len() != 2 {
                    return Err(parse_err(line, "V header takes one count"));
                }
                sections.push(GraphAccum { n: parse_num(line, toks[1])?, edges: Vec::new() });
            }
            "E" => {
                let accum =
                    sections.last_mut().ok_or_else(|| parse_err(line, "E before V header"))?;
                if toks.len() != 3 {
                    return Err(parse_err(line, "E takes two endpoints"));
                }
                accum.edges.push((parse_num(line, toks[1])?, parse_num(line, toks[2])?));
            }
            "M" => {
                if header.is_some() {
                    return Err(parse_err(line, "second M header"));
                }
                if toks.len() != 3 {
                    return Err(parse_err(line, "M takes source and target vertex counts"));
                }
                header = Some((parse_num(line, toks[1])?, parse_num(line, toks[2])?));
            }
            "F" => {
                if header.is_none() {
                    return Err(parse_err(line, "F before M header"));
                }
                if toks.len() != 3 {
                    return Err(parse_err(line, "F takes source and target vertex"));
                }
                assignment.push((parse_num(line, toks[1])?, parse_num(line, toks[2])?));
            }
            other => return Err(parse_err(line, format!("unexpected directive {other:?}"))),
        }
    }
    let (n_src, n_tgt) = header.ok_or_else(|| parse_err(last + 1, "missing M header"))?;
    let (source, target) = match (sections.len(), context) {
        (2, _) => {
            let mut it = sections.into_iter();
            (it.next().unwrap().finish(last)?, it.next().unwrap().finish(last)?)
        }
        (0, Some((s, t))) => (s.clone(), t.clone()),
        (0, None) => {
            return Err(parse_err(last, "map file carries no graph sections and no context was supplied"))
        }
        _ => return Err(parse_err(last, "map file needs either both graph sections or neither")),
    };
    if source.vertex_count() != n_src || target.vertex_count() != n_tgt {
        return Err(parse_err(last, format!(
            "M header says {n_src} -> {n_tgt}, graphs have {} and {} vertices",
            source.vertex_count(),
            target.vertex_count()
        )));
    }
    let mut assign = vec![usize::MAX; n_src];
    for (s, t) in assignment {
        if s >= n_src {
            return Err(parse_err(last, format!("F line for out-of-range source vertex {s}")));
        }
        assign[s] = t;
    }
    if let Some(v) = assign.iter().position(|&x| x == usize::MAX) {
        return Err(parse_err(last, format!("no F line for source vertex {v}")));
    }
    GraphMap::new(source, target, assign).map_err(|e| parse_err(last, e.to_string()))
}

pub fn write_map(m: &GraphMap) -> String {
    let mut out = write_graph(m.source());
    out.push_str(&write_graph(m.target()));
    out.push_str(&format!("M {} {}\n", m.source().vertex_count(), m.target().vertex_count()));
    for v in 0..m.source().vertex_count() {
        out.push_str(&format!("F {} {}\n", v, m.apply(v)));
    }
    out
}

/// Bare `M`/`F` form, for maps whose graphs are known from context.
pub fn write_map_core(m: &GraphMap) -> String {
    let mut out = format!("M {} {}\n", m.source().vertex_count(), m.target().vertex_count());
    for v in 0..m.source().vertex_count() {
        out.push_str(&format!("F {} {}\n", v, m.apply(v)));
    }
    out
}

pub fn parse_subgraph(text: &str, ambient: &Graph) -> Result<Subgraph> {
    let mut vertices: Vec<usize> = Vec::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut seen_v = false;
    let mut last = 0;
    for (line, toks) in tokenize(text) {
        last = line;
        match toks[0] {
            "V" => {
                if seen_v {
                    return Err(parse_err(line, "second V header"));
                }
                seen_v = true;
                if toks.len() != 2 || parse_num(line, toks[1])? != ambient.vertex_count() {
                    return Err(parse_err(line, format!(
                        "subgraph V header must match the ambient vertex count {}",
                        ambient.vertex_count()
                    )));
                }
            }
            "W" => {
                if toks.len() != 2 {
                    return Err(parse_err(line, "W takes one vertex"));
                }
                vertices.push(parse_num(line, toks[1])?);
            }
            "E" => {
                if toks.len() != 3 {
                    return Err(parse_err(line, "E takes two endpoints"));
                }
                edges.push((parse_num(line, toks[1])?, parse_num(line, toks[2])?));
            }
            other => return Err(parse_err(line, format!("unexpected directive {other:?}"))),
        }
    }
    if !seen_v {
        return Err(parse_err(last + 1, "missing V header"));
    }
    Subgraph::new(ambient, vertices, edges).map_err(|e| parse_err(last, e.to_string()))
}

pub fn write_subgraph(s: &Subgraph, ambient: &Graph) -> String {
    let mut out = format!("V {}\n", ambient.vertex_count());
    for &v in &s.vertices {
        out.push_str(&format!("W {v}\n"));
    }
    for &(a, b) in &s.edges {
        out.push_str(&format!("E {a} {b}\n"));
    }
    out
}

pub fn parse_loops(text: &str, g: &Graph) -> Result<Vec<Path>> {
    let mut out = Vec::new();
    for (line, toks) in tokenize(text) {
        if toks[0] != "P" {
            return Err(parse_err(line, format!("unexpected directive {:?}", toks[0])));
        }
        let verts: Vec<usize> =
            toks[1..].iter().map(|t| parse_num(line, t)).collect::<Result<_>>()?;
        if verts.is_empty() {
            return Err(parse_err(line, "P takes at least one vertex"));
        }
        out.push(Path::new(g, verts).map_err(|e| parse_err(line, e.to_string()))?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_round_trip() {
        let g = Graph::new(4, &[(0, 1), (2, 2), (1, 3)]).unwrap();
        let text = write_graph(&g);
        assert_eq!(parse_graph(&text).unwrap(), g);
        assert_eq!(write_graph(&parse_graph(&text).unwrap()), text);
    }

    #[test]
    fn graph_parse_comments_and_duplicates() {
        let g = parse_graph("# a square\nV 4\nE 0 1\nE 1 0\n\nE 1 2\nE 2 3 # last\nE 3 0\n").unwrap();
        assert_eq!(g, Graph::cycle(4).unwrap());
        assert!(parse_graph("E 0 1\n").is_err());
        assert!(parse_graph("V 2\nE 0 5\n").is_err());
        assert!(parse_graph("").is_err());
    }

    #[test]
    fn map_round_trip() {
        let c6 = Graph::cycle(6).unwrap();
        let c3 = Graph::cycle(3).unwrap();
        let m = GraphMap::new(c6, c3, vec![0, 1, 2, 0, 1, 2]).unwrap();
        let text = write_map(&m);
        assert_eq!(parse_map(&text, None).unwrap(), m);
        assert_eq!(write_map(&parse_map(&text, None).unwrap()), text);
        // bare core with context
        let core = write_map_core(&m);
        let m2 = parse_map(&core, Some((m.source(), m.target()))).unwrap();
        assert_eq!(m2, m);
        assert!(parse_map(&core, None).is_err());
    }

    #[test]
    fn subgraph_round_trip() {
        let c4 = Graph::cycle(4).unwrap();
        let s = Subgraph::new(&c4, [3], [(0, 1)]).unwrap();
        let text = write_subgraph(&s, &c4);
        assert_eq!(parse_subgraph(&text, &c4).unwrap(), s);
    }

    #[test]
    fn loops_file() {
        let c3 = Graph::cycle(3).unwrap();
        let loops = parse_loops("P 0 1 2 0\nP 0\n", &c3).unwrap();
        assert_eq!(loops.len(), 2);
        assert_eq!(loops[0].len(), 3);
        assert!(parse_loops("P 0 2 1\nQ\n", &c3).is_err());
        assert!(parse_loops("P 0 0\n", &c3).is_err()); // no loop edge at 0
    }
}
