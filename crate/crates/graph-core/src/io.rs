use std::fmt::Write as _;

use crate::{Graph, GraphError};

/// Parses the edge-list format: a header `n m`, then `m` lines `u v`.
///
/// Lines starting with `#` and blank lines are skipped; CRLF is accepted.
/// Errors carry the 1-based line number.
pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text
        .split('\n')
        .enumerate()
        .map(|(i, l)| (i + 1, l.strip_suffix('\r').unwrap_or(l).trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or(GraphError::MissingHeader)?;
    let (n, m) = parse_pair(hline, header)?;
    let mut g = Graph::new(n);
    let mut found = 0;
    for (line, l) in lines {
        let (u, v) = parse_pair(line, l)?;
        for x in [u, v] {
            if x >= n {
                return Err(GraphError::OutOfRangeAt { line, vertex: x, n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop { line, vertex: u });
        }
        if !g.add_edge(u, v) {
            return Err(GraphError::DuplicateEdge { line, u, v });
        }
        found += 1;
    }
    if found != m {
        return Err(GraphError::EdgeCount { expected: m, found });
    }
    Ok(g)
}

fn parse_pair(line: usize, l: &str) -> Result<(usize, usize), GraphError> {
    let malformed = |reason: &str| GraphError::Malformed { line, reason: reason.to_string() };
    let mut it = l.split_whitespace();
    let a = it.next().ok_or_else(|| malformed("expected two integers"))?;
    let b = it.next().ok_or_else(|| malformed("expected two integers"))?;
    if it.next().is_some() {
        return Err(malformed("trailing tokens"));
    }
    let a = a.parse().map_err(|_| malformed(&format!("not a non-negative integer: {a:?}")))?;
    let b = b.parse().map_err(|_| malformed(&format!("not a non-negative integer: {b:?}")))?;
    Ok((a, b))
}

/// Canonical edge-list text: header, then edges `u < v` in lexicographic order.
pub fn to_edge_list(g: &Graph) -> String {
    let edges = g.edges();
    let mut out = format!("{} {}\n", g.n(), edges.len());
    for (u, v) in edges {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

/// Undirected DOT with node ids `v0..v{n-1}`; colored vertices get a label suffix.
pub fn to_dot(g: &Graph) -> String {
    let mut out = String::from("graph G {\n");
    for v in 0..g.n() {
        if g.is_colored() {
            let _ = writeln!(out, "  v{v} [label=\"v{v} c{}\"];", g.color(v));
        } else {
            let _ = writeln!(out, "  v{v};");
        }
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "  v{u} -- v{v};");
    }
    out.push_str("}\n");
    out
}
