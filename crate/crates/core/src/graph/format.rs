//! Text format:
//!
//! ```text
//! 8vx-graph 1
//! vertices N edges M embedding {none|rotation|bipartite}
//! edge <id> <u> <label_u> <v> <label_v>      (M lines, ids 0..M-1)
//! bipartition L: <ids...>                    (optional)
//! ```
//!
//! Blank lines and lines starting with `#` are ignored.

use std::fmt::Write as _;

use super::{Edge, EmbeddingKind, GraphError, LabeledGraph};

const MAGIC: &str = "8vx-graph 1";

fn err(line: usize, message: impl Into<String>) -> GraphError {
    GraphError::Parse {
        line,
        message: message.into(),
    }
}

fn parse_num<T: std::str::FromStr>(
    tok: Option<&str>,
    line: usize,
    what: &str,
) -> Result<T, GraphError> {
    let tok = tok.ok_or_else(|| err(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| err(line, format!("malformed {what} `{tok}`")))
}

pub fn parse_graph(text: &str) -> Result<LabeledGraph, GraphError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (ln, magic) = lines
        .next()
        .ok_or_else(|| err(1, "malformed header: empty input"))?;
    if magic != MAGIC {
        return Err(err(ln, format!("malformed header: expected `{MAGIC}`")));
    }

    let (hl, header) = lines
        .next()
        .ok_or_else(|| err(ln + 1, "malformed header: missing size line"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 6 || toks[0] != "vertices" || toks[2] != "edges" || toks[4] != "embedding" {
        return Err(err(
            hl,
            "malformed header: expected `vertices N edges M embedding KIND`",
        ));
    }
    let n: usize = parse_num(Some(toks[1]), hl, "vertex count")?;
    let m: usize = parse_num(Some(toks[3]), hl, "edge count")?;
    let embedding = match toks[5] {
        "none" => EmbeddingKind::None,
        "rotation" => EmbeddingKind::RotationSystem,
        "bipartite" => EmbeddingKind::Bipartition,
        other => {
            return Err(err(
                hl,
                format!("malformed header: unknown embedding `{other}`"),
            ))
        }
    };

    let mut edges: Vec<Option<Edge>> = vec![None; m];
    let mut labels_seen = vec![[false; 4]; n];
    let mut degree = vec![0usize; n];
    let mut last_line = vec![hl; n];
    let mut left: Option<Vec<usize>> = None;
    let mut bip_line = hl;
    let mut read = 0;

    for (ln, line) in lines {
        let mut it = line.split_whitespace();
        match it.next() {
            Some("edge") => {
                if left.is_some() {
                    return Err(err(ln, "edge line after bipartition line"));
                }
                let id: usize = parse_num(it.next(), ln, "edge id")?;
                let u: usize = parse_num(it.next(), ln, "vertex id")?;
                let lu: u8 = parse_num(it.next(), ln, "label")?;
                let v: usize = parse_num(it.next(), ln, "vertex id")?;
                let lv: u8 = parse_num(it.next(), ln, "label")?;
                if it.next().is_some() {
                    return Err(err(ln, "trailing tokens on edge line"));
                }
                if id >= m {
                    return Err(err(ln, format!("edge id {id} out of range 0..{m}")));
                }
                if edges[id].is_some() {
                    return Err(err(ln, format!("duplicate edge id {id}")));
                }
                for (x, label) in [(u, lu), (v, lv)] {
                    if x >= n {
                        return Err(err(ln, format!("dangling vertex id {x}")));
                    }
                    if !(1..=4).contains(&label) {
                        return Err(err(ln, format!("label {label} out of range 1..4")));
                    }
                    if std::mem::replace(&mut labels_seen[x][label as usize - 1], true) {
                        return Err(err(ln, format!("duplicate label {label} at vertex {x}")));
                    }
                    degree[x] += 1;
                    last_line[x] = ln;
                }
                edges[id] = Some(Edge::new(u, lu, v, lv));
                read += 1;
            }
            Some("bipartition") => {
                if left.is_some() {
                    return Err(err(ln, "duplicate bipartition line"));
                }
                if it.next() != Some("L:") {
                    return Err(err(ln, "expected `bipartition L: <ids...>`"));
                }
                let ids = it
                    .map(|t| parse_num::<usize>(Some(t), ln, "vertex id"))
                    .collect::<Result<Vec<_>, _>>()?;
                if let Some(&bad) = ids.iter().find(|&&x| x >= n) {
                    return Err(err(ln, format!("dangling vertex id {bad}")));
                }
                left = Some(ids);
                bip_line = ln;
            }
            Some(other) => return Err(err(ln, format!("unexpected line kind `{other}`"))),
            None => unreachable!(),
        }
    }

    if read != m {
        return Err(err(hl, format!("expected {m} edge lines, found {read}")));
    }
    if let Some(v) = (0..n).find(|&v| degree[v] != 4) {
        return Err(err(
            last_line[v],
            format!("vertex {v} not 4-regular (degree {})", degree[v]),
        ));
    }
    if embedding == EmbeddingKind::Bipartition && left.is_none() {
        return Err(err(hl, "embedding bipartite requires a bipartition line"));
    }
    let edges: Vec<Edge> = edges.into_iter().map(|e| e.unwrap()).collect();
    LabeledGraph::new(n, edges, embedding, left.as_deref()).map_err(|e| match e {
        GraphError::BipartitionViolated { .. } | GraphError::BipartitionVertex { .. } => {
            err(bip_line, e.to_string())
        }
        other => err(hl, other.to_string()),
    })
}

/// Canonical text form: edges in id order with normalized endpoints.
pub fn serialize_graph(g: &LabeledGraph) -> String {
    let mut out = String::new();
    writeln!(out, "{MAGIC}").unwrap();
    writeln!(
        out,
        "vertices {} edges {} embedding {}",
        g.vertex_count(),
        g.edge_count(),
        g.embedding().keyword()
    )
    .unwrap();
    for (id, e) in g.edges().iter().enumerate() {
        writeln!(out, "edge {id} {} {} {} {}", e.u, e.label_u, e.v, e.label_v).unwrap();
    }
    if let Some(b) = g.bipartition() {
        let ids: Vec<String> = b.left().iter().map(|v| v.to_string()).collect();
        writeln!(out, "bipartition L: {}", ids.join(" ")).unwrap();
    }
    out
}
