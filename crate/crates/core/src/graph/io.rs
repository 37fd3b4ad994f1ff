//! Edge-list and GML readers/writers.
//!
//! The edge-list dialect is one `u v` pair per line with `#` comments. Nodes
//! that have no edges are written as `#node <label>` comment lines so a
//! serialize/parse round trip keeps them; any other reader sees a comment.

use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use super::Graph;
use crate::error::{Error, Result};

const NODE_PRAGMA: &str = "#node ";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    EdgeList,
    Gml,
}

impl GraphFormat {
    /// `.gml` files are GML, anything else an edge list.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("gml") => GraphFormat::Gml,
            _ => GraphFormat::EdgeList,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            GraphFormat::EdgeList => "edgelist",
            GraphFormat::Gml => "gml",
        }
    }
}

impl FromStr for GraphFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "edgelist" | "edges" | "txt" => Ok(GraphFormat::EdgeList),
            "gml" => Ok(GraphFormat::Gml),
            other => Err(Error::Config(format!("unknown graph format `{other}`"))),
        }
    }
}

pub fn read_graph(path: &Path, format: GraphFormat) -> Result<Graph> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_owned(),
        source,
    })?;
    match format {
        GraphFormat::EdgeList => parse_edge_list(&text),
        GraphFormat::Gml => parse_gml(&text),
    }
}

pub fn write_graph(g: &Graph, path: &Path, format: GraphFormat) -> Result<()> {
    let text = match format {
        GraphFormat::EdgeList => serialize_edge_list(g)?,
        GraphFormat::Gml => serialize_gml(g),
    };
    std::fs::write(path, text).map_err(|source| Error::Io {
        path: path.to_owned(),
        source,
    })
}

/// Parses a whitespace-delimited edge list. Node ids follow first appearance.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut g = Graph::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if let Some(label) = line.strip_prefix(NODE_PRAGMA) {
            let label = label.trim();
            if !label.is_empty() {
                g.intern(label);
            }
            continue;
        }
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let (a, b) = match (tokens.next(), tokens.next(), tokens.next()) {
            (Some(a), Some(b), None) => (a, b),
            _ => {
                return Err(Error::Malformed {
                    line: line_no,
                    message: format!("expected two node labels, got `{line}`"),
                })
            }
        };
        if a == b {
            return Err(Error::SelfLoop {
                line: line_no,
                label: a.to_owned(),
            });
        }
        let u = g.intern(a);
        let v = g.intern(b);
        g.insert_edge(u, v)?;
    }
    Ok(g)
}

/// Edge list sorted by label pair. Fails on labels containing whitespace,
/// which the format cannot represent; use GML for those.
pub fn serialize_edge_list(g: &Graph) -> Result<String> {
    if let Some(bad) = g.labels().iter().find(|l| l.is_empty() || l.contains(char::is_whitespace)) {
        return Err(Error::Config(format!(
            "label `{bad}` cannot be written as an edge list; use gml"
        )));
    }
    let mut out = String::new();
    let mut isolated: Vec<&str> = g
        .nodes()
        .filter(|&v| g.adj(v).is_empty())
        .map(|v| g.label(v))
        .collect();
    isolated.sort_unstable();
    for label in isolated {
        let _ = writeln!(out, "{NODE_PRAGMA}{label}");
    }
    for (a, b) in sorted_label_edges(g) {
        let _ = writeln!(out, "{a} {b}");
    }
    Ok(out)
}

pub fn serialize_gml(g: &Graph) -> String {
    let mut out = String::from("graph [\n  directed 0\n");
    for v in g.nodes() {
        let _ = writeln!(
            out,
            "  node [\n    id {v}\n    label \"{}\"\n  ]",
            g.label(v).replace('"', "&quot;")
        );
    }
    let mut edges: Vec<(usize, usize)> = g.edges().collect();
    edges.sort_by(|&(a, b), &(c, d)| g.label_pair(a, b).cmp(&g.label_pair(c, d)));
    for (u, v) in edges {
        let (u, v) = if g.label(u) <= g.label(v) { (u, v) } else { (v, u) };
        let _ = writeln!(out, "  edge [\n    source {u}\n    target {v}\n  ]");
    }
    out.push_str("]\n");
    out
}

fn sorted_label_edges(g: &Graph) -> Vec<(&str, &str)> {
    let mut edges: Vec<(&str, &str)> = g.edges().map(|(u, v)| g.label_pair(u, v)).collect();
    edges.sort_unstable();
    edges
}

#[derive(Debug, Clone, PartialEq)]
enum Token<'a> {
    Open,
    Close,
    Word(&'a str),
    Str(String),
}

fn tokenize(text: &str) -> Result<Vec<Token<'_>>> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b'[' => {
                tokens.push(Token::Open);
                i += 1;
            }
            b']' => {
                tokens.push(Token::Close);
                i += 1;
            }
            b'"' => {
                let start = i + 1;
                let end = text[start..]
                    .find('"')
                    .map(|off| start + off)
                    .ok_or_else(|| Error::Gml("unterminated string".into()))?;
                tokens.push(Token::Str(text[start..end].replace("&quot;", "\"")));
                i = end + 1;
            }
            b'#' => {
                while i < bytes.len() && bytes[i] != b'\n' {
                    i += 1;
                }
            }
            c if c.is_ascii_whitespace() => i += 1,
            _ => {
                let start = i;
                while i < bytes.len()
                    && !bytes[i].is_ascii_whitespace()
                    && !matches!(bytes[i], b'[' | b']' | b'"')
                {
                    i += 1;
                }
                tokens.push(Token::Word(&text[start..i]));
            }
        }
    }
    Ok(tokens)
}

#[derive(Debug)]
enum Value {
    Scalar(String),
    List(Vec<(String, Value)>),
}

fn parse_list(tokens: &[Token<'_>], pos: &mut usize, nested: bool) -> Result<Vec<(String, Value)>> {
    let mut items = Vec::new();
    loop {
        match tokens.get(*pos) {
            None if nested => return Err(Error::Gml("unbalanced `[`".into())),
            None => return Ok(items),
            Some(Token::Close) if nested => {
                *pos += 1;
                return Ok(items);
            }
            Some(Token::Close) => return Err(Error::Gml("unbalanced `]`".into())),
            Some(Token::Word(key)) => {
                *pos += 1;
                let value = match tokens.get(*pos) {
                    Some(Token::Open) => {
                        *pos += 1;
                        Value::List(parse_list(tokens, pos, true)?)
                    }
                    Some(Token::Word(w)) => {
                        *pos += 1;
                        Value::Scalar((*w).to_owned())
                    }
                    Some(Token::Str(s)) => {
                        *pos += 1;
                        Value::Scalar(s.clone())
                    }
                    _ => return Err(Error::Gml(format!("key `{key}` has no value"))),
                };
                items.push(((*key).to_owned(), value));
            }
            Some(other) => return Err(Error::Gml(format!("unexpected token {other:?}"))),
        }
    }
}

fn scalar<'a>(items: &'a [(String, Value)], key: &str) -> Option<&'a str> {
    items.iter().find_map(|(k, v)| match v {
        Value::Scalar(s) if k == key => Some(s.as_str()),
        _ => None,
    })
}

fn int_field(items: &[(String, Value)], key: &str, what: &str) -> Result<i64> {
    let raw = scalar(items, key).ok_or_else(|| Error::Gml(format!("{what} without `{key}`")))?;
    raw.parse()
        .map_err(|_| Error::Gml(format!("{what} has non-integer `{key}` `{raw}`")))
}

/// Parses the node/edge subset of GML. Directedness is ignored; reverse
/// duplicates collapse into one undirected edge.
pub fn parse_gml(text: &str) -> Result<Graph> {
    let tokens = tokenize(text)?;
    let mut pos = 0;
    let top = parse_list(&tokens, &mut pos, false)?;
    let body = top
        .iter()
        .find_map(|(k, v)| match v {
            Value::List(items) if k == "graph" => Some(items),
            _ => None,
        })
        .ok_or_else(|| Error::Gml("missing `graph [ ... ]` block".into()))?;

    let mut g = Graph::new();
    let mut ids = std::collections::HashMap::new();
    for (key, value) in body {
        if let (Value::List(items), "node") = (value, key.as_str()) {
            let gml_id = int_field(items, "id", "node")?;
            let label = scalar(items, "label").map_or_else(|| gml_id.to_string(), str::to_owned);
            if ids.contains_key(&gml_id) {
                return Err(Error::Gml(format!("duplicate node id {gml_id}")));
            }
            if g.id_of(&label).is_ok() {
                return Err(Error::Gml(format!("duplicate node label `{label}`")));
            }
            ids.insert(gml_id, g.intern(&label));
        }
    }
    for (key, value) in body {
        if let (Value::List(items), "edge") = (value, key.as_str()) {
            let s = int_field(items, "source", "edge")?;
            let t = int_field(items, "target", "edge")?;
            let lookup = |id: i64| {
                ids.get(&id)
                    .copied()
                    .ok_or_else(|| Error::Gml(format!("edge references undeclared node id {id}")))
            };
            let (u, v) = (lookup(s)?, lookup(t)?);
            if u == v {
                return Err(Error::Gml(format!("self-loop on node id {s}")));
            }
            g.insert_edge(u, v)?;
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_list_path() {
        let g = parse_edge_list("0 1\n1 2\n").unwrap();
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.edge_count(), 2);
        let one = g.id_of("1").unwrap();
        let mut nbrs: Vec<&str> = g.adj(one).iter().map(|&w| g.label(w)).collect();
        nbrs.sort_unstable();
        assert_eq!(nbrs, ["0", "2"]);
    }

    #[test]
    fn edge_list_dedups_reverse_pairs() {
        let g = parse_edge_list("# header\n0 1\n\n1 0\n").unwrap();
        assert_eq!((g.node_count(), g.edge_count()), (2, 1));
    }

    #[test]
    fn edge_list_rejects_self_loop_with_line() {
        let err = parse_edge_list("0 0\n").unwrap_err();
        assert!(matches!(err, Error::SelfLoop { line: 1, .. }));
        let err = parse_edge_list("0 1\n# c\n2 2\n").unwrap_err();
        assert!(matches!(err, Error::SelfLoop { line: 3, .. }));
    }

    #[test]
    fn edge_list_rejects_malformed_line() {
        assert!(matches!(
            parse_edge_list("0 1\n2\n").unwrap_err(),
            Error::Malformed { line: 2, .. }
        ));
        assert!(matches!(
            parse_edge_list("0 1 2\n").unwrap_err(),
            Error::Malformed { line: 1, .. }
        ));
    }

    #[test]
    fn isolated_nodes_survive_serialization() {
        let mut g = parse_edge_list("a b\n").unwrap();
        g.intern("z");
        let text = serialize_edge_list(&g).unwrap();
        assert_eq!(text, "#node z\na b\n");
        let back = parse_edge_list(&text).unwrap();
        assert_eq!(back.node_count(), 3);
    }

    #[test]
    fn serializer_sorts_by_label() {
        let g = parse_edge_list("c b\nb a\n").unwrap();
        assert_eq!(serialize_edge_list(&g).unwrap(), "a b\nb c\n");
    }

    #[test]
    fn gml_minimal() {
        let g = parse_gml("graph [ node [ id 0 ] node [ id 1 ] edge [ source 0 target 1 ] ]").unwrap();
        assert_eq!((g.node_count(), g.edge_count()), (2, 1));
        assert_eq!(g.label(1), "1");
    }

    #[test]
    fn gml_directed_flag_is_ignored() {
        let text = "graph [ directed 1 node [ id 0 ] node [ id 1 ]
            edge [ source 0 target 1 ] edge [ source 1 target 0 ] ]";
        let g = parse_gml(text).unwrap();
        assert_eq!((g.node_count(), g.edge_count()), (2, 1));
    }

    #[test]
    fn gml_labels_and_unknown_keys() {
        let text = r#"Creator "x" graph [
            node [ id 10 label "Beak" value "n" graphics [ x 1.0 y 2.0 ] ]
            node [ id 20 label "Zig Zag" ]
            edge [ source 20 target 10 value 3 ]
        ]"#;
        let g = parse_gml(text).unwrap();
        assert_eq!(g.label(0), "Beak");
        assert_eq!(g.label(1), "Zig Zag");
        assert!(g.adjacent(0, 1));
        assert!(serialize_edge_list(&g).is_err());
        let back = parse_gml(&serialize_gml(&g)).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn gml_errors() {
        assert!(parse_gml("graph [ node [ id 0 ] edge [ source 0 target 5 ] ]").is_err());
        assert!(parse_gml("node [ id 0 ]").is_err());
        assert!(parse_gml("graph [ node [ id 0 ] ").is_err());
        assert!(parse_gml("graph [ node [ id 0 ] node [ id 0 ] ]").is_err());
    }
}
