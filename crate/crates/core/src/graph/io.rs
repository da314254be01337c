//! Graph and degree-sequence file formats.
//!
//! Edge lists are TSV, one `tail<TAB>head` pair per line with `#` comments;
//! labels may be arbitrary strings and are densely remapped to `0..n-1` in
//! first-appearance order. The JSON graph schema is `{"n": .., "edges":
//! [[t, h], ..]}` with numeric ids. Total-degree sequences are one integer
//! per line (or a JSON array); in/out sequences are `out<TAB>in` lines (or
//! a JSON object `{"out": [..], "in": [..]}`).

use std::collections::HashMap;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{build_graph, DirectedMultigraph};
use crate::error::{Error, Result};
use crate::generators::DegreeSequence;

/// A graph parsed from an external file, plus the original label of each
/// dense vertex id.
#[derive(Debug, Clone)]
pub struct ParsedGraph {
    pub graph: DirectedMultigraph,
    pub labels: Vec<String>,
}

impl ParsedGraph {
    /// True when the file already used the ids `0..n-1` as labels.
    pub fn labels_are_identity(&self) -> bool {
        self.labels
            .iter()
            .enumerate()
            .all(|(i, l)| l == &i.to_string())
    }
}

pub fn parse_edge_list_str(text: &str) -> Result<ParsedGraph> {
    let mut ids: HashMap<String, usize> = HashMap::new();
    let mut labels: Vec<String> = Vec::new();
    let mut edges = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim_end_matches('\r');
        if line.trim().is_empty() || line.trim_start().starts_with('#') {
            continue;
        }
        let mut fields = line.split('\t');
        let (tail, head) = match (fields.next(), fields.next(), fields.next()) {
            (Some(t), Some(h), None) if !t.is_empty() && !h.is_empty() => (t, h),
            _ => {
                return Err(Error::Parse {
                    line: lineno + 1,
                    msg: format!("expected \"tail<TAB>head\", got {line:?}"),
                })
            }
        };
        let mut id_of = |label: &str| -> usize {
            if let Some(&id) = ids.get(label) {
                return id;
            }
            let id = labels.len();
            labels.push(label.to_string());
            ids.insert(label.to_string(), id);
            id
        };
        let t = id_of(tail);
        let h = id_of(head);
        edges.push((t, h));
    }
    let graph = build_graph(labels.len(), edges)?;
    Ok(ParsedGraph { graph, labels })
}

pub fn parse_edge_list(path: &Path) -> Result<ParsedGraph> {
    parse_edge_list_str(&std::fs::read_to_string(path)?)
}

pub fn write_edge_list_tsv(g: &DirectedMultigraph, mut w: impl Write) -> Result<()> {
    for &(t, h) in g.edges() {
        writeln!(w, "{t}\t{h}")?;
    }
    Ok(())
}

pub fn write_labels_tsv(labels: &[String], mut w: impl Write) -> Result<()> {
    for (id, label) in labels.iter().enumerate() {
        writeln!(w, "{id}\t{label}")?;
    }
    Ok(())
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<(usize, usize)>,
}

pub fn write_graph_json(g: &DirectedMultigraph, w: impl Write) -> Result<()> {
    let doc = GraphJson {
        n: g.vertex_count(),
        edges: g.edges().to_vec(),
    };
    serde_json::to_writer(w, &doc)?;
    Ok(())
}

pub fn parse_graph_json_str(text: &str) -> Result<DirectedMultigraph> {
    let doc: GraphJson = serde_json::from_str(text)?;
    build_graph(doc.n, doc.edges)
}

/// Reads a total-degree sequence: a JSON array, or one integer per line.
pub fn parse_total_degrees(text: &str) -> Result<DegreeSequence> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('[') {
        let deg: Vec<usize> = serde_json::from_str(text)?;
        return Ok(DegreeSequence::total(deg));
    }
    let mut deg = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let d: usize = line.parse().map_err(|_| Error::Parse {
            line: lineno + 1,
            msg: format!("expected a nonnegative integer, got {line:?}"),
        })?;
        deg.push(d);
    }
    Ok(DegreeSequence::total(deg))
}

#[derive(Deserialize)]
struct InOutJson {
    out: Vec<usize>,
    #[serde(rename = "in")]
    in_deg: Vec<usize>,
}

/// Reads an in/out degree sequence: a JSON object `{"out": [..], "in":
/// [..]}`, or `out<TAB>in` lines.
pub fn parse_inout_degrees(text: &str) -> Result<DegreeSequence> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        let doc: InOutJson = serde_json::from_str(text)?;
        return DegreeSequence::in_out(doc.out, doc.in_deg);
    }
    let mut out_deg = Vec::new();
    let mut in_deg = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parse = |s: &str| -> Result<usize> {
            s.trim().parse().map_err(|_| Error::Parse {
                line: lineno + 1,
                msg: format!("expected \"out<TAB>in\" integers, got {line:?}"),
            })
        };
        let mut fields = line.split('\t');
        match (fields.next(), fields.next(), fields.next()) {
            (Some(o), Some(i), None) => {
                out_deg.push(parse(o)?);
                in_deg.push(parse(i)?);
            }
            _ => {
                return Err(Error::Parse {
                    line: lineno + 1,
                    msg: format!("expected \"out<TAB>in\", got {line:?}"),
                })
            }
        }
    }
    DegreeSequence::in_out(out_deg, in_deg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_basic_labels() {
        let p = parse_edge_list_str("a\tb\n").unwrap();
        assert_eq!(p.graph.vertex_count(), 2);
        assert_eq!(p.graph.edge_count(), 1);
        assert_eq!(p.labels, vec!["a", "b"]);
    }

    #[test]
    fn duplicate_line_is_multi_edge() {
        let p = parse_edge_list_str("a\tb\na\tb\n").unwrap();
        assert_eq!(p.graph.edge_count(), 2);
        assert_eq!(p.graph.vertex_count(), 2);
    }

    #[test]
    fn self_line_is_loop() {
        let p = parse_edge_list_str("a\ta\n").unwrap();
        assert_eq!(p.graph.vertex_count(), 1);
        assert_eq!(p.graph.edge(0), (0, 0));
    }

    #[test]
    fn comments_and_blanks_skipped() {
        let p = parse_edge_list_str("# heading\n\n0\t1\n# trailing\n").unwrap();
        assert_eq!(p.graph.edge_count(), 1);
        assert!(p.labels_are_identity());
    }

    #[test]
    fn malformed_line_names_line_number() {
        let err = parse_edge_list_str("0\t1\nbroken line\n").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn empty_file_is_empty_graph() {
        let p = parse_edge_list_str("").unwrap();
        assert_eq!(p.graph.vertex_count(), 0);
    }

    #[test]
    fn parse_from_path() {
        let path =
            std::env::temp_dir().join(format!("netcontrol-io-test-{}.tsv", std::process::id()));
        std::fs::write(&path, "x\ty\ny\tx\n").unwrap();
        let p = parse_edge_list(&path).unwrap();
        std::fs::remove_file(&path).ok();
        assert_eq!(p.graph.vertex_count(), 2);
        assert_eq!(p.graph.edge_count(), 2);
        assert!(parse_edge_list(Path::new("/nonexistent/netcontrol")).is_err());
    }

    #[test]
    fn tsv_round_trip_preserves_degrees() {
        let g = build_graph(4, vec![(0, 1), (1, 2), (2, 0), (3, 3), (0, 1)]).unwrap();
        let mut buf = Vec::new();
        write_edge_list_tsv(&g, &mut buf).unwrap();
        let p = parse_edge_list_str(std::str::from_utf8(&buf).unwrap()).unwrap();
        assert_eq!(p.graph.edge_count(), g.edge_count());
        let mut got_out = p.graph.out_degrees();
        let mut want_out = g.out_degrees();
        got_out.sort_unstable();
        want_out.sort_unstable();
        assert_eq!(got_out, want_out);
    }

    #[test]
    fn json_round_trip() {
        let g = build_graph(3, vec![(0, 1), (2, 2)]).unwrap();
        let mut buf = Vec::new();
        write_graph_json(&g, &mut buf).unwrap();
        let back = parse_graph_json_str(std::str::from_utf8(&buf).unwrap()).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn degree_files() {
        let ds = parse_total_degrees("3\n1\n# c\n2\n").unwrap();
        assert_eq!(ds.total_degrees(), vec![3, 1, 2]);
        let ds = parse_total_degrees("[3, 1, 2]").unwrap();
        assert_eq!(ds.total_degrees(), vec![3, 1, 2]);
        let ds = parse_inout_degrees("{\"out\": [1, 0], \"in\": [0, 1]}").unwrap();
        assert_eq!(ds.total_degrees(), vec![1, 1]);
        let ds = parse_inout_degrees("1\t0\n0\t1\n").unwrap();
        assert_eq!(ds.total_degrees(), vec![1, 1]);
        assert!(parse_inout_degrees("{\"out\": [2], \"in\": [1]}").is_err());
    }
}
