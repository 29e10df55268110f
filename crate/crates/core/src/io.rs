//! Deterministic file formats: edge list, graph6, JSON graphs, certificates and
//! vertex-set files.
//!
//! Edge-list grammar:
//!
//! ```text
//! # q=4
//! # construction=moore
//! # modulus=1,1,1
//! 0:0,0,0 1:0,0,0
//! ```
//!
//! One edge per line as two vertex labels, endpoints and lines in canonical
//! vertex order. A line holding a single label declares an isolated vertex.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::cert::CertReport;
use crate::field::FieldSpec;
use crate::graph::{Graph, LabeledGraph};
use crate::vertex::{Vertex, VertexSet};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Edgelist,
    Graph6,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Edgelist => "edges",
            Format::Graph6 => "g6",
            Format::Json => "json",
        }
    }
}

/// Header data carried alongside a graph.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GraphMeta {
    pub q: Option<u32>,
    pub construction: Option<String>,
    pub modulus: Option<Vec<u32>>,
}

impl GraphMeta {
    pub fn for_field(field: &FieldSpec, construction: &str) -> GraphMeta {
        GraphMeta {
            q: Some(field.q()),
            construction: Some(construction.to_string()),
            modulus: Some(field.modulus().to_vec()),
        }
    }
}

fn join(values: &[u32]) -> String {
    values
        .iter()
        .map(u32::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn parse_list(s: &str, line: usize) -> Result<Vec<u32>> {
    s.split(',')
        .map(|t| {
            t.trim().parse().map_err(|_| Error::Parse {
                line,
                msg: format!("bad integer {t:?}"),
            })
        })
        .collect()
}

pub fn write_edgelist(g: &LabeledGraph, meta: &GraphMeta) -> String {
    let mut out = String::new();
    if let Some(q) = meta.q {
        out.push_str(&format!("# q={q}\n"));
    }
    if let Some(c) = &meta.construction {
        out.push_str(&format!("# construction={c}\n"));
    }
    if let Some(m) = &meta.modulus {
        out.push_str(&format!("# modulus={}\n", join(m)));
    }
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    for (i, v) in g.labels().iter().enumerate() {
        if g.graph().degree(i) == 0 {
            out.push_str(&format!("{v}\n"));
        }
    }
    out
}

/// Marks the graph sided when every edge joins opposite sides.
fn labeled(labels: Vec<Vertex>, edges: &[(Vertex, Vertex)]) -> Result<LabeledGraph> {
    let crossing = edges.iter().all(|(a, b)| a.side() != b.side());
    Ok(if crossing && !edges.is_empty() {
        LabeledGraph::new_bipartite(labels, edges)?
    } else {
        LabeledGraph::new(labels, edges)?
    })
}

pub fn read_edgelist(text: &str) -> Result<(LabeledGraph, GraphMeta)> {
    let mut meta = GraphMeta::default();
    let mut labels = std::collections::BTreeSet::new();
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(comment) = trimmed.strip_prefix('#') {
            if let Some((key, value)) = comment.trim().split_once('=') {
                let value = value.trim();
                match key.trim() {
                    "q" => {
                        meta.q = Some(value.parse().map_err(|_| Error::Parse {
                            line,
                            msg: format!("bad q {value:?}"),
                        })?)
                    }
                    "construction" => meta.construction = Some(value.to_string()),
                    "modulus" => meta.modulus = Some(parse_list(value, line)?),
                    _ => {}
                }
            }
            continue;
        }
        let parse = |tok: &str| {
            tok.parse::<Vertex>().map_err(|e| Error::Parse {
                line,
                msg: e.to_string(),
            })
        };
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        match tokens.as_slice() {
            [a] => {
                labels.insert(parse(a)?);
            }
            [a, b] => {
                let (a, b) = (parse(a)?, parse(b)?);
                labels.insert(a);
                labels.insert(b);
                edges.push((a, b));
            }
            _ => {
                return Err(Error::Parse {
                    line,
                    msg: format!("expected one or two vertex labels, got {}", tokens.len()),
                })
            }
        }
    }
    let g = labeled(labels.into_iter().collect(), &edges).map_err(|e| Error::Parse {
        line: 0,
        msg: e.to_string(),
    })?;
    Ok((g, meta))
}

// graph6

fn push_size(out: &mut Vec<u8>, n: usize) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
}

/// Standard graph6 encoding over vertex indices, newline terminated.
pub fn write_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::new();
    push_size(&mut out, n);
    let (mut acc, mut filled) = (0u8, 0);
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
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
    out.push(b'\n');
    String::from_utf8(out).expect("graph6 is ASCII")
}

pub fn read_graph6(text: &str) -> Result<Graph> {
    let body = text.trim();
    let body = body.strip_prefix(">>graph6<<").unwrap_or(body);
    let bytes = body.as_bytes();
    if let Some(bad) = bytes.iter().position(|b| !(63..=126).contains(b)) {
        return Err(Error::Format(format!(
            "graph6: invalid byte at offset {bad}"
        )));
    }
    let take = |range: std::ops::Range<usize>| -> Result<usize> {
        bytes
            .get(range)
            .ok_or_else(|| Error::Format("graph6: truncated size field".into()))
            .map(|s| {
                s.iter()
                    .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize)
            })
    };
    let (n, rest) = match bytes {
        [] => return Err(Error::Format("graph6: empty input".into())),
        [126, 126, ..] => (take(2..8)?, 8),
        [126, ..] => (take(1..4)?, 4),
        [b, ..] => ((b - 63) as usize, 1),
    };
    let data = &bytes[rest..];
    let bits = n * n.saturating_sub(1) / 2;
    if data.len() != bits.div_ceil(6) {
        return Err(Error::Format(format!(
            "graph6: expected {} data bytes for {n} vertices, found {}",
            bits.div_ceil(6),
            data.len()
        )));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = data[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Ok(Graph::from_edges(n, edges)?)
}

#[derive(Serialize, Deserialize)]
struct JsonGraph {
    q: Option<u32>,
    construction: Option<String>,
    modulus: Option<Vec<u32>>,
    vertices: Vec<String>,
    edges: Vec<[usize; 2]>,
}

pub fn write_json(g: &LabeledGraph, meta: &GraphMeta) -> String {
    let doc = JsonGraph {
        q: meta.q,
        construction: meta.construction.clone(),
        modulus: meta.modulus.clone(),
        vertices: g.labels().iter().map(Vertex::to_string).collect(),
        edges: g.graph().edges().map(|(u, v)| [u, v]).collect(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("graph serializes");
    s.push('\n');
    s
}

pub fn read_json(text: &str) -> Result<(LabeledGraph, GraphMeta)> {
    let doc: JsonGraph = serde_json::from_str(text)?;
    let labels = doc
        .vertices
        .iter()
        .map(|s| s.parse::<Vertex>())
        .collect::<Result<Vec<_>, _>>()?;
    let mut edges = Vec::with_capacity(doc.edges.len());
    for [u, v] in doc.edges {
        let get = |i: usize| {
            labels
                .get(i)
                .copied()
                .ok_or_else(|| Error::Format(format!("json: edge endpoint {i} out of range")))
        };
        edges.push((get(u)?, get(v)?));
    }
    let meta = GraphMeta {
        q: doc.q,
        construction: doc.construction,
        modulus: doc.modulus,
    };
    Ok((labeled(labels, &edges)?, meta))
}

/// JSON certificate sidecar. `labels` is present for graph6 output, where the
/// graph file itself carries no vertex names.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub q: u32,
    pub p: u32,
    pub n: u32,
    pub modulus: Vec<u32>,
    pub x: Option<u32>,
    pub construction: String,
    pub order: usize,
    pub size: usize,
    pub degree: Option<usize>,
    pub girth: Option<u32>,
    pub bipartite: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl Certificate {
    pub fn new(
        field: &FieldSpec,
        x: Option<u32>,
        construction: &str,
        cert: &CertReport,
    ) -> Certificate {
        Certificate {
            q: field.q(),
            p: field.p(),
            n: field.n(),
            modulus: field.modulus().to_vec(),
            x,
            construction: construction.to_string(),
            order: cert.order,
            size: cert.size,
            degree: cert.regular_degree,
            girth: cert.girth,
            bipartite: cert.bipartite,
            labels: None,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("certificate serializes");
        s.push('\n');
        s
    }

    /// Fields of `cert` that disagree with this certificate.
    pub fn mismatches(&self, cert: &CertReport) -> Vec<String> {
        let mut out = Vec::new();
        let mut cmp = |name: &str, claimed: String, found: String| {
            if claimed != found {
                out.push(format!(
                    "{name}: certificate says {claimed}, recomputed {found}"
                ));
            }
        };
        cmp("order", self.order.to_string(), cert.order.to_string());
        cmp("size", self.size.to_string(), cert.size.to_string());
        cmp(
            "degree",
            format!("{:?}", self.degree),
            format!("{:?}", cert.regular_degree),
        );
        cmp(
            "girth",
            format!("{:?}", self.girth),
            format!("{:?}", cert.girth),
        );
        cmp(
            "bipartite",
            self.bipartite.to_string(),
            cert.bipartite.to_string(),
        );
        out
    }
}

/// Sidecar path: the graph path with `.cert.json` appended.
pub fn sidecar_path(graph_path: &Path) -> std::path::PathBuf {
    let mut s = graph_path.as_os_str().to_owned();
    s.push(".cert.json");
    s.into()
}

/// One label per line, in canonical order.
pub fn write_set(s: &VertexSet) -> String {
    s.iter().map(|v| format!("{v}\n")).collect()
}

pub fn read_set(text: &str) -> Result<VertexSet> {
    let mut out = VertexSet::new();
    for (i, raw) in text.lines().enumerate() {
        let t = raw.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let v = t.parse::<Vertex>().map_err(|e| Error::Parse {
            line: i + 1,
            msg: e.to_string(),
        })?;
        out.insert(v);
    }
    Ok(out)
}

/// A graph read from disk; labels are absent for bare graph6 input.
#[derive(Debug, Clone)]
pub enum Loaded {
    Labeled(LabeledGraph, GraphMeta),
    Bare(Graph),
}

impl Loaded {
    pub fn graph(&self) -> &Graph {
        match self {
            Loaded::Labeled(g, _) => g.graph(),
            Loaded::Bare(g) => g,
        }
    }
}

/// Picks the format from the extension, falling back to content sniffing.
pub fn detect_format(path: &Path, text: &str) -> Format {
    match path.extension().and_then(|e| e.to_str()) {
        Some("json") => return Format::Json,
        Some("g6") | Some("graph6") => return Format::Graph6,
        Some("edges") | Some("txt") => return Format::Edgelist,
        _ => {}
    }
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty())
        .unwrap_or("");
    if first.starts_with('#') || first.contains(':') && !first.starts_with('{') {
        Format::Edgelist
    } else if first.starts_with('{') && serde_json::from_str::<serde_json::Value>(text).is_ok() {
        Format::Json
    } else {
        Format::Graph6
    }
}

/// Reads a graph file; for graph6, labels are taken from the sidecar when it has them.
pub fn read_graph(path: &Path) -> Result<Loaded> {
    let text = std::fs::read_to_string(path)?;
    Ok(match detect_format(path, &text) {
        Format::Edgelist => {
            let (g, meta) = read_edgelist(&text)?;
            Loaded::Labeled(g, meta)
        }
        Format::Json => {
            let (g, meta) = read_json(&text)?;
            Loaded::Labeled(g, meta)
        }
        Format::Graph6 => {
            let bare = read_graph6(&text)?;
            match read_sidecar(path)?
                .and_then(|c| c.labels.map(|l| (c.q, c.construction, c.modulus, l)))
            {
                Some((q, construction, modulus, labels)) => {
                    let g = attach_labels(&bare, &labels)?;
                    let meta = GraphMeta {
                        q: Some(q),
                        construction: Some(construction),
                        modulus: Some(modulus),
                    };
                    Loaded::Labeled(g, meta)
                }
                None => Loaded::Bare(bare),
            }
        }
    })
}

pub fn read_sidecar(graph_path: &Path) -> Result<Option<Certificate>> {
    let path = sidecar_path(graph_path);
    if !path.exists() {
        return Ok(None);
    }
    Ok(Some(serde_json::from_str(&std::fs::read_to_string(path)?)?))
}

/// Names the vertices of an index graph with canonical-order labels.
pub fn attach_labels(g: &Graph, labels: &[String]) -> Result<LabeledGraph> {
    if labels.len() != g.order() {
        return Err(Error::Format(format!(
            "{} labels for a graph of order {}",
            labels.len(),
            g.order()
        )));
    }
    let labels = labels
        .iter()
        .map(|s| s.parse::<Vertex>())
        .collect::<Result<Vec<_>, _>>()?;
    if labels.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Format("labels are not in canonical order".into()));
    }
    let edges: Vec<_> = g.edges().map(|(u, v)| (labels[u], labels[v])).collect();
    labeled(labels, &edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vertex::Side;

    #[test]
    fn single_edge_line() {
        let (a, b) = (Vertex::rho3(Side::Point), Vertex::rho3(Side::Line));
        let g = LabeledGraph::new(vec![b, a], &[(b, a)]).unwrap();
        assert_eq!(
            write_edgelist(&g, &GraphMeta::default()),
            "0:r,r,r 1:r,r,r\n"
        );
    }

    #[test]
    fn graph6_known_strings() {
        // Reference encodings from the format description.
        assert_eq!(write_graph6(&Graph::empty(0)), "?\n");
        let k4 = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(write_graph6(&k4), "C~\n");
        let p = Graph::from_edges(5, [(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(write_graph6(&p), "DQc\n");
        assert_eq!(read_graph6("DQc").unwrap(), p);
        assert_eq!(read_graph6(">>graph6<<C~\n").unwrap(), k4);
    }

    #[test]
    fn graph6_large_size_field() {
        let g = Graph::cycle(100);
        let s = write_graph6(&g);
        assert!(s.starts_with('~'));
        assert_eq!(read_graph6(&s).unwrap(), g);
    }

    #[test]
    fn graph6_rejects_garbage() {
        assert!(read_graph6("").is_err());
        assert!(read_graph6("C~~").is_err());
        assert!(read_graph6("C\u{7}").is_err());
        assert!(read_graph6("~?").is_err());
    }

    #[test]
    fn edgelist_errors_carry_line_numbers() {
        let err = read_edgelist("# q=2\n0:0,0,0 1:0,0,0\n0:0,r,0 1:0,0,0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        let err = read_edgelist("0:0,0,0 1:0,0,0 1:0,0,1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        let err = read_edgelist("# modulus=1,x\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn edgelist_isolated_vertices() {
        let v = Vertex::rho3(Side::Point);
        let g = LabeledGraph::new(vec![v], &[]).unwrap();
        let text = write_edgelist(&g, &GraphMeta::default());
        assert_eq!(text, "0:r,r,r\n");
        let (back, _) = read_edgelist(&text).unwrap();
        assert_eq!(back.labels(), g.labels());
    }

    #[test]
    fn set_file_round_trip() {
        let s: VertexSet = [Vertex::rho3(Side::Line), Vertex::rho3(Side::Point)]
            .into_iter()
            .collect();
        let text = write_set(&s);
        assert_eq!(text, "0:r,r,r\n1:r,r,r\n");
        assert_eq!(read_set(&text).unwrap(), s);
        assert!(matches!(
            read_set("0:r,r,r\nbogus\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }
}
