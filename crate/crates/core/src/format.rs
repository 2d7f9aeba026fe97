//! Text formats.
//!
//! Graph files:
//!
//! ```text
//! # optional comments; a "# labels:" comment names vertices 0..n-1
//! p <n> <m> <s>
//! a <u> <v>        (m lines, 0-based ids)
//! ```
//!
//! Certificate files:
//!
//! ```text
//! d <n>
//! t <v> <parent(v)> <rank(v)>    (one line per v other than s)
//! ```

use std::fmt::Write as _;

use thiserror::Error;

use crate::certifier::DomCertificate;
use crate::graph::{FlowGraph, GraphError, VertexMap};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("expected {expected} {what} lines, found {found}")]
    Count {
        what: &'static str,
        expected: usize,
        found: usize,
    },
}

fn syntax(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        msg: msg.into(),
    }
}

/// Non-blank trimmed lines with their 1-based numbers.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r').trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn fields<const K: usize>(line: usize, rest: &str) -> Result<[usize; K], FormatError> {
    let mut out = [0; K];
    let mut it = rest.split_whitespace();
    for slot in out.iter_mut() {
        let tok = it
            .next()
            .ok_or_else(|| syntax(line, format!("expected {K} numbers")))?;
        *slot = tok
            .parse()
            .map_err(|_| syntax(line, format!("`{tok}` is not a non-negative integer")))?;
    }
    if let Some(tok) = it.next() {
        return Err(syntax(line, format!("unexpected `{tok}`")));
    }
    Ok(out)
}

/// Contents of a graph file, not yet checked for reachability.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphFile {
    pub n: usize,
    pub start: usize,
    pub arcs: Vec<(usize, usize)>,
    pub labels: Option<Vec<String>>,
}

impl GraphFile {
    pub fn parse(text: &str) -> Result<Self, FormatError> {
        let mut header: Option<[usize; 3]> = None;
        let mut arcs = Vec::new();
        let mut labels = None;
        for (no, l) in lines(text) {
            if let Some(c) = l.strip_prefix('#') {
                if let Some(names) = c.trim().strip_prefix("labels:") {
                    labels = Some(
                        names
                            .split_whitespace()
                            .map(String::from)
                            .collect::<Vec<_>>(),
                    );
                }
                continue;
            }
            let (tag, rest) = l.split_at(l.chars().next().map_or(0, char::len_utf8));
            match (tag, &header) {
                ("p", None) => header = Some(fields::<3>(no, rest)?),
                ("p", Some(_)) => return Err(syntax(no, "second `p` line")),
                ("a", Some([n, ..])) => {
                    let [u, v] = fields::<2>(no, rest)?;
                    if u >= *n || v >= *n {
                        return Err(syntax(no, format!("vertex out of range 0..{n}")));
                    }
                    arcs.push((u, v));
                }
                ("a", None) => return Err(syntax(no, "arc before the `p` line")),
                _ => return Err(syntax(no, format!("unknown line `{l}`"))),
            }
        }
        let [n, m, start] = header.ok_or_else(|| syntax(0, "missing `p` line"))?;
        if arcs.len() != m {
            return Err(FormatError::Count {
                what: "arc",
                expected: m,
                found: arcs.len(),
            });
        }
        if start >= n {
            return Err(syntax(
                0,
                format!("start vertex {start} out of range 0..{n}"),
            ));
        }
        if let Some(ls) = &labels {
            if ls.len() != n {
                return Err(syntax(0, format!("{} labels for {n} vertices", ls.len())));
            }
        }
        Ok(GraphFile {
            n,
            start,
            arcs,
            labels,
        })
    }

    pub fn from_graph(g: &FlowGraph) -> Self {
        GraphFile {
            n: g.n(),
            start: g.start(),
            arcs: g.arcs().to_vec(),
            labels: None,
        }
    }

    pub fn to_graph(&self) -> Result<FlowGraph, GraphError> {
        FlowGraph::new(self.n, self.start, self.arcs.iter().copied())
    }

    pub fn to_pruned_graph(&self) -> Result<(FlowGraph, VertexMap), GraphError> {
        FlowGraph::new_pruned(self.n, self.start, self.arcs.iter().copied())
    }

    /// Label of `v`, or its id when there are no labels.
    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(ls) => ls[v].clone(),
            None => v.to_string(),
        }
    }

    /// Id of the vertex with the given label.
    pub fn vertex(&self, label: &str) -> Option<usize> {
        match &self.labels {
            Some(ls) => ls.iter().position(|l| l == label),
            None => label.parse().ok().filter(|&v| v < self.n),
        }
    }

    pub fn write(&self) -> String {
        let mut out = String::new();
        if let Some(ls) = &self.labels {
            writeln!(out, "# labels: {}", ls.join(" ")).unwrap();
        }
        writeln!(out, "p {} {} {}", self.n, self.arcs.len(), self.start).unwrap();
        for &(u, v) in &self.arcs {
            writeln!(out, "a {u} {v}").unwrap();
        }
        out
    }
}

/// Contents of a certificate file. The start vertex is the one without a
/// `t` line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertFile {
    pub parent: Vec<Option<usize>>,
    pub rank: Vec<usize>,
}

impl CertFile {
    pub fn parse(text: &str) -> Result<Self, FormatError> {
        let mut n = None;
        let mut parent = Vec::new();
        let mut rank = Vec::new();
        let mut seen = 0;
        for (no, l) in lines(text) {
            if l.starts_with('#') {
                continue;
            }
            let (tag, rest) = l.split_at(l.chars().next().map_or(0, char::len_utf8));
            match (tag, n) {
                ("d", None) => {
                    let [k] = fields::<1>(no, rest)?;
                    n = Some(k);
                    parent = vec![None; k];
                    rank = vec![0; k];
                }
                ("d", Some(_)) => return Err(syntax(no, "second `d` line")),
                ("t", Some(k)) => {
                    let [v, p, r] = fields::<3>(no, rest)?;
                    if v >= k || p >= k {
                        return Err(syntax(no, format!("vertex out of range 0..{k}")));
                    }
                    if rank[v] != 0 {
                        return Err(syntax(no, format!("vertex {v} listed twice")));
                    }
                    if r == 0 || r > k {
                        return Err(syntax(no, format!("rank {r} out of range 1..={k}")));
                    }
                    parent[v] = Some(p);
                    rank[v] = r;
                    seen += 1;
                }
                ("t", None) => return Err(syntax(no, "tree line before the `d` line")),
                _ => return Err(syntax(no, format!("unknown line `{l}`"))),
            }
        }
        let k = n.ok_or_else(|| syntax(0, "missing `d` line"))?;
        if seen + 1 != k {
            return Err(FormatError::Count {
                what: "tree",
                expected: k.saturating_sub(1),
                found: seen,
            });
        }
        for r in rank.iter_mut().filter(|r| **r == 0) {
            *r = 1;
        }
        Ok(CertFile { parent, rank })
    }

    pub fn from_certificate(cert: &DomCertificate) -> Self {
        CertFile {
            parent: cert.parent.clone(),
            rank: cert.rank.clone(),
        }
    }

    pub fn into_certificate(self) -> DomCertificate {
        DomCertificate::from_parts(self.parent, self.rank)
    }

    pub fn write(&self) -> String {
        let mut out = String::new();
        writeln!(out, "d {}", self.parent.len()).unwrap();
        for (v, p) in self.parent.iter().enumerate() {
            if let Some(p) = p {
                writeln!(out, "t {v} {p} {}", self.rank[v]).unwrap();
            }
        }
        out
    }
}
