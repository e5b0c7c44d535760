//! Resolution (plumbing) graphs with arrow data.
//!
//! A graph file is line oriented:
//!
//! ```text
//! # A3 with four branches through the last curve
//! vertex c1 e=-2
//! vertex c2 e=-2
//! vertex c3 e=-2
//! edge c1 c2
//! edge c2 c3
//! curve C: c3=4
//! ```
//!
//! Statements may appear in any order; edges and curves are resolved after
//! all vertices are known. Vertex order everywhere (matrices, cycles) is
//! declaration order.

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub label: String,
    /// Self-intersection `e_v` of the exceptional curve.
    pub euler: i64,
    pub genus: u32,
}

impl Vertex {
    pub fn new(label: impl Into<String>, euler: i64) -> Self {
        Vertex { label: label.into(), euler, genus: 0 }
    }
}

/// Strict transform of a reduced curve germ: `arrows[v]` transversal smooth
/// branches meet `E_v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CurveConfig {
    pub name: String,
    pub arrows: Vec<u64>,
}

impl CurveConfig {
    pub fn new(name: impl Into<String>, arrows: Vec<u64>) -> Self {
        CurveConfig { name: name.into(), arrows }
    }

    /// Number of branches `r`.
    pub fn branch_count(&self) -> u64 {
        self.arrows.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.arrows.iter().all(|&a| a == 0)
    }

    /// Arrow-wise union `C₁ + C₂`. The caller guarantees the two curves
    /// share no components.
    pub fn union(&self, other: &CurveConfig) -> CurveConfig {
        assert_eq!(self.arrows.len(), other.arrows.len(), "curve size mismatch");
        CurveConfig {
            name: format!("{}+{}", self.name, other.name),
            arrows: self.arrows.iter().zip(&other.arrows).map(|(a, b)| a + b).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionGraph {
    vertices: Vec<Vertex>,
    edges: Vec<(usize, usize)>,
    curves: Vec<CurveConfig>,
}

impl ResolutionGraph {
    /// Assembles a graph from parts, checking structural well-formedness
    /// (unique labels, edge endpoints in range, no loops or repeated edges,
    /// curve sizes). Semantic hypotheses are checked by [`validate`].
    pub fn new(
        vertices: Vec<Vertex>,
        edges: Vec<(usize, usize)>,
        curves: Vec<CurveConfig>,
    ) -> Result<Self> {
        let n = vertices.len();
        let mut seen = HashSet::new();
        for v in &vertices {
            if !is_identifier(&v.label) {
                return Err(Error::Syntax { line: 0, message: format!("bad label `{}`", v.label) });
            }
            if !seen.insert(v.label.as_str()) {
                return Err(Error::DuplicateLabel { line: 0, label: v.label.clone() });
            }
        }
        let mut edge_set = HashSet::new();
        for &(a, b) in &edges {
            if a >= n || b >= n {
                return Err(Error::UnknownLabel { line: 0, label: format!("#{}", a.max(b)) });
            }
            if a == b {
                return Err(Error::Syntax { line: 0, message: format!("self-loop at `{}`", vertices[a].label) });
            }
            if !edge_set.insert((a.min(b), a.max(b))) {
                return Err(Error::Syntax {
                    line: 0,
                    message: format!("duplicate edge {} {}", vertices[a].label, vertices[b].label),
                });
            }
        }
        for c in &curves {
            if c.arrows.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: c.arrows.len() });
            }
        }
        Ok(ResolutionGraph { vertices, edges, curves })
    }

    /// Bamboo `E_1 - E_2 - ... - E_s` with the given self-intersections and
    /// labels `E1..Es`.
    pub fn chain(eulers: &[i64]) -> Self {
        let vertices = eulers
            .iter()
            .enumerate()
            .map(|(i, &e)| Vertex::new(format!("E{}", i + 1), e))
            .collect();
        let edges = (1..eulers.len()).map(|i| (i - 1, i)).collect();
        ResolutionGraph { vertices, edges, curves: Vec::new() }
    }

    /// Same graph with a different curve list.
    pub fn with_curves(mut self, curves: Vec<CurveConfig>) -> Result<Self> {
        let n = self.vertices.len();
        if let Some(c) = curves.iter().find(|c| c.arrows.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: c.arrows.len() });
        }
        self.curves = curves;
        Ok(self)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn curves(&self) -> &[CurveConfig] {
        &self.curves
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.label == label)
    }

    pub fn curve(&self, name: &str) -> Result<&CurveConfig> {
        self.curves
            .iter()
            .find(|c| c.name == name)
            .ok_or_else(|| Error::UnknownCurve(name.to_string()))
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.len()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    pub fn valency(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    /// Canonical text form; `parse_graph` of the output reproduces `self`.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for ResolutionGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.vertices {
            write!(f, "vertex {} e={}", v.label, v.euler)?;
            if v.genus != 0 {
                write!(f, " g={}", v.genus)?;
            }
            writeln!(f)?;
        }
        for &(a, b) in &self.edges {
            writeln!(f, "edge {} {}", self.vertices[a].label, self.vertices[b].label)?;
        }
        for c in &self.curves {
            write!(f, "curve {}:", c.name)?;
            for (v, &a) in c.arrows.iter().enumerate() {
                if a > 0 {
                    write!(f, " {}={}", self.vertices[v].label, a)?;
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn is_identifier(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

enum Pending<'a> {
    Edge(usize, &'a str, &'a str),
    Curve(usize, &'a str, Vec<(&'a str, u64)>),
}

/// Parses the line-oriented graph format.
pub fn parse_graph(text: &str) -> Result<ResolutionGraph> {
    let syntax = |line: usize, message: String| Error::Syntax { line, message };

    let mut vertices = Vec::new();
    let mut index: HashMap<&str, usize> = HashMap::new();
    let mut pending = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let stmt = raw.split('#').next().unwrap_or("").trim();
        if stmt.is_empty() {
            continue;
        }
        let (keyword, rest) = stmt.split_once(char::is_whitespace).unwrap_or((stmt, ""));
        let rest = rest.trim();
        match keyword {
            "vertex" => {
                let mut tokens = rest.split_whitespace();
                let label = tokens.next().ok_or_else(|| syntax(line, "missing vertex label".into()))?;
                if !is_identifier(label) {
                    return Err(syntax(line, format!("bad label `{label}`")));
                }
                let mut euler = None;
                let mut genus = 0u32;
                for tok in tokens {
                    match tok.split_once('=') {
                        Some(("e", val)) if euler.is_none() => {
                            euler = Some(val.parse::<i64>().map_err(|_| syntax(line, format!("bad euler number `{val}`")))?);
                        }
                        Some(("g", val)) => {
                            genus = val.parse::<u32>().map_err(|_| syntax(line, format!("bad genus `{val}`")))?;
                        }
                        _ => return Err(syntax(line, format!("unexpected token `{tok}`"))),
                    }
                }
                let euler = euler.ok_or_else(|| syntax(line, format!("vertex `{label}` lacks e=<integer>")))?;
                if index.insert(label, vertices.len()).is_some() {
                    return Err(Error::DuplicateLabel { line, label: label.to_string() });
                }
                vertices.push(Vertex { label: label.to_string(), euler, genus });
            }
            "edge" => {
                let tokens: Vec<&str> = rest.split_whitespace().collect();
                if tokens.len() != 2 {
                    return Err(syntax(line, "edge needs exactly two labels".into()));
                }
                pending.push(Pending::Edge(line, tokens[0], tokens[1]));
            }
            "curve" => {
                let (name, arrows) = rest
                    .split_once(':')
                    .ok_or_else(|| syntax(line, "curve needs `<name>:`".into()))?;
                let name = name.trim();
                if !is_identifier(name) {
                    return Err(syntax(line, format!("bad curve name `{name}`")));
                }
                let mut parsed = Vec::new();
                for tok in arrows.split_whitespace() {
                    let (label, count) = tok
                        .split_once('=')
                        .ok_or_else(|| syntax(line, format!("expected <label>=<count>, got `{tok}`")))?;
                    let count: i64 = count
                        .parse()
                        .map_err(|_| syntax(line, format!("bad arrow count `{count}`")))?;
                    if count < 0 {
                        return Err(Error::NegativeArrowCount {
                            line,
                            label: label.to_string(),
                            count: count.to_string(),
                        });
                    }
                    parsed.push((label, count as u64));
                }
                pending.push(Pending::Curve(line, name, parsed));
            }
            other => return Err(syntax(line, format!("unknown statement `{other}`"))),
        }
    }

    let lookup = |line: usize, label: &str| {
        index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownLabel { line, label: label.to_string() })
    };

    let n = vertices.len();
    let mut edges = Vec::new();
    let mut edge_set = HashSet::new();
    let mut curves: Vec<CurveConfig> = Vec::new();
    for p in pending {
        match p {
            Pending::Edge(line, a, b) => {
                let (u, v) = (lookup(line, a)?, lookup(line, b)?);
                if u == v {
                    return Err(syntax(line, format!("self-loop at `{a}`")));
                }
                if !edge_set.insert((u.min(v), u.max(v))) {
                    return Err(syntax(line, format!("duplicate edge {a} {b}")));
                }
                edges.push((u, v));
            }
            Pending::Curve(line, name, parsed) => {
                if curves.iter().any(|c| c.name == name) {
                    return Err(syntax(line, format!("duplicate curve `{name}`")));
                }
                let mut arrows = vec![0u64; n];
                let mut touched = HashSet::new();
                for (label, count) in parsed {
                    let v = lookup(line, label)?;
                    if !touched.insert(v) {
                        return Err(syntax(line, format!("label `{label}` repeated in curve")));
                    }
                    arrows[v] = count;
                }
                if arrows.iter().all(|&a| a == 0) {
                    return Err(syntax(line, format!("curve `{name}` has no arrows")));
                }
                curves.push(CurveConfig::new(name, arrows));
            }
        }
    }

    Ok(ResolutionGraph { vertices, edges, curves })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    Empty,
    Connected,
    Tree,
    Genus,
    NegativeDefinite,
}

impl Rule {
    pub fn id(self) -> &'static str {
        match self {
            Rule::Empty => "empty",
            Rule::Connected => "connected",
            Rule::Tree => "tree",
            Rule::Genus => "genus",
            Rule::NegativeDefinite => "negative-definite",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationFailure {
    pub rule: Rule,
    pub message: String,
    /// Offending vertex/edge, when there is one.
    pub element: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub failures: Vec<ValidationFailure>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn has(&self, rule: Rule) -> bool {
        self.failures.iter().any(|f| f.rule == rule)
    }

    fn push(&mut self, rule: Rule, message: impl Into<String>, element: Option<String>) {
        self.failures.push(ValidationFailure { rule, message: message.into(), element });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok() {
            return write!(f, "ok");
        }
        for (i, fail) in self.failures.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{fail}")?;
        }
        Ok(())
    }
}

impl fmt::Display for ValidationFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.rule.id(), self.message)?;
        if let Some(e) = &self.element {
            write!(f, " ({e})")?;
        }
        Ok(())
    }
}

/// Checks the hypotheses of the lattice pipeline: a nonempty connected tree
/// of rational curves with negative definite intersection form. Every
/// violated rule is reported.
pub fn validate(g: &ResolutionGraph) -> ValidationReport {
    let mut report = ValidationReport::default();
    let n = g.len();
    if n == 0 {
        report.push(Rule::Empty, "graph has no vertices", None);
        return report;
    }

    let adj = g.adjacency();
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    let connected = seen.iter().all(|&s| s);
    if !connected {
        let first = seen.iter().position(|&s| !s).unwrap();
        report.push(
            Rule::Connected,
            "graph is not connected",
            Some(g.vertices[first].label.clone()),
        );
    }
    if g.edges.len() + 1 > n {
        report.push(
            Rule::Tree,
            format!("graph has a cycle ({} edges on {} vertices)", g.edges.len(), n),
            None,
        );
    } else if !connected {
        report.push(Rule::Tree, "graph is a forest, not a tree", None);
    }
    for v in &g.vertices {
        if v.genus != 0 {
            report.push(
                Rule::Genus,
                format!("vertex has genus {}; only rational curves are supported", v.genus),
                Some(v.label.clone()),
            );
        }
    }
    let m = intersection_matrix(g);
    match linalg::is_negative_definite(&m) {
        Ok(true) => {}
        _ => report.push(Rule::NegativeDefinite, "intersection form is not negative definite", None),
    }
    report
}

/// Intersection matrix in declaration order: `e_v` on the diagonal, 1 per edge.
pub fn intersection_matrix(g: &ResolutionGraph) -> Matrix<i64> {
    let n = g.len();
    let mut m = Matrix::zeros(n, n);
    for (i, v) in g.vertices.iter().enumerate() {
        m[(i, i)] = v.euler;
    }
    for &(a, b) in &g.edges {
        m[(a, b)] += 1;
        m[(b, a)] += 1;
    }
    m
}
