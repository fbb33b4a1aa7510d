//! Finite simple graphs: ingestion, factor classification, planarity and the
//! minimal embedding dimension of graph products.

mod dimension;
mod planarity;

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

pub use dimension::{min_embedding_dim, DimensionCase, DimensionResult};
pub use planarity::{is_planar, KuratowskiKind, KuratowskiWitness, Planarity};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: {reason}: `{text}`")]
    Parse {
        line: usize,
        text: String,
        reason: String,
    },
    #[error("invalid graph: {0}")]
    Invalid(String),
    #[error("hypothesis violation: graph `{0}` is disconnected")]
    Disconnected(String),
    #[error("outside the hypotheses of the dimension formula: {0}")]
    OutsideHypotheses(String),
}

impl GraphError {
    /// Whether the error comes from malformed input rather than a violated
    /// mathematical hypothesis.
    pub fn is_parse_error(&self) -> bool {
        matches!(self, GraphError::Parse { .. } | GraphError::Invalid(_))
    }
}

/// A finite simple undirected graph with labeled vertices.
///
/// Vertices are addressed by index internally; `edges` are stored with the
/// smaller index first and in insertion order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    name: String,
    labels: Vec<String>,
    index: HashMap<String, usize>,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<BTreeSet<usize>>,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicate edges, duplicate
    /// labels and undeclared endpoints.
    pub fn new<S, E>(vertices: &[S], edges: &[(E, E)]) -> Result<Self, GraphError>
    where
        S: AsRef<str>,
        E: AsRef<str>,
    {
        let mut g = Graph::empty("graph");
        for v in vertices {
            g.add_vertex(v.as_ref())?;
        }
        for (u, v) in edges {
            let (u, v) = (u.as_ref(), v.as_ref());
            let iu = g.index_of(u).ok_or_else(|| GraphError::Invalid(format!("undeclared vertex `{u}`")))?;
            let iv = g.index_of(v).ok_or_else(|| GraphError::Invalid(format!("undeclared vertex `{v}`")))?;
            g.add_edge(iu, iv)?;
        }
        Ok(g)
    }

    fn empty(name: &str) -> Self {
        Graph {
            name: name.to_string(),
            labels: Vec::new(),
            index: HashMap::new(),
            edges: Vec::new(),
            adjacency: Vec::new(),
        }
    }

    fn add_vertex(&mut self, label: &str) -> Result<usize, GraphError> {
        if label.is_empty() || label.chars().any(char::is_whitespace) {
            return Err(GraphError::Invalid(format!("bad vertex label `{label}`")));
        }
        if self.index.contains_key(label) {
            return Err(GraphError::Invalid(format!("duplicate vertex `{label}`")));
        }
        let id = self.labels.len();
        self.labels.push(label.to_string());
        self.index.insert(label.to_string(), id);
        self.adjacency.push(BTreeSet::new());
        Ok(id)
    }

    fn vertex_or_insert(&mut self, label: &str) -> Result<usize, GraphError> {
        match self.index.get(label) {
            Some(&i) => Ok(i),
            None => self.add_vertex(label),
        }
    }

    fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        if u == v {
            return Err(GraphError::Invalid(format!("self-loop at `{}`", self.labels[u])));
        }
        if self.adjacency[u].contains(&v) {
            return Err(GraphError::Invalid(format!(
                "duplicate edge `{} {}`",
                self.labels[u], self.labels[v]
            )));
        }
        self.adjacency[u].insert(v);
        self.adjacency[v].insert(u);
        self.edges.push((u.min(v), u.max(v)));
        Ok(())
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adjacency[v].iter().copied()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].contains(&v)
    }

    pub fn is_connected(&self) -> bool {
        if self.labels.is_empty() {
            return false;
        }
        let mut seen = vec![false; self.labels.len()];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for w in self.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == self.labels.len()
    }

    /// Subgraph on all vertices keeping only the edges for which `keep` holds.
    pub fn edge_subgraph(&self, mut keep: impl FnMut(usize, usize) -> bool) -> Graph {
        let mut g = Graph::empty(&self.name);
        for l in &self.labels {
            g.add_vertex(l).expect("labels are unique");
        }
        for &(u, v) in &self.edges {
            if keep(u, v) {
                g.add_edge(u, v).expect("edges are simple");
            }
        }
        g
    }

    /// Renames every vertex through `f`; `f` must be injective.
    pub fn relabel(&self, mut f: impl FnMut(&str) -> String) -> Result<Graph, GraphError> {
        let labels: Vec<String> = self.labels.iter().map(|l| f(l)).collect();
        let edges: Vec<(String, String)> = self
            .edges
            .iter()
            .map(|&(u, v)| (labels[u].clone(), labels[v].clone()))
            .collect();
        Ok(Graph::new(&labels, &edges)?.with_name(self.name.clone()))
    }

    /// Replaces the edge `u v` by a path through a fresh vertex `mid`.
    pub fn subdivide_edge(&self, u: &str, v: &str, mid: &str) -> Result<Graph, GraphError> {
        let (iu, iv) = match (self.index_of(u), self.index_of(v)) {
            (Some(a), Some(b)) if self.has_edge(a, b) => (a.min(b), a.max(b)),
            _ => return Err(GraphError::Invalid(format!("no edge `{u} {v}`"))),
        };
        let mut labels = self.labels.clone();
        labels.push(mid.to_string());
        let mut edges: Vec<(String, String)> = self
            .edges
            .iter()
            .filter(|&&e| e != (iu, iv))
            .map(|&(a, b)| (self.labels[a].clone(), self.labels[b].clone()))
            .collect();
        edges.push((u.to_string(), mid.to_string()));
        edges.push((mid.to_string(), v.to_string()));
        Ok(Graph::new(&labels, &edges)?.with_name(format!("{}/sub", self.name)))
    }

    /// Subdivides every edge once, naming the new vertex `u~v`.
    pub fn subdivide_all(&self) -> Graph {
        let mut g = self.clone();
        for &(u, v) in &self.edges {
            let (a, b) = (&self.labels[u], &self.labels[v]);
            g = g
                .subdivide_edge(a, b, &format!("{a}~{b}"))
                .expect("fresh midpoint label");
        }
        g.with_name(format!("{}/sub", self.name))
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for &(u, v) in &self.edges {
            out.push_str(&format!("{} {}\n", self.labels[u], self.labels[v]));
        }
        out
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (V={}, E={})", self.name, self.vertex_count(), self.edge_count())
    }
}

/// Complete graph on vertices `1..=n`.
pub fn complete_graph(n: usize) -> Graph {
    let labels: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            edges.push((labels[i].clone(), labels[j].clone()));
        }
    }
    Graph::new(&labels, &edges).expect("valid").with_name(format!("K{n}"))
}

/// Complete bipartite graph with parts `a1..an` and `b1..bm`.
pub fn complete_bipartite(n: usize, m: usize) -> Graph {
    let left: Vec<String> = (1..=n).map(|i| format!("a{i}")).collect();
    let right: Vec<String> = (1..=m).map(|i| format!("b{i}")).collect();
    let mut edges = Vec::new();
    for a in &left {
        for b in &right {
            edges.push((a.clone(), b.clone()));
        }
    }
    let labels: Vec<String> = left.into_iter().chain(right).collect();
    Graph::new(&labels, &edges).expect("valid").with_name(format!("K{n},{m}"))
}

pub fn cycle_graph(n: usize) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(GraphError::Invalid(format!("cycle needs at least 3 vertices, got {n}")));
    }
    let labels: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let edges: Vec<(String, String)> = (0..n)
        .map(|i| (labels[i].clone(), labels[(i + 1) % n].clone()))
        .collect();
    Ok(Graph::new(&labels, &edges)?.with_name(format!("C{n}")))
}

/// Path with `n` vertices.
pub fn path_graph(n: usize) -> Result<Graph, GraphError> {
    if n == 0 {
        return Err(GraphError::Invalid("path needs at least one vertex".into()));
    }
    let labels: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let edges: Vec<(String, String)> = (1..n)
        .map(|i| (labels[i - 1].clone(), labels[i].clone()))
        .collect();
    Ok(Graph::new(&labels, &edges)?.with_name(format!("P{n}")))
}

/// The star with three leaves.
pub fn triod() -> Graph {
    Graph::new(&["o", "x", "y", "z"], &[("o", "x"), ("o", "y"), ("o", "z")])
        .expect("valid")
        .with_name("Y")
}

/// Expands a builtin name, or `None` if `name` is not one.
pub fn builtin_graph(name: &str) -> Option<Result<Graph, GraphError>> {
    let lower = name.trim().to_ascii_lowercase();
    let parse_n = |s: &str| -> Result<usize, GraphError> {
        s.parse::<usize>().map_err(|_| GraphError::Parse {
            line: 1,
            text: name.to_string(),
            reason: "bad size in builtin".into(),
        })
    };
    let g = match lower.as_str() {
        "k5" => Ok(complete_graph(5)),
        "k33" => Ok(complete_bipartite(3, 3)),
        "k6" => Ok(complete_graph(6)),
        "triod" | "y" => Ok(triod()),
        other => {
            let (kind, arg) = other.split_once(':')?;
            match kind {
                "kn" => parse_n(arg).and_then(|n| {
                    if n == 0 {
                        Err(GraphError::Invalid("K0 has no vertices".into()))
                    } else {
                        Ok(complete_graph(n))
                    }
                }),
                "knn" => parse_n(arg).and_then(|n| {
                    if n == 0 {
                        Err(GraphError::Invalid("K0,0 has no vertices".into()))
                    } else {
                        Ok(complete_bipartite(n, n))
                    }
                }),
                "cycle" => parse_n(arg).and_then(cycle_graph),
                "path" => parse_n(arg).and_then(path_graph),
                _ => return None,
            }
        }
    };
    Some(g)
}

/// Parses a builtin name (`k5`, `k33`, `kn:N`, `knn:N`, `cycle:N`, `path:N`,
/// `triod`; case-insensitive) or edge-list text with one `u v` pair per line.
///
/// In edge-list text `#` starts a comment; a line holding a single label
/// declares an isolated vertex.
pub fn parse_graph(source: &str) -> Result<Graph, GraphError> {
    if !source.contains('\n') {
        if let Some(g) = builtin_graph(source) {
            return g;
        }
    }
    let mut g = Graph::empty("edges");
    for (lineno, raw) in source.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let parse_err = |reason: String| GraphError::Parse {
            line: lineno + 1,
            text: raw.to_string(),
            reason,
        };
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens.as_slice() {
            [v] => {
                g.vertex_or_insert(v).map_err(|e| parse_err(e.to_string()))?;
            }
            [u, v] => {
                if u == v {
                    return Err(parse_err("self-loop".into()));
                }
                let iu = g.vertex_or_insert(u).map_err(|e| parse_err(e.to_string()))?;
                let iv = g.vertex_or_insert(v).map_err(|e| parse_err(e.to_string()))?;
                if g.has_edge(iu, iv) {
                    return Err(parse_err("duplicate edge".into()));
                }
                g.add_edge(iu, iv).map_err(|e| parse_err(e.to_string()))?;
            }
            _ => return Err(parse_err("expected `u v`".into())),
        }
    }
    if g.vertex_count() == 0 {
        return Err(GraphError::Parse {
            line: 0,
            text: source.to_string(),
            reason: "no vertices".into(),
        });
    }
    Ok(g)
}

/// Topological type of a connected factor graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum FactorClass {
    Point,
    Interval,
    Circle,
    Other { planar: bool },
}

pub fn classify_factor(g: &Graph) -> Result<FactorClass, GraphError> {
    if !g.is_connected() {
        return Err(GraphError::Disconnected(g.name().to_string()));
    }
    let n = g.vertex_count();
    if n == 1 {
        return Ok(FactorClass::Point);
    }
    let degrees: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let max_degree = degrees.iter().copied().max().unwrap_or(0);
    if degrees.iter().all(|&d| d == 2) {
        return Ok(FactorClass::Circle);
    }
    // connected with E = V - 1 is a tree; max degree 2 makes it a path
    if max_degree <= 2 && g.edge_count() + 1 == n {
        return Ok(FactorClass::Interval);
    }
    debug_assert!(max_degree >= 3);
    Ok(FactorClass::Other {
        planar: is_planar(g).is_planar(),
    })
}
