//! Abstract simplicial complexes stored by their facets, with join, cone,
//! skeleta and vertex links.

mod product;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use itertools::Itertools;
use serde::Serialize;
use thiserror::Error;

pub use product::{direct_product_link_2, product_vertex_link, torus_pair_check, TorusPairReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("skeleton dimension {m} exceeds simplex dimension {n}")]
    SkeletonDimension { m: usize, n: usize },
    #[error("label `{0}` already used")]
    LabelCollision(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("invalid label `{0}`")]
    InvalidLabel(String),
    #[error("degree list is empty")]
    EmptyDegrees,
    #[error("vertex degree must be positive")]
    ZeroDegree,
    #[error("sphere selections are not complementary: {0}")]
    NotComplementary(String),
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

/// Counts of k-simplices for k = 0..=dim.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FVector(pub Vec<usize>);

impl FVector {
    /// `f_k`, with `f_{-1} = 1` for the empty face.
    pub fn get(&self, k: isize) -> usize {
        if k == -1 {
            1
        } else if k < -1 {
            0
        } else {
            self.0.get(k as usize).copied().unwrap_or(0)
        }
    }
}

/// A finite abstract simplicial complex given by its maximal faces.
///
/// Every face of a facet is implicitly present. `join_structure`, when set,
/// is an ordered partition of the vertices into factor groups such that no
/// facet meets a group twice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    facets: Vec<Vec<usize>>,
    join_structure: Option<Vec<Vec<usize>>>,
}

fn check_label(label: &str) -> Result<(), ComplexError> {
    if label.is_empty() || label.contains('|') || label.chars().any(char::is_whitespace) {
        return Err(ComplexError::InvalidLabel(label.to_string()));
    }
    Ok(())
}

impl SimplicialComplex {
    /// Builds a complex from vertex labels and faces given by labels.
    /// Non-maximal faces are dropped; vertices not covered by any face
    /// become isolated vertices.
    pub fn new<S: AsRef<str>>(vertices: &[S], faces: &[Vec<S>]) -> Result<Self, ComplexError> {
        let mut labels = Vec::new();
        let mut index = HashMap::new();
        for v in vertices {
            let v = v.as_ref();
            check_label(v)?;
            if index.insert(v.to_string(), labels.len()).is_some() {
                return Err(ComplexError::LabelCollision(v.to_string()));
            }
            labels.push(v.to_string());
        }
        let mut ids = Vec::new();
        for face in faces {
            let mut f: Vec<usize> = face
                .iter()
                .map(|l| {
                    index
                        .get(l.as_ref())
                        .copied()
                        .ok_or_else(|| ComplexError::UnknownVertex(l.as_ref().to_string()))
                })
                .collect::<Result<_, _>>()?;
            f.sort_unstable();
            f.dedup();
            ids.push(f);
        }
        for v in 0..labels.len() {
            ids.push(vec![v]);
        }
        Ok(Self::from_raw(labels, ids, None))
    }

    fn from_raw(labels: Vec<String>, faces: Vec<Vec<usize>>, join_structure: Option<Vec<Vec<usize>>>) -> Self {
        let index = labels.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
        let mut faces: Vec<Vec<usize>> = faces.into_iter().filter(|f| !f.is_empty()).collect();
        faces.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        faces.dedup();
        let mut facets: Vec<Vec<usize>> = Vec::new();
        for f in faces {
            if !facets.iter().any(|g| is_subset(&f, g)) {
                facets.push(f);
            }
        }
        facets.sort();
        SimplicialComplex {
            labels,
            index,
            facets,
            join_structure,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
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

    /// Facets as sorted vertex-index lists.
    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    pub fn facet_labels(&self) -> Vec<Vec<String>> {
        self.facets
            .iter()
            .map(|f| f.iter().map(|&v| self.labels[v].clone()).collect())
            .collect()
    }

    pub fn join_structure(&self) -> Option<&[Vec<usize>]> {
        self.join_structure.as_deref()
    }

    /// Dimension; `-1` for the empty complex.
    pub fn dim(&self) -> isize {
        self.facets.iter().map(|f| f.len() as isize - 1).max().unwrap_or(-1)
    }

    /// Whether all facets are single vertices.
    pub fn is_discrete(&self) -> bool {
        self.facets.iter().all(|f| f.len() == 1)
    }

    /// Factor groups: the explicit join structure, or the whole vertex set
    /// for a discrete complex.
    pub fn groups(&self) -> Option<Vec<Vec<usize>>> {
        match &self.join_structure {
            Some(g) => Some(g.clone()),
            None if self.labels.is_empty() => Some(Vec::new()),
            None if self.is_discrete() => Some(vec![(0..self.labels.len()).collect()]),
            None => None,
        }
    }

    /// All non-empty faces, materialized from the facets.
    pub fn faces(&self) -> BTreeSet<Vec<usize>> {
        let mut out = BTreeSet::new();
        for f in &self.facets {
            for k in 1..=f.len() {
                for c in f.iter().copied().combinations(k) {
                    out.insert(c);
                }
            }
        }
        out
    }

    /// Faces of dimension `k`.
    pub fn simplices(&self, k: usize) -> Vec<Vec<usize>> {
        let mut out: BTreeSet<Vec<usize>> = BTreeSet::new();
        for f in &self.facets {
            if f.len() > k {
                for c in f.iter().copied().combinations(k + 1) {
                    out.insert(c);
                }
            }
        }
        out.into_iter().collect()
    }

    pub fn f_vector(&self) -> FVector {
        let faces = self.faces();
        let dim = self.dim();
        let mut counts = vec![0; (dim + 1).max(0) as usize];
        for f in faces {
            counts[f.len() - 1] += 1;
        }
        FVector(counts)
    }

    pub fn contains_face(&self, face: &[usize]) -> bool {
        let mut f = face.to_vec();
        f.sort_unstable();
        self.facets.iter().any(|g| is_subset(&f, g))
    }

    /// Facet sets compared by labels.
    pub fn same_faces(&self, other: &SimplicialComplex) -> bool {
        let mine: BTreeSet<BTreeSet<&str>> = self
            .facets
            .iter()
            .map(|f| f.iter().map(|&v| self.labels[v].as_str()).collect())
            .collect();
        let theirs: BTreeSet<BTreeSet<&str>> = other
            .facets
            .iter()
            .map(|f| f.iter().map(|&v| other.labels[v].as_str()).collect())
            .collect();
        mine == theirs && self.vertex_set() == other.vertex_set()
    }

    fn vertex_set(&self) -> BTreeSet<&str> {
        self.labels.iter().map(String::as_str).collect()
    }

    pub fn relabel(&self, mut f: impl FnMut(&str) -> String) -> Result<SimplicialComplex, ComplexError> {
        let labels: Vec<String> = self.labels.iter().map(|l| f(l)).collect();
        let mut seen = BTreeSet::new();
        for l in &labels {
            check_label(l)?;
            if !seen.insert(l) {
                return Err(ComplexError::LabelCollision(l.clone()));
            }
        }
        Ok(Self::from_raw(labels, self.facets.clone(), self.join_structure.clone()))
    }

    /// The join `self * other`. Labels are kept when disjoint; otherwise the
    /// left side is prefixed `a:` and the right side `b:`.
    pub fn join(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let clash = self.labels.iter().any(|l| other.index.contains_key(l));
        let (left, right) = if clash {
            (
                self.relabel(|l| format!("a:{l}")).expect("prefixing keeps labels distinct"),
                other.relabel(|l| format!("b:{l}")).expect("prefixing keeps labels distinct"),
            )
        } else {
            (self.clone(), other.clone())
        };
        let offset = left.labels.len();
        let labels: Vec<String> = left.labels.iter().chain(&right.labels).cloned().collect();
        let shift = |f: &Vec<usize>| f.iter().map(|&v| v + offset).collect::<Vec<_>>();
        let facets: Vec<Vec<usize>> = if left.facets.is_empty() {
            right.facets.iter().map(shift).collect()
        } else if right.facets.is_empty() {
            left.facets.clone()
        } else {
            left.facets
                .iter()
                .cartesian_product(&right.facets)
                .map(|(a, b)| a.iter().copied().chain(shift(b)).collect())
                .collect()
        };
        let join_structure = match (left.groups(), right.groups()) {
            (Some(a), Some(b)) => Some(a.into_iter().chain(b.iter().map(shift)).collect()),
            _ => None,
        };
        SimplicialComplex::from_raw(labels, facets, join_structure)
    }

    /// `n`-fold join of `base` with itself; copy `k` is labeled `g{k}:{label}`.
    pub fn join_power(base: &SimplicialComplex, n: usize) -> SimplicialComplex {
        let mut acc = SimplicialComplex::from_raw(Vec::new(), Vec::new(), Some(Vec::new()));
        for k in 1..=n {
            let copy = base
                .relabel(|l| format!("g{k}:{l}"))
                .expect("prefixing keeps labels distinct");
            acc = acc.join(&copy);
        }
        acc
    }

    /// The cone `self * {apex}`.
    pub fn cone(&self, apex_label: &str) -> Result<SimplicialComplex, ComplexError> {
        check_label(apex_label)?;
        if self.index.contains_key(apex_label) {
            return Err(ComplexError::LabelCollision(apex_label.to_string()));
        }
        let apex = SimplicialComplex::new(&[apex_label], &[])?;
        Ok(self.join(&apex))
    }

    /// Link of a vertex: faces `f` with `v ∉ f` and `f ∪ {v}` a face.
    pub fn vertex_link(&self, vertex: &str) -> Result<SimplicialComplex, ComplexError> {
        let v = self
            .index_of(vertex)
            .ok_or_else(|| ComplexError::UnknownVertex(vertex.to_string()))?;
        let rest: Vec<Vec<usize>> = self
            .facets
            .iter()
            .filter(|f| f.contains(&v))
            .map(|f| f.iter().copied().filter(|&w| w != v).collect())
            .collect();
        let keep: BTreeSet<usize> = rest.iter().flatten().copied().collect();
        let remap: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(i, &w)| (w, i)).collect();
        let labels: Vec<String> = keep.iter().map(|&w| self.labels[w].clone()).collect();
        let facets = rest
            .iter()
            .map(|f| f.iter().map(|w| remap[w]).collect())
            .collect();
        let join_structure = self.join_structure.as_ref().map(|groups| {
            groups
                .iter()
                .map(|g| g.iter().filter_map(|w| remap.get(w).copied()).collect::<Vec<_>>())
                .filter(|g: &Vec<usize>| !g.is_empty())
                .collect()
        });
        Ok(SimplicialComplex::from_raw(labels, facets, join_structure))
    }

    /// Canonical form for joins of discrete sets: the sorted group sizes,
    /// or `None` when the complex is not such a join.
    ///
    /// Groups are recovered as classes of vertices that never share a facet
    /// (complementary components of the 1-skeleton), then the facets must be
    /// exactly all transversals.
    pub fn join_signature(&self) -> Option<Vec<usize>> {
        let n = self.labels.len();
        if n == 0 {
            return Some(Vec::new());
        }
        let mut adjacent = vec![vec![false; n]; n];
        for f in &self.facets {
            for (&a, &b) in f.iter().tuple_combinations() {
                adjacent[a][b] = true;
                adjacent[b][a] = true;
            }
        }
        // union-find over non-adjacency
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            if p[x] != x {
                let r = find(p, p[x]);
                p[x] = r;
            }
            p[x]
        }
        for a in 0..n {
            for b in a + 1..n {
                if !adjacent[a][b] {
                    let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                    parent[ra] = rb;
                }
            }
        }
        let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in 0..n {
            let r = find(&mut parent, v);
            classes.entry(r).or_default().push(v);
        }
        let groups: Vec<Vec<usize>> = classes.into_values().collect();
        let expected: usize = groups.iter().map(Vec::len).product();
        if self.facets.len() != expected || self.facets.iter().any(|f| f.len() != groups.len()) {
            return None;
        }
        let mut group_of = vec![0; n];
        for (gi, g) in groups.iter().enumerate() {
            for &v in g {
                group_of[v] = gi;
            }
        }
        for f in &self.facets {
            let hit: BTreeSet<usize> = f.iter().map(|&v| group_of[v]).collect();
            if hit.len() != groups.len() {
                return None;
            }
        }
        let mut sizes: Vec<usize> = groups.iter().map(Vec::len).collect();
        sizes.sort_unstable();
        Some(sizes)
    }

    /// Edges of the 1-skeleton as label pairs.
    pub fn one_skeleton_edges(&self) -> Vec<(String, String)> {
        self.simplices(1)
            .into_iter()
            .map(|e| (self.labels[e[0]].clone(), self.labels[e[1]].clone()))
            .collect()
    }

    /// Text form: optional `join:` header (groups separated by `|`), a
    /// `vertices:` line, then one facet per line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(groups) = &self.join_structure {
            let parts: Vec<String> = groups
                .iter()
                .map(|g| g.iter().map(|&v| self.labels[v].as_str()).join(" "))
                .collect();
            let _ = writeln!(out, "join: {}", parts.join(" | "));
        }
        let _ = writeln!(out, "vertices: {}", self.labels.join(" "));
        for f in &self.facets {
            let _ = writeln!(out, "{}", f.iter().map(|&v| self.labels[v].as_str()).join(" "));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<SimplicialComplex, ComplexError> {
        let mut groups: Option<Vec<Vec<String>>> = None;
        let mut vertices: Option<Vec<String>> = None;
        let mut faces: Vec<Vec<String>> = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("join:") {
                groups = Some(
                    rest.split('|')
                        .map(|g| g.split_whitespace().map(str::to_string).collect())
                        .collect(),
                );
            } else if let Some(rest) = line.strip_prefix("vertices:") {
                vertices = Some(rest.split_whitespace().map(str::to_string).collect());
            } else if vertices.is_none() {
                return Err(ComplexError::Parse {
                    line: lineno + 1,
                    reason: "facet before `vertices:` line".into(),
                });
            } else {
                faces.push(line.split_whitespace().map(str::to_string).collect());
            }
        }
        let vertices = vertices.ok_or(ComplexError::Parse {
            line: 0,
            reason: "missing `vertices:` line".into(),
        })?;
        let mut c = SimplicialComplex::new(&vertices, &faces)?;
        if let Some(groups) = groups {
            let ids = groups
                .iter()
                .map(|g| {
                    g.iter()
                        .map(|l| c.index_of(l).ok_or_else(|| ComplexError::UnknownVertex(l.clone())))
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            c.join_structure = Some(ids);
        }
        Ok(c)
    }
}

fn is_subset(small: &[usize], big: &[usize]) -> bool {
    // both sorted
    let mut it = big.iter();
    small.iter().all(|x| it.by_ref().any(|y| y == x))
}

/// The m-skeleton of the n-simplex, on vertices `0..=n`.
pub fn skeleton_complex(m: usize, n: usize) -> Result<SimplicialComplex, ComplexError> {
    if m > n {
        return Err(ComplexError::SkeletonDimension { m, n });
    }
    let labels: Vec<String> = (0..=n).map(|i| i.to_string()).collect();
    let facets: Vec<Vec<usize>> = (0..=n).combinations(m + 1).collect();
    Ok(SimplicialComplex::from_raw(labels, facets, None))
}
