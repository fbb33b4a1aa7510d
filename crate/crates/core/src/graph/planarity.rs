//! Planarity by path addition (Demoucron, Malgrange, Pertuiset) on each
//! biconnected block, with Kuratowski witnesses extracted from an
//! edge-minimal non-planar subgraph.

use std::collections::{BTreeSet, HashSet, VecDeque};

use serde::Serialize;

use super::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum KuratowskiKind {
    K5,
    K33,
}

/// A subdivision of K₅ or K₃,₃ inside a graph: branch vertices plus one
/// path per edge of the underlying Kuratowski graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KuratowskiWitness {
    pub kind: KuratowskiKind,
    pub branch_vertices: Vec<String>,
    pub paths: Vec<Vec<String>>,
}

impl KuratowskiWitness {
    /// Number of subdividing (degree-2) vertices.
    pub fn subdivision_vertices(&self) -> usize {
        self.paths.iter().map(|p| p.len().saturating_sub(2)).sum()
    }

    /// Checks that the witness really is a Kuratowski subdivision inside `g`.
    pub fn validate(&self, g: &Graph) -> Result<(), String> {
        let branch: Vec<usize> = self
            .branch_vertices
            .iter()
            .map(|l| g.index_of(l).ok_or_else(|| format!("unknown branch vertex {l}")))
            .collect::<Result<_, _>>()?;
        let branch_set: HashSet<usize> = branch.iter().copied().collect();
        if branch_set.len() != branch.len() {
            return Err("repeated branch vertex".into());
        }
        let mut used_internal = HashSet::new();
        let mut pairs = HashSet::new();
        for path in &self.paths {
            if path.len() < 2 {
                return Err("path too short".into());
            }
            let ids: Vec<usize> = path
                .iter()
                .map(|l| g.index_of(l).ok_or_else(|| format!("unknown vertex {l}")))
                .collect::<Result<_, _>>()?;
            for w in ids.windows(2) {
                if !g.has_edge(w[0], w[1]) {
                    return Err(format!("missing edge {} {}", g.label(w[0]), g.label(w[1])));
                }
            }
            let (s, t) = (ids[0], ids[ids.len() - 1]);
            if !branch_set.contains(&s) || !branch_set.contains(&t) || s == t {
                return Err("path ends must be distinct branch vertices".into());
            }
            for &x in &ids[1..ids.len() - 1] {
                if branch_set.contains(&x) || !used_internal.insert(x) {
                    return Err(format!("internal vertex {} reused", g.label(x)));
                }
            }
            if !pairs.insert((s.min(t), s.max(t))) {
                return Err("parallel branch paths".into());
            }
        }
        match self.kind {
            KuratowskiKind::K5 => {
                if branch.len() != 5 || pairs.len() != 10 {
                    return Err("K5 witness needs 5 branch vertices and 10 paths".into());
                }
            }
            KuratowskiKind::K33 => {
                if branch.len() != 6 || pairs.len() != 9 {
                    return Err("K3,3 witness needs 6 branch vertices and 9 paths".into());
                }
                // 2-colour the branch graph; completeness follows from 9 = 3 * 3
                let mut side = std::collections::HashMap::new();
                side.insert(branch[0], 0u8);
                let mut queue = VecDeque::from([branch[0]]);
                while let Some(v) = queue.pop_front() {
                    for &(a, b) in &pairs {
                        let w = if a == v {
                            b
                        } else if b == v {
                            a
                        } else {
                            continue;
                        };
                        match side.get(&w) {
                            Some(&s) if s == side[&v] => return Err("branch graph not bipartite".into()),
                            Some(_) => {}
                            None => {
                                side.insert(w, 1 - side[&v]);
                                queue.push_back(w);
                            }
                        }
                    }
                }
                let left = side.values().filter(|&&s| s == 0).count();
                if side.len() != 6 || left != 3 {
                    return Err("branch graph is not K3,3".into());
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Planarity {
    pub planar: bool,
    pub witness: Option<KuratowskiWitness>,
}

impl Planarity {
    pub fn is_planar(&self) -> bool {
        self.planar
    }
}

/// Tests planarity; non-planar graphs come with a Kuratowski witness.
pub fn is_planar(g: &Graph) -> Planarity {
    let all: Vec<usize> = (0..g.edge_count()).collect();
    if edges_planar(g, &all) {
        return Planarity {
            planar: true,
            witness: None,
        };
    }
    Planarity {
        planar: false,
        witness: Some(extract_witness(g)),
    }
}

/// Planarity of the subgraph of `g` spanned by the edges with the given ids.
fn edges_planar(g: &Graph, edge_ids: &[usize]) -> bool {
    let n = g.vertex_count();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &e in edge_ids {
        let (u, v) = g.edges()[e];
        adj[u].push(v);
        adj[v].push(u);
    }
    let active = adj.iter().filter(|a| !a.is_empty()).count();
    if active >= 3 && edge_ids.len() > 3 * active - 6 {
        return false;
    }
    biconnected_blocks(&adj)
        .into_iter()
        .filter(|block| block.len() >= 9)
        .all(|block| block_planar(&block))
}

/// Edge sets of the biconnected components (Hopcroft-Tarjan).
fn biconnected_blocks(adj: &[Vec<usize>]) -> Vec<Vec<(usize, usize)>> {
    struct State<'a> {
        adj: &'a [Vec<usize>],
        disc: Vec<usize>,
        low: Vec<usize>,
        time: usize,
        stack: Vec<(usize, usize)>,
        blocks: Vec<Vec<(usize, usize)>>,
    }
    fn dfs(s: &mut State, u: usize, parent: Option<usize>) {
        s.time += 1;
        s.disc[u] = s.time;
        s.low[u] = s.time;
        for i in 0..s.adj[u].len() {
            let v = s.adj[u][i];
            if s.disc[v] == 0 {
                s.stack.push((u, v));
                dfs(s, v, Some(u));
                s.low[u] = s.low[u].min(s.low[v]);
                if s.low[v] >= s.disc[u] {
                    let mut block = Vec::new();
                    while let Some(e) = s.stack.pop() {
                        block.push(e);
                        if e == (u, v) {
                            break;
                        }
                    }
                    s.blocks.push(block);
                }
            } else if Some(v) != parent && s.disc[v] < s.disc[u] {
                s.stack.push((u, v));
                s.low[u] = s.low[u].min(s.disc[v]);
            }
        }
    }
    let n = adj.len();
    let mut state = State {
        adj,
        disc: vec![0; n],
        low: vec![0; n],
        time: 0,
        stack: Vec::new(),
        blocks: Vec::new(),
    };
    for u in 0..n {
        if state.disc[u] == 0 && !adj[u].is_empty() {
            dfs(&mut state, u, None);
        }
    }
    state.blocks
}

/// Path-addition test on one biconnected block given by its edges.
fn block_planar(block: &[(usize, usize)]) -> bool {
    // compact vertex ids
    let mut ids: Vec<usize> = block.iter().flat_map(|&(a, b)| [a, b]).collect();
    ids.sort_unstable();
    ids.dedup();
    let local = |v: usize| ids.binary_search(&v).expect("block vertex");
    let n = ids.len();
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for &(a, b) in block {
        let (a, b) = (local(a), local(b));
        adj[a].insert(b);
        adj[b].insert(a);
    }
    let edge_total = block.len();
    if n >= 3 && edge_total > 3 * n - 6 {
        return false;
    }

    let cycle = find_cycle(&adj);
    let mut in_h = vec![false; n];
    let mut h_edges: HashSet<(usize, usize)> = HashSet::new();
    for i in 0..cycle.len() {
        let (a, b) = (cycle[i], cycle[(i + 1) % cycle.len()]);
        in_h[a] = true;
        h_edges.insert((a.min(b), a.max(b)));
    }
    let mut faces: Vec<Vec<usize>> = vec![cycle.clone(), cycle];

    while h_edges.len() < edge_total {
        let fragments = fragments(&adj, &in_h, &h_edges);
        let mut choice: Option<(usize, usize)> = None;
        for (fi, frag) in fragments.iter().enumerate() {
            let admissible: Vec<usize> = faces
                .iter()
                .enumerate()
                .filter(|(_, f)| frag.attachments.iter().all(|a| f.contains(a)))
                .map(|(i, _)| i)
                .collect();
            match admissible.len() {
                0 => return false,
                1 => {
                    choice = Some((fi, admissible[0]));
                    break;
                }
                _ => {
                    if choice.is_none() {
                        choice = Some((fi, admissible[0]));
                    }
                }
            }
        }
        let (fi, face_idx) = choice.expect("at least one fragment while edges remain");
        let path = fragment_path(&adj, &fragments[fi], &in_h);
        for w in path.windows(2) {
            h_edges.insert((w[0].min(w[1]), w[0].max(w[1])));
        }
        for &v in &path {
            in_h[v] = true;
        }
        let face = faces.swap_remove(face_idx);
        let (a, b) = (path[0], path[path.len() - 1]);
        let i = face.iter().position(|&x| x == a).expect("attachment on face");
        let j = face.iter().position(|&x| x == b).expect("attachment on face");
        let interior = &path[1..path.len() - 1];
        let mut f1 = cyclic_walk(&face, i, j);
        f1.extend(interior.iter().rev());
        let mut f2 = cyclic_walk(&face, j, i);
        f2.extend(interior.iter());
        faces.push(f1);
        faces.push(f2);
    }
    true
}

fn cyclic_walk(face: &[usize], from: usize, to: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut k = from;
    loop {
        out.push(face[k]);
        if k == to {
            break;
        }
        k = (k + 1) % face.len();
    }
    out
}

fn find_cycle(adj: &[BTreeSet<usize>]) -> Vec<usize> {
    // DFS from 0 until a back edge closes a cycle
    let n = adj.len();
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![usize::MAX; n];
    let mut stack = vec![(0usize, usize::MAX)];
    while let Some((v, p)) = stack.pop() {
        if depth[v] != usize::MAX {
            continue;
        }
        parent[v] = p;
        depth[v] = if p == usize::MAX { 0 } else { depth[p] + 1 };
        for &w in &adj[v] {
            if w == p {
                continue;
            }
            if depth[w] != usize::MAX && depth[w] < depth[v] {
                // tree path from v up to w, closed by the edge v-w
                let mut cycle = vec![v];
                let mut x = v;
                while x != w {
                    x = parent[x];
                    cycle.push(x);
                }
                return cycle;
            }
            if depth[w] == usize::MAX {
                stack.push((w, v));
            }
        }
    }
    unreachable!("biconnected block with >= 3 edges has a cycle")
}

struct Fragment {
    attachments: BTreeSet<usize>,
    /// Non-H vertices of the fragment; empty for a chord.
    inner: BTreeSet<usize>,
    /// The chord, when the fragment is a single edge between H vertices.
    chord: Option<(usize, usize)>,
}

fn fragments(adj: &[BTreeSet<usize>], in_h: &[bool], h_edges: &HashSet<(usize, usize)>) -> Vec<Fragment> {
    let n = adj.len();
    let mut out = Vec::new();
    for u in 0..n {
        if !in_h[u] {
            continue;
        }
        for &v in &adj[u] {
            if u < v && in_h[v] && !h_edges.contains(&(u, v)) {
                out.push(Fragment {
                    attachments: BTreeSet::from([u, v]),
                    inner: BTreeSet::new(),
                    chord: Some((u, v)),
                });
            }
        }
    }
    let mut seen = vec![false; n];
    for s in 0..n {
        if in_h[s] || seen[s] {
            continue;
        }
        let mut inner = BTreeSet::new();
        let mut attachments = BTreeSet::new();
        let mut queue = VecDeque::from([s]);
        seen[s] = true;
        while let Some(v) = queue.pop_front() {
            inner.insert(v);
            for &w in &adj[v] {
                if in_h[w] {
                    attachments.insert(w);
                } else if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        out.push(Fragment {
            attachments,
            inner,
            chord: None,
        });
    }
    out
}

/// A path through the fragment joining two distinct attachment vertices.
fn fragment_path(adj: &[BTreeSet<usize>], frag: &Fragment, in_h: &[bool]) -> Vec<usize> {
    if let Some((u, v)) = frag.chord {
        return vec![u, v];
    }
    let start = *frag.attachments.iter().next().expect("attachment");
    let first = *adj[start]
        .iter()
        .find(|w| frag.inner.contains(w))
        .expect("attachment touches fragment");
    let mut prev = std::collections::HashMap::new();
    let mut queue = VecDeque::from([first]);
    prev.insert(first, start);
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if in_h[w] {
                if w != start {
                    let mut path = vec![w, v];
                    let mut x = v;
                    while x != first {
                        x = prev[&x];
                        path.push(x);
                    }
                    path.push(start);
                    path.reverse();
                    return path;
                }
            } else if frag.inner.contains(&w) && !prev.contains_key(&w) {
                prev.insert(w, v);
                queue.push_back(w);
            }
        }
    }
    unreachable!("fragment of a biconnected block has two attachments")
}

fn extract_witness(g: &Graph) -> KuratowskiWitness {
    let mut kept: Vec<usize> = (0..g.edge_count()).collect();
    let mut i = 0;
    while i < kept.len() {
        let mut trial = kept.clone();
        trial.remove(i);
        if edges_planar(g, &trial) {
            i += 1;
        } else {
            kept = trial;
        }
    }
    witness_from_minimal(g, &kept)
}

/// Reads off branch vertices and branch paths of an edge-minimal non-planar
/// edge set, which by Kuratowski's theorem is a K5 or K3,3 subdivision.
fn witness_from_minimal(g: &Graph, edge_ids: &[usize]) -> KuratowskiWitness {
    let n = g.vertex_count();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &e in edge_ids {
        let (u, v) = g.edges()[e];
        adj[u].push(v);
        adj[v].push(u);
    }
    for a in &mut adj {
        a.sort_unstable();
    }
    let branch: Vec<usize> = (0..n).filter(|&v| adj[v].len() >= 3).collect();
    let kind = if branch.len() == 5 {
        KuratowskiKind::K5
    } else {
        KuratowskiKind::K33
    };
    let mut paths = Vec::new();
    let mut done: HashSet<(usize, usize)> = HashSet::new();
    for &b in &branch {
        for &first in &adj[b] {
            let mut path = vec![b, first];
            let (mut prev, mut cur) = (b, first);
            while adj[cur].len() == 2 {
                let next = if adj[cur][0] == prev { adj[cur][1] } else { adj[cur][0] };
                prev = cur;
                cur = next;
                path.push(cur);
            }
            let key = (path[0].min(cur), path[0].max(cur));
            // first and last edge identify the path even among parallels
            let tag = (path[1].min(path[path.len() - 2]), path[1].max(path[path.len() - 2]));
            if done.insert((key.0 * n + key.1, tag.0 * n + tag.1)) {
                paths.push(path.iter().map(|&v| g.label(v).to_string()).collect());
            }
        }
    }
    KuratowskiWitness {
        kind,
        branch_vertices: branch.iter().map(|&v| g.label(v).to_string()).collect(),
        paths,
    }
}
