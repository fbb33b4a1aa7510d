//! Almost embeddings: maps under which disjoint closed cells have disjoint
//! images.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::LinkingError;
use crate::complex::SimplicialComplex;
use crate::geometry::{closed_meet, random_embedding, RationalPoint};
use crate::graph::{complete_bipartite, complete_graph, Graph};

/// Image of one closed cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CellImage {
    /// Closed cells of a target cell complex, each given by its vertices.
    /// Two such images meet iff they share a vertex.
    Combinatorial(Vec<Vec<String>>),
    /// A union of closed linear simplices.
    Geometric(Vec<Vec<RationalPoint>>),
}

impl CellImage {
    fn vertices(cells: &[Vec<String>]) -> BTreeSet<&str> {
        cells.iter().flatten().map(String::as_str).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    /// Vertices of the closed source cell; faces are cells with smaller
    /// support.
    pub support: Vec<String>,
    pub image: CellImage,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlmostEmbeddingInstance {
    pub name: String,
    pub cells: Vec<Cell>,
}

/// A pair of disjoint cells with meeting images.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub first: Vec<String>,
    pub second: Vec<String>,
}

fn images_meet(a: &CellImage, b: &CellImage) -> Result<bool, LinkingError> {
    match (a, b) {
        (CellImage::Combinatorial(x), CellImage::Combinatorial(y)) => {
            let xs = CellImage::vertices(x);
            Ok(CellImage::vertices(y).iter().any(|v| xs.contains(v)))
        }
        (CellImage::Geometric(x), CellImage::Geometric(y)) => Ok(x.iter().any(|s| {
            let s: Vec<&RationalPoint> = s.iter().collect();
            y.iter().any(|t| closed_meet(&s, &t.iter().collect::<Vec<_>>()))
        })),
        _ => Err(LinkingError::IllDefined("mixed combinatorial and geometric images".into())),
    }
}

/// Whether every piece of `face` lies inside one piece of `cell`.
fn contained(face: &CellImage, cell: &CellImage) -> bool {
    match (face, cell) {
        (CellImage::Combinatorial(x), CellImage::Combinatorial(y)) => x.iter().all(|f| {
            y.iter()
                .any(|c| f.iter().all(|v| c.contains(v)))
        }),
        (CellImage::Geometric(x), CellImage::Geometric(y)) => x.iter().all(|f| {
            y.iter().any(|c| {
                let c: Vec<&RationalPoint> = c.iter().collect();
                f.iter().all(|p| closed_meet(&[p], &c))
            })
        }),
        _ => false,
    }
}

fn is_proper_subset(a: &[String], b: &[String]) -> bool {
    a.len() < b.len() && a.iter().all(|v| b.contains(v))
}

/// `Ok(None)` when the map is an almost embedding, otherwise the first
/// violating pair of disjoint cells.
pub fn almost_embedding_check(inst: &AlmostEmbeddingInstance) -> Result<Option<Violation>, LinkingError> {
    for a in &inst.cells {
        for b in &inst.cells {
            if is_proper_subset(&a.support, &b.support) && !contained(&a.image, &b.image) {
                return Err(LinkingError::IllDefined(format!(
                    "image of {:?} is not inside the image of {:?}",
                    a.support, b.support
                )));
            }
        }
    }
    for (i, a) in inst.cells.iter().enumerate() {
        for b in &inst.cells[i + 1..] {
            if a.support.iter().any(|v| b.support.contains(v)) {
                continue;
            }
            if images_meet(&a.image, &b.image)? {
                return Ok(Some(Violation {
                    first: a.support.clone(),
                    second: b.support.clone(),
                }));
            }
        }
    }
    Ok(None)
}

/// Cells of a path `v_0 v_1 ... v_k` in a graph: its vertices and edges.
fn path_cells(path: &[String]) -> Vec<Vec<String>> {
    let mut cells: Vec<Vec<String>> = path.iter().map(|v| vec![v.clone()]).collect();
    for w in path.windows(2) {
        let mut e = w.to_vec();
        e.sort();
        cells.push(e);
    }
    cells
}

/// Lexicographically least among the shortest paths from `s` to `t`.
fn shortest_path(g: &Graph, s: usize, t: usize) -> Vec<String> {
    let mut dist = vec![usize::MAX; g.vertex_count()];
    dist[t] = 0;
    let mut queue = VecDeque::from([t]);
    while let Some(u) = queue.pop_front() {
        for w in g.neighbors(u) {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    // greedy descent toward t with least label at each step is
    // lexicographically least since all candidates have equal length
    let mut path = vec![g.label(s).to_string()];
    let mut u = s;
    while u != t {
        u = g
            .neighbors(u)
            .filter(|&w| dist[w] + 1 == dist[u])
            .min_by(|&a, &b| g.label(a).cmp(g.label(b)))
            .expect("connected target");
        path.push(g.label(u).to_string());
    }
    path
}

/// Graph-to-graph map: vertex images given, edges sent to shortest paths.
fn graph_map(name: &str, source: &Graph, target: &Graph, vertex_image: &BTreeMap<String, String>) -> AlmostEmbeddingInstance {
    let mut cells = Vec::new();
    for v in source.labels() {
        cells.push(Cell {
            support: vec![v.clone()],
            image: CellImage::Combinatorial(vec![vec![vertex_image[v].clone()]]),
        });
    }
    for &(u, v) in source.edges() {
        let (lu, lv) = (source.label(u), source.label(v));
        let s = target.index_of(&vertex_image[lu]).expect("image vertex");
        let t = target.index_of(&vertex_image[lv]).expect("image vertex");
        let mut support = vec![lu.to_string(), lv.to_string()];
        support.sort();
        cells.push(Cell {
            support,
            image: CellImage::Combinatorial(path_cells(&shortest_path(target, s, t))),
        });
    }
    AlmostEmbeddingInstance {
        name: name.to_string(),
        cells,
    }
}

/// K3,3 with the edge `a1 b1` subdivided at `m`.
pub fn k5_k33_target() -> Graph {
    complete_bipartite(3, 3)
        .subdivide_edge("a1", "b1", "m")
        .expect("a1 b1 is an edge")
}

/// K5 into K3,3: vertex `1` to the midpoint `m` of `a1 b1`, vertices
/// `2..5` to `a2, a3, b2, b3`, edges to shortest arcs.
pub fn k5_into_k33_map() -> AlmostEmbeddingInstance {
    let images = [("1", "m"), ("2", "a2"), ("3", "a3"), ("4", "b2"), ("5", "b3")];
    let map = images.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
    graph_map("K5 -> K3,3", &complete_graph(5), &k5_k33_target(), &map)
}

/// [`k5_into_k33_map`] conjugated by a random relabeling of K5 and a random
/// automorphism of K3,3 (which moves the subdivided edge along).
pub fn random_k5_k33_instance(seed: u64) -> (AlmostEmbeddingInstance, Graph) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut a = ["a1", "a2", "a3"];
    let mut b = ["b1", "b2", "b3"];
    a.shuffle(&mut rng);
    b.shuffle(&mut rng);
    let (a, b) = if rng.gen_bool(0.5) { (b, a) } else { (a, b) };
    let auto: BTreeMap<&str, &str> = ["a1", "a2", "a3"]
        .iter()
        .zip(&a)
        .chain(["b1", "b2", "b3"].iter().zip(&b))
        .map(|(x, y)| (*x, *y))
        .collect();
    let target = complete_bipartite(3, 3)
        .subdivide_edge(auto["a1"], auto["b1"], "m")
        .expect("automorphism preserves edges");
    let mut perm: Vec<String> = (1..=5).map(|v| v.to_string()).collect();
    perm.shuffle(&mut rng);
    let rename_source = |v: &String| perm[v.parse::<usize>().expect("K5 label") - 1].clone();
    let rename_target = |x: &String| auto.get(x.as_str()).map_or(x.clone(), |y| y.to_string());
    let canonical = k5_into_k33_map();
    let cells = canonical
        .cells
        .iter()
        .map(|c| {
            let CellImage::Combinatorial(image) = &c.image else { unreachable!() };
            Cell {
                support: c.support.iter().map(rename_source).sorted().collect(),
                image: CellImage::Combinatorial(
                    image.iter().map(|cell| cell.iter().map(rename_target).sorted().collect()).collect(),
                ),
            }
        })
        .collect();
    (
        AlmostEmbeddingInstance {
            name: format!("K5 -> K3,3 (seed {seed})"),
            cells,
        },
        target,
    )
}

/// The identity of a graph, an embedding.
pub fn identity_instance(g: &Graph) -> AlmostEmbeddingInstance {
    let map = g.labels().iter().map(|l| (l.clone(), l.clone())).collect();
    graph_map(&format!("id {}", g.name()), g, g, &map)
}

/// `g` onto its barycentric subdivision; each edge onto its two halves.
pub fn subdivision_instance(g: &Graph) -> (AlmostEmbeddingInstance, Graph) {
    let target = g.subdivide_all();
    let map = g.labels().iter().map(|l| (l.clone(), l.clone())).collect();
    (graph_map(&format!("sd {}", g.name()), g, &target, &map), target)
}

fn pair_label(x: &str, y: &str) -> String {
    format!("({x},{y})")
}

/// Cellwise product map `K x K' -> T x T'` of two combinatorial instances.
pub fn product_instance(
    a: &AlmostEmbeddingInstance,
    b: &AlmostEmbeddingInstance,
) -> Result<AlmostEmbeddingInstance, LinkingError> {
    let mut cells = Vec::with_capacity(a.cells.len() * b.cells.len());
    for ca in &a.cells {
        for cb in &b.cells {
            let (CellImage::Combinatorial(ia), CellImage::Combinatorial(ib)) = (&ca.image, &cb.image) else {
                return Err(LinkingError::IllDefined("products need combinatorial images".into()));
            };
            let support = ca
                .support
                .iter()
                .cartesian_product(&cb.support)
                .map(|(x, y)| pair_label(x, y))
                .sorted()
                .collect();
            let image = ia
                .iter()
                .cartesian_product(ib)
                .map(|(p, q)| p.iter().cartesian_product(q).map(|(x, y)| pair_label(x, y)).collect())
                .collect();
            cells.push(Cell {
                support,
                image: CellImage::Combinatorial(image),
            });
        }
    }
    Ok(AlmostEmbeddingInstance {
        name: format!("{} x {}", a.name, b.name),
        cells,
    })
}

/// Composes a combinatorial instance into the graph `target` with a seeded
/// straight-line embedding of `target` in `Q^3`.
pub fn compose_with_embedding(
    inst: &AlmostEmbeddingInstance,
    target: &Graph,
    seed: u64,
) -> Result<AlmostEmbeddingInstance, LinkingError> {
    let edges: Vec<Vec<String>> = target
        .edges()
        .iter()
        .map(|&(u, v)| vec![target.label(u).to_string(), target.label(v).to_string()])
        .collect();
    let complex = SimplicialComplex::new(target.labels(), &edges)?;
    let e = random_embedding(&complex, 3, seed)?;
    let mut cells = Vec::with_capacity(inst.cells.len());
    for c in &inst.cells {
        let CellImage::Combinatorial(image) = &c.image else {
            return Err(LinkingError::IllDefined("already geometric".into()));
        };
        let simplices = image
            .iter()
            .map(|cell| {
                let ok = match cell.as_slice() {
                    [_] => true,
                    [x, y] => target
                        .index_of(x)
                        .zip(target.index_of(y))
                        .is_some_and(|(u, v)| target.has_edge(u, v)),
                    _ => false,
                };
                if !ok {
                    return Err(LinkingError::IllDefined(format!("{cell:?} is not a cell of the target")));
                }
                cell.iter()
                    .map(|l| {
                        e.point_of(l)
                            .cloned()
                            .ok_or_else(|| LinkingError::IllDefined(format!("unknown target vertex {l}")))
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        cells.push(Cell {
            support: c.support.clone(),
            image: CellImage::Geometric(simplices),
        });
    }
    Ok(AlmostEmbeddingInstance {
        name: format!("{} in R^3 (seed {seed})", inst.name),
        cells,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::cycle_graph;

    fn image_of<'a>(inst: &'a AlmostEmbeddingInstance, support: &[&str]) -> &'a CellImage {
        &inst.cells.iter().find(|c| c.support == support).unwrap().image
    }

    #[test]
    fn k5_map_is_an_almost_embedding() {
        let inst = k5_into_k33_map();
        assert_eq!(inst.cells.len(), 15);
        assert_eq!(almost_embedding_check(&inst).unwrap(), None);
        assert_eq!(image_of(&inst, &["1"]), &CellImage::Combinatorial(vec![vec!["m".into()]]));
        let CellImage::Combinatorial(arc) = image_of(&inst, &["2", "3"]) else { panic!() };
        let verts: Vec<&str> = arc.iter().filter(|c| c.len() == 1).map(|c| c[0].as_str()).collect();
        assert_eq!(verts, ["a2", "b1", "a3"]);
    }

    #[test]
    fn collapsing_two_edges_is_caught() {
        let seg = |a: [i64; 2], b: [i64; 2]| vec![RationalPoint::from_ints(&a), RationalPoint::from_ints(&b)];
        let pt = |a: [i64; 2]| vec![RationalPoint::from_ints(&a)];
        let cell = |s: &[&str], image: Vec<Vec<RationalPoint>>| Cell {
            support: s.iter().map(|x| x.to_string()).collect(),
            image: CellImage::Geometric(image),
        };
        let inst = AlmostEmbeddingInstance {
            name: "fold".into(),
            cells: vec![
                cell(&["u", "v"], vec![seg([0, 0], [4, 0])]),
                cell(&["x", "y"], vec![seg([0, 0], [4, 0])]),
                cell(&["u"], vec![pt([0, 0])]),
                cell(&["v"], vec![pt([4, 0])]),
                cell(&["x"], vec![pt([1, 0])]),
                cell(&["y"], vec![pt([3, 0])]),
            ],
        };
        let v = almost_embedding_check(&inst).unwrap().unwrap();
        assert_eq!(v.first, ["u", "v"]);
        assert_eq!(v.second, ["x", "y"]);
    }

    #[test]
    fn ill_defined_map_is_an_error() {
        let mut inst = identity_instance(&cycle_graph(4).unwrap());
        inst.cells[0].image = CellImage::Combinatorial(vec![vec!["3".into()]]);
        assert!(matches!(almost_embedding_check(&inst), Err(LinkingError::IllDefined(_))));
    }

    #[test]
    fn closure_under_products_and_composition() {
        let (a, _) = random_k5_k33_instance(3);
        let (b, tb) = subdivision_instance(&cycle_graph(3).unwrap());
        assert_eq!(almost_embedding_check(&a).unwrap(), None);
        assert_eq!(almost_embedding_check(&b).unwrap(), None);
        let p = product_instance(&a, &b).unwrap();
        assert_eq!(p.cells.len(), 15 * 6);
        assert_eq!(almost_embedding_check(&p).unwrap(), None);
        let c = compose_with_embedding(&b, &tb, 5).unwrap();
        assert_eq!(almost_embedding_check(&c).unwrap(), None);
    }
}
