//! Links of vertices in products of graphs, and the two tori used to pass
//! from linked spheres in `Lk O` to closed surfaces in `(K5)^n`.

use std::collections::BTreeSet;

use itertools::Itertools;
use serde::Serialize;

use super::{skeleton_complex, ComplexError, SimplicialComplex};
use crate::graph::{complete_graph, Graph};
use crate::linking::JoinSphere;

/// Link of `O_1 x ... x O_n` in a product of graphs whose vertices `O_k`
/// have the given degrees: the join of discrete sets of those sizes.
pub fn product_vertex_link(degrees: &[usize]) -> Result<SimplicialComplex, ComplexError> {
    if degrees.is_empty() {
        return Err(ComplexError::EmptyDegrees);
    }
    let mut acc: Option<SimplicialComplex> = None;
    for (k, &d) in degrees.iter().enumerate() {
        if d == 0 {
            return Err(ComplexError::ZeroDegree);
        }
        let factor = skeleton_complex(0, d - 1)?.relabel(|l| format!("g{}:{l}", k + 1))?;
        acc = Some(match acc {
            None => factor,
            Some(a) => a.join(&factor),
        });
    }
    Ok(acc.expect("non-empty"))
}

/// Link of `(u, v)` in the product cell complex `g x h`, assembled from the
/// square cells `e x f` with `e ∋ u`, `f ∋ v`.
///
/// Each such square contributes the arc joining `(u', v)` to `(u, v')`,
/// where `e = uu'` and `f = vv'`.
pub fn direct_product_link_2(g: &Graph, h: &Graph, u: &str, v: &str) -> Result<SimplicialComplex, ComplexError> {
    let iu = g.index_of(u).ok_or_else(|| ComplexError::UnknownVertex(u.to_string()))?;
    let iv = h.index_of(v).ok_or_else(|| ComplexError::UnknownVertex(v.to_string()))?;
    let mut vertices = Vec::new();
    for a in g.neighbors(iu) {
        vertices.push(format!("({},{})", g.label(a), v));
    }
    for b in h.neighbors(iv) {
        vertices.push(format!("({},{})", u, h.label(b)));
    }
    let mut edges = Vec::new();
    for a in g.neighbors(iu) {
        for b in h.neighbors(iv) {
            edges.push(vec![
                format!("({},{})", g.label(a), v),
                format!("({},{})", u, h.label(b)),
            ]);
        }
    }
    SimplicialComplex::new(&vertices, &edges)
}

/// A cell of a product of graphs: one vertex set (a vertex or an edge) per
/// factor.
type ProductCell = Vec<Vec<usize>>;

fn product_cells(per_factor: &[Vec<Vec<usize>>]) -> BTreeSet<ProductCell> {
    per_factor
        .iter()
        .map(|cells| cells.iter().cloned())
        .multi_cartesian_product()
        .collect()
}

/// Cells of the cycle `o a c` in one factor.
fn triangle_cells(o: usize, a: usize, c: usize) -> Vec<Vec<usize>> {
    let mut cells = vec![vec![o], vec![a], vec![c]];
    for (x, y) in [(o, a), (a, c), (o, c)] {
        cells.push(vec![x.min(y), x.max(y)]);
    }
    cells
}

/// Cells of the cone from `o` over the two points `a`, `c`.
fn cone_cells(o: usize, a: usize, c: usize) -> Vec<Vec<usize>> {
    vec![
        vec![o],
        vec![a],
        vec![c],
        vec![o.min(a), o.max(a)],
        vec![o.min(c), o.max(c)],
    ]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorusPairReport {
    pub n: usize,
    pub alpha_torus_vertices: usize,
    pub beta_torus_vertices: usize,
    pub alpha_torus_cells: usize,
    pub contains_cone_alpha: bool,
    pub contains_cone_beta: bool,
    /// Cells common to both tori, e.g. `["(1,1)"]`.
    pub intersection: Vec<String>,
}

impl TorusPairReport {
    pub fn meets_only_at_base(&self) -> bool {
        self.intersection.len() == 1 && !self.intersection[0].contains('{')
    }
}

fn cell_label(g: &Graph, cell: &ProductCell) -> String {
    if cell.iter().all(|c| c.len() == 1) {
        format!("({})", cell.iter().map(|c| g.label(c[0])).join(","))
    } else {
        cell.iter()
            .map(|c| format!("{{{}}}", c.iter().map(|&v| g.label(v)).join(",")))
            .join("x")
    }
}

/// Builds the tori `prod O_k A_k C_k` and `prod O_k B_k D_k` in `(K5)^n`
/// for a complementary pair of join spheres in `Lk O`, and checks
/// combinatorially that they contain the cones over the spheres and meet
/// only in `O`.
///
/// In each factor `O_k` is vertex `1` of K5 and the link index `i` refers
/// to vertex `i + 2`.
pub fn torus_pair_check(n: usize, alpha: &JoinSphere, beta: &JoinSphere) -> Result<TorusPairReport, ComplexError> {
    if alpha.n() != n || beta.n() != n {
        return Err(ComplexError::NotComplementary(format!(
            "expected {n} factors, got {} and {}",
            alpha.n(),
            beta.n()
        )));
    }
    for k in 0..n {
        let a = alpha.selections()[k];
        let b = beta.selections()[k];
        let all: BTreeSet<usize> = a.iter().chain(&b).copied().collect();
        if all != BTreeSet::from([0, 1, 2, 3]) {
            return Err(ComplexError::NotComplementary(format!(
                "factor {}: {:?} and {:?}",
                k + 1,
                a,
                b
            )));
        }
    }
    let k5 = complete_graph(5);
    let o = k5.index_of("1").expect("K5 vertex");
    let link: Vec<usize> = k5.neighbors(o).collect();

    let torus = |s: &JoinSphere| -> BTreeSet<ProductCell> {
        let per: Vec<Vec<Vec<usize>>> = s
            .selections()
            .iter()
            .map(|&[x, y]| triangle_cells(o, link[x], link[y]))
            .collect();
        product_cells(&per)
    };
    let cone = |s: &JoinSphere| -> BTreeSet<ProductCell> {
        let per: Vec<Vec<Vec<usize>>> = s
            .selections()
            .iter()
            .map(|&[x, y]| cone_cells(o, link[x], link[y]))
            .collect();
        product_cells(&per)
    };
    let t_alpha = torus(alpha);
    let t_beta = torus(beta);
    // every torus cell must be a cell of (K5)^n
    let in_product = |cells: &BTreeSet<ProductCell>| {
        cells
            .iter()
            .all(|cell| cell.iter().all(|c| c.len() == 1 || k5.has_edge(c[0], c[1])))
    };
    debug_assert!(in_product(&t_alpha) && in_product(&t_beta));

    let vertices = |cells: &BTreeSet<ProductCell>| cells.iter().filter(|c| c.iter().all(|x| x.len() == 1)).count();
    let intersection: Vec<String> = t_alpha
        .intersection(&t_beta)
        .map(|cell| cell_label(&k5, cell))
        .collect();
    Ok(TorusPairReport {
        n,
        alpha_torus_vertices: vertices(&t_alpha),
        beta_torus_vertices: vertices(&t_beta),
        alpha_torus_cells: t_alpha.len(),
        contains_cone_alpha: cone(alpha).is_subset(&t_alpha),
        contains_cone_beta: cone(beta).is_subset(&t_beta),
        intersection,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_bipartite, cycle_graph};

    #[test]
    fn link_formula_examples() {
        assert_eq!(product_vertex_link(&[4, 4]).unwrap().join_signature(), Some(vec![4, 4]));
        let l3 = product_vertex_link(&[4, 4, 4]).unwrap();
        assert_eq!(l3.join_signature(), Some(vec![4, 4, 4]));
        assert!(l3.same_faces(&SimplicialComplex::join_power(&skeleton_complex(0, 3).unwrap(), 3)));
        assert_eq!(product_vertex_link(&[3, 3]).unwrap().join_signature(), Some(vec![3, 3]));
        assert!(matches!(product_vertex_link(&[]), Err(ComplexError::EmptyDegrees)));
        assert!(matches!(product_vertex_link(&[2, 0]), Err(ComplexError::ZeroDegree)));
    }

    #[test]
    fn direct_links() {
        let k5 = complete_graph(5);
        let lk = direct_product_link_2(&k5, &k5, "1", "3").unwrap();
        assert_eq!(lk.f_vector().0, vec![8, 16]);
        assert_eq!(lk.join_signature(), Some(vec![4, 4]));

        let c4 = cycle_graph(4).unwrap();
        let lk = direct_product_link_2(&c4, &c4, "1", "2").unwrap();
        assert_eq!(lk.join_signature(), Some(vec![2, 2]));
        assert_eq!(lk.f_vector().0, vec![4, 4]);

        let k33 = complete_bipartite(3, 3);
        let lk = direct_product_link_2(&k5, &k33, "2", "b1").unwrap();
        assert_eq!(lk.join_signature(), Some(vec![3, 4]));
        assert!(direct_product_link_2(&k5, &k33, "9", "b1").is_err());
    }

    #[test]
    fn tori_meet_at_base_vertex() {
        let a = JoinSphere::new(vec![[0, 2]]);
        let b = JoinSphere::new(vec![[1, 3]]);
        let r = torus_pair_check(1, &a, &b).unwrap();
        assert_eq!(r.alpha_torus_vertices, 3);
        assert_eq!(r.alpha_torus_cells, 6);
        assert!(r.contains_cone_alpha && r.contains_cone_beta);
        assert_eq!(r.intersection, vec!["(1)".to_string()]);
        assert!(r.meets_only_at_base());

        let a = JoinSphere::new(vec![[0, 2], [0, 1]]);
        let b = JoinSphere::new(vec![[1, 3], [2, 3]]);
        let r = torus_pair_check(2, &a, &b).unwrap();
        assert_eq!((r.alpha_torus_vertices, r.beta_torus_vertices), (9, 9));
        assert_eq!(r.alpha_torus_cells, 36);
        assert!(r.contains_cone_alpha && r.contains_cone_beta);
        assert_eq!(r.intersection, vec!["(1,1)".to_string()]);

        let bad = JoinSphere::new(vec![[0, 2], [0, 3]]);
        assert!(matches!(
            torus_pair_check(2, &a, &bad),
            Err(ComplexError::NotComplementary(_))
        ));
    }
}
