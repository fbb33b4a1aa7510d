//! Independent oracles used by the integration tests.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use prodembed::geometry::{GeometricComplex, Parity, RationalPoint};
use prodembed::graph::Graph;

/// Brute-force search for a subdivision of K5 or K3,3: pick branch vertices,
/// then route every pattern edge through unused non-branch vertices.
pub fn brute_force_planar(g: &Graph) -> bool {
    let n = g.vertex_count();
    let adj: Vec<Vec<bool>> = (0..n).map(|u| (0..n).map(|v| g.has_edge(u, v)).collect()).collect();
    !(has_k5_subdivision(&adj) || has_k33_subdivision(&adj))
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

fn has_k5_subdivision(adj: &[Vec<bool>]) -> bool {
    let n = adj.len();
    for b in subsets(n, 5) {
        let pattern: Vec<(usize, usize)> = subsets(5, 2).iter().map(|e| (b[e[0]], b[e[1]])).collect();
        if route(adj, &b, &pattern) {
            return true;
        }
    }
    false
}

fn has_k33_subdivision(adj: &[Vec<bool>]) -> bool {
    let n = adj.len();
    for six in subsets(n, 6) {
        // sides containing six[0] on the left
        for rest in subsets(5, 2) {
            let left = [six[0], six[1 + rest[0]], six[1 + rest[1]]];
            let right: Vec<usize> = six[1..].iter().copied().filter(|v| !left.contains(v)).collect();
            let pattern: Vec<(usize, usize)> = left.iter().flat_map(|&a| right.iter().map(move |&b| (a, b))).collect();
            if route(adj, &six, &pattern) {
                return true;
            }
        }
    }
    false
}

fn route(adj: &[Vec<bool>], branch: &[usize], pattern: &[(usize, usize)]) -> bool {
    let mut used = vec![false; adj.len()];
    for &b in branch {
        used[b] = true;
    }
    route_from(adj, pattern, 0, &mut used)
}

fn route_from(adj: &[Vec<bool>], pattern: &[(usize, usize)], i: usize, used: &mut Vec<bool>) -> bool {
    if i == pattern.len() {
        return true;
    }
    let (s, t) = pattern[i];
    walk(adj, pattern, i, s, t, used)
}

/// Extends a path at `u` toward `t`, recursing into the next pattern edge
/// once `t` is reached.
fn walk(adj: &[Vec<bool>], pattern: &[(usize, usize)], i: usize, u: usize, t: usize, used: &mut Vec<bool>) -> bool {
    if adj[u][t] && route_from(adj, pattern, i + 1, used) {
        return true;
    }
    for w in 0..adj.len() {
        if adj[u][w] && !used[w] {
            used[w] = true;
            if walk(adj, pattern, i, w, t, used) {
                return true;
            }
            used[w] = false;
        }
    }
    false
}

fn q(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Mod-2 linking of two closed polygons in `Q^3` by counting crossings of a
/// generic planar projection where the first passes over the second.
/// `None` if every tried projection is degenerate.
pub fn projection_linking(a: &[[BigRational; 3]], b: &[[BigRational; 3]]) -> Option<Parity> {
    for (sx, sy) in [(0, 0), (1, 3), (2, -5), (-7, 11), (13, 17), (-19, 23)] {
        // project along (sx, sy, 1)-ish: (x - sx z, y - sy z), height z
        let proj = |p: &[BigRational; 3]| {
            (
                &p[0] - q(sx) * &p[2] / q(97),
                &p[1] - q(sy) * &p[2] / q(89),
                p[2].clone(),
            )
        };
        let pa: Vec<_> = a.iter().map(proj).collect();
        let pb: Vec<_> = b.iter().map(proj).collect();
        if let Some(count) = over_crossings(&pa, &pb) {
            return Some(Parity::from(count));
        }
    }
    None
}

type P3 = (BigRational, BigRational, BigRational);

fn over_crossings(a: &[P3], b: &[P3]) -> Option<usize> {
    let mut count = 0;
    for i in 0..a.len() {
        let (p0, p1) = (&a[i], &a[(i + 1) % a.len()]);
        for j in 0..b.len() {
            let (q0, q1) = (&b[j], &b[(j + 1) % b.len()]);
            // p0 + s (p1 - p0) = q0 + t (q1 - q0) in the plane
            let (dx, dy) = (&p1.0 - &p0.0, &p1.1 - &p0.1);
            let (ex, ey) = (&q1.0 - &q0.0, &q1.1 - &q0.1);
            let (rx, ry) = (&q0.0 - &p0.0, &q0.1 - &p0.1);
            let den = &dx * &ey - &dy * &ex;
            if den.is_zero() {
                // parallel projected edges: only degenerate if collinear
                if (&rx * &dy - &ry * &dx).is_zero() {
                    return None;
                }
                continue;
            }
            let s = (&rx * &ey - &ry * &ex) / &den;
            let t = (&rx * &dy - &ry * &dx) / &den;
            let zero = BigRational::zero();
            let one = BigRational::one();
            if s < zero || s > one || t < zero || t > one {
                continue;
            }
            if s == zero || s == one || t == zero || t == one {
                return None;
            }
            let za = &p0.2 + &s * (&p1.2 - &p0.2);
            let zb = &q0.2 + &t * (&q1.2 - &q0.2);
            if za == zb {
                return None;
            }
            if (za - zb).is_positive() {
                count += 1;
            }
        }
    }
    Some(count)
}

pub fn point3(p: &RationalPoint) -> [BigRational; 3] {
    let c = p.coords();
    [c[0].clone(), c[1].clone(), c[2].clone()]
}

/// Cyclic vertex order of a 1-dimensional sphere complex.
pub fn cycle_order(g: &GeometricComplex) -> Vec<usize> {
    let c = g.complex();
    let n = c.vertex_count();
    let mut order = vec![0];
    let mut prev = usize::MAX;
    while order.len() < n {
        let u = *order.last().unwrap();
        let next = c
            .facets()
            .iter()
            .filter(|f| f.len() == 2 && f.contains(&u))
            .map(|f| if f[0] == u { f[1] } else { f[0] })
            .find(|&w| w != prev && !order.contains(&w))
            .expect("cycle");
        prev = u;
        order.push(next);
    }
    order
}

pub fn polygon_of(g: &GeometricComplex) -> Vec<[BigRational; 3]> {
    cycle_order(g).iter().map(|&v| point3(g.point(v))).collect()
}
