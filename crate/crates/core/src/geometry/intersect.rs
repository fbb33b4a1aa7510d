//! Mod-2 intersection and linking numbers of linear simplices.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use super::exact::{affinely_independent, crossing, hulls_intersect, Crossing};
use super::{DegeneracyKind, GeometricComplex, GeometryError, Parity, RationalPoint};

/// Number of cone apexes tried before giving up.
pub const APEX_ATTEMPTS: usize = 32;

fn check_dims(points: &[&RationalPoint], d: usize) -> Result<(), GeometryError> {
    match points.iter().find(|p| p.dim() != d) {
        Some(p) => Err(GeometryError::DimensionMismatch {
            expected: d,
            found: p.dim(),
        }),
        None => Ok(()),
    }
}

/// Parity of the intersection of two open simplices of complementary
/// dimension, `1` for a single transversal crossing.
pub fn simplex_intersection_parity(s: &[RationalPoint], t: &[RationalPoint]) -> Result<Parity, GeometryError> {
    let s: Vec<&RationalPoint> = s.iter().collect();
    let t: Vec<&RationalPoint> = t.iter().collect();
    simplex_parity(&s, &t)
}

pub(crate) fn simplex_parity(s: &[&RationalPoint], t: &[&RationalPoint]) -> Result<Parity, GeometryError> {
    if s.is_empty() || t.is_empty() {
        return Err(GeometryError::AffineDependence);
    }
    let d = s[0].dim();
    check_dims(s, d)?;
    check_dims(t, d)?;
    if s.len() + t.len() != d + 2 {
        return Err(GeometryError::DimensionMismatch {
            expected: d,
            found: s.len() + t.len() - 2,
        });
    }
    if !affinely_independent(s) || !affinely_independent(t) {
        return Err(GeometryError::AffineDependence);
    }
    match crossing(s, t) {
        Crossing::Interior => Ok(Parity::ONE),
        Crossing::Outside => Ok(Parity::ZERO),
        Crossing::Singular => Err(GeometryError::degenerate(DegeneracyKind::Singular)),
        Crossing::Boundary => Err(GeometryError::degenerate(DegeneracyKind::BoundaryContact)),
    }
}

/// Whether two closed simplices meet, in any dimensions.
pub fn closed_simplices_intersect(s: &[RationalPoint], t: &[RationalPoint]) -> bool {
    let s: Vec<&RationalPoint> = s.iter().collect();
    let t: Vec<&RationalPoint> = t.iter().collect();
    closed_meet(&s, &t)
}

pub(crate) fn closed_meet(s: &[&RationalPoint], t: &[&RationalPoint]) -> bool {
    let d = s.first().map_or(0, |p| p.dim());
    // affinely independent union with room to spare: hulls are disjoint
    if s.len() + t.len() <= d + 1 {
        let all: Vec<&RationalPoint> = s.iter().chain(t).copied().collect();
        if affinely_independent(&all) {
            return false;
        }
    }
    hulls_intersect(s, t)
}

fn top_simplices(g: &GeometricComplex) -> Vec<Vec<usize>> {
    let top = g.complex().dim();
    g.complex()
        .facets()
        .iter()
        .filter(|f| f.len() as isize == top + 1)
        .cloned()
        .collect()
}

fn with_pair(e: GeometryError, first: Vec<String>, second: Vec<String>) -> GeometryError {
    match e {
        GeometryError::Degenerate { kind, .. } => GeometryError::Degenerate { kind, first, second },
        other => other,
    }
}

/// Mod-2 intersection number of two complementary-dimensional complexes
/// (pseudomanifolds, possibly with boundary) in `Q^d`: the sum of
/// simplex parities over all pairs of top simplices.
///
/// The boundary of each must miss the image of the other.
pub fn intersection_parity_maps(a: &GeometricComplex, b: &GeometricComplex) -> Result<Parity, GeometryError> {
    let d = a.ambient_dim();
    if b.ambient_dim() != d {
        return Err(GeometryError::DimensionMismatch {
            expected: d,
            found: b.ambient_dim(),
        });
    }
    let (p, q) = (a.complex().dim(), b.complex().dim());
    if p < 0 || q < 0 || (p + q) as usize != d {
        return Err(GeometryError::DimensionMismatch {
            expected: d,
            found: (p + q).max(0) as usize,
        });
    }
    let top_a = top_simplices(a);
    let top_b = top_simplices(b);
    for (x, top_y, bx, y) in [(a, &top_b, a.boundary_simplices(), b), (b, &top_a, b.boundary_simplices(), a)] {
        for face in &bx {
            let fp = x.simplex_points(face);
            for s in top_y {
                if closed_meet(&fp, &y.simplex_points(s)) {
                    return Err(GeometryError::BoundaryCollision {
                        first: x.simplex_labels(face),
                        second: y.simplex_labels(s),
                    });
                }
            }
        }
    }
    let mut total = Parity::ZERO;
    for s in &top_a {
        let sp = a.simplex_points(s);
        for t in &top_b {
            total += simplex_parity(&sp, &b.simplex_points(t))
                .map_err(|e| with_pair(e, a.simplex_labels(s), b.simplex_labels(t)))?;
        }
    }
    Ok(total)
}

/// Linking parity of two simplex lists from one apex: the cone over
/// `alpha` against `beta`.
pub(crate) fn cone_linking(
    alpha: &[Vec<&RationalPoint>],
    beta: &[Vec<&RationalPoint>],
    apex: &RationalPoint,
) -> Result<Parity, GeometryError> {
    let mut total = Parity::ZERO;
    let mut coned: Vec<&RationalPoint> = Vec::new();
    for s in alpha {
        coned.clear();
        coned.extend(s.iter().copied());
        coned.push(apex);
        for t in beta {
            total += simplex_parity(&coned, t)?;
        }
    }
    Ok(total)
}

/// [`cone_linking`] over [`apex_sequence`], skipping degenerate apexes.
pub(crate) fn cone_linking_with_fallback(
    alpha: &[Vec<&RationalPoint>],
    beta: &[Vec<&RationalPoint>],
    d: usize,
) -> Result<Parity, GeometryError> {
    for apex in apex_sequence(d, 0) {
        match cone_linking(alpha, beta, &apex) {
            Err(e) if e.is_degeneracy() => continue,
            r => return r,
        }
    }
    Err(GeometryError::ApexExhausted(APEX_ATTEMPTS))
}

fn simplex_lists(g: &GeometricComplex) -> Vec<Vec<&RationalPoint>> {
    top_simplices(g).iter().map(|s| g.simplex_points(s)).collect()
}

/// Mod-2 linking number of disjoint spheres `alpha`, `beta` in `Q^d`,
/// counted as intersections of the cone over `alpha` from `apex` with
/// `beta`.
pub fn linking_parity_cone(
    alpha: &GeometricComplex,
    beta: &GeometricComplex,
    apex: &RationalPoint,
) -> Result<Parity, GeometryError> {
    let d = alpha.ambient_dim();
    if beta.ambient_dim() != d || apex.dim() != d {
        return Err(GeometryError::DimensionMismatch {
            expected: d,
            found: if beta.ambient_dim() != d { beta.ambient_dim() } else { apex.dim() },
        });
    }
    cone_linking(&simplex_lists(alpha), &simplex_lists(beta), apex)
}

/// [`linking_parity_cone`] with apexes from [`apex_sequence`].
pub fn linking_parity(alpha: &GeometricComplex, beta: &GeometricComplex) -> Result<Parity, GeometryError> {
    let d = alpha.ambient_dim();
    if beta.ambient_dim() != d {
        return Err(GeometryError::DimensionMismatch {
            expected: d,
            found: beta.ambient_dim(),
        });
    }
    cone_linking_with_fallback(&simplex_lists(alpha), &simplex_lists(beta), d)
}

const APEX_BASE: [i64; 8] = [
    1_000_003, -999_979, 1_000_033, -1_000_037, 999_961, -1_000_081, 1_000_099, -999_953,
];

/// Deterministic apex candidates in `Q^d`: a fixed base point, then the
/// base shifted by `k (1, k, k^2, ...)` plus `offset` on the first axis.
pub fn apex_sequence(d: usize, offset: i64) -> impl Iterator<Item = RationalPoint> {
    (0..APEX_ATTEMPTS as i64).map(move |k| {
        let coords = (0..d)
            .map(|i| {
                let mut x = BigInt::from(APEX_BASE[i % APEX_BASE.len()]) * (1 + i / APEX_BASE.len());
                if k > 0 {
                    x += BigInt::from(k) * BigInt::from(k).pow(i as u32);
                }
                if i == 0 {
                    x += offset;
                }
                BigRational::from_integer(x)
            })
            .collect();
        RationalPoint::new(coords)
    })
}

/// Outcome of [`general_position_check`]; a failing pair of simplices is
/// given by labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneralPosition {
    pub ok: bool,
    pub certificate: Option<(Vec<String>, Vec<String>)>,
}

impl GeneralPosition {
    fn fail(g: &GeometricComplex, s: &[usize], t: &[usize]) -> Self {
        GeneralPosition {
            ok: false,
            certificate: Some((g.simplex_labels(s), g.simplex_labels(t))),
        }
    }
}

/// Checks every simplex is non-degenerate and every pair of vertex-disjoint
/// simplices with dimensions summing to at most `d` is generic: affinely
/// independent vertices when the sum is below `d`, a transversal or empty
/// meeting when it equals `d`.
pub fn general_position_check(g: &GeometricComplex) -> GeneralPosition {
    scan(g, false)
}

/// With `embedding`, complementary pairs must also be disjoint.
pub(crate) fn scan(g: &GeometricComplex, embedding: bool) -> GeneralPosition {
    let d = g.ambient_dim();
    let faces: Vec<Vec<usize>> = g.complex().faces().into_iter().collect();
    for f in g.complex().facets() {
        if f.len() <= d + 1 && !affinely_independent(&g.simplex_points(f)) {
            return GeneralPosition::fail(g, f, &[]);
        }
    }
    let mut pts: Vec<&RationalPoint> = Vec::with_capacity(d + 2);
    for (i, s) in faces.iter().enumerate() {
        for t in &faces[i + 1..] {
            let dims = s.len() + t.len() - 2;
            if dims > d || s.iter().any(|v| t.contains(v)) {
                continue;
            }
            if dims < d {
                pts.clear();
                pts.extend(s.iter().chain(t).map(|&v| g.point(v)));
                if !affinely_independent(&pts) {
                    return GeneralPosition::fail(g, s, t);
                }
            } else {
                match crossing(&g.simplex_points(s), &g.simplex_points(t)) {
                    Crossing::Singular | Crossing::Boundary => return GeneralPosition::fail(g, s, t),
                    Crossing::Interior if embedding => return GeneralPosition::fail(g, s, t),
                    _ => {}
                }
            }
        }
    }
    GeneralPosition {
        ok: true,
        certificate: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{skeleton_complex, SimplicialComplex};

    fn p(c: &[i64]) -> RationalPoint {
        RationalPoint::from_ints(c)
    }

    fn pts(c: &[&[i64]]) -> Vec<RationalPoint> {
        c.iter().map(|x| p(x)).collect()
    }

    #[test]
    fn simplex_parity_examples() {
        let par = |s: &[&[i64]], t: &[&[i64]]| simplex_intersection_parity(&pts(s), &pts(t));
        assert_eq!(par(&[&[0, 0], &[2, 2]], &[&[0, 2], &[2, 0]]).unwrap(), Parity::ONE);
        assert_eq!(par(&[&[0, 0], &[1, 1]], &[&[5, 5], &[6, 7]]).unwrap(), Parity::ZERO);
        assert_eq!(
            par(&[&[0, 0, 0], &[4, 0, 0], &[0, 4, 0]], &[&[1, 1, -1], &[1, 1, 1]]).unwrap(),
            Parity::ONE
        );
        assert!(matches!(
            par(&[&[0, 0], &[2, 2]], &[&[2, 2], &[3, 0]]),
            Err(GeometryError::Degenerate { .. })
        ));
        assert!(matches!(
            par(&[&[0, 0], &[0, 0]], &[&[2, 2], &[3, 0]]),
            Err(GeometryError::AffineDependence)
        ));
        assert!(matches!(
            par(&[&[0, 0, 0], &[1, 0, 0]], &[&[2, 2, 2], &[3, 0, 1]]),
            Err(GeometryError::DimensionMismatch { .. })
        ));
    }

    fn polygon(name: &str, coords: &[&[i64]]) -> GeometricComplex {
        let labels: Vec<String> = (0..coords.len()).map(|i| format!("{name}{i}")).collect();
        let edges: Vec<Vec<String>> = (0..coords.len())
            .map(|i| vec![labels[i].clone(), labels[(i + 1) % coords.len()].clone()])
            .collect();
        let c = SimplicialComplex::new(&labels, &edges).unwrap();
        let d = coords[0].len();
        GeometricComplex::from_points(c, pts(coords), d).unwrap()
    }

    fn points(name: &str, coords: &[&[i64]]) -> GeometricComplex {
        let labels: Vec<String> = (0..coords.len()).map(|i| format!("{name}{i}")).collect();
        let c = SimplicialComplex::new(&labels, &[]).unwrap();
        GeometricComplex::from_points(c, pts(coords), coords[0].len()).unwrap()
    }

    #[test]
    fn closed_curves_meet_evenly() {
        let a = polygon("a", &[&[0, 0], &[10, 1], &[9, 8], &[1, 9]]);
        let b = polygon("b", &[&[5, -3], &[13, 4], &[6, 12]]);
        assert_eq!(intersection_parity_maps(&a, &b).unwrap(), Parity::ZERO);
        let far = polygon("c", &[&[100, 100], &[111, 103], &[105, 120]]);
        assert_eq!(intersection_parity_maps(&a, &far).unwrap(), Parity::ZERO);
    }

    #[test]
    fn zero_spheres_on_a_line() {
        let apex = p(&[7]);
        let a = points("a", &[&[1], &[3]]);
        let b = points("b", &[&[2], &[4]]);
        // in R^1 cones are segments and beta is points
        assert_eq!(linking_parity_cone(&a, &b, &apex).unwrap(), Parity::ONE);
        let a = points("a", &[&[1], &[2]]);
        let b = points("b", &[&[3], &[4]]);
        assert_eq!(linking_parity_cone(&a, &b, &apex).unwrap(), Parity::ZERO);
        assert_eq!(linking_parity(&a, &b).unwrap(), Parity::ZERO);
    }

    #[test]
    fn linked_triangles() {
        let a = polygon("a", &[&[3, 0, 0], &[-2, 3, 0], &[-2, -3, 0]]);
        let b = polygon("b", &[&[0, 0, 1], &[0, 0, -3], &[6, 0, 1]]);
        assert_eq!(linking_parity(&a, &b).unwrap(), Parity::ONE);
        assert_eq!(linking_parity(&b, &a).unwrap(), Parity::ONE);
        // apex in the plane of alpha sees beta through the cone's boundary
        let flat = p(&[0, 0, 0]);
        assert!(linking_parity_cone(&a, &b, &flat).is_err());
    }

    #[test]
    fn boundary_collision_is_reported() {
        let seg = |name: &str, c: &[&[i64]]| {
            let c2 = SimplicialComplex::new(&[format!("{name}0"), format!("{name}1")], &[vec![format!("{name}0"), format!("{name}1")]]).unwrap();
            GeometricComplex::from_points(c2, pts(c), 2).unwrap()
        };
        let a = seg("a", &[&[0, 0], &[4, 0]]);
        let b = seg("b", &[&[2, 0], &[2, 5]]);
        assert!(matches!(
            intersection_parity_maps(&a, &b),
            Err(GeometryError::BoundaryCollision { .. })
        ));
    }

    #[test]
    fn general_position_examples() {
        let line = GeometricComplex::from_points(
            skeleton_complex(0, 3).unwrap(),
            pts(&[&[1], &[2], &[3], &[4]]),
            1,
        )
        .unwrap();
        assert!(general_position_check(&line).ok);
        let tri = [[0, 0, 0, 0], [1, 0, 0, 0], [0, 1, 0, 0]];
        let c = SimplicialComplex::new(&["a", "b", "c", "x", "y", "z"], &[vec!["a", "b", "c"], vec!["x", "y", "z"]]).unwrap();
        let coords: Vec<RationalPoint> = tri.iter().chain(&tri).map(|c| p(c)).collect();
        let twice = GeometricComplex::from_points(c, coords, 4).unwrap();
        let r = general_position_check(&twice);
        assert!(!r.ok);
        assert!(r.certificate.is_some());
    }

    #[test]
    fn apexes_are_distinct() {
        let v: Vec<RationalPoint> = apex_sequence(3, 0).collect();
        assert_eq!(v.len(), APEX_ATTEMPTS);
        for (i, a) in v.iter().enumerate() {
            assert!(v[i + 1..].iter().all(|b| a != b));
        }
        assert_ne!(apex_sequence(3, 5).next(), v.first().cloned());
    }
}
