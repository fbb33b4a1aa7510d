//! Linking parities of sphere pairs and the obstruction `v(f)`.

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use super::spheres::{check_base, disjoint_pairs, SpherePair};
use super::{vertex_label, JoinView, LinkingError};
use crate::geometry::{
    apex_sequence, cone_linking_with_fallback, intersection_parity_maps, GeometricComplex, GeometryError, Parity,
    RationalPoint, APEX_ATTEMPTS,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObstructionReport {
    pub n: usize,
    /// One vertex label per factor group.
    pub base_simplex: Vec<String>,
    pub pairs_examined: usize,
    pub linked_pairs: Vec<SpherePair>,
    pub v: Parity,
}

/// Linking parity of a disjoint sphere pair of a realization of `L`.
pub fn pair_linking_parity(g: &GeometricComplex, pair: &SpherePair) -> Result<Parity, LinkingError> {
    let view = JoinView::new(g)?;
    pair_parity(&view, pair)
}

fn pair_parity(view: &JoinView, pair: &SpherePair) -> Result<Parity, LinkingError> {
    if pair.n() != view.n || !pair.is_disjoint() {
        return Err(LinkingError::InvalidSphere(format!("{pair} is not a disjoint pair for n = {}", view.n)));
    }
    let a = view.sphere_points(&pair.alpha);
    let b = view.sphere_points(&pair.beta);
    Ok(cone_linking_with_fallback(&a, &b, view.g.ambient_dim())?)
}

/// Parities of all `6^n / 2` unordered disjoint pairs.
pub fn all_pair_parities(g: &GeometricComplex) -> Result<Vec<(SpherePair, Parity)>, LinkingError> {
    let view = JoinView::new(g)?;
    disjoint_pairs(view.n, None)?
        .into_iter()
        .map(|p| pair_parity(&view, &p).map(|x| (p, x)))
        .collect()
}

fn base_or_default(n: usize, c: Option<&[usize]>) -> Result<Vec<usize>, LinkingError> {
    match c {
        Some(c) => {
            check_base(n, c)?;
            Ok(c.to_vec())
        }
        None => Ok(vec![0; n]),
    }
}

/// `v(f)`: the parity of linked pairs with `alpha ⊃ c`, by cones inside
/// `Q^{2n-1}`. `c` defaults to vertex 0 of every group.
pub fn compute_obstruction(g: &GeometricComplex, c: Option<&[usize]>) -> Result<ObstructionReport, LinkingError> {
    let view = JoinView::new(g)?;
    let c = base_or_default(view.n, c)?;
    let pairs = disjoint_pairs(view.n, Some(&c))?;
    let mut linked = Vec::new();
    for p in &pairs {
        if pair_parity(&view, p)?.is_odd() {
            linked.push(p.clone());
        }
    }
    Ok(ObstructionReport {
        n: view.n,
        base_simplex: c.iter().enumerate().map(|(k, &v)| vertex_label(k, v)).collect(),
        pairs_examined: pairs.len(),
        v: Parity::from(linked.len()),
        linked_pairs: linked,
    })
}

/// First linked pair among all unordered disjoint pairs.
pub fn find_linked_pair(g: &GeometricComplex) -> Result<Option<SpherePair>, LinkingError> {
    let view = JoinView::new(g)?;
    for p in disjoint_pairs(view.n, None)? {
        if pair_parity(&view, &p)?.is_odd() {
            return Ok(Some(p));
        }
    }
    Ok(None)
}

const LIFT_HEIGHTS: [i64; 2] = [1_000_003, 999_983];

fn lifted_apex(base: RationalPoint, height: i64) -> RationalPoint {
    base.extended(BigRational::from_integer(BigInt::from(height)))
}

/// Linking parity of a pair recomputed in `Q^{2n}`: both spheres are
/// lifted to the hyperplane `x_{2n} = 0` and coned from two apexes above
/// it; the parity is that of `Cα ∩ Cβ`.
pub fn cone_lift_pair_parity(g: &GeometricComplex, pair: &SpherePair) -> Result<Parity, LinkingError> {
    let view = JoinView::new(g)?;
    lift_parity(&view, pair)
}

fn lift_parity(view: &JoinView, pair: &SpherePair) -> Result<Parity, LinkingError> {
    let d = view.g.ambient_dim();
    let alpha = view.sphere_complex(&pair.alpha)?.lifted();
    let beta = view.sphere_complex(&pair.beta)?.lifted();
    for (p, q) in apex_sequence(d, 0).zip(apex_sequence(d, 101)) {
        let ca = alpha.cone("apex:a", lifted_apex(p, LIFT_HEIGHTS[0]))?;
        let cb = beta.cone("apex:b", lifted_apex(q, LIFT_HEIGHTS[1]))?;
        match intersection_parity_maps(&ca, &cb) {
            Err(e) if e.is_degeneracy() => continue,
            r => return Ok(r?),
        }
    }
    Err(GeometryError::ApexExhausted(APEX_ATTEMPTS).into())
}

/// `v(f)` recomputed with [`cone_lift_pair_parity`].
pub fn cone_lift_obstruction(g: &GeometricComplex, c: Option<&[usize]>) -> Result<Parity, LinkingError> {
    let view = JoinView::new(g)?;
    let c = base_or_default(view.n, c)?;
    let mut total = Parity::ZERO;
    for pair in disjoint_pairs(view.n, Some(&c))? {
        total += lift_parity(&view, &pair)?;
    }
    Ok(total)
}

/// Linking of the 10 pairs of disjoint triangles of a straight-line K6.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct K6Linking {
    pub pairs_examined: usize,
    pub linked_pairs: Vec<[Vec<String>; 2]>,
    /// Sum of the linking parities over all pairs.
    pub sum: Parity,
}

impl K6Linking {
    pub fn first_linked(&self) -> Option<&[Vec<String>; 2]> {
        self.linked_pairs.first()
    }
}

pub fn find_linked_triangles_k6(g: &GeometricComplex) -> Result<K6Linking, LinkingError> {
    let c = g.complex();
    let complete = c.vertex_count() == 6 && c.dim() == 1 && c.facets().len() == 15;
    if !complete || g.ambient_dim() != 3 {
        return Err(LinkingError::NotJoinComplex("expected K6 in Q^3".into()));
    }
    let edges = |t: &[usize]| -> Vec<Vec<&RationalPoint>> {
        t.iter()
            .tuple_combinations()
            .map(|(&x, &y)| vec![g.point(x), g.point(y)])
            .collect()
    };
    let mut linked = Vec::new();
    let mut pairs = 0;
    for (a, b) in (1..6).tuple_combinations() {
        let first = [0, a, b];
        let second: Vec<usize> = (1..6).filter(|v| *v != a && *v != b).collect();
        pairs += 1;
        if cone_linking_with_fallback(&edges(&first), &edges(&second), 3)?.is_odd() {
            linked.push([g.simplex_labels(&first), g.simplex_labels(&second)]);
        }
    }
    Ok(K6Linking {
        pairs_examined: pairs,
        sum: Parity::from(linked.len()),
        linked_pairs: linked,
    })
}
