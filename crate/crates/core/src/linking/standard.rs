//! The standard realization of `(σ⁰₃)^{*n}` on `n` lines in general
//! position in `Q^{2n-1}`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::spheres::{JoinSphere, SpherePair, GROUP_SIZE};
use super::{join_sphere_complex, JoinView, LinkingError};
use crate::geometry::{
    apex_sequence, general_position_check, GeometricComplex, GeometryError, Parity, RationalPoint,
    DEFAULT_RESAMPLE_BUDGET,
};

/// Line parameters of the four vertices of each group.
pub const LINE_PARAMS: [i64; GROUP_SIZE] = [1, 2, 3, 4];
const LINE_RANGE: i64 = 50;

#[derive(Clone, Debug)]
pub struct StandardEmbedding {
    pub n: usize,
    pub seed: u64,
    /// `(origin, direction)` per line.
    pub lines: Vec<(RationalPoint, RationalPoint)>,
    /// Realization of `L` in `Q^{2n-1}`.
    pub complex: GeometricComplex,
    /// Apex of the cone, off the hyperplane `x_{2n} = 0`.
    pub apex: RationalPoint,
    /// The cone `CL` in `Q^{2n}`.
    pub cone: GeometricComplex,
}

impl StandardEmbedding {
    /// Lines as printable `(origin, direction)` pairs.
    pub fn line_strings(&self) -> Vec<(String, String)> {
        self.lines.iter().map(|(o, d)| (o.to_string(), d.to_string())).collect()
    }
}

pub fn standard_join_embedding(n: usize, seed: u64) -> Result<StandardEmbedding, LinkingError> {
    if n == 0 {
        return Err(LinkingError::ZeroN);
    }
    let d = 2 * n - 1;
    let complex = join_sphere_complex(n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..DEFAULT_RESAMPLE_BUDGET {
        let lines: Vec<(Vec<i64>, Vec<i64>)> = if n == 1 {
            vec![(vec![0], vec![1])]
        } else {
            (0..n)
                .map(|_| {
                    let origin = (0..d).map(|_| rng.gen_range(-LINE_RANGE..=LINE_RANGE)).collect();
                    let mut direction: Vec<i64> = vec![0; d];
                    while direction.iter().all(|&x| x == 0) {
                        direction = (0..d).map(|_| rng.gen_range(-LINE_RANGE..=LINE_RANGE)).collect();
                    }
                    (origin, direction)
                })
                .collect()
        };
        let points: Vec<RationalPoint> = complex
            .labels()
            .iter()
            .map(|label| {
                let (k, v) = parse_label(label);
                let (o, dir) = &lines[k];
                let t = LINE_PARAMS[v];
                let c: Vec<i64> = o.iter().zip(dir).map(|(a, b)| a + t * b).collect();
                RationalPoint::from_ints(&c)
            })
            .collect();
        let g = GeometricComplex::from_points(complex.clone(), points, d)?;
        if !general_position_check(&g).ok {
            continue;
        }
        let mut apex_coords = vec![0i64; d + 1];
        apex_coords[d] = 1;
        let apex = RationalPoint::from_ints(&apex_coords);
        let cone = g.lifted().cone("apex", apex.clone())?;
        return Ok(StandardEmbedding {
            n,
            seed,
            lines: lines
                .iter()
                .map(|(o, dir)| (RationalPoint::from_ints(o), RationalPoint::from_ints(dir)))
                .collect(),
            complex: g,
            apex,
            cone,
        });
    }
    Err(GeometryError::ResampleExhausted(DEFAULT_RESAMPLE_BUDGET).into())
}

fn parse_label(label: &str) -> (usize, usize) {
    let (g, v) = label[1..].split_once(':').expect("join-power label");
    (g.parse::<usize>().expect("group") - 1, v.parse().expect("vertex"))
}

/// `1` iff on every line the parameters of `alpha` and `beta` interleave.
pub fn alternation_criterion(e: &StandardEmbedding, p: &SpherePair) -> Parity {
    debug_assert_eq!(p.n(), e.n);
    let alternates = p
        .alpha
        .selections()
        .iter()
        .zip(p.beta.selections())
        .all(|([a0, a1], b)| {
            let (lo, hi) = (LINE_PARAMS[*a0].min(LINE_PARAMS[*a1]), LINE_PARAMS[*a0].max(LINE_PARAMS[*a1]));
            b.iter().filter(|&&v| lo < LINE_PARAMS[v] && LINE_PARAMS[v] < hi).count() == 1
        });
    Parity::from(alternates)
}

/// Linking parity through the membrane `D = J * (alpha_2 * ... * alpha_n)`
/// with `∂D = alpha`, where `J` is the arc from `alpha`'s first-line vertices
/// through a bend point off that line (for `n = 1`, the segment itself).
pub fn membrane_linking_parity(
    e: &StandardEmbedding,
    alpha: &JoinSphere,
    beta: &JoinSphere,
) -> Result<Parity, LinkingError> {
    let view = JoinView::new(&e.complex)?;
    let beta_simplices = view.sphere_points(beta);
    let [a, c] = alpha.selections()[0];
    let (pa, pc) = (view.point(0, a), view.point(0, c));
    let rest = JoinSphere::new(alpha.selections()[1..].to_vec());
    let rest_points: Vec<Vec<&RationalPoint>> = if e.n == 1 {
        vec![Vec::new()]
    } else {
        rest.simplices()
            .iter()
            .map(|s| s.iter().map(|&(k, v)| view.point(k + 1, v)).collect())
            .collect()
    };
    let sum = |arcs: &[[&RationalPoint; 2]]| -> Result<Parity, GeometryError> {
        let mut total = Parity::ZERO;
        for arc in arcs {
            for r in &rest_points {
                let mut simplex: Vec<&RationalPoint> = arc.to_vec();
                simplex.extend(r.iter().copied());
                for t in &beta_simplices {
                    total += crate::geometry::simplex_parity(&simplex, t)?;
                }
            }
        }
        Ok(total)
    };
    if e.n == 1 {
        return Ok(sum(&[[pa, pc]])?);
    }
    let mut last = None;
    for bend in apex_sequence(e.complex.ambient_dim(), 17) {
        match sum(&[[pa, &bend], [&bend, pc]]) {
            Ok(p) => return Ok(p),
            Err(err) if err.is_degeneracy() => last = Some(err),
            Err(err) => return Err(err.into()),
        }
    }
    Err(last.unwrap_or(GeometryError::ApexExhausted(0)).into())
}
