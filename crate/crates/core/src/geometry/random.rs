//! Seeded random straight-line realizations.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::intersect::scan;
use super::{GeometricComplex, GeometryError, RationalPoint};
use crate::complex::SimplicialComplex;

/// Coordinates are drawn from `[-COORDINATE_RANGE, COORDINATE_RANGE]`.
pub const COORDINATE_RANGE: i64 = 1_000_000;
pub const DEFAULT_RESAMPLE_BUDGET: usize = 100;

pub fn random_embedding(c: &SimplicialComplex, ambient_dim: usize, seed: u64) -> Result<GeometricComplex, GeometryError> {
    random_embedding_with_budget(c, ambient_dim, seed, DEFAULT_RESAMPLE_BUDGET)
}

/// Draws integer coordinates until the realization is in general position
/// and vertex-disjoint simplices of complementary dimension have disjoint
/// images. Pairs of dimension sum above `ambient_dim` are not checked.
pub fn random_embedding_with_budget(
    c: &SimplicialComplex,
    ambient_dim: usize,
    seed: u64,
    budget: usize,
) -> Result<GeometricComplex, GeometryError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..budget {
        let points = (0..c.vertex_count())
            .map(|_| {
                let coords: Vec<i64> = (0..ambient_dim)
                    .map(|_| rng.gen_range(-COORDINATE_RANGE..=COORDINATE_RANGE))
                    .collect();
                RationalPoint::from_ints(&coords)
            })
            .collect();
        let g = GeometricComplex::from_points(c.clone(), points, ambient_dim)?;
        if scan(&g, true).ok {
            return Ok(g);
        }
    }
    Err(GeometryError::ResampleExhausted(budget))
}
