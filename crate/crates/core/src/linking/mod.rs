//! Linked spheres in `L = (σ⁰₃)^{*n}`, the Van Kampen obstruction parity,
//! almost embeddings and the randomized campaigns.

mod almost;
mod campaign;
mod obstruction;
mod spheres;
mod standard;

use thiserror::Error;

use crate::complex::{skeleton_complex, ComplexError, SimplicialComplex};
use crate::geometry::{GeometricComplex, GeometryError, RationalPoint};

pub use almost::{
    almost_embedding_check, compose_with_embedding, identity_instance, k5_into_k33_map, k5_k33_target,
    product_instance, random_k5_k33_instance, subdivision_instance, AlmostEmbeddingInstance, Cell, CellImage,
    Violation,
};
pub use campaign::{campaign, CampaignKind, CampaignResult};
pub use obstruction::{
    all_pair_parities, compute_obstruction, cone_lift_obstruction, cone_lift_pair_parity, find_linked_pair, find_linked_triangles_k6,
    pair_linking_parity, K6Linking, ObstructionReport,
};
pub use spheres::{disjoint_pairs, enumerate_spheres, JoinSphere, SpherePair, GROUP_SIZE};
pub use standard::{alternation_criterion, membrane_linking_parity, standard_join_embedding, StandardEmbedding};

/// Default bound on `n` for the join-sphere computations.
pub const DEFAULT_MAX_N: usize = 4;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinkingError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("invalid base simplex: {0}")]
    InvalidBase(String),
    #[error("invalid join sphere: {0}")]
    InvalidSphere(String),
    #[error("not a realization of (σ⁰₃)^{{*n}}: {0}")]
    NotJoinComplex(String),
    #[error("ill-defined map: {0}")]
    IllDefined(String),
    #[error("n must be at least 1")]
    ZeroN,
}

impl LinkingError {
    /// Geometric failures that resampling or a new apex could avoid.
    pub fn is_geometric(&self) -> bool {
        matches!(
            self,
            LinkingError::Geometry(
                GeometryError::Degenerate { .. }
                    | GeometryError::AffineDependence
                    | GeometryError::ResampleExhausted(_)
                    | GeometryError::ApexExhausted(_)
                    | GeometryError::BoundaryCollision { .. }
            )
        )
    }
}

/// `(σ⁰₃)^{*n}` with vertices `g{k}:{v}`, `k` in `1..=n`, `v` in `0..4`.
pub fn join_sphere_complex(n: usize) -> SimplicialComplex {
    SimplicialComplex::join_power(&skeleton_complex(0, GROUP_SIZE - 1).expect("σ⁰₃"), n)
}

pub fn vertex_label(group: usize, v: usize) -> String {
    format!("g{}:{}", group + 1, v)
}

/// Vertex indices of a realization of `L`, by group.
pub(crate) struct JoinView<'a> {
    pub g: &'a GeometricComplex,
    pub n: usize,
    ids: Vec<[usize; GROUP_SIZE]>,
}

impl<'a> JoinView<'a> {
    pub fn new(g: &'a GeometricComplex) -> Result<Self, LinkingError> {
        let c = g.complex();
        if c.vertex_count() % GROUP_SIZE != 0 || c.vertex_count() == 0 {
            return Err(LinkingError::NotJoinComplex(format!("{} vertices", c.vertex_count())));
        }
        let n = c.vertex_count() / GROUP_SIZE;
        let mut ids = Vec::with_capacity(n);
        for k in 0..n {
            let mut row = [0; GROUP_SIZE];
            for (v, slot) in row.iter_mut().enumerate() {
                let label = vertex_label(k, v);
                *slot = c
                    .index_of(&label)
                    .ok_or_else(|| LinkingError::NotJoinComplex(format!("missing vertex {label}")))?;
            }
            ids.push(row);
        }
        if g.ambient_dim() != 2 * n - 1 {
            return Err(LinkingError::NotJoinComplex(format!(
                "ambient dimension {} for n = {n}",
                g.ambient_dim()
            )));
        }
        Ok(JoinView { g, n, ids })
    }

    pub fn point(&self, group: usize, v: usize) -> &'a RationalPoint {
        self.g.point(self.ids[group][v])
    }

    /// Top simplices of a join sphere as point lists.
    pub fn sphere_points(&self, s: &JoinSphere) -> Vec<Vec<&'a RationalPoint>> {
        s.simplices()
            .iter()
            .map(|simplex| simplex.iter().map(|&(k, v)| self.point(k, v)).collect())
            .collect()
    }

    /// The sphere as a geometric subcomplex.
    pub fn sphere_complex(&self, s: &JoinSphere) -> Result<GeometricComplex, LinkingError> {
        let vertices: Vec<String> = s
            .selections()
            .iter()
            .enumerate()
            .flat_map(|(k, sel)| sel.iter().map(move |&v| vertex_label(k, v)))
            .collect();
        let facets: Vec<Vec<String>> = s
            .simplices()
            .iter()
            .map(|simplex| simplex.iter().map(|&(k, v)| vertex_label(k, v)).collect())
            .collect();
        let complex = SimplicialComplex::new(&vertices, &facets)?;
        let points = complex
            .labels()
            .iter()
            .map(|l| self.g.point_of(l).cloned().expect("vertex of L"))
            .collect();
        Ok(GeometricComplex::from_points(complex, points, self.g.ambient_dim())?)
    }
}
