//! Exact piecewise-linear geometry over the rationals.
//!
//! Nothing in this module rounds: coordinates are `BigRational`, predicates
//! reduce to integer determinants, and non-generic configurations are
//! reported as errors rather than guessed.

mod exact;
mod intersect;
mod random;

use std::collections::BTreeMap;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::complex::{ComplexError, SimplicialComplex};

pub use intersect::{
    apex_sequence, closed_simplices_intersect, general_position_check, intersection_parity_maps,
    linking_parity, linking_parity_cone, simplex_intersection_parity, GeneralPosition, APEX_ATTEMPTS,
};
pub use random::{random_embedding, random_embedding_with_budget, COORDINATE_RANGE, DEFAULT_RESAMPLE_BUDGET};

pub(crate) use intersect::{closed_meet, cone_linking_with_fallback, simplex_parity};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DegeneracyKind {
    /// The barycentric system has no unique solution.
    Singular,
    /// Closed simplices touch on their boundaries.
    BoundaryContact,
}

impl fmt::Display for DegeneracyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DegeneracyKind::Singular => f.write_str("singular system"),
            DegeneracyKind::BoundaryContact => f.write_str("boundary contact"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("degenerate configuration ({kind}) between {first:?} and {second:?}")]
    Degenerate {
        kind: DegeneracyKind,
        first: Vec<String>,
        second: Vec<String>,
    },
    #[error("affinely dependent simplex")]
    AffineDependence,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("boundary images meet: {first:?} and {second:?}")]
    BoundaryCollision { first: Vec<String>, second: Vec<String> },
    #[error("no general-position sample after {0} attempts")]
    ResampleExhausted(usize),
    #[error("no generic cone apex after {0} attempts")]
    ApexExhausted(usize),
    #[error("missing coordinates for vertex `{0}`")]
    MissingCoordinates(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

impl GeometryError {
    pub(crate) fn degenerate(kind: DegeneracyKind) -> Self {
        GeometryError::Degenerate {
            kind,
            first: Vec::new(),
            second: Vec::new(),
        }
    }

    pub fn is_degeneracy(&self) -> bool {
        matches!(self, GeometryError::Degenerate { .. } | GeometryError::AffineDependence)
    }
}

/// An element of Z/2.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Parity(bool);

impl Parity {
    pub const ZERO: Parity = Parity(false);
    pub const ONE: Parity = Parity(true);

    pub fn value(self) -> u8 {
        self.0 as u8
    }

    pub fn is_odd(self) -> bool {
        self.0
    }
}

impl From<bool> for Parity {
    fn from(b: bool) -> Self {
        Parity(b)
    }
}

impl From<usize> for Parity {
    fn from(n: usize) -> Self {
        Parity(n % 2 == 1)
    }
}

impl Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        Parity(self.0 ^ rhs.0)
    }
}

impl AddAssign for Parity {
    fn add_assign(&mut self, rhs: Parity) {
        self.0 ^= rhs.0;
    }
}

impl Sum for Parity {
    fn sum<I: Iterator<Item = Parity>>(iter: I) -> Parity {
        iter.fold(Parity::ZERO, Add::add)
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

impl Serialize for Parity {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u8(self.value())
    }
}

/// A point of `Q^d`, with a cached `i64` view when every coordinate is a
/// small integer.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalPoint {
    coords: Vec<BigRational>,
    ints: Option<Vec<i64>>,
}

impl RationalPoint {
    pub fn new(coords: Vec<BigRational>) -> Self {
        let ints = coords
            .iter()
            .map(|x| if x.is_integer() { x.to_integer().to_i64() } else { None })
            .collect();
        RationalPoint { coords, ints }
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        RationalPoint {
            coords: coords.iter().map(|&x| BigRational::from_integer(x.into())).collect(),
            ints: Some(coords.to_vec()),
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub(crate) fn int_coords(&self) -> Option<&[i64]> {
        self.ints.as_deref()
    }

    /// The point with `extra` appended as a last coordinate.
    pub fn extended(&self, extra: BigRational) -> RationalPoint {
        let mut c = self.coords.clone();
        c.push(extra);
        RationalPoint::new(c)
    }

    pub fn add(&self, other: &RationalPoint) -> RationalPoint {
        RationalPoint::new(self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &RationalPoint) -> RationalPoint {
        RationalPoint::new(self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: &BigRational) -> RationalPoint {
        RationalPoint::new(self.coords.iter().map(|a| a * k).collect())
    }

    /// `self + t * direction`.
    pub fn along(&self, direction: &RationalPoint, t: &BigRational) -> RationalPoint {
        self.add(&direction.scale(t))
    }

    pub fn is_origin(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(fmt_rational).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// `p/q` with `q >= 1`, always with an explicit denominator.
pub fn fmt_rational(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn parse_rational(s: &str) -> Option<BigRational> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.parse::<BigInt>().ok()?, d.parse::<BigInt>().ok()?),
        None => (s.parse::<BigInt>().ok()?, BigInt::from(1)),
    };
    if d.is_zero() {
        return None;
    }
    Some(BigRational::new(n, d))
}

/// A simplicial complex realized linearly in `Q^d` by vertex coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeometricComplex {
    complex: SimplicialComplex,
    coords: Vec<RationalPoint>,
    ambient_dim: usize,
}

impl GeometricComplex {
    pub fn new(
        complex: SimplicialComplex,
        coords: &BTreeMap<String, RationalPoint>,
        ambient_dim: usize,
    ) -> Result<Self, GeometryError> {
        let points = complex
            .labels()
            .iter()
            .map(|l| coords.get(l).cloned().ok_or_else(|| GeometryError::MissingCoordinates(l.clone())))
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_points(complex, points, ambient_dim)
    }

    /// Coordinates given in vertex-index order.
    pub fn from_points(
        complex: SimplicialComplex,
        points: Vec<RationalPoint>,
        ambient_dim: usize,
    ) -> Result<Self, GeometryError> {
        if points.len() != complex.vertex_count() {
            return Err(GeometryError::DimensionMismatch {
                expected: complex.vertex_count(),
                found: points.len(),
            });
        }
        if let Some(p) = points.iter().find(|p| p.dim() != ambient_dim) {
            return Err(GeometryError::DimensionMismatch {
                expected: ambient_dim,
                found: p.dim(),
            });
        }
        Ok(GeometricComplex {
            complex,
            coords: points,
            ambient_dim,
        })
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn point(&self, v: usize) -> &RationalPoint {
        &self.coords[v]
    }

    pub fn points(&self) -> &[RationalPoint] {
        &self.coords
    }

    pub fn point_of(&self, label: &str) -> Option<&RationalPoint> {
        self.complex.index_of(label).map(|v| &self.coords[v])
    }

    pub fn simplex_points(&self, simplex: &[usize]) -> Vec<&RationalPoint> {
        simplex.iter().map(|&v| &self.coords[v]).collect()
    }

    pub fn simplex_labels(&self, simplex: &[usize]) -> Vec<String> {
        simplex.iter().map(|&v| self.complex.label(v).to_string()).collect()
    }

    /// Same complex in `Q^{d+1}`, last coordinate zero.
    pub fn lifted(&self) -> GeometricComplex {
        GeometricComplex {
            complex: self.complex.clone(),
            coords: self.coords.iter().map(|p| p.extended(BigRational::zero())).collect(),
            ambient_dim: self.ambient_dim + 1,
        }
    }

    /// The geometric cone from `apex`.
    pub fn cone(&self, apex_label: &str, apex: RationalPoint) -> Result<GeometricComplex, GeometryError> {
        if apex.dim() != self.ambient_dim {
            return Err(GeometryError::DimensionMismatch {
                expected: self.ambient_dim,
                found: apex.dim(),
            });
        }
        let complex = self.complex.cone(apex_label)?;
        let mut coords = self.coords.clone();
        coords.push(apex);
        Ok(GeometricComplex {
            complex,
            coords,
            ambient_dim: self.ambient_dim,
        })
    }

    /// Codimension-one faces lying in an odd number of facets of top
    /// dimension (the mod-2 boundary).
    pub fn boundary_simplices(&self) -> Vec<Vec<usize>> {
        let top = self.complex.dim();
        if top <= 0 {
            return Vec::new();
        }
        let mut count: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for f in self.complex.facets().iter().filter(|f| f.len() as isize == top + 1) {
            for skip in 0..f.len() {
                let face: Vec<usize> = f.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
                *count.entry(face).or_default() += 1;
            }
        }
        count.into_iter().filter(|(_, c)| c % 2 == 1).map(|(f, _)| f).collect()
    }

    /// Text form: `ambient_dim`, an optional `join:` line, `vertices N`
    /// followed by `label p/q ...` lines, then `facets M` and one facet per
    /// line.
    pub fn to_text(&self) -> String {
        let mut out = format!("ambient_dim {}\n", self.ambient_dim);
        let complex_text = self.complex.to_text();
        if let Some(join) = complex_text.lines().find(|l| l.starts_with("join:")) {
            out.push_str(join);
            out.push('\n');
        }
        out.push_str(&format!("vertices {}\n", self.coords.len()));
        for (v, p) in self.coords.iter().enumerate() {
            out.push_str(&format!("{} {}\n", self.complex.label(v), p));
        }
        out.push_str(&format!("facets {}\n", self.complex.facets().len()));
        for f in self.complex.facet_labels() {
            out.push_str(&f.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<GeometricComplex, GeometryError> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let err = |line: usize, reason: &str| GeometryError::Parse {
            line: line + 1,
            reason: reason.to_string(),
        };
        let (ln, first) = lines.next().ok_or_else(|| err(0, "empty input"))?;
        let ambient_dim: usize = first
            .strip_prefix("ambient_dim ")
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| err(ln, "expected `ambient_dim D`"))?;
        let (mut ln, mut line) = lines.next().ok_or_else(|| err(ln, "missing vertices"))?;
        let mut join_line = None;
        if line.starts_with("join:") {
            join_line = Some(line.to_string());
            (ln, line) = lines.next().ok_or_else(|| err(ln, "missing vertices"))?;
        }
        let nv: usize = line
            .strip_prefix("vertices ")
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| err(ln, "expected `vertices N`"))?;
        let mut labels = Vec::with_capacity(nv);
        let mut points = BTreeMap::new();
        for _ in 0..nv {
            let (ln, line) = lines.next().ok_or_else(|| err(ln, "missing vertex line"))?;
            let mut tok = line.split_whitespace();
            let label = tok.next().ok_or_else(|| err(ln, "missing label"))?.to_string();
            let coords = tok
                .map(|t| parse_rational(t).ok_or_else(|| err(ln, "bad rational")))
                .collect::<Result<Vec<_>, _>>()?;
            if coords.len() != ambient_dim {
                return Err(err(ln, "wrong number of coordinates"));
            }
            points.insert(label.clone(), RationalPoint::new(coords));
            labels.push(label);
        }
        let (ln, line) = lines.next().ok_or_else(|| err(ln, "missing facets"))?;
        let nf: usize = line
            .strip_prefix("facets ")
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| err(ln, "expected `facets M`"))?;
        let mut complex_text = String::new();
        if let Some(j) = join_line {
            complex_text.push_str(&j);
            complex_text.push('\n');
        }
        complex_text.push_str(&format!("vertices: {}\n", labels.join(" ")));
        for _ in 0..nf {
            let (_, line) = lines.next().ok_or_else(|| err(ln, "missing facet line"))?;
            complex_text.push_str(line);
            complex_text.push('\n');
        }
        let complex = SimplicialComplex::from_text(&complex_text)?;
        GeometricComplex::new(complex, &points, ambient_dim)
    }
}
