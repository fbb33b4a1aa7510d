//! Join spheres in `(σ⁰_d)^{*n}`: one pair of vertices from each factor.

use std::fmt;

use itertools::Itertools;
use serde::{Serialize, Serializer};

use super::LinkingError;

/// Size of each factor group in `L = (σ⁰₃)^{*n}`.
pub const GROUP_SIZE: usize = 4;

/// An `(n-1)`-sphere `{x_1, y_1} * ... * {x_n, y_n}`; selections are pairs
/// of vertex indices within each factor group, stored sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JoinSphere {
    selections: Vec<[usize; 2]>,
}

impl JoinSphere {
    /// # Panics
    /// If a selection repeats a vertex.
    pub fn new(selections: Vec<[usize; 2]>) -> Self {
        Self::try_new(selections, usize::MAX).expect("valid selections")
    }

    /// Checked constructor; vertices of each group are `0..group_size`.
    pub fn try_new(selections: Vec<[usize; 2]>, group_size: usize) -> Result<Self, LinkingError> {
        let mut out = Vec::with_capacity(selections.len());
        for [x, y] in selections {
            if x == y || x >= group_size || y >= group_size {
                return Err(LinkingError::InvalidSphere(format!("selection {{{x},{y}}}")));
            }
            out.push([x.min(y), x.max(y)]);
        }
        Ok(JoinSphere { selections: out })
    }

    pub fn n(&self) -> usize {
        self.selections.len()
    }

    pub fn selections(&self) -> &[[usize; 2]] {
        &self.selections
    }

    /// The complementary sphere in `(σ⁰₃)^{*n}`.
    pub fn complement(&self) -> JoinSphere {
        let selections = self
            .selections
            .iter()
            .map(|s| {
                let rest: Vec<usize> = (0..GROUP_SIZE).filter(|v| !s.contains(v)).collect();
                [rest[0], rest[1]]
            })
            .collect();
        JoinSphere { selections }
    }

    /// Whether vertex `c[k]` is selected in every factor `k`.
    pub fn contains_simplex(&self, c: &[usize]) -> bool {
        c.len() == self.n() && self.selections.iter().zip(c).all(|(s, v)| s.contains(v))
    }

    pub fn is_disjoint_from(&self, other: &JoinSphere) -> bool {
        self.n() == other.n()
            && self
                .selections
                .iter()
                .zip(&other.selections)
                .all(|(a, b)| a.iter().all(|v| !b.contains(v)))
    }

    /// Top simplices as `(group, vertex)` choices, `2^n` of them.
    pub fn simplices(&self) -> Vec<Vec<(usize, usize)>> {
        self.selections
            .iter()
            .enumerate()
            .map(|(k, s)| s.iter().map(move |&v| (k, v)))
            .multi_cartesian_product()
            .collect()
    }
}

/// Printed 1-based, as `{1,3}*{2,4}`.
impl fmt::Display for JoinSphere {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .selections
            .iter()
            .map(|[x, y]| format!("{{{},{}}}", x + 1, y + 1))
            .collect();
        f.write_str(&parts.join("*"))
    }
}

impl Serialize for JoinSphere {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.selections.iter().map(|[x, y]| [x + 1, y + 1]))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SpherePair {
    pub alpha: JoinSphere,
    pub beta: JoinSphere,
}

impl SpherePair {
    pub fn is_disjoint(&self) -> bool {
        self.alpha.is_disjoint_from(&self.beta)
    }

    pub fn n(&self) -> usize {
        self.alpha.n()
    }
}

impl fmt::Display for SpherePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.alpha, self.beta)
    }
}

/// All join spheres of `(σ⁰_d)^{*n}`, `C(d+1, 2)^n` of them, in
/// lexicographic order.
pub fn enumerate_spheres(n: usize, d: usize) -> Vec<JoinSphere> {
    let pairs: Vec<[usize; 2]> = (0..=d).tuple_combinations().map(|(x, y)| [x, y]).collect();
    (0..n)
        .map(|_| pairs.iter().copied())
        .multi_cartesian_product()
        .map(|selections| JoinSphere { selections })
        .collect()
}

/// Disjoint sphere pairs of `(σ⁰₃)^{*n}`. Without `c`, every unordered
/// pair once (`alpha` the lexicographically smaller); with `c`, the `3^n`
/// pairs with `alpha ⊃ c`.
pub fn disjoint_pairs(n: usize, c: Option<&[usize]>) -> Result<Vec<SpherePair>, LinkingError> {
    if let Some(c) = c {
        check_base(n, c)?;
    }
    Ok(enumerate_spheres(n, GROUP_SIZE - 1)
        .into_iter()
        .filter_map(|alpha| {
            let beta = alpha.complement();
            let keep = match c {
                Some(c) => alpha.contains_simplex(c),
                None => alpha < beta,
            };
            keep.then_some(SpherePair { alpha, beta })
        })
        .collect())
}

pub(crate) fn check_base(n: usize, c: &[usize]) -> Result<(), LinkingError> {
    if c.len() != n || c.iter().any(|&v| v >= GROUP_SIZE) {
        return Err(LinkingError::InvalidBase(format!(
            "expected {n} vertex indices below {GROUP_SIZE}, got {c:?}"
        )));
    }
    Ok(())
}
