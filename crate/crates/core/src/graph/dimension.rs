use serde::Serialize;

use super::{classify_factor, FactorClass, Graph, GraphError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DimensionCase {
    /// Some interval factor, or some non-degenerate factor is planar.
    #[serde(rename = "1")]
    One,
    /// Every non-degenerate factor is non-planar and there is no interval.
    #[serde(rename = "2")]
    Two,
}

impl DimensionCase {
    pub fn number(self) -> u8 {
        match self {
            DimensionCase::One => 1,
            DimensionCase::Two => 2,
        }
    }
}

/// Minimal `d` with `G_1 x ... x G_n x (S^1)^s x I^i` embeddable in `R^d`,
/// after absorbing point, interval and circle factors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionResult {
    pub n: usize,
    pub s: usize,
    pub i: usize,
    pub case: DimensionCase,
    pub d: usize,
    pub factor_classes: Vec<FactorClass>,
}

pub fn min_embedding_dim(factors: &[Graph], s: usize, i: usize) -> Result<DimensionResult, GraphError> {
    let mut classes = Vec::with_capacity(factors.len());
    let (mut n, mut s, mut i) = (0, s, i);
    let mut any_planar = false;
    for g in factors {
        let class = classify_factor(g)?;
        match class {
            FactorClass::Point => {}
            FactorClass::Interval => i += 1,
            FactorClass::Circle => s += 1,
            FactorClass::Other { planar } => {
                n += 1;
                any_planar |= planar;
            }
        }
        classes.push(class);
    }
    if n == 0 {
        return Err(GraphError::OutsideHypotheses(
            "no factor other than a point, an interval or a circle".into(),
        ));
    }
    let (case, d) = if i != 0 || any_planar {
        (DimensionCase::One, 2 * n + s + i)
    } else {
        (DimensionCase::Two, 2 * n + s + 1)
    };
    Ok(DimensionResult {
        n,
        s,
        i,
        case,
        d,
        factor_classes: classes,
    })
}
