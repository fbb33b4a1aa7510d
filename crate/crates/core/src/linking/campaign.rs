//! Seeded Monte Carlo runs over random realizations.

use std::collections::BTreeMap;

use itertools::Itertools;
use serde::Serialize;

use super::obstruction::{all_pair_parities, cone_lift_obstruction, find_linked_triangles_k6};
use super::spheres::{SpherePair, GROUP_SIZE};
use super::{join_sphere_complex, LinkingError};
use crate::complex::skeleton_complex;
use crate::geometry::{random_embedding, GeometryError, Parity};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CampaignKind {
    /// Random `(σ⁰₃)^{*n}` in `Q^{2n-1}`: a linked pair exists and `v = 1`.
    SacksN,
    /// Random K6 in `Q^3`: a linked triangle pair exists, odd total.
    ConwayGordonK6,
    /// Random `(σ⁰₃)^{*n}`: `v` is the same for every base simplex.
    ObstructionInvariance,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CampaignResult {
    pub kind: CampaignKind,
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    /// Trials whose geometry was available.
    pub completed: usize,
    pub linked_trials: usize,
    pub linked_fraction: f64,
    /// Counts of `v` (of the triangle-pair sum for K6), keyed `"0"`/`"1"`.
    pub v_histogram: BTreeMap<String, usize>,
    pub failing_seeds: Vec<u64>,
    /// Seeds whose sampling or apex search ran out of attempts.
    pub exhausted_seeds: Vec<u64>,
    /// Seeds where the cone-lift `v` disagreed with the in-hyperplane `v`.
    pub cross_check_mismatches: Vec<u64>,
}

impl CampaignResult {
    pub fn passed(&self) -> bool {
        self.failing_seeds.is_empty() && self.exhausted_seeds.is_empty()
    }
}

enum Outcome {
    Done {
        linked: bool,
        v: Parity,
        ok: bool,
        mismatch: bool,
    },
    Exhausted,
}

fn v_for_base(parities: &[(SpherePair, Parity)], c: &[usize]) -> Parity {
    parities
        .iter()
        .filter(|(p, _)| p.alpha.contains_simplex(c) || p.beta.contains_simplex(c))
        .map(|(_, x)| *x)
        .sum()
}

fn join_trial(kind: CampaignKind, n: usize, seed: u64) -> Result<Outcome, LinkingError> {
    let g = random_embedding(&join_sphere_complex(n), 2 * n - 1, seed)?;
    let parities = all_pair_parities(&g)?;
    let linked = parities.iter().any(|(_, x)| x.is_odd());
    let base = vec![0; n];
    let v = v_for_base(&parities, &base);
    let lifted = cone_lift_obstruction(&g, Some(&base))?;
    let mismatch = lifted != v;
    let ok = match kind {
        CampaignKind::SacksN => linked && v.is_odd(),
        _ => (0..n)
            .map(|_| 0..GROUP_SIZE)
            .multi_cartesian_product()
            .all(|c| v_for_base(&parities, &c) == v),
    };
    Ok(Outcome::Done {
        linked,
        v,
        ok: ok && !mismatch,
        mismatch,
    })
}

fn k6_trial(seed: u64) -> Result<Outcome, LinkingError> {
    let g = random_embedding(&skeleton_complex(1, 5)?, 3, seed)?;
    let r = find_linked_triangles_k6(&g)?;
    let linked = !r.linked_pairs.is_empty();
    Ok(Outcome::Done {
        linked,
        v: r.sum,
        ok: linked && r.sum.is_odd(),
        mismatch: false,
    })
}

fn trial(kind: CampaignKind, n: usize, seed: u64) -> Result<Outcome, LinkingError> {
    let r = match kind {
        CampaignKind::ConwayGordonK6 => k6_trial(seed),
        _ => join_trial(kind, n, seed),
    };
    match r {
        Err(LinkingError::Geometry(GeometryError::ResampleExhausted(_) | GeometryError::ApexExhausted(_))) => {
            Ok(Outcome::Exhausted)
        }
        other => other,
    }
}

/// Runs `trials` trials with seeds `seed, seed + 1, ...`. Exhausted trials
/// are recorded and skipped; other errors abort.
pub fn campaign(kind: CampaignKind, n: usize, trials: usize, seed: u64) -> Result<CampaignResult, LinkingError> {
    if n == 0 && kind != CampaignKind::ConwayGordonK6 {
        return Err(LinkingError::ZeroN);
    }
    let mut result = CampaignResult {
        kind,
        n: if kind == CampaignKind::ConwayGordonK6 { 1 } else { n },
        trials,
        seed,
        completed: 0,
        linked_trials: 0,
        linked_fraction: 0.0,
        v_histogram: BTreeMap::from([("0".to_string(), 0), ("1".to_string(), 0)]),
        failing_seeds: Vec::new(),
        exhausted_seeds: Vec::new(),
        cross_check_mismatches: Vec::new(),
    };
    for i in 0..trials {
        let s = seed.wrapping_add(i as u64);
        match trial(kind, n, s)? {
            Outcome::Exhausted => result.exhausted_seeds.push(s),
            Outcome::Done { linked, v, ok, mismatch } => {
                result.completed += 1;
                result.linked_trials += usize::from(linked);
                *result.v_histogram.get_mut(&v.to_string()).expect("0 or 1") += 1;
                if !ok {
                    result.failing_seeds.push(s);
                }
                if mismatch {
                    result.cross_check_mismatches.push(s);
                }
            }
        }
    }
    if result.completed > 0 {
        result.linked_fraction = result.linked_trials as f64 / result.completed as f64;
    }
    Ok(result)
}
