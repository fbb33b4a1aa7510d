//! Integer kernels behind the geometric predicates.
//!
//! Points are brought to a common integer grid by scaling each coordinate
//! axis with the lcm of its denominators (an affine change of coordinates,
//! so incidences and signs are preserved). Determinants are computed by
//! Laplace expansion over column subsets, first in checked `i128` and, on
//! overflow, in `BigInt`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::RationalPoint;

/// Points on an integer grid, small when every coordinate fits in `i64`.
pub(crate) enum IntPoints {
    Small(Vec<Vec<i64>>),
    Big(Vec<Vec<BigInt>>),
}

pub(crate) fn to_integer_points(points: &[&RationalPoint]) -> IntPoints {
    if let Some(small) = points.iter().map(|p| p.int_coords().map(<[i64]>::to_vec)).collect() {
        return IntPoints::Small(small);
    }
    let d = points.first().map_or(0, |p| p.dim());
    let mut scale = vec![BigInt::one(); d];
    for p in points {
        for (c, x) in p.coords().iter().enumerate() {
            scale[c] = scale[c].lcm(x.denom());
        }
    }
    let big: Vec<Vec<BigInt>> = points
        .iter()
        .map(|p| {
            p.coords()
                .iter()
                .zip(&scale)
                .map(|(x, s)| x.numer() * (s / x.denom()))
                .collect()
        })
        .collect();
    let small: Option<Vec<Vec<i64>>> = big
        .iter()
        .map(|row| row.iter().map(ToPrimitive::to_i64).collect())
        .collect();
    match small {
        Some(s) => IntPoints::Small(s),
        None => IntPoints::Big(big),
    }
}

trait Exact: Clone {
    fn nil() -> Self;
    fn unit() -> Self;
    fn is_nil(&self) -> bool;
    /// `acc + sign * a * b`, `None` on overflow.
    fn fma(acc: &Self, a: &Self, b: &Self, negate: bool) -> Option<Self>;
}

impl Exact for i128 {
    fn nil() -> Self {
        0
    }
    fn unit() -> Self {
        1
    }
    fn is_nil(&self) -> bool {
        *self == 0
    }
    fn fma(acc: &Self, a: &Self, b: &Self, negate: bool) -> Option<Self> {
        let p = a.checked_mul(*b)?;
        if negate {
            acc.checked_sub(p)
        } else {
            acc.checked_add(p)
        }
    }
}

impl Exact for BigInt {
    fn nil() -> Self {
        Zero::zero()
    }
    fn unit() -> Self {
        One::one()
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn fma(acc: &Self, a: &Self, b: &Self, negate: bool) -> Option<Self> {
        let p = a * b;
        Some(if negate { acc - p } else { acc + p })
    }
}

/// All `k x k` minors of a `k x d` matrix, indexed by column bitmask.
fn maximal_minors<T: Exact>(rows: &[Vec<T>], d: usize) -> Option<Vec<T>> {
    let size = 1usize << d;
    let mut layer = vec![T::nil(); size];
    layer[0] = T::unit();
    for (j, row) in rows.iter().enumerate() {
        let mut next = vec![T::nil(); size];
        for mask in 1..size {
            if mask.count_ones() as usize != j + 1 {
                continue;
            }
            let mut acc = T::nil();
            let mut higher = 0;
            // walk columns from the top so `higher` counts columns above c
            for c in (0..d).rev() {
                if mask & (1 << c) == 0 {
                    continue;
                }
                let a = &row[c];
                let sub = &layer[mask ^ (1 << c)];
                if !a.is_nil() && !sub.is_nil() {
                    acc = T::fma(&acc, a, sub, higher % 2 == 1)?;
                }
                higher += 1;
            }
            next[mask] = acc;
        }
        layer = next;
    }
    Some(layer)
}

fn det<T: Exact>(rows: &[Vec<T>]) -> Option<T> {
    let d = rows.len();
    maximal_minors(rows, d).map(|m| m[(1 << d) - 1].clone())
}

fn widen(rows: &[Vec<i128>]) -> Vec<Vec<BigInt>> {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

/// Vectors `p_i - p_0` for `i >= 1`.
enum Vectors {
    Small(Vec<Vec<i128>>),
    Big(Vec<Vec<BigInt>>),
}

fn differences(points: &IntPoints, base: usize, others: &[usize]) -> Vectors {
    match points {
        IntPoints::Small(p) => Vectors::Small(
            others
                .iter()
                .map(|&i| p[i].iter().zip(&p[base]).map(|(&a, &b)| a as i128 - b as i128).collect())
                .collect(),
        ),
        IntPoints::Big(p) => Vectors::Big(
            others
                .iter()
                .map(|&i| p[i].iter().zip(&p[base]).map(|(a, b)| a - b).collect())
                .collect(),
        ),
    }
}

/// Whether the given points are affinely independent.
pub(crate) fn affinely_independent(points: &[&RationalPoint]) -> bool {
    if points.len() <= 1 {
        return true;
    }
    let d = points[0].dim();
    if points.len() > d + 1 {
        return false;
    }
    let ints = to_integer_points(points);
    let others: Vec<usize> = (1..points.len()).collect();
    match differences(&ints, 0, &others) {
        Vectors::Small(v) => match maximal_minors(&v, d) {
            Some(m) => m.iter().any(|x| *x != 0),
            None => maximal_minors(&widen(&v), d)
                .expect("bigint")
                .iter()
                .any(|x| !x.is_zero()),
        },
        Vectors::Big(v) => maximal_minors(&v, d).expect("bigint").iter().any(|x| !x.is_zero()),
    }
}

/// How the affine hulls of two complementary simplices meet.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Crossing {
    /// A single point in both open simplices.
    Interior,
    /// The unique meeting point lies outside one of the closed simplices.
    Outside,
    /// The barycentric system is singular.
    Singular,
    /// The closed simplices touch with some barycentric coordinate zero.
    Boundary,
}

/// Solves `sum l_i s_i = sum m_j t_j`, `sum l = sum m = 1` by Cramer's rule
/// on the reduced `d x d` system and classifies the solution by sign.
///
/// Requires `s.len() + t.len() == d + 2`.
pub(crate) fn crossing(s: &[&RationalPoint], t: &[&RationalPoint]) -> Crossing {
    let k = s.len() - 1;
    let all: Vec<&RationalPoint> = s.iter().chain(t).copied().collect();
    let ints = to_integer_points(&all);
    let t0 = k + 1;
    // rows: s_i - s_0, then t_0 - t_j (as -(t_j - t_0)), then rhs t_0 - s_0
    let s_idx: Vec<usize> = (1..=k).collect();
    let t_idx: Vec<usize> = (t0 + 1..all.len()).collect();
    match (
        differences(&ints, 0, &s_idx),
        differences(&ints, t0, &t_idx),
        differences(&ints, 0, &[t0]),
    ) {
        (Vectors::Small(a), Vectors::Small(b), Vectors::Small(r)) => {
            let rows: Vec<Vec<i128>> = a
                .into_iter()
                .chain(b.into_iter().map(|v| v.into_iter().map(|x| -x).collect()))
                .collect();
            match classify_small(&rows, &r[0], k) {
                Some(c) => c,
                None => classify(&widen(&rows), &widen(&r)[0], k),
            }
        }
        (a, b, r) => {
            let big = |v: Vectors| match v {
                Vectors::Small(x) => widen(&x),
                Vectors::Big(x) => x,
            };
            let rows: Vec<Vec<BigInt>> = big(a)
                .into_iter()
                .chain(big(b).into_iter().map(|v| v.into_iter().map(|x| -x).collect()))
                .collect();
            classify(&rows, &big(r)[0], k)
        }
    }
}

fn cramer<T: Exact>(rows: &[Vec<T>], rhs: &[T]) -> Option<(T, Vec<T>)> {
    let base = det(rows)?;
    let mut numerators = Vec::with_capacity(rows.len());
    let mut replaced = rows.to_vec();
    for i in 0..rows.len() {
        replaced[i] = rhs.to_vec();
        numerators.push(det(&replaced)?);
        replaced[i] = rows[i].clone();
    }
    Some((base, numerators))
}

fn classify_small(rows: &[Vec<i128>], rhs: &[i128], k: usize) -> Option<Crossing> {
    let (d, nums) = cramer(rows, rhs)?;
    if d == 0 {
        return Some(Crossing::Singular);
    }
    let s_sum = nums[..k].iter().try_fold(0i128, |acc, x| acc.checked_add(*x))?;
    let t_sum = nums[k..].iter().try_fold(0i128, |acc, x| acc.checked_add(*x))?;
    let lead_s = d.checked_sub(s_sum)?;
    let lead_t = d.checked_sub(t_sum)?;
    let signs = nums
        .iter()
        .chain([&lead_s, &lead_t])
        .map(|x| x.signum() * d.signum());
    Some(sign_verdict(signs))
}

fn classify(rows: &[Vec<BigInt>], rhs: &[BigInt], k: usize) -> Crossing {
    let (d, nums) = cramer(rows, rhs).expect("bigint arithmetic does not overflow");
    if d.is_zero() {
        return Crossing::Singular;
    }
    let s_sum: BigInt = nums[..k].iter().sum();
    let t_sum: BigInt = nums[k..].iter().sum();
    let lead_s = &d - s_sum;
    let lead_t = &d - t_sum;
    let ds = sign_i(&d);
    let signs: Vec<i128> = nums.iter().chain([&lead_s, &lead_t]).map(|x| sign_i(x) * ds).collect();
    sign_verdict(signs.into_iter())
}

fn sign_i(x: &BigInt) -> i128 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

fn sign_verdict(signs: impl Iterator<Item = i128>) -> Crossing {
    let mut zero = false;
    for s in signs {
        if s < 0 {
            return Crossing::Outside;
        }
        zero |= s == 0;
    }
    if zero {
        Crossing::Boundary
    } else {
        Crossing::Interior
    }
}

/// Whether the closed convex hulls of `s` and `t` meet, decided by an exact
/// phase-one simplex method (Bland's rule) on the barycentric constraints.
pub(crate) fn hulls_intersect(s: &[&RationalPoint], t: &[&RationalPoint]) -> bool {
    let d = s.first().or(t.first()).map_or(0, |p| p.dim());
    let nvars = s.len() + t.len();
    let nrows = d + 2;
    let zero = BigRational::zero;
    let one = BigRational::one;
    // constraint matrix A x = b
    let mut a: Vec<Vec<BigRational>> = vec![vec![zero(); nvars]; nrows];
    let mut b: Vec<BigRational> = vec![zero(); nrows];
    for c in 0..d {
        for (i, p) in s.iter().enumerate() {
            a[c][i] = p.coords()[c].clone();
        }
        for (j, p) in t.iter().enumerate() {
            a[c][s.len() + j] = -p.coords()[c].clone();
        }
    }
    for i in 0..s.len() {
        a[d][i] = one();
    }
    for j in 0..t.len() {
        a[d + 1][s.len() + j] = one();
    }
    b[d] = one();
    b[d + 1] = one();
    for r in 0..nrows {
        if b[r].is_negative() {
            b[r] = -b[r].clone();
            for x in &mut a[r] {
                *x = -x.clone();
            }
        }
    }
    // tableau with artificial columns nvars..nvars+nrows
    let ncols = nvars + nrows;
    let mut tab: Vec<Vec<BigRational>> = (0..nrows)
        .map(|r| {
            let mut row = a[r].clone();
            row.extend((0..nrows).map(|q| if q == r { one() } else { zero() }));
            row.push(b[r].clone());
            row
        })
        .collect();
    let mut basis: Vec<usize> = (nvars..ncols).collect();
    let mut cost: Vec<BigRational> = vec![zero(); ncols + 1];
    for row in &tab {
        for (j, x) in row.iter().enumerate() {
            if j < nvars || j == ncols {
                cost[j] -= x;
            }
        }
    }
    loop {
        let Some(enter) = (0..ncols).find(|&j| cost[j].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, BigRational)> = None;
        for r in 0..nrows {
            if tab[r][enter].is_positive() {
                let ratio = &tab[r][ncols] / &tab[r][enter];
                let better = match &leave {
                    None => true,
                    Some((lr, best)) => ratio < *best || (ratio == *best && basis[r] < basis[*lr]),
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
        }
        let Some((r, _)) = leave else {
            // unbounded cannot happen for a phase-one objective bounded below
            break;
        };
        let pivot = tab[r][enter].clone();
        for x in &mut tab[r] {
            *x /= &pivot;
        }
        let pivot_row = tab[r].clone();
        for (q, row) in tab.iter_mut().enumerate() {
            if q != r && !row[enter].is_zero() {
                let f = row[enter].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
            }
        }
        let f = cost[enter].clone();
        for (x, p) in cost.iter_mut().zip(&pivot_row) {
            *x -= &f * p;
        }
        basis[r] = enter;
    }
    cost[ncols].is_zero()
}
