//! Centroid type-reduction by the enhanced Karnik-Mendel iteration.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{lit, Scalar};

use super::grid::SampledFou;

/// `[c_l, c_r]` together with the 1-based sample indices of the switch points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CentroidInterval<T> {
    pub c_l: T,
    pub c_r: T,
    pub switch_left: usize,
    pub switch_right: usize,
}

impl<T: Scalar> CentroidInterval<T> {
    pub fn mean(&self) -> T {
        centroid_mean(self)
    }
}

pub fn centroid_mean<T: Scalar>(ci: &CentroidInterval<T>) -> T {
    (ci.c_l + ci.c_r) / lit(2.0)
}

#[derive(Clone, Copy)]
enum Side {
    Left,
    Right,
}

/// Weighted average with the given side's mixing at switch index `k`
/// (points `0..=k` take the first grade, the rest the second).
fn mixed_average<T: Scalar>(xs: &[T], upper: &[T], lower: &[T], k: usize, side: Side) -> T {
    let (head, tail) = match side {
        Side::Left => (upper, lower),
        Side::Right => (lower, upper),
    };
    let mut num = T::zero();
    let mut den = T::zero();
    for i in 0..xs.len() {
        let w = if i <= k { head[i] } else { tail[i] };
        num = num + xs[i] * w;
        den = den + w;
    }
    num / den
}

/// Largest index whose sample is `<= y`, clamped into `[0, hi]`.
fn locate<T: Scalar>(xs: &[T], y: T, hi: usize) -> usize {
    xs.partition_point(|&x| x <= y).saturating_sub(1).min(hi)
}

fn ekm_side<T: Scalar>(xs: &[T], upper: &[T], lower: &[T], side: Side) -> (T, usize) {
    let n = xs.len();
    let hi = n - 2;
    let seed = match side {
        Side::Left => lit::<T>(n as f64 / 2.4),
        Side::Right => lit::<T>(n as f64 / 1.7),
    };
    let mut k = seed
        .round()
        .to_usize()
        .unwrap_or(1)
        .saturating_sub(1)
        .min(hi);

    let (head, tail) = match side {
        Side::Left => (upper, lower),
        Side::Right => (lower, upper),
    };
    let mut num = T::zero();
    let mut den = T::zero();
    for i in 0..n {
        let w = if i <= k { head[i] } else { tail[i] };
        num = num + xs[i] * w;
        den = den + w;
    }

    // bounded: each pass moves y monotonically toward the optimum
    for _ in 0..=n {
        let y = num / den;
        let next = locate(xs, y, hi);
        if next == k {
            break;
        }
        let (from, to, sign) = if next > k {
            (k + 1, next, T::one())
        } else {
            (next + 1, k, -T::one())
        };
        let mut dnum = T::zero();
        let mut dden = T::zero();
        for i in from..=to {
            let delta = head[i] - tail[i];
            dnum = dnum + xs[i] * delta;
            dden = dden + delta;
        }
        num = num + sign * dnum;
        den = den + sign * dden;
        k = next;
    }
    (mixed_average(xs, upper, lower, k, side), k)
}

/// Centroid interval of a sampled set. Samples outside the upper support are
/// ignored since they carry no weight in either mixing.
pub fn centroid<T: Scalar>(fou: &SampledFou<T>) -> Result<CentroidInterval<T>> {
    let upper = fou.upper();
    let first = upper.iter().position(|&u| u > T::zero());
    let last = upper.iter().rposition(|&u| u > T::zero());
    let (first, last) = match (first, last) {
        (Some(f), Some(l)) => (f, l),
        _ => {
            return Err(Error::Degenerate(
                "set has zero membership everywhere on the grid".into(),
            ))
        }
    };
    let xs = &fou.xs()[first..=last];
    let upper = &upper[first..=last];
    let lower = &fou.lower()[first..=last];

    if xs.len() == 1 {
        return Ok(CentroidInterval {
            c_l: xs[0],
            c_r: xs[0],
            switch_left: first + 1,
            switch_right: first + 1,
        });
    }

    let (c_l, k_l) = ekm_side(xs, upper, lower, Side::Left);
    let (c_r, k_r) = ekm_side(xs, upper, lower, Side::Right);
    Ok(CentroidInterval {
        c_l,
        c_r,
        switch_left: first + k_l + 1,
        switch_right: first + k_r + 1,
    })
}
