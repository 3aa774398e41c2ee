//! Extension-principle computing with words over triangular type-1 terms.
//!
//! Each word becomes a triangle `(l, m, r)` on `[0, 1]`, the triangles are
//! averaged componentwise, and the average is mapped back to the nearest
//! recommendation word under a weighted Euclidean distance.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{lit, Scalar};

/// Triangular membership function given by its left foot, apex and right foot.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TriTuple<T> {
    pub l: T,
    pub m: T,
    pub r: T,
}

impl<T: Scalar> TriTuple<T> {
    pub fn new(l: T, m: T, r: T) -> Result<Self> {
        if !(l <= m && m <= r) {
            return Err(Error::domain(format!(
                "tri-tuple must satisfy l <= m <= r, got ({l}, {m}, {r})"
            )));
        }
        Ok(TriTuple { l, m, r })
    }

    pub fn is_ordered(&self) -> bool {
        self.l <= self.m && self.m <= self.r
    }
}

/// Component weights of the distance used for linguistic approximation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DistanceWeights<T> {
    pub left: T,
    pub middle: T,
    pub right: T,
}

impl<T: Scalar> DistanceWeights<T> {
    pub fn new(left: T, middle: T, right: T) -> Result<Self> {
        if [left, middle, right].iter().any(|w| !(*w >= T::zero())) {
            return Err(Error::domain("distance weights must be nonnegative"));
        }
        Ok(DistanceWeights {
            left,
            middle,
            right,
        })
    }
}

impl<T: Scalar> Default for DistanceWeights<T> {
    /// 0.2 / 0.6 / 0.2, emphasising the apex.
    fn default() -> Self {
        DistanceWeights {
            left: lit(0.2),
            middle: lit(0.6),
            right: lit(0.2),
        }
    }
}

/// Uniform partition of `[0, 1]` into `cardinality` triangles centred at `i/g`,
/// with shoulders at both ends.
pub fn uniform_triangular_partition<T: Scalar>(cardinality: usize) -> Result<Vec<TriTuple<T>>> {
    if cardinality < 2 {
        return Err(Error::domain(format!(
            "partition needs g >= 1 (cardinality >= 2), got cardinality {cardinality}"
        )));
    }
    let g = cardinality - 1;
    let step = |i: usize| T::from_usize(i).unwrap() / T::from_usize(g).unwrap();
    Ok((0..=g)
        .map(|i| TriTuple {
            l: if i == 0 { T::zero() } else { step(i - 1) },
            m: step(i),
            r: if i == g { T::one() } else { step(i + 1) },
        })
        .collect())
}

/// Componentwise arithmetic mean.
pub fn aggregate_tri_tuples<T: Scalar>(inputs: &[TriTuple<T>]) -> Result<TriTuple<T>> {
    if inputs.is_empty() {
        return Err(Error::domain(
            "cannot aggregate an empty list of tri-tuples",
        ));
    }
    let n = T::from_usize(inputs.len()).unwrap();
    let sum = |f: fn(&TriTuple<T>) -> T| inputs.iter().map(f).sum::<T>() / n;
    Ok(TriTuple {
        l: sum(|t| t.l),
        m: sum(|t| t.m),
        r: sum(|t| t.r),
    })
}

pub fn weighted_distance<T: Scalar>(
    term: &TriTuple<T>,
    c: &TriTuple<T>,
    w: &DistanceWeights<T>,
) -> T {
    let dl = term.l - c.l;
    let dm = term.m - c.m;
    let dr = term.r - c.r;
    (w.left * dl * dl + w.middle * dm * dm + w.right * dr * dr).sqrt()
}

/// Index of the closest term and its distance. Exact ties go to the lowest index.
pub fn linguistic_approximation<T: Scalar>(
    c: &TriTuple<T>,
    recommendation_terms: &[TriTuple<T>],
    weights: &DistanceWeights<T>,
) -> Result<(usize, T)> {
    let mut best: Option<(usize, T)> = None;
    for (index, term) in recommendation_terms.iter().enumerate() {
        let d = weighted_distance(term, c, weights);
        match best {
            Some((_, best_d)) if !(d < best_d) => {}
            _ => best = Some((index, d)),
        }
    }
    best.ok_or_else(|| Error::domain("recommendation term set is empty"))
}
