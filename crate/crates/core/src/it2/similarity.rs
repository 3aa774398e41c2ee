use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::grid::{DiscretizationGrid, SampledFou};
use super::IntervalFou;

/// Jaccard similarity of two sets sampled at the same points: summed minima
/// of both grade pairs over summed maxima.
pub fn jaccard<T: Scalar>(a: &SampledFou<T>, b: &SampledFou<T>) -> Result<T> {
    if a.xs() != b.xs() {
        return Err(Error::domain("sets are sampled on different grids"));
    }
    let mut num = T::zero();
    let mut den = T::zero();
    for (grades_a, grades_b) in [(a.upper(), b.upper()), (a.lower(), b.lower())] {
        for (&p, &q) in grades_a.iter().zip(grades_b) {
            num = num + p.min(q);
            den = den + p.max(q);
        }
    }
    if !(den > T::zero()) {
        return Err(Error::Degenerate(
            "both sets are identically zero on the grid".into(),
        ));
    }
    Ok(num / den)
}

pub fn jaccard_similarity<T: Scalar>(
    a: &impl IntervalFou<T>,
    b: &impl IntervalFou<T>,
    grid: &DiscretizationGrid<T>,
) -> Result<T> {
    jaccard(&a.sample(grid), &b.sample(grid))
}
