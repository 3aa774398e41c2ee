use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{lit, Scalar};

/// Uniform sampling of the domain used by centroid and similarity sums.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiscretizationGrid<T> {
    min: T,
    max: T,
    count: usize,
}

impl<T: Scalar> DiscretizationGrid<T> {
    pub const DEFAULT_COUNT: usize = 1001;

    pub fn new(min: T, max: T, count: usize) -> Result<Self> {
        if count < 3 {
            return Err(Error::domain(format!(
                "grid needs at least 3 samples, got {count}"
            )));
        }
        if !(min.is_finite() && max.is_finite() && min < max) {
            return Err(Error::domain(format!(
                "grid bounds [{min}, {max}] are not a proper interval"
            )));
        }
        Ok(DiscretizationGrid { min, max, count })
    }

    /// `[0, 10]` with the given number of samples.
    pub fn unit_scale(count: usize) -> Result<Self> {
        Self::new(T::zero(), lit(10.0), count)
    }

    pub fn min(&self) -> T {
        self.min
    }

    pub fn max(&self) -> T {
        self.max
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn step(&self) -> T {
        (self.max - self.min) / T::from_usize(self.count - 1).unwrap()
    }

    pub fn samples(&self) -> Vec<T> {
        let last = self.count - 1;
        let span = self.max - self.min;
        let denom = T::from_usize(last).unwrap();
        (0..self.count)
            .map(|k| {
                if k == last {
                    self.max
                } else {
                    self.min + span * T::from_usize(k).unwrap() / denom
                }
            })
            .collect()
    }
}

impl<T: Scalar> Default for DiscretizationGrid<T> {
    fn default() -> Self {
        Self::unit_scale(Self::DEFAULT_COUNT).expect("default grid is valid")
    }
}

/// Upper and lower grades of an interval type-2 set at fixed sample points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampledFou<T> {
    xs: Vec<T>,
    upper: Vec<T>,
    lower: Vec<T>,
}

impl<T: Scalar> SampledFou<T> {
    /// `xs` must be strictly increasing and `lower <= upper` pointwise.
    pub fn new(xs: Vec<T>, upper: Vec<T>, lower: Vec<T>) -> Result<Self> {
        if xs.len() != upper.len() || xs.len() != lower.len() {
            return Err(Error::domain("sample, upper and lower lengths differ"));
        }
        if xs.is_empty() {
            return Err(Error::domain("no samples"));
        }
        if xs.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::domain("sample points must be strictly increasing"));
        }
        let slack = T::snap_tolerance();
        for (k, (&u, &l)) in upper.iter().zip(&lower).enumerate() {
            if !(l >= T::zero() && u <= T::one() + slack && l <= u + slack) {
                return Err(Error::InvalidFou(format!(
                    "grades at sample {k} violate 0 <= lower <= upper <= 1 (lower {l}, upper {u})"
                )));
            }
        }
        Ok(SampledFou { xs, upper, lower })
    }

    pub fn xs(&self) -> &[T] {
        &self.xs
    }

    pub fn upper(&self) -> &[T] {
        &self.upper
    }

    pub fn lower(&self) -> &[T] {
        &self.lower
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }
}
