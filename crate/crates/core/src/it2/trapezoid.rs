use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::grid::{DiscretizationGrid, SampledFou};
use super::{centroid, CentroidInterval};

/// Interval type-2 set whose upper and lower membership functions are
/// trapezoids.
///
/// The upper function has knots `(a, b, c, d)` and height 1. The lower
/// function has knots `(e, f, g, i)` and plateau height `h` in `(0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrapezoidIt2<T> {
    pub umf: [T; 4],
    pub lmf: [T; 4],
    pub height: T,
}

/// Anything that yields upper and lower membership grades at a point.
pub trait IntervalFou<T: Scalar> {
    fn upper(&self, x: T) -> T;
    fn lower(&self, x: T) -> T;

    fn sample(&self, grid: &DiscretizationGrid<T>) -> SampledFou<T> {
        let xs = grid.samples();
        let upper = xs.iter().map(|&x| self.upper(x)).collect();
        let lower = xs.iter().map(|&x| self.lower(x)).collect();
        SampledFou::new(xs, upper, lower).expect("grid samples and grades share a length")
    }
}

/// Trapezoid with plateau value `height`. Knots take the plateau value, so a
/// zero-width edge behaves as a step.
pub(crate) fn trapezoid_grade<T: Scalar>(knots: &[T; 4], height: T, x: T) -> T {
    let [a, b, c, d] = *knots;
    if x < a || x > d {
        T::zero()
    } else if x >= b && x <= c {
        height
    } else if x < b {
        height * (x - a) / (b - a)
    } else {
        height * (d - x) / (d - c)
    }
}

impl<T: Scalar> TrapezoidIt2<T> {
    pub fn new(umf: [T; 4], lmf: [T; 4], height: T) -> Result<Self> {
        let fou = TrapezoidIt2 { umf, lmf, height };
        fou.validate().map_err(Error::InvalidFou)?;
        Ok(fou)
    }

    /// Returns the first violated constraint, if any.
    pub fn validate(&self) -> std::result::Result<(), String> {
        let [a, b, c, d] = self.umf;
        let [e, f, g, i] = self.lmf;
        let h = self.height;
        if self
            .umf
            .iter()
            .chain(self.lmf.iter())
            .chain(std::iter::once(&h))
            .any(|v| !v.is_finite())
        {
            return Err("parameters must be finite".into());
        }
        if !(a <= b && b <= c && c <= d) {
            return Err(format!("UMF knots out of order: {a}, {b}, {c}, {d}"));
        }
        if !(e <= f && f <= g && g <= i) {
            return Err(format!("LMF knots out of order: {e}, {f}, {g}, {i}"));
        }
        if h > T::one() {
            return Err(format!("height exceeds 1 (h = {h})"));
        }
        if !(h > T::zero()) {
            return Err(format!("height must be positive (h = {h})"));
        }
        if e < a || i > d {
            return Err(format!(
                "LMF support [{e}, {i}] not inside UMF support [{a}, {d}]"
            ));
        }
        // both grades are piecewise linear, so checking every knot suffices
        let slack = T::snap_tolerance();
        for x in self.umf.iter().chain(self.lmf.iter()) {
            if self.lower(*x) > self.upper(*x) + slack {
                return Err(format!("LMF rises above UMF at x = {x}"));
            }
        }
        Ok(())
    }

    pub fn support(&self) -> (T, T) {
        (self.umf[0], self.umf[3])
    }

    pub fn centroid(&self, grid: &DiscretizationGrid<T>) -> Result<CentroidInterval<T>> {
        centroid(&self.sample(grid))
    }

    /// Nine parameters in `a b c d e f g i h` order.
    pub fn to_params(&self) -> [T; 9] {
        let [a, b, c, d] = self.umf;
        let [e, f, g, i] = self.lmf;
        [a, b, c, d, e, f, g, i, self.height]
    }

    pub fn from_params(p: [T; 9]) -> Result<Self> {
        Self::new([p[0], p[1], p[2], p[3]], [p[4], p[5], p[6], p[7]], p[8])
    }
}

impl<T: Scalar> IntervalFou<T> for TrapezoidIt2<T> {
    fn upper(&self, x: T) -> T {
        trapezoid_grade(&self.umf, T::one(), x)
    }

    fn lower(&self, x: T) -> T {
        trapezoid_grade(&self.lmf, self.height, x)
    }
}
