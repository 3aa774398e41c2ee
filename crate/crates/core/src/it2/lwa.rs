//! Linguistic weighted average of trapezoidal word models under crisp weights.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::grid::{DiscretizationGrid, SampledFou};
use super::TrapezoidIt2;

fn normalized_weights<T: Scalar>(count: usize, weights: &[T]) -> Result<Vec<T>> {
    if count == 0 {
        return Err(Error::domain("nothing to aggregate"));
    }
    if weights.len() != count {
        return Err(Error::domain(format!(
            "{count} inputs but {} weights",
            weights.len()
        )));
    }
    if weights.iter().any(|w| !(w.is_finite() && *w >= T::zero())) {
        return Err(Error::domain("weights must be finite and nonnegative"));
    }
    let total: T = weights.iter().copied().sum();
    if !(total > T::zero()) {
        return Err(Error::domain("weights sum to zero"));
    }
    Ok(weights.iter().map(|&w| w / total).collect())
}

/// Parameter-wise weighted average of all nine trapezoid parameters,
/// lower-function height included.
pub fn lwa_parameter_average<T: Scalar>(
    inputs: &[TrapezoidIt2<T>],
    weights: &[T],
) -> Result<TrapezoidIt2<T>> {
    let weights = normalized_weights(inputs.len(), weights)?;
    let mut params = [T::zero(); 9];
    for (fou, &w) in inputs.iter().zip(&weights) {
        for (acc, p) in params.iter_mut().zip(fou.to_params()) {
            *acc = *acc + w * p;
        }
    }
    // normalized weights may sum to 1 + ulp; keep each average inside its inputs' range
    for (k, acc) in params.iter_mut().enumerate() {
        let (lo, hi) = inputs
            .iter()
            .map(|f| f.to_params()[k])
            .fold((T::infinity(), T::neg_infinity()), |(lo, hi), p| {
                (lo.min(p), hi.max(p))
            });
        *acc = acc.max(lo).min(hi);
    }
    TrapezoidIt2::from_params(params)
}

/// One membership function as a stack of alpha-cuts. `left` is nondecreasing
/// and `right` nonincreasing in the level.
struct AlphaCuts<T> {
    levels: Vec<T>,
    left: Vec<T>,
    right: Vec<T>,
}

impl<T: Scalar> AlphaCuts<T> {
    /// Weighted average of the alpha-cuts of trapezoids `knots` with plateau
    /// `heights`, at `count` levels spanning `[0, top]`.
    fn average(knots: &[([T; 4], T)], weights: &[T], top: T, count: usize) -> Self {
        let last = T::from_usize(count - 1).unwrap();
        let levels: Vec<T> = (0..count)
            .map(|j| top * T::from_usize(j).unwrap() / last)
            .collect();
        let mut left = vec![T::zero(); count];
        let mut right = vec![T::zero(); count];
        for (j, &alpha) in levels.iter().enumerate() {
            for (&([a, b, c, d], h), &w) in knots.iter().zip(weights) {
                let t = alpha / h;
                left[j] = left[j] + w * (a + t * (b - a));
                right[j] = right[j] + w * (d - t * (d - c));
            }
        }
        AlphaCuts {
            levels,
            left,
            right,
        }
    }

    fn grade(&self, x: T) -> T {
        let top = self.levels.len() - 1;
        if x < self.left[0] || x > self.right[0] {
            return T::zero();
        }
        let rising = {
            let j = self.left.partition_point(|&p| p <= x) - 1;
            if j >= top {
                self.levels[top]
            } else {
                let (p0, p1) = (self.left[j], self.left[j + 1]);
                self.levels[j] + (self.levels[j + 1] - self.levels[j]) * (x - p0) / (p1 - p0)
            }
        };
        let falling = {
            let j = self.right.partition_point(|&p| p >= x) - 1;
            if j >= top {
                self.levels[top]
            } else {
                let (p0, p1) = (self.right[j], self.right[j + 1]);
                self.levels[j] + (self.levels[j + 1] - self.levels[j]) * (p0 - x) / (p0 - p1)
            }
        };
        rising.min(falling)
    }
}

/// Alpha-cut weighted average. Upper functions are combined on levels
/// `[0, 1]`, lower functions on `[0, min height]`, each with `alpha_levels`
/// levels, and the result is sampled on `grid`.
pub fn lwa_exact<T: Scalar>(
    inputs: &[TrapezoidIt2<T>],
    weights: &[T],
    alpha_levels: usize,
    grid: &DiscretizationGrid<T>,
) -> Result<SampledFou<T>> {
    let weights = normalized_weights(inputs.len(), weights)?;
    if alpha_levels < 2 {
        return Err(Error::domain(format!(
            "need at least 2 alpha levels, got {alpha_levels}"
        )));
    }
    let min_height = inputs
        .iter()
        .map(|fou| fou.height)
        .fold(T::one(), |acc, h| acc.min(h));

    let upper_knots: Vec<_> = inputs.iter().map(|fou| (fou.umf, T::one())).collect();
    let lower_knots: Vec<_> = inputs.iter().map(|fou| (fou.lmf, fou.height)).collect();
    let upper = AlphaCuts::average(&upper_knots, &weights, T::one(), alpha_levels);
    let lower = AlphaCuts::average(&lower_knots, &weights, min_height, alpha_levels);

    let xs = grid.samples();
    let upper_grades = xs.iter().map(|&x| upper.grade(x)).collect();
    let lower_grades = xs.iter().map(|&x| lower.grade(x)).collect();
    SampledFou::new(xs, upper_grades, lower_grades)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::it2::IntervalFou;

    fn word(p: [f64; 9]) -> TrapezoidIt2<f64> {
        TrapezoidIt2::from_params(p).unwrap()
    }

    fn ss1_words() -> Vec<TrapezoidIt2<f64>> {
        vec![
            word([0.59, 2.00, 3.00, 4.41, 1.79, 2.50, 2.50, 3.21, 0.59]),
            word([4.38, 6.50, 8.00, 9.62, 6.79, 7.38, 7.38, 8.21, 0.49]),
            word([3.06, 4.99, 5.06, 7.00, 3.82, 4.99, 5.06, 6.27, 1.00]),
            word([3.50, 4.99, 5.03, 6.85, 3.80, 4.99, 5.03, 6.24, 1.00]),
        ]
    }

    #[test]
    fn parameter_average_ss1() {
        let y = lwa_parameter_average(&ss1_words(), &[1.0; 4]).unwrap();
        let expected = [2.88, 4.62, 5.27, 6.97, 4.05, 4.97, 4.99, 5.98, 0.77];
        for (got, want) in y.to_params().iter().zip(expected) {
            assert!((got - want).abs() <= 0.005, "{got} vs {want}");
        }
    }

    #[test]
    fn parameter_average_stays_within_inputs() {
        let w = TrapezoidIt2::new([0.0, 1.0, 2.0, 3.0], [0.5, 1.0, 2.0, 2.5], 1.0).unwrap();
        let avg = lwa_parameter_average(&[w, w, w], &[0.1, 0.6, 0.2]).unwrap();
        assert_eq!(avg, w);
    }

    #[test]
    fn parameter_average_identity_and_errors() {
        let w = ss1_words()[0];
        assert_eq!(lwa_parameter_average(&[w], &[1.0]).unwrap(), w);
        let copies = lwa_parameter_average(&[w, w, w], &[0.2, 0.3, 0.5]).unwrap();
        for (a, b) in copies.to_params().iter().zip(w.to_params()) {
            assert!((a - b).abs() < 1e-12);
        }
        assert!(lwa_parameter_average(&[w, w], &[0.0, 0.0]).is_err());
        assert!(lwa_parameter_average(&[w, w], &[1.0]).is_err());
        assert!(lwa_parameter_average::<f64>(&[], &[]).is_err());
        assert!(lwa_parameter_average(&[w], &[-1.0]).is_err());
    }

    #[test]
    fn exact_single_input_reproduces_samples() {
        let grid = DiscretizationGrid::default();
        let w = ss1_words()[0];
        let y = lwa_exact(&[w], &[1.0], 11, &grid).unwrap();
        let direct = w.sample(&grid);
        for k in 0..grid.count() {
            assert!((y.upper()[k] - direct.upper()[k]).abs() < 1e-9);
            assert!((y.lower()[k] - direct.lower()[k]).abs() < 1e-9);
        }
    }

    #[test]
    fn exact_height_is_minimum() {
        let grid = DiscretizationGrid::default();
        let y = lwa_exact(&ss1_words(), &[1.0; 4], 101, &grid).unwrap();
        let top = y.lower().iter().copied().fold(0.0, f64::max);
        assert!((top - 0.49).abs() < 1e-12);
        let averaged = lwa_parameter_average(&ss1_words(), &[1.0; 4]).unwrap();
        assert!((averaged.height - 0.77).abs() < 0.005);
    }

    #[test]
    fn exact_rejects_bad_levels() {
        let grid = DiscretizationGrid::default();
        assert!(lwa_exact(&ss1_words(), &[1.0; 4], 1, &grid).is_err());
    }
}
