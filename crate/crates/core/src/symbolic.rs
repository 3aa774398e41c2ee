//! Symbolic computing with words: recursive convex combination of term
//! indices with rounding.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{round_half_away, Scalar};

/// Convex weights attached to the sorted input terms.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightVector<T> {
    weights: Vec<T>,
}

impl<T: Scalar> WeightVector<T> {
    pub fn new(weights: Vec<T>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::domain("weight vector is empty"));
        }
        if weights.iter().any(|w| !(*w >= T::zero() && *w <= T::one())) {
            return Err(Error::domain("every weight must lie in [0, 1]"));
        }
        let total: T = weights.iter().copied().sum();
        if (total - T::one()).abs() > T::snap_tolerance() {
            return Err(Error::domain(format!("weights must sum to 1, got {total}")));
        }
        Ok(WeightVector { weights })
    }

    pub fn equal(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("weight vector is empty"));
        }
        let w = T::one() / T::from_usize(n).unwrap();
        Ok(WeightVector {
            weights: vec![w; n],
        })
    }

    pub fn as_slice(&self) -> &[T] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }
}

/// Non-increasing, stable.
pub fn sort_terms_descending(indices: &[usize]) -> Vec<usize> {
    let mut sorted = indices.to_vec();
    sorted.sort_by(|a, b| b.cmp(a));
    sorted
}

/// Two-term combination `min(g, second + round(w1 * (first - second)))`
/// where `first >= second`.
pub fn sm2<T: Scalar>(w1: T, first_index: usize, second_index: usize, g: usize) -> Result<usize> {
    if first_index > g || second_index > first_index {
        return Err(Error::domain(format!(
            "sm2 needs 0 <= second <= first <= g, got first={first_index}, second={second_index}, g={g}"
        )));
    }
    if !(w1 >= T::zero() && w1 <= T::one()) {
        return Err(Error::domain(format!("weight {w1} outside [0, 1]")));
    }
    let span = T::from_usize(first_index - second_index).unwrap();
    let step = round_half_away(w1 * span)
        .to_usize()
        .expect("rounded step is a small nonnegative integer");
    Ok(g.min(second_index + step))
}

/// Top-down recursive aggregation of descending-sorted indices.
pub fn sm_aggregate<T: Scalar>(indices: &[usize], w: &WeightVector<T>, g: usize) -> Result<usize> {
    if indices.len() != w.len() {
        return Err(Error::domain(format!(
            "{} indices but {} weights",
            indices.len(),
            w.len()
        )));
    }
    if indices.is_empty() {
        return Err(Error::domain("nothing to aggregate"));
    }
    if let Some(bad) = indices.iter().find(|&&i| i > g) {
        return Err(Error::domain(format!("index {bad} exceeds g = {g}")));
    }
    if indices.windows(2).any(|pair| pair[0] < pair[1]) {
        return Err(Error::domain("indices must be sorted in descending order"));
    }
    Ok(combine(indices, w.as_slice(), g))
}

fn combine<T: Scalar>(indices: &[usize], weights: &[T], g: usize) -> usize {
    match indices {
        [only] => *only,
        [first, rest @ ..] => {
            let tail_weights = &weights[1..];
            let tail_total: T = tail_weights.iter().copied().sum();
            if tail_total <= T::zero() {
                // all weight on the first term
                return *first;
            }
            let renormalized: Vec<T> = tail_weights.iter().map(|&w| w / tail_total).collect();
            let tail = combine(rest, &renormalized, g);
            sm2(weights[0], *first, tail, g).expect("tail result bounded by the first index")
        }
        [] => unreachable!("checked nonempty"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sorting() {
        assert_eq!(sort_terms_descending(&[1, 3, 2, 2]), vec![3, 2, 2, 1]);
        assert_eq!(sort_terms_descending(&[2, 2, 2]), vec![2, 2, 2]);
        assert_eq!(sort_terms_descending(&[3, 4, 2, 1]), vec![4, 3, 2, 1]);
    }

    #[test]
    fn sm2_worked_steps() {
        // innermost: min(4, 1 + round(1/2 * (2 - 1))) = 2
        assert_eq!(sm2(0.5, 2, 1, 4).unwrap(), 2);
        // middle: min(4, 2 + round(1/3 * 0)) = 2
        assert_eq!(sm2(1.0 / 3.0, 2, 2, 4).unwrap(), 2);
        // outer: min(4, 2 + round(1/4 * (3 - 2))) = 2
        assert_eq!(sm2(0.25, 3, 2, 4).unwrap(), 2);
        assert_eq!(sm2(1.0, 3, 0, 4).unwrap(), 3);
    }

    #[test]
    fn sm2_rejects_bad_indices() {
        assert!(sm2(0.5, 1, 2, 4).is_err());
        assert!(sm2(0.5, 5, 2, 4).is_err());
        assert!(sm2(1.5, 3, 2, 4).is_err());
    }

    #[test]
    fn aggregate_examples() {
        let w = WeightVector::<f64>::equal(4).unwrap();
        assert_eq!(sm_aggregate(&[3, 2, 2, 1], &w, 4).unwrap(), 2);
        assert_eq!(sm_aggregate(&[4, 3, 2, 1], &w, 4).unwrap(), 3);
        assert_eq!(sm_aggregate(&[2, 2, 2, 2], &w, 4).unwrap(), 2);
        let one = WeightVector::<f64>::equal(1).unwrap();
        assert_eq!(sm_aggregate(&[3], &one, 4).unwrap(), 3);
    }

    #[test]
    fn aggregate_errors() {
        let w = WeightVector::<f64>::equal(3).unwrap();
        assert!(sm_aggregate(&[3, 2, 2, 1], &w, 4).is_err());
        assert!(sm_aggregate(&[1, 2, 3], &w, 4).is_err());
        assert!(sm_aggregate(&[7, 2, 1], &w, 4).is_err());
    }

    #[test]
    fn weight_vector_validation() {
        assert!(WeightVector::new(vec![0.5, 0.5]).is_ok());
        assert!(WeightVector::new(vec![0.5, 0.6]).is_err());
        assert!(WeightVector::new(vec![-0.5, 1.5]).is_err());
        assert!(WeightVector::<f64>::new(vec![]).is_err());
        assert!(WeightVector::<f64>::equal(0).is_err());
    }

    #[test]
    fn full_weight_on_first_term() {
        let w = WeightVector::new(vec![1.0, 0.0, 0.0]).unwrap();
        assert_eq!(sm_aggregate(&[4, 1, 0], &w, 4).unwrap(), 4);
    }
}
