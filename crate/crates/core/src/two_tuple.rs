//! 2-tuple linguistic model: mean of term indices plus symbolic translation.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{round_half_away, Scalar};

/// `(s_index, alpha)` with `alpha` in `[-0.5, 0.5]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoTuple<T> {
    pub term_index: usize,
    pub alpha: T,
}

impl<T: Scalar> TwoTuple<T> {
    /// The numeric value `index + alpha` the tuple stands for.
    pub fn value(&self) -> T {
        T::from_usize(self.term_index).unwrap() + self.alpha
    }
}

/// Arithmetic mean of the term indices.
pub fn aggregate_beta<T: Scalar>(indices: &[usize]) -> Result<T> {
    if indices.is_empty() {
        return Err(Error::domain("cannot aggregate an empty list of indices"));
    }
    let total = T::from_usize(indices.iter().sum()).unwrap();
    Ok(total / T::from_usize(indices.len()).unwrap())
}

/// Splits `beta` into the nearest term (halves round up) and the remainder.
pub fn to_two_tuple<T: Scalar>(beta: T, g: usize) -> Result<TwoTuple<T>> {
    let top = T::from_usize(g).unwrap();
    if !(beta >= T::zero() && beta <= top) {
        return Err(Error::domain(format!("beta {beta} outside [0, {g}]")));
    }
    let rounded = round_half_away(beta);
    Ok(TwoTuple {
        term_index: rounded.to_usize().expect("rounded beta within [0, g]"),
        alpha: beta - rounded,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn beta_examples() {
        assert_eq!(aggregate_beta::<f64>(&[1, 3, 2, 2]).unwrap(), 2.0);
        assert_eq!(aggregate_beta::<f64>(&[3, 4, 2, 1]).unwrap(), 2.5);
        assert_eq!(aggregate_beta::<f64>(&[2, 2, 2, 2]).unwrap(), 2.0);
        assert!(aggregate_beta::<f64>(&[]).is_err());
    }

    #[test]
    fn tuple_examples() {
        let t = to_two_tuple(2.3_f64, 4).unwrap();
        assert_eq!(t.term_index, 2);
        assert!((t.alpha - 0.3).abs() < 1e-12);

        assert_eq!(
            to_two_tuple(2.0_f64, 4).unwrap(),
            TwoTuple {
                term_index: 2,
                alpha: 0.0
            }
        );
        assert_eq!(
            to_two_tuple(2.5_f64, 4).unwrap(),
            TwoTuple {
                term_index: 3,
                alpha: -0.5
            }
        );
    }

    #[test]
    fn out_of_range_beta() {
        assert!(to_two_tuple(4.2_f64, 4).is_err());
        assert!(to_two_tuple(-0.1_f64, 4).is_err());
        assert!(to_two_tuple(f64::NAN, 4).is_err());
        assert_eq!(to_two_tuple(4.0_f64, 4).unwrap().term_index, 4);
    }
}
