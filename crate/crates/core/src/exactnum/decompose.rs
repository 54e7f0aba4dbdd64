use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::exactnum::Dyadic;

/// Writes `x > 0` as a sum of exactly `k` powers of two, returning the
/// exponents in non-increasing order.
///
/// Starts from the binary expansion and repeatedly splits the smallest
/// summand `2^a` into `2^(a-1) + 2^(a-1)`, so the result is deterministic.
pub fn decompose_power_sum(x: &Dyadic, k: usize) -> Result<Vec<i64>> {
    if !x.is_positive() {
        return Err(Error::Precondition(alloc::format!(
            "power-sum decomposition needs a positive value, got {x}"
        )));
    }
    let mut terms = x.binary_digits();
    if k < terms.len() {
        return Err(Error::InfeasibleDecomposition {
            x: x.clone(),
            k,
            popcount: terms.len(),
        });
    }
    terms.reserve(k - terms.len());
    while terms.len() < k {
        // the smallest summand is always last
        let a = terms.pop().expect("non-empty expansion");
        terms.push(a - 1);
        terms.push(a - 1);
    }
    Ok(terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn d(s: &str) -> Dyadic {
        s.parse().unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(decompose_power_sum(&d("3/4"), 2).unwrap(), vec![-1, -2]);
        assert_eq!(decompose_power_sum(&d("3/4"), 3).unwrap(), vec![-1, -3, -3]);
        assert_eq!(decompose_power_sum(&d("1/4"), 1).unwrap(), vec![-2]);
    }

    #[test]
    fn repeated_splits_stay_sorted() {
        // 1/2 -> 1/4+1/4 -> 1/4+1/8+1/8 -> 1/4+1/8+1/16+1/16
        assert_eq!(decompose_power_sum(&d("1/2"), 4).unwrap(), vec![-2, -3, -4, -4]);
    }

    #[test]
    fn infeasible() {
        let err = decompose_power_sum(&d("7/8"), 2).unwrap_err();
        assert!(matches!(err, Error::InfeasibleDecomposition { popcount: 3, .. }));
        assert!(decompose_power_sum(&Dyadic::zero(), 1).is_err());
    }
}
