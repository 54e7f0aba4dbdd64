//! Elements of Thompson's groups `F` and `T` as exact breakpoint lists.

mod construct;
mod felement;
mod telement;

use alloc::vec::Vec;

pub use construct::{from_partitions, gamma_translation, stabilizer_generators};
pub use felement::FElement;
pub use telement::TElement;

use crate::error::{Error, Result};
use crate::exactnum::Dyadic;

/// Which one-sided derivative to read.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// Checks strict monotonicity and power-of-two slopes of a polyline and
/// drops interior points where the slope does not change.
pub(crate) fn canonical_points(points: Vec<(Dyadic, Dyadic)>) -> Result<Vec<(Dyadic, Dyadic)>> {
    let mut slopes = Vec::with_capacity(points.len());
    for w in points.windows(2) {
        let run = &w[1].0 - &w[0].0;
        let rise = &w[1].1 - &w[0].1;
        if !run.is_positive() || !rise.is_positive() {
            return Err(Error::NotMonotone);
        }
        slopes.push(rise.log2_ratio(&run).ok_or(Error::NonPowerOfTwoSlope { rise, run })?);
    }
    let last = points.len().saturating_sub(1);
    Ok(points
        .into_iter()
        .enumerate()
        .filter(|&(i, _)| i == 0 || i == last || slopes[i - 1] != slopes[i])
        .map(|(_, p)| p)
        .collect())
}
