//! Exact dyadic rationals and the coefficient ring `Q(i, √2)[φ, φ^{-1}]`.

mod coeff;
mod decompose;
mod dyadic;

pub use coeff::{rep_scalar, Coeff, GaussSqrt2};
pub use decompose::decompose_power_sum;
pub use dyadic::Dyadic;
