//! Exact computational model of Thompson's groups `F` and `T` acting on the
//! unit interval and the circle, together with the one-parameter family of
//! quasi-regular representations `π_s(γ)f = (dγ_*μ/dμ)^{1/2+is}·f∘γ^{-1}`.
//!
//! Everything here is exact: breakpoints are dyadic rationals, and the
//! representation parameter `s` enters only through the formal phase
//! `φ = e^{i·s·ln 2}`, so unitarity and homomorphism laws hold as identities
//! of canonical forms rather than up to rounding.

#![no_std]

extern crate alloc;

pub mod error;
pub mod exactnum;
pub mod plgroup;
pub mod reptheory;
pub mod sample;
pub mod stepfun;

pub use error::{Error, Result};
pub use exactnum::{Coeff, Dyadic, GaussSqrt2};
pub use plgroup::{FElement, Side, TElement};
pub use stepfun::{ExpStep, Step, StepFunction};
