#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use thompson_core::sample::{random_coeff, random_element_with, random_fixing, random_step_function, rng_from_seed};
use thompson_core::{Coeff, Dyadic, FElement, StepFunction};

pub fn d(s: &str) -> Dyadic {
    s.parse().unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    rng_from_seed(seed)
}

pub fn element(rng: &mut ChaCha8Rng, depth: u32) -> FElement {
    random_element_with(rng, depth).unwrap()
}

pub fn fixing(rng: &mut ChaCha8Rng, depth: u32, p: &Dyadic) -> FElement {
    random_fixing(rng, depth, p).unwrap()
}

pub fn step(rng: &mut ChaCha8Rng, depth: u32, pieces: usize) -> StepFunction {
    random_step_function(rng, depth, pieces).unwrap()
}

pub fn coeff(rng: &mut ChaCha8Rng) -> Coeff {
    random_coeff(rng, 3, 4, 20)
}

/// Dyadic `j/2^depth` in `[lo, hi]`, both ends multiples of `2^-depth`.
pub fn grid_point(rng: &mut ChaCha8Rng, lo: &Dyadic, hi: &Dyadic, depth: u32) -> Dyadic {
    let lo_n = lo.mul_pow2(depth as i64).to_ratio().to_integer();
    let hi_n = hi.mul_pow2(depth as i64).to_ratio().to_integer();
    let lo_n: i64 = lo_n.try_into().unwrap();
    let hi_n: i64 = hi_n.try_into().unwrap();
    Dyadic::new(BigInt::from(rng.gen_range(lo_n..=hi_n)), depth)
}

pub fn rat(n: i64, m: i64) -> BigRational {
    BigRational::new(n.into(), m.into())
}
