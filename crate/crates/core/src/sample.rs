//! Seeded random inputs: elements, stabilizer elements, step functions.
//!
//! Everything is drawn from a caller-supplied [`Rng`]; the `*_seeded`
//! helpers fix a ChaCha8 stream so outputs are reproducible.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactnum::{Coeff, Dyadic, GaussSqrt2};
use crate::plgroup::{from_partitions, FElement, TElement};
use crate::stepfun::StepFunction;

/// Largest grid resolution accepted by the samplers.
pub const MAX_DEPTH: u32 = 60;

/// Most interior points placed in one random partition.
const MAX_INTERIOR: usize = 6;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn check_depth(depth: u32) -> Result<()> {
    if depth == 0 || depth > MAX_DEPTH {
        return Err(Error::Precondition(alloc::format!(
            "depth must be in 1..={MAX_DEPTH}, got {depth}"
        )));
    }
    Ok(())
}

/// `count` distinct sorted grid points `j/2^depth` strictly inside `(lo, hi)`.
/// Both ends must be multiples of `2^-depth`.
fn grid_points<R: Rng + ?Sized>(rng: &mut R, lo: &Dyadic, hi: &Dyadic, depth: u32, count: usize) -> Vec<Dyadic> {
    let slots = (hi - lo).mul_pow2(depth as i64);
    let slots: u64 = u64::try_from(slots.numerator()).expect("grid fits in u64") - 1;
    let count = count.min(slots as usize);
    let mut picks: Vec<usize> = index::sample(rng, slots as usize, count).into_vec();
    picks.sort_unstable();
    picks
        .into_iter()
        .map(|j| lo + &Dyadic::new(BigInt::from(j as u64 + 1), depth))
        .collect()
}

fn interior_count<R: Rng + ?Sized>(rng: &mut R, depth: u32, cap: usize) -> usize {
    let grid_cap = if depth >= 16 {
        cap
    } else {
        ((1usize << depth) - 1).min(cap)
    };
    rng.gen_range(0..=grid_cap)
}

/// A random dyadic partition of `[0, 1]` with `interior` inner points on
/// the grid of mesh `2^-depth`.
pub fn random_partition<R: Rng + ?Sized>(rng: &mut R, depth: u32, interior: usize) -> Vec<Dyadic> {
    let mut pts = alloc::vec![Dyadic::zero()];
    pts.extend(grid_points(rng, &Dyadic::zero(), &Dyadic::one(), depth, interior));
    pts.push(Dyadic::one());
    pts
}

/// Element of `F` built from two random partitions with denominators at
/// most `2^max_depth`.
pub fn random_element_with<R: Rng + ?Sized>(rng: &mut R, max_depth: u32) -> Result<FElement> {
    check_depth(max_depth)?;
    let n = interior_count(rng, max_depth, MAX_INTERIOR);
    let xs = random_partition(rng, max_depth, n);
    let ys = random_partition(rng, max_depth, n);
    from_partitions(&xs, &ys, None)
}

/// Deterministic for a fixed `(max_depth, seed)`.
pub fn random_element(max_depth: u32, seed: u64) -> Result<FElement> {
    random_element_with(&mut rng_from_seed(seed), max_depth)
}

/// Random element of the stabilizer `F_p` of a dyadic `p ∈ (0, 1)`.
pub fn random_fixing<R: Rng + ?Sized>(rng: &mut R, max_depth: u32, p: &Dyadic) -> Result<FElement> {
    check_depth(max_depth)?;
    if !p.in_open_unit_interval() {
        return Err(Error::Precondition(alloc::format!(
            "stabilizer point {p} must lie in (0,1)"
        )));
    }
    let depth = max_depth.max(p.exponent());
    let mut sides = Vec::new();
    for (lo, hi) in [(Dyadic::zero(), p.clone()), (p.clone(), Dyadic::one())] {
        let n = interior_count(rng, depth, 3);
        sides.push((
            grid_points(rng, &lo, &hi, depth, n),
            grid_points(rng, &lo, &hi, depth, n),
        ));
    }
    let mut xs = alloc::vec![Dyadic::zero()];
    let mut ys = alloc::vec![Dyadic::zero()];
    let (left, right) = (&sides[0], &sides[1]);
    // both sides use one grid, so equal requested counts give equal lengths
    let nl = left.0.len().min(left.1.len());
    let nr = right.0.len().min(right.1.len());
    xs.extend(left.0.iter().take(nl).cloned());
    ys.extend(left.1.iter().take(nl).cloned());
    xs.push(p.clone());
    ys.push(p.clone());
    xs.extend(right.0.iter().take(nr).cloned());
    ys.extend(right.1.iter().take(nr).cloned());
    xs.push(Dyadic::one());
    ys.push(Dyadic::one());
    from_partitions(&xs, &ys, None)
}

/// Random element of `T`: a random element of `F` followed by a rotation.
pub fn random_t_element<R: Rng + ?Sized>(rng: &mut R, max_depth: u32) -> Result<TElement> {
    let f = random_element_with(rng, max_depth)?;
    let h = Dyadic::new(
        BigInt::from(rng.gen_range(0..(1u64 << max_depth.min(16)))),
        max_depth.min(16),
    );
    Ok(TElement::rotation(&h).compose(&TElement::embed(&f)))
}

fn small_rational<R: Rng + ?Sized>(rng: &mut R, height: i64) -> BigRational {
    if rng.gen_bool(0.4) {
        return BigRational::from_integer(BigInt::from(0));
    }
    BigRational::new(
        BigInt::from(rng.gen_range(-height..=height)),
        BigInt::from(rng.gen_range(1..=height)),
    )
}

/// Random element of `Q(i, √2)` with entries of height at most `height`.
pub fn random_gauss<R: Rng + ?Sized>(rng: &mut R, height: i64) -> GaussSqrt2 {
    GaussSqrt2::new(
        small_rational(rng, height),
        small_rational(rng, height),
        small_rational(rng, height),
        small_rational(rng, height),
    )
}

/// Random coefficient with up to `max_terms` phase degrees in
/// `-max_degree..=max_degree`.
pub fn random_coeff<R: Rng + ?Sized>(rng: &mut R, max_terms: usize, max_degree: i64, height: i64) -> Coeff {
    let terms = rng.gen_range(0..=max_terms);
    (0..terms).fold(Coeff::zero(), |acc, _| {
        let m = rng.gen_range(-max_degree..=max_degree);
        &acc + &Coeff::monomial(random_gauss(rng, height), m)
    })
}

/// Random step function with at most `max_pieces` pieces, cuts on the grid
/// of mesh `2^-depth`, and small random coefficients.
pub fn random_step_function<R: Rng + ?Sized>(rng: &mut R, depth: u32, max_pieces: usize) -> Result<StepFunction> {
    check_depth(depth)?;
    let n = interior_count(rng, depth, max_pieces.saturating_sub(1));
    let cuts = random_partition(rng, depth, n);
    let values = (0..cuts.len() - 1).map(|_| random_coeff(rng, 2, 3, 9)).collect();
    StepFunction::new(cuts, values)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn depth_one_is_identity() {
        for seed in 0..20 {
            assert!(random_element(1, seed).unwrap().is_identity());
        }
    }

    #[test]
    fn deterministic_for_fixed_seed() {
        for seed in 0..20 {
            assert_eq!(random_element(6, seed).unwrap(), random_element(6, seed).unwrap());
        }
    }

    #[test]
    fn stabilizer_samples_fix_p() {
        let mut rng = rng_from_seed(7);
        for p in ["1/2", "1/4", "3/8", "13/16"] {
            let p: Dyadic = p.parse().unwrap();
            for _ in 0..50 {
                assert!(random_fixing(&mut rng, 5, &p).unwrap().fixes(&p));
            }
        }
    }

    #[test]
    fn rejects_bad_depth() {
        assert!(random_element(0, 1).is_err());
        assert!(random_element(MAX_DEPTH + 1, 1).is_err());
    }

    #[test]
    fn step_functions_respect_piece_bound() {
        let mut rng = rng_from_seed(3);
        for _ in 0..100 {
            assert!(random_step_function(&mut rng, 4, 8).unwrap().piece_count() <= 8);
        }
    }
}
