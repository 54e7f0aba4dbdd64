use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::{LN_2, PI};

use crate::error::{Error, Result};
use crate::exactnum::{rep_scalar, Coeff, Dyadic};
use crate::plgroup::{FElement, Side, TElement};
use crate::stepfun::{ExpStep, StepFunction};

/// Tolerance used by [`equivalence_check`] when the caller has no preference.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Radon-Nikodym derivative `dγ_*μ/dμ` of Lebesgue measure, as exponents
/// of 2: on the image `γ([x_i, x_{i+1}])` of a piece with slope `2^k` it is
/// `2^{-k}`.
pub fn rn_derivative(gamma: &FElement) -> ExpStep {
    let cuts = gamma.breaks().iter().map(|(_, y)| y.clone()).collect();
    let values = gamma.slope_exponents().into_iter().map(|k| -k).collect();
    ExpStep::new(cuts, values).expect("image breakpoints form a partition")
}

/// Circle version of [`rn_derivative`] for the pushforward of Lebesgue
/// measure through the covering map.
pub fn rn_derivative_circle(t: &TElement) -> ExpStep {
    let mut starts: Vec<Dyadic> = t.breaks().iter().map(|(x, _)| t.evaluate(x)).collect();
    starts.push(Dyadic::zero());
    starts.sort();
    starts.dedup();
    let values = starts
        .iter()
        .map(|c| -t.slope_exponent(&t.evaluate_inverse(c), Side::Right))
        .collect();
    starts.push(Dyadic::one());
    ExpStep::new(starts, values).expect("image breakpoints form a partition")
}

/// `π_s(γ) f = (dγ_*μ/dμ)^{1/2+is} · f∘γ⁻¹`, with the parameter `s`
/// carried by the formal phase.
pub fn apply_pi(gamma: &FElement, f: &StepFunction) -> StepFunction {
    let scalar = rn_derivative(gamma).map(|m| rep_scalar(*m));
    scalar.pointwise_mul(&f.compose_with_inverse(gamma))
}

/// `ρ_s(t) f` on the circle.
pub fn apply_rho(t: &TElement, f: &StepFunction) -> StepFunction {
    let scalar = rn_derivative_circle(t).map(|m| rep_scalar(*m));
    scalar.pointwise_mul(&f.compose_with_inverse_circle(t))
}

/// `⟨π_s(γ) f, g⟩`.
pub fn matrix_coefficient(gamma: &FElement, f: &StepFunction, g: &StepFunction) -> Coeff {
    apply_pi(gamma, f).inner_product(g)
}

/// `ρ_0(t)1 = (dt_*μ/dμ)^{1/2}`: the phase-free half density.
pub fn half_density(t: &TElement) -> StepFunction {
    rn_derivative_circle(t).map(|m| {
        let g = rep_scalar(*m).coefficient(*m).expect("monomial").clone();
        Coeff::from_gauss(g)
    })
}

/// The interval and circle models are identified through the covering
/// map, which is the identity on step data.
pub fn restriction_transport(f: &StepFunction) -> StepFunction {
    f.clone()
}

/// Outcome of [`equivalence_check`]: `k` is the nearest integer to
/// `(t - s)·ln 2 / 2π`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Equivalence {
    pub equivalent: bool,
    pub k: i64,
}

/// Whether `π_s` and `π_t` are equivalent, i.e. `s - t ∈ (2π/ln 2)·Z` up to
/// `tol` in units of the period.
pub fn equivalence_check(s: f64, t: f64, tol: f64) -> Result<Equivalence> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::Precondition(format!("tolerance must be positive, got {tol}")));
    }
    if !s.is_finite() || !t.is_finite() {
        return Err(Error::Precondition("parameters must be finite".into()));
    }
    let x = (t - s) * LN_2 / (2.0 * PI);
    let nearest = libm::round(x);
    Ok(Equivalence {
        equivalent: libm::fabs(x - nearest) < tol,
        k: nearest as i64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::GaussSqrt2;
    use crate::plgroup::from_partitions;
    use alloc::string::ToString;

    fn d(s: &str) -> Dyadic {
        s.parse().unwrap()
    }

    fn gamma0() -> FElement {
        from_partitions(&[d("0"), d("1/2"), d("1")], &[d("0"), d("1/4"), d("1")], None).unwrap()
    }

    fn one() -> StepFunction {
        StepFunction::constant(Coeff::one())
    }

    #[test]
    fn rn_examples() {
        let rn = rn_derivative(&gamma0());
        assert_eq!(rn.cuts(), &[d("0"), d("1/4"), d("3/4"), d("1")]);
        assert_eq!(rn.values(), &[1, -1, 0]);
        assert_eq!(rn.integral(), Dyadic::one());
        assert!(rn_derivative(&FElement::identity()).is_constant());
        let rn = rn_derivative_circle(&TElement::rotation(&d("3/8")));
        assert!(rn.is_constant() && rn.values()[0] == 0);
        assert_eq!(
            rn_derivative_circle(&TElement::embed(&gamma0())),
            rn_derivative(&gamma0())
        );
    }

    #[test]
    fn apply_pi_examples() {
        let out = apply_pi(&gamma0(), &one());
        let half = GaussSqrt2::sqrt2().scale(&d("1/2").to_ratio());
        assert_eq!(out.cuts(), &[d("0"), d("1/4"), d("3/4"), d("1")]);
        assert_eq!(
            out.values(),
            &[
                Coeff::monomial(GaussSqrt2::sqrt2(), 1),
                Coeff::monomial(half, -1),
                Coeff::one()
            ]
        );
        assert_eq!(out.norm_sq(), Coeff::one());
        let f = StepFunction::indicator(&d("1/8"), &d("5/8")).unwrap();
        assert_eq!(apply_pi(&FElement::identity(), &f), f);
    }

    #[test]
    fn matrix_coefficient_example() {
        let c = matrix_coefficient(&gamma0(), &one(), &one());
        assert_eq!(c.to_string(), "(1/4) + (r2/4)*ph + (r2/4)*ph^-1");
        let z = c.numeric_eval(0.0);
        assert!(libm::fabs(z.re - (core::f64::consts::SQRT_2 / 2.0 + 0.25)) < 1e-9);
        assert!(libm::fabs(z.im) < 1e-12);
        assert_eq!(matrix_coefficient(&FElement::identity(), &one(), &one()), Coeff::one());
    }

    #[test]
    fn rho_agrees_with_pi_on_embedded_elements() {
        let f = StepFunction::indicator(&d("0"), &d("1/2")).unwrap();
        let g = gamma0();
        assert_eq!(
            apply_rho(&TElement::embed(&g), &restriction_transport(&f)),
            restriction_transport(&apply_pi(&g, &f))
        );
    }

    #[test]
    fn rotations_act_by_translation() {
        let f = StepFunction::indicator(&d("0"), &d("1/4")).unwrap();
        let out = apply_rho(&TElement::rotation(&d("7/8")), &f);
        let expected = StepFunction::indicator(&d("0"), &d("1/8"))
            .unwrap()
            .add(&StepFunction::indicator(&d("7/8"), &d("1")).unwrap());
        assert_eq!(out, expected);
    }

    #[test]
    fn half_density_has_no_phase() {
        let h = half_density(&TElement::embed(&gamma0()));
        assert_eq!(h.piece_count(), 3);
        assert!(h
            .values()
            .iter()
            .all(|c| c.coefficient(0).is_some() && c.terms().count() == 1));
    }

    #[test]
    fn equivalence_examples() {
        assert!(equivalence_check(0.3, 0.3, 1e-9).unwrap().equivalent);
        let period = 2.0 * PI / LN_2;
        assert_eq!(
            equivalence_check(0.0, period, 1e-9).unwrap(),
            Equivalence { equivalent: true, k: 1 }
        );
        assert!(!equivalence_check(0.0, 1.0, 1e-9).unwrap().equivalent);
        assert!(equivalence_check(0.0, 9.064720284, 1e-9).unwrap().equivalent);
        assert!(equivalence_check(0.0, 1.0, 0.0).is_err());
    }
}
