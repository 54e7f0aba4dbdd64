use alloc::format;
use alloc::vec::Vec;

use super::quasi_regular::{apply_pi, half_density};
use crate::error::{Error, Result};
use crate::exactnum::Dyadic;
use crate::plgroup::{from_partitions, gamma_translation, FElement, TElement};
use crate::stepfun::StepFunction;

/// Result of [`probe_nontrivial_action`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ActionProbe {
    /// `γ` supported in `[a, b]` with `π_s(γ⁻¹) f ≠ f`.
    Witness(FElement),
    Vanishes,
}

/// Result of [`constancy_witness`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConstancyProbe {
    Constant,
    /// Translating `[a, b]` by `h` moves a piece of `f` across a value change.
    Witness {
        a: Dyadic,
        b: Dyadic,
        h: Dyadic,
    },
}

/// Distinct points `δ^k(q)`, `k = 0..count`, of the orbit `F_p·q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitWitness {
    pub generator: FElement,
    pub points: Vec<Dyadic>,
}

/// Result of [`rho0_one_orbit`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rho0Orbit {
    Rotation,
    /// Distinct rotates of `ρ_0(γ)1` by the listed angles.
    Orbit {
        angles: Vec<Dyadic>,
        functions: Vec<StepFunction>,
    },
}

fn check_subinterval(a: &Dyadic, b: &Dyadic) -> Result<()> {
    if !(a.in_unit_interval() && b.in_unit_interval() && a < b) {
        return Err(Error::Precondition(format!("need 0 <= a < b <= 1, got [{a}, {b}]")));
    }
    Ok(())
}

/// Looks for `γ ∈ F_{a,b}` moving `f`. It fixes `c` and contracts `[c, d]`
/// by `2^{-n}`, where `[c, d]` sits inside a piece where `f ≠ 0`.
pub fn probe_nontrivial_action(f: &StepFunction, a: &Dyadic, b: &Dyadic) -> Result<ActionProbe> {
    check_subinterval(a, b)?;
    if f.vanishes_on(a, b) {
        return Ok(ActionProbe::Vanishes);
    }
    let (u, v) = f
        .pieces()
        .filter(|(_, _, val)| !val.is_zero())
        .map(|(s, e, _)| (s.clone().max(a.clone()), e.clone().min(b.clone())))
        .find(|(u, v)| u < v)
        .ok_or_else(|| Error::Internal("no nonzero piece meets the interval".into()))?;
    let quarter = (&v - &u).mul_pow2(-2);
    let c = &u + &quarter;
    let d = &v - &quarter;
    for n in 1..=8 {
        let image_d = &c + &(&d - &c).mul_pow2(-n);
        let mut xs = alloc::vec![
            Dyadic::zero(),
            a.clone(),
            c.clone(),
            d.clone(),
            b.clone(),
            Dyadic::one()
        ];
        let mut ys = alloc::vec![Dyadic::zero(), a.clone(), c.clone(), image_d, b.clone(), Dyadic::one()];
        // a = 0 or b = 1 duplicate an endpoint
        for pts in [&mut xs, &mut ys] {
            pts.dedup();
        }
        let gamma = from_partitions(&xs, &ys, None)?;
        if gamma.supported_in(a, b) && apply_pi(&gamma.invert(), f) != *f {
            return Ok(ActionProbe::Witness(gamma));
        }
    }
    Err(Error::Internal(
        "contractions failed to move a function that is nonzero on the interval".into(),
    ))
}

/// For non-constant `f`, an interval `[a, b]` inside the piece left of the
/// first cut and a shift `h` carrying it into the next piece, with
/// `f∘γ_{[a,b],h}⁻¹ ≠ f`.
pub fn constancy_witness(f: &StepFunction) -> Result<ConstancyProbe> {
    if f.is_constant() {
        return Ok(ConstancyProbe::Constant);
    }
    let cuts = f.cuts();
    let left = &cuts[1] - &cuts[0];
    let right = &cuts[2] - &cuts[1];
    let room = left.min(right).mul_pow2(-2);
    let w = Dyadic::pow2(room.floor_log2().expect("positive length"));
    let a = &cuts[1] - &w.mul_pow2(1);
    let b = &cuts[1] - &w;
    let h = w.mul_pow2(1);
    let gamma = gamma_translation(&a, &b, &h)?;
    if f.compose_with_inverse(&gamma) == *f {
        return Err(Error::Internal(format!(
            "translation of [{a}, {b}] by {h} left the function unchanged"
        )));
    }
    Ok(ConstancyProbe::Witness { a, b, h })
}

/// Whether `π_s(γ)` keeps `L²([0,p])` and `L²([p,1])` in place on `f`.
pub fn invariance_check(gamma: &FElement, p: &Dyadic, f: &StepFunction) -> Result<bool> {
    if !p.in_open_unit_interval() {
        return Err(Error::Precondition(format!("stabilizer point {p} must lie in (0,1)")));
    }
    if !gamma.fixes(p) {
        return Err(Error::NotFixed(p.clone()));
    }
    let (zero, one) = (Dyadic::zero(), Dyadic::one());
    let left = apply_pi(gamma, &f.project(&zero, p)?);
    let right = apply_pi(gamma, &f.project(p, &one)?);
    Ok(left.vanishes_on(p, &one) && right.vanishes_on(&zero, p))
}

/// `count` distinct points of `F_p·q`, produced by iterating one element of
/// `F_p` that halves the distance from `q` to the nearer end of its side.
pub fn orbit_witness(p: &Dyadic, q: &Dyadic, count: usize) -> Result<OrbitWitness> {
    if !p.in_open_unit_interval() {
        return Err(Error::Precondition(format!("stabilizer point {p} must lie in (0,1)")));
    }
    if !q.in_open_unit_interval() || q == p {
        return Err(Error::Precondition(format!(
            "orbit point {q} must lie in (0,1) and differ from {p}"
        )));
    }
    let (zero, one) = (Dyadic::zero(), Dyadic::one());
    let generator = if q < p {
        from_partitions(
            &[zero.clone(), q.clone(), p.clone(), one.clone()],
            &[zero, q.half(), p.clone(), one],
            None,
        )?
    } else {
        let image = &one - &(&one - q).half();
        from_partitions(
            &[zero.clone(), p.clone(), q.clone(), one.clone()],
            &[zero, p.clone(), image, one],
            None,
        )?
    };
    if !generator.fixes(p) {
        return Err(Error::Internal(format!("{generator} does not fix {p}")));
    }
    let mut points = Vec::with_capacity(count);
    let mut x = q.clone();
    for _ in 0..count {
        let next = generator.evaluate(&x)?;
        points.push(x);
        x = next;
    }
    // strictly monotone iteration, so consecutive distinctness suffices
    if points.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Internal("orbit iteration repeated a point".into()));
    }
    Ok(OrbitWitness { generator, points })
}

/// For `γ ∉ R`, `count` distinct rotates of the non-constant function
/// `ρ_0(γ)1`, rotated by multiples of a dyadic angle below its shortest
/// circle piece.
pub fn rho0_one_orbit(gamma: &TElement, count: usize) -> Result<Rho0Orbit> {
    if count == 0 {
        return Err(Error::Precondition("count must be at least 1".into()));
    }
    if gamma.is_rotation() {
        return Ok(Rho0Orbit::Rotation);
    }
    let f = half_density(gamma);
    let shortest = f.min_circle_piece();
    let n = Dyadic::from_int(count as i64);
    let mut k = shortest.floor_log2().expect("positive length");
    while &n * &Dyadic::pow2(k) > shortest {
        k -= 1;
    }
    let w = Dyadic::pow2(k);
    let angles: Vec<Dyadic> = (0..count as i64).map(|i| &Dyadic::from_int(i) * &w).collect();
    let functions: Vec<StepFunction> = angles
        .iter()
        .map(|h| f.compose_with_inverse_circle(&TElement::rotation(h)))
        .collect();
    for (i, g) in functions.iter().enumerate() {
        if g.is_constant() || functions[..i].contains(g) {
            return Err(Error::Internal(format!("rotate {i} of the half density is not new")));
        }
    }
    Ok(Rho0Orbit::Orbit { angles, functions })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Coeff;

    fn d(s: &str) -> Dyadic {
        s.parse().unwrap()
    }

    fn ind(a: &str, b: &str) -> StepFunction {
        StepFunction::indicator(&d(a), &d(b)).unwrap()
    }

    fn gamma0() -> FElement {
        from_partitions(&[d("0"), d("1/2"), d("1")], &[d("0"), d("1/4"), d("1")], None).unwrap()
    }

    #[test]
    fn action_probe_examples() {
        let f = ind("1/4", "1/2");
        match probe_nontrivial_action(&f, &d("0"), &d("1")).unwrap() {
            ActionProbe::Witness(g) => {
                assert!(g.supported_in(&d("0"), &d("1")));
                assert_ne!(apply_pi(&g.invert(), &f), f);
            }
            ActionProbe::Vanishes => panic!("indicator is nonzero on [0,1]"),
        }
        assert_eq!(
            probe_nontrivial_action(&StepFunction::zero(), &d("0"), &d("1")).unwrap(),
            ActionProbe::Vanishes
        );
        assert_eq!(
            probe_nontrivial_action(&ind("0", "1/4"), &d("1/2"), &d("1")).unwrap(),
            ActionProbe::Vanishes
        );
        assert!(probe_nontrivial_action(&f, &d("1/2"), &d("1/2")).is_err());
    }

    #[test]
    fn action_probe_respects_interval() {
        let f = StepFunction::constant(Coeff::one());
        let ActionProbe::Witness(g) = probe_nontrivial_action(&f, &d("3/8"), &d("1/2")).unwrap() else {
            panic!("constant 1 is nonzero everywhere");
        };
        assert!(g.supported_in(&d("3/8"), &d("1/2")));
    }

    #[test]
    fn constancy_examples() {
        let c = Coeff::one() + Coeff::i();
        assert_eq!(
            constancy_witness(&StepFunction::constant(c)).unwrap(),
            ConstancyProbe::Constant
        );
        let pm = ind("0", "1/2").sub(&ind("1/2", "1"));
        assert_eq!(
            constancy_witness(&pm).unwrap(),
            ConstancyProbe::Witness {
                a: d("1/4"),
                b: d("3/8"),
                h: d("1/4")
            }
        );
        let ConstancyProbe::Witness { a, b, h } = constancy_witness(&ind("0", "1/4")).unwrap() else {
            panic!("indicator is not constant");
        };
        assert!(b <= d("1/4") && &b + &h > d("1/4"));
        let f = ind("0", "1/4");
        assert_ne!(f.compose_with_inverse(&gamma_translation(&a, &b, &h).unwrap()), f);
    }

    #[test]
    fn invariance_examples() {
        let delta = from_partitions(
            &[d("0"), d("1/4"), d("1/2"), d("1")],
            &[d("0"), d("1/8"), d("1/2"), d("1")],
            None,
        )
        .unwrap();
        assert!(invariance_check(&delta, &d("1/2"), &ind("0", "1/2")).unwrap());
        assert!(invariance_check(&FElement::identity(), &d("3/8"), &ind("1/8", "7/8")).unwrap());
        assert!(invariance_check(&gamma0(), &d("3/4"), &ind("0", "3/4")).unwrap());
        assert!(matches!(
            invariance_check(&gamma0(), &d("1/2"), &ind("0", "1/2")),
            Err(Error::NotFixed(_))
        ));
    }

    #[test]
    fn orbit_examples() {
        let w = orbit_witness(&d("1/2"), &d("1/4"), 3).unwrap();
        assert_eq!(w.points, [d("1/4"), d("1/8"), d("1/16")]);
        let w = orbit_witness(&d("1/2"), &d("3/4"), 3).unwrap();
        assert_eq!(w.points, [d("3/4"), d("7/8"), d("15/16")]);
        assert!(w.generator.fixes(&d("1/2")));
        assert!(orbit_witness(&d("1/2"), &d("1/2"), 3).is_err());
        assert!(orbit_witness(&d("1/2"), &d("0"), 3).is_err());
        assert_eq!(orbit_witness(&d("1/2"), &d("1/4"), 64).unwrap().points.len(), 64);
    }

    #[test]
    fn rho0_examples() {
        assert_eq!(
            rho0_one_orbit(&TElement::rotation(&d("1/2")), 5).unwrap(),
            Rho0Orbit::Rotation
        );
        let Rho0Orbit::Orbit { angles, functions } = rho0_one_orbit(&TElement::embed(&gamma0()), 4).unwrap() else {
            panic!("embedded γ₀ is not a rotation");
        };
        assert_eq!(angles, [d("0"), d("1/16"), d("1/8"), d("3/16")]);
        assert_eq!(functions[0].piece_count(), 3);
        assert!(functions.iter().all(|f| !f.is_constant()));
        assert!(rho0_one_orbit(&TElement::identity(), 0).is_err());
    }
}
