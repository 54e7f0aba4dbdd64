use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::ToString;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::angle_mod1;
use crate::error::{Error, Result};
use crate::exactnum::Dyadic;
use crate::plgroup::{from_partitions, stabilizer_generators, FElement, TElement};

/// Unitary character of the stabilizer `F_p` of a dyadic `p`:
/// `χ(γ) = exp(2πi·Σ a_j k_j)` with `k` the log-slope quadruple of `γ` at `p`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CharacterF {
    p: Dyadic,
    angles: [BigRational; 4],
}

impl CharacterF {
    /// Angles are reduced mod 1.
    pub fn new(p: Dyadic, angles: [BigRational; 4]) -> Result<Self> {
        if !p.in_open_unit_interval() {
            return Err(Error::Precondition(format!("stabilizer point {p} must lie in (0,1)")));
        }
        Ok(CharacterF {
            p,
            angles: angles.map(|a| angle_mod1(&a)),
        })
    }

    pub fn trivial(p: Dyadic) -> Result<Self> {
        Self::new(p, core::array::from_fn(|_| BigRational::zero()))
    }

    pub fn point(&self) -> &Dyadic {
        &self.p
    }

    pub fn angles(&self) -> &[BigRational; 4] {
        &self.angles
    }
}

impl fmt::Display for CharacterF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a0, a1, a2, a3] = &self.angles;
        write!(f, "charf({}, {a0}, {a1}, {a2}, {a3})", self.p)
    }
}

/// Character `χ_c(rotation(h)) = exp(2πi·c·h)` of the rotation subgroup.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct CharacterR {
    pub c: i64,
}

impl CharacterR {
    /// Angle of `χ_c` on a rotation; `None` for non-rotations.
    pub fn angle(&self, t: &TElement) -> Option<BigRational> {
        let h = t.rotation_angle()?;
        Some(angle_mod1(&(h.to_ratio() * BigInt::from(self.c))))
    }
}

impl fmt::Display for CharacterR {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "charr({})", self.c)
    }
}

/// The angle `χ(γ) ∈ [0, 1)` for `γ` fixing `χ.p`.
pub fn eval_character(chi: &CharacterF, gamma: &FElement) -> Result<BigRational> {
    let k = gamma.log_slope_quadruple(&chi.p)?;
    let total = chi
        .angles
        .iter()
        .zip(k)
        .fold(BigRational::zero(), |acc, (a, kj)| acc + a * BigInt::from(kj));
    Ok(angle_mod1(&total))
}

/// For `χ` on `F_q` and `γ` with `γ(p) = q`, the character `x ↦ χ(γxγ⁻¹)`
/// of `F_p`, read off on elements realizing the unit quadruples.
pub fn conjugate_character(chi: &CharacterF, gamma: &FElement, p: &Dyadic) -> Result<CharacterF> {
    if gamma.evaluate(p)? != chi.p {
        return Err(Error::Precondition(format!("element does not carry {p} to {}", chi.p)));
    }
    let gens = stabilizer_generators(p)?;
    let inv = gamma.invert();
    let mut angles: [BigRational; 4] = core::array::from_fn(|_| BigRational::zero());
    for (angle, e) in angles.iter_mut().zip(&gens) {
        *angle = eval_character(chi, &gamma.compose(e).compose(&inv))?;
    }
    CharacterF::new(p.clone(), angles)
}

/// The canonical element of `F` carrying `p` to `q`.
pub fn section(p: &Dyadic, q: &Dyadic) -> Result<FElement> {
    for x in [p, q] {
        if !x.in_open_unit_interval() {
            return Err(Error::Precondition(format!("section endpoint {x} must lie in (0,1)")));
        }
    }
    let (zero, one) = (Dyadic::zero(), Dyadic::one());
    from_partitions(&[zero.clone(), p.clone(), one.clone()], &[zero, q.clone(), one], None)
}

/// Basis label of an induced vector: an orbit point for `Ind_{F_p}^F`, or
/// the canonical element of a coset `tR` for `Ind_R^T`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Label {
    Point(Dyadic),
    Coset(TElement),
}

impl Label {
    /// Label of the coset `tR`, normalized to the element fixing 0.
    pub fn coset(t: &TElement) -> Self {
        Label::Coset(t.coset_repr().0)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Point(x) => write!(f, "{x}"),
            Label::Coset(t) => write!(f, "{t}"),
        }
    }
}

/// Finitely supported vector `Σ amp·exp(2πi·angle)·δ_label`, with equal
/// angles merged and zero amplitudes dropped.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct InducedVector {
    support: BTreeMap<Label, BTreeMap<BigRational, BigRational>>,
}

impl InducedVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(label: Label) -> Self {
        let mut v = Self::zero();
        v.add_term(label, BigRational::one(), BigRational::zero());
        v
    }

    /// Adds `amp·exp(2πi·angle)·δ_label`; coset labels are normalized.
    pub fn add_term(&mut self, label: Label, amp: BigRational, angle: BigRational) {
        let label = match label {
            Label::Coset(t) => Label::coset(&t),
            point => point,
        };
        let angle = angle_mod1(&angle);
        let entry = self.support.entry(label.clone()).or_default();
        let total = entry.remove(&angle).unwrap_or_else(BigRational::zero) + amp;
        if !total.is_zero() {
            entry.insert(angle, total);
        }
        if entry.is_empty() {
            self.support.remove(&label);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    /// Terms as `(label, amplitude, angle)`.
    pub fn terms(&self) -> impl Iterator<Item = (&Label, &BigRational, &BigRational)> {
        self.support
            .iter()
            .flat_map(|(l, m)| m.iter().map(move |(angle, amp)| (l, amp, angle)))
    }

    /// `(label, angle)` when the vector is `exp(2πi·angle)·δ_label`.
    pub fn as_unit_basis(&self) -> Option<(&Label, &BigRational)> {
        let mut it = self.terms();
        let (l, amp, angle) = it.next()?;
        (it.next().is_none() && amp.is_one()).then_some((l, angle))
    }

    /// Applies a monomial map label-wise: each label goes to a new label
    /// and picks up a phase.
    fn map_labels(&self, mut f: impl FnMut(&Label) -> Result<(Label, BigRational)>) -> Result<Self> {
        let mut out = Self::zero();
        for (label, terms) in &self.support {
            let (image, phase) = f(label)?;
            for (angle, amp) in terms {
                out.add_term(image.clone(), amp.clone(), angle + &phase);
            }
        }
        Ok(out)
    }
}

impl fmt::Display for InducedVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("vec[")?;
        for (i, (label, amp, angle)) in self.terms().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "({label}, {amp}, {angle})")?;
        }
        f.write_str("]")
    }
}

/// `U(γ)δ_q = χ(s_{γq}⁻¹ γ s_q)·δ_{γq}` in `Ind_{F_p}^F χ`, where `s` is
/// [`section`].
pub fn induced_apply_f(chi: &CharacterF, gamma: &FElement, v: &InducedVector) -> Result<InducedVector> {
    let p = &chi.p;
    v.map_labels(|label| {
        let q = match label {
            Label::Point(q) if q.in_open_unit_interval() => q,
            other => return Err(Error::BadLabel(other.to_string())),
        };
        let image = gamma.evaluate(q)?;
        let cocycle = section(p, &image)?.invert().compose(gamma).compose(&section(p, q)?);
        if !cocycle.fixes(p) {
            return Err(Error::Internal(format!("cocycle {cocycle} does not fix {p}")));
        }
        Ok((Label::Point(image), eval_character(chi, &cocycle)?))
    })
}

/// `U(γ)δ_{[x]} = χ(r_{γx}⁻¹ γ x)·δ_{[γx]}` in `Ind_R^T χ`, with `r` the
/// canonical coset element.
pub fn induced_apply_t(chi: &CharacterR, gamma: &TElement, v: &InducedVector) -> Result<InducedVector> {
    v.map_labels(|label| {
        let x = match label {
            Label::Coset(x) => x,
            other => return Err(Error::BadLabel(other.to_string())),
        };
        let moved = gamma.compose(x);
        let (repr, _) = moved.coset_repr();
        let cocycle = repr.invert().compose(&moved);
        let angle = chi
            .angle(&cocycle)
            .ok_or_else(|| Error::Internal(format!("cocycle {cocycle} is not a rotation")))?;
        Ok((Label::Coset(repr), angle))
    })
}
