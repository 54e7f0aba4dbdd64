//! Step functions on `[0, 1)` with dyadic cuts: the dense subspace of
//! `L²([0,1])` the representations act on exactly.
//!
//! Pieces are half-open `[t_{j-1}, t_j)`, so values at single points carry
//! no measure and almost-everywhere equalities become structural ones.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::exactnum::{Coeff, Dyadic};
use crate::plgroup::{FElement, TElement};

/// A step function with dyadic cuts `0 = t_0 < … < t_n = 1` and value `v_j`
/// on `[t_{j-1}, t_j)`, with equal neighbours merged.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Step<V> {
    cuts: Vec<Dyadic>,
    values: Vec<V>,
}

/// Step function with values in the coefficient ring.
pub type StepFunction = Step<Coeff>;

/// Power-of-two step function; piece `j` has value `2^{values[j]}`.
pub type ExpStep = Step<i64>;

impl<V: Clone + PartialEq> Step<V> {
    pub fn constant(v: V) -> Self {
        Step {
            cuts: alloc::vec![Dyadic::zero(), Dyadic::one()],
            values: alloc::vec![v],
        }
    }

    pub fn new(cuts: Vec<Dyadic>, values: Vec<V>) -> Result<Self> {
        if cuts.len() != values.len() + 1 || values.is_empty() {
            return Err(Error::Precondition("a step function needs one value per piece".into()));
        }
        if !cuts[0].is_zero() || cuts[cuts.len() - 1] != Dyadic::one() {
            return Err(Error::WrongEndpoints {
                expected_start: "0",
                expected_end: "1",
            });
        }
        if cuts.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::NotMonotone);
        }
        Ok(Self::canonical(cuts, values))
    }

    /// Merges equal neighbours; inputs must already be well formed.
    fn canonical(cuts: Vec<Dyadic>, values: Vec<V>) -> Self {
        let mut out_cuts = Vec::with_capacity(cuts.len());
        let mut out_values: Vec<V> = Vec::with_capacity(values.len());
        out_cuts.push(cuts[0].clone());
        for (cut, v) in cuts.into_iter().skip(1).zip(values) {
            if out_values.last() == Some(&v) {
                *out_cuts.last_mut().expect("non-empty") = cut;
            } else {
                out_values.push(v);
                out_cuts.push(cut);
            }
        }
        Step {
            cuts: out_cuts,
            values: out_values,
        }
    }

    pub fn cuts(&self) -> &[Dyadic] {
        &self.cuts
    }

    pub fn values(&self) -> &[V] {
        &self.values
    }

    pub fn piece_count(&self) -> usize {
        self.values.len()
    }

    /// Pieces as `(start, end, value)`.
    pub fn pieces(&self) -> impl Iterator<Item = (&Dyadic, &Dyadic, &V)> {
        self.cuts.windows(2).zip(&self.values).map(|(w, v)| (&w[0], &w[1], v))
    }

    /// Value on the piece containing `x`, read mod 1.
    pub fn value_at(&self, x: &Dyadic) -> &V {
        let x = x.fract();
        let idx = self.cuts.partition_point(|c| *c <= x) - 1;
        &self.values[idx]
    }

    pub fn is_constant(&self) -> bool {
        self.values.len() == 1
    }

    /// Both functions on the merged cut set.
    pub fn refine<W: Clone>(&self, other: &Step<W>) -> (Vec<Dyadic>, Vec<V>, Vec<W>) {
        let mut cuts: Vec<Dyadic> = self.cuts.iter().chain(&other.cuts).cloned().collect();
        cuts.sort();
        cuts.dedup();
        let mut left = Vec::with_capacity(cuts.len() - 1);
        let mut right = Vec::with_capacity(cuts.len() - 1);
        let (mut i, mut j) = (0, 0);
        for start in &cuts[..cuts.len() - 1] {
            while self.cuts[i + 1] <= *start {
                i += 1;
            }
            while other.cuts[j + 1] <= *start {
                j += 1;
            }
            left.push(self.values[i].clone());
            right.push(other.values[j].clone());
        }
        (cuts, left, right)
    }

    /// Pointwise combination over the common refinement.
    pub fn zip_with<W: Clone, U: Clone + PartialEq>(&self, other: &Step<W>, f: impl Fn(&V, &W) -> U) -> Step<U> {
        let (cuts, left, right) = self.refine(other);
        let values = left.iter().zip(&right).map(|(a, b)| f(a, b)).collect();
        Step::canonical(cuts, values)
    }

    pub fn map<U: Clone + PartialEq>(&self, f: impl Fn(&V) -> U) -> Step<U> {
        Step::canonical(self.cuts.clone(), self.values.iter().map(f).collect())
    }

    /// `x ↦ f(γ⁻¹(x))` for `γ ∈ F`: cuts are pushed through `γ`.
    pub fn compose_with_inverse(&self, gamma: &FElement) -> Self {
        let cuts = self
            .cuts
            .iter()
            .map(|c| gamma.evaluate(c).expect("cut in [0,1]"))
            .collect();
        Step {
            cuts,
            values: self.values.clone(),
        }
    }

    /// `x ↦ f(t⁻¹(x))` for `t ∈ T`, reading `f` on the circle.
    pub fn compose_with_inverse_circle(&self, t: &TElement) -> Self {
        let mut starts: Vec<Dyadic> = self.cuts[..self.cuts.len() - 1].iter().map(|c| t.evaluate(c)).collect();
        starts.push(Dyadic::zero());
        starts.sort();
        starts.dedup();
        let values = starts
            .iter()
            .map(|c| self.value_at(&t.evaluate_inverse(c)).clone())
            .collect();
        starts.push(Dyadic::one());
        Step::canonical(starts, values)
    }

    /// Smallest piece length when the ends at 0 and 1 are glued together.
    pub fn min_circle_piece(&self) -> Dyadic {
        let mut lengths: Vec<Dyadic> = self.pieces().map(|(a, b, _)| b - a).collect();
        if lengths.len() > 1 && self.values[0] == self.values[self.values.len() - 1] {
            let last = lengths.pop().expect("several pieces");
            lengths[0] = &lengths[0] + &last;
        }
        lengths.into_iter().min().expect("at least one piece")
    }
}

impl StepFunction {
    pub fn zero() -> Self {
        Self::constant(Coeff::zero())
    }

    /// Indicator function of `[a, b)`.
    pub fn indicator(a: &Dyadic, b: &Dyadic) -> Result<Self> {
        Self::check_interval(a, b)?;
        Ok(Self::constant(Coeff::one()).restricted(a, b))
    }

    fn check_interval(a: &Dyadic, b: &Dyadic) -> Result<()> {
        if a.is_negative() || a >= b || *b > Dyadic::one() {
            return Err(Error::Precondition(alloc::format!(
                "need 0 <= a < b <= 1, got [{a}, {b}]"
            )));
        }
        Ok(())
    }

    fn restricted(&self, a: &Dyadic, b: &Dyadic) -> Self {
        let mut cuts = alloc::vec![Dyadic::zero()];
        let mut inside = Vec::new();
        if !a.is_zero() {
            cuts.push(a.clone());
            inside.push(false);
        }
        cuts.push(b.clone());
        inside.push(true);
        if *b != Dyadic::one() {
            cuts.push(Dyadic::one());
            inside.push(false);
        }
        let window = Step::canonical(cuts, inside);
        self.zip_with(&window, |v, &keep| if keep { v.clone() } else { Coeff::zero() })
    }

    pub fn is_zero(&self) -> bool {
        self.is_constant() && self.values[0].is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        self.map(|v| c * v)
    }

    /// The multiplication operator `M_φ` applied to `self`.
    pub fn pointwise_mul(&self, phi: &Self) -> Self {
        phi.zip_with(self, |a, b| a * b)
    }

    /// Orthogonal projection onto `L²([a, b])`.
    pub fn project(&self, a: &Dyadic, b: &Dyadic) -> Result<Self> {
        Self::check_interval(a, b)?;
        Ok(self.restricted(a, b))
    }

    /// `Σ_j |piece_j|·v_j·conj(w_j)`, exact.
    pub fn inner_product(&self, other: &Self) -> Coeff {
        let (cuts, left, right) = self.refine(other);
        cuts.windows(2)
            .zip(left.iter().zip(&right))
            .fold(Coeff::zero(), |acc, (w, (v, u))| {
                let len = Coeff::from_dyadic(&(&w[1] - &w[0]));
                &acc + &(&len * &(v * &u.conj()))
            })
    }

    pub fn norm_sq(&self) -> Coeff {
        self.inner_product(self)
    }

    /// Whether `self` vanishes on `[a, b)`.
    pub fn vanishes_on(&self, a: &Dyadic, b: &Dyadic) -> bool {
        self.pieces().all(|(s, e, v)| v.is_zero() || e <= a || s >= b)
    }
}

impl ExpStep {
    /// Pointwise product of power-of-two step functions.
    pub fn mul(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a + b)
    }

    /// `∫ 2^{v(x)} dx`, exact.
    pub fn integral(&self) -> Dyadic {
        self.pieces()
            .fold(Dyadic::zero(), |acc, (a, b, &m)| &acc + &(b - a).mul_pow2(m))
    }
}

fn write_pieces<V: Clone + PartialEq>(
    f: &mut fmt::Formatter<'_>,
    tag: &str,
    step: &Step<V>,
    show: impl Fn(&V) -> alloc::string::String,
) -> fmt::Result {
    write!(f, "{tag}{{")?;
    for (i, (a, b, v)) in step.pieces().enumerate() {
        if i > 0 {
            f.write_str("; ")?;
        }
        write!(f, "{a}:{b} => {}", show(v))?;
    }
    f.write_str("}")
}

impl fmt::Display for StepFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_pieces(f, "step", self, |v| alloc::format!("{v}"))
    }
}

impl fmt::Display for ExpStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_pieces(f, "exp", self, |v| alloc::format!("{v}"))
    }
}

impl<V> fmt::Debug for Step<V>
where
    Step<V>: fmt::Display,
{
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
