use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::exactnum::Dyadic;
use crate::plgroup::{canonical_points, FElement, Side};

/// An element of Thompson's group `T`, acting on the circle `[0, 1)/~`.
///
/// Stored as breakpoints `(x_i, y_i)` with `x_0 = 0`, `x_i` increasing in
/// `[0, 1)` and `y_i ∈ [0, 1)` read mod 1. The lift to the line runs from
/// `y_0` at `x = 0` to `y_0 + 1` at `x = 1`. Interior redundant
/// breakpoints are removed, `x_0 = 0` is always kept.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TElement {
    breaks: Vec<(Dyadic, Dyadic)>,
}

impl TElement {
    pub fn identity() -> Self {
        Self::rotation(&Dyadic::zero())
    }

    /// Rotation by `h` (mod 1).
    pub fn rotation(h: &Dyadic) -> Self {
        TElement {
            breaks: alloc::vec![(Dyadic::zero(), h.fract())],
        }
    }

    /// Validates a circle breakpoint list.
    pub fn new(breaks: Vec<(Dyadic, Dyadic)>) -> Result<Self> {
        let Some((x0, y0)) = breaks.first().cloned() else {
            return Err(Error::WrongEndpoints {
                expected_start: "(0,y)",
                expected_end: "x < 1",
            });
        };
        if !x0.is_zero() {
            return Err(Error::WrongEndpoints {
                expected_start: "(0,y)",
                expected_end: "x < 1",
            });
        }
        let mut lift = Vec::with_capacity(breaks.len() + 1);
        for (x, y) in breaks {
            if x >= Dyadic::one() || x.is_negative() {
                return Err(Error::OutOfDomain(x));
            }
            if y >= Dyadic::one() || y.is_negative() {
                return Err(Error::OutOfDomain(y));
            }
            let lifted = if y < y0 { &y + &Dyadic::one() } else { y };
            lift.push((x, lifted));
        }
        lift.push((Dyadic::one(), &y0 + &Dyadic::one()));
        Self::from_lift(lift)
    }

    /// Builds from lifted points `(x_i, L(x_i))` running from `x = 0` to
    /// `x = 1` with `L(1) = L(0) + 1`.
    fn from_lift(lift: Vec<(Dyadic, Dyadic)>) -> Result<Self> {
        let mut points = canonical_points(lift)?;
        points.pop();
        let breaks = points.into_iter().map(|(x, y)| (x, y.fract())).collect();
        Ok(TElement { breaks })
    }

    /// Builds from samples `(c_i, g(c_i))` taken at a superset of the
    /// breakpoints, `c_0 = 0`, with images read mod 1.
    fn from_samples(samples: Vec<(Dyadic, Dyadic)>) -> Self {
        let y0 = samples[0].1.clone();
        let mut lift = Vec::with_capacity(samples.len() + 1);
        let mut last = y0.clone();
        lift.push((samples[0].0.clone(), y0.clone()));
        for (x, y) in samples.into_iter().skip(1) {
            let rise = (&y - &last).fract();
            last = &last + &rise;
            lift.push((x, last.clone()));
        }
        lift.push((Dyadic::one(), &y0 + &Dyadic::one()));
        Self::from_lift(lift).expect("composite of T elements lies in T")
    }

    /// The copy of `f` acting on the circle; fixes the basepoint.
    pub fn embed(f: &FElement) -> Self {
        let mut breaks: Vec<(Dyadic, Dyadic)> = f.breaks().to_vec();
        breaks.pop();
        TElement { breaks }
    }

    pub fn breaks(&self) -> &[(Dyadic, Dyadic)] {
        &self.breaks
    }

    /// Lifted breakpoints including the closing point `(1, y_0 + 1)`.
    fn lift(&self) -> Vec<(Dyadic, Dyadic)> {
        let y0 = &self.breaks[0].1;
        let mut lift: Vec<(Dyadic, Dyadic)> = self
            .breaks
            .iter()
            .map(|(x, y)| (x.clone(), if y < y0 { y + &Dyadic::one() } else { y.clone() }))
            .collect();
        lift.push((Dyadic::one(), y0 + &Dyadic::one()));
        lift
    }

    pub fn slope_exponents(&self) -> Vec<i64> {
        self.lift()
            .windows(2)
            .map(|w| {
                (&w[1].1 - &w[0].1)
                    .log2_ratio(&(&w[1].0 - &w[0].0))
                    .expect("validated slope")
            })
            .collect()
    }

    pub fn evaluate(&self, x: &Dyadic) -> Dyadic {
        let x = x.fract();
        let lift = self.lift();
        let i = lift.partition_point(|(bx, _)| *bx <= x) - 1;
        let (x0, y0) = &lift[i];
        let (x1, y1) = &lift[i + 1];
        let k = (y1 - y0).log2_ratio(&(x1 - x0)).expect("validated slope");
        (y0 + &(&x - x0).mul_pow2(k)).fract()
    }

    pub fn evaluate_inverse(&self, y: &Dyadic) -> Dyadic {
        let lift = self.lift();
        let base = &lift[0].1;
        let mut target = y.fract();
        if target < *base {
            target = &target + &Dyadic::one();
        }
        let i = lift.partition_point(|(_, ly)| *ly <= target) - 1;
        let (x0, y0) = &lift[i];
        let (x1, y1) = &lift[i + 1];
        let k = (x1 - x0).log2_ratio(&(y1 - y0)).expect("validated slope");
        x0 + &(&target - y0).mul_pow2(k)
    }

    /// The composite `self ∘ other`.
    pub fn compose(&self, other: &TElement) -> TElement {
        let mut xs: Vec<Dyadic> = other.breaks.iter().map(|(x, _)| x.clone()).collect();
        xs.extend(self.breaks.iter().map(|(x, _)| other.evaluate_inverse(x)));
        xs.sort();
        xs.dedup();
        let samples = xs
            .into_iter()
            .map(|x| {
                let y = self.evaluate(&other.evaluate(&x));
                (x, y)
            })
            .collect();
        Self::from_samples(samples)
    }

    pub fn invert(&self) -> TElement {
        let mut xs: Vec<Dyadic> = self.breaks.iter().map(|(_, y)| y.clone()).collect();
        xs.push(Dyadic::zero());
        xs.sort();
        xs.dedup();
        let samples = xs
            .into_iter()
            .map(|y| {
                let x = self.evaluate_inverse(&y);
                (y, x)
            })
            .collect();
        Self::from_samples(samples)
    }

    pub fn pow(&self, n: i64) -> TElement {
        let base = if n < 0 { self.invert() } else { self.clone() };
        (0..n.unsigned_abs()).fold(TElement::identity(), |acc, _| acc.compose(&base))
    }

    /// One-sided slope exponent at `x` (read mod 1); the left slope at the
    /// basepoint is that of the last piece.
    pub fn slope_exponent(&self, x: &Dyadic, side: Side) -> i64 {
        let x = x.fract();
        let slopes = self.slope_exponents();
        let i = match side {
            Side::Right => self.breaks.partition_point(|(bx, _)| *bx <= x) - 1,
            Side::Left if x.is_zero() => slopes.len() - 1,
            Side::Left => self.breaks.partition_point(|(bx, _)| *bx < x) - 1,
        };
        slopes[i]
    }

    /// Rotations are exactly the elements with a single piece of slope 1.
    pub fn is_rotation(&self) -> bool {
        self.breaks.len() == 1
    }

    pub fn rotation_angle(&self) -> Option<Dyadic> {
        self.is_rotation().then(|| self.breaks[0].1.clone())
    }

    pub fn fixes(&self, p: &Dyadic) -> bool {
        self.evaluate(p) == p.fract()
    }

    /// The `F` element this represents, when it fixes the basepoint.
    pub fn to_f(&self) -> Option<FElement> {
        if !self.breaks[0].1.is_zero() {
            return None;
        }
        let mut pts = self.breaks.clone();
        pts.push((Dyadic::one(), Dyadic::one()));
        FElement::new(pts).ok()
    }

    /// Canonical representative of the right coset `self·R`: the unique
    /// element `f = self ∘ rotation(h)` fixing the basepoint, with
    /// `h = self⁻¹(0)`.
    pub fn coset_repr(&self) -> (TElement, Dyadic) {
        let h = self.evaluate_inverse(&Dyadic::zero());
        (self.compose(&TElement::rotation(&h)), h)
    }
}

impl fmt::Display for TElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("circ[")?;
        for (i, (x, y)) in self.breaks.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "({x},{y})")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for TElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn d(s: &str) -> Dyadic {
        s.parse().unwrap()
    }

    fn circ(pts: &[(&str, &str)]) -> Result<TElement> {
        TElement::new(pts.iter().map(|(x, y)| (d(x), d(y))).collect())
    }

    fn gamma0() -> FElement {
        FElement::new(
            [("0", "0"), ("1/2", "1/4"), ("3/4", "3/4"), ("1", "1")]
                .iter()
                .map(|(x, y)| (d(x), d(y)))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn literal_validation() {
        let t = circ(&[("0", "1/2"), ("1/2", "3/4"), ("3/4", "0")]).unwrap();
        assert_eq!(t.slope_exponents(), alloc::vec![-1, 0, 1]);
        assert_eq!(t.to_string(), "circ[(0,1/2),(1/2,3/4),(3/4,0)]");
        assert!(circ(&[("1/4", "0")]).is_err());
        assert!(circ(&[("0", "0"), ("1/2", "0")]).is_err());
        assert!(circ(&[("0", "0"), ("1/2", "3/8")]).is_err());
        assert!(circ(&[("0", "5/4")]).is_err());
        // a redundant anchor-adjacent point collapses to a rotation
        assert_eq!(
            circ(&[("0", "1/4"), ("1/2", "3/4")]).unwrap(),
            TElement::rotation(&d("1/4"))
        );
    }

    #[test]
    fn rotations() {
        assert_eq!(TElement::rotation(&d("1/2")).evaluate(&d("3/4")), d("1/4"));
        let r = TElement::rotation(&d("1/2")).compose(&TElement::rotation(&d("3/4")));
        assert_eq!(r, TElement::rotation(&d("1/4")));
        assert!(TElement::rotation(&d("3/8")).is_rotation());
        assert_eq!(TElement::rotation(&d("-1/8")), TElement::rotation(&d("7/8")));
    }

    #[test]
    fn embedding() {
        let g = TElement::embed(&gamma0());
        assert!(!g.is_rotation());
        assert_eq!(g.evaluate(&Dyadic::zero()), Dyadic::zero());
        assert_eq!(g.to_f(), Some(gamma0()));
        let gg = TElement::embed(&gamma0().compose(&gamma0()));
        assert_eq!(g.compose(&g), gg);
    }

    #[test]
    fn inverse_wraps_around() {
        let t = circ(&[("0", "1/2"), ("1/2", "3/4"), ("3/4", "0")]).unwrap();
        let inv = t.invert();
        assert_eq!(t.compose(&inv), TElement::identity());
        assert_eq!(inv.compose(&t), TElement::identity());
        for x in ["0", "1/8", "1/2", "5/8", "7/8"] {
            assert_eq!(inv.evaluate(&t.evaluate(&d(x))), d(x));
        }
    }

    #[test]
    fn slopes_at_basepoint() {
        let t = circ(&[("0", "1/2"), ("1/2", "3/4"), ("3/4", "0")]).unwrap();
        assert_eq!(t.slope_exponent(&d("0"), Side::Left), 1);
        assert_eq!(t.slope_exponent(&d("0"), Side::Right), -1);
        assert_eq!(t.slope_exponent(&d("3/4"), Side::Left), 0);
    }

    #[test]
    fn coset_representatives() {
        let (f, h) = TElement::rotation(&d("1/2")).coset_repr();
        assert_eq!((f, h), (TElement::identity(), d("1/2")));
        let g = TElement::embed(&gamma0());
        assert_eq!(g.coset_repr(), (g.clone(), Dyadic::zero()));
        assert_eq!(
            TElement::identity().coset_repr(),
            (TElement::identity(), Dyadic::zero())
        );
        let t = circ(&[("0", "1/2"), ("1/2", "3/4"), ("3/4", "0")]).unwrap();
        let (f, h) = t.coset_repr();
        assert!(f.fixes(&Dyadic::zero()));
        assert_eq!(f.compose(&TElement::rotation(&(-&h))), t);
    }
}
