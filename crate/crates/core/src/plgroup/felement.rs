use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::exactnum::Dyadic;
use crate::plgroup::{canonical_points, Side};

/// An element of Thompson's group `F`: a piecewise-linear homeomorphism of
/// `[0, 1]` with dyadic breakpoints and power-of-two slopes.
///
/// Stored as the canonical breakpoint list `(x_i, y_i)` from `(0,0)` to
/// `(1,1)` with no redundant breakpoints, so `==` is equality of maps.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FElement {
    breaks: Vec<(Dyadic, Dyadic)>,
}

impl FElement {
    pub fn identity() -> Self {
        FElement {
            breaks: alloc::vec![(Dyadic::zero(), Dyadic::zero()), (Dyadic::one(), Dyadic::one())],
        }
    }

    /// Validates a breakpoint list and returns the canonical element.
    pub fn new(breaks: Vec<(Dyadic, Dyadic)>) -> Result<Self> {
        let endpoints_ok = breaks.len() >= 2
            && breaks[0] == (Dyadic::zero(), Dyadic::zero())
            && breaks[breaks.len() - 1] == (Dyadic::one(), Dyadic::one());
        if !endpoints_ok {
            return Err(Error::WrongEndpoints {
                expected_start: "(0,0)",
                expected_end: "(1,1)",
            });
        }
        Ok(FElement {
            breaks: canonical_points(breaks)?,
        })
    }

    pub fn breaks(&self) -> &[(Dyadic, Dyadic)] {
        &self.breaks
    }

    pub fn is_identity(&self) -> bool {
        self.breaks.len() == 2
    }

    /// Slope exponents of the linear pieces, left to right.
    pub fn slope_exponents(&self) -> Vec<i64> {
        self.breaks
            .windows(2)
            .map(|w| {
                (&w[1].1 - &w[0].1)
                    .log2_ratio(&(&w[1].0 - &w[0].0))
                    .expect("validated slope")
            })
            .collect()
    }

    fn check_domain(x: &Dyadic) -> Result<()> {
        if x.in_unit_interval() {
            Ok(())
        } else {
            Err(Error::OutOfDomain(x.clone()))
        }
    }

    /// Index `i` of the piece `[x_i, x_{i+1})` containing `x`; the last piece
    /// also contains `1`.
    fn piece_at(points: &[(Dyadic, Dyadic)], x: &Dyadic, by_image: bool) -> usize {
        let coord = |p: &(Dyadic, Dyadic)| if by_image { p.1.clone() } else { p.0.clone() };
        let idx = points.partition_point(|p| coord(p) <= *x);
        idx.saturating_sub(1).min(points.len() - 2)
    }

    pub fn evaluate(&self, x: &Dyadic) -> Result<Dyadic> {
        Self::check_domain(x)?;
        let i = Self::piece_at(&self.breaks, x, false);
        let (x0, y0) = &self.breaks[i];
        let (x1, y1) = &self.breaks[i + 1];
        let k = (y1 - y0).log2_ratio(&(x1 - x0)).expect("validated slope");
        Ok(y0 + &(x - x0).mul_pow2(k))
    }

    pub fn evaluate_inverse(&self, y: &Dyadic) -> Result<Dyadic> {
        Self::check_domain(y)?;
        let i = Self::piece_at(&self.breaks, y, true);
        let (x0, y0) = &self.breaks[i];
        let (x1, y1) = &self.breaks[i + 1];
        let k = (x1 - x0).log2_ratio(&(y1 - y0)).expect("validated slope");
        Ok(x0 + &(y - y0).mul_pow2(k))
    }

    /// The composite `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &FElement) -> FElement {
        let mut xs: Vec<Dyadic> = other.breaks.iter().map(|(x, _)| x.clone()).collect();
        xs.extend(
            self.breaks
                .iter()
                .map(|(x, _)| other.evaluate_inverse(x).expect("in range")),
        );
        xs.sort();
        xs.dedup();
        let points = xs
            .into_iter()
            .map(|x| {
                let y = self.evaluate(&other.evaluate(&x).expect("in range")).expect("in range");
                (x, y)
            })
            .collect();
        FElement {
            breaks: canonical_points(points).expect("composite of F elements lies in F"),
        }
    }

    pub fn invert(&self) -> FElement {
        FElement {
            breaks: self.breaks.iter().map(|(x, y)| (y.clone(), x.clone())).collect(),
        }
    }

    pub fn pow(&self, n: i64) -> FElement {
        let base = if n < 0 { self.invert() } else { self.clone() };
        (0..n.unsigned_abs()).fold(FElement::identity(), |acc, _| acc.compose(&base))
    }

    /// The integer `k` with one-sided derivative `2^k` at `x`.
    pub fn slope_exponent(&self, x: &Dyadic, side: Side) -> Result<i64> {
        Self::check_domain(x)?;
        let slopes = self.slope_exponents();
        let i = match side {
            Side::Right => {
                if *x == Dyadic::one() {
                    return Err(Error::OutOfDomain(x.clone()));
                }
                self.breaks.partition_point(|(bx, _)| bx <= x) - 1
            }
            Side::Left => {
                if x.is_zero() {
                    return Err(Error::OutOfDomain(x.clone()));
                }
                self.breaks.partition_point(|(bx, _)| bx < x) - 1
            }
        };
        Ok(slopes[i])
    }

    /// Whether `self(p) = p`.
    pub fn fixes(&self, p: &Dyadic) -> bool {
        self.evaluate(p).map(|y| y == *p).unwrap_or(false)
    }

    /// Whether `self` is the identity on `[0, a]` and on `[b, 1]`.
    pub fn supported_in(&self, a: &Dyadic, b: &Dyadic) -> bool {
        // piecewise linear: fixing every breakpoint of an interval and its
        // endpoints means fixing the whole interval
        self.fixes(a)
            && self.fixes(b)
            && self
                .breaks
                .iter()
                .filter(|(x, _)| x <= a || x >= b)
                .all(|(x, y)| x == y)
    }

    /// `(log2 g'_+(0), log2 g'_-(p), log2 g'_+(p), log2 g'_-(1))` for `g` fixing
    /// the dyadic point `p ∈ (0, 1)`.
    pub fn log_slope_quadruple(&self, p: &Dyadic) -> Result<[i64; 4]> {
        if !p.in_open_unit_interval() {
            return Err(Error::Precondition(alloc::format!(
                "stabilizer point {p} must lie in (0,1)"
            )));
        }
        if !self.fixes(p) {
            return Err(Error::NotFixed(p.clone()));
        }
        Ok([
            self.slope_exponent(&Dyadic::zero(), Side::Right)?,
            self.slope_exponent(p, Side::Left)?,
            self.slope_exponent(p, Side::Right)?,
            self.slope_exponent(&Dyadic::one(), Side::Left)?,
        ])
    }
}

impl fmt::Display for FElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("pl[")?;
        for (i, (x, y)) in self.breaks.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "({x},{y})")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for FElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
