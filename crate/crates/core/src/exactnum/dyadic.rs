use alloc::string::ToString;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// An exact dyadic rational `numerator / 2^exponent`.
///
/// Always kept canonical: either the exponent is zero or the numerator is
/// odd, so structural equality coincides with equality of values.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    num: BigInt,
    exp: u32,
}

impl Dyadic {
    pub fn new(num: impl Into<BigInt>, exp: u32) -> Self {
        let mut num = num.into();
        let mut exp = exp;
        if num.is_zero() {
            return Self::zero();
        }
        let tz = num.trailing_zeros().unwrap_or(0).min(exp as u64) as u32;
        if tz > 0 {
            num >>= tz as usize;
            exp -= tz;
        }
        Dyadic { num, exp }
    }

    pub fn zero() -> Self {
        Dyadic {
            num: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn one() -> Self {
        Dyadic {
            num: BigInt::one(),
            exp: 0,
        }
    }

    pub fn from_int(n: i64) -> Self {
        Dyadic {
            num: BigInt::from(n),
            exp: 0,
        }
    }

    /// Builds `num / 2^k`; shorthand used throughout the tests.
    pub fn frac(num: i64, exp: u32) -> Self {
        Self::new(num, exp)
    }

    /// The power of two `2^k` for any integer `k`.
    pub fn pow2(k: i64) -> Self {
        if k >= 0 {
            Dyadic {
                num: BigInt::one() << (k as usize),
                exp: 0,
            }
        } else {
            Dyadic {
                num: BigInt::one(),
                exp: (-k) as u32,
            }
        }
    }

    pub fn numerator(&self) -> &BigInt {
        &self.num
    }

    pub fn exponent(&self) -> u32 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.num.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.num.is_negative()
    }

    /// Multiplies by `2^k`.
    pub fn mul_pow2(&self, k: i64) -> Self {
        if k >= 0 {
            let shift = (k as u64).min(self.exp as u64) as u32;
            let rest = k as u64 - shift as u64;
            Dyadic::new(&self.num << (rest as usize), self.exp - shift)
        } else {
            Dyadic::new(self.num.clone(), self.exp + (-k) as u32)
        }
    }

    pub fn half(&self) -> Self {
        self.mul_pow2(-1)
    }

    /// `Some(k)` when `self / other == 2^k`, for nonzero operands.
    pub fn log2_ratio(&self, other: &Dyadic) -> Option<i64> {
        if self.is_zero() || other.is_zero() || self.num.sign() != other.num.sign() {
            return None;
        }
        let (a, za) = odd_part(&self.num);
        let (b, zb) = odd_part(&other.num);
        if a != b {
            return None;
        }
        Some(za as i64 - zb as i64 - self.exp as i64 + other.exp as i64)
    }

    /// `Some(k)` when the value is exactly `2^k`.
    pub fn log2_exact(&self) -> Option<i64> {
        self.log2_ratio(&Dyadic::one())
    }

    /// `floor(log2(self))` for positive values.
    pub fn floor_log2(&self) -> Option<i64> {
        if !self.is_positive() {
            return None;
        }
        Some(self.num.bits() as i64 - 1 - self.exp as i64)
    }

    /// Number of 1-digits in the binary expansion of `|self|`.
    pub fn popcount(&self) -> usize {
        self.num.magnitude().count_ones() as usize
    }

    /// Exponents of the binary expansion of a positive value, largest first.
    pub fn binary_digits(&self) -> Vec<i64> {
        let mag = self.num.magnitude();
        let bits = mag.bits();
        (0..bits)
            .rev()
            .filter(|&b| mag.bit(b))
            .map(|b| b as i64 - self.exp as i64)
            .collect()
    }

    pub fn floor(&self) -> BigInt {
        self.num.div_floor(&(BigInt::one() << (self.exp as usize)))
    }

    /// Representative of `self mod 1` in `[0, 1)`.
    pub fn fract(&self) -> Self {
        let modulus = BigInt::one() << (self.exp as usize);
        Dyadic::new(self.num.mod_floor(&modulus), self.exp)
    }

    pub fn in_unit_interval(&self) -> bool {
        !self.is_negative() && *self <= Dyadic::one()
    }

    pub fn in_open_unit_interval(&self) -> bool {
        self.is_positive() && *self < Dyadic::one()
    }

    pub fn to_ratio(&self) -> BigRational {
        BigRational::new(self.num.clone(), BigInt::one() << (self.exp as usize))
    }

    pub fn to_f64(&self) -> f64 {
        self.to_ratio().to_f64().unwrap_or(f64::NAN)
    }

    pub fn abs(&self) -> Self {
        Dyadic {
            num: self.num.abs(),
            exp: self.exp,
        }
    }

    pub fn min(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    pub fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    fn aligned(&self, other: &Dyadic) -> (BigInt, BigInt, u32) {
        let exp = self.exp.max(other.exp);
        (
            &self.num << ((exp - self.exp) as usize),
            &other.num << ((exp - other.exp) as usize),
            exp,
        )
    }
}

fn odd_part(n: &BigInt) -> (BigInt, u64) {
    let tz = n.trailing_zeros().unwrap_or(0);
    (n >> (tz as usize), tz)
}

impl TryFrom<&BigRational> for Dyadic {
    type Error = Error;

    fn try_from(r: &BigRational) -> Result<Self> {
        let den = r.denom().magnitude();
        if den.count_ones() != 1 {
            return Err(Error::NonDyadic(r.to_string()));
        }
        let exp = den.trailing_zeros().unwrap_or(0);
        let exp = u32::try_from(exp).map_err(|_| Error::NonDyadic(r.to_string()))?;
        let num = if r.denom().is_negative() {
            -r.numer()
        } else {
            r.numer().clone()
        };
        Ok(Dyadic::new(num, exp))
    }
}

impl From<i64> for Dyadic {
    fn from(n: i64) -> Self {
        Dyadic::from_int(n)
    }
}

impl FromStr for Dyadic {
    type Err = Error;

    /// Accepts integers and `p/q` with `q` a power of two.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::BadNumber(s.to_string());
        let (p, q) = match s.split_once('/') {
            Some((p, q)) => (p.trim(), q.trim()),
            None => (s, "1"),
        };
        let p: BigInt = p.parse().map_err(|_| bad())?;
        let q: BigInt = q.parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        Dyadic::try_from(&BigRational::new(p, q))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = self.aligned(other);
        a.cmp(&b)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: &Dyadic) -> Dyadic {
        let (a, b, exp) = self.aligned(rhs);
        Dyadic::new(a + b, exp)
    }
}

impl Sub for &Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: &Dyadic) -> Dyadic {
        let (a, b, exp) = self.aligned(rhs);
        Dyadic::new(a - b, exp)
    }
}

impl Mul for &Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: &Dyadic) -> Dyadic {
        Dyadic::new(&self.num * &rhs.num, self.exp + rhs.exp)
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic {
            num: -&self.num,
            exp: self.exp,
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Dyadic {
            type Output = Dyadic;
            fn $m(self, rhs: Dyadic) -> Dyadic { (&self).$m(&rhs) }
        }
        impl $tr<&Dyadic> for Dyadic {
            type Output = Dyadic;
            fn $m(self, rhs: &Dyadic) -> Dyadic { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        -&self
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, BigInt::one() << (self.exp as usize))
        }
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> Dyadic {
        s.parse().unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(d("1/2") + d("1/4"), d("3/4"));
        assert_eq!(d("3/8") * d("2"), d("3/4"));
        assert_eq!(d("5/8").cmp(&d("1/2")), Ordering::Greater);
    }

    #[test]
    fn canonical_form() {
        let x = Dyadic::new(12, 4);
        assert_eq!(x.numerator(), &BigInt::from(3));
        assert_eq!(x.exponent(), 2);
        assert_eq!(Dyadic::new(0, 9), Dyadic::zero());
        assert_eq!(d("4/8"), d("1/2"));
    }

    #[test]
    fn parse_rejects_non_dyadic() {
        assert!(matches!("1/3".parse::<Dyadic>(), Err(Error::NonDyadic(_))));
        assert!(matches!("1/0".parse::<Dyadic>(), Err(Error::BadNumber(_))));
        assert!(matches!("abc".parse::<Dyadic>(), Err(Error::BadNumber(_))));
        assert_eq!(d("-6/4"), d("-3/2"));
    }

    #[test]
    fn powers_and_logs() {
        assert_eq!(Dyadic::pow2(-3), d("1/8"));
        assert_eq!(Dyadic::pow2(4), d("16"));
        assert_eq!(d("3/4").log2_ratio(&d("3/16")), Some(2));
        assert_eq!(d("3/4").log2_ratio(&d("1/4")), None);
        assert_eq!(d("-1/2").log2_ratio(&d("1/2")), None);
        assert_eq!(d("5/8").floor_log2(), Some(-1));
        assert_eq!(d("1").floor_log2(), Some(0));
        assert_eq!(d("5/8").mul_pow2(3), d("5"));
        assert_eq!(d("5").mul_pow2(-1), d("5/2"));
    }

    #[test]
    fn binary_expansion() {
        assert_eq!(d("3/4").popcount(), 2);
        assert_eq!(d("3/4").binary_digits(), alloc::vec![-1, -2]);
        assert_eq!(d("5/2").binary_digits(), alloc::vec![1, -1]);
    }

    #[test]
    fn fract_and_floor() {
        assert_eq!(d("5/4").fract(), d("1/4"));
        assert_eq!(d("-1/4").fract(), d("3/4"));
        assert_eq!(d("-1/4").floor(), BigInt::from(-1));
        assert_eq!(d("2").fract(), Dyadic::zero());
    }

    #[test]
    fn display() {
        assert_eq!(d("3/8").to_string(), "3/8");
        assert_eq!(d("-5").to_string(), "-5");
        assert_eq!(Dyadic::zero().to_string(), "0");
    }
}
