use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::{LN_2, SQRT_2};
use core::fmt::{self, Write as _};
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exactnum::Dyadic;

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// An element `rat + irr·√2` of the real quadratic field Q(√2).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
struct QSqrt2 {
    rat: BigRational,
    irr: BigRational,
}

impl QSqrt2 {
    fn zero() -> Self {
        QSqrt2 {
            rat: BigRational::zero(),
            irr: BigRational::zero(),
        }
    }

    fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.irr.is_zero()
    }

    fn add(&self, o: &Self) -> Self {
        QSqrt2 {
            rat: &self.rat + &o.rat,
            irr: &self.irr + &o.irr,
        }
    }

    fn sub(&self, o: &Self) -> Self {
        QSqrt2 {
            rat: &self.rat - &o.rat,
            irr: &self.irr - &o.irr,
        }
    }

    fn mul(&self, o: &Self) -> Self {
        QSqrt2 {
            rat: &self.rat * &o.rat + &self.irr * &o.irr * rat(2),
            irr: &self.rat * &o.irr + &self.irr * &o.rat,
        }
    }

    fn scale(&self, q: &BigRational) -> Self {
        QSqrt2 {
            rat: &self.rat * q,
            irr: &self.irr * q,
        }
    }

    fn neg(&self) -> Self {
        QSqrt2 {
            rat: -&self.rat,
            irr: -&self.irr,
        }
    }

    /// Galois conjugate `rat - irr·√2`.
    fn galois(&self) -> Self {
        QSqrt2 {
            rat: self.rat.clone(),
            irr: -&self.irr,
        }
    }

    fn inverse(&self) -> Option<Self> {
        // x * galois(x) = rat^2 - 2 irr^2 is rational and nonzero for x != 0
        let norm = &self.rat * &self.rat - &self.irr * &self.irr * rat(2);
        if norm.is_zero() {
            return None;
        }
        Some(self.galois().scale(&norm.recip()))
    }

    fn to_f64(&self) -> f64 {
        to_f64(&self.rat) + to_f64(&self.irr) * SQRT_2
    }
}

/// An element `(a + b√2) + (c + d√2)i` of the field Q(i, √2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussSqrt2 {
    re: QSqrt2,
    im: QSqrt2,
}

impl GaussSqrt2 {
    pub fn new(a: BigRational, b: BigRational, c: BigRational, d: BigRational) -> Self {
        GaussSqrt2 {
            re: QSqrt2 { rat: a, irr: b },
            im: QSqrt2 { rat: c, irr: d },
        }
    }

    pub fn zero() -> Self {
        GaussSqrt2 {
            re: QSqrt2::zero(),
            im: QSqrt2::zero(),
        }
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_rational(q: BigRational) -> Self {
        GaussSqrt2 {
            re: QSqrt2 {
                rat: q,
                irr: BigRational::zero(),
            },
            im: QSqrt2::zero(),
        }
    }

    pub fn sqrt2() -> Self {
        Self::new(
            BigRational::zero(),
            BigRational::one(),
            BigRational::zero(),
            BigRational::zero(),
        )
    }

    pub fn i() -> Self {
        Self::new(
            BigRational::zero(),
            BigRational::zero(),
            BigRational::one(),
            BigRational::zero(),
        )
    }

    pub fn a(&self) -> &BigRational {
        &self.re.rat
    }

    pub fn b(&self) -> &BigRational {
        &self.re.irr
    }

    pub fn c(&self) -> &BigRational {
        &self.im.rat
    }

    pub fn d(&self) -> &BigRational {
        &self.im.irr
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// The rational value, if `b = c = d = 0`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        (self.re.irr.is_zero() && self.im.is_zero()).then_some(&self.re.rat)
    }

    /// Complex conjugation: negates `c` and `d`.
    pub fn conj(&self) -> Self {
        GaussSqrt2 {
            re: self.re.clone(),
            im: self.im.neg(),
        }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        GaussSqrt2 {
            re: self.re.scale(q),
            im: self.im.scale(q),
        }
    }

    pub fn inverse(&self) -> Option<Self> {
        // 1/(u + vi) = (u - vi) / (u^2 + v^2), with u^2 + v^2 in Q(√2)
        let n = self.re.mul(&self.re).add(&self.im.mul(&self.im));
        let inv = n.inverse()?;
        Some(GaussSqrt2 {
            re: self.re.mul(&inv),
            im: self.im.neg().mul(&inv),
        })
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    fn components(&self) -> [(&BigRational, &'static str); 4] {
        [
            (&self.re.rat, ""),
            (&self.re.irr, "r2"),
            (&self.im.rat, "i"),
            (&self.im.irr, "r2*i"),
        ]
    }
}

impl Add for &GaussSqrt2 {
    type Output = GaussSqrt2;
    fn add(self, o: &GaussSqrt2) -> GaussSqrt2 {
        GaussSqrt2 {
            re: self.re.add(&o.re),
            im: self.im.add(&o.im),
        }
    }
}

impl Sub for &GaussSqrt2 {
    type Output = GaussSqrt2;
    fn sub(self, o: &GaussSqrt2) -> GaussSqrt2 {
        GaussSqrt2 {
            re: self.re.sub(&o.re),
            im: self.im.sub(&o.im),
        }
    }
}

impl Mul for &GaussSqrt2 {
    type Output = GaussSqrt2;
    fn mul(self, o: &GaussSqrt2) -> GaussSqrt2 {
        GaussSqrt2 {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }
}

impl Neg for &GaussSqrt2 {
    type Output = GaussSqrt2;
    fn neg(self) -> GaussSqrt2 {
        GaussSqrt2 {
            re: self.re.neg(),
            im: self.im.neg(),
        }
    }
}

fn write_monomial(out: &mut String, q: &BigRational, basis: &str, first: bool) {
    let negative = q.is_negative();
    if first {
        if negative {
            out.push('-');
        }
    } else {
        out.push_str(if negative { " - " } else { " + " });
    }
    let num = q.numer().abs();
    let den = q.denom();
    if basis.is_empty() {
        let _ = write!(out, "{num}");
    } else if num.is_one() {
        out.push_str(basis);
    } else {
        let _ = write!(out, "{num}*{basis}");
    }
    if !den.is_one() {
        let _ = write!(out, "/{den}");
    }
}

impl fmt::Display for GaussSqrt2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (q, basis) in self.components() {
            if !q.is_zero() {
                let first = out.is_empty();
                write_monomial(&mut out, q, basis, first);
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for GaussSqrt2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A finite Laurent sum `Σ_m c_m·φ^m` with `c_m ∈ Q(i, √2)`, where the
/// formal unit phase `φ` stands for `e^{i·s·ln 2}`.
///
/// Zero coefficients are never stored, so `==` is equality of canonical forms.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Coeff {
    terms: BTreeMap<i64, GaussSqrt2>,
}

impl Coeff {
    pub fn zero() -> Self {
        Coeff { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::from_gauss(GaussSqrt2::one())
    }

    pub fn from_gauss(g: GaussSqrt2) -> Self {
        Self::monomial(g, 0)
    }

    pub fn from_rational(q: BigRational) -> Self {
        Self::from_gauss(GaussSqrt2::from_rational(q))
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rat(n))
    }

    pub fn from_dyadic(x: &Dyadic) -> Self {
        Self::from_rational(x.to_ratio())
    }

    /// `g·φ^m`.
    pub fn monomial(g: GaussSqrt2, m: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !g.is_zero() {
            terms.insert(m, g);
        }
        Coeff { terms }
    }

    /// The unit phase `φ^m`.
    pub fn phase(m: i64) -> Self {
        Self::monomial(GaussSqrt2::one(), m)
    }

    pub fn sqrt2() -> Self {
        Self::from_gauss(GaussSqrt2::sqrt2())
    }

    pub fn i() -> Self {
        Self::from_gauss(GaussSqrt2::i())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &GaussSqrt2)> {
        self.terms.iter().map(|(&m, g)| (m, g))
    }

    pub fn coefficient(&self, m: i64) -> Option<&GaussSqrt2> {
        self.terms.get(&m)
    }

    /// The rational value of a constant, `φ`-free, real, rational coefficient.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&0).and_then(|g| g.as_rational().cloned()),
            _ => None,
        }
    }

    /// The single `(m, g)` pair of a monomial.
    pub fn as_monomial(&self) -> Option<(i64, &GaussSqrt2)> {
        if self.terms.len() == 1 {
            self.terms().next()
        } else {
            None
        }
    }

    /// Complex conjugation; `conj(φ) = φ^{-1}`.
    pub fn conj(&self) -> Self {
        Coeff {
            terms: self.terms.iter().map(|(&m, g)| (-m, g.conj())).collect(),
        }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        self * &Coeff::from_rational(q.clone())
    }

    /// Inverse of a nonzero monomial; `None` for anything else.
    pub fn inverse(&self) -> Option<Self> {
        let (m, g) = self.as_monomial()?;
        Some(Coeff::monomial(g.inverse()?, -m))
    }

    /// Integer power; negative exponents need an invertible monomial.
    pub fn pow(&self, n: i64) -> Option<Self> {
        let base = if n < 0 { self.inverse()? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Coeff::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Some(acc)
    }

    /// Evaluates at the real parameter `s`, binding `φ = e^{i·s·ln 2}`.
    pub fn numeric_eval(&self, s: f64) -> Complex64 {
        let theta = s * LN_2;
        self.terms.iter().fold(Complex64::new(0.0, 0.0), |acc, (&m, g)| {
            let angle = m as f64 * theta;
            acc + g.to_complex() * Complex64::new(libm::cos(angle), libm::sin(angle))
        })
    }

    fn insert_add(terms: &mut BTreeMap<i64, GaussSqrt2>, m: i64, g: GaussSqrt2) {
        use alloc::collections::btree_map::Entry;
        match terms.entry(m) {
            Entry::Vacant(v) => {
                if !g.is_zero() {
                    v.insert(g);
                }
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &g;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }
}

/// The scalar `(2^m)^{1/2 + is} = 2^{m/2}·φ^m`, with `2^{m/2}` kept exact.
pub fn rep_scalar(m: i64) -> Coeff {
    let half = m.div_euclid(2);
    let magnitude = Dyadic::pow2(half).to_ratio();
    let g = if m.rem_euclid(2) == 0 {
        GaussSqrt2::from_rational(magnitude)
    } else {
        GaussSqrt2::sqrt2().scale(&magnitude)
    };
    Coeff::monomial(g, m)
}

impl Add for &Coeff {
    type Output = Coeff;
    fn add(self, o: &Coeff) -> Coeff {
        let mut terms = self.terms.clone();
        for (&m, g) in &o.terms {
            Coeff::insert_add(&mut terms, m, g.clone());
        }
        Coeff { terms }
    }
}

impl Sub for &Coeff {
    type Output = Coeff;
    fn sub(self, o: &Coeff) -> Coeff {
        self + &(-o)
    }
}

impl Mul for &Coeff {
    type Output = Coeff;
    fn mul(self, o: &Coeff) -> Coeff {
        let mut terms = BTreeMap::new();
        for (&m, g) in &self.terms {
            for (&n, h) in &o.terms {
                Coeff::insert_add(&mut terms, m + n, g * h);
            }
        }
        Coeff { terms }
    }
}

impl Neg for &Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        Coeff {
            terms: self.terms.iter().map(|(&m, g)| (m, -g)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Coeff {
            type Output = Coeff;
            fn $m(self, rhs: Coeff) -> Coeff { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        -&self
    }
}

impl From<Dyadic> for Coeff {
    fn from(x: Dyadic) -> Self {
        Coeff::from_dyadic(&x)
    }
}

impl fmt::Display for Coeff {
    /// Terms are listed by `|m|`, positive before negative degree; a lone
    /// degree-0 term prints bare, everything else as `(g)*ph^m`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        if let Some(g) = self.terms.get(&0).filter(|_| self.terms.len() == 1) {
            return write!(f, "{g}");
        }
        let mut order: Vec<(i64, &GaussSqrt2)> = self.terms().collect();
        order.sort_by_key(|&(m, _)| (m.unsigned_abs(), m < 0));
        for (idx, (m, g)) in order.into_iter().enumerate() {
            if idx > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({g})")?;
            match m {
                0 => {}
                1 => f.write_str("*ph")?,
                _ => write!(f, "*ph^{m}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use core::f64::consts::PI;

    fn dist(a: Complex64, b: Complex64) -> f64 {
        libm::hypot(a.re - b.re, a.im - b.im)
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn unit_phase_times_conjugate_is_one() {
        let ph = Coeff::phase(1);
        assert_eq!(&ph * &ph.conj(), Coeff::one());
    }

    #[test]
    fn like_terms_merge() {
        let x = &Coeff::sqrt2() * &Coeff::phase(1);
        let sum = &x + &x;
        assert_eq!(sum, Coeff::monomial(GaussSqrt2::sqrt2().scale(&q(2, 1)), 1));
        assert_eq!(sum.to_string(), "(2*r2)*ph");
    }

    #[test]
    fn conjugation_flips_degree_and_imaginary_part() {
        let one_plus_i = &Coeff::one() + &Coeff::i();
        let x = &one_plus_i * &Coeff::phase(2);
        let one_minus_i = &Coeff::one() - &Coeff::i();
        assert_eq!(x.conj(), &one_minus_i * &Coeff::phase(-2));
    }

    #[test]
    fn cancellation_prunes_terms() {
        let x = &Coeff::phase(3) - &Coeff::phase(3);
        assert!(x.is_zero());
        assert_eq!(x.to_string(), "0");
    }

    #[test]
    fn rep_scalar_values() {
        assert_eq!(rep_scalar(0), Coeff::one());
        assert_eq!(rep_scalar(1), &Coeff::sqrt2() * &Coeff::phase(1));
        let half_sqrt2 = Coeff::sqrt2().scale(&q(1, 2));
        assert_eq!(rep_scalar(-1), &half_sqrt2 * &Coeff::phase(-1));
        assert_eq!(rep_scalar(4), &Coeff::from_int(4) * &Coeff::phase(4));
        assert_eq!(rep_scalar(-3), &Coeff::sqrt2().scale(&q(1, 4)) * &Coeff::phase(-3));
    }

    #[test]
    fn rep_scalar_is_multiplicative() {
        for m in -7..7 {
            for n in -7..7 {
                assert_eq!(&rep_scalar(m) * &rep_scalar(n), rep_scalar(m + n));
            }
        }
    }

    #[test]
    fn numeric_eval_examples() {
        assert!(dist(Coeff::phase(1).numeric_eval(0.0), Complex64::new(1.0, 0.0)) < 1e-15);
        let r = (&Coeff::sqrt2() * &Coeff::phase(1)).numeric_eval(0.0);
        assert!((r.re - core::f64::consts::SQRT_2).abs() < 1e-12 && r.im.abs() < 1e-12);
        let period = 2.0 * PI / LN_2;
        let z = Coeff::phase(1).numeric_eval(period);
        assert!(dist(z, Complex64::new(1.0, 0.0)) < 1e-9);
    }

    #[test]
    fn gauss_inverse() {
        let g = GaussSqrt2::new(q(1, 1), q(2, 3), q(-1, 2), q(5, 1));
        let inv = g.inverse().unwrap();
        assert_eq!(&g * &inv, GaussSqrt2::one());
        assert!(GaussSqrt2::zero().inverse().is_none());
    }

    #[test]
    fn pow_handles_negative_exponents() {
        let x = &Coeff::sqrt2() * &Coeff::phase(1);
        assert_eq!(x.pow(2).unwrap(), &Coeff::from_int(2) * &Coeff::phase(2));
        assert_eq!(&x.pow(-3).unwrap() * &x.pow(3).unwrap(), Coeff::one());
        assert!((&Coeff::one() + &Coeff::phase(1)).pow(-1).is_none());
    }

    #[test]
    fn display_orders_by_degree_magnitude() {
        let x = &(&Coeff::from_rational(q(1, 4)) + &(&Coeff::sqrt2().scale(&q(1, 4)) * &Coeff::phase(1)))
            + &(&Coeff::sqrt2().scale(&q(1, 4)) * &Coeff::phase(-1));
        assert_eq!(x.to_string(), "(1/4) + (r2/4)*ph + (r2/4)*ph^-1");
        let g = GaussSqrt2::new(q(-1, 1), q(3, 4), q(0, 1), q(-1, 2));
        assert_eq!(g.to_string(), "-1 + 3*r2/4 - r2*i/2");
        assert_eq!(Coeff::one().to_string(), "1");
    }
}
