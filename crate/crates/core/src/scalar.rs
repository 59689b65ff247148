//! Real and complex scalars with either exact rational or interval backing.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::interval::Interval;

/// Which arithmetic a value is carried in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Backing {
    Exact,
    Interval,
}

impl Backing {
    pub fn join(self, other: Backing) -> Backing {
        if self == Backing::Exact && other == Backing::Exact {
            Backing::Exact
        } else {
            Backing::Interval
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Backing::Exact => "exact",
            Backing::Interval => "interval",
        }
    }
}

/// A real number: an exact rational or a guaranteed enclosure.
///
/// Arithmetic between two exact values stays exact; mixing with an interval
/// converts the exact operand to the interval's precision.
#[derive(Clone, PartialEq, Eq)]
pub enum Real {
    Exact(BigRational),
    Approx(Interval),
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Real::Exact(q) => write!(f, "{q}"),
            Real::Approx(iv) => write!(f, "{iv:?}"),
        }
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Real::Exact(q) => write!(f, "{q}"),
            Real::Approx(iv) => write!(f, "{iv}"),
        }
    }
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl Real {
    pub fn zero() -> Self {
        Real::Exact(BigRational::zero())
    }

    pub fn from_int(v: i64) -> Self {
        Real::Exact(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_big(v: &BigInt) -> Self {
        Real::Exact(BigRational::from_integer(v.clone()))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Real::Exact(ratio(n, d))
    }

    pub fn backing(&self) -> Backing {
        match self {
            Real::Exact(_) => Backing::Exact,
            Real::Approx(_) => Backing::Interval,
        }
    }

    pub fn as_exact(&self) -> Option<&BigRational> {
        match self {
            Real::Exact(q) => Some(q),
            Real::Approx(_) => None,
        }
    }

    /// Enclosure at `bits` (exact values become a tight interval).
    pub fn to_interval(&self, bits: u32) -> Interval {
        match self {
            Real::Exact(q) => Interval::from_rational(q, bits),
            Real::Approx(iv) => iv.clone(),
        }
    }

    fn bits(&self) -> Option<u32> {
        match self {
            Real::Exact(_) => None,
            Real::Approx(iv) => Some(iv.bits()),
        }
    }

    fn binary(
        &self,
        other: &Real,
        exact: impl FnOnce(&BigRational, &BigRational) -> BigRational,
        approx: impl FnOnce(&Interval, &Interval) -> Interval,
    ) -> Real {
        match (self, other) {
            (Real::Exact(a), Real::Exact(b)) => Real::Exact(exact(a, b)),
            _ => {
                let bits = self.bits().unwrap_or(0).max(other.bits().unwrap_or(0));
                Real::Approx(approx(&self.to_interval(bits), &other.to_interval(bits)))
            }
        }
    }

    pub fn add(&self, other: &Real) -> Real {
        self.binary(other, |a, b| a + b, |a, b| a.add(b))
    }

    pub fn sub(&self, other: &Real) -> Real {
        self.binary(other, |a, b| a - b, |a, b| a.sub(b))
    }

    pub fn mul(&self, other: &Real) -> Real {
        self.binary(other, |a, b| a * b, |a, b| a.mul(b))
    }

    pub fn neg(&self) -> Real {
        match self {
            Real::Exact(q) => Real::Exact(-q),
            Real::Approx(iv) => Real::Approx(iv.neg()),
        }
    }

    pub fn sqr(&self) -> Real {
        match self {
            Real::Exact(q) => Real::Exact(q * q),
            Real::Approx(iv) => Real::Approx(iv.sqr()),
        }
    }

    pub fn mul_int(&self, k: &BigInt) -> Real {
        match self {
            Real::Exact(q) => Real::Exact(q * BigRational::from_integer(k.clone())),
            Real::Approx(iv) => Real::Approx(iv.mul_int(k)),
        }
    }

    /// Division by a non-zero integer.
    pub fn div_int(&self, d: &BigInt) -> Option<Real> {
        if d.is_zero() {
            return None;
        }
        Some(match self {
            Real::Exact(q) => Real::Exact(q / BigRational::from_integer(d.clone())),
            Real::Approx(iv) => Real::Approx(iv.div_int(d)?),
        })
    }

    /// Division; `None` when the divisor is (possibly) zero.
    pub fn div(&self, other: &Real) -> Option<Real> {
        match (self, other) {
            (Real::Exact(a), Real::Exact(b)) => {
                if b.is_zero() {
                    None
                } else {
                    Some(Real::Exact(a / b))
                }
            }
            _ => {
                let bits = self.bits().unwrap_or(0).max(other.bits().unwrap_or(0));
                Some(Real::Approx(self.to_interval(bits).div(&other.to_interval(bits))?))
            }
        }
    }

    pub fn abs(&self) -> Real {
        match self {
            Real::Exact(q) => Real::Exact(q.abs()),
            Real::Approx(iv) => Real::Approx(iv.abs()),
        }
    }

    /// Certain sign, `None` when undecidable at the current precision.
    pub fn sign(&self) -> Option<Ordering> {
        match self {
            Real::Exact(q) => Some(q.cmp(&BigRational::zero())),
            Real::Approx(iv) => iv.sign(),
        }
    }

    pub fn is_exact_zero(&self) -> bool {
        matches!(self, Real::Exact(q) if q.is_zero())
    }

    /// True when the value is zero or its enclosure contains zero.
    pub fn possibly_zero(&self) -> bool {
        match self {
            Real::Exact(q) => q.is_zero(),
            Real::Approx(iv) => iv.contains_zero(),
        }
    }

    pub fn lower(&self) -> BigRational {
        match self {
            Real::Exact(q) => q.clone(),
            Real::Approx(iv) => iv.lower(),
        }
    }

    pub fn upper(&self) -> BigRational {
        match self {
            Real::Exact(q) => q.clone(),
            Real::Approx(iv) => iv.upper(),
        }
    }

    /// Certain comparison; `None` when the enclosures overlap.
    pub fn cmp_certain(&self, other: &Real) -> Option<Ordering> {
        match (self, other) {
            (Real::Exact(a), Real::Exact(b)) => Some(a.cmp(b)),
            _ => {
                let (al, ah) = (self.lower(), self.upper());
                let (bl, bh) = (other.lower(), other.upper());
                if ah < bl {
                    Some(Ordering::Less)
                } else if al > bh {
                    Some(Ordering::Greater)
                } else if al == ah && bl == bh && al == bl {
                    Some(Ordering::Equal)
                } else {
                    None
                }
            }
        }
    }

    /// True unless `self` is certainly greater than `other`.
    pub fn possibly_le(&self, other: &Real) -> bool {
        self.lower() <= other.upper()
    }

    /// Enclosure of `min(self, other)`.
    pub fn min(&self, other: &Real) -> Real {
        match (self, other) {
            (Real::Exact(a), Real::Exact(b)) => Real::Exact(a.min(b).clone()),
            _ => {
                let bits = self.bits().unwrap_or(0).max(other.bits().unwrap_or(0));
                Real::Approx(self.to_interval(bits).min(&other.to_interval(bits)))
            }
        }
    }

    /// Integers that may be nearest to the value; ties (exact halves) go to
    /// the smaller integer. A single entry for exact values.
    pub fn nearest_integers(&self) -> Vec<BigInt> {
        match self {
            Real::Exact(q) => {
                // ceil(q - 1/2)
                let shifted = q - ratio(1, 2);
                vec![shifted.ceil().to_integer()]
            }
            Real::Approx(iv) => iv.nearest_integers(),
        }
    }

    pub fn floor_exact(&self) -> Option<BigInt> {
        match self {
            Real::Exact(q) => Some(q.floor().to_integer()),
            Real::Approx(iv) => {
                let (a, b) = iv.floor_bounds();
                (a == b).then_some(a)
            }
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Real::Exact(q) => q.to_f64().unwrap_or(f64::NAN),
            Real::Approx(iv) => iv.mid_f64(),
        }
    }

    /// Absolute error bound of [`Real::to_f64`].
    pub fn f64_error(&self) -> f64 {
        match self {
            Real::Exact(q) => {
                let x = q.to_f64().unwrap_or(0.0);
                x.abs() * f64::EPSILON
            }
            Real::Approx(iv) => iv.rad_f64() + iv.mid_f64().abs() * f64::EPSILON,
        }
    }

    /// Enclosure of the square root of a non-negative value as `f64` bounds.
    pub fn sqrt_f64_bounds(&self) -> (f64, f64) {
        let iv = self.to_interval(self.bits().unwrap_or(96).max(96));
        let r = iv.sqrt().unwrap_or_else(|| Interval::zero(iv.bits()));
        r.f64_bounds()
    }
}

/// A complex scalar `re + i·im`.
#[derive(Clone, PartialEq, Eq)]
pub struct Scalar {
    pub re: Real,
    pub im: Real,
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?} + {:?}i)", self.re, self.im)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_exact_zero() {
            write!(f, "{}", self.re)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl Scalar {
    pub fn new(re: Real, im: Real) -> Self {
        Scalar { re, im }
    }

    pub fn zero() -> Self {
        Scalar { re: Real::zero(), im: Real::zero() }
    }

    pub fn real(re: Real) -> Self {
        Scalar { re, im: Real::zero() }
    }

    pub fn from_int(v: i64) -> Self {
        Scalar::real(Real::from_int(v))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Scalar::real(Real::ratio(n, d))
    }

    pub fn i() -> Self {
        Scalar { re: Real::zero(), im: Real::from_int(1) }
    }

    pub fn exact(re: BigRational, im: BigRational) -> Self {
        Scalar { re: Real::Exact(re), im: Real::Exact(im) }
    }

    pub fn backing(&self) -> Backing {
        self.re.backing().join(self.im.backing())
    }

    pub fn add(&self, o: &Scalar) -> Scalar {
        Scalar { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }

    pub fn sub(&self, o: &Scalar) -> Scalar {
        Scalar { re: self.re.sub(&o.re), im: self.im.sub(&o.im) }
    }

    pub fn neg(&self) -> Scalar {
        Scalar { re: self.re.neg(), im: self.im.neg() }
    }

    pub fn mul(&self, o: &Scalar) -> Scalar {
        let re = self.re.mul(&o.re).sub(&self.im.mul(&o.im));
        let im = self.re.mul(&o.im).add(&self.im.mul(&o.re));
        Scalar { re, im }
    }

    pub fn mul_int(&self, k: &BigInt) -> Scalar {
        Scalar { re: self.re.mul_int(k), im: self.im.mul_int(k) }
    }

    pub fn mul_real(&self, r: &Real) -> Scalar {
        Scalar { re: self.re.mul(r), im: self.im.mul(r) }
    }

    pub fn div_int(&self, d: &BigInt) -> Option<Scalar> {
        Some(Scalar { re: self.re.div_int(d)?, im: self.im.div_int(d)? })
    }

    /// `|self|²`.
    pub fn norm_sqr(&self) -> Real {
        self.re.sqr().add(&self.im.sqr())
    }

    /// Non-negative integer power by binary exponentiation.
    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = Scalar::from_int(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn is_exact_zero(&self) -> bool {
        self.re.is_exact_zero() && self.im.is_exact_zero()
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    /// Bound on `|self − self.to_c64()|`.
    pub fn c64_error(&self) -> f64 {
        self.re.f64_error() + self.im.f64_error()
    }

    /// Enclosure of `e^{2πi·self}` at `bits`; `self` is reduced modulo 1 in
    /// its real part first.
    pub fn exp_2pi_i(&self, bits: u32) -> Scalar {
        let wb = bits + 32;
        let re = self.re.to_interval(wb);
        let im = self.im.to_interval(wb);
        // reduce the real part by an integer (exactly)
        let shift = BigInt::from(re.mid_f64().round() as i64);
        let re = re.sub(&Interval::from_int(&shift, wb));
        let two_pi = Interval::pi(wb).mul_int(&BigInt::from(2));
        let theta = re.mul(&two_pi);
        let modulus = im.mul(&two_pi).neg().exp();
        let (c, s) = theta.cos_sin();
        Scalar {
            re: Real::Approx(modulus.mul(&c).with_bits(bits)),
            im: Real::Approx(modulus.mul(&s).with_bits(bits)),
        }
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::from_int(v)
    }
}

/// Parses `p/q` or an integer into a rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(BigRational::new(n, d))
    } else if let Some((ip, fp)) = s.split_once('.') {
        // exact decimal
        let neg = ip.trim_start().starts_with('-');
        let ip = ip.trim_start_matches(['-', '+']);
        let ipart: BigInt = if ip.is_empty() { BigInt::zero() } else { ip.parse().ok()? };
        if fp.is_empty() || !fp.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let fpart: BigInt = fp.parse().ok()?;
        let den = BigInt::from(10).pow(fp.len() as u32);
        let v = BigRational::new(ipart * &den + fpart, den);
        Some(if neg { -v } else { v })
    } else {
        let n: BigInt = s.parse().ok()?;
        Some(BigRational::from_integer(n))
    }
}

pub fn rational_to_string(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}
