//! Fixed-point dyadic intervals with outward rounding.
//!
//! An [`Interval`] stores two integers `lo`, `hi` and a bit count `bits`; it
//! denotes the closed set `[lo / 2^bits, hi / 2^bits]`. Every operation rounds
//! its lower endpoint toward −∞ and its upper endpoint toward +∞, so the
//! result always contains the exact value of the operation applied to any
//! members of the operands.
//!
//! The precision is absolute, not relative. That suits the quantities in this
//! crate, which are bounded (points of moderate norm, unimodular rotations)
//! and only need to be resolved down to a fixed absolute scale.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Rounds `x / 2^shift` toward −∞.
fn shr_floor(x: &BigInt, shift: u32) -> BigInt {
    if shift == 0 {
        return x.clone();
    }
    let d = BigInt::one() << shift;
    x.div_floor(&d)
}

/// Rounds `x / 2^shift` toward +∞.
fn shr_ceil(x: &BigInt, shift: u32) -> BigInt {
    -shr_floor(&-x, shift)
}

fn div_ceil(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: BigInt,
    hi: BigInt,
    bits: u32,
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = self.f64_bounds();
        write!(f, "[{a:e}, {b:e}]@{}", self.bits)
    }
}

impl Interval {
    /// Builds an interval from raw fixed-point endpoints. Panics if `lo > hi`.
    pub fn from_raw(lo: BigInt, hi: BigInt, bits: u32) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        Interval { lo, hi, bits }
    }

    pub fn zero(bits: u32) -> Self {
        Interval { lo: BigInt::zero(), hi: BigInt::zero(), bits }
    }

    pub fn from_int(v: &BigInt, bits: u32) -> Self {
        let x = v << bits;
        Interval { lo: x.clone(), hi: x, bits }
    }

    pub fn from_i64(v: i64, bits: u32) -> Self {
        Self::from_int(&BigInt::from(v), bits)
    }

    /// Tightest enclosure of a rational at the given precision.
    pub fn from_rational(q: &BigRational, bits: u32) -> Self {
        let num = q.numer() << bits;
        let den = q.denom();
        Interval { lo: num.div_floor(den), hi: div_ceil(&num, den), bits }
    }

    /// Encloses a finite `f64`; exact when the value is a multiple of `2^-bits`.
    pub fn from_f64(x: f64, bits: u32) -> Self {
        let q = BigRational::from_float(x).expect("finite float");
        Self::from_rational(&q, bits)
    }

    /// Hull of two rationals (in either order).
    pub fn hull_rationals(a: &BigRational, b: &BigRational, bits: u32) -> Self {
        let x = Self::from_rational(a, bits);
        let y = Self::from_rational(b, bits);
        x.hull(&y)
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn lo_raw(&self) -> &BigInt {
        &self.lo
    }

    pub fn hi_raw(&self) -> &BigInt {
        &self.hi
    }

    pub fn lower(&self) -> BigRational {
        BigRational::new(self.lo.clone(), BigInt::one() << self.bits)
    }

    pub fn upper(&self) -> BigRational {
        BigRational::new(self.hi.clone(), BigInt::one() << self.bits)
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    /// Re-expresses the interval with a different bit count, rounding outward
    /// when precision is dropped.
    pub fn with_bits(&self, bits: u32) -> Self {
        match bits.cmp(&self.bits) {
            Ordering::Equal => self.clone(),
            Ordering::Greater => {
                let s = bits - self.bits;
                Interval { lo: &self.lo << s, hi: &self.hi << s, bits }
            }
            Ordering::Less => {
                let s = self.bits - bits;
                Interval { lo: shr_floor(&self.lo, s), hi: shr_ceil(&self.hi, s), bits }
            }
        }
    }

    fn aligned(&self, other: &Self) -> (Self, Self) {
        let b = self.bits.max(other.bits);
        (self.with_bits(b), other.with_bits(b))
    }

    /// Outward-rounded `f64` bounds.
    pub fn f64_bounds(&self) -> (f64, f64) {
        let lo = self.lower();
        let hi = self.upper();
        let a = lo.to_f64().unwrap_or(f64::NEG_INFINITY);
        let b = hi.to_f64().unwrap_or(f64::INFINITY);
        // to_f64 rounds to nearest; step one ulp outward to stay conservative.
        let a = if BigRational::from_float(a).map_or(false, |v| v <= lo) { a } else { next_down(a) };
        let b = if BigRational::from_float(b).map_or(false, |v| v >= hi) { b } else { next_up(b) };
        (a, b)
    }

    pub fn mid_f64(&self) -> f64 {
        let s = &self.lo + &self.hi;
        BigRational::new(s, BigInt::one() << (self.bits + 1)).to_f64().unwrap_or(f64::NAN)
    }

    /// Upper bound on the half-width.
    pub fn rad_f64(&self) -> f64 {
        let w = &self.hi - &self.lo;
        let r = BigRational::new(w, BigInt::one() << (self.bits + 1)).to_f64().unwrap_or(f64::INFINITY);
        next_up(r)
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn contains_rational(&self, q: &BigRational) -> bool {
        &self.lower() <= q && q <= &self.upper()
    }

    /// Sign when it is certain, `None` when the interval straddles zero.
    /// A degenerate interval at zero reports `Some(Equal)`.
    pub fn sign(&self) -> Option<Ordering> {
        if self.lo.is_positive() {
            Some(Ordering::Greater)
        } else if self.hi.is_negative() {
            Some(Ordering::Less)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    /// Certain ordering of two intervals, `None` when they overlap
    /// (unless both are the same point).
    pub fn cmp_certain(&self, other: &Self) -> Option<Ordering> {
        let (a, b) = self.aligned(other);
        if a.hi < b.lo {
            Some(Ordering::Less)
        } else if a.lo > b.hi {
            Some(Ordering::Greater)
        } else if a.is_point() && b.is_point() && a.lo == b.lo {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    /// True when some member of `self` is ≤ some member of `other`.
    pub fn possibly_le(&self, other: &Self) -> bool {
        let (a, b) = self.aligned(other);
        a.lo <= b.hi
    }

    pub fn hull(&self, other: &Self) -> Self {
        let (a, b) = self.aligned(other);
        Interval { lo: a.lo.min(b.lo), hi: a.hi.max(b.hi), bits: a.bits }
    }

    /// Enclosure of `min(x, y)` over `x ∈ self`, `y ∈ other`.
    pub fn min(&self, other: &Self) -> Self {
        let (a, b) = self.aligned(other);
        Interval { lo: a.lo.min(b.lo), hi: a.hi.min(b.hi), bits: a.bits }
    }

    pub fn neg(&self) -> Self {
        Interval { lo: -&self.hi, hi: -&self.lo, bits: self.bits }
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = self.aligned(other);
        Interval { lo: a.lo + b.lo, hi: a.hi + b.hi, bits: a.bits }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.aligned(other);
        let bits = a.bits;
        let p = [&a.lo * &b.lo, &a.lo * &b.hi, &a.hi * &b.lo, &a.hi * &b.hi];
        let mn = p.iter().min().unwrap();
        let mx = p.iter().max().unwrap();
        Interval { lo: shr_floor(mn, bits), hi: shr_ceil(mx, bits), bits }
    }

    pub fn mul_int(&self, k: &BigInt) -> Self {
        let a = &self.lo * k;
        let b = &self.hi * k;
        if k.is_negative() {
            Interval { lo: b, hi: a, bits: self.bits }
        } else {
            Interval { lo: a, hi: b, bits: self.bits }
        }
    }

    /// Square; tighter than `mul(self, self)` when the interval straddles zero.
    pub fn sqr(&self) -> Self {
        let bits = self.bits;
        let a = &self.lo * &self.lo;
        let b = &self.hi * &self.hi;
        let hi = shr_ceil(&a.clone().max(b.clone()), bits);
        let lo = if self.contains_zero() { BigInt::zero() } else { shr_floor(&a.min(b), bits) };
        Interval { lo, hi, bits }
    }

    pub fn abs(&self) -> Self {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            self.neg()
        } else {
            Interval { lo: BigInt::zero(), hi: (-&self.lo).max(self.hi.clone()), bits: self.bits }
        }
    }

    /// Reciprocal; `None` when the interval contains zero.
    pub fn recip(&self) -> Option<Self> {
        if self.contains_zero() {
            return None;
        }
        // 1/x is decreasing on each sign branch: 1/hi ≤ 1/x ≤ 1/lo
        let one = BigInt::one() << (2 * self.bits);
        Some(Interval { lo: one.div_floor(&self.hi), hi: div_ceil(&one, &self.lo), bits: self.bits })
    }

    /// Division; `None` when the divisor contains zero.
    pub fn div(&self, other: &Self) -> Option<Self> {
        let (a, b) = self.aligned(other);
        if b.contains_zero() {
            return None;
        }
        let bits = a.bits;
        let mut lo: Option<BigInt> = None;
        let mut hi: Option<BigInt> = None;
        for x in [&a.lo, &a.hi] {
            for y in [&b.lo, &b.hi] {
                let n = x << bits;
                let f = n.div_floor(y);
                let c = div_ceil(&n, y);
                lo = Some(match lo {
                    Some(v) => v.min(f),
                    None => f,
                });
                hi = Some(match hi {
                    Some(v) => v.max(c),
                    None => c,
                });
            }
        }
        Some(Interval { lo: lo.unwrap(), hi: hi.unwrap(), bits })
    }

    pub fn div_int(&self, d: &BigInt) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let (lo, hi) = (self.lo.div_floor(d), div_ceil(&self.lo, d));
        let (lo2, hi2) = (self.hi.div_floor(d), div_ceil(&self.hi, d));
        Some(Interval { lo: lo.min(lo2), hi: hi.max(hi2), bits: self.bits })
    }

    /// Square root of the non-negative part; `None` if the interval is
    /// entirely negative.
    pub fn sqrt(&self) -> Option<Self> {
        if self.hi.is_negative() {
            return None;
        }
        let bits = self.bits;
        let lo = if self.lo.is_positive() { (&self.lo << bits).sqrt() } else { BigInt::zero() };
        let hn = &self.hi << bits;
        let mut hi = hn.sqrt();
        if &hi * &hi < hn {
            hi += 1;
        }
        Some(Interval { lo, hi, bits })
    }

    /// `floor` of both endpoints.
    pub fn floor_bounds(&self) -> (BigInt, BigInt) {
        (shr_floor(&self.lo, self.bits), shr_floor(&self.hi, self.bits))
    }

    /// Integers that can be the nearest integer to some member, with halves
    /// resolved downward.
    pub fn nearest_integers(&self) -> Vec<BigInt> {
        // nearest(x) = ceil(x - 1/2)
        let half = BigInt::one() << self.bits.saturating_sub(1);
        let (lo, hi) = if self.bits == 0 {
            (self.lo.clone(), self.hi.clone())
        } else {
            (
                shr_ceil(&(&self.lo - &half), self.bits),
                shr_ceil(&(&self.hi - &half), self.bits),
            )
        };
        let mut out = Vec::new();
        let mut p = lo;
        while p <= hi {
            out.push(p.clone());
            p += 1;
        }
        out
    }

    /// Enclosure of π (Machin's formula).
    pub fn pi(bits: u32) -> Self {
        let wb = bits + 16;
        let a = atan_inv(5, wb).mul_int(&BigInt::from(16));
        let b = atan_inv(239, wb).mul_int(&BigInt::from(4));
        a.sub(&b).with_bits(bits)
    }

    /// Enclosure of `exp` over the interval.
    pub fn exp(&self) -> Self {
        let lo = exp_point(&self.lo, self.bits);
        let hi = exp_point(&self.hi, self.bits);
        Interval { lo: lo.lo, hi: hi.hi, bits: self.bits }
    }

    /// Enclosures of `cos` and `sin` over the interval (midpoint evaluation
    /// widened by the half-width; both functions are 1-Lipschitz).
    pub fn cos_sin(&self) -> (Self, Self) {
        let bits = self.bits;
        let mid2 = &self.lo + &self.hi; // 2 * mid at `bits`
        let (c, s) = cos_sin_point(&mid2, bits + 1);
        let w = &self.hi - &self.lo; // full width, ≥ 2 * radius
        let widen = Interval { lo: -w.clone(), hi: w, bits };
        (c.with_bits(bits).add(&widen), s.with_bits(bits).add(&widen))
    }
}

pub fn next_up(x: f64) -> f64 {
    if x.is_nan() || x == f64::INFINITY {
        return x;
    }
    if x == 0.0 {
        return f64::from_bits(1);
    }
    let b = x.to_bits();
    if x > 0.0 { f64::from_bits(b + 1) } else { f64::from_bits(b - 1) }
}

pub fn next_down(x: f64) -> f64 {
    -next_up(-x)
}

/// `atan(1/x)` by its alternating series, enclosed at `bits`.
fn atan_inv(x: u64, bits: u32) -> Interval {
    let xb = BigInt::from(x);
    let x2 = &xb * &xb;
    let one = BigInt::one() << bits;
    // term_k = 1 / ((2k+1) x^(2k+1)); each truncated division loses < 1 ulp.
    let mut power = xb.clone();
    let mut sum = BigInt::zero();
    let mut k: u64 = 0;
    let mut nterms: i64 = 0;
    loop {
        let t = &one / (&power * BigInt::from(2 * k + 1));
        if t.is_zero() {
            break;
        }
        if k % 2 == 0 {
            sum += &t;
        } else {
            sum -= &t;
        }
        nterms += 1;
        power *= &x2;
        k += 1;
    }
    // truncation of the tail is bounded by the first omitted term (< 1 ulp)
    let slack = BigInt::from(nterms + 1);
    Interval { lo: &sum - &slack, hi: sum + slack, bits }
}

/// Taylor sum of exp at a small fixed-point argument `v / 2^bits`, returning
/// the enclosure at `bits`. Requires |v| ≤ 2^(bits-8).
fn exp_taylor_small(v: &BigInt, bits: u32) -> Interval {
    let one = BigInt::one() << bits;
    let mut sum = one.clone();
    let mut term = one;
    let mut n: u64 = 1;
    let mut err = BigInt::from(4);
    loop {
        term = shr_floor(&(&term * v), bits) / BigInt::from(n);
        if term.is_zero() {
            break;
        }
        sum += &term;
        err += 2;
        n += 1;
    }
    Interval { lo: &sum - &err, hi: sum + err, bits }
}

/// exp at a single fixed-point value `v / 2^bits`.
fn exp_point(v: &BigInt, bits: u32) -> Interval {
    // argument halving: exp(x) = exp(x / 2^s)^(2^s)
    let mag_bits = v.bits() as i64 - bits as i64; // log2 |x| roughly
    let s: u32 = (mag_bits + 10).max(0) as u32;
    let wb = bits + s + 24 + (mag_bits.max(0) as u32) * 2;
    let vv = shr_floor(&(v << (wb - bits)), s); // x / 2^s at wb (rounded down)
    let mut r = exp_taylor_small(&vv, wb);
    // rounding of vv is at most one ulp at wb; widen accordingly (exp' ≤ 2 here)
    r = r.add(&Interval { lo: BigInt::from(-2), hi: BigInt::from(2), bits: wb });
    for _ in 0..s {
        r = r.sqr();
    }
    r.with_bits(bits)
}

/// cos and sin at `v / 2^bits`, with halving and double-angle steps.
fn cos_sin_point(v: &BigInt, bits: u32) -> (Interval, Interval) {
    let mag_bits = v.bits() as i64 - bits as i64;
    let s: u32 = (mag_bits + 12).max(0) as u32;
    let wb = bits + 2 * s + 32;
    let vv = shr_floor(&(v << (wb - bits)), s);
    let one = BigInt::one() << wb;
    // Taylor: cos = Σ (-1)^k x^{2k}/(2k)!, sin = Σ (-1)^k x^{2k+1}/(2k+1)!
    let mut c = one.clone();
    let mut s_sum = vv.clone();
    let mut term = vv.clone();
    let mut n: u64 = 1;
    let mut err = BigInt::from(2);
    loop {
        term = shr_floor(&(&term * &vv), wb) / BigInt::from(n + 1);
        n += 1;
        if term.is_zero() {
            break;
        }
        // n is now the power of x in `term`
        let sign_neg = (n / 2) % 2 == 1;
        let target = if n % 2 == 0 { &mut c } else { &mut s_sum };
        if sign_neg {
            *target -= &term;
        } else {
            *target += &term;
        }
        err += 2;
    }
    let mut ci = Interval { lo: &c - &err, hi: c + &err, bits: wb };
    let mut si = Interval { lo: &s_sum - &err, hi: s_sum + &err, bits: wb };
    let two = BigInt::from(2);
    for _ in 0..s {
        let nc = Interval::from_i64(1, wb).sub(&si.sqr().mul_int(&two));
        let ns = si.mul(&ci).mul_int(&two);
        ci = nc;
        si = ns;
    }
    (ci.with_bits(bits), si.with_bits(bits))
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = self.f64_bounds();
        write!(f, "[{a}, {b}]")
    }
}
