//! Points of `ℂⁿ`, ball regions, and named test points.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{arg, Error, Result};
use crate::interval::Interval;
use crate::lattice::MAX_DIM;
use crate::scalar::{Backing, Real, Scalar};

/// A point of `ℂⁿ`.
#[derive(Clone, PartialEq, Eq)]
pub struct Point {
    coords: Vec<Scalar>,
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.coords).finish()
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl Point {
    /// Panics on an empty coordinate list.
    pub fn new(coords: Vec<Scalar>) -> Self {
        assert!(!coords.is_empty(), "a point needs at least one coordinate");
        Point { coords }
    }

    pub fn try_new(coords: Vec<Scalar>) -> Result<Self> {
        if coords.is_empty() || coords.len() > MAX_DIM {
            return arg(format!("dimension must be in 1..={MAX_DIM}, got {}", coords.len()));
        }
        Ok(Point { coords })
    }

    pub fn zero(n: usize) -> Self {
        Point::new(vec![Scalar::zero(); n])
    }

    pub fn from_c64(v: &[Complex64], bits: u32) -> Self {
        Point::new(
            v.iter()
                .map(|c| {
                    Scalar::new(
                        Real::Approx(Interval::from_f64(c.re, bits)),
                        Real::Approx(Interval::from_f64(c.im, bits)),
                    )
                })
                .collect(),
        )
    }

    /// Exact point with real rational coordinates given as `(num, den)`.
    pub fn real_ratios(v: &[(i64, i64)]) -> Self {
        Point::new(v.iter().map(|&(p, q)| Scalar::ratio(p, q)).collect())
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn backing(&self) -> Backing {
        self.coords.iter().fold(Backing::Exact, |b, c| b.join(c.backing()))
    }

    pub fn to_c64(&self) -> Vec<Complex64> {
        self.coords.iter().map(Scalar::to_c64).collect()
    }

    /// Largest coordinate error of [`Point::to_c64`].
    pub fn c64_error(&self) -> f64 {
        self.coords.iter().map(Scalar::c64_error).fold(0.0, f64::max)
    }

    /// Interval-backed copy at `bits`.
    pub fn to_interval(&self, bits: u32) -> Point {
        Point::new(
            self.coords
                .iter()
                .map(|c| Scalar::new(Real::Approx(c.re.to_interval(bits)), Real::Approx(c.im.to_interval(bits))))
                .collect(),
        )
    }

    fn check(&self, other: &Point) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: other.dim() });
        }
        Ok(())
    }

    pub fn add(&self, other: &Point) -> Result<Point> {
        self.check(other)?;
        Ok(Point::new(self.coords.iter().zip(&other.coords).map(|(a, b)| a.add(b)).collect()))
    }

    pub fn sub(&self, other: &Point) -> Result<Point> {
        self.check(other)?;
        Ok(Point::new(self.coords.iter().zip(&other.coords).map(|(a, b)| a.sub(b)).collect()))
    }

    /// `‖self − other‖²`.
    pub fn dist_sq(&self, other: &Point) -> Result<Real> {
        let d = self.sub(other)?;
        Ok(d.coords.iter().fold(Real::zero(), |acc, c| acc.add(&c.norm_sqr())))
    }

    pub fn norm_sq(&self) -> Real {
        self.coords.iter().fold(Real::zero(), |acc, c| acc.add(&c.norm_sqr()))
    }
}

/// An open ball `B(center, radius)`.
#[derive(Clone, Debug)]
pub struct Region {
    pub center: Point,
    pub radius: f64,
}

impl Region {
    pub fn new(center: Point, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return arg(format!("region radius must be positive, got {radius}"));
        }
        Ok(Region { center, radius })
    }

    pub fn dim(&self) -> usize {
        self.center.dim()
    }

    /// `sup ‖z‖` over the closed ball, rounded up.
    pub fn sup_norm(&self) -> f64 {
        let c: f64 = self.center.to_c64().iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        crate::interval::next_up(c + self.radius)
    }

    /// Whether the closed ball avoids `{Π w_j = 0}`.
    pub fn avoids_axes(&self) -> bool {
        self.center.to_c64().iter().all(|c| c.norm() > self.radius)
    }
}

/// A point that can be produced at any requested precision.
///
/// Exact sources ignore the precision argument.
pub trait PointSource: Sync + Send {
    fn dim(&self) -> usize;
    fn at_bits(&self, bits: u32) -> Point;
    fn is_exact(&self) -> bool;
    fn label(&self) -> String;
}

impl PointSource for Point {
    fn dim(&self) -> usize {
        self.coords.len()
    }

    fn at_bits(&self, _bits: u32) -> Point {
        self.clone()
    }

    fn is_exact(&self) -> bool {
        self.backing() == Backing::Exact
    }

    fn label(&self) -> String {
        self.to_string()
    }
}

/// Real numbers with a known enclosure procedure.
#[derive(Clone, Debug, PartialEq)]
pub enum Number {
    Rational(BigRational),
    /// `(a + b√d)/c` with `d` a positive non-square.
    Quadratic { a: i64, b: i64, d: i64, c: i64 },
    /// `π − 3`.
    PiMinus3,
    /// `Σ_{j≥1} 10^{−j!}`.
    Liouville,
    /// The continued fraction with `a_1 = 1`, `a_{j+1} = 2^{Q_j}`.
    NonBrjuno,
}

/// `(√5 − 1)/2`.
pub const GOLDEN: Number = Number::Quadratic { a: -1, b: 1, d: 5, c: 2 };

impl Number {
    pub fn enclose(&self, bits: u32) -> Interval {
        let wb = bits + 16;
        let iv = match self {
            Number::Rational(q) => Interval::from_rational(q, wb),
            Number::Quadratic { a, b, d, c } => {
                let root = Interval::from_i64(*d, wb).sqrt().expect("positive radicand");
                let num = root.mul_int(&BigInt::from(*b)).add(&Interval::from_i64(*a, wb));
                num.div_int(&BigInt::from(*c)).expect("non-zero denominator")
            }
            Number::PiMinus3 => Interval::pi(wb).sub(&Interval::from_i64(3, wb)),
            Number::Liouville => {
                let mut acc = BigRational::zero();
                let mut fact: u64 = 1;
                let mut j = 1u64;
                loop {
                    fact *= j;
                    let den = BigInt::from(10).pow(fact as u32);
                    acc += BigRational::new(BigInt::one(), den);
                    // the tail after term j is below 2·10^{−(j+1)!}
                    if (fact * (j + 1)) as f64 * std::f64::consts::LOG2_10 > (wb + 2) as f64 {
                        let tail = BigRational::new(
                            BigInt::from(2),
                            BigInt::from(10).pow((fact * (j + 1)) as u32),
                        );
                        return Interval::hull_rationals(&acc, &(&acc + tail), wb).with_bits(bits);
                    }
                    j += 1;
                }
            }
            Number::NonBrjuno => {
                let (p, q, q_next_log2) = nonbrjuno_head(wb);
                let v = BigRational::new(p, q.clone());
                // |α − P/Q| < 1/(Q·Q_next) with Q_next ≥ 2^{q_next_log2}
                let qbits = q.bits() as u32 - 1;
                let slack = BigRational::new(BigInt::one(), BigInt::one() << (qbits + q_next_log2));
                Interval::hull_rationals(&(&v - &slack), &(&v + &slack), wb)
            }
        };
        iv.with_bits(bits)
    }

    pub fn exact(&self) -> Option<&BigRational> {
        match self {
            Number::Rational(q) => Some(q),
            _ => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.enclose(80).mid_f64()
    }
}

/// Convergent `P/Q` of the non-Brjuno number whose successor denominator has
/// at least `bits` bits, and a lower bound on that successor's bit length.
fn nonbrjuno_head(bits: u32) -> (BigInt, BigInt, u32) {
    let (mut p_prev, mut q_prev) = (BigInt::one(), BigInt::zero());
    let (mut p, mut q) = (BigInt::zero(), BigInt::one());
    let mut a = BigInt::one();
    loop {
        let p_new = &a * &p + &p_prev;
        let q_new = &a * &q + &q_prev;
        p_prev = std::mem::replace(&mut p, p_new);
        q_prev = std::mem::replace(&mut q, q_new);
        // next quotient is 2^Q, so the next denominator exceeds 2^Q·Q
        let qv: u64 = q.clone().try_into().unwrap_or(u64::MAX);
        if qv >= bits as u64 {
            return (p, q, bits);
        }
        a = BigInt::one() << qv;
    }
}

/// A point built from named real numbers, optionally mapped through
/// `x ↦ e^{2πix}` coordinate-wise.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub coords: Vec<Number>,
    pub rotation: bool,
}

impl Fixture {
    pub fn new(name: impl Into<String>, coords: Vec<Number>, rotation: bool) -> Self {
        Fixture { name: name.into(), coords, rotation }
    }

    pub fn golden(n: usize) -> Self {
        Fixture::new("golden", vec![GOLDEN; n], false)
    }

    pub fn golden_rotation(n: usize) -> Self {
        Fixture::new("golden-rotation", vec![GOLDEN; n], true)
    }

    pub fn non_brjuno(n: usize) -> Self {
        Fixture::new("nonbrjuno", vec![Number::NonBrjuno; n], false)
    }
}

impl PointSource for Fixture {
    fn dim(&self) -> usize {
        self.coords.len()
    }

    fn at_bits(&self, bits: u32) -> Point {
        let coords = self
            .coords
            .iter()
            .map(|x| {
                let re = match x.exact() {
                    Some(q) => Real::Exact(q.clone()),
                    None => Real::Approx(x.enclose(bits)),
                };
                let s = Scalar::real(re);
                if self.rotation {
                    s.exp_2pi_i(bits)
                } else {
                    s
                }
            })
            .collect();
        Point::new(coords)
    }

    fn is_exact(&self) -> bool {
        !self.rotation && self.coords.iter().all(|x| x.exact().is_some())
    }

    fn label(&self) -> String {
        self.name.clone()
    }
}

/// The point `(e^{2πiz_1}, …, e^{2πiz_n})` for an exact or interval `z`.
#[derive(Clone, Debug)]
pub struct Rotated(pub Point);

impl PointSource for Rotated {
    fn dim(&self) -> usize {
        self.0.dim()
    }

    fn at_bits(&self, bits: u32) -> Point {
        Point::new(self.0.coords().iter().map(|c| c.exp_2pi_i(bits)).collect())
    }

    fn is_exact(&self) -> bool {
        false
    }

    fn label(&self) -> String {
        format!("exp(2πi·{})", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_enclosure() {
        let g = GOLDEN.enclose(200);
        let (lo, hi) = g.f64_bounds();
        let gf = (5f64.sqrt() - 1.0) / 2.0;
        assert!(lo <= gf && gf <= hi);
        // g² + g − 1 = 0
        let r = g.sqr().add(&g).sub(&Interval::from_i64(1, 200));
        assert!(r.contains_zero());
        assert!(r.rad_f64() < 1e-55);
    }

    #[test]
    fn liouville_enclosure() {
        let x = Number::Liouville.enclose(128);
        let approx = 0.1 + 0.01 + 1e-6;
        assert!((x.mid_f64() - approx).abs() < 1e-15);
        assert!(x.rad_f64() < 1e-35);
    }

    #[test]
    fn non_brjuno_enclosure() {
        let x = Number::NonBrjuno.enclose(64);
        // third convergent 1/(1+1/(2+1/8)) = 17/25
        let v = x.mid_f64();
        assert!((v - 17.0 / 25.0).abs() < 1e-3);
        let y = Number::NonBrjuno.enclose(256);
        assert!(y.rad_f64() < 1e-70);
        assert!(x.lower() <= y.lower() && y.upper() <= x.upper());
    }

    #[test]
    fn golden_rotation_on_unit_circle() {
        let z = Fixture::golden_rotation(1).at_bits(128);
        let m = z.coords()[0].norm_sqr();
        assert!(m.lower() <= BigRational::one() && BigRational::one() <= m.upper());
    }

    #[test]
    fn region_checks() {
        assert!(Region::new(Point::zero(2), 0.0).is_err());
        let r = Region::new(Point::real_ratios(&[(3, 1), (3, 1)]), 0.1).unwrap();
        assert!(r.avoids_axes());
        assert!(r.sup_norm() > 18f64.sqrt() + 0.1);
    }
}
