//! Seeded random test points.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::point::{Number, Point};
use crate::scalar::{Real, Scalar};

/// A deterministic stream of rational points.
///
/// Real points (`n = 1`) have reduced denominators above 4096, so `kz ∉ ℤ`
/// for `1 ≤ k ≤ 4096`. Points with `n ≥ 2` have generic non-zero imaginary
/// parts.
pub struct RandomPanel {
    rng: ChaCha8Rng,
}

impl RandomPanel {
    pub fn new(seed: u64) -> Self {
        RandomPanel { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    fn ratio(&mut self, lo: f64, hi: f64, den: (i64, i64)) -> BigRational {
        let q = self.rng.gen_range(den.0..=den.1);
        let x: f64 = self.rng.gen_range(lo..hi);
        BigRational::new(BigInt::from((x * q as f64).round() as i64), BigInt::from(q))
    }

    pub fn real_point(&mut self) -> Point {
        loop {
            let q = self.rng.gen_range(4097i64..=65_521);
            let p = self.rng.gen_range(1..q);
            if p.gcd(&q) == 1 {
                return Point::new(vec![Scalar::real(Real::Exact(BigRational::new(p.into(), q.into())))]);
            }
        }
    }

    pub fn complex_point(&mut self, n: usize) -> Point {
        let coords = (0..n)
            .map(|_| {
                let re = self.ratio(-0.5, 0.5, (2, 997));
                let im = self.ratio(0.01, 0.3, (101, 9973));
                Scalar::exact(re, im)
            })
            .collect();
        Point::new(coords)
    }

    /// `real_point` for `n = 1`, `complex_point` otherwise.
    pub fn point(&mut self, n: usize) -> Point {
        if n == 1 {
            self.real_point()
        } else {
            self.complex_point(n)
        }
    }

    /// `(a + b√d)/c` with `d` square-free, `0 < value < 1`.
    pub fn quadratic_irrational(&mut self) -> Number {
        const SQUARE_FREE: [i64; 12] = [2, 3, 5, 6, 7, 10, 11, 13, 14, 15, 17, 19];
        loop {
            let d = SQUARE_FREE[self.rng.gen_range(0..SQUARE_FREE.len())];
            let a = self.rng.gen_range(-9i64..=9);
            let b = self.rng.gen_range(1i64..=4);
            let c = self.rng.gen_range(2i64..=11);
            let v = (a as f64 + b as f64 * (d as f64).sqrt()) / c as f64;
            if v > 0.02 && v < 0.98 {
                return Number::Quadratic { a, b, d, c };
            }
        }
    }
}
