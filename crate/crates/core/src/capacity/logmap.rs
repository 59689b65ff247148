//! `z = (1/2πi) log λ` and its inverse `λ = e^{2πiz}`, coordinatewise.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

use crate::error::{Error, Result};

/// `(arg λ_j + 2π b_j)/(2π) − i log|λ_j|/(2π)` with principal `arg` and
/// integer branch offsets `b` (empty for all zero).
pub fn log_map(lambda: &[Complex64], branch: &[i64]) -> Result<Vec<Complex64>> {
    if !branch.is_empty() && branch.len() != lambda.len() {
        return Err(Error::DimensionMismatch { expected: lambda.len(), found: branch.len() });
    }
    lambda
        .iter()
        .enumerate()
        .map(|(j, l)| {
            if *l == Complex64::new(0.0, 0.0) {
                return Err(Error::AxesSet(j + 1));
            }
            let b = branch.get(j).copied().unwrap_or(0) as f64;
            Ok(Complex64::new(l.arg() / (2.0 * PI) + b, -l.norm().ln() / (2.0 * PI)))
        })
        .collect()
}

pub fn exp_map(z: &[Complex64]) -> Vec<Complex64> {
    z.iter().map(|c| (Complex64::i() * 2.0 * PI * c).exp()).collect()
}

/// `|e^{2πr}e^{2πiα} − 1|² / (‖α‖_ℤ² + r²)`.
pub fn equivalence_ratio(alpha: f64, r: f64) -> f64 {
    let a = alpha - alpha.round();
    let (x, y) = (2.0 * PI * r, 2.0 * PI * a);
    let s = (0.5 * y).sin();
    let re = x.exp_m1() * y.cos() - 2.0 * s * s;
    let im = x.exp() * y.sin();
    (re * re + im * im) / (a * a + r * r)
}

#[derive(Clone, Debug)]
pub struct EquivalenceReport {
    pub min_ratio: f64,
    pub max_ratio: f64,
    pub samples: usize,
    /// `4π²` lies in `[min_ratio, max_ratio]`.
    pub contains_limit: bool,
}

/// Samples `(α, r)` with `‖α‖_ℤ, |r| ≤ ρ` (α shifted by random integers).
pub fn equivalence_bound_check(samples: usize, rho: f64, seed: u64) -> Result<EquivalenceReport> {
    if !(rho > 0.0 && rho <= 0.5) {
        return Err(Error::Argument(format!("ρ must lie in (0, 1/2], got {rho}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    let mut count = 0;
    while count < samples {
        let a: f64 = rng.gen_range(-rho..=rho);
        let r: f64 = rng.gen_range(-rho..=rho);
        let shift = rng.gen_range(-3i32..=3) as f64;
        if a == 0.0 && r == 0.0 {
            continue;
        }
        let v = equivalence_ratio(a + shift, r);
        lo = lo.min(v);
        hi = hi.max(v);
        count += 1;
    }
    let limit = 4.0 * PI * PI;
    Ok(EquivalenceReport { min_ratio: lo, max_ratio: hi, samples, contains_limit: lo <= limit && limit <= hi })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let z = log_map(&[Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)], &[]).unwrap();
        assert_eq!(z, vec![Complex64::new(0.0, 0.0); 2]);
        let z = log_map(&[Complex64::i()], &[]).unwrap();
        assert!((z[0] - Complex64::new(0.25, 0.0)).norm() < 1e-16);
        assert!(matches!(log_map(&[Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)], &[]), Err(Error::AxesSet(2))));
        let z = log_map(&[Complex64::i()], &[2]).unwrap();
        assert!((z[0].re - 2.25).abs() < 1e-15);
    }

    #[test]
    fn round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..100 {
            let l: Vec<Complex64> = (0..3)
                .map(|_| Complex64::from_polar(rng.gen_range(0.05..3.0), rng.gen_range(-3.1..3.1)))
                .collect();
            let back = exp_map(&log_map(&l, &[]).unwrap());
            for (a, b) in l.iter().zip(&back) {
                assert!((a - b).norm() < 1e-12 * a.norm().max(1.0));
            }
        }
    }

    #[test]
    fn ratio_values() {
        assert!((equivalence_ratio(0.5, 0.0) - 16.0).abs() < 1e-12);
        let lim = 4.0 * PI * PI;
        assert!((equivalence_ratio(0.0, 1e-9) - lim).abs() < 1e-6);
        assert!((equivalence_ratio(1e-9, 0.0) - lim).abs() < 1e-6);
        assert!((equivalence_ratio(3.0 + 1e-3, 0.0) - equivalence_ratio(1e-3, 0.0)).abs() < 1e-6);
    }

    #[test]
    fn corridor() {
        let r = equivalence_bound_check(10_000, 0.01, 1).unwrap();
        assert!(r.min_ratio > 20.0 && r.max_ratio < 60.0);
        assert!(r.contains_limit);
    }
}
