//! Kernel energies of discrete and ball-uniform measures.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::geometry::{sphere_fraction_in_ball, unit_ball_volume, unit_sphere_area};
use super::kernel::{kernel, KernelParams, KernelValue};
use crate::error::{arg, Result};
use crate::point::Point;
use crate::quadrature::{geometric_breaks, integrate_pieces, QuadConfig};
use crate::reduce::pairwise_sum;

/// Energy of an atomic measure: always `+∞`, with the off-diagonal sum
/// `Σ_{i≠j} w_i w_j k_σ(z_i, z_j)` as a finite proxy unless two atoms coincide.
#[derive(Clone, Debug, PartialEq)]
pub struct EnergyReport {
    pub energy: KernelValue,
    pub proxy: KernelValue,
    /// First coincident pair, if any.
    pub coincident: Option<(usize, usize)>,
}

pub fn energy(points: &[Point], weights: &[f64], params: &KernelParams) -> Result<EnergyReport> {
    if points.is_empty() || points.len() != weights.len() {
        return arg("need one positive weight per point");
    }
    if weights.iter().any(|w| !(*w > 0.0)) {
        return arg("weights must be positive");
    }
    if (weights.iter().sum::<f64>() - 1.0).abs() > 1e-12 {
        return arg("weights must sum to 1");
    }
    if points.iter().any(|p| p.dim() != params.n) {
        return arg("point dimension differs from n");
    }
    let rows: Vec<(f64, Option<usize>)> = (0..points.len())
        .into_par_iter()
        .map(|i| {
            let mut terms = Vec::new();
            for j in i + 1..points.len() {
                match kernel(&points[i], &points[j], params)? {
                    KernelValue::Infinite => return Ok((f64::INFINITY, Some(j))),
                    KernelValue::Finite(v) => terms.push(weights[i] * weights[j] * v),
                }
            }
            Ok((pairwise_sum(&terms), None))
        })
        .collect::<Result<_>>()?;
    let coincident = rows.iter().enumerate().find_map(|(i, (_, j))| j.map(|j| (i, j)));
    let proxy = match coincident {
        Some(_) => KernelValue::Infinite,
        None => KernelValue::Finite(2.0 * pairwise_sum(&rows.iter().map(|r| r.0).collect::<Vec<_>>())),
    };
    Ok(EnergyReport { energy: KernelValue::Infinite, proxy, coincident })
}

/// `U(s) = ∫ k_σ(x − y) dμ(y)` for `μ` uniform on the ball of radius `r` in
/// `ℝ^{2n}` and `‖x − center‖ = s`.
pub fn ball_potential(s: f64, r: f64, params: &KernelParams) -> f64 {
    let d = 2 * params.n;
    let hi = s + r;
    let f = |t: f64| {
        if t <= 0.0 {
            return 0.0;
        }
        // k_σ(t) t^{2n−1} = |log t|^σ t
        t.ln().abs().powf(params.sigma) * t * sphere_fraction_in_ball(d, t, s, r)
    };
    let mut breaks = geometric_breaks(hi * 1e-9, hi, 2.0);
    breaks.insert(0, 0.0);
    breaks.extend([(r - s).abs(), 1.0]);
    breaks.retain(|b| *b <= hi);
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();
    let q = integrate_pieces(f, &breaks, &QuadConfig { rel_tol: 1e-10, abs_tol: 0.0, max_depth: 40 });
    unit_sphere_area(d) * q.value / (unit_ball_volume(d) * r.powi(d as i32))
}

/// Monte Carlo estimate of `I(μ) = ∫ U^μ dμ` for the uniform ball measure.
#[derive(Clone, Debug)]
pub struct BallEnergy {
    pub radius: f64,
    pub samples: usize,
    pub energy: f64,
    pub std_error: f64,
    /// `1/I(μ)`.
    pub capacity_lower: f64,
}

/// Samples `s = r u^{1/2n}`, the distance to the center of a uniform point,
/// and averages `U(s)`.
pub fn ball_energy(params: &KernelParams, radius: f64, samples: usize, seed: u64) -> Result<BallEnergy> {
    if !(radius > 0.0 && radius.is_finite()) {
        return arg("radius must be positive");
    }
    if samples < 2 {
        return arg("need at least two samples");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let expo = 1.0 / (2 * params.n) as f64;
    let dists: Vec<f64> = (0..samples).map(|_| radius * rng.gen::<f64>().powf(expo)).collect();
    let vals: Vec<f64> = dists.par_iter().map(|&s| ball_potential(s, radius, params)).collect();
    let mean = pairwise_sum(&vals) / samples as f64;
    let var = pairwise_sum(&vals.iter().map(|v| (v - mean).powi(2)).collect::<Vec<_>>()) / (samples - 1) as f64;
    Ok(BallEnergy { radius, samples, energy: mean, std_error: (var / samples as f64).sqrt(), capacity_lower: 1.0 / mean })
}

/// `1/I(μ)` for the uniform measure on a ball of the given radius.
pub fn capacity_lower(params: &KernelParams, radius: f64, samples: usize, seed: u64) -> Result<f64> {
    Ok(ball_energy(params, radius, samples, seed)?.capacity_lower)
}
