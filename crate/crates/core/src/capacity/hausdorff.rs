//! The gauge `h_δ(t) = t^{2n−2}|log t|^{−δ}` and gauge sums of ball covers of
//! hyperplane tubes.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{arg, Error, Result};
use crate::lattice::MultiIndex;
use crate::point::Region;

pub fn h_gauge(t: f64, delta: f64, n: usize) -> Result<f64> {
    if !(t > 0.0 && t < 1.0) {
        return arg(format!("gauge argument must lie in (0, 1), got {t}"));
    }
    Ok(t.powi(2 * n as i32 - 2) * t.ln().abs().powf(-delta))
}

/// A cover of `{w ∈ V : |k·w − p| < ρ}` by balls of radius `2ρ`.
#[derive(Clone, Debug, PartialEq)]
pub struct TubeCover {
    pub ball_count: u64,
    pub h_sum: f64,
    pub ball_radius: f64,
    /// Grid spacing in the hyperplane.
    pub spacing: f64,
}

fn isqrt_floor(x: f64) -> i64 {
    let mut m = x.sqrt().floor() as i64;
    while ((m + 1) * (m + 1)) as f64 <= x {
        m += 1;
    }
    while m > 0 && (m * m) as f64 > x {
        m -= 1;
    }
    m
}

/// Number of points of `ℤ^D` with squared norm at most `r2`.
pub fn lattice_ball_count(d: usize, r2: f64) -> u64 {
    if r2 < 0.0 {
        return 0;
    }
    match d {
        0 => 1,
        1 => 2 * isqrt_floor(r2) as u64 + 1,
        _ => {
            let m = isqrt_floor(r2);
            (-m..=m).into_par_iter().map(|i| lattice_ball_count(d - 1, r2 - (i * i) as f64)).sum()
        }
    }
}

/// Covers the tube by balls of radius `2ρ` centered on a cubic grid in
/// `Π_{k,p}` of spacing `2√3ρ/√D`, `D = 2n−2`: every tube point lies within
/// `ρ/‖k‖ ≤ ρ` of `Π` and its projection within `√3ρ` of the grid.
pub fn tube_cover_sum(k: &MultiIndex, p: i64, rho: f64, region: &Region, delta: f64) -> Result<TubeCover> {
    if k.is_zero() {
        return Err(Error::ZeroIndex);
    }
    let n = region.dim();
    if k.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: k.dim() });
    }
    if !(rho > 0.0 && rho < region.radius) {
        return arg("tube radius must lie in (0, radius(V))");
    }
    let ball_radius = 2.0 * rho;
    let dd = 2 * n - 2;
    let spacing = if dd == 0 { 0.0 } else { 2.0 * 3f64.sqrt() * rho / (dd as f64).sqrt() };
    let c = region.center.to_c64();
    let kc: Complex64 = k.coords().iter().zip(&c).map(|(&ki, x)| x * ki as f64).sum();
    let norm = (k.norm_sq() as f64).sqrt();
    let d_center = (kc - p as f64).norm() / norm;
    let half_width = rho / norm;
    if d_center >= region.radius + half_width {
        return Ok(TubeCover { ball_count: 0, h_sum: 0.0, ball_radius, spacing });
    }
    let gap = (d_center - half_width).max(0.0);
    let proj_radius = (region.radius * region.radius - gap * gap).max(0.0).sqrt();
    let ball_count = if dd == 0 {
        1
    } else {
        let reach = proj_radius + spacing * (dd as f64).sqrt() / 2.0;
        lattice_ball_count(dd, (reach / spacing).powi(2))
    };
    let h_sum = ball_count as f64 * h_gauge(ball_radius, delta, n)?;
    Ok(TubeCover { ball_count, h_sum, ball_radius, spacing })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::point::Point;

    #[test]
    fn gauge_values() {
        let v = h_gauge((-1f64).exp(), 3.0, 2).unwrap();
        assert!((v - (-2f64).exp()).abs() < 1e-15);
        assert!(h_gauge(1e-300, 2.0, 2).unwrap() < 1e-290);
        assert_eq!(h_gauge(0.1, 2.0, 1).unwrap(), 0.1f64.ln().abs().powf(-2.0));
        assert!(h_gauge(1.0, 2.0, 2).is_err());
    }

    #[test]
    fn gauge_increasing_on_small_t() {
        for n in 2..=3usize {
            let delta = n as f64 + 2.0;
            let tmax = (-delta / (2.0 * n as f64 - 2.0)).exp();
            let mut prev = 0.0;
            for i in 1..=400 {
                let t = tmax * i as f64 / 400.0;
                let v = h_gauge(t, delta, n).unwrap();
                assert!(v > prev);
                prev = v;
            }
        }
    }

    #[test]
    fn lattice_counts() {
        assert_eq!(lattice_ball_count(2, 1.0), 5);
        assert_eq!(lattice_ball_count(2, 2.0), 9);
        assert_eq!(lattice_ball_count(3, 1.0), 7);
        assert_eq!(lattice_ball_count(4, 1.0), 9);
        // Gauss circle: N(10) = 317
        assert_eq!(lattice_ball_count(2, 100.0), 317);
    }

    #[test]
    fn missing_tube_is_empty() {
        let v = Region::new(Point::zero(2), 0.25).unwrap();
        let c = tube_cover_sum(&MultiIndex::new(vec![1, 0]), 3, 0.01, &v, 4.0).unwrap();
        assert_eq!((c.ball_count, c.h_sum), (0, 0.0));
    }

    #[test]
    fn sums_decrease() {
        let v = Region::new(Point::zero(2), 0.5).unwrap();
        let k = MultiIndex::new(vec![1, 1]);
        let sums: Vec<f64> =
            (4..=14).map(|s| tube_cover_sum(&k, 0, 2f64.powi(-s), &v, 4.0).unwrap().h_sum).collect();
        assert!(sums.windows(2).all(|w| w[1] < w[0]), "{sums:?}");
    }
}
