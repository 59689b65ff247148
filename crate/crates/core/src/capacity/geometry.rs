//! Balls and spheres in `ℝ^D`.

use crate::cf1d::gamma_fn;

/// Volume of the unit ball in `ℝ^D`.
pub fn unit_ball_volume(d: usize) -> f64 {
    std::f64::consts::PI.powf(d as f64 / 2.0) / gamma_fn(d as f64 / 2.0 + 1.0)
}

/// Surface area of the unit sphere `S^{D−1} ⊂ ℝ^D`.
pub fn unit_sphere_area(d: usize) -> f64 {
    2.0 * std::f64::consts::PI.powf(d as f64 / 2.0) / gamma_fn(d as f64 / 2.0)
}

/// `∫_0^θ sin^m t dt`.
fn sin_power_integral(m: usize, theta: f64) -> f64 {
    match m {
        0 => theta,
        1 => 1.0 - theta.cos(),
        _ => {
            let mf = m as f64;
            -theta.sin().powi(m as i32 - 1) * theta.cos() / mf + (mf - 1.0) / mf * sin_power_integral(m - 2, theta)
        }
    }
}

/// Fraction of the sphere `{‖x‖ = r} ⊂ ℝ^D` lying in the closed ball of
/// radius `rho` whose center is at distance `beta` from the origin.
pub fn sphere_fraction_in_ball(d: usize, r: f64, beta: f64, rho: f64) -> f64 {
    if r + beta <= rho {
        return 1.0;
    }
    if r >= beta + rho || r <= beta - rho {
        return 0.0;
    }
    if d == 1 {
        // the two points ±r; +r is inside here, −r is inside iff r + β ≤ ρ
        return 0.5;
    }
    let c = ((r * r + beta * beta - rho * rho) / (2.0 * r * beta)).clamp(-1.0, 1.0);
    let theta = c.acos();
    sin_power_integral(d - 2, theta) / sin_power_integral(d - 2, std::f64::consts::PI)
}
