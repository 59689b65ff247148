//! `I(a) = ∫₀^η |log(r²+a)|^σ/(r²+a)^{n−1} r^{2n−3} dr` and its two-sided
//! bounds in `|log a|^{σ+1}`.

use crate::error::{arg, Result};
use crate::quadrature::{geometric_breaks, integrate_pieces, QuadConfig};

/// Quadrature value of `I(a)`, with the closed form when `n = 2`.
#[derive(Clone, Copy, Debug)]
pub struct SliceIntegral {
    pub value: f64,
    pub error: f64,
    pub evals: usize,
    pub closed_form: Option<f64>,
}

/// Constants with `A1|log a|^{σ+1} − A2 ≤ I(a) ≤ B1|log a|^{σ+1} + B2` for
/// every `0 < a < η`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SliceBoundConstants {
    pub a1: f64,
    pub a2: f64,
    pub b1: f64,
    pub b2: f64,
    pub n: usize,
    pub sigma: f64,
    pub eta: f64,
}

impl SliceBoundConstants {
    pub fn lower(&self, a: f64) -> f64 {
        self.a1 * a.ln().abs().powf(self.sigma + 1.0) - self.a2
    }

    pub fn upper(&self, a: f64) -> f64 {
        self.b1 * a.ln().abs().powf(self.sigma + 1.0) + self.b2
    }
}

fn check(n: usize, sigma: f64, eta: f64) -> Result<()> {
    if n < 2 {
        return arg(format!("n must be at least 2, got {n}"));
    }
    if !(sigma > 0.0 && sigma.is_finite()) {
        return arg(format!("σ must be positive, got {sigma}"));
    }
    if !(eta > 0.0 && eta < 0.5) {
        return arg(format!("η must lie in (0, 1/2), got {eta}"));
    }
    Ok(())
}

/// Integrand of `I(a)`.
pub fn slice_integrand(r: f64, a: f64, sigma: f64, n: usize) -> f64 {
    let t = r * r + a;
    t.ln().abs().powf(sigma) / t.powi(n as i32 - 1) * r.powi(2 * n as i32 - 3)
}

/// `I(a)` by adaptive quadrature at relative tolerance `rel_tol`.
pub fn slice_integral(a: f64, eta: f64, sigma: f64, n: usize, rel_tol: f64) -> Result<SliceIntegral> {
    check(n, sigma, eta)?;
    if !(a > 0.0 && a < eta) {
        return arg(format!("a must lie in (0, η), got a={a}, η={eta}"));
    }
    if !(rel_tol > 0.0) {
        return arg("tolerance must be positive");
    }
    // the integrand changes scale at r ≈ √a
    let start = (a.sqrt() * 1e-3).min(eta / 2.0);
    let mut breaks = vec![0.0];
    breaks.extend(geometric_breaks(start, eta, 2.0));
    let cfg = QuadConfig { rel_tol, abs_tol: 0.0, max_depth: 50 };
    let q = integrate_pieces(|r| slice_integrand(r, a, sigma, n), &breaks, &cfg);
    let closed_form = (n == 2).then(|| {
        let s1 = sigma + 1.0;
        (a.ln().abs().powf(s1) - (a + eta * eta).ln().abs().powf(s1)) / (2.0 * s1)
    });
    Ok(SliceIntegral { value: q.value, error: q.error, evals: q.evals, closed_form })
}

/// Constants for the bounds on `I(a)`.
///
/// With `t = r² + a` the integral is `½∫_a^{a+η²} |log t|^σ ((t−a)/t)^{n−2} dt/t`.
/// Dropping the factor `((t−a)/t)^{n−2} ≤ 1` gives the upper bound. For the
/// lower bound `(1 − a/t)^{n−2} ≥ 1 − (n−2)a/t`, the correction is at most
/// `((n−2)/2)|log a|^σ`, and `x^σ ≤ θx^{σ+1} + θ^{−σ}` with
/// `θ = 1/(2(σ+1)(n−2))` absorbs it into the leading term.
pub fn lemma22_bounds(n: usize, sigma: f64, eta: f64) -> Result<SliceBoundConstants> {
    check(n, sigma, eta)?;
    let s1 = sigma + 1.0;
    let log_eta2 = (eta * eta).ln().abs().powf(s1) / (2.0 * s1);
    let (a1, a2) = if n == 2 {
        (1.0 / (2.0 * s1), log_eta2)
    } else {
        let m = (n - 2) as f64;
        let theta = 1.0 / (2.0 * s1 * m);
        (1.0 / (4.0 * s1), log_eta2 + 0.5 * m * theta.powf(-sigma))
    };
    Ok(SliceBoundConstants { a1, a2, b1: 1.0 / (2.0 * s1), b2: 0.0, n, sigma, eta })
}
