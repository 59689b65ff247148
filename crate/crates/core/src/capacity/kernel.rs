use crate::error::{arg, Result};
use crate::point::Point;

/// Dimension and exponent of `k_σ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KernelParams {
    pub n: usize,
    pub sigma: f64,
}

impl KernelParams {
    pub fn new(n: usize, sigma: f64) -> Result<Self> {
        if n == 0 {
            return arg("dimension must be positive");
        }
        if !(sigma > 0.0 && sigma.is_finite()) {
            return arg("σ must be positive");
        }
        Ok(KernelParams { n, sigma })
    }
}

/// A kernel value; coincident arguments give `Infinite`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum KernelValue {
    Finite(f64),
    Infinite,
}

impl KernelValue {
    pub fn to_f64(self) -> f64 {
        match self {
            KernelValue::Finite(v) => v,
            KernelValue::Infinite => f64::INFINITY,
        }
    }
}

/// `|ln d|^σ / d^{2n−2}` for `d > 0`.
pub fn kernel_of_distance(d: f64, p: &KernelParams) -> f64 {
    d.ln().abs().powf(p.sigma) / d.powi(2 * p.n as i32 - 2)
}

/// `k_σ(z, ξ)`.
pub fn kernel(z: &Point, xi: &Point, p: &KernelParams) -> Result<KernelValue> {
    let d2 = z.dist_sq(xi)?;
    if d2.is_exact_zero() {
        return Ok(KernelValue::Infinite);
    }
    let d = d2.to_f64().sqrt();
    if d == 0.0 {
        return Ok(KernelValue::Infinite);
    }
    Ok(KernelValue::Finite(kernel_of_distance(d, p)))
}
