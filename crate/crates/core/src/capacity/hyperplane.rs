//! Complex hyperplanes `Π_{k,p} = {w : k·w = p}`, the measures `μ_{k,p}`
//! they carry, the weighted family `Σ μ_{k,p}/|k|^{n+1+ε/4}` and its potential.

use num_bigint::BigInt;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::geometry::{sphere_fraction_in_ball, unit_ball_volume, unit_sphere_area};
use super::slice::{lemma22_bounds, slice_integral, SliceBoundConstants};
use crate::brjuno::{choose_l, SeriesReport, TrendConfig};
use crate::error::{arg, Error, ResonanceWitness, Result};
use crate::lattice::{weight_class, weight_class_len, IndexMode, MultiIndex};
use crate::point::{Point, Region};
use crate::quadrature::{geometric_breaks, integrate_pieces, QuadConfig};
use crate::reduce::pairwise_sum;
use crate::scalar::Scalar;

fn nonzero(k: &MultiIndex) -> Result<()> {
    if k.is_zero() {
        return Err(Error::ZeroIndex);
    }
    Ok(())
}

/// `z̃ = z + (p − k·z)/‖k‖² · k`, the orthogonal projection of `z` onto `Π_{k,p}`.
pub fn nearest_point(z: &Point, k: &MultiIndex, p: i64) -> Result<Point> {
    nonzero(k)?;
    let kz = k.dot(z)?;
    let norm = BigInt::from(k.norm_sq());
    let t = Scalar::from_int(p).sub(&kz).div_int(&norm).ok_or(Error::ZeroIndex)?;
    let coords = z
        .coords()
        .iter()
        .zip(k.coords())
        .map(|(c, &ki)| if ki == 0 { c.clone() } else { c.add(&t.mul_int(&BigInt::from(ki))) })
        .collect();
    Ok(Point::new(coords))
}

fn pivot_of(k: &MultiIndex) -> usize {
    let mut best = 0;
    for (i, c) in k.coords().iter().enumerate() {
        if c.abs() >= k.coords()[best].abs() {
            best = i;
        }
    }
    best
}

/// The affine map `(w̃′, s) ↦ w` with `w_i = z̃_i + w̃′_i` off the pivot `c`
/// and `w_c = z̃_c + (s − Σ_{i≠c} k_i w̃′_i)/k_c`, so that `k·w = k·z̃ + s`.
///
/// The pivot is the last index of largest `|k_i|`. On `{s = 0}` the map
/// scales `(2n−2)`-dimensional volume by `jacobian() = ‖k‖²/k_c²`.
#[derive(Clone, Debug)]
pub struct Substitution {
    k: MultiIndex,
    base: Point,
    pivot: usize,
}

pub fn substitution(base: &Point, k: &MultiIndex) -> Result<Substitution> {
    nonzero(k)?;
    if base.dim() != k.dim() {
        return Err(Error::DimensionMismatch { expected: k.dim(), found: base.dim() });
    }
    Ok(Substitution { k: k.clone(), base: base.clone(), pivot: pivot_of(k) })
}

impl Substitution {
    /// 0-based pivot coordinate.
    pub fn pivot(&self) -> usize {
        self.pivot
    }

    pub fn jacobian(&self) -> f64 {
        let kc = self.k.coords()[self.pivot] as f64;
        self.k.norm_sq() as f64 / (kc * kc)
    }

    /// Coefficients `a_i = k_i/k_c` for `i ≠ c`, in coordinate order.
    pub fn shear(&self) -> Vec<f64> {
        let kc = self.k.coords()[self.pivot] as f64;
        self.off_pivot().map(|i| self.k.coords()[i] as f64 / kc).collect()
    }

    fn off_pivot(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.k.dim()).filter(move |&i| i != self.pivot)
    }

    pub fn forward(&self, wt: &[Scalar], s: &Scalar) -> Result<Point> {
        let n = self.k.dim();
        if wt.len() + 1 != n {
            return Err(Error::DimensionMismatch { expected: n - 1, found: wt.len() });
        }
        let mut out = self.base.coords().to_vec();
        let mut acc = s.clone();
        for (j, i) in self.off_pivot().enumerate() {
            out[i] = out[i].add(&wt[j]);
            acc = acc.sub(&wt[j].mul_int(&BigInt::from(self.k.coords()[i])));
        }
        let kc = BigInt::from(self.k.coords()[self.pivot]);
        out[self.pivot] = out[self.pivot].add(&acc.div_int(&kc).ok_or(Error::ZeroIndex)?);
        Ok(Point::new(out))
    }

    pub fn inverse(&self, w: &Point) -> Result<(Vec<Scalar>, Scalar)> {
        let d = w.sub(&self.base)?;
        let wt = self.off_pivot().map(|i| d.coords()[i].clone()).collect();
        Ok((wt, self.k.dot(&d)?))
    }

    /// `forward(w̃′, 0)` in floating point.
    pub fn forward_c64(&self, wt: &[Complex64]) -> Vec<Complex64> {
        let mut out = self.base.to_c64();
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, i) in self.off_pivot().enumerate() {
            out[i] += wt[j];
            acc -= wt[j] * self.k.coords()[i] as f64;
        }
        out[self.pivot] += acc / self.k.coords()[self.pivot] as f64;
        out
    }
}

/// Result of sampling `‖w−z‖² / (‖w̃′‖² + |kz−p|²)` over `w ∈ Π_{k,p}`.
#[derive(Clone, Debug)]
pub struct IneqReport {
    pub max_ratio: f64,
    pub holds: bool,
    pub samples: usize,
    /// `1 + Σ a_i²`, an upper bound for the ratio.
    pub shear_bound: f64,
}

fn random_c64(rng: &mut ChaCha8Rng) -> Complex64 {
    let scale = 10f64.powf(rng.gen_range(-6.0..1.0));
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)) * scale
}

fn dist_sq(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum()
}

/// Checks `‖w−z‖² ≤ 4(‖w̃′‖² + |kz−p|²)` on `samples` points of `Π_{k,p}`,
/// starting with `w = z̃`.
pub fn ineq_check(z: &Point, k: &MultiIndex, p: i64, samples: usize, seed: u64) -> Result<IneqReport> {
    let zt = nearest_point(z, k, p)?;
    let sub = substitution(&zt, k)?;
    let zc = z.to_c64();
    let resid = k.dot(z)?.sub(&Scalar::from_int(p)).to_c64().norm_sqr();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_ratio: f64 = 0.0;
    let mut count = 0;
    for i in 0..samples {
        let wt: Vec<Complex64> =
            if i == 0 { vec![Complex64::new(0.0, 0.0); k.dim() - 1] } else { (1..k.dim()).map(|_| random_c64(&mut rng)).collect() };
        let den = wt.iter().map(|c| c.norm_sqr()).sum::<f64>() + resid;
        if den == 0.0 {
            continue;
        }
        let w = sub.forward_c64(&wt);
        max_ratio = max_ratio.max(dist_sq(&w, &zc) / den);
        count += 1;
    }
    let shear_bound = 1.0 + sub.shear().iter().map(|a| a * a).sum::<f64>();
    Ok(IneqReport { max_ratio, holds: max_ratio <= 4.0 * (1.0 + 1e-12), samples: count, shear_bound })
}

/// `(k·c − p)` and `‖k‖` in floating point.
fn offset(center: &[Complex64], k: &MultiIndex, p: i64) -> (Complex64, f64) {
    let kc: Complex64 = k.coords().iter().zip(center).map(|(&ki, c)| c * ki as f64).sum();
    (kc - p as f64, (k.norm_sq() as f64).sqrt())
}

fn slice_dim(n: usize) -> usize {
    2 * n - 2
}

/// Radius of `V̄ ∩ Π_{k,p}` (as a ball in the hyperplane), if nonempty.
fn slice_radius(region: &Region, center: &[Complex64], k: &MultiIndex, p: i64) -> Option<f64> {
    let (off, norm) = offset(center, k, p);
    let d = off.norm() / norm;
    let r = region.radius;
    if d > r || (d == r && region.dim() > 1) {
        return None;
    }
    Some((r * r - d * d).max(0.0).sqrt())
}

/// `Leb_{2n−2}(V̄ ∩ Π_{k,p})` for a ball `V`.
pub fn slice_mass(region: &Region, k: &MultiIndex, p: i64) -> Result<f64> {
    nonzero(k)?;
    if k.dim() != region.dim() {
        return Err(Error::DimensionMismatch { expected: region.dim(), found: k.dim() });
    }
    let c = region.center.to_c64();
    Ok(match slice_radius(region, &c, k, p) {
        None => 0.0,
        Some(rho) => {
            let dd = slice_dim(region.dim());
            unit_ball_volume(dd) * rho.powi(dd as i32)
        }
    })
}

/// `Σ_{1≤|k|≤K} Σ_{|p|≤l(|k|+1)} μ_{k,p}/|k|^{n+1+ε/4}` restricted to `V̄`.
#[derive(Clone, Debug)]
pub struct HyperplaneMeasureFamily {
    pub region: Region,
    pub l: u64,
    pub eps: f64,
    pub k_max: i64,
}

/// Truncated mass of a family with the bound on what the truncation drops.
#[derive(Clone, Debug)]
pub struct FamilyMass {
    /// Weighted mass contributed by each weight `1..=K`.
    pub per_weight: Vec<f64>,
    pub truncated: f64,
    /// `C̃` with weight-`j` mass `≤ C̃ j^{−(1+ε/4)}`.
    pub c_tilde: f64,
    /// `C̃ Σ_{j>K} j^{−(1+ε/4)}`.
    pub tail_bound: f64,
}

/// Builds the family on `V`; with `require_axes_free` the closed ball must
/// avoid `{Π w_j = 0}`.
pub fn measure_family(region: &Region, eps: f64, k_max: i64, require_axes_free: bool) -> Result<HyperplaneMeasureFamily> {
    if !(eps > 0.0 && eps.is_finite()) {
        return arg("ε must be positive");
    }
    if k_max < 1 {
        return arg("weight cutoff must be at least 1");
    }
    if require_axes_free && !region.avoids_axes() {
        let c = region.center.to_c64();
        let j = c.iter().position(|c| c.norm() <= region.radius).unwrap_or(0);
        return Err(Error::AxesSet(j + 1));
    }
    let l = choose_l(region, region.dim())?;
    Ok(HyperplaneMeasureFamily { region: region.clone(), l, eps, k_max })
}

const ZETA_TAIL_CUT: i64 = 1 << 20;

/// Upper bound for `Σ_{j>K} j^{−s}`, `s > 1`.
pub fn zeta_tail(k: i64, s: f64) -> f64 {
    let m = ZETA_TAIL_CUT.max(k + 1);
    let head: Vec<f64> = (k + 1..m).map(|j| (j as f64).powf(-s)).collect();
    pairwise_sum(&head) + ((m - 1) as f64).powf(1.0 - s) / (s - 1.0)
}

impl HyperplaneMeasureFamily {
    pub fn n(&self) -> usize {
        self.region.dim()
    }

    /// `|p|` bound `l(|k|+1)` at weight `w`.
    pub fn p_bound(&self, w: i64) -> i64 {
        self.l as i64 * (w + 1)
    }

    pub fn exponent(&self) -> f64 {
        self.n() as f64 + 1.0 + self.eps / 4.0
    }

    pub fn weight_of(&self, k: &MultiIndex) -> f64 {
        (k.weight() as f64).powf(-self.exponent())
    }

    /// Number of `(k, p)` entries.
    pub fn size(&self) -> u64 {
        (1..=self.k_max).map(|w| weight_class_len(self.n(), w, IndexMode::N0) * (2 * self.p_bound(w) as u64 + 1)).sum()
    }

    /// All entries in order `(|k|, k, p)`.
    pub fn entries(&self) -> impl Iterator<Item = (MultiIndex, i64)> + '_ {
        (1..=self.k_max).flat_map(move |w| {
            let pb = self.p_bound(w);
            weight_class(self.n(), w, IndexMode::N0).into_iter().flat_map(move |k| (-pb..=pb).map(move |p| (k.clone(), p)))
        })
    }

    /// Entries of weight `w` whose hyperplane meets `V̄`, in order.
    pub fn active_at_weight(&self, w: i64) -> Vec<(MultiIndex, i64)> {
        let c = self.region.center.to_c64();
        let r = self.region.radius;
        let pb = self.p_bound(w);
        let mut out = Vec::new();
        for k in weight_class(self.n(), w, IndexMode::N0) {
            let (off, norm) = offset(&c, &k, 0);
            let half = ((r * norm).powi(2) - off.im * off.im).max(0.0).sqrt();
            // one extra integer each side guards against rounding; slice_radius decides
            let lo = ((off.re - half).floor() as i64 - 1).max(-pb);
            let hi = ((off.re + half).ceil() as i64 + 1).min(pb);
            for p in lo..=hi {
                if slice_radius(&self.region, &c, &k, p).is_some() {
                    out.push((k.clone(), p));
                }
            }
        }
        out
    }

    /// Entries whose hyperplane meets `V̄`.
    pub fn active_entries(&self) -> Vec<(MultiIndex, i64)> {
        (1..=self.k_max).flat_map(|w| self.active_at_weight(w)).collect()
    }

    /// `C̃ = C · N_1 · (6R + 1)` with `C = vol(B_R^{2n−2})`.
    ///
    /// At weight `j` at most `2R‖k‖ + 1 ≤ 2R(j+2) + 1` values of `p` meet
    /// `V̄`, each with mass `≤ C`, over `N_j` indices; `N_j (2R(j+2)+1)/j^n`
    /// is a product of positive non-increasing factors, maximal at `j = 1`.
    pub fn c_tilde(&self) -> f64 {
        let n = self.n();
        let r = self.region.radius;
        let c = unit_ball_volume(slice_dim(n)) * r.powi(slice_dim(n) as i32);
        c * weight_class_len(n, 1, IndexMode::N0) as f64 * (6.0 * r + 1.0)
    }

    pub fn mass(&self) -> Result<FamilyMass> {
        let per_weight: Vec<f64> = (1..=self.k_max)
            .into_par_iter()
            .map(|w| {
                let terms: Vec<f64> = self
                    .active_at_weight(w)
                    .iter()
                    .map(|(k, p)| slice_mass(&self.region, k, *p).map(|m| m * self.weight_of(k)))
                    .collect::<Result<_>>()?;
                Ok(pairwise_sum(&terms))
            })
            .collect::<Result<_>>()?;
        let c_tilde = self.c_tilde();
        let s = 1.0 + self.eps / 4.0;
        Ok(FamilyMass {
            truncated: pairwise_sum(&per_weight),
            per_weight,
            c_tilde,
            tail_bound: c_tilde * zeta_tail(self.k_max, s),
        })
    }
}

/// Quadrature settings for potentials; `resolution` multiplies the density
/// of breakpoints and divides the tolerance.
#[derive(Clone, Copy, Debug)]
pub struct PotentialConfig {
    pub rel_tol: f64,
    pub resolution: u32,
}

impl Default for PotentialConfig {
    fn default() -> Self {
        PotentialConfig { rel_tol: 1e-10, resolution: 1 }
    }
}

/// Geometry of one slice relative to `z`.
#[derive(Clone, Copy, Debug)]
pub struct SliceGeometry {
    /// `dist(z, Π_{k,p}) = |kz−p|/‖k‖`.
    pub h: f64,
    /// `|kz − p|`.
    pub residual: f64,
    /// Distance in `Π` from `z̃` to the slice center.
    pub beta: f64,
    /// Slice radius; `None` when the hyperplane misses `V̄`.
    pub rho: Option<f64>,
    /// `kz = p` holds exactly.
    pub on_plane: bool,
}

pub fn slice_geometry(z: &Point, region: &Region, k: &MultiIndex, p: i64) -> Result<SliceGeometry> {
    nonzero(k)?;
    let resid = k.dot(z)?.sub(&Scalar::from_int(p));
    let on_plane = resid.is_exact_zero();
    if !on_plane && resid.re.possibly_zero() && resid.im.possibly_zero() && resid.backing() != crate::scalar::Backing::Exact {
        return Err(Error::PrecisionExhausted { bits: 0, what: format!("sign of k·z − p at k={k}, p={p}") });
    }
    let c = region.center.to_c64();
    let rho = slice_radius(region, &c, k, p);
    let norm_sq = k.norm_sq() as f64;
    let dz: Vec<Complex64> = c.iter().zip(z.to_c64()).map(|(a, b)| a - b).collect();
    let kd: Complex64 = k.coords().iter().zip(&dz).map(|(&ki, d)| d * ki as f64).sum();
    let beta2 = dz.iter().map(|d| d.norm_sqr()).sum::<f64>() - kd.norm_sqr() / norm_sq;
    let residual = resid.to_c64().norm();
    Ok(SliceGeometry { h: residual / norm_sq.sqrt(), residual, beta: beta2.max(0.0).sqrt(), rho, on_plane })
}

/// `∫_{V̄∩Π_{k,p}} k_σ(w − z) dLeb(w)`, radially about `z̃`; `+∞` when `z`
/// lies in the closed slice.
pub fn slice_term(z: &Point, region: &Region, k: &MultiIndex, p: i64, sigma: f64, cfg: &PotentialConfig) -> Result<f64> {
    let g = slice_geometry(z, region, k, p)?;
    Ok(slice_term_from(&g, region.dim(), sigma, cfg))
}

fn slice_term_from(g: &SliceGeometry, n: usize, sigma: f64, cfg: &PotentialConfig) -> f64 {
    let Some(rho) = g.rho else { return 0.0 };
    let kern = |t2: f64| (0.5 * t2.ln()).abs().powf(sigma) / t2.powi(n as i32 - 1);
    let h = if g.on_plane { 0.0 } else { g.h };
    let dd = slice_dim(n);
    if dd == 0 {
        return if h == 0.0 { f64::INFINITY } else { kern(h * h) };
    }
    let lo = (g.beta - rho).max(0.0);
    let hi = g.beta + rho;
    if h == 0.0 && lo == 0.0 {
        return f64::INFINITY;
    }
    let h2 = h * h;
    let area = unit_sphere_area(dd);
    let f = |r: f64| {
        if r <= 0.0 {
            return 0.0;
        }
        let frac = sphere_fraction_in_ball(dd, r, g.beta, rho);
        if frac == 0.0 {
            return 0.0;
        }
        area * kern(r * r + h2) * r.powi(dd as i32 - 1) * frac
    };
    let res = cfg.resolution.max(1) as f64;
    let mut breaks = vec![lo, hi, (rho - g.beta).abs(), g.beta];
    if h < 1.0 {
        breaks.push((1.0 - h2).sqrt());
    }
    let scale = if h > 0.0 { h } else { lo };
    let start = (scale * 1e-3).max(lo);
    if start > 0.0 && start < hi {
        breaks.extend(geometric_breaks(start, hi, 2f64.powf(1.0 / res)));
    }
    breaks.retain(|b| *b >= lo && *b <= hi);
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();
    let q = QuadConfig { rel_tol: cfg.rel_tol / res, abs_tol: 0.0, max_depth: 50 };
    integrate_pieces(f, &breaks, &q).value
}

/// `U(z) = Σ |k|^{−(n+1+ε/4)} ∫_{V̄} k_σ(w − z) dμ_{k,p}(w)` grouped by
/// weight. Stops at the first weight holding a slice through `z`.
pub fn potential(z: &Point, family: &HyperplaneMeasureFamily, sigma: f64, cfg: &PotentialConfig) -> Result<SeriesReport> {
    let n = family.n();
    if z.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: z.dim() });
    }
    if !(sigma > 0.0) {
        return arg("σ must be positive");
    }
    let mut levels = Vec::new();
    let mut terms = Vec::new();
    let mut witness = None;
    for w in 1..=family.k_max {
        let active = family.active_at_weight(w);
        let vals: Vec<f64> = active
            .par_iter()
            .map(|(k, p)| {
                let g = slice_geometry(z, &family.region, k, *p)?;
                Ok(slice_term_from(&g, n, sigma, cfg) * family.weight_of(k))
            })
            .collect::<Result<_>>()?;
        levels.push(w as u64);
        if let Some(i) = vals.iter().position(|v| v.is_infinite()) {
            terms.push(f64::INFINITY);
            witness = Some(ResonanceWitness { k: active[i].0.clone(), tag: active[i].1 });
            break;
        }
        terms.push(pairwise_sum(&vals));
    }
    let mut rep = SeriesReport::new(levels, terms, z.backing())
        .with_param("n", n as f64)
        .with_param("epsilon", family.eps)
        .with_param("sigma", sigma)
        .with_param("l", family.l as f64)
        .with_param("k_max", family.k_max as f64)
        .with_param("paper_regime", if (sigma - (n as f64 + family.eps)).abs() < 1e-12 { 1.0 } else { 0.0 });
    match witness {
        Some(wt) => rep = rep.resonant(wt),
        None => rep.classify(&TrendConfig::default()),
    }
    Ok(rep)
}

/// The chain `slice term ≥ C₁C₂ I(|kz−p|²) ≥ C₁C₂(A1|log|kz−p|²|^{σ+1} − A2)`
/// evaluated at one hyperplane.
///
/// On `‖w−z̃‖ ≤ η` one has `‖w−z‖² ≤ r² + |kz−p|²`, and the kernel is
/// decreasing below 1, so `C₁ = 2^{−σ}` (from `|log √t| = |log t|/2`) and
/// `C₂ = |S^{2n−3}|` (polar coordinates in the hyperplane).
#[derive(Clone, Debug)]
pub struct LowerBoundChain {
    pub term: f64,
    pub integral: f64,
    pub bound: f64,
    pub c1: f64,
    pub c2: f64,
    pub constants: SliceBoundConstants,
    pub residual: f64,
    pub holds: bool,
}

pub fn lower_bound_chain(
    z: &Point,
    region: &Region,
    k: &MultiIndex,
    p: i64,
    sigma: f64,
    eta: f64,
    cfg: &PotentialConfig,
) -> Result<LowerBoundChain> {
    let n = region.dim();
    if n < 2 {
        return arg("the slice chain needs n ≥ 2");
    }
    let g = slice_geometry(z, region, k, p)?;
    let a = g.residual * g.residual;
    if !(a > 0.0 && a < eta && g.residual < eta) {
        return Err(Error::NotApplicable(format!("|kz−p| = {} outside (0, η)", g.residual)));
    }
    match g.rho {
        Some(rho) if g.beta + eta <= rho => {}
        _ => return Err(Error::NotApplicable("the η-disc about z̃ leaves the slice".into())),
    }
    let constants = lemma22_bounds(n, sigma, eta)?;
    let integral = slice_integral(a, eta, sigma, n, 1e-10)?.value;
    let term = slice_term_from(&g, n, sigma, cfg);
    let c1 = 2f64.powf(-sigma);
    let c2 = unit_sphere_area(slice_dim(n));
    let bound = c1 * c2 * constants.lower(a);
    Ok(LowerBoundChain {
        term,
        integral,
        bound,
        c1,
        c2,
        constants,
        residual: g.residual,
        holds: term >= c1 * c2 * integral * (1.0 - 1e-9) && c1 * c2 * integral >= bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Real;
    use std::f64::consts::PI;

    fn c(re: (i64, i64), im: (i64, i64)) -> Scalar {
        Scalar::new(Real::ratio(re.0, re.1), Real::ratio(im.0, im.1))
    }

    #[test]
    fn nearest_point_examples() {
        let z = Point::real_ratios(&[(0, 1), (0, 1)]);
        let zt = nearest_point(&z, &MultiIndex::new(vec![1, 1]), 1).unwrap();
        assert_eq!(zt, Point::real_ratios(&[(1, 2), (1, 2)]));
        let z = Point::new(vec![Scalar::i(), Scalar::zero()]);
        let zt = nearest_point(&z, &MultiIndex::new(vec![1, 0]), 0).unwrap();
        assert_eq!(zt, Point::real_ratios(&[(0, 1), (0, 1)]));
        assert!(matches!(nearest_point(&z, &MultiIndex::new(vec![0, 0]), 0), Err(Error::ZeroIndex)));
    }

    #[test]
    fn nearest_point_is_minimal() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let z = Point::new((0..3).map(|_| c((rng.gen_range(-50..50), 7), (rng.gen_range(-50..50), 11))).collect());
            let k = MultiIndex::new((0..3).map(|_| rng.gen_range(-1..6)).collect());
            if k.is_zero() {
                continue;
            }
            let p = rng.gen_range(-5..5);
            let zt = nearest_point(&z, &k, p).unwrap();
            assert_eq!(k.dot(&zt).unwrap(), Scalar::from_int(p));
            let d0 = zt.dist_sq(&z).unwrap().to_f64();
            let sub = substitution(&zt, &k).unwrap();
            for _ in 0..100 {
                let wt: Vec<Complex64> = (0..2).map(|_| random_c64(&mut rng)).collect();
                let w = sub.forward_c64(&wt);
                assert!(d0 <= dist_sq(&w, &z.to_c64()) * (1.0 + 1e-12));
            }
        }
    }

    #[test]
    fn substitution_examples() {
        let zt = Point::real_ratios(&[(0, 1), (0, 1)]);
        let s = substitution(&zt, &MultiIndex::new(vec![0, 1])).unwrap();
        assert_eq!(s.pivot(), 1);
        let w = s.forward(&[c((3, 1), (2, 1))], &Scalar::zero()).unwrap();
        assert_eq!(w, Point::new(vec![c((3, 1), (2, 1)), Scalar::zero()]));

        let k = MultiIndex::new(vec![1, 1]);
        let zt = Point::real_ratios(&[(1, 2), (1, 2)]);
        let s = substitution(&zt, &k).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            let wt = c((rng.gen_range(-99..99), 13), (rng.gen_range(-99..99), 17));
            let w = s.forward(&[wt.clone()], &Scalar::zero()).unwrap();
            assert_eq!(k.dot(&w).unwrap(), Scalar::from_int(1));
            let (back, sv) = s.inverse(&w).unwrap();
            assert_eq!(back, vec![wt]);
            assert!(sv.is_exact_zero());
        }

        let k = MultiIndex::new(vec![2, -1, 3]);
        let zt = nearest_point(&Point::real_ratios(&[(1, 3), (1, 5), (1, 7)]), &k, 2).unwrap();
        let s = substitution(&zt, &k).unwrap();
        assert_eq!(s.pivot(), 2);
        for _ in 0..100 {
            let wt: Vec<Scalar> = (0..2).map(|_| c((rng.gen_range(-99..99), 13), (rng.gen_range(-99..99), 17))).collect();
            let w = s.forward(&wt, &Scalar::zero()).unwrap();
            assert_eq!(k.dot(&w).unwrap(), Scalar::from_int(2));
        }
        assert!((s.jacobian() - 14.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn pivot_ties_take_last_index() {
        assert_eq!(pivot_of(&MultiIndex::new(vec![-1, 1])), 1);
        assert_eq!(pivot_of(&MultiIndex::new(vec![2, -1, 0])), 0);
    }

    #[test]
    fn shear_scales_slice_volume() {
        // mass of V̄ ∩ Π counted in w̃′ coordinates, times the Jacobian
        let region = Region::new(Point::real_ratios(&[(1, 5), (1, 10)]), 0.3).unwrap();
        let k = MultiIndex::new(vec![2, -1]);
        let p = 0;
        let zt = nearest_point(&region.center, &k, p).unwrap();
        let s = substitution(&zt, &k).unwrap();
        let cc = region.center.to_c64();
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let (side, trials) = (0.7, 400_000);
        let mut hits = 0u64;
        for _ in 0..trials {
            let wt = [Complex64::new(rng.gen_range(-side..side), rng.gen_range(-side..side))];
            if dist_sq(&s.forward_c64(&wt), &cc) <= region.radius * region.radius {
                hits += 1;
            }
        }
        let mc = (2.0 * side).powi(2) * hits as f64 / trials as f64 * s.jacobian();
        let exact = slice_mass(&region, &k, p).unwrap();
        assert!((mc - exact).abs() < 0.01 * exact, "{mc} vs {exact}");
    }

    #[test]
    fn ineq_examples() {
        let z = Point::new(vec![Scalar::real(Real::ratio(2, 5)), Scalar::real(Real::ratio(7, 20))]);
        let r = ineq_check(&z, &MultiIndex::new(vec![1, 1]), 1, 1000, 3).unwrap();
        assert!(r.holds && r.max_ratio <= r.shear_bound * (1.0 + 1e-12));
        let one = ineq_check(&z, &MultiIndex::new(vec![1, 1]), 1, 1, 3).unwrap();
        assert!((one.max_ratio - 0.5).abs() < 1e-12);
        let r = ineq_check(&z, &MultiIndex::new(vec![-1, 2]), 0, 1000, 4).unwrap();
        assert!(r.holds);
    }

    #[test]
    fn slice_mass_examples() {
        let v = Region::new(Point::zero(2), 0.1).unwrap();
        let m = slice_mass(&v, &MultiIndex::new(vec![1, 0]), 0).unwrap();
        assert!((m - PI / 100.0).abs() < 1e-15);
        assert_eq!(slice_mass(&v, &MultiIndex::new(vec![1, 0]), 5).unwrap(), 0.0);
        let v3 = Region::new(Point::real_ratios(&[(1, 3), (0, 1), (1, 4)]), 0.4).unwrap();
        let cap = PI.powi(2) / 2.0 * 0.4f64.powi(4);
        for k in [vec![1, 1, 0], vec![-1, 0, 2], vec![0, 0, 1]] {
            for p in -2..=2 {
                assert!(slice_mass(&v3, &MultiIndex::new(k.clone()), p).unwrap() <= cap);
            }
        }
    }

    #[test]
    fn family_counts_and_mass() {
        let v = Region::new(Point::real_ratios(&[(3, 1), (3, 1)]), 0.1).unwrap();
        let f = measure_family(&v, 1.0, 20, false).unwrap();
        assert_eq!(f.l, 18);
        let oracle: u64 = (1..=20u64).map(|w| (w + 3) * (2 * 18 * (w + 1) + 1)).sum();
        assert_eq!(f.size(), oracle);
        assert_eq!(f.entries().count() as u64, oracle);
        let m20 = f.mass().unwrap();
        let m40 = measure_family(&v, 1.0, 40, false).unwrap().mass().unwrap();
        assert!(m40.truncated >= m20.truncated);
        assert!(m40.truncated - m20.truncated <= m20.tail_bound);
        assert!(m40.truncated + m40.tail_bound <= m20.truncated + m20.tail_bound);
        for (j, w) in m40.per_weight.iter().enumerate() {
            assert!(*w <= m40.c_tilde * ((j + 1) as f64).powf(-1.25));
        }
    }

    #[test]
    fn family_rejects_axes() {
        let v = Region::new(Point::real_ratios(&[(0, 1), (3, 1)]), 0.1).unwrap();
        assert!(matches!(measure_family(&v, 1.0, 5, true), Err(Error::AxesSet(1))));
        assert!(measure_family(&v, 1.0, 5, false).is_ok());
    }

    #[test]
    fn active_entries_match_brute_force() {
        let v = Region::new(Point::new(vec![c((1, 3), (1, 7)), c((-1, 5), (0, 1))]), 0.35).unwrap();
        let f = measure_family(&v, 1.0, 6, false).unwrap();
        let brute: Vec<_> = f.entries().filter(|(k, p)| slice_mass(&v, k, *p).unwrap() > 0.0).collect();
        assert_eq!(f.active_entries(), brute);
    }

    #[test]
    fn slice_term_flat_disc_closed_form() {
        // n = 2, z̃ at the slice center: π 2^{−σ}(|log h²|^{σ+1} − |log(ρ²+h²)|^{σ+1})/(σ+1)
        let v = Region::new(Point::zero(2), 0.25).unwrap();
        let k = MultiIndex::new(vec![1, 0]);
        let sigma = 3.0;
        for d in [1e-2, 1e-5, 1e-8] {
            let z = Point::from_c64(&[Complex64::new(d, 0.0), Complex64::new(0.0, 0.0)], 64);
            let t = slice_term(&z, &v, &k, 0, sigma, &PotentialConfig::default()).unwrap();
            let rho2 = 0.0625f64;
            let h2 = d * d;
            let cf = PI * 2f64.powf(-sigma) * (h2.ln().abs().powf(4.0) - (rho2 + h2).ln().abs().powf(4.0)) / 4.0;
            assert!((t - cf).abs() < 1e-8 * cf, "d={d}: {t} vs {cf}");
        }
    }

    #[test]
    fn slice_term_offset_disc_matches_cartesian() {
        // slice disc not centered at z̃; compare with a tensor Gauss–Kronrod integral
        let v = Region::new(Point::zero(2), 0.5).unwrap();
        let k = MultiIndex::new(vec![1, 0]);
        let z = Point::from_c64(&[Complex64::new(0.05, 0.0), Complex64::new(0.3, 0.2)], 64);
        let sigma = 2.0;
        let t = slice_term(&z, &v, &k, 0, sigma, &PotentialConfig::default()).unwrap();
        let rho = 0.5f64;
        let h2 = 0.05f64 * 0.05;
        let q = QuadConfig { rel_tol: 1e-10, abs_tol: 0.0, max_depth: 40 };
        let inner = |x: f64| {
            let ymax = (rho * rho - x * x).max(0.0).sqrt();
            integrate_pieces(
                |y| {
                    let t2 = (x - 0.3).powi(2) + (y - 0.2).powi(2) + h2;
                    (0.5 * t2.ln()).abs().powf(sigma) / t2
                },
                &[-ymax, 0.2f64.clamp(-ymax, ymax), ymax],
                &q,
            )
            .value
        };
        let cart = integrate_pieces(inner, &[-rho, 0.3, rho], &q).value;
        assert!((t - cart).abs() < 1e-6 * cart, "{t} vs {cart}");
    }

    #[test]
    fn potential_resolution_and_resonance() {
        let v = Region::new(Point::real_ratios(&[(1, 4), (1, 4)]), 0.2).unwrap();
        let f = measure_family(&v, 1.0, 3, false).unwrap();
        let z = Point::real_ratios(&[(2, 1), (5, 2)]);
        let a = potential(&z, &f, 3.0, &PotentialConfig::default()).unwrap();
        let b = potential(&z, &f, 3.0, &PotentialConfig { resolution: 2, ..Default::default() }).unwrap();
        assert!(a.total().is_finite() && a.total() > 0.0);
        assert!((a.total() - b.total()).abs() < 1e-6 * a.total());

        let v = Region::new(Point::real_ratios(&[(1, 2), (1, 2)]), 0.2).unwrap();
        let f = measure_family(&v, 1.0, 3, false).unwrap();
        let z = Point::real_ratios(&[(1, 2), (1, 2)]);
        let r = potential(&z, &f, 3.0, &PotentialConfig::default()).unwrap();
        assert_eq!(r.status, crate::brjuno::SeriesStatus::Resonant);
        assert!(r.total().is_infinite());
        let w = r.witness.unwrap();
        assert_eq!((w.k.coords(), w.tag), (&[-1i64, 3][..], 1));
        assert!(k_dot_is(&z, &w.k, w.tag));
    }

    fn k_dot_is(z: &Point, k: &MultiIndex, p: i64) -> bool {
        k.dot(z).unwrap() == Scalar::from_int(p)
    }

    #[test]
    fn lower_bound_chain_holds() {
        let v = Region::new(Point::zero(2), 0.25).unwrap();
        let k = MultiIndex::new(vec![1, 0]);
        for e in 2..=8 {
            let d = 10f64.powi(-e);
            let z = Point::from_c64(&[Complex64::new(d, 0.0), Complex64::new(0.0, 0.0)], 64);
            let c = lower_bound_chain(&z, &v, &k, 0, 3.0, 0.1, &PotentialConfig::default()).unwrap();
            assert!(c.holds, "d={d}: {c:?}");
        }
    }
}
