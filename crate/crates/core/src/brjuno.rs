//! Brjuno-type series over the dyadic levels of `ω` and `Ω`, the plateau
//! reduction, the divergent comparison series and its Hölder step.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::diophantine::{
    capital_omega_profile, dyadic_bounds, omega_profile, plateaus_from_profile, OmegaRecord,
    PlateauSequence, PrecisionConfig,
};
use crate::error::{arg, Error, ResonanceWitness, Result};
use crate::lattice::{weight_class, IndexMode, MultiIndex};
use crate::point::{PointSource, Region};
use crate::reduce::{pairwise_sum, prefix_sums};
use crate::scalar::{Backing, Real, Scalar};

/// Heuristic label for a truncated series.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesStatus {
    BoundedTrend,
    GrowingTrend,
    Resonant,
}

impl SeriesStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            SeriesStatus::BoundedTrend => "bounded-trend",
            SeriesStatus::GrowingTrend => "growing-trend",
            SeriesStatus::Resonant => "resonant",
        }
    }
}

/// Trend classification settings.
#[derive(Clone, Copy, Debug)]
pub struct TrendConfig {
    /// Growth per level over the last quarter above which a series is
    /// labelled growing.
    pub slope_threshold: f64,
}

impl Default for TrendConfig {
    fn default() -> Self {
        TrendConfig { slope_threshold: 1e-3 }
    }
}

/// Truncated series with its partial sums.
#[derive(Clone, Debug)]
pub struct SeriesReport {
    /// Level (depth, weight or denominator) of each term.
    pub levels: Vec<u64>,
    /// Clamped terms; `partial_sums` are their running totals.
    pub per_term: Vec<f64>,
    pub partial_sums: Vec<f64>,
    /// Terms before clamping at 0, where clamping applies.
    pub raw_terms: Vec<f64>,
    /// Natural log of each term, when terms may overflow `f64`.
    pub log_terms: Option<Vec<f64>>,
    pub status: SeriesStatus,
    pub witness: Option<ResonanceWitness>,
    pub backing: Backing,
    /// Named parameters (`n`, `epsilon`, `sigma`, `l`, ...).
    pub params: BTreeMap<String, f64>,
}

impl SeriesReport {
    pub fn new(levels: Vec<u64>, per_term: Vec<f64>, backing: Backing) -> Self {
        let partial_sums = prefix_sums(&per_term);
        SeriesReport {
            levels,
            raw_terms: per_term.clone(),
            per_term,
            partial_sums,
            log_terms: None,
            status: SeriesStatus::BoundedTrend,
            witness: None,
            backing,
            params: BTreeMap::new(),
        }
    }

    pub fn with_param(mut self, key: &str, v: f64) -> Self {
        self.params.insert(key.to_string(), v);
        self
    }

    pub fn total(&self) -> f64 {
        self.partial_sums.last().copied().unwrap_or(0.0)
    }

    pub fn depth(&self) -> u64 {
        self.levels.last().copied().unwrap_or(0)
    }

    /// Sets `status` from the partial sums unless resonant.
    pub fn classify(&mut self, cfg: &TrendConfig) {
        if self.status == SeriesStatus::Resonant {
            return;
        }
        self.status = trend(&self.partial_sums, cfg);
    }

    pub(crate) fn resonant(mut self, w: ResonanceWitness) -> Self {
        self.status = SeriesStatus::Resonant;
        self.witness = Some(w);
        self
    }
}

/// Growing when the mean increase per level over the last quarter of the
/// partial sums exceeds the threshold.
pub fn trend(partial: &[f64], cfg: &TrendConfig) -> SeriesStatus {
    if partial.len() < 2 {
        return SeriesStatus::BoundedTrend;
    }
    let last = partial[partial.len() - 1];
    if !last.is_finite() {
        return SeriesStatus::GrowingTrend;
    }
    let span = (partial.len() / 4).max(1);
    let first = partial[partial.len() - 1 - span];
    if (last - first) / span as f64 > cfg.slope_threshold {
        SeriesStatus::GrowingTrend
    } else {
        SeriesStatus::BoundedTrend
    }
}

/// Which small-denominator function drives the series.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    /// `ω(z, 2^j)`, additive.
    Omega,
    /// `Ω(λ, 2^j)`, multiplicative; the point is read as `λ`.
    CapitalOmega,
}

/// `ln(1/ω)` from a record, using the midpoint of interval values.
fn log_inv(rec: &OmegaRecord) -> f64 {
    -rec.value_f64().ln()
}

fn dyadic_profile(src: &dyn PointSource, depth: u32, variant: Variant, cfg: &PrecisionConfig) -> Result<Vec<OmegaRecord>> {
    if depth == 0 {
        return arg("depth must be at least 1");
    }
    if depth > 40 {
        return arg("depth above 40 is not supported");
    }
    let ms = dyadic_bounds(depth);
    match variant {
        Variant::Omega => omega_profile(src, &ms, cfg),
        Variant::CapitalOmega => capital_omega_profile(src, &ms, cfg),
    }
}

fn backing_of(profile: &[OmegaRecord]) -> Backing {
    profile.iter().fold(Backing::Exact, |b, r| b.join(r.backing))
}

/// Series `Σ_j 2^{−j} log(1/ω(z, 2^j))` from a dyadic profile; terms are
/// clamped at 0 and the series stops at the first resonant level.
pub fn brjuno_from_profile(profile: &[OmegaRecord], trend_cfg: &TrendConfig) -> SeriesReport {
    let mut levels = Vec::new();
    let mut terms = Vec::new();
    let mut raw = Vec::new();
    let mut witness = None;
    for (i, rec) in profile.iter().enumerate() {
        let j = i as u32 + 1;
        levels.push(j as u64);
        if rec.resonant {
            terms.push(f64::INFINITY);
            raw.push(f64::INFINITY);
            witness = Some(rec.witness.to_resonance());
            break;
        }
        let t = log_inv(rec) / 2f64.powi(j as i32);
        raw.push(t);
        terms.push(t.max(0.0));
    }
    let mut rep = SeriesReport::new(levels, terms, backing_of(profile));
    rep.raw_terms = raw;
    match witness {
        Some(w) => rep.resonant(w),
        None => {
            rep.classify(trend_cfg);
            rep
        }
    }
}

/// Truncated Brjuno sum to depth `J`.
pub fn brjuno_sum(
    src: &dyn PointSource,
    depth: u32,
    variant: Variant,
    cfg: &PrecisionConfig,
    trend_cfg: &TrendConfig,
) -> Result<SeriesReport> {
    let profile = dyadic_profile(src, depth, variant, cfg)?;
    Ok(brjuno_from_profile(&profile, trend_cfg).with_param("n", src.dim() as f64))
}

/// Series over the plateau entries only: `Σ_m 2^{−j_m} log(1/ω(z, 2^{j_m}))`.
pub fn plateau_from_sequence(seq: &PlateauSequence, trend_cfg: &TrendConfig) -> SeriesReport {
    let mut raw = Vec::new();
    let mut terms = Vec::new();
    for (&j, _) in seq.entries.iter().zip(&seq.values) {
        let t = log_inv(&seq.profile[j as usize - 1]) / 2f64.powi(j as i32);
        raw.push(t);
        terms.push(t.max(0.0));
    }
    let levels = seq.entries.iter().map(|&j| j as u64).collect();
    let mut rep = SeriesReport::new(levels, terms, backing_of(&seq.profile));
    rep.raw_terms = raw;
    rep.classify(trend_cfg);
    rep
}

/// Plateau-restricted Brjuno sum to depth `J`.
pub fn plateau_sum(src: &dyn PointSource, depth: u32, cfg: &PrecisionConfig, trend_cfg: &TrendConfig) -> Result<SeriesReport> {
    let profile = dyadic_profile(src, depth, Variant::Omega, cfg)?;
    let seq = plateaus_from_profile(profile)?;
    Ok(plateau_from_sequence(&seq, trend_cfg).with_param("n", src.dim() as f64))
}

/// Plateau and full sums at every depth.
#[derive(Clone, Debug)]
pub struct SandwichReport {
    pub depths: Vec<u32>,
    pub plateau: Vec<f64>,
    pub full: Vec<f64>,
    pub holds: bool,
}

/// `plateau ≤ full ≤ 2·plateau` at each depth `1..=J`.
///
/// Terms are clamped at 0, so every plateau of length `L` starting at `j_m`
/// contributes at most `2^{−j_m}(1 + … + 2^{−(L−1)}) < 2·2^{−j_m}` times its
/// log, and no trailing correction is needed.
pub fn sandwich(src: &dyn PointSource, depth: u32, cfg: &PrecisionConfig) -> Result<SandwichReport> {
    let profile = dyadic_profile(src, depth, Variant::Omega, cfg)?;
    let seq = plateaus_from_profile(profile)?;
    let full = brjuno_from_profile(&seq.profile, &TrendConfig::default());
    let mut plateau = Vec::new();
    let mut acc = 0.0;
    let mut next = 0;
    for j in 1..=depth {
        if next < seq.entries.len() && seq.entries[next] == j {
            acc += (log_inv(&seq.profile[j as usize - 1]) / 2f64.powi(j as i32)).max(0.0);
            next += 1;
        }
        plateau.push(acc);
    }
    let tol = 1e-12;
    let holds = plateau
        .iter()
        .zip(&full.partial_sums)
        .all(|(&p, &f)| p <= f * (1.0 + tol) + tol && f <= 2.0 * p * (1.0 + tol) + tol);
    Ok(SandwichReport { depths: (1..=depth).collect(), plateau, full: full.partial_sums, holds })
}

/// Outcome of the Hölder estimate on the plateau set.
#[derive(Clone, Debug)]
pub struct HolderReport {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
    /// `(n+1+ε)(1−δ) ≥ n+1+ε/4`.
    pub in_regime: bool,
    pub p: f64,
    pub q: f64,
    pub entries: Vec<u32>,
}

/// Hölder's inequality with exponents `p = n+1+ε`, `q = p/(n+ε)` applied to
/// `2^{−j} L = (2^{−j(1−δ)} L)·2^{−jδ}` over plateau entries with `ω < 1`.
pub fn holder_from_sequence(seq: &PlateauSequence, n: usize, eps: f64, delta: f64) -> Result<HolderReport> {
    if !(eps > 0.0) || !(delta > 0.0 && delta < 1.0) {
        return arg("need ε > 0 and 0 < δ < 1");
    }
    let pts: Vec<(u32, f64)> = seq
        .entries
        .iter()
        .map(|&j| (j, log_inv(&seq.profile[j as usize - 1])))
        .filter(|&(_, l)| l > 0.0)
        .collect();
    if pts.is_empty() {
        return Err(Error::NotApplicable("no plateau with ω < 1".into()));
    }
    let nf = n as f64;
    let p = nf + 1.0 + eps;
    let q = p / (nf + eps);
    let lhs = pairwise_sum(&pts.iter().map(|&(j, l)| 2f64.powf(-(j as f64)) * l).collect::<Vec<_>>());
    let a = pairwise_sum(&pts.iter().map(|&(j, l)| 2f64.powf(-(j as f64) * p * (1.0 - delta)) * l.powf(p)).collect::<Vec<_>>());
    let b = pairwise_sum(&pts.iter().map(|&(j, _)| 2f64.powf(-(j as f64) * delta * q)).collect::<Vec<_>>());
    let rhs = a.powf(1.0 / p) * b.powf(1.0 / q);
    Ok(HolderReport {
        lhs,
        rhs,
        holds: lhs <= rhs * (1.0 + 1e-12),
        in_regime: p * (1.0 - delta) >= nf + 1.0 + eps / 4.0,
        p,
        q,
        entries: pts.iter().map(|&(j, _)| j).collect(),
    })
}

pub fn holder_check(src: &dyn PointSource, depth: u32, eps: f64, delta: f64, cfg: &PrecisionConfig) -> Result<HolderReport> {
    let profile = dyadic_profile(src, depth, Variant::Omega, cfg)?;
    let seq = plateaus_from_profile(profile)?;
    holder_from_sequence(&seq, src.dim(), eps, delta)
}

/// Largest `δ` (rounded down to a multiple of 1/1000) with
/// `(n+1+ε)(1−δ) ≥ n+1+ε/4`.
pub fn max_regime_delta(n: usize, eps: f64) -> f64 {
    let p = n as f64 + 1.0 + eps;
    let d = 1.0 - (n as f64 + 1.0 + eps / 4.0) / p;
    (d * 1000.0).floor() / 1000.0
}

/// Smallest integer `l > 2` with `B(c, r) ⊂ B(0, l/2n)` for the closed ball.
pub fn choose_l(region: &Region, n: usize) -> Result<u64> {
    if n == 0 {
        return arg("dimension must be positive");
    }
    let r = BigRational::from_float(region.radius).ok_or(Error::Argument("radius is not finite".into()))?;
    let c_sq = region.center.norm_sq();
    let two_n = BigRational::from_integer(BigInt::from(2 * n));
    let est = ((region.sup_norm() * 2.0 * n as f64).floor() as i64 - 2).max(3);
    for l in est.. {
        let t = BigRational::from_integer(BigInt::from(l)) / &two_n - &r;
        if !t.is_positive() {
            continue;
        }
        let t_sq = Real::Exact(&t * &t);
        // strict: ‖c‖ + r < l/2n  ⟺  ‖c‖² < (l/2n − r)²
        if c_sq.cmp_certain(&t_sq) == Some(std::cmp::Ordering::Less) {
            return Ok(l as u64);
        }
    }
    unreachable!()
}

/// Whether `‖z‖ < l/2n` certainly holds.
pub fn in_l_ball(z: &dyn PointSource, l: u64) -> bool {
    let p = z.at_bits(96);
    let bound = BigRational::new(BigInt::from(l), BigInt::from(2 * z.dim()));
    let b2 = Real::Exact(&bound * &bound);
    p.norm_sq().cmp_certain(&b2) == Some(std::cmp::Ordering::Less)
}

/// `Σ_{1≤|k|≤K} Σ_{|p|≤l(|k|+1)} |log|kz−p|²|^{n+1+ε} / |k|^{n+1+ε/4}`,
/// grouped by weight.
pub fn divergent_series(src: &dyn PointSource, l: u64, k_max: i64, eps: f64, cfg: &PrecisionConfig) -> Result<SeriesReport> {
    if l <= 2 {
        return arg("l must exceed 2");
    }
    if !(eps > 0.0) {
        return arg("ε must be positive");
    }
    if k_max < 1 {
        return arg("weight cutoff must be at least 1");
    }
    let in_ball = in_l_ball(src, l);
    let n = src.dim();
    let point = src.at_bits(cfg.start_bits);
    let zf = point.to_c64();
    let zerr = point.c64_error();
    let a_exp = n as f64 + 1.0 + eps;
    let b_exp = n as f64 + 1.0 + eps / 4.0;
    let ws: Vec<i64> = (1..=k_max).collect();

    let per_weight: Vec<(f64, Option<(MultiIndex, BigInt)>)> = ws
        .par_iter()
        .map(|&w| {
            let pr = (l as i64) * (w + 1);
            let mut terms = Vec::new();
            let mut hit = None;
            for k in weight_class(n, w, IndexMode::N0) {
                let (re, im) = k
                    .coords()
                    .iter()
                    .zip(&zf)
                    .fold((0.0, 0.0), |(a, b), (&ki, z)| (a + ki as f64 * z.re, b + ki as f64 * z.im));
                let kabs: f64 = k.coords().iter().map(|&c| c.abs() as f64).sum();
                let err = kabs * (zerr + 8.0 * f64::EPSILON * (1.0 + re.abs() + im.abs()));
                let denom = (w as f64).powf(b_exp);
                for p in -pr..=pr {
                    let d2 = (re - p as f64).powi(2) + im * im;
                    if d2.sqrt() <= err + 1e-9 && hit.is_none() && exact_zero(src, &k, p, cfg) {
                        hit = Some((k.clone(), BigInt::from(p)));
                    }
                    terms.push(d2.ln().abs().powf(a_exp) / denom);
                }
            }
            (pairwise_sum(&terms), hit)
        })
        .collect();

    let mut levels = Vec::new();
    let mut vals = Vec::new();
    for (w, (v, hit)) in ws.iter().zip(per_weight) {
        levels.push(*w as u64);
        if let Some((k, p)) = hit {
            vals.push(f64::INFINITY);
            let rep = SeriesReport::new(levels, vals, point.backing())
                .with_param("l", l as f64)
                .with_param("epsilon", eps)
                .with_param("n", n as f64)
                .with_param("in_l_ball", in_ball as u8 as f64);
            return Ok(rep.resonant(ResonanceWitness { k, tag: p.to_i64().unwrap_or(i64::MAX) }));
        }
        vals.push(v);
    }
    let mut rep = SeriesReport::new(levels, vals, point.backing())
        .with_param("l", l as f64)
        .with_param("epsilon", eps)
        .with_param("n", n as f64)
        .with_param("in_l_ball", in_ball as u8 as f64);
    rep.classify(&TrendConfig::default());
    Ok(rep)
}

/// Whether `k·z = p` exactly (interval points escalate and then answer
/// `false` unless the enclosure pins zero exactly).
fn exact_zero(src: &dyn PointSource, k: &MultiIndex, p: i64, cfg: &PrecisionConfig) -> bool {
    let mut bits = cfg.start_bits;
    loop {
        let z = src.at_bits(bits);
        let d = k.dot(&z).expect("dimension checked").sub(&Scalar::from_int(p));
        let sq = d.norm_sqr();
        if sq.is_exact_zero() {
            return true;
        }
        if !sq.possibly_zero() || bits >= cfg.max_bits || src.is_exact() {
            return false;
        }
        bits = (bits * 2).min(cfg.max_bits);
    }
}

/// `Σ_m 2^{−j_m(n+1+ε/4)} |log ω(z, 2^{j_m})²|^{n+1+ε}` over the plateau
/// entries with `ω < 1`, each term bounded above by the divergent series'
/// term at the plateau witness.
pub fn plateau_lower_bound(seq: &PlateauSequence, n: usize, eps: f64) -> Vec<(u32, f64)> {
    let a = n as f64 + 1.0 + eps;
    let b = n as f64 + 1.0 + eps / 4.0;
    seq.entries
        .iter()
        .filter_map(|&j| {
            let w = seq.profile[j as usize - 1].value_f64();
            (w < 1.0).then(|| (j, 2f64.powf(-(j as f64) * b) * (2.0 * w.ln()).abs().powf(a)))
        })
        .collect()
}

/// Result of the `|p| > l(|k|+1) ⇒ |kz − p| ≥ 1` sampling.
#[derive(Clone, Debug)]
pub struct PRangeReport {
    pub holds: bool,
    pub samples: usize,
    pub min_value: f64,
    pub counterexample: Option<(MultiIndex, i64)>,
    /// Whether `z ∈ B(0, l/2n)`; outside it the bound is not guaranteed.
    pub in_l_ball: bool,
}

/// Samples `k ∈ ℕ₀` with `|k| ≤ 1000` and integers `|p| > l(|k|+1)` and checks
/// `|kz − p| ≥ 1` with certified arithmetic.
pub fn p_range_bound_check(src: &dyn PointSource, l: u64, samples: usize, seed: u64, cfg: &PrecisionConfig) -> Result<PRangeReport> {
    if l == 0 {
        return arg("l must be positive");
    }
    let in_ball = in_l_ball(src, l);
    let n = src.dim();
    let z = src.at_bits(cfg.start_bits);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let one = Real::from_int(1);
    let mut min_value = f64::INFINITY;
    for _ in 0..samples {
        let k = random_n0(&mut rng, n, 1000);
        let bound = l as i64 * (k.weight() + 1);
        let off: i64 = if rng.gen_bool(0.7) { rng.gen_range(1..=3) } else { rng.gen_range(1..=10 * bound.max(1)) };
        let p = if rng.gen_bool(0.5) { bound + off } else { -(bound + off) };
        let d = k.dot(&z)?.sub(&Scalar::from_int(p));
        let sq = d.norm_sqr();
        min_value = min_value.min(sq.to_f64().sqrt());
        if sq.lower() < one.lower() {
            return Ok(PRangeReport { holds: false, samples, min_value, counterexample: Some((k, p)), in_l_ball: in_ball });
        }
    }
    Ok(PRangeReport { holds: true, samples, min_value, counterexample: None, in_l_ball: in_ball })
}

/// Uniformly random weight in `1..=max_w`, then a random member of that
/// weight class.
pub fn random_n0(rng: &mut impl Rng, n: usize, max_w: i64) -> MultiIndex {
    let w = rng.gen_range(1..=max_w);
    loop {
        // random composition of w + 1 into n positive parts, shifted by −1
        // for at most one coordinate
        let neg = if n > 1 && rng.gen_bool(0.3) { Some(rng.gen_range(0..n)) } else { None };
        let total = w + if neg.is_some() { 1 } else { 0 };
        let mut cuts: Vec<i64> = (0..n - 1).map(|_| rng.gen_range(0..=total)).collect();
        cuts.sort_unstable();
        let mut coords = Vec::with_capacity(n);
        let mut prev = 0;
        for c in cuts.iter().chain(std::iter::once(&total)) {
            coords.push(c - prev);
            prev = *c;
        }
        if let Some(j) = neg {
            if coords[j] != 0 {
                continue;
            }
            coords[j] = -1;
        }
        let k = MultiIndex::new(coords);
        debug_assert!(k.in_n0() && k.weight() == w);
        return k;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::point::{Fixture, Point};

    fn cfg() -> PrecisionConfig {
        PrecisionConfig::default()
    }

    #[test]
    fn imaginary_unit_has_zero_terms() {
        let r = brjuno_sum(&Point::new(vec![Scalar::i()]), 10, Variant::Omega, &cfg(), &TrendConfig::default()).unwrap();
        assert!(r.per_term.iter().all(|&t| t == 0.0));
        assert_eq!(r.status, SeriesStatus::BoundedTrend);
        let p = plateau_sum(&Point::new(vec![Scalar::i()]), 10, &cfg(), &TrendConfig::default()).unwrap();
        assert_eq!(p.total(), 0.0);
    }

    #[test]
    fn golden_tail_is_small() {
        let r = brjuno_sum(&Fixture::golden(1), 12, Variant::Omega, &cfg(), &TrendConfig::default()).unwrap();
        let s = &r.partial_sums;
        assert!(s[11] - s[7] < 0.05, "{}", s[11] - s[7]);
        assert!(s.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn half_is_resonant() {
        let r = brjuno_sum(&Point::real_ratios(&[(1, 2)]), 3, Variant::Omega, &cfg(), &TrendConfig::default()).unwrap();
        assert_eq!(r.status, SeriesStatus::Resonant);
        let w = r.witness.unwrap();
        assert_eq!((w.k.coords().to_vec(), w.tag), (vec![2], 1));
    }

    #[test]
    fn sandwich_examples() {
        assert!(sandwich(&Fixture::golden(1), 12, &cfg()).unwrap().holds);
        assert!(sandwich(&Fixture::golden(2), 8, &cfg()).unwrap().holds);
    }

    #[test]
    fn holder_examples() {
        let h = holder_check(&Fixture::golden(1), 12, 1.0, 0.1, &cfg()).unwrap();
        assert!(h.holds && h.in_regime);
        let h = holder_check(&Fixture::golden(2), 8, 0.5, 0.2, &cfg()).unwrap();
        assert!(h.holds);
        let e = holder_check(&Point::new(vec![Scalar::i()]), 6, 1.0, 0.1, &cfg()).unwrap_err();
        assert!(matches!(e, Error::NotApplicable(_)));
    }

    #[test]
    fn regime_delta() {
        for n in 1..=3 {
            for eps in [0.5, 1.0, 2.0] {
                let d = max_regime_delta(n, eps);
                let p = n as f64 + 1.0 + eps;
                assert!(d > 0.0 && p * (1.0 - d) >= n as f64 + 1.0 + eps / 4.0);
            }
        }
    }

    #[test]
    fn choose_l_examples() {
        let r = |c: &[(i64, i64)], rad: f64| Region::new(Point::real_ratios(c), rad).unwrap();
        assert_eq!(choose_l(&r(&[(0, 1), (0, 1)], 1.0), 2).unwrap(), 5);
        assert_eq!(choose_l(&r(&[(0, 1)], 0.1), 1).unwrap(), 3);
        assert_eq!(choose_l(&r(&[(10, 1), (0, 1)], 1.0), 2).unwrap(), 45);
    }

    #[test]
    fn divergent_series_examples() {
        let r = divergent_series(&Point::real_ratios(&[(1, 2)]), 3, 4, 1.0, &cfg()).unwrap();
        assert_eq!(r.status, SeriesStatus::Resonant);
        assert_eq!(r.witness.unwrap().k.coords(), &[2]);

        let g = divergent_series(&Fixture::golden(1), 3, 200, 1.0, &cfg()).unwrap();
        assert!(g.total().is_finite());
        assert!(g.partial_sums.windows(2).all(|w| w[0] <= w[1]));
        // independent reversed-order summation
        let gf = (5f64.sqrt() - 1.0) / 2.0;
        let mut rev = 0.0;
        for k in (1..=200i64).rev() {
            for p in (-(3 * (k + 1))..=3 * (k + 1)).rev() {
                let d = (k as f64 * gf - p as f64).abs();
                rev += (2.0 * d.ln()).abs().powi(3) / (k as f64).powf(2.25);
            }
        }
        assert!((rev - g.total()).abs() <= 1e-9 * rev);

        let nb = divergent_series(&Fixture::non_brjuno(1), 3, 200, 1.0, &cfg()).unwrap();
        assert!(nb.total() > g.total());
    }

    #[test]
    fn divergent_dominates_plateau_bound() {
        for z in [Fixture::golden(1), Fixture::golden(2)] {
            let depth = if z.dim() == 1 { 8 } else { 5 };
            let seq = crate::diophantine::plateau_sequence(&z, depth, &cfg()).unwrap();
            let eps = 1.0;
            let lb: f64 = plateau_lower_bound(&seq, z.dim(), eps).iter().map(|t| t.1).sum();
            let ds = divergent_series(&z, 3, 1 << depth, eps, &cfg()).unwrap();
            assert!(ds.total() >= lb, "{} < {lb}", ds.total());
        }
    }

    #[test]
    fn p_range_examples() {
        let c = cfg();
        assert!(p_range_bound_check(&Fixture::golden(1), 3, 1000, 1, &c).unwrap().holds);
        let z = Point::real_ratios(&[(7, 10), (7, 10)]);
        assert!(p_range_bound_check(&z, 6, 1000, 3, &c).unwrap().holds);
        // ‖(g,g)‖ ≈ 0.874 > 3/4: outside the guaranteed ball, still no violation
        let r = p_range_bound_check(&Fixture::golden(2), 3, 1000, 2, &c).unwrap();
        assert!(r.holds && !r.in_l_ball);
        assert!(p_range_bound_check(&Fixture::golden(1), 3, 10, 3, &c).unwrap().in_l_ball);
    }

    #[test]
    fn random_indices_are_admissible() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 1..=4 {
            for _ in 0..200 {
                let k = random_n0(&mut rng, n, 50);
                assert!(k.in_n0() && (1..=50).contains(&k.weight()));
            }
        }
    }
}
