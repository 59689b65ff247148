//! The small-denominator functions
//!
//! ```text
//! ω(z, m) = min { |k·z − p| : k ∈ ℕ₀, 1 ≤ |k| ≤ m, p ∈ ℤ }
//! Ω(λ, m) = min { |λ^k − λ_j| : k ∈ ℕⁿ, 2 ≤ |k| ≤ m, 1 ≤ j ≤ n }
//! ```
//!
//! and the plateau structure of `j ↦ ω(z, 2^j)`.
//!
//! For fixed `k`, `|kz − p|² = (Re kz − p)² + (Im kz)²`, so the minimum over
//! `p` is attained at the integer nearest to `Re kz` (halves go to the
//! smaller integer). Only that `p` is evaluated.
//!
//! Evaluation is two-stage. A floating-point pass with a rigorous error
//! margin discards every `k` whose value provably exceeds the running
//! minimum; when `Im z ≠ 0` it also restricts the scan to the slab
//! `|k·Im z| ≤ ω`. Survivors are evaluated exactly (rational points) or in
//! interval arithmetic, escalating precision until the minimiser is isolated.
//! Ties are broken by the total order on `(|k|, k, p)` (resp. `(|k|, k, j)`).

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{arg, Error, ResonanceWitness, Result};
use crate::lattice::{weight_class, IndexMode, MultiIndex};
use crate::point::{Point, PointSource};
use crate::scalar::{Backing, Real, Scalar};

/// Precision schedule for interval-backed points.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrecisionConfig {
    pub start_bits: u32,
    pub max_bits: u32,
}

impl Default for PrecisionConfig {
    fn default() -> Self {
        PrecisionConfig { start_bits: 64, max_bits: 256 }
    }
}

/// The minimising pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// `|k·z − p|`.
    Additive { k: MultiIndex, p: BigInt },
    /// `|λ^k − λ_j|`, `j` 1-based.
    Multiplicative { k: MultiIndex, j: usize },
}

impl Witness {
    pub fn k(&self) -> &MultiIndex {
        match self {
            Witness::Additive { k, .. } | Witness::Multiplicative { k, .. } => k,
        }
    }

    fn tag(&self) -> BigInt {
        match self {
            Witness::Additive { p, .. } => p.clone(),
            Witness::Multiplicative { j, .. } => BigInt::from(*j),
        }
    }

    fn order(&self, other: &Witness) -> Ordering {
        self.k().order_key().cmp(&other.k().order_key()).then_with(|| self.tag().cmp(&other.tag()))
    }

    pub fn to_resonance(&self) -> ResonanceWitness {
        ResonanceWitness { k: self.k().clone(), tag: self.tag().to_i64().unwrap_or(i64::MAX) }
    }
}

/// Value of `ω(z, m)` or `Ω(λ, m)` with its witness.
#[derive(Clone, Debug)]
pub struct OmegaRecord {
    pub m: i64,
    /// The minimum.
    pub value: Real,
    /// Its square (exact for exact points).
    pub value_sq: Real,
    pub witness: Witness,
    pub resonant: bool,
    pub backing: Backing,
    /// Working precision of the final evaluation (0 when exact).
    pub bits: u32,
    /// Contenders that could not be separated from the witness at the
    /// precision ceiling.
    pub unresolved_ties: usize,
}

impl OmegaRecord {
    pub fn value_f64(&self) -> f64 {
        self.value.to_f64()
    }

    /// Certain `f64` bounds on the value.
    pub fn value_bounds(&self) -> (f64, f64) {
        match &self.value {
            Real::Exact(q) => {
                let x = q.to_f64().unwrap_or(f64::NAN);
                (crate::interval::next_down(x).max(0.0), crate::interval::next_up(x))
            }
            Real::Approx(iv) => {
                let (a, b) = iv.f64_bounds();
                (a.max(0.0), b)
            }
        }
    }
}

/// `|k·z − p|²` and its square root for the given witness.
pub fn additive_value(z: &Point, k: &MultiIndex, p: &BigInt) -> Result<(Real, Real)> {
    let d = k.dot(z)?.sub(&Scalar::real(Real::from_big(p)));
    let sq = d.norm_sqr();
    Ok((sq.clone(), sqrt_of(&d, &sq)))
}

/// `|λ^k − λ_j|²` and its square root.
pub fn multiplicative_value(lambda: &Point, k: &MultiIndex, j: usize) -> Result<(Real, Real)> {
    if lambda.dim() != k.dim() {
        return Err(Error::DimensionMismatch { expected: k.dim(), found: lambda.dim() });
    }
    let d = power(lambda, k).sub(&lambda.coords()[j - 1]);
    let sq = d.norm_sqr();
    Ok((sq.clone(), sqrt_of(&d, &sq)))
}

fn power(lambda: &Point, k: &MultiIndex) -> Scalar {
    let mut acc = Scalar::from_int(1);
    for (c, &e) in lambda.coords().iter().zip(k.coords()) {
        if e > 0 {
            acc = acc.mul(&c.pow(e as u64));
        }
    }
    acc
}

fn sqrt_of(d: &Scalar, sq: &Real) -> Real {
    if d.im.is_exact_zero() {
        return d.re.abs();
    }
    if d.re.is_exact_zero() {
        return d.im.abs();
    }
    let bits = match sq {
        Real::Approx(iv) => iv.bits(),
        Real::Exact(_) => 128,
    };
    let iv = sq.to_interval(bits);
    Real::Approx(iv.sqrt().expect("non-negative square"))
}

#[derive(Clone, Debug)]
struct Candidate {
    k: Vec<i64>,
    lower: f64,
    upper: f64,
}

/// Floating-point image of a point with per-coordinate error bounds.
struct FloatPoint {
    z: Vec<Complex64>,
    err: Vec<f64>,
}

const ROUND: f64 = 4.0 * f64::EPSILON;

impl FloatPoint {
    fn new(p: &Point) -> Self {
        let z = p.to_c64();
        let err = p.coords().iter().map(|c| c.c64_error() * 1.01 + f64::MIN_POSITIVE).collect();
        FloatPoint { z, err }
    }

    /// Lower and upper bounds of `min_p |k·z − p|`.
    fn additive_bounds(&self, k: &[i64]) -> (f64, f64) {
        let n = k.len() as f64;
        let (mut re, mut im, mut err) = (0.0f64, 0.0f64, 0.0f64);
        for ((&ki, zi), ei) in k.iter().zip(&self.z).zip(&self.err) {
            let kf = ki as f64;
            re += kf * zi.re;
            im += kf * zi.im;
            err += kf.abs() * (ei + (n + 2.0) * ROUND * (zi.re.abs() + zi.im.abs()));
        }
        let dre = (re - re.round()).abs();
        let lo_re = (dre - err).max(0.0);
        let lo_im = (im.abs() - err).max(0.0);
        let lower = lo_re.hypot(lo_im) * (1.0 - ROUND);
        let upper = (dre + err).hypot(im.abs() + err) * (1.0 + ROUND) + f64::MIN_POSITIVE;
        (lower, upper)
    }
}

/// Shells `(2^{s−1}, 2^s] ∩ (from, to]`.
fn shells(from: i64, to: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    let mut lo = from + 1;
    while lo <= to {
        let mut hi = 1i64;
        while hi < lo {
            hi *= 2;
        }
        let hi = hi.min(to);
        out.push((lo, hi));
        lo = hi + 1;
    }
    out
}

/// Scans all `k ∈ ℕ₀` with `lo_w ≤ |k| ≤ hi_w` and keeps those whose lower
/// bound does not exceed `bound`.
fn scan_additive(fp: &FloatPoint, lo_w: i64, hi_w: i64, bound: f64) -> Vec<Candidate> {
    let n = fp.z.len();
    // slab |k·y| ≤ bound, pivoting on the largest |y_c|
    let (c, yc) = fp
        .z
        .iter()
        .enumerate()
        .map(|(i, z)| (i, z.im))
        .fold((0, 0.0f64), |acc, (i, y)| if y.abs() > acc.1.abs() { (i, y) } else { acc });
    let max_k = (hi_w + 2) as f64;
    let slab_margin: f64 = fp
        .z
        .iter()
        .zip(&fp.err)
        .map(|(z, e)| max_k * (e + (n as f64 + 2.0) * ROUND * (z.re.abs() + z.im.abs())))
        .sum();
    let slab = if bound.is_finite() && yc != 0.0 {
        Some(bound * (1.0 + 1e-9) + slab_margin * 2.0 + f64::MIN_POSITIVE)
    } else {
        None
    };
    let others: Vec<usize> = (0..n).filter(|&i| i != c).collect();

    let visit = |prefix: &[i64], out: &mut Vec<Candidate>| {
        // `prefix` holds the non-pivot coordinates
        let s: i64 = prefix.iter().sum();
        let has_neg = prefix.iter().any(|&v| v == -1);
        let min_piv = if has_neg || n == 1 { 0 } else { -1 };
        let mut lo = (lo_w - s).max(min_piv);
        let mut hi = hi_w - s;
        if let Some(b) = slab {
            let sy: f64 = others.iter().zip(prefix).map(|(&i, &v)| v as f64 * fp.z[i].im).sum();
            let (a1, a2) = ((-b - sy) / yc, (b - sy) / yc);
            let (a1, a2) = if a1 <= a2 { (a1, a2) } else { (a2, a1) };
            lo = lo.max(a1.floor() as i64 - 1);
            hi = hi.min(a2.ceil() as i64 + 1);
        }
        let mut k = vec![0i64; n];
        for (&i, &v) in others.iter().zip(prefix) {
            k[i] = v;
        }
        for v in lo..=hi {
            k[c] = v;
            let (lower, upper) = fp.additive_bounds(&k);
            if lower <= bound {
                out.push(Candidate { k: k.clone(), lower, upper });
            }
        }
    };

    if others.is_empty() {
        let mut out = Vec::new();
        visit(&[], &mut out);
        return out;
    }
    // non-pivot coordinates range over [-1, hi_w + 1]; parallel over the first
    let firsts: Vec<i64> = (-1..=hi_w + 1).collect();
    let m = others.len();
    firsts
        .par_iter()
        .map(|&f| {
            let mut out = Vec::new();
            let mut prefix = vec![f];
            rec_prefix(&mut prefix, m, hi_w, &visit, &mut out);
            out
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

fn rec_prefix(
    prefix: &mut Vec<i64>,
    m: usize,
    hi_w: i64,
    visit: &(impl Fn(&[i64], &mut Vec<Candidate>) + Sync),
    out: &mut Vec<Candidate>,
) {
    let s: i64 = prefix.iter().sum();
    let negs = prefix.iter().filter(|&&v| v == -1).count();
    if negs > 1 {
        return;
    }
    // the remaining coordinates (pivot included) can lower the weight by at most 1
    let min_rest = if negs == 0 { -1 } else { 0 };
    if s + min_rest > hi_w {
        return;
    }
    if prefix.len() == m {
        visit(prefix, out);
        return;
    }
    let lo = if negs == 0 { -1 } else { 0 };
    for v in lo..=hi_w + 2 - s {
        prefix.push(v);
        rec_prefix(prefix, m, hi_w, visit, out);
        prefix.pop();
    }
}

/// Floating bounds for `|λ^k − λ_j|` over `j`, with per-`j` detail.
struct FloatLambda {
    pows: Vec<Vec<Complex64>>,
    pow_rel: Vec<Vec<f64>>,
    lam: Vec<Complex64>,
    err: Vec<f64>,
}

impl FloatLambda {
    fn new(p: &Point, m: i64) -> Self {
        let lam = p.to_c64();
        let err: Vec<f64> = p.coords().iter().map(|c| c.c64_error() * 1.01 + f64::MIN_POSITIVE).collect();
        let mut pows = Vec::new();
        let mut pow_rel = Vec::new();
        for (l, e) in lam.iter().zip(&err) {
            let rel_in = if l.norm() > 0.0 { e / l.norm() } else { f64::INFINITY };
            let mut pw = vec![Complex64::new(1.0, 0.0)];
            let mut rel = vec![0.0];
            for e in 1..=m {
                pw.push(pw[(e - 1) as usize] * l);
                // (1 + rel_in + 4u)^e − 1, inflated
                let r = ((e as f64) * (rel_in + ROUND).ln_1p()).exp_m1() * 1.01;
                rel.push(if r.is_finite() { r } else { f64::INFINITY });
            }
            pows.push(pw);
            pow_rel.push(rel);
        }
        FloatLambda { pows, pow_rel, lam, err }
    }

    fn bounds(&self, k: &[i64]) -> Vec<(usize, f64, f64)> {
        let mut v = Complex64::new(1.0, 0.0);
        let mut rel = 0.0;
        for (i, &e) in k.iter().enumerate() {
            v *= self.pows[i][e as usize];
            rel += self.pow_rel[i][e as usize] + ROUND;
        }
        let n = k.len() as f64;
        let abs_err = v.norm() * rel * (1.0 + n * ROUND) * 1.01;
        (0..self.lam.len())
            .map(|j| {
                let d = (v - self.lam[j]).norm();
                let err = abs_err + self.err[j] + 2.0 * ROUND * (v.norm() + self.lam[j].norm());
                if !d.is_finite() || !err.is_finite() {
                    let lower = if v.norm().is_infinite() { f64::MAX } else { 0.0 };
                    (j + 1, lower, f64::INFINITY)
                } else {
                    (j + 1, ((d - err) * (1.0 - ROUND)).max(0.0), (d + err) * (1.0 + ROUND))
                }
            })
            .collect()
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Additive,
    Multiplicative,
}

struct Evaluated {
    witness: Witness,
    sq: Real,
    value: Real,
}

fn evaluate(kind: Kind, z: &Point, keys: &[(Vec<i64>, usize)]) -> Result<Vec<Evaluated>> {
    let per: Vec<Result<Vec<Evaluated>>> = keys
        .par_iter()
        .map(|(k, j)| {
            let k = MultiIndex::new(k.clone());
            match kind {
                Kind::Additive => {
                    let kz = k.dot(z)?;
                    kz.re
                        .nearest_integers()
                        .into_iter()
                        .map(|p| {
                            let (sq, value) = additive_value(z, &k, &p)?;
                            Ok(Evaluated { witness: Witness::Additive { k: k.clone(), p }, sq, value })
                        })
                        .collect()
                }
                Kind::Multiplicative => {
                    let (sq, value) = multiplicative_value(z, &k, *j)?;
                    Ok(vec![Evaluated { witness: Witness::Multiplicative { k, j: *j }, sq, value }])
                }
            }
        })
        .collect();
    let mut out = Vec::new();
    for r in per {
        out.extend(r?);
    }
    Ok(out)
}

/// Picks the certified minimum among `keys`, escalating precision.
fn certify(
    kind: Kind,
    src: &dyn PointSource,
    m: i64,
    keys: Vec<(Vec<i64>, usize)>,
    cfg: &PrecisionConfig,
) -> Result<OmegaRecord> {
    let mut bits = cfg.start_bits;
    let mut keys = keys;
    loop {
        let z = src.at_bits(bits);
        let evals = evaluate(kind, &z, &keys)?;
        if evals.is_empty() {
            return arg("no admissible index");
        }
        // minimal upper bound, then everything that may reach it
        let min_hi = evals.iter().map(|e| e.sq.upper()).min().expect("non-empty");
        let mut contenders: Vec<&Evaluated> = evals.iter().filter(|e| e.sq.lower() <= min_hi).collect();
        contenders.sort_by(|a, b| a.witness.order(&b.witness));
        let all_exact = contenders.iter().all(|e| e.sq.backing() == Backing::Exact);
        let at_ceiling = bits >= cfg.max_bits || src.is_exact();

        let pick = if all_exact {
            // exact minimum, then the smallest witness
            let best = contenders.iter().map(|e| e.sq.lower()).min().expect("non-empty");
            contenders.iter().find(|e| e.sq.lower() == best).copied()
        } else if contenders.len() == 1 && !contenders[0].sq.possibly_zero() {
            Some(contenders[0])
        } else if at_ceiling {
            let w = contenders[0];
            if w.sq.possibly_zero() {
                return Err(Error::PrecisionExhausted {
                    bits,
                    what: format!("cannot decide whether the value at {:?} vanishes", w.witness),
                });
            }
            Some(w)
        } else {
            None
        };

        if let Some(w) = pick {
            let ties = if all_exact { 0 } else { contenders.len() - 1 };
            return Ok(OmegaRecord {
                m,
                value: w.value.clone(),
                value_sq: w.sq.clone(),
                witness: w.witness.clone(),
                resonant: w.sq.is_exact_zero(),
                backing: w.sq.backing(),
                bits: if w.sq.backing() == Backing::Exact { 0 } else { bits },
                unresolved_ties: ties,
            });
        }
        keys = contenders
            .iter()
            .map(|e| match &e.witness {
                Witness::Additive { k, .. } => (k.coords().to_vec(), 0),
                Witness::Multiplicative { k, j } => (k.coords().to_vec(), *j),
            })
            .collect();
        keys.dedup();
        bits = (bits * 2).min(cfg.max_bits);
    }
}

fn check_source(src: &dyn PointSource) -> Result<()> {
    let n = src.dim();
    if n == 0 || n > crate::lattice::MAX_DIM {
        return arg(format!("dimension must be in 1..={}, got {n}", crate::lattice::MAX_DIM));
    }
    Ok(())
}

/// `ω(z, m)` for each bound in the increasing list `ms`.
pub fn omega_profile(src: &dyn PointSource, ms: &[i64], cfg: &PrecisionConfig) -> Result<Vec<OmegaRecord>> {
    check_source(src)?;
    if ms.is_empty() || ms[0] < 1 || ms.windows(2).any(|w| w[0] >= w[1]) {
        return arg("weight bounds must be positive and strictly increasing");
    }
    let fp = FloatPoint::new(&src.at_bits(cfg.start_bits));
    let mut pool: Vec<Candidate> = Vec::new();
    let mut bound = f64::INFINITY;
    let mut done = 0i64;
    let mut out = Vec::with_capacity(ms.len());
    for &m in ms {
        for (lo, hi) in shells(done, m) {
            let fresh = scan_additive(&fp, lo, hi, bound);
            if let Some(u) = fresh.iter().map(|c| c.upper).reduce(f64::min) {
                bound = bound.min(u);
            }
            pool.extend(fresh);
            pool.retain(|c| c.lower <= bound);
        }
        done = m;
        let keys = pool.iter().map(|c| (c.k.clone(), 0)).collect();
        let rec = certify(Kind::Additive, src, m, keys, cfg)?;
        out.push(rec);
    }
    Ok(out)
}

/// `ω(z, m)`.
pub fn omega(src: &dyn PointSource, m: i64, cfg: &PrecisionConfig) -> Result<OmegaRecord> {
    if m < 1 {
        return arg(format!("weight bound must be at least 1, got {m}"));
    }
    Ok(omega_profile(src, &[m], cfg)?.remove(0))
}

/// `Ω(λ, m)` for each bound in the increasing list `ms`.
pub fn capital_omega_profile(
    src: &dyn PointSource,
    ms: &[i64],
    cfg: &PrecisionConfig,
) -> Result<Vec<OmegaRecord>> {
    check_source(src)?;
    if ms.is_empty() || ms[0] < 2 || ms.windows(2).any(|w| w[0] >= w[1]) {
        return arg("weight bounds must be at least 2 and strictly increasing");
    }
    let n = src.dim();
    let fl = FloatLambda::new(&src.at_bits(cfg.start_bits), *ms.last().expect("non-empty"));
    let mut pool: Vec<(Vec<i64>, usize, f64, f64)> = Vec::new();
    let mut bound = f64::INFINITY;
    let mut done = 1i64;
    let mut out = Vec::new();
    for &m in ms {
        let ws: Vec<i64> = (done + 1..=m).collect();
        let prior = bound;
        let fresh: Vec<(Vec<i64>, usize, f64, f64)> = ws
            .par_iter()
            .map(|&w| {
                // keep only what can still reach the running minimum
                let mut local = prior;
                let mut v = Vec::new();
                for k in weight_class(n, w, IndexMode::Nn) {
                    for (j, lo, hi) in fl.bounds(k.coords()) {
                        if lo <= local {
                            local = local.min(hi);
                            v.push((k.coords().to_vec(), j, lo, hi));
                        }
                    }
                }
                v.retain(|c| c.2 <= local);
                v
            })
            .collect::<Vec<_>>()
            .into_iter()
            .flatten()
            .collect();
        if let Some(u) = fresh.iter().map(|c| c.3).reduce(f64::min) {
            bound = bound.min(u);
        }
        pool.extend(fresh.into_iter().filter(|c| c.2 <= bound));
        pool.retain(|c| c.2 <= bound);
        done = m;
        let keys = pool.iter().map(|c| (c.0.clone(), c.1)).collect();
        out.push(certify(Kind::Multiplicative, src, m, keys, cfg)?);
    }
    Ok(out)
}

/// `Ω(λ, m)`.
pub fn capital_omega(src: &dyn PointSource, m: i64, cfg: &PrecisionConfig) -> Result<OmegaRecord> {
    if m < 2 {
        return arg(format!("weight bound must be at least 2, got {m}"));
    }
    Ok(capital_omega_profile(src, &[m], cfg)?.remove(0))
}

/// Breakpoints of `j ↦ ω(z, 2^j)` on `1 ≤ j ≤ J`.
#[derive(Clone, Debug)]
pub struct PlateauSequence {
    /// `j_1 = 1 < j_2 < …`.
    pub entries: Vec<u32>,
    /// `ω(z, 2^{j_m})`, strictly decreasing.
    pub values: Vec<Real>,
    /// `ω(z, 2^j)` for every `1 ≤ j ≤ J`.
    pub profile: Vec<OmegaRecord>,
    /// No decrease was observed up to depth `J`.
    pub no_decrease: bool,
}

impl PlateauSequence {
    /// Last level of the plateau starting at entry `i`.
    pub fn plateau_end(&self, i: usize) -> u32 {
        self.entries.get(i + 1).map(|j| j - 1).unwrap_or(self.profile.len() as u32)
    }
}

/// Levels `1..=depth` as weight bounds `2^j`.
pub fn dyadic_bounds(depth: u32) -> Vec<i64> {
    (1..=depth).map(|j| 1i64 << j).collect()
}

fn strictly_below(new: &OmegaRecord, old: &OmegaRecord) -> bool {
    if new.witness == old.witness {
        return false;
    }
    match new.value_sq.cmp_certain(&old.value_sq) {
        Some(Ordering::Less) => true,
        Some(_) => false,
        // a different witness is only chosen when it is not larger
        None => true,
    }
}

/// Plateau sequence from a precomputed dyadic profile.
pub fn plateaus_from_profile(profile: Vec<OmegaRecord>) -> Result<PlateauSequence> {
    if let Some(r) = profile.iter().find(|r| r.resonant) {
        return Err(Error::Resonant(r.witness.to_resonance()));
    }
    let mut entries = vec![1u32];
    let mut values = vec![profile[0].value.clone()];
    for j in 1..profile.len() {
        if strictly_below(&profile[j], &profile[j - 1]) {
            entries.push(j as u32 + 1);
            values.push(profile[j].value.clone());
        }
    }
    let no_decrease = entries.len() == 1;
    Ok(PlateauSequence { entries, values, profile, no_decrease })
}

/// Plateau sequence of `j ↦ ω(z, 2^j)` up to depth `J`.
pub fn plateau_sequence(src: &dyn PointSource, depth: u32, cfg: &PrecisionConfig) -> Result<PlateauSequence> {
    if depth == 0 {
        return arg("depth must be at least 1");
    }
    if depth > 40 {
        return arg("depth above 40 is not supported");
    }
    plateaus_from_profile(omega_profile(src, &dyadic_bounds(depth), cfg)?)
}

/// Brute-force `ω(z, m)` over `|p − Re kz| ≤ 2` for exact points; used as an
/// independent check.
pub fn omega_brute_force(z: &Point, m: i64) -> Result<(Real, Witness)> {
    let mut best: Option<(Real, Witness)> = None;
    for k in crate::lattice::enumerate_indices(z.dim(), m, IndexMode::N0)? {
        let kz = k.dot(z)?;
        let base = kz.re.floor_exact().unwrap_or_else(BigInt::zero);
        for dp in -2..=2 {
            let p = &base + dp;
            let (sq, _) = additive_value(z, &k, &p)?;
            let better = match &best {
                None => true,
                Some((b, _)) => sq.cmp_certain(b) == Some(Ordering::Less),
            };
            if better {
                best = Some((sq, Witness::Additive { k: k.clone(), p }));
            }
        }
    }
    best.ok_or(Error::Argument("empty index set".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::point::Fixture;
    use num_rational::BigRational;

    fn cfg() -> PrecisionConfig {
        PrecisionConfig::default()
    }

    fn k(v: &[i64]) -> MultiIndex {
        MultiIndex::new(v.to_vec())
    }

    #[test]
    fn rational_hit_is_resonant() {
        let r = omega(&Point::real_ratios(&[(1, 2)]), 2, &cfg()).unwrap();
        assert!(r.resonant);
        assert_eq!(r.witness, Witness::Additive { k: k(&[2]), p: BigInt::from(1) });
    }

    #[test]
    fn imaginary_unit() {
        let r = omega(&Point::new(vec![Scalar::i()]), 3, &cfg()).unwrap();
        assert_eq!(r.value, Real::from_int(1));
        assert_eq!(r.witness, Witness::Additive { k: k(&[1]), p: BigInt::zero() });
        assert!(!r.resonant);
    }

    #[test]
    fn golden_pair() {
        let r = omega(&Fixture::golden(2), 2, &cfg()).unwrap();
        let g = (5f64.sqrt() - 1.0) / 2.0;
        assert!((r.value_f64() - (2.0 * g - 1.0)).abs() < 1e-12);
        // (-1,3), (0,2), (1,1), (2,0), (3,-1) all give 2g; the smallest in (|k|, k, p) order wins
        assert_eq!(r.witness, Witness::Additive { k: k(&[-1, 3]), p: BigInt::from(1) });
        assert_eq!(r.unresolved_ties, 4);
    }

    #[test]
    fn capital_omega_examples() {
        let r = capital_omega(&Point::real_ratios(&[(1, 1), (2, 1)]), 2, &cfg()).unwrap();
        assert!(r.resonant);
        // 1·2 = λ_2 precedes 1² = λ_1 in the witness order
        assert_eq!(r.witness, Witness::Multiplicative { k: k(&[1, 1]), j: 2 });
        let lam = Point::real_ratios(&[(1, 1), (2, 1)]);
        assert!(multiplicative_value(&lam, &k(&[2, 0]), 1).unwrap().0.is_exact_zero());
        let r = capital_omega(&Point::real_ratios(&[(2, 1)]), 4, &cfg()).unwrap();
        assert_eq!(r.value, Real::from_int(2));
        assert_eq!(r.witness, Witness::Multiplicative { k: k(&[2]), j: 1 });
        let r = capital_omega(&Fixture::golden_rotation(1), 8, &cfg()).unwrap();
        assert!(!r.resonant);
        assert!(r.value_bounds().0 > 0.0);
    }

    #[test]
    fn capital_omega_matches_enumeration() {
        // independent evaluation in f64 over all k
        let lam = Fixture::golden_rotation(1);
        let g = (5f64.sqrt() - 1.0) / 2.0;
        let l = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * g);
        let direct = (2..=8).map(|e| (l.powi(e) - l).norm()).fold(f64::INFINITY, f64::min);
        let r = capital_omega(&lam, 8, &cfg()).unwrap();
        assert!((r.value_f64() - direct).abs() < 1e-12);
    }

    #[test]
    fn plateau_examples() {
        let p = plateau_sequence(&Point::new(vec![Scalar::i()]), 6, &cfg()).unwrap();
        assert!(p.no_decrease);
        assert_eq!(p.entries, vec![1]);
        let p = plateau_sequence(&Fixture::golden(1), 8, &cfg()).unwrap();
        // each plateau starts where a Fibonacci denominator enters
        let fib = [1i64, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144, 233];
        for (&j, v) in p.entries.iter().zip(&p.values) {
            let rec = &p.profile[j as usize - 1];
            let kk = rec.witness.k().coords()[0];
            assert!(fib.contains(&kk), "level {j} witness {kk}");
            assert_eq!(v, &rec.value);
        }
        assert!(p.entries.len() >= 5);
        let e = plateau_sequence(&Point::real_ratios(&[(1, 3)]), 2, &cfg()).unwrap_err();
        match e {
            Error::Resonant(w) => {
                assert_eq!(w.k, k(&[3]));
                assert_eq!(w.tag, 1);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn matches_brute_force_on_rationals() {
        let pts = [
            Point::new(vec![
                Scalar::exact(BigRational::new(3.into(), 7.into()), BigRational::new(2.into(), 5.into())),
                Scalar::ratio(13, 31),
            ]),
            Point::real_ratios(&[(17, 101), (-5, 37)]),
            Point::real_ratios(&[(97, 211), (3, 19), (-7, 23)]),
        ];
        for z in &pts {
            for m in [1, 3, 6, 9] {
                let r = omega(z, m, &cfg()).unwrap();
                let (sq, w) = omega_brute_force(z, m).unwrap();
                assert_eq!(r.value_sq, sq, "m={m}");
                assert_eq!(r.witness, w, "m={m}");
            }
        }
    }

    #[test]
    fn shells_cover_range() {
        assert_eq!(shells(0, 9), vec![(1, 1), (2, 2), (3, 4), (5, 8), (9, 9)]);
        assert_eq!(shells(4, 16), vec![(5, 8), (9, 16)]);
    }

    #[test]
    fn slab_pruning_agrees_with_full_scan() {
        let z = Point::new(vec![
            Scalar::exact(BigRational::new(1.into(), 3.into()), BigRational::new(1.into(), 7.into())),
            Scalar::exact(BigRational::new(2.into(), 11.into()), BigRational::new((-3).into(), 13.into())),
        ]);
        let r = omega(&z, 40, &cfg()).unwrap();
        let (sq, w) = omega_brute_force(&z, 40).unwrap();
        assert_eq!(r.value_sq, sq);
        assert_eq!(r.witness, w);
    }
}
