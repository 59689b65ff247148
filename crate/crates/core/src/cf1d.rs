//! Continued fractions `α = 1/(a_1 + 1/(a_2 + …))` of reals in `(0, 1)`,
//! their convergents `P_j/Q_j`, and the one-dimensional series built from
//! them.
//!
//! Convergents follow `X_{j+1} = a_{j+1} X_j + X_{j−1}` with
//! `(P_0, Q_0) = (0, 1)` and `(P_{−1}, Q_{−1}) = (1, 0)`.
//!
//! Denominators can outgrow any exact representation (the non-Brjuno
//! generator has `Q_5 > 2^{8·10⁸}`), so every level also carries `ln Q_j`
//! and `ln ln Q_j` as floats. Past the exact cutoff only the logarithms are
//! kept. `ln Q_j` may overflow to `+∞` while `ln ln Q_j` stays finite; the
//! per-term series values are then assembled from the structure of the
//! quotient `a_{j+1} = 2^{Q_j}` instead of from `ln Q_{j+1}`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::brjuno::{SeriesReport, TrendConfig};
use crate::error::{arg, Error, ResonanceWitness, Result};
use crate::interval::Interval;
use crate::lattice::MultiIndex;
use crate::point::Number;
use crate::reduce::pairwise_sum;
use crate::scalar::Backing;

/// A partial quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Quotient {
    Exact(BigInt),
    /// `2^{Q_j}` for the given level `j` (1-based).
    TwoPowQ(usize),
}

/// Continued fraction truncated at some depth.
#[derive(Clone, Debug)]
pub struct ContinuedFraction {
    /// `a_1, a_2, …`.
    pub quotients: Vec<Quotient>,
    /// `(P_j, Q_j)` for the levels that are held exactly (a prefix).
    exact: Vec<(BigInt, BigInt)>,
    /// `ln Q_j`, `j ≥ 1`.
    pub log_q: Vec<f64>,
    /// `ln P_j`, `j ≥ 1`.
    pub log_p: Vec<f64>,
    /// `ln ln Q_j` (`−∞` when `Q_j = 1`).
    pub loglog_q: Vec<f64>,
    /// Some levels are held only as logarithms.
    pub log_space: bool,
    /// The expansion ended (rational input).
    pub terminating: bool,
    /// The requested depth was not reached at the precision ceiling.
    pub truncated: bool,
}

/// `ln x` for a positive big integer.
pub fn big_ln(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().expect("finite").ln();
    }
    let shift = bits - 60;
    let top = (x >> shift).to_f64().expect("finite");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

fn log_add_exp(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    if hi == f64::NEG_INFINITY || hi == f64::INFINITY {
        return hi;
    }
    hi + (lo - hi).exp().ln_1p()
}

fn ln_or_neg_inf(x: f64) -> f64 {
    if x <= 0.0 {
        f64::NEG_INFINITY
    } else {
        x.ln()
    }
}

/// Exact levels are kept while `Q_j` has at most this many bits.
pub const DEFAULT_EXACT_BITS: u64 = 64;

impl ContinuedFraction {
    /// Builds convergents for the given quotients, keeping exact values while
    /// `Q_j < 2^exact_bits`.
    pub fn from_quotients(quotients: Vec<Quotient>, terminating: bool, exact_bits: u64) -> Self {
        let mut cf = ContinuedFraction {
            quotients: Vec::new(),
            exact: Vec::new(),
            log_q: Vec::new(),
            log_p: Vec::new(),
            loglog_q: Vec::new(),
            log_space: false,
            terminating,
            truncated: false,
        };
        for a in quotients {
            cf.push(a, exact_bits);
        }
        cf
    }

    /// Exact convergents from positive integer quotients.
    pub fn from_integers(a: &[u64]) -> Self {
        let q = a.iter().map(|&x| Quotient::Exact(BigInt::from(x))).collect();
        ContinuedFraction::from_quotients(q, false, u64::MAX)
    }

    pub fn depth(&self) -> usize {
        self.quotients.len()
    }

    /// `(ln a, ln ln a)` for quotient index `i` (0-based).
    fn ln_quotient(&self, i: usize) -> (f64, f64) {
        match &self.quotients[i] {
            Quotient::Exact(a) => {
                let l = big_ln(a);
                (l, ln_or_neg_inf(l))
            }
            Quotient::TwoPowQ(j) => {
                let lq = self.log_q[j - 1];
                let lnln = lq + std::f64::consts::LN_2.ln();
                (lq.exp() * std::f64::consts::LN_2, lnln)
            }
        }
    }

    fn push(&mut self, a: Quotient, exact_bits: u64) {
        let j = self.quotients.len(); // level being added is j + 1
        let (lq_prev, lq_cur) = (self.lq(j as isize - 1), self.lq(j as isize));
        let (lp_prev, lp_cur) = (self.lp(j as isize - 1), self.lp(j as isize));
        let ll_cur = if j == 0 { f64::NEG_INFINITY } else { self.loglog_q[j - 1] };
        self.quotients.push(a);
        let (ln_a, lnln_a) = self.ln_quotient(j);

        // exact continuation when affordable
        if self.exact.len() == j {
            let a_exact = match &self.quotients[j] {
                Quotient::Exact(a) => Some(a.clone()),
                Quotient::TwoPowQ(i) => {
                    let q = &self.exact[i - 1].1;
                    q.to_u64().filter(|&e| e < exact_bits.min(1 << 20)).map(|e| BigInt::one() << e)
                }
            };
            if let Some(a) = a_exact {
                let (p1, q1) = self.exact_at(j as isize);
                let (p0, q0) = self.exact_at(j as isize - 1);
                let p = &a * &p1 + p0;
                let q = &a * &q1 + q0;
                if q.bits() <= exact_bits {
                    self.log_q.push(big_ln(&q));
                    self.log_p.push(if p.is_zero() { f64::NEG_INFINITY } else { big_ln(&p) });
                    self.loglog_q.push(ln_or_neg_inf(big_ln(&q)));
                    self.exact.push((p, q));
                    return;
                }
            }
        }
        self.log_space = true;
        let lq = log_add_exp(ln_a + lq_cur, lq_prev);
        let lp = log_add_exp(ln_a + lp_cur, lp_prev);
        let llq = if lq.is_finite() {
            ln_or_neg_inf(lq)
        } else {
            // ln Q_{j+1} ≈ ln a + ln Q_j with ln a dominant
            lnln_a + (ll_cur - lnln_a).exp().ln_1p()
        };
        self.log_q.push(lq);
        self.log_p.push(lp);
        self.loglog_q.push(llq);
    }

    fn lq(&self, j: isize) -> f64 {
        match j {
            -1 => f64::NEG_INFINITY,
            0 => 0.0,
            _ => self.log_q[j as usize - 1],
        }
    }

    fn lp(&self, j: isize) -> f64 {
        match j {
            -1 => 0.0,
            0 => f64::NEG_INFINITY,
            _ => self.log_p[j as usize - 1],
        }
    }

    fn exact_at(&self, j: isize) -> (BigInt, BigInt) {
        match j {
            -1 => (BigInt::one(), BigInt::zero()),
            0 => (BigInt::zero(), BigInt::one()),
            _ => self.exact[j as usize - 1].clone(),
        }
    }

    /// Levels available exactly.
    pub fn exact_depth(&self) -> usize {
        self.exact.len()
    }

    /// `(P_j, Q_j)` for the exactly held prefix.
    pub fn exact_prefix(&self) -> &[(BigInt, BigInt)] {
        &self.exact
    }

    /// Exact quotient values, when all are exact.
    pub fn integer_quotients(&self) -> Option<Vec<BigInt>> {
        self.quotients
            .iter()
            .enumerate()
            .map(|(i, q)| match q {
                Quotient::Exact(a) => Some(a.clone()),
                Quotient::TwoPowQ(j) => {
                    let e = self.exact.get(j - 1)?.1.to_u64()?;
                    (e <= 1 << 20).then(|| BigInt::one() << e).filter(|_| i < self.exact.len())
                }
            })
            .collect()
    }

    /// `ln Q_{j+1} / Q_j` for `j ≥ 1`.
    pub fn log_ratio_term(&self, j: usize) -> f64 {
        let lq = self.log_q[j - 1];
        let lq_next = self.log_q[j];
        if lq_next.is_finite() {
            return lq_next * (-lq).exp();
        }
        // ln Q_{j+1} = ln a_{j+1} + ln Q_j + ln(1 + Q_{j−1}/(a Q_j)); the last
        // part divided by Q_j underflows
        let head = match &self.quotients[j] {
            Quotient::TwoPowQ(i) if *i == j => std::f64::consts::LN_2,
            _ => {
                let (ln_a, _) = self.ln_quotient(j);
                ln_a * (-lq).exp()
            }
        };
        let middle = if lq.is_finite() { (self.loglog_q[j - 1] - lq).exp() } else { 0.0 };
        head + middle
    }

    /// `ln( (ln Q_{j+1})^{s} / Q_j^{t} )` for `j ≥ 1`.
    pub fn log_power_ratio(&self, j: usize, s: f64, t: f64) -> f64 {
        let lq = self.log_q[j - 1];
        let llq_next = self.loglog_q[j];
        if llq_next == f64::NEG_INFINITY {
            return f64::NEG_INFINITY;
        }
        if lq.is_finite() {
            return s * llq_next - t * lq;
        }
        match &self.quotients[j] {
            Quotient::TwoPowQ(i) if *i == j => {
                // ln ln Q_{j+1} = ln Q_j + ln ln 2 + ln(1 + ln Q_j / (Q_j ln 2)) → ln Q_j + ln ln 2
                if s > t {
                    f64::INFINITY
                } else if s < t {
                    f64::NEG_INFINITY
                } else {
                    s * std::f64::consts::LN_2.ln()
                }
            }
            _ => f64::NEG_INFINITY,
        }
    }
}

/// Exact convergents `(P_j, Q_j)`.
pub fn convergents(cf: &ContinuedFraction) -> Result<Vec<(BigInt, BigInt)>> {
    if cf.log_space {
        return Err(Error::Unsupported("convergents of a log-space expansion; use log_q/log_p".into()));
    }
    Ok(cf.exact.clone())
}

/// `(ln P_j, ln Q_j)` for every level.
pub fn log_convergents(cf: &ContinuedFraction) -> Vec<(f64, f64)> {
    cf.log_p.iter().copied().zip(cf.log_q.iter().copied()).collect()
}

/// Precision schedule for expansions of irrational inputs.
#[derive(Clone, Copy, Debug)]
pub struct ExpandConfig {
    pub start_bits: u32,
    pub max_bits: u32,
}

impl Default for ExpandConfig {
    fn default() -> Self {
        ExpandConfig { start_bits: 64, max_bits: 8192 }
    }
}

/// Quotients shared by every real in `[lo, hi]`.
fn common_prefix(lo: &BigRational, hi: &BigRational, depth: usize) -> (Vec<BigInt>, bool) {
    let (mut x, mut y) = (lo.clone(), hi.clone());
    let mut out = Vec::new();
    let exact = lo == hi;
    while out.len() < depth {
        if x.is_zero() || y.is_zero() {
            return (out, exact && x.is_zero());
        }
        let (rx, ry) = (x.recip(), y.recip());
        let (ax, ay) = (rx.floor(), ry.floor());
        let (fx, fy) = (&rx - &ax, &ry - &ay);
        if ax != ay {
            break;
        }
        // a rational endpoint ending here leaves the last quotient ambiguous
        if !exact && (fx.is_zero() || fy.is_zero()) {
            break;
        }
        out.push(ax.to_integer());
        x = fx;
        y = fy;
    }
    let terminated = exact && x.is_zero();
    (out, terminated)
}

/// Continued fraction of `α ∈ (0, 1)` to depth `J`.
pub fn cf_expand(alpha: &Number, depth: usize, cfg: &ExpandConfig) -> Result<ContinuedFraction> {
    if depth == 0 {
        return arg("depth must be at least 1");
    }
    if let Some(q) = alpha.exact() {
        if !(q.is_positive() && q < &BigRational::one()) {
            return arg("α must lie in (0, 1)");
        }
        let (a, terminated) = common_prefix(q, q, depth);
        let quot = a.into_iter().map(Quotient::Exact).collect();
        return Ok(ContinuedFraction::from_quotients(quot, terminated, u64::MAX));
    }
    let mut bits = cfg.start_bits;
    loop {
        let iv = alpha.enclose(bits);
        let (lo, hi) = (iv.lower(), iv.upper());
        if !(lo.is_positive() && hi < BigRational::one()) {
            if bits >= cfg.max_bits {
                return arg("α must lie in (0, 1)");
            }
        } else {
            let (a, _) = common_prefix(&lo, &hi, depth);
            if a.len() >= depth || bits >= cfg.max_bits {
                let truncated = a.len() < depth;
                let quot = a.into_iter().map(Quotient::Exact).collect();
                let mut cf = ContinuedFraction::from_quotients(quot, false, u64::MAX);
                cf.truncated = truncated;
                return Ok(cf);
            }
        }
        bits = (bits * 2).min(cfg.max_bits);
    }
}

/// The generator with `a_1 = 1`, `a_{j+1} = 2^{Q_j}`.
///
/// Classical Liouville numbers such as `Σ 10^{−j!}` are Brjuno: their
/// denominators satisfy `ln Q_{j+1} ≪ Q_j`. Forcing `ln Q_{j+1} ≍ Q_j` makes
/// `ln Q_{j+1}/Q_j → ln 2`, so the series diverges linearly.
pub fn non_brjuno_cf(depth: usize) -> Result<ContinuedFraction> {
    non_brjuno_cf_with_cutoff(depth, DEFAULT_EXACT_BITS)
}

pub fn non_brjuno_cf_with_cutoff(depth: usize, exact_bits: u64) -> Result<ContinuedFraction> {
    if depth == 0 {
        return arg("depth must be at least 1");
    }
    let mut q = vec![Quotient::Exact(BigInt::one())];
    for j in 1..depth {
        q.push(Quotient::TwoPowQ(j));
    }
    Ok(ContinuedFraction::from_quotients(q, false, exact_bits))
}

fn check_depth(cf: &ContinuedFraction, depth: usize) -> Result<usize> {
    if depth == 0 {
        return arg("depth must be at least 1");
    }
    // term j needs Q_{j+1}
    let avail = cf.depth().saturating_sub(1);
    if depth > avail && !cf.terminating {
        return arg(format!("depth {depth} needs {} levels, expansion has {}", depth + 1, cf.depth()));
    }
    Ok(avail.min(depth))
}

/// `Σ_{j≤J} ln Q_{j+1} / Q_j`; a terminating expansion contributes zeros past
/// its end.
pub fn brjuno_sum_cf(cf: &ContinuedFraction, depth: usize) -> Result<SeriesReport> {
    let avail = check_depth(cf, depth)?;
    let mut terms: Vec<f64> = (1..=avail).map(|j| cf.log_ratio_term(j)).collect();
    terms.resize(depth, 0.0);
    let backing = if cf.log_space { Backing::Interval } else { Backing::Exact };
    let mut rep = SeriesReport::new((1..=depth as u64).collect(), terms, backing);
    rep.classify(&TrendConfig::default());
    Ok(rep)
}

/// `Σ_{j≤J} (ln Q_{j+1})^{2+ε} / Q_j^{2+ε/4}`, with term logarithms.
pub fn qn_series(cf: &ContinuedFraction, eps: f64, depth: usize) -> Result<SeriesReport> {
    if !(eps > 0.0) {
        return arg("ε must be positive");
    }
    let avail = check_depth(cf, depth)?;
    let (s, t) = (2.0 + eps, 2.0 + eps / 4.0);
    let mut logs: Vec<f64> = (1..=avail).map(|j| cf.log_power_ratio(j, s, t)).collect();
    logs.resize(depth, f64::NEG_INFINITY);
    let terms: Vec<f64> = logs.iter().map(|l| l.exp()).collect();
    let backing = if cf.log_space { Backing::Interval } else { Backing::Exact };
    let mut rep = SeriesReport::new((1..=depth as u64).collect(), terms, backing).with_param("epsilon", eps);
    rep.log_terms = Some(logs);
    rep.classify(&TrendConfig::default());
    Ok(rep)
}

/// `Σ_{q=2}^{q_max} Σ_{p=1}^{q−1} |ln|α − p/q||^{2+ε} / q^{2+ε/4}`, grouped
/// by `q`.
pub fn potential_1d(alpha: &Number, eps: f64, q_max: u64, cfg: &ExpandConfig) -> Result<SeriesReport> {
    if !(eps > 0.0) {
        return arg("ε must be positive");
    }
    if q_max < 2 {
        return arg("q_max must be at least 2");
    }
    let a_iv = alpha.enclose(cfg.start_bits);
    let (lo, hi) = a_iv.f64_bounds();
    if lo < 0.0 || hi > 1.0 {
        return arg("α must lie in [0, 1]");
    }
    let af = a_iv.mid_f64();
    let (s, t) = (2.0 + eps, 2.0 + eps / 4.0);
    let qs: Vec<u64> = (2..=q_max).collect();
    let rows: Vec<(f64, Option<(u64, u64)>)> = qs
        .par_iter()
        .map(|&q| {
            let mut terms = Vec::with_capacity(q as usize);
            for p in 1..q {
                let d = (af - p as f64 / q as f64).abs();
                let ld = if d > 1e-6 {
                    d.ln()
                } else {
                    match certified_log_distance(alpha, p, q, cfg) {
                        Some(l) => l,
                        None => return (f64::INFINITY, Some((p, q))),
                    }
                };
                terms.push(ld.abs().powf(s));
            }
            (pairwise_sum(&terms) / (q as f64).powf(t), None)
        })
        .collect();
    let mut vals = Vec::new();
    let mut levels = Vec::new();
    let backing = if alpha.exact().is_some() { Backing::Exact } else { Backing::Interval };
    for (q, (v, hit)) in qs.iter().zip(rows) {
        levels.push(*q);
        vals.push(v);
        if let Some((p, q)) = hit {
            let mut rep = SeriesReport::new(levels, vals, backing).with_param("epsilon", eps);
            rep.status = crate::brjuno::SeriesStatus::Resonant;
            rep.witness = Some(ResonanceWitness { k: MultiIndex::new(vec![q as i64]), tag: p as i64 });
            return Ok(rep);
        }
    }
    let mut rep = SeriesReport::new(levels, vals, backing).with_param("epsilon", eps);
    rep.classify(&TrendConfig::default());
    Ok(rep)
}

/// `ln|α − p/q|`, or `None` on an exact hit.
fn certified_log_distance(alpha: &Number, p: u64, q: u64, cfg: &ExpandConfig) -> Option<f64> {
    let pq = BigRational::new(BigInt::from(p), BigInt::from(q));
    if let Some(a) = alpha.exact() {
        let d = (a - &pq).abs();
        return if d.is_zero() { None } else { Some(rational_ln(&d)) };
    }
    let mut bits = cfg.start_bits.max(128);
    loop {
        let d = alpha.enclose(bits).sub(&Interval::from_rational(&pq, bits)).abs();
        if !d.contains_zero() {
            let lo = d.lower();
            let hi = d.upper();
            return Some(0.5 * (rational_ln(&lo) + rational_ln(&hi)));
        }
        if bits >= cfg.max_bits {
            // indistinguishable from an exact hit at the ceiling
            return None;
        }
        bits = (bits * 2).min(cfg.max_bits);
    }
}

/// `ln q` for a positive rational.
pub fn rational_ln(q: &BigRational) -> f64 {
    big_ln(q.numer()) - big_ln(q.denom())
}

/// Bounds on `ln|α − P_j/Q_j|` from
/// `1/(Q_j(Q_{j+1}+Q_j)) < |α − P_j/Q_j| < 1/(Q_j Q_{j+1})`.
pub fn convergent_distance_log(cf: &ContinuedFraction, j: usize) -> Result<(f64, f64)> {
    if j == 0 || j >= cf.depth() {
        return arg("level must have a successor in the expansion");
    }
    let lq = cf.log_q[j - 1];
    let lq1 = cf.log_q[j];
    Ok((-lq - log_add_exp(lq1, lq), -lq - lq1))
}

/// Upper bound on `Σ_{q>q0} Σ_{p=1}^{q−1} |ln|α−p/q||^{s}/q^{t}` for `α` with
/// `|α − p/q| ≥ 1/(c q²)` for all `p, q`, where `s = 2+ε`, `t = 2+ε/4`.
///
/// For fixed `q` the two fractions nearest `α` contribute at most
/// `ln(c q²)^s` each; the others sit at distance at least `⌊i/2⌋/q`, and
/// `Σ_{m≥1} ln(q/m)^s ≤ q·Γ(s+1)`. Both parts decrease in `q` beyond `q0`,
/// so the sum is bounded by the integral from `q0`.
pub fn potential_1d_tail_bound(c: f64, eps: f64, q0: f64) -> f64 {
    let (s, t) = (2.0 + eps, 2.0 + eps / 4.0);
    let gamma = gamma_fn(s + 1.0);
    let linear = 2.0 * gamma * q0.powf(2.0 - t) / (t - 2.0);
    // ∫_{q0}^∞ 2 ln(c q²)^s q^{−t} dq with q = e^u
    let u0 = q0.ln();
    let f = |u: f64| 2.0 * (c.ln() + 2.0 * u).powf(s) * ((1.0 - t) * u).exp();
    let span = 800.0 / (t - 1.0);
    let breaks = crate::quadrature::geometric_breaks(1.0, span + 1.0, 1.5);
    let pieces: Vec<f64> = std::iter::once(u0).chain(breaks.iter().map(|b| u0 + b - 1.0)).collect();
    let r = crate::quadrature::integrate_pieces(f, &pieces, &Default::default());
    // inflate for the quadrature error
    linear + r.value * (1.0 + 1e-8) + r.error
}

/// Gamma function (Lanczos, g = 7) for positive arguments.
pub fn gamma_fn(x: f64) -> f64 {
    const G: [f64; 9] = [
        0.999_999_999_999_809_9,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_1,
        -176.615_029_162_140_6,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_572e-6,
        1.505_632_735_149_311_6e-7,
    ];
    if x < 0.5 {
        return std::f64::consts::PI / ((std::f64::consts::PI * x).sin() * gamma_fn(1.0 - x));
    }
    let x = x - 1.0;
    let mut a = G[0];
    let t = x + 7.5;
    for (i, g) in G.iter().enumerate().skip(1) {
        a += g / (x + i as f64);
    }
    (2.0 * std::f64::consts::PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::point::GOLDEN;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn half_terminates() {
        let q = Number::Rational(BigRational::new(1.into(), 2.into()));
        let cf = cf_expand(&q, 5, &ExpandConfig::default()).unwrap();
        assert_eq!(cf.integer_quotients().unwrap(), ints(&[2]));
        assert!(cf.terminating);
        assert_eq!(convergents(&cf).unwrap(), vec![(BigInt::from(1), BigInt::from(2))]);
        let s = brjuno_sum_cf(&cf, 3).unwrap();
        assert_eq!(s.total(), 0.0);
    }

    #[test]
    fn golden_is_all_ones() {
        let cf = cf_expand(&GOLDEN, 40, &ExpandConfig::default()).unwrap();
        assert!(!cf.truncated);
        assert!(cf.integer_quotients().unwrap().iter().all(|a| a == &BigInt::one()));
    }

    #[test]
    fn pi_minus_three() {
        let cf = cf_expand(&Number::PiMinus3, 4, &ExpandConfig::default()).unwrap();
        assert_eq!(cf.integer_quotients().unwrap(), ints(&[7, 15, 1, 292]));
    }

    #[test]
    fn convergent_recurrence() {
        let cf = ContinuedFraction::from_integers(&[1, 1, 1, 1, 1]);
        let q: Vec<_> = convergents(&cf).unwrap().into_iter().map(|c| c.1).collect();
        assert_eq!(q, ints(&[1, 2, 3, 5, 8]));
        let cf = ContinuedFraction::from_integers(&[7, 15, 1]);
        let c = convergents(&cf).unwrap();
        assert_eq!(c[2], (BigInt::from(16), BigInt::from(113)));
        for w in c.windows(2) {
            let det = &w[1].0 * &w[0].1 - &w[0].0 * &w[1].1;
            assert_eq!(det.abs(), BigInt::one());
        }
    }

    #[test]
    fn non_brjuno_first_levels() {
        let cf = non_brjuno_cf(4).unwrap();
        assert!(!cf.log_space);
        assert_eq!(cf.integer_quotients().unwrap(), vec![BigInt::from(1), BigInt::from(2), BigInt::from(8), BigInt::one() << 25]);
        let q: Vec<_> = convergents(&cf).unwrap().into_iter().map(|c| c.1).collect();
        assert_eq!(q, ints(&[1, 3, 25, 838_860_803]));
    }

    #[test]
    fn non_brjuno_terms_tend_to_ln2() {
        let cf = non_brjuno_cf(21).unwrap();
        assert!(cf.log_space);
        assert!(convergents(&cf).is_err());
        let s = brjuno_sum_cf(&cf, 20).unwrap();
        for (j, t) in s.per_term.iter().enumerate().skip(2) {
            assert!(*t >= 0.5, "level {}: {t}", j + 1);
        }
        assert!((s.per_term[7] - std::f64::consts::LN_2).abs() < 1e-3);
    }

    #[test]
    fn log_space_agrees_with_exact() {
        let a: Vec<u64> = vec![3, 1, 4, 1, 5, 9, 2, 6, 5, 3, 5, 8, 9, 7];
        let exact = ContinuedFraction::from_integers(&a);
        let q = a.iter().map(|&x| Quotient::Exact(BigInt::from(x))).collect();
        let logs = ContinuedFraction::from_quotients(q, false, 0);
        assert!(logs.log_space);
        for (x, y) in exact.log_q.iter().zip(&logs.log_q) {
            assert!((x - y).abs() <= 1e-9 * x.abs().max(1.0));
        }
    }

    #[test]
    fn qn_series_split() {
        let g = ContinuedFraction::from_integers(&[1; 21]);
        let s = qn_series(&g, 1.0, 20).unwrap();
        assert!(s.total().is_finite());
        assert!(s.per_term[19] < 1e-6);
        let nb = non_brjuno_cf(11).unwrap();
        let s = qn_series(&nb, 1.0, 10).unwrap();
        let logs = s.log_terms.as_ref().unwrap();
        assert!(logs.windows(2).skip(2).all(|w| w[1] > w[0] || (w[0] == f64::INFINITY && w[1] == f64::INFINITY)));
        assert_eq!(s.total(), f64::INFINITY);
        let half = cf_expand(&Number::Rational(BigRational::new(1.into(), 2.into())), 3, &ExpandConfig::default()).unwrap();
        let s = qn_series(&half, 1.0, 4).unwrap();
        assert_eq!(s.total(), 0.0);
    }

    #[test]
    fn potential_1d_examples() {
        let half = Number::Rational(BigRational::new(1.into(), 2.into()));
        let r = potential_1d(&half, 1.0, 10, &ExpandConfig::default()).unwrap();
        assert_eq!(r.status, crate::brjuno::SeriesStatus::Resonant);
        assert_eq!(r.witness.unwrap().k.coords(), &[2]);
        let a = potential_1d(&GOLDEN, 1.0, 50, &ExpandConfig::default()).unwrap();
        let b = potential_1d(&GOLDEN, 1.0, 100, &ExpandConfig::default()).unwrap();
        assert!(b.total() > a.total());
        let inc = b.total() - a.total();
        assert!(inc <= potential_1d_tail_bound(3.0, 1.0, 50.0));
    }

    #[test]
    fn gamma_values() {
        assert!((gamma_fn(5.0) - 24.0).abs() < 1e-10);
        assert!((gamma_fn(0.5) - std::f64::consts::PI.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn convergent_distance_brackets() {
        let cf = ContinuedFraction::from_integers(&[1; 12]);
        let g = (5f64.sqrt() - 1.0) / 2.0;
        let c = convergents(&cf).unwrap();
        for j in 1..10 {
            let (p, q) = (c[j - 1].0.to_f64().unwrap(), c[j - 1].1.to_f64().unwrap());
            let d = (g - p / q).abs().ln();
            let (lo, hi) = convergent_distance_log(&cf, j).unwrap();
            assert!(lo <= d && d <= hi, "{lo} {d} {hi}");
        }
    }
}
