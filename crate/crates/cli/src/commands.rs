//! One function per subcommand; each fills a [`Report`].

use brjuno_core::brjuno::{
    brjuno_sum, divergent_series, holder_check, max_regime_delta, p_range_bound_check, plateau_sum, sandwich, SeriesReport,
    SeriesStatus, TrendConfig, Variant,
};
use brjuno_core::capacity::energy::ball_energy;
use brjuno_core::capacity::hyperplane::lower_bound_chain;
use brjuno_core::capacity::{
    energy, equivalence_bound_check, equivalence_ratio, lemma22_bounds, measure_family, potential, slice_integral,
    tube_cover_sum, KernelParams, KernelValue, PotentialConfig,
};
use brjuno_core::cf1d::{
    brjuno_sum_cf, cf_expand, convergents, non_brjuno_cf, potential_1d, qn_series, ContinuedFraction, ExpandConfig, Quotient,
    DEFAULT_EXACT_BITS,
};
use brjuno_core::diophantine::{capital_omega, omega, OmegaRecord, PrecisionConfig, Witness};
use brjuno_core::error::ResonanceWitness;
use brjuno_core::scalar::rational_to_string;
use brjuno_core::{MultiIndex, Point, Real, Region};
use clap::ValueEnum;
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde_json::{json, Value};

use crate::args::*;
use crate::parse::{fixture_depth, parse_exact_point, parse_f64_list, parse_index, parse_number, parse_point, PointArg};
use crate::report::{fmt_f64, int, ints, num, nums, text, Report, Table};
use crate::CliError;

type Out = Result<(), CliError>;

fn precision(g: &GlobalArgs) -> PrecisionConfig {
    PrecisionConfig { start_bits: g.precision.min(64), max_bits: g.precision }
}

fn usage(msg: impl Into<String>) -> Out {
    Err(CliError::Usage(msg.into()))
}

pub fn witness_json(w: &Witness) -> Value {
    match w {
        Witness::Additive { k, p } => json!({ "k": ints(k.coords()), "p": int(p) }),
        Witness::Multiplicative { k, j } => json!({ "k": ints(k.coords()), "j": int(j) }),
    }
}

pub fn resonance_json(w: &ResonanceWitness, tag: &str) -> Value {
    json!({ "k": ints(w.k.coords()), tag: int(w.tag) })
}

fn real_text(r: &Real) -> Option<Value> {
    r.as_exact().map(|q| text(rational_to_string(q)))
}

fn point_config(r: &mut Report, a: &PointArgs, pt: &PointArg) {
    r.config("point", text(a.point.trim()));
    r.config("dim", int(pt.dim()));
}

fn series_into(r: &mut Report, s: &SeriesReport, tag: &str) {
    r.result("levels", ints(&s.levels));
    r.result("per_term", nums(&s.per_term));
    r.result("partial_sums", nums(&s.partial_sums));
    r.result("raw_terms", nums(&s.raw_terms));
    if let Some(l) = &s.log_terms {
        r.result("log_terms", nums(l));
    }
    r.result("total", num(s.total()));
    r.result("status", text(s.status.as_str()));
    r.result("backing", text(s.backing.as_str()));
    for (k, v) in &s.params {
        r.constant(k, *v);
    }
    if let Some(w) = &s.witness {
        r.witness(resonance_json(w, tag));
        r.infinite = true;
    }
    if s.status == SeriesStatus::Resonant || s.total().is_infinite() {
        r.infinite = true;
    }
    let mut t = Table::new(&["level", "term", "partial_sum"]);
    for ((l, x), p) in s.levels.iter().zip(&s.per_term).zip(&s.partial_sums) {
        t.push(vec![l.to_string(), fmt_f64(*x), fmt_f64(*p)]);
    }
    r.table = t;
}

pub fn cmd_omega(a: &OmegaArgs, g: &GlobalArgs, r: &mut Report) -> Out {
    let pt = parse_point(&a.point.point, a.point.dim)?;
    point_config(r, &a.point, &pt);
    r.config("m", int(a.m)).config("capital", Value::Bool(a.capital));
    let rec: OmegaRecord =
        if a.capital { capital_omega(pt.source(), a.m, &precision(g))? } else { omega(pt.source(), a.m, &precision(g))? };
    let (lo, hi) = rec.value_bounds();
    r.result("value", num(rec.value_f64()));
    r.result("value_lower", num(lo));
    r.result("value_upper", num(hi));
    r.result("value_sq", num(rec.value_sq.to_f64()));
    if let Some(q) = real_text(&rec.value_sq) {
        r.result("value_sq_exact", q);
    }
    r.result("witness", witness_json(&rec.witness));
    r.result("resonant", Value::Bool(rec.resonant));
    r.result("backing", text(rec.backing.as_str()));
    r.result("bits", int(rec.bits));
    r.result("unresolved_ties", int(rec.unresolved_ties));
    r.witness(witness_json(&rec.witness));
    r.infinite = rec.resonant;
    let mut t = Table::new(&["m", "value", "value_lower", "value_upper", "resonant"]);
    t.push(vec![a.m.to_string(), fmt_f64(rec.value_f64()), fmt_f64(lo), fmt_f64(hi), rec.resonant.to_string()]);
    r.table = t;
    Ok(())
}

pub fn cmd_brjuno(a: &BrjunoArgs, g: &GlobalArgs, r: &mut Report) -> Out {
    let pt = parse_point(&a.point.point, a.point.dim)?;
    point_config(r, &a.point, &pt);
    let mode = a.mode.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
    r.config("mode", text(mode)).config("depth", int(a.depth));
    let n = pt.dim();
    let src = pt.source();
    let cfg = precision(g);
    let trend = TrendConfig { slope_threshold: a.slope_threshold };
    match a.mode {
        BrjunoMode::Sum => {
            let variant = match a.variant {
                VariantArg::Omega => Variant::Omega,
                VariantArg::CapitalOmega => Variant::CapitalOmega,
            };
            r.config("variant", text(if variant == Variant::Omega { "omega" } else { "capital-omega" }));
            r.config("slope_threshold", num(a.slope_threshold));
            let s = brjuno_sum(src, a.depth, variant, &cfg, &trend)?;
            series_into(r, &s, if variant == Variant::Omega { "p" } else { "j" });
        }
        BrjunoMode::Plateau => {
            r.config("slope_threshold", num(a.slope_threshold));
            let s = plateau_sum(src, a.depth, &cfg, &trend)?;
            series_into(r, &s, "p");
        }
        BrjunoMode::Sandwich => {
            let s = sandwich(src, a.depth, &cfg)?;
            r.result("depths", ints(&s.depths));
            r.result("plateau", nums(&s.plateau));
            r.result("full", nums(&s.full));
            r.result("upper", nums(&s.plateau.iter().map(|p| 2.0 * p).collect::<Vec<_>>()));
            r.result("holds", Value::Bool(s.holds));
            let mut t = Table::new(&["depth", "plateau", "full", "upper"]);
            for ((d, p), f) in s.depths.iter().zip(&s.plateau).zip(&s.full) {
                t.push(vec![d.to_string(), fmt_f64(*p), fmt_f64(*f), fmt_f64(2.0 * p)]);
            }
            r.table = t;
        }
        BrjunoMode::Holder => {
            let delta = a.delta.unwrap_or_else(|| max_regime_delta(n, a.epsilon));
            r.config("epsilon", num(a.epsilon)).config("delta", num(delta));
            let h = holder_check(src, a.depth, a.epsilon, delta, &cfg)?;
            r.result("lhs", num(h.lhs));
            r.result("rhs", num(h.rhs));
            r.result("holds", Value::Bool(h.holds));
            r.result("in_regime", Value::Bool(h.in_regime));
            r.result("entries", ints(&h.entries));
            r.constant("p", h.p).constant("q", h.q);
            let mut t = Table::new(&["lhs", "rhs", "holds", "in_regime"]);
            t.push(vec![fmt_f64(h.lhs), fmt_f64(h.rhs), h.holds.to_string(), h.in_regime.to_string()]);
            r.table = t;
        }
        BrjunoMode::Divergent => {
            r.config("epsilon", num(a.epsilon)).config("l", int(a.l)).config("kmax", int(a.kmax));
            let s = divergent_series(src, a.l, a.kmax, a.epsilon, &cfg)?;
            series_into(r, &s, "p");
        }
        BrjunoMode::PRange => {
            r.config("l", int(a.l)).config("samples", int(a.samples)).config("seed", int(g.seed));
            let p = p_range_bound_check(src, a.l, a.samples, g.seed, &cfg)?;
            r.result("holds", Value::Bool(p.holds));
            r.result("samples", int(p.samples));
            r.result("min_value", num(p.min_value));
            r.result("in_l_ball", Value::Bool(p.in_l_ball));
            if let Some((k, pp)) = &p.counterexample {
                r.witness(json!({ "k": ints(k.coords()), "p": int(pp) }));
            }
            let mut t = Table::new(&["samples", "min_value", "holds"]);
            t.push(vec![p.samples.to_string(), fmt_f64(p.min_value), p.holds.to_string()]);
            r.table = t;
        }
    }
    Ok(())
}

fn expand_cfg(g: &GlobalArgs) -> ExpandConfig {
    let d = ExpandConfig::default();
    ExpandConfig { start_bits: d.start_bits, max_bits: d.max_bits.max(g.precision) }
}

/// Expansion of a named or rational number to `levels` quotients.
fn expansion(s: &str, levels: usize, g: &GlobalArgs) -> Result<ContinuedFraction, CliError> {
    let t = s.trim();
    if t == "nonbrjuno" {
        return Ok(non_brjuno_cf(levels)?);
    }
    if let Some(d) = fixture_depth(t) {
        // the rational truncation P_N/Q_N
        let cf = non_brjuno_cf(d.max(1))?;
        return Ok(ContinuedFraction::from_quotients(cf.quotients, true, DEFAULT_EXACT_BITS));
    }
    Ok(cf_expand(&parse_number(t)?, levels, &expand_cfg(g))?)
}

/// Quotients `2^{Q_j}` are written out up to 2^64, then as a power of two,
/// then symbolically once `Q_j` itself is only known by its logarithm.
fn quotient_text(q: &Quotient, exact: &[(BigInt, BigInt)]) -> String {
    match q {
        Quotient::Exact(a) => a.to_string(),
        Quotient::TwoPowQ(j) => match exact.get(j - 1) {
            Some((_, qj)) if qj.bits() <= 6 => (BigInt::one() << qj.to_u64().unwrap_or(0)).to_string(),
            Some((_, qj)) => format!("2^{qj}"),
            None => format!("2^Q{j}"),
        },
    }
}

pub fn cmd_cf(a: &CfArgs, g: &GlobalArgs, r: &mut Report) -> Out {
    r.config("point", text(a.point.trim())).config("depth", int(a.depth));
    let cf = expansion(&a.point, a.depth, g)?;
    let quotients: Vec<String> = cf.quotients.iter().map(|q| quotient_text(q, cf.exact_prefix())).collect();
    r.result("quotients", Value::Array(quotients.iter().cloned().map(Value::String).collect()));
    r.result("log_q", nums(&cf.log_q));
    r.result("log_p", nums(&cf.log_p));
    r.result("loglog_q", nums(&cf.loglog_q));
    r.result("log_space", Value::Bool(cf.log_space));
    r.result("terminating", Value::Bool(cf.terminating));
    r.result("truncated", Value::Bool(cf.truncated));
    r.result("exact_depth", int(cf.exact_depth()));
    let exact = if cf.log_space { cf.exact_prefix().to_vec() } else { convergents(&cf)? };
    r.result(
        "convergents",
        Value::Array(exact.iter().map(|(p, q)| json!({ "p": int(p), "q": int(q) })).collect()),
    );
    let mut t = Table::new(&["level", "quotient", "p", "q", "log_q", "loglog_q"]);
    for (j, qt) in quotients.iter().enumerate() {
        let (p, q) = exact.get(j).map(|(p, q)| (p.to_string(), q.to_string())).unwrap_or_default();
        t.push(vec![(j + 1).to_string(), qt.clone(), p, q, fmt_f64(cf.log_q[j]), fmt_f64(cf.loglog_q[j])]);
    }
    r.table = t;
    Ok(())
}

pub fn cmd_series(a: &SeriesArgs, g: &GlobalArgs, r: &mut Report) -> Out {
    let kind = a.kind.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
    r.config("point", text(a.point.trim())).config("kind", text(kind));
    match a.kind {
        SeriesKind::Brjuno => {
            r.config("depth", int(a.depth));
            let cf = expansion(&a.point, a.depth + 1, g)?;
            series_into(r, &brjuno_sum_cf(&cf, a.depth)?, "p");
        }
        SeriesKind::Qn => {
            r.config("depth", int(a.depth)).config("epsilon", num(a.epsilon));
            let cf = expansion(&a.point, a.depth + 1, g)?;
            series_into(r, &qn_series(&cf, a.epsilon, a.depth)?, "p");
        }
        SeriesKind::Potential => {
            r.config("epsilon", num(a.epsilon)).config("qmax", int(a.qmax));
            let alpha = parse_number(&a.point)?;
            series_into(r, &potential_1d(&alpha, a.epsilon, a.qmax, &expand_cfg(g))?, "p");
        }
    }
    Ok(())
}

fn exact_region(center: &str, radius: f64) -> Result<Region, CliError> {
    Ok(Region::new(parse_exact_point(center)?, radius)?)
}

pub fn cmd_potential(a: &PotentialArgs, _g: &GlobalArgs, r: &mut Report) -> Out {
    let pt = parse_point(&a.point.point, a.point.dim)?;
    point_config(r, &a.point, &pt);
    let Some(z) = pt.exact().cloned() else {
        return usage("potential needs a point with exact rational coordinates");
    };
    let region = exact_region(&a.center, a.radius)?;
    let n = region.dim();
    let sigma = a.sigma.unwrap_or(n as f64 + a.epsilon);
    r.config("center", text(a.center.trim()))
        .config("radius", num(a.radius))
        .config("epsilon", num(a.epsilon))
        .config("sigma", num(sigma))
        .config("kmax", int(a.kmax))
        .config("resolution", int(a.resolution))
        .config("axes_free", Value::Bool(a.axes_free));
    if 2.0 * a.radius > 1.0 {
        eprintln!("warning: region diameter exceeds 1; the kernel is only decreasing on distances below 1");
    }
    let cfg = PotentialConfig { resolution: a.resolution, ..PotentialConfig::default() };
    let family = measure_family(&region, a.epsilon, a.kmax, a.axes_free)?;
    let mass = family.mass()?;
    r.constant("l", family.l as f64)
        .constant("c_tilde", mass.c_tilde)
        .constant("mass_truncated", mass.truncated)
        .constant("mass_tail_bound", mass.tail_bound)
        .constant("family_size", family.size() as f64);
    let s = potential(&z, &family, sigma, &cfg)?;
    series_into(r, &s, "p");
    match (&a.k, a.p) {
        (Some(k), Some(p)) => {
            let k = MultiIndex::new(parse_index(k)?);
            r.config("k", ints(k.coords())).config("p", int(p)).config("eta", num(a.eta));
            let c = lower_bound_chain(&z, &region, &k, p, sigma, a.eta, &cfg)?;
            r.result(
                "chain",
                json!({
                    "term": num(c.term),
                    "integral": num(c.integral),
                    "bound": num(c.bound),
                    "residual": num(c.residual),
                    "holds": c.holds,
                }),
            );
            r.constant("C1", c.c1)
                .constant("C2", c.c2)
                .constant("A1", c.constants.a1)
                .constant("A2", c.constants.a2)
                .constant("B1", c.constants.b1)
                .constant("B2", c.constants.b2);
        }
        (None, None) => {}
        _ => return usage("--k and --p go together"),
    }
    Ok(())
}

pub fn cmd_lemma22(a: &Lemma22Args, _g: &GlobalArgs, r: &mut Report) -> Out {
    r.config("n", int(a.n)).config("sigma", num(a.sigma)).config("a", num(a.a)).config("eta", num(a.eta)).config("tol", num(a.tol));
    let i = slice_integral(a.a, a.eta, a.sigma, a.n, a.tol)?;
    let c = lemma22_bounds(a.n, a.sigma, a.eta)?;
    let (lo, hi) = (c.lower(a.a), c.upper(a.a));
    r.result("quadrature", num(i.value));
    r.result("error", num(i.error));
    r.result("evals", int(i.evals));
    if let Some(cf) = i.closed_form {
        r.result("closed_form", num(cf));
        r.result("relative_difference", num(((i.value - cf) / cf).abs()));
    }
    r.result("lower", num(lo));
    r.result("upper", num(hi));
    r.result("within_bounds", Value::Bool(lo <= i.value && i.value <= hi));
    r.constant("A1", c.a1).constant("A2", c.a2).constant("B1", c.b1).constant("B2", c.b2);
    let mut t = Table::new(&["a", "quadrature", "closed_form", "lower", "upper"]);
    t.push(vec![fmt_f64(a.a), fmt_f64(i.value), i.closed_form.map(fmt_f64).unwrap_or_default(), fmt_f64(lo), fmt_f64(hi)]);
    r.table = t;
    Ok(())
}

pub fn cmd_equiv(a: &EquivArgs, g: &GlobalArgs, r: &mut Report) -> Out {
    r.config("samples", int(a.samples)).config("rho", num(a.rho)).config("seed", int(g.seed));
    let e = equivalence_bound_check(a.samples, a.rho, g.seed)?;
    let limit = 4.0 * std::f64::consts::PI * std::f64::consts::PI;
    r.result("min_ratio", num(e.min_ratio));
    r.result("max_ratio", num(e.max_ratio));
    r.result("samples", int(e.samples));
    r.result("contains_limit", Value::Bool(e.contains_limit));
    r.constant("limit", limit).constant("c1", e.min_ratio).constant("c2", e.max_ratio);
    let mut t = Table::new(&["samples", "min_ratio", "max_ratio", "contains_limit"]);
    t.push(vec![e.samples.to_string(), fmt_f64(e.min_ratio), fmt_f64(e.max_ratio), e.contains_limit.to_string()]);
    match (a.alpha, a.r) {
        (Some(al), Some(rr)) => {
            r.config("alpha", num(al)).config("r", num(rr));
            r.result("ratio", num(equivalence_ratio(al, rr)));
        }
        (None, None) => {}
        _ => return usage("--alpha and --r go together"),
    }
    r.table = t;
    Ok(())
}

/// Least-squares slope of `y` against `x`.
pub fn slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    sxy / sxx
}

pub fn cmd_hausdorff(a: &HausdorffArgs, _g: &GlobalArgs, r: &mut Report) -> Out {
    let k = MultiIndex::new(parse_index(&a.k)?);
    let region = exact_region(&a.center, a.radius)?;
    let n = region.dim();
    let delta = a.delta.unwrap_or(n as f64 + 2.0);
    if a.s_min < 1 || a.s_max < a.s_min || a.s_max > 40 {
        return usage("need 1 ≤ s_min ≤ s_max ≤ 40");
    }
    r.config("k", ints(k.coords()))
        .config("p", int(a.p))
        .config("center", text(a.center.trim()))
        .config("radius", num(a.radius))
        .config("delta", num(delta))
        .config("s_min", int(a.s_min))
        .config("s_max", int(a.s_max));
    let mut t = Table::new(&["s", "rho", "ball_count", "h_sum"]);
    let (mut rhos, mut sums, mut counts) = (Vec::new(), Vec::new(), Vec::new());
    for s in a.s_min..=a.s_max {
        let rho = 2f64.powi(-s);
        let c = tube_cover_sum(&k, a.p, rho, &region, delta)?;
        t.push(vec![s.to_string(), fmt_f64(rho), c.ball_count.to_string(), fmt_f64(c.h_sum)]);
        rhos.push(rho);
        sums.push(c.h_sum);
        counts.push(c.ball_count);
    }
    let decreasing = sums.windows(2).all(|w| w[1] < w[0]);
    let x: Vec<f64> = rhos.iter().map(|r| r.ln().abs().ln()).collect();
    let y: Vec<f64> = sums.iter().map(|s| s.ln()).collect();
    let exponent = if sums.len() >= 2 && sums.iter().all(|s| *s > 0.0) { slope(&x, &y) } else { f64::NAN };
    r.result("rho", nums(&rhos));
    r.result("ball_count", ints(&counts));
    r.result("h_sum", nums(&sums));
    r.result("strictly_decreasing", Value::Bool(decreasing));
    r.result("regression_exponent", num(exponent));
    r.table = t;
    Ok(())
}

fn kernel_text(v: KernelValue) -> Value {
    num(v.to_f64())
}

pub fn cmd_energy(a: &EnergyArgs, g: &GlobalArgs, r: &mut Report) -> Out {
    let params = KernelParams::new(a.dim, a.sigma)?;
    r.config("dim", int(a.dim)).config("sigma", num(a.sigma));
    match a.mode {
        EnergyMode::Atoms => {
            r.config("mode", text("atoms"));
            let Some(atoms) = &a.points else {
                return usage("atoms mode needs --points");
            };
            let points: Vec<Point> = atoms.split(';').map(parse_exact_point).collect::<Result<_, _>>()?;
            let weights = match &a.weights {
                Some(w) => parse_f64_list(w)?,
                None => vec![1.0 / points.len() as f64; points.len()],
            };
            r.config("points", text(atoms.trim())).config("weights", nums(&weights));
            let e = energy(&points, &weights, &params)?;
            r.result("energy", kernel_text(e.energy));
            r.result("off_diagonal", kernel_text(e.proxy));
            if let Some((i, j)) = e.coincident {
                r.witness(json!({ "coincident": [int(i), int(j)] }));
            }
            r.infinite = e.coincident.is_some() || points.len() == 1;
            let mut t = Table::new(&["atoms", "off_diagonal"]);
            t.push(vec![points.len().to_string(), fmt_f64(e.proxy.to_f64())]);
            r.table = t;
        }
        EnergyMode::Ball => {
            let Some(radius) = a.radius else {
                return usage("ball mode needs --radius");
            };
            r.config("mode", text("ball")).config("radius", num(radius)).config("samples", int(a.samples)).config("seed", int(g.seed));
            let b = ball_energy(&params, radius, a.samples, g.seed)?;
            r.result("energy", num(b.energy));
            r.result("std_error", num(b.std_error));
            r.result("capacity_lower", num(b.capacity_lower));
            let mut t = Table::new(&["radius", "energy", "std_error", "capacity_lower"]);
            t.push(vec![fmt_f64(radius), fmt_f64(b.energy), fmt_f64(b.std_error), fmt_f64(b.capacity_lower)]);
            r.table = t;
        }
    }
    Ok(())
}
