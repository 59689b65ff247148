//! Adaptive Gauss–Kronrod (7/15) quadrature on finite intervals.

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Clone, Copy, Debug)]
pub struct QuadConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_depth: u32,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig { rel_tol: 1e-11, abs_tol: 0.0, max_depth: 60 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub error: f64,
    pub evals: usize,
}

fn gk15(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for (i, &x) in XGK[..7].iter().enumerate() {
        let pair = f(c - h * x) + f(c + h * x);
        kron += WGK[i] * pair;
        if i % 2 == 1 {
            gauss += WG[i / 2] * pair;
        }
    }
    (kron * h, ((kron - gauss) * h).abs())
}

/// Integrates `f` over `[a, b]` by recursive bisection.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, cfg: &QuadConfig) -> QuadResult {
    let mut evals = 0;
    let (whole, err) = gk15(&f, a, b);
    evals += 15;
    let mut value = 0.0;
    let mut error = 0.0;
    let tol = cfg.abs_tol.max(cfg.rel_tol * whole.abs());
    recurse(&f, a, b, whole, err, tol, cfg.max_depth, &mut value, &mut error, &mut evals);
    QuadResult { value, error, evals }
}

#[allow(clippy::too_many_arguments)]
fn recurse(
    f: &impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    est: f64,
    err: f64,
    tol: f64,
    depth: u32,
    value: &mut f64,
    error: &mut f64,
    evals: &mut usize,
) {
    if err <= tol.max(f64::EPSILON * 50.0 * est.abs()) || depth == 0 {
        *value += est;
        *error += err;
        return;
    }
    let m = 0.5 * (a + b);
    let (l, el) = gk15(f, a, m);
    let (r, er) = gk15(f, m, b);
    *evals += 30;
    let half = tol / std::f64::consts::SQRT_2;
    recurse(f, a, m, l, el, half, depth - 1, value, error, evals);
    recurse(f, m, b, r, er, half, depth - 1, value, error, evals);
}

/// Integrates over consecutive sub-intervals given by sorted `breaks`.
pub fn integrate_pieces(f: impl Fn(f64) -> f64, breaks: &[f64], cfg: &QuadConfig) -> QuadResult {
    let mut total = QuadResult { value: 0.0, error: 0.0, evals: 0 };
    for w in breaks.windows(2) {
        if w[1] > w[0] {
            let r = integrate(&f, w[0], w[1], cfg);
            total.value += r.value;
            total.error += r.error;
            total.evals += r.evals;
        }
    }
    total
}

/// Geometric breakpoints from `lo` to `hi` (both positive) with ratio about
/// `ratio`, always including both ends.
pub fn geometric_breaks(lo: f64, hi: f64, ratio: f64) -> Vec<f64> {
    let mut out = vec![lo];
    let mut x = lo * ratio;
    while x < hi {
        out.push(x);
        x *= ratio;
    }
    out.push(hi);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_exact() {
        let r = integrate(|x| x.powi(5) - 2.0 * x, 0.0, 2.0, &QuadConfig::default());
        assert!((r.value - (64.0 / 6.0 - 4.0)).abs() < 1e-12);
    }

    #[test]
    fn log_singularity() {
        // ∫_0^1 ln x dx = -1
        let br = geometric_breaks(1e-300, 1.0, 16.0);
        let mut pieces = vec![0.0];
        pieces.extend(br);
        let r = integrate_pieces(|x| if x > 0.0 { x.ln() } else { 0.0 }, &pieces, &QuadConfig::default());
        assert!((r.value + 1.0).abs() < 1e-10, "{}", r.value);
    }

    #[test]
    fn oscillatory() {
        let r = integrate(|x| (10.0 * x).sin(), 0.0, std::f64::consts::PI, &QuadConfig::default());
        assert!(r.value.abs() < 1e-12);
    }
}
