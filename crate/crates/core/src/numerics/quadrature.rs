use alloc::vec::Vec;
use libm::{exp, fabs, pow};

use crate::{Error, Result};

/// Evaluation budget used by [`integrate_semi_infinite`].
pub const DEFAULT_EVAL_BUDGET: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub abs_error_estimate: f64,
    pub evaluations: usize,
}

// 21-point Kronrod extension of the 10-point Gauss rule (QUADPACK qk21).
#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

const RULE_POINTS: usize = 21;

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

/// One Gauss-Kronrod panel with the QUADPACK error rescaling.
fn gk21<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> Segment {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let f_center = f(center);
    let mut result_gauss = 0.0;
    let mut result_kronrod = f_center * WGK[10];
    let mut res_abs = fabs(result_kronrod);
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];

    for (j, &wg) in WG.iter().enumerate() {
        let jtw = 2 * j + 1;
        let dx = half * XGK[jtw];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[jtw] = f1;
        fv2[jtw] = f2;
        result_gauss += wg * (f1 + f2);
        result_kronrod += WGK[jtw] * (f1 + f2);
        res_abs += WGK[jtw] * (fabs(f1) + fabs(f2));
    }
    for j in 0..5 {
        let jtwm1 = 2 * j;
        let dx = half * XGK[jtwm1];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[jtwm1] = f1;
        fv2[jtwm1] = f2;
        result_kronrod += WGK[jtwm1] * (f1 + f2);
        res_abs += WGK[jtwm1] * (fabs(f1) + fabs(f2));
    }

    let mean = 0.5 * result_kronrod;
    let mut res_asc = WGK[10] * fabs(f_center - mean);
    for j in 0..10 {
        res_asc += WGK[j] * (fabs(fv1[j] - mean) + fabs(fv2[j] - mean));
    }
    let value = result_kronrod * half;
    res_abs *= fabs(half);
    res_asc *= fabs(half);

    let mut error = fabs((result_kronrod - result_gauss) * half);
    if res_asc != 0.0 && error != 0.0 {
        error = res_asc * pow(200.0 * error / res_asc, 1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * res_abs);
    }
    Segment { a, b, value, error }
}

/// Globally adaptive Gauss-Kronrod integration over `[breakpoints[0], breakpoints[last]]`.
///
/// The breakpoints seed the initial partition. The worst panel is bisected
/// until the summed error estimate is below `max(abs_tol, rel_tol·|value|)`.
/// `rel_tol` is floored at `100·ε`, the round-off level of the rule itself.
pub fn integrate_adaptive<F: FnMut(f64) -> f64>(
    mut f: F,
    breakpoints: &[f64],
    abs_tol: f64,
    rel_tol: f64,
    budget: usize,
) -> Result<QuadratureResult> {
    if breakpoints.len() < 2 {
        return Err(Error::Domain {
            what: "quadrature needs at least two breakpoints",
            value: breakpoints.len() as f64,
        });
    }
    let rel_tol = rel_tol.max(100.0 * f64::EPSILON);
    let mut segments: Vec<Segment> =
        breakpoints.windows(2).filter(|w| w[1] > w[0]).map(|w| gk21(&mut f, w[0], w[1])).collect();
    let mut evaluations = segments.len() * RULE_POINTS;
    if evaluations > budget {
        return Err(Error::NonConvergence { evaluations, abs_error: f64::INFINITY, tol: abs_tol });
    }

    loop {
        let value: f64 = segments.iter().map(|s| s.value).sum();
        let error: f64 = segments.iter().map(|s| s.error).sum();
        if !value.is_finite() || !error.is_finite() {
            return Err(Error::Domain { what: "integrand is not finite", value });
        }
        let tol = abs_tol.max(rel_tol * fabs(value));
        if error <= tol {
            return Ok(QuadratureResult { value, abs_error_estimate: error, evaluations });
        }
        if evaluations + 2 * RULE_POINTS > budget {
            return Err(Error::NonConvergence { evaluations, abs_error: error, tol });
        }
        let (worst, _) =
            segments
                .iter()
                .enumerate()
                .fold((0, f64::NEG_INFINITY), |acc, (i, s)| if s.error > acc.1 { (i, s.error) } else { acc });
        let seg = segments[worst];
        let mid = 0.5 * (seg.a + seg.b);
        if mid <= seg.a || mid >= seg.b {
            return Err(Error::NonConvergence { evaluations, abs_error: error, tol });
        }
        segments[worst] = gk21(&mut f, seg.a, mid);
        segments.push(gk21(&mut f, mid, seg.b));
        evaluations += 2 * RULE_POINTS;
    }
}

/// `∫₀^∞ f(t) dt` to `abs_error_estimate ≤ tol·max(1, |value|)`.
///
/// `f` may carry an integrable power singularity at `0` and must decay at
/// least exponentially at infinity. Uses [`DEFAULT_EVAL_BUDGET`].
pub fn integrate_semi_infinite<F: Fn(f64) -> f64>(f: F, tol: f64) -> Result<QuadratureResult> {
    integrate_semi_infinite_with_budget(f, tol, DEFAULT_EVAL_BUDGET)
}

/// Grid step of the cutoff scan in the logarithmic variable.
const SCAN_STEP: f64 = 0.25;
/// Relative magnitude below which the transformed integrand is negligible.
const NEGLIGIBLE: f64 = 1e-20;
/// Consecutive negligible scan points required before cutting off.
const NEGLIGIBLE_RUN: usize = 8;
/// Largest logarithmic coordinate probed; `e^±690` is still a normal double.
const LOG_LIMIT: f64 = 690.0;

struct Cutoff {
    upper: f64,
    trapezoid: f64,
    neglected: f64,
    evaluations: usize,
}

/// Walks `u = 0, h, 2h, ...` until `|g|` has stayed negligible past its peak.
fn find_cutoff<G: FnMut(f64) -> f64>(g: &mut G, tol: f64) -> Result<Cutoff> {
    let mut peak = 0.0f64;
    let mut peak_at = 0.0;
    let mut run = 0;
    let mut trapezoid = 0.0;
    let mut k = 0usize;
    loop {
        let u = k as f64 * SCAN_STEP;
        let v = g(u);
        if !v.is_finite() {
            return Err(Error::Domain { what: "integrand is not finite", value: u });
        }
        let v = fabs(v);
        trapezoid += if k == 0 { 0.5 * v } else { v };
        if v > peak {
            peak = v;
            peak_at = u;
        }
        if u > peak_at && v <= NEGLIGIBLE * peak {
            run += 1;
        } else {
            run = 0;
        }
        k += 1;
        if run >= NEGLIGIBLE_RUN || (peak == 0.0 && u >= 40.0) {
            return Ok(Cutoff {
                upper: u,
                trapezoid: trapezoid * SCAN_STEP,
                neglected: NEGLIGIBLE * peak,
                evaluations: k,
            });
        }
        if u >= LOG_LIMIT {
            if v <= tol * peak {
                return Ok(Cutoff { upper: u, trapezoid: trapezoid * SCAN_STEP, neglected: v, evaluations: k });
            }
            return Err(Error::NonConvergence { evaluations: k, abs_error: v, tol });
        }
    }
}

/// Same as [`integrate_semi_infinite`] with an explicit evaluation budget.
///
/// The range is split at `t = 1`. The head uses `t = e^{-u}`, which turns a
/// power singularity `t^p` (p > -1) into exponential decay `e^{-(p+1)u}`;
/// the tail uses `t = e^{u}`, which turns exponential decay into
/// double-exponential decay. Each transformed piece is truncated where it
/// becomes negligible and integrated adaptively on unit panels.
pub fn integrate_semi_infinite_with_budget<F: Fn(f64) -> f64>(
    f: F,
    tol: f64,
    budget: usize,
) -> Result<QuadratureResult> {
    if !(tol > 0.0) {
        return Err(Error::Domain { what: "tolerance must be positive", value: tol });
    }
    let mut head = |u: f64| {
        let t = exp(-u);
        f(t) * t
    };
    let mut tail = |u: f64| {
        let t = exp(u);
        f(t) * t
    };

    let head_cut = find_cutoff(&mut head, tol)?;
    let tail_cut = find_cutoff(&mut tail, tol)?;
    let scale = (head_cut.trapezoid + tail_cut.trapezoid).max(1.0);
    let abs_tol = 0.25 * tol * scale;
    let mut evaluations = head_cut.evaluations + tail_cut.evaluations;

    let mut total = QuadratureResult { value: 0.0, abs_error_estimate: 0.0, evaluations: 0 };
    for (g, cut) in [(&mut head as &mut dyn FnMut(f64) -> f64, &head_cut), (&mut tail, &tail_cut)] {
        let panels = libm::ceil(cut.upper) as usize;
        let breakpoints: Vec<f64> = (0..=panels.max(1)).map(|i| i as f64).collect();
        let remaining = budget.saturating_sub(evaluations);
        let piece = integrate_adaptive(g, &breakpoints, abs_tol, 0.25 * tol, remaining)?;
        evaluations += piece.evaluations;
        total.value += piece.value;
        // the neglected tail decays at least geometrically per scan step
        total.abs_error_estimate += piece.abs_error_estimate + 4.0 * cut.neglected;
    }
    total.evaluations = evaluations;

    let target = tol * fabs(total.value).max(1.0);
    if total.abs_error_estimate > target {
        return Err(Error::NonConvergence { evaluations, abs_error: total.abs_error_estimate, tol: target });
    }
    Ok(total)
}
