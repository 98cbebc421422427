//! Adaptive Gauss-Kronrod (10/21 point) quadrature for complex integrands
//! on a finite interval.

use num_complex::Complex64;

use crate::error::{Error, Result};

// Kronrod abscissae; odd indices are the Gauss nodes.
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

/// Tolerances and limits for [`integrate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Uniform pieces the interval is split into before adapting.
    pub initial_intervals: usize,
    pub max_intervals: usize,
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        Self { abs_tol: 0.0, rel_tol: 1e-10, initial_intervals: 16, max_intervals: 4000 }
    }
}

impl QuadratureOptions {
    pub fn with_rel_tol(rel_tol: f64) -> Self {
        Self { rel_tol, ..Self::default() }
    }
}

/// Integral value with its estimated absolute error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureEstimate {
    pub value: Complex64,
    pub error: f64,
    pub intervals: usize,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
struct Piece {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
}

/// One 21-point Kronrod evaluation with the QUADPACK error estimate
/// `resasc·min(1, (200|K − G|/resasc)^{3/2})`, floored at the roundoff level
/// of `∫|f|`.
pub fn gk21<F>(f: &F, a: f64, b: f64) -> Result<(Complex64, f64)>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut values = [Complex64::new(0.0, 0.0); 21];
    values[20] = f(center)?;
    for j in 0..10 {
        let dx = half * XGK[j];
        values[2 * j] = f(center - dx)?;
        values[2 * j + 1] = f(center + dx)?;
    }
    let weight = |k: usize| if k == 20 { WGK[10] } else { WGK[k / 2] };
    let mut kronrod = Complex64::new(0.0, 0.0);
    let mut gauss = Complex64::new(0.0, 0.0);
    let mut resabs = 0.0;
    for (k, v) in values.iter().enumerate() {
        kronrod += v * weight(k);
        resabs += v.norm() * weight(k);
        let j = k / 2;
        if k < 20 && j % 2 == 1 {
            gauss += v * WG[j / 2];
        }
    }
    let mean = kronrod * 0.5;
    let resasc: f64 = values.iter().enumerate().map(|(k, v)| (v - mean).norm() * weight(k)).sum();
    let (kronrod, gauss) = (kronrod * half, gauss * half);
    let (resabs, resasc) = (resabs * half.abs(), resasc * half.abs());
    let mut error = (kronrod - gauss).norm();
    if resasc != 0.0 && error != 0.0 {
        error = resasc * (200.0 * error / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * resabs);
    }
    Ok((kronrod, error))
}

/// Adaptive bisection of the piece with the largest error until the total
/// error is below max(abs_tol, rel_tol·|I|).
pub fn integrate<F>(f: F, a: f64, b: f64, options: &QuadratureOptions) -> Result<QuadratureEstimate>
where
    F: Fn(f64) -> Result<Complex64>,
{
    if !(a.is_finite() && b.is_finite()) || b < a {
        return Err(Error::Domain(format!("invalid integration interval [{a}, {b}]")));
    }
    if options.rel_tol < 0.0 || options.abs_tol < 0.0 || (options.rel_tol == 0.0 && options.abs_tol == 0.0) {
        return Err(Error::InvalidParams("quadrature needs a positive tolerance".into()));
    }
    if a == b {
        return Ok(QuadratureEstimate { value: Complex64::new(0.0, 0.0), error: 0.0, intervals: 0, evaluations: 0 });
    }
    let n0 = options.initial_intervals.max(1);
    let width = (b - a) / n0 as f64;
    let mut pieces = Vec::with_capacity(options.max_intervals);
    for k in 0..n0 {
        let lo = a + k as f64 * width;
        let hi = if k + 1 == n0 { b } else { lo + width };
        let (value, error) = gk21(&f, lo, hi)?;
        pieces.push(Piece { a: lo, b: hi, value, error });
    }
    let mut evaluations = 21 * n0;
    loop {
        let total: Complex64 = pieces.iter().map(|p| p.value).sum();
        let error: f64 = pieces.iter().map(|p| p.error).sum();
        let target = options.abs_tol.max(options.rel_tol * total.norm());
        if error <= target {
            return Ok(QuadratureEstimate { value: total, error, intervals: pieces.len(), evaluations });
        }
        if pieces.len() >= options.max_intervals {
            return Err(Error::Convergence { estimate: total.norm(), error, intervals: pieces.len() });
        }
        let (worst, _) = pieces
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .expect("at least one piece");
        let p = pieces.swap_remove(worst);
        let mid = 0.5 * (p.a + p.b);
        if mid <= p.a || mid >= p.b {
            return Err(Error::Convergence { estimate: total.norm(), error, intervals: pieces.len() + 1 });
        }
        let (lv, le) = gk21(&f, p.a, mid)?;
        let (rv, re) = gk21(&f, mid, p.b)?;
        evaluations += 42;
        pieces.push(Piece { a: p.a, b: mid, value: lv, error: le });
        pieces.push(Piece { a: mid, b: p.b, value: rv, error: re });
    }
}
