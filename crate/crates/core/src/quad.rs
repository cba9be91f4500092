//! Globally adaptive Gauss–Kronrod (10/21-point) quadrature on finite intervals.
//!
//! The panel with the largest error estimate is bisected until the summed
//! estimate drops below `max(rel · |I|, abs)`. Initial breakpoints let callers
//! seed the subdivision where they know the integrand has structure.

use alloc::vec::Vec;

use num_traits::Float;

use crate::{Error, Result};

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

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_600_525_452_120,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

// Gauss weights for the odd-indexed Kronrod nodes XGK[1], XGK[3], ..., XGK[9].
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance {
    pub rel: f64,
    pub abs: f64,
}

impl Tolerance {
    pub fn target(&self, value: f64) -> f64 {
        (self.rel * value.abs()).max(self.abs)
    }
}

/// Result of an adaptive integration.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Integral {
    pub value: f64,
    /// Sum of the per-panel error estimates.
    pub err_est: f64,
    /// Integral of `|f|`, used to bound relative errors of nested rules.
    pub abs_value: f64,
    pub panels: usize,
}

#[derive(Clone, Copy, Debug)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
    abs_value: f64,
}

fn kronrod<F>(f: &mut F, a: f64, b: f64) -> Result<Panel>
where
    F: FnMut(f64) -> Result<f64>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center)?;
    let mut kron = WGK[10] * fc;
    let mut gauss = 0.0;
    let mut res_abs = WGK[10] * fc.abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = f(center - dx)?;
        let f2 = f(center + dx)?;
        fv1[j] = f1;
        fv2[j] = f2;
        kron += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * kron;
    let mut res_asc = WGK[10] * (fc - mean).abs();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let abs_half = half.abs();
    let value = kron * half;
    res_abs *= abs_half;
    res_asc *= abs_half;

    let mut err = ((kron - gauss) * half).abs();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * (200.0 * err / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    if !value.is_finite() {
        return Err(Error::domain("non-finite integrand on panel starting at", a));
    }
    Ok(Panel { a, b, value, err, abs_value: res_abs })
}

/// Integrate a fallible integrand over `[breaks[0], breaks[last]]`.
///
/// `breaks` must be sorted ascending with at least two entries; each interval
/// between consecutive breakpoints starts as one panel.
pub fn try_integrate<F>(mut f: F, breaks: &[f64], tol: Tolerance, max_panels: usize) -> Result<Integral>
where
    F: FnMut(f64) -> Result<f64>,
{
    debug_assert!(breaks.len() >= 2);
    let mut panels: Vec<Panel> = Vec::with_capacity(breaks.len() + 16);
    for w in breaks.windows(2) {
        if w[1] > w[0] {
            panels.push(kronrod(&mut f, w[0], w[1])?);
        }
    }
    if panels.is_empty() {
        return Ok(Integral { value: 0.0, err_est: 0.0, abs_value: 0.0, panels: 0 });
    }

    loop {
        let value: f64 = panels.iter().map(|p| p.value).sum();
        let err: f64 = panels.iter().map(|p| p.err).sum();
        if err <= tol.target(value) {
            let abs_value = panels.iter().map(|p| p.abs_value).sum();
            return Ok(Integral { value, err_est: err, abs_value, panels: panels.len() });
        }

        let (worst, _) =
            panels.iter().enumerate().fold((0, -1.0), |acc, (i, p)| if p.err > acc.1 { (i, p.err) } else { acc });
        let Panel { a, b, .. } = panels[worst];
        let mid = 0.5 * (a + b);
        let exhausted = panels.len() >= max_panels;
        if exhausted || !(mid > a && mid < b) {
            return Err(Error::Convergence { best: value, err_bound: err });
        }
        panels[worst] = kronrod(&mut f, a, mid)?;
        panels.push(kronrod(&mut f, mid, b)?);
    }
}

/// Infallible-integrand convenience wrapper around [`try_integrate`].
pub fn integrate<F>(mut f: F, breaks: &[f64], tol: Tolerance, max_panels: usize) -> Result<Integral>
where
    F: FnMut(f64) -> f64,
{
    try_integrate(|x| Ok(f(x)), breaks, tol, max_panels)
}
