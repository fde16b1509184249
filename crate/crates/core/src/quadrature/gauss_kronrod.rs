//! Globally adaptive 10-point Gauss / 21-point Kronrod integration of complex
//! valued functions on a finite interval.

// Nodes and weights are kept at their tabulated precision.
#![allow(clippy::excessive_precision)]

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::Complex;

// Kronrod abscissae in descending order; odd indices are the Gauss nodes.
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
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

// Gauss weights for XGK[1], XGK[3], ..., XGK[9].
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

pub(crate) const EVALS_PER_PANEL: usize = 21;

/// One panel estimate: Kronrod value and a rescaled |K - G| error.
#[derive(Debug, Clone, Copy)]
pub(crate) struct PanelEstimate {
    pub value: Complex,
    pub error: f64,
}

/// QUADPACK-style rescaling of the raw Gauss/Kronrod difference.
fn rescale_error(raw: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut err = raw.abs();
    if res_asc != 0.0 && err != 0.0 {
        let scale = (200.0 * err / res_asc).powf(1.5);
        err = if scale < 1.0 {
            res_asc * scale
        } else {
            res_asc
        };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    err
}

pub(crate) fn gk21<F>(f: &F, a: f64, b: f64) -> PanelEstimate
where
    F: Fn(f64) -> Complex + ?Sized,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let abs_half = half.abs();

    let f_center = f(center);
    let mut res_k = f_center * WGK[10];
    let mut res_g = Complex::new(0.0, 0.0);
    let mut res_abs = f_center.norm() * WGK[10];

    let mut pairs = [(Complex::new(0.0, 0.0), Complex::new(0.0, 0.0)); 10];
    for (j, pair) in pairs.iter_mut().enumerate() {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        *pair = (f1, f2);
        res_k += (f1 + f2) * WGK[j];
        res_abs += (f1.norm() + f2.norm()) * WGK[j];
        if j % 2 == 1 {
            res_g += (f1 + f2) * WG[j / 2];
        }
    }

    let mean = res_k * 0.5;
    let mut res_asc = WGK[10] * (f_center - mean).norm();
    for (j, (f1, f2)) in pairs.iter().enumerate() {
        res_asc += WGK[j] * ((f1 - mean).norm() + (f2 - mean).norm());
    }

    let value = res_k * half;
    let raw = ((res_k - res_g) * half).norm();
    PanelEstimate {
        value,
        error: rescale_error(raw, res_abs * abs_half, res_asc * abs_half),
    }
}

/// A converged (or abandoned) subinterval of an adaptive run.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Panel {
    pub a: f64,
    pub b: f64,
    pub value: Complex,
    pub error: f64,
}

// Max-heap on error; ties broken by position so the run is deterministic.
impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

pub(crate) struct AdaptiveRun {
    pub value: Complex,
    pub error: f64,
    pub converged: bool,
    pub evaluations: usize,
    /// Final panels sorted by left edge.
    pub panels: Vec<Panel>,
}

/// Bisects the worst panel until `sum(err) <= max(abs_tol, rel_tol |I|)`
/// or `max_panels` panels exist.
pub(crate) fn adaptive<F>(
    f: &F,
    a: f64,
    b: f64,
    initial_panels: usize,
    abs_tol: f64,
    rel_tol: f64,
    max_panels: usize,
) -> AdaptiveRun
where
    F: Fn(f64) -> Complex + ?Sized,
{
    let max_panels = max_panels.max(initial_panels).max(1);
    let mut heap = BinaryHeap::with_capacity(max_panels + 1);
    let mut evaluations = 0;
    let width = (b - a) / initial_panels as f64;
    for k in 0..initial_panels {
        let lo = a + width * k as f64;
        let hi = if k + 1 == initial_panels {
            b
        } else {
            lo + width
        };
        let est = gk21(f, lo, hi);
        evaluations += EVALS_PER_PANEL;
        heap.push(Panel {
            a: lo,
            b: hi,
            value: est.value,
            error: est.error,
        });
    }

    let totals = |heap: &BinaryHeap<Panel>| {
        heap.iter()
            .fold((Complex::new(0.0, 0.0), 0.0), |(v, e), p| {
                (v + p.value, e + p.error)
            })
    };

    let (mut value, mut error) = totals(&heap);
    let tolerance = |v: Complex| abs_tol.max(rel_tol * v.norm());
    let mut converged = error <= tolerance(value);
    while !converged && heap.len() < max_panels {
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Panel can no longer be split in floating point.
            heap.push(worst);
            break;
        }
        let left = gk21(f, worst.a, mid);
        let right = gk21(f, mid, worst.b);
        evaluations += 2 * EVALS_PER_PANEL;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(Panel {
            a: worst.a,
            b: mid,
            value: left.value,
            error: left.error,
        });
        heap.push(Panel {
            a: mid,
            b: worst.b,
            value: right.value,
            error: right.error,
        });
        if error <= tolerance(value) {
            // Resum to shed accumulated drift before deciding.
            let (v, e) = totals(&heap);
            value = v;
            error = e;
            converged = error <= tolerance(value);
        }
    }
    let (value, error) = totals(&heap);
    let converged = converged || error <= tolerance(value);

    let mut panels = heap.into_vec();
    panels.sort_by(|x, y| x.a.total_cmp(&y.a));
    AdaptiveRun {
        value,
        error,
        converged,
        evaluations,
        panels,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_two() {
        let k: f64 = 2.0 * WGK[..10].iter().sum::<f64>() + WGK[10];
        let g: f64 = 2.0 * WG.iter().sum::<f64>();
        assert!((k - 2.0).abs() < 1e-14);
        assert!((g - 2.0).abs() < 1e-14);
    }

    #[test]
    fn exact_for_polynomials() {
        // Gauss-10 is exact to degree 19, Kronrod-21 to degree 31.
        for deg in 0..=19 {
            let f = |x: f64| Complex::new(x.powi(deg), 0.0);
            let est = gk21(&f, 0.0, 1.0);
            let exact = 1.0 / (deg as f64 + 1.0);
            assert!((est.value.re - exact).abs() < 1e-14, "degree {deg}");
            assert!(est.error < 1e-13, "degree {deg}: {}", est.error);
        }
    }

    #[test]
    fn adaptive_handles_peak() {
        let f = |x: f64| Complex::new(1.0 / (1e-4 + x * x), 0.0);
        let run = adaptive(&f, -1.0, 1.0, 1, 1e-12, 1e-12, 5000);
        let exact = 2.0 * (1.0 / 1e-2) * (1.0_f64 / 1e-2).atan();
        assert!(run.converged);
        assert!((run.value.re - exact).abs() < 1e-9 * exact);
        let widths: f64 = run.panels.iter().map(|p| p.b - p.a).sum();
        assert!((widths - 2.0).abs() < 1e-14);
    }
}
