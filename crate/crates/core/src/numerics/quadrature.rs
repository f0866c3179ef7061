// The rule constants are published 30-digit values, kept verbatim.
#![allow(clippy::excessive_precision)]

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::{DEFAULT_ABS_TOL, DEFAULT_MAX_EVALUATIONS, DEFAULT_REL_TOL};
use crate::error::{Error, Result};

/// Largest half-width `integrate_symmetric_infinite` will truncate at.
pub const MAX_HALF_WIDTH: f64 = 1e6;

// Kronrod 15-point abscissae on [-1, 1]; odd indices are the Gauss 7-point nodes.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

// Gauss 7-point weights; the last one belongs to the centre node.
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

const RULE_POINTS: usize = 15;
const MAX_SHELL_PANELS: usize = 1024;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    /// Always non-negative.
    pub abs_error_estimate: f64,
    pub evaluations: usize,
}

/// Adaptive Gauss–Kronrod (G7/K15) integrator.
///
/// Intervals are bisected in order of largest local error estimate until the
/// summed estimate drops below `max(abs_tol, rel_tol·|value|)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_evaluations: usize,
    /// Number of equal panels the interval is split into before adapting.
    pub initial_panels: usize,
}

impl Default for Quadrature {
    fn default() -> Self {
        Quadrature {
            rel_tol: DEFAULT_REL_TOL,
            abs_tol: DEFAULT_ABS_TOL,
            max_evaluations: DEFAULT_MAX_EVALUATIONS,
            initial_panels: 1,
        }
    }
}

/// `∫_a^b f` with the default evaluation budget.
pub fn integrate_finite<F>(f: F, a: f64, b: f64, rel_tol: f64, abs_tol: f64) -> Result<QuadratureResult>
where
    F: FnMut(f64) -> f64,
{
    Quadrature {
        rel_tol,
        abs_tol,
        ..Quadrature::default()
    }
    .integrate(f, a, b)
}

/// `∫_{−∞}^{∞} f` for integrands whose mean decays at least like `1/x²`.
///
/// See [`Quadrature::integrate_symmetric_infinite`].
pub fn integrate_symmetric_infinite<F>(f: F, rel_tol: f64, half_width_hint: f64) -> Result<QuadratureResult>
where
    F: FnMut(f64) -> f64,
{
    Quadrature {
        rel_tol,
        ..Quadrature::default()
    }
    .integrate_symmetric_infinite(f, half_width_hint)
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

impl Quadrature {
    fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) || !(self.abs_tol > 0.0) {
            return Err(Error::invalid(
                "tolerance",
                format!("rel_tol = {}, abs_tol = {} must both be > 0", self.rel_tol, self.abs_tol),
            ));
        }
        if self.initial_panels == 0 {
            return Err(Error::invalid("initial_panels", "must be at least 1"));
        }
        Ok(())
    }

    pub fn integrate<F>(&self, mut f: F, a: f64, b: f64) -> Result<QuadratureResult>
    where
        F: FnMut(f64) -> f64,
    {
        self.try_integrate(|x| Ok(f(x)), a, b)
    }

    /// Like [`Quadrature::integrate`] for integrands that can fail; the first
    /// error returned by `f` aborts the integration and is passed through.
    pub fn try_integrate<F>(&self, mut f: F, a: f64, b: f64) -> Result<QuadratureResult>
    where
        F: FnMut(f64) -> Result<f64>,
    {
        self.validate()?;
        if !(a.is_finite() && b.is_finite()) || a > b {
            return Err(Error::invalid(
                "interval",
                format!("[{a}, {b}] must be finite with a ≤ b"),
            ));
        }

        let mut heap = BinaryHeap::new();
        let mut evaluations = 0;
        let mut total_value = 0.0;
        let mut total_error = 0.0;
        let width = (b - a) / self.initial_panels as f64;
        for panel in 0..self.initial_panels {
            let lo = a + width * panel as f64;
            let hi = if panel + 1 == self.initial_panels {
                b
            } else {
                a + width * (panel + 1) as f64
            };
            let seg = kronrod15(&mut f, lo, hi)?;
            evaluations += RULE_POINTS;
            total_value += seg.value;
            total_error += seg.error;
            heap.push(seg);
        }

        loop {
            let tolerance = self.abs_tol.max(self.rel_tol * total_value.abs());
            if total_error <= tolerance {
                break;
            }
            if evaluations + 2 * RULE_POINTS > self.max_evaluations {
                return Err(Error::NonConvergence {
                    estimate: total_error,
                    tolerance,
                    evaluations,
                });
            }
            let worst = heap.pop().expect("at least one segment");
            let mid = 0.5 * (worst.a + worst.b);
            if !(worst.a < mid && mid < worst.b) {
                // Interval exhausted at machine resolution.
                return Err(Error::NonConvergence {
                    estimate: total_error,
                    tolerance,
                    evaluations,
                });
            }
            let left = kronrod15(&mut f, worst.a, mid)?;
            let right = kronrod15(&mut f, mid, worst.b)?;
            evaluations += 2 * RULE_POINTS;
            total_value += left.value + right.value - worst.value;
            total_error += left.error + right.error - worst.error;
            heap.push(left);
            heap.push(right);
        }

        // Resum to shed the drift of the running totals.
        let mut segments = heap.into_vec();
        segments.sort_by(|x, y| x.a.total_cmp(&y.a));
        let value = segments.iter().map(|s| s.value).sum();
        let abs_error_estimate = segments.iter().map(|s| s.error).sum();
        Ok(QuadratureResult {
            value,
            abs_error_estimate,
            evaluations,
        })
    }

    /// `∫_{−∞}^{∞} f` by symmetric truncation plus an extrapolated tail.
    ///
    /// The core `[−T₀, T₀]` (`T₀ = half_width_hint`) is integrated first, then
    /// shells `T < |x| < 2T` with doubling `T`. Beyond the truncation the mean
    /// of `f` is modelled as `a/x² + b/x⁴`, which makes the tail a fixed
    /// linear combination of the last two shells. For oscillating integrands
    /// the hint should be a multiple of the oscillation period so that every
    /// shell boundary sits at the same phase. The returned error is the
    /// change between successive extrapolated totals plus the quadrature
    /// error; `TailBoundFailure` is raised if that does not meet tolerance
    /// before the half-width passes [`MAX_HALF_WIDTH`].
    pub fn integrate_symmetric_infinite<F>(&self, mut f: F, half_width_hint: f64) -> Result<QuadratureResult>
    where
        F: FnMut(f64) -> f64,
    {
        self.try_integrate_symmetric_infinite(|x| Ok(f(x)), half_width_hint)
    }

    pub fn try_integrate_symmetric_infinite<F>(&self, mut f: F, half_width_hint: f64) -> Result<QuadratureResult>
    where
        F: FnMut(f64) -> Result<f64>,
    {
        self.validate()?;
        if !(half_width_hint > 0.0 && half_width_hint <= MAX_HALF_WIDTH) {
            return Err(Error::invalid(
                "half_width_hint",
                format!("{half_width_hint} must lie in (0, {MAX_HALF_WIDTH}]"),
            ));
        }

        // Keep the panel width fixed as the shells grow. The core gets a
        // quarter of the error budget so the tail has room to converge.
        let panels_core = 2 * self.initial_panels.max(4);
        let core = Quadrature {
            rel_tol: 0.25 * self.rel_tol,
            abs_tol: 0.25 * self.abs_tol,
            initial_panels: panels_core,
            ..*self
        }
        .try_integrate(&mut f, -half_width_hint, half_width_hint)?;

        let mut truncated = core.value;
        let mut quad_error = core.abs_error_estimate;
        let mut evaluations = core.evaluations;
        let mut shells: Vec<f64> = Vec::new();
        let mut previous: Option<f64> = None;
        let mut half_width = half_width_hint;
        let mut last_change = f64::INFINITY;
        let mut panels = panels_core / 2;

        while 2.0 * half_width <= MAX_HALF_WIDTH {
            let shell_rule = Quadrature {
                abs_tol: self.abs_tol.max(1e-3 * self.rel_tol * truncated.abs()),
                initial_panels: panels,
                ..*self
            };
            let left = shell_rule.try_integrate(&mut f, -2.0 * half_width, -half_width)?;
            let right = shell_rule.try_integrate(&mut f, half_width, 2.0 * half_width)?;
            let shell = left.value + right.value;
            truncated += shell;
            quad_error += left.abs_error_estimate + right.abs_error_estimate;
            evaluations += left.evaluations + right.evaluations;
            shells.push(shell);
            half_width *= 2.0;
            panels = (panels * 2).min(MAX_SHELL_PANELS);

            if let [.., s0, s1] = shells[..] {
                let tail = s1 - (s0 - 2.0 * s1) / 7.0;
                let extrapolated = truncated + tail;
                if let Some(prev) = previous {
                    last_change = (extrapolated - prev).abs();
                    let tolerance = self.abs_tol.max(self.rel_tol * extrapolated.abs());
                    if last_change + quad_error <= tolerance {
                        return Ok(QuadratureResult {
                            value: extrapolated,
                            abs_error_estimate: last_change + quad_error,
                            evaluations,
                        });
                    }
                }
                previous = Some(extrapolated);
            }
        }

        Err(Error::TailBoundFailure {
            estimate: last_change + quad_error,
            tolerance: self.abs_tol.max(self.rel_tol * truncated.abs()),
            half_width,
        })
    }
}

fn kronrod15<F>(f: &mut F, a: f64, b: f64) -> Result<Segment>
where
    F: FnMut(f64) -> Result<f64>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut eval = |x: f64| -> Result<f64> {
        let y = f(x)?;
        if y.is_finite() {
            Ok(y)
        } else {
            Err(Error::NonFiniteIntegrand { x })
        }
    };

    let f_center = eval(center)?;
    let mut res_gauss = f_center * WG[3];
    let mut res_kronrod = f_center * WGK[7];
    let mut res_abs = res_kronrod.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];

    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = eval(center - dx)?;
        let f2 = eval(center + dx)?;
        fv1[j] = f1;
        fv2[j] = f2;
        let pair = f1 + f2;
        res_kronrod += WGK[j] * pair;
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_gauss += WG[j / 2] * pair;
        }
    }

    let mean = 0.5 * res_kronrod;
    let mut res_asc = WGK[7] * (f_center - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }

    let abs_half = half.abs();
    let value = res_kronrod * half;
    res_abs *= abs_half;
    res_asc *= abs_half;
    let mut error = ((res_kronrod - res_gauss) * half).abs();
    if res_asc != 0.0 && error != 0.0 {
        error = res_asc * (200.0 * error / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * res_abs);
    }

    Ok(Segment { a, b, value, error })
}
