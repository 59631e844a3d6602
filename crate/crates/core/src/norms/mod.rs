//! Alexiewicz norms of residuals and windowed L¹ norms.

mod search;

use std::f64::consts::PI;

use crate::convolution::{ConvolvedSignal, ResidualAntiderivative, Source};
use crate::error::{Error, Result};
use crate::quadrature;
use crate::signals::{Interval, SignedMeasure, StepFunction};

/// Certified lower bound on an Alexiewicz norm.
///
/// The true norm lies in `[value, value + resolution + tail_bound]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormResult {
    pub value: f64,
    /// Interval `(α, β)` whose residual integral realizes `value`.
    pub attained_at: Interval,
    /// Bound on what the search may have missed inside its window.
    pub resolution: f64,
    /// Bound on what lies beyond the window.
    pub tail_bound: f64,
}

impl NormResult {
    /// Certified upper bound on the norm.
    pub fn upper(&self) -> f64 {
        self.value + self.resolution + self.tail_bound
    }
}

/// Search parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct NormOptions {
    /// Initial grid density multiplier; doubling it refines the grid nestedly.
    pub density: u32,
    /// Refinement stops once the upper bound is within this fraction of the value.
    pub rel_target: f64,
    /// Absolute floor on the refinement target.
    pub abs_target: f64,
    /// Budget of residual evaluations.
    pub max_evaluations: usize,
    /// Whether to bisect cells after the initial grid.
    pub refine: bool,
    /// Search window; defaults to the residual's accuracy window.
    pub window: Option<Interval>,
    /// Largest tolerated tail bound, relative to the value.
    pub max_tail_rel: f64,
}

impl Default for NormOptions {
    fn default() -> Self {
        Self {
            density: 1,
            rel_target: 1e-3,
            abs_target: 1e-14,
            max_evaluations: 4_000_000,
            refine: true,
            window: None,
            max_tail_rel: 1e-2,
        }
    }
}

impl NormOptions {
    pub fn validate(&self) -> Result<()> {
        let ok = self.density > 0
            && self.rel_target > 0.0
            && self.abs_target > 0.0
            && self.max_evaluations > 0
            && self.max_tail_rel > 0.0;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidConfig(format!(
                "invalid norm options {self:?}"
            )))
        }
    }
}

/// `‖μ − μ∗k‖ = sup_{α<β} |G(β−) − G(α)|` with default options.
pub fn alexiewicz_norm(g: &ResidualAntiderivative) -> Result<NormResult> {
    alexiewicz_norm_with(g, &NormOptions::default())
}

pub fn alexiewicz_norm_with(g: &ResidualAntiderivative, opts: &NormOptions) -> Result<NormResult> {
    search::certified_oscillation(g, opts)
}

/// `sup_{α<β} |μ((α,β)) − ∫_α^β μ∗k|` for the measure `conv` was built from.
pub fn measure_residual_norm(mu: &SignedMeasure, conv: &ConvolvedSignal) -> Result<NormResult> {
    measure_residual_norm_with(mu, conv, &NormOptions::default())
}

pub fn measure_residual_norm_with(
    mu: &SignedMeasure,
    conv: &ConvolvedSignal,
    opts: &NormOptions,
) -> Result<NormResult> {
    if Source::from(mu.clone()) != *conv.source() {
        return Err(Error::InvalidConfig(
            "convolution was built from a different measure".into(),
        ));
    }
    alexiewicz_norm_with(&conv.residual_antiderivative(), opts)
}

/// Exact Alexiewicz norm of a step function: the oscillation of its
/// piecewise linear antiderivative, attained at breakpoints.
pub fn step_alexiewicz_norm(f: &StepFunction) -> NormResult {
    let xs = f.breakpoints();
    let mut acc = 0.0;
    let (mut lo, mut hi) = ((0.0, 0usize), (0.0, 0usize));
    for (k, c) in f.values().iter().enumerate() {
        acc += c * (xs[k + 1] - xs[k]);
        if acc < lo.0 {
            lo = (acc, k + 1);
        }
        if acc > hi.0 {
            hi = (acc, k + 1);
        }
    }
    let (i, j) = if lo.1 < hi.1 {
        (lo.1, hi.1)
    } else {
        (hi.1, lo.1)
    };
    let attained_at = if i < j {
        Interval {
            alpha: xs[i],
            beta: xs[j],
        }
    } else {
        Interval {
            alpha: xs[0],
            beta: xs[xs.len() - 1],
        }
    };
    NormResult {
        value: hi.0 - lo.0,
        attained_at,
        resolution: 0.0,
        tail_bound: 0.0,
    }
}

/// Integrand of a windowed L¹ norm.
#[derive(Debug, Clone, Copy)]
pub enum L1Target<'a> {
    Step(&'a StepFunction),
    Convolved(&'a ConvolvedSignal),
}

impl<'a> From<&'a StepFunction> for L1Target<'a> {
    fn from(f: &'a StepFunction) -> Self {
        Self::Step(f)
    }
}

impl<'a> From<&'a ConvolvedSignal> for L1Target<'a> {
    fn from(c: &'a ConvolvedSignal) -> Self {
        Self::Convolved(c)
    }
}

/// `∫_window |target|`.
///
/// Convolutions are integrated on quarter-period panels of the fastest
/// kernel frequency, each split at sign changes, to an absolute error far
/// below `1e-6` per unit window length.
pub fn l1_norm_windowed<'a>(target: impl Into<L1Target<'a>>, window: &Interval) -> Result<f64> {
    match target.into() {
        L1Target::Step(f) => Ok(f
            .breakpoints()
            .windows(2)
            .zip(f.values())
            .map(|(w, c)| {
                let overlap = w[1].min(window.beta) - w[0].max(window.alpha);
                if overlap > 0.0 {
                    c.abs() * overlap
                } else {
                    0.0
                }
            })
            .sum()),
        L1Target::Convolved(c) => convolved_l1(c, window),
    }
}

fn convolved_l1(c: &ConvolvedSignal, window: &Interval) -> Result<f64> {
    let k = c.kernel();
    let (s1, s2) = k.frequencies();
    let real = s1 == s2;
    let panel = 0.5 * PI / k.max_frequency();
    let count = (window.width() / panel).ceil().max(1.0);
    if count > 1e8 {
        return Err(Error::InvalidConfig(format!(
            "window {window:?} too long for the kernel frequency"
        )));
    }
    let count = count as usize;
    let h = window.width() / count as f64;
    let tol = 1e-10 * h;
    let modulus = |x: f64| c.value(x).norm();
    let signed = |x: f64| c.value(x).re;
    let mut total = 0.0;
    let mut a = window.alpha;
    let mut fa = signed(a);
    for i in 1..=count {
        let b = if i == count {
            window.beta
        } else {
            window.alpha + i as f64 * h
        };
        if !real {
            total += quadrature::integrate(&modulus, a, b, tol).value;
            a = b;
            continue;
        }
        let fb = signed(b);
        if fa * fb < 0.0 {
            let root = bisect_root(&signed, a, b, fa);
            total += quadrature::integrate(&signed, a, root, tol).value.abs();
            total += quadrature::integrate(&signed, root, b, tol).value.abs();
        } else {
            total += quadrature::integrate(&signed, a, b, tol).value.abs();
        }
        a = b;
        fa = fb;
    }
    Ok(total)
}

fn bisect_root<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64, mut fa: f64) -> f64 {
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let fm = f(m);
        if fm == 0.0 {
            return m;
        }
        if (fm < 0.0) == (fa < 0.0) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}
