//! Sine integral and friends.
//!
//! `Si(x) = ∫₀ˣ sin(t)/t dt` is evaluated by its Maclaurin series for
//! `|x| ≤ 4` and, above that, through the auxiliary functions obtained from
//! the continued fraction of `E₁(ix)`. The continued fraction also yields the
//! cosine integral, which the asymmetric kernel needs through the entire
//! function `Cin(x) = ∫₀ˣ (1 − cos t)/t dt`.
//!
//! Besides the public checked entry points, the crate uses unchecked
//! variants in inner loops; callers there guarantee finite arguments.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Euler–Mascheroni constant.
const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Below this magnitude the power series is used.
const SERIES_LIMIT: f64 = 4.0;

/// Above this magnitude `Si` returns the two-term asymptotic value.
const ASYMPTOTIC_LIMIT: f64 = 1.0e6;

/// Absolute error bound for a computed value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalAccuracy {
    pub abs_tol: f64,
}

impl EvalAccuracy {
    pub fn new(abs_tol: f64) -> Self {
        Self { abs_tol }
    }
}

/// Documented bound on `|si(x) − Si(x)|` for `|x| ≤ 1e6`.
pub const SI_ACCURACY: EvalAccuracy = EvalAccuracy { abs_tol: 1.0e-13 };

fn check_finite(x: f64) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("argument must be finite, got {x}")))
    }
}

/// Sine integral `Si(x)`.
pub fn si(x: f64) -> Result<f64> {
    check_finite(x)?;
    Ok(si_unchecked(x))
}

/// `∫₀ˣ Si(u) du = x·Si(x) + cos(x) − 1`. Even in `x`.
pub fn si_antiderivative(x: f64) -> Result<f64> {
    check_finite(x)?;
    Ok(si_antiderivative_unchecked(x))
}

/// Accuracy of [`si`] at `x`; degrades to `~1/x⁵` beyond the asymptotic switch,
/// which is still far below the bound in practice.
pub fn si_accuracy(x: f64) -> EvalAccuracy {
    let ax = x.abs();
    if ax <= ASYMPTOTIC_LIMIT {
        SI_ACCURACY
    } else {
        EvalAccuracy::new(SI_ACCURACY.abs_tol.max(24.0 / ax.powi(5)))
    }
}

pub(crate) fn si_unchecked(x: f64) -> f64 {
    let ax = x.abs();
    let v = if ax <= SERIES_LIMIT {
        si_series(ax)
    } else {
        FRAC_PI_2 - si_tail_unchecked(ax)
    };
    v.copysign(x)
}

/// `π/2 − Si(x)` for `x ≥ 0`, without cancellation for large `x`.
pub(crate) fn si_tail_unchecked(x: f64) -> f64 {
    debug_assert!(x >= 0.0);
    if x <= SERIES_LIMIT {
        FRAC_PI_2 - si_series(x)
    } else if x > ASYMPTOTIC_LIMIT {
        let (s, c) = x.sin_cos();
        let x2 = x * x;
        c / x * (1.0 - 2.0 / x2) + s / x2 * (1.0 - 6.0 / x2)
    } else {
        let cf = e1_imaginary_cf(x);
        let (s, c) = x.sin_cos();
        s * cf.re - c * cf.im
    }
}

pub(crate) fn si_antiderivative_unchecked(x: f64) -> f64 {
    let half = 0.5 * x;
    let s = half.sin();
    x * si_unchecked(x) - 2.0 * s * s
}

/// Cosine integral `Ci(x)` for `x > 0`.
pub(crate) fn ci_unchecked(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    if x <= SERIES_LIMIT {
        EULER_GAMMA + x.ln() - cin_series(x)
    } else {
        let cf = e1_imaginary_cf(x);
        let (s, c) = x.sin_cos();
        -(c * cf.re + s * cf.im)
    }
}

/// `Cin(x) = ∫₀ˣ (1 − cos t)/t dt`, entire and even.
pub(crate) fn cin_unchecked(x: f64) -> f64 {
    let ax = x.abs();
    if ax <= SERIES_LIMIT {
        cin_series(ax)
    } else {
        EULER_GAMMA + ax.ln() - ci_unchecked(ax)
    }
}

/// `x·Ci(x) − sin(x)`, the antiderivative of `Ci`, for `x ≥ 0`.
pub(crate) fn ci_antiderivative_unchecked(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * ci_unchecked(x) - x.sin()
    }
}

fn si_series(x: f64) -> f64 {
    // Σ (−1)ⁿ x^{2n+1} / ((2n+1)·(2n+1)!)
    let x2 = x * x;
    let mut term = x; // x^{2n+1}/(2n+1)!
    let mut sum = x;
    let mut n = 0u32;
    loop {
        n += 1;
        let k = f64::from(2 * n);
        term *= -x2 / (k * (k + 1.0));
        let add = term / (k + 1.0);
        sum += add;
        if add.abs() <= 1e-17 * sum.abs().max(1e-300) {
            break;
        }
    }
    sum
}

fn cin_series(x: f64) -> f64 {
    // Σ_{n≥1} (−1)^{n+1} x^{2n} / (2n·(2n)!)
    if x == 0.0 {
        return 0.0;
    }
    let x2 = x * x;
    let mut term = 1.0; // (−1)^{n+1} x^{2n}/(2n)!
    let mut sum = 0.0;
    let mut n = 0u32;
    loop {
        n += 1;
        let k = f64::from(2 * n);
        term *= -x2 / ((k - 1.0) * k);
        let add = -term / k;
        sum += add;
        if add.abs() <= 1e-17 * sum.abs() {
            break;
        }
    }
    sum
}

/// `e^{ix}·E₁(ix)` by the modified Lentz evaluation of the even continued
/// fraction `1/(z+1 − 1²/(z+3 − 2²/(z+5 − …)))`, `z = ix`.
fn e1_imaginary_cf(x: f64) -> Complex64 {
    const TINY: f64 = 1.0e-300;
    const EPS: f64 = 1.0e-16;
    let mut b = Complex64::new(1.0, x);
    let mut c = Complex64::new(1.0 / TINY, 0.0);
    let mut d = b.inv();
    let mut h = d;
    for i in 2..10_000u32 {
        let a = -f64::from((i - 1) * (i - 1));
        b += 2.0;
        d = (d * a + b).inv();
        c = b + a / c;
        let del = c * d;
        h *= del;
        if (del.re - 1.0).abs() + del.im.abs() < EPS {
            break;
        }
    }
    h
}

/// Rigorous bound on `|π/2 − Si(u)|` over `u ≥ u0 ≥ 0` (two integrations by parts).
pub(crate) fn si_tail_bound(u0: f64) -> f64 {
    if u0 <= 0.0 {
        FRAC_PI_2
    } else {
        FRAC_PI_2.min(2.0 / u0)
    }
}

/// Rigorous bound on `|Ci(u)|` over `u ≥ u0 > 0`.
pub(crate) fn ci_bound(u0: f64) -> f64 {
    if u0 <= 0.0 {
        f64::INFINITY
    } else {
        2.0 / u0
    }
}
