//! Dirichlet kernel `D_S(x) = sin(Sx)/(πx)`, the asymmetric kernel
//! `A_{S1,S2}(x) = (e^{ixS2} − e^{−ixS1})/(2πix)` and its cross term
//! `B_{S1,S2}`, with `A = D_{S1}/2 + D_{S2}/2 + B`.
//!
//! Besides point values, [`KernelSpec`] exposes the primitives every
//! closed-form convolution is assembled from: the running integral of the
//! kernel, the residual kernel `R(y) = H(y) − ∫_{−∞}^y k` and its
//! antiderivative, plus rigorous magnitude bounds used by the norm search.

use std::f64::consts::{FRAC_1_PI, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::special_functions::{
    ci_antiderivative_unchecked, ci_bound, ci_unchecked, cin_unchecked,
    si_antiderivative_unchecked, si_tail_bound, si_tail_unchecked, si_unchecked,
};

/// Below this value of `|S·x|` removable singularities use a Taylor branch.
const TAYLOR_LIMIT: f64 = 1.0e-4;

/// Above this value of `S·|y|` the cosine-integral differences are taken
/// directly instead of through `Cin`.
const CI_DIRECT_LIMIT: f64 = 4.0;

const FRAC_1_2PI: f64 = 0.5 * FRAC_1_PI;

fn check_frequency(name: &str, s: f64) -> Result<()> {
    if s.is_finite() && s > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "{name} must be positive and finite, got {s}"
        )))
    }
}

/// Dirichlet kernel `sin(Sx)/(πx)`, with value `S/π` at the origin.
pub fn dirichlet(s: f64, x: f64) -> Result<f64> {
    check_frequency("S", s)?;
    if !x.is_finite() {
        return Err(Error::Domain(format!("x must be finite, got {x}")));
    }
    Ok(dirichlet_unchecked(s, x))
}

/// Asymmetric kernel from its exponential form.
pub fn asymmetric_kernel(s1: f64, s2: f64, x: f64) -> Result<Complex64> {
    check_frequency("S1", s1)?;
    check_frequency("S2", s2)?;
    if !x.is_finite() {
        return Err(Error::Domain(format!("x must be finite, got {x}")));
    }
    if (s1.max(s2) * x).abs() < TAYLOR_LIMIT {
        // (1/2π)∫_{−S1}^{S2} e^{isx} ds expanded to second order in x.
        let m1 = 0.5 * (s2 * s2 - s1 * s1);
        let m2 = (s2.powi(3) + s1.powi(3)) / 3.0;
        let m3 = 0.25 * (s2.powi(4) - s1.powi(4));
        return Ok(
            Complex64::new(s1 + s2 - 0.5 * m2 * x * x, m1 * x - m3 * x.powi(3) / 6.0) * FRAC_1_2PI,
        );
    }
    // e^{iθ} − 1 = −2 sin²(θ/2) + i sin θ keeps the numerator accurate for small x.
    let em1 = |theta: f64| {
        let h = (0.5 * theta).sin();
        Complex64::new(-2.0 * h * h, theta.sin())
    };
    let numer = em1(s2 * x) - em1(-s1 * x);
    Ok(numer / Complex64::new(0.0, 2.0 * PI * x))
}

/// Cross term `B = sin(((S1+S2)/2)x)·sin(((S1−S2)/2)x)/(πix)`; odd, zero at the origin.
pub fn cross_term(s1: f64, s2: f64, x: f64) -> Result<Complex64> {
    check_frequency("S1", s1)?;
    check_frequency("S2", s2)?;
    if !x.is_finite() {
        return Err(Error::Domain(format!("x must be finite, got {x}")));
    }
    Ok(cross_term_unchecked(s1, s2, x))
}

pub(crate) fn dirichlet_unchecked(s: f64, x: f64) -> f64 {
    let u = s * x;
    if u.abs() < TAYLOR_LIMIT {
        let u2 = u * u;
        s * FRAC_1_PI * (1.0 - u2 / 6.0 * (1.0 - u2 / 20.0))
    } else {
        u.sin() / (PI * x)
    }
}

pub(crate) fn cross_term_unchecked(s1: f64, s2: f64, x: f64) -> Complex64 {
    let sigma = 0.5 * (s1 + s2);
    let delta = 0.5 * (s1 - s2);
    let im = if (sigma * x).abs() < TAYLOR_LIMIT {
        let x2 = x * x;
        -sigma * delta * x * (1.0 - (sigma * sigma + delta * delta) * x2 / 6.0) * FRAC_1_PI
    } else {
        -(sigma * x).sin() * (delta * x).sin() / (PI * x)
    };
    Complex64::new(0.0, im)
}

/// Kernel parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KernelSpec {
    Symmetric { s: f64 },
    Asymmetric { s1: f64, s2: f64 },
}

impl KernelSpec {
    pub fn symmetric(s: f64) -> Result<Self> {
        check_frequency("S", s)?;
        Ok(Self::Symmetric { s })
    }

    pub fn asymmetric(s1: f64, s2: f64) -> Result<Self> {
        check_frequency("S1", s1)?;
        check_frequency("S2", s2)?;
        Ok(Self::Asymmetric { s1, s2 })
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Self::Symmetric { s } => check_frequency("S", s),
            Self::Asymmetric { s1, s2 } => check_frequency("S1", s1).and(check_frequency("S2", s2)),
        }
    }

    /// Truncation frequencies `(S1, S2)` of the inversion integral over `[−S1, S2]`.
    pub fn frequencies(&self) -> (f64, f64) {
        match *self {
            Self::Symmetric { s } => (s, s),
            Self::Asymmetric { s1, s2 } => (s1, s2),
        }
    }

    pub fn max_frequency(&self) -> f64 {
        let (a, b) = self.frequencies();
        a.max(b)
    }

    pub fn min_frequency(&self) -> f64 {
        let (a, b) = self.frequencies();
        a.min(b)
    }

    fn skew(&self) -> Option<(f64, f64)> {
        let (s1, s2) = self.frequencies();
        (s1 != s2).then_some((s1, s2))
    }

    /// Kernel value `k(y)`.
    pub fn value(&self, y: f64) -> Complex64 {
        match self.skew() {
            None => Complex64::new(dirichlet_unchecked(self.frequencies().0, y), 0.0),
            Some((s1, s2)) => {
                let even = 0.5 * dirichlet_unchecked(s1, y) + 0.5 * dirichlet_unchecked(s2, y);
                Complex64::new(even, 0.0) + cross_term_unchecked(s1, s2, y)
            }
        }
    }

    /// `∫_{−∞}^y k − 1/2`.
    pub fn centered_integral(&self, y: f64) -> Complex64 {
        let kc = |s: f64| si_unchecked(s * y) * FRAC_1_PI;
        match self.skew() {
            None => Complex64::new(kc(self.frequencies().0), 0.0),
            Some((s1, s2)) => Complex64::new(
                0.5 * kc(s1) + 0.5 * kc(s2),
                -FRAC_1_2PI * ci_difference(s1, s2, y),
            ),
        }
    }

    /// Residual kernel `R(y) = H(y) − ∫_{−∞}^y k`, right-continuous (`H(0) = 1`).
    pub fn residual(&self, y: f64) -> Complex64 {
        let r = |s: f64| {
            if y >= 0.0 {
                si_tail_unchecked(s * y) * FRAC_1_PI
            } else {
                -si_tail_unchecked(-s * y) * FRAC_1_PI
            }
        };
        match self.skew() {
            None => Complex64::new(r(self.frequencies().0), 0.0),
            Some((s1, s2)) => Complex64::new(
                0.5 * r(s1) + 0.5 * r(s2),
                FRAC_1_2PI * ci_difference(s1, s2, y),
            ),
        }
    }

    /// `∫_0^y R`; even in `y` for the real part, bounded, with limit
    /// `(1/(πS1) + 1/(πS2))/2` at `±∞`.
    pub fn residual_antiderivative(&self, y: f64) -> Complex64 {
        let q = |s: f64| {
            let u = s * y.abs();
            let h = (0.5 * u).sin();
            (u * si_tail_unchecked(u) + 2.0 * h * h) * FRAC_1_PI / s
        };
        match self.skew() {
            None => Complex64::new(q(self.frequencies().0), 0.0),
            Some((s1, s2)) => Complex64::new(
                0.5 * q(s1) + 0.5 * q(s2),
                FRAC_1_2PI * ci_difference_antiderivative(s1, s2, y),
            ),
        }
    }

    /// `∫_0^y (∫_{−∞}^u k − 1/2) du`.
    pub fn centered_integral_antiderivative(&self, y: f64) -> Complex64 {
        let p = |s: f64| si_antiderivative_unchecked(s * y) * FRAC_1_PI / s;
        match self.skew() {
            None => Complex64::new(p(self.frequencies().0), 0.0),
            Some((s1, s2)) => Complex64::new(
                0.5 * p(s1) + 0.5 * p(s2),
                -FRAC_1_2PI * ci_difference_antiderivative(s1, s2, y),
            ),
        }
    }

    /// `sup_{|y| ≥ d} |k(y)|`.
    pub fn abs_bound(&self, d: f64) -> f64 {
        let (s1, s2) = self.frequencies();
        let near = (s1 + s2) * FRAC_1_2PI;
        if d > 0.0 {
            near.min(FRAC_1_PI / d)
        } else {
            near
        }
    }

    /// `sup_{|y| ≥ d} |k'(y)|`.
    pub fn deriv_bound(&self, d: f64) -> f64 {
        let (s1, s2) = self.frequencies();
        let near = (s1 * s1 + s2 * s2) * 0.25 * FRAC_1_PI;
        if d > 0.0 {
            near.min((s1 + s2) * FRAC_1_2PI / d + FRAC_1_PI / (d * d))
        } else {
            near
        }
    }

    /// `sup_{|y| ≥ d} |R(y)|`.
    pub fn residual_bound(&self, d: f64) -> f64 {
        let (s1, s2) = self.frequencies();
        let even = 0.5 * FRAC_1_PI * (si_tail_bound(s1 * d) + si_tail_bound(s2 * d));
        match self.skew() {
            None => even,
            Some(_) => {
                if d * s1.min(s2) < 1.0 {
                    f64::INFINITY
                } else {
                    even + FRAC_1_2PI * (ci_bound(s1 * d) + ci_bound(s2 * d))
                }
            }
        }
    }

    /// `sup_{|y| ≥ d} |Q(y) − Q(±∞)|` for `Q = residual_antiderivative`.
    pub fn residual_antiderivative_deviation_bound(&self, d: f64) -> f64 {
        let (s1, s2) = self.frequencies();
        let qdev = |s: f64| {
            let u = s * d;
            let unit = if u > 0.0 { (2.0 / u).min(1.0) } else { 1.0 };
            unit * FRAC_1_PI / s
        };
        let even = 0.5 * (qdev(s1) + qdev(s2));
        match self.skew() {
            None => even,
            Some(_) => {
                if d * s1.min(s2) < 1.0 {
                    f64::INFINITY
                } else {
                    even + FRAC_1_2PI * (2.0 / (s1 * s1 * d) + 2.0 / (s2 * s2 * d))
                }
            }
        }
    }
}

/// `W(y) = Ci(S2|y|) − Ci(S1|y|)`, continuous through `W(0) = ln(S2/S1)`.
fn ci_difference(s1: f64, s2: f64, y: f64) -> f64 {
    let ay = y.abs();
    if s1.min(s2) * ay > CI_DIRECT_LIMIT {
        ci_unchecked(s2 * ay) - ci_unchecked(s1 * ay)
    } else {
        (s2 / s1).ln() - cin_unchecked(s2 * ay) + cin_unchecked(s1 * ay)
    }
}

/// `V(y) = ∫_0^y W`, odd, decaying like `1/y`.
fn ci_difference_antiderivative(s1: f64, s2: f64, y: f64) -> f64 {
    let ay = y.abs();
    let v = if s1.min(s2) * ay > CI_DIRECT_LIMIT {
        ci_antiderivative_unchecked(s2 * ay) / s2 - ci_antiderivative_unchecked(s1 * ay) / s1
    } else {
        ay * ci_difference(s1, s2, ay) - (s2 * ay).sin() / s2 + (s1 * ay).sin() / s1
    };
    if y < 0.0 {
        -v
    } else {
        v
    }
}
