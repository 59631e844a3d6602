//! Independent oracles for integration tests: Gauss–Legendre quadrature
//! with interval halving, and direct quadrature of convolution integrals.
#![allow(dead_code)]

use std::f64::consts::PI;
use std::sync::OnceLock;

use alexiewicz::StepFunction;
use num_complex::Complex64;

const ORDER: usize = 20;

/// Gauss–Legendre nodes and weights on `[−1, 1]` by Newton iteration on `P_n`.
fn legendre_rule() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| {
        let n = ORDER;
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            nodes[i] = x;
            weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
        (nodes, weights)
    })
}

fn panel<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> Complex64 {
    let (nodes, weights) = legendre_rule();
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    nodes
        .iter()
        .zip(weights)
        .map(|(x, w)| f(c + h * x) * *w)
        .sum::<Complex64>()
        * h
}

/// `∫_a^b f`, halving until two refinements agree to `tol`.
pub fn integrate_complex<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64, tol: f64) -> Complex64 {
    fn rec<F: Fn(f64) -> Complex64>(
        f: &F,
        a: f64,
        b: f64,
        whole: Complex64,
        tol: f64,
        depth: u32,
    ) -> Complex64 {
        let m = 0.5 * (a + b);
        let left = panel(f, a, m);
        let right = panel(f, m, b);
        if depth >= 30 || (left + right - whole).norm() <= tol {
            left + right
        } else {
            rec(f, a, m, left, 0.5 * tol, depth + 1) + rec(f, m, b, right, 0.5 * tol, depth + 1)
        }
    }
    if a == b {
        return Complex64::new(0.0, 0.0);
    }
    rec(f, a, b, panel(f, a, b), tol, 0)
}

pub fn integrate<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    integrate_complex(&|x| Complex64::new(f(x), 0.0), a, b, tol).re
}

/// `Si(x)` by quadrature of `sin t / t` on unit panels.
pub fn si_oracle(x: f64) -> f64 {
    let sinc = |t: f64| if t == 0.0 { 1.0 } else { t.sin() / t };
    let ax = x.abs();
    let n = ax.ceil().max(1.0) as usize;
    let h = ax / n as f64;
    let s: f64 = (0..n)
        .map(|i| integrate(&sinc, i as f64 * h, (i + 1) as f64 * h, 1e-16))
        .sum();
    s.copysign(x)
}

/// Asymmetric kernel straight from `(1/2π)∫_{−S1}^{S2} e^{isy} ds`.
pub fn asymmetric_oracle(s1: f64, s2: f64, y: f64) -> Complex64 {
    if y == 0.0 {
        return Complex64::new((s1 + s2) / (2.0 * PI), 0.0);
    }
    if (s1.max(s2) * y).abs() < 1e-3 {
        // Integrate the spectrum directly where the closed form cancels.
        return integrate_complex(&|s| Complex64::from_polar(1.0, s * y), -s1, s2, 1e-16)
            / (2.0 * PI);
    }
    (Complex64::from_polar(1.0, s2 * y) - Complex64::from_polar(1.0, -s1 * y))
        / Complex64::new(0.0, 2.0 * PI * y)
}

/// `(f ∗ k)(x)` by quadrature over the support of `f`, panels cut at the
/// breakpoints, at `t = x` and every half period of the kernel.
pub fn convolution_oracle(f: &StepFunction, s1: f64, s2: f64, x: f64) -> Complex64 {
    let period = PI / s1.max(s2);
    let bps = f.breakpoints();
    let mut total = Complex64::new(0.0, 0.0);
    for (k, c) in f.values().iter().enumerate() {
        let (a, b) = (bps[k], bps[k + 1]);
        let mut cuts = vec![a, b];
        if a < x && x < b {
            cuts.push(x);
        }
        let first = ((a - x) / period).ceil() as i64;
        let last = ((b - x) / period).floor() as i64;
        for j in first..=last {
            let t = x + j as f64 * period;
            if a < t && t < b {
                cuts.push(t);
            }
        }
        cuts.sort_by(f64::total_cmp);
        cuts.dedup();
        for w in cuts.windows(2) {
            total +=
                integrate_complex(&|t| asymmetric_oracle(s1, s2, x - t), w[0], w[1], 1e-15) * *c;
        }
    }
    total
}
