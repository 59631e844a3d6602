//! Cantor–Lebesgue measure: the Cantor function by exact ternary recursion,
//! and Stieltjes integrals `∫ g dμ` by Gauss rules built for the measure
//! itself, applied on self-similar cylinders.

use std::sync::OnceLock;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use super::Interval;

/// Nodes per cylinder in the Gauss–Cantor rule.
pub const RULE_SIZE: usize = 8;

/// Depth of the discrete approximation the rule is derived from.
const DISCRETIZATION_DEPTH: u32 = 16;

/// Bits of the fixed-point representation used by the recursion.
const FIXED_BITS: u32 = 117;

/// Cantor function of `support` at `x`, recursion truncated at `depth`
/// (absolute error `≤ 2^{−depth−1}`).
pub fn cdf_on(support: &Interval, x: f64, depth: u32) -> f64 {
    if x <= support.alpha {
        return 0.0;
    }
    if x >= support.beta {
        return 1.0;
    }
    unit_cdf((x - support.alpha) / support.width(), depth)
}

/// Cantor function on `[0, 1]`.
///
/// The argument is held as an exact dyadic fraction `N / 2^117`, so the
/// ternary digit extraction `u ↦ 3u` or `u ↦ 3u − 2` introduces no rounding.
pub fn unit_cdf(u: f64, depth: u32) -> f64 {
    if u <= 0.0 {
        return 0.0;
    }
    if u >= 1.0 {
        return 1.0;
    }
    // Tiny arguments sit in the left third for many levels; scaling by 3
    // there involves no subtraction, so plain floating point is fine.
    let floor = 2f64.powi(-(FIXED_BITS as i32) + 53);
    let mut u = u;
    let mut depth = depth;
    let mut scale = 1.0;
    while u < floor {
        if depth == 0 {
            return 0.5 * scale;
        }
        u *= 3.0;
        scale *= 0.5;
        depth -= 1;
    }
    let denom: u128 = 1u128 << FIXED_BITS;
    let mut num = (u * 2f64.powi(FIXED_BITS as i32)) as u128;
    let mut acc = 0.0;
    for _ in 0..depth {
        let three = 3 * num;
        if three < denom {
            num = three;
        } else if three <= 2 * denom {
            return acc + 0.5 * scale;
        } else {
            acc += 0.5 * scale;
            num = three - 2 * denom;
        }
        scale *= 0.5;
        if num == 0 {
            return acc;
        }
    }
    acc + 0.5 * scale
}

/// Gauss rule for the unit Cantor measure: exact on polynomials of degree
/// `< 2·RULE_SIZE` up to the discretization error of its construction.
#[derive(Debug, Clone)]
pub struct GaussCantorRule {
    pub nodes: [f64; RULE_SIZE],
    pub weights: [f64; RULE_SIZE],
}

pub fn gauss_rule() -> &'static GaussCantorRule {
    static RULE: OnceLock<GaussCantorRule> = OnceLock::new();
    RULE.get_or_init(build_rule)
}

fn build_rule() -> GaussCantorRule {
    // Discrete measure: midpoints of the depth-d cylinders, equal weights.
    let n = 1usize << DISCRETIZATION_DEPTH;
    let width = 3f64.powi(-(DISCRETIZATION_DEPTH as i32));
    let points: Vec<f64> = (0..n)
        .map(|k| {
            let mut left = 0.0;
            let mut step = 1.0;
            for bit in (0..DISCRETIZATION_DEPTH).rev() {
                step /= 3.0;
                if (k >> bit) & 1 == 1 {
                    left += 2.0 * step;
                }
            }
            // Centre on 1/2 so the recurrence sees a symmetric measure.
            left + 0.5 * width - 0.5
        })
        .collect();
    let w = 1.0 / n as f64;

    // Discretized Stieltjes procedure for the three-term recurrence.
    let mut alpha = [0.0; RULE_SIZE];
    let mut beta = [0.0; RULE_SIZE];
    let mut p_prev = vec![0.0; n];
    let mut p_cur = vec![1.0; n];
    let mut norm_prev = 1.0;
    for k in 0..RULE_SIZE {
        let norm: f64 = p_cur.iter().map(|p| w * p * p).sum();
        let a: f64 = points
            .iter()
            .zip(&p_cur)
            .map(|(t, p)| w * t * p * p)
            .sum::<f64>()
            / norm;
        alpha[k] = a;
        beta[k] = if k == 0 { norm } else { norm / norm_prev };
        let b = beta[k];
        let next: Vec<f64> = points
            .iter()
            .zip(p_cur.iter().zip(&p_prev))
            .map(|(t, (pc, pp))| (t - a) * pc - if k == 0 { 0.0 } else { b * pp })
            .collect();
        p_prev = std::mem::replace(&mut p_cur, next);
        norm_prev = norm;
    }

    let jacobi = DMatrix::from_fn(RULE_SIZE, RULE_SIZE, |i, j| {
        if i == j {
            alpha[i]
        } else if i + 1 == j {
            beta[j].sqrt()
        } else if j + 1 == i {
            beta[i].sqrt()
        } else {
            0.0
        }
    });
    let eig = SymmetricEigen::new(jacobi);
    let mut pairs: Vec<(f64, f64)> = (0..RULE_SIZE)
        .map(|i| {
            let v0 = eig.eigenvectors[(0, i)];
            (eig.eigenvalues[i] + 0.5, v0 * v0)
        })
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let total: f64 = pairs.iter().map(|p| p.1).sum();
    let mut rule = GaussCantorRule {
        nodes: [0.0; RULE_SIZE],
        weights: [0.0; RULE_SIZE],
    };
    for (i, (x, wt)) in pairs.into_iter().enumerate() {
        rule.nodes[i] = x;
        rule.weights[i] = wt / total;
    }
    rule
}

/// Result of a Stieltjes integration with its error estimate.
#[derive(Debug, Clone, Copy)]
pub struct StieltjesIntegral {
    pub value: Complex64,
    pub error: f64,
}

/// `∫ g dμ` for the Cantor measure on `support`.
///
/// Cylinders are split self-similarly (left and right thirds, half the
/// mass each) until the parent rule and the sum of its children agree to
/// `tol` times the cylinder mass, but never below `min_depth` and never
/// beyond `max_depth`.
pub fn integrate<G>(
    g: &G,
    support: &Interval,
    min_depth: u32,
    max_depth: u32,
    tol: f64,
) -> StieltjesIntegral
where
    G: Fn(f64) -> Complex64,
{
    let rule = gauss_rule();
    let apply = |lo: f64, w: f64, mass: f64| -> Complex64 {
        let mut s = Complex64::new(0.0, 0.0);
        for (x, wt) in rule.nodes.iter().zip(&rule.weights) {
            s += g(lo + w * x) * *wt;
        }
        s * mass
    };
    let max_depth = max_depth.max(min_depth);
    let mut value = Complex64::new(0.0, 0.0);
    let mut error = 0.0;
    // Explicit stack of (left end, width, mass, coarse estimate, depth).
    let root = apply(support.alpha, support.width(), 1.0);
    let mut stack = vec![(support.alpha, support.width(), 1.0, root, 0u32)];
    while let Some((lo, w, mass, coarse, depth)) = stack.pop() {
        let third = w / 3.0;
        let half = 0.5 * mass;
        let left = apply(lo, third, half);
        let right = apply(lo + 2.0 * third, third, half);
        let fine = left + right;
        let diff = (fine - coarse).norm();
        let child_depth = depth + 1;
        if child_depth >= max_depth || (child_depth >= min_depth && diff <= tol * mass) {
            value += fine;
            error += diff;
        } else {
            stack.push((lo + 2.0 * third, third, half, right, child_depth));
            stack.push((lo, third, half, left, child_depth));
        }
    }
    StieltjesIntegral { value, error }
}
