//! Objects being inverted: compactly supported step functions and finite
//! signed measures, with exact (or explicitly error-bounded) interval masses.
//!
//! Intervals are open throughout: `μ((α, β))` never counts an atom sitting
//! on an endpoint.

pub mod cantor;
pub mod json;

use std::cmp::Ordering;

use crate::error::{Error, Result};

pub use json::SignalDesc;

/// Default recursion depth for the Cantor variant (`F` error `≤ 2⁻⁴⁰`).
pub const DEFAULT_CANTOR_DEPTH: u32 = 40;

/// Open interval `(alpha, beta)` with `alpha < beta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub alpha: f64,
    pub beta: f64,
}

impl Interval {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if alpha.partial_cmp(&beta) != Some(Ordering::Less) {
            return Err(Error::InvalidSignal(format!(
                "interval needs alpha < beta, got ({alpha}, {beta})"
            )));
        }
        Ok(Self { alpha, beta })
    }

    pub fn width(&self) -> f64 {
        self.beta - self.alpha
    }

    pub fn contains(&self, x: f64) -> bool {
        self.alpha < x && x < self.beta
    }
}

/// Piecewise-constant function equal to `values[k]` on
/// `(breakpoints[k], breakpoints[k+1])` and zero outside
/// `[breakpoints[0], breakpoints[n]]`.
#[derive(Debug, Clone, PartialEq)]
pub struct StepFunction {
    breakpoints: Vec<f64>,
    values: Vec<f64>,
}

impl StepFunction {
    pub fn new(breakpoints: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidSignal(
                "step function needs at least one interval".into(),
            ));
        }
        if breakpoints.len() != values.len() + 1 {
            return Err(Error::InvalidSignal(format!(
                "{} breakpoints cannot carry {} values",
                breakpoints.len(),
                values.len()
            )));
        }
        if breakpoints.iter().chain(&values).any(|v| !v.is_finite()) {
            return Err(Error::InvalidSignal(
                "non-finite breakpoint or value".into(),
            ));
        }
        if breakpoints
            .windows(2)
            .any(|w| w[0].partial_cmp(&w[1]) != Some(Ordering::Less))
        {
            return Err(Error::InvalidSignal(
                "breakpoints must be strictly increasing".into(),
            ));
        }
        Ok(Self {
            breakpoints,
            values,
        })
    }

    /// Characteristic function of `(a, b)`.
    pub fn indicator(a: f64, b: f64) -> Result<Self> {
        Self::new(vec![a, b], vec![1.0])
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn support(&self) -> (f64, f64) {
        (self.breakpoints[0], *self.breakpoints.last().unwrap())
    }

    /// Value at `x`; at a breakpoint the value to its right is returned.
    pub fn eval(&self, x: f64) -> f64 {
        let (lo, hi) = self.support();
        if x < lo || x >= hi {
            return 0.0;
        }
        let k = self.breakpoints.partition_point(|&b| b <= x) - 1;
        self.values[k]
    }

    /// `(location, jump)` pairs; the jumps sum to zero.
    pub fn jumps(&self) -> Vec<(f64, f64)> {
        let n = self.values.len();
        (0..=n)
            .map(|j| {
                let right = if j < n { self.values[j] } else { 0.0 };
                let left = if j > 0 { self.values[j - 1] } else { 0.0 };
                (self.breakpoints[j], right - left)
            })
            .collect()
    }

    /// Exact `∫_α^β f`.
    pub fn integral_over(&self, iv: &Interval) -> f64 {
        self.pieces()
            .map(|(a, b, c)| {
                let lo = a.max(iv.alpha);
                let hi = b.min(iv.beta);
                if hi > lo {
                    c * (hi - lo)
                } else {
                    0.0
                }
            })
            .sum()
    }

    /// `F(x) = ∫_{−∞}^x f`.
    pub fn cumulative_at(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for (a, b, c) in self.pieces() {
            if x <= a {
                break;
            }
            acc += c * (b.min(x) - a);
        }
        acc
    }

    /// `Σ |c_k|·(x_k − x_{k−1})`, accumulated left to right.
    pub fn l1_norm(&self) -> f64 {
        self.pieces()
            .fold(0.0, |acc, (a, b, c)| acc + c.abs() * (b - a))
    }

    pub fn total_integral(&self) -> f64 {
        self.pieces().fold(0.0, |acc, (a, b, c)| acc + c * (b - a))
    }

    pub fn sup_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn is_one_signed(&self) -> bool {
        self.values.iter().all(|&v| v >= 0.0) || self.values.iter().all(|&v| v <= 0.0)
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self {
            breakpoints: self.breakpoints.clone(),
            values: self.values.iter().map(|v| c * v).collect(),
        }
    }

    pub fn shifted(&self, h: f64) -> Self {
        Self {
            breakpoints: self.breakpoints.iter().map(|b| b + h).collect(),
            values: self.values.clone(),
        }
    }

    /// Pointwise sum on the merged breakpoint set.
    pub fn add(&self, other: &Self) -> Self {
        let mut bps: Vec<f64> = self
            .breakpoints
            .iter()
            .chain(&other.breakpoints)
            .copied()
            .collect();
        bps.sort_by(f64::total_cmp);
        bps.dedup();
        let values = bps
            .windows(2)
            .map(|w| {
                let mid = 0.5 * (w[0] + w[1]);
                self.eval(mid) + other.eval(mid)
            })
            .collect();
        Self {
            breakpoints: bps,
            values,
        }
    }

    fn pieces(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        self.breakpoints
            .windows(2)
            .zip(&self.values)
            .map(|(w, &c)| (w[0], w[1], c))
    }
}

/// Finite signed measure on the real line.
#[derive(Debug, Clone, PartialEq)]
pub enum SignedMeasure {
    AbsCont(StepFunction),
    DiracAtom {
        location: f64,
        mass: f64,
    },
    /// Cantor–Lebesgue measure carried by `support`, total mass 1.
    CantorSelfSimilar {
        support: Interval,
        depth: u32,
    },
    Combination(Vec<(f64, SignedMeasure)>),
}

impl SignedMeasure {
    pub fn dirac(location: f64, mass: f64) -> Result<Self> {
        if !location.is_finite() || !mass.is_finite() {
            return Err(Error::InvalidSignal(
                "dirac location and mass must be finite".into(),
            ));
        }
        Ok(Self::DiracAtom { location, mass })
    }

    pub fn cantor(support: Interval) -> Self {
        Self::CantorSelfSimilar {
            support,
            depth: DEFAULT_CANTOR_DEPTH,
        }
    }

    pub fn cantor_with_depth(support: Interval, depth: u32) -> Result<Self> {
        if depth == 0 {
            return Err(Error::InvalidSignal("cantor depth must be positive".into()));
        }
        Ok(Self::CantorSelfSimilar { support, depth })
    }

    /// `μ((α, β))`.
    pub fn measure_of_interval(&self, iv: &Interval) -> f64 {
        match self {
            Self::AbsCont(f) => f.integral_over(iv),
            Self::DiracAtom { location, mass } => {
                if iv.contains(*location) {
                    *mass
                } else {
                    0.0
                }
            }
            Self::CantorSelfSimilar { support, depth } => {
                cantor::cdf_on(support, iv.beta, *depth) - cantor::cdf_on(support, iv.alpha, *depth)
            }
            Self::Combination(terms) => terms
                .iter()
                .map(|(c, m)| c * m.measure_of_interval(iv))
                .sum(),
        }
    }

    pub fn cumulative(&self) -> CumulativeFunction<'_> {
        CumulativeFunction { measure: self }
    }

    pub fn total_mass(&self) -> f64 {
        match self {
            Self::AbsCont(f) => f.total_integral(),
            Self::DiracAtom { mass, .. } => *mass,
            Self::CantorSelfSimilar { .. } => 1.0,
            Self::Combination(terms) => terms.iter().map(|(c, m)| c * m.total_mass()).sum(),
        }
    }

    /// Upper bound on the total variation `|μ|(ℝ)` (exact except for
    /// cancellation between combination terms).
    pub fn total_variation(&self) -> f64 {
        match self {
            Self::AbsCont(f) => f.l1_norm(),
            Self::DiracAtom { mass, .. } => mass.abs(),
            Self::CantorSelfSimilar { .. } => 1.0,
            Self::Combination(terms) => terms
                .iter()
                .map(|(c, m)| c.abs() * m.total_variation())
                .sum(),
        }
    }

    /// Closed hull of the support.
    pub fn support(&self) -> (f64, f64) {
        match self {
            Self::AbsCont(f) => f.support(),
            Self::DiracAtom { location, .. } => (*location, *location),
            Self::CantorSelfSimilar { support, .. } => (support.alpha, support.beta),
            Self::Combination(terms) => terms
                .iter()
                .map(|(_, m)| m.support())
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), (a, b)| {
                    (lo.min(a), hi.max(b))
                }),
        }
    }

    /// Atoms as `(location, signed mass)`, merged by location.
    pub fn atoms(&self) -> Vec<(f64, f64)> {
        let mut raw = Vec::new();
        self.collect_atoms(1.0, &mut raw);
        raw.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut merged: Vec<(f64, f64)> = Vec::with_capacity(raw.len());
        for (x, m) in raw {
            match merged.last_mut() {
                Some(last) if last.0 == x => last.1 += m,
                _ => merged.push((x, m)),
            }
        }
        merged
    }

    fn collect_atoms(&self, scale: f64, out: &mut Vec<(f64, f64)>) {
        match self {
            Self::DiracAtom { location, mass } => out.push((*location, scale * mass)),
            Self::Combination(terms) => {
                for (c, m) in terms {
                    m.collect_atoms(scale * c, out);
                }
            }
            _ => {}
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Self::AbsCont(_) => Ok(()),
            Self::DiracAtom { location, mass } => {
                if location.is_finite() && mass.is_finite() {
                    Ok(())
                } else {
                    Err(Error::InvalidSignal("non-finite dirac parameters".into()))
                }
            }
            Self::CantorSelfSimilar { support, depth } => {
                if *depth == 0
                    || support.alpha.partial_cmp(&support.beta) != Some(Ordering::Less)
                    || !support.width().is_finite()
                {
                    Err(Error::InvalidSignal(
                        "cantor needs finite alpha < beta and depth > 0".into(),
                    ))
                } else {
                    Ok(())
                }
            }
            Self::Combination(terms) => {
                if terms.is_empty() {
                    return Err(Error::InvalidSignal("empty combination".into()));
                }
                for (c, m) in terms {
                    if !c.is_finite() {
                        return Err(Error::InvalidSignal(
                            "non-finite combination coefficient".into(),
                        ));
                    }
                    m.validate()?;
                }
                Ok(())
            }
        }
    }
}

impl From<StepFunction> for SignedMeasure {
    fn from(f: StepFunction) -> Self {
        Self::AbsCont(f)
    }
}

/// `F(x) = μ((−∞, x])` of a [`SignedMeasure`].
#[derive(Debug, Clone, Copy)]
pub struct CumulativeFunction<'a> {
    measure: &'a SignedMeasure,
}

impl CumulativeFunction<'_> {
    /// Right-continuous value `μ((−∞, x])`.
    pub fn eval(&self, x: f64) -> f64 {
        eval_cumulative(self.measure, x, false)
    }

    /// Left limit `μ((−∞, x))`.
    pub fn left_limit(&self, x: f64) -> f64 {
        eval_cumulative(self.measure, x, true)
    }

    pub fn total(&self) -> f64 {
        self.measure.total_mass()
    }
}

fn eval_cumulative(m: &SignedMeasure, x: f64, open: bool) -> f64 {
    match m {
        SignedMeasure::AbsCont(f) => f.cumulative_at(x),
        SignedMeasure::DiracAtom { location, mass } => {
            let inside = if open { *location < x } else { *location <= x };
            if inside {
                *mass
            } else {
                0.0
            }
        }
        SignedMeasure::CantorSelfSimilar { support, depth } => cantor::cdf_on(support, x, *depth),
        SignedMeasure::Combination(terms) => terms
            .iter()
            .map(|(c, t)| c * eval_cumulative(t, x, open))
            .sum(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(a: f64, b: f64) -> Interval {
        Interval::new(a, b).unwrap()
    }

    #[test]
    fn step_integrals() {
        let f = StepFunction::indicator(0.0, 3.0).unwrap();
        assert_eq!(f.integral_over(&iv(0.0, 3.0)), 3.0);

        let g = StepFunction::new(vec![0.0, 1.0, 2.0], vec![1.0, -1.0]).unwrap();
        assert_eq!(g.integral_over(&iv(0.0, 2.0)), 0.0);

        let tau = std::f64::consts::TAU;
        let h = StepFunction::indicator(0.0, tau)
            .unwrap()
            .add(&StepFunction::indicator(0.0, 2.0).unwrap());
        assert_eq!(h.integral_over(&iv(0.0, 2.0)), 4.0);
        assert_eq!(h.values(), &[2.0, 1.0]);
    }

    #[test]
    fn step_validation() {
        assert!(StepFunction::new(vec![0.0], vec![]).is_err());
        assert!(StepFunction::new(vec![0.0, 0.0], vec![1.0]).is_err());
        assert!(StepFunction::new(vec![1.0, 0.0], vec![1.0]).is_err());
        assert!(StepFunction::new(vec![0.0, 1.0, 2.0], vec![1.0]).is_err());
        assert!(StepFunction::new(vec![0.0, f64::NAN], vec![1.0]).is_err());
        assert!(Interval::new(1.0, 1.0).is_err());
    }

    #[test]
    fn jumps_sum_to_zero() {
        let f = StepFunction::new(vec![-1.0, 0.5, 2.0, 3.0], vec![2.0, -0.5, 4.0]).unwrap();
        let j = f.jumps();
        assert_eq!(j.len(), 4);
        assert_eq!(j.iter().map(|p| p.1).sum::<f64>(), 0.0);
        assert_eq!(j[0], (-1.0, 2.0));
        assert_eq!(j[3], (3.0, -4.0));
    }

    #[test]
    fn dirac_open_interval_convention() {
        let d = SignedMeasure::dirac(0.0, 1.0).unwrap();
        assert_eq!(d.measure_of_interval(&iv(-1.0, 1.0)), 1.0);
        assert_eq!(d.measure_of_interval(&iv(1.0, 2.0)), 0.0);
        assert_eq!(d.measure_of_interval(&iv(0.0, 1.0)), 0.0);
        assert_eq!(d.measure_of_interval(&iv(-1.0, 0.0)), 0.0);
        let f = d.cumulative();
        assert_eq!(f.eval(0.0), 1.0);
        assert_eq!(f.left_limit(0.0), 0.0);
    }

    #[test]
    fn cumulative_examples() {
        let m = SignedMeasure::from(StepFunction::indicator(0.0, 3.0).unwrap());
        assert_eq!(m.cumulative().eval(1.5), 1.5);

        let c = SignedMeasure::cantor(iv(0.0, 1.0));
        assert!((c.cumulative().eval(0.5) - 0.5).abs() <= 2f64.powi(-40));
        assert!((c.measure_of_interval(&iv(0.0, 1.0 / 3.0)) - 0.5).abs() < 1e-9);
    }

    #[test]
    fn combination_mass_and_atoms() {
        let m = SignedMeasure::Combination(vec![
            (2.0, SignedMeasure::dirac(1.0, 0.5).unwrap()),
            (-1.0, SignedMeasure::dirac(1.0, 0.25).unwrap()),
            (1.0, SignedMeasure::cantor(iv(3.0, 4.0))),
        ]);
        assert_eq!(m.atoms(), vec![(1.0, 0.75)]);
        assert_eq!(m.total_mass(), 1.75);
        assert_eq!(m.support(), (1.0, 4.0));
        assert_eq!(m.total_variation(), 2.25);
    }

    #[test]
    fn cumulative_at_breakpoints_matches_partial_sums() {
        let f = StepFunction::new(vec![0.0, 0.25, 1.0, 1.5], vec![4.0, -2.0, 1.0]).unwrap();
        let cum = SignedMeasure::AbsCont(f.clone());
        let cum = cum.cumulative();
        let mut acc = 0.0;
        assert_eq!(cum.eval(0.0), 0.0);
        for (w, c) in f.breakpoints().windows(2).zip(f.values()) {
            acc += c * (w[1] - w[0]);
            assert_eq!(cum.eval(w[1]), acc);
        }
    }
}
