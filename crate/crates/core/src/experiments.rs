//! Convergence sweeps, the Dirac lower-bound study and the L¹ tail study.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::convolution::{ConvolvedSignal, Source};
use crate::error::{Error, Result};
use crate::kernels::KernelSpec;
use crate::norms::{alexiewicz_norm_with, l1_norm_windowed, NormOptions, NormResult};
use crate::signals::{Interval, SignedMeasure, StepFunction};
use crate::special_functions::si;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelFamily {
    Symmetric,
    Asymmetric,
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub source: Source,
    pub family: KernelFamily,
    /// Frequencies of a symmetric sweep.
    pub s_values: Vec<f64>,
    /// `(S1, S2)` pairs of an asymmetric sweep.
    pub pairs: Vec<(f64, f64)>,
    /// Bounds `p ≤ S1/S2 ≤ q` every pair must respect.
    pub ratio_bounds: Option<(f64, f64)>,
    /// If set, each row also reports `∫_window |source ∗ kernel|`.
    pub l1_window: Option<Interval>,
    pub norm: NormOptions,
}

impl SweepConfig {
    pub fn symmetric(source: impl Into<Source>, s_values: Vec<f64>) -> Self {
        Self {
            source: source.into(),
            family: KernelFamily::Symmetric,
            s_values,
            pairs: Vec::new(),
            ratio_bounds: None,
            l1_window: None,
            norm: NormOptions::default(),
        }
    }

    pub fn asymmetric(
        source: impl Into<Source>,
        pairs: Vec<(f64, f64)>,
        ratio_bounds: Option<(f64, f64)>,
    ) -> Self {
        Self {
            source: source.into(),
            family: KernelFamily::Asymmetric,
            s_values: Vec::new(),
            pairs,
            ratio_bounds,
            l1_window: None,
            norm: NormOptions::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.source.validate()?;
        self.norm.validate()?;
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        match self.family {
            KernelFamily::Symmetric => {
                if self.s_values.is_empty() {
                    return bad("no S values".into());
                }
                if !self.s_values.iter().all(|s| s.is_finite() && *s > 0.0) {
                    return bad("S values must be positive and finite".into());
                }
                if !self.s_values.windows(2).all(|w| w[0] < w[1]) {
                    return bad("S values must be strictly increasing".into());
                }
            }
            KernelFamily::Asymmetric => {
                if self.pairs.is_empty() {
                    return bad("no (S1, S2) pairs".into());
                }
                if !self
                    .pairs
                    .iter()
                    .all(|&(a, b)| a.is_finite() && b.is_finite() && a > 0.0 && b > 0.0)
                {
                    return bad("pair frequencies must be positive and finite".into());
                }
                if !self
                    .pairs
                    .windows(2)
                    .all(|w| w[0].0 < w[1].0 && w[0].1 < w[1].1)
                {
                    return bad("pairs must be strictly increasing in both S1 and S2".into());
                }
                if let Some((p, q)) = self.ratio_bounds {
                    if !(p > 0.0 && p <= q && q.is_finite()) {
                        return bad(format!("ratio bounds need 0 < p ≤ q, got {p}:{q}"));
                    }
                    if let Some(&(a, b)) = self
                        .pairs
                        .iter()
                        .find(|&&(a, b)| !(p <= a / b && a / b <= q))
                    {
                        return bad(format!("pair {a}:{b} violates {p} ≤ S1/S2 ≤ {q}"));
                    }
                }
            }
        }
        Ok(())
    }

    fn kernels(&self) -> Result<Vec<KernelSpec>> {
        match self.family {
            KernelFamily::Symmetric => self
                .s_values
                .iter()
                .map(|&s| KernelSpec::symmetric(s))
                .collect(),
            KernelFamily::Asymmetric => self
                .pairs
                .iter()
                .map(|&(a, b)| KernelSpec::asymmetric(a, b))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub kernel: KernelSpec,
    pub norm: NormResult,
    pub l1: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
    /// Set for asymmetric sweeps without ratio bounds, which carry no
    /// convergence guarantee.
    pub exploratory: bool,
}

impl SweepResult {
    pub fn values(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.norm.value).collect()
    }

    pub fn is_certified_decreasing(&self) -> bool {
        let norms: Vec<NormResult> = self.rows.iter().map(|r| r.norm).collect();
        certified_decreasing(&norms)
    }
}

/// Each row's certified upper bound lies below the previous row's value.
pub fn certified_decreasing(norms: &[NormResult]) -> bool {
    norms.windows(2).all(|w| w[1].upper() < w[0].value)
}

/// Label of a kernel parameter as written in sweep tables.
pub fn param_label(kernel: &KernelSpec) -> String {
    match *kernel {
        KernelSpec::Symmetric { s } => format!("{s:.16e}"),
        KernelSpec::Asymmetric { s1, s2 } => format!("{s1:.16e}:{s2:.16e}"),
    }
}

fn run_sweep(cfg: &SweepConfig) -> Result<SweepResult> {
    cfg.validate()?;
    let kernels = cfg.kernels()?;
    let rows: Vec<Result<SweepRow>> = kernels
        .par_iter()
        .map(|&kernel| {
            let conv = ConvolvedSignal::new(cfg.source.clone(), kernel)?;
            let norm = alexiewicz_norm_with(&conv.residual_antiderivative(), &cfg.norm)?;
            let l1 = cfg
                .l1_window
                .map(|w| l1_norm_windowed(&conv, &w))
                .transpose()?;
            Ok(SweepRow { kernel, norm, l1 })
        })
        .collect();
    let rows = rows
        .into_iter()
        .enumerate()
        .map(|(index, r)| {
            r.map_err(|e| Error::Row {
                index,
                param: param_label(&kernels[index]),
                source: Box::new(e),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let exploratory = cfg.family == KernelFamily::Asymmetric && cfg.ratio_bounds.is_none();
    Ok(SweepResult { rows, exploratory })
}

/// `‖source − source ∗ D_S‖` for each `S`.
pub fn run_symmetric_sweep(cfg: &SweepConfig) -> Result<SweepResult> {
    if cfg.family != KernelFamily::Symmetric {
        return Err(Error::InvalidConfig(
            "symmetric sweep needs the symmetric family".into(),
        ));
    }
    run_sweep(cfg)
}

/// `‖source − source ∗ A_{S1,S2}‖` along the pair sequence.
pub fn run_asymmetric_sweep(cfg: &SweepConfig) -> Result<SweepResult> {
    if cfg.family != KernelFamily::Asymmetric {
        return Err(Error::InvalidConfig(
            "asymmetric sweep needs the asymmetric family".into(),
        ));
    }
    run_sweep(cfg)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiracRow {
    pub s: f64,
    /// `(1/π)|Si(S) − Si(1/S)|`, the residual over `(1/S², 1)`.
    pub witness: f64,
    pub norm: NormResult,
}

/// Residual of the unit atom at the origin for each `S`.
pub fn run_dirac_study(s_values: &[f64], opts: &NormOptions) -> Result<Vec<DiracRow>> {
    let delta = SignedMeasure::dirac(0.0, 1.0)?;
    let rows: Vec<Result<DiracRow>> = s_values
        .par_iter()
        .map(|&s| {
            let kernel = KernelSpec::symmetric(s)?;
            let witness = (si(s)? - si(1.0 / s)?).abs() / PI;
            let conv = ConvolvedSignal::new(Source::from(delta.clone()), kernel)?;
            let norm = alexiewicz_norm_with(&conv.residual_antiderivative(), opts)?;
            Ok(DiracRow { s, witness, norm })
        })
        .collect();
    rows.into_iter().collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct L1Row {
    pub x: f64,
    /// `∫_X^{2X} |f ∗ D_S|`.
    pub octave_mass: f64,
    /// Least-squares slope of cumulative tail mass against `ln x`, using
    /// this row and all rows before it.
    pub log_slope: f64,
}

/// Octave masses of `f ∗ D_S` in the right tail.
pub fn run_l1_divergence_study(f: &StepFunction, s: f64, x_values: &[f64]) -> Result<Vec<L1Row>> {
    let conv = ConvolvedSignal::new(Source::Step(f.clone()), KernelSpec::symmetric(s)?)?;
    if x_values.is_empty() {
        return Err(Error::InvalidConfig("no X values".into()));
    }
    if !x_values.windows(2).all(|w| w[0] < w[1]) {
        return Err(Error::InvalidConfig(
            "X values must be strictly increasing".into(),
        ));
    }
    let (lo, hi) = f.support();
    let radius = lo.abs().max(hi.abs());
    if !(x_values[0].is_finite()
        && x_values[0] >= 10.0 * radius
        && x_values[x_values.len() - 1].is_finite())
    {
        return Err(Error::InvalidConfig(format!(
            "X values must be finite and at least {}",
            10.0 * radius
        )));
    }
    let mut bounds: Vec<f64> = x_values.iter().flat_map(|&x| [x, 2.0 * x]).collect();
    bounds.sort_by(f64::total_cmp);
    bounds.dedup();
    let pieces: Vec<f64> = bounds
        .par_windows(2)
        .map(|w| {
            l1_norm_windowed(
                &conv,
                &Interval {
                    alpha: w[0],
                    beta: w[1],
                },
            )
        })
        .collect::<Result<_>>()?;
    let mass_between = |a: f64, b: f64| -> f64 {
        bounds
            .windows(2)
            .zip(&pieces)
            .filter(|(w, _)| w[0] >= a && w[1] <= b)
            .map(|(_, m)| m)
            .sum()
    };
    let x0 = x_values[0];
    let mut fit = vec![(x0.ln(), 0.0)];
    let rows = x_values
        .iter()
        .map(|&x| {
            fit.push(((2.0 * x).ln(), mass_between(x0, 2.0 * x)));
            L1Row {
                x,
                octave_mass: mass_between(x, 2.0 * x),
                log_slope: least_squares_slope(&fit),
            }
        })
        .collect();
    Ok(rows)
}

fn least_squares_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    sxy / sxx
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_validation() {
        let f = StepFunction::indicator(0.0, 1.0).unwrap();
        assert!(SweepConfig::symmetric(f.clone(), vec![])
            .validate()
            .is_err());
        assert!(SweepConfig::symmetric(f.clone(), vec![10.0, 10.0])
            .validate()
            .is_err());
        assert!(SweepConfig::symmetric(f.clone(), vec![10.0, 100.0])
            .validate()
            .is_ok());
        let ok = SweepConfig::asymmetric(
            f.clone(),
            vec![(10.0, 20.0), (100.0, 200.0)],
            Some((0.4, 0.6)),
        );
        assert!(ok.validate().is_ok());
        let bad = SweepConfig::asymmetric(f, vec![(10.0, 20.0), (100.0, 100.0)], Some((0.4, 0.6)));
        assert!(bad.validate().is_err());
    }

    #[test]
    fn slope_of_line() {
        let pts: Vec<(f64, f64)> = (0..5).map(|i| (i as f64, 3.0 * i as f64 + 1.0)).collect();
        assert!((least_squares_slope(&pts) - 3.0).abs() < 1e-14);
    }

    #[test]
    fn dirac_degenerate_witness() {
        let rows = run_dirac_study(&[1.0], &NormOptions::default()).unwrap();
        assert_eq!(rows[0].witness, 0.0);
    }
}
