use std::f64::consts::PI;

use alexiewicz::experiments::{
    certified_decreasing, param_label, run_asymmetric_sweep, run_dirac_study,
    run_l1_divergence_study, run_symmetric_sweep, SweepConfig,
};
use alexiewicz::norms::NormOptions;
use alexiewicz::{Error, Interval, KernelSpec, NormResult, SignedMeasure, StepFunction};

fn unit_box() -> StepFunction {
    StepFunction::indicator(0.0, 1.0).unwrap()
}

#[test]
fn symmetric_sweep_decreases() {
    let cfg = SweepConfig::symmetric(unit_box(), vec![10.0, 100.0, 1000.0, 1e4]);
    let result = run_symmetric_sweep(&cfg).unwrap();
    assert_eq!(result.rows.len(), 4);
    assert!(result.is_certified_decreasing());
    assert!(!result.exploratory);
    let v = result.values();
    assert!(v[3] * 5.0 < v[0]);
}

#[test]
fn equal_pairs_match_symmetric_sweep() {
    let s = vec![10.0, 100.0, 1000.0];
    let sym = run_symmetric_sweep(&SweepConfig::symmetric(unit_box(), s.clone())).unwrap();
    let pairs = s.iter().map(|&x| (x, x)).collect();
    let asym = run_asymmetric_sweep(&SweepConfig::asymmetric(
        unit_box(),
        pairs,
        Some((1.0, 1.0)),
    ))
    .unwrap();
    for (a, b) in sym.values().iter().zip(asym.values()) {
        assert!((a - b).abs() <= 1e-10);
    }
}

#[test]
fn doubled_pairs_decrease() {
    let pairs = vec![(10.0, 20.0), (100.0, 200.0), (1000.0, 2000.0)];
    let result = run_asymmetric_sweep(&SweepConfig::asymmetric(
        unit_box(),
        pairs,
        Some((0.5, 0.5)),
    ))
    .unwrap();
    assert!(result.is_certified_decreasing());
    assert!(!result.exploratory);
}

#[test]
fn pairs_without_ratio_bounds_are_exploratory() {
    let pairs = vec![(10.0, 100.0), (100.0, 10_000.0)];
    let result = run_asymmetric_sweep(&SweepConfig::asymmetric(unit_box(), pairs, None)).unwrap();
    assert!(result.exploratory);
}

#[test]
fn invalid_sweeps_are_rejected() {
    assert!(run_symmetric_sweep(&SweepConfig::symmetric(unit_box(), vec![])).is_err());
    assert!(run_symmetric_sweep(&SweepConfig::symmetric(unit_box(), vec![10.0, 5.0])).is_err());
    let out_of_bounds = SweepConfig::asymmetric(unit_box(), vec![(1.0, 10.0)], Some((0.5, 2.0)));
    assert!(run_asymmetric_sweep(&out_of_bounds).is_err());
    let wrong_family = SweepConfig::asymmetric(unit_box(), vec![(1.0, 1.0)], None);
    assert!(run_symmetric_sweep(&wrong_family).is_err());
}

#[test]
fn row_failures_name_the_row() {
    // At S = 1e-3 the residual spreads beyond the default window.
    let cfg = SweepConfig::symmetric(unit_box(), vec![1e-3, 10.0]);
    match run_symmetric_sweep(&cfg) {
        Err(Error::Row { index, param, .. }) => {
            assert_eq!(index, 0);
            assert_eq!(param, param_label(&KernelSpec::symmetric(1e-3).unwrap()));
        }
        other => panic!("expected a row error, got {other:?}"),
    }
}

#[test]
fn sweeps_are_deterministic() {
    let cantor = SignedMeasure::cantor(Interval::new(0.0, 1.0).unwrap());
    let cfg = SweepConfig::symmetric(cantor, vec![10.0, 30.0]);
    let a = run_symmetric_sweep(&cfg).unwrap();
    let b = run_symmetric_sweep(&cfg).unwrap();
    assert_eq!(a, b);
}

#[test]
fn sweep_reports_l1_window() {
    let mut cfg = SweepConfig::symmetric(unit_box(), vec![10.0]);
    cfg.l1_window = Some(Interval::new(-1.0, 2.0).unwrap());
    let row = &run_symmetric_sweep(&cfg).unwrap().rows[0];
    let l1 = row.l1.unwrap();
    assert!(l1 > 0.9 && l1 < 1.2, "{l1}");
}

#[test]
fn certified_comparison_uses_upper_bounds() {
    let iv = Interval::new(0.0, 1.0).unwrap();
    let r = |value: f64, resolution: f64| NormResult {
        value,
        attained_at: iv,
        resolution,
        tail_bound: 0.0,
    };
    assert!(certified_decreasing(&[r(1.0, 0.0), r(0.5, 0.1)]));
    assert!(!certified_decreasing(&[r(1.0, 0.0), r(0.95, 0.1)]));
    assert_eq!(
        param_label(&KernelSpec::asymmetric(1.0, 2.0).unwrap()),
        "1.0000000000000000e0:2.0000000000000000e0"
    );
}

#[test]
fn dirac_study() {
    let rows = run_dirac_study(&[100.0, 1000.0, 1e4], &NormOptions::default()).unwrap();
    assert!((rows[1].witness - 0.4995).abs() <= 5e-4);
    for row in &rows {
        assert!(row.norm.value >= 0.49);
        assert!(row.norm.value >= row.witness);
    }
}

#[test]
fn l1_octaves_of_a_non_integrable_convolution_stay_flat() {
    let f = StepFunction::indicator(0.0, 2.0 * PI)
        .unwrap()
        .add(&StepFunction::indicator(0.0, 2.0).unwrap());
    let rows = run_l1_divergence_study(&f, 5.0, &[100.0, 200.0, 400.0, 800.0]).unwrap();
    for a in &rows {
        for b in &rows {
            assert!(
                (a.octave_mass - b.octave_mass).abs() <= 0.1 * a.octave_mass.max(b.octave_mass)
            );
        }
    }
    // Octave masses near (2/π²)|Σ c_j e^{iS x_j}|·ln 2 give a slope near that constant.
    let slope = rows.last().unwrap().log_slope;
    assert!(slope > 0.0 && (slope - rows[0].octave_mass / 2f64.ln()).abs() < 0.1 * slope);
}

#[test]
fn l1_octaves_of_an_integrable_convolution_decay() {
    let f = StepFunction::indicator(0.0, 2.0 * PI).unwrap();
    let rows = run_l1_divergence_study(&f, 3.0, &[100.0, 200.0, 400.0, 800.0]).unwrap();
    for w in rows.windows(2) {
        assert!(w[1].octave_mass < 0.6 * w[0].octave_mass);
    }
}

#[test]
fn l1_study_validates_positions() {
    let f = unit_box();
    assert!(run_l1_divergence_study(&f, 5.0, &[]).is_err());
    assert!(run_l1_divergence_study(&f, 5.0, &[1.0]).is_err());
    assert!(run_l1_divergence_study(&f, 5.0, &[200.0, 100.0]).is_err());
}

#[test]
fn l1_octaves_halve_when_the_leading_term_cancels() {
    let f = StepFunction::indicator(0.0, 2.0 * PI).unwrap();
    let rows = run_l1_divergence_study(&f, 3.0, &[100.0, 200.0, 400.0, 800.0]).unwrap();
    for w in rows.windows(2) {
        assert!(w[1].octave_mass < 0.5 * w[0].octave_mass);
    }
    let off = run_l1_divergence_study(&f, 3.1, &[100.0, 200.0, 400.0, 800.0]).unwrap();
    let masses: Vec<f64> = off.iter().map(|r| r.octave_mass).collect();
    let hi = masses.iter().cloned().fold(f64::MIN, f64::max);
    let lo = masses.iter().cloned().fold(f64::MAX, f64::min);
    assert!(hi - lo <= 0.1 * hi, "{masses:?}");
}

#[test]
fn dirac_witness_stays_near_a_half() {
    let s: Vec<f64> = (0..12).map(|k| 100.0 * 2f64.powi(k)).collect();
    let rows = run_dirac_study(&s, &NormOptions::default()).unwrap();
    assert!(rows.iter().all(|r| r.witness > 0.45));
    let degenerate = run_dirac_study(&[1.0], &NormOptions::default()).unwrap();
    assert_eq!(degenerate[0].witness, 0.0);
}
