mod common;

use std::f64::consts::PI;

use alexiewicz::convolution::{
    convolve_measure_dirichlet, convolve_step_asymmetric, convolve_step_dirichlet,
    residual_antiderivative,
};
use alexiewicz::{
    ConvolvedSignal, Error, Interval, KernelSpec, SignedMeasure, Source, StepFunction,
};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn iv(a: f64, b: f64) -> Interval {
    Interval::new(a, b).unwrap()
}

fn two_boxes() -> StepFunction {
    StepFunction::indicator(0.0, 2.0 * PI)
        .unwrap()
        .add(&StepFunction::indicator(0.0, 2.0).unwrap())
}

fn check_against_oracle(f: &StepFunction, s1: f64, s2: f64, seed: u64) {
    let conv = convolve_step_asymmetric(f, s1, s2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..20 {
        let x = rng.gen_range(-10.0..15.0);
        let got = conv.value(x);
        let want = common::convolution_oracle(f, s1, s2, x);
        assert!((got - want).norm() < 1e-8, "x = {x}: {got} vs {want}");
    }
}

#[test]
fn closed_forms_match_quadrature() {
    check_against_oracle(&two_boxes(), 5.0, 5.0, 30);
    check_against_oracle(&StepFunction::indicator(0.0, 1.0).unwrap(), 40.0, 20.0, 31);
    check_against_oracle(
        &StepFunction::new(vec![-1.0, 0.5, 3.0], vec![2.0, -0.75]).unwrap(),
        3.0,
        11.0,
        32,
    );
}

#[test]
fn symmetric_step_examples() {
    let conv = convolve_step_dirichlet(&StepFunction::indicator(0.0, 1.0).unwrap(), 100.0).unwrap();
    assert!(
        (conv.real_value(0.5).unwrap() - 2.0 * alexiewicz::si(50.0).unwrap() / PI).abs() < 1e-14
    );
    // Overshoot of a unit step at the first maximum past the edge: 1/2 + Si(π)/π.
    let gibbs = convolve_step_dirichlet(&StepFunction::indicator(0.0, 1e12).unwrap(), 1.0).unwrap();
    assert!((gibbs.real_value(PI).unwrap() - 1.089_489_872_236_083_6).abs() < 1e-11);
}

#[test]
fn convolution_is_linear_and_translation_covariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    let f = StepFunction::indicator(0.0, 1.0).unwrap();
    let g = two_boxes();
    let k = KernelSpec::asymmetric(4.0, 9.0).unwrap();
    let cf = ConvolvedSignal::new(f.clone().into(), k).unwrap();
    let cg = ConvolvedSignal::new(g.clone().into(), k).unwrap();
    let (a, b) = (1.5, -0.25);
    let combo = ConvolvedSignal::new(f.scaled(a).add(&g.scaled(b)).into(), k).unwrap();
    let h = 2.75;
    let shifted = ConvolvedSignal::new(f.shifted(h).into(), k).unwrap();
    for _ in 0..200 {
        let x = rng.gen_range(-20.0..20.0);
        let lin = cf.value(x) * a + cg.value(x) * b;
        assert!((combo.value(x) - lin).norm() < 1e-12);
        assert!((shifted.value(x + h) - cf.value(x)).norm() < 1e-12);
    }
}

#[test]
fn partial_integral_is_integral_of_value() {
    let conv = convolve_step_asymmetric(&two_boxes(), 2.0, 6.0).unwrap();
    for (a, b) in [(-3.0, 1.0), (0.5, 7.0), (10.0, 25.0)] {
        let want = common::integrate_complex(&|x| conv.value(x), a, b, 1e-13);
        assert!((conv.partial_integral(&iv(a, b)) - want).norm() < 1e-10);
    }
    let dirac = convolve_measure_dirichlet(&SignedMeasure::dirac(0.3, 2.0).unwrap(), 7.0).unwrap();
    let want = common::integrate_complex(&|x| dirac.value(x), -1.0, 2.0, 1e-13);
    assert!((dirac.partial_integral(&iv(-1.0, 2.0)) - want).norm() < 1e-10);
}

#[test]
fn residual_increment_is_residual_integral() {
    let f = two_boxes();
    let conv = convolve_step_asymmetric(&f, 3.0, 1.5).unwrap();
    let g = conv.residual_antiderivative();
    for (a, b) in [(-4.0, 0.5), (1.0, 9.0), (-30.0, 30.0)] {
        let want =
            Complex64::new(f.integral_over(&iv(a, b)), 0.0) - conv.partial_integral(&iv(a, b));
        assert!((g.increment(&iv(a, b)) - want).norm() < 1e-12);
    }
}

#[test]
fn residual_vanishes_far_away() {
    let conv = convolve_step_dirichlet(&StepFunction::indicator(0.0, 1.0).unwrap(), 100.0).unwrap();
    let g = conv.residual_antiderivative();
    assert!(g.eval(-1e6).norm() < 1e-5);
    assert!(g.eval(1e6).norm() < 1e-5);
    let wide = convolve_step_dirichlet(&StepFunction::indicator(0.0, 1.0).unwrap(), 1e4).unwrap();
    let gw = wide.residual_antiderivative();
    assert!(gw.increment(&iv(-5.0, 5.0)).norm() < 0.01);
}

#[test]
fn equal_frequencies_reduce_to_dirichlet() {
    let f = two_boxes();
    let sym = convolve_step_dirichlet(&f, 5.0).unwrap();
    let asym = convolve_step_asymmetric(&f, 5.0, 5.0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(34);
    for _ in 0..100 {
        let x = rng.gen_range(-20.0..20.0);
        assert!((sym.value(x) - asym.value(x)).norm() < 1e-12);
        assert!(asym.real_value(x).is_ok());
    }
}

#[test]
fn unequal_frequencies_are_complex() {
    let conv =
        convolve_step_asymmetric(&StepFunction::indicator(0.0, 1.0).unwrap(), 2.0, 7.0).unwrap();
    let v = conv.value(1.5);
    assert!(v.im.abs() > 1e-3);
    assert!(matches!(
        conv.real_value(1.5),
        Err(Error::ImaginaryResidue { .. })
    ));
}

#[test]
fn dirac_witness() {
    for (s, want) in [
        (100.0, 0.494_088_729_380_866_4),
        (1000.0, 0.499_502_416_467_398),
        (1e4, 0.499_998_478_030_283_9),
    ] {
        let mu = SignedMeasure::dirac(0.0, 1.0).unwrap();
        let conv = convolve_measure_dirichlet(&mu, s).unwrap();
        let g = conv.residual_antiderivative();
        let a = 1.0 / (s * s);
        // μ((α, β)) = 0, so the residual integral is −∫_α^β D_S.
        let witness = g.left_limit(1.0) - g.eval(a);
        assert!(
            (witness.norm() - want).abs() < 1e-12,
            "S = {s}: {}",
            witness.norm()
        );
    }
}

#[test]
fn cantor_convolution_converges_in_depth() {
    let support = iv(0.0, 1.0);
    let c30 = convolve_measure_dirichlet(
        &SignedMeasure::cantor_with_depth(support, 30).unwrap(),
        50.0,
    )
    .unwrap();
    let c35 = convolve_measure_dirichlet(
        &SignedMeasure::cantor_with_depth(support, 35).unwrap(),
        50.0,
    )
    .unwrap();
    for x in [0.5, 0.1, 1.0 / 3.0, 2.0] {
        assert!((c30.value(x) - c35.value(x)).norm() < 1e-8, "x = {x}");
    }
    // The convolution integrates to the total mass.
    let mass = c35.partial_integral(&iv(-1e5, 1e5));
    assert!((mass.re - 1.0).abs() < 1e-4);
}

#[test]
fn cantor_convolution_matches_midpoint_oracle() {
    // Each depth-d Cantor interval carries mass 2^{−d}; the midpoint rule
    // converges at rate (S·3^{−d})².
    let depth = 12;
    let mut mids = vec![0.5];
    let mut width = 1.0;
    for _ in 0..depth {
        width /= 3.0;
        mids = mids.iter().flat_map(|m| [m - width, m + width]).collect();
    }
    let mu = SignedMeasure::cantor(iv(0.0, 1.0));
    let conv = convolve_measure_dirichlet(&mu, 20.0).unwrap();
    let k = KernelSpec::symmetric(20.0).unwrap();
    for x in [-0.3, 0.2, 0.5, 0.77, 1.4] {
        let want: f64 = mids.iter().map(|m| k.value(x - m).re).sum::<f64>() / mids.len() as f64;
        assert!((conv.value(x).re - want).abs() < 1e-6, "x = {x}");
    }
}

#[test]
fn residual_of_source_enum() {
    let src = Source::from(SignedMeasure::dirac(1.0, 1.0).unwrap());
    let g = residual_antiderivative(&src, KernelSpec::symmetric(10.0).unwrap()).unwrap();
    assert_eq!(g.atoms(), vec![1.0]);
    assert!(((g.eval(1.0) - g.left_limit(1.0)).re - 1.0).abs() < 1e-15);
}
