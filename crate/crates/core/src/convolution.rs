//! Convolution of step functions and measures with a [`KernelSpec`].
//!
//! Every source is flattened into jumps (a step function is `Σ J_j H(· − x_j)`),
//! atoms and scaled Cantor measures. Each part then reduces to one of the
//! kernel primitives:
//!
//! | part    | `value`              | `partial_integral`  | residual `G`               |
//! |---------|----------------------|---------------------|----------------------------|
//! | jump    | `J·Kc(x − x_j)`      | `J·ΔP`              | `J·Q(x − x_j)`             |
//! | atom    | `m·k(x − x_0)`       | `m·ΔKc`             | `m·R(x − x_0)`             |
//! | Cantor  | `c∫k(x − t)dμ`       | `c∫ΔKc dμ`          | `c(F(x) − ½ − ∫Kc(x−t)dμ)` |

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::kernels::KernelSpec;
use crate::signals::{cantor, Interval, SignedMeasure, StepFunction};
use crate::special_functions::{EvalAccuracy, SI_ACCURACY};

/// Imaginary residue tolerated by [`ConvolvedSignal::real_value`].
pub const IMAGINARY_LIMIT: f64 = 1e-10;

/// Default accuracy window of residual antiderivatives.
pub const DEFAULT_WINDOW: (f64, f64) = (-1.0e4, 1.0e4);

/// Tolerance of the Cantor Stieltjes integrals, per unit mass.
const CANTOR_TOL: f64 = 1e-14;

/// Cylinders are subdivided at least until `width·S_max` falls below this.
const CANTOR_PHASE_SPAN: f64 = 2.0;

#[derive(Debug, Clone, PartialEq)]
pub enum Source {
    Step(StepFunction),
    Measure(SignedMeasure),
}

impl Source {
    pub fn validate(&self) -> Result<()> {
        match self {
            Self::Step(_) => Ok(()),
            Self::Measure(m) => m.validate(),
        }
    }

    pub fn support(&self) -> (f64, f64) {
        match self {
            Self::Step(f) => f.support(),
            Self::Measure(m) => m.support(),
        }
    }

    /// `μ((α, β))`.
    pub fn measure_of_interval(&self, iv: &Interval) -> f64 {
        match self {
            Self::Step(f) => f.integral_over(iv),
            Self::Measure(m) => m.measure_of_interval(iv),
        }
    }
}

impl From<StepFunction> for Source {
    fn from(f: StepFunction) -> Self {
        Self::Step(f)
    }
}

impl From<SignedMeasure> for Source {
    fn from(m: SignedMeasure) -> Self {
        match m {
            SignedMeasure::AbsCont(f) => Self::Step(f),
            other => Self::Measure(other),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct CantorPart {
    pub coef: f64,
    pub support: Interval,
    pub depth: u32,
}

/// Source flattened into kernel-primitive building blocks.
#[derive(Debug, Clone, Default, PartialEq)]
pub(crate) struct Parts {
    /// `(x_j, J_j)` merged by location, zero jumps dropped.
    pub jumps: Vec<(f64, f64)>,
    /// `(location, mass)` merged by location, zero masses dropped.
    pub atoms: Vec<(f64, f64)>,
    pub cantors: Vec<CantorPart>,
}

impl Parts {
    pub fn from_source(source: &Source) -> Self {
        let mut parts = Self::default();
        match source {
            Source::Step(f) => parts.add_step(f, 1.0),
            Source::Measure(m) => parts.add_measure(m, 1.0),
        }
        parts.jumps = merge(std::mem::take(&mut parts.jumps));
        parts.atoms = merge(std::mem::take(&mut parts.atoms));
        parts
    }

    fn add_step(&mut self, f: &StepFunction, scale: f64) {
        self.jumps
            .extend(f.jumps().into_iter().map(|(x, j)| (x, scale * j)));
    }

    fn add_measure(&mut self, m: &SignedMeasure, scale: f64) {
        match m {
            SignedMeasure::AbsCont(f) => self.add_step(f, scale),
            SignedMeasure::DiracAtom { location, mass } => {
                self.atoms.push((*location, scale * mass))
            }
            SignedMeasure::CantorSelfSimilar { support, depth } => {
                if scale != 0.0 {
                    self.cantors.push(CantorPart {
                        coef: scale,
                        support: *support,
                        depth: *depth,
                    });
                }
            }
            SignedMeasure::Combination(terms) => {
                for (c, t) in terms {
                    self.add_measure(t, scale * c);
                }
            }
        }
    }

    /// Points where `G` or its derivative is not smooth.
    pub fn critical_points(&self) -> Vec<f64> {
        let mut pts: Vec<f64> = self.jumps.iter().map(|j| j.0).collect();
        pts.extend(self.atoms.iter().map(|a| a.0));
        for c in &self.cantors {
            pts.push(c.support.alpha);
            pts.push(c.support.beta);
        }
        pts.sort_by(f64::total_cmp);
        pts.dedup();
        pts
    }

    pub fn support(&self) -> Option<(f64, f64)> {
        let pts = self.critical_points();
        Some((*pts.first()?, *pts.last()?))
    }
}

fn merge(mut v: Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    v.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut out: Vec<(f64, f64)> = Vec::with_capacity(v.len());
    for (x, w) in v {
        match out.last_mut() {
            Some(last) if last.0 == x => last.1 += w,
            _ => out.push((x, w)),
        }
    }
    out.retain(|p| p.1 != 0.0);
    out
}

fn cantor_min_depth(width: f64, kernel: &KernelSpec) -> u32 {
    let mut depth = 0;
    let mut w = width * kernel.max_frequency();
    while w > CANTOR_PHASE_SPAN && depth < 60 {
        w /= 3.0;
        depth += 1;
    }
    depth
}

/// `∫ g dμ` for one Cantor part (without its coefficient).
fn cantor_integral<G: Fn(f64) -> Complex64>(
    part: &CantorPart,
    kernel: &KernelSpec,
    g: &G,
) -> Complex64 {
    let min_depth = cantor_min_depth(part.support.width(), kernel).min(part.depth);
    cantor::integrate(g, &part.support, min_depth, part.depth, CANTOR_TOL).value
}

/// `source ∗ kernel`.
#[derive(Debug, Clone)]
pub struct ConvolvedSignal {
    source: Source,
    kernel: KernelSpec,
    parts: Parts,
    accuracy: EvalAccuracy,
}

impl ConvolvedSignal {
    pub fn new(source: Source, kernel: KernelSpec) -> Result<Self> {
        source.validate()?;
        kernel.validate()?;
        let parts = Parts::from_source(&source);
        let jump_mass: f64 = parts.jumps.iter().map(|j| j.1.abs()).sum();
        let atom_mass: f64 = parts.atoms.iter().map(|a| a.1.abs()).sum();
        let cantor_mass: f64 = parts.cantors.iter().map(|c| c.coef.abs()).sum();
        let abs_tol = jump_mass * SI_ACCURACY.abs_tol
            + atom_mass * 1e-15 * kernel.max_frequency()
            + cantor_mass * (1e-12 * kernel.max_frequency()).max(1e-12);
        Ok(Self {
            source,
            kernel,
            parts,
            accuracy: EvalAccuracy::new(abs_tol.max(f64::EPSILON)),
        })
    }

    pub fn source(&self) -> &Source {
        &self.source
    }

    pub fn kernel(&self) -> &KernelSpec {
        &self.kernel
    }

    pub fn accuracy(&self) -> EvalAccuracy {
        self.accuracy
    }

    /// Complex value of the convolution at `x`.
    pub fn value(&self, x: f64) -> Complex64 {
        let k = &self.kernel;
        let mut v = Complex64::new(0.0, 0.0);
        for &(xj, j) in &self.parts.jumps {
            v += k.centered_integral(x - xj) * j;
        }
        for &(loc, m) in &self.parts.atoms {
            v += k.value(x - loc) * m;
        }
        for part in &self.parts.cantors {
            v += cantor_integral(part, k, &|t| k.value(x - t)) * part.coef;
        }
        v
    }

    /// Real value, failing if the imaginary part exceeds [`IMAGINARY_LIMIT`].
    ///
    /// Convolutions with the asymmetric kernel are genuinely complex when
    /// `S1 ≠ S2`; use [`value`](Self::value) there.
    pub fn real_value(&self, x: f64) -> Result<f64> {
        let v = self.value(x);
        if v.im.abs() > IMAGINARY_LIMIT {
            return Err(Error::ImaginaryResidue {
                x,
                residue: v.im.abs(),
                limit: IMAGINARY_LIMIT,
            });
        }
        Ok(v.re)
    }

    /// `∫_α^β source ∗ kernel`.
    pub fn partial_integral(&self, iv: &Interval) -> Complex64 {
        let k = &self.kernel;
        let (a, b) = (iv.alpha, iv.beta);
        let mut v = Complex64::new(0.0, 0.0);
        for &(xj, j) in &self.parts.jumps {
            v += (k.centered_integral_antiderivative(b - xj)
                - k.centered_integral_antiderivative(a - xj))
                * j;
        }
        for &(loc, m) in &self.parts.atoms {
            v += (k.centered_integral(b - loc) - k.centered_integral(a - loc)) * m;
        }
        for part in &self.parts.cantors {
            let g = |t: f64| k.centered_integral(b - t) - k.centered_integral(a - t);
            v += cantor_integral(part, k, &g) * part.coef;
        }
        v
    }

    pub fn residual_antiderivative(&self) -> ResidualAntiderivative {
        ResidualAntiderivative::from_parts(self.parts.clone(), self.kernel, self.accuracy)
    }
}

pub fn convolve_step_dirichlet(f: &StepFunction, s: f64) -> Result<ConvolvedSignal> {
    ConvolvedSignal::new(Source::Step(f.clone()), KernelSpec::symmetric(s)?)
}

pub fn convolve_measure_dirichlet(mu: &SignedMeasure, s: f64) -> Result<ConvolvedSignal> {
    ConvolvedSignal::new(Source::from(mu.clone()), KernelSpec::symmetric(s)?)
}

pub fn convolve_step_asymmetric(f: &StepFunction, s1: f64, s2: f64) -> Result<ConvolvedSignal> {
    ConvolvedSignal::new(Source::Step(f.clone()), KernelSpec::asymmetric(s1, s2)?)
}

/// `G(x) = ∫_{−∞}^x (source − source ∗ kernel)` with `G(−∞) = G(+∞) = 0`.
pub fn residual_antiderivative(
    source: &Source,
    kernel: KernelSpec,
) -> Result<ResidualAntiderivative> {
    Ok(ConvolvedSignal::new(source.clone(), kernel)?.residual_antiderivative())
}

/// Antiderivative of the residual `source − source ∗ kernel`, right-continuous
/// at atoms (`G(x) = μ((−∞, x]) − ∫_{−∞}^x μ ∗ k`).
#[derive(Debug, Clone)]
pub struct ResidualAntiderivative {
    pub(crate) parts: Parts,
    kernel: KernelSpec,
    accuracy: EvalAccuracy,
    window: Interval,
}

impl ResidualAntiderivative {
    fn from_parts(parts: Parts, kernel: KernelSpec, accuracy: EvalAccuracy) -> Self {
        let window = Interval {
            alpha: DEFAULT_WINDOW.0,
            beta: DEFAULT_WINDOW.1,
        };
        Self {
            parts,
            kernel,
            accuracy,
            window,
        }
    }

    /// Same object with a different accuracy window.
    pub fn with_window(mut self, window: Interval) -> Self {
        self.window = window;
        self
    }

    pub fn kernel(&self) -> &KernelSpec {
        &self.kernel
    }

    pub fn window(&self) -> Interval {
        self.window
    }

    pub fn accuracy(&self) -> EvalAccuracy {
        self.accuracy
    }

    /// Accuracy at `x`, widened outside the window by the bound on `|G|` there.
    pub fn accuracy_at(&self, x: f64) -> EvalAccuracy {
        if self.window.alpha <= x && x <= self.window.beta {
            self.accuracy
        } else {
            EvalAccuracy::new(self.accuracy.abs_tol.max(self.origin_bound(x, x)))
        }
    }

    /// Atom locations, where `G` jumps.
    pub fn atoms(&self) -> Vec<f64> {
        self.parts.atoms.iter().map(|a| a.0).collect()
    }

    /// Convex hull `[lo, hi]` of the points where `G` is not smooth.
    pub fn support(&self) -> Option<(f64, f64)> {
        self.parts.support()
    }

    pub(crate) fn critical_points(&self) -> Vec<f64> {
        self.parts.critical_points()
    }

    /// `G(x)`, right-continuous.
    pub fn eval(&self, x: f64) -> Complex64 {
        let k = &self.kernel;
        let mut g = Complex64::new(0.0, 0.0);
        for &(xj, j) in &self.parts.jumps {
            g += k.residual_antiderivative(x - xj) * j;
        }
        for &(loc, m) in &self.parts.atoms {
            g += k.residual(x - loc) * m;
        }
        for part in &self.parts.cantors {
            let f = cantor::cdf_on(&part.support, x, part.depth);
            let smooth = if x <= part.support.alpha || x >= part.support.beta {
                // Outside the support R(x − t) has no jump on it.
                cantor_integral(part, k, &|t| k.residual(x - t))
            } else {
                Complex64::new(f - 0.5, 0.0)
                    - cantor_integral(part, k, &|t| k.centered_integral(x - t))
            };
            g += smooth * part.coef;
        }
        g
    }

    /// `G(x−)`; differs from [`eval`](Self::eval) only at atoms.
    pub fn left_limit(&self, x: f64) -> Complex64 {
        let mut g = self.eval(x);
        for &(loc, m) in &self.parts.atoms {
            if loc == x {
                g -= m;
            }
        }
        g
    }

    /// `G(β) − G(α)`, i.e. `μ((α, β]) − ∫_α^β μ ∗ k`.
    pub fn increment(&self, iv: &Interval) -> Complex64 {
        self.eval(iv.beta) - self.eval(iv.alpha)
    }

    /// Bound on `sup |G''|` over the closed cell `[a, b]`, valid where the
    /// cell contains no jump or atom in its interior. For Cantor parts the
    /// singular `F` contribution is accounted separately by
    /// [`singular_variation`](Self::singular_variation).
    pub(crate) fn curvature_bound(&self, a: f64, b: f64) -> f64 {
        let k = &self.kernel;
        let dist = |x: f64| {
            if x < a {
                a - x
            } else if x > b {
                x - b
            } else {
                0.0
            }
        };
        let mut m = 0.0;
        for &(xj, j) in &self.parts.jumps {
            m += j.abs() * k.abs_bound(dist(xj));
        }
        for &(loc, mass) in &self.parts.atoms {
            m += mass.abs() * k.deriv_bound(dist(loc));
        }
        for c in &self.parts.cantors {
            let d = if c.support.beta < a {
                a - c.support.beta
            } else if c.support.alpha > b {
                c.support.alpha - b
            } else {
                0.0
            };
            m += c.coef.abs() * k.deriv_bound(d);
        }
        m
    }

    /// Variation over `[a, b]` of the singular Cantor part `Σ c·F`.
    pub(crate) fn singular_variation(&self, a: f64, b: f64) -> f64 {
        self.parts
            .cantors
            .iter()
            .map(|c| {
                let lo = cantor::cdf_on(&c.support, a, c.depth);
                let hi = cantor::cdf_on(&c.support, b, c.depth);
                c.coef.abs() * (hi - lo)
            })
            .sum()
    }

    /// Bound on `sup |G|` over `[a, b]`; infinite where no useful bound exists.
    pub(crate) fn origin_bound(&self, a: f64, b: f64) -> f64 {
        let k = &self.kernel;
        let dist = |x: f64| {
            if x < a {
                a - x
            } else if x > b {
                x - b
            } else {
                0.0
            }
        };
        let mut m = 0.0;
        for &(xj, j) in &self.parts.jumps {
            m += j.abs() * k.residual_antiderivative_deviation_bound(dist(xj));
        }
        for &(loc, mass) in &self.parts.atoms {
            m += mass.abs() * k.residual_bound(dist(loc));
        }
        for c in &self.parts.cantors {
            let d = if c.support.beta < a {
                a - c.support.beta
            } else if c.support.alpha > b {
                c.support.alpha - b
            } else {
                return f64::INFINITY;
            };
            m += c.coef.abs() * k.residual_bound(d);
        }
        m
    }
}
