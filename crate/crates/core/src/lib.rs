//! Fourier-transform inversion on the real line by convolution with the
//! Dirichlet kernel `D_S(x) = sin(Sx)/(πx)` and the asymmetric kernel
//! `A_{S1,S2}`, with residuals measured in the Alexiewicz norm
//! `‖f‖ = sup_{α<β} |∫_α^β f|`.
//!
//! Step functions are convolved in closed form through the sine integral,
//! atoms exactly, and the Cantor measure by self-similar Gauss quadrature.
//! Norms are reported as certified lower bounds with explicit resolution.

pub mod cli;
pub mod convolution;
pub mod error;
pub mod experiments;
pub mod kernels;
pub mod norms;
pub mod quadrature;
pub mod signals;
pub mod special_functions;

pub use convolution::{ConvolvedSignal, ResidualAntiderivative, Source};
pub use error::{Error, Result};
pub use kernels::KernelSpec;
pub use norms::NormResult;
pub use signals::{CumulativeFunction, Interval, SignedMeasure, StepFunction};
pub use special_functions::{si, si_antiderivative, EvalAccuracy};
