use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid signal: {0}")]
    InvalidSignal(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("window {window:?} too small: {reason}")]
    WindowTooSmall { window: (f64, f64), reason: String },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("row {index} ({param}): {source}")]
    Row {
        index: usize,
        param: String,
        source: Box<Error>,
    },
    #[error("imaginary residue {residue:e} exceeds {limit:e} at x = {x}")]
    ImaginaryResidue { x: f64, residue: f64, limit: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
