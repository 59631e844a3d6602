//! JSON description of signals, as read by the command line tool.
//!
//! ```json
//! {"type":"step","breakpoints":[0,1],"values":[1]}
//! {"type":"dirac","location":0,"mass":1}
//! {"type":"cantor","support":[0,1]}
//! {"type":"combo","terms":[[2.0,{"type":"dirac","location":0,"mass":1}]]}
//! ```

use serde::{Deserialize, Serialize};

use super::{Interval, SignedMeasure, StepFunction, DEFAULT_CANTOR_DEPTH};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum SignalDesc {
    Step {
        breakpoints: Vec<f64>,
        values: Vec<f64>,
    },
    Dirac {
        location: f64,
        mass: f64,
    },
    Cantor {
        support: [f64; 2],
        #[serde(default, skip_serializing_if = "Option::is_none")]
        depth: Option<u32>,
    },
    Combo {
        terms: Vec<(f64, SignalDesc)>,
    },
}

impl SignalDesc {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidSignal(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("signal descriptions always serialize")
    }

    /// Validated measure for this description.
    pub fn to_measure(&self) -> Result<SignedMeasure> {
        let m = match self {
            Self::Step {
                breakpoints,
                values,
            } => SignedMeasure::AbsCont(StepFunction::new(breakpoints.clone(), values.clone())?),
            Self::Dirac { location, mass } => SignedMeasure::dirac(*location, *mass)?,
            Self::Cantor { support, depth } => SignedMeasure::cantor_with_depth(
                Interval::new(support[0], support[1])?,
                depth.unwrap_or(DEFAULT_CANTOR_DEPTH),
            )?,
            Self::Combo { terms } => SignedMeasure::Combination(
                terms
                    .iter()
                    .map(|(c, d)| d.to_measure().map(|m| (*c, m)))
                    .collect::<Result<_>>()?,
            ),
        };
        m.validate()?;
        Ok(m)
    }
}

impl From<&SignedMeasure> for SignalDesc {
    fn from(m: &SignedMeasure) -> Self {
        match m {
            SignedMeasure::AbsCont(f) => Self::Step {
                breakpoints: f.breakpoints().to_vec(),
                values: f.values().to_vec(),
            },
            SignedMeasure::DiracAtom { location, mass } => Self::Dirac {
                location: *location,
                mass: *mass,
            },
            SignedMeasure::CantorSelfSimilar { support, depth } => Self::Cantor {
                support: [support.alpha, support.beta],
                depth: (*depth != DEFAULT_CANTOR_DEPTH).then_some(*depth),
            },
            SignedMeasure::Combination(terms) => Self::Combo {
                terms: terms.iter().map(|(c, t)| (*c, Self::from(t))).collect(),
            },
        }
    }
}
