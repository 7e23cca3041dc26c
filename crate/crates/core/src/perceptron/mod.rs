//! Standard time-invariant perceptrons and layered networks of them.

mod network;
pub mod reference;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::symbol::LogicSymbol;

pub use network::{Network, NetworkOutput, Tap, TapValue, Unit, NETWORK_SPEC_VERSION};
pub use reference::{
    and_single, and_single_network, binary_full_adder, binary_full_adder_network, fa_network,
    fa_reference_network, spmlg_network, spmlg_reference_network,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Activation {
    /// Fires `|` iff `a + bias > 0`.
    Step,
    /// Passes `a` through unthresholded.
    Identity,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(untagged)]
pub enum FireOutput {
    Spike(LogicSymbol),
    Value(f64),
}

impl FireOutput {
    /// Numeric value forwarded to the next layer.
    pub fn as_signal(self) -> f64 {
        match self {
            FireOutput::Spike(s) => f64::from(s.bit()),
            FireOutput::Value(v) => v,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Perceptron {
    pub weights: Vec<f64>,
    pub bias: f64,
    pub activation: Activation,
}

impl Perceptron {
    pub fn new(weights: Vec<f64>, bias: f64, activation: Activation) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidNetwork(
                "perceptron needs at least one weight".into(),
            ));
        }
        Ok(Perceptron {
            weights,
            bias,
            activation,
        })
    }

    pub fn step(weights: Vec<f64>, bias: f64) -> Result<Self> {
        Self::new(weights, bias, Activation::Step)
    }

    pub fn identity(weights: Vec<f64>) -> Result<Self> {
        Self::new(weights, 0.0, Activation::Identity)
    }

    /// `a = Σ wᵢxᵢ`.
    pub fn activation_value(&self, inputs: &[f64]) -> Result<f64> {
        if inputs.len() != self.weights.len() {
            return Err(Error::ArityMismatch {
                expected: self.weights.len(),
                got: inputs.len(),
            });
        }
        Ok(self.weights.iter().zip(inputs).map(|(w, x)| w * x).sum())
    }

    /// The threshold rule, independent of the activation kind.
    pub fn spikes_at(&self, a: f64) -> LogicSymbol {
        LogicSymbol::from_bool(a + self.bias > 0.0)
    }

    pub fn fire(&self, inputs: &[f64]) -> Result<(f64, FireOutput)> {
        let a = self.activation_value(inputs)?;
        let out = match self.activation {
            Activation::Step => FireOutput::Spike(self.spikes_at(a)),
            Activation::Identity => FireOutput::Value(a),
        };
        Ok((a, out))
    }
}
