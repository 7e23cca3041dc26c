//! Run configuration: which gate, which implementation, and the effective
//! parameter set after applying overrides.
//!
//! Overrides come from a flat JSON object whose keys are the fields of the
//! parameter echo (`x_one`, `and_level`, `sum_bands`, ...). Precedence is
//! command-line `--set` over config file over the built-in defaults.

use std::fmt;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::{Map, Value};

use crate::device::GateParams;
use crate::equivalence::{
    ClosedFormAdder, GateEvaluator, MemristorAdder, MemristorAndOr, NetworkGate,
};
use crate::error::{Error, Result};
use crate::gates::Thresholds;
use crate::perceptron::{
    and_single_network, binary_full_adder_network, fa_reference_network, spmlg_reference_network,
    Network,
};

/// Environment variable naming a config file when `--config` is absent.
pub const CONFIG_ENV: &str = "SPIKELOGIC_CONFIG";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Gate {
    AndOr,
    FullAdder,
}

impl Gate {
    pub fn arity(self) -> usize {
        match self {
            Gate::AndOr => 2,
            Gate::FullAdder => 3,
        }
    }

    pub fn default_params(self) -> GateParams {
        match self {
            Gate::AndOr => GateParams::spmlg(),
            Gate::FullAdder => GateParams::spmafa(),
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Gate::AndOr => "and-or",
            Gate::FullAdder => "full-adder",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Implementation {
    Memristor,
    Network,
    SinglePerceptron,
    ClosedForm,
    BinaryFa,
}

impl fmt::Display for Implementation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Implementation::Memristor => "memristor",
            Implementation::Network => "network",
            Implementation::SinglePerceptron => "single-perceptron",
            Implementation::ClosedForm => "closed-form",
            Implementation::BinaryFa => "binary-fa",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Text,
}

/// Gate parameters and thresholds as one flat document.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ParamSet {
    #[serde(flatten)]
    pub params: GateParams,
    #[serde(flatten)]
    pub thresholds: Thresholds,
}

impl ParamSet {
    pub fn defaults(gate: Gate) -> Self {
        ParamSet {
            params: gate.default_params(),
            thresholds: Thresholds::default(),
        }
    }

    pub fn to_json_value(&self) -> Value {
        serde_json::to_value(self).expect("params serialize")
    }

    /// Applies every key of `doc`, rejecting unknown keys and mistyped values.
    pub fn apply(&mut self, doc: &Map<String, Value>) -> Result<()> {
        for (key, value) in doc {
            self.set(key, value)?;
        }
        Ok(())
    }

    pub fn set(&mut self, key: &str, value: &Value) -> Result<()> {
        let num = || {
            value
                .as_f64()
                .ok_or_else(|| Error::Config(format!("{key} must be a number, got {value}")))
        };
        match key {
            "unit_scale" => self.params.unit_scale = num()?,
            "x_one" => self.params.x_one = num()?,
            "x_zero" => self.params.x_zero = num()?,
            "friction_fraction" => self.params.friction_fraction = num()?,
            "release_fraction" => self.params.release_fraction = num()?,
            "c2" => self.params.c2 = num()?,
            "c3" => self.params.c3 = num()?,
            "max_inputs" => {
                self.params.max_inputs = value.as_u64().ok_or_else(|| {
                    Error::Config(format!("max_inputs must be an integer, got {value}"))
                })? as usize
            }
            "and_level" => self.thresholds.and_level = num()?,
            "or_level" => self.thresholds.or_level = num()?,
            "detect_level" => self.thresholds.detect_level = num()?,
            "sum_bands" => {
                let bands: [f64; 3] = serde_json::from_value(value.clone()).map_err(|_| {
                    Error::Config(format!("sum_bands must be three numbers, got {value}"))
                })?;
                self.thresholds.sum_bands = bands;
            }
            other => return Err(Error::Config(format!("unknown parameter key {other:?}"))),
        }
        Ok(())
    }

    /// Parses one `key=value` override; the value is read as JSON.
    pub fn set_from_pair(&mut self, pair: &str) -> Result<()> {
        let (key, raw) = pair
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("override must be key=value, got {pair:?}")))?;
        let value: Value = serde_json::from_str(raw.trim())
            .map_err(|_| Error::Config(format!("cannot parse value for {key}: {raw:?}")))?;
        self.set(key.trim(), &value)
    }

    pub fn validate(&self) -> Result<()> {
        self.params.validate()?;
        self.thresholds.validate()
    }
}

/// Parses a config file body: a flat JSON object of parameter keys.
pub fn parse_config_document(text: &str) -> Result<Map<String, Value>> {
    match serde_json::from_str::<Value>(text) {
        Ok(Value::Object(map)) => Ok(map),
        Ok(_) => Err(Error::Config("config file must be a JSON object".into())),
        Err(e) => Err(Error::Config(format!("cannot parse config file: {e}"))),
    }
}

/// Resolves the effective parameters for `gate`.
pub fn resolve_params(
    gate: Gate,
    config_file: Option<&str>,
    overrides: &[String],
) -> Result<ParamSet> {
    let mut set = ParamSet::defaults(gate);
    if let Some(text) = config_file {
        set.apply(&parse_config_document(text)?)?;
    }
    for pair in overrides {
        set.set_from_pair(pair)?;
    }
    set.validate()?;
    if set.params.max_inputs != gate.arity() {
        return Err(Error::Config(format!(
            "gate {gate} needs max_inputs = {}, got {}",
            gate.arity(),
            set.params.max_inputs
        )));
    }
    Ok(set)
}

/// Builds the evaluator for an implementation of a gate. `network` replaces
/// the built-in reference network for [`Implementation::Network`].
pub fn build_evaluator(
    gate: Gate,
    implementation: Implementation,
    set: &ParamSet,
    network: Option<&Network>,
) -> Result<Box<dyn GateEvaluator>> {
    let params = set.params;
    let thresholds = set.thresholds;
    let wrap = |network: Network| -> Result<Box<dyn GateEvaluator>> {
        if network.inputs != gate.arity() {
            return Err(Error::Config(format!(
                "network has {} inputs, gate {gate} needs {}",
                network.inputs,
                gate.arity()
            )));
        }
        Ok(Box::new(NetworkGate { network, params }))
    };
    match (gate, implementation) {
        (Gate::AndOr, Implementation::Memristor) => {
            Ok(Box::new(MemristorAndOr { params, thresholds }))
        }
        (Gate::FullAdder, Implementation::Memristor) => {
            Ok(Box::new(MemristorAdder { params, thresholds }))
        }
        (Gate::FullAdder, Implementation::ClosedForm) => {
            Ok(Box::new(ClosedFormAdder { params, thresholds }))
        }
        (_, Implementation::Network) => wrap(match network {
            Some(n) => n.clone(),
            None if gate == Gate::AndOr => spmlg_reference_network(),
            None => fa_reference_network(true),
        }),
        (Gate::AndOr, Implementation::SinglePerceptron) => wrap(and_single_network()),
        (Gate::FullAdder, Implementation::BinaryFa) => wrap(binary_full_adder_network()),
        (gate, implementation) => Err(Error::Config(format!(
            "implementation {implementation} is not available for gate {gate}"
        ))),
    }
}
