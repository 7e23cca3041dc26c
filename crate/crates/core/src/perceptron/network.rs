use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::{FireOutput, Perceptron};
use crate::error::{Error, Result};
use crate::symbol::LogicSymbol;

/// Schema version of the JSON network spec document.
pub const NETWORK_SPEC_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Unit {
    pub name: String,
    #[serde(flatten)]
    pub perceptron: Perceptron,
}

/// A named result read off the evaluated network.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Tap {
    /// Pre-threshold a-value of a unit.
    Activation { name: String, unit: String },
    /// Post-threshold spike of a unit.
    Spike { name: String, unit: String },
    /// `|` iff the unit's a-value is strictly above `level`.
    Above {
        name: String,
        unit: String,
        level: f64,
    },
    /// Largest a-value among the units.
    MaxActivation { name: String, units: Vec<String> },
    /// Number of the units that fire.
    CountSpikes { name: String, units: Vec<String> },
}

impl Tap {
    pub fn name(&self) -> &str {
        match self {
            Tap::Activation { name, .. }
            | Tap::Spike { name, .. }
            | Tap::Above { name, .. }
            | Tap::MaxActivation { name, .. }
            | Tap::CountSpikes { name, .. } => name,
        }
    }

    fn units(&self) -> Vec<&str> {
        match self {
            Tap::Activation { unit, .. } | Tap::Spike { unit, .. } | Tap::Above { unit, .. } => {
                vec![unit.as_str()]
            }
            Tap::MaxActivation { units, .. } | Tap::CountSpikes { units, .. } => {
                units.iter().map(String::as_str).collect()
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(untagged)]
pub enum TapValue {
    Symbol(LogicSymbol),
    Count(u32),
    Real(f64),
}

/// Feed-forward layers of perceptrons. Layer 0 reads the network inputs;
/// every later layer reads all outputs of the layer before it (spikes as
/// 1/0, identity units as their a-value).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Network {
    pub version: u32,
    pub inputs: usize,
    pub layers: Vec<Vec<Unit>>,
    pub taps: Vec<Tap>,
    /// Tap used as the network's primary continuous output.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub readout_tap: Option<String>,
    #[serde(skip)]
    index: HashMap<String, (usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NetworkOutput {
    pub activations: Vec<Vec<f64>>,
    pub spikes: Vec<Vec<LogicSymbol>>,
    pub results: BTreeMap<String, TapValue>,
}

impl NetworkOutput {
    pub fn symbol(&self, name: &str) -> Option<LogicSymbol> {
        match self.results.get(name)? {
            TapValue::Symbol(s) => Some(*s),
            _ => None,
        }
    }

    pub fn real(&self, name: &str) -> Option<f64> {
        match self.results.get(name)? {
            TapValue::Real(v) => Some(*v),
            _ => None,
        }
    }

    pub fn count(&self, name: &str) -> Option<u32> {
        match self.results.get(name)? {
            TapValue::Count(c) => Some(*c),
            _ => None,
        }
    }
}

impl Network {
    pub fn new(
        inputs: usize,
        layers: Vec<Vec<Unit>>,
        taps: Vec<Tap>,
        readout_tap: Option<String>,
    ) -> Result<Self> {
        let mut net = Network {
            version: NETWORK_SPEC_VERSION,
            inputs,
            layers,
            taps,
            readout_tap,
            index: HashMap::new(),
        };
        net.check()?;
        Ok(net)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let mut net: Network = serde_json::from_str(text)
            .map_err(|e| Error::InvalidNetwork(format!("cannot parse network spec: {e}")))?;
        if net.version != NETWORK_SPEC_VERSION {
            return Err(Error::InvalidNetwork(format!(
                "unsupported network spec version {} (expected {NETWORK_SPEC_VERSION})",
                net.version
            )));
        }
        net.check()?;
        Ok(net)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("network serializes")
    }

    fn check(&mut self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidNetwork(msg));
        if self.inputs == 0 || self.layers.is_empty() {
            return bad("network needs inputs and at least one layer".into());
        }
        self.index.clear();
        let mut fan_in = self.inputs;
        for (li, layer) in self.layers.iter().enumerate() {
            if layer.is_empty() {
                return bad(format!("layer {li} is empty"));
            }
            for (ui, unit) in layer.iter().enumerate() {
                if unit.perceptron.weights.len() != fan_in {
                    return bad(format!(
                        "unit {} in layer {li} has {} weights, layer fan-in is {fan_in}",
                        unit.name,
                        unit.perceptron.weights.len()
                    ));
                }
                if self.index.insert(unit.name.clone(), (li, ui)).is_some() {
                    return bad(format!("duplicate unit name {}", unit.name));
                }
            }
            fan_in = layer.len();
        }
        let mut seen = std::collections::HashSet::new();
        for tap in &self.taps {
            if !seen.insert(tap.name()) {
                return bad(format!("duplicate tap name {}", tap.name()));
            }
            let units = tap.units();
            if units.is_empty() {
                return bad(format!("tap {} names no units", tap.name()));
            }
            if let Some(missing) = units.iter().find(|u| !self.index.contains_key(**u)) {
                return bad(format!(
                    "tap {} refers to unknown unit {missing}",
                    tap.name()
                ));
            }
        }
        if let Some(r) = &self.readout_tap {
            if !self.taps.iter().any(|t| t.name() == r) {
                return bad(format!("readout tap {r} is not defined"));
            }
        }
        Ok(())
    }

    pub fn evaluate(&self, inputs: &[f64]) -> Result<NetworkOutput> {
        if inputs.len() != self.inputs {
            return Err(Error::ArityMismatch {
                expected: self.inputs,
                got: inputs.len(),
            });
        }
        let mut activations = Vec::with_capacity(self.layers.len());
        let mut spikes = Vec::with_capacity(self.layers.len());
        let mut signal = inputs.to_vec();
        for layer in &self.layers {
            let mut acts = Vec::with_capacity(layer.len());
            let mut fired = Vec::with_capacity(layer.len());
            let mut next = Vec::with_capacity(layer.len());
            for unit in layer {
                let (a, out) = unit.perceptron.fire(&signal)?;
                acts.push(a);
                fired.push(match out {
                    FireOutput::Spike(s) => s,
                    FireOutput::Value(_) => unit.perceptron.spikes_at(a),
                });
                next.push(out.as_signal());
            }
            activations.push(acts);
            spikes.push(fired);
            signal = next;
        }

        let act = |u: &str| {
            let (l, i) = self.index[u];
            activations[l][i]
        };
        let spike = |u: &str| {
            let (l, i) = self.index[u];
            spikes[l][i]
        };
        let results = self
            .taps
            .iter()
            .map(|tap| {
                let value = match tap {
                    Tap::Activation { unit, .. } => TapValue::Real(act(unit)),
                    Tap::Spike { unit, .. } => TapValue::Symbol(spike(unit)),
                    Tap::Above { unit, level, .. } => {
                        TapValue::Symbol(LogicSymbol::from_bool(act(unit) > *level))
                    }
                    Tap::MaxActivation { units, .. } => TapValue::Real(
                        units
                            .iter()
                            .map(|u| act(u))
                            .fold(f64::NEG_INFINITY, f64::max),
                    ),
                    Tap::CountSpikes { units, .. } => {
                        TapValue::Count(units.iter().filter(|u| spike(u).is_one()).count() as u32)
                    }
                };
                (tap.name().to_string(), value)
            })
            .collect();

        Ok(NetworkOutput {
            activations,
            spikes,
            results,
        })
    }

    /// Value of the readout tap, if it yields a real.
    pub fn readout(&self, out: &NetworkOutput) -> Option<f64> {
        out.real(self.readout_tap.as_deref()?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perceptron::Activation;

    fn unit(name: &str, weights: Vec<f64>, bias: f64) -> Unit {
        Unit {
            name: name.into(),
            perceptron: Perceptron::new(weights, bias, Activation::Step).unwrap(),
        }
    }

    #[test]
    fn rejects_bad_wiring() {
        let err = Network::new(2, vec![vec![unit("a", vec![1.0], 0.0)]], vec![], None);
        assert!(matches!(err, Err(Error::InvalidNetwork(_))));

        let err = Network::new(
            1,
            vec![vec![unit("a", vec![1.0], 0.0)]],
            vec![Tap::Spike {
                name: "out".into(),
                unit: "missing".into(),
            }],
            None,
        );
        assert!(err.is_err());

        let err = Network::new(
            1,
            vec![vec![unit("a", vec![1.0], 0.0), unit("a", vec![1.0], 0.0)]],
            vec![],
            None,
        );
        assert!(err.is_err());
    }

    #[test]
    fn json_round_trip_and_version_check() {
        let net = Network::new(
            1,
            vec![vec![unit("a", vec![2.0], -1.0)]],
            vec![Tap::Activation {
                name: "x".into(),
                unit: "a".into(),
            }],
            Some("x".into()),
        )
        .unwrap();
        let back = Network::from_json(&net.to_json()).unwrap();
        assert_eq!(
            back.evaluate(&[3.0]).unwrap(),
            net.evaluate(&[3.0]).unwrap()
        );

        let bumped = net.to_json().replace("\"version\": 1", "\"version\": 9");
        assert!(Network::from_json(&bumped).is_err());
        let unknown = net
            .to_json()
            .replace("\"inputs\"", "\"extra\": 1, \"inputs\"");
        assert!(Network::from_json(&unknown).is_err());
    }

    #[test]
    fn input_arity() {
        let net = Network::new(1, vec![vec![unit("a", vec![1.0], 0.0)]], vec![], None).unwrap();
        assert!(matches!(
            net.evaluate(&[1.0, 2.0]),
            Err(Error::ArityMismatch { .. })
        ));
    }
}
