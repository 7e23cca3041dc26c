//! Reference perceptron networks equivalent (logically, and in some cases
//! numerically) to the memristor gates. Inputs are zeroed-device currents
//! in `u`, so unit weights can be checked against the measured currents.

use super::{Activation, Network, NetworkOutput, Perceptron, Tap, Unit};
use crate::device::GateParams;
use crate::error::Result;
use crate::symbol::LogicSymbol;

fn unit(name: &str, weights: Vec<f64>, bias: f64, activation: Activation) -> Unit {
    Unit {
        name: name.to_string(),
        perceptron: Perceptron::new(weights, bias, activation).expect("reference weights nonempty"),
    }
}

fn spike_tap(name: &str, unit: &str) -> Tap {
    Tap::Spike {
        name: name.into(),
        unit: unit.into(),
    }
}

/// One perceptron computing AND with symmetric weights `-3/8`.
pub fn and_single_network() -> Network {
    let w = -3.0 / 8.0;
    Network::new(
        2,
        vec![vec![unit("AND", vec![w, w], -5.5, Activation::Step)]],
        vec![
            Tap::Activation {
                name: "a".into(),
                unit: "AND".into(),
            },
            spike_tap("and", "AND"),
        ],
        Some("a".into()),
    )
    .expect("valid reference network")
}

pub fn and_single(p_current: f64, q_current: f64) -> NetworkOutput {
    and_single_network()
        .evaluate(&[p_current, q_current])
        .expect("two inputs")
}

/// Three units computing the symmetric sum and both ordered sums; the
/// larger ordered sum is the a-value the memristor actually reads out.
pub fn spmlg_reference_network() -> Network {
    let sym = -3.0 / 8.0;
    Network::new(
        2,
        vec![
            vec![
                unit("A", vec![sym, sym], -3.0, Activation::Step),
                unit("B", vec![-0.5, -0.25], -3.0, Activation::Step),
                unit("C", vec![-0.25, -0.5], -3.0, Activation::Step),
            ],
            vec![unit("OR", vec![0.0, 1.0, 1.0], -0.5, Activation::Step)],
        ],
        vec![
            Tap::Above {
                name: "and".into(),
                unit: "A".into(),
                level: 5.5,
            },
            spike_tap("or", "OR"),
            Tap::MaxActivation {
                name: "selected".into(),
                units: vec!["B".into(), "C".into()],
            },
        ],
        Some("selected".into()),
    )
    .expect("valid reference network")
}

pub fn spmlg_network(p_current: f64, q_current: f64) -> NetworkOutput {
    spmlg_reference_network()
        .evaluate(&[p_current, q_current])
        .expect("two inputs")
}

/// Thermometer-code detectors for at least one, two and three `|` inputs.
fn count_detectors() -> Vec<Unit> {
    let w = vec![-1.0 / 6.0; 3];
    vec![
        unit("ge1", w.clone(), -1.5, Activation::Step),
        unit("ge2", w.clone(), -4.5, Activation::Step),
        unit("ge3", w, -7.5, Activation::Step),
    ]
}

const DETECTORS: [&str; 3] = ["ge1", "ge2", "ge3"];

/// Full-adder network: three count detectors feeding a value unit plus
/// carry and `∃|` units. With `hybrid` the value unit is left
/// unthresholded and reports the 0 / 9 / 10.5 / 12.5 current levels.
pub fn fa_reference_network(hybrid: bool) -> Network {
    let value_activation = if hybrid {
        Activation::Identity
    } else {
        Activation::Step
    };
    let value_tap = if hybrid {
        Tap::Activation {
            name: "value".into(),
            unit: "value".into(),
        }
    } else {
        spike_tap("value", "value")
    };
    Network::new(
        3,
        vec![
            count_detectors(),
            vec![
                unit(
                    "value",
                    vec![9.0, 1.5, 2.0],
                    if hybrid { 0.0 } else { -0.5 },
                    value_activation,
                ),
                unit("carry", vec![0.0, 1.0, 0.0], -0.5, Activation::Step),
                unit("exists_one", vec![1.0, 0.0, 0.0], -0.5, Activation::Step),
            ],
        ],
        vec![
            Tap::CountSpikes {
                name: "sum".into(),
                units: DETECTORS.iter().map(|s| s.to_string()).collect(),
            },
            spike_tap("carry", "carry"),
            spike_tap("exists_one", "exists_one"),
            value_tap,
        ],
        hybrid.then(|| "value".to_string()),
    )
    .expect("valid reference network")
}

pub fn fa_network(p_current: f64, q_current: f64, r_current: f64, hybrid: bool) -> NetworkOutput {
    fa_reference_network(hybrid)
        .evaluate(&[p_current, q_current, r_current])
        .expect("three inputs")
}

/// Binary full adder on the same detectors: parity for the sum bit.
pub fn binary_full_adder_network() -> Network {
    Network::new(
        3,
        vec![
            count_detectors(),
            vec![
                unit("sum_bit", vec![1.0, -1.0, 1.0], -0.5, Activation::Step),
                unit("carry", vec![0.0, 1.0, 0.0], -0.5, Activation::Step),
            ],
        ],
        vec![spike_tap("sum_bit", "sum_bit"), spike_tap("carry", "carry")],
        None,
    )
    .expect("valid reference network")
}

/// Returns `(sum_bit, carry_bit)`.
pub fn binary_full_adder(
    p: LogicSymbol,
    q: LogicSymbol,
    r: LogicSymbol,
) -> (LogicSymbol, LogicSymbol) {
    let params = GateParams::spmafa();
    let currents = zeroed_currents(&params, &[p, q, r]);
    let out = binary_full_adder_network()
        .evaluate(&currents)
        .expect("three inputs");
    (
        out.symbol("sum_bit").expect("sum_bit tap"),
        out.symbol("carry").expect("carry tap"),
    )
}

/// Currents each symbol would produce in a zeroed device.
pub fn zeroed_currents(params: &GateParams, symbols: &[LogicSymbol]) -> Vec<f64> {
    symbols
        .iter()
        .map(|s| {
            if s.is_one() {
                params.x_one
            } else {
                params.x_zero
            }
        })
        .collect()
}

/// Evaluates a reference network on symbols, mapped through `params`.
pub fn evaluate_symbols(
    net: &Network,
    params: &GateParams,
    symbols: &[LogicSymbol],
) -> Result<NetworkOutput> {
    net.evaluate(&zeroed_currents(params, symbols))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbol::enumerate_inputs;
    use LogicSymbol::{One, Zero};

    #[test]
    fn single_perceptron_and() {
        let out = and_single(-8.0, -8.0);
        assert_eq!(out.real("a"), Some(6.0));
        assert_eq!(out.symbol("and"), Some(One));
        let out = and_single(-8.0, 0.0);
        assert_eq!(out.real("a"), Some(3.0));
        assert_eq!(out.symbol("and"), Some(Zero));
        let out = and_single(0.0, 0.0);
        assert_eq!(out.real("a"), Some(0.0));
        assert_eq!(out.symbol("and"), Some(Zero));
    }

    #[test]
    fn three_perceptron_and_or() {
        let out = spmlg_network(-8.0, 0.0);
        assert_eq!(out.activations[0], vec![3.0, 4.0, 2.0]);
        assert_eq!(out.spikes[0], vec![Zero, One, Zero]);
        assert_eq!(out.real("selected"), Some(4.0));
        assert_eq!(out.symbol("or"), Some(One));
        assert_eq!(out.symbol("and"), Some(Zero));

        let out = spmlg_network(-8.0, -8.0);
        assert_eq!(out.real("selected"), Some(6.0));
        assert_eq!(out.symbol("and"), Some(One));
        assert_eq!(out.symbol("or"), Some(One));

        let out = spmlg_network(0.0, 0.0);
        assert!(out.activations[0].iter().all(|&a| a == 0.0));
        assert!(out.spikes.iter().flatten().all(|s| *s == Zero));
    }

    #[test]
    fn adder_network_levels() {
        let out = fa_network(-18.0, -18.0, -18.0, true);
        assert_eq!(out.real("value"), Some(12.5));
        assert_eq!(
            (out.symbol("carry"), out.symbol("exists_one")),
            (Some(One), Some(One))
        );
        assert_eq!(out.count("sum"), Some(3));

        let out = fa_network(0.05, 0.05, 0.05, true);
        assert_eq!(out.real("value"), Some(0.0));
        assert_eq!(out.count("sum"), Some(0));

        let out = fa_network(-18.0, 0.05, 0.05, true);
        assert_eq!(out.real("value"), Some(9.0));
        assert_eq!(out.count("sum"), Some(1));

        let out = fa_network(-18.0, -18.0, 0.05, true);
        assert_eq!(out.real("value"), Some(10.5));
    }

    #[test]
    fn thresholded_adder_network() {
        let out = fa_network(-18.0, 0.05, 0.05, false);
        assert_eq!(out.real("value"), None);
        assert_eq!(out.symbol("value"), Some(One));
        assert_eq!(
            fa_network(0.05, 0.05, 0.05, false).symbol("value"),
            Some(Zero)
        );
        assert!(fa_reference_network(false).readout_tap.is_none());
    }

    #[test]
    fn six_units_in_adder_network() {
        let net = fa_reference_network(true);
        assert_eq!(net.layers.iter().map(Vec::len).sum::<usize>(), 6);
    }

    #[test]
    fn binary_adder_truth_table() {
        for row in enumerate_inputs(3) {
            let ones = row.iter().filter(|s| s.is_one()).count();
            let (sum, carry) = binary_full_adder(row[0], row[1], row[2]);
            assert_eq!(sum.is_one(), ones % 2 == 1, "{row:?}");
            assert_eq!(carry.is_one(), ones >= 2, "{row:?}");
        }
    }
}
