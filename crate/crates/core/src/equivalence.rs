//! Exhaustive truth-table comparison between gate implementations.
//!
//! Two implementations are numerically equivalent when every row agrees on
//! the shared logical outputs and on the primary continuous output within
//! tolerance, and logically equivalent when only the logical outputs agree.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::device::{self, GateParams};
use crate::error::{Error, Result};
use crate::gates::{self, Thresholds};
use crate::perceptron::reference::evaluate_symbols;
use crate::perceptron::{Network, TapValue};
use crate::symbol::{enumerate_inputs, LogicSymbol};

/// Default tolerance for numeric equivalence, in `u`.
pub const DEFAULT_TOLERANCE: f64 = 0.01;
/// Tolerance when comparing against printed full-adder sums.
pub const TABLE_TOLERANCE: f64 = 0.25;

/// One evaluated row of a gate's truth table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GateRow {
    pub inputs: Vec<LogicSymbol>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a_values: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<f64>>,
    /// Primary continuous output (readout or selected a-value).
    pub readout: Option<f64>,
    /// Logical outputs by name; symbols as 0/1, sums as counts.
    pub logical: BTreeMap<String, u32>,
}

pub trait GateEvaluator {
    fn arity(&self) -> usize;
    fn evaluate(&self, inputs: &[LogicSymbol]) -> Result<GateRow>;
}

fn check_len(expected: usize, inputs: &[LogicSymbol]) -> Result<()> {
    if inputs.len() != expected {
        return Err(Error::ArityMismatch {
            expected,
            got: inputs.len(),
        });
    }
    Ok(())
}

fn bit(s: LogicSymbol) -> u32 {
    u32::from(s.bit())
}

/// The memristor AND/OR gate.
#[derive(Debug, Clone)]
pub struct MemristorAndOr {
    pub params: GateParams,
    pub thresholds: Thresholds,
}

impl GateEvaluator for MemristorAndOr {
    fn arity(&self) -> usize {
        2
    }

    fn evaluate(&self, inputs: &[LogicSymbol]) -> Result<GateRow> {
        check_len(2, inputs)?;
        let out = gates::spmlg(inputs[0], inputs[1], &self.params, &self.thresholds)?;
        Ok(GateRow {
            inputs: inputs.to_vec(),
            a_values: Some(out.a_values.to_vec()),
            trace: Some(out.trace.to_vec()),
            readout: Some(out.readout),
            logical: BTreeMap::from([
                ("and".to_string(), bit(out.and_bit)),
                ("or".to_string(), bit(out.or_bit)),
            ]),
        })
    }
}

/// The memristor arithmetical full adder.
#[derive(Debug, Clone)]
pub struct MemristorAdder {
    pub params: GateParams,
    pub thresholds: Thresholds,
}

fn adder_logical(sum: u8, carry: LogicSymbol, exists_one: LogicSymbol) -> BTreeMap<String, u32> {
    BTreeMap::from([
        ("sum".to_string(), u32::from(sum)),
        ("carry".to_string(), bit(carry)),
        ("exists_one".to_string(), bit(exists_one)),
    ])
}

impl GateEvaluator for MemristorAdder {
    fn arity(&self) -> usize {
        3
    }

    fn evaluate(&self, inputs: &[LogicSymbol]) -> Result<GateRow> {
        check_len(3, inputs)?;
        let out = gates::spmafa(
            inputs[0],
            inputs[1],
            inputs[2],
            &self.params,
            &self.thresholds,
        )?;
        Ok(GateRow {
            inputs: inputs.to_vec(),
            a_values: Some(out.a_values.to_vec()),
            trace: Some(out.trace.to_vec()),
            readout: Some(out.readout),
            logical: adder_logical(out.sum, out.carry_bit, out.exists_one),
        })
    }
}

/// Full adder read out through the closed-form Median/Min expression on
/// effective a-values, without stepping the device model.
#[derive(Debug, Clone)]
pub struct ClosedFormAdder {
    pub params: GateParams,
    pub thresholds: Thresholds,
}

impl ClosedFormAdder {
    /// `|` number `k` (1-based, counted in input order) contributes `x_one / k`.
    pub fn effective_values(&self, inputs: &[LogicSymbol]) -> [f64; 3] {
        let mut out = [0.0; 3];
        let mut ones = 0.0;
        for (slot, s) in out.iter_mut().zip(inputs) {
            *slot = if s.is_one() {
                ones += 1.0;
                self.params.x_one / ones
            } else {
                self.params.x_zero
            };
        }
        out
    }
}

impl GateEvaluator for ClosedFormAdder {
    fn arity(&self) -> usize {
        3
    }

    fn evaluate(&self, inputs: &[LogicSymbol]) -> Result<GateRow> {
        check_len(3, inputs)?;
        self.params.validate()?;
        self.thresholds.validate()?;
        let a = self.effective_values(inputs);
        let readout = gates::closed_form_readout(a);
        let max_positive = a.iter().copied().fold(readout.max(0.0), f64::max);
        let spikes = a
            .iter()
            .filter(|&&v| v <= self.thresholds.detect_level)
            .count();
        Ok(GateRow {
            inputs: inputs.to_vec(),
            a_values: Some(a.to_vec()),
            trace: None,
            readout: Some(readout),
            logical: adder_logical(
                gates::classify_sum(max_positive, &self.thresholds.sum_bands),
                LogicSymbol::from_bool(spikes >= 2),
                LogicSymbol::from_bool(spikes >= 1),
            ),
        })
    }
}

/// Any perceptron network fed with zeroed-device currents. Symbol and count
/// taps become logical outputs; the readout tap is the numeric output.
#[derive(Debug, Clone)]
pub struct NetworkGate {
    pub network: Network,
    pub params: GateParams,
}

impl GateEvaluator for NetworkGate {
    fn arity(&self) -> usize {
        self.network.inputs
    }

    fn evaluate(&self, inputs: &[LogicSymbol]) -> Result<GateRow> {
        check_len(self.network.inputs, inputs)?;
        let out = evaluate_symbols(&self.network, &self.params, inputs)?;
        let logical = out
            .results
            .iter()
            .filter_map(|(name, v)| match v {
                TapValue::Symbol(s) => Some((name.clone(), bit(*s))),
                TapValue::Count(c) => Some((name.clone(), *c)),
                TapValue::Real(_) => None,
            })
            .collect();
        Ok(GateRow {
            inputs: inputs.to_vec(),
            a_values: None,
            trace: None,
            readout: self.network.readout(&out),
            logical,
        })
    }
}

/// All `2^arity` rows in table order (all-`|` first).
pub fn table_dump(gate: &dyn GateEvaluator, arity: usize) -> Result<Vec<GateRow>> {
    if !matches!(arity, 2 | 3) {
        return Err(Error::InvalidArgument(format!(
            "arity must be 2 or 3, got {arity}"
        )));
    }
    if gate.arity() != arity {
        return Err(Error::ArityMismatch {
            expected: arity,
            got: gate.arity(),
        });
    }
    enumerate_inputs(arity)
        .iter()
        .map(|row| gate.evaluate(row))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    NumericEquivalent,
    LogicalEquivalent,
    Mismatch,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonRow {
    pub inputs: Vec<LogicSymbol>,
    pub logical_a: BTreeMap<String, u32>,
    pub logical_b: BTreeMap<String, u32>,
    pub logical_match: bool,
    pub numeric_a: Option<f64>,
    pub numeric_b: Option<f64>,
    /// `numeric_a - numeric_b`.
    pub delta: Option<f64>,
    pub abs_delta: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonReport {
    pub arity: usize,
    pub tolerance: f64,
    /// Logical outputs present in both implementations.
    pub compared_outputs: Vec<String>,
    pub rows: Vec<ComparisonRow>,
    pub verdict: Verdict,
}

pub fn compare_gate(
    impl_a: &dyn GateEvaluator,
    impl_b: &dyn GateEvaluator,
    arity: usize,
    tolerance: f64,
) -> Result<ComparisonReport> {
    if tolerance.is_nan() || tolerance < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "tolerance must be >= 0, got {tolerance}"
        )));
    }
    let rows_a = table_dump(impl_a, arity)?;
    let rows_b = table_dump(impl_b, arity)?;

    let shared: Vec<String> = rows_a[0]
        .logical
        .keys()
        .filter(|k| rows_b[0].logical.contains_key(*k))
        .cloned()
        .collect();
    if shared.is_empty() {
        return Err(Error::InvalidArgument(
            "implementations share no logical outputs".into(),
        ));
    }

    let rows: Vec<ComparisonRow> = rows_a
        .into_iter()
        .zip(rows_b)
        .map(|(a, b)| {
            let logical_match = shared.iter().all(|k| a.logical.get(k) == b.logical.get(k));
            let delta = match (a.readout, b.readout) {
                (Some(x), Some(y)) => Some(x - y),
                _ => None,
            };
            ComparisonRow {
                inputs: a.inputs,
                logical_a: a.logical,
                logical_b: b.logical,
                logical_match,
                numeric_a: a.readout,
                numeric_b: b.readout,
                delta,
                abs_delta: delta.map(f64::abs),
            }
        })
        .collect();

    let verdict = if !rows.iter().all(|r| r.logical_match) {
        Verdict::Mismatch
    } else if rows
        .iter()
        .all(|r| matches!(r.abs_delta, Some(d) if d <= tolerance))
    {
        Verdict::NumericEquivalent
    } else {
        Verdict::LogicalEquivalent
    };

    Ok(ComparisonReport {
        arity,
        tolerance,
        compared_outputs: shared,
        rows,
        verdict,
    })
}

/// Readout recomputed from a row's effective a-values through the device
/// readout rule, for rows that expose them.
pub fn recomputed_readout(params: &GateParams, row: &GateRow) -> Option<f64> {
    row.a_values
        .as_ref()
        .map(|a| device::readout_from_effective(params, a))
}
