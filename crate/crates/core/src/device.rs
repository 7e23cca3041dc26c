//! Discrete-time memristor state machine.
//!
//! A gate is driven by an ordered sequence of spike symbols. Every step
//! produces an effective a-value (the contribution that feeds the readout)
//! and a measured current (what the device shows on its single wire). The
//! two only differ on the double zero-crossing pattern `|, ○, |`, where the
//! `○` releases stored memory as a positive spike and the following `|`
//! is damped by friction.
//!
//! All quantities are in the internal unit `u`; `GateParams::unit_scale`
//! converts to amps for presentation.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::symbol::LogicSymbol;

/// Calibration constants for one physical gate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GateParams {
    /// Amps per internal unit.
    pub unit_scale: f64,
    /// Current of `|` in a zeroed device.
    pub x_one: f64,
    /// Current of `○` in a zeroed device.
    pub x_zero: f64,
    pub friction_fraction: f64,
    pub release_fraction: f64,
    pub c2: f64,
    pub c3: f64,
    pub max_inputs: usize,
}

impl GateParams {
    /// Two-input AND/OR gate, `u = 0.1 µA`.
    pub fn spmlg() -> Self {
        GateParams {
            unit_scale: 1e-7,
            x_one: -8.0,
            x_zero: 0.0012,
            friction_fraction: 1.0 / 6.0,
            release_fraction: 0.5,
            c2: 0.0,
            c3: 0.0,
            max_inputs: 2,
        }
    }

    /// Three-input arithmetical full adder, `u = 1 nA`.
    pub fn spmafa() -> Self {
        let x_one: f64 = -18.0;
        GateParams {
            unit_scale: 1e-9,
            x_one,
            x_zero: 0.05,
            friction_fraction: 1.0 / 6.0,
            release_fraction: 0.5,
            c2: x_one.abs() / 6.0,
            c3: x_one.abs() / 18.0,
            max_inputs: 3,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParams(msg));
        if !(self.unit_scale.is_finite() && self.unit_scale > 0.0) {
            return bad(format!(
                "unit_scale must be positive, got {}",
                self.unit_scale
            ));
        }
        if !(self.x_one < 0.0 && 0.0 < self.x_zero) {
            return bad(format!(
                "need x_one < 0 < x_zero, got x_one={} x_zero={}",
                self.x_one, self.x_zero
            ));
        }
        // ○ must sit well below the energy needed to move the device state
        if self.x_zero.abs() >= 0.01 * self.x_one.abs() {
            return bad(format!(
                "|x_zero| must be below 1% of |x_one|, got {} vs {}",
                self.x_zero, self.x_one
            ));
        }
        if !(self.c2 >= 0.0 && self.c3 >= 0.0) {
            return bad("corrections c2, c3 must be non-negative".into());
        }
        for (name, f) in [
            ("friction_fraction", self.friction_fraction),
            ("release_fraction", self.release_fraction),
        ] {
            if !(f > 0.0 && f < 1.0) {
                return bad(format!("{name} must lie in (0, 1), got {f}"));
            }
        }
        if !matches!(self.max_inputs, 2 | 3) {
            return bad(format!(
                "max_inputs must be 2 or 3, got {}",
                self.max_inputs
            ));
        }
        Ok(())
    }
}

/// Short-term memory of the device between zeroings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MemristorState {
    /// Signed sum of effective `|` contributions.
    pub m: f64,
    /// Number of `|` inputs absorbed since the last zeroing.
    pub k: u32,
    pub step_index: usize,
    pub energetic: bool,
}

impl MemristorState {
    fn absorb_one(&mut self, a_eff: f64) {
        self.m += a_eff;
        self.k += 1;
        self.energetic = true;
    }
}

/// The zeroed device: no memory, no steps taken.
pub fn zero_state(_params: &GateParams) -> MemristorState {
    MemristorState {
        m: 0.0,
        k: 0,
        step_index: 0,
        energetic: false,
    }
}

/// Weight of the `n`-th `|` absorbed since zeroing: `1/n` as binary64.
pub fn diminishing_weight(n: u32) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "diminishing weight index must be >= 1".into(),
        ));
    }
    Ok(1.0 / f64::from(n))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum StepEvent {
    None,
    BounceBack,
    Friction,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StepRecord {
    pub step_index: usize,
    pub input: LogicSymbol,
    pub a_eff: f64,
    pub i_measured: f64,
    pub event: StepEvent,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvalResult {
    pub records: Vec<StepRecord>,
    pub readout: f64,
    pub a_values: Vec<f64>,
}

impl EvalResult {
    pub fn trace(&self) -> Vec<f64> {
        self.records.iter().map(|r| r.i_measured).collect()
    }

    pub fn ones(&self) -> usize {
        self.records.iter().filter(|r| r.input.is_one()).count()
    }
}

/// Runs one logical test on a freshly zeroed device.
pub fn evaluate_sequence(params: &GateParams, inputs: &[LogicSymbol]) -> Result<EvalResult> {
    params.validate()?;
    if inputs.is_empty() || inputs.len() > params.max_inputs {
        return Err(Error::InvalidArgument(format!(
            "sequence length must be in 1..={}, got {}",
            params.max_inputs,
            inputs.len()
        )));
    }

    let mut state = zero_state(params);
    let mut records = Vec::with_capacity(inputs.len());
    let mut released = false;

    for (pos, &input) in inputs.iter().enumerate() {
        state.step_index = pos + 1;
        let record = match input {
            LogicSymbol::One => {
                let a_eff = params.x_one * diminishing_weight(state.k + 1)?;
                state.absorb_one(a_eff);
                if std::mem::take(&mut released) {
                    StepRecord {
                        step_index: state.step_index,
                        input,
                        a_eff,
                        i_measured: params.x_one * (1.0 - params.friction_fraction),
                        event: StepEvent::Friction,
                    }
                } else {
                    StepRecord {
                        step_index: state.step_index,
                        input,
                        a_eff,
                        i_measured: a_eff,
                        event: StepEvent::None,
                    }
                }
            }
            LogicSymbol::Zero => {
                let a_eff = params.x_zero;
                // The device crosses 0 V twice with energy in memory only
                // when another | is still to come.
                let crosses_twice = state.energetic && inputs[pos + 1..].iter().any(|s| s.is_one());
                if crosses_twice {
                    released = true;
                    StepRecord {
                        step_index: state.step_index,
                        input,
                        a_eff,
                        i_measured: a_eff + params.release_fraction * params.x_one.abs(),
                        event: StepEvent::BounceBack,
                    }
                } else {
                    StepRecord {
                        step_index: state.step_index,
                        input,
                        a_eff,
                        i_measured: a_eff,
                        event: StepEvent::None,
                    }
                }
            }
        };
        records.push(record);
    }

    let a_values: Vec<f64> = records.iter().map(|r| r.a_eff).collect();
    let readout = readout_from_effective(params, &a_values);
    Ok(EvalResult {
        records,
        readout,
        a_values,
    })
}

/// Bounce-back readout at voltage-off, from effective a-values alone.
///
/// Two-input gates read out half the stored sum. Three-input gates add the
/// median and minimum magnitude terms, which carry the per-step energy loss.
pub fn readout_from_effective(params: &GateParams, a_values: &[f64]) -> f64 {
    let half_sum = 0.5 * a_values.iter().sum::<f64>();
    if params.max_inputs == 3 {
        let mags = sorted_magnitudes(a_values);
        -(half_sum + median_sorted(&mags) / 3.0 + mags[0] / 6.0)
    } else {
        -half_sum
    }
}

/// The same readout written as `-Σ/2` minus the |-count keyed corrections.
/// Equals [`readout_from_effective`] up to the `○` contributions.
pub fn corrected_sum_readout(params: &GateParams, a_values: &[f64], ones: usize) -> f64 {
    let mut out = -0.5 * a_values.iter().sum::<f64>();
    if ones >= 2 {
        out -= params.c2;
    }
    if ones >= 3 {
        out -= params.c3;
    }
    out
}

pub(crate) fn sorted_magnitudes(values: &[f64]) -> Vec<f64> {
    let mut mags: Vec<f64> = values.iter().map(|v| v.abs()).collect();
    mags.sort_by(f64::total_cmp);
    mags
}

pub(crate) fn median_sorted(sorted: &[f64]) -> f64 {
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        0.5 * (sorted[n / 2 - 1] + sorted[n / 2])
    }
}
