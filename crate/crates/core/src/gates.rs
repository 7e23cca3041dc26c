//! The two calibrated single-memristor gates and their threshold logic.

use serde::{Deserialize, Serialize};

use crate::device::{self, median_sorted, sorted_magnitudes, GateParams};
use crate::error::{Error, Result};
use crate::symbol::LogicSymbol;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Thresholds {
    /// AND fires for a readout strictly above this level.
    pub and_level: f64,
    /// OR fires for any step current strictly below this level.
    pub or_level: f64,
    /// Adder step currents at or below this count as a `|` spike.
    pub detect_level: f64,
    /// Ascending cut points for sums 1, 2 and 3.
    pub sum_bands: [f64; 3],
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds {
            and_level: 5.5,
            or_level: -5.5,
            detect_level: -5.0,
            sum_bands: [4.0, 9.7, 11.5],
        }
    }
}

impl Thresholds {
    pub fn validate(&self) -> Result<()> {
        if !(self.and_level > 0.0 && self.or_level < 0.0) {
            return Err(Error::InvalidParams(format!(
                "need and_level > 0 > or_level, got {} and {}",
                self.and_level, self.or_level
            )));
        }
        let b = self.sum_bands;
        if !(b[0] < b[1] && b[1] < b[2]) {
            return Err(Error::InvalidParams(format!(
                "sum_bands must be strictly ascending, got {b:?}"
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpmlgOutput {
    pub and_bit: LogicSymbol,
    pub or_bit: LogicSymbol,
    pub readout: f64,
    pub a_values: [f64; 2],
    pub trace: [f64; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpmafaOutput {
    pub sum: u8,
    pub carry_bit: LogicSymbol,
    pub exists_one: LogicSymbol,
    pub readout: f64,
    pub a_values: [f64; 3],
    pub trace: [f64; 3],
    pub max_positive: f64,
}

/// AND and inclusive OR from one two-step run: AND is read from the
/// positive bounce-back, OR from the negative input spikes.
pub fn spmlg(
    p: LogicSymbol,
    q: LogicSymbol,
    params: &GateParams,
    thresholds: &Thresholds,
) -> Result<SpmlgOutput> {
    if params.max_inputs != 2 {
        return Err(Error::InvalidArgument(format!(
            "AND/OR gate needs 2-input parameters, got max_inputs = {}",
            params.max_inputs
        )));
    }
    thresholds.validate()?;
    let run = device::evaluate_sequence(params, &[p, q])?;
    let trace = run.trace();
    Ok(SpmlgOutput {
        and_bit: LogicSymbol::from_bool(run.readout > thresholds.and_level),
        or_bit: LogicSymbol::from_bool(trace.iter().any(|&i| i < thresholds.or_level)),
        readout: run.readout,
        a_values: [run.a_values[0], run.a_values[1]],
        trace: [trace[0], trace[1]],
    })
}

/// Arithmetical full adder: the sum comes from the largest positive current
/// seen over the run, carry and `∃|` from counting `|`-driven spikes.
pub fn spmafa(
    p: LogicSymbol,
    q: LogicSymbol,
    r: LogicSymbol,
    params: &GateParams,
    thresholds: &Thresholds,
) -> Result<SpmafaOutput> {
    if params.max_inputs != 3 {
        return Err(Error::InvalidArgument(format!(
            "full adder needs 3-input parameters, got max_inputs = {}",
            params.max_inputs
        )));
    }
    thresholds.validate()?;
    let run = device::evaluate_sequence(params, &[p, q, r])?;
    let trace = run.trace();
    let max_positive = trace.iter().copied().fold(run.readout.max(0.0), f64::max);
    let spikes = trace
        .iter()
        .filter(|&&i| i <= thresholds.detect_level)
        .count();
    Ok(SpmafaOutput {
        sum: classify_sum(max_positive, &thresholds.sum_bands),
        carry_bit: LogicSymbol::from_bool(spikes >= 2),
        exists_one: LogicSymbol::from_bool(spikes >= 1),
        readout: run.readout,
        a_values: [run.a_values[0], run.a_values[1], run.a_values[2]],
        trace: [trace[0], trace[1], trace[2]],
        max_positive,
    })
}

/// `-(Σa/2 + median|a|/3 + min|a|/6)` on three a-values.
pub fn closed_form_readout(a_values: [f64; 3]) -> f64 {
    let mags = sorted_magnitudes(&a_values);
    let half_sum = 0.5 * (a_values[0] + a_values[1] + a_values[2]);
    -(half_sum + median_sorted(&mags) / 3.0 + mags[0] / 6.0)
}

pub fn classify_sum(max_positive: f64, bands: &[f64; 3]) -> u8 {
    bands.iter().filter(|&&cut| max_positive >= cut).count() as u8
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbol::enumerate_inputs;
    use LogicSymbol::{One, Zero};

    #[test]
    fn spmlg_rows() {
        let (p, t) = (GateParams::spmlg(), Thresholds::default());
        let both = spmlg(One, One, &p, &t).unwrap();
        assert_eq!(both.readout, 6.0);
        assert_eq!((both.and_bit, both.or_bit), (One, One));
        let none = spmlg(Zero, Zero, &p, &t).unwrap();
        assert!(none.readout.abs() < 0.01);
        assert_eq!((none.and_bit, none.or_bit), (Zero, Zero));
        let late = spmlg(Zero, One, &p, &t).unwrap();
        assert!((late.readout - 4.0).abs() < 0.01);
        assert_eq!((late.and_bit, late.or_bit), (Zero, One));
    }

    #[test]
    fn and_implies_or() {
        let (p, t) = (GateParams::spmlg(), Thresholds::default());
        for row in enumerate_inputs(2) {
            let out = spmlg(row[0], row[1], &p, &t).unwrap();
            assert!(!out.and_bit.is_one() || out.or_bit.is_one());
        }
    }

    #[test]
    fn adder_rows() {
        let (p, t) = (GateParams::spmafa(), Thresholds::default());
        let three = spmafa(One, One, One, &p, &t).unwrap();
        assert_eq!(
            (three.sum, three.carry_bit, three.exists_one),
            (3, One, One)
        );
        assert!((three.readout - 12.5).abs() < 1e-9);

        let split = spmafa(One, Zero, One, &p, &t).unwrap();
        assert_eq!((split.sum, split.carry_bit), (2, One));
        assert!((split.max_positive - 10.47).abs() < 0.01);

        let none = spmafa(Zero, Zero, Zero, &p, &t).unwrap();
        assert_eq!((none.sum, none.carry_bit, none.exists_one), (0, Zero, Zero));
        assert!((none.readout + 0.1).abs() < 1e-9);

        let last = spmafa(Zero, Zero, One, &p, &t).unwrap();
        assert_eq!((last.sum, last.carry_bit, last.exists_one), (1, Zero, One));
    }

    #[test]
    fn wrong_arity_params() {
        let t = Thresholds::default();
        assert!(spmlg(One, One, &GateParams::spmafa(), &t).is_err());
        assert!(spmafa(One, One, One, &GateParams::spmlg(), &t).is_err());
    }

    #[test]
    fn closed_form_values() {
        assert_eq!(closed_form_readout([-18.0, -9.0, -6.0]), 12.5);
        assert!((closed_form_readout([0.05, 0.05, 0.05]) + 0.1).abs() < 1e-12);
        // 13.475 - 3 - 0.05/6
        assert!((closed_form_readout([-18.0, -9.0, 0.05]) - 10.466_666_666_7).abs() < 1e-9);
    }

    #[test]
    fn sum_bands() {
        let bands = Thresholds::default().sum_bands;
        assert_eq!(classify_sum(12.5, &bands), 3);
        assert_eq!(classify_sum(10.5, &bands), 2);
        assert_eq!(classify_sum(8.9, &bands), 1);
        assert_eq!(classify_sum(0.0, &bands), 0);
        assert_eq!(classify_sum(-0.1, &bands), 0);
    }

    #[test]
    fn threshold_validation() {
        let t = Thresholds {
            sum_bands: [4.0, 4.0, 11.5],
            ..Thresholds::default()
        };
        assert!(t.validate().is_err());
        let t = Thresholds {
            or_level: 1.0,
            ..Thresholds::default()
        };
        assert!(t.validate().is_err());
    }
}
