//! Spiking logic on a single memristor, modelled as a time-variant
//! perceptron.
//!
//! [`device`] steps the memristor's short-term memory through an input
//! sequence, [`gates`] turns runs into AND/OR and full-adder outputs,
//! [`perceptron`] holds the time-invariant reference networks and
//! [`equivalence`] compares any two implementations over their full truth
//! tables.

pub mod cli;
pub mod config;
pub mod device;
pub mod equivalence;
pub mod error;
pub mod gates;
pub mod perceptron;
pub mod symbol;

pub use device::{
    evaluate_sequence, EvalResult, GateParams, MemristorState, StepEvent, StepRecord,
};
pub use error::{Error, Result};
pub use gates::{SpmafaOutput, SpmlgOutput, Thresholds};
pub use symbol::LogicSymbol;
