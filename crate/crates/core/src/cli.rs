//! Command-line front end. Machine formats (JSON, CSV) are byte-stable for a
//! fixed configuration: currents are printed in `u` rounded to four decimal
//! places, with the unit scale in amps carried alongside.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::config::{
    build_evaluator, resolve_params, Format, Gate, Implementation, ParamSet, CONFIG_ENV,
};
use crate::device::{self, StepEvent};
use crate::equivalence::{
    compare_gate, table_dump, ComparisonReport, GateRow, Verdict, DEFAULT_TOLERANCE,
};
use crate::error::{Error, Result};
use crate::gates;
use crate::perceptron::{
    and_single_network, binary_full_adder_network, fa_reference_network, spmlg_reference_network,
    Network,
};
use crate::symbol::{parse_sequence, LogicSymbol};

#[derive(Debug, Parser)]
#[command(
    name = "spikelogic",
    version,
    about = "Single-memristor spiking logic gates and their perceptron equivalents"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dump the full truth table of one implementation.
    TruthTable {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long = "impl", value_enum, default_value_t = Implementation::Memristor)]
        implementation: Implementation,
    },
    /// Step-by-step device trace for one input sequence.
    Trace {
        #[command(flatten)]
        common: CommonArgs,
        /// Comma-separated symbols, e.g. `1,0,1`.
        #[arg(long)]
        inputs: String,
    },
    /// Compare two implementations over every input combination.
    Compare {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, value_enum)]
        a: Implementation,
        #[arg(long, value_enum)]
        b: Implementation,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tolerance: f64,
        /// Verdict that counts as success for the exit code.
        #[arg(long, value_enum, default_value_t = Expect::Numeric)]
        expect: Expect,
    },
    /// Print a built-in reference network as a network spec document.
    NetworkSpec {
        #[arg(long, value_enum)]
        gate: Gate,
        #[arg(long = "impl", value_enum, default_value_t = Implementation::Network)]
        implementation: Implementation,
        /// Threshold the adder's value unit instead of exposing its current.
        #[arg(long)]
        thresholded: bool,
    },
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    #[arg(long, value_enum)]
    pub gate: Gate,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Flat JSON parameter document.
    #[arg(long, env = CONFIG_ENV)]
    pub config: Option<PathBuf>,
    /// Parameter override `key=value`; repeatable, wins over the config file.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    pub overrides: Vec<String>,
    /// Network spec document used for `--impl network`.
    #[arg(long)]
    pub network: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Expect {
    Numeric,
    Logical,
}

/// Rendered output and the process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::TruthTable {
            common,
            implementation,
        } => truth_table(common, *implementation),
        Command::Trace { common, inputs } => trace(common, inputs),
        Command::Compare {
            common,
            a,
            b,
            tolerance,
            expect,
        } => compare(common, *a, *b, *tolerance, *expect),
        Command::NetworkSpec {
            gate,
            implementation,
            thresholded,
        } => {
            let net = match (gate, implementation) {
                (Gate::AndOr, Implementation::Network) => spmlg_reference_network(),
                (Gate::AndOr, Implementation::SinglePerceptron) => and_single_network(),
                (Gate::FullAdder, Implementation::Network) => fa_reference_network(!thresholded),
                (Gate::FullAdder, Implementation::BinaryFa) => binary_full_adder_network(),
                (gate, implementation) => {
                    return Err(Error::Config(format!(
                        "no reference network for {implementation} on {gate}"
                    )))
                }
            };
            Ok(Outcome {
                stdout: net.to_json() + "\n",
                code: 0,
            })
        }
    }
}

fn read_file(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))
}

struct Resolved {
    set: ParamSet,
    network: Option<Network>,
}

fn resolve(common: &CommonArgs) -> Result<Resolved> {
    let file = common.config.as_ref().map(read_file).transpose()?;
    let set = resolve_params(common.gate, file.as_deref(), &common.overrides)?;
    let network = match &common.network {
        Some(p) => Some(Network::from_json(&read_file(p)?)?),
        None => None,
    };
    Ok(Resolved { set, network })
}

/// Rounds to four decimal places; negative zero prints as zero.
fn r4(x: f64) -> f64 {
    let v = (x * 1e4).round() / 1e4;
    if v == 0.0 {
        0.0
    } else {
        v
    }
}

fn r4v(v: &[f64]) -> Vec<f64> {
    v.iter().copied().map(r4).collect()
}

fn fmt4(x: Option<f64>) -> String {
    x.map(|v| format!("{:.4}", r4(v))).unwrap_or_default()
}

fn to_json<T: Serialize>(doc: &T) -> String {
    serde_json::to_string_pretty(doc).expect("output serializes") + "\n"
}

fn header_comment(gate: Gate, label: &str, set: &ParamSet) -> String {
    format!(
        "# gate={gate} {label} unit_scale_amps={:e} params={}\n",
        set.params.unit_scale,
        serde_json::to_string(set).expect("params serialize")
    )
}

const POSITIONS: [&str; 3] = ["p", "q", "r"];

#[derive(Serialize)]
struct TableRowDoc {
    inputs: Vec<LogicSymbol>,
    #[serde(skip_serializing_if = "Option::is_none")]
    a_values: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    trace: Option<Vec<f64>>,
    readout: Option<f64>,
    #[serde(flatten)]
    logical: BTreeMap<String, u32>,
}

impl From<&GateRow> for TableRowDoc {
    fn from(row: &GateRow) -> Self {
        TableRowDoc {
            inputs: row.inputs.clone(),
            a_values: row.a_values.as_deref().map(r4v),
            trace: row.trace.as_deref().map(r4v),
            readout: row.readout.map(r4),
            logical: row.logical.clone(),
        }
    }
}

#[derive(Serialize)]
struct TableDoc<'a> {
    gate: Gate,
    implementation: Implementation,
    unit_scale_amps: f64,
    params: &'a ParamSet,
    rows: Vec<TableRowDoc>,
}

fn truth_table(common: &CommonArgs, implementation: Implementation) -> Result<Outcome> {
    let Resolved { set, network } = resolve(common)?;
    let gate = common.gate;
    let eval = build_evaluator(gate, implementation, &set, network.as_ref())?;
    let rows = table_dump(eval.as_ref(), gate.arity())?;
    let stdout = match common.format {
        Format::Json => to_json(&TableDoc {
            gate,
            implementation,
            unit_scale_amps: set.params.unit_scale,
            params: &set,
            rows: rows.iter().map(TableRowDoc::from).collect(),
        }),
        Format::Csv => table_csv(gate, implementation, &set, &rows),
        Format::Text => table_text(gate, implementation, &set, &rows),
    };
    Ok(Outcome { stdout, code: 0 })
}

fn table_csv(
    gate: Gate,
    implementation: Implementation,
    set: &ParamSet,
    rows: &[GateRow],
) -> String {
    let n = gate.arity();
    let logical: Vec<&String> = rows[0].logical.keys().collect();
    let mut out = header_comment(gate, &format!("implementation={implementation}"), set);
    let mut cols: Vec<String> = POSITIONS[..n].iter().map(|p| p.to_string()).collect();
    cols.extend(POSITIONS[..n].iter().map(|p| format!("a_{p}")));
    cols.extend(POSITIONS[..n].iter().map(|p| format!("trace_{p}")));
    cols.push("readout".into());
    cols.extend(logical.iter().map(|k| k.to_string()));
    out.push_str(&cols.join(","));
    out.push('\n');
    for row in rows {
        let mut cells: Vec<String> = row.inputs.iter().map(|s| s.bit().to_string()).collect();
        for series in [&row.a_values, &row.trace] {
            match series {
                Some(v) => cells.extend(v.iter().map(|x| fmt4(Some(*x)))),
                None => cells.extend(std::iter::repeat_n(String::new(), n)),
            }
        }
        cells.push(fmt4(row.readout));
        cells.extend(
            logical
                .iter()
                .map(|k| row.logical.get(*k).map(u32::to_string).unwrap_or_default()),
        );
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

fn glyphs(inputs: &[LogicSymbol]) -> String {
    inputs
        .iter()
        .map(|s| s.glyph().to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn logical_text(name: &str, value: u32) -> String {
    if name == "sum" {
        format!("{name}={value}")
    } else {
        format!("{name}={}", LogicSymbol::from_bool(value == 1).glyph())
    }
}

fn table_text(
    gate: Gate,
    implementation: Implementation,
    set: &ParamSet,
    rows: &[GateRow],
) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{gate} / {implementation}  (u = {:e} A)",
        set.params.unit_scale
    );
    for row in rows {
        let _ = write!(out, "{:<8}", glyphs(&row.inputs));
        if let Some(a) = &row.a_values {
            let _ = write!(
                out,
                "  a = [{}]",
                a.iter()
                    .map(|x| format!("{:>9.4}", r4(*x)))
                    .collect::<Vec<_>>()
                    .join(" ")
            );
        }
        if let Some(t) = &row.trace {
            let _ = write!(
                out,
                "  trace = [{}]",
                t.iter()
                    .map(|x| format!("{:>9.4}", r4(*x)))
                    .collect::<Vec<_>>()
                    .join(" ")
            );
        }
        if let Some(r) = row.readout {
            let _ = write!(out, "  out = {:>8.4}", r4(r));
        }
        let logical: Vec<String> = row
            .logical
            .iter()
            .map(|(k, v)| logical_text(k, *v))
            .collect();
        let _ = writeln!(out, "  {}", logical.join(" "));
    }
    out
}

#[derive(Serialize)]
struct StepDoc {
    step: usize,
    input: LogicSymbol,
    a_eff: f64,
    i_measured: f64,
    event: StepEvent,
}

#[derive(Serialize)]
struct TraceDoc<'a> {
    gate: Gate,
    implementation: Implementation,
    unit_scale_amps: f64,
    params: &'a ParamSet,
    inputs: Vec<LogicSymbol>,
    steps: Vec<StepDoc>,
    readout: f64,
    outputs: BTreeMap<String, serde_json::Value>,
}

fn trace(common: &CommonArgs, inputs: &str) -> Result<Outcome> {
    let Resolved { set, .. } = resolve(common)?;
    let gate = common.gate;
    let symbols = parse_sequence(inputs)?;
    if symbols.len() != gate.arity() {
        return Err(Error::ArityMismatch {
            expected: gate.arity(),
            got: symbols.len(),
        });
    }
    let run = device::evaluate_sequence(&set.params, &symbols)?;
    let mut outputs = BTreeMap::new();
    match gate {
        Gate::AndOr => {
            let out = gates::spmlg(symbols[0], symbols[1], &set.params, &set.thresholds)?;
            outputs.insert("and".to_string(), out.and_bit.bit().into());
            outputs.insert("or".to_string(), out.or_bit.bit().into());
        }
        Gate::FullAdder => {
            let out = gates::spmafa(
                symbols[0],
                symbols[1],
                symbols[2],
                &set.params,
                &set.thresholds,
            )?;
            outputs.insert("sum".to_string(), out.sum.into());
            outputs.insert("carry".to_string(), out.carry_bit.bit().into());
            outputs.insert("exists_one".to_string(), out.exists_one.bit().into());
            outputs.insert("max_positive".to_string(), r4(out.max_positive).into());
        }
    }
    let steps: Vec<StepDoc> = run
        .records
        .iter()
        .map(|r| StepDoc {
            step: r.step_index,
            input: r.input,
            a_eff: r4(r.a_eff),
            i_measured: r4(r.i_measured),
            event: r.event,
        })
        .collect();

    let stdout = match common.format {
        Format::Json => to_json(&TraceDoc {
            gate,
            implementation: Implementation::Memristor,
            unit_scale_amps: set.params.unit_scale,
            params: &set,
            inputs: symbols.clone(),
            steps,
            readout: r4(run.readout),
            outputs,
        }),
        Format::Csv => {
            let mut out = header_comment(gate, "implementation=memristor", &set);
            out.push_str("step,input,a_eff,i_measured,event\n");
            for s in &steps {
                let event = serde_json::to_value(s.event).expect("event serializes");
                let _ = writeln!(
                    out,
                    "{},{},{:.4},{:.4},{}",
                    s.step,
                    s.input.bit(),
                    s.a_eff,
                    s.i_measured,
                    event.as_str().unwrap_or_default()
                );
            }
            // voltage-off bounce-back, one step after the last input
            let _ = writeln!(out, "{},,,{:.4},READOUT", steps.len() + 1, r4(run.readout));
            out
        }
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(
                out,
                "{gate} trace for {}  (u = {:e} A)",
                glyphs(&symbols),
                set.params.unit_scale
            );
            for s in &steps {
                let tag = match s.event {
                    StepEvent::None => "",
                    StepEvent::BounceBack => "  bounce-back",
                    StepEvent::Friction => "  friction",
                };
                let _ = writeln!(
                    out,
                    "t{}  {}  a = {:>9.4}  i = {:>9.4}{tag}",
                    s.step,
                    s.input.glyph(),
                    s.a_eff,
                    s.i_measured
                );
            }
            let _ = writeln!(
                out,
                "t{}  readout = {:.4}",
                steps.len() + 1,
                r4(run.readout)
            );
            let logical: Vec<String> = outputs
                .iter()
                .filter_map(|(k, v)| v.as_u64().map(|n| logical_text(k, n as u32)))
                .collect();
            let _ = writeln!(out, "{}", logical.join(" "));
            out
        }
    };
    Ok(Outcome { stdout, code: 0 })
}

#[derive(Serialize)]
struct CompareRowDoc {
    inputs: Vec<LogicSymbol>,
    logical_a: BTreeMap<String, u32>,
    logical_b: BTreeMap<String, u32>,
    logical_match: bool,
    numeric_a: Option<f64>,
    numeric_b: Option<f64>,
    delta: Option<f64>,
    abs_delta: Option<f64>,
}

#[derive(Serialize)]
struct CompareDoc<'a> {
    gate: Gate,
    a: Implementation,
    b: Implementation,
    tolerance: f64,
    unit_scale_amps: f64,
    params: &'a ParamSet,
    compared_outputs: &'a [String],
    verdict: Verdict,
    rows: Vec<CompareRowDoc>,
}

fn compare(
    common: &CommonArgs,
    a: Implementation,
    b: Implementation,
    tolerance: f64,
    expect: Expect,
) -> Result<Outcome> {
    let Resolved { set, network } = resolve(common)?;
    let gate = common.gate;
    let ea = build_evaluator(gate, a, &set, network.as_ref())?;
    let eb = build_evaluator(gate, b, &set, network.as_ref())?;
    let report = compare_gate(ea.as_ref(), eb.as_ref(), gate.arity(), tolerance)?;
    let expected = match expect {
        Expect::Numeric => Verdict::NumericEquivalent,
        Expect::Logical => Verdict::LogicalEquivalent,
    };
    let code = if report.verdict == expected { 0 } else { 1 };
    let stdout = match common.format {
        Format::Json => to_json(&compare_doc(gate, a, b, &set, &report)),
        Format::Csv => compare_csv(gate, a, b, &set, &report),
        Format::Text => compare_text(gate, a, b, &report),
    };
    Ok(Outcome { stdout, code })
}

fn compare_doc<'a>(
    gate: Gate,
    a: Implementation,
    b: Implementation,
    set: &'a ParamSet,
    report: &'a ComparisonReport,
) -> CompareDoc<'a> {
    CompareDoc {
        gate,
        a,
        b,
        tolerance: report.tolerance,
        unit_scale_amps: set.params.unit_scale,
        params: set,
        compared_outputs: &report.compared_outputs,
        verdict: report.verdict,
        rows: report
            .rows
            .iter()
            .map(|r| CompareRowDoc {
                inputs: r.inputs.clone(),
                logical_a: r.logical_a.clone(),
                logical_b: r.logical_b.clone(),
                logical_match: r.logical_match,
                numeric_a: r.numeric_a.map(r4),
                numeric_b: r.numeric_b.map(r4),
                delta: r.delta.map(r4),
                abs_delta: r.abs_delta.map(r4),
            })
            .collect(),
    }
}

fn verdict_name(v: Verdict) -> String {
    serde_json::to_value(v)
        .expect("verdict serializes")
        .as_str()
        .unwrap_or_default()
        .to_string()
}

fn compare_csv(
    gate: Gate,
    a: Implementation,
    b: Implementation,
    set: &ParamSet,
    report: &ComparisonReport,
) -> String {
    let n = gate.arity();
    let mut out = header_comment(
        gate,
        &format!(
            "a={a} b={b} tolerance={} verdict={}",
            report.tolerance,
            verdict_name(report.verdict)
        ),
        set,
    );
    let mut cols: Vec<String> = POSITIONS[..n].iter().map(|p| p.to_string()).collect();
    for k in &report.compared_outputs {
        cols.push(format!("{k}_a"));
        cols.push(format!("{k}_b"));
    }
    cols.extend(
        [
            "logical_match",
            "numeric_a",
            "numeric_b",
            "delta",
            "abs_delta",
        ]
        .map(String::from),
    );
    out.push_str(&cols.join(","));
    out.push('\n');
    for r in &report.rows {
        let mut cells: Vec<String> = r.inputs.iter().map(|s| s.bit().to_string()).collect();
        for k in &report.compared_outputs {
            cells.push(r.logical_a[k].to_string());
            cells.push(r.logical_b[k].to_string());
        }
        cells.push(r.logical_match.to_string());
        cells.extend([r.numeric_a, r.numeric_b, r.delta, r.abs_delta].map(fmt4));
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

fn compare_text(
    gate: Gate,
    a: Implementation,
    b: Implementation,
    report: &ComparisonReport,
) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{gate}: {a} vs {b}  (tolerance {} u, outputs: {})",
        report.tolerance,
        report.compared_outputs.join(", ")
    );
    for r in &report.rows {
        let _ = writeln!(
            out,
            "{:<8}  {}  a = {:>8}  b = {:>8}  |d| = {:>7}",
            glyphs(&r.inputs),
            if r.logical_match { "match" } else { "DIFF " },
            fmt4(r.numeric_a),
            fmt4(r.numeric_b),
            fmt4(r.abs_delta)
        );
    }
    let _ = writeln!(out, "verdict: {}", verdict_name(report.verdict));
    out
}
