//! Deterministic report rendering: sorted keys, shortest round-trip float
//! formatting, byte-identical output for identical inputs.

use std::path::Path;

use serde::Serialize;

use sasv_core::fsutil;
use sasv_core::ingest::format_float;
use sasv_core::metrics::{DetPoint, MetricReport};
use sasv_core::Result;

pub fn render_report(report: &MetricReport) -> String {
    let mut text = serde_json::to_string_pretty(report).expect("report serializes");
    text.push('\n');
    text
}

/// Write a metric report as JSON, atomically.
pub fn emit_report(report: &MetricReport, path: &Path) -> Result<()> {
    fsutil::write_atomic(path, render_report(report).as_bytes())
}

/// Per-dataset a-DCF values with their unweighted mean.
#[derive(Debug, Serialize)]
pub struct MacroReport {
    pub datasets: Vec<DatasetAdcf>,
    pub macro_adcf: f64,
}

#[derive(Debug, Serialize)]
pub struct DatasetAdcf {
    pub adcf: f64,
    pub name: String,
}

pub fn render_macro_report(report: &MacroReport) -> String {
    let mut text = serde_json::to_string_pretty(report).expect("report serializes");
    text.push('\n');
    text
}

/// DET points as TSV: threshold, raw rates, probit-transformed rates.
pub fn render_det(points: &[DetPoint]) -> String {
    let mut out = String::from("threshold\tp_miss\tp_fa\tprobit_miss\tprobit_fa\n");
    for p in points {
        out.push_str(&format_float(p.threshold));
        out.push('\t');
        out.push_str(&format_float(p.p_miss));
        out.push('\t');
        out.push_str(&format_float(p.p_fa));
        out.push('\t');
        out.push_str(&format_float(p.probit_miss));
        out.push('\t');
        out.push_str(&format_float(p.probit_fa));
        out.push('\n');
    }
    out
}
