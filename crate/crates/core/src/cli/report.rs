//! JSON report envelope and CSV formatting.

use std::io::{self, Write};

use num_complex::Complex64;
use serde::{Serialize, Serializer};
use serde_json::Value;

pub const SCHEMA_VERSION: &str = "1";

/// Serializes a complex number as `[re, im]`.
pub fn ser_complex<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
    [z.re, z.im].serialize(s)
}

pub fn complex_json(z: Complex64) -> Value {
    serde_json::json!([z.re, z.im])
}

/// Fixed key order: `schema_version, command, inputs, outputs, warnings`.
#[derive(Debug, Clone, Serialize)]
pub struct ReportEnvelope {
    pub schema_version: &'static str,
    pub command: String,
    pub inputs: Value,
    pub outputs: Value,
    pub warnings: Vec<String>,
}

impl ReportEnvelope {
    pub fn new(command: impl Into<String>, inputs: Value, outputs: Value, warnings: Vec<String>) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            command: command.into(),
            inputs,
            outputs,
            warnings,
        }
    }

    pub fn write_json(&self, out: &mut dyn Write) -> io::Result<()> {
        serde_json::to_writer_pretty(&mut *out, self)?;
        writeln!(out)
    }

    /// `key: value` lines for the outputs, then warnings.
    pub fn write_text(&self, out: &mut dyn Write) -> io::Result<()> {
        if let Value::Object(map) = &self.outputs {
            for (k, v) in map {
                writeln!(out, "{k}: {}", text_value(v))?;
            }
        }
        for w in &self.warnings {
            writeln!(out, "warning: {w}")?;
        }
        Ok(())
    }
}

fn text_value(v: &Value) -> String {
    match v {
        Value::Array(xs) if xs.len() == 2 && xs.iter().all(Value::is_number) => {
            format!("{},{}", text_value(&xs[0]), text_value(&xs[1]))
        }
        Value::Number(n) => n.as_f64().map(fmt_f64).unwrap_or_else(|| n.to_string()),
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

/// Shortest round-trip decimal; scientific notation outside `[1e-5, 1e16)`.
pub fn fmt_f64(x: f64) -> String {
    if x == 0.0 || (x.abs() >= 1e-5 && x.abs() < 1e16) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

/// Writes one CSV record with LF line ending. Fields here are numeric or
/// simple identifiers, so no quoting is needed.
pub fn write_csv_row(out: &mut dyn Write, fields: &[String]) -> io::Result<()> {
    writeln!(out, "{}", fields.join(","))
}
