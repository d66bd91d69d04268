use std::fmt::Write as _;

use clap::ValueEnum;
use parity_lab::arith::Rational;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::CliError;

pub const SCHEMA: &str = "parity-lab/1";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorBody {
    pub kind: String,
    pub message: String,
    pub exit_code: i32,
}

impl From<&CliError> for ErrorBody {
    fn from(e: &CliError) -> Self {
        ErrorBody {
            kind: e.kind().to_string(),
            message: e.to_string(),
            exit_code: e.exit_code(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub version: String,
    pub command: String,
    pub inputs: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub results: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorBody>,
}

impl Report {
    pub fn ok(command: &str, inputs: Value, results: Value) -> Self {
        Report {
            schema: SCHEMA.into(),
            version: VERSION.into(),
            command: command.into(),
            inputs,
            results: Some(results),
            error: None,
        }
    }

    pub fn failed(command: &str, inputs: Value, err: &CliError) -> Self {
        Report {
            schema: SCHEMA.into(),
            version: VERSION.into(),
            command: command.into(),
            inputs,
            results: None,
            error: Some(err.into()),
        }
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json_pretty(),
            Format::Text => {
                let v = serde_json::to_value(self).expect("reports serialize");
                let mut out = String::new();
                text(&v, 0, &mut out);
                out.trim_end().to_string()
            }
        }
    }
}

fn text(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                if x.is_object() || (x.is_array() && !is_flat(x)) {
                    let _ = writeln!(out, "{pad}{k}:");
                    text(x, indent + 1, out);
                } else {
                    let _ = writeln!(out, "{pad}{k}: {}", scalar(x));
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                if x.is_object() || x.is_array() {
                    let _ = writeln!(out, "{pad}-");
                    text(x, indent + 1, out);
                } else {
                    let _ = writeln!(out, "{pad}- {}", scalar(x));
                }
            }
        }
        _ => {
            let _ = writeln!(out, "{pad}{}", scalar(v));
        }
    }
}

fn is_flat(v: &Value) -> bool {
    v.as_array()
        .is_some_and(|a| a.iter().all(|x| !x.is_object() && !x.is_array()))
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(a) => {
            let parts: Vec<String> = a.iter().map(scalar).collect();
            format!("[{}]", parts.join(", "))
        }
        other => other.to_string(),
    }
}

/// `{num, den}` for an exact rational.
pub fn rational(r: &Rational) -> Value {
    json!({ "num": *r.numer(), "den": *r.denom() })
}
