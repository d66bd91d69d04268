use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::commands::execute;
use crate::{CliError, Command, CurveInput, Report, Request, SCHEMA, VERSION};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trailer {
    pub command: String,
    pub lines: usize,
    pub ok: usize,
    pub failed: usize,
    pub parse_errors: usize,
    pub usage_errors: usize,
    pub unsupported: usize,
    pub exhausted: usize,
    pub identity_violations: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrailerLine {
    pub schema: String,
    pub version: String,
    pub trailer: Trailer,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BatchLine {
    pub seq: usize,
    pub line: usize,
    #[serde(flatten)]
    pub report: Report,
}

pub struct BatchOutcome {
    pub lines: Vec<BatchLine>,
    pub trailer: Trailer,
    pub exit_code: i32,
}

impl BatchOutcome {
    /// JSON lines: one per input curve, then the trailer.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for l in &self.lines {
            out.push_str(&serde_json::to_string(l).expect("reports serialize"));
            out.push('\n');
        }
        let trailer = TrailerLine {
            schema: SCHEMA.into(),
            version: VERSION.into(),
            trailer: self.trailer.clone(),
        };
        out.push_str(&serde_json::to_string(&trailer).expect("trailer serializes"));
        out.push('\n');
        out
    }
}

/// Runs `cmd` on every curve line of `text` (blank lines and `#` comments
/// skipped), in parallel, keeping input order.
pub fn run_batch(cmd: &dyn Command, template: &Request, text: &str) -> BatchOutcome {
    let jobs: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect();

    let results: Vec<(BatchLine, i32)> = jobs
        .par_iter()
        .enumerate()
        .map(|(seq, &(line, raw))| {
            let (report, code) = match raw.parse::<CurveInput>() {
                Ok(curve) => execute(cmd, &template.with_curve(curve)),
                Err(e) => {
                    let err = CliError::Parse(format!("line {line}: {e}"));
                    let inputs = serde_json::json!({ "curve": raw });
                    (Report::failed(cmd.name(), inputs, &err), err.exit_code())
                }
            };
            (BatchLine { seq, line, report }, code)
        })
        .collect();

    let mut trailer = Trailer {
        command: cmd.name().into(),
        lines: results.len(),
        ..Trailer::default()
    };
    for (line, code) in &results {
        let kind = line.report.error.as_ref().map(|e| e.kind.as_str());
        match (code, kind) {
            (0, _) => trailer.ok += 1,
            (4, _) => trailer.identity_violations += 1,
            (_, Some("parse")) => trailer.parse_errors += 1,
            (_, Some("usage")) => trailer.usage_errors += 1,
            (_, Some("unsupported")) => trailer.unsupported += 1,
            (_, Some("search-exhausted")) => trailer.exhausted += 1,
            _ => {}
        }
    }
    trailer.failed = trailer.lines - trailer.ok;
    let exit_code = if trailer.identity_violations > 0 { 4 } else { 0 };
    BatchOutcome {
        lines: results.into_iter().map(|(l, _)| l).collect(),
        trailer,
        exit_code,
    }
}
