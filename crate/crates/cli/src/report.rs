use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::CliError;

pub const SCHEMA: &str = "invgen-report/1";

#[derive(Serialize, Debug, Clone)]
pub struct AssertionLine {
    pub what: String,
    pub pass: bool,
}

#[derive(Serialize, Debug)]
pub struct ErrorInfo {
    pub kind: &'static str,
    pub message: String,
}

#[derive(Serialize, Debug)]
pub struct Report {
    pub schema: &'static str,
    pub command: Vec<String>,
    pub inputs_hash: String,
    pub results: Value,
    pub budget_notes: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub assertions: Vec<AssertionLine>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorInfo>,
    /// Only present with `--timings`; everything else is deterministic.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnostics: Option<BTreeMap<String, Value>>,
}

pub fn hash_inputs(parts: &[String]) -> String {
    let mut h = Sha256::new();
    for p in parts {
        h.update((p.len() as u64).to_le_bytes());
        h.update(p.as_bytes());
    }
    hex::encode(h.finalize())
}

impl Report {
    pub fn failure(command: Vec<String>, e: &CliError) -> (Report, u8) {
        let report = Report {
            schema: SCHEMA,
            inputs_hash: hash_inputs(&command),
            command,
            results: Value::Null,
            budget_notes: Vec::new(),
            assertions: Vec::new(),
            error: Some(ErrorInfo {
                kind: e.kind(),
                message: e.to_string(),
            }),
            diagnostics: None,
        };
        (report, e.exit_code())
    }
}
