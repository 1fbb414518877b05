use std::path::Path;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::Failure;

/// One flat JSON document per run.
#[derive(Debug, Clone, Default, Serialize)]
pub struct RunRecord {
    pub command: &'static str,
    pub input_digest: Option<String>,
    pub n: Option<usize>,
    pub m: Option<usize>,
    pub seed: Option<u64>,
    pub epsilon: Option<f64>,
    pub mode: Option<&'static str>,
    pub phi_final: Option<u64>,
    pub obj: Option<u64>,
    pub opt: Option<u64>,
    pub wall_time_ms: f64,
    pub peak_words: Option<u64>,
    pub budget_words: Option<u64>,
    pub query_count: Option<u64>,
    pub passes: Option<usize>,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct CheckRecord {
    pub command: &'static str,
    pub input_digest: Option<String>,
    pub seed: Option<u64>,
    pub instances: usize,
    pub vacuous: usize,
    pub witnesses: usize,
    pub violations: usize,
    pub first_violation: Option<String>,
    pub wall_time_ms: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchRecord {
    pub command: &'static str,
    pub mode: &'static str,
    pub epsilon: f64,
    pub n: usize,
    pub m: usize,
    pub repeats: usize,
    pub median_ms: f64,
    /// Median time over the previous size's median time.
    pub ratio: Option<f64>,
    pub obj: u64,
    pub phi_final: u64,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Writes `value` as JSON to `path`, or to stdout (stderr when stdout
/// already carries a clustering).
pub fn emit<T: Serialize + ?Sized>(value: &T, path: Option<&Path>, stdout_taken: bool) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).expect("records serialize") + "\n";
    match path {
        Some(p) => crate::write_file(p, &text),
        None if stdout_taken => {
            eprint!("{text}");
            Ok(())
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
