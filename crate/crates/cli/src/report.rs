//! Self-describing run reports and fixed-precision number formatting.

use std::path::Path;
use std::time::Instant;

use serde::Serialize;

use crate::failure::{input, Failure};

#[derive(Debug, Serialize)]
pub struct RunReport<T: Serialize> {
    pub command: Vec<String>,
    pub version: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Everything needed to rerun, beyond the files named in `command`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spec: Option<serde_json::Value>,
    pub wall_time_secs: f64,
    pub results: T,
}

impl<T: Serialize> RunReport<T> {
    pub fn new(
        started: Instant,
        seed: Option<u64>,
        spec: Option<serde_json::Value>,
        results: T,
    ) -> Self {
        RunReport {
            command: std::env::args().collect(),
            version: env!("CARGO_PKG_VERSION"),
            seed,
            spec,
            wall_time_secs: started.elapsed().as_secs_f64(),
            results,
        }
    }

    pub fn write(&self, path: &Path) -> Result<(), Failure> {
        let text = serde_json::to_string_pretty(self)
            .map_err(|e| input(format!("serialising report: {e}")))?;
        std::fs::write(path, text + "\n").map_err(|e| input(format!("{}: {e}", path.display())))
    }
}

/// Percentages to two decimals; a mean over zero runs prints as `NA`.
pub fn pct(v: f64) -> String {
    if v.is_nan() {
        "NA".into()
    } else {
        format!("{v:.2}")
    }
}

/// Ratios to four decimals; undefined metrics print as `NA`.
pub fn ratio(v: f64) -> String {
    if v.is_nan() {
        "NA".into()
    } else {
        format!("{v:.4}")
    }
}
