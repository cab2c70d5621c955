use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// One named check and whether it came out as expected.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub name: String,
    pub ok: bool,
    #[serde(default, skip_serializing_if = "Value::is_null")]
    pub detail: Value,
}

/// Output of one command. Everything except `timings` is a function of the
/// inputs and the seed; timings are recorded only on request.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub version: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub inputs: Value,
    pub verdicts: Vec<Verdict>,
    pub dimensions: BTreeMap<String, Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<BTreeMap<String, f64>>,
}

impl RunReport {
    pub fn new(command: &str, inputs: Value) -> Self {
        RunReport {
            command: command.into(),
            version: env!("CARGO_PKG_VERSION").into(),
            seed: None,
            inputs,
            verdicts: Vec::new(),
            dimensions: BTreeMap::new(),
            timings: None,
        }
    }

    pub fn verdict(&mut self, name: impl Into<String>, ok: bool, detail: Value) {
        self.verdicts.push(Verdict {
            name: name.into(),
            ok,
            detail,
        });
    }

    pub fn dimension(&mut self, name: impl Into<String>, value: impl Serialize) {
        self.dimensions.insert(
            name.into(),
            serde_json::to_value(value).expect("serializable"),
        );
    }

    pub fn all_ok(&self) -> bool {
        self.verdicts.iter().all(|v| v.ok)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    /// Plain-text summary, one line per verdict and dimension.
    pub fn summary(&self) -> String {
        let mut out = format!("{} ({})\n", self.command, self.version);
        for (k, v) in &self.dimensions {
            out.push_str(&format!("  {k}: {v}\n"));
        }
        for v in &self.verdicts {
            let mark = if v.ok { "ok  " } else { "FAIL" };
            if v.detail.is_null() {
                out.push_str(&format!("  [{mark}] {}\n", v.name));
            } else {
                out.push_str(&format!("  [{mark}] {}: {}\n", v.name, v.detail));
            }
        }
        if let Some(t) = &self.timings {
            for (k, s) in t {
                out.push_str(&format!("  time {k}: {s:.3}s\n"));
            }
        }
        out
    }
}

/// Wall-clock stopwatch feeding the optional timings table.
pub struct Stopwatch {
    enabled: bool,
    laps: BTreeMap<String, f64>,
}

impl Stopwatch {
    pub fn new(enabled: bool) -> Self {
        Stopwatch {
            enabled,
            laps: BTreeMap::new(),
        }
    }

    pub fn time<T>(&mut self, name: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        if self.enabled {
            *self.laps.entry(name.into()).or_default() += start.elapsed().as_secs_f64();
        }
        out
    }

    pub fn finish(self, report: &mut RunReport) {
        if self.enabled {
            report.timings = Some(self.laps);
        }
    }
}
