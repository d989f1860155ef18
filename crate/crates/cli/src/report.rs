use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context as _, Result};
use serde::Serialize;
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

pub const OUT_DIR_VAR: &str = "SPHRIG_OUT_DIR";

#[derive(Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub value: Value,
}

/// Everything but `timing_ms` is a function of the inputs.
#[derive(Debug, Serialize)]
pub struct Report {
    pub command: Vec<String>,
    pub inputs_digest: String,
    pub status: &'static str,
    pub checks: Vec<Check>,
    pub results: Map<String, Value>,
    pub timing_ms: f64,
}

/// Collects results while a command runs; hashes every input it reads.
pub struct Context {
    pub command: Vec<String>,
    hasher: Sha256,
    checks: Vec<Check>,
    results: Map<String, Value>,
    pub dot: Option<String>,
}

impl Context {
    pub fn new(command: Vec<String>) -> Self {
        let mut hasher = Sha256::new();
        for arg in &command {
            hasher.update(arg.as_bytes());
            hasher.update([0]);
        }
        Context { command, hasher, checks: Vec::new(), results: Map::new(), dot: None }
    }

    pub fn read(&mut self, path: &Path) -> Result<String> {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        self.hasher.update(text.as_bytes());
        Ok(text)
    }

    pub fn set(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).expect("results serialize");
        self.results.insert(key.to_string(), v);
    }

    pub fn check(&mut self, name: &str, pass: bool, value: impl Serialize) {
        let value = serde_json::to_value(value).expect("check values serialize");
        self.checks.push(Check { name: name.to_string(), pass, value });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn finish(self, timing_ms: f64) -> (Report, Option<String>) {
        let status = if self.passed() { "pass" } else { "fail" };
        let report = Report {
            command: self.command,
            inputs_digest: hex::encode(self.hasher.finalize()),
            status,
            checks: self.checks,
            results: self.results,
            timing_ms,
        };
        (report, self.dot)
    }
}

/// Relative paths land under `$SPHRIG_OUT_DIR` when it is set.
pub fn output_path(path: &Path) -> PathBuf {
    match std::env::var_os(OUT_DIR_VAR) {
        Some(dir) if path.is_relative() => Path::new(&dir).join(path),
        _ => path.to_path_buf(),
    }
}

pub fn write_file(path: &Path, text: &str) -> Result<()> {
    let path = output_path(path);
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).with_context(|| format!("creating {}", parent.display()))?;
    }
    fs::write(&path, text).with_context(|| format!("writing {}", path.display()))
}

pub fn summary(report: &Report) -> String {
    let mut out = format!("{}: {}\n", report.command.join(" "), report.status);
    for c in &report.checks {
        out.push_str(&format!("  [{}] {}: {}\n", if c.pass { "pass" } else { "FAIL" }, c.name, c.value));
    }
    for (k, v) in &report.results {
        let text = v.to_string();
        if text.len() <= 160 {
            out.push_str(&format!("  {k} = {text}\n"));
        } else {
            out.push_str(&format!("  {k} = ({} bytes, see --json)\n", text.len()));
        }
    }
    out
}
