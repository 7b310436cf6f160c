use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::Value;

use crate::error::CliError;

pub const MANIFEST: &str = "manifest.json";

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

#[derive(Serialize)]
struct Manifest<'a> {
    command: &'a str,
    inputs: &'a [String],
    parameters: &'a BTreeMap<String, Value>,
    tool_version: &'static str,
    /// Seconds since the epoch; `SOURCE_DATE_EPOCH` overrides the clock.
    timestamp: u64,
    outputs: &'a [String],
}

/// One command invocation: collects inputs, parameters and written files,
/// and records them in `manifest.json` next to the reports.
pub struct Run {
    dir: PathBuf,
    command: String,
    inputs: Vec<String>,
    parameters: BTreeMap<String, Value>,
    outputs: Vec<String>,
}

impl Run {
    pub fn new(dir: &Path, command: &str) -> Result<Self, CliError> {
        fs::create_dir_all(dir)?;
        Ok(Run {
            dir: dir.to_path_buf(),
            command: command.to_string(),
            inputs: Vec::new(),
            parameters: BTreeMap::new(),
            outputs: Vec::new(),
        })
    }

    pub fn input(&mut self, path: &Path) {
        self.inputs.push(path.display().to_string());
    }

    pub fn param(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).expect("parameters serialize");
        self.parameters.insert(key.to_string(), v);
    }

    /// Write a JSON report; objects gain a `manifest` field pointing at the manifest.
    pub fn write_json(&mut self, name: &str, value: &impl Serialize) -> Result<PathBuf, CliError> {
        let mut v = serde_json::to_value(value)?;
        if let Value::Object(map) = &mut v {
            map.insert("manifest".into(), Value::String(MANIFEST.into()));
        }
        let path = self.dir.join(name);
        fs::write(&path, serde_json::to_string_pretty(&v)? + "\n")?;
        self.outputs.push(name.to_string());
        Ok(path)
    }

    pub fn write_csv(&mut self, name: &str, header: &[&str], rows: &[Vec<String>]) -> Result<PathBuf, CliError> {
        let path = self.dir.join(name);
        let mut w = csv::Writer::from_path(&path)?;
        w.write_record(header)?;
        for r in rows {
            w.write_record(r)?;
        }
        w.flush()?;
        self.outputs.push(name.to_string());
        Ok(path)
    }

    pub fn finish(self) -> Result<(), CliError> {
        let timestamp = std::env::var("SOURCE_DATE_EPOCH")
            .ok()
            .and_then(|s| s.parse().ok())
            .unwrap_or_else(|| SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs()));
        let m = Manifest {
            command: &self.command,
            inputs: &self.inputs,
            parameters: &self.parameters,
            tool_version: env!("CARGO_PKG_VERSION"),
            timestamp,
            outputs: &self.outputs,
        };
        fs::write(self.dir.join(MANIFEST), serde_json::to_string_pretty(&m)? + "\n")?;
        Ok(())
    }
}
