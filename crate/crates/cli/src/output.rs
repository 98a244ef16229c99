use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{Context, Result};
use serde::Serialize;

/// Where results go: files under `--out` (plus `manifest.json`), or stdout.
pub struct Sink {
    dir: Option<PathBuf>,
    outputs: Vec<String>,
}

impl Sink {
    pub fn new(dir: Option<&Path>) -> Result<Self> {
        if let Some(d) = dir {
            fs::create_dir_all(d).with_context(|| format!("creating {}", d.display()))?;
        }
        Ok(Sink { dir: dir.map(Path::to_path_buf), outputs: Vec::new() })
    }

    pub fn emit(&mut self, name: &str, bytes: &[u8]) -> Result<()> {
        match &self.dir {
            Some(d) => {
                let path = d.join(name);
                fs::write(&path, bytes).with_context(|| format!("writing {}", path.display()))?;
                self.outputs.push(name.to_string());
            }
            None => std::io::stdout().write_all(bytes)?,
        }
        Ok(())
    }

    pub fn emit_json<T: Serialize>(&mut self, name: &str, value: &T) -> Result<()> {
        let mut text = serde_json::to_string_pretty(value)?;
        text.push('\n');
        self.emit(name, text.as_bytes())
    }

    /// Writes `manifest.json` when an output directory is in use.
    pub fn finish(self, manifest: ManifestInput<'_>) -> Result<()> {
        let Some(dir) = self.dir else {
            return Ok(());
        };
        let m = RunManifest {
            command: manifest.command,
            field: manifest.field,
            field_hash: manifest.field_hash,
            parameters: manifest.parameters,
            outputs: self.outputs,
            tool_version: env!("CARGO_PKG_VERSION"),
            cache: manifest.cache,
            wall_clock_seconds: manifest.started.elapsed().as_secs_f64(),
        };
        let mut text = serde_json::to_string_pretty(&m)?;
        text.push('\n');
        fs::write(dir.join("manifest.json"), text)?;
        Ok(())
    }
}

#[derive(Serialize)]
pub struct CacheInfo {
    pub dir: String,
    pub hit: bool,
}

pub struct ManifestInput<'a> {
    pub command: &'a str,
    pub field: Option<String>,
    pub field_hash: Option<String>,
    pub parameters: serde_json::Value,
    pub cache: Option<CacheInfo>,
    pub started: Instant,
}

#[derive(Serialize)]
struct RunManifest<'a> {
    command: &'a str,
    field: Option<String>,
    field_hash: Option<String>,
    parameters: serde_json::Value,
    outputs: Vec<String>,
    tool_version: &'static str,
    cache: Option<CacheInfo>,
    wall_clock_seconds: f64,
}

/// CSV rows from string cells.
pub fn csv_bytes(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    Ok(w.into_inner().map_err(|e| anyhow::anyhow!(e.to_string()))?)
}
