use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

/// Sidecar describing how an output was produced. No timestamps, so
/// identical runs give identical manifests.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunManifest {
    pub subcommand: String,
    pub inputs: Vec<String>,
    pub configs: Vec<String>,
    pub outputs: Vec<String>,
    pub tool_version: String,
    /// SHA-256 over the effective options and the contents of every config file.
    pub config_digest: String,
}

fn show(p: &Path) -> String {
    p.display().to_string()
}

impl RunManifest {
    pub fn new(subcommand: &str, options: &str, inputs: &[PathBuf], configs: &[(PathBuf, String)]) -> Self {
        let mut h = Sha256::new();
        h.update(subcommand.as_bytes());
        h.update([0]);
        h.update(options.as_bytes());
        for (p, text) in configs {
            h.update([0]);
            h.update(show(p).as_bytes());
            h.update([0]);
            h.update(text.as_bytes());
        }
        let digest = h.finalize();
        RunManifest {
            subcommand: subcommand.to_string(),
            inputs: inputs.iter().map(|p| show(p)).collect(),
            configs: configs.iter().map(|(p, _)| show(p)).collect(),
            outputs: Vec::new(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            config_digest: digest.iter().map(|b| format!("{:02x}", b)).collect(),
        }
    }

    pub fn output(mut self, p: &Path) -> Self {
        self.outputs.push(show(p));
        self
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("manifest serializes");
        s.push('\n');
        s
    }
}

/// `out.tsv` -> `out.tsv.manifest.json`.
pub fn sidecar_path(output: &Path) -> PathBuf {
    let mut name = output.as_os_str().to_os_string();
    name.push(".manifest.json");
    PathBuf::from(name)
}
