//! Run manifests written next to every output file.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::{Duration, SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::Result;
use crate::paths::Workspace;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FileDigest {
    pub path: String,
    pub sha256: String,
}

impl FileDigest {
    pub fn of(path: &Path, bytes: &[u8]) -> Self {
        FileDigest {
            path: path.display().to_string(),
            sha256: sha256_hex(bytes),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub subcommand: String,
    pub argv: Vec<String>,
    pub params: Value,
    pub seeds: BTreeMap<String, u64>,
    pub inputs: Vec<FileDigest>,
    pub outputs: Vec<FileDigest>,
    pub timestamp_unix_ms: u64,
    pub duration_ms: u64,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    format!("{:x}", Sha256::digest(bytes))
}

pub fn manifest_path(output: &Path) -> PathBuf {
    let mut name = output.as_os_str().to_owned();
    name.push(".manifest.json");
    PathBuf::from(name)
}

/// Collects what a subcommand read and wrote.
#[derive(Debug, Clone)]
pub struct Recorder {
    subcommand: String,
    argv: Vec<String>,
    params: Value,
    seeds: BTreeMap<String, u64>,
    inputs: Vec<FileDigest>,
    outputs: Vec<(PathBuf, FileDigest)>,
    started: SystemTime,
}

impl Recorder {
    pub fn new(subcommand: &str, argv: &[String], params: Value) -> Self {
        Recorder {
            subcommand: subcommand.into(),
            argv: argv.to_vec(),
            params,
            seeds: BTreeMap::new(),
            inputs: Vec::new(),
            outputs: Vec::new(),
            started: SystemTime::now(),
        }
    }

    pub fn seed(&mut self, name: &str, value: u64) {
        self.seeds.insert(name.into(), value);
    }

    pub fn input(&mut self, path: &Path, bytes: &[u8]) {
        self.inputs.push(FileDigest::of(path, bytes));
    }

    /// Writes an output file and remembers its digest.
    pub fn output(&mut self, ws: &Workspace, path: &Path, bytes: &[u8]) -> Result<PathBuf> {
        let full = ws.write(path, bytes)?;
        self.outputs.push((path.to_path_buf(), FileDigest::of(path, bytes)));
        Ok(full)
    }

    /// Writes one manifest beside each output; returns their paths.
    pub fn finish(self, ws: &Workspace) -> Result<Vec<PathBuf>> {
        let now = SystemTime::now();
        let elapsed = now.duration_since(self.started).unwrap_or(Duration::ZERO);
        let manifest = RunManifest {
            tool: env!("CARGO_PKG_NAME").into(),
            version: env!("CARGO_PKG_VERSION").into(),
            subcommand: self.subcommand,
            argv: self.argv,
            params: self.params,
            seeds: self.seeds,
            inputs: self.inputs,
            outputs: self.outputs.iter().map(|(_, d)| d.clone()).collect(),
            timestamp_unix_ms: now.duration_since(UNIX_EPOCH).unwrap_or(Duration::ZERO).as_millis() as u64,
            duration_ms: elapsed.as_millis() as u64,
        };
        let mut text = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
        text.push('\n');
        self.outputs
            .iter()
            .map(|(path, _)| ws.write(&manifest_path(path), text.as_bytes()))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn digest_of_known_input() {
        assert_eq!(
            sha256_hex(b"abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }

    #[test]
    fn manifest_beside_each_output() {
        let dir = tempfile::tempdir().unwrap();
        let ws = Workspace::new(dir.path());
        let mut rec = Recorder::new("demo", &["hcs".into(), "demo".into()], json!({ "k": 1 }));
        rec.seed("seed", 42);
        rec.input(Path::new("in.json"), b"x");
        rec.output(&ws, Path::new("a.csv"), b"1,2\n").unwrap();
        rec.output(&ws, Path::new("sub/b.json"), b"{}").unwrap();
        let written = rec.finish(&ws).unwrap();
        assert_eq!(written.len(), 2);
        let m: RunManifest = serde_json::from_slice(&std::fs::read(&written[1]).unwrap()).unwrap();
        assert!(written[1].ends_with("sub/b.json.manifest.json"));
        assert_eq!(m.subcommand, "demo");
        assert_eq!(m.seeds["seed"], 42);
        assert_eq!(m.inputs[0].sha256, sha256_hex(b"x"));
        assert_eq!(m.outputs.len(), 2);
    }
}
