//! JSON file formats: HCS sets and injected driver sequences.

use std::path::Path;

use hcs_core::model::{FrameAssignment, HcsSequence, HcsSet, LevelSpec, OrderMode, Provenance, SystemConfig};
use hcs_core::{DriverSequences, PermutationParams};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{CliError, Result};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetFile {
    pub format_version: u32,
    pub t: usize,
    pub lambda: usize,
    pub levels: Vec<LevelSpec>,
    pub length: usize,
    pub construction: ConstructionBlock,
    pub sequences: Vec<SequenceRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstructionBlock {
    pub kind: String,
    #[serde(default)]
    pub params: Value,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceRecord {
    pub level: usize,
    pub user: usize,
    pub frames: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
struct PermutationBlock {
    seed: u64,
    #[serde(default)]
    rng: String,
    #[serde(default)]
    injected_drivers: bool,
}

#[derive(Deserialize)]
struct MultiplicativeBlock {
    g: u64,
    d: u64,
    n: u32,
    mode: OrderMode,
}

fn construction_block(provenance: &Provenance) -> ConstructionBlock {
    let params = match provenance {
        Provenance::Permutation {
            seed,
            rng,
            injected_drivers,
        } => json!({ "seed": seed, "rng": rng, "injected_drivers": injected_drivers }),
        Provenance::Multiplicative { g, d, n, mode } => json!({ "g": g, "d": d, "n": n, "mode": mode }),
        Provenance::Unknown { .. } => json!({}),
    };
    ConstructionBlock {
        kind: provenance.kind().into(),
        params,
    }
}

impl SetFile {
    pub fn from_set(set: &HcsSet) -> Self {
        let config = set.config();
        SetFile {
            format_version: FORMAT_VERSION,
            t: config.t(),
            lambda: config.lambda(),
            levels: config.levels().to_vec(),
            length: set.length(),
            construction: construction_block(set.provenance()),
            sequences: set
                .sequences()
                .iter()
                .map(|s| SequenceRecord {
                    level: s.level,
                    user: s.user,
                    frames: s.frames.iter().map(|f| f.indices().collect()).collect(),
                })
                .collect(),
        }
    }

    pub fn into_set(self) -> Result<HcsSet> {
        if self.format_version != FORMAT_VERSION {
            return Err(CliError::invalid(format!(
                "unsupported format_version {}, expected {FORMAT_VERSION}",
                self.format_version
            )));
        }
        if self.lambda != self.levels.len() {
            return Err(CliError::invalid(format!(
                "lambda is {} but {} levels are listed",
                self.lambda,
                self.levels.len()
            )));
        }
        let provenance = match self.construction.kind.as_str() {
            "c1" => {
                let p: PermutationBlock = serde_json::from_value(self.construction.params)
                    .map_err(|e| CliError::invalid(format!("construction params: {e}")))?;
                Provenance::Permutation {
                    seed: p.seed,
                    rng: p.rng,
                    injected_drivers: p.injected_drivers,
                }
            }
            "c2" => {
                let p: MultiplicativeBlock = serde_json::from_value(self.construction.params)
                    .map_err(|e| CliError::invalid(format!("construction params: {e}")))?;
                Provenance::Multiplicative {
                    g: p.g,
                    d: p.d,
                    n: p.n,
                    mode: p.mode,
                }
            }
            other => Provenance::Unknown { kind: other.into() },
        };
        let seed = match provenance {
            Provenance::Permutation { seed, .. } => seed,
            _ => 0,
        };
        let config = SystemConfig::new(self.t, self.levels, seed).map_err(CliError::invalid)?;
        let sequences = self
            .sequences
            .into_iter()
            .map(|s| HcsSequence {
                level: s.level,
                user: s.user,
                frames: s.frames.into_iter().map(FrameAssignment::from_indices).collect(),
            })
            .collect();
        HcsSet::new(config, self.length, sequences, provenance).map_err(CliError::invalid)
    }
}

/// Compact JSON with a trailing newline.
pub fn set_to_bytes(set: &HcsSet) -> Vec<u8> {
    let mut bytes = serde_json::to_vec(&SetFile::from_set(set)).expect("set serializes");
    bytes.push(b'\n');
    bytes
}

pub fn set_from_bytes(path: &Path, bytes: &[u8]) -> Result<HcsSet> {
    let file: SetFile = serde_json::from_slice(bytes).map_err(|e| CliError::json_parse(path, &e))?;
    file.into_set().map_err(|e| e.context(path.display()))
}

/// Explicit driver sequences for the permutation construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DriverFile {
    /// Permutation rank per frame.
    pub selector: Vec<u64>,
    /// Base shift sequence per level.
    pub levels: Vec<Vec<usize>>,
}

pub fn drivers_from_bytes(path: &Path, bytes: &[u8], params: &PermutationParams) -> Result<DriverSequences> {
    let file: DriverFile = serde_json::from_slice(bytes).map_err(|e| CliError::json_parse(path, &e))?;
    DriverSequences::from_parts(params, file.selector, file.levels).map_err(|e| CliError::invalid(e).context(path.display()))
}
