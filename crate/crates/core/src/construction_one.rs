//! Permutation-table construction.
//!
//! The frame is cut into `R = r_max` blocks of `m = t / R` slots. In frame
//! `alpha` a pseudo-random selector picks one permutation `a` of `0..m`,
//! and position `theta` of user `j` at level `i` lands in block
//! `beta = b_i(alpha) + shift(j) + theta * eta_i` at offset
//! `a[(beta + omega_i + j / eta_i) mod m]`.
//!
//! Up to 20 blocks the selector is a permutation rank unranked through the
//! lexicographic table; beyond that `m!` no longer fits in 64 bits and each
//! frame's permutation is drawn by shuffling instead.

use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::Rng;
use thiserror::Error;

use crate::model::{FrameAssignment, HcsSequence, HcsSet, ModelError, Provenance, SlotId, SystemConfig};
use crate::permutation::{factorial, unrank_permutation, PermutationError, MAX_PERMUTATION_SIZE};
use crate::rng::{substream, Purpose, GENERATOR_NAME};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermutationConstructionError {
    #[error("largest level value {r_max} does not divide the frame size {t}")]
    MaxLevelNotDividingFrame { t: usize, r_max: usize },
    #[error("level {level}: level value {r} does not divide the largest level value {r_max}")]
    LevelNotDividingMax { level: usize, r: usize, r_max: usize },
    #[error("level {level}: slot offset {prefix} of earlier levels is not a multiple of {r_max}")]
    FractionalOffset { level: usize, prefix: u64, r_max: usize },
    #[error("load {load} exceeds the {t} slots of a frame")]
    OverCapacity { load: u64, t: usize },
    #[error("{blocks} blocks per frame is too many for an exact permutation selector: {source}")]
    SelectorAlphabet { blocks: usize, source: PermutationError },
    #[error("driver sequence {name} has length {found}, expected {expected}")]
    DriverLength { name: &'static str, expected: usize, found: usize },
    #[error("driver sequence {name} holds {value} at frame {frame}, alphabet size is {alphabet}")]
    DriverRange { name: &'static str, frame: usize, value: u64, alphabet: u64 },
    #[error("expected {expected} level driver sequences, found {found}")]
    DriverLevels { expected: usize, found: usize },
    #[error(transparent)]
    Model(#[from] ModelError),
}

type Result<T> = core::result::Result<T, PermutationConstructionError>;

/// Block arithmetic derived from a configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationParams {
    /// Largest level value `R`.
    pub r_max: usize,
    /// Slots per block, `t / R`.
    pub blocks: usize,
    /// `R / r_i` per level.
    pub eta: Vec<usize>,
    /// Group offset `sum_{z<i} u_z r_z / R` per level.
    pub omega: Vec<usize>,
    pub seed: u64,
}

impl PermutationParams {
    pub fn derive(config: &SystemConfig) -> Result<Self> {
        let t = config.t();
        let r_max = config.max_level_value();
        if t % r_max != 0 {
            return Err(PermutationConstructionError::MaxLevelNotDividingFrame { t, r_max });
        }
        let mut eta = Vec::with_capacity(config.lambda());
        let mut omega = Vec::with_capacity(config.lambda());
        for (level, spec) in config.levels().iter().enumerate() {
            if r_max % spec.r != 0 {
                return Err(PermutationConstructionError::LevelNotDividingMax { level, r: spec.r, r_max });
            }
            let prefix = config.prefix_load(level);
            if prefix % r_max as u64 != 0 {
                return Err(PermutationConstructionError::FractionalOffset { level, prefix, r_max });
            }
            eta.push(r_max / spec.r);
            omega.push((prefix / r_max as u64) as usize);
        }
        let load = config.load();
        if load > t as u64 {
            return Err(PermutationConstructionError::OverCapacity { load, t });
        }
        let blocks = t / r_max;
        Ok(PermutationParams {
            r_max,
            blocks,
            eta,
            omega,
            seed: config.seed(),
        })
    }

    /// Number of frames `t * R`.
    pub fn length(&self) -> usize {
        self.blocks * self.r_max * self.r_max
    }

    /// Size of the permutation selector alphabet, `(t / R)!`, when it fits
    /// in 64 bits.
    pub fn selector_alphabet(&self) -> Option<u64> {
        factorial(self.blocks).ok()
    }
}

/// Pseudo-random sequences steering the construction.
///
/// Only the base sequence of each level is stored; the `eta_i` shifted
/// variants are derived from it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Selector {
    /// Lexicographic permutation rank per frame.
    Ranks(Vec<u64>),
    /// The permutation itself per frame, for more than 20 blocks.
    Permutations(Vec<Vec<usize>>),
}

impl Selector {
    pub fn len(&self) -> usize {
        match self {
            Selector::Ranks(r) => r.len(),
            Selector::Permutations(p) => p.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn ranks(&self) -> Option<&[u64]> {
        match self {
            Selector::Ranks(r) => Some(r),
            Selector::Permutations(_) => None,
        }
    }

    /// Permutation of `0..blocks` used in frame `alpha`.
    pub fn permutation(&self, alpha: usize, blocks: usize) -> Vec<usize> {
        match self {
            Selector::Ranks(r) => unrank_permutation(r[alpha], blocks).expect("selector validated"),
            Selector::Permutations(p) => p[alpha].clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DriverSequences {
    pub selector: Selector,
    /// Base shift sequence per level, values in `0..eta_i`.
    pub level_bases: Vec<Vec<usize>>,
    eta: Vec<usize>,
}

impl DriverSequences {
    /// Validates explicitly supplied drivers against `params`. The selector
    /// is given as ranks, so at most 20 blocks are supported.
    pub fn from_parts(params: &PermutationParams, selector: Vec<u64>, level_bases: Vec<Vec<usize>>) -> Result<Self> {
        let blocks = params.blocks;
        let alphabet = factorial(blocks).map_err(|source| PermutationConstructionError::SelectorAlphabet { blocks, source })?;
        let len = params.length();
        if selector.len() != len {
            return Err(PermutationConstructionError::DriverLength {
                name: "selector",
                expected: len,
                found: selector.len(),
            });
        }
        if let Some((frame, &value)) = selector.iter().enumerate().find(|(_, &v)| v >= alphabet) {
            return Err(PermutationConstructionError::DriverRange {
                name: "selector",
                frame,
                value,
                alphabet,
            });
        }
        if level_bases.len() != params.eta.len() {
            return Err(PermutationConstructionError::DriverLevels {
                expected: params.eta.len(),
                found: level_bases.len(),
            });
        }
        for (base, &eta) in level_bases.iter().zip(&params.eta) {
            if base.len() != len {
                return Err(PermutationConstructionError::DriverLength {
                    name: "level",
                    expected: len,
                    found: base.len(),
                });
            }
            if let Some((frame, &value)) = base.iter().enumerate().find(|(_, &v)| v >= eta) {
                return Err(PermutationConstructionError::DriverRange {
                    name: "level",
                    frame,
                    value: value as u64,
                    alphabet: eta as u64,
                });
            }
        }
        Ok(DriverSequences {
            selector: Selector::Ranks(selector),
            level_bases,
            eta: params.eta.clone(),
        })
    }

    /// `b^{level, eps}(alpha) = (b^{level, 0}(alpha) + eps) mod eta`.
    pub fn shift(&self, level: usize, eps: usize, alpha: usize) -> usize {
        (self.level_bases[level][alpha] + eps) % self.eta[level]
    }

    /// The full shifted family `b^{level, 0..eta}` of one level.
    pub fn level_family(&self, level: usize) -> Vec<Vec<usize>> {
        let len = self.selector.len();
        (0..self.eta[level])
            .map(|eps| (0..len).map(|alpha| self.shift(level, eps, alpha)).collect())
            .collect()
    }
}

/// Draws the selector and the per-level base sequences from the seed.
pub fn derive_drivers(params: &PermutationParams) -> DriverSequences {
    let len = params.length();
    let mut rng = substream(params.seed, Purpose::PermutationSelector, 0);
    let selector = match params.selector_alphabet() {
        Some(alphabet) if params.blocks <= MAX_PERMUTATION_SIZE => {
            Selector::Ranks((0..len).map(|_| rng.random_range(0..alphabet)).collect())
        }
        _ => Selector::Permutations(
            (0..len)
                .map(|_| {
                    let mut p: Vec<usize> = (0..params.blocks).collect();
                    p.shuffle(&mut rng);
                    p
                })
                .collect(),
        ),
    };
    let level_bases = params
        .eta
        .iter()
        .enumerate()
        .map(|(level, &eta)| {
            let mut rng = substream(params.seed, Purpose::LevelShift, level as u32);
            (0..len).map(|_| rng.random_range(0..eta)).collect()
        })
        .collect();
    DriverSequences {
        selector,
        level_bases,
        eta: params.eta.clone(),
    }
}

/// Builds the set with drivers drawn from the configuration's seed.
pub fn construct1(config: &SystemConfig) -> Result<HcsSet> {
    let params = PermutationParams::derive(config)?;
    let drivers = derive_drivers(&params);
    build(config, &params, &drivers, false)
}

/// Builds the set from explicitly supplied drivers.
pub fn construct1_with_drivers(config: &SystemConfig, drivers: &DriverSequences) -> Result<HcsSet> {
    let params = PermutationParams::derive(config)?;
    let ranks = drivers.selector.ranks().map(<[u64]>::to_vec).unwrap_or_default();
    let drivers = DriverSequences::from_parts(&params, ranks, drivers.level_bases.clone())?;
    build(config, &params, &drivers, true)
}

fn build(config: &SystemConfig, params: &PermutationParams, drivers: &DriverSequences, injected: bool) -> Result<HcsSet> {
    let len = params.length();
    let m = params.blocks;
    let permutations: Vec<Vec<usize>> = (0..len).map(|alpha| drivers.selector.permutation(alpha, m)).collect();

    let mut sequences = Vec::with_capacity(config.user_count());
    for (level, spec) in config.levels().iter().enumerate() {
        let eta = params.eta[level];
        let omega = params.omega[level];
        for user in 0..spec.u {
            let group = user / eta;
            let eps = user % eta;
            let frames = (0..len)
                .map(|alpha| {
                    let perm = &permutations[alpha];
                    let slots = (0..spec.r)
                        .map(|theta| {
                            let block = drivers.shift(level, eps, alpha) + theta * eta;
                            SlotId(perm[(block + omega + group) % m] + block * m)
                        })
                        .collect();
                    FrameAssignment::new(slots)
                })
                .collect();
            sequences.push(HcsSequence { level, user, frames });
        }
    }
    let provenance = Provenance::Permutation {
        seed: params.seed,
        rng: GENERATOR_NAME.into(),
        injected_drivers: injected,
    };
    Ok(HcsSet::new(config.clone(), len, sequences, provenance)?)
}
