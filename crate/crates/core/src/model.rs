//! Shared vocabulary: slots, access levels, system configuration and the
//! hierarchical control sequence set itself.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors raised while building or inspecting model values.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("frame size t must be at least 1")]
    EmptyFrame,
    #[error("at least one access level is required")]
    NoLevels,
    #[error("level {level}: level value r must be at least 1")]
    ZeroLevelValue { level: usize },
    #[error("level values must be strictly ascending (level {level} has r={r}, previous r={previous})")]
    LevelsNotAscending { level: usize, r: usize, previous: usize },
    #[error("sequence length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("shift {tau} out of range for sequences of length {len}")]
    ShiftOutOfRange { tau: usize, len: usize },
    #[error("expected {expected} sequences (sum of u_i), found {found}")]
    SequenceCount { expected: usize, found: usize },
    #[error("sequence #{index} is labelled (level {level}, user {user}) but (level {expected_level}, user {expected_user}) was expected")]
    SequenceLabel {
        index: usize,
        level: usize,
        user: usize,
        expected_level: usize,
        expected_user: usize,
    },
    #[error("sequence (level {level}, user {user}) has {found} frames, set length is {expected}")]
    FrameCount { level: usize, user: usize, expected: usize, found: usize },
    #[error("sequence (level {level}, user {user}) frame {frame} has {found} slots, level value is {expected}")]
    FrameArity { level: usize, user: usize, frame: usize, expected: usize, found: usize },
    #[error("subsequences must share one length")]
    RaggedSubsequences,
}

/// Index of a time slot inside a frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SlotId(pub usize);

impl SlotId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for SlotId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl From<usize> for SlotId {
    fn from(value: usize) -> Self {
        SlotId(value)
    }
}

/// One access level: `r` slots per frame for each of its `u` users.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelSpec {
    pub r: usize,
    pub u: usize,
}

impl LevelSpec {
    pub const fn new(r: usize, u: usize) -> Self {
        LevelSpec { r, u }
    }

    /// Slots this level consumes per frame.
    pub fn load(&self) -> u64 {
        self.r as u64 * self.u as u64
    }
}

/// Frame size, ordered access levels and the seed for every random draw.
///
/// The capacity bound is not enforced here so that over-capacity
/// configurations can still be analysed; the constructions reject them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemConfig {
    t: usize,
    levels: Vec<LevelSpec>,
    seed: u64,
}

impl SystemConfig {
    pub fn new(t: usize, levels: Vec<LevelSpec>, seed: u64) -> Result<Self, ModelError> {
        if t == 0 {
            return Err(ModelError::EmptyFrame);
        }
        if levels.is_empty() {
            return Err(ModelError::NoLevels);
        }
        for (i, level) in levels.iter().enumerate() {
            if level.r == 0 {
                return Err(ModelError::ZeroLevelValue { level: i });
            }
            if i > 0 && levels[i - 1].r >= level.r {
                return Err(ModelError::LevelsNotAscending {
                    level: i,
                    r: level.r,
                    previous: levels[i - 1].r,
                });
            }
        }
        Ok(SystemConfig { t, levels, seed })
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn lambda(&self) -> usize {
        self.levels.len()
    }

    pub fn levels(&self) -> &[LevelSpec] {
        &self.levels
    }

    pub fn level(&self, index: usize) -> Option<&LevelSpec> {
        self.levels.get(index)
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    /// Largest level value (`R`).
    pub fn max_level_value(&self) -> usize {
        self.levels.last().map_or(0, |l| l.r)
    }

    /// Total number of users `M`.
    pub fn user_count(&self) -> usize {
        self.levels.iter().map(|l| l.u).sum()
    }

    /// Slots occupied per frame, `sum r_i * u_i`.
    pub fn load(&self) -> u64 {
        self.levels.iter().map(LevelSpec::load).sum()
    }

    /// `sum_{z < level} u_z * r_z`.
    pub fn prefix_load(&self, level: usize) -> u64 {
        self.levels[..level].iter().map(LevelSpec::load).sum()
    }

    /// True when every slot of every frame is used.
    pub fn is_saturated(&self) -> bool {
        self.load() == self.t as u64
    }
}

/// The `r` distinct slots one user occupies in one frame, ordered by position.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FrameAssignment {
    pub slots: Vec<SlotId>,
}

impl FrameAssignment {
    pub fn new(slots: Vec<SlotId>) -> Self {
        FrameAssignment { slots }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        FrameAssignment {
            slots: iter.into_iter().map(SlotId).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    pub fn contains(&self, slot: SlotId) -> bool {
        self.slots.contains(&slot)
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.slots.iter().map(|s| s.0)
    }

    /// True when no slot repeats inside the frame.
    pub fn is_distinct(&self) -> bool {
        self.slots
            .iter()
            .enumerate()
            .all(|(i, a)| self.slots[i + 1..].iter().all(|b| a != b))
    }
}

/// The control sequence handed to user `user` of level `level`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HcsSequence {
    pub level: usize,
    pub user: usize,
    pub frames: Vec<FrameAssignment>,
}

impl HcsSequence {
    pub fn len(&self) -> usize {
        self.frames.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frames.is_empty()
    }

    /// Slots per frame, read off the first frame.
    pub fn arity(&self) -> usize {
        self.frames.first().map_or(0, FrameAssignment::len)
    }

    /// Frame `frame` of the sequence, wrapping cyclically.
    pub fn frame_cyclic(&self, frame: u64) -> &FrameAssignment {
        &self.frames[(frame % self.frames.len() as u64) as usize]
    }
}

/// Extracts the per-position subsequences of `seq`: list `k` holds the
/// slot used at position `k` of every frame.
pub fn flatten(seq: &HcsSequence) -> Vec<Vec<SlotId>> {
    let arity = seq.arity();
    (0..arity)
        .map(|k| seq.frames.iter().map(|f| f.slots[k]).collect())
        .collect()
}

/// Inverse of [`flatten`]: regroups per-position subsequences into frames.
pub fn unflatten(subsequences: &[Vec<SlotId>]) -> Result<Vec<FrameAssignment>, ModelError> {
    let len = subsequences.first().map_or(0, Vec::len);
    if subsequences.iter().any(|s| s.len() != len) {
        return Err(ModelError::RaggedSubsequences);
    }
    Ok((0..len)
        .map(|alpha| FrameAssignment::new(subsequences.iter().map(|s| s[alpha]).collect()))
        .collect())
}

/// Number of positions `i` with `x[i] == y[(i + tau) mod l]`.
pub fn hamming_correlation<T: PartialEq>(x: &[T], y: &[T], tau: usize) -> Result<usize, ModelError> {
    if x.len() != y.len() {
        return Err(ModelError::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    let len = x.len();
    if tau >= len {
        return Err(ModelError::ShiftOutOfRange { tau, len });
    }
    Ok(x.iter()
        .enumerate()
        .filter(|&(i, a)| *a == y[(i + tau) % len])
        .count())
}

/// Order mode used by the multiplicative construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrderMode {
    /// `d` is the true multiplicative order of `g`.
    TrueOrder,
    /// `d` supplied by the caller, exponents reduced modulo it.
    Compat,
}

impl OrderMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            OrderMode::TrueOrder => "true-order",
            OrderMode::Compat => "compat",
        }
    }
}

/// How a set was produced.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Provenance {
    /// Permutation-table construction.
    Permutation {
        seed: u64,
        rng: String,
        injected_drivers: bool,
    },
    /// Multiplicative iteration construction.
    Multiplicative { g: u64, d: u64, n: u32, mode: OrderMode },
    /// A set from elsewhere; only construction-agnostic checks apply.
    Unknown { kind: String },
}

impl Provenance {
    pub fn kind(&self) -> &str {
        match self {
            Provenance::Permutation { .. } => "c1",
            Provenance::Multiplicative { .. } => "c2",
            Provenance::Unknown { kind } => kind,
        }
    }
}

/// A `(l, M, t; sum u_i, lambda)` hierarchical control sequence set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HcsSet {
    config: SystemConfig,
    length: usize,
    sequences: Vec<HcsSequence>,
    provenance: Provenance,
}

impl HcsSet {
    /// Assembles a set, checking its shape: one sequence per user in
    /// (level, user) order, `length` frames each, `r_i` slots per frame.
    ///
    /// Slot values are not checked; that is what verification is for.
    pub fn new(
        config: SystemConfig,
        length: usize,
        sequences: Vec<HcsSequence>,
        provenance: Provenance,
    ) -> Result<Self, ModelError> {
        let expected = config.user_count();
        if sequences.len() != expected {
            return Err(ModelError::SequenceCount {
                expected,
                found: sequences.len(),
            });
        }
        let labels = config
            .levels()
            .iter()
            .enumerate()
            .flat_map(|(i, l)| (0..l.u).map(move |j| (i, j)));
        for (index, (seq, (level, user))) in sequences.iter().zip(labels).enumerate() {
            if seq.level != level || seq.user != user {
                return Err(ModelError::SequenceLabel {
                    index,
                    level: seq.level,
                    user: seq.user,
                    expected_level: level,
                    expected_user: user,
                });
            }
            if seq.frames.len() != length {
                return Err(ModelError::FrameCount {
                    level,
                    user,
                    expected: length,
                    found: seq.frames.len(),
                });
            }
            let r = config.levels()[level].r;
            if let Some((frame, f)) = seq.frames.iter().enumerate().find(|(_, f)| f.len() != r) {
                return Err(ModelError::FrameArity {
                    level,
                    user,
                    frame,
                    expected: r,
                    found: f.len(),
                });
            }
        }
        Ok(HcsSet {
            config,
            length,
            sequences,
            provenance,
        })
    }

    pub fn config(&self) -> &SystemConfig {
        &self.config
    }

    pub fn t(&self) -> usize {
        self.config.t()
    }

    /// Frames per period, `l`.
    pub fn length(&self) -> usize {
        self.length
    }

    pub fn sequences(&self) -> &[HcsSequence] {
        &self.sequences
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// `(l, M, t, sum u_i, lambda)`.
    pub fn parameters(&self) -> (usize, usize, usize, usize, usize) {
        (
            self.length,
            self.sequences.len(),
            self.config.t(),
            self.config.user_count(),
            self.config.lambda(),
        )
    }

    pub fn sequence(&self, level: usize, user: usize) -> Option<&HcsSequence> {
        self.sequences
            .iter()
            .find(|s| s.level == level && s.user == user)
    }

    /// Position of the `(level, user)` sequence in [`HcsSet::sequences`].
    pub fn sequence_index(&self, level: usize, user: usize) -> Option<usize> {
        self.sequences
            .iter()
            .position(|s| s.level == level && s.user == user)
    }

    /// Mutable access for fault injection in tests and tooling.
    pub fn sequences_mut(&mut self) -> &mut [HcsSequence] {
        &mut self.sequences
    }

    pub fn into_parts(self) -> (SystemConfig, usize, Vec<HcsSequence>, Provenance) {
        (self.config, self.length, self.sequences, self.provenance)
    }
}
