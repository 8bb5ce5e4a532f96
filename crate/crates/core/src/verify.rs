//! Construction-agnostic checker for HCS sets.
//!
//! Every gate is evaluated exhaustively: all pairs of per-position
//! subsequences, every frame, every slot. Expected occupancy counts come
//! from the set's provenance when it names a known construction.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::bound::{check_bound, BoundReport};
use crate::model::{flatten, hamming_correlation, HcsSet, Provenance, SlotId};

/// Outcome of one gate; a failure always carries its witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "witness", rename_all = "lowercase")]
pub enum Check<W> {
    Pass,
    Fail(W),
}

impl<W> Check<W> {
    pub fn passed(&self) -> bool {
        matches!(self, Check::Pass)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Check::Pass => None,
            Check::Fail(w) => Some(w),
        }
    }
}

/// Position `position` of user `user` at level `level`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsequenceId {
    pub level: usize,
    pub user: usize,
    pub position: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollisionWitness {
    pub first: SubsequenceId,
    pub second: SubsequenceId,
    pub frame: usize,
    pub slot: SlotId,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrameWitness {
    pub frame: usize,
    pub slot: SlotId,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RangeWitness {
    pub subsequence: SubsequenceId,
    pub frame: usize,
    pub slot: SlotId,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OccupancyWitness {
    pub slot: SlotId,
    /// Set when the count is taken over one subsequence rather than the set.
    pub subsequence: Option<SubsequenceId>,
    pub found: u64,
    pub expected: u64,
}

/// Which occupancy rule was applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OccupancyRule {
    /// Every slot appears exactly `t * R` times over the set.
    PermutationSaturated,
    /// Non-saturated permutation set: at most once per frame.
    AtMostOncePerFrame,
    /// Every subsequence holds every slot exactly `d^n` times.
    PerSubsequence,
    /// Unknown provenance: all slot counts equal.
    Uniform,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OccupancyReport {
    pub rule: OccupancyRule,
    pub histogram: Vec<u64>,
    pub expected_per_slot: Option<u64>,
    pub expected_per_subsequence: Option<u64>,
    pub check: Check<OccupancyWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UtilizationWitness {
    pub frame: usize,
    pub unused_slot: SlotId,
}

/// The two crisp access-model conditions: full, even slot utilization and
/// the capacity bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HcsConditions {
    pub saturated: bool,
    pub utilization: Check<UtilizationWitness>,
    pub within_capacity: bool,
}

/// Descriptive figures, not gates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metrics {
    pub length: usize,
    pub subsequences: usize,
    /// Largest `|count - l/t|` over all subsequences and slots.
    pub max_uniformity_deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub parameters: [usize; 5],
    pub construction: String,
    pub zero_correlation: Check<CollisionWitness>,
    pub slot_range: Check<RangeWitness>,
    pub frame_distinctness: Check<FrameWitness>,
    pub occupancy: OccupancyReport,
    pub bound: BoundReport,
    pub hcs_conditions: HcsConditions,
    pub metrics: Metrics,
    pub warnings: Vec<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.zero_correlation.passed()
            && self.slot_range.passed()
            && self.frame_distinctness.passed()
            && self.occupancy.check.passed()
            && self.hcs_conditions.utilization.passed()
            && self.hcs_conditions.within_capacity
    }
}

struct Subsequence {
    id: SubsequenceId,
    slots: Vec<SlotId>,
}

fn subsequences(set: &HcsSet) -> Vec<Subsequence> {
    set.sequences()
        .iter()
        .flat_map(|seq| {
            flatten(seq).into_iter().enumerate().map(move |(position, slots)| Subsequence {
                id: SubsequenceId {
                    level: seq.level,
                    user: seq.user,
                    position,
                },
                slots,
            })
        })
        .collect()
}

pub fn verify(set: &HcsSet) -> VerificationReport {
    let subs = subsequences(set);
    let t = set.t();
    let mut warnings = Vec::new();

    let (l, m, t_, users, lambda) = set.parameters();
    let occupancy = check_occupancy(set, &subs, &mut warnings);
    let bound = check_bound(set.config());
    let saturated = set.config().is_saturated();
    VerificationReport {
        parameters: [l, m, t_, users, lambda],
        construction: set.provenance().kind().into(),
        zero_correlation: check_zero_correlation(&subs),
        slot_range: check_range(&subs, t),
        frame_distinctness: check_frames(set),
        occupancy,
        bound,
        hcs_conditions: HcsConditions {
            saturated,
            utilization: check_utilization(set),
            within_capacity: bound.feasible,
        },
        metrics: Metrics {
            length: set.length(),
            subsequences: subs.len(),
            max_uniformity_deviation: uniformity_deviation(&subs, t),
        },
        warnings,
    }
}

fn check_zero_correlation(subs: &[Subsequence]) -> Check<CollisionWitness> {
    for (i, a) in subs.iter().enumerate() {
        for b in &subs[i + 1..] {
            let hits = hamming_correlation(&a.slots, &b.slots, 0).expect("subsequences share the set length");
            if hits > 0 {
                let frame = a.slots.iter().zip(&b.slots).position(|(x, y)| x == y).expect("hits > 0");
                return Check::Fail(CollisionWitness {
                    first: a.id,
                    second: b.id,
                    frame,
                    slot: a.slots[frame],
                });
            }
        }
    }
    Check::Pass
}

fn check_range(subs: &[Subsequence], t: usize) -> Check<RangeWitness> {
    for sub in subs {
        if let Some(frame) = sub.slots.iter().position(|s| s.0 >= t) {
            return Check::Fail(RangeWitness {
                subsequence: sub.id,
                frame,
                slot: sub.slots[frame],
            });
        }
    }
    Check::Pass
}

fn check_frames(set: &HcsSet) -> Check<FrameWitness> {
    let t = set.t();
    // seen[slot] == frame + 1 marks a slot already claimed in this frame.
    let mut seen = vec![0usize; t];
    for frame in 0..set.length() {
        for seq in set.sequences() {
            for &slot in &seq.frames[frame].slots {
                if slot.0 >= t {
                    continue;
                }
                if seen[slot.0] == frame + 1 {
                    return Check::Fail(FrameWitness { frame, slot });
                }
                seen[slot.0] = frame + 1;
            }
        }
    }
    Check::Pass
}

fn check_utilization(set: &HcsSet) -> Check<UtilizationWitness> {
    if !set.config().is_saturated() {
        return Check::Pass;
    }
    let t = set.t();
    let mut used = vec![false; t];
    for frame in 0..set.length() {
        used.iter_mut().for_each(|u| *u = false);
        for seq in set.sequences() {
            for slot in seq.frames[frame].indices().filter(|&s| s < t) {
                used[slot] = true;
            }
        }
        if let Some(unused) = used.iter().position(|u| !u) {
            return Check::Fail(UtilizationWitness {
                frame,
                unused_slot: SlotId(unused),
            });
        }
    }
    Check::Pass
}

/// Count of every slot over all sequences, frames and positions.
pub fn occupancy_histogram(set: &HcsSet) -> Vec<u64> {
    let t = set.t();
    let mut histogram = vec![0u64; t];
    for seq in set.sequences() {
        for frame in &seq.frames {
            for slot in frame.indices().filter(|&s| s < t) {
                histogram[slot] += 1;
            }
        }
    }
    histogram
}

fn first_mismatch(histogram: &[u64], expected: u64) -> Option<(usize, u64)> {
    histogram
        .iter()
        .enumerate()
        .find(|&(_, &c)| c != expected)
        .map(|(slot, &c)| (slot, c))
}

fn check_occupancy(set: &HcsSet, subs: &[Subsequence], warnings: &mut Vec<String>) -> OccupancyReport {
    let histogram = occupancy_histogram(set);
    let t = set.t() as u64;
    let saturated = set.config().is_saturated();
    match set.provenance() {
        Provenance::Permutation { .. } if saturated => {
            let expected = t * set.config().max_level_value() as u64;
            let check = match first_mismatch(&histogram, expected) {
                None => Check::Pass,
                Some((slot, found)) => Check::Fail(OccupancyWitness {
                    slot: SlotId(slot),
                    subsequence: None,
                    found,
                    expected,
                }),
            };
            OccupancyReport {
                rule: OccupancyRule::PermutationSaturated,
                histogram,
                expected_per_slot: Some(expected),
                expected_per_subsequence: None,
                check,
            }
        }
        Provenance::Permutation { .. } => {
            let limit = set.length() as u64;
            let check = match histogram.iter().enumerate().find(|&(_, &c)| c > limit) {
                None => Check::Pass,
                Some((slot, &found)) => Check::Fail(OccupancyWitness {
                    slot: SlotId(slot),
                    subsequence: None,
                    found,
                    expected: limit,
                }),
            };
            OccupancyReport {
                rule: OccupancyRule::AtMostOncePerFrame,
                histogram,
                expected_per_slot: None,
                expected_per_subsequence: None,
                check,
            }
        }
        Provenance::Multiplicative { d, n, .. } => {
            let expected = d.checked_pow(*n).unwrap_or(u64::MAX);
            let mut check = Check::Pass;
            for sub in subs {
                let mut counts = vec![0u64; set.t()];
                for slot in sub.slots.iter().filter(|s| s.0 < set.t()) {
                    counts[slot.0] += 1;
                }
                if let Some((slot, found)) = first_mismatch(&counts, expected) {
                    check = Check::Fail(OccupancyWitness {
                        slot: SlotId(slot),
                        subsequence: Some(sub.id),
                        found,
                        expected,
                    });
                    break;
                }
            }
            OccupancyReport {
                rule: OccupancyRule::PerSubsequence,
                expected_per_slot: Some(expected * subs.len() as u64),
                histogram,
                expected_per_subsequence: Some(expected),
                check,
            }
        }
        Provenance::Unknown { kind } => {
            warnings.push(format!(
                "unknown construction {kind:?}: occupancy checked for uniformity only"
            ));
            let expected = histogram.first().copied().unwrap_or(0);
            let check = match first_mismatch(&histogram, expected) {
                None => Check::Pass,
                Some((slot, found)) => Check::Fail(OccupancyWitness {
                    slot: SlotId(slot),
                    subsequence: None,
                    found,
                    expected,
                }),
            };
            OccupancyReport {
                rule: OccupancyRule::Uniform,
                histogram,
                expected_per_slot: None,
                expected_per_subsequence: None,
                check,
            }
        }
    }
}

fn uniformity_deviation(subs: &[Subsequence], t: usize) -> f64 {
    let mut worst = 0.0f64;
    let mut counts = vec![0u64; t];
    for sub in subs {
        counts.iter_mut().for_each(|c| *c = 0);
        for slot in sub.slots.iter().filter(|s| s.0 < t) {
            counts[slot.0] += 1;
        }
        let mean = sub.slots.len() as f64 / t as f64;
        for &c in &counts {
            let dev = c as f64 - mean;
            let dev = if dev < 0.0 { -dev } else { dev };
            if dev > worst {
                worst = dev;
            }
        }
    }
    worst
}
