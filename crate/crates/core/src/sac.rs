//! Sequence assignment center: hands out per-level sequences on request,
//! queues users when a level runs dry, and passes released sequences to the
//! head of the queue.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{FrameAssignment, HcsSet, SlotId};
use crate::rng::{substream, Purpose};
use crate::verify::verify;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct UserId(pub u64);

impl fmt::Display for UserId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SacError {
    #[error("the sequence set does not pass verification")]
    InvalidSet,
    #[error("user {user} is already assigned or waiting")]
    DuplicateRequest { user: UserId },
    #[error("level {level} does not exist")]
    UnknownLevel { level: usize },
    #[error("user {user} holds no sequence")]
    NotAssigned { user: UserId },
    #[error("frame {frame} precedes the current frame {current}")]
    FrameRegression { frame: u64, current: u64 },
    #[error("user {user} starts transmitting at frame {join_frame}, not before (asked for {frame})")]
    NotActive { user: UserId, frame: u64, join_frame: u64 },
}

/// How a user's frame counter maps onto its sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Alignment {
    /// Sequence index is the global frame modulo `l`; collision-free.
    #[default]
    Global,
    /// Sequence index counts from the user's join frame. Users joining at
    /// different frames may collide.
    PerUser,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum AssignmentPolicy {
    #[default]
    LowestIdle,
    SeededRandom { seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SacOptions {
    pub alignment: Alignment,
    pub policy: AssignmentPolicy,
    /// Frames between assignment and first transmission.
    pub sync_delay: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SacEventKind {
    JoinRequest,
    Assigned,
    Queued,
    Released,
    GrantedFromQueue,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SacEvent {
    pub frame: u64,
    pub kind: SacEventKind,
    pub user: UserId,
    pub level: usize,
    /// Index into the set's sequence list.
    pub sequence: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assignment {
    pub level: usize,
    pub sequence: usize,
    pub join_frame: u64,
}

/// Who claims each slot in one frame.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrameAudit {
    pub frame: u64,
    /// `claims[slot]` lists the users transmitting in that slot.
    pub claims: Vec<Vec<UserId>>,
}

impl FrameAudit {
    /// Slots claimed by more than one user.
    pub fn collisions(&self) -> impl Iterator<Item = SlotId> + '_ {
        self.claims
            .iter()
            .enumerate()
            .filter(|(_, c)| c.len() > 1)
            .map(|(s, _)| SlotId(s))
    }

    pub fn is_collision_free(&self) -> bool {
        self.collisions().next().is_none()
    }
}

#[derive(Debug, Clone)]
pub struct SacState<'a> {
    set: &'a HcsSet,
    options: SacOptions,
    pools: Vec<BTreeSet<usize>>,
    assignments: BTreeMap<UserId, Assignment>,
    wait_queues: Vec<VecDeque<UserId>>,
    frame: u64,
    log: Vec<SacEvent>,
    rng: ChaCha8Rng,
}

impl<'a> SacState<'a> {
    /// All sequences idle, grouped by level, frame 0. The set must verify.
    pub fn init(set: &'a HcsSet, options: SacOptions) -> Result<Self, SacError> {
        if !verify(set).passed() {
            return Err(SacError::InvalidSet);
        }
        Ok(Self::fresh(set, options))
    }

    fn fresh(set: &'a HcsSet, options: SacOptions) -> Self {
        let lambda = set.config().lambda();
        let mut pools = vec![BTreeSet::new(); lambda];
        for (id, seq) in set.sequences().iter().enumerate() {
            pools[seq.level].insert(id);
        }
        let seed = match options.policy {
            AssignmentPolicy::SeededRandom { seed } => seed,
            AssignmentPolicy::LowestIdle => 0,
        };
        SacState {
            set,
            options,
            pools,
            assignments: BTreeMap::new(),
            wait_queues: vec![VecDeque::new(); lambda],
            frame: 0,
            log: Vec::new(),
            rng: substream(seed, Purpose::SequenceChoice, 0),
        }
    }

    pub fn set(&self) -> &'a HcsSet {
        self.set
    }

    pub fn options(&self) -> &SacOptions {
        &self.options
    }

    pub fn frame(&self) -> u64 {
        self.frame
    }

    pub fn events(&self) -> &[SacEvent] {
        &self.log
    }

    pub fn idle(&self, level: usize) -> Option<&BTreeSet<usize>> {
        self.pools.get(level)
    }

    pub fn queue(&self, level: usize) -> Option<&VecDeque<UserId>> {
        self.wait_queues.get(level)
    }

    pub fn assignment(&self, user: UserId) -> Option<&Assignment> {
        self.assignments.get(&user)
    }

    pub fn assignments(&self) -> impl Iterator<Item = (&UserId, &Assignment)> {
        self.assignments.iter()
    }

    pub fn is_waiting(&self, user: UserId) -> bool {
        self.wait_queues.iter().any(|q| q.contains(&user))
    }

    /// Users queued at levels that own no sequences; they never get one.
    pub fn unservable(&self) -> Vec<UserId> {
        self.wait_queues
            .iter()
            .enumerate()
            .filter(|(level, _)| self.set.config().levels()[*level].u == 0)
            .flat_map(|(_, q)| q.iter().copied())
            .collect()
    }

    fn advance(&mut self, frame: u64) -> Result<(), SacError> {
        if frame < self.frame {
            return Err(SacError::FrameRegression {
                frame,
                current: self.frame,
            });
        }
        self.frame = frame;
        Ok(())
    }

    /// Moves the frame counter forward without any event.
    pub fn advance_to(&mut self, frame: u64) -> Result<(), SacError> {
        self.advance(frame)
    }

    fn record(&mut self, kind: SacEventKind, user: UserId, level: usize, sequence: Option<usize>) -> SacEvent {
        let event = SacEvent {
            frame: self.frame,
            kind,
            user,
            level,
            sequence,
        };
        self.log.push(event);
        event
    }

    fn take_idle(&mut self, level: usize) -> Option<usize> {
        let pool = &mut self.pools[level];
        let pick = match self.options.policy {
            AssignmentPolicy::LowestIdle => pool.first().copied(),
            AssignmentPolicy::SeededRandom { .. } if pool.is_empty() => None,
            AssignmentPolicy::SeededRandom { .. } => {
                let k = self.rng.random_range(0..pool.len());
                pool.iter().nth(k).copied()
            }
        }?;
        pool.remove(&pick);
        Some(pick)
    }

    /// Assigns an idle sequence of `level` to `user`, or queues the user.
    pub fn request_access(&mut self, user: UserId, level: usize, frame: u64) -> Result<SacEvent, SacError> {
        if level >= self.pools.len() {
            return Err(SacError::UnknownLevel { level });
        }
        if self.assignments.contains_key(&user) || self.is_waiting(user) {
            return Err(SacError::DuplicateRequest { user });
        }
        self.advance(frame)?;
        self.record(SacEventKind::JoinRequest, user, level, None);
        match self.take_idle(level) {
            Some(sequence) => {
                self.assignments.insert(
                    user,
                    Assignment {
                        level,
                        sequence,
                        join_frame: frame + self.options.sync_delay,
                    },
                );
                Ok(self.record(SacEventKind::Assigned, user, level, Some(sequence)))
            }
            None => {
                self.wait_queues[level].push_back(user);
                Ok(self.record(SacEventKind::Queued, user, level, None))
            }
        }
    }

    /// Returns `user`'s sequence; the head of that level's queue, if any,
    /// receives it in the same frame.
    pub fn release(&mut self, user: UserId, frame: u64) -> Result<Vec<SacEvent>, SacError> {
        if !self.assignments.contains_key(&user) {
            return Err(SacError::NotAssigned { user });
        }
        self.advance(frame)?;
        let Assignment { level, sequence, .. } = self.assignments.remove(&user).expect("checked above");
        let mut events = vec![self.record(SacEventKind::Released, user, level, Some(sequence))];
        match self.wait_queues[level].pop_front() {
            Some(next) => {
                self.assignments.insert(
                    next,
                    Assignment {
                        level,
                        sequence,
                        join_frame: frame + self.options.sync_delay,
                    },
                );
                events.push(self.record(SacEventKind::GrantedFromQueue, next, level, Some(sequence)));
            }
            None => {
                self.pools[level].insert(sequence);
            }
        }
        Ok(events)
    }

    /// Slots `user` transmits in during `frame`.
    pub fn slots_for(&self, user: UserId, frame: u64) -> Result<&'a FrameAssignment, SacError> {
        let a = self.assignments.get(&user).ok_or(SacError::NotAssigned { user })?;
        if frame < a.join_frame {
            return Err(SacError::NotActive {
                user,
                frame,
                join_frame: a.join_frame,
            });
        }
        let index = match self.options.alignment {
            Alignment::Global => frame,
            Alignment::PerUser => frame - a.join_frame,
        };
        Ok(self.set.sequences()[a.sequence].frame_cyclic(index))
    }

    /// Slot claims of every user active in `frame`.
    pub fn audit(&self, frame: u64) -> FrameAudit {
        let mut claims = vec![Vec::new(); self.set.t()];
        for (&user, a) in &self.assignments {
            if a.join_frame > frame {
                continue;
            }
            let slots = self.slots_for(user, frame).expect("active user");
            let n = claims.len();
            for slot in slots.indices().filter(|&s| s < n) {
                claims[slot].push(user);
            }
        }
        FrameAudit { frame, claims }
    }

    /// Every sequence is idle or assigned, never both, and each level keeps
    /// `u_i` sequences; no user is both assigned and waiting.
    pub fn invariants_hold(&self) -> bool {
        let levels = self.set.config().levels();
        let mut seen = vec![false; self.set.sequences().len()];
        for (level, pool) in self.pools.iter().enumerate() {
            for &id in pool {
                if seen[id] || self.set.sequences()[id].level != level {
                    return false;
                }
                seen[id] = true;
            }
        }
        for a in self.assignments.values() {
            if seen[a.sequence] || self.set.sequences()[a.sequence].level != a.level {
                return false;
            }
            seen[a.sequence] = true;
        }
        let conserved = levels.iter().enumerate().all(|(level, spec)| {
            let assigned = self.assignments.values().filter(|a| a.level == level).count();
            self.pools[level].len() + assigned == spec.u
        });
        let exclusive = self.wait_queues.iter().flatten().all(|u| !self.assignments.contains_key(u));
        seen.iter().all(|&s| s) && conserved && exclusive
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScriptAction {
    Join,
    Leave,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScriptEntry {
    pub frame: u64,
    pub action: ScriptAction,
    pub user: UserId,
    #[serde(default)]
    pub level: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScriptError {
    #[error("script entry {index}: join needs a level")]
    MissingLevel { index: usize },
    #[error("script entry {index}: {source}")]
    Sac { index: usize, source: SacError },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trace {
    pub options: SacOptions,
    pub events: Vec<SacEvent>,
    pub audits: Vec<FrameAudit>,
}

/// Replays `script` (ordered by frame) and audits every frame up to
/// `horizon` (exclusive), or one past the last scripted frame.
pub fn run_script(
    set: &HcsSet,
    options: SacOptions,
    script: &[ScriptEntry],
    horizon: Option<u64>,
) -> Result<Trace, ScriptError> {
    let mut sac = SacState::init(set, options).map_err(|source| ScriptError::Sac { index: 0, source })?;
    let horizon = horizon.unwrap_or_else(|| script.last().map_or(0, |e| e.frame + 1));
    let mut audits = Vec::with_capacity(horizon as usize);
    let mut next = 0;
    for frame in 0..horizon.max(script.last().map_or(0, |e| e.frame + 1)) {
        while let Some(entry) = script.get(next).filter(|e| e.frame <= frame) {
            let result = match entry.action {
                ScriptAction::Join => {
                    let level = entry.level.ok_or(ScriptError::MissingLevel { index: next })?;
                    sac.request_access(entry.user, level, entry.frame).map(|_| ())
                }
                ScriptAction::Leave => sac.release(entry.user, entry.frame).map(|_| ()),
            };
            result.map_err(|source| ScriptError::Sac { index: next, source })?;
            next += 1;
        }
        if frame < horizon {
            audits.push(sac.audit(frame));
        }
    }
    Ok(Trace {
        options,
        events: sac.log,
        audits,
    })
}

/// Random join/leave workload over `frames` frames for users `0..users`.
///
/// Each frame an idle user joins a uniformly chosen level with probability
/// `join_p` and a user holding a sequence leaves with probability `leave_p`.
/// Waiting users stay queued. The script is valid for any options.
pub fn random_script(set: &HcsSet, frames: u64, users: u64, join_p: f64, leave_p: f64, seed: u64) -> Vec<ScriptEntry> {
    let lambda = set.config().lambda();
    let mut rng = substream(seed, Purpose::Workload, 0);
    // Queueing depends only on pool sizes, so any policy predicts it.
    let mut shadow = SacState::fresh(set, SacOptions::default());
    let mut script = Vec::new();
    for frame in 0..frames {
        for id in 0..users {
            let user = UserId(id);
            if shadow.assignments.contains_key(&user) {
                if rng.random_bool(leave_p) {
                    shadow.release(user, frame).expect("assigned");
                    script.push(ScriptEntry {
                        frame,
                        action: ScriptAction::Leave,
                        user,
                        level: None,
                    });
                }
            } else if !shadow.is_waiting(user) && lambda > 0 && rng.random_bool(join_p) {
                let level = rng.random_range(0..lambda);
                shadow.request_access(user, level, frame).expect("idle user");
                script.push(ScriptEntry {
                    frame,
                    action: ScriptAction::Join,
                    user,
                    level: Some(level),
                });
            }
        }
    }
    script
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction_one::construct1;
    use crate::construction_two::{construct2, MultiplicativeOptions};
    use crate::model::{LevelSpec, Provenance, SystemConfig};

    fn c2_example() -> HcsSet {
        let cfg = SystemConfig::new(8, vec![LevelSpec::new(1, 1), LevelSpec::new(3, 1), LevelSpec::new(4, 1)], 0)
            .unwrap();
        construct2(&cfg, &MultiplicativeOptions::new(2).generator(3).compat(4)).unwrap()
    }

    fn c1_example() -> HcsSet {
        let cfg = SystemConfig::new(24, vec![LevelSpec::new(2, 3), LevelSpec::new(3, 4), LevelSpec::new(6, 1)], 9)
            .unwrap();
        construct1(&cfg).unwrap()
    }

    #[test]
    fn random_scripts_replay_cleanly() {
        let set = c1_example();
        let script = random_script(&set, 300, 12, 0.1, 0.05, 4);
        assert!(script.iter().any(|e| e.action == ScriptAction::Leave));
        assert_eq!(script, random_script(&set, 300, 12, 0.1, 0.05, 4));
        for options in [
            SacOptions::default(),
            SacOptions {
                policy: AssignmentPolicy::SeededRandom { seed: 3 },
                sync_delay: 2,
                ..SacOptions::default()
            },
        ] {
            let trace = run_script(&set, options, &script, Some(300)).unwrap();
            assert_eq!(trace.audits.len(), 300);
            assert!(trace.audits.iter().all(FrameAudit::is_collision_free));
        }
    }

    #[test]
    fn init_pools() {
        let set = c2_example();
        let sac = SacState::init(&set, SacOptions::default()).unwrap();
        let sizes: Vec<_> = (0..3).map(|l| sac.idle(l).unwrap().len()).collect();
        assert_eq!(sizes, vec![1, 1, 1]);
        let set = c1_example();
        let sac = SacState::init(&set, SacOptions::default()).unwrap();
        let sizes: Vec<_> = (0..3).map(|l| sac.idle(l).unwrap().len()).collect();
        assert_eq!(sizes, vec![3, 4, 1]);
        assert!(sac.invariants_hold());
    }

    #[test]
    fn init_rejects_broken_set() {
        let mut set = c2_example();
        set.sequences_mut()[0].frames[0].slots[0] = SlotId(5);
        assert_eq!(SacState::init(&set, SacOptions::default()).unwrap_err(), SacError::InvalidSet);
    }

    #[test]
    fn empty_set_queues_everyone() {
        let cfg = SystemConfig::new(4, vec![LevelSpec::new(2, 0)], 0).unwrap();
        let set = HcsSet::new(cfg, 1, Vec::new(), Provenance::Unknown { kind: "empty".into() }).unwrap();
        let mut sac = SacState::init(&set, SacOptions::default()).unwrap();
        let ev = sac.request_access(UserId(1), 0, 0).unwrap();
        assert_eq!(ev.kind, SacEventKind::Queued);
        assert_eq!(sac.unservable(), vec![UserId(1)]);
    }

    #[test]
    fn assign_queue_release_grant() {
        let set = c2_example();
        let mut sac = SacState::init(&set, SacOptions::default()).unwrap();
        let ev = sac.request_access(UserId(10), 2, 3).unwrap();
        assert_eq!((ev.kind, ev.sequence), (SacEventKind::Assigned, Some(2)));
        let ev = sac.request_access(UserId(11), 2, 4).unwrap();
        assert_eq!(ev.kind, SacEventKind::Queued);
        sac.request_access(UserId(12), 2, 4).unwrap();
        assert_eq!(
            sac.request_access(UserId(11), 2, 4),
            Err(SacError::DuplicateRequest { user: UserId(11) })
        );
        assert_eq!(sac.request_access(UserId(13), 3, 4), Err(SacError::UnknownLevel { level: 3 }));

        let events = sac.release(UserId(10), 9).unwrap();
        assert_eq!(events.len(), 2);
        assert_eq!(events[0].kind, SacEventKind::Released);
        assert_eq!((events[1].kind, events[1].user, events[1].sequence), (SacEventKind::GrantedFromQueue, UserId(11), Some(2)));
        assert_eq!(sac.assignment(UserId(11)).unwrap().join_frame, 9);
        assert_eq!(sac.queue(2).unwrap().front(), Some(&UserId(12)));
        assert!(sac.invariants_hold());

        assert_eq!(sac.release(UserId(10), 9), Err(SacError::NotAssigned { user: UserId(10) }));
        assert_eq!(
            sac.release(UserId(11), 2),
            Err(SacError::FrameRegression { frame: 2, current: 9 })
        );
        let events = sac.release(UserId(11), 10).unwrap();
        assert_eq!(events[1].user, UserId(12));
        let events = sac.release(UserId(12), 11).unwrap();
        assert_eq!(events.len(), 1);
        assert_eq!(sac.idle(2).unwrap().len(), 1);
        assert!(sac.invariants_hold());
    }

    #[test]
    fn slot_lookup_modes() {
        let set = c2_example();
        let l = set.length() as u64;
        let seq = &set.sequences()[1];

        let mut sac = SacState::init(&set, SacOptions::default()).unwrap();
        sac.request_access(UserId(1), 1, 5).unwrap();
        assert_eq!(sac.slots_for(UserId(1), 5).unwrap(), &seq.frames[5]);
        assert_eq!(sac.slots_for(UserId(1), 5 + l).unwrap(), &seq.frames[5]);
        assert!(matches!(sac.slots_for(UserId(1), 4), Err(SacError::NotActive { .. })));
        assert_eq!(sac.slots_for(UserId(2), 5), Err(SacError::NotAssigned { user: UserId(2) }));

        let opts = SacOptions { alignment: Alignment::PerUser, ..SacOptions::default() };
        let mut sac = SacState::init(&set, opts).unwrap();
        sac.request_access(UserId(1), 1, 5).unwrap();
        assert_eq!(sac.slots_for(UserId(1), 5).unwrap(), &seq.frames[0]);
        assert_eq!(sac.slots_for(UserId(1), 5 + l).unwrap(), &seq.frames[0]);
    }

    #[test]
    fn sync_delay_postpones_transmission() {
        let set = c2_example();
        let opts = SacOptions { sync_delay: 2, ..SacOptions::default() };
        let mut sac = SacState::init(&set, opts).unwrap();
        sac.request_access(UserId(1), 0, 3).unwrap();
        assert!(sac.slots_for(UserId(1), 4).is_err());
        assert!(sac.slots_for(UserId(1), 5).is_ok());
        assert!(sac.audit(4).claims.iter().all(Vec::is_empty));
    }

    #[test]
    fn seeded_random_policy_is_reproducible() {
        let set = c1_example();
        let opts = SacOptions {
            policy: AssignmentPolicy::SeededRandom { seed: 42 },
            ..SacOptions::default()
        };
        let run = || {
            let mut sac = SacState::init(&set, opts).unwrap();
            for u in 0..4 {
                sac.request_access(UserId(u), 1, u).unwrap();
            }
            sac.events().to_vec()
        };
        let a = run();
        assert_eq!(a, run());
        let mut ids: Vec<_> = a.iter().filter_map(|e| e.sequence).collect();
        ids.sort_unstable();
        assert_eq!(ids, vec![3, 4, 5, 6]);
    }

    #[test]
    fn concurrent_users_never_collide_when_aligned() {
        let set = c1_example();
        let mut sac = SacState::init(&set, SacOptions::default()).unwrap();
        for (u, level) in [0, 0, 0, 1, 1, 1, 1, 2].into_iter().enumerate() {
            sac.request_access(UserId(u as u64), level, u as u64 * 7).unwrap();
        }
        for frame in 49..400 {
            let audit = sac.audit(frame);
            assert!(audit.is_collision_free(), "frame {frame}");
            assert_eq!(audit.claims.iter().filter(|c| c.len() == 1).count(), 24);
        }
    }

    #[test]
    fn per_user_alignment_can_collide() {
        let set = c2_example();
        let opts = SacOptions { alignment: Alignment::PerUser, ..SacOptions::default() };
        let script = [
            ScriptEntry { frame: 0, action: ScriptAction::Join, user: UserId(1), level: Some(2) },
            ScriptEntry { frame: 1, action: ScriptAction::Join, user: UserId(2), level: Some(1) },
        ];
        let trace = run_script(&set, opts, &script, Some(64)).unwrap();
        assert!(trace.audits.iter().any(|a| !a.is_collision_free()));
        let aligned = run_script(&set, SacOptions::default(), &script, Some(64)).unwrap();
        assert!(aligned.audits.iter().all(FrameAudit::is_collision_free));
    }

    #[test]
    fn script_errors_carry_index() {
        let set = c2_example();
        let script = [ScriptEntry { frame: 0, action: ScriptAction::Join, user: UserId(1), level: None }];
        assert_eq!(
            run_script(&set, SacOptions::default(), &script, None),
            Err(ScriptError::MissingLevel { index: 0 })
        );
        let script = [ScriptEntry { frame: 2, action: ScriptAction::Leave, user: UserId(1), level: None }];
        assert!(matches!(
            run_script(&set, SacOptions::default(), &script, None),
            Err(ScriptError::Sac { index: 0, source: SacError::NotAssigned { .. } })
        ));
    }

    #[test]
    fn script_horizon() {
        let set = c2_example();
        let script = [ScriptEntry { frame: 3, action: ScriptAction::Join, user: UserId(1), level: Some(0) }];
        let trace = run_script(&set, SacOptions::default(), &script, None).unwrap();
        assert_eq!(trace.audits.len(), 4);
        assert_eq!(trace.events.len(), 2);
        let trace = run_script(&set, SacOptions::default(), &script, Some(10)).unwrap();
        assert_eq!(trace.audits.len(), 10);
        assert_eq!(trace.audits[9].claims.iter().filter(|c| !c.is_empty()).count(), 1);
    }
}
