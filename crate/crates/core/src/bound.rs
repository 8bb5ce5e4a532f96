//! Capacity bound `sum r_i * u_i <= t` and enumeration of admissible user
//! counts.

use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::SystemConfig;

/// Default cap on the number of tuples [`enumerate_user_counts`] will collect.
pub const DEFAULT_ENUMERATION_CAP: usize = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundError {
    #[error("level values must be non-empty")]
    NoLevels,
    #[error("level value at index {index} must be at least 1")]
    ZeroLevelValue { index: usize },
    #[error("level values must be strictly ascending (index {index})")]
    NotAscending { index: usize },
    #[error("enumeration exceeds the cap of {cap} tuples")]
    CapExceeded { cap: usize },
}

/// Slot load of a configuration against the frame capacity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub load: u64,
    pub capacity: u64,
    pub slack: i64,
    pub feasible: bool,
    pub optimal: bool,
}

impl BoundReport {
    fn new(load: u64, capacity: u64) -> Self {
        let slack = capacity as i64 - load as i64;
        BoundReport {
            load,
            capacity,
            slack,
            feasible: slack >= 0,
            optimal: slack == 0,
        }
    }
}

/// Reports load, slack and optimality; over-capacity shows up as negative
/// slack rather than an error.
pub fn check_bound(config: &SystemConfig) -> BoundReport {
    BoundReport::new(config.load(), config.t() as u64)
}

/// Largest number of level-`r` users a frame of `t` slots holds on its own.
pub fn max_users_single_level(t: usize, r: usize) -> Result<usize, BoundError> {
    if r == 0 {
        return Err(BoundError::ZeroLevelValue { index: 0 });
    }
    Ok(t / r)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UserCountTuple {
    pub counts: Vec<usize>,
    pub load: u64,
    pub optimal: bool,
}

fn validate_levels(level_values: &[usize]) -> Result<(), BoundError> {
    if level_values.is_empty() {
        return Err(BoundError::NoLevels);
    }
    for (index, &r) in level_values.iter().enumerate() {
        if r == 0 {
            return Err(BoundError::ZeroLevelValue { index });
        }
        if index > 0 && level_values[index - 1] >= r {
            return Err(BoundError::NotAscending { index });
        }
    }
    Ok(())
}

/// Lexicographic walk over every tuple `(u_0, .., u_{lambda-1})` with
/// `sum r_i * u_i <= t`.
#[derive(Debug, Clone)]
pub struct UserCounts {
    t: u64,
    levels: Vec<u64>,
    counts: Vec<usize>,
    load: u64,
    done: bool,
}

impl UserCounts {
    pub fn new(t: usize, level_values: &[usize]) -> Result<Self, BoundError> {
        validate_levels(level_values)?;
        Ok(UserCounts {
            t: t as u64,
            levels: level_values.iter().map(|&r| r as u64).collect(),
            counts: vec![0; level_values.len()],
            load: 0,
            done: false,
        })
    }

    // Odometer step: bump the last coordinate that still fits, zeroing the
    // ones after it.
    fn advance(&mut self) {
        for i in (0..self.counts.len()).rev() {
            if self.load + self.levels[i] <= self.t {
                self.counts[i] += 1;
                self.load += self.levels[i];
                return;
            }
            self.load -= self.levels[i] * self.counts[i] as u64;
            self.counts[i] = 0;
        }
        self.done = true;
    }
}

impl Iterator for UserCounts {
    type Item = UserCountTuple;

    fn next(&mut self) -> Option<UserCountTuple> {
        if self.done {
            return None;
        }
        let item = UserCountTuple {
            counts: self.counts.clone(),
            load: self.load,
            optimal: self.load == self.t,
        };
        self.advance();
        Some(item)
    }
}

/// Every feasible user-count tuple in lexicographic order, refusing to
/// collect more than `cap` of them.
pub fn enumerate_user_counts(
    t: usize,
    level_values: &[usize],
    cap: usize,
) -> Result<Vec<UserCountTuple>, BoundError> {
    let mut out = Vec::new();
    for tuple in UserCounts::new(t, level_values)? {
        if out.len() == cap {
            return Err(BoundError::CapExceeded { cap });
        }
        out.push(tuple);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::LevelSpec;
    use proptest::prelude::*;

    fn config(t: usize, levels: &[(usize, usize)]) -> SystemConfig {
        SystemConfig::new(t, levels.iter().map(|&(r, u)| LevelSpec::new(r, u)).collect(), 0).unwrap()
    }

    // Independent nested-loop oracle over up to three levels.
    fn brute_force(t: usize, r: &[usize]) -> Vec<(Vec<usize>, bool)> {
        let mut out = Vec::new();
        let bound = |i: usize| if i < r.len() { t / r[i] } else { 0 };
        for a in 0..=bound(0) {
            for b in 0..=bound(1) {
                for c in 0..=bound(2) {
                    let counts = [a, b, c];
                    let load: usize = r.iter().zip(counts).map(|(r, u)| r * u).sum();
                    if load <= t {
                        out.push((counts[..r.len()].to_vec(), load == t));
                    }
                }
            }
        }
        out
    }

    #[test]
    fn example_configs() {
        let r = check_bound(&config(24, &[(2, 3), (3, 4), (6, 1)]));
        assert_eq!((r.load, r.slack, r.optimal), (24, 0, true));
        let r = check_bound(&config(8, &[(1, 1), (3, 1), (4, 1)]));
        assert_eq!((r.load, r.slack, r.optimal), (8, 0, true));
        let r = check_bound(&config(8, &[(4, 3)]));
        assert_eq!((r.load, r.slack, r.feasible, r.optimal), (12, -4, false, false));
    }

    #[test]
    fn single_level_capacity() {
        assert_eq!(max_users_single_level(24, 6), Ok(4));
        assert_eq!(max_users_single_level(8, 4), Ok(2));
        assert_eq!(max_users_single_level(8, 3), Ok(2));
        assert_eq!(max_users_single_level(8, 9), Ok(0));
        assert!(max_users_single_level(8, 0).is_err());
    }

    #[test]
    fn small_enumerations() {
        let all = enumerate_user_counts(6, &[1, 2, 6], DEFAULT_ENUMERATION_CAP).unwrap();
        let top = all.iter().find(|u| u.counts == [0, 0, 1]).unwrap();
        assert!(top.optimal);
        let all = enumerate_user_counts(24, &[3, 5, 15], DEFAULT_ENUMERATION_CAP).unwrap();
        assert!(all.iter().any(|u| u.counts == [3, 3, 0] && u.optimal));
    }

    #[test]
    fn matches_oracle_t24() {
        let got: Vec<_> = enumerate_user_counts(24, &[1, 2, 6], DEFAULT_ENUMERATION_CAP)
            .unwrap()
            .into_iter()
            .map(|u| (u.counts, u.optimal))
            .collect();
        let want = brute_force(24, &[1, 2, 6]);
        assert_eq!(got.len(), 335);
        assert_eq!(got, want);
        // u0 + 2 u1 + 6 u2 = 24 has 13 + 10 + 7 + 4 + 1 solutions.
        assert_eq!(got.iter().filter(|(_, o)| *o).count(), 35);
    }

    #[test]
    fn cap_is_enforced() {
        assert_eq!(
            enumerate_user_counts(24, &[1, 2, 6], 10),
            Err(BoundError::CapExceeded { cap: 10 })
        );
    }

    #[test]
    fn rejects_bad_levels() {
        assert_eq!(enumerate_user_counts(4, &[], 10), Err(BoundError::NoLevels));
        assert_eq!(enumerate_user_counts(4, &[2, 2], 10), Err(BoundError::NotAscending { index: 1 }));
        assert_eq!(enumerate_user_counts(4, &[0, 2], 10), Err(BoundError::ZeroLevelValue { index: 0 }));
    }

    fn ascending_levels() -> impl Strategy<Value = Vec<usize>> {
        prop::collection::btree_set(1usize..=12, 1..=3).prop_map(|s| s.into_iter().collect())
    }

    proptest! {
        #[test]
        fn agrees_with_oracle(t in 0usize..=30, r in ascending_levels()) {
            let got: Vec<_> = enumerate_user_counts(t, &r, DEFAULT_ENUMERATION_CAP)
                .unwrap()
                .into_iter()
                .map(|u| (u.counts, u.optimal))
                .collect();
            prop_assert_eq!(got, brute_force(t, &r));
        }

        #[test]
        fn tuples_are_feasible_and_monotone(t in 1usize..=30, r in ascending_levels()) {
            for tuple in enumerate_user_counts(t, &r, DEFAULT_ENUMERATION_CAP).unwrap() {
                let levels = r.iter().zip(&tuple.counts).map(|(&r, &u)| LevelSpec::new(r, u)).collect();
                let report = check_bound(&SystemConfig::new(t, levels, 0).unwrap());
                prop_assert!(report.slack >= 0);
                prop_assert_eq!(report.optimal, tuple.optimal);
                prop_assert_eq!(report.load, tuple.load);
                if tuple.optimal {
                    // Any componentwise increase overshoots.
                    for i in 0..r.len() {
                        let mut bigger = tuple.counts.clone();
                        bigger[i] += 1;
                        let load: usize = r.iter().zip(&bigger).map(|(r, u)| r * u).sum();
                        prop_assert!(load > t);
                    }
                }
            }
        }
    }
}
