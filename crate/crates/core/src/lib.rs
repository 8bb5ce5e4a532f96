//! Hierarchical control sequences (HCS) for collision-free, multi-level
//! TDMA slot access.
//!
//! A user at access level `i` owns `r_i` slots in every frame; the slots hop
//! from frame to frame along its control sequence, and no two sequences of a
//! set ever claim the same slot in the same frame. This crate holds the pure
//! algorithms: the capacity bound, two set constructions, an independent
//! verifier, the sequence assignment state machine and a Monte-Carlo link
//! simulator. It is `no_std` and needs only `alloc`.

#![no_std]

extern crate alloc;

pub mod bound;
pub mod construction_one;
pub mod construction_two;
pub mod model;
pub mod modular;
pub mod permutation;
pub mod rng;
pub mod sac;
pub mod sim;
pub mod verify;

pub use bound::{check_bound, enumerate_user_counts, max_users_single_level, BoundReport, UserCountTuple};
pub use construction_one::{construct1, construct1_with_drivers, derive_drivers, DriverSequences, PermutationParams};
pub use construction_two::{construct2, MultiplicativeOptions, MultiplicativeParams, OrderSelection};
pub use model::{
    flatten, hamming_correlation, unflatten, FrameAssignment, HcsSequence, HcsSet, LevelSpec, OrderMode, Provenance,
    SlotId, SystemConfig,
};
pub use permutation::unrank_permutation;
pub use sac::{SacEvent, SacEventKind, SacOptions, SacState, UserId};
pub use sim::{compare_schemes, interference_hit_fraction, simulate_ser, Scheme, SerCurve, SerPoint, SimConfig};
pub use verify::{occupancy_histogram, verify, VerificationReport};
