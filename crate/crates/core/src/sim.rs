//! Monte-Carlo symbol error ratio of one TDMA user under slot interference.
//!
//! Binary antipodal symbols with `Es = 1` are sent in every slot the user
//! holds; the channel adds white Gaussian noise of variance `N0 / 2` and,
//! in interfered slots, independent Gaussian interference of power
//! `10^(P_dB / 10)`. Detection is a hard sign decision.

use alloc::string::String;
use alloc::vec::Vec;

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{FrameAssignment, HcsSet, SlotId};
use crate::rng::{substream, Purpose};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("the scheme occupies no slots")]
    EmptySlots,
    #[error("no SNR points given")]
    NoSnr,
    #[error("frame count must be at least 1")]
    NoFrames,
    #[error("symbols per slot must be at least 1")]
    NoSymbols,
    #[error("slot {slot} is outside a frame of {t} slots")]
    SlotOutOfRange { slot: usize, t: usize },
    #[error("no user at level {level}, index {user} in the set")]
    UnknownUser { level: usize, user: usize },
    #[error("no level with level value {r} in the set")]
    NoSuchLevel { r: usize },
    #[error("scenarios differ in {field}")]
    Mismatch { field: &'static str },
}

/// Which slots the simulated user transmits in, frame by frame.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Scheme {
    /// Hop along a control sequence, reused cyclically.
    Hopping { frames: Vec<FrameAssignment> },
    /// Same slots every frame.
    Fixed { slots: FrameAssignment },
}

impl Scheme {
    pub fn fixed<I: IntoIterator<Item = usize>>(slots: I) -> Self {
        Scheme::Fixed {
            slots: FrameAssignment::from_indices(slots),
        }
    }

    /// Sequence of user `user` at level `level`.
    pub fn from_set(set: &HcsSet, level: usize, user: usize) -> Result<Self, SimError> {
        let seq = set.sequence(level, user).ok_or(SimError::UnknownUser { level, user })?;
        Ok(Scheme::Hopping {
            frames: seq.frames.clone(),
        })
    }

    /// First user of the level whose level value is `r`.
    pub fn first_with_level_value(set: &HcsSet, r: usize) -> Result<Self, SimError> {
        let level = set
            .config()
            .levels()
            .iter()
            .position(|l| l.r == r && l.u > 0)
            .ok_or(SimError::NoSuchLevel { r })?;
        Scheme::from_set(set, level, 0)
    }

    pub fn label(&self) -> &'static str {
        match self {
            Scheme::Hopping { .. } => "hcs",
            Scheme::Fixed { .. } => "fixed",
        }
    }

    pub fn slots(&self, frame: u64) -> &FrameAssignment {
        match self {
            Scheme::Hopping { frames } => &frames[(frame % frames.len() as u64) as usize],
            Scheme::Fixed { slots } => slots,
        }
    }

    /// Slots per frame.
    pub fn arity(&self) -> usize {
        match self {
            Scheme::Hopping { frames } => frames.first().map_or(0, FrameAssignment::len),
            Scheme::Fixed { slots } => slots.len(),
        }
    }

    /// Distinct frame patterns before the scheme repeats.
    pub fn period(&self) -> usize {
        match self {
            Scheme::Hopping { frames } => frames.len(),
            Scheme::Fixed { .. } => 1,
        }
    }

    fn validate(&self, t: usize) -> Result<(), SimError> {
        if self.arity() == 0 {
            return Err(SimError::EmptySlots);
        }
        let all: &mut dyn Iterator<Item = &FrameAssignment> = match self {
            Scheme::Hopping { frames } => &mut frames.iter(),
            Scheme::Fixed { slots } => &mut core::iter::once(slots),
        };
        for frame in all {
            if let Some(slot) = frame.indices().find(|&s| s >= t) {
                return Err(SimError::SlotOutOfRange { slot, t });
            }
        }
        Ok(())
    }
}

pub const DEFAULT_SYMBOLS_PER_SLOT: u32 = 64;
pub const DEFAULT_FRAMES: u64 = 100_000;

/// The default SNR sweep, 0 to 14 dB in 1 dB steps.
pub fn default_snr_sweep() -> Vec<f64> {
    (0..=14).map(f64::from).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    pub t: usize,
    pub scheme: Scheme,
    pub snr_db: Vec<f64>,
    pub interference_slots: Vec<SlotId>,
    /// Interference-to-signal power ratio.
    pub interference_power_db: f64,
    pub symbols_per_slot: u32,
    pub frames: u64,
    pub seed: u64,
    pub scenario: String,
}

impl SimConfig {
    pub fn validate(&self) -> Result<(), SimError> {
        self.scheme.validate(self.t)?;
        if self.snr_db.is_empty() {
            return Err(SimError::NoSnr);
        }
        if self.frames == 0 {
            return Err(SimError::NoFrames);
        }
        if self.symbols_per_slot == 0 {
            return Err(SimError::NoSymbols);
        }
        if let Some(slot) = self.interference_slots.iter().find(|s| s.0 >= self.t) {
            return Err(SimError::SlotOutOfRange { slot: slot.0, t: self.t });
        }
        Ok(())
    }

    fn interfered_mask(&self) -> Vec<bool> {
        let mut mask = alloc::vec![false; self.t];
        for s in &self.interference_slots {
            mask[s.0] = true;
        }
        mask
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SerPoint {
    pub snr_db: f64,
    pub ser: f64,
    pub symbols_total: u64,
    pub symbols_error: u64,
}

impl SerPoint {
    fn new(snr_db: f64, symbols_total: u64, symbols_error: u64) -> Self {
        SerPoint {
            snr_db,
            ser: symbols_error as f64 / symbols_total as f64,
            symbols_total,
            symbols_error,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SerCurve {
    pub scheme: String,
    pub scenario: String,
    pub points: Vec<SerPoint>,
}

pub fn db_to_linear(db: f64) -> f64 {
    libm::pow(10.0, db / 10.0)
}

/// Runs SNR point `index` of `config` on its own random stream.
///
/// Points are independent, so callers may evaluate them in any order or in
/// parallel and assemble the curve afterwards.
pub fn simulate_point(config: &SimConfig, index: usize) -> Result<SerPoint, SimError> {
    config.validate()?;
    let snr_db = *config.snr_db.get(index).ok_or(SimError::NoSnr)?;
    let noise_var = 1.0 / (2.0 * db_to_linear(snr_db));
    let clean_sigma = libm::sqrt(noise_var);
    let jammed_sigma = libm::sqrt(noise_var + db_to_linear(config.interference_power_db));
    let mask = config.interfered_mask();
    let symbols = config.symbols_per_slot;

    let mut rng = substream(config.seed, Purpose::ChannelNoise, index as u32);
    let mut errors = 0u64;
    let mut total = 0u64;
    for frame in 0..config.frames {
        for slot in config.scheme.slots(frame).indices() {
            // Noise and interference are independent zero-mean Gaussians, so
            // their sum is drawn as one Gaussian of the combined variance.
            let sigma = if mask[slot] { jammed_sigma } else { clean_sigma };
            let mut remaining = symbols;
            while remaining > 0 {
                let batch = remaining.min(64);
                let bits: u64 = rng.random();
                for k in 0..batch {
                    let sent = if bits >> k & 1 == 1 { 1.0 } else { -1.0 };
                    let noise: f64 = rng.sample(StandardNormal);
                    let received = sent + sigma * noise;
                    if (received >= 0.0) != (sent > 0.0) {
                        errors += 1;
                    }
                }
                remaining -= batch;
            }
            total += symbols as u64;
        }
    }
    Ok(SerPoint::new(snr_db, total, errors))
}

/// Full SER curve, points evaluated in order.
pub fn simulate_ser(config: &SimConfig) -> Result<SerCurve, SimError> {
    config.validate()?;
    let points = (0..config.snr_db.len())
        .map(|i| simulate_point(config, i))
        .collect::<Result<_, _>>()?;
    Ok(SerCurve {
        scheme: config.scheme.label().into(),
        scenario: config.scenario.clone(),
        points,
    })
}

/// Fraction of transmitted symbols that fall in interfered slots over
/// frames `0..frames`.
pub fn interference_hit_fraction(scheme: &Scheme, interference_slots: &[SlotId], frames: u64) -> f64 {
    let mut hits = 0u64;
    let mut total = 0u64;
    let period = scheme.period() as u64;
    // Whole periods contribute identically; count one and scale.
    let (full, rest) = (frames / period, frames % period);
    let mut tally = |range: core::ops::Range<u64>, weight: u64| {
        for frame in range {
            let slots = scheme.slots(frame);
            hits += weight * slots.slots.iter().filter(|s| interference_slots.contains(s)).count() as u64;
            total += weight * slots.len() as u64;
        }
    };
    if full > 0 {
        tally(0..period, full);
    }
    tally(0..rest, 1);
    if total == 0 {
        0.0
    } else {
        hits as f64 / total as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub snr_db: f64,
    pub baseline_ser: f64,
    pub candidate_ser: f64,
    /// `baseline_ser - candidate_ser`.
    pub delta: f64,
    /// Pooled binomial standard deviation of the difference.
    pub sigma: f64,
    /// Candidate worse than baseline by more than three sigma.
    pub flagged: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub baseline: SerCurve,
    pub candidate: SerCurve,
    pub rows: Vec<ComparisonRow>,
}

impl Comparison {
    /// Largest improvement of the candidate over the baseline.
    pub fn max_delta(&self) -> Option<&ComparisonRow> {
        self.rows
            .iter()
            .max_by(|a, b| a.delta.partial_cmp(&b.delta).unwrap_or(core::cmp::Ordering::Equal))
    }

    pub fn any_flagged(&self) -> bool {
        self.rows.iter().any(|r| r.flagged)
    }
}

/// Checks two configurations describe the same scenario.
pub fn check_comparable(a: &SimConfig, b: &SimConfig) -> Result<(), SimError> {
    let fields: [(&'static str, bool); 5] = [
        ("t", a.t == b.t),
        ("snr_db", a.snr_db == b.snr_db),
        ("interference_slots", a.interference_slots == b.interference_slots),
        ("interference_power_db", a.interference_power_db == b.interference_power_db),
        ("symbols", a.symbols_per_slot == b.symbols_per_slot && a.frames == b.frames),
    ];
    match fields.iter().find(|(_, same)| !same) {
        Some((field, _)) => Err(SimError::Mismatch { field }),
        None => Ok(()),
    }
}

/// Pairs two curves point by point.
pub fn compare_curves(baseline: SerCurve, candidate: SerCurve) -> Result<Comparison, SimError> {
    if baseline.points.len() != candidate.points.len()
        || baseline.points.iter().zip(&candidate.points).any(|(a, b)| a.snr_db != b.snr_db)
    {
        return Err(SimError::Mismatch { field: "snr_db" });
    }
    let rows = baseline
        .points
        .iter()
        .zip(&candidate.points)
        .map(|(a, b)| {
            let (na, nb) = (a.symbols_total as f64, b.symbols_total as f64);
            let pooled = (a.symbols_error + b.symbols_error) as f64 / (na + nb);
            let sigma = libm::sqrt(pooled * (1.0 - pooled) * (1.0 / na + 1.0 / nb));
            ComparisonRow {
                snr_db: a.snr_db,
                baseline_ser: a.ser,
                candidate_ser: b.ser,
                delta: a.ser - b.ser,
                sigma,
                flagged: b.ser - a.ser > 3.0 * sigma,
            }
        })
        .collect();
    Ok(Comparison {
        baseline,
        candidate,
        rows,
    })
}

/// Simulates both configurations and reports per-SNR deltas.
pub fn compare_schemes(baseline: &SimConfig, candidate: &SimConfig) -> Result<Comparison, SimError> {
    check_comparable(baseline, candidate)?;
    compare_curves(simulate_ser(baseline)?, simulate_ser(candidate)?)
}

#[cfg(test)]
mod tests {
    extern crate std;

    use super::*;
    use crate::construction_one::construct1;
    use crate::construction_two::{construct2, MultiplicativeOptions};
    use crate::model::{LevelSpec, SystemConfig};
    use alloc::vec;

    // Gaussian tail by composite Simpson quadrature of the density.
    fn q_function(x: f64) -> f64 {
        let (a, b, n) = (x, x + 12.0, 20_000);
        let h = (b - a) / n as f64;
        let pdf = |z: f64| (-z * z / 2.0).exp() / (2.0 * core::f64::consts::PI).sqrt();
        let mut s = pdf(a) + pdf(b);
        for k in 1..n {
            s += pdf(a + k as f64 * h) * if k % 2 == 1 { 4.0 } else { 2.0 };
        }
        s * h / 3.0
    }

    fn expected_ser(snr_db: f64, hit: f64, power_db: f64) -> f64 {
        let n0_half = 1.0 / (2.0 * db_to_linear(snr_db));
        let clean = q_function((1.0 / n0_half).sqrt());
        let jammed = q_function((1.0 / (n0_half + db_to_linear(power_db))).sqrt());
        (1.0 - hit) * clean + hit * jammed
    }

    fn sim(scheme: Scheme, interference: &[usize], power_db: f64, snr: Vec<f64>, frames: u64) -> SimConfig {
        SimConfig {
            t: 8,
            scheme,
            snr_db: snr,
            interference_slots: interference.iter().copied().map(SlotId).collect(),
            interference_power_db: power_db,
            symbols_per_slot: 64,
            frames,
            seed: 99,
            scenario: "test".into(),
        }
    }

    fn hcs_r4() -> HcsSet {
        let cfg = SystemConfig::new(8, vec![LevelSpec::new(4, 2)], 0).unwrap();
        construct2(&cfg, &MultiplicativeOptions::new(2).generator(3).compat(4)).unwrap()
    }

    #[test]
    fn q_function_oracle_sanity() {
        assert!((q_function(0.0) - 0.5).abs() < 1e-9);
        assert!((q_function(1.0) - 0.158_655_253_931_457).abs() < 1e-9);
    }

    #[test]
    fn clean_channel_at_12_db() {
        let cfg = sim(Scheme::fixed([0, 2, 4, 5]), &[], 0.0, vec![12.0], 2_000);
        let point = simulate_ser(&cfg).unwrap().points[0];
        assert_eq!(point.symbols_total, 2_000 * 4 * 64);
        assert!(point.ser < 1e-4);
        assert!(q_function((2.0 * db_to_linear(12.0)).sqrt()) < 1e-4);
    }

    #[test]
    fn matches_closed_form() {
        let snr = vec![0.0, 3.0, 6.0];
        for (interference, hit) in [(vec![], 0.0), (vec![2], 0.25), (vec![1, 4, 5], 0.5)] {
            let cfg = sim(Scheme::fixed([0, 2, 4, 5]), &interference, 10.0, snr.clone(), 4_000);
            for p in simulate_ser(&cfg).unwrap().points {
                let want = expected_ser(p.snr_db, hit, 10.0);
                let sigma = (want * (1.0 - want) / p.symbols_total as f64).sqrt();
                assert!((p.ser - want).abs() < 4.0 * sigma, "{p:?} vs {want}");
            }
        }
    }

    #[test]
    fn fixed_hit_fractions() {
        let fixed = Scheme::fixed([0, 2, 4, 5]);
        assert_eq!(interference_hit_fraction(&fixed, &[SlotId(2)], 10), 0.25);
        assert_eq!(interference_hit_fraction(&fixed, &[SlotId(1), SlotId(4), SlotId(5)], 10), 0.5);
        assert_eq!(interference_hit_fraction(&fixed, &[], 10), 0.0);
    }

    #[test]
    fn hopping_hit_fraction_is_uniform_for_every_user() {
        let set = hcs_r4();
        for user in 0..2 {
            let scheme = Scheme::from_set(&set, 0, user).unwrap();
            assert_eq!(interference_hit_fraction(&scheme, &[SlotId(2)], 128 * 50), 0.125);
            assert_eq!(interference_hit_fraction(&scheme, &[SlotId(1), SlotId(4), SlotId(5)], 128), 0.375);
        }
    }

    #[test]
    fn permutation_sets_hit_uniformly_on_average() {
        // Per-user occupancy of the permutation construction is random; its
        // mean over seeds is |I|/t. Each frame is one Bernoulli(1/2) draw.
        let seeds = 200;
        let mut sum = 0.0;
        for seed in 0..seeds {
            let set = construct1(&SystemConfig::new(8, vec![LevelSpec::new(4, 2)], seed).unwrap()).unwrap();
            let scheme = Scheme::from_set(&set, 0, 0).unwrap();
            sum += interference_hit_fraction(&scheme, &[SlotId(2)], 32);
        }
        let mean = sum / seeds as f64;
        let sigma = (0.25 / (seeds as f64 * 32.0)).sqrt() / 4.0;
        assert!((mean - 0.125).abs() < 3.0 * sigma, "mean {mean}");
    }

    #[test]
    fn deterministic_and_seed_sensitive() {
        let cfg = sim(Scheme::fixed([0, 2, 4, 5]), &[2], 10.0, vec![0.0, 4.0], 500);
        assert_eq!(simulate_ser(&cfg).unwrap(), simulate_ser(&cfg).unwrap());
        let mut other = cfg.clone();
        other.seed += 1;
        assert_ne!(simulate_ser(&cfg).unwrap(), simulate_ser(&other).unwrap());
        // A point does not depend on which other points are swept.
        let alone = sim(Scheme::fixed([0, 2, 4, 5]), &[2], 10.0, vec![0.0], 500);
        assert_eq!(simulate_point(&alone, 0).unwrap(), simulate_point(&cfg, 0).unwrap());
    }

    #[test]
    fn monotone_in_snr() {
        let set = hcs_r4();
        let snr: Vec<f64> = (0..=10).map(f64::from).collect();
        for scheme in [Scheme::fixed([0, 2, 4, 5]), Scheme::from_set(&set, 0, 1).unwrap()] {
            let curve = simulate_ser(&sim(scheme, &[2], 10.0, snr.clone(), 1_000)).unwrap();
            for w in curve.points.windows(2) {
                let sigma = (w[0].ser * (1.0 - w[0].ser) / w[0].symbols_total as f64).sqrt();
                assert!(w[1].ser <= w[0].ser + 3.0 * sigma, "{w:?}");
            }
        }
    }

    #[test]
    fn schemes_converge_without_interference_power() {
        let set = hcs_r4();
        let snr = vec![0.0, 2.0, 4.0];
        let fixed = sim(Scheme::fixed([0, 2, 4, 5]), &[2], -60.0, snr.clone(), 2_000);
        let hcs = sim(Scheme::from_set(&set, 0, 0).unwrap(), &[2], -60.0, snr, 2_000);
        let cmp = compare_schemes(&fixed, &hcs).unwrap();
        for row in &cmp.rows {
            assert!(row.delta.abs() < 3.0 * row.sigma, "{row:?}");
        }
    }

    #[test]
    fn identical_configs_give_zero_delta() {
        let cfg = sim(Scheme::fixed([0, 2, 4, 5]), &[2], 10.0, vec![0.0, 5.0], 300);
        let cmp = compare_schemes(&cfg, &cfg).unwrap();
        assert!(cmp.rows.iter().all(|r| r.delta == 0.0 && !r.flagged));
    }

    #[test]
    fn hopping_beats_fixed_under_single_interference() {
        let set = hcs_r4();
        let snr = vec![5.0, 10.0];
        let fixed = sim(Scheme::fixed([0, 2, 4, 5]), &[2], 10.0, snr.clone(), 3_000);
        let hcs = sim(Scheme::from_set(&set, 0, 0).unwrap(), &[2], 10.0, snr, 3_000);
        let cmp = compare_schemes(&fixed, &hcs).unwrap();
        assert!(!cmp.any_flagged());
        for row in &cmp.rows {
            let want = expected_ser(row.snr_db, 0.25, 10.0) - expected_ser(row.snr_db, 0.125, 10.0);
            assert!((row.delta - want).abs() < 4.0 * row.sigma, "{row:?} vs {want}");
        }
    }

    #[test]
    fn config_errors() {
        let base = sim(Scheme::fixed([0, 2]), &[2], 10.0, vec![0.0], 10);
        let mut c = base.clone();
        c.scheme = Scheme::fixed([]);
        assert_eq!(simulate_ser(&c), Err(SimError::EmptySlots));
        let mut c = base.clone();
        c.snr_db.clear();
        assert_eq!(simulate_ser(&c), Err(SimError::NoSnr));
        let mut c = base.clone();
        c.frames = 0;
        assert_eq!(simulate_ser(&c), Err(SimError::NoFrames));
        let mut c = base.clone();
        c.interference_slots = vec![SlotId(8)];
        assert_eq!(simulate_ser(&c), Err(SimError::SlotOutOfRange { slot: 8, t: 8 }));
        let mut c = base.clone();
        c.scheme = Scheme::fixed([9]);
        assert_eq!(simulate_ser(&c), Err(SimError::SlotOutOfRange { slot: 9, t: 8 }));
        let mut c = base.clone();
        c.interference_power_db = 15.0;
        assert_eq!(compare_schemes(&base, &c), Err(SimError::Mismatch { field: "interference_power_db" }));
        assert_eq!(
            Scheme::first_with_level_value(&hcs_r4(), 3),
            Err(SimError::NoSuchLevel { r: 3 })
        );
        assert_eq!(Scheme::from_set(&hcs_r4(), 0, 2), Err(SimError::UnknownUser { level: 0, user: 2 }));
    }
}
