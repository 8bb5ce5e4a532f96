//! Multiplicative iteration construction.
//!
//! Starts from the cyclic initial set `c0_k(b) = k + b (mod t)` and runs `n`
//! rounds of scaling by powers of a unit `g`. Frame `b_n` is read as the
//! mixed-radix number `(a_n, .., a_1, b_0)` with digits `a_k < d` and
//! `b_0 < t`; row `k` then holds `g^((a_1 + .. + a_n) mod d) * (k + a_1 + b_0)
//! mod t`. Users take consecutive rows, one per slot position.

use alloc::vec::Vec;

use thiserror::Error;

use crate::model::{FrameAssignment, HcsSequence, HcsSet, ModelError, OrderMode, Provenance, SlotId, SystemConfig};
use crate::modular::{find_generator, multiplicative_order, pow_mod, ModularError};

/// Longest sequence the construction will materialise.
pub const MAX_LENGTH: u64 = 1 << 22;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MultiplicativeConstructionError {
    #[error("frame size {t} is too small, need at least 2 slots")]
    FrameTooSmall { t: usize },
    #[error("load {load} exceeds the {t} slots of a frame")]
    OverCapacity { load: u64, t: usize },
    #[error("at least one iteration round is required")]
    NoRounds,
    #[error("exponent period d must be at least 1")]
    ZeroPeriod,
    #[error("sequence length d^n * t = {d}^{n} * {t} exceeds the limit of {max} frames", max = MAX_LENGTH)]
    TooLong { d: u64, n: u32, t: usize },
    #[error("frame index {value} out of range (length {length})")]
    IndexOutOfRange { value: u64, length: u64 },
    #[error(transparent)]
    Modular(#[from] ModularError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

type Result<T> = core::result::Result<T, MultiplicativeConstructionError>;

/// How the exponent period `d` is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderSelection {
    /// `d` is the multiplicative order of `g`.
    True,
    /// `d` is given explicitly; exponents are reduced modulo it.
    Compat { d: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MultiplicativeOptions {
    pub rounds: u32,
    /// Unit to iterate with; the smallest unit of maximal order when absent.
    pub generator: Option<u64>,
    pub order: OrderSelection,
}

impl MultiplicativeOptions {
    pub fn new(rounds: u32) -> Self {
        MultiplicativeOptions {
            rounds,
            generator: None,
            order: OrderSelection::True,
        }
    }

    pub fn generator(mut self, g: u64) -> Self {
        self.generator = Some(g);
        self
    }

    pub fn compat(mut self, d: u64) -> Self {
        self.order = OrderSelection::Compat { d };
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicativeParams {
    pub g: u64,
    pub d: u64,
    pub n: u32,
    pub mode: OrderMode,
    /// First row of each level, `sum_{z<i} u_z r_z`.
    pub row_offset: Vec<usize>,
}

impl MultiplicativeParams {
    pub fn derive(config: &SystemConfig, options: &MultiplicativeOptions) -> Result<Self> {
        let t = config.t();
        if t < 2 {
            return Err(MultiplicativeConstructionError::FrameTooSmall { t });
        }
        let load = config.load();
        if load > t as u64 {
            return Err(MultiplicativeConstructionError::OverCapacity { load, t });
        }
        if options.rounds == 0 {
            return Err(MultiplicativeConstructionError::NoRounds);
        }
        let (g, true_order) = match options.generator {
            Some(g) => (g, multiplicative_order(g, t as u64)?),
            None => find_generator(t as u64)?,
        };
        let (d, mode) = match options.order {
            OrderSelection::True => (true_order, OrderMode::TrueOrder),
            OrderSelection::Compat { d: 0 } => return Err(MultiplicativeConstructionError::ZeroPeriod),
            OrderSelection::Compat { d } => (d, OrderMode::Compat),
        };
        let n = options.rounds;
        let too_long = MultiplicativeConstructionError::TooLong { d, n, t };
        let length = d
            .checked_pow(n)
            .and_then(|p| p.checked_mul(t as u64))
            .ok_or(too_long.clone())?;
        if length > MAX_LENGTH {
            return Err(too_long);
        }
        let row_offset = (0..config.lambda())
            .map(|i| config.prefix_load(i) as usize)
            .collect();
        Ok(MultiplicativeParams {
            g: g % t as u64,
            d,
            n,
            mode,
            row_offset,
        })
    }

    /// `d^n * t`.
    pub fn length(&self, t: usize) -> u64 {
        self.d.pow(self.n) * t as u64
    }
}

/// Frame index `b_n` split into round digits `a_1..a_n` and base position `b_0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedRadixIndex {
    /// `digits[k]` is `a_{k+1}`.
    pub digits: Vec<u64>,
    pub base: u64,
}

impl MixedRadixIndex {
    pub fn decompose(value: u64, d: u64, n: u32, t: u64) -> Result<Self> {
        let length = d.pow(n) * t;
        if value >= length {
            return Err(MultiplicativeConstructionError::IndexOutOfRange { value, length });
        }
        let base = value % t;
        let mut rest = value / t;
        let digits = (0..n)
            .map(|_| {
                let a = rest % d;
                rest /= d;
                a
            })
            .collect();
        Ok(MixedRadixIndex { digits, base })
    }

    /// `sum_k a_k d^(k-1) t + b_0`.
    pub fn value(&self, d: u64, t: u64) -> u64 {
        self.digits.iter().rev().fold(0, |acc, &a| acc * d + a) * t + self.base
    }

    /// `a_1`, the digit that also shifts the row.
    pub fn first_digit(&self) -> u64 {
        self.digits.first().copied().unwrap_or(0)
    }

    pub fn exponent(&self, d: u64) -> u64 {
        self.digits.iter().fold(0, |acc, &a| (acc + a) % d)
    }
}

/// Rows of the cyclic initial set, `c0_k(b) = (k + b) mod t`.
pub fn initial_set(t: usize) -> Vec<Vec<usize>> {
    (0..t).map(|k| (0..t).map(|b| (k + b) % t).collect()).collect()
}

/// Value of row `row` of the iterated set at frame `index`.
pub fn evaluate_c(row: usize, index: &MixedRadixIndex, params: &MultiplicativeParams, t: usize) -> SlotId {
    let t = t as u64;
    let scale = pow_mod(params.g, index.exponent(params.d), t);
    let shifted = (row as u64 + index.first_digit() + index.base) % t;
    SlotId((scale as u128 * shifted as u128 % t as u128) as usize)
}

/// Builds the `(d^n t, M, t; M, lambda)` set.
pub fn construct2(config: &SystemConfig, options: &MultiplicativeOptions) -> Result<HcsSet> {
    let params = MultiplicativeParams::derive(config, options)?;
    let t = config.t();
    let length = params.length(t);

    // One pass over frames, evaluating each row that some user draws from.
    let indices: Vec<MixedRadixIndex> = (0..length)
        .map(|b| MixedRadixIndex::decompose(b, params.d, params.n, t as u64))
        .collect::<Result<_>>()?;

    let mut sequences = Vec::with_capacity(config.user_count());
    for (level, spec) in config.levels().iter().enumerate() {
        for user in 0..spec.u {
            let first_row = params.row_offset[level] + user * spec.r;
            let frames = indices
                .iter()
                .map(|index| {
                    FrameAssignment::new(
                        (0..spec.r)
                            .map(|theta| evaluate_c(first_row + theta, index, &params, t))
                            .collect(),
                    )
                })
                .collect();
            sequences.push(HcsSequence { level, user, frames });
        }
    }
    let provenance = Provenance::Multiplicative {
        g: params.g,
        d: params.d,
        n: params.n,
        mode: params.mode,
    };
    Ok(HcsSet::new(config.clone(), length as usize, sequences, provenance)?)
}
