//! Command-line grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hcs_core::bound::DEFAULT_ENUMERATION_CAP;
use hcs_core::model::LevelSpec;
use hcs_core::sim::{DEFAULT_FRAMES, DEFAULT_SYMBOLS_PER_SLOT};

#[derive(Debug, Clone, Parser)]
#[command(name = "hcs", version, about = "Generate, verify and exercise hierarchical control sequence sets")]
pub struct Cli {
    /// Base directory for relative paths [default: $HCS_OUTPUT_DIR, else the current directory]
    #[arg(long, global = true, value_name = "DIR")]
    pub dir: Option<PathBuf>,
    /// Print human-readable summaries instead of JSON
    #[arg(long, global = true, conflicts_with = "json")]
    pub human: bool,
    /// Print JSON summaries (the default)
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Build a set with the permutation-table construction
    Gen1(Gen1Args),
    /// Build a set with the multiplicative iteration construction
    Gen2(Gen2Args),
    /// Check a configuration against the capacity bound
    Bound(BoundArgs),
    /// List every feasible user-count tuple as CSV
    Enumerate(EnumerateArgs),
    /// Run every verification gate on a set file; exit 1 if any fails
    Verify(VerifyArgs),
    /// Replay a join/leave script through the sequence assignment center
    SacTrace(SacTraceArgs),
    /// Monte-Carlo SER sweep of one user under slot interference
    Simulate(SimulateArgs),
    /// Pair two SER curves and report per-SNR deltas
    Compare(CompareArgs),
    /// Run a JSON list of subcommands in order, stopping at the first failure
    Pipeline(PipelineArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Gen1(_) => "gen1",
            Command::Gen2(_) => "gen2",
            Command::Bound(_) => "bound",
            Command::Enumerate(_) => "enumerate",
            Command::Verify(_) => "verify",
            Command::SacTrace(_) => "sac-trace",
            Command::Simulate(_) => "simulate",
            Command::Compare(_) => "compare",
            Command::Pipeline(_) => "pipeline",
        }
    }
}

/// Parses `r:u,r:u,...`.
pub fn parse_levels(s: &str) -> Result<Vec<LevelSpec>, String> {
    s.split(',')
        .map(|item| {
            let (r, u) = item
                .trim()
                .split_once(':')
                .ok_or_else(|| format!("level `{item}` is not of the form r:u"))?;
            let r = r.trim().parse().map_err(|e| format!("level value in `{item}`: {e}"))?;
            let u = u.trim().parse().map_err(|e| format!("user count in `{item}`: {e}"))?;
            Ok(LevelSpec::new(r, u))
        })
        .collect()
}

/// Parses `start:stop:step` (inclusive) or a comma-separated list.
pub fn parse_snr(s: &str) -> Result<Vec<f64>, String> {
    let num = |v: &str| v.trim().parse::<f64>().map_err(|e| format!("`{v}`: {e}"));
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        [start, stop, step] => {
            let (start, stop, step) = (num(start)?, num(stop)?, num(step)?);
            if !(step > 0.0) || stop < start || !start.is_finite() || !stop.is_finite() {
                return Err(format!("bad range `{s}`: need start <= stop and step > 0"));
            }
            let count = ((stop - start) / step + 1e-9).floor() as usize;
            Ok((0..=count).map(|k| start + k as f64 * step).collect())
        }
        [_] => s.split(',').map(num).collect(),
        _ => Err(format!("bad SNR list `{s}`: use start:stop:step or a,b,c")),
    }
}

#[derive(Debug, Clone, Args)]
pub struct Gen1Args {
    /// Slots per frame
    #[arg(long)]
    pub t: usize,
    /// Access levels as r:u pairs in ascending r, e.g. 2:3,3:4,6:1
    #[arg(long, value_parser = parse_levels)]
    pub levels: std::vec::Vec<LevelSpec>,
    /// Seed for the driver sequences [default: drawn from system entropy]
    #[arg(long)]
    pub seed: Option<u64>,
    /// JSON file with explicit driver sequences {selector, levels}
    #[arg(long)]
    pub drivers: Option<PathBuf>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OrderModeArg {
    /// Exponent period is the true multiplicative order of g
    True,
    /// Exponent period is given by --d
    Compat,
}

#[derive(Debug, Clone, Args)]
pub struct Gen2Args {
    #[arg(long)]
    pub t: usize,
    #[arg(long, value_parser = parse_levels)]
    pub levels: std::vec::Vec<LevelSpec>,
    /// Iteration rounds n
    #[arg(long)]
    pub rounds: u32,
    /// Unit to iterate with [default: smallest unit of maximal order]
    #[arg(long)]
    pub g: Option<u64>,
    #[arg(long, value_enum, default_value_t = OrderModeArg::True)]
    pub order_mode: OrderModeArg,
    /// Exponent period in compat mode [default: Euler phi of t]
    #[arg(long)]
    pub d: Option<u64>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct BoundArgs {
    #[arg(long)]
    pub t: usize,
    #[arg(long, value_parser = parse_levels)]
    pub levels: std::vec::Vec<LevelSpec>,
    /// Also write the report to this file
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct EnumerateArgs {
    #[arg(long)]
    pub t: usize,
    /// Ascending level values, e.g. 1,2,6
    #[arg(long, value_delimiter = ',', required = true)]
    pub r: Vec<usize>,
    /// Refuse to list more tuples than this
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
    pub cap: usize,
    /// CSV destination [default: stdout]
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    pub file: PathBuf,
    /// Also write the JSON report to this file
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AlignmentArg {
    Global,
    PerUser,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PolicyArg {
    LowestIdle,
    Random,
}

#[derive(Debug, Clone, Args)]
pub struct SacTraceArgs {
    #[arg(long)]
    pub set: PathBuf,
    /// JSON script [{frame, action: join|leave, user, level}]
    #[arg(long, required_unless_present = "random_frames", conflicts_with = "random_frames")]
    pub script: Option<PathBuf>,
    /// Generate a random workload over this many frames instead of a script
    #[arg(long)]
    pub random_frames: Option<u64>,
    /// Users in the random workload
    #[arg(long, default_value_t = 16)]
    pub users: u64,
    /// Per-frame join probability of an idle user
    #[arg(long, default_value_t = 0.1)]
    pub join_p: f64,
    /// Per-frame leave probability of an assigned user
    #[arg(long, default_value_t = 0.05)]
    pub leave_p: f64,
    /// Seed for the random workload and the random policy [default: system entropy]
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = AlignmentArg::Global)]
    pub alignment: AlignmentArg,
    /// Frames between assignment and first transmission
    #[arg(long, default_value_t = 0)]
    pub sync_delay: u64,
    #[arg(long, value_enum, default_value_t = PolicyArg::LowestIdle)]
    pub policy: PolicyArg,
    /// Frames to audit [default: through the last scripted frame]
    #[arg(long)]
    pub horizon: Option<u64>,
    /// Trace JSON destination
    #[arg(long)]
    pub out: PathBuf,
    /// Per-frame slot occupancy CSV destination
    #[arg(long)]
    pub audit: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SimulateArgs {
    /// Set file supplying the hopping sequence
    #[arg(long, required_unless_present = "fixed", conflicts_with = "fixed")]
    pub set: Option<PathBuf>,
    /// Fixed slots used in every frame, e.g. 0,2,4,5
    #[arg(long, value_delimiter = ',')]
    pub fixed: Option<Vec<usize>>,
    /// Slots per frame; required with --fixed, checked against the set otherwise
    #[arg(long)]
    pub t: Option<usize>,
    /// Level index of the simulated user
    #[arg(long, conflicts_with = "r")]
    pub level: Option<usize>,
    /// Level value of the simulated user [default: the largest level]
    #[arg(long)]
    pub r: Option<usize>,
    /// User index within the level
    #[arg(long, default_value_t = 0)]
    pub user: usize,
    /// Interfered slots, e.g. 2 or 1,4,5
    #[arg(long, value_delimiter = ',')]
    pub interference: Vec<usize>,
    /// Interference-to-signal power ratio in dB
    #[arg(long = "ipower-db", default_value_t = 10.0, allow_negative_numbers = true)]
    pub ipower_db: f64,
    /// SNR points as start:stop:step or a list
    #[arg(long, default_value = "0:14:1", value_parser = parse_snr, allow_hyphen_values = true)]
    pub snr: std::vec::Vec<f64>,
    #[arg(long, default_value_t = DEFAULT_FRAMES)]
    pub frames: u64,
    #[arg(long, default_value_t = DEFAULT_SYMBOLS_PER_SLOT)]
    pub symbols_per_slot: u32,
    /// [default: system entropy]
    #[arg(long)]
    pub seed: Option<u64>,
    /// Scenario label [default: derived from t, interference and power]
    #[arg(long)]
    pub scenario: Option<String>,
    /// CSV destination [default: stdout]
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct CompareArgs {
    /// Reference curve CSV, usually the fixed scheme
    #[arg(long)]
    pub baseline: PathBuf,
    /// Curve CSV under test, usually the hopping scheme
    #[arg(long)]
    pub candidate: PathBuf,
    /// Comparison CSV destination
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct PipelineArgs {
    /// JSON file {"stages": [{"name", "args": [...]}]}
    pub config: PathBuf,
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn grammar_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn level_lists() {
        assert_eq!(
            parse_levels("2:3, 3:4,6:1").unwrap(),
            vec![LevelSpec::new(2, 3), LevelSpec::new(3, 4), LevelSpec::new(6, 1)]
        );
        assert!(parse_levels("2").is_err());
        assert!(parse_levels("2:x").is_err());
    }

    #[test]
    fn snr_lists() {
        assert_eq!(parse_snr("0:14:1").unwrap().len(), 15);
        assert_eq!(parse_snr("0:1:0.25").unwrap(), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        assert_eq!(parse_snr("5,10").unwrap(), vec![5.0, 10.0]);
        assert_eq!(parse_snr("-2:0:1").unwrap(), vec![-2.0, -1.0, 0.0]);
        assert!(parse_snr("0:1:0").is_err());
        assert!(parse_snr("3:1:1").is_err());
        assert!(parse_snr("a").is_err());
    }

    #[test]
    fn simulate_needs_a_scheme() {
        assert!(Cli::try_parse_from(["hcs", "simulate", "--t", "8"]).is_err());
        assert!(Cli::try_parse_from(["hcs", "simulate", "--set", "a", "--fixed", "0"]).is_err());
        let cli = Cli::try_parse_from(["hcs", "simulate", "--fixed", "0,2", "--t", "8", "--ipower-db", "-3"]).unwrap();
        match cli.command {
            Command::Simulate(a) => {
                assert_eq!(a.fixed, Some(vec![0, 2]));
                assert_eq!(a.ipower_db, -3.0);
                assert_eq!(a.snr.len(), 15);
            }
            _ => unreachable!(),
        }
    }
}
