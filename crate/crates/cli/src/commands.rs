//! One function per subcommand.

use std::fmt::Write as _;
use std::hash::{BuildHasher, RandomState};
use std::path::Path;
use std::time::SystemTime;

use hcs_core::bound::{check_bound, enumerate_user_counts, BoundReport};
use hcs_core::model::{HcsSet, SlotId, SystemConfig};
use hcs_core::modular::euler_phi;
use hcs_core::sac::{random_script, run_script, Alignment, AssignmentPolicy, SacOptions, ScriptEntry};
use hcs_core::sim::{compare_curves, simulate_point, Comparison, Scheme, SerCurve, SerPoint, SimConfig};
use hcs_core::verify::{verify, VerificationReport};
use hcs_core::{construct1, construct1_with_drivers, construct2, MultiplicativeOptions, PermutationParams};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::args::*;
use crate::error::{CliError, ErrorKind, Result};
use crate::format::{drivers_from_bytes, set_from_bytes, set_to_bytes};
use crate::manifest::Recorder;
use crate::paths::Workspace;

/// What a subcommand prints on success.
#[derive(Debug, Clone, PartialEq)]
pub enum Output {
    Summary { json: Value, human: String },
    /// Primary output sent to stdout as is.
    Raw(String),
}

#[derive(Debug, Clone)]
pub struct Report {
    pub output: Output,
    /// Set when the command ran but its verdict is a failure.
    pub failure: Option<CliError>,
}

impl Report {
    fn summary(json: Value, human: String) -> Self {
        Report {
            output: Output::Summary { json, human },
            failure: None,
        }
    }
}

/// Settings shared by every subcommand of one invocation.
#[derive(Debug, Clone)]
pub struct Ctx {
    pub ws: Workspace,
    pub argv: Vec<String>,
    pub human: bool,
}

fn entropy_seed() -> u64 {
    RandomState::new().hash_one(SystemTime::now())
}

fn config(t: usize, levels: &[hcs_core::model::LevelSpec], seed: u64) -> Result<SystemConfig> {
    SystemConfig::new(t, levels.to_vec(), seed).map_err(CliError::invalid)
}

fn generation_error(err: impl std::fmt::Display, config: &SystemConfig) -> CliError {
    CliError::invalid(format!("generation failed: {err}")).with_details(json!({ "bound": check_bound(config) }))
}

fn read_set(ctx: &Ctx, rec: &mut Recorder, path: &Path) -> Result<HcsSet> {
    let bytes = ctx.ws.read(path)?;
    rec.input(path, &bytes);
    set_from_bytes(path, &bytes)
}

fn set_summary(set: &HcsSet, out: &Path, rec: Recorder, ctx: &Ctx) -> Result<Report> {
    let manifests = rec.finish(&ctx.ws)?;
    let (l, m, t, users, lambda) = set.parameters();
    let json = json!({
        "output": out,
        "manifest": manifests.first(),
        "construction": set.provenance().kind(),
        "parameters": [l, m, t, users, lambda],
    });
    let human = format!(
        "wrote {} ({}): (l, M, t; users, lambda) = ({l}, {m}, {t}; {users}, {lambda})",
        out.display(),
        set.provenance().kind()
    );
    Ok(Report::summary(json, human))
}

pub fn gen1(ctx: &Ctx, args: &Gen1Args) -> Result<Report> {
    let seed = args.seed.unwrap_or_else(entropy_seed);
    let cfg = config(args.t, &args.levels, seed)?;
    let mut rec = Recorder::new(
        "gen1",
        &ctx.argv,
        json!({ "t": args.t, "levels": args.levels, "drivers": args.drivers, "out": args.out }),
    );
    rec.seed("seed", seed);
    let set = match &args.drivers {
        Some(path) => {
            let bytes = ctx.ws.read(path)?;
            rec.input(path, &bytes);
            let params = PermutationParams::derive(&cfg).map_err(|e| generation_error(e, &cfg))?;
            let drivers = drivers_from_bytes(path, &bytes, &params)?;
            construct1_with_drivers(&cfg, &drivers)
        }
        None => construct1(&cfg),
    }
    .map_err(|e| generation_error(e, &cfg))?;
    rec.output(&ctx.ws, &args.out, &set_to_bytes(&set))?;
    set_summary(&set, &args.out, rec, ctx)
}

pub fn gen2(ctx: &Ctx, args: &Gen2Args) -> Result<Report> {
    let cfg = config(args.t, &args.levels, 0)?;
    let mut options = MultiplicativeOptions::new(args.rounds);
    if let Some(g) = args.g {
        options = options.generator(g);
    }
    match (args.order_mode, args.d) {
        (OrderModeArg::True, Some(_)) => return Err(CliError::usage("--d only applies with --order-mode compat")),
        (OrderModeArg::True, None) => {}
        (OrderModeArg::Compat, d) => options = options.compat(d.unwrap_or_else(|| euler_phi(args.t as u64))),
    }
    let mut rec = Recorder::new(
        "gen2",
        &ctx.argv,
        json!({
            "t": args.t,
            "levels": args.levels,
            "rounds": args.rounds,
            "g": args.g,
            "order_mode": format!("{:?}", args.order_mode).to_lowercase(),
            "d": args.d,
            "out": args.out,
        }),
    );
    let set = construct2(&cfg, &options).map_err(|e| generation_error(e, &cfg))?;
    rec.output(&ctx.ws, &args.out, &set_to_bytes(&set))?;
    set_summary(&set, &args.out, rec, ctx)
}

fn bound_human(r: &BoundReport) -> String {
    let verdict = if r.optimal {
        "optimal"
    } else if r.feasible {
        "feasible"
    } else {
        "over capacity"
    };
    format!("load {} of {} slots, slack {}: {verdict}", r.load, r.capacity, r.slack)
}

pub fn bound(ctx: &Ctx, args: &BoundArgs) -> Result<Report> {
    let cfg = config(args.t, &args.levels, 0)?;
    let report = check_bound(&cfg);
    let json = serde_json::to_value(report).expect("report serializes");
    if let Some(out) = &args.out {
        let mut rec = Recorder::new("bound", &ctx.argv, json!({ "t": args.t, "levels": args.levels }));
        rec.output(&ctx.ws, out, format!("{json}\n").as_bytes())?;
        rec.finish(&ctx.ws)?;
    }
    Ok(Report::summary(json, bound_human(&report)))
}

pub fn enumerate(ctx: &Ctx, args: &EnumerateArgs) -> Result<Report> {
    let tuples = enumerate_user_counts(args.t, &args.r, args.cap).map_err(CliError::invalid)?;
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header: Vec<String> = (0..args.r.len()).map(|i| format!("u_{i}")).collect();
    header.extend(["load".into(), "optimal".into()]);
    let io = |e: csv::Error| CliError::new(ErrorKind::Io, e.to_string());
    w.write_record(&header).map_err(io)?;
    for tuple in &tuples {
        let mut row: Vec<String> = tuple.counts.iter().map(usize::to_string).collect();
        row.extend([tuple.load.to_string(), tuple.optimal.to_string()]);
        w.write_record(&row).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::new(ErrorKind::Io, e.to_string()))?;
    match &args.out {
        Some(out) => {
            let mut rec = Recorder::new("enumerate", &ctx.argv, json!({ "t": args.t, "r": args.r, "cap": args.cap }));
            rec.output(&ctx.ws, out, &bytes)?;
            rec.finish(&ctx.ws)?;
            let optimal = tuples.iter().filter(|t| t.optimal).count();
            Ok(Report::summary(
                json!({ "output": out, "tuples": tuples.len(), "optimal": optimal }),
                format!("wrote {}: {} feasible tuples, {optimal} optimal", out.display(), tuples.len()),
            ))
        }
        None => Ok(Report {
            output: Output::Raw(String::from_utf8(bytes).expect("csv is utf-8")),
            failure: None,
        }),
    }
}

fn mark(passed: bool) -> &'static str {
    if passed {
        "pass"
    } else {
        "FAIL"
    }
}

fn verify_human(r: &VerificationReport) -> String {
    let [l, m, t, users, lambda] = r.parameters;
    let mut s = String::new();
    let _ = writeln!(s, "set ({l}, {m}, {t}; {users}, {lambda}), construction {}", r.construction);
    let _ = writeln!(s, "  zero correlation     {}", mark(r.zero_correlation.passed()));
    let _ = writeln!(s, "  slot range           {}", mark(r.slot_range.passed()));
    let _ = writeln!(s, "  frame distinctness   {}", mark(r.frame_distinctness.passed()));
    let _ = writeln!(
        s,
        "  occupancy            {} ({:?})",
        mark(r.occupancy.check.passed()),
        r.occupancy.rule
    );
    let _ = writeln!(s, "  utilization          {}", mark(r.hcs_conditions.utilization.passed()));
    let _ = writeln!(s, "  bound                {}", bound_human(&r.bound));
    for w in &r.warnings {
        let _ = writeln!(s, "  warning: {w}");
    }
    let _ = write!(s, "result: {}", if r.passed() { "PASS" } else { "FAIL" });
    s
}

pub fn verify_cmd(ctx: &Ctx, args: &VerifyArgs) -> Result<Report> {
    let mut rec = Recorder::new("verify", &ctx.argv, json!({ "file": args.file, "out": args.out }));
    let set = read_set(ctx, &mut rec, &args.file)?;
    let report = verify(&set);
    let json = serde_json::to_value(&report).expect("report serializes");
    if let Some(out) = &args.out {
        rec.output(&ctx.ws, out, format!("{json}\n").as_bytes())?;
        rec.finish(&ctx.ws)?;
    }
    let failure = (!report.passed()).then(|| {
        let failed: Vec<&str> = [
            ("zero_correlation", report.zero_correlation.passed()),
            ("slot_range", report.slot_range.passed()),
            ("frame_distinctness", report.frame_distinctness.passed()),
            ("occupancy", report.occupancy.check.passed()),
            ("utilization", report.hcs_conditions.utilization.passed()),
            ("within_capacity", report.hcs_conditions.within_capacity),
        ]
        .into_iter()
        .filter(|(_, ok)| !ok)
        .map(|(name, _)| name)
        .collect();
        CliError::new(
            ErrorKind::VerificationFailed,
            format!("{}: verification failed: {}", args.file.display(), failed.join(", ")),
        )
        .with_details(json!({ "failed": failed }))
    });
    Ok(Report {
        output: Output::Summary {
            human: verify_human(&report),
            json,
        },
        failure,
    })
}

#[derive(Serialize)]
struct TraceFile<'a> {
    parameters: [usize; 5],
    options: &'a SacOptions,
    script: &'a [ScriptEntry],
    events: &'a [hcs_core::SacEvent],
    frames_audited: usize,
    collisions: Vec<Value>,
    final_queues: Vec<usize>,
}

pub fn sac_trace(ctx: &Ctx, args: &SacTraceArgs) -> Result<Report> {
    let mut rec = Recorder::new(
        "sac-trace",
        &ctx.argv,
        json!({
            "set": args.set,
            "script": args.script,
            "random_frames": args.random_frames,
            "users": args.users,
            "join_p": args.join_p,
            "leave_p": args.leave_p,
            "alignment": format!("{:?}", args.alignment),
            "sync_delay": args.sync_delay,
            "policy": format!("{:?}", args.policy),
            "horizon": args.horizon,
        }),
    );
    let set = read_set(ctx, &mut rec, &args.set)?;
    let needs_seed = args.random_frames.is_some() || args.policy == PolicyArg::Random;
    let seed = args.seed.unwrap_or_else(entropy_seed);
    if needs_seed {
        rec.seed("seed", seed);
    }
    let script: Vec<ScriptEntry> = match (&args.script, args.random_frames) {
        (Some(path), _) => {
            let bytes = ctx.ws.read(path)?;
            rec.input(path, &bytes);
            serde_json::from_slice(&bytes).map_err(|e| CliError::json_parse(path, &e))?
        }
        (None, Some(frames)) => {
            for (name, p) in [("--join-p", args.join_p), ("--leave-p", args.leave_p)] {
                if !(0.0..=1.0).contains(&p) {
                    return Err(CliError::usage(format!("{name} must lie in [0, 1]")));
                }
            }
            random_script(&set, frames, args.users, args.join_p, args.leave_p, seed)
        }
        (None, None) => return Err(CliError::usage("give --script or --random-frames")),
    };
    let options = SacOptions {
        alignment: match args.alignment {
            AlignmentArg::Global => Alignment::Global,
            AlignmentArg::PerUser => Alignment::PerUser,
        },
        policy: match args.policy {
            PolicyArg::LowestIdle => AssignmentPolicy::LowestIdle,
            PolicyArg::Random => AssignmentPolicy::SeededRandom { seed },
        },
        sync_delay: args.sync_delay,
    };
    let horizon = args.horizon.or(args.random_frames);
    let trace = run_script(&set, options, &script, horizon).map_err(CliError::invalid)?;

    let mut collisions = Vec::new();
    let mut audit = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| CliError::new(ErrorKind::Io, e.to_string());
    audit.write_record(["frame", "slot", "users", "collision"]).map_err(io)?;
    for a in &trace.audits {
        for (slot, users) in a.claims.iter().enumerate() {
            let ids: Vec<String> = users.iter().map(|u| u.0.to_string()).collect();
            let collision = users.len() > 1;
            if collision {
                collisions.push(json!({ "frame": a.frame, "slot": slot, "users": users }));
            }
            audit
                .write_record([a.frame.to_string(), slot.to_string(), ids.join(" "), collision.to_string()])
                .map_err(io)?;
        }
    }
    let audit_bytes = audit.into_inner().map_err(|e| CliError::new(ErrorKind::Io, e.to_string()))?;

    let mut queues = vec![0usize; set.config().lambda()];
    for e in &trace.events {
        use hcs_core::SacEventKind::*;
        match e.kind {
            Queued => queues[e.level] += 1,
            GrantedFromQueue => queues[e.level] -= 1,
            _ => {}
        }
    }
    let doc = TraceFile {
        parameters: {
            let (l, m, t, users, lambda) = set.parameters();
            [l, m, t, users, lambda]
        },
        options: &trace.options,
        script: &script,
        events: &trace.events,
        frames_audited: trace.audits.len(),
        collisions: collisions.clone(),
        final_queues: queues,
    };
    let mut bytes = serde_json::to_vec(&doc).expect("trace serializes");
    bytes.push(b'\n');
    rec.output(&ctx.ws, &args.out, &bytes)?;
    if let Some(path) = &args.audit {
        rec.output(&ctx.ws, path, &audit_bytes)?;
    }
    rec.finish(&ctx.ws)?;
    let json = json!({
        "output": args.out,
        "audit": args.audit,
        "events": trace.events.len(),
        "frames_audited": trace.audits.len(),
        "collision_free": collisions.is_empty(),
        "collisions": collisions.len(),
    });
    let human = format!(
        "wrote {}: {} events over {} frames, {} slot collisions",
        args.out.display(),
        trace.events.len(),
        trace.audits.len(),
        collisions.len()
    );
    Ok(Report::summary(json, human))
}

/// One CSV row of a SER curve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveRow {
    pub snr_db: f64,
    pub ser: f64,
    pub symbols_total: u64,
    pub symbols_error: u64,
    pub scheme: String,
    pub scenario: String,
}

pub fn curve_to_csv(curve: &SerCurve) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for p in &curve.points {
        w.serialize(CurveRow {
            snr_db: p.snr_db,
            ser: p.ser,
            symbols_total: p.symbols_total,
            symbols_error: p.symbols_error,
            scheme: curve.scheme.clone(),
            scenario: curve.scenario.clone(),
        })
        .map_err(|e| CliError::new(ErrorKind::Io, e.to_string()))?;
    }
    w.into_inner().map_err(|e| CliError::new(ErrorKind::Io, e.to_string()))
}

pub fn curve_from_csv(path: &Path, bytes: &[u8]) -> Result<SerCurve> {
    let mut r = csv::Reader::from_reader(bytes);
    let rows: Vec<CurveRow> = r
        .deserialize()
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| CliError::csv_parse(path, &e))?;
    let first = rows
        .first()
        .ok_or_else(|| CliError::invalid(format!("{}: curve has no points", path.display())))?;
    if rows.iter().any(|row| row.scheme != first.scheme || row.scenario != first.scenario) {
        return Err(CliError::invalid(format!("{}: rows mix schemes or scenarios", path.display())));
    }
    Ok(SerCurve {
        scheme: first.scheme.clone(),
        scenario: first.scenario.clone(),
        points: rows
            .iter()
            .map(|row| SerPoint {
                snr_db: row.snr_db,
                ser: row.ser,
                symbols_total: row.symbols_total,
                symbols_error: row.symbols_error,
            })
            .collect(),
    })
}

fn default_scenario(t: usize, interference: &[usize], power_db: f64) -> String {
    if interference.is_empty() {
        return format!("t{t}-clean");
    }
    let slots: Vec<String> = interference.iter().map(usize::to_string).collect();
    format!("t{t}-I{}-{power_db}dB", slots.join("+"))
}

pub fn simulate(ctx: &Ctx, args: &SimulateArgs) -> Result<Report> {
    let seed = args.seed.unwrap_or_else(entropy_seed);
    let mut rec = Recorder::new(
        "simulate",
        &ctx.argv,
        json!({
            "set": args.set,
            "fixed": args.fixed,
            "t": args.t,
            "level": args.level,
            "r": args.r,
            "user": args.user,
            "interference": args.interference,
            "ipower_db": args.ipower_db,
            "snr_db": args.snr,
            "frames": args.frames,
            "symbols_per_slot": args.symbols_per_slot,
            "scenario": args.scenario,
        }),
    );
    rec.seed("seed", seed);
    let (t, scheme) = match (&args.set, &args.fixed) {
        (Some(path), _) => {
            let set = read_set(ctx, &mut rec, path)?;
            if let Some(t) = args.t.filter(|&t| t != set.t()) {
                return Err(CliError::usage(format!("--t {t} disagrees with the set's t = {}", set.t())));
            }
            let levels = set.config().levels();
            let level = match (args.level, args.r) {
                (Some(level), _) => level,
                (None, Some(r)) => levels
                    .iter()
                    .position(|l| l.r == r)
                    .ok_or_else(|| CliError::invalid(format!("no level with level value {r} in the set")))?,
                (None, None) => levels.len() - 1,
            };
            let scheme = Scheme::from_set(&set, level, args.user).map_err(CliError::invalid)?;
            (set.t(), scheme)
        }
        (None, Some(slots)) => {
            let t = args.t.ok_or_else(|| CliError::usage("--fixed needs --t"))?;
            (t, Scheme::fixed(slots.iter().copied()))
        }
        (None, None) => return Err(CliError::usage("give --set or --fixed")),
    };
    let config = SimConfig {
        t,
        scheme,
        snr_db: args.snr.clone(),
        interference_slots: args.interference.iter().copied().map(SlotId).collect(),
        interference_power_db: args.ipower_db,
        symbols_per_slot: args.symbols_per_slot,
        frames: args.frames,
        seed,
        scenario: args
            .scenario
            .clone()
            .unwrap_or_else(|| default_scenario(t, &args.interference, args.ipower_db)),
    };
    config.validate().map_err(CliError::invalid)?;
    let points = (0..config.snr_db.len())
        .into_par_iter()
        .map(|i| simulate_point(&config, i))
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(CliError::invalid)?;
    let curve = SerCurve {
        scheme: config.scheme.label().into(),
        scenario: config.scenario.clone(),
        points,
    };
    let bytes = curve_to_csv(&curve)?;
    match &args.out {
        Some(out) => {
            rec.output(&ctx.ws, out, &bytes)?;
            rec.finish(&ctx.ws)?;
            let json = json!({
                "output": out,
                "scheme": curve.scheme,
                "scenario": curve.scenario,
                "seed": seed,
                "points": curve.points,
            });
            let human = format!(
                "wrote {}: {} curve, scenario {}, {} SNR points",
                out.display(),
                curve.scheme,
                curve.scenario,
                curve.points.len()
            );
            Ok(Report::summary(json, human))
        }
        None => Ok(Report {
            output: Output::Raw(String::from_utf8(bytes).expect("csv is utf-8")),
            failure: None,
        }),
    }
}

#[derive(Serialize)]
struct ComparisonRowCsv {
    snr_db: f64,
    baseline_ser: f64,
    candidate_ser: f64,
    delta: f64,
    sigma: f64,
    flagged: bool,
}

fn compare_summary(cmp: &Comparison) -> Value {
    let peak = cmp.max_delta();
    json!({
        "baseline": cmp.baseline.scheme,
        "candidate": cmp.candidate.scheme,
        "scenario": cmp.baseline.scenario,
        "max_delta": peak.map(|r| r.delta),
        "max_delta_snr_db": peak.map(|r| r.snr_db),
        "flagged_snr_db": cmp.rows.iter().filter(|r| r.flagged).map(|r| r.snr_db).collect::<Vec<_>>(),
        "rows": cmp.rows,
    })
}

pub fn compare(ctx: &Ctx, args: &CompareArgs) -> Result<Report> {
    let mut rec = Recorder::new("compare", &ctx.argv, json!({ "baseline": args.baseline, "candidate": args.candidate }));
    let mut load = |path: &Path| -> Result<SerCurve> {
        let bytes = ctx.ws.read(path)?;
        rec.input(path, &bytes);
        curve_from_csv(path, &bytes)
    };
    let baseline = load(&args.baseline)?;
    let candidate = load(&args.candidate)?;
    if baseline.scenario != candidate.scenario {
        return Err(CliError::invalid(format!(
            "mismatched scenarios: `{}` vs `{}`",
            baseline.scenario, candidate.scenario
        )));
    }
    if baseline.points.len() == candidate.points.len()
        && baseline
            .points
            .iter()
            .zip(&candidate.points)
            .any(|(a, b)| a.symbols_total != b.symbols_total)
    {
        return Err(CliError::invalid("mismatched scenarios: symbol counts differ"));
    }
    let cmp = compare_curves(baseline, candidate).map_err(CliError::invalid)?;
    let summary = compare_summary(&cmp);
    if let Some(out) = &args.out {
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in &cmp.rows {
            w.serialize(ComparisonRowCsv {
                snr_db: r.snr_db,
                baseline_ser: r.baseline_ser,
                candidate_ser: r.candidate_ser,
                delta: r.delta,
                sigma: r.sigma,
                flagged: r.flagged,
            })
            .map_err(|e| CliError::new(ErrorKind::Io, e.to_string()))?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::new(ErrorKind::Io, e.to_string()))?;
        rec.output(&ctx.ws, out, &bytes)?;
        rec.finish(&ctx.ws)?;
    }
    let human = match cmp.max_delta() {
        Some(peak) => format!(
            "{} vs {} ({}): peak delta {:.4} at {} dB, {} flagged points",
            cmp.baseline.scheme,
            cmp.candidate.scheme,
            cmp.baseline.scenario,
            peak.delta,
            peak.snr_db,
            cmp.rows.iter().filter(|r| r.flagged).count()
        ),
        None => "no points".into(),
    };
    Ok(Report::summary(summary, human))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scenario_labels() {
        assert_eq!(default_scenario(8, &[2], 10.0), "t8-I2-10dB");
        assert_eq!(default_scenario(8, &[1, 4, 5], 15.0), "t8-I1+4+5-15dB");
        assert_eq!(default_scenario(8, &[], 15.0), "t8-clean");
    }

    #[test]
    fn curve_csv_round_trip() {
        let curve = SerCurve {
            scheme: "fixed".into(),
            scenario: "s".into(),
            points: vec![
                SerPoint {
                    snr_db: 0.5,
                    ser: 0.25,
                    symbols_total: 4,
                    symbols_error: 1,
                },
                SerPoint {
                    snr_db: 1.5,
                    ser: 0.0,
                    symbols_total: 4,
                    symbols_error: 0,
                },
            ],
        };
        let bytes = curve_to_csv(&curve).unwrap();
        let text = String::from_utf8(bytes.clone()).unwrap();
        assert!(text.starts_with("snr_db,ser,symbols_total,symbols_error,scheme,scenario\n"));
        assert_eq!(curve_from_csv(Path::new("c.csv"), &bytes).unwrap(), curve);
        assert_eq!(
            curve_from_csv(Path::new("c.csv"), b"snr_db,ser\nx,1\n").unwrap_err().kind,
            ErrorKind::Parse
        );
        assert_eq!(
            curve_from_csv(Path::new("c.csv"), b"snr_db,ser,symbols_total,symbols_error,scheme,scenario\n")
                .unwrap_err()
                .kind,
            ErrorKind::InvalidInput
        );
    }
}
