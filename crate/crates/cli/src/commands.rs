//! Subcommand implementations. Each returns the process exit code:
//! 0 all good, 1 requirement violations (or an imperfect batch), 2 bad
//! input, 3 runtime failure.

use crate::io;
use crate::schema::ScenarioFile;
use crate::svg;
use anyhow::{Context, Result};
use rbl_core::simulator::{
    check_proximity, check_safety, metrics, run, run_batch, Scenario, SimError, TraceReport,
};
use std::path::Path;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATIONS: i32 = 1;
pub const EXIT_BAD_INPUT: i32 = 2;
pub const EXIT_RUNTIME: i32 = 3;

fn load_scenario(path: &Path) -> Result<Scenario> {
    ScenarioFile::load(path)?.to_scenario()
}

/// Re-derive a report's verdict from its rows at file resolution, so the
/// written trace and the written verdict can never disagree.
fn requantize(report: &TraceReport, scenario: &Scenario) -> TraceReport {
    let rows = io::rounded_rows(&report.rows);
    let mut violations = check_safety(&rows, scenario);
    violations.extend(check_proximity(&rows, scenario));
    let success = violations.is_empty() && report.goal_times.iter().all(|g| g.is_some());
    TraceReport {
        rows,
        violations,
        success,
        ..report.clone()
    }
}

pub fn cmd_run(
    scenario_path: &Path,
    out_dir: &Path,
    seed: Option<u64>,
    write_svg: bool,
) -> i32 {
    let scenario = match load_scenario(scenario_path) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e:#}");
            return EXIT_BAD_INPUT;
        }
    };
    let report = match run(&scenario, seed) {
        Ok(r) => r,
        Err(e @ SimError::Internal(_)) => {
            eprintln!("error: {e}");
            return EXIT_RUNTIME;
        }
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_BAD_INPUT;
        }
    };
    let report = requantize(&report, &scenario);
    if let Err(e) = write_run_outputs(&report, &scenario, out_dir, write_svg) {
        eprintln!("error: {e:#}");
        return EXIT_RUNTIME;
    }
    let status = if report.violations.is_empty() { "clean" } else { "VIOLATIONS" };
    println!(
        "seed {}: {} | arrived {}/{} | {:.1} s simulated | {} violation(s)",
        report.seed,
        status,
        report.goal_times.iter().filter(|g| g.is_some()).count(),
        scenario.agents.len(),
        report.duration,
        report.violations.len(),
    );
    if report.violations.is_empty() {
        EXIT_OK
    } else {
        EXIT_VIOLATIONS
    }
}

fn write_run_outputs(
    report: &TraceReport,
    scenario: &Scenario,
    out_dir: &Path,
    write_svg: bool,
) -> Result<()> {
    std::fs::create_dir_all(out_dir)
        .with_context(|| format!("creating {}", out_dir.display()))?;
    io::write_trace(&out_dir.join("trace.csv"), &report.rows)?;
    io::write_violations(&out_dir.join("violations.json"), &report.violations)?;
    let single = std::slice::from_ref(report);
    let m = metrics(single, scenario);
    io::write_json(&out_dir.join("metrics.json"), &io::run_metrics(report, &m))?;
    if write_svg {
        std::fs::write(out_dir.join("traj.svg"), svg::render(&report.rows, scenario))?;
    }
    Ok(())
}

/// Inclusive seed range `A..B`.
pub fn parse_seed_range(spec: &str) -> Result<Vec<u64>> {
    let (a, b) = spec
        .split_once("..")
        .with_context(|| format!("seed range {spec:?} must look like A..B"))?;
    let a: u64 = a.trim().parse().with_context(|| format!("bad range start {a:?}"))?;
    let b: u64 = b.trim().parse().with_context(|| format!("bad range end {b:?}"))?;
    anyhow::ensure!(a <= b, "empty seed range {spec:?}");
    Ok((a..=b).collect())
}

pub fn cmd_batch(scenario_path: &Path, seeds_spec: &str, jobs: usize, out_dir: &Path) -> i32 {
    let scenario = match load_scenario(scenario_path) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e:#}");
            return EXIT_BAD_INPUT;
        }
    };
    let seeds = match parse_seed_range(seeds_spec) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e:#}");
            return EXIT_BAD_INPUT;
        }
    };
    let reports = match run_batch(&scenario, &seeds, jobs) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return match e {
                SimError::Internal(_) => EXIT_RUNTIME,
                _ => EXIT_BAD_INPUT,
            };
        }
    };
    let reports: Vec<TraceReport> = reports.iter().map(|r| requantize(r, &scenario)).collect();
    for r in &reports {
        log::info!(
            "seed {}: success={} violations={} time={:?}",
            r.seed,
            r.success,
            r.violations.len(),
            r.completion_time()
        );
    }
    let m = metrics(&reports, &scenario);
    if let Err(e) = (|| -> Result<()> {
        std::fs::create_dir_all(out_dir)?;
        io::write_json(&out_dir.join("summary.json"), &io::batch_summary(&reports, &m))
    })() {
        eprintln!("error: {e:#}");
        return EXIT_RUNTIME;
    }
    println!(
        "{} runs | success rate {:.2} | avg time {} | min pair distance {:.3} m",
        m.runs,
        m.success_rate,
        m.avg_time.map_or("n/a".into(), |t| format!("{t:.1} s")),
        m.min_pair_distance,
    );
    if m.success_rate == 1.0 {
        EXIT_OK
    } else {
        EXIT_VIOLATIONS
    }
}

pub fn cmd_check(scenario_path: &Path, trace_path: &Path) -> i32 {
    let scenario = match load_scenario(scenario_path) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e:#}");
            return EXIT_BAD_INPUT;
        }
    };
    let rows = match io::read_trace(trace_path, scenario.agents.len()) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e:#}");
            return EXIT_BAD_INPUT;
        }
    };
    let safety = check_safety(&rows, &scenario);
    let proximity = check_proximity(&rows, &scenario);
    for v in safety.iter().chain(proximity.iter()) {
        println!(
            "{} {}-{}: [{:.2} s, {:.2} s] worst {:.3} m",
            v.kind.as_str(),
            v.a,
            v.b,
            v.t_start,
            v.t_end,
            v.worst
        );
    }
    println!(
        "safety: {} | proximity: {}",
        if safety.is_empty() { "PASS" } else { "FAIL" },
        if proximity.is_empty() { "PASS" } else { "FAIL" },
    );
    if safety.is_empty() && proximity.is_empty() {
        EXIT_OK
    } else {
        EXIT_VIOLATIONS
    }
}
