//! Trace and report serialization.
//!
//! Traces go to CSV with six decimal places; the run command checks
//! requirements against the rounded rows it writes, so re-checking the file
//! later reproduces the run's verdict exactly. Reports go to JSON.

use anyhow::{bail, Context, Result};
use rbl_core::geometry::Point2;
use rbl_core::simulator::{BatchMetrics, TraceReport, TraceRow, Violation};
use serde::Serialize;
use std::path::Path;

/// Quantize to the persisted resolution (micrometers, microseconds).
pub fn round6(v: f64) -> f64 {
    (v * 1e6).round() / 1e6
}

/// Copy of a report's rows at file resolution.
pub fn rounded_rows(rows: &[TraceRow]) -> Vec<TraceRow> {
    rows.iter()
        .map(|r| TraceRow {
            tick: r.tick,
            t: round6(r.t),
            agent: r.agent,
            position: Point2::new(round6(r.position.x), round6(r.position.y)),
            cmd: Point2::new(round6(r.cmd.x), round6(r.cmd.y)),
            beta: round6(r.beta),
            clearance: round6(r.clearance),
        })
        .collect()
}

pub fn write_trace(path: &Path, rows: &[TraceRow]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)
        .with_context(|| format!("creating {}", path.display()))?;
    w.write_record(["t", "agent", "x", "y", "vx", "vy", "beta", "clearance"])?;
    for r in rows {
        w.write_record([
            format!("{:.6}", r.t),
            r.agent.to_string(),
            format!("{:.6}", r.position.x),
            format!("{:.6}", r.position.y),
            format!("{:.6}", r.cmd.x),
            format!("{:.6}", r.cmd.y),
            format!("{:.6}", r.beta),
            format!("{:.6}", r.clearance),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Read a trace back. Rows must form complete ticks: agents `0..n` in
/// order, repeated, with one shared timestamp per tick.
pub fn read_trace(path: &Path, n: usize) -> Result<Vec<TraceRow>> {
    let mut rdr = csv::Reader::from_path(path)
        .with_context(|| format!("opening {}", path.display()))?;
    let mut rows = Vec::new();
    for (idx, record) in rdr.records().enumerate() {
        let record = record.with_context(|| format!("row {idx}"))?;
        if record.len() != 8 {
            bail!("row {idx}: expected 8 fields, found {}", record.len());
        }
        let field = |k: usize| -> Result<f64> {
            record[k]
                .parse::<f64>()
                .with_context(|| format!("row {idx}, field {k}: {:?}", &record[k]))
        };
        let agent: usize = record[1].parse().with_context(|| format!("row {idx} agent id"))?;
        let expected = idx % n;
        if agent != expected {
            bail!("row {idx}: expected agent {expected}, found {agent} (trace has {n} agents)");
        }
        rows.push(TraceRow {
            tick: (idx / n) as u64,
            t: field(0)?,
            agent,
            position: Point2::new(field(2)?, field(3)?),
            cmd: Point2::new(field(4)?, field(5)?),
            beta: field(6)?,
            clearance: field(7)?,
        });
    }
    if rows.is_empty() {
        bail!("trace has no rows");
    }
    if rows.len() % n != 0 {
        bail!("trace length {} is not a multiple of the agent count {n}", rows.len());
    }
    Ok(rows)
}

#[derive(Serialize)]
struct ViolationOut {
    kind: &'static str,
    a: usize,
    b: usize,
    t_start: f64,
    t_end: f64,
    worst_distance: f64,
}

fn violation_out(v: &Violation) -> ViolationOut {
    ViolationOut {
        kind: v.kind.as_str(),
        a: v.a,
        b: v.b,
        t_start: v.t_start,
        t_end: v.t_end,
        worst_distance: v.worst,
    }
}

pub fn write_violations(path: &Path, violations: &[Violation]) -> Result<()> {
    let out: Vec<ViolationOut> = violations.iter().map(violation_out).collect();
    write_json(path, &out)
}

#[derive(Serialize)]
pub struct RunMetricsOut {
    pub seed: u64,
    pub success: bool,
    pub duration: f64,
    pub completion_time: Option<f64>,
    pub goal_times: Vec<Option<f64>>,
    pub violation_count: usize,
    pub event_count: usize,
    pub max_speed: f64,
    pub min_pair_distance: f64,
}

pub fn run_metrics(report: &TraceReport, batch: &BatchMetrics) -> RunMetricsOut {
    RunMetricsOut {
        seed: report.seed,
        success: report.success,
        duration: report.duration,
        completion_time: report.completion_time(),
        goal_times: report.goal_times.clone(),
        violation_count: report.violations.len(),
        event_count: report.events.len(),
        max_speed: batch.max_speed,
        min_pair_distance: batch.min_pair_distance,
    }
}

#[derive(Serialize)]
pub struct SeedOutcome {
    pub seed: u64,
    pub success: bool,
    pub completion_time: Option<f64>,
    pub violation_count: usize,
}

#[derive(Serialize)]
pub struct BatchSummaryOut {
    pub runs: usize,
    pub success_rate: f64,
    pub avg_time: Option<f64>,
    pub avg_speed: Option<f64>,
    pub max_speed: f64,
    pub min_pair_distance: f64,
    pub seeds: Vec<SeedOutcome>,
}

pub fn batch_summary(reports: &[TraceReport], m: &BatchMetrics) -> BatchSummaryOut {
    BatchSummaryOut {
        runs: m.runs,
        success_rate: m.success_rate,
        avg_time: m.avg_time,
        avg_speed: m.avg_speed,
        max_speed: m.max_speed,
        min_pair_distance: m.min_pair_distance,
        seeds: reports
            .iter()
            .map(|r| SeedOutcome {
                seed: r.seed,
                success: r.success,
                completion_time: r.completion_time(),
                violation_count: r.violations.len(),
            })
            .collect(),
    }
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}
