//! Headless multi-robot simulator.
//!
//! A [`Scenario`] fully determines a run: agent starts and configs, static
//! disc obstacles, the proximity graph, the sensing noise model, and a seed.
//! [`run`] advances a fixed base tick. Each agent decides on its own control
//! period (with a seeded phase offset so decisions interleave) and holds its
//! command between decisions; between decisions the plant integrates the
//! command plus a bounded disturbance drawn per control period.
//!
//! Everything downstream of the seed is deterministic: noise and
//! disturbances come from a single counter-based generator consumed in a
//! fixed order, and the tick loop is single threaded. [`run_batch`] fans
//! seeds out across a thread pool; per-seed results are still byte
//! identical to solo runs.
//!
//! Requirement checking is trace-based, not simulator-internal:
//! [`check_safety`] and [`check_proximity`] read recorded positions, so the
//! same functions audit a fresh run and a deserialized trace.

use crate::agent::{decide, track, AgentConfig, AgentError, KinematicState, Measurement, TargetId};
use crate::cells::CellError;
use crate::geometry::{Point2, Vec2};
use crate::weighting::AdaptiveState;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use thiserror::Error;

/// One robot: where it starts and how it behaves.
#[derive(Debug, Clone, PartialEq)]
pub struct AgentSpec {
    pub start: Point2,
    pub config: AgentConfig,
}

/// Static disc obstacle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Obstacle {
    pub center: Point2,
    pub radius: f64,
}

/// Sensing noise: positions are perturbed radially by a magnitude drawn
/// uniformly from `[0, bound)` meters in a uniform direction. A zero bound
/// means exact sensing and draws nothing from the generator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseModel {
    pub bound: f64,
}

/// How measurement covariances are reported to agents.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LambdaMode {
    /// Every measurement reports the worst case `(bound / k_sigma)^2`.
    Saturated,
    /// Each measurement reports the covariance of its own drawn error.
    PerDraw,
}

/// How obstacle measurements are synthesized.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum ObstacleSensing {
    /// Report the disc center together with its true radius.
    #[default]
    Circle,
    /// Report the closest point of the disc surface with a small stand-in
    /// radius, like a sensor that segments the nearest edge of a blob
    /// instead of fitting the whole disc.
    ClosestPoint { delta: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub agents: Vec<AgentSpec>,
    pub obstacles: Vec<Obstacle>,
    /// Symmetric proximity graph, false diagonal.
    pub adjacency: Vec<Vec<bool>>,
    /// `gamma[i][j]` is the required maximum distance where `adjacency[i][j]`.
    pub gamma: Vec<Vec<f64>>,
    pub noise: NoiseModel,
    pub lambda_mode: LambdaMode,
    pub obstacle_sensing: ObstacleSensing,
    /// Integration step, seconds.
    pub base_dt: f64,
    /// Wall-clock cap on a run, seconds.
    pub duration_max: f64,
    /// Arrival latches when within this distance of the goal, meters.
    pub goal_tolerance: f64,
    pub seed: u64,
}

impl Scenario {
    /// Structural sanity checks; every runner calls this first.
    pub fn validate(&self) -> Result<(), SimError> {
        let n = self.agents.len();
        if n == 0 {
            return Err(SimError::invalid("scenario has no agents"));
        }
        if self.adjacency.len() != n || self.adjacency.iter().any(|r| r.len() != n) {
            return Err(SimError::invalid("adjacency matrix is not n x n"));
        }
        if self.gamma.len() != n || self.gamma.iter().any(|r| r.len() != n) {
            return Err(SimError::invalid("gamma matrix is not n x n"));
        }
        if !(self.base_dt > 0.0) {
            return Err(SimError::invalid("base_dt must be positive"));
        }
        if !(self.duration_max > 0.0) || !(self.goal_tolerance > 0.0) {
            return Err(SimError::invalid("duration_max and goal_tolerance must be positive"));
        }
        if self.noise.bound < 0.0 {
            return Err(SimError::invalid("noise bound must be nonnegative"));
        }
        if let ObstacleSensing::ClosestPoint { delta } = self.obstacle_sensing {
            if !(delta > 0.0) {
                return Err(SimError::invalid("closest-point obstacle radius must be positive"));
            }
        }
        for i in 0..n {
            if self.adjacency[i][i] {
                return Err(SimError::invalid(format!("agent {i} is adjacent to itself")));
            }
            let cfg = &self.agents[i].config;
            if !(cfg.control_period > 0.0) {
                return Err(SimError::invalid(format!("agent {i} control_period must be positive")));
            }
            let ticks = cfg.control_period / self.base_dt;
            if (ticks - ticks.round()).abs() > 1e-9 || ticks.round() < 1.0 {
                return Err(SimError::invalid(format!(
                    "agent {i} control_period must be a multiple of base_dt"
                )));
            }
            for j in 0..n {
                if self.adjacency[i][j] != self.adjacency[j][i] {
                    return Err(SimError::invalid("adjacency matrix must be symmetric"));
                }
                if i == j || !self.adjacency[i][j] {
                    continue;
                }
                let delta_sum = cfg.delta() + self.agents[j].config.delta();
                if self.gamma[i][j] <= 2.0 * delta_sum {
                    return Err(SimError::invalid(format!(
                        "gamma[{i}][{j}] = {} leaves no room between safety ({}) and proximity",
                        self.gamma[i][j],
                        2.0 * delta_sum
                    )));
                }
            }
            for j in (i + 1)..n {
                let d = self.agents[i].start.dist(self.agents[j].start);
                let delta_sum = cfg.delta() + self.agents[j].config.delta();
                if d <= 2.0 * delta_sum {
                    return Err(SimError::invalid(format!(
                        "agents {i} and {j} start {d:.3} m apart, inside the reshaping range {:.3}",
                        2.0 * delta_sum
                    )));
                }
            }
            for (k, o) in self.obstacles.iter().enumerate() {
                let d = cfg.delta() + o.radius;
                if self.agents[i].start.dist(o.center) <= 2.0 * d {
                    return Err(SimError::invalid(format!(
                        "agent {i} starts inside the reshaping range of obstacle {k}"
                    )));
                }
            }
        }
        Ok(())
    }

    fn proximity_map(&self, i: usize) -> BTreeMap<usize, f64> {
        self.adjacency[i]
            .iter()
            .enumerate()
            .filter(|&(j, &adj)| adj && j != i)
            .map(|(j, _)| (j, self.gamma[i][j]))
            .collect()
    }
}

#[derive(Debug, Error)]
pub enum SimError {
    #[error("invalid scenario: {0}")]
    InvalidScenario(String),
    #[error("obstacle generation failed: {0}")]
    Forest(String),
    #[error("internal simulation fault: {0}")]
    Internal(String),
}

impl SimError {
    fn invalid(msg: impl Into<String>) -> Self {
        SimError::InvalidScenario(msg.into())
    }
}

/// Per-tick per-agent sample; positions are the state at time `t`, `cmd` is
/// the command in force during the tick starting at `t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceRow {
    pub tick: u64,
    pub t: f64,
    pub agent: usize,
    pub position: Point2,
    pub cmd: Vec2,
    pub beta: f64,
    pub clearance: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ViolationKind {
    RobotRobot,
    RobotObstacle,
    Proximity,
}

impl ViolationKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ViolationKind::RobotRobot => "robot-robot",
            ViolationKind::RobotObstacle => "robot-obstacle",
            ViolationKind::Proximity => "proximity",
        }
    }
}

/// A maximal time interval during which one requirement stayed violated for
/// one pair. `b` indexes an obstacle when the kind is robot-obstacle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub a: usize,
    pub b: usize,
    pub t_start: f64,
    pub t_end: f64,
    /// Most extreme center distance seen: minimum for safety kinds,
    /// maximum for proximity.
    pub worst: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EventKind {
    /// Agent sensed an entity inside the collision threshold and froze.
    CollisionSensed,
    /// Proximity discs emptied the cell; agent froze for the step.
    InfeasibleProximity,
    /// Any other decision failure.
    DecisionFailed,
}

/// Something noteworthy an agent did or suffered at time `t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AgentEvent {
    pub t: f64,
    pub agent: usize,
    pub kind: EventKind,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TraceReport {
    pub seed: u64,
    pub rows: Vec<TraceRow>,
    pub violations: Vec<Violation>,
    pub events: Vec<AgentEvent>,
    /// Arrival time per agent, None when it never latched.
    pub goal_times: Vec<Option<f64>>,
    /// Simulated time at the end of the run, seconds.
    pub duration: f64,
    /// All agents arrived and nothing was violated.
    pub success: bool,
}

impl TraceReport {
    /// Completion time of the whole mission: the last arrival.
    pub fn completion_time(&self) -> Option<f64> {
        self.goal_times
            .iter()
            .copied()
            .collect::<Option<Vec<f64>>>()
            .map(|ts| ts.into_iter().fold(0.0, f64::max))
    }
}

fn draw_noise(rng: &mut ChaCha8Rng, bound: f64) -> Vec2 {
    if bound == 0.0 {
        return Vec2::ZERO;
    }
    let angle = rng.gen_range(0.0..std::f64::consts::TAU);
    let mag = rng.gen_range(0.0..bound);
    Point2::new(angle.cos(), angle.sin()) * mag
}

/// Synthesize agent `i`'s measurements from ground truth. Entities beyond
/// twice the cell sensing radius are invisible. Draw order is robots by
/// index then obstacles by index, so the generator stream is reproducible.
fn sense(
    i: usize,
    positions: &[Point2],
    scenario: &Scenario,
    rng: &mut ChaCha8Rng,
) -> Vec<Measurement> {
    let cfg = &scenario.agents[i].config;
    let horizon = 2.0 * cfg.cell.sensing_radius;
    let saturated_lambda = |err: Vec2| match scenario.lambda_mode {
        LambdaMode::Saturated => (scenario.noise.bound / cfg.k_sigma).powi(2),
        LambdaMode::PerDraw => (err.norm() / cfg.k_sigma).powi(2),
    };
    let mut out = Vec::new();
    for (j, &p_j) in positions.iter().enumerate() {
        if j == i || positions[i].dist(p_j) > horizon {
            continue;
        }
        let err = draw_noise(rng, scenario.noise.bound);
        out.push(Measurement {
            target: TargetId::Robot(j),
            position: p_j + err,
            lambda_max: saturated_lambda(err),
            radius: scenario.agents[j].config.delta(),
        });
    }
    for (k, o) in scenario.obstacles.iter().enumerate() {
        if positions[i].dist(o.center) > horizon {
            continue;
        }
        let err = draw_noise(rng, scenario.noise.bound);
        let (true_pos, radius) = match scenario.obstacle_sensing {
            ObstacleSensing::Circle => (o.center, o.radius),
            ObstacleSensing::ClosestPoint { delta } => {
                let surface = match (o.center - positions[i]).normalized() {
                    Some(u) => o.center - u * o.radius,
                    None => o.center,
                };
                (surface, delta)
            }
        };
        out.push(Measurement {
            target: TargetId::Obstacle(k),
            position: true_pos + err,
            lambda_max: saturated_lambda(err),
            radius,
        });
    }
    out
}

/// Run one scenario to completion or timeout. `seed_override` replaces the
/// scenario seed, leaving everything else untouched (batch runs reuse one
/// scenario across seeds).
pub fn run(scenario: &Scenario, seed_override: Option<u64>) -> Result<TraceReport, SimError> {
    scenario.validate()?;
    let n = scenario.agents.len();
    let seed = seed_override.unwrap_or(scenario.seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let configs: Vec<AgentConfig> = (0..n)
        .map(|i| AgentConfig {
            proximity: scenario.proximity_map(i),
            ..scenario.agents[i].config.clone()
        })
        .collect();
    let period_ticks: Vec<u64> = configs
        .iter()
        .map(|c| (c.control_period / scenario.base_dt).round() as u64)
        .collect();
    let phases: Vec<u64> = period_ticks
        .iter()
        .map(|&p| rng.gen_range(0..p))
        .collect();

    let mut kin: Vec<KinematicState> = scenario
        .agents
        .iter()
        .map(|a| KinematicState {
            position: a.start,
            velocity: Vec2::ZERO,
        })
        .collect();
    let mut adaptive: Vec<AdaptiveState> = configs
        .iter()
        .map(|c| AdaptiveState::new(c.goal, c.adapt.beta_d))
        .collect();
    let mut cmds = vec![Vec2::ZERO; n];
    let mut disturbances = vec![Vec2::ZERO; n];
    let mut betas: Vec<f64> = adaptive.iter().map(|s| s.beta).collect();
    let mut clearances = vec![0.0_f64; n];
    let mut goal_times: Vec<Option<f64>> = vec![None; n];
    let mut events = Vec::new();
    let mut rows = Vec::new();

    let max_ticks = (scenario.duration_max / scenario.base_dt).ceil() as u64;
    let mut duration = 0.0;
    for tick in 0..=max_ticks {
        let t = tick as f64 * scenario.base_dt;
        duration = t;

        for i in 0..n {
            if (tick + phases[i]) % period_ticks[i] != 0 {
                continue;
            }
            let positions: Vec<Point2> = kin.iter().map(|k| k.position).collect();
            let measurements = sense(i, &positions, scenario, &mut rng);
            match decide(kin[i].position, &adaptive[i], &measurements, &configs[i]) {
                Ok(d) => {
                    cmds[i] = d.cmd;
                    adaptive[i] = d.state;
                    betas[i] = d.state.beta;
                    clearances[i] = d.diag.clearance;
                }
                Err(e) => {
                    cmds[i] = Vec2::ZERO;
                    events.push(AgentEvent {
                        t,
                        agent: i,
                        kind: match e {
                            AgentError::Cell(CellError::CollisionState { .. }) => {
                                EventKind::CollisionSensed
                            }
                            AgentError::Cell(CellError::InfeasibleProximity) => {
                                EventKind::InfeasibleProximity
                            }
                            _ => EventKind::DecisionFailed,
                        },
                    });
                }
            }
            disturbances[i] = if configs[i].d_u_track > 0.0 {
                // Worst-case magnitude over the period still respects the
                // per-tick budget since base_dt <= control_period.
                draw_noise(&mut rng, configs[i].d_u_track / configs[i].control_period)
            } else {
                Vec2::ZERO
            };
        }

        for i in 0..n {
            rows.push(TraceRow {
                tick,
                t,
                agent: i,
                position: kin[i].position,
                cmd: cmds[i],
                beta: betas[i],
                clearance: clearances[i],
            });
        }

        for i in 0..n {
            if goal_times[i].is_none()
                && kin[i].position.dist(configs[i].goal) <= scenario.goal_tolerance
            {
                goal_times[i] = Some(t);
            }
        }
        if goal_times.iter().all(|g| g.is_some()) {
            break;
        }
        if tick == max_ticks {
            break;
        }

        for i in 0..n {
            kin[i] = track(&kin[i], cmds[i], scenario.base_dt, disturbances[i], &configs[i])
                .map_err(|e| SimError::Internal(format!("tracking agent {i}: {e}")))?;
        }
    }

    let mut violations = check_safety(&rows, scenario);
    violations.extend(check_proximity(&rows, scenario));
    let success = violations.is_empty() && goal_times.iter().all(|g| g.is_some());
    Ok(TraceReport {
        seed,
        rows,
        violations,
        events,
        goal_times,
        duration,
        success,
    })
}

/// Group rows tick by tick, returning per-tick position slices. Rows must
/// be complete and ordered: all agents for tick 0, then tick 1, and so on.
fn per_tick_positions(rows: &[TraceRow], n: usize) -> Vec<(f64, &[TraceRow])> {
    rows.chunks(n)
        .map(|chunk| (chunk[0].t, chunk))
        .collect()
}

struct IntervalTracker {
    kind: ViolationKind,
    a: usize,
    b: usize,
    open: Option<(f64, f64, f64)>,
    safety: bool,
}

impl IntervalTracker {
    fn new(kind: ViolationKind, a: usize, b: usize) -> Self {
        let safety = kind != ViolationKind::Proximity;
        IntervalTracker { kind, a, b, open: None, safety }
    }

    fn step(&mut self, t: f64, violated: bool, distance: f64, out: &mut Vec<Violation>) {
        match (&mut self.open, violated) {
            (Some((_, end, worst)), true) => {
                *end = t;
                *worst = if self.safety {
                    worst.min(distance)
                } else {
                    worst.max(distance)
                };
            }
            (Some(_), false) => self.close(out),
            (None, true) => self.open = Some((t, t, distance)),
            (None, false) => {}
        }
    }

    fn close(&mut self, out: &mut Vec<Violation>) {
        if let Some((t_start, t_end, worst)) = self.open.take() {
            out.push(Violation {
                kind: self.kind,
                a: self.a,
                b: self.b,
                t_start,
                t_end,
                worst,
            });
        }
    }
}

/// Scan a trace for body overlap: robot pairs closer than the sum of their
/// radii, or a robot center closer to an obstacle center than the radii
/// sum. Returns maximal violation intervals.
pub fn check_safety(rows: &[TraceRow], scenario: &Scenario) -> Vec<Violation> {
    let n = scenario.agents.len();
    let mut out = Vec::new();
    let mut robot_trackers: Vec<IntervalTracker> = Vec::new();
    let mut obstacle_trackers: Vec<IntervalTracker> = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            robot_trackers.push(IntervalTracker::new(ViolationKind::RobotRobot, i, j));
        }
        for k in 0..scenario.obstacles.len() {
            obstacle_trackers.push(IntervalTracker::new(ViolationKind::RobotObstacle, i, k));
        }
    }
    for (t, chunk) in per_tick_positions(rows, n) {
        let mut rt = robot_trackers.iter_mut();
        for i in 0..n {
            for j in (i + 1)..n {
                let tracker = rt.next().unwrap();
                let d = chunk[i].position.dist(chunk[j].position);
                let threshold =
                    scenario.agents[i].config.delta() + scenario.agents[j].config.delta();
                tracker.step(t, d < threshold, d, &mut out);
            }
        }
        let mut ot = obstacle_trackers.iter_mut();
        for i in 0..n {
            for o in &scenario.obstacles {
                let tracker = ot.next().unwrap();
                let d = chunk[i].position.dist(o.center);
                let threshold = scenario.agents[i].config.delta() + o.radius;
                tracker.step(t, d < threshold, d, &mut out);
            }
        }
    }
    for tr in robot_trackers.iter_mut().chain(obstacle_trackers.iter_mut()) {
        tr.close(&mut out);
    }
    out.sort_by(|a, b| a.t_start.total_cmp(&b.t_start).then(a.a.cmp(&b.a)).then(a.b.cmp(&b.b)));
    out
}

/// Scan a trace for proximity breaches: adjacent pairs farther apart than
/// their `gamma`. Returns maximal violation intervals.
pub fn check_proximity(rows: &[TraceRow], scenario: &Scenario) -> Vec<Violation> {
    let n = scenario.agents.len();
    let mut out = Vec::new();
    let mut trackers: Vec<((usize, usize), IntervalTracker)> = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if scenario.adjacency[i][j] {
                trackers.push(((i, j), IntervalTracker::new(ViolationKind::Proximity, i, j)));
            }
        }
    }
    for (t, chunk) in per_tick_positions(rows, n) {
        for ((i, j), tracker) in trackers.iter_mut() {
            let d = chunk[*i].position.dist(chunk[*j].position);
            tracker.step(t, d > scenario.gamma[*i][*j], d, &mut out);
        }
    }
    for (_, tr) in trackers.iter_mut() {
        tr.close(&mut out);
    }
    out.sort_by(|a, b| a.t_start.total_cmp(&b.t_start).then(a.a.cmp(&b.a)).then(a.b.cmp(&b.b)));
    out
}

/// Aggregate statistics over a batch of runs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BatchMetrics {
    pub runs: usize,
    pub success_rate: f64,
    /// Mean mission completion time over successful runs, seconds.
    pub avg_time: Option<f64>,
    /// Mean over successful runs of mean agent path speed, m/s.
    pub avg_speed: Option<f64>,
    /// Largest realized per-tick speed anywhere in the batch, m/s.
    pub max_speed: f64,
    /// Smallest robot pair center distance anywhere in the batch, meters.
    pub min_pair_distance: f64,
}

/// Realized per-agent path lengths and the peak tick speed of one run.
fn run_kinematics(report: &TraceReport, n: usize, base_dt: f64) -> (Vec<f64>, f64) {
    let mut path = vec![0.0; n];
    let mut max_speed: f64 = 0.0;
    let ticks: Vec<_> = per_tick_positions(&report.rows, n);
    for w in ticks.windows(2) {
        for i in 0..n {
            let step = w[0].1[i].position.dist(w[1].1[i].position);
            path[i] += step;
            max_speed = max_speed.max(step / base_dt);
        }
    }
    (path, max_speed)
}

/// Summarize a batch. Speeds and distances are computed from recorded
/// positions, not commands, so they reflect what the plant actually did.
pub fn metrics(reports: &[TraceReport], scenario: &Scenario) -> BatchMetrics {
    let n = scenario.agents.len();
    let mut successes = 0usize;
    let mut time_sum = 0.0;
    let mut speed_sum = 0.0;
    let mut max_speed: f64 = 0.0;
    let mut min_pair = f64::INFINITY;
    for report in reports {
        let (paths, run_max) = run_kinematics(report, n, scenario.base_dt);
        max_speed = max_speed.max(run_max);
        for (_, chunk) in per_tick_positions(&report.rows, n) {
            for i in 0..n {
                for j in (i + 1)..n {
                    min_pair = min_pair.min(chunk[i].position.dist(chunk[j].position));
                }
            }
        }
        if report.success {
            successes += 1;
            let t = report.completion_time().expect("successful run has goal times");
            time_sum += t;
            let mean_speed: f64 = report
                .goal_times
                .iter()
                .zip(&paths)
                .map(|(g, len)| len / g.expect("successful run has goal times").max(scenario.base_dt))
                .sum::<f64>()
                / n as f64;
            speed_sum += mean_speed;
        }
    }
    BatchMetrics {
        runs: reports.len(),
        success_rate: successes as f64 / reports.len().max(1) as f64,
        avg_time: (successes > 0).then(|| time_sum / successes as f64),
        avg_speed: (successes > 0).then(|| speed_sum / successes as f64),
        max_speed,
        min_pair_distance: min_pair,
    }
}

/// Run the same scenario under many seeds on a bounded thread pool.
/// Results come back in seed order and match solo runs byte for byte.
pub fn run_batch(
    scenario: &Scenario,
    seeds: &[u64],
    jobs: usize,
) -> Result<Vec<TraceReport>, SimError> {
    scenario.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| SimError::Internal(format!("thread pool: {e}")))?;
    pool.install(|| {
        use rayon::prelude::*;
        seeds
            .par_iter()
            .map(|&s| run(scenario, Some(s)))
            .collect::<Result<Vec<_>, _>>()
    })
}

/// Scatter non-overlapping disc obstacles uniformly over an axis-aligned
/// rectangle. Each disc keeps `min_clearance` of free space from every
/// other disc and from each keepout point (start and goal positions).
pub fn generate_forest(
    seed: u64,
    min: Point2,
    max: Point2,
    count: usize,
    radius: f64,
    min_clearance: f64,
    keepout: &[Point2],
) -> Result<Vec<Obstacle>, SimError> {
    if !(max.x > min.x) || !(max.y > min.y) {
        return Err(SimError::Forest("degenerate rectangle".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<Obstacle> = Vec::with_capacity(count);
    let mut attempts = 0usize;
    let max_attempts = 10_000 * count.max(1);
    while out.len() < count {
        attempts += 1;
        if attempts > max_attempts {
            return Err(SimError::Forest(format!(
                "placed only {} of {count} obstacles after {max_attempts} attempts",
                out.len()
            )));
        }
        let c = Point2::new(rng.gen_range(min.x..max.x), rng.gen_range(min.y..max.y));
        let clear_of_discs = out
            .iter()
            .all(|o| c.dist(o.center) >= 2.0 * radius + min_clearance);
        let clear_of_keepout = keepout.iter().all(|&k| c.dist(k) >= radius + min_clearance);
        if clear_of_discs && clear_of_keepout {
            out.push(Obstacle { center: c, radius });
        }
    }
    Ok(out)
}
