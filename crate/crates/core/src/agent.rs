//! The per-robot sense-decide-track loop.
//!
//! Each control period a robot turns raw measurements into a convex cell and
//! a velocity command:
//!
//! 1. gate measurements by covariance, pull proximity-constrained neighbors
//!    measured beyond `Gamma_ij` back inside (they must stay in the cell's
//!    feasible set);
//! 2. build the safety cell `A_i` and the proximity cell `F_i`;
//! 3. derive the clearance margin `d_u` the centroid must keep (fixed, or
//!    the worst-case measurement margin plus the tracking budget);
//! 4. find the greediness floor achieving that clearance, step the
//!    greediness and attractor dynamics, and command straight toward the
//!    weighted centroid of `F_i`, saturated at `v_max`.
//!
//! [`track`] is the plant side: first-order velocity tracking with a slew
//! limit and a bounded additive disturbance standing in for everything a
//! real tracker gets wrong.

use crate::cells::{build_cell_a, build_cell_f, CellError, CellParams, EntityKind, SensedEntity, REPROJECTION_MARGIN};
use crate::geometry::{disc_polygon, ConvexRegion, Point2, Vec2};
use crate::weighting::{
    beta_min, update_beta, update_pbar, weighted_centroid, AdaptationParams, AdaptiveState,
    WeightingError,
};
use std::collections::BTreeMap;
use thiserror::Error;

/// What a measurement refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum TargetId {
    Robot(usize),
    Obstacle(usize),
}

/// One noisy relative observation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Measurement {
    pub target: TargetId,
    /// Estimated position in world coordinates, meters.
    pub position: Point2,
    /// Largest eigenvalue of the measurement covariance, square meters.
    pub lambda_max: f64,
    /// Body radius of the sensed entity, meters.
    pub radius: f64,
}

/// Static per-robot configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct AgentConfig {
    pub goal: Point2,
    /// Velocity command gain, 1/s.
    pub k_p: f64,
    /// Command saturation, m/s.
    pub v_max: f64,
    /// Tracking slew limit, m/s^2.
    pub a_max: f64,
    /// Seconds between decisions.
    pub control_period: f64,
    /// Per-step tracking error budget, meters.
    pub d_u_track: f64,
    /// Confidence scale multiplying `sqrt(lambda_max)` in margins.
    pub k_sigma: f64,
    /// Measurements with `lambda_max` above this are discarded, square meters.
    pub lambda_gate: f64,
    /// `Some(v)`: use clearance margin `v` as-is; `None`: derive it from
    /// measurement covariances plus the tracking budget.
    pub d_u_fixed: Option<f64>,
    /// Proximity-constrained neighbors: robot id to `Gamma_ij`, meters.
    pub proximity: BTreeMap<usize, f64>,
    pub cell: CellParams,
    pub adapt: AdaptationParams,
}

impl AgentConfig {
    /// Own body radius `delta_i`, meters.
    pub fn delta(&self) -> f64 {
        self.cell.delta_self
    }
}

impl Default for AgentConfig {
    fn default() -> Self {
        AgentConfig {
            goal: Point2::ZERO,
            k_p: 1.0,
            v_max: 1.5,
            a_max: 2.0,
            control_period: 0.1,
            d_u_track: 0.05,
            k_sigma: 1.0,
            lambda_gate: 15.0,
            d_u_fixed: None,
            proximity: BTreeMap::new(),
            cell: CellParams::default(),
            adapt: AdaptationParams::default(),
        }
    }
}

/// Plant state integrated by [`track`].
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct KinematicState {
    pub position: Point2,
    pub velocity: Vec2,
}

#[derive(Debug, Error, PartialEq)]
pub enum AgentError {
    #[error(transparent)]
    Cell(#[from] CellError),
    #[error(transparent)]
    Weighting(#[from] WeightingError),
    #[error("disturbance displacement {displacement} m exceeds the tracking budget {budget} m")]
    DisturbanceBudget { displacement: f64, budget: f64 },
}

/// Per-step introspection emitted by [`decide`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepDiagnostics {
    pub c_a: Point2,
    pub c_s: Point2,
    pub c_f: Point2,
    /// Greediness floor returned by the clearance search.
    pub beta_floor: f64,
    /// Boundary distance of the commanded centroid, meters.
    pub clearance: f64,
    /// Margin the clearance search targeted, meters.
    pub d_u: f64,
    /// True when the clearance target was achievable.
    pub margin_feasible: bool,
    /// Greediness dynamics took the sharpening (stuck) branch.
    pub stuck: bool,
    /// Attractor dynamics chased the rotated goal.
    pub rotating: bool,
    /// Any centroid fell back to the area centroid (weight underflow).
    pub area_fallback: bool,
}

/// Output of one control decision.
#[derive(Debug, Clone, PartialEq)]
pub struct Decision {
    /// Velocity command, m/s.
    pub cmd: Vec2,
    pub state: AdaptiveState,
    pub cell_f: ConvexRegion,
    pub diag: StepDiagnostics,
}

/// Clearance margin demanded by one measurement: confidence radius of the
/// position error plus both body radii plus the tracking budget. For
/// proximity-only constraints pass zero radii.
pub fn margin_d_u(lambda_max: f64, k_sigma: f64, delta_i: f64, delta_j: f64, d_u_track: f64) -> f64 {
    k_sigma * lambda_max.sqrt() + delta_i + delta_j + d_u_track
}

/// Covariance gate plus proximity re-projection.
///
/// Measurements with `lambda_max > lambda_gate` are dropped. A measurement
/// of a proximity-constrained neighbor lying beyond `Gamma_ij` is pulled
/// back to `Gamma_ij - 1 mm` along the line of sight so the proximity disc
/// never excludes the robot's own position.
pub fn gate_and_reproject(
    measurements: &[Measurement],
    p_i: Point2,
    proximity: &BTreeMap<usize, f64>,
    lambda_gate: f64,
) -> Vec<Measurement> {
    let mut out = Vec::with_capacity(measurements.len());
    for m in measurements {
        if m.lambda_max > lambda_gate {
            continue;
        }
        let mut m = *m;
        if let TargetId::Robot(id) = m.target {
            if let Some(&gamma) = proximity.get(&id) {
                let d = p_i.dist(m.position);
                if d > gamma {
                    let dir = (m.position - p_i).normalized().expect("d > gamma > 0");
                    m.position = p_i + dir * (gamma - REPROJECTION_MARGIN);
                }
            }
        }
        out.push(m);
    }
    out
}

/// One control decision: measurements in, velocity command and updated
/// adaptive state out. See the module docs for the pipeline.
pub fn decide(
    p_i: Point2,
    state: &AdaptiveState,
    measurements: &[Measurement],
    cfg: &AgentConfig,
) -> Result<Decision, AgentError> {
    let gated = gate_and_reproject(measurements, p_i, &cfg.proximity, cfg.lambda_gate);
    let sensed: Vec<SensedEntity> = gated
        .iter()
        .map(|m| SensedEntity {
            position: m.position,
            radius: m.radius,
            kind: match m.target {
                TargetId::Robot(_) => EntityKind::Robot,
                TargetId::Obstacle(_) => EntityKind::Obstacle,
            },
            proximity: match m.target {
                TargetId::Robot(id) => cfg.proximity.get(&id).copied(),
                TargetId::Obstacle(_) => None,
            },
        })
        .collect();

    let cell_a = build_cell_a(p_i, &sensed, &cfg.cell)?;
    let cell_f = build_cell_f(&cell_a, p_i, &sensed, &cfg.cell)?;

    let d_u = match cfg.d_u_fixed {
        Some(v) => v,
        None => gated
            .iter()
            .map(|m| margin_d_u(m.lambda_max, cfg.k_sigma, cfg.delta(), m.radius, cfg.d_u_track))
            .fold(cfg.d_u_track, f64::max),
    };

    let floor = beta_min(&cell_f, state.pbar, d_u)?;
    let s_poly = disc_polygon(p_i, cfg.cell.sensing_radius, cfg.cell.disc_sides)
        .map_err(CellError::from)?;
    let c_a = weighted_centroid(&cell_a, state.pbar, state.beta)?;
    let c_s = weighted_centroid(&s_poly, state.pbar, state.beta)?;
    let c_a_goal = if state.rotation_active {
        Some(weighted_centroid(&cell_a, cfg.goal, state.beta)?)
    } else {
        None
    };

    let stuck = c_a.point.dist(p_i) < cfg.adapt.d1 && c_a.point.dist(c_s.point) > cfg.adapt.d2;
    let new_beta = update_beta(
        state.beta,
        c_a.point,
        c_s.point,
        p_i,
        &cfg.adapt,
        floor.beta,
        cfg.control_period,
    );
    let (new_pbar, rotating) = update_pbar(
        state,
        c_a.point,
        c_s.point,
        c_a_goal.map(|c| c.point),
        p_i,
        cfg.goal,
        &cfg.adapt,
        cfg.control_period,
    );

    let c_f = weighted_centroid(&cell_f, new_pbar, new_beta)?;
    assert!(
        cell_f.contains(c_f.point),
        "commanded centroid must lie in the proximity cell"
    );
    let clearance = cell_f.boundary_distance(c_f.point).unwrap_or(0.0);

    let mut cmd = (c_f.point - p_i) * cfg.k_p;
    let speed = cmd.norm();
    if speed > cfg.v_max {
        cmd = cmd * (cfg.v_max / speed);
    }

    Ok(Decision {
        cmd,
        state: AdaptiveState {
            beta: new_beta,
            pbar: new_pbar,
            rotation_active: rotating,
        },
        diag: StepDiagnostics {
            c_a: c_a.point,
            c_s: c_s.point,
            c_f: c_f.point,
            beta_floor: floor.beta,
            clearance,
            d_u,
            margin_feasible: floor.feasible,
            stuck,
            rotating,
            area_fallback: c_a.area_fallback
                || c_s.area_fallback
                || c_f.area_fallback
                || c_a_goal.map_or(false, |c| c.area_fallback),
        },
        cell_f,
    })
}

/// First-order velocity tracking with slew limit and bounded disturbance:
/// the velocity slews toward `cmd + disturbance` at `a_max`, the position
/// integrates it. The disturbance displacement per step may not exceed the
/// tracking budget `d_u_track`.
pub fn track(
    state: &KinematicState,
    cmd: Vec2,
    dt: f64,
    disturbance: Vec2,
    cfg: &AgentConfig,
) -> Result<KinematicState, AgentError> {
    let displacement = disturbance.norm() * dt;
    if displacement > cfg.d_u_track + 1e-12 {
        return Err(AgentError::DisturbanceBudget {
            displacement,
            budget: cfg.d_u_track,
        });
    }
    let target = cmd + disturbance;
    let dv = target - state.velocity;
    let max_dv = cfg.a_max * dt;
    let velocity = if dv.norm() > max_dv {
        state.velocity + dv * (max_dv / dv.norm())
    } else {
        target
    };
    Ok(KinematicState {
        position: state.position + velocity * dt,
        velocity,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn robot_meas(id: usize, position: Point2, lambda: f64) -> Measurement {
        Measurement {
            target: TargetId::Robot(id),
            position,
            lambda_max: lambda,
            radius: 0.2,
        }
    }

    #[test]
    fn margin_combines_confidence_radii_and_tracking() {
        let m = margin_d_u(0.64, 1.0, 0.2, 0.2, 0.05);
        assert!((m - (0.8 + 0.4 + 0.05)).abs() < 1e-12);
        let prox_only = margin_d_u(0.64, 1.0, 0.0, 0.0, 0.05);
        assert!((prox_only - 0.85).abs() < 1e-12);
    }

    #[test]
    fn gate_drops_high_covariance() {
        let keep = robot_meas(0, Point2::new(3.0, 0.0), 14.9);
        let drop = robot_meas(1, Point2::new(2.0, 2.0), 16.0);
        let out = gate_and_reproject(&[keep, drop], Point2::ZERO, &BTreeMap::new(), 15.0);
        assert_eq!(out, vec![keep]);
    }

    #[test]
    fn reprojection_pulls_far_constrained_neighbor_inside_gamma() {
        let mut proximity = BTreeMap::new();
        proximity.insert(0usize, 10.0);
        let m = robot_meas(0, Point2::new(12.5, 0.0), 0.0);
        let out = gate_and_reproject(&[m], Point2::ZERO, &proximity, 15.0);
        assert!((out[0].position.norm() - 9.999).abs() < 1e-12);
        // Unconstrained neighbors pass through untouched.
        let m2 = robot_meas(1, Point2::new(12.5, 0.0), 0.0);
        let out2 = gate_and_reproject(&[m2], Point2::ZERO, &proximity, 15.0);
        assert_eq!(out2[0].position, Point2::new(12.5, 0.0));
    }

    #[test]
    fn bolder_weight_commands_larger_first_step() {
        // Head-on pair 4 m apart, goals behind each other: the cell with
        // epsilon = 1 reaches out to the neighbor, epsilon = 2 only halfway,
        // so the epsilon = 1 command is strictly larger.
        let mut cfg = AgentConfig {
            goal: Point2::new(40.0, 0.0),
            v_max: 100.0,
            d_u_fixed: Some(0.0),
            ..AgentConfig::default()
        };
        let state = AdaptiveState::new(cfg.goal, cfg.adapt.beta_d);
        let meas = [robot_meas(1, Point2::new(4.0, 0.0), 0.0)];
        cfg.cell.epsilon_p = 1.0;
        let bold = decide(Point2::ZERO, &state, &meas, &cfg).unwrap();
        cfg.cell.epsilon_p = 2.0;
        let shy = decide(Point2::ZERO, &state, &meas, &cfg).unwrap();
        assert!(
            bold.cmd.norm() > shy.cmd.norm() + 0.5,
            "bold {} shy {}",
            bold.cmd.norm(),
            shy.cmd.norm()
        );
    }

    #[test]
    fn decide_respects_fixed_margin() {
        let cfg = AgentConfig {
            goal: Point2::new(40.0, 0.0),
            d_u_fixed: Some(1.0),
            ..AgentConfig::default()
        };
        let state = AdaptiveState::new(cfg.goal, cfg.adapt.beta_d);
        let d = decide(Point2::ZERO, &state, &[], &cfg).unwrap();
        assert!(d.diag.margin_feasible);
        assert!(d.diag.clearance >= 1.0 - 0.02, "clearance {}", d.diag.clearance);
        assert!(d.cell_f.contains(d.diag.c_f));
    }

    #[test]
    fn decide_collision_state_propagates() {
        let cfg = AgentConfig::default();
        let state = AdaptiveState::new(cfg.goal, cfg.adapt.beta_d);
        let meas = [robot_meas(1, Point2::new(0.3, 0.0), 0.0)];
        let err = decide(Point2::ZERO, &state, &meas, &cfg).unwrap_err();
        assert!(matches!(err, AgentError::Cell(CellError::CollisionState { .. })));
    }

    #[test]
    fn track_advances_at_command_without_disturbance() {
        let cfg = AgentConfig::default();
        let state = KinematicState {
            position: Point2::ZERO,
            velocity: Point2::new(1.0, 0.0),
        };
        let next = track(&state, Point2::new(1.0, 0.0), 0.1, Point2::ZERO, &cfg).unwrap();
        assert!(next.position.dist(Point2::new(0.1, 0.0)) < 1e-15);
    }

    #[test]
    fn track_rejects_disturbance_beyond_budget() {
        let cfg = AgentConfig::default(); // d_u_track = 0.05
        let state = KinematicState::default();
        let err = track(&state, Point2::ZERO, 0.1, Point2::new(0.6, 0.0), &cfg).unwrap_err();
        assert!(matches!(err, AgentError::DisturbanceBudget { .. }));
        assert!(track(&state, Point2::ZERO, 0.1, Point2::new(0.5, 0.0), &cfg).is_ok());
    }

    #[test]
    fn track_slew_limits_velocity_change() {
        let cfg = AgentConfig::default(); // a_max = 2
        let state = KinematicState::default();
        let next = track(&state, Point2::new(1.5, 0.0), 0.1, Point2::ZERO, &cfg).unwrap();
        assert!((next.velocity.norm() - 0.2).abs() < 1e-12);
    }

    #[test]
    fn tracking_deviation_stays_within_budget() {
        // With a generous slew limit the per-step deviation from the
        // commanded displacement is exactly the disturbance displacement,
        // which the budget bounds.
        let cfg = AgentConfig {
            a_max: 1e6,
            d_u_track: 0.05,
            ..AgentConfig::default()
        };
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut state = KinematicState::default();
        let dt = 0.1;
        for _ in 0..1000 {
            let cmd = Point2::new(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5));
            let ang = rng.gen_range(0.0..std::f64::consts::TAU);
            let mag = rng.gen_range(0.0..cfg.d_u_track / dt);
            let disturbance = Point2::new(ang.cos(), ang.sin()) * mag;
            let next = track(&state, cmd, dt, disturbance, &cfg).unwrap();
            let deviation = next.position.dist(state.position + cmd * dt);
            assert!(deviation <= cfg.d_u_track + 1e-12);
            state = next;
        }
    }

    #[test]
    fn margin_split_invariance_is_bit_exact() {
        // Dyadic splits of the same total margin must yield bit-identical
        // decisions: the pipeline only consumes the sum, and with dyadic
        // operands every partial sum is exactly representable.
        let meas = [
            Measurement {
                target: TargetId::Robot(1),
                position: Point2::new(3.5, 1.0),
                lambda_max: 1.0,
                radius: 0.25,
            },
            Measurement {
                target: TargetId::Robot(2),
                position: Point2::new(-2.0, 2.5),
                lambda_max: 1.0,
                radius: 0.25,
            },
        ];
        let state = AdaptiveState::new(Point2::new(20.0, 5.0), 0.15);
        let splits = [(0.25, 0.75), (0.5, 0.5), (0.75, 0.25), (1.0, 0.0)];
        let mut outputs = Vec::new();
        for (k_sigma, d_u_track) in splits {
            let cfg = AgentConfig {
                goal: Point2::new(20.0, 5.0),
                k_sigma,
                d_u_track,
                cell: CellParams {
                    delta_self: 0.25,
                    ..CellParams::default()
                },
                ..AgentConfig::default()
            };
            outputs.push(decide(Point2::ZERO, &state, &meas, &cfg).unwrap());
        }
        for d in &outputs[1..] {
            assert_eq!(d, &outputs[0]);
        }
    }
}
