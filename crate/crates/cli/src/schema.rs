//! On-disk scenario format.
//!
//! A scenario file is JSON mirroring [`Scenario`] field for field, with
//! per-agent controller settings inlined. Unknown keys are rejected so
//! typos fail loudly instead of silently falling back to defaults.

use anyhow::{bail, Context, Result};
use rbl_core::agent::AgentConfig;
use rbl_core::cells::CellParams;
use rbl_core::geometry::Point2;
use rbl_core::simulator::{AgentSpec, LambdaMode, NoiseModel, Obstacle, ObstacleSensing, Scenario};
use rbl_core::weighting::{AdaptationParams, TurnSign};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::Path;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub format_version: u32,
    #[serde(default = "defaults::base_dt")]
    pub base_dt: f64,
    pub duration_max: f64,
    pub goal_tolerance: f64,
    pub seed: u64,
    pub noise: NoiseEntry,
    #[serde(default)]
    pub lambda_mode: LambdaModeEntry,
    #[serde(default)]
    pub obstacle_sensing: ObstacleSensingEntry,
    pub agents: Vec<AgentEntry>,
    #[serde(default)]
    pub obstacles: Vec<ObstacleEntry>,
    /// Symmetric proximity graph; omitted means no proximity constraints.
    #[serde(default)]
    pub adjacency: Option<Vec<Vec<bool>>>,
    /// Proximity bounds in meters where `adjacency` is true.
    #[serde(default)]
    pub gamma: Option<Vec<Vec<f64>>>,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct NoiseEntry {
    pub bound: f64,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq, Eq, Default)]
#[serde(rename_all = "snake_case")]
pub enum LambdaModeEntry {
    #[default]
    Saturated,
    PerDraw,
}

/// `"circle"` or `{"closest_point": {"delta": meters}}`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq, Default)]
#[serde(rename_all = "snake_case")]
pub enum ObstacleSensingEntry {
    #[default]
    Circle,
    ClosestPoint { delta: f64 },
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ObstacleEntry {
    pub center: [f64; 2],
    pub radius: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct AgentEntry {
    pub start: [f64; 2],
    pub goal: [f64; 2],
    #[serde(default = "defaults::delta")]
    pub delta: f64,
    #[serde(default = "defaults::k_p")]
    pub k_p: f64,
    #[serde(default = "defaults::v_max")]
    pub v_max: f64,
    #[serde(default = "defaults::a_max")]
    pub a_max: f64,
    #[serde(default = "defaults::control_period")]
    pub control_period: f64,
    #[serde(default = "defaults::d_u_track")]
    pub d_u_track: f64,
    #[serde(default = "defaults::k_sigma")]
    pub k_sigma: f64,
    #[serde(default = "defaults::lambda_gate")]
    pub lambda_gate: f64,
    /// Fixed clearance margin in meters; omit to derive from covariances.
    #[serde(default)]
    pub d_u_fixed: Option<f64>,
    #[serde(default = "defaults::epsilon")]
    pub epsilon_robots: f64,
    #[serde(default = "defaults::epsilon")]
    pub epsilon_obstacles: f64,
    #[serde(default = "defaults::sensing_radius")]
    pub sensing_radius: f64,
    #[serde(default = "defaults::disc_sides")]
    pub disc_sides: usize,
    #[serde(default)]
    pub adaptation: AdaptationEntry,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct AdaptationEntry {
    pub beta_d: f64,
    pub k_beta: f64,
    pub k_e: f64,
    pub d1: f64,
    pub d2: f64,
    pub d3: f64,
    pub d4: f64,
    pub eps_rot: f64,
    pub turn: TurnEntry,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum TurnEntry {
    Left,
    Right,
}

impl Default for AdaptationEntry {
    fn default() -> Self {
        AdaptationEntry::from_core(&AdaptationParams::default())
    }
}

impl AdaptationEntry {
    fn from_core(p: &AdaptationParams) -> Self {
        AdaptationEntry {
            beta_d: p.beta_d,
            k_beta: p.k_beta,
            k_e: p.k_e,
            d1: p.d1,
            d2: p.d2,
            d3: p.d3,
            d4: p.d4,
            eps_rot: p.eps_rot,
            turn: match p.turn_sign {
                TurnSign::Left => TurnEntry::Left,
                TurnSign::Right => TurnEntry::Right,
            },
        }
    }

    fn to_core(self) -> AdaptationParams {
        AdaptationParams {
            beta_d: self.beta_d,
            k_beta: self.k_beta,
            k_e: self.k_e,
            d1: self.d1,
            d2: self.d2,
            d3: self.d3,
            d4: self.d4,
            eps_rot: self.eps_rot,
            turn_sign: match self.turn {
                TurnEntry::Left => TurnSign::Left,
                TurnEntry::Right => TurnSign::Right,
            },
        }
    }
}

mod defaults {
    pub fn base_dt() -> f64 {
        0.01
    }
    pub fn delta() -> f64 {
        0.2
    }
    pub fn k_p() -> f64 {
        1.0
    }
    pub fn v_max() -> f64 {
        1.5
    }
    pub fn a_max() -> f64 {
        2.0
    }
    pub fn control_period() -> f64 {
        0.1
    }
    pub fn d_u_track() -> f64 {
        0.05
    }
    pub fn k_sigma() -> f64 {
        1.0
    }
    pub fn lambda_gate() -> f64 {
        15.0
    }
    pub fn epsilon() -> f64 {
        1.0
    }
    pub fn sensing_radius() -> f64 {
        5.0
    }
    pub fn disc_sides() -> usize {
        64
    }
}

fn pt(a: [f64; 2]) -> Point2 {
    Point2::new(a[0], a[1])
}

fn arr(p: Point2) -> [f64; 2] {
    [p.x, p.y]
}

impl ScenarioFile {
    pub fn load(path: &Path) -> Result<ScenarioFile> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading {}", path.display()))?;
        let file: ScenarioFile =
            serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
        Ok(file)
    }

    pub fn to_scenario(&self) -> Result<Scenario> {
        if self.format_version != FORMAT_VERSION {
            bail!(
                "unsupported format_version {} (expected {FORMAT_VERSION})",
                self.format_version
            );
        }
        let n = self.agents.len();
        let adjacency = match &self.adjacency {
            Some(m) => m.clone(),
            None => vec![vec![false; n]; n],
        };
        let gamma = match &self.gamma {
            Some(m) => m.clone(),
            None => vec![vec![0.0; n]; n],
        };
        let agents = self
            .agents
            .iter()
            .map(|a| AgentSpec {
                start: pt(a.start),
                config: AgentConfig {
                    goal: pt(a.goal),
                    k_p: a.k_p,
                    v_max: a.v_max,
                    a_max: a.a_max,
                    control_period: a.control_period,
                    d_u_track: a.d_u_track,
                    k_sigma: a.k_sigma,
                    lambda_gate: a.lambda_gate,
                    d_u_fixed: a.d_u_fixed,
                    // Filled from the matrices by the simulator.
                    proximity: BTreeMap::new(),
                    cell: CellParams {
                        epsilon_p: a.epsilon_robots,
                        epsilon_o: a.epsilon_obstacles,
                        delta_self: a.delta,
                        sensing_radius: a.sensing_radius,
                        disc_sides: a.disc_sides,
                    },
                    adapt: a.adaptation.to_core(),
                },
            })
            .collect();
        let scenario = Scenario {
            agents,
            obstacles: self
                .obstacles
                .iter()
                .map(|o| Obstacle {
                    center: pt(o.center),
                    radius: o.radius,
                })
                .collect(),
            adjacency,
            gamma,
            noise: NoiseModel {
                bound: self.noise.bound,
            },
            lambda_mode: match self.lambda_mode {
                LambdaModeEntry::Saturated => LambdaMode::Saturated,
                LambdaModeEntry::PerDraw => LambdaMode::PerDraw,
            },
            obstacle_sensing: match self.obstacle_sensing {
                ObstacleSensingEntry::Circle => ObstacleSensing::Circle,
                ObstacleSensingEntry::ClosestPoint { delta } => {
                    ObstacleSensing::ClosestPoint { delta }
                }
            },
            base_dt: self.base_dt,
            duration_max: self.duration_max,
            goal_tolerance: self.goal_tolerance,
            seed: self.seed,
        };
        scenario.validate().map_err(anyhow::Error::from)?;
        Ok(scenario)
    }

    pub fn from_scenario(s: &Scenario) -> ScenarioFile {
        ScenarioFile {
            format_version: FORMAT_VERSION,
            base_dt: s.base_dt,
            duration_max: s.duration_max,
            goal_tolerance: s.goal_tolerance,
            seed: s.seed,
            noise: NoiseEntry {
                bound: s.noise.bound,
            },
            lambda_mode: match s.lambda_mode {
                LambdaMode::Saturated => LambdaModeEntry::Saturated,
                LambdaMode::PerDraw => LambdaModeEntry::PerDraw,
            },
            obstacle_sensing: match s.obstacle_sensing {
                ObstacleSensing::Circle => ObstacleSensingEntry::Circle,
                ObstacleSensing::ClosestPoint { delta } => {
                    ObstacleSensingEntry::ClosestPoint { delta }
                }
            },
            agents: s
                .agents
                .iter()
                .map(|a| AgentEntry {
                    start: arr(a.start),
                    goal: arr(a.config.goal),
                    delta: a.config.cell.delta_self,
                    k_p: a.config.k_p,
                    v_max: a.config.v_max,
                    a_max: a.config.a_max,
                    control_period: a.config.control_period,
                    d_u_track: a.config.d_u_track,
                    k_sigma: a.config.k_sigma,
                    lambda_gate: a.config.lambda_gate,
                    d_u_fixed: a.config.d_u_fixed,
                    epsilon_robots: a.config.cell.epsilon_p,
                    epsilon_obstacles: a.config.cell.epsilon_o,
                    sensing_radius: a.config.cell.sensing_radius,
                    disc_sides: a.config.cell.disc_sides,
                    adaptation: AdaptationEntry::from_core(&a.config.adapt),
                })
                .collect(),
            obstacles: s
                .obstacles
                .iter()
                .map(|o| ObstacleEntry {
                    center: arr(o.center),
                    radius: o.radius,
                })
                .collect(),
            adjacency: Some(s.adjacency.clone()),
            gamma: Some(s.gamma.clone()),
        }
    }
}
