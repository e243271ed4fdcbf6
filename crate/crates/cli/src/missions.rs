//! Programmatic scenario builders: a square flock crossing a random disc
//! forest, and a two-robot corridor transit. The bundled scenario files are
//! generated from these (see the ignored `regenerate` test), and the
//! integration suites reuse them with parameter overrides.

use rbl_core::agent::AgentConfig;
use rbl_core::cells::CellParams;
use rbl_core::geometry::Point2;
use rbl_core::simulator::{
    generate_forest, AgentSpec, LambdaMode, NoiseModel, ObstacleSensing, Scenario,
};
use rbl_core::weighting::AdaptationParams;
use std::collections::BTreeMap;

/// Square flock mission parameters. Defaults: nine robots in a 3 x 3 grid
/// with grid-neighbor proximity bounds, goals 24 m east, bounded sensing
/// noise covered by covariance-derived margins, and a ten-disc forest in
/// between.
#[derive(Debug, Clone)]
pub struct GridOpts {
    pub side: usize,
    pub spacing: f64,
    pub goal_dx: f64,
    pub noise_bound: f64,
    pub d_u_fixed: Option<f64>,
    pub d_u_track: f64,
    pub epsilon: f64,
    pub gamma: f64,
    pub forest_count: usize,
    /// Free space between obstacle surfaces and around keepouts, meters.
    pub forest_gap: f64,
    pub forest_seed: u64,
    pub duration_max: f64,
    pub seed: u64,
}

impl Default for GridOpts {
    fn default() -> Self {
        GridOpts {
            side: 3,
            spacing: 2.0,
            goal_dx: 24.0,
            noise_bound: 0.8,
            d_u_fixed: None,
            d_u_track: 0.05,
            epsilon: 1.0,
            gamma: 10.0,
            forest_count: 10,
            forest_gap: 3.0,
            forest_seed: 1,
            duration_max: 90.0,
            seed: 1,
        }
    }
}

pub fn grid_mission(opts: &GridOpts) -> Scenario {
    let side = opts.side;
    let n = side * side;
    let offset = (side as f64 - 1.0) / 2.0;
    let mut starts = Vec::with_capacity(n);
    for row in 0..side {
        for col in 0..side {
            starts.push(Point2::new(
                col as f64 * opts.spacing,
                (row as f64 - offset) * opts.spacing,
            ));
        }
    }
    let goal_shift = Point2::new(opts.goal_dx, 0.0);

    let mut adjacency = vec![vec![false; n]; n];
    let mut gamma = vec![vec![0.0; n]; n];
    for r0 in 0..side {
        for c0 in 0..side {
            for (r1, c1) in [(r0 + 1, c0), (r0, c0 + 1)] {
                if r1 < side && c1 < side {
                    let (i, j) = (r0 * side + c0, r1 * side + c1);
                    adjacency[i][j] = true;
                    adjacency[j][i] = true;
                    gamma[i][j] = opts.gamma;
                    gamma[j][i] = opts.gamma;
                }
            }
        }
    }

    let obstacle_radius = 0.15;
    let x_lo = (side as f64 - 1.0) * opts.spacing + 3.0;
    let x_hi = opts.goal_dx - 3.0;
    let y_span = offset * opts.spacing + 4.0;
    let keepout: Vec<Point2> = starts
        .iter()
        .copied()
        .chain(starts.iter().map(|&s| s + goal_shift))
        .collect();
    let obstacles = if opts.forest_count > 0 {
        generate_forest(
            opts.forest_seed,
            Point2::new(x_lo, -y_span),
            Point2::new(x_hi, y_span),
            opts.forest_count,
            obstacle_radius,
            opts.forest_gap,
            &keepout,
        )
        .expect("forest parameters leave room for every obstacle")
    } else {
        Vec::new()
    };

    let agents = starts
        .iter()
        .map(|&start| AgentSpec {
            start,
            config: AgentConfig {
                goal: start + goal_shift,
                d_u_track: opts.d_u_track,
                d_u_fixed: opts.d_u_fixed,
                proximity: BTreeMap::new(),
                cell: CellParams {
                    epsilon_p: opts.epsilon,
                    epsilon_o: opts.epsilon,
                    ..CellParams::default()
                },
                ..AgentConfig::default()
            },
        })
        .collect();

    Scenario {
        agents,
        obstacles,
        adjacency,
        gamma,
        noise: NoiseModel {
            bound: opts.noise_bound,
        },
        lambda_mode: LambdaMode::Saturated,
        obstacle_sensing: ObstacleSensing::default(),
        base_dt: 0.01,
        duration_max: opts.duration_max,
        goal_tolerance: 0.3,
        seed: opts.seed,
    }
}

/// Two large robots traveling abreast through a two-disc bottleneck with a
/// proximity bound between them. Exact sensing, fixed clearance margin;
/// the pairwise weight is the interesting knob.
pub fn corridor_pair(epsilon: f64) -> Scenario {
    let adapt = AdaptationParams {
        beta_d: 0.5,
        d1: 0.5,
        d3: 0.5,
        ..AdaptationParams::default()
    };
    let cell = |eps| CellParams {
        epsilon_p: eps,
        epsilon_o: eps,
        delta_self: 0.5,
        sensing_radius: 4.5,
        disc_sides: 64,
    };
    let mk = |start: Point2, goal: Point2| AgentSpec {
        start,
        config: AgentConfig {
            goal,
            d_u_fixed: Some(0.8),
            d_u_track: 0.0,
            cell: cell(epsilon),
            adapt: adapt.clone(),
            ..AgentConfig::default()
        },
    };
    Scenario {
        agents: vec![
            mk(Point2::new(0.0, 1.1), Point2::new(20.0, 1.1)),
            mk(Point2::new(0.0, -1.1), Point2::new(20.0, -1.1)),
        ],
        obstacles: vec![
            rbl_core::simulator::Obstacle {
                center: Point2::new(10.0, 2.6),
                radius: 0.75,
            },
            rbl_core::simulator::Obstacle {
                center: Point2::new(10.0, -2.6),
                radius: 0.75,
            },
        ],
        adjacency: vec![vec![false, true], vec![true, false]],
        gamma: vec![vec![0.0, 8.0], vec![8.0, 0.0]],
        noise: NoiseModel { bound: 0.0 },
        lambda_mode: LambdaMode::Saturated,
        obstacle_sensing: ObstacleSensing::default(),
        base_dt: 0.01,
        duration_max: 60.0,
        goal_tolerance: 0.3,
        seed: 3,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schema::ScenarioFile;
    use std::path::{Path, PathBuf};

    fn bundled_path() -> PathBuf {
        Path::new(env!("CARGO_MANIFEST_DIR")).join("../../scenarios/n9_grid.json")
    }

    #[test]
    #[ignore = "rewrites the bundled scenario; run manually after changing the builder"]
    fn regenerate_bundled_scenario() {
        let path = bundled_path();
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        let file = ScenarioFile::from_scenario(&grid_mission(&GridOpts::default()));
        let mut text = serde_json::to_string_pretty(&file).unwrap();
        text.push('\n');
        std::fs::write(&path, text).unwrap();
    }

    #[test]
    fn bundled_scenario_matches_builder() {
        let file = ScenarioFile::load(&bundled_path()).unwrap();
        assert_eq!(
            file.to_scenario().unwrap(),
            grid_mission(&GridOpts::default()),
            "scenarios/n9_grid.json is stale; rerun regenerate_bundled_scenario"
        );
    }

    #[test]
    fn grid_mission_is_valid_and_symmetric() {
        let scenario = grid_mission(&GridOpts::default());
        scenario.validate().unwrap();
        assert_eq!(scenario.agents.len(), 9);
        assert_eq!(scenario.obstacles.len(), 10);
        // Center robot has four grid neighbors.
        let center = 4;
        let deg: usize = scenario.adjacency[center].iter().filter(|&&b| b).count();
        assert_eq!(deg, 4);
        // Corners have two.
        let deg0: usize = scenario.adjacency[0].iter().filter(|&&b| b).count();
        assert_eq!(deg0, 2);
    }

    #[test]
    fn corridor_pair_is_valid() {
        let scenario = corridor_pair(1.052);
        scenario.validate().unwrap();
        assert_eq!(scenario.agents.len(), 2);
        assert!((scenario.agents[0].start.dist(scenario.agents[1].start) - 2.2).abs() < 1e-12);
    }
}
