//! Minimal trajectory plot: one polyline per agent over obstacle discs,
//! with start and goal markers. Pure string assembly, no drawing library.

use rbl_core::geometry::Point2;
use rbl_core::simulator::{Scenario, TraceRow};
use std::fmt::Write;

const PALETTE: [&str; 9] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
    "#bcbd22",
];
const WIDTH: f64 = 900.0;
const HEIGHT: f64 = 640.0;
const PAD: f64 = 30.0;

struct Frame {
    min: Point2,
    scale: f64,
}

impl Frame {
    fn map(&self, p: Point2) -> (f64, f64) {
        // Flip y so north is up.
        (
            PAD + (p.x - self.min.x) * self.scale,
            HEIGHT - PAD - (p.y - self.min.y) * self.scale,
        )
    }
}

pub fn render(rows: &[TraceRow], scenario: &Scenario) -> String {
    let n = scenario.agents.len();
    let mut min = Point2::new(f64::INFINITY, f64::INFINITY);
    let mut max = Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    let mut extend = |p: Point2, r: f64| {
        min.x = min.x.min(p.x - r);
        min.y = min.y.min(p.y - r);
        max.x = max.x.max(p.x + r);
        max.y = max.y.max(p.y + r);
    };
    for row in rows {
        extend(row.position, 0.0);
    }
    for o in &scenario.obstacles {
        extend(o.center, o.radius);
    }
    for a in &scenario.agents {
        extend(a.start, 0.0);
        extend(a.config.goal, 0.0);
    }
    let span_x = (max.x - min.x).max(1e-6);
    let span_y = (max.y - min.y).max(1e-6);
    let scale = ((WIDTH - 2.0 * PAD) / span_x).min((HEIGHT - 2.0 * PAD) / span_y);
    let frame = Frame { min, scale };

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);

    for o in &scenario.obstacles {
        let (cx, cy) = frame.map(o.center);
        let _ = writeln!(
            out,
            r##"<circle cx="{cx:.1}" cy="{cy:.1}" r="{:.1}" fill="#b0b0b0" stroke="#707070"/>"##,
            o.radius * scale
        );
    }

    for i in 0..n {
        let color = PALETTE[i % PALETTE.len()];
        let mut d = String::new();
        // Every fifth sample keeps files small without visible loss.
        for row in rows.iter().filter(|r| r.agent == i).step_by(5) {
            let (x, y) = frame.map(row.position);
            let _ = write!(d, "{x:.1},{y:.1} ");
        }
        let _ = writeln!(
            out,
            r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="1.5"/>"#,
            d.trim_end()
        );
        let (sx, sy) = frame.map(scenario.agents[i].start);
        let _ = writeln!(
            out,
            r#"<circle cx="{sx:.1}" cy="{sy:.1}" r="4" fill="{color}"/>"#
        );
        let (gx, gy) = frame.map(scenario.agents[i].config.goal);
        let _ = writeln!(
            out,
            r#"<circle cx="{gx:.1}" cy="{gy:.1}" r="5" fill="none" stroke="{color}" stroke-width="2"/>"#
        );
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rbl_core::agent::AgentConfig;
    use rbl_core::simulator::{AgentSpec, LambdaMode, NoiseModel, Obstacle, ObstacleSensing};

    #[test]
    fn render_emits_one_polyline_per_agent() {
        let scenario = Scenario {
            agents: vec![
                AgentSpec {
                    start: Point2::ZERO,
                    config: AgentConfig {
                        goal: Point2::new(5.0, 0.0),
                        ..AgentConfig::default()
                    },
                },
                AgentSpec {
                    start: Point2::new(0.0, 3.0),
                    config: AgentConfig {
                        goal: Point2::new(5.0, 3.0),
                        ..AgentConfig::default()
                    },
                },
            ],
            obstacles: vec![Obstacle {
                center: Point2::new(2.5, 1.5),
                radius: 0.3,
            }],
            adjacency: vec![vec![false; 2]; 2],
            gamma: vec![vec![0.0; 2]; 2],
            noise: NoiseModel { bound: 0.0 },
            lambda_mode: LambdaMode::Saturated,
            obstacle_sensing: ObstacleSensing::default(),
            base_dt: 0.01,
            duration_max: 1.0,
            goal_tolerance: 0.3,
            seed: 1,
        };
        let rows: Vec<TraceRow> = (0..20u64)
            .flat_map(|tick| {
                (0..2usize).map(move |agent| TraceRow {
                    tick,
                    t: tick as f64 * 0.01,
                    agent,
                    position: Point2::new(tick as f64 * 0.1, agent as f64 * 3.0),
                    cmd: Point2::ZERO,
                    beta: 0.15,
                    clearance: 0.0,
                })
            })
            .collect();
        let svg = render(&rows, &scenario);
        assert_eq!(svg.matches("<polyline").count(), 2);
        assert_eq!(svg.matches("<circle").count(), 1 + 4);
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
    }
}
