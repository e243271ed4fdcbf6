//! Exponentially weighted centroids and the adaptation laws steering them.
//!
//! The control target inside a cell is the centroid of the weight
//! `phi(q) = exp(-|q - pbar| / beta)`: `pbar` is a moving attractor (usually
//! the goal), `beta` the greediness. Small `beta` concentrates mass near the
//! cell boundary closest to `pbar` (bold moves), large `beta` recovers the
//! area centroid (cautious moves).
//!
//! Centroid integrals are evaluated in polar form around `pbar`: for each
//! polygon edge the radial integral of `exp(-r/beta) r^k` has a closed form,
//! leaving a 1D angular integral per edge that Gauss-Legendre panels resolve
//! to near machine precision. Panels are refined until the centroid moves
//! less than [`CONVERGENCE_TOL`] between refinement levels. The decomposition
//! is exact for any `pbar`: edges seen from `pbar` contribute signed sectors.
//!
//! [`beta_min`] inverts the relationship clearance-vs-beta: it searches for
//! the greediness whose centroid keeps a requested distance `d_u` to the
//! cell boundary, the knob that absorbs measurement and tracking error.

use crate::geometry::{ConvexRegion, GeometryError, Point2};
use thiserror::Error;

/// Centroid movement between refinement levels below which the quadrature
/// is considered converged, meters.
pub const CONVERGENCE_TOL: f64 = 1e-4;
/// `exp(-x)` underflows to zero for `x > 745`; beyond this every weight in
/// the region is numerically zero and the area centroid takes over.
const UNDERFLOW_LOG_LIMIT: f64 = 690.0;
/// Default greediness search window, dimensionless scale in meters.
pub const BETA_SEARCH_LO: f64 = 1e-3;
pub const BETA_SEARCH_HI: f64 = 1e3;

#[derive(Debug, Error, PartialEq)]
pub enum WeightingError {
    #[error("weighted centroid of an empty region")]
    EmptyRegion,
    #[error("beta must be positive, got {0}")]
    NonPositiveBeta(f64),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Exponential Laplacian weight `exp(-|q - pbar| / beta)`.
pub fn phi(q: Point2, pbar: Point2, beta: f64) -> f64 {
    (-q.dist(pbar) / beta).exp()
}

/// Result of [`weighted_centroid`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightedCentroid {
    pub point: Point2,
    /// True when every weight underflowed and the unweighted area centroid
    /// was returned instead.
    pub area_fallback: bool,
}

/// Centroid of `phi` over a convex region.
///
/// The returned point always lies inside the region (quadrature round-off
/// is projected back onto the boundary).
pub fn weighted_centroid(
    region: &ConvexRegion,
    pbar: Point2,
    beta: f64,
) -> Result<WeightedCentroid, WeightingError> {
    if region.is_empty() {
        return Err(WeightingError::EmptyRegion);
    }
    if !(beta > 0.0) {
        return Err(WeightingError::NonPositiveBeta(beta));
    }
    let r_ref = region.distance_to(pbar)?;
    if r_ref / beta > UNDERFLOW_LOG_LIMIT {
        let point = region.area_centroid().expect("non-empty region");
        return Ok(WeightedCentroid {
            point,
            area_fallback: true,
        });
    }
    let mut prev: Option<Point2> = None;
    let mut point = region.area_centroid().expect("non-empty region");
    for level in 0..8 {
        let engine = SectorQuadrature::build(region, pbar, 1usize << level);
        point = engine.centroid(beta);
        if let Some(p) = prev {
            if p.dist(point) < CONVERGENCE_TOL {
                break;
            }
        }
        prev = Some(point);
    }
    if !region.contains(point) {
        point = region
            .closest_boundary_point(point)
            .expect("non-empty region");
    }
    Ok(WeightedCentroid {
        point,
        area_fallback: false,
    })
}

/// Result of [`beta_min`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BetaMinResult {
    /// Greediness floor achieving (or best approximating) the clearance target.
    pub beta: f64,
    /// Clearance of the weighted centroid at that floor, meters.
    pub clearance: f64,
    /// True when the clearance target `d_u` is met (within 1 mm).
    pub feasible: bool,
}

/// Smallest-greediness search: finds `beta` minimizing
/// `(clearance(beta) - d_u)^2`, where `clearance(beta)` is the boundary
/// distance of the weighted centroid. A 32-point log-spaced scan over
/// `[BETA_SEARCH_LO, BETA_SEARCH_HI]` brackets the optimum and golden-section
/// refines it. When no `beta` reaches `d_u`, the same objective lands on the
/// clearance-maximizing `beta` (conservative fallback).
pub fn beta_min(
    region: &ConvexRegion,
    pbar: Point2,
    d_u: f64,
) -> Result<BetaMinResult, WeightingError> {
    if region.is_empty() {
        return Err(WeightingError::EmptyRegion);
    }
    let r_ref = region.distance_to(pbar)?;
    let area_clearance = {
        let c = region.area_centroid().expect("non-empty region");
        region.boundary_distance(c).unwrap_or(0.0)
    };
    let engine = SectorQuadrature::build(region, pbar, 2);
    let clearance_of = |t: f64| -> f64 {
        let beta = t.exp();
        if r_ref / beta > UNDERFLOW_LOG_LIMIT {
            return area_clearance;
        }
        let mut c = engine.centroid(beta);
        if !region.contains(c) {
            c = region.closest_boundary_point(c).expect("non-empty region");
        }
        region.boundary_distance(c).unwrap_or(0.0)
    };
    let objective = |t: f64| -> f64 {
        let c = clearance_of(t);
        (c - d_u) * (c - d_u)
    };

    let t_lo = BETA_SEARCH_LO.ln();
    let t_hi = BETA_SEARCH_HI.ln();
    const SCAN: usize = 32;
    let mut best_i = 0;
    let mut best_val = f64::INFINITY;
    for i in 0..SCAN {
        let t = t_lo + (t_hi - t_lo) * i as f64 / (SCAN - 1) as f64;
        let v = objective(t);
        if v < best_val {
            best_val = v;
            best_i = i;
        }
    }
    let step = (t_hi - t_lo) / (SCAN - 1) as f64;
    let a = t_lo + step * best_i.saturating_sub(1) as f64;
    let b = (t_lo + step * (best_i + 1) as f64).min(t_hi);
    let t_star = golden_section_min(objective, a, b, 2e-3);
    let beta = t_star.exp();
    let clearance = clearance_of(t_star);
    Ok(BetaMinResult {
        beta,
        clearance,
        feasible: clearance >= d_u - 1e-3,
    })
}

/// Golden-section minimizer on `[a, b]`, stopping at interval width `tol`.
fn golden_section_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while (b - a).abs() > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    let mid = 0.5 * (a + b);
    let fm = f(mid);
    if fm <= fc && fm <= fd {
        mid
    } else if fc <= fd {
        c
    } else {
        d
    }
}

/// Which way a blocked robot rotates its attractor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TurnSign {
    Left,
    Right,
}

/// Gains and thresholds of the greediness / attractor dynamics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdaptationParams {
    /// Relaxed greediness the dynamics return to, meters.
    pub beta_d: f64,
    /// First-order rate of the greediness dynamics, 1/s.
    pub k_beta: f64,
    /// First-order rate of the attractor dynamics, 1/s.
    pub k_e: f64,
    /// Stuck test: `|c_A - p_i| < d1` (greediness branch), meters.
    pub d1: f64,
    /// Stuck test: `|c_A - c_S| > d2` (greediness branch), meters.
    pub d2: f64,
    /// Stuck test: `|c_A - p_i| < d3` (rotation branch), meters.
    pub d3: f64,
    /// Stuck test: `|c_A - c_S| > d4` (rotation branch), meters.
    pub d4: f64,
    /// Rotation angle defect: attractor turns by `pi/2 - eps_rot`, radians.
    pub eps_rot: f64,
    pub turn_sign: TurnSign,
}

impl Default for AdaptationParams {
    fn default() -> Self {
        AdaptationParams {
            beta_d: 0.15,
            k_beta: 1.0,
            k_e: 1.0,
            d1: 1.0,
            d2: 1.0,
            d3: 1.0,
            d4: 1.0,
            eps_rot: 0.05,
            turn_sign: TurnSign::Right,
        }
    }
}

/// Per-robot adaptive quantities carried between control steps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdaptiveState {
    pub beta: f64,
    pub pbar: Point2,
    /// True while the attractor chases the rotated goal.
    pub rotation_active: bool,
}

impl AdaptiveState {
    /// Fresh state: attractor on the goal, relaxed greediness.
    pub fn new(goal: Point2, beta_d: f64) -> Self {
        AdaptiveState {
            beta: beta_d,
            pbar: goal,
            rotation_active: false,
        }
    }
}

/// One Euler step of the greediness dynamics, clamped from below.
///
/// Stuck (constrained centroid pinned at the robot while far from the free
/// centroid): decay toward zero, sharpening the weight. Otherwise relax
/// toward `beta_d`. Equalities fall into the relax branch.
pub fn update_beta(
    beta: f64,
    c_a: Point2,
    c_s: Point2,
    p_i: Point2,
    params: &AdaptationParams,
    beta_floor: f64,
    dt: f64,
) -> f64 {
    let stuck = c_a.dist(p_i) < params.d1 && c_a.dist(c_s) > params.d2;
    let beta_dot = if stuck {
        -params.k_beta * beta
    } else {
        -params.k_beta * (beta - params.beta_d)
    };
    (beta + beta_dot * dt).max(beta_floor)
}

/// One Euler step of the attractor dynamics.
///
/// Blocked robots chase a copy of the goal rotated almost 90 degrees around
/// themselves (sign per `turn_sign`), which slides them along obstacle
/// fronts; free robots relax the attractor back to the goal. Once rotation
/// is active, the attractor snaps back to the goal the moment steering
/// toward the goal again beats the rotated detour (`|p_i - c_A(goal)| >
/// |p_i - c_A|`). Returns the new attractor and rotation flag.
pub fn update_pbar(
    state: &AdaptiveState,
    c_a: Point2,
    c_s: Point2,
    c_a_goal: Option<Point2>,
    p_i: Point2,
    goal: Point2,
    params: &AdaptationParams,
    dt: f64,
) -> (Point2, bool) {
    let blocked = c_a.dist(p_i) < params.d3 && c_a.dist(c_s) > params.d4;
    let target = if blocked {
        let angle = match params.turn_sign {
            TurnSign::Left => std::f64::consts::FRAC_PI_2 - params.eps_rot,
            TurnSign::Right => -(std::f64::consts::FRAC_PI_2 - params.eps_rot),
        };
        p_i + (goal - p_i).rotated(angle)
    } else {
        goal
    };
    let mut pbar = state.pbar - (state.pbar - target) * (params.k_e * dt);
    let mut active = blocked;
    if state.rotation_active {
        if let Some(cg) = c_a_goal {
            if p_i.dist(cg) > p_i.dist(c_a) {
                pbar = goal;
                active = false;
            }
        }
    }
    (pbar, active)
}

/// Precomputed angular quadrature nodes for one `(region, pbar)` pair.
///
/// Each polygon edge seen from `pbar` is a signed circular sector; nodes
/// store the ray angle, boundary distance along the ray, and Gauss weight
/// (sign folded in), so evaluating a new `beta` costs one `exp` per node.
struct SectorQuadrature {
    nodes: Vec<SectorNode>,
    pbar: Point2,
    inside: bool,
    r_ref: f64,
}

struct SectorNode {
    cos_t: f64,
    sin_t: f64,
    /// Boundary distance along the ray, meters.
    r: f64,
    /// Gauss weight times panel half-width times sector sign.
    w: f64,
}

/// 8-point Gauss-Legendre rule on [-1, 1].
const GL_X: [f64; 8] = [
    -0.960_289_856_497_536_2,
    -0.796_666_477_413_626_7,
    -0.525_532_409_916_329_0,
    -0.183_434_642_495_649_8,
    0.183_434_642_495_649_8,
    0.525_532_409_916_329_0,
    0.796_666_477_413_626_7,
    0.960_289_856_497_536_2,
];
const GL_W: [f64; 8] = [
    0.101_228_536_290_376_3,
    0.222_381_034_453_374_5,
    0.313_706_645_877_887_3,
    0.362_683_783_378_362_0,
    0.362_683_783_378_362_0,
    0.313_706_645_877_887_3,
    0.222_381_034_453_374_5,
    0.101_228_536_290_376_3,
];

/// Panels never exceed this aperture, radians.
const MAX_APERTURE: f64 = 0.4;

impl SectorQuadrature {
    fn build(region: &ConvexRegion, pbar: Point2, min_panels: usize) -> Self {
        let inside = region.contains(pbar);
        let r_ref = if inside {
            0.0
        } else {
            region.distance_to(pbar).unwrap_or(0.0)
        };
        let mut nodes = Vec::new();
        for (a, b) in region.edges() {
            let va = a - pbar;
            let vb = b - pbar;
            let na = va.norm();
            let nb = vb.norm();
            if na < 1e-12 || nb < 1e-12 {
                continue;
            }
            // Signed aperture of the edge as seen from pbar.
            let dphi = va.cross(vb).atan2(va.dot(vb));
            if dphi.abs() < 1e-14 {
                continue;
            }
            let theta_a = va.angle();
            let e = b - a;
            let numer = e.cross(a - pbar);
            let panels = ((dphi.abs() / MAX_APERTURE).ceil() as usize).max(min_panels);
            let h = dphi / panels as f64;
            for p in 0..panels {
                let mid = theta_a + h * (p as f64 + 0.5);
                let half = 0.5 * h;
                for (x, wq) in GL_X.iter().zip(GL_W.iter()) {
                    let theta = mid + half * x;
                    let (sin_t, cos_t) = theta.sin_cos();
                    let denom = e.cross(Point2::new(cos_t, sin_t));
                    if denom.abs() < 1e-14 {
                        continue;
                    }
                    let r = (numer / denom).max(0.0);
                    nodes.push(SectorNode {
                        cos_t,
                        sin_t,
                        r,
                        // half carries the sector sign through dphi.
                        w: wq * half,
                    });
                }
            }
        }
        SectorQuadrature {
            nodes,
            pbar,
            inside,
            r_ref,
        }
    }

    /// Weighted centroid at `beta` using the precomputed nodes.
    fn centroid(&self, beta: f64) -> Point2 {
        let mut mass = 0.0;
        let mut mx = 0.0;
        let mut my = 0.0;
        if self.inside {
            // Stable for every beta: the integrands vanish at x = 0, so no
            // constant terms cancel across sectors.
            for n in &self.nodes {
                let x = n.r / beta;
                let (g1, g2) = gamma_lower_23(x);
                mass += n.w * g1;
                mx += n.w * n.cos_t * g2;
                my += n.w * n.sin_t * g2;
            }
        } else {
            // Shift by the closest-approach distance; the common factor
            // exp(-r_ref/beta) cancels in the centroid ratio.
            let s = self.r_ref / beta;
            for n in &self.nodes {
                let x = n.r / beta;
                let e = (s - x).exp();
                let e1 = e * (1.0 + x);
                let e2 = e * (2.0 + x * (2.0 + x));
                mass -= n.w * e1;
                mx -= n.w * n.cos_t * e2;
                my -= n.w * n.sin_t * e2;
            }
        }
        if !(mass.abs() > 1e-300) {
            return self.pbar;
        }
        self.pbar + Point2::new(mx / mass, my / mass) * beta
    }
}

/// Stable `(gamma(2, x), gamma(3, x))`: radial moments
/// `int_0^x t e^-t dt = 1 - e^-x (1 + x)` and
/// `int_0^x t^2 e^-t dt = 2 - e^-x (2 + 2x + x^2)`.
fn gamma_lower_23(x: f64) -> (f64, f64) {
    if x < 0.05 {
        let g1 = x * x * (1.0 / 2.0 + x * (-1.0 / 3.0 + x * (1.0 / 8.0 + x * (-1.0 / 30.0 + x / 144.0))));
        let g2 = x * x * x * (1.0 / 3.0 + x * (-1.0 / 4.0 + x * (1.0 / 10.0 + x * (-1.0 / 36.0 + x / 168.0))));
        (g1, g2)
    } else {
        let e = (-x).exp();
        (1.0 - e * (1.0 + x), 2.0 - e * (2.0 + x * (2.0 + x)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{disc_polygon, ConvexRegion};

    fn unit_square() -> ConvexRegion {
        ConvexRegion::from_vertices(vec![
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(1.0, 1.0),
            Point2::new(0.0, 1.0),
        ])
        .unwrap()
    }

    #[test]
    fn phi_is_one_at_pbar_and_decays_per_efold() {
        let pbar = Point2::new(1.0, 2.0);
        assert_eq!(phi(pbar, pbar, 0.5), 1.0);
        let q = pbar + Point2::new(0.5, 0.0);
        assert!((phi(q, pbar, 0.5) - (-1.0f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn symmetric_pbar_gives_center() {
        for beta in [0.05, 0.3, 2.0, 100.0] {
            let c = weighted_centroid(&unit_square(), Point2::new(0.5, 0.5), beta).unwrap();
            assert!(!c.area_fallback);
            assert!(c.point.dist(Point2::new(0.5, 0.5)) < 1e-9, "beta {beta}");
        }
    }

    #[test]
    fn huge_beta_recovers_area_centroid() {
        let c = weighted_centroid(&unit_square(), Point2::new(0.2, 0.9), 1e6).unwrap();
        assert!(c.point.dist(Point2::new(0.5, 0.5)) < 1e-4);
    }

    #[test]
    fn tiny_beta_with_interior_pbar_collapses_to_pbar() {
        let pbar = Point2::new(0.3, 0.4);
        let c = weighted_centroid(&unit_square(), pbar, 1e-3).unwrap();
        assert!(!c.area_fallback);
        assert!(c.point.dist(pbar) < 1e-6);
    }

    #[test]
    fn exterior_pbar_pulls_centroid_toward_near_edge() {
        let c = weighted_centroid(&unit_square(), Point2::new(2.0, 0.5), 0.2).unwrap();
        assert!(c.point.x > 0.8);
        assert!((c.point.y - 0.5).abs() < 1e-6);
        assert!(unit_square().contains(c.point));
    }

    #[test]
    fn full_underflow_falls_back_to_area_centroid() {
        let c = weighted_centroid(&unit_square(), Point2::new(1e4, 0.5), 1e-3).unwrap();
        assert!(c.area_fallback);
        assert!(c.point.dist(Point2::new(0.5, 0.5)) < 1e-12);
    }

    #[test]
    fn empty_region_and_bad_beta_are_errors() {
        let empty = ConvexRegion::empty();
        assert_eq!(
            weighted_centroid(&empty, Point2::ZERO, 1.0).unwrap_err(),
            WeightingError::EmptyRegion
        );
        assert_eq!(
            weighted_centroid(&unit_square(), Point2::ZERO, 0.0).unwrap_err(),
            WeightingError::NonPositiveBeta(0.0)
        );
    }

    #[test]
    fn decreasing_beta_localizes_toward_interior_pbar() {
        // pbar inside, near the right edge: smaller beta must move the
        // centroid monotonically closer to pbar (within numerical slack).
        let region = unit_square();
        let pbar = Point2::new(0.9, 0.5);
        let mut last = f64::INFINITY;
        for i in 0..40 {
            let beta = 10.0 * (0.7f64).powi(i);
            let c = weighted_centroid(&region, pbar, beta).unwrap();
            let d = c.point.dist(pbar);
            assert!(d <= last + 1e-6, "beta {beta}: {d} > {last}");
            last = d;
        }
    }

    #[test]
    fn beta_min_symmetric_disc_is_trivially_flat() {
        // Symmetric cell: the centroid sits at the center whatever beta is,
        // so clearance is constant and any d_u below it is feasible.
        let disc = disc_polygon(Point2::ZERO, 2.0, 64).unwrap();
        let expected = 2.0 * (std::f64::consts::PI / 64.0).cos();
        let r = beta_min(&disc, Point2::ZERO, 0.5).unwrap();
        assert!((r.clearance - expected).abs() < 1e-6);
        assert!(r.feasible);
        let r2 = beta_min(&disc, Point2::ZERO, 5.0).unwrap();
        assert!(!r2.feasible);
        assert!((r2.clearance - expected).abs() < 1e-6);
    }

    #[test]
    fn beta_min_hits_requested_clearance() {
        // Asymmetric setup: pbar outside the disc, so clearance grows from 0
        // (tiny beta hugs the boundary) to the disc radius (huge beta).
        let disc = disc_polygon(Point2::ZERO, 3.0, 64).unwrap();
        let pbar = Point2::new(10.0, 0.0);
        for d_u in [0.3, 1.0, 2.0] {
            let r = beta_min(&disc, pbar, d_u).unwrap();
            assert!(r.feasible, "d_u {d_u}");
            assert!((r.clearance - d_u).abs() < 0.01, "d_u {d_u}: {}", r.clearance);
        }
    }

    #[test]
    fn update_beta_branches_and_floor() {
        let params = AdaptationParams::default();
        let p = Point2::ZERO;
        // Stuck: c_A pinned at the robot, far from c_S.
        let c_a = Point2::new(0.1, 0.0);
        let c_s = Point2::new(2.0, 0.0);
        let b = update_beta(1.0, c_a, c_s, p, &params, 0.0, 0.1);
        assert!((b - 0.9).abs() < 1e-12);
        // Relaxed: decay toward beta_d.
        let c_a2 = Point2::new(3.0, 0.0);
        let b2 = update_beta(0.5, c_a2, c_s, p, &params, 0.0, 0.1);
        assert!((b2 - 0.465).abs() < 1e-12);
        // Floor clamps from below.
        let b3 = update_beta(0.15, c_a2, c_s, p, &params, 0.2, 0.1);
        assert!((b3 - 0.2).abs() < 1e-12);
    }

    #[test]
    fn update_pbar_rotates_right_and_resets() {
        let mut params = AdaptationParams::default();
        params.eps_rot = 1e-9;
        params.k_e = 10.0;
        let p_i = Point2::ZERO;
        let goal = Point2::new(10.0, 0.0);
        let state = AdaptiveState {
            beta: 0.15,
            pbar: goal,
            rotation_active: false,
        };
        // Blocked: c_A at the robot, far from c_S; target rotates to (0, -10).
        let c_a = Point2::new(0.05, 0.0);
        let c_s = Point2::new(3.0, 0.0);
        let (pbar, active) = update_pbar(&state, c_a, c_s, None, p_i, goal, &params, 0.1);
        assert!(active);
        // The tiny eps_rot leaves a residual of about 10 * eps_rot in x.
        let target = Point2::new(0.0, -10.0);
        let expected = goal - (goal - target) * (10.0 * 0.1);
        assert!(pbar.dist(expected) < 1e-6);

        // Reset: rotation active, but aiming at the goal now carries farther.
        let rotated_state = AdaptiveState {
            beta: 0.15,
            pbar: Point2::new(0.0, -10.0),
            rotation_active: true,
        };
        let c_a_goal = Some(Point2::new(4.0, 0.0));
        let (pbar2, active2) = update_pbar(
            &rotated_state,
            Point2::new(0.05, 0.0),
            c_s,
            c_a_goal,
            p_i,
            goal,
            &params,
            0.1,
        );
        assert_eq!(pbar2, goal);
        assert!(!active2);
    }

    #[test]
    fn update_pbar_free_branch_tracks_goal() {
        let params = AdaptationParams::default();
        let state = AdaptiveState::new(Point2::new(5.0, 5.0), 0.15);
        let (pbar, active) = update_pbar(
            &state,
            Point2::new(3.0, 3.0),
            Point2::new(3.0, 3.0),
            None,
            Point2::ZERO,
            Point2::new(5.0, 5.0),
            &params,
            0.1,
        );
        assert!(!active);
        assert_eq!(pbar, Point2::new(5.0, 5.0));
    }
}
