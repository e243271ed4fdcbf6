//! Per-robot convex cell construction.
//!
//! A robot's safe cell starts as its (polygonalized) sensing disc `S_i` of
//! radius `r_s`. Every sensed entity cuts the disc with a half-plane:
//!
//! - far entities (`d > 2 * Delta`) use a weighted bisector whose boundary
//!   sits at distance `d / epsilon` from the robot along the line of sight,
//!   so `epsilon = 2` is the classic Voronoi bisector and `epsilon = 1`
//!   pushes the boundary out to the entity itself;
//! - close entities (`Delta < d <= 2 * Delta`, with `Delta` the sum of body
//!   radii) are replaced by a virtual entity mirrored back toward the robot
//!   so that the classic bisector against it sits exactly `Delta` away from
//!   the true entity, which restores the safety guarantee that the weighted
//!   bisector alone would lose at close range;
//! - entities at `d <= Delta` mean the bodies already touch: an error.
//!
//! The result is the safety cell `A_i`. Intersecting `A_i` with discs of
//! radius `Gamma_ij` around proximity-constrained neighbors yields `F_i`,
//! whose points keep every such link within range.

use crate::geometry::{
    disc_polygon, inscribed_inradius_factor, ConvexRegion, GeometryError, HalfPlane, Point2,
    GEOM_EPS,
};
use thiserror::Error;

/// Distance by which proximity-constrained measurements are pulled back
/// inside `Gamma_ij` before cell construction, meters.
pub const REPROJECTION_MARGIN: f64 = 1e-3;

/// What a sensed entity is; obstacles may use a different cell weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntityKind {
    Robot,
    Obstacle,
}

/// One sensed entity, expressed in the sensing robot's world frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SensedEntity {
    pub position: Point2,
    /// Body radius (`delta_j` for robots, `delta^o` for obstacles), meters.
    pub radius: f64,
    pub kind: EntityKind,
    /// `Some(Gamma_ij)` when a proximity link to this entity must be kept.
    pub proximity: Option<f64>,
}

/// Geometry parameters of the cell pipeline.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CellParams {
    /// Bisector weight for robot neighbors, in `[1, 2]`.
    pub epsilon_p: f64,
    /// Bisector weight for obstacles, in `[1, 2]`.
    pub epsilon_o: f64,
    /// Own body radius `delta_i`, meters.
    pub delta_self: f64,
    /// Cell radius `r_s` (half the sensing range), meters.
    pub sensing_radius: f64,
    /// Sides of the inscribed polygons standing in for discs.
    pub disc_sides: usize,
}

impl Default for CellParams {
    fn default() -> Self {
        CellParams {
            epsilon_p: 1.0,
            epsilon_o: 1.0,
            delta_self: 0.2,
            sensing_radius: 5.0,
            disc_sides: 64,
        }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum CellError {
    #[error("sensed entity at distance {distance} is within the contact threshold {threshold}")]
    CollisionState { distance: f64, threshold: f64 },
    #[error("bisector weight {0} outside [1, 2]")]
    InvalidEpsilon(f64),
    #[error("proximity discs and safety cell have empty intersection")]
    InfeasibleProximity,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Weighted bisector half-plane between `p_i` and `p_j`: boundary at
/// distance `|p_j - p_i| / epsilon` from `p_i` along the line of sight.
pub fn cwvd_halfplane(p_i: Point2, p_j: Point2, epsilon: f64) -> Result<HalfPlane, CellError> {
    if !(1.0..=2.0).contains(&epsilon) {
        return Err(CellError::InvalidEpsilon(epsilon));
    }
    let d = p_i.dist(p_j);
    let u = (p_j - p_i)
        .normalized()
        .ok_or(GeometryError::CoincidentPoints)?;
    Ok(HalfPlane::new(u, u.dot(p_i) + d / epsilon).expect("unit normal"))
}

/// Safety half-plane against one entity: weighted bisector at long range,
/// virtual-entity classic bisector once `|p_i - p| <= 2 * delta_sum`.
pub fn safety_halfplane(
    p_i: Point2,
    entity_pos: Point2,
    delta_sum: f64,
    epsilon: f64,
) -> Result<HalfPlane, CellError> {
    let d = p_i.dist(entity_pos);
    if d <= delta_sum {
        return Err(CellError::CollisionState {
            distance: d,
            threshold: delta_sum,
        });
    }
    if d <= 2.0 * delta_sum {
        // Mirror the entity toward the robot so the classic bisector against
        // the virtual point sits exactly delta_sum from the true entity.
        let virtual_pos = entity_pos + (p_i - entity_pos) * ((2.0 * delta_sum - d) / d);
        return Ok(HalfPlane::bisector(p_i, virtual_pos)?);
    }
    cwvd_halfplane(p_i, entity_pos, epsilon)
}

/// Safety cell `A_i`: the sensing polygon clipped by every entity's safety
/// half-plane. Always contains `p_i`; an empty result is a logic error.
pub fn build_cell_a(
    p_i: Point2,
    sensed: &[SensedEntity],
    params: &CellParams,
) -> Result<ConvexRegion, CellError> {
    let mut cell = disc_polygon(p_i, params.sensing_radius, params.disc_sides)?;
    for entity in sensed {
        let epsilon = match entity.kind {
            EntityKind::Robot => params.epsilon_p,
            EntityKind::Obstacle => params.epsilon_o,
        };
        let hp = safety_halfplane(p_i, entity.position, params.delta_self + entity.radius, epsilon)?;
        cell = cell.clip_halfplane(&hp);
    }
    assert!(
        cell.contains(p_i),
        "safety cell must contain the robot: every constraint is satisfied at p_i"
    );
    Ok(cell)
}

/// Proximity-and-safety cell `F_i`: `A_i` intersected with the `Gamma_ij`
/// disc around each proximity-constrained entity.
pub fn build_cell_f(
    cell_a: &ConvexRegion,
    p_i: Point2,
    sensed: &[SensedEntity],
    params: &CellParams,
) -> Result<ConvexRegion, CellError> {
    let mut cell = cell_a.clone();
    let inradius_factor = inscribed_inradius_factor(params.disc_sides);
    let mut max_slack = GEOM_EPS;
    for entity in sensed {
        let Some(gamma) = entity.proximity else {
            continue;
        };
        max_slack = max_slack.max(gamma * (1.0 - inradius_factor) + REPROJECTION_MARGIN);
        // Skip the clip when the whole cell already sits inside the disc
        // polygon's inscribed circle.
        let inradius = gamma * inradius_factor;
        let all_inside = cell
            .vertices()
            .iter()
            .all(|&v| v.dist_sq(entity.position) <= inradius * inradius);
        if all_inside {
            continue;
        }
        let disc = disc_polygon(entity.position, gamma, params.disc_sides)?;
        cell = cell.clip_region(&disc);
        if cell.is_empty() {
            return Err(CellError::InfeasibleProximity);
        }
    }
    // Re-projected measurements sit at Gamma - margin, which the inscribed
    // polygon (inradius Gamma * cos(pi/sides)) can still exclude; p_i may
    // therefore fall marginally outside F_i, but never by more than the
    // polygonalization slack.
    let excursion = cell.distance_to(p_i).map_err(|_| CellError::InfeasibleProximity)?;
    assert!(
        excursion <= max_slack,
        "robot position {excursion} m outside its proximity cell exceeds the polygonalization slack {max_slack}"
    );
    Ok(cell)
}
