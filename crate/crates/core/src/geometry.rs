//! Planar vectors, half-planes, and convex polygon clipping.
//!
//! Everything downstream (cell construction, centroid quadrature, clearance
//! search) works on [`ConvexRegion`]: a convex polygon stored as a
//! counter-clockwise vertex list. Regions stay convex by construction because
//! the only mutating operation is intersection with half-planes. Discs enter
//! the picture as inscribed regular polygons, which keeps every polygonal
//! cell a conservative subset of the true disc-bounded cell.

use std::ops::{Add, Div, Mul, Neg, Sub};
use thiserror::Error;

/// Coordinate tolerance for membership and degeneracy predicates, meters.
pub const GEOM_EPS: f64 = 1e-9;
/// Polygons with less area than this are treated as empty, square meters.
pub const AREA_EPS: f64 = 1e-12;

/// A point in the plane, doubling as a 2D vector.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

/// Alias used where a value is a displacement or velocity rather than a position.
pub type Vec2 = Point2;

impl Point2 {
    pub const ZERO: Point2 = Point2 { x: 0.0, y: 0.0 };

    pub fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    pub fn dot(self, rhs: Point2) -> f64 {
        self.x * rhs.x + self.y * rhs.y
    }

    /// z-component of the 3D cross product; positive when `rhs` is counter-clockwise from `self`.
    pub fn cross(self, rhs: Point2) -> f64 {
        self.x * rhs.y - self.y * rhs.x
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn dist(self, rhs: Point2) -> f64 {
        (self - rhs).norm()
    }

    pub fn dist_sq(self, rhs: Point2) -> f64 {
        (self - rhs).norm_sq()
    }

    /// Unit vector in the same direction, or `None` for (near-)zero vectors.
    pub fn normalized(self) -> Option<Point2> {
        let n = self.norm();
        if n < GEOM_EPS {
            None
        } else {
            Some(self / n)
        }
    }

    /// Rotation by +90 degrees (counter-clockwise).
    pub fn perp(self) -> Point2 {
        Point2::new(-self.y, self.x)
    }

    /// Rotation by `angle` radians, counter-clockwise.
    pub fn rotated(self, angle: f64) -> Point2 {
        let (s, c) = angle.sin_cos();
        Point2::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }
}

impl Add for Point2 {
    type Output = Point2;
    fn add(self, rhs: Point2) -> Point2 {
        Point2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point2 {
    type Output = Point2;
    fn sub(self, rhs: Point2) -> Point2 {
        Point2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Point2 {
    type Output = Point2;
    fn mul(self, rhs: f64) -> Point2 {
        Point2::new(self.x * rhs, self.y * rhs)
    }
}

impl Div<f64> for Point2 {
    type Output = Point2;
    fn div(self, rhs: f64) -> Point2 {
        Point2::new(self.x / rhs, self.y / rhs)
    }
}

impl Neg for Point2 {
    type Output = Point2;
    fn neg(self) -> Point2 {
        Point2::new(-self.x, -self.y)
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum GeometryError {
    #[error("half-plane normal has (near-)zero length")]
    DegenerateNormal,
    #[error("points coincide within tolerance")]
    CoincidentPoints,
    #[error("disc polygon needs at least 8 sides, got {0}")]
    TooFewSides(usize),
    #[error("disc polygon radius must be positive, got {0}")]
    NonPositiveRadius(f64),
    #[error("vertex list does not describe a convex counter-clockwise polygon")]
    NotConvex,
    #[error("operation on an empty region")]
    EmptyRegion,
    #[error("point lies outside the region")]
    PointOutsideRegion,
}

/// Closed half-plane `{ q : normal . q <= offset }` with a unit normal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfPlane {
    normal: Point2,
    offset: f64,
}

impl HalfPlane {
    /// Builds the half-plane, normalizing `normal` (the offset scales along).
    pub fn new(normal: Point2, offset: f64) -> Result<Self, GeometryError> {
        let n = normal.norm();
        if n < GEOM_EPS {
            return Err(GeometryError::DegenerateNormal);
        }
        Ok(HalfPlane {
            normal: normal / n,
            offset: offset / n,
        })
    }

    /// Perpendicular bisector of `a` and `b` keeping `a`'s side.
    pub fn bisector(a: Point2, b: Point2) -> Result<Self, GeometryError> {
        let u = (b - a).normalized().ok_or(GeometryError::CoincidentPoints)?;
        let mid = (a + b) * 0.5;
        Ok(HalfPlane {
            normal: u,
            offset: u.dot(mid),
        })
    }

    pub fn normal(&self) -> Point2 {
        self.normal
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    /// `normal . q - offset`: negative inside, positive outside.
    pub fn signed_excess(&self, q: Point2) -> f64 {
        self.normal.dot(q) - self.offset
    }

    pub fn contains(&self, q: Point2) -> bool {
        self.signed_excess(q) <= GEOM_EPS
    }
}

/// Convex polygon with counter-clockwise vertices; may be empty.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ConvexRegion {
    vertices: Vec<Point2>,
}

impl ConvexRegion {
    pub fn empty() -> Self {
        ConvexRegion { vertices: Vec::new() }
    }

    /// Validates and normalizes a vertex list: consecutive duplicates are
    /// merged, clockwise input is reversed, non-convex input is rejected.
    /// Inputs spanning less than [`AREA_EPS`] collapse to the empty region.
    pub fn from_vertices(vertices: Vec<Point2>) -> Result<Self, GeometryError> {
        if vertices.len() < 3 {
            return Err(GeometryError::NotConvex);
        }
        let mut vs = dedup_ring(vertices);
        if vs.len() < 3 || ring_area(&vs).abs() < AREA_EPS {
            return Ok(Self::empty());
        }
        if ring_area(&vs) < 0.0 {
            vs.reverse();
        }
        let n = vs.len();
        for i in 0..n {
            let a = vs[i];
            let b = vs[(i + 1) % n];
            let c = vs[(i + 2) % n];
            let e1 = b - a;
            let e2 = c - b;
            if e1.cross(e2) < -GEOM_EPS * e1.norm() * e2.norm() {
                return Err(GeometryError::NotConvex);
            }
        }
        Ok(ConvexRegion { vertices: vs })
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn edges(&self) -> impl Iterator<Item = (Point2, Point2)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    pub fn area(&self) -> f64 {
        ring_area(&self.vertices).max(0.0)
    }

    /// Unweighted centroid; `None` for the empty region.
    pub fn area_centroid(&self) -> Option<Point2> {
        if self.is_empty() {
            return None;
        }
        let a2 = 2.0 * ring_area(&self.vertices);
        if a2.abs() < AREA_EPS {
            let sum = self.vertices.iter().fold(Point2::ZERO, |s, &v| s + v);
            return Some(sum / self.vertices.len() as f64);
        }
        let n = self.vertices.len();
        let mut cx = 0.0;
        let mut cy = 0.0;
        for i in 0..n {
            let p = self.vertices[i];
            let q = self.vertices[(i + 1) % n];
            let w = p.cross(q);
            cx += (p.x + q.x) * w;
            cy += (p.y + q.y) * w;
        }
        Some(Point2::new(cx / (3.0 * a2), cy / (3.0 * a2)))
    }

    /// Membership with a [`GEOM_EPS`] distance tolerance (boundary counts).
    pub fn contains(&self, p: Point2) -> bool {
        if self.is_empty() {
            return false;
        }
        let n = self.vertices.len();
        for i in 0..n {
            let a = self.vertices[i];
            let b = self.vertices[(i + 1) % n];
            let e = b - a;
            if e.cross(p - a) < -GEOM_EPS * e.norm().max(GEOM_EPS) {
                return false;
            }
        }
        true
    }

    /// Sutherland-Hodgman intersection with a single half-plane.
    pub fn clip_halfplane(&self, hp: &HalfPlane) -> ConvexRegion {
        if self.is_empty() {
            return Self::empty();
        }
        let n = self.vertices.len();
        let mut out: Vec<Point2> = Vec::with_capacity(n + 1);
        for i in 0..n {
            let cur = self.vertices[i];
            let nxt = self.vertices[(i + 1) % n];
            let ec = hp.signed_excess(cur);
            let en = hp.signed_excess(nxt);
            let cur_in = ec <= GEOM_EPS;
            let nxt_in = en <= GEOM_EPS;
            if cur_in {
                out.push(cur);
            }
            if cur_in != nxt_in {
                let t = ec / (ec - en);
                out.push(cur + (nxt - cur) * t.clamp(0.0, 1.0));
            }
        }
        let out = dedup_ring(out);
        if out.len() < 3 || ring_area(&out) < AREA_EPS {
            return Self::empty();
        }
        ConvexRegion { vertices: out }
    }

    /// Intersection with another convex region (clips by each of its edges).
    pub fn clip_region(&self, other: &ConvexRegion) -> ConvexRegion {
        if self.is_empty() || other.is_empty() {
            return Self::empty();
        }
        let mut cur = self.clone();
        for (a, b) in other.edges() {
            let e = b - a;
            // Outward normal of a CCW edge.
            let normal = -e.perp();
            let hp = match HalfPlane::new(normal, normal.dot(a)) {
                Ok(hp) => hp,
                Err(_) => continue,
            };
            cur = cur.clip_halfplane(&hp);
            if cur.is_empty() {
                return Self::empty();
            }
        }
        cur
    }

    /// Distance from an interior point to the polygon boundary.
    pub fn boundary_distance(&self, p: Point2) -> Result<f64, GeometryError> {
        if self.is_empty() {
            return Err(GeometryError::EmptyRegion);
        }
        if !self.contains(p) {
            return Err(GeometryError::PointOutsideRegion);
        }
        let mut d = f64::INFINITY;
        for (a, b) in self.edges() {
            d = d.min(p.dist(seg_closest(a, b, p)));
        }
        Ok(d)
    }

    /// Closest point of the boundary to `p`; `None` for the empty region.
    pub fn closest_boundary_point(&self, p: Point2) -> Option<Point2> {
        if self.is_empty() {
            return None;
        }
        let mut best = self.vertices[0];
        let mut best_d = f64::INFINITY;
        for (a, b) in self.edges() {
            let c = seg_closest(a, b, p);
            let d = p.dist_sq(c);
            if d < best_d {
                best_d = d;
                best = c;
            }
        }
        Some(best)
    }

    /// Distance from `p` to the region (zero for members).
    pub fn distance_to(&self, p: Point2) -> Result<f64, GeometryError> {
        if self.is_empty() {
            return Err(GeometryError::EmptyRegion);
        }
        if self.contains(p) {
            return Ok(0.0);
        }
        Ok(self
            .closest_boundary_point(p)
            .map(|c| c.dist(p))
            .unwrap_or(f64::INFINITY))
    }
}

/// Inscribed regular polygon approximating a disc (conservative subset).
pub fn disc_polygon(center: Point2, radius: f64, sides: usize) -> Result<ConvexRegion, GeometryError> {
    if sides < 8 {
        return Err(GeometryError::TooFewSides(sides));
    }
    if radius <= 0.0 {
        return Err(GeometryError::NonPositiveRadius(radius));
    }
    let mut vertices = Vec::with_capacity(sides);
    for k in 0..sides {
        let theta = std::f64::consts::TAU * k as f64 / sides as f64;
        let (s, c) = theta.sin_cos();
        vertices.push(center + Point2::new(radius * c, radius * s));
    }
    Ok(ConvexRegion { vertices })
}

/// Shrink factor of an inscribed `sides`-gon: inradius = radius * cos(pi/sides).
pub fn inscribed_inradius_factor(sides: usize) -> f64 {
    (std::f64::consts::PI / sides as f64).cos()
}

fn ring_area(vertices: &[Point2]) -> f64 {
    let n = vertices.len();
    if n < 3 {
        return 0.0;
    }
    let mut a = 0.0;
    for i in 0..n {
        a += vertices[i].cross(vertices[(i + 1) % n]);
    }
    0.5 * a
}

fn dedup_ring(vertices: Vec<Point2>) -> Vec<Point2> {
    let mut out: Vec<Point2> = Vec::with_capacity(vertices.len());
    for v in vertices {
        if out.last().map_or(true, |&l| l.dist(v) > GEOM_EPS) {
            out.push(v);
        }
    }
    while out.len() > 1 && out[0].dist(out[out.len() - 1]) <= GEOM_EPS {
        out.pop();
    }
    out
}

fn seg_closest(a: Point2, b: Point2, p: Point2) -> Point2 {
    let e = b - a;
    let len_sq = e.norm_sq();
    if len_sq < GEOM_EPS * GEOM_EPS {
        return a;
    }
    let t = ((p - a).dot(e) / len_sq).clamp(0.0, 1.0);
    a + e * t
}
