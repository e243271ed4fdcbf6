//! Midpoint-grid oracle for the weighted centroid.
//!
//! The production quadrature integrates radially in closed form; this
//! oracle shares nothing with it. It rasterizes the region onto a dense
//! grid, sums `exp(-|q - pbar| / beta)` cell by cell, and demands agreement
//! to a millimeter. Two fixed cases are additionally pinned to reference
//! values computed with an independent 6000 x 6000 numpy midpoint sum.

use rbl_core::geometry::{disc_polygon, ConvexRegion, HalfPlane, Point2};
use rbl_core::weighting::weighted_centroid;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn riemann_centroid(region: &ConvexRegion, pbar: Point2, beta: f64, n: usize) -> Point2 {
    let verts = region.vertices();
    let (mut x0, mut y0) = (f64::INFINITY, f64::INFINITY);
    let (mut x1, mut y1) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    for v in verts {
        x0 = x0.min(v.x);
        y0 = y0.min(v.y);
        x1 = x1.max(v.x);
        y1 = y1.max(v.y);
    }
    let h = ((x1 - x0).max(y1 - y0)) / n as f64;
    let (mut mass, mut mx, mut my) = (0.0, 0.0, 0.0);
    let cols = ((x1 - x0) / h).ceil() as usize;
    let rows = ((y1 - y0) / h).ceil() as usize;
    for iy in 0..rows {
        let y = y0 + (iy as f64 + 0.5) * h;
        for ix in 0..cols {
            let x = x0 + (ix as f64 + 0.5) * h;
            let q = Point2::new(x, y);
            if !region.contains(q) {
                continue;
            }
            let w = (-q.dist(pbar) / beta).exp();
            mass += w;
            mx += w * x;
            my += w * y;
        }
    }
    Point2::new(mx / mass, my / mass)
}

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
fn pinned_interior_attractor_value() {
    let square = unit_square();
    let pbar = Point2::new(0.25, 0.25);
    let reference = Point2::new(0.3764195129, 0.3764195129);
    let got = weighted_centroid(&square, pbar, 0.3).unwrap();
    assert!(
        got.point.dist(reference) < 2e-5,
        "got {:?}, reference {:?}",
        got.point,
        reference
    );
    let grid = riemann_centroid(&square, pbar, 0.3, 2500);
    assert!(grid.dist(reference) < 2e-5, "oracle drifted: {grid:?}");
}

#[test]
fn pinned_exterior_attractor_value() {
    let square = unit_square();
    let pbar = Point2::new(2.0, 0.5);
    let reference = Point2::new(0.8482576424, 0.5);
    let got = weighted_centroid(&square, pbar, 0.15).unwrap();
    assert!(
        got.point.dist(reference) < 2e-5,
        "got {:?}, reference {:?}",
        got.point,
        reference
    );
    let grid = riemann_centroid(&square, pbar, 0.15, 2500);
    assert!(grid.dist(reference) < 2e-5, "oracle drifted: {grid:?}");
}

#[test]
fn random_regions_agree_with_grid_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut checked = 0;
    while checked < 10 {
        let center = Point2::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let radius = rng.gen_range(1.0..4.0);
        let mut region = disc_polygon(center, radius, 48).unwrap();
        // Clip by a couple of random chords for irregular shapes.
        for _ in 0..rng.gen_range(0..3usize) {
            let ang = rng.gen_range(0.0..std::f64::consts::TAU);
            let normal = Point2::new(ang.cos(), ang.sin());
            let offset = normal.dot(center) + rng.gen_range(-0.3 * radius..0.8 * radius);
            region = region.clip_halfplane(&HalfPlane::new(normal, offset).unwrap());
        }
        if region.is_empty() || region.area() < 0.5 {
            continue;
        }
        let inside = rng.gen_bool(0.5);
        let pbar = if inside {
            region.area_centroid().unwrap() + Point2::new(rng.gen_range(-0.2..0.2), 0.0)
        } else {
            center + Point2::new(rng.gen_range(radius + 0.5..radius + 6.0), rng.gen_range(-3.0..3.0))
        };
        let beta = rng.gen_range(0.05..5.0_f64);
        let got = weighted_centroid(&region, pbar, beta).unwrap();
        let grid = riemann_centroid(&region, pbar, beta, 2000);
        assert!(
            got.point.dist(grid) < 1e-3,
            "case {checked}: quadrature {:?} vs grid {grid:?} (beta {beta}, pbar {pbar:?})",
            got.point
        );
        checked += 1;
    }
}
