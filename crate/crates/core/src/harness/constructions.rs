//! The two hand-built configurations around the snap-complex bound.

use std::f64::consts::{PI, SQRT_2};

use crate::error::{Error, Result};
use crate::geometry::PointCloud;
use crate::snap::GridPartition;

/// Three points at angles 0°, 120°, 240° on the circle of radius `radius`.
///
/// For `1 < radius < 1 + ε` the three edges are present at radius 1 but the
/// triangle only enters at `radius`, so the loop does not persist to 1 + ε
/// while its snapped image is still a non-trivial loop.
pub fn make_three_on_circle(radius: f64) -> Result<PointCloud> {
    if !radius.is_finite() || radius <= 0.0 {
        return Err(Error::InvalidParameter(format!("radius must be positive, got {radius}")));
    }
    PointCloud::from_rows((0..3).map(|k| {
        let angle = 2.0 * PI * k as f64 / 3.0;
        vec![radius * angle.cos(), radius * angle.sin()]
    }))
}

/// Six points in the plane forming two mirrored isosceles right triangles
/// with circumradius 1 + ε, separated by a narrow gap, plus a grid of mesh ε
/// whose cells each hold one of the two near pairs.
///
/// Points, in hexagon order, with R = 1 + ε and gap w = ε/(2√2):
/// (0, R), (w, R), (w + R, 0), (w, −R), (0, −R), (−R, 0).
///
/// The hexagon is a loop at radius 1 that is still non-trivial at 1 + ε
/// (the thin rectangle between the triangles needs a larger ball), yet its
/// image in the snap complex at 1 + ε bounds the two snapped triangles.
pub fn make_two_triangles(epsilon: f64) -> Result<(PointCloud, GridPartition)> {
    if epsilon.is_nan() || epsilon <= 0.0 || epsilon > SQRT_2 - 1.0 + 1e-12 {
        return Err(Error::InvalidParameter(format!(
            "epsilon must lie in (0, sqrt(2) - 1], got {epsilon}"
        )));
    }
    let r = 1.0 + epsilon;
    let side = epsilon / SQRT_2;
    let w = side / 2.0;
    let cloud = PointCloud::from_rows(vec![
        vec![0.0, r],
        vec![w, r],
        vec![w + r, 0.0],
        vec![w, -r],
        vec![0.0, -r],
        vec![-r, 0.0],
    ])?;
    // centre one cell column on the gap and one cell row on y = R
    let grid = GridPartition::with_offset(epsilon, vec![w / 2.0 - side / 2.0, r - side / 2.0])?;
    Ok((cloud, grid))
}
