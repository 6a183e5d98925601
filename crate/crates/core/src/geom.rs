//! Spherical (chordal) metric helpers and small planar-geometry utilities.

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GeomError {
    #[error("empty point sequence")]
    EmptyInput,
}

fn is_infinite(z: Complex64) -> bool {
    !z.re.is_finite() || !z.im.is_finite()
}

/// Chordal distance on the Riemann sphere, `|z-w| / sqrt((1+|z|^2)(1+|w|^2))`.
///
/// Any non-finite input is treated as the point at infinity, where the
/// distance takes its limit value `1/sqrt(1+|w|^2)`.
pub fn spherical_distance(z: Complex64, w: Complex64) -> f64 {
    match (is_infinite(z), is_infinite(w)) {
        (true, true) => 0.0,
        (true, false) => 1.0 / (1.0 + w.norm_sqr()).sqrt(),
        (false, true) => 1.0 / (1.0 + z.norm_sqr()).sqrt(),
        (false, false) => {
            (z - w).norm() / ((1.0 + z.norm_sqr()) * (1.0 + w.norm_sqr())).sqrt()
        }
    }
}

/// Maximal pairwise chordal distance of a finite point sequence.
pub fn spherical_diameter(points: &[Complex64]) -> Result<f64, GeomError> {
    if points.is_empty() {
        return Err(GeomError::EmptyInput);
    }
    let mut best: f64 = 0.0;
    for (i, &p) in points.iter().enumerate() {
        for &q in &points[i + 1..] {
            best = best.max(spherical_distance(p, q));
        }
    }
    Ok(best)
}

/// Total length of the polyline through `points` in order.
pub fn polyline_length(points: &[Complex64]) -> f64 {
    points.windows(2).map(|w| (w[1] - w[0]).norm()).sum()
}

/// Winding number (in turns) of the closed polyline `loop_points` about `z0`.
///
/// The polyline is closed implicitly from the last point back to the first.
pub fn winding_number(loop_points: &[Complex64], z0: Complex64) -> f64 {
    if loop_points.len() < 3 {
        return 0.0;
    }
    let mut total = 0.0;
    let n = loop_points.len();
    for i in 0..n {
        let a = loop_points[i] - z0;
        let b = loop_points[(i + 1) % n] - z0;
        // angle increment in (-pi, pi]
        total += (b / a).arg();
    }
    total / std::f64::consts::TAU
}

fn cross(o: Complex64, a: Complex64, b: Complex64) -> f64 {
    (a.re - o.re) * (b.im - o.im) - (a.im - o.im) * (b.re - o.re)
}

/// Convex hull by the monotone chain algorithm; returns hull vertices in
/// counter-clockwise order.
pub fn convex_hull(points: &[Complex64]) -> Vec<Complex64> {
    let mut pts: Vec<Complex64> = points.to_vec();
    pts.sort_by(|p, q| {
        p.re.partial_cmp(&q.re)
            .unwrap()
            .then(p.im.partial_cmp(&q.im).unwrap())
    });
    pts.dedup_by(|a, b| a == b);
    let n = pts.len();
    if n < 3 {
        return pts;
    }
    let mut hull: Vec<Complex64> = Vec::with_capacity(2 * n);
    for &p in &pts {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    let lower_len = hull.len() + 1;
    for &p in pts.iter().rev() {
        while hull.len() >= lower_len && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0
        {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    hull
}

/// Euclidean diameter of a finite point set (attained on the convex hull).
pub fn point_set_diameter(points: &[Complex64]) -> f64 {
    let hull = convex_hull(points);
    let mut best: f64 = 0.0;
    for (i, &p) in hull.iter().enumerate() {
        for &q in &hull[i + 1..] {
            best = best.max((p - q).norm());
        }
    }
    best
}
