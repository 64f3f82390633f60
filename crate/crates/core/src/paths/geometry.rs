//! Polygonal paths in ℂ and the shift direction that keeps them off the
//! origin.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::{Complex64, Error, Result};

/// Ray parameters at or below this count as the starting point, not a hit.
const RAY_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolygonalPath {
    vertices: Vec<Complex64>,
}

impl PolygonalPath {
    /// Consecutive repeated vertices are merged. Fails when fewer than two
    /// distinct vertices remain or a vertex is not finite.
    pub fn new(vertices: Vec<Complex64>) -> Result<Self> {
        if vertices.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::Domain("path vertex is not finite".into()));
        }
        let mut v: Vec<Complex64> = Vec::with_capacity(vertices.len());
        for p in vertices {
            if v.last() != Some(&p) {
                v.push(p);
            }
        }
        if v.len() < 2 {
            return Err(Error::Domain("degenerate path: all vertices coincide".into()));
        }
        Ok(Self { vertices: v })
    }

    pub fn vertices(&self) -> &[Complex64] {
        &self.vertices
    }

    pub fn segments(&self) -> impl Iterator<Item = (Complex64, Complex64)> + '_ {
        self.vertices.windows(2).map(|w| (w[0], w[1]))
    }

    pub fn translated(&self, w: Complex64) -> Self {
        Self { vertices: self.vertices.iter().map(|v| v + w).collect() }
    }

    /// Euclidean distance from `p` to the path.
    pub fn distance_to(&self, p: Complex64) -> f64 {
        self.segments()
            .map(|(a, b)| point_segment_distance(p, a, b))
            .fold(f64::INFINITY, f64::min)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShiftResult {
    /// Direction angle in `[0, π)`.
    pub eta: f64,
    pub eps0: f64,
    /// Distance from the origin to the path shifted by `eps0·e^{iη}`.
    pub min_clearance: f64,
    /// Smallest angle (mod π) between `η` and a segment direction.
    pub separation: f64,
}

impl ShiftResult {
    pub fn direction(&self) -> Complex64 {
        Complex64::from_polar(1.0, self.eta)
    }

    pub fn shift(&self, eps: f64) -> Complex64 {
        self.direction() * eps
    }
}

/// Direction `η` bisecting the widest angular gap between segment directions
/// (taken mod π; ties go to the first gap), and the largest step `ε₀` along
/// it, capped at `eps_cap`, for which the shifted path misses the origin.
pub fn shift_direction(path: &PolygonalPath, eps_cap: f64) -> Result<ShiftResult> {
    if !(eps_cap > 0.0) {
        return Err(Error::Precondition(format!("eps_cap must be positive, got {eps_cap}")));
    }
    let mut dirs: Vec<f64> = path
        .segments()
        .map(|(a, b)| {
            let d = b - a;
            d.im.atan2(d.re).rem_euclid(PI)
        })
        .map(|x| if x >= PI { 0.0 } else { x })
        .collect();
    dirs.sort_by(f64::total_cmp);
    dirs.dedup_by(|a, b| (*a - *b).abs() < 1e-15);

    // gaps in order: dirs[0]→dirs[1], …, dirs[last]→dirs[0]+π
    let last = dirs[dirs.len() - 1];
    let (best_start, best_gap) = dirs
        .windows(2)
        .map(|w| (w[0], w[1] - w[0]))
        .chain(std::iter::once((last, dirs[0] + PI - last)))
        .fold((f64::NAN, -1.0), |acc, g| if g.1 > acc.1 { g } else { acc });
    let eta = (best_start + best_gap / 2.0).rem_euclid(PI);
    let separation = best_gap / 2.0;

    // shifting the path by εe^{iη} hits 0 iff the ray −s·e^{iη} meets the path
    let d = -Complex64::from_polar(1.0, eta);
    let hit = path
        .segments()
        .filter_map(|(a, b)| ray_segment_hit(d, a, b))
        .fold(f64::INFINITY, f64::min);
    let eps0 = (hit / 2.0).min(eps_cap);
    let min_clearance = path.distance_to(-Complex64::from_polar(eps0, eta));
    Ok(ShiftResult { eta, eps0, min_clearance, separation })
}

/// Smallest `s > RAY_FLOOR` with `s·d` on the segment `[a, b]`.
fn ray_segment_hit(d: Complex64, a: Complex64, b: Complex64) -> Option<f64> {
    let e = b - a;
    let cross = |u: Complex64, v: Complex64| u.re * v.im - u.im * v.re;
    let denom = cross(d, e);
    if denom.abs() < 1e-300 {
        // parallel: hits only if collinear with the ray
        if cross(a, d).abs() > 1e-14 * a.norm().max(1.0) {
            return None;
        }
        let (sa, sb) = (a.re * d.re + a.im * d.im, b.re * d.re + b.im * d.im);
        let (lo, hi) = (sa.min(sb), sa.max(sb));
        return if hi <= RAY_FLOOR { None } else { Some(lo.max(RAY_FLOOR)) };
    }
    // s·d = a + λe
    let s = cross(a, e) / denom;
    let lambda = cross(a, d) / denom;
    (s > RAY_FLOOR && (-1e-12..=1.0 + 1e-12).contains(&lambda)).then_some(s)
}

fn point_segment_distance(p: Complex64, a: Complex64, b: Complex64) -> f64 {
    let e = b - a;
    let len2 = e.norm_sqr();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let lambda = (((p - a) * e.conj()).re / len2).clamp(0.0, 1.0);
    (p - (a + e * lambda)).norm()
}

fn exact(x: f64) -> BigRational {
    BigRational::from_float(x).unwrap_or_else(|| BigRational::from_integer(BigInt::zero()))
}

/// Exact test (on the binary values of the inputs) whether `p` lies on the
/// closed segment `[a, b]`.
pub fn exact_point_on_segment(p: Complex64, a: Complex64, b: Complex64) -> bool {
    let (px, py) = (exact(p.re), exact(p.im));
    let (ax, ay) = (exact(a.re), exact(a.im));
    let (bx, by) = (exact(b.re), exact(b.im));
    let (ex, ey) = (&bx - &ax, &by - &ay);
    let (qx, qy) = (&px - &ax, &py - &ay);
    let cross = &ex * &qy - &ey * &qx;
    if !cross.is_zero() {
        return false;
    }
    let dot = &ex * &qx + &ey * &qy;
    let len2 = &ex * &ex + &ey * &ey;
    !dot.is_negative() && dot <= len2
}

/// Exact check that the path translated by `w` avoids the origin.
pub fn exact_avoids_origin(path: &PolygonalPath, w: Complex64) -> bool {
    path.segments().all(|(a, b)| !exact_point_on_segment(-w, a, b))
}
