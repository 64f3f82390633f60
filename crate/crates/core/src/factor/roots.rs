//! Simultaneous-iteration polynomial root finder (Aberth–Ehrlich).

use std::f64::consts::PI;

use crate::boundary::TaylorPoly;
use crate::{Complex64, Error, Result};

const MAX_ITERATIONS: usize = 500;
/// Relative backward error accepted for a root.
const RESIDUAL_TOL: f64 = 1e-9;

/// Angular offset of the initial points; fixed for reproducible output.
pub const DEFAULT_SEED_ANGLE: f64 = 0.4;

/// All roots of `f` viewed as a polynomial of degree `d` (trailing
/// coefficients with modulus `<= tol` are dropped first).
pub fn poly_roots(f: &TaylorPoly, tol: f64) -> Result<Vec<Complex64>> {
    poly_roots_seeded(f, tol, DEFAULT_SEED_ANGLE)
}

pub fn poly_roots_seeded(f: &TaylorPoly, tol: f64, seed_angle: f64) -> Result<Vec<Complex64>> {
    let p = f.trimmed(tol);
    let d = p.len().saturating_sub(1);
    if d == 0 {
        return Err(Error::Precondition(
            "poly_roots needs degree >= 1 with a leading coefficient above tolerance".into(),
        ));
    }
    let c = p.coeffs();
    if d == 1 {
        return Ok(vec![-c[0] / c[1]]);
    }
    let dp = p.derivative();

    let radius = {
        let r = (c[0] / c[d]).norm().powf(1.0 / d as f64);
        if r > 0.0 && r.is_finite() {
            r
        } else {
            1.0
        }
    };
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| Complex64::from_polar(radius, 2.0 * PI * k as f64 / d as f64 + seed_angle))
        .collect();

    let mut iterations = 0;
    while iterations < MAX_ITERATIONS {
        iterations += 1;
        let mut max_step = 0.0f64;
        for i in 0..d {
            let (pv, dv) = (p.eval(z[i]), dp.eval(z[i]));
            if pv.norm() <= f64::EPSILON * backward_scale(&p, z[i]) {
                continue;
            }
            let ratio = pv / dv;
            let repulsion: Complex64 = (0..d)
                .filter(|&j| j != i)
                .map(|j| 1.0 / (z[i] - z[j]))
                .sum();
            let step = ratio / (1.0 - ratio * repulsion);
            if step.re.is_finite() && step.im.is_finite() {
                z[i] -= step;
                max_step = max_step.max(step.norm() / z[i].norm().max(1.0));
            }
        }
        if max_step < 1e-15 {
            break;
        }
    }

    // one polishing Newton step per root
    for r in z.iter_mut() {
        let dv = dp.eval(*r);
        if dv.norm() > 0.0 {
            let step = p.eval(*r) / dv;
            let candidate = *r - step;
            if p.eval(candidate).norm() < p.eval(*r).norm() {
                *r = candidate;
            }
        }
    }

    let residual = z
        .iter()
        .map(|&r| p.eval(r).norm() / backward_scale(&p, r))
        .fold(0.0, f64::max);
    if !(residual < RESIDUAL_TOL) {
        return Err(Error::RootFinder { iterations, residual });
    }
    Ok(z)
}

/// `Σ |c_k| |z|^k`, the natural scale for the residual `|p(z)|`.
fn backward_scale(p: &TaylorPoly, z: Complex64) -> f64 {
    let r = z.norm();
    p.coeffs().iter().rev().fold(0.0, |acc, c| acc * r + c.norm())
}
