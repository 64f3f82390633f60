//! Seeded random inputs for the acceptance checks.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::boundary::{sup_norm_on, TaylorPoly};
use crate::paths::{PolygonalPath, Symbol};
use crate::{Complex64, Result};

/// Independent stream per consumer.
pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(stream))
}

fn polar(rng: &mut ChaCha8Rng, r_lo: f64, r_hi: f64) -> Complex64 {
    Complex64::from_polar(rng.random_range(r_lo..r_hi), rng.random_range(0.0..2.0 * PI))
}

/// Up to `max_degree` zeros with `0.05 <= |α| <= max_modulus`.
pub fn blaschke_zeros(rng: &mut ChaCha8Rng, min_degree: usize, max_degree: usize, max_modulus: f64) -> Vec<Complex64> {
    let d = rng.random_range(min_degree..=max_degree);
    (0..d).map(|_| polar(rng, 0.05, max_modulus)).collect()
}

/// `2 + p` with `deg p <= 3` and `‖p‖_∞ = scale`.
pub fn outer_poly(rng: &mut ChaCha8Rng, scale: f64) -> TaylorPoly {
    let deg = rng.random_range(1..=3);
    let mut c: Vec<Complex64> = (0..=deg)
        .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    c[0] = Complex64::new(0.0, 0.0);
    if c.iter().all(|x| x.norm() == 0.0) {
        c[1] = Complex64::new(1.0, 0.0);
    }
    let p = TaylorPoly::new(c);
    let grid = crate::boundary::BoundaryGrid::new(256, false).expect("grid");
    let s = sup_norm_on(&p, &grid, 8);
    let mut p = p.scale(Complex64::new(scale / s, 0.0)).into_coeffs();
    p[0] += 2.0;
    TaylorPoly::new(p)
}

/// `b·F` as a closed form.
pub fn product_symbol(zeros: &[Complex64], outer: &TaylorPoly) -> Symbol {
    Symbol::Product {
        factors: vec![Symbol::blaschke(zeros.to_vec(), 0), Symbol::poly(outer.clone())],
    }
}

#[derive(Debug, Clone)]
pub struct GapPair {
    pub f: Symbol,
    pub g: Symbol,
}

/// `f = b·F` with Blaschke degree `<= 4`, `|α| <= 0.7`, `F = 2 + p`,
/// `‖p‖_∞ <= 0.8`, and `g` a perturbation of `f` with `‖f − g‖_∞ < 0.15`
/// (perturbation halved until the bound holds).
pub fn gap_pair(rng: &mut ChaCha8Rng) -> GapPair {
    let zeros = blaschke_zeros(rng, 0, 4, 0.7);
    let outer_scale = rng.random_range(0.2..0.8);
    let base = outer_poly(rng, outer_scale);
    let dz: Vec<Complex64> = zeros.iter().map(|_| polar(rng, 0.0, 0.03)).collect();
    let dq = outer_poly(rng, 0.05);
    let grid = crate::boundary::BoundaryGrid::new(512, false).expect("grid");
    let mut size = 1.0;
    loop {
        let zeros_g: Vec<Complex64> = zeros.iter().zip(&dz).map(|(a, d)| a + d * size).collect();
        let mut outer_g = base.clone().into_coeffs();
        outer_g.resize(outer_g.len().max(dq.len()), Complex64::new(0.0, 0.0));
        for (k, c) in dq.coeffs().iter().enumerate().skip(1) {
            outer_g[k] += c * size;
        }
        let f = product_symbol(&zeros, &base);
        let g = product_symbol(&zeros_g, &TaylorPoly::new(outer_g));
        let d = grid
            .refined_angles(4)
            .into_iter()
            .map(|t| {
                let z = Complex64::from_polar(1.0, t);
                use crate::boundary::Analytic;
                (f.eval(z) - g.eval(z)).norm()
            })
            .fold(0.0, f64::max);
        if d < 0.15 || size < 1e-6 {
            return GapPair { f, g };
        }
        size *= 0.5;
    }
}

/// Polynomial of degree `<= max_degree` with all roots at distance at least
/// `margin` from the circle, an optional `z^k` factor, unit H² norm.
pub fn polynomial_off_circle(rng: &mut ChaCha8Rng, max_degree: usize, margin: f64) -> TaylorPoly {
    let origin = rng.random_range(0..=2usize);
    let d = rng.random_range(1..=max_degree.saturating_sub(origin).max(1));
    let roots: Vec<Complex64> = (0..d)
        .map(|_| {
            if rng.random_bool(0.5) {
                polar(rng, 0.2, 1.0 - margin)
            } else {
                polar(rng, 1.0 + margin, 3.0)
            }
        })
        .collect();
    let lead = Complex64::from_polar(1.0, rng.random_range(0.0..2.0 * PI));
    let p = TaylorPoly::from_roots(lead, &roots).shift_up(origin);
    let norm = crate::boundary::h2_norm(&p);
    p.scale(Complex64::new(1.0 / norm, 0.0))
}

/// Polygon with `<= max_segments` segments in `[−2, 2]²`; when
/// `through_origin` one segment is forced through 0.
pub fn polygonal_path(rng: &mut ChaCha8Rng, max_segments: usize, through_origin: bool) -> Result<PolygonalPath> {
    let pt = |rng: &mut ChaCha8Rng| Complex64::new(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
    let n = rng.random_range(2..=max_segments + 1);
    let mut v: Vec<Complex64> = (0..n).map(|_| pt(rng)).collect();
    if through_origin {
        let a = pt(rng);
        let at = rng.random_range(0..v.len().saturating_sub(1).max(1));
        v[at] = a;
        v[at + 1] = -a;
    }
    PolygonalPath::new(v)
}
