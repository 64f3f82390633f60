use super::{analyze, BoundaryGrid, BoundarySignal, TaylorPoly};
use crate::Complex64;

/// `sqrt(Σ |c_k|²)`.
pub fn h2_norm(f: &TaylorPoly) -> f64 {
    f.coeffs().iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

/// H² distance on the common truncation (shorter side zero-padded).
pub fn h2_dist(f: &TaylorPoly, g: &TaylorPoly) -> f64 {
    let n = f.len().max(g.len());
    (0..n)
        .map(|k| (f.coeff(k) - g.coeff(k)).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// Boundary maximum on an `oversample`-times refined grid.
///
/// The refined grid contains the base grid, so up to rounding the estimate
/// never decreases when `oversample` is multiplied by an integer.
pub trait SupNorm {
    fn sup_norm(&self, oversample: usize) -> f64;
}

impl SupNorm for TaylorPoly {
    fn sup_norm(&self, oversample: usize) -> f64 {
        sup_norm_on(self, &self.natural_grid(), oversample)
    }
}

impl SupNorm for BoundarySignal {
    /// Trigonometric interpolation of the samples, maximized on the refined
    /// grid.
    fn sup_norm(&self, oversample: usize) -> f64 {
        let factor = oversample.max(1);
        if factor == 1 {
            return self.max_modulus();
        }
        let grid = *self.grid();
        let n = grid.size();
        let fine = n * factor;
        let spec = analyze(self);
        let mut buf = vec![Complex64::new(0.0, 0.0); fine];
        let shift = grid.shift();
        for (k, c) in spec.iter() {
            let c = if shift != 0.0 {
                c * Complex64::from_polar(1.0, shift * k as f64)
            } else {
                c
            };
            buf[k.rem_euclid(fine as isize) as usize] = c;
        }
        super::fft::inverse(&mut buf);
        buf.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }
}

/// `max |f|` over the `oversample`-times refinement of `grid`.
pub fn sup_norm_on(f: &TaylorPoly, grid: &BoundaryGrid, oversample: usize) -> f64 {
    f.refined_values(grid, oversample)
        .iter()
        .map(|v| v.norm())
        .fold(0.0, f64::max)
}

/// `‖f − g‖_∞` estimated on the refined grid.
pub fn sup_dist_on(f: &TaylorPoly, g: &TaylorPoly, grid: &BoundaryGrid, oversample: usize) -> f64 {
    sup_norm_on(&(f - g), grid, oversample)
}
