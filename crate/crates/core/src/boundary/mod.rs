//! Disk-analytic and boundary representations and the Fourier bridge between
//! them.
//!
//! An analytic symbol is carried either as a [`TaylorPoly`] (truncated power
//! series) or as anything implementing [`Analytic`] (closed-form evaluators).
//! Boundary traces live on a [`BoundaryGrid`] as a [`BoundarySignal`].

mod fft;
mod grid;
mod norms;
mod spectral;
mod taylor;

pub use grid::{make_grid, BoundaryGrid};
pub use norms::{h2_dist, h2_norm, sup_dist_on, sup_norm_on, SupNorm};
pub use spectral::{
    analyze, conjugate_function, herglotz_extend, riesz_project, synthesize, BoundarySignal,
    RieszProjection, Spectrum,
};
pub use taylor::TaylorPoly;

use crate::{Complex64, Error, Result};

/// Anything that can be evaluated on the closed unit disk.
pub trait Analytic {
    fn eval(&self, z: Complex64) -> Complex64;

    /// Samples the boundary trace on `grid`.
    fn sample_on(&self, grid: &BoundaryGrid) -> Result<BoundarySignal> {
        let mut values = Vec::with_capacity(grid.size());
        for j in 0..grid.size() {
            let theta = grid.angle(j);
            let v = self.eval(Complex64::from_polar(1.0, theta));
            if !(v.re.is_finite() && v.im.is_finite()) {
                return Err(Error::Evaluation {
                    angle: theta,
                    value: format!("{v}"),
                });
            }
            values.push(v);
        }
        BoundarySignal::new(*grid, values)
    }
}

impl<F> Analytic for F
where
    F: Fn(Complex64) -> Complex64,
{
    fn eval(&self, z: Complex64) -> Complex64 {
        self(z)
    }
}

/// `values[j] = f(e^{iθ_j})`.
pub fn sample<A: Analytic + ?Sized>(f: &A, grid: &BoundaryGrid) -> Result<BoundarySignal> {
    f.sample_on(grid)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_samples_to_ones() {
        let grid = make_grid(16, true).unwrap();
        let s = sample(&|_z: Complex64| Complex64::new(1.0, 0.0), &grid).unwrap();
        assert!(s.values().iter().all(|v| (*v - 1.0).norm() == 0.0));
    }

    #[test]
    fn identity_samples_to_grid_points() {
        let grid = make_grid(8, false).unwrap();
        let s = sample(&TaylorPoly::z(), &grid).unwrap();
        for (j, v) in s.values().iter().enumerate() {
            assert!((*v - Complex64::from_polar(1.0, grid.angle(j))).norm() < 1e-15);
        }
    }

    #[test]
    fn geometric_series_matches_closed_form() {
        let grid = make_grid(64, false).unwrap();
        let closed = sample(&|z: Complex64| 1.0 / (1.0 - 0.5 * z), &grid).unwrap();
        let series = TaylorPoly::new((0..80).map(|k| Complex64::new(0.5f64.powi(k), 0.0)).collect());
        let by_series = sample(&series, &grid).unwrap();
        let err = closed
            .values()
            .iter()
            .zip(by_series.values())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        assert!(err < 1e-12, "err = {err}");
    }

    #[test]
    fn singular_sample_names_angle() {
        let grid = make_grid(8, false).unwrap();
        let err = sample(&|z: Complex64| 1.0 / (1.0 - z), &grid).unwrap_err();
        match err {
            Error::Evaluation { angle, .. } => assert_eq!(angle, 0.0),
            other => panic!("unexpected {other:?}"),
        }
    }
}
