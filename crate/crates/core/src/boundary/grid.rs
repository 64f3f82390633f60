use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::{Complex64, Error, Result};

/// Uniform grid on the unit circle, `θ_j = 2π(j + offset/2)/N`.
///
/// With `offset` on no sample sits at `θ = 0` or `θ = π`, which keeps
/// families with singularities at `z = ±1` evaluable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BoundaryGrid {
    size: usize,
    offset: bool,
}

pub fn make_grid(size: usize, offset: bool) -> Result<BoundaryGrid> {
    BoundaryGrid::new(size, offset)
}

impl BoundaryGrid {
    pub fn new(size: usize, offset: bool) -> Result<Self> {
        if size < 8 || !size.is_power_of_two() {
            return Err(Error::Config(format!(
                "grid size must be a power of two >= 8, got {size}"
            )));
        }
        Ok(Self { size, offset })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn offset(&self) -> bool {
        self.offset
    }

    /// Same size, different offset flag.
    pub fn with_offset(&self, offset: bool) -> Self {
        Self { size: self.size, offset }
    }

    /// Angle of the first sample: `π/N` with offset, else 0.
    pub fn shift(&self) -> f64 {
        if self.offset {
            PI / self.size as f64
        } else {
            0.0
        }
    }

    pub fn angle(&self, j: usize) -> f64 {
        2.0 * PI * j as f64 / self.size as f64 + self.shift()
    }

    pub fn angles(&self) -> Vec<f64> {
        (0..self.size).map(|j| self.angle(j)).collect()
    }

    pub fn points(&self) -> Vec<Complex64> {
        self.angles()
            .into_iter()
            .map(|t| Complex64::from_polar(1.0, t))
            .collect()
    }

    /// Angles of the `factor`-times finer grid that contains this one
    /// (every `factor`-th refined sample is an original sample).
    pub fn refined_angles(&self, factor: usize) -> Vec<f64> {
        let n = self.size * factor.max(1);
        (0..n)
            .map(|i| 2.0 * PI * i as f64 / n as f64 + self.shift())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eight_point_grid() {
        let g = make_grid(8, false).unwrap();
        let a = g.angles();
        assert_eq!(a.len(), 8);
        for (j, t) in a.iter().enumerate() {
            assert!((t - j as f64 * PI / 4.0).abs() < 1e-15);
        }
    }

    #[test]
    fn offset_grid_avoids_real_axis() {
        let g = make_grid(8, true).unwrap();
        assert!((g.angle(0) - PI / 8.0).abs() < 1e-15);
        let g = make_grid(4096, true).unwrap();
        let a = g.angles();
        assert!(a.windows(2).all(|w| w[0] < w[1]));
        assert!(a.iter().all(|&t| t > 0.0 && t < 2.0 * PI && t != PI));
    }

    #[test]
    fn rejects_bad_sizes() {
        assert!(matches!(make_grid(6, false), Err(Error::Config(_))));
        assert!(make_grid(4, false).is_err());
        assert!(make_grid(24, true).is_err());
    }

    #[test]
    fn refined_grid_contains_base() {
        let g = make_grid(16, true).unwrap();
        let r = g.refined_angles(4);
        for j in 0..16 {
            assert!((r[4 * j] - g.angle(j)).abs() < 1e-14);
        }
    }
}
