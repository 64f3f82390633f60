use serde::{Deserialize, Serialize};

use super::fft;
use super::{BoundaryGrid, TaylorPoly};
use crate::{Complex64, Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Complex samples of a boundary function on a [`BoundaryGrid`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundarySignal {
    grid: BoundaryGrid,
    values: Vec<Complex64>,
}

impl BoundarySignal {
    pub fn new(grid: BoundaryGrid, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.size() {
            return Err(Error::DimensionMismatch {
                left: values.len(),
                right: grid.size(),
            });
        }
        Ok(Self { grid, values })
    }

    pub fn from_real(grid: BoundaryGrid, values: &[f64]) -> Result<Self> {
        Self::new(grid, values.iter().map(|&v| Complex64::new(v, 0.0)).collect())
    }

    pub fn grid(&self) -> &BoundaryGrid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        Self {
            grid: self.grid,
            values: self.values.iter().map(|&v| f(v)).collect(),
        }
    }

    /// Pointwise combination of two signals on the same grid.
    pub fn zip_with(&self, other: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Result<Self> {
        if self.grid != other.grid {
            return Err(Error::DimensionMismatch {
                left: self.grid.size(),
                right: other.grid.size(),
            });
        }
        Ok(Self {
            grid: self.grid,
            values: self.values.iter().zip(&other.values).map(|(&a, &b)| f(a, b)).collect(),
        })
    }

    pub fn moduli(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.norm()).collect()
    }

    pub fn min_modulus(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(f64::INFINITY, f64::min)
    }

    pub fn max_modulus(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn mean(&self) -> Complex64 {
        self.values.iter().sum::<Complex64>() / self.values.len() as f64
    }

    /// True when every imaginary part is within `tol` (relative to the
    /// largest modulus, floored at 1).
    pub fn is_real(&self, tol: f64) -> bool {
        let scale = self.max_modulus().max(1.0);
        self.values.iter().all(|v| v.im.abs() <= tol * scale)
    }

    fn require_real(&self, what: &str) -> Result<()> {
        if self.is_real(1e-12) {
            Ok(())
        } else {
            Err(Error::Domain(format!("{what} requires a real-valued signal")))
        }
    }
}

/// Fourier coefficients `ĉ_n`, `n ∈ [−N/2, N/2)`, with
/// `s_j = Σ ĉ_n e^{inθ_j}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    grid: BoundaryGrid,
    // natural order: index i holds n = i − N/2
    coeffs: Vec<Complex64>,
}

impl Spectrum {
    pub fn grid(&self) -> &BoundaryGrid {
        &self.grid
    }

    pub fn min_index(&self) -> isize {
        -((self.grid.size() / 2) as isize)
    }

    pub fn max_index(&self) -> isize {
        (self.grid.size() / 2) as isize - 1
    }

    /// `ĉ_n`, zero outside the band.
    pub fn get(&self, n: isize) -> Complex64 {
        if n < self.min_index() || n > self.max_index() {
            return ZERO;
        }
        self.coeffs[(n - self.min_index()) as usize]
    }

    /// `(n, ĉ_n)` in increasing `n`.
    pub fn iter(&self) -> impl Iterator<Item = (isize, Complex64)> + '_ {
        let lo = self.min_index();
        self.coeffs.iter().enumerate().map(move |(i, &c)| (lo + i as isize, c))
    }

    /// Applies a Fourier multiplier `ĉ_n ← m(n) ĉ_n`.
    pub fn multiply(&self, m: impl Fn(isize) -> Complex64) -> Self {
        let lo = self.min_index();
        Self {
            grid: self.grid,
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, &c)| c * m(lo + i as isize))
                .collect(),
        }
    }

    pub fn energy(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }
}

pub fn analyze(s: &BoundarySignal) -> Spectrum {
    let grid = *s.grid();
    let n = grid.size();
    let mut buf = s.values().to_vec();
    fft::forward(&mut buf);
    let inv = 1.0 / n as f64;
    let shift = grid.shift();
    let half = (n / 2) as isize;
    let coeffs = (-half..half)
        .map(|k| {
            let c = buf[k.rem_euclid(n as isize) as usize] * inv;
            if shift != 0.0 {
                c * Complex64::from_polar(1.0, -shift * k as f64)
            } else {
                c
            }
        })
        .collect();
    Spectrum { grid, coeffs }
}

pub fn synthesize(spec: &Spectrum) -> BoundarySignal {
    let grid = *spec.grid();
    let n = grid.size();
    let shift = grid.shift();
    let mut buf = vec![ZERO; n];
    for (k, c) in spec.iter() {
        let c = if shift != 0.0 {
            c * Complex64::from_polar(1.0, shift * k as f64)
        } else {
            c
        };
        buf[k.rem_euclid(n as isize) as usize] = c;
    }
    fft::inverse(&mut buf);
    BoundarySignal::new(grid, buf).expect("length preserved")
}

/// Analytic part of a boundary signal together with the ℓ² mass that was
/// discarded on negative frequencies.
#[derive(Debug, Clone, PartialEq)]
pub struct RieszProjection {
    pub poly: TaylorPoly,
    pub residual: f64,
}

/// Keeps `ĉ_k` for `0 ≤ k < N/2`; reports `sqrt(Σ_{n<0} |ĉ_n|²)`.
pub fn riesz_project(s: &BoundarySignal) -> RieszProjection {
    let spec = analyze(s);
    let half = (s.grid().size() / 2) as isize;
    let poly = TaylorPoly::new((0..half).map(|k| spec.get(k)).collect());
    let residual = (-half..0).map(|k| spec.get(k).norm_sqr()).sum::<f64>().sqrt();
    RieszProjection { poly, residual }
}

/// Harmonic conjugate via the multiplier `−i·sgn(n)`; the Nyquist mode is
/// dropped since its sign is ambiguous on the grid.
pub fn conjugate_function(u: &BoundarySignal) -> Result<BoundarySignal> {
    u.require_real("conjugate_function")?;
    let nyquist = analyze(u).min_index();
    let spec = analyze(u).multiply(|n| {
        if n == 0 || n == nyquist {
            ZERO
        } else if n > 0 {
            Complex64::new(0.0, -1.0)
        } else {
            Complex64::new(0.0, 1.0)
        }
    });
    Ok(synthesize(&spec).map(|v| Complex64::new(v.re, 0.0)))
}

/// Analytic completion `L = ĉ_0 + 2 Σ_{n≥1} ĉ_n z^n` of a real boundary
/// function: `Re L̃ = u` (up to the Nyquist mode) and `L(0)` is real.
pub fn herglotz_extend(u: &BoundarySignal) -> Result<TaylorPoly> {
    u.require_real("herglotz_extend")?;
    let spec = analyze(u);
    let half = (u.grid().size() / 2) as isize;
    let mut coeffs = Vec::with_capacity(half as usize);
    coeffs.push(Complex64::new(spec.get(0).re, 0.0));
    coeffs.extend((1..half).map(|k| 2.0 * spec.get(k)));
    Ok(TaylorPoly::new(coeffs))
}
