//! The maps `Q_inn` and `Q_out`.
//!
//! Two independent backends compute `f = u·F` with `u` normalized so that its
//! first nonvanishing Taylor coefficient is real-positive:
//!
//! * [`factorize`] reconstructs the outer part from the boundary modulus and
//!   divides it out on the grid; it needs `f/z^{n₀}` to be invertible on the
//!   circle at grid resolution.
//! * [`factorize_hol`] reads the inner part off the zeros of a polynomial; it
//!   also handles zeros on the circle, which it routes to the outer part.

mod hol;
mod modulus;
mod roots;
mod zeros;

pub use hol::{factorize_hol, outer_zero_set};
pub use modulus::{factorize, mul0, outer_from_modulus};
pub use roots::{poly_roots, poly_roots_seeded, DEFAULT_SEED_ANGLE};
pub use zeros::{blaschke, blaschke_eval, classify_zeros, ZeroClassification};

use serde::{Deserialize, Serialize};

use crate::boundary::{BoundaryGrid, TaylorPoly};
use crate::{Complex64, Error, Result};

/// Highest degree `Backend::Auto` (and the profiler) hands to the zero-based
/// backend.
pub const ZEROS_MAX_DEGREE: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Modulus,
    Zeros,
    /// Modulus first; low-degree polynomials that are not boundary-invertible
    /// fall back to the zero-based backend.
    Auto,
}

impl std::str::FromStr for Backend {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "modulus" => Ok(Backend::Modulus),
            "zeros" => Ok(Backend::Zeros),
            "auto" => Ok(Backend::Auto),
            other => Err(Error::Config(format!("unknown backend {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FactorConfig {
    pub grid: BoundaryGrid,
    /// Taylor truncation `M`; `None` means `N/2`.
    pub truncation: Option<usize>,
    /// Coefficients at or below this modulus count as zero (`Mul₀`, trimming).
    pub zero_tol: f64,
    pub modulus_floor: f64,
    /// Clamp the modulus to the floor instead of failing.
    pub clamp: bool,
    pub residual_tol: f64,
    pub defect_tol: f64,
    /// Zero classification tolerance `τ`.
    pub tau: f64,
}

impl Default for FactorConfig {
    fn default() -> Self {
        Self::with_grid(4096)
    }
}

impl FactorConfig {
    pub fn with_grid(size: usize) -> Self {
        Self {
            grid: BoundaryGrid::new(size, false).expect("valid default grid"),
            truncation: None,
            zero_tol: 1e-12,
            modulus_floor: 1e-9,
            clamp: false,
            residual_tol: 1e-7,
            defect_tol: 1e-7,
            tau: 1e-6,
        }
    }

    pub fn truncation(&self) -> usize {
        self.truncation.unwrap_or(self.grid.size() / 2)
    }

    pub fn with_offset(mut self, offset: bool) -> Self {
        self.grid = self.grid.with_offset(offset);
        self
    }
}

/// `f = u·F` with diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct FactorizationResult {
    pub inner: TaylorPoly,
    pub outer: TaylorPoly,
    /// `Mul₀(f)`.
    pub n0: usize,
    /// Unimodular scalar applied to the raw inner part.
    pub phase: Complex64,
    /// `‖f − u·F‖₂` on the truncation.
    pub residual: f64,
    /// `max ||ũ| − 1|` on the grid, or the projection residual of `F` if
    /// larger.
    pub boundary_defect: f64,
    pub backend: Backend,
    /// Zero classification (zero-based backend only).
    pub zeros: Option<ZeroClassification>,
}

impl FactorizationResult {
    pub fn is_accepted(&self, cfg: &FactorConfig) -> bool {
        self.residual < cfg.residual_tol && self.boundary_defect < cfg.defect_tol
    }

    /// Argument of the `n₀`-th inner coefficient (0 when normalized).
    pub fn normalization_angle(&self) -> f64 {
        self.inner.coeff(self.n0).arg()
    }

    pub fn to_json(&self) -> FactorizationJson {
        FactorizationJson {
            inner: wire_coeffs(&self.inner),
            outer: wire_coeffs(&self.outer),
            n0: self.n0,
            phase: [self.phase.re, self.phase.im],
            residual: self.residual,
            boundary_defect: self.boundary_defect,
        }
    }
}

/// Wire format of a factorization. Coefficient arrays stop at the last
/// coefficient with modulus `>= 1e-14`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FactorizationJson {
    pub inner: Vec<[f64; 2]>,
    pub outer: Vec<[f64; 2]>,
    pub n0: usize,
    pub phase: [f64; 2],
    pub residual: f64,
    pub boundary_defect: f64,
}

impl FactorizationJson {
    pub fn inner_poly(&self) -> TaylorPoly {
        from_wire(&self.inner)
    }

    pub fn outer_poly(&self) -> TaylorPoly {
        from_wire(&self.outer)
    }
}

const WIRE_CUTOFF: f64 = 1e-14;

fn wire_coeffs(p: &TaylorPoly) -> Vec<[f64; 2]> {
    let keep = p
        .coeffs()
        .iter()
        .rposition(|c| c.norm() >= WIRE_CUTOFF)
        .map_or(0, |i| i + 1);
    p.coeffs()[..keep].iter().map(|c| [c.re, c.im]).collect()
}

fn from_wire(c: &[[f64; 2]]) -> TaylorPoly {
    TaylorPoly::new(c.iter().map(|&[re, im]| Complex64::new(re, im)).collect())
}

pub fn factorize_with(f: &TaylorPoly, backend: Backend, cfg: &FactorConfig) -> Result<FactorizationResult> {
    match backend {
        Backend::Modulus => factorize(f, cfg),
        Backend::Zeros => factorize_hol(f, cfg),
        Backend::Auto => match factorize(f, cfg) {
            Err(e @ (Error::NotBoundaryInvertible { .. } | Error::NotAnalytic { .. })) => {
                match f.degree(cfg.zero_tol) {
                    Some(d) if d <= ZEROS_MAX_DEGREE => factorize_hol(f, cfg),
                    _ => Err(e),
                }
            }
            other => other,
        },
    }
}

pub fn q_inn(f: &TaylorPoly, cfg: &FactorConfig) -> Result<TaylorPoly> {
    Ok(factorize_with(f, Backend::Auto, cfg)?.inner)
}

pub fn q_out(f: &TaylorPoly, cfg: &FactorConfig) -> Result<TaylorPoly> {
    Ok(factorize_with(f, Backend::Auto, cfg)?.outer)
}
