//! Closed-form analytic symbols used by the path families.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::boundary::{riesz_project, Analytic, BoundaryGrid, TaylorPoly};
use crate::factor::{blaschke, blaschke_eval};
use crate::{Complex64, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "symbol", rename_all = "snake_case")]
pub enum Symbol {
    Poly { coeffs: TaylorPoly },
    /// `z^origin ∏ (|α|/α)(α − z)/(1 − ᾱz)`.
    Blaschke { zeros: Vec<Complex64>, origin: usize },
    Rational { num: TaylorPoly, den: TaylorPoly },
    /// `exp(power · (2i/π) · log((1+z)/(1−z)))`; `power = 1` is the witness
    /// `h₁`, `power = 0` the constant 1.
    H1Witness { power: f64 },
    /// `(b + a)/(1 + a·b)` for an inner `b`.
    MobiusMap { inner: Box<Symbol>, a: f64 },
    Product { factors: Vec<Symbol> },
    /// `Σ w_i S_i`.
    Combination { terms: Vec<(Complex64, Symbol)> },
}

impl Symbol {
    pub fn poly(coeffs: TaylorPoly) -> Self {
        Symbol::Poly { coeffs }
    }

    pub fn constant(c: Complex64) -> Self {
        Symbol::poly(TaylorPoly::constant(c))
    }

    pub fn one() -> Self {
        Symbol::poly(TaylorPoly::one())
    }

    pub fn blaschke(zeros: Vec<Complex64>, origin: usize) -> Self {
        Symbol::Blaschke { zeros, origin }
    }

    /// `(t − z)/(1 − tz)`.
    pub fn mobius_factor(t: f64) -> Self {
        Symbol::Rational {
            num: TaylorPoly::from_real(&[t, -1.0]),
            den: TaylorPoly::from_real(&[1.0, -t]),
        }
    }

    pub fn h1() -> Self {
        Symbol::H1Witness { power: 1.0 }
    }

    /// True when the symbol may be singular at `z = ±1`; such symbols are
    /// sampled on the half-offset grid.
    pub fn singular_at_real_points(&self) -> bool {
        match self {
            Symbol::H1Witness { power } => *power != 0.0,
            Symbol::MobiusMap { inner, .. } => inner.singular_at_real_points(),
            Symbol::Product { factors } => factors.iter().any(Symbol::singular_at_real_points),
            Symbol::Combination { terms } => terms.iter().any(|(_, s)| s.singular_at_real_points()),
            Symbol::Rational { den, .. } => {
                den.eval(Complex64::new(1.0, 0.0)).norm() < 1e-12
                    || den.eval(Complex64::new(-1.0, 0.0)).norm() < 1e-12
            }
            Symbol::Poly { .. } | Symbol::Blaschke { .. } => false,
        }
    }

    pub fn value_at_origin(&self) -> Complex64 {
        self.eval(Complex64::new(0.0, 0.0))
    }

    /// Taylor representative: polynomials and Blaschke products exactly,
    /// everything else by sampling the closed form and projecting.
    pub fn to_taylor(&self, grid: &BoundaryGrid, truncation: usize) -> Result<TaylorPoly> {
        match self {
            Symbol::Poly { coeffs } => Ok(coeffs.clone()),
            Symbol::Blaschke { zeros, origin } => blaschke(zeros, *origin, truncation),
            _ => {
                let grid = if self.singular_at_real_points() {
                    grid.with_offset(true)
                } else {
                    *grid
                };
                Ok(riesz_project(&self.sample_on(&grid)?).poly.truncated(truncation))
            }
        }
    }

    /// Closed-form samples on the `oversample`-times refined grid.
    pub fn refined_values(&self, grid: &BoundaryGrid, oversample: usize) -> Vec<Complex64> {
        grid.refined_angles(oversample)
            .into_iter()
            .map(|t| self.eval(Complex64::from_polar(1.0, t)))
            .collect()
    }
}

impl Analytic for Symbol {
    fn eval(&self, z: Complex64) -> Complex64 {
        match self {
            Symbol::Poly { coeffs } => coeffs.eval(z),
            Symbol::Blaschke { zeros, origin } => blaschke_eval(zeros, *origin, z),
            Symbol::Rational { num, den } => num.eval(z) / den.eval(z),
            Symbol::H1Witness { power } => {
                if *power == 0.0 {
                    return Complex64::new(1.0, 0.0);
                }
                let w = (1.0 + z) / (1.0 - z);
                (Complex64::new(0.0, 2.0 * power / PI) * w.ln()).exp()
            }
            Symbol::MobiusMap { inner, a } => {
                let b = inner.eval(z);
                (b + a) / (1.0 + a * b)
            }
            Symbol::Product { factors } => factors.iter().map(|s| s.eval(z)).product(),
            Symbol::Combination { terms } => terms.iter().map(|(w, s)| w * s.eval(z)).sum(),
        }
    }
}
