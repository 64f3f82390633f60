//! One-parameter families `t ↦ f_t`.

use serde::{Deserialize, Serialize};

use super::Symbol;
use crate::boundary::{riesz_project, Analytic, BoundaryGrid, TaylorPoly};
use crate::factor::{Backend, FactorConfig};
use crate::{Complex64, Error, Result};

const DOMAIN_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum PathFamily {
    /// `(t − z)/(1 − tz)`, `t ∈ [−1, 1]`.
    Example24,
    /// `t − a·z`, `t ∈ [1/2, 2]`.
    Linear { a: f64 },
    /// `g_t = (b + (1−t)r)/(1 + (1−t)r·b)`, or the reverse path
    /// `ĝ_t = (b + tr)/(1 + tr·b)`, `t ∈ [0, 1]`.
    MobiusHomotopy { inner: Symbol, r: f64, reversed: bool },
    /// `exp(t·(2i/π)·log((1+z)/(1−z)))`, `t ∈ [0, 1]`: from `h₀ = 1` to `h₁`.
    H1Witness,
    /// `b_α(z)·(base + t·slope·z)`, `t ∈ [0, 1]`.
    OuterRamp { alpha: f64, base: f64, slope: f64 },
    /// Piecewise-linear interpolation between symbols, equally spaced on
    /// `[0, 1]`.
    Polygonal { vertices: Vec<Symbol> },
    Constant { symbol: Symbol },
    Times { base: Box<PathFamily>, factor: Symbol },
    /// `f_t + shift`.
    Shifted { base: Box<PathFamily>, shift: Complex64 },
    /// Pieces on `[0, b₁], [b₁, b₂], …, [b_k, 1]`, each reparametrized
    /// affinely onto its own domain.
    Concat { pieces: Vec<PathFamily>, breaks: Vec<f64> },
}

impl PathFamily {
    /// Coarse kind used in reports and sidecars.
    pub fn kind(&self) -> &'static str {
        match self {
            PathFamily::Example24 => "example24",
            PathFamily::Linear { .. } => "linear_sec4",
            PathFamily::MobiusHomotopy { .. } => "mobius_homotopy",
            PathFamily::H1Witness => "h1_witness",
            PathFamily::Shifted { .. } => "shifted_polygonal",
            _ => "custom",
        }
    }

    pub fn domain(&self) -> (f64, f64) {
        match self {
            PathFamily::Example24 => (-1.0, 1.0),
            PathFamily::Linear { .. } => (0.5, 2.0),
            PathFamily::Times { base, .. } | PathFamily::Shifted { base, .. } => base.domain(),
            _ => (0.0, 1.0),
        }
    }

    /// Zero-based backend for polynomial families, modulus (with fallback)
    /// otherwise.
    pub fn preferred_backend(&self) -> Backend {
        match self {
            PathFamily::Linear { .. } => Backend::Zeros,
            _ => Backend::Auto,
        }
    }

    pub fn needs_offset_grid(&self) -> bool {
        match self {
            PathFamily::H1Witness => true,
            PathFamily::MobiusHomotopy { inner, .. } => inner.singular_at_real_points(),
            PathFamily::Polygonal { vertices } => vertices.iter().any(Symbol::singular_at_real_points),
            PathFamily::Constant { symbol } => symbol.singular_at_real_points(),
            PathFamily::Times { base, factor } => base.needs_offset_grid() || factor.singular_at_real_points(),
            PathFamily::Shifted { base, .. } => base.needs_offset_grid(),
            PathFamily::Concat { pieces, .. } => pieces.iter().any(PathFamily::needs_offset_grid),
            _ => false,
        }
    }

    /// Grid with the offset flag this family needs.
    pub fn grid_for(&self, grid: &BoundaryGrid) -> BoundaryGrid {
        if self.needs_offset_grid() {
            grid.with_offset(true)
        } else {
            *grid
        }
    }

    pub fn symbol_at(&self, t: f64) -> Result<Symbol> {
        let (lo, hi) = self.domain();
        if !(t >= lo - DOMAIN_SLACK && t <= hi + DOMAIN_SLACK) {
            return Err(Error::Precondition(format!(
                "t = {t} outside the family domain [{lo}, {hi}]"
            )));
        }
        let t = t.clamp(lo, hi);
        Ok(match self {
            PathFamily::Example24 => {
                if (t.abs() - 1.0).abs() < DOMAIN_SLACK {
                    Symbol::constant(Complex64::new(t.signum(), 0.0))
                } else {
                    Symbol::mobius_factor(t)
                }
            }
            PathFamily::Linear { a } => Symbol::poly(TaylorPoly::from_real(&[t, -a])),
            PathFamily::MobiusHomotopy { inner, r, reversed } => {
                let a = if *reversed { t * r } else { (1.0 - t) * r };
                Symbol::MobiusMap { inner: Box::new(inner.clone()), a }
            }
            PathFamily::H1Witness => Symbol::H1Witness { power: t },
            PathFamily::OuterRamp { alpha, base, slope } => Symbol::Product {
                factors: vec![
                    Symbol::blaschke(vec![Complex64::new(*alpha, 0.0)], 0),
                    Symbol::poly(TaylorPoly::from_real(&[*base, t * slope])),
                ],
            },
            PathFamily::Polygonal { vertices } => polygonal_at(vertices, t)?,
            PathFamily::Constant { symbol } => symbol.clone(),
            PathFamily::Times { base, factor } => Symbol::Product {
                factors: vec![base.symbol_at(t)?, factor.clone()],
            },
            PathFamily::Shifted { base, shift } => Symbol::Combination {
                terms: vec![(Complex64::new(1.0, 0.0), base.symbol_at(t)?), (*shift, Symbol::one())],
            },
            PathFamily::Concat { pieces, breaks } => {
                let (piece, local) = concat_locate(pieces, breaks, t)?;
                piece.symbol_at(local)?
            }
        })
    }
}

fn polygonal_at(vertices: &[Symbol], t: f64) -> Result<Symbol> {
    match vertices.len() {
        0 => Err(Error::Domain("polygonal family without vertices".into())),
        1 => Ok(vertices[0].clone()),
        n => {
            let x = t * (n - 1) as f64;
            let i = (x.floor() as usize).min(n - 2);
            let lambda = x - i as f64;
            Ok(Symbol::Combination {
                terms: vec![
                    (Complex64::new(1.0 - lambda, 0.0), vertices[i].clone()),
                    (Complex64::new(lambda, 0.0), vertices[i + 1].clone()),
                ],
            })
        }
    }
}

fn concat_locate<'a>(pieces: &'a [PathFamily], breaks: &[f64], t: f64) -> Result<(&'a PathFamily, f64)> {
    if pieces.is_empty() || breaks.len() + 1 != pieces.len() {
        return Err(Error::Domain("concat needs one more piece than breakpoints".into()));
    }
    let mut start = 0.0;
    for (i, piece) in pieces.iter().enumerate() {
        let end = breaks.get(i).copied().unwrap_or(1.0);
        if t <= end || i + 1 == pieces.len() {
            let (lo, hi) = piece.domain();
            let s = if end > start { (t - start) / (end - start) } else { 0.0 };
            return Ok((piece, lo + s.clamp(0.0, 1.0) * (hi - lo)));
        }
        start = end;
    }
    unreachable!("last piece always matches")
}

/// `f_t` sampled from its closed form and projected to Taylor coefficients.
pub fn family_eval(fam: &PathFamily, t: f64, cfg: &FactorConfig) -> Result<TaylorPoly> {
    let grid = fam.grid_for(&cfg.grid);
    fam.symbol_at(t)?.to_taylor(&grid, cfg.truncation())
}

/// `g_t = (b + (1−t)r)/(1 + (1−t)r·b)` for an inner `b` given by its Taylor
/// coefficients.
pub fn mobius_homotopy(b: &TaylorPoly, r: f64, t: f64, grid: &BoundaryGrid) -> Result<TaylorPoly> {
    if !(r > 0.0 && r < 1.0) || !(0.0..=1.0).contains(&t) {
        return Err(Error::Precondition(format!(
            "mobius_homotopy needs r in (0,1) and t in [0,1], got r = {r}, t = {t}"
        )));
    }
    let samples = b.sample_on(grid)?;
    let defect = samples
        .values()
        .iter()
        .map(|v| (v.norm() - 1.0).abs())
        .fold(0.0, f64::max);
    if defect > 1e-8 {
        return Err(Error::Domain(format!(
            "mobius_homotopy needs an inner function (unimodularity defect {defect:e})"
        )));
    }
    let a = (1.0 - t) * r;
    if a == 0.0 {
        return Ok(b.clone());
    }
    let mapped = samples.map(|v| (v + a) / (1.0 + a * v));
    Ok(riesz_project(&mapped).poly)
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{E, PI};

    use super::*;
    use crate::boundary::{h2_dist, make_grid, sup_dist_on};

    #[test]
    fn closed_form_examples() {
        let cfg = FactorConfig::with_grid(256);
        let f = family_eval(&PathFamily::Example24, 0.0, &cfg).unwrap();
        assert!(h2_dist(&f, &TaylorPoly::from_real(&[0.0, -1.0])) < 1e-14);
        let f = family_eval(&PathFamily::Linear { a: 1.0 }, 2.0, &cfg).unwrap();
        assert_eq!(f, TaylorPoly::from_real(&[2.0, -1.0]));
        let h = PathFamily::H1Witness.symbol_at(1.0).unwrap();
        assert!((h.eval(Complex64::from_polar(1.0, PI / 2.0)).norm() - 1.0 / E).abs() < 1e-12);
        assert!(PathFamily::H1Witness.needs_offset_grid());
        assert!(matches!(PathFamily::Example24.symbol_at(1.5), Err(Error::Precondition(_))));
    }

    #[test]
    fn example24_endpoints_are_constants() {
        let s = PathFamily::Example24.symbol_at(1.0).unwrap();
        assert!((s.eval(Complex64::new(1.0, 0.0)) - 1.0).norm() < 1e-15);
        let s = PathFamily::Example24.symbol_at(-1.0).unwrap();
        assert!((s.eval(Complex64::new(0.3, 0.1)) + 1.0).norm() < 1e-15);
    }

    #[test]
    fn mobius_homotopy_examples() {
        let grid = make_grid(1024, false).unwrap();
        let z = TaylorPoly::z();
        assert_eq!(mobius_homotopy(&z, 0.5, 1.0, &grid).unwrap(), z);
        let phi = mobius_homotopy(&z, 0.5, 0.0, &grid).unwrap();
        let closed = Symbol::MobiusMap { inner: Box::new(Symbol::poly(z.clone())), a: 0.5 };
        assert!((phi.coeff(0) - 0.5).norm() < 1e-14);
        assert!((phi.eval(Complex64::new(0.2, 0.3)) - closed.eval(Complex64::new(0.2, 0.3))).norm() < 1e-12);
        let mut prev = phi;
        for k in 1..=100 {
            let g = mobius_homotopy(&z, 0.5, k as f64 / 100.0, &grid).unwrap();
            assert!(sup_dist_on(&g, &prev, &grid, 2) < 0.05);
            let defect = g
                .boundary_values(&grid)
                .values()
                .iter()
                .map(|v| (v.norm() - 1.0).abs())
                .fold(0.0, f64::max);
            assert!(defect < 1e-7);
            prev = g;
        }
        assert!(mobius_homotopy(&TaylorPoly::from_real(&[2.0]), 0.5, 0.5, &grid).is_err());
    }

    #[test]
    fn concat_reparametrizes() {
        let fam = PathFamily::Concat {
            pieces: vec![
                PathFamily::Constant { symbol: Symbol::constant(Complex64::new(1.0, 0.0)) },
                PathFamily::Linear { a: 1.0 },
            ],
            breaks: vec![0.5],
        };
        let z0 = Complex64::new(0.0, 0.0);
        assert_eq!(fam.symbol_at(0.25).unwrap().eval(z0), Complex64::new(1.0, 0.0));
        // t = 0.75 maps to the middle of [1/2, 2]
        assert!((fam.symbol_at(0.75).unwrap().eval(z0) - 1.25).norm() < 1e-15);
        assert!((fam.symbol_at(1.0).unwrap().eval(z0) - 2.0).norm() < 1e-15);
    }

    #[test]
    fn polygonal_interpolates() {
        let fam = PathFamily::Polygonal {
            vertices: vec![Symbol::one(), Symbol::poly(TaylorPoly::from_real(&[3.0, 1.0]))],
        };
        let s = fam.symbol_at(0.5).unwrap();
        assert!((s.eval(Complex64::new(1.0, 0.0)) - 2.5).norm() < 1e-15);
    }
}
