//! Path surgery: shifting a family off the origin and gluing the three-piece
//! path between the witnesses `h₀` and `h₁`.

use super::{PathFamily, PolygonalPath, ShiftResult, Symbol};
use crate::boundary::{Analytic, BoundaryGrid};
use crate::{Error, Result};

/// Polygon through the values `f_t(0)` on the grid.
pub fn gamma_path(fam: &PathFamily, t_grid: &[f64]) -> Result<PolygonalPath> {
    let values = t_grid
        .iter()
        .map(|&t| Ok(fam.symbol_at(t)?.value_at_origin()))
        .collect::<Result<Vec<_>>>()?;
    PolygonalPath::new(values)
}

/// Grid infimum of `|f_t|` on the circle over the `t` grid.
pub fn boundary_modulus_inf(fam: &PathFamily, t_grid: &[f64], grid: &BoundaryGrid) -> Result<f64> {
    let grid = fam.grid_for(grid);
    let mut inf = f64::INFINITY;
    for &t in t_grid {
        let s = fam.symbol_at(t)?.sample_on(&grid)?;
        inf = inf.min(s.min_modulus());
    }
    Ok(inf)
}

fn endpoint_moduli(fam: &PathFamily, t_grid: &[f64]) -> Result<(f64, f64)> {
    let (lo, hi) = match (t_grid.first(), t_grid.last()) {
        (Some(&lo), Some(&hi)) => (lo, hi),
        _ => return Err(Error::Precondition("empty t grid".into())),
    };
    Ok((
        fam.symbol_at(lo)?.value_at_origin().norm(),
        fam.symbol_at(hi)?.value_at_origin().norm(),
    ))
}

/// `0.5·min(ε₀, inf |f̃_t|, |f_lo(0)|, |f_hi(0)|)`.
pub fn default_shift_eps(fam: &PathFamily, shift: &ShiftResult, t_grid: &[f64], grid: &BoundaryGrid) -> Result<f64> {
    let inf = boundary_modulus_inf(fam, t_grid, grid)?;
    let (a, b) = endpoint_moduli(fam, t_grid)?;
    Ok(0.5 * shift.eps0.min(inf).min(a).min(b))
}

/// `t ↦ f_t + eps·e^{iη}` on the range of `t_grid`.
///
/// The bounds are checked on the grid: `eps ≤ ε₀`, `eps` below the boundary
/// modulus infimum and below `|f(0)|` at both ends. Every shifted member on
/// the grid must be nonzero at the origin and on the circle.
pub fn assemble_shifted_path(
    fam: &PathFamily,
    shift: &ShiftResult,
    eps: f64,
    t_grid: &[f64],
    grid: &BoundaryGrid,
) -> Result<PathFamily> {
    if !(eps > 0.0 && eps <= shift.eps0) {
        return Err(Error::Precondition(format!(
            "eps = {eps} must lie in (0, eps0 = {}]",
            shift.eps0
        )));
    }
    let inf = boundary_modulus_inf(fam, t_grid, grid)?;
    if eps >= inf {
        return Err(Error::Precondition(format!(
            "eps = {eps} is not below the boundary modulus infimum {inf}"
        )));
    }
    let (a, b) = endpoint_moduli(fam, t_grid)?;
    if eps >= a.min(b) {
        return Err(Error::Precondition(format!(
            "eps = {eps} is not below the endpoint values |f(0)| = {a}, {b}"
        )));
    }
    let shifted = PathFamily::Shifted { base: Box::new(fam.clone()), shift: shift.shift(eps) };
    let sgrid = shifted.grid_for(grid);
    for &t in t_grid {
        let s = shifted.symbol_at(t)?;
        let at0 = s.value_at_origin().norm();
        let on_circle = s.sample_on(&sgrid)?.min_modulus();
        if !(at0 > 0.0 && on_circle > 0.0) {
            return Err(Error::Domain(format!(
                "shifted member at t = {t} vanishes (|f(0)| = {at0}, boundary minimum {on_circle})"
            )));
        }
    }
    Ok(shifted)
}

/// The three-piece path `g_{4t}h₀` on `[0, 1/4]`, `middle` on `[1/4, 1/2]`,
/// `ĝ_{2t−1}h₁` on `[1/2, 1]`, where `g` and `ĝ` are the Möbius homotopies
/// of `b` with parameter `r`.
pub fn bridge_path(b: Symbol, r: f64, h0: Symbol, h1: Symbol, middle: PathFamily) -> Result<PathFamily> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::Precondition(format!("r = {r} must lie in (0, 1)")));
    }
    if b.value_at_origin().re < 0.0 || b.value_at_origin().im.abs() > 1e-12 {
        return Err(Error::Precondition("b(0) must be real and nonnegative".into()));
    }
    let g = |reversed| PathFamily::MobiusHomotopy { inner: b.clone(), r, reversed };
    Ok(PathFamily::Concat {
        pieces: vec![
            PathFamily::Times { base: Box::new(g(false)), factor: h0 },
            middle,
            PathFamily::Times { base: Box::new(g(true)), factor: h1 },
        ],
        breaks: vec![0.25, 0.5],
    })
}

/// Largest boundary jump of `fam` at the given breakpoints.
pub fn break_mismatch(fam: &PathFamily, breaks: &[f64], grid: &BoundaryGrid) -> Result<f64> {
    let grid = fam.grid_for(grid);
    let mut worst = 0.0f64;
    for &b in breaks {
        let left = fam.symbol_at(b)?.sample_on(&grid)?;
        let right = fam.symbol_at(b + 1e-12)?.sample_on(&grid)?;
        let d = left
            .values()
            .iter()
            .zip(right.values())
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max);
        worst = worst.max(d);
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;
    use crate::boundary::{make_grid, TaylorPoly};
    use crate::Complex64;
    use crate::paths::shift_direction;

    #[test]
    fn constant_family_shift() {
        let fam = PathFamily::Constant { symbol: Symbol::constant(Complex64::new(2.0, 0.0)) };
        let grid = make_grid(64, false).unwrap();
        let ts = [0.0, 0.5, 1.0];
        let shift = ShiftResult { eta: PI / 2.0, eps0: 1.0, min_clearance: 2.0, separation: PI / 2.0 };
        let shifted = assemble_shifted_path(&fam, &shift, 0.5, &ts, &grid).unwrap();
        let v = shifted.symbol_at(0.3).unwrap().value_at_origin();
        assert!((v - Complex64::new(2.0, 0.5)).norm() < 1e-15);
    }

    #[test]
    fn example24_restricted_shift() {
        let grid = make_grid(256, false).unwrap();
        let ts: Vec<f64> = (0..=12).map(|k| 0.2 + 0.05 * k as f64).collect();
        let gamma = gamma_path(&PathFamily::Example24, &ts).unwrap();
        let shift = shift_direction(&gamma, 1.0).unwrap();
        assert!((shift.eta - PI / 2.0).abs() < 1e-12);
        let fam = assemble_shifted_path(&PathFamily::Example24, &shift, 0.05, &ts, &grid).unwrap();
        for &t in &ts {
            let v = fam.symbol_at(t).unwrap().value_at_origin();
            assert!((v - Complex64::new(t, 0.05)).norm() < 1e-12);
        }
        let eps = default_shift_eps(&PathFamily::Example24, &shift, &ts, &grid).unwrap();
        assert!((eps - 0.1).abs() < 1e-12);
    }

    #[test]
    fn shift_bounds_enforced() {
        let grid = make_grid(64, false).unwrap();
        let ts = [0.2, 0.8];
        let shift = ShiftResult { eta: PI / 2.0, eps0: 5.0, min_clearance: 1.0, separation: PI / 2.0 };
        // Blaschke members have boundary modulus 1
        let e = assemble_shifted_path(&PathFamily::Example24, &shift, 1.5, &ts, &grid).unwrap_err();
        assert!(e.to_string().contains("boundary modulus"));
        // |f_{0.2}(0)| = 0.2
        let e = assemble_shifted_path(&PathFamily::Example24, &shift, 0.5, &ts, &grid).unwrap_err();
        assert!(e.to_string().contains("endpoint"));
        assert!(assemble_shifted_path(&PathFamily::Example24, &shift, 6.0, &ts, &grid).is_err());
    }

    #[test]
    fn bridge_is_continuous_at_breaks() {
        let b = Symbol::poly(TaylorPoly::z());
        let middle = PathFamily::Times { base: Box::new(PathFamily::H1Witness), factor: b.clone() };
        let fam = bridge_path(b, 0.5, Symbol::one(), Symbol::h1(), middle).unwrap();
        let grid = make_grid(512, true).unwrap();
        assert!(break_mismatch(&fam, &[0.25, 0.5], &grid).unwrap() < 1e-9);
        // φ = (z + 1/2)/(1 + z/2) at both ends, times h₀ = 1 and h₁
        let z = Complex64::new(0.1, 0.2);
        let phi = (z + 0.5) / (1.0 + 0.5 * z);
        assert!((fam.symbol_at(0.0).unwrap().eval(z) - phi).norm() < 1e-14);
        assert!((fam.symbol_at(1.0).unwrap().eval(z) - phi * Symbol::h1().eval(z)).norm() < 1e-14);
    }
}
