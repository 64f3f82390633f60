//! Factorization from the boundary modulus: `F = exp(Herglotz(log|f̃|))`,
//! `u = f/F`, both recovered on the grid and projected back to Taylor
//! coefficients.

use super::{FactorConfig, FactorizationResult};
use crate::boundary::{h2_dist, herglotz_extend, riesz_project, BoundarySignal, TaylorPoly};
use crate::factor::Backend;
use crate::{Complex64, Error, Result};

/// `Mul₀(f)`: index of the first coefficient with modulus above `tol`.
pub fn mul0(f: &TaylorPoly, tol: f64) -> Result<usize> {
    f.coeffs()
        .iter()
        .position(|c| c.norm() > tol)
        .ok_or(Error::NumericallyZero { tol })
}

/// Boundary values of the outer function with modulus `m`.
fn outer_boundary(m: &BoundarySignal, floor: f64, clamp: bool) -> Result<BoundarySignal> {
    if !m.is_real(1e-12) || m.values().iter().any(|v| v.re < 0.0) {
        return Err(Error::Domain("modulus must be real and nonnegative".into()));
    }
    let min = m.values().iter().map(|v| v.re).fold(f64::INFINITY, f64::min);
    if min <= floor && !clamp {
        return Err(Error::NotBoundaryInvertible { min_modulus: min, floor });
    }
    let log_m = m.map(|v| Complex64::new(v.re.max(floor).ln(), 0.0));
    let l = herglotz_extend(&log_m)?;
    Ok(l.boundary_values(m.grid()).map(|v| v.exp()))
}

/// Outer function with boundary modulus `m`, positive at the origin.
pub fn outer_from_modulus(m: &BoundarySignal, floor: f64, clamp: bool) -> Result<TaylorPoly> {
    let boundary = outer_boundary(m, floor, clamp)?;
    let mut f = riesz_project(&boundary).poly;
    // F(0) is the mean of a real-positive-mean exponential; drop rounding
    // noise in the imaginary part
    let c0 = f.coeff(0);
    let mut coeffs = f.into_coeffs();
    coeffs[0] = Complex64::new(c0.re, 0.0);
    f = TaylorPoly::new(coeffs);
    Ok(f)
}

/// The map `f ↦ (Q_inn(f), Q_out(f))` via the boundary modulus.
pub fn factorize(f: &TaylorPoly, cfg: &FactorConfig) -> Result<FactorizationResult> {
    let n0 = mul0(f, cfg.zero_tol)?;
    let grid = cfg.grid;
    let m_len = cfg.truncation();
    let g = f.shift_down(n0);
    let g_boundary = g.boundary_values(&grid);
    let modulus = g_boundary.map(|v| Complex64::new(v.norm(), 0.0));
    let outer_raw = outer_boundary(&modulus, cfg.modulus_floor, cfg.clamp)?;

    let inner_raw = riesz_project(&g_boundary.zip_with(&outer_raw, |a, b| a / b)?);
    if inner_raw.residual > cfg.defect_tol {
        return Err(Error::NotAnalytic {
            residual: inner_raw.residual,
            tol: cfg.defect_tol,
        });
    }
    let lead = inner_raw.poly.coeff(0);
    if lead.norm() <= cfg.zero_tol {
        return Err(Error::NormalizationTie { modulus: lead.norm() });
    }
    let phase = lead.conj() / lead.norm();
    let mut u0 = inner_raw.poly.scale(phase).into_coeffs();
    u0[0] = Complex64::new(u0[0].norm(), 0.0);
    let u0 = TaylorPoly::new(u0);

    let u_boundary = u0.boundary_values(&grid);
    let unimodularity = u_boundary
        .values()
        .iter()
        .map(|v| (v.norm() - 1.0).abs())
        .fold(0.0, f64::max);
    let outer = riesz_project(&g_boundary.zip_with(&u_boundary, |a, b| a / b)?);

    let inner = u0.shift_up(n0).truncated(m_len);
    let outer_poly = outer.poly.truncated(m_len);
    let residual = h2_dist(&f.truncated(m_len), &inner.mul_truncated(&outer_poly, m_len));
    Ok(FactorizationResult {
        inner,
        outer: outer_poly,
        n0,
        phase,
        residual,
        boundary_defect: unimodularity.max(outer.residual),
        backend: Backend::Modulus,
        zeros: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::{h2_norm, make_grid};
    use crate::factor::zeros::blaschke;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn mobius(t: f64, m: usize) -> TaylorPoly {
        // (t − z)/(1 − tz)
        let mut v = vec![c(t, 0.0)];
        v.extend((1..m).map(|k| c(t.powi(k as i32 + 1) - t.powi(k as i32 - 1), 0.0)));
        TaylorPoly::new(v)
    }

    #[test]
    fn mul0_examples() {
        let f = TaylorPoly::from_real(&[0.0, 0.0, 0.0, 1.0, 1.0]);
        assert_eq!(mul0(&f, 1e-12).unwrap(), 3);
        assert_eq!(mul0(&TaylorPoly::one(), 1e-12).unwrap(), 0);
        let tiny = TaylorPoly::new(vec![c(0.0, 0.0), c(1e-18, 0.0)]);
        assert!(matches!(mul0(&tiny, 1e-12), Err(Error::NumericallyZero { .. })));
    }

    #[test]
    fn outer_from_modulus_examples() {
        let grid = make_grid(256, false).unwrap();
        let two = BoundarySignal::from_real(grid, &[2.0; 256]).unwrap();
        let f = outer_from_modulus(&two, 1e-9, false).unwrap();
        assert!((f.coeff(0) - 2.0).norm() < 1e-14);
        assert!(f.coeffs()[1..].iter().all(|x| x.norm() < 1e-14));

        let one = BoundarySignal::from_real(grid, &[1.0; 256]).unwrap();
        let f = outer_from_modulus(&one, 1e-9, false).unwrap();
        assert!(h2_dist(&f, &TaylorPoly::one()) < 1e-14);

        let m: Vec<f64> = grid
            .points()
            .iter()
            .map(|z| (2.0 + z).norm())
            .collect();
        let f = outer_from_modulus(&BoundarySignal::from_real(grid, &m).unwrap(), 1e-9, false).unwrap();
        assert!(h2_dist(&f, &TaylorPoly::from_real(&[2.0, 1.0])) < 1e-8);
    }

    #[test]
    fn outer_rejects_vanishing_modulus() {
        let grid = make_grid(64, true).unwrap();
        let mut m = vec![1.0; 64];
        m[5] = 0.0;
        let s = BoundarySignal::from_real(grid, &m).unwrap();
        assert!(matches!(
            outer_from_modulus(&s, 1e-9, false),
            Err(Error::NotBoundaryInvertible { .. })
        ));
        assert!(outer_from_modulus(&s, 1e-9, true).is_ok());
    }

    #[test]
    fn normalized_inner_is_fixed_point() {
        let cfg = FactorConfig::with_grid(1024);
        let f = mobius(0.5, 512);
        let r = factorize(&f, &cfg).unwrap();
        assert!(h2_dist(&r.inner, &f) < 1e-12);
        assert!(h2_dist(&r.outer, &TaylorPoly::one()) < 1e-12);
        assert!((r.phase - 1.0).norm() < 1e-14);
    }

    #[test]
    fn negative_parameter_flips_sign() {
        // f_t with t = −0.5: Q_inn = −f_t, Q_out = −1
        let cfg = FactorConfig::with_grid(1024);
        let f = mobius(-0.5, 512);
        let r = factorize(&f, &cfg).unwrap();
        assert!(h2_dist(&r.inner, &f.scale(c(-1.0, 0.0))) < 1e-12);
        assert!(h2_dist(&r.outer, &TaylorPoly::constant(c(-1.0, 0.0))) < 1e-12);
        assert!((r.phase + 1.0).norm() < 1e-14);
        assert!((r.phase.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn origin_zero_goes_to_inner() {
        let cfg = FactorConfig::with_grid(1024);
        let f = TaylorPoly::from_real(&[0.0, 2.0, 1.0]);
        let r = factorize(&f, &cfg).unwrap();
        assert_eq!(r.n0, 1);
        assert!(h2_dist(&r.inner, &TaylorPoly::z()) < 1e-12);
        assert!(h2_dist(&r.outer, &TaylorPoly::from_real(&[2.0, 1.0])) < 1e-12);
        assert!(r.residual < 1e-12);
    }

    #[test]
    fn generic_product_round_trips() {
        let cfg = FactorConfig::with_grid(2048);
        let b = blaschke(&[c(0.3, 0.4), c(-0.5, 0.2)], 0, 1024).unwrap();
        let outer = TaylorPoly::from_real(&[2.0, 0.3, -0.4]).scale(c(0.6, 0.8));
        let f = b.mul_truncated(&outer, 1024);
        let r = factorize(&f, &cfg).unwrap();
        assert!(r.residual < 1e-10 && r.boundary_defect < 1e-10);
        assert!(h2_dist(&r.inner, &b) < 1e-10);
        assert!(h2_dist(&r.outer, &outer) < 1e-10);
        assert!((h2_norm(&r.inner) - 1.0).abs() < 1e-10);
    }

    #[test]
    fn boundary_zero_is_rejected() {
        let cfg = FactorConfig::with_grid(1024);
        let f = TaylorPoly::from_real(&[1.0, -1.0]);
        assert!(matches!(factorize(&f, &cfg), Err(Error::NotBoundaryInvertible { .. })));
    }
}
