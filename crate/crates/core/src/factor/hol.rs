//! Factorization of polynomials from their zeros.
//!
//! For `f = c·z^{n₀}·∏(z − r)` the interior zeros `α` form the inner part
//! `∏ (|α|/α)(α − z)/(1 − ᾱz)`; each `(z − α)` leaves behind
//! `|α|·(z − 1/ᾱ)` in the outer part. Zeros on the circle stay in the outer
//! part unchanged.

use super::modulus::mul0;
use super::roots::poly_roots;
use super::zeros::{blaschke, classify_zeros, ZeroClassification};
use super::{Backend, FactorConfig, FactorizationResult};
use crate::boundary::{h2_dist, TaylorPoly};
use crate::{Complex64, Result};

pub fn factorize_hol(f: &TaylorPoly, cfg: &FactorConfig) -> Result<FactorizationResult> {
    let n0 = mul0(f, cfg.zero_tol)?;
    let m_len = cfg.truncation();
    let g = f.shift_down(n0).trimmed(cfg.zero_tol);
    let lead = g.coeffs()[g.len() - 1];

    let zeros = if g.len() > 1 {
        classify_zeros(&poly_roots(&g, cfg.zero_tol)?, cfg.tau)
    } else {
        classify_zeros(&[], cfg.tau)
    };

    let inner = blaschke(&zeros.interior, n0 + zeros.origin_multiplicity, m_len)?;
    let scale: f64 = zeros.interior.iter().map(|a| a.norm()).product();
    let outer_roots = outer_zero_set(&zeros);
    let outer = TaylorPoly::from_roots(lead * scale, &outer_roots);

    let residual = h2_dist(&f.truncated(m_len), &inner.mul_truncated(&outer, m_len));
    let boundary_defect = inner
        .boundary_values(&cfg.grid)
        .values()
        .iter()
        .map(|v| (v.norm() - 1.0).abs())
        .fold(0.0, f64::max);
    Ok(FactorizationResult {
        inner,
        outer,
        n0,
        phase: Complex64::new(1.0, 0.0),
        residual,
        boundary_defect,
        backend: Backend::Zeros,
        zeros: Some(zeros),
    })
}

/// Zeros of the outer factor: boundary and exterior zeros of `f` together
/// with the reflections `1/ᾱ` of the interior zeros.
pub fn outer_zero_set(zeros: &ZeroClassification) -> Vec<Complex64> {
    zeros
        .boundary
        .iter()
        .chain(&zeros.exterior)
        .copied()
        .chain(zeros.interior.iter().map(|a| 1.0 / a.conj()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factor::factorize;
    use crate::factor::roots::poly_roots;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn linear_interior_zero() {
        let cfg = FactorConfig::with_grid(1024);
        let f = TaylorPoly::from_real(&[0.75, -1.0]);
        let r = factorize_hol(&f, &cfg).unwrap();
        let want_inner: Vec<Complex64> = std::iter::once(c(0.75, 0.0))
            .chain((1..512).map(|k| c(0.75f64.powi(k + 1) - 0.75f64.powi(k - 1), 0.0)))
            .collect();
        assert!(h2_dist(&r.inner, &TaylorPoly::new(want_inner)) < 1e-14);
        assert!(h2_dist(&r.outer, &TaylorPoly::from_real(&[1.0, -0.75])) < 1e-14);
        assert!(r.residual < 1e-14);
    }

    #[test]
    fn exterior_zero_is_outer() {
        let cfg = FactorConfig::with_grid(256);
        let f = TaylorPoly::from_real(&[2.0, -1.0]);
        let r = factorize_hol(&f, &cfg).unwrap();
        assert!(h2_dist(&r.inner, &TaylorPoly::one()) < 1e-15);
        assert!(h2_dist(&r.outer, &f) < 1e-15);
    }

    #[test]
    fn boundary_zero_is_outer() {
        let cfg = FactorConfig::with_grid(256);
        let f = TaylorPoly::from_real(&[1.0, -1.0]);
        let r = factorize_hol(&f, &cfg).unwrap();
        assert!(h2_dist(&r.inner, &TaylorPoly::one()) < 1e-15);
        assert!(h2_dist(&r.outer, &f) < 1e-15);
        assert_eq!(r.zeros.unwrap().boundary.len(), 1);
    }

    #[test]
    fn agrees_with_modulus_backend() {
        let cfg = FactorConfig::with_grid(1024);
        let f = TaylorPoly::from_real(&[0.0, 2.0, 1.0]);
        let a = factorize_hol(&f, &cfg).unwrap();
        let b = factorize(&f, &cfg).unwrap();
        assert!(h2_dist(&a.inner, &b.inner) < 1e-8);
        assert!(h2_dist(&a.outer, &b.outer) < 1e-8);
    }

    #[test]
    fn outer_zero_multiset() {
        let cfg = FactorConfig::with_grid(512);
        let roots = [c(0.4, 0.2), c(1.5, -0.3), c(0.0, 1.0), c(-0.2, -0.6)];
        let f = TaylorPoly::from_roots(c(0.7, 0.1), &roots);
        let r = factorize_hol(&f, &cfg).unwrap();
        let mut got = poly_roots(&r.outer, 1e-14).unwrap();
        let mut want = vec![c(1.5, -0.3), c(0.0, 1.0), 1.0 / c(0.4, 0.2).conj(), 1.0 / c(-0.2, -0.6).conj()];
        let key = |z: &Complex64| (z.re * 1e6).round() as i64 * 10_000_000 + (z.im * 1e6).round() as i64;
        got.sort_by_key(key);
        want.sort_by_key(key);
        for (a, b) in got.iter().zip(&want) {
            assert!((a - b).norm() < 1e-8, "{a} vs {b}");
        }
        assert!(r.residual < 1e-12);
    }
}
