//! Zero classification and finite Blaschke products.

use serde::{Deserialize, Serialize};

use crate::boundary::TaylorPoly;
use crate::{Complex64, Error, Result};

/// Roots of a polynomial split by their position relative to the circle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroClassification {
    /// `|α| < 1 − τ` (and not at the origin).
    pub interior: Vec<Complex64>,
    /// `||z| − 1| ≤ τ`.
    pub boundary: Vec<Complex64>,
    /// `|z| > 1 + τ`.
    pub exterior: Vec<Complex64>,
    pub origin_multiplicity: usize,
    pub tau: f64,
}

impl ZeroClassification {
    pub fn total(&self) -> usize {
        self.interior.len() + self.boundary.len() + self.exterior.len() + self.origin_multiplicity
    }
}

pub fn classify_zeros(roots: &[Complex64], tau: f64) -> ZeroClassification {
    let mut out = ZeroClassification {
        interior: Vec::new(),
        boundary: Vec::new(),
        exterior: Vec::new(),
        origin_multiplicity: 0,
        tau,
    };
    for &r in roots {
        let m = r.norm();
        if m < tau {
            out.origin_multiplicity += 1;
        } else if (m - 1.0).abs() <= tau {
            out.boundary.push(r);
        } else if m < 1.0 {
            out.interior.push(r);
        } else {
            out.exterior.push(r);
        }
    }
    out
}

/// `z^m ∏ (|α|/α)(α − z)/(1 − ᾱz)` truncated to `len` coefficients.
///
/// Each factor is positive at the origin, so the product is already a
/// normalized inner function.
pub fn blaschke(interior_zeros: &[Complex64], origin_multiplicity: usize, len: usize) -> Result<TaylorPoly> {
    for &a in interior_zeros {
        if a.norm() >= 1.0 || !a.norm().is_finite() {
            return Err(Error::Domain(format!(
                "Blaschke zero {a} is not inside the disk; classify zeros first"
            )));
        }
        if a.norm() == 0.0 {
            return Err(Error::Domain(
                "zeros at the origin go through origin_multiplicity".into(),
            ));
        }
    }
    let mut series = vec![Complex64::new(0.0, 0.0); len];
    if origin_multiplicity < len {
        series[origin_multiplicity] = Complex64::new(1.0, 0.0);
    }
    for &a in interior_zeros {
        series = apply_factor(&series, a);
    }
    Ok(TaylorPoly::new(series))
}

/// Multiplies a truncated series by `(|α|/α)(α − z)/(1 − ᾱz)`.
fn apply_factor(x: &[Complex64], a: Complex64) -> Vec<Complex64> {
    let unit = a.norm() / a;
    let ac = a.conj();
    let mut y = vec![Complex64::new(0.0, 0.0); x.len()];
    let mut prev = Complex64::new(0.0, 0.0);
    for k in 0..x.len() {
        // w = (α − z)·x, then y_k = w_k + ᾱ y_{k−1}
        let w = a * x[k] - if k > 0 { x[k - 1] } else { Complex64::new(0.0, 0.0) };
        let yk = w + ac * prev;
        y[k] = yk;
        prev = yk;
    }
    y.iter().map(|v| v * unit).collect()
}

/// Closed-form evaluation of the same product.
pub fn blaschke_eval(interior_zeros: &[Complex64], origin_multiplicity: usize, z: Complex64) -> Complex64 {
    let mut v = z.powu(origin_multiplicity as u32);
    for &a in interior_zeros {
        v *= (a.norm() / a) * (a - z) / (1.0 - a.conj() * z);
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::{h2_norm, make_grid};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn single_zero_coefficients() {
        let b = blaschke(&[c(0.5, 0.0)], 0, 64).unwrap();
        assert!((b.coeff(0) - 0.5).norm() < 1e-15);
        assert!((b.coeff(1) + 0.75).norm() < 1e-15);
        assert!((b.coeff(2) + 0.375).norm() < 1e-15);
        let energy: f64 = b.coeffs().iter().map(|x| x.norm_sqr()).sum();
        assert!((energy - 1.0).abs() < 1e-10);
    }

    #[test]
    fn pure_power() {
        let b = blaschke(&[], 1, 4).unwrap();
        assert_eq!(b.trimmed(0.0), TaylorPoly::z());
    }

    #[test]
    fn value_at_origin_is_product_of_moduli() {
        let b = blaschke(&[c(0.3, 0.0), c(0.0, -0.4)], 0, 128).unwrap();
        assert!((b.coeff(0) - 0.12).norm() < 1e-15);
    }

    #[test]
    fn series_matches_closed_form_and_is_unimodular() {
        let zeros = [c(0.3, 0.4), c(-0.6, 0.1), c(0.2, -0.7)];
        let b = blaschke(&zeros, 2, 512).unwrap();
        let grid = make_grid(256, true).unwrap();
        let s = b.boundary_values(&grid);
        for (j, v) in s.values().iter().enumerate() {
            let z = Complex64::from_polar(1.0, grid.angle(j));
            assert!((v - blaschke_eval(&zeros, 2, z)).norm() < 1e-12);
            assert!((v.norm() - 1.0).abs() < 1e-9);
        }
        assert!((h2_norm(&b) - 1.0).abs() < 1e-10);
    }

    #[test]
    fn rejects_exterior_zero() {
        assert!(matches!(blaschke(&[c(1.0, 0.0)], 0, 8), Err(Error::Domain(_))));
        assert!(blaschke(&[c(0.0, 0.0)], 0, 8).is_err());
    }

    #[test]
    fn classification_examples() {
        let k = classify_zeros(&[c(0.5, 0.0), c(1.0, 0.0), c(2.0, 0.0)], 1e-6);
        assert_eq!(k.interior, vec![c(0.5, 0.0)]);
        assert_eq!(k.boundary, vec![c(1.0, 0.0)]);
        assert_eq!(k.exterior, vec![c(2.0, 0.0)]);
        let k = classify_zeros(&[c(1.0 - 1e-9, 0.0)], 1e-6);
        assert_eq!(k.boundary.len(), 1);
        let k = classify_zeros(&[c(0.0, 0.0), c(0.0, 0.0), c(0.3, 0.0)], 1e-6);
        assert_eq!(k.origin_multiplicity, 2);
        assert_eq!(k.interior, vec![c(0.3, 0.0)]);
        assert_eq!(k.total(), 3);
    }
}
