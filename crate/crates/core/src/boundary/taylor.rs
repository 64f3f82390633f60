use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::fft;
use super::{Analytic, BoundaryGrid, BoundarySignal};
use crate::{Complex64, Result};

/// Truncated power series `z ↦ Σ_{k<M} c_k z^k`.
///
/// Every analytic symbol in the crate (functions, inner and outer factors,
/// Blaschke products) is carried in this form once it leaves a closed-form
/// evaluator. The H² norm is exactly the ℓ² norm of `coeffs`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaylorPoly {
    coeffs: Vec<Complex64>,
}

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

impl TaylorPoly {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        Self { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn constant(c: Complex64) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(ONE)
    }

    pub fn z() -> Self {
        Self::monomial(1)
    }

    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![ZERO; k + 1];
        coeffs[k] = ONE;
        Self::new(coeffs)
    }

    /// Polynomial `lead · ∏ (z − r)`.
    pub fn from_roots(lead: Complex64, roots: &[Complex64]) -> Self {
        let mut coeffs = vec![lead];
        for &r in roots {
            let mut next = vec![ZERO; coeffs.len() + 1];
            for (k, &c) in coeffs.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * r;
            }
            coeffs = next;
        }
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `c_k`, zero beyond the stored truncation.
    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or(ZERO)
    }

    /// Horner evaluation.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, &c| acc * z + c)
    }

    /// Derivative as a polynomial.
    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * k as f64)
                .collect(),
        )
    }

    /// Keeps the first `m` coefficients, zero-padding if shorter.
    pub fn truncated(&self, m: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(m, ZERO);
        Self::new(coeffs)
    }

    /// Index of the last coefficient with modulus above `tol`.
    pub fn degree(&self, tol: f64) -> Option<usize> {
        self.coeffs.iter().rposition(|c| c.norm() > tol)
    }

    /// Drops trailing coefficients with modulus at most `tol`.
    pub fn trimmed(&self, tol: f64) -> Self {
        match self.degree(tol) {
            Some(d) => Self::new(self.coeffs[..=d].to_vec()),
            None => Self::new(Vec::new()),
        }
    }

    /// `z^n · self`.
    pub fn shift_up(&self, n: usize) -> Self {
        let mut coeffs = vec![ZERO; n];
        coeffs.extend_from_slice(&self.coeffs);
        Self::new(coeffs)
    }

    /// `self / z^n`, discarding the first `n` coefficients.
    pub fn shift_down(&self, n: usize) -> Self {
        Self::new(self.coeffs.iter().skip(n).copied().collect())
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self::new(self.coeffs.iter().map(|&x| x * c).collect())
    }

    /// Product truncated to `len` coefficients.
    pub fn mul_truncated(&self, other: &Self, len: usize) -> Self {
        if self.is_empty() || other.is_empty() || len == 0 {
            return Self::new(vec![ZERO; len]);
        }
        let (a, b) = (self.len().min(len), other.len().min(len));
        let full = a + b - 1;
        let out = if a.saturating_mul(b) <= 1 << 14 {
            let mut out = vec![ZERO; full];
            for (i, x) in self.coeffs[..a].iter().enumerate() {
                for (j, y) in other.coeffs[..b].iter().enumerate() {
                    out[i + j] += x * y;
                }
            }
            out
        } else {
            let n = full.next_power_of_two();
            let mut fa = vec![ZERO; n];
            fa[..a].copy_from_slice(&self.coeffs[..a]);
            let mut fb = vec![ZERO; n];
            fb[..b].copy_from_slice(&other.coeffs[..b]);
            fft::forward(&mut fa);
            fft::forward(&mut fb);
            for (x, y) in fa.iter_mut().zip(&fb) {
                *x *= y;
            }
            fft::inverse(&mut fa);
            let inv = 1.0 / n as f64;
            fa.truncate(full);
            fa.iter_mut().for_each(|x| *x *= inv);
            fa
        };
        Self::new(out).truncated(len)
    }

    /// Boundary trace on `grid` (FFT, exact for any length via folding).
    pub fn boundary_values(&self, grid: &BoundaryGrid) -> BoundarySignal {
        let values = fft::eval_poly_on_circle(&self.coeffs, grid.size(), grid.shift());
        BoundarySignal::new(*grid, values).expect("fft output has grid length")
    }

    /// Values on the `factor`-times refined version of `grid`.
    pub fn refined_values(&self, grid: &BoundaryGrid, factor: usize) -> Vec<Complex64> {
        fft::eval_poly_on_circle(&self.coeffs, grid.size() * factor.max(1), grid.shift())
    }

    /// Smallest grid (size ≥ 8, at least twice the length) used when no
    /// grid is given explicitly.
    pub fn natural_grid(&self) -> BoundaryGrid {
        let n = (2 * self.len()).next_power_of_two().max(8);
        BoundaryGrid::new(n, false).expect("power of two >= 8")
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        let n = self.len().max(other.len());
        Self::new((0..n).map(|k| f(self.coeff(k), other.coeff(k))).collect())
    }
}

impl Analytic for TaylorPoly {
    fn eval(&self, z: Complex64) -> Complex64 {
        TaylorPoly::eval(self, z)
    }

    fn sample_on(&self, grid: &BoundaryGrid) -> Result<BoundarySignal> {
        let s = self.boundary_values(grid);
        if let Some((j, v)) = s
            .values()
            .iter()
            .enumerate()
            .find(|(_, v)| !(v.re.is_finite() && v.im.is_finite()))
        {
            return Err(crate::Error::Evaluation {
                angle: grid.angle(j),
                value: format!("{v}"),
            });
        }
        Ok(s)
    }
}

impl Add for &TaylorPoly {
    type Output = TaylorPoly;
    fn add(self, rhs: &TaylorPoly) -> TaylorPoly {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &TaylorPoly {
    type Output = TaylorPoly;
    fn sub(self, rhs: &TaylorPoly) -> TaylorPoly {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &TaylorPoly {
    type Output = TaylorPoly;
    fn neg(self) -> TaylorPoly {
        self.scale(-ONE)
    }
}

/// Full (untruncated) product.
impl Mul for &TaylorPoly {
    type Output = TaylorPoly;
    fn mul(self, rhs: &TaylorPoly) -> TaylorPoly {
        if self.is_empty() || rhs.is_empty() {
            return TaylorPoly::new(Vec::new());
        }
        self.mul_truncated(rhs, self.len() + rhs.len() - 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn horner_and_roots() {
        let p = TaylorPoly::from_roots(ONE, &[c(1.0, 0.0), c(0.5, 0.0)]);
        assert_eq!(p.coeffs(), &[c(0.5, 0.0), c(-1.5, 0.0), c(1.0, 0.0)]);
        assert!(p.eval(c(1.0, 0.0)).norm() < 1e-15);
        assert!((p.eval(c(2.0, 0.0)) - c(1.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn shifts_and_trim() {
        let p = TaylorPoly::from_real(&[1.0, 2.0, 0.0, 1e-20]);
        assert_eq!(p.degree(1e-14), Some(1));
        assert_eq!(p.trimmed(1e-14).len(), 2);
        let q = p.shift_up(3);
        assert_eq!(q.coeff(3), ONE);
        assert_eq!(q.shift_down(3), p);
    }

    #[test]
    fn boundary_values_use_offset() {
        let grid = BoundaryGrid::new(16, true).unwrap();
        let s = TaylorPoly::monomial(3).boundary_values(&grid);
        for (j, v) in s.values().iter().enumerate() {
            let want = Complex64::from_polar(1.0, 3.0 * grid.angle(j));
            assert!((v - want).norm() < 1e-14);
        }
    }

    #[test]
    fn fft_product_matches_direct() {
        let a = TaylorPoly::new((0..300).map(|k| c((k as f64).sin(), 0.1 * k as f64 / 300.0)).collect());
        let b = TaylorPoly::new((0..200).map(|k| c(1.0 / (1.0 + k as f64), (k as f64).cos())).collect());
        let fast = a.mul_truncated(&b, 400);
        let mut slow = vec![ZERO; 499];
        for i in 0..300 {
            for j in 0..200 {
                slow[i + j] += a.coeff(i) * b.coeff(j);
            }
        }
        for k in 0..400 {
            assert!((fast.coeff(k) - slow[k]).norm() < 1e-11);
        }
    }

    proptest! {
        #[test]
        fn product_evaluates_pointwise(
            a in prop::collection::vec(-2.0f64..2.0, 1..20),
            b in prop::collection::vec(-2.0f64..2.0, 1..20),
            theta in 0.0f64..6.3,
        ) {
            let (pa, pb) = (TaylorPoly::from_real(&a), TaylorPoly::from_real(&b));
            let z = Complex64::from_polar(0.9, theta);
            let lhs = (&pa * &pb).eval(z);
            let rhs = pa.eval(z) * pb.eval(z);
            prop_assert!((lhs - rhs).norm() < 1e-10 * (1.0 + rhs.norm()));
        }
    }
}
