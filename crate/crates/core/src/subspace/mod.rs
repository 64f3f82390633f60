//! Truncated model of the shift-invariant subspaces `fH²`.
//!
//! `fH²` is modeled inside `ℂ^M` (Taylor coefficients `0..M`) by the span of
//! the truncated vectors `f, zf, …, z^{K−1}f`. Projections are stored through
//! an orthonormal basis `Q`; `P = QQ*` is formed only on request.

use faer::Mat;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::boundary::{h2_norm, BoundaryGrid, TaylorPoly};
use crate::factor::{factorize_with, Backend, FactorConfig};
use crate::paths::PathFamily;
use crate::{Complex64, Error, Result};

/// `|R_kk|/‖column k‖` below this is a lost shift.
const RANK_TOL: f64 = 1e-10;
const ORTHONORMALITY_TOL: f64 = 1e-12;
const IDENTITY_TOL: f64 = 1e-10;
/// Subtracted from the grid minimum of the outer moduli.
pub const C_MARGIN: f64 = 1e-6;
pub const GAP_SLACK: f64 = 1e-6;

pub type CMatrix = Mat<Complex64>;

#[derive(Debug, Clone)]
pub struct SubspaceProjection {
    symbol: TaylorPoly,
    ambient: usize,
    shifts: usize,
    basis: CMatrix,
}

impl SubspaceProjection {
    /// Orthonormalizes `f, zf, …, z^{K−1}f` (truncated to `M` coefficients)
    /// by Householder QR. A shift whose column is (numerically) in the span
    /// of the previous ones is reported by index.
    pub fn build(f: &TaylorPoly, shifts: usize, ambient: usize) -> Result<Self> {
        if shifts == 0 || shifts > ambient {
            return Err(Error::Precondition(format!(
                "need 1 <= K <= M, got K = {shifts}, M = {ambient}"
            )));
        }
        let symbol = f.truncated(ambient);
        if h2_norm(&symbol) == 0.0 {
            return Err(Error::NumericallyZero { tol: 0.0 });
        }
        let a = toeplitz_columns(&symbol, shifts, ambient);
        let qr = a.qr();
        let r = qr.thin_R();
        for k in 0..shifts {
            let col = a.col(k).norm_l2();
            let pivot = if col == 0.0 { 0.0 } else { r[(k, k)].norm() / col };
            if pivot < RANK_TOL {
                return Err(Error::RankDeficient { shift: k, pivot });
            }
        }
        let p = Self { symbol, ambient, shifts, basis: qr.compute_thin_Q() };
        let defect = p.orthonormality_defect();
        if defect > ORTHONORMALITY_TOL {
            return Err(Error::Tolerance(format!(
                "basis orthonormality defect {defect:e} exceeds {ORTHONORMALITY_TOL:e}"
            )));
        }
        Ok(p)
    }

    pub fn symbol(&self) -> &TaylorPoly {
        &self.symbol
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn shift_count(&self) -> usize {
        self.shifts
    }

    pub fn basis(&self) -> &CMatrix {
        &self.basis
    }

    /// `P = QQ*`.
    pub fn projection(&self) -> CMatrix {
        &self.basis * self.basis.adjoint()
    }

    pub fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.ambient {
            return Err(Error::DimensionMismatch { left: self.ambient, right: v.len() });
        }
        let v = faer::ColRef::from_slice(v);
        let coords = self.basis.adjoint() * v;
        let out = &self.basis * coords;
        Ok(out.iter().copied().collect())
    }

    /// `max |Q*Q − I|`.
    pub fn orthonormality_defect(&self) -> f64 {
        let gram = self.basis.adjoint() * &self.basis;
        max_abs(&(gram - CMatrix::identity(self.shifts, self.shifts)))
    }

    /// `max |P − P*|` of the explicit projection.
    pub fn hermitian_defect(&self) -> f64 {
        let p = self.projection();
        max_abs(&(&p - p.adjoint()))
    }

    /// `max |P² − P|` of the explicit projection.
    pub fn idempotence_defect(&self) -> f64 {
        let p = self.projection();
        max_abs(&(&p * &p - &p))
    }
}

fn toeplitz_columns(f: &TaylorPoly, shifts: usize, ambient: usize) -> CMatrix {
    CMatrix::from_fn(ambient, shifts, |i, j| if i >= j { f.coeff(i - j) } else { Complex64::new(0.0, 0.0) })
}

fn max_abs(m: &CMatrix) -> f64 {
    (0..m.ncols())
        .flat_map(|j| m.col(j).iter().map(|c| c.norm()).collect::<Vec<_>>())
        .fold(0.0, f64::max)
}

fn hermitian_eigenvalues(h: &CMatrix) -> Result<Vec<f64>> {
    if h.nrows() == 0 {
        return Ok(Vec::new());
    }
    h.self_adjoint_eigenvalues(faer::Side::Lower)
        .map_err(|e| Error::Tolerance(format!("eigenvalue iteration failed: {e:?}")))
}

/// Spectral norm of a Hermitian matrix.
fn hermitian_norm(h: &CMatrix) -> Result<f64> {
    Ok(hermitian_eigenvalues(h)?.into_iter().fold(0.0, |m, l| m.max(l.abs())))
}

/// `σ_max(X) = sqrt(λ_max(X*X))`. `X*X` carries the absolute error of `X`
/// times `‖X‖`, so small singular values keep full relative accuracy.
fn sigma_max(x: &CMatrix) -> Result<f64> {
    if x.ncols() == 0 {
        return Ok(0.0);
    }
    let gram = x.adjoint() * x;
    Ok(hermitian_norm(&gram)?.max(0.0).sqrt())
}

pub fn build_projection(f: &TaylorPoly, shifts: usize, ambient: usize) -> Result<SubspaceProjection> {
    SubspaceProjection::build(f, shifts, ambient)
}

/// Gap and maximal angles between two projections.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GapMeasure {
    /// `‖P₁ − P₂‖`.
    pub gap: f64,
    /// `sin θ_max(𝔐, 𝔑) = ‖(I − P₂)P₁‖`.
    pub sin_mn: f64,
    /// `sin θ_max(𝔑, 𝔐) = ‖(I − P₁)P₂‖`.
    pub sin_nm: f64,
}

impl GapMeasure {
    /// `|gap − max(sin_mn, sin_nm)|`.
    pub fn identity_defect(&self) -> f64 {
        (self.gap - self.sin_mn.max(self.sin_nm)).abs()
    }
}

/// Computes the gap without asserting the angle identity.
///
/// `P₁ − P₂` vanishes off the joint range of the two bases, so its singular
/// values are taken from the compression to an orthonormal basis `W` of that
/// range: `W*(P₁ − P₂)W = AA* − BB*` with `A = W*Q₁`, `B = W*Q₂`. The
/// sines are computed in the same coordinates, `‖A − B(B*A)‖`.
pub fn gap_measure(p1: &SubspaceProjection, p2: &SubspaceProjection) -> Result<GapMeasure> {
    if p1.ambient != p2.ambient {
        return Err(Error::DimensionMismatch { left: p1.ambient, right: p2.ambient });
    }
    let (q1, q2) = (&p1.basis, &p2.basis);
    let m = p1.ambient;
    let k = q1.ncols() + q2.ncols();
    let (a, b) = if k >= m {
        (q1.clone(), q2.clone())
    } else {
        let k1 = q1.ncols();
        let joint = CMatrix::from_fn(m, k, |i, j| if j < k1 { q1[(i, j)] } else { q2[(i, j - k1)] });
        let w = joint.qr().compute_thin_Q();
        (w.adjoint() * q1, w.adjoint() * q2)
    };
    let diff = &a * a.adjoint() - &b * b.adjoint();
    let sin_mn = sigma_max(&(&a - &b * (b.adjoint() * &a)))?;
    let sin_nm = sigma_max(&(&b - &a * (a.adjoint() * &b)))?;
    Ok(GapMeasure { gap: hermitian_norm(&diff)?, sin_mn, sin_nm })
}

/// [`gap_measure`], failing when `gap ≠ max(sin_mn, sin_nm)` to `1e−10`.
pub fn gap(p1: &SubspaceProjection, p2: &SubspaceProjection) -> Result<GapMeasure> {
    let g = gap_measure(p1, p2)?;
    if g.identity_defect() > IDENTITY_TOL {
        return Err(Error::Tolerance(format!(
            "gap {} differs from the larger maximal-angle sine by {:e}",
            g.gap,
            g.identity_defect()
        )));
    }
    Ok(g)
}

/// `P e₀ / ‖P e₀‖`, the normalized cross section through `𝟏`.
pub fn cross_section(p: &SubspaceProjection) -> Result<TaylorPoly> {
    // P e₀ = Q · (first row of Q)*
    let row = p.basis.row(0).adjoint();
    let v = &p.basis * row;
    let at0 = v[0].norm();
    if at0 <= 1e-9 {
        return Err(Error::CrossSectionInapplicable { value: at0 });
    }
    let norm = v.norm_l2();
    Ok(TaylorPoly::new(v.iter().map(|c| c / norm).collect()))
}

/// One row of a gap experiment.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GapReport {
    pub t_left: Option<f64>,
    pub t_right: Option<f64>,
    /// `‖f − g‖_∞` on the refined grid.
    pub sup_dist: f64,
    pub gap: f64,
    pub sin_mn: f64,
    pub sin_nm: f64,
    /// Smaller of the two outer-modulus lower bounds, `C_MARGIN` included.
    pub c: f64,
    /// `‖f − g‖_∞ / c` (infinite when `c <= 0`).
    pub bound_rhs: f64,
    pub satisfied: bool,
}

impl GapReport {
    fn new(t: Option<(f64, f64)>, measure: GapMeasure, sup_dist: f64, c: f64) -> Self {
        let bound_rhs = if c > 0.0 { sup_dist / c } else { f64::INFINITY };
        Self {
            t_left: t.map(|p| p.0),
            t_right: t.map(|p| p.1),
            sup_dist,
            gap: measure.gap,
            sin_mn: measure.sin_mn,
            sin_nm: measure.sin_nm,
            c,
            bound_rhs,
            satisfied: measure.gap <= bound_rhs + GAP_SLACK,
        }
    }

    pub fn measure(&self) -> GapMeasure {
        GapMeasure { gap: self.gap, sin_mn: self.sin_mn, sin_nm: self.sin_nm }
    }
}

/// Truncation and sampling parameters of the subspace model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GapSettings {
    pub shifts: usize,
    pub ambient: usize,
    pub oversample: usize,
}

impl GapSettings {
    /// `K = M/4`.
    pub fn with_ambient(ambient: usize) -> Self {
        Self { shifts: (ambient / 4).max(1), ambient, oversample: 4 }
    }
}

/// Grid minimum of `|F|` minus [`C_MARGIN`] for the outer factor of `f`.
fn outer_lower_bound(f: &TaylorPoly, cfg: &FactorConfig, require_n0_zero: bool) -> Result<f64> {
    let r = factorize_with(f, Backend::Modulus, cfg).map_err(|e| match e {
        Error::NotBoundaryInvertible { .. } | Error::NotAnalytic { .. } => {
            Error::Domain(format!("generator is not boundary-invertible: {e}"))
        }
        other => other,
    })?;
    if require_n0_zero && r.n0 > 0 {
        return Err(Error::Precondition(format!(
            "generator vanishes to order {} at 0 (not in J*_0); build the projection directly",
            r.n0
        )));
    }
    Ok(r.outer.boundary_values(&cfg.grid).min_modulus() - C_MARGIN)
}

/// Evaluates `gap(P_f, P_g) ≤ ‖f − g‖_∞ / c`.
pub fn verify_gap_bound(f: &TaylorPoly, g: &TaylorPoly, settings: &GapSettings, cfg: &FactorConfig) -> Result<GapReport> {
    let c = outer_lower_bound(f, cfg, true)?.min(outer_lower_bound(g, cfg, true)?);
    let pf = build_projection(f, settings.shifts, settings.ambient)?;
    let pg = build_projection(g, settings.shifts, settings.ambient)?;
    let measure = gap(&pf, &pg)?;
    let sup_dist = crate::boundary::sup_dist_on(f, g, &cfg.grid, settings.oversample);
    Ok(GapReport::new(None, measure, sup_dist, c))
}

#[derive(Debug, Clone)]
pub struct ProjectionPath {
    pub t: Vec<f64>,
    pub projections: Vec<SubspaceProjection>,
    /// Per-point outer lower bounds `c_t`.
    pub c: Vec<f64>,
    /// Consecutive gaps.
    pub reports: Vec<GapReport>,
}

/// Projections along a family with consecutive gaps and sup distances.
///
/// Sup distances come from the closed-form boundary samples; `c` of each
/// step is the smaller of the two per-point bounds, so its path-uniformity
/// can be read off the reports.
pub fn projection_path(
    fam: &PathFamily,
    t_grid: &[f64],
    settings: &GapSettings,
    cfg: &FactorConfig,
) -> Result<ProjectionPath> {
    let grid: BoundaryGrid = fam.grid_for(&cfg.grid);
    let fcfg = FactorConfig { grid, ..*cfg };
    let points = t_grid
        .par_iter()
        .map(|&t| {
            let symbol = fam.symbol_at(t)?;
            let f = symbol.to_taylor(&grid, fcfg.truncation())?;
            let r = factorize_with(&f, fam.preferred_backend(), &fcfg)?;
            let c = r.outer.boundary_values(&grid).min_modulus() - C_MARGIN;
            let p = build_projection(&f, settings.shifts, settings.ambient)?;
            Ok((symbol.refined_values(&grid, settings.oversample), c, p))
        })
        .collect::<Result<Vec<_>>>()?;
    let reports = points
        .windows(2)
        .zip(t_grid.windows(2))
        .map(|(w, ts)| {
            let measure = gap(&w[0].2, &w[1].2)?;
            let sup_dist = w[0]
                .0
                .iter()
                .zip(&w[1].0)
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max);
            Ok(GapReport::new(Some((ts[0], ts[1])), measure, sup_dist, w[0].1.min(w[1].1)))
        })
        .collect::<Result<Vec<_>>>()?;
    let (c, projections) = points.into_iter().map(|(_, c, p)| (c, p)).unzip();
    Ok(ProjectionPath { t: t_grid.to_vec(), projections, c, reports })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factor::{blaschke, q_inn};
    use crate::boundary::h2_dist;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn b(alpha: f64, m: usize) -> TaylorPoly {
        blaschke(&[c(alpha, 0.0)], 0, m).unwrap()
    }

    #[test]
    fn trivial_projections() {
        let p = build_projection(&TaylorPoly::one(), 16, 16).unwrap();
        assert!(max_abs(&(p.projection() - CMatrix::identity(16, 16))) < 1e-14);
        let p = build_projection(&TaylorPoly::z(), 15, 16).unwrap();
        let mut diag = CMatrix::identity(16, 16);
        diag[(0, 0)] = c(0.0, 0.0);
        assert!(max_abs(&(p.projection() - diag)) < 1e-14);
        assert!(matches!(
            build_projection(&TaylorPoly::z(), 16, 16),
            Err(Error::RankDeficient { shift: 15, .. })
        ));
        assert!(build_projection(&TaylorPoly::new(vec![]), 4, 16).is_err());
    }

    #[test]
    fn invariants_hold() {
        let f = b(0.5, 128);
        let p = build_projection(&f, 64, 128).unwrap();
        assert!(p.orthonormality_defect() < 1e-12);
        assert!(p.hermitian_defect() < 1e-12);
        assert!(p.idempotence_defect() < 1e-10);
        let pf = p.apply(f.coeffs()).unwrap();
        let d: f64 = pf.iter().zip(f.coeffs()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        assert!(d < 1e-12);
    }

    #[test]
    fn nested_monomial_subspaces() {
        let m = 64;
        let pz = build_projection(&TaylorPoly::z(), m - 1, m).unwrap();
        let pz2 = build_projection(&TaylorPoly::monomial(2), m - 2, m).unwrap();
        let g = gap(&pz, &pz2).unwrap();
        assert!(g.sin_nm < 1e-12);
        assert!((g.sin_mn - 1.0).abs() < 1e-12);
        assert!((g.gap - 1.0).abs() < 1e-12);
        let same = gap(&pz, &pz).unwrap();
        assert!(same.gap < 1e-12);
    }

    /// Projection from the normal equations, `A(A*A)⁻¹A*`, and a full SVD.
    fn dense_gap(f: &TaylorPoly, g: &TaylorPoly, k: usize, m: usize) -> f64 {
        let proj = |f: &TaylorPoly| {
            let a = toeplitz_columns(&f.truncated(m), k, m);
            let gram = a.adjoint() * &a;
            use faer::linalg::solvers::DenseSolveCore;
            let inv = gram.partial_piv_lu().inverse();
            &a * inv * a.adjoint()
        };
        let sv = (proj(f) - proj(g)).singular_values().unwrap();
        sv.into_iter().fold(0.0, f64::max)
    }

    #[test]
    fn gap_matches_dense_oracle() {
        let m = 64;
        let (f, g) = (b(0.5, m), b(0.6, m));
        let oracle = dense_gap(&f, &g, m / 4, m);
        let pf = build_projection(&f, m / 4, m).unwrap();
        let pg = build_projection(&g, m / 4, m).unwrap();
        let got = gap(&pf, &pg).unwrap();
        assert!((got.gap - oracle).abs() < 1e-8, "{} vs {oracle}", got.gap);
        assert!(got.identity_defect() < 1e-10);
    }

    #[test]
    fn cross_section_examples() {
        let m = 256;
        let f = b(0.5, m);
        let p = build_projection(&f, m / 4, m).unwrap();
        let u = cross_section(&p).unwrap();
        assert!(h2_dist(&u, &f) < 1e-6);
        let cfg = FactorConfig::with_grid(2 * m);
        assert!(h2_dist(&u, &q_inn(&f, &cfg).unwrap()) < 1e-6);
        let one = cross_section(&build_projection(&TaylorPoly::one(), 8, 32).unwrap()).unwrap();
        assert!(h2_dist(&one, &TaylorPoly::one()) < 1e-14);
        assert!(matches!(
            cross_section(&build_projection(&TaylorPoly::z(), 8, 32).unwrap()),
            Err(Error::CrossSectionInapplicable { .. })
        ));
    }

    #[test]
    fn gap_bound_examples() {
        let cfg = FactorConfig::with_grid(1024);
        let s = GapSettings::with_ambient(256);
        let f = TaylorPoly::from_real(&[2.0, 1.0]);
        let same = verify_gap_bound(&f, &f, &s, &cfg).unwrap();
        assert!(same.gap < 1e-12 && same.satisfied);

        let g = TaylorPoly::from_real(&[2.1, 1.0]);
        let r = verify_gap_bound(&f, &g, &s, &cfg).unwrap();
        assert!(r.c >= 0.9);
        assert!((r.sup_dist - 0.1).abs() < 1e-12);
        assert!(r.satisfied && r.gap <= 0.1 / r.c);
        let oracle = dense_gap(&f, &g, 64, 256);
        assert!((r.gap - oracle).abs() < 1e-8);

        let outer = TaylorPoly::from_real(&[2.0, 1.0]);
        let f = b(0.5, 512).mul_truncated(&outer, 512);
        let g = b(0.55, 512).mul_truncated(&outer, 512);
        let r = verify_gap_bound(&f, &g, &s, &cfg).unwrap();
        assert!(r.satisfied, "{r:?}");

        let e = verify_gap_bound(&TaylorPoly::z(), &f, &s, &cfg).unwrap_err();
        assert!(matches!(e, Error::Precondition(_)));
        let e = verify_gap_bound(&TaylorPoly::from_real(&[1.0, -1.0]), &f, &s, &cfg).unwrap_err();
        assert!(matches!(e, Error::Domain(_)));
    }

    #[test]
    fn containment_kills_one_angle() {
        let m = 128;
        let f = TaylorPoly::from_real(&[1.0, 0.4]);
        let h = TaylorPoly::from_real(&[0.5, -0.3, 0.2]);
        let g = &f * &h;
        // gH² ⊂ fH² needs deg h extra shifts on the f side in the model
        let pg = build_projection(&g, 32, m).unwrap();
        let pf = build_projection(&f, 34, m).unwrap();
        let r = gap(&pg, &pf).unwrap();
        assert!(r.sin_mn < 1e-8);
    }

    #[test]
    fn projection_path_examples() {
        let cfg = FactorConfig::with_grid(512);
        let s = GapSettings::with_ambient(128);
        let fam = PathFamily::Constant { symbol: crate::paths::Symbol::poly(TaylorPoly::from_real(&[2.0, 0.5])) };
        let path = projection_path(&fam, &[0.0, 0.5, 1.0], &s, &cfg).unwrap();
        assert!(path.reports.iter().all(|r| r.gap < 1e-12 && r.sup_dist == 0.0));

        let ts: Vec<f64> = (-10..=10).map(|k| k as f64 * 0.05).collect();
        let path = projection_path(&PathFamily::Example24, &ts, &s, &cfg).unwrap();
        assert_eq!(path.reports.len(), 20);
        assert!(path.reports.iter().all(|r| r.satisfied));
    }

    #[test]
    fn linear_family_subspaces_move_slowly() {
        let cfg = FactorConfig::with_grid(1024);
        let ts = [0.95, 0.99, 1.0, 1.01, 1.05];
        let coarse = projection_path(&PathFamily::Linear { a: 1.0 }, &ts, &GapSettings::with_ambient(128), &cfg).unwrap();
        // the step across t = 1 is small in the model and shrinks with the step
        let across: Vec<f64> = coarse.reports.iter().map(|r| r.gap).collect();
        assert!(across[1] < across[0] && across[2] < across[3]);
        assert!(across[1] < 0.2 && across[2] < 0.2);
        assert!(coarse.c[2] <= 0.0);
    }
}
