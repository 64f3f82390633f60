//! Moduli of continuity of `Q_inn` and `Q_out` along a family, and the
//! inequality chain bounding outer jumps by inner jumps.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::PathFamily;
use crate::boundary::{h2_dist, sup_dist_on, sup_norm_on, BoundaryGrid};
use crate::factor::{factorize_with, Backend, FactorConfig, FactorizationResult, ZEROS_MAX_DEGREE};
use crate::{Complex64, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProfileBackend {
    Modulus,
    Zeros,
    /// Modulus backend for the distances; the zero-based backend runs
    /// alongside wherever the input is a polynomial of moderate degree.
    Both,
    Auto,
}

impl std::str::FromStr for ProfileBackend {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "modulus" => Ok(Self::Modulus),
            "zeros" => Ok(Self::Zeros),
            "both" => Ok(Self::Both),
            "auto" => Ok(Self::Auto),
            other => Err(Error::Config(format!("unknown backend {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProfileMode {
    /// Rows for consecutive grid points.
    Consecutive,
    /// Rows `(t_ref, t)` for every other grid point.
    Reference(f64),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfileRow {
    pub s: f64,
    pub t: f64,
    pub sup_dist_f: f64,
    pub h2_dist_inn: f64,
    pub sup_dist_inn: f64,
    pub h2_dist_out: f64,
    pub sup_dist_out: f64,
    pub n0_s: Option<usize>,
    pub n0_t: Option<usize>,
    /// Largest H² disagreement between the two backends at `s` or `t`.
    pub backend_discrepancy: Option<f64>,
    /// Factorization failure at one of the endpoints; distances are NaN.
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContinuityProfile {
    pub family: PathFamily,
    pub backend: ProfileBackend,
    pub grid: BoundaryGrid,
    pub truncation: usize,
    pub oversample: usize,
    pub rows: Vec<ProfileRow>,
}

impl ContinuityProfile {
    pub fn row(&self, s: f64, t: f64) -> Option<&ProfileRow> {
        self.rows
            .iter()
            .find(|r| (r.s - s).abs() < 1e-12 && (r.t - t).abs() < 1e-12)
    }

    pub fn max_discrepancy(&self) -> Option<f64> {
        self.rows
            .iter()
            .filter_map(|r| r.backend_discrepancy)
            .reduce(f64::max)
    }

    pub fn failed_rows(&self) -> usize {
        self.rows.iter().filter(|r| r.error.is_some()).count()
    }
}

struct Point {
    t: f64,
    /// Closed-form samples on the refined grid.
    values: Vec<Complex64>,
    fact: std::result::Result<FactorizationResult, String>,
    discrepancy: Option<f64>,
}

fn check_grid(fam: &PathFamily, t_grid: &[f64]) -> Result<()> {
    if t_grid.is_empty() {
        return Err(Error::Precondition("empty t grid".into()));
    }
    if t_grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::Precondition("t grid must be strictly increasing".into()));
    }
    for &t in t_grid {
        fam.symbol_at(t)?;
    }
    Ok(())
}

fn factor_cfg(fam: &PathFamily, cfg: &FactorConfig) -> FactorConfig {
    FactorConfig { grid: fam.grid_for(&cfg.grid), ..*cfg }
}

fn discrepancy(a: &FactorizationResult, b: &FactorizationResult) -> f64 {
    h2_dist(&a.inner, &b.inner).max(h2_dist(&a.outer, &b.outer))
}

fn sample_point(fam: &PathFamily, t: f64, backend: ProfileBackend, cfg: &FactorConfig, oversample: usize) -> Result<Point> {
    let fcfg = factor_cfg(fam, cfg);
    let symbol = fam.symbol_at(t)?;
    let values = symbol.refined_values(&fcfg.grid, oversample);
    let f = match symbol.to_taylor(&fcfg.grid, fcfg.truncation()) {
        Ok(f) => f,
        Err(e) => return Ok(Point { t, values, fact: Err(e.to_string()), discrepancy: None }),
    };
    let run = |b: Backend| factorize_with(&f, b, &fcfg).map_err(|e| e.to_string());
    let (fact, discrepancy) = match backend {
        ProfileBackend::Modulus => (run(Backend::Modulus), None),
        ProfileBackend::Zeros => (run(Backend::Zeros), None),
        ProfileBackend::Auto => (run(Backend::Auto), None),
        ProfileBackend::Both => {
            let modulus = run(Backend::Modulus);
            let small = f.degree(fcfg.zero_tol).is_some_and(|d| d <= ZEROS_MAX_DEGREE);
            let zeros = small.then(|| run(Backend::Zeros));
            match (modulus, zeros) {
                (Ok(m), Some(Ok(z))) => {
                    let d = discrepancy(&m, &z);
                    (Ok(m), Some(d))
                }
                (Ok(m), _) => (Ok(m), None),
                (Err(_), Some(Ok(z))) => (Ok(z), None),
                (Err(e), _) => (Err(e), None),
            }
        }
    };
    Ok(Point { t, values, fact, discrepancy })
}

fn sup_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

fn compare(p: &Point, q: &Point, grid: &BoundaryGrid, oversample: usize) -> ProfileRow {
    let sup_dist_f = sup_diff(&p.values, &q.values);
    let backend_discrepancy = match (p.discrepancy, q.discrepancy) {
        (Some(a), Some(b)) => Some(a.max(b)),
        (a, b) => a.or(b),
    };
    let n0_s = p.fact.as_ref().ok().map(|r| r.n0);
    let n0_t = q.fact.as_ref().ok().map(|r| r.n0);
    match (&p.fact, &q.fact) {
        (Ok(a), Ok(b)) => ProfileRow {
            s: p.t,
            t: q.t,
            sup_dist_f,
            h2_dist_inn: h2_dist(&a.inner, &b.inner),
            sup_dist_inn: sup_dist_on(&a.inner, &b.inner, grid, oversample),
            h2_dist_out: h2_dist(&a.outer, &b.outer),
            sup_dist_out: sup_dist_on(&a.outer, &b.outer, grid, oversample),
            n0_s,
            n0_t,
            backend_discrepancy,
            error: None,
        },
        (a, b) => {
            let msg = [a.as_ref().err(), b.as_ref().err()]
                .into_iter()
                .flatten()
                .cloned()
                .collect::<Vec<_>>()
                .join("; ");
            ProfileRow {
                s: p.t,
                t: q.t,
                sup_dist_f,
                h2_dist_inn: f64::NAN,
                sup_dist_inn: f64::NAN,
                h2_dist_out: f64::NAN,
                sup_dist_out: f64::NAN,
                n0_s,
                n0_t,
                backend_discrepancy,
                error: Some(msg),
            }
        }
    }
}

/// Distances between the factors of `f_s` and `f_t` along `t_grid`.
///
/// `f` distances use the closed-form boundary samples; factor distances use
/// the computed Taylor coefficients. A factorization failure flags the rows
/// that touch it and the run continues.
pub fn profile_continuity(
    fam: &PathFamily,
    t_grid: &[f64],
    backend: ProfileBackend,
    mode: ProfileMode,
    cfg: &FactorConfig,
    oversample: usize,
) -> Result<ContinuityProfile> {
    check_grid(fam, t_grid)?;
    let mut ts = t_grid.to_vec();
    if let ProfileMode::Reference(r) = mode {
        fam.symbol_at(r)?;
        if !ts.iter().any(|t| (t - r).abs() < 1e-12) {
            ts.push(r);
        }
    }
    let points = ts
        .par_iter()
        .map(|&t| sample_point(fam, t, backend, cfg, oversample))
        .collect::<Result<Vec<_>>>()?;
    let grid = fam.grid_for(&cfg.grid);
    let rows = match mode {
        ProfileMode::Consecutive => points[..t_grid.len()]
            .windows(2)
            .map(|w| compare(&w[0], &w[1], &grid, oversample))
            .collect(),
        ProfileMode::Reference(r) => {
            let reference = points.iter().find(|p| (p.t - r).abs() < 1e-12).expect("reference sampled");
            points[..t_grid.len()]
                .iter()
                .filter(|p| (p.t - r).abs() >= 1e-12)
                .map(|p| compare(reference, p, &grid, oversample))
                .collect()
        }
    };
    Ok(ContinuityProfile {
        family: fam.clone(),
        backend,
        grid,
        truncation: cfg.truncation(),
        oversample,
        rows,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainRow {
    pub s: f64,
    pub t: f64,
    /// `‖F_s − F_t‖_∞`.
    pub lhs: f64,
    /// `‖f_s − f_t‖_∞`.
    pub f_term: f64,
    /// `‖u_s − u_t‖_∞`.
    pub u_term: f64,
    pub rhs: f64,
    pub slack: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainReport {
    /// `C = max_t ‖F_t‖_∞` over the grid.
    pub c_const: f64,
    pub rows: Vec<ChainRow>,
}

impl ChainReport {
    pub fn all_hold(&self) -> bool {
        self.rows.iter().all(|r| r.holds)
    }
}

pub const CHAIN_SLACK: f64 = 1e-6;

/// Checks `‖F_s − F_t‖_∞ ≤ ‖f_s − f_t‖_∞ + C·‖u_s − u_t‖_∞` for consecutive
/// grid points.
pub fn inequality_chain_check(
    fam: &PathFamily,
    t_grid: &[f64],
    backend: Backend,
    cfg: &FactorConfig,
    oversample: usize,
) -> Result<ChainReport> {
    check_grid(fam, t_grid)?;
    let fcfg = factor_cfg(fam, cfg);
    let grid = fcfg.grid;
    let points = t_grid
        .par_iter()
        .map(|&t| {
            let symbol = fam.symbol_at(t)?;
            let values = symbol.refined_values(&grid, oversample);
            let f = symbol.to_taylor(&grid, fcfg.truncation())?;
            Ok((t, values, factorize_with(&f, backend, &fcfg)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let c_const = points
        .iter()
        .map(|(_, _, r)| sup_norm_on(&r.outer, &grid, oversample))
        .fold(0.0, f64::max);
    let rows = points
        .windows(2)
        .map(|w| {
            let ((s, fs, a), (t, ft, b)) = (&w[0], &w[1]);
            let lhs = sup_dist_on(&a.outer, &b.outer, &grid, oversample);
            let f_term = sup_diff(fs, ft);
            let u_term = sup_dist_on(&a.inner, &b.inner, &grid, oversample);
            let rhs = f_term + c_const * u_term;
            ChainRow {
                s: *s,
                t: *t,
                lhs,
                f_term,
                u_term,
                rhs,
                slack: CHAIN_SLACK,
                holds: lhs <= rhs + CHAIN_SLACK,
            }
        })
        .collect();
    Ok(ChainReport { c_const, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::TaylorPoly;
    use crate::paths::Symbol;

    fn cfg() -> FactorConfig {
        FactorConfig::with_grid(1024)
    }

    #[test]
    fn example24_outer_jump() {
        let p = profile_continuity(
            &PathFamily::Example24,
            &[-0.1, -0.05, 0.05, 0.1],
            ProfileBackend::Modulus,
            ProfileMode::Consecutive,
            &cfg(),
            4,
        )
        .unwrap();
        let row = p.row(-0.05, 0.05).unwrap();
        assert!((row.sup_dist_out - 2.0).abs() < 1e-6);
        assert!((row.h2_dist_out - 2.0).abs() < 1e-6);
        // the difference peaks at z = ±i, where it is 4δ/(1+δ²)
        assert!((row.sup_dist_f - 0.2 / 1.0025).abs() < 1e-12);
        assert_eq!(p.rows.len(), 3);
        assert_eq!((row.n0_s, row.n0_t), (Some(0), Some(0)));
    }

    #[test]
    fn linear_inner_distances_to_one() {
        let ts = [0.5, 0.7, 0.9, 0.99, 1.0];
        let p = profile_continuity(
            &PathFamily::Linear { a: 1.0 },
            &ts,
            ProfileBackend::Zeros,
            ProfileMode::Reference(1.0),
            &FactorConfig::with_grid(4096),
            4,
        )
        .unwrap();
        for &t in &ts[..4] {
            let row = p.row(1.0, t).unwrap();
            let closed = ((1.0 - t) * (1.0 - t) + (1.0 - t * t)).sqrt();
            assert!((row.sup_dist_inn - 2.0).abs() < 1e-6, "t = {t}: {}", row.sup_dist_inn);
            assert!((row.h2_dist_inn - closed).abs() < 1e-6, "t = {t}");
        }
    }

    #[test]
    fn constant_family_is_flat() {
        let fam = PathFamily::Constant { symbol: Symbol::poly(TaylorPoly::from_real(&[2.0, 0.5])) };
        let p = profile_continuity(&fam, &[0.0, 0.5, 1.0], ProfileBackend::Both, ProfileMode::Consecutive, &cfg(), 2)
            .unwrap();
        for r in &p.rows {
            assert_eq!(r.sup_dist_f, 0.0);
            assert!(r.h2_dist_inn < 1e-14 && r.h2_dist_out < 1e-14);
            assert!(r.backend_discrepancy.unwrap() < 1e-6);
        }
        let chain = inequality_chain_check(&fam, &[0.0, 1.0], Backend::Auto, &cfg(), 2).unwrap();
        assert!(chain.all_hold());
    }

    #[test]
    fn failure_flags_row_and_continues() {
        // t = 1 puts a zero on the circle: the modulus backend refuses it
        let p = profile_continuity(
            &PathFamily::Linear { a: 1.0 },
            &[0.9, 1.0, 1.1],
            ProfileBackend::Modulus,
            ProfileMode::Consecutive,
            &cfg(),
            2,
        )
        .unwrap();
        assert_eq!(p.failed_rows(), 2);
        assert!(p.rows[0].h2_dist_inn.is_nan());
        assert!(p.rows[0].error.is_some());
    }

    #[test]
    fn chain_on_example24_and_outer_ramp() {
        let ts: Vec<f64> = (-2..=2).map(|k| k as f64 * 0.05).collect();
        let chain = inequality_chain_check(&PathFamily::Example24, &ts, Backend::Auto, &cfg(), 4).unwrap();
        assert!(chain.all_hold());
        let jump = chain.rows.iter().map(|r| r.lhs).fold(0.0, f64::max);
        assert!((jump - 2.0).abs() < 1e-6);

        let fam = PathFamily::OuterRamp { alpha: 0.5, base: 2.0, slope: 0.5 };
        let ts = [0.0, 0.25, 0.5, 0.75, 1.0];
        let chain = inequality_chain_check(&fam, &ts, Backend::Auto, &cfg(), 4).unwrap();
        assert!(chain.all_hold());
        for r in &chain.rows {
            assert!(r.u_term < 1e-8);
            assert!((r.lhs - 0.125).abs() < 1e-8);
        }
    }

    #[test]
    fn grid_must_increase() {
        let e = profile_continuity(
            &PathFamily::Example24,
            &[0.1, 0.0],
            ProfileBackend::Modulus,
            ProfileMode::Consecutive,
            &cfg(),
            1,
        );
        assert!(matches!(e, Err(Error::Precondition(_))));
    }
}
