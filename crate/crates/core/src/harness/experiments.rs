//! The four experiments behind the command-line driver. Each returns its
//! artifacts in memory; the caller writes them.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::report::{Assertion, ExperimentReport};
use super::{gap_csv, parse_family, parse_function, profile_csv, to_json_pretty, verify, ProfileSidecar, RunConfig};
use crate::boundary::TaylorPoly;
use crate::factor::{factorize_with, Backend, FactorizationResult};
use crate::paths::{profile_continuity, ContinuityProfile, PathFamily, ProfileBackend, ProfileMode};
use crate::subspace::{verify_gap_bound, GapReport};
use crate::{Error, Result};

/// Distances a profile report asserts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Norm {
    Sup,
    H2,
}

impl std::str::FromStr for Norm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sup" | "inf" => Ok(Norm::Sup),
            "h2" => Ok(Norm::H2),
            other => Err(Error::Config(format!("unknown norm {other:?} (sup, h2)"))),
        }
    }
}

pub struct FactorRun {
    pub result: FactorizationResult,
    pub json: String,
    pub summary: String,
    pub accepted: bool,
}

fn show_coeffs(p: &TaylorPoly) -> String {
    let t = p.trimmed(1e-12);
    let shown: Vec<String> = t
        .coeffs()
        .iter()
        .take(6)
        .map(|c| {
            if c.im.abs() < 1e-12 {
                format!("{:.6}", c.re)
            } else {
                format!("{:.6}{:+.6}i", c.re, c.im)
            }
        })
        .collect();
    let more = if t.len() > 6 { format!(", ... ({} terms)", t.len()) } else { String::new() };
    format!("[{}{more}]", shown.join(", "))
}

pub fn run_factor(f: &TaylorPoly, backend: Backend, cfg: &RunConfig, offset: bool) -> Result<FactorRun> {
    let fcfg = cfg.factor_config().with_offset(offset);
    let result = factorize_with(f, backend, &fcfg)?;
    let accepted = result.is_accepted(&fcfg);
    let json = to_json_pretty(&result.to_json())?;
    let summary = format!(
        "backend {:?}: n0 = {}\n  inner = {}\n  outer = {}\n  residual = {:e}, boundary defect = {:e}{}",
        result.backend,
        result.n0,
        show_coeffs(&result.inner),
        show_coeffs(&result.outer),
        result.residual,
        result.boundary_defect,
        if accepted { "" } else { "  (above tolerance)" }
    );
    Ok(FactorRun { result, json, summary, accepted })
}

/// Function spec or coefficient list to Taylor coefficients on the
/// configured grid.
pub fn function_coeffs(spec: &str, cfg: &RunConfig) -> Result<TaylorPoly> {
    parse_function(spec)?.to_taylor(&cfg.grid(), cfg.n / 2)
}

pub struct ProfileRun {
    pub profile: ContinuityProfile,
    pub csv: String,
    pub sidecar: String,
    pub report: ExperimentReport,
}

/// The statements a profile of a known family is expected to show.
pub fn profile_assertions(p: &ContinuityProfile, norms: &[Norm]) -> Vec<Assertion> {
    let sup = norms.contains(&Norm::Sup);
    let h2 = norms.contains(&Norm::H2);
    let mut rows = vec![Assertion::near("rows with a factorization failure", p.failed_rows() as f64, 0.0, 0.0)];
    let min = p
        .rows
        .iter()
        .flat_map(|r| [r.sup_dist_f, r.h2_dist_inn, r.sup_dist_inn, r.h2_dist_out, r.sup_dist_out])
        .filter(|x| !x.is_nan())
        .fold(f64::INFINITY, f64::min);
    if min.is_finite() {
        rows.push(Assertion::at_least("min distance", min, 0.0, 0.0));
    }
    match &p.family {
        PathFamily::Example24 => {
            for r in p.rows.iter().filter(|r| r.s <= 0.0 && r.t > 0.0 && r.error.is_none()) {
                if sup {
                    rows.push(Assertion::near(format!("sup_dist_out ({}, {})", r.s, r.t), r.sup_dist_out, 2.0, 1e-6));
                }
                if h2 {
                    rows.push(Assertion::near(format!("h2_dist_out ({}, {})", r.s, r.t), r.h2_dist_out, 2.0, 1e-6));
                }
            }
        }
        PathFamily::Linear { a } if *a == 1.0 => {
            for r in p.rows.iter().filter(|r| r.error.is_none()) {
                let other = if r.t == 1.0 && r.s < 1.0 {
                    r.s
                } else if r.s == 1.0 && r.t < 1.0 {
                    r.t
                } else {
                    continue;
                };
                let closed = ((1.0 - other) * (1.0 - other) + (1.0 - other * other)).sqrt();
                if sup {
                    rows.push(Assertion::near(format!("sup_dist_inn to t = 1 from {other}"), r.sup_dist_inn, 2.0, 1e-6));
                }
                if h2 {
                    rows.push(Assertion::near(format!("h2_dist_inn to t = 1 from {other}"), r.h2_dist_inn, closed, 1e-6));
                }
            }
        }
        _ => {}
    }
    if let Some(d) = p.max_discrepancy() {
        rows.push(Assertion::at_most("max backend discrepancy", d, 1e-6, 0.0));
    }
    rows
}

pub fn run_profile(
    family_spec: &str,
    backend: ProfileBackend,
    reference: Option<f64>,
    norms: &[Norm],
    cfg: &RunConfig,
) -> Result<ProfileRun> {
    let started = Instant::now();
    let spec = parse_family(family_spec)?;
    let mode = reference.map_or(ProfileMode::Consecutive, ProfileMode::Reference);
    let profile = profile_continuity(&spec.family, &spec.t_grid, backend, mode, &cfg.factor_config(), cfg.oversample)?;
    let hash = cfg.hash();
    let csv = profile_csv(&profile, &hash)?;
    let sidecar = to_json_pretty(&ProfileSidecar::new(&profile, &hash))?;
    let mut report = ExperimentReport::new(&format!("profile {family_spec}"), cfg);
    for a in profile_assertions(&profile, norms) {
        report.push(a);
    }
    report.wall_time_s = started.elapsed().as_secs_f64();
    Ok(ProfileRun { profile, csv, sidecar, report })
}

pub fn run_gap(f_spec: &str, g_spec: &str, cfg: &RunConfig) -> Result<(GapReport, String)> {
    let f = function_coeffs(f_spec, cfg)?;
    let g = function_coeffs(g_spec, cfg)?;
    let report = verify_gap_bound(&f, &g, &cfg.gap_settings(), &cfg.factor_config())?;
    let csv = gap_csv(&[report], &cfg.hash())?;
    Ok((report, csv))
}

/// All criteria at the configured scale and at doubled `N`, `M`; `only`
/// restricts to the listed criterion ids.
pub fn run_verify_all(cfg: &RunConfig, only: Option<&[u8]>) -> ExperimentReport {
    let started = Instant::now();
    let mut report = ExperimentReport::new("verify-all", cfg);
    for (scale, c) in [("config", cfg.clone()), ("doubled", cfg.doubled())] {
        let results = match only {
            None => verify::run_all(&c, scale),
            Some(ids) => ids.iter().map(|&id| verify::run_one(id, &c, scale)).collect(),
        };
        for r in results {
            report.push_criterion(r);
        }
    }
    report.wall_time_s = started.elapsed().as_secs_f64();
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> RunConfig {
        RunConfig { n: 1024, ..RunConfig::default() }
    }

    #[test]
    fn profile_example24_reports_jump() {
        let run = run_profile("example24@[-0.1:0.1:0.05]", ProfileBackend::Modulus, None, &[Norm::Sup, Norm::H2], &small())
            .unwrap();
        assert!(run.report.passed, "{:?}", run.report.assertions);
        assert!(run.report.assertions.iter().any(|a| a.label.starts_with("sup_dist_out (0, 0.05)")));
        assert!(run.csv.lines().last().unwrap().starts_with("# config_hash="));
        assert!(run.sidecar.contains("\"family_kind\": \"example24\""));
    }

    #[test]
    fn profile_linear_reference() {
        let run = run_profile("linear(a=1)@[0.5:1.5:0.1]", ProfileBackend::Zeros, Some(1.0), &[Norm::Sup, Norm::H2], &small())
            .unwrap();
        assert!(run.report.passed, "{:?}", run.report.assertions);
        assert_eq!(run.profile.rows.len(), 10);
    }

    #[test]
    fn gap_examples() {
        let (r, csv) = run_gap("outer:2+z", "outer:2.1+z", &small()).unwrap();
        assert!(r.satisfied);
        assert_eq!(csv.lines().count(), 3);
        let (r, _) = run_gap("outer:2+z", "outer:2+z", &small()).unwrap();
        assert!(r.gap < 1e-12);
        assert!(matches!(run_gap("poly:z", "outer:2+z", &small()), Err(Error::Precondition(_))));
    }

    #[test]
    fn factor_examples() {
        let cfg = small();
        let run = run_factor(&function_coeffs("blaschke:0.5", &cfg).unwrap(), Backend::Auto, &cfg, false).unwrap();
        assert!(run.accepted);
        assert!(run.summary.contains("outer = [1.000000]"), "{}", run.summary);
        let f = TaylorPoly::from_real(&[0.0, 2.0, 1.0]);
        let run = run_factor(&f, Backend::Auto, &cfg, false).unwrap();
        assert_eq!(run.result.n0, 1);
        assert!(run.summary.contains("outer = [2.000000, 1.000000]"), "{}", run.summary);
        let zero = TaylorPoly::from_real(&[0.0, 0.0]);
        assert!(matches!(run_factor(&zero, Backend::Auto, &cfg, false), Err(Error::NumericallyZero { .. })));
    }

    #[test]
    fn tiny_config_skips_convergence_checks() {
        let cfg = RunConfig { n: 8, ..RunConfig::default() };
        let report = run_verify_all(&cfg, Some(&[1, 4, 9]));
        assert!(report.passed);
        let c1 = &report.criteria[0];
        assert_eq!(c1.status, super::super::Status::Skipped);
        assert_eq!(c1.assertions[0].note.as_deref(), Some("skipped: under-resolved"));
        // geometry does not depend on resolution
        assert_eq!(report.criteria[2].status, super::super::Status::Pass);
    }
}
