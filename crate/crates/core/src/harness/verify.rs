//! The acceptance checks, one function per criterion.
//!
//! Every check returns assertion rows; batch checks report the worst case
//! over their samples. Checks that need resolution are skipped on tiny
//! configurations.

use std::f64::consts::E;

use rayon::prelude::*;

use super::report::{Assertion, CriterionResult};
use super::samples::{self, rng_for};
use super::{t_grid, RunConfig};
use crate::boundary::{h2_dist, sup_dist_on, Analytic, TaylorPoly};
use crate::factor::{blaschke, factorize_with, q_inn, Backend};
use crate::paths::{
    exact_avoids_origin, inequality_chain_check, mobius_homotopy, profile_continuity, shift_direction, PathFamily,
    ProfileBackend, ProfileMode, CHAIN_SLACK,
};
use crate::subspace::{
    build_projection, cross_section, gap_measure, projection_path, verify_gap_bound, GapMeasure, GapSettings,
};
use crate::{Complex64, Result};

pub const CRITERIA: [(u8, &str); 11] = [
    (1, "factor maps jump along (t-z)/(1-tz) at t = 0"),
    (2, "linear family t-z: inner sup jump, H2 continuity"),
    (3, "gap bounded by sup distance over c"),
    (4, "gap equals the larger maximal-angle sine"),
    (5, "cross section recovers the inner factor"),
    (6, "factorization roundtrip and backend agreement"),
    (7, "Blaschke coefficient identities"),
    (8, "h1 witness boundary modulus"),
    (9, "polygonal shift clears the origin"),
    (10, "Moebius homotopy and inequality chain"),
    (11, "projection path continuity"),
];

const UNDER_RESOLVED: &str = "skipped: under-resolved";

/// Grid and model large enough for the convergence-sensitive checks.
pub fn resolved(cfg: &RunConfig) -> bool {
    cfg.n >= 1024 && cfg.m() >= 64
}

fn name_of(id: u8) -> &'static str {
    CRITERIA.iter().find(|c| c.0 == id).map_or("?", |c| c.1)
}

fn max_of(it: impl Iterator<Item = f64>) -> f64 {
    it.fold(f64::NEG_INFINITY, |a, b| if b.is_nan() || a.is_nan() { f64::NAN } else { a.max(b) })
}

/// Turns an error inside a check into a failing row.
fn guard(label: &str, r: Result<Vec<Assertion>>) -> Vec<Assertion> {
    r.unwrap_or_else(|e| vec![Assertion::failed(label, e.to_string())])
}

/// Runs every criterion at the scale of `cfg`.
pub fn run_all(cfg: &RunConfig, scale: &str) -> Vec<CriterionResult> {
    let mut out = Vec::with_capacity(11);
    let mut measures = None;
    for &(id, _) in &CRITERIA {
        let rows = match id {
            1 => criterion_1(cfg),
            2 => criterion_2(cfg),
            3 => {
                let (rows, m) = criterion_3(cfg);
                measures = m;
                rows
            }
            4 => criterion_4(cfg, measures.as_deref()),
            5 => criterion_5(cfg),
            6 => criterion_6(cfg),
            7 => criterion_7(cfg),
            8 => criterion_8(cfg),
            9 => criterion_9(cfg),
            10 => criterion_10(cfg),
            _ => criterion_11(cfg),
        };
        out.push(CriterionResult::new(id, name_of(id), scale, cfg, rows));
    }
    out
}

/// Runs a single criterion.
pub fn run_one(id: u8, cfg: &RunConfig, scale: &str) -> CriterionResult {
    let rows = match id {
        1 => criterion_1(cfg),
        2 => criterion_2(cfg),
        3 => criterion_3(cfg).0,
        4 => criterion_4(cfg, criterion_3(cfg).1.as_deref()),
        5 => criterion_5(cfg),
        6 => criterion_6(cfg),
        7 => criterion_7(cfg),
        8 => criterion_8(cfg),
        9 => criterion_9(cfg),
        10 => criterion_10(cfg),
        11 => criterion_11(cfg),
        _ => vec![Assertion::failed("criterion id", format!("no criterion {id}"))],
    };
    CriterionResult::new(id, name_of(id), scale, cfg, rows)
}

/// `Q_out` jumps by 2 in both norms and `Q_inn` by 2 in H² across `t = 0`,
/// while `‖f_{−δ} − f_δ‖_∞ = 4δ/(1+δ²)` shrinks.
pub fn criterion_1(cfg: &RunConfig) -> Vec<Assertion> {
    if !resolved(cfg) {
        return vec![Assertion::skipped("example24 jumps", UNDER_RESOLVED)];
    }
    guard("example24 jumps", (|| {
        let fcfg = cfg.factor_config();
        let across = |d: f64| {
            profile_continuity(
                &PathFamily::Example24,
                &[-d, d],
                ProfileBackend::Modulus,
                ProfileMode::Consecutive,
                &fcfg,
                cfg.oversample,
            )
            .map(|p| p.rows[0].clone())
        };
        let mut rows = Vec::new();
        let tiny = 1e-7;
        let r = across(tiny)?;
        rows.push(Assertion::near(format!("sup |Q_out(f_-d) - Q_out(f_d)|, d = {tiny:e}"), r.sup_dist_out, 2.0, 1e-6));
        rows.push(Assertion::near(format!("H2 |Q_out(f_-d) - Q_out(f_d)|, d = {tiny:e}"), r.h2_dist_out, 2.0, 1e-6));
        rows.push(Assertion::near(format!("H2 |Q_inn(f_-d) - Q_inn(f_d)|, d = {tiny:e}"), r.h2_dist_inn, 2.0, 1e-6));
        let mut sup_f = Vec::new();
        for d in [0.1, 0.05, 0.025] {
            let r = across(d)?;
            let closed_inn = 2.0 * ((1.0 - d * d) / (1.0 + d * d)).sqrt();
            rows.push(Assertion::near(format!("sup |Q_out jump|, d = {d}"), r.sup_dist_out, 2.0, 1e-6));
            rows.push(Assertion::near(format!("H2 |Q_out jump|, d = {d}"), r.h2_dist_out, 2.0, 1e-6));
            rows.push(Assertion::near(format!("H2 |Q_inn jump| vs 2sqrt((1-d^2)/(1+d^2)), d = {d}"), r.h2_dist_inn, closed_inn, 1e-6));
            rows.push(Assertion::near(format!("sup |f_-d - f_d| vs 4d/(1+d^2), d = {d}"), r.sup_dist_f, 4.0 * d / (1.0 + d * d), 1e-9));
            sup_f.push(r.sup_dist_f);
        }
        for w in sup_f.windows(2) {
            rows.push(Assertion::at_most("sup |f_-d - f_d| decreases as d halves", w[1], w[0], 0.0));
        }
        Ok(rows)
    })())
}

/// `‖Q_inn(t − z) − 𝟏‖_∞ = 2` and `‖Q_inn(t − z) − 𝟏‖₂ = sqrt((1−t)² + 1 − t²)`.
pub fn criterion_2(cfg: &RunConfig) -> Vec<Assertion> {
    if !resolved(cfg) {
        return vec![Assertion::skipped("linear family", UNDER_RESOLVED)];
    }
    guard("linear family", (|| {
        let ts = [0.5, 0.7, 0.9, 0.99, 1.0];
        let p = profile_continuity(
            &PathFamily::Linear { a: 1.0 },
            &ts,
            ProfileBackend::Zeros,
            ProfileMode::Reference(1.0),
            &cfg.factor_config(),
            cfg.oversample,
        )?;
        let mut rows = Vec::new();
        let mut prev = f64::INFINITY;
        for &t in &ts[..4] {
            let r = p.row(1.0, t).ok_or_else(|| crate::Error::Tolerance(format!("missing row t = {t}")))?;
            let closed = ((1.0 - t) * (1.0 - t) + (1.0 - t * t)).sqrt();
            rows.push(Assertion::near(format!("sup |Q_inn(f_t) - 1|, t = {t}"), r.sup_dist_inn, 2.0, 1e-6));
            rows.push(Assertion::near(format!("H2 |Q_inn(f_t) - 1| vs closed form, t = {t}"), r.h2_dist_inn, closed, 1e-6));
            rows.push(Assertion::near(format!("sup |f_t - f_1|, t = {t}"), r.sup_dist_f, 1.0 - t, 1e-12));
            rows.push(Assertion::at_most(format!("H2 distance decreasing toward t = 1, t = {t}"), r.h2_dist_inn, prev, 0.0));
            prev = r.h2_dist_inn;
        }
        let r = p.row(1.0, 0.9).expect("row present");
        rows.push(Assertion::near("H2 |Q_inn(f_0.9) - 1| = 0.447213...", r.h2_dist_inn, 0.447_213_595_499_958, 1e-6));
        Ok(rows)
    })())
}

const GAP_PAIRS: usize = 50;

fn pair_polys(cfg: &RunConfig) -> Result<Vec<(TaylorPoly, TaylorPoly)>> {
    let mut rng = rng_for(cfg.seed, 3);
    let grid = cfg.grid();
    let len = cfg.n / 2;
    (0..GAP_PAIRS)
        .map(|_| {
            let p = samples::gap_pair(&mut rng);
            Ok((p.f.to_taylor(&grid, len)?, p.g.to_taylor(&grid, len)?))
        })
        .collect()
}

fn doubled_settings(s: &GapSettings) -> GapSettings {
    GapSettings { shifts: s.shifts * 2, ambient: s.ambient * 2, oversample: s.oversample }
}

/// 50 random pairs: `gap ≤ ‖f − g‖_∞/c + 1e−6` at `M`, and the gap moves by
/// less than `1e−4` when `M` and `K` double. Returns every gap measured.
pub fn criterion_3(cfg: &RunConfig) -> (Vec<Assertion>, Option<Vec<GapMeasure>>) {
    if !resolved(cfg) {
        return (vec![Assertion::skipped("gap bound", UNDER_RESOLVED)], None);
    }
    let fcfg = cfg.factor_config();
    let settings = cfg.gap_settings();
    let pairs = match pair_polys(cfg) {
        Ok(p) => p,
        Err(e) => return (vec![Assertion::failed("gap pairs", e.to_string())], None),
    };
    let results: Vec<Result<_>> = pairs
        .par_iter()
        .map(|(f, g)| {
            let a = verify_gap_bound(f, g, &settings, &fcfg)?;
            let b = verify_gap_bound(f, g, &doubled_settings(&settings), &fcfg)?;
            Ok((a, b))
        })
        .collect();
    let mut rows = Vec::new();
    let mut measures = Vec::new();
    let mut excess = Vec::new();
    let mut drift = Vec::new();
    let mut sup = Vec::new();
    for (i, r) in results.into_iter().enumerate() {
        match r {
            Ok((a, b)) => {
                excess.push(a.gap - a.bound_rhs);
                drift.push((a.gap - b.gap).abs());
                sup.push(a.sup_dist);
                measures.push(a.measure());
                measures.push(b.measure());
            }
            Err(e) => rows.push(Assertion::failed(format!("pair {i}"), e.to_string())),
        }
    }
    rows.push(Assertion::near("pairs evaluated", excess.len() as f64, GAP_PAIRS as f64, 0.0));
    rows.push(Assertion::at_most("max ||f - g||_inf over pairs", max_of(sup.into_iter()), 0.2, 0.0));
    rows.push(Assertion::at_most(
        format!("max gap - ||f-g||_inf/c at M = {}", settings.ambient),
        max_of(excess.into_iter()),
        0.0,
        crate::subspace::GAP_SLACK,
    ));
    rows.push(Assertion::at_most(
        format!("max |gap(M) - gap(2M)|, M = {}", settings.ambient),
        max_of(drift.into_iter()),
        1e-4,
        0.0,
    ));
    (rows, Some(measures))
}

/// `|gap − max(sin_mn, sin_nm)| < 1e−10` on every gap of criterion 3. On
/// under-resolved configurations the same pairs are built from exact
/// coefficients in the small model.
pub fn criterion_4(cfg: &RunConfig, measures: Option<&[GapMeasure]>) -> Vec<Assertion> {
    let owned;
    let (measures, expected, source) = match measures {
        Some(m) => (m, 2 * GAP_PAIRS, "criterion 3 measures at M and 2M"),
        None => {
            let r = (|| -> Result<Vec<GapMeasure>> {
                let mut rng = rng_for(cfg.seed, 3);
                let (k, m) = (cfg.k(), cfg.m());
                let mut out = Vec::new();
                for _ in 0..GAP_PAIRS {
                    let p = samples::gap_pair(&mut rng);
                    let exact = |s: &crate::paths::Symbol| -> Result<TaylorPoly> {
                        // coefficients from a grid fine enough for the model
                        let grid = crate::boundary::BoundaryGrid::new((4 * m).max(1024), false)?;
                        s.to_taylor(&grid, m)
                    };
                    let pf = build_projection(&exact(&p.f)?, k, m)?;
                    let pg = build_projection(&exact(&p.g)?, k, m)?;
                    out.push(gap_measure(&pf, &pg)?);
                }
                Ok(out)
            })();
            match r {
                Ok(m) => {
                    owned = m;
                    (&owned[..], GAP_PAIRS, "small-model pairs")
                }
                Err(e) => return vec![Assertion::failed("gap identity", e.to_string())],
            }
        }
    };
    let worst = max_of(measures.iter().map(GapMeasure::identity_defect));
    let sines = max_of(measures.iter().map(|m| m.sin_mn.max(m.sin_nm)));
    vec![
        Assertion::near("gap computations checked", measures.len() as f64, expected as f64, 0.0).with_note(source),
        Assertion::at_most("max |gap - max(sin_mn, sin_nm)|", worst, 0.0, 1e-10),
        Assertion::at_most("max maximal-angle sine", sines, 1.0, 1e-12),
    ]
}

/// `h2_dist(cross_section(P_f), q_inn(f)) < 5e−4` at `M`, at least halving
/// when `M` doubles (or already below the `1e−9` noise floor).
pub fn criterion_5(cfg: &RunConfig) -> Vec<Assertion> {
    if !resolved(cfg) {
        return vec![Assertion::skipped("cross section", UNDER_RESOLVED)];
    }
    const NOISE: f64 = 1e-9;
    guard("cross section", (|| {
        let fcfg = cfg.factor_config();
        let grid = cfg.grid();
        let settings = cfg.gap_settings();
        let big = doubled_settings(&settings);
        let mut rng = rng_for(cfg.seed, 5);
        let fs = (0..20)
            .map(|_| {
                let zeros = samples::blaschke_zeros(&mut rng, 1, 4, 0.7);
                let outer = samples::outer_poly(&mut rng, 0.8);
                samples::product_symbol(&zeros, &outer).to_taylor(&grid, cfg.n / 2)
            })
            .collect::<Result<Vec<_>>>()?;
        let errs = fs
            .par_iter()
            .map(|f| {
                let u = q_inn(f, &fcfg)?;
                let err = |s: &GapSettings| -> Result<f64> {
                    Ok(h2_dist(&cross_section(&build_projection(f, s.shifts, s.ambient)?)?, &u))
                };
                Ok((err(&settings)?, err(&big)?))
            })
            .collect::<Result<Vec<_>>>()?;
        let worst = max_of(errs.iter().map(|e| e.0));
        // ratio test: err(2M) <= max(err(M)/2, noise floor)
        let excess = max_of(errs.iter().map(|&(a, b)| b - (a / 2.0).max(NOISE)));
        Ok(vec![
            Assertion::at_most(format!("max h2_dist(cross_section, q_inn) at M = {}", settings.ambient), worst, 5e-4, 0.0),
            Assertion::at_most("max err(2M) - max(err(M)/2, 1e-9)", excess, 0.0, 0.0)
                .with_note(format!("max err(2M) = {:e}", max_of(errs.iter().map(|e| e.1)))),
        ])
    })())
}

/// 50 random polynomials: both backends factor them, agree to `1e−6` and
/// normalize the `n₀`-th inner coefficient to be real-positive.
pub fn criterion_6(cfg: &RunConfig) -> Vec<Assertion> {
    if !resolved(cfg) {
        return vec![Assertion::skipped("backend agreement", UNDER_RESOLVED)];
    }
    guard("backend agreement", (|| {
        let fcfg = cfg.factor_config();
        let mut rng = rng_for(cfg.seed, 6);
        let polys: Vec<TaylorPoly> = (0..50).map(|_| samples::polynomial_off_circle(&mut rng, 16, 0.05)).collect();
        let results = polys
            .par_iter()
            .map(|f| {
                let a = factorize_with(f, Backend::Modulus, &fcfg)?;
                let b = factorize_with(f, Backend::Zeros, &fcfg)?;
                Ok((a, b))
            })
            .collect::<Result<Vec<_>>>()?;
        let agree = max_of(results.iter().map(|(a, b)| h2_dist(&a.inner, &b.inner).max(h2_dist(&a.outer, &b.outer))));
        let residual = max_of(results.iter().map(|(a, b)| a.residual.max(b.residual)));
        let defect = max_of(results.iter().map(|(a, b)| a.boundary_defect.max(b.boundary_defect)));
        let phase = max_of(results.iter().flat_map(|(a, b)| [a, b]).map(|r| r.inner.coeff(r.n0).im.abs()));
        let lead = results
            .iter()
            .flat_map(|(a, b)| [a, b])
            .map(|r| r.inner.coeff(r.n0).re)
            .fold(f64::INFINITY, f64::min);
        Ok(vec![
            Assertion::at_most("max backend disagreement (H2, inner and outer)", agree, 1e-6, 0.0),
            Assertion::at_most("max residual", residual, 1e-7, 0.0),
            Assertion::at_most("max boundary defect", defect, 1e-7, 0.0),
            Assertion::at_most("max |Im u^(n0)(0)|", phase, 0.0, 1e-12),
            Assertion::at_least("min Re u^(n0)(0)", lead, f64::MIN_POSITIVE, 0.0),
        ])
    })())
}

/// `b(0) = ∏|α|` and `Σ|c_k|² = 1` for 20 random Blaschke products.
pub fn criterion_7(cfg: &RunConfig) -> Vec<Assertion> {
    if !resolved(cfg) {
        return vec![Assertion::skipped("Blaschke identities", UNDER_RESOLVED)];
    }
    guard("Blaschke identities", (|| {
        let mut rng = rng_for(cfg.seed, 7);
        let mut at0 = 0.0f64;
        let mut energy = 0.0f64;
        for _ in 0..20 {
            let zeros = samples::blaschke_zeros(&mut rng, 1, 6, 0.9);
            let b = blaschke(&zeros, 0, cfg.n / 2)?;
            let prod: f64 = zeros.iter().map(|a| a.norm()).product();
            at0 = at0.max((b.coeff(0) - prod).norm());
            let sum: f64 = b.coeffs().iter().map(|c| c.norm_sqr()).sum();
            energy = energy.max((sum - 1.0).abs());
        }
        Ok(vec![
            Assertion::at_most("max |b(0) - prod |a_k||", at0, 0.0, 1e-10),
            Assertion::at_most("max |sum |c_k|^2 - 1|", energy, 0.0, 1e-8),
        ])
    })())
}

/// `|h₁| ∈ {e^{−1}, e}` on the half-offset grid.
pub fn criterion_8(cfg: &RunConfig) -> Vec<Assertion> {
    if !resolved(cfg) {
        return vec![Assertion::skipped("h1 witness", UNDER_RESOLVED)];
    }
    guard("h1 witness", (|| {
        let grid = cfg.grid().with_offset(true);
        let s = PathFamily::H1Witness.symbol_at(1.0)?.sample_on(&grid)?;
        let dev = max_of(s.values().iter().map(|v| {
            let m = v.norm();
            (m - 1.0 / E).abs().min((m - E).abs())
        }));
        let upper = s.values().iter().filter(|v| (v.norm() - 1.0 / E).abs() < 1e-3).count();
        Ok(vec![
            Assertion::at_most("max distance of |h1| to {1/e, e}", dev, 0.0, 1e-6),
            Assertion::at_least("min |h1| on the grid", s.min_modulus(), 1.0 / E, 1e-6),
            Assertion::near("samples with |h1| = 1/e (upper half circle)", upper as f64, (grid.size() / 2) as f64, 0.0),
        ])
    })())
}

/// 100 random polygons: the shift `ε₀e^{iη}` moves each off the origin,
/// certified by exact rational segment tests.
pub fn criterion_9(cfg: &RunConfig) -> Vec<Assertion> {
    guard("polygonal shift", (|| {
        let mut rng = rng_for(cfg.seed, 9);
        let mut exact_ok = 0usize;
        let mut clearance = f64::INFINITY;
        let mut separation = f64::INFINITY;
        let mut through = 0usize;
        for i in 0..100 {
            let path = samples::polygonal_path(&mut rng, 12, i % 4 == 0)?;
            if path.distance_to(Complex64::new(0.0, 0.0)) == 0.0 {
                through += 1;
            }
            let s = shift_direction(&path, 1.0)?;
            if exact_avoids_origin(&path, s.shift(s.eps0)) {
                exact_ok += 1;
            }
            clearance = clearance.min(s.min_clearance);
            separation = separation.min(s.separation);
        }
        Ok(vec![
            Assertion::near("paths certified by exact segment tests", exact_ok as f64, 100.0, 0.0),
            Assertion::at_least("min clearance", clearance, f64::MIN_POSITIVE, 0.0),
            Assertion::at_least("min angular separation", separation, f64::MIN_POSITIVE, 0.0),
            Assertion::at_least("paths passing through 0 before the shift", through as f64, 25.0, 0.0),
        ])
    })())
}

/// Möbius homotopy steps and the outer-jump inequality chain.
pub fn criterion_10(cfg: &RunConfig) -> Vec<Assertion> {
    if !resolved(cfg) {
        return vec![Assertion::skipped("homotopy and chain", UNDER_RESOLVED)];
    }
    guard("homotopy and chain", (|| {
        let grid = cfg.grid();
        let fcfg = cfg.factor_config();
        let z = TaylorPoly::z();
        let gs = (0..=100)
            .into_par_iter()
            .map(|k| mobius_homotopy(&z, 0.5, k as f64 / 100.0, &grid))
            .collect::<Result<Vec<_>>>()?;
        let step = max_of(gs.windows(2).map(|w| sup_dist_on(&w[0], &w[1], &grid, cfg.oversample)));
        let unimodular = max_of(gs.iter().flat_map(|g| {
            g.refined_values(&grid, cfg.oversample).into_iter().map(|v| (v.norm() - 1.0).abs())
        }));
        let chain = |fam: &PathFamily, ts: Vec<f64>, backend| -> Result<(f64, usize)> {
            let r = inequality_chain_check(fam, &ts, backend, &fcfg, cfg.oversample)?;
            Ok((max_of(r.rows.iter().map(|x| x.lhs - x.rhs)), r.rows.len()))
        };
        let (ex, n_ex) = chain(&PathFamily::Example24, t_grid(-0.5, 0.5, 0.05)?, Backend::Auto)?;
        let (lin, n_lin) = chain(&PathFamily::Linear { a: 1.0 }, t_grid(0.5, 1.5, 0.1)?, Backend::Zeros)?;
        Ok(vec![
            Assertion::at_most("max consecutive sup distance, step 0.01", step, 0.05, 0.0),
            Assertion::at_most("max ||g_t| - 1| on the boundary", unimodular, 0.0, 1e-7),
            Assertion::at_most(format!("(t-z)/(1-tz) chain: max lhs - rhs over {n_ex} steps"), ex, 0.0, CHAIN_SLACK),
            Assertion::at_most(format!("t-z chain: max lhs - rhs over {n_lin} steps"), lin, 0.0, CHAIN_SLACK),
        ])
    })())
}

/// Consecutive projection gaps along `(t − z)/(1 − tz)`, `t ∈ [0.2, 0.8]`,
/// stay below `(1/c)·` consecutive sup distances, stably under doubling.
pub fn criterion_11(cfg: &RunConfig) -> Vec<Assertion> {
    if !resolved(cfg) {
        return vec![Assertion::skipped("projection path", UNDER_RESOLVED)];
    }
    guard("projection path", (|| {
        let fcfg = cfg.factor_config();
        let ts = t_grid(0.2, 0.8, 0.05)?;
        let settings = cfg.gap_settings();
        let a = projection_path(&PathFamily::Example24, &ts, &settings, &fcfg)?;
        let b = projection_path(&PathFamily::Example24, &ts, &doubled_settings(&settings), &fcfg)?;
        let excess = max_of(a.reports.iter().map(|r| r.gap - r.bound_rhs));
        let drift = max_of(a.reports.iter().zip(&b.reports).map(|(x, y)| (x.gap - y.gap).abs()));
        let c = a.c.iter().copied().fold(f64::INFINITY, f64::min);
        let identity = max_of(a.reports.iter().chain(&b.reports).map(|r| r.measure().identity_defect()));
        Ok(vec![
            Assertion::at_most(format!("max gap - sup/c over {} steps", a.reports.len()), excess, 0.0, crate::subspace::GAP_SLACK),
            Assertion::at_most("max |gap(M) - gap(2M)|", drift, 1e-4, 0.0),
            Assertion::at_least("path-uniform c", c, 0.0, 0.0),
            Assertion::at_most("max |gap - max(sin_mn, sin_nm)|", identity, 0.0, 1e-10),
        ])
    })())
}
