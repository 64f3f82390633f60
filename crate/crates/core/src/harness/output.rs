//! CSV/JSON artifacts. Every file is written once, to a temporary name in the
//! target directory, then renamed into place.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::paths::{ContinuityProfile, ProfileBackend};
use crate::subspace::GapReport;
use crate::{Error, Result};

/// Creates `dir` if needed and checks that it accepts files.
pub fn ensure_out_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir)?;
    let probe = tempfile_in(dir)?;
    drop(probe);
    Ok(())
}

fn tempfile_in(dir: &Path) -> Result<(fs::File, PathBuf)> {
    for attempt in 0..100u32 {
        let path = dir.join(format!(".innout-{}-{attempt}.tmp", std::process::id()));
        match fs::OpenOptions::new().write(true).create_new(true).open(&path) {
            Ok(f) => return Ok((f, path)),
            Err(e) if e.kind() == std::io::ErrorKind::AlreadyExists => continue,
            Err(e) => return Err(e.into()),
        }
    }
    Err(Error::Io(std::io::Error::other("could not create a temporary file")))
}

/// Writes `bytes` to `path` atomically.
pub fn atomic_write(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let (mut file, tmp) = tempfile_in(dir)?;
    let written = file.write_all(bytes).and_then(|_| file.sync_all());
    drop(file);
    if let Err(e) = written.and_then(|_| fs::rename(&tmp, path)) {
        let _ = fs::remove_file(&tmp);
        return Err(e.into());
    }
    Ok(())
}

/// Shortest round-trip representation; `NaN` and `inf` spelled out.
fn num(x: f64) -> String {
    format!("{x}")
}

fn finish(mut w: csv::Writer<Vec<u8>>, config_hash: &str) -> Result<String> {
    w.flush()?;
    let bytes = w.into_inner().map_err(|e| Error::Serialization(e.to_string()))?;
    let mut s = String::from_utf8(bytes).map_err(|e| Error::Serialization(e.to_string()))?;
    s.push_str(&format!("# config_hash={config_hash}\n"));
    Ok(s)
}

/// Profile rows in the declared column order; `backend_discrepancy` is
/// appended when both backends ran.
pub fn profile_csv(profile: &ContinuityProfile, config_hash: &str) -> Result<String> {
    let both = profile.backend == ProfileBackend::Both;
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec![
        "s", "t", "sup_dist_f", "h2_dist_inn", "sup_dist_inn", "h2_dist_out", "sup_dist_out", "n0_s", "n0_t",
    ];
    if both {
        header.push("backend_discrepancy");
    }
    w.write_record(&header)?;
    let opt = |v: Option<usize>| v.map(|n| n.to_string()).unwrap_or_default();
    for r in &profile.rows {
        let mut rec = vec![
            num(r.s),
            num(r.t),
            num(r.sup_dist_f),
            num(r.h2_dist_inn),
            num(r.sup_dist_inn),
            num(r.h2_dist_out),
            num(r.sup_dist_out),
            opt(r.n0_s),
            opt(r.n0_t),
        ];
        if both {
            rec.push(r.backend_discrepancy.map(num).unwrap_or_default());
        }
        w.write_record(&rec)?;
    }
    finish(w, config_hash)
}

pub fn gap_csv(reports: &[GapReport], config_hash: &str) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["t_left", "t_right", "sup_dist", "gap", "sin_mn", "sin_nm", "c", "bound_rhs", "satisfied"])?;
    for r in reports {
        w.write_record([
            r.t_left.map(num).unwrap_or_default(),
            r.t_right.map(num).unwrap_or_default(),
            num(r.sup_dist),
            num(r.gap),
            num(r.sin_mn),
            num(r.sin_nm),
            num(r.c),
            num(r.bound_rhs),
            r.satisfied.to_string(),
        ])?;
    }
    finish(w, config_hash)
}

/// Companion JSON describing how a profile was produced.
#[derive(Debug, Clone, Serialize)]
pub struct ProfileSidecar<'a> {
    pub family_kind: &'a str,
    pub parameters: &'a crate::paths::PathFamily,
    pub n: usize,
    pub offset_grid: bool,
    pub m: usize,
    pub backend: ProfileBackend,
    pub oversample: usize,
    pub config_hash: &'a str,
}

impl<'a> ProfileSidecar<'a> {
    pub fn new(profile: &'a ContinuityProfile, config_hash: &'a str) -> Self {
        Self {
            family_kind: profile.family.kind(),
            parameters: &profile.family,
            n: profile.grid.size(),
            offset_grid: profile.grid.offset(),
            m: profile.truncation,
            backend: profile.backend,
            oversample: profile.oversample,
            config_hash,
        }
    }
}

pub fn to_json_pretty<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factor::FactorConfig;
    use crate::paths::{profile_continuity, PathFamily, ProfileMode};

    #[test]
    fn atomic_write_replaces() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("a.txt");
        atomic_write(&p, b"one").unwrap();
        atomic_write(&p, b"two").unwrap();
        assert_eq!(fs::read_to_string(&p).unwrap(), "two");
        let leftovers = fs::read_dir(dir.path()).unwrap().count();
        assert_eq!(leftovers, 1);
    }

    #[test]
    fn profile_csv_layout() {
        let p = profile_continuity(
            &PathFamily::Example24,
            &[-0.05, 0.05],
            ProfileBackend::Both,
            ProfileMode::Consecutive,
            &FactorConfig::with_grid(256),
            2,
        )
        .unwrap();
        let csv = profile_csv(&p, "abc").unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(
            lines[0],
            "s,t,sup_dist_f,h2_dist_inn,sup_dist_inn,h2_dist_out,sup_dist_out,n0_s,n0_t,backend_discrepancy"
        );
        assert!(lines[1].starts_with("-0.05,0.05,"));
        assert_eq!(lines[2], "# config_hash=abc");
    }

    #[test]
    fn gap_csv_layout() {
        let r = GapReport {
            t_left: None,
            t_right: None,
            sup_dist: 0.1,
            gap: 0.01,
            sin_mn: 0.01,
            sin_nm: 0.005,
            c: 0.9,
            bound_rhs: 0.1 / 0.9,
            satisfied: true,
        };
        let csv = gap_csv(&[r], "h").unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "t_left,t_right,sup_dist,gap,sin_mn,sin_nm,c,bound_rhs,satisfied");
        assert!(lines[1].starts_with(",,0.1,0.01,"));
        assert!(lines[1].ends_with(",true"));
    }
}
