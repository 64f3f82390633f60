//! Run configuration: defaults, key-value file, environment, flags.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::boundary::BoundaryGrid;
use crate::factor::FactorConfig;
use crate::subspace::GapSettings;
use crate::{Error, Result};

pub const OUT_DIR_ENV: &str = "INNOUT_OUT_DIR";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// Boundary grid size `N`; Taylor series are truncated at `N/2`.
    #[serde(alias = "N")]
    pub n: usize,
    /// Ambient dimension `M` of the subspace model; `None` means
    /// `min(256, N/2)`.
    #[serde(alias = "M")]
    pub m: Option<usize>,
    /// Shift count `K`; `None` means `M/4`.
    #[serde(alias = "K")]
    pub k: Option<usize>,
    pub oversample: usize,
    pub residual_tol: f64,
    pub defect_tol: f64,
    pub tau: f64,
    pub log_floor: f64,
    pub seed: u64,
    pub out_dir: PathBuf,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            n: 4096,
            m: None,
            k: None,
            oversample: 4,
            residual_tol: 1e-7,
            defect_tol: 1e-7,
            tau: 1e-6,
            log_floor: 1e-9,
            seed: 7,
            out_dir: PathBuf::from("out"),
        }
    }
}

impl RunConfig {
    pub fn m(&self) -> usize {
        self.m.unwrap_or((self.n / 2).min(256))
    }

    pub fn k(&self) -> usize {
        self.k.unwrap_or((self.m() / 4).max(1))
    }

    /// Parses a key-value (TOML) file on top of the defaults.
    pub fn from_str_kv(text: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_str_kv(&text)
    }

    pub fn validate(&self) -> Result<()> {
        let pow2 = |x: usize| x >= 1 && x.is_power_of_two();
        if !pow2(self.n) || self.n < 8 {
            return Err(Error::Config(format!("N = {} must be a power of two >= 8", self.n)));
        }
        let m = self.m();
        if !pow2(m) || m > self.n / 2 {
            return Err(Error::Config(format!("M = {m} must be a power of two <= N/2 = {}", self.n / 2)));
        }
        let k = self.k();
        if k == 0 || k > m {
            return Err(Error::Config(format!("K = {k} must lie in 1..=M")));
        }
        if self.oversample == 0 {
            return Err(Error::Config("oversample must be positive".into()));
        }
        for (name, v) in [
            ("residual_tol", self.residual_tol),
            ("defect_tol", self.defect_tol),
            ("tau", self.tau),
            ("log_floor", self.log_floor),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Config(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(())
    }

    /// Same configuration with `N`, `M` (and `K`, if set) doubled.
    pub fn doubled(&self) -> Self {
        Self {
            n: self.n * 2,
            m: Some(self.m() * 2),
            k: self.k.map(|k| k * 2),
            ..self.clone()
        }
    }

    pub fn grid(&self) -> BoundaryGrid {
        BoundaryGrid::new(self.n, false).expect("validated grid size")
    }

    pub fn factor_config(&self) -> FactorConfig {
        FactorConfig {
            residual_tol: self.residual_tol,
            defect_tol: self.defect_tol,
            tau: self.tau,
            modulus_floor: self.log_floor,
            ..FactorConfig::with_grid(self.n)
        }
    }

    pub fn gap_settings(&self) -> GapSettings {
        GapSettings { shifts: self.k(), ambient: self.m(), oversample: self.oversample }
    }

    /// SHA-256 of the canonical JSON form, output directory excluded.
    pub fn hash(&self) -> String {
        let canonical = Self { out_dir: PathBuf::new(), ..self.clone() };
        let json = serde_json::to_vec(&canonical).expect("config serializes");
        Sha256::digest(&json).iter().map(|b| format!("{b:02x}")).collect()
    }
}
