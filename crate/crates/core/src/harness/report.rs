//! Assertion rows and experiment reports.

use serde::{Deserialize, Serialize};

use super::RunConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    /// `measured <= bound + slack`
    #[serde(rename = "<=")]
    AtMost,
    /// `measured >= bound - slack`
    #[serde(rename = ">=")]
    AtLeast,
    /// `|measured - bound| <= slack`
    #[serde(rename = "~=")]
    Near,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Assertion {
    pub label: String,
    pub measured: f64,
    pub relation: Relation,
    pub bound: f64,
    pub slack: f64,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

impl Assertion {
    pub fn new(label: impl Into<String>, measured: f64, relation: Relation, bound: f64, slack: f64) -> Self {
        let ok = match relation {
            Relation::AtMost => measured <= bound + slack,
            Relation::AtLeast => measured >= bound - slack,
            Relation::Near => (measured - bound).abs() <= slack,
        };
        Self {
            label: label.into(),
            measured,
            relation,
            bound,
            slack,
            status: if ok { Status::Pass } else { Status::Fail },
            note: None,
        }
    }

    pub fn at_most(label: impl Into<String>, measured: f64, bound: f64, slack: f64) -> Self {
        Self::new(label, measured, Relation::AtMost, bound, slack)
    }

    pub fn at_least(label: impl Into<String>, measured: f64, bound: f64, slack: f64) -> Self {
        Self::new(label, measured, Relation::AtLeast, bound, slack)
    }

    pub fn near(label: impl Into<String>, measured: f64, target: f64, tol: f64) -> Self {
        Self::new(label, measured, Relation::Near, target, tol)
    }

    /// A boolean check recorded as `1 ~= 1`.
    pub fn holds(label: impl Into<String>, ok: bool) -> Self {
        Self::near(label, if ok { 1.0 } else { 0.0 }, 1.0, 0.0)
    }

    /// A failure that produced no measurement.
    pub fn failed(label: impl Into<String>, why: impl Into<String>) -> Self {
        Self {
            note: Some(why.into()),
            ..Self::near(label, f64::NAN, 0.0, 0.0)
        }
    }

    pub fn skipped(label: impl Into<String>, why: impl Into<String>) -> Self {
        Self {
            label: label.into(),
            measured: f64::NAN,
            relation: Relation::Near,
            bound: f64::NAN,
            slack: 0.0,
            status: Status::Skipped,
            note: Some(why.into()),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: String,
    /// `"config"` or `"doubled"`.
    pub scale: String,
    pub n: usize,
    pub m: usize,
    pub status: Status,
    pub assertions: Vec<Assertion>,
}

impl CriterionResult {
    pub fn new(id: u8, name: &str, scale: &str, cfg: &RunConfig, assertions: Vec<Assertion>) -> Self {
        let status = if assertions.iter().any(|a| a.status == Status::Fail) {
            Status::Fail
        } else if !assertions.is_empty() && assertions.iter().all(|a| a.status == Status::Skipped) {
            Status::Skipped
        } else {
            Status::Pass
        };
        Self {
            id,
            name: name.to_string(),
            scale: scale.to_string(),
            n: cfg.n,
            m: cfg.m(),
            status,
            assertions,
        }
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }

    /// One line: `criterion 3 [config N=4096 M=256] gap bound ... PASS (52/52)`.
    pub fn summary_line(&self) -> String {
        let ok = self.assertions.iter().filter(|a| a.status == Status::Pass).count();
        let verdict = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIPPED (under-resolved)",
        };
        format!(
            "criterion {:>2} [{} N={} M={}] {}: {} ({}/{} assertions)",
            self.id,
            self.scale,
            self.n,
            self.m,
            self.name,
            verdict,
            ok,
            self.assertions.len()
        )
    }

    pub fn failures(&self) -> impl Iterator<Item = &Assertion> {
        self.assertions.iter().filter(|a| a.status == Status::Fail)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub experiment: String,
    pub config: RunConfig,
    pub config_hash: String,
    pub passed: bool,
    pub assertions: Vec<Assertion>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub criteria: Vec<CriterionResult>,
    pub artifacts: Vec<String>,
    pub wall_time_s: f64,
}

impl ExperimentReport {
    pub fn new(experiment: &str, config: &RunConfig) -> Self {
        Self {
            experiment: experiment.to_string(),
            config: config.clone(),
            config_hash: config.hash(),
            passed: true,
            assertions: Vec::new(),
            criteria: Vec::new(),
            artifacts: Vec::new(),
            wall_time_s: 0.0,
        }
    }

    pub fn push(&mut self, a: Assertion) {
        self.passed &= a.passed();
        self.assertions.push(a);
    }

    pub fn push_criterion(&mut self, c: CriterionResult) {
        self.passed &= c.passed();
        self.criteria.push(c);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relations() {
        assert!(Assertion::at_most("a", 1.0, 0.5, 0.5).passed());
        assert!(!Assertion::at_most("a", 1.0 + 1e-9, 0.5, 0.5).passed());
        assert!(Assertion::near("b", 2.0 + 1e-7, 2.0, 1e-6).passed());
        assert!(!Assertion::near("b", f64::NAN, 2.0, 1e-6).passed());
        assert!(Assertion::at_least("c", 0.3, 0.5, 0.2).passed());
        assert!(Assertion::skipped("d", "under-resolved").passed());
        assert!(!Assertion::failed("e", "boom").passed());
    }

    #[test]
    fn criterion_status() {
        let cfg = RunConfig::default();
        let c = CriterionResult::new(1, "x", "config", &cfg, vec![Assertion::holds("ok", true)]);
        assert_eq!(c.status, Status::Pass);
        assert!(c.summary_line().contains("PASS"));
        let c = CriterionResult::new(1, "x", "config", &cfg, vec![Assertion::skipped("s", "n")]);
        assert_eq!(c.status, Status::Skipped);
        let c = CriterionResult::new(1, "x", "config", &cfg, vec![Assertion::holds("no", false)]);
        assert!(!c.passed());
    }
}
