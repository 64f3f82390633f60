use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("non-finite value {value} at sample angle {angle}")]
    Evaluation { angle: f64, value: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("numerically zero function (all coefficients <= {tol:e})")]
    NumericallyZero { tol: f64 },

    #[error(
        "not boundary-invertible at grid resolution: min modulus {min_modulus:e} below floor {floor:e}"
    )]
    NotBoundaryInvertible { min_modulus: f64, floor: f64 },

    #[error("inner part not analytic at resolution: negative-frequency residual {residual:e} > {tol:e}")]
    NotAnalytic { residual: f64, tol: f64 },

    #[error("normalization coefficient of the inner part vanishes ({modulus:e})")]
    NormalizationTie { modulus: f64 },

    #[error("root finder did not converge after {iterations} iterations (residual {residual:e})")]
    RootFinder { iterations: usize, residual: f64 },

    #[error("rank deficiency at shift index {shift} (relative pivot {pivot:e})")]
    RankDeficient { shift: usize, pivot: f64 },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("cross-section formula inapplicable (n0 > 0): |p1(0)| = {value:e}")]
    CrossSectionInapplicable { value: f64 },

    #[error("parse error at position {position}: expected {expected}\n  {input}\n  {caret}")]
    Parse {
        position: usize,
        expected: String,
        input: String,
        caret: String,
    },

    #[error("numeric tolerance failure: {0}")]
    Tolerance(String),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Serialization(String),
}

/// Coarse classification used for exit codes and machine-readable errors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Precondition,
    Numeric,
    Io,
}

impl Error {
    pub fn parse(input: &str, position: usize, expected: impl Into<String>) -> Self {
        let position = position.min(input.len());
        let caret = format!("{}^", " ".repeat(input[..position].chars().count()));
        Error::Parse {
            position,
            expected: expected.into(),
            input: input.to_string(),
            caret,
        }
    }

    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Config(_)
            | Error::Domain(_)
            | Error::Precondition(_)
            | Error::NumericallyZero { .. }
            | Error::NotBoundaryInvertible { .. }
            | Error::DimensionMismatch { .. }
            | Error::CrossSectionInapplicable { .. }
            | Error::Parse { .. } => ErrorClass::Precondition,
            Error::Evaluation { .. }
            | Error::NotAnalytic { .. }
            | Error::NormalizationTie { .. }
            | Error::RootFinder { .. }
            | Error::RankDeficient { .. }
            | Error::Tolerance(_) => ErrorClass::Numeric,
            Error::Io(_) | Error::Serialization(_) => ErrorClass::Io,
        }
    }

    /// Short stable identifier for machine-readable error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Config(_) => "config",
            Error::Evaluation { .. } => "evaluation",
            Error::Domain(_) => "domain",
            Error::Precondition(_) => "precondition",
            Error::NumericallyZero { .. } => "numerically_zero",
            Error::NotBoundaryInvertible { .. } => "not_boundary_invertible",
            Error::NotAnalytic { .. } => "not_analytic",
            Error::NormalizationTie { .. } => "normalization_tie",
            Error::RootFinder { .. } => "root_finder",
            Error::RankDeficient { .. } => "rank_deficient",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::CrossSectionInapplicable { .. } => "cross_section_inapplicable",
            Error::Parse { .. } => "parse",
            Error::Tolerance(_) => "tolerance",
            Error::Io(_) => "io",
            Error::Serialization(_) => "serialization",
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Serialization(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Serialization(e.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_error_places_caret() {
        let e = Error::parse("example24@[", 11, "number");
        let msg = e.to_string();
        assert!(msg.contains("position 11"));
        assert!(msg.lines().last().unwrap().trim_start().starts_with('^'));
        assert_eq!(e.class(), ErrorClass::Precondition);
    }
}
