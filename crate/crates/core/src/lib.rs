//! Numerical laboratory for inner-outer factorization on the unit disk.
//!
//! The crate is organised bottom-up:
//!
//! * [`boundary`] represents analytic symbols by truncated Taylor series and
//!   their boundary traces by samples on a uniform circle grid, and bridges
//!   the two with the FFT.
//! * [`factor`] computes `f = u·F` twice: from the boundary modulus
//!   (Herglotz/outer reconstruction) and, for polynomials, from the zeros.
//! * [`subspace`] models the shift-invariant subspaces `fH²` by finite
//!   truncations and measures gaps and maximal angles between them.
//! * [`paths`] holds the explicit one-parameter families, the Möbius
//!   homotopies, the polygonal-shift geometry and the continuity profiler.
//! * [`harness`] packages everything into reproducible experiments: run
//!   configuration, spec grammars, CSV/JSON output and the acceptance checks.

pub mod boundary;
pub mod error;
pub mod factor;
pub mod harness;
pub mod paths;
pub mod subspace;

pub use num_complex::Complex64;

pub use error::{Error, ErrorClass, Result};
