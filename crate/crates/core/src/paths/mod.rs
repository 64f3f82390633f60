//! Explicit families `t ↦ f_t`, polygonal-path geometry and the continuity
//! profiler.

mod assembly;
mod family;
mod geometry;
mod profile;
mod symbol;

pub use assembly::{
    assemble_shifted_path, boundary_modulus_inf, break_mismatch, bridge_path, default_shift_eps, gamma_path,
};
pub use family::{family_eval, mobius_homotopy, PathFamily};
pub use geometry::{exact_avoids_origin, exact_point_on_segment, shift_direction, PolygonalPath, ShiftResult};
pub use profile::{
    inequality_chain_check, profile_continuity, ChainReport, ChainRow, ContinuityProfile, ProfileBackend,
    ProfileMode, ProfileRow, CHAIN_SLACK,
};
pub use symbol::Symbol;
