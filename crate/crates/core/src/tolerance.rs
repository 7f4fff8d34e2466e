//! Numerical thresholds shared by the library, the CLI and the test suites.
//!
//! Relative thresholds are multiplied by the natural scale of the quantity
//! being tested (for the quartic that is `|u|^2 |v|^2`) and then padded by
//! [`SCALE_FLOOR`].

/// Additive floor applied to every relative comparison.
pub const SCALE_FLOOR: f64 = 1e-14;

/// A section is degenerate when `area^2 <= DEGENERATE_AREA * |u|^2 |v|^2`.
pub const DEGENERATE_AREA: f64 = 1e-12;

/// Off-class component allowed for an element treated as purely p or purely k.
pub const PURITY: f64 = 1e-10;

/// Default commuting tolerance, applied as `COMMUTING * (|u||v| + 1)`.
pub const COMMUTING: f64 = 1e-10;

/// Maximum algebra defect accepted for a subgroup tangent, relative to `|u|`.
pub const TANGENT: f64 = 1e-10;

/// Totally-geodesic threshold, applied as `TOTALLY_GEODESIC * (1 + |u| t_max)`.
pub const TOTALLY_GEODESIC: f64 = 1e-9;

/// Orthonormality of an oracle basis.
pub const BASIS_ORTHONORMAL: f64 = 1e-13;

/// Default step for central differences of the body velocity.
pub const FD_STEP: f64 = 1e-5;

/// Default number of grid points for subgroup defect sweeps.
pub const DEFAULT_GRID: usize = 64;

/// Seed and trial count used by the structure validator.
pub const VALIDATOR_SEED: u64 = 42;
pub const VALIDATOR_TRIALS: usize = 100;
pub const VALIDATOR_TOL: f64 = 1e-12;

/// `|a - b| <= tol * scale + SCALE_FLOOR`.
#[inline]
pub fn close(a: f64, b: f64, tol: f64, scale: f64) -> bool {
    (a - b).abs() <= tol * scale + SCALE_FLOOR
}

/// Relative error of `a` against `b` measured against `scale` (floored).
#[inline]
pub fn rel_err(a: f64, b: f64, scale: f64) -> f64 {
    (a - b).abs() / scale.max(SCALE_FLOOR)
}
