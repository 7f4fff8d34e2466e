//! Left-invariant Riemannian geometry on matrix Lie groups.
//!
//! The metric is `B_θ(X, Y) = -B(X, θY)` at the identity, transported by left
//! translation. For `GL(n, R)` this is the Frobenius inner product and for
//! `GL(n, C)` its real part. The crate provides:
//!
//! - [`algebra`]: dense real/complex matrices, the bracket, the inner
//!   product, the matrix exponential and seeded sampling;
//! - [`cartan`]: the involution, the invariant form, the `k ⊕ p` split and a
//!   validator for user-supplied structures;
//! - [`curvature`]: the connection, the curvature tensor and sectional
//!   curvature, with the closed-form special cases;
//! - [`geodesic`]: closed-form geodesics, residual checks and
//!   totally-geodesic subgroup sweeps;
//! - [`oracle`]: definitional reference computations for cross-checking.
//!
//! ```
//! use liecurv_core::{sectional, CartanStructure, Matrix};
//!
//! let s = CartanStructure::gl_real(3);
//! let u = Matrix::real_rows([[0.0, 1.0, 0.0], [-1.0, 0.0, 0.0], [0.0, 0.0, 0.0]]);
//! let v = Matrix::real_rows([[0.0, 0.0, 1.0], [0.0, 0.0, 0.0], [-1.0, 0.0, 0.0]]);
//! let report = sectional(&s, &u, &v).unwrap();
//! assert!((report.sectional - 0.125).abs() < 1e-15);
//! ```

pub mod algebra;
pub mod cartan;
pub mod curvature;
pub mod error;
pub mod geodesic;
pub mod oracle;
pub mod tolerance;

pub use algebra::{bracket, frobenius_inner, matrix_exp, random_element, Field, Matrix, Sampler, Seed};
pub use cartan::{validate, validate_with, AxiomCheck, CartanStructure, ThetaSplit, ValidationReport};
pub use curvature::{
    bracket_norm_identity_gap, classify, curvature_tensor, nabla, nabla_case, quartic, quartic_commuting,
    quartic_special, quartic_terms, sectional, Class, NablaCase, SectionReport, SpecialCase,
};
pub use error::{Error, Result};
pub use geodesic::{
    builtin_subgroup, geodesic_body_velocity, geodesic_point, geodesic_residual, geodesic_trace,
    totally_geodesic_check, GeodesicSample, SubgroupSpec, TotallyGeodesicReport,
};
pub use oracle::{commuting_pair, commuting_pair_in, nabla_from_metric, quartic_from_definition, OrthonormalBasis};
