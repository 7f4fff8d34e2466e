use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix exponential overflowed")]
    Overflow,

    #[error("input is neither in p nor in k (off-class component {off_class:.3e} > {threshold:.3e})")]
    NotPureType { off_class: f64, threshold: f64 },

    #[error("degenerate section: area^2 = {area_sq:.3e} <= {threshold:.3e}")]
    DegenerateSection { area_sq: f64, threshold: f64 },

    #[error("pair does not commute: |[u,v]| = {bracket_norm:.3e} > {threshold:.3e}")]
    NotCommuting { bracket_norm: f64, threshold: f64 },

    #[error("basis has {found} elements, algebra has real dimension {expected}")]
    IncompleteBasis { expected: usize, found: usize },

    #[error("basis is not orthonormal (max Gram defect {defect:.3e})")]
    NotOrthonormal { defect: f64 },

    #[error("tangent is not in the subgroup algebra (defect {defect:.3e} > {threshold:.3e})")]
    TangentNotInAlgebra { defect: f64, threshold: f64 },

    #[error("unknown group `{0}`")]
    UnknownGroup(String),

    #[error("unknown structure `{0}`")]
    UnknownStructure(String),

    #[error("operation requires a real matrix")]
    RealFieldRequired,

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),
}
