//! Levi-Civita connection and curvature of the left-invariant metric `B_θ`.
//!
//! Left-invariant fields are identified with algebra elements, so the
//! connection is the bilinear map `∇_u v = ½([u,v] - [u,θv] - [v,θu])` and the
//! curvature tensor is evaluated from it by the usual definition.
//!
//! [`quartic`] always evaluates the general closed form
//!
//! ```text
//! <R(u,v)v, u> = -2|[u1,v1]|^2 + ¼|[u,v]|^2 + 2<[u1,v1], [u2,v2]>
//! ```
//!
//! with `u1, v1` the p-parts and `u2, v2` the k-parts. The special-case
//! formulas ([`quartic_special`], [`quartic_commuting`]) exist to be checked
//! against it.

use std::fmt;

use serde::Serialize;

use crate::algebra::{commutator, Matrix};
use crate::cartan::CartanStructure;
use crate::error::{Error, Result};
use crate::tolerance;

/// Eigenspace an element lies in, p (θ = -1) or k (θ = +1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Class {
    P,
    K,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum NablaCase {
    #[serde(rename = "p,p")]
    PP,
    #[serde(rename = "k,k")]
    KK,
    #[serde(rename = "p,k")]
    PK,
    #[serde(rename = "k,p")]
    KP,
}

impl NablaCase {
    /// Coefficient `c` in `∇_u v = c [u, v]`.
    pub fn coefficient(self) -> f64 {
        match self {
            NablaCase::PP | NablaCase::KK => 0.5,
            NablaCase::PK => -0.5,
            NablaCase::KP => 1.5,
        }
    }
}

/// Which special-case formula applies to a pair with `v` pure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SpecialCase {
    /// `u, v ∈ p`: `-7/4 |[u,v]|^2`.
    #[serde(rename = "p,p")]
    PP,
    /// `u, v ∈ k`: `¼ |[u,v]|^2`.
    #[serde(rename = "k,k")]
    KK,
    /// `u ∈ p, v ∈ k`: `¼ |[u,v]|^2`.
    #[serde(rename = "p,k")]
    PK,
    /// `u` arbitrary, `v ∈ k`: `¼ |[u,v]|^2`.
    #[serde(rename = "g,k")]
    GK,
    /// `u` arbitrary, `v ∈ p`: `-7/4 |[u1,v]|^2 + ¼ |[u2,v]|^2`.
    #[serde(rename = "g,p")]
    GP,
}

impl SpecialCase {
    pub fn tag(self) -> &'static str {
        match self {
            SpecialCase::PP => "p,p",
            SpecialCase::KK => "k,k",
            SpecialCase::PK => "p,k",
            SpecialCase::GK => "g,k",
            SpecialCase::GP => "g,p",
        }
    }
}

impl fmt::Display for SpecialCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Curvature data for the 2-plane spanned by `u` and `v`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SectionReport {
    /// `<R(u,v)v, u>`.
    pub quartic: f64,
    /// `<u,u><v,v> - <u,v>^2`.
    pub area_sq: f64,
    pub sectional: f64,
    /// `-2 |[u1,v1]|^2`.
    pub term_pp: f64,
    /// `¼ |[u,v]|^2`.
    pub term_mixed: f64,
    /// `2 <[u1,v1], [u2,v2]>`.
    pub term_cross: f64,
}

fn check_pair(s: &CartanStructure, u: &Matrix, v: &Matrix) -> Result<()> {
    s.check(u)?;
    s.check(v)
}

pub(crate) fn nabla_unchecked(s: &CartanStructure, u: &Matrix, v: &Matrix) -> Matrix {
    let a = commutator(u, v);
    let b = commutator(u, &s.theta(v));
    let c = commutator(v, &s.theta(u));
    (&(&a - &b) - &c).scale(0.5)
}

/// Covariant derivative `∇_u v = ½([u,v] - [u,θv] - [v,θu])`.
pub fn nabla(s: &CartanStructure, u: &Matrix, v: &Matrix) -> Result<Matrix> {
    check_pair(s, u, v)?;
    Ok(nabla_unchecked(s, u, v))
}

/// Classifies `u` as purely p or purely k. The off-class component may be at
/// most [`tolerance::PURITY`] times `|u|`; zero counts as p.
pub fn classify(s: &CartanStructure, u: &Matrix) -> Result<Class> {
    s.check(u)?;
    let split = s.split_unchecked(u);
    let threshold = tolerance::PURITY * s.norm(u);
    let (np, nk) = (s.norm(&split.p_part), s.norm(&split.k_part));
    if nk <= threshold {
        Ok(Class::P)
    } else if np <= threshold {
        Ok(Class::K)
    } else {
        Err(Error::NotPureType {
            off_class: np.min(nk),
            threshold,
        })
    }
}

/// Piecewise connection for pure inputs: `c [u,v]` with `c` one of ½, -½, 3/2.
pub fn nabla_case(s: &CartanStructure, u: &Matrix, v: &Matrix) -> Result<(Matrix, NablaCase)> {
    let case = match (classify(s, u)?, classify(s, v)?) {
        (Class::P, Class::P) => NablaCase::PP,
        (Class::K, Class::K) => NablaCase::KK,
        (Class::P, Class::K) => NablaCase::PK,
        (Class::K, Class::P) => NablaCase::KP,
    };
    Ok((commutator(u, v).scale(case.coefficient()), case))
}

pub(crate) fn curvature_unchecked(s: &CartanStructure, u: &Matrix, v: &Matrix, w: &Matrix) -> Matrix {
    let vw = nabla_unchecked(s, v, w);
    let uw = nabla_unchecked(s, u, w);
    let first = nabla_unchecked(s, u, &vw);
    let second = nabla_unchecked(s, v, &uw);
    let third = nabla_unchecked(s, &commutator(u, v), w);
    &(&first - &second) - &third
}

/// `R(u,v)w = ∇_u ∇_v w - ∇_v ∇_u w - ∇_[u,v] w`.
pub fn curvature_tensor(s: &CartanStructure, u: &Matrix, v: &Matrix, w: &Matrix) -> Result<Matrix> {
    check_pair(s, u, v)?;
    s.check(w)?;
    Ok(curvature_unchecked(s, u, v, w))
}

/// The three terms of the general formula, in the order
/// `(term_pp, term_mixed, term_cross)`.
pub fn quartic_terms(s: &CartanStructure, u: &Matrix, v: &Matrix) -> Result<(f64, f64, f64)> {
    check_pair(s, u, v)?;
    let su = s.split_unchecked(u);
    let sv = s.split_unchecked(v);
    let pp = commutator(&su.p_part, &sv.p_part);
    let kk = commutator(&su.k_part, &sv.k_part);
    let full = commutator(u, v);
    Ok((
        -2.0 * s.norm_sq(&pp),
        0.25 * s.norm_sq(&full),
        2.0 * s.inner(&pp, &kk),
    ))
}

/// `<R(u,v)v, u>` by the general closed form.
pub fn quartic(s: &CartanStructure, u: &Matrix, v: &Matrix) -> Result<f64> {
    let (a, b, c) = quartic_terms(s, u, v)?;
    Ok(a + b + c)
}

/// Full evaluation of the section spanned by `u` and `v`.
pub fn sectional(s: &CartanStructure, u: &Matrix, v: &Matrix) -> Result<SectionReport> {
    let (term_pp, term_mixed, term_cross) = quartic_terms(s, u, v)?;
    let (uu, vv, uv) = (s.norm_sq(u), s.norm_sq(v), s.inner(u, v));
    let area_sq = uu * vv - uv * uv;
    let threshold = tolerance::DEGENERATE_AREA * uu * vv;
    if area_sq <= threshold {
        return Err(Error::DegenerateSection { area_sq, threshold });
    }
    let quartic = term_pp + term_mixed + term_cross;
    Ok(SectionReport {
        quartic,
        area_sq,
        sectional: quartic / area_sq,
        term_pp,
        term_mixed,
        term_cross,
    })
}

/// Evaluates the special-case theorem selected by the class of `v` (and of
/// `u` when it is pure too).
pub fn quartic_special(s: &CartanStructure, u: &Matrix, v: &Matrix) -> Result<(f64, SpecialCase)> {
    s.check(u)?;
    let v_class = classify(s, v)?;
    let u_class = classify(s, u).ok();
    let uv_sq = || s.norm_sq(&commutator(u, v));
    Ok(match (u_class, v_class) {
        (Some(Class::P), Class::P) => (-1.75 * uv_sq(), SpecialCase::PP),
        (Some(Class::K), Class::K) => (0.25 * uv_sq(), SpecialCase::KK),
        (Some(Class::P), Class::K) => (0.25 * uv_sq(), SpecialCase::PK),
        (_, Class::K) => (0.25 * uv_sq(), SpecialCase::GK),
        (_, Class::P) => {
            let su = s.split_unchecked(u);
            let a = s.norm_sq(&commutator(&su.p_part, v));
            let b = s.norm_sq(&commutator(&su.k_part, v));
            (-1.75 * a + 0.25 * b, SpecialCase::GP)
        }
    })
}

/// Commuting threshold `tol * (|u||v| + 1)`.
pub fn commuting_threshold(s: &CartanStructure, u: &Matrix, v: &Matrix, tol: f64) -> f64 {
    tol * (s.norm(u) * s.norm(v) + 1.0)
}

/// For commuting `u, v`: `<R(u,v)v, u> = -4 |[u1,v1]|^2`.
pub fn quartic_commuting(s: &CartanStructure, u: &Matrix, v: &Matrix, tol: f64) -> Result<f64> {
    check_pair(s, u, v)?;
    let bracket_norm = s.norm(&commutator(u, v));
    let threshold = commuting_threshold(s, u, v, tol);
    if bracket_norm > threshold {
        return Err(Error::NotCommuting {
            bracket_norm,
            threshold,
        });
    }
    let su = s.split_unchecked(u);
    let sv = s.split_unchecked(v);
    Ok(-4.0 * s.norm_sq(&commutator(&su.p_part, &sv.p_part)))
}

/// `|[u,v]|^2 - (|[u,v1]|^2 + |[u,v2]|^2 - 2<[v1,v2], [u1,u2]>)`.
pub fn bracket_norm_identity_gap(s: &CartanStructure, u: &Matrix, v: &Matrix) -> Result<f64> {
    check_pair(s, u, v)?;
    let su = s.split_unchecked(u);
    let sv = s.split_unchecked(v);
    let lhs = s.norm_sq(&commutator(u, v));
    let rhs = s.norm_sq(&commutator(u, &sv.p_part)) + s.norm_sq(&commutator(u, &sv.k_part))
        - 2.0
            * s.inner(
                &commutator(&sv.p_part, &sv.k_part),
                &commutator(&su.p_part, &su.k_part),
            );
    Ok(lhs - rhs)
}
