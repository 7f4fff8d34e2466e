//! Geodesics of the left-invariant Frobenius metric on `GL(n, R)` and the
//! totally-geodesic property of closed transpose-invariant subgroups.
//!
//! The geodesic through the identity with initial velocity `u` is
//! `γ(t) = exp(t u^T) exp(t (u - u^T))`. Its body velocity `ω = γ⁻¹γ'` is
//! `e^{-ts} u^T e^{ts} + s` with `s = u - u^T`, and a curve is a geodesic
//! exactly when `ω' + ∇_ω ω = 0`; [`geodesic_residual`] measures that.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{matrix_exp, Field, Matrix};
use crate::cartan::CartanStructure;
use crate::curvature::nabla_unchecked;
use crate::error::{Error, Result};
use crate::tolerance;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GeodesicSample {
    pub t: f64,
    pub gamma: Matrix,
    /// Body velocity `γ(t)⁻¹ γ'(t)`.
    pub omega: Matrix,
    /// `|ω'(t) + ∇_ω ω|`.
    pub residual: f64,
}

fn require_real(u: &Matrix) -> Result<()> {
    if u.field() != Field::Real {
        return Err(Error::RealFieldRequired);
    }
    Ok(())
}

/// `exp(t u^T) exp(t (u - u^T))`.
pub fn geodesic_point(u: &Matrix, t: f64) -> Result<Matrix> {
    require_real(u)?;
    let skew = u - &u.transpose();
    Ok(matrix_exp(&u.transpose().scale(t))? * matrix_exp(&skew.scale(t))?)
}

/// `γ(t)⁻¹ γ'(t) = e^{-ts} u^T e^{ts} + s` with `s = u - u^T`.
pub fn geodesic_body_velocity(u: &Matrix, t: f64) -> Result<Matrix> {
    require_real(u)?;
    let skew = u - &u.transpose();
    let fwd = matrix_exp(&skew.scale(t))?;
    let back = matrix_exp(&skew.scale(-t))?;
    Ok(&(&back * &(&u.transpose() * &fwd)) + &skew)
}

/// `|ω'(t) + ∇_ω ω|` with `ω'` from a central difference of step `h`.
pub fn geodesic_residual(s: &CartanStructure, u: &Matrix, t: f64, h: f64) -> Result<f64> {
    s.check(u)?;
    require_real(u)?;
    residual_from(s, |t| geodesic_body_velocity(u, t), t, h)
}

fn residual_from(
    s: &CartanStructure,
    omega: impl Fn(f64) -> Result<Matrix>,
    t: f64,
    h: f64,
) -> Result<f64> {
    assert!(h > 0.0, "finite-difference step must be positive");
    let d = (&omega(t + h)? - &omega(t - h)?).scale(0.5 / h);
    let w = omega(t)?;
    let acc = &d + &nabla_unchecked(s, &w, &w);
    Ok(s.norm(&acc))
}

/// Samples `γ`, `ω` and the residual on `steps` evenly spaced times in
/// `[0, t_max]`.
pub fn geodesic_trace(
    s: &CartanStructure,
    u: &Matrix,
    t_max: f64,
    steps: usize,
    h: f64,
) -> Result<Vec<GeodesicSample>> {
    s.check(u)?;
    require_real(u)?;
    grid(t_max, steps)
        .map(|t| {
            Ok(GeodesicSample {
                t,
                gamma: geodesic_point(u, t)?,
                omega: geodesic_body_velocity(u, t)?,
                residual: geodesic_residual(s, u, t, h)?,
            })
        })
        .collect()
}

fn grid(t_max: f64, steps: usize) -> impl Iterator<Item = f64> {
    let steps = steps.max(2);
    (0..steps).map(move |i| t_max * i as f64 / (steps - 1) as f64)
}

/// Generalization `exp(-tθu) exp(t(u + θu))` to an arbitrary reductive
/// structure. It reduces to the `GL(n, R)` formula for `θ = -transpose`, but
/// is only certified numerically through its residual.
pub mod experimental {
    use super::*;

    pub fn geodesic_point_general(s: &CartanStructure, u: &Matrix, t: f64) -> Result<Matrix> {
        s.check(u)?;
        let tu = s.theta(u);
        Ok(matrix_exp(&tu.scale(-t))? * matrix_exp(&(u + &tu).scale(t))?)
    }

    pub fn body_velocity_general(s: &CartanStructure, u: &Matrix, t: f64) -> Result<Matrix> {
        s.check(u)?;
        let tu = s.theta(u);
        let b = u + &tu;
        let fwd = matrix_exp(&b.scale(t))?;
        let back = matrix_exp(&b.scale(-t))?;
        Ok(&(&back * &(&(-&tu) * &fwd)) + &b)
    }

    pub fn geodesic_residual_general(s: &CartanStructure, u: &Matrix, t: f64, h: f64) -> Result<f64> {
        s.check(u)?;
        residual_from(s, |t| body_velocity_general(s, u, t), t, h)
    }
}

pub type DefectFn = Arc<dyn Fn(&Matrix) -> f64 + Send + Sync>;
pub type ProjectFn = Arc<dyn Fn(&Matrix) -> Matrix + Send + Sync>;

/// A closed subgroup `H` of `GL(n, R)`, described by defect functions that
/// vanish exactly on `H` and on its Lie algebra.
#[derive(Clone)]
pub struct SubgroupSpec {
    pub name: String,
    pub n: usize,
    pub group_defect: DefectFn,
    pub algebra_defect: DefectFn,
    /// Maps an arbitrary matrix into the subgroup algebra; used to draw tangents.
    pub to_algebra: ProjectFn,
    pub transpose_invariant: bool,
}

impl fmt::Debug for SubgroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SubgroupSpec")
            .field("name", &self.name)
            .field("n", &self.n)
            .field("transpose_invariant", &self.transpose_invariant)
            .finish_non_exhaustive()
    }
}

fn lower_max(m: &Matrix) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..m.n() {
        for j in 0..i {
            worst = worst.max(m.get(i, j).norm());
        }
    }
    worst
}

fn upper_part(m: &Matrix) -> Matrix {
    let n = m.n();
    let entries: Vec<f64> = (0..n * n)
        .map(|k| if k / n <= k % n { m.re(k / n, k % n) } else { 0.0 })
        .collect();
    Matrix::from_real(n, &entries).expect("finite input")
}

impl SubgroupSpec {
    /// `SO(n)`: `|g^T g - I|`, algebra of skew matrices.
    pub fn special_orthogonal(n: usize) -> Self {
        SubgroupSpec {
            name: format!("SO({n})"),
            n,
            group_defect: Arc::new(move |g| (&(g.transpose() * g) - &Matrix::identity(n, Field::Real)).norm()),
            algebra_defect: Arc::new(|u| (u + &u.transpose()).norm()),
            to_algebra: Arc::new(|a| (a - &a.transpose()).scale(0.5)),
            transpose_invariant: true,
        }
    }

    /// `SL(n)`: `|det g - 1|`, traceless algebra.
    pub fn special_linear(n: usize) -> Self {
        SubgroupSpec {
            name: format!("SL({n})"),
            n,
            group_defect: Arc::new(|g| (g.determinant().re - 1.0).abs()),
            algebra_defect: Arc::new(|u| u.trace().norm()),
            to_algebra: Arc::new(move |a| {
                let shift = a.trace().re / n as f64;
                a - &Matrix::identity(n, Field::Real).scale(shift)
            }),
            transpose_invariant: true,
        }
    }

    /// `O(p, q)`: `|g^T η g - η|` with `η = diag(+1 (p times), -1 (q times))`.
    pub fn indefinite_orthogonal(p: usize, q: usize) -> Self {
        let n = p + q;
        let signs: Vec<f64> = (0..n).map(|i| if i < p { 1.0 } else { -1.0 }).collect();
        let eta = Matrix::diag(&signs);
        let (e1, e2, e3) = (eta.clone(), eta.clone(), eta);
        SubgroupSpec {
            name: format!("O({p},{q})"),
            n,
            group_defect: Arc::new(move |g| (&(g.transpose() * &e1 * g) - &e1).norm()),
            algebra_defect: Arc::new(move |u| (&(u.transpose() * &e2) + &(&e2 * u)).norm()),
            // η X is in o(p,q) for any skew X.
            to_algebra: Arc::new(move |a| &e3 * &(a - &a.transpose()).scale(0.5)),
            transpose_invariant: true,
        }
    }

    /// Upper-triangular invertible matrices. Closed but not
    /// transpose-invariant; the negative control.
    pub fn upper_triangular(n: usize) -> Self {
        SubgroupSpec {
            name: format!("UT({n})"),
            n,
            group_defect: Arc::new(lower_max),
            algebra_defect: Arc::new(lower_max),
            to_algebra: Arc::new(upper_part),
            transpose_invariant: false,
        }
    }

    /// Parses `so:<n>`, `sl:<n>`, `opq:<p>,<q>` or `ut:<n>`.
    pub fn parse(selector: &str) -> Result<Self> {
        let unknown = || Error::UnknownGroup(selector.to_string());
        let (kind, rest) = selector.trim().split_once(':').ok_or_else(unknown)?;
        let dims = rest
            .split(',')
            .map(|d| d.trim().parse::<usize>().map_err(|_| unknown()))
            .collect::<Result<Vec<_>>>()?;
        builtin_subgroup(kind, &dims)
    }
}

/// Builds one of the built-in subgroups: `SO`, `SL` and `UT` take `[n]`,
/// `O(p,q)` takes `[p, q]`.
pub fn builtin_subgroup(name: &str, dims: &[usize]) -> Result<SubgroupSpec> {
    let unknown = || Error::UnknownGroup(format!("{name}{dims:?}"));
    let key = name.to_ascii_lowercase().replace(['(', ')', ','], "");
    match (key.as_str(), dims) {
        ("so", &[n]) if n >= 1 => Ok(SubgroupSpec::special_orthogonal(n)),
        ("sl", &[n]) if n >= 1 => Ok(SubgroupSpec::special_linear(n)),
        ("ut", &[n]) if n >= 1 => Ok(SubgroupSpec::upper_triangular(n)),
        ("opq", &[p, q]) if p + q >= 1 => Ok(SubgroupSpec::indefinite_orthogonal(p, q)),
        _ => Err(unknown()),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TotallyGeodesicReport {
    pub subgroup: String,
    pub transpose_invariant: bool,
    pub max_defect: f64,
    pub t_at_max: f64,
    pub threshold: f64,
    pub samples: usize,
    pub passed: bool,
}

/// Follows the geodesic tangent to `u` on a grid of `steps` points in
/// `[0, t_max]` and reports the largest group defect along it.
pub fn totally_geodesic_check(
    spec: &SubgroupSpec,
    u: &Matrix,
    t_max: f64,
    steps: usize,
) -> Result<TotallyGeodesicReport> {
    require_real(u)?;
    if u.n() != spec.n {
        return Err(Error::DimensionMismatch(format!(
            "{} needs {}x{} tangents, got {}x{}",
            spec.name,
            spec.n,
            spec.n,
            u.n(),
            u.n()
        )));
    }
    let norm = u.norm();
    let defect = (spec.algebra_defect)(u);
    let tangent_threshold = tolerance::TANGENT * norm;
    if defect > tangent_threshold {
        return Err(Error::TangentNotInAlgebra {
            defect,
            threshold: tangent_threshold,
        });
    }
    let mut max_defect = 0.0f64;
    let mut t_at_max = 0.0;
    let mut samples = 0;
    for t in grid(t_max, steps) {
        let d = (spec.group_defect)(&geodesic_point(u, t)?);
        samples += 1;
        if d > max_defect {
            max_defect = d;
            t_at_max = t;
        }
    }
    let threshold = tolerance::TOTALLY_GEODESIC * (1.0 + norm * t_max);
    Ok(TotallyGeodesicReport {
        subgroup: spec.name.clone(),
        transpose_invariant: spec.transpose_invariant,
        max_defect,
        t_at_max,
        threshold,
        samples,
        passed: max_defect <= threshold,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{random_element, Sampler, Seed};

    #[test]
    fn point_at_zero_is_identity() {
        let u = random_element(Seed(1), 3, Field::Real);
        assert_eq!(geodesic_point(&u, 0.0).unwrap(), Matrix::identity(3, Field::Real));
    }

    #[test]
    fn symmetric_tangent_is_one_parameter_group() {
        let a = random_element(Seed(2), 3, Field::Real);
        let sym = (&a + &a.transpose()).scale(0.5);
        for t in [0.3, 1.0, 1.9] {
            let g = geodesic_point(&sym, t).unwrap();
            let e = matrix_exp(&sym.scale(t)).unwrap();
            assert!((g - e).max_abs() < 1e-13);
            assert!((geodesic_body_velocity(&sym, t).unwrap() - &sym).max_abs() < 1e-15);
        }
    }

    #[test]
    fn skew_tangent_stays_orthogonal() {
        let a = random_element(Seed(3), 3, Field::Real);
        let skew = (&a - &a.transpose()).scale(0.5);
        for t in [0.5, 1.0, 2.0] {
            let g = geodesic_point(&skew, t).unwrap();
            let e = matrix_exp(&skew.scale(t)).unwrap();
            assert!((&g - &e).max_abs() < 1e-13);
            let gtg = g.transpose() * &g;
            assert!((gtg - Matrix::identity(3, Field::Real)).norm() < 1e-12);
        }
    }

    #[test]
    fn body_velocity_at_zero_is_tangent() {
        let u = random_element(Seed(4), 4, Field::Real);
        assert!((geodesic_body_velocity(&u, 0.0).unwrap() - &u).max_abs() < 1e-15);
    }

    #[test]
    fn body_velocity_matches_finite_difference() {
        let u = random_element(Seed(5), 3, Field::Real);
        let (t, h) = (0.7, 1e-5);
        let g = geodesic_point(&u, t).unwrap();
        let dg = (geodesic_point(&u, t + h).unwrap() - geodesic_point(&u, t - h).unwrap()).scale(0.5 / h);
        let fd = g.try_inverse().unwrap() * dg;
        let analytic = geodesic_body_velocity(&u, t).unwrap();
        assert!((fd - analytic).max_abs() < 1e-6);
    }

    #[test]
    fn residual_examples() {
        let s = CartanStructure::gl_real(3);
        let a = random_element(Seed(6), 3, Field::Real);
        let sym = (&a + &a.transpose()).scale(0.5);
        let skew = (&a - &a.transpose()).scale(0.5);
        assert!(geodesic_residual(&s, &sym, 1.0, 1e-5).unwrap() <= 1e-9);
        assert!(geodesic_residual(&s, &skew, 1.0, 1e-5).unwrap() <= 1e-8);
        assert!(geodesic_residual(&s, &a, 1.0, 1e-5).unwrap() <= 1e-6);
    }

    #[test]
    fn residual_detects_non_geodesic() {
        // The one-parameter subgroup exp(tu) is not a geodesic for non-normal u.
        let s = CartanStructure::gl_real(2);
        let u = Matrix::real_rows([[0.0, 1.0], [0.0, 0.0]]);
        let omega_fake = |_t: f64| Ok(u.clone());
        let r = residual_from(&s, omega_fake, 0.5, 1e-5).unwrap();
        assert!(r > 0.1, "{r}");
    }

    #[test]
    fn complex_tangent_rejected() {
        let u = random_element(Seed(7), 2, Field::Complex);
        assert_eq!(geodesic_point(&u, 1.0), Err(Error::RealFieldRequired));
    }

    #[test]
    fn experimental_reduces_to_real_formula() {
        let s = CartanStructure::gl_real(3);
        let u = random_element(Seed(8), 3, Field::Real);
        for t in [0.0, 0.6, 1.5] {
            let a = experimental::geodesic_point_general(&s, &u, t).unwrap();
            let b = geodesic_point(&u, t).unwrap();
            assert!((a - b).max_abs() < 1e-13);
        }
    }

    #[test]
    fn experimental_complex_residual() {
        let s = CartanStructure::gl_complex(2);
        let mut sampler = Sampler::new(Seed(9));
        for _ in 0..10 {
            let u = s.random_element(&mut sampler);
            let r = experimental::geodesic_residual_general(&s, &u, 1.0, 1e-5).unwrap();
            assert!(r <= 1e-6, "{r}");
            let w0 = experimental::body_velocity_general(&s, &u, 0.0).unwrap();
            assert!((w0 - &u).max_abs() < 1e-14);
        }
    }

    #[test]
    fn builtin_defects() {
        let so3 = builtin_subgroup("SO", &[3]).unwrap();
        assert_eq!((so3.group_defect)(&Matrix::identity(3, Field::Real)), 0.0);
        let gen = Matrix::real_rows([[0.0, 1.0, 0.0], [-1.0, 0.0, 0.0], [0.0, 0.0, 0.0]]);
        assert_eq!((so3.algebra_defect)(&gen), 0.0);

        let sl2 = builtin_subgroup("sl", &[2]).unwrap();
        assert!(((sl2.group_defect)(&Matrix::diag(&[2.0, 2.0])) - 3.0).abs() < 1e-14);

        let o12 = builtin_subgroup("O(p,q)", &[1, 2]).unwrap();
        assert_eq!((o12.group_defect)(&Matrix::identity(3, Field::Real)), 0.0);
        assert_eq!(o12.name, "O(1,2)");

        let ut = builtin_subgroup("UT", &[3]).unwrap();
        assert!(!ut.transpose_invariant);

        assert!(matches!(builtin_subgroup("Sp", &[4]), Err(Error::UnknownGroup(_))));
        assert!(matches!(builtin_subgroup("so", &[1, 2]), Err(Error::UnknownGroup(_))));
        assert!(SubgroupSpec::parse("opq:2,1").is_ok());
        assert!(matches!(SubgroupSpec::parse("so3"), Err(Error::UnknownGroup(_))));
    }

    #[test]
    fn to_algebra_lands_in_algebra() {
        let mut sampler = Sampler::new(Seed(10));
        for spec in [
            SubgroupSpec::special_orthogonal(3),
            SubgroupSpec::special_linear(3),
            SubgroupSpec::indefinite_orthogonal(1, 2),
            SubgroupSpec::upper_triangular(3),
        ] {
            let a = sampler.element(3, Field::Real);
            let u = (spec.to_algebra)(&a);
            assert!((spec.algebra_defect)(&u) <= 1e-15, "{}", spec.name);
        }
    }

    #[test]
    fn totally_geodesic_examples() {
        let skew = Matrix::real_rows([[0.0, 0.3, -1.0], [-0.3, 0.0, 0.4], [1.0, -0.4, 0.0]]);
        let rep = totally_geodesic_check(&SubgroupSpec::special_orthogonal(3), &skew, 2.0, 64).unwrap();
        assert!(rep.passed && rep.max_defect <= 1e-10, "{rep:?}");
        assert_eq!(rep.samples, 64);

        let u = Matrix::real_rows([[1.0, 2.0], [0.0, -1.0]]);
        let rep = totally_geodesic_check(&SubgroupSpec::special_linear(2), &u, 2.0, 64).unwrap();
        assert!(rep.max_defect <= 1e-9, "{rep:?}");

        let e12 = Matrix::unit(3, 0, 1, Field::Real);
        let ut = SubgroupSpec::upper_triangular(3);
        let rep = totally_geodesic_check(&ut, &e12, 1.0, 2).unwrap();
        assert!(rep.max_defect >= 1e-3 && !rep.passed, "{rep:?}");
        // Entry (2,1) of exp(E21) * rotation(1) is cos 1 - sin 1.
        let g = geodesic_point(&e12, 1.0).unwrap();
        assert!((g.re(1, 0) - (1f64.cos() - 1f64.sin())).abs() < 1e-14);
    }

    #[test]
    fn tangent_outside_algebra() {
        let sym = Matrix::diag(&[1.0, 2.0, 3.0]);
        assert!(matches!(
            totally_geodesic_check(&SubgroupSpec::special_orthogonal(3), &sym, 1.0, 8),
            Err(Error::TangentNotInAlgebra { .. })
        ));
    }
}
