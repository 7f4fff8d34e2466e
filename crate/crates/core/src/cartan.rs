//! Reductive structure data: the Cartan involution θ, the invariant form B,
//! the inner product `B_θ(X, Y) = -B(X, θY)` and the `k ⊕ p` split into the
//! `+1` and `-1` eigenspaces of θ.
//!
//! Structures carry θ and B as closures so callers can register their own
//! reductive algebras next to the built-in `gl(n, R)` and `gl(n, C)`.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::Serialize;

use crate::algebra::{commutator, Field, Matrix, Sampler, Seed};
use crate::error::{Error, Result};
use crate::tolerance;

pub type ThetaFn = Arc<dyn Fn(&Matrix) -> Matrix + Send + Sync>;
pub type FormFn = Arc<dyn Fn(&Matrix, &Matrix) -> f64 + Send + Sync>;

#[derive(Clone)]
pub struct CartanStructure {
    name: String,
    n: usize,
    field: Field,
    theta: ThetaFn,
    bform: FormFn,
}

impl fmt::Debug for CartanStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CartanStructure")
            .field("name", &self.name)
            .field("n", &self.n)
            .field("field", &self.field)
            .finish_non_exhaustive()
    }
}

/// Components of `u = p_part + k_part` with `θ p_part = -p_part` and
/// `θ k_part = k_part`.
#[derive(Clone, Debug, PartialEq)]
pub struct ThetaSplit {
    pub p_part: Matrix,
    pub k_part: Matrix,
}

impl CartanStructure {
    pub fn new(
        name: impl Into<String>,
        n: usize,
        field: Field,
        theta: impl Fn(&Matrix) -> Matrix + Send + Sync + 'static,
        bform: impl Fn(&Matrix, &Matrix) -> f64 + Send + Sync + 'static,
    ) -> Self {
        CartanStructure {
            name: name.into(),
            n,
            field,
            theta: Arc::new(theta),
            bform: Arc::new(bform),
        }
    }

    /// `gl(n, R)` with `θX = -X^T` and `B(X, Y) = tr(XY)`; `B_θ` is the
    /// Frobenius inner product, p the symmetric and k the skew matrices.
    pub fn gl_real(n: usize) -> Self {
        assert!(n >= 1, "gl_real needs n >= 1");
        Self::new(
            format!("gl:real:{n}"),
            n,
            Field::Real,
            |x| -x.transpose(),
            |x, y| trace_of_product(x, y).re,
        )
    }

    /// `gl(n, C)` with `θX = -X*` and `B(X, Y) = Re tr(XY)`; p is Hermitian,
    /// k skew-Hermitian.
    pub fn gl_complex(n: usize) -> Self {
        assert!(n >= 1, "gl_complex needs n >= 1");
        Self::new(
            format!("gl:complex:{n}"),
            n,
            Field::Complex,
            |x| -x.adjoint(),
            |x, y| trace_of_product(x, y).re,
        )
    }

    /// Parses `gl:real:<n>` or `gl:complex:<n>`.
    pub fn parse(selector: &str) -> Result<Self> {
        let unknown = || Error::UnknownStructure(selector.to_string());
        let parts: Vec<&str> = selector.trim().split(':').collect();
        match parts.as_slice() {
            ["gl", field, n] => {
                let n: usize = n.parse().map_err(|_| unknown())?;
                if n == 0 {
                    return Err(unknown());
                }
                match *field {
                    "real" => Ok(Self::gl_real(n)),
                    "complex" => Ok(Self::gl_complex(n)),
                    _ => Err(unknown()),
                }
            }
            _ => Err(unknown()),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Real dimension of the algebra: `n^2` over R, `2 n^2` over C.
    pub fn real_dimension(&self) -> usize {
        match self.field {
            Field::Real => self.n * self.n,
            Field::Complex => 2 * self.n * self.n,
        }
    }

    pub fn theta(&self, u: &Matrix) -> Matrix {
        (self.theta)(u)
    }

    pub fn b(&self, u: &Matrix, v: &Matrix) -> f64 {
        (self.bform)(u, v)
    }

    /// The metric at the identity, `B_θ(u, v) = -B(u, θv)`.
    pub fn inner(&self, u: &Matrix, v: &Matrix) -> f64 {
        -self.b(u, &self.theta(v))
    }

    pub fn norm_sq(&self, u: &Matrix) -> f64 {
        self.inner(u, u)
    }

    pub fn norm(&self, u: &Matrix) -> f64 {
        self.norm_sq(u).max(0.0).sqrt()
    }

    /// Errors unless `u` has the structure's size and field.
    pub fn check(&self, u: &Matrix) -> Result<()> {
        if u.n() != self.n || u.field() != self.field {
            return Err(Error::DimensionMismatch(format!(
                "{} expects {}x{} {} matrices, got {}x{} {}",
                self.name,
                self.n,
                self.n,
                self.field,
                u.n(),
                u.n(),
                u.field()
            )));
        }
        Ok(())
    }

    /// `p_part = (u - θu)/2`, `k_part = (u + θu)/2`.
    pub fn theta_split(&self, u: &Matrix) -> Result<ThetaSplit> {
        self.check(u)?;
        Ok(self.split_unchecked(u))
    }

    pub(crate) fn split_unchecked(&self, u: &Matrix) -> ThetaSplit {
        let tu = self.theta(u);
        ThetaSplit {
            p_part: (u - &tu).scale(0.5),
            k_part: (u + &tu).scale(0.5),
        }
    }

    /// Standard cell basis: `E_ij`, plus `i E_ij` over C.
    pub fn standard_basis(&self) -> Vec<Matrix> {
        let mut out = Vec::with_capacity(self.real_dimension());
        for i in 0..self.n {
            for j in 0..self.n {
                out.push(Matrix::unit(self.n, i, j, self.field));
            }
        }
        if self.field == Field::Complex {
            for i in 0..self.n {
                for j in 0..self.n {
                    out.push(Matrix::unit(self.n, i, j, Field::Complex).scale_complex(Complex64::i()));
                }
            }
        }
        out
    }

    pub fn random_element(&self, sampler: &mut Sampler) -> Matrix {
        sampler.element(self.n, self.field)
    }

    pub fn random_p(&self, sampler: &mut Sampler) -> Matrix {
        self.split_unchecked(&self.random_element(sampler)).p_part
    }

    pub fn random_k(&self, sampler: &mut Sampler) -> Matrix {
        self.split_unchecked(&self.random_element(sampler)).k_part
    }
}

fn trace_of_product(x: &Matrix, y: &Matrix) -> Complex64 {
    let (a, b) = (x.as_dmatrix(), y.as_dmatrix());
    let n = a.nrows();
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..n {
        for k in 0..n {
            acc += a[(i, k)] * b[(k, i)];
        }
    }
    acc
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AxiomCheck {
    pub axiom: String,
    /// Largest violation seen, measured relative to the inputs' scale.
    pub max_error: f64,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ValidationReport {
    pub structure: String,
    pub trials: usize,
    pub checks: Vec<AxiomCheck>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, axiom: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.axiom == axiom)
    }

    pub fn max_error(&self) -> f64 {
        self.checks.iter().map(|c| c.max_error).fold(0.0, f64::max)
    }
}

/// [`validate_with`] using the default seed and trial count.
pub fn validate(s: &CartanStructure) -> ValidationReport {
    validate_with(
        s,
        Seed(tolerance::VALIDATOR_SEED),
        tolerance::VALIDATOR_TRIALS,
        tolerance::VALIDATOR_TOL,
    )
}

/// Samples the algebraic axioms the curvature formulas rely on. Failures are
/// report entries, never errors.
pub fn validate_with(s: &CartanStructure, seed: Seed, trials: usize, tol: f64) -> ValidationReport {
    let trials = trials.max(1);
    let mut sampler = Sampler::new(seed);
    let mut worst = [0.0f64; 8];
    let axioms = [
        "theta_involution",
        "theta_bracket_automorphism",
        "b_symmetric",
        "b_ad_invariant",
        "split_orthogonal",
        "bracket_kk_in_k",
        "bracket_pp_in_k",
        "bracket_kp_in_p",
    ];
    let rel = |err: f64, scale: f64| err / scale.max(tolerance::SCALE_FLOOR);

    for _ in 0..trials {
        let x = s.random_element(&mut sampler);
        let y = s.random_element(&mut sampler);
        let z = s.random_element(&mut sampler);
        let (nx, ny, nz) = (x.norm(), y.norm(), z.norm());

        let back = s.theta(&s.theta(&x));
        worst[0] = worst[0].max(rel((&back - &x).norm(), nx));

        let lhs = s.theta(&commutator(&x, &y));
        let rhs = commutator(&s.theta(&x), &s.theta(&y));
        worst[1] = worst[1].max(rel((&lhs - &rhs).norm(), nx * ny));

        worst[2] = worst[2].max(rel((s.b(&x, &y) - s.b(&y, &x)).abs(), nx * ny));

        let ad = s.b(&commutator(&x, &y), &z) + s.b(&y, &commutator(&x, &z));
        worst[3] = worst[3].max(rel(ad.abs(), nx * ny * nz));

        let sx = s.split_unchecked(&x);
        let sy = s.split_unchecked(&y);
        let cross = s.inner(&sx.p_part, &sy.k_part).abs() + s.inner(&sx.k_part, &sy.p_part).abs();
        worst[4] = worst[4].max(rel(cross, nx * ny));

        let (k1, k2) = (&sx.k_part, &sy.k_part);
        let (p1, p2) = (&sx.p_part, &sy.p_part);
        let kk = commutator(k1, k2);
        worst[5] = worst[5].max(rel(s.split_unchecked(&kk).p_part.norm(), k1.norm() * k2.norm()));
        let pp = commutator(p1, p2);
        worst[6] = worst[6].max(rel(s.split_unchecked(&pp).p_part.norm(), p1.norm() * p2.norm()));
        let kp = commutator(k1, p2);
        worst[7] = worst[7].max(rel(s.split_unchecked(&kp).k_part.norm(), k1.norm() * p2.norm()));
    }

    let mut checks: Vec<AxiomCheck> = axioms
        .iter()
        .zip(worst)
        .map(|(name, err)| AxiomCheck {
            axiom: name.to_string(),
            max_error: err,
            tolerance: tol,
            passed: err <= tol,
        })
        .collect();

    // B_θ on the standard basis: symmetric Gram matrix with positive spectrum.
    let basis = s.standard_basis();
    let dim = basis.len();
    let gram = nalgebra::DMatrix::from_fn(dim, dim, |i, j| s.inner(&basis[i], &basis[j]));
    let asym = (&gram - gram.transpose()).abs().max();
    let min_eig = nalgebra::SymmetricEigen::new((&gram + gram.transpose()) * 0.5)
        .eigenvalues
        .min();
    let defect = asym + (-min_eig).max(0.0);
    checks.push(AxiomCheck {
        axiom: "b_theta_positive_definite".into(),
        max_error: defect,
        tolerance: tol,
        passed: asym <= tol && min_eig > tol,
    });

    ValidationReport {
        structure: s.name.clone(),
        trials,
        checks,
    }
}
