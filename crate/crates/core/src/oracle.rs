//! Independent reference computations.
//!
//! The connection is recovered from the metric identity
//! `<∇_u v, w> = ½(<[u,v],w> - <[v,w],u> - <[u,w],v>)` by expanding over an
//! orthonormal basis, and the quartic comes straight from the definition of
//! the curvature tensor on top of it. Nothing here calls the closed forms in
//! [`crate::curvature`].

use crate::algebra::{commutator, Field, Matrix, Sampler, Seed};
use crate::cartan::CartanStructure;
use crate::error::{Error, Result};
use crate::tolerance;

/// A `B_θ`-orthonormal basis of the algebra.
#[derive(Clone, Debug)]
pub struct OrthonormalBasis {
    elements: Vec<Matrix>,
}

impl OrthonormalBasis {
    /// The cell basis `E_ij` (and `i E_ij` over C), exactly orthonormal for
    /// the built-in structures.
    pub fn standard(s: &CartanStructure) -> Result<Self> {
        Self::new(s, s.standard_basis())
    }

    /// Checks pairwise orthonormality under `s.inner`.
    pub fn new(s: &CartanStructure, elements: Vec<Matrix>) -> Result<Self> {
        for e in &elements {
            s.check(e)?;
        }
        let mut defect = 0.0f64;
        for (i, a) in elements.iter().enumerate() {
            for (j, b) in elements.iter().enumerate().skip(i) {
                let target = if i == j { 1.0 } else { 0.0 };
                defect = defect.max((s.inner(a, b) - target).abs());
            }
        }
        if defect > tolerance::BASIS_ORTHONORMAL {
            return Err(Error::NotOrthonormal { defect });
        }
        Ok(OrthonormalBasis { elements })
    }

    pub fn elements(&self) -> &[Matrix] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    fn check_complete(&self, s: &CartanStructure) -> Result<()> {
        if self.elements.len() != s.real_dimension() {
            return Err(Error::IncompleteBasis {
                expected: s.real_dimension(),
                found: self.elements.len(),
            });
        }
        Ok(())
    }
}

fn nabla_metric(s: &CartanStructure, u: &Matrix, v: &Matrix, basis: &OrthonormalBasis) -> Matrix {
    let uv = commutator(u, v);
    let mut acc = Matrix::zeros(s.n(), s.field());
    for e in &basis.elements {
        let coeff = 0.5
            * (s.inner(&uv, e) - s.inner(&commutator(v, e), u) - s.inner(&commutator(u, e), v));
        acc = &acc + &e.scale(coeff);
    }
    acc
}

/// `∇_u v` solved coordinate-wise from the metric identity.
pub fn nabla_from_metric(
    s: &CartanStructure,
    u: &Matrix,
    v: &Matrix,
    basis: &OrthonormalBasis,
) -> Result<Matrix> {
    basis.check_complete(s)?;
    s.check(u)?;
    s.check(v)?;
    Ok(nabla_metric(s, u, v, basis))
}

/// `R(u,v)w` with every connection term taken from [`nabla_from_metric`].
pub fn curvature_from_definition(
    s: &CartanStructure,
    u: &Matrix,
    v: &Matrix,
    w: &Matrix,
    basis: &OrthonormalBasis,
) -> Result<Matrix> {
    basis.check_complete(s)?;
    for m in [u, v, w] {
        s.check(m)?;
    }
    let a = nabla_metric(s, u, &nabla_metric(s, v, w, basis), basis);
    let b = nabla_metric(s, v, &nabla_metric(s, u, w, basis), basis);
    let c = nabla_metric(s, &commutator(u, v), w, basis);
    Ok(&(&a - &b) - &c)
}

/// `<R(u,v)v, u>` from the definition.
pub fn quartic_from_definition(
    s: &CartanStructure,
    u: &Matrix,
    v: &Matrix,
    basis: &OrthonormalBasis,
) -> Result<f64> {
    let r = curvature_from_definition(s, u, v, v, basis)?;
    Ok(s.inner(&r, u))
}

/// Two polynomials of degree `deg` in one random real matrix, each scaled to
/// unit norm. They commute up to rounding.
pub fn commuting_pair(seed: Seed, n: usize, deg: usize) -> (Matrix, Matrix) {
    commuting_pair_in(seed, n, deg, Field::Real)
}

/// [`commuting_pair`] over the given field.
pub fn commuting_pair_in(seed: Seed, n: usize, deg: usize, field: Field) -> (Matrix, Matrix) {
    assert!(n >= 1 && deg >= 1);
    let mut sampler = Sampler::new(seed);
    let m = sampler.element(n, field);
    let mut powers = vec![Matrix::identity(n, field)];
    for k in 1..=deg {
        let next = &powers[k - 1] * &m;
        powers.push(next);
    }
    let poly = |sampler: &mut Sampler| {
        let mut acc = Matrix::zeros(n, field);
        for p in &powers {
            acc = &acc + &p.scale(sampler.uniform(-1.0, 1.0));
        }
        let norm = acc.norm();
        if norm > 0.0 {
            acc.scale(1.0 / norm)
        } else {
            acc
        }
    };
    let u = poly(&mut sampler);
    let v = poly(&mut sampler);
    (u, v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvature::{nabla, quartic};

    #[test]
    fn standard_basis_sizes() {
        let r = CartanStructure::gl_real(3);
        assert_eq!(OrthonormalBasis::standard(&r).unwrap().len(), 9);
        let c = CartanStructure::gl_complex(2);
        assert_eq!(OrthonormalBasis::standard(&c).unwrap().len(), 8);
    }

    #[test]
    fn incomplete_basis_rejected() {
        let s = CartanStructure::gl_real(2);
        let mut elems = s.standard_basis();
        elems.pop();
        let basis = OrthonormalBasis::new(&s, elems).unwrap();
        let u = Matrix::identity(2, Field::Real);
        assert_eq!(
            nabla_from_metric(&s, &u, &u, &basis).unwrap_err(),
            Error::IncompleteBasis { expected: 4, found: 3 }
        );
        assert!(quartic_from_definition(&s, &u, &u, &basis).is_err());
    }

    #[test]
    fn non_orthonormal_rejected() {
        let s = CartanStructure::gl_real(2);
        let mut elems = s.standard_basis();
        elems[0] = elems[0].scale(2.0);
        assert!(matches!(OrthonormalBasis::new(&s, elems), Err(Error::NotOrthonormal { .. })));
    }

    #[test]
    fn oracle_nabla_matches_closed_form() {
        for s in [CartanStructure::gl_real(3), CartanStructure::gl_complex(2)] {
            let basis = OrthonormalBasis::standard(&s).unwrap();
            let mut sampler = Sampler::new(Seed(1));
            for _ in 0..100 {
                let u = s.random_element(&mut sampler);
                let v = s.random_element(&mut sampler);
                let a = nabla_from_metric(&s, &u, &v, &basis).unwrap();
                let b = nabla(&s, &u, &v).unwrap();
                assert!((a - b).norm() <= 1e-11 * (u.norm() * v.norm()));
            }
        }
    }

    #[test]
    fn oracle_nabla_of_symmetric_self() {
        let s = CartanStructure::gl_real(3);
        let basis = OrthonormalBasis::standard(&s).unwrap();
        let p = s.random_p(&mut Sampler::new(Seed(3)));
        assert!(nabla_from_metric(&s, &p, &p, &basis).unwrap().max_abs() < 1e-15);
    }

    #[test]
    fn oracle_two_by_two_pair_is_flat() {
        let s = CartanStructure::gl_real(2);
        let basis = OrthonormalBasis::standard(&s).unwrap();
        let h = 7f64.sqrt() / 2.0;
        let u = Matrix::real_rows([[1.0, h], [-h, 2.0]]);
        let v = Matrix::real_rows([[0.0, 1.0], [1.0, 0.0]]);
        assert!(quartic_from_definition(&s, &u, &v, &basis).unwrap().abs() < 1e-10);
        let d = quartic_from_definition(&s, &Matrix::diag(&[1.0, 2.0]), &Matrix::diag(&[-1.0, 4.0]), &basis);
        assert!(d.unwrap().abs() < 1e-15);
    }

    #[test]
    fn oracle_three_by_three_pair() {
        let s = CartanStructure::gl_real(3);
        let basis = OrthonormalBasis::standard(&s).unwrap();
        let u = Matrix::real_rows([[1.0, 1.0, -1.0], [1.0, 1.0, 0.0], [2.0, 0.0, 1.0]]);
        let v = Matrix::real_rows([[0.0, -1.0, 1.0], [-1.0, 2.0, -1.0], [-2.0, 2.0, -1.0]]);
        let q = quartic_from_definition(&s, &u, &v, &basis).unwrap();
        assert!((q + 40.5).abs() < 1e-11, "{q}");
    }

    #[test]
    fn oracle_quartic_matches_closed_form() {
        for n in 2..=4 {
            let s = CartanStructure::gl_real(n);
            let basis = OrthonormalBasis::standard(&s).unwrap();
            let mut sampler = Sampler::new(Seed(n as u64));
            for _ in 0..50 {
                let u = s.random_element(&mut sampler);
                let v = s.random_element(&mut sampler);
                let a = quartic_from_definition(&s, &u, &v, &basis).unwrap();
                let b = quartic(&s, &u, &v).unwrap();
                assert!(tolerance::rel_err(a, b, u.norm_sq() * v.norm_sq()) <= 1e-8);
            }
        }
    }

    #[test]
    fn commuting_pairs_commute() {
        for (n, field) in [(2, Field::Real), (3, Field::Real), (4, Field::Complex)] {
            for k in 0..20 {
                let (u, v) = commuting_pair_in(Seed(k), n, 3, field);
                assert!((&(&u * &v) - &(&v * &u)).norm() <= 1e-12);
                assert!((u.norm() - 1.0).abs() < 1e-14);
                assert_eq!(u.field(), field);
            }
        }
    }

    #[test]
    fn commuting_pairs_curvature_sign() {
        let s2 = CartanStructure::gl_real(2);
        let s3 = CartanStructure::gl_real(3);
        for k in 0..50 {
            let (u, v) = commuting_pair(Seed(k), 2, 2);
            assert!(quartic(&s2, &u, &v).unwrap().abs() <= 1e-12);
            let (u, v) = commuting_pair(Seed(k), 3, 2);
            assert!(quartic(&s3, &u, &v).unwrap() <= 1e-14);
        }
    }
}
