//! Dense square matrices over the reals or the complex numbers.
//!
//! Every [`Matrix`] stores complex entries; a real matrix simply keeps all
//! imaginary parts at zero and carries [`Field::Real`]. With that convention
//! the conjugate transpose is the transpose and `Re tr(X* Y)` is the
//! Frobenius inner product `tr(X^T Y)`, so one code path serves both fields.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Real,
    Complex,
}

impl Field {
    /// The smallest field containing both.
    pub fn join(self, other: Field) -> Field {
        if self == Field::Complex || other == Field::Complex {
            Field::Complex
        } else {
            Field::Real
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Real => f.write_str("real"),
            Field::Complex => f.write_str("complex"),
        }
    }
}

/// Seed for the deterministic sample stream.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Seed(pub u64);

impl Seed {
    /// Child seed for the `index`-th trial of a sweep.
    pub fn split(self, index: u64) -> Seed {
        Seed(self.0.wrapping_add(index))
    }
}

impl From<u64> for Seed {
    fn from(v: u64) -> Self {
        Seed(v)
    }
}

/// An n x n matrix; an element of gl(n) or of GL(n) depending on context.
#[derive(Clone, PartialEq)]
pub struct Matrix {
    field: Field,
    data: DMatrix<Complex64>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix<{}>[", self.field)?;
        for i in 0..self.n() {
            if i > 0 {
                f.write_str("; ")?;
            }
            for j in 0..self.n() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                let z = self.data[(i, j)];
                match self.field {
                    Field::Real => write!(f, "{}", z.re)?,
                    Field::Complex => write!(f, "{}{:+}i", z.re, z.im)?,
                }
            }
        }
        f.write_str("]")
    }
}

impl Matrix {
    pub fn zeros(n: usize, field: Field) -> Self {
        Matrix {
            field,
            data: DMatrix::zeros(n, n),
        }
    }

    pub fn identity(n: usize, field: Field) -> Self {
        Matrix {
            field,
            data: DMatrix::identity(n, n),
        }
    }

    /// Matrix unit `E_ij`.
    pub fn unit(n: usize, i: usize, j: usize, field: Field) -> Self {
        let mut m = Self::zeros(n, field);
        m.data[(i, j)] = Complex64::new(1.0, 0.0);
        m
    }

    /// Real matrix from row-major entries.
    pub fn from_real(n: usize, entries: &[f64]) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::InvalidMatrix(format!(
                "expected {} entries for n = {n}, got {}",
                n * n,
                entries.len()
            )));
        }
        let m = Matrix {
            field: Field::Real,
            data: DMatrix::from_fn(n, n, |i, j| Complex64::new(entries[i * n + j], 0.0)),
        };
        m.check_finite()?;
        Ok(m)
    }

    /// Complex matrix from row-major entries.
    pub fn from_complex(n: usize, entries: &[Complex64]) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::InvalidMatrix(format!(
                "expected {} entries for n = {n}, got {}",
                n * n,
                entries.len()
            )));
        }
        let m = Matrix {
            field: Field::Complex,
            data: DMatrix::from_fn(n, n, |i, j| entries[i * n + j]),
        };
        m.check_finite()?;
        Ok(m)
    }

    /// Real matrix from nested rows. Panics on ragged input; meant for literals.
    pub fn real_rows<const N: usize>(rows: [[f64; N]; N]) -> Self {
        Matrix {
            field: Field::Real,
            data: DMatrix::from_fn(N, N, |i, j| Complex64::new(rows[i][j], 0.0)),
        }
    }

    pub fn diag(values: &[f64]) -> Self {
        let n = values.len();
        let mut m = Self::zeros(n, Field::Real);
        for (i, &v) in values.iter().enumerate() {
            m.data[(i, i)] = Complex64::new(v, 0.0);
        }
        m
    }

    /// Wraps a complex nalgebra matrix. Real field is chosen when every
    /// imaginary part is exactly zero and `field` is `None`.
    pub fn from_dmatrix(data: DMatrix<Complex64>, field: Option<Field>) -> Result<Self> {
        if !data.is_square() {
            return Err(Error::InvalidMatrix(format!(
                "{}x{} is not square",
                data.nrows(),
                data.ncols()
            )));
        }
        let field = field.unwrap_or_else(|| {
            if data.iter().all(|z| z.im == 0.0) {
                Field::Real
            } else {
                Field::Complex
            }
        });
        if field == Field::Real && data.iter().any(|z| z.im != 0.0) {
            return Err(Error::InvalidMatrix(
                "real matrix has nonzero imaginary parts".into(),
            ));
        }
        let m = Matrix { field, data };
        m.check_finite()?;
        Ok(m)
    }

    fn check_finite(&self) -> Result<()> {
        if self.is_finite() {
            Ok(())
        } else {
            Err(Error::InvalidMatrix("entries must be finite".into()))
        }
    }

    pub fn n(&self) -> usize {
        self.data.nrows()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_real(&self) -> bool {
        self.field == Field::Real
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[(i, j)]
    }

    /// Real part of entry `(i, j)`.
    pub fn re(&self, i: usize, j: usize) -> f64 {
        self.data[(i, j)].re
    }

    pub fn as_dmatrix(&self) -> &DMatrix<Complex64> {
        &self.data
    }

    pub fn into_dmatrix(self) -> DMatrix<Complex64> {
        self.data
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Same entries viewed over the complex field.
    pub fn to_complex(&self) -> Matrix {
        Matrix {
            field: Field::Complex,
            data: self.data.clone(),
        }
    }

    pub fn transpose(&self) -> Matrix {
        Matrix {
            field: self.field,
            data: self.data.transpose(),
        }
    }

    /// Conjugate transpose; the transpose for real matrices.
    pub fn adjoint(&self) -> Matrix {
        Matrix {
            field: self.field,
            data: self.data.adjoint(),
        }
    }

    pub fn scale(&self, a: f64) -> Matrix {
        Matrix {
            field: self.field,
            data: self.data.map(|z| z * a),
        }
    }

    /// Multiplication by a complex scalar; the result is complex unless the
    /// scalar is real.
    pub fn scale_complex(&self, a: Complex64) -> Matrix {
        let field = if a.im == 0.0 { self.field } else { Field::Complex };
        Matrix {
            field,
            data: self.data.map(|z| z * a),
        }
    }

    pub fn trace(&self) -> Complex64 {
        self.data.trace()
    }

    pub fn norm_sq(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Induced 1-norm (max column sum).
    pub fn norm_one(&self) -> f64 {
        (0..self.n())
            .map(|j| self.data.column(j).iter().map(|z| z.norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn determinant(&self) -> Complex64 {
        self.data.clone().determinant()
    }

    pub fn try_inverse(&self) -> Option<Matrix> {
        self.data.clone().try_inverse().map(|data| Matrix {
            field: self.field,
            data,
        })
    }

    pub fn same_shape(&self, other: &Matrix) -> Result<()> {
        if self.n() != other.n() || self.field != other.field {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} {} vs {}x{} {}",
                self.n(),
                self.n(),
                self.field,
                other.n(),
                other.n(),
                other.field
            )));
        }
        Ok(())
    }

    fn binary(&self, other: &Matrix, f: impl FnOnce(&DMatrix<Complex64>, &DMatrix<Complex64>) -> DMatrix<Complex64>) -> Matrix {
        assert_eq!(self.n(), other.n(), "matrix sizes differ");
        Matrix {
            field: self.field.join(other.field),
            data: f(&self.data, &other.data),
        }
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        self.binary(rhs, |a, b| a + b)
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        self.binary(rhs, |a, b| a - b)
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.binary(rhs, |a, b| a * b)
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        Matrix {
            field: self.field,
            data: -&self.data,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Matrix {
            type Output = Matrix;
            fn $m(self, rhs: Matrix) -> Matrix {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Matrix> for Matrix {
            type Output = Matrix;
            fn $m(self, rhs: &Matrix) -> Matrix {
                (&self).$m(rhs)
            }
        }
        impl $tr<Matrix> for &Matrix {
            type Output = Matrix;
            fn $m(self, rhs: Matrix) -> Matrix {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        -&self
    }
}

/// Lie bracket `uv - vu`, used internally once shapes are known to agree.
pub(crate) fn commutator(u: &Matrix, v: &Matrix) -> Matrix {
    &(u * v) - &(v * u)
}

/// Real inner product `Re tr(u* v)`, summed entrywise.
pub(crate) fn frobenius(u: &Matrix, v: &Matrix) -> f64 {
    u.data
        .iter()
        .zip(v.data.iter())
        .map(|(a, b)| a.re * b.re + a.im * b.im)
        .sum()
}

/// Lie bracket `[u, v] = uv - vu`.
pub fn bracket(u: &Matrix, v: &Matrix) -> Result<Matrix> {
    u.same_shape(v)?;
    Ok(commutator(u, v))
}

/// Frobenius inner product: `tr(u^T v)` over the reals, `Re tr(u* v)` over
/// the complex numbers.
pub fn frobenius_inner(u: &Matrix, v: &Matrix) -> Result<f64> {
    u.same_shape(v)?;
    Ok(frobenius(u, v))
}

// Padé(13) numerator coefficients for scaling and squaring.
const PADE13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

// Largest 1-norm for which Padé(13) meets double precision without scaling.
const THETA13: f64 = 5.371920351148152;

/// Matrix exponential by scaling and squaring with a degree-13 Padé
/// approximant.
pub fn matrix_exp(u: &Matrix) -> Result<Matrix> {
    if !u.is_finite() {
        return Err(Error::InvalidMatrix("entries must be finite".into()));
    }
    let n = u.n();
    if n == 0 {
        return Ok(u.clone());
    }

    let norm = u.norm_one();
    let squarings = if norm > THETA13 {
        (norm / THETA13).log2().ceil() as i32
    } else {
        0
    };
    if squarings > 1000 {
        return Err(Error::Overflow);
    }
    let a = u.data.map(|z| z * 2f64.powi(-squarings));

    let b = &PADE13;
    let ident = DMatrix::<Complex64>::identity(n, n);
    let a2 = &a * &a;
    let a4 = &a2 * &a2;
    let a6 = &a4 * &a2;
    let lin = |m: &DMatrix<Complex64>, c: f64| m.map(|z| z * c);

    let inner_u = &a6 * (lin(&a6, b[13]) + lin(&a4, b[11]) + lin(&a2, b[9]))
        + lin(&a6, b[7])
        + lin(&a4, b[5])
        + lin(&a2, b[3])
        + lin(&ident, b[1]);
    let odd = &a * inner_u;
    let even = &a6 * (lin(&a6, b[12]) + lin(&a4, b[10]) + lin(&a2, b[8]))
        + lin(&a6, b[6])
        + lin(&a4, b[4])
        + lin(&a2, b[2])
        + lin(&ident, b[0]);

    let num = &even + &odd;
    let den = &even - &odd;
    let mut r = den.lu().solve(&num).ok_or(Error::Overflow)?;
    for _ in 0..squarings {
        r = &r * &r;
        if !r.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::Overflow);
        }
    }
    if !r.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Overflow);
    }
    if u.field == Field::Real {
        // The approximant of a real matrix is real; drop rounding residue.
        r.iter_mut().for_each(|z| z.im = 0.0);
    }
    Ok(Matrix {
        field: u.field,
        data: r,
    })
}

/// Deterministic stream of random matrices and scalars.
#[derive(Clone, Debug)]
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: Seed) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed.0),
        }
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.random_range(lo..=hi)
    }

    /// Entries i.i.d. uniform in `[-1, 1]`; complex entries draw real and
    /// imaginary parts independently.
    pub fn element(&mut self, n: usize, field: Field) -> Matrix {
        let mut m = Matrix::zeros(n, field);
        for i in 0..n {
            for j in 0..n {
                let re = self.uniform(-1.0, 1.0);
                let im = match field {
                    Field::Real => 0.0,
                    Field::Complex => self.uniform(-1.0, 1.0),
                };
                m.data[(i, j)] = Complex64::new(re, im);
            }
        }
        m
    }
}

/// A random matrix with entries uniform in `[-1, 1]`, fixed by `(seed, n, field)`.
pub fn random_element(seed: Seed, n: usize, field: Field) -> Matrix {
    Sampler::new(seed).element(n, field)
}

// JSON form: {"n": 2, "field": "real", "entries": [a, b, c, d]} with complex
// entries written as [re, im] pairs.

impl Matrix {
    pub fn to_json_value(&self) -> Value {
        let entries: Vec<Value> = (0..self.n())
            .flat_map(|i| (0..self.n()).map(move |j| (i, j)))
            .map(|(i, j)| {
                let z = self.data[(i, j)];
                match self.field {
                    Field::Real => Value::from(z.re),
                    Field::Complex => Value::from(vec![z.re, z.im]),
                }
            })
            .collect();
        serde_json::json!({
            "n": self.n(),
            "field": self.field,
            "entries": entries,
        })
    }

    /// Parses the JSON form. `entries` may be the flat row-major list or a
    /// list of `n` rows; `field` defaults to real.
    pub fn from_json_value(value: &Value) -> Result<Self> {
        let bad = |msg: &str| Error::InvalidMatrix(msg.to_string());
        // A bare array is shorthand for `{"entries": ...}`.
        let (obj, raw) = match value {
            Value::Array(raw) => (None, raw),
            Value::Object(obj) => (
                Some(obj),
                obj.get("entries")
                    .and_then(Value::as_array)
                    .ok_or_else(|| bad("missing `entries` array"))?,
            ),
            _ => return Err(bad("expected a JSON object or array")),
        };
        let n = match obj.and_then(|o| o.get("n")) {
            Some(n) => n.as_u64().ok_or_else(|| bad("invalid `n`"))? as usize,
            None => infer_n(raw).ok_or_else(|| bad("cannot infer `n` from `entries`"))?,
        };
        if n == 0 {
            return Err(bad("`n` must be positive"));
        }
        let field = match obj.and_then(|o| o.get("field")) {
            None => Field::Real,
            Some(f) => serde_json::from_value::<Field>(f.clone())
                .map_err(|_| bad("`field` must be \"real\" or \"complex\""))?,
        };

        let flat: Vec<&Value> = if raw.len() == n * n {
            raw.iter().collect()
        } else if raw.len() == n
            && raw
                .iter()
                .all(|r| r.as_array().map(|r| r.len() == n).unwrap_or(false))
        {
            raw.iter()
                .flat_map(|r| r.as_array().unwrap().iter())
                .collect()
        } else {
            return Err(Error::InvalidMatrix(format!(
                "expected {} entries (or {n} rows of {n}), got {}",
                n * n,
                raw.len()
            )));
        };

        let mut entries = Vec::with_capacity(n * n);
        for v in flat {
            let z = match v {
                Value::Number(x) => Complex64::new(x.as_f64().ok_or_else(|| bad("bad number"))?, 0.0),
                Value::Array(parts) if parts.len() == 1 || parts.len() == 2 => {
                    let re = parts[0].as_f64().ok_or_else(|| bad("bad real part"))?;
                    let im = match parts.get(1) {
                        Some(p) => p.as_f64().ok_or_else(|| bad("bad imaginary part"))?,
                        None => 0.0,
                    };
                    Complex64::new(re, im)
                }
                _ => return Err(bad("entries must be numbers or [re, im] pairs")),
            };
            if field == Field::Real && z.im != 0.0 {
                return Err(bad("real matrix has a nonzero imaginary part"));
            }
            entries.push(z);
        }
        let mut m = Matrix::from_complex(n, &entries)?;
        m.field = field;
        Ok(m)
    }
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json_value().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let value = Value::deserialize(deserializer)?;
        Matrix::from_json_value(&value).map_err(D::Error::custom)
    }
}

// Rows of rows give n directly; a flat list must have square length.
fn infer_n(raw: &[Value]) -> Option<usize> {
    let rows = !raw.is_empty()
        && raw
            .iter()
            .all(|r| r.as_array().is_some_and(|r| r.len() == raw.len()));
    if rows {
        return Some(raw.len());
    }
    let n = (raw.len() as f64).sqrt().round() as usize;
    (n * n == raw.len() && n > 0).then_some(n)
}

#[cfg(test)]
mod tests {

    #[test]
    fn json_shorthand_infers_size() {
        let rows = Matrix::from_json_value(&serde_json::json!([[1, 2], [3, 4]])).unwrap();
        let flat = Matrix::from_json_value(&serde_json::json!({"entries": [1, 2, 3, 4]})).unwrap();
        assert_eq!(rows, flat);
        assert_eq!(rows.n(), 2);
        let c = Matrix::from_json_value(&serde_json::json!({"field": "complex", "entries": [[0, 1], 0, 0, 1]})).unwrap();
        assert_eq!(c.get(0, 0), Complex64::new(0.0, 1.0));
        assert!(Matrix::from_json_value(&serde_json::json!([1, 2, 3])).is_err());
    }
    use super::*;

    fn s7() -> f64 {
        7f64.sqrt() / 2.0
    }

    #[test]
    fn bracket_of_self_vanishes() {
        let u = random_element(Seed(3), 4, Field::Complex);
        assert_eq!(bracket(&u, &u).unwrap().max_abs(), 0.0);
    }

    #[test]
    fn bracket_two_by_two_pair() {
        let u = Matrix::real_rows([[1.0, s7()], [-s7(), 2.0]]);
        let v = Matrix::real_rows([[0.0, 1.0], [1.0, 0.0]]);
        let r7 = 7f64.sqrt();
        let expected = Matrix::real_rows([[r7, -1.0], [1.0, -r7]]);
        assert!((bracket(&u, &v).unwrap() - expected).max_abs() < 1e-15);
    }

    #[test]
    fn bracket_three_by_three_commutes() {
        let u = Matrix::real_rows([[1.0, 1.0, -1.0], [1.0, 1.0, 0.0], [2.0, 0.0, 1.0]]);
        let v = Matrix::real_rows([[0.0, -1.0, 1.0], [-1.0, 2.0, -1.0], [-2.0, 2.0, -1.0]]);
        assert_eq!(bracket(&u, &v).unwrap().max_abs(), 0.0);
    }

    #[test]
    fn bracket_rejects_mismatch() {
        let a = Matrix::zeros(2, Field::Real);
        let b = Matrix::zeros(3, Field::Real);
        let c = Matrix::zeros(2, Field::Complex);
        assert!(matches!(bracket(&a, &b), Err(Error::DimensionMismatch(_))));
        assert!(matches!(bracket(&a, &c), Err(Error::DimensionMismatch(_))));
        assert!(matches!(frobenius_inner(&a, &c), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn inner_products() {
        let e11 = Matrix::unit(2, 0, 0, Field::Real);
        assert_eq!(frobenius_inner(&e11, &e11).unwrap(), 1.0);
        let d = Matrix::diag(&[1.0, 2.0]);
        let h = Matrix::real_rows([[0.0, 1.0], [1.0, 0.0]]);
        assert_eq!(frobenius_inner(&d, &h).unwrap(), 0.0);
        let ii = Matrix::identity(2, Field::Complex).scale_complex(Complex64::i());
        assert_eq!(frobenius_inner(&ii, &ii).unwrap(), 2.0);
    }

    #[test]
    fn inner_matches_trace_definition() {
        let u = random_element(Seed(10), 3, Field::Complex);
        let v = random_element(Seed(11), 3, Field::Complex);
        let tr = (u.adjoint() * &v).trace().re;
        assert!((frobenius_inner(&u, &v).unwrap() - tr).abs() < 1e-14);
    }

    #[test]
    fn exp_simple_cases() {
        let z = matrix_exp(&Matrix::zeros(3, Field::Real)).unwrap();
        assert_eq!(z, Matrix::identity(3, Field::Real));

        let d = matrix_exp(&Matrix::diag(&[0.3, -1.7])).unwrap();
        assert!((d.re(0, 0) - 0.3f64.exp()).abs() < 1e-15);
        assert!((d.re(1, 1) - (-1.7f64).exp()).abs() < 1e-15);
        assert_eq!(d.re(0, 1), 0.0);

        let nil = matrix_exp(&Matrix::real_rows([[0.0, 1.0], [0.0, 0.0]])).unwrap();
        let expected = Matrix::real_rows([[1.0, 1.0], [0.0, 1.0]]);
        assert!((nil - expected).max_abs() < 1e-15);
    }

    #[test]
    fn exp_rotation() {
        let t = 2.5;
        let j = Matrix::real_rows([[0.0, -t], [t, 0.0]]);
        let r = matrix_exp(&j).unwrap();
        let expected = Matrix::real_rows([[t.cos(), -t.sin()], [t.sin(), t.cos()]]);
        assert!((r - expected).max_abs() < 1e-14);
    }

    #[test]
    fn exp_large_norm_needs_squaring() {
        // diag(10, -10) forces several squarings.
        let d = matrix_exp(&Matrix::diag(&[10.0, -10.0])).unwrap();
        assert!(((d.re(0, 0) - 10f64.exp()) / 10f64.exp()).abs() < 1e-13);
        assert!(((d.re(1, 1) - (-10f64).exp()) / (-10f64).exp()).abs() < 1e-12);
    }

    #[test]
    fn exp_agrees_with_nalgebra() {
        for k in 0..20 {
            let u = random_element(Seed(100 + k), 4, Field::Complex).scale(2.0);
            let ours = matrix_exp(&u).unwrap();
            let reference = u.as_dmatrix().clone().exp();
            let err = (ours.as_dmatrix() - &reference).norm() / reference.norm();
            assert!(err < 1e-12, "trial {k}: {err:e}");
        }
    }

    #[test]
    fn exp_overflow() {
        let huge = Matrix::diag(&[1e6, 0.0]);
        assert_eq!(matrix_exp(&huge), Err(Error::Overflow));
    }

    #[test]
    fn random_is_deterministic_and_bounded() {
        let a = random_element(Seed(1), 3, Field::Real);
        assert_eq!(a, random_element(Seed(1), 3, Field::Real));
        assert_ne!(a, random_element(Seed(2), 3, Field::Real));
        let c = random_element(Seed(5), 6, Field::Complex);
        assert!(c.as_dmatrix().iter().all(|z| z.re.abs() <= 1.0 && z.im.abs() <= 1.0));
        assert!(a.as_dmatrix().iter().all(|z| z.re.abs() <= 1.0 && z.im == 0.0));
    }

    #[test]
    fn json_forms() {
        let u = Matrix::real_rows([[1.0, 2.5], [-3.0, 0.125]]);
        let text = serde_json::to_string(&u).unwrap();
        assert_eq!(text, r#"{"entries":[1.0,2.5,-3.0,0.125],"field":"real","n":2}"#);
        let back: Matrix = serde_json::from_str(&text).unwrap();
        assert_eq!(back, u);

        let rows: Matrix = serde_json::from_str(r#"{"n":2,"entries":[[1,2.5],[-3,0.125]]}"#).unwrap();
        assert_eq!(rows, u);

        let c: Matrix =
            serde_json::from_str(r#"{"n":1,"field":"complex","entries":[[0.5,-2]]}"#).unwrap();
        assert_eq!(c.get(0, 0), Complex64::new(0.5, -2.0));
        assert_eq!(c.to_json_value()["entries"][0], serde_json::json!([0.5, -2.0]));

        assert!(serde_json::from_str::<Matrix>(r#"{"n":2,"entries":[1,2,3]}"#).is_err());
        assert!(
            serde_json::from_str::<Matrix>(r#"{"n":1,"field":"real","entries":[[1,1]]}"#).is_err()
        );
    }
}
