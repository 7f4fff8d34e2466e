//! The verification battery behind `liecurv verify`.
//!
//! Each suite reduces to one number, its worst violation, compared against a
//! fixed tolerance; the certificate passes when every suite does. One-sided
//! checks (sign theorems, strict negativity) report how far the worst sample
//! lands on the wrong side, so a clean run shows zero.

use std::time::Instant;

use liecurv_core::geodesic::experimental;
use liecurv_core::oracle::{curvature_from_definition, nabla_from_metric};
use liecurv_core::tolerance::{rel_err, COMMUTING};
use liecurv_core::{
    bracket_norm_identity_gap, commuting_pair_in, geodesic_residual, matrix_exp, quartic, quartic_commuting,
    quartic_from_definition, quartic_special, totally_geodesic_check, validate_with, CartanStructure, Field,
    Matrix, OrthonormalBasis, Sampler, Seed, SubgroupSpec,
};
use rayon::prelude::*;
use serde::Serialize;

pub const EXAMPLE_2X2: f64 = 1e-10;
pub const EXAMPLE_3X3_BRACKET: f64 = 1e-13;
pub const EXAMPLE_3X3_FORMULA: f64 = 1e-12;
/// The 3x3 commuting pair must have quartic below this.
pub const EXAMPLE_3X3_CEILING: f64 = -0.1;
pub const ORACLE_AGREEMENT: f64 = 1e-8;
pub const NABLA_AGREEMENT: f64 = 1e-11;
pub const SIGN: f64 = 1e-12;
pub const SPECIAL_GP: f64 = 1e-10;
pub const BRACKET_IDENTITY: f64 = 1e-12;
pub const CROSS_TERM: f64 = 1e-10;
pub const GEODESIC_RESIDUAL: f64 = 1e-6;
pub const SUBGROUP_DEFECT: f64 = 1e-9;
/// The UT(3) control must leave the group by at least this much.
pub const UT_ESCAPE: f64 = 1e-3;
pub const COMMUTING_FORMULA: f64 = 1e-12;
pub const FLAT_2X2: f64 = 1e-12;
pub const SYMMETRIC_IFF: f64 = 1e-10;

const GEODESIC_TANGENTS: usize = 100;
const SUBGROUP_TANGENTS: usize = 20;
const SYMMETRIC_PAIRS: usize = 200;

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    /// `None` runs the standard battery (gl:real:2..4 and gl:complex:2).
    pub structure: Option<CartanStructure>,
    pub seed: u64,
    pub trials: usize,
    pub tol_override: Option<f64>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            structure: None,
            seed: 42,
            trials: 500,
            tol_override: None,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteResult {
    pub name: String,
    pub max_error: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub samples: usize,
    pub seconds: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Certificate {
    pub seed: u64,
    pub trials: usize,
    pub passed: bool,
    pub failed: Vec<String>,
    pub seconds: f64,
    pub suites: Vec<SuiteResult>,
}

impl Certificate {
    pub fn suite(&self, name: &str) -> Option<&SuiteResult> {
        self.suites.iter().find(|s| s.name == name)
    }
}

struct Runner {
    tol_override: Option<f64>,
    suites: Vec<SuiteResult>,
}

impl Runner {
    fn run(&mut self, name: impl Into<String>, tolerance: f64, f: impl FnOnce() -> (f64, usize)) {
        let start = Instant::now();
        let (max_error, samples) = f();
        let tolerance = self.tol_override.unwrap_or(tolerance);
        self.suites.push(SuiteResult {
            name: name.into(),
            max_error,
            tolerance,
            // NaN never passes.
            passed: max_error <= tolerance,
            samples,
            seconds: start.elapsed().as_secs_f64(),
        });
    }
}

fn worst(values: impl ParallelIterator<Item = f64>) -> f64 {
    values.reduce(|| 0.0, |a, b| if a.is_nan() || b.is_nan() { f64::NAN } else { a.max(b) })
}

pub fn example_pair_2x2() -> (Matrix, Matrix) {
    let h = 7f64.sqrt() / 2.0;
    (
        Matrix::real_rows([[1.0, h], [-h, 2.0]]),
        Matrix::real_rows([[0.0, 1.0], [1.0, 0.0]]),
    )
}

pub fn example_pair_3x3() -> (Matrix, Matrix) {
    (
        Matrix::real_rows([[1.0, 1.0, -1.0], [1.0, 1.0, 0.0], [2.0, 0.0, 1.0]]),
        Matrix::real_rows([[0.0, -1.0, 1.0], [-1.0, 2.0, -1.0], [-2.0, 2.0, -1.0]]),
    )
}

fn scale_of(u: &Matrix, v: &Matrix) -> f64 {
    u.norm_sq() * v.norm_sq()
}

fn sampler(seed: u64, salt: u64, i: usize) -> Sampler {
    // Distinct suites draw from disjoint streams.
    Sampler::new(Seed(seed).split(salt.wrapping_mul(1_000_003)).split(i as u64))
}

fn oracle_sweep(s: &CartanStructure, seed: u64, salt: u64, count: usize) -> (f64, usize) {
    let basis = OrthonormalBasis::standard(s).expect("standard basis");
    let err = worst((0..count).into_par_iter().map(|i| {
        let mut sm = sampler(seed, salt, i);
        let u = s.random_element(&mut sm);
        let v = s.random_element(&mut sm);
        let closed = quartic(s, &u, &v).unwrap();
        let oracle = quartic_from_definition(s, &u, &v, &basis).unwrap();
        rel_err(closed, oracle, scale_of(&u, &v))
    }));
    (err, count)
}

fn nabla_sweep(s: &CartanStructure, seed: u64, salt: u64, count: usize) -> (f64, usize) {
    let basis = OrthonormalBasis::standard(s).expect("standard basis");
    let err = worst((0..count).into_par_iter().map(|i| {
        let mut sm = sampler(seed, salt, i);
        let u = s.random_element(&mut sm);
        let v = s.random_element(&mut sm);
        let a = nabla_from_metric(s, &u, &v, &basis).unwrap();
        let b = liecurv_core::nabla(s, &u, &v).unwrap();
        (a - b).norm() / (u.norm() * v.norm()).max(1e-14)
    }));
    (err, count)
}

#[derive(Clone, Copy)]
enum SignRegime {
    PP,
    KK,
    PK,
    GK,
}

fn sign_sweep(s: &CartanStructure, seed: u64, salt: u64, count: usize, regime: SignRegime) -> (f64, usize) {
    let err = worst((0..count).into_par_iter().map(|i| {
        let mut sm = sampler(seed, salt, i);
        let (u, v) = match regime {
            SignRegime::PP => (s.random_p(&mut sm), s.random_p(&mut sm)),
            SignRegime::KK => (s.random_k(&mut sm), s.random_k(&mut sm)),
            SignRegime::PK => (s.random_p(&mut sm), s.random_k(&mut sm)),
            SignRegime::GK => (s.random_element(&mut sm), s.random_k(&mut sm)),
        };
        let q = quartic(s, &u, &v).unwrap();
        match regime {
            SignRegime::PP => q.max(0.0),
            _ => (-q).max(0.0),
        }
    }));
    (err, count)
}

fn geodesic_sweep(s: &CartanStructure, seed: u64, salt: u64) -> (f64, usize) {
    let general = s.field() != Field::Real || !s.name().starts_with("gl:real:");
    let times: Vec<f64> = (0..=8).map(|k| 0.25 * k as f64).collect();
    let err = worst((0..GEODESIC_TANGENTS).into_par_iter().map(|i| {
        let mut sm = sampler(seed, salt, i);
        let raw = s.random_element(&mut sm);
        let radius = sm.uniform(0.0, 2.0);
        let u = raw.scale(radius / s.norm(&raw).max(1e-300));
        times
            .iter()
            .map(|&t| {
                if general {
                    experimental::geodesic_residual_general(s, &u, t, liecurv_core::tolerance::FD_STEP).unwrap()
                } else {
                    geodesic_residual(s, &u, t, liecurv_core::tolerance::FD_STEP).unwrap()
                }
            })
            .fold(0.0, f64::max)
    }));
    (err, GEODESIC_TANGENTS * times.len())
}

fn subgroup_sweep(spec: &SubgroupSpec, seed: u64, salt: u64) -> (f64, usize) {
    let err = worst((0..SUBGROUP_TANGENTS).into_par_iter().map(|i| {
        let mut sm = sampler(seed, salt, i);
        let raw = (spec.to_algebra)(&sm.element(spec.n, Field::Real));
        let u = raw.scale(1.0 / raw.norm().max(1e-300));
        totally_geodesic_check(spec, &u, 2.0, liecurv_core::tolerance::DEFAULT_GRID)
            .map(|r| r.max_defect)
            .unwrap_or(f64::INFINITY)
    }));
    (err, SUBGROUP_TANGENTS)
}

fn symmetric_iff(seed: u64, salt: u64) -> (f64, usize) {
    let s = CartanStructure::gl_real(3);
    let mismatches: usize = (0..SYMMETRIC_PAIRS)
        .into_par_iter()
        .map(|i| {
            let mut sm = sampler(seed, salt, i);
            let (u, v) = if i % 2 == 0 {
                (s.random_p(&mut sm), s.random_p(&mut sm))
            } else {
                let q = matrix_exp(&s.random_k(&mut sm)).unwrap();
                let mut d = || Matrix::diag(&[sm.uniform(-1.0, 1.0), sm.uniform(-1.0, 1.0), sm.uniform(-1.0, 1.0)]);
                let (d1, d2) = (d(), d());
                (&q * &d1 * q.transpose(), &q * &d2 * q.transpose())
            };
            let commutes = s.norm(&(&(&u * &v) - &(&v * &u))) <= SYMMETRIC_IFF;
            let flat = quartic(&s, &u, &v).unwrap().abs() <= SYMMETRIC_IFF * scale_of(&u, &v).max(1.0);
            usize::from(commutes != flat)
        })
        .sum();
    (mismatches as f64, SYMMETRIC_PAIRS)
}

/// Runs every suite and assembles the certificate.
pub fn run_all(opts: &VerifyOptions) -> Certificate {
    let start = Instant::now();
    let seed = opts.seed;
    let trials = opts.trials.max(1);
    let mut r = Runner {
        tol_override: opts.tol_override,
        suites: Vec::new(),
    };

    let generic: Vec<CartanStructure> = match &opts.structure {
        Some(s) => vec![s.clone()],
        None => vec![CartanStructure::gl_real(3), CartanStructure::gl_complex(2)],
    };
    let primary = generic[0].clone();

    for s in &generic {
        let tol = opts.tol_override.unwrap_or(liecurv_core::tolerance::VALIDATOR_TOL);
        r.run(format!("structure_validation:{}", s.name()), tol, || {
            let rep = validate_with(s, Seed(seed), 100, tol);
            let err = if rep.passed() { rep.max_error() } else { f64::INFINITY };
            (err, rep.trials)
        });
    }

    r.run("example_2x2_zero_curvature", EXAMPLE_2X2, || {
        let s = CartanStructure::gl_real(2);
        let (u, v) = example_pair_2x2();
        let q = quartic(&s, &u, &v).unwrap();
        let b = s.norm_sq(&(&(&u * &v) - &(&v * &u)));
        (q.abs().max((b - 16.0).abs()), 1)
    });

    let s3 = CartanStructure::gl_real(3);
    let (u3, v3) = example_pair_3x3();
    r.run("example_3x3_commuting_bracket", EXAMPLE_3X3_BRACKET, || {
        (s3.norm(&(&(&u3 * &v3) - &(&v3 * &u3))), 1)
    });
    r.run("example_3x3_commuting_formula", EXAMPLE_3X3_FORMULA, || {
        let q = quartic(&s3, &u3, &v3).unwrap();
        let c = quartic_commuting(&s3, &u3, &v3, COMMUTING).unwrap();
        (rel_err(q, c, c.abs()), 1)
    });
    r.run("example_3x3_negative", 0.0, || {
        let q = quartic(&s3, &u3, &v3).unwrap();
        ((q - EXAMPLE_3X3_CEILING).max(0.0), 1)
    });

    let oracle_targets: Vec<(CartanStructure, usize)> = match &opts.structure {
        Some(s) => vec![(s.clone(), trials)],
        None => vec![
            (CartanStructure::gl_real(2), 2 * trials),
            (CartanStructure::gl_real(3), 2 * trials),
            (CartanStructure::gl_real(4), 2 * trials),
            (CartanStructure::gl_complex(2), trials),
        ],
    };
    for (k, (s, count)) in oracle_targets.iter().enumerate() {
        r.run(format!("oracle_quartic:{}", s.name()), ORACLE_AGREEMENT, || {
            oracle_sweep(s, seed, 10 + k as u64, *count)
        });
    }
    for (k, s) in generic.iter().enumerate() {
        r.run(format!("oracle_nabla:{}", s.name()), NABLA_AGREEMENT, || {
            nabla_sweep(s, seed, 20 + k as u64, trials)
        });
    }

    let p = &primary;
    r.run(format!("sign_pp_nonpositive:{}", p.name()), SIGN, || sign_sweep(p, seed, 30, trials, SignRegime::PP));
    r.run(format!("sign_kk_nonnegative:{}", p.name()), SIGN, || sign_sweep(p, seed, 31, trials, SignRegime::KK));
    r.run(format!("sign_pk_nonnegative:{}", p.name()), SIGN, || sign_sweep(p, seed, 32, trials, SignRegime::PK));
    r.run(format!("sign_gk_nonnegative:{}", p.name()), SIGN, || sign_sweep(p, seed, 33, trials, SignRegime::GK));
    r.run(format!("special_gp_formula:{}", p.name()), SPECIAL_GP, || {
        let err = worst((0..trials).into_par_iter().map(|i| {
            let mut sm = sampler(seed, 34, i);
            let u = p.random_element(&mut sm);
            let v = p.random_p(&mut sm);
            let (val, _) = quartic_special(p, &u, &v).unwrap();
            rel_err(val, quartic(p, &u, &v).unwrap(), scale_of(&u, &v))
        }));
        (err, trials)
    });

    r.run(format!("bracket_norm_identity:{}", p.name()), BRACKET_IDENTITY, || {
        let err = worst((0..trials).into_par_iter().map(|i| {
            let mut sm = sampler(seed, 40, i);
            let u = p.random_element(&mut sm);
            let v = p.random_element(&mut sm);
            let gap = bracket_norm_identity_gap(p, &u, &v).unwrap();
            gap.abs() / (scale_of(&u, &v) + 1.0)
        }));
        (err, trials)
    });

    r.run(format!("cross_term_vanishes:{}", p.name()), CROSS_TERM, || {
        let basis = OrthonormalBasis::standard(p).expect("standard basis");
        let err = worst((0..trials).into_par_iter().map(|i| {
            let mut sm = sampler(seed, 41, i);
            let u = p.random_element(&mut sm);
            let v = if i % 2 == 0 { p.random_p(&mut sm) } else { p.random_k(&mut sm) };
            let split = p.theta_split(&u).unwrap();
            let r1 = curvature_from_definition(p, &split.p_part, &v, &v, &basis).unwrap();
            let r2 = curvature_from_definition(p, &split.k_part, &v, &v, &basis).unwrap();
            let a = p.inner(&r1, &split.k_part).abs();
            let b = p.inner(&r2, &split.p_part).abs();
            a.max(b) / (u.norm_sq() * v.norm_sq()).max(1e-14)
        }));
        (err, trials)
    });

    r.run(format!("commuting_nonpositive:{}", p.name()), COMMUTING_FORMULA, || {
        let n = p.n().max(2);
        let err = worst((0..trials).into_par_iter().map(|i| {
            let (u, v) = commuting_pair_in(Seed(seed).split(50_000 + i as u64), n, 1 + i % 4, p.field());
            let q = quartic(p, &u, &v).unwrap();
            let c = match quartic_commuting(p, &u, &v, COMMUTING) {
                Ok(c) => c,
                Err(_) => return f64::INFINITY,
            };
            (q - c).abs().max(q.max(0.0))
        }));
        (err, trials)
    });

    r.run("commuting_2x2_flat:gl:real:2", FLAT_2X2, || {
        let s2 = CartanStructure::gl_real(2);
        let err = worst((0..trials).into_par_iter().map(|i| {
            let (u, v) = commuting_pair_in(Seed(seed).split(60_000 + i as u64), 2, 1 + i % 4, Field::Real);
            quartic(&s2, &u, &v).unwrap().abs()
        }));
        (err, trials)
    });

    r.run("symmetric_iff:gl:real:3", 0.0, || symmetric_iff(seed, 70));

    let geo = match &opts.structure {
        Some(s) => s.clone(),
        None => CartanStructure::gl_real(3),
    };
    r.run(format!("geodesic_residual:{}", geo.name()), GEODESIC_RESIDUAL, || geodesic_sweep(&geo, seed, 80));

    for (k, spec) in [
        SubgroupSpec::special_orthogonal(3),
        SubgroupSpec::special_linear(2),
        SubgroupSpec::indefinite_orthogonal(1, 2),
    ]
    .iter()
    .enumerate()
    {
        r.run(format!("totally_geodesic:{}", spec.name), SUBGROUP_DEFECT, || {
            subgroup_sweep(spec, seed, 90 + k as u64)
        });
    }
    r.run("totally_geodesic_control:UT(3)", 0.0, || {
        let ut = SubgroupSpec::upper_triangular(3);
        let e12 = Matrix::unit(3, 0, 1, Field::Real);
        let rep = totally_geodesic_check(&ut, &e12, 2.0, liecurv_core::tolerance::DEFAULT_GRID).unwrap();
        ((UT_ESCAPE - rep.max_defect).max(0.0), rep.samples)
    });

    let failed: Vec<String> = r.suites.iter().filter(|s| !s.passed).map(|s| s.name.clone()).collect();
    Certificate {
        seed,
        trials,
        passed: failed.is_empty(),
        failed,
        seconds: start.elapsed().as_secs_f64(),
        suites: r.suites,
    }
}
