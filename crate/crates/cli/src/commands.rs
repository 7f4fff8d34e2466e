use std::fmt::Write as _;
use std::fs;

use liecurv_core::curvature::commuting_threshold;
use liecurv_core::geodesic::experimental;
use liecurv_core::tolerance;
use liecurv_core::{
    quartic_commuting, quartic_special, sectional, totally_geodesic_check, CartanStructure, Error, Field, Matrix,
    Sampler, SubgroupSpec,
};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::{CliConfig, Command, Format, Regime};
use crate::verify;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DEGENERATE: i32 = 3;
pub const EXIT_TANGENT: i32 = 4;

/// What a command produced: the exit code and the text for `--out`/stdout.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub body: String,
}

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::DegenerateSection { .. } => EXIT_DEGENERATE,
            Error::TangentNotInAlgebra { .. } => EXIT_TANGENT,
            Error::Overflow | Error::NotCommuting { .. } | Error::NotPureType { .. } => EXIT_FAIL,
            _ => EXIT_USAGE,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub fn run(cfg: &CliConfig) -> CliResult<Outcome> {
    match cfg.command {
        Command::Section => cmd_section(cfg),
        Command::Verify => cmd_verify(cfg),
        Command::Sample => cmd_sample(cfg),
        Command::Geodesic => cmd_geodesic(cfg),
        Command::Subgroup => cmd_subgroup(cfg),
    }
}

/// Reads a matrix given inline (starts with `{` or `[`) or as a file path.
pub fn load_matrix(arg: &str) -> CliResult<Matrix> {
    let text = if arg.trim_start().starts_with(['{', '[']) {
        arg.to_string()
    } else {
        fs::read_to_string(arg).map_err(|e| CliError::usage(format!("cannot read {arg}: {e}")))?
    };
    let value: Value =
        serde_json::from_str(&text).map_err(|e| CliError::usage(format!("invalid JSON in {arg}: {e}")))?;
    Ok(Matrix::from_json_value(&value)?)
}

fn required_matrix(arg: &Option<String>, flag: &str) -> CliResult<Matrix> {
    let arg = arg
        .as_deref()
        .ok_or_else(|| CliError::usage(format!("--{flag} is required")))?;
    load_matrix(arg)
}

/// Structure from `--structure`, or `gl:<field>:<n>` matching `like`.
fn structure_for(cfg: &CliConfig, like: Option<&Matrix>) -> CliResult<CartanStructure> {
    match (&cfg.structure, like) {
        (Some(sel), _) => Ok(CartanStructure::parse(sel)?),
        (None, Some(m)) => Ok(match m.field() {
            Field::Real => CartanStructure::gl_real(m.n()),
            Field::Complex => CartanStructure::gl_complex(m.n()),
        }),
        (None, None) => Ok(CartanStructure::gl_real(3)),
    }
}

pub(crate) fn to_json(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable report");
    s.push('\n');
    s
}

pub fn cmd_section(cfg: &CliConfig) -> CliResult<Outcome> {
    let u = required_matrix(&cfg.u, "u")?;
    let v = required_matrix(&cfg.v, "v")?;
    let s = structure_for(cfg, Some(&u))?;
    s.check(&u)?;
    s.check(&v)?;
    let report = sectional(&s, &u, &v)?;
    let bracket_norm_sq = s.norm_sq(&(&(&u * &v) - &(&v * &u)));

    let tol = cfg.tol.unwrap_or(tolerance::COMMUTING);
    let (case, special) = match quartic_commuting(&s, &u, &v, tol) {
        Ok(val) => (Some("commuting".to_string()), Some(val)),
        Err(_) => match quartic_special(&s, &u, &v) {
            Ok((val, tag)) => (Some(tag.tag().to_string()), Some(val)),
            Err(_) => (None, None),
        },
    };

    let body = json!({
        "structure": s.name(),
        "quartic": report.quartic,
        "area_sq": report.area_sq,
        "sectional": report.sectional,
        "term_pp": report.term_pp,
        "term_mixed": report.term_mixed,
        "term_cross": report.term_cross,
        "bracket_norm_sq": bracket_norm_sq,
        "commuting_threshold": commuting_threshold(&s, &u, &v, tol),
        "case": case,
        "special_value": special,
    });
    Ok(Outcome {
        code: EXIT_OK,
        body: to_json(&body),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SampleRow {
    pub seed_index: u64,
    pub case_tag: &'static str,
    pub quartic: f64,
    pub area_sq: f64,
    pub sectional: f64,
}

fn regime_for(regime: Regime, index: u64) -> Regime {
    match regime {
        Regime::All => [Regime::Pp, Regime::Kk, Regime::Pk, Regime::General][(index % 4) as usize],
        r => r,
    }
}

fn regime_tag(regime: Regime) -> &'static str {
    match regime {
        Regime::Pp => "p,p",
        Regime::Kk => "k,k",
        Regime::Pk => "p,k",
        Regime::General => "general",
        Regime::All => "all",
    }
}

/// One row per trial; trial `i` draws from seed `seed + i`.
pub fn sample_rows(s: &CartanStructure, seed: u64, trials: usize, regime: Regime) -> Vec<SampleRow> {
    (0..trials as u64)
        .into_par_iter()
        .map(|i| {
            let mut sm = Sampler::new(liecurv_core::Seed(seed).split(i));
            let r = regime_for(regime, i);
            let (u, v) = match r {
                Regime::Pp => (s.random_p(&mut sm), s.random_p(&mut sm)),
                Regime::Kk => (s.random_k(&mut sm), s.random_k(&mut sm)),
                Regime::Pk => (s.random_p(&mut sm), s.random_k(&mut sm)),
                _ => (s.random_element(&mut sm), s.random_element(&mut sm)),
            };
            let (quartic, area_sq, sectional) = match sectional(s, &u, &v) {
                Ok(rep) => (rep.quartic, rep.area_sq, rep.sectional),
                Err(_) => {
                    let q = liecurv_core::quartic(s, &u, &v).unwrap_or(f64::NAN);
                    let area = s.norm_sq(&u) * s.norm_sq(&v) - s.inner(&u, &v).powi(2);
                    (q, area, f64::NAN)
                }
            };
            SampleRow {
                seed_index: i,
                case_tag: regime_tag(r),
                quartic,
                area_sq,
                sectional,
            }
        })
        .collect()
}

pub fn cmd_sample(cfg: &CliConfig) -> CliResult<Outcome> {
    if cfg.trials == 0 {
        return Err(CliError::usage("--trials must be at least 1"));
    }
    let s = structure_for(cfg, None)?;
    let rows = sample_rows(&s, cfg.seed, cfg.trials, cfg.regime);
    let body = match cfg.format.unwrap_or(Format::Csv) {
        Format::Json => to_json(&rows),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for row in &rows {
                w.serialize(row).map_err(|e| CliError::usage(e.to_string()))?;
            }
            String::from_utf8(w.into_inner().map_err(|e| CliError::usage(e.to_string()))?)
                .expect("csv output is utf-8")
        }
    };
    Ok(Outcome { code: EXIT_OK, body })
}

pub fn cmd_geodesic(cfg: &CliConfig) -> CliResult<Outcome> {
    let u = required_matrix(&cfg.u, "u")?;
    let s = structure_for(cfg, Some(&u))?;
    s.check(&u)?;
    let steps = cfg.steps.unwrap_or(9).max(2);
    let general = u.field() != Field::Real || !s.name().starts_with("gl:real:");
    if general && !cfg.experimental {
        return Err(CliError::usage(format!(
            "the closed-form geodesic is for gl:real structures; pass --experimental to use the generalized formula on {}",
            s.name()
        )));
    }

    let mut samples = Vec::with_capacity(steps);
    for i in 0..steps {
        let t = cfg.t_max * i as f64 / (steps - 1) as f64;
        let (gamma, omega, residual) = if general {
            (
                experimental::geodesic_point_general(&s, &u, t)?,
                experimental::body_velocity_general(&s, &u, t)?,
                experimental::geodesic_residual_general(&s, &u, t, cfg.h)?,
            )
        } else {
            (
                liecurv_core::geodesic_point(&u, t)?,
                liecurv_core::geodesic_body_velocity(&u, t)?,
                liecurv_core::geodesic_residual(&s, &u, t, cfg.h)?,
            )
        };
        samples.push(liecurv_core::GeodesicSample {
            t,
            gamma,
            omega,
            residual,
        });
    }
    let max_residual = samples.iter().map(|x| x.residual).fold(0.0, f64::max);
    let limit = cfg.tol.unwrap_or(verify::GEODESIC_RESIDUAL);
    let ok = max_residual <= limit;
    let code = if ok { EXIT_OK } else { EXIT_FAIL };

    let body = match cfg.format.unwrap_or(Format::Json) {
        Format::Json => to_json(&json!({
            "structure": s.name(),
            "formula": if general { "experimental" } else { "gl:real" },
            "t_max": cfg.t_max,
            "steps": steps,
            "h": cfg.h,
            "max_residual": max_residual,
            "residual_limit": limit,
            "residual_ok": ok,
            "samples": samples,
        })),
        Format::Csv => {
            let mut out = String::from("t,residual,gamma,omega\n");
            for x in &samples {
                writeln!(out, "{},{},{},{}", x.t, x.residual, flat(&x.gamma), flat(&x.omega)).unwrap();
            }
            out
        }
    };
    Ok(Outcome { code, body })
}

// Row-major entries joined by ';' (complex entries as re+imi).
fn flat(m: &Matrix) -> String {
    let mut parts = Vec::with_capacity(m.n() * m.n());
    for i in 0..m.n() {
        for j in 0..m.n() {
            let z = m.get(i, j);
            parts.push(match m.field() {
                Field::Real => format!("{}", z.re),
                Field::Complex => format!("{}{:+}i", z.re, z.im),
            });
        }
    }
    parts.join(";")
}

pub fn cmd_subgroup(cfg: &CliConfig) -> CliResult<Outcome> {
    let sel = cfg
        .group
        .as_deref()
        .ok_or_else(|| CliError::usage("--group is required"))?;
    let spec = SubgroupSpec::parse(sel)?;
    let u = required_matrix(&cfg.u, "u")?;
    let steps = cfg.steps.unwrap_or(tolerance::DEFAULT_GRID);
    let report = totally_geodesic_check(&spec, &u, cfg.t_max, steps)?;
    let code = if report.passed { EXIT_OK } else { EXIT_FAIL };
    Ok(Outcome {
        code,
        body: to_json(&report),
    })
}

pub fn cmd_verify(cfg: &CliConfig) -> CliResult<Outcome> {
    let structure = match &cfg.structure {
        Some(sel) => Some(CartanStructure::parse(sel)?),
        None => None,
    };
    let options = verify::VerifyOptions {
        structure,
        seed: cfg.seed,
        trials: cfg.trials.max(1),
        tol_override: cfg.tol,
    };
    let cert = verify::run_all(&options);
    let code = if cert.passed { EXIT_OK } else { EXIT_FAIL };
    Ok(Outcome {
        code,
        body: to_json(&cert),
    })
}
