//! Flat `key = value` experiment files.
//!
//! ```text
//! # comment
//! name = two_busemann
//! manifold = poincare
//! oracle = two-busemann
//! schedule = sqrt:c=0.5
//! x0 = 0.3+0.6i
//! max_iters = 1000
//! ```

use std::collections::BTreeMap;
use std::path::PathBuf;

use hypersub::solver::DEFAULT_STOP_GRAD_TOL;
use hypersub::{Manifold, OracleSpec, Point, SolveConfig, StepSchedule};
use num_complex::Complex64;
use thiserror::Error;

pub const KEYS: [&str; 15] = [
    "name",
    "manifold",
    "kappa",
    "oracle",
    "center",
    "radius",
    "anchor",
    "eta",
    "schedule",
    "x0",
    "max_iters",
    "record_every",
    "seed",
    "stop_grad_tol",
    "output_dir",
];

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("line {line}: expected `key = value`, got `{text}`")]
    Syntax { line: usize, text: String },
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: key `{key}` given twice")]
    DuplicateKey { line: usize, key: String },
    #[error("missing required key `{0}`")]
    Missing(&'static str),
    #[error("key `{key}`: {reason}")]
    Invalid { key: String, reason: String },
}

fn invalid(key: &str, reason: impl ToString) -> ConfigError {
    ConfigError::Invalid {
        key: key.to_string(),
        reason: reason.to_string(),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub name: String,
    pub solve: SolveConfig,
    pub output_dir: PathBuf,
}

/// Parses `a+bi`, `a-bi`, `bi`, `a`, with optional spaces.
pub fn parse_complex(s: &str) -> Option<Complex64> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return None;
    }
    let Some(body) = s.strip_suffix('i') else {
        return s.parse().ok().map(|re| Complex64::new(re, 0.0));
    };
    // sign that separates the parts: not leading, not part of an exponent
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&j| matches!(bytes[j], b'+' | b'-') && !matches!(bytes[j - 1], b'e' | b'E'));
    let imag = |t: &str| match t {
        "" | "+" => Some(1.0),
        "-" => Some(-1.0),
        t => t.parse().ok(),
    };
    match split {
        Some(j) => Some(Complex64::new(body[..j].parse().ok()?, imag(&body[j..])?)),
        None => Some(Complex64::new(0.0, imag(body)?)),
    }
}

fn parse_num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, ConfigError> {
    v.parse()
        .map_err(|_| invalid(key, format!("`{v}` is not a valid number")))
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut kv: BTreeMap<String, String> = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| ConfigError::Syntax {
                line: i + 1,
                text: raw.trim().to_string(),
            })?;
            let key = k.trim();
            if !KEYS.contains(&key) {
                return Err(ConfigError::UnknownKey {
                    line: i + 1,
                    key: key.to_string(),
                });
            }
            if kv.insert(key.to_string(), v.trim().to_string()).is_some() {
                return Err(ConfigError::DuplicateKey {
                    line: i + 1,
                    key: key.to_string(),
                });
            }
        }
        let get = |k: &str| kv.get(k).map(String::as_str);
        let required = |k: &'static str| get(k).ok_or(ConfigError::Missing(k));

        let manifold = match get("manifold").unwrap_or("poincare") {
            "poincare" => {
                if get("kappa").is_some() {
                    return Err(invalid("kappa", "only applies to manifold = scaled"));
                }
                Manifold::PoincareDisk
            }
            "scaled" => {
                let kappa: f64 = parse_num("kappa", required("kappa")?)?;
                Manifold::scaled_disk(kappa).map_err(|e| invalid("kappa", e))?
            }
            "euclidean" => {
                if get("kappa").is_some() {
                    return Err(invalid("kappa", "only applies to manifold = scaled"));
                }
                Manifold::EuclideanPlane
            }
            other => {
                return Err(invalid(
                    "manifold",
                    format!("`{other}` is not one of poincare, scaled, euclidean"),
                ))
            }
        };

        let oracle_name = required("oracle")?;
        let allowed: &[&str] = match oracle_name {
            "two-busemann" => &[],
            "ball-hinge" => &["center", "radius"],
            "distance" => &["anchor"],
            "busemann" => &["eta"],
            other => {
                return Err(invalid(
                    "oracle",
                    format!(
                        "unknown oracle `{other}` (known: {})",
                        hypersub::oracles::REGISTRY.join(", ")
                    ),
                ))
            }
        };
        for key in ["center", "radius", "anchor", "eta"] {
            if get(key).is_some() && !allowed.contains(&key) {
                return Err(invalid(
                    key,
                    format!("does not apply to oracle {oracle_name}"),
                ));
            }
        }
        let mut bad: Option<ConfigError> = None;
        let oracle = OracleSpec::from_name(oracle_name, |k| {
            let v = get(k)?;
            let z = parse_complex(v);
            if z.is_none() {
                bad.get_or_insert_with(|| {
                    invalid(k, format!("`{v}` is not a number of the form a+bi"))
                });
            }
            z
        });
        if let Some(e) = bad {
            return Err(e);
        }
        let key_for = |spec: &str| match spec {
            "ball-hinge" => "radius",
            "busemann" => "eta",
            _ => "oracle",
        };
        let oracle = oracle.map_err(|e| invalid(key_for(oracle_name), e))?;
        match oracle {
            OracleSpec::BallHinge { center, .. } => check_point(&manifold, "center", center)?,
            OracleSpec::Distance { anchor } => check_point(&manifold, "anchor", anchor)?,
            _ => {}
        }

        let schedule: StepSchedule = required("schedule")?
            .parse()
            .map_err(|e| invalid("schedule", e))?;
        let x0_text = required("x0")?;
        let x0 = parse_complex(x0_text).ok_or_else(|| {
            invalid(
                "x0",
                format!("`{x0_text}` is not a number of the form a+bi"),
            )
        })?;
        let x0 = manifold.point(x0.re, x0.im).map_err(|e| invalid("x0", e))?;

        let mut solve = SolveConfig::new(manifold, oracle, schedule, x0);
        if let Some(v) = get("max_iters") {
            solve.max_iters = parse_num("max_iters", v)?;
        }
        if let Some(v) = get("record_every") {
            solve.record_every = parse_num("record_every", v)?;
        }
        if let Some(v) = get("seed") {
            solve.seed = parse_num("seed", v)?;
        }
        solve.stop_grad_tol = match get("stop_grad_tol") {
            Some(v) => parse_num("stop_grad_tol", v)?,
            None => DEFAULT_STOP_GRAD_TOL,
        };
        solve.validate().map_err(|e| {
            let key = match e {
                hypersub::SolveError::NoIterations => "max_iters",
                hypersub::SolveError::ZeroRecordEvery => "record_every",
                hypersub::SolveError::BadStopTolerance(_) => "stop_grad_tol",
                _ => "x0",
            };
            invalid(key, e)
        })?;

        let name = get("name").unwrap_or("run").to_string();
        if name.is_empty() || name.contains(['/', '\\']) {
            return Err(invalid("name", "must be a nonempty file stem"));
        }
        Ok(ExperimentConfig {
            name,
            solve,
            output_dir: PathBuf::from(get("output_dir").unwrap_or(".")),
        })
    }
}

fn check_point(m: &Manifold, key: &str, p: Point) -> Result<(), ConfigError> {
    m.point(p.x, p.y).map(|_| ()).map_err(|e| invalid(key, e))
}
