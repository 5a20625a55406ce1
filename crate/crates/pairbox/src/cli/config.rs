//! Run configuration: defaults, config-file parsing (key=value lines) and
//! flag overrides.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::solver::{PencilForm, ProblemConfig, Regularization};
use crate::symmetry::IrrepLabel;

/// Everything a command needs, echoed verbatim into the manifest.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub n: usize,
    pub m: usize,
    pub omega2_half: f64,
    pub b: f64,
    pub coulomb_c: f64,
    pub gamma_p: Ratio<i64>,
    pub regularization: Regularization,
    pub pencil_form: PencilForm,
    pub irrep_filter: Option<Vec<IrrepLabel>>,
    pub output_dir: PathBuf,
    pub threads: Option<usize>,
    pub memory_budget: u64,
    pub eta: f64,
    pub occupied: (usize, usize),
    pub use_cache: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            n: 30,
            m: 8,
            omega2_half: 500.0,
            b: 1.0,
            coulomb_c: 0.0,
            gamma_p: Ratio::new(23, 3840),
            regularization: Regularization::Excluded,
            pencil_form: PencilForm::NSandwich,
            irrep_filter: None,
            output_dir: PathBuf::from("out"),
            threads: None,
            memory_budget: 2 * 1024 * 1024 * 1024,
            eta: 0.01,
            occupied: (0, 0),
            use_cache: true,
        }
    }
}

/// Parse a rational like "23/3840" or a plain integer.
pub fn parse_rational(s: &str) -> Result<Ratio<i64>> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n: i64 = num.trim().parse().map_err(|_| bad_rational(s))?;
        let d: i64 = den.trim().parse().map_err(|_| bad_rational(s))?;
        if d == 0 {
            return Err(bad_rational(s));
        }
        Ok(Ratio::new(n, d))
    } else {
        let n: i64 = s.parse().map_err(|_| bad_rational(s))?;
        Ok(Ratio::from_integer(n))
    }
}

fn bad_rational(s: &str) -> Error {
    Error::InvalidArgument(format!("expected a rational like 23/3840, got {s:?}"))
}

/// Parse an irrep list like "G11,G23".
pub fn parse_irrep_filter(s: &str) -> Result<Vec<IrrepLabel>> {
    s.split(',')
        .map(|part| IrrepLabel::parse(part.trim()))
        .collect()
}

/// Read a key=value config file; '#' starts a comment.
pub fn read_config_file(path: &Path) -> Result<BTreeMap<String, String>> {
    let text = std::fs::read_to_string(path)?;
    let mut out = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::InvalidArgument(format!(
                "{}:{}: expected key=value, got {raw:?}",
                path.display(),
                lineno + 1
            ))
        })?;
        out.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(out)
}

impl RunConfig {
    /// Apply one key from a config file.
    pub fn apply_key(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "n" => self.n = parse_usize(key, value)?,
            "m" => self.m = parse_usize(key, value)?,
            "omega2_half" => self.omega2_half = parse_f64(key, value)?,
            "b" => self.b = parse_f64(key, value)?,
            "coulomb_c" | "c" => self.coulomb_c = parse_f64(key, value)?,
            "gamma_prime" => self.gamma_p = parse_rational(value)?,
            "regularization" => self.regularization = Regularization::parse(value)?,
            "pencil_form" => self.pencil_form = PencilForm::parse(value)?,
            "irreps" => self.irrep_filter = Some(parse_irrep_filter(value)?),
            "output_dir" => self.output_dir = PathBuf::from(value),
            "threads" => self.threads = Some(parse_usize(key, value)?),
            "memory_budget" => self.memory_budget = parse_u64(key, value)?,
            "eta" => self.eta = parse_f64(key, value)?,
            "occupied" => {
                let (a, b) = value.split_once(',').ok_or_else(|| {
                    Error::InvalidArgument(format!("occupied expects m1,m2, got {value:?}"))
                })?;
                self.occupied = (parse_usize(key, a.trim())?, parse_usize(key, b.trim())?);
            }
            "cache" => self.use_cache = parse_bool(key, value)?,
            other => {
                return Err(Error::InvalidArgument(format!(
                    "unknown config key {other:?}"
                )))
            }
        }
        Ok(())
    }

    pub fn problem(&self) -> ProblemConfig {
        ProblemConfig {
            n: self.n,
            m: self.m,
            omega2_half: self.omega2_half,
            b: self.b,
            coulomb_c: self.coulomb_c,
            gamma_p: self.gamma_p,
            regularization: self.regularization,
            pencil_form: self.pencil_form,
            memory_budget: self.memory_budget,
        }
    }

    /// Stable string of the physics-affecting knobs, used as the cache key.
    pub fn physics_key(&self) -> String {
        format!(
            "n={};m={};omega2_half={:.17e};b={:.17e};c={:.17e};gamma_prime={}/{};reg={};form={}",
            self.n,
            self.m,
            self.omega2_half,
            self.b,
            self.coulomb_c,
            self.gamma_p.numer(),
            self.gamma_p.denom(),
            self.regularization.name(),
            self.pencil_form.name()
        )
    }
}

fn parse_usize(key: &str, value: &str) -> Result<usize> {
    value
        .parse()
        .map_err(|_| Error::InvalidArgument(format!("{key} expects an integer, got {value:?}")))
}

fn parse_u64(key: &str, value: &str) -> Result<u64> {
    value
        .parse()
        .map_err(|_| Error::InvalidArgument(format!("{key} expects an integer, got {value:?}")))
}

fn parse_f64(key: &str, value: &str) -> Result<f64> {
    value
        .parse()
        .map_err(|_| Error::InvalidArgument(format!("{key} expects a number, got {value:?}")))
}

fn parse_bool(key: &str, value: &str) -> Result<bool> {
    match value {
        "true" | "1" | "yes" => Ok(true),
        "false" | "0" | "no" => Ok(false),
        _ => Err(Error::InvalidArgument(format!(
            "{key} expects true/false, got {value:?}"
        ))),
    }
}
