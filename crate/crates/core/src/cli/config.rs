//! INI problem files.
//!
//! ```ini
//! [problem]
//! group = heisenberg          ; euclidean | aff2 | heisenberg | sl2
//! derivation = 0 0 0; 1 0 0; 0 0 0
//! delta = 1 0 0; 0 0 1
//!
//! [geodesic]
//! point = 0 0 0
//! covector = 1 0.7 0.4
//! T = 5
//! ```
//!
//! `dim` is required for `euclidean`. For `sl2` the derivation may be given
//! as `inner h x y`, meaning `−ad(hH + xX + yY)`. A `fixture = <name>` key
//! replaces the other `[problem]` keys.

use std::path::Path;

use ini::Ini;
use num_rational::Rational64;

use super::CliError;
use crate::ars::{build_ars, build_ars_exact, SimpleArs};
use crate::fixtures;
use crate::group_models::GroupKind;
use crate::lie_core::{inner_derivation, AlgebraVector, DerivationMatrix, LieAlgebraModel, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct Section {
    pub name: String,
    pub entries: Vec<(String, String)>,
}

impl Section {
    pub fn raw(&self, key: &str) -> Option<&str> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    fn invalid(&self, key: &str, msg: impl std::fmt::Display) -> CliError {
        CliError::Validation(format!("[{}] {key}: {msg}", self.name))
    }

    pub fn real(&self, key: &str) -> Result<Option<f64>, CliError> {
        self.raw(key)
            .map(|s| parse_real(s).map_err(|e| self.invalid(key, e)))
            .transpose()
    }

    pub fn real_or(&self, key: &str, default: f64) -> Result<f64, CliError> {
        Ok(self.real(key)?.unwrap_or(default))
    }

    pub fn required_real(&self, key: &str) -> Result<f64, CliError> {
        self.real(key)?.ok_or_else(|| self.invalid(key, "missing"))
    }

    pub fn usize_or(&self, key: &str, default: usize) -> Result<usize, CliError> {
        match self.raw(key) {
            None => Ok(default),
            Some(s) => s.trim().parse().map_err(|e| self.invalid(key, e)),
        }
    }

    pub fn vector(&self, key: &str) -> Result<Option<Vec<f64>>, CliError> {
        self.raw(key)
            .map(|s| {
                split_entries(s)
                    .iter()
                    .map(|t| parse_real(t))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| self.invalid(key, e))
            })
            .transpose()
    }

    pub fn required_vector(&self, key: &str, len: usize) -> Result<Vec<f64>, CliError> {
        let v = self.vector(key)?.ok_or_else(|| self.invalid(key, "missing"))?;
        if v.len() != len {
            return Err(self.invalid(key, format!("expected {len} entries, got {}", v.len())));
        }
        Ok(v)
    }

    pub fn string_or(&self, key: &str, default: &str) -> String {
        self.raw(key)
            .map(|s| s.trim().to_string())
            .unwrap_or_else(|| default.to_string())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProblemConfig {
    pub sections: Vec<Section>,
}

fn split_entries(s: &str) -> Vec<&str> {
    s.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .collect()
}

fn split_rows(s: &str) -> Vec<&str> {
    s.split(';').map(str::trim).filter(|r| !r.is_empty()).collect()
}

pub fn parse_real(s: &str) -> Result<f64, String> {
    let s = s.trim();
    if let Some(r) = parse_rational(s) {
        return Ok(r.to_f64());
    }
    s.parse::<f64>()
        .ok()
        .filter(|x| x.is_finite())
        .ok_or_else(|| format!("'{s}' is not a finite number"))
}

/// Integers, fractions `a/b` and plain decimals are read exactly.
pub fn parse_rational(s: &str) -> Option<Rational64> {
    let s = s.trim();
    if let Some((a, b)) = s.split_once('/') {
        let (a, b): (i64, i64) = (a.trim().parse().ok()?, b.trim().parse().ok()?);
        return (b != 0).then(|| Rational64::new(a, b));
    }
    if let Ok(i) = s.parse::<i64>() {
        return Some(Rational64::from_integer(i));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int, frac) = body.split_once('.')?;
    if frac.is_empty() && int.is_empty() {
        return None;
    }
    if !int.chars().all(|c| c.is_ascii_digit()) || !frac.chars().all(|c| c.is_ascii_digit()) || frac.len() > 15 {
        return None;
    }
    let den = 10i64.checked_pow(frac.len() as u32)?;
    let whole: i64 = if int.is_empty() { 0 } else { int.parse().ok()? };
    let f: i64 = if frac.is_empty() { 0 } else { frac.parse().ok()? };
    let num = whole.checked_mul(den)?.checked_add(f)?;
    Some(Rational64::new(if neg { -num } else { num }, den))
}

impl ProblemConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let ini = Ini::load_from_str(text).map_err(|e| CliError::Validation(format!("config: {e}")))?;
        let sections = ini
            .iter()
            .filter_map(|(name, props)| {
                name.map(|n| Section {
                    name: n.to_string(),
                    entries: props.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect(),
                })
            })
            .collect();
        Ok(Self { sections })
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn section(&self, name: &str) -> Option<&Section> {
        self.sections.iter().find(|s| s.name == name)
    }

    pub fn require(&self, name: &str) -> Result<&Section, CliError> {
        self.section(name)
            .ok_or_else(|| CliError::Validation(format!("config has no [{name}] section")))
    }

    /// Builds and validates the structure described by `[problem]`.
    pub fn build(&self) -> Result<SimpleArs, CliError> {
        let p = self.require("problem")?;
        if let Some(name) = p.raw("fixture") {
            let name = name.trim();
            return fixtures::by_name(name).ok_or_else(|| {
                CliError::Validation(format!(
                    "[problem] fixture: unknown '{name}', expected one of {}",
                    fixtures::names().join(", ")
                ))
            });
        }
        let kind = match p.string_or("group", "").as_str() {
            "euclidean" => GroupKind::Euclidean(p.usize_or("dim", 0)?),
            "aff2" => GroupKind::Aff2,
            "heisenberg" => GroupKind::Heisenberg,
            "sl2" => GroupKind::Sl2,
            other => {
                return Err(p.invalid("group", format!("unknown group '{other}'")));
            }
        };
        let n = kind.dim();
        if n < 2 {
            return Err(p.invalid("dim", "euclidean groups need dim ≥ 2"));
        }
        let chart = kind.chart();
        let d_raw = p.raw("derivation").ok_or_else(|| p.invalid("derivation", "missing"))?;
        let delta_raw = p.raw("delta").ok_or_else(|| p.invalid("delta", "missing"))?;
        let delta_rows = split_rows(delta_raw);
        if delta_rows.len() != n - 1 {
            return Err(p.invalid("delta", format!("expected {} rows, got {}", n - 1, delta_rows.len())));
        }
        let mut delta_tokens = Vec::new();
        for row in &delta_rows {
            let t = split_entries(row);
            if t.len() != n {
                return Err(p.invalid("delta", format!("row '{row}' needs {n} entries")));
            }
            delta_tokens.push(t);
        }
        let d_trim = d_raw.trim();
        let d_tokens: DerivationTokens = if let Some(rest) = d_trim.strip_prefix("inner") {
            let t = split_entries(rest);
            if t.len() != n {
                return Err(p.invalid("derivation", format!("inner generator needs {n} entries")));
            }
            DerivationTokens::Inner(t)
        } else {
            let rows = split_rows(d_trim);
            let flat: Vec<&str> = rows.iter().flat_map(|r| split_entries(r)).collect();
            if rows.len() != n || flat.len() != n * n {
                return Err(p.invalid("derivation", format!("expected {n} rows of {n} entries")));
            }
            DerivationTokens::Matrix(flat)
        };

        let exact_alg = chart.exact_algebra();
        let all_exact = d_tokens
            .tokens()
            .iter()
            .chain(delta_tokens.iter().flatten())
            .all(|t| parse_rational(t).is_some());
        let built = if let (true, Some(alg)) = (all_exact, exact_alg) {
            let q = |t: &&str| parse_rational(t).expect("checked");
            let d = d_tokens.derivation(&alg, |t| q(t)).map_err(CliError::from)?;
            let delta = delta_tokens
                .iter()
                .map(|r| AlgebraVector::new(r.iter().map(q).collect()))
                .collect();
            build_ars_exact(chart, d, delta)
        } else {
            for t in d_tokens.tokens().iter().chain(delta_tokens.iter().flatten()) {
                parse_real(t).map_err(|e| p.invalid("derivation/delta", e))?;
            }
            let alg = chart.algebra().clone();
            let d = d_tokens
                .derivation(&alg, |t| parse_real(t).expect("checked"))
                .map_err(CliError::from)?;
            let delta = delta_tokens
                .iter()
                .map(|r| AlgebraVector::new(r.iter().map(|t| parse_real(t).expect("checked")).collect()))
                .collect();
            build_ars(chart, d, delta)
        };
        built.map_err(CliError::from)
    }
}

enum DerivationTokens<'a> {
    Matrix(Vec<&'a str>),
    Inner(Vec<&'a str>),
}

impl<'a> DerivationTokens<'a> {
    fn tokens(&self) -> &[&'a str] {
        match self {
            DerivationTokens::Matrix(t) | DerivationTokens::Inner(t) => t,
        }
    }

    fn derivation<S: Scalar>(
        &self,
        alg: &LieAlgebraModel<S>,
        parse: impl Fn(&&str) -> S,
    ) -> crate::error::Result<DerivationMatrix<S>> {
        let n = alg.dim();
        match self {
            DerivationTokens::Matrix(t) => DerivationMatrix::from_row_major(n, t.iter().map(parse).collect()),
            DerivationTokens::Inner(t) => Ok(inner_derivation(
                alg,
                &AlgebraVector::new(t.iter().map(parse).collect()),
            )),
        }
    }
}
