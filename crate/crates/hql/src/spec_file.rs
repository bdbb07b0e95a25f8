//! TOML spec files.
//!
//! ```toml
//! name = "heisenberg"
//! dimension = 3
//! eigenvalues = [1, 2]
//! blocks = [[1, 1], [1]]
//! brackets = [[1, 2, 3, 1]]
//! ```
//!
//! Indices are 1-based and refer to the Jordan basis. A bracket triple
//! `[i, j, k, c]` sets `c^k_{ij} = c`; the partner `c^k_{ji} = -c` is filled in
//! unless the file lists it too. Rationals may be integers, decimals, or
//! strings such as `"3/2"`.

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use hql_core::exact::{DisplayRational, Rational};
use hql_core::lie::{HeintzeSpec, JordanSpec, LieAlgebra};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{CliError, Result};

/// A rational that reads from TOML integers, floats or strings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Q(pub Rational);

impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        DisplayRational(&self.0).fmt(f)
    }
}

/// Parses `n`, `n/d` or a plain decimal such as `-0.25`.
pub fn parse_rational(s: &str) -> std::result::Result<Rational, String> {
    let s = s.trim();
    let bad = || format!("not a rational number: {s:?}");
    if s.contains('/') {
        let q = Rational::from_str(s).map_err(|_| bad())?;
        return Ok(q);
    }
    let (sign, body) = match s.strip_prefix('-') {
        Some(rest) => ("-", rest),
        None => ("", s.strip_prefix('+').unwrap_or(s)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    let digits = |t: &str| t.bytes().all(|b| b.is_ascii_digit());
    if (int.is_empty() && frac.is_empty()) || !digits(int) || !digits(frac) {
        return Err(bad());
    }
    let num = format!("{sign}{}{frac}", if int.is_empty() { "0" } else { int });
    let den = format!("1{}", "0".repeat(frac.len()));
    Rational::from_str(&format!("{num}/{den}")).map_err(|_| bad())
}

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Q;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer, a decimal, or a string like \"3/2\"")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Q, E> {
                Ok(Q(hql_core::exact::rat(v)))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Q, E> {
                parse_rational(&v.to_string()).map(Q).map_err(E::custom)
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<Q, E> {
                if !v.is_finite() {
                    return Err(E::custom(format!("{v} is not finite")));
                }
                // shortest round-trip decimal, read exactly
                parse_rational(&v.to_string()).map(Q).map_err(E::custom)
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Q, E> {
                parse_rational(v).map(Q).map_err(E::custom)
            }
        }
        d.deserialize_any(V)
    }
}

impl Serialize for Q {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.0.is_integer() {
            if let Ok(n) = i64::try_from(self.0.numer()) {
                return s.serialize_i64(n);
            }
        }
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bracket(pub usize, pub usize, pub usize, pub Q);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub dimension: usize,
    pub eigenvalues: Vec<Q>,
    pub blocks: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub brackets: Vec<Bracket>,
}

impl SpecFile {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| CliError::Parse(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path.display().to_string(), e))?;
        Self::parse(&text).map_err(|e| match e {
            CliError::Parse(msg) => CliError::Parse(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("spec files always serialize")
    }

    /// Builds the structure constants. Index errors are parse errors: the
    /// file does not describe an algebra at all.
    pub fn to_spec(&self) -> Result<HeintzeSpec> {
        let n = self.dimension;
        if n == 0 {
            return Err(CliError::Parse("dimension: must be at least 1".into()));
        }
        let mut algebra = LieAlgebra::abelian(n);
        let mut seen = BTreeSet::new();
        for (pos, Bracket(i, j, k, q)) in self.brackets.iter().enumerate() {
            for (field, v) in [("i", i), ("j", j), ("k", k)] {
                if *v == 0 || *v > n {
                    return Err(CliError::Parse(format!("brackets[{pos}]: {field} = {v} outside 1..={n}")));
                }
            }
            if !seen.insert((*i, *j, *k)) {
                return Err(CliError::Parse(format!("brackets[{pos}]: ({i},{j},{k}) listed twice")));
            }
            algebra.set_raw(i - 1, j - 1, k - 1, q.0.clone());
        }
        for Bracket(i, j, k, q) in &self.brackets {
            if !seen.contains(&(*j, *i, *k)) {
                algebra.set_raw(j - 1, i - 1, k - 1, -q.0.clone());
            }
        }
        let eigenvalues = self.eigenvalues.iter().map(|q| q.0.clone()).collect();
        Ok(HeintzeSpec { algebra, jordan: JordanSpec::new(eigenvalues, self.blocks.clone()) })
    }

    /// The file that [`SpecFile::to_spec`] would rebuild `spec` from.
    pub fn from_spec(spec: &HeintzeSpec, name: Option<String>) -> Self {
        let brackets = spec
            .algebra
            .nonzero_constants()
            .into_iter()
            .filter(|(i, j, _, _)| i < j)
            .map(|(i, j, k, q)| Bracket(i + 1, j + 1, k + 1, Q(q)))
            .collect();
        SpecFile {
            name,
            dimension: spec.algebra.dim(),
            eigenvalues: spec.jordan.eigenvalues.iter().cloned().map(Q).collect(),
            blocks: spec.jordan.blocks.clone(),
            brackets,
        }
    }
}
