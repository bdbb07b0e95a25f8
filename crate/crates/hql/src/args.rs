//! Flag value parsers shared by the subcommands.

use hql_core::exact::{to_f64, Rational};
use hql_core::invariants::Exponent;
use hql_core::young::PkExponent;

use crate::spec_file::parse_rational;

/// `p,kappa` with rational parts, e.g. `2,3` or `3/2,0`.
pub fn exponent(s: &str) -> Result<Exponent, String> {
    let (p, k) = s.split_once(',').ok_or_else(|| format!("expected p,kappa, got {s:?}"))?;
    Ok(PkExponent::new(parse_rational(p)?, parse_rational(k)?))
}

pub fn exponent_f64(e: &Exponent) -> (f64, f64) {
    (to_f64(&e.p), to_f64(&e.kappa))
}

/// `a..b` (inclusive) or a single value.
pub fn inclusive_range(s: &str) -> Result<(usize, usize), String> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("not a range: {s:?}"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
        None => {
            let v = num(s)?;
            (v, v)
        }
    };
    if a > b {
        return Err(format!("empty range {s:?}"));
    }
    Ok((a, b))
}

pub fn finite(s: &str) -> Result<f64, String> {
    match s.trim().parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(format!("not a finite number: {s:?}")),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Model {
    X3,
    /// `diag(1, μ)`.
    Diag(Rational),
    CustomCsv,
}

pub fn model(s: &str) -> Result<Model, String> {
    match s {
        "x3" => Ok(Model::X3),
        "custom-csv" => Ok(Model::CustomCsv),
        _ => match s.strip_prefix("diag:") {
            Some(mu) => {
                let mu = parse_rational(mu)?;
                if mu <= hql_core::exact::rat(0) {
                    return Err("diag:mu needs mu > 0".into());
                }
                Ok(Model::Diag(mu))
            }
            None => Err(format!("unknown model {s:?}; expected x3, diag:MU or custom-csv")),
        },
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Function {
    Pi1,
    Pi2,
    Csv,
}

pub fn function(s: &str) -> Result<Function, String> {
    match s {
        "pi1" => Ok(Function::Pi1),
        "pi2" => Ok(Function::Pi2),
        "csv" => Ok(Function::Csv),
        _ => Err(format!("unknown function {s:?}; expected pi1, pi2 or csv")),
    }
}

/// `x3`, `diag:MU`, `chebyshev` or `euclidean`.
pub fn grid_metric(s: &str) -> Result<hql_core::besov::GridMetric, String> {
    use hql_core::besov::GridMetric;
    match s {
        "x3" => Ok(GridMetric::X3),
        "chebyshev" => Ok(GridMetric::Chebyshev),
        "euclidean" => Ok(GridMetric::Euclidean),
        _ => match model(s)? {
            Model::Diag(mu) => Ok(GridMetric::Diag { mu: to_f64(&mu) }),
            _ => Err(format!("unknown metric {s:?}")),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use hql_core::exact::{rat, ratio};

    #[test]
    fn parsers() {
        assert_eq!(exponent("3/2, 0").unwrap(), PkExponent::new(ratio(3, 2), rat(0)));
        assert!(exponent("2").is_err());
        assert_eq!(inclusive_range("4..8").unwrap(), (4, 8));
        assert_eq!(inclusive_range("4..=8").unwrap(), (4, 8));
        assert_eq!(inclusive_range("5").unwrap(), (5, 5));
        assert!(inclusive_range("8..4").is_err());
        assert_eq!(finite(" 1e3").unwrap(), 1000.0);
        assert!(finite("inf").is_err());
        assert_eq!(model("diag:2").unwrap(), Model::Diag(rat(2)));
        assert!(model("diag:-1").is_err());
        assert!(model("torus").is_err());
        assert_eq!(function("pi2").unwrap(), Function::Pi2);
    }
}
