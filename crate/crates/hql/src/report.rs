//! JSON report for `analyze`. Rationals are written as exact `"n/d"` strings.

use hql_core::exact::{rat, DisplayRational, Rational, Subspace};
use hql_core::invariants::{
    conformal_dim_attainment, critical_exponents, global_critical, local_infinity_exponent_bounds,
    pointed_sphere_report, spectrum_with_chain, unresolved_regions, ConformalDimension, Exponent, PointedSphere,
    SpectrumVerdict,
};
use hql_core::lie::{
    almost_isometry_predicate, is_carnot_type, subgroup_chain, validate_spec, ValidatedSpec, CHECK_NAMES,
};
use hql_core::young::PkExponent;
use serde::Serialize;

use crate::spec_file::SpecFile;

pub fn q(r: &Rational) -> String {
    DisplayRational(r).to_string()
}

fn basis(s: &Subspace) -> Vec<Vec<String>> {
    s.basis().iter().map(|v| v.iter().map(q).collect()).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExponentJson {
    pub p: String,
    pub kappa: String,
}

impl From<&Exponent> for ExponentJson {
    fn from(e: &Exponent) -> Self {
        ExponentJson { p: q(&e.p), kappa: q(&e.kappa) }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Validation {
    pub valid: bool,
    pub checks: Vec<CheckJson>,
    pub diagnostics: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckJson {
    pub name: &'static str,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ChainLevel {
    pub i: usize,
    pub h_dim: Option<usize>,
    pub k_dim: usize,
    pub h_basis: Option<Vec<Vec<String>>>,
    pub k_basis: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct GlobalJson {
    pub exponent: ExponentJson,
    pub trivial_at_critical: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct IntervalJson {
    pub lower: ExponentJson,
    pub upper: ExponentJson,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectrumRow {
    pub exponent: ExponentJson,
    pub verdict: &'static str,
    pub index: Option<usize>,
    pub dimension: Option<usize>,
    pub subgroup_basis: Option<Vec<Vec<String>>>,
    pub extrapolated: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct RegionJson {
    pub p: String,
    pub kappa_low: String,
    pub low_inclusive: bool,
    /// `null` is `+∞`.
    pub kappa_high: Option<String>,
    pub high_inclusive: bool,
    pub text: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct PointedSphereJson {
    pub verdict: &'static str,
    pub preserved_cosets: Option<Vec<Vec<String>>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub spec: SpecEcho,
    pub validation: Validation,
    pub carnot: Option<bool>,
    pub chain: Option<Vec<ChainLevel>>,
    /// `p_1 > ... > p_d`; `p_{d+1} = 1` is implied.
    pub critical_exponents: Option<Vec<String>>,
    pub global_critical: Option<GlobalJson>,
    pub local_infinity_bounds: Option<IntervalJson>,
    pub spectrum: Option<Vec<SpectrumRow>>,
    pub unresolved_regions: Option<Vec<RegionJson>>,
    pub pointed_sphere: Option<PointedSphereJson>,
    pub conformal_dimension: Option<&'static str>,
    pub almost_isometry: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpecEcho {
    pub name: Option<String>,
    pub dimension: usize,
    pub eigenvalues: Vec<String>,
    pub blocks: Vec<Vec<usize>>,
    /// `(i, j, k, c^k_{ij})`, 1-based.
    pub brackets: Vec<(usize, usize, usize, String)>,
}

impl From<&SpecFile> for SpecEcho {
    fn from(f: &SpecFile) -> Self {
        SpecEcho {
            name: f.name.clone(),
            dimension: f.dimension,
            eigenvalues: f.eigenvalues.iter().map(|x| q(&x.0)).collect(),
            blocks: f.blocks.clone(),
            brackets: f.brackets.iter().map(|b| (b.0, b.1, b.2, q(&b.3 .0))).collect(),
        }
    }
}

/// A few exponents around each threshold: `(p_i, 0)`, `(p_i, 1)`, the
/// global critical pair, interval midpoints, and one point past `p_1`.
pub fn default_exponents(spec: &ValidatedSpec) -> Vec<Exponent> {
    let ps = critical_exponents(spec);
    let d = ps.len() - 1;
    let mut out = vec![PkExponent::new(&ps[0] + rat(1), rat(0))];
    for i in 0..d {
        let pi = &ps[i];
        let m = spec.jordan().max_block(i + 1);
        let top = rat(1) + pi * rat(m as i64 - 1);
        for kappa in [rat(0), rat(1), top] {
            let e = PkExponent::new(pi.clone(), kappa);
            if !out.contains(&e) {
                out.push(e);
            }
        }
        let mid = (pi + &ps[i + 1]) / rat(2);
        out.push(PkExponent::new(mid, rat(0)));
    }
    out
}

fn verdict_parts(v: SpectrumVerdict) -> (&'static str, Option<usize>) {
    match v {
        SpectrumVerdict::QuotientByK(i) => ("QuotientByK", Some(i)),
        SpectrumVerdict::QuotientByH(i) => ("QuotientByH", Some(i)),
        SpectrumVerdict::SeparatesPoints => ("SeparatesPoints", None),
        SpectrumVerdict::Unresolved => ("Unresolved", None),
    }
}

/// Validation-only report, for specs that fail a check.
pub fn invalid_report(file: &SpecFile, validation: Validation) -> AnalysisReport {
    AnalysisReport {
        spec: file.into(),
        validation,
        carnot: None,
        chain: None,
        critical_exponents: None,
        global_critical: None,
        local_infinity_bounds: None,
        spectrum: None,
        unresolved_regions: None,
        pointed_sphere: None,
        conformal_dimension: None,
        almost_isometry: None,
    }
}

pub fn validation_of(spec: &hql_core::lie::HeintzeSpec) -> Validation {
    let report = validate_spec(spec);
    Validation {
        valid: report.is_valid(),
        checks: CHECK_NAMES.iter().map(|&name| CheckJson { name, passed: report.passed(name) }).collect(),
        diagnostics: report.diagnostics.iter().map(|d| format!("{}: {d}", d.check_name())).collect(),
    }
}

pub fn analysis_report(file: &SpecFile, spec: &ValidatedSpec, exponents: &[Exponent]) -> AnalysisReport {
    let chain = subgroup_chain(spec);
    let d = spec.jordan().d();
    let levels = (0..=d)
        .map(|i| ChainLevel {
            i,
            h_dim: (i > 0).then(|| chain.h(i).dim()),
            k_dim: chain.k(i).dim(),
            h_basis: (i > 0).then(|| basis(chain.h(i))),
            k_basis: basis(chain.k(i)),
        })
        .collect();
    let mut ps = critical_exponents(spec);
    ps.pop();
    let g = global_critical(spec);
    let bounds = local_infinity_exponent_bounds(spec);
    let spectrum = exponents
        .iter()
        .map(|e| {
            let r = spectrum_with_chain(spec, &chain, e);
            let (verdict, index) = verdict_parts(r.verdict);
            SpectrumRow {
                exponent: e.into(),
                verdict,
                index,
                dimension: r.dimension,
                subgroup_basis: r.subgroup.as_ref().map(basis),
                extrapolated: r.extrapolated,
            }
        })
        .collect();
    let regions = unresolved_regions(spec)
        .into_iter()
        .map(|r| RegionJson {
            p: q(&r.p),
            kappa_low: q(&r.kappa_low),
            low_inclusive: r.low_inclusive,
            kappa_high: r.kappa_high.as_ref().map(q),
            high_inclusive: r.high_inclusive,
            text: r.to_string(),
        })
        .collect();
    let pointed = match pointed_sphere_report(spec) {
        PointedSphere::FixedInfinity { h1 } => {
            PointedSphereJson { verdict: "FixedInfinity", preserved_cosets: Some(basis(&h1)) }
        }
        PointedSphere::CarnotInconclusive => PointedSphereJson { verdict: "CarnotInconclusive", preserved_cosets: None },
    };
    let conformal = match conformal_dim_attainment(spec) {
        ConformalDimension::NotAttained => "NotAttained",
        ConformalDimension::Inconclusive => "Inconclusive",
    };
    AnalysisReport {
        spec: file.into(),
        validation: validation_of(spec.spec()),
        carnot: Some(is_carnot_type(spec)),
        chain: Some(levels),
        critical_exponents: Some(ps.iter().map(q).collect()),
        global_critical: Some(GlobalJson { exponent: (&g.exponent).into(), trivial_at_critical: g.trivial_at_critical }),
        local_infinity_bounds: Some(IntervalJson { lower: (&bounds.lower).into(), upper: (&bounds.upper).into() }),
        spectrum: Some(spectrum),
        unresolved_regions: Some(regions),
        pointed_sphere: Some(pointed),
        conformal_dimension: Some(conformal),
        almost_isometry: Some(almost_isometry_predicate(spec)),
    }
}
