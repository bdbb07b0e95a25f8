//! Subcommand bodies. Each returns its full output so the binary only has to
//! print and exit.

use std::io::Write as _;
use std::path::{Path, PathBuf};

use hql_core::asymptotics::{
    asymptotic_ratio, charpoly_coeff_ratio, eigenvector_alignment, singular_data, Precision,
};
use hql_core::besov::{
    besov_seminorm, classify_estimates, make_diag_grid, make_x3_grid, separation_profile, BesovError,
    Candidate, GridMetric, MetricMeasureGrid, SweepOptions, Verdict,
};
use hql_core::exact::{to_f64, DisplayRational};
use hql_core::invariants::{abelian_qi_classify, carnot_vs_noncarnot, spectrum_at_infinity, ClassificationVerdict, Exponent, QiComparison};
use hql_core::lie::{models, HeintzeSpec, LieError, ValidatedSpec};
use hql_core::tree::{
    coboundary_bound_check, random_level_function, random_vertex_function, shadow_average_extension,
    shift_contraction_check, strichartz_check, strichartz_constant, trace_norm_check, Inequality, LevelFunction,
    TreeComplex, TreeError,
};
use hql_core::young::{PhiPk, YoungFunction};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::args::{Function, Model};
use crate::error::{CliError, Result, EXIT_DISTINGUISHED, EXIT_FAILED, EXIT_INCONCLUSIVE, EXIT_OK, EXIT_VALIDATION};
use crate::pool::par_map;
use crate::report::{analysis_report, default_exponents, invalid_report, q, validation_of};
use crate::spec_file::SpecFile;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn input<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Input(e.to_string())
}

fn phi(p: f64, kappa: f64) -> Result<PhiPk> {
    PhiPk::new(p, kappa).map_err(input)
}

pub fn load_validated(path: &Path) -> Result<(SpecFile, ValidatedSpec)> {
    let file = SpecFile::load(path)?;
    let spec = file.to_spec()?;
    let valid = ValidatedSpec::new(spec).map_err(|e| match e {
        LieError::Invalid(report) => CliError::Validation { context: path.display().to_string(), report },
        other => input(other),
    })?;
    Ok((file, valid))
}

pub fn analyze(path: &Path, exponents: Option<&[Exponent]>) -> Result<Output> {
    let file = SpecFile::load(path)?;
    let spec = file.to_spec()?;
    let validation = validation_of(&spec);
    if !validation.valid {
        let mut stderr = String::new();
        for d in &validation.diagnostics {
            stderr.push_str(&format!("{}: {d}\n", path.display()));
        }
        let report = invalid_report(&file, validation);
        return Ok(Output { stdout: json(&report), stderr, code: EXIT_VALIDATION });
    }
    let spec = ValidatedSpec::new(spec).expect("validated above");
    let defaults;
    let exps = match exponents {
        Some(e) => e,
        None => {
            defaults = default_exponents(&spec);
            &defaults
        }
    };
    Ok(Output { stdout: json(&analysis_report(&file, &spec, exps)), stderr: String::new(), code: EXIT_OK })
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassifyReport {
    pub a: String,
    pub b: String,
    /// `abelian` (Jordan forms up to scale) or `carnot` (Carnot type and `H_1` data).
    pub method: &'static str,
    pub verdict: &'static str,
    pub scale: Option<String>,
    pub invariant: Option<String>,
    pub left: Option<String>,
    pub right: Option<String>,
    pub reason: Option<String>,
}

pub fn classify(a: &Path, b: &Path) -> Result<Output> {
    let (fa, sa) = load_validated(a)?;
    let (fb, sb) = load_validated(b)?;
    let label = |f: &SpecFile, p: &Path| f.name.clone().unwrap_or_else(|| p.display().to_string());
    let mut report = ClassifyReport {
        a: label(&fa, a),
        b: label(&fb, b),
        method: "abelian",
        verdict: "Inconclusive",
        scale: None,
        invariant: None,
        left: None,
        right: None,
        reason: None,
    };
    let code = if sa.algebra().is_abelian() && sb.algebra().is_abelian() {
        match abelian_qi_classify(&sa, &sb).map_err(input)? {
            ClassificationVerdict::Isomorphic { scale } => {
                report.verdict = "Isomorphic";
                report.scale = Some(q(&scale));
                EXIT_OK
            }
            ClassificationVerdict::Distinguished { invariant, left, right } => {
                report.verdict = "Distinguished";
                report.invariant = Some(invariant.into());
                report.left = Some(left);
                report.right = Some(right);
                EXIT_DISTINGUISHED
            }
            ClassificationVerdict::Inconclusive => EXIT_INCONCLUSIVE,
        }
    } else {
        report.method = "carnot";
        match carnot_vs_noncarnot(&sa, &sb).map_err(input)? {
            QiComparison::NotQuasiIsometric { reason } => {
                report.verdict = "NotQuasiIsometric";
                report.reason = Some(reason);
                EXIT_DISTINGUISHED
            }
            QiComparison::Inconclusive => EXIT_INCONCLUSIVE,
        }
    };
    Ok(Output { stdout: json(&report), stderr: String::new(), code })
}

#[derive(Debug, Clone)]
pub struct SvdOptions {
    pub m: (usize, usize),
    pub t: Vec<f64>,
    pub precision: Precision,
    /// Ratio, alignment and coefficient checks apply from this `t` on.
    pub asymptotic_min_t: f64,
    pub ratio_tol: f64,
    pub alignment_min: f64,
}

impl Default for SvdOptions {
    fn default() -> Self {
        SvdOptions {
            m: (1, 5),
            t: vec![1.0, 10.0, 100.0],
            precision: Precision::Auto,
            asymptotic_min_t: 1000.0,
            ratio_tol: 0.02,
            alignment_min: 0.999,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SvdRow {
    pub check: &'static str,
    pub m: usize,
    pub index: usize,
    pub t: f64,
    pub value: f64,
    pub alignment: Option<f64>,
    /// `None` for rows that are only recorded.
    pub pass: Option<bool>,
}

pub const PAIRING_TOL: f64 = 1e-9;
pub const MIDDLE_TOL: f64 = 1e-10;

pub fn svd_rows(opts: &SvdOptions) -> Result<Vec<SvdRow>> {
    let mut rows = Vec::new();
    for m in opts.m.0.max(1)..=opts.m.1 {
        for &t in &opts.t {
            let data = singular_data(m, t, opts.precision)?;
            let l = &data.eigenvalues;
            for i in 0..m {
                let v = l[i] * l[m - 1 - i];
                rows.push(SvdRow {
                    check: "pairing",
                    m,
                    index: i + 1,
                    t,
                    value: v,
                    alignment: None,
                    pass: Some((v - 1.0).abs() <= PAIRING_TOL),
                });
            }
            if m % 2 == 1 {
                let v = l[m / 2];
                rows.push(SvdRow {
                    check: "middle",
                    m,
                    index: m / 2 + 1,
                    t,
                    value: v,
                    alignment: None,
                    pass: Some((v - 1.0).abs() <= MIDDLE_TOL),
                });
            }
            let checked = t >= opts.asymptotic_min_t;
            for i in 1..=m {
                let r = asymptotic_ratio(m, i, t, opts.precision)?;
                let a = eigenvector_alignment(m, i, t, opts.precision)?;
                let ok = (r - 1.0).abs() <= opts.ratio_tol && a >= opts.alignment_min;
                rows.push(SvdRow { check: "ratio", m, index: i, t, value: r, alignment: Some(a), pass: checked.then_some(ok) });
            }
            for k in 1..=m {
                let c = charpoly_coeff_ratio(m, k, t)?;
                let ok = (c - 1.0).abs() <= opts.ratio_tol;
                rows.push(SvdRow { check: "charpoly", m, index: k, t, value: c, alignment: None, pass: checked.then_some(ok) });
            }
        }
    }
    Ok(rows)
}

fn csv_text(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(&r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf8")
}

fn opt_f64(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

pub fn svd_verify(opts: &SvdOptions) -> Result<Output> {
    let rows = svd_rows(opts)?;
    let stdout = csv_text(
        &["check", "m", "index", "t", "value", "alignment", "pass"],
        rows.iter().map(|r| {
            vec![
                r.check.into(),
                r.m.to_string(),
                r.index.to_string(),
                r.t.to_string(),
                r.value.to_string(),
                opt_f64(r.alignment),
                r.pass.map(|p| p.to_string()).unwrap_or_default(),
            ]
        }),
    );
    let checked = rows.iter().filter(|r| r.pass.is_some()).count();
    let failed: Vec<&SvdRow> = rows.iter().filter(|r| r.pass == Some(false)).collect();
    let mut stderr = format!("svd-verify: {checked} checks, {} failed\n", failed.len());
    for r in &failed {
        stderr.push_str(&format!("  FAIL {} m={} index={} t={} value={}\n", r.check, r.m, r.index, r.t, r.value));
    }
    let code = if failed.is_empty() { EXIT_OK } else { EXIT_FAILED };
    Ok(Output { stdout, stderr, code })
}

#[derive(Debug, Clone)]
pub struct TreeOptions {
    pub branching: usize,
    pub depth: usize,
    pub phis: Vec<(f64, f64)>,
    pub trials: usize,
    pub shadow_trials: usize,
    pub seed: u64,
    pub threads: usize,
}

impl Default for TreeOptions {
    fn default() -> Self {
        TreeOptions {
            branching: 2,
            depth: 12,
            phis: vec![(1.0, 0.0), (2.0, 0.0), (2.0, 1.0), (3.0, 2.0)],
            trials: 100,
            shadow_trials: 10,
            seed: 0,
            threads: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InequalitySummary {
    pub trials: usize,
    /// Largest `lhs / rhs`.
    pub worst_ratio: f64,
    /// Smallest `rhs - lhs`.
    pub min_slack: f64,
    pub violations: usize,
}

impl InequalitySummary {
    fn of(ineqs: impl IntoIterator<Item = Inequality>) -> Self {
        let mut s = InequalitySummary { trials: 0, worst_ratio: 0.0, min_slack: f64::INFINITY, violations: 0 };
        for i in ineqs {
            s.trials += 1;
            s.worst_ratio = s.worst_ratio.max(i.ratio());
            s.min_slack = s.min_slack.min(i.slack());
            if !i.holds() {
                s.violations += 1;
            }
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LevelConcentrated {
    pub level: usize,
    /// `‖S*G‖ / ‖G‖` for `G` constant on one level.
    pub ratio: f64,
    /// `v^{-1/K}`.
    pub bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShadowSummary {
    pub trials: usize,
    pub worst_ratio: f64,
    pub bound: f64,
    pub violations: usize,
    pub sampled: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhiTreeReport {
    pub p: f64,
    pub kappa: f64,
    pub doubling_exponent: f64,
    pub strichartz_constant: f64,
    pub shift_contraction: InequalitySummary,
    pub strichartz: InequalitySummary,
    pub trace: InequalitySummary,
    pub coboundary: InequalitySummary,
    pub level_concentrated: LevelConcentrated,
    pub shadow: ShadowSummary,
}

impl PhiTreeReport {
    pub fn all_hold(&self) -> bool {
        [&self.shift_contraction, &self.strichartz, &self.trace, &self.coboundary].iter().all(|s| s.violations == 0)
            && self.shadow.violations == 0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TreeReport {
    pub branching: usize,
    pub depth: usize,
    pub vertices: usize,
    pub seed: u64,
    pub results: Vec<PhiTreeReport>,
    pub all_hold: bool,
}

fn tree_err(e: TreeError) -> CliError {
    input(e)
}

pub fn tree_report(opts: &TreeOptions) -> Result<TreeReport> {
    let tree = TreeComplex::new(opts.branching, opts.depth).map_err(tree_err)?;
    let phis = opts.phis.iter().map(|&(p, k)| phi(p, k)).collect::<Result<Vec<_>>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let vertex_fns: Vec<_> = (0..opts.trials).map(|_| random_vertex_function(&tree, &mut rng)).collect();
    let level_fns: Vec<_> = (0..opts.trials).map(|_| random_level_function(&tree, &mut rng)).collect();
    let leaf_data: Vec<Vec<f64>> = (0..opts.shadow_trials)
        .map(|_| (0..tree.leaf_count()).map(|_| rng.gen_range(-1.0..=1.0)).collect())
        .collect();
    let level = (opts.depth / 2).max(1);
    let mut concentrated = LevelFunction::zeros(&tree);
    for leaf in 0..tree.leaf_count() {
        concentrated.set(leaf, level, 1.0);
    }
    let results = par_map(&phis, opts.threads, |phi| -> Result<PhiTreeReport> {
        let k = phi.doubling().ok_or_else(|| input(TreeError::MissingDoubling))?.exponent;
        let collect = |f: &dyn Fn(usize) -> std::result::Result<Inequality, TreeError>, n: usize| {
            (0..n).map(f).collect::<std::result::Result<Vec<_>, _>>().map(InequalitySummary::of).map_err(tree_err)
        };
        let shift = collect(&|i| shift_contraction_check(phi, &tree, &level_fns[i]), opts.trials)?;
        let strich = collect(&|i| strichartz_check(phi, &tree, &vertex_fns[i]), opts.trials)?;
        let trace = collect(&|i| trace_norm_check(phi, &tree, &vertex_fns[i]), opts.trials)?;
        let cob = coboundary_bound_check(phi, &tree, &vertex_fns).map_err(tree_err)?;
        let conc = shift_contraction_check(phi, &tree, &concentrated).map_err(tree_err)?;
        let base = hql_core::tree::level_norm(phi, &tree, &concentrated).map_err(tree_err)?;
        let mut shadow = ShadowSummary { trials: 0, worst_ratio: 0.0, bound: 0.0, violations: 0, sampled: false };
        for (i, u) in leaf_data.iter().enumerate() {
            let r = shadow_average_extension(phi, &tree, u, opts.seed.wrapping_add(i as u64)).map_err(tree_err)?;
            shadow.trials += 1;
            shadow.worst_ratio = shadow.worst_ratio.max(r.ratio);
            shadow.bound = r.bound;
            shadow.sampled = r.sampled;
            if r.ratio > r.bound + hql_core::tree::SLACK {
                shadow.violations += 1;
            }
        }
        Ok(PhiTreeReport {
            p: phi.p(),
            kappa: phi.kappa(),
            doubling_exponent: k,
            strichartz_constant: strichartz_constant(phi, &tree).map_err(tree_err)?,
            shift_contraction: shift,
            strichartz: strich,
            trace,
            coboundary: InequalitySummary {
                trials: cob.trials,
                worst_ratio: cob.worst_ratio,
                min_slack: cob.min_slack,
                violations: cob.violations,
            },
            level_concentrated: LevelConcentrated {
                level,
                ratio: if base == 0.0 { 0.0 } else { conc.lhs / base },
                bound: conc.rhs / base,
            },
            shadow,
        })
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let all_hold = results.iter().all(PhiTreeReport::all_hold);
    Ok(TreeReport {
        branching: opts.branching,
        depth: opts.depth,
        vertices: tree.vertex_count(),
        seed: opts.seed,
        results,
        all_hold,
    })
}

pub fn tree(opts: &TreeOptions) -> Result<Output> {
    let report = tree_report(opts)?;
    let code = if report.all_hold { EXIT_OK } else { EXIT_FAILED };
    let stderr = if report.all_hold { String::new() } else { "tree: some inequality failed\n".into() };
    Ok(Output { stdout: json(&report), stderr, code })
}

#[derive(Debug, Clone)]
pub struct BesovCommand {
    pub model: Model,
    pub function: Function,
    pub phi: (f64, f64),
    pub levels: (usize, usize),
    pub grid_csv: Option<PathBuf>,
    pub values_csv: Option<PathBuf>,
    /// Metric and dimension for `custom-csv` grids.
    pub metric: GridMetric,
    pub q: f64,
    pub sweep: SweepOptions,
}

fn besov_err(e: BesovError) -> CliError {
    input(e)
}

fn lattice_grid(model: &Model, level: usize) -> std::result::Result<MetricMeasureGrid, BesovError> {
    match model {
        Model::X3 => make_x3_grid(level),
        Model::Diag(mu) => make_diag_grid(level, to_f64(mu)),
        Model::CustomCsv => Err(BesovError::Parameter("custom grids have no levels".into())),
    }
}

fn open_csv(path: &Path) -> Result<csv::Reader<std::fs::File>> {
    csv::ReaderBuilder::new().trim(csv::Trim::All).from_path(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

/// Rows of `x, y, ..., weight`; every column but `weight` is a coordinate.
pub fn read_grid_csv(path: &Path, metric: GridMetric, q: f64) -> Result<MetricMeasureGrid> {
    let mut r = open_csv(path)?;
    let headers = r.headers().map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?.clone();
    let wcol = headers
        .iter()
        .position(|h| h == "weight")
        .ok_or_else(|| CliError::Parse(format!("{}: no weight column", path.display())))?;
    let (mut points, mut weights) = (Vec::new(), Vec::new());
    for (line, rec) in r.records().enumerate() {
        let rec = rec.map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
        let mut point = Vec::new();
        for (c, field) in rec.iter().enumerate() {
            let v: f64 = field.parse().map_err(|_| {
                CliError::Parse(format!("{}: row {}, column {}: not a number: {field:?}", path.display(), line + 2, &headers[c]))
            })?;
            if c == wcol {
                weights.push(v);
            } else {
                point.push(v);
            }
        }
        points.push(point);
    }
    MetricMeasureGrid::new(points, weights, metric, q, 0).map_err(besov_err)
}

/// A `value` column, or the only column.
pub fn read_values_csv(path: &Path) -> Result<Vec<f64>> {
    let mut r = open_csv(path)?;
    let headers = r.headers().map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?.clone();
    let col = headers.iter().position(|h| h == "value").unwrap_or(0);
    let mut out = Vec::new();
    for (line, rec) in r.records().enumerate() {
        let rec = rec.map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
        let field = rec.get(col).unwrap_or("");
        out.push(field.parse().map_err(|_| {
            CliError::Parse(format!("{}: row {}: not a number: {field:?}", path.display(), line + 2))
        })?);
    }
    Ok(out)
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Stabilizing => "Stabilizing",
        Verdict::Diverging => "Diverging",
        Verdict::Undetermined => "Undetermined",
    }
}

fn coordinate(f: Function) -> Option<usize> {
    match f {
        Function::Pi1 => Some(0),
        Function::Pi2 => Some(1),
        Function::Csv => None,
    }
}

/// Rows `(level, estimate, verdict)`; the verdict uses the levels so far.
pub fn besov_rows(cmd: &BesovCommand) -> Result<Vec<(usize, f64, Verdict)>> {
    let phi = phi(cmd.phi.0, cmd.phi.1)?;
    let sweep = &cmd.sweep;
    let mut estimates = Vec::new();
    let mut rows = Vec::new();
    if cmd.model == Model::CustomCsv {
        let path = cmd.grid_csv.as_deref().ok_or_else(|| input("custom-csv needs --grid"))?;
        let grid = read_grid_csv(path, cmd.metric, cmd.q)?;
        let values = match coordinate(cmd.function) {
            Some(c) if c < grid.dim() => grid.sample(|p| p[c]),
            Some(c) => return Err(input(format!("grid has no coordinate {}", c + 1))),
            None => read_values_csv(cmd.values_csv.as_deref().ok_or_else(|| input("--function csv needs --values"))?)?,
        };
        let e = besov_seminorm(&phi, &grid, &values, None, &sweep.besov).map_err(besov_err)?;
        return Ok(vec![(grid.level, e.value, Verdict::Undetermined)]);
    }
    let c = coordinate(cmd.function).ok_or_else(|| input("--function csv needs --model custom-csv"))?;
    for level in cmd.levels.0..=cmd.levels.1 {
        let grid = lattice_grid(&cmd.model, level).map_err(besov_err)?;
        let values = grid.sample(|p| p[c]);
        let e = besov_seminorm(&phi, &grid, &values, None, &sweep.besov).map_err(besov_err)?;
        estimates.push(e.value);
        rows.push((level, e.value, classify_estimates(&estimates, sweep.stabilize_tol, sweep.diverge_ratio)));
    }
    Ok(rows)
}

pub fn besov(cmd: &BesovCommand) -> Result<Output> {
    let rows = besov_rows(cmd)?;
    let stdout = csv_text(
        &["level", "estimate", "verdict"],
        rows.iter().map(|(l, e, v)| vec![l.to_string(), e.to_string(), verdict_name(*v).into()]),
    );
    Ok(Output { stdout, stderr: String::new(), code: EXIT_OK })
}

#[derive(Debug, Clone)]
pub struct SweepCommand {
    pub model: Model,
    pub phis: Vec<Exponent>,
    pub levels: (usize, usize),
    pub sweep: SweepOptions,
    pub threads: usize,
}

fn model_spec(model: &Model) -> Option<HeintzeSpec> {
    match model {
        Model::X3 => Some(models::x3()),
        Model::Diag(mu) if *mu >= hql_core::exact::rat(1) => Some(models::diag(mu.clone())),
        _ => None,
    }
}

/// Separation profile of `π_1, π_2` per exponent, with the predicted
/// coordinate membership alongside.
pub fn sweep(cmd: &SweepCommand) -> Result<Output> {
    if cmd.model == Model::CustomCsv {
        return Err(input("sweep needs a lattice model (x3 or diag:MU)"));
    }
    let levels: Vec<usize> = (cmd.levels.0..=cmd.levels.1).collect();
    let spec = model_spec(&cmd.model).map(|s| ValidatedSpec::new(s).expect("built-in models are valid"));
    let profiles = par_map(&cmd.phis, cmd.threads, |e| {
        let pi1 = |p: &[f64]| p[0];
        let pi2 = |p: &[f64]| p[1];
        let candidates: [Candidate<'_>; 2] = [("pi1", &pi1), ("pi2", &pi2)];
        let (p, k) = crate::args::exponent_f64(e);
        let phi = phi(p, k)?;
        separation_profile(&phi, |l| lattice_grid(&cmd.model, l), &candidates, &levels, &cmd.sweep).map_err(besov_err)
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let mut rows = Vec::new();
    let mut stderr = String::new();
    for (e, prof) in cmd.phis.iter().zip(&profiles) {
        let (p, k) = (DisplayRational(&e.p).to_string(), DisplayRational(&e.kappa).to_string());
        for entry in &prof.entries {
            for (j, (&level, &est)) in entry.sweep.levels.iter().zip(&entry.sweep.estimates).enumerate() {
                let v = classify_estimates(&entry.sweep.estimates[..=j], cmd.sweep.stabilize_tol, cmd.sweep.diverge_ratio);
                rows.push(vec![
                    p.clone(),
                    k.clone(),
                    entry.name.clone(),
                    level.to_string(),
                    est.to_string(),
                    verdict_name(v).into(),
                ]);
            }
        }
        let observed = prof.separated();
        let line = match &spec {
            Some(s) => {
                let pred = spectrum_at_infinity(s, e);
                let agrees = match prof.matches(&pred) {
                    Some(true) => "agrees",
                    Some(false) => "disagrees",
                    None => "no prediction",
                };
                let expected = match pred.coordinate_membership() {
                    Some(m) => format!("{m:?}"),
                    None => "none".into(),
                };
                format!("phi=({p},{k}) predicted={:?} expected={expected} observed={observed:?} {agrees}\n", pred.verdict)
            }
            None => format!("phi=({p},{k}) observed={observed:?} no prediction\n"),
        };
        stderr.push_str(&line);
    }
    let stdout = csv_text(&["p", "kappa", "function", "level", "estimate", "verdict"], rows);
    Ok(Output { stdout, stderr, code: EXIT_OK })
}

/// Writes `text` to `path`, or stdout when `None`.
pub fn emit(text: &str, path: Option<&Path>) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::io(p.display().to_string(), e)),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).and_then(|_| out.flush()).map_err(|e| CliError::io("stdout", e))
        }
    }
}
