//! Orlicz–Besov seminorms on sampled metric measure spaces and refinement sweeps.

use alloc::string::String;
use alloc::vec::Vec;

use num_traits::Float;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::asymptotics::closed_form_metric_x3;
use crate::invariants::SpectrumResult;
use crate::young::{luxembourg_norm, WeightedSamples, YoungFunction};

pub const DEFAULT_PAIR_BUDGET: usize = 20_000_000;
pub const DEFAULT_STABILIZE_TOL: f64 = 0.05;
pub const DEFAULT_DIVERGE_RATIO: f64 = 1.05;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BesovError {
    #[error("grid has no points")]
    EmptyGrid,
    #[error("point {index} has dimension {got}, expected {expected}")]
    PointDimension { index: usize, got: usize, expected: usize },
    #[error("weight {weight} at point {index} is not positive and finite")]
    Weight { index: usize, weight: f64 },
    #[error("{got} function values for {expected} points")]
    ValueCount { got: usize, expected: usize },
    #[error("region index {0} out of range")]
    Region(usize),
    #[error("non-finite function value at point {0}")]
    NonFinite(usize),
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("metric vanishes between distinct points {0} and {1}")]
    Degenerate(usize, usize),
    #[error("sweep needs at least 3 ascending levels")]
    Levels,
}

/// Quasi-metrics on `ℝⁿ` used by the grids.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GridMetric {
    /// `max{|Δy|, |Δx - Δy ln|Δy||}`.
    X3,
    /// `max{|Δx|, |Δy|^{1/μ}}`.
    Diag { mu: f64 },
    /// Max over coordinates.
    Chebyshev,
    Euclidean,
}

impl GridMetric {
    /// Distance as a function of the displacement `y - x`.
    pub fn displacement(&self, d: &[f64]) -> f64 {
        match *self {
            GridMetric::X3 => closed_form_metric_x3([0.0, 0.0], [d[0], d[1]]),
            GridMetric::Diag { mu } => d[0].abs().max(Float::powf(d[1].abs(), 1.0 / mu)),
            GridMetric::Chebyshev => d.iter().fold(0.0, |m, x| m.max(x.abs())),
            GridMetric::Euclidean => d.iter().map(|x| x * x).sum::<f64>().sqrt(),
        }
    }

    pub fn dist(&self, x: &[f64], y: &[f64]) -> f64 {
        let d: Vec<f64> = x.iter().zip(y).map(|(a, b)| b - a).collect();
        self.displacement(&d)
    }
}

/// Square lattice `{(i h, j h) : 0 ≤ i, j ≤ n}` with trapezoid weights.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lattice {
    /// Points per side, `n + 1`.
    pub side: usize,
    pub spacing: f64,
}

impl Lattice {
    /// `Σ_k c_k c_{k+d}` for the 1-D trapezoid factors `c`.
    fn autocorrelation(&self, d: usize) -> f64 {
        let n = self.side;
        if d >= n {
            return 0.0;
        }
        let c = |k: usize| if k == 0 || k == n - 1 { 0.5 } else { 1.0 };
        (0..n - d).map(|k| c(k) * c(k + d)).sum()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MetricMeasureGrid {
    dim: usize,
    points: Vec<f64>,
    weights: Vec<f64>,
    pub metric: GridMetric,
    /// Ahlfors dimension.
    pub q: f64,
    pub level: usize,
    lattice: Option<Lattice>,
}

impl MetricMeasureGrid {
    pub fn new(
        points: Vec<Vec<f64>>,
        weights: Vec<f64>,
        metric: GridMetric,
        q: f64,
        level: usize,
    ) -> Result<Self, BesovError> {
        let dim = points.first().ok_or(BesovError::EmptyGrid)?.len();
        if weights.len() != points.len() {
            return Err(BesovError::ValueCount { got: weights.len(), expected: points.len() });
        }
        for (index, p) in points.iter().enumerate() {
            if p.len() != dim {
                return Err(BesovError::PointDimension { index, got: p.len(), expected: dim });
            }
        }
        for (index, &weight) in weights.iter().enumerate() {
            if !(weight > 0.0 && weight.is_finite()) {
                return Err(BesovError::Weight { index, weight });
            }
        }
        if !(q > 0.0 && q.is_finite()) {
            return Err(BesovError::Parameter(alloc::format!("Q = {q}")));
        }
        if let GridMetric::X3 | GridMetric::Diag { .. } = metric {
            if dim != 2 {
                return Err(BesovError::PointDimension { index: 0, got: dim, expected: 2 });
            }
        }
        Ok(MetricMeasureGrid { dim, points: points.concat(), weights, metric, q, level, lattice: None })
    }

    fn lattice_grid(level: usize, metric: GridMetric, q: f64) -> Self {
        let n = 1usize << level;
        let side = n + 1;
        let h = 1.0 / n as f64;
        let c = |k: usize| if k == 0 || k == n { 0.5 } else { 1.0 };
        let mut points = Vec::with_capacity(2 * side * side);
        let mut weights = Vec::with_capacity(side * side);
        for j in 0..side {
            for i in 0..side {
                points.push(i as f64 * h);
                points.push(j as f64 * h);
                weights.push(c(i) * c(j) * h * h);
            }
        }
        MetricMeasureGrid { dim: 2, points, weights, metric, q, level, lattice: Some(Lattice { side, spacing: h }) }
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.points[i * self.dim..(i + 1) * self.dim]
    }

    pub fn weight(&self, i: usize) -> f64 {
        self.weights[i]
    }

    pub fn total_weight(&self) -> f64 {
        self.weights.iter().sum()
    }

    pub fn lattice(&self) -> Option<Lattice> {
        self.lattice
    }

    pub fn dist(&self, i: usize, j: usize) -> f64 {
        self.metric.dist(self.point(i), self.point(j))
    }

    /// Values of `u` at every point.
    pub fn sample<F: Fn(&[f64]) -> f64>(&self, u: F) -> Vec<f64> {
        (0..self.len()).map(|i| u(self.point(i))).collect()
    }

    /// Symmetry and separation of the metric on `count` random pairs.
    pub fn check_metric(&self, count: usize, seed: u64) -> Result<(), BesovError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = self.len();
        for _ in 0..count {
            let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
            let (a, b) = (self.dist(i, j), self.dist(j, i));
            if (a - b).abs() > 1e-12 * a.max(1.0) || (i != j && self.point(i) != self.point(j) && a == 0.0) {
                return Err(BesovError::Degenerate(i, j));
            }
        }
        Ok(())
    }
}

/// `(2^L + 1)²` points on `[0, 1]²` with the closed-form X_3 metric, `Q = 2`.
pub fn make_x3_grid(level: usize) -> Result<MetricMeasureGrid, BesovError> {
    check_level(level)?;
    Ok(MetricMeasureGrid::lattice_grid(level, GridMetric::X3, 2.0))
}

/// The same lattice with `max{|Δx|, |Δy|^{1/μ}}`, `Q = 1 + μ`.
pub fn make_diag_grid(level: usize, mu: f64) -> Result<MetricMeasureGrid, BesovError> {
    check_level(level)?;
    if !(mu > 0.0 && mu.is_finite()) {
        return Err(BesovError::Parameter(alloc::format!("mu = {mu}")));
    }
    Ok(MetricMeasureGrid::lattice_grid(level, GridMetric::Diag { mu }, 1.0 + mu))
}

fn check_level(level: usize) -> Result<(), BesovError> {
    if level == 0 || level > 12 {
        return Err(BesovError::Parameter(alloc::format!("level {level} outside 1..=12")));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesovOptions {
    /// Unordered pairs summed in full before sampling starts.
    pub pair_budget: usize,
    pub seed: u64,
}

impl Default for BesovOptions {
    fn default() -> Self {
        BesovOptions { pair_budget: DEFAULT_PAIR_BUDGET, seed: 0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairMethod {
    /// Fewer than two points in the region.
    Degenerate,
    /// Every off-diagonal pair.
    Full,
    /// Exact sum grouped by lattice displacement (affine `u`).
    Displacement,
    /// Stratified by `⌊log₂ ϱ⌋`, Horvitz–Thompson weighted.
    Sampled,
}

/// Atoms `(Δu, w w' / ϱ^{2Q})` over ordered pairs, ready for a Luxembourg solve.
#[derive(Debug, Clone, PartialEq)]
pub struct PairMeasure {
    pub atoms: WeightedSamples,
    pub method: PairMethod,
    pub pairs_used: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesovEstimate {
    pub value: f64,
    pub degenerate: bool,
    pub method: PairMethod,
    pub pairs_used: usize,
}

pub fn besov_seminorm<Y: YoungFunction>(
    phi: &Y,
    grid: &MetricMeasureGrid,
    u: &[f64],
    region: Option<&[usize]>,
    opts: &BesovOptions,
) -> Result<BesovEstimate, BesovError> {
    let pm = pair_measure(grid, u, region, opts)?;
    let value = luxembourg_norm(phi, &pm.atoms);
    Ok(BesovEstimate { value, degenerate: pm.method == PairMethod::Degenerate, method: pm.method, pairs_used: pm.pairs_used })
}

/// The discretized `λ = H ⊗ H / ϱ^{2Q}` pushed forward by `u(ξ) - u(ζ)`.
pub fn pair_measure(
    grid: &MetricMeasureGrid,
    u: &[f64],
    region: Option<&[usize]>,
    opts: &BesovOptions,
) -> Result<PairMeasure, BesovError> {
    if u.len() != grid.len() {
        return Err(BesovError::ValueCount { got: u.len(), expected: grid.len() });
    }
    if let Some(i) = u.iter().position(|v| !v.is_finite()) {
        return Err(BesovError::NonFinite(i));
    }
    let idx: Vec<usize> = match region {
        Some(r) => {
            if let Some(&bad) = r.iter().find(|&&i| i >= grid.len()) {
                return Err(BesovError::Region(bad));
            }
            let mut r = r.to_vec();
            r.sort_unstable();
            r.dedup();
            r
        }
        None => (0..grid.len()).collect(),
    };
    if idx.len() < 2 {
        return Ok(PairMeasure { atoms: WeightedSamples::default(), method: PairMethod::Degenerate, pairs_used: 0 });
    }
    let whole = idx.len() == grid.len();
    if let (true, Some(lat)) = (whole, grid.lattice) {
        if let Some((a, b)) = affine_coefficients(lat, u) {
            return Ok(displacement_sum(grid, lat, a, b));
        }
    }
    let unordered = idx.len() * (idx.len() - 1) / 2;
    if unordered <= opts.pair_budget {
        return full_sum(grid, u, &idx);
    }
    match (whole, grid.lattice) {
        (true, Some(lat)) => Ok(lattice_sample(grid, lat, u, opts)),
        _ => rejection_sample(grid, u, &idx, opts),
    }
}

fn density(grid: &MetricMeasureGrid, rho: f64) -> f64 {
    Float::powf(rho, -2.0 * grid.q)
}

fn full_sum(grid: &MetricMeasureGrid, u: &[f64], idx: &[usize]) -> Result<PairMeasure, BesovError> {
    let mut atoms = Vec::new();
    let mut pairs = 0;
    for (a, &i) in idx.iter().enumerate() {
        for &j in &idx[a + 1..] {
            pairs += 1;
            let du = u[j] - u[i];
            if du == 0.0 {
                continue;
            }
            let rho = grid.dist(i, j);
            if rho == 0.0 {
                return Err(BesovError::Degenerate(i, j));
            }
            let w = grid.weights[i] * grid.weights[j] * density(grid, rho);
            // ordered pairs (i, j) and (j, i)
            atoms.push((du, 2.0 * w));
        }
    }
    Ok(PairMeasure { atoms: WeightedSamples::new(atoms).expect("finite"), method: PairMethod::Full, pairs_used: pairs })
}

/// `(a, b)` with `u(i, j) = u_0 + a i + b j` on the lattice, if any.
fn affine_coefficients(lat: Lattice, u: &[f64]) -> Option<(f64, f64)> {
    let s = lat.side;
    let a = u[1] - u[0];
    let b = u[s] - u[0];
    let scale = u.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(f64::MIN_POSITIVE);
    let tol = 1e-12 * scale;
    for j in 0..s {
        for i in 0..s {
            let pred = u[0] + a * i as f64 + b * j as f64;
            if (u[j * s + i] - pred).abs() > tol {
                return None;
            }
        }
    }
    Some((a, b))
}

fn displacement_sum(grid: &MetricMeasureGrid, lat: Lattice, a: f64, b: f64) -> PairMeasure {
    let s = lat.side as isize;
    let h = lat.spacing;
    let mut atoms = Vec::new();
    let mut pairs = 0usize;
    for dj in -(s - 1)..s {
        let cy = lat.autocorrelation(dj.unsigned_abs());
        for di in -(s - 1)..s {
            if di == 0 && dj == 0 {
                continue;
            }
            pairs += (s - di.abs()) as usize * (s - dj.abs()) as usize;
            let du = a * di as f64 + b * dj as f64;
            if du == 0.0 {
                continue;
            }
            let rho = grid.metric.displacement(&[di as f64 * h, dj as f64 * h]);
            let w = lat.autocorrelation(di.unsigned_abs()) * cy * h.powi(4) * density(grid, rho);
            atoms.push((du, w));
        }
    }
    PairMeasure { atoms: WeightedSamples::new(atoms).expect("finite"), method: PairMethod::Displacement, pairs_used: pairs / 2 }
}

fn bucket(rho: f64) -> i32 {
    rho.log2().floor() as i32
}

/// `(bucket, di, dj, pair count, ϱ)`.
type Displacement = (i32, isize, isize, usize, f64);
/// `(bucket, draws landing in it, kept (Δu, weight))`.
type Bucket = (i32, usize, Vec<(f64, f64)>);

/// Displacements grouped by `⌊log₂ ϱ⌋`; each pair is drawn by choosing a
/// displacement with probability ∝ pair count × `ϱ^{-2Q}`, then a uniform start.
fn lattice_sample(grid: &MetricMeasureGrid, lat: Lattice, u: &[f64], opts: &BesovOptions) -> PairMeasure {
    let s = lat.side as isize;
    let h = lat.spacing;
    // (bucket, di, dj, count, rho), only di > 0 or (di == 0, dj > 0): unordered
    let mut disp: Vec<Displacement> = Vec::new();
    for dj in -(s - 1)..s {
        for di in 0..s {
            if di == 0 && dj <= 0 {
                continue;
            }
            let rho = grid.metric.displacement(&[di as f64 * h, dj as f64 * h]);
            let count = (s - di) as usize * (s - dj.abs()) as usize;
            disp.push((bucket(rho), di, dj, count, rho));
        }
    }
    disp.sort_by_key(|d| d.0);
    let mut groups: Vec<&[Displacement]> = Vec::new();
    let mut start = 0;
    for k in 1..=disp.len() {
        if k == disp.len() || disp[k].0 != disp[start].0 {
            groups.push(&disp[start..k]);
            start = k;
        }
    }
    let quota = (opts.pair_budget / groups.len()).max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut atoms = Vec::new();
    let mut used = 0;
    let at = |i: isize, j: isize| (j * s + i) as usize;
    for g in groups {
        let total: usize = g.iter().map(|d| d.3).sum();
        let mut push = |i0: isize, j0: isize, d: &(i32, isize, isize, usize, f64), scale: f64| {
            let (p, q) = (at(i0, j0), at(i0 + d.1, j0 + d.2));
            let du = u[q] - u[p];
            if du != 0.0 {
                atoms.push((du, 2.0 * scale * grid.weights[p] * grid.weights[q] * density(grid, d.4)));
            }
        };
        let j_range = |dj: isize| if dj >= 0 { 0..s - dj } else { -dj..s };
        if total <= quota {
            for d in g {
                for j0 in j_range(d.2) {
                    for i0 in 0..s - d.1 {
                        push(i0, j0, d, 1.0);
                    }
                }
            }
            used += total;
            continue;
        }
        let cumulative: Vec<f64> = g
            .iter()
            .scan(0.0, |acc, d| {
                *acc += d.3 as f64 * density(grid, d.4);
                Some(*acc)
            })
            .collect();
        let z = cumulative[cumulative.len() - 1];
        for _ in 0..quota {
            let r = rng.gen_range(0.0..z);
            let k = cumulative.partition_point(|&c| c <= r).min(g.len() - 1);
            let d = &g[k];
            let scale = z / (quota as f64 * density(grid, d.4));
            let i0 = rng.gen_range(0..s - d.1);
            let jr = j_range(d.2);
            let j0 = rng.gen_range(jr);
            push(i0, j0, d, scale);
        }
        used += quota;
    }
    PairMeasure { atoms: WeightedSamples::new(atoms).expect("finite"), method: PairMethod::Sampled, pairs_used: used }
}

/// Uniform draws, kept until each `⌊log₂ ϱ⌋` bucket meets its quota; bucket
/// sizes are estimated from all draws.
fn rejection_sample(
    grid: &MetricMeasureGrid,
    u: &[f64],
    idx: &[usize],
    opts: &BesovOptions,
) -> Result<PairMeasure, BesovError> {
    let n = idx.len();
    let unordered = (n * (n - 1) / 2) as f64;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut buckets: Vec<Bucket> = Vec::new();
    let pilot = opts.pair_budget.clamp(1, 100_000);
    let draw = |rng: &mut ChaCha8Rng| -> Result<(usize, usize, f64), BesovError> {
        let a = rng.gen_range(0..n);
        let mut b = rng.gen_range(0..n - 1);
        if b >= a {
            b += 1;
        }
        let (i, j) = (idx[a], idx[b]);
        let rho = grid.dist(i, j);
        if rho == 0.0 {
            return Err(BesovError::Degenerate(i, j));
        }
        Ok((i, j, rho))
    };
    // the pilot fixes the bucket set and with it the quota
    for _ in 0..pilot {
        let (_, _, rho) = draw(&mut rng)?;
        let k = bucket(rho);
        if !buckets.iter().any(|e| e.0 == k) {
            buckets.push((k, 0, Vec::new()));
        }
    }
    let quota = (opts.pair_budget / buckets.len()).max(1);
    let mut full = 0;
    let mut total_draws = 0usize;
    for _ in 0..opts.pair_budget.saturating_mul(4) {
        let (i, j, rho) = draw(&mut rng)?;
        let k = bucket(rho);
        let slot = match buckets.iter().position(|e| e.0 == k) {
            Some(p) => p,
            None => {
                buckets.push((k, 0, Vec::new()));
                buckets.len() - 1
            }
        };
        total_draws += 1;
        let e = &mut buckets[slot];
        e.1 += 1;
        if e.2.len() < quota {
            e.2.push((u[j] - u[i], grid.weights[i] * grid.weights[j] * density(grid, rho)));
            if e.2.len() == quota {
                full += 1;
            }
        }
        if full == buckets.len() {
            break;
        }
    }
    let mut atoms = Vec::new();
    let mut used = 0;
    for (_, count, kept) in &buckets {
        if kept.is_empty() {
            continue;
        }
        used += kept.len();
        let size = unordered * *count as f64 / total_draws as f64;
        let scale = size / kept.len() as f64;
        atoms.extend(kept.iter().filter(|e| e.0 != 0.0).map(|e| (e.0, 2.0 * scale * e.1)));
    }
    Ok(PairMeasure { atoms: WeightedSamples::new(atoms).expect("finite"), method: PairMethod::Sampled, pairs_used: used })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Stabilizing,
    Diverging,
    Undetermined,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepOptions {
    pub stabilize_tol: f64,
    pub diverge_ratio: f64,
    pub besov: BesovOptions,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            stabilize_tol: DEFAULT_STABILIZE_TOL,
            diverge_ratio: DEFAULT_DIVERGE_RATIO,
            besov: BesovOptions::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepVerdict {
    pub levels: Vec<usize>,
    pub estimates: Vec<f64>,
    pub verdict: Verdict,
}

impl SweepVerdict {
    /// Ratio of the last two estimates.
    pub fn last_ratio(&self) -> f64 {
        let n = self.estimates.len();
        self.estimates[n - 1] / self.estimates[n - 2]
    }
}

/// Verdict from per-level estimates.
pub fn classify_estimates(estimates: &[f64], stabilize_tol: f64, diverge_ratio: f64) -> Verdict {
    let n = estimates.len();
    if n < 2 {
        return Verdict::Undetermined;
    }
    if estimates.iter().all(|e| *e == 0.0) {
        return Verdict::Stabilizing;
    }
    let (prev, last) = (estimates[n - 2], estimates[n - 1]);
    let increasing = estimates.windows(2).all(|w| w[1] > w[0]);
    if increasing && last > diverge_ratio * prev {
        return Verdict::Diverging;
    }
    if prev > 0.0 && ((last - prev) / prev).abs() < stabilize_tol {
        return Verdict::Stabilizing;
    }
    Verdict::Undetermined
}

pub fn refinement_sweep<Y, G, U>(
    phi: &Y,
    grid_factory: G,
    u: U,
    levels: &[usize],
    opts: &SweepOptions,
) -> Result<SweepVerdict, BesovError>
where
    Y: YoungFunction,
    G: Fn(usize) -> Result<MetricMeasureGrid, BesovError>,
    U: Fn(&[f64]) -> f64,
{
    if levels.len() < 3 || levels.windows(2).any(|w| w[1] <= w[0]) {
        return Err(BesovError::Levels);
    }
    let mut estimates = Vec::with_capacity(levels.len());
    for &level in levels {
        let grid = grid_factory(level)?;
        let values = grid.sample(&u);
        estimates.push(besov_seminorm(phi, &grid, &values, None, &opts.besov)?.value);
    }
    let verdict = classify_estimates(&estimates, opts.stabilize_tol, opts.diverge_ratio);
    Ok(SweepVerdict { levels: levels.to_vec(), estimates, verdict })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeparationEntry {
    pub name: String,
    pub sweep: SweepVerdict,
    /// Finite seminorm along the sweep.
    pub separated: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeparationProfile {
    pub entries: Vec<SeparationEntry>,
}

impl SeparationProfile {
    pub fn separated(&self) -> Vec<bool> {
        self.entries.iter().map(|e| e.separated).collect()
    }

    /// Agreement with the coordinate projections that descend to the
    /// predicted quotient; `None` when the prediction has no subgroup.
    pub fn matches(&self, prediction: &SpectrumResult) -> Option<bool> {
        let expected = prediction.coordinate_membership()?;
        Some(expected.len() == self.entries.len() && expected == self.separated())
    }
}

/// A named function on grid points.
pub type Candidate<'a> = (&'a str, &'a dyn Fn(&[f64]) -> f64);

pub fn separation_profile<Y, G>(
    phi: &Y,
    grid_factory: G,
    candidates: &[Candidate<'_>],
    levels: &[usize],
    opts: &SweepOptions,
) -> Result<SeparationProfile, BesovError>
where
    Y: YoungFunction,
    G: Fn(usize) -> Result<MetricMeasureGrid, BesovError>,
{
    let mut entries = Vec::with_capacity(candidates.len());
    for &(name, f) in candidates {
        let sweep = refinement_sweep(phi, &grid_factory, f, levels, opts)?;
        let separated = sweep.verdict == Verdict::Stabilizing && sweep.estimates.iter().any(|e| *e > 0.0);
        entries.push(SeparationEntry { name: String::from(name), sweep, separated });
    }
    Ok(SeparationProfile { entries })
}

/// `H(B(x, r)) / r^Q` over the given centers and radii: `(min, max)`.
pub fn ahlfors_probe(grid: &MetricMeasureGrid, centers: &[usize], radii: &[f64]) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = 0.0f64;
    for &c in centers {
        for &r in radii {
            let mass: f64 = (0..grid.len()).filter(|&j| grid.dist(c, j) < r).map(|j| grid.weights[j]).sum();
            let ratio = mass / Float::powf(r, grid.q);
            lo = lo.min(ratio);
            hi = hi.max(ratio);
        }
    }
    (lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::young::{luxembourg_objective, PhiPk};
    use alloc::vec;

    fn pi1(p: &[f64]) -> f64 {
        p[0]
    }

    fn pi2(p: &[f64]) -> f64 {
        p[1]
    }

    #[test]
    fn grid_basics() {
        let g = make_x3_grid(1).unwrap();
        assert_eq!(g.len(), 9);
        assert!((g.total_weight() - 1.0).abs() < 1e-12);
        let g = make_x3_grid(4).unwrap();
        assert!((g.total_weight() - 1.0).abs() < 1e-12);
        assert!((g.dist(0, 1) - 1.0 / 16.0).abs() < 1e-15);
        g.check_metric(500, 1).unwrap();
        assert!(make_x3_grid(0).is_err());
    }

    #[test]
    fn two_point_oracle() {
        let g = MetricMeasureGrid::new(vec![vec![0.0], vec![1.0]], vec![1.0, 1.0], GridMetric::Euclidean, 1.7, 0).unwrap();
        let phi = PhiPk::new(2.0, 0.0).unwrap();
        let e = besov_seminorm(&phi, &g, &[0.0, 1.0], None, &BesovOptions::default()).unwrap();
        assert!((e.value - 2.0f64.sqrt()).abs() < 1e-12);
        let c = besov_seminorm(&phi, &g, &[0.4, 0.4], None, &BesovOptions::default()).unwrap();
        assert_eq!(c.value, 0.0);
        let d = besov_seminorm(&phi, &g, &[0.0, 1.0], Some(&[1]), &BesovOptions::default()).unwrap();
        assert!(d.degenerate && d.value == 0.0);
    }

    #[test]
    fn displacement_matches_full_sum() {
        let g = make_x3_grid(3).unwrap();
        let phi = PhiPk::new(2.0, 2.0).unwrap();
        for u in [pi1 as fn(&[f64]) -> f64, pi2, |p: &[f64]| 0.3 * p[0] - 2.0 * p[1]] {
            let vals = g.sample(u);
            let fast = besov_seminorm(&phi, &g, &vals, None, &BesovOptions::default()).unwrap();
            assert_eq!(fast.method, PairMethod::Displacement);
            let all: Vec<usize> = (0..g.len()).collect();
            let full = besov_seminorm(&phi, &g, &vals, Some(&all[..all.len() - 1]), &BesovOptions::default()).unwrap();
            assert_eq!(full.method, PairMethod::Full);
            let full_all = luxembourg_norm(&phi, &full_sum(&g, &vals, &all).unwrap().atoms);
            assert!((fast.value - full_all).abs() < 1e-10 * full_all);
        }
    }

    #[test]
    fn sampling_is_close_on_small_grids() {
        let g = make_x3_grid(4).unwrap();
        let phi = PhiPk::new(2.0, 1.0).unwrap();
        let vals = g.sample(|p| (3.0 * p[0]).sin() + p[1] * p[1]);
        let full = besov_seminorm(&phi, &g, &vals, None, &BesovOptions::default()).unwrap();
        let opts = BesovOptions { pair_budget: 20_000, seed: 9 };
        let s = besov_seminorm(&phi, &g, &vals, None, &opts).unwrap();
        assert_eq!(s.method, PairMethod::Sampled);
        assert!((s.value - full.value).abs() <= 0.02 * full.value, "{} vs {}", s.value, full.value);
    }

    #[test]
    fn rejection_sampling_is_close() {
        let g = make_diag_grid(3, 2.0).unwrap();
        let phi = PhiPk::new(2.0, 0.0).unwrap();
        let vals = g.sample(|p| (2.0 * p[0]).cos() + p[1]);
        let all: Vec<usize> = (1..g.len()).collect();
        let full = besov_seminorm(&phi, &g, &vals, Some(&all), &BesovOptions::default()).unwrap();
        let s = besov_seminorm(&phi, &g, &vals, Some(&all), &BesovOptions { pair_budget: 1000, seed: 2 }).unwrap();
        assert_eq!(s.method, PairMethod::Sampled);
        assert!((s.value - full.value).abs() <= 0.1 * full.value, "{} vs {}", s.value, full.value);
    }

    #[test]
    fn homogeneity_and_region_monotone() {
        let g = make_x3_grid(3).unwrap();
        let phi = PhiPk::new(2.0, 1.0).unwrap();
        let vals = g.sample(|p| p[0] * p[1]);
        let o = BesovOptions::default();
        let base = besov_seminorm(&phi, &g, &vals, None, &o).unwrap().value;
        let scaled: Vec<f64> = vals.iter().map(|v| -3.5 * v).collect();
        let s = besov_seminorm(&phi, &g, &scaled, None, &o).unwrap().value;
        assert!((s - 3.5 * base).abs() < 1e-9 * s);
        let small: Vec<usize> = (0..40).collect();
        let big: Vec<usize> = (0..60).collect();
        let a = besov_seminorm(&phi, &g, &vals, Some(&small), &o).unwrap().value;
        let b = besov_seminorm(&phi, &g, &vals, Some(&big), &o).unwrap().value;
        assert!(a <= b + 1e-12);
    }

    #[test]
    fn objective_decreases_in_kappa() {
        let g = make_x3_grid(3).unwrap();
        let vals = g.sample(pi1);
        let atoms = pair_measure(&g, &vals, None, &BesovOptions::default()).unwrap().atoms;
        let alpha = 10.0;
        let mut prev = f64::INFINITY;
        for k in [0.0, 1.0, 2.0, 4.0] {
            let v = luxembourg_objective(&PhiPk::new(2.0, k).unwrap(), &atoms, alpha);
            assert!(v <= prev);
            prev = v;
        }
    }

    #[test]
    fn verdict_rules() {
        assert_eq!(classify_estimates(&[0.0, 0.0, 0.0], 0.05, 1.05), Verdict::Stabilizing);
        assert_eq!(classify_estimates(&[1.0, 1.2, 1.4], 0.05, 1.05), Verdict::Diverging);
        assert_eq!(classify_estimates(&[1.0, 1.01, 1.02], 0.05, 1.05), Verdict::Stabilizing);
        assert_eq!(classify_estimates(&[1.0, 0.5, 0.9], 0.05, 1.05), Verdict::Undetermined);
    }

    #[test]
    fn constant_sweep() {
        let phi = PhiPk::new(2.0, 2.0).unwrap();
        let s = refinement_sweep(&phi, make_x3_grid, |_| 1.0, &[2, 3, 4], &SweepOptions::default()).unwrap();
        assert_eq!(s.verdict, Verdict::Stabilizing);
        assert!(refinement_sweep(&phi, make_x3_grid, pi1, &[2, 3], &SweepOptions::default()).is_err());
    }

    #[test]
    fn ahlfors_probe_is_bounded() {
        let g = make_x3_grid(5).unwrap();
        let center = g.len() / 2;
        let (lo, hi) = ahlfors_probe(&g, &[center], &[0.05, 0.1, 0.2]);
        assert!(lo > 0.0 && hi / lo < 20.0);
    }
}
