//! Young functions, the `φ_{p,κ}` family and Luxembourg norms on discrete measures.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::f64::consts::{E, LN_2};

use num_traits::Float;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum YoungError {
    #[error("exponent out of domain: p = {p}, kappa = {kappa} (need p >= 1, kappa >= 0)")]
    Domain { p: f64, kappa: f64 },
    #[error("invalid weight {weight} at atom {index}")]
    InvalidWeight { index: usize, weight: f64 },
    #[error("non-finite value {value} at atom {index}")]
    InvalidValue { index: usize, value: f64 },
    #[error("doubling metadata required")]
    MissingDoubling,
    #[error("doubling threshold must be infinite for this check, got {0}")]
    FiniteThreshold(f64),
    #[error("Young function axiom `{axiom}` fails at t = {t}")]
    Axiom { axiom: &'static str, t: f64 },
}

/// Lexicographically ordered exponent pair `(p, κ)`.
///
/// Field order matters: the derived comparisons compare `p` first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PkExponent<T> {
    pub p: T,
    pub kappa: T,
}

impl<T> PkExponent<T> {
    pub const fn new(p: T, kappa: T) -> Self {
        PkExponent { p, kappa }
    }
}

impl PkExponent<f64> {
    /// Total lexicographic order on non-NaN pairs.
    pub fn lex_cmp(&self, other: &Self) -> Ordering {
        self.p.total_cmp(&other.p).then(self.kappa.total_cmp(&other.kappa))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Doubling {
    /// `K ≥ sup tφ'(t)/φ(t)` on `(0, t₀]`, so `x^K φ(y) ≤ φ(xy)`.
    pub exponent: f64,
    /// `t₀`; `f64::INFINITY` when the bound is global.
    pub threshold: f64,
}

impl Doubling {
    /// Multiplicative constant `2^K` in `φ(2t) ≤ 2^K φ(t)`.
    pub fn constant(&self) -> f64 {
        Float::powf(2.0f64, self.exponent)
    }
}

pub trait YoungFunction {
    fn eval(&self, t: f64) -> f64;

    /// One-sided derivative on `[0, ∞)`, extended oddly.
    fn derivative(&self, t: f64) -> f64;

    fn doubling(&self) -> Option<Doubling> {
        None
    }

    fn family(&self) -> Option<PkExponent<f64>> {
        None
    }

    /// `ln φ(t)`; override when `φ` under- or overflows.
    fn ln_eval(&self, t: f64) -> f64 {
        self.eval(t).ln()
    }

    /// `tφ'(t)/φ(t)` for `t > 0`.
    fn elasticity(&self, t: f64) -> f64 {
        let t = t.abs();
        t * self.derivative(t) / self.eval(t)
    }

    /// `(φ(t), tφ'(t))`, computed together.
    fn eval_pair(&self, t: f64) -> (f64, f64) {
        let t = t.abs();
        (self.eval(t), t * self.derivative(t))
    }
}

impl<Y: YoungFunction + ?Sized> YoungFunction for &Y {
    fn eval(&self, t: f64) -> f64 {
        (**self).eval(t)
    }
    fn derivative(&self, t: f64) -> f64 {
        (**self).derivative(t)
    }
    fn doubling(&self) -> Option<Doubling> {
        (**self).doubling()
    }
    fn family(&self) -> Option<PkExponent<f64>> {
        (**self).family()
    }
    fn ln_eval(&self, t: f64) -> f64 {
        (**self).ln_eval(t)
    }
    fn elasticity(&self, t: f64) -> f64 {
        (**self).elasticity(t)
    }
    fn eval_pair(&self, t: f64) -> (f64, f64) {
        (**self).eval_pair(t)
    }
}

/// `φ_{p,κ}(t) = |t|^p / ln(e + 1/|t|)^κ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhiPk {
    p: f64,
    kappa: f64,
    int_p: Option<i32>,
    int_kappa: Option<i32>,
}

pub fn make_phi_pk(e: PkExponent<f64>) -> Result<PhiPk, YoungError> {
    PhiPk::new(e.p, e.kappa)
}

impl PhiPk {
    pub fn new(p: f64, kappa: f64) -> Result<Self, YoungError> {
        if !(p >= 1.0 && p.is_finite() && kappa >= 0.0 && kappa.is_finite()) {
            return Err(YoungError::Domain { p, kappa });
        }
        let int_p = (p == p.round() && p <= 64.0).then_some(p as i32);
        let int_kappa = (kappa == kappa.round() && kappa <= 64.0).then_some(kappa as i32);
        Ok(PhiPk { p, kappa, int_p, int_kappa })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    fn pow(&self, t: f64) -> f64 {
        match self.int_p {
            Some(k) => t.powi(k),
            None => t.powf(self.p),
        }
    }

    /// `ln(e + 1/t)` for `t > 0`, stable at both ends.
    pub fn log_term(t: f64) -> f64 {
        if t < 1.0 {
            -t.ln() + (E * t).ln_1p()
        } else {
            (E + 1.0 / t).ln()
        }
    }

    fn log_pow(&self, l: f64) -> f64 {
        match self.int_kappa {
            Some(k) => l.powi(k),
            None => l.powf(self.kappa),
        }
    }

    fn correction(&self, t: f64, l: f64) -> f64 {
        self.kappa / ((E * t + 1.0) * l)
    }
}

impl YoungFunction for PhiPk {
    fn eval(&self, t: f64) -> f64 {
        let t = t.abs();
        if t == 0.0 {
            return 0.0;
        }
        if self.kappa == 0.0 {
            return self.pow(t);
        }
        self.pow(t) / self.log_pow(Self::log_term(t))
    }

    fn derivative(&self, t: f64) -> f64 {
        let a = t.abs();
        if a == 0.0 {
            return if self.p == 1.0 && self.kappa == 0.0 { t.signum() } else { 0.0 };
        }
        let d = self.eval(a) * self.elasticity(a) / a;
        if t < 0.0 {
            -d
        } else {
            d
        }
    }

    fn doubling(&self) -> Option<Doubling> {
        Some(Doubling { exponent: self.p + self.kappa, threshold: f64::INFINITY })
    }

    fn family(&self) -> Option<PkExponent<f64>> {
        Some(PkExponent::new(self.p, self.kappa))
    }

    fn ln_eval(&self, t: f64) -> f64 {
        let t = t.abs();
        if t == 0.0 {
            return f64::NEG_INFINITY;
        }
        let base = self.p * t.ln();
        if self.kappa == 0.0 {
            base
        } else {
            base - self.kappa * Self::log_term(t).ln()
        }
    }

    fn elasticity(&self, t: f64) -> f64 {
        let t = t.abs();
        if self.kappa == 0.0 {
            return self.p;
        }
        self.p + self.correction(t, Self::log_term(t))
    }

    fn eval_pair(&self, t: f64) -> (f64, f64) {
        let t = t.abs();
        if t == 0.0 {
            return (0.0, 0.0);
        }
        if self.kappa == 0.0 {
            let v = self.pow(t);
            return (v, self.p * v);
        }
        let l = Self::log_term(t);
        let v = self.pow(t) / self.log_pow(l);
        (v, v * (self.p + self.correction(t, l)))
    }
}

/// `c·φ` for a constant `c > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scaled<Y> {
    pub factor: f64,
    pub inner: Y,
}

impl<Y: YoungFunction> YoungFunction for Scaled<Y> {
    fn eval(&self, t: f64) -> f64 {
        self.factor * self.inner.eval(t)
    }
    fn derivative(&self, t: f64) -> f64 {
        self.factor * self.inner.derivative(t)
    }
    fn doubling(&self) -> Option<Doubling> {
        self.inner.doubling()
    }
    fn ln_eval(&self, t: f64) -> f64 {
        self.factor.ln() + self.inner.ln_eval(t)
    }
    fn elasticity(&self, t: f64) -> f64 {
        self.inner.elasticity(t)
    }
    fn eval_pair(&self, t: f64) -> (f64, f64) {
        let (v, d) = self.inner.eval_pair(t);
        (self.factor * v, self.factor * d)
    }
}

/// Finite weighted atoms `(value, weight)`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct WeightedSamples {
    atoms: Vec<(f64, f64)>,
}

impl WeightedSamples {
    pub fn new(atoms: Vec<(f64, f64)>) -> Result<Self, YoungError> {
        for (index, &(value, weight)) in atoms.iter().enumerate() {
            if !(weight >= 0.0 && weight.is_finite()) {
                return Err(YoungError::InvalidWeight { index, weight });
            }
            if !value.is_finite() {
                return Err(YoungError::InvalidValue { index, value });
            }
        }
        Ok(WeightedSamples { atoms })
    }

    /// Unit weights.
    pub fn counting(values: &[f64]) -> Result<Self, YoungError> {
        Self::new(values.iter().map(|&v| (v, 1.0)).collect())
    }

    pub fn atoms(&self) -> &[(f64, f64)] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn scaled(&self, c: f64) -> Self {
        WeightedSamples { atoms: self.atoms.iter().map(|&(v, w)| (v * c, w)).collect() }
    }

    pub fn max_abs(&self) -> f64 {
        self.atoms.iter().filter(|a| a.1 > 0.0).fold(0.0, |m, a| m.max(a.0.abs()))
    }

    pub fn total_weight(&self) -> f64 {
        self.atoms.iter().map(|a| a.1).sum()
    }
}

/// Relative tolerance of the Luxembourg solver.
pub const LUX_RTOL: f64 = 1e-12;

/// Solves `g(α) = 1` for a nonincreasing objective.
///
/// `objective(α)` returns `(g(α), -α g'(α))`. `start` must be positive; the
/// solver brackets with clamped Newton jumps in `ln α`, then runs Newton on
/// `ln g(e^s)` with bisection fallback.
pub fn solve_unit_level<F>(start: f64, mut objective: F, mut trace: Option<&mut Vec<(f64, f64)>>) -> f64
where
    F: FnMut(f64) -> (f64, f64),
{
    let mut eval = |alpha: f64, trace: &mut Option<&mut Vec<(f64, f64)>>| {
        let r = objective(alpha);
        if let Some(t) = trace.as_deref_mut() {
            t.push((alpha, r.0));
        }
        r
    };
    // bracket with Newton jumps in s = ln α, each clamped to [ln 2 / 2, 40 ln 2]
    let jump = |g: (f64, f64)| {
        let slope = if g.0 > 0.0 { g.1 / g.0 } else { 0.0 };
        let raw = if slope > 0.0 && slope.is_finite() { g.0.ln().abs() / slope } else { LN_2 };
        raw.clamp(0.5 * LN_2, 40.0 * LN_2).exp()
    };
    let mut hi = start;
    let mut g_hi = eval(hi, &mut trace);
    let mut lo = hi;
    let mut g_lo = g_hi;
    while g_hi.0 > 1.0 {
        lo = hi;
        g_lo = g_hi;
        hi *= jump(g_hi);
        assert!(hi.is_finite(), "Luxembourg bracket escaped to infinity");
        g_hi = eval(hi, &mut trace);
    }
    if g_hi.0 == 1.0 {
        return hi;
    }
    if !(g_lo.0 > 1.0) {
        while g_lo.0 < 1.0 {
            hi = lo;
            g_hi = g_lo;
            lo /= jump(g_lo);
            if lo < f64::MIN_POSITIVE {
                return 0.0;
            }
            g_lo = eval(lo, &mut trace);
        }
        if g_lo.0 == 1.0 {
            return lo;
        }
    }
    // both ends straddle 1 now; work in s = ln α
    let (mut s_lo, mut s_hi) = (lo.ln(), hi.ln());
    let (mut s, mut g) = if (g_hi.0 - 1.0).abs() < (g_lo.0 - 1.0).abs() {
        (s_hi, g_hi)
    } else {
        (s_lo, g_lo)
    };
    for _ in 0..200 {
        let h = g.0.ln();
        let slope = if g.0 > 0.0 { -g.1 / g.0 } else { 0.0 };
        let mut next = if slope < 0.0 && slope.is_finite() { s - h / slope } else { f64::NAN };
        if !(next > s_lo && next < s_hi) {
            next = 0.5 * (s_lo + s_hi);
        }
        let step = (next - s).abs();
        s = next;
        g = eval(s.exp(), &mut trace);
        if g.0 > 1.0 {
            s_lo = s;
        } else if g.0 < 1.0 {
            s_hi = s;
        } else {
            return s.exp();
        }
        if step < 0.1 * LUX_RTOL || s_hi - s_lo < LUX_RTOL {
            break;
        }
    }
    s.exp()
}

fn lux_objective<Y: YoungFunction>(phi: &Y, samples: &WeightedSamples, alpha: f64) -> (f64, f64) {
    let inv = 1.0 / alpha;
    let mut g = 0.0;
    let mut d = 0.0;
    for &(v, w) in &samples.atoms {
        if w == 0.0 || v == 0.0 {
            continue;
        }
        let (a, b) = phi.eval_pair(v * inv);
        g += w * a;
        d += w * b;
    }
    (g, d)
}

fn lux_start(samples: &WeightedSamples) -> f64 {
    samples.max_abs() * samples.total_weight().max(1.0)
}

/// `inf{α > 0 : Σ w φ(v/α) ≤ 1}`.
pub fn luxembourg_norm<Y: YoungFunction>(phi: &Y, samples: &WeightedSamples) -> f64 {
    if samples.max_abs() == 0.0 {
        return 0.0;
    }
    solve_unit_level(lux_start(samples), |a| lux_objective(phi, samples, a), None)
}

/// Like [`luxembourg_norm`], also returning every `(α, objective)` evaluated.
pub fn luxembourg_norm_traced<Y: YoungFunction>(phi: &Y, samples: &WeightedSamples) -> (f64, Vec<(f64, f64)>) {
    let mut trace = Vec::new();
    if samples.max_abs() == 0.0 {
        return (0.0, trace);
    }
    let n = solve_unit_level(lux_start(samples), |a| lux_objective(phi, samples, a), Some(&mut trace));
    (n, trace)
}

/// The defining objective `Σ w φ(v/α)`.
pub fn luxembourg_objective<Y: YoungFunction>(phi: &Y, samples: &WeightedSamples, alpha: f64) -> f64 {
    lux_objective(phi, samples, alpha).0
}

/// Estimate of `p_φ = limsup_{t→0} tφ'(t)/φ(t)` from `t = 2^{-j}`, `j = 10..50`.
///
/// A monotone tail is extrapolated to `j → ∞` (quadratic in `1/j`); otherwise
/// the tail supremum is returned. Exploding ratios give `+∞`.
pub fn doubling_exponent<Y: YoungFunction>(phi: &Y) -> f64 {
    let ratios: Vec<f64> = (10..=50).map(|j| phi.elasticity(Float::powi(2.0f64, -j))).collect();
    if ratios.iter().any(|r| !r.is_finite() || *r > 1e6) {
        return f64::INFINITY;
    }
    let tail = &ratios[30..];
    let nonincreasing = tail.windows(2).all(|w| w[1] <= w[0]);
    let nondecreasing = tail.windows(2).all(|w| w[1] >= w[0]);
    if nonincreasing || nondecreasing {
        // Neville at x = 0 on x_j = 1/j, j = 48, 49, 50
        let xs = [1.0 / 48.0, 1.0 / 49.0, 1.0 / 50.0];
        let ys = [ratios[38], ratios[39], ratios[40]];
        let p01 = (ys[0] * xs[1] - ys[1] * xs[0]) / (xs[1] - xs[0]);
        let p12 = (ys[1] * xs[2] - ys[2] * xs[1]) / (xs[2] - xs[1]);
        (p01 * xs[2] - p12 * xs[0]) / (xs[2] - xs[0])
    } else {
        tail.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
    }
}

/// `x^K φ(y) ≤ φ(xy)` for `x ∈ [0,1]`, `y ≥ 0`, with `1e-15` absolute slack
/// plus a few ulps of the right side.
pub fn lower_doubling_check<Y: YoungFunction>(phi: &Y, x: f64, y: f64) -> Result<bool, YoungError> {
    let d = phi.doubling().ok_or(YoungError::MissingDoubling)?;
    if d.threshold != f64::INFINITY {
        return Err(YoungError::FiniteThreshold(d.threshold));
    }
    let lhs = x.powf(d.exponent) * phi.eval(y);
    let rhs = phi.eval(x * y);
    Ok(lhs <= rhs + 1e-15 + 4.0 * f64::EPSILON * rhs)
}

/// Search grid for [`small_t_dominates`].
#[derive(Debug, Clone, PartialEq)]
pub struct DominationSearch {
    pub a_grid: Vec<f64>,
    pub b_grid: Vec<f64>,
    pub t0: f64,
    pub samples: usize,
    /// Sample `t` geometrically on `[t0·e^{-depth}, t0]`.
    pub log_depth: f64,
}

impl Default for DominationSearch {
    fn default() -> Self {
        let grid: Vec<f64> = (-6..=6).map(|k| Float::powi(2.0f64, k)).collect();
        DominationSearch { a_grid: grid.clone(), b_grid: grid, t0: 1.0, samples: 2048, log_depth: 690.0 }
    }
}

/// Witness `(a, b)` with `φ_2(t) ≤ a φ_1(bt)` on the sampled `(0, t₀]`.
///
/// `None` only means no witness on the grid, not that domination fails.
pub fn domination_witness<Y1: YoungFunction, Y2: YoungFunction>(
    phi1: &Y1,
    phi2: &Y2,
    search: &DominationSearch,
) -> Option<(f64, f64)> {
    let n = search.samples.max(2);
    let ln_t0 = search.t0.ln();
    let ts: Vec<f64> = (0..n)
        .map(|k| (ln_t0 - search.log_depth * k as f64 / (n - 1) as f64).exp())
        .filter(|t| *t > 0.0)
        .collect();
    let lhs: Vec<f64> = ts.iter().map(|&t| phi2.ln_eval(t)).collect();
    let tol = 1e-12;
    let mut pairs: Vec<(f64, f64)> = Vec::new();
    for &a in &search.a_grid {
        for &b in &search.b_grid {
            pairs.push((a, b));
        }
    }
    // try cheap witnesses first
    pairs.sort_by(|x, y| (x.0.ln().abs() + x.1.ln().abs()).total_cmp(&(y.0.ln().abs() + y.1.ln().abs())));
    pairs.into_iter().find(|&(a, b)| {
        let ln_a = a.ln();
        ts.iter().zip(&lhs).all(|(&t, &l)| {
            let r = ln_a + phi1.ln_eval(b * t);
            l == f64::NEG_INFINITY || l <= r + tol * r.abs().max(1.0)
        })
    })
}

/// `φ_1 ⪯ φ_2` near zero, decided on a finite grid; see [`domination_witness`].
pub fn small_t_dominates<Y1: YoungFunction, Y2: YoungFunction>(phi1: &Y1, phi2: &Y2, search: &DominationSearch) -> bool {
    domination_witness(phi1, phi2, search).is_some()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SeriesClass {
    /// Partial sum and an upper bound on the omitted tail.
    Finite { partial_sum: f64, terms: usize, tail_bound: f64 },
    Divergent,
}

/// Convergence of `Σ_{j≥0} φ_{p,κ}(2^{-j}) 2^{jQ}`: finite iff `(p, κ) > (Q, 1)`.
pub fn lipschitz_membership_series(e: PkExponent<f64>, q: f64) -> Result<SeriesClass, YoungError> {
    let phi = make_phi_pk(e)?;
    let finite = e.lex_cmp(&PkExponent::new(q, 1.0)) == Ordering::Greater;
    if !finite {
        return Ok(SeriesClass::Divergent);
    }
    let ln2 = core::f64::consts::LN_2;
    let term = |j: usize| (phi.ln_eval(Float::powi(2.0f64, -(j as i32))) + j as f64 * q * ln2).exp();
    let mut sum = 0.0;
    let max_terms = 1usize << 20;
    let mut j = 0;
    while j < max_terms {
        let t = if j < 1000 { term(j) } else { series_term_far(e, q, j) };
        sum += t;
        j += 1;
        if e.p > q && t < 1e-17 * sum {
            break;
        }
    }
    let tail_bound = if e.p > q {
        let r = Float::powf(2.0f64, q - e.p);
        series_term_far(e, q, j) / (1.0 - r)
    } else {
        // terms ≤ (j ln 2)^{-κ}
        Float::powf(ln2, -e.kappa) * Float::powf(j as f64 - 1.0, 1.0 - e.kappa) / (e.kappa - 1.0)
    };
    Ok(SeriesClass::Finite { partial_sum: sum, terms: j, tail_bound })
}

fn series_term_far(e: PkExponent<f64>, q: f64, j: usize) -> f64 {
    // 2^{-j} underflows past j ≈ 1074; ln(e + 2^j) ≈ j ln 2
    let ln2 = core::f64::consts::LN_2;
    let jl = j as f64 * ln2;
    ((q - e.p) * jl - e.kappa * jl.ln()).exp()
}

/// Checks the Young axioms of `phi` on `grid` (positive points).
pub fn verify_axioms<Y: YoungFunction>(phi: &Y, grid: &[f64]) -> Result<(), YoungError> {
    if phi.eval(0.0) != 0.0 {
        return Err(YoungError::Axiom { axiom: "phi(0) = 0", t: 0.0 });
    }
    let mut prev = (0.0, 0.0);
    let mut sorted: Vec<f64> = grid.iter().map(|t| t.abs()).filter(|t| *t > 0.0).collect();
    sorted.sort_by(f64::total_cmp);
    for &t in &sorted {
        let v = phi.eval(t);
        if phi.eval(-t) != v {
            return Err(YoungError::Axiom { axiom: "even", t });
        }
        if !(v > 0.0) {
            return Err(YoungError::Axiom { axiom: "positive", t });
        }
        if v < prev.1 {
            return Err(YoungError::Axiom { axiom: "nondecreasing", t });
        }
        let mid = phi.eval(0.5 * (prev.0 + t));
        if mid > 0.5 * (prev.1 + v) * (1.0 + 1e-12) {
            return Err(YoungError::Axiom { axiom: "convex", t });
        }
        if let Some(d) = phi.doubling() {
            if t <= d.threshold && phi.eval(2.0 * t) > d.constant() * v * (1.0 + 1e-12) {
                return Err(YoungError::Axiom { axiom: "doubling", t });
            }
        }
        prev = (t, v);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn phi(p: f64, k: f64) -> PhiPk {
        PhiPk::new(p, k).unwrap()
    }

    #[test]
    fn phi_values() {
        assert_eq!(phi(2.0, 0.0).eval(0.5), 0.25);
        assert_eq!(phi(2.5, 1.5).eval(0.0), 0.0);
        // 0.01 / ln(e + 10)^3 evaluated at 50 digits
        let oracle = 6.080_512_476_854_726e-4_f64;
        let got = phi(2.0, 3.0).eval(0.1);
        assert!((got - oracle).abs() <= 1e-15 * oracle, "{got}");
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(PhiPk::new(0.5, 0.0), Err(YoungError::Domain { .. })));
        assert!(matches!(PhiPk::new(2.0, -1.0), Err(YoungError::Domain { .. })));
    }

    #[test]
    fn derivative_matches_difference_quotient() {
        let f = phi(2.0, 3.0);
        for &t in &[1e-3, 0.1, 0.7, 2.0, 30.0] {
            let h = t * 1e-6;
            let fd = (f.eval(t + h) - f.eval(t - h)) / (2.0 * h);
            assert!((f.derivative(t) - fd).abs() <= 1e-6 * fd.abs(), "t = {t}");
        }
    }

    #[test]
    fn luxembourg_examples() {
        let f = phi(2.0, 0.0);
        let zero = WeightedSamples::counting(&[0.0, 0.0]).unwrap();
        assert_eq!(luxembourg_norm(&f, &zero), 0.0);
        let two = WeightedSamples::new(vec![(1.0, 1.0), (1.0, 1.0)]).unwrap();
        assert!((luxembourg_norm(&f, &two) - 2f64.sqrt()).abs() < 1e-14);
        let one = WeightedSamples::new(vec![(3.0, 1.0)]).unwrap();
        assert!((luxembourg_norm(&f, &one) - 3.0).abs() < 1e-14);
        assert_eq!(luxembourg_norm(&f, &WeightedSamples::default()), 0.0);
    }

    #[test]
    fn bad_weights_rejected() {
        assert!(matches!(
            WeightedSamples::new(vec![(1.0, -1.0)]),
            Err(YoungError::InvalidWeight { index: 0, .. })
        ));
        assert!(WeightedSamples::new(vec![(1.0, f64::NAN)]).is_err());
    }

    #[test]
    fn luxembourg_with_log_factor_solves_equation() {
        let f = phi(2.0, 1.0);
        let s = WeightedSamples::new(vec![(0.3, 2.0), (-1.5, 0.5), (4.0, 0.1)]).unwrap();
        let a = luxembourg_norm(&f, &s);
        let g = luxembourg_objective(&f, &s, a);
        assert!((g - 1.0).abs() < 1e-11, "{g}");
    }

    #[test]
    fn doubling_exponents() {
        assert_eq!(doubling_exponent(&phi(2.0, 0.0)), 2.0);
        assert_eq!(doubling_exponent(&phi(1.0, 0.0)), 1.0);
        let d = doubling_exponent(&phi(2.0, 3.0));
        assert!((d - 2.0).abs() < 1e-6, "{d}");
    }

    #[test]
    fn lower_doubling() {
        let f = phi(2.0, 1.0);
        assert!(lower_doubling_check(&f, 1.0, 0.37).unwrap());
        assert!(lower_doubling_check(&f, 0.0, 5.0).unwrap());
        struct Bare;
        impl YoungFunction for Bare {
            fn eval(&self, t: f64) -> f64 {
                t * t
            }
            fn derivative(&self, t: f64) -> f64 {
                2.0 * t
            }
        }
        assert_eq!(lower_doubling_check(&Bare, 0.5, 1.0), Err(YoungError::MissingDoubling));
    }

    #[test]
    fn domination_examples() {
        let s = DominationSearch::default();
        let a = phi(2.0, 0.0);
        assert_eq!(domination_witness(&a, &a, &s), Some((1.0, 1.0)));
        assert!(small_t_dominates(&a, &phi(3.0, 0.0), &s));
        assert!(small_t_dominates(&a, &phi(2.0, 3.0), &s));
        assert!(!small_t_dominates(&phi(2.0, 3.0), &a, &s));
    }

    #[test]
    fn series_classes() {
        assert!(matches!(
            lipschitz_membership_series(PkExponent::new(3.0, 0.0), 2.0).unwrap(),
            SeriesClass::Finite { .. }
        ));
        assert_eq!(lipschitz_membership_series(PkExponent::new(2.0, 1.0), 2.0).unwrap(), SeriesClass::Divergent);
        assert!(matches!(
            lipschitz_membership_series(PkExponent::new(2.0, 1.5), 2.0).unwrap(),
            SeriesClass::Finite { .. }
        ));
    }

    #[test]
    fn geometric_series_value() {
        // (3,0), Q = 2: Σ 2^{-j} = 2
        match lipschitz_membership_series(PkExponent::new(3.0, 0.0), 2.0).unwrap() {
            SeriesClass::Finite { partial_sum, .. } => assert!((partial_sum - 2.0).abs() < 1e-14),
            SeriesClass::Divergent => panic!(),
        }
    }

    #[test]
    fn family_is_young() {
        let grid: Vec<f64> = (-200..=40).map(|k| Float::powf(1.1f64, k as f64)).collect();
        for &(p, k) in &[(1.0, 0.0), (2.0, 0.0), (2.0, 1.0), (3.0, 2.0), (1.0, 3.0)] {
            verify_axioms(&phi(p, k), &grid).unwrap();
        }
    }

    #[test]
    fn lex_order() {
        let a = PkExponent::new(2.0, 3.0);
        assert!(a < PkExponent::new(2.0, 3.5));
        assert!(a < PkExponent::new(2.5, 0.0));
        assert!(PkExponent::new(1, 9) < PkExponent::new(2, 0));
    }
}
