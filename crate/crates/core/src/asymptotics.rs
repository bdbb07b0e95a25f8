//! Singular values of `Exp(tJ)`, dual-norm decay and parabolic metrics.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Float, One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::eigen::jacobi;
use crate::exact::{rat, Matrix, Rational};
use crate::lie::{BasisIndex, LieError, ValidatedSpec};
use crate::precision::{DoubleDouble, Real};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AsymptoticsError {
    #[error("predicted condition t^(2(m-1)) = {predicted:e} exceeds the {precision:?} guard {limit:e}")]
    Conditioning { predicted: f64, limit: f64, precision: Precision },
    #[error("index {index} out of range for size {m}")]
    IndexOutOfRange { index: usize, m: usize },
    #[error("size must be at least 1")]
    EmptySize,
    #[error("parameter t must be positive and finite, got {0}")]
    BadParameter(f64),
    #[error("parabolic metric needs an abelian algebra")]
    NotAbelian,
    #[error("point has length {got}, expected {expected}")]
    PointDimension { got: usize, expected: usize },
    #[error("base-norm weights must be positive and match the dimension")]
    BadWeights,
    #[error(transparent)]
    Lie(#[from] LieError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Precision {
    Double,
    Extended,
    /// Double while the conditioning allows, extended beyond.
    Auto,
}

/// Largest `t^{2(m-1)}` the double path accepts.
pub const DOUBLE_GUARD: f64 = 1e14;
/// Largest `t^{2(m-1)}` the double-double path accepts.
pub const EXTENDED_GUARD: f64 = 1e28;
/// `Auto` switches to double-double above this predicted condition.
pub const AUTO_SWITCH: f64 = 1e6;

/// `Exp(tJ)` for the size-`m` nilpotent Jordan block `J`.
#[derive(Debug, Clone, PartialEq)]
pub struct NilpotentExp {
    pub m: usize,
    pub t: f64,
}

/// Entry `(r, c)` is `t^{c-r}/(c-r)!` for `c ≥ r`.
pub fn nilpotent_exp(m: usize, t: f64) -> NilpotentExp {
    NilpotentExp { m, t }
}

impl NilpotentExp {
    pub fn entries(&self) -> Vec<Vec<f64>> {
        let mut out = vec![vec![0.0; self.m]; self.m];
        for (r, row) in out.iter_mut().enumerate() {
            let mut term = 1.0;
            for (c, x) in row.iter_mut().enumerate().skip(r) {
                if c > r {
                    term *= self.t / (c - r) as f64;
                }
                *x = term;
            }
        }
        out
    }

    /// Exact entries for rational `t`.
    pub fn exact(m: usize, t: &Rational) -> Matrix {
        let mut out = Matrix::zeros(m, m);
        for r in 0..m {
            let mut term = Rational::one();
            for c in r..m {
                if c > r {
                    term = term * t / rat((c - r) as i64);
                }
                out[(r, c)] = term.clone();
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SingularData {
    /// Eigenvalues `λ_1 < ... < λ_m` of `MᵀM`.
    pub eigenvalues: Vec<f64>,
    /// Unit eigenvectors, `eigenvectors[i]` for `λ_{i+1}`, with `⟨v_i, e_i⟩ ≥ 0`.
    pub eigenvectors: Vec<Vec<f64>>,
    /// Set for `t = 0`, where every eigenvalue is 1.
    pub degenerate: bool,
    pub precision: Precision,
}

/// `t^{2(m-1)}`, the predicted ratio of extreme eigenvalues.
pub fn predicted_condition(m: usize, t: f64) -> f64 {
    Float::powi(t.abs(), 2 * (m as i32 - 1))
}

fn resolve_precision(m: usize, t: f64, precision: Precision) -> Result<Precision, AsymptoticsError> {
    let predicted = predicted_condition(m, t);
    let chosen = match precision {
        Precision::Auto if predicted <= AUTO_SWITCH => Precision::Double,
        Precision::Auto => Precision::Extended,
        p => p,
    };
    let limit = if chosen == Precision::Double { DOUBLE_GUARD } else { EXTENDED_GUARD };
    if !(predicted <= limit) {
        return Err(AsymptoticsError::Conditioning { predicted, limit, precision: chosen });
    }
    Ok(chosen)
}

/// `S·M` with `S` the index reversal; entry `(r, c) = t^{c-(m-1-r)}/(…)!`.
fn sm_matrix<T: Real>(m: usize, t: f64) -> Vec<Vec<T>> {
    let tt = T::from_f64(t);
    let mut out = vec![vec![T::ZERO; m]; m];
    for r in 0..m {
        let src = m - 1 - r;
        let mut term = T::ONE;
        for c in src..m {
            if c > src {
                term = term * tt / T::from_f64((c - src) as f64);
            }
            out[r][c] = term;
        }
    }
    out
}

fn solve<T: Real>(m: usize, t: f64) -> (Vec<f64>, Vec<Vec<f64>>) {
    let eig = jacobi(sm_matrix::<T>(m, t), 100);
    let mut pairs: Vec<(T, Vec<f64>)> = (0..m)
        .map(|j| {
            let lam = eig.values[j] * eig.values[j];
            let v: Vec<f64> = (0..m).map(|r| eig.vectors[r][j].to_f64()).collect();
            (lam, v)
        })
        .collect();
    pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(core::cmp::Ordering::Equal));
    let mut values = Vec::with_capacity(m);
    let mut vectors = Vec::with_capacity(m);
    for (i, (lam, mut v)) in pairs.into_iter().enumerate() {
        if v[i] < 0.0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
        values.push(lam.to_f64());
        vectors.push(v);
    }
    (values, vectors)
}

/// Eigen-data of `MᵀM = (SM)²` from the symmetric matrix `SM`.
pub fn singular_data(m: usize, t: f64, precision: Precision) -> Result<SingularData, AsymptoticsError> {
    if m == 0 {
        return Err(AsymptoticsError::EmptySize);
    }
    if !t.is_finite() {
        return Err(AsymptoticsError::BadParameter(t));
    }
    if t == 0.0 {
        let eigenvectors = (0..m).map(|i| (0..m).map(|r| if r == i { 1.0 } else { 0.0 }).collect()).collect();
        return Ok(SingularData { eigenvalues: vec![1.0; m], eigenvectors, degenerate: true, precision });
    }
    let chosen = resolve_precision(m, t, precision)?;
    let (eigenvalues, eigenvectors) = match chosen {
        Precision::Double => solve::<f64>(m, t),
        _ => solve::<DoubleDouble>(m, t),
    };
    Ok(SingularData { eigenvalues, eigenvectors, degenerate: false, precision: chosen })
}

fn ln_factorial(n: usize) -> f64 {
    (1..=n).map(|k| (k as f64).ln()).sum()
}

fn check_index(m: usize, i: usize) -> Result<(), AsymptoticsError> {
    if m == 0 {
        return Err(AsymptoticsError::EmptySize);
    }
    if i == 0 || i > m {
        return Err(AsymptoticsError::IndexOutOfRange { index: i, m });
    }
    Ok(())
}

fn check_t(t: f64) -> Result<(), AsymptoticsError> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(AsymptoticsError::BadParameter(t));
    }
    Ok(())
}

/// `√λ_i (i-1)! / ((m-i)! t^{2i-m-1})`; tends to 1.
pub fn asymptotic_ratio(m: usize, i: usize, t: f64, precision: Precision) -> Result<f64, AsymptoticsError> {
    check_index(m, i)?;
    check_t(t)?;
    let data = singular_data(m, t, precision)?;
    let ln = 0.5 * data.eigenvalues[i - 1].ln() + ln_factorial(i - 1)
        - ln_factorial(m - i)
        - (2.0 * i as f64 - m as f64 - 1.0) * t.ln();
    Ok(ln.exp())
}

/// `|⟨v_i(t), e_i⟩|`; tends to 1.
pub fn eigenvector_alignment(m: usize, i: usize, t: f64, precision: Precision) -> Result<f64, AsymptoticsError> {
    check_index(m, i)?;
    check_t(t)?;
    let data = singular_data(m, t, precision)?;
    Ok(data.eigenvectors[i - 1][i - 1].abs())
}

type Poly = Vec<Rational>;

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
        for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add_assign(a: &mut Poly, b: &Poly) {
    if a.len() < b.len() {
        a.resize(b.len(), Rational::zero());
    }
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
}

fn poly_scale(a: &Poly, s: &Rational) -> Poly {
    a.iter().map(|x| x * s).collect()
}

fn poly_eval(a: &Poly, t: &Rational) -> Rational {
    a.iter().rev().fold(Rational::zero(), |acc, c| acc * t + c)
}

/// Coefficients `c_1..c_m` of `det(xI - SM)` as polynomials in `t`.
pub fn sm_charpoly_in_t(m: usize) -> Vec<Poly> {
    // SM entry (r, c) = t^{d}/d! with d = c - (m-1-r) ≥ 0
    let sm: Vec<Vec<Poly>> = (0..m)
        .map(|r| {
            (0..m)
                .map(|c| {
                    let src = m - 1 - r;
                    if c < src {
                        return Vec::new();
                    }
                    let d = c - src;
                    let mut p = vec![Rational::zero(); d + 1];
                    p[d] = Rational::one() / factorial(d);
                    p
                })
                .collect()
        })
        .collect();
    let matmul = |a: &Vec<Vec<Poly>>, b: &Vec<Vec<Poly>>| -> Vec<Vec<Poly>> {
        (0..m)
            .map(|r| {
                (0..m)
                    .map(|c| {
                        let mut acc = Vec::new();
                        for k in 0..m {
                            poly_add_assign(&mut acc, &poly_mul(&a[r][k], &b[k][c]));
                        }
                        acc
                    })
                    .collect()
            })
            .collect()
    };
    let mut traces: Vec<Poly> = Vec::with_capacity(m);
    let mut power = sm.clone();
    for k in 1..=m {
        if k > 1 {
            power = matmul(&power, &sm);
        }
        let mut tr = Vec::new();
        for (i, row) in power.iter().enumerate() {
            poly_add_assign(&mut tr, &row[i]);
        }
        traces.push(tr);
    }
    // Newton: k c_k = -(T_k + Σ_{j<k} c_j T_{k-j})
    let mut c: Vec<Poly> = Vec::with_capacity(m);
    for k in 1..=m {
        let mut acc = traces[k - 1].clone();
        for j in 1..k {
            poly_add_assign(&mut acc, &poly_mul(&c[j - 1], &traces[k - j - 1]));
        }
        c.push(poly_scale(&acc, &(-Rational::one() / rat(k as i64))));
    }
    c
}

fn factorial(n: usize) -> Rational {
    (1..=n).fold(Rational::one(), |acc, k| acc * rat(k as i64))
}

/// `Π_{j=1}^{k-1} j! / Π_{j=m-k}^{m-1} j!`.
pub fn predicted_coefficient(m: usize, k: usize) -> Rational {
    let num = (1..k).fold(Rational::one(), |acc, j| acc * factorial(j));
    let den = (m - k..m).fold(Rational::one(), |acc, j| acc * factorial(j));
    num / den
}

/// `|c_k(t)|` over its predicted leading term `coef · t^{k(m-k)}`, exactly.
pub fn charpoly_coeff_ratio(m: usize, k: usize, t: f64) -> Result<f64, AsymptoticsError> {
    check_index(m, k)?;
    check_t(t)?;
    let tq = Rational::from_float(t).ok_or(AsymptoticsError::BadParameter(t))?;
    let c = sm_charpoly_in_t(m);
    let value = poly_eval(&c[k - 1], &tq).abs();
    let mut predicted = predicted_coefficient(m, k);
    for _ in 0..k * (m - k) {
        predicted *= &tq;
    }
    Ok((value / predicted).to_f64().unwrap_or(f64::NAN))
}

/// Weights `b_c` of the basis `{b_c ∂_c}` declared orthonormal.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct BaseNorm {
    pub weights: Option<Vec<f64>>,
}

impl BaseNorm {
    pub fn standard() -> Self {
        BaseNorm { weights: None }
    }

    pub fn weighted(weights: Vec<f64>) -> Self {
        BaseNorm { weights: Some(weights) }
    }

    fn weight(&self, c: usize) -> f64 {
        self.weights.as_ref().map_or(1.0, |w| w[c])
    }

    fn check(&self, n: usize) -> Result<(), AsymptoticsError> {
        match &self.weights {
            Some(w) if w.len() != n || w.iter().any(|x| !(*x > 0.0 && x.is_finite())) => Err(AsymptoticsError::BadWeights),
            _ => Ok(()),
        }
    }

    /// `‖v‖_0² = Σ (v_c / b_c)²`.
    pub fn norm(&self, v: &[f64]) -> f64 {
        v.iter().enumerate().map(|(c, x)| (x / self.weight(c)) * (x / self.weight(c))).sum::<f64>().sqrt()
    }
}

/// `‖Exp(-t λ_s αᵀ) ∂^{ij}_k‖_0 / (t^{m_{ij}-k} e^{-λ_s μ_i t})`.
///
/// With unit weights the limit as `t → ∞` is `λ_s^{m-k}/(m-k)!`.
pub fn dual_norm_ratio(
    spec: &ValidatedSpec,
    scale: f64,
    idx: BasisIndex,
    t: f64,
    base: &BaseNorm,
) -> Result<f64, AsymptoticsError> {
    check_t(t)?;
    if !(scale > 0.0 && scale.is_finite()) {
        return Err(AsymptoticsError::BadParameter(scale));
    }
    let jd = spec.jordan();
    let start = jd.coordinate(idx)?;
    base.check(jd.dim())?;
    let m = jd.block(idx.i, idx.j);
    let k = idx.k;
    // αᵀ ∂_r = μ ∂_r + ∂_{r+1}: the nilpotent part moves down the block, and
    // e^{-λμt} cancels against the normalization
    let mut sq = 0.0;
    let mut coef = 1.0; // (λt)^{r-k}/(r-k)! · t^{-(m-k)}, built incrementally
    let lt = scale * t;
    coef *= Float::powi(t, -((m - k) as i32));
    for r in k..=m {
        if r > k {
            coef *= lt / (r - k) as f64;
        }
        let w = base.weight(start + (r - k));
        sq += (coef / w) * (coef / w);
    }
    Ok(sq.sqrt())
}

/// `max{|Δy|, |Δx - Δy ln|Δy||}` with the log term 0 at `Δy = 0`.
pub fn closed_form_metric_x3(v: [f64; 2], w: [f64; 2]) -> f64 {
    let dx = w[0] - v[0];
    let dy = w[1] - v[1];
    let ay = dy.abs();
    let log_term = if ay == 0.0 { 0.0 } else { dy * ay.ln() };
    ay.max((dx - log_term).abs())
}

struct BlockLayout {
    /// `(start, size, μ)` per Jordan block.
    blocks: Vec<(usize, usize, f64)>,
}

fn layout(spec: &ValidatedSpec) -> BlockLayout {
    let jd = spec.jordan();
    let mut blocks = Vec::new();
    let mut start = 0;
    for (i, bs) in jd.blocks.iter().enumerate() {
        let mu = jd.eigenvalues[i].to_f64().unwrap_or(f64::NAN);
        for &m in bs {
            blocks.push((start, m, mu));
            start += m;
        }
    }
    BlockLayout { blocks }
}

/// `ln ‖Exp(sα) v‖_0`, blockwise in log space.
fn ln_flow_norm(layout: &BlockLayout, base: &BaseNorm, v: &[f64], s: f64) -> f64 {
    let mut terms: Vec<f64> = Vec::with_capacity(layout.blocks.len());
    for &(start, m, mu) in &layout.blocks {
        // (Exp(sN) v)_k = Σ_j s^j/j! v_{k+j} with N ∂_k = ∂_{k-1}
        let mut sq = 0.0;
        for k in 0..m {
            let mut term = 1.0;
            let mut acc = 0.0;
            for j in 0..m - k {
                if j > 0 {
                    term *= s / j as f64;
                }
                acc += term * v[start + k + j];
            }
            let w = base.weight(start + k);
            sq += (acc / w) * (acc / w);
        }
        if sq > 0.0 {
            terms.push(s * mu + 0.5 * sq.ln());
        }
    }
    let top = terms.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if top == f64::NEG_INFINITY {
        return top;
    }
    top + 0.5 * terms.iter().map(|x| (2.0 * (x - top)).exp()).sum::<f64>().ln()
}

/// `e^{-s*}` with `s* = sup{s : ‖Exp(sα)(y - x)‖_0 ≤ 1}`, for abelian `𝔫`.
pub fn parabolic_metric_abelian(
    spec: &ValidatedSpec,
    base: &BaseNorm,
    x: &[f64],
    y: &[f64],
) -> Result<f64, AsymptoticsError> {
    if !spec.algebra().is_abelian() {
        return Err(AsymptoticsError::NotAbelian);
    }
    let n = spec.dim();
    for p in [x, y] {
        if p.len() != n {
            return Err(AsymptoticsError::PointDimension { got: p.len(), expected: n });
        }
    }
    base.check(n)?;
    let v: Vec<f64> = x.iter().zip(y).map(|(a, b)| b - a).collect();
    if v.iter().all(|c| *c == 0.0) {
        return Ok(0.0);
    }
    let lay = layout(spec);
    let f = |s: f64| ln_flow_norm(&lay, base, &v, s);

    // lower bound: ‖Exp(sα)v‖_0 ≥ (b_min/b_max) ‖v‖_0 e^{μ_1 s} / P_M(s) for s ≥ 0,
    // with P_M(s) = Σ_{k<M} s^k/k!; its log-derivative only increases
    let mu1 = lay.blocks.iter().map(|b| b.2).fold(f64::INFINITY, f64::min);
    let big_m = lay.blocks.iter().map(|b| b.1).max().unwrap_or(1);
    let (bmin, bmax) = match &base.weights {
        Some(w) => (w.iter().cloned().fold(f64::INFINITY, f64::min), w.iter().cloned().fold(0.0, f64::max)),
        None => (1.0, 1.0),
    };
    let ln_v = base.norm(&v).ln();
    let partial = |s: f64, terms: usize| -> f64 {
        let mut acc = 0.0;
        let mut term = 1.0;
        for k in 0..terms {
            if k > 0 {
                term *= s / k as f64;
            }
            acc += term;
        }
        acc
    };
    let ln_lower = |s: f64| (bmin / bmax).ln() + ln_v + mu1 * s - partial(s, big_m).ln();
    let slope = |s: f64| mu1 - partial(s, big_m - 1) / partial(s, big_m);
    let mut s_hi = 0.0;
    while !(ln_lower(s_hi) > 0.0 && slope(s_hi) > 0.0) {
        s_hi = if s_hi < 1.0 { 1.0 } else { 2.0 * s_hi };
        if s_hi > 1e6 {
            return Err(AsymptoticsError::BadParameter(s_hi));
        }
    }

    // scan down with a step the Lipschitz bound of ln f guarantees safe
    let lip = operator_bound(spec, base);
    let mut hi = s_hi;
    let mut f_hi = f(hi);
    let lo = loop {
        let step = (f_hi / lip).max(1e-3);
        let s = hi - step;
        let fs = f(s);
        if fs <= 0.0 {
            break s;
        }
        hi = s;
        f_hi = fs;
    };
    let (mut lo, mut hi) = (lo, hi);
    while hi - lo > 1e-10 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok((-0.5 * (lo + hi)).exp())
}

/// Frobenius bound on `B⁻¹αB` with `B = diag(b)`.
fn operator_bound(spec: &ValidatedSpec, base: &BaseNorm) -> f64 {
    let a = spec.jordan().derivation_matrix();
    let n = a.rows();
    let mut sq = 0.0;
    for r in 0..n {
        for c in 0..n {
            let x = a[(r, c)].to_f64().unwrap_or(0.0) * base.weight(c) / base.weight(r);
            sq += x * x;
        }
    }
    sq.sqrt()
}

/// `Exp(sα) x` for abelian specs, in coordinates.
pub fn flow(spec: &ValidatedSpec, x: &[f64], s: f64) -> Vec<f64> {
    let lay = layout(spec);
    let mut out = vec![0.0; x.len()];
    for &(start, m, mu) in &lay.blocks {
        let e = (s * mu).exp();
        for k in 0..m {
            let mut term = 1.0;
            let mut acc = 0.0;
            for j in 0..m - k {
                if j > 0 {
                    term *= s / j as f64;
                }
                acc += term * x[start + k + j];
            }
            out[start + k] = e * acc;
        }
    }
    out
}
