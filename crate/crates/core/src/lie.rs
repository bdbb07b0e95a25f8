//! Nilpotent Lie algebras with a derivation in real Jordan form.
//!
//! Basis vectors `∂^{ij}_k` are ordered lexicographically by `(i, j, k)`.
//! Inside a block the derivation acts by `α ∂_1 = μ ∂_1` and
//! `α ∂_k = μ ∂_k + ∂_{k-1}`, so `∂_1` is the eigenvector.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exact::{rational_roots, Matrix, Rational, Subspace};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LieError {
    #[error("spec failed validation:\n{0}")]
    Invalid(ValidationReport),
    #[error("basis index ({i},{j},{k}) out of range")]
    IndexOutOfRange { i: usize, j: usize, k: usize },
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("characteristic polynomial does not split over the rationals")]
    IrrationalSpectrum,
    #[error("eigenvalue {0} is not positive")]
    NonPositiveEigenvalue(String),
    #[error("coefficients too large for exact root search")]
    RootSearchOverflow,
    #[error("subspace is not a subalgebra")]
    NotSubalgebra,
}

/// Structure constants `c^k_{ij}` with `[e_i, e_j] = Σ_k c^k_{ij} e_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    n: usize,
    c: Vec<Rational>,
}

impl LieAlgebra {
    pub fn abelian(n: usize) -> Self {
        LieAlgebra { n, c: vec![Rational::zero(); n * n * n] }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.n + j) * self.n + k
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.c[self.idx(i, j, k)]
    }

    /// Sets `c^k_{ij} = value` and `c^k_{ji} = -value` (0-based).
    pub fn set_bracket(&mut self, i: usize, j: usize, k: usize, value: Rational) {
        let a = self.idx(j, i, k);
        self.c[a] = -value.clone();
        let b = self.idx(i, j, k);
        self.c[b] = value;
    }

    /// Sets one constant without touching its antisymmetric partner.
    pub fn set_raw(&mut self, i: usize, j: usize, k: usize, value: Rational) {
        let a = self.idx(i, j, k);
        self.c[a] = value;
    }

    pub fn is_abelian(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    /// Nonzero constants as `(i, j, k, c^k_{ij})`, 0-based, row-major.
    pub fn nonzero_constants(&self) -> Vec<(usize, usize, usize, Rational)> {
        let n = self.n;
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let v = self.constant(i, j, k);
                    if !v.is_zero() {
                        out.push((i, j, k, v.clone()));
                    }
                }
            }
        }
        out
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &[Rational] {
        let s = self.idx(i, j, 0);
        &self.c[s..s + self.n]
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let n = self.n;
        let mut out = vec![Rational::zero(); n];
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let coef = xi * yj;
                for (o, c) in out.iter_mut().zip(self.bracket_basis(i, j)) {
                    if !c.is_zero() {
                        *o += &coef * c;
                    }
                }
            }
        }
        out
    }

    fn unit(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.n];
        v[i] = Rational::one();
        v
    }

    /// Lower central series dimensions `dim 𝔤^1, dim 𝔤^2, ...` until it
    /// stabilizes, and whether it reached zero.
    pub fn lower_central_series(&self) -> (Vec<usize>, bool) {
        let mut current = Subspace::full(self.n);
        let mut dims = vec![current.dim()];
        for _ in 0..=self.n {
            if current.dim() == 0 {
                return (dims, true);
            }
            let mut vs = Vec::new();
            for i in 0..self.n {
                for b in current.basis() {
                    vs.push(self.bracket(&self.unit(i), b));
                }
            }
            let next = Subspace::span(self.n, vs);
            if next == current {
                return (dims, false);
            }
            dims.push(next.dim());
            current = next;
        }
        (dims, current.dim() == 0)
    }
}

/// A 1-based basis triple `(i, j, k)`: eigenvalue, block, position in block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisIndex {
    pub i: usize,
    pub j: usize,
    pub k: usize,
}

impl fmt::Display for BasisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.i, self.j, self.k)
    }
}

/// Eigenvalues `μ_1 < ... < μ_d` with block sizes `m_{ij}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JordanSpec {
    pub eigenvalues: Vec<Rational>,
    pub blocks: Vec<Vec<usize>>,
}

impl JordanSpec {
    pub fn new(eigenvalues: Vec<Rational>, blocks: Vec<Vec<usize>>) -> Self {
        JordanSpec { eigenvalues, blocks }
    }

    pub fn d(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn dim(&self) -> usize {
        self.blocks.iter().flatten().sum()
    }

    /// `μ_i`, 1-based.
    pub fn mu(&self, i: usize) -> &Rational {
        &self.eigenvalues[i - 1]
    }

    /// `m_i = max_j m_{ij}`, 1-based.
    pub fn max_block(&self, i: usize) -> usize {
        self.blocks[i - 1].iter().copied().max().unwrap_or(0)
    }

    /// `m_{ij}`, 1-based.
    pub fn block(&self, i: usize, j: usize) -> usize {
        self.blocks[i - 1][j - 1]
    }

    /// `dim V_i`, 1-based.
    pub fn eigenspace_dim(&self, i: usize) -> usize {
        self.blocks[i - 1].iter().sum()
    }

    pub fn trace(&self) -> Rational {
        self.eigenvalues
            .iter()
            .zip(&self.blocks)
            .fold(Rational::zero(), |acc, (mu, bs)| acc + mu * Rational::from_integer(bs.iter().sum::<usize>().into()))
    }

    /// The triples `𝓘` in coordinate order.
    pub fn basis_index(&self) -> Vec<BasisIndex> {
        let mut out = Vec::with_capacity(self.dim());
        for (i, bs) in self.blocks.iter().enumerate() {
            for (j, &m) in bs.iter().enumerate() {
                for k in 1..=m {
                    out.push(BasisIndex { i: i + 1, j: j + 1, k });
                }
            }
        }
        out
    }

    pub fn coordinate(&self, idx: BasisIndex) -> Result<usize, LieError> {
        let BasisIndex { i, j, k } = idx;
        let ok = i >= 1 && i <= self.d() && j >= 1 && j <= self.blocks[i - 1].len() && k >= 1 && k <= self.block(i, j);
        if !ok {
            return Err(LieError::IndexOutOfRange { i, j, k });
        }
        let mut c = 0;
        for (ii, bs) in self.blocks.iter().enumerate() {
            for (jj, &m) in bs.iter().enumerate() {
                if ii + 1 == i && jj + 1 == j {
                    return Ok(c + k - 1);
                }
                c += m;
            }
        }
        unreachable!()
    }

    /// The derivation `α` in the basis `𝓘`.
    pub fn derivation_matrix(&self) -> Matrix {
        let n = self.dim();
        let mut a = Matrix::zeros(n, n);
        for (c, idx) in self.basis_index().into_iter().enumerate() {
            a[(c, c)] = self.mu(idx.i).clone();
            if idx.k > 1 {
                a[(c - 1, c)] = Rational::one();
            }
        }
        a
    }

    /// Coordinates belonging to eigenvalues `μ_1..μ_i`.
    pub fn coordinates_up_to(&self, i: usize) -> Vec<usize> {
        self.basis_index().iter().enumerate().filter(|(_, b)| b.i <= i).map(|(c, _)| c).collect()
    }

    /// Coordinates of the eigenvectors `∂^{ij}_1` with `m_{ij} = m_i`.
    pub fn top_eigenvector_coordinates(&self, i: usize) -> Vec<usize> {
        let mi = self.max_block(i);
        self.basis_index()
            .iter()
            .enumerate()
            .filter(|(_, b)| b.i == i && b.k == 1 && self.block(b.i, b.j) == mi)
            .map(|(c, _)| c)
            .collect()
    }

    /// Eigenvalues divided by `μ_1`.
    pub fn normalized_eigenvalues(&self) -> Vec<Rational> {
        let mu1 = &self.eigenvalues[0];
        self.eigenvalues.iter().map(|m| m / mu1).collect()
    }

    /// Per-eigenvalue block multisets, sorted descending.
    pub fn block_multisets(&self) -> Vec<Vec<usize>> {
        self.blocks
            .iter()
            .map(|b| {
                let mut s = b.clone();
                s.sort_unstable_by(|x, y| y.cmp(x));
                s
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeintzeSpec {
    pub algebra: LieAlgebra,
    pub jordan: JordanSpec,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Diagnostic {
    /// The Jordan data do not describe `n` coordinates.
    DimensionMismatch { algebra: usize, jordan: usize },
    /// Eigenvalues must be strictly increasing.
    EigenvalueOrder { index: usize },
    /// Each eigenvalue needs at least one block, each block size ≥ 1.
    EmptyBlock { index: usize },
    EigenvaluePositivity { index: usize },
    Antisymmetry { i: usize, j: usize, k: usize },
    Jacobi { i: usize, j: usize, k: usize },
    Nilpotency { series: Vec<usize> },
    Leibniz { i: usize, j: usize },
}

impl Diagnostic {
    pub fn check_name(&self) -> &'static str {
        match self {
            Diagnostic::DimensionMismatch { .. } | Diagnostic::EigenvalueOrder { .. } | Diagnostic::EmptyBlock { .. } => {
                "structure"
            }
            Diagnostic::EigenvaluePositivity { .. } => "eigenvalue_positivity",
            Diagnostic::Antisymmetry { .. } => "antisymmetry",
            Diagnostic::Jacobi { .. } => "jacobi",
            Diagnostic::Nilpotency { .. } => "nilpotency",
            Diagnostic::Leibniz { .. } => "leibniz",
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::DimensionMismatch { algebra, jordan } => {
                write!(f, "dimension {algebra} but Jordan blocks cover {jordan}")
            }
            Diagnostic::EigenvalueOrder { index } => write!(f, "eigenvalue {index} not strictly above its predecessor"),
            Diagnostic::EmptyBlock { index } => write!(f, "eigenvalue {index} has an empty or zero-size block"),
            Diagnostic::EigenvaluePositivity { index } => write!(f, "eigenvalue {index} is not positive"),
            Diagnostic::Antisymmetry { i, j, k } => write!(f, "c^{k}_({i},{j}) != -c^{k}_({j},{i})"),
            Diagnostic::Jacobi { i, j, k } => write!(f, "Jacobi identity fails at ({i},{j},{k})"),
            Diagnostic::Nilpotency { series } => write!(f, "lower central series stalls at dimensions {series:?}"),
            Diagnostic::Leibniz { i, j } => write!(f, "Leibniz rule fails at ({i},{j})"),
        }
    }
}

pub const CHECK_NAMES: [&str; 6] =
    ["structure", "eigenvalue_positivity", "antisymmetry", "jacobi", "nilpotency", "leibniz"];

/// Pass/fail per named check; indices in diagnostics are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub diagnostics: Vec<Diagnostic>,
    /// Checks that could not run because the structure check failed.
    pub skipped: Vec<&'static str>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.diagnostics.is_empty() && self.skipped.is_empty()
    }

    pub fn passed(&self, check: &str) -> bool {
        !self.skipped.contains(&check) && self.diagnostics.iter().all(|d| d.check_name() != check)
    }

    pub fn checks(&self) -> Vec<(&'static str, bool)> {
        CHECK_NAMES.iter().map(|&c| (c, self.passed(c))).collect()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, ok) in self.checks() {
            writeln!(f, "{name}: {}", if ok { "pass" } else { "FAIL" })?;
        }
        for d in &self.diagnostics {
            writeln!(f, "  {}: {d}", d.check_name())?;
        }
        Ok(())
    }
}

pub fn validate_spec(spec: &HeintzeSpec) -> ValidationReport {
    let mut report = ValidationReport::default();
    let n = spec.algebra.dim();
    let jd = &spec.jordan;
    if jd.dim() != n {
        report.diagnostics.push(Diagnostic::DimensionMismatch { algebra: n, jordan: jd.dim() });
    }
    if jd.eigenvalues.len() != jd.blocks.len() {
        report.diagnostics.push(Diagnostic::DimensionMismatch { algebra: jd.eigenvalues.len(), jordan: jd.blocks.len() });
    }
    for (i, bs) in jd.blocks.iter().enumerate() {
        if bs.is_empty() || bs.contains(&0) {
            report.diagnostics.push(Diagnostic::EmptyBlock { index: i + 1 });
        }
    }
    for i in 1..jd.eigenvalues.len() {
        if jd.eigenvalues[i] <= jd.eigenvalues[i - 1] {
            report.diagnostics.push(Diagnostic::EigenvalueOrder { index: i + 1 });
        }
    }
    if !report.diagnostics.is_empty() {
        report.skipped = CHECK_NAMES[1..].to_vec();
        return report;
    }
    for (i, mu) in jd.eigenvalues.iter().enumerate() {
        if !mu.is_positive() {
            report.diagnostics.push(Diagnostic::EigenvaluePositivity { index: i + 1 });
        }
    }
    let alg = &spec.algebra;
    for i in 0..n {
        for j in i..n {
            for k in 0..n {
                if *alg.constant(i, j, k) != -alg.constant(j, i, k).clone() {
                    report.diagnostics.push(Diagnostic::Antisymmetry { i: i + 1, j: j + 1, k: k + 1 });
                }
            }
        }
    }
    let e = |i: usize| alg.unit(i);
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let a = alg.bracket(&alg.bracket(&e(i), &e(j)), &e(k));
                let b = alg.bracket(&alg.bracket(&e(j), &e(k)), &e(i));
                let c = alg.bracket(&alg.bracket(&e(k), &e(i)), &e(j));
                if a.iter().zip(&b).zip(&c).any(|((x, y), z)| !(x + y + z).is_zero()) {
                    report.diagnostics.push(Diagnostic::Jacobi { i: i + 1, j: j + 1, k: k + 1 });
                }
            }
        }
    }
    let (series, reaches_zero) = alg.lower_central_series();
    if !reaches_zero {
        report.diagnostics.push(Diagnostic::Nilpotency { series });
    }
    let alpha = jd.derivation_matrix();
    let cols: Vec<Vec<Rational>> = (0..n).map(|c| alpha.column(c)).collect();
    for i in 0..n {
        for j in i..n {
            let lhs = alpha.apply(alg.bracket_basis(i, j));
            let r1 = alg.bracket(&cols[i], &e(j));
            let r2 = alg.bracket(&e(i), &cols[j]);
            if lhs.iter().zip(&r1).zip(&r2).any(|((l, a), b)| *l != a + b) {
                report.diagnostics.push(Diagnostic::Leibniz { i: i + 1, j: j + 1 });
            }
        }
    }
    report
}

/// A spec that passed [`validate_spec`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidatedSpec(HeintzeSpec);

impl ValidatedSpec {
    pub fn new(spec: HeintzeSpec) -> Result<Self, LieError> {
        let report = validate_spec(&spec);
        if report.is_valid() {
            Ok(ValidatedSpec(spec))
        } else {
            Err(LieError::Invalid(report))
        }
    }

    pub fn spec(&self) -> &HeintzeSpec {
        &self.0
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.0.algebra
    }

    pub fn jordan(&self) -> &JordanSpec {
        &self.0.jordan
    }

    pub fn dim(&self) -> usize {
        self.0.algebra.dim()
    }

    pub fn into_inner(self) -> HeintzeSpec {
        self.0
    }
}

/// Smallest subalgebra containing `generators`.
pub fn lie_span(algebra: &LieAlgebra, generators: &Subspace) -> Subspace {
    let n = algebra.dim();
    let mut current = generators.clone();
    loop {
        let basis = current.basis();
        let mut vs: Vec<Vec<Rational>> = basis.to_vec();
        for a in 0..basis.len() {
            for b in a + 1..basis.len() {
                vs.push(algebra.bracket(&basis[a], &basis[b]));
            }
        }
        let next = Subspace::span(n, vs);
        if next.dim() == current.dim() {
            return next;
        }
        current = next;
    }
}

/// `𝔨_0 ⊆ 𝔥_1 ⊆ 𝔨_1 ⊆ ... ⊆ 𝔨_d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubalgebraChain {
    /// `𝔨_0, ..., 𝔨_d`.
    pub k: Vec<Subspace>,
    /// `𝔥_1, ..., 𝔥_d` stored at indices `1..=d`; index 0 holds `{0}`.
    pub h: Vec<Subspace>,
}

impl SubalgebraChain {
    pub fn k(&self, i: usize) -> &Subspace {
        &self.k[i]
    }

    pub fn h(&self, i: usize) -> &Subspace {
        &self.h[i]
    }

    /// `{0} = 𝔨_0 ⊆ 𝔥_1 ⊆ 𝔨_1 ⊆ 𝔥_2 ⊆ ... ⊆ 𝔨_d = 𝔫`.
    pub fn is_monotone(&self) -> bool {
        let d = self.k.len() - 1;
        if self.k[0].dim() != 0 || !self.k[d].is_full() {
            return false;
        }
        (1..=d).all(|i| self.k[i - 1].is_subspace_of(&self.h[i]) && self.h[i].is_subspace_of(&self.k[i]))
    }
}

pub fn subgroup_chain(spec: &ValidatedSpec) -> SubalgebraChain {
    let n = spec.dim();
    let jd = spec.jordan();
    let alg = spec.algebra();
    let d = jd.d();
    let mut k = vec![Subspace::zero(n)];
    let mut h = vec![Subspace::zero(n)];
    for i in 1..=d {
        let w_prev = jd.coordinates_up_to(i - 1);
        let mut gens = w_prev.clone();
        gens.extend(jd.top_eigenvector_coordinates(i));
        h.push(lie_span(alg, &Subspace::coordinates(n, gens)));
        k.push(lie_span(alg, &Subspace::coordinates(n, jd.coordinates_up_to(i))));
    }
    let chain = SubalgebraChain { k, h };
    debug_assert!(chain.is_monotone());
    chain
}

/// Whether the `μ_1`-eigenvectors generate `𝔫`.
pub fn is_carnot_type(spec: &ValidatedSpec) -> bool {
    let n = spec.dim();
    let jd = spec.jordan();
    let eig: Vec<usize> =
        jd.basis_index().iter().enumerate().filter(|(_, b)| b.i == 1 && b.k == 1).map(|(c, _)| c).collect();
    lie_span(spec.algebra(), &Subspace::coordinates(n, eig)).is_full()
}

/// `{v : [v, w] ∈ sub for all w ∈ sub}`.
pub fn normalizer(algebra: &LieAlgebra, sub: &Subspace) -> Subspace {
    let n = algebra.dim();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for w in sub.basis() {
        // column i of the linear map v ↦ reduce([v, w])
        let cols: Vec<Vec<Rational>> = (0..n).map(|i| sub.reduce(&algebra.bracket(&algebra.unit(i), w))).collect();
        for r in 0..n {
            let row: Vec<Rational> = cols.iter().map(|c| c[r].clone()).collect();
            if row.iter().any(|x| !x.is_zero()) {
                rows.push(row);
            }
        }
    }
    if rows.is_empty() {
        return Subspace::full(n);
    }
    Matrix::from_rows(rows).kernel()
}

/// Whether the normalizer of `𝔥_1` is strictly larger than `𝔥_1`.
pub fn almost_isometry_predicate(spec: &ValidatedSpec) -> bool {
    let chain = subgroup_chain(spec);
    let h1 = chain.h(1);
    normalizer(spec.algebra(), h1).dim() > h1.dim()
}

/// Matrix of `α` restricted to an `α`-invariant subspace, in its RREF basis.
pub fn restrict(alpha: &Matrix, sub: &Subspace) -> Result<Matrix, LieError> {
    let dim = sub.dim();
    let mut m = Matrix::zeros(dim, dim);
    for (c, b) in sub.basis().iter().enumerate() {
        let image = alpha.apply(b);
        let coords = sub.coordinates_of(&image).ok_or(LieError::NotSubalgebra)?;
        for (r, x) in coords.into_iter().enumerate() {
            m[(r, c)] = x;
        }
    }
    Ok(m)
}

/// Jordan data of a rational matrix whose spectrum is rational and positive.
///
/// Blocks are listed in descending size.
pub fn matrix_to_jordan(a: &Matrix) -> Result<JordanSpec, LieError> {
    if a.rows() != a.cols() {
        return Err(LieError::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    let n = a.rows();
    let poly = a.characteristic_polynomial();
    let roots = rational_roots(&poly).ok_or(LieError::RootSearchOverflow)?;
    if roots.iter().map(|r| r.1).sum::<usize>() != n {
        return Err(LieError::IrrationalSpectrum);
    }
    let mut eigenvalues = Vec::new();
    let mut blocks = Vec::new();
    for (mu, mult) in roots {
        if !mu.is_positive() {
            return Err(LieError::NonPositiveEigenvalue(format!("{}", crate::exact::DisplayRational(&mu))));
        }
        let nmat = a.sub_scalar_identity(&mu);
        // ranks of N^0, N^1, ..., until the kernel reaches the multiplicity
        let mut ranks = vec![n];
        let mut power = Matrix::identity(n);
        while n - ranks[ranks.len() - 1] < mult {
            power = power.mul(&nmat);
            ranks.push(power.rank());
        }
        ranks.push(power.mul(&nmat).rank());
        // blocks of size ≥ k: r_{k-1} - r_k
        let at_least: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
        let mut sizes = Vec::new();
        for k in (1..=at_least.len()).rev() {
            let exactly = at_least[k - 1] - at_least.get(k).copied().unwrap_or(0);
            sizes.extend(core::iter::repeat_n(k, exactly));
        }
        eigenvalues.push(mu);
        blocks.push(sizes);
    }
    Ok(JordanSpec { eigenvalues, blocks })
}

/// Small specs used throughout tests and fixtures.
pub mod models {
    use super::*;
    use crate::exact::rat;

    /// Abelian `ℝⁿ` with the given Jordan data.
    pub fn abelian(eigenvalues: Vec<Rational>, blocks: Vec<Vec<usize>>) -> HeintzeSpec {
        let jordan = JordanSpec::new(eigenvalues, blocks);
        HeintzeSpec { algebra: LieAlgebra::abelian(jordan.dim()), jordan }
    }

    /// `X_3`: abelian `ℝ²` with one block `J(1,2)`.
    pub fn x3() -> HeintzeSpec {
        abelian(vec![rat(1)], vec![vec![2]])
    }

    /// `diag(1, μ)` on abelian `ℝ²` (`diag(1,1)` when `μ = 1`).
    pub fn diag(mu: Rational) -> HeintzeSpec {
        if mu == rat(1) {
            abelian(vec![rat(1)], vec![vec![1, 1]])
        } else {
            abelian(vec![rat(1), mu], vec![vec![1], vec![1]])
        }
    }

    /// `diag(a, b)` with `a < b`, or `a = b`.
    pub fn diag2(a: Rational, b: Rational) -> HeintzeSpec {
        if a == b {
            abelian(vec![a], vec![vec![1, 1]])
        } else {
            abelian(vec![a, b], vec![vec![1], vec![1]])
        }
    }

    /// A single block `J(μ, m)` on abelian `ℝ^m`.
    pub fn jordan_block(mu: Rational, m: usize) -> HeintzeSpec {
        abelian(vec![mu], vec![vec![m]])
    }

    /// Heisenberg `[e1, e2] = e3` with `α = diag(1, 1, 2)`.
    pub fn heisenberg() -> HeintzeSpec {
        let mut algebra = LieAlgebra::abelian(3);
        algebra.set_bracket(0, 1, 2, rat(1));
        HeintzeSpec { algebra, jordan: JordanSpec::new(vec![rat(1), rat(2)], vec![vec![1, 1], vec![1]]) }
    }
}
