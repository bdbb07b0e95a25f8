//! Critical exponents, spectrum verdicts and classification invariants.
//!
//! Everything here is exact: exponents are pairs of rationals compared
//! lexicographically.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exact::{rat, DisplayRational, Rational, Subspace};
use crate::lie::{
    is_carnot_type, matrix_to_jordan, restrict, subgroup_chain, BasisIndex, LieError, SubalgebraChain, ValidatedSpec,
};
use crate::young::PkExponent;

pub type Exponent = PkExponent<Rational>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum InvariantsError {
    #[error("abelian classification needs abelian algebras; use the Carnot comparison instead")]
    NotAbelian,
    #[error("index set covers every basis vector; no extension threshold")]
    NoExtensionThreshold,
    #[error("index {0} out of range")]
    IndexOutOfRange(usize),
    #[error(transparent)]
    Lie(#[from] LieError),
}

fn exp(p: Rational, kappa: Rational) -> Exponent {
    PkExponent::new(p, kappa)
}

/// `p_1 > ... > p_d` followed by `p_{d+1} = 1`, with `p_i = tr α / μ_i`.
pub fn critical_exponents(spec: &ValidatedSpec) -> Vec<Rational> {
    let jd = spec.jordan();
    let tr = jd.trace();
    let mut ps: Vec<Rational> = jd.eigenvalues.iter().map(|mu| &tr / mu).collect();
    ps.push(Rational::one());
    ps
}

fn p_i(spec: &ValidatedSpec, i: usize) -> Rational {
    spec.jordan().trace() / spec.jordan().mu(i)
}

fn int(n: usize) -> Rational {
    rat(n as i64)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlobalCritical {
    pub exponent: Exponent,
    /// Cohomology also vanishes at the critical exponent itself.
    pub trivial_at_critical: bool,
}

/// `(p_1, 1 + p_1(m_1 - 1))`.
pub fn global_critical(spec: &ValidatedSpec) -> GlobalCritical {
    let p1 = p_i(spec, 1);
    let m1 = spec.jordan().max_block(1);
    let kappa = Rational::one() + &p1 * (int(m1) - Rational::one());
    GlobalCritical { exponent: exp(p1, kappa), trivial_at_critical: true }
}

/// Local cohomology at a point of `N` vanishes iff `e ≤ global critical`.
pub fn local_trivial_at_n_point(spec: &ValidatedSpec, e: &Exponent) -> bool {
    *e <= global_critical(spec).exponent
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectrumVerdict {
    QuotientByK(usize),
    QuotientByH(usize),
    SeparatesPoints,
    Unresolved,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumResult {
    pub verdict: SpectrumVerdict,
    /// Dimension of the spectrum `N/S`.
    pub dimension: Option<usize>,
    /// The subalgebra `S` whose cosets are collapsed.
    pub subgroup: Option<Subspace>,
    /// Set for `p > p_1`, where the verdict is extrapolated from the
    /// extension threshold rather than one of the stated regimes.
    pub extrapolated: bool,
}

impl SpectrumResult {
    fn unresolved() -> Self {
        SpectrumResult { verdict: SpectrumVerdict::Unresolved, dimension: None, subgroup: None, extrapolated: false }
    }

    fn quotient(verdict: SpectrumVerdict, sub: &Subspace) -> Self {
        SpectrumResult {
            verdict,
            dimension: Some(sub.ambient() - sub.dim()),
            subgroup: Some(sub.clone()),
            extrapolated: false,
        }
    }

    /// Whether each coordinate function `π_c` is predicted to lie in the
    /// algebra, i.e. is constant on cosets of the collapsed subgroup.
    pub fn coordinate_membership(&self) -> Option<Vec<bool>> {
        let sub = self.subgroup.as_ref()?;
        Some((0..sub.ambient()).map(|c| sub.basis().iter().all(|b| b[c].is_zero())).collect())
    }
}

pub fn spectrum_at_infinity(spec: &ValidatedSpec, e: &Exponent) -> SpectrumResult {
    let chain = subgroup_chain(spec);
    spectrum_with_chain(spec, &chain, e)
}

/// As [`spectrum_at_infinity`] with a precomputed chain.
pub fn spectrum_with_chain(spec: &ValidatedSpec, chain: &SubalgebraChain, e: &Exponent) -> SpectrumResult {
    let jd = spec.jordan();
    let d = jd.d();
    let ps = critical_exponents(spec);
    let (p, kappa) = (&e.p, &e.kappa);
    let one = Rational::one();
    if *p == one || kappa < &Rational::zero() {
        return SpectrumResult::unresolved();
    }
    if *p > ps[0] {
        let mut r = SpectrumResult::quotient(SpectrumVerdict::SeparatesPoints, chain.k(0));
        r.extrapolated = true;
        return r;
    }
    for i in 1..=d {
        let pi = &ps[i - 1];
        let next = &ps[i];
        if p < pi && p > next {
            return SpectrumResult::quotient(SpectrumVerdict::QuotientByK(i), chain.k(i));
        }
        if p == pi {
            let mi = jd.max_block(i);
            if mi == 1 {
                return if *kappa <= one {
                    SpectrumResult::quotient(SpectrumVerdict::QuotientByK(i), chain.k(i))
                } else {
                    SpectrumResult::quotient(SpectrumVerdict::QuotientByK(i - 1), chain.k(i - 1))
                };
            }
            let lo = &one + pi * (int(mi) - rat(2));
            let hi = &one + pi * (int(mi) - rat(1));
            if *kappa > lo && *kappa <= hi {
                return SpectrumResult::quotient(SpectrumVerdict::QuotientByH(i), chain.h(i));
            }
            return SpectrumResult::unresolved();
        }
    }
    SpectrumResult::unresolved()
}

/// A set `{p} × κ-range` where no stated case applies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnresolvedRegion {
    pub p: Rational,
    pub kappa_low: Rational,
    pub low_inclusive: bool,
    /// `None` for `+∞`.
    pub kappa_high: Option<Rational>,
    pub high_inclusive: bool,
}

impl core::fmt::Display for UnresolvedRegion {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        let open = if self.low_inclusive { '[' } else { '(' };
        write!(f, "p = {}, kappa in {open}{}, ", DisplayRational(&self.p), DisplayRational(&self.kappa_low))?;
        match &self.kappa_high {
            Some(h) => write!(f, "{}{}", DisplayRational(h), if self.high_inclusive { ']' } else { ')' }),
            None => write!(f, "inf)"),
        }
    }
}

/// Every `(p, κ)` region with `κ ≥ 0` that [`spectrum_at_infinity`] leaves unresolved.
pub fn unresolved_regions(spec: &ValidatedSpec) -> Vec<UnresolvedRegion> {
    let jd = spec.jordan();
    let ps = critical_exponents(spec);
    let one = Rational::one();
    let mut out = Vec::new();
    for i in 1..=jd.d() {
        let mi = jd.max_block(i);
        if mi < 2 || ps[i - 1] == one {
            continue;
        }
        let pi = &ps[i - 1];
        let lo = &one + pi * (int(mi) - rat(2));
        let hi = &one + pi * (int(mi) - rat(1));
        out.push(UnresolvedRegion {
            p: pi.clone(),
            kappa_low: Rational::zero(),
            low_inclusive: true,
            kappa_high: Some(lo),
            high_inclusive: true,
        });
        out.push(UnresolvedRegion {
            p: pi.clone(),
            kappa_low: hi,
            low_inclusive: false,
            kappa_high: None,
            high_inclusive: false,
        });
    }
    out.push(UnresolvedRegion {
        p: one,
        kappa_low: Rational::zero(),
        low_inclusive: true,
        kappa_high: None,
        high_inclusive: false,
    });
    out
}

/// Lexicographic interval `[lower, upper]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentInterval {
    pub lower: Exponent,
    pub upper: Exponent,
}

/// `i(α) = min{i : 𝔨_i = 𝔫}`.
pub fn full_index(chain: &SubalgebraChain) -> usize {
    (0..chain.k.len()).find(|&i| chain.k(i).is_full()).expect("k_d is the whole algebra")
}

/// `[(p_i, 0), (p_i, 1 + p_i (m_i - 2)^+)]` at `i = i(α)`.
pub fn local_infinity_exponent_bounds(spec: &ValidatedSpec) -> ExponentInterval {
    let chain = subgroup_chain(spec);
    let i = full_index(&chain).max(1);
    let pi = p_i(spec, i);
    let mi = spec.jordan().max_block(i);
    let plus = int(mi.saturating_sub(2));
    let upper = exp(pi.clone(), Rational::one() + &pi * plus);
    ExponentInterval { lower: exp(pi, Rational::zero()), upper }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PointedSphere {
    /// Self quasi-isometries fix `∞` and preserve cosets of `H_1`.
    FixedInfinity { h1: Subspace },
    CarnotInconclusive,
}

pub fn pointed_sphere_report(spec: &ValidatedSpec) -> PointedSphere {
    if is_carnot_type(spec) {
        PointedSphere::CarnotInconclusive
    } else {
        PointedSphere::FixedInfinity { h1: subgroup_chain(spec).h(1).clone() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConformalDimension {
    NotAttained,
    Inconclusive,
}

pub fn conformal_dim_attainment(spec: &ValidatedSpec) -> ConformalDimension {
    if spec.jordan().max_block(1) >= 2 {
        ConformalDimension::NotAttained
    } else {
        ConformalDimension::Inconclusive
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassificationVerdict {
    /// `α` and `λβ` have the same Jordan form.
    Isomorphic { scale: Rational },
    Distinguished { invariant: &'static str, left: String, right: String },
    Inconclusive,
}

fn show_rationals(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(|q| format!("{}", DisplayRational(q))).collect();
    format!("[{}]", parts.join(", "))
}

/// Jordan-form comparison up to scaling, for abelian algebras.
pub fn abelian_qi_classify(a: &ValidatedSpec, b: &ValidatedSpec) -> Result<ClassificationVerdict, InvariantsError> {
    if !a.algebra().is_abelian() || !b.algebra().is_abelian() {
        return Err(InvariantsError::NotAbelian);
    }
    let (ja, jb) = (a.jordan(), b.jordan());
    let dist = |invariant, left: String, right: String| Ok(ClassificationVerdict::Distinguished { invariant, left, right });
    if ja.d() != jb.d() {
        return dist("d", format!("{}", ja.d()), format!("{}", jb.d()));
    }
    let (na, nb) = (ja.normalized_eigenvalues(), jb.normalized_eigenvalues());
    if na != nb {
        return dist("eigenvalue ratios", show_rationals(&na), show_rationals(&nb));
    }
    let va: Vec<usize> = (1..=ja.d()).map(|i| ja.eigenspace_dim(i)).collect();
    let vb: Vec<usize> = (1..=jb.d()).map(|i| jb.eigenspace_dim(i)).collect();
    if va != vb {
        return dist("dim V_i", format!("{va:?}"), format!("{vb:?}"));
    }
    let (ba, bb) = (ja.block_multisets(), jb.block_multisets());
    if ba != bb {
        return dist("block multiset", format!("{ba:?}"), format!("{bb:?}"));
    }
    Ok(ClassificationVerdict::Isomorphic { scale: ja.mu(1) / jb.mu(1) })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QiComparison {
    NotQuasiIsometric { reason: String },
    Inconclusive,
}

/// Normalized Jordan data of `α` restricted to `𝔥_1`.
pub fn h1_jordan_data(spec: &ValidatedSpec) -> Result<(Vec<Rational>, Vec<Vec<usize>>), InvariantsError> {
    let chain = subgroup_chain(spec);
    let h1 = chain.h(1);
    let alpha = spec.jordan().derivation_matrix();
    let restricted = restrict(&alpha, h1)?;
    let j = matrix_to_jordan(&restricted)?;
    Ok((j.normalized_eigenvalues(), j.block_multisets()))
}

/// Carnot-type mismatch and necessary invariants of `H_1 ⋊ ℝ`.
pub fn carnot_vs_noncarnot(a: &ValidatedSpec, b: &ValidatedSpec) -> Result<QiComparison, InvariantsError> {
    let (ca, cb) = (is_carnot_type(a), is_carnot_type(b));
    if ca != cb {
        return Ok(QiComparison::NotQuasiIsometric {
            reason: format!("Carnot mismatch: {ca} vs {cb}"),
        });
    }
    let (ha, hb) = (subgroup_chain(a).h(1).dim(), subgroup_chain(b).h(1).dim());
    if ha != hb {
        return Ok(QiComparison::NotQuasiIsometric { reason: format!("dim h_1: {ha} vs {hb}") });
    }
    let (da, db) = (h1_jordan_data(a)?, h1_jordan_data(b)?);
    if da.0 != db.0 {
        return Ok(QiComparison::NotQuasiIsometric {
            reason: format!("h_1 eigenvalue ratios: {} vs {}", show_rationals(&da.0), show_rationals(&db.0)),
        });
    }
    if da.1 != db.1 {
        return Ok(QiComparison::NotQuasiIsometric {
            reason: format!("h_1 block multisets: {:?} vs {:?}", da.1, db.1),
        });
    }
    Ok(QiComparison::Inconclusive)
}

/// `(p_i, 1 + p_i (m_{ij} + 1 - 2k))`.
pub fn vanishing_threshold(spec: &ValidatedSpec, idx: BasisIndex) -> Result<Exponent, InvariantsError> {
    let jd = spec.jordan();
    jd.coordinate(idx)?;
    let pi = p_i(spec, idx.i);
    let mij = int(jd.block(idx.i, idx.j));
    let kappa = Rational::one() + &pi * (mij + Rational::one() - int(2 * idx.k));
    Ok(exp(pi, kappa))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndexSet {
    /// `𝒦_i = {(r,j,k) : r ≤ i}`.
    K(usize),
    /// `𝓗_i = 𝒦_{i-1} ∪ {(i,j,1) : m_{ij} = m_i}`.
    H(usize),
}

impl IndexSet {
    pub fn contains(&self, spec: &ValidatedSpec, b: BasisIndex) -> bool {
        match *self {
            IndexSet::K(i) => b.i <= i,
            IndexSet::H(i) => {
                b.i < i || (b.i == i && b.k == 1 && spec.jordan().block(b.i, b.j) == spec.jordan().max_block(i))
            }
        }
    }
}

/// `(p_𝗂, 1 + p_𝗂 𝗆)` for the index set.
pub fn extension_threshold(spec: &ValidatedSpec, set: IndexSet) -> Result<Exponent, InvariantsError> {
    let jd = spec.jordan();
    match set {
        IndexSet::K(i) | IndexSet::H(i) if i > jd.d() => return Err(InvariantsError::IndexOutOfRange(i)),
        IndexSet::H(0) => return Err(InvariantsError::IndexOutOfRange(0)),
        _ => {}
    }
    let outside: Vec<BasisIndex> = jd.basis_index().into_iter().filter(|b| !set.contains(spec, *b)).collect();
    let ii = outside.iter().map(|b| b.i).min().ok_or(InvariantsError::NoExtensionThreshold)?;
    let mm = outside
        .iter()
        .filter(|b| b.i == ii)
        .map(|b| jd.block(b.i, b.j) as i64 - b.k as i64)
        .max()
        .expect("nonempty");
    let pi = p_i(spec, ii);
    let kappa = Rational::one() + &pi * rat(mm);
    Ok(exp(pi, kappa))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;
    use crate::lie::models::*;
    use alloc::vec;

    fn v(s: crate::lie::HeintzeSpec) -> ValidatedSpec {
        ValidatedSpec::new(s).unwrap()
    }

    fn e(p: Rational, k: Rational) -> Exponent {
        PkExponent::new(p, k)
    }

    #[test]
    fn critical_exponent_examples() {
        assert_eq!(critical_exponents(&v(x3())), vec![rat(2), rat(1)]);
        assert_eq!(critical_exponents(&v(diag(rat(5)))), vec![rat(6), ratio(6, 5), rat(1)]);
        assert_eq!(critical_exponents(&v(diag(rat(1)))), vec![rat(2), rat(1)]);
    }

    #[test]
    fn global_examples() {
        assert_eq!(global_critical(&v(x3())).exponent, e(rat(2), rat(3)));
        assert_eq!(global_critical(&v(diag(ratio(7, 2)))).exponent, e(ratio(9, 2), rat(1)));
        assert_eq!(global_critical(&v(jordan_block(rat(1), 3))).exponent, e(rat(3), rat(7)));
    }

    #[test]
    fn local_trivial_examples() {
        let s = v(x3());
        assert!(local_trivial_at_n_point(&s, &e(rat(2), rat(3))));
        assert!(!local_trivial_at_n_point(&s, &e(rat(2), ratio(3_000_001, 1_000_000))));
        assert!(local_trivial_at_n_point(&v(heisenberg()), &e(rat(1), rat(0))));
    }

    #[test]
    fn spectrum_examples() {
        let s = v(diag(rat(2)));
        for p in [ratio(8, 5), rat(2), ratio(29, 10)] {
            for k in [rat(0), rat(1), rat(17)] {
                let r = spectrum_at_infinity(&s, &e(p.clone(), k));
                assert_eq!(r.verdict, SpectrumVerdict::QuotientByK(1));
                assert_eq!(r.dimension, Some(1));
            }
        }
        let x = v(x3());
        let r = spectrum_at_infinity(&x, &e(rat(2), rat(2)));
        assert_eq!(r.verdict, SpectrumVerdict::QuotientByH(1));
        assert_eq!(r.dimension, Some(1));
        assert_eq!(r.subgroup, Some(Subspace::coordinates(2, [0])));
        assert_eq!(spectrum_at_infinity(&x, &e(rat(2), ratio(1, 2))).verdict, SpectrumVerdict::Unresolved);
        let r = spectrum_at_infinity(&s, &e(rat(4), rat(0)));
        assert_eq!(r.verdict, SpectrumVerdict::SeparatesPoints);
        assert!(r.extrapolated);
    }

    #[test]
    fn spectrum_boundary_cases() {
        let s = v(diag(rat(2)));
        // p = p_1 = 3 with m_1 = 1
        assert_eq!(spectrum_at_infinity(&s, &e(rat(3), rat(1))).verdict, SpectrumVerdict::QuotientByK(1));
        assert_eq!(spectrum_at_infinity(&s, &e(rat(3), ratio(3, 2))).verdict, SpectrumVerdict::QuotientByK(0));
        // p = p_2 = 3/2
        assert_eq!(spectrum_at_infinity(&s, &e(ratio(3, 2), rat(1))).verdict, SpectrumVerdict::QuotientByK(2));
        let r = spectrum_at_infinity(&s, &e(ratio(6, 5), rat(0)));
        assert_eq!((r.verdict, r.dimension), (SpectrumVerdict::QuotientByK(2), Some(0)));
        assert_eq!(spectrum_at_infinity(&s, &e(rat(1), rat(0))).verdict, SpectrumVerdict::Unresolved);
        // half-open κ interval at p = 2 for X_3
        let x = v(x3());
        assert_eq!(spectrum_at_infinity(&x, &e(rat(2), rat(1))).verdict, SpectrumVerdict::Unresolved);
        assert_eq!(spectrum_at_infinity(&x, &e(rat(2), rat(3))).verdict, SpectrumVerdict::QuotientByH(1));
    }

    #[test]
    fn coordinate_membership_predictions() {
        let x = v(x3());
        let r = spectrum_at_infinity(&x, &e(rat(2), rat(2)));
        assert_eq!(r.coordinate_membership(), Some(vec![false, true]));
        let s = v(diag(rat(2)));
        let r = spectrum_at_infinity(&s, &e(rat(2), rat(0)));
        assert_eq!(r.coordinate_membership(), Some(vec![false, true]));
        let r = spectrum_at_infinity(&x, &e(rat(3), rat(0)));
        assert_eq!(r.coordinate_membership(), Some(vec![true, true]));
    }

    #[test]
    fn bounds_examples() {
        let b = local_infinity_exponent_bounds(&v(x3()));
        assert_eq!((b.lower, b.upper), (e(rat(2), rat(0)), e(rat(2), rat(1))));
        let b = local_infinity_exponent_bounds(&v(diag(rat(2))));
        assert_eq!((b.lower, b.upper), (e(ratio(3, 2), rat(0)), e(ratio(3, 2), rat(1))));
        let b = local_infinity_exponent_bounds(&v(diag(rat(1))));
        assert_eq!((b.lower, b.upper), (e(rat(2), rat(0)), e(rat(2), rat(1))));
    }

    #[test]
    fn report_examples() {
        assert_eq!(
            pointed_sphere_report(&v(x3())),
            PointedSphere::FixedInfinity { h1: Subspace::coordinates(2, [0]) }
        );
        assert_eq!(pointed_sphere_report(&v(diag(rat(1)))), PointedSphere::CarnotInconclusive);
        assert!(matches!(pointed_sphere_report(&v(diag(rat(2)))), PointedSphere::FixedInfinity { .. }));
        assert_eq!(conformal_dim_attainment(&v(x3())), ConformalDimension::NotAttained);
        assert_eq!(conformal_dim_attainment(&v(diag(rat(2)))), ConformalDimension::Inconclusive);
        assert_eq!(conformal_dim_attainment(&v(jordan_block(rat(1), 3))), ConformalDimension::NotAttained);
    }

    #[test]
    fn abelian_classification() {
        let a = v(diag(rat(2)));
        let b = v(diag2(rat(2), rat(4)));
        assert_eq!(abelian_qi_classify(&a, &b).unwrap(), ClassificationVerdict::Isomorphic { scale: ratio(1, 2) });
        let c = v(diag(rat(3)));
        assert!(matches!(
            abelian_qi_classify(&a, &c).unwrap(),
            ClassificationVerdict::Distinguished { invariant: "eigenvalue ratios", .. }
        ));
        assert_eq!(abelian_qi_classify(&a, &a).unwrap(), ClassificationVerdict::Isomorphic { scale: rat(1) });
        assert!(matches!(
            abelian_qi_classify(&v(x3()), &v(diag(rat(1)))).unwrap(),
            ClassificationVerdict::Distinguished { invariant: "block multiset", .. }
        ));
        assert_eq!(abelian_qi_classify(&v(heisenberg()), &a), Err(InvariantsError::NotAbelian));
    }

    #[test]
    fn carnot_comparisons() {
        match carnot_vs_noncarnot(&v(x3()), &v(diag(rat(1)))).unwrap() {
            QiComparison::NotQuasiIsometric { reason } => assert!(reason.starts_with("Carnot mismatch")),
            other => panic!("{other:?}"),
        }
        let j12j12 = v(abelian(vec![rat(1)], vec![vec![2, 2]]));
        match carnot_vs_noncarnot(&v(x3()), &j12j12).unwrap() {
            QiComparison::NotQuasiIsometric { reason } => assert_eq!(reason, "dim h_1: 1 vs 2"),
            other => panic!("{other:?}"),
        }
        assert_eq!(carnot_vs_noncarnot(&v(diag(rat(1))), &v(diag(rat(1)))).unwrap(), QiComparison::Inconclusive);
        // h_1 = span(e1) with α|h_1 = (1) on both sides
        assert_eq!(carnot_vs_noncarnot(&v(diag(rat(2))), &v(diag(rat(3)))).unwrap(), QiComparison::Inconclusive);
    }

    #[test]
    fn restricted_jordan_distinguishes() {
        // blocks [2,1] at μ_1: only the top-block eigenvector enters h_1
        let a = v(abelian(vec![rat(1)], vec![vec![2, 1]]));
        let (ev, blocks) = h1_jordan_data(&a).unwrap();
        assert_eq!(ev, vec![rat(1)]);
        assert_eq!(blocks, vec![vec![1]]);
        // Heisenberg: h_1 = n, α|h_1 = diag(1,1,2)
        let (ev, blocks) = h1_jordan_data(&v(heisenberg())).unwrap();
        assert_eq!(ev, vec![rat(1), rat(2)]);
        assert_eq!(blocks, vec![vec![1, 1], vec![1]]);
    }

    #[test]
    fn vanishing_examples() {
        let x = v(x3());
        assert_eq!(vanishing_threshold(&x, BasisIndex { i: 1, j: 1, k: 1 }).unwrap(), e(rat(2), rat(3)));
        assert_eq!(vanishing_threshold(&x, BasisIndex { i: 1, j: 1, k: 2 }).unwrap(), e(rat(2), rat(-1)));
        let s = v(diag(rat(2)));
        assert_eq!(vanishing_threshold(&s, BasisIndex { i: 2, j: 1, k: 1 }).unwrap(), e(ratio(3, 2), rat(1)));
        assert!(vanishing_threshold(&s, BasisIndex { i: 2, j: 1, k: 2 }).is_err());
    }

    #[test]
    fn extension_examples() {
        assert_eq!(extension_threshold(&v(x3()), IndexSet::H(1)).unwrap(), e(rat(2), rat(1)));
        assert_eq!(extension_threshold(&v(diag(rat(2))), IndexSet::K(1)).unwrap(), e(ratio(3, 2), rat(1)));
        assert_eq!(extension_threshold(&v(jordan_block(rat(1), 3)), IndexSet::H(1)).unwrap(), e(rat(3), rat(4)));
        assert_eq!(extension_threshold(&v(x3()), IndexSet::K(1)), Err(InvariantsError::NoExtensionThreshold));
        for s in [x3(), diag(rat(2)), heisenberg(), jordan_block(rat(1), 3)] {
            let s = v(s);
            assert_eq!(extension_threshold(&s, IndexSet::K(0)).unwrap(), global_critical(&s).exponent);
        }
    }

    #[test]
    fn unresolved_listing() {
        let regions = unresolved_regions(&v(x3()));
        assert_eq!(regions.len(), 3);
        assert_eq!(regions[0].kappa_high, Some(rat(1)));
        assert_eq!(regions[1].kappa_low, rat(3));
        assert_eq!(regions[2].p, rat(1));
        assert_eq!(unresolved_regions(&v(diag(rat(2)))).len(), 1);
    }
}
