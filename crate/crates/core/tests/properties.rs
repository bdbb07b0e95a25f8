use hql_core::asymptotics::*;
use hql_core::besov::*;
use hql_core::exact::{rat, ratio, Rational, Subspace};
use hql_core::invariants::*;
use hql_core::lie::models::*;
use hql_core::lie::*;
use hql_core::tree::*;
use hql_core::young::*;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn cfg(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, ..ProptestConfig::default() }
}

fn samples_strategy() -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((-10.0f64..10.0, 0.01f64..5.0), 1..40)
}

fn phi_strategy() -> impl Strategy<Value = PhiPk> {
    (1.0f64..4.0, 0.0f64..3.0).prop_map(|(p, k)| PhiPk::new(p, k).unwrap())
}

fn validated(s: HeintzeSpec) -> ValidatedSpec {
    ValidatedSpec::new(s).unwrap()
}

fn worked_specs() -> Vec<ValidatedSpec> {
    vec![
        validated(x3()),
        validated(diag(rat(2))),
        validated(diag(rat(1))),
        validated(jordan_block(rat(1), 3)),
        validated(abelian(vec![rat(1)], vec![vec![2, 2]])),
        validated(abelian(vec![rat(1), rat(3)], vec![vec![2, 1], vec![2]])),
        validated(heisenberg()),
    ]
}

proptest! {
    #![proptest_config(cfg(64))]

    #[test]
    fn luxembourg_homogeneity(atoms in samples_strategy(), phi in phi_strategy(), c in -50.0f64..50.0) {
        let s = WeightedSamples::new(atoms).unwrap();
        let a = luxembourg_norm(&phi, &s.scaled(c));
        let b = c.abs() * luxembourg_norm(&phi, &s);
        prop_assert!((a - b).abs() <= 1e-9 * b.max(1e-300), "{} vs {}", a, b);
    }

    #[test]
    fn luxembourg_triangle(vals in prop::collection::vec((-5.0f64..5.0, -5.0f64..5.0, 0.1f64..3.0), 1..30), phi in phi_strategy()) {
        let f = WeightedSamples::new(vals.iter().map(|v| (v.0, v.2)).collect()).unwrap();
        let g = WeightedSamples::new(vals.iter().map(|v| (v.1, v.2)).collect()).unwrap();
        let fg = WeightedSamples::new(vals.iter().map(|v| (v.0 + v.1, v.2)).collect()).unwrap();
        prop_assert!(luxembourg_norm(&phi, &fg) <= luxembourg_norm(&phi, &f) + luxembourg_norm(&phi, &g) + 1e-9);
    }

    #[test]
    fn luxembourg_power_closed_form(atoms in samples_strategy(), p in 1.0f64..5.0) {
        let s = WeightedSamples::new(atoms.clone()).unwrap();
        let phi = PhiPk::new(p, 0.0).unwrap();
        let oracle = atoms.iter().map(|(v, w)| w * v.abs().powf(p)).sum::<f64>().powf(1.0 / p);
        let n = luxembourg_norm(&phi, &s);
        prop_assert!((n - oracle).abs() <= 1e-10 * oracle, "{} vs {}", n, oracle);
    }

    #[test]
    fn objective_monotone_along_trace(atoms in samples_strategy(), phi in phi_strategy()) {
        let s = WeightedSamples::new(atoms).unwrap();
        let (_, mut trace) = luxembourg_norm_traced(&phi, &s);
        trace.sort_by(|a, b| a.0.total_cmp(&b.0));
        for w in trace.windows(2) {
            prop_assert!(w[1].1 <= w[0].1 * (1.0 + 1e-12));
        }
    }

    #[test]
    fn lexicographic_order_is_total(a in (0u8..4, 0u8..4), b in (0u8..4, 0u8..4), c in (0u8..4, 0u8..4)) {
        let e = |x: (u8, u8)| PkExponent::new(x.0 as f64 + 1.0, x.1 as f64);
        let (x, y, z) = (e(a), e(b), e(c));
        use std::cmp::Ordering::*;
        prop_assert_eq!(x.lex_cmp(&y), y.lex_cmp(&x).reverse());
        if x.lex_cmp(&y) != Greater && y.lex_cmp(&z) != Greater {
            prop_assert!(x.lex_cmp(&z) != Greater);
        }
        if x.lex_cmp(&y) == Equal {
            prop_assert_eq!(x, y);
        }
    }
}

proptest! {
    #![proptest_config(cfg(12))]

    #[test]
    fn family_is_monotone(p in 1.0f64..3.0, k in 0.0f64..2.0, dp in 0.0f64..1.0, dk in 0.0f64..2.0, same_p in any::<bool>()) {
        // (p, κ) ≤ (p', κ') lexicographically
        let (p2, k2) = if same_p { (p, k + dk) } else { (p + dp + 1e-3, k * dk) };
        let a = PhiPk::new(p, k).unwrap();
        let b = PhiPk::new(p2, k2).unwrap();
        prop_assert!(small_t_dominates(&a, &b, &DominationSearch::default()));
    }
}

#[test]
fn lie_span_idempotent_and_monotone() {
    let h = heisenberg();
    let a = &h.algebra;
    let e = |c: usize| {
        let mut v = vec![Rational::zero(); 3];
        v[c] = Rational::one();
        v
    };
    let s = Subspace::span(3, vec![e(0)]);
    let t = Subspace::span(3, vec![e(0), e(1)]);
    let ls = lie_span(a, &s);
    assert_eq!(lie_span(a, &ls), ls);
    let lt = lie_span(a, &t);
    assert_eq!(lie_span(a, &lt), lt);
    assert!(ls.is_subspace_of(&lt));
    assert_eq!(lt.dim(), 3);
}

#[test]
fn h_equals_k_when_blocks_trivial() {
    for spec in worked_specs() {
        let chain = subgroup_chain(&spec);
        for i in 1..=spec.jordan().d() {
            if spec.jordan().max_block(i) == 1 {
                assert_eq!(chain.h(i), chain.k(i), "i = {i}");
            }
        }
    }
}

#[test]
fn normalizer_contains_input() {
    for spec in worked_specs() {
        let chain = subgroup_chain(&spec);
        for i in 0..=spec.jordan().d() {
            let n = normalizer(spec.algebra(), chain.k(i));
            assert!(chain.k(i).is_subspace_of(&n));
        }
    }
}

#[test]
fn chain_invariant_under_block_permutation() {
    let a = validated(abelian(vec![rat(1), rat(2)], vec![vec![1, 3, 2], vec![2, 1]]));
    let b = validated(abelian(vec![rat(1), rat(2)], vec![vec![3, 2, 1], vec![1, 2]]));
    // block j of `a` sits at position perm[i][j] of `b`
    let perm = [vec![2usize, 0, 1], vec![1, 0]];
    let n = a.dim();
    let map: Vec<usize> = a
        .jordan()
        .basis_index()
        .into_iter()
        .map(|idx| b.jordan().coordinate(BasisIndex { i: idx.i, j: perm[idx.i - 1][idx.j - 1] + 1, k: idx.k }).unwrap())
        .collect();
    let (ca, cb) = (subgroup_chain(&a), subgroup_chain(&b));
    let moved = |s: &Subspace| {
        let vecs = s
            .basis()
            .iter()
            .map(|v| {
                let mut w = vec![Rational::zero(); n];
                for (c, x) in v.iter().enumerate() {
                    w[map[c]] = x.clone();
                }
                w
            })
            .collect();
        Subspace::span(n, vecs)
    };
    for i in 0..=2 {
        assert_eq!(moved(ca.k(i)), *cb.k(i));
        assert_eq!(moved(ca.h(i)), *cb.h(i));
    }
}

#[test]
fn extension_threshold_of_k0_is_global_critical() {
    for spec in worked_specs() {
        assert_eq!(extension_threshold(&spec, IndexSet::K(0)).unwrap(), global_critical(&spec).exponent);
    }
}

#[test]
fn non_carnot_local_bound_below_global() {
    for spec in worked_specs() {
        let b = local_infinity_exponent_bounds(&spec);
        let g = global_critical(&spec).exponent;
        if is_carnot_type(&spec) {
            assert_eq!(b.upper, PkExponent::new(critical_exponents(&spec)[0].clone(), Rational::one()));
            assert_eq!(b.upper, g);
        } else {
            assert!(b.upper < g);
        }
    }
}

#[test]
fn spectrum_dimension_coarsens_downward() {
    let mut grid = Vec::new();
    for pn in 2..=16 {
        for kn in 0..=12 {
            grid.push(PkExponent::new(ratio(pn, 2), ratio(kn, 2)));
        }
    }
    grid.sort();
    for spec in worked_specs() {
        let dims: Vec<(PkExponent<Rational>, usize)> = grid
            .iter()
            .filter_map(|e| spectrum_at_infinity(&spec, e).dimension.map(|d| (e.clone(), d)))
            .collect();
        for w in dims.windows(2) {
            assert!(w[0].1 <= w[1].1, "{:?} then {:?}", w[0], w[1]);
        }
        let again: Vec<_> = grid.iter().map(|e| spectrum_at_infinity(&spec, e)).collect();
        let once: Vec<_> = grid.iter().map(|e| spectrum_at_infinity(&spec, e)).collect();
        assert_eq!(again, once);
    }
}

#[test]
fn singular_value_pairing_and_middle() {
    for m in 1..=5 {
        for t in [1.0, 10.0, 100.0] {
            let d = singular_data(m, t, Precision::Auto).unwrap();
            for i in 0..m {
                assert!((d.eigenvalues[i] * d.eigenvalues[m - 1 - i] - 1.0).abs() <= 1e-9, "m {m} t {t}");
            }
            if m % 2 == 1 {
                assert!((d.eigenvalues[m / 2] - 1.0).abs() <= 1e-10);
            }
        }
    }
}

#[test]
fn exact_exponential_unimodular() {
    for m in 1..=7 {
        for t in [ratio(1, 3), rat(5), ratio(-7, 2)] {
            assert_eq!(NilpotentExp::exact(m, &t).determinant(), Rational::one());
        }
    }
}

#[test]
fn ratios_converge_monotonically() {
    for m in 1..=4 {
        for i in 1..=m {
            let ts = [10.0, 1e2, 1e3];
            let a: Vec<f64> = ts.iter().map(|&t| (asymptotic_ratio(m, i, t, Precision::Auto).unwrap() - 1.0).abs()).collect();
            let c: Vec<f64> = ts.iter().map(|&t| (charpoly_coeff_ratio(m, i, t).unwrap() - 1.0).abs()).collect();
            for w in a.windows(2).chain(c.windows(2)) {
                // constant ratios (middle index, k = m) sit at rounding level
                assert!(w[1] < w[0] || w[1] <= 1e-12, "m {m} i {i}: {a:?} {c:?}");
            }
        }
    }
}

#[test]
fn alignment_nondecreasing() {
    for m in 1..=4 {
        for i in 1..=m {
            for t in [100.0, 1000.0] {
                let now = eigenvector_alignment(m, i, t, Precision::Auto).unwrap();
                let before = eigenvector_alignment(m, i, t / 10.0, Precision::Auto).unwrap();
                assert!(now >= before - 1e-15, "m {m} i {i} t {t}");
            }
        }
    }
}

proptest! {
    #![proptest_config(cfg(48))]

    #[test]
    fn parabolic_scale_equivariance(x in (0.0f64..1.0, 0.0f64..1.0), y in (0.0f64..1.0, 0.0f64..1.0), t0 in -1.0f64..2.0) {
        let spec = validated(x3());
        let b = BaseNorm::standard();
        let (p, q) = ([x.0, x.1], [y.0, y.1]);
        prop_assume!(p != q);
        let base = parabolic_metric_abelian(&spec, &b, &p, &q).unwrap();
        let moved = parabolic_metric_abelian(&spec, &b, &flow(&spec, &p, -t0), &flow(&spec, &q, -t0)).unwrap();
        prop_assert!((moved - (-t0).exp() * base).abs() <= 1e-8 * moved.max(base));
    }

    #[test]
    fn closed_form_symmetric(x in (0.0f64..1.0, 0.0f64..1.0), y in (0.0f64..1.0, 0.0f64..1.0)) {
        let (p, q) = ([x.0, x.1], [y.0, y.1]);
        prop_assert_eq!(closed_form_metric_x3(p, q), closed_form_metric_x3(q, p));
        prop_assert_eq!(closed_form_metric_x3(p, q) == 0.0, p == q);
    }
}

#[test]
fn log_holder_bound_has_uniform_constant() {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut worst = 0.0f64;
    for _ in 0..20_000 {
        let v = [rng.gen::<f64>(), rng.gen::<f64>()];
        let w = [rng.gen::<f64>(), rng.gen::<f64>()];
        let r = closed_form_metric_x3(v, w);
        if r == 0.0 || r > 0.5 {
            continue;
        }
        worst = worst.max((v[0] - w[0]).abs() / (r * (1.0 / r).ln()));
    }
    // |Δx| ≤ ϱ + |Δy| ln(1/|Δy|), and s ln(1/s) ≤ min(ϱ ln(1/ϱ), 1/e) for s ≤ ϱ;
    // the worst case ϱ = 1/2 gives C ≤ 1/ln 2 + 2/(e ln 2) ≈ 2.504
    println!("fitted log-Hölder constant: {worst}");
    let bound = 1.0 / 2f64.ln() + 2.0 / (std::f64::consts::E * 2f64.ln());
    assert!(worst > 0.0 && worst <= bound);
}

fn tree_phis() -> Vec<PhiPk> {
    [(1.0, 0.0), (2.0, 0.0), (2.0, 1.0), (3.0, 2.0)].iter().map(|&(p, k)| PhiPk::new(p, k).unwrap()).collect()
}

#[test]
fn coboundary_is_linear_and_telescopes() {
    let t = TreeComplex::new(3, 5).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let f = random_vertex_function(&t, &mut rng);
    let g = random_vertex_function(&t, &mut rng);
    let sum = VertexFunction(f.0.iter().zip(&g.0).map(|(a, b)| 2.0 * a - b).collect());
    let (df, dg, ds) = (coboundary(&t, &f).unwrap(), coboundary(&t, &g).unwrap(), coboundary(&t, &sum).unwrap());
    for e in 0..t.edge_count() {
        assert!((ds.0[e] - (2.0 * df.0[e] - dg.0[e])).abs() < 1e-14);
    }
    for r in 0..=5 {
        assert!((t.level_size(r) as f64 * t.cylinder_mass(r) - 1.0).abs() < 1e-14);
    }
}

#[test]
fn tree_inequalities_on_random_inputs() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for (b, depth) in [(2, 9), (3, 6)] {
        let t = TreeComplex::new(b, depth).unwrap();
        for phi in tree_phis() {
            let mut fs = Vec::new();
            for _ in 0..100 {
                let f = random_vertex_function(&t, &mut rng);
                let g = random_level_function(&t, &mut rng);
                assert!(shift_contraction_check(&phi, &t, &g).unwrap().holds());
                assert!(strichartz_check(&phi, &t, &f).unwrap().holds());
                assert!(trace_norm_check(&phi, &t, &f).unwrap().holds());
                fs.push(f);
            }
            assert_eq!(coboundary_bound_check(&phi, &t, &fs).unwrap().violations, 0);
        }
    }
}

#[test]
fn shadow_average_bounded_and_consistent() {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (b, depth) in [(2, 8), (3, 5)] {
        let t = TreeComplex::new(b, depth).unwrap();
        for phi in tree_phis() {
            for _ in 0..100 {
                let u: Vec<f64> = (0..t.leaf_count()).map(|_| rng.gen_range(-1.0..1.0)).collect();
                let s = shadow_average_extension(&phi, &t, &u, 0).unwrap();
                assert!(s.df_norm <= s.bound * s.besov + SLACK, "{} > {}", s.ratio, s.bound);
                assert_eq!(radial_analysis(&phi, &t, &s.f).unwrap().f_inf, u);
            }
        }
    }
}

proptest! {
    #![proptest_config(cfg(16))]

    #[test]
    fn besov_homogeneous(c in -20.0f64..20.0, seed in 0u64..1000) {
        let g = make_x3_grid(3).unwrap();
        let phi = PhiPk::new(2.0, 1.0).unwrap();
        let vals = g.sample(|p| (p[0] * 3.0 + p[1]).sin());
        let o = BesovOptions { pair_budget: 500, seed };
        let base = besov_seminorm(&phi, &g, &vals, None, &o).unwrap().value;
        let scaled: Vec<f64> = vals.iter().map(|v| c * v).collect();
        let s = besov_seminorm(&phi, &g, &scaled, None, &o).unwrap().value;
        prop_assert!((s - c.abs() * base).abs() <= 1e-9 * s.max(1e-300));
    }

    #[test]
    fn besov_monotone_in_region(cut in 2usize..60, extra in 1usize..21) {
        let g = make_x3_grid(3).unwrap();
        let phi = PhiPk::new(2.0, 2.0).unwrap();
        let vals = g.sample(|p| p[0] * p[0] - p[1]);
        let o = BesovOptions::default();
        let small: Vec<usize> = (0..cut).collect();
        let big: Vec<usize> = (0..cut + extra).collect();
        let a = besov_seminorm(&phi, &g, &vals, Some(&small), &o).unwrap().value;
        let b = besov_seminorm(&phi, &g, &vals, Some(&big), &o).unwrap().value;
        prop_assert!(a <= b + 1e-12);
    }
}

#[test]
fn subsampled_besov_within_two_percent() {
    let phi = PhiPk::new(2.0, 2.0).unwrap();
    for level in [3, 4] {
        let g = make_x3_grid(level).unwrap();
        for u in [|p: &[f64]| p[0] * p[1], |p: &[f64]| (4.0 * p[1]).cos() - p[0]] {
            let vals = g.sample(u);
            let full = besov_seminorm(&phi, &g, &vals, None, &BesovOptions::default()).unwrap();
            let budget = g.len() * (g.len() - 1) / 8;
            let s = besov_seminorm(&phi, &g, &vals, None, &BesovOptions { pair_budget: budget, seed: 1 }).unwrap();
            assert_eq!((full.method, s.method), (PairMethod::Full, PairMethod::Sampled));
            assert!((s.value - full.value).abs() <= 0.02 * full.value, "level {level}: {} vs {}", s.value, full.value);
        }
    }
}

#[test]
fn objective_nonincreasing_in_kappa_for_small_arguments() {
    let g = make_x3_grid(4).unwrap();
    let atoms = pair_measure(&g, &g.sample(|p| p[0]), None, &BesovOptions::default()).unwrap().atoms;
    // |Δu| ≤ 1, so α = 2 keeps every argument in (0, 1/2], below the crossing point
    for p in [1.5, 2.0, 3.0] {
        let values: Vec<f64> =
            [0.0, 0.5, 1.0, 2.0, 3.0, 4.0].iter().map(|&k| luxembourg_objective(&PhiPk::new(p, k).unwrap(), &atoms, 2.0)).collect();
        for w in values.windows(2) {
            assert!(w[1] <= w[0]);
        }
    }
}

#[test]
fn besov_matches_brute_force_at_level_five() {
    let g = make_x3_grid(5).unwrap();
    let phi = PhiPk::new(2.0, 2.0).unwrap();
    let u = g.sample(|p| p[1]);
    let est = besov_seminorm(&phi, &g, &u, None, &BesovOptions::default()).unwrap().value;
    // direct double sum over ordered pairs, bisection in α
    let n = g.len();
    let objective = |alpha: f64| {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                let du = u[i] - u[j];
                if i == j || du == 0.0 {
                    continue;
                }
                let rho = closed_form_metric_x3([g.point(i)[0], g.point(i)[1]], [g.point(j)[0], g.point(j)[1]]);
                s += g.weight(i) * g.weight(j) * phi.eval(du / alpha) / rho.powi(4);
            }
        }
        s
    };
    let (mut lo, mut hi) = (est * 0.9, est * 1.1);
    assert!(objective(lo) > 1.0 && objective(hi) < 1.0);
    for _ in 0..40 {
        let mid = 0.5 * (lo + hi);
        if objective(mid) > 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    assert!((est - 0.5 * (lo + hi)).abs() <= 1e-9 * est, "{est} vs {}", 0.5 * (lo + hi));
}
