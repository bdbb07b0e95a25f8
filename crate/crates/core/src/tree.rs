//! Truncated `b`-regular rooted trees: cochains, radial limits and the
//! contraction / Strichartz / trace / shadow-average inequalities.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Float;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::young::{luxembourg_norm, Scaled, WeightedSamples, YoungFunction};

/// Largest supported depth for `b = 2`.
pub const MAX_DEPTH: usize = 14;
/// Largest supported leaf count (`3^12`).
pub const MAX_LEAVES: usize = 531_441;
/// Leaf pairs are summed in full up to this many leaves, sampled beyond.
pub const FULL_PAIR_LEAVES: usize = 1024;
/// Absolute slack allowed in every inequality.
pub const SLACK: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TreeError {
    #[error("branching must be at least 2, got {0}")]
    Branching(usize),
    #[error("depth must be in 1..={max}, got {depth}")]
    Depth { depth: usize, max: usize },
    #[error("tree with {0} leaves exceeds the supported size")]
    TooLarge(usize),
    #[error("function has {got} values, tree needs {expected}")]
    Length { got: usize, expected: usize },
    #[error("Young function lacks doubling metadata")]
    MissingDoubling,
    #[error("non-finite value in input")]
    NonFinite,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TreeComplex {
    b: usize,
    depth: usize,
}

impl TreeComplex {
    pub fn new(b: usize, depth: usize) -> Result<Self, TreeError> {
        if b < 2 {
            return Err(TreeError::Branching(b));
        }
        if depth == 0 || depth > MAX_DEPTH {
            return Err(TreeError::Depth { depth, max: MAX_DEPTH });
        }
        let leaves = b.checked_pow(depth as u32).ok_or(TreeError::TooLarge(usize::MAX))?;
        if leaves > MAX_LEAVES {
            return Err(TreeError::TooLarge(leaves));
        }
        Ok(TreeComplex { b, depth })
    }

    pub fn branching(&self) -> usize {
        self.b
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// `v = e^Q = b`.
    pub fn volume(&self) -> f64 {
        self.b as f64
    }

    /// `Q = ln b`.
    pub fn ahlfors_dimension(&self) -> f64 {
        (self.b as f64).ln()
    }

    pub fn level_size(&self, r: usize) -> usize {
        self.b.pow(r as u32)
    }

    /// Index of the first vertex at depth `r`.
    pub fn offset(&self, r: usize) -> usize {
        (self.level_size(r) - 1) / (self.b - 1)
    }

    pub fn vertex(&self, r: usize, j: usize) -> usize {
        self.offset(r) + j
    }

    pub fn vertex_count(&self) -> usize {
        self.offset(self.depth + 1)
    }

    /// Edges are indexed by their child vertex minus one.
    pub fn edge_count(&self) -> usize {
        self.vertex_count() - 1
    }

    pub fn leaf_count(&self) -> usize {
        self.level_size(self.depth)
    }

    /// `(depth, position)` of vertex `x`.
    pub fn locate(&self, x: usize) -> (usize, usize) {
        let mut r = 0;
        while self.offset(r + 1) <= x {
            r += 1;
        }
        (r, x - self.offset(r))
    }

    pub fn parent(&self, x: usize) -> Option<usize> {
        let (r, j) = self.locate(x);
        (r > 0).then(|| self.vertex(r - 1, j / self.b))
    }

    pub fn children(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        let (r, j) = self.locate(x);
        let range = if r < self.depth { 0..self.b } else { 0..0 };
        range.map(move |c| self.vertex(r + 1, j * self.b + c))
    }

    /// Position at depth `r` of the ancestor of leaf `leaf`.
    pub fn ancestor(&self, leaf: usize, r: usize) -> usize {
        leaf / self.level_size(self.depth - r)
    }

    /// `H` of a depth-`r` cylinder.
    pub fn cylinder_mass(&self, r: usize) -> f64 {
        Float::powi(self.b as f64, -(r as i32))
    }

    /// Depth of the deepest common ancestor of two leaves.
    pub fn split_depth(&self, a: usize, c: usize) -> usize {
        let mut r = self.depth;
        let (mut a, mut c) = (a, c);
        while a != c {
            a /= self.b;
            c /= self.b;
            r -= 1;
        }
        r
    }

    pub fn depth_function(&self) -> VertexFunction {
        let mut values = Vec::with_capacity(self.vertex_count());
        for r in 0..=self.depth {
            values.extend(core::iter::repeat_n(r as f64, self.level_size(r)));
        }
        VertexFunction(values)
    }

    fn check(&self, got: usize, expected: usize, values: &[f64]) -> Result<(), TreeError> {
        if got != expected {
            return Err(TreeError::Length { got, expected });
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(TreeError::NonFinite);
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VertexFunction(pub Vec<f64>);

#[derive(Debug, Clone, PartialEq)]
pub struct EdgeCochain(pub Vec<f64>);

/// `G(ξ, r)` for leaves `ξ` and levels `1..=R`, stored densely.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelFunction {
    leaves: usize,
    depth: usize,
    values: Vec<f64>,
}

impl LevelFunction {
    pub fn zeros(tree: &TreeComplex) -> Self {
        LevelFunction { leaves: tree.leaf_count(), depth: tree.depth, values: vec![0.0; tree.leaf_count() * tree.depth] }
    }

    /// From per-level cylinder values: `levels[r-1][j]` at depth-`r` cylinder `j`.
    pub fn from_cylinders(tree: &TreeComplex, levels: &[Vec<f64>]) -> Result<Self, TreeError> {
        if levels.len() != tree.depth {
            return Err(TreeError::Length { got: levels.len(), expected: tree.depth });
        }
        let mut g = Self::zeros(tree);
        for (ri, vals) in levels.iter().enumerate() {
            tree.check(vals.len(), tree.level_size(ri + 1), vals)?;
            for leaf in 0..g.leaves {
                g.set(leaf, ri + 1, vals[tree.ancestor(leaf, ri + 1)]);
            }
        }
        Ok(g)
    }

    pub fn get(&self, leaf: usize, r: usize) -> f64 {
        self.values[(r - 1) * self.leaves + leaf]
    }

    pub fn set(&mut self, leaf: usize, r: usize, v: f64) {
        self.values[(r - 1) * self.leaves + leaf] = v;
    }

    pub fn level(&self, r: usize) -> &[f64] {
        &self.values[(r - 1) * self.leaves..r * self.leaves]
    }

    /// Whether each level is constant on cylinders of that depth.
    pub fn is_cylinder_constant(&self, tree: &TreeComplex) -> bool {
        (1..=self.depth).all(|r| {
            let block = tree.level_size(self.depth - r);
            self.level(r).chunks(block).all(|c| c.iter().all(|v| *v == c[0]))
        })
    }

    /// `S*G(ξ, r) = G(ξ, r + 1)`, zero at the last level.
    pub fn shift(&self) -> Self {
        let mut values = vec![0.0; self.values.len()];
        let n = self.values.len() - self.leaves;
        values[..n].copy_from_slice(&self.values[self.leaves..]);
        LevelFunction { leaves: self.leaves, depth: self.depth, values }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| *v == 0.0)
    }
}

/// `(lhs, rhs)` of an inequality `lhs ≤ rhs`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Inequality {
    pub lhs: f64,
    pub rhs: f64,
}

impl Inequality {
    pub fn slack(&self) -> f64 {
        self.rhs - self.lhs
    }

    pub fn holds(&self) -> bool {
        self.lhs <= self.rhs + SLACK
    }

    pub fn ratio(&self) -> f64 {
        if self.rhs == 0.0 {
            0.0
        } else {
            self.lhs / self.rhs
        }
    }
}

pub fn coboundary(tree: &TreeComplex, f: &VertexFunction) -> Result<EdgeCochain, TreeError> {
    tree.check(f.0.len(), tree.vertex_count(), &f.0)?;
    let mut out = Vec::with_capacity(tree.edge_count());
    for r in 1..=tree.depth {
        let (o, po) = (tree.offset(r), tree.offset(r - 1));
        for j in 0..tree.level_size(r) {
            out.push(f.0[o + j] - f.0[po + j / tree.b]);
        }
    }
    Ok(EdgeCochain(out))
}

fn counting_norm<Y: YoungFunction>(phi: &Y, values: &[f64]) -> f64 {
    let atoms = values.iter().filter(|v| **v != 0.0).map(|&v| (v, 1.0)).collect();
    luxembourg_norm(phi, &WeightedSamples::new(atoms).expect("finite values"))
}

pub fn cochain_norm<Y: YoungFunction>(phi: &Y, tree: &TreeComplex, w: &EdgeCochain) -> Result<f64, TreeError> {
    tree.check(w.0.len(), tree.edge_count(), &w.0)?;
    Ok(counting_norm(phi, &w.0))
}

pub fn vertex_norm<Y: YoungFunction>(phi: &Y, tree: &TreeComplex, f: &VertexFunction) -> Result<f64, TreeError> {
    tree.check(f.0.len(), tree.vertex_count(), &f.0)?;
    Ok(counting_norm(phi, &f.0))
}

/// Norm of a leaf function in `L^φ(H)`.
pub fn leaf_norm<Y: YoungFunction>(phi: &Y, tree: &TreeComplex, u: &[f64]) -> Result<f64, TreeError> {
    tree.check(u.len(), tree.leaf_count(), u)?;
    let w = tree.cylinder_mass(tree.depth);
    let atoms = u.iter().filter(|v| **v != 0.0).map(|&v| (v, w)).collect();
    Ok(luxembourg_norm(phi, &WeightedSamples::new(atoms).expect("finite values")))
}

/// Norm in `H ⊗ μ_v` on levels `1..=R`; `(ξ, r)` has mass `b^{r-R}`.
pub fn level_norm<Y: YoungFunction>(phi: &Y, tree: &TreeComplex, g: &LevelFunction) -> Result<f64, TreeError> {
    tree.check(g.values.len(), tree.leaf_count() * tree.depth, &g.values)?;
    let mut atoms = Vec::new();
    for r in 1..=tree.depth {
        let w = Float::powi(tree.b as f64, r as i32 - tree.depth as i32);
        atoms.extend(g.level(r).iter().filter(|v| **v != 0.0).map(|&v| (v, w)));
    }
    Ok(luxembourg_norm(phi, &WeightedSamples::new(atoms).expect("finite values")))
}

fn doubling_exponent_of<Y: YoungFunction>(phi: &Y) -> Result<f64, TreeError> {
    phi.doubling().map(|d| d.exponent).ok_or(TreeError::MissingDoubling)
}

/// `(1 - v^{-1/K})^{-1}`, the bound on `T = Σ (S*)^k`.
pub fn strichartz_constant<Y: YoungFunction>(phi: &Y, tree: &TreeComplex) -> Result<f64, TreeError> {
    let k = doubling_exponent_of(phi)?;
    Ok(1.0 / (1.0 - Float::powf(tree.volume(), -1.0 / k)))
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoboundaryReport {
    pub trials: usize,
    /// `N = b + 1`.
    pub degree: usize,
    /// Largest `‖df‖_φ / (N ‖f‖_{Nφ})`.
    pub worst_ratio: f64,
    pub min_slack: f64,
    pub violations: usize,
}

/// `‖df‖_φ ≤ N ‖f‖_{Nφ}` on each sample.
pub fn coboundary_bound_check<Y: YoungFunction + Copy>(
    phi: &Y,
    tree: &TreeComplex,
    samples: &[VertexFunction],
) -> Result<CoboundaryReport, TreeError> {
    let n = tree.b + 1;
    let scaled = Scaled { factor: n as f64, inner: *phi };
    let mut report = CoboundaryReport { trials: 0, degree: n, worst_ratio: 0.0, min_slack: f64::INFINITY, violations: 0 };
    for f in samples {
        let ineq = coboundary_inequality(phi, &scaled, tree, f)?;
        report.trials += 1;
        report.worst_ratio = report.worst_ratio.max(ineq.ratio());
        report.min_slack = report.min_slack.min(ineq.slack());
        if !ineq.holds() {
            report.violations += 1;
        }
    }
    Ok(report)
}

fn coboundary_inequality<Y: YoungFunction + Copy>(
    phi: &Y,
    scaled: &Scaled<Y>,
    tree: &TreeComplex,
    f: &VertexFunction,
) -> Result<Inequality, TreeError> {
    let df = coboundary(tree, f)?;
    Ok(Inequality { lhs: cochain_norm(phi, tree, &df)?, rhs: scaled.factor * vertex_norm(scaled, tree, f)? })
}

/// `(‖S*G‖_φ, v^{-1/K} ‖G‖_φ)`.
pub fn shift_contraction_check<Y: YoungFunction>(
    phi: &Y,
    tree: &TreeComplex,
    g: &LevelFunction,
) -> Result<Inequality, TreeError> {
    let k = doubling_exponent_of(phi)?;
    let lhs = level_norm(phi, tree, &g.shift())?;
    let rhs = Float::powf(tree.volume(), -1.0 / k) * level_norm(phi, tree, g)?;
    Ok(Inequality { lhs, rhs })
}

#[derive(Debug, Clone, PartialEq)]
pub struct RadialAnalysis {
    /// `F(ξ, r) = f(ξ) - f(θ_ξ(r - 1))`.
    pub big_f: LevelFunction,
    /// `DF(ξ, r)`, the increment on the edge from depth `r - 1` to `r`.
    pub df: LevelFunction,
    /// Leaf values, standing in for `f_∞`.
    pub f_inf: Vec<f64>,
    /// `‖f_R - f_r‖_φ` in `L^φ(H)` for `r = 1..=R`.
    pub level_norms: Vec<f64>,
}

pub fn radial_analysis<Y: YoungFunction>(
    phi: &Y,
    tree: &TreeComplex,
    f: &VertexFunction,
) -> Result<RadialAnalysis, TreeError> {
    tree.check(f.0.len(), tree.vertex_count(), &f.0)?;
    let rr = tree.depth;
    let leaves = tree.leaf_count();
    let at = |r: usize, leaf: usize| f.0[tree.vertex(r, tree.ancestor(leaf, r))];
    let f_inf: Vec<f64> = (0..leaves).map(|l| at(rr, l)).collect();
    let mut big_f = LevelFunction::zeros(tree);
    let mut df = LevelFunction::zeros(tree);
    for r in 1..=rr {
        for (leaf, &top) in f_inf.iter().enumerate() {
            big_f.set(leaf, r, top - at(r - 1, leaf));
            df.set(leaf, r, at(r, leaf) - at(r - 1, leaf));
        }
    }
    let level_norms = (1..=rr).map(|r| leaf_norm(phi, tree, big_f.level(r))).collect::<Result<_, _>>()?;
    Ok(RadialAnalysis { big_f, df, f_inf, level_norms })
}

/// `(‖F‖_φ, C ‖DF‖_φ)` with `C = (1 - v^{-1/K})^{-1}`.
pub fn strichartz_check<Y: YoungFunction>(phi: &Y, tree: &TreeComplex, f: &VertexFunction) -> Result<Inequality, TreeError> {
    let c = strichartz_constant(phi, tree)?;
    let ra = radial_analysis(phi, tree, f)?;
    Ok(Inequality { lhs: level_norm(phi, tree, &ra.big_f)?, rhs: c * level_norm(phi, tree, &ra.df)? })
}

/// `(‖f_R - f(root)‖_φ, C ‖df‖_φ)`.
pub fn trace_norm_check<Y: YoungFunction>(phi: &Y, tree: &TreeComplex, f: &VertexFunction) -> Result<Inequality, TreeError> {
    let c = strichartz_constant(phi, tree)?;
    tree.check(f.0.len(), tree.vertex_count(), &f.0)?;
    let root = f.0[0];
    let o = tree.offset(tree.depth);
    let centered: Vec<f64> = f.0[o..].iter().map(|v| v - root).collect();
    let df = coboundary(tree, f)?;
    Ok(Inequality { lhs: leaf_norm(phi, tree, &centered)?, rhs: c * cochain_norm(phi, tree, &df)? })
}

/// Cylinder averages `f(x) = ⨍_{℧(x)} u dH`.
pub fn shadow_average(tree: &TreeComplex, u: &[f64]) -> Result<VertexFunction, TreeError> {
    tree.check(u.len(), tree.leaf_count(), u)?;
    let mut values = vec![0.0; tree.vertex_count()];
    let o = tree.offset(tree.depth);
    values[o..].copy_from_slice(u);
    for r in (0..tree.depth).rev() {
        let (o, co) = (tree.offset(r), tree.offset(r + 1));
        for j in 0..tree.level_size(r) {
            let sum: f64 = (0..tree.b).map(|c| values[co + j * tree.b + c]).sum();
            values[o + j] = sum / tree.b as f64;
        }
    }
    Ok(VertexFunction(values))
}

/// Weighted atoms of the leaf-pair Besov functional.
///
/// An ordered pair at split depth `k` carries `H ⊗ H / ϱ^{2Q} = b^{2k-2R}`.
/// Up to [`FULL_PAIR_LEAVES`] leaves every pair is used; beyond, each
/// split depth is sampled with `pairs_per_depth` draws and reweighted.
pub fn besov_pairs(tree: &TreeComplex, u: &[f64], pairs_per_depth: usize, seed: u64) -> Result<WeightedSamples, TreeError> {
    tree.check(u.len(), tree.leaf_count(), u)?;
    let n = tree.leaf_count();
    let rr = tree.depth as i32;
    let b = tree.b as f64;
    let weight = |k: usize| Float::powi(b, 2 * k as i32 - 2 * rr);
    let mut atoms = Vec::new();
    if n <= FULL_PAIR_LEAVES {
        for a in 0..n {
            for c in 0..n {
                let d = u[a] - u[c];
                if d != 0.0 {
                    atoms.push((d, weight(tree.split_depth(a, c))));
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for k in 0..tree.depth {
            // ζ shares the depth-k ancestor of ξ but not the depth-(k+1) one
            let sub = tree.level_size(tree.depth - k);
            let child = tree.level_size(tree.depth - k - 1);
            let stratum = (n * (sub - child)) as f64;
            let w = weight(k) * stratum / pairs_per_depth as f64;
            for _ in 0..pairs_per_depth {
                let a = rng.gen_range(0..n);
                let base = a / sub * sub;
                let own = (a - base) / child;
                let mut pick = rng.gen_range(0..sub - child);
                if pick >= own * child {
                    pick += child;
                }
                let d = u[a] - u[base + pick];
                if d != 0.0 {
                    atoms.push((d, w));
                }
            }
        }
    }
    Ok(WeightedSamples::new(atoms).expect("finite values"))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShadowReport {
    pub f: VertexFunction,
    pub df_norm: f64,
    /// Discrete `⟨u⟩_φ`.
    pub besov: f64,
    /// `‖df‖_φ / ⟨u⟩_φ`, zero when both vanish.
    pub ratio: f64,
    /// `⟨u⟩_φ / ‖df‖_φ`.
    pub converse_ratio: f64,
    /// `b³/(b² - 1)`, which bounds `ratio`.
    pub bound: f64,
    pub sampled: bool,
}

pub fn shadow_average_extension<Y: YoungFunction>(
    phi: &Y,
    tree: &TreeComplex,
    u: &[f64],
    seed: u64,
) -> Result<ShadowReport, TreeError> {
    let f = shadow_average(tree, u)?;
    let df_norm = cochain_norm(phi, tree, &coboundary(tree, &f)?)?;
    let besov = luxembourg_norm(phi, &besov_pairs(tree, u, 1 << 16, seed)?);
    let div = |a: f64, b: f64| if a == 0.0 { 0.0 } else { a / b };
    let b = tree.b as f64;
    Ok(ShadowReport {
        f,
        df_norm,
        besov,
        ratio: div(df_norm, besov),
        converse_ratio: div(besov, df_norm),
        bound: b * b * b / (b * b - 1.0),
        sampled: tree.leaf_count() > FULL_PAIR_LEAVES,
    })
}

/// Uniform values in `[-1, 1]` on every vertex.
pub fn random_vertex_function<R: Rng>(tree: &TreeComplex, rng: &mut R) -> VertexFunction {
    VertexFunction((0..tree.vertex_count()).map(|_| rng.gen_range(-1.0..=1.0)).collect())
}

/// Uniform values in `[-1, 1]`, constant on cylinders of each level.
pub fn random_level_function<R: Rng>(tree: &TreeComplex, rng: &mut R) -> LevelFunction {
    let levels: Vec<Vec<f64>> =
        (1..=tree.depth).map(|r| (0..tree.level_size(r)).map(|_| rng.gen_range(-1.0..=1.0)).collect()).collect();
    LevelFunction::from_cylinders(tree, &levels).expect("shape matches")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::young::PhiPk;

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(7)
    }

    #[test]
    fn layout() {
        let t = TreeComplex::new(3, 3).unwrap();
        assert_eq!(t.vertex_count(), 1 + 3 + 9 + 27);
        assert_eq!(t.offset(2), 4);
        assert_eq!(t.locate(5), (2, 1));
        assert_eq!(t.parent(5), Some(1));
        assert_eq!(t.children(1).collect::<Vec<_>>(), vec![4, 5, 6]);
        assert_eq!(t.children(t.vertex(3, 0)).count(), 0);
        assert_eq!(t.split_depth(0, 1), 2);
        assert_eq!(t.split_depth(0, 26), 0);
        for r in 0..=3 {
            assert!((t.level_size(r) as f64 * t.cylinder_mass(r) - 1.0).abs() < 1e-15);
        }
        assert!(TreeComplex::new(2, 15).is_err());
        assert!(TreeComplex::new(1, 3).is_err());
    }

    #[test]
    fn coboundary_examples() {
        let t = TreeComplex::new(2, 4).unwrap();
        let c = coboundary(&t, &VertexFunction(vec![3.5; t.vertex_count()])).unwrap();
        assert!(c.0.iter().all(|v| *v == 0.0));
        let c = coboundary(&t, &t.depth_function()).unwrap();
        assert!(c.0.iter().all(|v| *v == 1.0));
        let f = random_vertex_function(&t, &mut rng());
        let c = coboundary(&t, &f).unwrap();
        for x in 1..t.vertex_count() {
            assert_eq!(c.0[x - 1], f.0[x] - f.0[t.parent(x).unwrap()]);
        }
    }

    #[test]
    fn telescoping() {
        let t = TreeComplex::new(3, 4).unwrap();
        let f = random_vertex_function(&t, &mut rng());
        let c = coboundary(&t, &f).unwrap();
        for leaf in [0, 17, 80] {
            let mut x = t.vertex(4, leaf);
            let mut sum = 0.0;
            while let Some(p) = t.parent(x) {
                sum += c.0[x - 1];
                x = p;
            }
            assert!((sum - (f.0[t.vertex(4, leaf)] - f.0[0])).abs() < 1e-12);
        }
    }

    #[test]
    fn root_indicator_ratio() {
        let t = TreeComplex::new(2, 5).unwrap();
        let phi = PhiPk::new(2.0, 0.0).unwrap();
        let mut f = vec![0.0; t.vertex_count()];
        f[0] = 1.0;
        let r = coboundary_bound_check(&phi, &t, &[VertexFunction(f)]).unwrap();
        let n = 3.0f64;
        assert!((r.worst_ratio - 2.0f64.sqrt() / n.powf(1.5)).abs() < 1e-12);
        assert_eq!(r.violations, 0);
    }

    #[test]
    fn level_concentrated_shift_is_sharp() {
        let t = TreeComplex::new(2, 8).unwrap();
        let phi = PhiPk::new(2.0, 0.0).unwrap();
        let mut g = LevelFunction::zeros(&t);
        for leaf in 0..t.leaf_count() {
            g.set(leaf, 5, 0.7);
        }
        let ineq = shift_contraction_check(&phi, &t, &g).unwrap();
        assert!((ineq.lhs / level_norm(&phi, &t, &g).unwrap() - 0.5f64.sqrt()).abs() < 1e-9);
        assert!((ineq.lhs - ineq.rhs).abs() < 1e-9);
        let zero = shift_contraction_check(&phi, &t, &LevelFunction::zeros(&t)).unwrap();
        assert_eq!((zero.lhs, zero.rhs), (0.0, 0.0));
    }

    #[test]
    fn random_contraction_phi21() {
        let t = TreeComplex::new(2, 6).unwrap();
        let phi = PhiPk::new(2.0, 1.0).unwrap();
        let mut r = rng();
        for _ in 0..10 {
            assert!(shift_contraction_check(&phi, &t, &random_level_function(&t, &mut r)).unwrap().holds());
        }
    }

    #[test]
    fn single_spike_strichartz() {
        // df = 1 on one level-1 edge only: F(ξ,1) = DF(ξ,1) = 1 on that cylinder
        let t = TreeComplex::new(2, 4).unwrap();
        let mut f = vec![0.0; t.vertex_count()];
        for x in 1..t.vertex_count() {
            let (r, j) = t.locate(x);
            if j < t.level_size(r) / 2 {
                f[x] = 1.0;
            }
        }
        let phi = PhiPk::new(2.0, 0.0).unwrap();
        let ra = radial_analysis(&phi, &t, &VertexFunction(f.clone())).unwrap();
        assert_eq!(ra.big_f, ra.df.clone());
        // mass of level-1 half cylinder: (1/2)·b = 1
        let n = level_norm(&phi, &t, &ra.df).unwrap();
        assert!((n - 1.0).abs() < 1e-12);
        let s = strichartz_check(&phi, &t, &VertexFunction(f.clone())).unwrap();
        assert!((s.lhs - 1.0).abs() < 1e-12 && (s.rhs - 1.0 / (1.0 - 0.5f64.sqrt())).abs() < 1e-12);
        // f_R - f(root) = 1 on half the leaves; one edge carries df = 1
        let tr = trace_norm_check(&phi, &t, &VertexFunction(f)).unwrap();
        assert!((tr.lhs - 0.5f64.sqrt()).abs() < 1e-12);
        assert!((tr.rhs - 1.0 / (1.0 - 0.5f64.sqrt())).abs() < 1e-12);
    }

    #[test]
    fn constant_function_vanishes() {
        let t = TreeComplex::new(2, 5).unwrap();
        let phi = PhiPk::new(2.0, 1.0).unwrap();
        let f = VertexFunction(vec![2.0; t.vertex_count()]);
        let ra = radial_analysis(&phi, &t, &f).unwrap();
        assert!(ra.big_f.is_zero() && ra.f_inf.iter().all(|v| *v == 2.0));
        let s = strichartz_check(&phi, &t, &f).unwrap();
        assert_eq!((s.lhs, s.rhs), (0.0, 0.0));
        let tr = trace_norm_check(&phi, &t, &f).unwrap();
        assert_eq!((tr.lhs, tr.rhs), (0.0, 0.0));
    }

    #[test]
    fn ancestor_chain_indicator() {
        let t = TreeComplex::new(2, 4).unwrap();
        let phi = PhiPk::new(2.0, 0.0).unwrap();
        let mut f = vec![0.0; t.vertex_count()];
        for r in 0..=4 {
            f[t.vertex(r, t.ancestor(0, r))] = 1.0;
        }
        let ra = radial_analysis(&phi, &t, &VertexFunction(f)).unwrap();
        for leaf in 0..t.leaf_count() {
            let k = t.split_depth(0, leaf);
            for r in 1..=4 {
                // leaf 0: F = 0; others: f(leaf)=0, ancestor at r-1 on the chain iff r-1 ≤ k
                let expected = if leaf == 0 { 0.0 } else if r - 1 <= k { -1.0 } else { 0.0 };
                assert_eq!(ra.big_f.get(leaf, r), expected);
            }
        }
    }

    #[test]
    fn shallow_support_has_no_deep_f() {
        let t = TreeComplex::new(2, 8).unwrap();
        let mut r = rng();
        let mut f = random_vertex_function(&t, &mut r);
        for x in t.offset(5)..t.vertex_count() {
            f.0[x] = f.0[t.parent(x).unwrap()];
        }
        let phi = PhiPk::new(2.0, 0.0).unwrap();
        let ra = radial_analysis(&phi, &t, &f).unwrap();
        for rr in 6..=8 {
            assert!(ra.big_f.level(rr).iter().all(|v| *v == 0.0));
        }
    }

    #[test]
    fn half_split_shadow_oracle() {
        let t = TreeComplex::new(2, 3).unwrap();
        let phi = PhiPk::new(2.0, 0.0).unwrap();
        let u = [1.0, 1.0, 1.0, 1.0, 0.0, 0.0, 0.0, 0.0];
        let s = shadow_average_extension(&phi, &t, &u, 0).unwrap();
        // df = ±1/2 on the two top edges; 32 ordered split-at-root pairs of mass 1/64
        assert!((s.df_norm - 0.5f64.sqrt()).abs() < 1e-12);
        assert!((s.besov - 0.5f64.sqrt()).abs() < 1e-12);
        let zero = shadow_average_extension(&phi, &t, &[0.3; 8], 0).unwrap();
        assert_eq!((zero.df_norm, zero.besov, zero.ratio), (0.0, 0.0, 0.0));
    }

    #[test]
    fn shadow_then_radial_recovers_leaves() {
        let t = TreeComplex::new(3, 4).unwrap();
        let mut r = rng();
        let u: Vec<f64> = (0..t.leaf_count()).map(|_| r.gen_range(-1.0..1.0)).collect();
        let f = shadow_average(&t, &u).unwrap();
        let phi = PhiPk::new(2.0, 0.0).unwrap();
        assert_eq!(radial_analysis(&phi, &t, &f).unwrap().f_inf, u);
    }

    #[test]
    fn sampled_besov_is_unbiased_for_two_levels() {
        // u = ±1 split at the root: every pair at split depth 0 differs by 2
        let t = TreeComplex::new(2, 11).unwrap();
        let n = t.leaf_count();
        let u: Vec<f64> = (0..n).map(|l| if l < n / 2 { 1.0 } else { -1.0 }).collect();
        let s = besov_pairs(&t, &u, 4096, 3).unwrap();
        let mass: f64 = s.atoms().iter().map(|a| a.1).sum();
        // exact: n · n/2 ordered pairs · b^{-2R}
        assert!((mass - 0.5).abs() < 1e-12);
    }
}
