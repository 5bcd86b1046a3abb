//! Composite channel matrices and their compressibility.
//!
//! The network has `N` transmitter/receiver pairs. Entry `(i, j)` of a
//! [`ChannelMatrix`] is the coefficient from transmitter `j` into receiver
//! `i`, so row `i` collects everything receiver `i` hears — that row is what
//! the sensing protocol compresses. Two generators are provided: a
//! group-structured model (per-group path loss times small-scale fading)
//! whose rows are compressible, and an exactly sparse model.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;

use crate::seed::{complex_gaussian, derive, rng_from};
use crate::{Error, Result};

/// Square matrix of complex channel coefficients.
///
/// Row `i` = receiver `i`; column `j` = transmitter `j`. Immutable after
/// construction.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelMatrix {
    entries: DMatrix<Complex64>,
}

impl ChannelMatrix {
    /// Wrap a square matrix of finite coefficients.
    pub fn from_matrix(entries: DMatrix<Complex64>) -> Result<Self> {
        if entries.nrows() != entries.ncols() || entries.nrows() == 0 {
            return Err(Error::DimensionMismatch(format!(
                "channel matrix must be square and non-empty, got {}x{}",
                entries.nrows(),
                entries.ncols()
            )));
        }
        if entries.iter().any(|h| !h.re.is_finite() || !h.im.is_finite()) {
            return Err(Error::InvalidConfig(
                "channel matrix contains non-finite entries".into(),
            ));
        }
        Ok(Self { entries })
    }

    /// Number of nodes `N`.
    pub fn n_nodes(&self) -> usize {
        self.entries.nrows()
    }

    /// Coefficient from transmitter `j` into receiver `i`.
    pub fn entry(&self, receiver: usize, transmitter: usize) -> Complex64 {
        self.entries[(receiver, transmitter)]
    }

    /// All channels into receiver `i` as a length-`N` vector (row `i`).
    pub fn receiver_channels(&self, receiver: usize) -> DVector<Complex64> {
        self.entries.row(receiver).transpose()
    }

    /// Borrow the underlying matrix.
    pub fn as_matrix(&self) -> &DMatrix<Complex64> {
        &self.entries
    }
}

/// Non-negative channel gains `x_{i,j} = |h_{i,j}|^2`.
#[derive(Debug, Clone, PartialEq)]
pub struct GainMatrix {
    entries: DMatrix<f64>,
}

impl GainMatrix {
    /// Wrap a square matrix of non-negative gains directly (for synthetic
    /// instances; [`gain_matrix`] derives gains from a channel).
    pub fn from_gains(entries: DMatrix<f64>) -> Result<Self> {
        if entries.nrows() != entries.ncols() || entries.nrows() == 0 {
            return Err(Error::DimensionMismatch(format!(
                "gain matrix must be square and non-empty, got {}x{}",
                entries.nrows(),
                entries.ncols()
            )));
        }
        if entries.iter().any(|&x| x.is_nan() || !(0.0..f64::INFINITY).contains(&x)) {
            return Err(Error::InvalidConfig(
                "gains must be finite and non-negative".into(),
            ));
        }
        Ok(Self { entries })
    }

    pub fn n_nodes(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entry(&self, receiver: usize, transmitter: usize) -> f64 {
        self.entries[(receiver, transmitter)]
    }

    /// Gains of all channels into receiver `i` (row `i`).
    pub fn receiver_gains(&self, receiver: usize) -> DVector<f64> {
        self.entries.row(receiver).transpose()
    }

    pub fn as_matrix(&self) -> &DMatrix<f64> {
        &self.entries
    }
}

/// Elementwise squared modulus of a channel matrix.
pub fn gain_matrix(h: &ChannelMatrix) -> GainMatrix {
    GainMatrix {
        entries: h.as_matrix().map(|c| c.norm_sqr()),
    }
}

/// Group-structured channel model.
///
/// Nodes are partitioned into `G` groups. The coefficient from a transmitter
/// in group `f` into a receiver in group `g` is `a[g][f] * b`, with `b` a
/// unit-variance complex Gaussian and `a` the path-loss matrix (unit
/// diagonal). With a single group every entry is i.i.d. CN(0, 1).
#[derive(Debug, Clone)]
pub struct GroupModelConfig {
    /// Sizes of the `G` groups; their sum is the number of nodes.
    pub group_sizes: Vec<usize>,
    /// `G x G` non-negative path-loss coefficients, `a[g][g] = 1`.
    pub pathloss: DMatrix<f64>,
    /// Seed for the small-scale fading draw.
    pub seed: u64,
}

impl GroupModelConfig {
    /// Single group of `n` nodes: all entries i.i.d. CN(0, 1).
    pub fn iid(n: usize, seed: u64) -> Self {
        Self {
            group_sizes: vec![n],
            pathloss: DMatrix::from_element(1, 1, 1.0),
            seed,
        }
    }

    /// Random symmetric cross-group path loss `10^(z/10)` with `z` uniform
    /// in `[0, 1]`, drawn once per unordered group pair; unit diagonal.
    pub fn random_pathloss_db(group_sizes: Vec<usize>, pathloss_seed: u64, fading_seed: u64) -> Self {
        let g = group_sizes.len();
        let mut rng = rng_from(derive(pathloss_seed, 0x70_61_74_68)); // "path"
        let mut pathloss = DMatrix::from_element(g, g, 1.0);
        for row in 0..g {
            for col in (row + 1)..g {
                let z: f64 = rng.random();
                let a = 10f64.powf(z / 10.0);
                pathloss[(row, col)] = a;
                pathloss[(col, row)] = a;
            }
        }
        Self {
            group_sizes,
            pathloss,
            seed: fading_seed,
        }
    }

    /// Total number of nodes.
    pub fn n_nodes(&self) -> usize {
        self.group_sizes.iter().sum()
    }

    fn validate(&self) -> Result<()> {
        let g = self.group_sizes.len();
        if g == 0 || self.group_sizes.contains(&0) {
            return Err(Error::InvalidConfig(
                "group sizes must be non-empty and positive".into(),
            ));
        }
        if self.pathloss.nrows() != g || self.pathloss.ncols() != g {
            return Err(Error::InvalidConfig(format!(
                "path-loss matrix must be {g}x{g}, got {}x{}",
                self.pathloss.nrows(),
                self.pathloss.ncols()
            )));
        }
        if self.pathloss.iter().any(|&a| a.is_nan() || !(0.0..f64::INFINITY).contains(&a)) {
            return Err(Error::InvalidConfig(
                "path-loss coefficients must be finite and non-negative".into(),
            ));
        }
        for g_idx in 0..g {
            if (self.pathloss[(g_idx, g_idx)] - 1.0).abs() > 1e-12 {
                return Err(Error::InvalidConfig(format!(
                    "path-loss diagonal must be 1, got {} at group {g_idx}",
                    self.pathloss[(g_idx, g_idx)]
                )));
            }
        }
        Ok(())
    }

    /// Group index of each node, in node order.
    fn node_groups(&self) -> Vec<usize> {
        let mut groups = Vec::with_capacity(self.n_nodes());
        for (g_idx, &size) in self.group_sizes.iter().enumerate() {
            groups.extend(std::iter::repeat_n(g_idx, size));
        }
        groups
    }
}

/// Draw a group-structured channel matrix. Deterministic per seed: fading
/// coefficients are drawn row by row (receiver-major).
pub fn gen_group_channels(cfg: &GroupModelConfig) -> Result<ChannelMatrix> {
    cfg.validate()?;
    let n = cfg.n_nodes();
    let groups = cfg.node_groups();
    let mut rng = rng_from(cfg.seed);
    let mut entries = DMatrix::zeros(n, n);
    for receiver in 0..n {
        for transmitter in 0..n {
            let a = cfg.pathloss[(groups[receiver], groups[transmitter])];
            entries[(receiver, transmitter)] = a * complex_gaussian(&mut rng, 1.0);
        }
    }
    ChannelMatrix::from_matrix(entries)
}

/// How the support of an exactly sparse row is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SupportRule {
    /// All `k` support indices uniform without replacement.
    UniformRandom,
    /// Index `i` is always in the support of row `i`, so a direct link
    /// exists; the remaining `k - 1` indices are uniform.
    DiagonalForced,
}

/// Exactly sparse channel model: each row has `sparsity` nonzero CN(0, 1)
/// entries.
#[derive(Debug, Clone)]
pub struct SparseModelConfig {
    pub n_nodes: usize,
    pub sparsity: usize,
    pub support_rule: SupportRule,
    pub seed: u64,
}

impl SparseModelConfig {
    pub fn new(n_nodes: usize, sparsity: usize, seed: u64) -> Self {
        Self {
            n_nodes,
            sparsity,
            support_rule: SupportRule::DiagonalForced,
            seed,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.n_nodes == 0 {
            return Err(Error::InvalidConfig("n_nodes must be positive".into()));
        }
        if self.sparsity == 0 || self.sparsity > self.n_nodes {
            return Err(Error::InvalidConfig(format!(
                "sparsity must satisfy 1 <= k <= N, got k={} with N={}",
                self.sparsity, self.n_nodes
            )));
        }
        Ok(())
    }
}

/// Draw an exactly sparse channel matrix; each row is `k`-sparse with CN(0,1)
/// values on its support. Deterministic per seed (rows drawn in order; per
/// row: support first, then values in ascending index order).
pub fn gen_sparse_channels(cfg: &SparseModelConfig) -> Result<ChannelMatrix> {
    cfg.validate()?;
    let n = cfg.n_nodes;
    let k = cfg.sparsity;
    let mut rng = rng_from(cfg.seed);
    let mut entries = DMatrix::zeros(n, n);
    let mut pool: Vec<usize> = Vec::with_capacity(n);
    for receiver in 0..n {
        pool.clear();
        let mut support = Vec::with_capacity(k);
        match cfg.support_rule {
            SupportRule::UniformRandom => pool.extend(0..n),
            SupportRule::DiagonalForced => {
                support.push(receiver);
                pool.extend((0..n).filter(|&j| j != receiver));
            }
        }
        // Partial Fisher-Yates for the remaining indices.
        while support.len() < k {
            let pick = rng.random_range(0..pool.len());
            support.push(pool.swap_remove(pick));
        }
        support.sort_unstable();
        for &j in &support {
            entries[(receiver, j)] = complex_gaussian(&mut rng, 1.0);
        }
    }
    ChannelMatrix::from_matrix(entries)
}

/// Norm order for the best-k-term approximation error.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lp {
    L1,
    L2,
}

/// Distance of `x` to the nearest `k`-sparse vector in the given norm: the
/// norm of `x` with its `k` largest-magnitude entries removed. Magnitude ties
/// keep the lowest index. `k` saturates at the length of `x`.
pub fn best_k_term_error(x: &DVector<Complex64>, k: usize, p: Lp) -> f64 {
    let n = x.len();
    if k >= n {
        return 0.0;
    }
    // Stable sort by descending magnitude keeps ascending-index order on ties.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| x[b].norm().partial_cmp(&x[a].norm()).unwrap());
    let tail = &order[k..];
    match p {
        Lp::L1 => tail.iter().map(|&i| x[i].norm()).sum(),
        Lp::L2 => tail.iter().map(|&i| x[i].norm_sqr()).sum::<f64>().sqrt(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::Lp::{L1, L2};
    use proptest::prelude::*;

    fn cvec(vals: &[(f64, f64)]) -> DVector<Complex64> {
        DVector::from_iterator(vals.len(), vals.iter().map(|&(re, im)| Complex64::new(re, im)))
    }

    #[test]
    fn iid_group_model_first_and_second_moment() {
        // G = 1, a = 1: all entries i.i.d. CN(0, 1).
        let h = gen_group_channels(&GroupModelConfig::iid(100, 3)).unwrap();
        let n_sq = 100.0 * 100.0;
        let mean: Complex64 = h.as_matrix().iter().sum::<Complex64>() / n_sq;
        let mean_sq: f64 = h.as_matrix().iter().map(|c| c.norm_sqr()).sum::<f64>() / n_sq;
        assert!(mean.norm() < 3.0 / n_sq.sqrt());
        assert!((mean_sq - 1.0).abs() < 3.0 / n_sq.sqrt());
    }

    #[test]
    fn zero_cross_pathloss_gives_block_diagonal() {
        let mut pathloss = DMatrix::from_element(3, 3, 0.0);
        pathloss.fill_diagonal(1.0);
        let cfg = GroupModelConfig {
            group_sizes: vec![2, 3, 1],
            pathloss,
            seed: 11,
        };
        let h = gen_group_channels(&cfg).unwrap();
        let groups = [0, 0, 1, 1, 1, 2];
        for i in 0..6 {
            for j in 0..6 {
                if groups[i] != groups[j] {
                    assert_eq!(h.entry(i, j), Complex64::new(0.0, 0.0));
                } else {
                    assert_ne!(h.entry(i, j), Complex64::new(0.0, 0.0));
                }
            }
        }
    }

    #[test]
    fn cross_group_second_moment_matches_pathloss() {
        // 5 groups of 5 with random dB path loss; the empirical second moment
        // of each cross-group block must match a^2 within Monte Carlo error.
        let sizes = vec![5usize; 5];
        let base = GroupModelConfig::random_pathloss_db(sizes.clone(), 99, 0);
        let redraws = 500; // 500 redraws x 25 entries per block = 12_500 samples
        let mut sum_sq = vec![vec![0.0f64; 5]; 5];
        for t in 0..redraws {
            let cfg = GroupModelConfig {
                group_sizes: sizes.clone(),
                pathloss: base.pathloss.clone(),
                seed: derive(1000, t),
            };
            let h = gen_group_channels(&cfg).unwrap();
            for i in 0..25 {
                for j in 0..25 {
                    sum_sq[i / 5][j / 5] += h.entry(i, j).norm_sqr();
                }
            }
        }
        for g in 0..5 {
            for f in 0..5 {
                let samples = (redraws * 25) as f64;
                let mean = sum_sq[g][f] / samples;
                let a_sq = base.pathloss[(g, f)].powi(2);
                // |h|^2 ~ a^2 Exp(1), so sd of the mean is a^2 / sqrt(samples).
                let tol = (3.0 * a_sq / samples.sqrt()).max(0.05 * a_sq);
                assert!(
                    (mean - a_sq).abs() < tol,
                    "block ({g},{f}): mean {mean} vs a^2 {a_sq}"
                );
            }
        }
    }

    #[test]
    fn group_model_rejects_bad_configs() {
        let cfg = GroupModelConfig {
            group_sizes: vec![2, 0],
            pathloss: DMatrix::identity(2, 2),
            seed: 0,
        };
        assert!(matches!(gen_group_channels(&cfg), Err(Error::InvalidConfig(_))));

        let mut bad_diag = DMatrix::identity(2, 2);
        bad_diag[(1, 1)] = 0.5;
        let cfg = GroupModelConfig {
            group_sizes: vec![1, 1],
            pathloss: bad_diag,
            seed: 0,
        };
        assert!(matches!(gen_group_channels(&cfg), Err(Error::InvalidConfig(_))));

        let mut negative = DMatrix::identity(2, 2);
        negative[(0, 1)] = -1.0;
        let cfg = GroupModelConfig {
            group_sizes: vec![1, 1],
            pathloss: negative,
            seed: 0,
        };
        assert!(matches!(gen_group_channels(&cfg), Err(Error::InvalidConfig(_))));
    }

    #[test]
    fn same_seed_is_bit_identical() {
        let cfg = GroupModelConfig::iid(16, 12345);
        assert_eq!(gen_group_channels(&cfg).unwrap(), gen_group_channels(&cfg).unwrap());
        let sparse = SparseModelConfig::new(16, 3, 777);
        assert_eq!(gen_sparse_channels(&sparse).unwrap(), gen_sparse_channels(&sparse).unwrap());
    }

    #[test]
    fn full_support_sparse_is_dense() {
        let cfg = SparseModelConfig {
            n_nodes: 12,
            sparsity: 12,
            support_rule: SupportRule::UniformRandom,
            seed: 5,
        };
        let h = gen_sparse_channels(&cfg).unwrap();
        assert!(h.as_matrix().iter().all(|c| c.norm() > 0.0));
    }

    #[test]
    fn one_sparse_diagonal_forced_is_diagonal() {
        let cfg = SparseModelConfig::new(9, 1, 2);
        let h = gen_sparse_channels(&cfg).unwrap();
        for i in 0..9 {
            for j in 0..9 {
                if i == j {
                    assert!(h.entry(i, j).norm() > 0.0);
                } else {
                    assert_eq!(h.entry(i, j), Complex64::new(0.0, 0.0));
                }
            }
        }
    }

    #[test]
    fn sparse_rows_have_exact_support_and_zero_tail_error() {
        let cfg = SparseModelConfig {
            n_nodes: 64,
            sparsity: 5,
            support_rule: SupportRule::UniformRandom,
            seed: 31,
        };
        let h = gen_sparse_channels(&cfg).unwrap();
        for i in 0..64 {
            let row = h.receiver_channels(i);
            let nnz = row.iter().filter(|c| c.norm() > 0.0).count();
            assert_eq!(nnz, 5);
            assert_eq!(best_k_term_error(&row, 5, L1), 0.0);
        }
    }

    #[test]
    fn sparse_rejects_oversized_k() {
        let cfg = SparseModelConfig::new(4, 5, 0);
        assert!(matches!(gen_sparse_channels(&cfg), Err(Error::InvalidConfig(_))));
    }

    #[test]
    fn best_k_term_small_cases() {
        // Keep the two largest magnitudes of (3, -1, 0, 2): drop -1 and 0.
        let x = cvec(&[(3.0, 0.0), (-1.0, 0.0), (0.0, 0.0), (2.0, 0.0)]);
        assert_eq!(best_k_term_error(&x, 2, L2), 1.0);
        assert_eq!(best_k_term_error(&x, 0, L1), 6.0);
        assert_eq!(best_k_term_error(&x, 4, L1), 0.0);
        assert_eq!(best_k_term_error(&x, 9, L1), 0.0);
    }

    #[test]
    fn best_k_term_tie_keeps_lowest_index() {
        // Equal magnitudes: index 0 is kept, index 1 is dropped.
        let x = cvec(&[(0.0, 2.0), (2.0, 0.0), (1.0, 0.0)]);
        let err = best_k_term_error(&x, 1, L1);
        assert!((err - 3.0).abs() < 1e-15);
    }

    /// Exhaustive oracle: minimum norm over all supports of size k.
    fn best_k_term_bruteforce(x: &DVector<Complex64>, k: usize, p: Lp) -> f64 {
        let n = x.len();
        let mut best = f64::INFINITY;
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize != k {
                continue;
            }
            let norm = match p {
                Lp::L1 => (0..n)
                    .filter(|&i| mask & (1 << i) == 0)
                    .map(|i| x[i].norm())
                    .sum(),
                Lp::L2 => (0..n)
                    .filter(|&i| mask & (1 << i) == 0)
                    .map(|i| x[i].norm_sqr())
                    .sum::<f64>()
                    .sqrt(),
            };
            best = best.min(norm);
        }
        best
    }

    #[test]
    fn best_k_term_matches_exhaustive_oracle() {
        let mut rng = rng_from(404);
        for trial in 0..50 {
            let n = 4 + (trial % 5); // up to 8
            let x = DVector::from_fn(n, |_, _| complex_gaussian(&mut rng, 1.0));
            for k in 0..=n {
                for p in [L1, L2] {
                    let fast = best_k_term_error(&x, k, p);
                    let slow = best_k_term_bruteforce(&x, k.min(n), p);
                    assert!((fast - slow).abs() < 1e-12, "n={n} k={k}");
                }
            }
        }
    }

    #[test]
    fn gain_matrix_is_squared_modulus() {
        let h = ChannelMatrix::from_matrix(DMatrix::identity(3, 3)).unwrap();
        let x = gain_matrix(&h);
        assert_eq!(x.as_matrix(), &DMatrix::identity(3, 3));

        let m = DMatrix::from_element(1, 1, Complex64::new(3.0, 4.0));
        let x = gain_matrix(&ChannelMatrix::from_matrix(m).unwrap());
        assert_eq!(x.entry(0, 0), 25.0);

        let h = gen_group_channels(&GroupModelConfig::iid(10, 8)).unwrap();
        let x = gain_matrix(&h);
        for i in 0..10 {
            for j in 0..10 {
                assert_eq!(x.entry(i, j), h.entry(i, j).norm_sqr());
            }
        }
    }

    #[test]
    fn rejects_non_finite_entries() {
        let mut m = DMatrix::from_element(2, 2, Complex64::new(1.0, 0.0));
        m[(0, 1)] = Complex64::new(f64::NAN, 0.0);
        assert!(ChannelMatrix::from_matrix(m).is_err());
    }

    proptest! {
        #[test]
        fn best_k_term_is_non_increasing_in_k(vals in proptest::collection::vec((-5.0f64..5.0, -5.0f64..5.0), 1..12)) {
            let x = cvec(&vals);
            for p in [L1, L2] {
                let mut prev = f64::INFINITY;
                for k in 0..=x.len() {
                    let err = best_k_term_error(&x, k, p);
                    prop_assert!(err <= prev + 1e-12);
                    prev = err;
                }
                // k = 0 is the full norm.
                let full = match p {
                    L1 => x.iter().map(|c| c.norm()).sum::<f64>(),
                    L2 => x.norm(),
                };
                prop_assert!((best_k_term_error(&x, 0, p) - full).abs() < 1e-12);
            }
        }
    }
}
