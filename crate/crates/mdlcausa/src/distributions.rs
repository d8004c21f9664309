//! Exact representations of discrete distributions, their factorizations,
//! and seeded synthetic-data generation.
//!
//! Probabilities are stored as `f64` and validated against an absolute
//! tolerance of [`PROB_TOLERANCE`]. All types are immutable after
//! construction and safe to share across threads; the generators are pure
//! functions of their inputs and a seed.

use rand::Rng;
use rand_distr::{Distribution as _, Gamma};

use crate::error::{Error, Result};
use crate::rng;

/// Absolute tolerance for "sums to one" checks.
pub const PROB_TOLERANCE: f64 = 1e-12;

/// One of the two axes of a bivariate table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
}

/// A probability vector over a finite alphabet `0..k`.
#[derive(Debug, Clone, PartialEq)]
pub struct CategoricalDistribution {
    probs: Vec<f64>,
}

impl CategoricalDistribution {
    /// Validates and wraps a probability vector: entries must be finite and
    /// non-negative, and sum to one within [`PROB_TOLERANCE`].
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::invalid("probability vector must be non-empty"));
        }
        if probs.iter().any(|p| !p.is_finite() || *p < 0.0) {
            return Err(Error::invalid("probabilities must be finite and >= 0"));
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > PROB_TOLERANCE {
            return Err(Error::invalid(format!(
                "probabilities sum to {total}, expected 1 within {PROB_TOLERANCE}"
            )));
        }
        Ok(CategoricalDistribution { probs })
    }

    /// The uniform distribution over `k` symbols.
    pub fn uniform(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::invalid("alphabet size must be >= 1"));
        }
        Ok(CategoricalDistribution {
            probs: vec![1.0 / k as f64; k],
        })
    }

    /// The distribution putting all mass on `symbol`.
    pub fn point_mass(k: usize, symbol: usize) -> Result<Self> {
        if k == 0 || symbol >= k {
            return Err(Error::invalid("point mass symbol out of range"));
        }
        let mut probs = vec![0.0; k];
        probs[symbol] = 1.0;
        Ok(CategoricalDistribution { probs })
    }

    pub fn alphabet_size(&self) -> usize {
        self.probs.len()
    }

    pub fn prob(&self, symbol: usize) -> f64 {
        self.probs[symbol]
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// Draws one symbol by inverse CDF.
    pub(crate) fn sample_symbol<R: Rng>(&self, rng: &mut R) -> usize {
        let u: f64 = rng.gen();
        let mut acc = 0.0;
        let mut last_positive = 0;
        for (i, p) in self.probs.iter().enumerate() {
            if *p > 0.0 {
                acc += p;
                last_positive = i;
                if u < acc {
                    return i;
                }
            }
        }
        // u landed in the rounding slack past the final cumulative value.
        last_positive
    }
}

impl std::ops::Index<usize> for CategoricalDistribution {
    type Output = f64;

    fn index(&self, symbol: usize) -> &f64 {
        &self.probs[symbol]
    }
}

/// One categorical distribution per conditioning value: P(target | cond).
///
/// Rows produced by [`JointTable::condition`] from a conditioning value of
/// zero marginal probability are flagged unreachable and filled uniform;
/// such rows never affect sampled data or expected codelengths.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionalTable {
    rows: Vec<CategoricalDistribution>,
    unreachable: Vec<bool>,
}

impl ConditionalTable {
    /// Wraps one row per conditioning value. All rows must share the same
    /// target alphabet.
    pub fn new(rows: Vec<CategoricalDistribution>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::invalid("conditional table must have >= 1 row"));
        }
        let k = rows[0].alphabet_size();
        if rows.iter().any(|r| r.alphabet_size() != k) {
            return Err(Error::invalid(
                "conditional table rows differ in alphabet size",
            ));
        }
        let unreachable = vec![false; rows.len()];
        Ok(ConditionalTable { rows, unreachable })
    }

    fn with_unreachable(rows: Vec<CategoricalDistribution>, unreachable: Vec<bool>) -> Self {
        debug_assert_eq!(rows.len(), unreachable.len());
        ConditionalTable { rows, unreachable }
    }

    /// Number of conditioning values.
    pub fn cond_alphabet_size(&self) -> usize {
        self.rows.len()
    }

    /// Alphabet size of the target variable.
    pub fn target_alphabet_size(&self) -> usize {
        self.rows[0].alphabet_size()
    }

    pub fn row(&self, cond: usize) -> &CategoricalDistribution {
        &self.rows[cond]
    }

    pub fn rows(&self) -> &[CategoricalDistribution] {
        &self.rows
    }

    /// True if `cond` had zero marginal mass when this table was derived
    /// from a joint.
    pub fn is_unreachable(&self, cond: usize) -> bool {
        self.unreachable[cond]
    }
}

/// A full bivariate probability table P(X, Y), row-major over X.
#[derive(Debug, Clone, PartialEq)]
pub struct JointTable {
    probs: Vec<f64>,
    k_x: usize,
    k_y: usize,
}

impl JointTable {
    /// Validates a rectangular table: entries finite and non-negative,
    /// total mass one within [`PROB_TOLERANCE`].
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(Error::invalid("joint table must be non-empty"));
        }
        let k_y = rows[0].len();
        if rows.iter().any(|r| r.len() != k_y) {
            return Err(Error::invalid("joint table rows differ in length"));
        }
        let k_x = rows.len();
        let probs: Vec<f64> = rows.into_iter().flatten().collect();
        if probs.iter().any(|p| !p.is_finite() || *p < 0.0) {
            return Err(Error::invalid("joint entries must be finite and >= 0"));
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > PROB_TOLERANCE {
            return Err(Error::invalid(format!(
                "joint mass sums to {total}, expected 1 within {PROB_TOLERANCE}"
            )));
        }
        Ok(JointTable { probs, k_x, k_y })
    }

    /// Assembles P(X, Y) = P(X) · P(Y | X).
    pub fn from_factorization(
        px: &CategoricalDistribution,
        pyx: &ConditionalTable,
    ) -> Result<Self> {
        if pyx.cond_alphabet_size() != px.alphabet_size() {
            return Err(Error::invalid(format!(
                "conditional table has {} rows but the marginal has {} symbols",
                pyx.cond_alphabet_size(),
                px.alphabet_size()
            )));
        }
        let k_x = px.alphabet_size();
        let k_y = pyx.target_alphabet_size();
        let mut probs = Vec::with_capacity(k_x * k_y);
        for x in 0..k_x {
            let row = pyx.row(x);
            for y in 0..k_y {
                probs.push(px.prob(x) * row.prob(y));
            }
        }
        Ok(JointTable { probs, k_x, k_y })
    }

    pub fn k_x(&self) -> usize {
        self.k_x
    }

    pub fn k_y(&self) -> usize {
        self.k_y
    }

    pub fn prob(&self, x: usize, y: usize) -> f64 {
        self.probs[x * self.k_y + y]
    }

    /// All cells in row-major order.
    pub fn cells(&self) -> &[f64] {
        &self.probs
    }

    fn row(&self, x: usize) -> &[f64] {
        &self.probs[x * self.k_y..(x + 1) * self.k_y]
    }

    /// The same table with the axes swapped.
    pub fn transposed(&self) -> JointTable {
        let mut probs = Vec::with_capacity(self.probs.len());
        for y in 0..self.k_y {
            for x in 0..self.k_x {
                probs.push(self.prob(x, y));
            }
        }
        JointTable {
            probs,
            k_x: self.k_y,
            k_y: self.k_x,
        }
    }

    /// Marginal distribution along `axis` (row sums for X, column sums for Y).
    pub fn marginal(&self, axis: Axis) -> CategoricalDistribution {
        match axis {
            Axis::X => {
                let probs: Vec<f64> = (0..self.k_x).map(|x| self.row(x).iter().sum()).collect();
                CategoricalDistribution::new(probs)
                    .expect("marginal of a valid joint is a distribution")
            }
            Axis::Y => self.transposed().marginal(Axis::X),
        }
    }

    /// Conditional table given the variable on `given`: row `x` holds
    /// P(other | given = x). Conditioning values with zero marginal mass are
    /// flagged unreachable and filled uniform.
    pub fn condition(&self, given: Axis) -> ConditionalTable {
        match given {
            Axis::X => {
                let mut rows = Vec::with_capacity(self.k_x);
                let mut unreachable = vec![false; self.k_x];
                for (x, flag) in unreachable.iter_mut().enumerate() {
                    let mass: f64 = self.row(x).iter().sum();
                    if mass <= 0.0 {
                        *flag = true;
                        rows.push(
                            CategoricalDistribution::uniform(self.k_y)
                                .expect("k_y >= 1 by construction"),
                        );
                    } else {
                        let probs: Vec<f64> = self.row(x).iter().map(|p| p / mass).collect();
                        rows.push(
                            CategoricalDistribution::new(probs)
                                .expect("normalized row is a distribution"),
                        );
                    }
                }
                ConditionalTable::with_unreachable(rows, unreachable)
            }
            Axis::Y => self.transposed().condition(Axis::X),
        }
    }

    /// Draws `n` i.i.d. observations by inverse CDF over the flattened
    /// table. Deterministic for a fixed seed.
    pub fn sample(&self, n: usize, seed: u64) -> Result<PairedSample> {
        self.sample_with(n, &mut rng::master(seed))
    }

    /// Like [`JointTable::sample`] but drawing from a caller-owned generator,
    /// e.g. a [`rng::substream`].
    pub fn sample_with<R: Rng>(&self, n: usize, rng: &mut R) -> Result<PairedSample> {
        if n == 0 {
            return Err(Error::invalid("sample size must be >= 1"));
        }
        let mut xs = Vec::with_capacity(n);
        let mut ys = Vec::with_capacity(n);
        for _ in 0..n {
            let cell = self.sample_cell(rng);
            xs.push(cell / self.k_y);
            ys.push(cell % self.k_y);
        }
        PairedSample::new(vec![xs, ys], vec![self.k_x, self.k_y])
    }

    fn sample_cell<R: Rng>(&self, rng: &mut R) -> usize {
        let u: f64 = rng.gen();
        let mut acc = 0.0;
        let mut last_positive = 0;
        for (i, p) in self.probs.iter().enumerate() {
            if *p > 0.0 {
                acc += p;
                last_positive = i;
                if u < acc {
                    return i;
                }
            }
        }
        last_positive
    }
}

/// `n` joint observations of integer-coded columns.
#[derive(Debug, Clone, PartialEq)]
pub struct PairedSample {
    columns: Vec<Vec<usize>>,
    alphabet_sizes: Vec<usize>,
}

impl PairedSample {
    /// Validates equal-length columns whose values lie below the declared
    /// alphabet sizes.
    pub fn new(columns: Vec<Vec<usize>>, alphabet_sizes: Vec<usize>) -> Result<Self> {
        if columns.is_empty() {
            return Err(Error::invalid("sample must have >= 1 column"));
        }
        if columns.len() != alphabet_sizes.len() {
            return Err(Error::invalid("one alphabet size required per column"));
        }
        let n = columns[0].len();
        if n == 0 {
            return Err(Error::invalid("sample must contain >= 1 observation"));
        }
        if columns.iter().any(|c| c.len() != n) {
            return Err(Error::invalid("columns differ in length"));
        }
        for (i, (col, &k)) in columns.iter().zip(&alphabet_sizes).enumerate() {
            if k == 0 {
                return Err(Error::invalid(format!("column {i} has alphabet size 0")));
            }
            if col.iter().any(|&v| v >= k) {
                return Err(Error::invalid(format!(
                    "column {i} contains a value outside 0..{k}"
                )));
            }
        }
        Ok(PairedSample {
            columns,
            alphabet_sizes,
        })
    }

    /// Number of observations.
    pub fn len(&self) -> usize {
        self.columns[0].len()
    }

    pub fn is_empty(&self) -> bool {
        false // n >= 1 by construction
    }

    pub fn num_columns(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, index: usize) -> &[usize] {
        &self.columns[index]
    }

    pub fn alphabet_size(&self, index: usize) -> usize {
        self.alphabet_sizes[index]
    }

    pub(crate) fn check_column(&self, index: usize) -> Result<()> {
        if index >= self.num_columns() {
            return Err(Error::invalid(format!(
                "column index {index} out of range (sample has {} columns)",
                self.num_columns()
            )));
        }
        Ok(())
    }
}

/// Draws one distribution from a symmetric Dirichlet by normalizing
/// independent Gamma(alpha, 1) variates.
pub fn dirichlet_categorical<R: Rng>(
    k: usize,
    alpha: f64,
    rng: &mut R,
) -> Result<CategoricalDistribution> {
    if k == 0 {
        return Err(Error::invalid("alphabet size must be >= 1"));
    }
    if alpha <= 0.0 || !alpha.is_finite() {
        return Err(Error::invalid("Dirichlet concentration must be > 0"));
    }
    let gamma = Gamma::new(alpha, 1.0).map_err(|e| Error::invalid(format!("gamma: {e}")))?;
    // For very small alpha every draw can underflow to zero; retry rather
    // than return a non-distribution.
    for _ in 0..64 {
        let draws: Vec<f64> = (0..k).map(|_| gamma.sample(rng)).collect();
        let total: f64 = draws.iter().sum();
        if total > 0.0 && total.is_finite() {
            let probs = draws.iter().map(|g| g / total).collect();
            return CategoricalDistribution::new(probs);
        }
    }
    Err(Error::invalid(
        "Dirichlet draw underflowed repeatedly; concentration too small",
    ))
}

/// Draws an independent cause distribution and mechanism: P(X) from
/// Dirichlet(alpha) and every row of P(Y|X) from an independent
/// Dirichlet(alpha) substream.
pub fn random_mechanism_pair(
    k_x: usize,
    k_y: usize,
    alpha: f64,
    seed: u64,
) -> Result<(CategoricalDistribution, ConditionalTable)> {
    if k_x < 2 || k_y < 2 {
        return Err(Error::invalid("mechanism pair needs k_x >= 2 and k_y >= 2"));
    }
    let px = dirichlet_categorical(k_x, alpha, &mut rng::substream(seed, 0))?;
    let rows = (0..k_x)
        .map(|x| dirichlet_categorical(k_y, alpha, &mut rng::substream(seed, 1 + x as u64)))
        .collect::<Result<Vec<_>>>()?;
    Ok((px, ConditionalTable::new(rows)?))
}

/// Joint table of the discrete additive noise model Y = (f(X) + N) mod k_y
/// with noise N independent of X.
pub fn discrete_anm(
    k_x: usize,
    k_y: usize,
    f: &[usize],
    noise: &CategoricalDistribution,
    px: &CategoricalDistribution,
) -> Result<JointTable> {
    if k_x == 0 || k_y == 0 {
        return Err(Error::invalid("alphabet sizes must be >= 1"));
    }
    if f.len() != k_x {
        return Err(Error::invalid(format!(
            "function table has {} entries, expected {k_x}",
            f.len()
        )));
    }
    if f.iter().any(|&v| v >= k_y) {
        return Err(Error::invalid("function table maps outside 0..k_y"));
    }
    if noise.alphabet_size() != k_y {
        return Err(Error::invalid("noise alphabet must match k_y"));
    }
    if px.alphabet_size() != k_x {
        return Err(Error::invalid("cause alphabet must match k_x"));
    }
    let rows = (0..k_x)
        .map(|x| {
            let probs = (0..k_y)
                .map(|y| noise.prob((y + k_y - f[x]) % k_y))
                .collect();
            CategoricalDistribution::new(probs)
        })
        .collect::<Result<Vec<_>>>()?;
    JointTable::from_factorization(px, &ConditionalTable::new(rows)?)
}

/// Ancestral sampling down a chain X_0 -> X_1 -> ... -> X_m: the root is
/// drawn from `root` and each X_{i+1} from `mechanisms[i]` given X_i.
pub fn sample_chain(
    root: &CategoricalDistribution,
    mechanisms: &[ConditionalTable],
    n: usize,
    seed: u64,
) -> Result<PairedSample> {
    if n == 0 {
        return Err(Error::invalid("sample size must be >= 1"));
    }
    let mut k = root.alphabet_size();
    for (i, m) in mechanisms.iter().enumerate() {
        if m.cond_alphabet_size() != k {
            return Err(Error::invalid(format!(
                "mechanism {i} conditions on {} symbols, expected {k}",
                m.cond_alphabet_size()
            )));
        }
        k = m.target_alphabet_size();
    }

    let mut rng = rng::master(seed);
    let m = mechanisms.len() + 1;
    let mut columns = vec![Vec::with_capacity(n); m];
    for _ in 0..n {
        let mut value = root.sample_symbol(&mut rng);
        columns[0].push(value);
        for (i, mech) in mechanisms.iter().enumerate() {
            value = mech.row(value).sample_symbol(&mut rng);
            columns[i + 1].push(value);
        }
    }
    let mut alphabet_sizes = vec![root.alphabet_size()];
    alphabet_sizes.extend(mechanisms.iter().map(|m| m.target_alphabet_size()));
    PairedSample::new(columns, alphabet_sizes)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn new_rejects_bad_vectors() {
        assert!(CategoricalDistribution::new(vec![]).is_err());
        assert!(CategoricalDistribution::new(vec![0.5, 0.6]).is_err());
        assert!(CategoricalDistribution::new(vec![-0.1, 1.1]).is_err());
        assert!(CategoricalDistribution::new(vec![f64::NAN]).is_err());
        assert!(CategoricalDistribution::new(vec![0.25, 0.75]).is_ok());
    }

    #[test]
    fn factorization_degenerate_singleton() {
        let px = CategoricalDistribution::new(vec![1.0]).unwrap();
        let pyx =
            ConditionalTable::new(vec![CategoricalDistribution::new(vec![1.0]).unwrap()]).unwrap();
        let j = JointTable::from_factorization(&px, &pyx).unwrap();
        assert_eq!(j.cells(), &[1.0]);
    }

    #[test]
    fn factorization_independence_gives_quarter_cells() {
        let px = CategoricalDistribution::new(vec![0.5, 0.5]).unwrap();
        let row = CategoricalDistribution::new(vec![0.5, 0.5]).unwrap();
        let pyx = ConditionalTable::new(vec![row.clone(), row]).unwrap();
        let j = JointTable::from_factorization(&px, &pyx).unwrap();
        assert!(j.cells().iter().all(|&p| p == 0.25));
    }

    #[test]
    fn factorization_deterministic_mechanism() {
        let px = CategoricalDistribution::new(vec![0.25, 0.75]).unwrap();
        let pyx = ConditionalTable::new(vec![
            CategoricalDistribution::new(vec![1.0, 0.0]).unwrap(),
            CategoricalDistribution::new(vec![0.0, 1.0]).unwrap(),
        ])
        .unwrap();
        let j = JointTable::from_factorization(&px, &pyx).unwrap();
        assert_eq!(j.prob(0, 0), 0.25);
        assert_eq!(j.prob(0, 1), 0.0);
        assert_eq!(j.prob(1, 0), 0.0);
        assert_eq!(j.prob(1, 1), 0.75);
    }

    #[test]
    fn factorization_dimension_mismatch_errors() {
        let px = CategoricalDistribution::new(vec![0.5, 0.5]).unwrap();
        let pyx =
            ConditionalTable::new(vec![CategoricalDistribution::new(vec![1.0]).unwrap()]).unwrap();
        assert!(JointTable::from_factorization(&px, &pyx).is_err());
    }

    #[test]
    fn marginals_match_hand_sums() {
        let j = JointTable::new(vec![vec![0.25, 0.25], vec![0.25, 0.25]]).unwrap();
        assert_eq!(j.marginal(Axis::X).probs(), &[0.5, 0.5]);

        let j = JointTable::new(vec![vec![0.25, 0.0], vec![0.0, 0.75]]).unwrap();
        assert_eq!(j.marginal(Axis::Y).probs(), &[0.25, 0.75]);

        let j = JointTable::new(vec![vec![0.1, 0.2], vec![0.3, 0.4]]).unwrap();
        let m = j.marginal(Axis::X);
        assert!(close(m.prob(0), 0.3, 1e-15) && close(m.prob(1), 0.7, 1e-15));
    }

    #[test]
    fn condition_independent_uniform() {
        let j = JointTable::new(vec![vec![0.25, 0.25], vec![0.25, 0.25]]).unwrap();
        let c = j.condition(Axis::X);
        assert_eq!(c.row(0).probs(), &[0.5, 0.5]);
        assert_eq!(c.row(1).probs(), &[0.5, 0.5]);
    }

    #[test]
    fn condition_deterministic_identity() {
        let j = JointTable::new(vec![vec![0.25, 0.0], vec![0.0, 0.75]]).unwrap();
        let c = j.condition(Axis::X);
        assert_eq!(c.row(0).probs(), &[1.0, 0.0]);
        assert_eq!(c.row(1).probs(), &[0.0, 1.0]);
    }

    #[test]
    fn condition_zero_marginal_row_is_uniform_and_flagged() {
        let j = JointTable::new(vec![vec![0.5, 0.0], vec![0.5, 0.0]]).unwrap();
        let c = j.condition(Axis::Y);
        assert!(!c.is_unreachable(0));
        assert!(c.is_unreachable(1));
        assert_eq!(c.row(1).probs(), &[0.5, 0.5]);
    }

    #[test]
    fn condition_round_trips_factorization() {
        let px = CategoricalDistribution::new(vec![0.2, 0.3, 0.5]).unwrap();
        let pyx = ConditionalTable::new(vec![
            CategoricalDistribution::new(vec![0.7, 0.3]).unwrap(),
            CategoricalDistribution::new(vec![0.1, 0.9]).unwrap(),
            CategoricalDistribution::new(vec![0.5, 0.5]).unwrap(),
        ])
        .unwrap();
        let j = JointTable::from_factorization(&px, &pyx).unwrap();
        let back = j.condition(Axis::X);
        for x in 0..3 {
            for y in 0..2 {
                assert!(close(back.row(x).prob(y), pyx.row(x).prob(y), 1e-12));
            }
        }
        // And the other way: marginal + conditional rebuild the joint.
        let rebuilt = JointTable::from_factorization(&j.marginal(Axis::X), &back).unwrap();
        for (a, b) in rebuilt.cells().iter().zip(j.cells()) {
            assert!(close(*a, *b, 1e-12));
        }
    }

    #[test]
    fn sample_point_mass_is_all_zero() {
        let j = JointTable::new(vec![vec![1.0]]).unwrap();
        let s = j.sample(5, 42).unwrap();
        assert!(s.column(0).iter().all(|&v| v == 0));
        assert!(s.column(1).iter().all(|&v| v == 0));
    }

    #[test]
    fn sample_perfect_coupling_gives_identical_columns() {
        let j = JointTable::new(vec![vec![0.5, 0.0], vec![0.0, 0.5]]).unwrap();
        for seed in 0..5 {
            let s = j.sample(200, seed).unwrap();
            assert_eq!(s.column(0), s.column(1));
        }
    }

    #[test]
    fn sample_rejects_n_zero_and_is_deterministic() {
        let j = JointTable::new(vec![vec![0.25, 0.25], vec![0.25, 0.25]]).unwrap();
        assert!(j.sample(0, 1).is_err());
        assert_eq!(j.sample(100, 9).unwrap(), j.sample(100, 9).unwrap());
    }

    #[test]
    fn sample_frequencies_follow_the_law_of_large_numbers() {
        let j = JointTable::new(vec![vec![0.25, 0.25], vec![0.25, 0.25]]).unwrap();
        let s = j.sample(100_000, 7).unwrap();
        let mut counts = [[0usize; 2]; 2];
        for (&x, &y) in s.column(0).iter().zip(s.column(1)) {
            counts[x][y] += 1;
        }
        for row in counts {
            for c in row {
                assert!(close(c as f64 / 100_000.0, 0.25, 0.01));
            }
        }
    }

    #[test]
    fn mechanism_pair_is_seed_deterministic() {
        let a = random_mechanism_pair(3, 4, 1.0, 11).unwrap();
        let b = random_mechanism_pair(3, 4, 1.0, 11).unwrap();
        assert_eq!(a, b);
        let c = random_mechanism_pair(3, 4, 1.0, 12).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn mechanism_pair_rejects_bad_parameters() {
        assert!(random_mechanism_pair(1, 2, 1.0, 0).is_err());
        assert!(random_mechanism_pair(2, 2, 0.0, 0).is_err());
        assert!(random_mechanism_pair(2, 2, -1.0, 0).is_err());
    }

    #[test]
    fn dirichlet_is_symmetric_on_average() {
        // Over many seeds the first coordinate of a Dirichlet(1) draw on two
        // symbols averages 1/2.
        let mut total = 0.0;
        for seed in 0..1000u64 {
            let (px, _) = random_mechanism_pair(2, 2, 1.0, seed).unwrap();
            total += px.prob(0);
        }
        assert!(close(total / 1000.0, 0.5, 0.05));
    }

    #[test]
    fn anm_point_mass_noise_is_deterministic() {
        let noise = CategoricalDistribution::point_mass(3, 0).unwrap();
        let px = CategoricalDistribution::uniform(3).unwrap();
        let j = discrete_anm(3, 3, &[1, 2, 0], &noise, &px).unwrap();
        let c = j.condition(Axis::X);
        assert_eq!(c.row(0).prob(1), 1.0);
        assert_eq!(c.row(1).prob(2), 1.0);
        assert_eq!(c.row(2).prob(0), 1.0);
    }

    #[test]
    fn anm_constant_function_uniform_noise_is_independent() {
        let noise = CategoricalDistribution::uniform(2).unwrap();
        let px = CategoricalDistribution::new(vec![0.3, 0.7]).unwrap();
        let j = discrete_anm(2, 2, &[0, 0], &noise, &px).unwrap();
        for x in 0..2 {
            for y in 0..2 {
                assert!(close(
                    j.prob(x, y),
                    j.marginal(Axis::X).prob(x) * j.marginal(Axis::Y).prob(y),
                    1e-12
                ));
            }
        }
    }

    #[test]
    fn anm_identity_function_keeps_noise_on_diagonal() {
        let noise = CategoricalDistribution::new(vec![0.8, 0.1, 0.05, 0.05]).unwrap();
        let px = CategoricalDistribution::uniform(4).unwrap();
        let j = discrete_anm(4, 4, &[0, 1, 2, 3], &noise, &px).unwrap();
        let c = j.condition(Axis::X);
        for x in 0..4 {
            assert!(close(c.row(x).prob(x), 0.8, 1e-12));
        }
    }

    #[test]
    fn anm_rejects_malformed_function() {
        let noise = CategoricalDistribution::uniform(2).unwrap();
        let px = CategoricalDistribution::uniform(2).unwrap();
        assert!(discrete_anm(2, 2, &[0], &noise, &px).is_err());
        assert!(discrete_anm(2, 2, &[0, 2], &noise, &px).is_err());
    }

    #[test]
    fn paired_sample_validates_shape() {
        assert!(PairedSample::new(vec![], vec![]).is_err());
        assert!(PairedSample::new(vec![vec![]], vec![2]).is_err());
        assert!(PairedSample::new(vec![vec![0], vec![0, 1]], vec![2, 2]).is_err());
        assert!(PairedSample::new(vec![vec![2]], vec![2]).is_err());
        assert!(PairedSample::new(vec![vec![0, 1], vec![1, 0]], vec![2, 2]).is_ok());
    }

    #[test]
    fn chain_sampling_is_deterministic_and_in_range() {
        let root = CategoricalDistribution::uniform(3).unwrap();
        let rows: Vec<_> = (0..3)
            .map(|_| CategoricalDistribution::uniform(2).unwrap())
            .collect();
        let mech = ConditionalTable::new(rows).unwrap();
        let s = sample_chain(&root, std::slice::from_ref(&mech), 50, 3).unwrap();
        assert_eq!(s.num_columns(), 2);
        assert_eq!(s, sample_chain(&root, &[mech], 50, 3).unwrap());
        assert!(s.column(1).iter().all(|&v| v < 2));
    }
}
