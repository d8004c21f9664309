//! Codelength functions: the bits to describe a model and the bits to
//! describe data given it.
//!
//! Three codecs are provided. [`Codec::CrudeTwoPart`] charges an explicit
//! parameter-precision cost of `(k-1)/2 * log2(n)` per multinomial block
//! plus the maximum-likelihood data cost. [`Codec::Nml`] replaces the
//! parameter cost with the multinomial regret `log2 COMP(k, n)`.
//! [`Codec::Oracle`] encodes data against a known true distribution with
//! ideal per-symbol codes of `-log2 P(x)` bits; a symbol of true
//! probability zero that occurs in the data costs `+inf`, which keeps
//! comparisons total instead of raising an error.
//!
//! Alphabet sizes are shared preamble known to the encoder and decoder of
//! both factorization directions and are never charged to a score.

use crate::distributions::{Axis, CategoricalDistribution, JointTable, PairedSample};
use crate::error::{Error, Result};

/// Largest sample size accepted by [`nml_complexity`].
pub const NML_MAX_N: u64 = 1_000_000;
/// Largest alphabet accepted by [`nml_complexity`].
pub const NML_MAX_K: usize = 4096;
/// Largest conditioning table (blocks times target alphabet) a grouped
/// conditional cost will materialize.
pub const MAX_CONDITIONING_CELLS: usize = 1 << 22;

/// Per-symbol counts of one column (or one conditioning block).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountVector {
    counts: Vec<u64>,
}

impl CountVector {
    pub fn new(counts: Vec<u64>) -> Result<Self> {
        if counts.is_empty() {
            return Err(Error::invalid("count vector must cover >= 1 symbol"));
        }
        Ok(CountVector { counts })
    }

    /// Tallies one sample column against its declared alphabet.
    pub fn from_column(s: &PairedSample, col: usize) -> Result<Self> {
        s.check_column(col)?;
        let mut counts = vec![0u64; s.alphabet_size(col)];
        for &v in s.column(col) {
            counts[v] += 1;
        }
        Ok(CountVector { counts })
    }

    pub fn n(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn alphabet_size(&self) -> usize {
        self.counts.len()
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }
}

/// Model class used to turn counts into codelengths.
#[derive(Debug, Clone, PartialEq)]
pub enum Codec {
    /// Two-part code: parameter precision plus maximum-likelihood data cost.
    CrudeTwoPart,
    /// Normalized maximum likelihood: data cost plus parametric regret.
    Nml,
    /// Ideal codes against the attached true joint. The joint is oriented:
    /// its X axis plays the cause/conditioning role, so the marginal cost
    /// reads `marginal(X)` and the conditional cost reads `condition(X)`.
    /// Use [`Codec::reversed`] to score the opposite factorization.
    Oracle(JointTable),
}

impl Codec {
    /// The codec for the opposite factorization: oracle axes swap roles,
    /// count-based codecs are unchanged.
    pub fn reversed(&self) -> Codec {
        match self {
            Codec::Oracle(j) => Codec::Oracle(j.transposed()),
            other => other.clone(),
        }
    }

    /// Oracle for a bare marginal distribution, for callers that only score
    /// count vectors. Implemented as a joint with a single-symbol Y axis.
    pub fn oracle_from_marginal(p: &CategoricalDistribution) -> Codec {
        let rows = p.probs().iter().map(|&q| vec![q]).collect();
        Codec::Oracle(JointTable::new(rows).expect("a marginal forms a valid joint"))
    }
}

/// Maximum-likelihood data cost: `-sum_i counts_i * log2(counts_i / n)`,
/// with zero-count symbols contributing nothing. Equals `n` times the
/// entropy of the empirical distribution.
pub fn data_cost_mle(c: &CountVector) -> Result<f64> {
    let n = c.n();
    if n == 0 {
        return Err(Error::invalid("data cost undefined for an empty sample"));
    }
    Ok(data_cost_mle_slice(c.counts(), n))
}

fn data_cost_mle_slice(counts: &[u64], n: u64) -> f64 {
    let n = n as f64;
    counts
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| c as f64 * (n / c as f64).log2())
        .sum()
}

/// Parameter-precision cost of the crude two-part code: `(k-1)/2 * log2(n)`
/// bits for the `k - 1` free parameters of a multinomial, zero when `k = 1`.
pub fn model_cost_crude(k: usize, n: u64) -> f64 {
    debug_assert!(k >= 1 && n >= 1);
    if k <= 1 {
        0.0
    } else {
        (k as f64 - 1.0) / 2.0 * (n as f64).log2()
    }
}

/// Multinomial parametric complexity COMP(k, n): the sum over all count
/// vectors of length `k` summing to `n` of their multinomial probability
/// under their own maximum-likelihood parameters. `log2` of it is the NML
/// regret in bits.
///
/// Computed with the two-term recurrence over the alphabet size
/// `COMP(k, n) = COMP(k-1, n) + n/(k-2) * COMP(k-2, n)` on top of the
/// closed binomial sum for `k = 2`.
pub fn nml_complexity(k: usize, n: u64) -> Result<f64> {
    if k == 0 {
        return Err(Error::invalid("alphabet size must be >= 1"));
    }
    if k > NML_MAX_K || n > NML_MAX_N {
        return Err(Error::resource(format!(
            "COMP({k}, {n}) outside supported range k <= {NML_MAX_K}, n <= {NML_MAX_N}"
        )));
    }
    if k == 1 || n == 0 {
        return Ok(1.0);
    }
    let comp2 = binary_complexity(n);
    if k == 2 {
        return Ok(comp2);
    }
    let mut two_back = 1.0; // COMP(1, n)
    let mut one_back = comp2; // COMP(2, n)
    for kk in 3..=k {
        let next = one_back + n as f64 / (kk as f64 - 2.0) * two_back;
        two_back = one_back;
        one_back = next;
    }
    Ok(one_back)
}

/// COMP(2, n) = sum_{r=0}^{n} C(n, r) (r/n)^r ((n-r)/n)^(n-r).
fn binary_complexity(n: u64) -> f64 {
    use statrs::function::gamma::ln_gamma;
    let nf = n as f64;
    let ln_n_fact = ln_gamma(nf + 1.0);
    let mut total = 0.0;
    for r in 0..=n {
        let rf = r as f64;
        let sf = (n - r) as f64;
        let mut ln_term = ln_n_fact - ln_gamma(rf + 1.0) - ln_gamma(sf + 1.0);
        if r > 0 {
            ln_term += rf * (rf / nf).ln();
        }
        if r < n {
            ln_term += sf * (sf / nf).ln();
        }
        total += ln_term.exp();
    }
    total
}

fn ideal_cost(counts: &[u64], p: &CategoricalDistribution) -> Result<f64> {
    if counts.len() != p.alphabet_size() {
        return Err(Error::invalid(format!(
            "oracle distribution covers {} symbols, counts cover {}",
            p.alphabet_size(),
            counts.len()
        )));
    }
    let mut bits = 0.0;
    for (i, &c) in counts.iter().enumerate() {
        if c > 0 {
            // -log2(0) = +inf: impossible data under the oracle scores
            // infinitely badly rather than erroring.
            bits += c as f64 * -p.prob(i).log2();
        }
    }
    Ok(bits)
}

/// Codelength of one count vector under `codec`:
/// model cost plus data cost for the count-based codecs, the ideal code
/// against the oracle's cause marginal otherwise.
pub fn marginal_cost(c: &CountVector, codec: &Codec) -> Result<f64> {
    if c.n() == 0 {
        return Err(Error::invalid("cannot encode an empty sample"));
    }
    match codec {
        Codec::CrudeTwoPart => Ok(model_cost_crude(c.alphabet_size(), c.n()) + data_cost_mle(c)?),
        Codec::Nml => Ok(data_cost_mle(c)? + nml_complexity(c.alphabet_size(), c.n())?.log2()),
        Codec::Oracle(j) => ideal_cost(c.counts(), &j.marginal(Axis::X)),
    }
}

/// Codelength of `target_col` given `cond_col`: rows are partitioned by the
/// conditioning value and each non-empty block is encoded as its own
/// multinomial (with the block's own size), empty blocks costing nothing.
pub fn conditional_cost(
    s: &PairedSample,
    cond_col: usize,
    target_col: usize,
    codec: &Codec,
) -> Result<f64> {
    conditional_cost_grouped(s, &[cond_col], target_col, codec)
}

/// [`conditional_cost`] generalized to a set of conditioning columns whose
/// joint configuration indexes the blocks (product alphabet, row-major in
/// the order given). An empty `cond_cols` reduces to [`marginal_cost`].
pub fn conditional_cost_grouped(
    s: &PairedSample,
    cond_cols: &[usize],
    target_col: usize,
    codec: &Codec,
) -> Result<f64> {
    s.check_column(target_col)?;
    for (i, &c) in cond_cols.iter().enumerate() {
        s.check_column(c)?;
        if c == target_col {
            return Err(Error::invalid("target column cannot condition on itself"));
        }
        if cond_cols[..i].contains(&c) {
            return Err(Error::invalid(format!("duplicate conditioning column {c}")));
        }
    }
    if cond_cols.is_empty() {
        return marginal_cost(&CountVector::from_column(s, target_col)?, codec);
    }

    let k_t = s.alphabet_size(target_col);
    let mut blocks: usize = 1;
    for &c in cond_cols {
        blocks = blocks
            .checked_mul(s.alphabet_size(c))
            .filter(|b| {
                b.checked_mul(k_t)
                    .is_some_and(|cells| cells <= MAX_CONDITIONING_CELLS)
            })
            .ok_or_else(|| {
                Error::resource(format!(
                    "conditioning table exceeds {MAX_CONDITIONING_CELLS} cells"
                ))
            })?;
    }

    let mut counts = vec![0u64; blocks * k_t];
    for row in 0..s.len() {
        let mut block = 0usize;
        for &c in cond_cols {
            block = block * s.alphabet_size(c) + s.column(c)[row];
        }
        counts[block * k_t + s.column(target_col)[row]] += 1;
    }

    let oracle_rows = match codec {
        Codec::Oracle(j) => {
            if cond_cols.len() != 1 {
                return Err(Error::invalid(
                    "the oracle codec scores a single conditioning column",
                ));
            }
            if j.k_x() != s.alphabet_size(cond_cols[0]) || j.k_y() != k_t {
                return Err(Error::invalid(format!(
                    "oracle joint is {}x{}, data is {}x{}",
                    j.k_x(),
                    j.k_y(),
                    s.alphabet_size(cond_cols[0]),
                    k_t
                )));
            }
            Some(j.condition(Axis::X))
        }
        _ => None,
    };

    let mut bits = 0.0;
    for block in 0..blocks {
        let slice = &counts[block * k_t..(block + 1) * k_t];
        let n_block: u64 = slice.iter().sum();
        if n_block == 0 {
            continue;
        }
        bits += match codec {
            Codec::CrudeTwoPart => {
                model_cost_crude(k_t, n_block) + data_cost_mle_slice(slice, n_block)
            }
            Codec::Nml => {
                data_cost_mle_slice(slice, n_block) + nml_complexity(k_t, n_block)?.log2()
            }
            Codec::Oracle(_) => {
                let rows = oracle_rows.as_ref().expect("resolved above");
                ideal_cost(slice, rows.row(block))?
            }
        };
    }
    Ok(bits)
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-12;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    fn cv(counts: &[u64]) -> CountVector {
        CountVector::new(counts.to_vec()).unwrap()
    }

    #[test]
    fn data_cost_fixtures() {
        assert_eq!(data_cost_mle(&cv(&[2, 2])).unwrap(), 4.0);
        assert_eq!(data_cost_mle(&cv(&[4, 0])).unwrap(), 0.0);
        // 3 log2(4/3) + log2 4
        assert!(close(
            data_cost_mle(&cv(&[3, 1])).unwrap(),
            3.245_112_497_836_531,
            1e-9
        ));
        assert!(data_cost_mle(&cv(&[0, 0])).is_err());
    }

    #[test]
    fn data_cost_is_n_times_empirical_entropy() {
        use crate::infotheory::entropy;
        let counts = [5u64, 3, 0, 12];
        let n: u64 = counts.iter().sum();
        let empirical =
            CategoricalDistribution::new(counts.iter().map(|&c| c as f64 / n as f64).collect())
                .unwrap();
        assert!(close(
            data_cost_mle(&cv(&counts)).unwrap(),
            n as f64 * entropy(&empirical),
            1e-9
        ));
    }

    #[test]
    // The frozen fixture 0.5 * log2(100) happens to be log2(10).
    #[allow(clippy::approx_constant)]
    fn crude_model_cost_fixtures() {
        assert_eq!(model_cost_crude(1, 10), 0.0);
        assert!(close(model_cost_crude(2, 100), 3.321_928_094_887_362, TOL));
        assert!(close(model_cost_crude(3, 4), 2.0, TOL));
    }

    #[test]
    fn nml_complexity_fixtures() {
        for n in [0u64, 1, 5, 100] {
            assert_eq!(nml_complexity(1, n).unwrap(), 1.0);
        }
        for k in 1..6 {
            assert_eq!(nml_complexity(k, 0).unwrap(), 1.0);
        }
        assert!(close(nml_complexity(2, 2).unwrap(), 2.5, 1e-9));
        // Hand enumeration: COMP(3,2) = 4.5 and COMP(4,2) = 7.
        assert!(close(nml_complexity(3, 2).unwrap(), 4.5, 1e-9));
        assert!(close(nml_complexity(4, 2).unwrap(), 7.0, 1e-9));
    }

    #[test]
    fn nml_complexity_is_monotone_in_k_and_n() {
        for k in 1..8usize {
            for n in 0..30u64 {
                let here = nml_complexity(k, n).unwrap();
                assert!(nml_complexity(k + 1, n).unwrap() >= here - 1e-9);
                assert!(nml_complexity(k, n + 1).unwrap() >= here - 1e-9);
            }
        }
    }

    #[test]
    fn nml_complexity_resource_guard() {
        assert!(matches!(
            nml_complexity(2, NML_MAX_N + 1),
            Err(Error::ResourceLimit(_))
        ));
        assert!(matches!(
            nml_complexity(NML_MAX_K + 1, 10),
            Err(Error::ResourceLimit(_))
        ));
    }

    #[test]
    // The frozen fixture 0.5 * log2(100) happens to be log2(10).
    #[allow(clippy::approx_constant)]
    fn marginal_cost_fixtures() {
        let fair = CategoricalDistribution::new(vec![0.5, 0.5]).unwrap();
        let oracle = Codec::oracle_from_marginal(&fair);
        assert_eq!(marginal_cost(&cv(&[2, 2]), &oracle).unwrap(), 4.0);

        assert!(close(
            marginal_cost(&cv(&[50, 50]), &Codec::CrudeTwoPart).unwrap(),
            100.0 + 3.321_928_094_887_362,
            1e-9
        ));

        // data 2 bits plus log2 COMP(2,2) = log2 2.5
        assert!(close(
            marginal_cost(&cv(&[1, 1]), &Codec::Nml).unwrap(),
            2.0 + 2.5f64.log2(),
            1e-9
        ));
    }

    #[test]
    fn oracle_cost_dominates_mle_cost() {
        let p = CategoricalDistribution::new(vec![0.2, 0.3, 0.5]).unwrap();
        let oracle = Codec::oracle_from_marginal(&p);
        for counts in [[7u64, 1, 2], [0, 5, 5], [3, 3, 4]] {
            let c = cv(&counts);
            assert!(marginal_cost(&c, &oracle).unwrap() >= data_cost_mle(&c).unwrap() - 1e-9);
        }
    }

    #[test]
    fn oracle_impossible_symbol_costs_infinity() {
        let p = CategoricalDistribution::new(vec![1.0, 0.0]).unwrap();
        let oracle = Codec::oracle_from_marginal(&p);
        let cost = marginal_cost(&cv(&[1, 1]), &oracle).unwrap();
        assert!(cost.is_infinite() && cost > 0.0);
    }

    #[test]
    fn marginal_cost_rejects_mismatched_or_empty_counts() {
        let p = CategoricalDistribution::new(vec![0.5, 0.5]).unwrap();
        let oracle = Codec::oracle_from_marginal(&p);
        assert!(marginal_cost(&cv(&[1, 1, 1]), &oracle).is_err());
        for codec in [Codec::CrudeTwoPart, Codec::Nml, oracle] {
            assert!(marginal_cost(&cv(&[0, 0]), &codec).is_err());
        }
    }

    #[test]
    fn conditional_cost_constant_target_is_free_under_crude() {
        // k_target = 1: no parameters, no surprise.
        let s = PairedSample::new(vec![vec![0, 1, 0, 1], vec![0, 0, 0, 0]], vec![2, 1]).unwrap();
        assert_eq!(
            conditional_cost(&s, 0, 1, &Codec::CrudeTwoPart).unwrap(),
            0.0
        );
    }

    #[test]
    fn conditional_cost_with_constant_conditioner_equals_marginal_cost() {
        let s = PairedSample::new(vec![vec![0, 0, 0, 0], vec![0, 1, 1, 0]], vec![1, 2]).unwrap();
        for codec in [Codec::CrudeTwoPart, Codec::Nml] {
            assert!(close(
                conditional_cost(&s, 0, 1, &codec).unwrap(),
                marginal_cost(&CountVector::from_column(&s, 1).unwrap(), &codec).unwrap(),
                TOL
            ));
        }
    }

    #[test]
    fn conditional_cost_oracle_on_deterministic_mechanism_is_zero() {
        let px = CategoricalDistribution::uniform(2).unwrap();
        let noise = CategoricalDistribution::point_mass(2, 0).unwrap();
        let joint = crate::distributions::discrete_anm(2, 2, &[1, 0], &noise, &px).unwrap();
        let s = joint.sample(64, 5).unwrap();
        let cost = conditional_cost(&s, 0, 1, &Codec::Oracle(joint)).unwrap();
        assert_eq!(cost, 0.0);
    }

    #[test]
    fn conditional_cost_rejects_bad_columns() {
        let s = PairedSample::new(vec![vec![0, 1], vec![1, 0]], vec![2, 2]).unwrap();
        assert!(conditional_cost(&s, 0, 0, &Codec::CrudeTwoPart).is_err());
        assert!(conditional_cost(&s, 2, 1, &Codec::CrudeTwoPart).is_err());
        assert!(conditional_cost_grouped(&s, &[0, 0], 1, &Codec::CrudeTwoPart).is_err());
    }

    #[test]
    fn costs_are_nonnegative() {
        let s = PairedSample::new(
            vec![vec![0, 1, 2, 0, 1, 2, 2, 2], vec![1, 0, 1, 1, 0, 0, 1, 1]],
            vec![3, 2],
        )
        .unwrap();
        for codec in [Codec::CrudeTwoPart, Codec::Nml] {
            let m = marginal_cost(&CountVector::from_column(&s, 0).unwrap(), &codec).unwrap();
            let c = conditional_cost(&s, 0, 1, &codec).unwrap();
            assert!(m >= 0.0 && m.is_finite());
            assert!(c >= 0.0 && c.is_finite());
        }
    }

    #[test]
    fn reversed_oracle_transposes_the_joint() {
        let j = JointTable::new(vec![vec![0.1, 0.2], vec![0.3, 0.4]]).unwrap();
        let r = Codec::Oracle(j.clone()).reversed();
        match r {
            Codec::Oracle(t) => {
                assert_eq!(t.prob(0, 1), j.prob(1, 0));
                assert_eq!(t.prob(1, 0), j.prob(0, 1));
            }
            _ => unreachable!(),
        }
        assert_eq!(Codec::CrudeTwoPart.reversed(), Codec::CrudeTwoPart);
    }
}
