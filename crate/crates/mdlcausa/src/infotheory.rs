//! Shannon-information kernels: entropy, conditional entropy and mutual
//! information on distributions, plus the plug-in joint estimate on samples.
//!
//! All logarithms are base 2 and all results are in bits. `0 log 0 = 0` by
//! continuity; probabilities below [`ENTROPY_ZERO`] are treated as exact
//! zeros inside entropy sums.

use crate::distributions::{Axis, CategoricalDistribution, JointTable, PairedSample};
use crate::error::Result;

/// Probabilities below this are treated as exact zeros in entropy sums.
pub const ENTROPY_ZERO: f64 = 1e-15;

fn plogp_bits(p: f64) -> f64 {
    if p < ENTROPY_ZERO {
        0.0
    } else {
        -p * p.log2()
    }
}

/// H(P) = -sum_x P(x) log2 P(x), in [0, log2 k].
pub fn entropy(p: &CategoricalDistribution) -> f64 {
    // Fold from +0.0 so a point mass reports 0, not -0.
    p.probs()
        .iter()
        .copied()
        .map(plogp_bits)
        .fold(0.0, |acc, v| acc + v)
}

/// Entropy of the flattened joint table, H(X, Y).
pub fn joint_entropy(j: &JointTable) -> f64 {
    j.cells()
        .iter()
        .copied()
        .map(plogp_bits)
        .fold(0.0, |acc, v| acc + v)
}

/// H(other | given) = sum_x P(x) H(P_{other|given=x}); conditioning values
/// of zero mass contribute nothing.
pub fn conditional_entropy(j: &JointTable, given: Axis) -> f64 {
    match given {
        Axis::X => {
            let mut h = 0.0;
            for x in 0..j.k_x() {
                let mass: f64 = (0..j.k_y()).map(|y| j.prob(x, y)).sum();
                if mass < ENTROPY_ZERO {
                    continue;
                }
                for y in 0..j.k_y() {
                    let p = j.prob(x, y);
                    if p >= ENTROPY_ZERO {
                        h -= p * (p / mass).log2();
                    }
                }
            }
            h
        }
        Axis::Y => conditional_entropy(&j.transposed(), Axis::X),
    }
}

/// I(X; Y) = H(X) + H(Y) - H(X, Y), clamped at zero against rounding.
pub fn mutual_information(j: &JointTable) -> f64 {
    let mi = entropy(&j.marginal(Axis::X)) + entropy(&j.marginal(Axis::Y)) - joint_entropy(j);
    mi.max(0.0)
}

/// Plug-in estimate of the joint: cell counts divided by n.
pub fn empirical_joint(s: &PairedSample, col_x: usize, col_y: usize) -> Result<JointTable> {
    s.check_column(col_x)?;
    s.check_column(col_y)?;
    let k_x = s.alphabet_size(col_x);
    let k_y = s.alphabet_size(col_y);
    let mut counts = vec![0u64; k_x * k_y];
    for (&x, &y) in s.column(col_x).iter().zip(s.column(col_y)) {
        counts[x * k_y + y] += 1;
    }
    let n = s.len() as f64;
    let rows = (0..k_x)
        .map(|x| (0..k_y).map(|y| counts[x * k_y + y] as f64 / n).collect())
        .collect();
    JointTable::new(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributions::PairedSample;

    const TOL: f64 = 1e-12;

    // Independent evaluation of -sum p log2 p for the derived fixtures.
    const H_QUARTER_THREE_QUARTER: f64 = 0.811_278_124_459_132_8;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn entropy_fixtures() {
        let fair = CategoricalDistribution::new(vec![0.5, 0.5]).unwrap();
        assert_eq!(entropy(&fair), 1.0);

        let point = CategoricalDistribution::new(vec![1.0, 0.0]).unwrap();
        assert_eq!(entropy(&point), 0.0);

        let skew = CategoricalDistribution::new(vec![0.25, 0.75]).unwrap();
        assert!(close(entropy(&skew), H_QUARTER_THREE_QUARTER, TOL));
    }

    #[test]
    fn entropy_is_permutation_invariant() {
        let a = CategoricalDistribution::new(vec![0.1, 0.2, 0.3, 0.4]).unwrap();
        let b = CategoricalDistribution::new(vec![0.4, 0.1, 0.3, 0.2]).unwrap();
        assert!(close(entropy(&a), entropy(&b), TOL));
    }

    #[test]
    fn joint_entropy_fixtures() {
        let uniform = JointTable::new(vec![vec![0.25, 0.25], vec![0.25, 0.25]]).unwrap();
        assert_eq!(joint_entropy(&uniform), 2.0);

        let coupled = JointTable::new(vec![vec![0.5, 0.0], vec![0.0, 0.5]]).unwrap();
        assert_eq!(joint_entropy(&coupled), 1.0);

        let skew = JointTable::new(vec![vec![0.25, 0.0], vec![0.0, 0.75]]).unwrap();
        assert!(close(joint_entropy(&skew), H_QUARTER_THREE_QUARTER, TOL));
    }

    #[test]
    fn conditional_entropy_fixtures() {
        // Independent joint: H(Y|X) = H(Y).
        let j = JointTable::new(vec![vec![0.06, 0.14], vec![0.24, 0.56]]).unwrap();
        assert!(close(
            conditional_entropy(&j, Axis::X),
            entropy(&j.marginal(Axis::Y)),
            1e-9
        ));

        let det = JointTable::new(vec![vec![0.25, 0.0], vec![0.0, 0.75]]).unwrap();
        assert!(close(conditional_entropy(&det, Axis::X), 0.0, TOL));

        let uniform = JointTable::new(vec![vec![0.25, 0.25], vec![0.25, 0.25]]).unwrap();
        assert!(close(conditional_entropy(&uniform, Axis::X), 1.0, TOL));
    }

    #[test]
    fn mutual_information_fixtures() {
        let indep = JointTable::new(vec![vec![0.06, 0.14], vec![0.24, 0.56]]).unwrap();
        assert!(close(mutual_information(&indep), 0.0, 1e-9));

        // Identity coupling over four symbols carries log2 4 = 2 bits.
        let eye = JointTable::new(
            (0..4)
                .map(|x| (0..4).map(|y| if x == y { 0.25 } else { 0.0 }).collect())
                .collect(),
        )
        .unwrap();
        assert!(close(mutual_information(&eye), 2.0, TOL));

        let skew = JointTable::new(vec![vec![0.25, 0.0], vec![0.0, 0.75]]).unwrap();
        assert!(close(
            mutual_information(&skew),
            H_QUARTER_THREE_QUARTER,
            TOL
        ));
    }

    #[test]
    fn chain_rule_holds_on_a_generic_joint() {
        let j = JointTable::new(vec![vec![0.1, 0.25], vec![0.05, 0.6]]).unwrap();
        let hx = entropy(&j.marginal(Axis::X));
        let hy = entropy(&j.marginal(Axis::Y));
        let hxy = joint_entropy(&j);
        assert!(close(hx + conditional_entropy(&j, Axis::X), hxy, 1e-9));
        assert!(close(hy + conditional_entropy(&j, Axis::Y), hxy, 1e-9));
    }

    #[test]
    fn empirical_joint_counts() {
        let s = PairedSample::new(vec![vec![0, 0, 1, 1], vec![0, 1, 0, 1]], vec![2, 2]).unwrap();
        let j = empirical_joint(&s, 0, 1).unwrap();
        assert!(j.cells().iter().all(|&p| p == 0.25));

        let s = PairedSample::new(vec![vec![0, 0, 0, 0], vec![0, 0, 0, 0]], vec![2, 2]).unwrap();
        let j = empirical_joint(&s, 0, 1).unwrap();
        assert_eq!(j.prob(0, 0), 1.0);
        assert_eq!(j.prob(1, 1), 0.0);
    }

    #[test]
    fn empirical_joint_converges_to_the_generator() {
        let truth = JointTable::new(vec![vec![0.3, 0.1], vec![0.15, 0.45]]).unwrap();
        let s = truth.sample(100_000, 21).unwrap();
        let j = empirical_joint(&s, 0, 1).unwrap();
        for x in 0..2 {
            for y in 0..2 {
                assert!(close(j.prob(x, y), truth.prob(x, y), 0.01));
            }
        }
    }

    #[test]
    fn empirical_joint_rejects_missing_columns() {
        let s = PairedSample::new(vec![vec![0, 1]], vec![2]).unwrap();
        assert!(empirical_joint(&s, 0, 1).is_err());
    }
}
