//! Seeded batch driver: generates cause-effect pairs with known ground
//! truth (the first column causes the second) and scores each one.
//!
//! Pair `i` draws everything it needs from `rng::substream(seed, i)`, so a
//! batch is reproducible and each record is independent of whether the
//! batch ran sequentially or on a thread pool.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use rand::Rng;

use crate::codecs::Codec;
use crate::distributions::{dirichlet_categorical, discrete_anm, JointTable, PairedSample};
use crate::error::Result;
use crate::inference::{self, DirectionScore, InferenceOptions};
use crate::rng;

/// Synthetic-pair families with ground-truth direction X -> Y.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorKind {
    /// Cause marginal and every mechanism row drawn from independent
    /// symmetric Dirichlets.
    Dirichlet,
    /// Discrete additive noise model: random function table, Dirichlet
    /// cause and Dirichlet noise.
    Anm,
}

/// Configuration of one benchmark batch.
#[derive(Debug, Clone)]
pub struct PairBenchmarkConfig {
    pub pairs: usize,
    /// Observations per pair.
    pub n: usize,
    pub k_x: usize,
    pub k_y: usize,
    pub generator: GeneratorKind,
    /// Dirichlet concentration used by both generators.
    pub alpha_dir: f64,
    pub codec: Codec,
    /// Tie tolerance in bits.
    pub eps: f64,
    /// Gate significance level.
    pub alpha: f64,
    pub gate: bool,
    pub seed: u64,
}

impl Default for PairBenchmarkConfig {
    fn default() -> Self {
        PairBenchmarkConfig {
            pairs: 200,
            n: 10_000,
            k_x: 4,
            k_y: 4,
            generator: GeneratorKind::Anm,
            alpha_dir: 1.0,
            codec: Codec::CrudeTwoPart,
            eps: inference::DEFAULT_EPS,
            alpha: inference::DEFAULT_ALPHA,
            gate: true,
            seed: 0,
        }
    }
}

/// Score of one generated pair. Ground truth is always X -> Y.
#[derive(Debug, Clone, PartialEq)]
pub struct PairRecord {
    pub pair_id: usize,
    pub score: DirectionScore,
}

/// Accuracy over decided pairs and the fraction of pairs decided at all.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BenchmarkSummary {
    pub pairs: usize,
    pub decided: usize,
    pub correct: usize,
    /// `correct / decided`, zero when nothing was decided.
    pub accuracy: f64,
    /// `decided / pairs`, zero for an empty batch.
    pub decision_rate: f64,
}

impl BenchmarkSummary {
    pub fn from_records(records: &[PairRecord]) -> BenchmarkSummary {
        let decided = records
            .iter()
            .filter(|r| r.score.decision != inference::Direction::Undecided)
            .count();
        let correct = records
            .iter()
            .filter(|r| r.score.decision == inference::Direction::XtoY)
            .count();
        BenchmarkSummary {
            pairs: records.len(),
            decided,
            correct,
            accuracy: if decided > 0 {
                correct as f64 / decided as f64
            } else {
                0.0
            },
            decision_rate: if records.is_empty() {
                0.0
            } else {
                decided as f64 / records.len() as f64
            },
        }
    }
}

fn generate_pair(cfg: &PairBenchmarkConfig, pair_id: usize) -> Result<PairedSample> {
    let mut rng = rng::substream(cfg.seed, pair_id as u64);
    let joint = match cfg.generator {
        GeneratorKind::Dirichlet => {
            let px = dirichlet_categorical(cfg.k_x, cfg.alpha_dir, &mut rng)?;
            let rows = (0..cfg.k_x)
                .map(|_| dirichlet_categorical(cfg.k_y, cfg.alpha_dir, &mut rng))
                .collect::<Result<Vec<_>>>()?;
            JointTable::from_factorization(
                &px,
                &crate::distributions::ConditionalTable::new(rows)?,
            )?
        }
        GeneratorKind::Anm => {
            let px = dirichlet_categorical(cfg.k_x, cfg.alpha_dir, &mut rng)?;
            let f: Vec<usize> = (0..cfg.k_x).map(|_| rng.gen_range(0..cfg.k_y)).collect();
            let noise = dirichlet_categorical(cfg.k_y, cfg.alpha_dir, &mut rng)?;
            discrete_anm(cfg.k_x, cfg.k_y, &f, &noise, &px)?
        }
    };
    joint.sample_with(cfg.n, &mut rng)
}

fn score_pair(cfg: &PairBenchmarkConfig, pair_id: usize) -> Result<PairRecord> {
    let sample = generate_pair(cfg, pair_id)?;
    let opts = InferenceOptions {
        codec: cfg.codec.clone(),
        eps: cfg.eps,
        alpha: cfg.alpha,
        gate: cfg.gate,
    };
    let score = inference::infer_direction(&sample, 0, 1, &opts)?;
    Ok(PairRecord { pair_id, score })
}

/// Generates and scores the whole batch, in pair order. With the
/// `parallel` feature enabled and `parallel = true` the pairs are scored
/// on the rayon pool; results are identical either way.
pub fn run_pair_benchmark(cfg: &PairBenchmarkConfig, parallel: bool) -> Result<Vec<PairRecord>> {
    #[cfg(feature = "parallel")]
    if parallel {
        return (0..cfg.pairs)
            .into_par_iter()
            .map(|id| score_pair(cfg, id))
            .collect();
    }
    let _ = parallel;
    (0..cfg.pairs).map(|id| score_pair(cfg, id)).collect()
}
