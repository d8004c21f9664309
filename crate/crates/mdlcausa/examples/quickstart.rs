//! Generate a synthetic cause-effect pair and infer its direction.

use mdlcausa::distributions::{dirichlet_categorical, discrete_anm, CategoricalDistribution};
use mdlcausa::inference::{infer_direction, InferenceOptions};
use mdlcausa::rng;

fn main() -> mdlcausa::Result<()> {
    // Y = (X + N) mod 4 with a peaked noise term, X from a random Dirichlet.
    let px = dirichlet_categorical(4, 1.0, &mut rng::substream(42, 0))?;
    let noise = CategoricalDistribution::new(vec![0.8, 0.1, 0.05, 0.05])?;
    let joint = discrete_anm(4, 4, &[0, 1, 2, 3], &noise, &px)?;

    let sample = joint.sample(10_000, 42)?;
    let score = infer_direction(&sample, 0, 1, &InferenceOptions::default())?;

    println!(
        "decision: {:?} (delta = {:.3} bits, confidence = {:.4}, dependent = {})",
        score.decision, score.delta, score.confidence, score.dependent
    );
    println!(
        "L(X->Y) = {:.3} bits, L(Y->X) = {:.3} bits",
        score.l_xy, score.l_yx
    );
    Ok(())
}
