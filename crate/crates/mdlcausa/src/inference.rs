//! The bivariate decision: score both factorizations, gate on dependence,
//! decide with a tie tolerance.

use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::codecs::{self, Codec, CountVector};
use crate::distributions::PairedSample;
use crate::error::{Error, Result};

/// Default tie tolerance in bits.
pub const DEFAULT_EPS: f64 = 1e-9;
/// Default significance level of the dependence gate.
pub const DEFAULT_ALPHA: f64 = 0.05;

/// Inferred causal direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    XtoY,
    YtoX,
    Undecided,
}

/// Both directed codelengths and the decision derived from them.
#[derive(Debug, Clone, PartialEq)]
pub struct DirectionScore {
    /// Codelength of the X -> Y factorization, bits.
    pub l_xy: f64,
    /// Codelength of the Y -> X factorization, bits.
    pub l_yx: f64,
    /// `l_yx - l_xy`: positive favors X -> Y. Zero when both sides are
    /// infinite, so serialization stays finite.
    pub delta: f64,
    pub decision: Direction,
    /// `|delta| / max(l_xy, l_yx)` when both are finite, 1 otherwise;
    /// zero when both codelengths are zero. A repo convention, not a
    /// calibrated probability.
    pub confidence: f64,
    /// Verdict of the dependence gate (or `true` when the gate is off).
    pub dependent: bool,
    /// Sample size the scores were computed from.
    pub n: usize,
}

/// Scores both factorizations of the pair with the same codec:
/// `l_xy = L(M_X) + L(x|M_X) + L(M_Y|X) + L(y|x, M_Y|X)` and symmetrically
/// for `l_yx`. For [`Codec::Oracle`] the attached joint scores the X -> Y
/// direction and its transpose scores Y -> X.
pub fn score_direction(
    s: &PairedSample,
    col_x: usize,
    col_y: usize,
    codec: &Codec,
) -> Result<(f64, f64)> {
    let backward = codec.reversed();
    let l_xy = codecs::marginal_cost(&CountVector::from_column(s, col_x)?, codec)?
        + codecs::conditional_cost(s, col_x, col_y, codec)?;
    let l_yx = codecs::marginal_cost(&CountVector::from_column(s, col_y)?, &backward)?
        + codecs::conditional_cost(s, col_y, col_x, &backward)?;
    Ok((l_xy, l_yx))
}

/// G-test of independence: `G = 2 sum O ln(O/E)` over cells with positive
/// observed count, compared against the chi-square quantile at
/// `(k_x - 1)(k_y - 1)` degrees of freedom. Zero degrees of freedom (a
/// constant column) never reports dependence.
pub fn dependence_gate(s: &PairedSample, col_x: usize, col_y: usize, alpha: f64) -> Result<bool> {
    s.check_column(col_x)?;
    s.check_column(col_y)?;
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::invalid("significance level must lie in (0, 1)"));
    }
    let k_x = s.alphabet_size(col_x);
    let k_y = s.alphabet_size(col_y);
    let df = (k_x - 1) * (k_y - 1);
    if df == 0 {
        return Ok(false);
    }

    let mut cells = vec![0u64; k_x * k_y];
    let mut rows = vec![0u64; k_x];
    let mut cols = vec![0u64; k_y];
    for (&x, &y) in s.column(col_x).iter().zip(s.column(col_y)) {
        cells[x * k_y + y] += 1;
        rows[x] += 1;
        cols[y] += 1;
    }
    let n = s.len() as f64;
    let mut g = 0.0;
    for x in 0..k_x {
        for y in 0..k_y {
            let observed = cells[x * k_y + y] as f64;
            if observed > 0.0 {
                let expected = rows[x] as f64 * cols[y] as f64 / n;
                g += observed * (observed / expected).ln();
            }
        }
    }
    g *= 2.0;

    let critical = ChiSquared::new(df as f64)
        .expect("df >= 1")
        .inverse_cdf(1.0 - alpha);
    Ok(g > critical)
}

/// Combines codelengths and the gate verdict into a [`DirectionScore`].
/// The smaller codelength wins only when the margin exceeds `eps` and the
/// pair is dependent; everything else is undecided.
pub fn decide(l_xy: f64, l_yx: f64, dependent: bool, eps: f64, n: usize) -> DirectionScore {
    debug_assert!(eps >= 0.0);
    let delta = if l_xy.is_infinite() && l_yx.is_infinite() {
        0.0
    } else {
        l_yx - l_xy
    };
    let decision = if dependent && delta > eps {
        Direction::XtoY
    } else if dependent && delta < -eps {
        Direction::YtoX
    } else {
        Direction::Undecided
    };
    let confidence = if l_xy.is_finite() && l_yx.is_finite() {
        let scale = l_xy.max(l_yx);
        if scale > 0.0 {
            delta.abs() / scale
        } else {
            0.0
        }
    } else {
        1.0
    };
    DirectionScore {
        l_xy,
        l_yx,
        delta,
        decision,
        confidence,
        dependent,
        n,
    }
}

/// Knobs of the full decision pipeline.
#[derive(Debug, Clone)]
pub struct InferenceOptions {
    pub codec: Codec,
    /// Tie tolerance in bits.
    pub eps: f64,
    /// Significance level of the dependence gate.
    pub alpha: f64,
    /// Whether the gate runs at all; when off every pair counts as dependent.
    pub gate: bool,
}

impl Default for InferenceOptions {
    fn default() -> Self {
        InferenceOptions {
            codec: Codec::CrudeTwoPart,
            eps: DEFAULT_EPS,
            alpha: DEFAULT_ALPHA,
            gate: true,
        }
    }
}

/// Gate, score and decide in one call.
pub fn infer_direction(
    s: &PairedSample,
    col_x: usize,
    col_y: usize,
    opts: &InferenceOptions,
) -> Result<DirectionScore> {
    let dependent = if opts.gate {
        dependence_gate(s, col_x, col_y, opts.alpha)?
    } else {
        true
    };
    let (l_xy, l_yx) = score_direction(s, col_x, col_y, &opts.codec)?;
    Ok(decide(l_xy, l_yx, dependent, opts.eps, s.len()))
}
