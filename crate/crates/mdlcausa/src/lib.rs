//! Cause-effect inference for discrete data by comparing two-part MDL
//! codelengths of the two factorizations of the joint distribution, plus a
//! lab of desk-scale experiments on the underlying theory.

pub mod codecs;
pub mod dag;
pub mod distributions;
pub mod driver;
pub mod error;
pub mod inference;
pub mod infotheory;
pub mod lab;
pub mod rng;

pub use codecs::{Codec, CountVector};
pub use distributions::{
    Axis, CategoricalDistribution, ConditionalTable, JointTable, PairedSample,
};
pub use error::{Error, Result};
pub use inference::{Direction, DirectionScore, InferenceOptions};
