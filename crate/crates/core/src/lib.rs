//! Computing-with-words engine for evaluating student examination strategies
//! from linguistic feedback.
//!
//! Four methods are provided: the extension principle on triangular type-1
//! sets ([`extension`]), the symbolic method ([`symbolic`]), the 2-tuple
//! linguistic model ([`two_tuple`]) and interval type-2 perceptual computing
//! ([`it2`] with word models from a [`codebook`]). [`pipeline`] runs them over
//! feedback batches and [`report`] formats the results.
//!
//! Numeric types are generic over [`Scalar`] (`f32` or `f64`); the aliases at
//! the crate root fix the scalar to `f64`.

pub mod codebook;
pub mod error;
pub mod extension;
pub mod feedback;
pub mod it2;
pub mod pipeline;
pub mod report;
pub mod scalar;
pub mod symbolic;
pub mod two_tuple;
pub mod vocabulary;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub type TriTuple = extension::TriTuple<f64>;
pub type DistanceWeights = extension::DistanceWeights<f64>;
pub type WeightVector = symbolic::WeightVector<f64>;
pub type TwoTuple = two_tuple::TwoTuple<f64>;
pub type TrapezoidIt2 = it2::TrapezoidIt2<f64>;
pub type DiscretizationGrid = it2::DiscretizationGrid<f64>;
pub type SampledFou = it2::SampledFou<f64>;
pub type CentroidInterval = it2::CentroidInterval<f64>;
