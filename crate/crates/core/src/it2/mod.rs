//! Interval type-2 fuzzy sets with trapezoidal footprints: membership
//! evaluation, sampling, centroid type-reduction, linguistic weighted
//! average and Jaccard similarity.

mod centroid;
mod grid;
mod lwa;
mod similarity;
mod trapezoid;

pub use centroid::{centroid, centroid_mean, CentroidInterval};
pub use grid::{DiscretizationGrid, SampledFou};
pub use lwa::{lwa_exact, lwa_parameter_average};
pub use similarity::{jaccard, jaccard_similarity};
pub use trapezoid::{IntervalFou, TrapezoidIt2};
