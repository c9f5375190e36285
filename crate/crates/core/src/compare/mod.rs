//! Pairwise comparison of graphs: distances, clustering, hypothesis tests,
//! projection and signature entropy.

mod distance;
mod entropy;
mod projection;
mod stats;
mod upgma;

pub use distance::{canberra, canberra_scaled, cosine_similarity, pairwise_compare, DistanceMatrix, Metric};
pub use entropy::{signature_entropy, ENTROPY_BINS};
pub use projection::{singular_values, standardize, svd_project, ProjectionResult};
pub use stats::{
    hypothesis_compare, kolmogorov_sf, ks_statistic, ks_two_sample, l2_normalized, mann_whitney_u,
    FeaturePValue, HypothesisReport, TestKind, EXACT_LIMIT,
};
pub use upgma::{upgma, Dendrogram, Merge};

use crate::aggregate::SignatureVector;
use crate::error::Result;

/// [`pairwise_compare`] over signature vectors, keyed by their names.
pub fn compare_signatures(sigs: &[SignatureVector], metric: Metric) -> Result<DistanceMatrix> {
    let items: Vec<(&str, &[f64])> = sigs.iter().map(|s| (s.name.as_str(), s.values.as_slice())).collect();
    pairwise_compare(&items, metric)
}
