//! Size-independent structural signatures for comparing graphs.
//!
//! The pipeline has three stages:
//!
//! 1. [`features::extract_features`] computes seven local and egonet
//!    features for every node,
//! 2. [`aggregate::signature`] collapses each feature column into median,
//!    mean, standard deviation, skewness and kurtosis (35 values),
//! 3. [`compare`] measures distances between signatures and builds
//!    clusterings, projections and hypothesis tests on top of them.
//!
//! [`spectral`] provides a top-eigenvalue baseline, [`generators`] seeded
//! random graph models, and [`apps`] labeling and discontinuity detection.

pub mod aggregate;
pub mod apps;
pub mod compare;
pub mod error;
pub mod features;
pub mod generators;
pub mod graph;
pub mod spectral;

pub use aggregate::{aggregate_column, signature, SignatureVector, SIGNATURE_LEN};
pub use error::{Error, Result};
pub use features::{extract_features, Feature, FeatureMatrix, NodeFeatureRow};
pub use graph::{load_edge_list, read_edge_list, Graph, GraphSet};

/// Features and signature of one graph in a single call.
pub fn graph_signature(g: &Graph, name: impl Into<String>) -> Result<SignatureVector> {
    signature(&extract_features(g, name))
}
