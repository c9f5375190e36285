//! Applications built on signature comparison: node-overlap gauge, nearest
//! neighbor labeling and discontinuity detection over graph time series.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::aggregate::{signature, SignatureVector};
use crate::compare::canberra_scaled;
use crate::error::{Error, Result};
use crate::features::{csv_field, extract_features};
use crate::graph::{Graph, GraphSet};

/// `|V_A ∩ V_B| / sqrt(|V_A| |V_B|)` over node labels.
pub fn node_overlap(a: &Graph, b: &Graph) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let la: HashSet<&str> = a.labels().iter().map(String::as_str).collect();
    let common = b.labels().iter().filter(|l| la.contains(l.as_str())).count();
    Ok(common as f64 / ((a.node_count() as f64) * (b.node_count() as f64)).sqrt())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankedGraph {
    pub graph: String,
    pub label: String,
    pub distance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LabelPrediction {
    pub test: String,
    pub predicted: String,
    /// Distance to the second-closest training graph minus the closest; 0
    /// with a single training graph.
    pub margin: f64,
    /// Training graphs by ascending scaled Canberra distance, ties by name.
    pub ranking: Vec<RankedGraph>,
}

/// 1-nearest-neighbor label under scaled Canberra distance.
pub fn label_graph(test: &SignatureVector, train: &[(SignatureVector, String)]) -> Result<LabelPrediction> {
    if train.is_empty() {
        return Err(Error::InvalidArgument("training set is empty".into()));
    }
    let mut ranking = train
        .iter()
        .map(|(sig, label)| {
            Ok(RankedGraph {
                graph: sig.name.clone(),
                label: label.clone(),
                distance: canberra_scaled(&test.values, &sig.values)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    ranking.sort_by(|a, b| a.distance.total_cmp(&b.distance).then_with(|| a.graph.cmp(&b.graph)));
    let margin = match ranking.as_slice() {
        [first, second, ..] => second.distance - first.distance,
        _ => 0.0,
    };
    Ok(LabelPrediction {
        test: test.name.clone(),
        predicted: ranking[0].label.clone(),
        margin,
        ranking,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TimelineReport {
    pub reference: usize,
    pub names: Vec<String>,
    pub distances: Vec<f64>,
    /// Non-reference index with the largest distance, earliest on ties.
    pub flagged: usize,
}

impl TimelineReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("index,name,distance,flagged\n");
        for (i, (name, d)) in self.names.iter().zip(&self.distances).enumerate() {
            out.push_str(&format!("{i},{},{d},{}\n", csv_field(name), i == self.flagged));
        }
        out
    }
}

/// Scaled Canberra distance of every signature to the reference one.
pub fn timeline_from_signatures(sigs: &[SignatureVector], reference: usize) -> Result<TimelineReport> {
    if sigs.len() < 2 {
        return Err(Error::InvalidArgument("a timeline needs at least two graphs".into()));
    }
    if reference >= sigs.len() {
        return Err(Error::InvalidArgument(format!(
            "reference index {reference} outside 0..{}",
            sigs.len()
        )));
    }
    let base = &sigs[reference].values;
    let distances = sigs
        .iter()
        .enumerate()
        .map(|(i, s)| if i == reference { Ok(0.0) } else { canberra_scaled(base, &s.values) })
        .collect::<Result<Vec<f64>>>()?;
    let mut flagged = if reference == 0 { 1 } else { 0 };
    for (i, &d) in distances.iter().enumerate() {
        if i != reference && d > distances[flagged] {
            flagged = i;
        }
    }
    Ok(TimelineReport {
        reference,
        names: sigs.iter().map(|s| s.name.clone()).collect(),
        distances,
        flagged,
    })
}

pub fn timeline_distances(series: &GraphSet, reference: usize) -> Result<TimelineReport> {
    let entries: Vec<(&str, &Graph)> = series.iter().collect();
    let sigs = entries
        .par_iter()
        .map(|(name, g)| signature(&extract_features(g, *name)))
        .collect::<Result<Vec<_>>>()?;
    timeline_from_signatures(&sigs, reference)
}
