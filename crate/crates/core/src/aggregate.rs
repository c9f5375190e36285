//! Moment aggregation of feature columns into a fixed-length signature.

use serde::ser::{Serialize, SerializeMap, Serializer};

use crate::error::{Error, Result};
use crate::features::{csv_field, Feature, FeatureMatrix};

pub const AGGREGATORS: [&str; 5] = ["median", "mean", "stdev", "skewness", "kurtosis"];
pub const SIGNATURE_LEN: usize = Feature::ALL.len() * AGGREGATORS.len();

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ColumnSummary {
    pub median: f64,
    pub mean: f64,
    pub stdev: f64,
    pub skewness: f64,
    /// Excess kurtosis (normal distribution gives 0).
    pub kurtosis: f64,
}

impl ColumnSummary {
    pub fn to_array(&self) -> [f64; 5] {
        [self.median, self.mean, self.stdev, self.skewness, self.kurtosis]
    }
}

/// Pairwise summation; the error stays `O(log n)` ulps.
fn pairwise_sum(xs: &[f64]) -> f64 {
    if xs.len() <= 16 {
        xs.iter().sum()
    } else {
        let (a, b) = xs.split_at(xs.len() / 2);
        pairwise_sum(a) + pairwise_sum(b)
    }
}

/// Median, mean and population central-moment statistics of a column.
///
/// Values are sorted before any summation, so the result does not depend on
/// input order. A constant column yields zero spread, skewness and kurtosis.
pub fn aggregate_column(values: &[f64]) -> Result<ColumnSummary> {
    if values.is_empty() {
        return Err(Error::InvalidArgument("cannot aggregate an empty column".into()));
    }
    if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
        return Err(Error::InvalidArgument(format!("non-finite value {bad} in column")));
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len();

    let median = if n % 2 == 1 {
        sorted[n / 2]
    } else {
        (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0
    };
    let mean = pairwise_sum(&sorted) / n as f64;

    if sorted[0] == sorted[n - 1] {
        return Ok(ColumnSummary {
            median,
            mean,
            stdev: 0.0,
            skewness: 0.0,
            kurtosis: 0.0,
        });
    }

    let dev: Vec<f64> = sorted.iter().map(|v| v - mean).collect();
    let pow = |k: i32| pairwise_sum(&dev.iter().map(|d| d.powi(k)).collect::<Vec<_>>()) / n as f64;
    let (m2, m3, m4) = (pow(2), pow(3), pow(4));
    Ok(ColumnSummary {
        median,
        mean,
        stdev: m2.sqrt(),
        skewness: m3 / m2.powf(1.5),
        kurtosis: m4 / (m2 * m2) - 3.0,
    })
}

/// 35 aggregates ordered feature-major: for each feature, the five
/// [`AGGREGATORS`] in order.
#[derive(Debug, Clone, PartialEq)]
pub struct SignatureVector {
    pub name: String,
    pub values: Vec<f64>,
}

impl SignatureVector {
    pub fn new(name: impl Into<String>, values: Vec<f64>) -> Result<Self> {
        if values.len() != SIGNATURE_LEN {
            return Err(Error::LengthMismatch(values.len(), SIGNATURE_LEN));
        }
        Ok(SignatureVector {
            name: name.into(),
            values,
        })
    }

    pub fn get(&self, f: Feature, aggregator: usize) -> f64 {
        self.values[f.index() * AGGREGATORS.len() + aggregator]
    }

    /// `"<feature>_<aggregator>"` in value order.
    pub fn field_names() -> Vec<String> {
        Feature::ALL
            .iter()
            .flat_map(|f| AGGREGATORS.iter().map(move |a| format!("{}_{a}", f.name())))
            .collect()
    }

    pub fn csv_header() -> String {
        let mut h = String::from("graph");
        for name in Self::field_names() {
            h.push(',');
            h.push_str(&name);
        }
        h
    }

    pub fn csv_row(&self) -> String {
        let mut row = csv_field(&self.name);
        for v in &self.values {
            row.push(',');
            row.push_str(&v.to_string());
        }
        row
    }
}

impl Serialize for SignatureVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(SIGNATURE_LEN + 1))?;
        map.serialize_entry("graph", &self.name)?;
        for (k, v) in Self::field_names().iter().zip(&self.values) {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

pub fn signature(fm: &FeatureMatrix) -> Result<SignatureVector> {
    if fm.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let mut values = Vec::with_capacity(SIGNATURE_LEN);
    for f in Feature::ALL {
        values.extend(aggregate_column(&fm.column(f))?.to_array());
    }
    SignatureVector::new(fm.name.clone(), values)
}
