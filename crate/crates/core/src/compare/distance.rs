use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::features::csv_field;

fn check_len(p: &[f64], q: &[f64]) -> Result<()> {
    if p.len() != q.len() {
        return Err(Error::LengthMismatch(p.len(), q.len()));
    }
    Ok(())
}

/// Sum of `|p_i - q_i| / (|p_i| + |q_i|)`, with `0/0` terms counted as 0.
pub fn canberra(p: &[f64], q: &[f64]) -> Result<f64> {
    check_len(p, q)?;
    Ok(p.iter()
        .zip(q)
        .map(|(a, b)| {
            let denom = a.abs() + b.abs();
            if denom == 0.0 {
                0.0
            } else {
                (a - b).abs() / denom
            }
        })
        .sum())
}

/// Canberra distance divided by the vector length, in `[0, 1]`.
pub fn canberra_scaled(p: &[f64], q: &[f64]) -> Result<f64> {
    let d = canberra(p, q)?;
    Ok(if p.is_empty() { 0.0 } else { d / p.len() as f64 })
}

/// Cosine of the angle between `p` and `q`; 0 when either is the zero vector.
pub fn cosine_similarity(p: &[f64], q: &[f64]) -> Result<f64> {
    check_len(p, q)?;
    let dot: f64 = p.iter().zip(q).map(|(a, b)| a * b).sum();
    let np = p.iter().map(|a| a * a).sum::<f64>().sqrt();
    let nq = q.iter().map(|b| b * b).sum::<f64>().sqrt();
    if np == 0.0 || nq == 0.0 {
        return Ok(0.0);
    }
    Ok((dot / (np * nq)).clamp(-1.0, 1.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    Canberra,
    CanberraScaled,
    /// `1 - cosine_similarity`
    CosineDistance,
}

impl Metric {
    pub fn tag(self) -> &'static str {
        match self {
            Metric::Canberra => "canberra",
            Metric::CanberraScaled => "canberra-scaled",
            Metric::CosineDistance => "cosine",
        }
    }

    pub fn distance(self, p: &[f64], q: &[f64]) -> Result<f64> {
        match self {
            Metric::Canberra => canberra(p, q),
            Metric::CanberraScaled => canberra_scaled(p, q),
            Metric::CosineDistance => Ok((1.0 - cosine_similarity(p, q)?).max(0.0)),
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "canberra" => Ok(Metric::Canberra),
            "canberra-scaled" | "scaled" => Ok(Metric::CanberraScaled),
            "cosine" | "cosine-distance" => Ok(Metric::CosineDistance),
            other => Err(Error::InvalidArgument(format!("unknown metric {other:?}"))),
        }
    }
}

/// Symmetric matrix of pairwise distances with a zero diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    pub names: Vec<String>,
    pub metric: String,
    data: Vec<f64>,
}

impl DistanceMatrix {
    /// Builds from a full row-major matrix, checking symmetry, a zero diagonal
    /// and finite non-negative entries.
    pub fn from_full(names: Vec<String>, metric: impl Into<String>, data: Vec<f64>) -> Result<Self> {
        let n = names.len();
        if data.len() != n * n {
            return Err(Error::LengthMismatch(data.len(), n * n));
        }
        for i in 0..n {
            if data[i * n + i] != 0.0 {
                return Err(Error::InvalidArgument(format!("nonzero diagonal at {i}")));
            }
            for j in 0..n {
                let v = data[i * n + j];
                if !v.is_finite() || v < 0.0 || v != data[j * n + i] {
                    return Err(Error::InvalidArgument(format!("bad entry at ({i}, {j})")));
                }
            }
        }
        Ok(DistanceMatrix {
            names,
            metric: metric.into(),
            data,
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.len() + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        let n = self.len();
        &self.data[i * n..(i + 1) * n]
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for name in &self.names {
            out.push(',');
            out.push_str(&csv_field(name));
        }
        out.push('\n');
        for (i, name) in self.names.iter().enumerate() {
            out.push_str(&csv_field(name));
            for v in self.row(i) {
                out.push(',');
                out.push_str(&v.to_string());
            }
            out.push('\n');
        }
        out
    }
}

/// All pairwise distances between named vectors.
pub fn pairwise_compare<S: AsRef<[f64]> + Sync>(
    items: &[(&str, S)],
    metric: Metric,
) -> Result<DistanceMatrix> {
    let n = items.len();
    if n < 2 {
        return Err(Error::InvalidArgument("need at least two vectors to compare".into()));
    }
    let mut seen = HashSet::new();
    for (name, _) in items {
        if !seen.insert(*name) {
            return Err(Error::DuplicateName(name.to_string()));
        }
    }
    let rows: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|i| {
            (0..n)
                .map(|j| match i.cmp(&j) {
                    std::cmp::Ordering::Equal => Ok(0.0),
                    std::cmp::Ordering::Less => metric.distance(items[i].1.as_ref(), items[j].1.as_ref()),
                    std::cmp::Ordering::Greater => metric.distance(items[j].1.as_ref(), items[i].1.as_ref()),
                })
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<_>>()?;
    DistanceMatrix::from_full(
        items.iter().map(|(n, _)| n.to_string()).collect(),
        metric.tag(),
        rows.concat(),
    )
}
