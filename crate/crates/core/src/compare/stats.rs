//! Two-sample tests over feature columns.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use statrs::function::erf::erfc;

use crate::error::{Error, Result};
use crate::features::{Feature, FeatureMatrix};

/// Samples up to this combined size use the exact permutation distribution.
pub const EXACT_LIMIT: usize = 12;

const REL_EPS: f64 = 1e-9;

/// Midranks (1-based) of the pooled sample, ties sharing their average rank.
fn midranks(pooled: &[f64]) -> (Vec<f64>, f64) {
    let mut order: Vec<usize> = (0..pooled.len()).collect();
    order.sort_by(|&a, &b| pooled[a].total_cmp(&pooled[b]));
    let mut ranks = vec![0.0; pooled.len()];
    let mut tie_term = 0.0;
    let mut i = 0;
    while i < order.len() {
        let mut j = i + 1;
        while j < order.len() && pooled[order[j]] == pooled[order[i]] {
            j += 1;
        }
        let r = (i + j + 1) as f64 / 2.0;
        for &k in &order[i..j] {
            ranks[k] = r;
        }
        let t = (j - i) as f64;
        tie_term += t * t * t - t;
        i = j;
    }
    (ranks, tie_term)
}

/// Two-sided Mann-Whitney U p-value.
///
/// For at most [`EXACT_LIMIT`] pooled observations the p-value comes from
/// enumerating every assignment of the pooled midranks to the first sample.
/// Larger samples use the normal approximation with tie and continuity
/// corrections.
pub fn mann_whitney_u(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::InvalidArgument("Mann-Whitney needs two non-empty samples".into()));
    }
    let (na, nb) = (a.len(), b.len());
    let n = na + nb;
    let pooled: Vec<f64> = a.iter().chain(b).copied().collect();
    let (ranks, tie_term) = midranks(&pooled);
    let rank_sum: f64 = ranks[..na].iter().sum();

    if n <= EXACT_LIMIT {
        let (mut total, mut low, mut high) = (0u64, 0u64, 0u64);
        let tol = REL_EPS * rank_sum.abs().max(1.0);
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize != na {
                continue;
            }
            let s: f64 = (0..n).filter(|&k| mask >> k & 1 == 1).map(|k| ranks[k]).sum();
            total += 1;
            if s <= rank_sum + tol {
                low += 1;
            }
            if s >= rank_sum - tol {
                high += 1;
            }
        }
        let tail = low.min(high) as f64 / total as f64;
        return Ok((2.0 * tail).min(1.0));
    }

    let (na_f, nb_f, n_f) = (na as f64, nb as f64, n as f64);
    let u = rank_sum - na_f * (na_f + 1.0) / 2.0;
    let mean = na_f * nb_f / 2.0;
    let var = na_f * nb_f / 12.0 * ((n_f + 1.0) - tie_term / (n_f * (n_f - 1.0)));
    if var <= 0.0 {
        return Ok(1.0);
    }
    let z = ((u - mean).abs() - 0.5).max(0.0) / var.sqrt();
    Ok(erfc(z / std::f64::consts::SQRT_2).min(1.0))
}

/// Largest vertical gap between the two empirical CDFs.
pub fn ks_statistic(a: &[f64], b: &[f64]) -> f64 {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    x.sort_by(f64::total_cmp);
    y.sort_by(f64::total_cmp);
    let (nx, ny) = (x.len() as f64, y.len() as f64);
    let (mut i, mut j, mut d) = (0usize, 0usize, 0.0f64);
    while i < x.len() && j < y.len() {
        let v = x[i].min(y[j]);
        while i < x.len() && x[i] <= v {
            i += 1;
        }
        while j < y.len() && y[j] <= v {
            j += 1;
        }
        d = d.max((i as f64 / nx - j as f64 / ny).abs());
    }
    d
}

/// Survival function of the Kolmogorov distribution, `P(K > lambda)`.
pub fn kolmogorov_sf(lambda: f64) -> f64 {
    if lambda <= 0.0 {
        return 1.0;
    }
    if lambda < 1.18 {
        // theta-function form converges fast for small arguments
        let pi2 = std::f64::consts::PI * std::f64::consts::PI;
        let w = (2.0 * std::f64::consts::PI).sqrt() / lambda;
        let s: f64 = (1..=20)
            .map(|k| {
                let odd = (2 * k - 1) as f64;
                (-odd * odd * pi2 / (8.0 * lambda * lambda)).exp()
            })
            .sum();
        (1.0 - w * s).clamp(0.0, 1.0)
    } else {
        let s: f64 = (1..=100)
            .map(|k| {
                let k = k as f64;
                let sign = if k as u64 % 2 == 1 { 1.0 } else { -1.0 };
                sign * (-2.0 * k * k * lambda * lambda).exp()
            })
            .sum();
        (2.0 * s).clamp(0.0, 1.0)
    }
}

/// Two-sided asymptotic Kolmogorov-Smirnov p-value.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::InvalidArgument("KS test needs two non-empty samples".into()));
    }
    let d = ks_statistic(a, b);
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let effective = na * nb / (na + nb);
    Ok(kolmogorov_sf(effective.sqrt() * d))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TestKind {
    #[serde(rename = "mann-whitney")]
    MannWhitney,
    #[serde(rename = "ks")]
    KolmogorovSmirnov,
}

impl TestKind {
    pub fn tag(self) -> &'static str {
        match self {
            TestKind::MannWhitney => "mann-whitney",
            TestKind::KolmogorovSmirnov => "ks",
        }
    }

    pub fn p_value(self, a: &[f64], b: &[f64]) -> Result<f64> {
        match self {
            TestKind::MannWhitney => mann_whitney_u(a, b),
            TestKind::KolmogorovSmirnov => ks_two_sample(a, b),
        }
    }
}

impl fmt::Display for TestKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for TestKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mw" | "mann-whitney" => Ok(TestKind::MannWhitney),
            "ks" | "kolmogorov-smirnov" => Ok(TestKind::KolmogorovSmirnov),
            other => Err(Error::InvalidArgument(format!("unknown test {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FeaturePValue {
    pub feature: Feature,
    pub p: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HypothesisReport {
    pub test: TestKind,
    pub p_values: Vec<FeaturePValue>,
    pub max_p: f64,
    pub mean_p: f64,
}

/// Column divided by its L2 norm; an all-zero column stays zero.
pub fn l2_normalized(column: &[f64]) -> Vec<f64> {
    let norm = column.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm == 0.0 {
        column.to_vec()
    } else {
        column.iter().map(|v| v / norm).collect()
    }
}

/// Runs `test` on each L2-normalized feature column of the two graphs.
pub fn hypothesis_compare(fa: &FeatureMatrix, fb: &FeatureMatrix, test: TestKind) -> Result<HypothesisReport> {
    if fa.is_empty() || fb.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let p_values = Feature::ALL
        .iter()
        .map(|&feature| {
            let a = l2_normalized(&fa.column(feature));
            let b = l2_normalized(&fb.column(feature));
            Ok(FeaturePValue {
                feature,
                p: test.p_value(&a, &b)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let max_p = p_values.iter().map(|f| f.p).fold(0.0, f64::max);
    let mean_p = p_values.iter().map(|f| f.p).sum::<f64>() / p_values.len() as f64;
    Ok(HypothesisReport {
        test,
        p_values,
        max_p,
        mean_p,
    })
}
