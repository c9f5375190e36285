//! Low-dimensional projection of signature vectors via a thin SVD of the
//! column-standardized graph × aggregate matrix.

use nalgebra::DMatrix;

use crate::aggregate::SignatureVector;
use crate::error::{Error, Result};
use crate::features::csv_field;

#[derive(Debug, Clone, PartialEq)]
pub struct ProjectionResult {
    pub names: Vec<String>,
    /// `coordinates[g][c]` is graph `g` on component `c`.
    pub coordinates: Vec<Vec<f64>>,
    /// Non-increasing, one per component.
    pub singular_values: Vec<f64>,
}

impl ProjectionResult {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("graph");
        for c in 1..=self.singular_values.len() {
            out.push_str(&format!(",pc{c}"));
        }
        out.push('\n');
        for (name, row) in self.names.iter().zip(&self.coordinates) {
            out.push_str(&csv_field(name));
            for v in row {
                out.push(',');
                out.push_str(&v.to_string());
            }
            out.push('\n');
        }
        out
    }
}

/// Columns shifted to zero mean and scaled to unit population variance;
/// constant columns become zero.
pub fn standardize(rows: &[Vec<f64>]) -> DMatrix<f64> {
    let k = rows.len();
    let d = rows.first().map_or(0, Vec::len);
    let mut m = DMatrix::from_fn(k, d, |i, j| rows[i][j]);
    for j in 0..d {
        let mut col = m.column_mut(j);
        if col.iter().all(|&v| v == col[0]) {
            col.fill(0.0);
            continue;
        }
        let mean = col.iter().sum::<f64>() / k as f64;
        col.add_scalar_mut(-mean);
        let sd = (col.iter().map(|v| v * v).sum::<f64>() / k as f64).sqrt();
        col /= sd;
    }
    m
}

/// Singular values of `m`, sorted non-increasing.
pub fn singular_values(m: &DMatrix<f64>) -> Vec<f64> {
    let mut s: Vec<f64> = m.singular_values().iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

pub fn svd_project(sigs: &[SignatureVector], components: usize) -> Result<ProjectionResult> {
    let k = sigs.len();
    if k < 2 {
        return Err(Error::InvalidArgument("projection needs at least two signatures".into()));
    }
    let d = sigs[0].values.len();
    if let Some(bad) = sigs.iter().find(|s| s.values.len() != d) {
        return Err(Error::LengthMismatch(bad.values.len(), d));
    }
    if components == 0 || components > k.min(d) {
        return Err(Error::InvalidArgument(format!(
            "component count {components} outside 1..={}",
            k.min(d)
        )));
    }

    let rows: Vec<Vec<f64>> = sigs.iter().map(|s| s.values.clone()).collect();
    let w = standardize(&rows);
    let svd = w.svd(true, false);
    let u = svd.u.expect("left singular vectors requested");

    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));
    order.truncate(components);

    let mut coordinates = vec![vec![0.0; components]; k];
    let mut values = Vec::with_capacity(components);
    for (c, &src) in order.iter().enumerate() {
        let sigma = svd.singular_values[src].max(0.0);
        values.push(sigma);
        let col: Vec<f64> = (0..k).map(|g| u[(g, src)] * sigma).collect();
        // make the largest-magnitude entry non-negative
        let pivot = col
            .iter()
            .copied()
            .fold(0.0f64, |acc, v| if v.abs() > acc.abs() { v } else { acc });
        let sign = if pivot < 0.0 { -1.0 } else { 1.0 };
        for (g, v) in col.into_iter().enumerate() {
            coordinates[g][c] = if sigma == 0.0 { 0.0 } else { sign * v };
        }
    }

    Ok(ProjectionResult {
        names: sigs.iter().map(|s| s.name.clone()).collect(),
        coordinates,
        singular_values: values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aggregate::SIGNATURE_LEN;

    fn sig(name: &str, f: impl Fn(usize) -> f64) -> SignatureVector {
        SignatureVector::new(name, (0..SIGNATURE_LEN).map(f).collect()).unwrap()
    }

    #[test]
    fn identical_signatures_project_to_origin() {
        let sigs: Vec<_> = (0..4).map(|i| sig(&format!("g{i}"), |j| j as f64 * 0.5)).collect();
        let p = svd_project(&sigs, 3).unwrap();
        assert!(p.singular_values.iter().all(|&s| s == 0.0));
        assert!(p.coordinates.iter().flatten().all(|&v| v == 0.0));
    }

    #[test]
    fn one_varying_column_is_rank_one() {
        let sigs: Vec<_> = (0..5)
            .map(|i| sig(&format!("g{i}"), move |j| if j == 7 { i as f64 * i as f64 } else { 1.0 }))
            .collect();
        let p = svd_project(&sigs, 5).unwrap();
        assert!(p.singular_values[0] > 1.0);
        assert!(p.singular_values[1..].iter().all(|&s| s < 1e-12));
        // a single standardized column has norm sqrt(k)
        assert!((p.singular_values[0] - 5f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn sign_convention_and_csv() {
        let sigs: Vec<_> = (0..3)
            .map(|i| sig(&format!("g{i}"), move |j| ((i * 7 + j * 3) % 5) as f64))
            .collect();
        let p = svd_project(&sigs, 2).unwrap();
        for c in 0..2 {
            let pivot = p
                .coordinates
                .iter()
                .map(|r| r[c])
                .fold(0.0f64, |acc, v| if v.abs() > acc.abs() { v } else { acc });
            assert!(pivot >= 0.0);
        }
        assert!(p.singular_values[0] >= p.singular_values[1]);
        assert!(p.to_csv().starts_with("graph,pc1,pc2\ng0,"));
    }

    #[test]
    fn component_range() {
        let sigs: Vec<_> = (0..3).map(|i| sig(&format!("g{i}"), move |j| (i + j) as f64)).collect();
        assert!(svd_project(&sigs, 0).is_err());
        assert!(svd_project(&sigs, 4).is_err());
        assert!(svd_project(&sigs[..1], 1).is_err());
    }
}
