pub const ENTROPY_BINS: usize = 10;

/// Shannon entropy in bits of a 10-bin equal-width histogram over
/// `[min, max]` of the values. A constant (or empty) vector has entropy 0.
pub fn signature_entropy(values: &[f64]) -> f64 {
    let Some(lo) = values.iter().copied().reduce(f64::min) else {
        return 0.0;
    };
    let hi = values.iter().copied().fold(lo, f64::max);
    if hi == lo {
        return 0.0;
    }
    let width = hi - lo;
    let mut counts = [0usize; ENTROPY_BINS];
    for &v in values {
        let bin = (((v - lo) / width) * ENTROPY_BINS as f64) as usize;
        counts[bin.min(ENTROPY_BINS - 1)] += 1;
    }
    let n = values.len() as f64;
    counts
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / n;
            -p * p.log2()
        })
        .sum()
}
