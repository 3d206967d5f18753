//! Summary statistics with compensated summation.

use serde::{Deserialize, Serialize};

/// Neumaier-compensated sum; independent of evaluation order up to the
/// final rounding.
pub fn sum(values: &[f64]) -> f64 {
    let mut s = 0.0;
    let mut c = 0.0;
    for &v in values {
        let t = s + v;
        if s.abs() >= v.abs() {
            c += (s - t) + v;
        } else {
            c += (v - t) + s;
        }
        s = t;
    }
    s + c
}

/// Arithmetic mean; NaN for an empty slice.
pub fn mean(values: &[f64]) -> f64 {
    if values.is_empty() {
        return f64::NAN;
    }
    sum(values) / values.len() as f64
}

/// Sample standard deviation (n − 1 denominator); 0 for fewer than two values.
pub fn std_dev(values: &[f64]) -> f64 {
    if values.len() < 2 {
        return 0.0;
    }
    let m = mean(values);
    let sq: Vec<f64> = values.iter().map(|v| (v - m) * (v - m)).collect();
    (sum(&sq) / (values.len() - 1) as f64).sqrt()
}

/// Linear-interpolated quantile of already sorted data, `p ∈ [0, 1]`.
pub fn quantile_sorted(sorted: &[f64], p: f64) -> f64 {
    if sorted.is_empty() {
        return f64::NAN;
    }
    let pos = p.clamp(0.0, 1.0) * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - lo as f64)
}

/// Mean, spread and the 5/25/50/75/95 % quantiles.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub n: usize,
    pub mean: f64,
    pub sd: f64,
    pub min: f64,
    pub max: f64,
    pub q05: f64,
    pub q25: f64,
    pub q50: f64,
    pub q75: f64,
    pub q95: f64,
}

pub fn summarize(values: &[f64]) -> Summary {
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let q = |p| quantile_sorted(&sorted, p);
    Summary {
        n: values.len(),
        mean: mean(values),
        sd: std_dev(values),
        min: sorted.first().copied().unwrap_or(f64::NAN),
        max: sorted.last().copied().unwrap_or(f64::NAN),
        q05: q(0.05),
        q25: q(0.25),
        q50: q(0.5),
        q75: q(0.75),
        q95: q(0.95),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HistogramBin {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

/// Equal-width histogram over the data range. A constant sample lands in a
/// single bin.
pub fn histogram(values: &[f64], bins: usize) -> Vec<HistogramBin> {
    if values.is_empty() || bins == 0 {
        return Vec::new();
    }
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if hi <= lo {
        return vec![HistogramBin {
            lo,
            hi,
            count: values.len(),
        }];
    }
    let width = (hi - lo) / bins as f64;
    let mut out: Vec<HistogramBin> = (0..bins)
        .map(|i| HistogramBin {
            lo: lo + width * i as f64,
            hi: if i + 1 == bins { hi } else { lo + width * (i + 1) as f64 },
            count: 0,
        })
        .collect();
    for &v in values {
        let i = (((v - lo) / width) as usize).min(bins - 1);
        out[i].count += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn compensated_sum_beats_naive() {
        let v = [1e16, 1.0, -1e16];
        assert_eq!(sum(&v), 1.0);
    }

    #[test]
    fn quantiles_of_small_sample() {
        let s = summarize(&[4.0, 1.0, 3.0, 2.0, 5.0]);
        assert_eq!(s.q50, 3.0);
        assert_eq!(s.q25, 2.0);
        assert_eq!((s.min, s.max), (1.0, 5.0));
    }

    #[test]
    fn histogram_counts_everything() {
        let v: Vec<f64> = (0..1000).map(|i| i as f64).collect();
        let h = histogram(&v, 50);
        assert_eq!(h.len(), 50);
        assert_eq!(h.iter().map(|b| b.count).sum::<usize>(), 1000);
        assert_eq!(histogram(&[2.0, 2.0], 50).len(), 1);
    }

    proptest! {
        #[test]
        fn mean_is_order_invariant(mut v in proptest::collection::vec(-1e6f64..1e6, 1..200)) {
            let a = mean(&v);
            v.reverse();
            prop_assert!((a - mean(&v)).abs() <= 1e-9 * a.abs().max(1.0));
        }

        #[test]
        fn quantiles_are_monotone(v in proptest::collection::vec(-1e3f64..1e3, 1..100)) {
            let s = summarize(&v);
            prop_assert!(s.min <= s.q05 && s.q05 <= s.q25 && s.q25 <= s.q50);
            prop_assert!(s.q50 <= s.q75 && s.q75 <= s.q95 && s.q95 <= s.max);
        }
    }
}
