//! Lebesgue (send-on-delta) and Riemann (periodic) samplers, plus tuning of a
//! Lebesgue threshold to a sample budget.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::types::{DatasetBundle, Knot, SampledSeries, TimeSeries, ToleratedRegion};

/// Target fraction of points to keep, in `(0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleBudget {
    target_fraction: f64,
}

impl SampleBudget {
    pub fn new(target_fraction: f64) -> Result<Self> {
        if !(target_fraction > 0.0 && target_fraction <= 1.0) {
            return Err(Error::invalid(format!(
                "budget fraction must lie in (0, 1], got {target_fraction}"
            )));
        }
        Ok(SampleBudget { target_fraction })
    }

    pub fn target_fraction(&self) -> f64 {
        self.target_fraction
    }
}

fn check_threshold(threshold: f64) -> Result<()> {
    if threshold.is_nan() || threshold < 0.0 || threshold.is_infinite() {
        return Err(Error::invalid(format!(
            "threshold must be finite and non-negative, got {threshold}"
        )));
    }
    Ok(())
}

/// Send-on-delta sampling: index 0 is always kept, then a point is kept
/// exactly when it differs from the last kept value by at least `threshold`.
/// The final point is not forced.
pub fn lebesgue_sample(series: &TimeSeries, threshold: f64) -> Result<SampledSeries> {
    check_threshold(threshold)?;
    let values = series.values();
    let mut points = vec![Knot::new(0, values[0])];
    let mut last = values[0];
    for (index, &value) in values.iter().enumerate().skip(1) {
        if (value - last).abs() >= threshold {
            points.push(Knot::new(index, value));
            last = value;
        }
    }
    SampledSeries::new(points, values.len(), threshold)
}

/// Number of points [`lebesgue_sample`] would keep, without allocating.
pub fn lebesgue_count(values: &[f64], threshold: f64) -> usize {
    let mut last = values[0];
    let mut count = 1;
    for &value in &values[1..] {
        if (value - last).abs() >= threshold {
            count += 1;
            last = value;
        }
    }
    count
}

/// Number of points kept by periodic sampling of a length-`n` signal.
pub fn riemann_count(n: usize, budget: SampleBudget) -> usize {
    // The slack keeps products such as 0.15 * 100 from rounding up because of
    // representation error.
    let k = (budget.target_fraction() * n as f64 - 1e-9).ceil() as usize;
    k.clamp(1, n)
}

/// Periodic sampling on an even grid that includes both endpoints.
pub fn riemann_indices(n: usize, budget: SampleBudget) -> Vec<usize> {
    let k = riemann_count(n, budget);
    if k == 1 {
        return vec![0];
    }
    let step = (n - 1) as f64 / (k - 1) as f64;
    let mut indices: Vec<usize> = (0..k)
        .map(|j| ((j as f64 * step).round_ties_even() as usize).min(n - 1))
        .collect();
    indices.dedup();
    indices
}

pub fn riemann_sample(series: &TimeSeries, budget: SampleBudget) -> SampledSeries {
    let values = series.values();
    let points = riemann_indices(values.len(), budget)
        .into_iter()
        .map(|i| Knot::new(i, values[i]))
        .collect();
    SampledSeries::new(points, values.len(), 0.0)
        .expect("riemann indices are valid by construction")
}

pub fn tolerated_region(last_sample_value: f64, threshold: f64) -> ToleratedRegion {
    ToleratedRegion {
        center: last_sample_value,
        half_width: threshold,
    }
}

/// Result of [`tune_threshold`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TunedThreshold {
    pub threshold: f64,
    pub achieved_fraction: f64,
}

/// Mean over signals of the fraction of points Lebesgue sampling keeps.
///
/// Summation runs in signal order so the result does not depend on how the
/// per-signal counts were scheduled.
pub fn mean_lebesgue_fraction(bundle: &DatasetBundle, threshold: f64) -> f64 {
    let fractions: Vec<f64> = bundle
        .signals
        .par_iter()
        .map(|s| lebesgue_count(s.values(), threshold) as f64 / s.len() as f64)
        .collect();
    fractions.iter().sum::<f64>() / fractions.len() as f64
}

/// Largest absolute difference between two values of the same signal.
fn max_pairwise_difference(bundle: &DatasetBundle) -> f64 {
    bundle
        .signals
        .iter()
        .map(|s| {
            let (lo, hi) = s
                .values()
                .iter()
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
                    (lo.min(v), hi.max(v))
                });
            hi - lo
        })
        .fold(0.0, f64::max)
}

/// Smallest within-signal difference `|y_j - y_k|` that is `>= floor`.
fn smallest_difference_at_least(bundle: &DatasetBundle, floor: f64) -> Option<f64> {
    bundle
        .signals
        .par_iter()
        .filter_map(|s| {
            let v = s.values();
            let mut best: Option<f64> = None;
            for (j, &a) in v.iter().enumerate() {
                for &b in &v[..j] {
                    let d = (a - b).abs();
                    if d >= floor && best.is_none_or(|x| d < x) {
                        best = Some(d);
                    }
                }
            }
            best
        })
        .min_by(f64::total_cmp)
}

/// Picks a Lebesgue threshold so the mean per-signal sampled fraction stays at
/// or below the budget.
///
/// The sampled fraction only changes at thresholds equal to some
/// within-signal difference `|y_j - y_k|`, so the candidate grid is `{0}`
/// together with those differences. The fraction is not monotone in the
/// threshold, so the search bisects over the bit patterns of non-negative
/// `f64`s for a boundary where the threshold just below is over budget and the
/// returned one is within it; the returned value is then snapped to the
/// candidate grid. The next-smaller candidate is therefore always over budget.
pub fn tune_threshold(bundle: &DatasetBundle, budget: SampleBudget) -> Result<TunedThreshold> {
    if bundle.signals.is_empty() {
        return Err(Error::invalid(
            "cannot tune a threshold on an empty dataset",
        ));
    }
    let target = budget.target_fraction();
    // Every difference is >= 0, so threshold 0 keeps everything.
    let at_zero = mean_lebesgue_fraction(bundle, 0.0);
    if at_zero <= target {
        return Ok(TunedThreshold {
            threshold: 0.0,
            achieved_fraction: at_zero,
        });
    }
    let largest = max_pairwise_difference(bundle);
    let at_largest = mean_lebesgue_fraction(bundle, largest);
    if at_largest > target {
        return Err(Error::InfeasibleBudget {
            min_fraction: at_largest,
            target,
        });
    }

    // Invariant: fraction(lo) > target, fraction(hi) <= target. Bit patterns of
    // non-negative floats are ordered like the floats themselves.
    let mut lo = 0.0f64.to_bits();
    let mut hi = largest.to_bits();
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if mean_lebesgue_fraction(bundle, f64::from_bits(mid)) <= target {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let boundary = f64::from_bits(hi);
    // The fraction is constant on (d_k, d_{k+1}], so the smallest candidate at
    // or above the boundary behaves exactly like the boundary itself.
    let threshold = smallest_difference_at_least(bundle, boundary).unwrap_or(boundary);
    Ok(TunedThreshold {
        threshold,
        achieved_fraction: mean_lebesgue_fraction(bundle, threshold),
    })
}
