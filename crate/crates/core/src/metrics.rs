//! Reconstruction scoring and method ranking.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Root-mean-square difference between two equal-length sequences.
pub fn rmse(original: &[f64], reconstructed: &[f64]) -> Result<f64> {
    if original.len() != reconstructed.len() {
        return Err(Error::Shape(format!(
            "RMSE needs equal lengths, got {} and {}",
            original.len(),
            reconstructed.len()
        )));
    }
    if original.is_empty() {
        return Err(Error::invalid("RMSE of empty sequences"));
    }
    let sum: f64 = original
        .iter()
        .zip(reconstructed)
        .map(|(a, b)| (a - b) * (a - b))
        .sum();
    Ok((sum / original.len() as f64).sqrt())
}

/// Population standard deviation of the first differences.
pub fn abruptness(values: &[f64]) -> Result<f64> {
    if values.len() < 2 {
        return Err(Error::invalid("abruptness needs at least two values"));
    }
    let diffs: Vec<f64> = values.windows(2).map(|w| w[1] - w[0]).collect();
    let n = diffs.len() as f64;
    let mean = diffs.iter().sum::<f64>() / n;
    let var = diffs.iter().map(|d| (d - mean) * (d - mean)).sum::<f64>() / n;
    Ok(var.sqrt())
}

pub fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

pub fn median(values: &[f64]) -> f64 {
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len();
    if n == 0 {
        f64::NAN
    } else if n % 2 == 1 {
        sorted[n / 2]
    } else {
        (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0
    }
}

/// One method's scores on one dataset.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MethodScore {
    pub method_name: String,
    pub per_signal_rmse: Vec<f64>,
    pub mean_rmse: f64,
    pub median_rmse: f64,
    /// 1-based position within the dataset; 0 until ranked.
    pub rank_position: usize,
}

impl MethodScore {
    pub fn new(method_name: impl Into<String>, per_signal_rmse: Vec<f64>) -> Self {
        MethodScore {
            method_name: method_name.into(),
            mean_rmse: mean(&per_signal_rmse),
            median_rmse: median(&per_signal_rmse),
            per_signal_rmse,
            rank_position: 0,
        }
    }
}

/// Sorts by mean RMSE (ties by method name) and assigns positions `1..=M`.
pub fn rank_methods(mut scores: Vec<MethodScore>) -> Result<Vec<MethodScore>> {
    if scores.is_empty() {
        return Err(Error::invalid("no method scores to rank"));
    }
    let signals = scores[0].per_signal_rmse.len();
    if let Some(s) = scores.iter().find(|s| s.per_signal_rmse.len() != signals) {
        return Err(Error::invalid(format!(
            "method '{}' has {} signal scores, expected {signals}",
            s.method_name,
            s.per_signal_rmse.len()
        )));
    }
    scores.sort_by(|a, b| {
        a.mean_rmse
            .total_cmp(&b.mean_rmse)
            .then_with(|| a.method_name.cmp(&b.method_name))
    });
    for (i, s) in scores.iter_mut().enumerate() {
        s.rank_position = i + 1;
    }
    Ok(scores)
}

/// Ranked scores for one dataset plus what the sampler did on it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DatasetScores {
    pub dataset: String,
    pub signals: usize,
    pub length: usize,
    /// Lebesgue threshold used (tuned in budget mode).
    pub threshold: f64,
    /// Mean per-signal fraction of points kept by Lebesgue sampling.
    pub lebesgue_fraction: f64,
    /// Fraction kept by Riemann sampling, when that regime ran.
    pub riemann_fraction: Option<f64>,
    /// Mean per-signal abruptness of the normalised signals.
    pub abruptness: f64,
    pub scores: Vec<MethodScore>,
}

/// Cross-dataset summary for one method.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MethodSummary {
    pub method_name: String,
    pub position: usize,
    pub mean_rmse: f64,
    pub median_rmse: f64,
    pub mean_rank: f64,
    pub wins: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AggregateReport {
    pub datasets: Vec<DatasetScores>,
    pub summary: Vec<MethodSummary>,
}

/// Cross-dataset mean RMSE, median of dataset means, mean rank and win count
/// (rank 1) per method. Summary rows are ordered by mean RMSE, then name.
pub fn aggregate_report(per_dataset: Vec<DatasetScores>) -> Result<AggregateReport> {
    let Some(first) = per_dataset.first() else {
        return Err(Error::invalid("no datasets to aggregate"));
    };
    let mut names: Vec<String> = first.scores.iter().map(|s| s.method_name.clone()).collect();
    if names.is_empty() {
        return Err(Error::invalid(format!(
            "dataset '{}' has no methods",
            first.dataset
        )));
    }
    names.sort();
    for d in &per_dataset {
        let mut these: Vec<&str> = d.scores.iter().map(|s| s.method_name.as_str()).collect();
        these.sort_unstable();
        if these != names.iter().map(String::as_str).collect::<Vec<_>>() {
            return Err(Error::invalid(format!(
                "dataset '{}' has method set {these:?}, expected {names:?}",
                d.dataset
            )));
        }
        if d.scores.iter().any(|s| s.rank_position == 0) {
            return Err(Error::invalid(format!(
                "dataset '{}' is not ranked",
                d.dataset
            )));
        }
    }

    let mut summary: Vec<MethodSummary> = names
        .into_iter()
        .map(|name| {
            let scores: Vec<&MethodScore> = per_dataset
                .iter()
                .map(|d| d.scores.iter().find(|s| s.method_name == name).unwrap())
                .collect();
            let means: Vec<f64> = scores.iter().map(|s| s.mean_rmse).collect();
            let ranks: Vec<f64> = scores.iter().map(|s| s.rank_position as f64).collect();
            MethodSummary {
                mean_rmse: mean(&means),
                median_rmse: median(&means),
                mean_rank: mean(&ranks),
                wins: scores.iter().filter(|s| s.rank_position == 1).count(),
                method_name: name,
                position: 0,
            }
        })
        .collect();
    summary.sort_by(|a, b| {
        a.mean_rmse
            .total_cmp(&b.mean_rmse)
            .then_with(|| a.method_name.cmp(&b.method_name))
    });
    for (i, s) in summary.iter_mut().enumerate() {
        s.position = i + 1;
    }
    Ok(AggregateReport {
        datasets: per_dataset,
        summary,
    })
}
