//! Benchmark harness: sample every signal, reconstruct it with each method,
//! score the reconstructions and aggregate the scores across datasets.
//!
//! Two experiment modes are supported. `FixedThreshold` samples every signal
//! with one Lebesgue threshold. `Budget` tunes one threshold per dataset so
//! that Lebesgue sampling keeps no more than a target fraction of the points,
//! and compares it with periodic sampling at the same fraction.

pub mod dataset;
pub mod geometry;
pub mod report;
pub mod synthetic;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metrics::{
    self, aggregate_report, rank_methods, DatasetScores, MethodScore, MethodSummary,
};
use crate::reconstruct;
use crate::sampling::{lebesgue_sample, riemann_sample, tune_threshold, SampleBudget};
use crate::types::{series_equal_length_check, DatasetBundle, Method, ReconstructionParams};

pub use dataset::{discover_datasets, load_ucr_dataset, DataFormat, DatasetFiles};
pub use geometry::monte_carlo_convexity_area;
pub use report::{emit_report, ReportFormat};
pub use synthetic::{generate_synthetic_corpus, CorpusSpec, SignalKind};

pub const DEFAULT_THRESHOLD: f64 = 0.05;
pub const DEFAULT_TARGET_FRACTION: f64 = 0.15;

/// One in this many signals gets its reconstructions checked against the
/// sampled knots.
const KNOT_CHECK_STRIDE: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExperimentMode {
    FixedThreshold,
    Budget,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub mode: ExperimentMode,
    pub threshold: f64,
    pub target_fraction: f64,
    /// Reconstruction parameters; the threshold inside is replaced by the
    /// threshold actually used on each dataset.
    pub params: ReconstructionParams,
    pub methods: Vec<Method>,
    pub seed: u64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            mode: ExperimentMode::FixedThreshold,
            threshold: DEFAULT_THRESHOLD,
            target_fraction: DEFAULT_TARGET_FRACTION,
            params: ReconstructionParams::with_threshold(DEFAULT_THRESHOLD),
            methods: Method::ALL.to_vec(),
            seed: 0,
        }
    }
}

impl ExperimentConfig {
    pub fn budget() -> Self {
        ExperimentConfig {
            mode: ExperimentMode::Budget,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.methods.is_empty() {
            return Err(Error::invalid("no reconstruction methods configured"));
        }
        ReconstructionParams {
            threshold: self.threshold,
            ..self.params
        }
        .validate()?;
        SampleBudget::new(self.target_fraction)?;
        Ok(())
    }

    /// Labels of the scored (regime, method) pairs, in report order.
    fn labelled_methods(&self) -> Vec<(Regime, Method, String)> {
        match self.mode {
            ExperimentMode::FixedThreshold => self
                .methods
                .iter()
                .map(|&m| (Regime::Lebesgue, m, m.display_name().to_string()))
                .collect(),
            ExperimentMode::Budget => {
                let lebesgue = self
                    .methods
                    .iter()
                    .map(|&m| (Regime::Lebesgue, m, format!("L {m}")));
                // Event-aware methods rely on the tolerated-region guarantee,
                // which periodic sampling does not provide.
                let riemann = self
                    .methods
                    .iter()
                    .filter(|m| !m.is_event_aware())
                    .map(|&m| (Regime::Riemann, m, format!("R {m}")));
                lebesgue.chain(riemann).collect()
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Regime {
    Lebesgue,
    Riemann,
}

/// Everything a benchmark run produced, plus the configuration that made it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MethodReport {
    pub name: String,
    pub config: ExperimentConfig,
    pub datasets: Vec<DatasetScores>,
    pub summary: Vec<MethodSummary>,
}

impl MethodReport {
    pub fn method_names(&self) -> Vec<&str> {
        self.summary
            .iter()
            .map(|s| s.method_name.as_str())
            .collect()
    }

    pub fn summary_for(&self, method_name: &str) -> Option<&MethodSummary> {
        self.summary.iter().find(|s| s.method_name == method_name)
    }
}

struct SignalResult {
    lebesgue_fraction: f64,
    riemann_fraction: f64,
    abruptness: f64,
    rmse: Vec<f64>,
}

/// Scores every configured method on one dataset.
pub fn score_dataset(bundle: &DatasetBundle, config: &ExperimentConfig) -> Result<DatasetScores> {
    config.validate()?;
    let bundle = series_equal_length_check(bundle.clone())?.normalized();
    let budget = SampleBudget::new(config.target_fraction)?;
    let threshold = match config.mode {
        ExperimentMode::FixedThreshold => config.threshold,
        ExperimentMode::Budget => tune_threshold(&bundle, budget)?.threshold,
    };
    let params = ReconstructionParams {
        threshold,
        ..config.params
    };
    let labelled = config.labelled_methods();
    let needs_riemann = labelled.iter().any(|(r, _, _)| *r == Regime::Riemann);

    let per_signal: Vec<SignalResult> = bundle
        .signals
        .par_iter()
        .enumerate()
        .map(|(i, signal)| {
            let lebesgue = lebesgue_sample(signal, threshold)?;
            let riemann = needs_riemann.then(|| riemann_sample(signal, budget));
            let mut rmse = Vec::with_capacity(labelled.len());
            for (regime, method, label) in &labelled {
                let sampled = match regime {
                    Regime::Lebesgue => &lebesgue,
                    Regime::Riemann => riemann.as_ref().unwrap(),
                };
                let rec = reconstruct(*method, sampled, &params);
                if i % KNOT_CHECK_STRIDE == 0 {
                    if let Some(index) = rec.knot_violation(sampled.points()) {
                        return Err(Error::Invariant(format!(
                            "{label} does not reproduce the knot at index {index} of signal {i} in '{}'",
                            bundle.name
                        )));
                    }
                }
                rmse.push(metrics::rmse(signal.values(), &rec.values)?);
            }
            Ok(SignalResult {
                lebesgue_fraction: lebesgue.fraction(),
                riemann_fraction: riemann.as_ref().map_or(0.0, |r| r.fraction()),
                abruptness: if signal.len() >= 2 {
                    metrics::abruptness(signal.values())?
                } else {
                    0.0
                },
                rmse,
            })
        })
        .collect::<Result<_>>()?;

    let scores = labelled
        .iter()
        .enumerate()
        .map(|(m, (_, _, label))| {
            MethodScore::new(
                label.clone(),
                per_signal.iter().map(|r| r.rmse[m]).collect(),
            )
        })
        .collect();
    let column_mean =
        |f: fn(&SignalResult) -> f64| metrics::mean(&per_signal.iter().map(f).collect::<Vec<_>>());
    Ok(DatasetScores {
        dataset: bundle.name.clone(),
        signals: bundle.signals.len(),
        length: bundle.signal_length(),
        threshold,
        lebesgue_fraction: column_mean(|r| r.lebesgue_fraction),
        riemann_fraction: needs_riemann.then(|| column_mean(|r| r.riemann_fraction)),
        abruptness: column_mean(|r| r.abruptness),
        scores: rank_methods(scores)?,
    })
}

/// Runs one dataset and wraps it in a report named after the dataset.
pub fn run_experiment(bundle: &DatasetBundle, config: &ExperimentConfig) -> Result<MethodReport> {
    run_benchmark(bundle.name.clone(), std::slice::from_ref(bundle), config)
}

/// Runs every dataset in order and aggregates the results.
pub fn run_benchmark(
    name: impl Into<String>,
    bundles: &[DatasetBundle],
    config: &ExperimentConfig,
) -> Result<MethodReport> {
    let per_dataset = bundles
        .iter()
        .map(|b| score_dataset(b, config))
        .collect::<Result<Vec<_>>>()?;
    let aggregate = aggregate_report(per_dataset)?;
    Ok(MethodReport {
        name: name.into(),
        config: config.clone(),
        datasets: aggregate.datasets,
        summary: aggregate.summary,
    })
}
