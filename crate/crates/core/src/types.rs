//! Domain types shared by every module, plus per-signal normalisation.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A uniformly indexed signal. The time axis is the integer sample index.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TimeSeries {
    values: Vec<f64>,
}

impl TimeSeries {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::invalid(
                "time series must contain at least one value",
            ));
        }
        if let Some(pos) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::invalid(format!(
                "time series value at index {pos} is not finite ({})",
                values[pos]
            )));
        }
        Ok(TimeSeries { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// Min-max normalisation to `[0, 1]`. A constant series maps to all zeros.
    pub fn normalize_unit_interval(&self) -> TimeSeries {
        let (min, max) = self
            .values
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
                (lo.min(v), hi.max(v))
            });
        let span = max - min;
        let values = if span > 0.0 {
            self.values.iter().map(|&v| (v - min) / span).collect()
        } else {
            vec![0.0; self.values.len()]
        };
        TimeSeries { values }
    }
}

/// Free-function form of [`TimeSeries::normalize_unit_interval`] that also
/// validates raw input.
pub fn normalize_unit_interval(values: &[f64]) -> Result<TimeSeries> {
    Ok(TimeSeries::new(values.to_vec())?.normalize_unit_interval())
}

/// A retained sample (or an inserted auxiliary point) that a reconstruction
/// must pass through exactly.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Knot {
    pub index: usize,
    pub value: f64,
}

impl Knot {
    pub const fn new(index: usize, value: f64) -> Self {
        Knot { index, value }
    }
}

/// Output of a sampler: the retained points, the length of the signal they
/// came from and the threshold used (zero for periodic sampling).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampledSeries {
    points: Vec<Knot>,
    source_length: usize,
    threshold: f64,
}

impl SampledSeries {
    pub fn new(points: Vec<Knot>, source_length: usize, threshold: f64) -> Result<Self> {
        if threshold.is_nan() || threshold < 0.0 || threshold.is_infinite() {
            return Err(Error::invalid(format!(
                "threshold must be finite and non-negative, got {threshold}"
            )));
        }
        let Some(first) = points.first() else {
            return Err(Error::invalid("sampled series needs at least one point"));
        };
        if first.index != 0 {
            return Err(Error::invalid(format!(
                "first sampled index must be 0, got {}",
                first.index
            )));
        }
        for pair in points.windows(2) {
            if pair[1].index <= pair[0].index {
                return Err(Error::invalid(format!(
                    "sampled indices must be strictly increasing ({} then {})",
                    pair[0].index, pair[1].index
                )));
            }
        }
        let last = points[points.len() - 1].index;
        if last >= source_length {
            return Err(Error::invalid(format!(
                "sampled index {last} out of range for source length {source_length}"
            )));
        }
        if let Some(k) = points.iter().find(|k| !k.value.is_finite()) {
            return Err(Error::invalid(format!(
                "sampled value at index {} is not finite",
                k.index
            )));
        }
        Ok(SampledSeries {
            points,
            source_length,
            threshold,
        })
    }

    pub fn points(&self) -> &[Knot] {
        &self.points
    }

    pub fn source_length(&self) -> usize {
        self.source_length
    }

    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Fraction of the source signal that was retained.
    pub fn fraction(&self) -> f64 {
        self.points.len() as f64 / self.source_length as f64
    }
}

/// The band `[center - half_width, center + half_width]` that every
/// un-captured point lies in under send-on-delta sampling.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ToleratedRegion {
    pub center: f64,
    pub half_width: f64,
}

impl ToleratedRegion {
    pub fn lower(&self) -> f64 {
        self.center - self.half_width
    }

    pub fn upper(&self) -> f64 {
        self.center + self.half_width
    }

    /// Strict containment, the relation un-captured points satisfy.
    pub fn contains_strictly(&self, value: f64) -> bool {
        (value - self.center).abs() < self.half_width
    }

    pub fn contains(&self, value: f64) -> bool {
        value >= self.lower() && value <= self.upper()
    }
}

/// Parameters of the event-aware reconstructors.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReconstructionParams {
    pub threshold: f64,
    pub tolerance_ratio: f64,
    pub previous_distance: usize,
    pub subsequent_min_distance: usize,
    pub subsequent_max_distance: Option<usize>,
}

impl ReconstructionParams {
    pub const DEFAULT_TOLERANCE_RATIO: f64 = 1.15;
    pub const DEFAULT_PREVIOUS_DISTANCE: usize = 3;
    pub const DEFAULT_SUBSEQUENT_MIN_DISTANCE: usize = 3;

    /// Defaults used in the reference experiments: ratio 1.15, distances 3/3,
    /// no upper bound on the subsequent distance.
    pub fn with_threshold(threshold: f64) -> Self {
        ReconstructionParams {
            threshold,
            tolerance_ratio: Self::DEFAULT_TOLERANCE_RATIO,
            previous_distance: Self::DEFAULT_PREVIOUS_DISTANCE,
            subsequent_min_distance: Self::DEFAULT_SUBSEQUENT_MIN_DISTANCE,
            subsequent_max_distance: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.threshold.is_finite() || self.threshold < 0.0 {
            return Err(Error::invalid(format!(
                "threshold must be finite and non-negative, got {}",
                self.threshold
            )));
        }
        // Infinite ratios are allowed: every interval then classifies Smooth.
        if self.tolerance_ratio.is_nan() || self.tolerance_ratio < 1.0 {
            return Err(Error::invalid(format!(
                "tolerance ratio must be >= 1, got {}",
                self.tolerance_ratio
            )));
        }
        Ok(())
    }

    /// Half-width of the increased tolerated region.
    pub fn tolerance(&self) -> f64 {
        self.threshold * self.tolerance_ratio
    }
}

/// Reconstruction methods known to the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Method {
    Zoh,
    Linear,
    Nearest,
    Pchip,
    ZeLi,
    ZeLiC,
    ZeChip,
    ZeChipC,
}

impl Method {
    pub const ALL: [Method; 8] = [
        Method::ZeChipC,
        Method::ZeLiC,
        Method::ZeChip,
        Method::ZeLi,
        Method::Zoh,
        Method::Pchip,
        Method::Linear,
        Method::Nearest,
    ];

    /// Name used in reports.
    pub fn display_name(self) -> &'static str {
        match self {
            Method::Zoh => "Zero",
            Method::Linear => "Linear",
            Method::Nearest => "Nearest",
            Method::Pchip => "PCHIP",
            Method::ZeLi => "ZeLi",
            Method::ZeLiC => "ZeLiC",
            Method::ZeChip => "ZeChip",
            Method::ZeChipC => "ZeChipC",
        }
    }

    /// Name accepted on the command line.
    pub fn cli_name(self) -> &'static str {
        match self {
            Method::Zoh => "zoh",
            Method::Linear => "linear",
            Method::Nearest => "nearest",
            Method::Pchip => "pchip",
            Method::ZeLi => "zeli",
            Method::ZeLiC => "zelic",
            Method::ZeChip => "zechip",
            Method::ZeChipC => "zechipc",
        }
    }

    /// Whether the method relies on the tolerated-region guarantee of
    /// event-based sampling.
    pub fn is_event_aware(self) -> bool {
        matches!(
            self,
            Method::ZeLi | Method::ZeLiC | Method::ZeChip | Method::ZeChipC
        )
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.display_name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        Method::ALL
            .into_iter()
            .find(|m| m.cli_name() == lower || m.display_name().to_ascii_lowercase() == lower)
            .ok_or_else(|| Error::invalid(format!("unknown method '{s}'")))
    }
}

/// A reconstructed signal on the integer grid `0..source_length`.
#[derive(Clone, Debug, PartialEq)]
pub struct Reconstruction {
    pub values: Vec<f64>,
    pub method: Method,
}

impl Reconstruction {
    /// Index of the first knot whose value is not reproduced exactly, if any.
    pub fn knot_violation(&self, knots: &[Knot]) -> Option<usize> {
        knots
            .iter()
            .find(|k| self.values.get(k.index) != Some(&k.value))
            .map(|k| k.index)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub source: String,
    pub format: String,
}

/// A named collection of equal-length signals.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DatasetBundle {
    pub name: String,
    pub signals: Vec<TimeSeries>,
    pub provenance: Provenance,
}

impl DatasetBundle {
    /// Builds a bundle and runs [`series_equal_length_check`] on it.
    pub fn new(
        name: impl Into<String>,
        signals: Vec<TimeSeries>,
        provenance: Provenance,
    ) -> Result<Self> {
        series_equal_length_check(DatasetBundle {
            name: name.into(),
            signals,
            provenance,
        })
    }

    pub fn signal_length(&self) -> usize {
        self.signals.first().map_or(0, TimeSeries::len)
    }

    pub fn normalized(&self) -> DatasetBundle {
        DatasetBundle {
            name: self.name.clone(),
            signals: self
                .signals
                .iter()
                .map(TimeSeries::normalize_unit_interval)
                .collect(),
            provenance: self.provenance.clone(),
        }
    }
}

/// Returns the bundle unchanged when every signal has the same length.
pub fn series_equal_length_check(bundle: DatasetBundle) -> Result<DatasetBundle> {
    let Some(first) = bundle.signals.first() else {
        return Err(Error::invalid(format!(
            "dataset '{}' is empty",
            bundle.name
        )));
    };
    let expected = first.len();
    if let Some((row, s)) = bundle
        .signals
        .iter()
        .enumerate()
        .find(|(_, s)| s.len() != expected)
    {
        return Err(Error::Shape(format!(
            "dataset '{}': row {row} has length {} but row 0 has length {expected}",
            bundle.name,
            s.len()
        )));
    }
    Ok(bundle)
}

impl Provenance {
    pub fn new(source: impl Into<PathBuf>, format: impl Into<String>) -> Self {
        Provenance {
            source: source.into().display().to_string(),
            format: format.into(),
        }
    }
}
