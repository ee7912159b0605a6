//! Seeded synthetic corpora used as a desk-scale stand-in for archive data.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::types::{DatasetBundle, Provenance, TimeSeries};

pub const MIN_LENGTH: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SignalKind {
    /// Piecewise-constant levels with jumps of 0.1 to 0.5.
    StepTrain,
    /// Monotone piecewise-linear ramp.
    Ramp,
    /// One or two sinusoids.
    Sine,
    /// Gaussian random walk.
    RandomWalk,
    /// Piecewise-linear wave alternating between rising and falling.
    Triangle,
}

impl SignalKind {
    pub const ALL: [SignalKind; 5] = [
        SignalKind::StepTrain,
        SignalKind::Ramp,
        SignalKind::Sine,
        SignalKind::RandomWalk,
        SignalKind::Triangle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SignalKind::StepTrain => "step",
            SignalKind::Ramp => "ramp",
            SignalKind::Sine => "sine",
            SignalKind::RandomWalk => "walk",
            SignalKind::Triangle => "triangle",
        }
    }
}

impl fmt::Display for SignalKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SignalKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SignalKind::ALL
            .into_iter()
            .find(|k| k.name() == s.trim())
            .ok_or_else(|| Error::invalid(format!("unknown signal kind '{s}'")))
    }
}

/// What to generate: `count` signals of each kind, all of length `length`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorpusSpec {
    pub name: String,
    pub length: usize,
    pub components: Vec<(SignalKind, usize)>,
}

impl CorpusSpec {
    pub fn new(
        name: impl Into<String>,
        length: usize,
        components: Vec<(SignalKind, usize)>,
    ) -> Self {
        CorpusSpec {
            name: name.into(),
            length,
            components,
        }
    }

    /// Equal mix of step trains, ramps, sines and triangles.
    pub fn mixed(name: impl Into<String>, per_kind: usize, length: usize) -> Self {
        CorpusSpec::new(
            name,
            length,
            vec![
                (SignalKind::StepTrain, per_kind),
                (SignalKind::Ramp, per_kind),
                (SignalKind::Sine, per_kind),
                (SignalKind::Triangle, per_kind),
            ],
        )
    }

    /// Parses `kind:count,kind:count`, e.g. `step:10,sine:5`.
    pub fn parse_components(text: &str) -> Result<Vec<(SignalKind, usize)>> {
        text.split(',')
            .filter(|p| !p.trim().is_empty())
            .map(|part| {
                let (kind, count) = part
                    .split_once(':')
                    .ok_or_else(|| Error::invalid(format!("expected kind:count, got '{part}'")))?;
                let count = count
                    .trim()
                    .parse::<usize>()
                    .map_err(|_| Error::invalid(format!("bad count in '{part}'")))?;
                Ok((kind.parse()?, count))
            })
            .collect()
    }

    /// Index ranges of each component within the generated bundle.
    pub fn ranges(&self) -> Vec<(SignalKind, std::ops::Range<usize>)> {
        let mut start = 0;
        self.components
            .iter()
            .map(|&(kind, count)| {
                let r = start..start + count;
                start += count;
                (kind, r)
            })
            .collect()
    }
}

/// Generates the corpus described by `spec`. Every signal is normalised to
/// `[0, 1]`; output is a pure function of `(seed, spec)`.
pub fn generate_synthetic_corpus(seed: u64, spec: &CorpusSpec) -> Result<DatasetBundle> {
    if spec.length < MIN_LENGTH {
        return Err(Error::invalid(format!(
            "synthetic signals need length >= {MIN_LENGTH}, got {}",
            spec.length
        )));
    }
    if spec.components.is_empty() {
        return Err(Error::invalid(
            "synthetic corpus needs at least one component",
        ));
    }
    if let Some((kind, _)) = spec.components.iter().find(|(_, c)| *c == 0) {
        return Err(Error::invalid(format!("count for '{kind}' must be >= 1")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut signals = Vec::new();
    for &(kind, count) in &spec.components {
        for _ in 0..count {
            let raw = generate_signal(kind, spec.length, &mut rng);
            signals.push(TimeSeries::new(raw)?.normalize_unit_interval());
        }
    }
    let described = spec
        .components
        .iter()
        .map(|(k, c)| format!("{k}:{c}"))
        .collect::<Vec<_>>()
        .join(",");
    DatasetBundle::new(
        spec.name.clone(),
        signals,
        Provenance::new(
            format!("synthetic seed={seed} length={} {described}", spec.length),
            "synthetic",
        ),
    )
}

pub fn generate_signal(kind: SignalKind, n: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    match kind {
        SignalKind::StepTrain => step_train(n, rng),
        SignalKind::Ramp => ramp(n, rng),
        SignalKind::Sine => sine(n, rng),
        SignalKind::RandomWalk => random_walk(n, rng),
        SignalKind::Triangle => triangle(n, rng),
    }
}

/// Segment boundaries with lengths drawn from `[lo, hi]`, covering `0..n`.
fn segment_bounds(n: usize, lo: usize, hi: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut bounds = vec![0];
    let mut pos = 0;
    while pos < n {
        pos = (pos + rng.gen_range(lo..=hi)).min(n);
        bounds.push(pos);
    }
    bounds
}

// Levels stay inside [0, 1] so normalisation can only stretch the jumps.
fn step_train(n: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let lo = (n / 20).max(2);
    let hi = (n / 6).max(lo + 1);
    let bounds = segment_bounds(n, lo, hi, rng);
    let mut level: f64 = rng.gen_range(0.2..0.8);
    let mut out = Vec::with_capacity(n);
    for (i, w) in bounds.windows(2).enumerate() {
        if i > 0 {
            let jump = rng.gen_range(0.1..=0.5);
            let up = if level + jump > 1.0 {
                false
            } else if level - jump < 0.0 {
                true
            } else {
                rng.gen_bool(0.5)
            };
            level = if up { level + jump } else { level - jump };
        }
        out.extend(std::iter::repeat_n(level, w[1] - w[0]));
    }
    out
}

fn ramp(n: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let segments = rng.gen_range(1..=3);
    let mut cuts: Vec<usize> = (0..segments - 1).map(|_| rng.gen_range(1..n - 1)).collect();
    cuts.sort_unstable();
    let slopes: Vec<f64> = (0..segments).map(|_| rng.gen_range(0.2..1.0)).collect();
    let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
    let mut value = 0.0;
    let mut out = Vec::with_capacity(n);
    let mut seg = 0;
    for i in 0..n {
        while seg < cuts.len() && i >= cuts[seg] {
            seg += 1;
        }
        out.push(value);
        value += sign * slopes[seg];
    }
    out
}

fn sine(n: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let tau = std::f64::consts::TAU;
    let cycles = rng.gen_range(1.0..4.0);
    let phase = rng.gen_range(0.0..tau);
    let second = rng.gen_bool(0.5).then(|| {
        (
            rng.gen_range(4.0..8.0),
            rng.gen_range(0.0..tau),
            rng.gen_range(0.1..0.3),
        )
    });
    (0..n)
        .map(|i| {
            let x = i as f64 / n as f64;
            let mut v = (tau * cycles * x + phase).sin();
            if let Some((c, p, a)) = second {
                v += a * (tau * c * x + p).sin();
            }
            v
        })
        .collect()
}

fn random_walk(n: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let mut value = 0.0;
    (0..n)
        .map(|_| {
            let v = value;
            let step: f64 = rng.sample(StandardNormal);
            value += step;
            v
        })
        .collect()
}

fn triangle(n: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let lo = (n / 12).max(2);
    let hi = (n / 5).max(lo + 1);
    let bounds = segment_bounds(n, lo, hi, rng);
    let mut rising = rng.gen_bool(0.5);
    let mut start = if rising {
        rng.gen_range(0.0..0.4)
    } else {
        rng.gen_range(0.6..1.0)
    };
    let mut out = Vec::with_capacity(n);
    for w in bounds.windows(2) {
        let len = w[1] - w[0];
        let end = if rising {
            rng.gen_range(0.6..1.0)
        } else {
            rng.gen_range(0.0..0.4)
        };
        for j in 0..len {
            out.push(start + (end - start) * j as f64 / len as f64);
        }
        start = end;
        rising = !rising;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::abruptness;

    #[test]
    fn deterministic_for_a_seed() {
        let spec = CorpusSpec::new("s", 100, vec![(SignalKind::StepTrain, 10)]);
        let a = generate_synthetic_corpus(1, &spec).unwrap();
        let b = generate_synthetic_corpus(1, &spec).unwrap();
        assert_eq!(a, b);
        let c = generate_synthetic_corpus(2, &spec).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn all_kinds_normalised() {
        let spec = CorpusSpec::new(
            "all",
            200,
            SignalKind::ALL.iter().map(|&k| (k, 3)).collect(),
        );
        let b = generate_synthetic_corpus(9, &spec).unwrap();
        assert_eq!(b.signals.len(), 15);
        for s in &b.signals {
            assert_eq!(s.len(), 200);
            let min = s.values().iter().cloned().fold(f64::INFINITY, f64::min);
            let max = s.values().iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            assert_eq!((min, max), (0.0, 1.0));
        }
    }

    #[test]
    fn sines_are_smoother_than_steps() {
        let steps = generate_synthetic_corpus(
            4,
            &CorpusSpec::new("a", 300, vec![(SignalKind::StepTrain, 20)]),
        )
        .unwrap();
        let sines =
            generate_synthetic_corpus(4, &CorpusSpec::new("b", 300, vec![(SignalKind::Sine, 20)]))
                .unwrap();
        let mean_abrupt = |b: &DatasetBundle| {
            b.signals
                .iter()
                .map(|s| abruptness(s.values()).unwrap())
                .sum::<f64>()
                / b.signals.len() as f64
        };
        assert!(mean_abrupt(&sines) < mean_abrupt(&steps));
    }

    #[test]
    fn step_jumps_are_large() {
        let b = generate_synthetic_corpus(
            5,
            &CorpusSpec::new("s", 500, vec![(SignalKind::StepTrain, 30)]),
        )
        .unwrap();
        for s in &b.signals {
            for w in s.values().windows(2) {
                let d = (w[1] - w[0]).abs();
                assert!(d == 0.0 || d >= 0.1 - 1e-12, "jump {d}");
            }
        }
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(generate_synthetic_corpus(
            1,
            &CorpusSpec::new("s", 8, vec![(SignalKind::Sine, 1)])
        )
        .is_err());
        assert!(generate_synthetic_corpus(
            1,
            &CorpusSpec::new("s", 100, vec![(SignalKind::Sine, 0)])
        )
        .is_err());
        assert!(generate_synthetic_corpus(1, &CorpusSpec::new("s", 100, vec![])).is_err());
    }

    #[test]
    fn parse_components() {
        let c = CorpusSpec::parse_components("step:10, sine:5").unwrap();
        assert_eq!(c, vec![(SignalKind::StepTrain, 10), (SignalKind::Sine, 5)]);
        assert!(CorpusSpec::parse_components("step").is_err());
        assert!(CorpusSpec::parse_components("cosine:2").is_err());
    }
}
