//! Property checks runnable from the command line.
//!
//! Each check draws seeded random inputs, compares the library against a
//! deliberately naive reference computation and reports how many cases
//! disagreed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::baselines::interp_pchip;
use crate::bench::geometry::monte_carlo_convexity_area;
use crate::error::Result;
use crate::sampling::{lebesgue_sample, tolerated_region};
use crate::types::{Knot, SampledSeries, TimeSeries};
use crate::zelic::abrupt_limit_condition;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn count(name: &'static str, failures: usize, cases: usize) -> Self {
        CheckOutcome {
            name,
            passed: failures == 0,
            detail: format!("{failures} failures in {cases} cases"),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Monte-Carlo sample count for the convexity-area estimate.
    pub samples: u64,
    /// Random cases per check.
    pub cases: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 0,
            samples: 1_000_000,
            cases: 1_000,
        }
    }
}

fn random_walk(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let mut v = 0.0;
    (0..n)
        .map(|_| {
            v += 0.03 * rng.sample::<f64, _>(StandardNormal);
            v
        })
        .collect()
}

/// Reference sampler: walk forward from each kept point to the first value
/// outside the open tolerated region.
fn reference_sample(values: &[f64], t: f64) -> Vec<usize> {
    let mut kept = vec![0];
    let mut from = 0;
    while let Some(offset) = values[from + 1..]
        .iter()
        .position(|v| (v - values[from]).abs() >= t)
    {
        from += 1 + offset;
        kept.push(from);
    }
    kept
}

fn check_sampler(config: &VerifyConfig) -> Result<Vec<CheckOutcome>> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut mismatches = 0;
    let mut violations = 0;
    let mut cases = 0;
    for _ in 0..config.cases {
        let values = random_walk(&mut rng, 200);
        let series = TimeSeries::new(values.clone())?;
        for t in [0.02, 0.05, 0.1] {
            cases += 1;
            let sampled = lebesgue_sample(&series, t)?;
            let indices: Vec<usize> = sampled.points().iter().map(|k| k.index).collect();
            if indices != reference_sample(&values, t) {
                mismatches += 1;
            }
            let knots = sampled.points();
            for (i, k) in knots.iter().enumerate() {
                let end = knots.get(i + 1).map_or(values.len(), |n| n.index);
                let region = tolerated_region(k.value, t);
                if values[k.index + 1..end]
                    .iter()
                    .any(|v| !region.contains_strictly(*v))
                {
                    violations += 1;
                }
            }
        }
    }
    Ok(vec![
        CheckOutcome::count("lebesgue sampler matches reference", mismatches, cases),
        CheckOutcome::count("points stay in tolerated region", violations, cases),
    ])
}

fn check_limit_condition(config: &VerifyConfig) -> CheckOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ 0x11);
    let mut disagreements = 0;
    let cases = config.cases * 10;
    for _ in 0..cases {
        let i0 = rng.gen_range(0..50usize);
        let len = rng.gen_range(1..40usize);
        let a = Knot::new(i0, rng.gen_range(0.0..1.0));
        let b = Knot::new(i0 + len, rng.gen_range(0.0..1.0));
        let t: f64 = rng.gen_range(0.005..0.3);
        let slope = (b.value - a.value) / len as f64;
        let exits = (a.index + 1..b.index).any(|x| (slope * (x - a.index) as f64).abs() > t);
        if exits != abrupt_limit_condition(a, b, t) {
            disagreements += 1;
        }
    }
    CheckOutcome::count(
        "limit condition matches interior scan",
        disagreements,
        cases,
    )
}

fn check_area(config: &VerifyConfig) -> Result<CheckOutcome> {
    let area = monte_carlo_convexity_area(config.samples, config.seed)?;
    Ok(CheckOutcome {
        name: "convexity area is a quarter",
        passed: (area - 0.25).abs() <= 0.005,
        detail: format!("estimate {area:.6} from {} samples", config.samples),
    })
}

fn random_knots(rng: &mut ChaCha8Rng, monotone: bool) -> Vec<Knot> {
    let count = rng.gen_range(2..12);
    let mut index = 0;
    let mut value: f64 = rng.gen_range(0.0..1.0);
    (0..count)
        .map(|_| {
            let k = Knot::new(index, value);
            index += rng.gen_range(1..8);
            value += if monotone {
                rng.gen_range(0.0..0.3)
            } else {
                rng.gen_range(-0.3..0.3)
            };
            k
        })
        .collect()
}

fn check_pchip(config: &VerifyConfig) -> Result<Vec<CheckOutcome>> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ 0x22);
    let mut line_failures = 0;
    let mut shape_failures = 0;
    for _ in 0..config.cases {
        let knots = random_knots(&mut rng, false);
        let n = knots[knots.len() - 1].index + 1;
        let (c0, c1) = (rng.gen_range(-1.0..1.0), rng.gen_range(-0.1..0.1));
        let line: Vec<Knot> = knots
            .iter()
            .map(|k| Knot::new(k.index, c0 + c1 * k.index as f64))
            .collect();
        let rec = interp_pchip(&SampledSeries::new(line, n, 0.0)?);
        if rec
            .values
            .iter()
            .enumerate()
            .any(|(x, v)| (v - (c0 + c1 * x as f64)).abs() > 1e-12)
        {
            line_failures += 1;
        }

        let knots = random_knots(&mut rng, true);
        let n = knots[knots.len() - 1].index + 1;
        let rec = interp_pchip(&SampledSeries::new(knots.clone(), n, 0.0)?);
        let monotone = rec.values.windows(2).all(|w| w[1] >= w[0] - 1e-12);
        let enveloped = knots.windows(2).all(|w| {
            rec.values[w[0].index..=w[1].index]
                .iter()
                .all(|v| *v >= w[0].value - 1e-12 && *v <= w[1].value + 1e-12)
        });
        if !(monotone && enveloped) {
            shape_failures += 1;
        }
    }
    Ok(vec![
        CheckOutcome::count("pchip reproduces lines", line_failures, config.cases),
        CheckOutcome::count(
            "pchip keeps monotone data monotone",
            shape_failures,
            config.cases,
        ),
    ])
}

/// Runs every check. Errors only on invalid configuration.
pub fn run_checks(config: &VerifyConfig) -> Result<Vec<CheckOutcome>> {
    let mut out = check_sampler(config)?;
    out.push(check_limit_condition(config));
    out.push(check_area(config)?);
    out.extend(check_pchip(config)?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_checks_pass() {
        let config = VerifyConfig {
            seed: 5,
            samples: 100_000,
            cases: 100,
        };
        for outcome in run_checks(&config).unwrap() {
            assert!(outcome.passed, "{}: {}", outcome.name, outcome.detail);
        }
    }

    #[test]
    fn reference_sampler_example() {
        let v = [0.0, 0.03, 0.06, 0.02, 0.12];
        assert_eq!(reference_sample(&v, 0.05), vec![0, 2, 4]);
    }
}
