//! Monte-Carlo check of the false-convexity-assumption area.
//!
//! Points are drawn uniformly from the tolerated-region rectangle
//! `[x_i, x_{i+1}] x [y_i - t, y_i + t]` of an interval whose chord rises from
//! `y_i` to `y_i + t`. The triangle between the chord and the upper bound holds
//! exactly a quarter of the rectangle's area.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Minimum sample count accepted by the estimators.
pub const MIN_SAMPLES: u64 = 10_000;

const CANONICAL_THRESHOLD: f64 = 0.05;
const CANONICAL_START: (f64, f64) = (0.0, 0.5);
const CANONICAL_WIDTH: f64 = 10.0;

/// Fraction of uniform points in the rectangle that lie strictly above the
/// chord and strictly below the upper bound, on the canonical configuration.
pub fn monte_carlo_convexity_area(samples: u64, seed: u64) -> Result<f64> {
    convexity_area_fraction(samples, seed, CANONICAL_THRESHOLD)
}

/// As [`monte_carlo_convexity_area`] with an explicit threshold. A zero
/// threshold gives an empty region and a fraction of 0.
pub fn convexity_area_fraction(samples: u64, seed: u64, threshold: f64) -> Result<f64> {
    if samples < MIN_SAMPLES {
        return Err(Error::invalid(format!(
            "need at least {MIN_SAMPLES} samples, got {samples}"
        )));
    }
    if threshold.is_nan() || threshold < 0.0 {
        return Err(Error::invalid(format!(
            "threshold must be >= 0, got {threshold}"
        )));
    }
    if threshold == 0.0 {
        return Ok(0.0);
    }
    let (x0, y0) = CANONICAL_START;
    let x1 = x0 + CANONICAL_WIDTH;
    let slope = threshold / CANONICAL_WIDTH;
    let upper = y0 + threshold;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hits = 0u64;
    for _ in 0..samples {
        let x = rng.gen_range(x0..x1);
        let y = rng.gen_range(y0 - threshold..upper);
        let chord = y0 + slope * (x - x0);
        if y > chord && y < upper {
            hits += 1;
        }
    }
    Ok(hits as f64 / samples as f64)
}
