//! Reference implementations written independently of the library, used to
//! check it. They favour obviousness over speed.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// Send-on-delta by brute force: for every candidate point, look back at the
/// most recent kept point and decide whether this one fires.
pub fn sample_indices(values: &[f64], t: f64) -> Vec<usize> {
    let mut kept: Vec<usize> = vec![0];
    for i in 1..values.len() {
        let reference = values[*kept.last().unwrap()];
        let diff = if values[i] > reference {
            values[i] - reference
        } else {
            reference - values[i]
        };
        if diff >= t {
            kept.push(i);
        }
    }
    kept
}

pub fn sample_fraction(values: &[f64], t: f64) -> f64 {
    sample_indices(values, t).len() as f64 / values.len() as f64
}

/// Does the straight line from (xa, ya) to (xb, yb), evaluated on the integer
/// grid strictly between them, leave the open band ya +- t anywhere?
pub fn chord_leaves_band(xa: usize, ya: f64, xb: usize, yb: f64, t: f64) -> bool {
    ((xa + 1)..xb).any(|x| {
        let y = ya + (yb - ya) * (x - xa) as f64 / (xb - xa) as f64;
        (y - ya).abs() > t
    })
}

pub fn random_walk(seed: u64, n: usize) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    let mut v = 0.5;
    for _ in 0..n {
        let step: f64 = rng.sample(StandardNormal);
        v += 0.02 * step;
        out.push(v);
    }
    out
}

/// Min-max scaling to [0, 1]; constants become zeros.
pub fn unit_scale(values: &[f64]) -> Vec<f64> {
    let lo = values.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if hi == lo {
        return vec![0.0; values.len()];
    }
    values.iter().map(|v| (v - lo) / (hi - lo)).collect()
}

pub fn rmse(a: &[f64], b: &[f64]) -> f64 {
    let s: f64 = a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum();
    (s / a.len() as f64).sqrt()
}

/// Fritsch-Carlson monotone cubic: harmonic-mean interior slopes, zero at
/// local extrema, non-centred three-point end slopes clamped to keep shape.
pub struct MonotoneCubic {
    x: Vec<f64>,
    y: Vec<f64>,
    d: Vec<f64>,
}

impl MonotoneCubic {
    pub fn new(x: &[f64], y: &[f64]) -> Self {
        let n = x.len();
        assert!(n >= 2 && n == y.len());
        let h: Vec<f64> = (0..n - 1).map(|k| x[k + 1] - x[k]).collect();
        let delta: Vec<f64> = (0..n - 1).map(|k| (y[k + 1] - y[k]) / h[k]).collect();
        let mut d = vec![0.0; n];
        if n == 2 {
            d[0] = delta[0];
            d[1] = delta[0];
        } else {
            for k in 1..n - 1 {
                let (dl, dr) = (delta[k - 1], delta[k]);
                if dl * dr <= 0.0 {
                    d[k] = 0.0;
                } else {
                    let w1 = 2.0 * h[k] + h[k - 1];
                    let w2 = h[k] + 2.0 * h[k - 1];
                    d[k] = (w1 + w2) / (w1 / dl + w2 / dr);
                }
            }
            d[0] = Self::end(h[0], h[1], delta[0], delta[1]);
            d[n - 1] = Self::end(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
        }
        MonotoneCubic {
            x: x.to_vec(),
            y: y.to_vec(),
            d,
        }
    }

    fn end(h0: f64, h1: f64, m0: f64, m1: f64) -> f64 {
        let d = ((2.0 * h0 + h1) * m0 - h0 * m1) / (h0 + h1);
        if d.signum() != m0.signum() || m0 == 0.0 {
            0.0
        } else if m0.signum() != m1.signum() && d.abs() > 3.0 * m0.abs() {
            3.0 * m0
        } else {
            d
        }
    }

    pub fn at(&self, xq: f64) -> f64 {
        let n = self.x.len();
        let mut k = 0;
        while k + 2 < n && xq > self.x[k + 1] {
            k += 1;
        }
        let h = self.x[k + 1] - self.x[k];
        let s = (xq - self.x[k]) / h;
        let h00 = 2.0 * s.powi(3) - 3.0 * s.powi(2) + 1.0;
        let h10 = s.powi(3) - 2.0 * s.powi(2) + s;
        let h01 = -2.0 * s.powi(3) + 3.0 * s.powi(2);
        let h11 = s.powi(3) - s.powi(2);
        h00 * self.y[k] + h10 * h * self.d[k] + h01 * self.y[k + 1] + h11 * h * self.d[k + 1]
    }

    /// Evaluates on 0..len, holding the last knot value past the end.
    pub fn grid(&self, len: usize) -> Vec<f64> {
        let last = *self.x.last().unwrap();
        (0..len)
            .map(|i| {
                if i as f64 >= last {
                    *self.y.last().unwrap()
                } else {
                    self.at(i as f64)
                }
            })
            .collect()
    }
}

/// Random knot set: strictly increasing integer indices from 0.
pub fn random_knots(rng: &mut ChaCha8Rng, monotone: bool) -> (Vec<usize>, Vec<f64>) {
    let count = rng.gen_range(2..15);
    let mut idx = vec![0usize];
    for _ in 1..count {
        let last = *idx.last().unwrap();
        idx.push(last + rng.gen_range(1..10));
    }
    let mut vals: Vec<f64> = (0..count).map(|_| rng.gen_range(-1.0..1.0)).collect();
    if monotone {
        vals.sort_by(f64::total_cmp);
        if rng.gen_bool(0.5) {
            vals.reverse();
        }
    }
    (idx, vals)
}
