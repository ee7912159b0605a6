//! Standard interpolators evaluated on the integer grid: zero-order hold,
//! linear, nearest knot and monotone piecewise cubic Hermite (PCHIP).
//!
//! All of them hold the last knot value from the last knot to the end of the
//! signal, since event-based sampling guarantees the un-fired tail stays in
//! the last tolerated region.

use crate::types::{Knot, Method, Reconstruction, SampledSeries};

/// Linear interpolant between two knots, evaluated at grid index `x`.
pub(crate) fn lerp(a: Knot, b: Knot, x: usize) -> f64 {
    let slope = (b.value - a.value) / (b.index - a.index) as f64;
    a.value + slope * (x - a.index) as f64
}

fn hold_tail(values: &mut [f64], last: Knot) {
    for v in &mut values[last.index..] {
        *v = last.value;
    }
}

pub(crate) fn zoh_values(knots: &[Knot], length: usize) -> Vec<f64> {
    let mut values = vec![0.0; length];
    for pair in knots.windows(2) {
        values[pair[0].index..pair[1].index].fill(pair[0].value);
    }
    hold_tail(&mut values, knots[knots.len() - 1]);
    values
}

/// Piecewise-linear path through `knots`, exact at every knot.
pub(crate) fn linear_values(knots: &[Knot], length: usize) -> Vec<f64> {
    let mut values = vec![0.0; length];
    fill_linear(&mut values, knots);
    hold_tail(&mut values, knots[knots.len() - 1]);
    values
}

/// Writes the polyline through `knots` on `[first.index, last.index)`.
pub(crate) fn fill_linear(values: &mut [f64], knots: &[Knot]) {
    for pair in knots.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        values[a.index] = a.value;
        for (x, v) in values.iter_mut().enumerate().take(b.index).skip(a.index + 1) {
            *v = lerp(a, b, x);
        }
    }
}

pub fn interp_zoh(s: &SampledSeries) -> Reconstruction {
    Reconstruction {
        values: zoh_values(s.points(), s.source_length()),
        method: Method::Zoh,
    }
}

pub fn interp_linear(s: &SampledSeries) -> Reconstruction {
    Reconstruction {
        values: linear_values(s.points(), s.source_length()),
        method: Method::Linear,
    }
}

/// Each index takes the value of the closest knot; ties go to the earlier one.
pub fn interp_nearest(s: &SampledSeries) -> Reconstruction {
    let knots = s.points();
    let mut values = vec![0.0; s.source_length()];
    for pair in knots.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        for (x, v) in values.iter_mut().enumerate().take(b.index).skip(a.index) {
            *v = if x - a.index <= b.index - x {
                a.value
            } else {
                b.value
            };
        }
    }
    hold_tail(&mut values, knots[knots.len() - 1]);
    Reconstruction {
        values,
        method: Method::Nearest,
    }
}

pub fn interp_pchip(s: &SampledSeries) -> Reconstruction {
    Reconstruction {
        values: pchip_values(s.points(), s.source_length()),
        method: Method::Pchip,
    }
}

pub(crate) fn pchip_values(knots: &[Knot], length: usize) -> Vec<f64> {
    if knots.len() == 1 {
        return vec![knots[0].value; length];
    }
    let interp = PchipInterpolant::new(knots);
    let mut values = vec![0.0; length];
    for (seg, pair) in knots.windows(2).enumerate() {
        values[pair[0].index] = pair[0].value;
        let inner = pair[0].index + 1..pair[1].index;
        for (x, v) in inner.clone().zip(&mut values[inner]) {
            *v = interp.eval_segment(seg, x as f64);
        }
    }
    hold_tail(&mut values, knots[knots.len() - 1]);
    values
}

/// Fritsch-Carlson monotone cubic Hermite interpolant over knots with
/// strictly increasing indices.
#[derive(Clone, Debug)]
pub struct PchipInterpolant {
    x: Vec<f64>,
    y: Vec<f64>,
    slopes: Vec<f64>,
}

impl PchipInterpolant {
    /// Panics if fewer than two knots are given.
    pub fn new(knots: &[Knot]) -> Self {
        assert!(knots.len() >= 2, "PCHIP needs at least two knots");
        let x: Vec<f64> = knots.iter().map(|k| k.index as f64).collect();
        let y: Vec<f64> = knots.iter().map(|k| k.value).collect();
        let slopes = fritsch_carlson_slopes(&x, &y);
        PchipInterpolant { x, y, slopes }
    }

    pub fn slopes(&self) -> &[f64] {
        &self.slopes
    }

    fn segment_of(&self, x: f64) -> usize {
        let n = self.x.len();
        self.x.partition_point(|&xi| xi <= x).clamp(1, n - 1) - 1
    }

    fn eval_segment(&self, k: usize, x: f64) -> f64 {
        let h = self.x[k + 1] - self.x[k];
        let t = (x - self.x[k]) / h;
        let t2 = t * t;
        let t3 = t2 * t;
        let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
        let h10 = t3 - 2.0 * t2 + t;
        let h01 = -2.0 * t3 + 3.0 * t2;
        let h11 = t3 - t2;
        h00 * self.y[k]
            + h10 * h * self.slopes[k]
            + h01 * self.y[k + 1]
            + h11 * h * self.slopes[k + 1]
    }

    fn derivative_segment(&self, k: usize, x: f64) -> f64 {
        let h = self.x[k + 1] - self.x[k];
        let t = (x - self.x[k]) / h;
        let t2 = t * t;
        let d00 = 6.0 * t2 - 6.0 * t;
        let d10 = 3.0 * t2 - 4.0 * t + 1.0;
        let d01 = -6.0 * t2 + 6.0 * t;
        let d11 = 3.0 * t2 - 2.0 * t;
        (d00 * self.y[k] + d01 * self.y[k + 1]) / h
            + d10 * self.slopes[k]
            + d11 * self.slopes[k + 1]
    }

    /// Value at `x`; outside the knot range the end cubics are extended.
    pub fn eval(&self, x: f64) -> f64 {
        self.eval_segment(self.segment_of(x), x)
    }

    pub fn derivative(&self, x: f64) -> f64 {
        self.derivative_segment(self.segment_of(x), x)
    }

    /// Derivative at knot `i` seen from the segment on its left (`from_left`)
    /// or its right.
    pub fn one_sided_knot_derivative(&self, i: usize, from_left: bool) -> f64 {
        let seg = if from_left { i - 1 } else { i };
        self.derivative_segment(seg, self.x[i])
    }
}

fn same_sign(a: f64, b: f64) -> bool {
    (a > 0.0 && b > 0.0) || (a < 0.0 && b < 0.0)
}

/// One-sided three-point end slope, clamped so the end segment cannot
/// overshoot.
fn end_slope(h0: f64, h1: f64, s0: f64, s1: f64) -> f64 {
    let d = ((2.0 * h0 + h1) * s0 - h0 * s1) / (h0 + h1);
    if !same_sign(d, s0) {
        0.0
    } else if !same_sign(s0, s1) && d.abs() > 3.0 * s0.abs() {
        3.0 * s0
    } else {
        d
    }
}

fn fritsch_carlson_slopes(x: &[f64], y: &[f64]) -> Vec<f64> {
    let n = x.len();
    let h: Vec<f64> = x.windows(2).map(|w| w[1] - w[0]).collect();
    let secant: Vec<f64> = (0..n - 1).map(|k| (y[k + 1] - y[k]) / h[k]).collect();
    if n == 2 {
        return vec![secant[0], secant[0]];
    }
    let mut d = vec![0.0; n];
    for k in 1..n - 1 {
        let (s0, s1) = (secant[k - 1], secant[k]);
        if same_sign(s0, s1) {
            // weighted harmonic mean
            let w0 = 2.0 * h[k] + h[k - 1];
            let w1 = h[k] + 2.0 * h[k - 1];
            d[k] = (w0 + w1) / (w0 / s0 + w1 / s1);
        }
    }
    d[0] = end_slope(h[0], h[1], secant[0], secant[1]);
    d[n - 1] = end_slope(h[n - 2], h[n - 3], secant[n - 2], secant[n - 3]);
    d
}
