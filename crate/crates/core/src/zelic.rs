//! Event-aware reconstructors.
//!
//! Each interval between two consecutive samples is classified by the size of
//! its jump relative to the increased tolerated region. Small jumps are
//! treated as smooth (linear or PCHIP), large ones as abrupt (zero-order
//! hold until the step just before the next sample). The `C` variants
//! additionally insert a midpoint knot when the slope changes sign, placing it
//! halfway between the chord and the tolerated-region bound on the side the
//! extremum is expected.

use crate::baselines::{fill_linear, lerp, pchip_values};
use crate::types::{Knot, Method, Reconstruction, ReconstructionParams, SampledSeries};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IntervalKind {
    Smooth,
    Abrupt,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IntervalClass {
    pub kind: IntervalKind,
    pub start: Knot,
    pub end: Knot,
}

/// Augmented knots for one interval: its endpoints plus any inserted points.
#[derive(Clone, Debug, PartialEq)]
pub struct KnotPlan {
    pub knots: Vec<Knot>,
}

impl KnotPlan {
    /// Knots strictly inside the interval.
    pub fn interior(&self) -> &[Knot] {
        &self.knots[1..self.knots.len() - 1]
    }
}

/// Smooth iff the jump stays inside the increased tolerated region.
pub fn classify_interval(a: Knot, b: Knot, params: &ReconstructionParams) -> IntervalClass {
    let kind = if (b.value - a.value).abs() < params.tolerance() {
        IntervalKind::Smooth
    } else {
        IntervalKind::Abrupt
    };
    IntervalClass {
        kind,
        start: a,
        end: b,
    }
}

/// Whether the chord from `a` to `b` leaves the tolerated region around `a`
/// at some interior grid point. Only the last interior point needs checking,
/// since the chord moves away from `a.value` monotonically.
pub fn abrupt_limit_condition(a: Knot, b: Knot, threshold: f64) -> bool {
    if b.index <= a.index + 1 {
        return false;
    }
    let slope = (b.value - a.value) / (b.index - a.index) as f64;
    if slope == 0.0 {
        return false;
    }
    let last_interior = (b.index - 1) as f64;
    last_interior > threshold / slope.abs() + a.index as f64
}

fn sign(v: f64) -> i8 {
    if v > 0.0 {
        1
    } else if v < 0.0 {
        -1
    } else {
        0
    }
}

/// Whether the interval `a -> b` should get a convexity/concavity midpoint.
pub fn convexity_gate(prev: Option<Knot>, a: Knot, b: Knot, params: &ReconstructionParams) -> bool {
    let Some(prev) = prev else {
        return false;
    };
    let before = sign(a.value - prev.value);
    let after = sign(b.value - a.value);
    if before == 0 || after == 0 || before == after {
        return false;
    }
    let gap_before = a.index - prev.index;
    let gap_after = b.index - a.index;
    gap_before > params.previous_distance
        && gap_after > params.subsequent_min_distance
        && params
            .subsequent_max_distance
            .is_none_or(|max| gap_after < max)
}

/// Knots for an interval that passed [`convexity_gate`].
///
/// A falling-then-rising triple is treated as convex (midpoint pulled towards
/// `a.value - t`), rising-then-falling as concave (towards `a.value + t`).
/// Abrupt intervals also get an anchor at `b.index - 1` holding `a.value`, so
/// the jump still happens at the last step.
pub fn convexity_knots(
    prev: Knot,
    a: Knot,
    b: Knot,
    params: &ReconstructionParams,
    abrupt: bool,
) -> KnotPlan {
    let t = params.threshold;
    let mid_index = (a.index + b.index) / 2;
    let mut knots = vec![a];
    if mid_index > a.index {
        let chord = lerp(a, b, mid_index);
        let bound = if a.value < prev.value {
            a.value - t
        } else {
            a.value + t
        };
        knots.push(Knot::new(mid_index, (chord + bound) / 2.0));
    }
    let anchor_index = b.index - 1;
    if abrupt && anchor_index > knots[knots.len() - 1].index {
        knots.push(Knot::new(anchor_index, a.value));
    }
    knots.push(b);
    KnotPlan { knots }
}

fn zeli_segment(values: &mut [f64], a: Knot, b: Knot, params: &ReconstructionParams) {
    match classify_interval(a, b, params).kind {
        IntervalKind::Smooth => {
            for (x, v) in values.iter_mut().enumerate().take(b.index).skip(a.index) {
                *v = lerp(a, b, x);
            }
        }
        IntervalKind::Abrupt => values[a.index..b.index].fill(a.value),
    }
    // `lerp` is exact at the left end; the right end is written by the next
    // segment or by the tail.
    values[a.index] = a.value;
}

fn finish(values: &mut [f64], knots: &[Knot]) {
    let last = knots[knots.len() - 1];
    values[last.index..].fill(last.value);
}

/// Linear on smooth intervals, zero-order hold on abrupt ones.
pub fn reconstruct_zeli(s: &SampledSeries, params: &ReconstructionParams) -> Reconstruction {
    let knots = s.points();
    let mut values = vec![0.0; s.source_length()];
    for pair in knots.windows(2) {
        zeli_segment(&mut values, pair[0], pair[1], params);
    }
    finish(&mut values, knots);
    Reconstruction {
        values,
        method: Method::ZeLi,
    }
}

/// ZeLi with a convexity/concavity midpoint on slope-reversing intervals.
pub fn reconstruct_zelic(s: &SampledSeries, params: &ReconstructionParams) -> Reconstruction {
    let knots = s.points();
    let mut values = vec![0.0; s.source_length()];
    for i in 0..knots.len().saturating_sub(1) {
        let (a, b) = (knots[i], knots[i + 1]);
        let prev = i.checked_sub(1).map(|p| knots[p]);
        if convexity_gate(prev, a, b, params) {
            let abrupt = classify_interval(a, b, params).kind == IntervalKind::Abrupt;
            let plan = convexity_knots(prev.unwrap(), a, b, params, abrupt);
            fill_linear(&mut values, &plan.knots);
        } else {
            zeli_segment(&mut values, a, b, params);
        }
    }
    finish(&mut values, knots);
    Reconstruction {
        values,
        method: Method::ZeLiC,
    }
}

/// Global knot list for the PCHIP-based reconstructors: the samples plus, per
/// interval, the inserted knots (anchor for abrupt intervals; midpoint and
/// optional anchor where the convexity gate fires, if `convexity` is set).
pub fn augmented_knots(
    s: &SampledSeries,
    params: &ReconstructionParams,
    convexity: bool,
) -> Vec<Knot> {
    let knots = s.points();
    let mut out = Vec::with_capacity(knots.len() * 2);
    for i in 0..knots.len() {
        let a = knots[i];
        out.push(a);
        let Some(&b) = knots.get(i + 1) else {
            break;
        };
        let prev = i.checked_sub(1).map(|p| knots[p]);
        let abrupt = classify_interval(a, b, params).kind == IntervalKind::Abrupt;
        if convexity && convexity_gate(prev, a, b, params) {
            let plan = convexity_knots(prev.unwrap(), a, b, params, abrupt);
            out.extend_from_slice(plan.interior());
        } else if abrupt && b.index - 1 > a.index {
            out.push(Knot::new(b.index - 1, a.value));
        }
    }
    out
}

/// ZeLi with PCHIP in place of linear interpolation, as one PCHIP pass over
/// the samples plus zero-order-hold anchors.
pub fn reconstruct_zechip(s: &SampledSeries, params: &ReconstructionParams) -> Reconstruction {
    Reconstruction {
        values: pchip_values(&augmented_knots(s, params, false), s.source_length()),
        method: Method::ZeChip,
    }
}

/// ZeChip with the convexity/concavity midpoints added to the knot list.
pub fn reconstruct_zechipc(s: &SampledSeries, params: &ReconstructionParams) -> Reconstruction {
    Reconstruction {
        values: pchip_values(&augmented_knots(s, params, true), s.source_length()),
        method: Method::ZeChipC,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baselines::{interp_linear, interp_pchip};

    fn params() -> ReconstructionParams {
        ReconstructionParams::with_threshold(0.05)
    }

    fn k(i: usize, v: f64) -> Knot {
        Knot::new(i, v)
    }

    fn sampled(points: &[(usize, f64)], length: usize) -> SampledSeries {
        SampledSeries::new(points.iter().map(|&(i, v)| k(i, v)).collect(), length, 0.05).unwrap()
    }

    fn assert_close(actual: &[f64], expected: &[f64], tol: f64) {
        assert_eq!(actual.len(), expected.len());
        for (i, (a, e)) in actual.iter().zip(expected).enumerate() {
            assert!((a - e).abs() <= tol, "index {i}: {a} vs {e}");
        }
    }

    #[test]
    fn classify_examples() {
        assert_eq!(
            classify_interval(k(0, 0.0), k(4, 0.056), &params()).kind,
            IntervalKind::Smooth
        );
        assert_eq!(
            classify_interval(k(0, 0.0), k(4, 0.14), &params()).kind,
            IntervalKind::Abrupt
        );
        assert_eq!(ReconstructionParams::DEFAULT_TOLERANCE_RATIO, 1.15);
        // equal values are smooth
        assert_eq!(
            classify_interval(k(0, 0.3), k(4, 0.3), &params()).kind,
            IntervalKind::Smooth
        );
    }

    #[test]
    fn limit_condition_examples() {
        assert!(abrupt_limit_condition(k(0, 0.0), k(10, 0.2), 0.05));
        assert!(!abrupt_limit_condition(k(0, 0.3), k(10, 0.3), 0.05));
        assert!(!abrupt_limit_condition(k(3, 0.0), k(4, 0.9), 0.05));
        // chord reaches 0.05 only at the endpoint
        assert!(!abrupt_limit_condition(k(0, 0.0), k(10, 0.05), 0.05));
    }

    #[test]
    fn gate_examples() {
        let p = ReconstructionParams {
            subsequent_max_distance: None,
            ..params()
        };
        assert!(convexity_gate(Some(k(0, 0.6)), k(5, 0.5), k(15, 0.6), &p));
        assert!(!convexity_gate(Some(k(0, 0.1)), k(5, 0.2), k(15, 0.3), &p));
        assert!(!convexity_gate(Some(k(0, 0.6)), k(3, 0.5), k(15, 0.6), &p));
        assert!(!convexity_gate(Some(k(0, 0.6)), k(5, 0.5), k(8, 0.6), &p));
        assert!(!convexity_gate(None, k(5, 0.5), k(15, 0.6), &p));
        let bounded = ReconstructionParams {
            subsequent_max_distance: Some(10),
            ..p
        };
        assert!(!convexity_gate(
            Some(k(0, 0.6)),
            k(5, 0.5),
            k(15, 0.6),
            &bounded
        ));
        assert!(convexity_gate(
            Some(k(0, 0.6)),
            k(5, 0.5),
            k(14, 0.6),
            &bounded
        ));
    }

    #[test]
    fn convexity_knot_examples() {
        let p = params();
        let plan = convexity_knots(k(0, 0.6), k(0, 0.5), k(10, 0.6), &p, false);
        assert_eq!(plan.knots.len(), 3);
        assert_eq!(plan.knots[1].index, 5);
        assert!((plan.knots[1].value - 0.50).abs() < 1e-12);

        let plan = convexity_knots(k(0, 0.4), k(0, 0.5), k(10, 0.4), &p, false);
        assert_eq!(plan.knots[1].index, 5);
        assert!((plan.knots[1].value - 0.50).abs() < 1e-12);

        let plan = convexity_knots(k(0, 0.6), k(0, 0.5), k(10, 0.6), &p, true);
        let idx: Vec<usize> = plan.knots.iter().map(|k| k.index).collect();
        assert_eq!(idx, vec![0, 5, 9, 10]);
        assert_eq!(plan.knots[2].value, 0.5);
    }

    #[test]
    fn convexity_knots_drop_colliding_anchor() {
        let plan = convexity_knots(k(0, 0.6), k(4, 0.5), k(6, 0.7), &params(), true);
        let idx: Vec<usize> = plan.knots.iter().map(|k| k.index).collect();
        assert_eq!(idx, vec![4, 5, 6]);
    }

    #[test]
    fn zeli_examples() {
        let r = reconstruct_zeli(&sampled(&[(0, 0.0), (4, 0.056)], 5), &params());
        assert_close(&r.values, &[0.0, 0.014, 0.028, 0.042, 0.056], 1e-15);
        let r = reconstruct_zeli(&sampled(&[(0, 0.0), (4, 0.3)], 5), &params());
        assert_eq!(r.values, vec![0.0, 0.0, 0.0, 0.0, 0.3]);
    }

    #[test]
    fn zeli_infinite_ratio_is_linear() {
        let s = sampled(&[(0, 0.0), (3, 0.4), (7, 0.1), (9, 0.9)], 12);
        let p = ReconstructionParams {
            tolerance_ratio: f64::INFINITY,
            ..params()
        };
        assert_eq!(reconstruct_zeli(&s, &p).values, interp_linear(&s).values);
    }

    #[test]
    fn zelic_v_shape() {
        let s = sampled(&[(0, 0.6), (5, 0.5), (15, 0.6)], 16);
        // a wide tolerance keeps the 0.1 rise smooth
        let p = ReconstructionParams {
            tolerance_ratio: 2.5,
            ..params()
        };
        let r = reconstruct_zelic(&s, &p);
        // chord value at 10 is 0.55, bound 0.45, midpoint 0.5
        assert!((r.values[10] - 0.5).abs() < 1e-12);
        assert!((r.values[7] - 0.5).abs() < 1e-12);
        assert!((r.values[12] - 0.54).abs() < 1e-12);
        let zeli = reconstruct_zeli(&s, &p);
        assert!(r.values[10] < zeli.values[10]);
        assert_eq!(&r.values[..5], &zeli.values[..5]);
    }

    #[test]
    fn zelic_v_shape_abrupt_under_default_tolerance() {
        let s = sampled(&[(0, 0.6), (5, 0.5), (15, 0.6)], 16);
        let r = reconstruct_zelic(&s, &params());
        assert!((r.values[10] - 0.5).abs() < 1e-12);
        // anchor at 14 holds the start value until the jump
        assert!(r.values[10..15].iter().all(|v| (v - 0.5).abs() < 1e-12));
        assert_eq!(r.values[15], 0.6);
    }

    #[test]
    fn zelic_matches_zeli_on_monotone_samples() {
        let s = sampled(&[(0, 0.0), (5, 0.06), (12, 0.2), (20, 0.26), (30, 0.5)], 33);
        assert_eq!(
            reconstruct_zelic(&s, &params()).values,
            reconstruct_zeli(&s, &params()).values
        );
    }

    #[test]
    fn zelic_abrupt_convex_keeps_jump() {
        let s = sampled(&[(0, 0.6), (5, 0.5), (15, 0.9)], 16);
        let r = reconstruct_zelic(&s, &params());
        assert_eq!(r.values[14], 0.5);
        assert_eq!(r.values[15], 0.9);
    }

    #[test]
    fn zechip_examples() {
        let smooth = sampled(&[(0, 0.0), (6, 0.05), (14, 0.1), (20, 0.052)], 22);
        assert_eq!(
            reconstruct_zechip(&smooth, &params()).values,
            interp_pchip(&smooth).values
        );
        let r = reconstruct_zechip(&sampled(&[(0, 0.0), (4, 0.3)], 5), &params());
        assert_eq!(r.values, vec![0.0, 0.0, 0.0, 0.0, 0.3]);
        let knots = augmented_knots(&sampled(&[(0, 0.0), (4, 0.3)], 5), &params(), false);
        assert_eq!(knots, vec![k(0, 0.0), k(3, 0.0), k(4, 0.3)]);
    }

    #[test]
    fn zechipc_passes_through_midpoint() {
        let s = sampled(&[(0, 0.6), (5, 0.5), (15, 0.6)], 16);
        let r = reconstruct_zechipc(&s, &params());
        assert_eq!(r.values[10], 0.5);
        let monotone = sampled(&[(0, 0.0), (5, 0.06), (12, 0.2), (20, 0.26)], 22);
        assert_eq!(
            reconstruct_zechipc(&monotone, &params()).values,
            reconstruct_zechip(&monotone, &params()).values
        );
    }
}
