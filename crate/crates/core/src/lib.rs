//! Event-based (send-on-delta) and periodic sampling of time series, plus
//! reconstruction methods that exploit the guarantees event-based sampling
//! gives about the signal between two captured points.
//!
//! The crate is organised by concern:
//!
//! - [`types`]: the shared domain types and per-signal normalisation.
//! - [`sampling`]: Lebesgue and Riemann samplers and sample-budget tuning.
//! - [`baselines`]: zero-order hold, linear, nearest and PCHIP interpolators.
//! - [`zelic`]: the event-aware reconstructors ZeLi, ZeLiC, ZeChip and ZeChipC.
//! - [`metrics`]: RMSE, abruptness and method ranking.
//! - [`bench`]: dataset loading, synthetic corpora, experiments and reports.
//! - [`verify`]: self-contained property checks used by the `verify` command.

pub mod baselines;
pub mod bench;
pub mod error;
pub mod metrics;
pub mod sampling;
pub mod types;
pub mod verify;
pub mod zelic;

pub use error::{Error, Result};
pub use types::{
    DatasetBundle, Knot, Method, Provenance, Reconstruction, ReconstructionParams, SampledSeries,
    TimeSeries, ToleratedRegion,
};

/// Reconstructs a full-length series from its samples with the given method.
/// Baseline methods ignore `params`.
pub fn reconstruct(
    method: Method,
    sampled: &SampledSeries,
    params: &ReconstructionParams,
) -> Reconstruction {
    match method {
        Method::Zoh => baselines::interp_zoh(sampled),
        Method::Linear => baselines::interp_linear(sampled),
        Method::Nearest => baselines::interp_nearest(sampled),
        Method::Pchip => baselines::interp_pchip(sampled),
        Method::ZeLi => zelic::reconstruct_zeli(sampled, params),
        Method::ZeLiC => zelic::reconstruct_zelic(sampled, params),
        Method::ZeChip => zelic::reconstruct_zechip(sampled, params),
        Method::ZeChipC => zelic::reconstruct_zechipc(sampled, params),
    }
}
