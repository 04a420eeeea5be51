//! Performance analysis of transcutaneous optical wireless links.
//!
//! The link model is a Gaussian beam crossing a layer of skin and landing on a
//! circular photodiode aperture that jitters radially around the beam center.
//! From that model the crate evaluates, in closed form:
//!
//! - the average SNR,
//! - the ergodic spectral efficiency and its simple lower bound,
//! - band-partitioned and narrow-band capacity,
//! - the outage probability and the jitter tolerance for a target outage,
//!
//! and provides an independent Monte Carlo simulator of the same physical model
//! to cross-check each closed form.
//!
//! Module map:
//!
//! - [`specfun`]: error function and the Lerch transcendent `Φ(a, 1, x)`.
//! - [`skin_attenuation`]: the `α(λ)` table and its interpolation.
//! - [`channel`]: beam/aperture geometry, path loss and the misalignment-gain law.
//! - [`noise_snr`]: responsivity, receiver noise and the SNR functionals.
//! - [`link_metrics`]: spectral efficiency, capacity, outage, jitter tolerance.
//! - [`monte_carlo`]: deterministic, parallel Monte Carlo estimates.
//! - [`link`]: convenience bundle tying a table, geometry and transceivers together.
//! - [`cli`]: the `tolink` command-line surface (`eval`, `sweep`, `validate`, `jitter`).

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod channel;
pub mod cli;
pub mod error;
pub mod link;
pub mod link_metrics;
pub mod monte_carlo;
pub mod noise_snr;
pub mod skin_attenuation;
pub mod specfun;
pub mod units;

pub use channel::{Aperture, BeamFootprint, LinkGeometry, MisalignmentGainLaw, MisalignmentParams};
pub use error::{Error, Result};
pub use link::{Link, OperatingPoint};
pub use link_metrics::{DetectionScheme, MetricsReport, SubBand, SubBandSpec};
pub use monte_carlo::{McConfig, McEstimate, McMetrics};
pub use noise_snr::{RxConfig, SnrScale, ThermalNoise, TxConfig};
pub use skin_attenuation::SkinAttenuationTable;
