//! Closed-form link performance: ergodic spectral efficiency and its lower
//! bound, capacity, outage probability, and jitter tolerance for a target
//! outage.
//!
//! Spectral efficiencies are in bits per channel use, capacities in bits/s.
//! With `M = 𝓑(λ) A0²`:
//!
//! ```text
//! C    = ½ log₂(1 + M) − M / (2 ln 2) · Φ(−M, 1, 1 + ξ/2)
//! C_lb = ½ log₂(1 + M) − 1 / (ξ ln 2)
//! P_o  = (γ_th / (G A0²))^{ξ/2}   for γ_th ≤ G A0², else 1
//! ```

use std::f64::consts::{E, LN_2, PI};
use std::fmt;
use std::str::FromStr;

use crate::channel::{BeamFootprint, MisalignmentGainLaw};
use crate::error::{Error, Result};
use crate::link::Link;
use crate::noise_snr::SnrScale;
use crate::specfun::{lerch_phi, LerchArgs, DEFAULT_REL_TOL};
use crate::units::to_db;

/// Receiver detection scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum DetectionScheme {
    #[default]
    Heterodyne,
    /// Intensity modulation / direct detection. The Shannon-form spectral
    /// efficiency is only a lower bound on capacity for this scheme.
    ImDd,
}

impl DetectionScheme {
    /// `ψ`: 1 for heterodyne, `e / 2π` for IM/DD.
    pub fn psi(self) -> f64 {
        match self {
            DetectionScheme::Heterodyne => 1.0,
            DetectionScheme::ImDd => E / (2.0 * PI),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            DetectionScheme::Heterodyne => "heterodyne",
            DetectionScheme::ImDd => "im_dd",
        }
    }

    /// True when the Shannon-form spectral efficiency is exact for this scheme.
    pub fn se_is_exact(self) -> bool {
        matches!(self, DetectionScheme::Heterodyne)
    }
}

impl fmt::Display for DetectionScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for DetectionScheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "heterodyne" => Ok(DetectionScheme::Heterodyne),
            "im_dd" | "imdd" | "im/dd" => Ok(DetectionScheme::ImDd),
            other => Err(Error::Config(format!(
                "unknown detection scheme `{other}` (expected heterodyne or im_dd)"
            ))),
        }
    }
}

/// `𝓑(λ) = ψ R² e^{−αδ} P̃s / (2qR·P_b + 2q·I_DC + N0)`.
pub fn big_b(scale: &SnrScale, scheme: DetectionScheme) -> f64 {
    scheme.psi() * scale.gain
}

fn check_nonneg(name: &'static str, v: f64) -> Result<()> {
    if v >= 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(
            name,
            format!("must be finite and >= 0, got {v}"),
        ))
    }
}

/// `½ log₂(1 + M) − M/(2 ln 2) · Φ(−M, 1, x)`.
fn se_kernel(m: f64, lerch_x: f64) -> Result<f64> {
    if m == 0.0 {
        return Ok(0.0);
    }
    let phi = lerch_phi(LerchArgs::order_one(-m, lerch_x)?, DEFAULT_REL_TOL)?;
    Ok(0.5 * m.ln_1p() / LN_2 - m / (2.0 * LN_2) * phi)
}

/// Ergodic spectral efficiency [bits/channel use] for `𝓑(λ) = b`.
pub fn ergodic_spectral_efficiency(law: &MisalignmentGainLaw, b: f64) -> Result<f64> {
    check_nonneg("b", b)?;
    se_kernel(b * law.a0 * law.a0, 1.0 + law.xi / 2.0)
}

/// Same quantity parameterized by the average SNR and `ξ`.
pub fn ergodic_se_from_average_snr(
    xi: f64,
    gamma_bar: f64,
    scheme: DetectionScheme,
) -> Result<f64> {
    check_nonneg("gamma_bar", gamma_bar)?;
    let m = scheme.psi() * (xi + 2.0) / xi * gamma_bar;
    se_kernel(m, 1.0 + xi / 2.0)
}

/// A lower bound that may be negative (vacuous) at low SNR or strong jitter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LowerBound {
    pub value: f64,
    pub vacuous: bool,
}

impl LowerBound {
    fn new(value: f64) -> Self {
        Self {
            value,
            vacuous: value < 0.0,
        }
    }
}

/// `½ log₂(1 + 𝓑 A0²) − 1 / (ξ ln 2)`.
pub fn ergodic_se_lower_bound(law: &MisalignmentGainLaw, b: f64) -> LowerBound {
    let m = b * law.a0 * law.a0;
    LowerBound::new(0.5 * m.ln_1p() / LN_2 - 1.0 / (law.xi * LN_2))
}

/// Lower bound parameterized by the average SNR.
pub fn ergodic_se_lower_bound_from_average_snr(
    xi: f64,
    gamma_bar: f64,
    scheme: DetectionScheme,
) -> LowerBound {
    let m = scheme.psi() * (xi + 2.0) / xi * gamma_bar;
    LowerBound::new(0.5 * m.ln_1p() / LN_2 - 1.0 / (xi * LN_2))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SubBand {
    /// Center wavelength [m].
    pub wavelength: f64,
    /// Width [Hz].
    pub width: f64,
}

/// Partition of the signal bandwidth into narrow, wavelength-flat sub-bands.
/// The band-to-wavelength assignment is the caller's choice.
#[derive(Debug, Clone, PartialEq)]
pub struct SubBandSpec {
    bands: Vec<SubBand>,
}

impl SubBandSpec {
    pub fn new(bands: Vec<SubBand>) -> Result<Self> {
        if bands.is_empty() {
            return Err(Error::invalid(
                "subbands",
                "at least one sub-band is required",
            ));
        }
        for b in &bands {
            if !(b.width > 0.0) || !b.width.is_finite() {
                return Err(Error::invalid(
                    "subbands",
                    format!("width must be > 0, got {}", b.width),
                ));
            }
            if !(b.wavelength > 0.0) || !b.wavelength.is_finite() {
                return Err(Error::invalid(
                    "subbands",
                    format!("wavelength must be > 0, got {}", b.wavelength),
                ));
            }
        }
        Ok(Self { bands })
    }

    pub fn bands(&self) -> &[SubBand] {
        &self.bands
    }

    pub fn total_width(&self) -> f64 {
        self.bands.iter().map(|b| b.width).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Capacity {
    /// [bits/s]
    pub exact: f64,
    /// [bits/s]
    pub lower_bound: LowerBound,
}

/// Narrow-band capacity `B · C` for a link whose bandwidth is below the
/// coherence bandwidth of the skin channel.
pub fn capacity_narrowband(bandwidth: f64, law: &MisalignmentGainLaw, b: f64) -> Result<Capacity> {
    check_nonneg("bandwidth", bandwidth)?;
    let se = ergodic_spectral_efficiency(law, b)?;
    let lb = ergodic_se_lower_bound(law, b);
    Ok(Capacity {
        exact: bandwidth * se,
        lower_bound: LowerBound::new(bandwidth * lb.value),
    })
}

/// Band-partitioned capacity `Σ Δf · C(λᵢ)`; each band uses the link's
/// geometry, signal PSD and receiver at its own wavelength.
pub fn capacity(link: &Link, spec: &SubBandSpec) -> Result<Capacity> {
    let mut exact = 0.0;
    let mut lower = 0.0;
    for band in spec.bands() {
        let op = link.operating_point_at(band.wavelength)?;
        let law = op.gain_law();
        let b = op.big_b();
        exact += band.width * ergodic_spectral_efficiency(&law, b)?;
        lower += band.width * ergodic_se_lower_bound(&law, b).value;
    }
    Ok(Capacity {
        exact,
        lower_bound: LowerBound::new(lower),
    })
}

/// SNR threshold for a target rate `r_th` [bits/s/Hz]: `(2^{2 r_th} − 1)/ψ`.
pub fn gamma_threshold(r_th: f64, scheme: DetectionScheme) -> f64 {
    (2f64.powf(2.0 * r_th) - 1.0) / scheme.psi()
}

/// Outage probability `P(γ ≤ γ_th)`. Non-positive thresholds give 0.
pub fn outage_probability(law: &MisalignmentGainLaw, scale: &SnrScale, gamma_th: f64) -> f64 {
    if gamma_th <= 0.0 {
        return 0.0;
    }
    if gamma_th <= scale.peak_snr(law.a0) {
        (gamma_th / scale.gain).powf(law.xi / 2.0) / law.a0.powf(law.xi)
    } else {
        1.0
    }
}

/// Outage probability in terms of the average SNR:
/// `((ξ/(ξ+2)) · γ_th/γ̄)^{ξ/2}` on the support, else 1.
pub fn outage_from_average_snr(xi: f64, gamma_th: f64, gamma_bar: f64) -> f64 {
    if gamma_th <= 0.0 {
        return 0.0;
    }
    let ratio = xi / (xi + 2.0) * gamma_th / gamma_bar;
    if ratio <= 1.0 {
        ratio.powf(xi / 2.0)
    } else {
        1.0
    }
}

/// `𝓗 = γ_th / (A0² G)`: the threshold relative to the zero-jitter peak SNR.
pub fn threshold_ratio(footprint: &BeamFootprint, scale: &SnrScale, gamma_th: f64) -> f64 {
    gamma_th / scale.peak_snr(footprint.a0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JitterTolerance {
    /// Largest tolerable jitter standard deviation [m].
    pub sigma_s: f64,
    /// `ξ` implied by `sigma_s`.
    pub xi: f64,
    /// `𝓗`.
    pub h: f64,
}

fn check_target(target_po: f64) -> Result<()> {
    if target_po > 0.0 && target_po < 1.0 {
        Ok(())
    } else {
        Err(Error::invalid(
            "target_outage",
            format!("must lie in (0, 1), got {target_po}"),
        ))
    }
}

/// Returns `(ln 𝓗, ln P_o)` after validating the target and feasibility.
fn log_ratio_inputs(
    target_po: f64,
    gamma_th: f64,
    footprint: &BeamFootprint,
    scale: &SnrScale,
) -> Result<(f64, f64, f64)> {
    check_target(target_po)?;
    if !(gamma_th > 0.0) || !gamma_th.is_finite() {
        return Err(Error::invalid(
            "gamma_th",
            format!("must be finite and > 0, got {gamma_th}"),
        ));
    }
    let h = threshold_ratio(footprint, scale, gamma_th);
    if h >= 1.0 {
        return Err(Error::Infeasible {
            h,
            best_case_outage: 1.0,
        });
    }
    Ok((h, h.ln(), target_po.ln()))
}

/// Largest jitter standard deviation meeting `P_o(γ_th) = target_po`:
/// `σ_s² = w_eq² ln 𝓗 / (8 ln P_o)`.
pub fn jitter_tolerance(
    target_po: f64,
    gamma_th: f64,
    footprint: &BeamFootprint,
    scale: &SnrScale,
) -> Result<JitterTolerance> {
    let (h, ln_h, ln_po) = log_ratio_inputs(target_po, gamma_th, footprint, scale)?;
    let sigma_s = (footprint.w_eq_sq * ln_h / (8.0 * ln_po)).sqrt();
    Ok(JitterTolerance {
        sigma_s,
        xi: 2.0 * ln_po / ln_h,
        h,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TargetOutageCapacity {
    pub jitter: JitterTolerance,
    /// [bits/s]
    pub exact: f64,
    /// [bits/s]
    pub lower_bound: LowerBound,
}

/// Narrow-band capacity of a link operated exactly at the target outage,
/// i.e. with `1 + ξ/2` replaced by `1 + ln P_o / ln 𝓗`.
pub fn capacity_at_target_outage(
    target_po: f64,
    gamma_th: f64,
    footprint: &BeamFootprint,
    scale: &SnrScale,
    scheme: DetectionScheme,
    bandwidth: f64,
) -> Result<TargetOutageCapacity> {
    let jitter = jitter_tolerance(target_po, gamma_th, footprint, scale)?;
    let (_, ln_h, ln_po) = log_ratio_inputs(target_po, gamma_th, footprint, scale)?;
    let m = big_b(scale, scheme) * footprint.a0 * footprint.a0;
    let exact = bandwidth * se_kernel(m, 1.0 + ln_po / ln_h)?;
    let lb = bandwidth / 2.0 * m.ln_1p() / LN_2 - bandwidth * ln_h / (2.0 * LN_2 * ln_po);
    Ok(TargetOutageCapacity {
        jitter,
        exact,
        lower_bound: LowerBound::new(lb),
    })
}

/// All closed-form metrics for one operating point.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricsReport {
    pub scheme: DetectionScheme,
    pub wavelength: f64,
    pub xi: f64,
    pub a0: f64,
    /// Average SNR (linear).
    pub gamma_bar: f64,
    pub gamma_bar_db: f64,
    /// Zero-displacement SNR `G · A0²` (linear).
    pub gamma_max: f64,
    pub gamma_th: f64,
    pub outage: f64,
    /// γ_th above the peak SNR: outage saturated at 1.
    pub outage_saturated: bool,
    /// [bits/channel use]
    pub spectral_efficiency: f64,
    /// False for IM/DD, where the value is itself a lower bound on capacity.
    pub spectral_efficiency_exact: bool,
    pub spectral_efficiency_lower_bound: LowerBound,
    pub bandwidth: f64,
    /// [bits/s]
    pub capacity: f64,
    pub capacity_lower_bound: LowerBound,
    /// ξ far outside the usual modelling range.
    pub xi_warning: bool,
}

impl MetricsReport {
    pub fn evaluate(op: &crate::link::OperatingPoint, gamma_th: f64) -> Result<Self> {
        let law = op.gain_law();
        let b = op.big_b();
        let gamma_bar = op.scale.average_snr(&law);
        let gamma_max = op.scale.peak_snr(law.a0);
        let se = ergodic_spectral_efficiency(&law, b)?;
        let se_lb = ergodic_se_lower_bound(&law, b);
        let cap = Capacity {
            exact: op.bandwidth * se,
            lower_bound: LowerBound::new(op.bandwidth * se_lb.value),
        };
        Ok(Self {
            scheme: op.scheme,
            wavelength: op.wavelength,
            xi: law.xi,
            a0: law.a0,
            gamma_bar,
            gamma_bar_db: to_db(gamma_bar),
            gamma_max,
            gamma_th,
            outage: outage_probability(&law, &op.scale, gamma_th),
            outage_saturated: gamma_th > gamma_max,
            spectral_efficiency: se,
            spectral_efficiency_exact: op.scheme.se_is_exact(),
            spectral_efficiency_lower_bound: se_lb,
            bandwidth: op.bandwidth,
            capacity: cap.exact,
            capacity_lower_bound: cap.lower_bound,
            xi_warning: op.params.xi_out_of_range(),
        })
    }

    /// Validity flags as a `;`-separated list (empty when none apply).
    pub fn flags(&self) -> String {
        let mut flags = Vec::new();
        if !self.spectral_efficiency_exact {
            flags.push("se_is_lower_bound");
        }
        if self.spectral_efficiency_lower_bound.vacuous {
            flags.push("vacuous_bound");
        }
        if self.outage_saturated {
            flags.push("outage_saturated");
        }
        if self.xi_warning {
            flags.push("xi_out_of_range");
        }
        flags.join(";")
    }
}
