//! Photodiode responsivity, receiver noise, and the SNR functionals.
//!
//! Two equivalent forms are exposed. The PSD form divides the signal PSD
//! `P̃s` [W/Hz] by a current-noise PSD `2qR·P_b + 2q·I_DC + N0` [A²/Hz]; the
//! power form divides the average power `P_s` [W] by the noise variance
//! `2qRB·P_b + 2qB·I_DC + σ_th²` [A²]. They coincide when `σ_th² = N0·B` and
//! `P_s = P̃s·B`.

use crate::channel::MisalignmentGainLaw;
use crate::error::{Error, Result};
use crate::link_metrics::DetectionScheme;

/// Elementary charge [C].
pub const ELECTRON_CHARGE: f64 = 1.602_176_634e-19;
/// Planck constant [J·s].
pub const PLANCK: f64 = 6.626_070_15e-34;
/// Speed of light in vacuum [m/s].
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Relative slack allowed between `P_s` and `P̃s·B` when both are given.
pub const POWER_CONSISTENCY_TOL: f64 = 1e-9;

/// Photodiode responsivity `R = η q λ / (h c)` in A/W.
pub fn responsivity(eta: f64, lambda: f64) -> f64 {
    eta * ELECTRON_CHARGE * lambda / (PLANCK * SPEED_OF_LIGHT)
}

/// Thermal noise of the receiver front end.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ThermalNoise {
    /// Current-noise PSD `N0` [A²/Hz].
    Psd(f64),
    /// Integrated variance `σ_th²` [A²].
    Variance(f64),
}

impl ThermalNoise {
    pub fn psd(&self, bandwidth: f64) -> f64 {
        match *self {
            ThermalNoise::Psd(n0) => n0,
            ThermalNoise::Variance(v) => v / bandwidth,
        }
    }

    pub fn variance(&self, bandwidth: f64) -> f64 {
        match *self {
            ThermalNoise::Psd(n0) => n0 * bandwidth,
            ThermalNoise::Variance(v) => v,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RxConfig {
    /// Quantum efficiency in (0, 1].
    pub eta: f64,
    /// Dark current [A].
    pub dark_current: f64,
    /// Background optical power [W].
    pub background_power: f64,
    pub thermal: ThermalNoise,
    pub scheme: DetectionScheme,
}

impl RxConfig {
    pub fn new(
        eta: f64,
        dark_current: f64,
        background_power: f64,
        thermal: ThermalNoise,
        scheme: DetectionScheme,
    ) -> Result<Self> {
        if !(eta > 0.0 && eta <= 1.0) {
            return Err(Error::invalid(
                "eta",
                format!("must lie in (0, 1], got {eta}"),
            ));
        }
        if !(dark_current >= 0.0) || !dark_current.is_finite() {
            return Err(Error::invalid(
                "dark_current",
                format!("must be >= 0, got {dark_current}"),
            ));
        }
        if !(background_power >= 0.0) || !background_power.is_finite() {
            return Err(Error::invalid(
                "background_power",
                format!("must be >= 0, got {background_power}"),
            ));
        }
        let t = match thermal {
            ThermalNoise::Psd(v) | ThermalNoise::Variance(v) => v,
        };
        if !(t >= 0.0) || !t.is_finite() {
            return Err(Error::invalid(
                "thermal_noise",
                format!("must be >= 0, got {t}"),
            ));
        }
        Ok(Self {
            eta,
            dark_current,
            background_power,
            thermal,
            scheme,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TxConfig {
    /// Operating wavelength [m].
    pub wavelength: f64,
    /// Signal power spectral density `P̃s` [W/Hz].
    pub signal_psd: f64,
    /// Communication bandwidth [Hz].
    pub bandwidth: f64,
}

impl TxConfig {
    pub fn new(wavelength: f64, signal_psd: f64, bandwidth: f64) -> Result<Self> {
        for (name, v) in [
            ("wavelength", wavelength),
            ("signal_psd", signal_psd),
            ("bandwidth", bandwidth),
        ] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::invalid(
                    name,
                    format!("must be finite and > 0, got {v}"),
                ));
            }
        }
        Ok(Self {
            wavelength,
            signal_psd,
            bandwidth,
        })
    }

    /// Builds from the average power `P_s`, with `P̃s = P_s / B`.
    pub fn from_power(wavelength: f64, average_power: f64, bandwidth: f64) -> Result<Self> {
        Self::new(wavelength, average_power / bandwidth, bandwidth)
    }

    /// Builds from both `P_s` and `P̃s`, which must satisfy `P_s = P̃s·B`.
    pub fn with_power_and_psd(
        wavelength: f64,
        average_power: f64,
        signal_psd: f64,
        bandwidth: f64,
    ) -> Result<Self> {
        let implied = signal_psd * bandwidth;
        if ((average_power - implied) / implied).abs() > POWER_CONSISTENCY_TOL {
            return Err(Error::invalid(
                "average_power",
                format!("P_s = {average_power:e} W disagrees with P̃s·B = {implied:e} W"),
            ));
        }
        Self::new(wavelength, signal_psd, bandwidth)
    }

    /// `P_s = P̃s · B` [W].
    pub fn average_power(&self) -> f64 {
        self.signal_psd * self.bandwidth
    }
}

/// `2qR·P_b + 2q·I_DC + N0` [A²/Hz].
pub fn noise_denominator_psd(rx: &RxConfig, responsivity: f64, bandwidth: f64) -> f64 {
    2.0 * ELECTRON_CHARGE * responsivity * rx.background_power
        + 2.0 * ELECTRON_CHARGE * rx.dark_current
        + rx.thermal.psd(bandwidth)
}

/// `σ² = σ_b² + σ_DC² + σ_th²` [A²].
pub fn noise_variance(rx: &RxConfig, responsivity: f64, bandwidth: f64) -> f64 {
    2.0 * ELECTRON_CHARGE * responsivity * bandwidth * rx.background_power
        + 2.0 * ELECTRON_CHARGE * bandwidth * rx.dark_current
        + rx.thermal.variance(bandwidth)
}

/// Instantaneous SNR (PSD form) for a misalignment gain `hp`.
pub fn instantaneous_snr(
    hp: f64,
    responsivity: f64,
    h_l_sq: f64,
    tx: &TxConfig,
    rx: &RxConfig,
) -> f64 {
    responsivity * responsivity * h_l_sq * hp * hp * tx.signal_psd
        / noise_denominator_psd(rx, responsivity, tx.bandwidth)
}

/// Instantaneous SNR (power form).
pub fn instantaneous_snr_power_form(
    hp: f64,
    responsivity: f64,
    h_l_sq: f64,
    tx: &TxConfig,
    rx: &RxConfig,
) -> f64 {
    responsivity * responsivity * h_l_sq * hp * hp * tx.average_power()
        / noise_variance(rx, responsivity, tx.bandwidth)
}

/// Closed-form average SNR `G · ξ A0² / (ξ + 2)`.
pub fn average_snr(
    law: &MisalignmentGainLaw,
    responsivity: f64,
    h_l_sq: f64,
    tx: &TxConfig,
    rx: &RxConfig,
) -> f64 {
    SnrScale::new(responsivity, h_l_sq, tx, rx).average_snr(law)
}

/// The deterministic part of the SNR: `γ = gain · h_p²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SnrScale {
    pub responsivity: f64,
    pub h_l_sq: f64,
    /// Noise PSD [A²/Hz].
    pub noise_psd: f64,
    /// `R² h_l² P̃s / noise_psd`.
    pub gain: f64,
}

impl SnrScale {
    pub fn new(responsivity: f64, h_l_sq: f64, tx: &TxConfig, rx: &RxConfig) -> Self {
        let noise_psd = noise_denominator_psd(rx, responsivity, tx.bandwidth);
        Self {
            responsivity,
            h_l_sq,
            noise_psd,
            gain: responsivity * responsivity * h_l_sq * tx.signal_psd / noise_psd,
        }
    }

    pub fn snr(&self, hp: f64) -> f64 {
        self.gain * hp * hp
    }

    /// Peak SNR `γ_max = G · A0²`, reached at zero displacement.
    pub fn peak_snr(&self, a0: f64) -> f64 {
        self.gain * a0 * a0
    }

    pub fn average_snr(&self, law: &MisalignmentGainLaw) -> f64 {
        self.gain * law.second_moment()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::units::{nm, NA, PA};

    fn baseline_rx(thermal: ThermalNoise) -> RxConfig {
        RxConfig::new(0.8, 0.05 * NA, 0.0, thermal, DetectionScheme::Heterodyne).unwrap()
    }

    fn n0() -> f64 {
        (1.3 * PA) * (1.3 * PA)
    }

    #[test]
    fn responsivity_values() {
        assert!((responsivity(1.0, nm(1239.84)) - 1.0).abs() < 1e-5);
        // 30-digit reference: 0.709767866486730700
        assert!((responsivity(0.8, nm(1100.0)) - 0.709_767_866_486_730_7).abs() < 1e-14);
        let r = responsivity(0.8, nm(900.0));
        assert!((responsivity(0.4, nm(900.0)) - r / 2.0).abs() < 1e-16);
    }

    #[test]
    fn noise_denominator_cases() {
        let ideal = RxConfig::new(
            0.8,
            0.0,
            0.0,
            ThermalNoise::Psd(n0()),
            DetectionScheme::Heterodyne,
        )
        .unwrap();
        assert_eq!(noise_denominator_psd(&ideal, 0.7, 1e7), n0());

        let rx = baseline_rx(ThermalNoise::Psd(n0()));
        let d = noise_denominator_psd(&rx, 0.7, 1e7);
        // 30-digit reference: 1.69001602176633962e-24
        assert!((d - 1.690_016_021_766_339_6e-24).abs() < 1e-36);

        let mut doubled = rx;
        doubled.dark_current *= 2.0;
        let d2 = noise_denominator_psd(&doubled, 0.7, 1e7);
        let expected = 2.0 * ELECTRON_CHARGE * rx.dark_current;
        assert!(((d2 - d) - expected).abs() < 1e-9 * expected);
    }

    #[test]
    fn psd_and_power_forms_agree() {
        let bw = 1e7;
        let tx = TxConfig::with_power_and_psd(nm(1100.0), 1e-7, 1e-14, bw).unwrap();
        let mut rx_psd = baseline_rx(ThermalNoise::Psd(n0()));
        rx_psd.background_power = 3e-9;
        let mut rx_var = baseline_rx(ThermalNoise::Variance(n0() * bw));
        rx_var.background_power = 3e-9;
        let r = responsivity(0.8, tx.wavelength);
        let a = instantaneous_snr(0.6, r, 0.4, &tx, &rx_psd);
        let b = instantaneous_snr_power_form(0.6, r, 0.4, &tx, &rx_var);
        let c = instantaneous_snr(0.6, r, 0.4, &tx, &rx_var);
        assert!(((a - b) / a).abs() < 1e-12);
        assert!(((a - c) / a).abs() < 1e-12);
    }

    #[test]
    fn inconsistent_power_rejected() {
        assert!(TxConfig::with_power_and_psd(nm(1100.0), 1.1e-7, 1e-14, 1e7).is_err());
        assert!(TxConfig::new(nm(1100.0), 0.0, 1e7).is_err());
        assert_eq!(
            TxConfig::from_power(nm(1100.0), 1e-7, 1e7)
                .unwrap()
                .signal_psd,
            1e-14
        );
    }

    #[test]
    fn rx_validation() {
        let t = ThermalNoise::Psd(n0());
        assert!(RxConfig::new(0.0, 0.0, 0.0, t, DetectionScheme::Heterodyne).is_err());
        assert!(RxConfig::new(1.2, 0.0, 0.0, t, DetectionScheme::Heterodyne).is_err());
        assert!(RxConfig::new(0.5, -1.0, 0.0, t, DetectionScheme::Heterodyne).is_err());
        assert!(RxConfig::new(1.0, 0.0, 0.0, t, DetectionScheme::ImDd).is_ok());
    }

    #[test]
    fn snr_limits() {
        let tx = TxConfig::new(nm(1100.0), 1e-14, 1e7).unwrap();
        let rx = baseline_rx(ThermalNoise::Psd(n0()));
        let r = responsivity(rx.eta, tx.wavelength);
        let scale = SnrScale::new(r, 0.6, &tx, &rx);
        assert_eq!(instantaneous_snr(0.0, r, 0.6, &tx, &rx), 0.0);
        let a0 = 0.7;
        assert!(
            ((instantaneous_snr(a0, r, 0.6, &tx, &rx) - scale.peak_snr(a0)) / scale.peak_snr(a0))
                .abs()
                < 1e-14
        );

        let tx2 = TxConfig::new(nm(1100.0), 3e-14, 1e7).unwrap();
        let ratio =
            instantaneous_snr(0.3, r, 0.6, &tx2, &rx) / instantaneous_snr(0.3, r, 0.6, &tx, &rx);
        assert!((ratio - 3.0).abs() < 1e-12);

        let law2 = MisalignmentGainLaw::new(a0, 2.0).unwrap();
        assert!(
            (scale.average_snr(&law2) - scale.peak_snr(a0) / 2.0).abs() / scale.peak_snr(a0)
                < 1e-15
        );
        let big = MisalignmentGainLaw::new(a0, 1e12).unwrap();
        assert!((scale.average_snr(&big) / scale.peak_snr(a0) - 1.0).abs() < 1e-11);
        assert!(scale.average_snr(&big) < scale.peak_snr(a0));
    }
}
