//! Run configuration: baked-in baseline, `key=value` config files, and
//! command-line overrides, applied in that order.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use super::units::{parse_quantity, Quantity};
use crate::channel::{Aperture, LinkGeometry};
use crate::error::{Error, Result};
use crate::link::{Link, OperatingPoint};
use crate::link_metrics::{gamma_threshold, DetectionScheme};
use crate::monte_carlo::McConfig;
use crate::noise_snr::{RxConfig, ThermalNoise, TxConfig};
use crate::skin_attenuation::SkinAttenuationTable;
use crate::units::from_db;

/// Numeric parameters addressable from config files, flags and sweep axes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Param {
    Delta,
    Lambda,
    Theta,
    Area,
    ApertureRadius,
    SigmaS,
    Xi,
    Eta,
    DarkCurrent,
    BackgroundPower,
    N0,
    SigmaThSq,
    Psd,
    Power,
    Bandwidth,
    RTh,
    GammaTh,
    GammaThNorm,
}

impl Param {
    pub const ALL: [Param; 18] = [
        Param::Delta,
        Param::Lambda,
        Param::Theta,
        Param::Area,
        Param::ApertureRadius,
        Param::SigmaS,
        Param::Xi,
        Param::Eta,
        Param::DarkCurrent,
        Param::BackgroundPower,
        Param::N0,
        Param::SigmaThSq,
        Param::Psd,
        Param::Power,
        Param::Bandwidth,
        Param::RTh,
        Param::GammaTh,
        Param::GammaThNorm,
    ];

    pub fn key(self) -> &'static str {
        match self {
            Param::Delta => "delta",
            Param::Lambda => "lambda",
            Param::Theta => "theta",
            Param::Area => "area",
            Param::ApertureRadius => "aperture_radius",
            Param::SigmaS => "sigma_s",
            Param::Xi => "xi",
            Param::Eta => "eta",
            Param::DarkCurrent => "dark_current",
            Param::BackgroundPower => "background_power",
            Param::N0 => "n0",
            Param::SigmaThSq => "sigma_th_sq",
            Param::Psd => "psd",
            Param::Power => "power",
            Param::Bandwidth => "bandwidth",
            Param::RTh => "r_th",
            Param::GammaTh => "gamma_th",
            Param::GammaThNorm => "gamma_th_norm",
        }
    }

    pub fn from_key(key: &str) -> Option<Param> {
        let k = key.trim().to_ascii_lowercase().replace('-', "_");
        let alias = match k.as_str() {
            "ptilde_s" => Some(Param::Psd),
            "b" => Some(Param::Bandwidth),
            "p_s" => Some(Param::Power),
            "i_dc" => Some(Param::DarkCurrent),
            "p_b" => Some(Param::BackgroundPower),
            _ => None,
        };
        alias.or_else(|| Param::ALL.into_iter().find(|p| p.key() == k))
    }

    pub fn quantity(self) -> Quantity {
        match self {
            Param::Delta | Param::ApertureRadius | Param::SigmaS => Quantity::Length,
            Param::Lambda => Quantity::Wavelength,
            Param::Theta => Quantity::Angle,
            Param::Area => Quantity::Area,
            Param::Xi | Param::Eta | Param::RTh | Param::GammaTh => Quantity::Dimensionless,
            Param::DarkCurrent => Quantity::Current,
            Param::BackgroundPower => Quantity::BackgroundPower,
            Param::N0 => Quantity::CurrentDensity,
            Param::SigmaThSq => Quantity::CurrentVariance,
            Param::Psd => Quantity::Psd,
            Param::Power => Quantity::Power,
            Param::Bandwidth => Quantity::Frequency,
            Param::GammaThNorm => Quantity::Decibel,
        }
    }
}

/// How the SNR threshold is chosen.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Threshold {
    /// From a target rate [bits/s/Hz] through `(2^{2r} − 1)/ψ`.
    Rate(f64),
    /// Fixed linear SNR threshold.
    Snr(f64),
    /// Normalized SNR `γ̄/γ_th` in dB.
    NormalizedDb(f64),
}

/// All inputs of one run, stored in SI units.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub delta: f64,
    pub theta: f64,
    pub aperture: Aperture,
    pub sigma_s: f64,
    /// When set, the jitter SD is derived from this `ξ` instead of `sigma_s`.
    pub xi: Option<f64>,
    pub lambda: f64,
    pub eta: f64,
    pub dark_current: f64,
    pub background_power: f64,
    pub thermal: ThermalNoise,
    pub psd: Option<f64>,
    pub power: Option<f64>,
    pub bandwidth: f64,
    pub threshold: Threshold,
    pub scheme: DetectionScheme,
    pub attenuation_file: Option<PathBuf>,
    pub seed: u64,
    pub samples: u64,
    pub streams: usize,
}

pub const DEFAULT_PSD: f64 = 0.01e-12; // 0.01 µW/MHz
pub const DEFAULT_SEED: u64 = 20_181_101;
pub const DEFAULT_SAMPLES: u64 = 1_000_000;

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            delta: 4e-3,
            theta: 20f64.to_radians(),
            aperture: Aperture::Area(1e-6),
            sigma_s: 0.5e-3,
            xi: None,
            lambda: 1100e-9,
            eta: 0.8,
            dark_current: 0.05e-9,
            background_power: 0.0,
            thermal: ThermalNoise::Psd(1.3e-12 * 1.3e-12),
            psd: Some(DEFAULT_PSD),
            power: Some(0.1e-6),
            bandwidth: 10e6,
            threshold: Threshold::Rate(1.0),
            scheme: DetectionScheme::Heterodyne,
            attenuation_file: None,
            seed: DEFAULT_SEED,
            samples: DEFAULT_SAMPLES,
            streams: std::thread::available_parallelism().map_or(1, |n| n.get()),
        }
    }
}

impl RunConfig {
    /// Applies a numeric parameter given in SI units.
    pub fn set_si(&mut self, param: Param, v: f64) {
        match param {
            Param::Delta => self.delta = v,
            Param::Lambda => self.lambda = v,
            Param::Theta => self.theta = v,
            Param::Area => self.aperture = Aperture::Area(v),
            Param::ApertureRadius => self.aperture = Aperture::Radius(v),
            Param::SigmaS => {
                self.sigma_s = v;
                self.xi = None;
            }
            Param::Xi => self.xi = Some(v),
            Param::Eta => self.eta = v,
            Param::DarkCurrent => self.dark_current = v,
            Param::BackgroundPower => self.background_power = v,
            Param::N0 => self.thermal = ThermalNoise::Psd(v * v),
            Param::SigmaThSq => self.thermal = ThermalNoise::Variance(v),
            Param::Psd => {
                self.psd = Some(v);
                self.power = None;
            }
            Param::Power => {
                self.power = Some(v);
                self.psd = None;
            }
            Param::Bandwidth => self.bandwidth = v,
            Param::RTh => self.threshold = Threshold::Rate(v),
            Param::GammaTh => self.threshold = Threshold::Snr(v),
            Param::GammaThNorm => self.threshold = Threshold::NormalizedDb(v),
        }
    }

    /// Applies one `key = value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let k = key.trim().to_ascii_lowercase().replace('-', "_");
        let value = value.trim();
        match k.as_str() {
            "scheme" => self.scheme = value.parse()?,
            "attenuation_file" => self.attenuation_file = Some(PathBuf::from(value)),
            "seed" => self.seed = parse_int(&k, value)?,
            "samples" => self.samples = parse_int(&k, value)?,
            "streams" => self.streams = parse_int(&k, value)?,
            _ => {
                let param = Param::from_key(&k)
                    .ok_or_else(|| Error::Config(format!("unknown parameter `{key}`")))?;
                let v = parse_quantity(value, param.quantity())
                    .map_err(|e| Error::Config(format!("{}: {e}", param.key())))?;
                self.set_si(param, v);
            }
        }
        Ok(())
    }

    /// Applies a `key=value` file; `#` starts a comment.
    pub fn apply_file(&mut self, path: &Path) -> Result<()> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        self.apply_str(&text)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }

    pub fn apply_str(&mut self, text: &str) -> Result<()> {
        let mut pairs = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key=value", i + 1)))?;
            pairs.push((i + 1, k.trim().to_string(), v.trim().to_string()));
        }
        self.apply_layer(pairs.iter().map(|(n, k, v)| (*n, k.as_str(), v.as_str())))
    }

    /// Applies one layer of settings (a file, or the command line).
    ///
    /// Setting only one of `psd` / `power` derives the other from the
    /// bandwidth; setting both in the same layer keeps both and they must agree.
    pub fn apply_layer<'a>(
        &mut self,
        pairs: impl IntoIterator<Item = (usize, &'a str, &'a str)>,
    ) -> Result<()> {
        let (mut psd, mut power) = (None, None);
        for (line, k, v) in pairs {
            let at = |e: Error| {
                if line == 0 {
                    e
                } else {
                    Error::Config(format!("line {line}: {e}"))
                }
            };
            self.set(k, v).map_err(at)?;
            match Param::from_key(k) {
                Some(Param::Psd) => psd = self.psd,
                Some(Param::Power) => power = self.power,
                _ => {}
            }
        }
        if psd.is_some() && power.is_some() {
            self.psd = psd;
            self.power = power;
        }
        Ok(())
    }

    pub fn load_table(&self) -> Result<SkinAttenuationTable> {
        match &self.attenuation_file {
            Some(p) => SkinAttenuationTable::load(p),
            None => Ok(SkinAttenuationTable::bundled()),
        }
    }

    pub fn geometry(&self) -> Result<LinkGeometry> {
        let base = LinkGeometry::new(self.delta, self.theta, self.aperture, self.sigma_s)?;
        match self.xi {
            Some(xi) if !(xi > 0.0) || !xi.is_finite() => Err(Error::invalid(
                "xi",
                format!("must be finite and > 0, got {xi}"),
            )),
            Some(xi) => base.with_sigma_s(base.footprint().sigma_for_xi(xi)),
            None => Ok(base),
        }
    }

    pub fn tx(&self) -> Result<TxConfig> {
        match (self.power, self.psd) {
            (Some(p), Some(s)) => TxConfig::with_power_and_psd(self.lambda, p, s, self.bandwidth),
            (Some(p), None) => TxConfig::from_power(self.lambda, p, self.bandwidth),
            (None, Some(s)) => TxConfig::new(self.lambda, s, self.bandwidth),
            (None, None) => TxConfig::new(self.lambda, DEFAULT_PSD, self.bandwidth),
        }
    }

    pub fn rx(&self) -> Result<RxConfig> {
        RxConfig::new(
            self.eta,
            self.dark_current,
            self.background_power,
            self.thermal,
            self.scheme,
        )
    }

    pub fn link(&self, table: Arc<SkinAttenuationTable>) -> Result<Link> {
        Ok(Link::new(table, self.geometry()?, self.tx()?, self.rx()?))
    }

    pub fn mc(&self) -> Result<McConfig> {
        McConfig::new(self.samples, self.seed, self.streams)
    }

    /// The linear SNR threshold at an operating point.
    pub fn gamma_th(&self, op: &OperatingPoint) -> f64 {
        match self.threshold {
            Threshold::Rate(r) => gamma_threshold(r, self.scheme),
            Threshold::Snr(g) => g,
            Threshold::NormalizedDb(db) => op.average_snr() / from_db(db),
        }
    }
}

fn parse_int<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    let cleaned: String = value.chars().filter(|c| *c != '_').collect();
    if let Ok(v) = cleaned.parse::<T>() {
        return Ok(v);
    }
    // Accept integral scientific notation such as 1e6.
    match cleaned.parse::<f64>() {
        Ok(f) if f.fract() == 0.0 && f >= 0.0 => format!("{f:.0}")
            .parse::<T>()
            .map_err(|_| Error::Config(format!("{key}: `{value}` out of range"))),
        _ => Err(Error::Config(format!(
            "{key}: expected an integer, got `{value}`"
        ))),
    }
}
