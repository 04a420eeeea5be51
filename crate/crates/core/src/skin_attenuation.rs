//! Wavelength-dependent skin attenuation `α(λ)`.
//!
//! On disk: UTF-8 CSV with header `wavelength_nm,alpha_per_mm`, one sample per
//! row, `#` comment lines allowed anywhere. In memory everything is SI
//! (meters and 1/m). Comment lines are kept as the table's source note.

use std::path::Path;

use crate::error::{Error, Result};
use crate::units::{MM, NM};

pub const CSV_HEADER: &str = "wavelength_nm,alpha_per_mm";

/// Location of the bundled dataset relative to the repository root.
pub const BUNDLED_TABLE_PATH: &str = "crates/core/data/skin_attenuation_default.csv";

const BUNDLED_CSV: &str = include_str!("../data/skin_attenuation_default.csv");

const MIN_WAVELENGTH: f64 = 300.0 * NM;
const MAX_WAVELENGTH: f64 = 2000.0 * NM;

// Relative slack when matching a query wavelength to a sample.
const WAVELENGTH_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AttenuationSample {
    /// Wavelength in meters.
    pub wavelength: f64,
    /// Attenuation coefficient in 1/m.
    pub alpha: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SkinAttenuationTable {
    samples: Vec<AttenuationSample>,
    source: String,
}

impl SkinAttenuationTable {
    pub fn new(samples: Vec<AttenuationSample>, source: impl Into<String>) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::TableValidation(format!(
                "need at least 2 samples, got {}",
                samples.len()
            )));
        }
        for (i, s) in samples.iter().enumerate() {
            if !s.wavelength.is_finite() || !s.alpha.is_finite() {
                return Err(Error::TableValidation(format!("sample {i} is not finite")));
            }
            if s.alpha < 0.0 {
                return Err(Error::TableValidation(format!(
                    "sample {i}: negative attenuation {} 1/mm",
                    s.alpha * MM
                )));
            }
            if s.wavelength < MIN_WAVELENGTH * (1.0 - WAVELENGTH_EPS)
                || s.wavelength > MAX_WAVELENGTH * (1.0 + WAVELENGTH_EPS)
            {
                return Err(Error::TableValidation(format!(
                    "sample {i}: wavelength {} nm outside [300, 2000] nm",
                    s.wavelength / NM
                )));
            }
        }
        if let Some(w) = samples
            .windows(2)
            .find(|w| w[1].wavelength <= w[0].wavelength)
        {
            return Err(Error::TableValidation(format!(
                "wavelengths must be strictly increasing ({} nm followed by {} nm)",
                w[0].wavelength / NM,
                w[1].wavelength / NM
            )));
        }
        Ok(Self {
            samples,
            source: source.into(),
        })
    }

    /// Parses the on-disk CSV format.
    pub fn parse_csv(text: &str) -> Result<Self> {
        let mut source = Vec::new();
        let mut samples = Vec::new();
        let mut seen_header = false;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(comment) = line.strip_prefix('#') {
                source.push(comment.trim().to_string());
                continue;
            }
            if !seen_header {
                let normalized: String = line.chars().filter(|c| !c.is_whitespace()).collect();
                if normalized != CSV_HEADER {
                    return Err(Error::TableParse {
                        line: line_no,
                        reason: format!("expected header `{CSV_HEADER}`, found `{line}`"),
                    });
                }
                seen_header = true;
                continue;
            }
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            if fields.len() != 2 {
                return Err(Error::TableParse {
                    line: line_no,
                    reason: format!("expected 2 fields, found {}", fields.len()),
                });
            }
            let parse = |s: &str, what: &str| {
                s.parse::<f64>().map_err(|e| Error::TableParse {
                    line: line_no,
                    reason: format!("bad {what} `{s}`: {e}"),
                })
            };
            let wavelength_nm = parse(fields[0], "wavelength")?;
            let alpha_per_mm = parse(fields[1], "attenuation")?;
            samples.push(AttenuationSample {
                wavelength: wavelength_nm * NM,
                alpha: alpha_per_mm / MM,
            });
        }
        if !seen_header {
            return Err(Error::TableParse {
                line: text.lines().count().max(1),
                reason: format!("missing header `{CSV_HEADER}`"),
            });
        }
        Self::new(samples, source.join("\n"))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse_csv(&text)
    }

    /// The dataset shipped with the crate (400–1500 nm).
    pub fn bundled() -> Self {
        Self::parse_csv(BUNDLED_CSV).expect("bundled attenuation table is valid")
    }

    pub fn samples(&self) -> &[AttenuationSample] {
        &self.samples
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    /// Supported wavelength range in meters.
    pub fn range(&self) -> (f64, f64) {
        (
            self.samples[0].wavelength,
            self.samples[self.samples.len() - 1].wavelength,
        )
    }

    /// Attenuation in 1/m at `lambda` (meters), linear between samples, no extrapolation.
    pub fn alpha_at(&self, lambda: f64) -> Result<f64> {
        let (lo, hi) = self.range();
        let out_of_range = || Error::WavelengthOutOfRange {
            lambda_nm: lambda / NM,
            min_nm: lo / NM,
            max_nm: hi / NM,
        };
        if !lambda.is_finite()
            || lambda < lo * (1.0 - WAVELENGTH_EPS)
            || lambda > hi * (1.0 + WAVELENGTH_EPS)
        {
            return Err(out_of_range());
        }
        let idx = self
            .samples
            .partition_point(|s| s.wavelength < lambda * (1.0 - WAVELENGTH_EPS));
        let upper = self.samples[idx.min(self.samples.len() - 1)];
        if (upper.wavelength - lambda).abs() <= WAVELENGTH_EPS * lambda {
            return Ok(upper.alpha);
        }
        if idx == 0 {
            // Only reachable through the endpoint slack.
            return Ok(upper.alpha);
        }
        let lower = self.samples[idx - 1];
        let t = (lambda - lower.wavelength) / (upper.wavelength - lower.wavelength);
        Ok(lower.alpha * (1.0 - t) + upper.alpha * t)
    }
}

/// Reads a table from `path`.
pub fn load_table(path: impl AsRef<Path>) -> Result<SkinAttenuationTable> {
    SkinAttenuationTable::load(path)
}

/// Attenuation coefficient in 1/m at `lambda` meters.
pub fn alpha_at(table: &SkinAttenuationTable, lambda: f64) -> Result<f64> {
    table.alpha_at(lambda)
}
