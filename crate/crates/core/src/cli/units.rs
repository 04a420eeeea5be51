//! Unit-suffixed quantity parsing (`4mm`, `1100nm`, `20deg`, `0.01uW/MHz`).
//!
//! A bare number is read in the quantity's default human unit.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    /// Default unit: mm.
    Length,
    /// Default unit: nm.
    Wavelength,
    /// Default unit: degrees.
    Angle,
    /// Default unit: mm².
    Area,
    /// Default unit: µW.
    Power,
    /// Default unit: µW/MHz.
    Psd,
    /// Default unit: MHz.
    Frequency,
    /// Default unit: nA.
    Current,
    /// Current noise amplitude density; default unit pA/√Hz.
    CurrentDensity,
    /// Current variance; default unit A².
    CurrentVariance,
    /// Optical background power; default unit nW.
    BackgroundPower,
    /// Default unit: dB.
    Decibel,
    Dimensionless,
}

impl Quantity {
    fn units(self) -> &'static [(&'static str, f64)] {
        match self {
            Quantity::Length => &[
                ("mm", 1e-3),
                ("um", 1e-6),
                ("µm", 1e-6),
                ("nm", 1e-9),
                ("cm", 1e-2),
                ("m", 1.0),
            ],
            Quantity::Wavelength => &[
                ("nm", 1e-9),
                ("um", 1e-6),
                ("µm", 1e-6),
                ("mm", 1e-3),
                ("m", 1.0),
            ],
            Quantity::Angle => &[
                ("deg", std::f64::consts::PI / 180.0),
                ("°", std::f64::consts::PI / 180.0),
                ("mrad", 1e-3),
                ("rad", 1.0),
            ],
            Quantity::Area => &[
                ("mm2", 1e-6),
                ("mm^2", 1e-6),
                ("mm²", 1e-6),
                ("um2", 1e-12),
                ("um^2", 1e-12),
                ("cm2", 1e-4),
                ("cm^2", 1e-4),
                ("m2", 1.0),
                ("m^2", 1.0),
            ],
            Quantity::Power | Quantity::BackgroundPower => &[
                ("uw", 1e-6),
                ("µw", 1e-6),
                ("nw", 1e-9),
                ("pw", 1e-12),
                ("mw", 1e-3),
                ("w", 1.0),
            ],
            Quantity::Psd => &[
                ("uw/mhz", 1e-12),
                ("µw/mhz", 1e-12),
                ("nw/mhz", 1e-15),
                ("mw/mhz", 1e-9),
                ("w/mhz", 1e-6),
                ("w/hz", 1.0),
            ],
            Quantity::Frequency => &[("mhz", 1e6), ("khz", 1e3), ("ghz", 1e9), ("hz", 1.0)],
            Quantity::Current => &[
                ("na", 1e-9),
                ("pa", 1e-12),
                ("ua", 1e-6),
                ("µa", 1e-6),
                ("ma", 1e-3),
                ("a", 1.0),
            ],
            Quantity::CurrentDensity => &[
                ("pa/sqrthz", 1e-12),
                ("pa/√hz", 1e-12),
                ("pa/rthz", 1e-12),
                ("na/sqrthz", 1e-9),
                ("na/√hz", 1e-9),
                ("a/sqrthz", 1.0),
                ("a/√hz", 1.0),
            ],
            Quantity::CurrentVariance => &[("a2", 1.0), ("a^2", 1.0), ("a²", 1.0)],
            Quantity::Decibel => &[("db", 1.0)],
            Quantity::Dimensionless => &[],
        }
    }

    /// Scale of a bare number.
    fn default_scale(self) -> f64 {
        match self {
            Quantity::Length => 1e-3,
            Quantity::Wavelength => 1e-9,
            Quantity::Angle => std::f64::consts::PI / 180.0,
            Quantity::Area => 1e-6,
            Quantity::Power => 1e-6,
            Quantity::BackgroundPower => 1e-9,
            Quantity::Psd => 1e-12,
            Quantity::Frequency => 1e6,
            Quantity::Current => 1e-9,
            Quantity::CurrentDensity => 1e-12,
            Quantity::CurrentVariance | Quantity::Decibel | Quantity::Dimensionless => 1.0,
        }
    }

    /// Converts an SI value back into the default human unit.
    pub fn to_human(self, si: f64) -> f64 {
        si / self.default_scale()
    }
}

fn split_number(s: &str) -> (&str, &str) {
    let mut end = 0;
    let bytes = s.as_bytes();
    for (i, &c) in bytes.iter().enumerate() {
        let ok = c.is_ascii_digit()
            || c == b'.'
            || ((c == b'+' || c == b'-') && (i == 0 || matches!(bytes[i - 1], b'e' | b'E')))
            || ((c == b'e' || c == b'E')
                && i > 0
                && bytes
                    .get(i + 1)
                    .is_some_and(|n| n.is_ascii_digit() || *n == b'-' || *n == b'+'));
        if !ok {
            break;
        }
        end = i + 1;
    }
    s.split_at(end)
}

/// Parses `text` as a quantity and returns its SI value.
pub fn parse_quantity(text: &str, kind: Quantity) -> Result<f64> {
    let trimmed = text.trim();
    let (num, unit) = split_number(trimmed);
    let value: f64 = num
        .parse()
        .map_err(|_| Error::Config(format!("cannot parse a number from `{text}`")))?;
    let unit = unit.trim().to_lowercase();
    let unit: String = unit.chars().filter(|c| !c.is_whitespace()).collect();
    let scale = if unit.is_empty() {
        kind.default_scale()
    } else {
        kind.units()
            .iter()
            .find(|(u, _)| *u == unit)
            .map(|(_, s)| *s)
            .ok_or_else(|| {
                let known: Vec<&str> = kind.units().iter().map(|(u, _)| *u).collect();
                Error::Config(format!(
                    "unknown unit `{unit}` in `{text}` (accepted: {})",
                    known.join(", ")
                ))
            })?
    };
    let si = value * scale;
    if !si.is_finite() {
        return Err(Error::Config(format!("`{text}` is not finite")));
    }
    Ok(si)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-12 * b.abs()
    }

    #[test]
    fn suffixed_values() {
        assert!(close(
            parse_quantity("4mm", Quantity::Length).unwrap(),
            4e-3
        ));
        assert!(close(
            parse_quantity("1100nm", Quantity::Wavelength).unwrap(),
            1.1e-6
        ));
        assert!(close(
            parse_quantity("20deg", Quantity::Angle).unwrap(),
            20f64.to_radians()
        ));
        assert!(close(
            parse_quantity("0.01uW/MHz", Quantity::Psd).unwrap(),
            1e-14
        ));
        assert!(close(
            parse_quantity("10MHz", Quantity::Frequency).unwrap(),
            1e7
        ));
        assert!(close(
            parse_quantity("1.3pA/sqrtHz", Quantity::CurrentDensity).unwrap(),
            1.3e-12
        ));
        assert!(close(
            parse_quantity("1 mm2", Quantity::Area).unwrap(),
            1e-6
        ));
        assert!(close(
            parse_quantity("1e-3m", Quantity::Length).unwrap(),
            1e-3
        ));
        assert!(close(
            parse_quantity("-10dB", Quantity::Decibel).unwrap(),
            -10.0
        ));
    }

    #[test]
    fn bare_numbers_use_default_unit() {
        assert!(close(parse_quantity("4", Quantity::Length).unwrap(), 4e-3));
        assert!(close(
            parse_quantity("1100", Quantity::Wavelength).unwrap(),
            1.1e-6
        ));
        assert!(close(
            parse_quantity("0.05", Quantity::Current).unwrap(),
            5e-11
        ));
        assert_eq!(parse_quantity("0.8", Quantity::Dimensionless).unwrap(), 0.8);
    }

    #[test]
    fn bad_input() {
        assert!(parse_quantity("4furlongs", Quantity::Length).is_err());
        assert!(parse_quantity("mm", Quantity::Length).is_err());
        assert!(parse_quantity("0.8x", Quantity::Dimensionless).is_err());
    }
}
