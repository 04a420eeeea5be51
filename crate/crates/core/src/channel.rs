//! Beam/aperture geometry, deterministic path loss, and the probability law
//! of the misalignment gain `h_p`.
//!
//! The collected power fraction at radial displacement `r` is modeled as
//! `h_p = A0 · exp(-2 r² / w_eq²)` with `r` Rayleigh distributed with scale
//! `σ_s`. That gives `F_{h_p}(x) = (x / A0)^ξ` on `[0, A0]`, where
//! `ξ = w_eq² / (4 σ_s²)`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::skin_attenuation::SkinAttenuationTable;
use crate::specfun::erf;

/// Range of `ξ` outside of which reports carry a warning.
pub const XI_WARN_LOW: f64 = 0.05;
pub const XI_WARN_HIGH: f64 = 1e3;

/// Receiver aperture, given either as a radius or as an area (both SI).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Aperture {
    Radius(f64),
    Area(f64),
}

impl Aperture {
    pub fn radius(&self) -> f64 {
        match *self {
            Aperture::Radius(r) => r,
            Aperture::Area(a) => (a / PI).sqrt(),
        }
    }

    pub fn area(&self) -> f64 {
        match *self {
            Aperture::Radius(r) => PI * r * r,
            Aperture::Area(a) => a,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkGeometry {
    /// Skin thickness (TX–RX distance) [m].
    pub delta: f64,
    /// Full divergence angle [rad].
    pub theta: f64,
    /// Aperture radius β [m].
    pub aperture_radius: f64,
    /// Pointing-jitter standard deviation [m].
    pub sigma_s: f64,
}

fn positive(name: &'static str, v: f64) -> Result<f64> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(Error::invalid(
            name,
            format!("must be finite and > 0, got {v}"),
        ))
    }
}

impl LinkGeometry {
    pub fn new(delta: f64, theta: f64, aperture: Aperture, sigma_s: f64) -> Result<Self> {
        let delta = positive("delta", delta)?;
        let theta = positive("theta", theta)?;
        if theta >= PI {
            return Err(Error::invalid(
                "theta",
                format!("must be below π rad, got {theta}"),
            ));
        }
        let aperture_radius = positive("aperture", aperture.radius())?;
        let sigma_s = positive("sigma_s", sigma_s)?;
        let fp = BeamFootprint::new(delta, theta, aperture_radius);
        if !(fp.w_eq_sq.is_finite() && fp.a0 > 0.0) {
            return Err(Error::invalid(
                "aperture",
                format!(
                    "radius {aperture_radius:e} m is out of scale with the beam footprint \
                     {:e} m; the Gaussian collection model does not apply",
                    fp.w_delta
                ),
            ));
        }
        Ok(Self {
            delta,
            theta,
            aperture_radius,
            sigma_s,
        })
    }

    pub fn aperture_area(&self) -> f64 {
        PI * self.aperture_radius * self.aperture_radius
    }

    pub fn footprint(&self) -> BeamFootprint {
        BeamFootprint::new(self.delta, self.theta, self.aperture_radius)
    }

    pub fn with_sigma_s(mut self, sigma_s: f64) -> Result<Self> {
        self.sigma_s = positive("sigma_s", sigma_s)?;
        Ok(self)
    }
}

/// Beam/aperture quantities that do not depend on the pointing jitter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeamFootprint {
    /// Beam radius at the receiver plane [m].
    pub w_delta: f64,
    pub upsilon: f64,
    /// Collected power fraction with zero displacement.
    pub a0: f64,
    /// Squared equivalent beam radius [m²].
    pub w_eq_sq: f64,
}

impl BeamFootprint {
    /// Inputs are assumed validated (see [`LinkGeometry::new`]).
    pub fn new(delta: f64, theta: f64, aperture_radius: f64) -> Self {
        let w_delta = delta * (theta / 2.0).tan();
        let upsilon = PI.sqrt() * aperture_radius / (2f64.sqrt() * w_delta);
        let e = erf(upsilon);
        let a0 = e * e;
        let w_eq_sq =
            w_delta * w_delta * PI.sqrt() * e / (2.0 * upsilon * (-upsilon * upsilon).exp());
        Self {
            w_delta,
            upsilon,
            a0,
            w_eq_sq,
        }
    }

    pub fn w_eq(&self) -> f64 {
        self.w_eq_sq.sqrt()
    }

    /// `ξ` implied by a jitter standard deviation.
    pub fn xi_for_sigma(&self, sigma_s: f64) -> f64 {
        self.w_eq_sq / (4.0 * sigma_s * sigma_s)
    }

    /// Jitter standard deviation that yields a given `ξ`.
    pub fn sigma_for_xi(&self, xi: f64) -> f64 {
        (self.w_eq_sq / (4.0 * xi)).sqrt()
    }

    pub fn with_sigma_s(&self, sigma_s: f64) -> MisalignmentParams {
        MisalignmentParams {
            w_delta: self.w_delta,
            upsilon: self.upsilon,
            a0: self.a0,
            w_eq_sq: self.w_eq_sq,
            xi: self.xi_for_sigma(sigma_s),
            sigma_s,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MisalignmentParams {
    pub w_delta: f64,
    pub upsilon: f64,
    pub a0: f64,
    pub w_eq_sq: f64,
    pub xi: f64,
    /// Jitter standard deviation the parameters were derived from [m].
    pub sigma_s: f64,
}

impl MisalignmentParams {
    /// Equivalent beam width [m].
    pub fn w_eq(&self) -> f64 {
        self.w_eq_sq.sqrt()
    }

    pub fn footprint(&self) -> BeamFootprint {
        BeamFootprint {
            w_delta: self.w_delta,
            upsilon: self.upsilon,
            a0: self.a0,
            w_eq_sq: self.w_eq_sq,
        }
    }

    pub fn gain_law(&self) -> MisalignmentGainLaw {
        MisalignmentGainLaw {
            a0: self.a0,
            xi: self.xi,
        }
    }

    /// True when `ξ` is far outside the range the model is usually applied to.
    pub fn xi_out_of_range(&self) -> bool {
        self.xi < XI_WARN_LOW || self.xi > XI_WARN_HIGH
    }
}

pub fn derive_misalignment(geom: &LinkGeometry) -> MisalignmentParams {
    geom.footprint().with_sigma_s(geom.sigma_s)
}

/// Deterministic skin path loss `h_l = exp(-α(λ) δ / 2)`.
pub fn path_loss(table: &SkinAttenuationTable, lambda: f64, delta: f64) -> Result<f64> {
    Ok(path_loss_from_alpha(table.alpha_at(lambda)?, delta))
}

pub fn path_loss_from_alpha(alpha: f64, delta: f64) -> f64 {
    (-0.5 * alpha * delta).exp()
}

/// Distribution of `h_p` on `[0, A0]` with density `ξ/A0^ξ · x^{ξ-1}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MisalignmentGainLaw {
    pub a0: f64,
    pub xi: f64,
}

impl MisalignmentGainLaw {
    pub fn new(a0: f64, xi: f64) -> Result<Self> {
        if !(a0 > 0.0 && a0 <= 1.0) {
            return Err(Error::invalid(
                "a0",
                format!("must lie in (0, 1], got {a0}"),
            ));
        }
        positive("xi", xi)?;
        Ok(Self { a0, xi })
    }

    pub fn pdf(&self, x: f64) -> f64 {
        if !(0.0..=self.a0).contains(&x) {
            return 0.0;
        }
        self.xi / self.a0.powf(self.xi) * x.powf(self.xi - 1.0)
    }

    pub fn cdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            0.0
        } else if x >= self.a0 {
            1.0
        } else {
            (x / self.a0).powf(self.xi)
        }
    }

    /// CDF of `h_p²`, supported on `[0, A0²]`.
    pub fn hp2_cdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            0.0
        } else if x >= self.a0 * self.a0 {
            1.0
        } else {
            x.powf(self.xi / 2.0) / self.a0.powf(self.xi)
        }
    }

    pub fn hp2_pdf(&self, x: f64) -> f64 {
        if !(0.0..=self.a0 * self.a0).contains(&x) {
            return 0.0;
        }
        self.xi / (2.0 * self.a0.powf(self.xi)) * x.powf(self.xi / 2.0 - 1.0)
    }

    /// `E[h_p²] = ξ A0² / (ξ + 2)`.
    pub fn second_moment(&self) -> f64 {
        self.xi * self.a0 * self.a0 / (self.xi + 2.0)
    }
}

pub fn hp_pdf(law: &MisalignmentGainLaw, x: f64) -> f64 {
    law.pdf(x)
}

pub fn hp_cdf(law: &MisalignmentGainLaw, x: f64) -> f64 {
    law.cdf(x)
}

pub fn hp2_cdf(law: &MisalignmentGainLaw, x: f64) -> f64 {
    law.hp2_cdf(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::units::{deg, mm, MM2};

    fn baseline_geometry() -> LinkGeometry {
        LinkGeometry::new(mm(4.0), deg(20.0), Aperture::Area(1.0 * MM2), mm(0.5)).unwrap()
    }

    #[test]
    fn baseline_misalignment_values() {
        // Reference values from a 30-digit evaluation of the same formulas.
        let p = derive_misalignment(&baseline_geometry());
        assert!((p.w_delta - 7.05307922833859908e-4).abs() < 1e-15);
        assert!((p.upsilon - 1.00255045816791616).abs() < 1e-13);
        assert!((p.a0 - 0.711925553322854777).abs() < 1e-13);
        assert!((p.w_eq() - 1.00684602899016639e-3).abs() < 1e-15);
        assert!((p.xi - 1.01373892609326702).abs() < 1e-12);
    }

    #[test]
    fn halving_jitter_quadruples_xi() {
        let g = baseline_geometry();
        let p1 = derive_misalignment(&g);
        let p2 = derive_misalignment(&g.with_sigma_s(g.sigma_s / 2.0).unwrap());
        assert!((p2.xi / p1.xi - 4.0).abs() < 1e-12);
    }

    #[test]
    fn equivalent_radius_exceeds_beam_radius() {
        for beta_mm in [0.05, 0.3, 0.564, 1.0, 2.0] {
            let f = BeamFootprint::new(mm(4.0), deg(20.0), mm(beta_mm));
            assert!(f.w_eq_sq >= f.w_delta * f.w_delta);
            assert!(f.a0 > 0.0 && f.a0 < 1.0);
        }
    }

    #[test]
    fn aperture_area_and_radius_agree() {
        let a = Aperture::Area(1.0 * MM2);
        let r = Aperture::Radius(a.radius());
        assert!((r.area() - 1.0 * MM2).abs() < 1e-20);
    }

    #[test]
    fn geometry_validation() {
        assert!(LinkGeometry::new(0.0, 0.3, Aperture::Radius(1e-3), 1e-4).is_err());
        assert!(LinkGeometry::new(1e-3, PI, Aperture::Radius(1e-3), 1e-4).is_err());
        assert!(LinkGeometry::new(1e-3, 0.3, Aperture::Area(-1.0), 1e-4).is_err());
        assert!(LinkGeometry::new(1e-3, 0.3, Aperture::Radius(1e-3), 0.0).is_err());
    }

    #[test]
    fn path_loss_cases() {
        let zero =
            SkinAttenuationTable::parse_csv("wavelength_nm,alpha_per_mm\n400,0\n1500,0\n").unwrap();
        assert_eq!(path_loss(&zero, 1e-6, mm(4.0)).unwrap(), 1.0);

        let delta = mm(4.0);
        let alpha = 2.0 * 2f64.ln() / delta;
        assert!((path_loss_from_alpha(alpha, delta) - 0.5).abs() < 1e-15);
        let h1 = path_loss_from_alpha(137.0, delta);
        let h2 = path_loss_from_alpha(137.0, 2.0 * delta);
        assert!((h2 - h1 * h1).abs() < 1e-15);

        let t = SkinAttenuationTable::bundled();
        assert!(path_loss(&t, 2000e-9, delta).is_err());
    }

    #[test]
    fn cdf_support_points() {
        let law = MisalignmentGainLaw::new(0.7, 1.0).unwrap();
        assert_eq!(law.cdf(law.a0), 1.0);
        assert_eq!(law.cdf(2.0), 1.0);
        assert_eq!(law.cdf(-1.0), 0.0);
        assert_eq!(law.pdf(0.71), 0.0);
        let x = law.a0 * law.a0 / 4.0;
        assert!((law.hp2_cdf(x) - 0.5).abs() < 1e-15);
        assert_eq!(law.hp2_cdf(law.a0 * law.a0 * 1.01), 1.0);
    }

    #[test]
    fn law_validation() {
        assert!(MisalignmentGainLaw::new(1.01, 1.0).is_err());
        assert!(MisalignmentGainLaw::new(0.5, 0.0).is_err());
    }

    #[test]
    fn xi_warning_flag() {
        let f = BeamFootprint::new(mm(4.0), deg(20.0), mm(0.564));
        assert!(!f.with_sigma_s(mm(0.5)).xi_out_of_range());
        assert!(f.with_sigma_s(mm(10.0)).xi_out_of_range());
        assert!(f.with_sigma_s(mm(0.001)).xi_out_of_range());
    }
}
