//! A complete link description and its evaluation at a wavelength.

use std::sync::Arc;

use crate::channel::{path_loss_from_alpha, LinkGeometry, MisalignmentGainLaw, MisalignmentParams};
use crate::error::Result;
use crate::link_metrics::{self, DetectionScheme, MetricsReport};
use crate::noise_snr::{responsivity, RxConfig, SnrScale, TxConfig};
use crate::skin_attenuation::SkinAttenuationTable;

#[derive(Debug, Clone)]
pub struct Link {
    pub table: Arc<SkinAttenuationTable>,
    pub geometry: LinkGeometry,
    pub tx: TxConfig,
    pub rx: RxConfig,
}

/// Every deterministic quantity of a link at one wavelength.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatingPoint {
    pub wavelength: f64,
    /// Skin attenuation [1/m].
    pub alpha: f64,
    /// Path loss `h_l`.
    pub h_l: f64,
    pub h_l_sq: f64,
    pub responsivity: f64,
    pub params: MisalignmentParams,
    pub scale: SnrScale,
    pub scheme: DetectionScheme,
    pub bandwidth: f64,
}

impl OperatingPoint {
    pub fn gain_law(&self) -> MisalignmentGainLaw {
        self.params.gain_law()
    }

    /// `𝓑(λ)`.
    pub fn big_b(&self) -> f64 {
        link_metrics::big_b(&self.scale, self.scheme)
    }

    pub fn average_snr(&self) -> f64 {
        self.scale.average_snr(&self.gain_law())
    }

    pub fn peak_snr(&self) -> f64 {
        self.scale.peak_snr(self.params.a0)
    }
}

impl Link {
    pub fn new(
        table: Arc<SkinAttenuationTable>,
        geometry: LinkGeometry,
        tx: TxConfig,
        rx: RxConfig,
    ) -> Self {
        Self {
            table,
            geometry,
            tx,
            rx,
        }
    }

    /// Operating point at the transmitter wavelength.
    pub fn operating_point(&self) -> Result<OperatingPoint> {
        self.operating_point_at(self.tx.wavelength)
    }

    pub fn operating_point_at(&self, wavelength: f64) -> Result<OperatingPoint> {
        let alpha = self.table.alpha_at(wavelength)?;
        let h_l = path_loss_from_alpha(alpha, self.geometry.delta);
        let h_l_sq = (-alpha * self.geometry.delta).exp();
        let r = responsivity(self.rx.eta, wavelength);
        let tx = TxConfig {
            wavelength,
            ..self.tx
        };
        Ok(OperatingPoint {
            wavelength,
            alpha,
            h_l,
            h_l_sq,
            responsivity: r,
            params: crate::channel::derive_misalignment(&self.geometry),
            scale: SnrScale::new(r, h_l_sq, &tx, &self.rx),
            scheme: self.rx.scheme,
            bandwidth: self.tx.bandwidth,
        })
    }

    pub fn metrics(&self, gamma_th: f64) -> Result<MetricsReport> {
        MetricsReport::evaluate(&self.operating_point()?, gamma_th)
    }
}
