// Spectral efficiency, its closed-form lower bound, and capacity, both
// narrow-band and split over wavelength sub-bands.

use std::sync::Arc;

use tolink::link_metrics::{
    capacity, capacity_narrowband, ergodic_se_lower_bound, ergodic_spectral_efficiency,
};
use tolink::noise_snr::{RxConfig, ThermalNoise, TxConfig};
use tolink::skin_attenuation::SkinAttenuationTable;
use tolink::units::{deg, mm, nm, MHZ, MM2, NA, PA, UW};
use tolink::{Aperture, DetectionScheme, Link, LinkGeometry, SubBand, SubBandSpec};

pub fn run_example() -> tolink::Result<()> {
    for scheme in [DetectionScheme::Heterodyne, DetectionScheme::ImDd] {
        let link = Link::new(
            Arc::new(SkinAttenuationTable::bundled()),
            LinkGeometry::new(mm(4.0), deg(20.0), Aperture::Area(MM2), mm(0.5))?,
            TxConfig::new(nm(1100.0), 0.01 * UW / MHZ, 10.0 * MHZ)?,
            RxConfig::new(
                0.8,
                0.05 * NA,
                0.0,
                ThermalNoise::Psd(1.69 * PA * PA),
                scheme,
            )?,
        );
        let op = link.operating_point()?;
        let law = op.gain_law();
        let se = ergodic_spectral_efficiency(&law, op.big_b())?;
        let lb = ergodic_se_lower_bound(&law, op.big_b());
        let narrow = capacity_narrowband(op.bandwidth, &law, op.big_b())?;
        let note = if scheme.se_is_exact() {
            ""
        } else {
            " (a lower bound on capacity for IM/DD)"
        };
        println!(
            "{scheme}: C = {se:.4} bit/s/Hz, bound {:.4}{note}",
            lb.value
        );
        println!("  narrow-band capacity {:.3} Mbit/s", narrow.exact / 1e6);

        // Four 2.5 MHz sub-bands, each assigned its own wavelength.
        let bands = [1000.0, 1100.0, 1250.0, 1350.0]
            .map(|w| SubBand {
                wavelength: nm(w),
                width: 2.5 * MHZ,
            })
            .to_vec();
        let c = capacity(&link, &SubBandSpec::new(bands)?)?;
        println!(
            "  sub-band capacity {:.3} Mbit/s (bound {:.3})",
            c.exact / 1e6,
            c.lower_bound.value / 1e6
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> tolink::Result<()> {
    run_example()
}
