// How much pointing jitter a link can take for a given outage target.

use std::sync::Arc;

use tolink::link_metrics::{capacity_at_target_outage, gamma_threshold, jitter_tolerance};
use tolink::noise_snr::{RxConfig, ThermalNoise, TxConfig};
use tolink::skin_attenuation::SkinAttenuationTable;
use tolink::units::{deg, mm, nm, MHZ, MM2, NA, PA, UW};
use tolink::{Aperture, DetectionScheme, Error, Link, LinkGeometry};

pub fn run_example() -> tolink::Result<()> {
    let link = Link::new(
        Arc::new(SkinAttenuationTable::bundled()),
        LinkGeometry::new(mm(4.0), deg(20.0), Aperture::Area(MM2), mm(0.5))?,
        TxConfig::new(nm(1100.0), 0.01 * UW / MHZ, 10.0 * MHZ)?,
        RxConfig::new(
            0.8,
            0.05 * NA,
            0.0,
            ThermalNoise::Psd(1.69 * PA * PA),
            DetectionScheme::Heterodyne,
        )?,
    );
    let op = link.operating_point()?;
    let fp = op.params.footprint();

    println!("r_th [bit/s/Hz]  target P_o   sigma_s [mm]      xi   capacity [Mbit/s]");
    for r_th in [1.0, 4.0, 8.0] {
        let g_th = gamma_threshold(r_th, op.scheme);
        for po in [1e-2, 1e-4, 1e-6] {
            let t = capacity_at_target_outage(po, g_th, &fp, &op.scale, op.scheme, op.bandwidth)?;
            println!(
                "{r_th:>15} {po:>11.0e} {:>14.4} {:>7.3} {:>19.3}",
                t.jitter.sigma_s * 1e3,
                t.jitter.xi,
                t.exact / 1e6
            );
        }
    }

    // A threshold above the zero-jitter peak SNR cannot be met at any jitter.
    match jitter_tolerance(1e-3, 2.0 * op.peak_snr(), &fp, &op.scale) {
        Err(Error::Infeasible {
            best_case_outage, ..
        }) => {
            println!("\nthreshold above peak SNR: best-case outage {best_case_outage}")
        }
        other => println!("\nunexpected: {other:?}"),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> tolink::Result<()> {
    run_example()
}
