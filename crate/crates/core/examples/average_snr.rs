// Average SNR of the default link and how it responds to skin thickness
// and pointing jitter.

use std::sync::Arc;

use tolink::noise_snr::{RxConfig, ThermalNoise, TxConfig};
use tolink::skin_attenuation::SkinAttenuationTable;
use tolink::units::{deg, mm, nm, to_db, MHZ, MM2, NA, PA, UW};
use tolink::{Aperture, DetectionScheme, Link, LinkGeometry};

fn link(delta: f64, sigma_s: f64) -> tolink::Result<Link> {
    let geometry = LinkGeometry::new(delta, deg(20.0), Aperture::Area(1.0 * MM2), sigma_s)?;
    let tx = TxConfig::new(nm(1100.0), 0.01 * UW / MHZ, 10.0 * MHZ)?;
    let rx = RxConfig::new(
        0.8,
        0.05 * NA,
        0.0,
        ThermalNoise::Psd((1.3 * PA) * (1.3 * PA)),
        DetectionScheme::Heterodyne,
    )?;
    Ok(Link::new(
        Arc::new(SkinAttenuationTable::bundled()),
        geometry,
        tx,
        rx,
    ))
}

pub fn run_example() -> tolink::Result<()> {
    let op = link(mm(4.0), mm(0.5))?.operating_point()?;
    println!(
        "A0 = {:.4}, w_eq = {:.4} mm, xi = {:.4}",
        op.params.a0,
        op.params.w_eq() * 1e3,
        op.params.xi
    );
    println!(
        "average SNR {:.2} dB, peak SNR {:.2} dB",
        to_db(op.average_snr()),
        to_db(op.peak_snr())
    );

    println!("\n delta [mm]  sigma_s [mm]   avg SNR [dB]");
    for delta in [2.0, 4.0, 6.0] {
        for sigma in [0.25, 0.5, 1.0] {
            let op = link(mm(delta), mm(sigma))?.operating_point()?;
            println!("{delta:>11} {sigma:>13} {:>14.2}", to_db(op.average_snr()));
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> tolink::Result<()> {
    run_example()
}
