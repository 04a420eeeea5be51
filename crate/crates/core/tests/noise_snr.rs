#![allow(clippy::excessive_precision)]

mod common;

use common::{baseline as base, rel_err};
use proptest::prelude::*;
use tolink::noise_snr::{
    instantaneous_snr, instantaneous_snr_power_form, noise_denominator_psd, responsivity, RxConfig,
    SnrScale, ThermalNoise, TxConfig, ELECTRON_CHARGE, PLANCK, SPEED_OF_LIGHT,
};
use tolink::DetectionScheme;

fn rx(thermal: ThermalNoise) -> RxConfig {
    RxConfig::new(
        base::ETA,
        base::DARK_CURRENT,
        0.0,
        thermal,
        DetectionScheme::Heterodyne,
    )
    .unwrap()
}

#[test]
fn responsivity_reference() {
    assert!(rel_err(responsivity(0.8, 1100e-9), 0.709767866486730700) < 1e-14);
    // One ampere per watt at the photon energy of one electron-volt.
    let lambda = PLANCK * SPEED_OF_LIGHT / ELECTRON_CHARGE;
    assert!(rel_err(responsivity(1.0, lambda), 1.0) < 1e-15);
}

#[test]
fn baseline_noise_denominator() {
    let r = responsivity(base::ETA, base::LAMBDA);
    let d = noise_denominator_psd(&rx(ThermalNoise::Psd(base::N0)), r, base::BANDWIDTH);
    assert!(rel_err(d, 1.69001602176633962e-24) < 1e-14);
}

#[test]
fn receiver_validation() {
    let t = ThermalNoise::Psd(base::N0);
    let h = DetectionScheme::Heterodyne;
    assert!(RxConfig::new(0.0, 0.0, 0.0, t, h).is_err());
    assert!(RxConfig::new(1.2, 0.0, 0.0, t, h).is_err());
    assert!(RxConfig::new(0.5, -1e-9, 0.0, t, h).is_err());
    assert!(RxConfig::new(0.5, 0.0, 0.0, ThermalNoise::Psd(0.0), h).is_ok());
    assert!(TxConfig::new(base::LAMBDA, -1.0, base::BANDWIDTH).is_err());
    assert!(TxConfig::with_power_and_psd(base::LAMBDA, 1e-7, 2e-14, base::BANDWIDTH).is_err());
}

#[test]
fn scale_reproduces_instantaneous_snr() {
    let r = responsivity(base::ETA, base::LAMBDA);
    let tx = TxConfig::new(base::LAMBDA, base::PSD, base::BANDWIDTH).unwrap();
    let rx = rx(ThermalNoise::Psd(base::N0));
    let s = SnrScale::new(r, 0.55, &tx, &rx);
    for hp in [0.0, 0.1, 0.5, 0.7] {
        assert!(rel_err(s.snr(hp), instantaneous_snr(hp, r, 0.55, &tx, &rx)) < 1e-14);
    }
}

proptest! {
    #[test]
    fn psd_and_power_forms_agree(
        n0 in 1e-26f64..1e-22,
        psd in 1e-16f64..1e-11,
        bw in 1e3f64..1e9,
        dark in 0.0f64..1e-7,
        background in 0.0f64..1e-6,
        hp in 0.01f64..0.99,
        h_l_sq in 1e-6f64..1.0,
    ) {
        let r = responsivity(0.7, 1000e-9);
        let h = DetectionScheme::Heterodyne;
        let tx = TxConfig::new(1000e-9, psd, bw).unwrap();
        let rx_psd = RxConfig::new(0.7, dark, background, ThermalNoise::Psd(n0), h).unwrap();
        let rx_var = RxConfig::new(0.7, dark, background, ThermalNoise::Variance(n0 * bw), h).unwrap();
        let a = instantaneous_snr(hp, r, h_l_sq, &tx, &rx_psd);
        let b = instantaneous_snr_power_form(hp, r, h_l_sq, &tx, &rx_var);
        prop_assert!(rel_err(a, b) < 1e-12);
    }

    #[test]
    fn snr_increases_with_signal_and_decreases_with_noise(psd in 1e-16f64..1e-11, k in 1.01f64..10.0) {
        let r = responsivity(0.8, 1100e-9);
        let tx = TxConfig::new(1100e-9, psd, 1e7).unwrap();
        let tx_hi = TxConfig::new(1100e-9, psd * k, 1e7).unwrap();
        let rx_lo = rx(ThermalNoise::Psd(base::N0));
        let rx_hi = rx(ThermalNoise::Psd(base::N0 * k));
        let g = SnrScale::new(r, 0.5, &tx, &rx_lo).gain;
        prop_assert!(SnrScale::new(r, 0.5, &tx_hi, &rx_lo).gain > g);
        prop_assert!(SnrScale::new(r, 0.5, &tx, &rx_hi).gain < g);
    }
}
