// Outage probability against the normalized SNR `γ̄ / γ_th` for several
// jitter levels. Stronger jitter (smaller ξ) flattens the curve.

use tolink::link_metrics::outage_from_average_snr;
use tolink::units::from_db;

pub fn run_example() -> tolink::Result<()> {
    let xis = [0.1, 0.5, 1.0, 3.0, 10.0];
    print!("{:>8}", "dB");
    for xi in xis {
        print!("{:>14}", format!("xi={xi}"));
    }
    println!();
    for db in (0..=50).step_by(10) {
        print!("{db:>8}");
        for xi in xis {
            let p = outage_from_average_snr(xi, 1.0, from_db(db as f64));
            print!("{p:>14.4e}");
        }
        println!();
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> tolink::Result<()> {
    run_example()
}
