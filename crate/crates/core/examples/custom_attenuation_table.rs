// Supplying a measured attenuation curve instead of the bundled one.

use std::sync::Arc;

use tolink::cli::commands::evaluate;
use tolink::cli::config::RunConfig;
use tolink::skin_attenuation::SkinAttenuationTable;

const MEASURED: &str = "\
# forearm, in vivo
wavelength_nm,alpha_per_mm
1000,0.30
1100,0.21
1200,0.35
";

pub fn run_example() -> tolink::Result<()> {
    let table = SkinAttenuationTable::parse_csv(MEASURED)?;
    println!(
        "table `{}`: {} samples",
        table.source(),
        table.samples().len()
    );

    let mut cfg = RunConfig::default();
    for lambda in [1000e-9, 1050e-9, 1100e-9, 1200e-9] {
        cfg.lambda = lambda;
        let e = evaluate(&cfg, Arc::new(table.clone()))?;
        println!(
            "{:.0} nm: alpha {:.3} 1/mm, avg SNR {:.2} dB",
            lambda * 1e9,
            e.op.alpha * 1e-3,
            e.report.gamma_bar_db
        );
    }

    cfg.lambda = 1300e-9;
    if let Err(err) = evaluate(&cfg, Arc::new(table)) {
        println!("{err}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> tolink::Result<()> {
    run_example()
}
