// Cross-checking the closed forms against a direct simulation of the
// physical displacement model.

use tolink::cli::commands::{compare, evaluate, ClosedForm};
use tolink::cli::config::RunConfig;
use tolink::monte_carlo::{estimate_metrics, McConfig};

pub fn run_example() -> tolink::Result<()> {
    let cfg = RunConfig::default();
    let e = evaluate(&cfg, std::sync::Arc::new(cfg.load_table()?))?;
    let mc_cfg = McConfig::new(200_000, 42, 4)?;
    let mc = estimate_metrics(
        &mc_cfg,
        &e.op.params,
        &e.op.scale,
        e.op.scheme,
        e.report.gamma_th,
    )?;
    for row in compare(&ClosedForm::from(&e.report), &mc) {
        println!(
            "{:<20} closed {:>14.6e}  mc {:>14.6e} ± {:.2e}  z {:.2}",
            row.metric, row.closed_form, row.mc_mean, row.mc_std_error, row.z
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> tolink::Result<()> {
    run_example()
}
