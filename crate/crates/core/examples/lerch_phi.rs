// Evaluating the Lerch transcendent `Φ(a, 1, x)` for the non-positive `a`
// that show up in the spectral-efficiency formula.

use tolink::specfun::{
    lerch_phi, lerch_phi_integral, lerch_phi_series, LerchArgs, DEFAULT_REL_TOL,
};

pub fn run_example() -> tolink::Result<()> {
    println!("{:>10} {:>8} {:>24}", "a", "x", "Phi(a, 1, x)");
    for a in [0.0, -0.5, -1.0, -1e3, -1e8] {
        for x in [0.55, 1.5, 6.0] {
            let v = lerch_phi(LerchArgs::order_one(a, x)?, DEFAULT_REL_TOL)?;
            println!("{a:>10.1e} {x:>8} {v:>24.16e}");
        }
    }

    // Φ(-1, 1, 1) is ln 2.
    let ln2 = lerch_phi(LerchArgs::order_one(-1.0, 1.0)?, DEFAULT_REL_TOL)?;
    println!(
        "\nPhi(-1, 1, 1) - ln 2 = {:e}",
        ln2 - std::f64::consts::LN_2
    );

    let args = LerchArgs::order_one(-0.4, 2.0)?;
    let s = lerch_phi_series(args, 1e-13)?;
    let i = lerch_phi_integral(args, 1e-13)?;
    println!("series {s:.16} vs integral {i:.16}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> tolink::Result<()> {
    run_example()
}
