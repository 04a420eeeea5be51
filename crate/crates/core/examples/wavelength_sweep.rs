// A wavelength sweep written as CSV, the same output `tolink sweep` gives.

use tolink::cli::commands::{sweep, SweepAxis};
use tolink::cli::config::RunConfig;

pub fn run_example() -> tolink::Result<()> {
    let cfg = RunConfig::default();
    let axis = SweepAxis::parse("lambda:700nm:1500nm:9")?;
    let csv = sweep(&cfg, &axis, None)?;
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap_or_default().split(',').collect();
    let col = |name: &str| header.iter().position(|h| *h == name).unwrap_or(0);
    let (l, s, c) = (col("lambda_nm"), col("avg_snr_db"), col("capacity_bps"));
    println!("lambda [nm]  avg SNR [dB]  capacity [Mbit/s]");
    for row in lines {
        let f: Vec<&str> = row.split(',').collect();
        let num = |i: usize| f[i].parse::<f64>().unwrap_or(f64::NAN);
        println!("{:>11.0} {:>13.2} {:>18.3}", num(l), num(s), num(c) / 1e6);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> tolink::Result<()> {
    run_example()
}
