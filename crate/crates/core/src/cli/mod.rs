//! Command-line front end.
//!
//! Parameter precedence is flags, then `--config` file, then the baked-in
//! baseline. Quantities accept unit suffixes (`4mm`, `1100nm`, `20deg`).

pub mod commands;
pub mod config;
pub mod units;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::error::{Error, Result};
pub use commands::{compare, ClosedForm, SweepAxis, ValidationRow, CSV_COLUMNS};
pub use config::{Param, RunConfig, Threshold};

/// Exit status for success.
pub const EXIT_OK: i32 = 0;
/// A validation or feasibility check failed.
pub const EXIT_CHECK_FAILED: i32 = 1;
/// Bad usage, configuration or input files.
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "tolink",
    version,
    about = "Transdermal optical link budget calculator"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub params: ParamArgs,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form metrics at one operating point.
    Eval {
        /// Also write the metrics as a one-row CSV.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate over a one- or two-dimensional grid.
    Sweep {
        /// `name:start:stop:count[:lin|log]`, e.g. `lambda:900nm:1300nm:41`.
        #[arg(long)]
        axis: String,
        /// Optional second axis, varying fastest.
        #[arg(long)]
        axis2: Option<String>,
        /// CSV destination (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Monte Carlo cross-check of the closed forms.
    Validate {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Largest pointing jitter meeting an outage target.
    Jitter {
        /// Target outage probability in (0, 1).
        #[arg(long)]
        target_po: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Default, Args)]
pub struct ParamArgs {
    /// `key=value` file; `#` starts a comment.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// CSV with header `wavelength_nm,alpha_per_mm` (bundled table by default).
    #[arg(long, global = true)]
    pub attenuation_file: Option<PathBuf>,
    /// `heterodyne` or `im_dd`.
    #[arg(long, global = true)]
    pub scheme: Option<String>,
    #[arg(long, global = true)]
    pub seed: Option<String>,
    /// Monte Carlo sample count [default: 1000000].
    #[arg(long, global = true)]
    pub samples: Option<String>,
    /// Worker threads for Monte Carlo and sweeps; results do not depend on it.
    #[arg(long, global = true)]
    pub streams: Option<String>,

    /// Skin thickness [mm].
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub delta: Option<String>,
    /// Wavelength [nm].
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    /// Full divergence angle [deg].
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub theta: Option<String>,
    /// Receiver aperture area [mm²].
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub area: Option<String>,
    /// Receiver aperture radius [mm]; alternative to `--area`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub aperture_radius: Option<String>,
    /// Pointing jitter standard deviation [mm].
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub sigma_s: Option<String>,
    /// Set the jitter through the ratio ξ instead of `--sigma-s`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub xi: Option<String>,
    /// Photodetector quantum efficiency.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub eta: Option<String>,
    /// Dark current [nA].
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub dark_current: Option<String>,
    /// Background optical power [nW].
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub background_power: Option<String>,
    /// Thermal noise amplitude density [pA/√Hz].
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub n0: Option<String>,
    /// Thermal noise variance [A²]; alternative to `--n0`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub sigma_th_sq: Option<String>,
    /// Transmit power spectral density [µW/MHz].
    #[arg(long, global = true, allow_hyphen_values = true, alias = "ptilde-s")]
    pub psd: Option<String>,
    /// Average transmit power [µW].
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub power: Option<String>,
    /// Bandwidth [MHz].
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub bandwidth: Option<String>,
    /// Target rate defining the SNR threshold [bit/s/Hz].
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub r_th: Option<String>,
    /// Linear SNR threshold.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub gamma_th: Option<String>,
    /// Threshold as normalized SNR γ̄/γ_th [dB].
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub gamma_th_norm: Option<String>,
}

impl ParamArgs {
    fn pairs(&self) -> Vec<(&'static str, &str)> {
        let attenuation = self.attenuation_file.as_ref().and_then(|p| p.to_str());
        [
            ("attenuation_file", attenuation),
            ("scheme", self.scheme.as_deref()),
            ("seed", self.seed.as_deref()),
            ("samples", self.samples.as_deref()),
            ("streams", self.streams.as_deref()),
            ("delta", self.delta.as_deref()),
            ("lambda", self.lambda.as_deref()),
            ("theta", self.theta.as_deref()),
            ("area", self.area.as_deref()),
            ("aperture_radius", self.aperture_radius.as_deref()),
            ("sigma_s", self.sigma_s.as_deref()),
            ("xi", self.xi.as_deref()),
            ("eta", self.eta.as_deref()),
            ("dark_current", self.dark_current.as_deref()),
            ("background_power", self.background_power.as_deref()),
            ("n0", self.n0.as_deref()),
            ("sigma_th_sq", self.sigma_th_sq.as_deref()),
            ("psd", self.psd.as_deref()),
            ("power", self.power.as_deref()),
            ("bandwidth", self.bandwidth.as_deref()),
            ("r_th", self.r_th.as_deref()),
            ("gamma_th", self.gamma_th.as_deref()),
            ("gamma_th_norm", self.gamma_th_norm.as_deref()),
        ]
        .into_iter()
        .filter_map(|(k, v)| v.map(|v| (k, v)))
        .collect()
    }

    /// Baseline, then the config file, then flags.
    pub fn resolve(&self) -> Result<RunConfig> {
        let mut cfg = RunConfig::default();
        if let Some(path) = &self.config {
            cfg.apply_file(path)?;
        }
        cfg.apply_layer(self.pairs().into_iter().map(|(k, v)| (0, k, v)))?;
        Ok(cfg)
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|source| Error::Io {
            path: path.clone(),
            source,
        }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|source| Error::Io {
                    path: PathBuf::from("<stdout>"),
                    source,
                })
        }
    }
}

/// Executes a parsed command line and returns the process exit status.
pub fn execute(cli: &Cli) -> i32 {
    match execute_inner(cli) {
        Ok(code) => code,
        Err(Error::Infeasible {
            h,
            best_case_outage,
        }) => {
            eprintln!(
                "infeasible: the SNR threshold is {h:.6e} times the zero-jitter peak SNR; \
                 best achievable outage is {best_case_outage}"
            );
            EXIT_CHECK_FAILED
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

fn execute_inner(cli: &Cli) -> Result<i32> {
    let cfg = cli.params.resolve()?;
    match &cli.command {
        Command::Eval { out } => {
            let (text, csv) = commands::eval(&cfg)?;
            emit(&None, &text)?;
            if out.is_some() {
                emit(out, &csv)?;
            }
            Ok(EXIT_OK)
        }
        Command::Sweep { axis, axis2, out } => {
            let first = SweepAxis::parse(axis)?;
            let second = axis2.as_deref().map(SweepAxis::parse).transpose()?;
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(cfg.streams)
                .build()
                .map_err(|e| Error::Config(format!("cannot start worker pool: {e}")))?;
            let csv = pool.install(|| commands::sweep(&cfg, &first, second.as_ref()))?;
            emit(out, &csv)?;
            Ok(EXIT_OK)
        }
        Command::Validate { out } => {
            let outcome = commands::validate(&cfg)?;
            emit(out, &outcome.text)?;
            Ok(if outcome.passed() {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            })
        }
        Command::Jitter { target_po, out } => {
            let (_, text) = commands::jitter(&cfg, *target_po)?;
            emit(out, &text)?;
            Ok(EXIT_OK)
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            code
        }
    }
}
