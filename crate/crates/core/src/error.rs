use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("attenuation table line {line}: {reason}")]
    TableParse { line: usize, reason: String },

    #[error("attenuation table rejected: {0}")]
    TableValidation(String),

    #[error(
        "wavelength {lambda_nm:.3} nm is outside the attenuation table range \
         [{min_nm:.3}, {max_nm:.3}] nm"
    )]
    WavelengthOutOfRange {
        lambda_nm: f64,
        min_nm: f64,
        max_nm: f64,
    },

    #[error(
        "quadrature did not converge: estimate {estimate:e}, error estimate {error_estimate:e} \
         after {intervals} subintervals"
    )]
    Quadrature {
        estimate: f64,
        error_estimate: f64,
        intervals: usize,
    },

    #[error(
        "outage target unreachable: threshold exceeds the zero-jitter peak SNR \
         (H = {h:.6e}); best-case outage with zero jitter is {best_case_outage}"
    )]
    Infeasible { h: f64, best_case_outage: f64 },

    #[error("cannot read {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("configuration error: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
