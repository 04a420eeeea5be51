//! Special functions needed by the closed-form link metrics.
//!
//! Only the real, order-one Lerch transcendent with a non-positive first
//! argument is supported; that is the only regime the ergodic spectral
//! efficiency needs, and the first argument can be as large as `-1e12` there.

pub mod quad;

use crate::error::{Error, Result};
use quad::QuadOptions;

/// Default relative tolerance for [`lerch_phi`].
pub const DEFAULT_REL_TOL: f64 = 1e-10;

/// `|a|` at or below which the defining series is used.
pub const SERIES_CROSSOVER: f64 = 0.5;

const MAX_SERIES_TERMS: usize = 400;

/// Error function.
pub fn erf(z: f64) -> f64 {
    libm::erf(z)
}

/// Complementary error function.
pub fn erfc(z: f64) -> f64 {
    libm::erfc(z)
}

/// Arguments of `Φ(a, b, x) = Σ_{n≥0} aⁿ / (n + x)^b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LerchArgs {
    pub a: f64,
    pub b: f64,
    pub x: f64,
}

impl LerchArgs {
    pub fn new(a: f64, b: f64, x: f64) -> Result<Self> {
        let args = Self { a, b, x };
        args.validate()?;
        Ok(args)
    }

    /// `Φ(a, 1, x)`.
    pub fn order_one(a: f64, x: f64) -> Result<Self> {
        Self::new(a, 1.0, x)
    }

    pub fn validate(&self) -> Result<()> {
        if self.b != 1.0 {
            return Err(Error::invalid(
                "b",
                format!("only b = 1 is supported, got {}", self.b),
            ));
        }
        if !(self.x > 0.0) || !self.x.is_finite() {
            return Err(Error::invalid(
                "x",
                format!("must be finite and > 0, got {}", self.x),
            ));
        }
        if !(self.a <= 0.0) || !self.a.is_finite() {
            return Err(Error::invalid(
                "a",
                format!("must be finite and <= 0, got {}", self.a),
            ));
        }
        Ok(())
    }
}

fn check_tol(rel_tol: f64) -> Result<()> {
    if rel_tol > 0.0 && rel_tol <= 1e-3 {
        Ok(())
    } else {
        Err(Error::invalid(
            "rel_tol",
            format!("must lie in (0, 1e-3], got {rel_tol}"),
        ))
    }
}

/// Lerch transcendent `Φ(a, 1, x)` to relative accuracy `rel_tol`.
///
/// Uses the defining series for `|a| <= 0.5` and adaptive quadrature of
/// `∫₀^∞ e^{-xy} / (1 - a e^{-y}) dy` otherwise.
pub fn lerch_phi(args: LerchArgs, rel_tol: f64) -> Result<f64> {
    args.validate()?;
    check_tol(rel_tol)?;
    if args.a.abs() <= SERIES_CROSSOVER {
        Ok(series(args.a, args.x, rel_tol))
    } else {
        integral(args.a, args.x, rel_tol)
    }
}

/// Series route, valid for `|a| < 1`. Exposed for cross-checking the two routes.
pub fn lerch_phi_series(args: LerchArgs, rel_tol: f64) -> Result<f64> {
    args.validate()?;
    check_tol(rel_tol)?;
    if args.a.abs() >= 1.0 {
        return Err(Error::invalid("a", "series route requires |a| < 1"));
    }
    Ok(series(args.a, args.x, rel_tol))
}

/// Integral route, valid for every `a <= 0`. Exposed for cross-checking the two routes.
pub fn lerch_phi_integral(args: LerchArgs, rel_tol: f64) -> Result<f64> {
    args.validate()?;
    check_tol(rel_tol)?;
    integral(args.a, args.x, rel_tol)
}

fn series(a: f64, x: f64, rel_tol: f64) -> f64 {
    // Terms alternate and shrink in magnitude for a in [-1, 0), so the first
    // omitted term bounds the truncation error.
    let mut sum = 1.0 / x;
    let mut comp = 0.0;
    let mut power = 1.0;
    for n in 1..MAX_SERIES_TERMS {
        power *= a;
        let term = power / (n as f64 + x);
        let t = sum + term;
        comp += if sum.abs() >= term.abs() {
            (sum - t) + term
        } else {
            (term - t) + sum
        };
        sum = t;
        if term.abs() <= 0.01 * rel_tol * (sum + comp).abs() {
            break;
        }
    }
    sum + comp
}

fn integral(a: f64, x: f64, rel_tol: f64) -> Result<f64> {
    let neg_a = -a;
    let knee = if neg_a > 1.0 { neg_a.ln() } else { 0.0 };
    // Past `upper`, |a| e^{-y} <= e^{-40}, so the remainder is e^{-x T}/x to
    // within a relative e^{-40}.
    let upper = 40f64.max(40.0 / x) + knee;
    let tail = (-x * upper).exp() / x;

    let integrand = |y: f64| {
        let decay = (-y).exp();
        (-x * y).exp() / (1.0 + neg_a * decay)
    };
    let mut breaks = vec![0.0];
    if knee > 0.0 {
        breaks.push(knee);
    }
    breaks.push(upper);
    let opts = QuadOptions {
        rel_tol: 0.1 * rel_tol,
        abs_tol: 0.0,
        max_intervals: 4000,
    };
    let r = quad::integrate(integrand, &breaks, opts)?;
    Ok(r.value + tail)
}
