//! The four run modes: `eval`, `sweep`, `validate` and `jitter`.
//!
//! Each returns its output as a string so the binary, the examples and the
//! tests all see exactly the same bytes.

use std::fmt::Write as _;
use std::sync::Arc;

use rayon::prelude::*;

use super::config::{Param, RunConfig};
use super::units::{parse_quantity, Quantity};
use crate::error::{Error, Result};
use crate::link::{Link, OperatingPoint};
use crate::link_metrics::{capacity_at_target_outage, MetricsReport, TargetOutageCapacity};
use crate::monte_carlo::{estimate_metrics, McMetrics, RNG_DESCRIPTION};
use crate::units::to_db;

/// z-score above which a Monte Carlo cross-check fails.
pub const Z_THRESHOLD: f64 = 3.0;

/// Column order of every CSV written by `eval` and `sweep`.
pub const CSV_COLUMNS: [&str; 23] = [
    "lambda_nm",
    "delta_mm",
    "theta_deg",
    "area_mm2",
    "sigma_s_mm",
    "eta",
    "psd_uw_per_mhz",
    "bandwidth_mhz",
    "scheme",
    "xi",
    "a0",
    "w_eq_mm",
    "gamma_max",
    "gamma_th",
    "normalized_snr_db",
    "avg_snr",
    "avg_snr_db",
    "outage",
    "se",
    "se_lower_bound",
    "capacity_bps",
    "capacity_lower_bound_bps",
    "flags",
];

pub fn csv_header() -> String {
    CSV_COLUMNS.join(",")
}

fn num(v: f64) -> String {
    format!("{v:.11e}")
}

/// One evaluated configuration.
#[derive(Debug, Clone)]
pub struct Evaluation {
    pub link: Link,
    pub op: OperatingPoint,
    pub report: MetricsReport,
}

pub fn evaluate(cfg: &RunConfig, table: Arc<crate::SkinAttenuationTable>) -> Result<Evaluation> {
    let link = cfg.link(table)?;
    let op = link.operating_point()?;
    let report = MetricsReport::evaluate(&op, cfg.gamma_th(&op))?;
    Ok(Evaluation { link, op, report })
}

impl Evaluation {
    pub fn csv_row(&self) -> String {
        let op = &self.op;
        let r = &self.report;
        let p = &op.params;
        let g = &self.link.geometry;
        let fields = [
            num(op.wavelength / 1e-9),
            num(Quantity::Length.to_human(g.delta)),
            num(g.theta.to_degrees()),
            num(Quantity::Area.to_human(g.aperture_area())),
            num(Quantity::Length.to_human(p.sigma_s)),
            num(self.link.rx.eta),
            num(Quantity::Psd.to_human(self.link.tx.signal_psd)),
            num(Quantity::Frequency.to_human(op.bandwidth)),
            r.scheme.as_str().to_string(),
            num(r.xi),
            num(r.a0),
            num(Quantity::Length.to_human(p.w_eq_sq.sqrt())),
            num(r.gamma_max),
            num(r.gamma_th),
            num(to_db(r.gamma_bar / r.gamma_th)),
            num(r.gamma_bar),
            num(r.gamma_bar_db),
            num(r.outage),
            num(r.spectral_efficiency),
            num(r.spectral_efficiency_lower_bound.value),
            num(r.capacity),
            num(r.capacity_lower_bound.value),
            r.flags(),
        ];
        fields.join(",")
    }

    pub fn text_report(&self) -> String {
        let op = &self.op;
        let r = &self.report;
        let p = &op.params;
        let se_tag = if r.spectral_efficiency_exact {
            "exact"
        } else {
            "lower bound on capacity"
        };
        let vac = |v: bool| if v { " (vacuous)" } else { "" };
        let mut s = String::new();
        let _ = writeln!(s, "scheme               {}", r.scheme);
        let _ = writeln!(s, "wavelength           {:.3} nm", op.wavelength / 1e-9);
        let _ = writeln!(s, "attenuation          {:.6} 1/mm", op.alpha * 1e-3);
        let _ = writeln!(s, "path gain h_l^2      {:.6e}", op.h_l_sq);
        let _ = writeln!(s, "responsivity         {:.6} A/W", op.responsivity);
        let _ = writeln!(s, "footprint w_delta    {:.6} mm", p.w_delta * 1e3);
        let _ = writeln!(s, "upsilon              {:.6}", p.upsilon);
        let _ = writeln!(s, "A0                   {:.6}", r.a0);
        let _ = writeln!(s, "w_eq                 {:.6} mm", p.w_eq_sq.sqrt() * 1e3);
        let _ = writeln!(s, "sigma_s              {:.6} mm", p.sigma_s * 1e3);
        let _ = writeln!(s, "xi                   {:.6}", r.xi);
        let _ = writeln!(
            s,
            "average SNR          {:.6e} ({:.3} dB)",
            r.gamma_bar, r.gamma_bar_db
        );
        let _ = writeln!(
            s,
            "peak SNR             {:.6e} ({:.3} dB)",
            r.gamma_max,
            to_db(r.gamma_max)
        );
        let _ = writeln!(s, "SNR threshold        {:.6e}", r.gamma_th);
        let _ = writeln!(
            s,
            "outage probability   {:.6e}{}",
            r.outage,
            if r.outage_saturated {
                " (threshold above peak SNR)"
            } else {
                ""
            }
        );
        let _ = writeln!(
            s,
            "spectral efficiency  {:.6} bit/s/Hz [{se_tag}]",
            r.spectral_efficiency
        );
        let _ = writeln!(
            s,
            "  closed-form bound  {:.6} bit/s/Hz{}",
            r.spectral_efficiency_lower_bound.value,
            vac(r.spectral_efficiency_lower_bound.vacuous)
        );
        let _ = writeln!(s, "bandwidth            {:.6} MHz", r.bandwidth / 1e6);
        let _ = writeln!(
            s,
            "capacity             {:.6} Mbit/s [{se_tag}]",
            r.capacity / 1e6
        );
        let _ = writeln!(
            s,
            "  closed-form bound  {:.6} Mbit/s{}",
            r.capacity_lower_bound.value / 1e6,
            vac(r.capacity_lower_bound.vacuous)
        );
        if r.xi_warning {
            let _ = writeln!(
                s,
                "warning: xi = {} is outside the usual modelling range",
                r.xi
            );
        }
        s
    }
}

/// `eval`: the text report, plus the CSV (header and one row).
pub fn eval(cfg: &RunConfig) -> Result<(String, String)> {
    let table = Arc::new(cfg.load_table()?);
    let e = evaluate(cfg, table)?;
    let csv = format!("{}\n{}\n", csv_header(), e.csv_row());
    Ok((e.text_report(), csv))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Linear,
    Log,
}

/// One sweep axis: `name:start:stop:count[:lin|log]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepAxis {
    pub param: Param,
    pub values: Vec<f64>,
}

/// Parameters that may be swept.
pub const SWEEP_PARAMS: [Param; 10] = [
    Param::Delta,
    Param::Lambda,
    Param::Xi,
    Param::SigmaS,
    Param::Theta,
    Param::Area,
    Param::Eta,
    Param::Psd,
    Param::Bandwidth,
    Param::GammaThNorm,
];

impl SweepAxis {
    pub fn parse(spec: &str) -> Result<Self> {
        let parts: Vec<&str> = spec.split(':').map(str::trim).collect();
        if !(4..=5).contains(&parts.len()) {
            return Err(Error::Config(format!(
                "sweep axis `{spec}`: expected name:start:stop:count[:lin|log]"
            )));
        }
        let param = Param::from_key(parts[0])
            .filter(|p| SWEEP_PARAMS.contains(p))
            .ok_or_else(|| {
                let names: Vec<_> = SWEEP_PARAMS.iter().map(|p| p.key()).collect();
                Error::Config(format!(
                    "cannot sweep `{}`; choose one of {}",
                    parts[0],
                    names.join(", ")
                ))
            })?;
        let start = parse_quantity(parts[1], param.quantity())?;
        let stop = parse_quantity(parts[2], param.quantity())?;
        let count: usize = parts[3]
            .parse()
            .map_err(|_| Error::Config(format!("sweep axis `{spec}`: bad count `{}`", parts[3])))?;
        if count == 0 {
            return Err(Error::Config(format!(
                "sweep axis `{spec}`: count must be >= 1"
            )));
        }
        let spacing = match parts.get(4).map(|s| s.to_ascii_lowercase()) {
            None => Spacing::Linear,
            Some(s) if s == "lin" || s == "linear" => Spacing::Linear,
            Some(s) if s == "log" => Spacing::Log,
            Some(s) => {
                return Err(Error::Config(format!(
                    "sweep axis `{spec}`: unknown spacing `{s}`"
                )))
            }
        };
        if spacing == Spacing::Log && !(start > 0.0 && stop > 0.0) {
            return Err(Error::Config(format!(
                "sweep axis `{spec}`: log spacing needs positive endpoints"
            )));
        }
        Ok(Self {
            param,
            values: grid(start, stop, count, spacing),
        })
    }
}

fn grid(start: f64, stop: f64, count: usize, spacing: Spacing) -> Vec<f64> {
    if count == 1 {
        return vec![start];
    }
    let last = (count - 1) as f64;
    (0..count)
        .map(|i| {
            let t = i as f64 / last;
            match spacing {
                Spacing::Linear => start + (stop - start) * t,
                Spacing::Log => (start.ln() + (stop.ln() - start.ln()) * t).exp(),
            }
        })
        .map(|v| if v.is_finite() { v } else { stop })
        .collect()
}

/// `sweep`: a CSV with one row per grid point, the first axis varying slowest.
pub fn sweep(cfg: &RunConfig, first: &SweepAxis, second: Option<&SweepAxis>) -> Result<String> {
    let table = Arc::new(cfg.load_table()?);
    let mut points: Vec<Vec<(Param, f64)>> = Vec::new();
    for &a in &first.values {
        match second {
            None => points.push(vec![(first.param, a)]),
            Some(ax) => {
                for &b in &ax.values {
                    points.push(vec![(first.param, a), (ax.param, b)]);
                }
            }
        }
    }
    let rows: Vec<String> = points
        .par_iter()
        .map(|settings| {
            let mut c = cfg.clone();
            for &(p, v) in settings {
                c.set_si(p, v);
            }
            evaluate(&c, Arc::clone(&table)).map(|e| e.csv_row())
        })
        .collect::<Result<_>>()?;
    let mut out = csv_header();
    out.push('\n');
    for r in rows {
        out.push_str(&r);
        out.push('\n');
    }
    Ok(out)
}

/// One closed-form vs Monte Carlo comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidationRow {
    pub metric: &'static str,
    pub closed_form: f64,
    pub mc_mean: f64,
    pub mc_std_error: f64,
    pub z: f64,
    pub pass: bool,
}

/// Closed-form values to check against a simulation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedForm {
    pub avg_snr: f64,
    pub outage: f64,
    pub spectral_efficiency: f64,
}

impl From<&MetricsReport> for ClosedForm {
    fn from(r: &MetricsReport) -> Self {
        Self {
            avg_snr: r.gamma_bar,
            outage: r.outage,
            spectral_efficiency: r.spectral_efficiency,
        }
    }
}

pub fn compare(closed: &ClosedForm, mc: &McMetrics) -> Vec<ValidationRow> {
    [
        ("avg_snr", closed.avg_snr, &mc.avg_snr),
        ("outage", closed.outage, &mc.outage),
        ("spectral_efficiency", closed.spectral_efficiency, &mc.se),
    ]
    .into_iter()
    .map(|(metric, cf, est)| {
        let z = est.z_score(cf);
        ValidationRow {
            metric,
            closed_form: cf,
            mc_mean: est.mean,
            mc_std_error: est.std_error,
            z,
            pass: z <= Z_THRESHOLD,
        }
    })
    .collect()
}

#[derive(Debug, Clone)]
pub struct ValidationOutcome {
    pub rows: Vec<ValidationRow>,
    pub text: String,
}

impl ValidationOutcome {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }
}

pub fn render_validation(cfg: &RunConfig, e: &Evaluation, rows: &[ValidationRow]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# rng: {RNG_DESCRIPTION}");
    let _ = writeln!(s, "# seed: {}", cfg.seed);
    let _ = writeln!(s, "# samples: {}", cfg.samples);
    let _ = writeln!(
        s,
        "# scheme: {}  xi: {:.11e}  gamma_th: {:.11e}",
        e.report.scheme, e.report.xi, e.report.gamma_th
    );
    let _ = writeln!(s, "metric,closed_form,mc_mean,mc_std_error,z,result");
    for r in rows {
        let _ = writeln!(
            s,
            "{},{},{},{},{:.4},{}",
            r.metric,
            num(r.closed_form),
            num(r.mc_mean),
            num(r.mc_std_error),
            r.z,
            if r.pass { "PASS" } else { "FAIL" }
        );
    }
    s
}

/// `validate`: Monte Carlo cross-check of the closed forms.
pub fn validate(cfg: &RunConfig) -> Result<ValidationOutcome> {
    let table = Arc::new(cfg.load_table()?);
    let e = evaluate(cfg, table)?;
    let mc = estimate_metrics(
        &cfg.mc()?,
        &e.op.params,
        &e.op.scale,
        e.op.scheme,
        e.report.gamma_th,
    )?;
    let rows = compare(&ClosedForm::from(&e.report), &mc);
    let text = render_validation(cfg, &e, &rows);
    Ok(ValidationOutcome { rows, text })
}

/// `jitter` result; `Err(Error::Infeasible)` when the threshold exceeds the
/// zero-jitter peak SNR.
pub fn jitter(cfg: &RunConfig, target_po: f64) -> Result<(TargetOutageCapacity, String)> {
    let table = Arc::new(cfg.load_table()?);
    let link = cfg.link(table)?;
    let op = link.operating_point()?;
    let gamma_th = cfg.gamma_th(&op);
    let fp = op.params.footprint();
    let t =
        capacity_at_target_outage(target_po, gamma_th, &fp, &op.scale, op.scheme, op.bandwidth)?;
    let mut s = String::new();
    let _ = writeln!(s, "target outage        {target_po:.6e}");
    let _ = writeln!(s, "SNR threshold        {gamma_th:.6e}");
    let _ = writeln!(s, "threshold ratio H    {:.6e}", t.jitter.h);
    let _ = writeln!(s, "max jitter sigma_s   {:.6} mm", t.jitter.sigma_s * 1e3);
    let _ = writeln!(s, "implied xi           {:.6}", t.jitter.xi);
    let tag = if op.scheme.se_is_exact() {
        ""
    } else {
        " [lower bound on capacity]"
    };
    let _ = writeln!(s, "capacity             {:.6} Mbit/s{tag}", t.exact / 1e6);
    let _ = writeln!(
        s,
        "  closed-form bound  {:.6} Mbit/s{}",
        t.lower_bound.value / 1e6,
        if t.lower_bound.vacuous {
            " (vacuous)"
        } else {
            ""
        }
    );
    Ok((t, s))
}
