//! Reference implementations shared by the integration tests.
//!
//! None of these reuse library code: the quadrature is tanh-sinh rather than
//! Gauss-Kronrod, sums are exact (Shewchuk partials), and the Rayleigh sampler
//! draws two Gaussians instead of inverting the CDF.
#![allow(dead_code, clippy::excessive_precision)]

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

/// Exactly rounded sum of `xs`.
pub fn fsum(xs: impl IntoIterator<Item = f64>) -> f64 {
    let mut partials: Vec<f64> = Vec::new();
    for mut x in xs {
        let mut i = 0;
        for j in 0..partials.len() {
            let mut y = partials[j];
            if x.abs() < y.abs() {
                std::mem::swap(&mut x, &mut y);
            }
            let hi = x + y;
            let lo = y - (hi - x);
            if lo != 0.0 {
                partials[i] = lo;
                i += 1;
            }
            x = hi;
        }
        partials.truncate(i);
        partials.push(x);
    }
    // Round-half-even correction from the tail of the partials.
    let mut n = partials.len();
    if n == 0 {
        return 0.0;
    }
    n -= 1;
    let mut hi = partials[n];
    let mut lo = 0.0;
    while n > 0 {
        let x = hi;
        n -= 1;
        let y = partials[n];
        hi = x + y;
        let yr = hi - x;
        lo = y - yr;
        if lo != 0.0 {
            break;
        }
    }
    if n > 0 && ((lo < 0.0 && partials[n - 1] < 0.0) || (lo > 0.0 && partials[n - 1] > 0.0)) {
        let y = lo * 2.0;
        let x = hi + y;
        if y == x - hi {
            hi = x;
        }
    }
    hi
}

/// Tanh-sinh quadrature of `f` over `[a, b]`, refined until successive levels
/// agree to `rel_tol`. Endpoint singularities of power type are fine.
pub fn tanh_sinh(f: impl Fn(f64) -> f64, a: f64, b: f64, rel_tol: f64) -> f64 {
    use std::f64::consts::FRAC_PI_2;
    let half = 0.5 * (b - a);
    let t_max = 6.5;
    // Nodes are placed from the nearer endpoint so tiny offsets survive.
    let term = |t: f64| -> f64 {
        let u = FRAC_PI_2 * t.sinh();
        let d = 1.0 / ((2.0 * u.abs()).exp() + 1.0); // distance to endpoint / (b - a)
        if d == 0.0 {
            return 0.0;
        }
        let x = if t < 0.0 {
            a + (b - a) * d
        } else {
            b - (b - a) * d
        };
        if x <= a || x >= b {
            return 0.0;
        }
        let c = u.cosh();
        let w = half * FRAC_PI_2 * t.cosh() / (c * c);
        let v = f(x);
        if v.is_finite() {
            w * v
        } else {
            0.0
        }
    };
    let mut h = 1.0;
    let n0 = (t_max / h) as i64;
    let mut terms: Vec<f64> = (-n0..=n0).map(|k| term(k as f64 * h)).collect();
    let mut estimate = h * fsum(terms.iter().copied());
    for level in 1..=14 {
        h *= 0.5;
        let n = (t_max / h) as i64;
        terms.extend((-n..=n).filter(|k| k % 2 != 0).map(|k| term(k as f64 * h)));
        let next = h * fsum(terms.iter().copied());
        let converged = (next - estimate).abs() <= rel_tol * next.abs();
        estimate = next;
        if level >= 4 && converged {
            break;
        }
    }
    estimate
}

/// Sum of tanh-sinh integrals over consecutive breakpoints.
pub fn tanh_sinh_split(f: impl Fn(f64) -> f64, points: &[f64], rel_tol: f64) -> f64 {
    fsum(
        points
            .windows(2)
            .map(|w| tanh_sinh(&f, w[0], w[1], rel_tol)),
    )
}

/// Rayleigh(σ) samples as the norm of two independent N(0, σ²) components.
pub fn rayleigh_two_gaussians(sigma: f64, n: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let x: f64 = StandardNormal.sample(&mut rng);
            let y: f64 = StandardNormal.sample(&mut rng);
            sigma * x.hypot(y)
        })
        .collect()
}

/// Kolmogorov-Smirnov distance between the empirical distribution of
/// `samples` and `cdf`.
pub fn ks_statistic(samples: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let mut s = samples.to_vec();
    s.sort_by(f64::total_cmp);
    let n = s.len() as f64;
    s.iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / n).max((i + 1) as f64 / n - f)
        })
        .fold(0.0, f64::max)
}

pub fn rel_err(got: f64, want: f64) -> f64 {
    if want == 0.0 {
        got.abs()
    } else {
        ((got - want) / want).abs()
    }
}

/// The baseline link used throughout the tests, built from raw numbers.
pub mod baseline {
    pub const DELTA: f64 = 4e-3;
    pub const THETA_DEG: f64 = 20.0;
    pub const AREA: f64 = 1e-6;
    pub const SIGMA_S: f64 = 0.5e-3;
    pub const ETA: f64 = 0.8;
    pub const DARK_CURRENT: f64 = 0.05e-9;
    pub const N0: f64 = 1.3e-12 * 1.3e-12;
    pub const PSD: f64 = 0.01e-12;
    pub const BANDWIDTH: f64 = 10e6;
    pub const LAMBDA: f64 = 1100e-9;
}

/// Lerch `Φ(a, 1, x)` reference values, 20 significant digits, from an
/// arbitrary-precision quadrature of the integral representation.
pub const LERCH_REFERENCE: [(f64, f64, f64); 40] = [
    (-0.3, 0.55, 1.6537526798103556811),
    (-0.3, 1.05, 0.83016527352107152355),
    (-0.3, 1.5, 0.5675567383628540835),
    (-0.3, 6.0, 0.13269620371597800343),
    (-0.3, 11.0, 0.071325141376874933724),
    (-0.5, 0.55, 1.5682014311882918662),
    (-0.5, 1.05, 0.7683362188939325669),
    (-0.5, 1.5, 0.51832099453158721011),
    (-0.5, 6.0, 0.11689974774414622007),
    (-0.5, 11.0, 0.062382675361924132241),
    (-1.0, 0.55, 1.4051853169621912226),
    (-1.0, 1.05, 0.65416508901042716779),
    (-1.0, 1.5, 0.42920367320510338077),
    (-1.0, 6.0, 0.090186152773388023916),
    (-1.0, 11.0, 0.047512259925024674497),
    (-10.0, 0.55, 0.68075107048146946489),
    (-10.0, 1.05, 0.22019177091937915391),
    (-10.0, 1.5, 0.12002479898884677264),
    (-10.0, 6.0, 0.017790935438060534963),
    (-10.0, 11.0, 0.0090010919319154606645),
    (-1e4, 0.55, 0.019846979344713027518),
    (-1e4, 1.05, 0.00073289144329281140126),
    (-1e4, 1.5, 0.00019687840667978353724),
    (-1e4, 6.0, 1.9997500333283343324e-5),
    (-1e4, 11.0, 9.9988890138746048411e-6),
    (-1e8, 0.55, 1.266058355312342623e-4),
    (-1e8, 1.05, 1.2005019096118222906e-7),
    (-1e8, 1.5, 1.999685860734640954e-8),
    (-1e8, 6.0, 1.9999999750000003333e-9),
    (-1e8, 11.0, 9.9999998888888901389e-10),
    (-1e12, 0.55, 7.9896680834539712363e-7),
    (-1e12, 1.05, 1.4955508073076295181e-11),
    (-1e12, 1.5, 1.9999968584093464102e-12),
    (-1e12, 6.0, 1.9999999999975e-13),
    (-1e12, 11.0, 9.9999999999888888889e-14),
    (-1e16, 0.55, 5.0411535562663722719e-9),
    (-1e16, 1.05, 1.6817140769535782086e-15),
    (-1e16, 1.5, 1.9999999685840736641e-16),
    (-1e16, 6.0, 1.99999999999999975e-17),
    (-1e16, 11.0, 9.9999999999999988889e-18),
];

/// `∫₀^{A0} ½ log₂(1 + b x²) f(x) dx` straight from the gain density,
/// written out here rather than taken from the library.
pub fn se_by_quadrature(a0: f64, xi: f64, b: f64) -> f64 {
    let pdf = |x: f64| xi / a0.powf(xi) * x.powf(xi - 1.0);
    let f = |x: f64| 0.5 * (b * x * x).ln_1p() / std::f64::consts::LN_2 * pdf(x);
    let knee = 1.0 / b.sqrt();
    let mut points = vec![0.0];
    if knee < a0 {
        if knee > 1e-3 * a0 {
            points.push(knee);
        } else {
            points.extend([knee, 1e-3 * a0]);
        }
    }
    points.push(a0);
    tanh_sinh_split(f, &points, 1e-13)
}

/// `∫₀^{A0} x² f(x) dx`.
pub fn second_moment_by_quadrature(a0: f64, xi: f64) -> f64 {
    tanh_sinh(
        |x| x * x * xi / a0.powf(xi) * x.powf(xi - 1.0),
        0.0,
        a0,
        1e-14,
    )
}
