//! Unit conversions between the human-facing units used on disk and on the
//! command line and the SI values used everywhere inside the crate.

pub const NM: f64 = 1e-9;
pub const UM: f64 = 1e-6;
pub const MM: f64 = 1e-3;
pub const MM2: f64 = 1e-6;
pub const MHZ: f64 = 1e6;
pub const UW: f64 = 1e-6;
pub const NA: f64 = 1e-9;
pub const PA: f64 = 1e-12;

pub fn nm(v: f64) -> f64 {
    v * NM
}

pub fn mm(v: f64) -> f64 {
    v * MM
}

pub fn deg(v: f64) -> f64 {
    v.to_radians()
}

/// Linear power ratio to decibels.
pub fn to_db(linear: f64) -> f64 {
    10.0 * linear.log10()
}

pub fn from_db(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}
