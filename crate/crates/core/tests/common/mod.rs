#![allow(dead_code)]

use fdcrn::model::{Link, NetworkConfig};
use num_complex::Complex64;
use proptest::prelude::*;

pub fn complex() -> impl Strategy<Value = Complex64> {
    (-2.0..2.0f64, -2.0..2.0f64)
        .prop_filter("nonzero", |(a, b)| a.hypot(*b) > 0.05)
        .prop_map(|(a, b)| Complex64::new(a, b))
}

pub fn link() -> impl Strategy<Value = Link> {
    (complex(), complex(), complex(), complex(), complex()).prop_map(|(h_sr, h_rd, h_rp, h_rr, h_sp)| Link {
        h_sr,
        h_rd,
        h_rp,
        h_rr,
        h_sp,
    })
}

/// Log-uniform positive value in `[lo, hi]`.
pub fn log_range(lo: f64, hi: f64) -> impl Strategy<Value = f64> {
    (lo.ln()..hi.ln()).prop_map(f64::exp)
}

pub fn config(zeta: f64) -> NetworkConfig {
    NetworkConfig {
        zeta,
        ..NetworkConfig::default()
    }
}
