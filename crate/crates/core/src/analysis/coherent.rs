use super::{require_interior, require_zeta_hat, HessianReport, Partials};
use crate::error::{Error, Result};
use crate::model::{Link, NetworkConfig, SqrtPower};

/// `g(p) = 1/p_S^2 + p_R^2 |h_RD|^2 / (p_S^2 sigma_D^2) + |h_SR|^2 / (zeta_hat p_R^2)`
/// and its partials in the amplitudes `(p_S, p_R)`.
pub fn g_partials(point: SqrtPower, link: &Link, config: &NetworkConfig) -> Result<Partials> {
    require_interior(point.p_s, point.p_r)?;
    let zh = require_zeta_hat(link, config)?;
    let (ps, pr) = (point.p_s, point.p_r);
    let (grd, gsr, s2) = (link.g_rd(), link.g_sr(), config.sigma2_dest);
    let (ps2, pr2) = (ps * ps, pr * pr);
    Ok(Partials {
        value: 1.0 / ps2 + pr2 * grd / (ps2 * s2) + gsr / (zh * pr2),
        d1: -2.0 / ps.powi(3) - 2.0 * grd * pr2 / (ps.powi(3) * s2),
        d2: 2.0 * grd * pr / (ps2 * s2) - 2.0 * gsr / (zh * pr.powi(3)),
        d11: 6.0 / ps.powi(4) + 6.0 * grd * pr2 / (s2 * ps.powi(4)),
        d12: -4.0 * pr * grd / (s2 * ps.powi(3)),
        d22: 2.0 * grd / (ps2 * s2) + 6.0 * gsr / (zh * pr.powi(4)),
    })
}

/// Hessian of `1/g` in `(p_S, p_R)`.
pub fn hessian_coh(point: SqrtPower, link: &Link, config: &NetworkConfig) -> Result<HessianReport> {
    Ok(HessianReport::from_matrix(g_partials(point, link, config)?.reciprocal_hessian()))
}

/// Determinant of the `1/g` Hessian.
pub fn sc2(point: SqrtPower, link: &Link, config: &NetworkConfig) -> Result<f64> {
    Ok(hessian_coh(point, link, config)?.det)
}

/// Amplitude thresholds below which the `1/g` Hessian is indefinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherentThresholds {
    /// `sigma_D / (sqrt 3 |h_RD|)`; below it `a3 < 0`.
    pub p_r_tilde: f64,
    /// The relay amplitude the source thresholds were evaluated at.
    pub p_r: f64,
    /// `sqrt(zeta_hat / 6) p_R / |h_SR|`; below it the `p_S` curvature of `1/g` is positive.
    pub p_s1: f64,
    /// Square root of the positive root (in `p_S^2`) of
    /// `eta = a1 x^2 + 2 a2 x + a3`; below it the `p_R` curvature is negative.
    pub p_s2: f64,
    pub p_s: f64,
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
}

/// Thresholds at relay amplitude `p_r`, which must lie in `(0, p_r_tilde)`.
pub fn coherent_thresholds(link: &Link, config: &NetworkConfig, p_r: f64) -> Result<CoherentThresholds> {
    let zh = require_zeta_hat(link, config)?;
    let (grd, gsr, s2) = (link.g_rd(), link.g_sr(), config.sigma2_dest);
    let p_r_tilde = (s2 / (3.0 * grd)).sqrt();
    if !(p_r > 0.0 && p_r < p_r_tilde) {
        return Err(Error::Domain(format!("relay amplitude {p_r} must lie in (0, {p_r_tilde})")));
    }
    let pr2 = p_r * p_r;
    let a1 = 2.0 * gsr * gsr / (zh * zh * pr2.powi(3));
    let a2 = -3.0 * gsr / (zh * pr2 * pr2 * s2) * (s2 + 4.0 * grd * pr2);
    let a3 = -2.0 * grd / (s2 * s2) * (s2 - 3.0 * grd * pr2);
    // a2 < 0 and a3 < 0, so this root is positive and free of cancellation.
    let x = (-a2 + (a2 * a2 - a1 * a3).sqrt()) / a1;
    let p_s1 = (zh / 6.0).sqrt() * p_r / gsr.sqrt();
    let p_s2 = x.sqrt();
    Ok(CoherentThresholds {
        p_r_tilde,
        p_r,
        p_s1,
        p_s2,
        p_s: p_s1.min(p_s2),
        a1,
        a2,
        a3,
    })
}

/// A point with an indefinite `1/g` Hessian, built from half the
/// thresholds and halved toward the origin (up to 40 times) should
/// rounding hide the sign.
pub fn sc2_witness(link: &Link, config: &NetworkConfig) -> Result<(SqrtPower, f64)> {
    require_zeta_hat(link, config)?;
    let p_r_tilde = (config.sigma2_dest / (3.0 * link.g_rd())).sqrt();
    let t = coherent_thresholds(link, config, 0.5 * p_r_tilde)?;
    let mut point = SqrtPower::new(0.5 * t.p_s, t.p_r);
    for _ in 0..40 {
        let d = sc2(point, link, config)?;
        if d < 0.0 {
            return Ok((point, d));
        }
        point = SqrtPower::new(0.5 * point.p_s, 0.5 * point.p_r);
    }
    Err(Error::Domain("no indefinite point found below the thresholds".into()))
}
