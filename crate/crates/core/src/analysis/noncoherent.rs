use super::{require_interior, require_zeta_hat, HessianReport, Partials};
use crate::error::{Error, Result};
use crate::model::{Link, NetworkConfig, PowerAllocation};

/// `f = 1/P_S + P_R |h_RD|^2 / (P_S sigma_D^2) + |h_SR|^2 / (zeta_hat P_R)`
/// and its partials in `(P_S, P_R)`.
pub fn f_partials(point: PowerAllocation, link: &Link, config: &NetworkConfig) -> Result<Partials> {
    require_interior(point.p_s, point.p_r)?;
    let zh = require_zeta_hat(link, config)?;
    let (ps, pr) = (point.p_s, point.p_r);
    let (grd, gsr, s2) = (link.g_rd(), link.g_sr(), config.sigma2_dest);
    Ok(Partials {
        value: 1.0 / ps + pr * grd / (ps * s2) + gsr / (zh * pr),
        d1: -1.0 / (ps * ps) - grd * pr / (ps * ps * s2),
        d2: grd / (ps * s2) - gsr / (zh * pr * pr),
        d11: 2.0 / ps.powi(3) + 2.0 * pr * grd / (s2 * ps.powi(3)),
        d12: -grd / (s2 * ps * ps),
        d22: 2.0 * gsr / (zh * pr.powi(3)),
    })
}

/// Hessian of `1/f` in `(P_S, P_R)`.
pub fn hessian_noncoh(point: PowerAllocation, link: &Link, config: &NetworkConfig) -> Result<HessianReport> {
    Ok(HessianReport::from_matrix(f_partials(point, link, config)?.reciprocal_hessian()))
}

/// The same Hessian entries in their factored forms. The mixed entry's
/// first bracket term is `|h_RD|^2 |h_SR|^2 / (zeta_hat P_R)`.
pub fn hessian_noncoh_factored(point: PowerAllocation, link: &Link, config: &NetworkConfig) -> Result<HessianReport> {
    let p = f_partials(point, link, config)?;
    let zh = require_zeta_hat(link, config)?;
    let (ps, pr) = (point.p_s, point.p_r);
    let (grd, gsr, s2) = (link.g_rd(), link.g_sr(), config.sigma2_dest);
    let f3 = p.value.powi(3);
    let h11 = -2.0 * gsr / (f3 * zh * pr * ps.powi(3) * s2) * (s2 + grd * pr);
    let h22 = -2.0 / (f3 * ps * ps * s2) * (-grd * grd / s2 + gsr * ps * (s2 + 3.0 * grd * pr) / (zh * pr.powi(3)));
    let h12 = -1.0 / (f3 * ps * ps * s2)
        * (-grd * gsr / (zh * pr) + (grd / ps - 2.0 * gsr * s2 / (zh * pr * pr)) * (1.0 + grd * pr / s2));
    Ok(HessianReport::from_matrix([[h11, h12], [h12, h22]]))
}

/// Coefficients and roots of `m(P_S) = a P_S^2 + b P_S + c` at fixed `P_R`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoncoherentThreshold {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    /// `b^2 - 4ac`.
    pub omega: f64,
    pub p_s1: f64,
    /// The positive root; below it the determinant is negative.
    pub p_s2: f64,
}

pub fn threshold_ps(link: &Link, config: &NetworkConfig, p_r: f64) -> Result<NoncoherentThreshold> {
    if !(p_r > 0.0) {
        return Err(Error::Domain(format!("relay power {p_r} must be > 0")));
    }
    let zh = require_zeta_hat(link, config)?;
    let (grd, gsr, s2) = (link.g_rd(), link.g_sr(), config.sigma2_dest);
    let u = grd * p_r / s2;
    let a = gsr * gsr / (zh * zh * p_r.powi(3)) * (12.0 + 11.0 * u);
    let b = 2.0 * gsr / (zh * p_r * p_r) * (2.0 + u);
    let c = -grd / s2 * (1.0 + u);
    let omega = b * b - 4.0 * a * c;
    let sq = omega.sqrt();
    // Cancellation-free forms of (-b -+ sqrt(omega)) / 2a.
    let p_s1 = (-b - sq) / (2.0 * a);
    let p_s2 = 2.0 * c / (-b - sq);
    Ok(NoncoherentThreshold {
        a,
        b,
        c,
        omega,
        p_s1,
        p_s2,
    })
}

/// `|h_RD|^2 / (P_S^6 sigma_D^2) (a P_S^2 + b P_S + c)`, the factored sign
/// expression for the determinant of the `1/f` Hessian.
///
/// Its sign matches the true determinant below `P_S2` and above
/// [`sc1_root_exact`], but not in the band between them (`P_S2` is always
/// the smaller of the two).
pub fn sc1(point: PowerAllocation, link: &Link, config: &NetworkConfig) -> Result<f64> {
    require_interior(point.p_s, point.p_r)?;
    let t = threshold_ps(link, config, point.p_r)?;
    let ps = point.p_s;
    Ok(link.g_rd() / (ps.powi(6) * config.sigma2_dest) * (t.a * ps * ps + t.b * ps + t.c))
}

/// Determinant of the `1/f` Hessian.
pub fn sc1_exact(point: PowerAllocation, link: &Link, config: &NetworkConfig) -> Result<f64> {
    Ok(hessian_noncoh(point, link, config)?.det)
}

/// The source power where the determinant of the `1/f` Hessian changes
/// sign at fixed `P_R`: negative below, positive above.
pub fn sc1_root_exact(link: &Link, config: &NetworkConfig, p_r: f64) -> Result<f64> {
    let zh = require_zeta_hat(link, config)?;
    let (grd, gsr, s2) = (link.g_rd(), link.g_sr(), config.sigma2_dest);
    Ok(p_r * p_r * grd * zh * (p_r * grd + s2) / (gsr * s2 * (3.0 * p_r * grd + 4.0 * s2)))
}

/// A point with an indefinite `1/f` Hessian: `P_S` at half the threshold.
pub fn sc1_witness(link: &Link, config: &NetworkConfig, p_r: f64) -> Result<(PowerAllocation, HessianReport)> {
    let t = threshold_ps(link, config, p_r)?;
    let point = PowerAllocation::new(0.5 * t.p_s2, p_r);
    Ok((point, hessian_noncoh(point, link, config)?))
}

/// Hessian of `1/f~` with `f~ = |h_RD|^2/(P_S sigma_D^2) + |h_SR|^2/(sigma_R^2 P_R)`,
/// the high-SNR objective under ideal cancellation.
pub fn hessian_zeta0(point: PowerAllocation, link: &Link, config: &NetworkConfig) -> Result<HessianReport> {
    require_interior(point.p_s, point.p_r)?;
    let (ps, pr) = (point.p_s, point.p_r);
    let al = link.g_rd() / config.sigma2_dest;
    let be = link.g_sr() / config.sigma2_relay;
    let p = Partials {
        value: al / ps + be / pr,
        d1: -al / (ps * ps),
        d2: -be / (pr * pr),
        d11: 2.0 * al / ps.powi(3),
        d12: 0.0,
        d22: 2.0 * be / pr.powi(3),
    };
    Ok(HessianReport::from_matrix(p.reciprocal_hessian()))
}

/// The factored entries of [`hessian_zeta0`] as displayed, mixed entry
/// included. That entry carries an extra factor 2, so its determinant is
/// not zero; kept only to document the discrepancy.
pub fn hessian_zeta0_displayed(point: PowerAllocation, link: &Link, config: &NetworkConfig) -> Result<HessianReport> {
    require_interior(point.p_s, point.p_r)?;
    let (ps, pr) = (point.p_s, point.p_r);
    let al = link.g_rd() / config.sigma2_dest;
    let be = link.g_sr() / config.sigma2_relay;
    let f3 = (al / ps + be / pr).powi(3);
    let k = 2.0 * al * be;
    let h11 = -k / (f3 * ps.powi(3) * pr);
    let h12 = 2.0 * k / (f3 * ps * ps * pr * pr);
    let h22 = -k / (f3 * ps * pr.powi(3));
    Ok(HessianReport::from_matrix([[h11, h12], [h12, h22]]))
}
