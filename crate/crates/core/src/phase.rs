//! Coherent interference: the source and relay contributions at the primary
//! receiver are phasors `A` and `B`, and the relay rotates its signal by a
//! forwarding phase `phi` so that the sum `A + B e^{-j phi}` is as small as
//! possible.

use std::f64::consts::{FRAC_1_SQRT_2, PI, TAU};

use num_complex::Complex64;

use crate::model::{gain_inv_sq, relay_gain, Link, NetworkConfig, PowerAllocation, SqrtPower};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherentDecomposition {
    pub a: Complex64,
    pub b: Complex64,
    pub phi_a: f64,
    pub phi_b: f64,
}

impl CoherentDecomposition {
    /// `|A + B e^{-j phi}|^2`.
    pub fn interference_at(&self, phi: f64) -> f64 {
        (self.a + self.b * Complex64::from_polar(1.0, -phi)).norm_sqr()
    }

    /// Same quantity through the cosine law.
    pub fn interference_at_polar(&self, phi: f64) -> f64 {
        let (ma, mb) = (self.a.norm(), self.b.norm());
        ma * ma + mb * mb + 2.0 * ma * mb * (self.phi_a - self.phi_b + phi).cos()
    }

    /// Worst case over all phases, `(|A| + |B|)^2`.
    pub fn interference_max(&self) -> f64 {
        (self.a.norm() + self.b.norm()).powi(2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseSolution {
    /// Forwarding phase in `[0, 2 pi)`.
    pub phi_opt: f64,
    /// `(|A| - |B|)^2`.
    pub i_coh: f64,
    /// `phi_opt / (2 pi f_s)`, within one sampling period.
    pub delay: f64,
}

/// The relay's received signal before amplification,
/// `h_SR p_S + h_RR sqrt(zeta) p_R + sigma_R (1 + j) / sqrt(2)`.
pub fn relay_input(p: SqrtPower, link: &Link, config: &NetworkConfig) -> Complex64 {
    let noise = config.sigma2_relay.sqrt() * FRAC_1_SQRT_2;
    link.h_sr * p.p_s + link.h_rr * (config.zeta.sqrt() * p.p_r) + Complex64::new(noise, noise)
}

pub fn decompose(alloc: PowerAllocation, link: &Link, config: &NetworkConfig) -> CoherentDecomposition {
    let p = SqrtPower::from(alloc);
    let a = link.h_sp * p.p_s + link.h_rp * (config.zeta.sqrt() * p.p_r);
    let g = relay_gain(alloc, link, config);
    let b = relay_input(p, link, config) * link.h_rp * (g * p.p_r);
    CoherentDecomposition {
        a,
        b,
        phi_a: a.arg(),
        phi_b: b.arg(),
    }
}

fn wrap_phase(phi: f64) -> f64 {
    let w = phi.rem_euclid(TAU);
    if w >= TAU {
        0.0
    } else {
        w
    }
}

/// Phase that puts `B` in antiphase with `A`. With `f_s` given the delay is
/// also filled in; [`optimal_phase`] leaves it at the 1 Hz convention.
pub fn optimal_phase_at(dec: &CoherentDecomposition, sampling_freq: f64) -> PhaseSolution {
    let phi_opt = if dec.a == Complex64::new(0.0, 0.0) && dec.b == Complex64::new(0.0, 0.0) {
        PI
    } else {
        wrap_phase(PI + dec.phi_b - dec.phi_a)
    };
    PhaseSolution {
        phi_opt,
        i_coh: (dec.a.norm() - dec.b.norm()).powi(2),
        delay: phi_opt / (TAU * sampling_freq),
    }
}

pub fn optimal_phase(dec: &CoherentDecomposition) -> PhaseSolution {
    optimal_phase_at(dec, 1.0)
}

pub fn phase_solution(alloc: PowerAllocation, link: &Link, config: &NetworkConfig) -> PhaseSolution {
    optimal_phase_at(&decompose(alloc, link, config), config.sampling_freq)
}

/// Interference at the primary receiver with the relay phase chosen optimally.
pub fn interference_coh(alloc: PowerAllocation, link: &Link, config: &NetworkConfig) -> f64 {
    optimal_phase(&decompose(alloc, link, config)).i_coh
}

/// `|A| - |B|`. Its square is the coherent interference; the sign tells
/// which phasor dominates.
pub fn amplitude_margin(alloc: PowerAllocation, link: &Link, config: &NetworkConfig) -> f64 {
    let d = decompose(alloc, link, config);
    d.a.norm() - d.b.norm()
}

/// Quadratic model of the coherent interference in amplitude variables,
/// with `|B|` replaced by `sqrt(3) p_R |h_RP|` and the phase frozen.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvexifiedConstraint {
    pub f1: f64,
    pub f2: f64,
    pub frozen_phi: f64,
}

impl ConvexifiedConstraint {
    /// Freezes the phase terms at the optimal phase of `reference`.
    pub fn at(reference: PowerAllocation, link: &Link, config: &NetworkConfig) -> Self {
        let dec = decompose(reference, link, config);
        let phi = optimal_phase(&dec).phi_opt;
        Self::with_phases(dec.phi_b, phi, link, config)
    }

    pub fn with_phases(phi_b: f64, phi_opt: f64, link: &Link, config: &NetworkConfig) -> Self {
        let sz = config.zeta.sqrt();
        let m = 3f64.sqrt() * link.h_rp.norm();
        Self {
            f1: link.h_rp.re * sz + m * (phi_b - phi_opt).cos(),
            f2: link.h_rp.im * sz + m * (phi_b - phi_opt).sin(),
            frozen_phi: phi_opt,
        }
    }

    pub fn value(&self, p: SqrtPower, link: &Link) -> f64 {
        let x = link.h_sp.re * p.p_s + self.f1 * p.p_r;
        let y = link.h_sp.im * p.p_s + self.f2 * p.p_r;
        x * x + y * y
    }

    pub fn d_ps(&self, p: SqrtPower, link: &Link) -> f64 {
        let (hr, hi) = (link.h_sp.re, link.h_sp.im);
        2.0 * hr * (hr * p.p_s + self.f1 * p.p_r) + 2.0 * hi * (hi * p.p_s + self.f2 * p.p_r)
    }

    pub fn d_pr(&self, p: SqrtPower, link: &Link) -> f64 {
        let (hr, hi) = (link.h_sp.re, link.h_sp.im);
        2.0 * self.f1 * (hr * p.p_s + self.f1 * p.p_r) + 2.0 * self.f2 * (hi * p.p_s + self.f2 * p.p_r)
    }

    pub fn d2_ps(&self, link: &Link) -> f64 {
        2.0 * link.g_sp()
    }

    pub fn d2_ps_pr(&self, link: &Link) -> f64 {
        2.0 * (link.h_sp.re * self.f1 + link.h_sp.im * self.f2)
    }

    pub fn d2_pr(&self) -> f64 {
        2.0 * (self.f1 * self.f1 + self.f2 * self.f2)
    }

    /// Set of `p_R >= 0` with `value <= cap` at fixed `p_S`, as `[lo, hi]`.
    /// `None` when empty.
    pub fn pr_interval(&self, p_s: f64, cap: f64, link: &Link) -> Option<(f64, f64)> {
        // q(r) = qa r^2 + qb r + qc
        let x0 = link.h_sp.re * p_s;
        let y0 = link.h_sp.im * p_s;
        let qa = self.f1 * self.f1 + self.f2 * self.f2;
        let qb = 2.0 * (x0 * self.f1 + y0 * self.f2);
        let qc = x0 * x0 + y0 * y0 - cap;
        nonneg_sublevel(qa, qb, qc)
    }

    /// Set of `p_S >= 0` with `value <= cap` at fixed `p_R`.
    pub fn ps_interval(&self, p_r: f64, cap: f64, link: &Link) -> Option<(f64, f64)> {
        let (x0, y0) = (self.f1 * p_r, self.f2 * p_r);
        let qa = link.g_sp();
        let qb = 2.0 * (link.h_sp.re * x0 + link.h_sp.im * y0);
        let qc = x0 * x0 + y0 * y0 - cap;
        nonneg_sublevel(qa, qb, qc)
    }
}

/// `{x >= 0 : qa x^2 + qb x + qc <= 0}` for `qa >= 0`.
fn nonneg_sublevel(qa: f64, qb: f64, qc: f64) -> Option<(f64, f64)> {
    if qa == 0.0 {
        return match (qb > 0.0, qc <= 0.0) {
            (_, _) if qb == 0.0 => (qc <= 0.0).then_some((0.0, f64::INFINITY)),
            (true, _) => (-qc / qb >= 0.0).then(|| (0.0, -qc / qb)),
            (false, true) => Some((0.0, f64::INFINITY)),
            (false, false) => Some((-qc / qb, f64::INFINITY)),
        };
    }
    let disc = qb * qb - 4.0 * qa * qc;
    if disc < 0.0 {
        return None;
    }
    let q = -0.5 * (qb + qb.signum() * disc.sqrt());
    let (mut r1, mut r2) = if q != 0.0 { (q / qa, qc / q) } else { (0.0, 0.0) };
    if r1 > r2 {
        std::mem::swap(&mut r1, &mut r2);
    }
    if r2 < 0.0 {
        return None;
    }
    Some((r1.max(0.0), r2))
}

pub fn convexified_interference(p: SqrtPower, link: &Link, frozen: &ConvexifiedConstraint) -> f64 {
    frozen.value(p, link)
}

/// `L = |D|^2 - G^{-2}`, the cross terms dropped when `|B|` is approximated.
pub fn cross_term_l(p: SqrtPower, link: &Link, config: &NetworkConfig) -> f64 {
    relay_input(p, link, config).norm_sqr() - gain_inv_sq(p.to_power(), link, config)
}

/// `G^{-2} - L/2`, nonnegative by Cauchy-Schwarz.
pub fn cauchy_schwarz_slack(p: SqrtPower, link: &Link, config: &NetworkConfig) -> f64 {
    gain_inv_sq(p.to_power(), link, config) - 0.5 * cross_term_l(p, link, config)
}

/// `|B|^2 / (3 p_R^2 |h_RP|^2)`; equals 1 exactly when `L = 2 G^{-2}`.
/// `None` when the denominator vanishes.
pub fn b_approximation_ratio(p: SqrtPower, link: &Link, config: &NetworkConfig) -> Option<f64> {
    let den = 3.0 * p.p_r * p.p_r * link.g_rp();
    if den <= 0.0 {
        return None;
    }
    Some(decompose(p.to_power(), link, config).b.norm_sqr() / den)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn link() -> Link {
        Link {
            h_sr: Complex64::new(0.7, -0.4),
            h_rd: Complex64::new(-0.3, 1.1),
            h_rp: Complex64::new(0.5, 0.6),
            h_rr: Complex64::new(-0.9, 0.2),
            h_sp: Complex64::new(0.8, 0.1),
        }
    }

    #[test]
    fn silent_network_has_no_interference() {
        let cfg = NetworkConfig::default();
        let d = decompose(PowerAllocation::ZERO, &link(), &cfg);
        assert_eq!(d.a, Complex64::new(0.0, 0.0));
        assert_eq!(d.b, Complex64::new(0.0, 0.0));
        let s = optimal_phase(&d);
        assert_eq!(s.phi_opt, PI);
        assert_eq!(s.i_coh, 0.0);
    }

    #[test]
    fn silent_relay_leaves_source_term() {
        let cfg = NetworkConfig {
            zeta: 0.0,
            ..NetworkConfig::default()
        };
        let d = decompose(PowerAllocation::new(4.0, 0.0), &link(), &cfg);
        assert!((d.a - link().h_sp * 2.0).norm() < 1e-15);
        assert_eq!(d.b.norm(), 0.0);
        assert!((optimal_phase(&d).i_coh - 4.0 * link().g_sp()).abs() < 1e-14);
    }

    #[test]
    fn aligned_equal_phasors_cancel() {
        let one = Complex64::new(0.0, 1.0);
        let d = CoherentDecomposition {
            a: one,
            b: one,
            phi_a: one.arg(),
            phi_b: one.arg(),
        };
        let s = optimal_phase(&d);
        assert!((s.phi_opt - PI).abs() < 1e-15);
        assert!(s.i_coh.abs() < 1e-30);
        assert!(d.interference_at(s.phi_opt) < 1e-30);
    }

    #[test]
    fn phase_is_wrapped_and_delay_scaled() {
        let cfg = NetworkConfig {
            sampling_freq: 2.0e6,
            ..NetworkConfig::default()
        };
        let s = phase_solution(PowerAllocation::new(3.0, 5.0), &link(), &cfg);
        assert!((0.0..TAU).contains(&s.phi_opt));
        assert!((s.delay * TAU * 2.0e6 - s.phi_opt).abs() < 1e-12);
    }

    #[test]
    fn convexified_terms_vanish_without_relay_coefficients() {
        let c = ConvexifiedConstraint {
            f1: 0.0,
            f2: 0.0,
            frozen_phi: 0.0,
        };
        let l = link();
        let p = SqrtPower::new(1.7, 2.3);
        assert!((c.value(p, &l) - l.g_sp() * 1.7 * 1.7).abs() < 1e-14);
        assert_eq!(c.value(SqrtPower::new(0.0, 0.0), &l), 0.0);
    }

    #[test]
    fn convexified_interval_bounds_the_quadratic() {
        let cfg = NetworkConfig::default();
        let l = link();
        let c = ConvexifiedConstraint::at(PowerAllocation::new(2.0, 3.0), &l, &cfg);
        let (lo, hi) = c.pr_interval(1.0, 6.0, &l).unwrap();
        assert!(c.value(SqrtPower::new(1.0, hi), &l) <= 6.0 + 1e-9);
        assert!(c.value(SqrtPower::new(1.0, hi * 1.001), &l) > 6.0);
        assert!(lo <= hi);
    }

    #[test]
    fn cauchy_schwarz_slack_is_nonnegative() {
        let cfg = NetworkConfig {
            zeta: 0.4,
            ..NetworkConfig::default()
        };
        for i in 0..50 {
            let p = SqrtPower::new(0.3 * i as f64, 0.2 * (50 - i) as f64);
            assert!(cauchy_schwarz_slack(p, &link(), &cfg) >= -1e-12);
        }
    }
}
