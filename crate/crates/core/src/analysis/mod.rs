//! Curvature of the reciprocal objectives: closed-form partials and
//! Hessians, the sign of their determinants, and the thresholds that
//! certify where joint concavity fails.
//!
//! Non-coherent variables are powers `(P_S, P_R)` and the objective is
//! `1/f`; coherent variables are amplitudes `(p_S, p_R)` and the objective
//! is `1/g` with `g(p) = f(p^2)`.

mod coherent;
mod noncoherent;
pub mod numeric;
mod suite;

pub use coherent::{coherent_thresholds, g_partials, hessian_coh, sc2, sc2_witness, CoherentThresholds};
pub use noncoherent::{
    f_partials, hessian_noncoh, hessian_noncoh_factored, hessian_zeta0, hessian_zeta0_displayed, sc1, sc1_exact, sc1_root_exact, sc1_witness,
    threshold_ps, NoncoherentThreshold,
};
pub use suite::{run_lemma_suite, LemmaCheck, SuiteSettings};

use crate::error::{Error, Result};
use crate::model::{Link, NetworkConfig};

/// First and second partials of a scalar function of two variables.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Partials {
    pub value: f64,
    pub d1: f64,
    pub d2: f64,
    pub d11: f64,
    pub d12: f64,
    pub d22: f64,
}

impl Partials {
    /// Hessian of `1/value`: `-(v v_ij - 2 v_i v_j) / v^3`.
    pub fn reciprocal_hessian(&self) -> [[f64; 2]; 2] {
        let v = self.value;
        let v3 = v * v * v;
        let h11 = -(v * self.d11 - 2.0 * self.d1 * self.d1) / v3;
        let h12 = -(v * self.d12 - 2.0 * self.d1 * self.d2) / v3;
        let h22 = -(v * self.d22 - 2.0 * self.d2 * self.d2) / v3;
        [[h11, h12], [h12, h22]]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Definiteness {
    NegativeDefinite,
    NegativeSemidefinite,
    Indefinite,
    PositiveSemidefinite,
    PositiveDefinite,
}

/// A 2x2 Hessian with its determinant and Sylvester classification.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HessianReport {
    pub h11: f64,
    pub h12: f64,
    pub h21: f64,
    pub h22: f64,
    pub det: f64,
    pub definiteness: Definiteness,
}

/// Size, relative to [`det_scale`], below which a determinant counts as zero.
pub const DEFINITENESS_TOL: f64 = 1e-9;

impl HessianReport {
    pub fn from_matrix(m: [[f64; 2]; 2]) -> Self {
        let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        Self {
            h11: m[0][0],
            h12: m[0][1],
            h21: m[1][0],
            h22: m[1][1],
            det,
            definiteness: classify(m, det),
        }
    }

    pub fn matrix(&self) -> [[f64; 2]; 2] {
        [[self.h11, self.h12], [self.h21, self.h22]]
    }
}

/// Magnitude of the two products that make up the determinant, so the
/// zero test is invariant to rescaling either coordinate.
pub fn det_scale(m: [[f64; 2]; 2]) -> f64 {
    (m[0][0] * m[1][1]).abs() + (m[0][1] * m[1][0]).abs()
}

fn classify(m: [[f64; 2]; 2], det: f64) -> Definiteness {
    let zero = DEFINITENESS_TOL * det_scale(m);
    let trace = m[0][0] + m[1][1];
    if det > zero {
        if m[0][0] < 0.0 {
            Definiteness::NegativeDefinite
        } else {
            Definiteness::PositiveDefinite
        }
    } else if det < -zero {
        Definiteness::Indefinite
    } else if trace > 0.0 {
        Definiteness::PositiveSemidefinite
    } else {
        Definiteness::NegativeSemidefinite
    }
}

fn require_interior(x: f64, y: f64) -> Result<()> {
    if x > 0.0 && y > 0.0 && x.is_finite() && y.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("({x}, {y}) is not in the open positive quadrant")))
    }
}

fn require_zeta_hat(link: &Link, config: &NetworkConfig) -> Result<f64> {
    let zh = crate::model::zeta_hat(link, config);
    if zh > 0.0 {
        Ok(zh)
    } else {
        Err(Error::ZetaHatZero { relay: 0 })
    }
}
