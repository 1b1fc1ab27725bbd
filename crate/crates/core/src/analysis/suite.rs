use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::numeric::{self, close};
use super::{
    f_partials, g_partials, hessian_coh, hessian_noncoh, hessian_zeta0, sc1, sc1_exact, sc1_root_exact, sc1_witness,
    sc2_witness, threshold_ps, det_scale, Definiteness, Partials, DEFINITENESS_TOL,
};
use crate::error::{Error, Result};
use crate::model::{sample_channels, Link, NetworkConfig, PowerAllocation, SqrtPower};
use crate::phase::{convexified_interference, decompose, optimal_phase, ConvexifiedConstraint};

/// Outcome of one curvature property checked over many random points.
#[derive(Debug, Clone, PartialEq)]
pub struct LemmaCheck {
    pub name: &'static str,
    pub checked: usize,
    pub failures: usize,
    pub detail: String,
}

impl LemmaCheck {
    pub fn passed(&self) -> bool {
        self.checked > 0 && self.failures == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuiteSettings {
    /// Random interior points per pointwise property.
    pub points: usize,
    /// Channel draws for the nonconvexity witnesses.
    pub draws: usize,
    pub seed: u64,
    /// Coordinates are drawn log-uniformly from `[lo, hi]`.
    pub lo: f64,
    pub hi: f64,
}

impl Default for SuiteSettings {
    fn default() -> Self {
        Self {
            points: 10_000,
            draws: 100,
            seed: 7,
            lo: 1e-2,
            hi: 1e2,
        }
    }
}

struct Tally {
    name: &'static str,
    checked: usize,
    failures: usize,
    first: Option<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            checked: 0,
            failures: 0,
            first: None,
        }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
            if self.first.is_none() {
                self.first = Some(what());
            }
        }
    }

    fn finish(self) -> LemmaCheck {
        let detail = self.first.unwrap_or_default();
        LemmaCheck {
            name: self.name,
            checked: self.checked,
            failures: self.failures,
            detail,
        }
    }
}

const FD_ABS: f64 = 1e-6;
const FD_REL: f64 = 1e-4;

fn log_uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    (rng.random::<f64>() * (hi / lo).ln()).exp() * lo
}

/// Closed-form partials against central differences: first partials from
/// the value, second partials from the closed-form first partials (value
/// differences lose the mixed term to roundoff when it is small). The
/// absolute tolerance is widened to the stencil's roundoff bound.
fn partials_agree<F: Fn(f64, f64) -> Partials>(eval: F, x: f64, y: f64) -> bool {
    let p = eval(x, y);
    let (g, n) = numeric::gradient_with_noise(|a, b| eval(a, b).value, x, y);
    let (g1, n1) = numeric::gradient_with_noise(|a, b| eval(a, b).d1, x, y);
    let (g2, n2) = numeric::gradient_with_noise(|a, b| eval(a, b).d2, x, y);
    [
        (p.d1, g[0], n[0]),
        (p.d2, g[1], n[1]),
        (p.d11, g1[0], n1[0]),
        (p.d12, g1[1], n1[1]),
        (p.d12, g2[0], n2[0]),
        (p.d22, g2[1], n2[1]),
    ]
    .iter()
    .all(|&(e, a, noise)| close(e, a, FD_ABS.max(noise), FD_REL))
}

fn hessians_agree(exact: [[f64; 2]; 2], fd: [[f64; 2]; 2]) -> bool {
    let scale = exact.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()));
    // Entries that nearly cancel are judged against the matrix scale.
    exact
        .iter()
        .flatten()
        .zip(fd.iter().flatten())
        .all(|(&e, &a)| close(e, a, FD_ABS.max(1e-5 * scale), FD_REL))
}

/// Runs every curvature property on random channels drawn from `config`
/// (one relay per draw) and random interior points.
///
/// `config.zeta` must be positive; the ideal-cancellation property does not
/// depend on it.
pub fn run_lemma_suite(config: &NetworkConfig, settings: SuiteSettings) -> Result<Vec<LemmaCheck>> {
    if !(config.zeta > 0.0) {
        return Err(Error::InvalidConfig("the curvature suite needs zeta > 0".into()));
    }
    if !(settings.lo > 0.0 && settings.lo < settings.hi) {
        return Err(Error::InvalidConfig(format!(
            "sample range [{}, {}] must be positive and nonempty",
            settings.lo, settings.hi
        )));
    }
    let config = NetworkConfig {
        num_relays: 1,
        ..config.clone()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(settings.seed);
    let (lo, hi) = (settings.lo, settings.hi);

    let mut per_var_f = Tally::new("noncoherent per-variable convexity");
    let mut per_var_g = Tally::new("coherent per-variable convexity");
    let mut ideal = Tally::new("ideal-cancellation semidefiniteness");
    let mut calculus = Tally::new("closed-form partials vs finite differences");
    let mut fd_f = Tally::new("noncoherent Hessian vs finite differences");
    let mut fd_g = Tally::new("coherent Hessian vs finite differences");
    let mut sc1_sign = Tally::new("factored determinant sign outside the band");
    let mut phase = Tally::new("optimal phase minimizes interference");

    for i in 0..settings.points {
        let link = sample_channels(&config, settings.seed.wrapping_add(i as u64)).link(0);
        let (x, y) = (log_uniform(&mut rng, lo, hi), log_uniform(&mut rng, lo, hi));
        let p = PowerAllocation::new(x, y);
        let q = SqrtPower::new(x, y);

        let f = f_partials(p, &link, &config)?;
        per_var_f.record(f.d11 > 0.0 && f.d22 > 0.0, || format!("f at ({x}, {y}): {f:?}"));
        let g = g_partials(q, &link, &config)?;
        per_var_g.record(g.d11 > 0.0 && g.d22 > 0.0, || format!("g at ({x}, {y}): {g:?}"));

        let h = hessian_zeta0(p, &link, &config)?;
        ideal.record(
            h.h11 < 0.0 && h.det.abs() <= DEFINITENESS_TOL * det_scale(h.matrix()),
            || format!("ideal Hessian at ({x}, {y}): {h:?}"),
        );

        let nan = Partials {
            value: f64::NAN,
            d1: f64::NAN,
            d2: f64::NAN,
            d11: f64::NAN,
            d12: f64::NAN,
            d22: f64::NAN,
        };
        let fe = |a: f64, b: f64| f_partials(PowerAllocation::new(a, b), &link, &config).unwrap_or(nan);
        let ge = |a: f64, b: f64| g_partials(SqrtPower::new(a, b), &link, &config).unwrap_or(nan);
        let frozen = ConvexifiedConstraint::at(p, &link, &config);
        let qe = |a: f64, b: f64| {
            let at = SqrtPower::new(a, b);
            Partials {
                value: convexified_interference(at, &link, &frozen),
                d1: frozen.d_ps(at, &link),
                d2: frozen.d_pr(at, &link),
                d11: frozen.d2_ps(&link),
                d12: frozen.d2_ps_pr(&link),
                d22: frozen.d2_pr(),
            }
        };
        calculus.record(
            partials_agree(fe, x, y) && partials_agree(ge, x, y) && partials_agree(qe, x, y),
            || format!("at ({x}, {y}): f {:?}, g {:?}, Q {:?}", fe(x, y), ge(x, y), qe(x, y)),
        );

        let exact = hessian_noncoh(p, &link, &config)?.matrix();
        let fd = numeric::hessian(|a, b| recip_f(&link, &config, a, b), x, y);
        fd_f.record(hessians_agree(exact, fd), || format!("at ({x}, {y}): {exact:?} vs {fd:?}"));
        let exact = hessian_coh(q, &link, &config)?.matrix();
        let fd = numeric::hessian(|a, b| recip_f(&link, &config, a * a, b * b), x, y);
        fd_g.record(hessians_agree(exact, fd), || format!("at ({x}, {y}): {exact:?} vs {fd:?}"));

        let t = threshold_ps(&link, &config, y)?;
        let root = sc1_root_exact(&link, &config, y)?;
        if x < t.p_s2 || x > root {
            let a = sc1(p, &link, &config)?;
            let b = sc1_exact(p, &link, &config)?;
            sc1_sign.record(a.signum() == b.signum(), || format!("at ({x}, {y}): {a} vs {b}"));
        }

        let dec = decompose(p, &link, &config);
        let best = optimal_phase(&dec);
        let direct = (dec.a.norm() - dec.b.norm()).powi(2);
        let off = dec.interference_at(rng.random::<f64>() * std::f64::consts::TAU);
        let tol = 1e-9 * dec.interference_max().max(1e-300);
        phase.record(
            (best.i_coh - direct).abs() <= tol && best.i_coh <= off + tol,
            || format!("at ({x}, {y}): {} vs {direct}, off {off}", best.i_coh),
        );
    }

    let mut w1 = Tally::new("noncoherent nonconvexity witness");
    let mut w4 = Tally::new("coherent nonconvexity witness");
    for d in 0..settings.draws {
        let link = sample_channels(&config, settings.seed.wrapping_add(1_000_000 + d as u64)).link(0);
        let p_r = log_uniform(&mut rng, lo, hi);
        let (pt, h) = sc1_witness(&link, &config, p_r)?;
        let fd = numeric::hessian(|a, b| recip_f(&link, &config, a, b), pt.p_s, pt.p_r);
        let fd_det = fd[0][0] * fd[1][1] - fd[0][1] * fd[1][0];
        w1.record(h.definiteness == Definiteness::Indefinite && fd_det < 0.0, || {
            format!("at {pt:?}: {h:?}, numeric det {fd_det}")
        });
        match sc2_witness(&link, &config) {
            Ok((pt, det)) => {
                let fd = numeric::hessian(|a, b| recip_f(&link, &config, a * a, b * b), pt.p_s, pt.p_r);
                let fd_det = fd[0][0] * fd[1][1] - fd[0][1] * fd[1][0];
                w4.record(det < 0.0 && fd_det < 0.0, || format!("at {pt:?}: det {det}, numeric {fd_det}"));
            }
            Err(e) => w4.record(false, || e.to_string()),
        }
    }

    Ok([per_var_f, per_var_g, ideal, calculus, fd_f, fd_g, sc1_sign, phase, w1, w4]
        .into_iter()
        .map(Tally::finish)
        .collect())
}

fn recip_f(link: &Link, config: &NetworkConfig, p_s: f64, p_r: f64) -> f64 {
    1.0 / f_partials(PowerAllocation::new(p_s, p_r), link, config).map_or(f64::NAN, |p| p.value)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suite_passes() {
        let config = NetworkConfig {
            zeta: 0.01,
            ..NetworkConfig::default()
        };
        let settings = SuiteSettings {
            points: 300,
            draws: 20,
            ..SuiteSettings::default()
        };
        for c in run_lemma_suite(&config, settings).unwrap() {
            assert!(c.passed(), "{}: {} of {} failed; {}", c.name, c.failures, c.checked, c.detail);
        }
    }

    #[test]
    fn zero_zeta_is_rejected() {
        let config = NetworkConfig {
            zeta: 0.0,
            ..NetworkConfig::default()
        };
        assert!(run_lemma_suite(&config, SuiteSettings::default()).is_err());
    }
}
