//! Network parameters, channel draws and the closed-form rate and
//! non-coherent interference expressions for one source, `K` full-duplex
//! amplify-and-forward relays, one destination and one primary receiver.
//!
//! All quantities are linear (not dB). Channel gains `|h|^2` enter every
//! expression; the complex coefficients themselves only matter for the
//! coherent interference in [`crate::phase`].

use num_complex::Complex64;
use rand::distr::Uniform;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

pub fn linear_to_db(x: f64) -> f64 {
    10.0 * x.log10()
}

/// Closed interval `[lo, hi]` of channel variances.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VarianceRange {
    pub lo: f64,
    pub hi: f64,
}

impl VarianceRange {
    pub fn new(lo: f64, hi: f64) -> Self {
        Self { lo, hi }
    }

    pub fn fixed(v: f64) -> Self {
        Self { lo: v, hi: v }
    }
}

/// Scalar parameters of the network. Every field is linear.
#[derive(Debug, Clone, PartialEq)]
pub struct NetworkConfig {
    pub num_relays: usize,
    /// Residual self-interference fraction after cancellation.
    pub zeta: f64,
    pub sigma2_relay: f64,
    pub sigma2_dest: f64,
    /// Stored for completeness; the interference constraint has no noise term.
    pub sigma2_pu: f64,
    pub var_sr: f64,
    pub var_rd: f64,
    pub var_sd: f64,
    /// Self-interference channel variance.
    pub var_rr: f64,
    pub var_sp_range: VarianceRange,
    pub var_rp_range: VarianceRange,
    pub p_s_max: f64,
    pub p_r_max: f64,
    pub i_bar_p: f64,
    /// Sampling frequency in Hz; converts the forwarding phase to a delay.
    pub sampling_freq: f64,
}

impl Default for NetworkConfig {
    /// Eight relays, unit noise and unit Rayleigh links, `sigma_SD = 0.1`,
    /// primary-receiver link variances in `[0.8, 1]`, `P_max = 20 dB`,
    /// `I_bar = 8 dB`, `zeta = 0.001`.
    fn default() -> Self {
        Self {
            num_relays: 8,
            zeta: 0.001,
            sigma2_relay: 1.0,
            sigma2_dest: 1.0,
            sigma2_pu: 1.0,
            var_sr: 1.0,
            var_rd: 1.0,
            var_sd: 0.1,
            var_rr: 1.0,
            var_sp_range: VarianceRange::new(0.8, 1.0),
            var_rp_range: VarianceRange::new(0.8, 1.0),
            p_s_max: db_to_linear(20.0),
            p_r_max: db_to_linear(20.0),
            i_bar_p: db_to_linear(8.0),
            sampling_freq: 1.0e6,
        }
    }
}

impl NetworkConfig {
    pub fn validate(&self) -> Result<()> {
        fn positive(name: &str, v: f64) -> Result<()> {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(Error::InvalidConfig(format!("{name} must be finite and > 0, got {v}")))
            }
        }
        if self.num_relays == 0 {
            return Err(Error::InvalidConfig("num_relays must be at least 1".into()));
        }
        if !(self.zeta.is_finite() && self.zeta >= 0.0) {
            return Err(Error::InvalidConfig(format!("zeta must be >= 0, got {}", self.zeta)));
        }
        if !(self.i_bar_p.is_finite() && self.i_bar_p >= 0.0) {
            return Err(Error::InvalidConfig(format!(
                "i_bar_p must be >= 0, got {}",
                self.i_bar_p
            )));
        }
        positive("sigma2_relay", self.sigma2_relay)?;
        positive("sigma2_dest", self.sigma2_dest)?;
        positive("sigma2_pu", self.sigma2_pu)?;
        positive("var_sr", self.var_sr)?;
        positive("var_rd", self.var_rd)?;
        positive("var_sd", self.var_sd)?;
        positive("var_rr", self.var_rr)?;
        positive("p_s_max", self.p_s_max)?;
        positive("p_r_max", self.p_r_max)?;
        positive("sampling_freq", self.sampling_freq)?;
        for (name, r) in [("var_sp_range", self.var_sp_range), ("var_rp_range", self.var_rp_range)] {
            positive(name, r.lo)?;
            positive(name, r.hi)?;
            if r.lo > r.hi {
                return Err(Error::InvalidConfig(format!("{name}: lo {} > hi {}", r.lo, r.hi)));
            }
        }
        Ok(())
    }
}

/// Coefficients of the links that involve one relay, plus the two shared
/// source links. Cheap to copy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Link {
    pub h_sr: Complex64,
    pub h_rd: Complex64,
    pub h_rp: Complex64,
    pub h_rr: Complex64,
    pub h_sp: Complex64,
}

impl Link {
    pub fn g_sr(&self) -> f64 {
        self.h_sr.norm_sqr()
    }
    pub fn g_rd(&self) -> f64 {
        self.h_rd.norm_sqr()
    }
    pub fn g_rp(&self) -> f64 {
        self.h_rp.norm_sqr()
    }
    pub fn g_rr(&self) -> f64 {
        self.h_rr.norm_sqr()
    }
    pub fn g_sp(&self) -> f64 {
        self.h_sp.norm_sqr()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelayLinks {
    pub h_sr: Complex64,
    pub h_rd: Complex64,
    pub h_rp: Complex64,
    pub h_rr: Complex64,
    /// Variance the relay-to-primary coefficient was drawn with.
    pub var_rp: f64,
}

/// One draw of every channel coefficient in the network.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelRealization {
    pub seed: u64,
    pub h_sp: Complex64,
    /// Direct source-to-destination link. Sampled but never used by the
    /// rate or interference expressions.
    pub h_sd: Complex64,
    pub var_sp: f64,
    pub relays: Vec<RelayLinks>,
}

impl ChannelRealization {
    pub fn num_relays(&self) -> usize {
        self.relays.len()
    }

    /// Links seen through relay `k`. Panics if `k` is out of range.
    pub fn link(&self, k: usize) -> Link {
        let r = &self.relays[k];
        Link {
            h_sr: r.h_sr,
            h_rd: r.h_rd,
            h_rp: r.h_rp,
            h_rr: r.h_rr,
            h_sp: self.h_sp,
        }
    }

    pub fn links(&self) -> impl Iterator<Item = Link> + '_ {
        (0..self.relays.len()).map(move |k| self.link(k))
    }

    /// 64-bit FNV-1a digest of every coefficient, for auditing that two
    /// results were computed on the same draw.
    pub fn digest(&self) -> u64 {
        const OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
        const PRIME: u64 = 0x0000_0100_0000_01b3;
        let mut h = OFFSET;
        let mut eat = |x: f64| {
            for b in x.to_bits().to_le_bytes() {
                h ^= u64::from(b);
                h = h.wrapping_mul(PRIME);
            }
        };
        for c in [self.h_sp, self.h_sd] {
            eat(c.re);
            eat(c.im);
        }
        for r in &self.relays {
            for c in [r.h_sr, r.h_rd, r.h_rp, r.h_rr] {
                eat(c.re);
                eat(c.im);
            }
        }
        h
    }
}

fn complex_gaussian<R: Rng>(rng: &mut R, variance: f64) -> Complex64 {
    let s = (variance / 2.0).sqrt();
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(s * re, s * im)
}

fn variance_in<R: Rng>(rng: &mut R, range: VarianceRange) -> f64 {
    if range.lo == range.hi {
        return range.lo;
    }
    rng.sample(Uniform::new_inclusive(range.lo, range.hi).expect("validated range"))
}

/// Draws Rayleigh-fading coefficients (circularly-symmetric complex
/// Gaussian) for every link. The primary-receiver link variances are first
/// drawn uniformly from their configured intervals: once for the source,
/// once per relay. Deterministic in `(config, seed)`.
pub fn sample_channels(config: &NetworkConfig, seed: u64) -> ChannelRealization {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let var_sp = variance_in(&mut rng, config.var_sp_range);
    let h_sp = complex_gaussian(&mut rng, var_sp);
    let h_sd = complex_gaussian(&mut rng, config.var_sd);
    let relays = (0..config.num_relays)
        .map(|_| {
            let var_rp = variance_in(&mut rng, config.var_rp_range);
            RelayLinks {
                h_sr: complex_gaussian(&mut rng, config.var_sr),
                h_rd: complex_gaussian(&mut rng, config.var_rd),
                h_rp: complex_gaussian(&mut rng, var_rp),
                h_rr: complex_gaussian(&mut rng, config.var_rr),
                var_rp,
            }
        })
        .collect();
    ChannelRealization {
        seed,
        h_sp,
        h_sd,
        var_sp,
        relays,
    }
}

/// Linear transmit powers of the source and the relay.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PowerAllocation {
    pub p_s: f64,
    pub p_r: f64,
}

impl PowerAllocation {
    pub const ZERO: PowerAllocation = PowerAllocation { p_s: 0.0, p_r: 0.0 };

    pub fn new(p_s: f64, p_r: f64) -> Self {
        Self { p_s, p_r }
    }

    pub fn within_box(&self, config: &NetworkConfig) -> bool {
        (0.0..=config.p_s_max).contains(&self.p_s) && (0.0..=config.p_r_max).contains(&self.p_r)
    }
}

/// Amplitudes `(sqrt(P_S), sqrt(P_R))`, the variables of the coherent problem.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SqrtPower {
    pub p_s: f64,
    pub p_r: f64,
}

impl SqrtPower {
    pub fn new(p_s: f64, p_r: f64) -> Self {
        Self { p_s, p_r }
    }

    pub fn to_power(self) -> PowerAllocation {
        PowerAllocation::new(self.p_s * self.p_s, self.p_r * self.p_r)
    }
}

impl From<PowerAllocation> for SqrtPower {
    fn from(a: PowerAllocation) -> Self {
        SqrtPower::new(a.p_s.sqrt(), a.p_r.sqrt())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedQuantities {
    /// `|h_RR|^2 * zeta`.
    pub zeta_hat: f64,
    /// Amplify-and-forward gain `G_k`.
    pub gain: f64,
}

pub fn zeta_hat(link: &Link, config: &NetworkConfig) -> f64 {
    link.g_rr() * config.zeta
}

pub fn derived(alloc: PowerAllocation, link: &Link, config: &NetworkConfig) -> DerivedQuantities {
    DerivedQuantities {
        zeta_hat: zeta_hat(link, config),
        gain: relay_gain(alloc, link, config),
    }
}

/// `G_k = [P_S |h_SR|^2 + zeta P_R |h_RR|^2 + sigma_R^2]^(-1/2)`.
pub fn relay_gain(alloc: PowerAllocation, link: &Link, config: &NetworkConfig) -> f64 {
    gain_inv_sq(alloc, link, config).sqrt().recip()
}

/// `G_k^(-2)`, the relay's total received power after cancellation.
pub fn gain_inv_sq(alloc: PowerAllocation, link: &Link, config: &NetworkConfig) -> f64 {
    alloc.p_s * link.g_sr() + config.zeta * alloc.p_r * link.g_rr() + config.sigma2_relay
}

/// End-to-end SINR inside the logarithm of the achievable rate.
pub fn sinr_exact(alloc: PowerAllocation, link: &Link, config: &NetworkConfig) -> f64 {
    let zh = zeta_hat(link, config);
    let hop1 = alloc.p_s * link.g_sr() / (zh * alloc.p_r + config.sigma2_relay);
    let hop2 = alloc.p_r * link.g_rd() / config.sigma2_dest;
    hop1 * hop2 / (1.0 + hop1 + hop2)
}

/// Achievable rate in bits/s/Hz of the link through relay `k`. The direct
/// source-to-destination path is ignored.
pub fn rate_exact(alloc: PowerAllocation, link: &Link, config: &NetworkConfig) -> f64 {
    sinr_exact(alloc, link, config).ln_1p() / std::f64::consts::LN_2
}

/// Converts an SINR into bits/s/Hz.
pub fn rate_from_sinr(sinr: f64) -> f64 {
    sinr.ln_1p() / std::f64::consts::LN_2
}

/// High-interference approximation of the SINR used by the non-coherent
/// problem: the relay noise is dropped next to the residual
/// self-interference. Written as `K / f` with
/// `f = 1/P_S + P_R |h_RD|^2 / (P_S sigma_D^2) + |h_SR|^2 / (zeta_hat P_R)`,
/// and extended by its limit 0 on the axes.
pub fn rate_noncoh_obj(alloc: PowerAllocation, link: &Link, config: &NetworkConfig, relay: usize) -> Result<f64> {
    let zh = zeta_hat(link, config);
    if zh == 0.0 {
        return Err(Error::ZetaHatZero { relay });
    }
    Ok(surrogate_value(alloc.p_s, alloc.p_r, link.g_sr(), link.g_rd(), zh, config.sigma2_dest))
}

pub(crate) fn surrogate_value(p_s: f64, p_r: f64, g_sr: f64, g_rd: f64, zh: f64, s2d: f64) -> f64 {
    if p_s <= 0.0 || p_r <= 0.0 {
        return 0.0;
    }
    let scale = g_rd * g_sr / (s2d * zh);
    let f = 1.0 / p_s + p_r * g_rd / (p_s * s2d) + g_sr / (zh * p_r);
    scale / f
}

/// The coherent problem's objective in amplitude variables. Identical in
/// value to [`rate_noncoh_obj`] at `(p_S^2, p_R^2)`.
pub fn rate_coh_obj(p: SqrtPower, link: &Link, config: &NetworkConfig, relay: usize) -> Result<f64> {
    rate_noncoh_obj(p.to_power(), link, config, relay)
}

/// High-SNR objective for ideal cancellation (`zeta_hat = 0`):
/// `g1 g2 / (g1 + g2)` with `g1 = P_S|h_SR|^2/sigma_R^2`, `g2 = P_R|h_RD|^2/sigma_D^2`.
pub fn rate_high_snr_ideal(alloc: PowerAllocation, link: &Link, config: &NetworkConfig) -> f64 {
    let g1 = alloc.p_s * link.g_sr() / config.sigma2_relay;
    let g2 = alloc.p_r * link.g_rd() / config.sigma2_dest;
    if g1 <= 0.0 || g2 <= 0.0 {
        return 0.0;
    }
    g1 * g2 / (g1 + g2)
}

/// Aggregate interference at the primary receiver when the two SU
/// transmissions add in power: `|h_SP|^2 P_S + |h_RP|^2 P_R (1 + zeta)`.
pub fn interference_noncoh(alloc: PowerAllocation, link: &Link, config: &NetworkConfig) -> f64 {
    link.g_sp() * alloc.p_s + link.g_rp() * alloc.p_r * (1.0 + config.zeta)
}

/// The same interference before the gain bracket is collapsed: source term,
/// relay distortion term and the amplified relay signal.
pub fn interference_noncoh_expanded(alloc: PowerAllocation, link: &Link, config: &NetworkConfig) -> f64 {
    let g2 = relay_gain(alloc, link, config).powi(2);
    link.g_sp() * alloc.p_s
        + link.g_rp() * config.zeta * alloc.p_r
        + g2 * link.g_rp()
            * alloc.p_r
            * (link.g_sr() * alloc.p_s + link.g_rr() * config.zeta * alloc.p_r + config.sigma2_relay)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_link() -> Link {
        let one = Complex64::new(1.0, 0.0);
        Link {
            h_sr: one,
            h_rd: one,
            h_rp: one,
            h_rr: one,
            h_sp: one,
        }
    }

    fn unit_config() -> NetworkConfig {
        NetworkConfig {
            zeta: 0.0,
            ..NetworkConfig::default()
        }
    }

    #[test]
    fn gain_with_no_power_is_noise_only() {
        let g = relay_gain(PowerAllocation::ZERO, &unit_link(), &unit_config());
        assert_eq!(g, 1.0);
    }

    #[test]
    fn gain_three_plus_one() {
        let g = relay_gain(PowerAllocation::new(3.0, 7.0), &unit_link(), &unit_config());
        assert!((g - 0.5).abs() < 1e-15);
    }

    #[test]
    fn rate_vanishes_on_axes() {
        let cfg = NetworkConfig::default();
        let l = unit_link();
        assert_eq!(rate_exact(PowerAllocation::new(0.0, 5.0), &l, &cfg), 0.0);
        assert_eq!(rate_exact(PowerAllocation::new(5.0, 0.0), &l, &cfg), 0.0);
    }

    #[test]
    fn rate_unit_channels() {
        let r = rate_exact(PowerAllocation::new(10.0, 10.0), &unit_link(), &unit_config());
        let expected = (1.0 + 100.0 / 21.0f64).log2();
        assert!((r - expected).abs() < 1e-14);
    }

    #[test]
    fn surrogate_unit_case() {
        let cfg = NetworkConfig {
            zeta: 1.0,
            ..NetworkConfig::default()
        };
        let v = rate_noncoh_obj(PowerAllocation::new(1.0, 1.0), &unit_link(), &cfg, 0).unwrap();
        assert!((v - 1.0 / 3.0).abs() < 1e-15);
        let v0 = rate_noncoh_obj(PowerAllocation::new(0.0, 1.0), &unit_link(), &cfg, 0).unwrap();
        assert_eq!(v0, 0.0);
    }

    #[test]
    fn surrogate_rejects_ideal_cancellation() {
        let err = rate_noncoh_obj(PowerAllocation::new(1.0, 1.0), &unit_link(), &unit_config(), 3);
        assert!(matches!(err, Err(Error::ZetaHatZero { relay: 3 })));
        let err = rate_coh_obj(SqrtPower::new(1.0, 1.0), &unit_link(), &unit_config(), 0);
        assert!(matches!(err, Err(Error::ZetaHatZero { .. })));
    }

    #[test]
    fn coherent_objective_at_unit_amplitudes() {
        let cfg = NetworkConfig {
            zeta: 0.3,
            ..NetworkConfig::default()
        };
        let l = unit_link();
        let a = rate_coh_obj(SqrtPower::new(1.0, 1.0), &l, &cfg, 0).unwrap();
        let b = rate_noncoh_obj(PowerAllocation::new(1.0, 1.0), &l, &cfg, 0).unwrap();
        assert!((a - b).abs() < 1e-12);
        assert_eq!(rate_coh_obj(SqrtPower::new(0.0, 1.0), &l, &cfg, 0).unwrap(), 0.0);
    }

    #[test]
    fn surrogate_tracks_exact_rate_when_self_interference_dominates() {
        let l = unit_link();
        let mut prev = f64::INFINITY;
        for s2 in [1e-1, 1e-3, 1e-5, 1e-7] {
            let cfg = NetworkConfig {
                zeta: 1.0,
                sigma2_relay: s2,
                ..NetworkConfig::default()
            };
            let a = PowerAllocation::new(4.0, 2.0);
            let approx = rate_from_sinr(rate_noncoh_obj(a, &l, &cfg, 0).unwrap());
            let diff = (approx - rate_exact(a, &l, &cfg)).abs();
            assert!(diff < prev);
            prev = diff;
        }
        assert!(prev < 1e-6);
    }

    #[test]
    fn noncoherent_interference_cases() {
        let cfg = unit_config();
        let mut l = unit_link();
        assert_eq!(interference_noncoh(PowerAllocation::ZERO, &l, &cfg), 0.0);
        l.h_sp = Complex64::new(2f64.sqrt(), 0.0);
        l.h_rp = Complex64::new(0.0, 3f64.sqrt());
        let i = interference_noncoh(PowerAllocation::new(1.0, 1.0), &l, &cfg);
        assert!((i - 5.0).abs() < 1e-12);
    }

    #[test]
    fn sampling_is_deterministic() {
        let cfg = NetworkConfig::default();
        let a = sample_channels(&cfg, 42);
        let b = sample_channels(&cfg, 42);
        assert_eq!(a, b);
        assert_eq!(a.digest(), b.digest());
        assert_ne!(a.digest(), sample_channels(&cfg, 43).digest());
        assert_eq!(a.num_relays(), cfg.num_relays);
    }

    #[test]
    fn primary_link_variances_stay_in_range() {
        let cfg = NetworkConfig::default();
        for seed in 0..200 {
            let ch = sample_channels(&cfg, seed);
            assert!((0.8..=1.0).contains(&ch.var_sp));
            assert!(ch.relays.iter().all(|r| (0.8..=1.0).contains(&r.var_rp)));
        }
    }

    #[test]
    fn validation_rejects_bad_fields() {
        let mut cfg = NetworkConfig::default();
        assert!(cfg.validate().is_ok());
        cfg.var_sp_range = VarianceRange::new(1.0, 0.8);
        assert!(cfg.validate().is_err());
        let cfg = NetworkConfig {
            sigma2_relay: 0.0,
            ..NetworkConfig::default()
        };
        assert!(cfg.validate().is_err());
        let cfg = NetworkConfig {
            num_relays: 0,
            ..NetworkConfig::default()
        };
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn db_round_trip() {
        assert!((db_to_linear(20.0) - 100.0).abs() < 1e-12);
        assert!((linear_to_db(db_to_linear(7.3)) - 7.3).abs() < 1e-12);
    }
}
