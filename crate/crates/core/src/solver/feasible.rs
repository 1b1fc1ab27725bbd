use crate::error::{Error, Result};
use crate::model::{ChannelRealization, NetworkConfig, PowerAllocation, SqrtPower};
use crate::phase::{interference_coh, ConvexifiedConstraint};
use crate::solver::Scenario;

/// Closed interval `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        Self { lo, hi }
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

/// Bisects between a feasible `good` and an infeasible `bad` point of a
/// 1-D constraint and returns the last feasible point.
pub(crate) fn refine_boundary<F: Fn(f64) -> f64>(slack: &F, mut good: f64, mut bad: f64) -> f64 {
    let scale = good.abs().max(bad.abs()).max(1.0);
    for _ in 0..100 {
        if (bad - good).abs() <= 1e-14 * scale {
            break;
        }
        let mid = 0.5 * (good + bad);
        if slack(mid) <= 0.0 {
            good = mid;
        } else {
            bad = mid;
        }
    }
    good
}

/// Connected pieces of `{x in [lo, hi] : slack(x) <= 0}`, located by a
/// uniform scan of `n` cells and refined by bisection. A feasible
/// `incumbent` is always covered, even if its piece falls between samples.
pub fn feasible_components<F: Fn(f64) -> f64>(
    slack: F,
    lo: f64,
    hi: f64,
    incumbent: Option<f64>,
    n: usize,
) -> Vec<Interval> {
    let n = n.max(1);
    let step = (hi - lo) / n as f64;
    let at = |i: usize| if i == n { hi } else { lo + step * i as f64 };
    let ok: Vec<bool> = (0..=n).map(|i| slack(at(i)) <= 0.0).collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i <= n {
        if !ok[i] {
            i += 1;
            continue;
        }
        let mut j = i;
        while j < n && ok[j + 1] {
            j += 1;
        }
        let left = if i == 0 { at(0) } else { refine_boundary(&slack, at(i), at(i - 1)) };
        let right = if j == n { at(n) } else { refine_boundary(&slack, at(j), at(j + 1)) };
        out.push(Interval::new(left, right));
        i = j + 1;
    }
    if let Some(x) = incumbent {
        if slack(x) <= 0.0 && !out.iter().any(|c| c.contains(x)) {
            let below = (x - step).max(lo);
            let above = (x + step).min(hi);
            let left = if slack(below) <= 0.0 { below } else { refine_boundary(&slack, x, below) };
            let right = if slack(above) <= 0.0 { above } else { refine_boundary(&slack, x, above) };
            out.push(Interval::new(left, right));
            out.sort_by(|a, b| a.lo.total_cmp(&b.lo));
        }
    }
    out
}

/// Feasible range of the relay power (linear) at a fixed source power.
///
/// Non-coherent and half-duplex constraints are linear, so the range is
/// `[0, upper]` in closed form. The coherent constraint can make the
/// feasible set in `P_R` a union of intervals; the lowest one is returned
/// (see [`coherent_components_pr`] for all of them).
pub fn feasible_interval_pr(
    p_s: f64,
    channels: &ChannelRealization,
    k: usize,
    config: &NetworkConfig,
    scenario: Scenario,
) -> Result<Interval> {
    let link = channels.link(k);
    let cap = config.i_bar_p;
    let source = link.g_sp() * p_s;
    match scenario {
        Scenario::Noncoherent | Scenario::HalfDuplex => {
            if source > cap {
                return Err(Error::Infeasible(format!(
                    "source alone causes interference {source} above the cap {cap}"
                )));
            }
            let per_unit = match scenario {
                Scenario::Noncoherent => link.g_rp() * (1.0 + config.zeta),
                _ => link.g_rp(),
            };
            let room = match scenario {
                Scenario::Noncoherent => cap - source,
                _ => cap,
            };
            let upper = if per_unit > 0.0 { room / per_unit } else { f64::INFINITY };
            Ok(Interval::new(0.0, upper.min(config.p_r_max).max(0.0)))
        }
        Scenario::Coherent => coherent_components_pr(p_s, channels, k, config, 128)
            .into_iter()
            .next()
            .ok_or_else(|| Error::Infeasible(format!("no relay power meets the cap at P_S = {p_s}"))),
    }
}

/// All feasible pieces of the relay power (linear) under the exact
/// coherent constraint at a fixed source power.
pub fn coherent_components_pr(
    p_s: f64,
    channels: &ChannelRealization,
    k: usize,
    config: &NetworkConfig,
    n: usize,
) -> Vec<Interval> {
    let link = channels.link(k);
    let cap = config.i_bar_p;
    let slack = |r: f64| interference_coh(PowerAllocation::new(p_s, r * r), &link, config) - cap;
    feasible_components(slack, 0.0, config.p_r_max.sqrt(), None, n)
        .into_iter()
        .map(|c| Interval::new(c.lo * c.lo, c.hi * c.hi))
        .collect()
}

/// Relay-power range (linear) from the frozen quadratic model, with the
/// upper end pulled back by bisection until the exact coherent constraint
/// holds there.
pub fn convexified_interval_pr(
    p_s: f64,
    channels: &ChannelRealization,
    k: usize,
    config: &NetworkConfig,
    frozen: &ConvexifiedConstraint,
) -> Result<Interval> {
    let link = channels.link(k);
    let cap = config.i_bar_p;
    let s = p_s.sqrt();
    let r_max = config.p_r_max.sqrt();
    let (lo, hi) = frozen
        .pr_interval(s, cap, &link)
        .filter(|(lo, _)| *lo <= r_max)
        .ok_or_else(|| Error::Infeasible(format!("quadratic model admits no relay power at P_S = {p_s}")))?;
    let hi = hi.min(r_max);
    let slack = |r: f64| interference_coh(SqrtPower::new(s, r).to_power(), &link, config) - cap;
    let hi = if slack(hi) <= 0.0 {
        hi
    } else if slack(lo) <= 0.0 {
        refine_boundary(&slack, lo, hi)
    } else {
        return Err(Error::Infeasible(format!(
            "exact constraint violated across the modelled range at P_S = {p_s}"
        )));
    };
    Ok(Interval::new(lo * lo, hi * hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn components_of_two_bumps() {
        // feasible where |x - 2| <= 0.5 or |x - 7| <= 1
        let slack = |x: f64| ((x - 2.0).abs() - 0.5).min((x - 7.0).abs() - 1.0);
        let c = feasible_components(slack, 0.0, 10.0, None, 50);
        assert_eq!(c.len(), 2);
        assert!((c[0].lo - 1.5).abs() < 1e-12 && (c[0].hi - 2.5).abs() < 1e-12);
        assert!((c[1].lo - 6.0).abs() < 1e-12 && (c[1].hi - 8.0).abs() < 1e-12);
    }

    #[test]
    fn narrow_component_is_kept_through_incumbent() {
        let slack = |x: f64| (x - 3.3).abs() - 0.01;
        assert!(feasible_components(slack, 0.0, 10.0, None, 10).is_empty());
        let c = feasible_components(slack, 0.0, 10.0, Some(3.3), 10);
        assert_eq!(c.len(), 1);
        assert!((c[0].lo - 3.29).abs() < 1e-12 && (c[0].hi - 3.31).abs() < 1e-12);
    }

    #[test]
    fn whole_range_feasible() {
        let c = feasible_components(|_| -1.0, 0.0, 4.0, None, 8);
        assert_eq!(c, vec![Interval::new(0.0, 4.0)]);
    }
}
