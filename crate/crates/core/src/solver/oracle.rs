use crate::error::{Error, Result};
use crate::model::{rate_exact, ChannelRealization, NetworkConfig, PowerAllocation};
use crate::phase::phase_solution;
use crate::solver::{RelayResult, Scenario};

/// Exhaustive search over a `grid_n x grid_n` lattice of the power box
/// (linear, endpoints included). Infeasible points are skipped; the first
/// best point in source-major order wins. Returns the origin when no point
/// other than it is feasible.
pub fn brute_force(
    channels: &ChannelRealization,
    k: usize,
    config: &NetworkConfig,
    scenario: Scenario,
    grid_n: usize,
) -> Result<RelayResult> {
    if grid_n < 2 {
        return Err(Error::InvalidConfig("grid_n must be >= 2".into()));
    }
    if k >= channels.num_relays() {
        return Err(Error::InvalidConfig(format!("relay index {k} out of range")));
    }
    let link = channels.link(k);
    let (rate_config, scale) = match scenario {
        Scenario::HalfDuplex => (
            NetworkConfig {
                zeta: 0.0,
                ..config.clone()
            },
            0.5,
        ),
        _ => (config.clone(), 1.0),
    };
    let step_s = config.p_s_max / (grid_n - 1) as f64;
    let step_r = config.p_r_max / (grid_n - 1) as f64;
    let at = |i: usize, step: f64, max: f64| if i == grid_n - 1 { max } else { step * i as f64 };

    let mut best = PowerAllocation::ZERO;
    let mut best_rate = f64::NEG_INFINITY;
    for i in 0..grid_n {
        let p_s = at(i, step_s, config.p_s_max);
        for j in 0..grid_n {
            let alloc = PowerAllocation::new(p_s, at(j, step_r, config.p_r_max));
            if scenario.interference(alloc, channels, k, config) > config.i_bar_p {
                continue;
            }
            let rate = scale * rate_exact(alloc, &link, &rate_config);
            if rate > best_rate {
                best = alloc;
                best_rate = rate;
            }
        }
    }
    let rate = best_rate.max(0.0);
    Ok(RelayResult {
        relay: k,
        allocation: best,
        rate,
        objective: rate,
        surrogate: None,
        iterations: 0,
        converged: true,
        feasible: true,
        trace: vec![(0, rate)],
        phase: (scenario == Scenario::Coherent).then(|| phase_solution(best, &link, config)),
    })
}
