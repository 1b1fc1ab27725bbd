use crate::error::Result;
use crate::model::{ChannelRealization, NetworkConfig};
use crate::solver::alternating::{check_inputs, finish, run_alternation, HalfDuplex};
use crate::solver::{RelayResult, Scenario, SolverOptions};

/// Half-duplex comparator for relay `k`: the source transmits in one slot
/// and the relay in the next, so there is no self-interference, the rate
/// carries a factor 1/2, and the interference cap applies to each slot on
/// its own. Powers are found by the same alternating solver.
pub fn hd_baseline(
    channels: &ChannelRealization,
    k: usize,
    config: &NetworkConfig,
    opts: &SolverOptions,
) -> Result<RelayResult> {
    let link = check_inputs(channels, k, config, opts)?;
    if config.i_bar_p == 0.0 {
        return Ok(RelayResult::silent(k));
    }
    let land = HalfDuplex {
        link,
        config: NetworkConfig {
            zeta: 0.0,
            ..config.clone()
        },
    };
    let out = run_alternation(&land, opts, false);
    Ok(finish(&land, out, k, &link, config, Scenario::HalfDuplex, 0.5))
}
