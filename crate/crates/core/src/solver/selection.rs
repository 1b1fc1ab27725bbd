use crate::error::{Error, Result};
use crate::solver::{RelayResult, SolveResult};

/// Picks the relay with the highest rate; ties go to the lowest index.
pub fn select_relay(relays: Vec<RelayResult>) -> Result<SolveResult> {
    if relays.is_empty() {
        return Err(Error::InvalidConfig("no relays to select from".into()));
    }
    let mut selected = 0;
    for (i, r) in relays.iter().enumerate().skip(1) {
        if r.rate > relays[selected].rate {
            selected = i;
        }
    }
    Ok(SolveResult { relays, selected })
}
