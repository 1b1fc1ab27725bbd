//! Power control per relay and relay selection.
//!
//! Each relay's problem is a two-variable maximization over the power box
//! under an interference cap. It is not jointly concave, but it is concave
//! in each variable separately, so it is solved by alternating exact 1-D
//! maximizations. [`brute_force`] is the lattice oracle used to validate it.

mod alternating;
mod baseline;
mod feasible;
mod golden;
mod oracle;
mod selection;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

pub use alternating::{alternate_optimize, solve_zeta_zero};
pub use baseline::hd_baseline;
pub use feasible::{
    coherent_components_pr, convexified_interval_pr, feasible_components, feasible_interval_pr, Interval,
};
pub use golden::{scan_then_golden, solve_1d_convex};
pub use oracle::brute_force;
pub use selection::select_relay;

use crate::error::{Error, Result};
use crate::model::{interference_noncoh, ChannelRealization, NetworkConfig, PowerAllocation};
use crate::phase::{interference_coh, PhaseSolution};

/// How the relay's and source's signals combine at the primary receiver.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scenario {
    /// Powers add; no phase control.
    Noncoherent,
    /// The relay picks its forwarding phase to cancel the source's interference.
    Coherent,
    /// Two-slot half-duplex relaying, used as a comparator.
    HalfDuplex,
}

impl Scenario {
    pub const ALL: [Scenario; 3] = [Scenario::Noncoherent, Scenario::Coherent, Scenario::HalfDuplex];

    pub fn name(self) -> &'static str {
        match self {
            Scenario::Noncoherent => "noncoherent",
            Scenario::Coherent => "coherent",
            Scenario::HalfDuplex => "hd-baseline",
        }
    }

    /// Interference the scenario's constraint limits. For half-duplex this
    /// is the larger of the two slots.
    pub fn interference(
        self,
        alloc: PowerAllocation,
        channels: &ChannelRealization,
        k: usize,
        config: &NetworkConfig,
    ) -> f64 {
        let link = channels.link(k);
        match self {
            Scenario::Noncoherent => interference_noncoh(alloc, &link, config),
            Scenario::Coherent => interference_coh(alloc, &link, config),
            Scenario::HalfDuplex => (link.g_sp() * alloc.p_s).max(link.g_rp() * alloc.p_r),
        }
    }

    /// Box constraints hold exactly and the interference cap within `1e-9`.
    pub fn is_feasible(
        self,
        alloc: PowerAllocation,
        channels: &ChannelRealization,
        k: usize,
        config: &NetworkConfig,
    ) -> bool {
        alloc.within_box(config) && self.interference(alloc, channels, k, config) <= config.i_bar_p + 1e-9
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scenario {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "noncoherent" | "non-coherent" => Ok(Scenario::Noncoherent),
            "coherent" => Ok(Scenario::Coherent),
            "hd-baseline" | "hd" | "half-duplex" => Ok(Scenario::HalfDuplex),
            other => Err(Error::InvalidExperiment(format!("unknown scenario `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InitStrategy {
    /// The max-power corner, pulled back along the ray to the origin until feasible.
    MaxPowerScaled,
    /// Half of each cap, pulled back the same way if needed.
    Midpoint,
    /// A given point, pulled back the same way if needed.
    Custom(PowerAllocation),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxisOrder {
    RelayFirst,
    SourceFirst,
}

/// Function maximized by the alternating solver.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Objective {
    /// The exact achievable rate.
    ExactSinr,
    /// The high-interference approximation that drops the relay noise
    /// (ideal cancellation switches to the high-SNR form).
    Surrogate,
}

/// How the coherent constraint shapes each 1-D subproblem.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstraintModel {
    /// Feasible sets along each axis are computed from the exact interference.
    Exact,
    /// Feasible intervals come from the quadratic model with the phase
    /// frozen at the incumbent; the exact constraint is then restored by
    /// bisection toward the incumbent.
    Convexified,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverOptions {
    pub max_outer_iters: usize,
    /// Relative objective improvement below which the alternation stops.
    pub obj_tol: f64,
    /// 1-D search tolerance, relative to `max(1, interval end)`.
    pub var_tol: f64,
    /// Oracle lattice points per axis.
    pub grid_n: usize,
    pub init: InitStrategy,
    pub order: AxisOrder,
    pub objective: Objective,
    pub constraint_model: ConstraintModel,
    /// After each first-axis step, also move along the active interference
    /// boundary. Without this the alternation can stall on the constraint.
    pub ride_constraint: bool,
    /// Samples per axis when locating feasible components of the coherent constraint.
    pub scan_points: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            max_outer_iters: 50,
            obj_tol: 1e-6,
            var_tol: 1e-9,
            grid_n: 201,
            init: InitStrategy::MaxPowerScaled,
            order: AxisOrder::RelayFirst,
            objective: Objective::ExactSinr,
            constraint_model: ConstraintModel::Exact,
            ride_constraint: true,
            scan_points: 64,
        }
    }
}

impl SolverOptions {
    pub fn validate(&self) -> Result<()> {
        if self.max_outer_iters == 0 {
            return Err(Error::InvalidConfig("max_outer_iters must be >= 1".into()));
        }
        if !(self.obj_tol > 0.0 && self.var_tol > 0.0) {
            return Err(Error::InvalidConfig("tolerances must be > 0".into()));
        }
        if self.grid_n < 2 {
            return Err(Error::InvalidConfig("grid_n must be >= 2".into()));
        }
        if self.scan_points < 2 {
            return Err(Error::InvalidConfig("scan_points must be >= 2".into()));
        }
        Ok(())
    }
}

/// Outcome for one relay.
#[derive(Debug, Clone, PartialEq)]
pub struct RelayResult {
    pub relay: usize,
    pub allocation: PowerAllocation,
    /// Achievable rate at `allocation` (bits/s/Hz), whatever was optimized.
    pub rate: f64,
    /// Final value of the optimized objective.
    pub objective: f64,
    /// The high-interference surrogate at `allocation`, when defined.
    pub surrogate: Option<f64>,
    pub iterations: usize,
    pub converged: bool,
    pub feasible: bool,
    /// `(outer iteration, objective)`, starting with the initial point.
    pub trace: Vec<(usize, f64)>,
    /// Forwarding phase, coherent scenario only.
    pub phase: Option<PhaseSolution>,
}

impl RelayResult {
    pub(crate) fn silent(relay: usize) -> Self {
        Self {
            relay,
            allocation: PowerAllocation::ZERO,
            rate: 0.0,
            objective: 0.0,
            surrogate: None,
            iterations: 0,
            converged: true,
            feasible: true,
            trace: vec![(0, 0.0)],
            phase: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveResult {
    pub relays: Vec<RelayResult>,
    pub selected: usize,
}

impl SolveResult {
    pub fn best(&self) -> &RelayResult {
        &self.relays[self.selected]
    }

    pub fn rate(&self) -> f64 {
        self.best().rate
    }
}

/// Solves one relay's power control, routing ideal cancellation and the
/// half-duplex comparator to their dedicated solvers.
pub fn solve_relay(
    channels: &ChannelRealization,
    k: usize,
    config: &NetworkConfig,
    scenario: Scenario,
    opts: &SolverOptions,
) -> Result<RelayResult> {
    match scenario {
        Scenario::HalfDuplex => hd_baseline(channels, k, config, opts),
        _ => match alternate_optimize(channels, k, config, scenario, opts) {
            Err(Error::ZetaHatZero { .. }) => solve_zeta_zero(channels, k, config, scenario, opts),
            other => other,
        },
    }
}

/// Solves every relay and selects the best one.
pub fn solve(
    channels: &ChannelRealization,
    config: &NetworkConfig,
    scenario: Scenario,
    opts: &SolverOptions,
) -> Result<SolveResult> {
    let relays = (0..channels.num_relays())
        .into_par_iter()
        .map(|k| solve_relay(channels, k, config, scenario, opts))
        .collect::<Result<Vec<_>>>()?;
    select_relay(relays)
}

/// Oracle counterpart of [`solve`]: brute force for every relay, then selection.
pub fn solve_brute_force(
    channels: &ChannelRealization,
    config: &NetworkConfig,
    scenario: Scenario,
    grid_n: usize,
) -> Result<SolveResult> {
    let relays = (0..channels.num_relays())
        .map(|k| brute_force(channels, k, config, scenario, grid_n))
        .collect::<Result<Vec<_>>>()?;
    select_relay(relays)
}
