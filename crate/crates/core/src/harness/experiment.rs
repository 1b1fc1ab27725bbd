use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::analysis::{run_lemma_suite, SuiteSettings};
use crate::error::{Error, Result};
use crate::model::{db_to_linear, rate_exact, sample_channels, ChannelRealization, NetworkConfig, PowerAllocation};
use crate::solver::{select_relay, solve, solve_brute_force, solve_relay, InitStrategy, Scenario, SolverOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExperimentKind {
    /// Optimized rate against the interference cap.
    RateVsIbar,
    /// Rate along a relay-power sweep at a fixed source power.
    RateVsPr,
    /// Rate along a source-power sweep at a fixed relay power.
    RateVsPs,
    /// Optimized rate against the brute-force oracle.
    OptimalityGap,
    /// Curvature checks of the analysis module.
    LemmaSuite,
}

impl ExperimentKind {
    pub const ALL: [ExperimentKind; 5] = [
        ExperimentKind::RateVsIbar,
        ExperimentKind::RateVsPr,
        ExperimentKind::RateVsPs,
        ExperimentKind::OptimalityGap,
        ExperimentKind::LemmaSuite,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::RateVsIbar => "rate-vs-ibar",
            ExperimentKind::RateVsPr => "rate-vs-pr",
            ExperimentKind::RateVsPs => "rate-vs-ps",
            ExperimentKind::OptimalityGap => "optimality-gap",
            ExperimentKind::LemmaSuite => "lemma-suite",
        }
    }
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ExperimentKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidExperiment(format!("unknown experiment `{s}`")))
    }
}

/// What to sweep and how many channel draws to average over. All power
/// and cap values are in dB.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSpec {
    pub kind: ExperimentKind,
    pub ibar_db: Vec<f64>,
    /// Common cap on the source and relay powers.
    pub pmax_db: Vec<f64>,
    /// The power held fixed by the sweep experiments.
    pub fixed_db: Vec<f64>,
    /// The swept power of the sweep experiments.
    pub sweep_db: Vec<f64>,
    pub zetas: Vec<f64>,
    pub num_realizations: usize,
    /// Realization `r` uses channel seed `base_seed + r`.
    pub base_seed: u64,
    pub scenarios: Vec<Scenario>,
    /// Oracle lattice points per axis.
    pub oracle_grid: usize,
}

impl ExperimentSpec {
    /// Standard settings for each experiment. Sweep experiments hold the
    /// fixed power at 5 dB and sweep the other from -10 to 30 dB in 0.25 dB steps.
    pub fn preset(kind: ExperimentKind) -> Self {
        let ibar: Vec<f64> = (0..=5).map(|i| 2.0 * i as f64).collect();
        let all_zetas = vec![0.0, 0.001, 0.01, 0.4];
        let sweep: Vec<f64> = (0..=160).map(|i| -10.0 + 0.25 * i as f64).collect();
        let base = Self {
            kind,
            ibar_db: ibar.clone(),
            pmax_db: vec![10.0, 15.0, 20.0, 25.0],
            fixed_db: vec![],
            sweep_db: vec![],
            zetas: all_zetas.clone(),
            num_realizations: 200,
            base_seed: 1,
            scenarios: Scenario::ALL.to_vec(),
            oracle_grid: 201,
        };
        match kind {
            ExperimentKind::RateVsIbar => base,
            ExperimentKind::RateVsPr | ExperimentKind::RateVsPs => Self {
                ibar_db: vec![8.0],
                pmax_db: vec![20.0],
                fixed_db: vec![5.0],
                sweep_db: sweep,
                ..base
            },
            ExperimentKind::OptimalityGap => Self {
                pmax_db: vec![20.0],
                zetas: vec![0.001],
                num_realizations: 100,
                scenarios: vec![Scenario::Noncoherent, Scenario::Coherent],
                ..base
            },
            ExperimentKind::LemmaSuite => Self {
                ibar_db: vec![],
                pmax_db: vec![],
                zetas: vec![0.001, 0.01, 0.4],
                num_realizations: 100,
                scenarios: vec![],
                ..base
            },
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidExperiment(format!("{}: {m}", self.kind)));
        if self.num_realizations == 0 {
            return bad("num_realizations must be >= 1");
        }
        if self.zetas.is_empty() || self.zetas.iter().any(|z| !(z.is_finite() && *z >= 0.0)) {
            return bad("zetas must be a nonempty list of values >= 0");
        }
        let finite = |v: &[f64]| !v.is_empty() && v.iter().all(|x| x.is_finite());
        match self.kind {
            ExperimentKind::LemmaSuite => {
                if self.zetas.contains(&0.0) {
                    return bad("the curvature checks need zeta > 0");
                }
            }
            kind => {
                if self.scenarios.is_empty() {
                    return bad("scenario list is empty");
                }
                if !finite(&self.ibar_db) || !finite(&self.pmax_db) {
                    return bad("ibar and pmax lists must be nonempty and finite");
                }
                if matches!(kind, ExperimentKind::RateVsPr | ExperimentKind::RateVsPs)
                    && (!finite(&self.fixed_db) || !finite(&self.sweep_db))
                {
                    return bad("fixed and sweep lists must be nonempty and finite");
                }
                if kind == ExperimentKind::OptimalityGap && self.oracle_grid < 2 {
                    return bad("oracle_grid must be >= 2");
                }
            }
        }
        Ok(())
    }

    fn seeds(&self) -> Vec<u64> {
        (0..self.num_realizations as u64).map(|r| self.base_seed + r).collect()
    }
}

/// One output line. Cells that do not apply to an experiment are `None`.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub experiment: ExperimentKind,
    pub scenario: Option<Scenario>,
    pub zeta: f64,
    pub ibar_db: Option<f64>,
    pub pmax_db: Option<f64>,
    pub fixed_db: Option<f64>,
    pub sweep_db: Option<f64>,
    pub seed: Option<u64>,
    pub channel_digest: Option<u64>,
    pub relay: Option<usize>,
    pub rate: f64,
    pub oracle_rate: Option<f64>,
    pub gap_pct: Option<f64>,
    pub p_s: Option<f64>,
    pub p_r: Option<f64>,
    pub feasible: Option<bool>,
    pub check: Option<String>,
    pub checked: Option<usize>,
    pub failures: Option<usize>,
}

impl ResultRow {
    fn blank(experiment: ExperimentKind, zeta: f64) -> Self {
        Self {
            experiment,
            scenario: None,
            zeta,
            ibar_db: None,
            pmax_db: None,
            fixed_db: None,
            sweep_db: None,
            seed: None,
            channel_digest: None,
            relay: None,
            rate: 0.0,
            oracle_rate: None,
            gap_pct: None,
            p_s: None,
            p_r: None,
            feasible: None,
            check: None,
            checked: None,
            failures: None,
        }
    }
}

/// `100 (oracle - solved) / oracle`, or 0 when the oracle rate is 0.
pub fn gap_pct(solved: f64, oracle: f64) -> f64 {
    if oracle > 0.0 {
        100.0 * (oracle - solved) / oracle
    } else {
        0.0
    }
}

/// Runs an experiment. Rows come out sweep-major and seed-minor, in
/// nesting order `pmax, zeta, scenario, fixed, (ibar | sweep), seed`,
/// independent of how the parallel work was scheduled.
pub fn run_experiment(spec: &ExperimentSpec, config: &NetworkConfig) -> Result<Vec<ResultRow>> {
    spec.validate()?;
    config.validate()?;
    match spec.kind {
        ExperimentKind::RateVsIbar => rate_vs_ibar(spec, config),
        ExperimentKind::RateVsPr | ExperimentKind::RateVsPs => fixed_power_sweep(spec, config),
        ExperimentKind::OptimalityGap => optimality_gap(spec, config),
        ExperimentKind::LemmaSuite => lemma_suite(spec, config),
    }
}

fn cell_config(config: &NetworkConfig, pmax_db: f64, zeta: f64, ibar_db: f64) -> NetworkConfig {
    let p = db_to_linear(pmax_db);
    NetworkConfig {
        zeta,
        p_s_max: p,
        p_r_max: p,
        i_bar_p: db_to_linear(ibar_db),
        ..config.clone()
    }
}

fn solved_row(
    spec: &ExperimentSpec,
    scenario: Scenario,
    cfg: &NetworkConfig,
    ibar_db: f64,
    pmax_db: f64,
    channels: &ChannelRealization,
    best: &crate::solver::RelayResult,
) -> ResultRow {
    ResultRow {
        scenario: Some(scenario),
        ibar_db: Some(ibar_db),
        pmax_db: Some(pmax_db),
        seed: Some(channels.seed),
        channel_digest: Some(channels.digest()),
        relay: Some(best.relay),
        rate: best.rate,
        p_s: Some(best.allocation.p_s),
        p_r: Some(best.allocation.p_r),
        feasible: Some(best.feasible),
        ..ResultRow::blank(spec.kind, cfg.zeta)
    }
}

/// Reorders per-seed chains `chains[seed][i]` into `i`-major order.
fn transpose(chains: Vec<Vec<ResultRow>>) -> Vec<ResultRow> {
    let len = chains.first().map_or(0, Vec::len);
    let mut iters: Vec<_> = chains.into_iter().map(Vec::into_iter).collect();
    let mut out = Vec::with_capacity(len * iters.len());
    for _ in 0..len {
        for it in iters.iter_mut() {
            out.extend(it.next());
        }
    }
    out
}

/// The cap is walked upward per realization. Each relay keeps the better of
/// a cold solve and a solve warm-started from its previous allocation, which
/// stays feasible under the larger cap, so rates never drop as the cap grows.
fn rate_vs_ibar(spec: &ExperimentSpec, config: &NetworkConfig) -> Result<Vec<ResultRow>> {
    let mut order: Vec<(usize, f64)> = spec.ibar_db.iter().copied().enumerate().collect();
    order.sort_by(|a, b| a.1.total_cmp(&b.1));
    let seeds = spec.seeds();
    let mut rows = Vec::new();
    for &pmax in &spec.pmax_db {
        for &zeta in &spec.zetas {
            for &scenario in &spec.scenarios {
                let chains = seeds
                    .par_iter()
                    .map(|&seed| {
                        let channels = sample_channels(config, seed);
                        let mut prev: Vec<Option<PowerAllocation>> = vec![None; channels.num_relays()];
                        let mut chain: Vec<Option<ResultRow>> = vec![None; order.len()];
                        for &(slot, ibar) in &order {
                            let cfg = cell_config(config, pmax, zeta, ibar);
                            let mut results = Vec::with_capacity(prev.len());
                            for (k, warm) in prev.iter_mut().enumerate() {
                                let mut r = solve_relay(&channels, k, &cfg, scenario, &SolverOptions::default())?;
                                if let Some(a) = *warm {
                                    let opts = SolverOptions {
                                        init: InitStrategy::Custom(a),
                                        ..SolverOptions::default()
                                    };
                                    let w = solve_relay(&channels, k, &cfg, scenario, &opts)?;
                                    if w.rate > r.rate {
                                        r = w;
                                    }
                                }
                                *warm = Some(r.allocation);
                                results.push(r);
                            }
                            let sel = select_relay(results)?;
                            chain[slot] = Some(solved_row(spec, scenario, &cfg, ibar, pmax, &channels, sel.best()));
                        }
                        Ok(chain.into_iter().flatten().collect())
                    })
                    .collect::<Result<Vec<Vec<ResultRow>>>>()?;
                rows.extend(transpose(chains));
            }
        }
    }
    Ok(rows)
}

/// Rate at fixed powers, outside any optimization. The relay shown is the
/// one with the highest rate at that point; `feasible` reports whether the
/// point meets the power caps and the interference cap for that relay.
fn fixed_power_sweep(spec: &ExperimentSpec, config: &NetworkConfig) -> Result<Vec<ResultRow>> {
    let seeds = spec.seeds();
    let relay_sweep = spec.kind == ExperimentKind::RateVsPr;
    let ibar = spec.ibar_db[0];
    let mut rows = Vec::new();
    for &pmax in &spec.pmax_db {
        for &zeta in &spec.zetas {
            let cfg = cell_config(config, pmax, zeta, ibar);
            for &scenario in &spec.scenarios {
                for &fixed in &spec.fixed_db {
                    let chains: Vec<Vec<ResultRow>> = seeds
                        .par_iter()
                        .map(|&seed| {
                            let channels = sample_channels(config, seed);
                            spec.sweep_db
                                .iter()
                                .map(|&sweep| {
                                    let (ps_db, pr_db) = if relay_sweep { (fixed, sweep) } else { (sweep, fixed) };
                                    let alloc = PowerAllocation::new(db_to_linear(ps_db), db_to_linear(pr_db));
                                    let (relay, rate) = best_relay_at(&channels, &cfg, scenario, alloc);
                                    ResultRow {
                                        scenario: Some(scenario),
                                        ibar_db: Some(ibar),
                                        pmax_db: Some(pmax),
                                        fixed_db: Some(fixed),
                                        sweep_db: Some(sweep),
                                        seed: Some(seed),
                                        channel_digest: Some(channels.digest()),
                                        relay: Some(relay),
                                        rate,
                                        p_s: Some(alloc.p_s),
                                        p_r: Some(alloc.p_r),
                                        feasible: Some(scenario.is_feasible(alloc, &channels, relay, &cfg)),
                                        ..ResultRow::blank(spec.kind, zeta)
                                    }
                                })
                                .collect()
                        })
                        .collect();
                    rows.extend(transpose(chains));
                }
            }
        }
    }
    Ok(rows)
}

/// Rate of the scenario at `alloc` through the best relay, lowest index on ties.
pub fn best_relay_at(
    channels: &ChannelRealization,
    config: &NetworkConfig,
    scenario: Scenario,
    alloc: PowerAllocation,
) -> (usize, f64) {
    let hd = NetworkConfig {
        zeta: 0.0,
        ..config.clone()
    };
    let mut best = (0, f64::NEG_INFINITY);
    for (k, link) in channels.links().enumerate() {
        let rate = match scenario {
            Scenario::HalfDuplex => 0.5 * rate_exact(alloc, &link, &hd),
            _ => rate_exact(alloc, &link, config),
        };
        if rate > best.1 {
            best = (k, rate);
        }
    }
    best
}

fn optimality_gap(spec: &ExperimentSpec, config: &NetworkConfig) -> Result<Vec<ResultRow>> {
    let seeds = spec.seeds();
    let mut rows = Vec::new();
    for &pmax in &spec.pmax_db {
        for &zeta in &spec.zetas {
            for &scenario in &spec.scenarios {
                for &ibar in &spec.ibar_db {
                    let cfg = cell_config(config, pmax, zeta, ibar);
                    let cell = seeds
                        .par_iter()
                        .map(|&seed| {
                            let channels = sample_channels(config, seed);
                            let solved = solve(&channels, &cfg, scenario, &SolverOptions::default())?;
                            let oracle = solve_brute_force(&channels, &cfg, scenario, spec.oracle_grid)?;
                            let mut row = solved_row(spec, scenario, &cfg, ibar, pmax, &channels, solved.best());
                            row.oracle_rate = Some(oracle.rate());
                            row.gap_pct = Some(gap_pct(solved.rate(), oracle.rate()));
                            Ok(row)
                        })
                        .collect::<Result<Vec<_>>>()?;
                    rows.extend(cell);
                }
            }
        }
    }
    Ok(rows)
}

fn lemma_suite(spec: &ExperimentSpec, config: &NetworkConfig) -> Result<Vec<ResultRow>> {
    let settings = SuiteSettings {
        draws: spec.num_realizations,
        seed: spec.base_seed,
        ..SuiteSettings::default()
    };
    let mut rows = Vec::new();
    for &zeta in &spec.zetas {
        let cfg = NetworkConfig {
            zeta,
            ..config.clone()
        };
        for c in run_lemma_suite(&cfg, settings)? {
            rows.push(ResultRow {
                seed: Some(spec.base_seed),
                check: Some(c.name.to_string()),
                checked: Some(c.checked),
                failures: Some(c.failures),
                ..ResultRow::blank(spec.kind, zeta)
            });
        }
    }
    Ok(rows)
}

/// Means over the realizations of one sweep cell.
#[derive(Debug, Clone, PartialEq)]
pub struct CellSummary {
    pub scenario: Option<Scenario>,
    pub zeta: f64,
    pub ibar_db: Option<f64>,
    pub pmax_db: Option<f64>,
    pub fixed_db: Option<f64>,
    pub sweep_db: Option<f64>,
    pub count: usize,
    pub mean_rate: f64,
    pub mean_oracle: Option<f64>,
    pub mean_gap_pct: Option<f64>,
    pub max_gap_pct: Option<f64>,
}

/// Groups consecutive rows that differ only in seed, in row order.
pub fn summarize(rows: &[ResultRow]) -> Vec<CellSummary> {
    let key = |r: &ResultRow| (r.scenario, r.zeta, r.ibar_db, r.pmax_db, r.fixed_db, r.sweep_db);
    let mut out: Vec<CellSummary> = Vec::new();
    let mut sums: Vec<(f64, f64, f64)> = Vec::new();
    for r in rows.iter().filter(|r| r.check.is_none()) {
        let start_new = out.last().is_none_or(|c| {
            (c.scenario, c.zeta, c.ibar_db, c.pmax_db, c.fixed_db, c.sweep_db) != key(r)
        });
        if start_new {
            out.push(CellSummary {
                scenario: r.scenario,
                zeta: r.zeta,
                ibar_db: r.ibar_db,
                pmax_db: r.pmax_db,
                fixed_db: r.fixed_db,
                sweep_db: r.sweep_db,
                count: 0,
                mean_rate: 0.0,
                mean_oracle: r.oracle_rate.map(|_| 0.0),
                mean_gap_pct: r.gap_pct.map(|_| 0.0),
                max_gap_pct: r.gap_pct.map(|_| f64::NEG_INFINITY),
            });
            sums.push((0.0, 0.0, 0.0));
        }
        let c = out.last_mut().expect("pushed above");
        let s = sums.last_mut().expect("pushed above");
        c.count += 1;
        s.0 += r.rate;
        s.1 += r.oracle_rate.unwrap_or(0.0);
        s.2 += r.gap_pct.unwrap_or(0.0);
        if let (Some(m), Some(g)) = (c.max_gap_pct.as_mut(), r.gap_pct) {
            *m = m.max(g);
        }
    }
    for (c, s) in out.iter_mut().zip(sums) {
        let n = c.count as f64;
        c.mean_rate = s.0 / n;
        c.mean_oracle = c.mean_oracle.map(|_| s.1 / n);
        c.mean_gap_pct = c.mean_gap_pct.map(|_| s.2 / n);
    }
    out
}
