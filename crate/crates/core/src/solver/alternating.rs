use crate::error::{Error, Result};
use crate::model::{
    interference_noncoh, rate_exact, rate_from_sinr, rate_high_snr_ideal, sinr_exact, surrogate_value, zeta_hat,
    ChannelRealization, Link, NetworkConfig, PowerAllocation, SqrtPower,
};
use crate::phase::{amplitude_margin, interference_coh, phase_solution, ConvexifiedConstraint};
use crate::solver::feasible::{feasible_components, refine_boundary, Interval};
use crate::solver::golden::scan_then_golden;
use crate::solver::{AxisOrder, ConstraintModel, InitStrategy, Objective, RelayResult, Scenario, SolverOptions};

const S: usize = 0;
const R: usize = 1;

/// Cells scanned along the interference boundary when riding it.
const RIDE_SCAN: usize = 32;
/// Cells scanned when locating a level-set crossing.
const ROOT_SCAN: usize = 32;
/// Cells scanned inside a feasible component before golden refinement.
const COMPONENT_SCAN: usize = 8;
/// Points per axis of the restart lattice.
const RESTART_LATTICE: usize = 17;

/// A two-variable problem as the alternating engine sees it. Points are
/// `[source, relay]` in the problem's own variables (powers or amplitudes).
pub(crate) trait Landscape {
    fn upper(&self, axis: usize) -> f64;
    fn objective(&self, x: [f64; 2]) -> f64;
    /// Constrained quantity minus its cap; feasible when `<= 0`.
    fn slack(&self, x: [f64; 2]) -> f64;
    /// Feasible pieces along `axis` through `x`; must cover `x[axis]` when `x` is feasible.
    fn components(&self, axis: usize, x: [f64; 2]) -> Vec<Interval>;
    /// Quantity whose level set traces the active constraint boundary.
    fn level(&self, _x: [f64; 2]) -> Option<f64> {
        None
    }
    /// Coordinate along `axis` through `x` where `level` equals `target`,
    /// nearest to `hint`.
    fn level_root(&self, axis: usize, x: [f64; 2], target: f64, hint: f64) -> Option<f64> {
        let g = |t: f64| {
            let mut p = x;
            p[axis] = t;
            self.level(p).unwrap_or(f64::NAN) - target
        };
        nearest_root(g, 0.0, self.upper(axis), hint, ROOT_SCAN)
    }
    /// Exact-feasibility repair of a step from feasible `from` to `to`.
    fn repair(&self, _from: [f64; 2], to: [f64; 2]) -> [f64; 2] {
        to
    }
    fn to_alloc(&self, x: [f64; 2]) -> PowerAllocation;
    fn from_alloc(&self, a: PowerAllocation) -> [f64; 2];
    fn tolerance(&self) -> f64;
}

/// Root of `g` on `[lo, hi]` closest to `hint`, from sign changes on a scan.
fn nearest_root<G: Fn(f64) -> f64>(g: G, lo: f64, hi: f64, hint: f64, n: usize) -> Option<f64> {
    let step = (hi - lo) / n as f64;
    let at = |i: usize| if i == n { hi } else { lo + step * i as f64 };
    let vals: Vec<f64> = (0..=n).map(|i| g(at(i))).collect();
    let mut best: Option<(f64, usize)> = None;
    for i in 0..=n {
        let hit = vals[i] == 0.0 || (i < n && vals[i] * vals[i + 1] < 0.0);
        if !hit {
            continue;
        }
        let mid = if vals[i] == 0.0 { at(i) } else { 0.5 * (at(i) + at(i + 1)) };
        let d = (mid - hint).abs();
        if best.is_none_or(|(bd, _)| d < bd) {
            best = Some((d, i));
        }
    }
    let (_, i) = best?;
    if vals[i] == 0.0 {
        return Some(at(i));
    }
    let (mut a, mut b) = (at(i), at(i + 1));
    let mut fa = vals[i];
    for _ in 0..100 {
        if b - a <= 1e-14 * b.abs().max(1.0) {
            break;
        }
        let m = 0.5 * (a + b);
        let fm = g(m);
        if fm == 0.0 {
            return Some(m);
        }
        if (fm < 0.0) == (fa < 0.0) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    Some(0.5 * (a + b))
}

fn objective_value(kind: Objective, alloc: PowerAllocation, link: &Link, config: &NetworkConfig) -> f64 {
    match kind {
        Objective::ExactSinr => rate_exact(alloc, link, config),
        Objective::Surrogate => {
            let zh = zeta_hat(link, config);
            if zh > 0.0 {
                surrogate_value(alloc.p_s, alloc.p_r, link.g_sr(), link.g_rd(), zh, config.sigma2_dest)
            } else {
                rate_high_snr_ideal(alloc, link, config)
            }
        }
    }
}

struct Noncoherent<'a> {
    link: Link,
    config: &'a NetworkConfig,
    objective: Objective,
}

impl Noncoherent<'_> {
    fn coeffs(&self) -> (f64, f64) {
        (self.link.g_sp(), self.link.g_rp() * (1.0 + self.config.zeta))
    }
}

impl Landscape for Noncoherent<'_> {
    fn upper(&self, axis: usize) -> f64 {
        if axis == S {
            self.config.p_s_max
        } else {
            self.config.p_r_max
        }
    }

    fn objective(&self, x: [f64; 2]) -> f64 {
        objective_value(self.objective, self.to_alloc(x), &self.link, self.config)
    }

    fn slack(&self, x: [f64; 2]) -> f64 {
        interference_noncoh(self.to_alloc(x), &self.link, self.config) - self.config.i_bar_p
    }

    fn components(&self, axis: usize, x: [f64; 2]) -> Vec<Interval> {
        let (c, d) = self.coeffs();
        let (own, other) = if axis == S { (c, d) } else { (d, c) };
        let room = self.config.i_bar_p - other * x[1 - axis];
        if room < -self.tolerance() {
            return Vec::new();
        }
        let room = room.max(0.0);
        let hi = if own > 0.0 { room / own } else { f64::INFINITY };
        vec![Interval::new(0.0, hi.min(self.upper(axis)))]
    }

    fn level(&self, x: [f64; 2]) -> Option<f64> {
        Some(interference_noncoh(self.to_alloc(x), &self.link, self.config))
    }

    fn level_root(&self, axis: usize, x: [f64; 2], target: f64, _hint: f64) -> Option<f64> {
        let (c, d) = self.coeffs();
        let (own, other) = if axis == S { (c, d) } else { (d, c) };
        if own <= 0.0 {
            return None;
        }
        let t = (target - other * x[1 - axis]) / own;
        (0.0..=self.upper(axis)).contains(&t).then_some(t)
    }

    fn to_alloc(&self, x: [f64; 2]) -> PowerAllocation {
        PowerAllocation::new(x[S], x[R])
    }

    fn from_alloc(&self, a: PowerAllocation) -> [f64; 2] {
        [a.p_s, a.p_r]
    }

    fn tolerance(&self) -> f64 {
        1e-12 * self.config.i_bar_p.max(1.0)
    }
}

/// Coherent problem in amplitude variables `(sqrt(P_S), sqrt(P_R))`.
struct Coherent<'a> {
    link: Link,
    config: &'a NetworkConfig,
    objective: Objective,
    model: ConstraintModel,
    scan: usize,
}

impl Landscape for Coherent<'_> {
    fn upper(&self, axis: usize) -> f64 {
        if axis == S {
            self.config.p_s_max.sqrt()
        } else {
            self.config.p_r_max.sqrt()
        }
    }

    fn objective(&self, x: [f64; 2]) -> f64 {
        objective_value(self.objective, self.to_alloc(x), &self.link, self.config)
    }

    fn slack(&self, x: [f64; 2]) -> f64 {
        interference_coh(self.to_alloc(x), &self.link, self.config) - self.config.i_bar_p
    }

    fn components(&self, axis: usize, x: [f64; 2]) -> Vec<Interval> {
        match self.model {
            ConstraintModel::Exact => {
                let slack = |t: f64| {
                    let mut p = x;
                    p[axis] = t;
                    self.slack(p)
                };
                feasible_components(slack, 0.0, self.upper(axis), Some(x[axis]), self.scan)
            }
            ConstraintModel::Convexified => {
                let frozen = ConvexifiedConstraint::at(self.to_alloc(x), &self.link, self.config);
                let cap = self.config.i_bar_p;
                let range = if axis == S {
                    frozen.ps_interval(x[R], cap, &self.link)
                } else {
                    frozen.pr_interval(x[S], cap, &self.link)
                };
                let mut out: Vec<Interval> = range
                    .filter(|(lo, _)| *lo <= self.upper(axis))
                    .map(|(lo, hi)| Interval::new(lo, hi.min(self.upper(axis))))
                    .into_iter()
                    .collect();
                if self.slack(x) <= 0.0 && !out.iter().any(|c| c.contains(x[axis])) {
                    out.push(Interval::new(x[axis], x[axis]));
                }
                out
            }
        }
    }

    fn level(&self, x: [f64; 2]) -> Option<f64> {
        Some(amplitude_margin(self.to_alloc(x), &self.link, self.config))
    }

    fn repair(&self, from: [f64; 2], to: [f64; 2]) -> [f64; 2] {
        if self.slack(to) <= self.tolerance() {
            return to;
        }
        let along = |t: f64| self.slack(lerp(from, to, t)) - self.tolerance();
        lerp(from, to, refine_boundary(&along, 0.0, 1.0))
    }

    fn to_alloc(&self, x: [f64; 2]) -> PowerAllocation {
        SqrtPower::new(x[S], x[R]).to_power()
    }

    fn from_alloc(&self, a: PowerAllocation) -> [f64; 2] {
        [a.p_s.sqrt(), a.p_r.sqrt()]
    }

    fn tolerance(&self) -> f64 {
        1e-12 * self.config.i_bar_p.max(1.0)
    }
}

fn lerp(a: [f64; 2], b: [f64; 2], t: f64) -> [f64; 2] {
    [a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])]
}

/// Half-duplex comparator: each slot is limited separately, no self-interference,
/// half the spectral efficiency.
pub(crate) struct HalfDuplex {
    pub link: Link,
    /// The full-duplex configuration with `zeta = 0`.
    pub config: NetworkConfig,
}

impl Landscape for HalfDuplex {
    fn upper(&self, axis: usize) -> f64 {
        if axis == S {
            self.config.p_s_max
        } else {
            self.config.p_r_max
        }
    }

    fn objective(&self, x: [f64; 2]) -> f64 {
        0.5 * rate_from_sinr(sinr_exact(self.to_alloc(x), &self.link, &self.config))
    }

    fn slack(&self, x: [f64; 2]) -> f64 {
        (self.link.g_sp() * x[S]).max(self.link.g_rp() * x[R]) - self.config.i_bar_p
    }

    fn components(&self, axis: usize, x: [f64; 2]) -> Vec<Interval> {
        let (own, other) = if axis == S {
            (self.link.g_sp(), self.link.g_rp())
        } else {
            (self.link.g_rp(), self.link.g_sp())
        };
        if other * x[1 - axis] > self.config.i_bar_p + self.tolerance() {
            return Vec::new();
        }
        let hi = if own > 0.0 { self.config.i_bar_p / own } else { f64::INFINITY };
        vec![Interval::new(0.0, hi.min(self.upper(axis)))]
    }

    fn to_alloc(&self, x: [f64; 2]) -> PowerAllocation {
        PowerAllocation::new(x[S], x[R])
    }

    fn from_alloc(&self, a: PowerAllocation) -> [f64; 2] {
        [a.p_s, a.p_r]
    }

    fn tolerance(&self) -> f64 {
        1e-12 * self.config.i_bar_p.max(1.0)
    }
}

pub(crate) struct Outcome {
    pub point: [f64; 2],
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
    pub trace: Vec<(usize, f64)>,
}

/// Starting points for the alternation. The target point is pulled back
/// along the ray to the origin; when the ray crosses several feasible
/// stretches, the far end of each is a start, farthest first.
fn initial_points<L: Landscape>(land: &L, init: InitStrategy, scan: usize) -> Vec<[f64; 2]> {
    let target = match init {
        InitStrategy::MaxPowerScaled => [land.upper(S), land.upper(R)],
        InitStrategy::Midpoint => {
            let corner = land.to_alloc([land.upper(S), land.upper(R)]);
            land.from_alloc(PowerAllocation::new(0.5 * corner.p_s, 0.5 * corner.p_r))
        }
        InitStrategy::Custom(a) => {
            let x = land.from_alloc(a);
            [x[S].clamp(0.0, land.upper(S)), x[R].clamp(0.0, land.upper(R))]
        }
    };
    let tol = land.tolerance();
    if land.slack(target) <= tol {
        return vec![target];
    }
    let along = |t: f64| land.slack([t * target[S], t * target[R]]) - tol;
    if let InitStrategy::Custom(_) = init {
        let t = refine_boundary(&along, 0.0, 1.0);
        return vec![[t * target[S], t * target[R]]];
    }
    let mut ends: Vec<f64> = feasible_components(along, 0.0, 1.0, None, scan)
        .iter()
        .map(|c| c.hi)
        .collect();
    if ends.is_empty() {
        ends.push(0.0);
    }
    ends.reverse();
    ends.iter().map(|t| [t * target[S], t * target[R]]).collect()
}

/// Best point of the objective along `axis` over the given pieces.
fn best_on_axis<L: Landscape>(land: &L, x: [f64; 2], axis: usize, comps: &[Interval], tol: f64) -> Option<([f64; 2], f64)> {
    let mut best: Option<([f64; 2], f64)> = None;
    for c in comps {
        let f = |t: f64| {
            let mut p = x;
            p[axis] = t;
            land.objective(p)
        };
        let (t, v) = if c.hi > c.lo {
            scan_then_golden(f, c.lo, c.hi, COMPONENT_SCAN, tol)
        } else {
            (c.lo, f(c.lo))
        };
        if best.is_none_or(|(_, bv)| v > bv) {
            let mut p = x;
            p[axis] = t;
            best = Some((p, v));
        }
    }
    best
}

/// Maximizes along the boundary through `anchor`: the `other` coordinate
/// sweeps its box while the `axis` coordinate tracks the level of `anchor`.
fn ride<L: Landscape>(land: &L, anchor: [f64; 2], axis: usize, tol: f64) -> Option<([f64; 2], f64)> {
    let target = land.level(anchor)?;
    let other = 1 - axis;
    let hint = anchor[axis];
    let point_at = |t: f64| -> Option<[f64; 2]> {
        let mut p = anchor;
        p[other] = t;
        let u = land.level_root(axis, p, target, hint)?;
        p[axis] = u;
        (land.slack(p) <= land.tolerance()).then_some(p)
    };
    // The boundary may leave the box or the feasible set; restrict the
    // sweep to the stretch around the anchor where it stays valid.
    let invalid = |t: f64| if point_at(t).is_some() { -1.0 } else { 1.0 };
    let span = feasible_components(invalid, 0.0, land.upper(other), Some(anchor[other]), RIDE_SCAN);
    let dist = |c: &Interval| (c.lo - anchor[other]).max(anchor[other] - c.hi).max(0.0);
    let span = span.iter().min_by(|a, b| dist(a).total_cmp(&dist(b)))?;
    let f = |t: f64| point_at(t).map_or(f64::NEG_INFINITY, |p| land.objective(p));
    let (t, v) = scan_then_golden(f, span.lo, span.hi, RIDE_SCAN, tol);
    if !v.is_finite() {
        return None;
    }
    point_at(t).map(|p| (p, land.objective(p)))
}

pub(crate) fn run_alternation<L: Landscape>(land: &L, opts: &SolverOptions, ride_allowed: bool) -> Outcome {
    let (first, second) = match opts.order {
        AxisOrder::RelayFirst => (R, S),
        AxisOrder::SourceFirst => (S, R),
    };
    let mut best: Option<Outcome> = None;
    for start in initial_points(land, opts.init, opts.scan_points) {
        let out = alternate_from(land, start, opts, first, second, ride_allowed);
        if best.as_ref().is_none_or(|b| out.value > b.value) {
            best = Some(out);
        }
    }
    let mut best = best.expect("at least one start");
    // The coherent feasible set can have islands the ray never meets.
    // Restart from the best lattice point when it already beats the result.
    if let InitStrategy::Custom(_) = opts.init {
        return best;
    }
    if let Some((p, v)) = lattice_best(land, RESTART_LATTICE) {
        if v > best.value {
            let out = alternate_from(land, p, opts, first, second, ride_allowed);
            if out.value > best.value {
                best = out;
            }
        }
    }
    best
}

/// Best feasible point of an `n x n` lattice over the box.
fn lattice_best<L: Landscape>(land: &L, n: usize) -> Option<([f64; 2], f64)> {
    let mut best: Option<([f64; 2], f64)> = None;
    for i in 0..n {
        for j in 0..n {
            let p = [
                land.upper(S) * i as f64 / (n - 1) as f64,
                land.upper(R) * j as f64 / (n - 1) as f64,
            ];
            if land.slack(p) > land.tolerance() {
                continue;
            }
            let v = land.objective(p);
            if best.is_none_or(|(_, bv)| v > bv) {
                best = Some((p, v));
            }
        }
    }
    best
}

fn alternate_from<L: Landscape>(
    land: &L,
    start: [f64; 2],
    opts: &SolverOptions,
    first: usize,
    second: usize,
    ride_allowed: bool,
) -> Outcome {
    let mut x = start;
    let mut value = land.objective(x);
    let mut trace = vec![(0, value)];
    let mut converged = false;
    let mut iterations = 0;
    for it in 1..=opts.max_outer_iters {
        iterations = it;
        let prev = value;

        let comps = land.components(first, x);
        if let Some((p, v)) = best_on_axis(land, x, first, &comps, opts.var_tol) {
            let repaired = land.repair(x, p);
            let v = if repaired == p { v } else { land.objective(repaired) };
            let p = repaired;
            if v > value {
                x = p;
                value = v;
            }
        }

        let mut candidates: Vec<([f64; 2], f64)> = Vec::new();
        let comps2 = land.components(second, x);
        if let Some((p, _)) = best_on_axis(land, x, second, &comps2, opts.var_tol) {
            let p = land.repair(x, p);
            candidates.push((p, land.objective(p)));
        }
        if ride_allowed && opts.ride_constraint {
            let own = land.components(first, x);
            let dist = |c: &Interval| (c.lo - x[first]).max(x[first] - c.hi).max(0.0);
            if let Some(c) = own.iter().min_by(|a, b| dist(a).total_cmp(&dist(b))) {
                for e in [c.lo, c.hi] {
                    if e <= 0.0 || e >= land.upper(first) {
                        continue;
                    }
                    let mut anchor = x;
                    anchor[first] = e;
                    if let Some(cand) = ride(land, anchor, first, opts.var_tol) {
                        candidates.push(cand);
                    }
                }
            }
        }
        for (p, v) in candidates {
            if v > value && land.slack(p) <= land.tolerance() {
                x = p;
                value = v;
            }
        }

        trace.push((it, value));
        if (value - prev).abs() <= opts.obj_tol * value.abs() {
            converged = true;
            break;
        }
    }
    Outcome {
        point: x,
        value,
        iterations,
        converged,
        trace,
    }
}

pub(crate) fn finish<L: Landscape>(
    land: &L,
    out: Outcome,
    k: usize,
    link: &Link,
    config: &NetworkConfig,
    scenario: Scenario,
    rate_scale: f64,
) -> RelayResult {
    let mut alloc = land.to_alloc(out.point);
    alloc.p_s = alloc.p_s.clamp(0.0, config.p_s_max);
    alloc.p_r = alloc.p_r.clamp(0.0, config.p_r_max);
    let zh = zeta_hat(link, config);
    let hd_config;
    let rate_config = if scenario == Scenario::HalfDuplex {
        hd_config = NetworkConfig {
            zeta: 0.0,
            ..config.clone()
        };
        &hd_config
    } else {
        config
    };
    RelayResult {
        relay: k,
        allocation: alloc,
        rate: rate_scale * rate_exact(alloc, link, rate_config),
        objective: out.value,
        surrogate: (zh > 0.0).then(|| surrogate_value(alloc.p_s, alloc.p_r, link.g_sr(), link.g_rd(), zh, config.sigma2_dest)),
        iterations: out.iterations,
        converged: out.converged,
        feasible: land.slack(out.point) <= 1e-9 && alloc.within_box(config),
        trace: out.trace,
        phase: (scenario == Scenario::Coherent).then(|| phase_solution(alloc, link, config)),
    }
}

pub(crate) fn check_inputs(channels: &ChannelRealization, k: usize, config: &NetworkConfig, opts: &SolverOptions) -> Result<Link> {
    config.validate()?;
    opts.validate()?;
    if k >= channels.num_relays() {
        return Err(Error::InvalidConfig(format!(
            "relay index {k} out of range for {} relays",
            channels.num_relays()
        )));
    }
    Ok(channels.link(k))
}

pub(crate) fn solve_full_duplex(
    channels: &ChannelRealization,
    k: usize,
    config: &NetworkConfig,
    scenario: Scenario,
    opts: &SolverOptions,
) -> Result<RelayResult> {
    let link = check_inputs(channels, k, config, opts)?;
    if config.i_bar_p == 0.0 {
        return Ok(RelayResult::silent(k));
    }
    match scenario {
        Scenario::Noncoherent => {
            let land = Noncoherent {
                link,
                config,
                objective: opts.objective,
            };
            let out = run_alternation(&land, opts, true);
            Ok(finish(&land, out, k, &link, config, scenario, 1.0))
        }
        Scenario::Coherent => {
            let land = Coherent {
                link,
                config,
                objective: opts.objective,
                model: opts.constraint_model,
                scan: opts.scan_points,
            };
            let ride = opts.constraint_model == ConstraintModel::Exact;
            let out = run_alternation(&land, opts, ride);
            Ok(finish(&land, out, k, &link, config, scenario, 1.0))
        }
        Scenario::HalfDuplex => Err(Error::InvalidExperiment(
            "half-duplex relaying is solved by the baseline solver".into(),
        )),
    }
}

/// Alternating maximization for one full-duplex relay: maximize over the
/// relay power at fixed source power, then over the source power, until the
/// objective stops improving. Every iterate is feasible, so the objective
/// trace never decreases.
///
/// Fails with [`Error::ZetaHatZero`] under ideal cancellation, which
/// [`solve_zeta_zero`] handles.
pub fn alternate_optimize(
    channels: &ChannelRealization,
    k: usize,
    config: &NetworkConfig,
    scenario: Scenario,
    opts: &SolverOptions,
) -> Result<RelayResult> {
    let link = check_inputs(channels, k, config, opts)?;
    if zeta_hat(&link, config) == 0.0 {
        return Err(Error::ZetaHatZero { relay: k });
    }
    solve_full_duplex(channels, k, config, scenario, opts)
}

/// Ideal self-interference cancellation. With the exact objective this is
/// the same alternation as [`alternate_optimize`]. With the surrogate the
/// non-coherent problem maximizes the high-SNR form `g1 g2 / (g1 + g2)`,
/// and the coherent one pushes the relay power to its largest feasible
/// value, then the source power to its largest feasible value at that
/// relay power.
pub fn solve_zeta_zero(
    channels: &ChannelRealization,
    k: usize,
    config: &NetworkConfig,
    scenario: Scenario,
    opts: &SolverOptions,
) -> Result<RelayResult> {
    let link = check_inputs(channels, k, config, opts)?;
    if zeta_hat(&link, config) != 0.0 {
        return Err(Error::Domain(format!("relay {k}: residual self-interference is not zero")));
    }
    if scenario != Scenario::Coherent || opts.objective == Objective::ExactSinr || config.i_bar_p == 0.0 {
        return solve_full_duplex(channels, k, config, scenario, opts);
    }

    let land = Coherent {
        link,
        config,
        objective: opts.objective,
        model: ConstraintModel::Exact,
        scan: opts.scan_points,
    };
    // Highest feasible relay amplitude over a source-amplitude scan.
    let n = opts.scan_points.max(2);
    let s_max = land.upper(S);
    let mut best = [0.0, 0.0];
    for i in 0..=n {
        let s = s_max * i as f64 / n as f64;
        if let Some(c) = land.components(R, [s, 0.0]).last() {
            if c.hi > best[R] {
                best = [s, c.hi];
            }
        }
    }
    let s_comps = land.components(S, best);
    let s = s_comps
        .iter()
        .filter(|c| c.contains(best[S]))
        .map(|c| c.hi)
        .fold(best[S], f64::max);
    let point = [s, best[R]];
    let relay_sq = |p: [f64; 2]| p[R] * p[R] * link.g_rd() / config.sigma2_dest;
    let value = relay_sq(point);
    let out = Outcome {
        point,
        value,
        iterations: 1,
        converged: true,
        trace: vec![(0, 0.0), (1, value)],
    };
    Ok(finish(&land, out, k, &link, config, scenario, 1.0))
}
