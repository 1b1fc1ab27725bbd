//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line
//! (written straight to stdout so it shows without `--nocapture`).

use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::io::Write;
use std::time::Instant;

use fdcrn::analysis::{run_lemma_suite, SuiteSettings};
use fdcrn::harness::{run_experiment, summarize, write_csv, ExperimentKind, ExperimentSpec, ResultRow};
use fdcrn::model::{sample_channels, NetworkConfig, PowerAllocation};
use fdcrn::phase::{decompose, optimal_phase};
use fdcrn::solver::Scenario;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn report(id: &str, title: &str, started: Instant, o: &Outcome) {
    let line = format!(
        "{} [{id}] {title}: {} ({:.1} s)\n",
        if o.pass { "PASS" } else { "FAIL" },
        o.detail,
        started.elapsed().as_secs_f64()
    );
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(line.as_bytes());
    let _ = out.flush();
}

fn config(k: usize) -> NetworkConfig {
    NetworkConfig {
        num_relays: k,
        ..NetworkConfig::default()
    }
}

fn optimality_gap() -> Outcome {
    let spec = ExperimentSpec::preset(ExperimentKind::OptimalityGap);
    let rows = run_experiment(&spec, &config(1)).unwrap();
    let mut pass = true;
    let mut worst = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    for c in summarize(&rows) {
        let (mean, max) = (c.mean_gap_pct.unwrap(), c.max_gap_pct.unwrap());
        pass &= c.count == 100 && mean < 1.0 && max < 3.0;
        worst = (worst.0.max(mean), worst.1.max(max));
    }
    Outcome {
        pass,
        detail: format!("worst cell mean gap {:.4}%, worst max gap {:.4}%", worst.0, worst.1),
    }
}

fn phase_optimality() -> Outcome {
    let cfg = config(1);
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let grid: Vec<f64> = (0..10_000).map(|i| TAU * i as f64 / 10_000.0).collect();
    let (mut bad_grid, mut bad_closed) = (0, 0);
    let mut worst_closed = 0.0f64;
    for i in 0..1000 {
        let link = sample_channels(&cfg, 50_000 + i).link(0);
        let zeta = [0.0, 0.001, 0.01, 0.4][i as usize % 4];
        let c = NetworkConfig { zeta, ..cfg.clone() };
        let alloc = PowerAllocation::new(rng.random::<f64>() * c.p_s_max, rng.random::<f64>() * c.p_r_max);
        let dec = decompose(alloc, &link, &c);
        let best = optimal_phase(&dec);
        let at = dec.interference_at(best.phi_opt);
        let grid_min = grid.iter().map(|&p| dec.interference_at(p)).fold(f64::INFINITY, f64::min);
        if at > grid_min + 1e-9 * grid_min.max(f64::MIN_POSITIVE) {
            bad_grid += 1;
        }
        let closed = (dec.a.norm() - dec.b.norm()).powi(2);
        let err = (at - closed).abs() / dec.interference_max();
        worst_closed = worst_closed.max(err);
        if err > 1e-12 {
            bad_closed += 1;
        }
    }
    Outcome {
        pass: bad_grid == 0 && bad_closed == 0,
        detail: format!(
            "{bad_grid} of 1000 above the grid minimum, {bad_closed} off (|A|-|B|)^2 (worst rel {worst_closed:.2e})"
        ),
    }
}

fn suite_at(zetas: &[f64]) -> Vec<(f64, fdcrn::analysis::LemmaCheck)> {
    let mut out = Vec::new();
    for &zeta in zetas {
        let cfg = NetworkConfig {
            zeta,
            ..config(1)
        };
        for c in run_lemma_suite(&cfg, SuiteSettings::default()).unwrap() {
            out.push((zeta, c));
        }
    }
    out
}

fn summarize_checks(checks: &[(f64, fdcrn::analysis::LemmaCheck)]) -> Outcome {
    let failed: Vec<String> = checks
        .iter()
        .filter(|(_, c)| !c.passed())
        .map(|(z, c)| format!("zeta={z} {}: {}/{} ({})", c.name, c.failures, c.checked, c.detail))
        .collect();
    let total: usize = checks.iter().map(|(_, c)| c.checked).sum();
    Outcome {
        pass: failed.is_empty(),
        detail: if failed.is_empty() {
            format!("{} checks, {total} evaluations, no failures", checks.len())
        } else {
            failed.join("; ")
        },
    }
}

fn lemma_suite(checks: &[(f64, fdcrn::analysis::LemmaCheck)]) -> Outcome {
    let wanted = [
        "noncoherent per-variable convexity",
        "coherent per-variable convexity",
        "ideal-cancellation semidefiniteness",
        "noncoherent nonconvexity witness",
        "coherent nonconvexity witness",
    ];
    let sel: Vec<_> = checks.iter().filter(|(_, c)| wanted.contains(&c.name)).cloned().collect();
    summarize_checks(&sel)
}

fn calculus(checks: &[(f64, fdcrn::analysis::LemmaCheck)]) -> Outcome {
    let wanted = [
        "closed-form partials vs finite differences",
        "noncoherent Hessian vs finite differences",
        "coherent Hessian vs finite differences",
    ];
    let sel: Vec<_> = checks.iter().filter(|(_, c)| wanted.contains(&c.name)).cloned().collect();
    summarize_checks(&sel)
}

type Key = (Scenario, u64, u64);

fn zkey(z: f64) -> u64 {
    z.to_bits()
}

fn trends(rows: &[ResultRow]) -> [Outcome; 4] {
    // (a) per realization, nondecreasing in the cap
    let mut chains: BTreeMap<(Scenario, u64, u64), Vec<(f64, f64)>> = BTreeMap::new();
    for r in rows {
        chains
            .entry((r.scenario.unwrap(), zkey(r.zeta), r.seed.unwrap()))
            .or_default()
            .push((r.ibar_db.unwrap(), r.rate));
    }
    let mut drops = 0;
    for v in chains.values_mut() {
        v.sort_by(|a, b| a.0.total_cmp(&b.0));
        drops += v.windows(2).filter(|w| w[1].1 < w[0].1 - 1e-6).count();
    }
    let a = Outcome {
        pass: drops == 0,
        detail: format!("{drops} decreases over {} realization chains", chains.len()),
    };

    let mut mean: BTreeMap<Key, f64> = BTreeMap::new();
    let mut zetas: Vec<f64> = Vec::new();
    let mut ibars: Vec<f64> = Vec::new();
    for c in summarize(rows) {
        mean.insert((c.scenario.unwrap(), zkey(c.zeta), c.ibar_db.unwrap().to_bits()), c.mean_rate);
        if !zetas.contains(&c.zeta) {
            zetas.push(c.zeta);
        }
        if !ibars.contains(&c.ibar_db.unwrap()) {
            ibars.push(c.ibar_db.unwrap());
        }
    }
    zetas.sort_by(f64::total_cmp);
    let m = |s: Scenario, z: f64, i: f64| mean[&(s, zkey(z), i.to_bits())];

    let mut b_fail = Vec::new();
    let mut min_ratio = f64::INFINITY;
    for &z in &zetas {
        for &i in &ibars {
            let (coh, non) = (m(Scenario::Coherent, z, i), m(Scenario::Noncoherent, z, i));
            min_ratio = min_ratio.min(coh / non);
            if coh <= non {
                b_fail.push(format!("zeta={z} ibar={i}dB: {coh:.4} <= {non:.4}"));
            }
        }
    }
    let b = Outcome {
        pass: b_fail.is_empty(),
        detail: if b_fail.is_empty() {
            format!("coherent/non-coherent mean ratio >= {min_ratio:.3} in every cell")
        } else {
            b_fail.join("; ")
        },
    };

    let mut c_fail = Vec::new();
    for s in [Scenario::Noncoherent, Scenario::Coherent] {
        for &i in &ibars {
            let seq: Vec<f64> = zetas.iter().map(|&z| m(s, z, i)).collect();
            if seq.windows(2).any(|w| w[1] >= w[0]) {
                c_fail.push(format!("{s} ibar={i}dB: {seq:.4?}"));
            }
        }
    }
    let at8: Vec<f64> = zetas.iter().map(|&z| m(Scenario::Coherent, z, 8.0)).collect();
    let c = Outcome {
        pass: c_fail.is_empty(),
        detail: if c_fail.is_empty() {
            format!("strictly decreasing in zeta {zetas:?} for both scenarios at every cap (coherent, 8 dB: {at8:.4?})")
        } else {
            c_fail.join("; ")
        },
    };

    let mut d_fail = Vec::new();
    let mut d_info = Vec::new();
    for &i in &ibars {
        let hd = m(Scenario::HalfDuplex, 0.001, i);
        for s in [Scenario::Noncoherent, Scenario::Coherent] {
            let fd = m(s, 0.001, i);
            if fd <= hd {
                d_fail.push(format!("{s} ibar={i}dB: {fd:.4} <= hd {hd:.4}"));
            }
        }
        if i == 8.0 {
            d_info.push(format!(
                "8 dB: non-coherent {:.4}, coherent {:.4}, hd {hd:.4}",
                m(Scenario::Noncoherent, 0.001, i),
                m(Scenario::Coherent, 0.001, i)
            ));
        }
    }
    let d = Outcome {
        pass: d_fail.is_empty(),
        detail: if d_fail.is_empty() {
            format!("full duplex above half duplex at every cap; {}", d_info.join(""))
        } else {
            d_fail.join("; ")
        },
    };
    [a, b, c, d]
}

fn interior_maximizer() -> Outcome {
    let spec = ExperimentSpec {
        zetas: vec![0.4],
        num_realizations: 100,
        scenarios: vec![Scenario::Noncoherent],
        sweep_db: (0..=400).map(|i| -10.0 + 0.1 * i as f64).collect(),
        ..ExperimentSpec::preset(ExperimentKind::RateVsPr)
    };
    let rows = run_experiment(&spec, &config(10)).unwrap();
    let mut curves: BTreeMap<u64, Vec<f64>> = BTreeMap::new();
    for r in &rows {
        curves.entry(r.seed.unwrap()).or_default().push(r.rate);
    }
    let interior = curves
        .values()
        .filter(|v| {
            let (arg, _) = v
                .iter()
                .enumerate()
                .fold((0, f64::NEG_INFINITY), |b, (i, &x)| if x > b.1 { (i, x) } else { b });
            arg > 0 && arg + 1 < v.len()
        })
        .count();
    Outcome {
        pass: interior * 10 >= curves.len() * 9,
        detail: format!("{interior} of {} curves peak strictly inside -10..30 dB", curves.len()),
    }
}

fn determinism() -> Outcome {
    let mut ok = true;
    for kind in ExperimentKind::ALL {
        let spec = ExperimentSpec {
            num_realizations: 4,
            pmax_db: vec![20.0],
            zetas: if kind == ExperimentKind::LemmaSuite { vec![0.01] } else { vec![0.001, 0.4] },
            oracle_grid: 51,
            sweep_db: vec![-5.0, 5.0, 15.0],
            ..ExperimentSpec::preset(kind)
        };
        let bytes = || {
            let mut buf = Vec::new();
            write_csv(&run_experiment(&spec, &config(3)).unwrap(), &mut buf).unwrap();
            buf
        };
        ok &= bytes() == bytes();
    }
    Outcome {
        pass: ok,
        detail: "two runs of every experiment give byte-identical CSV".into(),
    }
}

fn run(id: &str, title: &str, f: impl FnOnce() -> Outcome) -> bool {
    let t = Instant::now();
    let o = f();
    report(id, title, t, &o);
    o.pass
}

#[test]
fn acceptance() {
    let mut all = true;
    all &= run("1", "optimality gap vs 201x201 oracle, K=1", optimality_gap);
    all &= run("2", "optimal forwarding phase", phase_optimality);
    let checks = suite_at(&[0.001, 0.01, 0.4]);
    all &= run("3", "curvature lemmas and nonconvexity witnesses", || lemma_suite(&checks));
    all &= run("4", "closed-form calculus vs finite differences", || calculus(&checks));

    let t = Instant::now();
    let spec = ExperimentSpec {
        pmax_db: vec![20.0],
        ..ExperimentSpec::preset(ExperimentKind::RateVsIbar)
    };
    let rows = run_experiment(&spec, &config(8)).unwrap();
    let [a, b, c, d] = trends(&rows);
    for (id, title, o) in [
        ("5a", "rate nondecreasing in the cap per realization", a),
        ("5b", "coherent above non-coherent on average", b),
        ("5c", "mean rate decreasing in zeta", c),
        ("5d", "full duplex above half duplex at zeta=0.001", d),
    ] {
        report(id, title, t, &o);
        all &= o.pass;
    }

    all &= run("6", "relay-power sweep peaks inside the range", interior_maximizer);
    all &= run("7", "determinism", determinism);
    assert!(all, "some acceptance criteria failed; see the lines above");
}
