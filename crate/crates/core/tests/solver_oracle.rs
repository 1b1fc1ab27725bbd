use fdcrn::model::*;
use fdcrn::solver::*;
use proptest::prelude::*;

fn config(k: usize, zeta: f64, ibar_db: f64) -> NetworkConfig {
    NetworkConfig {
        num_relays: k,
        zeta,
        i_bar_p: db_to_linear(ibar_db),
        ..NetworkConfig::default()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn solution_is_feasible_and_trace_is_monotone(
        seed in any::<u64>(), zeta in prop::sample::select(vec![0.0, 0.001, 0.01, 0.4]),
        ibar in 0.0..10.0f64, scen in prop::sample::select(Scenario::ALL.to_vec()),
    ) {
        let cfg = config(1, zeta, ibar);
        let ch = sample_channels(&cfg, seed);
        let r = solve_relay(&ch, 0, &cfg, scen, &SolverOptions::default()).unwrap();
        prop_assert!(r.feasible);
        prop_assert!(scen.is_feasible(r.allocation, &ch, 0, &cfg));
        prop_assert!(r.rate >= 0.0);
        prop_assert!(r.trace.windows(2).all(|w| w[1].1 >= w[0].1 - 1e-12 * w[0].1.abs().max(1.0)));
        prop_assert_eq!(r.phase.is_some(), scen == Scenario::Coherent);
    }

    #[test]
    fn solver_is_not_beaten_by_a_coarse_lattice(
        seed in any::<u64>(), ibar in 0.0..10.0f64, scen in prop::sample::select(Scenario::ALL.to_vec()),
    ) {
        let cfg = config(1, 0.001, ibar);
        let ch = sample_channels(&cfg, seed);
        let r = solve_relay(&ch, 0, &cfg, scen, &SolverOptions::default()).unwrap();
        let o = brute_force(&ch, 0, &cfg, scen, 41).unwrap();
        prop_assert!(r.rate >= o.rate * (1.0 - 0.01), "solver {} vs lattice {}", r.rate, o.rate);
    }
}

#[test]
fn selection_takes_the_best_relay() {
    let cfg = config(6, 0.01, 6.0);
    for seed in 0..5 {
        let ch = sample_channels(&cfg, seed);
        for scen in Scenario::ALL {
            let all = solve(&ch, &cfg, scen, &SolverOptions::default()).unwrap();
            let best = all.relays.iter().map(|r| r.rate).fold(f64::NEG_INFINITY, f64::max);
            assert_eq!(all.rate(), best);
            assert_eq!(all.best().relay, all.selected);
            assert!(all.relays[..all.selected].iter().all(|r| r.rate < best));
        }
    }
}

#[test]
fn zero_cap_silences_the_network() {
    let cfg = NetworkConfig {
        i_bar_p: 0.0,
        ..config(2, 0.01, 0.0)
    };
    let ch = sample_channels(&cfg, 3);
    for scen in Scenario::ALL {
        let r = solve(&ch, &cfg, scen, &SolverOptions::default()).unwrap();
        assert_eq!(r.rate(), 0.0);
        assert_eq!(r.best().allocation, PowerAllocation::ZERO);
    }
}

#[test]
fn ideal_cancellation_objectives() {
    let cfg = config(1, 0.0, 8.0);
    let ch = sample_channels(&cfg, 11);
    assert!(matches!(
        alternate_optimize(&ch, 0, &cfg, Scenario::Noncoherent, &SolverOptions::default()),
        Err(fdcrn::Error::ZetaHatZero { .. })
    ));
    for objective in [Objective::ExactSinr, Objective::Surrogate] {
        let opts = SolverOptions {
            objective,
            ..SolverOptions::default()
        };
        for scen in [Scenario::Noncoherent, Scenario::Coherent] {
            let r = solve_zeta_zero(&ch, 0, &cfg, scen, &opts).unwrap();
            assert!(r.feasible && r.rate > 0.0);
        }
    }
}

#[test]
fn convexified_constraint_stays_feasible() {
    let opts = SolverOptions {
        constraint_model: ConstraintModel::Convexified,
        ..SolverOptions::default()
    };
    for seed in 0..10 {
        let cfg = config(1, 0.01, 4.0);
        let ch = sample_channels(&cfg, seed);
        let r = solve_relay(&ch, 0, &cfg, Scenario::Coherent, &opts).unwrap();
        assert!(r.feasible);
        assert!(Scenario::Coherent.is_feasible(r.allocation, &ch, 0, &cfg));
    }
}

#[test]
fn surrogate_objective_runs_for_every_scenario() {
    let opts = SolverOptions {
        objective: Objective::Surrogate,
        ..SolverOptions::default()
    };
    let cfg = config(3, 0.01, 6.0);
    let ch = sample_channels(&cfg, 5);
    for scen in Scenario::ALL {
        let r = solve(&ch, &cfg, scen, &opts).unwrap();
        assert!(r.best().feasible);
        assert!(r.rate() > 0.0);
    }
}
