mod common;

use fdcrn::model::*;
use proptest::prelude::*;

proptest! {
    #[test]
    fn interference_bracket_collapses(link in common::link(), ps in 0.0..100.0f64, pr in 0.0..100.0f64, zeta in 0.0..1.0f64) {
        let c = common::config(zeta);
        let a = PowerAllocation::new(ps, pr);
        let short = interference_noncoh(a, &link, &c);
        let long = interference_noncoh_expanded(a, &link, &c);
        prop_assert!((short - long).abs() <= 1e-9 * short.max(1.0));
    }

    #[test]
    fn rate_is_nonnegative_and_grows_with_source_power(
        link in common::link(), ps in 0.0..100.0f64, pr in 0.0..100.0f64, zeta in 0.0..1.0f64, extra in 0.0..10.0f64,
    ) {
        let c = common::config(zeta);
        let r0 = rate_exact(PowerAllocation::new(ps, pr), &link, &c);
        let r1 = rate_exact(PowerAllocation::new(ps + extra, pr), &link, &c);
        prop_assert!(r0 >= 0.0);
        prop_assert!(r1 >= r0 - 1e-12);
    }

    #[test]
    fn surrogate_bounds_the_exact_sinr(
        link in common::link(), ps in common::log_range(1e-3, 1e3), pr in common::log_range(1e-3, 1e3), zeta in 1e-4..1.0f64,
    ) {
        let c = common::config(zeta);
        let a = PowerAllocation::new(ps, pr);
        let s = rate_noncoh_obj(a, &link, &c, 0).unwrap();
        prop_assert!(s >= sinr_exact(a, &link, &c) * (1.0 - 1e-12));
        let coh = rate_coh_obj(SqrtPower::from(a), &link, &c, 0).unwrap();
        prop_assert!((coh - s).abs() <= 1e-9 * s.max(1e-300));
    }

    #[test]
    fn gain_matches_its_definition(link in common::link(), ps in 0.0..100.0f64, pr in 0.0..100.0f64, zeta in 0.0..1.0f64) {
        let c = common::config(zeta);
        let a = PowerAllocation::new(ps, pr);
        let g = relay_gain(a, &link, &c);
        let expect = (ps * link.g_sr() + zeta * pr * link.g_rr() + c.sigma2_relay).powf(-0.5);
        prop_assert!((g - expect).abs() <= 1e-12 * expect);
        prop_assert_eq!(derived(a, &link, &c).zeta_hat, zeta * link.g_rr());
    }

    #[test]
    fn db_round_trips(x in -60.0..60.0f64) {
        prop_assert!((linear_to_db(db_to_linear(x)) - x).abs() < 1e-10);
    }

    #[test]
    fn channel_draws_are_reproducible(seed in any::<u64>(), k in 1usize..12) {
        let c = NetworkConfig { num_relays: k, ..NetworkConfig::default() };
        let a = sample_channels(&c, seed);
        let b = sample_channels(&c, seed);
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(a.digest(), b.digest());
        prop_assert_eq!(a.num_relays(), k);
        prop_assert_ne!(a.digest(), sample_channels(&c, seed.wrapping_add(1)).digest());
    }
}
