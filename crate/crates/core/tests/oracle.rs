//! Closed forms against dense evolution at random parameter points.

use dipnet::closedform::{closed_channel, has_closed_form};
use dipnet::netmodel::dense_channel;
use dipnet::{Channel, DipolarParams, NetworkConfig, NetworkKind};
use proptest::prelude::*;

fn kind() -> impl Strategy<Value = NetworkKind> {
    prop_oneof![Just(NetworkKind::MM), Just(NetworkKind::WW), Just(NetworkKind::MW)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn closed_forms_match_dense(
        kind in kind(),
        x1 in 0.0..=1.0f64,
        x2 in 0.0..=1.0f64,
        tau in -20.0..20.0f64,
        eps in -1.0..1.0f64,
        bridge_tau in 0.0..10.0f64,
        bridge_eps in -0.5..0.5f64,
    ) {
        let cfg = NetworkConfig::new(kind, x1, x2).unwrap();
        let p = DipolarParams::new(tau, eps);
        let bridge = Some(DipolarParams::new(bridge_tau, bridge_eps));
        for ch in Channel::ALL.into_iter().filter(|&c| has_closed_form(c)) {
            let closed = closed_channel(&cfg, p, bridge, ch).unwrap().unwrap();
            let dense = dense_channel(&cfg, p, bridge, ch).unwrap();
            let d = closed.matrix().max_abs_diff(dense.matrix());
            prop_assert!(d < 1e-10, "channel {} deviates by {:e}", ch, d);
        }
    }

    #[test]
    fn channels_without_closed_forms_report_none(tau in 0.0..10.0f64, eps in -0.5..0.5f64) {
        let cfg = NetworkConfig::mm();
        let p = DipolarParams::new(tau, eps);
        for ch in [Channel::C34, Channel::C13, Channel::C24] {
            prop_assert!(closed_channel(&cfg, p, None, ch).unwrap().is_none());
        }
    }
}
