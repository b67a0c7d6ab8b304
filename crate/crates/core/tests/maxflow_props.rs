use cheeger_core::maxflow::{
    check_feasibility, cut_capacity, max_flow, min_cut, parse_dimacs, write_dimacs, Arc, Network,
};
use proptest::prelude::*;

fn network() -> impl Strategy<Value = Network<i64>> {
    (2usize..10)
        .prop_flat_map(|n| (Just(n), prop::collection::vec((0..n, 0..n, 0i64..=10), 0..30)))
        .prop_map(|(n, arcs)| {
            let arcs = arcs.into_iter().map(|(from, to, cap)| Arc { from, to, cap }).collect();
            Network::new(n, 0, n - 1, arcs).unwrap()
        })
}

fn as_real(net: &Network<i64>) -> Network<f64> {
    let arcs = net.arcs().iter().map(|a| Arc { from: a.from, to: a.to, cap: a.cap as f64 }).collect();
    Network::new(net.node_count(), net.source(), net.sink(), arcs).unwrap()
}

proptest! {
    #[test]
    fn solves_are_feasible_and_cuts_exclude_the_sink(net in network()) {
        let f = max_flow(&net);
        prop_assert!(check_feasibility(&net, &f).is_ok());
        let cut = min_cut(&net, &f).unwrap();
        prop_assert!(!cut.source_side[net.sink()]);
        prop_assert_eq!(cut_capacity(&net, &cut), f.value);
    }

    #[test]
    fn integer_capacities_give_integer_values(net in network()) {
        let real = as_real(&net);
        let f = max_flow(&real);
        prop_assert!(check_feasibility(&real, &f).is_ok());
        prop_assert_eq!(f.value, f.value.round());
        prop_assert_eq!(f.value, max_flow(&net).value as f64);
    }

    #[test]
    fn raising_a_capacity_never_lowers_the_value(net in network(), pick in 0usize..64, extra in 1i64..=10) {
        prop_assume!(!net.arcs().is_empty());
        let before = max_flow(&net).value;
        let mut arcs = net.arcs().to_vec();
        let k = pick % arcs.len();
        arcs[k].cap += extra;
        let raised = Network::new(net.node_count(), net.source(), net.sink(), arcs).unwrap();
        prop_assert!(max_flow(&raised).value >= before);
    }

    #[test]
    fn dimacs_round_trip(net in network()) {
        let back = parse_dimacs(&write_dimacs(&net)).unwrap();
        prop_assert_eq!(back, as_real(&net));
    }
}
