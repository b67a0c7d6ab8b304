#![no_main]

use cheeger_core::maxflow::{check_feasibility, cut_capacity, max_flow, min_cut, parse_dimacs, write_dimacs};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(net) = parse_dimacs(text) else { return };
    let again = parse_dimacs(&write_dimacs(&net)).expect("written network parses");
    assert_eq!(again.node_count(), net.node_count());
    assert_eq!(again.arcs().len(), net.arcs().len());
    if net.node_count() > 512 || net.arcs().len() > 4096 {
        return;
    }
    let flow = max_flow(&net);
    check_feasibility(&net, &flow).expect("max flow is feasible");
    let cut = min_cut(&net, &flow).expect("residual cut matches the flow");
    let cap = cut_capacity(&net, &cut);
    assert!((cap - flow.value).abs() <= 1e-9 * cap.abs().max(1.0));
});
