#![no_main]

use intbal::format::parse_graph_bytes;
use intbal::{integerize, Rational};
use libfuzzer_sys::fuzz_target;

// Any parsed file that is balanced with integer vertex weights must integerize.
fuzz_target!(|data: &[u8]| {
    let Ok(g) = parse_graph_bytes(data) else {
        return;
    };
    if g.graph().edge_count() > 256 {
        return;
    }
    let Ok(u) = g.check_balanced() else {
        return;
    };
    if !u.is_integral() {
        return;
    }
    let (out, report) = integerize(&g).expect("balanced integral input integerizes");
    assert!(out.weights().iter().all(Rational::is_integer));
    assert_eq!(out.check_balanced().expect("still balanced"), u);
    assert!(report.iterations <= report.initial_decimal_edges);
});
