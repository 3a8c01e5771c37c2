#![no_main]

use intbal::format::{parse_graph_bytes, write_graph_file};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(g) = parse_graph_bytes(data) {
        let text = write_graph_file(&g);
        let again = parse_graph_bytes(text.as_bytes()).expect("written file re-parses");
        assert_eq!(g, again);
        assert_eq!(text, write_graph_file(&again));
    }
});
