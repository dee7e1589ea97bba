#![no_main]

use ddg_core::corpus::parse_corpus;
use ddg_core::graph6;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let text = String::from_utf8_lossy(data);
    for entry in parse_corpus(&text).into_iter().flatten() {
        let g = graph6::decode(&entry.graph6).expect("entries carry valid graph6");
        assert_eq!(g.order(), entry.order);
    }
});
