#![no_main]
use libfuzzer_sys::fuzz_target;
use port_tfidf_core::synth::{labels_to_json, parse_labels};

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(labels) = parse_labels(text) {
            let again = parse_labels(&labels_to_json(&labels)).expect("rendered labels must reparse");
            assert_eq!(labels, again);
        }
    }
});
