#![no_main]
use libfuzzer_sys::fuzz_target;
use port_tfidf_core::synth::ScenarioSpec;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        // from_json validates; accepted specs must survive a roundtrip
        if let Ok(spec) = ScenarioSpec::from_json(text) {
            let again = ScenarioSpec::from_json(&spec.to_json()).expect("rendered spec must reparse");
            assert_eq!(spec, again);
        }
    }
});
