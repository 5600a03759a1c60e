#![no_main]
use libfuzzer_sys::fuzz_target;
use port_tfidf_core::corpus::Corpus;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(corpus) = Corpus::from_json(text) {
            let again = Corpus::from_json(&corpus.to_json()).expect("rendered corpus must reparse");
            assert_eq!(corpus, again);
        }
    }
});
