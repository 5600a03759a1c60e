#![no_main]
use libfuzzer_sys::fuzz_target;
use port_tfidf_core::record::{parse_record, RecordFormat};

fuzz_target!(|data: &[u8]| {
    if let Ok(line) = std::str::from_utf8(data) {
        // must never panic; accepted records must survive a roundtrip
        if let Ok(record) = parse_record(line, RecordFormat::Ndjson) {
            let again = parse_record(&record.to_ndjson(), RecordFormat::Ndjson)
                .expect("rendered record must reparse");
            assert_eq!(record, again);
        }
    }
});
