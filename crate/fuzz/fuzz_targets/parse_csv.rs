#![no_main]
use libfuzzer_sys::fuzz_target;
use port_tfidf_core::record::{parse_record, RecordFormat};

fuzz_target!(|data: &[u8]| {
    if let Ok(line) = std::str::from_utf8(data) {
        let _ = parse_record(line, RecordFormat::Csv);
    }
});
