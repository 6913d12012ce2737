#![no_main]
use libfuzzer_sys::fuzz_target;
use prelam::io::{parse_document, serialize_document};

// Accepted documents must survive a serialize/parse round trip.
fuzz_target!(|data: &[u8]| {
    if let Ok(doc) = parse_document(data) {
        let text = serialize_document(&doc.instance, &doc.metadata);
        let again = parse_document(text.as_bytes()).expect("serialized document reparses");
        assert_eq!(again.instance, doc.instance);
    }
});
