#![no_main]
use libfuzzer_sys::fuzz_target;
use prelam::io::{map_table_to_json, parse_map_table};

fuzz_target!(|data: &[u8]| {
    if let Ok(table) = parse_map_table(data) {
        let text = serde_json::to_vec(&map_table_to_json(&table)).unwrap();
        parse_map_table(&text).expect("serialized table reparses");
    }
});
