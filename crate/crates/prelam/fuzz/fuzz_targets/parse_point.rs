#![no_main]
use libfuzzer_sys::fuzz_target;
use prelam::circle::CirclePoint;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(p) = CirclePoint::parse(s) {
            assert_eq!(CirclePoint::parse(&p.to_string()).unwrap(), p);
        }
    }
});
