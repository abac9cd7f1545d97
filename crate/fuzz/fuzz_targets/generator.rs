#![no_main]

use libfuzzer_sys::fuzz_target;
use partcat::parse::{parse_expression, parse_generators};

fuzz_target!(|data: &str| {
    if data.len() > 400 {
        return;
    }
    if let Ok(specs) = parse_generators(data) {
        for s in specs {
            let v = s.to_lincomb();
            if v.is_zero() {
                continue;
            }
            let again = parse_expression(&v.to_string(), &s.parameters).expect("printed generator parses");
            assert_eq!(again, v);
        }
    }
});
