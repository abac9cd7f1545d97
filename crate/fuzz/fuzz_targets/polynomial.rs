#![no_main]

use libfuzzer_sys::fuzz_target;
use partcat::parse::parse_coeff;

fuzz_target!(|data: &str| {
    if data.len() > 200 {
        return;
    }
    let params = ["b".to_string(), "c".to_string()];
    if let Ok(c) = parse_coeff(data, &params) {
        let again = parse_coeff(&c.to_string(), &params).expect("printed coefficient parses");
        assert_eq!(again, c);
    }
});
