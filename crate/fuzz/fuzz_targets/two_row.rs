#![no_main]

use libfuzzer_sys::fuzz_target;
use partcat::partition::Partition;

fuzz_target!(|data: &str| {
    if let Ok(p) = Partition::from_two_row(data) {
        let again = Partition::from_two_row(&p.to_string()).expect("printed partition parses");
        assert_eq!(again, p);
    }
});
