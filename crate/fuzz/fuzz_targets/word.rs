#![no_main]

use libfuzzer_sys::fuzz_target;
use partcat::partition::Partition;

fuzz_target!(|data: &str| {
    if let Ok(p) = Partition::from_word(data) {
        let again = Partition::from_word(&p.to_word()).expect("printed word parses");
        assert_eq!(again, p);
    }
});
