#![no_main]

use libfuzzer_sys::fuzz_target;
use stringfaces::parse::parse_lambda;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        for rank in 1..=4 {
            if let Ok(l) = parse_lambda(s, rank) {
                assert_eq!(l.rank(), rank);
                assert!(l.is_dominant());
                // the printed form parses back to the same weight
                assert_eq!(parse_lambda(&l.to_string(), rank).unwrap(), l);
            }
        }
    }
});
