#![no_main]

use libfuzzer_sys::fuzz_target;
use stringfaces::cartan_weyl::{is_reduced_word, RootDatum};
use stringfaces::parse::parse_word;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        for rd in [RootDatum::a(3), RootDatum::c(2), RootDatum::c(3)] {
            if let Ok(word) = parse_word(s, &rd) {
                assert_eq!(word.len(), rd.num_positive_roots());
                assert!(is_reduced_word(rd.cartan_type, rd.rank, &word));
            }
        }
    }
});
