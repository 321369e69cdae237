#![no_main]

use libfuzzer_sys::fuzz_target;
use stringfaces::cartan_weyl::RootDatum;
use stringfaces::parse::parse_w;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        for rd in [RootDatum::a(3), RootDatum::c(3)] {
            if let Ok(w) = parse_w(s, &rd) {
                // Display gives a reduced word that names the same element
                assert_eq!(parse_w(&w.to_string(), &rd).unwrap(), w);
                assert_eq!(w.reduced_word().len(), w.length());
            }
        }
    }
});
