#![no_main]

use libfuzzer_sys::fuzz_target;
use stringfaces::cartan_weyl::CartanType;
use stringfaces::parse::parse_epsilon;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        for (t, n) in [(CartanType::A, 3), (CartanType::C, 2), (CartanType::C, 3)] {
            if let Ok(eps) = parse_epsilon(s, t, n) {
                assert!(eps.validate(t, n).is_ok());
                assert!(eps.max() >= 0);
            }
        }
    }
});
