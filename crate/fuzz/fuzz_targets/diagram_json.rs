#![no_main]

use libfuzzer_sys::fuzz_target;
use stringfaces::pipedreams::PipeDream;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(d) = PipeDream::from_json_str(s) {
            let json = serde_json::to_string(&d).expect("diagrams serialize");
            assert_eq!(PipeDream::from_json_str(&json).unwrap(), d);
            assert_eq!(d.k_d().len(), d.len());
            let _ = d.kogan_word();
        }
    }
});
