#![no_main]

use libfuzzer_sys::fuzz_target;
use stringfaces::polyhedra::RationalPolytope;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(p) = RationalPolytope::from_json_str(s) {
            let again = RationalPolytope::from_json(&p.to_json()).expect("own JSON parses");
            assert_eq!(again, p);
            if p.ambient_dim <= 3 && p.num_inequalities() <= 12 {
                let _ = p.is_feasible(&Default::default());
            }
        }
    }
});
