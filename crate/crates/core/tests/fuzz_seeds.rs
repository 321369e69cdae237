//! The checked-in fuzz seeds must keep exercising the accepting paths.

use std::fs;
use std::path::PathBuf;

use stringfaces::cartan_weyl::{CartanType, RootDatum};
use stringfaces::parse::{parse_epsilon, parse_lambda, parse_w, parse_word};
use stringfaces::pipedreams::PipeDream;
use stringfaces::polyhedra::RationalPolytope;

fn seeds(target: &str) -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<(String, String)> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| {
            let path = e.unwrap().path();
            (path.file_name().unwrap().to_string_lossy().into_owned(), fs::read_to_string(&path).unwrap())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn json_seeds_parse() {
    for (name, s) in seeds("polytope_json") {
        let p = RationalPolytope::from_json_str(&s).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(RationalPolytope::from_json(&p.to_json()).unwrap(), p, "{name}");
    }
    for (name, s) in seeds("diagram_json") {
        PipeDream::from_json_str(&s).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}

#[test]
fn string_seeds_hit_both_outcomes() {
    let rds = [RootDatum::a(2), RootDatum::a(3), RootDatum::c(2), RootDatum::c(3)];
    let mut accepted = 0;
    for (_, s) in seeds("lambda") {
        accepted += (1..=3).filter(|&n| parse_lambda(&s, n).is_ok()).count();
    }
    assert!(accepted >= 3);
    for target in ["weyl_element", "word"] {
        let ok = seeds(target)
            .iter()
            .filter(|(_, s)| {
                rds.iter().any(|rd| if target == "word" { parse_word(s, rd).is_ok() } else { parse_w(s, rd).is_ok() })
            })
            .count();
        assert!(ok >= 3, "{target}");
    }
    let ok = seeds("epsilon")
        .iter()
        .filter(|(_, s)| [(CartanType::A, 3), (CartanType::C, 2), (CartanType::C, 3)].iter().any(|&(t, n)| parse_epsilon(s, t, n).is_ok()))
        .count();
    assert_eq!(ok, 4);
}
