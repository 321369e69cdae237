//! Parsers for the textual inputs: λ, Weyl group elements, words and ε profiles.

use crate::cartan_weyl::{check_longest_word, standard_word, CartanType, RootDatum, Weight, WeylElement};
use crate::error::{Error, Result};
use crate::polyhedra::EpsilonProfile;

/// Longest accepted letter list; keeps hostile inputs cheap.
const MAX_LETTERS: usize = 4096;

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

fn int_list(s: &str) -> Result<Vec<i64>> {
    let s = s.trim().trim_start_matches('(').trim_end_matches(')');
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() > MAX_LETTERS {
        return Err(bad("list too long"));
    }
    parts
        .iter()
        .map(|p| p.trim().parse::<i64>().map_err(|_| bad(format!("{p:?} is not an integer"))))
        .collect()
}

/// `λ` as comma-separated coefficients `<λ, h_1>, …, <λ, h_n>`; must be dominant.
pub fn parse_lambda(s: &str, rank: usize) -> Result<Weight> {
    let v = int_list(s)?;
    if v.len() != rank {
        return Err(bad(format!("λ needs {rank} coefficients, got {}", v.len())));
    }
    if v.iter().any(|&x| x < 0) {
        return Err(bad(format!("λ = {s:?} is not dominant")));
    }
    if v.iter().any(|&x| x > 1_000_000) {
        return Err(bad("λ coefficient too large"));
    }
    Ok(Weight(v))
}

/// A list of letters in `1..=n`, either `1,2,1` or `s1s2s1`.
pub fn parse_letters(s: &str, rank: usize) -> Result<Vec<usize>> {
    let t = s.trim();
    if t.is_empty() || t == "e" {
        return Ok(Vec::new());
    }
    let raw: Vec<i64> = if t.starts_with('s') {
        let parts: Vec<&str> = t.split('s').skip(1).collect();
        if parts.len() > MAX_LETTERS {
            return Err(bad("word too long"));
        }
        parts
            .iter()
            .map(|p| p.trim().parse::<i64>().map_err(|_| bad(format!("bad letter s{p}"))))
            .collect::<Result<_>>()?
    } else {
        int_list(t)?
    };
    raw.into_iter()
        .map(|x| {
            if x >= 1 && x as u64 <= rank as u64 {
                Ok(x as usize)
            } else {
                Err(bad(format!("letter {x} is not in 1..={rank}")))
            }
        })
        .collect()
}

/// A Weyl group element given by letters applied left to right; need not be reduced.
pub fn parse_w(s: &str, rd: &RootDatum) -> Result<WeylElement> {
    rd.from_word(&parse_letters(s, rd.rank)?)
}

/// A reduced word of `w₀`; `iA`, `iC` or `standard` select the distinguished word.
pub fn parse_word(s: &str, rd: &RootDatum) -> Result<Vec<usize>> {
    let t = s.trim();
    if matches!(t, "standard" | "iA" | "iC" | "i_A" | "i_C") {
        let want = match rd.cartan_type {
            CartanType::A => t.ends_with('A') || t == "standard",
            CartanType::C => t.ends_with('C') || t == "standard",
        };
        if !want {
            return Err(bad(format!("{t} does not belong to type {}", rd.cartan_type)));
        }
        return Ok(standard_word(rd));
    }
    let word = parse_letters(t, rd.rank)?;
    check_longest_word(rd, &word)?;
    Ok(word)
}

/// `zero`, `default`, or the chain of values: `ε_1,…,ε_n` for A and
/// `ε'_1,ε_2,ε'_2,…,ε_n,ε'_n` for C.
pub fn parse_epsilon(s: &str, cartan_type: CartanType, n: usize) -> Result<EpsilonProfile> {
    let t = s.trim();
    let eps = match t {
        "zero" | "0" => EpsilonProfile::zero(cartan_type, n),
        "default" => EpsilonProfile::default_for(cartan_type, n),
        _ => {
            let v = int_list(t)?;
            if v.iter().any(|x| x.abs() > 1_000_000) {
                return Err(bad("ε value too large"));
            }
            match cartan_type {
                CartanType::A => EpsilonProfile::A(v),
                CartanType::C => {
                    if v.len() + 1 != 2 * n {
                        return Err(bad(format!("type C ε needs {} values", 2 * n - 1)));
                    }
                    let eps_prime = v.iter().step_by(2).copied().collect();
                    let eps = v.iter().skip(1).step_by(2).copied().collect();
                    EpsilonProfile::C { eps, eps_prime }
                }
            }
        }
    };
    eps.validate(cartan_type, n)?;
    Ok(eps)
}
