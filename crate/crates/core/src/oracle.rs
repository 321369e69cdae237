//! Independent checks: the Weyl dimension formula, Demazure characters through
//! isobaric divided differences, and Schubert structure constants through
//! BGG divided differences on polynomial functions of the weight space.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use crate::cartan_weyl::{longest_element, RootDatum, Weight, WeylElement};
use crate::error::{Error, Result};
use crate::linalg::{self, q, Q};

/// `∏_{α>0} (λ+ρ, α) / (ρ, α)`.
pub fn weyl_dimension(rd: &RootDatum, lambda: &Weight) -> Result<u64> {
    if lambda.rank() != rd.rank || !lambda.is_dominant() {
        return Err(Error::InvalidInput(format!("{lambda} is not dominant of rank {}", rd.rank)));
    }
    let shifted = lambda.add(&rd.rho);
    let mut r = Q::one();
    for beta in &rd.positive_roots {
        r = r * q(rd.weight_root_inner(&shifted, beta)) / q(rd.weight_root_inner(&rd.rho, beta));
    }
    linalg::to_i64(&r)
        .map(|v| v as u64)
        .ok_or_else(|| Error::Convention(format!("Weyl dimension {r} is not an integer")))
}

/// `∏_{α>0} (λ, α) / (ρ, α)`: the volume of the string polytope.
pub fn weyl_volume(rd: &RootDatum, lambda: &Weight) -> Q {
    rd.positive_roots.iter().fold(Q::one(), |acc, beta| {
        acc * q(rd.weight_root_inner(lambda, beta)) / q(rd.weight_root_inner(&rd.rho, beta))
    })
}

/// Finite integer combination of formal exponentials `e^μ`.
pub type CharacterElement = BTreeMap<Weight, i64>;

fn add_term(ch: &mut CharacterElement, mu: Weight, c: i64) {
    let e = ch.entry(mu.clone()).or_insert(0);
    *e += c;
    if *e == 0 {
        ch.remove(&mu);
    }
}

/// Isobaric Demazure operator `π_i`.
pub fn demazure_operator(rd: &RootDatum, ch: &CharacterElement, i: usize) -> CharacterElement {
    let alpha = rd.simple_root_weight(i);
    let mut out = CharacterElement::new();
    for (mu, &c) in ch {
        let m = mu.pair(i);
        if m >= 0 {
            for k in 0..=m {
                add_term(&mut out, mu.add(&alpha.scale(-k)), c);
            }
        } else if m < -1 {
            for k in 1..=(-m - 1) {
                add_term(&mut out, mu.add(&alpha.scale(k)), -c);
            }
        }
    }
    out
}

/// Demazure character of `B_w(λ)` along a reduced word of `w`.
pub fn demazure_character_word(rd: &RootDatum, word: &[usize], lambda: &Weight) -> CharacterElement {
    let mut ch = CharacterElement::from([(lambda.clone(), 1)]);
    for &i in word.iter().rev() {
        ch = demazure_operator(rd, &ch, i);
    }
    ch
}

pub fn demazure_character(rd: &RootDatum, w: &WeylElement, lambda: &Weight) -> CharacterElement {
    demazure_character_word(rd, &w.reduced_word(), lambda)
}

pub fn character_dimension(ch: &CharacterElement) -> i64 {
    ch.values().sum()
}

/// Polynomial with rational coefficients in the fundamental weights `ω_1, …, ω_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightPolynomial {
    pub nvars: usize,
    pub terms: BTreeMap<Vec<u32>, Q>,
}

impl WeightPolynomial {
    pub fn zero(nvars: usize) -> Self {
        WeightPolynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Q) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    /// `Σ coeffs[k] ω_{k+1}`.
    pub fn linear(coeffs: &[Q]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(n);
        for (k, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut e = vec![0; n];
                e[k] = 1;
                p.terms.insert(e, c.clone());
            }
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, e: Vec<u32>, c: Q) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e.clone()).or_insert_with(Q::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut out = Self::zero(self.nvars);
        if !c.is_zero() {
            for (e, x) in &self.terms {
                out.terms.insert(e.clone(), x * c);
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn constant_term(&self) -> Q {
        self.terms.get(&vec![0; self.nvars]).cloned().unwrap_or_else(Q::zero)
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Substitutes `ω_i ↦ form` where `form` is a linear form.
    fn substitute(&self, i: usize, form: &Self) -> Self {
        let mut powers = vec![Self::constant(self.nvars, Q::one())];
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let d = e[i] as usize;
            while powers.len() <= d {
                let next = powers.last().expect("nonempty").mul(form);
                powers.push(next);
            }
            let mut rest = e.clone();
            rest[i] = 0;
            let mono = WeightPolynomial { nvars: self.nvars, terms: BTreeMap::from([(rest, c.clone())]) };
            out = out.add(&mono.mul(&powers[d]));
        }
        out
    }

    /// `s_i f`, where `s_i ω_j = ω_j - δ_{ij} α_i`.
    pub fn reflect(&self, rd: &RootDatum, i: usize) -> Self {
        let mut coeffs: Vec<Q> = (0..rd.rank).map(|k| q(-rd.cartan[k][i - 1])).collect();
        coeffs[i - 1] += Q::one();
        self.substitute(i - 1, &Self::linear(&coeffs))
    }

    /// Exact division by a linear form; errors if it leaves a remainder.
    pub fn divide_linear(&self, form: &Self) -> Result<Self> {
        let lead = (0..self.nvars)
            .find(|&k| {
                let mut e = vec![0; self.nvars];
                e[k] = 1;
                form.terms.contains_key(&e)
            })
            .ok_or_else(|| Error::InvalidInput("division by a constant form".into()))?;
        let mut e = vec![0; self.nvars];
        e[lead] = 1;
        let lc = form.terms[&e].clone();
        // monomial order: lex with `lead` first
        let key = |e: &Vec<u32>| {
            let mut k = vec![e[lead]];
            k.extend(e.iter().enumerate().filter(|&(j, _)| j != lead).map(|(_, &x)| x));
            k
        };
        let mut rem = self.clone();
        let mut quot = Self::zero(self.nvars);
        while let Some((m, c)) = rem.terms.iter().max_by_key(|(e, _)| key(e)).map(|(e, c)| (e.clone(), c.clone())) {
            if m[lead] == 0 {
                return Err(Error::Convention("polynomial is not divisible by the simple root".into()));
            }
            let mut mm = m.clone();
            mm[lead] -= 1;
            let t = WeightPolynomial { nvars: self.nvars, terms: BTreeMap::from([(mm, &c / &lc)]) };
            quot = quot.add(&t);
            rem = rem.sub(&t.mul(form));
        }
        Ok(quot)
    }

    /// `∂_i f = (f - s_i f) / α_i`.
    pub fn divided_difference(&self, rd: &RootDatum, i: usize) -> Result<Self> {
        let diff = self.sub(&self.reflect(rd, i));
        diff.divide_linear(&simple_root_form(rd, i))
    }

    /// `∂_{a_1} ⋯ ∂_{a_r} f` for a word `(a_1, …, a_r)`.
    pub fn divided_difference_word(&self, rd: &RootDatum, word: &[usize]) -> Result<Self> {
        let mut f = self.clone();
        for &i in word.iter().rev() {
            f = f.divided_difference(rd, i)?;
        }
        Ok(f)
    }
}

fn simple_root_form(rd: &RootDatum, i: usize) -> WeightPolynomial {
    WeightPolynomial::linear(&(0..rd.rank).map(|k| q(rd.cartan[k][i - 1])).collect::<Vec<_>>())
}

fn root_form(rd: &RootDatum, beta: &[i64]) -> WeightPolynomial {
    let coeffs: Vec<Q> = (0..rd.rank)
        .map(|k| q((0..rd.rank).map(|j| beta[j] * rd.cartan[k][j]).sum()))
        .collect();
    WeightPolynomial::linear(&coeffs)
}

pub type SchubertExpansion = BTreeMap<WeylElement, i64>;

/// Schubert class representatives `P_w = ∂_{w⁻¹w₀} P_{w₀}` with `P_{w₀} = ∏α / |W|`.
pub struct Bgg {
    pub rd: RootDatum,
    pub elements: Vec<WeylElement>,
    pub reps: HashMap<WeylElement, WeightPolynomial>,
}

impl Bgg {
    pub fn new(rd: &RootDatum) -> Result<Self> {
        let n = rd.rank;
        let mut top = WeightPolynomial::constant(n, Q::one());
        for beta in &rd.positive_roots {
            top = top.mul(&root_form(rd, beta));
        }
        let top = top.scale(&(Q::one() / q(rd.group_order() as i64)));
        let w0 = longest_element(rd);
        let elements = rd.all_elements();
        let mut reps = HashMap::new();
        for w in &elements {
            let u = w.inverse().compose(&w0);
            reps.insert(w.clone(), top.divided_difference_word(rd, &u.reduced_word())?);
        }
        let bgg = Bgg { rd: rd.clone(), elements, reps };
        bgg.check_duality()?;
        Ok(bgg)
    }

    /// Constant term of `∂_x P_w` must be `δ_{x,w}` when lengths agree.
    fn check_duality(&self) -> Result<()> {
        for w in &self.elements {
            for x in self.elements.iter().filter(|x| x.length() == w.length()) {
                let v = self.reps[w].divided_difference_word(&self.rd, &x.reduced_word())?.constant_term();
                let expect = if x == w { Q::one() } else { Q::zero() };
                if v != expect {
                    return Err(Error::Convention(format!("<∂_{x}, P_{w}> = {v}")));
                }
            }
        }
        Ok(())
    }

    /// Coefficients of `P_w` in the expansion of `f` (homogeneous of degree `d`).
    pub fn expand(&self, f: &WeightPolynomial, d: usize) -> Result<SchubertExpansion> {
        let mut out = SchubertExpansion::new();
        for w in self.elements.iter().filter(|w| w.length() == d) {
            let c = f.divided_difference_word(&self.rd, &w.reduced_word())?.constant_term();
            let c = linalg::to_i64(&c)
                .ok_or_else(|| Error::Convention(format!("non-integral coefficient {c} at {w}")))?;
            if c != 0 {
                out.insert(w.clone(), c);
            }
        }
        Ok(out)
    }

    /// `c_{u,v}^w` for all `w`.
    pub fn structure_constants(&self, u: &WeylElement, v: &WeylElement) -> Result<SchubertExpansion> {
        let d = u.length() + v.length();
        if d > self.rd.num_positive_roots() {
            return Ok(SchubertExpansion::new());
        }
        self.expand(&self.reps[u].mul(&self.reps[v]), d)
    }
}

pub fn bgg_structure_constants(rd: &RootDatum, u: &WeylElement, v: &WeylElement) -> Result<SchubertExpansion> {
    Bgg::new(rd)?.structure_constants(u, v)
}
