//! The crystal `Z^∞_i` truncated to the first `N` coordinates, highest weight
//! crystals `B(λ)`, and their Demazure and opposite Demazure subcrystals.
//!
//! The operators `sigma`, `epsilon`, `f_op` and `e_op` act on Kashiwara embedding
//! coordinates. `generate_b_lambda` builds the crystal graph of `B(λ)` in those
//! coordinates and then reads off string parametrizations `Φ_i(b)` by greedy
//! raising along the word, which is their definition.

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::cartan_weyl::{
    check_longest_word, longest_element, standard_word, RootDatum, Weight, WeylElement,
};
use crate::error::{Error, Result};

/// A coordinate vector attached to a reduced word of the longest element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StringDatum {
    pub word: Vec<usize>,
    pub coords: Vec<i64>,
}

impl StringDatum {
    pub fn zero(word: &[usize]) -> Self {
        StringDatum { word: word.to_vec(), coords: vec![0; word.len()] }
    }

    pub fn new(word: &[usize], coords: Vec<i64>) -> Result<Self> {
        if coords.len() != word.len() {
            return Err(Error::InvalidInput(format!(
                "expected {} coordinates, got {}",
                word.len(),
                coords.len()
            )));
        }
        if coords.iter().any(|&a| a < 0) {
            return Err(Error::InvalidInput("coordinates must be nonnegative".into()));
        }
        Ok(StringDatum { word: word.to_vec(), coords })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HighestWeight {
    Infinity,
    Finite(Weight),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CrystalElementView {
    pub datum: StringDatum,
    pub highest_weight: HighestWeight,
}

impl CrystalElementView {
    pub fn at_infinity(datum: StringDatum) -> Self {
        CrystalElementView { datum, highest_weight: HighestWeight::Infinity }
    }

    pub fn with_weight(datum: StringDatum, lambda: Weight) -> Self {
        CrystalElementView { datum, highest_weight: HighestWeight::Finite(lambda) }
    }

    /// `-Σ a_k α_{i_k}`, plus `λ` for a finite highest weight.
    pub fn weight(&self, rd: &RootDatum) -> Weight {
        let mut wt = match &self.highest_weight {
            HighestWeight::Infinity => Weight::zero(rd.rank),
            HighestWeight::Finite(l) => l.clone(),
        };
        for (&i, &a) in self.datum.word.iter().zip(&self.datum.coords) {
            for k in 0..rd.rank {
                wt.0[k] -= a * rd.cartan[k][i - 1];
            }
        }
        wt
    }

    pub fn epsilon(&self, rd: &RootDatum, i: usize) -> i64 {
        epsilon(rd, &self.datum, i)
    }

    pub fn phi(&self, rd: &RootDatum, i: usize) -> i64 {
        self.epsilon(rd, i) + self.weight(rd).pair(i)
    }
}

/// `σ_k(a) = a_k + Σ_{l>k} c_{i_k,i_l} a_l` for 1-based `k`.
pub fn sigma(rd: &RootDatum, datum: &StringDatum, k: usize) -> i64 {
    let ik = datum.word[k - 1];
    let tail: i64 = (k..datum.word.len())
        .map(|l| rd.cartan[ik - 1][datum.word[l] - 1] * datum.coords[l])
        .sum();
    datum.coords[k - 1] + tail
}

/// Maximum of `σ_k` over positions carrying letter `i` and the (infinite) zero tail.
fn sigma_max(rd: &RootDatum, datum: &StringDatum, i: usize) -> (i64, Vec<usize>) {
    let mut best = 0;
    let mut positions = Vec::new();
    for k in 1..=datum.word.len() {
        if datum.word[k - 1] != i {
            continue;
        }
        let s = sigma(rd, datum, k);
        if s > best {
            best = s;
            positions.clear();
        }
        if s == best {
            positions.push(k);
        }
    }
    (best, positions)
}

/// `ε_i = σ^{(i)}`, never negative.
pub fn epsilon(rd: &RootDatum, datum: &StringDatum, i: usize) -> i64 {
    sigma_max(rd, datum, i).0
}

/// Lowering operator. At `∞` it always acts unless the minimal position of
/// `M^{(i)}` lies beyond the stored coordinates; for finite `λ` it returns
/// `None` when `φ_i = 0`.
pub fn f_op(rd: &RootDatum, view: &CrystalElementView, i: usize) -> Result<Option<CrystalElementView>> {
    rd.check_index(i)?;
    if let HighestWeight::Finite(_) = view.highest_weight {
        if view.phi(rd, i) <= 0 {
            return Ok(None);
        }
    }
    let (best, positions) = sigma_max(rd, &view.datum, i);
    let k = match positions.first() {
        Some(&k) => k,
        None => {
            return Err(Error::CorruptElement(format!(
                "f_{i} on {:?}: σ^({i}) = {best} is attained only beyond the word",
                view.datum.coords
            )))
        }
    };
    let mut out = view.clone();
    out.datum.coords[k - 1] += 1;
    Ok(Some(out))
}

/// Raising operator: `None` when `σ^{(i)} = 0`, otherwise decrements at `max M^{(i)}`.
pub fn e_op(rd: &RootDatum, view: &CrystalElementView, i: usize) -> Result<Option<CrystalElementView>> {
    rd.check_index(i)?;
    let (best, positions) = sigma_max(rd, &view.datum, i);
    if best == 0 {
        return Ok(None);
    }
    let k = *positions.last().expect("positive maximum is attained");
    let mut out = view.clone();
    out.datum.coords[k - 1] -= 1;
    Ok(Some(out))
}

/// The crystal graph of `B(λ)` together with string parametrizations.
#[derive(Clone, Debug)]
pub struct BLambda {
    pub word: Vec<usize>,
    pub lambda: Weight,
    /// Kashiwara embedding coordinates; node 0 is the highest weight element.
    pub nodes: Vec<Vec<i64>>,
    /// `strings[b] = Φ_i(b)`.
    pub strings: Vec<Vec<i64>>,
    /// `f[i-1][b]`, `e[i-1][b]`.
    pub f: Vec<Vec<Option<usize>>>,
    pub e: Vec<Vec<Option<usize>>>,
    pub lowest: usize,
    /// Set when the word is not `i_A`/`i_C`.
    pub experimental: bool,
}

/// Builds `B(λ)` by closure of the highest element under `f_op`.
///
/// For the standard words the result is compared against the lattice points of
/// the string polytope; a mismatch is reported as a theorem violation.
pub fn generate_b_lambda(rd: &RootDatum, word: &[usize], lambda: &Weight) -> Result<BLambda> {
    let b = build_b_lambda(rd, word, lambda)?;
    if !b.experimental {
        let poly = crate::polyhedra::string_polytope(rd, word, lambda)?;
        let points: BTreeSet<Vec<i64>> = poly.lattice_points()?.into_iter().collect();
        if points != b.string_set() {
            return Err(Error::TheoremViolation(format!(
                "string polytope lattice points differ from B({lambda}) ({} vs {})",
                points.len(),
                b.len()
            )));
        }
    }
    Ok(b)
}

/// Same as [`generate_b_lambda`] without the polytope cross-check.
pub fn build_b_lambda(rd: &RootDatum, word: &[usize], lambda: &Weight) -> Result<BLambda> {
    check_longest_word(rd, word)?;
    if lambda.rank() != rd.rank || !lambda.is_dominant() {
        return Err(Error::InvalidInput(format!("{lambda} is not a dominant weight of rank {}", rd.rank)));
    }
    let n = rd.rank;
    let zero = vec![0i64; word.len()];
    let mut nodes = vec![zero.clone()];
    let mut index: HashMap<Vec<i64>, usize> = HashMap::from([(zero, 0)]);
    let mut f: Vec<Vec<Option<usize>>> = vec![vec![None]; n];
    let mut e: Vec<Vec<Option<usize>>> = vec![vec![None]; n];
    let mut queue = VecDeque::from([0usize]);
    while let Some(b) = queue.pop_front() {
        let view = CrystalElementView::with_weight(
            StringDatum { word: word.to_vec(), coords: nodes[b].clone() },
            lambda.clone(),
        );
        for i in 1..=n {
            if let Some(next) = f_op(rd, &view, i)? {
                let c = next.datum.coords;
                let id = match index.get(&c) {
                    Some(&id) => id,
                    None => {
                        let id = nodes.len();
                        index.insert(c.clone(), id);
                        nodes.push(c);
                        for k in 0..n {
                            f[k].push(None);
                            e[k].push(None);
                        }
                        queue.push_back(id);
                        id
                    }
                };
                f[i - 1][b] = Some(id);
                e[i - 1][id] = Some(b);
            }
        }
    }
    let lows: Vec<usize> = (0..nodes.len()).filter(|&b| (0..n).all(|i| f[i][b].is_none())).collect();
    if lows.len() != 1 {
        return Err(Error::TheoremViolation(format!("B({lambda}) has {} lowest elements", lows.len())));
    }
    let mut out = BLambda {
        word: word.to_vec(),
        lambda: lambda.clone(),
        strings: Vec::new(),
        nodes,
        f,
        e,
        lowest: lows[0],
        experimental: word != standard_word(rd).as_slice(),
    };
    out.strings = (0..out.nodes.len()).map(|b| out.string_of(b)).collect::<Result<_>>()?;
    Ok(out)
}

impl BLambda {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    fn string_of(&self, mut b: usize) -> Result<Vec<i64>> {
        let mut a = Vec::with_capacity(self.word.len());
        for &i in &self.word {
            let mut count = 0;
            while let Some(up) = self.e[i - 1][b] {
                b = up;
                count += 1;
            }
            a.push(count);
        }
        if b != 0 {
            return Err(Error::Convention("greedy raising did not reach the highest element".into()));
        }
        Ok(a)
    }

    pub fn string_set(&self) -> BTreeSet<Vec<i64>> {
        self.strings.iter().cloned().collect()
    }

    pub fn strings_of(&self, nodes: &BTreeSet<usize>) -> BTreeSet<Vec<i64>> {
        nodes.iter().map(|&b| self.strings[b].clone()).collect()
    }

    fn close(&self, start: BTreeSet<usize>, arrows: &[Option<usize>]) -> BTreeSet<usize> {
        let mut out = start.clone();
        for b in start {
            let mut c = b;
            while let Some(d) = arrows[c] {
                out.insert(d);
                c = d;
            }
        }
        out
    }

    /// Node set of `B_w(λ)`.
    pub fn demazure_nodes(&self, w: &WeylElement) -> BTreeSet<usize> {
        self.demazure_nodes_word(&w.reduced_word())
    }

    /// `F_{a_1} ⋯ F_{a_l} {b_λ}` for a reduced word `(a_1,…,a_l)`.
    pub fn demazure_nodes_word(&self, word: &[usize]) -> BTreeSet<usize> {
        let mut set = BTreeSet::from([0usize]);
        for &i in word.iter().rev() {
            set = self.close(set, &self.f[i - 1]);
        }
        set
    }

    /// Node set of `B^w(λ)`, by raising closures from the lowest element along a
    /// reduced word of `w₀w⁻¹`.
    pub fn opposite_demazure_nodes(&self, rd: &RootDatum, w: &WeylElement) -> BTreeSet<usize> {
        let chain = longest_element(rd).compose(&w.inverse()).reduced_word();
        let mut set = BTreeSet::from([self.lowest]);
        for &i in &chain {
            set = self.close(set, &self.e[i - 1]);
        }
        set
    }

    pub fn demazure(&self, w: &WeylElement) -> BTreeSet<Vec<i64>> {
        self.strings_of(&self.demazure_nodes(w))
    }

    pub fn opposite_demazure(&self, rd: &RootDatum, w: &WeylElement) -> BTreeSet<Vec<i64>> {
        self.strings_of(&self.opposite_demazure_nodes(rd, w))
    }

    /// The elements `b` of the `i`-string through `start`, from its head down.
    pub fn i_string(&self, i: usize, start: usize) -> Vec<usize> {
        let mut b = start;
        while let Some(up) = self.e[i - 1][b] {
            b = up;
        }
        let mut out = vec![b];
        while let Some(d) = self.f[i - 1][b] {
            out.push(d);
            b = d;
        }
        out
    }
}

pub fn demazure_crystal(
    rd: &RootDatum,
    word: &[usize],
    w: &WeylElement,
    lambda: &Weight,
) -> Result<BTreeSet<Vec<i64>>> {
    Ok(generate_b_lambda(rd, word, lambda)?.demazure(w))
}

pub fn opposite_demazure_crystal(
    rd: &RootDatum,
    word: &[usize],
    w: &WeylElement,
    lambda: &Weight,
) -> Result<BTreeSet<Vec<i64>>> {
    Ok(generate_b_lambda(rd, word, lambda)?.opposite_demazure(rd, w))
}

/// `Φ_i(B_w(λ) ∩ B^v(λ))`; requires `v ≤ w`.
pub fn richardson_lattice_points(
    rd: &RootDatum,
    word: &[usize],
    v: &WeylElement,
    w: &WeylElement,
    lambda: &Weight,
) -> Result<BTreeSet<Vec<i64>>> {
    if !crate::cartan_weyl::bruhat_leq(v, w) {
        return Err(Error::InvalidInput(format!("{v} is not below {w} in Bruhat order")));
    }
    let b = generate_b_lambda(rd, word, lambda)?;
    let lower = b.demazure_nodes(w);
    let upper = b.opposite_demazure_nodes(rd, v);
    Ok(b.strings_of(&lower.intersection(&upper).copied().collect()))
}

/// `t'_k = <λ, h_{i_k}> - t_k - Σ_{j>k} c_{i_k,i_j} t_j`.
pub fn lusztig_transform(rd: &RootDatum, datum: &StringDatum, lambda: &Weight) -> Vec<i64> {
    (1..=datum.word.len())
        .map(|k| lambda.pair(datum.word[k - 1]) - sigma(rd, datum, k))
        .collect()
}
