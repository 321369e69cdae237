//! Root data and Weyl groups for types A_n and C_n.
//!
//! Node labels: A_n is the usual chain; in C_n node 1 carries the long simple
//! root and the double edge joins nodes 1 and 2. Elements of the Weyl group
//! are stored as (signed) permutations in one-line notation.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, q, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CartanType {
    A,
    C,
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CartanType::A => write!(f, "A"),
            CartanType::C => write!(f, "C"),
        }
    }
}

impl FromStr for CartanType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(CartanType::A),
            "C" | "c" => Ok(CartanType::C),
            other => Err(Error::InvalidInput(format!("unknown Cartan type {other:?}"))),
        }
    }
}

/// Integral weight in the basis of fundamental weights: `coeffs[i-1] = <λ, h_i>`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i - 1] = 1;
        Weight(v)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    /// `<λ, h_i>` for 1-based `i`.
    pub fn pair(&self, i: usize) -> i64 {
        self.0[i - 1]
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    pub fn is_regular_dominant(&self) -> bool {
        self.0.iter().all(|&x| x > 0)
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|a| a * k).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootDatum {
    pub cartan_type: CartanType,
    pub rank: usize,
    /// `cartan[i][j] = c_{i+1,j+1} = <α_{j+1}, h_{i+1}>`.
    pub cartan: Vec<Vec<i64>>,
    /// Positive roots in the simple-root basis, sorted by height then lexicographically.
    pub positive_roots: Vec<Vec<i64>>,
    pub rho: Weight,
    /// Half squared lengths `(α_i, α_i)/2`; short roots have squared length 2.
    pub sym: Vec<i64>,
}

impl RootDatum {
    pub fn new(cartan_type: CartanType, rank: usize) -> Result<Self> {
        Self::with_cartan(cartan_type, rank, Self::default_cartan(cartan_type, rank)?)
    }

    pub fn a(rank: usize) -> Self {
        Self::new(CartanType::A, rank).expect("rank >= 1")
    }

    pub fn c(rank: usize) -> Self {
        Self::new(CartanType::C, rank).expect("rank >= 2")
    }

    pub fn default_cartan(cartan_type: CartanType, rank: usize) -> Result<Vec<Vec<i64>>> {
        let min = match cartan_type {
            CartanType::A => 1,
            CartanType::C => 2,
        };
        if rank < min {
            return Err(Error::InvalidInput(format!(
                "type {cartan_type} needs rank >= {min}, got {rank}"
            )));
        }
        let mut c = vec![vec![0i64; rank]; rank];
        for i in 0..rank {
            c[i][i] = 2;
            if i + 1 < rank {
                c[i][i + 1] = -1;
                c[i + 1][i] = -1;
            }
        }
        if cartan_type == CartanType::C {
            // node 1 long: <α_1, h_2> = -2
            c[1][0] = -2;
        }
        Ok(c)
    }

    /// Builds a datum from an explicit Cartan matrix (used to compare orientations).
    pub fn with_cartan(cartan_type: CartanType, rank: usize, cartan: Vec<Vec<i64>>) -> Result<Self> {
        if cartan.len() != rank || cartan.iter().any(|r| r.len() != rank) {
            return Err(Error::InvalidInput("Cartan matrix has the wrong shape".into()));
        }
        for i in 0..rank {
            if cartan[i][i] != 2 {
                return Err(Error::InvalidInput("Cartan diagonal must be 2".into()));
            }
            for j in 0..rank {
                if i != j {
                    let x = cartan[i][j];
                    if !(-2..=0).contains(&x) || ((x == 0) != (cartan[j][i] == 0)) {
                        return Err(Error::InvalidInput("invalid off-diagonal Cartan entry".into()));
                    }
                }
            }
        }
        let sym = symmetrizer(&cartan)?;
        let positive_roots = positive_roots(&cartan);
        Ok(RootDatum {
            cartan_type,
            rank,
            cartan,
            positive_roots,
            rho: Weight(vec![1; rank]),
            sym,
        })
    }

    /// `c_{i,j}` with 1-based indices.
    pub fn cij(&self, i: usize, j: usize) -> i64 {
        self.cartan[i - 1][j - 1]
    }

    /// Number of positive roots, which equals the length of the longest element.
    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots.len()
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.rank {
            Err(Error::IndexOutOfRange { index: i, rank: self.rank })
        } else {
            Ok(())
        }
    }

    /// `α_i` written in fundamental-weight coordinates.
    pub fn simple_root_weight(&self, i: usize) -> Weight {
        Weight((0..self.rank).map(|k| self.cartan[k][i - 1]).collect())
    }

    /// `<β, h_i>` for a root `β` given in the simple-root basis.
    pub fn root_pair(&self, beta: &[i64], i: usize) -> i64 {
        beta.iter().enumerate().map(|(j, m)| m * self.cartan[i - 1][j]).sum()
    }

    /// `(λ, β)` for a weight `λ` and a root `β` in the simple-root basis.
    pub fn weight_root_inner(&self, lambda: &Weight, beta: &[i64]) -> i64 {
        (0..self.rank).map(|j| lambda.0[j] * beta[j] * self.sym[j]).sum()
    }

    /// Writes a weight in the simple-root basis (rational coefficients).
    pub fn weight_to_root_basis(&self, mu: &Weight) -> Vec<Q> {
        let a = linalg::q_matrix(&self.cartan);
        let b: Vec<Q> = mu.0.iter().map(|&x| q(x)).collect();
        linalg::solve_unique(&a, &b).expect("Cartan matrix is invertible")
    }

    /// The W-invariant inner product on weights.
    pub fn w_inner(&self, lambda: &Weight, mu: &Weight) -> Q {
        let m = self.weight_to_root_basis(mu);
        let mut s = Q::zero();
        for j in 0..self.rank {
            s += q(lambda.0[j] * self.sym[j]) * &m[j];
        }
        s
    }

    /// `s_i(μ) = μ - <μ, h_i> α_i`.
    pub fn reflect_weight(&self, mu: &Weight, i: usize) -> Weight {
        let m = mu.0[i - 1];
        Weight((0..self.rank).map(|k| mu.0[k] - m * self.cartan[k][i - 1]).collect())
    }

    /// `w(μ)` computed along a reduced word of `w`.
    pub fn act_on_weight(&self, w: &WeylElement, mu: &Weight) -> Weight {
        let word = w.reduced_word();
        let mut out = mu.clone();
        for &i in word.iter().rev() {
            out = self.reflect_weight(&out, i);
        }
        out
    }

    pub fn identity(&self) -> WeylElement {
        WeylElement::identity(self.cartan_type, self.rank)
    }

    pub fn simple_reflection(&self, i: usize) -> Result<WeylElement> {
        self.check_index(i)?;
        Ok(self.identity().right_mul_simple(i))
    }

    pub fn from_word(&self, word: &[usize]) -> Result<WeylElement> {
        for &i in word {
            self.check_index(i)?;
        }
        Ok(WeylElement::from_word(self.cartan_type, self.rank, word))
    }

    /// Every element of the Weyl group sorted by length, then one-line notation.
    pub fn all_elements(&self) -> Vec<WeylElement> {
        let e = self.identity();
        let mut seen: BTreeSet<WeylElement> = BTreeSet::new();
        let mut queue = VecDeque::from([e.clone()]);
        seen.insert(e);
        while let Some(w) = queue.pop_front() {
            for i in 1..=self.rank {
                let v = w.left_mul_simple(i);
                if seen.insert(v.clone()) {
                    queue.push_back(v);
                }
            }
        }
        let mut all: Vec<WeylElement> = seen.into_iter().collect();
        all.sort_by_key(|w| (w.length(), w.perm.clone()));
        all
    }

    pub fn group_order(&self) -> usize {
        match self.cartan_type {
            CartanType::A => (1..=self.rank + 1).product(),
            CartanType::C => (1..=self.rank).product::<usize>() << self.rank,
        }
    }
}

fn symmetrizer(cartan: &[Vec<i64>]) -> Result<Vec<i64>> {
    let n = cartan.len();
    let mut d: Vec<Option<Q>> = vec![None; n];
    d[0] = Some(Q::one());
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..n {
            for j in 0..n {
                if i != j && cartan[i][j] != 0 {
                    if let (Some(di), None) = (d[i].clone(), d[j].clone()) {
                        // d_i c_ij = d_j c_ji
                        d[j] = Some(di * q(cartan[i][j]) / q(cartan[j][i]));
                        changed = true;
                    }
                }
            }
        }
    }
    let d: Vec<Q> = d
        .into_iter()
        .map(|x| x.ok_or_else(|| Error::InvalidInput("Dynkin diagram is disconnected".into())))
        .collect::<Result<_>>()?;
    let min = d.iter().min().cloned().expect("rank >= 1");
    d.iter()
        .map(|x| {
            let r = x / &min;
            linalg::to_i64(&r).ok_or_else(|| Error::Convention("non-integral symmetrizer".into()))
        })
        .collect()
}

fn positive_roots(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = cartan.len();
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut queue = VecDeque::new();
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        seen.insert(e.clone());
        queue.push_back(e);
    }
    while let Some(beta) = queue.pop_front() {
        for i in 0..n {
            let p: i64 = (0..n).map(|j| beta[j] * cartan[i][j]).sum();
            let mut r = beta.clone();
            r[i] -= p;
            if r.iter().all(|&x| x >= 0) && r.iter().any(|&x| x > 0) && seen.insert(r.clone()) {
                queue.push_back(r);
            }
        }
    }
    let mut roots: Vec<Vec<i64>> = seen.into_iter().collect();
    roots.sort_by_key(|r| (r.iter().sum::<i64>(), r.clone()));
    roots
}

/// A Weyl group element as a (signed) permutation in one-line notation.
///
/// Type A_n: a permutation of `1..=n+1`, `s_i = (i i+1)`.
/// Type C_n: a signed permutation of `1..=n`; `s_1` negates `1` and `s_k` swaps `k-1, k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WeylElement {
    pub cartan_type: CartanType,
    pub rank: usize,
    pub perm: Vec<i32>,
}

impl WeylElement {
    pub fn identity(cartan_type: CartanType, rank: usize) -> Self {
        let m = degree(cartan_type, rank);
        WeylElement {
            cartan_type,
            rank,
            perm: (1..=m as i32).collect(),
        }
    }

    pub fn from_word(cartan_type: CartanType, rank: usize, word: &[usize]) -> Self {
        let mut w = Self::identity(cartan_type, rank);
        for &i in word {
            w = w.right_mul_simple(i);
        }
        w
    }

    /// Builds an element from one-line notation, validating it.
    pub fn from_perm(cartan_type: CartanType, rank: usize, perm: Vec<i32>) -> Result<Self> {
        let m = degree(cartan_type, rank);
        if perm.len() != m {
            return Err(Error::InvalidInput(format!("expected {m} entries")));
        }
        let mut seen = vec![false; m + 1];
        for &x in &perm {
            let a = x.unsigned_abs() as usize;
            if a == 0 || a > m || seen[a] || (cartan_type == CartanType::A && x < 0) {
                return Err(Error::InvalidInput(format!("{perm:?} is not a valid permutation")));
            }
            seen[a] = true;
        }
        Ok(WeylElement { cartan_type, rank, perm })
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(k, &x)| x == k as i32 + 1)
    }

    fn apply_simple_to_value(&self, i: usize, x: i32) -> i32 {
        let a = x.abs();
        let s = x.signum();
        match self.cartan_type {
            CartanType::A => {
                let i = i as i32;
                if a == i {
                    i + 1
                } else if a == i + 1 {
                    i
                } else {
                    x
                }
            }
            CartanType::C => {
                if i == 1 {
                    if a == 1 {
                        -x
                    } else {
                        x
                    }
                } else {
                    let k = i as i32;
                    if a == k - 1 {
                        s * k
                    } else if a == k {
                        s * (k - 1)
                    } else {
                        x
                    }
                }
            }
        }
    }

    /// `s_i · w`.
    pub fn left_mul_simple(&self, i: usize) -> Self {
        let perm = self.perm.iter().map(|&x| self.apply_simple_to_value(i, x)).collect();
        WeylElement { perm, ..self.clone() }
    }

    /// `w · s_i`.
    pub fn right_mul_simple(&self, i: usize) -> Self {
        let mut perm = self.perm.clone();
        match self.cartan_type {
            CartanType::A => perm.swap(i - 1, i),
            CartanType::C => {
                if i == 1 {
                    perm[0] = -perm[0];
                } else {
                    perm.swap(i - 2, i - 1);
                }
            }
        }
        WeylElement { perm, ..self.clone() }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &WeylElement) -> Self {
        let perm = other
            .perm
            .iter()
            .map(|&x| {
                let y = self.perm[x.unsigned_abs() as usize - 1];
                if x < 0 {
                    -y
                } else {
                    y
                }
            })
            .collect();
        WeylElement { perm, ..self.clone() }
    }

    pub fn inverse(&self) -> Self {
        let mut perm = vec![0; self.perm.len()];
        for (k, &x) in self.perm.iter().enumerate() {
            let j = x.unsigned_abs() as usize - 1;
            perm[j] = if x < 0 { -(k as i32 + 1) } else { k as i32 + 1 };
        }
        WeylElement { perm, ..self.clone() }
    }

    fn act_on_vector(&self, v: &[i64]) -> Vec<i64> {
        let mut out = vec![0; v.len()];
        for (k, &x) in self.perm.iter().enumerate() {
            let j = x.unsigned_abs() as usize - 1;
            out[j] += if x < 0 { -v[k] } else { v[k] };
        }
        out
    }

    fn height(&self, v: &[i64]) -> i64 {
        let m = v.len() as i64;
        v.iter()
            .enumerate()
            .map(|(k, &x)| {
                let k = k as i64 + 1;
                match self.cartan_type {
                    CartanType::A => (m + 1 - k) * x,
                    CartanType::C => k * x,
                }
            })
            .sum()
    }

    pub fn length(&self) -> usize {
        positive_roots_euclidean(self.cartan_type, self.rank)
            .iter()
            .filter(|r| self.height(&self.act_on_vector(r)) < 0)
            .count()
    }

    /// `ℓ(s_i w) < ℓ(w)`.
    pub fn has_left_descent(&self, i: usize) -> bool {
        let r = simple_root_euclidean(self.cartan_type, self.rank, i);
        let inv = self.inverse();
        inv.height(&inv.act_on_vector(&r)) < 0
    }

    /// `ℓ(w s_i) < ℓ(w)`.
    pub fn has_right_descent(&self, i: usize) -> bool {
        let r = simple_root_euclidean(self.cartan_type, self.rank, i);
        self.height(&self.act_on_vector(&r)) < 0
    }

    pub fn left_descents(&self) -> Vec<usize> {
        (1..=self.rank).filter(|&i| self.has_left_descent(i)).collect()
    }

    /// The lexicographically smallest reduced word.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut w = self.clone();
        let mut word = Vec::new();
        while let Some(i) = (1..=self.rank).find(|&i| w.has_left_descent(i)) {
            word.push(i);
            w = w.left_mul_simple(i);
        }
        word
    }

    pub fn longest(cartan_type: CartanType, rank: usize) -> Self {
        let m = degree(cartan_type, rank);
        let perm = match cartan_type {
            CartanType::A => (1..=m as i32).rev().collect(),
            CartanType::C => (1..=m as i32).map(|x| -x).collect(),
        };
        WeylElement { cartan_type, rank, perm }
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let word = self.reduced_word();
        if word.is_empty() {
            return write!(f, "e");
        }
        let parts: Vec<String> = word.iter().map(|i| format!("s{i}")).collect();
        write!(f, "{}", parts.join(""))
    }
}

fn degree(cartan_type: CartanType, rank: usize) -> usize {
    match cartan_type {
        CartanType::A => rank + 1,
        CartanType::C => rank,
    }
}

fn simple_root_euclidean(cartan_type: CartanType, rank: usize, i: usize) -> Vec<i64> {
    let m = degree(cartan_type, rank);
    let mut v = vec![0; m];
    match cartan_type {
        CartanType::A => {
            v[i - 1] = 1;
            v[i] = -1;
        }
        CartanType::C => {
            if i == 1 {
                v[0] = 2;
            } else {
                v[i - 1] = 1;
                v[i - 2] = -1;
            }
        }
    }
    v
}

fn positive_roots_euclidean(cartan_type: CartanType, rank: usize) -> Vec<Vec<i64>> {
    let m = degree(cartan_type, rank);
    let mut out = Vec::new();
    for a in 0..m {
        for b in a + 1..m {
            let mut v = vec![0; m];
            match cartan_type {
                CartanType::A => {
                    v[a] = 1;
                    v[b] = -1;
                }
                CartanType::C => {
                    v[b] = 1;
                    v[a] = -1;
                }
            }
            out.push(v);
            if cartan_type == CartanType::C {
                let mut u = vec![0; m];
                u[a] = 1;
                u[b] = 1;
                out.push(u);
            }
        }
        if cartan_type == CartanType::C {
            let mut v = vec![0; m];
            v[a] = 2;
            out.push(v);
        }
    }
    out
}

/// Returns `s_i · w`.
pub fn simple_reflection_action(w: &WeylElement, i: usize) -> Result<WeylElement> {
    if i == 0 || i > w.rank {
        return Err(Error::IndexOutOfRange { index: i, rank: w.rank });
    }
    Ok(w.left_mul_simple(i))
}

/// All reduced words of `w`, by depth-first search over left descents.
pub fn all_reduced_words(w: &WeylElement) -> BTreeSet<Vec<usize>> {
    let mut memo: HashMap<WeylElement, BTreeSet<Vec<usize>>> = HashMap::new();
    reduced_words_memo(w, &mut memo)
}

fn reduced_words_memo(
    w: &WeylElement,
    memo: &mut HashMap<WeylElement, BTreeSet<Vec<usize>>>,
) -> BTreeSet<Vec<usize>> {
    if let Some(r) = memo.get(w) {
        return r.clone();
    }
    let mut out = BTreeSet::new();
    if w.is_identity() {
        out.insert(Vec::new());
    } else {
        for i in w.left_descents() {
            for tail in reduced_words_memo(&w.left_mul_simple(i), memo) {
                let mut word = Vec::with_capacity(tail.len() + 1);
                word.push(i);
                word.extend(tail);
                out.insert(word);
            }
        }
    }
    memo.insert(w.clone(), out.clone());
    out
}

pub fn longest_element(datum: &RootDatum) -> WeylElement {
    WeylElement::longest(datum.cartan_type, datum.rank)
}

/// `i*` defined by `w₀(α_i) = -α_{i*}`.
pub fn star_involution(datum: &RootDatum, i: usize) -> Result<usize> {
    datum.check_index(i)?;
    let w0 = longest_element(datum);
    let image = w0.act_on_vector(&simple_root_euclidean(datum.cartan_type, datum.rank, i));
    let neg: Vec<i64> = image.iter().map(|x| -x).collect();
    (1..=datum.rank)
        .find(|&j| simple_root_euclidean(datum.cartan_type, datum.rank, j) == neg)
        .ok_or_else(|| Error::Convention("w0 does not permute the negative simple roots".into()))
}

/// Bruhat order via the lifting property.
pub fn bruhat_leq(v: &WeylElement, w: &WeylElement) -> bool {
    if v.length() > w.length() {
        return false;
    }
    if w.is_identity() {
        return v.is_identity();
    }
    let s = w.left_descents()[0];
    if v.has_left_descent(s) {
        bruhat_leq(&v.left_mul_simple(s), &w.left_mul_simple(s))
    } else {
        bruhat_leq(v, &w.left_mul_simple(s))
    }
}

pub fn is_reduced_word(cartan_type: CartanType, rank: usize, word: &[usize]) -> bool {
    WeylElement::from_word(cartan_type, rank, word).length() == word.len()
}

/// Checks that `word` is a reduced word of the longest element.
pub fn check_longest_word(datum: &RootDatum, word: &[usize]) -> Result<()> {
    for &i in word {
        datum.check_index(i)?;
    }
    let n = datum.num_positive_roots();
    let w = datum.from_word(word)?;
    if word.len() != n || w != longest_element(datum) {
        return Err(Error::NotLongestWord(word.to_vec()));
    }
    Ok(())
}

/// `R(i, w)`: increasing position sequences (1-based) of `i` whose letters form a reduced word of `w`.
pub fn compatible_subsets(datum: &RootDatum, word: &[usize], w: &WeylElement) -> Result<Vec<Vec<usize>>> {
    check_longest_word(datum, word)?;
    let target = w.length();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    subsets_rec(word, w, target, 0, &datum.identity(), &mut chosen, &mut out);
    Ok(out)
}

fn subsets_rec(
    word: &[usize],
    w: &WeylElement,
    target: usize,
    start: usize,
    prefix: &WeylElement,
    chosen: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if chosen.len() == target {
        if prefix == w {
            out.push(chosen.clone());
        }
        return;
    }
    let need = target - chosen.len();
    for pos in start..word.len() {
        if word.len() - pos < need {
            break;
        }
        let next = prefix.right_mul_simple(word[pos]);
        if next.length() != chosen.len() + 1 {
            continue;
        }
        let rest = next.inverse().compose(w);
        if rest.length() != target - chosen.len() - 1 {
            continue;
        }
        chosen.push(pos + 1);
        subsets_rec(word, w, target, pos + 1, &next, chosen, out);
        chosen.pop();
    }
}

/// The reduced word `i_A = (1, 2,1, 3,2,1, …, n,…,1)`.
pub fn word_a(n: usize) -> Vec<usize> {
    (1..=n).flat_map(|m| (1..=m).rev()).collect()
}

/// The reduced word `i_C = (1, 2,1,2, 3,2,1,2,3, …)`.
pub fn word_c(n: usize) -> Vec<usize> {
    (1..=n)
        .flat_map(|m| (1..=m).rev().chain(2..=m))
        .collect()
}

/// The distinguished word of the given type: `i_A` or `i_C`.
pub fn standard_word(datum: &RootDatum) -> Vec<usize> {
    match datum.cartan_type {
        CartanType::A => word_a(datum.rank),
        CartanType::C => word_c(datum.rank),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute_bruhat(v: &WeylElement, w: &WeylElement) -> bool {
        let word = w.reduced_word();
        let l = word.len();
        (0u32..(1 << l)).any(|mask| {
            let sub: Vec<usize> = (0..l).filter(|k| mask & (1 << k) != 0).map(|k| word[k]).collect();
            WeylElement::from_word(w.cartan_type, w.rank, &sub) == *v
        })
    }

    #[test]
    fn generator_and_involution() {
        let d = RootDatum::a(2);
        let s1 = simple_reflection_action(&d.identity(), 1).unwrap();
        assert_eq!(s1.perm, vec![2, 1, 3]);
        assert_eq!(s1.length(), 1);
        for w in d.all_elements() {
            for i in 1..=2 {
                let v = simple_reflection_action(&w, i).unwrap();
                assert_eq!(v.length().abs_diff(w.length()), 1);
                assert_eq!(simple_reflection_action(&v, i).unwrap(), w);
            }
        }
        assert!(simple_reflection_action(&d.identity(), 3).is_err());
    }

    #[test]
    fn composed_length_in_a4() {
        let d = RootDatum::a(4);
        let w = d.from_word(&[2, 3, 4, 3, 2, 1]).unwrap();
        // inversion count on the one-line notation
        let inv = (0..5)
            .flat_map(|a| (a + 1..5).map(move |b| (a, b)))
            .filter(|&(a, b)| w.perm[a] > w.perm[b])
            .count();
        assert_eq!(inv, 6);
        assert_eq!(w.length(), 6);
    }

    #[test]
    fn reduced_words_examples() {
        let d = RootDatum::a(3);
        let e = d.identity();
        assert_eq!(all_reduced_words(&e), BTreeSet::from([vec![]]));
        let w = d.from_word(&[1, 2, 1]).unwrap();
        assert_eq!(all_reduced_words(&w), BTreeSet::from([vec![1, 2, 1], vec![2, 1, 2]]));
        let a2 = RootDatum::a(2);
        let w0 = longest_element(&a2);
        // exhaustive search over all words of length 3
        let mut brute = BTreeSet::new();
        for a in 1..=2 {
            for b in 1..=2 {
                for c in 1..=2 {
                    if a2.from_word(&[a, b, c]).unwrap() == w0 {
                        brute.insert(vec![a, b, c]);
                    }
                }
            }
        }
        assert_eq!(brute.len(), 2);
        assert_eq!(all_reduced_words(&w0), brute);
    }

    #[test]
    fn reduced_words_are_reduced() {
        for d in [RootDatum::a(3), RootDatum::c(2), RootDatum::c(3)] {
            for w in d.all_elements() {
                let words = all_reduced_words(&w);
                assert!(!words.is_empty());
                for word in words {
                    assert_eq!(word.len(), w.length());
                    assert_eq!(d.from_word(&word).unwrap(), w);
                }
            }
        }
    }

    #[test]
    fn longest_elements() {
        let a2 = RootDatum::a(2);
        assert_eq!(longest_element(&a2).perm, vec![3, 2, 1]);
        for n in 2..=3 {
            let c = RootDatum::c(n);
            let max = c.all_elements().into_iter().max_by_key(|w| w.length()).unwrap();
            assert_eq!(max, longest_element(&c));
            assert!(max.perm.iter().enumerate().all(|(k, &x)| x == -(k as i32 + 1)));
        }
        let c3 = RootDatum::c(3);
        assert_eq!(longest_element(&c3).length(), 9);
        for d in [RootDatum::a(3), RootDatum::c(3)] {
            let w0 = longest_element(&d);
            assert_eq!(w0.length(), d.num_positive_roots());
            assert!((1..=d.rank).all(|i| w0.left_mul_simple(i).length() < w0.length()));
        }
    }

    #[test]
    fn group_orders_and_roots() {
        for (d, n, order) in [
            (RootDatum::a(2), 3, 6),
            (RootDatum::a(3), 6, 24),
            (RootDatum::c(2), 4, 8),
            (RootDatum::c(3), 9, 48),
        ] {
            assert_eq!(d.num_positive_roots(), n);
            assert_eq!(d.all_elements().len(), order);
            assert_eq!(d.group_order(), order);
        }
    }

    #[test]
    fn star() {
        let a3 = RootDatum::a(3);
        assert_eq!(star_involution(&a3, 1).unwrap(), 3);
        assert_eq!(star_involution(&a3, 2).unwrap(), 2);
        let c2 = RootDatum::c(2);
        assert_eq!(star_involution(&c2, 1).unwrap(), 1);
        for d in [RootDatum::a(4), RootDatum::c(3)] {
            for i in 1..=d.rank {
                let s = star_involution(&d, i).unwrap();
                assert_eq!(star_involution(&d, s).unwrap(), i);
            }
        }
    }

    #[test]
    fn bruhat_against_subwords() {
        let a2 = RootDatum::a(2);
        let s1 = a2.from_word(&[1]).unwrap();
        let s2 = a2.from_word(&[2]).unwrap();
        assert!(!bruhat_leq(&s1, &s2));
        for d in [RootDatum::a(3), RootDatum::c(2)] {
            let all = d.all_elements();
            let w0 = longest_element(&d);
            for v in &all {
                assert!(bruhat_leq(&d.identity(), v));
                assert!(bruhat_leq(v, &w0));
                for w in &all {
                    assert_eq!(bruhat_leq(v, w), brute_bruhat(v, w), "{v} <= {w}");
                }
            }
        }
    }

    #[test]
    fn compatible_subset_examples() {
        let a3 = RootDatum::a(3);
        let w = a3.from_word(&[1, 2, 1]).unwrap();
        let r = compatible_subsets(&a3, &[2, 1, 2, 3, 2, 1], &w).unwrap();
        assert_eq!(r, vec![vec![1, 2, 3], vec![1, 2, 5], vec![2, 3, 6], vec![2, 5, 6]]);
        let w = a3.from_word(&[3, 2]).unwrap();
        let r = compatible_subsets(&a3, &[1, 2, 3, 2, 1, 2], &w).unwrap();
        assert_eq!(r, vec![vec![3, 4], vec![3, 6]]);
        let r = compatible_subsets(&a3, &[1, 2, 3, 2, 1, 2], &a3.identity()).unwrap();
        assert_eq!(r, vec![Vec::<usize>::new()]);
        let r = compatible_subsets(&a3, &word_a(3), &longest_element(&a3)).unwrap();
        assert_eq!(r, vec![(1..=6).collect::<Vec<_>>()]);
        assert!(compatible_subsets(&a3, &[1, 2, 1], &w).is_err());
    }

    #[test]
    fn standard_words_are_longest() {
        for n in 1..=4 {
            check_longest_word(&RootDatum::a(n), &word_a(n)).unwrap();
        }
        for n in 2..=4 {
            check_longest_word(&RootDatum::c(n), &word_c(n)).unwrap();
        }
        assert_eq!(word_c(2), vec![1, 2, 1, 2]);
        assert_eq!(word_c(3), vec![1, 2, 1, 2, 3, 2, 1, 2, 3]);
        assert_eq!(word_a(3), vec![1, 2, 1, 3, 2, 1]);
    }

    #[test]
    fn cartan_data() {
        let c2 = RootDatum::c(2);
        assert_eq!(c2.cartan, vec![vec![2, -1], vec![-2, 2]]);
        assert_eq!(c2.sym, vec![2, 1]);
        let c3 = RootDatum::c(3);
        assert_eq!(c3.positive_roots.len(), 9);
        for d in [RootDatum::a(3), c3] {
            for i in 0..d.rank {
                for j in 0..d.rank {
                    assert_eq!(d.sym[i] * d.cartan[i][j], d.sym[j] * d.cartan[j][i]);
                }
            }
        }
    }

    proptest! {
        #[test]
        fn inner_product_is_invariant(
            idx in 0usize..48,
            l in proptest::collection::vec(-3i64..4, 3),
            m in proptest::collection::vec(-3i64..4, 3),
        ) {
            let d = RootDatum::c(3);
            let all = d.all_elements();
            let w = &all[idx % all.len()];
            let (l, m) = (Weight(l), Weight(m));
            let lhs = d.w_inner(&d.act_on_weight(w, &l), &d.act_on_weight(w, &m));
            prop_assert_eq!(lhs, d.w_inner(&l, &m));
        }

        #[test]
        fn inverse_and_compose(idx in 0usize..24, jdx in 0usize..24) {
            let d = RootDatum::a(3);
            let all = d.all_elements();
            let (u, v) = (&all[idx], &all[jdx]);
            prop_assert!(u.compose(&u.inverse()).is_identity());
            let uv = u.compose(v);
            let word: Vec<usize> = u.reduced_word().into_iter().chain(v.reduced_word()).collect();
            prop_assert_eq!(uv, d.from_word(&word).unwrap());
        }
    }
}
