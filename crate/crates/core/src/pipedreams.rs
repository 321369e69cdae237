//! Pipe dreams on the staircase `Y_n` (type A) and skew pipe dreams on the
//! shifted staircase `SY_n` (type C), ladder moves, the bottom diagram `D(w)`,
//! ladder closures, transposed mitosis and the operators `M_i`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cartan_weyl::{
    compatible_subsets, is_reduced_word, longest_element, standard_word, CartanType, RootDatum, WeylElement,
};
use crate::error::{Error, Result};

pub type Box2 = (usize, usize);

/// A set of boxes of `Y_n` (type A) or `SY_n` (type C).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PipeDream {
    #[serde(rename = "type")]
    pub cartan_type: CartanType,
    pub n: usize,
    pub boxes: BTreeSet<Box2>,
}

/// Skew pipe dreams share the representation; `cartan_type` is `C`.
pub type SkewPipeDream = PipeDream;

pub fn in_shape(cartan_type: CartanType, n: usize, (i, j): Box2) -> bool {
    match cartan_type {
        CartanType::A => i >= 1 && i <= n && j >= 1 && j + i <= n + 1,
        CartanType::C => i >= 1 && i <= n && j >= i && j + i <= 2 * n,
    }
}

/// Boxes in the order used for `k_D`.
pub fn arrangement(cartan_type: CartanType, n: usize) -> Vec<Box2> {
    match cartan_type {
        CartanType::A => (1..=n).rev().flat_map(|i| (1..=n + 1 - i).map(move |j| (i, j))).collect(),
        CartanType::C => primed_arrangement(cartan_type, n),
    }
}

/// Boxes `(p_k, q_k)` in the order used for `k'_D`; box `k` carries the `k`-th letter
/// of `i_A` / `i_C`.
pub fn primed_arrangement(cartan_type: CartanType, n: usize) -> Vec<Box2> {
    match cartan_type {
        CartanType::A => (1..=n).flat_map(|m| (1..=m).rev().map(move |j| (n + 1 - m, j))).collect(),
        CartanType::C => (1..=n).rev().flat_map(|i| (i..=2 * n - i).rev().map(move |j| (i, j))).collect(),
    }
}

/// Simple reflection attached to a column: `j` in type A, `|j - n| + 1` in type C.
fn column_letter(cartan_type: CartanType, n: usize, j: usize) -> usize {
    match cartan_type {
        CartanType::A => j,
        CartanType::C => j.abs_diff(n) + 1,
    }
}

impl PipeDream {
    pub fn new(cartan_type: CartanType, n: usize, boxes: impl IntoIterator<Item = Box2>) -> Result<Self> {
        RootDatum::new(cartan_type, n)?;
        let boxes: BTreeSet<Box2> = boxes.into_iter().collect();
        if let Some(b) = boxes.iter().find(|&&b| !in_shape(cartan_type, n, b)) {
            return Err(Error::InvalidInput(format!("box {b:?} lies outside the diagram of rank {n}")));
        }
        Ok(PipeDream { cartan_type, n, boxes })
    }

    pub fn full(cartan_type: CartanType, n: usize) -> Self {
        PipeDream { cartan_type, n, boxes: arrangement(cartan_type, n).into_iter().collect() }
    }

    pub fn empty(cartan_type: CartanType, n: usize) -> Self {
        PipeDream { cartan_type, n, boxes: BTreeSet::new() }
    }

    pub fn len(&self) -> usize {
        self.boxes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boxes.is_empty()
    }

    pub fn contains(&self, b: Box2) -> bool {
        self.boxes.contains(&b)
    }

    fn with(&self, add: Option<Box2>, remove: Option<Box2>) -> Self {
        let mut out = self.clone();
        if let Some(r) = remove {
            out.boxes.remove(&r);
        }
        if let Some(a) = add {
            out.boxes.insert(a);
        }
        out
    }

    /// `k_D`, 1-based.
    pub fn k_d(&self) -> Vec<usize> {
        positions(&arrangement(self.cartan_type, self.n), |b| self.contains(b))
    }

    /// `k'_D`, 1-based: positions of the boxes not in `D`.
    pub fn k_d_prime(&self) -> Vec<usize> {
        positions(&primed_arrangement(self.cartan_type, self.n), |b| !self.contains(b))
    }

    fn word(&self) -> Vec<usize> {
        let rd = RootDatum::new(self.cartan_type, self.n).expect("valid rank");
        standard_word(&rd)
    }

    /// Letters of `i_A` / `i_C` read at the positions `k_D`.
    pub fn kogan_word(&self) -> Vec<usize> {
        let word = self.word();
        self.k_d().iter().map(|&k| word[k - 1]).collect()
    }

    /// The Kogan face `F^∨_{k_D}` is reduced.
    pub fn is_reduced(&self) -> bool {
        is_reduced_word(self.cartan_type, self.n, &self.kogan_word())
    }

    /// Rows of `+`/`.` cells, shifted rows indented for skew pipe dreams.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for i in 1..=self.n {
            let cols: Vec<usize> = match self.cartan_type {
                CartanType::A => (1..=self.n + 1 - i).collect(),
                CartanType::C => {
                    out.push_str(&"  ".repeat(i - 1));
                    (i..=2 * self.n - i).collect()
                }
            };
            let cells: Vec<&str> = cols.iter().map(|&j| if self.contains((i, j)) { "+" } else { "." }).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let raw: PipeDream = serde_json::from_str(s).map_err(|e| Error::InvalidInput(e.to_string()))?;
        if raw.n > 64 {
            return Err(Error::InvalidInput("rank too large".into()));
        }
        PipeDream::new(raw.cartan_type, raw.n, raw.boxes)
    }
}

impl fmt::Display for PipeDream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let boxes: Vec<String> = self.boxes.iter().map(|(i, j)| format!("({i},{j})")).collect();
        write!(f, "{{{}}}", boxes.join(","))
    }
}

fn positions(order: &[Box2], pred: impl Fn(Box2) -> bool) -> Vec<usize> {
    order.iter().enumerate().filter(|&(_, &b)| pred(b)).map(|(k, _)| k + 1).collect()
}

/// `L_{i,j}(D)`, or `None` when the move does not apply.
pub fn ladder_move(d: &PipeDream, i: usize, j: usize) -> Option<PipeDream> {
    if !d.contains((i, j)) || d.contains((i, j + 1)) {
        return None;
    }
    match d.cartan_type {
        CartanType::A => {
            for m in 1..i {
                let (a, b) = (d.contains((i - m, j)), d.contains((i - m, j + 1)));
                match (a, b) {
                    (true, true) => continue,
                    (false, false) => return Some(d.with(Some((i - m, j + 1)), Some((i, j)))),
                    _ => return None,
                }
            }
            None
        }
        CartanType::C => {
            let order = primed_arrangement(CartanType::C, d.n);
            let k = order.iter().position(|&b| b == (i, j))?;
            let mirror = 2 * d.n - j;
            for &(p, q) in &order[k + 1..] {
                if q != j && q != mirror {
                    continue;
                }
                // boxes outside SY_n count as absent
                let (a, b) = (d.contains((p, q)), d.contains((p, q + 1)));
                match (a, b) {
                    (true, true) => continue,
                    (false, false) => {
                        if !in_shape(CartanType::C, d.n, (p, q + 1)) {
                            return None;
                        }
                        return Some(d.with(Some((p, q + 1)), Some((i, j))));
                    }
                    _ => return None,
                }
            }
            None
        }
    }
}

/// All boxes whose ladder moves are allowed by `columns` (all when `None`).
fn closure_with(start: &PipeDream, columns: Option<&[usize]>) -> BTreeSet<PipeDream> {
    let mut seen = BTreeSet::from([start.clone()]);
    let mut queue = VecDeque::from([start.clone()]);
    while let Some(d) = queue.pop_front() {
        for &(i, j) in &d.boxes {
            if columns.is_some_and(|c| !c.contains(&j)) {
                continue;
            }
            if let Some(next) = ladder_move(&d, i, j) {
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
    }
    seen
}

/// `𝓛(D)`: everything reachable by ladder moves, including `D`.
pub fn ladder_closure(d: &PipeDream) -> BTreeSet<PipeDream> {
    closure_with(d, None)
}

/// `D(w)`: the diagram whose `k'_D` is the lexicographically smallest element of `R(i, w)`.
pub fn bottom_pipe_dream(rd: &RootDatum, w: &WeylElement) -> Result<PipeDream> {
    if w.cartan_type != rd.cartan_type || w.rank != rd.rank {
        return Err(Error::InvalidInput(format!("{w} does not belong to {}_{}", rd.cartan_type, rd.rank)));
    }
    let subsets = compatible_subsets(rd, &standard_word(rd), w)?;
    let first = subsets
        .first()
        .ok_or_else(|| Error::Convention(format!("R(i, {w}) is empty")))?;
    let order = primed_arrangement(rd.cartan_type, rd.rank);
    let missing: BTreeSet<Box2> = first.iter().map(|&k| order[k - 1]).collect();
    Ok(PipeDream {
        cartan_type: rd.cartan_type,
        n: rd.rank,
        boxes: order.into_iter().filter(|b| !missing.contains(b)).collect(),
    })
}

/// Type A closed form `{(i, j) : j <= m(i)}` with
/// `m(i) = #{i < j <= n+1 : w⁻¹w₀(j) < w⁻¹w₀(i)}`.
pub fn bottom_pipe_dream_formula(rd: &RootDatum, w: &WeylElement) -> Result<PipeDream> {
    if rd.cartan_type != CartanType::A {
        return Err(Error::Inapplicable("the closed form for D(w) is stated in type A".into()));
    }
    let n = rd.rank;
    let u = w.inverse().compose(&longest_element(rd));
    let image = |x: usize| u.perm[x - 1];
    let mut boxes = BTreeSet::new();
    for i in 1..=n {
        let m = (i + 1..=n + 1).filter(|&j| image(j) < image(i)).count();
        boxes.extend((1..=m).map(|j| (i, j)));
    }
    PipeDream::new(CartanType::A, n, boxes)
}

/// Transposed mitosis `mitosis_j^⊤(D)` on type A pipe dreams.
pub fn mitosis_top(j: usize, d: &PipeDream) -> Result<BTreeSet<PipeDream>> {
    if d.cartan_type != CartanType::A {
        return Err(Error::Inapplicable("transposed mitosis is defined for type A pipe dreams".into()));
    }
    let n = d.n;
    if j == 0 || j > n {
        return Err(Error::IndexOutOfRange { index: j, rank: n });
    }
    let start = (1..=n + 1 - j).find(|&i| !d.contains((i, j))).unwrap_or(n + 2 - j);
    let mut out = BTreeSet::new();
    for i in (1..start).filter(|&i| !d.contains((i, j + 1))) {
        let ps: Vec<usize> = (1..=i).filter(|&p| !d.contains((p, j + 1))).collect();
        let mut cur = d.with(None, Some((ps[0], j)));
        for &p in &ps[1..] {
            cur = ladder_move(&cur, p, j).ok_or_else(|| {
                Error::Convention(format!("ladder move L_{{{p},{j}}} does not apply inside mitosis of {d}"))
            })?;
        }
        out.insert(cur);
    }
    Ok(out)
}

pub fn mitosis_chain(word: &[usize], d: &PipeDream) -> Result<BTreeSet<PipeDream>> {
    let mut set = BTreeSet::from([d.clone()]);
    for &j in word {
        let mut next = BTreeSet::new();
        for x in &set {
            next.extend(mitosis_top(j, x)?);
        }
        set = next;
    }
    Ok(set)
}

/// `M_i(D)`, or `None` when `M_i` is not applicable to `D`.
pub fn m_op(i: usize, d: &PipeDream) -> Result<Option<BTreeSet<PipeDream>>> {
    let n = d.n;
    if i == 0 || i > n {
        return Err(Error::IndexOutOfRange { index: i, rank: n });
    }
    let (removed, columns) = match d.cartan_type {
        CartanType::A => {
            let start = (1..=n + 1 - i).find(|&r| !d.contains((r, i))).unwrap_or(n + 2 - i);
            match (1..start).find(|&r| !d.contains((r, i + 1))) {
                Some(p0) => ((p0, i), vec![i]),
                None => return Ok(None),
            }
        }
        CartanType::C => {
            let order = primed_arrangement(CartanType::C, n);
            let cols = vec![n + 1 - i, n + i - 1];
            let same: Vec<usize> = (0..order.len()).filter(|&r| cols.contains(&order[r].1)).collect();
            let r0 = match same.iter().rev().find(|&&r| !d.contains((order[r].0, order[r].1 + 1))) {
                Some(&r) => r,
                None => return Ok(None),
            };
            let ok = same.iter().filter(|&&r| r >= r0).all(|&r| {
                let (p, q) = order[r];
                d.contains((p, q)) && (r == r0 || d.contains((p, q + 1)))
            });
            if !ok {
                return Ok(None);
            }
            (order[r0], cols)
        }
    };
    Ok(Some(closure_with(&d.with(None, Some(removed)), Some(&columns))))
}

/// Applies `M_i` to every member; inapplicability is an error.
pub fn m_op_set(i: usize, set: &BTreeSet<PipeDream>) -> Result<BTreeSet<PipeDream>> {
    let mut out = BTreeSet::new();
    for d in set {
        match m_op(i, d)? {
            Some(s) => out.extend(s),
            None => return Err(Error::Convention(format!("M_{i} is not applicable to {d}"))),
        }
    }
    Ok(out)
}

/// `𝓜(w) = M_{i_{k_ℓ}} ⋯ M_{i_{k_1}}(Y_n)` with `k'_{D(w)} = (k_1, …, k_ℓ)`.
pub fn mset(rd: &RootDatum, w: &WeylElement) -> Result<BTreeSet<PipeDream>> {
    let word = standard_word(rd);
    let letters: Vec<usize> = bottom_pipe_dream(rd, w)?.k_d_prime().iter().map(|&k| word[k - 1]).collect();
    let mut set = BTreeSet::from([PipeDream::full(rd.cartan_type, rd.rank)]);
    for i in letters {
        set = m_op_set(i, &set)?;
    }
    Ok(set)
}

/// Column letters of a diagram, used for skew ladder moves.
pub fn letter_of_box(cartan_type: CartanType, n: usize, b: Box2) -> usize {
    column_letter(cartan_type, n, b.1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan_weyl::all_reduced_words;

    fn pd(t: CartanType, n: usize, rows: &[&str]) -> PipeDream {
        // rows written like the pictures: '+' box, '.' empty, shifted rows start at column i
        let mut boxes = BTreeSet::new();
        for (r, row) in rows.iter().enumerate() {
            let i = r + 1;
            let first = match t {
                CartanType::A => 1,
                CartanType::C => i,
            };
            for (c, ch) in row.chars().filter(|c| !c.is_whitespace()).enumerate() {
                if ch == '+' {
                    boxes.insert((i, first + c));
                }
            }
        }
        PipeDream::new(t, n, boxes).unwrap()
    }

    fn set(items: Vec<PipeDream>) -> BTreeSet<PipeDream> {
        items.into_iter().collect()
    }

    #[test]
    fn arrangements() {
        let d = PipeDream::new(CartanType::A, 4, [(1, 3), (2, 1), (3, 1), (4, 1)]).unwrap();
        assert_eq!(d.k_d(), vec![1, 2, 4, 9]);
        assert_eq!(d.k_d_prime(), vec![2, 4, 5, 7, 9, 10]);
        let d = PipeDream::new(CartanType::C, 3, [(1, 1), (1, 2), (1, 3), (2, 2), (2, 3)]).unwrap();
        assert_eq!(d.k_d(), vec![3, 4, 7, 8, 9]);
        assert_eq!(d.k_d_prime(), vec![1, 2, 5, 6]);
        // the primed arrangement carries the letters of the standard word
        for t in [CartanType::A, CartanType::C] {
            for n in 1..=4 {
                if t == CartanType::C && n == 1 {
                    continue;
                }
                let rd = RootDatum::new(t, n).unwrap();
                let letters: Vec<usize> =
                    primed_arrangement(t, n).iter().map(|&b| letter_of_box(t, n, b)).collect();
                assert_eq!(letters, standard_word(&rd));
                assert_eq!(arrangement(t, n).len(), rd.num_positive_roots());
            }
        }
        assert!(PipeDream::new(CartanType::A, 2, [(2, 2)]).is_err());
        assert!(PipeDream::new(CartanType::C, 2, [(2, 1)]).is_err());
    }

    #[test]
    fn ladder_moves_type_a() {
        let a = CartanType::A;
        let top = pd(a, 4, &["....", "++.", "+.", "+"]);
        let r1 = pd(a, 4, &[".+..", "++.", "..", "+"]);
        let r2 = pd(a, 4, &[".+..", "++.", ".+", "."]);
        let d1 = pd(a, 4, &["..+.", "+..", "+.", "+"]);
        let d2 = pd(a, 4, &[".++.", "...", "+.", "+"]);
        let d3 = pd(a, 4, &[".++.", ".+.", "..", "+"]);
        let d4 = pd(a, 4, &[".++.", ".+.", ".+", "."]);
        assert_eq!(ladder_move(&top, 3, 1).as_ref(), Some(&r1));
        assert_eq!(ladder_move(&r1, 4, 1).as_ref(), Some(&r2));
        assert_eq!(ladder_move(&top, 2, 2).as_ref(), Some(&d1));
        assert_eq!(ladder_move(&d1, 2, 1).as_ref(), Some(&d2));
        assert_eq!(ladder_move(&d2, 3, 1).as_ref(), Some(&d3));
        assert_eq!(ladder_move(&d3, 4, 1).as_ref(), Some(&d4));
        assert_eq!(ladder_closure(&top), set(vec![top, r1, r2, d1, d2, d3, d4]));
        assert_eq!(ladder_move(&PipeDream::empty(a, 3), 1, 1), None);
    }

    #[test]
    fn ladder_moves_type_c() {
        let c = CartanType::C;
        let top = pd(c, 3, &["+++..", "+..", "+"]);
        let right = pd(c, 3, &["+++.+", "...", "+"]);
        let down = pd(c, 3, &["+++..", "+.+", "."]);
        let both = pd(c, 3, &["+++.+", "..+", "."]);
        let last = pd(c, 3, &["+++.+", ".+.", "."]);
        assert_eq!(ladder_move(&top, 2, 2).as_ref(), Some(&right));
        assert_eq!(ladder_move(&top, 3, 3).as_ref(), Some(&down));
        assert_eq!(ladder_move(&right, 3, 3).as_ref(), Some(&both));
        assert_eq!(ladder_move(&down, 2, 2).as_ref(), Some(&both));
        assert_eq!(ladder_move(&both, 2, 4).as_ref(), Some(&last));
        assert_eq!(ladder_move(&PipeDream::empty(c, 2), 1, 1), None);
    }

    #[test]
    fn bottom_examples() {
        let rd = RootDatum::a(4);
        assert_eq!(bottom_pipe_dream(&rd, &rd.identity()).unwrap(), PipeDream::full(CartanType::A, 4));
        let w = rd.from_word(&[2, 3, 4, 3, 2, 1]).unwrap();
        assert_eq!(bottom_pipe_dream(&rd, &w).unwrap(), pd(CartanType::A, 4, &["....", "++.", "+.", "+"]));
        let rd = RootDatum::c(3);
        let w = rd.from_word(&[2, 1, 3, 2]).unwrap();
        let d = bottom_pipe_dream(&rd, &w).unwrap();
        assert_eq!(d, PipeDream::new(CartanType::C, 3, [(1, 1), (1, 2), (1, 3), (2, 2), (3, 3)]).unwrap());
        for n in 2..=3 {
            let rd = RootDatum::c(n);
            for i in 1..=n {
                let s = rd.from_word(&[i]).unwrap();
                let mut expect = PipeDream::full(CartanType::C, n);
                expect.boxes.remove(&(n - i + 1, n + i - 1));
                assert_eq!(bottom_pipe_dream(&rd, &s).unwrap(), expect);
                assert_eq!(mset(&rd, &s).unwrap(), set(vec![expect]));
            }
        }
    }

    #[test]
    fn bottom_formula_agrees() {
        for n in 1..=4 {
            let rd = RootDatum::a(n);
            for w in rd.all_elements() {
                assert_eq!(bottom_pipe_dream(&rd, &w).unwrap(), bottom_pipe_dream_formula(&rd, &w).unwrap(), "{w}");
            }
        }
    }

    #[test]
    fn type_a_n2_table() {
        let a = CartanType::A;
        let rd = RootDatum::a(2);
        let l = |word: &[usize]| ladder_closure(&bottom_pipe_dream(&rd, &rd.from_word(word).unwrap()).unwrap());
        assert_eq!(l(&[1]), set(vec![pd(a, 2, &["++", "."])]));
        assert_eq!(l(&[2]), set(vec![pd(a, 2, &["+.", "+"])]));
        assert_eq!(l(&[1, 2]), set(vec![pd(a, 2, &["+.", "."])]));
        assert_eq!(l(&[2, 1]), set(vec![pd(a, 2, &["..", "+"]), pd(a, 2, &[".+", "."])]));
        assert_eq!(mitosis_top(1, &PipeDream::full(a, 2)).unwrap(), l(&[1]));
        for i in 1..=4 {
            let rd = RootDatum::a(4);
            let d = bottom_pipe_dream(&rd, &rd.from_word(&[i]).unwrap()).unwrap();
            let mut expect = PipeDream::full(a, 4);
            expect.boxes.remove(&(4 - i + 1, i));
            assert_eq!(d, expect);
            assert_eq!(ladder_closure(&d), set(vec![d]));
        }
    }

    #[test]
    fn type_c_n2_table() {
        let c = CartanType::C;
        let rd = RootDatum::c(2);
        let m = |word: &[usize]| mset(&rd, &rd.from_word(word).unwrap()).unwrap();
        assert_eq!(m(&[1]), set(vec![pd(c, 2, &["+++", "."])]));
        assert_eq!(m(&[2]), set(vec![pd(c, 2, &["++.", "+"])]));
        assert_eq!(m(&[1, 2]), set(vec![pd(c, 2, &["++.", "."])]));
        assert_eq!(m(&[2, 1]), set(vec![pd(c, 2, &["+..", "+"]), pd(c, 2, &["+.+", "."])]));
        assert_eq!(m(&[1, 2, 1]), set(vec![pd(c, 2, &["+..", "."])]));
        assert_eq!(
            m(&[2, 1, 2]),
            set(vec![pd(c, 2, &["...", "+"]), pd(c, 2, &["..+", "."]), pd(c, 2, &[".+.", "."])])
        );
        assert_eq!(m(&[1, 2, 1, 2]), set(vec![PipeDream::empty(c, 2)]));
        assert_eq!(m(&[]), set(vec![PipeDream::full(c, 2)]));
    }

    #[test]
    fn type_c_n3_example() {
        let rd = RootDatum::c(3);
        let w = rd.from_word(&[2, 1, 3, 2]).unwrap();
        let c = CartanType::C;
        let expect = set(vec![
            pd(c, 3, &["+++..", "+..", "+"]),
            pd(c, 3, &["+++.+", "...", "+"]),
            pd(c, 3, &["+++..", "+.+", "."]),
            pd(c, 3, &["+++.+", "..+", "."]),
            pd(c, 3, &["+++.+", ".+.", "."]),
        ]);
        assert_eq!(mset(&rd, &w).unwrap(), expect);
    }

    #[test]
    fn mitosis_and_m_agree_in_type_a() {
        for n in 1..=4 {
            let rd = RootDatum::a(n);
            for w in rd.all_elements() {
                let l = ladder_closure(&bottom_pipe_dream(&rd, &w).unwrap());
                assert_eq!(mset(&rd, &w).unwrap(), l, "{w}");
                for word in all_reduced_words(&w) {
                    assert_eq!(mitosis_chain(&word, &PipeDream::full(CartanType::A, n)).unwrap(), l, "{w} {word:?}");
                }
            }
        }
    }

    #[test]
    fn reducedness_and_kogan_elements() {
        for rd in [RootDatum::a(2), RootDatum::a(3), RootDatum::c(2), RootDatum::c(3)] {
            let w0 = longest_element(&rd);
            for w in rd.all_elements() {
                let m = mset(&rd, &w).unwrap();
                let l = ladder_closure(&bottom_pipe_dream(&rd, &w).unwrap());
                // equality is a theorem in type A; in type C it is observed here (and up to rank 4)
                assert_eq!(m, l, "{w}");
                for d in &l {
                    assert_eq!(d.len(), rd.num_positive_roots() - w.length());
                    if rd.cartan_type == CartanType::A {
                        assert!(d.is_reduced(), "{d}");
                        // w(F^∨_{k_D}) = w₀w
                        let x = rd.from_word(&d.kogan_word()).unwrap();
                        assert_eq!(w0.compose(&x).compose(&w0), w0.compose(&w), "{d}");
                    }
                }
            }
        }
        assert!(PipeDream::empty(CartanType::A, 2).is_reduced());
        assert!(PipeDream::full(CartanType::A, 2).is_reduced());
        // reducedness of Kogan faces is a type A notion: read literally, a member of
        // 𝓜(s_2) in type C gives the word (1, 1, 2)
        let d = PipeDream::new(CartanType::C, 2, [(1, 1), (1, 2), (2, 2)]).unwrap();
        assert_eq!(d.kogan_word(), vec![1, 1, 2]);
        assert!(!d.is_reduced());
    }

    #[test]
    fn shape_condition_holds_on_m() {
        // if (i,j) ∈ D, (i,j+1) ∉ D and rows i-1..i-r+1 are full in columns j, j+1
        // while (i-r, j) ∉ D, then (i-r, j+1) ∉ D
        for n in 1..=4 {
            let rd = RootDatum::a(n);
            for w in rd.all_elements() {
                for d in mset(&rd, &w).unwrap() {
                    for &(i, j) in &d.boxes {
                        if d.contains((i, j + 1)) {
                            continue;
                        }
                        for r in 1..i {
                            if !d.contains((i - r, j)) {
                                assert!(!d.contains((i - r, j + 1)), "{d} at ({i},{j})");
                                break;
                            }
                            if !d.contains((i - r, j + 1)) {
                                break;
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn rendering_and_json() {
        let d = PipeDream::new(CartanType::C, 3, [(1, 1), (1, 2), (1, 3), (2, 2), (2, 3)]).unwrap();
        assert_eq!(d.render(), "+ + + . .\n  + + .\n    .\n");
        let s = serde_json::to_string(&d).unwrap();
        assert_eq!(PipeDream::from_json_str(&s).unwrap(), d);
        assert!(PipeDream::from_json_str(r#"{"type":"A","n":2,"boxes":[[3,1]]}"#).is_err());
        assert_eq!(d.to_string(), "{(1,1),(1,2),(1,3),(2,2),(2,3)}");
    }
}
