//! Exact rational polytopes in H-representation: string cones and polytopes for
//! `i_A` and `i_C`, (symplectic) Gelfand-Tsetlin polytopes and their
//! ε-deformations, faces, lattice points, vertices and Ehrhart volumes.
//!
//! All polytopes of one type and rank share a coordinate order, and each
//! carries the facet lists `F_1..F_N` and `F^∨_1..F^∨_N` as inequality indices.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::cartan_weyl::{check_longest_word, standard_word, CartanType, RootDatum, Weight};
use crate::error::{Error, Result};
use crate::linalg::{self, q, Q};
use crate::lp::{self, LpResult};

/// `normal · x <= offset`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Inequality {
    pub normal: Vec<Q>,
    pub offset: Q,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPolytope {
    pub ambient_dim: usize,
    pub inequalities: Vec<Inequality>,
    pub labels: Vec<String>,
    /// Inequality indices of `F_1, …, F_N` (empty when not applicable).
    pub f_facets: Vec<usize>,
    /// Inequality indices of `F^∨_1, …, F^∨_N` (empty when not applicable).
    pub fv_facets: Vec<usize>,
}

/// A face given by the inequalities turned into equalities.
#[derive(Clone, Debug)]
pub struct Face<'a> {
    pub parent: &'a RationalPolytope,
    pub tight: BTreeSet<usize>,
}

impl PartialEq for Face<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.parent == other.parent && self.tight == other.tight
    }
}

/// Symbolic form of the λ-bound facet `F_j`:
/// `a_j = <λ, h_{lambda_index}> + Σ coeff · a_l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundEquation {
    pub coordinate: usize,
    pub lambda_index: usize,
    pub terms: Vec<(usize, i64)>,
}

impl fmt::Display for BoundEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a_{} = <λ,h_{}>", self.coordinate, self.lambda_index)?;
        for &(l, c) in &self.terms {
            let sign = if c < 0 { '-' } else { '+' };
            match c.abs() {
                1 => write!(f, " {sign} a_{l}")?,
                m => write!(f, " {sign} {m}a_{l}")?,
            }
        }
        Ok(())
    }
}

/// `F_j` of the string polytope for an arbitrary reduced word.
pub fn bound_equation(rd: &RootDatum, word: &[usize], j: usize) -> BoundEquation {
    let ij = word[j - 1];
    let terms = (j + 1..=word.len())
        .filter_map(|l| {
            let c = rd.cartan[ij - 1][word[l - 1] - 1];
            (c != 0).then_some((l, -c))
        })
        .collect();
    BoundEquation { coordinate: j, lambda_index: ij, terms }
}

/// ε parameters of the deformed polytopes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EpsilonProfile {
    /// `(ε_1, …, ε_n)` with `0 = ε_1 <= … <= ε_n`.
    A(Vec<i64>),
    /// `(ε_2, …, ε_n)` and `(ε'_1, …, ε'_n)` with `0 = ε'_1 <= ε_2 <= ε'_2 <= …`.
    C { eps: Vec<i64>, eps_prime: Vec<i64> },
}

impl EpsilonProfile {
    pub fn zero(cartan_type: CartanType, n: usize) -> Self {
        match cartan_type {
            CartanType::A => EpsilonProfile::A(vec![0; n]),
            CartanType::C => EpsilonProfile::C { eps: vec![0; n - 1], eps_prime: vec![0; n] },
        }
    }

    /// `(0, 1, …, n-1)` for A; `ε'_1 = 0, ε_2 = 1, ε'_2 = 2, …` for C.
    pub fn default_for(cartan_type: CartanType, n: usize) -> Self {
        match cartan_type {
            CartanType::A => EpsilonProfile::A((0..n as i64).collect()),
            CartanType::C => EpsilonProfile::C {
                eps: (2..=n as i64).map(|i| 2 * i - 3).collect(),
                eps_prime: (1..=n as i64).map(|i| 2 * i - 2).collect(),
            },
        }
    }

    /// The chain `0 = first <= …` in its defining order.
    fn chain(&self) -> Vec<i64> {
        match self {
            EpsilonProfile::A(e) => e.clone(),
            EpsilonProfile::C { eps, eps_prime } => {
                let mut out = vec![eps_prime[0]];
                for i in 0..eps.len() {
                    out.push(eps[i]);
                    out.push(eps_prime[i + 1]);
                }
                out
            }
        }
    }

    pub fn validate(&self, cartan_type: CartanType, n: usize) -> Result<()> {
        let ok_shape = match (self, cartan_type) {
            (EpsilonProfile::A(e), CartanType::A) => e.len() == n,
            (EpsilonProfile::C { eps, eps_prime }, CartanType::C) => {
                eps.len() + 1 == n && eps_prime.len() == n
            }
            _ => false,
        };
        if !ok_shape {
            return Err(Error::InvalidInput(format!("ε profile does not fit type {cartan_type}{n}")));
        }
        let c = self.chain();
        if c[0] != 0 || c.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidInput(format!("ε profile {c:?} violates 0 = ε_first <= …")));
        }
        Ok(())
    }

    pub fn is_strict(&self) -> bool {
        self.chain().windows(2).all(|w| w[0] < w[1])
    }

    pub fn max(&self) -> i64 {
        self.chain().into_iter().max().unwrap_or(0)
    }

    fn a(&self, i: usize) -> i64 {
        match self {
            EpsilonProfile::A(e) => e[i - 1],
            EpsilonProfile::C { eps, .. } => eps[i - 2],
        }
    }

    fn a_prime(&self, i: usize) -> i64 {
        match self {
            EpsilonProfile::C { eps_prime, .. } => eps_prime[i - 1],
            EpsilonProfile::A(_) => 0,
        }
    }
}

/// Smallest multiple of `λ` whose coefficients are all at least `N · max ε`
/// (`λ` is replaced by `ρ` when it is not regular).
pub fn scaled_lambda(lambda: &Weight, n_roots: usize, eps: &EpsilonProfile) -> Weight {
    let base = if lambda.is_regular_dominant() { lambda.clone() } else { Weight(vec![1; lambda.rank()]) };
    let target = (n_roots as i64 * eps.max()).max(1);
    let min = *base.0.iter().min().expect("rank >= 1");
    let k = (target + min - 1) / min;
    base.scale(k.max(1))
}

/// Affine expression over the `N` coordinates.
#[derive(Clone, Debug)]
struct Lin {
    coef: Vec<i64>,
    cst: i64,
}

impl Lin {
    fn var(n: usize, k: usize) -> Lin {
        let mut coef = vec![0; n];
        coef[k] = 1;
        Lin { coef, cst: 0 }
    }

    fn constant(n: usize, c: i64) -> Lin {
        Lin { coef: vec![0; n], cst: c }
    }

    fn plus(mut self, c: i64) -> Lin {
        self.cst += c;
        self
    }
}

/// `x >= y` as `(y - x) · v <= x.cst - y.cst`.
fn geq(x: &Lin, y: &Lin) -> Inequality {
    Inequality {
        normal: x.coef.iter().zip(&y.coef).map(|(a, b)| q(b - a)).collect(),
        offset: q(x.cst - y.cst),
    }
}

/// Coordinate index (0-based) of `a_k^{(l)}` in type A, `l >= 1`.
fn idx_a(k: usize, l: usize) -> usize {
    let m = k + l - 1;
    (m - 1) * m / 2 + k - 1
}

/// Coordinate index of `a_k^{(l)}` in type C.
fn idx_c_a(k: usize, l: usize) -> usize {
    let m = k + l - 1;
    (m - 1) * (m - 1) + m + l - 2
}

/// Coordinate index of `b_k^{(l)}` in type C, `l >= 2`.
fn idx_c_b(k: usize, l: usize) -> usize {
    let m = k + l - 1;
    (m - 1) * (m - 1) + k - 1
}

/// Human-readable names of the coordinates.
pub fn coordinate_names(cartan_type: CartanType, n: usize) -> Vec<String> {
    let big_n = match cartan_type {
        CartanType::A => n * (n + 1) / 2,
        CartanType::C => n * n,
    };
    let mut names = vec![String::new(); big_n];
    for l in 1..=n {
        for k in 1..=n + 1 - l {
            match cartan_type {
                CartanType::A => names[idx_a(k, l)] = format!("a_{k}^({l})"),
                CartanType::C => {
                    names[idx_c_a(k, l)] = format!("a_{k}^({l})");
                    if l >= 2 {
                        names[idx_c_b(k, l)] = format!("b_{k}^({l})");
                    }
                }
            }
        }
    }
    names
}

struct GtCoords {
    big_n: usize,
    top: Vec<i64>,
}

impl GtCoords {
    fn new(n: usize, lambda: &Weight) -> Self {
        // a_k^{(0)} = Σ_{k <= ℓ <= n} <λ, h_ℓ>, a_{n+1}^{(0)} = 0
        let top = (1..=n + 1).map(|k| (k..=n).map(|l| lambda.pair(l)).sum()).collect();
        GtCoords { big_n: n * (n + 1) / 2, top }
    }

    fn a(&self, k: usize, l: usize) -> Lin {
        if l == 0 {
            Lin::constant(self.big_n, self.top[k - 1])
        } else {
            Lin::var(self.big_n, idx_a(k, l))
        }
    }

    fn name(k: usize, l: usize) -> String {
        format!("a_{k}^({l})")
    }
}

struct SgtCoords {
    n: usize,
    big_n: usize,
    top: Vec<i64>,
}

impl SgtCoords {
    fn new(n: usize, lambda: &Weight) -> Self {
        // b_k^{(1)} = Σ_{1 <= ℓ <= n-k+1} <λ, h_ℓ>, b_{n+1}^{(1)} = 0
        let top = (1..=n + 1).map(|k| (1..=n + 1 - k).map(|l| lambda.pair(l)).sum()).collect();
        SgtCoords { n, big_n: n * n, top }
    }

    fn a(&self, k: usize, l: usize) -> Lin {
        Lin::var(self.big_n, idx_c_a(k, l))
    }

    fn b(&self, k: usize, l: usize) -> Lin {
        if l == 1 {
            Lin::constant(self.big_n, self.top[k - 1])
        } else if k == self.n + 2 - l {
            Lin::constant(self.big_n, 0)
        } else {
            Lin::var(self.big_n, idx_c_b(k, l))
        }
    }
}

impl RationalPolytope {
    pub fn new(ambient_dim: usize, inequalities: Vec<Inequality>, labels: Vec<String>) -> Result<Self> {
        if inequalities.iter().any(|h| h.normal.len() != ambient_dim) {
            return Err(Error::InvalidInput("inequality has the wrong dimension".into()));
        }
        if labels.len() != inequalities.len() {
            return Err(Error::InvalidInput("one label per inequality is required".into()));
        }
        Ok(RationalPolytope { ambient_dim, inequalities, labels, f_facets: Vec::new(), fv_facets: Vec::new() })
    }

    pub fn num_inequalities(&self) -> usize {
        self.inequalities.len()
    }

    fn check_indices(&self, tight: &BTreeSet<usize>) -> Result<()> {
        match tight.iter().find(|&&i| i >= self.inequalities.len()) {
            Some(&i) => Err(Error::IndexOutOfRange { index: i, rank: self.inequalities.len() }),
            None => Ok(()),
        }
    }

    fn system(&self, tight: &BTreeSet<usize>) -> (Vec<Vec<Q>>, Vec<Q>) {
        let mut a = Vec::new();
        let mut b = Vec::new();
        for (i, h) in self.inequalities.iter().enumerate() {
            a.push(h.normal.clone());
            b.push(h.offset.clone());
            if tight.contains(&i) {
                a.push(h.normal.iter().map(|x| -x).collect());
                b.push(-h.offset.clone());
            }
        }
        (a, b)
    }

    /// Maximizes `c · x` over the face cut out by `tight`.
    pub fn maximize(&self, tight: &BTreeSet<usize>, c: &[Q]) -> LpResult {
        let (a, b) = self.system(tight);
        lp::maximize(&a, &b, c)
    }

    pub fn is_feasible(&self, tight: &BTreeSet<usize>) -> bool {
        let zero = vec![Q::zero(); self.ambient_dim];
        !matches!(self.maximize(tight, &zero), LpResult::Infeasible)
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.inequalities.iter().all(|h| dot_int(&h.normal, x) <= h.offset)
    }

    pub fn is_tight(&self, x: &[i64], i: usize) -> bool {
        let h = &self.inequalities[i];
        dot_int(&h.normal, x) == h.offset
    }

    /// Scales every offset by `k`.
    pub fn dilate(&self, k: i64) -> RationalPolytope {
        let mut out = self.clone();
        for h in out.inequalities.iter_mut() {
            h.offset *= q(k);
        }
        out
    }

    /// Integer bounding box of the face; `Unbounded` if some coordinate is unbounded.
    fn bounding_box(&self, tight: &BTreeSet<usize>) -> Result<Option<Vec<(i128, i128)>>> {
        let mut out = Vec::with_capacity(self.ambient_dim);
        for k in 0..self.ambient_dim {
            let mut c = vec![Q::zero(); self.ambient_dim];
            c[k] = Q::one();
            let hi = match self.maximize(tight, &c) {
                LpResult::Infeasible => return Ok(None),
                LpResult::Unbounded => return Err(Error::Unbounded),
                LpResult::Optimal { value, .. } => value.floor(),
            };
            c[k] = -Q::one();
            let lo = match self.maximize(tight, &c) {
                LpResult::Infeasible => return Ok(None),
                LpResult::Unbounded => return Err(Error::Unbounded),
                LpResult::Optimal { value, .. } => -value,
            }
            .ceil();
            let to = |x: &Q| x.to_integer().to_i128().ok_or_else(|| Error::InvalidInput("coordinate bound too large".into()));
            out.push((to(&lo)?, to(&hi)?));
        }
        Ok(Some(out))
    }

    fn integer_rows(&self, tight: &BTreeSet<usize>) -> Result<Vec<(Vec<i128>, i128)>> {
        let (a, b) = self.system(tight);
        a.iter()
            .zip(&b)
            .map(|(row, off)| {
                let mut all = row.clone();
                all.push(off.clone());
                let l = linalg::lcm_of_denominators(&all);
                let conv = |x: &Q| -> Result<i128> {
                    let v: BigInt = (x * Q::from_integer(l.clone())).to_integer();
                    v.to_i128().ok_or_else(|| Error::InvalidInput("coefficient too large".into()))
                };
                Ok((row.iter().map(conv).collect::<Result<Vec<_>>>()?, conv(off)?))
            })
            .collect()
    }

    /// Sorted lattice points of the whole polytope.
    pub fn lattice_points(&self) -> Result<Vec<Vec<i64>>> {
        self.lattice_points_in(&BTreeSet::new())
    }

    /// Sorted lattice points of the face cut out by `tight`.
    pub fn lattice_points_in(&self, tight: &BTreeSet<usize>) -> Result<Vec<Vec<i64>>> {
        let mut out = Vec::new();
        self.sweep(tight, &mut |p| out.push(p.iter().map(|&x| x as i64).collect()))?;
        out.sort();
        Ok(out)
    }

    pub fn count_lattice_points_in(&self, tight: &BTreeSet<usize>) -> Result<u64> {
        let mut count = 0u64;
        self.sweep(tight, &mut |_| count += 1)?;
        Ok(count)
    }

    /// Depth-first sweep over coordinates `N, …, 1` with interval propagation.
    fn sweep(&self, tight: &BTreeSet<usize>, visit: &mut dyn FnMut(&[i128])) -> Result<()> {
        self.check_indices(tight)?;
        let d = self.ambient_dim;
        let bbox = match self.bounding_box(tight)? {
            Some(b) => b,
            None => return Ok(()),
        };
        if bbox.iter().any(|(lo, hi)| lo > hi) {
            return Ok(());
        }
        let rows = self.integer_rows(tight)?;
        // row value assuming every unassigned variable takes its minimizing box value
        let min_term = |a: i128, k: usize| (a * bbox[k].0).min(a * bbox[k].1);
        let mut partial: Vec<i128> = rows
            .iter()
            .map(|(r, _)| (0..d).map(|k| min_term(r[k], k)).sum())
            .collect();
        if rows.iter().zip(&partial).any(|((_, off), p)| p > off) {
            return Ok(());
        }
        let order: Vec<usize> = (0..d).rev().collect();
        let mut x = vec![0i128; d];
        struct Ctx<'a> {
            rows: &'a [(Vec<i128>, i128)],
            bbox: &'a [(i128, i128)],
            order: &'a [usize],
        }
        fn rec(
            ctx: &Ctx,
            depth: usize,
            x: &mut Vec<i128>,
            partial: &mut Vec<i128>,
            visit: &mut dyn FnMut(&[i128]),
        ) {
            if depth == ctx.order.len() {
                if ctx.rows.iter().all(|(r, off)| r.iter().zip(x.iter()).map(|(a, v)| a * v).sum::<i128>() <= *off) {
                    visit(x);
                }
                return;
            }
            let k = ctx.order[depth];
            let (mut lo, mut hi) = ctx.bbox[k];
            for (ri, (r, off)) in ctx.rows.iter().enumerate() {
                let a = r[k];
                if a == 0 {
                    continue;
                }
                let rest = partial[ri] - (a * ctx.bbox[k].0).min(a * ctx.bbox[k].1);
                let room = off - rest;
                if a > 0 {
                    hi = hi.min(linalg::floor_div(room, a));
                } else {
                    lo = lo.max(linalg::ceil_div(room, a));
                }
            }
            let mut v = lo;
            while v <= hi {
                x[k] = v;
                for (ri, (r, _)) in ctx.rows.iter().enumerate() {
                    let a = r[k];
                    if a != 0 {
                        partial[ri] += a * v - (a * ctx.bbox[k].0).min(a * ctx.bbox[k].1);
                    }
                }
                rec(ctx, depth + 1, x, partial, visit);
                for (ri, (r, _)) in ctx.rows.iter().enumerate() {
                    let a = r[k];
                    if a != 0 {
                        partial[ri] -= a * v - (a * ctx.bbox[k].0).min(a * ctx.bbox[k].1);
                    }
                }
                v += 1;
            }
        }
        let ctx = Ctx { rows: &rows, bbox: &bbox, order: &order };
        rec(&ctx, 0, &mut x, &mut partial, visit);
        Ok(())
    }

    /// Vertices, sorted; errors with `Unbounded` when the polytope is not bounded.
    pub fn vertices(&self) -> Result<Vec<Vec<Q>>> {
        let d = self.ambient_dim;
        if d == 0 {
            return Ok(if self.inequalities.iter().all(|h| !h.offset.is_negative()) { vec![vec![]] } else { vec![] });
        }
        if !self.is_feasible(&BTreeSet::new()) {
            return Ok(Vec::new());
        }
        self.bounding_box(&BTreeSet::new())?;
        let rows = self.integer_rows(&BTreeSet::new())?;
        let m = rows.len();
        let subsets = combinations(m, d);
        let found: BTreeSet<Vec<Q>> = subsets
            .par_iter()
            .filter_map(|s| {
                let a: Vec<Vec<i128>> = s.iter().map(|&i| rows[i].0.clone()).collect();
                let b: Vec<i128> = s.iter().map(|&i| rows[i].1).collect();
                let (num, den) = match solve_i128(&a, &b) {
                    Some(Some(sol)) => sol,
                    Some(None) => return None,
                    None => {
                        // overflow: redo in exact rationals
                        let aq: Vec<Vec<Q>> = s.iter().map(|&i| self.inequalities[i].normal.clone()).collect();
                        let bq: Vec<Q> = s.iter().map(|&i| self.inequalities[i].offset.clone()).collect();
                        let x = linalg::solve_unique(&aq, &bq)?;
                        return self
                            .inequalities
                            .iter()
                            .all(|h| dot(&h.normal, &x) <= h.offset)
                            .then_some(x);
                    }
                };
                let feasible = rows.iter().all(|(r, off)| {
                    let lhs: Option<i128> = r.iter().zip(&num).try_fold(0i128, |acc, (a, v)| acc.checked_add(a.checked_mul(*v)?));
                    match (lhs, off.checked_mul(den)) {
                        (Some(l), Some(rhs)) => l <= rhs,
                        _ => false,
                    }
                });
                feasible.then(|| num.iter().map(|&v| Q::new(BigInt::from(v), BigInt::from(den))).collect())
            })
            .collect();
        Ok(found.into_iter().collect())
    }

    /// Vertices lying on the face cut out by `tight`.
    pub fn face_vertices(&self, vertices: &[Vec<Q>], tight: &BTreeSet<usize>) -> Vec<Vec<Q>> {
        vertices
            .iter()
            .filter(|v| tight.iter().all(|&i| dot(&self.inequalities[i].normal, v) == self.inequalities[i].offset))
            .cloned()
            .collect()
    }

    /// Indices of inequalities defining facets, one representative per facet.
    pub fn facets(&self, vertices: &[Vec<Q>]) -> Vec<usize> {
        let dim = affine_rank(vertices);
        if dim == 0 {
            return Vec::new();
        }
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut out = Vec::new();
        for i in 0..self.inequalities.len() {
            let on: Vec<usize> = (0..vertices.len())
                .filter(|&v| dot(&self.inequalities[i].normal, &vertices[v]) == self.inequalities[i].offset)
                .collect();
            let pts: Vec<Vec<Q>> = on.iter().map(|&v| vertices[v].clone()).collect();
            if !on.is_empty() && on.len() < vertices.len() && affine_rank(&pts) + 1 == dim && seen.insert(on) {
                out.push(i);
            }
        }
        out
    }

    /// Every vertex lies on exactly `dim` facets.
    pub fn is_simple(&self) -> Result<bool> {
        let vertices = self.vertices()?;
        if vertices.is_empty() {
            return Err(Error::EmptyFace);
        }
        let dim = affine_rank(&vertices);
        let facets = self.facets(&vertices);
        Ok(vertices.iter().all(|v| {
            facets
                .iter()
                .filter(|&&i| dot(&self.inequalities[i].normal, v) == self.inequalities[i].offset)
                .count()
                == dim
        }))
    }

    pub fn face(&self, tight: BTreeSet<usize>) -> Result<Face<'_>> {
        self.check_indices(&tight)?;
        if !self.is_feasible(&tight) {
            return Err(Error::EmptyFace);
        }
        Ok(Face { parent: self, tight })
    }

    /// Dimension of the face cut out by `tight`, computed from its implicit equalities.
    pub fn face_dim_of(&self, tight: &BTreeSet<usize>) -> Result<usize> {
        if !self.is_feasible(tight) {
            return Err(Error::EmptyFace);
        }
        let mut eq_rows: Vec<Vec<Q>> = Vec::new();
        for (i, h) in self.inequalities.iter().enumerate() {
            if tight.contains(&i) {
                eq_rows.push(h.normal.clone());
                continue;
            }
            let neg: Vec<Q> = h.normal.iter().map(|x| -x).collect();
            match self.maximize(tight, &neg) {
                LpResult::Optimal { value, .. } if -value.clone() == h.offset => eq_rows.push(h.normal.clone()),
                LpResult::Unbounded | LpResult::Optimal { .. } => {}
                LpResult::Infeasible => return Err(Error::EmptyFace),
            }
        }
        Ok(self.ambient_dim - linalg::rank(&eq_rows))
    }

    pub fn dim(&self) -> Result<usize> {
        self.face_dim_of(&BTreeSet::new())
    }

    /// Max of `u · x` over the polytope.
    pub fn support(&self, u: &[Q]) -> Result<Q> {
        match self.maximize(&BTreeSet::new(), u) {
            LpResult::Optimal { value, .. } => Ok(value),
            LpResult::Unbounded => Err(Error::Unbounded),
            LpResult::Infeasible => Err(Error::EmptyFace),
        }
    }

    /// Ehrhart polynomial coefficient of `k^d` for the face, i.e. its `d`-dimensional
    /// volume with respect to the induced lattice (0 when the face is smaller).
    pub fn volume_of(&self, tight: &BTreeSet<usize>, d: usize) -> Result<Q> {
        self.check_indices(tight)?;
        if !self.is_feasible(tight) {
            return Err(Error::EmptyFace);
        }
        let verts = self.vertices()?;
        if self.face_vertices(&verts, tight).iter().flatten().any(|x| !x.is_integer()) {
            return Err(Error::NonIntegral);
        }
        let counts: Vec<Q> = (0..=d as i64 + 1)
            .map(|k| {
                if k == 0 {
                    Ok(Q::one())
                } else {
                    Ok(Q::from_integer(self.dilate(k).count_lattice_points_in(tight)?.into()))
                }
            })
            .collect::<Result<_>>()?;
        // forward differences at 0 determine the polynomial of degree <= d
        let mut diffs = counts[..=d].to_vec();
        let mut table = vec![diffs[0].clone()];
        for _ in 0..d {
            diffs = diffs.windows(2).map(|w| &w[1] - &w[0]).collect();
            table.push(diffs[0].clone());
        }
        // held-out dilation d + 1
        let predicted = (0..=d).fold(Q::zero(), |acc, j| acc + &table[j] * binomial(d as i64 + 1, j as i64));
        if predicted != counts[d + 1] {
            return Err(Error::Convention(format!(
                "lattice counts are not polynomial of degree {d} (expected {predicted}, got {})",
                counts[d + 1]
            )));
        }
        let fact: BigInt = (1..=d as i64).map(BigInt::from).product();
        Ok(&table[d] / Q::from_integer(fact))
    }

    pub fn to_json(&self) -> Value {
        let ineqs: Vec<Value> = self
            .inequalities
            .iter()
            .map(|h| json!([h.normal.iter().map(q_to_json).collect::<Vec<_>>(), q_to_json(&h.offset)]))
            .collect();
        json!({
            "ambient_dim": self.ambient_dim,
            "inequalities": ineqs,
            "labels": self.labels,
            "f_facets": self.f_facets.iter().map(|i| i + 1).collect::<Vec<_>>(),
            "fv_facets": self.fv_facets.iter().map(|i| i + 1).collect::<Vec<_>>(),
        })
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(s).map_err(|e| Error::InvalidInput(e.to_string()))?;
        Self::from_json(&v)
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |m: &str| Error::InvalidInput(format!("polytope JSON: {m}"));
        let dim = v.get("ambient_dim").and_then(Value::as_u64).ok_or_else(|| bad("ambient_dim"))? as usize;
        if dim > 64 {
            return Err(bad("ambient_dim above 64"));
        }
        let raw = v.get("inequalities").and_then(Value::as_array).ok_or_else(|| bad("inequalities"))?;
        let mut ineqs = Vec::with_capacity(raw.len());
        for h in raw {
            let pair = h.as_array().filter(|p| p.len() == 2).ok_or_else(|| bad("inequality must be [normal, offset]"))?;
            let normal = pair[0]
                .as_array()
                .ok_or_else(|| bad("normal"))?
                .iter()
                .map(q_from_json)
                .collect::<Result<Vec<_>>>()?;
            ineqs.push(Inequality { normal, offset: q_from_json(&pair[1])? });
        }
        let labels = match v.get("labels") {
            None | Some(Value::Null) => (1..=ineqs.len()).map(|i| format!("h{i}")).collect(),
            Some(l) => l
                .as_array()
                .ok_or_else(|| bad("labels"))?
                .iter()
                .map(|s| s.as_str().map(str::to_string).ok_or_else(|| bad("label")))
                .collect::<Result<Vec<_>>>()?,
        };
        let mut p = RationalPolytope::new(dim, ineqs, labels)?;
        for (key, slot) in [("f_facets", &mut p.f_facets), ("fv_facets", &mut p.fv_facets)] {
            if let Some(list) = v.get(key).and_then(Value::as_array) {
                for x in list {
                    let i = x.as_u64().ok_or_else(|| bad(key))? as usize;
                    if i == 0 || i > p.inequalities.len() {
                        return Err(bad(key));
                    }
                    slot.push(i - 1);
                }
            }
        }
        Ok(p)
    }

    /// Inequality indices of `F_{k_1} ∩ … ∩ F_{k_l}` for 1-based `k`.
    pub fn f_indices(&self, k: &[usize]) -> Result<BTreeSet<usize>> {
        pick(&self.f_facets, k)
    }

    /// Inequality indices of `F^∨_{k_1} ∩ … ∩ F^∨_{k_l}`.
    pub fn fv_indices(&self, k: &[usize]) -> Result<BTreeSet<usize>> {
        pick(&self.fv_facets, k)
    }
}

fn pick(list: &[usize], k: &[usize]) -> Result<BTreeSet<usize>> {
    k.iter()
        .map(|&j| {
            if j == 0 || j > list.len() {
                Err(Error::IndexOutOfRange { index: j, rank: list.len() })
            } else {
                Ok(list[j - 1])
            }
        })
        .collect()
}

impl Face<'_> {
    pub fn dim(&self) -> Result<usize> {
        self.parent.face_dim_of(&self.tight)
    }

    pub fn codim(&self) -> Result<usize> {
        Ok(self.parent.dim()? - self.dim()?)
    }

    pub fn lattice_points(&self) -> Result<Vec<Vec<i64>>> {
        self.parent.lattice_points_in(&self.tight)
    }

    /// Volume at the face's own dimension; a point has volume 1.
    pub fn normalized_volume(&self) -> Result<Q> {
        self.parent.volume_of(&self.tight, self.dim()?)
    }
}

pub fn face_dim(f: &Face) -> Result<usize> {
    f.dim()
}

pub fn normalized_volume(f: &Face) -> Result<Q> {
    f.normalized_volume()
}

/// `F ∩ G`, which may be empty.
pub fn intersect<'a>(f: &Face<'a>, g: &Face<'a>) -> Result<Face<'a>> {
    if f.parent != g.parent {
        return Err(Error::InvalidInput("faces of different polytopes".into()));
    }
    f.parent.face(f.tight.union(&g.tight).copied().collect())
}

/// Nonempty intersection with `codim(F ∩ G) = codim F + codim G`.
pub fn transversal(f: &Face, g: &Face) -> Result<bool> {
    let both = match intersect(f, g) {
        Ok(h) => h,
        Err(Error::EmptyFace) => return Ok(false),
        Err(e) => return Err(e),
    };
    Ok(both.codim()? == f.codim()? + g.codim()?)
}

fn dot(a: &[Q], x: &[Q]) -> Q {
    a.iter().zip(x).fold(Q::zero(), |acc, (u, v)| acc + u * v)
}

fn dot_int(a: &[Q], x: &[i64]) -> Q {
    a.iter().zip(x).fold(Q::zero(), |acc, (u, &v)| acc + u * q(v))
}

fn binomial(n: i64, k: i64) -> Q {
    let mut r = Q::one();
    for j in 0..k {
        r = r * q(n - j) / q(j + 1);
    }
    r
}

/// Affine dimension of a point set.
pub fn affine_rank(points: &[Vec<Q>]) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let diffs: Vec<Vec<Q>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(&points[0]).map(|(a, b)| a - b).collect())
        .collect();
    linalg::rank(&diffs)
}

fn combinations(m: usize, d: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(d);
    fn rec(start: usize, m: usize, d: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            if m - i < d - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, m, d, cur, out);
            cur.pop();
        }
    }
    rec(0, m, d, &mut cur, &mut out);
    out
}

/// Fraction-free Gauss-Jordan on a square integer system. `None` on overflow,
/// `Some(None)` when singular, otherwise numerators and a positive common denominator.
fn solve_i128(a: &[Vec<i128>], b: &[i128]) -> Option<Option<(Vec<i128>, i128)>> {
    let n = a.len();
    let mut m: Vec<Vec<i128>> = a.iter().zip(b).map(|(r, &x)| r.iter().copied().chain([x]).collect()).collect();
    let mut prev = 1i128;
    for k in 0..n {
        let p = match (k..n).find(|&r| m[r][k] != 0) {
            Some(p) => p,
            None => return Some(None),
        };
        m.swap(k, p);
        for i in 0..n {
            if i == k {
                continue;
            }
            for j in 0..=n {
                if j != k {
                    let v = m[k][k].checked_mul(m[i][j])?.checked_sub(m[i][k].checked_mul(m[k][j])?)?;
                    m[i][j] = v / prev;
                }
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    if n == 0 {
        return Some(Some((Vec::new(), 1)));
    }
    let det = m[n - 1][n - 1];
    if (0..n).any(|i| m[i][i] != det) {
        return None;
    }
    let sign = det.signum();
    Some(Some(((0..n).map(|i| sign * m[i][n]).collect(), det.abs())))
}

fn q_to_json(x: &Q) -> Value {
    if x.is_integer() {
        match x.to_integer().to_i64() {
            Some(v) => json!(v),
            None => json!(x.to_string()),
        }
    } else {
        json!(x.to_string())
    }
}

fn q_from_json(v: &Value) -> Result<Q> {
    let bad = || Error::InvalidInput(format!("not a rational: {v}"));
    match v {
        Value::Number(n) => n.as_i64().map(q).ok_or_else(bad),
        Value::String(s) => {
            let (num, den) = match s.split_once('/') {
                Some((a, b)) => (a.trim(), b.trim()),
                None => (s.trim(), "1"),
            };
            if num.len() > 30 || den.len() > 30 {
                return Err(bad());
            }
            let num: BigInt = num.parse().map_err(|_| bad())?;
            let den: BigInt = den.parse().map_err(|_| bad())?;
            if den.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(num, den))
        }
        _ => Err(bad()),
    }
}

/// The string cone `C_i` for `i_A` / `i_C`; its facets are `F^∨_1, …, F^∨_N`.
pub fn string_cone(cartan_type: CartanType, n: usize) -> Result<RationalPolytope> {
    let rd = RootDatum::new(cartan_type, n)?;
    let big_n = rd.num_positive_roots();
    let mut ineqs = Vec::with_capacity(big_n);
    let mut labels = Vec::with_capacity(big_n);
    let names = coordinate_names(cartan_type, n);
    let mut offset = 0;
    for m in 1..=n {
        let size = match cartan_type {
            CartanType::A => m,
            CartanType::C => 2 * m - 1,
        };
        // group coordinates c_1 >= … >= c_size >= 0
        let c = |t: usize| Lin::var(big_n, offset + t - 1);
        let mut group = Vec::new();
        for t in 1..=size {
            let lower = if t == size { Lin::constant(big_n, 0) } else { c(t + 1) };
            let lower_name = if t == size { "0".to_string() } else { names[offset + t].clone() };
            group.push((geq(&c(t), &lower), format!("{} = {}", names[offset + t - 1], lower_name)));
        }
        match cartan_type {
            // listed from the bottom of the chain upward
            CartanType::A => group.reverse(),
            CartanType::C => {}
        }
        for (h, l) in group {
            ineqs.push(h);
            labels.push(l);
        }
        offset += size;
    }
    let mut p = RationalPolytope::new(big_n, ineqs, labels)?;
    p.fv_facets = (0..big_n).collect();
    Ok(p)
}

/// `Δ_i(λ)` for `i ∈ {i_A, i_C}`: the string cone (facets `F^∨`) followed by the
/// λ-bounds `σ_j(a) <= <λ, h_{i_j}>` (facets `F_j`).
pub fn string_polytope(rd: &RootDatum, word: &[usize], lambda: &Weight) -> Result<RationalPolytope> {
    check_longest_word(rd, word)?;
    if word != standard_word(rd).as_slice() {
        return Err(Error::Inapplicable(format!(
            "string cone inequalities are only available for i_{}",
            rd.cartan_type
        )));
    }
    if lambda.rank() != rd.rank || !lambda.is_dominant() {
        return Err(Error::InvalidInput(format!("{lambda} is not dominant of rank {}", rd.rank)));
    }
    let mut p = string_cone(rd.cartan_type, rd.rank)?;
    let big_n = word.len();
    let start = p.inequalities.len();
    for j in 1..=big_n {
        let eq = bound_equation(rd, word, j);
        let mut normal = vec![Q::zero(); big_n];
        normal[j - 1] = Q::one();
        for &(l, c) in &eq.terms {
            normal[l - 1] = q(-c);
        }
        p.inequalities.push(Inequality { normal, offset: q(lambda.pair(eq.lambda_index)) });
        p.labels.push(eq.to_string());
    }
    p.f_facets = (start..start + big_n).collect();
    Ok(p)
}

pub fn gt_polytope(n: usize, lambda: &Weight) -> Result<RationalPolytope> {
    deformed_polytope(CartanType::A, n, lambda, &EpsilonProfile::zero(CartanType::A, n))
}

pub fn sgt_polytope(n: usize, lambda: &Weight) -> Result<RationalPolytope> {
    deformed_polytope(CartanType::C, n, lambda, &EpsilonProfile::zero(CartanType::C, n))
}

/// `GT̃_ε(λ)` or `SGT̃_ε(λ)`; the zero profile gives `GT(λ)` / `SGT(λ)`.
pub fn deformed_polytope(
    cartan_type: CartanType,
    n: usize,
    lambda: &Weight,
    eps: &EpsilonProfile,
) -> Result<RationalPolytope> {
    RootDatum::new(cartan_type, n)?;
    eps.validate(cartan_type, n)?;
    if lambda.rank() != n || !lambda.is_dominant() {
        return Err(Error::InvalidInput(format!("{lambda} is not dominant of rank {n}")));
    }
    match cartan_type {
        CartanType::A => Ok(gt_impl(n, lambda, eps)),
        CartanType::C => Ok(sgt_impl(n, lambda, eps)),
    }
}

fn gt_impl(n: usize, lambda: &Weight, eps: &EpsilonProfile) -> RationalPolytope {
    let g = GtCoords::new(n, lambda);
    let mut ineqs = Vec::new();
    let mut labels = Vec::new();
    // (i, j) -> (index of Kogan side, index of dual Kogan side)
    let mut kogan = std::collections::HashMap::new();
    let mut dual = std::collections::HashMap::new();
    for i in 0..n {
        for j in 1..=n - i {
            // a_j^{(i)} + ε_{i+1} >= a_j^{(i+1)}
            kogan.insert((j, i + 1), ineqs.len());
            ineqs.push(geq(&g.a(j, i).plus(eps.a(i + 1)), &g.a(j, i + 1)));
            labels.push(format!("{} = {}", GtCoords::name(j, i), GtCoords::name(j, i + 1)));
            // a_j^{(i+1)} >= a_{j+1}^{(i)}
            dual.insert((j, i + 1), ineqs.len());
            ineqs.push(geq(&g.a(j, i + 1), &g.a(j + 1, i)));
            labels.push(format!("{} = {}", GtCoords::name(j + 1, i), GtCoords::name(j, i + 1)));
        }
    }
    let mut f = Vec::new();
    let mut fv = Vec::new();
    for grp in 1..=n {
        // a_k^{(l)} = a_{k+1}^{(l-1)}, l = n+1-g, k = g..1
        let l = n + 1 - grp;
        for k in (1..=grp).rev() {
            f.push(dual[&(k, l)]);
        }
        // a_k^{(l)} = a_k^{(l+1)}, l = n-g, k = 1..g
        let l = n - grp;
        for k in 1..=grp {
            fv.push(kogan[&(k, l + 1)]);
        }
    }
    let mut p = RationalPolytope::new(g.big_n, ineqs, labels).expect("consistent dimensions");
    p.f_facets = f;
    p.fv_facets = fv;
    p
}

fn sgt_impl(n: usize, lambda: &Weight, eps: &EpsilonProfile) -> RationalPolytope {
    let s = SgtCoords::new(n, lambda);
    let name_a = |k: usize, l: usize| format!("a_{k}^({l})");
    let name_b = |k: usize, l: usize| format!("b_{k}^({l})");
    let mut ineqs = Vec::new();
    let mut labels = Vec::new();
    let mut b_eq_a = std::collections::HashMap::new(); // b_j^(i) = a_j^(i)
    let mut a_eq_bnext = std::collections::HashMap::new(); // a_j^(i) = b_{j+1}^(i)
    let mut a_eq_bdown = std::collections::HashMap::new(); // a_j^(i) = b_j^(i+1)
    let mut bdown_eq_a = std::collections::HashMap::new(); // b_j^(i+1) = a_{j+1}^(i)
    for i in 1..=n {
        for j in 1..=n - i + 1 {
            b_eq_a.insert((j, i), ineqs.len());
            ineqs.push(geq(&s.b(j, i).plus(eps.a_prime(i)), &s.a(j, i)));
            labels.push(format!("{} = {}", name_b(j, i), name_a(j, i)));
            a_eq_bnext.insert((j, i), ineqs.len());
            ineqs.push(geq(&s.a(j, i), &s.b(j + 1, i)));
            labels.push(format!("{} = {}", name_b(j + 1, i), name_a(j, i)));
        }
        if i < n {
            for j in 1..=n - i {
                a_eq_bdown.insert((j, i), ineqs.len());
                ineqs.push(geq(&s.a(j, i).plus(eps.a(i + 1)), &s.b(j, i + 1)));
                labels.push(format!("{} = {}", name_a(j, i), name_b(j, i + 1)));
                bdown_eq_a.insert((j, i), ineqs.len());
                ineqs.push(geq(&s.b(j, i + 1), &s.a(j + 1, i)));
                labels.push(format!("{} = {}", name_a(j + 1, i), name_b(j, i + 1)));
            }
        }
    }
    let mut f = Vec::new();
    let mut fv = Vec::new();
    for grp in 1..=n {
        let l = n + 1 - grp;
        // a_k^{(l)} = b_k^{(l+1)} for k < g; for k = g this is a_g^{(l)} = 0 = b_{g+1}^{(l)}
        for k in 1..=grp {
            if k < grp {
                f.push(a_eq_bdown[&(k, l)]);
            } else {
                f.push(a_eq_bnext[&(k, l)]);
            }
        }
        // b_k^{(l)} = a_{k-1}^{(l)} for k = g..2
        for k in (2..=grp).rev() {
            f.push(a_eq_bnext[&(k - 1, l)]);
        }
        // a_k^{(l)} = b_{k-1}^{(l+1)} for k = 2..g
        for k in 2..=grp {
            fv.push(bdown_eq_a[&(k - 1, l)]);
        }
        // b_k^{(l)} = a_k^{(l)} for k = g..1
        for k in (1..=grp).rev() {
            fv.push(b_eq_a[&(k, l)]);
        }
    }
    let mut p = RationalPolytope::new(s.big_n, ineqs, labels).expect("consistent dimensions");
    p.f_facets = f;
    p.fv_facets = fv;
    p
}

/// `GT(λ)`/`SGT(λ)` for the given type.
pub fn pattern_polytope(cartan_type: CartanType, n: usize, lambda: &Weight) -> Result<RationalPolytope> {
    match cartan_type {
        CartanType::A => gt_polytope(n, lambda),
        CartanType::C => sgt_polytope(n, lambda),
    }
}
