//! Face decompositions of (opposite) Demazure crystals in string polytopes,
//! Schubert class representatives on (symplectic) Gelfand-Tsetlin polytopes,
//! top-degree pairings and products of Schubert classes.
//!
//! Faces are named by their tight facet indices: `f` lists positions `k` of
//! `F_k` (λ-bound / dual Kogan side) and `fv` positions of `F^∨_k` (string cone /
//! Kogan side), both 1-based. The same names work in the string polytope, in
//! `GT(λ)`/`SGT(λ)` and in every deformation, so a face sum does not depend on
//! the chosen ε.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::cartan_weyl::{
    compatible_subsets, longest_element, standard_word, CartanType, RootDatum, Weight, WeylElement,
};
use crate::crystal::BLambda;
use crate::error::{Error, Result};
use crate::linalg::{self, Q};
use crate::oracle::{self, SchubertExpansion};
use crate::pipedreams::{mset, PipeDream};
use crate::polyhedra::{
    deformed_polytope, pattern_polytope, scaled_lambda, string_polytope, EpsilonProfile, RationalPolytope,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// `X_w`, the Demazure crystal `B_w(λ)`.
    Schubert,
    /// `X^w`, the opposite Demazure crystal `B^w(λ)`.
    Opposite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// Faces `F_k`, `k ∈ R(i, w)`.
    DualKogan,
    /// Faces `F^∨_{k_D}`, `D ∈ 𝓜(w₀w)`.
    Kogan,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct FaceTerm {
    pub f: Vec<usize>,
    pub fv: Vec<usize>,
}

impl FaceTerm {
    pub fn dual_kogan(k: &[usize]) -> Self {
        FaceTerm { f: sorted(k), fv: Vec::new() }
    }

    pub fn kogan(k: &[usize]) -> Self {
        FaceTerm { f: Vec::new(), fv: sorted(k) }
    }

    pub fn codim(&self) -> usize {
        self.f.len() + self.fv.len()
    }

    /// Inequality indices of the face in `p`.
    pub fn tight(&self, p: &RationalPolytope) -> Result<BTreeSet<usize>> {
        let mut t = p.f_indices(&self.f)?;
        t.extend(p.fv_indices(&self.fv)?);
        Ok(t)
    }

    pub fn meet(&self, other: &FaceTerm) -> FaceTerm {
        let f: BTreeSet<usize> = self.f.iter().chain(&other.f).copied().collect();
        let fv: BTreeSet<usize> = self.fv.iter().chain(&other.fv).copied().collect();
        FaceTerm { f: f.into_iter().collect(), fv: fv.into_iter().collect() }
    }
}

impl std::fmt::Display for FaceTerm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let tup = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        match (self.f.is_empty(), self.fv.is_empty()) {
            (true, true) => write!(f, "P"),
            (false, true) => write!(f, "F_({})", tup(&self.f)),
            (true, false) => write!(f, "F^v_({})", tup(&self.fv)),
            (false, false) => write!(f, "F_({}) ∩ F^v_({})", tup(&self.f), tup(&self.fv)),
        }
    }
}

fn sorted(k: &[usize]) -> Vec<usize> {
    let s: BTreeSet<usize> = k.iter().copied().collect();
    s.into_iter().collect()
}

/// A formal integer combination of faces of one polytope family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceSum {
    #[serde(rename = "type")]
    pub cartan_type: CartanType,
    pub rank: usize,
    pub terms: BTreeMap<FaceTerm, i64>,
}

impl FaceSum {
    pub fn new(cartan_type: CartanType, rank: usize) -> Self {
        FaceSum { cartan_type, rank, terms: BTreeMap::new() }
    }

    pub fn add(&mut self, t: FaceTerm, c: i64) {
        let e = self.terms.entry(t).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.retain(|_, v| *v != 0);
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(t, c)| json!({"f": t.f, "fv": t.fv, "coeff": c}))
            .collect();
        json!({"type": self.cartan_type, "rank": self.rank, "terms": terms})
    }
}

/// A face family together with the lattice points of its union.
#[derive(Clone, Debug)]
pub struct FaceUnion {
    pub sum: FaceSum,
    pub points: BTreeSet<Vec<i64>>,
    /// Terms whose face is empty for this λ; they contribute nothing.
    pub dropped_empty: Vec<FaceTerm>,
}

/// Lattice points of `p` lying on at least one of the faces; faces that are empty
/// in `p` are returned separately.
pub fn face_union_points(
    p: &RationalPolytope,
    points: &[Vec<i64>],
    terms: &[FaceTerm],
) -> Result<(BTreeSet<Vec<i64>>, Vec<FaceTerm>)> {
    let mut tights = Vec::new();
    let mut dropped = Vec::new();
    for t in terms {
        let tight = t.tight(p)?;
        if p.is_feasible(&tight) {
            tights.push(tight);
        } else {
            dropped.push(t.clone());
        }
    }
    let relevant: BTreeSet<usize> = tights.iter().flatten().copied().collect();
    let out = points
        .iter()
        .filter(|x| {
            let on: BTreeSet<usize> = relevant.iter().copied().filter(|&i| p.is_tight(x, i)).collect();
            tights.iter().any(|t| t.is_subset(&on))
        })
        .cloned()
        .collect();
    Ok((out, dropped))
}

/// `R(i, w)` as dual Kogan terms `F_k`.
pub fn opposite_terms(rd: &RootDatum, word: &[usize], w: &WeylElement) -> Result<Vec<FaceTerm>> {
    Ok(compatible_subsets(rd, word, w)?.iter().map(|k| FaceTerm::dual_kogan(k)).collect())
}

/// `𝓜(w)` as Kogan terms `F^∨_{k_D}`.
pub fn demazure_terms(rd: &RootDatum, w: &WeylElement) -> Result<Vec<FaceTerm>> {
    Ok(mset(rd, w)?.iter().map(|d: &PipeDream| FaceTerm::kogan(&d.k_d())).collect())
}

fn union_for(rd: &RootDatum, p: &RationalPolytope, terms: Vec<FaceTerm>) -> Result<FaceUnion> {
    let points = p.lattice_points()?;
    let (pts, dropped) = face_union_points(p, &points, &terms)?;
    let mut sum = FaceSum::new(rd.cartan_type, rd.rank);
    for t in terms {
        sum.add(t, 1);
    }
    Ok(FaceUnion { sum, points: pts, dropped_empty: dropped })
}

/// The faces `F_k(Δ_i(λ))`, `k ∈ R(i, w)`, whose lattice points should be `Φ_i(B^w(λ))`.
pub fn opposite_demazure_faces(rd: &RootDatum, word: &[usize], w: &WeylElement, lambda: &Weight) -> Result<FaceUnion> {
    let p = string_polytope(rd, word, lambda)?;
    union_for(rd, &p, opposite_terms(rd, word, w)?)
}

/// The faces `F^∨_{k_D}(Δ_i(λ))`, `D ∈ 𝓜(w)`, whose lattice points should be `Φ_i(B_w(λ))`.
pub fn demazure_faces(rd: &RootDatum, w: &WeylElement, lambda: &Weight) -> Result<FaceUnion> {
    let p = string_polytope(rd, &standard_word(rd), lambda)?;
    union_for(rd, &p, demazure_terms(rd, w)?)
}

/// `dim H⁰(X_w, L_λ)` or `dim H⁰(X^w, L_λ)` as a face-union lattice count.
pub fn h0_dimension(rd: &RootDatum, side: Side, w: &WeylElement, lambda: &Weight) -> Result<u64> {
    let u = match side {
        Side::Schubert => demazure_faces(rd, w, lambda)?,
        Side::Opposite => opposite_demazure_faces(rd, &standard_word(rd), w, lambda)?,
    };
    Ok(u.points.len() as u64)
}

/// `Vol(X_w, L_λ)` / `Vol(X^w, L_λ)`: the sum of the face volumes at dimension
/// `ℓ(w)` / `N - ℓ(w)`.
pub fn volume(rd: &RootDatum, side: Side, w: &WeylElement, lambda: &Weight) -> Result<Q> {
    let word = standard_word(rd);
    let p = string_polytope(rd, &word, lambda)?;
    let big_n = rd.num_positive_roots();
    let (terms, d) = match side {
        Side::Schubert => (demazure_terms(rd, w)?, w.length()),
        Side::Opposite => (opposite_terms(rd, &word, w)?, big_n - w.length()),
    };
    let mut total = Q::zero();
    for t in terms {
        match p.volume_of(&t.tight(&p)?, d) {
            Ok(v) => total += v,
            Err(Error::EmptyFace) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(total)
}

/// A representative of `[X^w]` in the chosen face family.
///
/// The dual Kogan family is `Σ_{k ∈ R(i, w)} F_k`; the Kogan family is
/// `[X_{w₀w}] = Σ_{D ∈ 𝓜(w₀w)} F^∨_{k_D}`.
pub fn schubert_class(rd: &RootDatum, w: &WeylElement, family: Family) -> Result<FaceSum> {
    let terms = match family {
        Family::DualKogan => opposite_terms(rd, &standard_word(rd), w)?,
        Family::Kogan => demazure_terms(rd, &longest_element(rd).compose(w))?,
    };
    let mut sum = FaceSum::new(rd.cartan_type, rd.rank);
    for t in terms {
        sum.add(t, 1);
    }
    Ok(sum)
}

/// How a face meets the deformed polytope.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Meet {
    Empty,
    /// Nonempty with codimension equal to the number of tight facets.
    Transversal { dim: usize },
    /// Nonempty with smaller codimension.
    Degenerate { dim: usize },
}

/// Class computations in the simple polytope `GT̃_ε(λ)` / `SGT̃_ε(λ)`.
pub struct ClassContext {
    pub rd: RootDatum,
    pub word: Vec<usize>,
    pub eps: EpsilonProfile,
    pub lambda: Weight,
    pub polytope: RationalPolytope,
    w0: WeylElement,
    r: BTreeMap<WeylElement, Vec<FaceTerm>>,
    m: BTreeMap<WeylElement, Vec<FaceTerm>>,
}

impl ClassContext {
    /// Uses the default strict profile when `eps` is `None` and the auto-scaled
    /// regular weight.
    pub fn new(rd: &RootDatum, eps: Option<EpsilonProfile>) -> Result<Self> {
        let eps = eps.unwrap_or_else(|| EpsilonProfile::default_for(rd.cartan_type, rd.rank));
        eps.validate(rd.cartan_type, rd.rank)?;
        let big_n = rd.num_positive_roots();
        let lambda = scaled_lambda(&Weight(vec![1; rd.rank]), big_n, &eps);
        let polytope = deformed_polytope(rd.cartan_type, rd.rank, &lambda, &eps)?;
        let word = standard_word(rd);
        let mut r = BTreeMap::new();
        let mut m = BTreeMap::new();
        for w in rd.all_elements() {
            r.insert(w.clone(), opposite_terms(rd, &word, &w)?);
            m.insert(w.clone(), demazure_terms(rd, &w)?);
        }
        Ok(ClassContext { rd: rd.clone(), word, eps, lambda, polytope, w0: longest_element(rd), r, m })
    }

    pub fn dual_kogan(&self, w: &WeylElement) -> &[FaceTerm] {
        &self.r[w]
    }

    /// Kogan representative of `[X^w]`.
    pub fn kogan(&self, w: &WeylElement) -> &[FaceTerm] {
        &self.m[&self.w0.compose(w)]
    }

    pub fn meet(&self, t: &FaceTerm) -> Result<Meet> {
        let tight = t.tight(&self.polytope)?;
        if !self.polytope.is_feasible(&tight) {
            return Ok(Meet::Empty);
        }
        let dim = self.polytope.face_dim_of(&tight)?;
        let full = self.rd.num_positive_roots();
        if dim + tight.len() == full {
            Ok(Meet::Transversal { dim })
        } else {
            Ok(Meet::Degenerate { dim })
        }
    }

    /// `∫ [X^u] · [X^v]` for `ℓ(u) + ℓ(v) = N`, by counting the vertices
    /// `F_k ∩ F^∨_{k_D}` with `k ∈ R(i, u)` and `D ∈ 𝓜(w₀v)`.
    pub fn degree_pairing(&self, u: &WeylElement, v: &WeylElement) -> Result<i64> {
        let big_n = self.rd.num_positive_roots();
        if u.length() + v.length() != big_n {
            return Err(Error::InvalidInput(format!(
                "ℓ({u}) + ℓ({v}) = {} is not {big_n}",
                u.length() + v.length()
            )));
        }
        let mut total = 0;
        for a in self.dual_kogan(u) {
            for b in self.kogan(v) {
                let t = a.meet(b);
                match self.meet(&t)? {
                    Meet::Empty => {}
                    Meet::Transversal { .. } => total += 1,
                    Meet::Degenerate { dim } => {
                        return Err(Error::Unresolved(format!("{t} is nonempty of dimension {dim}, not transversal")))
                    }
                }
            }
        }
        Ok(total)
    }

    /// `[X^v] · [X^w]` through the mixed face sum, identified by volume polynomials
    /// and checked against the BGG oracle.
    pub fn product(&self, v: &WeylElement, w: &WeylElement) -> Result<Product> {
        let rd = &self.rd;
        let big_n = rd.num_positive_roots();
        let target = v.length() + w.length();
        let mut mixed = FaceSum::new(rd.cartan_type, rd.rank);
        let mut dropped_empty = Vec::new();
        let mut unresolved = Vec::new();
        for a in self.dual_kogan(v) {
            for b in self.kogan(w) {
                let t = a.meet(b);
                match self.meet(&t)? {
                    Meet::Empty => dropped_empty.push(t),
                    Meet::Transversal { .. } => mixed.add(t, 1),
                    Meet::Degenerate { .. } => unresolved.push(t),
                }
            }
        }

        // the product of the two dual Kogan sums, kept when every meeting is transversal
        let mut faces = Vec::new();
        let mut dk_ok = true;
        for a in self.dual_kogan(v) {
            for b in self.dual_kogan(w) {
                if a.f.iter().any(|x| b.f.contains(x)) {
                    // shared facets never meet transversally
                    let t = a.meet(b);
                    if self.meet(&t)? != Meet::Empty {
                        dk_ok = false;
                    }
                    continue;
                }
                let t = a.meet(b);
                match self.meet(&t)? {
                    Meet::Empty => {}
                    Meet::Transversal { .. } => faces.push(t.f),
                    Meet::Degenerate { .. } => dk_ok = false,
                }
            }
        }
        faces.sort();
        let dual_kogan_expansion = if dk_ok { self.identify_dual_kogan(&faces) } else { None };

        let bgg = oracle::bgg_structure_constants(rd, v, w)?;
        let expansion = if !unresolved.is_empty() {
            None
        } else if target > big_n {
            if mixed.is_empty() {
                Some(SchubertExpansion::new())
            } else {
                None
            }
        } else {
            self.identify_by_volume(&mixed, target)?
        };
        let certified = match &expansion {
            Some(e) => {
                if e.values().any(|&c| c < 0) {
                    return Err(Error::TheoremViolation(format!("negative structure constant in {v}·{w}")));
                }
                if *e != bgg {
                    return Err(Error::TheoremViolation(format!(
                        "{v}·{w}: face identification {} differs from BGG {}",
                        expansion_string(e),
                        expansion_string(&bgg)
                    )));
                }
                dual_kogan_expansion.as_ref().is_none_or(|d| d == e)
            }
            None => false,
        };
        Ok(Product {
            v: v.clone(),
            w: w.clone(),
            faces,
            mixed,
            dropped_empty,
            unresolved,
            expansion,
            dual_kogan_expansion,
            bgg,
            certified,
        })
    }

    /// Groups dual Kogan faces into whole sets `R(i, u)` with uniform multiplicity.
    fn identify_dual_kogan(&self, faces: &[Vec<usize>]) -> Option<SchubertExpansion> {
        let mut mult: BTreeMap<Vec<usize>, i64> = BTreeMap::new();
        for k in faces {
            *mult.entry(k.clone()).or_insert(0) += 1;
        }
        let mut out = SchubertExpansion::new();
        let mut covered = 0usize;
        for (u, terms) in &self.r {
            let counts: Vec<i64> = terms.iter().map(|t| mult.get(&t.f).copied().unwrap_or(0)).collect();
            let c = counts[0];
            if counts.iter().any(|&x| x != c) {
                return None;
            }
            if c != 0 {
                out.insert(u.clone(), c);
                covered += terms.len();
            }
        }
        (covered == mult.len()).then_some(out)
    }

    /// Solves `Σ_T Vol_d(G_T) = Σ_u c_u Σ_{k ∈ R(u)} Vol_d(F_k)` in `GT(λ)`/`SGT(λ)`
    /// over a grid of regular λ, with `d = N - target`.
    fn identify_by_volume(&self, mixed: &FaceSum, target: usize) -> Result<Option<SchubertExpansion>> {
        let rd = &self.rd;
        let d = rd.num_positive_roots() - target;
        let candidates: Vec<WeylElement> = self.r.keys().filter(|u| u.length() == target).cloned().collect();
        let grid = lambda_grid(rd.rank, d as i64 + 1);
        let rows: Vec<(Vec<Q>, Q)> = grid
            .par_iter()
            .map(|lam| -> Result<(Vec<Q>, Q)> {
                let p = pattern_polytope(rd.cartan_type, rd.rank, lam)?;
                let vol = |t: &FaceTerm| -> Result<Q> {
                    match p.volume_of(&t.tight(&p)?, d) {
                        Ok(x) => Ok(x),
                        Err(Error::EmptyFace) => Ok(Q::zero()),
                        Err(e) => Err(e),
                    }
                };
                let mut rhs = Q::zero();
                for (t, c) in &mixed.terms {
                    rhs += vol(t)? * Q::from_integer((*c).into());
                }
                let mut row = Vec::with_capacity(candidates.len());
                for u in &candidates {
                    let mut s = Q::zero();
                    for t in &self.r[u] {
                        s += vol(t)?;
                    }
                    row.push(s);
                }
                Ok((row, rhs))
            })
            .collect::<Result<_>>()?;
        let (a, b): (Vec<Vec<Q>>, Vec<Q>) = rows.into_iter().unzip();
        if candidates.is_empty() {
            return Ok(b.iter().all(|x| x.is_zero()).then(SchubertExpansion::new));
        }
        let sol = match linalg::solve_unique(&a, &b) {
            Some(s) => s,
            None => return Ok(None),
        };
        let mut out = SchubertExpansion::new();
        for (u, c) in candidates.into_iter().zip(sol) {
            let c = linalg::to_i64(&c).ok_or_else(|| Error::Convention(format!("non-integral coefficient {c} of {u}")))?;
            if c != 0 {
                out.insert(u, c);
            }
        }
        Ok(Some(out))
    }
}

/// All weights with coefficients in `1..=m`.
fn lambda_grid(n: usize, m: i64) -> Vec<Weight> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v: Vec<i64>| {
                (1..=m).map(move |x| {
                    let mut v = v.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out.into_iter().map(Weight).collect()
}

#[derive(Clone, Debug)]
pub struct Product {
    pub v: WeylElement,
    pub w: WeylElement,
    /// Product of the dual Kogan sums of `v` and `w`: the transversal unions `k ∪ k'`.
    pub faces: Vec<Vec<usize>>,
    /// `Σ_{k ∈ R(i, v)} Σ_{D ∈ 𝓜(w₀w)} [F_k ∩ F^∨_{k_D}]`, transversal terms only.
    pub mixed: FaceSum,
    pub dropped_empty: Vec<FaceTerm>,
    /// Nonempty, non-transversal mixed terms; identification is skipped when present.
    pub unresolved: Vec<FaceTerm>,
    pub expansion: Option<SchubertExpansion>,
    pub dual_kogan_expansion: Option<SchubertExpansion>,
    pub bgg: SchubertExpansion,
    pub certified: bool,
}

impl Product {
    pub fn to_json(&self) -> Value {
        let exp = |e: &SchubertExpansion| -> Value {
            Value::Object(e.iter().map(|(u, c)| (u.to_string(), json!(c))).collect())
        };
        json!({
            "v": self.v.to_string(),
            "w": self.w.to_string(),
            "faces": self.faces,
            "expansion": self.expansion.as_ref().map(exp),
            "certified": self.certified,
            "status": if self.expansion.is_some() { "identified" } else { "unidentified" },
            "mixed_faces": self.mixed.to_json()["terms"],
            "dropped_empty": self.dropped_empty.len(),
            "unresolved": self.unresolved.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
            "dual_kogan_expansion": self.dual_kogan_expansion.as_ref().map(exp),
            "bgg": exp(&self.bgg),
        })
    }
}

pub fn expansion_string(e: &SchubertExpansion) -> String {
    if e.is_empty() {
        return "0".into();
    }
    e.iter()
        .map(|(u, c)| if *c == 1 { format!("[X^{u}]") } else { format!("{c}[X^{u}]") })
        .collect::<Vec<_>>()
        .join(" + ")
}

/// `[X^v] · [X^w]` with the default deformation.
pub fn product_c(rd: &RootDatum, v: &WeylElement, w: &WeylElement) -> Result<Product> {
    ClassContext::new(rd, None)?.product(v, w)
}

pub fn degree_pairing(rd: &RootDatum, u: &WeylElement, v: &WeylElement) -> Result<i64> {
    ClassContext::new(rd, None)?.degree_pairing(u, v)
}

/// One cell of a verification matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellReport {
    pub theorem: String,
    #[serde(rename = "type")]
    pub cartan_type: CartanType,
    pub rank: usize,
    pub lambda: Vec<i64>,
    pub w: String,
    pub status: String,
    pub faces: usize,
    pub lattice_points: usize,
    pub dropped_empty: usize,
    pub mismatches: Vec<String>,
}

impl CellReport {
    pub fn passed(&self) -> bool {
        self.status == "pass"
    }
}

fn diff_report(expected: &BTreeSet<Vec<i64>>, got: &BTreeSet<Vec<i64>>) -> Vec<String> {
    let fmt = |x: &Vec<i64>| format!("({})", x.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(","));
    let mut out: Vec<String> = expected.difference(got).map(|x| format!("missing {}", fmt(x))).collect();
    out.extend(got.difference(expected).map(|x| format!("extra {}", fmt(x))));
    out
}

fn cell(
    theorem: &str,
    rd: &RootDatum,
    lambda: &Weight,
    w: &WeylElement,
    faces: usize,
    points: usize,
    dropped: usize,
    mismatches: Vec<String>,
) -> CellReport {
    CellReport {
        theorem: theorem.into(),
        cartan_type: rd.cartan_type,
        rank: rd.rank,
        lambda: lambda.0.clone(),
        w: w.to_string(),
        status: if mismatches.is_empty() { "pass" } else { "fail" }.into(),
        faces,
        lattice_points: points,
        dropped_empty: dropped,
        mismatches,
    }
}

/// Checks `Φ_i(B^w(λ))` against the `R(i, w)` faces for every `w`.
pub fn check_theorem1(rd: &RootDatum, lambda: &Weight) -> Result<Vec<CellReport>> {
    let word = standard_word(rd);
    let b = crate::crystal::build_b_lambda(rd, &word, lambda)?;
    let p = string_polytope(rd, &word, lambda)?;
    let points = p.lattice_points()?;
    let mut out = Vec::new();
    for w in rd.all_elements() {
        let terms = opposite_terms(rd, &word, &w)?;
        let (got, dropped) = face_union_points(&p, &points, &terms)?;
        let expected = b.opposite_demazure(rd, &w);
        out.push(cell("1", rd, lambda, &w, terms.len(), got.len(), dropped.len(), diff_report(&expected, &got)));
    }
    Ok(out)
}

/// Checks `Φ_i(B_w(λ))` against the `𝓜(w)` faces for every `w`, and the crystal
/// size against the Demazure character.
pub fn check_demazure(rd: &RootDatum, lambda: &Weight) -> Result<Vec<CellReport>> {
    let word = standard_word(rd);
    let b = crate::crystal::build_b_lambda(rd, &word, lambda)?;
    let p = string_polytope(rd, &word, lambda)?;
    let points = p.lattice_points()?;
    let theorem = match rd.cartan_type {
        CartanType::A => "2",
        CartanType::C => "3",
    };
    let mut out = Vec::new();
    for w in rd.all_elements() {
        let terms = demazure_terms(rd, &w)?;
        let (got, dropped) = face_union_points(&p, &points, &terms)?;
        let expected = b.demazure(&w);
        let mut mismatches = diff_report(&expected, &got);
        let ch = oracle::character_dimension(&oracle::demazure_character(rd, &w, lambda));
        if ch != expected.len() as i64 {
            mismatches.push(format!("|B_w(λ)| = {} but the Demazure character has dimension {ch}", expected.len()));
        }
        out.push(cell(theorem, rd, lambda, &w, terms.len(), got.len(), dropped.len(), mismatches));
    }
    Ok(out)
}

/// Compares a face union with the matching crystal subset of an existing `B(λ)`.
pub fn union_matches_crystal(b: &BLambda, rd: &RootDatum, union: &FaceUnion, side: Side, w: &WeylElement) -> bool {
    let expected = match side {
        Side::Schubert => b.demazure(w),
        Side::Opposite => b.opposite_demazure(rd, w),
    };
    expected == union.points
}

/// Outcome of one pairing `(u, v)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairingReport {
    pub u: String,
    pub v: String,
    pub expected: i64,
    /// `None` when unresolved.
    pub value: Option<i64>,
    pub note: Option<String>,
}

/// `degree_pairing(u, v)` for every complementary-length pair, compared with
/// `δ_{v, w₀u}`.
pub fn check_duality(ctx: &ClassContext) -> Result<Vec<PairingReport>> {
    let elems = ctx.rd.all_elements();
    let big_n = ctx.rd.num_positive_roots();
    let mut out = Vec::new();
    for u in &elems {
        for v in elems.iter().filter(|v| v.length() + u.length() == big_n) {
            let expected = i64::from(*v == ctx.w0.compose(u));
            let (value, note) = match ctx.degree_pairing(u, v) {
                Ok(x) => (Some(x), None),
                Err(Error::Unresolved(m)) => (None, Some(m)),
                Err(e) => return Err(e),
            };
            out.push(PairingReport { u: u.to_string(), v: v.to_string(), expected, value, note });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan_weyl::word_a;
    use crate::crystal::build_b_lambda;
    use crate::oracle::weyl_dimension;
    use num_traits::One;

    fn el(rd: &RootDatum, w: &[usize]) -> WeylElement {
        rd.from_word(w).unwrap()
    }

    #[test]
    fn whole_polytope_for_identity() {
        let rd = RootDatum::a(2);
        let lam = Weight(vec![1, 1]);
        let u = opposite_demazure_faces(&rd, &word_a(2), &rd.identity(), &lam).unwrap();
        assert_eq!(u.sum.len(), 1);
        assert_eq!(u.sum.terms.keys().next().unwrap(), &FaceTerm::default());
        assert_eq!(u.points.len(), 8);
    }

    #[test]
    fn opposite_faces_small_example() {
        let rd = RootDatum::a(2);
        let lam = Weight(vec![1, 1]);
        let w = el(&rd, &[1]);
        let u = opposite_demazure_faces(&rd, &word_a(2), &w, &lam).unwrap();
        let b = build_b_lambda(&rd, &word_a(2), &lam).unwrap();
        assert_eq!(u.points, b.opposite_demazure(&rd, &w));
        assert_eq!(u.points.len(), 5);
    }

    #[test]
    fn demazure_faces_small_example() {
        let rd = RootDatum::a(2);
        let lam = Weight(vec![1, 1]);
        let w = el(&rd, &[2, 1]);
        let u = demazure_faces(&rd, &w, &lam).unwrap();
        assert_eq!(u.sum.len(), 2);
        let b = build_b_lambda(&rd, &word_a(2), &lam).unwrap();
        assert_eq!(u.points, b.demazure(&w));
        assert!(union_matches_crystal(&b, &rd, &u, Side::Schubert, &w));
    }

    #[test]
    fn theorem_matrix_rank_two() {
        for rd in [RootDatum::a(2), RootDatum::c(2)] {
            for a in 0..=2 {
                for c in 0..=2 {
                    let lam = Weight(vec![a, c]);
                    for r in check_theorem1(&rd, &lam).unwrap().into_iter().chain(check_demazure(&rd, &lam).unwrap()) {
                        assert!(r.passed(), "{r:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn dimensions_and_volumes() {
        let rd = RootDatum::a(2);
        let rho = Weight(vec![1, 1]);
        let w0 = longest_element(&rd);
        assert_eq!(h0_dimension(&rd, Side::Schubert, &w0, &rho).unwrap(), 8);
        assert_eq!(h0_dimension(&rd, Side::Opposite, &rd.identity(), &rho).unwrap(), weyl_dimension(&rd, &rho).unwrap());
        assert_eq!(volume(&rd, Side::Opposite, &rd.identity(), &rho).unwrap(), Q::one());
        assert_eq!(volume(&rd, Side::Schubert, &w0, &rho).unwrap(), Q::one());
        // a point for X^{w₀}
        assert_eq!(volume(&rd, Side::Opposite, &w0, &rho).unwrap(), Q::one());
    }

    #[test]
    fn volumes_match_degree_of_x_w() {
        // Vol(X_w) = Vol(X^{w₀w}) since both are ∫ [X_w] c_1(L)^{ℓ(w)} / ℓ(w)!
        let rd = RootDatum::c(2);
        let lam = Weight(vec![1, 2]);
        let w0 = longest_element(&rd);
        for w in rd.all_elements() {
            let a = volume(&rd, Side::Schubert, &w, &lam).unwrap();
            let b = volume(&rd, Side::Opposite, &w0.compose(&w), &lam).unwrap();
            assert_eq!(a, b, "{w}");
        }
    }

    #[test]
    fn class_representatives() {
        let rd = RootDatum::c(2);
        let s1 = schubert_class(&rd, &el(&rd, &[1]), Family::DualKogan).unwrap();
        let s2 = schubert_class(&rd, &el(&rd, &[2]), Family::DualKogan).unwrap();
        let keys = |s: &FaceSum| s.terms.keys().map(|t| t.f.clone()).collect::<Vec<_>>();
        assert_eq!(keys(&s1), vec![vec![1], vec![3]]);
        assert_eq!(keys(&s2), vec![vec![2], vec![4]]);
        let e = schubert_class(&rd, &rd.identity(), Family::DualKogan).unwrap();
        assert_eq!(e.terms.keys().collect::<Vec<_>>(), vec![&FaceTerm::default()]);
        // [X_{s2s1s2}] = [X^{w₀ s2s1s2}] in the Kogan family
        let w0 = longest_element(&rd);
        let k = schubert_class(&rd, &w0.compose(&el(&rd, &[2, 1, 2])), Family::Kogan).unwrap();
        assert_eq!(k.len(), 3);
    }

    #[test]
    fn codimension_matches_length_in_deformed_polytope() {
        for rd in [RootDatum::a(2), RootDatum::c(2), RootDatum::a(3)] {
            let ctx = ClassContext::new(&rd, None).unwrap();
            for w in rd.all_elements() {
                for t in ctx.dual_kogan(&w).iter().chain(ctx.kogan(&w)) {
                    match ctx.meet(t).unwrap() {
                        Meet::Transversal { dim } => {
                            assert_eq!(dim, rd.num_positive_roots() - w.length(), "{w} {t}")
                        }
                        other => panic!("{w} {t}: {other:?}"),
                    }
                }
            }
        }
    }

    #[test]
    fn pairing_c2() {
        let rd = RootDatum::c(2);
        let ctx = ClassContext::new(&rd, None).unwrap();
        for r in check_duality(&ctx).unwrap() {
            if let Some(v) = r.value {
                assert_eq!(v, r.expected, "{r:?}");
            }
        }
        let w0 = longest_element(&rd);
        assert_eq!(ctx.degree_pairing(&rd.identity(), &w0).unwrap(), 1);
        assert!(ctx.degree_pairing(&rd.identity(), &rd.identity()).is_err());
    }

    #[test]
    fn product_s1_s2_in_c2() {
        let rd = RootDatum::c(2);
        let p = product_c(&rd, &el(&rd, &[1]), &el(&rd, &[2])).unwrap();
        assert_eq!(p.faces, vec![vec![1, 2], vec![1, 4], vec![2, 3], vec![3, 4]]);
        let want: SchubertExpansion = [(el(&rd, &[1, 2]), 1), (el(&rd, &[2, 1]), 1)].into_iter().collect();
        assert_eq!(p.expansion.as_ref(), Some(&want));
        assert_eq!(p.dual_kogan_expansion.as_ref(), Some(&want));
        assert!(p.certified);
    }

    #[test]
    fn identity_product() {
        let rd = RootDatum::c(2);
        let ctx = ClassContext::new(&rd, None).unwrap();
        for w in rd.all_elements() {
            let p = ctx.product(&rd.identity(), &w).unwrap();
            let want: SchubertExpansion = [(w.clone(), 1)].into_iter().collect();
            assert_eq!(p.expansion, Some(want));
        }
    }

    #[test]
    fn lambda_grid_size() {
        assert_eq!(lambda_grid(2, 3).len(), 9);
        assert!(lambda_grid(3, 2).iter().all(|l| l.is_regular_dominant()));
    }
}
