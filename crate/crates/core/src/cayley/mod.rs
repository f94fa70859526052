//! Cayley polytopes: construction, detection and the split-bundle check.
//!
//! The order-`s` Cayley polytope of `P_0, ..., P_k` in `R^m` is the hull of
//! `(v, s*e_j)` over vertices `v` of `P_j`, with `e_0 = 0`. Detection looks
//! for `k` functionals of width `s` whose joint image of the vertex set is
//! exactly `{0, s*e_1, ..., s*e_k}` and which extend to a lattice basis.

pub mod generate;
mod localsplit;

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};

use crate::polytope::{LatticePolytope, VPolytope};
use crate::ratlin::{self, IntMatrix, IntVector, RatVector};
use crate::{Error, Int, Rat, Result};

pub use localsplit::{check_localsplit, LocalsplitReport};

/// A Cayley structure of `P`: `x -> (F x, W x - translation)` is a lattice
/// equivalence from `P` onto `build(summands, s)`, where `F` is `fiber`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyDecomposition {
    pub k: usize,
    pub s: u64,
    /// `k x n`, rows are the functionals
    pub projection: IntMatrix,
    pub translation: IntVector,
    /// `(n - k) x n`, completes `projection` to a unimodular matrix
    pub fiber: IntMatrix,
    /// `k + 1` lattice polytopes in `R^(n - k)`; summand `j` lies over `s*e_j`
    pub summands: Vec<VPolytope>,
    /// all summands share one normal fan
    pub strict: bool,
}

fn check_summands(summands: &[VPolytope], s: u64) -> Result<usize> {
    if summands.len() < 2 {
        return Err(Error::InvalidParameter("a Cayley polytope needs at least two summands".into()));
    }
    if s == 0 {
        return Err(Error::InvalidParameter("order must be positive".into()));
    }
    let m = summands[0].dim();
    for p in summands {
        if p.dim() != m {
            return Err(Error::DimensionMismatch { expected: m, found: p.dim() });
        }
        if let Some(bad) = p.vertices().iter().find(|v| ratlin::to_int_vec(v).is_none()) {
            let parts: Vec<String> = bad.iter().map(|x| x.to_string()).collect();
            return Err(Error::NotLattice(format!("({})", parts.join(", "))));
        }
    }
    Ok(m)
}

/// Vertices of the order-`s` Cayley polytope of `summands` in `R^(m + k)`.
/// Every point `(v, s*e_j)` is extreme, so no hull computation is needed.
pub fn build(summands: &[VPolytope], s: u64) -> Result<VPolytope> {
    let m = check_summands(summands, s)?;
    let k = summands.len() - 1;
    let height = Rat::from_integer(Int::from(s));
    let mut pts = Vec::new();
    for (j, p) in summands.iter().enumerate() {
        for v in p.vertices() {
            let mut x: RatVector = v.clone();
            x.extend((1..=k).map(|i| if i == j { height.clone() } else { Rat::zero() }));
            pts.push(x);
        }
    }
    Ok(VPolytope::from_extreme_points(m + k, pts))
}

/// First pair of summands with different normal fans.
pub fn fan_mismatch(summands: &[VPolytope]) -> Result<Option<(usize, usize)>> {
    for i in 0..summands.len() {
        for j in i + 1..summands.len() {
            if !summands[i].same_normal_fan(&summands[j])? {
                return Ok(Some((i, j)));
            }
        }
    }
    Ok(None)
}

/// `build`, after checking that all summands share one normal fan.
pub fn build_strict(summands: &[VPolytope], s: u64) -> Result<VPolytope> {
    check_summands(summands, s)?;
    if let Some((first, second)) = fan_mismatch(summands)? {
        return Err(Error::FanMismatch { first, second });
    }
    build(summands, s)
}

/// `build` for full-dimensional lattice summands, returning a lattice polytope.
pub fn build_lattice(summands: &[LatticePolytope], s: u64) -> Result<LatticePolytope> {
    let vs: Vec<VPolytope> = summands.iter().map(LatticePolytope::vrep).collect();
    LatticePolytope::from_v(&build(&vs, s)?)
}

/// A primitive functional with its minimum and lattice width on `P`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct WidthCandidate {
    pub functional: IntVector,
    pub min: Int,
    pub width: Int,
}

fn evaluate(w: &[Int], pts: &[IntVector]) -> (Int, Int) {
    let vals: Vec<Int> = pts.iter().map(|p| ratlin::dot(w, p)).collect();
    let min = vals.iter().min().expect("nonempty vertex set").clone();
    let max = vals.iter().max().expect("nonempty vertex set").clone();
    (min, max)
}

/// All primitive functionals of width at most `s` on `P`, one per sign pair
/// (first nonzero entry positive), sorted.
///
/// With affinely independent vertices `v_0, ..., v_n` and `B` the matrix of
/// rows `v_i - v_0`, any such `w` has `B w` in `[-s, s]^n`; enumerating that
/// box and solving for `w` finds every candidate exactly.
pub fn width_candidates(p: &LatticePolytope, s: u64) -> Vec<WidthCandidate> {
    let n = p.dim();
    let verts = p.vertices();
    if n == 0 {
        return Vec::new();
    }
    let base = &verts[0];
    let mut basis: Vec<RatVector> = Vec::new();
    for v in &verts[1..] {
        let d: RatVector = v.iter().zip(base).map(|(a, b)| Rat::from_integer(a - b)).collect();
        let mut trial = basis.clone();
        trial.push(d);
        if ratlin::rank(&trial) == trial.len() {
            basis = trial;
        }
        if basis.len() == n {
            break;
        }
    }
    let inv = ratlin::inverse(&basis).expect("full-dimensional polytope has an affine basis of vertices");
    let bound = Int::from(s);
    let mut found = BTreeSet::new();
    let mut y = vec![-(s as i64); n];
    loop {
        let w: RatVector = (0..n)
            .map(|i| (0..n).map(|j| &inv[i][j] * Rat::from_integer(Int::from(y[j]))).sum())
            .collect();
        if let Some(w) = ratlin::to_int_vec(&w) {
            let first = w.iter().find(|x| !x.is_zero());
            if first.is_some_and(|x| x.is_positive()) && ratlin::gcd_all(&w).is_one() {
                let (min, max) = evaluate(&w, verts);
                let width = max - &min;
                if width <= bound {
                    found.insert(WidthCandidate { functional: w, min, width });
                }
            }
        }
        // odometer over [-s, s]^n
        let mut i = n;
        loop {
            if i == 0 {
                return found.into_iter().collect();
            }
            i -= 1;
            if y[i] < s as i64 {
                y[i] += 1;
                break;
            }
            y[i] = -(s as i64);
        }
    }
}

/// A functional taking only the values `min` and `min + s` on the vertices.
#[derive(Clone, Debug)]
struct Signed2 {
    functional: IntVector,
    min: Int,
    /// vertices at `min + s`
    top: Vec<bool>,
}

fn two_valued(p: &LatticePolytope, s: u64) -> Vec<Signed2> {
    let verts = p.vertices();
    let width = Int::from(s);
    let mut out = Vec::new();
    for c in width_candidates(p, s) {
        if c.width != width {
            continue;
        }
        for w in [c.functional.clone(), c.functional.iter().map(|x| -x).collect()] {
            let vals: Vec<Int> = verts.iter().map(|v| ratlin::dot(&w, v)).collect();
            let min = vals.iter().min().expect("nonempty").clone();
            let top_val = &min + &width;
            if vals.iter().all(|x| *x == min || *x == top_val) {
                let top = vals.iter().map(|x| *x == top_val).collect();
                out.push(Signed2 { functional: w, min, top });
            }
        }
    }
    out.sort_by(|a, b| a.functional.cmp(&b.functional));
    out
}

fn decomposition(p: &LatticePolytope, s: u64, chosen: &[&Signed2]) -> Option<CayleyDecomposition> {
    let n = p.dim();
    let k = chosen.len();
    let rows: Vec<IntVector> = chosen.iter().map(|c| c.functional.clone()).collect();
    let w = IntMatrix::from_rows(&rows).ok()?;
    let snf = ratlin::smith_normal_form(&w);
    let diag = snf.diagonal();
    if diag.len() != k || !diag.iter().all(|d| d.is_one()) {
        return None;
    }
    let fiber_rows: Vec<IntVector> = (k..n).map(|i| snf.v.row(i).to_vec()).collect();
    let fiber = if fiber_rows.is_empty() { IntMatrix::zeros(0, n) } else { IntMatrix::from_rows(&fiber_rows).ok()? };
    let verts = p.vertices();
    let mut groups: Vec<Vec<RatVector>> = vec![Vec::new(); k + 1];
    for (i, v) in verts.iter().enumerate() {
        let j = chosen.iter().position(|c| c.top[i]).map_or(0, |j| j + 1);
        groups[j].push(ratlin::to_rat_vec(&fiber.apply(v)));
    }
    let summands: Vec<VPolytope> = groups.into_iter().map(|g| VPolytope::new(n - k, g)).collect::<Result<_>>().ok()?;
    let strict = fan_mismatch(&summands).ok()?.is_none();
    Some(CayleyDecomposition {
        k,
        s,
        projection: w,
        translation: chosen.iter().map(|c| c.min.clone()).collect(),
        fiber,
        summands,
        strict,
    })
}

/// Depth-first search over increasing index sequences of length `k` with
/// pairwise disjoint top sets leaving a nonempty bottom set.
struct Search<'a> {
    p: &'a LatticePolytope,
    s: u64,
    cands: &'a [Signed2],
    k: usize,
}

fn search<F>(
    ctx: &Search<'_>,
    from: usize,
    chosen: &mut Vec<usize>,
    covered: &mut Vec<bool>,
    accept: &mut F,
) -> Option<CayleyDecomposition>
where
    F: FnMut(&CayleyDecomposition) -> bool,
{
    let Search { p, s, cands, k } = *ctx;
    if chosen.len() == k {
        if covered.iter().all(|&c| c) {
            return None;
        }
        let picked: Vec<&Signed2> = chosen.iter().map(|&i| &cands[i]).collect();
        return decomposition(p, s, &picked).filter(|d| accept(d));
    }
    for i in from..cands.len() {
        if cands.len() - i < k - chosen.len() {
            break;
        }
        let c = &cands[i];
        if c.top.iter().zip(covered.iter()).any(|(&t, &c)| t && c) {
            continue;
        }
        for (cv, &t) in covered.iter_mut().zip(&c.top) {
            *cv |= t;
        }
        chosen.push(i);
        let r = search(ctx, i + 1, chosen, covered, accept);
        chosen.pop();
        for (cv, &t) in covered.iter_mut().zip(&c.top) {
            if t {
                *cv = false;
            }
        }
        if r.is_some() {
            return r;
        }
    }
    None
}

/// The lexicographically first decomposition of length exactly `k` that
/// `accept` approves.
pub fn detect_where<F>(p: &LatticePolytope, s: u64, k: usize, mut accept: F) -> Option<CayleyDecomposition>
where
    F: FnMut(&CayleyDecomposition) -> bool,
{
    if k == 0 || k > p.dim() || s == 0 {
        return None;
    }
    let cands = two_valued(p, s);
    let mut covered = vec![false; p.vertices().len()];
    search(&Search { p, s, cands: &cands, k }, 0, &mut Vec::new(), &mut covered, &mut accept)
}

/// A Cayley structure of order `s` with the largest `k`, ties broken by the
/// lexicographically smallest functional matrix.
pub fn detect(p: &LatticePolytope, s: u64) -> Option<CayleyDecomposition> {
    if s == 0 {
        return None;
    }
    let cands = two_valued(p, s);
    let top = p.dim().min(cands.len());
    (1..=top).rev().find_map(|k| {
        let mut covered = vec![false; p.vertices().len()];
        search(&Search { p, s, cands: &cands, k }, 0, &mut Vec::new(), &mut covered, &mut |_| true)
    })
}

impl CayleyDecomposition {
    /// The unimodular map `x -> (F x, W x - translation)` onto the built polytope.
    pub fn normalizing_map(&self) -> crate::polytope::AffineMap {
        let mut rows = self.fiber.to_rows();
        rows.extend(self.projection.to_rows());
        let n = self.projection.cols();
        let linear = IntMatrix::from_rows(&rows).expect("rows have equal length");
        let mut translation = vec![Int::zero(); n - self.k];
        translation.extend(self.translation.iter().map(|t| -t));
        crate::polytope::AffineMap { linear, translation }
    }

    /// `build(summands, s)` as a lattice polytope.
    pub fn rebuild(&self) -> Result<LatticePolytope> {
        LatticePolytope::from_v(&build(&self.summands, self.s)?)
    }
}
