//! Codegree, degree, rational codegree, spannedness and the nef value.
//!
//! With facets `<rho_i, x> >= -a_i`, a vertex `m` and its shift `u` (the
//! vector with `<rho_i, u> = 1` on the facets through `m`), the polytope `aP`
//! is `b`-spanned at `m` iff `a*m + b*u` lies in `(aP)^(b)`, i.e. iff
//! `a * (<rho_j, m> + a_j) >= b * (1 - <rho_j, u>)` for every facet `j`.
//! The nef value is therefore the largest ratio `(1 - <rho_j, u>) / (<rho_j, m> + a_j)`
//! with positive numerator, and the infimum defining it is attained.

use num_traits::{One, Signed, Zero};

use crate::cayley::{self, CayleyDecomposition};
use crate::lpx::{self, LpVerdict};
use crate::polytope::{LatticePolytope, VertexData};
use crate::ratlin::{self, IntVector, RatVector};
use crate::{Error, Int, Rat, Result};

fn require_positive_dim(p: &LatticePolytope) -> Result<()> {
    if p.dim() == 0 {
        return Err(Error::InvalidParameter("invariant needs dimension at least 1".into()));
    }
    Ok(())
}

fn require_smooth(p: &LatticePolytope) -> Result<()> {
    match p.smoothness().witness {
        None => Ok(()),
        Some(w) => Err(Error::NotSmooth(format!("{w:?}"))),
    }
}

/// Smallest `k` such that `kP` has an interior lattice point; always `<= dim + 1`.
pub fn codegree(p: &LatticePolytope) -> Result<u64> {
    let n = p.dim() as u64;
    for k in 1..=n + 1 {
        if p.shrink(k, 1)?.has_lattice_point()? {
            return Ok(k);
        }
    }
    Err(Error::Internal(format!("no interior lattice point in {}P", n + 1)))
}

/// `dim + 1 - codegree`.
pub fn degree(p: &LatticePolytope) -> Result<u64> {
    Ok(p.dim() as u64 + 1 - codegree(p)?)
}

/// Minimum of `t` over `<rho_i, y> + t * a_i >= 1`; equal to the infimum of
/// `a/b` over nonempty `(aP)^(b)`.
pub fn qcodegree(p: &LatticePolytope) -> Result<Rat> {
    require_positive_dim(p)?;
    let n = p.dim();
    let rows: Vec<RatVector> = p
        .hrep()
        .facets()
        .iter()
        .map(|f| {
            let mut r = ratlin::to_rat_vec(&f.normal);
            r.push(f.offset.clone());
            r
        })
        .collect();
    let rhs = vec![Rat::one(); rows.len()];
    let mut c = vec![Rat::zero(); n + 1];
    c[n] = Rat::one();
    match lpx::minimize(&c, &rows, &rhs) {
        LpVerdict::Optimal { value, .. } => Ok(value),
        other => Err(Error::Internal(format!("rational codegree program: {other:?}"))),
    }
}

/// `a*m + b*u` for the vertex `m` with shift `u`.
pub fn shifted_point(v: &VertexData, a: u64, b: u64) -> Result<RatVector> {
    let u = v
        .shift
        .as_ref()
        .ok_or_else(|| Error::NotSmooth(format!("{:?}", v.point)))?;
    let (a, b) = (Rat::from_integer(Int::from(a)), Rat::from_integer(Int::from(b)));
    Ok(v.point.iter().zip(u).map(|(m, u)| m * &a + Rat::from_integer(u.clone()) * &b).collect())
}

/// Whether `aP` is `b`-spanned at the vertex `v`.
pub fn spanned_at_vertex(p: &LatticePolytope, v: &VertexData, a: u64, b: u64) -> Result<bool> {
    if a == 0 || b == 0 {
        return Err(Error::InvalidParameter("a and b must be positive".into()));
    }
    let x = shifted_point(v, a, b)?;
    Ok(p.shrink(a, b)?.contains(&x))
}

/// Vertices at which `aP` is not `b`-spanned, with their shifted points, in
/// lexicographic vertex order.
pub fn spanning_failures(p: &LatticePolytope, a: u64, b: u64) -> Result<Vec<(IntVector, RatVector)>> {
    require_smooth(p)?;
    let mut out = Vec::new();
    for (v, m) in p.vertex_data().iter().zip(p.vertices()) {
        if !spanned_at_vertex(p, v, a, b)? {
            out.push((m.clone(), shifted_point(v, a, b)?));
        }
    }
    Ok(out)
}

pub fn is_spanned(p: &LatticePolytope, a: u64, b: u64) -> Result<bool> {
    Ok(spanning_failures(p, a, b)?.is_empty())
}

/// The nef value: least `a/b` such that `aP` is `b`-spanned.
pub fn nef_value(p: &LatticePolytope) -> Result<Rat> {
    require_smooth(p)?;
    require_positive_dim(p)?;
    let facets = p.hrep().facets();
    let mut best: Option<Rat> = None;
    for v in p.vertex_data() {
        let u = v.shift.as_ref().expect("smooth vertex has a shift");
        for (j, f) in facets.iter().enumerate() {
            if v.incident.contains(&j) {
                continue;
            }
            let num = Rat::from_integer(Int::one() - ratlin::dot(&f.normal, u));
            if !num.is_positive() {
                continue;
            }
            let ratio = num / f.slack(&v.point);
            if best.as_ref().is_none_or(|b| ratio > *b) {
                best = Some(ratio);
            }
        }
    }
    best.ok_or_else(|| Error::Internal("nef value has no candidate ratio".into()))
}

pub fn is_q_normal(p: &LatticePolytope) -> Result<bool> {
    Ok(qcodegree(p)? == nef_value(p)?)
}

/// Condensed Cayley structure for reports.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleySummary {
    pub k: usize,
    pub s: u64,
    pub strict: bool,
}

impl From<&CayleyDecomposition> for CayleySummary {
    fn from(d: &CayleyDecomposition) -> Self {
        CayleySummary { k: d.k, s: d.s, strict: d.strict }
    }
}

/// Everything computed about one polytope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantReport {
    pub dim: usize,
    pub vertex_count: usize,
    pub lattice_point_count: usize,
    pub smooth: bool,
    pub smooth_witness: Option<IntVector>,
    pub codegree: u64,
    pub degree: u64,
    pub qcodegree: Rat,
    /// present iff smooth
    pub nef_value: Option<Rat>,
    /// whether `P` is 1-spanned; present iff smooth
    pub spanned: Option<bool>,
    pub q_normal: bool,
    /// `q_normal` and `2 * codegree >= dim + 3`
    pub condition1: bool,
    pub cayley: Option<CayleySummary>,
    /// `2 * codegree - 2 - dim`; present iff `condition1`
    pub predicted_defect: Option<i64>,
}

/// Report for any full-dimensional lattice polytope of positive dimension.
/// Smooth-only fields are left empty for non-smooth input.
pub fn analyze(p: &LatticePolytope) -> Result<InvariantReport> {
    require_positive_dim(p)?;
    let n = p.dim();
    let smoothness = p.smoothness();
    let c = codegree(p)?;
    let q = qcodegree(p)?;
    let (tau, spanned) = if smoothness.smooth { (Some(nef_value(p)?), Some(is_spanned(p, 1, 1)?)) } else { (None, None) };
    let q_normal = tau.as_ref() == Some(&q);
    let condition1 = q_normal && 2 * c >= n as u64 + 3;
    let (cayley, predicted_defect) = if condition1 {
        let k = (c - 1) as usize;
        let found = cayley::detect_where(p, 1, k, |d| d.strict);
        match found {
            Some(d) if 2 * d.k > n => (Some(CayleySummary::from(&d)), Some(2 * c as i64 - 2 - n as i64)),
            _ => {
                return Err(Error::Internal(format!(
                    "Q-normal with codegree {c} >= (n+3)/2 but no strict Cayley structure with k + 1 = {c}"
                )))
            }
        }
    } else {
        (cayley::detect(p, 1).as_ref().map(CayleySummary::from), None)
    };
    Ok(InvariantReport {
        dim: n,
        vertex_count: p.vertices().len(),
        lattice_point_count: p.lattice_points().len(),
        smooth: smoothness.smooth,
        smooth_witness: smoothness.witness,
        codegree: c,
        degree: n as u64 + 1 - c,
        qcodegree: q,
        nef_value: tau,
        spanned,
        q_normal,
        condition1,
        cayley,
        predicted_defect,
    })
}

/// The smooth-case report; rejects non-smooth input.
pub fn classify(p: &LatticePolytope) -> Result<InvariantReport> {
    require_smooth(p)?;
    analyze(p)
}
