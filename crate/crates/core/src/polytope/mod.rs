//! Polytopes in facet and vertex form.
//!
//! A facet presentation stores half spaces `<normal, x> >= -offset` with
//! primitive integer normals. Shrinking moves every hyperplane inward and is
//! defined on the presentation itself, so the presentation of a lattice
//! polytope is fixed once, at canonicalization, before any shrink is taken.

mod enumerate;
mod equivalence;
mod lattice;

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num_traits::{One, Signed, Zero};

use crate::lpx::{self, LpVerdict};
use crate::ratlin::{self, pair, IntVector, RatVector, Solution};
use crate::{Error, Int, Rat, Result};

pub use equivalence::{lattice_equivalent, AffineMap};
pub use lattice::{LatticePolytope, Smoothness};

/// The half space `<normal, x> >= -offset`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Facet {
    pub normal: IntVector,
    pub offset: Rat,
}

impl Facet {
    /// Builds a half space, dividing a non-primitive normal (and the offset)
    /// by the gcd of the normal's components.
    pub fn new(normal: IntVector, offset: Rat) -> Result<Self> {
        let g = ratlin::gcd_all(&normal);
        if g.is_zero() {
            return Err(Error::ZeroVector);
        }
        if g.is_one() {
            return Ok(Facet { normal, offset });
        }
        let normal = normal.iter().map(|x| x / &g).collect();
        Ok(Facet { normal, offset: offset / Rat::from_integer(g) })
    }

    pub fn from_i64(normal: &[i64], offset: i64) -> Result<Self> {
        Facet::new(ratlin::int_vec(normal), Rat::from_integer(Int::from(offset)))
    }

    /// `<normal, x> + offset`; nonnegative exactly on the half space.
    pub fn slack(&self, x: &[Rat]) -> Rat {
        pair(&self.normal, x) + &self.offset
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        !self.slack(x).is_negative()
    }
}

/// A vertex together with the facets through it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexData {
    pub point: RatVector,
    /// indices into the facet list, ascending
    pub incident: Vec<usize>,
    /// `u` with `<normal_i, u> = 1` for every incident facet; present exactly
    /// when the vertex lies on `dim` facets whose normals form a lattice basis
    pub shift: Option<IntVector>,
}

/// Intersection of finitely many half spaces in `R^dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HPolytope {
    dim: usize,
    facets: Vec<Facet>,
}

impl HPolytope {
    /// Keeps the given order; identical half spaces are merged.
    pub fn new(dim: usize, facets: Vec<Facet>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut kept = Vec::with_capacity(facets.len());
        for f in facets {
            if f.normal.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: f.normal.len() });
            }
            if seen.insert(f.clone()) {
                kept.push(f);
            }
        }
        Ok(HPolytope { dim, facets: kept })
    }

    /// Convenience constructor from `(normal, offset)` pairs.
    pub fn from_i64(dim: usize, facets: &[(&[i64], i64)]) -> Result<Self> {
        let facets = facets
            .iter()
            .map(|(n, a)| Facet::from_i64(n, *a))
            .collect::<Result<Vec<_>>>()?;
        HPolytope::new(dim, facets)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// The system `A x >= b` with `b_i = -offset_i`.
    pub fn constraint_system(&self) -> (Vec<RatVector>, RatVector) {
        let rows = self.facets.iter().map(|f| ratlin::to_rat_vec(&f.normal)).collect();
        let rhs = self.facets.iter().map(|f| -&f.offset).collect();
        (rows, rhs)
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        self.facets.iter().all(|f| f.contains(x))
    }

    pub fn contains_int(&self, x: &[Int]) -> bool {
        self.contains(&ratlin::to_rat_vec(x))
    }

    pub fn is_empty(&self) -> bool {
        let (rows, rhs) = self.constraint_system();
        !lpx::feasible(&rows, &rhs)
    }

    /// Boundedness depends only on the normals: the recession cone
    /// `{d : N d >= 0}` must be trivial.
    pub fn is_bounded(&self) -> bool {
        let normals: Vec<RatVector> = self.facets.iter().map(|f| ratlin::to_rat_vec(&f.normal)).collect();
        if ratlin::rank(&normals) < self.dim {
            return false;
        }
        // with full rank, a nonzero recession direction makes some N d positive
        let mut rows = normals.clone();
        let mut rhs = vec![Rat::zero(); normals.len()];
        let total: RatVector = (0..self.dim).map(|j| normals.iter().map(|r| &r[j]).sum()).collect();
        rows.push(total);
        rhs.push(Rat::one());
        !lpx::feasible(&rows, &rhs)
    }

    /// Removes redundant inequalities and sorts the rest by `(normal, offset)`.
    pub fn canonicalize(&self) -> Result<Self> {
        if self.is_empty() {
            return Err(Error::Empty);
        }
        let mut keep: Vec<bool> = vec![true; self.facets.len()];
        for i in 0..self.facets.len() {
            let others: Vec<&Facet> = self
                .facets
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i && keep[j])
                .map(|(_, f)| f)
                .collect();
            let rows: Vec<RatVector> = others.iter().map(|f| ratlin::to_rat_vec(&f.normal)).collect();
            let rhs: RatVector = others.iter().map(|f| -&f.offset).collect();
            let f = &self.facets[i];
            let redundant = match lpx::minimize(&ratlin::to_rat_vec(&f.normal), &rows, &rhs) {
                LpVerdict::Optimal { value, .. } => value >= -&f.offset,
                _ => false,
            };
            if redundant {
                keep[i] = false;
            }
        }
        let mut facets: Vec<Facet> = self
            .facets
            .iter()
            .zip(&keep)
            .filter(|(_, &k)| k)
            .map(|(f, _)| f.clone())
            .collect();
        facets.sort();
        Ok(HPolytope { dim: self.dim, facets })
    }

    /// `(aP)^(b)`: every half space `<rho, x> >= -offset` becomes
    /// `<rho, x> >= -a*offset + b`. The result is not canonicalized and may be
    /// empty or lower-dimensional.
    pub fn shrink(&self, a: u64, b: u64) -> Result<HPolytope> {
        if a == 0 {
            return Err(Error::InvalidParameter("dilation factor must be positive".into()));
        }
        let a = Rat::from_integer(Int::from(a));
        let b = Rat::from_integer(Int::from(b));
        let facets = self
            .facets
            .iter()
            .map(|f| Facet { normal: f.normal.clone(), offset: &f.offset * &a - &b })
            .collect();
        Ok(HPolytope { dim: self.dim, facets })
    }

    /// Vertices by brute force over `dim`-subsets of facets. Results are
    /// sorted lexicographically; each carries its full incident facet set.
    pub fn vertices(&self) -> Result<Vec<VertexData>> {
        if !self.is_bounded() {
            return Err(Error::Unbounded);
        }
        let n = self.dim;
        let (rows, rhs) = self.constraint_system();
        let mut points: BTreeMap<RatVector, ()> = BTreeMap::new();
        for subset in (0..self.facets.len()).combinations(n) {
            let a: Vec<RatVector> = subset.iter().map(|&i| rows[i].clone()).collect();
            let b: RatVector = subset.iter().map(|&i| rhs[i].clone()).collect();
            if let Solution::Unique(x) = ratlin::solve_exact(&a, &b, n) {
                if !points.contains_key(&x) && self.contains(&x) {
                    points.insert(x, ());
                }
            }
        }
        if points.is_empty() {
            return Err(Error::Empty);
        }
        Ok(points.into_keys().map(|p| self.vertex_data(p)).collect())
    }

    fn vertex_data(&self, point: RatVector) -> VertexData {
        let incident: Vec<usize> = (0..self.facets.len())
            .filter(|&i| self.facets[i].slack(&point).is_zero())
            .collect();
        let shift = (incident.len() == self.dim)
            .then(|| {
                let basis: Vec<IntVector> = incident.iter().map(|&i| self.facets[i].normal.clone()).collect();
                let duals = ratlin::dual_basis(&basis).ok()?;
                Some((0..self.dim).map(|c| duals.iter().map(|u| &u[c]).sum()).collect())
            })
            .flatten();
        VertexData { point, incident, shift }
    }

    pub fn vrep(&self) -> Result<VPolytope> {
        let pts = self.vertices()?.into_iter().map(|v| v.point).collect();
        Ok(VPolytope::from_extreme_points(self.dim, pts))
    }

    /// All lattice points, sorted lexicographically.
    pub fn lattice_points(&self) -> Result<Vec<IntVector>> {
        enumerate::lattice_points(self, false)
    }

    /// True iff the polytope contains at least one lattice point.
    pub fn has_lattice_point(&self) -> Result<bool> {
        Ok(!enumerate::lattice_points(self, true)?.is_empty())
    }
}

/// Convex hull of finitely many rational points, stored by its vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VPolytope {
    dim: usize,
    vertices: Vec<RatVector>,
}

impl VPolytope {
    /// Hull of `points`: duplicates and non-extreme points are dropped and the
    /// vertices sorted.
    pub fn new(dim: usize, points: Vec<RatVector>) -> Result<Self> {
        for p in &points {
            if p.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: p.len() });
            }
        }
        let pts: Vec<RatVector> = points.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        if pts.is_empty() {
            return Err(Error::Empty);
        }
        let extreme = (0..pts.len())
            .filter(|&i| is_extreme(&pts, i))
            .map(|i| pts[i].clone())
            .collect();
        Ok(VPolytope { dim, vertices: extreme })
    }

    pub fn from_int_points(dim: usize, points: &[IntVector]) -> Result<Self> {
        VPolytope::new(dim, points.iter().map(|p| ratlin::to_rat_vec(p)).collect())
    }

    pub fn from_i64(dim: usize, points: &[&[i64]]) -> Result<Self> {
        let pts: Vec<IntVector> = points.iter().map(|p| ratlin::int_vec(p)).collect();
        VPolytope::from_int_points(dim, &pts)
    }

    /// Caller guarantees the points are the distinct vertices of their hull.
    pub(crate) fn from_extreme_points(dim: usize, mut points: Vec<RatVector>) -> Self {
        points.sort();
        points.dedup();
        VPolytope { dim, vertices: points }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[RatVector] {
        &self.vertices
    }

    pub fn integer_vertices(&self) -> Option<Vec<IntVector>> {
        self.vertices.iter().map(|v| ratlin::to_int_vec(v)).collect()
    }

    pub fn affine_dim(&self) -> usize {
        let base = &self.vertices[0];
        let diffs: Vec<RatVector> = self.vertices[1..]
            .iter()
            .map(|v| v.iter().zip(base).map(|(a, b)| a - b).collect())
            .collect();
        ratlin::rank(&diffs)
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.affine_dim() == self.dim
    }

    /// Canonical facet presentation by brute force over `dim`-subsets of
    /// vertices: every hyperplane through `dim` affinely independent vertices
    /// that leaves all vertices on one side supports a facet.
    pub fn facets(&self) -> Result<HPolytope> {
        let n = self.dim;
        let affine_dim = self.affine_dim();
        if affine_dim < n {
            return Err(Error::Degenerate { affine_dim, ambient: n });
        }
        if n == 0 {
            return Ok(HPolytope { dim: 0, facets: vec![] });
        }
        let mut found: BTreeSet<Facet> = BTreeSet::new();
        for subset in (0..self.vertices.len()).combinations(n) {
            let base = &self.vertices[subset[0]];
            let diffs: Vec<RatVector> = subset[1..]
                .iter()
                .map(|&i| self.vertices[i].iter().zip(base).map(|(a, b)| a - b).collect())
                .collect();
            let ker = ratlin::kernel(&diffs, n);
            if ker.len() != 1 {
                continue;
            }
            let normal = ratlin::primitive_of_rational(&ker[0])?;
            let level = pair(&normal, base);
            let mut above = false;
            let mut below = false;
            for v in &self.vertices {
                let s = pair(&normal, v) - &level;
                if s.is_positive() {
                    above = true;
                } else if s.is_negative() {
                    below = true;
                }
                if above && below {
                    break;
                }
            }
            let facet = match (above, below) {
                (true, true) => continue,
                (_, false) => Facet { normal, offset: -level },
                (false, true) => Facet { normal: normal.iter().map(|x| -x).collect(), offset: level },
            };
            found.insert(facet);
        }
        Ok(HPolytope { dim: n, facets: found.into_iter().collect() })
    }

    /// Image under `x -> U x + t`.
    pub fn map(&self, linear: &ratlin::IntMatrix, translation: &[Int]) -> Result<VPolytope> {
        if linear.cols() != self.dim || linear.rows() != translation.len() {
            return Err(Error::DimensionMismatch { expected: self.dim, found: linear.cols() });
        }
        let t = ratlin::to_rat_vec(translation);
        let pts = self
            .vertices
            .iter()
            .map(|v| linear.apply_rat(v).into_iter().zip(&t).map(|(a, b)| a + b).collect())
            .collect();
        VPolytope::new(linear.rows(), pts)
    }
}

impl VPolytope {
    /// Minkowski sum; the hull of all pairwise vertex sums.
    pub fn minkowski_sum(&self, other: &VPolytope) -> Result<VPolytope> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        let mut pts = Vec::with_capacity(self.vertices.len() * other.vertices.len());
        for p in &self.vertices {
            for q in &other.vertices {
                pts.push(p.iter().zip(q).map(|(a, b)| a + b).collect());
            }
        }
        VPolytope::new(self.dim, pts)
    }

    /// Equality of normal fans in the ambient space. The fan of `P + Q` is
    /// the common refinement of both fans, so they agree iff `P + Q` has
    /// exactly as many vertices as `P` and as `Q`. Valid in any dimension.
    pub fn same_normal_fan(&self, other: &VPolytope) -> Result<bool> {
        if self.vertices.len() != other.vertices.len() {
            return Ok(false);
        }
        Ok(self.minkowski_sum(other)?.vertices.len() == self.vertices.len())
    }
}

/// `points[i]` is not a convex combination of the other points.
fn is_extreme(points: &[RatVector], i: usize) -> bool {
    let others: Vec<&RatVector> = points.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, p)| p).collect();
    if others.is_empty() {
        return true;
    }
    let k = others.len();
    let dim = points[i].len();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for j in 0..k {
        let mut e = vec![Rat::zero(); k];
        e[j] = Rat::one();
        rows.push(e);
        rhs.push(Rat::zero());
    }
    rows.push(vec![Rat::one(); k]);
    rhs.push(Rat::one());
    rows.push(vec![-Rat::one(); k]);
    rhs.push(-Rat::one());
    for c in 0..dim {
        let coeffs: RatVector = others.iter().map(|p| p[c].clone()).collect();
        rows.push(coeffs.iter().map(|x| -x).collect());
        rhs.push(-&points[i][c]);
        rows.push(coeffs);
        rhs.push(points[i][c].clone());
    }
    !lpx::feasible(&rows, &rhs)
}
