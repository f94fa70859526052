//! Full-dimensional lattice polytopes with a canonical facet presentation.

use std::collections::BTreeSet;

use super::{HPolytope, VPolytope, VertexData};
use crate::ratlin::{self, IntMatrix, IntVector, RatVector};
use crate::{Error, Int, Result};

/// A full-dimensional lattice polytope. The facet presentation is canonical
/// (irredundant, primitive normals, sorted), so invariants that depend on the
/// presentation, such as shrinks, are well defined.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePolytope {
    h: HPolytope,
    vertices: Vec<VertexData>,
    points: Vec<IntVector>,
}

/// Smoothness verdict; `witness` is the lexicographically first vertex whose
/// tangent cone is not unimodular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smoothness {
    pub smooth: bool,
    pub witness: Option<IntVector>,
}

impl LatticePolytope {
    pub fn from_h(h: &HPolytope) -> Result<Self> {
        if !h.is_bounded() {
            return Err(Error::Unbounded);
        }
        let h = h.canonicalize()?;
        let vertices = h.vertices()?;
        let v = VPolytope::from_extreme_points(h.dim(), vertices.iter().map(|v| v.point.clone()).collect());
        let affine_dim = v.affine_dim();
        if affine_dim < h.dim() {
            return Err(Error::Degenerate { affine_dim, ambient: h.dim() });
        }
        let mut points = Vec::with_capacity(vertices.len());
        for vd in &vertices {
            match ratlin::to_int_vec(&vd.point) {
                Some(p) => points.push(p),
                None => return Err(Error::NotLattice(format_point(&vd.point))),
            }
        }
        Ok(LatticePolytope { h, vertices, points })
    }

    pub fn from_v(v: &VPolytope) -> Result<Self> {
        if let Some(bad) = v.vertices().iter().find(|p| ratlin::to_int_vec(p).is_none()) {
            return Err(Error::NotLattice(format_point(bad)));
        }
        LatticePolytope::from_h(&v.facets()?)
    }

    /// Convex hull of integer points.
    pub fn from_points(dim: usize, points: &[IntVector]) -> Result<Self> {
        LatticePolytope::from_v(&VPolytope::from_int_points(dim, points)?)
    }

    pub fn from_i64(dim: usize, points: &[&[i64]]) -> Result<Self> {
        LatticePolytope::from_v(&VPolytope::from_i64(dim, points)?)
    }

    pub fn dim(&self) -> usize {
        self.h.dim()
    }

    pub fn hrep(&self) -> &HPolytope {
        &self.h
    }

    pub fn vertex_data(&self) -> &[VertexData] {
        &self.vertices
    }

    /// Vertices in lexicographic order.
    pub fn vertices(&self) -> &[IntVector] {
        &self.points
    }

    pub fn vrep(&self) -> VPolytope {
        VPolytope::from_extreme_points(self.dim(), self.vertices.iter().map(|v| v.point.clone()).collect())
    }

    pub fn lattice_points(&self) -> Vec<IntVector> {
        self.h.lattice_points().expect("a lattice polytope is bounded")
    }

    pub fn shrink(&self, a: u64, b: u64) -> Result<HPolytope> {
        self.h.shrink(a, b)
    }

    pub fn smoothness(&self) -> Smoothness {
        let witness = self
            .vertices
            .iter()
            .zip(&self.points)
            .find(|(v, _)| v.shift.is_none())
            .map(|(_, p)| p.clone());
        Smoothness { smooth: witness.is_none(), witness }
    }

    pub fn is_smooth(&self) -> bool {
        self.vertices.iter().all(|v| v.shift.is_some())
    }

    /// Each vertex's normal cone, as its sorted set of facet normals.
    pub fn normal_cones(&self) -> BTreeSet<Vec<IntVector>> {
        self.vertices
            .iter()
            .map(|v| {
                let mut c: Vec<IntVector> = v.incident.iter().map(|&i| self.h.facets()[i].normal.clone()).collect();
                c.sort();
                c
            })
            .collect()
    }

    /// Equality of normal fans: identical sets of maximal normal cones.
    pub fn normal_fan_equal(&self, other: &LatticePolytope) -> Result<bool> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: other.dim() });
        }
        Ok(self.normal_cones() == other.normal_cones())
    }

    /// Pairs of vertex indices spanning an edge.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..self.vertices.len() {
            for j in i + 1..self.vertices.len() {
                let common: Vec<RatVector> = self.vertices[i]
                    .incident
                    .iter()
                    .filter(|f| self.vertices[j].incident.contains(f))
                    .map(|&f| ratlin::to_rat_vec(&self.h.facets()[f].normal))
                    .collect();
                if n > 0 && ratlin::rank(&common) == n - 1 {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Image under `x -> U x + t` for an invertible integer `U`.
    pub fn map(&self, linear: &IntMatrix, translation: &[Int]) -> Result<LatticePolytope> {
        if linear.rows() != self.dim() || linear.determinant()? == Int::from(0) {
            return Err(Error::InvalidParameter("map must be an invertible square matrix".into()));
        }
        LatticePolytope::from_v(&self.vrep().map(linear, translation)?)
    }

    /// A lattice polytope in its own affine lattice: the hull of `v`, written
    /// in a basis of the saturated lattice parallel to its affine span.
    pub fn intrinsic(v: &VPolytope) -> Result<LatticePolytope> {
        let pts = v.integer_vertices().ok_or_else(|| {
            let bad = v.vertices().iter().find(|p| ratlin::to_int_vec(p).is_none()).expect("some vertex is rational");
            Error::NotLattice(format_point(bad))
        })?;
        let base = &pts[0];
        let diffs: Vec<IntVector> =
            pts.iter().map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect()).collect();
        let r = v.affine_dim();
        let snf = ratlin::smith_normal_form(&IntMatrix::from_rows(&diffs)?);
        // the first r rows of V span the saturated lattice of the row space
        let v_rows: Vec<RatVector> = snf.v.to_rows().iter().map(|row| ratlin::to_rat_vec(row)).collect();
        let v_inv = ratlin::inverse(&v_rows).ok_or_else(|| Error::Internal("Smith transform is singular".into()))?;
        let coords: Vec<IntVector> = diffs
            .iter()
            .map(|d| {
                let row: Vec<Int> = (0..r)
                    .map(|c| {
                        let x: crate::Rat = d.iter().enumerate().map(|(i, di)| &v_inv[i][c] * di).sum();
                        x.to_integer()
                    })
                    .collect();
                row
            })
            .collect();
        LatticePolytope::from_points(r, &coords)
    }

    /// Minkowski sum, computed from pairwise vertex sums.
    pub fn minkowski_sum(&self, other: &LatticePolytope) -> Result<LatticePolytope> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: other.dim() });
        }
        let mut pts = Vec::new();
        for p in &self.points {
            for q in &other.points {
                pts.push(p.iter().zip(q).map(|(a, b)| a + b).collect::<IntVector>());
            }
        }
        LatticePolytope::from_points(self.dim(), &pts)
    }
}

pub(crate) fn format_point(p: &[crate::Rat]) -> String {
    let parts: Vec<String> = p.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}
