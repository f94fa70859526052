//! Lattice equivalence by matching primitive edge directions at a vertex.

use std::collections::BTreeSet;

use num_traits::Zero;

use super::LatticePolytope;
use crate::ratlin::{self, IntMatrix, IntVector, RatVector};
use crate::{Error, Int, Result};

/// The affine map `x -> linear * x + translation`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMap {
    pub linear: IntMatrix,
    pub translation: IntVector,
}

impl AffineMap {
    pub fn new(linear: IntMatrix, translation: IntVector) -> Result<Self> {
        if linear.rows() != linear.cols() || translation.len() != linear.rows() {
            return Err(Error::DimensionMismatch { expected: linear.rows(), found: translation.len() });
        }
        Ok(AffineMap { linear, translation })
    }

    pub fn identity(n: usize) -> Self {
        AffineMap { linear: IntMatrix::identity(n), translation: vec![Int::zero(); n] }
    }

    pub fn apply(&self, x: &[Int]) -> IntVector {
        self.linear.apply(x).into_iter().zip(&self.translation).map(|(a, b)| a + b).collect()
    }

    pub fn is_unimodular(&self) -> bool {
        self.linear.is_unimodular()
    }

    pub fn image(&self, p: &LatticePolytope) -> Result<LatticePolytope> {
        p.map(&self.linear, &self.translation)
    }
}

/// Outgoing edges at each vertex: (target index, primitive direction, lattice length).
fn edge_table(p: &LatticePolytope) -> Vec<Vec<(usize, IntVector, Int)>> {
    let verts = p.vertices();
    let mut table = vec![Vec::new(); verts.len()];
    for (i, j) in p.edges() {
        let diff: IntVector = verts[j].iter().zip(&verts[i]).map(|(a, b)| a - b).collect();
        let g = ratlin::gcd_all(&diff);
        let dir: IntVector = diff.iter().map(|x| x / &g).collect();
        let back: IntVector = dir.iter().map(|x| -x).collect();
        table[i].push((j, dir, g.clone()));
        table[j].push((i, back, g));
    }
    table
}

fn length_profile(table: &[Vec<(usize, IntVector, Int)>]) -> Vec<Int> {
    let mut lens: Vec<Int> = table.iter().flatten().map(|e| e.2.clone()).collect();
    lens.sort();
    lens
}

/// A unimodular affine map carrying `p` onto `q`, if one exists.
///
/// A lattice equivalence sends a vertex to a vertex and its edges to edges of
/// equal lattice length, so it is determined by the images of `dim`
/// independent edge directions at one vertex; all such images are tried.
pub fn lattice_equivalent(p: &LatticePolytope, q: &LatticePolytope) -> Option<AffineMap> {
    let n = p.dim();
    if n != q.dim()
        || p.vertices().len() != q.vertices().len()
        || p.hrep().facets().len() != q.hrep().facets().len()
    {
        return None;
    }
    if n == 0 {
        return Some(AffineMap::identity(0));
    }
    let tp = edge_table(p);
    let tq = edge_table(q);
    if length_profile(&tp) != length_profile(&tq) {
        return None;
    }
    let start = (0..tp.len()).min_by_key(|&i| tp[i].len())?;
    // n independent edges at the start vertex
    let mut chosen: Vec<usize> = Vec::new();
    let mut span: Vec<RatVector> = Vec::new();
    for (k, e) in tp[start].iter().enumerate() {
        let mut trial = span.clone();
        trial.push(ratlin::to_rat_vec(&e.1));
        if ratlin::rank(&trial) == trial.len() {
            span = trial;
            chosen.push(k);
        }
        if chosen.len() == n {
            break;
        }
    }
    if chosen.len() < n {
        return None;
    }
    let d_inv = ratlin::inverse(&transpose(&span))?;
    let targets: BTreeSet<&IntVector> = q.vertices().iter().collect();
    let src = &p.vertices()[start];
    for (qi, qedges) in tq.iter().enumerate() {
        if qedges.len() != tp[start].len() {
            continue;
        }
        let mut used = vec![false; qedges.len()];
        let mut images: Vec<usize> = Vec::new();
        let found = assign(&chosen, &tp[start], qedges, &mut used, &mut images, &mut |images| {
            let f: Vec<RatVector> = images.iter().map(|&k| ratlin::to_rat_vec(&qedges[k].1)).collect();
            let u = mul(&transpose(&f), &d_inv);
            let rows: Option<Vec<IntVector>> = u.iter().map(|r| ratlin::to_int_vec(r)).collect();
            let linear = IntMatrix::from_rows(&rows?).ok()?;
            if !linear.is_unimodular() {
                return None;
            }
            let image_of_src = linear.apply(src);
            let translation: IntVector =
                q.vertices()[qi].iter().zip(&image_of_src).map(|(a, b)| a - b).collect();
            let map = AffineMap { linear, translation };
            p.vertices().iter().all(|v| targets.contains(&map.apply(v))).then_some(map)
        });
        if found.is_some() {
            return found;
        }
    }
    None
}

/// Injective assignment of equal-length target edges to the chosen source edges.
fn assign<F>(
    chosen: &[usize],
    src: &[(usize, IntVector, Int)],
    dst: &[(usize, IntVector, Int)],
    used: &mut [bool],
    images: &mut Vec<usize>,
    accept: &mut F,
) -> Option<AffineMap>
where
    F: FnMut(&[usize]) -> Option<AffineMap>,
{
    if images.len() == chosen.len() {
        return accept(images);
    }
    let want = &src[chosen[images.len()]].2;
    for k in 0..dst.len() {
        if used[k] || &dst[k].2 != want {
            continue;
        }
        used[k] = true;
        images.push(k);
        let r = assign(chosen, src, dst, used, images, accept);
        images.pop();
        used[k] = false;
        if r.is_some() {
            return r;
        }
    }
    None
}

fn transpose(m: &[RatVector]) -> Vec<RatVector> {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

fn mul(a: &[RatVector], b: &[RatVector]) -> Vec<RatVector> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|r| (0..cols).map(|j| (0..inner).map(|k| &r[k] * &b[k][j]).sum()).collect())
        .collect()
}
