//! Generators for the standard families.

use num_traits::Zero;

use super::build_lattice;
use crate::polytope::{HPolytope, LatticePolytope};
use crate::ratlin::IntVector;
use crate::{Error, Int, Result};

fn positive(name: &str, v: i64) -> Result<()> {
    if v < 1 {
        return Err(Error::InvalidParameter(format!("{name} must be at least 1, got {v}")));
    }
    Ok(())
}

fn unit(n: usize, i: usize, scale: i64) -> IntVector {
    (0..n).map(|j| Int::from(if i == j { scale } else { 0 })).collect()
}

/// `d` times the standard simplex in `R^n`.
pub fn simplex(d: i64, n: usize) -> Result<LatticePolytope> {
    positive("d", d)?;
    positive("n", n as i64)?;
    let mut pts = vec![vec![Int::zero(); n]];
    pts.extend((0..n).map(|i| unit(n, i, d)));
    LatticePolytope::from_points(n, &pts)
}

/// `{x >= 0, lambda <= sum x <= d}`: the simplex `d*Delta_n` with the corner
/// `lambda*Delta_n` cut off.
pub fn blowup(d: i64, lambda: i64, n: usize) -> Result<LatticePolytope> {
    if !(1 <= lambda && lambda < d) {
        return Err(Error::InvalidParameter(format!("need 1 <= lambda < d, got lambda = {lambda}, d = {d}")));
    }
    if n < 2 {
        return Err(Error::InvalidParameter(format!("need n >= 2, got {n}")));
    }
    let ones = vec![1i64; n];
    let neg: Vec<i64> = vec![-1; n];
    let units: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    let mut facets: Vec<(&[i64], i64)> = units.iter().map(|e| (e.as_slice(), 0)).collect();
    facets.push((&neg, d));
    facets.push((&ones, -lambda));
    LatticePolytope::from_h(&HPolytope::from_i64(n, &facets)?)
}

/// The unit cube `[0, 1]^n`.
pub fn cube(n: usize) -> Result<LatticePolytope> {
    positive("n", n as i64)?;
    let pts: Vec<IntVector> = (0..1u64 << n)
        .map(|mask| (0..n).map(|i| Int::from((mask >> i) & 1)).collect())
        .collect();
    LatticePolytope::from_points(n, &pts)
}

/// Order-one Cayley polytope of the segments `[0, l_i]`.
pub fn lawrence(lengths: &[i64]) -> Result<LatticePolytope> {
    if lengths.len() < 2 {
        return Err(Error::InvalidParameter("a Lawrence prism needs at least two lengths".into()));
    }
    let segs = lengths
        .iter()
        .map(|&l| {
            positive("length", l)?;
            LatticePolytope::from_points(1, &[vec![Int::zero()], vec![Int::from(l)]])
        })
        .collect::<Result<Vec<_>>>()?;
    build_lattice(&segs, 1)
}

/// Cartesian product.
pub fn product(p: &LatticePolytope, q: &LatticePolytope) -> Result<LatticePolytope> {
    let mut pts = Vec::new();
    for a in p.vertices() {
        for b in q.vertices() {
            let mut x = a.clone();
            x.extend(b.iter().cloned());
            pts.push(x);
        }
    }
    LatticePolytope::from_points(p.dim() + q.dim(), &pts)
}
