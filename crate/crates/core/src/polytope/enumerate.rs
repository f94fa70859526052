//! Lattice point enumeration by coordinate-wise interval propagation.

use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::HPolytope;
use crate::lpx::{self, LpVerdict};
use crate::ratlin::{IntVector, RatVector};
use crate::{Error, Int, Rat, Result};

/// Integer rows `A x >= b` equivalent to the facet system, with the box
/// `lo <= x <= hi` and, per row, the largest value the coordinates `j..`
/// can contribute.
struct System {
    a: Vec<IntVector>,
    b: Vec<Int>,
    lo: Vec<Int>,
    hi: Vec<Int>,
    tail_max: Vec<Vec<Int>>,
}

/// Lattice points of `h` in lexicographic order; with `first_only` the
/// search stops after one point.
pub(super) fn lattice_points(h: &HPolytope, first_only: bool) -> Result<Vec<IntVector>> {
    if !h.is_bounded() {
        return Err(Error::Unbounded);
    }
    let n = h.dim();
    if n == 0 {
        return Ok(if h.is_empty() { vec![] } else { vec![vec![]] });
    }
    let (rows, rhs) = h.constraint_system();
    let mut lo = Vec::with_capacity(n);
    let mut hi = Vec::with_capacity(n);
    for j in 0..n {
        let mut e: RatVector = vec![Rat::zero(); n];
        e[j] = Rat::from_integer(1.into());
        let min = match lpx::minimize(&e, &rows, &rhs) {
            LpVerdict::Optimal { value, .. } => value,
            LpVerdict::Infeasible => return Ok(vec![]),
            LpVerdict::Unbounded => return Err(Error::Unbounded),
        };
        let neg: RatVector = e.iter().map(|x| -x).collect();
        let max = match lpx::minimize(&neg, &rows, &rhs) {
            LpVerdict::Optimal { value, .. } => -value,
            LpVerdict::Infeasible => return Ok(vec![]),
            LpVerdict::Unbounded => return Err(Error::Unbounded),
        };
        let (l, u) = (min.ceil().to_integer(), max.floor().to_integer());
        if l > u {
            return Ok(vec![]);
        }
        lo.push(l);
        hi.push(u);
    }
    let mut a = Vec::new();
    let mut b = Vec::new();
    for f in h.facets() {
        let d = f.offset.denom().clone();
        a.push(f.normal.iter().map(|x| x * &d).collect::<IntVector>());
        b.push(-f.offset.numer().clone());
    }
    let tail_max = a
        .iter()
        .map(|row: &IntVector| {
            let mut t = vec![Int::zero(); n + 1];
            for j in (0..n).rev() {
                let best = std::cmp::max(&row[j] * &lo[j], &row[j] * &hi[j]);
                t[j] = &t[j + 1] + best;
            }
            t
        })
        .collect();
    let sys = System { a, b, lo, hi, tail_max };
    let mut out = Vec::new();
    let mut x = Vec::with_capacity(n);
    let partial = vec![Int::zero(); sys.a.len()];
    search(&sys, &mut x, &partial, first_only, &mut out);
    Ok(out)
}

fn search(sys: &System, x: &mut IntVector, partial: &[Int], first_only: bool, out: &mut Vec<IntVector>) -> bool {
    let j = x.len();
    let n = sys.lo.len();
    if j == n {
        out.push(x.clone());
        return first_only;
    }
    let mut low = sys.lo[j].clone();
    let mut high = sys.hi[j].clone();
    for (i, row) in sys.a.iter().enumerate() {
        // row[j] * x_j >= b_i - partial_i - (best the later coordinates can do)
        let need = &sys.b[i] - &partial[i] - &sys.tail_max[i][j + 1];
        let c = &row[j];
        if c.is_positive() {
            low = low.max(need.div_ceil(c));
        } else if c.is_negative() {
            high = high.min(need.div_floor(c));
        } else if need.is_positive() {
            return false;
        }
        if low > high {
            return false;
        }
    }
    let mut v = low;
    while v <= high {
        let next: Vec<Int> = sys.a.iter().zip(partial).map(|(row, p)| p + &row[j] * &v).collect();
        x.push(v.clone());
        let stop = search(sys, x, &next, first_only, out);
        x.pop();
        if stop {
            return true;
        }
        v += 1;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::super::HPolytope;
    use crate::ratlin::int_vec;
    use proptest::prelude::*;

    fn brute(h: &HPolytope, r: i64) -> Vec<Vec<i64>> {
        let n = h.dim();
        let mut out = Vec::new();
        let mut idx = vec![-r; n];
        loop {
            if h.contains_int(&int_vec(&idx)) {
                out.push(idx.clone());
            }
            let mut k = n;
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                if idx[k] < r {
                    idx[k] += 1;
                    for t in idx.iter_mut().skip(k + 1) {
                        *t = -r;
                    }
                    break;
                }
            }
        }
    }

    proptest! {
        #[test]
        fn matches_box_scan(
            rows in proptest::collection::vec((proptest::collection::vec(-3i64..=3, 3), 0i64..6), 1..6),
        ) {
            // a box keeps everything bounded inside [-4, 4]^3
            let mut facets: Vec<(Vec<i64>, i64)> = rows.into_iter().filter(|(n, _)| n.iter().any(|&x| x != 0)).collect();
            for j in 0..3 {
                let mut e = vec![0; 3];
                e[j] = 1;
                facets.push((e.clone(), 4));
                e[j] = -1;
                facets.push((e, 4));
            }
            let refs: Vec<(&[i64], i64)> = facets.iter().map(|(n, a)| (n.as_slice(), *a)).collect();
            let h = HPolytope::from_i64(3, &refs).unwrap();
            let got: Vec<Vec<i64>> = h
                .lattice_points()
                .unwrap()
                .iter()
                .map(|p| p.iter().map(|x| i64::try_from(x).unwrap()).collect())
                .collect();
            prop_assert_eq!(&got, &brute(&h, 4));
            prop_assert_eq!(h.has_lattice_point().unwrap(), !got.is_empty());
        }
    }
}
