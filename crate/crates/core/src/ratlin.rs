//! Exact integer and rational linear algebra.
//!
//! Everything here works over arbitrary-precision integers ([`Int`]) and
//! rationals ([`Rat`]). Integer matrices carry the vertex-normal bases used in
//! smoothness checks and the projection matrices of Cayley structures.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{Error, Int, Rat, Result};

pub type IntVector = Vec<Int>;
pub type RatVector = Vec<Rat>;

pub fn int(v: i64) -> Int {
    Int::from(v)
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

pub fn int_vec(v: &[i64]) -> IntVector {
    v.iter().map(|&x| Int::from(x)).collect()
}

pub fn to_rat_vec(v: &[Int]) -> RatVector {
    v.iter().cloned().map(Rat::from_integer).collect()
}

/// Returns the integer vector if every component is integral.
pub fn to_int_vec(v: &[Rat]) -> Option<IntVector> {
    v.iter()
        .map(|x| x.is_integer().then(|| x.to_integer()))
        .collect()
}

pub fn dot(a: &[Int], b: &[Int]) -> Int {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_rat(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Pairing of an integer covector with a rational point.
pub fn pair(a: &[Int], x: &[Rat]) -> Rat {
    let mut acc = Rat::zero();
    for (ai, xi) in a.iter().zip(x) {
        if !ai.is_zero() {
            acc += xi * ai;
        }
    }
    acc
}

pub fn gcd_all(v: &[Int]) -> Int {
    v.iter().fold(Int::zero(), |g, x| g.gcd(x))
}

/// Divides `v` by the gcd of its components. Orientation is preserved.
pub fn primitive(v: &[Int]) -> Result<IntVector> {
    let g = gcd_all(v);
    if g.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(v.iter().map(|x| x / &g).collect())
}

/// Primitive integer vector on the ray spanned by a rational vector.
pub fn primitive_of_rational(v: &[Rat]) -> Result<IntVector> {
    let lcm = v.iter().fold(Int::one(), |l, x| l.lcm(x.denom()));
    let scaled: IntVector = v
        .iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect();
    primitive(&scaled)
}

/// Dense integer matrix in row-major order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![Int::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Int::one();
        }
        m
    }

    /// Builds a matrix from its rows. An empty row list gives a `0 x cols`
    /// matrix only through [`IntMatrix::zeros`]; here every row must have the
    /// same length.
    pub fn from_rows(rows: &[IntVector]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: r.len() });
            }
            data.extend(r.iter().cloned());
        }
        Ok(IntMatrix { rows: rows.len(), cols, data })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        let rows: Vec<IntVector> = rows.iter().map(|r| int_vec(r)).collect();
        Self::from_rows(&rows)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Int] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<IntVector> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> IntVector {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * &other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[Int]) -> IntVector {
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    pub fn apply_rat(&self, v: &[Rat]) -> RatVector {
        (0..self.rows).map(|i| pair(self.row(i), v)).collect()
    }

    pub fn determinant(&self) -> Result<Int> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch { expected: self.rows, found: self.cols });
        }
        Ok(determinant(&self.to_rows()))
    }

    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols && determinant(&self.to_rows()).abs().is_one()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += c * row[src]
    fn add_row(&mut self, dst: usize, src: usize, c: &Int) {
        for j in 0..self.cols {
            let v = &self.data[src * self.cols + j] * c;
            self.data[dst * self.cols + j] += v;
        }
    }

    /// col[dst] += c * col[src]
    fn add_col(&mut self, dst: usize, src: usize, c: &Int) {
        for i in 0..self.rows {
            let v = &self.data[i * self.cols + src] * c;
            self.data[i * self.cols + dst] += v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -&self.data[r * self.cols + j];
            self.data[r * self.cols + j] = v;
        }
    }

    fn negate_col(&mut self, c: usize) {
        for i in 0..self.rows {
            let v = -&self.data[i * self.cols + c];
            self.data[i * self.cols + c] = v;
        }
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = Int;
    fn index(&self, (i, j): (usize, usize)) -> &Int {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Int {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_rows().iter().map(|r| {
            r.iter().map(ToString::to_string).collect::<Vec<_>>()
        })).finish()
    }
}

/// Fraction-free (Bareiss) determinant of a square integer matrix given by rows.
pub fn determinant(rows: &[IntVector]) -> Int {
    let n = rows.len();
    if n == 0 {
        return Int::one();
    }
    let mut m: Vec<IntVector> = rows.to_vec();
    let mut sign = Int::one();
    let mut prev = Int::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return Int::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// True iff the `n` vectors of length `n` form a basis of the lattice `Z^n`.
pub fn is_unimodular_basis(vs: &[IntVector]) -> Result<bool> {
    let n = vs.len();
    for v in vs {
        if v.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: v.len() });
        }
    }
    Ok(determinant(vs).abs().is_one())
}

/// `A = U * D * V` with `U`, `V` unimodular and `D` diagonal, `d_1 | d_2 | ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    pub fn diagonal(&self) -> Vec<Int> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d[(i, i)].clone()).collect()
    }
}

fn smallest_pivot(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            let x = &d[(i, j)];
            if x.is_zero() {
                continue;
            }
            // strict comparison keeps the lexicographically first (i, j) on ties
            if best.is_none_or(|(bi, bj)| x.abs() < d[(bi, bj)].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Smith normal form by elementary row and column operations.
///
/// Pivots are the smallest nonzero entry in absolute value, ties resolved by
/// the lexicographically first position. Row operations on `D` are mirrored
/// as inverse column operations on `U`, column operations as inverse row
/// operations on `V`, so that `A = U * D * V` holds throughout.
pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    let mut t = 0;
    while t < m.min(n) {
        let Some((pi, pj)) = smallest_pivot(&d, t) else { break };
        d.swap_rows(t, pi);
        u.swap_cols(t, pi);
        d.swap_cols(t, pj);
        v.swap_rows(t, pj);

        let mut clean = true;
        for i in t + 1..m {
            if d[(i, t)].is_zero() {
                continue;
            }
            let q = &d[(i, t)] / &d[(t, t)];
            d.add_row(i, t, &-&q);
            u.add_col(t, i, &q);
            if !d[(i, t)].is_zero() {
                clean = false;
            }
        }
        for j in t + 1..n {
            if d[(t, j)].is_zero() {
                continue;
            }
            let q = &d[(t, j)] / &d[(t, t)];
            d.add_col(j, t, &-&q);
            v.add_row(t, j, &q);
            if !d[(t, j)].is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }

        let pivot = d[(t, t)].clone();
        let offender = (t + 1..m).find(|&i| (t + 1..n).any(|j| !d[(i, j)].is_multiple_of(&pivot)));
        if let Some(i) = offender {
            d.add_row(t, i, &Int::one());
            u.add_col(i, t, &-Int::one());
            continue;
        }
        if pivot.is_negative() {
            d.negate_row(t);
            u.negate_col(t);
        }
        t += 1;
    }
    SmithForm { u, d, v }
}

/// Rank of a rational matrix given by rows.
pub fn rank(rows: &[RatVector]) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let (_, pivots) = rref(rows.to_vec(), cols);
    pivots.len()
}

/// Reduced row echelon form over the first `cols` columns; returns the reduced
/// rows and the pivot column of each nonzero row.
fn rref(mut m: Vec<RatVector>, cols: usize) -> (Vec<RatVector>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..m[i].len() {
                    let delta = &f * &m[r][j];
                    m[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (m, pivots)
}

/// Basis of the right null space `{x : A x = 0}` of a rational matrix with
/// `cols` columns.
pub fn kernel(rows: &[RatVector], cols: usize) -> Vec<RatVector> {
    let (m, pivots) = rref(rows.to_vec(), cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Rat::zero(); cols];
            x[f] = Rat::one();
            for (r, &p) in pivots.iter().enumerate() {
                x[p] = -m[r][f].clone();
            }
            x
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    Unique(RatVector),
    NoSolution,
    NonUnique,
}

/// Solves `A x = b` exactly. `A` has `cols` columns (needed when it has no rows).
pub fn solve_exact(a: &[RatVector], b: &[Rat], cols: usize) -> Solution {
    let aug: Vec<RatVector> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (m, pivots) = rref(aug, cols);
    // a zero row with nonzero right-hand side
    if m.iter().skip(pivots.len()).any(|row| !row[cols].is_zero()) {
        return Solution::NoSolution;
    }
    if pivots.len() < cols {
        return Solution::NonUnique;
    }
    Solution::Unique((0..cols).map(|i| m[i][cols].clone()).collect())
}

/// Inverse of a square rational matrix, if it exists.
pub fn inverse(rows: &[RatVector]) -> Option<Vec<RatVector>> {
    let n = rows.len();
    let aug: Vec<RatVector> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            row
        })
        .collect();
    let (m, pivots) = rref(aug, n);
    (pivots.len() == n).then(|| m.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Dual basis `u_1..u_n` of a unimodular basis `v_1..v_n`: `<v_i, u_j> = delta_ij`.
/// Unimodularity makes every `u_j` integral.
pub fn dual_basis(vs: &[IntVector]) -> Result<Vec<IntVector>> {
    if !is_unimodular_basis(vs)? {
        return Err(Error::NotUnimodular);
    }
    let rows: Vec<RatVector> = vs.iter().map(|v| to_rat_vec(v)).collect();
    let inv = inverse(&rows).ok_or(Error::NotUnimodular)?;
    let n = vs.len();
    (0..n)
        .map(|j| {
            let col: RatVector = (0..n).map(|i| inv[i][j].clone()).collect();
            to_int_vec(&col).ok_or_else(|| Error::Internal("dual basis of a unimodular basis is not integral".into()))
        })
        .collect()
}
