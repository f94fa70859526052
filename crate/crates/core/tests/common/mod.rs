//! Test corpus and independent oracles shared by the integration suites.
#![allow(dead_code)]

use itertools::Itertools;
use latpoly::cayley::{self, generate};
use latpoly::polytope::{LatticePolytope, VPolytope};
use latpoly::ratlin::{int_vec, smith_normal_form, IntMatrix, IntVector};
use latpoly::{Int, Rat};
use num_traits::{One, Signed, Zero};
use rand::Rng;

pub fn seg(len: i64) -> VPolytope {
    VPolytope::from_i64(1, &[&[0], &[len]]).unwrap()
}

pub fn point() -> VPolytope {
    VPolytope::from_i64(0, &[&[]]).unwrap()
}

pub fn rect(a: i64, b: i64) -> VPolytope {
    VPolytope::from_i64(2, &[&[0, 0], &[a, 0], &[0, b], &[a, b]]).unwrap()
}

pub fn triangle(c: i64) -> VPolytope {
    VPolytope::from_i64(2, &[&[0, 0], &[c, 0], &[0, c]]).unwrap()
}

/// `{x, y >= 0, lambda <= x + y <= d}`
pub fn trapezoid(lambda: i64, d: i64) -> VPolytope {
    VPolytope::from_i64(2, &[&[lambda, 0], &[d, 0], &[0, lambda], &[0, d]]).unwrap()
}

/// A Cayley polytope together with the data it was built from.
#[derive(Clone)]
pub struct Built {
    pub name: String,
    pub summands: Vec<VPolytope>,
    pub s: u64,
    pub polytope: LatticePolytope,
}

pub fn built(name: String, summands: Vec<VPolytope>, s: u64) -> Built {
    let polytope = LatticePolytope::from_v(&cayley::build(&summands, s).unwrap()).unwrap();
    Built { name, summands, s, polytope }
}

/// Lawrence prisms: every multiset of 2..=5 lengths in 1..=4.
pub fn lawrence_prisms() -> Vec<Built> {
    let mut out = Vec::new();
    for size in 2..=5 {
        for lens in (1..=4i64).combinations_with_replacement(size) {
            out.push(built(format!("lawrence{lens:?}"), lens.iter().map(|&l| seg(l)).collect(), 1));
        }
    }
    out
}

/// Order-one Cayley sums of 2..=4 rectangles with sides in 1..=2.
pub fn rectangle_sums() -> Vec<Built> {
    let shapes = [(1, 1), (1, 2), (2, 1), (2, 2)];
    let mut out = Vec::new();
    for size in 2..=4 {
        for pick in (0..shapes.len()).combinations_with_replacement(size) {
            if size == 4 && pick != [0, 0, 0, 0] && pick != [0, 0, 0, 3] {
                continue;
            }
            let parts = pick.iter().map(|&i| rect(shapes[i].0, shapes[i].1)).collect();
            out.push(built(format!("rects{pick:?}"), parts, 1));
        }
    }
    out
}

pub fn dilated_simplices() -> Vec<(String, LatticePolytope)> {
    let mut out = Vec::new();
    for n in 1..=4 {
        for d in 1..=3 {
            out.push((format!("{d}simplex{n}"), generate::simplex(d, n).unwrap()));
        }
    }
    out
}

pub fn blowups() -> Vec<(String, LatticePolytope)> {
    let mut out = Vec::new();
    for n in 2..=4 {
        for d in 2..=5 {
            for lambda in 1..d {
                out.push((format!("blowup({d},{lambda},{n})"), generate::blowup(d, lambda, n).unwrap()));
            }
        }
    }
    out
}

/// All named corpus polytopes, builds first.
pub fn corpus() -> (Vec<Built>, Vec<(String, LatticePolytope)>) {
    let mut builds = lawrence_prisms();
    builds.extend(rectangle_sums());
    let mut all: Vec<(String, LatticePolytope)> = builds.iter().map(|b| (b.name.clone(), b.polytope.clone())).collect();
    all.extend(dilated_simplices());
    all.extend(blowups());
    (builds, all)
}

/// Product of random elementary matrices.
pub fn random_unimodular<R: Rng>(rng: &mut R, n: usize, steps: usize) -> IntMatrix {
    let mut rows: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        match rng.gen_range(0..3) {
            0 if i != j => {
                let c = rng.gen_range(-2..=2);
                let src = rows[j].clone();
                for (x, y) in rows[i].iter_mut().zip(&src) {
                    *x += c * y;
                }
            }
            1 => rows.swap(i, j),
            _ => rows[i].iter_mut().for_each(|x| *x = -*x),
        }
    }
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    IntMatrix::from_i64(&refs).unwrap()
}

pub fn random_translation<R: Rng>(rng: &mut R, n: usize) -> IntVector {
    (0..n).map(|_| Int::from(rng.gen_range(-4..=4))).collect()
}

fn box_points(lo: &[Int], hi: &[Int]) -> Vec<IntVector> {
    let mut out = vec![vec![]];
    for (l, h) in lo.iter().zip(hi) {
        let mut next = Vec::new();
        for p in &out {
            let mut x = l.clone();
            while &x <= h {
                let mut q: IntVector = p.clone();
                q.push(x.clone());
                next.push(q);
                x += 1;
            }
        }
        out = next;
    }
    out
}

/// Codegree by scanning `kP` for lattice points strictly inside every facet,
/// over the vertex bounding box.
pub fn codegree_scan(p: &LatticePolytope) -> u64 {
    let n = p.dim();
    for k in 1..=(n as u64 + 1) {
        let kk = Int::from(k);
        let lo: Vec<Int> = (0..n).map(|j| p.vertices().iter().map(|v| &v[j] * &kk).min().unwrap()).collect();
        let hi: Vec<Int> = (0..n).map(|j| p.vertices().iter().map(|v| &v[j] * &kk).max().unwrap()).collect();
        let inside = box_points(&lo, &hi).into_iter().any(|x| {
            p.hrep().facets().iter().all(|f| {
                let val: Int = f.normal.iter().zip(&x).map(|(a, b)| a * b).sum();
                Rat::from_integer(val) + &f.offset * Rat::from_integer(kk.clone()) > Rat::zero()
            })
        });
        if inside {
            return k;
        }
    }
    panic!("no interior lattice point up to (n+1)P");
}

/// Largest number of functionals in an exhaustive search over sign
/// choices of width-`s` candidates whose joint vertex image is exactly
/// `{0, s e_1, ..., s e_k}` and whose matrix extends to a lattice basis.
pub fn detect_oracle(p: &LatticePolytope, s: u64) -> Option<usize> {
    let cands = cayley::width_candidates(p, s);
    let verts = p.vertices();
    let sv = Int::from(s);
    let mut best: Option<usize> = None;
    let total = 3usize.pow(cands.len() as u32);
    for code in 1..total {
        let mut rows: Vec<IntVector> = Vec::new();
        let mut c = code;
        for cand in &cands {
            match c % 3 {
                1 => rows.push(cand.functional.clone()),
                2 => rows.push(cand.functional.iter().map(|x| -x).collect()),
                _ => {}
            }
            c /= 3;
        }
        let k = rows.len();
        if k > p.dim() || best.is_some_and(|b| b >= k) {
            continue;
        }
        let images: Vec<Vec<Int>> = verts
            .iter()
            .map(|v| rows.iter().map(|w| w.iter().zip(v).map(|(a, b)| a * b).sum::<Int>()).collect())
            .collect();
        let mins: Vec<Int> = (0..k).map(|j| images.iter().map(|im| im[j].clone()).min().unwrap()).collect();
        let mut pattern = vec![false; k + 1];
        let ok = images.iter().all(|im| {
            let shifted: Vec<Int> = im.iter().zip(&mins).map(|(a, m)| a - m).collect();
            let nonzero: Vec<usize> = (0..k).filter(|&j| !shifted[j].is_zero()).collect();
            match nonzero.as_slice() {
                [] => {
                    pattern[0] = true;
                    true
                }
                [j] if shifted[*j] == sv => {
                    pattern[j + 1] = true;
                    true
                }
                _ => false,
            }
        });
        if !ok || !pattern.iter().all(|&b| b) {
            continue;
        }
        let d = smith_normal_form(&IntMatrix::from_rows(&rows).unwrap()).diagonal();
        if d.len() == k && d.iter().all(|x| x.abs().is_one()) {
            best = Some(k);
        }
    }
    best
}

pub fn iv(v: &[i64]) -> IntVector {
    int_vec(v)
}
