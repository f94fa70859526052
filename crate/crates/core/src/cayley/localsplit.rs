//! Checker for the rational codegree and nef value of smooth Cayley
//! polytopes with small summands: if `dim P_i + 1 < (k+1)/s` for all `i` and
//! the order-`s` Cayley polytope is smooth, both invariants equal `(k+1)/s`.

use num_traits::Zero;

use super::build_strict;
use crate::invariants;
use crate::polytope::{LatticePolytope, VPolytope};
use crate::{Int, Rat, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalsplitReport {
    pub k: usize,
    pub s: u64,
    pub summand_dims: Vec<usize>,
    /// `dim P_i + 1 < (k+1)/s` for every summand
    pub hypothesis: bool,
    pub smooth: bool,
    /// first non-smooth vertex of the Cayley polytope
    pub witness: Option<Vec<Int>>,
    /// smoothness of each summand in its own affine lattice
    pub summands_smooth: Vec<bool>,
    pub applicable: bool,
    pub expected: Rat,
    pub computed_qcodegree: Option<Rat>,
    pub computed_nef_value: Option<Rat>,
    pub verdict: bool,
}

pub fn check_localsplit(summands: &[VPolytope], s: u64) -> Result<LocalsplitReport> {
    let p = LatticePolytope::from_v(&build_strict(summands, s)?)?;
    let k = summands.len() - 1;
    let summand_dims: Vec<usize> = summands.iter().map(VPolytope::affine_dim).collect();
    let hypothesis = summand_dims.iter().all(|&d| s * (d as u64 + 1) < k as u64 + 1);
    let smoothness = p.smoothness();
    let summands_smooth = summands
        .iter()
        .map(|q| LatticePolytope::intrinsic(q).map(|l| l.is_smooth()))
        .collect::<Result<Vec<_>>>()?;
    let applicable = hypothesis && smoothness.smooth;
    let expected = Rat::new(Int::from(k + 1), Int::from(s));
    let (qc, tau) = if applicable {
        (Some(invariants::qcodegree(&p)?), Some(invariants::nef_value(&p)?))
    } else {
        (None, None)
    };
    let verdict = applicable && qc.as_ref() == Some(&expected) && tau.as_ref() == Some(&expected);
    debug_assert!(!expected.is_zero());
    Ok(LocalsplitReport {
        k,
        s,
        summand_dims,
        hypothesis,
        smooth: smoothness.smooth,
        witness: smoothness.witness,
        summands_smooth,
        applicable,
        expected,
        computed_qcodegree: qc,
        computed_nef_value: tau,
        verdict,
    })
}
