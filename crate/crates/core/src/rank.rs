//! Bounds on `rank f_ε`, the least `r` with `f_ε = u₁v₁ + ⋯ + u_rv_r` for
//! linear forms `uᵢ, vᵢ`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::clifford::{self, center_dim_oracle, presentation};
use crate::error::Result;
use crate::mf::{rank_one_witness, MatrixFactorization};
use crate::pointscheme::negative_triangles;
use crate::skewpoly::SignSystem;

/// `f_ε` factors as a product of two linear forms exactly when every
/// triangle is negative.
pub fn is_rank_one(eps: &SignSystem) -> bool {
    let n = eps.n();
    let triples = n * n.saturating_sub(1) * n.saturating_sub(2) / 6;
    negative_triangles(eps).len() == triples
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankBounds {
    pub lo: u64,
    pub hi: u64,
    pub exact: Option<u64>,
}

/// `lo` is 1 for rank one and 2 otherwise; `hi = min(⌈n/2⌉, smallest simple
/// C(A)-module dimension)`.
pub fn rank_bounds(eps: &SignSystem) -> RankBounds {
    let n = eps.n() as u64;
    let lo = if is_rank_one(eps) { 1 } else { 2 };
    let hi = n.div_ceil(2).min(clifford::min_module_dim(eps));
    RankBounds {
        lo,
        hi,
        exact: (lo == hi).then_some(lo),
    }
}

/// `C(A_ε)` is semisimple, checked with the trace-form oracle.
pub fn is_smooth(eps: &SignSystem) -> Result<bool> {
    let p = presentation(eps, eps.n() - 1)?;
    Ok(center_dim_oracle(&p)?.semisimple())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HighRank {
    Yes,
    No,
    Unknown,
}

/// `(n+1)/2` for odd `n`, `n/2` for even `n`.
pub fn high_rank_threshold(n: usize) -> u64 {
    (n as u64).div_ceil(2)
}

pub fn high_rank(eps: &SignSystem) -> HighRank {
    let b = rank_bounds(eps);
    let t = high_rank_threshold(eps.n());
    if b.lo >= t {
        HighRank::Yes
    } else if b.hi < t {
        HighRank::No
    } else {
        HighRank::Unknown
    }
}

/// A rank-one factorization of `f_ε` when one exists.
pub fn rank_one_factorization(eps: &SignSystem) -> Option<MatrixFactorization> {
    rank_one_witness(&Arc::new(eps.clone()))
}
