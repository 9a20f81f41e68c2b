use serde::{Deserialize, Serialize};

use super::{MatrixFactorization, PolyMatrix};
use crate::skewpoly::SkewPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SplitKind {
    /// Scalar found in `Φ⁰`: the summand `(c, c⁻¹f)` has zero cokernel.
    PhiF,
    /// Scalar found in `Φ¹`: the summand `(c⁻¹f, c)` has cokernel the free
    /// module `A(−shift)`.
    FPhi,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitSummand {
    pub kind: SplitKind,
    /// Shift of the `F⁰` generator the summand occupied.
    pub shift: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub mf: MatrixFactorization,
    pub splits: Vec<SplitSummand>,
}

impl Reduction {
    pub fn split_count(&self) -> usize {
        self.splits.len()
    }
}

fn find_scalar(m: &PolyMatrix) -> Option<(usize, usize)> {
    (0..m.rows())
        .flat_map(|s| (0..m.cols()).map(move |t| (s, t)))
        .find(|&(s, t)| m[(s, t)].as_scalar().is_some())
}

/// Uses the scalar `a[s][t]` to clear its row and column by invertible
/// elementary operations `a ↦ PaQ`, `b ↦ Q⁻¹bP⁻¹`, then deletes row `s`,
/// column `t` of `a` and row `t`, column `s` of `b`.
fn split_at(a: &mut PolyMatrix, b: &mut PolyMatrix, s: usize, t: usize) {
    let c_inv = a[(s, t)]
        .as_scalar()
        .and_then(|c| c.inv())
        .expect("scalar pivot");
    let c_inv = SkewPoly::constant(a.ctx(), c_inv);
    for s2 in 0..a.rows() {
        if s2 == s || a[(s2, t)].is_zero() {
            continue;
        }
        let coef = &a[(s2, t)] * &c_inv;
        a.row_sub_left(s2, &coef, s);
        b.col_add_right(s, s2, &coef);
    }
    for t2 in 0..a.cols() {
        if t2 == t || a[(s, t2)].is_zero() {
            continue;
        }
        let coef = &c_inv * &a[(s, t2)];
        a.col_sub_right(t2, t, &coef);
        b.row_add_left(t, &coef, t2);
    }
    debug_assert!((0..b.cols()).all(|j| j == s || b[(t, j)].is_zero()));
    debug_assert!((0..b.rows()).all(|i| i == t || b[(i, s)].is_zero()));
    *a = a.without(s, t);
    *b = b.without(t, s);
}

impl MatrixFactorization {
    /// Splits off rank-one trivial summands until every entry of `Φ⁰` and
    /// `Φ¹` has positive degree. Pivots are taken from `Φ⁰` before `Φ¹`, in
    /// row-major order.
    pub fn reduce(&self) -> Reduction {
        let mut mf = self.clone();
        let mut splits = Vec::new();
        loop {
            if let Some((s, t)) = find_scalar(&mf.phi0) {
                splits.push(SplitSummand {
                    kind: SplitKind::PhiF,
                    shift: mf.m0[s],
                });
                split_at(&mut mf.phi0, &mut mf.phi1, s, t);
                mf.m0.remove(s);
                mf.m1.remove(t);
            } else if let Some((s, t)) = find_scalar(&mf.phi1) {
                // Phi1 rows index F1, columns index F2 = F0(-2)
                splits.push(SplitSummand {
                    kind: SplitKind::FPhi,
                    shift: mf.m0[t],
                });
                split_at(&mut mf.phi1, &mut mf.phi0, s, t);
                mf.m1.remove(s);
                mf.m0.remove(t);
            } else {
                break;
            }
        }
        Reduction { mf, splits }
    }

    /// True when no entry of `Φ⁰` or `Φ¹` is a nonzero scalar.
    pub fn is_reduced(&self) -> bool {
        find_scalar(&self.phi0).is_none() && find_scalar(&self.phi1).is_none()
    }

    pub(crate) fn first_scalar(&self) -> Option<(&'static str, usize, usize)> {
        find_scalar(&self.phi0)
            .map(|(s, t)| ("Phi0", s, t))
            .or_else(|| find_scalar(&self.phi1).map(|(s, t)| ("Phi1", s, t)))
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::coeff::GaussianRational;
    use crate::mf::TrivialVariant;
    use crate::skewpoly::SignSystem;

    #[test]
    fn trivial_reduces_to_empty() {
        let c = Arc::new(SignSystem::commutative(2));
        let f = SkewPoly::sum_of_squares(&c);
        let r = MatrixFactorization::trivial(&f, &[0], TrivialVariant::PhiF)
            .unwrap()
            .reduce();
        assert_eq!(r.mf.rank(), 0);
        assert_eq!(r.split_count(), 1);
        assert_eq!(r.splits[0].kind, SplitKind::PhiF);

        let r = MatrixFactorization::trivial(&f, &[1], TrivialVariant::FPhi)
            .unwrap()
            .reduce();
        assert_eq!(r.mf.rank(), 0);
        assert_eq!(
            r.splits,
            vec![SplitSummand {
                kind: SplitKind::FPhi,
                shift: 1
            }]
        );
    }

    #[test]
    fn reduced_input_unchanged() {
        let neg = Arc::new(SignSystem::anticommutative(3));
        let f = SkewPoly::sum_of_squares(&neg);
        let l = SkewPoly::linear(
            &neg,
            &[
                GaussianRational::one(),
                GaussianRational::one(),
                GaussianRational::one(),
            ],
        );
        let mf = MatrixFactorization::rank_one(&f, l.clone(), l).unwrap();
        let r = mf.reduce();
        assert_eq!(r.split_count(), 0);
        assert_eq!(r.mf, mf);
        let both = mf.direct_sum(&mf).unwrap();
        assert_eq!(both.reduce().split_count(), 0);
    }

    #[test]
    fn mixed_sum_keeps_nontrivial_part() {
        let neg = Arc::new(SignSystem::anticommutative(3));
        let f = SkewPoly::sum_of_squares(&neg);
        let l = SkewPoly::linear(
            &neg,
            &[
                GaussianRational::one(),
                GaussianRational::from_int(-1),
                GaussianRational::one(),
            ],
        );
        let mf = MatrixFactorization::rank_one(&f, l.clone(), l).unwrap();
        let triv = MatrixFactorization::trivial(&f, &[0, 1], TrivialVariant::PhiF).unwrap();
        let sum = triv.direct_sum(&mf).unwrap();
        let r = sum.reduce();
        assert_eq!(r.split_count(), 2);
        assert_eq!(r.mf, mf);
        assert!(r.mf.is_valid());
    }
}
