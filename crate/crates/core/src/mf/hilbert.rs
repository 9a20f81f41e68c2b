use std::collections::HashMap;
use std::sync::Arc;

use crate::coeff::GaussianRational;
use crate::error::{Error, Result};
use crate::linalg::{Echelon, SparseRow};
use crate::series::quadric_series;
use crate::skewpoly::{Monomial, SignSystem, SkewPoly};

use super::MatrixFactorization;

/// Hilbert series of `Coker(Φ⁰)` over `A = S/(f)` up to degree `max_degree`,
/// read off the 2-periodic minimal free resolution:
/// `H_M(t) = H_A(t)·(P₀(t) − P₁(t))/(1 − t²)` with `P_i = Σ t^{m_i[s]}`.
pub fn coker_hilbert(mf: &MatrixFactorization, max_degree: usize) -> Result<Vec<i64>> {
    if let Some((matrix, row, col)) = mf.first_scalar() {
        return Err(Error::NotReduced { matrix, row, col });
    }
    let h_a = quadric_series(mf.ctx().n(), max_degree + degree_headroom(mf));
    let dim_a = |d: i64| if d < 0 { 0 } else { h_a.coeffs()[d as usize] };
    // Σ_{j ≥ 0} dim A_{d − shift − 2j}
    let tail = |d: i64, shift: i64| {
        let mut total = 0;
        let mut e = d - shift;
        while e >= 0 {
            total += dim_a(e);
            e -= 2;
        }
        total
    };
    Ok((0..=max_degree as i64)
        .map(|d| {
            let plus: i64 = mf.m0().iter().map(|&m| tail(d, m)).sum();
            let minus: i64 = mf.m1().iter().map(|&m| tail(d, m)).sum();
            plus - minus
        })
        .collect())
}

/// Generators in negative degree need `A` beyond `max_degree`.
fn degree_headroom(mf: &MatrixFactorization) -> usize {
    let lowest = mf.m0().iter().chain(mf.m1()).copied().min().unwrap_or(0);
    (-lowest).max(0) as usize
}

pub(crate) fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn go(prefix: &mut Vec<u32>, n: usize, left: u32, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == n {
            prefix.push(left);
            out.push(Monomial(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in (0..=left).rev() {
            prefix.push(e);
            go(prefix, n, left - e, out);
            prefix.pop();
        }
    }
    if n == 0 {
        return if d == 0 {
            vec![Monomial(Vec::new())]
        } else {
            Vec::new()
        };
    }
    let mut out = Vec::new();
    go(&mut Vec::with_capacity(n), n, d, &mut out);
    out
}

/// Degreewise monomial bases of `A = S/(f)`: the normal-form monomials not
/// divisible by the lex-leading monomial of `f`.
#[derive(Clone, Debug)]
pub struct QuotientBasis {
    f: SkewPoly,
    lead: Monomial,
    lead_coeff: GaussianRational,
    basis: Vec<Vec<Monomial>>,
    index: Vec<HashMap<Monomial, usize>>,
}

impl QuotientBasis {
    pub fn new(f: &SkewPoly, max_degree: usize) -> Result<Self> {
        if f.is_zero() || !f.is_homogeneous_of(2) || !f.is_central() {
            return Err(Error::InvalidQuadric(format!(
                "{f} is not a central quadric"
            )));
        }
        let (lead, lead_coeff) = f
            .terms()
            .last()
            .map(|(m, c)| (m.clone(), c.clone()))
            .expect("nonzero");
        let n = f.ctx().n();
        let basis: Vec<Vec<Monomial>> = (0..=max_degree as u32)
            .map(|d| {
                monomials_of_degree(n, d)
                    .into_iter()
                    .filter(|m| !lead.divides(m))
                    .collect()
            })
            .collect();
        let index = basis
            .iter()
            .map(|b| b.iter().cloned().enumerate().map(|(k, m)| (m, k)).collect())
            .collect();
        Ok(Self {
            f: f.clone(),
            lead,
            lead_coeff,
            basis,
            index,
        })
    }

    pub fn ctx(&self) -> &Arc<SignSystem> {
        self.f.ctx()
    }

    pub fn max_degree(&self) -> usize {
        self.basis.len() - 1
    }

    /// `dim A_d`; zero for negative `d`.
    pub fn dim(&self, d: i64) -> usize {
        if d < 0 {
            0
        } else {
            self.basis[d as usize].len()
        }
    }

    pub fn basis(&self, d: usize) -> &[Monomial] {
        &self.basis[d]
    }

    /// Reduces `p` modulo `fS` to a combination of standard monomials.
    pub fn normal_form(&self, p: &SkewPoly) -> SkewPoly {
        let ctx = self.ctx();
        let mut p = p.clone();
        // largest reducible term first; each step only adds smaller monomials
        loop {
            let next = p
                .terms()
                .rev()
                .find(|(m, _)| self.lead.divides(m))
                .map(|(m, c)| (m.clone(), c.clone()));
            let Some((m, c)) = next else { break };
            let q = self.lead.quotient_of(&m);
            let (sign, _) = q.mul(&self.lead, ctx);
            let coef = c / self.lead_coeff.clone().signed(sign);
            let qf = &SkewPoly::term(ctx, q, coef) * &self.f;
            p = &p - &qf;
        }
        p
    }

    /// Coordinates of the (homogeneous, degree `d`) normal form of `p`,
    /// offset by `offset` in the returned sparse row.
    fn coordinates_into(&self, p: &SkewPoly, d: usize, offset: usize, row: &mut SparseRow) {
        for (m, c) in self.normal_form(p).terms() {
            let k = self.index[d][m];
            row.insert(offset + k, c.clone());
        }
    }
}

/// `dim_k Coker(Φ⁰)_d` for `d ≤ max_degree`, by explicit linear algebra on the
/// monomial bases of `A`: the image in degree `d` is spanned by
/// `Φ⁰·e_t·b` for standard monomials `b` of degree `d − m1[t]`.
pub fn coker_dims_oracle(mf: &MatrixFactorization, max_degree: usize) -> Result<Vec<i64>> {
    let qb = QuotientBasis::new(mf.f(), max_degree + degree_headroom(mf))?;
    let ctx = mf.ctx();
    let r = mf.rank();
    let mut out = Vec::with_capacity(max_degree + 1);
    for d in 0..=max_degree as i64 {
        let mut offsets = Vec::with_capacity(r);
        let mut total = 0usize;
        for &m in mf.m0() {
            offsets.push(total);
            total += qb.dim(d - m);
        }
        let mut ech = Echelon::new();
        for t in 0..r {
            let e = d - mf.m1()[t];
            if e < 0 {
                continue;
            }
            for b in qb.basis(e as usize) {
                let b = SkewPoly::term(ctx, b.clone(), GaussianRational::one());
                let mut row = SparseRow::new();
                for s in 0..r {
                    let target = d - mf.m0()[s];
                    if target < 0 {
                        continue;
                    }
                    let entry = &mf.phi0()[(s, t)] * &b;
                    if entry.is_zero() {
                        continue;
                    }
                    qb.coordinates_into(&entry, target as usize, offsets[s], &mut row);
                }
                ech.insert(row);
            }
        }
        out.push((total - ech.rank()) as i64);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mf::{example_commutative_rank_two, TrivialVariant};

    fn rank_one_xyz() -> MatrixFactorization {
        let neg = Arc::new(SignSystem::anticommutative(3));
        let f = SkewPoly::sum_of_squares(&neg);
        let l = SkewPoly::linear(&neg, &vec![GaussianRational::one(); 3]);
        MatrixFactorization::rank_one(&f, l.clone(), l).unwrap()
    }

    #[test]
    fn rank_one_series() {
        let mf = rank_one_xyz();
        let expected: Vec<i64> = (1..=9).collect();
        assert_eq!(coker_hilbert(&mf, 8).unwrap(), expected);
        assert_eq!(coker_dims_oracle(&mf, 8).unwrap(), expected);
    }

    #[test]
    fn commutative_rank_two_series() {
        let mf = example_commutative_rank_two();
        let expected: Vec<i64> = (1..=9).map(|k| 2 * k).collect();
        assert_eq!(coker_hilbert(&mf, 8).unwrap(), expected);
        assert_eq!(coker_dims_oracle(&mf, 8).unwrap(), expected);
    }

    #[test]
    fn empty_and_trivial() {
        let mf = rank_one_xyz();
        let e = MatrixFactorization::empty(mf.f());
        assert_eq!(coker_hilbert(&e, 4).unwrap(), vec![0; 5]);
        let t = MatrixFactorization::trivial(mf.f(), &[0], TrivialVariant::PhiF).unwrap();
        assert_eq!(coker_dims_oracle(&t, 4).unwrap(), vec![0; 5]);
        assert_eq!(
            coker_hilbert(&t, 4),
            Err(Error::NotReduced {
                matrix: "Phi0",
                row: 0,
                col: 0
            })
        );
    }

    #[test]
    fn normal_form_kills_f() {
        let mf = rank_one_xyz();
        let qb = QuotientBasis::new(mf.f(), 4).unwrap();
        let x = SkewPoly::var(mf.ctx(), 0);
        assert!(qb.normal_form(mf.f()).is_zero());
        assert!(qb.normal_form(&(&x * mf.f())).is_zero());
        assert_eq!(qb.dim(2), 5);
        assert_eq!(qb.dim(4), 9);
    }
}
