//! Noncommutative graded matrix factorizations of a central quadric.
//!
//! With `f` central the normalizing automorphism is the identity, so a
//! factorization is the period-2 pair `(Φ⁰, Φ¹)` with `Φ⁰Φ¹ = Φ¹Φ⁰ = f·E`.
//! Free modules are `F⁰ = ⊕ S(−m0[s])`, `F¹ = ⊕ S(−m1[s])`, `F² = F⁰(−2)`;
//! `Φ⁰ : F¹ → F⁰` and `Φ¹ : F² → F¹` act on column vectors from the left.

mod corpus;
mod hilbert;
mod json;
mod matrix;
mod morphism;
mod reduce;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::skewpoly::{LinearSubstitution, SignSystem, SkewPoly};

pub use corpus::{
    example_commutative_rank_two, example_rank_one_family, random_basis_change, random_corpus,
    random_homogeneous, rank_one_witness,
};
pub use hilbert::{coker_dims_oracle, coker_hilbert, QuotientBasis};
pub use json::{MfJson, MorphismJson};
pub use matrix::PolyMatrix;
pub use morphism::MfMorphism;
pub use reduce::{Reduction, SplitKind, SplitSummand};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TrivialVariant {
    /// `Φ⁰ = E`, `Φ¹ = f·E`.
    PhiF,
    /// `Φ⁰ = f·E`, `Φ¹ = E`.
    FPhi,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MatrixFactorization {
    ctx: Arc<SignSystem>,
    f: SkewPoly,
    m0: Vec<i64>,
    m1: Vec<i64>,
    phi0: PolyMatrix,
    phi1: PolyMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomogeneityViolation {
    pub matrix: String,
    pub row: usize,
    pub col: usize,
    pub expected_degree: i64,
    pub entry: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Residual {
    pub product: String,
    pub row: usize,
    pub col: usize,
    pub value: String,
}

/// Everything wrong with a candidate factorization; empty means valid.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub quadric: Vec<String>,
    pub homogeneity: Vec<HomogeneityViolation>,
    /// Nonzero entries of `f·E − product`.
    pub residuals: Vec<Residual>,
}

impl VerificationReport {
    pub fn is_valid(&self) -> bool {
        self.quadric.is_empty() && self.homogeneity.is_empty() && self.residuals.is_empty()
    }
}

fn quadric_problems(f: &SkewPoly) -> Vec<String> {
    let mut out = Vec::new();
    if !f.is_homogeneous_of(2) || f.is_zero() {
        out.push(format!("f = {f} is not a nonzero homogeneous quadric"));
    }
    if !f.is_central() {
        out.push(format!("f = {f} is not central"));
    }
    out
}

impl MatrixFactorization {
    /// Assembles a candidate factorization, checking shapes only; use
    /// [`MatrixFactorization::verify`] for the algebraic conditions.
    pub fn new(
        f: SkewPoly,
        m0: Vec<i64>,
        m1: Vec<i64>,
        phi0: PolyMatrix,
        phi1: PolyMatrix,
    ) -> Result<Self> {
        let r = m0.len();
        if m1.len() != r {
            return Err(Error::ShapeMismatch(format!(
                "m0 has length {r}, m1 has length {}",
                m1.len()
            )));
        }
        for (name, m) in [("Phi0", &phi0), ("Phi1", &phi1)] {
            if m.rows() != r || m.cols() != r {
                return Err(Error::ShapeMismatch(format!(
                    "{name} is {}x{}, expected {r}x{r}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        let ctx = Arc::clone(f.ctx());
        if phi0.ctx() != &ctx || phi1.ctx() != &ctx {
            return Err(Error::ContextMismatch);
        }
        Ok(Self {
            ctx,
            f,
            m0,
            m1,
            phi0,
            phi1,
        })
    }

    /// Rank-one factorization `(u)·(v)` with `deg u = deg v = 1`.
    pub fn rank_one(f: &SkewPoly, u: SkewPoly, v: SkewPoly) -> Result<Self> {
        let ctx = f.ctx();
        Self::new(
            f.clone(),
            vec![0],
            vec![1],
            PolyMatrix::from_rows(ctx, vec![vec![u]])?,
            PolyMatrix::from_rows(ctx, vec![vec![v]])?,
        )
    }

    /// The trivial factorizations `φ_F` and `_Fφ` on free modules with the
    /// given shifts.
    pub fn trivial(f: &SkewPoly, shifts: &[i64], variant: TrivialVariant) -> Result<Self> {
        let problems = quadric_problems(f);
        if !problems.is_empty() {
            return Err(Error::InvalidQuadric(problems.join("; ")));
        }
        let ctx = f.ctx();
        let r = shifts.len();
        let id = PolyMatrix::identity(ctx, r);
        let fe = PolyMatrix::scalar(ctx, r, f);
        let m0 = shifts.to_vec();
        match variant {
            TrivialVariant::PhiF => Self::new(f.clone(), m0.clone(), m0, id, fe),
            TrivialVariant::FPhi => {
                let m1 = m0.iter().map(|s| s + 2).collect();
                Self::new(f.clone(), m0, m1, fe, id)
            }
        }
    }

    /// The factorization with no summands.
    pub fn empty(f: &SkewPoly) -> Self {
        let ctx = f.ctx();
        Self {
            ctx: Arc::clone(ctx),
            f: f.clone(),
            m0: Vec::new(),
            m1: Vec::new(),
            phi0: PolyMatrix::zeros(ctx, 0, 0),
            phi1: PolyMatrix::zeros(ctx, 0, 0),
        }
    }

    pub fn ctx(&self) -> &Arc<SignSystem> {
        &self.ctx
    }

    pub fn f(&self) -> &SkewPoly {
        &self.f
    }

    pub fn rank(&self) -> usize {
        self.m0.len()
    }

    pub fn m0(&self) -> &[i64] {
        &self.m0
    }

    pub fn m1(&self) -> &[i64] {
        &self.m1
    }

    pub fn phi0(&self) -> &PolyMatrix {
        &self.phi0
    }

    pub fn phi1(&self) -> &PolyMatrix {
        &self.phi1
    }

    /// Required degree of `Φ⁰[s][t]`.
    pub fn phi0_degree(&self, s: usize, t: usize) -> i64 {
        self.m1[t] - self.m0[s]
    }

    /// Required degree of `Φ¹[s][t]`.
    pub fn phi1_degree(&self, s: usize, t: usize) -> i64 {
        self.m0[t] + 2 - self.m1[s]
    }

    pub fn verify(&self) -> VerificationReport {
        let mut report = VerificationReport {
            quadric: quadric_problems(&self.f),
            ..Default::default()
        };
        let r = self.rank();
        for s in 0..r {
            for t in 0..r {
                for (name, m, deg) in [
                    ("Phi0", &self.phi0, self.phi0_degree(s, t)),
                    ("Phi1", &self.phi1, self.phi1_degree(s, t)),
                ] {
                    let e = &m[(s, t)];
                    if !e.is_homogeneous_of(deg) {
                        report.homogeneity.push(HomogeneityViolation {
                            matrix: name.into(),
                            row: s,
                            col: t,
                            expected_degree: deg,
                            entry: e.to_string(),
                        });
                    }
                }
            }
        }
        let fe = PolyMatrix::scalar(&self.ctx, r, &self.f);
        for (name, a, b) in [
            ("Phi0*Phi1", &self.phi0, &self.phi1),
            ("Phi1*Phi0", &self.phi1, &self.phi0),
        ] {
            let prod = a.checked_mul(b).expect("square matrices of equal size");
            let diff = fe.checked_sub(&prod).expect("same shape");
            for ((row, col), p) in diff.entries() {
                if !p.is_zero() {
                    report.residuals.push(Residual {
                        product: name.into(),
                        row,
                        col,
                        value: p.to_string(),
                    });
                }
            }
        }
        report
    }

    pub fn is_valid(&self) -> bool {
        self.verify().is_valid()
    }

    /// Block-diagonal sum; shift vectors are concatenated.
    pub fn direct_sum(&self, other: &MatrixFactorization) -> Result<Self> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch);
        }
        if self.f != other.f {
            return Err(Error::InvalidQuadric(
                "summands factor different quadrics".into(),
            ));
        }
        let cat = |a: &[i64], b: &[i64]| a.iter().chain(b).copied().collect::<Vec<_>>();
        Self::new(
            self.f.clone(),
            cat(&self.m0, &other.m0),
            cat(&self.m1, &other.m1),
            PolyMatrix::block_diag(&self.phi0, &other.phi0)?,
            PolyMatrix::block_diag(&self.phi1, &other.phi1)?,
        )
    }

    /// Grading shift: every free generator moves up by `k`.
    pub fn shifted(&self, k: i64) -> Self {
        let mut out = self.clone();
        out.m0.iter_mut().for_each(|m| *m += k);
        out.m1.iter_mut().for_each(|m| *m += k);
        out
    }

    /// Applies an algebra endomorphism of `S` to `f` and to every entry.
    pub fn substitute(&self, sub: &LinearSubstitution) -> Result<Self> {
        Self::new(
            self.f.substitute(sub)?,
            self.m0.clone(),
            self.m1.clone(),
            self.phi0.substitute(sub)?,
            self.phi1.substitute(sub)?,
        )
    }

    /// Knörrer doubling: adjoins `u` then `v` (indices `n`, `n+1`), both with
    /// `u xᵢ = signs[i] xᵢ u` and `uv = vu`, and returns the rank-`2r`
    /// factorization of `f + uv`
    ///
    /// `Φ⁰' = [[σΦ⁰, uE], [vE, −Φ¹]]`, `Φ¹' = [[σΦ¹, uE], [vE, −Φ⁰]]`
    ///
    /// with shifts `m0' = m0 ∪ (m1 − 1)`, `m1' = m1 ∪ (m0 + 1)`.
    pub fn knorrer_extend(&self, signs: &[i8]) -> Result<Self> {
        let n = self.ctx.n();
        if signs.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: signs.len(),
            });
        }
        if self.f.apply_signs(signs)? != self.f {
            return Err(Error::SigmaMovesQuadric);
        }
        let with_u = self.ctx.adjoin_variable(signs)?;
        let mut v_signs = signs.to_vec();
        v_signs.push(1);
        let ext = Arc::new(with_u.adjoin_variable(&v_signs)?);
        let u = SkewPoly::var(&ext, n);
        let v = SkewPoly::var(&ext, n + 1);
        let r = self.rank();

        let phi0 = self.phi0.embed(&ext)?;
        let phi1 = self.phi1.embed(&ext)?;
        let mut ext_signs = signs.to_vec();
        ext_signs.extend([1, 1]);
        let s_phi0 = phi0.apply_signs(&ext_signs)?;
        let s_phi1 = phi1.apply_signs(&ext_signs)?;
        let ue = PolyMatrix::scalar(&ext, r, &u);
        let ve = PolyMatrix::scalar(&ext, r, &v);

        let new0 = PolyMatrix::block2(&s_phi0, &ue, &ve, &phi1.neg())?;
        let new1 = PolyMatrix::block2(&s_phi1, &ue, &ve, &phi0.neg())?;
        let f = &self.f.embed(&ext)? + &(&u * &v);
        let m0 = self
            .m0
            .iter()
            .copied()
            .chain(self.m1.iter().map(|m| m - 1))
            .collect();
        let m1 = self
            .m1
            .iter()
            .copied()
            .chain(self.m0.iter().map(|m| m + 1))
            .collect();
        Self::new(f, m0, m1, new0, new1)
    }

    /// Knörrer doubling followed by `u ↦ u + √−1 v`, `v ↦ u − √−1 v`, giving a
    /// factorization of `f + u² + v²`.
    pub fn knorrer_extend_squares(&self, signs: &[i8]) -> Result<Self> {
        let ext = self.knorrer_extend(signs)?;
        let n = ext.ctx.n();
        ext.substitute(&LinearSubstitution::knorrer_theta(n, n - 2, n - 1))
    }
}
