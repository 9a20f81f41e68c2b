use crate::coeff::GaussianRational;
use crate::error::{Error, Result};

use super::{MatrixFactorization, PolyMatrix};

/// A morphism `φ → ψ` of factorizations: `μ⁰ : F⁰ → G⁰`, `μ¹ : F¹ → G¹` with
/// `μ⁰Φ⁰ = Ψ⁰μ¹` and `μ¹Φ¹ = Ψ¹μ⁰`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MfMorphism {
    source: MatrixFactorization,
    target: MatrixFactorization,
    mu0: PolyMatrix,
    mu1: PolyMatrix,
}

impl MfMorphism {
    pub fn new(
        source: MatrixFactorization,
        target: MatrixFactorization,
        mu0: PolyMatrix,
        mu1: PolyMatrix,
    ) -> Result<Self> {
        if source.ctx() != target.ctx() || mu0.ctx() != source.ctx() || mu1.ctx() != source.ctx() {
            return Err(Error::ContextMismatch);
        }
        if source.f() != target.f() {
            return Err(Error::InvalidMorphism(
                "source and target factor different quadrics".into(),
            ));
        }
        let (rs, rt) = (source.rank(), target.rank());
        for (name, m) in [("mu0", &mu0), ("mu1", &mu1)] {
            if m.rows() != rt || m.cols() != rs {
                return Err(Error::InvalidMorphism(format!(
                    "{name} is {}x{}, expected {rt}x{rs}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        for s in 0..rt {
            for t in 0..rs {
                let d0 = source.m0()[t] - target.m0()[s];
                let d1 = source.m1()[t] - target.m1()[s];
                if !mu0[(s, t)].is_homogeneous_of(d0) {
                    return Err(Error::InvalidMorphism(format!(
                        "mu0[{s}][{t}] is not of degree {d0}"
                    )));
                }
                if !mu1[(s, t)].is_homogeneous_of(d1) {
                    return Err(Error::InvalidMorphism(format!(
                        "mu1[{s}][{t}] is not of degree {d1}"
                    )));
                }
            }
        }
        if mu0.checked_mul(source.phi0())? != target.phi0().checked_mul(&mu1)? {
            return Err(Error::InvalidMorphism("mu0 Phi0 != Psi0 mu1".into()));
        }
        if mu1.checked_mul(source.phi1())? != target.phi1().checked_mul(&mu0)? {
            return Err(Error::InvalidMorphism("mu1 Phi1 != Psi1 mu0".into()));
        }
        Ok(Self {
            source,
            target,
            mu0,
            mu1,
        })
    }

    pub fn identity(mf: &MatrixFactorization) -> Self {
        let id = PolyMatrix::identity(mf.ctx(), mf.rank());
        Self {
            source: mf.clone(),
            target: mf.clone(),
            mu0: id.clone(),
            mu1: id,
        }
    }

    pub fn zero(source: &MatrixFactorization, target: &MatrixFactorization) -> Result<Self> {
        let z = PolyMatrix::zeros(source.ctx(), target.rank(), source.rank());
        Self::new(source.clone(), target.clone(), z.clone(), z)
    }

    /// The morphism `(Ψ⁰H, HΦ⁰)` for any homogeneous `H : F⁰ → G¹`.
    pub fn through(
        source: &MatrixFactorization,
        target: &MatrixFactorization,
        h: &PolyMatrix,
    ) -> Result<Self> {
        let mu0 = target.phi0().checked_mul(h)?;
        let mu1 = h.checked_mul(source.phi0())?;
        Self::new(source.clone(), target.clone(), mu0, mu1)
    }

    pub fn source(&self) -> &MatrixFactorization {
        &self.source
    }

    pub fn target(&self) -> &MatrixFactorization {
        &self.target
    }

    pub fn mu0(&self) -> &PolyMatrix {
        &self.mu0
    }

    pub fn mu1(&self) -> &PolyMatrix {
        &self.mu1
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self {
            source: self.source.clone(),
            target: self.target.clone(),
            mu0: self.mu0.scale(c),
            mu1: self.mu1.scale(c),
        }
    }

    pub fn add(&self, other: &MfMorphism) -> Result<Self> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::InvalidMorphism(
                "summands have different source or target".into(),
            ));
        }
        Self::new(
            self.source.clone(),
            self.target.clone(),
            self.mu0.checked_add(&other.mu0)?,
            self.mu1.checked_add(&other.mu1)?,
        )
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &MfMorphism) -> Result<Self> {
        if self.target != other.source {
            return Err(Error::InvalidMorphism(
                "composition target/source mismatch".into(),
            ));
        }
        Self::new(
            self.source.clone(),
            other.target.clone(),
            other.mu0.checked_mul(&self.mu0)?,
            other.mu1.checked_mul(&self.mu1)?,
        )
    }

    /// The cone `e(μ)`: `Φ⁰ = [[Ψ¹, μ¹], [0, Φ⁰]]`, `Φ¹ = [[Ψ⁰, −μ⁰], [0, Φ¹]]`
    /// on `G¹ ⊕ F⁰` and `G² ⊕ F¹`.
    pub fn cone(&self) -> Result<MatrixFactorization> {
        let (src, tgt) = (&self.source, &self.target);
        let ctx = src.ctx();
        let lower = PolyMatrix::zeros(ctx, src.rank(), tgt.rank());
        let phi0 = PolyMatrix::block2(tgt.phi1(), &self.mu1, &lower, src.phi0())?;
        let phi1 = PolyMatrix::block2(tgt.phi0(), &self.mu0.neg(), &lower, src.phi1())?;
        let m0 = tgt.m1().iter().chain(src.m0()).copied().collect();
        let m1 = tgt
            .m0()
            .iter()
            .map(|m| m + 2)
            .chain(src.m1().iter().copied())
            .collect();
        MatrixFactorization::new(src.f().clone(), m0, m1, phi0, phi1)
    }
}

impl MatrixFactorization {
    /// `(Φ¹, Φ⁰)` on `F¹ ⊕`-shifted modules: the factorization whose cokernel
    /// is the syzygy of this one.
    pub fn suspend(&self) -> MatrixFactorization {
        MatrixFactorization::new(
            self.f.clone(),
            self.m1.clone(),
            self.m0.iter().map(|m| m + 2).collect(),
            self.phi1.clone(),
            self.phi0.clone(),
        )
        .expect("same shapes")
    }
}
