use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::skewpoly::{SignSystem, SkewPoly, TermJson};

use super::{MatrixFactorization, MfMorphism, PolyMatrix};

type MatrixJson = Vec<Vec<Vec<TermJson>>>;

/// Serialized factorization. Entries are term lists over the shared `ctx`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MfJson {
    pub ctx: SignSystem,
    pub f: Vec<TermJson>,
    pub r: usize,
    pub m0: Vec<i64>,
    pub m1: Vec<i64>,
    #[serde(rename = "Phi0")]
    pub phi0: MatrixJson,
    #[serde(rename = "Phi1")]
    pub phi1: MatrixJson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MorphismJson {
    pub source: MfJson,
    pub target: MfJson,
    pub mu0: MatrixJson,
    pub mu1: MatrixJson,
}

fn matrix_to_json(m: &PolyMatrix) -> MatrixJson {
    m.to_rows()
        .iter()
        .map(|row| row.iter().map(SkewPoly::to_terms_json).collect())
        .collect()
}

fn matrix_from_json(
    ctx: &Arc<SignSystem>,
    rows: usize,
    cols: usize,
    m: &MatrixJson,
) -> Result<PolyMatrix> {
    if m.len() != rows || m.iter().any(|row| row.len() != cols) {
        return Err(Error::ShapeMismatch(format!(
            "expected a {rows}x{cols} matrix"
        )));
    }
    let rows = m
        .iter()
        .map(|row| {
            row.iter()
                .map(|t| SkewPoly::from_terms_json(ctx, t))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    if rows.is_empty() {
        return Ok(PolyMatrix::zeros(ctx, 0, cols));
    }
    PolyMatrix::from_rows(ctx, rows)
}

impl From<&MatrixFactorization> for MfJson {
    fn from(mf: &MatrixFactorization) -> Self {
        MfJson {
            ctx: (**mf.ctx()).clone(),
            f: mf.f().to_terms_json(),
            r: mf.rank(),
            m0: mf.m0().to_vec(),
            m1: mf.m1().to_vec(),
            phi0: matrix_to_json(mf.phi0()),
            phi1: matrix_to_json(mf.phi1()),
        }
    }
}

impl MfJson {
    fn build(&self, ctx: &Arc<SignSystem>) -> Result<MatrixFactorization> {
        if self.m0.len() != self.r {
            return Err(Error::LengthMismatch {
                expected: self.r,
                got: self.m0.len(),
            });
        }
        if self.m1.len() != self.r {
            return Err(Error::LengthMismatch {
                expected: self.r,
                got: self.m1.len(),
            });
        }
        let f = SkewPoly::from_terms_json(ctx, &self.f)?;
        let phi0 = matrix_from_json(ctx, self.r, self.r, &self.phi0)?;
        let phi1 = matrix_from_json(ctx, self.r, self.r, &self.phi1)?;
        MatrixFactorization::new(f, self.m0.clone(), self.m1.clone(), phi0, phi1)
    }
}

impl TryFrom<&MfJson> for MatrixFactorization {
    type Error = Error;
    fn try_from(j: &MfJson) -> Result<Self> {
        j.build(&Arc::new(j.ctx.clone()))
    }
}

impl From<&MfMorphism> for MorphismJson {
    fn from(m: &MfMorphism) -> Self {
        MorphismJson {
            source: m.source().into(),
            target: m.target().into(),
            mu0: matrix_to_json(m.mu0()),
            mu1: matrix_to_json(m.mu1()),
        }
    }
}

impl TryFrom<&MorphismJson> for MfMorphism {
    type Error = Error;
    fn try_from(j: &MorphismJson) -> Result<Self> {
        if j.source.ctx != j.target.ctx {
            return Err(Error::ContextMismatch);
        }
        let ctx = Arc::new(j.source.ctx.clone());
        let source = j.source.build(&ctx)?;
        let target = j.target.build(&ctx)?;
        let (rt, rs) = (target.rank(), source.rank());
        let mu0 = matrix_from_json(&ctx, rt, rs, &j.mu0)?;
        let mu1 = matrix_from_json(&ctx, rt, rs, &j.mu1)?;
        MfMorphism::new(source, target, mu0, mu1)
    }
}
