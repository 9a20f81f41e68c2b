use std::fmt;
use std::sync::Arc;

use crate::coeff::GaussianRational;
use crate::error::{Error, Result};
use crate::skewpoly::{LinearSubstitution, SignSystem, SkewPoly};

/// A dense matrix of skew polynomials acting on column vectors from the left.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    ctx: Arc<SignSystem>,
    rows: usize,
    cols: usize,
    data: Vec<SkewPoly>,
}

impl PolyMatrix {
    pub fn zeros(ctx: &Arc<SignSystem>, rows: usize, cols: usize) -> Self {
        Self {
            ctx: Arc::clone(ctx),
            rows,
            cols,
            data: vec![SkewPoly::zero(ctx); rows * cols],
        }
    }

    pub fn identity(ctx: &Arc<SignSystem>, r: usize) -> Self {
        Self::scalar(ctx, r, &SkewPoly::one(ctx))
    }

    /// `p · E_r`.
    pub fn scalar(ctx: &Arc<SignSystem>, r: usize, p: &SkewPoly) -> Self {
        let mut m = Self::zeros(ctx, r, r);
        for i in 0..r {
            m[(i, i)] = p.clone();
        }
        m
    }

    pub fn from_rows(ctx: &Arc<SignSystem>, rows: Vec<Vec<SkewPoly>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::ShapeMismatch("ragged matrix rows".into()));
        }
        let data: Vec<SkewPoly> = rows.into_iter().flatten().collect();
        if data.iter().any(|p| p.ctx() != ctx) {
            return Err(Error::ContextMismatch);
        }
        Ok(Self {
            ctx: Arc::clone(ctx),
            rows: r,
            cols: c,
            data,
        })
    }

    pub fn ctx(&self) -> &Arc<SignSystem> {
        &self.ctx
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn to_rows(&self) -> Vec<Vec<SkewPoly>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)].clone()).collect())
            .collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), &SkewPoly)> {
        self.data
            .iter()
            .enumerate()
            .map(move |(k, p)| ((k / self.cols.max(1), k % self.cols.max(1)), p))
    }

    pub fn checked_mul(&self, rhs: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        if self.ctx != rhs.ctx {
            return Err(Error::ContextMismatch);
        }
        let mut out = Self::zeros(&self.ctx, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    out[(i, j)] = &out[(i, j)] + &(a * b);
                }
            }
        }
        Ok(out)
    }

    pub fn checked_sub(&self, rhs: &PolyMatrix) -> Result<PolyMatrix> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::ShapeMismatch(
                "cannot subtract matrices of different shapes".into(),
            ));
        }
        let mut out = self.clone();
        for (o, b) in out.data.iter_mut().zip(&rhs.data) {
            *o = o.checked_sub(b)?;
        }
        Ok(out)
    }

    pub fn checked_add(&self, rhs: &PolyMatrix) -> Result<PolyMatrix> {
        self.checked_sub(&rhs.neg())
    }

    pub fn neg(&self) -> PolyMatrix {
        self.map(|p| -p)
    }

    pub fn scale(&self, c: &GaussianRational) -> PolyMatrix {
        self.map(|p| p.scale(c))
    }

    /// Left multiplication of every entry by `p`.
    pub fn left_mul_poly(&self, p: &SkewPoly) -> PolyMatrix {
        self.map(|q| p * q)
    }

    pub fn map<F: FnMut(&SkewPoly) -> SkewPoly>(&self, f: F) -> PolyMatrix {
        PolyMatrix {
            ctx: Arc::clone(&self.ctx),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_map<F: FnMut(&SkewPoly) -> Result<SkewPoly>>(&self, mut f: F) -> Result<PolyMatrix> {
        let data = self.data.iter().map(&mut f).collect::<Result<Vec<_>>>()?;
        let ctx = data
            .first()
            .map_or_else(|| Arc::clone(&self.ctx), |p| Arc::clone(p.ctx()));
        Ok(PolyMatrix {
            ctx,
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// Moves every entry into a larger sign system (see [`SkewPoly::embed`]).
    pub fn embed(&self, target: &Arc<SignSystem>) -> Result<PolyMatrix> {
        let data = self
            .data
            .iter()
            .map(|p| p.embed(target))
            .collect::<Result<Vec<_>>>()?;
        Ok(PolyMatrix {
            ctx: Arc::clone(target),
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn apply_signs(&self, signs: &[i8]) -> Result<PolyMatrix> {
        self.try_map(|p| p.apply_signs(signs))
    }

    pub fn substitute(&self, sub: &LinearSubstitution) -> Result<PolyMatrix> {
        sub.check(&self.ctx)?;
        self.try_map(|p| p.substitute(sub))
    }

    /// `[[a, b], [c, d]]`.
    pub fn block2(
        a: &PolyMatrix,
        b: &PolyMatrix,
        c: &PolyMatrix,
        d: &PolyMatrix,
    ) -> Result<PolyMatrix> {
        if a.rows != b.rows || c.rows != d.rows || a.cols != c.cols || b.cols != d.cols {
            return Err(Error::ShapeMismatch("incompatible block sizes".into()));
        }
        let (r, k) = (a.rows + c.rows, a.cols + b.cols);
        let mut out = Self::zeros(&a.ctx, r, k);
        for i in 0..r {
            for j in 0..k {
                let src = match (i < a.rows, j < a.cols) {
                    (true, true) => &a[(i, j)],
                    (true, false) => &b[(i, j - a.cols)],
                    (false, true) => &c[(i - a.rows, j)],
                    (false, false) => &d[(i - a.rows, j - a.cols)],
                };
                out[(i, j)] = src.clone();
            }
        }
        Ok(out)
    }

    pub fn block_diag(a: &PolyMatrix, b: &PolyMatrix) -> Result<PolyMatrix> {
        let ctx = &a.ctx;
        Self::block2(
            a,
            &Self::zeros(ctx, a.rows, b.cols),
            &Self::zeros(ctx, b.rows, a.cols),
            b,
        )
    }

    pub fn without(&self, row: usize, col: usize) -> PolyMatrix {
        let mut data = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for i in (0..self.rows).filter(|&i| i != row) {
            for j in (0..self.cols).filter(|&j| j != col) {
                data.push(self[(i, j)].clone());
            }
        }
        PolyMatrix {
            ctx: Arc::clone(&self.ctx),
            rows: self.rows - 1,
            cols: self.cols - 1,
            data,
        }
    }

    /// `row[target] -= coef · row[src]`.
    pub(crate) fn row_sub_left(&mut self, target: usize, coef: &SkewPoly, src: usize) {
        for j in 0..self.cols {
            let delta = coef * &self[(src, j)];
            if !delta.is_zero() {
                self[(target, j)] = &self[(target, j)] - &delta;
            }
        }
    }

    /// `row[target] += coef · row[src]`.
    pub(crate) fn row_add_left(&mut self, target: usize, coef: &SkewPoly, src: usize) {
        self.row_sub_left(target, &-coef, src);
    }

    /// `col[target] -= col[src] · coef`.
    pub(crate) fn col_sub_right(&mut self, target: usize, src: usize, coef: &SkewPoly) {
        for i in 0..self.rows {
            let delta = &self[(i, src)] * coef;
            if !delta.is_zero() {
                self[(i, target)] = &self[(i, target)] - &delta;
            }
        }
    }

    /// `col[target] += col[src] · coef`.
    pub(crate) fn col_add_right(&mut self, target: usize, src: usize, coef: &SkewPoly) {
        self.col_sub_right(target, src, &-coef);
    }
}

impl std::ops::Index<(usize, usize)> for PolyMatrix {
    type Output = SkewPoly;
    fn index(&self, (i, j): (usize, usize)) -> &SkewPoly {
        assert!(i < self.rows && j < self.cols, "matrix index out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for PolyMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut SkewPoly {
        assert!(i < self.rows && j < self.cols, "matrix index out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                let cells: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}
