//! Exact arithmetic in (±1)-skew polynomial algebras
//! `S_ε = k⟨x₁,…,xₙ⟩ / (xᵢxⱼ − εᵢⱼxⱼxᵢ)`.
//!
//! Elements are stored in the normal form `x₁^{e₁}⋯xₙ^{eₙ}` (ascending variable
//! index). Reordering a word into normal form picks up one factor `εᵢⱼ` for
//! every transposition of an unequal pair; since `ε² = 1` the result does not
//! depend on the swap order.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::coeff::GaussianRational;
use crate::error::{Error, Result};

/// The sign matrix `ε` of `S_ε`; symmetric with entries ±1 and diagonal +1.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "SignSystemRaw", into = "SignSystemRaw")]
pub struct SignSystem {
    n: usize,
    eps: Vec<Vec<i8>>,
}

#[derive(Serialize, Deserialize)]
struct SignSystemRaw {
    n: usize,
    eps: Vec<Vec<i8>>,
}

impl TryFrom<SignSystemRaw> for SignSystem {
    type Error = Error;
    fn try_from(raw: SignSystemRaw) -> Result<Self> {
        SignSystem::new(raw.n, raw.eps)
    }
}

impl From<SignSystem> for SignSystemRaw {
    fn from(s: SignSystem) -> Self {
        SignSystemRaw { n: s.n, eps: s.eps }
    }
}

impl SignSystem {
    /// Builds a sign system from a full `n × n` matrix. Diagonal entries are
    /// ignored (any value is accepted and normalized to +1).
    pub fn new(n: usize, mut eps: Vec<Vec<i8>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSignSystem(
                "need at least one variable".into(),
            ));
        }
        if eps.len() != n || eps.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidSignSystem(format!("eps must be {n}x{n}")));
        }
        for i in 0..n {
            eps[i][i] = 1;
            for j in 0..n {
                if i == j {
                    continue;
                }
                if eps[i][j] != 1 && eps[i][j] != -1 {
                    return Err(Error::InvalidSignSystem(format!(
                        "eps[{i}][{j}] = {} is not +-1",
                        eps[i][j]
                    )));
                }
                if eps[i][j] != eps[j][i] {
                    return Err(Error::InvalidSignSystem(format!(
                        "eps not symmetric at ({i},{j})"
                    )));
                }
            }
        }
        Ok(Self { n, eps })
    }

    /// Every pair of variables related by the same sign.
    pub fn uniform(n: usize, sign: i8) -> Self {
        let eps = (0..n)
            .map(|i| (0..n).map(|j| if i == j { 1 } else { sign }).collect())
            .collect();
        Self::new(n, eps).expect("uniform sign system is valid")
    }

    /// The commutative polynomial ring `k[x₁,…,xₙ]`.
    pub fn commutative(n: usize) -> Self {
        Self::uniform(n, 1)
    }

    /// `k₋₁[x₁,…,xₙ]`: all distinct variables anticommute.
    pub fn anticommutative(n: usize) -> Self {
        Self::uniform(n, -1)
    }

    /// Builds the sign system whose graph has exactly the given (0-based) edges.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut eps = vec![vec![-1i8; n]; n];
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::IndexOutOfRange { index: a.max(b), n });
            }
            if a == b {
                return Err(Error::InvalidSignSystem("loops are not allowed".into()));
            }
            eps[a][b] = 1;
            eps[b][a] = 1;
        }
        Self::new(n, eps)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn eps(&self, i: usize, j: usize) -> i8 {
        self.eps[i][j]
    }

    pub fn matrix(&self) -> &[Vec<i8>] {
        &self.eps
    }

    /// `S_ε[u; σ]` for the sign-diagonal automorphism `σ = diag(signs)`:
    /// the new variable is appended last and satisfies `u xᵢ = signs[i] xᵢ u`.
    pub fn adjoin_variable(&self, signs: &[i8]) -> Result<Self> {
        if signs.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: signs.len(),
            });
        }
        let n = self.n + 1;
        let mut eps = vec![vec![1i8; n]; n];
        for i in 0..self.n {
            for j in 0..self.n {
                eps[i][j] = self.eps[i][j];
            }
            eps[i][self.n] = signs[i];
            eps[self.n][i] = signs[i];
        }
        Self::new(n, eps)
    }

    /// The full sign system on the variables `keep` (in the given order).
    pub fn restrict(&self, keep: &[usize]) -> Result<Self> {
        for &k in keep {
            if k >= self.n {
                return Err(Error::IndexOutOfRange {
                    index: k,
                    n: self.n,
                });
            }
        }
        let eps = keep
            .iter()
            .map(|&i| keep.iter().map(|&j| self.eps[i][j]).collect())
            .collect();
        Self::new(keep.len(), eps)
    }
}

/// Exponent vector of a normal-form monomial `x₁^{e₁}⋯xₙ^{eₙ}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    /// Sign picked up when writing `self · other` in normal form: each `xⱼ`
    /// of `other` moves left past each `xᵢ` of `self` with `i > j`.
    pub fn product_sign(&self, other: &Monomial, ctx: &SignSystem) -> i8 {
        let mut sign = 1i8;
        for (i, &a) in self.0.iter().enumerate() {
            if a % 2 == 0 {
                continue;
            }
            for (j, &b) in other.0.iter().enumerate().take(i) {
                if b % 2 == 1 {
                    sign *= ctx.eps(i, j);
                }
            }
        }
        sign
    }

    pub fn mul(&self, other: &Monomial, ctx: &SignSystem) -> (i8, Monomial) {
        let exps = self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect();
        (self.product_sign(other, ctx), Monomial(exps))
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self` as exponent vectors; caller guarantees divisibility.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| b - a).collect())
    }
}

/// Sorts a word of variable indices into normal form by stable adjacent swaps.
/// Returns the accumulated sign and the resulting monomial.
pub fn normalize_word(ctx: &SignSystem, word: &[usize]) -> Result<(i8, Monomial)> {
    let n = ctx.n();
    if let Some(&bad) = word.iter().find(|&&w| w >= n) {
        return Err(Error::IndexOutOfRange { index: bad, n });
    }
    let mut w = word.to_vec();
    let mut sign = 1i8;
    // bubble sort; equal neighbours are never swapped
    for end in (1..w.len()).rev() {
        for k in 0..end {
            if w[k] > w[k + 1] {
                sign *= ctx.eps(w[k], w[k + 1]);
                w.swap(k, k + 1);
            }
        }
    }
    let mut exps = vec![0u32; n];
    for v in w {
        exps[v] += 1;
    }
    Ok((sign, Monomial(exps)))
}

/// An element of `S_ε` in canonical form (no zero coefficients).
#[derive(Clone, PartialEq, Eq)]
pub struct SkewPoly {
    ctx: Arc<SignSystem>,
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl SkewPoly {
    pub fn zero(ctx: &Arc<SignSystem>) -> Self {
        Self {
            ctx: Arc::clone(ctx),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ctx: &Arc<SignSystem>, c: GaussianRational) -> Self {
        Self::term(ctx, Monomial::one(ctx.n()), c)
    }

    pub fn one(ctx: &Arc<SignSystem>) -> Self {
        Self::constant(ctx, GaussianRational::one())
    }

    pub fn var(ctx: &Arc<SignSystem>, i: usize) -> Self {
        Self::term(ctx, Monomial::var(ctx.n(), i), GaussianRational::one())
    }

    pub fn term(ctx: &Arc<SignSystem>, m: Monomial, c: GaussianRational) -> Self {
        assert_eq!(
            m.0.len(),
            ctx.n(),
            "monomial length must match the sign system"
        );
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self {
            ctx: Arc::clone(ctx),
            terms,
        }
    }

    /// Builds a polynomial from `(coefficient, exponents)` pairs, merging
    /// repeated monomials.
    pub fn from_terms<I>(ctx: &Arc<SignSystem>, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (GaussianRational, Vec<u32>)>,
    {
        let mut p = Self::zero(ctx);
        for (c, exps) in terms {
            if exps.len() != ctx.n() {
                return Err(Error::LengthMismatch {
                    expected: ctx.n(),
                    got: exps.len(),
                });
            }
            p.add_term(Monomial(exps), &c);
        }
        Ok(p)
    }

    /// `Σ cᵢxᵢ` for a coefficient vector.
    pub fn linear(ctx: &Arc<SignSystem>, coeffs: &[GaussianRational]) -> Self {
        let mut p = Self::zero(ctx);
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(Monomial::var(ctx.n(), i), c);
        }
        p
    }

    /// The quadric `f_ε = x₁² + ⋯ + xₙ²`.
    pub fn sum_of_squares(ctx: &Arc<SignSystem>) -> Self {
        let n = ctx.n();
        let mut p = Self::zero(ctx);
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = 2;
            p.add_term(Monomial(e), &GaussianRational::one());
        }
        p
    }

    pub fn ctx(&self) -> &Arc<SignSystem> {
        &self.ctx
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> GaussianRational {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    /// Degree of a nonzero homogeneous element; `None` for zero or mixed degree.
    pub fn degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(Monomial::degree);
        let d = degs.next()?;
        degs.all(|e| e == d).then_some(d)
    }

    /// Zero is homogeneous of every degree.
    pub fn is_homogeneous_of(&self, d: i64) -> bool {
        self.terms.keys().all(|m| i64::from(m.degree()) == d)
    }

    /// The coefficient if this is a nonzero constant.
    pub fn as_scalar(&self) -> Option<&GaussianRational> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next()?;
        (m.degree() == 0).then_some(c)
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        let mut out = Self::zero(&self.ctx);
        if c.is_zero() {
            return out;
        }
        for (m, v) in &self.terms {
            out.terms.insert(m.clone(), v * c);
        }
        out
    }

    pub fn checked_mul(&self, rhs: &SkewPoly) -> Result<SkewPoly> {
        if self.ctx != rhs.ctx {
            return Err(Error::ContextMismatch);
        }
        let mut out = Self::zero(&self.ctx);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let (sign, m) = ma.mul(mb, &self.ctx);
                out.add_term(m, &(ca * cb).signed(sign));
            }
        }
        Ok(out)
    }

    pub fn checked_add(&self, rhs: &SkewPoly) -> Result<SkewPoly> {
        if self.ctx != rhs.ctx {
            return Err(Error::ContextMismatch);
        }
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, rhs: &SkewPoly) -> Result<SkewPoly> {
        self.checked_add(&-rhs)
    }

    /// Left multiplication by the variable `xᵢ`.
    pub fn mul_var_left(&self, i: usize) -> SkewPoly {
        &SkewPoly::var(&self.ctx, i) * self
    }

    /// True iff `xᵢp = pxᵢ` for every generator.
    pub fn is_central(&self) -> bool {
        (0..self.ctx.n()).all(|i| {
            let x = SkewPoly::var(&self.ctx, i);
            &x * self == self * &x
        })
    }

    /// Applies the sign-diagonal automorphism `xᵢ ↦ signs[i]·xᵢ`.
    pub fn apply_signs(&self, signs: &[i8]) -> Result<SkewPoly> {
        if signs.len() != self.ctx.n() {
            return Err(Error::LengthMismatch {
                expected: self.ctx.n(),
                got: signs.len(),
            });
        }
        let mut out = Self::zero(&self.ctx);
        for (m, c) in &self.terms {
            let s: i8 =
                m.0.iter()
                    .zip(signs)
                    .filter(|(e, _)| *e % 2 == 1)
                    .map(|(_, s)| *s)
                    .product();
            out.terms.insert(m.clone(), c.clone().signed(s));
        }
        Ok(out)
    }

    /// Reinterprets the polynomial in a larger sign system whose first
    /// `self.ctx.n()` variables carry the same signs.
    pub fn embed(&self, target: &Arc<SignSystem>) -> Result<SkewPoly> {
        let n = self.ctx.n();
        if target.n() < n {
            return Err(Error::ContextMismatch);
        }
        for i in 0..n {
            for j in 0..n {
                if self.ctx.eps(i, j) != target.eps(i, j) {
                    return Err(Error::ContextMismatch);
                }
            }
        }
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            e.resize(target.n(), 0);
            out.terms.insert(Monomial(e), c.clone());
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> SkewPoly {
        let mut acc = SkewPoly::one(&self.ctx);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Image under the algebra map `xᵢ ↦ sub.images[i]`; refuses maps that do
    /// not preserve the defining relations.
    pub fn substitute(&self, sub: &LinearSubstitution) -> Result<SkewPoly> {
        sub.check(&self.ctx)?;
        let images = sub.image_polys(&self.ctx);
        let mut out = Self::zero(&self.ctx);
        for (m, c) in &self.terms {
            let mut prod = SkewPoly::constant(&self.ctx, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    prod = &prod * &images[i];
                }
            }
            out = &out + &prod;
        }
        Ok(out)
    }

    /// Human-readable form using variable names `x1..xn`.
    pub fn display(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for SkewPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest degree first, then the BTreeMap order
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| b.0.degree().cmp(&a.0.degree()).then_with(|| b.0.cmp(a.0)));
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let mono: Vec<String> =
                m.0.iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| {
                        if e == 1 {
                            format!("x{}", i + 1)
                        } else {
                            format!("x{}^{}", i + 1, e)
                        }
                    })
                    .collect();
            let mono = mono.join("*");
            let cs = c.to_string();
            let (neg, body) = match cs.strip_prefix('-') {
                Some(rest) if c.re.is_zero() || c.im.is_zero() => (true, rest.to_string()),
                _ => (false, cs.clone()),
            };
            let compound = !c.re.is_zero() && !c.im.is_zero();
            let coef = if compound { format!("({body})") } else { body };
            let piece = if mono.is_empty() {
                coef
            } else if coef == "1" {
                mono
            } else {
                format!("{coef}*{mono}")
            };
            match (k, neg) {
                (0, true) => write!(f, "-{piece}")?,
                (0, false) => write!(f, "{piece}")?,
                (_, true) => write!(f, " - {piece}")?,
                (_, false) => write!(f, " + {piece}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SkewPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SkewPoly({self})")
    }
}

impl<'a> Add<&'a SkewPoly> for &'a SkewPoly {
    type Output = SkewPoly;
    fn add(self, rhs: &'a SkewPoly) -> SkewPoly {
        self.checked_add(rhs)
            .expect("sign system mismatch in addition")
    }
}

impl<'a> Sub<&'a SkewPoly> for &'a SkewPoly {
    type Output = SkewPoly;
    fn sub(self, rhs: &'a SkewPoly) -> SkewPoly {
        self.checked_sub(rhs)
            .expect("sign system mismatch in subtraction")
    }
}

impl<'a> Mul<&'a SkewPoly> for &'a SkewPoly {
    type Output = SkewPoly;
    fn mul(self, rhs: &'a SkewPoly) -> SkewPoly {
        self.checked_mul(rhs)
            .expect("sign system mismatch in multiplication")
    }
}

impl Neg for &SkewPoly {
    type Output = SkewPoly;
    fn neg(self) -> SkewPoly {
        let mut out = SkewPoly::zero(&self.ctx);
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), -c);
        }
        out
    }
}

/// One term of the JSON form.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: GaussianRational,
    pub exps: Vec<u32>,
}

/// Standalone JSON form `{"n", "eps", "terms"}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SkewPolyJson {
    pub n: usize,
    pub eps: Vec<Vec<i8>>,
    pub terms: Vec<TermJson>,
}

impl SkewPoly {
    pub fn to_terms_json(&self) -> Vec<TermJson> {
        self.terms
            .iter()
            .map(|(m, c)| TermJson {
                coeff: c.clone(),
                exps: m.0.clone(),
            })
            .collect()
    }

    pub fn from_terms_json(ctx: &Arc<SignSystem>, terms: &[TermJson]) -> Result<Self> {
        Self::from_terms(ctx, terms.iter().map(|t| (t.coeff.clone(), t.exps.clone())))
    }

    pub fn to_json(&self) -> SkewPolyJson {
        SkewPolyJson {
            n: self.ctx.n(),
            eps: self.ctx.matrix().to_vec(),
            terms: self.to_terms_json(),
        }
    }

    pub fn from_json(j: &SkewPolyJson) -> Result<Self> {
        let ctx = Arc::new(SignSystem::new(j.n, j.eps.clone())?);
        Self::from_terms_json(&ctx, &j.terms)
    }
}

/// A linear change of variables `xᵢ ↦ Σⱼ images[i][j]·xⱼ`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearSubstitution {
    pub images: Vec<Vec<GaussianRational>>,
}

impl LinearSubstitution {
    pub fn new(images: Vec<Vec<GaussianRational>>) -> Self {
        Self { images }
    }

    pub fn identity(n: usize) -> Self {
        Self::negate(n, &[])
    }

    /// `θ_I`: `xᵢ ↦ −xᵢ` for `i ∈ I`, identity elsewhere.
    pub fn negate(n: usize, set: &[usize]) -> Self {
        let images = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match (i == j, set.contains(&i)) {
                        (false, _) => GaussianRational::zero(),
                        (true, false) => GaussianRational::one(),
                        (true, true) => GaussianRational::from_int(-1),
                    })
                    .collect()
            })
            .collect();
        Self { images }
    }

    /// `u ↦ u + √−1·v`, `v ↦ u − √−1·v` on the variables `u`, `v`; identity
    /// on the rest.
    pub fn knorrer_theta(n: usize, u: usize, v: usize) -> Self {
        let mut sub = Self::identity(n);
        let i = GaussianRational::i();
        sub.images[u] = vec![GaussianRational::zero(); n];
        sub.images[u][u] = GaussianRational::one();
        sub.images[u][v] = i.clone();
        sub.images[v] = vec![GaussianRational::zero(); n];
        sub.images[v][u] = GaussianRational::one();
        sub.images[v][v] = -i;
        sub
    }

    fn image_polys(&self, ctx: &Arc<SignSystem>) -> Vec<SkewPoly> {
        self.images
            .iter()
            .map(|row| SkewPoly::linear(ctx, row))
            .collect()
    }

    /// Checks that every relation `xᵢxⱼ − εᵢⱼxⱼxᵢ` (i < j) maps to zero.
    pub fn check(&self, ctx: &Arc<SignSystem>) -> Result<()> {
        let n = ctx.n();
        if self.images.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: self.images.len(),
            });
        }
        if let Some(row) = self.images.iter().find(|r| r.len() != n) {
            return Err(Error::LengthMismatch {
                expected: n,
                got: row.len(),
            });
        }
        let img = self.image_polys(ctx);
        for i in 0..n {
            for j in i + 1..n {
                let lhs = &img[i] * &img[j];
                let rhs =
                    (&img[j] * &img[i]).scale(&GaussianRational::from_int(ctx.eps(i, j).into()));
                if lhs != rhs {
                    return Err(Error::RelationViolation { i: i + 1, j: j + 1 });
                }
            }
        }
        Ok(())
    }
}
