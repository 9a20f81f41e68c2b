//! The algebra `C(A_ε)`: generators `t_i` (one per vertex other than a base
//! vertex `b`) with `t_i² = 1` and `t_i t_j + c_ij t_j t_i = 0`, where
//! `c_ij = ε_bi ε_ij ε_jb`.
//!
//! It is a twisted group algebra of `(ℤ/2)^{n−1}`. Over a field containing
//! `√−1` its shape is fixed by the alternating F₂ form `B` recording which
//! generators anticommute: `2^{m − rk B}` simple components, each a matrix
//! algebra of size `2^{rk B / 2}`.

use serde::{Deserialize, Serialize};

use crate::coeff::GaussianRational;
use crate::error::{Error, Result};
use crate::linalg::{f2_rank, Echelon, SparseRow};
use crate::skewpoly::SignSystem;

pub const ORACLE_MAX_GENERATORS: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliffordPresentation {
    pub base: usize,
    /// Vertex behind each generator, in increasing order.
    pub generators: Vec<usize>,
    /// `comm[a][b]` for generators `a ≠ b`: `+1` means they anticommute.
    /// The diagonal is `−1` (every generator commutes with itself).
    pub comm: Vec<Vec<i8>>,
}

impl CliffordPresentation {
    pub fn m(&self) -> usize {
        self.generators.len()
    }

    /// Rows of `B` as bitmasks.
    pub fn anticommutation_rows(&self) -> Vec<u64> {
        self.comm
            .iter()
            .enumerate()
            .map(|(a, row)| {
                row.iter()
                    .enumerate()
                    .filter(|&(b, &c)| b != a && c == 1)
                    .fold(0u64, |acc, (b, _)| acc | 1 << b)
            })
            .collect()
    }
}

pub fn presentation(eps: &SignSystem, base: usize) -> Result<CliffordPresentation> {
    let n = eps.n();
    if base >= n {
        return Err(Error::VertexOutOfRange { vertex: base, n });
    }
    let generators: Vec<usize> = (0..n).filter(|&v| v != base).collect();
    let comm = generators
        .iter()
        .map(|&i| {
            generators
                .iter()
                .map(|&j| {
                    if i == j {
                        -1
                    } else {
                        eps.eps(base, i) * eps.eps(i, j) * eps.eps(j, base)
                    }
                })
                .collect()
        })
        .collect();
    Ok(CliffordPresentation {
        base,
        generators,
        comm,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliffordStructure {
    pub m: usize,
    pub rank_b: usize,
    /// Number of simple components; also the descriptor `N`.
    pub components: u64,
    /// Size of each matrix block.
    pub block: u64,
}

impl CliffordStructure {
    pub fn from_presentation(p: &CliffordPresentation) -> Self {
        let m = p.m();
        let rank_b = f2_rank(&p.anticommutation_rows());
        debug_assert!(rank_b.is_multiple_of(2), "alternating forms have even rank");
        CliffordStructure {
            m,
            rank_b,
            components: 1 << (m - rank_b),
            block: 1 << (rank_b / 2),
        }
    }

    pub fn dimension(&self) -> u64 {
        1 << self.m
    }
}

/// Structure computed with the last vertex as base.
pub fn structure(eps: &SignSystem) -> CliffordStructure {
    structure_with_base(eps, eps.n() - 1).expect("base in range")
}

pub fn structure_with_base(eps: &SignSystem, base: usize) -> Result<CliffordStructure> {
    Ok(CliffordStructure::from_presentation(&presentation(
        eps, base,
    )?))
}

/// `N` with `uCM(A_ε) ≅ D^b(mod k^N)`.
pub fn descriptor(eps: &SignSystem) -> u64 {
    structure(eps).components
}

/// Dimension of the smallest simple module.
pub fn min_module_dim(eps: &SignSystem) -> u64 {
    structure(eps).block
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub dimension: usize,
    pub center_dim: usize,
    pub trace_form_rank: usize,
}

impl OracleReport {
    /// Nondegenerate trace form of the regular representation; in
    /// characteristic zero this is equivalent to a zero radical.
    pub fn semisimple(&self) -> bool {
        self.trace_form_rank == self.dimension
    }
}

/// Multiplication on the square-free words `t_a` (`a` a subset bitmask):
/// `t_a · t_b = sign · t_{a⊕b}`.
struct WordAlgebra {
    m: usize,
    anti: Vec<u64>,
}

impl WordAlgebra {
    fn sign(&self, a: u64, b: u64) -> i8 {
        // each t_j of b passes every t_i of a with i > j, anticommuting ones flip the sign
        let mut flips = 0u32;
        for j in 0..self.m {
            if b >> j & 1 == 1 {
                let above = a & !((2u64 << j) - 1);
                flips += (above & self.anti[j]).count_ones();
            }
        }
        if flips.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Trace of left multiplication by `t_c` on the regular representation.
    fn trace(&self, c: u64) -> i64 {
        (0..1u64 << self.m)
            .filter(|&d| c ^ d == d)
            .map(|d| i64::from(self.sign(c, d)))
            .sum()
    }
}

/// Centre dimension and trace-form rank of `C(A)`, by direct linear algebra on
/// the `2^m`-dimensional word basis.
pub fn center_dim_oracle(p: &CliffordPresentation) -> Result<OracleReport> {
    let m = p.m();
    if m > ORACLE_MAX_GENERATORS {
        return Err(Error::UnsupportedSize {
            got: m,
            supported: "at most 12 generators",
        });
    }
    let alg = WordAlgebra {
        m,
        anti: p.anticommutation_rows(),
    };
    let dim = 1usize << m;

    // z = Σ z_a t_a is central iff z t_i − t_i z = 0 for every generator;
    // one equation per (generator, output basis word)
    let mut eq = Echelon::new();
    for i in 0..m {
        let t = 1u64 << i;
        let mut rows: Vec<SparseRow> = vec![SparseRow::new(); dim];
        for a in 0..dim as u64 {
            let diff = i64::from(alg.sign(a, t)) - i64::from(alg.sign(t, a));
            if diff != 0 {
                rows[(a ^ t) as usize].insert(a as usize, GaussianRational::from_int(diff));
            }
        }
        for row in rows {
            eq.insert(row);
        }
    }
    let center_dim = dim - eq.rank();

    let traces: Vec<i64> = (0..dim as u64).map(|c| alg.trace(c)).collect();
    let mut gram = Echelon::new();
    for a in 0..dim as u64 {
        let mut row = SparseRow::new();
        for b in 0..dim as u64 {
            let v = traces[(a ^ b) as usize] * i64::from(alg.sign(a, b));
            if v != 0 {
                row.insert(b as usize, GaussianRational::from_int(v));
            }
        }
        gram.insert(row);
    }
    Ok(OracleReport {
        dimension: dim,
        center_dim,
        trace_form_rank: gram.rank(),
    })
}
