//! Exact rank computations: an incremental sparse row echelon form over
//! ℚ(√−1), and bitset elimination over F₂.

use std::collections::BTreeMap;

use crate::coeff::GaussianRational;

/// A sparse vector: column index → nonzero entry.
pub type SparseRow = BTreeMap<usize, GaussianRational>;

/// Rows are inserted one at a time and reduced against the pivots found so
/// far; only independent rows are kept.
#[derive(Default, Debug, Clone)]
pub struct Echelon {
    // pivot column -> row normalized so that the pivot entry is 1
    pivots: BTreeMap<usize, SparseRow>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Inserts a row; returns true if it increased the rank.
    pub fn insert(&mut self, mut row: SparseRow) -> bool {
        row.retain(|_, v| !v.is_zero());
        while let Some((&lead, lead_val)) = row.iter().find(|(c, _)| self.pivots.contains_key(c)) {
            let factor = lead_val.clone();
            let pivot = &self.pivots[&lead];
            for (&c, v) in pivot {
                let delta = &factor * v;
                let entry = row.entry(c).or_default();
                *entry -= &delta;
                if entry.is_zero() {
                    row.remove(&c);
                }
            }
        }
        let Some((&lead, lead_val)) = row.iter().next() else {
            return false;
        };
        let inv = lead_val.inv().expect("nonzero pivot");
        for v in row.values_mut() {
            *v = &*v * &inv;
        }
        self.pivots.insert(lead, row);
        true
    }
}

pub fn rank_of_rows<I: IntoIterator<Item = SparseRow>>(rows: I) -> usize {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// Rank over F₂ of the rows given as bitmasks.
pub fn f2_rank(rows: &[u64]) -> usize {
    let mut basis: Vec<u64> = Vec::new();
    for &r in rows {
        let mut x = r;
        for &b in &basis {
            // basis vectors have distinct leading bits, kept in decreasing order
            x = x.min(x ^ b);
        }
        if x != 0 {
            basis.push(x);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis.len()
}
