//! Mutation classes: orbits of the group generated by all mutations and all
//! vertex relabelings.
//!
//! Mutations generate the switching group `(ℤ/2)ⁿ`, whose orbits each
//! contain exactly one graph with the last vertex isolated. Those graphs are
//! the bitmasks below `2^{(n−1)(n−2)/2}`, so relabelings are applied to them
//! directly and followed by switching the last vertex back to isolation.

use std::cmp::Ordering;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::QuadGraph;
use crate::error::{Error, Result};

/// Bit position of the pair `{i, j}` in the edge bitmask.
pub fn pair_index(i: usize, j: usize) -> usize {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    j * (j - 1) / 2 + i
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MutationClass {
    /// Fewest edges, then lexicographically smallest sorted edge list.
    pub representative: QuadGraph,
    /// Number of labeled graphs in the class.
    pub size: u64,
}

#[derive(Clone, Debug)]
pub struct Classification {
    n: usize,
    classes: Vec<MutationClass>,
    // class index of every switching-normal graph
    class_of_normal: Vec<u32>,
    toggles: Vec<u64>,
}

struct Masks {
    n: usize,
    toggles: Vec<u64>,
}

impl Masks {
    fn new(n: usize) -> Self {
        let toggles = (0..n)
            .map(|v| {
                (0..n)
                    .filter(|&u| u != v)
                    .fold(0u64, |m, u| m | 1 << pair_index(u, v))
            })
            .collect();
        Self { n, toggles }
    }

    /// The switching-equivalent mask with the last vertex isolated.
    fn normalize(&self, mut mask: u64) -> u64 {
        let last = self.n - 1;
        for v in 0..last {
            if mask >> pair_index(v, last) & 1 == 1 {
                mask ^= self.toggles[v];
            }
        }
        mask
    }

    fn swap_adjacent(&self, mask: u64, a: usize) -> u64 {
        let image = |v: usize| match v {
            v if v == a => a + 1,
            v if v == a + 1 => a,
            v => v,
        };
        let mut out = 0u64;
        for j in 1..self.n {
            for i in 0..j {
                if mask >> pair_index(i, j) & 1 == 1 {
                    out |= 1 << pair_index(image(i), image(j));
                }
            }
        }
        out
    }

    fn edge_list(&self, mask: u64) -> Vec<(u8, u8)> {
        let mut out = Vec::with_capacity(mask.count_ones() as usize);
        for i in 0..self.n {
            for j in i + 1..self.n {
                if mask >> pair_index(i, j) & 1 == 1 {
                    out.push((i as u8, j as u8));
                }
            }
        }
        out
    }

    fn compare(&self, a: u64, b: u64) -> Ordering {
        a.count_ones()
            .cmp(&b.count_ones())
            .then_with(|| self.edge_list(a).cmp(&self.edge_list(b)))
    }

    /// Best graph in the switching class of `mask`.
    fn best_switching(&self, mask: u64) -> u64 {
        let mut cur = mask;
        let mut best = mask;
        // Gray-code walk over switchings at subsets of the first n−1 vertices
        for k in 1u64..1 << (self.n - 1) {
            cur ^= self.toggles[k.trailing_zeros() as usize];
            if cur.count_ones() < best.count_ones()
                || (cur.count_ones() == best.count_ones()
                    && self.compare(cur, best) == Ordering::Less)
            {
                best = cur;
            }
        }
        best
    }
}

fn find(parent: &mut [u32], mut x: u32) -> u32 {
    while parent[x as usize] != x {
        let p = parent[x as usize];
        parent[x as usize] = parent[p as usize];
        x = p;
    }
    x
}

/// Partitions all `2^{n(n−1)/2}` graphs on `n ≤ 8` vertices into mutation
/// classes, ordered by representative.
pub fn classify(n: usize) -> Result<Classification> {
    if !(1..=8).contains(&n) {
        return Err(Error::UnsupportedSize {
            got: n,
            supported: "1..=8",
        });
    }
    let masks = Masks::new(n);
    let normal_bits = (n - 1) * n.saturating_sub(2) / 2;
    let count = 1usize << normal_bits;

    let mut parent: Vec<u32> = (0..count as u32).collect();
    for a in 0..n - 1 {
        let images: Vec<u32> = (0..count as u64)
            .into_par_iter()
            .map(|m| masks.normalize(masks.swap_adjacent(m, a)) as u32)
            .collect();
        for (m, &img) in images.iter().enumerate() {
            let (x, y) = (find(&mut parent, m as u32), find(&mut parent, img));
            if x != y {
                let (lo, hi) = if x < y { (x, y) } else { (y, x) };
                parent[hi as usize] = lo;
            }
        }
    }
    let roots: Vec<u32> = (0..count as u32).map(|m| find(&mut parent, m)).collect();
    let best: Vec<u64> = (0..count as u64)
        .into_par_iter()
        .map(|m| masks.best_switching(m))
        .collect();

    // root -> (best mask, member count)
    let mut per_root: std::collections::BTreeMap<u32, (u64, u64)> = Default::default();
    for m in 0..count {
        let entry = per_root.entry(roots[m]).or_insert((best[m], 0));
        if masks.compare(best[m], entry.0) == Ordering::Less {
            entry.0 = best[m];
        }
        entry.1 += 1;
    }
    let mut rows: Vec<(u32, u64, u64)> =
        per_root.into_iter().map(|(r, (b, c))| (r, b, c)).collect();
    rows.sort_by(|x, y| masks.compare(x.1, y.1));

    let mut index_of_root = std::collections::HashMap::new();
    let switching = 1u64 << (n - 1);
    let classes = rows
        .iter()
        .enumerate()
        .map(|(k, &(root, best, members))| {
            index_of_root.insert(root, k as u32);
            MutationClass {
                representative: QuadGraph::from_mask(n, best).expect("n <= 8"),
                size: members * switching,
            }
        })
        .collect();
    let class_of_normal = roots.iter().map(|r| index_of_root[r]).collect();
    Ok(Classification {
        n,
        classes,
        class_of_normal,
        toggles: masks.toggles,
    })
}

impl Classification {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn classes(&self) -> &[MutationClass] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// All labeled graphs on `n` vertices.
    pub fn total_graphs(&self) -> u64 {
        1 << (self.n * (self.n - 1) / 2)
    }

    /// Index into [`Classification::classes`] of the class containing `g`.
    pub fn class_of(&self, g: &QuadGraph) -> Result<usize> {
        if g.n() != self.n {
            return Err(Error::UnsupportedSize {
                got: g.n(),
                supported: "the classified vertex count",
            });
        }
        Ok(self.class_of_mask(g.mask()))
    }

    pub fn class_of_mask(&self, mask: u64) -> usize {
        let masks = Masks {
            n: self.n,
            toggles: self.toggles.clone(),
        };
        self.class_of_normal[masks.normalize(mask) as usize] as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        let counts: Vec<usize> = (1..=6).map(|n| classify(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 7, 16]);
    }

    #[test]
    fn sizes_sum_to_all_graphs() {
        for n in 1..=6 {
            let c = classify(n).unwrap();
            assert_eq!(
                c.classes().iter().map(|k| k.size).sum::<u64>(),
                c.total_graphs()
            );
        }
    }

    #[test]
    fn representatives_classify_to_themselves() {
        let c = classify(5).unwrap();
        for (k, class) in c.classes().iter().enumerate() {
            assert_eq!(c.class_of(&class.representative).unwrap(), k);
        }
        assert_eq!(c.classes()[0].representative, QuadGraph::empty(5).unwrap());
    }

    #[test]
    fn out_of_range() {
        assert!(classify(0).is_err());
        assert!(classify(9).is_err());
    }
}
