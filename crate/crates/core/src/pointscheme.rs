//! The point scheme `E_ε ⊂ ℙ^{n−1}`: the intersection, over the negative
//! triangles `{i, j, k}`, of `V(xᵢxⱼx_k)`. Its irreducible components are
//! the coordinate subspaces `V(x_s : s ∈ S)` for the minimal sets `S` meeting
//! every negative triangle.

use std::sync::OnceLock;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::skewpoly::SignSystem;

pub const MAX_VERTICES: usize = 12;
pub const INVARIANT_MAX_VERTICES: usize = 8;

/// Triples `i < j < k` with `ε_ij ε_jk ε_ki = −1`.
pub fn negative_triangles(eps: &SignSystem) -> Vec<[usize; 3]> {
    let n = eps.n();
    (0..n)
        .tuple_combinations()
        .filter(|&(i, j, k)| eps.eps(i, j) * eps.eps(j, k) * eps.eps(k, i) == -1)
        .map(|(i, j, k)| [i, j, k])
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointScheme {
    pub n: usize,
    pub neg_triangles: Vec<[usize; 3]>,
    /// Each component as the sorted set of vanishing coordinates, ordered by
    /// size then lexicographically.
    pub components: Vec<Vec<usize>>,
    /// Components isomorphic to `ℙ¹`.
    pub ell: usize,
}

fn mask_to_set(mask: u32) -> Vec<usize> {
    (0..32).filter(|&v| mask >> v & 1 == 1).collect()
}

pub fn components(eps: &SignSystem) -> Result<PointScheme> {
    let n = eps.n();
    if n > MAX_VERTICES {
        return Err(Error::UnsupportedSize {
            got: n,
            supported: "at most 12 variables",
        });
    }
    let neg_triangles = negative_triangles(eps);
    let tri_masks: Vec<u32> = neg_triangles
        .iter()
        .map(|t| t.iter().fold(0u32, |m, &v| m | 1 << v))
        .collect();

    let mut by_size: Vec<u32> = (0..1u32 << n).collect();
    by_size.sort_by_key(|m| (m.count_ones(), mask_to_set(*m)));
    let mut found: Vec<u32> = Vec::new();
    for s in by_size {
        if found.iter().any(|&f| f & !s == 0) {
            continue;
        }
        if tri_masks.iter().all(|&t| t & s != 0) {
            found.push(s);
        }
    }
    let components: Vec<Vec<usize>> = found.iter().map(|&m| mask_to_set(m)).collect();
    let ell = components.iter().filter(|c| c.len() + 2 == n).count();
    Ok(PointScheme {
        n,
        neg_triangles,
        components,
        ell,
    })
}

/// `ℓ` without enumerating components: `V(x_s : s ∉ {i, j})` is a component
/// exactly when every triangle through `{i, j}` is negative.
pub fn ell_fast(eps: &SignSystem) -> usize {
    let n = eps.n();
    (0..n)
        .tuple_combinations()
        .filter(|&(i, j)| {
            (0..n)
                .filter(|&k| k != i && k != j)
                .all(|k| eps.eps(i, j) * eps.eps(j, k) * eps.eps(k, i) == -1)
        })
        .count()
}

impl PointScheme {
    /// `V(x3,x4) ≅ P^2`, 1-based.
    pub fn component_lines(&self) -> Vec<String> {
        self.components
            .iter()
            .map(|c| {
                let vars = c.iter().map(|v| format!("x{}", v + 1)).join(",");
                format!("V({vars}) ≅ P^{}", self.n - 1 - c.len())
            })
            .collect()
    }

    /// Dimensions of the components, ascending.
    pub fn dimensions(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self
            .components
            .iter()
            .map(|c| self.n - 1 - c.len())
            .collect();
        d.sort_unstable();
        d
    }
}

/// Component hypergraph up to relabeling of coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PointSchemeKey {
    pub components: Vec<u32>,
    pub dimensions: Vec<usize>,
}

/// For each permutation of `0..n`, the image of every subset bitmask.
fn relabel_tables(n: usize) -> &'static [Vec<u8>] {
    static TABLES: [OnceLock<Vec<Vec<u8>>>; INVARIANT_MAX_VERTICES + 1] =
        [const { OnceLock::new() }; INVARIANT_MAX_VERTICES + 1];
    TABLES[n].get_or_init(|| {
        (0..n)
            .permutations(n)
            .map(|perm| {
                (0..1u32 << n)
                    .map(|m| {
                        (0..n)
                            .filter(|&v| m >> v & 1 == 1)
                            .fold(0u8, |acc, v| acc | 1 << perm[v])
                    })
                    .collect()
            })
            .collect()
    })
}

pub fn invariant(eps: &SignSystem) -> Result<PointSchemeKey> {
    let n = eps.n();
    if n > INVARIANT_MAX_VERTICES {
        return Err(Error::UnsupportedSize {
            got: n,
            supported: "at most 8 variables",
        });
    }
    key_of_components(n, &components(eps)?.components)
}

/// Key of an arbitrary list of coordinate subspaces of `ℙ^{n−1}`, each given
/// by its vanishing coordinates.
pub fn key_of_components(n: usize, components: &[Vec<usize>]) -> Result<PointSchemeKey> {
    if n > INVARIANT_MAX_VERTICES {
        return Err(Error::UnsupportedSize {
            got: n,
            supported: "at most 8 variables",
        });
    }
    if let Some(&v) = components.iter().flatten().find(|&&v| v >= n) {
        return Err(Error::VertexOutOfRange { vertex: v, n });
    }
    let masks: Vec<usize> = components
        .iter()
        .map(|c| c.iter().fold(0usize, |m, &v| m | 1 << v))
        .collect();
    let mut best: Option<Vec<u32>> = None;
    let mut image = Vec::with_capacity(masks.len());
    for table in relabel_tables(n) {
        image.clear();
        image.extend(masks.iter().map(|&m| u32::from(table[m])));
        image.sort_unstable();
        if best.as_ref().is_none_or(|b| image < *b) {
            best = Some(image.clone());
        }
    }
    let mut dimensions: Vec<usize> = components.iter().map(|c| n - 1 - c.len()).collect();
    dimensions.sort_unstable();
    Ok(PointSchemeKey {
        components: best.unwrap_or_default(),
        dimensions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangles() {
        assert!(negative_triangles(&SignSystem::commutative(4)).is_empty());
        assert_eq!(negative_triangles(&SignSystem::anticommutative(4)).len(), 4);
        let one_edge = SignSystem::from_edges(5, &[(0, 1)]).unwrap();
        let t = negative_triangles(&one_edge);
        assert_eq!(t.len(), 7);
        assert!(t.iter().all(|tri| !(tri.contains(&0) && tri.contains(&1))));
    }

    #[test]
    fn component_lists() {
        let ps = components(&SignSystem::anticommutative(4)).unwrap();
        assert_eq!(ps.components.len(), 6);
        assert_eq!(ps.ell, 6);

        let ps = components(&SignSystem::from_edges(5, &[(0, 1)]).unwrap()).unwrap();
        let expected = vec![
            vec![2, 3],
            vec![2, 4],
            vec![3, 4],
            vec![0, 1, 2],
            vec![0, 1, 3],
            vec![0, 1, 4],
        ];
        assert_eq!(ps.components, expected);
        assert_eq!(ps.ell, 3);

        let ps = components(&SignSystem::commutative(4)).unwrap();
        assert_eq!(ps.components, vec![Vec::<usize>::new()]);
        assert_eq!(ps.component_lines(), vec!["V() ≅ P^3"]);
    }

    #[test]
    fn fast_ell_matches() {
        for mask in 0..1u64 << 10 {
            let g = crate::quadgraph::QuadGraph::from_mask(5, mask)
                .unwrap()
                .to_sign_system();
            assert_eq!(ell_fast(&g), components(&g).unwrap().ell);
        }
    }

    #[test]
    fn keys_distinguish_small_classes() {
        let two = invariant(&SignSystem::from_edges(4, &[(0, 1)]).unwrap()).unwrap();
        let three = invariant(&SignSystem::from_edges(4, &[(0, 1), (2, 3)]).unwrap()).unwrap();
        assert_eq!(two.dimensions, vec![1, 2, 2]);
        assert_eq!(three.dimensions, vec![3]);
        assert_ne!(two, three);
        let relabeled = invariant(&SignSystem::from_edges(4, &[(2, 3)]).unwrap()).unwrap();
        assert_eq!(two, relabeled);
    }
}
