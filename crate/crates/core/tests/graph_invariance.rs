use rayon::prelude::*;
use skewquad::clifford::{self, center_dim_oracle, presentation, structure_with_base};
use skewquad::pointscheme::{self, ell_fast, negative_triangles};
use skewquad::rank;
use skewquad::QuadGraph;

const MAX_N: usize = 6;

fn graphs(n: usize) -> impl ParallelIterator<Item = QuadGraph> {
    (0..1u64 << (n * (n - 1) / 2))
        .into_par_iter()
        .map(move |m| QuadGraph::from_mask(n, m).unwrap())
}

fn triangle_signs(g: &QuadGraph) -> Vec<i8> {
    let n = g.n();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                out.push(g.triangle_sign(i, j, k));
            }
        }
    }
    out
}

#[test]
fn mutation_is_an_involution_preserving_triangles() {
    for n in 1..=MAX_N {
        graphs(n).for_each(|g| {
            let tri = triangle_signs(&g);
            for v in 0..n {
                let h = g.mutate(v).unwrap();
                assert_eq!(h.mutate(v).unwrap(), g);
                assert_eq!(triangle_signs(&h), tri, "{g} at {v}");
            }
        });
    }
}

#[test]
fn mutation_preserves_clifford_and_point_scheme() {
    for n in 1..=MAX_N {
        let keys: Vec<_> = graphs(n)
            .map(|g| {
                let eps = g.to_sign_system();
                (
                    clifford::structure(&eps),
                    pointscheme::invariant(&eps).unwrap(),
                    ell_fast(&eps),
                )
            })
            .collect();
        graphs(n).for_each(|g| {
            let here = &keys[g.mask() as usize];
            for v in 0..n {
                let h = g.mutate(v).unwrap();
                assert_eq!(&keys[h.mask() as usize], here, "{g} at {v}");
            }
        });
    }
}

#[test]
fn relative_mutation_preserves_clifford_structure() {
    for n in 3..=MAX_N {
        let legal: usize = graphs(n)
            .map(|g| {
                let cs = clifford::structure(&g.to_sign_system());
                let mut count = 0;
                for t in 0..n {
                    for b in 0..n {
                        if let Ok(h) = g.relative_mutate(t, b) {
                            assert_eq!(
                                clifford::structure(&h.to_sign_system()),
                                cs,
                                "{g}: {t} by {b}"
                            );
                            count += 1;
                        }
                    }
                }
                count
            })
            .sum();
        assert!(legal > 0);
    }
}

/// Without an isolated third vertex the Clifford structure is not preserved
/// in general; this records how often it changes.
#[test]
fn forced_relative_mutation_report() {
    for n in 3..=MAX_N {
        let (forced, changed) = graphs(n)
            .map(|g| {
                let cs = clifford::structure(&g.to_sign_system());
                let mut forced = 0u64;
                let mut changed = 0u64;
                for t in 0..n {
                    for b in 0..n {
                        if t == b || g.relative_mutate(t, b).is_ok() {
                            continue;
                        }
                        let h = g.relative_mutate_forced(t, b).unwrap();
                        forced += 1;
                        if clifford::structure(&h.to_sign_system()) != cs {
                            changed += 1;
                        }
                    }
                }
                (forced, changed)
            })
            .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
        println!("n={n}: {changed} of {forced} forced relative mutations change C(A)");
        assert!(changed > 0);
    }
}

#[test]
fn reductions_scale_the_descriptor() {
    for n in 2..=MAX_N {
        graphs(n).for_each(|g| {
            let s = clifford::structure(&g.to_sign_system());
            if let Some(h) = g.two_points_reduce() {
                let t = clifford::structure(&h.to_sign_system());
                assert_eq!(s.components, 2 * t.components, "{g}");
                assert_eq!(s.block, t.block, "{g}");
            }
            if let Some(h) = g.knorrer_reduce() {
                let t = clifford::structure(&h.to_sign_system());
                assert_eq!(s.components, t.components, "{g}");
            }
        });
    }
}

#[test]
fn structure_does_not_depend_on_the_base_vertex() {
    for n in 1..=MAX_N {
        graphs(n).for_each(|g| {
            let eps = g.to_sign_system();
            let s = clifford::structure(&eps);
            assert_eq!(s.components * s.block * s.block, 1 << (n - 1));
            for b in 0..n {
                assert_eq!(structure_with_base(&eps, b).unwrap(), s, "{g} base {b}");
            }
        });
    }
}

#[test]
fn structure_agrees_with_direct_linear_algebra() {
    for n in 1..=MAX_N {
        graphs(n).for_each(|g| {
            let eps = g.to_sign_system();
            let p = presentation(&eps, n - 1).unwrap();
            let s = clifford::CliffordStructure::from_presentation(&p);
            let r = center_dim_oracle(&p).unwrap();
            assert_eq!(r.center_dim as u64, s.components, "{g}");
            assert!(r.semisimple(), "{g}");
        });
    }
}

#[test]
fn components_are_minimal_transversals() {
    for n in 1..=MAX_N {
        graphs(n).for_each(|g| {
            let eps = g.to_sign_system();
            let tris = negative_triangles(&eps);
            let ps = pointscheme::components(&eps).unwrap();
            let hits = |s: &[usize]| tris.iter().all(|t| t.iter().any(|v| s.contains(v)));
            for c in &ps.components {
                assert!(hits(c), "{g}: {c:?}");
                for drop in 0..c.len() {
                    let smaller: Vec<usize> = c
                        .iter()
                        .enumerate()
                        .filter(|&(k, _)| k != drop)
                        .map(|(_, &v)| v)
                        .collect();
                    assert!(!hits(&smaller), "{g}: {c:?} not minimal");
                }
            }
            assert_eq!(ps.ell, ell_fast(&eps));
        });
    }
}

#[test]
fn rank_bounds_are_consistent() {
    for n in 1..=MAX_N {
        graphs(n).for_each(|g| {
            let eps = g.to_sign_system();
            let b = rank::rank_bounds(&eps);
            let s = clifford::structure(&eps);
            assert!(1 <= b.lo && b.lo <= b.hi && b.hi <= s.block, "{g}");
            if b.exact == Some(1) {
                let w = rank::rank_one_factorization(&eps).expect("witness");
                assert!(w.is_valid());
            }
            if rank::high_rank(&eps) == rank::HighRank::Yes && rank::is_smooth(&eps).unwrap() {
                assert_eq!(s.components, if n % 2 == 1 { 1 } else { 2 }, "{g}");
            }
        });
    }
}
