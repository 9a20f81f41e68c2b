use std::collections::{HashMap, VecDeque};

use itertools::Itertools;
use skewquad::pointscheme;
use skewquad::quadgraph::classify;
use skewquad::QuadGraph;

/// Orbits of all `2^{n(n−1)/2}` graphs under mutations and vertex
/// permutations, found by breadth-first search from each unvisited graph.
fn orbits_by_search(n: usize) -> Vec<usize> {
    let total = 1usize << (n * (n - 1) / 2);
    let perms: Vec<Vec<usize>> = (0..n).permutations(n).collect();
    let mut orbit = vec![usize::MAX; total];
    let mut next = 0;
    for start in 0..total {
        if orbit[start] != usize::MAX {
            continue;
        }
        orbit[start] = next;
        let mut queue = VecDeque::from([start]);
        while let Some(m) = queue.pop_front() {
            let g = QuadGraph::from_mask(n, m as u64).unwrap();
            let neighbours = (0..n)
                .map(|v| g.mutate(v).unwrap())
                .chain(perms.iter().map(|p| g.permute(p).unwrap()));
            for h in neighbours {
                let k = h.mask() as usize;
                if orbit[k] == usize::MAX {
                    orbit[k] = next;
                    queue.push_back(k);
                }
            }
        }
        next += 1;
    }
    orbit
}

#[test]
fn search_and_union_find_give_the_same_partition() {
    for n in 1..=6 {
        let by_search = orbits_by_search(n);
        let c = classify(n).unwrap();
        let count = by_search.iter().max().unwrap() + 1;
        assert_eq!(count, c.len(), "n={n}");
        // the two labelings are related by a bijection
        let mut map: HashMap<usize, usize> = HashMap::new();
        for (m, &o) in by_search.iter().enumerate() {
            let k = c.class_of_mask(m as u64);
            assert_eq!(*map.entry(o).or_insert(k), k, "n={n} mask {m}");
        }
        let mut sizes = vec![0u64; count];
        for &o in &by_search {
            sizes[map[&o]] += 1;
        }
        for (k, class) in c.classes().iter().enumerate() {
            assert_eq!(class.size, sizes[k], "n={n} class {k}");
        }
    }
}

#[test]
fn representatives_are_minimal_in_their_class() {
    for n in 1..=6 {
        let c = classify(n).unwrap();
        let mut best: Vec<Option<QuadGraph>> = vec![None; c.len()];
        for m in 0..1u64 << (n * (n - 1) / 2) {
            let g = QuadGraph::from_mask(n, m).unwrap();
            let k = c.class_of_mask(m);
            let better = match &best[k] {
                None => true,
                Some(b) => (g.edge_count(), g.edge_key()) < (b.edge_count(), b.edge_key()),
            };
            if better {
                best[k] = Some(g);
            }
        }
        for (k, class) in c.classes().iter().enumerate() {
            assert_eq!(Some(&class.representative), best[k].as_ref(), "n={n}");
        }
        let order: Vec<_> = c
            .classes()
            .iter()
            .map(|x| (x.representative.edge_count(), x.representative.edge_key()))
            .collect();
        assert!(order.windows(2).all(|w| w[0] < w[1]));
    }
}

#[test]
fn point_scheme_key_separates_classes() {
    for n in 1..=6 {
        let c = classify(n).unwrap();
        let keys: Vec<_> = c
            .classes()
            .iter()
            .map(|x| pointscheme::invariant(&x.representative.to_sign_system()).unwrap())
            .collect();
        assert_eq!(keys.iter().unique().count(), keys.len(), "n={n}");
    }
}

#[test]
fn larger_counts() {
    assert_eq!(classify(7).unwrap().len(), 54);
    assert_eq!(classify(7).unwrap().total_graphs(), 1 << 21);
}
