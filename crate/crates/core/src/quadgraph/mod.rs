//! The graph `G_ε` of a sign system (edge ⟺ `εᵢⱼ = +1`) and the operations
//! on it that preserve, or predictably change, the invariants of `A_ε`.
//!
//! Vertices are 0-based in the API; the text format `n=6; edges=1-2,2-3` and
//! the JSON mirror are 1-based.

mod classify;
mod trace;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::skewpoly::SignSystem;

pub use classify::{classify, pair_index, Classification, MutationClass};
pub use trace::{reduce_to_base, ReductionTrace, Terminal, TraceOp, TraceStep, DEFAULT_BUDGET};

pub const MAX_VERTICES: usize = 32;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadGraph {
    n: usize,
    // adj[v] has bit u set iff {u, v} is an edge
    adj: Vec<u32>,
}

impl QuadGraph {
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_VERTICES {
            return Err(Error::UnsupportedSize {
                got: n,
                supported: "1..=32 vertices",
            });
        }
        Ok(Self { n, adj: vec![0; n] })
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Self::empty(n)?;
        let all = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
        for v in 0..n {
            g.adj[v] = all & !(1 << v);
        }
        Ok(g)
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for &(a, b) in edges {
            g.check_vertex(a)?;
            g.check_vertex(b)?;
            if a == b {
                return Err(Error::InvalidSignSystem(format!(
                    "loop at vertex {}",
                    a + 1
                )));
            }
            g.adj[a] |= 1 << b;
            g.adj[b] |= 1 << a;
        }
        Ok(g)
    }

    /// Inverse of [`QuadGraph::mask`].
    pub fn from_mask(n: usize, mask: u64) -> Result<Self> {
        let mut g = Self::empty(n)?;
        if n > 11 {
            return Err(Error::UnsupportedSize {
                got: n,
                supported: "bitmask form needs n <= 11",
            });
        }
        for j in 1..n {
            for i in 0..j {
                if mask >> pair_index(i, j) & 1 == 1 {
                    g.adj[i] |= 1 << j;
                    g.adj[j] |= 1 << i;
                }
            }
        }
        Ok(g)
    }

    /// Edge set as a bitmask, pair `{i < j}` at bit `j(j−1)/2 + i`.
    pub fn mask(&self) -> u64 {
        assert!(self.n <= 11, "bitmask form needs n <= 11");
        let mut m = 0u64;
        for (i, j) in self.edges() {
            m |= 1 << pair_index(i, j);
        }
        m
    }

    pub fn from_sign_system(eps: &SignSystem) -> Result<Self> {
        let n = eps.n();
        let mut g = Self::empty(n)?;
        for i in 0..n {
            for j in 0..n {
                if i != j && eps.eps(i, j) == 1 {
                    g.adj[i] |= 1 << j;
                }
            }
        }
        Ok(g)
    }

    pub fn to_sign_system(&self) -> SignSystem {
        SignSystem::from_edges(self.n, &self.edges()).expect("valid graph")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            })
        } else {
            Ok(())
        }
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.n && b < self.n && self.adj[a] >> b & 1 == 1
    }

    /// `εᵢⱼ` of the associated sign system (`+1` on the diagonal).
    pub fn sign(&self, a: usize, b: usize) -> i8 {
        if a == b || self.has_edge(a, b) {
            1
        } else {
            -1
        }
    }

    pub fn neighbors(&self, v: usize) -> u32 {
        self.adj[v]
    }

    pub fn degree(&self, v: usize) -> u32 {
        self.adj[v].count_ones()
    }

    /// Sorted `(i, j)` pairs with `i < j`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            let mut higher = self.adj[i] >> i >> 1;
            let mut j = i + 1;
            while higher != 0 {
                if higher & 1 == 1 {
                    out.push((i, j));
                }
                higher >>= 1;
                j += 1;
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj
            .iter()
            .map(|a| a.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    pub fn isolated_vertices(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.adj[v] == 0).collect()
    }

    /// `ε_ij ε_jk ε_ki`.
    pub fn triangle_sign(&self, i: usize, j: usize, k: usize) -> i8 {
        self.sign(i, j) * self.sign(j, k) * self.sign(k, i)
    }

    /// Mutation at `v`: complements every pair `{v, u}`, keeps the rest.
    pub fn mutate(&self, v: usize) -> Result<Self> {
        self.check_vertex(v)?;
        let mut g = self.clone();
        for u in (0..self.n).filter(|&u| u != v) {
            g.adj[u] ^= 1 << v;
            g.adj[v] ^= 1 << u;
        }
        Ok(g)
    }

    /// Relative mutation of `target` by `by`: the neighbourhood of `target`
    /// is replaced by its symmetric difference with that of `by`, keeping the
    /// pair `{target, by}` itself. Refused unless some vertex outside
    /// `{target, by}` is isolated.
    pub fn relative_mutate(&self, target: usize, by: usize) -> Result<Self> {
        self.check_relative(target, by)?;
        if !self
            .isolated_vertices()
            .iter()
            .any(|&i| i != target && i != by)
        {
            return Err(Error::NoIsolatedVertex { target, by });
        }
        Ok(self.relative_mutate_unchecked(target, by))
    }

    /// [`QuadGraph::relative_mutate`] without the isolated-vertex hypothesis.
    pub fn relative_mutate_forced(&self, target: usize, by: usize) -> Result<Self> {
        self.check_relative(target, by)?;
        Ok(self.relative_mutate_unchecked(target, by))
    }

    fn check_relative(&self, target: usize, by: usize) -> Result<()> {
        self.check_vertex(target)?;
        self.check_vertex(by)?;
        if target == by {
            return Err(Error::SameVertex);
        }
        Ok(())
    }

    fn relative_mutate_unchecked(&self, target: usize, by: usize) -> Self {
        let mut g = self.clone();
        let flip = self.adj[by] & !(1 << target);
        g.adj[target] ^= flip;
        for u in 0..self.n {
            if flip >> u & 1 == 1 {
                g.adj[u] ^= 1 << target;
            }
        }
        g
    }

    /// Full subgraph on `keep` (in the given order, renumbered from 0).
    pub fn induced(&self, keep: &[usize]) -> Result<Self> {
        for &v in keep {
            self.check_vertex(v)?;
        }
        let mut g = Self::empty(keep.len())?;
        for (a, &u) in keep.iter().enumerate() {
            for (b, &v) in keep.iter().enumerate() {
                if self.has_edge(u, v) {
                    g.adj[a] |= 1 << b;
                }
            }
        }
        Ok(g)
    }

    pub fn without(&self, removed: &[usize]) -> Result<Self> {
        let keep: Vec<usize> = (0..self.n).filter(|v| !removed.contains(v)).collect();
        self.induced(&keep)
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: perm.len(),
            });
        }
        let mut seen = 0u64;
        for &p in perm {
            self.check_vertex(p)?;
            seen |= 1 << p;
        }
        if seen.count_ones() as usize != self.n {
            return Err(Error::Parse("relabeling is not a permutation".into()));
        }
        let mut g = Self::empty(self.n)?;
        for (i, j) in self.edges() {
            g.adj[perm[i]] |= 1 << perm[j];
            g.adj[perm[j]] |= 1 << perm[i];
        }
        Ok(g)
    }

    /// An edge whose endpoints both have degree one.
    pub fn isolated_segment(&self) -> Option<(usize, usize)> {
        self.edges()
            .into_iter()
            .find(|&(i, j)| self.degree(i) == 1 && self.degree(j) == 1)
    }

    /// Removes the first isolated segment, if any, provided a vertex remains.
    pub fn knorrer_reduce(&self) -> Option<Self> {
        let (i, j) = self.isolated_segment()?;
        if self.n == 2 {
            return None;
        }
        self.without(&[i, j]).ok()
    }

    /// With at least two isolated vertices, removes the smallest one.
    pub fn two_points_reduce(&self) -> Option<Self> {
        let iso = self.isolated_vertices();
        if iso.len() < 2 {
            return None;
        }
        self.without(&iso[..1]).ok()
    }

    /// Sorted 1-based edge list, used for display and canonical ordering.
    pub fn edge_key(&self) -> Vec<(usize, usize)> {
        self.edges()
            .into_iter()
            .map(|(i, j)| (i + 1, j + 1))
            .collect()
    }
}

impl fmt::Display for QuadGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self
            .edge_key()
            .iter()
            .map(|(i, j)| format!("{i}-{j}"))
            .collect();
        write!(f, "n={}; edges={}", self.n, edges.join(","))
    }
}

impl fmt::Debug for QuadGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuadGraph({self})")
    }
}

impl FromStr for QuadGraph {
    type Err = Error;

    /// Parses `n=6; edges=1-2,2-3`. The edge list may be empty; whitespace is
    /// ignored.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Parse(format!("{msg} in graph '{s}'"));
        let s_clean: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut n = None;
        let mut edges = Vec::new();
        for part in s_clean.split(';').filter(|p| !p.is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| bad("expected key=value"))?;
            match key {
                "n" => {
                    n = Some(
                        value
                            .parse::<usize>()
                            .map_err(|_| bad("bad vertex count"))?,
                    )
                }
                "edges" => {
                    for e in value.split(',').filter(|e| !e.is_empty()) {
                        let (a, b) = e
                            .split_once('-')
                            .ok_or_else(|| bad("edge must look like i-j"))?;
                        let a: usize = a.parse().map_err(|_| bad("bad vertex"))?;
                        let b: usize = b.parse().map_err(|_| bad("bad vertex"))?;
                        if a == 0 || b == 0 {
                            return Err(bad("vertices are numbered from 1"));
                        }
                        edges.push((a - 1, b - 1));
                    }
                }
                _ => return Err(bad("unknown key")),
            }
        }
        let n = n.ok_or_else(|| bad("missing n"))?;
        QuadGraph::from_edges(n, &edges)
    }
}

#[derive(Serialize, Deserialize)]
struct QuadGraphJson {
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl Serialize for QuadGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        QuadGraphJson {
            n: self.n,
            edges: self.edge_key().into_iter().map(|(i, j)| [i, j]).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QuadGraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = QuadGraphJson::deserialize(d)?;
        if j.edges.iter().any(|e| e[0] == 0 || e[1] == 0) {
            return Err(serde::de::Error::custom("vertices are numbered from 1"));
        }
        let edges: Vec<(usize, usize)> = j.edges.iter().map(|e| (e[0] - 1, e[1] - 1)).collect();
        QuadGraph::from_edges(j.n, &edges).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> QuadGraph {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display() {
        let x = g("n=6; edges=1-2,2-3,3-4");
        assert_eq!(x.edges(), vec![(0, 1), (1, 2), (2, 3)]);
        assert_eq!(x.to_string(), "n=6; edges=1-2,2-3,3-4");
        assert_eq!(g("n=3; edges=").edge_count(), 0);
        assert_eq!(g("n=3").edge_count(), 0);
        assert!("n=3; edges=1-4".parse::<QuadGraph>().is_err());
        assert!("n=3; edges=1-1".parse::<QuadGraph>().is_err());
        assert!("edges=1-2".parse::<QuadGraph>().is_err());
        let json = serde_json::to_string(&x).unwrap();
        assert_eq!(json, r#"{"n":6,"edges":[[1,2],[2,3],[3,4]]}"#);
        assert_eq!(serde_json::from_str::<QuadGraph>(&json).unwrap(), x);
    }

    #[test]
    fn mutation_examples() {
        let e3 = QuadGraph::empty(3).unwrap();
        assert_eq!(e3.mutate(0).unwrap(), g("n=3; edges=1-2,1-3"));
        assert_eq!(
            e3.mutate(3),
            Err(Error::VertexOutOfRange { vertex: 3, n: 3 })
        );

        let path = g("n=5; edges=1-2,2-3,3-4");
        let mid = path.relative_mutate(0, 1).unwrap();
        assert_eq!(mid, g("n=5; edges=1-2,1-3,2-3,3-4"));
        assert_eq!(mid.mutate(2).unwrap(), g("n=5; edges=1-2,3-5"));

        let six = g("n=6; edges=1-2,1-5,2-3,3-4,4-5");
        assert_eq!(
            six.relative_mutate(0, 3).unwrap(),
            g("n=6; edges=1-2,1-3,2-3,3-4,4-5")
        );
    }

    #[test]
    fn relative_mutation_needs_isolated_third_vertex() {
        let c = QuadGraph::complete(4).unwrap();
        assert_eq!(
            c.relative_mutate(0, 1),
            Err(Error::NoIsolatedVertex { target: 0, by: 1 })
        );
        assert!(c.relative_mutate_forced(0, 1).is_ok());
        assert_eq!(c.relative_mutate(1, 1), Err(Error::SameVertex));
        // the isolated vertex must not be one of the two
        let x = g("n=3; edges=2-3");
        assert!(x.relative_mutate(0, 1).is_err());
        assert!(x.relative_mutate(1, 2).is_ok());
    }

    #[test]
    fn reductions() {
        let x = g("n=4; edges=1-2,3-4");
        assert_eq!(x.knorrer_reduce().unwrap(), g("n=2; edges=1-2"));
        let eight = g("n=6; edges=1-2,2-3,1-3,4-5,5-6");
        assert_eq!(eight.knorrer_reduce(), None);
        assert_eq!(QuadGraph::complete(5).unwrap().knorrer_reduce(), None);

        assert_eq!(
            QuadGraph::empty(4).unwrap().two_points_reduce().unwrap(),
            QuadGraph::empty(3).unwrap()
        );
        assert_eq!(
            g("n=5; edges=1-2,2-3").two_points_reduce().unwrap(),
            g("n=4; edges=1-2,2-3")
        );
        assert_eq!(g("n=3; edges=1-2,2-3").two_points_reduce(), None);
    }

    #[test]
    fn mask_round_trip() {
        for mask in 0..1u64 << 6 {
            let x = QuadGraph::from_mask(4, mask).unwrap();
            assert_eq!(x.mask(), mask);
            assert_eq!(QuadGraph::from_sign_system(&x.to_sign_system()).unwrap(), x);
        }
    }
}
