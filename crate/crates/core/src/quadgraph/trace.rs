use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::QuadGraph;

pub const DEFAULT_BUDGET: usize = 100_000;

/// Vertex arguments are 0-based and refer to the graph the step acts on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum TraceOp {
    TwoPoints { removed: usize },
    Knorrer { segment: (usize, usize) },
    Mutate { at: usize },
    RelativeMutate { target: usize, by: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub op: TraceOp,
    pub result: QuadGraph,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Terminal {
    /// One vertex (`N = 1`) or a single edge on two vertices (`N = 2`).
    Base {
        graph: QuadGraph,
        base_descriptor: u64,
    },
    Stuck {
        graph: QuadGraph,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionTrace {
    pub start: QuadGraph,
    pub steps: Vec<TraceStep>,
    /// Number of two-points steps.
    pub multiplicity_log2: u32,
    pub terminal: Terminal,
}

impl ReductionTrace {
    /// `2^a · N_base`, or `None` when stuck.
    pub fn descriptor(&self) -> Option<u64> {
        match self.terminal {
            Terminal::Base {
                base_descriptor, ..
            } => Some(base_descriptor << self.multiplicity_log2),
            Terminal::Stuck { .. } => None,
        }
    }

    pub fn is_stuck(&self) -> bool {
        matches!(self.terminal, Terminal::Stuck { .. })
    }
}

fn base_descriptor(g: &QuadGraph) -> Option<u64> {
    match (g.n(), g.edge_count()) {
        (1, _) => Some(1),
        (2, 1) => Some(2),
        _ => None,
    }
}

fn direct_reduction(g: &QuadGraph) -> Option<TraceStep> {
    if let Some(result) = g.two_points_reduce() {
        return Some(TraceStep {
            op: TraceOp::TwoPoints {
                removed: g.isolated_vertices()[0],
            },
            result,
        });
    }
    let segment = g.isolated_segment()?;
    let result = g.knorrer_reduce()?;
    Some(TraceStep {
        op: TraceOp::Knorrer { segment },
        result,
    })
}

fn moves(g: &QuadGraph) -> Vec<(TraceOp, QuadGraph)> {
    let n = g.n();
    let mut out: Vec<(TraceOp, QuadGraph)> = (0..n)
        .map(|v| (TraceOp::Mutate { at: v }, g.mutate(v).expect("in range")))
        .collect();
    for target in 0..n {
        for by in 0..n {
            if let Ok(h) = g.relative_mutate(target, by) {
                out.push((TraceOp::RelativeMutate { target, by }, h));
            }
        }
    }
    out
}

/// Breadth-first search from `g` under mutations and legal relative
/// mutations for a graph admitting a direct reduction or a base case.
/// Returns the path of moves (not including the reduction).
fn search(g: &QuadGraph, budget: usize) -> Option<Vec<TraceStep>> {
    let mut parent: HashMap<QuadGraph, Option<(QuadGraph, TraceOp)>> = HashMap::new();
    let mut queue = VecDeque::new();
    parent.insert(g.clone(), None);
    queue.push_back(g.clone());
    while let Some(cur) = queue.pop_front() {
        if &cur != g && (direct_reduction(&cur).is_some() || base_descriptor(&cur).is_some()) {
            let mut path = Vec::new();
            let mut at = cur;
            while let Some(Some((prev, op))) = parent.get(&at).cloned() {
                path.push(TraceStep { op, result: at });
                at = prev;
            }
            path.reverse();
            return Some(path);
        }
        for (op, next) in moves(&cur) {
            if parent.len() >= budget {
                return None;
            }
            if !parent.contains_key(&next) {
                parent.insert(next.clone(), Some((cur.clone(), op)));
                queue.push_back(next);
            }
        }
    }
    None
}

/// Reduces `g` to a base case: greedily by two-points and Knörrer
/// reductions, and by a bounded search over mutations and relative mutations
/// when neither applies.
pub fn reduce_to_base(g: &QuadGraph, budget: usize) -> ReductionTrace {
    let mut steps = Vec::new();
    let mut cur = g.clone();
    let mut a = 0u32;
    loop {
        if let Some(base_descriptor) = base_descriptor(&cur) {
            return ReductionTrace {
                start: g.clone(),
                steps,
                multiplicity_log2: a,
                terminal: Terminal::Base {
                    graph: cur,
                    base_descriptor,
                },
            };
        }
        if let Some(step) = direct_reduction(&cur) {
            if matches!(step.op, TraceOp::TwoPoints { .. }) {
                a += 1;
            }
            cur = step.result.clone();
            steps.push(step);
            continue;
        }
        match search(&cur, budget) {
            Some(path) => {
                cur = path.last().expect("nonempty path").result.clone();
                steps.extend(path);
            }
            None => {
                return ReductionTrace {
                    start: g.clone(),
                    steps,
                    multiplicity_log2: a,
                    terminal: Terminal::Stuck { graph: cur },
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> QuadGraph {
        s.parse().unwrap()
    }

    #[test]
    fn empty_four() {
        let t = reduce_to_base(&QuadGraph::empty(4).unwrap(), DEFAULT_BUDGET);
        assert_eq!(t.steps.len(), 3);
        assert_eq!(t.multiplicity_log2, 3);
        assert_eq!(t.descriptor(), Some(8));
    }

    #[test]
    fn single_edge_is_base() {
        let t = reduce_to_base(&g("n=2; edges=1-2"), DEFAULT_BUDGET);
        assert!(t.steps.is_empty());
        assert_eq!(t.descriptor(), Some(2));
    }

    #[test]
    fn six_vertex_path() {
        let t = reduce_to_base(&g("n=6; edges=1-2,2-3,3-4"), DEFAULT_BUDGET);
        assert_eq!(t.descriptor(), Some(2));
    }

    #[test]
    fn triangle_needs_a_mutation() {
        let t = reduce_to_base(&QuadGraph::complete(3).unwrap(), DEFAULT_BUDGET);
        assert!(matches!(t.steps[0].op, TraceOp::Mutate { .. }));
        assert_eq!(t.descriptor(), Some(1));
    }

    #[test]
    fn zero_budget_sticks() {
        let t = reduce_to_base(&QuadGraph::complete(3).unwrap(), 0);
        assert!(t.is_stuck());
        assert_eq!(t.descriptor(), None);
    }
}
