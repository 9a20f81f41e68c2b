//! Per-graph analysis, classification reports and the exhaustive scan of
//! the `ℓ`-band pattern.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::clifford::{self, CliffordStructure};
use crate::error::{Error, Result};
use crate::pointscheme::{self, ell_fast};
use crate::quadgraph::{classify, reduce_to_base, Classification, QuadGraph, ReductionTrace};
use crate::rank::{self, HighRank, RankBounds};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Standard numbering of mutation classes for `n = 4, 5, 6`: entry `k − 1` is
/// a representative of class `(k)`.
pub fn reference_representatives(n: usize) -> Option<Vec<QuadGraph>> {
    let lists: &[&str] = match n {
        4 => &["", "1-2", "1-2,3-4"],
        5 => &[
            "",
            "1-2,2-3",
            "1-2,2-3,3-4",
            "1-2",
            "1-2,3-4",
            "1-2,2-3,4-5",
            "1-2,2-3,3-1,4-5",
        ],
        6 => &[
            "",
            "1-2,2-3",
            "1-2,2-3,3-1",
            "1-2,2-3,3-4",
            "1-2,2-3,3-4,4-1",
            "1-2,2-3,3-4,4-5",
            "1-2,2-3,3-4,4-5,5-1",
            "1-2,2-3,3-1,4-5,5-6",
            "1-2,2-3,3-1,4-5,5-6,6-4",
            "1-2",
            "1-2,3-4",
            "1-2,2-3,4-5",
            "1-2,3-4,5-6",
            "1-2,2-3,3-1,4-5",
            "1-2,2-3,3-4,5-6",
            "1-2,2-3,3-4,4-1,5-6",
        ],
        _ => return None,
    };
    Some(
        lists
            .iter()
            .map(|e| {
                format!("n={n}; edges={e}")
                    .parse()
                    .expect("well-formed table")
            })
            .collect(),
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointSchemeSummary {
    pub components: Vec<String>,
    pub ell: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphAnalysis {
    pub graph: QuadGraph,
    pub clifford: CliffordStructure,
    pub descriptor: u64,
    pub point_scheme: PointSchemeSummary,
    pub rank: RankBounds,
    pub high_rank: HighRank,
    /// `None` when the oracle is out of range.
    pub smooth: Option<bool>,
    pub trace: ReductionTrace,
}

pub fn analyze(g: &QuadGraph, budget: usize) -> Result<GraphAnalysis> {
    let eps = g.to_sign_system();
    let ps = pointscheme::components(&eps)?;
    let smooth = match rank::is_smooth(&eps) {
        Ok(s) => Some(s),
        Err(Error::UnsupportedSize { .. }) => None,
        Err(e) => return Err(e),
    };
    let clifford = clifford::structure(&eps);
    Ok(GraphAnalysis {
        graph: g.clone(),
        descriptor: clifford.components,
        clifford,
        point_scheme: PointSchemeSummary {
            components: ps.component_lines(),
            ell: ps.ell,
        },
        rank: rank::rank_bounds(&eps),
        high_rank: rank::high_rank(&eps),
        smooth,
        trace: reduce_to_base(g, budget),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassRow {
    /// 1-based position in canonical order.
    pub id: usize,
    /// Standard class number, where a numbering exists.
    pub label: Option<usize>,
    pub size: u64,
    pub analysis: GraphAnalysis,
}

impl ClassRow {
    /// Descriptor from the Clifford structure agrees with the reduction trace
    /// whenever the trace terminates.
    pub fn consistent(&self) -> bool {
        self.analysis
            .trace
            .descriptor()
            .is_none_or(|d| d == self.analysis.descriptor)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub tool_version: String,
    pub n: usize,
    pub total_graphs: u64,
    pub class_count: usize,
    pub classes: Vec<ClassRow>,
}

fn labels(c: &Classification) -> Result<Vec<Option<usize>>> {
    let mut out = vec![None; c.len()];
    if let Some(refs) = reference_representatives(c.n()) {
        for (k, g) in refs.iter().enumerate() {
            out[c.class_of(g)?] = Some(k + 1);
        }
    }
    Ok(out)
}

pub fn classification_report(n: usize, budget: usize) -> Result<ClassificationReport> {
    let c = classify(n)?;
    let labels = labels(&c)?;
    let classes = c
        .classes()
        .par_iter()
        .enumerate()
        .map(|(k, class)| {
            Ok(ClassRow {
                id: k + 1,
                label: labels[k],
                size: class.size,
                analysis: analyze(&class.representative, budget)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ClassificationReport {
        tool_version: TOOL_VERSION.to_string(),
        n,
        total_graphs: c.total_graphs(),
        class_count: c.len(),
        classes,
    })
}

fn k_power(n: u64) -> String {
    if n == 1 {
        "k".into()
    } else {
        format!("k^{n}")
    }
}

fn class_name(row: &ClassRow) -> String {
    match row.label {
        Some(l) => format!("({l})"),
        None => format!("#{}", row.id),
    }
}

impl ClassificationReport {
    pub fn sizes_total(&self) -> u64 {
        self.classes.iter().map(|c| c.size).sum()
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "n={}: {} mutation classes over {} graphs",
            self.n, self.class_count, self.total_graphs
        );
        let _ = writeln!(
            out,
            "{:>3} {:>5} {:>8} {:>4} {:>10} {:>4} {:>6} {:>7} {:>6}  representative",
            "id", "class", "size", "N", "C(A)", "ell", "rank", "high", "trace"
        );
        for row in &self.classes {
            let a = &row.analysis;
            let shape = format!("{}xM{}", a.clifford.components, a.clifford.block);
            let rank = format!("[{},{}]", a.rank.lo, a.rank.hi);
            let high = match a.high_rank {
                HighRank::Yes => "yes",
                HighRank::No => "no",
                HighRank::Unknown => "?",
            };
            let trace = a
                .trace
                .descriptor()
                .map_or("stuck".to_string(), |d| d.to_string());
            let _ = writeln!(
                out,
                "{:>3} {:>5} {:>8} {:>4} {:>10} {:>4} {:>6} {:>7} {:>6}  {}",
                row.id,
                row.label.map_or("-".to_string(), |l| format!("({l})")),
                row.size,
                a.descriptor,
                shape,
                a.point_scheme.ell,
                rank,
                high,
                trace,
                a.graph
            );
        }
        let _ = writeln!(out, "stable categories D^b(mod k^N):");
        let mut groups: Vec<(u64, Vec<&ClassRow>)> = Vec::new();
        for row in &self.classes {
            match groups
                .iter_mut()
                .find(|(d, _)| *d == row.analysis.descriptor)
            {
                Some((_, rows)) => rows.push(row),
                None => groups.push((row.analysis.descriptor, vec![row])),
            }
        }
        groups.sort_by_key(|g| std::cmp::Reverse(g.0));
        for (d, mut rows) in groups {
            rows.sort_by_key(|r| (r.label, r.id));
            let names: Vec<String> = rows.iter().map(|r| class_name(r)).collect();
            let _ = writeln!(out, "  {:>6}: {}", k_power(d), names.join(", "));
        }
        out
    }
}

/// Descriptor predicted from `ℓ` by the band pattern: for odd `n`,
/// `ℓ ≤ C(2k+1, 2)` gives `4^k`; for even `n`, `ℓ ≤ C(2k+2, 2)` gives `2·4^k`,
/// with `k` minimal.
pub fn band_descriptor(n: usize, ell: usize) -> u64 {
    let binom2 = |m: usize| m * m.saturating_sub(1) / 2;
    let (first, base) = if n % 2 == 1 { (1, 1) } else { (2, 2) };
    let mut k = 0;
    while ell > binom2(first + 2 * k) {
        k += 1;
    }
    base << (2 * k)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRow {
    pub id: usize,
    pub label: Option<usize>,
    pub representative: QuadGraph,
    pub ell: usize,
    pub descriptor: u64,
    pub predicted: u64,
}

impl ScanRow {
    pub fn ok(&self) -> bool {
        self.descriptor == self.predicted
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub tool_version: String,
    pub n: usize,
    pub graphs_scanned: u64,
    /// Labeled graphs whose descriptor differs from the band prediction.
    pub graph_violations: u64,
    pub classes: Vec<ScanRow>,
    pub violations: Vec<ScanRow>,
}

/// `(ℓ, N)` of the graph with edge bitmask `mask`.
fn ell_and_descriptor(n: usize, mask: u64) -> (usize, u64) {
    let eps = QuadGraph::from_mask(n, mask)
        .expect("n <= 8")
        .to_sign_system();
    (ell_fast(&eps), clifford::descriptor(&eps))
}

/// Number of labeled graphs on `n` vertices violating the band pattern.
pub fn band_violations_exhaustive(n: usize) -> Result<u64> {
    if !(1..=8).contains(&n) {
        return Err(Error::UnsupportedSize {
            got: n,
            supported: "1..=8",
        });
    }
    let total = 1u64 << (n * (n - 1) / 2);
    Ok((0..total)
        .into_par_iter()
        .filter(|&m| {
            let (ell, d) = ell_and_descriptor(n, m);
            band_descriptor(n, ell) != d
        })
        .count() as u64)
}

pub fn conjecture_scan(n: usize) -> Result<ScanReport> {
    if !(1..=7).contains(&n) {
        return Err(Error::UnsupportedSize {
            got: n,
            supported: "1..=7",
        });
    }
    let c = classify(n)?;
    let labels = labels(&c)?;
    let classes: Vec<ScanRow> = c
        .classes()
        .iter()
        .enumerate()
        .map(|(k, class)| {
            let (ell, descriptor) = ell_and_descriptor(n, class.representative.mask());
            ScanRow {
                id: k + 1,
                label: labels[k],
                representative: class.representative.clone(),
                ell,
                descriptor,
                predicted: band_descriptor(n, ell),
            }
        })
        .collect();
    let violations = classes.iter().filter(|r| !r.ok()).cloned().collect();
    Ok(ScanReport {
        tool_version: TOOL_VERSION.to_string(),
        n,
        graphs_scanned: c.total_graphs(),
        graph_violations: band_violations_exhaustive(n)?,
        classes,
        violations,
    })
}

impl ScanReport {
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "n={}: {} classes, {} graphs scanned, {} graph violations",
            self.n,
            self.classes.len(),
            self.graphs_scanned,
            self.graph_violations
        );
        let _ = writeln!(
            out,
            "{:>3} {:>5} {:>4} {:>4} {:>9}  representative",
            "id", "class", "ell", "N", "predicted"
        );
        for r in &self.classes {
            let _ = writeln!(
                out,
                "{:>3} {:>5} {:>4} {:>4} {:>9}  {}{}",
                r.id,
                r.label.map_or("-".to_string(), |l| format!("({l})")),
                r.ell,
                r.descriptor,
                r.predicted,
                r.representative,
                if r.ok() { "" } else { "  VIOLATION" }
            );
        }
        let _ = writeln!(out, "violations: {}", self.violations.len());
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bands() {
        assert_eq!(band_descriptor(5, 0), 1);
        assert_eq!(band_descriptor(5, 3), 4);
        assert_eq!(band_descriptor(5, 4), 16);
        assert_eq!(band_descriptor(6, 1), 2);
        assert_eq!(band_descriptor(6, 2), 8);
        assert_eq!(band_descriptor(6, 7), 32);
        assert_eq!(band_descriptor(7, 21), 64);
    }

    #[test]
    fn reference_tables_are_distinct_classes() {
        for n in 4..=6 {
            let c = classify(n).unwrap();
            let refs = reference_representatives(n).unwrap();
            assert_eq!(refs.len(), c.len());
            let mut ids: Vec<usize> = refs.iter().map(|g| c.class_of(g).unwrap()).collect();
            ids.sort_unstable();
            ids.dedup();
            assert_eq!(ids.len(), c.len());
        }
    }

    #[test]
    fn report_round_trip() {
        let r = classification_report(4, crate::quadgraph::DEFAULT_BUDGET).unwrap();
        assert_eq!(r.sizes_total(), 64);
        let text = serde_json::to_string(&r).unwrap();
        let back: ClassificationReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
        assert!(r.to_table().contains("k^8: (1)"));
    }
}
