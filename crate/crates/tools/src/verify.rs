//! The property battery behind `qfz verify`: every structural claim about
//! quasi-flat zones, saliency maps and minimum spanning trees, checked on
//! one weighted graph.

use std::fmt;

use qfz_core::oracle::{self, MAX_ENUMERATION_VERTICES, MAX_NAIVE_VERTICES};
use qfz_core::{
    check_mst_via_qfz, hierarchy_equal, kruskal, psi, qfz, saliency_of_hierarchy, Graph, Result,
    SpanningSubgraph, WeightMap,
};

/// Above this many positive-saliency edges the per-edge decrement check is
/// run on an evenly spaced sample (each probe rebuilds the hierarchy).
pub const MAX_DECREMENT_PROBES: usize = 2000;
/// Number of truncated maps `min(w, t)` compared against `w` for
/// monotonicity.
const MONOTONE_THRESHOLDS: usize = 8;
/// Exhaustive MST comparison is skipped above this many spanning trees.
const MAX_ENUMERATED_TREES: usize = 20_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Debug, Clone)]
pub struct Check {
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        };
        write!(f, "{tag} {}: {}", self.name, self.detail)
    }
}

fn check(name: &'static str, ok: bool, detail: impl Into<String>) -> Check {
    Check { name, status: if ok { Status::Pass } else { Status::Fail }, detail: detail.into() }
}

fn skip(name: &'static str, detail: impl Into<String>) -> Check {
    Check { name, status: Status::Skip, detail: detail.into() }
}

/// Runs every check. Errors only on inputs the library itself rejects
/// (e.g. a weight map of the wrong length).
pub fn run(graph: &Graph, weights: &WeightMap) -> Result<Vec<Check>> {
    let n = graph.vertex_count();
    let m = graph.edge_count();
    let mut out = Vec::new();

    let hierarchy = qfz(graph, weights, None)?;
    let sal = psi(graph, weights)?;
    let sal_map = sal.to_weight_map(graph)?;
    let sal_hierarchy = qfz(graph, &sal_map, None)?;

    out.push(check(
        "qfz-of-saliency",
        hierarchy_equal(&sal_hierarchy, &hierarchy)?,
        "QFZ(psi(w)) equals QFZ(w)",
    ));
    out.push(check(
        "saliency-of-qfz",
        saliency_of_hierarchy(&sal_hierarchy, graph)? == sal,
        "saliency(QFZ(psi(w))) equals psi(w)",
    ));
    out.push(check("psi-idempotent", psi(graph, &sal_map)? == sal, "psi(psi(w)) equals psi(w)"));

    let w = weights.ranks();
    let s = sal.values();
    out.push(check(
        "psi-anti-extensive",
        s.iter().zip(w).all(|(a, b)| a <= b),
        "psi(w) <= w on every edge",
    ));

    let mut distinct: Vec<u32> = w.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    let step = distinct.len().div_ceil(MONOTONE_THRESHOLDS).max(1);
    let mut monotone = true;
    let mut pairs = 0;
    for &t in distinct.iter().step_by(step) {
        let lower = WeightMap::from_ranks(graph, w.iter().map(|&r| r.min(t)).collect())?;
        let lower_sal = psi(graph, &lower)?;
        monotone &= lower_sal.values().iter().zip(s).all(|(a, b)| a <= b);
        pairs += 1;
    }
    // psi(w) <= w is itself a comparable pair
    let twice = psi(graph, &sal_map)?;
    monotone &= twice.values().iter().zip(s).all(|(a, b)| a <= b);
    out.push(check("psi-increasing", monotone, format!("w' <= w implies psi(w') <= psi(w) on {} pairs", pairs + 1)));

    let positive: Vec<usize> = (0..m).filter(|&e| s[e] > 0).collect();
    let stride = positive.len().div_ceil(MAX_DECREMENT_PROBES).max(1);
    let mut probed = 0;
    let mut minimal = true;
    for &e in positive.iter().step_by(stride) {
        let mut lowered = s.to_vec();
        lowered[e] -= 1;
        let lowered = WeightMap::from_ranks(graph, lowered)?;
        minimal &= !hierarchy_equal(&qfz(graph, &lowered, None)?, &hierarchy)?;
        probed += 1;
    }
    out.push(check(
        "saliency-minimal",
        minimal,
        format!("lowering any positive saliency value changes the hierarchy ({probed} of {} edges probed)", positive.len()),
    ));

    if n <= MAX_NAIVE_VERTICES {
        let partitions = oracle::qfz_naive(graph, weights)?;
        let same_partitions = partitions.iter().enumerate().all(|(l, p)| hierarchy.partition_at(l).as_ref() == Ok(p));
        let same_saliency = oracle::saliency_naive(graph, &partitions)? == s;
        let probe = oracle::minimality_probe(graph, &sal_map)?;
        out.push(check(
            "naive-agreement",
            same_partitions && same_saliency && probe.is_empty(),
            "hierarchy, saliency and minimality match the brute-force definitions",
        ));
    } else {
        out.push(skip("naive-agreement", format!("more than {MAX_NAIVE_VERTICES} vertices")));
    }

    let mst = kruskal(graph, weights)?;
    out.push(check(
        "mst-preserves-qfz",
        hierarchy_equal(&qfz(graph, weights, Some(mst.edges()))?, &hierarchy)?,
        "QFZ(mst) equals QFZ(G)",
    ));
    out.push(check(
        "mst-minimal-subgraph",
        mst.is_spanning_tree() && check_mst_via_qfz(graph, weights, &mst)?,
        "the MST keeps the hierarchy and no edge can be dropped",
    ));

    if n <= MAX_ENUMERATION_VERTICES {
        let trees = oracle::spanning_tree_enumerate(graph, weights)?;
        if trees.len() <= MAX_ENUMERATED_TREES {
            let best = trees.iter().map(|t| t.1).fold(f64::INFINITY, f64::min);
            let tol = 1e-9 * best.abs().max(1.0);
            let mut agree = true;
            for (edges, total) in &trees {
                let candidate = SpanningSubgraph::new(graph, edges.clone())?;
                agree &= check_mst_via_qfz(graph, weights, &candidate)? == (*total <= best + tol);
            }
            out.push(check(
                "mst-characterization",
                agree,
                format!("hierarchy test matches minimum weight on all {} spanning trees", trees.len()),
            ));
        } else {
            out.push(skip("mst-characterization", format!("{} spanning trees", trees.len())));
        }
    } else {
        out.push(skip("mst-characterization", format!("more than {MAX_ENUMERATION_VERTICES} vertices")));
    }
    Ok(out)
}
