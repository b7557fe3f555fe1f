//! Iterative-deepening search for the smallest distant-edge set.
//!
//! The solvers take a certificate as input; this module finds one. For
//! k = 0, 1, 2, … it tries every k-subset of edges (apex side first), then
//! of non-edges, in lexicographic order, testing backend membership after
//! the edits. The depth is capped by min{m-4, m̄-4}: a graph within four
//! edges of edgeless or complete is already comparability, and the same
//! margin bounds how far any graph can sit from the class.

use crate::combo::{first_combination, next_combination};
use crate::graph::Graph;
use crate::solver::{ClassBackend, DistantEdgeSet, EditMode};

/// Subsets are membership-tested in fixed-size batches; within a batch the
/// tests may run concurrently, but the reported certificate is always the
/// first in enumeration order, and every batch is evaluated in full so the
/// test counter does not depend on thread count.
const BATCH: usize = 1024;

/// Which sides the search attempted before returning.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SidesExplored {
    pub apex: bool,
    pub add: bool,
}

/// A successful distance computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceReport {
    /// The transitive-edge-distance: size of the smallest certificate.
    pub xi: usize,
    /// Lexicographically first certificate at that size, apex side first.
    pub witness: DistantEdgeSet,
    pub side_explored: SidesExplored,
    /// Backend membership tests performed.
    pub memberships_tested: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DistanceOutcome {
    Found(DistanceReport),
    /// No certificate within the depth budget.
    ExceedsKMax { k_max: usize, memberships_tested: u64 },
}

impl DistanceOutcome {
    pub fn report(&self) -> Option<&DistanceReport> {
        match self {
            DistanceOutcome::Found(r) => Some(r),
            DistanceOutcome::ExceedsKMax { .. } => None,
        }
    }
}

fn edited(g: &Graph, mode: EditMode, pool: &[(usize, usize)], subset: &[usize]) -> Graph {
    let mut out = g.clone();
    for &i in subset {
        let (u, v) = pool[i];
        out = match mode {
            EditMode::Apex => out.delete_edge(u, v),
            EditMode::Add => out.add_edge(u, v),
        }
        .expect("pool pairs are valid edits");
    }
    out
}

/// Position of the first certifying subset in the batch, if any. The whole
/// batch is always tested.
fn test_batch(
    g: &Graph,
    backend: &dyn ClassBackend,
    mode: EditMode,
    pool: &[(usize, usize)],
    batch: &[Vec<usize>],
) -> Option<usize> {
    #[cfg(feature = "parallel")]
    let hits: Vec<bool> = {
        use rayon::prelude::*;
        batch
            .par_iter()
            .map(|subset| backend.contains(&edited(g, mode, pool, subset)))
            .collect()
    };
    #[cfg(not(feature = "parallel"))]
    let hits: Vec<bool> = batch
        .iter()
        .map(|subset| backend.contains(&edited(g, mode, pool, subset)))
        .collect();
    hits.iter().position(|&h| h)
}

/// Smallest certificate within k_max, or ExceedsKMax. Depth additionally
/// capped by min{m-4, m̄-4} (floored at zero); ties between sides go to
/// apex, within a side to the lexicographically first subset.
pub fn find_distance(g: &Graph, backend: &dyn ClassBackend, k_max: usize) -> DistanceOutcome {
    let edges = g.edges();
    let non_edges = g.non_edges();
    let cap = k_max
        .min(edges.len().saturating_sub(4))
        .min(non_edges.len().saturating_sub(4));
    let mut memberships = 0u64;
    let mut side = SidesExplored {
        apex: false,
        add: false,
    };
    for k in 0..=cap {
        for (mode, pool) in [(EditMode::Apex, &edges), (EditMode::Add, &non_edges)] {
            match mode {
                EditMode::Apex => side.apex = true,
                EditMode::Add => side.add = true,
            }
            let mut subset = Vec::new();
            let mut more = first_combination(&mut subset, pool.len(), k);
            while more {
                let mut batch = Vec::with_capacity(BATCH);
                while more && batch.len() < BATCH {
                    batch.push(subset.clone());
                    more = next_combination(&mut subset, pool.len());
                }
                memberships += batch.len() as u64;
                if let Some(pos) = test_batch(g, backend, mode, pool, &batch) {
                    let pairs: Vec<(usize, usize)> =
                        batch[pos].iter().map(|&i| pool[i]).collect();
                    let witness = DistantEdgeSet::new(mode, pairs)
                        .expect("pool pairs are distinct and loop-free");
                    return DistanceOutcome::Found(DistanceReport {
                        xi: k,
                        witness,
                        side_explored: side,
                        memberships_tested: memberships,
                    });
                }
            }
        }
    }
    DistanceOutcome::ExceedsKMax {
        k_max,
        memberships_tested: memberships,
    }
}

/// True iff the set's edits all apply cleanly and the edited graph is in
/// the backend's class. Malformed pairs (out of range, wrong edge state)
/// yield false rather than an error.
pub fn validate_set(g: &Graph, s: &DistantEdgeSet, backend: &dyn ClassBackend) -> bool {
    match s.apply(g) {
        Ok(edited) => backend.contains(&edited),
        Err(_) => false,
    }
}
