//! Seeded instance generators: random comparability graphs, edit-distance
//! test instances with known certificates, and chain-like graphs for
//! timing. Everything is deterministic given the caller's RNG state.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::comparability::TransitiveOrientation;
use crate::error::Error;
use crate::graph::{iter_bits, Graph, Weight};
use crate::solver::{DistantEdgeSet, EditMode};

/// Random comparability graph: a random vertex ranking, independent arc
/// inclusion between ranked pairs with the given probability, then
/// transitive closure. Returns the underlying graph (unit weights) and the
/// closed orientation that proves membership. Density must lie in [0, 1].
pub fn random_comparability(
    n: usize,
    density: f64,
    rng: &mut impl Rng,
) -> (Graph, TransitiveOrientation) {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let words = n.div_ceil(64);
    let mut succ = vec![0u64; n * words];
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                succ[i * words + j / 64] |= 1 << (j % 64);
            }
        }
    }
    // close from the top of the ranking down
    for i in (0..n).rev() {
        let direct: Vec<usize> = iter_bits(&succ[i * words..(i + 1) * words]).collect();
        for j in direct {
            for w in 0..words {
                let bits = succ[j * words + w];
                succ[i * words + w] |= bits;
            }
        }
    }
    let mut edges = Vec::new();
    let mut arcs = Vec::new();
    for i in 0..n {
        for j in iter_bits(&succ[i * words..(i + 1) * words]) {
            let (u, v) = (perm[i], perm[j]);
            edges.push((u.min(v), u.max(v)));
            arcs.push((u, v));
        }
    }
    let g = Graph::new(n, &edges, None).expect("closure emits distinct in-range pairs");
    (g, TransitiveOrientation::new(n, arcs))
}

/// Clone of g with fresh uniform weights in lo..=hi.
pub fn random_weights(g: &Graph, lo: Weight, hi: Weight, rng: &mut impl Rng) -> Graph {
    g.reweighted((0..g.n()).map(|_| rng.gen_range(lo..=hi)).collect())
        .expect("one weight per vertex")
}

fn sample_pairs(
    pool: &[(usize, usize)],
    k: usize,
    rng: &mut impl Rng,
) -> Vec<(usize, usize)> {
    let mut idx: Vec<usize> = (0..pool.len()).collect();
    idx.shuffle(rng);
    let mut take: Vec<(usize, usize)> = idx[..k].iter().map(|&i| pool[i]).collect();
    take.sort_unstable();
    take
}

fn edited_instance(
    n: usize,
    density: f64,
    k: usize,
    delete_side: bool,
    rng: &mut impl Rng,
) -> Result<(Graph, DistantEdgeSet), Error> {
    // resample the base until the chosen side has k candidates
    for _ in 0..20 {
        let (base, _) = random_comparability(n, density, rng);
        let pool = if delete_side {
            base.edges()
        } else {
            base.non_edges()
        };
        if pool.len() < k {
            continue;
        }
        let pairs = sample_pairs(&pool, k, rng);
        let mut g = base;
        for &(u, v) in &pairs {
            g = if delete_side {
                g.delete_edge(u, v)?
            } else {
                g.add_edge(u, v)?
            };
        }
        let mode = if delete_side {
            EditMode::Add
        } else {
            EditMode::Apex
        };
        return Ok((g, DistantEdgeSet::new(mode, pairs)?));
    }
    Err(Error::TooLarge {
        what: "edit count",
        actual: k,
        limit: n * n.saturating_sub(1) / 2,
    })
}

/// Deletes k random edges of a random comparability base; the certificate
/// adds them back (Add mode).
pub fn deletion_instance(
    n: usize,
    density: f64,
    k: usize,
    rng: &mut impl Rng,
) -> Result<(Graph, DistantEdgeSet), Error> {
    edited_instance(n, density, k, true, rng)
}

/// Adds k random non-edges to a random comparability base; the certificate
/// deletes them (Apex mode).
pub fn addition_instance(
    n: usize,
    density: f64,
    k: usize,
    rng: &mut impl Rng,
) -> Result<(Graph, DistantEdgeSet), Error> {
    edited_instance(n, density, k, false, rng)
}

/// A graph k edits from comparability together with its certificate: flips
/// a coin between deletion_instance and addition_instance, falling back to
/// the other direction when the chosen side cannot supply k candidates.
pub fn flipped_instance(
    n: usize,
    density: f64,
    k: usize,
    rng: &mut impl Rng,
) -> Result<(Graph, DistantEdgeSet), Error> {
    let delete_side = rng.gen_bool(0.5);
    edited_instance(n, density, k, delete_side, rng)
        .or_else(|_| edited_instance(n, density, k, !delete_side, rng))
}

/// Deletes k pairwise endpoint-disjoint edges from a random comparability
/// base. Disjoint pairs make every branch retire exactly one pair, so the
/// clique solver performs exactly 2^k leaf calls on these instances.
/// Retries a few bases before giving up on dense-enough inputs.
pub fn matching_deletion_instance(
    n: usize,
    density: f64,
    k: usize,
    rng: &mut impl Rng,
) -> Result<(Graph, DistantEdgeSet), Error> {
    for _ in 0..20 {
        let (base, _) = random_comparability(n, density, rng);
        let mut edges = base.edges();
        edges.shuffle(rng);
        let mut used = vec![false; n];
        let mut pairs = Vec::with_capacity(k);
        for (u, v) in edges {
            if pairs.len() == k {
                break;
            }
            if !used[u] && !used[v] {
                used[u] = true;
                used[v] = true;
                pairs.push((u, v));
            }
        }
        if pairs.len() < k {
            continue;
        }
        pairs.sort_unstable();
        let mut g = base;
        for &(u, v) in &pairs {
            g = g.delete_edge(u, v)?;
        }
        return Ok((g, DistantEdgeSet::new(EditMode::Add, pairs)?));
    }
    Err(Error::TooLarge {
        what: "disjoint deletion count",
        actual: k,
        limit: n / 2,
    })
}

/// Disjoint cliques of size s covering n vertices (the last may be
/// smaller), oriented by ascending id within each clique: the comparability
/// graph of a disjoint union of chains. Unit weights.
pub fn clique_chain(n: usize, s: usize) -> (Graph, TransitiveOrientation) {
    assert!(s > 0, "clique size must be positive");
    let mut edges = Vec::new();
    for start in (0..n).step_by(s) {
        let end = (start + s).min(n);
        for u in start..end {
            for v in u + 1..end {
                edges.push((u, v));
            }
        }
    }
    let g = Graph::new(n, &edges, None).expect("clique blocks emit distinct in-range pairs");
    let arcs = g.edges();
    (g, TransitiveOrientation::new(n, arcs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comparability::{
        recognize_and_orient, verify_orientation, wmc_comparability, ComparabilityBackend,
    };
    use crate::distance::{find_distance, validate_set, DistanceOutcome};
    use crate::solver::{wmc_k, ClassBackend};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_graphs_are_comparability() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for n in [0, 1, 5, 12, 30] {
            for density in [0.1, 0.4, 0.8] {
                let (g, orientation) = random_comparability(n, density, &mut rng);
                assert!(verify_orientation(&g, &orientation));
                assert!(recognize_and_orient(&g).is_some());
            }
        }
    }

    #[test]
    fn density_extremes() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let (empty, _) = random_comparability(6, 0.0, &mut rng);
        assert_eq!(empty.m(), 0);
        let (complete, _) = random_comparability(6, 1.0, &mut rng);
        assert_eq!(complete.m(), 15);
    }

    #[test]
    fn same_seed_same_graph() {
        let mut a = ChaCha8Rng::seed_from_u64(43);
        let mut b = ChaCha8Rng::seed_from_u64(43);
        let (ga, _) = random_comparability(10, 0.5, &mut a);
        let (gb, _) = random_comparability(10, 0.5, &mut b);
        assert_eq!(ga.to_text(), gb.to_text());
    }

    #[test]
    fn flipped_instances_carry_valid_certificates() {
        let mut rng = ChaCha8Rng::seed_from_u64(44);
        let backend = ComparabilityBackend::new();
        for _ in 0..30 {
            let k = rng.gen_range(0..=3);
            let (g, set) = flipped_instance(7, 0.5, k, &mut rng).unwrap();
            assert_eq!(set.k(), k);
            assert!(validate_set(&g, &set, &backend));
            match find_distance(&g, &backend, 8) {
                DistanceOutcome::Found(r) => assert!(r.xi <= k),
                other => panic!("distance search failed: {other:?}"),
            }
        }
    }

    #[test]
    fn flip_count_larger_than_both_pools_errors() {
        let mut rng = ChaCha8Rng::seed_from_u64(45);
        assert!(matches!(
            flipped_instance(3, 0.5, 4, &mut rng),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn matching_deletions_cost_exactly_two_to_the_k() {
        let mut rng = ChaCha8Rng::seed_from_u64(46);
        let backend = ComparabilityBackend::new();
        let (g, set) = matching_deletion_instance(14, 0.6, 3, &mut rng).unwrap();
        let mut seen = vec![false; 14];
        for &(u, v) in set.pairs() {
            assert!(!seen[u] && !seen[v], "pairs share an endpoint");
            seen[u] = true;
            seen[v] = true;
        }
        let (_, stats) = wmc_k(&g, &set, &backend).unwrap();
        assert_eq!(stats.leaf_calls, 8);
    }

    #[test]
    fn clique_chains_solve_to_one_clique() {
        let (g, orientation) = clique_chain(20, 4);
        assert_eq!(g.m(), 5 * 6);
        assert!(verify_orientation(&g, &orientation));
        let s = wmc_comparability(&g, &orientation);
        assert_eq!(s.weight, 4);
        let backend = ComparabilityBackend::new();
        assert!(backend.contains(&g));
        // ragged final block: {0,1,2}, {3,4,5}, {6} alone
        let (h, o) = clique_chain(7, 3);
        assert_eq!(h.m(), 3 + 3);
        assert!(verify_orientation(&h, &o));
    }
}
