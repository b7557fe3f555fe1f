//! End-to-end agreement between the branching solvers, the distance
//! search, and the brute-force oracles on seeded random instances.

use edgedistant::comparability::ComparabilityBackend;
use edgedistant::distance::{find_distance, validate_set, DistanceOutcome};
use edgedistant::gen::{flipped_instance, random_weights};
use edgedistant::oracle::{brute_distance, brute_wmc, brute_wmis};
use edgedistant::solver::{wmc_k, wmis_k, ComplementBackend};
use edgedistant::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_graph(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, &edges, None).unwrap()
}

#[test]
fn solvers_match_the_oracle_on_generated_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(61);
    let backend = ComparabilityBackend::new();
    for n in 5..=8 {
        for k in 0..=4 {
            for _ in 0..25 {
                let (bare, set) = flipped_instance(n, 0.45, k, &mut rng).unwrap();
                let g = random_weights(&bare, 0, 100, &mut rng);
                let (clique, cs) = wmc_k(&g, &set, &backend).unwrap();
                assert_eq!(clique.weight, brute_wmc(&g).unwrap().weight);
                assert!(clique.validate(&g));
                assert!(cs.leaf_calls <= 1 << k);
                let (anti, is) = wmis_k(&g, &set, &backend).unwrap();
                assert_eq!(anti.weight, brute_wmis(&g).unwrap().weight);
                assert!(anti.validate(&g));
                assert!(is.leaf_calls <= 1 << k);
            }
        }
    }
}

#[test]
fn distance_witnesses_feed_the_solvers() {
    let mut rng = ChaCha8Rng::seed_from_u64(62);
    let backend = ComparabilityBackend::new();
    for _ in 0..150 {
        let n = rng.gen_range(1..=7);
        let bare = random_graph(n, 0.5, &mut rng);
        let g = random_weights(&bare, 0, 100, &mut rng);
        let report = match find_distance(&g, &backend, 8) {
            DistanceOutcome::Found(r) => r,
            other => panic!("every 7-vertex graph is within budget: {other:?}"),
        };
        assert_eq!(report.xi, brute_distance(&g, &backend).unwrap());
        assert!(validate_set(&g, &report.witness, &backend));
        let (clique, _) = wmc_k(&g, &report.witness, &backend).unwrap();
        assert_eq!(clique.weight, brute_wmc(&g).unwrap().weight);
        let (anti, _) = wmis_k(&g, &report.witness, &backend).unwrap();
        assert_eq!(anti.weight, brute_wmis(&g).unwrap().weight);
    }
}

#[test]
fn complement_duality_carries_certificates_across() {
    let mut rng = ChaCha8Rng::seed_from_u64(63);
    let direct = ComparabilityBackend::new();
    let mirrored = ComplementBackend(ComparabilityBackend::new());
    for _ in 0..60 {
        let k = rng.gen_range(0..=3);
        let (bare, set) = flipped_instance(7, 0.5, k, &mut rng).unwrap();
        let g = random_weights(&bare, 0, 100, &mut rng);
        let co = g.complement();
        let flipped = edgedistant::DistantEdgeSet::new(
            set.mode().flipped(),
            set.pairs().to_vec(),
        )
        .unwrap();
        let (clique, _) = wmc_k(&g, &set, &direct).unwrap();
        let (anti, _) = wmis_k(&co, &flipped, &mirrored).unwrap();
        assert_eq!(clique.weight, anti.weight);
        assert!(anti.validate(&co));
        let (anti2, _) = wmis_k(&g, &set, &direct).unwrap();
        let (clique2, _) = wmc_k(&co, &flipped, &mirrored).unwrap();
        assert_eq!(anti2.weight, clique2.weight);
    }
}

/// The six-cycle is bipartite, hence in class; its complement (two
/// triangles joined by a perfect matching) is not, so the edge distance is
/// not complement-symmetric and no such property is claimed elsewhere.
#[test]
fn distance_is_not_complement_symmetric() {
    let c6 = Graph::new(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)], None).unwrap();
    let prism = c6.complement();
    let backend = ComparabilityBackend::new();
    let xi_c6 = brute_distance(&c6, &backend).unwrap();
    let xi_prism = brute_distance(&prism, &backend).unwrap();
    assert_eq!(xi_c6, 0);
    assert!(xi_prism >= 1, "the prism admits no transitive orientation");
    assert_ne!(xi_c6, xi_prism);
    let report = match find_distance(&prism, &backend, 8) {
        DistanceOutcome::Found(r) => r,
        other => panic!("prism distance should be findable: {other:?}"),
    };
    assert_eq!(report.xi, xi_prism);
}

#[cfg(feature = "parallel")]
#[test]
fn thread_count_does_not_change_any_answer() {
    let mut rng = ChaCha8Rng::seed_from_u64(64);
    let backend = ComparabilityBackend::new();
    let (bare, set) = flipped_instance(20, 0.4, 6, &mut rng).unwrap();
    let g = random_weights(&bare, 0, 100, &mut rng);
    // subset enumeration blows up past desk scale, so measure it small
    let (small, _) = flipped_instance(8, 0.5, 2, &mut rng).unwrap();
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap();
        pool.install(|| {
            let clique = wmc_k(&g, &set, &backend).unwrap();
            let anti = wmis_k(&g, &set, &backend).unwrap();
            let dist = find_distance(&small, &backend, 8);
            (clique, anti, dist)
        })
    };
    let single = run(1);
    let several = run(8);
    assert_eq!(single, several);
}
