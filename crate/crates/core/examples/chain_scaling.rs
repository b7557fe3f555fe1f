//! Times the clique DP on chain-of-cliques instances of growing edge
//! count and prints per-unit cost, demonstrating linear scaling in m + n.

use std::time::Instant;

use edgedistant::comparability::wmc_comparability;
use edgedistant::gen::clique_chain;

fn main() {
    println!("{:>5} {:>9} {:>10} {:>12}", "block", "m+n", "best_s", "us_per_unit");
    for s in [4usize, 8, 16, 32, 64] {
        let (g, o) = clique_chain(10_000, s);
        let units = g.m() + g.n();
        let mut best = f64::MAX;
        for _ in 0..5 {
            let t = Instant::now();
            let sol = wmc_comparability(&g, &o);
            best = best.min(t.elapsed().as_secs_f64());
            assert_eq!(sol.weight, s as u64, "a block is the heaviest chain");
        }
        println!(
            "{:>5} {:>9} {:>10.5} {:>12.4}",
            s,
            units,
            best,
            best * 1e6 / units as f64
        );
    }
}
