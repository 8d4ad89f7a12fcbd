use avghac::engines::{run_heap_based_with, run_nn_chain_with_telemetry, HeapConfig};
use avghac::gen::{random_connected_graph, random_small_graph, rng, DistinctWeights};
use avghac::{run_greedy, Rational, WeightedGraph};

#[test]
fn engines_agree_with_oracle_on_random_graphs() {
    let mut r = rng(11);
    for _ in 0..300 {
        let g: WeightedGraph<Rational> = random_small_graph(&mut r, 2, 40);
        let oracle = run_greedy(&g);
        let (heap, t) = run_heap_based_with(&g, HeapConfig { audit: true, ..HeapConfig::default() });
        assert_eq!(heap, oracle, "heap engine diverged on\n{}", g.to_text());
        let (chain, _) = run_nn_chain_with_telemetry(&g, true);
        assert!(chain.same_tree(&oracle), "nn-chain diverged on\n{}", g.to_text());
        assert!(t.unsuccessful_extractions <= g.m() as u64);
        assert!(t.neighbor_touches <= 2 * g.m() as u64 * oracle.height() as u64);
    }
}

#[test]
fn heap_engine_matches_oracle_under_heavy_ties() {
    let mut r = rng(5);
    for n in 2..30 {
        let g: WeightedGraph<Rational> =
            random_connected_graph(&mut r, n, n, &mut DistinctWeights::new(1, 1).allow_repeats());
        let (heap, _) = run_heap_based_with(&g, HeapConfig { audit: true, ..HeapConfig::default() });
        assert_eq!(heap, run_greedy(&g), "tie handling diverged on\n{}", g.to_text());
    }
}
