use avghac::gen::{path_graph, random_poly_path, rng};
use avghac::pathhac::{run_path_hac, run_path_hac_with, PathConfig, PathStats};
use avghac::{run_greedy, Rational, Weight, WeightedGraph, F64};

fn check(g: &WeightedGraph<Rational>) -> PathStats {
    let (d, stats) = run_path_hac_with(g, PathConfig { workers: 2 }).unwrap();
    let oracle = run_greedy(g);
    assert_eq!(d, oracle, "path engine diverged on\n{}", g.to_text());
    let total = g.total_size();
    let aspect = g.aspect_ratio().unwrap().to_f64();
    assert!(stats.phases <= PathStats::phase_bound(total, aspect), "{stats:?}");
    assert!(stats.max_arm_subchain <= PathStats::arm_subchain_bound(total), "{stats:?}");
    assert!(stats.max_planned_segment <= PathStats::planned_segment_bound(total), "{stats:?}");
    stats
}

#[test]
fn three_path_matches_oracle() {
    let g = path_graph(vec![Rational::from_int(3), Rational::from_int(2)]);
    assert_eq!(run_path_hac(&g).unwrap(), run_greedy(&g));
}

#[test]
fn uniform_path_of_eight_has_height_three() {
    let g = path_graph(vec![Rational::from_int(1); 7]);
    let d = run_path_hac(&g).unwrap();
    assert_eq!(d, run_greedy(&g));
    assert_eq!(d.height(), 3);
    let first: Vec<(usize, usize)> = d.merges()[..4].iter().map(|m| (m.a, m.b)).collect();
    assert_eq!(first, vec![(0, 1), (2, 3), (4, 5), (6, 7)]);
}

#[test]
fn random_paths_match_oracle() {
    let mut r = rng(1);
    let mut repairs = 0;
    for i in 0..300 {
        let n = 2 + (i % 60);
        let g: WeightedGraph<Rational> = random_poly_path(&mut r, n);
        repairs += check(&g).repairs;
    }
    println!("repairs: {repairs}");
}

#[test]
fn larger_random_paths_match_oracle() {
    let mut r = rng(2);
    for n in [256usize, 1024] {
        let g: WeightedGraph<Rational> = random_poly_path(&mut r, n);
        let s = check(&g);
        println!("n={n} {s:?}");
    }
}

#[test]
fn non_path_is_rejected() {
    let g = WeightedGraph::new(3, [(0, 1, F64::new(1.0)), (1, 2, F64::new(1.0)), (0, 2, F64::new(1.0))]).unwrap();
    assert!(run_path_hac(&g).is_err());
}

/// Narrow weight ranges make whole stretches share a bucket, so chains are
/// long and categories matter.
#[test]
fn narrow_weights_and_sizes_match_oracle() {
    use avghac::gen::DistinctWeights;
    use rand::Rng;
    let mut r = rng(3);
    let mut repairs = 0;
    for i in 0..400 {
        let n = 2 + (i % 90);
        let mut ws = DistinctWeights::<Rational>::new(2, 1 << 20);
        let sizes: Vec<u64> = (0..n).map(|_| if i % 2 == 0 { 1 } else { r.gen_range(1..6) }).collect();
        let edges: Vec<_> = (1..n).map(|p| (p - 1, p, ws.draw(&mut r))).collect();
        let g = WeightedGraph::with_sizes(sizes, edges).unwrap();
        repairs += check(&g).repairs;
    }
    println!("narrow repairs: {repairs}");
}

#[test]
fn worker_count_does_not_change_output() {
    let g: WeightedGraph<Rational> = random_poly_path(&mut rng(4), 2000);
    let one = run_path_hac_with(&g, PathConfig { workers: 1 }).unwrap().0.to_jsonl();
    for workers in [2, 8] {
        assert_eq!(run_path_hac_with(&g, PathConfig { workers }).unwrap().0.to_jsonl(), one);
    }
}
