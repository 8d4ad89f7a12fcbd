use avghac::engines::{run_heap_based, run_nn_chain};
use avghac::{run_greedy, Rational, F64};
use avghac_bench::{sparse, Input, MEDIUM, SMALL};
use criterion::*;

fn heap_and_chain(c: &mut Criterion) {
    let mut group = c.benchmark_group("sparse_engines");
    group.sampling_mode(SamplingMode::Flat).sample_size(10);
    for input in [SMALL, MEDIUM] {
        let exact = sparse::<Rational>(input);
        let float = sparse::<F64>(input);
        group.throughput(Throughput::Elements(exact.m() as u64));
        group.bench_function(format!("heap_rational_{}", input.name), |b| b.iter(|| run_heap_based(&exact)));
        group.bench_function(format!("heap_float_{}", input.name), |b| b.iter(|| run_heap_based(&float)));
        group.bench_function(format!("chain_rational_{}", input.name), |b| b.iter(|| run_nn_chain(&exact)));
        group.bench_function(format!("chain_float_{}", input.name), |b| b.iter(|| run_nn_chain(&float)));
    }
    group.finish();
}

fn oracle(c: &mut Criterion) {
    let input = Input { name: "tiny", n: 256 };
    let g = sparse::<Rational>(input);
    let mut group = c.benchmark_group("oracle");
    group.sample_size(10);
    group.bench_function(input.name, |b| b.iter(|| run_greedy(&g)));
    group.finish();
}

criterion_group!(benches, heap_and_chain, oracle);
criterion_main!(benches);
