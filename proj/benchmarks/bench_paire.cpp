#include "paire/paire.hpp"

#include <benchmark/benchmark.h>

#include <random>
#include <set>

using namespace paire;

namespace {

// Sparse bag-of-words graph with roughly Cora-like density.
Graph random_citation_graph(std::size_t n, std::size_t f, std::size_t edges, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> node(0, n - 1), word(0, f - 1);
    std::vector<Eigen::Triplet<double, std::int64_t>> t;
    for (std::size_t u = 0; u < n; ++u)
        for (int k = 0; k < 18; ++k)
            t.emplace_back(static_cast<std::int64_t>(u), static_cast<std::int64_t>(word(rng)), 1.0);
    SparseRows x(static_cast<std::int64_t>(n), static_cast<std::int64_t>(f));
    x.setFromTriplets(t.begin(), t.end(), [](double a, double) { return a; });
    std::set<NodePair> seen;
    std::vector<NodePair> e;
    while (e.size() < edges) {
        auto u = static_cast<NodeId>(node(rng)), v = static_cast<NodeId>(node(rng));
        if (u == v) continue;
        if (u > v) std::swap(u, v);
        if (seen.insert({u, v}).second) e.push_back({u, v});
    }
    return Graph(n, std::move(e), std::make_shared<const FeatureMatrix>(std::move(x)));
}

const Graph& bench_graph() {
    static const Graph g = random_citation_graph(2000, 1000, 4000, 1);
    return g;
}

void BM_BuildPairInputs(benchmark::State& state) {
    const Graph& g = bench_graph();
    const PairSet ps = PairSet::build(g, true);
    for (auto _ : state) benchmark::DoNotOptimize(build_pair_inputs(g, g.features(), ps));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * ps.size()));
}
BENCHMARK(BM_BuildPairInputs)->Unit(benchmark::kMillisecond);

void BM_ForwardBackward(benchmark::State& state) {
    const Graph& g = bench_graph();
    const PairSet ps = PairSet::build(g, true);
    const PairInputs in = build_pair_inputs(g, g.features(), ps);
    TrainConfig cfg;
    cfg.hidden_width = static_cast<std::size_t>(state.range(0));
    const ModelParams m = init_model(cfg, in.dim());
    std::vector<std::size_t> rows(static_cast<std::size_t>(state.range(1)));
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
    const Batch batch = make_batch(in, rows);
    for (auto _ : state) {
        const ForwardResult f = forward(m, batch);
        benchmark::DoNotOptimize(backward(m, batch, f, {}));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(1));
}
BENCHMARK(BM_ForwardBackward)->Args({64, 256})->Args({256, 1024})->Unit(benchmark::kMillisecond);

void BM_Translate(benchmark::State& state) {
    const Graph& g = bench_graph();
    const PairSet ps = PairSet::build(g, true);
    std::mt19937_64 rng(2);
    std::normal_distribution<double> normal;
    RowMatrix pe(static_cast<Eigen::Index>(ps.size()), 128);
    for (Eigen::Index i = 0; i < pe.size(); ++i) pe.data()[i] = normal(rng);
    const auto mode = static_cast<TranslatorMode>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(translate(ps, pe, mode));
}
BENCHMARK(BM_Translate)->DenseRange(0, 3)->Unit(benchmark::kMicrosecond);

void BM_KMeans(benchmark::State& state) {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> normal;
    RowMatrix x(2000, 128);
    for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = normal(rng);
    for (auto _ : state) benchmark::DoNotOptimize(kmeans_cluster(x, 7, 0));
}
BENCHMARK(BM_KMeans)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
