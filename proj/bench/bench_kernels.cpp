// Serial reference vs OpenMP kernels.
#include <benchmark/benchmark.h>

#include "hyperdisc/certifier.hpp"
#include "hyperdisc/oracle.hpp"

using namespace hyperdisc;

namespace {

std::vector<int> first_l(int n, int k) {
    std::vector<int> l(static_cast<std::size_t>(n / k));
    for (std::size_t i = 0; i < l.size(); ++i) l[i] = static_cast<int>(i);
    return l;
}

const Hypergraph& pair_g() {
    static Hypergraph g = sample_hypergraph(9, 2, 0.5, 1);
    return g;
}
const Hypergraph& pair_h() {
    static Hypergraph h = sample_hypergraph(9, 2, 0.5, 2);
    return h;
}

void BM_pair_oracle_serial(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(exact_disc_pair(pair_g(), pair_h(), {}, 1));
}
void BM_pair_oracle_parallel(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(exact_disc_pair(pair_g(), pair_h(), {}, 0));
}

const Hypergraph& subset_h() {
    static Hypergraph h = sample_hypergraph(18, 2, 0.5, 3);
    return h;
}

void BM_subset_oracle_serial(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(exact_disc_subset(subset_h(), {}, 1));
}
void BM_subset_oracle_parallel(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(exact_disc_subset(subset_h(), {}, 0));
}

struct GammaFixture {
    BipartiteProjection pg, ph;
    CertifierConfig cfg;
    GammaFixture() {
        auto g = sample_hypergraph(1000, 2, 0.5, 4);
        auto h = sample_hypergraph(1000, 2, 0.5, 5);
        pg = build_projection(g, first_l(1000, 2), 'G');
        ph = build_projection(h, first_l(1000, 2), 'H');
    }
};
const GammaFixture& gamma_fixture() {
    static GammaFixture f;
    return f;
}

void BM_gamma_scan_serial(benchmark::State& state) {
    const auto& f = gamma_fixture();
    for (auto _ : state)
        benchmark::DoNotOptimize(gamma_graph_serial(f.pg, f.ph, 0.5, 0.5, f.cfg));
}
void BM_gamma_scan_parallel(benchmark::State& state) {
    const auto& f = gamma_fixture();
    for (auto _ : state) benchmark::DoNotOptimize(gamma_graph(f.pg, f.ph, 0.5, 0.5, f.cfg));
}

void BM_codegree_matrix_serial(benchmark::State& state) {
    const auto& f = gamma_fixture();
    for (auto _ : state) benchmark::DoNotOptimize(codegree_matrix_serial(f.pg, f.ph));
}
void BM_codegree_matrix_parallel(benchmark::State& state) {
    const auto& f = gamma_fixture();
    for (auto _ : state) benchmark::DoNotOptimize(codegree_matrix(f.pg, f.ph));
}

}  // namespace

BENCHMARK(BM_pair_oracle_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_pair_oracle_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_subset_oracle_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_subset_oracle_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_gamma_scan_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_gamma_scan_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_codegree_matrix_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_codegree_matrix_parallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
