#include "novikov/ce/model_text.hpp"
#include "novikov/kernels/grid.hpp"
#include "novikov/lcs/solver.hpp"
#include "novikov/models/bundled.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace novikov;

namespace {

struct Model {
    ModelText text;
    CEComplexPtr cx;
    ComplexStructurePtr jc;
};

Model load(const char* name) {
    Model m;
    m.text = parse_model_text(std::string(*find_bundled(bundled_models(), name)));
    m.cx = build_complex(m.text);
    m.jc = ComplexStructure::create(m.cx, *m.text.j_forms);
    return m;
}

std::vector<Rational> twist_grid(int points) {
    std::vector<Rational> ts;
    for (int i = 0; i < points; ++i) ts.emplace_back(i - points / 2, 3);
    return ts;
}

// Inoue at t = 2 has no taming closed form, so the sweep visits every point.
kernels::TamingGrid empty_sweep(std::size_t steps) {
    auto m = load("inoue");
    kernels::TamingGrid g;
    g.steps = steps;
    g.step = Rational(6, static_cast<long>(steps - 1));
    auto a = TwistForm<Rational>::make(*m.cx, *m.text.alpha, Rational(2));
    for (auto& v : kernel_basis(twisted_differential(*m.cx, a, 2)))
        g.metric_basis.push_back(lift<double>(taming_check(*m.jc, Form<Rational>(4, 2, v)).metric));
    return g;
}

Matrix<Rational> random_matrix(std::size_t n) {
    std::mt19937_64 rng(kDefaultSeed);
    std::uniform_int_distribution<int> d(-3, 3);
    Matrix<Rational> m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = Rational(d(rng));
    return m;
}

void BM_BettiGridSerial(benchmark::State& st) {
    auto m = load("hopf");
    auto ts = twist_grid(static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(kernels::betti_grid_serial(*m.cx, *m.text.alpha, ts));
}

void BM_BettiGridParallel(benchmark::State& st) {
    auto m = load("hopf");
    auto ts = twist_grid(static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(kernels::betti_grid_parallel(*m.cx, *m.text.alpha, ts));
}

void BM_TamingSweepSerial(benchmark::State& st) {
    auto g = empty_sweep(static_cast<std::size_t>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(kernels::first_taming_index_serial(g));
    st.SetItemsProcessed(static_cast<long>(st.iterations() * g.size()));
}

void BM_TamingSweepParallel(benchmark::State& st) {
    auto g = empty_sweep(static_cast<std::size_t>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(kernels::first_taming_index_parallel(g));
    st.SetItemsProcessed(static_cast<long>(st.iterations() * g.size()));
}

void BM_RowReduceSerial(benchmark::State& st) {
    auto m = random_matrix(static_cast<std::size_t>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(row_reduce(m));
}

void BM_RowReduceParallel(benchmark::State& st) {
    auto m = random_matrix(static_cast<std::size_t>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(kernels::row_reduce_parallel(m));
}

}  // namespace

BENCHMARK(BM_BettiGridSerial)->Arg(40)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BettiGridParallel)->Arg(40)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TamingSweepSerial)->Arg(41)->Arg(81)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TamingSweepParallel)->Arg(41)->Arg(81)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RowReduceSerial)->Arg(40)->Arg(80)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RowReduceParallel)->Arg(40)->Arg(80)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
