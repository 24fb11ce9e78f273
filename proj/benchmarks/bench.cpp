/*
 * Microbenchmarks for the hot paths: dense polynomial products, admissible
 * graph enumeration, graph-operator evaluation, and the Monte-Carlo weight
 * sampler.
 */
#include "kq/graphs.hpp"
#include "kq/hochschild.hpp"
#include "kq/polyvector.hpp"
#include "kq/star.hpp"
#include "kq/weights.hpp"

#include <benchmark/benchmark.h>

using namespace kq;

namespace {

Poly dense_poly(int d, int deg) {
    Poly p(d);
    MultiIndex e(d, 0);
    // every monomial of total degree <= deg (odometer walk)
    while (true) {
        if (mi_total(e) <= deg) p.add_term(e, Scalar(Rational(mi_total(e) + 1, 3)));
        int j = 0;
        while (j < d) {
            if (++e[j] <= deg && mi_total(e) <= deg) break;
            e[j++] = 0;
        }
        if (j == d) break;
    }
    return p;
}

PolyVectorField so3() {
    PolyVectorField pi(3, 2);
    pi.add_component({1, 2}, Poly::variable(3, 3));
    pi.add_component({2, 3}, Poly::variable(3, 1));
    pi.add_component({3, 1}, Poly::variable(3, 2));
    return pi;
}

void BM_poly_multiply(benchmark::State& state) {
    const int deg = static_cast<int>(state.range(0));
    Poly a = dense_poly(3, deg), b = dense_poly(3, deg);
    for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_poly_multiply)->Arg(4)->Arg(8)->Arg(12);

void BM_enumerate_graphs(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    std::vector<int> outdeg(n, 2);
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_graphs(n, 2, outdeg));
}
BENCHMARK(BM_enumerate_graphs)->Arg(1)->Arg(2)->Arg(3);

void BM_b_gamma(benchmark::State& state) {
    auto graphs = enumerate_graphs(2, 2, {2, 2});
    std::vector<PolyVectorField> xs{so3(), so3()};
    for (auto _ : state)
        for (const auto& g : graphs) benchmark::DoNotOptimize(b_gamma(g, xs));
}
BENCHMARK(BM_b_gamma);

void BM_mc_weight(benchmark::State& state) {
    AdmissibleGraph wedge{1, 2, {{-1, -2}}};
    const long long samples = state.range(0);
    std::uint64_t seed = 7;
    for (auto _ : state) benchmark::DoNotOptimize(mc_weight(wedge, samples, seed++));
    state.SetItemsProcessed(state.iterations() * samples);
}
BENCHMARK(BM_mc_weight)->Arg(1 << 12)->Arg(1 << 16);

void BM_assemble_star(benchmark::State& state) {
    const int N = static_cast<int>(state.range(0));
    PolyVectorField pi(2, 2);
    pi.add_component({1, 2}, Poly::constant(2, Scalar(1)));
    for (auto _ : state)
        benchmark::DoNotOptimize(assemble(pi, N, WeightSource::analytic_only()));
}
BENCHMARK(BM_assemble_star)->Arg(2)->Arg(3);

} // namespace

BENCHMARK_MAIN();
