#include <benchmark/benchmark.h>

#include <cmath>

#include "seqlab/kernels.hpp"
#include "seqlab/lp_construction.hpp"
#include "seqlab/rng.hpp"

using namespace seqlab;

namespace {

std::vector<Seq> family(std::size_t count, std::size_t T) {
  Rng rng(7);
  std::vector<Seq> f;
  for (std::size_t k = 0; k < count; ++k) {
    std::vector<double> c(T);
    for (auto& x : c) x = rng.uniform(-1.0, 1.0);
    f.emplace_back(std::move(c));
  }
  return f;
}

ProjectionOp blocks(std::size_t count, std::size_t width, std::size_t T) {
  std::vector<Seq> g;
  std::vector<Window> w;
  for (std::size_t k = 0; k < count; ++k) {
    Seq b(T);
    for (std::size_t j = 0; j < width; ++j) b[k * width + j] = 1.0 / std::sqrt(static_cast<double>(width));
    g.push_back(b);
    w.push_back({k * width, k * width + width - 1});
  }
  return block_projection(g, w, AmbientSpace::lp(2.0));
}

const AmbientSpace kL2 = AmbientSpace::lp(2.0);

template <bool Parallel>
void BM_partial_sum_ratio(benchmark::State& state) {
  auto f = family(8, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto r = Parallel ? kernels::parallel::partial_sum_ratio(f, kL2, 500, 1)
                      : kernels::serial::partial_sum_ratio(f, kL2, 500, 1);
    benchmark::DoNotOptimize(r);
  }
}

template <bool Parallel>
void BM_operator_norm_ratio(benchmark::State& state) {
  const auto T = static_cast<std::size_t>(state.range(0));
  auto P = blocks(8, T / 8, T);
  for (auto _ : state) {
    auto r = Parallel ? kernels::parallel::operator_norm_ratio(P, kL2, 500, 1)
                      : kernels::serial::operator_norm_ratio(P, kL2, 500, 1);
    benchmark::DoNotOptimize(r);
  }
}

template <bool Parallel>
void BM_forbidden_violation(benchmark::State& state) {
  auto f = family(8, static_cast<std::size_t>(state.range(0)));
  std::vector<std::size_t> forbidden{1, 5, 9, 13, 17};
  for (auto _ : state) {
    auto r = Parallel ? kernels::parallel::forbidden_violation(f, forbidden, 5000, 1)
                      : kernels::serial::forbidden_violation(f, forbidden, 5000, 1);
    benchmark::DoNotOptimize(r);
  }
}

}  // namespace

BENCHMARK(BM_partial_sum_ratio<false>)->Arg(200)->Arg(2000);
BENCHMARK(BM_partial_sum_ratio<true>)->Arg(200)->Arg(2000);
BENCHMARK(BM_operator_norm_ratio<false>)->Arg(200)->Arg(2000);
BENCHMARK(BM_operator_norm_ratio<true>)->Arg(200)->Arg(2000);
BENCHMARK(BM_forbidden_violation<false>)->Arg(200);
BENCHMARK(BM_forbidden_violation<true>)->Arg(200);

BENCHMARK_MAIN();
