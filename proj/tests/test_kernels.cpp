#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <omp.h>

#include <cmath>

#include "seqlab/fixture.hpp"
#include "seqlab/kernels.hpp"
#include "seqlab/lp_construction.hpp"
#include "seqlab/rng.hpp"

using namespace seqlab;

namespace {

std::vector<Seq> random_family(std::uint64_t seed, std::size_t count, std::size_t T) {
  Rng rng(seed);
  std::vector<Seq> f;
  for (std::size_t k = 0; k < count; ++k) {
    std::vector<double> c(T);
    for (auto& x : c) x = rng.uniform(-1.0, 1.0);
    f.emplace_back(std::move(c));
  }
  return f;
}

}  // namespace

TEST_CASE("serial and parallel kernels agree bit for bit") {
  auto fam = random_family(61, 8, 300);
  const auto l2 = AmbientSpace::lp(2.0);
  std::vector<std::size_t> forbidden{3, 17, 250};
  std::vector<Seq> blocks;
  std::vector<Window> windows;
  for (std::size_t k = 0; k < 6; ++k) {
    Seq g(300);
    for (std::size_t j = 0; j < 10; ++j) g[k * 10 + j] = 1.0 / std::sqrt(10.0);
    blocks.push_back(g);
    windows.push_back({k * 10, k * 10 + 9});
  }
  auto P = block_projection(blocks, windows, l2);

  const auto s1 = kernels::serial::partial_sum_ratio(fam, l2, 500, 9);
  const auto s2 = kernels::serial::operator_norm_ratio(P, l2, 500, 9);
  const auto s3 = kernels::serial::forbidden_violation(fam, forbidden, 500, 9);
  for (int threads : {1, 2, 3, 8}) {
    omp_set_num_threads(threads);
    CHECK(kernels::parallel::partial_sum_ratio(fam, l2, 500, 9) == s1);
    CHECK(kernels::parallel::operator_norm_ratio(P, l2, 500, 9) == s2);
    CHECK(kernels::parallel::forbidden_violation(fam, forbidden, 500, 9) == s3);
  }
  CHECK(s1.value >= 1.0);
  CHECK(s2.value <= 1.0 + 1e-12);
}

TEST_CASE("weighted partial sums") {
  auto fam = random_family(62, 4, 50);
  const auto linf = AmbientSpace::linf();
  kernels::Weights w(4, std::vector<double>(4, 2.0));
  auto plain = kernels::serial::partial_sum_ratio(fam, linf, 200, 1);
  auto halved = kernels::serial::partial_sum_ratio(fam, linf, 200, 1, w);
  CHECK(halved.value == doctest::Approx(plain.value / 2));
  CHECK(kernels::parallel::partial_sum_ratio(fam, linf, 200, 1, w) == halved);
}

TEST_CASE("per-sample coefficients depend only on seed and index") {
  auto a = kernels::sample_coefficients(5, 17, 6);
  auto b = kernels::sample_coefficients(5, 17, 6);
  auto c = kernels::sample_coefficients(5, 18, 6);
  CHECK(a == b);
  CHECK(a != c);
  for (double x : a) CHECK(std::fabs(x) <= 1.0);
}

TEST_CASE("forbidden violation on a clean family is zero") {
  std::vector<Seq> fam{Seq::unit(10, 1), Seq::unit(10, 3)};
  std::vector<std::size_t> forbidden{0, 2, 4};
  CHECK(kernels::parallel::forbidden_violation(fam, forbidden, 100, 3).value == 0.0);
}
