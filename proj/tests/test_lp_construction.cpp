#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "seqlab/fixture.hpp"
#include "seqlab/lp_construction.hpp"
#include "seqlab/rng.hpp"

using namespace seqlab;

namespace {

const AmbientSpace l2 = AmbientSpace::lp(2.0);

template <class F>
Errc error_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return Errc::ConfigError;
}

Subspace fixture(const char* name) {
  return build_subspace<double>(load_fixture(std::string(SEQLAB_FIXTURE_DIR "/") + name));
}

Seq random_seq(Rng& rng, std::size_t n) {
  std::vector<double> c(n);
  for (auto& v : c) v = rng.uniform(-1.0, 1.0);
  return Seq(std::move(c));
}

// Independent re-evaluation of |x|_p in long double.
long double lp_norm_ld(const Seq& x, double p) {
  long double s = 0;
  for (double c : x.coords()) s += std::pow(std::fabs(static_cast<long double>(c)), static_cast<long double>(p));
  return std::pow(s, 1.0L / p);
}

void check_lemmaA_invariants(const LemmaACert& c) {
  const double eps = c.eps, p = c.space.p();
  const std::size_t depth = c.s.size();
  REQUIRE(c.f.size() == depth);
  for (std::size_t i = 0; i < depth; ++i) {
    const int k = static_cast<int>(i) + 1;
    CHECK(std::fabs(lp_norm_ld(c.f[i], p) - 1.0L) <= 1e-9L);
    if (i > 0) {
      CHECK(c.N[i - 1] < c.s[i]);
      for (std::size_t j = 0; j < i; ++j) CHECK(std::fabs(c.f[i][c.s[j]]) <= c.eta);
      long double head = 0;
      for (std::size_t j = 0; j < i; ++j) head += std::fabs(static_cast<long double>(c.f[j][c.s[i]]));
      CHECK(head < eps / std::ldexp(1.0, k) * std::fabs(c.f[i][c.s[i]]));
    }
    CHECK(c.s[i] <= c.N[i]);
    const long double nt = lp_norm_ld(c.f_tilde[i], p);
    CHECK(nt >= 1.0L - eps / std::ldexp(1.0, k + 1));
    CHECK(nt <= 1.0L + 1e-9L);
    CHECK(norm_with_tail(c.f[i] - c.f_tilde[i], c.space) < eps / std::ldexp(1.0, k + 1));
    // f_tilde is f restricted to its window.
    for (std::size_t j = 0; j < c.f[i].size(); ++j) {
      if (c.sigma[i].contains(j)) {
        CHECK(c.f_tilde[i][j] == c.f[i][j]);
      } else {
        CHECK(c.f_tilde[i][j] == 0.0);
      }
    }
  }
  CHECK(std::fabs(c.f[0][c.s[0]]) > c.eta);
  CHECK(c.delta <= 4 * eps / (4 - eps));
  CHECK(8 * c.delta < 1);
}

}  // namespace

TEST_CASE("Lemma A on the coordinate fixture") {
  auto v = fixture("l2_coord40.json");
  LpOptions opt;
  opt.eps = 0.1;
  opt.depth = 6;
  auto c = construct_lemmaA(v, opt);
  CHECK(c.pass());
  check_lemmaA_invariants(c);
  CHECK(c.delta <= 4 * 0.1 / 3.9);
}

TEST_CASE("Lemma A on the mixed fixture") {
  auto v = fixture("l2_mixed40.json");
  LpOptions opt;
  opt.eps = 0.1;
  opt.depth = 6;
  auto c = construct_lemmaA(v, opt);
  CHECK(c.pass());
  check_lemmaA_invariants(c);
  // Disjoint windows.
  for (std::size_t i = 1; i < c.sigma.size(); ++i) CHECK(c.sigma[i - 1].last < c.sigma[i].first);
}

TEST_CASE("Lemma A eps bounds and dimension") {
  auto v = fixture("l2_coord40.json");
  LpOptions opt;
  opt.eps = 1.0 / 8.0;
  CHECK(error_of([&] { construct_lemmaA(v, opt); }) == Errc::EpsOutOfRange);
  opt.eps = 0.0;
  CHECK(error_of([&] { construct_lemmaA(v, opt); }) == Errc::EpsOutOfRange);
  auto small = fixture("l2_dim2.json");
  opt.eps = 0.1;
  opt.depth = 5;
  CHECK(error_of([&] { construct_lemmaA(small, opt); }) == Errc::DimensionExhausted);
}

TEST_CASE("Lemma A picks minimal indices") {
  // Coordinate subspace: s_1 = N_1 = 0, then s_k is the first coordinate after
  // N_(k-1) and N_k = s_k + 1, the least index strictly beyond s_k.
  auto v = fixture("l2_coord40.json");
  LpOptions opt;
  opt.eps = 0.1;
  opt.depth = 4;
  auto c = construct_lemmaA(v, opt);
  CHECK(c.s == std::vector<std::size_t>{0, 1, 3, 5});
  CHECK(c.N == std::vector<std::size_t>{0, 2, 4, 6});
}

TEST_CASE("block_projection examples") {
  std::vector<Seq> g{Seq::unit(6, 0), Seq::unit(6, 1)};
  std::vector<Window> sigma{{0, 0}, {1, 1}};
  auto P = block_projection(g, sigma, l2);
  Seq x({3.0, -2.0, 5.0, 7.0, 1.0, 4.0});
  CHECK(P.apply(x) == Seq({3.0, -2.0, 0.0, 0.0, 0.0, 0.0}));
  CHECK(P.apply(g[0]) == g[0]);

  const double r = 1.0 / std::sqrt(2.0);
  std::vector<Seq> h{Seq::unit(6, 0), Seq({0.0, r, r, 0.0, 0.0, 0.0})};
  std::vector<Window> tau{{0, 0}, {1, 2}};
  auto Q = block_projection(h, tau, l2);
  Rng rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    auto y = random_seq(rng, 6);
    auto py = Q.apply(y);
    CHECK(norm(py, l2) <= norm(y, l2) * (1 + 1e-12));
    auto ppy = Q.apply(py);
    CHECK(norm(ppy - py, l2) <= 1e-12);
  }
  for (const auto& b : h) CHECK(norm(Q.apply(b) - b, l2) <= 1e-15);

  std::vector<Window> overlap{{0, 1}, {1, 2}};
  CHECK(error_of([&] { block_projection(h, overlap, l2); }) == Errc::OverlappingWindows);
  std::vector<Seq> big{scaled(2.0, Seq::unit(6, 0))};
  std::vector<Window> one{{0, 0}};
  CHECK(error_of([&] { block_projection(big, one, l2); }) == Errc::UnnormalizedBlock);
}

TEST_CASE("block projection for p = 1 uses the first maximal coordinate") {
  const auto l1 = AmbientSpace::lp(1.0);
  Seq g({0.0, 0.25, -0.25, 0.5, 0.0});
  auto phi = norming_functional(g, Window{1, 3}, l1);
  // Any sign vector on the support norms g in l1; the functional must be +-1 there.
  CHECK(pair(phi, g) == doctest::Approx(1.0));
  for (std::size_t j = 0; j < 5; ++j) CHECK(std::fabs(phi[j]) <= 1.0);
}

TEST_CASE("small perturbation examples") {
  auto id = perturbation_bounds(0.0, 1.0, 1.0);
  CHECK(id.ok);
  CHECK(id.T_norm_bound == 1.0);
  CHECK(id.Q_norm_bound_tight == 1.0);

  const double eps = 0.1, delta = 4 * eps / (4 - eps);
  auto c = perturbation_bounds(delta, 1.0, 1.0);
  CHECK(c.ok);
  CHECK(c.basis_constant_bound == doctest::Approx((8 - 2 * eps) / (4 - 9 * eps)).epsilon(1e-14));
  CHECK(c.basis_constant_bound == doctest::Approx(7.8 / 3.1).epsilon(1e-14));
  CHECK(c.Q_norm_bound == doctest::Approx((8 - 2 * eps) / (4 - 33 * eps)).epsilon(1e-14));
  CHECK(c.Q_norm_bound == doctest::Approx(7.8 / 0.7).epsilon(1e-14));

  auto bad = perturbation_bounds(1.0 / 8.0, 1.0, 1.0);
  CHECK_FALSE(bad.ok);
  CHECK(bad.T_norm_bound == 0.0);

  std::vector<Seq> base{Seq::unit(4, 0)}, two{Seq::unit(4, 0), Seq::unit(4, 1)};
  CHECK(error_of([&] { small_perturbation_cert(base, two, 1.0, 1.0, l2); }) == Errc::LengthMismatch);
  auto same = small_perturbation_cert(two, two, 1.0, 1.0, l2);
  CHECK(same.delta == 0.0);
  CHECK(same.ok);
}

TEST_CASE("basis constant lower bound examples") {
  const double r = 1.0 / std::sqrt(2.0);
  std::vector<Seq> blocks{Seq({1.0, 0, 0, 0}), Seq({0, r, r, 0}), Seq({0, 0, 0, 1.0})};
  CHECK(basis_constant_lower_bound(blocks, l2, 300, 1) <= 1.0 + 1e-9);
  std::vector<Seq> single{Seq({0.6, 0.8})};
  CHECK(basis_constant_lower_bound(single, l2, 50, 1) == doctest::Approx(1.0));

  std::vector<Seq> f{Seq({1.0, 0.0}), Seq({1.0, 1.0})};
  const auto linf = AmbientSpace::linf();
  double sampled = basis_constant_lower_bound(f, linf, 300, 2);
  // Grid oracle over coefficient pairs.
  double grid = 1.0;
  for (int i = -20; i <= 20; ++i) {
    for (int j = -20; j <= 20; ++j) {
      const double a = i / 20.0, b = j / 20.0;
      const double full = std::max(std::fabs(a + b), std::fabs(b));
      if (full > 0) grid = std::max(grid, std::fabs(a) / full);
    }
  }
  CHECK(sampled >= 1.0);
  CHECK(sampled <= grid + 1e-9);
}

TEST_CASE("Lemma B on the mixed fixture") {
  auto v = fixture("l2_mixed40.json");
  LpOptions opt;
  opt.eps = 1.0 / 600.0;
  opt.depth = 6;
  auto b = construct_lemmaB(v, opt);
  CHECK(b.pass());
  const auto& s = b.s();
  for (std::size_t k = 0; k < s.size(); ++k) {
    CHECK(std::fabs(b.l[k][s[k]]) > 1e-9);
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (j != k) CHECK(std::fabs(b.l[k][s[j]]) <= 1e-9);
    }
    CHECK(b.residuals[k] <= opt.eps / std::ldexp(1.0, static_cast<int>(k) + 1));
    // Independent recomputation of the residual.
    CHECK(static_cast<double>(lp_norm_ld(b.l[k] - b.a.f[k], 2.0)) <= b.residuals[k] * (1 + 1e-9) + 1e-15);
  }
  CHECK(b.delta <= opt.eps);
  CHECK(8 * b.delta < 512 * opt.eps);
}

TEST_CASE("Lemma B Cauchy estimate from the iterates") {
  auto v = fixture("l2_mixed40.json");
  LpOptions opt;
  opt.eps = 1.0 / 1000.0;
  opt.depth = 6;
  auto b = construct_lemmaB(v, opt);
  for (std::size_t k = 1; k <= b.s().size(); ++k) {
    auto it = zeroing_iterates(b.a.f, b.s(), k);
    for (std::size_t t = 0; t < it.size(); ++t) {
      for (std::size_t m = 0; m < t; ++m) {
        CHECK(norm_with_tail(it[t] - it[m], l2) <= opt.eps / std::ldexp(1.0, static_cast<int>(k + m)));
      }
    }
    CHECK(it.back() == b.l[k - 1]);
  }
}

TEST_CASE("Lemma B eps bound and depth one") {
  auto v = fixture("l2_coord40.json");
  LpOptions opt;
  opt.eps = 1.0 / 512.0;
  CHECK(error_of([&] { construct_lemmaB(v, opt); }) == Errc::EpsOutOfRange);
  opt.eps = 1.0 / 600.0;
  opt.depth = 1;
  auto b = construct_lemmaB(v, opt);
  REQUIRE(b.l.size() == 1);
  CHECK(b.l[0] == b.a.f[0]);
  CHECK(b.residuals[0] == 0.0);
}

TEST_CASE("property: block p-th powers add exactly") {
  // Disjoint blocks: |sum a_k g_k|^p = sum |a_k|^p |g_k|^p in exact arithmetic.
  Rng rng(32);
  const auto l3 = AmbientSpace::lp(3.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<ExactSeq> g;
    std::vector<Rational> a;
    const std::size_t width = 3, blocks = 4;
    for (std::size_t k = 0; k < blocks; ++k) {
      ExactSeq b(width * blocks);
      for (std::size_t j = 0; j < width; ++j)
        b[k * width + j] = Rational(static_cast<long>(rng.below(11)) - 5, 3), b[k * width + j].canonicalize();
      g.push_back(b);
      a.emplace_back(static_cast<long>(rng.below(9)) - 4, 2);
      a.back().canonicalize();
    }
    ExactSeq sum(width * blocks);
    Rational rhs(0);
    for (std::size_t k = 0; k < blocks; ++k) {
      sum = axpy(a[k], g[k], sum);
      rhs += abs(a[k] * a[k] * a[k]) * norm_pow(g[k], l3);
    }
    rhs.canonicalize();
    CHECK(norm_pow(sum, l3) == rhs);
  }
}

TEST_CASE("property: constructed Q stays under its bound") {
  auto v = fixture("l2_mixed40.json");
  LpOptions opt;
  opt.eps = 0.05;
  opt.depth = 5;
  opt.samples = 300;
  auto c = construct_lemmaA(v, opt);
  CHECK(c.Q_norm_sampled <= c.perturb.Q_norm_bound_tight);
  CHECK(c.perturb.Q_norm_bound_tight <= c.perturb.Q_norm_bound);
  CHECK(c.P_norm_sampled <= 1.0 + 1e-9);
}
