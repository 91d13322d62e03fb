// Acceptance run: one PASS/FAIL line per criterion, with its runtime budget.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "seqlab/certificate_io.hpp"
#include "seqlab/cli.hpp"
#include "seqlab/fixture.hpp"
#include "seqlab/lineability.hpp"
#include "seqlab/linf_construction.hpp"
#include "seqlab/lp_construction.hpp"
#include "seqlab/rng.hpp"
#include "seqlab/verify.hpp"
#include "seqlab/witnesses.hpp"

using namespace seqlab;
using nlohmann::json;

namespace {

const std::string kFixtures = SEQLAB_FIXTURE_DIR;

FixtureSpec fixture(const std::string& name) { return load_fixture(kFixtures + "/" + name); }

// Collects failed conditions of one criterion.
struct Outcome {
  std::vector<std::string> failures;
  std::string summary;

  void require(bool ok, const std::string& what) {
    if (!ok && failures.size() < 5) failures.push_back(what);
    if (!ok && failures.size() == 5) failures.push_back("...");
  }
};

Rational pow_q(const Rational& p, std::size_t e) {
  Rational r(1);
  for (std::size_t i = 0; i < e; ++i) r *= p;
  return r;
}

long double lp_norm_ld(const Seq& x, double p) {
  long double s = 0;
  for (double c : x.coords()) s += std::pow(std::fabs(static_cast<long double>(c)), static_cast<long double>(p));
  return std::pow(s, 1.0L / p);
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(3);
  os << x;
  return os.str();
}

void c1(Outcome& o) {
  Rng rng(1001);
  std::vector<Rational> p(1000), q(1000);
  for (int i = 0; i < 1000; ++i) p[i] = rng.unit_rational(100), q[i] = rng.unit_rational(100);
  std::vector<char> ok(1000);
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < 1000; ++i) {
    ok[i] = hadamard(geometric_generator(p[i], 256), geometric_generator(q[i], 256)) ==
            geometric_generator(Rational(p[i] * q[i]), 256);
  }
  for (int i = 0; i < 1000; ++i)
    o.require(ok[i], "x_p . x_q != x_pq for p=" + rational_to_string(p[i]) + " q=" + rational_to_string(q[i]));
  o.summary = "1000 pairs (denominators <= 100), T=256, exact";
}

void c2(Outcome& o) {
  Rng rng(1002);
  std::size_t total_zeros = 0, max_M = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng.below(5);
    std::vector<Rational> ratios, coeffs;
    while (ratios.size() < n) {
      Rational p = rng.unit_rational(16);
      if (std::find(ratios.begin(), ratios.end(), p) != ratios.end()) continue;
      ratios.push_back(p);
      Rational c(static_cast<long>(rng.below(9)) + 1, static_cast<long>(rng.below(4)) + 1);
      c.canonicalize();
      coeffs.push_back(rng.below(2) ? c : Rational(-c));
    }
    // Every third combination gets a planted zero at a random exponent.
    if (n >= 2 && trial % 3 == 0) {
      GeometricCombination g = GeometricCombination::make(ratios, coeffs);
      const std::size_t j0 = 1 + rng.below(8);
      Rational rest(0);
      for (std::size_t i = 1; i < n; ++i) rest += g.coeffs[i] * pow_q(g.ratios[i], j0);
      g.coeffs[0] = -rest / pow_q(g.ratios[0], j0);
      if (sgn(g.coeffs[0]) != 0) {
        ratios = g.ratios;
        coeffs = g.coeffs;
      }
    }
    auto c = GeometricCombination::make(ratios, coeffs);
    const std::size_t M = certified_zero_bound(c);
    max_M = std::max(max_M, M);
    // Independent scan: evaluate sum_i c_i p_i^j with running powers.
    std::vector<Rational> pw(c.ratios.begin(), c.ratios.end());
    std::size_t zeros = 0;
    for (std::size_t j = 1; j <= 500; ++j) {
      Rational x(0);
      for (std::size_t i = 0; i < n; ++i) x += c.coeffs[i] * pw[i];
      for (std::size_t i = 0; i < n; ++i) pw[i] *= c.ratios[i];
      if (sgn(x) == 0) {
        ++zeros;
        o.require(j <= M, "zero at exponent " + std::to_string(j) + " beyond M=" + std::to_string(M));
      }
    }
    o.require(zeros <= M, "zero set larger than M");
    total_zeros += zeros;
  }
  o.summary = "200 combinations, " + std::to_string(total_zeros) + " zeros found, max M=" + std::to_string(max_M);
}

void c3(Outcome& o) {
  Rng rng(1003);
  std::size_t largest = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + trial % 20;
    std::vector<Rational> s;
    while (s.size() < n) {
      Rational p = rng.unit_rational(100);
      if (std::find(s.begin(), s.end(), p) == s.end()) s.push_back(p);
    }
    o.require(independence_rank(s, n) == n, "rank deficit at size " + std::to_string(n));
    largest = std::max(largest, n);
  }
  o.summary = "100 sets, sizes 1.." + std::to_string(largest);
}

void c4(Outcome& o) {
  for (const char* name : {"l2_coord40.json", "l2_mixed40.json"}) {
    Scenario sc;
    sc.pipeline = Pipeline::Lp;
    sc.fixture = fixture(name);
    sc.eps = 0.1;
    sc.depth = 6;
    auto cert = run_scenario(sc);
    const auto& A = cert.at("lemmaA");
    o.require(cert.at("kind") == "lemmaA", "not a lemmaA certificate");
    o.require(cert.at("pass").get<bool>(), std::string(name) + ": emitted ledger has failures");
    const double delta = A.at("delta").get<double>();
    o.require(delta <= 0.4 / 3.9, "delta > 4 eps/(4-eps)");
    o.require(8 * delta < 1, "8 delta >= 1");
    auto rep = verify_certificate(cert);
    o.require(rep.pass(), std::string(name) + ": verify failed at " +
                              (rep.pass() ? std::string() : describe(*rep.ledger.first_failure())));
    o.summary += std::string(name) + " delta=" + fmt(delta) + " (" + std::to_string(rep.ledger.entries().size()) +
                 " checks) ";
  }
}

void c5(Outcome& o) {
  double worst = 0;
  for (double eps : {0.01, 0.05, 0.1}) {
    auto c = perturbation_bounds(4 * eps / (4 - eps), 1.0, 1.0);
    const double b = (8 - 2 * eps) / (4 - 9 * eps), q = (8 - 2 * eps) / (4 - 33 * eps);
    const double e1 = std::fabs(c.basis_constant_bound - b) / b, e2 = std::fabs(c.Q_norm_bound - q) / q;
    o.require(c.ok, "perturbation not ok");
    o.require(e1 <= 1e-12 && e2 <= 1e-12, "relative error above 1e-12 at eps=" + fmt(eps));
    worst = std::max({worst, e1, e2});
  }
  o.summary = "eps in {0.01,0.05,0.1}, worst relative error " + fmt(worst);
}

void c6(Outcome& o) {
  LpOptions opt;
  opt.eps = 1.0 / 600.0;
  opt.depth = 6;
  auto b = construct_lemmaB(build_subspace<double>(fixture("l2_mixed40.json")), opt);
  const auto& s = b.s();
  double worst_off = 0;
  std::size_t steps = 0;
  for (std::size_t k = 1; k <= s.size(); ++k) {
    const auto& l = b.l[k - 1];
    o.require(std::fabs(l[s[k - 1]]) > 1e-9, "l_k(s_k) = 0");
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (j + 1 == k) continue;
      worst_off = std::max(worst_off, std::fabs(l[s[j]]));
      o.require(std::fabs(l[s[j]]) <= 1e-9, "off-diagonal above 1e-9");
    }
    o.require(static_cast<double>(lp_norm_ld(l - b.a.f[k - 1], 2.0)) <= opt.eps / std::ldexp(1.0, static_cast<int>(k)),
              "residual above eps/2^k at k=" + std::to_string(k));
    auto it = zeroing_iterates(b.a.f, s, k);
    for (std::size_t t = 1; t < it.size(); ++t, ++steps) {
      // l_{t,k} - l_{t-1,k}, the paper's step t >= 1, is below eps/2^(k+t).
      o.require(norm_with_tail(it[t] - it[t - 1], b.a.space) < opt.eps / std::ldexp(1.0, static_cast<int>(k + t)),
                "step contraction fails at k=" + std::to_string(k) + " t=" + std::to_string(t));
    }
  }
  o.require(b.pass(), "emitted ledger has failures");
  o.summary = "max off-diagonal " + fmt(worst_off) + ", " + std::to_string(steps) + " steps checked";
}

void c7(Outcome& o) {
  auto v = build_subspace<Rational>(fixture("linf_mixed40.json"));
  MazurOptions opt;
  opt.depth = 5;
  opt.samples = 1000;
  auto c = mazur_basic_sequence(v, opt);
  o.require(c.n.size() == 5, "Mazur sequence shorter than 5");
  for (std::size_t k = 0; k < c.n.size(); ++k) {
    const Rational nf = sup_norm(c.f[k]);
    o.require(nf >= 1 && nf <= 2, "norm outside [1,2]");
    o.require(c.f[k][c.n[k]] == 1, "f(n_k) != 1");
    for (std::size_t i = 0; i < k; ++i) o.require(sgn(c.f[k][c.n[i]]) == 0, "triangular zero not exact");
  }
  // Independent sampling: |S_n| <= prod_{i=n}^{m-1}(1+eps_i) |S_m| for n <= m.
  std::vector<Seq> f;
  for (const auto& x : c.f) f.push_back(to_float(x));
  Rng rng(1007);
  double worst = 0;
  const std::size_t K = f.size(), T = f[0].size();
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<long double> partial(T, 0.0L);
    std::vector<long double> sup(K);
    for (std::size_t k = 0; k < K; ++k) {
      const long double a = rng.uniform(-1.0, 1.0);
      long double m = 0;
      for (std::size_t j = 0; j < T; ++j) {
        partial[j] += a * f[k][j];
        m = std::max(m, std::fabs(partial[j]));
      }
      sup[k] = m;
    }
    for (std::size_t n = 0; n < K; ++n) {
      long double w = 1;
      for (std::size_t m = n; m < K; ++m) {
        if (m > n) w *= 1.0L + c.eps_seq[m - 1];
        if (sup[m] > 0) worst = std::max(worst, static_cast<double>(sup[n] / (w * sup[m])));
      }
    }
  }
  o.require(worst <= 1.0 + 1e-9, "basis inequality ratio " + fmt(worst));
  o.require(c.pass(), "emitted ledger has failures");
  o.summary = "n=" + std::to_string(c.n.size()) + " steps, 1000 samples, max ratio " + fmt(worst);
}

void c8(Outcome& o) {
  std::size_t ok = 0, limits = 0, hard = 0, fired[5] = {0, 0, 0, 0, 0};
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    auto spec = random_sup_fixture(seed, SpaceKind::LInfty);
    LinfOptions opt;
    opt.depth = 5;
    opt.seed = seed;
    try {
      auto c = construct_linf(build_subspace<Rational>(spec), opt);
      ++ok;
      for (const auto& lv : c.cascade.levels) {
        ++fired[static_cast<int>(lv.which)];
        o.require(lv.h_norm <= case_bound(lv.which), "case bound exceeded");
      }
      for (std::size_t k = 0; k < c.l.l.size(); ++k) {
        o.require(sup_norm(c.l.l[k]) <= 9, "|l_k| > 9");
        o.require(c.l.l[k][c.l.s[k]] == 1, "l_k(s_k) != 1");
      }
      o.require(c.pass(), "emitted ledger has failures (seed " + std::to_string(seed) + ")");
    } catch (const Error& e) {
      if (is_model_limit(e.code())) {
        ++limits;
      } else {
        ++hard;
        o.require(false, "seed " + std::to_string(seed) + ": " + e.what());
      }
    }
  }
  o.require(ok > 0, "no fixture completed");
  o.summary = std::to_string(ok) + " completed, " + std::to_string(limits) + " model limits, " +
              std::to_string(hard) + " hard failures; cases fired 1:" + std::to_string(fired[1]) +
              " 2:" + std::to_string(fired[2]) + " 3:" + std::to_string(fired[3]) + " 4:" + std::to_string(fired[4]);
}

long double independent_violation(const WitnessCert& w, std::uint64_t seed) {
  Rng rng(seed);
  long double worst = 0;
  for (int i = 0; i < 500; ++i) {
    std::vector<double> a(w.even_family.size());
    for (auto& x : a) x = rng.uniform(-1.0, 1.0);
    for (auto s : w.forbidden_indices) {
      long double v = 0;
      for (std::size_t k = 0; k < a.size(); ++k) v += static_cast<long double>(a[k]) * w.even_family[k][s];
      worst = std::max(worst, std::fabs(v));
    }
  }
  return worst;
}

void c9(Outcome& o) {
  LpOptions lo;
  lo.eps = 1.0 / 600.0;
  lo.depth = 6;
  auto b = construct_lemmaB(build_subspace<double>(fixture("l2_mixed40.json")), lo);
  auto wb = spaceable_witness(b, 500, 9);
  LinfOptions fo;
  fo.depth = 5;
  auto c = construct_linf(build_subspace<Rational>(fixture("linf_mixed40.json")), fo);
  auto wl = spaceable_witness(c.l, 500, 9);
  for (const auto* w : {&wb, &wl}) {
    o.require(w->pass(), w->source + ": witness ledger failed");
    o.require(w->samples_checked == 500, "fewer than 500 samples");
    o.require(w->max_violation <= 1e-9, w->source + ": sampled violation above 1e-9");
    o.require(independent_violation(*w, 99) <= 1e-9L, w->source + ": independent violation above 1e-9");
  }
  o.require(wb.rank == lo.depth / 2, "lp even rank != floor(depth/2)");
  o.require(wl.rank == fo.depth / 2, "linf even rank != floor(depth/2)");
  o.summary = "lp rank " + std::to_string(wb.rank) + " viol " + fmt(wb.max_violation) + "; linf rank " +
              std::to_string(wl.rank) + " viol " + fmt(wl.max_violation);
}

void c10(Outcome& o) {
  auto spec = fixture("c0_mixed40.json");
  auto v = build_subspace<Rational>(spec);
  LinfOptions lo;
  lo.depth = 5;
  auto pipeline = construct_linf(v, lo);
  C0RepairOptions opt;
  opt.eps = 1e-2;
  double worst = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    opt.seed = seed;
    auto f = random_span_member(spec, seed);
    auto r = density_repair_c0(pipeline.mazur, f, opt);
    const double dist = sup_norm(r.g - f).get_d();
    worst = std::max(worst, dist);
    o.require(dist <= opt.eps, "|g - f| > eps");
    o.require(r.pass(), "repair ledger failed");
    o.require(!r.zero_set.empty(), "no selected indices");
    Rational budget(0), series(0);
    for (std::size_t k = 0; k < r.zero_set.size(); ++k) {
      o.require(sgn(r.g[r.zero_set[k]]) == 0, "g(s_k) != 0");
      budget += 9 * abs(f[r.zero_set[k]]);
      series += abs(f[r.zero_set[k]]) * sup_norm(r.l[k]);
    }
    o.require(series <= budget && budget.get_d() <= opt.eps, "series bound fails");
    o.require(v.contains(r.g), "g left the span");
  }
  o.summary = "20 random f, max |g-f| " + fmt(worst);
}

// Coordinate tampers for each certificate class; each must make verify fail.
void set_coord(json& seq, std::size_t j, const json& value) {
  auto& nz = seq.at("nz");
  for (auto& e : nz) {
    if (e.at(0).get<std::size_t>() == j) {
      e[1] = value;
      return;
    }
  }
  auto pos = nz.begin();
  while (pos != nz.end() && (*pos).at(0).get<std::size_t>() < j) ++pos;
  nz.insert(pos, json::array({j, value}));
}

void c11(Outcome& o) {
  struct Case {
    std::string name;
    std::function<json()> make;
    std::function<void(json&)> tamper;
  };
  auto lp = [](double eps) {
    Scenario sc;
    sc.pipeline = Pipeline::Lp;
    sc.fixture = fixture("l2_mixed40.json");
    sc.eps = eps;
    sc.seed = 5;
    return run_scenario(sc);
  };
  auto linf = [](const char* name, const char* mode) {
    Scenario sc;
    sc.pipeline = Pipeline::Linf;
    sc.fixture = fixture(name);
    sc.mode = mode;
    sc.seed = 5;
    return run_scenario(sc);
  };
  auto on = [](Pipeline p, json source) {
    Scenario sc;
    sc.pipeline = p;
    sc.source = std::move(source);
    sc.seed = 5;
    return run_scenario(sc);
  };
  const json lpB = lp(1.0 / 600.0);
  const json linfX = linf("linf_mixed40.json", "exact");
  const json c0X = linf("c0_mixed40.json", "exact");
  std::vector<Case> cases{
      {"lineability",
       [] {
         Scenario sc;
         sc.ratios = {Rational(1, 4), Rational(1, 2)};
         sc.coeffs = {Rational(-2), Rational(1)};
         return run_scenario(sc);
       },
       [](json& j) { j["zero_set"] = json::array(); }},
      {"lemmaA", [&] { return lp(0.1); },
       [](json& j) { set_coord(j["lemmaA"]["f"][2], j["lemmaA"]["s"][0].get<std::size_t>(), 0.1); }},
      {"lemmaB", [&] { return lp(1.0 / 600.0); },
       [](json& j) { set_coord(j["lemmaB"]["l"][1], j["lemmaA"]["s"][0].get<std::size_t>(), 0.1); }},
      {"linf exact", [&] { return linf("linf_mixed40.json", "exact"); },
       [](json& j) { set_coord(j["l"]["l"][0], j["l"]["s"][1].get<std::size_t>(), "1/10"); }},
      {"linf float", [&] { return linf("linf_mixed40.json", "float"); },
       [](json& j) { set_coord(j["mazur"]["f"][2], j["mazur"]["n"][0].get<std::size_t>(), 0.1); }},
      {"witness lp", [&] { return on(Pipeline::Witness, lpB); },
       [](json& j) { set_coord(j["even_family"][0], j["forbidden_indices"][0].get<std::size_t>(), 0.1); }},
      {"witness linf", [&] { return on(Pipeline::Witness, linfX); },
       [](json& j) { set_coord(j["even_family"][1], j["forbidden_indices"][2].get<std::size_t>(), 0.1); }},
      {"density lp", [&] { return on(Pipeline::Density, lpB); },
       [](json& j) { set_coord(j["g"], 7, 0.25); }},
      {"density c0", [&] { return on(Pipeline::Density, c0X); },
       [](json& j) { set_coord(j["g"], j["zero_set"][0].get<std::size_t>(), "1/10"); }},
  };
  std::size_t caught = 0;
  for (auto& c : cases) {
    const json first = c.make();
    const std::string a = dump_json(first), b = dump_json(c.make());
    o.require(a == b, c.name + ": rerun not byte-identical");
    auto clean = verify_certificate(first);
    o.require(clean.pass(), c.name + ": untampered certificate fails verify");
    json bad = first;
    c.tamper(bad);
    bool detected = false;
    try {
      detected = !verify_certificate(bad).pass();
    } catch (const Error&) {
      detected = true;
    }
    o.require(detected, c.name + ": tamper not detected");
    caught += detected;
  }
  o.summary = std::to_string(cases.size()) + " classes byte-identical on rerun, " + std::to_string(caught) +
              " tampers detected";
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    double budget_s;
    void (*run)(Outcome&);
  };
  const Criterion all[] = {
      {1, "Hadamard closure", 5, c1},
      {2, "zero-bound soundness", 30, c2},
      {3, "Vandermonde rank", 30, c3},
      {4, "Lemma A ledger", 60, c4},
      {5, "perturbation constants", 1, c5},
      {6, "Lemma B zero pattern", 60, c6},
      {7, "Mazur sequence", 60, c7},
      {8, "cascade bounds", 300, c8},
      {9, "spaceability witness", 30, c9},
      {10, "c0 density repair", 30, c10},
      {11, "determinism and tamper detection", 300, c11},
  };
  int failed = 0;
  for (const auto& c : all) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.require(secs < c.budget_s, "runtime " + fmt(secs) + " s over budget");
    const bool pass = o.failures.empty();
    failed += !pass;
    std::printf("%s %2d %s: %s [%.2f s, budget %.0f s]\n", pass ? "PASS" : "FAIL", c.id, c.title,
                o.summary.c_str(), secs, c.budget_s);
    for (const auto& f : o.failures) std::printf("     - %s\n", f.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(std::size(all)) - failed, std::size(all));
  return failed == 0 ? 0 : 1;
}
