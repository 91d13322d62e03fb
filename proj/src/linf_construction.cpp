#include "seqlab/linf_construction.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>

#include "seqlab/errors.hpp"
#include "seqlab/kernels.hpp"
#include "seqlab/lp_construction.hpp"
#include "seqlab/lp_solver.hpp"
#include "seqlab/rng.hpp"

namespace seqlab {

namespace {

template <Scalar S>
double dbl(const S& x) {
  return ScalarOps<S>::to_double(x);
}

template <Scalar S>
double sup_d(const BasicSeq<S>& x) {
  return dbl(sup_norm(x));
}

void require_sup(const AmbientSpace& space, const char* who) {
  if (!space.is_sup()) {
    throw Error(Errc::PreconditionViolated, std::string(who) + " needs an l_inf or c0 ambient space");
  }
}

// 2|f(s)| >= |f|_inf with f != 0; float mode allows eta slack.
template <Scalar S>
bool in_halving_set(const BasicSeq<S>& f, std::size_t s, double eta) {
  const S sup = sup_norm(f);
  if constexpr (ScalarOps<S>::exact) {
    return sgn(sup) != 0 && 2 * abs(f[s]) >= sup;
  } else {
    return sup > eta && 2.0 * std::fabs(f[s]) >= sup - 2.0 * eta * std::max(1.0, sup);
  }
}

// Best rational approximation with denominator <= max_den (continued fractions).
Rational continued_fraction(double x, long max_den) {
  if (!std::isfinite(x)) return Rational(0);
  long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double r = x;
  for (int i = 0; i < 64; ++i) {
    const double a = std::floor(r);
    if (std::fabs(a) > 1e15) break;
    const long ai = static_cast<long>(a);
    const long h2 = ai * h1 + h0;
    const long k2 = ai * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1, h1 = h2, k0 = k1, k1 = k2;
    const double frac = r - a;
    if (frac < 1e-15) break;
    r = 1.0 / frac;
  }
  if (k1 == 0) return Rational(0);
  Rational q(h1, k1);
  q.canonicalize();
  return q;
}

// Member of `family` in V_s with the smallest |x|_inf / |x(s)| (ties: lowest index).
template <Scalar S>
std::optional<BasicSeq<S>> best_member(const std::vector<BasicSeq<S>>& family, std::size_t s, double eta) {
  const BasicSeq<S>* best = nullptr;
  double best_ratio = 0.0;
  for (const auto& x : family) {
    if (ScalarOps<S>::is_zero(x[s], eta) || !in_halving_set(x, s, eta)) continue;
    const double ratio = sup_d(x) / std::fabs(dbl(x[s]));
    if (!best || ratio < best_ratio) {
      best = &x;
      best_ratio = ratio;
    }
  }
  if (!best) return std::nullopt;
  return scaled(S(S(1) / (*best)[s]), *best);
}

// Preference: an original generator of V lying in W, then a reduced basis
// vector of W, then the LP optimum.
template <Scalar S>
std::optional<BasicSeq<S>> pick_in_halving_set(const BasicSubspace<S>& w,
                                               const std::vector<BasicSeq<S>>& generators,
                                               std::size_t s, double eta, std::size_t& unverified) {
  const auto& basis = w.basis();
  const std::size_t d = basis.size();
  bool any = false;
  for (const auto& b : basis) any = any || !ScalarOps<S>::is_zero(b[s], eta);
  if (!any) return std::nullopt;

  if (auto f = best_member(generators, s, eta)) return f;
  if (auto f = best_member(basis, s, eta)) return f;

  // Otherwise maximize f(s) over the unit ball of W restricted to its support.
  std::vector<std::size_t> support;
  for (std::size_t j = 0; j < w.truncation(); ++j) {
    for (const auto& b : basis) {
      if (!ScalarOps<S>::is_zero(b[j], 0.0)) {
        support.push_back(j);
        break;
      }
    }
  }
  Matrix<double> rows(support.size(), std::vector<double>(d));
  for (std::size_t r = 0; r < support.size(); ++r)
    for (std::size_t i = 0; i < d; ++i) rows[r][i] = dbl(basis[i][support[r]]);
  std::vector<double> c(d);
  for (std::size_t i = 0; i < d; ++i) c[i] = dbl(basis[i][s]);
  auto res = maximize_in_box(rows, c);
  if (!res.bounded) throw Error(Errc::PreconditionViolated, "reduced basis is not independent on its support");
  if (res.value < 0.5 - eta) return std::nullopt;

  auto attempt = [&](auto&& convert) -> std::optional<BasicSeq<S>> {
    std::vector<S> coeffs(d);
    for (std::size_t i = 0; i < d; ++i) coeffs[i] = convert(res.x[i]);
    auto f = w.combination(coeffs);
    if (ScalarOps<S>::is_zero(f[s], 0.0) || !in_halving_set(f, s, eta)) return std::nullopt;
    return scaled(S(S(1) / f[s]), f);
  };
  if (auto f = attempt([](double x) { return ScalarOps<S>::from_double(x); })) return f;
  if constexpr (ScalarOps<S>::exact) {
    for (long den : {1000L, 1000000L, 1000000000L}) {
      if (auto f = attempt([den](double x) { return continued_fraction(x, den); })) return f;
    }
  }
  ++unverified;
  return std::nullopt;
}

// Coordinates J (starting from n) with max_J |y| >= |y|_inf / rho, rho <= target, for
// every y in span(f). Returns (J, rho).
std::pair<std::vector<std::size_t>, double> norming_set(const std::vector<Seq>& f,
                                                        std::vector<std::size_t> j_set, double target) {
  const std::size_t k = f.size();
  const std::size_t T = f.front().size();
  std::vector<std::size_t> support;
  for (std::size_t j = 0; j < T; ++j) {
    for (const auto& x : f) {
      if (x[j] != 0.0) {
        support.push_back(j);
        break;
      }
    }
  }
  for (;;) {
    Matrix<double> rows(j_set.size(), std::vector<double>(k));
    for (std::size_t r = 0; r < j_set.size(); ++r)
      for (std::size_t i = 0; i < k; ++i) rows[r][i] = f[i][j_set[r]];
    double rho = 1.0;
    std::optional<std::size_t> worst;
    for (auto t : support) {
      if (std::find(j_set.begin(), j_set.end(), t) != j_set.end()) continue;
      std::vector<double> c(k);
      for (std::size_t i = 0; i < k; ++i) c[i] = f[i][t];
      auto res = maximize_in_box(rows, c);
      const double v = res.bounded ? res.value : INFINITY;
      if (v > rho) {
        rho = v;
        worst = t;
      }
    }
    if (rho <= target || !worst) {
      std::sort(j_set.begin(), j_set.end());
      return {j_set, rho};
    }
    j_set.push_back(*worst);
  }
}

std::vector<double> check_eps_seq(const MazurOptions& opt) {
  auto eps = opt.eps_seq.empty() ? default_eps_seq(opt.depth) : opt.eps_seq;
  if (eps.size() < opt.depth) {
    throw Error(Errc::PreconditionViolated, "eps_seq needs at least depth = " +
                                                std::to_string(opt.depth) + " entries");
  }
  if (eps.empty() || eps[0] != 1.0) throw Error(Errc::PreconditionViolated, "eps_seq must start with eps_1 = 1");
  for (std::size_t i = 1; i < eps.size(); ++i) {
    if (!(eps[i] > 0.0 && eps[i] < 1.0)) {
      throw Error(Errc::PreconditionViolated,
                  "eps_" + std::to_string(i + 1) + " must lie in (0,1), got " + std::to_string(eps[i]));
    }
  }
  return eps;
}

}  // namespace

template <Scalar S>
std::size_t halving_support(const BasicSeq<S>& f, double eta) {
  const S sup = sup_norm(f);
  if (ScalarOps<S>::is_zero(sup, 0.0)) throw Error(Errc::ZeroVector, "halving_support of the zero vector");
  for (std::size_t s = 0; s < f.size(); ++s) {
    if (in_halving_set(f, s, eta)) return s;
  }
  throw Error(Errc::SearchExhausted, "no halving coordinate");  // unreachable: the max qualifies
}

std::vector<double> default_eps_seq(std::size_t length) {
  std::vector<double> eps(length);
  for (std::size_t i = 0; i < length; ++i) eps[i] = i == 0 ? 1.0 : std::ldexp(1.0, -static_cast<int>(i + 1));
  return eps;
}

template <Scalar S>
BasicMazurCert<S> mazur_basic_sequence(const BasicSubspace<S>& v, const MazurOptions& opt) {
  require_sup(v.ambient(), "mazur_basic_sequence");
  if (opt.depth < 1) throw Error(Errc::ConfigError, "depth must satisfy depth >= 1");
  if (!(opt.net_resolution > 0.0 && opt.net_resolution <= 1.0)) {
    throw Error(Errc::PreconditionViolated, "net_resolution must lie in (0,1]");
  }
  const double eta = v.eta();
  const std::size_t T = v.truncation();

  BasicMazurCert<S> c;
  c.space = v.ambient();
  c.eps_seq = check_eps_seq(opt);
  c.net_resolution = opt.net_resolution;

  std::vector<std::size_t> zeros;
  std::vector<Seq> f_float;
  for (std::size_t k = 0; k < opt.depth; ++k) {
    std::optional<BasicSubspace<S>> w_opt;
    try {
      w_opt.emplace(k == 0 ? v : v.restrict_to_zero_set(zeros));
    } catch (const Error& e) {
      if (e.code() == Errc::DimensionExhausted && opt.min_depth > 0 && k >= opt.min_depth) break;
      throw;
    }
    const BasicSubspace<S>& w = *w_opt;
    std::vector<BasicSeq<S>> gens;
    for (const auto& g : v.generators()) {
      if (std::all_of(zeros.begin(), zeros.end(), [&](std::size_t j) { return ScalarOps<S>::is_zero(g[j], eta); }))
        gens.push_back(g);
    }
    const std::size_t start = k == 0 ? 0 : c.n.back() + 1;
    std::optional<BasicSeq<S>> f;
    std::size_t s = start;
    for (; s < T && !f; ++s) f = pick_in_halving_set(w, gens, s, eta, c.unverified_candidates);
    if (!f && opt.min_depth > 0 && k >= opt.min_depth) break;
    if (!f) {
      throw Error(Errc::SearchExhausted, "no s < T = " + std::to_string(T) + " with V_s meeting W_" +
                                             std::to_string(k));
    }
    c.n.push_back(s - 1);
    c.f.push_back(std::move(*f));
    f_float.push_back(as_float(c.f.back()));

    const double target = 1.0 / (1.0 - opt.net_resolution * c.eps_seq[k]);
    auto [j_set, rho] = norming_set(f_float, c.n, target);
    c.functionals.push_back(j_set);
    c.net_sizes.push_back(j_set.size());
    c.net_constants.push_back(rho);
    for (auto j : j_set)
      if (std::find(zeros.begin(), zeros.end(), j) == zeros.end()) zeros.push_back(j);
    std::sort(zeros.begin(), zeros.end());
  }

  for (std::size_t i = 0; i < c.n.size(); ++i) c.eps_product *= 1.0 + c.eps_seq[i];
  Ledger& L = c.ledger;
  const double slack = ScalarOps<S>::exact ? 0.0 : eta;
  for (std::size_t k = 0; k < c.n.size(); ++k) {
    const int kk = static_cast<int>(k + 1);
    const auto& f = c.f[k];
    L.record("pivot_one", kk, -1, std::fabs(dbl(f[c.n[k]]) - 1.0), "<=", slack);
    for (std::size_t i = 0; i < k; ++i)
      L.record("triangular", kk, static_cast<int>(i + 1), std::fabs(dbl(f[c.n[i]])), "<=", slack);
    const double nf = sup_d(f);
    L.record("norm_lower", kk, -1, 1.0, "<=", nf + slack);
    L.record("norm_upper", kk, -1, nf, "<=", 2.0 + slack);
    L.record("net_constant", kk, -1, c.net_constants[k], "<=", 1.0 + c.eps_seq[k]);
  }

  kernels::Weights w(c.n.size(), std::vector<double>(c.n.size(), 1.0));
  for (std::size_t n = 0; n < c.n.size(); ++n)
    for (std::size_t m = n + 1; m < c.n.size(); ++m) w[n][m] = w[n][m - 1] * (1.0 + c.eps_seq[m - 1]);
  c.samples = opt.samples;
  if (opt.samples > 0 && c.n.size() > 1) {
    c.basis_ratio_sampled =
        kernels::parallel::partial_sum_ratio(f_float, c.space, opt.samples, opt.seed, w).value;
  }
  const auto& e = L.record("basis_inequality", 0, -1, c.basis_ratio_sampled, "<=", 1.0 + eta);
  if (!e.pass) {
    throw Error(Errc::NetTooCoarse, "sampled basis inequality failed: ratio " +
                                        std::to_string(c.basis_ratio_sampled));
  }
  return c;
}

template <Scalar S>
Stabilized<S> extract_stabilizing_subsequence(const BasicSeq<S>& g1, const BasicSeq<S>& g2,
                                              std::span<const std::size_t> m, double stab_tol) {
  if (m.size() < 4) {
    throw Error(Errc::InsufficientStabilization,
                "need at least 4 indices, got " + std::to_string(m.size()));
  }
  if (!(stab_tol > 0.0)) throw Error(Errc::PreconditionViolated, "stab_tol must be positive");
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] >= g1.size() || m[i] >= g2.size()) {
      throw Error(Errc::IndexOutOfRange, "stabilization index beyond truncation");
    }
    if (i > 0 && m[i] <= m[i - 1]) throw Error(Errc::PreconditionViolated, "indices must increase");
  }
  const S tol = ScalarOps<S>::from_double(stab_tol);

  auto stage = [&](const BasicSeq<S>& g, const std::vector<std::size_t>& idx, S& mid) {
    std::vector<std::pair<S, std::size_t>> vals;
    vals.reserve(idx.size());
    for (auto j : idx) vals.emplace_back(g[j], j);
    std::sort(vals.begin(), vals.end());
    std::size_t best_lo = 0, best_hi = 0, best_count = 0;
    std::size_t hi = 0;
    for (std::size_t lo = 0; lo < vals.size(); ++lo) {
      if (hi < lo) hi = lo;
      while (hi + 1 < vals.size() && vals[hi + 1].first - vals[lo].first <= tol) ++hi;
      if (hi - lo + 1 > best_count) {
        best_count = hi - lo + 1;
        best_lo = lo;
        best_hi = hi;
      }
    }
    if (best_count < 4) {
      throw Error(Errc::InsufficientStabilization,
                  "largest cluster of width " + std::to_string(stab_tol) + " holds " +
                      std::to_string(best_count) + " < 4 indices");
    }
    mid = (vals[best_lo].first + vals[best_hi].first) / S(2);
    std::vector<std::size_t> out;
    for (std::size_t i = best_lo; i <= best_hi; ++i) out.push_back(vals[i].second);
    std::sort(out.begin(), out.end());
    return out;
  };

  Stabilized<S> r;
  std::vector<std::size_t> cand(m.begin() + 2, m.end());
  auto first = stage(g1, cand, r.L1);
  r.indices = stage(g2, first, r.L2);
  return r;
}

double case_bound(CascadeCase c) noexcept {
  switch (c) {
    case CascadeCase::ZeroL1: return 6.0;
    case CascadeCase::ZeroL2: return 2.0;
    default: return 8.0;
  }
}

template <Scalar S>
BasicHCascadeCert<S> build_h_cascade(const BasicMazurCert<S>& mazur, std::span<const std::size_t> m,
                                     std::size_t depth, double stab_tol) {
  if (depth < 1) throw Error(Errc::ConfigError, "depth must satisfy depth >= 1");
  std::map<std::size_t, std::size_t> where;
  for (std::size_t i = 0; i < mazur.n.size(); ++i) where[mazur.n[i]] = i;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (!where.contains(m[i])) throw Error(Errc::PreconditionViolated, "cascade index not in the Mazur sequence");
    if (i > 0 && m[i] <= m[i - 1]) throw Error(Errc::PreconditionViolated, "cascade indices must increase");
  }
  const double eta = 1e-9;
  const double slack = ScalarOps<S>::exact ? 0.0 : eta;

  BasicHCascadeCert<S> c;
  c.space = mazur.space;
  c.stab_tol = stab_tol;
  Ledger& L = c.ledger;
  std::vector<std::size_t> cur(m.begin(), m.end());
  const S tol = ScalarOps<S>::from_double(stab_tol);
  for (std::size_t level = 0; level < depth; ++level) {
    const int kk = static_cast<int>(level + 1);
    if (cur.size() < 2) throw Error(Errc::InsufficientStabilization, "cascade ran out of indices");
    CascadeLevel<S> lv;
    lv.m1 = cur[0];
    lv.m2 = cur[1];
    const auto& f1 = mazur.f[where[lv.m1]];
    const auto& f2 = mazur.f[where[lv.m2]];
    const BasicSeq<S> g1 = axpy(S(-f1[lv.m2]), f2, f1);
    const BasicSeq<S>& g2 = f2;
    auto st = extract_stabilizing_subsequence(g1, g2, std::span<const std::size_t>(cur), stab_tol);
    lv.L1 = st.L1;
    lv.L2 = st.L2;
    const S a1 = ScalarOps<S>::abs(st.L1);
    const S a2 = ScalarOps<S>::abs(st.L2);
    BasicSeq<S> h;
    std::size_t t = 0;
    if (a1 <= tol) {
      lv.which = CascadeCase::ZeroL1;
      h = g1;
      t = lv.m1;
    } else if (a2 <= tol) {
      lv.which = CascadeCase::ZeroL2;
      h = g2;
      t = lv.m2;
    } else if (a1 <= a2) {
      lv.which = CascadeCase::L1OverL2;
      h = axpy(S(-(st.L1 / st.L2)), g2, g1);
      t = lv.m1;
    } else {
      lv.which = CascadeCase::L2OverL1;
      h = axpy(S(-(st.L2 / st.L1)), g1, g2);
      t = lv.m2;
    }
    lv.h_norm = sup_d(h);
    for (auto j : st.indices) lv.envelope = std::max(lv.envelope, std::fabs(dbl(h[j])));
    lv.stabilized = st.indices;

    L.record("h_pivot", kk, -1, std::fabs(dbl(h[t]) - 1.0), "<=", slack);
    for (std::size_t s = 0; s < c.t.size(); ++s)
      L.record("h_triangular", kk, static_cast<int>(s + 1), std::fabs(dbl(h[c.t[s]])), "<=", slack);
    const auto& bound = L.record("case_bound", kk, static_cast<int>(lv.which), lv.h_norm, "<=",
                                 case_bound(lv.which) + eta);
    L.record("limit_envelope", kk, -1, lv.envelope, "<=", 2.0 * stab_tol);
    if (!bound.pass) {
      throw Error(Errc::CaseBoundViolated, "level " + std::to_string(kk) + ": |h| = " +
                                               std::to_string(lv.h_norm) + " exceeds case bound " +
                                               std::to_string(case_bound(lv.which)));
    }
    c.t.push_back(t);
    c.h.push_back(std::move(h));
    c.levels.push_back(std::move(lv));
    cur = st.indices;
  }
  return c;
}

template <Scalar S>
BasicLInfLCert<S> construct_linf_l(const BasicHCascadeCert<S>& cascade, const LinfLOptions& opt) {
  if (opt.depth < 1) throw Error(Errc::ConfigError, "depth must satisfy depth >= 1");
  if (cascade.h.size() < opt.depth) {
    throw Error(Errc::SearchExhausted, "cascade has " + std::to_string(cascade.h.size()) +
                                           " levels, need " + std::to_string(opt.depth));
  }
  const double eta = 1e-9;
  const double slack = ScalarOps<S>::exact ? 0.0 : eta;
  BasicLInfLCert<S> c;
  c.space = cascade.space;

  std::vector<Seq> hf;
  for (const auto& h : cascade.h) hf.push_back(as_float(h));
  c.K_est = basis_constant_lower_bound(hf, c.space, opt.samples, opt.seed);
  c.eps = std::min(1.0 / (4.0 * c.K_est), kLinfEpsCap);

  c.h_index.push_back(0);
  for (std::size_t j = 1; j < cascade.h.size() && c.h_index.size() < opt.depth; ++j) {
    const std::size_t n = c.h_index.size();
    double sum = 0.0;
    for (auto i : c.h_index) sum += std::fabs(dbl(cascade.h[i][cascade.t[j]]));
    if (sum <= c.eps / (std::ldexp(1.0, static_cast<int>(n + 1)) * 8.0)) c.h_index.push_back(j);
  }
  if (c.h_index.size() < opt.depth) {
    throw Error(Errc::SearchExhausted, "only " + std::to_string(c.h_index.size()) +
                                           " admissible indices among the cascade, need " +
                                           std::to_string(opt.depth));
  }
  for (auto i : c.h_index) {
    c.s.push_back(cascade.t[i]);
    c.h.push_back(cascade.h[i]);
  }

  Ledger& L = c.ledger;
  const std::size_t D = c.s.size();
  for (std::size_t n = 1; n < D; ++n) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += std::fabs(dbl(c.h[i][c.s[n]]));
    L.record("selection", static_cast<int>(n + 1), -1, sum, "<=",
             c.eps / (std::ldexp(1.0, static_cast<int>(n + 1)) * 8.0));
  }
  for (std::size_t k = 0; k < D; ++k) {
    const int kk = static_cast<int>(k + 1);
    BasicSeq<S> l = c.h[k];
    std::vector<double> steps;
    for (std::size_t idx = k + 1; idx < D; ++idx) {
      const S coef = l[c.s[idx]];
      l = axpy(S(-coef), c.h[idx], l);
      const double step = std::fabs(dbl(coef)) * sup_d(c.h[idx]);
      steps.push_back(step);
      const int t = static_cast<int>(idx - k - 1);
      L.record("step", kk, t, step, "<=", c.eps / std::ldexp(1.0, kk + t + 1));
    }
    const double residual = sup_d(l - c.h[k]);
    L.record("residual", kk, -1, residual, "<=", c.eps / std::ldexp(1.0, kk));
    L.record("l_pivot", kk, -1, std::fabs(dbl(l[c.s[k]]) - 1.0), "<=", slack);
    for (std::size_t j = 0; j < D; ++j) {
      if (j != k) L.record("l_zero", kk, static_cast<int>(j + 1), std::fabs(dbl(l[c.s[j]])), "<=", slack);
    }
    L.record("l_norm", kk, -1, sup_d(l), "<=", 9.0 + slack);
    c.delta += residual / sup_d(c.h[k]);
    c.steps.push_back(std::move(steps));
    c.residuals.push_back(residual);
    c.l.push_back(std::move(l));
  }
  L.record("delta_le_eps", 0, -1, c.delta, "<=", c.eps);
  L.record("perturbation_gate", 0, -1, 2.0 * c.K_est * c.delta, "<", 1.0);
  return c;
}

template <Scalar S>
BasicLinfPipelineCert<S> construct_linf(const BasicSubspace<S>& v, const LinfOptions& opt) {
  if (opt.depth < 1) throw Error(Errc::ConfigError, "depth must satisfy depth >= 1");
  if (!(opt.stab_tol > 0.0)) throw Error(Errc::ConfigError, "stab-tol must satisfy stab_tol > 0");
  MazurOptions mo;
  mo.min_depth = 2 * opt.depth + 4;
  mo.depth = std::max(mo.min_depth, opt.mazur_depth ? opt.mazur_depth : 6 * opt.depth + 8);
  mo.net_resolution = opt.net_resolution;
  mo.samples = opt.samples;
  mo.seed = opt.seed;
  BasicLinfPipelineCert<S> c;
  c.mazur = mazur_basic_sequence(v, mo);
  c.cascade = build_h_cascade(c.mazur, std::span<const std::size_t>(c.mazur.n), opt.depth, opt.stab_tol);
  LinfLOptions lo;
  lo.depth = opt.depth;
  lo.samples = std::min<std::size_t>(opt.samples, 200);
  lo.seed = derive_seed(opt.seed, 7);
  c.l = construct_linf_l(c.cascade, lo);
  return c;
}

#define SEQLAB_INSTANTIATE(S)                                                                       \
  template std::size_t halving_support<S>(const BasicSeq<S>&, double);                              \
  template BasicMazurCert<S> mazur_basic_sequence<S>(const BasicSubspace<S>&, const MazurOptions&); \
  template Stabilized<S> extract_stabilizing_subsequence<S>(                                        \
      const BasicSeq<S>&, const BasicSeq<S>&, std::span<const std::size_t>, double);                \
  template BasicHCascadeCert<S> build_h_cascade<S>(const BasicMazurCert<S>&,                        \
                                                   std::span<const std::size_t>, std::size_t, double); \
  template BasicLInfLCert<S> construct_linf_l<S>(const BasicHCascadeCert<S>&, const LinfLOptions&); \
  template BasicLinfPipelineCert<S> construct_linf<S>(const BasicSubspace<S>&, const LinfOptions&);

SEQLAB_INSTANTIATE(double)
SEQLAB_INSTANTIATE(Rational)

#undef SEQLAB_INSTANTIATE

}  // namespace seqlab
