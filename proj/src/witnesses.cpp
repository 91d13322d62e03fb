#include "seqlab/witnesses.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "seqlab/errors.hpp"
#include "seqlab/kernels.hpp"
#include "seqlab/linalg.hpp"
#include "seqlab/rng.hpp"

namespace seqlab {

namespace {

std::size_t exact_rank(std::span<const Seq> family) {
  Matrix<Rational> m;
  for (const auto& x : family) {
    auto e = to_exact(x);
    m.emplace_back(e.coords().begin(), e.coords().end());
  }
  return m.empty() ? 0 : rank(std::move(m), 0.0);
}

template <Scalar S>
std::size_t exact_rank(std::span<const BasicSeq<S>> family) {
  if constexpr (ScalarOps<S>::exact) {
    Matrix<Rational> m;
    for (const auto& x : family) m.emplace_back(x.coords().begin(), x.coords().end());
    return m.empty() ? 0 : rank(std::move(m), 0.0);
  } else {
    return exact_rank(std::span<const Seq>(family));
  }
}

WitnessCert witness_core(std::span<const Seq> l, std::span<const std::size_t> s,
                         const AmbientSpace& space, std::size_t samples, std::uint64_t seed,
                         double eta, std::size_t rank_even) {
  WitnessCert c;
  c.space = space;
  c.s.assign(s.begin(), s.end());
  c.samples_checked = samples;
  c.seed = seed;
  for (std::size_t k = 0; k < l.size(); ++k) {
    // k is 0-based: s_1, s_3, ... sit at even k.
    if (k % 2 == 0) {
      c.odd_family.push_back(l[k]);
      c.forbidden_indices.push_back(s[k]);
    } else {
      c.even_family.push_back(l[k]);
    }
  }
  c.rank = rank_even;
  const std::size_t expected = l.size() / 2;
  c.ledger.record("even_rank", 0, -1, static_cast<double>(c.rank), "<=", static_cast<double>(expected));
  c.ledger.record("even_rank_full", 0, -1, static_cast<double>(expected), "<=", static_cast<double>(c.rank));
  c.max_violation =
      kernels::parallel::forbidden_violation(c.even_family, c.forbidden_indices, samples, seed).value;
  // Basis members themselves, not only random combinations.
  for (const auto& x : c.even_family)
    for (auto j : c.forbidden_indices) c.max_violation = std::max(c.max_violation, std::fabs(x[j]));
  const auto& e = c.ledger.record("forbidden_zero", 0, -1, c.max_violation, "<=", eta);
  if (!e.pass) {
    throw Error(Errc::WitnessViolation, "an even combination has |f(s)| = " +
                                            std::to_string(c.max_violation) + " at a forbidden index");
  }
  return c;
}

void require_witness_input(std::span<const Seq> l, std::span<const std::size_t> s) {
  if (l.size() != s.size()) throw Error(Errc::LengthMismatch, "one index per l-vector");
  if (l.size() < 4) {
    throw Error(Errc::TooFewIndices, "witness needs at least 4 constructed indices, got " +
                                         std::to_string(l.size()));
  }
}

}  // namespace

WitnessCert spaceable_witness(std::span<const Seq> l, std::span<const std::size_t> s,
                              const AmbientSpace& space, std::size_t samples, std::uint64_t seed,
                              double eta) {
  require_witness_input(l, s);
  std::vector<Seq> even;
  for (std::size_t k = 1; k < l.size(); k += 2) even.push_back(l[k]);
  return witness_core(l, s, space, samples, seed, eta, exact_rank(std::span<const Seq>(even)));
}

WitnessCert spaceable_witness(const LemmaBCert& cert, std::size_t samples, std::uint64_t seed) {
  auto w = spaceable_witness(cert.l, cert.s(), cert.a.space, samples, seed, cert.a.eta);
  w.source = "lemmaB";
  return w;
}

template <Scalar S>
WitnessCert spaceable_witness(const BasicLInfLCert<S>& cert, std::size_t samples, std::uint64_t seed) {
  std::vector<Seq> lf;
  for (const auto& x : cert.l) lf.push_back(as_float(x));
  require_witness_input(lf, cert.s);
  std::vector<BasicSeq<S>> even;
  for (std::size_t k = 1; k < cert.l.size(); k += 2) even.push_back(cert.l[k]);
  auto w = witness_core(lf, cert.s, cert.space, samples, seed, 1e-9,
                        exact_rank(std::span<const BasicSeq<S>>(even)));
  w.source = "linf";
  return w;
}

SplitReport complement_split(const LemmaBCert& cert, std::size_t samples, std::uint64_t seed) {
  const auto& a = cert.a;
  if (!a.perturb.ok || !cert.perturb.ok) {
    throw Error(Errc::MissingPerturbCert, "complement split needs a passing small-perturbation certificate");
  }
  const auto& space = a.space;
  const std::size_t n = cert.l.size();
  auto block = block_projection(a.g, a.sigma, space, a.eta);
  Matrix<double> m(n, std::vector<double>(n));
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < n; ++j) m[k][j] = pair(block.functionals[k], cert.l[j]);
  auto inv = invert(m, 1e-14);
  if (!inv) throw Error(Errc::PreconditionViolated, "phi_k(l_j) matrix is singular");

  SplitReport r;
  for (std::size_t j = 1; j < n; j += 2) {
    Seq psi(cert.l.front().size());
    for (std::size_t k = 0; k < n; ++k) psi = axpy((*inv)[j][k], block.functionals[k], psi);
    r.split.functionals.push_back(std::move(psi));
    r.split.vectors.push_back(cert.l[j]);
  }
  for (std::size_t j = 0; j < n; ++j) {
    const Seq img = r.split.apply(cert.l[j]);
    const double scale = norm(cert.l[j], space);
    if (j % 2 == 1) {
      r.fixed_point_residual = std::max(r.fixed_point_residual, norm(img - cert.l[j], space) / scale);
    } else {
      r.odd_residual = std::max(r.odd_residual, norm(img, space) / scale);
    }
  }
  for (std::size_t i = 0; i < samples; ++i) {
    auto coeffs = kernels::sample_coefficients(seed, i, n);
    Seq x(cert.l.front().size());
    for (std::size_t j = 0; j < n; ++j) x = axpy(coeffs[j], cert.l[j], x);
    const double nx = norm(x, space);
    if (nx == 0.0) continue;
    const Seq ex = r.split.apply(x);
    r.idempotency_residual = std::max(r.idempotency_residual, norm(r.split.apply(ex) - ex, space) / nx);
  }
  r.norm_sampled =
      samples ? kernels::parallel::operator_norm_ratio(r.split, space, samples, derive_seed(seed, 3)).value : 0.0;
  r.split.norm_lower = r.norm_sampled;
  const double eta = a.eta;
  r.ledger.record("split_fixed_points", 0, -1, r.fixed_point_residual, "<=", eta);
  r.ledger.record("split_kills_odd", 0, -1, r.odd_residual, "<=", eta);
  r.ledger.record("split_idempotent", 0, -1, r.idempotency_residual, "<=", eta);
  return r;
}

DensityResult<double> density_repair_lp(const Subspace& v, const LemmaBCert& cert, const Seq& f,
                                        double eps) {
  const auto& space = v.ambient();
  if (!(eps > 0.0)) throw Error(Errc::ConfigError, "eps must satisfy eps > 0");
  const double nf = norm(f, space);
  if (nf == 0.0) throw Error(Errc::ZeroVector, "density repair of the zero vector");
  const double eta = v.eta();

  DensityResult<double> r;
  const auto& s = cert.s();
  const bool already = std::all_of(s.begin() + 1, s.end(), [&](std::size_t j) {
    return std::fabs(f[j]) <= eta * std::max(1.0, nf);
  });
  if (already) {
    r.g = f;
    r.zero_set.assign(s.begin() + 1, s.end());
  } else {
    LpOptions opt;
    opt.eps = std::min(eps, 1.0 / 1024.0);
    opt.depth = cert.l.size();
    opt.samples = 100;
    opt.seed = 0;
    opt.f1 = f;
    auto rerun = construct_lemmaB(v, opt);
    if (!rerun.pass()) {
      const auto* e = rerun.ledger.first_failure();
      if (!e) e = rerun.a.ledger.first_failure();
      throw Error(Errc::PreconditionViolated, "rerun construction failed its ledger: " + describe(*e));
    }
    r.g = scaled(nf, rerun.l.front());
    r.zero_set.assign(rerun.s().begin() + 1, rerun.s().end());
    r.rerun = std::move(rerun);
    r.rerun_options = std::move(opt);
  }
  r.distance = norm(r.g - f, space);
  r.bound = nf * eps / 2.0;
  r.ledger.record("distance", 0, -1, r.distance, "<=", r.bound);
  double worst = 0.0;
  for (auto j : r.zero_set) worst = std::max(worst, std::fabs(r.g[j]));
  r.ledger.record("vanishes_on_zero_set", 0, -1, worst, "<=", eta * std::max(1.0, nf));
  r.ledger.record("zero_set_size", 0, -1, static_cast<double>(cert.l.size() / 2), "<=",
                  static_cast<double>(r.zero_set.size()));
  return r;
}

template <Scalar S>
DensityResult<S> density_repair_c0(const BasicMazurCert<S>& mazur, const BasicSeq<S>& f,
                                   const C0RepairOptions& opt) {
  if (!(opt.eps > 0.0)) throw Error(Errc::ConfigError, "eps must satisfy eps > 0");
  if (ScalarOps<S>::is_zero(sup_norm(f), 0.0)) throw Error(Errc::ZeroVector, "density repair of the zero vector");
  const double slack = ScalarOps<S>::exact ? 0.0 : 1e-9;

  // Greedy: smallest |f(n)| first while 9 * sum stays within eps.
  std::vector<std::size_t> order(mazur.n.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return ScalarOps<S>::abs(f[mazur.n[a]]) < ScalarOps<S>::abs(f[mazur.n[b]]);
  });
  std::vector<std::size_t> chosen;
  double sum = 0.0;
  for (auto i : order) {
    const double v = std::fabs(ScalarOps<S>::to_double(f[mazur.n[i]]));
    if (9.0 * (sum + v) > opt.eps) break;
    sum += v;
    chosen.push_back(mazur.n[i]);
  }
  std::sort(chosen.begin(), chosen.end());
  const std::size_t need = 2 * opt.depth + 4;
  if (chosen.size() < need) {
    throw Error(Errc::SearchExhausted, "only " + std::to_string(chosen.size()) +
                                           " Mazur indices fit the budget 9*sum|f(n)| <= eps, need " +
                                           std::to_string(need));
  }
  auto cascade = build_h_cascade(mazur, std::span<const std::size_t>(chosen), opt.depth, opt.stab_tol);
  LinfLOptions lo;
  lo.depth = opt.depth;
  lo.samples = opt.samples;
  lo.seed = opt.seed;
  auto lc = construct_linf_l(cascade, lo);

  DensityResult<S> r;
  r.candidates = chosen;
  r.zero_set = lc.s;
  r.l = lc.l;
  r.g = f;
  double series = 0.0;
  for (std::size_t k = 0; k < lc.s.size(); ++k) {
    const S a = f[lc.s[k]];
    r.g = axpy(S(-a), lc.l[k], r.g);
    series += std::fabs(ScalarOps<S>::to_double(a));
  }
  r.bound = 9.0 * series;
  r.distance = ScalarOps<S>::to_double(sup_norm(r.g - f));
  r.ledger.record("series_bound", 0, -1, r.bound, "<=", opt.eps);
  r.ledger.record("distance", 0, -1, r.distance, "<=", r.bound + slack);
  for (std::size_t k = 0; k < lc.s.size(); ++k) {
    r.ledger.record("g_zero", static_cast<int>(k + 1), -1,
                    std::fabs(ScalarOps<S>::to_double(r.g[lc.s[k]])), "<=", slack);
  }
  for (const auto& e : lc.ledger.entries()) r.ledger.entries().push_back(e);
  return r;
}

template <Scalar S>
bool algebra_witness_membership(const BasicSubspace<S>& v, std::span<const std::size_t> forbidden,
                                const BasicSeq<S>& f) {
  if (f.size() != v.truncation()) return false;
  for (auto s : forbidden) {
    if (s >= f.size() || !ScalarOps<S>::is_zero(f[s], v.eta())) return false;
  }
  return v.contains(f);
}

template WitnessCert spaceable_witness<double>(const BasicLInfLCert<double>&, std::size_t, std::uint64_t);
template WitnessCert spaceable_witness<Rational>(const BasicLInfLCert<Rational>&, std::size_t, std::uint64_t);
template DensityResult<double> density_repair_c0<double>(const BasicMazurCert<double>&, const Seq&,
                                                         const C0RepairOptions&);
template DensityResult<Rational> density_repair_c0<Rational>(const BasicMazurCert<Rational>&,
                                                             const ExactSeq&, const C0RepairOptions&);
template bool algebra_witness_membership<double>(const Subspace&, std::span<const std::size_t>, const Seq&);
template bool algebra_witness_membership<Rational>(const ExactSubspace&, std::span<const std::size_t>,
                                                   const ExactSeq&);

}  // namespace seqlab
