#include "seqlab/lp_construction.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "seqlab/errors.hpp"
#include "seqlab/kernels.hpp"
#include "seqlab/linalg.hpp"
#include "seqlab/rng.hpp"

namespace seqlab {

namespace {

double pow2(int e) { return std::ldexp(1.0, e); }

Seq abs_seq(const Seq& x) {
  std::vector<double> c(x.coords().begin(), x.coords().end());
  for (auto& v : c) v = std::fabs(v);
  return Seq(std::move(c), x.tail_bound());
}

Seq restrict_to(const Seq& x, const Window& w) {
  Seq out(x.size());
  for (std::size_t j = w.first; j <= w.last && j < x.size(); ++j) out[j] = x[j];
  return out;
}

void require_lp(const AmbientSpace& space, const char* what) {
  if (space.is_sup()) {
    throw Error(Errc::PreconditionViolated, std::string(what) + " needs an Lp ambient space");
  }
}

// Objective of the basis-constant search for one coefficient vector.
double partial_sum_objective(std::span<const Seq> f, const AmbientSpace& space,
                             const std::vector<double>& a) {
  std::vector<double> norms(f.size());
  Seq sum(f.front().size());
  for (std::size_t m = 0; m < f.size(); ++m) {
    sum = axpy(a[m], f[m], sum);
    norms[m] = norm(sum, space);
  }
  double best = 0.0;
  for (std::size_t m = 0; m < f.size(); ++m) {
    if (norms[m] == 0.0) continue;
    for (std::size_t n = 0; n <= m; ++n) best = std::max(best, norms[n] / norms[m]);
  }
  return best;
}

Seq start_vector(const Subspace& v, const LpOptions& opt) {
  if (!opt.f1) return normalized(v.basis().front(), v.ambient());
  if (opt.f1->size() != v.truncation()) {
    throw Error(Errc::LengthMismatch, "f1 truncation differs from the subspace");
  }
  if (!v.contains(*opt.f1)) throw Error(Errc::PreconditionViolated, "f1 must lie in span(V)");
  return normalized(*opt.f1, v.ambient());
}

}  // namespace

PerturbCert perturbation_bounds(double delta, double K, double P_norm) {
  PerturbCert c;
  c.K = K;
  c.P_norm = P_norm;
  c.delta = delta;
  c.ok = 8.0 * K * delta * P_norm < 1.0;
  if (!c.ok) return c;
  const double kd = K * delta;
  c.T_norm_bound = 1.0 + 2.0 * kd;
  c.basis_constant_bound = 2.0 / (1.0 - 2.0 * kd);
  const double inv = 1.0 / (1.0 - 8.0 * kd * P_norm);
  c.Q_norm_bound = inv * 2.0 * P_norm;
  c.Q_norm_bound_tight = inv * c.T_norm_bound * P_norm;
  return c;
}

PerturbCert small_perturbation_cert(std::span<const Seq> base, std::span<const Seq> perturbed,
                                    double K, double P_norm, const AmbientSpace& space) {
  if (base.size() != perturbed.size()) {
    throw Error(Errc::LengthMismatch, "base and perturbed families differ in length");
  }
  if (!(K >= 1.0)) throw Error(Errc::PreconditionViolated, "basis constant K must be >= 1");
  double delta = 0.0;
  for (std::size_t k = 0; k < base.size(); ++k) {
    delta += norm_with_tail(perturbed[k] - base[k], space);
  }
  return perturbation_bounds(delta, K, P_norm);
}

Seq norming_functional(const Seq& g, const Window& w, const AmbientSpace& space) {
  require_lp(space, "norming_functional");
  Seq phi(g.size());
  const double p = space.p();
  for (std::size_t j = w.first; j <= w.last && j < g.size(); ++j) {
    if (g[j] == 0.0) continue;
    phi[j] = p == 1.0 ? std::copysign(1.0, g[j]) : std::copysign(std::pow(std::fabs(g[j]), p - 1.0), g[j]);
  }
  return phi;
}

ProjectionOp block_projection(std::span<const Seq> g, std::span<const Window> sigma,
                              const AmbientSpace& space, double eta) {
  require_lp(space, "block_projection");
  if (g.size() != sigma.size()) throw Error(Errc::LengthMismatch, "one window per block");
  for (std::size_t a = 0; a < sigma.size(); ++a) {
    if (sigma[a].first > sigma[a].last) {
      throw Error(Errc::PreconditionViolated, "window " + std::to_string(a) + " is empty");
    }
    for (std::size_t b = a + 1; b < sigma.size(); ++b) {
      if (sigma[a].first <= sigma[b].last && sigma[b].first <= sigma[a].last) {
        throw Error(Errc::OverlappingWindows,
                    "windows " + std::to_string(a) + " and " + std::to_string(b) + " overlap");
      }
    }
  }
  ProjectionOp op;
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double n = norm_with_tail(g[k], space);
    if (std::fabs(n - 1.0) > eta) {
      throw Error(Errc::UnnormalizedBlock, "block " + std::to_string(k) + " has norm " + std::to_string(n));
    }
    for (std::size_t j = 0; j < g[k].size(); ++j) {
      if (g[k][j] != 0.0 && !sigma[k].contains(j)) {
        throw Error(Errc::UnnormalizedBlock,
                    "block " + std::to_string(k) + " is not supported in its window");
      }
    }
    op.functionals.push_back(norming_functional(g[k], sigma[k], space));
    op.vectors.push_back(g[k]);
  }
  op.norm_upper = 1.0;
  return op;
}

ProjectionOp perturbed_projection(std::span<const Seq> f, const ProjectionOp& block) {
  const std::size_t n = f.size();
  if (block.rank() != n) throw Error(Errc::LengthMismatch, "one block per vector");
  Matrix<double> m(n, std::vector<double>(n));
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < n; ++j) m[k][j] = pair(block.functionals[k], f[j]);
  auto inv = invert(m, 1e-14);
  if (!inv) throw Error(Errc::PreconditionViolated, "phi_k(f_j) matrix is singular");
  ProjectionOp q;
  for (std::size_t j = 0; j < n; ++j) {
    Seq psi(f.front().size());
    for (std::size_t k = 0; k < n; ++k) psi = axpy((*inv)[j][k], block.functionals[k], psi);
    q.functionals.push_back(std::move(psi));
    q.vectors.push_back(f[j]);
  }
  return q;
}

double basis_constant_lower_bound(std::span<const Seq> f, const AmbientSpace& space,
                                  std::size_t trials, std::uint64_t seed) {
  if (f.empty()) throw Error(Errc::PreconditionViolated, "basis constant of an empty family");
  if (f.size() == 1 || trials == 0) return 1.0;
  auto best = kernels::parallel::partial_sum_ratio(f, space, trials, seed);
  auto a = kernels::sample_coefficients(seed, best.sample, f.size());
  double value = partial_sum_objective(f, space, a);
  // Coordinate search around the best sample.
  for (double step : {0.5, 0.1, 0.02}) {
    for (int round = 0; round < 2; ++round) {
      for (std::size_t k = 0; k < a.size(); ++k) {
        for (double d : {step, -step}) {
          auto trial = a;
          trial[k] += d;
          const double v = partial_sum_objective(f, space, trial);
          if (v > value) {
            value = v;
            a = std::move(trial);
          }
        }
      }
    }
  }
  return std::max(1.0, value);
}

LemmaACert construct_lemmaA(const Subspace& v, const LpOptions& opt) {
  const AmbientSpace& space = v.ambient();
  require_lp(space, "construct_lemmaA");
  if (!(opt.eps > 0.0 && opt.eps < kLemmaAEpsLimit)) {
    throw Error(Errc::EpsOutOfRange, "eps must satisfy 0 < eps < 4/33, got " + std::to_string(opt.eps));
  }
  if (opt.depth < 1) throw Error(Errc::ConfigError, "depth must satisfy depth >= 1");

  const std::size_t T = v.truncation();
  const double eps = opt.eps;
  const double eta = v.eta();

  LemmaACert c;
  c.space = space;
  c.eps = eps;
  c.eta = eta;

  // f_1 and N_1 = s_1.
  c.f.push_back(start_vector(v, opt));
  std::size_t n1 = T;
  for (std::size_t n = 0; n < T; ++n) {
    if (std::fabs(c.f[0][n]) > eta && tail_norm(c.f[0], n + 1, space) < eps / 4.0) {
      n1 = n;
      break;
    }
  }
  if (n1 == T) {
    throw Error(Errc::SearchExhausted, "no N_1 within the truncation with f_1(N_1) != 0 and tail < eps/4");
  }
  c.N.push_back(n1);
  c.s.push_back(n1);
  Seq abs_sum = abs_seq(c.f[0]);

  for (std::size_t t = 1; t < opt.depth; ++t) {
    const std::size_t n_prev = c.N.back();
    Seq next = vanish_on_prefix(v, n_prev + 1);
    const double dom = eps / pow2(static_cast<int>(t) + 1);

    std::size_t s_next = T;
    for (std::size_t n = n_prev + 1; n < T; ++n) {
      if (abs_sum[n] < dom * std::fabs(next[n])) {
        s_next = n;
        break;
      }
    }
    if (s_next == T) {
      throw Error(Errc::SearchExhausted,
                  "no s_" + std::to_string(t + 1) + " > " + std::to_string(n_prev) +
                      " with |f_1(s)|+...+|f_t(s)| < eps/2^(t+1) |f_(t+1)(s)| within the truncation");
    }
    abs_sum = abs_sum + abs_seq(next);
    const double tail_target = eps / pow2(static_cast<int>(t) + 2);
    std::size_t n_next = T;
    for (std::size_t n = s_next + 1; n < T; ++n) {
      if (tail_norm(abs_sum, n + 1, space) < tail_target) {
        n_next = n;
        break;
      }
    }
    if (n_next == T) {
      throw Error(Errc::SearchExhausted,
                  "no N_" + std::to_string(t + 1) + " > s_" + std::to_string(t + 1) +
                      " with tail(|f_1|+...+|f_(t+1)|) < eps/2^(t+2) within the truncation");
    }
    c.f.push_back(std::move(next));
    c.s.push_back(s_next);
    c.N.push_back(n_next);
  }

  // Windows, truncated blocks and normalized blocks.
  for (std::size_t k = 0; k < c.f.size(); ++k) {
    Window w{k == 0 ? 0 : c.N[k - 1] + 1, c.N[k]};
    c.sigma.push_back(w);
    c.f_tilde.push_back(restrict_to(c.f[k], w));
    const double nt = norm(c.f_tilde.back(), space);
    if (nt == 0.0) throw Error(Errc::ZeroVector, "window block vanished");
    c.g.push_back(scaled(1.0 / nt, c.f_tilde.back()));
  }

  // Ledger.
  Ledger& L = c.ledger;
  Seq running(T);
  for (std::size_t i = 0; i < c.f.size(); ++i) {
    const int k = static_cast<int>(i) + 1;
    const Seq& fk = c.f[i];
    L.record("unit_norm", k, -1, std::fabs(norm(fk, space) - 1.0), "<=", eta);
    if (i == 0) {
      L.record("first_nonzero", k, -1, std::fabs(fk[c.s[0]]), ">", eta);
    } else {
      double prefix = 0.0;
      for (std::size_t n = 0; n <= c.N[i - 1]; ++n) prefix = std::max(prefix, std::fabs(fk[n]));
      L.record("prefix_zero", k, -1, prefix, "<=", eta);
      L.record("s_after_N", k, -1, static_cast<double>(c.N[i - 1]), "<", static_cast<double>(c.s[i]));
      double head = 0.0;
      for (std::size_t j = 0; j < i; ++j) head += std::fabs(c.f[j][c.s[i]]);
      L.record("dominance", k, -1, head, "<", eps / pow2(k) * std::fabs(fk[c.s[i]]));
    }
    L.record("N_after_s", k, -1, static_cast<double>(c.s[i]), i == 0 ? "<=" : "<",
             static_cast<double>(c.N[i]));
    running = running + abs_seq(fk);
    L.record("tail", k, -1, tail_norm(running, c.N[i] + 1, space), "<", eps / pow2(k + 1));
    const double nt = norm(c.f_tilde[i], space);
    L.record("window_norm_lower", k, -1, 1.0 - eps / pow2(k + 1), "<=", nt);
    L.record("window_norm_upper", k, -1, nt, "<=", 1.0 + eta);
    L.record("window_gap", k, -1, norm_with_tail(fk - c.f_tilde[i], space), "<", eps / pow2(k + 1));
  }

  c.perturb = small_perturbation_cert(c.g, c.f, 1.0, 1.0, space);
  c.delta = c.perturb.delta;
  L.record("delta_bound", 0, -1, c.delta, "<=", 4.0 * eps / (4.0 - eps));
  L.record("eight_delta", 0, -1, 8.0 * c.delta, "<", 1.0);

  if (c.perturb.ok) {
    auto P = block_projection(c.g, c.sigma, space, 1e-9);
    auto Q = perturbed_projection(c.f, P);
    c.basis_constant_sampled = basis_constant_lower_bound(c.f, space, opt.samples, opt.seed);
    c.P_norm_sampled =
        kernels::parallel::operator_norm_ratio(P, space, opt.samples, derive_seed(opt.seed, 1)).value;
    c.Q_norm_sampled =
        kernels::parallel::operator_norm_ratio(Q, space, opt.samples, derive_seed(opt.seed, 2)).value;
    L.record("basis_constant_sampled", 0, -1, c.basis_constant_sampled, "<=",
             c.perturb.basis_constant_bound);
    L.record("P_norm_sampled", 0, -1, c.P_norm_sampled, "<=", 1.0 + eta);
    L.record("Q_norm_sampled", 0, -1, c.Q_norm_sampled, "<=", c.perturb.Q_norm_bound_tight);
  }
  return c;
}

std::vector<Seq> zeroing_iterates(std::span<const Seq> f, std::span<const std::size_t> s,
                                  std::size_t k) {
  if (k < 1 || k > f.size() || s.size() != f.size()) {
    throw Error(Errc::PreconditionViolated, "zeroing_iterates: bad family index");
  }
  std::vector<Seq> it{f[k - 1]};
  for (std::size_t idx = k; idx < f.size(); ++idx) {
    const Seq& l = it.back();
    const double c = l[s[idx]] / f[idx][s[idx]];
    it.push_back(axpy(-c, f[idx], l));
  }
  return it;
}

LemmaBCert construct_lemmaB(const Subspace& v, const LpOptions& opt) {
  if (!(opt.eps > 0.0 && opt.eps < kLemmaBEpsLimit)) {
    throw Error(Errc::EpsOutOfRange, "eps must satisfy 0 < eps < 1/512, got " + std::to_string(opt.eps));
  }
  LemmaBCert b;
  b.a = construct_lemmaA(v, opt);
  b.eps = opt.eps;
  const auto& space = b.a.space;
  const double eps = opt.eps;
  const double eta = b.a.eta;
  const auto& f = b.a.f;
  const auto& s = b.a.s;
  Ledger& L = b.ledger;

  for (std::size_t i = 0; i < f.size(); ++i) {
    const int k = static_cast<int>(i) + 1;
    auto it = zeroing_iterates(f, s, i + 1);
    std::vector<double> steps;
    for (std::size_t t = 0; t + 1 < it.size(); ++t) {
      steps.push_back(norm_with_tail(it[t + 1] - it[t], space));
      L.record("step", k, static_cast<int>(t), steps.back(), "<", eps / pow2(k + static_cast<int>(t) + 1));
    }
    for (std::size_t t = 1; t < it.size(); ++t) {
      for (std::size_t m = 0; m < t; ++m) {
        L.record("cauchy", k, static_cast<int>(m), norm_with_tail(it[t] - it[m], space), "<=",
                 eps / pow2(k + static_cast<int>(m)));
      }
    }
    b.iteration_depth = std::max(b.iteration_depth, it.size() - 1);
    b.steps.push_back(std::move(steps));
    b.l.push_back(it.back());
    const Seq& lk = b.l.back();
    b.residuals.push_back(norm_with_tail(lk - f[i], space));
    L.record("residual", k, -1, b.residuals.back(), "<=", eps / pow2(k));
    L.record("diagonal_nonzero", k, -1, std::fabs(lk[s[i]]), ">", eta);
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (j == i) continue;
      L.record("zero_pattern", k, static_cast<int>(j) + 1, std::fabs(lk[s[j]]), "<=", eta);
    }
  }
  b.delta = std::accumulate(b.residuals.begin(), b.residuals.end(), 0.0);
  L.record("delta_le_eps", 0, -1, b.delta, "<=", eps);

  const double K = b.a.perturb.basis_constant_bound;
  const double Q = b.a.perturb.Q_norm_bound;
  b.product_Q = 8.0 * K * b.delta * Q;
  b.product_unit = 8.0 * K * b.delta;
  const double stricter = std::max(b.product_Q, b.product_unit);
  L.record("perturbation_product", 0, -1, stricter, "<", 1.0);
  L.record("perturbation_512", 0, -1, stricter, "<=", 512.0 * eps);
  b.perturb = perturbation_bounds(b.delta, K, Q);
  return b;
}

}  // namespace seqlab
