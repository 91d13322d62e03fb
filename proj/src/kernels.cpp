#include "seqlab/kernels.hpp"

#include <omp.h>

#include <cmath>
#include <exception>

#include "seqlab/errors.hpp"
#include "seqlab/rng.hpp"

namespace seqlab::kernels {

std::vector<double> sample_coefficients(std::uint64_t seed, std::size_t i, std::size_t k) {
  Rng rng(derive_seed(seed, i));
  std::vector<double> a(k);
  for (auto& v : a) v = rng.uniform(-1.0, 1.0);
  return a;
}

namespace {

bool better(const SampleMax& a, const SampleMax& b) {
  return a.value > b.value || (a.value == b.value && a.sample < b.sample);
}

void require_family(std::span<const Seq> family) {
  for (const auto& f : family) {
    if (f.size() != family.front().size()) {
      throw Error(Errc::LengthMismatch, "kernel family must share one truncation");
    }
  }
}

SampleMax partial_sum_sample(std::span<const Seq> family, const AmbientSpace& space,
                             std::uint64_t seed, std::size_t i, const Weights& weights) {
  const std::size_t k = family.size();
  auto a = sample_coefficients(seed, i, k);
  std::vector<double> norms(k);
  Seq sum(family.front().size());
  for (std::size_t m = 0; m < k; ++m) {
    sum = axpy(a[m], family[m], sum);
    norms[m] = norm(sum, space);
  }
  SampleMax best{0.0, i, 0, 0};
  for (std::size_t m = 0; m < k; ++m) {
    if (norms[m] == 0.0) continue;
    for (std::size_t n = 0; n <= m; ++n) {
      const double w = weights.empty() ? 1.0 : weights[n][m];
      const double r = norms[n] / (w * norms[m]);
      if (r > best.value) best = SampleMax{r, i, n, m};
    }
  }
  return best;
}

// Vector u with pair(psi, u) = |psi|_{p'} |u|_p, used to probe P near its norm.
Seq norming_vector(const Seq& psi, const AmbientSpace& space) {
  Seq u(psi.size());
  if (space.is_sup()) {
    for (std::size_t j = 0; j < psi.size(); ++j) u[j] = psi[j] > 0 ? 1.0 : (psi[j] < 0 ? -1.0 : 0.0);
    return u;
  }
  if (space.p() == 1.0) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < psi.size(); ++j)
      if (std::fabs(psi[j]) > std::fabs(psi[best])) best = j;
    u[best] = psi[best] >= 0 ? 1.0 : -1.0;
    return u;
  }
  const double q = space.dual_exponent();
  for (std::size_t j = 0; j < psi.size(); ++j) {
    u[j] = std::copysign(std::pow(std::fabs(psi[j]), q - 1.0), psi[j]);
  }
  return u;
}

SampleMax operator_sample(const ProjectionOp& op, const std::vector<Seq>& probes,
                          const AmbientSpace& space, std::uint64_t seed, std::size_t i) {
  const std::size_t t = op.vectors.front().size();
  Rng rng(derive_seed(seed, i));
  Seq x(t);
  switch (i % 3) {
    case 0:
      for (std::size_t j = 0; j < t; ++j) x[j] = rng.uniform(-1.0, 1.0);
      break;
    case 1:
      for (const auto& v : op.vectors) x = axpy(rng.uniform(-1.0, 1.0), v, x);
      for (std::size_t j = 0; j < t; ++j) x[j] += 1e-3 * rng.uniform(-1.0, 1.0);
      break;
    default:
      for (const auto& u : probes) x = axpy(rng.uniform(-1.0, 1.0), u, x);
      break;
  }
  const double nx = norm(x, space);
  if (nx == 0.0) return SampleMax{0.0, i, 0, 0};
  return SampleMax{norm(op.apply(x), space) / nx, i, 0, 0};
}

SampleMax forbidden_sample(std::span<const Seq> family, std::span<const std::size_t> forbidden,
                           std::uint64_t seed, std::size_t i) {
  auto a = sample_coefficients(seed, i, family.size());
  SampleMax best{0.0, i, 0, 0};
  for (auto s : forbidden) {
    double v = 0.0;
    for (std::size_t k = 0; k < family.size(); ++k) v += a[k] * family[k][s];
    if (std::fabs(v) > best.value) best = SampleMax{std::fabs(v), i, s, 0};
  }
  return best;
}

std::vector<Seq> probes_for(const ProjectionOp& op, const AmbientSpace& space) {
  if (op.vectors.empty() || op.functionals.size() != op.vectors.size()) {
    throw Error(Errc::PreconditionViolated, "operator needs matching functional/vector pairs");
  }
  std::vector<Seq> probes;
  probes.reserve(op.functionals.size());
  for (const auto& psi : op.functionals) probes.push_back(norming_vector(psi, space));
  return probes;
}

void require_forbidden(std::span<const Seq> family, std::span<const std::size_t> forbidden) {
  require_family(family);
  for (auto s : forbidden) {
    if (!family.empty() && s >= family.front().size()) {
      throw Error(Errc::IndexOutOfRange, "forbidden index beyond truncation");
    }
  }
}

template <class Eval>
SampleMax reduce_serial(std::size_t samples, Eval eval) {
  SampleMax best;
  for (std::size_t i = 0; i < samples; ++i) {
    SampleMax s = eval(i);
    if (i == 0 || better(s, best)) best = s;
  }
  return best;
}

template <class Eval>
SampleMax reduce_parallel(std::size_t samples, Eval eval) {
  SampleMax best;
  bool have = false;
  std::exception_ptr failure;
#pragma omp parallel
  {
    SampleMax local;
    bool local_have = false;
#pragma omp for schedule(static) nowait
    for (long long i = 0; i < static_cast<long long>(samples); ++i) {
      try {
        SampleMax s = eval(static_cast<std::size_t>(i));
        if (!local_have || better(s, local)) {
          local = s;
          local_have = true;
        }
      } catch (...) {
        // Exceptions must not escape the parallel region; keep the first one.
#pragma omp critical(seqlab_kernel_error)
        if (!failure) failure = std::current_exception();
      }
    }
#pragma omp critical(seqlab_kernel_reduce)
    if (local_have && (!have || better(local, best))) {
      best = local;
      have = true;
    }
  }
  if (failure) std::rethrow_exception(failure);
  return best;
}

}  // namespace

namespace serial {

SampleMax partial_sum_ratio(std::span<const Seq> family, const AmbientSpace& space,
                            std::size_t samples, std::uint64_t seed, const Weights& weights) {
  if (family.empty()) return SampleMax{};
  require_family(family);
  return reduce_serial(samples, [&](std::size_t i) {
    return partial_sum_sample(family, space, seed, i, weights);
  });
}

SampleMax operator_norm_ratio(const ProjectionOp& op, const AmbientSpace& space,
                              std::size_t samples, std::uint64_t seed) {
  auto probes = probes_for(op, space);
  return reduce_serial(samples,
                       [&](std::size_t i) { return operator_sample(op, probes, space, seed, i); });
}

SampleMax forbidden_violation(std::span<const Seq> family, std::span<const std::size_t> forbidden,
                              std::size_t samples, std::uint64_t seed) {
  if (family.empty()) return SampleMax{};
  require_forbidden(family, forbidden);
  return reduce_serial(samples,
                       [&](std::size_t i) { return forbidden_sample(family, forbidden, seed, i); });
}

}  // namespace serial

namespace parallel {

SampleMax partial_sum_ratio(std::span<const Seq> family, const AmbientSpace& space,
                            std::size_t samples, std::uint64_t seed, const Weights& weights) {
  if (family.empty()) return SampleMax{};
  require_family(family);
  return reduce_parallel(samples, [&](std::size_t i) {
    return partial_sum_sample(family, space, seed, i, weights);
  });
}

SampleMax operator_norm_ratio(const ProjectionOp& op, const AmbientSpace& space,
                              std::size_t samples, std::uint64_t seed) {
  auto probes = probes_for(op, space);
  return reduce_parallel(samples,
                         [&](std::size_t i) { return operator_sample(op, probes, space, seed, i); });
}

SampleMax forbidden_violation(std::span<const Seq> family, std::span<const std::size_t> forbidden,
                              std::size_t samples, std::uint64_t seed) {
  if (family.empty()) return SampleMax{};
  require_forbidden(family, forbidden);
  return reduce_parallel(samples, [&](std::size_t i) {
    return forbidden_sample(family, forbidden, seed, i);
  });
}

}  // namespace parallel

}  // namespace seqlab::kernels
